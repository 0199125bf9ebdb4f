mod common;

use std::sync::Arc;

use proptest::prelude::*;

use common::sg;
use sac_core::linalg::{rank, Matrix};
use sac_core::resolution::{
    ext_deg_window, ext_dims, first_nonvanishing_self_ext, syzygy_step, tor_dims,
};
use sac_core::{
    AMatrix, Field, MinimalResolution, MonomialAlgebra, PresentedModule, PrimeField, Rationals,
    ResolutionError,
};

fn trunc<F: Field>(field: F, g: &[u64], q: u64) -> Arc<MonomialAlgebra<F>> {
    Arc::new(MonomialAlgebra::truncation(field, &sg(g), q).unwrap())
}

/// The k-matrix of `d: A^c -> A^r`, built straight from the multiplication
/// table. Column `j * n + t` is the image of `b_t e_j`.
fn k_matrix<F: Field>(alg: &MonomialAlgebra<F>, d: &AMatrix<F::Elem>) -> Matrix<F::Elem> {
    let n = alg.dim();
    let f = alg.field();
    let mut m = Matrix::filled(d.rows() * n, d.cols() * n, f.zero());
    for j in 0..d.cols() {
        for t in 0..n {
            for i in 0..d.rows() {
                for (s, c) in d.get(i, j).iter().enumerate() {
                    if let Some(u) = alg.mul_index(s, t) {
                        let row = i * n + u;
                        let cur = m.get(row, j * n + t).clone();
                        m.set(row, j * n + t, f.add(&cur, c));
                    }
                }
            }
        }
    }
    m
}

/// Checks `d_i d_{i+1} = 0`, minimality and exactness of a computed
/// resolution by rank counting.
fn check_resolution<F: Field>(m: &PresentedModule<F>, length: usize) {
    let alg = m.algebra().clone();
    let f = alg.field();
    let res = MinimalResolution::new(m, length).unwrap();
    let ds = res.differentials().unwrap();
    let betti = res.betti();
    assert_eq!(ds.len(), length.max(1));
    let n = alg.dim();
    let ranks: Vec<usize> = ds.iter().map(|d| rank(f, &k_matrix(&alg, d))).collect();
    assert_eq!(betti[0] as usize * n - ranks[0], m.dim_k(), "H_0 is M");
    for (i, d) in ds.iter().enumerate() {
        assert_eq!(d.rows(), betti[i] as usize);
        assert_eq!(d.cols(), betti[i + 1] as usize);
        assert!(d.is_minimal(&alg), "d_{} not minimal", i + 1);
        if i + 1 < ds.len() {
            assert!(d.product(&alg, &ds[i + 1]).is_zero(&alg), "d_{} d_{} != 0", i + 1, i + 2);
            let kernel = d.cols() * n - ranks[i];
            assert_eq!(kernel, ranks[i + 1], "homology at F_{}", i + 1);
        }
    }
}

#[test]
fn resolutions_are_minimal_complexes_and_exact() {
    let algebras = [
        trunc(PrimeField::default(), &[3, 4, 5], 3),
        trunc(PrimeField::default(), &[4, 5, 6], 4),
        trunc(PrimeField::default(), &[3, 5, 7], 3),
        trunc(PrimeField::default(), &[5, 6, 7, 8], 5),
        trunc(PrimeField::default(), &[2, 3], 4),
    ];
    for a in algebras {
        for spec in ["k", "A", "A/(4)", "A/(5)", "A/(5,7)", "k+A/(6)", "A^2"] {
            let Ok(m) = PresentedModule::parse(a.clone(), spec) else {
                continue;
            };
            check_resolution(&m, 4);
        }
    }
}

#[test]
fn betti_numbers_of_residue_field() {
    // Over k[t]/(t^n) every Betti number of k is 1.
    let a = Arc::new(MonomialAlgebra::truncated_polynomial(PrimeField::default(), 4).unwrap());
    let k = PresentedModule::residue_field(a);
    assert_eq!(MinimalResolution::new(&k, 10).unwrap().betti(), vec![1; 11]);

    // m^2 = 0 with embedding dimension v gives v^i.
    let a = trunc(PrimeField::default(), &[4, 5, 6, 7], 4);
    let k = PresentedModule::residue_field(a);
    let res = MinimalResolution::new(&k, 9).unwrap();
    assert_eq!(res.betti(), (0..=9).map(|i| 3u64.pow(i)).collect::<Vec<_>>());
    assert!(res.distinct_blocks() <= 3);
}

#[test]
fn ext_zero_is_hom() {
    let a = trunc(PrimeField::default(), &[4, 5, 7], 4);
    let mods: Vec<_> = ["k", "A", "A/(5)", "A/(7)", "A/(5,7)", "k+A/(5)"]
        .iter()
        .map(|s| PresentedModule::parse(a.clone(), s).unwrap())
        .collect();
    for m in &mods {
        for n in &mods {
            let e0 = ext_dims(m, n, 0..=0).unwrap()[0];
            assert_eq!(e0 as usize, m.hom_dim(n).unwrap());
        }
    }
}

#[test]
fn tor_is_symmetric_and_betti_agree() {
    let a = trunc(PrimeField::default(), &[3, 5, 7], 3);
    let mods: Vec<_> = ["k", "A/(5)", "A/(7)", "A/(5,7)"]
        .iter()
        .map(|s| PresentedModule::parse(a.clone(), s).unwrap())
        .collect();
    let k = PresentedModule::residue_field(a.clone());
    for m in &mods {
        let betti = MinimalResolution::new(m, 5).unwrap().betti();
        assert_eq!(tor_dims(m, &k, 0..=5).unwrap(), betti);
        assert_eq!(ext_dims(m, &k, 0..=5).unwrap(), betti);
        for n in &mods {
            assert_eq!(tor_dims(m, n, 0..=4).unwrap(), tor_dims(n, m, 0..=4).unwrap());
        }
    }
}

#[test]
fn characteristic_does_not_change_tables() {
    let gens = [4u64, 5, 7];
    let specs = ["k", "A/(5)", "A/(5,7)"];
    let fields = [PrimeField::default(), PrimeField::new(2).unwrap(), PrimeField::new(3).unwrap()];
    let q_alg = trunc(Rationals, &gens, 4);
    for spec in specs {
        let mq = PresentedModule::parse(q_alg.clone(), spec).unwrap();
        let expected = ext_dims(&mq, &mq, 0..=4).unwrap();
        for f in fields {
            let a = trunc(f, &gens, 4);
            let m = PresentedModule::parse(a, spec).unwrap();
            assert_eq!(ext_dims(&m, &m, 0..=4).unwrap(), expected, "{spec} over F_{}", f.modulus());
        }
    }
}

#[test]
fn syzygy_step_contract() {
    let a = Arc::new(MonomialAlgebra::truncated_polynomial(PrimeField::default(), 3).unwrap());
    let t = |i: usize| a.monomial(i);
    // ker(t) = (t^2).
    let s = syzygy_step(&a, &AMatrix::from_columns(1, vec![vec![t(1)]])).unwrap();
    assert_eq!((s.rows(), s.cols()), (1, 1));
    assert_eq!(s.get(0, 0), t(2).as_slice());
    // An injective map has no syzygies.
    let s = syzygy_step(&a, &AMatrix::from_columns(1, vec![vec![a.one()]])).unwrap();
    assert_eq!(s.cols(), 0);
    // The zero map kills a unit, so its columns are not minimal generators.
    let zero = AMatrix::from_columns(1, vec![vec![a.zero()]]);
    assert_eq!(syzygy_step(&a, &zero), Err(ResolutionError::NonMinimalInput));
    let redundant = AMatrix::from_columns(1, vec![vec![t(1)], vec![t(1)]]);
    assert_eq!(syzygy_step(&a, &redundant), Err(ResolutionError::NonMinimalInput));
}

#[test]
fn extdeg_window_reports() {
    let a = Arc::new(MonomialAlgebra::truncated_polynomial(PrimeField::default(), 3).unwrap());
    let k = PresentedModule::residue_field(a.clone());
    let r = ext_deg_window(&k, 12).unwrap();
    assert_eq!(r.dims.len(), 12);
    assert!(r.nonzero_at_boundary);
    assert_eq!(r.last_nonzero_in_window, Some(12));
    assert_eq!(first_nonvanishing_self_ext(&k, 12).unwrap(), Some(1));

    let free = PresentedModule::free(a.clone(), 2);
    let r = ext_deg_window(&free, 12).unwrap();
    assert_eq!(r.last_nonzero_in_window, None);
    assert!(!r.nonzero_at_boundary);
    assert_eq!(first_nonvanishing_self_ext(&free, 12).unwrap(), None);
    assert_eq!(ext_deg_window(&k, 0), Err(ResolutionError::EmptyWindow));
}

#[test]
fn oversized_requests_fail_cleanly() {
    let a = trunc(PrimeField::default(), &[5, 6, 7, 8, 9], 5);
    let k = PresentedModule::residue_field(a);
    let res = MinimalResolution::new(&k, 8).unwrap();
    assert_eq!(res.betti()[8], 4u64.pow(8));
    assert!(matches!(res.differentials(), Err(ResolutionError::TooLarge { .. })));

    let a = trunc(PrimeField::default(), &[3, 4, 5], 3);
    let b = trunc(PrimeField::default(), &[3, 4, 5], 4);
    let ka = PresentedModule::residue_field(a);
    let kb = PresentedModule::residue_field(b);
    assert_eq!(ext_dims(&ka, &kb, 0..=1), Err(ResolutionError::AlgebraMismatch));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_cyclic_modules_resolve(
        e in 3u64..6,
        extra in proptest::collection::btree_set(1u64..6, 1..4),
        picks in proptest::collection::vec(0usize..6, 1..3),
    ) {
        let mut gens = vec![e];
        gens.extend(extra.iter().map(|x| e + x));
        prop_assume!(sac_core::NumericalSemigroup::from_generators(&gens).is_ok());
        let h = sg(&gens);
        let a = Arc::new(MonomialAlgebra::truncation_default(&h, e).unwrap());
        let members: Vec<u64> = h.members().skip(1).take(6).collect();
        let degs: Vec<u64> = picks.iter().map(|&i| members[i]).collect();
        let m = PresentedModule::cyclic(a, &degs).unwrap();
        check_resolution(&m, 3);
    }
}
