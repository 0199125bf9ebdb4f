//! Finitely generated modules over a [`MonomialAlgebra`], given by minimal
//! presentations.
//!
//! A vector in `A^c` is stored in coordinates `j * dim A + s`, meaning the
//! coefficient of `b_s e_j`.

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{AMatrix, MonomialAlgebra};
use crate::field::Field;
use crate::linalg::{kernel_basis, EchelonSpace, Matrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("relation matrix has shape {rows}x{cols} with entries of length {entry_len}, expected {expected_rows} rows and entries of length {expected_len}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        entry_len: usize,
        expected_rows: usize,
        expected_len: usize,
    },
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("degree {0} is not in the semigroup")]
    NotAMember(u64),
    #[error("cannot parse module spec: {0}")]
    Parse(String),
}

/// `coker(relations: A^c -> A^rank0)` with a minimal presentation: the
/// generators are minimal and the relations minimally generate their span.
#[derive(Debug, Clone, PartialEq)]
pub struct PresentedModule<F: Field> {
    algebra: Arc<MonomialAlgebra<F>>,
    rank0: usize,
    relations: AMatrix<F::Elem>,
}

/// The underlying k-vector space of a module together with the action of each
/// basis monomial of `A`.
#[derive(Debug, Clone)]
pub struct KStructure<F: Field> {
    pub dim: usize,
    /// `actions[s]` is the matrix of multiplication by `b_s`.
    pub actions: Vec<Matrix<F::Elem>>,
}

/// The k-linear map `A^c -> A^r` induced by an `r x c` matrix over `A`.
pub(crate) fn linear_map<F: Field>(alg: &MonomialAlgebra<F>, d: &AMatrix<F::Elem>) -> Matrix<F::Elem> {
    let n = alg.dim();
    let f = alg.field();
    let mut m = Matrix::filled(d.rows() * n, d.cols() * n, f.zero());
    for j in 0..d.cols() {
        for i in 0..d.rows() {
            let entry = d.get(i, j);
            for (t, x) in entry.iter().enumerate() {
                if f.is_zero(x) {
                    continue;
                }
                for s in 0..n {
                    if let Some(u) = alg.mul_index(s, t) {
                        let (r, c) = (i * n + u, j * n + s);
                        let cur = m.get(r, c).clone();
                        m.set(r, c, f.add(&cur, x));
                    }
                }
            }
        }
    }
    m
}

/// `b_s * v` for `v` in `A^c`.
pub(crate) fn scale_vector<F: Field>(alg: &MonomialAlgebra<F>, s: usize, v: &[F::Elem]) -> Vec<F::Elem> {
    let n = alg.dim();
    let f = alg.field();
    let mut out = vec![f.zero(); v.len()];
    for (idx, x) in v.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        let (j, t) = (idx / n, idx % n);
        if let Some(u) = alg.mul_index(s, t) {
            out[j * n + u] = f.add(&out[j * n + u], x);
        }
    }
    out
}

/// Selects, in order, the vectors of `basis` (a k-basis of an A-submodule `K`
/// of `A^c`) that are independent modulo `m K`.
pub(crate) fn minimal_generators<F: Field>(
    alg: &MonomialAlgebra<F>,
    basis: &[Vec<F::Elem>],
) -> Vec<Vec<F::Elem>> {
    let Some(len) = basis.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut space = EchelonSpace::new(alg.field().clone(), len);
    for &g in alg.maximal_ideal_generators() {
        for v in basis {
            space.insert(&scale_vector(alg, g, v));
        }
    }
    basis.iter().filter(|v| space.insert(v)).cloned().collect()
}

/// Converts vectors of `A^rows` into the columns of a matrix over `A`.
pub(crate) fn vectors_to_matrix<F: Field>(
    alg: &MonomialAlgebra<F>,
    rows: usize,
    vectors: &[Vec<F::Elem>],
) -> AMatrix<F::Elem> {
    let n = alg.dim();
    let columns = vectors
        .iter()
        .map(|v| (0..rows).map(|i| v[i * n..(i + 1) * n].to_vec()).collect())
        .collect();
    AMatrix::from_columns(rows, columns)
}

fn relation_span<F: Field>(
    alg: &MonomialAlgebra<F>,
    rank0: usize,
    relations: &AMatrix<F::Elem>,
) -> EchelonSpace<F> {
    let n = alg.dim();
    let mut span = EchelonSpace::new(alg.field().clone(), rank0 * n);
    let lin = linear_map(alg, relations);
    for c in 0..lin.cols() {
        let col: Vec<F::Elem> = (0..lin.rows()).map(|r| lin.get(r, c).clone()).collect();
        span.insert(&col);
    }
    span
}

impl<F: Field> PresentedModule<F> {
    /// Builds `coker(relations)` and minimalizes the presentation.
    pub fn from_presentation(
        algebra: Arc<MonomialAlgebra<F>>,
        rank0: usize,
        relations: AMatrix<F::Elem>,
    ) -> Result<Self, ModuleError> {
        let n = algebra.dim();
        let bad_entry = (0..relations.rows())
            .flat_map(|r| (0..relations.cols()).map(move |c| (r, c)))
            .map(|(r, c)| relations.get(r, c).len())
            .find(|&l| l != n);
        if relations.rows() != rank0 || bad_entry.is_some() {
            return Err(ModuleError::ShapeMismatch {
                rows: relations.rows(),
                cols: relations.cols(),
                entry_len: bad_entry.unwrap_or(n),
                expected_rows: rank0,
                expected_len: n,
            });
        }
        let alg = &*algebra;
        let f = alg.field();
        let span = relation_span(alg, rank0, &relations);

        // Generators independent modulo U + m A^r.
        let mut residue = span.clone();
        for i in 0..rank0 {
            for s in alg.maximal_ideal_basis() {
                let mut v = vec![f.zero(); rank0 * n];
                v[i * n + s] = f.one();
                residue.insert(&v);
            }
        }
        let mut kept = Vec::new();
        for i in 0..rank0 {
            let mut v = vec![f.zero(); rank0 * n];
            v[i * n] = f.one();
            if residue.insert(&v) {
                kept.push(i);
            }
        }

        // Kernel of A^kept -> A^rank0 / U, read off in non-pivot coordinates.
        let pivots = span.pivots();
        let free_coords: Vec<usize> = (0..rank0 * n).filter(|c| pivots.binary_search(c).is_err()).collect();
        let mut map = Matrix::filled(free_coords.len(), kept.len() * n, f.zero());
        for (g, &i) in kept.iter().enumerate() {
            for s in 0..n {
                let mut v = vec![f.zero(); rank0 * n];
                v[i * n + s] = f.one();
                let red = span.reduce(&v);
                for (row, &c) in free_coords.iter().enumerate() {
                    map.set(row, g * n + s, red[c].clone());
                }
            }
        }
        let kernel = kernel_basis(f, &map);
        let gens = minimal_generators(alg, &kernel);
        let relations = vectors_to_matrix(alg, kept.len(), &gens);
        debug_assert!(relations.is_minimal(alg));
        Ok(PresentedModule {
            rank0: kept.len(),
            relations,
            algebra,
        })
    }

    pub fn free(algebra: Arc<MonomialAlgebra<F>>, rank: usize) -> Self {
        let zero = algebra.zero();
        PresentedModule {
            rank0: rank,
            relations: AMatrix::zeros(rank, 0, zero),
            algebra,
        }
    }

    /// `k = A/m`.
    pub fn residue_field(algebra: Arc<MonomialAlgebra<F>>) -> Self {
        let columns = algebra
            .maximal_ideal_generators()
            .iter()
            .map(|&g| vec![algebra.monomial(g)])
            .collect();
        let rel = AMatrix::from_columns(1, columns);
        Self::from_presentation(algebra, 1, rel).expect("well-formed")
    }

    /// `A/(t^{g_1}, ..., t^{g_k})`; degrees in the ideal `E` give zero relations.
    pub fn cyclic(algebra: Arc<MonomialAlgebra<F>>, degrees: &[u64]) -> Result<Self, ModuleError> {
        let mut columns = Vec::new();
        for &g in degrees {
            if !algebra.semigroup().contains(g as i64) {
                return Err(ModuleError::NotAMember(g));
            }
            let entry = match algebra.index_of_degree(g) {
                Some(i) => algebra.monomial(i),
                None => algebra.zero(),
            };
            columns.push(vec![entry]);
        }
        let rel = AMatrix::from_columns(1, columns);
        Self::from_presentation(algebra, 1, rel)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, ModuleError> {
        if self.algebra != other.algebra {
            return Err(ModuleError::AlgebraMismatch);
        }
        let rows = self.rank0 + other.rank0;
        let zero = self.algebra.zero();
        let mut columns = Vec::new();
        for c in 0..self.relations.cols() {
            let mut col = self.relations.column(c);
            col.resize(rows, zero.clone());
            columns.push(col);
        }
        for c in 0..other.relations.cols() {
            let mut col = vec![zero.clone(); self.rank0];
            col.extend(other.relations.column(c));
            columns.push(col);
        }
        Ok(PresentedModule {
            algebra: self.algebra.clone(),
            rank0: rows,
            relations: AMatrix::from_columns(rows, columns),
        })
    }

    pub fn algebra(&self) -> &Arc<MonomialAlgebra<F>> {
        &self.algebra
    }

    /// Minimal number of generators.
    pub fn rank0(&self) -> usize {
        self.rank0
    }

    /// The minimal relation matrix, `rank0 x (number of relations)`.
    pub fn relations(&self) -> &AMatrix<F::Elem> {
        &self.relations
    }

    pub fn is_free(&self) -> bool {
        self.relations.cols() == 0
    }

    pub fn dim_k(&self) -> usize {
        let span = relation_span(&self.algebra, self.rank0, &self.relations);
        self.rank0 * self.algebra.dim() - span.rank()
    }

    pub fn k_structure(&self) -> KStructure<F> {
        let alg = &*self.algebra;
        let f = alg.field();
        let n = alg.dim();
        let span = relation_span(alg, self.rank0, &self.relations);
        let pivots = span.pivots();
        let free_coords: Vec<usize> = (0..self.rank0 * n)
            .filter(|c| pivots.binary_search(c).is_err())
            .collect();
        let dim = free_coords.len();
        let actions = (0..n)
            .map(|s| {
                let mut act = Matrix::filled(dim, dim, f.zero());
                for (col, &c) in free_coords.iter().enumerate() {
                    let (i, t) = (c / n, c % n);
                    let Some(u) = alg.mul_index(s, t) else {
                        continue;
                    };
                    let mut v = vec![f.zero(); self.rank0 * n];
                    v[i * n + u] = f.one();
                    let red = span.reduce(&v);
                    for (row, &r) in free_coords.iter().enumerate() {
                        act.set(row, col, red[r].clone());
                    }
                }
                act
            })
            .collect();
        KStructure { dim, actions }
    }

    /// `dim_k Hom_A(self, other)`, solved directly as the space of k-linear
    /// maps commuting with multiplication by the generators of `m`.
    pub fn hom_dim(&self, other: &Self) -> Result<usize, ModuleError> {
        if self.algebra != other.algebra {
            return Err(ModuleError::AlgebraMismatch);
        }
        let alg = &*self.algebra;
        let f = alg.field();
        let (km, kn) = (self.k_structure(), other.k_structure());
        let (dm, dn) = (km.dim, kn.dim);
        let gens = alg.maximal_ideal_generators();
        // Unknown X (dn x dm) at index r * dm + c; equations X P - Q X = 0.
        let mut eq = Matrix::filled(gens.len() * dn * dm, dn * dm, f.zero());
        for (gi, &g) in gens.iter().enumerate() {
            let (p, q) = (&km.actions[g], &kn.actions[g]);
            for r in 0..dn {
                for c in 0..dm {
                    let row = gi * dn * dm + r * dm + c;
                    for k in 0..dm {
                        let x = p.get(k, c);
                        if !f.is_zero(x) {
                            let idx = r * dm + k;
                            let cur = eq.get(row, idx).clone();
                            eq.set(row, idx, f.add(&cur, x));
                        }
                    }
                    for k in 0..dn {
                        let x = q.get(r, k);
                        if !f.is_zero(x) {
                            let idx = k * dm + c;
                            let cur = eq.get(row, idx).clone();
                            eq.set(row, idx, f.sub(&cur, x));
                        }
                    }
                }
            }
        }
        Ok(dn * dm - crate::linalg::rank(f, &eq))
    }

    /// Parses `k`, `k^r`, `A`, `A^r`, `A/(g1,g2,...)` and sums of these joined
    /// by `+`.
    pub fn parse(algebra: Arc<MonomialAlgebra<F>>, spec: &str) -> Result<Self, ModuleError> {
        let mut acc: Option<Self> = None;
        for term in spec.split('+') {
            let term: String = term.chars().filter(|c| !c.is_whitespace()).collect();
            let module = Self::parse_term(algebra.clone(), &term)?;
            acc = Some(match acc {
                None => module,
                Some(m) => m.direct_sum(&module)?,
            });
        }
        acc.ok_or_else(|| ModuleError::Parse(spec.to_string()))
    }

    fn parse_term(algebra: Arc<MonomialAlgebra<F>>, term: &str) -> Result<Self, ModuleError> {
        let bad = || ModuleError::Parse(term.to_string());
        let power = |base: Self, rest: &str| -> Result<Self, ModuleError> {
            if rest.is_empty() {
                return Ok(base);
            }
            let r: usize = rest.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?;
            if r == 0 {
                return Err(bad());
            }
            let mut acc = base.clone();
            for _ in 1..r {
                acc = acc.direct_sum(&base)?;
            }
            Ok(acc)
        };
        if let Some(rest) = term.strip_prefix('k') {
            return power(Self::residue_field(algebra), rest);
        }
        let rest = term.strip_prefix('A').ok_or_else(bad)?;
        if let Some(inner) = rest.strip_prefix("/(").and_then(|r| r.strip_suffix(')')) {
            let degs = inner
                .split(',')
                .map(|d| d.parse::<u64>().map_err(|_| bad()))
                .collect::<Result<Vec<_>, _>>()?;
            return Self::cyclic(algebra, &degs);
        }
        if rest.is_empty() {
            return Ok(Self::free(algebra, 1));
        }
        let r: usize = rest.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?;
        Ok(Self::free(algebra, r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::semigroup::NumericalSemigroup;

    fn alg(g: &[u64], q: u64) -> Arc<MonomialAlgebra<PrimeField>> {
        let h = NumericalSemigroup::from_generators(g).unwrap();
        Arc::new(MonomialAlgebra::truncation_default(&h, q).unwrap())
    }

    #[test]
    fn presentation_examples() {
        let a = alg(&[4, 5, 6], 4);
        let k = PresentedModule::residue_field(a.clone());
        assert_eq!(k.dim_k(), 1);
        assert_eq!(k.rank0(), 1);
        assert_eq!(k.relations().cols(), 2);
        assert!(!k.is_free());

        let free = PresentedModule::free(a.clone(), 2);
        assert_eq!(free.dim_k(), 8);
        assert!(free.is_free());

        let c = PresentedModule::cyclic(a.clone(), &[5]).unwrap();
        assert_eq!(c.dim_k(), 2);
        assert!(!c.is_free());
        assert_eq!(c.k_structure().dim, 2);
    }

    #[test]
    fn unit_relations_are_removed() {
        let a = alg(&[3, 4, 5], 3);
        // Generators e0, e1 with e1 = t^4 e0: M is cyclic A/(0) = A.
        let rel = AMatrix::from_columns(2, vec![vec![a.monomial(1), {
            let mut v = a.zero();
            v[0] = a.field().of_int(-1);
            v
        }]]);
        let m = PresentedModule::from_presentation(a.clone(), 2, rel).unwrap();
        assert_eq!(m.rank0(), 1);
        assert!(m.is_free());
        assert_eq!(m.dim_k(), 3);
        // A unit relation kills everything.
        let rel = AMatrix::from_columns(1, vec![vec![a.one()]]);
        let z = PresentedModule::from_presentation(a.clone(), 1, rel).unwrap();
        assert_eq!(z.rank0(), 0);
        assert_eq!(z.dim_k(), 0);
        // Zero relations disappear; degrees inside (t^3) act as zero.
        let c = PresentedModule::cyclic(a.clone(), &[3, 6]).unwrap();
        assert!(c.is_free());
    }

    #[test]
    fn shape_errors() {
        let a = alg(&[3, 4, 5], 3);
        let rel = AMatrix::from_columns(2, vec![vec![a.one(), a.one()]]);
        assert!(matches!(
            PresentedModule::from_presentation(a.clone(), 1, rel),
            Err(ModuleError::ShapeMismatch { .. })
        ));
        let other = alg(&[4, 5, 6], 4);
        let k1 = PresentedModule::residue_field(a);
        let k2 = PresentedModule::residue_field(other);
        assert_eq!(k1.direct_sum(&k2), Err(ModuleError::AlgebraMismatch));
        assert_eq!(k1.hom_dim(&k2), Err(ModuleError::AlgebraMismatch));
    }

    #[test]
    fn hom_dimensions() {
        let a = alg(&[3, 4, 5], 3);
        let k = PresentedModule::residue_field(a.clone());
        let free = PresentedModule::free(a.clone(), 1);
        assert_eq!(k.hom_dim(&k).unwrap(), 1);
        assert_eq!(free.hom_dim(&k).unwrap(), 1);
        assert_eq!(free.hom_dim(&free).unwrap(), 3);
        // Socle of A is m (dimension 2).
        assert_eq!(k.hom_dim(&free).unwrap(), 2);
    }

    #[test]
    fn parsing() {
        let a = alg(&[4, 5, 6], 4);
        assert_eq!(PresentedModule::parse(a.clone(), "k").unwrap().dim_k(), 1);
        assert_eq!(PresentedModule::parse(a.clone(), "A^3").unwrap().dim_k(), 12);
        assert_eq!(PresentedModule::parse(a.clone(), "A/(5)").unwrap().dim_k(), 2);
        let m = PresentedModule::parse(a.clone(), "A/(5,6) + A + k^2").unwrap();
        assert_eq!(m.dim_k(), 1 + 4 + 2);
        assert_eq!(m.rank0(), 4);
        for bad in ["", "B", "A^", "A/(x)", "k^0", "A/(7)"] {
            assert!(PresentedModule::parse(a.clone(), bad).is_err(), "{bad}");
        }
    }
}
