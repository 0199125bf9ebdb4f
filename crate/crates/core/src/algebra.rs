//! Finite-dimensional monomial algebras `k[H]/E` for a cofinite semigroup
//! ideal `E`, and matrices over them.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::field::{Field, PrimeField};
use crate::ideal::SemigroupIdeal;
use crate::semigroup::{join, NumericalSemigroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{0} is not a member of the semigroup")]
    NotAMember(u64),
    #[error("truncation degree must be positive")]
    NonPositive,
    #[error("the ideal is zero, so the quotient is infinite-dimensional")]
    InfiniteDimensional,
    #[error("quotient has dimension {0}, above the supported limit")]
    TooLarge(usize),
}

const MAX_DIM: usize = 4096;

/// `A = k[H]/E` with the monomial basis `H \ E` in increasing degree order.
/// Basis index 0 is always the identity.
#[derive(Clone, PartialEq)]
pub struct MonomialAlgebra<F: Field> {
    field: F,
    semigroup: NumericalSemigroup,
    ideal_gens: Vec<u64>,
    truncation: Option<u64>,
    basis: Vec<u64>,
    /// `table[i * dim + j]` is the index of `basis[i] + basis[j]`, if nonzero.
    table: Vec<Option<usize>>,
    /// Basis indices of the minimal monomial generators of the maximal ideal.
    m_gens: Vec<usize>,
}

impl<F: Field> fmt::Debug for MonomialAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonomialAlgebra({})", self.descriptor())
    }
}

impl MonomialAlgebra<PrimeField> {
    /// `k[H]/(t^q)` over the default prime field.
    pub fn truncation_default(h: &NumericalSemigroup, q: u64) -> Result<Self, AlgebraError> {
        Self::truncation(PrimeField::default(), h, q)
    }
}

impl<F: Field> MonomialAlgebra<F> {
    /// `k[H]/(t^q)`; the basis is the Apéry set of `q`.
    pub fn truncation(field: F, h: &NumericalSemigroup, q: u64) -> Result<Self, AlgebraError> {
        if q == 0 {
            return Err(AlgebraError::NonPositive);
        }
        let ideal = SemigroupIdeal::principal(h, q).map_err(|_| AlgebraError::NotAMember(q))?;
        let mut a = Self::quotient(field, &ideal)?;
        a.truncation = Some(q);
        Ok(a)
    }

    /// `k[t]/(t^n)`.
    pub fn truncated_polynomial(field: F, n: u64) -> Result<Self, AlgebraError> {
        let line = NumericalSemigroup::from_generators(&[1]).expect("<1> is valid");
        Self::truncation(field, &line, n)
    }

    /// `k[H]/E` for a nonzero semigroup ideal `E`.
    pub fn quotient(field: F, ideal: &SemigroupIdeal) -> Result<Self, AlgebraError> {
        if ideal.is_zero() {
            return Err(AlgebraError::InfiniteDimensional);
        }
        let basis = ideal
            .complement()
            .map_err(|_| AlgebraError::InfiniteDimensional)?;
        let dim = basis.len();
        if dim > MAX_DIM {
            return Err(AlgebraError::TooLarge(dim));
        }
        let index: HashMap<u64, usize> = basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let mut table = vec![None; dim * dim];
        for (i, &a) in basis.iter().enumerate() {
            for (j, &b) in basis.iter().enumerate() {
                table[i * dim + j] = index.get(&(a + b)).copied();
            }
        }
        let mut alg = MonomialAlgebra {
            field,
            semigroup: ideal.ambient().clone(),
            ideal_gens: ideal.generators().to_vec(),
            truncation: None,
            basis,
            table,
            m_gens: Vec::new(),
        };
        let square: BTreeSet<usize> = alg.power_monomials(2).into_iter().collect();
        alg.m_gens = (1..dim).filter(|i| !square.contains(i)).collect();
        Ok(alg)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn semigroup(&self) -> &NumericalSemigroup {
        &self.semigroup
    }

    pub fn ideal_generators(&self) -> &[u64] {
        &self.ideal_gens
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Degrees of the monomial basis.
    pub fn basis(&self) -> &[u64] {
        &self.basis
    }

    pub fn index_of_degree(&self, deg: u64) -> Option<usize> {
        self.basis.binary_search(&deg).ok()
    }

    /// Index of `b_i * b_j`, or `None` when the product is zero.
    pub fn mul_index(&self, i: usize, j: usize) -> Option<usize> {
        self.table[i * self.dim() + j]
    }

    /// Basis indices spanning the maximal ideal.
    pub fn maximal_ideal_basis(&self) -> std::ops::Range<usize> {
        1..self.dim()
    }

    /// Basis indices of the minimal monomial generators of `m`.
    pub fn maximal_ideal_generators(&self) -> &[usize] {
        &self.m_gens
    }

    /// Basis indices spanning `m^r` (`r >= 1`).
    pub fn power_monomials(&self, r: usize) -> Vec<usize> {
        let mut cur: BTreeSet<usize> = self.maximal_ideal_basis().collect();
        for _ in 1..r {
            let mut next = BTreeSet::new();
            for &a in &cur {
                for b in self.maximal_ideal_basis() {
                    if let Some(c) = self.mul_index(a, b) {
                        next.insert(c);
                    }
                }
            }
            cur = next;
        }
        cur.into_iter().collect()
    }

    /// Least `r` with `m^r = 0`.
    pub fn radical_index(&self) -> usize {
        let mut r = 1;
        while !self.power_monomials(r).is_empty() {
            r += 1;
        }
        r
    }

    /// `dim_k m/m^2`.
    pub fn embedding_dim(&self) -> usize {
        self.m_gens.len()
    }

    /// Basis indices spanning the socle `(0 : m)`.
    pub fn socle(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&a| self.maximal_ideal_basis().all(|b| self.mul_index(a, b).is_none()))
            .collect()
    }

    pub fn is_gorenstein(&self) -> bool {
        self.socle().len() == 1
    }

    pub fn zero(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim()]
    }

    /// The basis monomial `b_i` as an element.
    pub fn monomial(&self, i: usize) -> Vec<F::Elem> {
        let mut v = self.zero();
        v[i] = self.field.one();
        v
    }

    pub fn one(&self) -> Vec<F::Elem> {
        self.monomial(0)
    }

    pub fn add(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        a.iter().zip(b).map(|(x, y)| self.field.add(x, y)).collect()
    }

    pub fn mul(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !f.is_zero(x)) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !f.is_zero(y)) {
                if let Some(k) = self.mul_index(i, j) {
                    out[k] = f.add(&out[k], &f.mul(x, y));
                }
            }
        }
        out
    }

    /// `b_i * a`.
    pub fn mul_monomial(&self, i: usize, a: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = self.zero();
        for (j, y) in a.iter().enumerate().filter(|(_, y)| !f.is_zero(y)) {
            if let Some(k) = self.mul_index(i, j) {
                out[k] = f.add(&out[k], y);
            }
        }
        out
    }

    pub fn is_zero_elem(&self, a: &[F::Elem]) -> bool {
        a.iter().all(|x| self.field.is_zero(x))
    }

    /// Whether `a` lies in the maximal ideal.
    pub fn in_maximal_ideal(&self, a: &[F::Elem]) -> bool {
        self.field.is_zero(&a[0])
    }

    /// Text form `H=3,4,5; q=3; p=<prime>` (or `E=...` for a general ideal).
    pub fn descriptor(&self) -> String {
        let ideal = match self.truncation {
            Some(q) => format!("q={q}"),
            None => format!("E={}", join(&self.ideal_gens)),
        };
        format!(
            "H={}; {}; p={}",
            self.semigroup,
            ideal,
            self.field.characteristic()
        )
    }
}

/// A matrix over a monomial algebra; each entry is a coefficient vector in the
/// monomial basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AMatrix<E> {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<E>>,
}

impl<E: Clone> AMatrix<E> {
    pub fn zeros(rows: usize, cols: usize, zero_entry: Vec<E>) -> Self {
        AMatrix {
            rows,
            cols,
            entries: vec![zero_entry; rows * cols],
        }
    }

    /// Builds from columns, each a list of `rows` entries.
    pub fn from_columns(rows: usize, columns: Vec<Vec<Vec<E>>>) -> Self {
        let cols = columns.len();
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in &columns {
                assert_eq!(c.len(), rows, "column length");
                entries.push(c[r].clone());
            }
        }
        AMatrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &[E] {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Vec<E>) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<Vec<E>> {
        (0..self.rows).map(|r| self.get(r, c).to_vec()).collect()
    }

    /// Submatrix on the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                entries.push(self.get(r, c).to_vec());
            }
        }
        AMatrix {
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }
}

impl<E: Clone> AMatrix<E> {
    pub fn product<F: Field<Elem = E>>(&self, alg: &MonomialAlgebra<F>, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = AMatrix::zeros(self.rows, other.cols, alg.zero());
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = alg.zero();
                for k in 0..self.cols {
                    acc = alg.add(&acc, &alg.mul(self.get(r, k), other.get(k, c)));
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, alg: &MonomialAlgebra<F>) -> bool {
        self.entries.iter().all(|e| alg.is_zero_elem(e))
    }

    /// Every entry lies in the maximal ideal.
    pub fn is_minimal<F: Field<Elem = E>>(&self, alg: &MonomialAlgebra<F>) -> bool {
        self.entries.iter().all(|e| alg.in_maximal_ideal(e))
    }
}
