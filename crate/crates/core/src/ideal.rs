//! Monomial ideals of numerical semigroup rings, represented as semigroup
//! ideals `E = U (g + H)`, together with exact lengths and the Ulrich test.

use num_bigint::BigUint;
use num_integer::binomial;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::semigroup::{join, NumericalSemigroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error("{0} is not a member of the ambient semigroup")]
    NotAMember(u64),
    #[error("ideals live over different semigroups")]
    AmbientMismatch,
    #[error("the zero ideal has infinite colength")]
    EmptyIdeal,
    #[error("second ideal is not contained in the first")]
    NotContained,
    #[error("{0} is not in the ideal")]
    NotInIdeal(u64),
    #[error("reduction degree must be positive")]
    NonPositive,
    #[error("domain error: {0}")]
    DomainError(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemigroupIdeal {
    ambient: NumericalSemigroup,
    generators: Vec<u64>,
}

/// Outcome of the Ulrich test for a monomial ideal with a principal reduction
/// candidate `(t^q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UlrichReport {
    pub is_ulrich: bool,
    /// `Some(q)` iff `I^2 = t^q I`.
    pub reduction_q: Option<u64>,
    pub colength: u64,
    pub mu: u64,
    pub layer_length: u64,
    pub free_rank: Option<u64>,
}

impl SemigroupIdeal {
    pub fn new(ambient: &NumericalSemigroup, degs: &[u64]) -> Result<Self, IdealError> {
        if let Some(&bad) = degs.iter().find(|&&d| !ambient.contains(d as i64)) {
            return Err(IdealError::NotAMember(bad));
        }
        Ok(Self::from_members(ambient.clone(), degs.to_vec()))
    }

    /// The maximal ideal `H \ {0}`.
    pub fn maximal(ambient: &NumericalSemigroup) -> Self {
        Self::from_members(ambient.clone(), ambient.generators().to_vec())
    }

    pub fn principal(ambient: &NumericalSemigroup, q: u64) -> Result<Self, IdealError> {
        Self::new(ambient, &[q])
    }

    fn from_members(ambient: NumericalSemigroup, mut degs: Vec<u64>) -> Self {
        degs.sort_unstable();
        degs.dedup();
        let mut minimal: Vec<u64> = Vec::with_capacity(degs.len());
        for d in degs {
            if !minimal.iter().any(|&g| ambient.contains(d as i64 - g as i64)) {
                minimal.push(d);
            }
        }
        SemigroupIdeal {
            ambient,
            generators: minimal,
        }
    }

    pub fn ambient(&self) -> &NumericalSemigroup {
        &self.ambient
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, x: i64) -> bool {
        self.generators
            .iter()
            .any(|&g| self.ambient.contains(x - g as i64))
    }

    /// Every integer at or above this bound lies in the ideal.
    pub fn enumeration_bound(&self) -> Option<u64> {
        let g0 = *self.generators.first()?;
        Some((g0 as i64 + self.ambient.frobenius() + 1) as u64)
    }

    fn check_ambient(&self, other: &Self) -> Result<(), IdealError> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(IdealError::AmbientMismatch)
        }
    }

    pub fn product(&self, other: &Self) -> Result<Self, IdealError> {
        self.check_ambient(other)?;
        let sums = self
            .generators
            .iter()
            .flat_map(|a| other.generators.iter().map(move |b| a + b))
            .collect();
        Ok(Self::from_members(self.ambient.clone(), sums))
    }

    pub fn power(&self, exp: u32) -> Result<Self, IdealError> {
        if exp == 0 {
            return Err(IdealError::DomainError("power exponent must be >= 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..exp {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.generators.iter().all(|&g| other.contains(g as i64))
    }

    /// `l(R/I) = |H \ E|`.
    pub fn colength(&self) -> Result<u64, IdealError> {
        let bound = self.enumeration_bound().ok_or(IdealError::EmptyIdeal)?;
        let count = (0..bound as i64)
            .filter(|&x| self.ambient.contains(x) && !self.contains(x))
            .count();
        debug_assert!(self.contains(bound as i64));
        Ok(count as u64)
    }

    /// Degrees of `H \ E`, i.e. the monomial basis of `R/I`.
    pub fn complement(&self) -> Result<Vec<u64>, IdealError> {
        let bound = self.enumeration_bound().ok_or(IdealError::EmptyIdeal)?;
        Ok((0..bound)
            .filter(|&x| self.ambient.contains(x as i64) && !self.contains(x as i64))
            .collect())
    }

    /// `l(I/J) = |E_I \ E_J|` for `J ⊆ I`.
    pub fn relative_length(&self, sub: &Self) -> Result<u64, IdealError> {
        self.check_ambient(sub)?;
        if !sub.is_subset_of(self) {
            return Err(IdealError::NotContained);
        }
        Ok(self.relative_set(sub)?.len() as u64)
    }

    /// The degrees in `E_I \ E_J` for `J ⊆ I`.
    pub fn relative_set(&self, sub: &Self) -> Result<Vec<u64>, IdealError> {
        let bound = sub.enumeration_bound().ok_or(IdealError::EmptyIdeal)?;
        Ok((0..bound)
            .filter(|&x| self.contains(x as i64) && !sub.contains(x as i64))
            .collect())
    }

    /// `mu(I) = |E \ (M + E)|`, counted by enumeration.
    pub fn mu(&self) -> u64 {
        let Some(bound) = self.enumeration_bound() else {
            return 0;
        };
        let nonzero: Vec<u64> = self
            .ambient
            .members()
            .skip(1)
            .take_while(|&h| h < bound)
            .collect();
        let count = (0..bound as i64)
            .filter(|&x| self.contains(x))
            .filter(|&x| !nonzero.iter().any(|&h| self.contains(x - h as i64)))
            .count() as u64;
        debug_assert_eq!(count, self.generators.len() as u64);
        count
    }

    /// `I^2 = t^q I`, checked on pairwise generator sums.
    pub fn has_reduction(&self, q: u64) -> bool {
        self.contains(q as i64)
            && self.generators.iter().all(|&a| {
                self.generators
                    .iter()
                    .all(|&b| self.contains(a as i64 + b as i64 - q as i64))
            })
    }

    /// Ulrich test against the explicit reduction candidate `(t^q)`:
    /// `I^2 = t^q I` and `l(I/I^2) = mu(I) l(R/I)`. A surjection
    /// `(R/I)^mu -> I/I^2` between modules of equal finite length is an
    /// isomorphism, so the length equality is exactly freeness.
    pub fn is_ulrich(&self, q: u64) -> Result<UlrichReport, IdealError> {
        if q == 0 {
            return Err(IdealError::NonPositive);
        }
        if !self.contains(q as i64) {
            return Err(IdealError::NotInIdeal(q));
        }
        let colength = self.colength()?;
        let mu = self.mu();
        let square = self.product(self)?;
        let layer_length = self.relative_length(&square)?;
        let reduces = self.has_reduction(q);
        let free = layer_length == mu * colength;
        let free_rank = (colength > 0 && layer_length % colength == 0).then(|| layer_length / colength);
        Ok(UlrichReport {
            is_ulrich: reduces && free,
            reduction_q: reduces.then_some(q),
            colength,
            mu,
            layer_length,
            free_rank,
        })
    }

    /// Tries every generator as the reduction degree and returns the first
    /// witness that passes.
    pub fn find_ulrich_witness(&self) -> Option<UlrichReport> {
        self.generators
            .iter()
            .filter_map(|&q| self.is_ulrich(q).ok())
            .find(|r| r.is_ulrich)
    }

    /// `l(I^i / I^{i+1})` for `i = 1..=up_to`.
    pub fn power_layer_lengths(&self, up_to: u32) -> Result<Vec<u64>, IdealError> {
        let mut out = Vec::with_capacity(up_to as usize);
        let mut cur = self.clone();
        for _ in 0..up_to {
            let next = cur.product(self)?;
            out.push(cur.relative_length(&next)?);
            cur = next;
        }
        Ok(out)
    }

    pub fn describe(&self) -> String {
        format!("H={}; I={}", self.ambient, join(&self.generators))
    }
}

/// `l(m^2 / x m)` with `x = t^e`, `e` the multiplicity.
pub fn square_over_reduction_length(h: &NumericalSemigroup) -> u64 {
    let m = SemigroupIdeal::maximal(h);
    let x = SemigroupIdeal::principal(h, h.multiplicity()).expect("multiplicity is a member");
    let m2 = m.product(&m).expect("same ambient");
    let xm = x.product(&m).expect("same ambient");
    m2.relative_length(&xm).expect("x m is inside m^2")
}

/// `m^3 ⊆ x m` with `x = t^e`.
pub fn cube_in_reduction(h: &NumericalSemigroup) -> bool {
    let m = SemigroupIdeal::maximal(h);
    let x = SemigroupIdeal::principal(h, h.multiplicity()).expect("multiplicity is a member");
    let m3 = m.power(3).expect("positive exponent");
    m3.is_subset_of(&x.product(&m).expect("same ambient"))
}

/// All monomial ideals `I` with `min I = q` and `(t^q) ⊆ I` that are Ulrich
/// with reduction `(t^q)`. Candidates are `(q) + S` for subsets `S` of the
/// Apéry set of `q` above `q`.
pub fn enumerate_ulrich_ideals(
    h: &NumericalSemigroup,
    q: u64,
) -> Result<Vec<(SemigroupIdeal, UlrichReport)>, IdealError> {
    let apery = h
        .apery_set(q)
        .map_err(|_| IdealError::NotAMember(q))?;
    let extra: Vec<u64> = apery.into_iter().filter(|&a| a > q).collect();
    if extra.len() > 20 {
        return Err(IdealError::DomainError(format!(
            "too many candidate generators ({}) for exhaustive search",
            extra.len()
        )));
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << extra.len()) {
        let mut degs = vec![q];
        degs.extend(
            extra
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &a)| a),
        );
        let ideal = SemigroupIdeal::new(h, &degs)?;
        if !seen.insert(ideal.generators.clone()) {
            continue;
        }
        let report = ideal.is_ulrich(q)?;
        if report.is_ulrich {
            out.push((ideal, report));
        }
    }
    Ok(out)
}

/// Free rank of `I^i / I^{i+1}` for an Ulrich ideal with `mu(I) = c` in a
/// Cohen-Macaulay ring of dimension `n`:
/// `C(i+n-1, n-1) + (c-n) C(i+n-2, n-1)`.
pub fn ulrich_rank_formula(n: u64, c: u64, i: u64) -> Result<BigUint, IdealError> {
    if n < 1 || i < 1 {
        return Err(IdealError::DomainError("need n >= 1 and i >= 1".into()));
    }
    if c < n {
        return Err(IdealError::DomainError(format!("mu = {c} < dimension {n}")));
    }
    let n = BigUint::from(n);
    let i = BigUint::from(i);
    let one = BigUint::from(1u32);
    let first = binomial(&i + &n - &one, &n - &one);
    let second = binomial(&i + &n - 2u32, &n - &one);
    Ok(first + (BigUint::from(c) - &n) * second)
}

/// `(1 + a_2 + ... + a_{l-1}) / a_l < 1`, by cross-multiplication. `a` holds
/// `a_2, ..., a_l`; panics if it is empty.
pub fn estimate_ratio_holds(a: &[BigUint]) -> bool {
    let (last, init) = a.split_last().expect("need at least a_2");
    let numerator: BigUint = init.iter().sum::<BigUint>() + 1u32;
    numerator < *last
}

/// Ranks `a_i` of `I^{i-1}/I^i` for `i = 2..=l`.
pub fn layer_ranks(n: u64, c: u64, l: u64) -> Result<Vec<BigUint>, IdealError> {
    (2..=l).map(|i| ulrich_rank_formula(n, c, i - 1)).collect()
}

/// Checks `1 + sum_{i=2}^{l-1} a_i = C(l-2+n, n) + (c-n) C(l-3+n, n)`, with
/// the left side summed term by term.
pub fn cumulative_rank_identity(n: u64, c: u64, l: u64) -> Result<bool, IdealError> {
    if !(3..=n).contains(&l) {
        return Err(IdealError::DomainError(format!("need 3 <= l <= n, got l = {l}, n = {n}")));
    }
    if c < n {
        return Err(IdealError::DomainError(format!("mu = {c} < dimension {n}")));
    }
    let ranks = layer_ranks(n, c, l - 1)?;
    let lhs: BigUint = ranks.iter().sum::<BigUint>() + 1u32;
    let big_n = BigUint::from(n);
    let rhs = binomial(BigUint::from(l - 2 + n), big_n.clone())
        + BigUint::from(c - n) * binomial(BigUint::from(l - 3 + n), big_n);
    Ok(lhs == rhs)
}
