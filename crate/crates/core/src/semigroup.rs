//! Numerical semigroups: cofinite additive submonoids of the non-negative
//! integers, stored by their minimal generators together with an eager
//! membership table.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Sieve bounds above this are refused.
const MAX_SIEVE: u64 = 50_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("empty generator set")]
    EmptyInput,
    #[error("generators must be positive, got {0}")]
    NonPositive(i64),
    #[error("gcd of generators is {0}, not 1 (complement would be infinite)")]
    GcdNotOne(u64),
    #[error("{0} is not a member of the semigroup")]
    NotAMember(i64),
    #[error("gluing requires gcd(m, n) = 1, got gcd({m}, {n}) = {gcd}")]
    NotCoprime { m: u64, n: u64, gcd: u64 },
    #[error("gluing requires m to be a non-generator member, but {0} is a minimal generator")]
    IsMinimalGenerator(u64),
    #[error("sieve bound {0} too large")]
    TooLarge(u64),
    #[error("cannot parse generator list: {0}")]
    Parse(String),
}

/// Summary invariants of a numerical semigroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub multiplicity: u64,
    pub embedding_dim: u64,
    pub frobenius: i64,
    pub genus: u64,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    frobenius: i64,
    /// `member[x]` for `0 <= x <= frobenius + max generator`.
    member: Vec<bool>,
}

impl NumericalSemigroup {
    /// Builds the semigroup generated by `gens`, reducing to minimal
    /// generators.
    pub fn from_generators(gens: &[u64]) -> Result<Self, SemigroupError> {
        if gens.is_empty() {
            return Err(SemigroupError::EmptyInput);
        }
        if gens.contains(&0) {
            return Err(SemigroupError::NonPositive(0));
        }
        let mut g: Vec<u64> = gens.to_vec();
        g.sort_unstable();
        g.dedup();
        let gcd = g.iter().fold(0u64, |acc, &x| acc.gcd(&x));
        if gcd != 1 {
            return Err(SemigroupError::GcdNotOne(gcd));
        }
        let bound = g[0]
            .checked_mul(*g.last().unwrap())
            .filter(|&b| b <= MAX_SIEVE)
            .ok_or(SemigroupError::TooLarge(g[0].saturating_mul(*g.last().unwrap())))?;
        let table = sieve(&g, bound as usize);
        let frobenius = (0..=bound as usize)
            .rev()
            .find(|&x| !table[x])
            .map_or(-1, |x| x as i64);
        let minimal: Vec<u64> = g
            .iter()
            .copied()
            .filter(|&x| !(1..x).any(|y| table[y as usize] && table[(x - y) as usize]))
            .collect();
        let limit = (frobenius + *minimal.last().unwrap() as i64) as usize;
        let member = (0..=limit).map(|x| x > bound as usize || table[x]).collect();
        Ok(NumericalSemigroup {
            generators: minimal,
            frobenius,
            member,
        })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    pub fn multiplicity(&self) -> u64 {
        self.generators[0]
    }

    pub fn embedding_dim(&self) -> u64 {
        self.generators.len() as u64
    }

    pub fn contains(&self, x: i64) -> bool {
        if x < 0 {
            false
        } else if x > self.frobenius {
            true
        } else {
            self.member[x as usize]
        }
    }

    /// Members in increasing order, starting at 0.
    pub fn members(&self) -> impl Iterator<Item = u64> + '_ {
        (0u64..).filter(move |&x| self.contains(x as i64))
    }

    pub fn is_minimal_generator(&self, x: u64) -> bool {
        self.generators.binary_search(&x).is_ok()
    }

    /// Gaps in increasing order.
    pub fn gaps(&self) -> Vec<u64> {
        (0..=self.frobenius.max(-1))
            .filter(|&x| !self.contains(x))
            .map(|x| x as u64)
            .collect()
    }

    /// Smallest member in each residue class mod `q`, sorted increasingly.
    pub fn apery_set(&self, q: u64) -> Result<Vec<u64>, SemigroupError> {
        if q == 0 || !self.contains(q as i64) {
            return Err(SemigroupError::NotAMember(q as i64));
        }
        let mut best: Vec<Option<u64>> = vec![None; q as usize];
        let mut found = 0;
        let mut x = 0u64;
        while found < q {
            if self.contains(x as i64) {
                let slot = &mut best[(x % q) as usize];
                if slot.is_none() {
                    *slot = Some(x);
                    found += 1;
                }
            }
            x += 1;
        }
        let mut out: Vec<u64> = best.into_iter().map(Option::unwrap).collect();
        out.sort_unstable();
        Ok(out)
    }

    pub fn invariants(&self) -> Invariants {
        Invariants {
            multiplicity: self.multiplicity(),
            embedding_dim: self.embedding_dim(),
            frobenius: self.frobenius,
            genus: self.gaps().len() as u64,
        }
    }

    /// `v(H) = e(H)`.
    pub fn has_minimal_multiplicity(&self) -> bool {
        self.embedding_dim() == self.multiplicity()
    }

    /// `e(H) = v(H) + 1`, cross-checked against the length of `m^2 / x m`
    /// with `x = t^e`.
    pub fn has_almost_minimal_multiplicity(&self) -> bool {
        let numeric = self.multiplicity() == self.embedding_dim() + 1;
        let by_length = crate::ideal::square_over_reduction_length(self) == 1;
        assert_eq!(
            numeric, by_length,
            "multiplicity test and length test disagree for {self}"
        );
        numeric
    }

    /// Gap symmetry: `x` is a gap iff `F - x` is a member. Equivalent to
    /// Gorensteinness of the semigroup ring (a classical criterion).
    pub fn is_symmetric(&self) -> bool {
        let f = self.frobenius;
        (0..=f).all(|x| self.contains(x) != self.contains(f - x))
    }

    /// The semigroup `n H + <m>`.
    pub fn glue(&self, n: u64, m: u64) -> Result<NumericalSemigroup, SemigroupError> {
        if n == 0 || m == 0 {
            return Err(SemigroupError::EmptyInput);
        }
        if !self.contains(m as i64) {
            return Err(SemigroupError::NotAMember(m as i64));
        }
        if self.is_minimal_generator(m) {
            return Err(SemigroupError::IsMinimalGenerator(m));
        }
        let gcd = m.gcd(&n);
        if gcd != 1 {
            return Err(SemigroupError::NotCoprime { m, n, gcd });
        }
        let mut gens: Vec<u64> = self.generators.iter().map(|g| g * n).collect();
        gens.push(m);
        NumericalSemigroup::from_generators(&gens)
    }

    /// All ways of writing `self` as `n H + <m>` with `n >= 2`: for each
    /// minimal generator `m`, the remaining generators must share a factor
    /// `n` coprime to `m`.
    pub fn gluing_decompositions(&self) -> Vec<(NumericalSemigroup, u64, u64)> {
        let mut out = Vec::new();
        for &m in &self.generators {
            let others: Vec<u64> = self.generators.iter().copied().filter(|&g| g != m).collect();
            if others.is_empty() {
                continue;
            }
            let n = others.iter().fold(0u64, |acc, &x| acc.gcd(&x));
            if n < 2 || m.gcd(&n) != 1 {
                continue;
            }
            let scaled: Vec<u64> = others.iter().map(|g| g / n).collect();
            let Ok(inner) = NumericalSemigroup::from_generators(&scaled) else {
                continue;
            };
            if let Ok(glued) = inner.glue(n, m) {
                if glued == *self {
                    out.push((inner, n, m));
                }
            }
        }
        out
    }
}

fn sieve(gens: &[u64], bound: usize) -> Vec<bool> {
    let mut table = vec![false; bound + 1];
    table[0] = true;
    for x in 1..=bound {
        table[x] = gens
            .iter()
            .any(|&g| (g as usize) <= x && table[x - g as usize]);
    }
    table
}

impl PartialEq for NumericalSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
    }
}

impl Eq for NumericalSemigroup {}

impl Hash for NumericalSemigroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.generators.hash(state);
    }
}

impl PartialOrd for NumericalSemigroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for NumericalSemigroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.generators.cmp(&other.generators)
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", join(&self.generators))
    }
}

impl fmt::Debug for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", join(&self.generators))
    }
}

impl TryFrom<Vec<u64>> for NumericalSemigroup {
    type Error = SemigroupError;
    fn try_from(gens: Vec<u64>) -> Result<Self, Self::Error> {
        NumericalSemigroup::from_generators(&gens)
    }
}

impl From<NumericalSemigroup> for Vec<u64> {
    fn from(h: NumericalSemigroup) -> Self {
        h.generators
    }
}

impl FromStr for NumericalSemigroup {
    type Err = SemigroupError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NumericalSemigroup::from_generators(&parse_list(s)?)
    }
}

/// Parses `"8, 11,12"` into integers.
pub fn parse_list(s: &str) -> Result<Vec<u64>, SemigroupError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            let t = t.trim();
            match t.parse::<i64>() {
                Ok(v) if v <= 0 => Err(SemigroupError::NonPositive(v)),
                Ok(v) => Ok(v as u64),
                Err(_) => Err(SemigroupError::Parse(t.to_string())),
            }
        })
        .collect()
}

pub(crate) fn join(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}
