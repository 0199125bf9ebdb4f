//! Brute-force oracles shared by the integration tests. They work directly
//! on sets of integers and share no code with the library beyond the
//! semigroup constructor.

#![allow(dead_code)]

use std::collections::BTreeSet;

use sac_core::NumericalSemigroup;

pub fn sg(g: &[u64]) -> NumericalSemigroup {
    NumericalSemigroup::from_generators(g).unwrap()
}

/// Members of `<gens>` below `bound`, by dynamic programming over sums.
pub fn members_below(gens: &[u64], bound: u64) -> BTreeSet<u64> {
    let mut reach = vec![false; bound as usize];
    if bound > 0 {
        reach[0] = true;
    }
    for x in 1..bound as usize {
        reach[x] = gens.iter().any(|&g| g as usize <= x && reach[x - g as usize]);
    }
    (0..bound).filter(|&x| reach[x as usize]).collect()
}

/// Frobenius number by scanning for `min(gens)` consecutive members.
pub fn frobenius(gens: &[u64]) -> i64 {
    let e = *gens.iter().min().unwrap();
    let bound = 4 * gens.iter().max().unwrap() * e + 4;
    let h = members_below(gens, bound);
    (0..bound).rev().find(|x| !h.contains(x)).map_or(-1, |x| x as i64)
}

/// Degrees of the ideal generated by `degs` below `bound`.
pub fn ideal_below(gens: &[u64], degs: &[u64], bound: u64) -> BTreeSet<u64> {
    let h = members_below(gens, bound);
    let mut out = BTreeSet::new();
    for &d in degs {
        for &x in &h {
            if d + x < bound {
                out.insert(d + x);
            }
        }
    }
    out
}

/// `{a + b : a in x, b in y} ∩ [0, bound)`.
pub fn sumset(x: &BTreeSet<u64>, y: &BTreeSet<u64>, bound: u64) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for &a in x {
        for &b in y {
            if a + b < bound {
                out.insert(a + b);
            }
        }
    }
    out
}

/// Brute-force facts about a monomial ideal `I = (t^d : d in degs)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealFacts {
    pub colength: u64,
    pub mu: u64,
    pub square_is_q_times: bool,
    /// `l(I^i / I^{i+1})` for `i = 1..=powers`.
    pub layers: Vec<u64>,
}

pub fn ideal_facts(gens: &[u64], degs: &[u64], q: u64, powers: usize) -> IdealFacts {
    let f = frobenius(gens).max(0) as u64;
    let g0 = *degs.iter().min().unwrap();
    let bound = (powers as u64 + 2) * (g0 + q) + f + 2 * gens.iter().max().unwrap() + 2;
    let h = members_below(gens, bound);
    let i1 = ideal_below(gens, degs, bound);
    let colength = h.iter().filter(|x| !i1.contains(x)).count() as u64;
    let positive: BTreeSet<u64> = h.iter().copied().filter(|&x| x > 0).collect();
    let m_i = sumset(&positive, &i1, bound);
    let mu = i1.iter().filter(|x| !m_i.contains(x)).count() as u64;
    // Compare I^2 and t^q I below a range where both are exact.
    let sq = sumset(&i1, &i1, bound);
    let qi: BTreeSet<u64> = i1.iter().map(|x| x + q).filter(|&x| x < bound).collect();
    let cmp_bound = bound - q - 1;
    let square_is_q_times = (0..cmp_bound).all(|x| sq.contains(&x) == qi.contains(&x));
    let mut layers = Vec::new();
    let mut cur = i1.clone();
    for i in 1..=powers as u64 {
        let next = sumset(&cur, &i1, bound);
        // Everything at or above (i+1) g0 + F + 1 lies in I^{i+1}.
        let top = (i + 1) * g0 + f + 1;
        assert!(top < bound);
        layers.push((0..top).filter(|x| cur.contains(x) && !next.contains(x)).count() as u64);
        cur = next;
    }
    IdealFacts {
        colength,
        mu,
        square_is_q_times,
        layers,
    }
}

/// Binomial coefficient by Pascal's rule, as an oracle for closed forms.
pub fn pascal(n: usize, k: usize) -> u128 {
    let mut row = vec![1u128];
    for i in 1..=n {
        let mut next = vec![1u128; i + 1];
        for j in 1..i {
            next[j] = row[j - 1] + row[j];
        }
        row = next;
    }
    row.get(k).copied().unwrap_or(0)
}

/// Number of monomials of degree `d` in `n` variables, by enumeration.
pub fn monomial_count(n: usize, d: usize) -> u128 {
    fn go(n: usize, d: usize) -> u128 {
        if n == 1 {
            return 1;
        }
        (0..=d).map(|first| go(n - 1, d - first)).sum()
    }
    if n == 0 {
        return u128::from(d == 0);
    }
    go(n, d)
}

/// Semigroups used across several tests.
pub fn semigroup_corpus() -> Vec<Vec<u64>> {
    vec![
        vec![2, 3],
        vec![3, 4],
        vec![3, 4, 5],
        vec![3, 5, 7],
        vec![4, 5, 6],
        vec![4, 5, 6, 7],
        vec![4, 6, 7, 9],
        vec![4, 5, 7],
        vec![5, 6, 7, 8],
        vec![5, 6, 7, 8, 9],
        vec![5, 7, 9],
        vec![6, 7, 8, 9, 10],
        vec![6, 7, 8, 9, 10, 11],
        vec![7, 8, 9],
        vec![8, 11, 12, 14, 18],
        vec![8, 9, 10, 11, 12, 13, 14],
    ]
}
