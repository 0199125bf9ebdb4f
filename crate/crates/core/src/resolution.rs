//! Minimal free resolutions over a [`MonomialAlgebra`] and the Ext/Tor
//! dimension tables computed from them.
//!
//! A differential is stored as a multiset of indecomposable diagonal blocks.
//! Each distinct block is resolved once; a level of the resolution is a map
//! from block id to multiplicity. Over radical-square-zero algebras, for
//! instance, the resolution of `k` has a single block at every level even
//! though the Betti numbers grow geometrically.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::RangeInclusive;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AMatrix, MonomialAlgebra};
use crate::field::Field;
use crate::linalg::{kernel_basis, rank, Matrix};
use crate::module::{linear_map, minimal_generators, vectors_to_matrix, KStructure, PresentedModule};

/// Largest k-dimension of the domain of a single block that will be resolved.
pub const DEFAULT_BLOCK_LIMIT: usize = 1024;

/// Largest Betti number for which full differentials are materialized.
const EXPAND_LIMIT: u64 = 512;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolutionError {
    #[error("input matrix is not minimal: its kernel is not inside m times the source")]
    NonMinimalInput,
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("a block of k-dimension {dim} exceeds the limit {limit}")]
    TooLarge { dim: usize, limit: usize },
    #[error("window must be at least 1")]
    EmptyWindow,
}

/// Minimal generators of `ker(d)` as the columns of a matrix over `A`.
///
/// The kernel of the induced k-linear map is computed exactly, then a k-basis
/// of `ker / m ker` is selected. Fails with `NonMinimalInput` unless
/// `ker(d) ⊆ m A^c`, i.e. unless the columns of `d` minimally generate their
/// span.
pub fn syzygy_step<F: Field>(
    alg: &MonomialAlgebra<F>,
    d: &AMatrix<F::Elem>,
) -> Result<AMatrix<F::Elem>, ResolutionError> {
    let n = alg.dim();
    let f = alg.field();
    let kernel = kernel_basis(f, &linear_map(alg, d));
    let unit_part = |v: &Vec<F::Elem>| (0..d.cols()).any(|j| !f.is_zero(&v[j * n]));
    if kernel.iter().any(unit_part) {
        return Err(ResolutionError::NonMinimalInput);
    }
    let gens = minimal_generators(alg, &kernel);
    Ok(vectors_to_matrix(alg, d.cols(), &gens))
}

/// A block of a block-diagonal decomposition, with its row and column indices
/// in the enclosing matrix.
#[derive(Debug, Clone)]
struct Placed {
    id: usize,
    rows: Vec<usize>,
    cols: Vec<usize>,
}

#[derive(Debug, Clone)]
struct Block<E> {
    matrix: AMatrix<E>,
    syzygy: Option<(AMatrix<E>, Vec<Placed>)>,
}

#[derive(Debug, Clone)]
struct BlockStore<F: Field> {
    alg: Arc<MonomialAlgebra<F>>,
    blocks: Vec<Block<F::Elem>>,
    index: HashMap<AMatrix<F::Elem>, usize>,
    limit: usize,
}

impl<F: Field> BlockStore<F> {
    fn intern(&mut self, m: AMatrix<F::Elem>) -> usize {
        if let Some(&id) = self.index.get(&m) {
            return id;
        }
        let id = self.blocks.len();
        self.index.insert(m.clone(), id);
        self.blocks.push(Block {
            matrix: m,
            syzygy: None,
        });
        id
    }

    /// Splits `m` into connected components of its row/column incidence
    /// graph. Zero rows become `1 x 0` blocks. Components are ordered by
    /// their smallest row.
    fn decompose(&mut self, m: &AMatrix<F::Elem>) -> Result<Vec<Placed>, ResolutionError> {
        let (r, c) = (m.rows(), m.cols());
        let mut parent: Vec<usize> = (0..r + c).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut col_used = vec![false; c];
        for i in 0..r {
            for (j, used) in col_used.iter_mut().enumerate() {
                if !self.alg.is_zero_elem(m.get(i, j)) {
                    *used = true;
                    let (a, b) = (find(&mut parent, i), find(&mut parent, r + j));
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        if col_used.contains(&false) {
            return Err(ResolutionError::NonMinimalInput);
        }
        let mut groups: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for i in 0..r {
            let root = find(&mut parent, i);
            groups.entry(root).or_default().0.push(i);
        }
        for j in 0..c {
            let root = find(&mut parent, r + j);
            groups.entry(root).or_default().1.push(j);
        }
        let mut placed = Vec::with_capacity(groups.len());
        for (rows, cols) in groups.into_values() {
            let id = self.intern(m.select(&rows, &cols));
            placed.push(Placed { id, rows, cols });
        }
        Ok(placed)
    }

    fn ensure_syzygy(&mut self, id: usize) -> Result<(), ResolutionError> {
        if self.blocks[id].syzygy.is_some() {
            return Ok(());
        }
        let m = self.blocks[id].matrix.clone();
        let dim = m.cols().max(m.rows()) * self.alg.dim();
        if dim > self.limit {
            return Err(ResolutionError::TooLarge {
                dim,
                limit: self.limit,
            });
        }
        let s = syzygy_step(&self.alg, &m)?;
        let children = self.decompose(&s)?;
        self.blocks[id].syzygy = Some((s, children));
        Ok(())
    }

    fn children(&self, id: usize) -> &[Placed] {
        &self.blocks[id].syzygy.as_ref().expect("syzygy computed").1
    }
}

/// A minimal free resolution `F_0 <- F_1 <- ... <- F_L` of a module.
#[derive(Debug, Clone)]
pub struct MinimalResolution<F: Field> {
    module: PresentedModule<F>,
    store: BlockStore<F>,
    roots: Vec<Placed>,
    /// `levels[i]` holds the blocks of `d_{i+1}` with multiplicities.
    levels: Vec<BTreeMap<usize, u64>>,
}

impl<F: Field> MinimalResolution<F> {
    /// Resolves `module` far enough to know `beta_0..=beta_length`.
    pub fn new(module: &PresentedModule<F>, length: usize) -> Result<Self, ResolutionError> {
        Self::with_limit(module, length, DEFAULT_BLOCK_LIMIT)
    }

    pub fn with_limit(
        module: &PresentedModule<F>,
        length: usize,
        limit: usize,
    ) -> Result<Self, ResolutionError> {
        let mut store = BlockStore {
            alg: module.algebra().clone(),
            blocks: Vec::new(),
            index: HashMap::new(),
            limit,
        };
        let roots = store.decompose(module.relations())?;
        let mut first = BTreeMap::new();
        for p in &roots {
            *first.entry(p.id).or_insert(0) += 1;
        }
        let mut res = MinimalResolution {
            module: module.clone(),
            store,
            roots,
            levels: vec![first],
        };
        res.ensure_levels(length.max(1))?;
        Ok(res)
    }

    pub fn module(&self) -> &PresentedModule<F> {
        &self.module
    }

    /// Makes sure the blocks of `d_1..=d_count` are known.
    fn ensure_levels(&mut self, count: usize) -> Result<(), ResolutionError> {
        while self.levels.len() < count {
            let last = self.levels.last().expect("level 1 exists").clone();
            let mut next = BTreeMap::new();
            for (&id, &mult) in &last {
                self.store.ensure_syzygy(id)?;
                for child in self.store.children(id) {
                    *next.entry(child.id).or_insert(0u64) += mult;
                }
            }
            self.levels.push(next);
        }
        Ok(())
    }

    /// `d_i` for `i >= 1` as a block multiset.
    fn level(&self, i: usize) -> &BTreeMap<usize, u64> {
        &self.levels[i - 1]
    }

    /// Number of differentials whose blocks are known.
    pub fn length(&self) -> usize {
        self.levels.len()
    }

    /// `beta_0..=beta_length`.
    pub fn betti(&self) -> Vec<u64> {
        let blocks = &self.store.blocks;
        let rows: u64 = self
            .level(1)
            .iter()
            .map(|(&id, &m)| m * blocks[id].matrix.rows() as u64)
            .sum();
        let mut out = vec![rows];
        for lvl in &self.levels {
            out.push(lvl.iter().map(|(&id, &m)| m * blocks[id].matrix.cols() as u64).sum());
        }
        out
    }

    /// Number of distinct blocks resolved so far.
    pub fn distinct_blocks(&self) -> usize {
        self.store.blocks.len()
    }

    /// First pair `(i, j)`, `i < j`, of differentials built from the same set
    /// of blocks. This suggests periodicity but proves nothing.
    pub fn periodicity_hint(&self) -> Option<(usize, usize)> {
        let keys: Vec<BTreeSet<usize>> = self
            .levels
            .iter()
            .map(|l| l.keys().copied().collect())
            .collect();
        for j in 1..keys.len() {
            if keys[j].is_empty() {
                return None;
            }
            if let Some(i) = (0..j).find(|&i| keys[i] == keys[j]) {
                return Some((i + 1, j + 1));
            }
        }
        None
    }

    /// The differentials `d_1..=d_length` as full matrices. Fails if a Betti
    /// number is too large to materialize.
    pub fn differentials(&self) -> Result<Vec<AMatrix<F::Elem>>, ResolutionError> {
        let betti = self.betti();
        if let Some(&b) = betti.iter().find(|&&b| b > EXPAND_LIMIT) {
            return Err(ResolutionError::TooLarge {
                dim: b as usize,
                limit: EXPAND_LIMIT as usize,
            });
        }
        let alg = &self.store.alg;
        let mut out = vec![self.module.relations().clone()];
        let mut instances = self.roots.clone();
        for i in 1..self.length() {
            let mut d = AMatrix::zeros(betti[i] as usize, betti[i + 1] as usize, alg.zero());
            let mut next = Vec::new();
            let mut offset = 0;
            for inst in &instances {
                let (s, children) = self.store.blocks[inst.id]
                    .syzygy
                    .as_ref()
                    .expect("syzygy computed");
                for r in 0..s.rows() {
                    for c in 0..s.cols() {
                        d.set(inst.cols[r], offset + c, s.get(r, c).to_vec());
                    }
                }
                for ch in children {
                    next.push(Placed {
                        id: ch.id,
                        rows: ch.rows.iter().map(|&r| inst.cols[r]).collect(),
                        cols: ch.cols.iter().map(|&c| offset + c).collect(),
                    });
                }
                offset += s.cols();
            }
            out.push(d);
            instances = next;
        }
        Ok(out)
    }

    /// `dim_k Ext^j(M, N)` for `j` in `range`.
    pub fn ext_dims(
        &mut self,
        target: &PresentedModule<F>,
        range: RangeInclusive<usize>,
    ) -> Result<Vec<u64>, ResolutionError> {
        self.table(target, range, Functor::Hom)
    }

    /// `dim_k Tor_j(M, N)` for `j` in `range`.
    pub fn tor_dims(
        &mut self,
        target: &PresentedModule<F>,
        range: RangeInclusive<usize>,
    ) -> Result<Vec<u64>, ResolutionError> {
        self.table(target, range, Functor::Tensor)
    }

    fn table(
        &mut self,
        target: &PresentedModule<F>,
        range: RangeInclusive<usize>,
        functor: Functor,
    ) -> Result<Vec<u64>, ResolutionError> {
        if self.module.algebra() != target.algebra() {
            return Err(ResolutionError::AlgebraMismatch);
        }
        let mut cells = CellCache::new(target, functor);
        range.map(|j| self.cell(&mut cells, j)).collect()
    }

    fn cell(&mut self, cells: &mut CellCache<F>, j: usize) -> Result<u64, ResolutionError> {
        self.ensure_levels(j.max(1))?;
        let dn = cells.k.dim as u64;
        if j == 0 {
            let mut total = 0;
            for (&id, &mult) in self.level(1).clone().iter() {
                let rows = self.store.blocks[id].matrix.rows() as u64;
                total += mult * (rows * dn - cells.rank(&self.store, id) as u64);
            }
            return Ok(total);
        }
        let mut total = 0;
        for (&id, &mult) in self.level(j).clone().iter() {
            self.store.ensure_syzygy(id)?;
            let cols = self.store.blocks[id].matrix.cols() as u64;
            let mut r = cells.rank(&self.store, id) as u64;
            for ch in self.store.children(id).to_vec() {
                r += cells.rank(&self.store, ch.id) as u64;
            }
            total += mult * (cols * dn - r);
        }
        Ok(total)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Functor {
    Hom,
    Tensor,
}

/// Ranks of `Hom_A(B, N)` or `B ⊗ N` per block, for a fixed `N`.
struct CellCache<F: Field> {
    k: KStructure<F>,
    functor: Functor,
    ranks: HashMap<usize, usize>,
}

impl<F: Field> CellCache<F> {
    fn new(target: &PresentedModule<F>, functor: Functor) -> Self {
        CellCache {
            k: target.k_structure(),
            functor,
            ranks: HashMap::new(),
        }
    }

    fn rank(&mut self, store: &BlockStore<F>, id: usize) -> usize {
        if let Some(&r) = self.ranks.get(&id) {
            return r;
        }
        let b = &store.blocks[id].matrix;
        let f = store.alg.field();
        let dn = self.k.dim;
        let r = if b.rows() == 0 || b.cols() == 0 || dn == 0 {
            0
        } else {
            let (rows, cols) = match self.functor {
                Functor::Hom => (b.cols() * dn, b.rows() * dn),
                Functor::Tensor => (b.rows() * dn, b.cols() * dn),
            };
            let mut m = Matrix::filled(rows, cols, f.zero());
            for i in 0..b.rows() {
                for j in 0..b.cols() {
                    let act = self.act(f, b.get(i, j));
                    let (br, bc) = match self.functor {
                        Functor::Hom => (j * dn, i * dn),
                        Functor::Tensor => (i * dn, j * dn),
                    };
                    for x in 0..dn {
                        for y in 0..dn {
                            m.set(br + x, bc + y, act.get(x, y).clone());
                        }
                    }
                }
            }
            rank(f, &m)
        };
        self.ranks.insert(id, r);
        r
    }

    /// Matrix of multiplication by `a` on `N`.
    fn act(&self, f: &F, a: &[F::Elem]) -> Matrix<F::Elem> {
        let dn = self.k.dim;
        let mut out = Matrix::filled(dn, dn, f.zero());
        for (s, coef) in a.iter().enumerate() {
            if f.is_zero(coef) {
                continue;
            }
            let act = &self.k.actions[s];
            for x in 0..dn {
                for y in 0..dn {
                    let v = act.get(x, y);
                    if !f.is_zero(v) {
                        let cur = out.get(x, y).clone();
                        out.set(x, y, f.add(&cur, &f.mul(coef, v)));
                    }
                }
            }
        }
        out
    }
}

/// `dim_k Ext^j(M, N)` for `j` in `range`.
pub fn ext_dims<F: Field>(
    m: &PresentedModule<F>,
    n: &PresentedModule<F>,
    range: RangeInclusive<usize>,
) -> Result<Vec<u64>, ResolutionError> {
    if m.algebra() != n.algebra() {
        return Err(ResolutionError::AlgebraMismatch);
    }
    MinimalResolution::new(m, *range.end() + 1)?.ext_dims(n, range)
}

/// `dim_k Tor_j(M, N)` for `j` in `range`.
pub fn tor_dims<F: Field>(
    m: &PresentedModule<F>,
    n: &PresentedModule<F>,
    range: RangeInclusive<usize>,
) -> Result<Vec<u64>, ResolutionError> {
    if m.algebra() != n.algebra() {
        return Err(ResolutionError::AlgebraMismatch);
    }
    MinimalResolution::new(m, *range.end() + 1)?.tor_dims(n, range)
}

/// Bounded scan of `Ext^i(M ⊕ A, M ⊕ A)` for `1 <= i <= window`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtDegReport {
    pub window: usize,
    /// `dims[i - 1] = dim_k Ext^i(M ⊕ A, M ⊕ A)`.
    pub dims: Vec<u64>,
    pub last_nonzero_in_window: Option<usize>,
    pub nonzero_at_boundary: bool,
    /// Heuristic only: differentials `i` and `j` use the same blocks.
    pub periodic_hint: Option<(usize, usize)>,
}

fn with_free_summand<F: Field>(m: &PresentedModule<F>) -> PresentedModule<F> {
    let a = PresentedModule::free(m.algebra().clone(), 1);
    m.direct_sum(&a).expect("same algebra")
}

pub fn ext_deg_window<F: Field>(
    m: &PresentedModule<F>,
    window: usize,
) -> Result<ExtDegReport, ResolutionError> {
    ext_deg_window_with_limit(m, window, DEFAULT_BLOCK_LIMIT)
}

pub fn ext_deg_window_with_limit<F: Field>(
    m: &PresentedModule<F>,
    window: usize,
    limit: usize,
) -> Result<ExtDegReport, ResolutionError> {
    if window == 0 {
        return Err(ResolutionError::EmptyWindow);
    }
    let ma = with_free_summand(m);
    let mut res = MinimalResolution::with_limit(&ma, window + 1, limit)?;
    let dims = res.ext_dims(&ma, 1..=window)?;
    let last = dims.iter().rposition(|&d| d != 0).map(|i| i + 1);
    Ok(ExtDegReport {
        window,
        nonzero_at_boundary: dims[window - 1] != 0,
        last_nonzero_in_window: last,
        periodic_hint: res.periodicity_hint(),
        dims,
    })
}

/// Least `i` in `1..=window` with `Ext^i(M ⊕ A, M ⊕ A) != 0`, resolving only
/// as far as needed.
pub fn first_nonvanishing_self_ext<F: Field>(
    m: &PresentedModule<F>,
    window: usize,
) -> Result<Option<usize>, ResolutionError> {
    let ma = with_free_summand(m);
    let mut res = MinimalResolution::new(&ma, 1)?;
    let mut cells = CellCache::new(&ma, Functor::Hom);
    for i in 1..=window {
        if res.cell(&mut cells, i)? != 0 {
            return Ok(Some(i));
        }
    }
    Ok(None)
}
