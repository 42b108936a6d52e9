//! Degree tables: the addition table of two exponent vectors.
//!
//! A polynomial code is described by exponents `alpha` (for the blocks of `A`
//! followed by `T` mask exponents) and `beta` (blocks of `B`, then masks). The
//! product `h = f g` only has monomials whose degrees appear in the outer sum
//! `alpha ⊕ beta`, so the number of servers is the number of distinct entries.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{param, Result};

/// Largest exponent entry allowed so that any pairwise sum stays below 2^63.
pub const MAX_EXPONENT: u64 = (1 << 62) - 1;

/// Partition counts and collusion tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SchemeParams {
    pub k: usize,
    pub l: usize,
    pub t: usize,
}

impl SchemeParams {
    pub fn new(k: usize, l: usize, t: usize) -> Result<Self> {
        if k == 0 || l == 0 || t == 0 {
            return param(format!("K, L, T must be positive (got {k}, {l}, {t})"));
        }
        Ok(Self { k, l, t })
    }

    /// Same parameters with the roles of `K` and `L` exchanged.
    pub fn transposed(self) -> Self {
        Self {
            k: self.l,
            l: self.k,
            t: self.t,
        }
    }

    pub fn kl(self) -> u64 {
        (self.k * self.l) as u64
    }
}

impl fmt::Display for SchemeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(K={}, L={}, T={})", self.k, self.l, self.t)
    }
}

/// Exponent vectors `alpha` (length K+T) and `beta` (length L+T).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentAssignment {
    alpha: Vec<u64>,
    beta: Vec<u64>,
}

impl ExponentAssignment {
    pub fn new(alpha: Vec<u64>, beta: Vec<u64>) -> Result<Self> {
        if let Some(&bad) = alpha.iter().chain(beta.iter()).find(|&&e| e > MAX_EXPONENT) {
            return param(format!("exponent {bad} exceeds 62 bits"));
        }
        Ok(Self { alpha, beta })
    }

    /// Checks that the vector lengths agree with `params`.
    pub fn validate(&self, params: SchemeParams) -> Result<()> {
        if self.alpha.len() != params.k + params.t {
            return param(format!(
                "alpha has {} entries, expected K+T = {}",
                self.alpha.len(),
                params.k + params.t
            ));
        }
        if self.beta.len() != params.l + params.t {
            return param(format!(
                "beta has {} entries, expected L+T = {}",
                self.beta.len(),
                params.l + params.t
            ));
        }
        Ok(())
    }

    pub fn alpha(&self) -> &[u64] {
        &self.alpha
    }

    pub fn beta(&self) -> &[u64] {
        &self.beta
    }

    /// The `T` mask exponents of `alpha`.
    pub fn alpha_masks(&self, params: SchemeParams) -> &[u64] {
        &self.alpha[params.k..]
    }

    /// The `T` mask exponents of `beta`.
    pub fn beta_masks(&self, params: SchemeParams) -> &[u64] {
        &self.beta[params.l..]
    }

    /// Swaps `alpha` and `beta`; the table becomes its transpose.
    pub fn swapped(self) -> Self {
        Self {
            alpha: self.beta,
            beta: self.alpha,
        }
    }

    /// Adds `c` to every entry of `alpha`.
    pub fn shift_alpha(&self, c: u64) -> Result<Self> {
        Self::new(
            self.alpha.iter().map(|a| a + c).collect(),
            self.beta.clone(),
        )
    }
}

/// The outer sum `alpha ⊕ beta`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeTable {
    params: SchemeParams,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl DegreeTable {
    pub fn params(&self) -> SchemeParams {
        self.params
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    fn block_terms(
        &self,
        rows: std::ops::Range<usize>,
        cols: std::ops::Range<usize>,
    ) -> BTreeSet<u64> {
        let mut out = BTreeSet::new();
        for i in rows {
            for j in cols.clone() {
                out.insert(self.get(i, j));
            }
        }
        out
    }
}

/// Term sets of the four blocks of a degree table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionTerms {
    pub ul: BTreeSet<u64>,
    pub ur: BTreeSet<u64>,
    pub ll: BTreeSet<u64>,
    pub lr: BTreeSet<u64>,
}

impl RegionTerms {
    pub fn union(&self) -> BTreeSet<u64> {
        let mut all = self.ul.clone();
        all.extend(&self.ur);
        all.extend(&self.ll);
        all.extend(&self.lr);
        all
    }
}

pub fn outer_sum(assignment: &ExponentAssignment, params: SchemeParams) -> Result<DegreeTable> {
    assignment.validate(params)?;
    let (rows, cols) = (assignment.alpha.len(), assignment.beta.len());
    let mut entries = Vec::with_capacity(rows * cols);
    for &a in &assignment.alpha {
        entries.extend(assignment.beta.iter().map(|&b| a + b));
    }
    Ok(DegreeTable {
        params,
        rows,
        cols,
        entries,
    })
}

/// Distinct entries, ascending.
pub fn terms(table: &DegreeTable) -> BTreeSet<u64> {
    table.entries.iter().copied().collect()
}

/// `N = |terms(alpha ⊕ beta)|` by direct enumeration.
pub fn count_terms(assignment: &ExponentAssignment, params: SchemeParams) -> Result<usize> {
    Ok(terms(&outer_sum(assignment, params)?).len())
}

pub fn partition_regions(table: &DegreeTable) -> RegionTerms {
    let SchemeParams { k, l, .. } = table.params;
    let (rows, cols) = (table.rows, table.cols);
    RegionTerms {
        ul: table.block_terms(0..k, 0..l),
        ur: table.block_terms(0..k, l..cols),
        ll: table.block_terms(k..rows, 0..l),
        lr: table.block_terms(k..rows, l..cols),
    }
}

/// Every upper-left entry occurs exactly once in the whole table.
pub fn is_decodable(assignment: &ExponentAssignment, params: SchemeParams) -> Result<bool> {
    let table = outer_sum(assignment, params)?;
    let mut counts: HashMap<u64, usize> = HashMap::with_capacity(table.entries.len());
    for &e in &table.entries {
        *counts.entry(e).or_default() += 1;
    }
    for i in 0..params.k {
        for j in 0..params.l {
            if counts[&table.get(i, j)] != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Mask exponents of `alpha` are pairwise distinct, and likewise for `beta`.
pub fn is_t_secure_assignment(
    assignment: &ExponentAssignment,
    params: SchemeParams,
) -> Result<bool> {
    assignment.validate(params)?;
    let distinct = |xs: &[u64]| xs.iter().collect::<BTreeSet<_>>().len() == xs.len();
    Ok(distinct(assignment.alpha_masks(params)) && distinct(assignment.beta_masks(params)))
}
