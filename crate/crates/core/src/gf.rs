//! Prime-field arithmetic and exact dense linear algebra over `F_p`.

use std::fmt;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{param, Error, Result};

/// Largest modulus accepted (exclusive).
pub const MAX_MODULUS: u64 = 1 << 62;

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// A prime field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_MODULUS {
            return param(format!("modulus {p} is not below 2^62"));
        }
        if !is_prime(p) {
            return param(format!("modulus {p} is not prime"));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, x: u64) -> u64 {
        x % self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        self.sub(0, a)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    /// `base^exp`, with `0^0 = 1`.
    pub fn pow(&self, base: u64, mut exp: u64) -> u64 {
        let mut b = self.reduce(base);
        let mut r = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        let a = self.reduce(a);
        if a == 0 {
            return Err(Error::DivisionByZero(self.p));
        }
        Ok(self.pow(a, self.p - 2))
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

/// Row-major matrix of residues.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FieldMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix, reducing every entry into `[0, p)`.
    pub fn from_rows(field: &PrimeField, rows: &[Vec<u64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return param("ragged rows");
        }
        let data = rows.iter().flatten().map(|&x| field.reduce(x)).collect();
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[u64] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn mul(&self, field: &PrimeField, other: &FieldMatrix) -> Result<FieldMatrix> {
        if self.cols != other.rows {
            return param(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        let mut out = FieldMatrix::zeros(self.rows, other.cols);
        let p = field.modulus() as u128;
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: u128 = 0;
                for k in 0..self.cols {
                    acc = (acc + self.get(i, k) as u128 * other.get(k, j) as u128) % p;
                }
                out.set(i, j, acc as u64);
            }
        }
        Ok(out)
    }

    pub fn add(&self, field: &PrimeField, other: &FieldMatrix) -> Result<FieldMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return param("shape mismatch in matrix addition");
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| field.add(a, b))
            .collect();
        Ok(FieldMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, field: &PrimeField, c: u64) -> FieldMatrix {
        let data = self.data.iter().map(|&a| field.mul(a, c)).collect();
        FieldMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Copies rows `r0..r1` and columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> FieldMatrix {
        FieldMatrix::from_fn(r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j))
    }

    /// Submatrix keeping every row and only the given columns.
    pub fn select_columns(&self, cols: &[usize]) -> FieldMatrix {
        FieldMatrix::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]))
    }
}

/// `GV(points, J) = [a_n^j]`, rows indexed by point, columns by ascending `J`.
pub fn generalized_vandermonde(
    field: &PrimeField,
    points: &[u64],
    exponents: &[u64],
) -> Result<FieldMatrix> {
    if points.len() != exponents.len() {
        return param(format!(
            "{} points but {} exponents",
            points.len(),
            exponents.len()
        ));
    }
    Ok(FieldMatrix::from_fn(
        points.len(),
        exponents.len(),
        |i, j| field.pow(points[i], exponents[j]),
    ))
}

/// Determinant by Gaussian elimination with first-nonzero pivoting.
pub fn det(field: &PrimeField, m: &FieldMatrix) -> Result<u64> {
    if m.rows != m.cols {
        return param(format!(
            "determinant of non-square {}x{} matrix",
            m.rows, m.cols
        ));
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut result = 1 % field.modulus();
    for c in 0..n {
        let Some(pivot) = (c..n).find(|&r| a.get(r, c) != 0) else {
            return Ok(0);
        };
        if pivot != c {
            a.swap_rows(pivot, c);
            result = field.neg(result);
        }
        let pv = a.get(c, c);
        result = field.mul(result, pv);
        let pinv = field.inv(pv)?;
        for r in c + 1..n {
            let factor = field.mul(a.get(r, c), pinv);
            if factor == 0 {
                continue;
            }
            for j in c..n {
                let v = field.sub(a.get(r, j), field.mul(factor, a.get(c, j)));
                a.set(r, j, v);
            }
        }
    }
    Ok(result)
}

/// Solves `m x = rhs` for every column of `rhs` in one elimination.
pub fn solve(field: &PrimeField, m: &FieldMatrix, rhs: &FieldMatrix) -> Result<FieldMatrix> {
    if m.rows != m.cols {
        return param("solve needs a square matrix");
    }
    if rhs.rows != m.rows {
        return param(format!("rhs has {} rows, matrix has {}", rhs.rows, m.rows));
    }
    let n = m.rows;
    let w = rhs.cols;
    // augmented [m | rhs]
    let mut a = FieldMatrix::from_fn(n, n + w, |i, j| {
        if j < n {
            m.get(i, j)
        } else {
            rhs.get(i, j - n)
        }
    });
    for c in 0..n {
        let pivot = (c..n).find(|&r| a.get(r, c) != 0).ok_or(Error::Singular)?;
        a.swap_rows(pivot, c);
        let pinv = field.inv(a.get(c, c))?;
        for j in c..n + w {
            let v = field.mul(a.get(c, j), pinv);
            a.set(c, j, v);
        }
        for r in 0..n {
            if r == c {
                continue;
            }
            let factor = a.get(r, c);
            if factor == 0 {
                continue;
            }
            for j in c..n + w {
                let v = field.sub(a.get(r, j), field.mul(factor, a.get(c, j)));
                a.set(r, j, v);
            }
        }
    }
    Ok(a.block(0, n, n, n + w))
}

/// How `is_mds` enumerates maximal minors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MdsMode {
    /// Every `T`-subset of columns, in lexicographic order.
    #[default]
    Full,
    /// `subsets` uniformly random column subsets drawn from a seeded source.
    Sampled { subsets: usize, seed: u64 },
}

/// Calls `f` on every `t`-subset of `0..n` in lexicographic order; stops
/// early when `f` returns `false`. Returns whether every call returned `true`.
pub fn for_each_subset(n: usize, t: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if t > n {
        return true;
    }
    let mut idx: Vec<usize> = (0..t).collect();
    loop {
        if !f(&idx) {
            return false;
        }
        let Some(i) = (0..t).rev().find(|&i| idx[i] < i + n - t) else {
            return true;
        };
        idx[i] += 1;
        for j in i + 1..t {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// True iff every maximal (`T x T`) minor of the `T x N` matrix is nonzero.
pub fn is_mds(field: &PrimeField, m: &FieldMatrix, mode: MdsMode) -> Result<bool> {
    let (t, n) = (m.rows, m.cols);
    if t > n {
        return param(format!("MDS check needs rows <= cols (got {t}x{n})"));
    }
    let nonsingular = |cols: &[usize]| det(field, &m.select_columns(cols)).map(|d| d != 0);
    match mode {
        MdsMode::Full => {
            let mut err = None;
            let ok = for_each_subset(n, t, |cols| match nonsingular(cols) {
                Ok(v) => v,
                Err(e) => {
                    err = Some(e);
                    false
                }
            });
            match err {
                Some(e) => Err(e),
                None => Ok(ok),
            }
        }
        MdsMode::Sampled { subsets, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..subsets {
                let mut cols = sample(&mut rng, n, t).into_vec();
                cols.sort_unstable();
                if !nonsingular(&cols)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}
