//! Dense linear algebra over F₂.
//!
//! Vectors are packed 64 to a word. Matrices are lists of row vectors and
//! row reduction always takes the leftmost available pivot column, choosing
//! the first unused row that has a one there.

use thiserror::Error;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Bits {
    words: Vec<u64>,
    len: usize,
}

impl Bits {
    pub fn zeros(len: usize) -> Self {
        Bits { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn from_bools(b: &[bool]) -> Self {
        let mut v = Self::zeros(b.len());
        for (i, &x) in b.iter().enumerate() {
            if x {
                v.set(i, true);
            }
        }
        v
    }

    /// Parse a string of `0`/`1` characters, index 0 first.
    pub fn from_str01(s: &str) -> Self {
        Self::from_bools(&s.chars().filter(|c| !c.is_whitespace()).map(|c| c == '1').collect::<Vec<_>>())
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        debug_assert!(i < self.len);
        if b {
            self.words[i >> 6] |= 1 << (i & 63);
        } else {
            self.words[i >> 6] &= !(1 << (i & 63));
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i >> 6] ^= 1 << (i & 63);
    }

    #[inline]
    pub fn xor_assign(&mut self, o: &Bits) {
        debug_assert_eq!(self.len, o.len);
        for (a, b) in self.words.iter_mut().zip(&o.words) {
            *a ^= *b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        for (k, w) in self.words.iter().enumerate() {
            if *w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + t)
                }
            })
        })
    }

    pub fn dot(&self, o: &Bits) -> bool {
        self.words.iter().zip(&o.words).fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones()) & 1 == 1
    }

    /// Concatenate `self` followed by `o`.
    pub fn concat(&self, o: &Bits) -> Bits {
        let mut v = Bits::zeros(self.len + o.len);
        for i in self.ones() {
            v.set(i, true);
        }
        for i in o.ones() {
            v.set(self.len + i, true);
        }
        v
    }

    pub fn slice(&self, start: usize, end: usize) -> Bits {
        let mut v = Bits::zeros(end - start);
        for i in self.ones().filter(|&i| i >= start && i < end) {
            v.set(i - start, true);
        }
        v
    }

    pub fn to_string01(&self) -> String {
        (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum F2Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Matrix {
    rows: Vec<Bits>,
    ncols: usize,
}

/// Outcome of a linear solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solve {
    Solution(Bits),
    Inconsistent,
}

impl F2Matrix {
    pub fn new(ncols: usize) -> Self {
        F2Matrix { rows: vec![], ncols }
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        F2Matrix { rows: vec![Bits::zeros(ncols); nrows], ncols }
    }

    pub fn identity(n: usize) -> Self {
        F2Matrix { rows: (0..n).map(|i| Bits::unit(n, i)).collect(), ncols: n }
    }

    pub fn from_rows(rows: Vec<Bits>, ncols: usize) -> Result<Self, F2Error> {
        for r in &rows {
            if r.len() != ncols {
                return Err(F2Error::DimensionMismatch { expected: ncols, got: r.len() });
            }
        }
        Ok(F2Matrix { rows, ncols })
    }

    pub fn push_row(&mut self, r: Bits) {
        assert_eq!(r.len(), self.ncols);
        self.rows.push(r);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Bits] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &Bits {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, b: bool) {
        self.rows[i].set(j, b)
    }

    /// `x · M`, i.e. the sum of the rows selected by `x`.
    pub fn left_mul(&self, x: &Bits) -> Result<Bits, F2Error> {
        if x.len() != self.nrows() {
            return Err(F2Error::DimensionMismatch { expected: self.nrows(), got: x.len() });
        }
        let mut out = Bits::zeros(self.ncols);
        for i in x.ones() {
            out.xor_assign(&self.rows[i]);
        }
        Ok(out)
    }

    /// `M · y` for a column vector `y` of length `ncols`.
    pub fn right_mul(&self, y: &Bits) -> Result<Bits, F2Error> {
        if y.len() != self.ncols {
            return Err(F2Error::DimensionMismatch { expected: self.ncols, got: y.len() });
        }
        Ok(Bits::from_bools(&self.rows.iter().map(|r| r.dot(y)).collect::<Vec<_>>()))
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zeros(self.ncols, self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    /// In-place reduced row echelon form; returns the pivot columns in order.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let mut pivots = vec![];
        let mut next = 0;
        for col in 0..self.ncols {
            let Some(p) = (next..self.rows.len()).find(|&r| self.rows[r].get(col)) else {
                continue;
            };
            self.rows.swap(next, p);
            let prow = self.rows[next].clone();
            for r in 0..self.rows.len() {
                if r != next && self.rows[r].get(col) {
                    self.rows[r].xor_assign(&prow);
                }
            }
            pivots.push(col);
            next += 1;
            if next == self.rows.len() {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().row_reduce().len()
    }

    /// Basis of `{x : x · M = 0}`.
    pub fn left_kernel(&self) -> Vec<Bits> {
        let n = self.nrows();
        let aug: Vec<Bits> = self.rows.iter().enumerate().map(|(i, r)| r.concat(&Bits::unit(n, i))).collect();
        let mut m = F2Matrix { rows: aug, ncols: self.ncols + n };
        let pivots = m.row_reduce();
        let rank = pivots.iter().take_while(|&&c| c < self.ncols).count();
        m.rows[rank..].iter().map(|r| r.slice(self.ncols, self.ncols + n)).collect()
    }
}

/// Solve `x · M = target`: express `target` as a sum of rows of `M`.
///
/// The returned solution is the one produced by the deterministic pivot rule.
pub fn f2_solve(m: &F2Matrix, target: &Bits) -> Result<Solve, F2Error> {
    if target.len() != m.ncols() {
        return Err(F2Error::DimensionMismatch { expected: m.ncols(), got: target.len() });
    }
    let n = m.nrows();
    let mut red = F2Matrix {
        rows: m.rows.iter().enumerate().map(|(i, r)| r.concat(&Bits::unit(n, i))).collect(),
        ncols: m.ncols() + n,
    };
    let pivots = red.row_reduce();
    let mut residual = target.concat(&Bits::zeros(n));
    for (k, &c) in pivots.iter().enumerate() {
        if c >= m.ncols() {
            break;
        }
        if residual.get(c) {
            residual.xor_assign(&red.rows[k]);
        }
    }
    if !residual.slice(0, m.ncols()).is_zero() {
        return Ok(Solve::Inconsistent);
    }
    Ok(Solve::Solution(residual.slice(m.ncols(), m.ncols() + n)))
}

/// Incremental echelon basis used for repeated membership tests and reduction.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    // Row vectors with their pivot, kept fully reduced against each other.
    rows: Vec<(usize, Bits)>,
    pivot_of_col: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: vec![], pivot_of_col: vec![None; ncols] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of_col[col].is_some()
    }

    pub fn reduce(&self, v: &mut Bits) {
        for (p, r) in &self.rows {
            if v.get(*p) {
                v.xor_assign(r);
            }
        }
    }

    /// Reduce `v`; returns `true` when it was independent and has been added.
    pub fn insert(&mut self, mut v: Bits) -> bool {
        assert_eq!(v.len(), self.ncols);
        self.reduce(&mut v);
        let Some(p) = v.first_one() else { return false };
        for (_, r) in self.rows.iter_mut() {
            if r.get(p) {
                r.xor_assign(&v);
            }
        }
        self.pivot_of_col[p] = Some(self.rows.len());
        self.rows.push((p, v));
        true
    }

    pub fn contains(&self, v: &Bits) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }
}
