//! Exact dense linear algebra over a field.
//!
//! Row reduction pivots on the first nonzero entry in column order, so bases
//! come out in a fixed order regardless of platform.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::GaussianRational;

pub trait Field: Clone + PartialEq + Zero + One {
    fn fadd(&self, o: &Self) -> Self;
    fn fsub(&self, o: &Self) -> Self;
    fn fmul(&self, o: &Self) -> Self;
    fn finv(&self) -> Self;
    fn fneg(&self) -> Self;
}

impl Field for BigRational {
    fn fadd(&self, o: &Self) -> Self {
        self + o
    }
    fn fsub(&self, o: &Self) -> Self {
        self - o
    }
    fn fmul(&self, o: &Self) -> Self {
        self * o
    }
    fn finv(&self) -> Self {
        self.recip()
    }
    fn fneg(&self) -> Self {
        -self
    }
}

impl Field for GaussianRational {
    fn fadd(&self, o: &Self) -> Self {
        self + o
    }
    fn fsub(&self, o: &Self) -> Self {
        self - o
    }
    fn fmul(&self, o: &Self) -> Self {
        self * o
    }
    fn finv(&self) -> Self {
        GaussianRational::inv(self).expect("pivot is nonzero")
    }
    fn fneg(&self) -> Self {
        -self
    }
}

/// Reduce `rows` (each of length `ncols`) to reduced row echelon form in place
/// and return the pivot columns. Zero rows are dropped.
pub fn rref<F: Field>(rows: &mut Vec<Vec<F>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].finv();
        for x in rows[r].iter_mut() {
            *x = x.fmul(&inv);
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = x.fsub(&f.fmul(y));
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank<F: Field>(rows: &[Vec<F>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Basis of `{x : M x = 0}`, one vector per free column in ascending order,
/// with that free coordinate set to 1.
pub fn nullspace<F: Field>(rows: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero(); ncols];
        v[free] = F::one();
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = row[free].fneg();
        }
        out.push(v);
    }
    out
}

/// Solve `Σ x_j · cols[j] = b`. Returns `None` if `b` is outside the column span.
/// When the columns are dependent the free coordinates are set to zero.
pub fn solve<F: Field>(cols: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let n = cols.len();
    let mut rows: Vec<Vec<F>> = (0..b.len())
        .map(|i| {
            let mut row: Vec<F> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut rows, n + 1);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![F::zero(); n];
    for (row, &pc) in rows.iter().zip(&pivots) {
        x[pc] = row[n].clone();
    }
    Some(x)
}

/// Split Gaussian-rational coordinates into real coordinates `(re…, im…)`.
pub fn realify(v: &[GaussianRational]) -> Vec<BigRational> {
    v.iter().map(|c| c.re.clone()).chain(v.iter().map(|c| c.im.clone())).collect()
}
