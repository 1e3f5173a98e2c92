//! Exact integer and rational linear algebra.
//!
//! Everything here works over arbitrary precision integers or rationals;
//! there is no floating point fallback.

use crate::{Error, Int, Rat, Result};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = Int::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Int>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Int::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Int {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Int) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Int] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j) + a * other.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows)
            .all(|i| (0..self.cols).all(|j| i == j || self.at(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.rows.min(self.cols))
            .map(|i| self.at(i, i).clone())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[a] += q * row[b]
    fn add_row_multiple(&mut self, a: usize, b: usize, q: &Int) {
        for c in 0..self.cols {
            let v = self.at(a, c) + q * self.at(b, c);
            self.set(a, c, v);
        }
    }

    /// col[a] += q * col[b]
    fn add_col_multiple(&mut self, a: usize, b: usize, q: &Int) {
        for r in 0..self.rows {
            let v = self.at(r, a) + q * self.at(r, b);
            self.set(r, a, v);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.at(r, c).clone();
            self.set(r, c, v);
        }
    }

    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let rows: Vec<Vec<Rat>> = self
            .row_vecs()
            .into_iter()
            .map(|r| r.into_iter().map(Rat::from_integer).collect())
            .collect();
        let d = det_rat(&rows);
        assert!(d.is_integer());
        d.to_integer()
    }

    /// Inverse of a matrix with determinant ±1. Entries stay integral.
    pub fn unimodular_inverse(&self) -> IntMatrix {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let a: Vec<Vec<Rat>> = self
            .row_vecs()
            .into_iter()
            .map(|r| r.into_iter().map(Rat::from_integer).collect())
            .collect();
        let inv = invert_rat(&a).expect("matrix is unimodular, hence invertible");
        let mut out = IntMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                assert!(inv[i][j].is_integer(), "inverse not integral");
                out.set(i, j, inv[i][j].to_integer());
            }
        }
        out
    }
}

/// Smith normal form decomposition D = U * A * V with U, V unimodular and D
/// diagonal with a divisibility chain.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries of D (nonnegative, each dividing the next).
    pub fn diagonal(&self) -> Vec<Int> {
        self.d.diagonal()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let rows = a.rows();
    let cols = a.cols();
    let mut m = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let mut t = 0;
    'outer: while t < rows.min(cols) {
        // pick a nonzero pivot of minimal absolute value in the submatrix
        let mut pivot: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                if !m.at(r, c).is_zero()
                    && pivot.is_none_or(|(pr, pc)| m.at(r, c).abs() < m.at(pr, pc).abs())
                {
                    pivot = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = pivot else {
            break 'outer;
        };
        m.swap_rows(t, pr);
        u.swap_rows(t, pr);
        m.swap_cols(t, pc);
        v.swap_cols(t, pc);

        loop {
            let mut clean = true;
            for r in t + 1..rows {
                if !m.at(r, t).is_zero() {
                    let q = -m.at(r, t).div_floor(m.at(t, t));
                    m.add_row_multiple(r, t, &q);
                    u.add_row_multiple(r, t, &q);
                    if !m.at(r, t).is_zero() {
                        // remainder became the smaller pivot
                        m.swap_rows(t, r);
                        u.swap_rows(t, r);
                        clean = false;
                    }
                }
            }
            for c in t + 1..cols {
                if !m.at(t, c).is_zero() {
                    let q = -m.at(t, c).div_floor(m.at(t, t));
                    m.add_col_multiple(c, t, &q);
                    v.add_col_multiple(c, t, &q);
                    if !m.at(t, c).is_zero() {
                        m.swap_cols(t, c);
                        v.swap_cols(t, c);
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // pivot must divide the remaining submatrix for the chain
            let mut offender = None;
            'scan: for r in t + 1..rows {
                for c in t + 1..cols {
                    if !m.at(r, c).mod_floor(m.at(t, t)).is_zero() {
                        offender = Some(r);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(r) => {
                    let one = Int::one();
                    m.add_row_multiple(t, r, &one);
                    u.add_row_multiple(t, r, &one);
                }
                None => break,
            }
        }
        t += 1;
    }

    for i in 0..rows.min(cols) {
        if m.at(i, i).is_negative() {
            m.negate_row(i);
            u.negate_row(i);
        }
    }

    SmithDecomposition { u, d: m, v }
}

/// Divide a nonzero integer vector by the gcd of its entries.
pub fn primitive_part(v: &[Int]) -> Result<Vec<Int>> {
    let mut g = Int::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

// ---------------------------------------------------------------------------
// Rational elimination helpers
// ---------------------------------------------------------------------------

pub fn rat_rank(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for r in rank + 1..m.len() {
            if !m[r][col].is_zero() {
                let f = &m[r][col] / &pivot;
                for c in col..ncols {
                    let v = &m[r][c] - &f * &m[rank][c];
                    m[r][c] = v;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

pub fn int_rank(rows: &[Vec<Int>]) -> usize {
    rat_rank(&to_rat_rows(rows))
}

pub fn to_rat_rows(rows: &[Vec<Int>]) -> Vec<Vec<Rat>> {
    rows.iter()
        .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect()
}

pub fn det_rat(rows: &[Vec<Rat>]) -> Rat {
    let n = rows.len();
    assert!(rows.iter().all(|r| r.len() == n));
    let mut m = rows.to_vec();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rat::zero();
        };
        if p != col {
            m.swap(col, p);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if !m[r][col].is_zero() {
                let f = &m[r][col] / &pivot;
                for c in col..n {
                    let v = &m[r][c] - &f * &m[col][c];
                    m[r][c] = v;
                }
            }
        }
    }
    det
}

/// Solve A x = b for square rational A. None if A is singular.
pub fn solve_square_rat(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    assert!(a.iter().all(|r| r.len() == n) && b.len() == n);
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        let pivot = m[col][col].clone();
        for c in col..=n {
            let v = &m[col][c] / &pivot;
            m[col][c] = v;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let v = &m[r][c] - &f * &m[col][c];
                    m[r][c] = v;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

pub fn invert_rat(a: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[j] = Rat::one();
        cols.push(solve_square_rat(a, &e)?);
    }
    // transpose column solutions into the inverse
    let mut inv = vec![vec![Rat::zero(); n]; n];
    for (j, col) in cols.iter().enumerate() {
        for i in 0..n {
            inv[i][j] = col[i].clone();
        }
    }
    Some(inv)
}

/// Basis of the rational kernel of the given integer row matrix, with each
/// basis vector scaled to a primitive integer vector.
pub fn kernel_basis_int(rows: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut m = to_rat_rows(rows);
    let nrows = m.len();
    // reduced row echelon form, tracking pivot columns
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for c in col..ncols {
            let v = &m[rank][c] / &pivot;
            m[rank][c] = v;
        }
        for r in 0..nrows {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..ncols {
                    let v = &m[r][c] - &f * &m[rank][c];
                    m[r][c] = v;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut v = vec![Rat::zero(); ncols];
        v[f] = Rat::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[r][f].clone();
        }
        basis.push(clear_denominators(&v));
    }
    basis
}

/// Scale a rational vector to a primitive integer vector (same direction).
pub fn clear_denominators(v: &[Rat]) -> Vec<Int> {
    let mut lcm = Int::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<Int> = v.iter().map(|x| (x * Rat::from_integer(lcm.clone())).to_integer()).collect();
    primitive_part(&ints).unwrap_or(ints)
}
