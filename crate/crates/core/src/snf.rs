//! Smith normal form over the integers with unimodular transforms.
//!
//! Entries are unbounded: transform matrices of even small inputs outgrow
//! machine words. The first phase diagonalizes by Euclid steps on the
//! pivot column and row, taking as each new pivot the entry of smallest
//! nonzero absolute value in the remaining block (ties by row-major
//! position). The second phase repairs the divisibility chain pairwise with
//! the 2×2 transform `diag(a, b) ↦ diag(gcd, lcm)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows_with_cols(rows, rows.first().map_or(0, Vec::len))
    }

    /// Like [`IntegerMatrix::from_rows`], but a matrix with no rows still
    /// gets a width.
    pub fn from_rows_with_cols(rows: &[Vec<i64>], cols: usize) -> Result<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidInvariant("ragged matrix rows".into()));
        }
        let data = rows.iter().flatten().map(|&x| BigInt::from(x)).collect();
        Ok(IntegerMatrix { rows: rows.len(), cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Entry as `i64`, or `Overflow`.
    pub fn get_i64(&self, i: usize, j: usize) -> Result<i64> {
        self[(i, j)].to_i64().ok_or(Error::Overflow)
    }

    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    pub fn mul(&self, rhs: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntegerMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        negate = !negate;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        let det = if n == 0 { BigInt::one() } else { a[n - 1][n - 1].clone() };
        if negate {
            -det
        } else {
            det
        }
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = std::mem::take(&mut self[(i, j)]);
            self[(i, j)] = -x;
        }
    }

    /// Rows `(p, q)` become `(α·p + β·q, γ·p + δ·q)`.
    fn combine_rows(&mut self, p: usize, q: usize, [al, be, ga, de]: &[BigInt; 4]) {
        for j in 0..self.cols {
            let (x, y) = (&self[(p, j)], &self[(q, j)]);
            let np = al * x + be * y;
            let nq = ga * x + de * y;
            self[(p, j)] = np;
            self[(q, j)] = nq;
        }
    }

    /// Columns `(p, q)` become `(α·p + β·q, γ·p + δ·q)`.
    fn combine_cols(&mut self, p: usize, q: usize, [al, be, ga, de]: &[BigInt; 4]) {
        for i in 0..self.rows {
            let (x, y) = (&self[(i, p)], &self[(i, q)]);
            let np = al * x + be * y;
            let nq = ga * x + de * y;
            self[(i, p)] = np;
            self[(i, q)] = nq;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(BigInt::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `S = U·M·V` with `U`, `V` unimodular and `S` diagonal,
/// `s_1 | s_2 | … | s_r`, all `s_k ≥ 0`. `V⁻¹` is kept alongside `V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithNormalForm {
    pub s: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    pub v_inv: IntegerMatrix,
}

impl SmithNormalForm {
    /// Nonzero diagonal entries, units included.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.s.diagonal().into_iter().filter(|d| !d.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

/// Quotient rounded to nearest, so the remainder has |r| ≤ |p|/2.
fn nearest_quotient(a: &BigInt, p: &BigInt) -> BigInt {
    // floored remainder shares the sign of p, so r - p is the other candidate
    let (q, r) = a.div_mod_floor(p);
    if r.abs() * 2u32 > p.abs() {
        q + 1
    } else {
        q
    }
}

struct Reducer {
    s: IntegerMatrix,
    u: IntegerMatrix,
    v: IntegerMatrix,
    v_inv: IntegerMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.s.swap_rows(a, b);
        self.u.swap_rows(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.s.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    fn row_step(&mut self, p: usize, q: usize, coeffs: [BigInt; 4]) {
        self.s.combine_rows(p, q, &coeffs);
        self.u.combine_rows(p, q, &coeffs);
    }

    fn col_step(&mut self, p: usize, q: usize, coeffs: [BigInt; 4]) {
        self.s.combine_cols(p, q, &coeffs);
        self.v.combine_cols(p, q, &coeffs);
        // V ↦ V·E with E = [[α, γ], [β, δ]] on (p, q); det E = 1, so
        // E⁻¹ = [[δ, -γ], [-β, α]] acts on the rows of V⁻¹
        let [al, be, ga, de] = coeffs;
        self.v_inv.combine_rows(p, q, &[de, -ga, -be, al]);
    }

    /// Smallest nonzero |entry| in the block starting at (t, t), row-major ties.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for i in t..self.s.rows {
            for j in t..self.s.cols {
                let a = self.s[(i, j)].abs();
                if !a.is_zero() && best.as_ref().is_none_or(|(b, _, _)| a < *b) {
                    best = Some((a, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    /// Euclid on column `t` until only the pivot is nonzero.
    fn clear_column(&mut self, t: usize) {
        loop {
            let best = (t..self.s.rows)
                .filter(|&i| !self.s[(i, t)].is_zero())
                .min_by_key(|&i| (self.s[(i, t)].abs(), i));
            let Some(best) = best else { return };
            self.swap_rows(t, best);
            let p = self.s[(t, t)].clone();
            let mut done = true;
            for i in t + 1..self.s.rows {
                let q = nearest_quotient(&self.s[(i, t)], &p);
                if !q.is_zero() {
                    self.row_step(t, i, [int(1), int(0), -q, int(1)]);
                }
                done &= self.s[(i, t)].is_zero();
            }
            if done {
                return;
            }
        }
    }

    fn clear_row(&mut self, t: usize) {
        loop {
            let best = (t..self.s.cols)
                .filter(|&j| !self.s[(t, j)].is_zero())
                .min_by_key(|&j| (self.s[(t, j)].abs(), j));
            let Some(best) = best else { return };
            self.swap_cols(t, best);
            let p = self.s[(t, t)].clone();
            let mut done = true;
            for j in t + 1..self.s.cols {
                let q = nearest_quotient(&self.s[(t, j)], &p);
                if !q.is_zero() {
                    self.col_step(t, j, [int(1), int(0), -q, int(1)]);
                }
                done &= self.s[(t, j)].is_zero();
            }
            if done {
                return;
            }
        }
    }

    /// Turns `diag(a, b)` at positions `i < j` into `diag(gcd, lcm)`.
    fn gcd_lcm_step(&mut self, i: usize, j: usize) {
        let (a, b) = (self.s[(i, i)].clone(), self.s[(j, j)].clone());
        let e = a.extended_gcd(&b);
        let (g, x, y) = (e.gcd, e.x, e.y);
        let (ag, bg) = (&a / &g, &b / &g);
        self.row_step(i, j, [x.clone(), y.clone(), -bg.clone(), ag.clone()]);
        self.col_step(i, j, [int(1), int(1), -(y * bg), x * ag]);
    }

    fn run(&mut self) {
        let (rows, cols) = (self.s.rows, self.s.cols);
        let mut rank = 0;
        for t in 0..rows.min(cols) {
            let Some((pi, pj)) = self.pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            while (t + 1..rows).any(|i| !self.s[(i, t)].is_zero())
                || (t + 1..cols).any(|j| !self.s[(t, j)].is_zero())
            {
                self.clear_column(t);
                self.clear_row(t);
            }
            if self.s[(t, t)].is_negative() {
                self.s.negate_row(t);
                self.u.negate_row(t);
            }
            rank = t + 1;
        }
        for i in 0..rank {
            for j in i + 1..rank {
                if !(&self.s[(j, j)] % &self.s[(i, i)]).is_zero() {
                    self.gcd_lcm_step(i, j);
                }
            }
        }
    }
}

/// Smith normal form with transforms. Deterministic for a fixed input.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithNormalForm {
    let mut r = Reducer {
        s: m.clone(),
        u: IntegerMatrix::identity(m.rows),
        v: IntegerMatrix::identity(m.cols),
        v_inv: IntegerMatrix::identity(m.cols),
    };
    r.run();
    let Reducer { s, u, v, v_inv } = r;
    SmithNormalForm { s, u, v, v_inv }
}
