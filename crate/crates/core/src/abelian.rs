//! Exact integer matrices, Smith normal form and abelian invariants.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::presentation::Presentation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            entries: rows.iter().flatten().map(|&v| BigInt::from(v)).collect(),
        }
    }

    pub fn diagonal(values: &[i64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: impl Into<BigInt>) {
        self.entries[r * self.cols + c] = v.into();
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.entries[idx] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&r| !a.get(r, k).is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * q;
            self.entries[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * q;
            self.entries[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            self.entries[idx] = -std::mem::take(&mut self.entries[idx]);
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// `U`, `D`, `V` with `U * M * V = D`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero-or-zero diagonal of `D`, length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.get(i, i).clone()).collect()
    }
}

/// Least nonzero |entry| in the trailing block, ties broken by row then column.
fn find_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a.get(bi, bj).abs() <= v.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut a = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let steps = m.rows.min(m.cols);
    let mut t = 0;
    while t < steps {
        let Some((pi, pj)) = find_pivot(&a, t) else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        let mut clean = true;
        for i in t + 1..a.rows {
            if a.get(i, t).is_zero() {
                continue;
            }
            let q = -a.get(i, t).div_floor(a.get(t, t));
            a.add_row_multiple(i, t, &q);
            u.add_row_multiple(i, t, &q);
            clean &= a.get(i, t).is_zero();
        }
        for j in t + 1..a.cols {
            if a.get(t, j).is_zero() {
                continue;
            }
            let q = -a.get(t, j).div_floor(a.get(t, t));
            a.add_col_multiple(j, t, &q);
            v.add_col_multiple(j, t, &q);
            clean &= a.get(t, j).is_zero();
        }
        if !clean {
            // a remainder smaller than the pivot survived; re-pivot
            continue;
        }
        let p = a.get(t, t).clone();
        let offender = (t + 1..a.rows)
            .find(|&i| (t + 1..a.cols).any(|j| !a.get(i, j).is_multiple_of(&p)));
        if let Some(i) = offender {
            a.add_row_multiple(t, i, &BigInt::one());
            u.add_row_multiple(t, i, &BigInt::one());
            continue;
        }
        if a.get(t, t).sign() == Sign::Minus {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    SmithForm { u, d: a, v }
}

/// `Z/d_1 + ... + Z/d_t + Z^rank` with `d_i >= 2` and `d_i | d_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianInvariants {
    torsion: Vec<BigUint>,
    free_rank: usize,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants { torsion: Vec::new(), free_rank: 0 }
    }

    pub fn free(rank: usize) -> Self {
        AbelianInvariants { torsion: Vec::new(), free_rank: rank }
    }

    /// Normalizes an arbitrary direct sum of cyclic groups `Z/c_i` (with
    /// `c_i = 0` meaning `Z`) into invariant-factor form.
    pub fn from_cyclic_factors(factors: &[u64]) -> Self {
        let n = factors.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, &c) in factors.iter().enumerate() {
            m.set(i, i, c);
        }
        Self::from_diagonal(&smith_normal_form(&m).diagonal(), n)
    }

    /// Invariants of `Z^cols / rowspace` given the Smith diagonal.
    fn from_diagonal(diag: &[BigInt], cols: usize) -> Self {
        let rank = diag.iter().filter(|d| !d.is_zero()).count();
        let torsion = diag
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .map(|d| d.magnitude().clone())
            .collect();
        AbelianInvariants { torsion, free_rank: cols - rank }
    }

    pub fn torsion(&self) -> &[BigUint] {
        &self.torsion
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion.iter().map(|d| d.to_u64().expect("torsion factor fits in u64")).collect()
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    pub fn is_infinite_cyclic(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 1
    }

    /// Group order, or `None` when the free rank is positive.
    pub fn order(&self) -> Option<BigUint> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = vec!["Z".to_string(); self.free_rank];
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Invariants of the cokernel of the exponent matrix acting on `Z^n`.
pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    let m = p.exponent_matrix();
    let snf = smith_normal_form(&m);
    AbelianInvariants::from_diagonal(&snf.diagonal(), m.cols())
}
