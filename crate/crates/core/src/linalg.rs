//! Exact linear algebra over the rationals.
//!
//! Everything in this crate that looks like a rank, a kernel, or a generic
//! point runs through this module. There is no floating point anywhere:
//! entries are `BigRational` and ranks are decided exactly. The rank routine
//! first tries a cheap certificate (full rank modulo the Mersenne prime
//! 2^61 - 1 proves full rank over Q, since a unit minor mod p is a nonzero
//! integer minor) and falls back to fraction-free Gaussian elimination
//! (Bareiss) on the denominator-cleared integer matrix when the certificate
//! does not apply.

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Zero};
use rand::Rng;

pub type Q = BigRational;
pub type Z = BigInt;

pub fn q_zero() -> Q {
    Q::zero()
}

pub fn q_one() -> Q {
    Q::one()
}

pub fn q_from_i64(v: i64) -> Q {
    Q::from_integer(Z::from(v))
}

/// Parse a rational written as `p` or `p/q`.
pub fn q_parse(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((num, den)) => {
            let num: Z = num.trim().parse().ok()?;
            let den: Z = den.trim().parse().ok()?;
            if den.is_zero() {
                return None;
            }
            Some(Q::new(num, den))
        }
        None => {
            let num: Z = s.parse().ok()?;
            Some(Q::from_integer(num))
        }
    }
}

/// Render a rational as `p` or `p/q` (always reduced; denominator positive).
pub fn q_render(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Dense matrix over the rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct QMat {
    pub nrows: usize,
    pub ncols: usize,
    data: Vec<Q>,
}

impl std::fmt::Debug for QMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "QMat {}x{} [", self.nrows, self.ncols)?;
        for r in 0..self.nrows {
            let row: Vec<String> = (0..self.ncols).map(|c| q_render(self.get(r, c))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl QMat {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        QMat {
            nrows,
            ncols,
            data: vec![Q::zero(); nrows * ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_fn(nrows: usize, ncols: usize, mut f: impl FnMut(usize, usize) -> Q) -> Self {
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in 0..nrows {
            for c in 0..ncols {
                data.push(f(r, c));
            }
        }
        QMat { nrows, ncols, data }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        QMat::from_fn(nrows, ncols, |r, c| q_from_i64(rows[r][c]))
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.ncols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        self.data[r * self.ncols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> QMat {
        QMat::from_fn(self.ncols, self.nrows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.ncols, other.nrows, "shape mismatch in mul");
        let mut out = QMat::zeros(self.nrows, other.ncols);
        for r in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.ncols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(r, c).clone();
                    out.set(r, c, cur + a * b);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &QMat) -> QMat {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        QMat::from_fn(self.nrows, self.ncols, |r, c| {
            self.get(r, c) + other.get(r, c)
        })
    }

    pub fn sub(&self, other: &QMat) -> QMat {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        QMat::from_fn(self.nrows, self.ncols, |r, c| {
            self.get(r, c) - other.get(r, c)
        })
    }

    pub fn neg(&self) -> QMat {
        QMat::from_fn(self.nrows, self.ncols, |r, c| -self.get(r, c).clone())
    }

    pub fn scale(&self, s: &Q) -> QMat {
        QMat::from_fn(self.nrows, self.ncols, |r, c| self.get(r, c) * s)
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &QMat) -> QMat {
        assert_eq!(self.nrows, other.nrows);
        QMat::from_fn(self.nrows, self.ncols + other.ncols, |r, c| {
            if c < self.ncols {
                self.get(r, c).clone()
            } else {
                other.get(r, c - self.ncols).clone()
            }
        })
    }

    /// Vertical concatenation [self; other].
    pub fn vstack(&self, other: &QMat) -> QMat {
        assert_eq!(self.ncols, other.ncols);
        QMat::from_fn(self.nrows + other.nrows, self.ncols, |r, c| {
            if r < self.nrows {
                self.get(r, c).clone()
            } else {
                other.get(r - self.nrows, c).clone()
            }
        })
    }

    pub fn block_diag(&self, other: &QMat) -> QMat {
        QMat::from_fn(
            self.nrows + other.nrows,
            self.ncols + other.ncols,
            |r, c| {
                if r < self.nrows && c < self.ncols {
                    self.get(r, c).clone()
                } else if r >= self.nrows && c >= self.ncols {
                    other.get(r - self.nrows, c - self.ncols).clone()
                } else {
                    Q::zero()
                }
            },
        )
    }

    pub fn column(&self, c: usize) -> Vec<Q> {
        (0..self.nrows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn select_columns(&self, cols: &[usize]) -> QMat {
        QMat::from_fn(self.nrows, cols.len(), |r, c| self.get(r, cols[c]).clone())
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        // Discard identically-zero rows and columns first; they often let the
        // modular certificate apply (full rank of the pruned matrix).
        let live_rows: Vec<usize> = (0..self.nrows)
            .filter(|&r| (0..self.ncols).any(|c| !self.get(r, c).is_zero()))
            .collect();
        let live_cols: Vec<usize> = (0..self.ncols)
            .filter(|&c| live_rows.iter().any(|&r| !self.get(r, c).is_zero()))
            .collect();
        if live_rows.is_empty() || live_cols.is_empty() {
            return 0;
        }
        let pruned = QMat::from_fn(live_rows.len(), live_cols.len(), |r, c| {
            self.get(live_rows[r], live_cols[c]).clone()
        });
        let bound = pruned.nrows.min(pruned.ncols);
        if let Some(rp) = pruned.rank_mod_p() {
            if rp == bound {
                return rp;
            }
        }
        pruned.rank_bareiss()
    }

    /// Rank over F_p for p = 2^61 - 1. `None` if some denominator is
    /// divisible by p (then the reduction is meaningless).
    fn rank_mod_p(&self) -> Option<usize> {
        const P: u64 = (1u64 << 61) - 1;
        fn red(z: &Z) -> u64 {
            use num::integer::Integer;
            use num::ToPrimitive;
            z.mod_floor(&Z::from(P)).to_u64().unwrap()
        }
        fn mulmod(a: u64, b: u64) -> u64 {
            ((a as u128 * b as u128) % P as u128) as u64
        }
        fn powmod(mut b: u64, mut e: u64) -> u64 {
            let mut acc = 1u64;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulmod(acc, b);
                }
                b = mulmod(b, b);
                e >>= 1;
            }
            acc
        }
        let mut m = vec![0u64; self.nrows * self.ncols];
        for r in 0..self.nrows {
            for c in 0..self.ncols {
                let q = self.get(r, c);
                let d = red(q.denom());
                if d == 0 {
                    return None;
                }
                let n = red(q.numer());
                m[r * self.ncols + c] = mulmod(n, powmod(d, P - 2));
            }
        }
        let (nr, nc) = (self.nrows, self.ncols);
        let mut rank = 0;
        let mut row = 0;
        for col in 0..nc {
            if row == nr {
                break;
            }
            let Some(p) = (row..nr).find(|&r| m[r * nc + col] != 0) else {
                continue;
            };
            if p != row {
                for c in 0..nc {
                    m.swap(row * nc + c, p * nc + c);
                }
            }
            let inv = powmod(m[row * nc + col], P - 2);
            for r in row + 1..nr {
                let f = m[r * nc + col];
                if f == 0 {
                    continue;
                }
                let f = mulmod(f, inv);
                for c in col..nc {
                    let sub = mulmod(f, m[row * nc + c]);
                    let cur = m[r * nc + c];
                    m[r * nc + c] = if cur >= sub { cur - sub } else { cur + P - sub };
                }
            }
            row += 1;
            rank += 1;
        }
        Some(rank)
    }

    /// Fraction-free elimination on the denominator-cleared integer matrix.
    fn rank_bareiss(&self) -> usize {
        let (nr, nc) = (self.nrows, self.ncols);
        // Clear denominators row by row; scaling a row by a nonzero integer
        // preserves rank.
        let mut m: Vec<Vec<Z>> = (0..nr)
            .map(|r| {
                let mut lcm = Z::one();
                for c in 0..nc {
                    let d = self.get(r, c).denom();
                    lcm = num::integer::lcm(lcm, d.clone());
                }
                (0..nc)
                    .map(|c| {
                        let q = self.get(r, c);
                        q.numer() * (&lcm / q.denom())
                    })
                    .collect()
            })
            .collect();
        let mut prev = Z::one();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..nc {
            if row == nr {
                break;
            }
            let Some(p) = (row..nr).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(row, p);
            for r in row + 1..nr {
                for c in col + 1..nc {
                    let t = &m[row][col] * &m[r][c] - &m[r][col] * &m[row][c];
                    m[r][c] = &t / &prev;
                }
                m[r][col] = Z::zero();
            }
            prev = m[row][col].clone();
            row += 1;
            rank += 1;
        }
        rank
    }

    /// Reduced row echelon form. Returns (rref, pivot column indices).
    pub fn rref(&self) -> (QMat, Vec<usize>) {
        let mut m = self.clone();
        let (nr, nc) = (m.nrows, m.ncols);
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..nc {
            if row == nr {
                break;
            }
            let Some(p) = (row..nr).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..nc {
                    let a = m.get(row, c).clone();
                    let b = m.get(p, c).clone();
                    m.set(row, c, b);
                    m.set(p, c, a);
                }
            }
            let inv = m.get(row, col).clone();
            for c in col..nc {
                let v = m.get(row, c) / &inv;
                m.set(row, c, v);
            }
            for r in 0..nr {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col).clone();
                for c in col..nc {
                    let v = m.get(r, c) - &f * m.get(row, c);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// Basis of the right null space, as matrix columns. Canonical: derived
    /// from the RREF with free variables in increasing column order.
    pub fn nullspace(&self) -> QMat {
        let (rr, pivots) = self.rref();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = QMat::zeros(self.ncols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis.set(fc, k, Q::one());
            for (prow, &pc) in pivots.iter().enumerate() {
                basis.set(pc, k, -rr.get(prow, fc).clone());
            }
        }
        basis
    }

    /// Canonical basis of the column space, as matrix columns (the nonzero
    /// rows of the RREF of the transpose, transposed back).
    pub fn col_space(&self) -> QMat {
        let (rr, pivots) = self.transpose().rref();
        QMat::from_fn(self.nrows, pivots.len(), |r, c| rr.get(c, r).clone())
    }

    /// Solve B * Y = M for Y, requiring B to have full column rank.
    /// Returns None when the system is inconsistent.
    pub fn solve_exact(b: &QMat, m: &QMat) -> Option<QMat> {
        assert_eq!(b.nrows, m.nrows);
        let (rr, pivots) = b.hstack(m).rref();
        if pivots.len() != b.ncols || pivots.iter().any(|&p| p >= b.ncols) {
            return None;
        }
        // Rows past the pivot count must be zero on the right block.
        for r in pivots.len()..rr.nrows {
            for c in b.ncols..rr.ncols {
                if !rr.get(r, c).is_zero() {
                    return None;
                }
            }
        }
        Some(QMat::from_fn(b.ncols, m.ncols, |r, c| {
            rr.get(r, b.ncols + c).clone()
        }))
    }

    /// Inverse of a square matrix; None if singular.
    pub fn inverse(&self) -> Option<QMat> {
        assert_eq!(self.nrows, self.ncols);
        QMat::solve_exact(self, &QMat::identity(self.nrows))
    }

    /// Basis (columns) of col(self) ∩ col(other).
    pub fn intersect_col_spaces(&self, other: &QMat) -> QMat {
        assert_eq!(self.nrows, other.nrows);
        if self.ncols == 0 || other.ncols == 0 {
            return QMat::zeros(self.nrows, 0);
        }
        let ns = self.hstack(&other.neg()).nullspace();
        let coeffs = QMat::from_fn(self.ncols, ns.ncols, |r, c| ns.get(r, c).clone());
        self.mul(&coeffs).col_space()
    }

    /// Basis (columns) of { v : self * v ∈ col(sub) }.
    pub fn preimage(&self, sub: &QMat) -> QMat {
        assert_eq!(self.nrows, sub.nrows);
        let ns = self.hstack(&sub.neg()).nullspace();
        QMat::from_fn(self.ncols, ns.ncols, |r, c| ns.get(r, c).clone()).col_space()
    }
}

/// Random integer matrix with entries uniform in [-bound, bound].
pub fn random_int_matrix(rng: &mut impl Rng, nrows: usize, ncols: usize, bound: i64) -> QMat {
    QMat::from_fn(nrows, ncols, |_, _| {
        q_from_i64(rng.random_range(-bound..=bound))
    })
}

/// Random invertible matrix over Q with small integer entries.
pub fn random_invertible(rng: &mut impl Rng, n: usize, bound: i64) -> QMat {
    if n == 0 {
        return QMat::zeros(0, 0);
    }
    loop {
        let m = random_int_matrix(rng, n, n, bound);
        if m.rank() == n {
            return m;
        }
    }
}

pub fn big_to_sign(z: &Z) -> i32 {
    match z.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}
