//! Dense matrices over exact rationals.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimMismatch(usize, usize, usize, usize),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("cannot parse rational {0:?}")]
    BadRational(String),
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Accepts `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational, LinalgError> {
    let bad = || LinalgError::BadRational(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Rational with numerator in `[-9, 9]` and denominator in `[1, 9]`.
pub fn random_rational(rng: &mut impl Rng) -> Rational {
    ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

pub fn random_nonzero_rational(rng: &mut impl Rng) -> Rational {
    loop {
        let r = random_rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn scalar(n: usize, c: Rational) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    pub fn random(rows: usize, cols: usize, rng: &mut impl Rng) -> Self {
        Self {
            rows,
            cols,
            data: (0..rows * cols).map(|_| random_rational(rng)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn entries_mut(&mut self) -> impl Iterator<Item = &mut Rational> {
        self.data.iter_mut()
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn trace(&self) -> Result<Rational, LinalgError> {
        let n = self.require_square()?;
        Ok((0..n).map(|i| self[(i, i)].clone()).sum())
    }

    fn require_square(&self) -> Result<usize, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        Ok(self.rows)
    }

    /// Row echelon form by Gaussian elimination; returns the rank and the
    /// sign/scale factor accumulated by row swaps.
    fn eliminate(&mut self) -> (usize, bool) {
        let mut rank = 0;
        let mut negated = false;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            if pivot != rank {
                for j in 0..self.cols {
                    self.data.swap(pivot * self.cols + j, rank * self.cols + j);
                }
                negated = !negated;
            }
            let p = self[(rank, col)].clone();
            for r in rank + 1..self.rows {
                if self[(r, col)].is_zero() {
                    continue;
                }
                let factor = &self[(r, col)] / &p;
                for j in col..self.cols {
                    let delta = &factor * &self[(rank, j)];
                    self[(r, j)] -= delta;
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        (rank, negated)
    }

    pub fn det(&self) -> Result<Rational, LinalgError> {
        let n = self.require_square()?;
        let mut m = self.clone();
        let (rank, negated) = m.eliminate();
        if rank < n {
            return Ok(Rational::zero());
        }
        let mut d = Rational::one();
        for i in 0..n {
            d *= &m[(i, i)];
        }
        Ok(if negated { -d } else { d })
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate().0
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<Self, LinalgError> {
        let n = self.require_square()?;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[(r, col)].is_zero())
                .ok_or(LinalgError::Singular)?;
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] /= &p;
                inv[(col, j)] /= &p;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone();
                for j in 0..n {
                    let da = &factor * &a[(col, j)];
                    a[(r, j)] -= da;
                    let di = &factor * &inv[(col, j)];
                    inv[(r, j)] -= di;
                }
            }
        }
        Ok(inv)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;

    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Exact Jacobian of a polynomial map of total degree at most `degree` at
/// `point`, one row per output.
///
/// Each partial derivative is read off the interpolating polynomial of
/// `t ↦ f(point + t·e_k)` at `t = 0..=degree`.
pub fn exact_jacobian<F>(f: F, point: &[Rational], degree: usize) -> Matrix
where
    F: Fn(&[Rational]) -> Vec<Rational>,
{
    let weights = derivative_weights(degree);
    let outputs = f(point).len();
    let mut jac = Matrix::zeros(outputs, point.len());
    let mut shifted = point.to_vec();
    for k in 0..point.len() {
        for (t, w) in weights.iter().enumerate() {
            shifted[k] = &point[k] + rat(t as i64);
            for (r, v) in f(&shifted).into_iter().enumerate() {
                jac[(r, k)] += v * w;
            }
        }
        shifted[k] = point[k].clone();
    }
    jac
}

/// `L_t'(0)` for the Lagrange basis on the nodes `0..=d`.
fn derivative_weights(d: usize) -> Vec<Rational> {
    let nodes: Vec<i64> = (0..=d as i64).collect();
    nodes
        .iter()
        .map(|&t| {
            if t == 0 {
                return -(1..=d as i64).map(|m| ratio(1, m)).sum::<Rational>();
            }
            let mut w = ratio(1, t);
            for &m in nodes.iter().filter(|&&m| m != t && m != 0) {
                w *= ratio(-m, t - m);
            }
            w
        })
        .collect()
}
