//! Bipartite quivers `Q_{p,q}`, dimension vectors and Euler forms.
//!
//! A bipartite quiver has `p` left vertices, `q` right vertices and exactly one
//! arrow from every left vertex to every right vertex. Dimension vectors are
//! written `a1,...,ap;b1,...,bq`. The stability weight is fixed to
//! `(-1,...,-1; 1,...,1)`.
//!
//! All arithmetic here is on machine integers: entries are `u32` and every
//! bilinear quantity is accumulated in [`Int`] (`i128`), which cannot overflow
//! for any vector that fits in memory.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Signed integer used for pairings and Euler forms.
pub type Int = i128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("shape mismatch: ({0},{1}) vs ({2},{3})")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("length mismatch: quiver has {expected} vertices, vector has {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("arrow matrix must be square and non-empty")]
    BadArrowMatrix,
    #[error("cannot parse dimension vector {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// Shape of `Q_{p,q}`: `p` left vertices, `q` right vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BipartiteShape {
    pub p: usize,
    pub q: usize,
}

impl BipartiteShape {
    pub fn new(p: usize, q: usize) -> Option<Self> {
        (p >= 1 && q >= 1).then_some(Self { p, q })
    }

    /// The quiver as a general arrow-multiplicity matrix, left vertices first.
    pub fn as_general(&self) -> GeneralQuiver {
        let k = self.p + self.q;
        let mut arrows = vec![vec![0u32; k]; k];
        for row in arrows.iter_mut().take(self.p) {
            for entry in row.iter_mut().skip(self.p) {
                *entry = 1;
            }
        }
        GeneralQuiver { arrows }
    }
}

/// A dimension vector `(a_1..a_p; b_1..b_q)`.
///
/// Ordering is lexicographic on `left`, then on `right`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DimVector {
    pub left: Vec<u32>,
    pub right: Vec<u32>,
}

impl DimVector {
    pub fn new(left: Vec<u32>, right: Vec<u32>) -> Self {
        Self { left, right }
    }

    pub fn zero(shape: BipartiteShape) -> Self {
        Self::new(vec![0; shape.p], vec![0; shape.q])
    }

    pub fn zero_like(other: &DimVector) -> Self {
        Self::new(vec![0; other.p()], vec![0; other.q()])
    }

    /// `ε_ij`: one at left vertex `i` and right vertex `j` (zero-based).
    pub fn epsilon(shape: BipartiteShape, i: usize, j: usize) -> Self {
        let mut e = Self::zero(shape);
        e.left[i] = 1;
        e.right[j] = 1;
        e
    }

    pub fn p(&self) -> usize {
        self.left.len()
    }

    pub fn q(&self) -> usize {
        self.right.len()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.p(), self.q())
    }

    pub fn left_sum(&self) -> Int {
        self.left.iter().map(|&a| a as Int).sum()
    }

    pub fn right_sum(&self) -> Int {
        self.right.iter().map(|&b| b as Int).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.left.iter().chain(&self.right).all(|&x| x == 0)
    }

    /// All entries, left then right.
    pub fn entries(&self) -> impl Iterator<Item = u32> + '_ {
        self.left.iter().chain(&self.right).copied()
    }

    /// Standard dot product of the two entry lists.
    pub fn dot(&self, other: &Self) -> Result<Int, QuiverError> {
        self.check_shape(other)?;
        Ok(self
            .entries()
            .zip(other.entries())
            .map(|(x, y)| x as Int * y as Int)
            .sum())
    }

    pub fn check_shape(&self, other: &Self) -> Result<(), QuiverError> {
        if self.shape() != other.shape() {
            return Err(QuiverError::ShapeMismatch(
                self.p(),
                self.q(),
                other.p(),
                other.q(),
            ));
        }
        Ok(())
    }

    /// Componentwise `self <= other`.
    pub fn fits_in(&self, other: &Self) -> bool {
        self.shape() == other.shape() && self.entries().zip(other.entries()).all(|(x, y)| x <= y)
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        if !other.fits_in(self) {
            return None;
        }
        let sub = |a: &[u32], b: &[u32]| a.iter().zip(b).map(|(x, y)| x - y).collect();
        Some(Self::new(
            sub(&self.left, &other.left),
            sub(&self.right, &other.right),
        ))
    }

    pub fn add(&self, other: &Self) -> Result<Self, QuiverError> {
        self.check_shape(other)?;
        let add = |a: &[u32], b: &[u32]| a.iter().zip(b).map(|(x, y)| x + y).collect();
        Ok(Self::new(
            add(&self.left, &other.left),
            add(&self.right, &other.right),
        ))
    }

    pub fn scale(&self, m: u32) -> Self {
        Self::new(
            self.left.iter().map(|x| x * m).collect(),
            self.right.iter().map(|x| x * m).collect(),
        )
    }

    /// The vector with its sides exchanged (the dual setting).
    pub fn swapped(&self) -> Self {
        Self::new(self.right.clone(), self.left.clone())
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "{};{}", join(&self.left), join(&self.right))
    }
}

impl FromStr for DimVector {
    type Err = QuiverError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| QuiverError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let trimmed = s.trim();
        let mut sides = trimmed.split(';');
        let (Some(l), Some(r), None) = (sides.next(), sides.next(), sides.next()) else {
            return Err(err("expected exactly one ';'"));
        };
        let parse_side = |side: &str| -> Result<Vec<u32>, QuiverError> {
            if side.trim().is_empty() {
                return Err(err("empty side"));
            }
            side.split(',')
                .map(|tok| {
                    let tok = tok.trim();
                    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
                        return Err(err(&format!("invalid entry {tok:?}")));
                    }
                    tok.parse::<u32>()
                        .map_err(|_| err(&format!("entry {tok:?} out of range")))
                })
                .collect()
        };
        Ok(Self::new(parse_side(l)?, parse_side(r)?))
    }
}

/// `θ·α = Σ b_j − Σ a_i`.
pub fn theta_pairing(alpha: &DimVector) -> Int {
    alpha.right_sum() - alpha.left_sum()
}

/// `(Σ a_i, Σ b_j)`.
pub fn total(alpha: &DimVector) -> (Int, Int) {
    (alpha.left_sum(), alpha.right_sum())
}

/// Euler form of `Q_{p,q}`: `χ(α₁,α₂) = α₁·α₂ − n₁n₂` where `n₁` is the left
/// sum of `α₁` and `n₂` the right sum of `α₂`.
///
/// This is exactly `α₁ᵀ E α₂` for the block Euler matrix `E`; on θ-null
/// arguments every choice of left/right sums agrees.
pub fn euler_form(a1: &DimVector, a2: &DimVector) -> Result<Int, QuiverError> {
    Ok(a1.dot(a2)? - a1.left_sum() * a2.right_sum())
}

/// A finite quiver given by its arrow-multiplicity matrix; `arrows[i][j]` is the
/// number of arrows `i → j`, loops on the diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneralQuiver {
    pub arrows: Vec<Vec<u32>>,
}

impl GeneralQuiver {
    pub fn new(arrows: Vec<Vec<u32>>) -> Result<Self, QuiverError> {
        let k = arrows.len();
        if k == 0 || arrows.iter().any(|row| row.len() != k) {
            return Err(QuiverError::BadArrowMatrix);
        }
        Ok(Self { arrows })
    }

    pub fn vertex_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrows(&self, i: usize, j: usize) -> u32 {
        self.arrows[i][j]
    }

    pub fn loops(&self, i: usize) -> u32 {
        self.arrows[i][i]
    }
}

/// Dimension vector for a [`GeneralQuiver`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GDimVector {
    pub dims: Vec<u32>,
}

impl GDimVector {
    pub fn new(dims: Vec<u32>) -> Self {
        Self { dims }
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }
}

/// `[χ_Q]_ij = δ_ij − #arrows(i → j)`.
pub fn euler_matrix(quiver: &GeneralQuiver) -> Vec<Vec<Int>> {
    let k = quiver.vertex_count();
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| Int::from(i == j) - quiver.arrows(i, j) as Int)
                .collect()
        })
        .collect()
}

/// `β₁ᵀ · euler_matrix(Q) · β₂`.
pub fn euler_form_general(
    quiver: &GeneralQuiver,
    b1: &GDimVector,
    b2: &GDimVector,
) -> Result<Int, QuiverError> {
    let k = quiver.vertex_count();
    for b in [b1, b2] {
        if b.len() != k {
            return Err(QuiverError::LengthMismatch {
                expected: k,
                found: b.len(),
            });
        }
    }
    let e = euler_matrix(quiver);
    let mut acc = 0;
    for i in 0..k {
        for j in 0..k {
            acc += b1.dims[i] as Int * e[i][j] * b2.dims[j] as Int;
        }
    }
    Ok(acc)
}

/// Canonical form: zeros stripped, each side sorted descending, oriented so
/// that the left side is no longer than the right. Equal lengths keep the
/// lexicographically smaller of the two orientations.
pub fn normalize(alpha: &DimVector) -> DimVector {
    let canon = |v: &[u32]| {
        let mut w: Vec<u32> = v.iter().copied().filter(|&x| x != 0).collect();
        w.sort_unstable_by(|a, b| b.cmp(a));
        w
    };
    let straight = DimVector::new(canon(&alpha.left), canon(&alpha.right));
    let flipped = straight.swapped();
    match straight.p().cmp(&straight.q()) {
        Ordering::Less => straight,
        Ordering::Greater => flipped,
        Ordering::Equal => straight.min(flipped),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(s: &str) -> DimVector {
        s.parse().unwrap()
    }

    #[test]
    fn theta_and_totals() {
        assert_eq!(theta_pairing(&dv("4,2;2,2,2")), 0);
        assert_eq!(theta_pairing(&dv("1,0;0,0,0")), -1);
        assert_eq!(theta_pairing(&dv("3,2;2,2,1")), 0);
        assert_eq!(total(&dv("4,2;2,2,2")), (6, 6));
        assert_eq!(total(&dv("1;1")), (1, 1));
        assert_eq!(total(&dv("3,1;2,1,1")), (4, 4));
    }

    #[test]
    fn euler_form_examples() {
        let a = dv("2,2;2,1,1");
        assert_eq!(euler_form(&a, &a).unwrap(), -2);
        let e = dv("1,0;0,0,0");
        assert_eq!(euler_form(&e, &e).unwrap(), 1);
        assert_eq!(euler_form(&dv("1,1;1,0,1"), &dv("1,1;1,1,0")).unwrap(), -1);
        assert!(euler_form(&dv("1;1"), &dv("1,0;1")).is_err());
    }

    #[test]
    fn euler_matrix_examples() {
        let q22 = BipartiteShape::new(2, 2).unwrap().as_general();
        assert_eq!(
            euler_matrix(&q22),
            vec![
                vec![1, 0, -1, -1],
                vec![0, 1, -1, -1],
                vec![0, 0, 1, 0],
                vec![0, 0, 0, 1]
            ]
        );
        let one_loop = GeneralQuiver::new(vec![vec![1]]).unwrap();
        assert_eq!(euler_matrix(&one_loop), vec![vec![0]]);
        let two = GeneralQuiver::new(vec![vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(euler_matrix(&two), vec![vec![0, -1], vec![-1, 0]]);
    }

    #[test]
    fn euler_form_general_examples() {
        // A <-> C <-> B in vertex order (A, C, B)
        let path = GeneralQuiver::new(vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]]).unwrap();
        let b = GDimVector::new(vec![1, 3, 2]);
        assert_eq!(euler_form_general(&path, &b, &b).unwrap(), -4);
        let zero = GDimVector::new(vec![0, 0, 0]);
        assert_eq!(euler_form_general(&path, &b, &zero).unwrap(), 0);
        let two_loops = GeneralQuiver::new(vec![vec![2]]).unwrap();
        let one = GDimVector::new(vec![1]);
        assert_eq!(euler_form_general(&two_loops, &one, &one).unwrap(), -1);
        assert!(euler_form_general(&two_loops, &b, &one).is_err());
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&dv("1,2,0;1,1,1")), dv("2,1;1,1,1"));
        assert_eq!(normalize(&dv("1,1,1;2,1")), dv("2,1;1,1,1"));
        assert_eq!(normalize(&dv("4,2;2,2,2")), dv("4,2;2,2,2"));
        // equal lengths: lexicographically smaller orientation
        assert_eq!(normalize(&dv("3,1;2,2")), dv("2,2;3,1"));
    }

    #[test]
    fn parser_rejects_bad_input() {
        for bad in ["", ";1", "1;", "1,-1;0", "1.5;1", "1;1;1", "a;1", "1,,2;3"] {
            assert!(bad.parse::<DimVector>().is_err(), "{bad:?} accepted");
        }
        assert_eq!(dv(" 4,2;2,2,2 ").to_string(), "4,2;2,2,2");
    }
}
