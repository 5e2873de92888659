//! Exact-rational representations of `Q_{p,q}`, the base-change action, the
//! character `χ_θ` and determinantal (matrix) semi-invariants.
//!
//! Conventions: the arrow from left vertex `i` to right vertex `j` is a
//! `b_j × a_i` matrix. Assembled matrices have row blocks indexed by right
//! vertices and column blocks indexed by left vertices. A group element
//! `g = (g_1..g_p; h_1..h_q)` acts by `X_ij ↦ h_j · X_ij · g_i⁻¹`, so that every
//! degree-`l` determinantal semi-invariant picks up `χ_θ(g)^l`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{parse_rational, random_rational, rat, LinalgError, Matrix, Rational};
use crate::quiver::{theta_pairing, DimVector, QuiverError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemiInvError {
    #[error("arrow {i}-{j} has shape {found:?}, expected {expected:?}")]
    ArrowShape {
        i: usize,
        j: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("representation and group element have different dimension vectors")]
    ShapeMismatch,
    #[error("dimension vector {0} is not θ-null")]
    Unbalanced(String),
    #[error("coefficient matrix {rows}x{cols} does not fit degree {degree} on Q_{{{p},{q}}}")]
    SpecShape {
        degree: usize,
        rows: usize,
        cols: usize,
        p: usize,
        q: usize,
    },
    #[error("every generator vanishes on this representation")]
    AllZero,
    #[error("expected {expected} witness coordinates, got {found}")]
    WitnessLength { expected: usize, found: usize },
    #[error("representation is not on the expected quiver: {0}")]
    WrongQuiver(String),
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// A representation of `Q_{p,q}` with dimension vector `alpha`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    alpha: DimVector,
    /// `arrows[i][j]`: left vertex `i` to right vertex `j`, shape `b_j × a_i`.
    arrows: Vec<Vec<Matrix>>,
}

impl Representation {
    pub fn new(alpha: DimVector, arrows: Vec<Vec<Matrix>>) -> Result<Self, SemiInvError> {
        if arrows.len() != alpha.p() || arrows.iter().any(|row| row.len() != alpha.q()) {
            return Err(SemiInvError::WrongQuiver(format!(
                "expected {}x{} arrows",
                alpha.p(),
                alpha.q()
            )));
        }
        for (i, row) in arrows.iter().enumerate() {
            for (j, m) in row.iter().enumerate() {
                let expected = (alpha.right[j] as usize, alpha.left[i] as usize);
                let found = (m.rows(), m.cols());
                if expected != found {
                    return Err(SemiInvError::ArrowShape {
                        i,
                        j,
                        expected,
                        found,
                    });
                }
            }
        }
        Ok(Self { alpha, arrows })
    }

    pub fn zero(alpha: &DimVector) -> Self {
        let arrows = alpha
            .left
            .iter()
            .map(|&a| {
                alpha
                    .right
                    .iter()
                    .map(|&b| Matrix::zeros(b as usize, a as usize))
                    .collect()
            })
            .collect();
        Self {
            alpha: alpha.clone(),
            arrows,
        }
    }

    pub fn random(alpha: &DimVector, rng: &mut impl Rng) -> Self {
        let mut rep = Self::zero(alpha);
        for row in &mut rep.arrows {
            for m in row {
                *m = Matrix::random(m.rows(), m.cols(), rng);
            }
        }
        rep
    }

    pub fn alpha(&self) -> &DimVector {
        &self.alpha
    }

    pub fn arrow(&self, i: usize, j: usize) -> &Matrix {
        &self.arrows[i][j]
    }

    pub fn arrow_mut(&mut self, i: usize, j: usize) -> &mut Matrix {
        &mut self.arrows[i][j]
    }

    /// All arrow entries in a fixed order (arrow `(i,j)` row-major, then entries row-major).
    pub fn coordinates(&self) -> Vec<Rational> {
        self.arrows
            .iter()
            .flatten()
            .flat_map(|m| m.to_rows().into_iter().flatten())
            .collect()
    }

    /// Inverse of [`Representation::coordinates`].
    pub fn with_coordinates(&self, coords: &[Rational]) -> Self {
        let mut out = self.clone();
        let mut it = coords.iter();
        for row in &mut out.arrows {
            for m in row {
                for x in m.entries_mut() {
                    *x = it.next().expect("enough coordinates").clone();
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut arrows = BTreeMap::new();
        for (i, row) in self.arrows.iter().enumerate() {
            for (j, m) in row.iter().enumerate() {
                let rows: Vec<Vec<String>> = m
                    .to_rows()
                    .iter()
                    .map(|r| r.iter().map(ToString::to_string).collect())
                    .collect();
                arrows.insert(format!("{}-{}", i + 1, j + 1), rows);
            }
        }
        serde_json::json!({
            "p": self.alpha.p(),
            "q": self.alpha.q(),
            "alpha": self.alpha.to_string(),
            "arrows": arrows,
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, SemiInvError> {
        #[derive(Deserialize)]
        struct Raw {
            p: usize,
            q: usize,
            alpha: String,
            arrows: BTreeMap<String, Vec<Vec<String>>>,
        }
        let raw: Raw =
            serde_json::from_value(value.clone()).map_err(|e| SemiInvError::Json(e.to_string()))?;
        let alpha: DimVector = raw.alpha.parse()?;
        if alpha.shape() != (raw.p, raw.q) {
            return Err(SemiInvError::Json(format!(
                "alpha {} does not match p={}, q={}",
                alpha, raw.p, raw.q
            )));
        }
        let mut rep = Self::zero(&alpha);
        for (key, rows) in &raw.arrows {
            let (i, j) = key
                .split_once('-')
                .and_then(|(i, j)| Some((i.parse::<usize>().ok()?, j.parse::<usize>().ok()?)))
                .filter(|&(i, j)| (1..=raw.p).contains(&i) && (1..=raw.q).contains(&j))
                .ok_or_else(|| SemiInvError::Json(format!("bad arrow key {key:?}")))?;
            let parsed = rows
                .iter()
                .map(|r| r.iter().map(|x| parse_rational(x)).collect())
                .collect::<Result<Vec<Vec<Rational>>, _>>()?;
            let (b, a) = (alpha.right[j - 1] as usize, alpha.left[i - 1] as usize);
            let m = if b == 0 || a == 0 {
                Matrix::zeros(b, a)
            } else {
                if parsed.len() != b || parsed.iter().any(|r| r.len() != a) {
                    return Err(SemiInvError::ArrowShape {
                        i: i - 1,
                        j: j - 1,
                        expected: (b, a),
                        found: (parsed.len(), parsed.first().map_or(0, Vec::len)),
                    });
                }
                Matrix::from_rows(parsed)
            };
            rep.arrows[i - 1][j - 1] = m;
        }
        Ok(rep)
    }
}

fn block_offsets(sizes: &[u32]) -> Vec<usize> {
    let mut acc = 0;
    sizes
        .iter()
        .map(|&s| {
            let start = acc;
            acc += s as usize;
            start
        })
        .collect()
}

fn require_balanced(alpha: &DimVector) -> Result<usize, SemiInvError> {
    if theta_pairing(alpha) != 0 {
        return Err(SemiInvError::Unbalanced(alpha.to_string()));
    }
    Ok(alpha.left_sum() as usize)
}

/// The `n × n` block matrix with block row `j`, block column `i` equal to the
/// arrow `i → j`.
pub fn big_matrix(rep: &Representation) -> Result<Matrix, SemiInvError> {
    let n = require_balanced(&rep.alpha)?;
    let rows = block_offsets(&rep.alpha.right);
    let cols = block_offsets(&rep.alpha.left);
    let mut m = Matrix::zeros(n, n);
    for (i, row) in rep.arrows.iter().enumerate() {
        for (j, block) in row.iter().enumerate() {
            m.set_block(rows[j], cols[i], block);
        }
    }
    Ok(m)
}

/// Whether the big matrix is invertible.
pub fn in_u(rep: &Representation) -> Result<bool, SemiInvError> {
    Ok(!big_matrix(rep)?.det()?.is_zero())
}

/// An element `(g_1..g_p; h_1..h_q)` of the base-change group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    pub g: Vec<Matrix>,
    pub h: Vec<Matrix>,
}

impl GroupElement {
    pub fn identity(alpha: &DimVector) -> Self {
        Self {
            g: alpha
                .left
                .iter()
                .map(|&a| Matrix::identity(a as usize))
                .collect(),
            h: alpha
                .right
                .iter()
                .map(|&b| Matrix::identity(b as usize))
                .collect(),
        }
    }

    /// Random element with invertible blocks.
    pub fn random(alpha: &DimVector, rng: &mut impl Rng) -> Self {
        let mut invertible = |n: usize| loop {
            let m = Matrix::random(n, n, rng);
            if !m.det().expect("square").is_zero() {
                return m;
            }
        };
        Self {
            g: alpha.left.iter().map(|&a| invertible(a as usize)).collect(),
            h: alpha
                .right
                .iter()
                .map(|&b| invertible(b as usize))
                .collect(),
        }
    }

    /// Componentwise product `self · other`.
    pub fn compose(&self, other: &Self) -> Result<Self, SemiInvError> {
        let mul = |a: &[Matrix], b: &[Matrix]| -> Result<Vec<Matrix>, SemiInvError> {
            if a.len() != b.len() {
                return Err(SemiInvError::ShapeMismatch);
            }
            a.iter().zip(b).map(|(x, y)| Ok(x.mul(y)?)).collect()
        };
        Ok(Self {
            g: mul(&self.g, &other.g)?,
            h: mul(&self.h, &other.h)?,
        })
    }
}

/// `χ_θ(g) = (Π det g_i)⁻¹ · Π det h_j`.
pub fn chi_theta(g: &GroupElement) -> Result<Rational, SemiInvError> {
    let mut num = Rational::one();
    for h in &g.h {
        num *= h.det()?;
    }
    let mut den = Rational::one();
    for gi in &g.g {
        den *= gi.det()?;
    }
    if den.is_zero() || num.is_zero() {
        return Err(LinalgError::Singular.into());
    }
    Ok(num / den)
}

pub fn act(g: &GroupElement, rep: &Representation) -> Result<Representation, SemiInvError> {
    let alpha = &rep.alpha;
    let fits = g.g.len() == alpha.p()
        && g.h.len() == alpha.q()
        && g.g
            .iter()
            .zip(&alpha.left)
            .all(|(m, &a)| m.rows() == a as usize)
        && g.h
            .iter()
            .zip(&alpha.right)
            .all(|(m, &b)| m.rows() == b as usize);
    if !fits {
        return Err(SemiInvError::ShapeMismatch);
    }
    let g_inv =
        g.g.iter()
            .map(Matrix::inverse)
            .collect::<Result<Vec<_>, _>>()?;
    let mut out = rep.clone();
    for (i, row) in out.arrows.iter_mut().enumerate() {
        for (j, m) in row.iter_mut().enumerate() {
            *m = g.h[j].mul(m)?.mul(&g_inv[i])?;
        }
    }
    Ok(out)
}

/// A determinantal semi-invariant of degree `l`: block `(r, c)` of the
/// assembled matrix is `coeff[r][c]` times the arrow from left vertex
/// `c mod p` to right vertex `r mod q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiInvariantSpec {
    pub degree: usize,
    pub coeff: Matrix,
}

impl SemiInvariantSpec {
    pub fn new(degree: usize, coeff: Matrix) -> Self {
        Self { degree, coeff }
    }

    fn check_fits(&self, alpha: &DimVector) -> Result<(), SemiInvError> {
        let (p, q) = alpha.shape();
        if self.degree == 0
            || self.coeff.rows() != self.degree * q
            || self.coeff.cols() != self.degree * p
        {
            return Err(SemiInvError::SpecShape {
                degree: self.degree,
                rows: self.coeff.rows(),
                cols: self.coeff.cols(),
                p,
                q,
            });
        }
        Ok(())
    }

    /// The `(l·n) × (l·n)` matrix whose determinant is the semi-invariant.
    pub fn assemble(&self, rep: &Representation) -> Result<Matrix, SemiInvError> {
        let n = require_balanced(&rep.alpha)?;
        self.check_fits(&rep.alpha)?;
        let (p, q) = rep.alpha.shape();
        let l = self.degree;
        let heights: Vec<u32> = (0..l * q).map(|r| rep.alpha.right[r % q]).collect();
        let widths: Vec<u32> = (0..l * p).map(|c| rep.alpha.left[c % p]).collect();
        let rows = block_offsets(&heights);
        let cols = block_offsets(&widths);
        let mut m = Matrix::zeros(l * n, l * n);
        for r in 0..l * q {
            for c in 0..l * p {
                let s = &self.coeff[(r, c)];
                if s.is_zero() {
                    continue;
                }
                m.set_block(rows[r], cols[c], &rep.arrows[c % p][r % q].scaled(s));
            }
        }
        Ok(m)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let coeff: Vec<Vec<String>> = self
            .coeff
            .to_rows()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        serde_json::json!({ "degree": self.degree, "coeff": coeff })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, SemiInvError> {
        #[derive(Deserialize)]
        struct Raw {
            degree: usize,
            coeff: Vec<Vec<String>>,
        }
        let raw: Raw =
            serde_json::from_value(value.clone()).map_err(|e| SemiInvError::Json(e.to_string()))?;
        let rows = raw
            .coeff
            .iter()
            .map(|r| r.iter().map(|x| parse_rational(x)).collect())
            .collect::<Result<Vec<Vec<Rational>>, _>>()?;
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return Err(SemiInvError::Json("ragged coefficient matrix".into()));
        }
        Ok(Self::new(raw.degree, Matrix::from_rows(rows)))
    }
}

pub fn eval_semiinvariant(
    spec: &SemiInvariantSpec,
    rep: &Representation,
) -> Result<Rational, SemiInvError> {
    Ok(spec.assemble(rep)?.det()?)
}

/// Dimension vector `(m,1;1,...,1)` of the quiver `Q_m`.
pub fn qm_alpha(m: usize) -> DimVector {
    DimVector::new(vec![m as u32, 1], vec![1; m + 1])
}

/// `T_1..T_{m+1}`: row `r` takes the `K` arrow except row `i`, which takes `C_i`.
pub fn qm_generators(m: usize) -> Vec<SemiInvariantSpec> {
    (0..=m)
        .map(|i| {
            let mut coeff = Matrix::zeros(m + 1, 2);
            for r in 0..=m {
                coeff[(r, usize::from(r == i))] = Rational::one();
            }
            SemiInvariantSpec::new(1, coeff)
        })
        .collect()
}

/// `K_i = e_i` for `i <= m`, `K_{m+1} = (1,...,1)`, `C_i = x_i`.
pub fn qm_witness(m: usize, x: &[Rational]) -> Result<Representation, SemiInvError> {
    if x.len() != m + 1 {
        return Err(SemiInvError::WitnessLength {
            expected: m + 1,
            found: x.len(),
        });
    }
    let alpha = qm_alpha(m);
    let mut rep = Representation::zero(&alpha);
    for r in 0..=m {
        let k = rep.arrow_mut(0, r);
        for c in 0..m {
            if r == m || r == c {
                k[(0, c)] = Rational::one();
            }
        }
        rep.arrow_mut(1, r)[(0, 0)] = x[r].clone();
    }
    Ok(rep)
}

/// Dimension vector `(2,2;2,1,1)` of `Q_III`.
pub fn qiii_alpha() -> DimVector {
    DimVector::new(vec![2, 2], vec![2, 1, 1])
}

/// The four degree-one generators on `Q_III`:
/// `|A 0; 0 D1; 0 D2|`, `|0 B; C1 0; C2 0|`, `|A B; C1 0; 0 D2|`, `|A B; 0 D1; C2 0|`.
pub fn qiii_generators() -> Vec<SemiInvariantSpec> {
    let patterns: [[[i64; 2]; 3]; 4] = [
        [[1, 0], [0, 1], [0, 1]],
        [[0, 1], [1, 0], [1, 0]],
        [[1, 1], [1, 0], [0, 1]],
        [[1, 1], [0, 1], [1, 0]],
    ];
    patterns
        .iter()
        .map(|pat| {
            let rows: Vec<&[i64]> = pat.iter().map(|r| r.as_slice()).collect();
            SemiInvariantSpec::new(1, Matrix::from_i64(&rows))
        })
        .collect()
}

/// `A = diag(1, x1)`, `B = diag(x2, 1)`, `C1 = (0 1)`, `C2 = (0 x3)`,
/// `D1 = (1 0)`, `D2 = (−x4 0)`.
pub fn qiii_witness(x: &[Rational]) -> Result<Representation, SemiInvError> {
    if x.len() != 4 {
        return Err(SemiInvError::WitnessLength {
            expected: 4,
            found: x.len(),
        });
    }
    let zero = Rational::zero;
    let one = Rational::one;
    let a = Matrix::from_rows(vec![vec![one(), zero()], vec![zero(), x[0].clone()]]);
    let b = Matrix::from_rows(vec![vec![x[1].clone(), zero()], vec![zero(), one()]]);
    let c1 = Matrix::from_rows(vec![vec![zero(), one()]]);
    let c2 = Matrix::from_rows(vec![vec![zero(), x[2].clone()]]);
    let d1 = Matrix::from_rows(vec![vec![one(), zero()]]);
    let d2 = Matrix::from_rows(vec![vec![-x[3].clone(), zero()]]);
    Representation::new(qiii_alpha(), vec![vec![a, c1, c2], vec![b, d1, d2]])
}

/// A point of projective space, scaled so the first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ProjectivePoint {
    #[serde(serialize_with = "ser_rationals")]
    coords: Vec<Rational>,
}

fn ser_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

impl ProjectivePoint {
    pub fn new(coords: Vec<Rational>) -> Option<Self> {
        let lead = coords.iter().find(|c| !c.is_zero())?.clone();
        Some(Self {
            coords: coords.into_iter().map(|c| c / &lead).collect(),
        })
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }
}

impl std::fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(" : "))
    }
}

/// `(T_1(V) : ... : T_{m+1}(V))` for a representation of `Q_m`.
pub fn moduli_coordinates_qm(rep: &Representation) -> Result<ProjectivePoint, SemiInvError> {
    let alpha = rep.alpha();
    let m = alpha.left.first().copied().unwrap_or(0) as usize;
    if m == 0 || alpha != &qm_alpha(m) {
        return Err(SemiInvError::WrongQuiver(format!(
            "{alpha} is not of the form (m,1;1,...,1)"
        )));
    }
    let values = qm_generators(m)
        .iter()
        .map(|t| eval_semiinvariant(t, rep))
        .collect::<Result<Vec<_>, _>>()?;
    ProjectivePoint::new(values).ok_or(SemiInvError::AllZero)
}

/// Loop values and the `k × k` matrix of two-cycles `X_ij = a_i · b_j` for the
/// two-vertex setting with `k` arrows each way and `loops` loops at each vertex.
///
/// `arrows` holds the `k` forward scalars, the `k` backward scalars and then
/// the `2·loops` loop scalars.
pub fn lemma0_invariants(
    k: usize,
    loops: usize,
    arrows: &[Rational],
) -> Result<(Vec<Rational>, Matrix), SemiInvError> {
    if arrows.len() != 2 * k + 2 * loops {
        return Err(SemiInvError::WitnessLength {
            expected: 2 * k + 2 * loops,
            found: arrows.len(),
        });
    }
    let (fwd, rest) = arrows.split_at(k);
    let (bwd, loop_vals) = rest.split_at(k);
    let mut x = Matrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            x[(i, j)] = &fwd[i] * &bwd[j];
        }
    }
    Ok((loop_vals.to_vec(), x))
}

/// Integer rationals, for command-line witnesses.
pub fn integers(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| rat(x)).collect()
}

/// Random point with coordinates drawn like [`random_rational`].
pub fn random_point(len: usize, rng: &mut impl Rng) -> Vec<Rational> {
    (0..len).map(|_| random_rational(rng)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ratio;

    #[test]
    fn big_matrix_of_qm_witness() {
        let w = qm_witness(2, &integers(&[1, 1, 5])).unwrap();
        assert_eq!(
            big_matrix(&w).unwrap(),
            Matrix::from_i64(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 5]])
        );
        assert!(in_u(&w).unwrap());
        let w = qm_witness(2, &integers(&[2, 3, 5])).unwrap();
        assert!(!in_u(&w).unwrap());
        let z = Representation::zero(&qm_alpha(2));
        assert!(big_matrix(&z).unwrap().is_zero());
        assert!(!in_u(&z).unwrap());
    }

    #[test]
    fn one_by_one() {
        let alpha: DimVector = "1;1".parse().unwrap();
        let rep = Representation::new(alpha, vec![vec![Matrix::from_i64(&[&[7]])]]).unwrap();
        assert_eq!(big_matrix(&rep).unwrap(), Matrix::from_i64(&[&[7]]));
        let spec = SemiInvariantSpec::new(1, Matrix::from_i64(&[&[1]]));
        assert_eq!(eval_semiinvariant(&spec, &rep).unwrap(), rat(7));
    }

    #[test]
    fn chi_theta_examples() {
        let alpha = qm_alpha(2);
        let id = GroupElement::identity(&alpha);
        assert_eq!(chi_theta(&id).unwrap(), rat(1));
        let mut g = id.clone();
        g.g[0] = Matrix::scalar(2, rat(2));
        assert_eq!(chi_theta(&g).unwrap(), ratio(1, 4));
        let mut g = id.clone();
        g.h[0] = Matrix::from_i64(&[&[3]]);
        assert_eq!(chi_theta(&g).unwrap(), rat(3));
        let mut g = id;
        g.h[1] = Matrix::zeros(1, 1);
        assert!(chi_theta(&g).is_err());
    }

    #[test]
    fn qm_generator_values() {
        let x = integers(&[2, 3, 5]);
        let w = qm_witness(2, &x).unwrap();
        let t: Vec<Rational> = qm_generators(2)
            .iter()
            .map(|s| eval_semiinvariant(s, &w).unwrap())
            .collect();
        assert_eq!(t, integers(&[-2, -3, 5]));
        let w = qm_witness(1, &integers(&[4, 9])).unwrap();
        let t: Vec<Rational> = qm_generators(1)
            .iter()
            .map(|s| eval_semiinvariant(s, &w).unwrap())
            .collect();
        assert_eq!(t, integers(&[-4, 9]));
        let z = Representation::zero(&qm_alpha(3));
        assert!(qm_generators(3)
            .iter()
            .all(|s| eval_semiinvariant(s, &z).unwrap().is_zero()));
        assert!(qm_witness(2, &integers(&[1, 2])).is_err());
    }

    #[test]
    fn qm_coordinates() {
        let w = qm_witness(2, &integers(&[1, 1, 5])).unwrap();
        assert_eq!(
            moduli_coordinates_qm(&w).unwrap().coords(),
            integers(&[1, 1, -5]).as_slice()
        );
        let z = Representation::zero(&qm_alpha(2));
        assert_eq!(moduli_coordinates_qm(&z), Err(SemiInvError::AllZero));
        let zero_c = qm_witness(2, &integers(&[0, 0, 0])).unwrap();
        assert!(zero_c.arrow(1, 0).is_zero());
    }

    #[test]
    fn qiii_on_zero_and_witness() {
        let z = Representation::zero(&qiii_alpha());
        assert!(qiii_generators()
            .iter()
            .all(|s| eval_semiinvariant(s, &z).unwrap().is_zero()));
        let w = qiii_witness(&integers(&[2, 3, 5, 7])).unwrap();
        let t1 = eval_semiinvariant(&qiii_generators()[0], &w).unwrap();
        // D1, D2 are proportional, so the first generator vanishes
        assert!(t1.is_zero());
    }

    #[test]
    fn lemma0_products() {
        let (loops, x) = lemma0_invariants(2, 1, &integers(&[1, 2, 3, 4, 5, 6])).unwrap();
        assert_eq!(x, Matrix::from_i64(&[&[3, 4], &[6, 8]]));
        assert_eq!(loops, integers(&[5, 6]));
        assert_eq!(x.rank(), 1);
        let (_, x) = lemma0_invariants(1, 0, &integers(&[3, 7])).unwrap();
        assert_eq!(x, Matrix::from_i64(&[&[21]]));
        assert!(lemma0_invariants(2, 0, &integers(&[1])).is_err());
    }

    #[test]
    fn json_round_trip() {
        let w = qiii_witness(&[ratio(1, 2), rat(-3), rat(0), ratio(5, 7)]).unwrap();
        assert_eq!(Representation::from_json(&w.to_json()).unwrap(), w);
        let spec = &qiii_generators()[2];
        assert_eq!(
            &SemiInvariantSpec::from_json(&spec.to_json()).unwrap(),
            spec
        );
        let bad = serde_json::json!({"p": 1, "q": 1, "alpha": "1;1", "arrows": {"1-2": [["1"]]}});
        assert!(Representation::from_json(&bad).is_err());
    }

    #[test]
    fn spec_shape_is_checked() {
        let w = qm_witness(2, &integers(&[1, 1, 5])).unwrap();
        let spec = SemiInvariantSpec::new(2, Matrix::zeros(3, 2));
        assert!(matches!(
            eval_semiinvariant(&spec, &w),
            Err(SemiInvError::SpecShape { .. })
        ));
    }
}
