//! Dimension-vector level existence of θ-semistable and θ-stable
//! representations of `Q_{p,q}`.
//!
//! Stables exist for a θ-null `α` iff `a_i + b_j <= n` for all `i, j`, except
//! for a special family of balanced vectors, or `n = 1` (a single point).
//! Which balanced vectors fall in the exception is controlled by
//! [`ExceptionRule`].

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quiver::{euler_form, normalize, theta_pairing, DimVector, Int};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilityError {
    #[error("dimension vector {0} is not θ-null")]
    Unbalanced(String),
    #[error("dimension vector is zero")]
    Zero,
    #[error("dimension vector {0} admits no θ-stable representation")]
    NoStables(String),
}

/// Reading of the "all entries equal" exception.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExceptionRule {
    /// Only `(a,a;a,a)` with `a >= 2` lacks stables; `(1,1;1,1)` has them.
    #[default]
    Corrected,
    /// Every vector whose normalized entries are all equal lacks stables.
    Literal,
}

impl ExceptionRule {
    pub fn from_strict(strict: bool) -> Self {
        if strict {
            Self::Literal
        } else {
            Self::Corrected
        }
    }

    pub fn is_strict(self) -> bool {
        self == Self::Literal
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "kebab-case")]
pub enum NoneReason {
    /// `a_i + b_j > n` (zero-based indices into the raw vector).
    AlmostSimpleViolated { i: usize, j: usize },
    /// All-equal support in the exception family.
    Exception,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum StableExistence {
    None {
        reason: NoneReason,
    },
    /// `n = 1`: the moduli space is a point.
    Point,
    Yes,
}

impl StableExistence {
    pub fn has_stables(self) -> bool {
        matches!(self, Self::Point | Self::Yes)
    }
}

fn require_balanced(alpha: &DimVector) -> Result<Int, StabilityError> {
    if theta_pairing(alpha) != 0 {
        return Err(StabilityError::Unbalanced(alpha.to_string()));
    }
    Ok(alpha.left_sum())
}

pub fn semistable_exists(alpha: &DimVector) -> bool {
    theta_pairing(alpha) == 0 && !alpha.is_zero()
}

fn first_violation(alpha: &DimVector, n: Int) -> Option<(usize, usize)> {
    for (i, &a) in alpha.left.iter().enumerate() {
        for (j, &b) in alpha.right.iter().enumerate() {
            if a as Int + b as Int > n {
                return Some((i, j));
            }
        }
    }
    None
}

/// Condition `a_i + b_j <= n` for all `i, j`.
pub fn almost_simple(alpha: &DimVector) -> Result<bool, StabilityError> {
    let n = require_balanced(alpha)?;
    Ok(first_violation(alpha, n).is_none())
}

fn in_exception(normalized: &DimVector, rule: ExceptionRule) -> bool {
    let mut entries = normalized.entries();
    let Some(first) = entries.next() else {
        return false;
    };
    if !entries.all(|x| x == first) {
        return false;
    }
    match rule {
        ExceptionRule::Literal => true,
        ExceptionRule::Corrected => normalized.p() == 2 && normalized.q() == 2 && first >= 2,
    }
}

pub fn stable_exists(
    alpha: &DimVector,
    rule: ExceptionRule,
) -> Result<StableExistence, StabilityError> {
    let n = require_balanced(alpha)?;
    if n == 0 {
        return Err(StabilityError::Zero);
    }
    if n == 1 {
        return Ok(StableExistence::Point);
    }
    if let Some((i, j)) = first_violation(alpha, n) {
        return Ok(StableExistence::None {
            reason: NoneReason::AlmostSimpleViolated { i, j },
        });
    }
    if in_exception(&normalize(alpha), rule) {
        return Ok(StableExistence::None {
            reason: NoneReason::Exception,
        });
    }
    Ok(StableExistence::Yes)
}

/// Dimension of the moduli space, `1 − χ(α,α)`; zero for a point.
pub fn moduli_dimension(alpha: &DimVector, rule: ExceptionRule) -> Result<Int, StabilityError> {
    match stable_exists(alpha, rule)? {
        StableExistence::Point => Ok(0),
        StableExistence::Yes => Ok(1 - euler_form(alpha, alpha).expect("same shape")),
        StableExistence::None { .. } => Err(StabilityError::NoStables(alpha.to_string())),
    }
}
