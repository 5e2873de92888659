//! Semisimple degenerations of a dimension vector and their local quivers.
//!
//! A point of the moduli space is a direct sum of θ-stables
//! `S_1^{m_1} ⊕ ... ⊕ S_k^{m_k}`. At the dimension-vector level this is a
//! [`Decomposition`]. Its local quiver has one vertex per distinct stable, with
//! `δ_ij − χ(α_i, α_j)` arrows from `i` to `j` and the multiplicities as
//! dimension vector.

use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quiver::{
    euler_form, euler_form_general, theta_pairing, DimVector, GDimVector, GeneralQuiver, Int,
    QuiverError,
};
use crate::stability::{moduli_dimension, stable_exists, ExceptionRule};

/// Default bound on the number of distinct summands in a decomposition.
pub const DEFAULT_MAX_PARTS: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalError {
    #[error("negative arrow count {count} between local vertices {i} and {j}")]
    NegativeArrows { i: usize, j: usize, count: Int },
    #[error("parts sum to {found}, expected {expected}")]
    SumMismatch { expected: String, found: String },
    #[error("summand {0} admits no θ-stable representation")]
    NotStable(String),
    #[error("summand {0} repeated")]
    Repeated(String),
    #[error("distinct copies of {0} need a positive-dimensional moduli space")]
    NoDistinctCopies(String),
    #[error("zero multiplicity")]
    ZeroMultiplicity,
    #[error("cannot parse decomposition {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// How a repeated summand is realised.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(rename_all = "kebab-case")]
pub enum Copies {
    /// `m` copies of one stable: a single local vertex of dimension `m`.
    #[default]
    SameCopy,
    /// `m` pairwise non-isomorphic stables: `m` local vertices of dimension 1.
    DistinctCopies,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Part {
    pub summand: DimVector,
    pub multiplicity: u32,
    pub copies: Copies,
}

impl Part {
    pub fn new(summand: DimVector, multiplicity: u32) -> Self {
        Self {
            summand,
            multiplicity,
            copies: Copies::SameCopy,
        }
    }

    pub fn distinct(summand: DimVector, multiplicity: u32) -> Self {
        Self {
            summand,
            multiplicity,
            copies: Copies::DistinctCopies,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Decomposition {
    pub parts: Vec<Part>,
}

impl Decomposition {
    /// Sorts parts and checks the invariants against `alpha`.
    pub fn new(
        alpha: &DimVector,
        mut parts: Vec<Part>,
        rule: ExceptionRule,
    ) -> Result<Self, LocalError> {
        parts.sort();
        let mut sum = DimVector::zero_like(alpha);
        for (idx, part) in parts.iter().enumerate() {
            if part.multiplicity == 0 {
                return Err(LocalError::ZeroMultiplicity);
            }
            if idx > 0 && parts[idx - 1].summand == part.summand {
                return Err(LocalError::Repeated(part.summand.to_string()));
            }
            let ok = !part.summand.is_zero()
                && theta_pairing(&part.summand) == 0
                && stable_exists(&part.summand, rule).is_ok_and(|s| s.has_stables());
            if !ok {
                return Err(LocalError::NotStable(part.summand.to_string()));
            }
            if part.copies == Copies::DistinctCopies
                && part.multiplicity >= 2
                && moduli_dimension(&part.summand, rule).unwrap_or(0) < 1
            {
                return Err(LocalError::NoDistinctCopies(part.summand.to_string()));
            }
            sum = sum.add(&part.summand.scale(part.multiplicity))?;
        }
        if &sum != alpha {
            return Err(LocalError::SumMismatch {
                expected: alpha.to_string(),
                found: sum.to_string(),
            });
        }
        Ok(Self { parts })
    }

    /// Summand attached to each local-quiver vertex, with the vertex dimension.
    pub fn vertices(&self) -> Vec<(&DimVector, u32)> {
        let mut out = Vec::new();
        for part in &self.parts {
            match part.copies {
                Copies::DistinctCopies if part.multiplicity >= 2 => {
                    out.extend((0..part.multiplicity).map(|_| (&part.summand, 1)));
                }
                _ => out.push((&part.summand, part.multiplicity)),
            }
        }
        out
    }

    pub fn sum(&self) -> Option<DimVector> {
        let first = self.parts.first()?;
        let mut acc = DimVector::zero_like(&first.summand);
        for part in &self.parts {
            acc = acc.add(&part.summand.scale(part.multiplicity)).ok()?;
        }
        Some(acc)
    }

    /// Parses `"β1 x m1 + β2 x m2 distinct + ..."` without validating.
    pub fn parse_parts(s: &str) -> Result<Vec<Part>, LocalError> {
        let err = |reason: String| LocalError::Parse {
            input: s.to_string(),
            reason,
        };
        s.split('+')
            .map(|chunk| {
                let chunk = chunk.trim();
                let (vec, rest) = chunk
                    .split_once('x')
                    .ok_or_else(|| err(format!("missing 'x' in {chunk:?}")))?;
                let summand: DimVector = vec.trim().parse()?;
                let mut words = rest.split_whitespace();
                let mult = words
                    .next()
                    .and_then(|w| w.parse::<u32>().ok())
                    .ok_or_else(|| err(format!("bad multiplicity in {chunk:?}")))?;
                let copies = match words.next() {
                    None => Copies::SameCopy,
                    Some("distinct") => Copies::DistinctCopies,
                    Some("same") => Copies::SameCopy,
                    Some(w) => return Err(err(format!("unknown modifier {w:?}"))),
                };
                if words.next().is_some() {
                    return Err(err(format!("trailing input in {chunk:?}")));
                }
                Ok(Part {
                    summand,
                    multiplicity: mult,
                    copies,
                })
            })
            .collect()
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, part) in self.parts.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{} x{}", part.summand, part.multiplicity)?;
            if part.copies == Copies::DistinctCopies && part.multiplicity >= 2 {
                write!(f, " distinct")?;
            }
        }
        Ok(())
    }
}

/// Origin of the vertices of a [`LocalQuiver`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LocalSummands {
    Bipartite(Decomposition),
    General(Vec<(GDimVector, u32)>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalQuiver {
    pub quiver: GeneralQuiver,
    pub dims: GDimVector,
    pub summands: LocalSummands,
}

#[derive(Serialize, Deserialize)]
struct LocalQuiverJson {
    dims: Vec<u32>,
    arrows: Vec<Vec<u32>>,
}

impl LocalQuiver {
    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(LocalQuiverJson {
            dims: self.dims.dims.clone(),
            arrows: self.quiver.arrows.clone(),
        })
        .expect("plain data")
    }

    /// Graphviz rendering; one edge per ordered vertex pair labelled with its
    /// arrow multiplicity.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph local_quiver {\n");
        for (i, d) in self.dims.dims.iter().enumerate() {
            out.push_str(&format!("    v{i} [label=\"v{i}:dim{d}\"];\n"));
        }
        for i in 0..self.vertex_count() {
            for j in 0..self.vertex_count() {
                let m = self.quiver.arrows(i, j);
                if m > 0 {
                    out.push_str(&format!("    v{i} -> v{j} [label=\"{m}\"];\n"));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Arrow count via the bipartite shortcut `δ_ij + n_i n_j − α_i·α_j`.
pub fn bipartite_arrow_count(same_vertex: bool, a: &DimVector, b: &DimVector) -> Int {
    Int::from(same_vertex) + a.left_sum() * b.left_sum() - a.dot(b).expect("same shape")
}

fn arrow_matrix<T>(
    items: &[T],
    chi: impl Fn(&T, &T) -> Result<Int, LocalError>,
) -> Result<GeneralQuiver, LocalError> {
    let k = items.len();
    let mut arrows = vec![vec![0u32; k]; k];
    for i in 0..k {
        for j in 0..k {
            let count = Int::from(i == j) - chi(&items[i], &items[j])?;
            if count < 0 {
                return Err(LocalError::NegativeArrows { i, j, count });
            }
            arrows[i][j] = u32::try_from(count).expect("arrow count fits u32");
        }
    }
    Ok(GeneralQuiver::new(arrows)?)
}

pub fn local_quiver(d: &Decomposition) -> Result<LocalQuiver, LocalError> {
    let vertices = d.vertices();
    let quiver = arrow_matrix(&vertices, |(a, _), (b, _)| Ok(euler_form(a, b)?))?;
    let dims = GDimVector::new(vertices.iter().map(|&(_, m)| m).collect());
    Ok(LocalQuiver {
        quiver,
        dims,
        summands: LocalSummands::Bipartite(d.clone()),
    })
}

/// Local quiver one level down: the setting `(quiver, ambient)` at a
/// semisimple point with the given simple dimension vectors and multiplicities.
pub fn local_quiver_general(
    quiver: &GeneralQuiver,
    ambient: &GDimVector,
    parts: &[(GDimVector, u32)],
) -> Result<LocalQuiver, LocalError> {
    let k = quiver.vertex_count();
    let mut sum = vec![0u32; k];
    for (beta, m) in parts {
        if beta.len() != k {
            return Err(QuiverError::LengthMismatch {
                expected: k,
                found: beta.len(),
            }
            .into());
        }
        for (acc, d) in sum.iter_mut().zip(&beta.dims) {
            *acc += d * m;
        }
    }
    if sum != ambient.dims {
        return Err(LocalError::SumMismatch {
            expected: format!("{:?}", ambient.dims),
            found: format!("{sum:?}"),
        });
    }
    let arrows = arrow_matrix(parts, |(a, _), (b, _)| {
        Ok(euler_form_general(quiver, a, b)?)
    })?;
    Ok(LocalQuiver {
        quiver: arrows,
        dims: GDimVector::new(parts.iter().map(|&(_, m)| m).collect()),
        summands: LocalSummands::General(parts.to_vec()),
    })
}

fn sub_vectors(v: &[u32]) -> Vec<(Vec<u32>, Int)> {
    let mut out = vec![(Vec::new(), 0)];
    for &bound in v {
        out = out
            .into_iter()
            .flat_map(|(prefix, s)| {
                (0..=bound).map(move |x| {
                    let mut w = prefix.clone();
                    w.push(x);
                    (w, s + x as Int)
                })
            })
            .collect();
    }
    out
}

/// Every nonzero θ-null `β <= α` admitting stables, in lexicographic order.
pub fn summand_pool(alpha: &DimVector, rule: ExceptionRule) -> Vec<DimVector> {
    let lefts = sub_vectors(&alpha.left);
    let rights = sub_vectors(&alpha.right);
    let mut pool = Vec::new();
    for (l, ls) in &lefts {
        if *ls == 0 {
            continue;
        }
        for (r, rs) in &rights {
            if rs != ls {
                continue;
            }
            let beta = DimVector::new(l.clone(), r.clone());
            if stable_exists(&beta, rule).is_ok_and(|s| s.has_stables()) {
                pool.push(beta);
            }
        }
    }
    pool.sort();
    pool
}

struct PoolEntry {
    summand: DimVector,
    distinct_ok: bool,
}

/// Walks every decomposition of `alpha` into at most `max_parts` distinct
/// pool summands, in lexicographic order, stopping early on `Break`.
pub fn visit_decompositions<B>(
    alpha: &DimVector,
    max_parts: usize,
    rule: ExceptionRule,
    mut visit: impl FnMut(Decomposition) -> ControlFlow<B>,
) -> Option<B> {
    let pool: Vec<PoolEntry> = summand_pool(alpha, rule)
        .into_iter()
        .map(|summand| {
            let distinct_ok = moduli_dimension(&summand, rule).unwrap_or(0) >= 1;
            PoolEntry {
                summand,
                distinct_ok,
            }
        })
        .collect();
    let mut chosen: Vec<(usize, u32)> = Vec::new();
    match search(
        &pool,
        alpha.clone(),
        0,
        max_parts,
        &mut chosen,
        &mut |picked| emit_variants(&pool, picked, &mut visit),
    ) {
        ControlFlow::Break(b) => Some(b),
        ControlFlow::Continue(()) => None,
    }
}

fn first_nonzero(v: &DimVector) -> Option<usize> {
    v.entries().position(|x| x != 0)
}

fn search<B>(
    pool: &[PoolEntry],
    rem: DimVector,
    start: usize,
    budget: usize,
    chosen: &mut Vec<(usize, u32)>,
    emit: &mut impl FnMut(&[(usize, u32)]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let Some(pivot) = first_nonzero(&rem) else {
        return emit(chosen);
    };
    if budget == 0 {
        return ControlFlow::Continue(());
    }
    // some remaining summand has to cover the first nonzero coordinate
    let covers = |e: &PoolEntry| e.summand.entries().nth(pivot).unwrap_or(0) > 0;
    if !pool[start..]
        .iter()
        .any(|e| covers(e) && e.summand.fits_in(&rem))
    {
        return ControlFlow::Continue(());
    }
    for idx in start..pool.len() {
        let summand = &pool[idx].summand;
        let mut mult = 1;
        let mut next = match rem.checked_sub(summand) {
            Some(r) => r,
            None => continue,
        };
        loop {
            chosen.push((idx, mult));
            let flow = search(pool, next.clone(), idx + 1, budget - 1, chosen, emit);
            chosen.pop();
            flow?;
            match next.checked_sub(summand) {
                Some(r) => {
                    next = r;
                    mult += 1;
                }
                None => break,
            }
        }
    }
    ControlFlow::Continue(())
}

fn emit_variants<B>(
    pool: &[PoolEntry],
    picked: &[(usize, u32)],
    visit: &mut impl FnMut(Decomposition) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let flexible: Vec<usize> = picked
        .iter()
        .enumerate()
        .filter(|(_, &(idx, m))| m >= 2 && pool[idx].distinct_ok)
        .map(|(pos, _)| pos)
        .collect();
    for mask in 0u64..(1u64 << flexible.len()) {
        let parts = picked
            .iter()
            .enumerate()
            .map(|(pos, &(idx, m))| {
                let distinct = flexible
                    .iter()
                    .position(|&f| f == pos)
                    .is_some_and(|bit| mask >> bit & 1 == 1);
                Part {
                    summand: pool[idx].summand.clone(),
                    multiplicity: m,
                    copies: if distinct {
                        Copies::DistinctCopies
                    } else {
                        Copies::SameCopy
                    },
                }
            })
            .collect();
        visit(Decomposition { parts })?;
    }
    ControlFlow::Continue(())
}

pub fn enumerate_decompositions(
    alpha: &DimVector,
    max_parts: usize,
    rule: ExceptionRule,
) -> Vec<Decomposition> {
    let mut out = Vec::new();
    visit_decompositions::<()>(alpha, max_parts, rule, |d| {
        out.push(d);
        ControlFlow::Continue(())
    });
    out.sort();
    out
}

impl FromStr for Copies {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "same-copy" => Ok(Self::SameCopy),
            "distinct-copies" => Ok(Self::DistinctCopies),
            other => Err(format!("unknown copies tag {other:?}")),
        }
    }
}
