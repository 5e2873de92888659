//! Smoothness tests for the moduli spaces `M^ss_α(Q_{p,q}, θ)`.
//!
//! Nothing here decides smoothness in general. [`classify`] applies necessary
//! conditions (two-summand degenerations, then obstruction detectors on the
//! local quivers of enumerated degenerations) and falls back on the table of
//! known families. Whatever remains is [`VerdictKind::Undecided`].

mod audit;
mod figures;

pub use audit::{
    bounded_vectors, lemma2_audit, sweep_audit, verdict_record, AuditReport, Claim, ClaimStatus,
    Lemma2Audit, SweepBounds, SweepOptions, VerdictRecord,
};
pub use figures::{
    isomorphic, loop_decomposition, paper_chain, path_decomposition, path_trace_independence,
    FigureCheck, QuiverPicture, TraceIndependence,
};

use std::cmp::Reverse;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::local::{
    local_quiver, summand_pool, visit_decompositions, Decomposition, LocalError, LocalQuiver, Part,
    DEFAULT_MAX_PARTS,
};
use crate::quiver::{euler_form, normalize, theta_pairing, DimVector, GDimVector, Int};
use crate::stability::{
    moduli_dimension, stable_exists, ExceptionRule, StabilityError, StableExistence,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SmoothnessError {
    #[error(transparent)]
    Stability(#[from] StabilityError),
    #[error(transparent)]
    Local(#[from] LocalError),
    #[error("{0} has no θ-stable representation")]
    NoStables(String),
    #[error("index ({i},{j}) out of range for {alpha}")]
    Index { alpha: String, i: usize, j: usize },
    #[error("split of ε_({i},{j}) from {alpha} is not a degeneration: {reason}")]
    InvalidSplit {
        alpha: String,
        i: usize,
        j: usize,
        reason: String,
    },
}

/// Two vertices of dimension one joined by `k` arrows each way have a
/// polynomial invariant ring iff `k <= 1`.
pub fn lemma0_criterion(k: u64) -> bool {
    k <= 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum PairwiseOutcome {
    Pass,
    Fail {
        beta: DimVector,
        gamma: DimVector,
        /// Arrows each way between the two summands. `i64` because the
        /// tagged representation cannot carry `i128`.
        k: i64,
    },
}

fn require_stables(alpha: &DimVector, rule: ExceptionRule) -> Result<(), SmoothnessError> {
    if !stable_exists(alpha, rule)?.has_stables() {
        return Err(SmoothnessError::NoStables(alpha.to_string()));
    }
    Ok(())
}

/// Checks every two-summand degeneration `β ⊕ γ` of `α`; fails on the first
/// pair with `k = −χ(β,γ) >= 2`.
///
/// Pairs are ordered by their normalized summands (smaller first); ties
/// between raw realisations go to the one with mass on earlier vertices.
pub fn pairwise_test(
    alpha: &DimVector,
    rule: ExceptionRule,
) -> Result<PairwiseOutcome, SmoothnessError> {
    require_stables(alpha, rule)?;
    let pool = summand_pool(alpha, rule);
    let mut worst: Option<(SplitKey, DimVector, DimVector, Int)> = None;
    for beta in &pool {
        let Some(gamma) = alpha.checked_sub(beta) else {
            continue;
        };
        if gamma.is_zero() || gamma < *beta || pool.binary_search(&gamma).is_err() {
            continue;
        }
        if gamma == *beta && moduli_dimension(beta, rule)? < 1 {
            continue;
        }
        let k = -euler_form(beta, &gamma).expect("same shape");
        if lemma0_criterion(u64::try_from(k).unwrap_or(0)) {
            continue;
        }
        let (key, first, second) = split_key(beta, &gamma);
        if worst.as_ref().is_none_or(|(w, ..)| key < *w) {
            worst = Some((key, first, second, k));
        }
    }
    Ok(match worst {
        None => PairwiseOutcome::Pass,
        Some((_, beta, gamma, k)) => PairwiseOutcome::Fail {
            beta,
            gamma,
            k: i64::try_from(k).expect("arrow count fits in i64"),
        },
    })
}

type SplitKey = (DimVector, DimVector, Reverse<DimVector>, Reverse<DimVector>);

fn split_key(a: &DimVector, b: &DimVector) -> (SplitKey, DimVector, DimVector) {
    let (na, nb) = (normalize(a), normalize(b));
    let a_first = (&na, Reverse(a)) <= (&nb, Reverse(b));
    let (first, second, nf, ns) = if a_first {
        (a, b, na, nb)
    } else {
        (b, a, nb, na)
    };
    (
        (nf, ns, Reverse(first.clone()), Reverse(second.clone())),
        first.clone(),
        second.clone(),
    )
}

/// Whether the degeneration `(α − ε_ij) ⊕ ε_ij` is smooth, i.e. `a_i + b_j = n`.
///
/// The answer is cross-checked against `−χ(α − ε_ij, ε_ij) = 1 − (a_i + b_j − n)`.
pub fn epsilon_split_smooth(
    alpha: &DimVector,
    i: usize,
    j: usize,
    rule: ExceptionRule,
) -> Result<bool, SmoothnessError> {
    if i >= alpha.p() || j >= alpha.q() {
        return Err(SmoothnessError::Index {
            alpha: alpha.to_string(),
            i,
            j,
        });
    }
    if theta_pairing(alpha) != 0 {
        return Err(StabilityError::Unbalanced(alpha.to_string()).into());
    }
    let invalid = |reason: String| SmoothnessError::InvalidSplit {
        alpha: alpha.to_string(),
        i,
        j,
        reason,
    };
    let shape = crate::quiver::BipartiteShape::new(alpha.p(), alpha.q()).expect("non-empty");
    let eps = DimVector::epsilon(shape, i, j);
    let rest = alpha
        .checked_sub(&eps)
        .ok_or_else(|| invalid("entry would become negative".into()))?;
    match stable_exists(&rest, rule) {
        Ok(StableExistence::Yes) => {}
        Ok(other) => return Err(invalid(format!("complement {rest} is {other:?}"))),
        Err(e) => return Err(invalid(e.to_string())),
    }
    let n = alpha.left_sum();
    let excess = alpha.left[i] as Int + alpha.right[j] as Int - n;
    let k = -euler_form(&rest, &eps).expect("same shape");
    assert_eq!(k, 1 - excess, "Euler form cross-check failed for {alpha}");
    Ok(excess == 0)
}

/// Two distinct local vertices with at least two arrows in each direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwoVertexWitness {
    pub i: usize,
    pub j: usize,
    pub k: u32,
}

pub fn two_vertex_obstruction(lq: &LocalQuiver) -> Option<TwoVertexWitness> {
    let n = lq.vertex_count();
    for i in 0..n {
        for j in i + 1..n {
            if lq.dims.dims[i] == 0 || lq.dims.dims[j] == 0 {
                continue;
            }
            let k = lq.quiver.arrows(i, j).min(lq.quiver.arrows(j, i));
            if !lemma0_criterion(k as u64) {
                return Some(TwoVertexWitness { i, j, k });
            }
        }
    }
    None
}

/// Three dimension-one vertices pairwise joined in both directions. The
/// two-cycles `x, y, z` and the two three-cycles `t, t'` satisfy
/// `t·t' = x·y·z`: five minimal generators on a four-dimensional quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TriangleWitness {
    pub vertices: [usize; 3],
    /// Arrow counts `i→j, j→i, j→k, k→j, i→k, k→i`.
    pub arrows: [u32; 6],
}

pub fn triangle_obstruction(lq: &LocalQuiver) -> Option<TriangleWitness> {
    let dims = &lq.dims.dims;
    let a = |u: usize, v: usize| lq.quiver.arrows(u, v);
    let n = lq.vertex_count();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if dims[i] != 1 || dims[j] != 1 || dims[k] != 1 {
                    continue;
                }
                let arrows = [a(i, j), a(j, i), a(j, k), a(k, j), a(i, k), a(k, i)];
                if arrows.iter().all(|&c| c >= 1) {
                    return Some(TriangleWitness {
                        vertices: [i, j, k],
                        arrows,
                    });
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilyId {
    /// `(m,1;1,...,1)`, moduli space `P^m`.
    ProjectiveM { m: u32 },
    /// `(2,2;2,1,1)`, moduli space `P^3`.
    Q3,
    /// `(4,2;2,2,2)`, moduli space `P^5`.
    P5,
    /// `(b,b;b,b−1,1)` with `b >= 3`, non-smooth.
    PaperNonsmoothFamily { b: u32 },
}

impl FamilyId {
    pub fn id(&self) -> &'static str {
        match self {
            Self::ProjectiveM { .. } => "projective-m",
            Self::Q3 => "q-iii",
            Self::P5 => "p5",
            Self::PaperNonsmoothFamily { .. } => "paper-nonsmooth-family",
        }
    }

    /// Projective dimension for the smooth families.
    pub fn projective_dim(&self) -> Option<Int> {
        match *self {
            Self::ProjectiveM { m } => Some(m as Int),
            Self::Q3 => Some(3),
            Self::P5 => Some(5),
            Self::PaperNonsmoothFamily { .. } => None,
        }
    }

    pub fn is_smooth(&self) -> bool {
        self.projective_dim().is_some()
    }
}

pub fn family_match(alpha: &DimVector) -> Option<FamilyId> {
    let a = normalize(alpha);
    match (a.left.as_slice(), a.right.as_slice()) {
        ([m, 1], right) if right.len() == *m as usize + 1 && right.iter().all(|&b| b == 1) => {
            Some(FamilyId::ProjectiveM { m: *m })
        }
        ([2, 2], [2, 1, 1]) => Some(FamilyId::Q3),
        ([4, 2], [2, 2, 2]) => Some(FamilyId::P5),
        ([b1, b2], [b3, c, 1]) if b1 == b2 && b2 == b3 && *b1 >= 3 && *c == b1 - 1 => {
            Some(FamilyId::PaperNonsmoothFamily { b: *b1 })
        }
        _ => None,
    }
}

/// The normalized members of the three smooth families within the bounds,
/// with their projective dimensions.
pub fn smooth_family_members(p_max: usize, q_max: usize, n_max: u32) -> Vec<(DimVector, Int)> {
    let mut out = Vec::new();
    for m in 1..n_max {
        let alpha = DimVector::new(vec![m, 1], vec![1; m as usize + 1]);
        out.push((alpha, m as Int));
    }
    out.push(("2,2;2,1,1".parse().expect("literal"), 3));
    out.push(("4,2;2,2,2".parse().expect("literal"), 5));
    out.retain(|(a, _)| {
        let a = normalize(a);
        a.p() <= p_max && a.q() <= q_max && a.left_sum() <= n_max as Int
    });
    out.iter_mut().for_each(|(a, _)| *a = normalize(a));
    out.sort();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Detector {
    TwoVertexK2,
    TriangleRelation,
    PaperChain,
}

impl Detector {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::TwoVertexK2 => "two-vertex-k2",
            Self::TriangleRelation => "triangle-relation",
            Self::PaperChain => "paper-chain",
        }
    }
}

/// One step of a degeneration chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "kebab-case")]
pub enum ChainStep {
    /// A semisimple point of the original moduli space.
    Bipartite {
        decomposition: Decomposition,
        local: QuiverPicture,
    },
    /// A semisimple point of the previous step's local quiver setting.
    General {
        parts: Vec<(GDimVector, u32)>,
        local: QuiverPicture,
    },
}

impl ChainStep {
    pub fn local(&self) -> &QuiverPicture {
        match self {
            Self::Bipartite { local, .. } | Self::General { local, .. } => local,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Witness {
    TwoVertex(TwoVertexWitness),
    Triangle(TriangleWitness),
    Paper { b: u32, figures: Vec<FigureCheck> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub detector: Detector,
    pub chain: Vec<ChainStep>,
    pub witness: Witness,
}

impl Certificate {
    fn from_decomposition(
        detector: Detector,
        decomposition: Decomposition,
        local: LocalQuiver,
        witness: Witness,
    ) -> Self {
        Self {
            detector,
            chain: vec![ChainStep::Bipartite {
                decomposition,
                local: QuiverPicture::of(&local),
            }],
            witness,
        }
    }

    /// Re-runs the detector on the stored chain and checks it reproduces the
    /// stored witness.
    pub fn replay(&self, rule: ExceptionRule) -> bool {
        match (&self.detector, &self.witness) {
            (Detector::TwoVertexK2 | Detector::TriangleRelation, w) => {
                let [ChainStep::Bipartite {
                    decomposition,
                    local,
                }] = self.chain.as_slice()
                else {
                    return false;
                };
                let Ok(recomputed) = local_quiver(decomposition) else {
                    return false;
                };
                if QuiverPicture::of(&recomputed) != *local {
                    return false;
                }
                match w {
                    Witness::TwoVertex(t) => two_vertex_obstruction(&recomputed) == Some(*t),
                    Witness::Triangle(t) => triangle_obstruction(&recomputed) == Some(*t),
                    Witness::Paper { .. } => false,
                }
            }
            (Detector::PaperChain, Witness::Paper { b, .. }) => {
                let b = *b;
                let alpha = DimVector::new(vec![b, b], vec![b, b - 1, 1]);
                paper_chain(&alpha, rule).as_ref() == Some(self)
            }
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum VerdictKind {
    SmoothProjSpace {
        dim: Int,
    },
    NonSmoothCertified {
        certificate: Certificate,
    },
    /// `certificate` is absent when the published chain is not a valid
    /// degeneration under the chosen exception rule.
    NonSmoothByPaper {
        reference: String,
        certificate: Option<Certificate>,
    },
    NoStableLocus,
    PointSpace,
    Undecided,
}

impl VerdictKind {
    pub fn name(&self) -> &'static str {
        match self {
            Self::SmoothProjSpace { .. } => "SmoothProjSpace",
            Self::NonSmoothCertified { .. } => "NonSmoothCertified",
            Self::NonSmoothByPaper { .. } => "NonSmoothByPaper",
            Self::NoStableLocus => "NoStableLocus",
            Self::PointSpace => "PointSpace",
            Self::Undecided => "Undecided",
        }
    }

    pub fn dim(&self) -> Option<Int> {
        match self {
            Self::SmoothProjSpace { dim } => Some(*dim),
            Self::PointSpace => Some(0),
            _ => None,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Self::NonSmoothCertified { certificate } => Some(certificate),
            Self::NonSmoothByPaper { certificate, .. } => certificate.as_ref(),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub alpha: DimVector,
    pub kind: VerdictKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassifyOptions {
    pub rule: ExceptionRule,
    pub max_parts: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            rule: ExceptionRule::default(),
            max_parts: DEFAULT_MAX_PARTS,
        }
    }
}

pub const NONSMOOTH_REFERENCE: &str =
    "(b,b;b,b-1,1), b >= 3: non-smooth by the published degeneration chains";

fn pair_certificate(
    alpha: &DimVector,
    beta: DimVector,
    gamma: DimVector,
    rule: ExceptionRule,
) -> Result<Certificate, SmoothnessError> {
    let parts = if beta == gamma {
        vec![Part::distinct(beta, 2)]
    } else {
        vec![Part::new(beta, 1), Part::new(gamma, 1)]
    };
    let decomposition = Decomposition::new(alpha, parts, rule)?;
    let local = local_quiver(&decomposition)?;
    let witness = two_vertex_obstruction(&local).expect("pair with k >= 2 is obstructed");
    Ok(Certificate::from_decomposition(
        Detector::TwoVertexK2,
        decomposition,
        local,
        Witness::TwoVertex(witness),
    ))
}

/// Runs both detectors over every enumerated degeneration, returning the first
/// certificate.
pub fn search_obstruction(
    alpha: &DimVector,
    opts: ClassifyOptions,
) -> Result<Option<Certificate>, SmoothnessError> {
    let found = visit_decompositions(alpha, opts.max_parts, opts.rule, |d| {
        let local = match local_quiver(&d) {
            Ok(l) => l,
            Err(e) => return ControlFlow::Break(Err(e)),
        };
        if let Some(w) = two_vertex_obstruction(&local) {
            return ControlFlow::Break(Ok(Certificate::from_decomposition(
                Detector::TwoVertexK2,
                d,
                local,
                Witness::TwoVertex(w),
            )));
        }
        if let Some(w) = triangle_obstruction(&local) {
            return ControlFlow::Break(Ok(Certificate::from_decomposition(
                Detector::TriangleRelation,
                d,
                local,
                Witness::Triangle(w),
            )));
        }
        ControlFlow::Continue(())
    });
    match found {
        None => Ok(None),
        Some(r) => Ok(Some(r?)),
    }
}

/// Classifies the moduli space of the normalized form of `alpha`.
pub fn classify(alpha: &DimVector, opts: ClassifyOptions) -> Result<Verdict, SmoothnessError> {
    classify_with_pairwise(alpha, opts).map(|(v, _)| v)
}

/// [`classify`] together with the pairwise outcome, when the test applies.
pub fn classify_with_pairwise(
    alpha: &DimVector,
    opts: ClassifyOptions,
) -> Result<(Verdict, Option<PairwiseOutcome>), SmoothnessError> {
    if theta_pairing(alpha) != 0 {
        return Err(StabilityError::Unbalanced(alpha.to_string()).into());
    }
    if alpha.is_zero() {
        return Err(StabilityError::Zero.into());
    }
    let alpha = normalize(alpha);
    let verdict = |kind| Verdict {
        alpha: alpha.clone(),
        kind,
    };
    match stable_exists(&alpha, opts.rule)? {
        StableExistence::None { .. } => return Ok((verdict(VerdictKind::NoStableLocus), None)),
        StableExistence::Point => {
            return Ok((
                verdict(VerdictKind::PointSpace),
                Some(PairwiseOutcome::Pass),
            ))
        }
        StableExistence::Yes => {}
    }
    let pairwise = pairwise_test(&alpha, opts.rule)?;
    if let PairwiseOutcome::Fail { beta, gamma, .. } = &pairwise {
        let certificate = pair_certificate(&alpha, beta.clone(), gamma.clone(), opts.rule)?;
        return Ok((
            verdict(VerdictKind::NonSmoothCertified { certificate }),
            Some(pairwise),
        ));
    }
    if let Some(certificate) = search_obstruction(&alpha, opts)? {
        return Ok((
            verdict(VerdictKind::NonSmoothCertified { certificate }),
            Some(pairwise),
        ));
    }
    let kind = match family_match(&alpha) {
        Some(f) if f.is_smooth() => VerdictKind::SmoothProjSpace {
            dim: moduli_dimension(&alpha, opts.rule)?,
        },
        Some(FamilyId::PaperNonsmoothFamily { .. }) => VerdictKind::NonSmoothByPaper {
            reference: NONSMOOTH_REFERENCE.to_string(),
            certificate: paper_chain(&alpha, opts.rule),
        },
        _ => VerdictKind::Undecided,
    };
    Ok((verdict(kind), Some(pairwise)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{GDimVector, GeneralQuiver};

    const C: ExceptionRule = ExceptionRule::Corrected;

    fn dv(s: &str) -> DimVector {
        s.parse().unwrap()
    }

    fn lq(arrows: Vec<Vec<u32>>, dims: Vec<u32>) -> LocalQuiver {
        LocalQuiver {
            quiver: GeneralQuiver::new(arrows).unwrap(),
            dims: GDimVector::new(dims),
            summands: crate::local::LocalSummands::General(vec![]),
        }
    }

    #[test]
    fn lemma0_examples() {
        assert!(lemma0_criterion(0));
        assert!(lemma0_criterion(1));
        assert!(!lemma0_criterion(2));
    }

    #[test]
    fn pairwise_examples() {
        assert_eq!(
            pairwise_test(&dv("4,3;3,2,2"), C).unwrap(),
            PairwiseOutcome::Fail {
                beta: dv("1,0;0,1,0"),
                gamma: dv("3,3;3,1,2"),
                k: 2
            }
        );
        assert_eq!(
            pairwise_test(&dv("2,2;2,1,1"), C).unwrap(),
            PairwiseOutcome::Pass
        );
        assert_eq!(
            pairwise_test(&dv("1,1;1,1"), C).unwrap(),
            PairwiseOutcome::Pass
        );
        assert_eq!(pairwise_test(&dv("1;1"), C).unwrap(), PairwiseOutcome::Pass);
        assert!(pairwise_test(&dv("2,2;2,2"), C).is_err());
    }

    #[test]
    fn epsilon_split_examples() {
        let a = dv("4,3;3,2,2");
        assert!(epsilon_split_smooth(&a, 0, 0, C).unwrap());
        assert!(!epsilon_split_smooth(&a, 0, 1, C).unwrap());
        assert!(epsilon_split_smooth(&dv("2,2;2,1,1"), 0, 0, C).unwrap());
        assert!(matches!(
            epsilon_split_smooth(&dv("2,0;1,1"), 1, 0, C),
            Err(SmoothnessError::InvalidSplit { .. })
        ));
        assert!(epsilon_split_smooth(&a, 2, 0, C).is_err());
    }

    #[test]
    fn detector_examples() {
        let tri = lq(
            vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]],
            vec![1, 1, 1],
        );
        assert_eq!(
            triangle_obstruction(&tri),
            Some(TriangleWitness {
                vertices: [0, 1, 2],
                arrows: [1; 6]
            })
        );
        let path = lq(
            vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]],
            vec![1, 3, 2],
        );
        assert_eq!(triangle_obstruction(&path), None);
        let fat = lq(
            vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]],
            vec![2, 1, 1],
        );
        assert_eq!(triangle_obstruction(&fat), None);

        let k2 = lq(vec![vec![0, 2], vec![2, 0]], vec![1, 1]);
        assert_eq!(
            two_vertex_obstruction(&k2),
            Some(TwoVertexWitness { i: 0, j: 1, k: 2 })
        );
        let k1 = lq(vec![vec![5, 1], vec![1, 3]], vec![1, 1]);
        assert_eq!(two_vertex_obstruction(&k1), None);
        let single = lq(vec![vec![4]], vec![3]);
        assert_eq!(two_vertex_obstruction(&single), None);
    }

    #[test]
    fn family_examples() {
        assert_eq!(
            family_match(&dv("3,1;1,1,1,1")),
            Some(FamilyId::ProjectiveM { m: 3 })
        );
        assert_eq!(
            family_match(&dv("4,2;2,2,2")).unwrap().projective_dim(),
            Some(5)
        );
        assert_eq!(
            family_match(&dv("3,3;3,2,1")),
            Some(FamilyId::PaperNonsmoothFamily { b: 3 })
        );
        assert_eq!(family_match(&dv("2,2;2,1,1")), Some(FamilyId::Q3));
        assert_eq!(
            family_match(&dv("1,1,1;2,1")),
            Some(FamilyId::ProjectiveM { m: 2 })
        );
        assert_eq!(family_match(&dv("3,2;2,2,1")), None);
    }

    #[test]
    fn classify_examples() {
        let opts = ClassifyOptions::default();
        let v = classify(&dv("3,1;1,1,1,1"), opts).unwrap();
        assert_eq!(v.kind, VerdictKind::SmoothProjSpace { dim: 3 });
        let v = classify(&dv("2,2;2,2"), opts).unwrap();
        assert_eq!(v.kind, VerdictKind::NoStableLocus);
        let v = classify(&dv("1,0;0,1"), opts).unwrap();
        assert_eq!(v.kind, VerdictKind::PointSpace);
        let v = classify(&dv("4,3;3,2,2"), opts).unwrap();
        let cert = v.kind.certificate().unwrap();
        assert_eq!(cert.detector, Detector::TwoVertexK2);
        assert!(matches!(
            cert.witness,
            Witness::TwoVertex(TwoVertexWitness { k: 2, .. })
        ));
        assert!(cert.replay(C));
        assert!(classify(&dv("3,1;1,1,1"), opts).is_err());
    }

    #[test]
    fn tampered_certificate_does_not_replay() {
        let v = classify(&dv("4,3;3,2,2"), ClassifyOptions::default()).unwrap();
        let mut cert = v.kind.certificate().unwrap().clone();
        if let Witness::TwoVertex(w) = &mut cert.witness {
            w.k = 3;
        }
        assert!(!cert.replay(C));
    }
}
