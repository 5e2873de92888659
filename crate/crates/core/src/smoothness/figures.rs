//! Degeneration chains for the non-smooth family `(b,b;b,b−1,1)` and checks of
//! the local quivers drawn for them.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{Certificate, ChainStep, Detector, Witness};
use crate::linalg::{exact_jacobian, Matrix, Rational};
use crate::local::{local_quiver, local_quiver_general, Decomposition, LocalQuiver, Part};
use crate::quiver::{euler_form_general, DimVector, GDimVector, Int};
use crate::stability::ExceptionRule;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverPicture {
    pub dims: Vec<u32>,
    pub arrows: Vec<Vec<u32>>,
}

impl QuiverPicture {
    pub fn of(lq: &LocalQuiver) -> Self {
        Self {
            dims: lq.dims.dims.clone(),
            arrows: lq.quiver.arrows.clone(),
        }
    }
}

/// A drawn local quiver next to the one computed from the same degeneration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FigureCheck {
    pub name: String,
    pub drawn: QuiverPicture,
    pub computed: QuiverPicture,
    /// Equal up to relabelling the vertices.
    pub matches: bool,
}

/// Isomorphism of dimensioned quivers, by brute force over vertex orderings.
pub fn isomorphic(a: &QuiverPicture, b: &QuiverPicture) -> bool {
    let n = a.dims.len();
    if b.dims.len() != n {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        (0..n).all(|i| a.dims[i] == b.dims[p[i]])
            && (0..n).all(|i| (0..n).all(|j| a.arrows[i][j] == b.arrows[p[i]][p[j]]))
    })
}

fn permutations(p: &mut [usize], k: usize, test: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if k == p.len() {
        return test(p);
    }
    for i in k..p.len() {
        p.swap(k, i);
        if permutations(p, k + 1, test) {
            return true;
        }
        p.swap(k, i);
    }
    false
}

fn check(name: &str, drawn: QuiverPicture, computed: &LocalQuiver) -> FigureCheck {
    let computed = QuiverPicture::of(computed);
    FigureCheck {
        name: name.to_string(),
        matches: isomorphic(&drawn, &computed),
        drawn,
        computed,
    }
}

fn dv(left: Vec<u32>, right: Vec<u32>) -> DimVector {
    DimVector::new(left, right)
}

/// The degeneration `(1,0;0,0,1) ⊕ (1,0;0,1,0)^{b−1} ⊕ (0,1;1,0,0)^b`.
pub fn path_decomposition(b: u32, rule: ExceptionRule) -> Option<Decomposition> {
    let alpha = dv(vec![b, b], vec![b, b - 1, 1]);
    let parts = vec![
        Part::new(dv(vec![1, 0], vec![0, 0, 1]), 1),
        Part::new(dv(vec![1, 0], vec![0, 1, 0]), b - 1),
        Part::new(dv(vec![0, 1], vec![1, 0, 0]), b),
    ];
    Decomposition::new(&alpha, parts, rule).ok()
}

/// The degeneration `(1,1;1,0,1) ⊕ (1,1;1,1,0)^{b−1}`.
pub fn loop_decomposition(b: u32, rule: ExceptionRule) -> Option<Decomposition> {
    let alpha = dv(vec![b, b], vec![b, b - 1, 1]);
    let parts = vec![
        Part::new(dv(vec![1, 1], vec![1, 0, 1]), 1),
        Part::new(dv(vec![1, 1], vec![1, 1, 0]), b - 1),
    ];
    Decomposition::new(&alpha, parts, rule).ok()
}

/// Degeneration chain for `(b,b;b,b−1,1)`, `b >= 3`: the path degeneration for
/// `b = 3`, the loop degeneration followed by one further descent otherwise.
///
/// Returns `None` for vectors outside the family, and when a summand of the
/// chain has no stables under `rule`.
pub fn paper_chain(alpha: &DimVector, rule: ExceptionRule) -> Option<Certificate> {
    let a = crate::quiver::normalize(alpha);
    let b = *a.left.first()?;
    if b < 3 || a != dv(vec![b, b], vec![b, b - 1, 1]) {
        return None;
    }
    let (chain, figures) = if b == 3 {
        let d = path_decomposition(b, rule)?;
        let local = local_quiver(&d).ok()?;
        let drawn = QuiverPicture {
            dims: vec![1, 3, 2],
            arrows: vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]],
        };
        let fig = check("path", drawn, &local);
        (
            vec![ChainStep::Bipartite {
                decomposition: d,
                local: QuiverPicture::of(&local),
            }],
            vec![fig],
        )
    } else {
        let d = loop_decomposition(b, rule)?;
        let first = local_quiver(&d).ok()?;
        let big = first.dims.dims.iter().position(|&m| m == b - 1)?;
        let small = 1 - big;
        let mut simple = vec![0; 2];
        simple[small] = 1;
        simple[big] = 1;
        let mut rest = vec![0; 2];
        rest[big] = 1;
        let parts = vec![(GDimVector::new(simple), 1), (GDimVector::new(rest), b - 2)];
        let second = local_quiver_general(&first.quiver, &first.dims, &parts).ok()?;
        let loop_drawn = QuiverPicture {
            dims: vec![1, b - 1],
            arrows: vec![vec![1, 1], vec![1, 1]],
        };
        let descent_drawn = QuiverPicture {
            dims: vec![1, 1],
            arrows: vec![vec![0, b - 1], vec![b - 1, 0]],
        };
        let figs = vec![
            check("loop", loop_drawn, &first),
            check("descent", descent_drawn, &second),
        ];
        (
            vec![
                ChainStep::Bipartite {
                    decomposition: d,
                    local: QuiverPicture::of(&first),
                },
                ChainStep::General {
                    parts,
                    local: QuiverPicture::of(&second),
                },
            ],
            figs,
        )
    };
    Some(Certificate {
        detector: Detector::PaperChain,
        chain,
        witness: Witness::Paper { b, figures },
    })
}

/// Jacobian evidence on the path local quiver `A ⇄ C ⇄ B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceIndependence {
    pub dims: Vec<u32>,
    /// `tr P, tr R, tr R², tr PR, tr PR²` with `P`, `R` the two-cycles at `C`.
    pub generators: usize,
    /// Minimum and maximum rank over the sampled points.
    pub min_rank: usize,
    pub max_rank: usize,
    /// `1 − χ(β,β)` for the dimension vector `β` of the path setting.
    pub quotient_dim: Int,
    pub points: usize,
}

struct PathShape {
    center: usize,
    leaves: [usize; 2],
}

fn path_shape(lq: &LocalQuiver) -> Option<PathShape> {
    let n = lq.vertex_count();
    if n != 3 || (0..n).any(|i| lq.quiver.loops(i) != 0) {
        return None;
    }
    let center = (0..n).find(|&c| (0..n).all(|v| v == c || lq.quiver.arrows(c, v) == 1))?;
    let leaves: Vec<usize> = (0..n).filter(|&v| v != center).collect();
    let [a, b] = [leaves[0], leaves[1]];
    let ok = lq.quiver.arrows(a, center) == 1
        && lq.quiver.arrows(b, center) == 1
        && lq.quiver.arrows(a, b) == 0
        && lq.quiver.arrows(b, a) == 0;
    ok.then_some(PathShape {
        center,
        leaves: [a, b],
    })
}

/// Samples the Jacobian of the five cycle traces on the path setting of
/// `lq`. `None` if `lq` is not a path on three vertices.
pub fn path_trace_independence(
    lq: &LocalQuiver,
    points: usize,
    rng: &mut impl Rng,
) -> Option<TraceIndependence> {
    let shape = path_shape(lq)?;
    let d = |v: usize| lq.dims.dims[v] as usize;
    let (c, a, b) = (shape.center, shape.leaves[0], shape.leaves[1]);
    // x: A→C, y: C→A, z: B→C, w: C→B as (rows, cols)
    let blocks = [(d(c), d(a)), (d(a), d(c)), (d(c), d(b)), (d(b), d(c))];
    let coords: usize = blocks.iter().map(|(r, s)| r * s).sum();
    let traces = |v: &[Rational]| -> Vec<Rational> {
        let mut offset = 0;
        let mats: Vec<Matrix> = blocks
            .iter()
            .map(|&(r, s)| {
                let rows = (0..r)
                    .map(|i| v[offset + i * s..offset + (i + 1) * s].to_vec())
                    .collect();
                offset += r * s;
                Matrix::from_rows(rows)
            })
            .collect();
        let p = mats[0].mul(&mats[1]).expect("shapes");
        let r = mats[2].mul(&mats[3]).expect("shapes");
        let r2 = r.mul(&r).expect("shapes");
        let pr = p.mul(&r).expect("shapes");
        let pr2 = pr.mul(&r).expect("shapes");
        [p, r, r2, pr, pr2]
            .iter()
            .map(|m| m.trace().expect("square"))
            .collect()
    };
    let mut ranks = Vec::with_capacity(points);
    for _ in 0..points {
        let point = crate::semiinv::random_point(coords, rng);
        ranks.push(exact_jacobian(traces, &point, 6).rank());
    }
    let chi = euler_form_general(&lq.quiver, &lq.dims, &lq.dims).ok()?;
    Some(TraceIndependence {
        dims: lq.dims.dims.clone(),
        generators: 5,
        min_rank: *ranks.iter().min()?,
        max_rank: *ranks.iter().max()?,
        quotient_dim: 1 - chi,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const C: ExceptionRule = ExceptionRule::Corrected;

    #[test]
    fn path_chain_matches_drawing() {
        let cert = paper_chain(&"3,3;3,2,1".parse().unwrap(), C).unwrap();
        let Witness::Paper { b: 3, figures } = &cert.witness else {
            panic!()
        };
        assert_eq!(figures.len(), 1);
        assert!(figures[0].matches);
        assert!(cert.replay(C));
    }

    #[test]
    fn descent_drawing_differs() {
        let cert = paper_chain(&"4,4;4,3,1".parse().unwrap(), C).unwrap();
        let Witness::Paper { figures, .. } = &cert.witness else {
            panic!()
        };
        assert!(figures[0].matches);
        assert!(!figures[1].matches);
        assert_eq!(figures[1].computed.dims, vec![1, 2]);
        assert_eq!(figures[1].computed.arrows, vec![vec![3, 1], vec![1, 1]]);
        assert!(paper_chain(&"2,2;2,1,1".parse().unwrap(), C).is_none());
        assert!(paper_chain(&"3,3;3,3".parse().unwrap(), C).is_none());
    }

    #[test]
    fn isomorphism_respects_dims() {
        let a = QuiverPicture {
            dims: vec![1, 2],
            arrows: vec![vec![0, 1], vec![2, 0]],
        };
        let b = QuiverPicture {
            dims: vec![2, 1],
            arrows: vec![vec![0, 2], vec![1, 0]],
        };
        assert!(isomorphic(&a, &b));
        let c = QuiverPicture {
            dims: vec![1, 2],
            arrows: vec![vec![0, 2], vec![1, 0]],
        };
        assert!(!isomorphic(&a, &c));
    }

    #[test]
    fn path_traces_are_independent() {
        let lq = local_quiver(&path_decomposition(3, C).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let t = path_trace_independence(&lq, 2, &mut rng).unwrap();
        assert_eq!((t.min_rank, t.max_rank, t.quotient_dim), (5, 5, 5));
    }
}
