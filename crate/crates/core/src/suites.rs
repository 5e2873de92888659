//! Seeded randomized property suites over exact rationals.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::linalg::{exact_jacobian, random_nonzero_rational, rat, Matrix, Rational};
use crate::quiver::{
    euler_form, euler_matrix, BipartiteShape, DimVector, GDimVector, GeneralQuiver, Int,
};
use crate::semiinv::{
    act, chi_theta, eval_semiinvariant, in_u, lemma0_invariants, moduli_coordinates_qm, qiii_alpha,
    qiii_generators, qiii_witness, qm_alpha, qm_generators, qm_witness, random_point, GroupElement,
    ProjectivePoint, Representation, SemiInvError, SemiInvariantSpec,
};

pub const SUITES: &[&str] = &[
    "euler",
    "euler-bilinear",
    "equivariance",
    "act-composition",
    "multilinearity",
    "qm-witness",
    "qm-surjective",
    "in-u",
    "moduli-invariance",
    "qiii-jacobian",
    "qiii-witness",
    "lemma0",
    "triangle",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        format!(
            "{:<18} seed {:<6} {:>5} trials  {:>5} passed  {}",
            self.suite,
            self.seed,
            self.trials,
            self.trials.saturating_sub(self.failures.len()),
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

struct Run {
    trials: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Run {
    fn new() -> Self {
        Self {
            trials: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.trials += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn check_result(&mut self, r: Result<bool, SemiInvError>, what: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.check(ok, what),
            Err(e) => self.check(false, || format!("{}: {e}", what())),
        }
    }
}

/// Per-suite stream so one suite's draws do not depend on which others ran.
fn rng_for(name: &str, seed: u64) -> ChaCha8Rng {
    let salt = name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x100_0000_01b3)
    });
    ChaCha8Rng::seed_from_u64(seed ^ salt)
}

pub fn run_suite(name: &str, seed: u64) -> Option<SuiteReport> {
    let mut rng = rng_for(name, seed);
    let run = match name {
        "euler" => euler(&mut rng),
        "euler-bilinear" => euler_bilinear(&mut rng),
        "equivariance" => equivariance(&mut rng),
        "act-composition" => act_composition(&mut rng),
        "multilinearity" => multilinearity(&mut rng),
        "qm-witness" => qm_witness_suite(&mut rng),
        "qm-surjective" => qm_surjective(&mut rng),
        "in-u" => in_u_suite(&mut rng),
        "moduli-invariance" => moduli_invariance(&mut rng),
        "qiii-jacobian" => qiii_jacobian(&mut rng),
        "qiii-witness" => qiii_witness_suite(&mut rng),
        "lemma0" => lemma0(&mut rng),
        "triangle" => triangle(&mut rng),
        _ => return None,
    };
    Some(SuiteReport {
        suite: name.to_string(),
        seed,
        trials: run.trials,
        failures: run.failures,
        notes: run.notes,
    })
}

pub fn run_all(seed: u64) -> Vec<SuiteReport> {
    SUITES
        .iter()
        .map(|s| run_suite(s, seed).expect("known suite"))
        .collect()
}

fn random_vector(p: usize, q: usize, rng: &mut impl Rng) -> DimVector {
    DimVector::new(
        (0..p).map(|_| rng.gen_range(0..=9)).collect(),
        (0..q).map(|_| rng.gen_range(0..=9)).collect(),
    )
}

fn as_general(v: &DimVector) -> GDimVector {
    GDimVector::new(v.entries().collect())
}

fn block_form(shape: BipartiteShape, a: &DimVector, b: &DimVector) -> Int {
    let e = euler_matrix(&shape.as_general());
    let (x, y) = (as_general(a), as_general(b));
    let mut acc = 0;
    for (i, row) in e.iter().enumerate() {
        for (j, eij) in row.iter().enumerate() {
            acc += x.dims[i] as Int * eij * y.dims[j] as Int;
        }
    }
    acc
}

fn euler(rng: &mut ChaCha8Rng) -> Run {
    let mut run = Run::new();
    for _ in 0..1000 {
        let (p, q) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let shape = BipartiteShape::new(p, q).expect("non-empty");
        let a = random_vector(p, q, rng);
        let b = random_vector(p, q, rng);
        let lhs = euler_form(&a, &b).expect("same shape");
        let rhs = block_form(shape, &a, &b);
        run.check(lhs == rhs, || {
            format!("χ({a}, {b}) = {lhs}, block form {rhs}")
        });
    }
    run
}

fn euler_bilinear(rng: &mut ChaCha8Rng) -> Run {
    let mut run = Run::new();
    for _ in 0..500 {
        let (p, q) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let a = random_vector(p, q, rng);
        let a2 = random_vector(p, q, rng);
        let b = random_vector(p, q, rng);
        let sum = a.add(&a2).expect("same shape");
        let chi = |x: &DimVector, y: &DimVector| euler_form(x, y).expect("same shape");
        run.check(chi(&sum, &b) == chi(&a, &b) + chi(&a2, &b), || {
            format!("additivity fails for {a} + {a2} against {b}")
        });
        run.check(chi(&b, &sum) == chi(&b, &a) + chi(&b, &a2), || {
            format!("additivity fails for {b} against {a} + {a2}")
        });
    }
    run
}

fn test_quivers() -> Vec<(String, DimVector, Vec<SemiInvariantSpec>)> {
    let mut out: Vec<_> = (1..=4)
        .map(|m| (format!("Q_{m}"), qm_alpha(m), qm_generators(m)))
        .collect();
    out.push(("Q_III".into(), qiii_alpha(), qiii_generators()));
    out
}

fn random_spec(alpha: &DimVector, degree: usize, rng: &mut impl Rng) -> SemiInvariantSpec {
    SemiInvariantSpec::new(
        degree,
        Matrix::random(degree * alpha.q(), degree * alpha.p(), rng),
    )
}

fn equivariance(rng: &mut ChaCha8Rng) -> Run {
    let mut run = Run::new();
    for (name, alpha, gens) in test_quivers() {
        for _ in 0..100 {
            let v = Representation::random(&alpha, rng);
            let g = GroupElement::random(&alpha, rng);
            let mut specs = gens.clone();
            specs.push(random_spec(&alpha, 1, rng));
            specs.push(random_spec(&alpha, 2, rng));
            let check = || -> Result<bool, SemiInvError> {
                let gv = act(&g, &v)?;
                let chi = chi_theta(&g)?;
                for s in &specs {
                    let lhs = eval_semiinvariant(s, &gv)?;
                    let mut rhs = eval_semiinvariant(s, &v)?;
                    for _ in 0..s.degree {
                        rhs *= &chi;
                    }
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
                Ok(true)
            };
            run.check_result(check(), || format!("{name}: f(V^g) ≠ χ(g)^l f(V)"));
        }
    }
    run
}

fn act_composition(rng: &mut ChaCha8Rng) -> Run {
    let mut run = Run::new();
    for (name, alpha, _) in test_quivers() {
        for _ in 0..20 {
            let v = Representation::random(&alpha, rng);
            let g = GroupElement::random(&alpha, rng);
            let h = GroupElement::random(&alpha, rng);
            let check = || -> Result<bool, SemiInvError> {
                let lhs = act(&g, &act(&h, &v)?)?;
                let rhs = act(&g.compose(&h)?, &v)?;
                let id = act(&GroupElement::identity(&alpha), &v)?;
                Ok(lhs == rhs && id == v)
            };
            run.check_result(check(), || {
                format!("{name}: act(g, act(h, V)) ≠ act(gh, V)")
            });
        }
    }
    run
}

fn multilinearity(rng: &mut ChaCha8Rng) -> Run {
    let mut run = Run::new();
    for (name, alpha, _) in test_quivers() {
        for _ in 0..20 {
            let v = Representation::random(&alpha, rng);
            let base = random_spec(&alpha, 1, rng);
            // the determinant is linear only in rows feeding a one-dimensional W_j
            let linear_rows: Vec<usize> = (0..base.coeff.rows())
                .filter(|r| alpha.right[r % alpha.q()] == 1)
                .collect();
            let r = linear_rows[rng.gen_range(0..linear_rows.len())];
            let (lambda, mu) = (random_nonzero_rational(rng), random_nonzero_rational(rng));
            let u = Matrix::random(1, base.coeff.cols(), rng);
            let w = Matrix::random(1, base.coeff.cols(), rng);
            let with_row = |row: &[Rational]| {
                let mut c = base.coeff.clone();
                for (j, x) in row.iter().enumerate() {
                    c[(r, j)] = x.clone();
                }
                SemiInvariantSpec::new(1, c)
            };
            let mixed: Vec<Rational> = (0..u.cols())
                .map(|j| &lambda * &u[(0, j)] + &mu * &w[(0, j)])
                .collect();
            let check = || -> Result<bool, SemiInvError> {
                let lhs = eval_semiinvariant(&with_row(&mixed), &v)?;
                let rhs = &lambda * eval_semiinvariant(&with_row(u.row(0)), &v)?
                    + &mu * eval_semiinvariant(&with_row(w.row(0)), &v)?;
                Ok(lhs == rhs)
            };
            run.check_result(check(), || format!("{name}: row {r} is not linear"));
        }
    }
    run
}

/// Sign of `T_i / x_i` on the `Q_m` witness: `−1` for `i <= m`, `+1` for `i = m+1`.
pub fn qm_sign_pattern(m: usize) -> Result<Vec<i8>, SemiInvError> {
    let x: Vec<Rational> = (0..=m).map(|i| rat(i as i64 + 2)).collect();
    let rep = qm_witness(m, &x)?;
    qm_generators(m)
        .iter()
        .zip(&x)
        .map(|(t, xi)| {
            let v = eval_semiinvariant(t, &rep)?;
            Ok(if v == *xi {
                1
            } else if v == -xi.clone() {
                -1
            } else {
                0
            })
        })
        .collect()
}

fn qm_witness_suite(rng: &mut ChaCha8Rng) -> Run {
    let mut run = Run::new();
    for m in 1..=6 {
        match qm_sign_pattern(m) {
            Ok(s) => run
                .notes
                .push(format!("m={m}: T_i = s_i x_i with s = {s:?}")),
            Err(e) => run.failures.push(format!("m={m}: {e}")),
        }
        for _ in 0..100 {
            let x: Vec<Rational> = (0..=m).map(|_| random_nonzero_rational(rng)).collect();
            let check = || -> Result<bool, SemiInvError> {
                let rep = qm_witness(m, &x)?;
                for (t, xi) in qm_generators(m).iter().zip(&x) {
                    if eval_semiinvariant(t, &rep)?.abs() != xi.abs() {
                        return Ok(false);
                    }
                }
                Ok(true)
            };
            run.check_result(check(), || format!("m={m}: |T_i| ≠ |x_i| at {x:?}"));
        }
    }
    run
}

/// Every point of `P^m` is the image of a witness after the sign correction.
fn qm_surjective(rng: &mut ChaCha8Rng) -> Run {
    let mut run = Run::new();
    for m in 1..=6 {
        let signs = match qm_sign_pattern(m) {
            Ok(s) => s,
            Err(e) => {
                run.failures.push(format!("m={m}: {e}"));
                continue;
            }
        };
        for _ in 0..20 {
            let y = loop {
                let y = random_point(m + 1, rng);
                if y.iter().any(|c| !c.is_zero()) {
                    break y;
                }
            };
            let x: Vec<Rational> = y
                .iter()
                .zip(&signs)
                .map(|(c, &s)| c * rat(s as i64))
                .collect();
            let target = ProjectivePoint::new(y.clone()).expect("nonzero");
            let check = || -> Result<bool, SemiInvError> {
                Ok(moduli_coordinates_qm(&qm_witness(m, &x)?)? == target)
            };
            run.check_result(check(), || format!("m={m}: {target} is not hit"));
        }
    }
    run
}

fn in_u_suite(rng: &mut ChaCha8Rng) -> Run {
    let mut run = Run::new();
    let mut in_u_count = 0;
    for trial in 0..200 {
        let m = trial % 4 + 1;
        let rep = Representation::random(&qm_alpha(m), rng);
        let mut check = || -> Result<bool, SemiInvError> {
            if !in_u(&rep)? {
                return Ok(true);
            }
            in_u_count += 1;
            Ok(moduli_coordinates_qm(&rep).is_ok())
        };
        run.check_result(check(), || format!("m={m}: in U but every T_i vanishes"));
    }
    run.notes.push(format!(
        "{in_u_count} of 200 random representations lie in U"
    ));
    run
}

fn moduli_invariance(rng: &mut ChaCha8Rng) -> Run {
    let mut run = Run::new();
    for trial in 0..100 {
        let m = trial % 4 + 1;
        let alpha = qm_alpha(m);
        let rep = Representation::random(&alpha, rng);
        let g = GroupElement::random(&alpha, rng);
        let check = || -> Result<bool, SemiInvError> {
            match moduli_coordinates_qm(&rep) {
                Ok(pt) => Ok(moduli_coordinates_qm(&act(&g, &rep)?)? == pt),
                Err(SemiInvError::AllZero) => Ok(true),
                Err(e) => Err(e),
            }
        };
        run.check_result(check(), || format!("m={m}: point moves under the group"));
    }
    run
}

fn qiii_values(x: &[Rational]) -> Vec<Rational> {
    let gens = qiii_generators();
    let base = Representation::zero(&qiii_alpha());
    let rep = base.with_coordinates(x);
    gens.iter()
        .map(|t| eval_semiinvariant(t, &rep).expect("balanced"))
        .collect()
}

fn qiii_jacobian(rng: &mut ChaCha8Rng) -> Run {
    let mut run = Run::new();
    let coords = Representation::zero(&qiii_alpha()).coordinates().len();
    for _ in 0..100 {
        let point = random_point(coords, rng);
        let rank = exact_jacobian(qiii_values, &point, 4).rank();
        run.check(rank == 4, || format!("Jacobian rank {rank} at {point:?}"));
    }
    run
}

/// Records `T_1..T_4` on the displayed witness; the identity `T_i = x_i` is
/// reported, not asserted.
fn qiii_witness_suite(rng: &mut ChaCha8Rng) -> Run {
    let mut run = Run::new();
    let mut matches = 0;
    for _ in 0..20 {
        let x: Vec<Rational> = (0..4).map(|_| random_nonzero_rational(rng)).collect();
        let mut check = || -> Result<bool, SemiInvError> {
            let rep = qiii_witness(&x)?;
            let t: Vec<Rational> = qiii_generators()
                .iter()
                .map(|s| eval_semiinvariant(s, &rep))
                .collect::<Result<_, _>>()?;
            if t == x {
                matches += 1;
            }
            if run.notes.is_empty() {
                let show = |v: &[Rational]| {
                    v.iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(", ")
                };
                run.notes
                    .push(format!("x = ({}) gives T = ({})", show(&x), show(&t)));
            }
            Ok(t[0].is_zero() && t[1].is_zero())
        };
        let r = check();
        run.check_result(r, || "T_1, T_2 do not vanish on the witness".into());
    }
    run.notes.push(format!(
        "T_i = x_i holds on {matches} of 20 witnesses; claim DISPUTED, independence rests on the Jacobian suite"
    ));
    run
}

fn lemma0(rng: &mut ChaCha8Rng) -> Run {
    let mut run = Run::new();
    let k = 3;
    for _ in 0..100 {
        let loops = rng.gen_range(0..=2);
        let arrows = random_point(2 * k + 2 * loops, rng);
        let check = || -> Result<bool, SemiInvError> {
            let (loop_vals, x) = lemma0_invariants(k, loops, &arrows)?;
            let mut ok = loop_vals.as_slice() == &arrows[2 * k..] && x.rank() <= 1;
            for i in 0..k {
                for j in 0..k {
                    for a in 0..k {
                        for b in 0..k {
                            ok &= &x[(i, j)] * &x[(a, b)] == &x[(i, b)] * &x[(a, j)];
                        }
                    }
                }
            }
            Ok(ok)
        };
        run.check_result(check(), || format!("relations fail at {arrows:?}"));
    }
    run
}

/// Cycle functions `(x, y, z, t, t')` on the triangle with one arrow each way.
/// Coordinates are the arrows `01, 10, 12, 21, 02, 20`.
fn triangle_cycles(v: &[Rational]) -> Vec<Rational> {
    let (a01, a10, a12, a21, a02, a20) = (&v[0], &v[1], &v[2], &v[3], &v[4], &v[5]);
    vec![
        a01 * a10,
        a12 * a21,
        a02 * a20,
        a01 * a12 * a20,
        a02 * a21 * a10,
    ]
}

fn triangle(rng: &mut ChaCha8Rng) -> Run {
    let mut run = Run::new();
    let quiver =
        GeneralQuiver::new(vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]).expect("square");
    let ones = GDimVector::new(vec![1, 1, 1]);
    let dim = 1 - crate::quiver::euler_form_general(&quiver, &ones, &ones).expect("lengths");
    run.notes.push(format!(
        "5 cycle generators on a quotient of dimension {dim}"
    ));
    run.check(dim == 4, || format!("quotient dimension {dim}, expected 4"));
    for _ in 0..100 {
        let v = random_point(6, rng);
        let c = triangle_cycles(&v);
        run.check(&c[3] * &c[4] == &c[0] * &c[1] * &c[2], || {
            format!("t·t' ≠ x·y·z at {v:?}")
        });
    }
    let v: Vec<Rational> = (0..6).map(|_| random_nonzero_rational(rng)).collect();
    let rank = exact_jacobian(triangle_cycles, &v, 3).rank();
    run.check(rank == 4, || {
        format!("cycle Jacobian rank {rank}, expected 4")
    });
    run
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_with_default_seed() {
        for r in run_all(42) {
            assert!(r.passed(), "{}: {:?}", r.suite, r.failures);
        }
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", 1).is_none());
    }

    #[test]
    fn sign_pattern_small() {
        assert_eq!(qm_sign_pattern(2).unwrap(), vec![-1, -1, 1]);
    }
}
