//! Built-in scenario corpus: deterministic finite samples of the worked
//! operators, each with a certification grid and a table of expected
//! claims that `scenario <name> --verify` replays end to end.
//!
//! Sampling rules (fixed, no randomness):
//!
//! - `x0`: the single zero pair {(0, 0)} on the line.
//! - `z-slice`: integers in [-m, m] paired with the constant covector 1.
//!   The grid keeps the interior integer bases — at the leftmost sample
//!   the truncation empties V and the fiber degenerates to the full
//!   space, a sampling artifact — plus the midpoints 1/2 and 3/2.
//! - `identity`: the plane identity sampled at `n` angles on four
//!   concentric circles centered at the probe point x = (r, 0) with radii
//!   r/32, r/16, r/8, r/4, plus x itself. Circles centered at x place
//!   samples near the boundary of the active ball, which is what pins the
//!   polar fiber onto cone({x}); rings about the origin never get near x
//!   and leave the fiber wide.
//! - `sign` / `sign-plus-one`: the four-pair sample of x/|x| with the
//!   interval fiber at 0 encoded as two pairs, and its +1 perturbation.
//! - `step`: the six-pair sample of the step operator, with large
//!   opposite covectors at 0 standing in for the full line there.

use crate::certify::{
    bipolar_member_falsify, certify_ae_maximal, certify_maximal, certify_premaximal, Certificate,
    Grid, Verdict, Witness,
};
use crate::cones::{cone_equal, ConeRef, SetClass, VCone};
use crate::error::Error;
use crate::mvip::{minty_solve, minty_solve_polar, polar_e_polyhedron, ConstraintSet};
use crate::operator::{OperatorGraph, Pair};
use crate::scalar::{vec_cmp, Mode, Scalar, Vector};

pub const SCENARIO_NAMES: &[&str] = &["x0", "z-slice", "identity", "sign", "sign-plus-one", "step"];

/// Generator parameters; each scenario reads the fields it uses.
#[derive(Clone, Copy, Debug)]
pub struct ScenarioParams {
    /// Half-width of the integer slice.
    pub m: i64,
    /// Angular sample count per circle of the identity scenario.
    pub n: usize,
    /// Outer radius of the identity scenario.
    pub radius: f64,
    /// Float-mode tolerance.
    pub eps: f64,
}

impl Default for ScenarioParams {
    fn default() -> Self {
        ScenarioParams {
            m: 2,
            n: 64,
            radius: 1.0,
            eps: Mode::DEFAULT_EPS,
        }
    }
}

/// A named operator sample, its certification scaffold, and the claims it
/// is expected to satisfy.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub graph: OperatorGraph,
    pub grid: Grid,
    pub constraints: Option<ConstraintSet>,
    pub expected: Vec<ExpectedClaim>,
}

#[derive(Clone, Debug)]
pub enum ClassExpect {
    Empty,
    Singleton(Vector),
    Larger,
}

#[derive(Clone, Debug)]
pub enum ExpectedClaim {
    Quasimonotone(bool),
    Monotone(bool),
    /// Probe pairs with their expected polar membership.
    PolarMembers(Vec<(Pair, bool)>),
    /// The polar fiber at a point equals the cone generated by the given
    /// covectors.
    FiberEqualsCone { at: Vector, generators: Vec<Vector> },
    FiberContains {
        at: Vector,
        covector: Vector,
        expected: bool,
    },
    /// Angular width (radians) of a planar fiber stays below a bound.
    FiberWidthBelow { at: Vector, max_radians: f64 },
    Premaximal { consistent: bool },
    AeMaximal {
        consistent: bool,
        witness: Option<Pair>,
    },
    Maximal {
        consistent: bool,
        witness: Option<Pair>,
    },
    ESetDirect(ClassExpect),
    ESetMembership { point: Vector, expected: bool },
    /// Classification of the polar-side E-set over the scenario grid.
    ESetPolarGrid(ClassExpect),
    MvipDirect(Vec<Vector>),
    MvipPolar(Vec<Vector>),
    /// A probe pair whose bipolar membership the grid refutes.
    BipolarRefuted(Pair),
}

#[derive(Clone, Debug)]
pub struct ClaimResult {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

pub fn generate_scenario(name: &str, params: &ScenarioParams) -> Result<Scenario, Error> {
    match name {
        "x0" => x0(),
        "z-slice" => z_slice(params.m),
        "identity" => identity(params.n, params.radius, params.eps),
        "sign" => sign(false),
        "sign-plus-one" => sign(true),
        "step" => step(),
        other => Err(Error::UnknownScenario(other.to_string())),
    }
}

fn s(v: i64) -> Scalar {
    Scalar::from_int(v)
}

fn q(p: i64, d: i64) -> Scalar {
    Scalar::rational(p, d)
}

fn pair1(x: Scalar, xs: Scalar) -> Pair {
    Pair::new(vec![x], vec![xs])
}

fn x0() -> Result<Scenario, Error> {
    let graph = OperatorGraph::new(1, Mode::Exact, vec![pair1(s(0), s(0))])?;
    let grid = Grid::new(
        1,
        Mode::Exact,
        vec![vec![s(-1)], vec![s(0)], vec![s(1)]],
        vec![vec![s(-1)], vec![s(1)]],
    )?;
    // The polar of a zero-covector pair is the whole product space.
    let probes = vec![
        (pair1(s(-1), s(-1)), true),
        (pair1(s(-1), s(1)), true),
        (pair1(s(0), s(7)), true),
        (pair1(s(2), s(-3)), true),
    ];
    let expected = vec![
        ExpectedClaim::Quasimonotone(true),
        ExpectedClaim::Monotone(true),
        ExpectedClaim::PolarMembers(probes),
        ExpectedClaim::Maximal {
            consistent: false,
            witness: Some(pair1(s(-1), s(-1))),
        },
        ExpectedClaim::ESetDirect(ClassExpect::Larger),
    ];
    Ok(Scenario {
        name: "x0".into(),
        graph,
        grid,
        constraints: None,
        expected,
    })
}

fn z_slice(m: i64) -> Result<Scenario, Error> {
    if m < 1 {
        return Err(Error::InvalidParams("z-slice needs m >= 1".into()));
    }
    let pairs = (-m..=m).map(|k| pair1(s(k), s(1))).collect();
    let graph = OperatorGraph::new(1, Mode::Exact, pairs)?;
    let mut bases: Vec<Vector> = (-m + 1..=m).map(|k| vec![s(k)]).collect();
    bases.push(vec![q(1, 2)]);
    bases.push(vec![q(3, 2)]);
    let grid = Grid::new(1, Mode::Exact, bases, vec![vec![s(-1)], vec![s(1)]])?;
    let half_up = pair1(q(1, 2), s(1));
    let expected = vec![
        ExpectedClaim::Quasimonotone(true),
        ExpectedClaim::Monotone(true),
        ExpectedClaim::PolarMembers(vec![
            (half_up.clone(), true),
            (pair1(q(1, 2), s(-1)), false),
        ]),
        ExpectedClaim::FiberEqualsCone {
            at: vec![q(1, 2)],
            generators: vec![vec![s(1)]],
        },
        ExpectedClaim::Premaximal { consistent: true },
        ExpectedClaim::AeMaximal {
            consistent: false,
            witness: Some(half_up.clone()),
        },
        ExpectedClaim::Maximal {
            consistent: false,
            witness: Some(half_up),
        },
        ExpectedClaim::ESetDirect(ClassExpect::Larger),
        ExpectedClaim::ESetMembership {
            point: vec![s(-m)],
            expected: true,
        },
        ExpectedClaim::ESetMembership {
            point: vec![q(-4 * m + 1, 4)],
            expected: false,
        },
        ExpectedClaim::BipolarRefuted(pair1(s(0), s(-1))),
    ];
    Ok(Scenario {
        name: "z-slice".into(),
        graph,
        grid,
        constraints: None,
        expected,
    })
}

fn identity(n: usize, radius: f64, eps: f64) -> Result<Scenario, Error> {
    if n < 8 {
        return Err(Error::InvalidParams("identity needs n >= 8".into()));
    }
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::InvalidParams("identity needs a positive radius".into()));
    }
    let mode = Mode::Float { eps };
    let x = vec![Scalar::Float(radius), Scalar::Float(0.0)];
    let mut pairs = vec![Pair::new(x.clone(), x.clone())];
    for ring in [32.0_f64, 16.0, 8.0, 4.0] {
        let t = radius / ring;
        for k in 0..n {
            let angle = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64);
            let y = vec![
                Scalar::Float(radius + t * angle.cos()),
                Scalar::Float(t * angle.sin()),
            ];
            pairs.push(Pair::new(y.clone(), y));
        }
    }
    let graph = OperatorGraph::new(2, mode, pairs)?;
    let origin = vec![Scalar::Float(0.0), Scalar::Float(0.0)];
    let e = |a: f64, b: f64| vec![Scalar::Float(a), Scalar::Float(b)];
    let grid = Grid::new(
        2,
        mode,
        vec![origin.clone(), x.clone()],
        vec![e(1.0, 0.0), e(-1.0, 0.0), e(0.0, 1.0), e(0.0, -1.0)],
    )?;
    let expected = vec![
        ExpectedClaim::Quasimonotone(true),
        ExpectedClaim::Monotone(true),
        ExpectedClaim::FiberContains {
            at: x.clone(),
            covector: x.clone(),
            expected: true,
        },
        ExpectedClaim::FiberContains {
            at: x.clone(),
            covector: e(0.0, 1.0),
            expected: false,
        },
        ExpectedClaim::FiberContains {
            at: x.clone(),
            covector: e(-radius, 0.0),
            expected: false,
        },
        ExpectedClaim::FiberWidthBelow {
            at: x.clone(),
            max_radians: 0.2,
        },
        ExpectedClaim::Premaximal { consistent: true },
        ExpectedClaim::AeMaximal {
            consistent: false,
            witness: Some(Pair::new(origin, e(-1.0, 0.0))),
        },
        ExpectedClaim::ESetDirect(ClassExpect::Larger),
        ExpectedClaim::ESetPolarGrid(ClassExpect::Singleton(e(0.0, 0.0))),
    ];
    Ok(Scenario {
        name: "identity".into(),
        graph,
        grid,
        constraints: None,
        expected,
    })
}

fn sign(perturbed: bool) -> Result<Scenario, Error> {
    let base = OperatorGraph::new(
        1,
        Mode::Exact,
        vec![
            pair1(s(-1), s(-1)),
            pair1(s(0), s(-1)),
            pair1(s(0), s(1)),
            pair1(s(1), s(1)),
        ],
    )?;
    let grid = Grid::new(
        1,
        Mode::Exact,
        vec![vec![s(-1)], vec![s(0)], vec![s(1)]],
        vec![vec![s(-1)], vec![s(1)]],
    )?;
    if !perturbed {
        let expected = vec![
            ExpectedClaim::Quasimonotone(true),
            ExpectedClaim::Monotone(true),
            ExpectedClaim::AeMaximal {
                consistent: true,
                witness: None,
            },
            ExpectedClaim::Premaximal { consistent: true },
            ExpectedClaim::Maximal {
                consistent: true,
                witness: None,
            },
        ];
        Ok(Scenario {
            name: "sign".into(),
            graph: base,
            grid,
            constraints: None,
            expected,
        })
    } else {
        let graph = base.perturb(&[s(1)])?;
        let expected = vec![
            ExpectedClaim::Quasimonotone(true),
            ExpectedClaim::AeMaximal {
                consistent: false,
                witness: Some(pair1(s(-1), s(-1))),
            },
        ];
        Ok(Scenario {
            name: "sign-plus-one".into(),
            graph,
            grid,
            constraints: None,
            expected,
        })
    }
}

fn step() -> Result<Scenario, Error> {
    let graph = OperatorGraph::new(
        1,
        Mode::Exact,
        vec![
            pair1(s(-1), s(-1)),
            pair1(q(-1, 2), s(-2)),
            pair1(s(0), s(5)),
            pair1(s(0), s(-5)),
            pair1(s(1), s(0)),
            pair1(s(2), s(0)),
        ],
    )?;
    let grid = Grid::new(
        1,
        Mode::Exact,
        vec![vec![s(-1)], vec![q(-1, 2)], vec![s(0)], vec![s(1)], vec![s(2)]],
        vec![vec![s(-1)], vec![s(1)]],
    )?;
    let k_grid = ConstraintSet::new(
        1,
        Mode::Exact,
        vec![vec![s(1)], vec![q(5, 4)], vec![q(3, 2)], vec![q(7, 4)], vec![s(2)]],
    )?;
    let whole_grid: Vec<Vector> = k_grid.points().to_vec();
    let expected = vec![
        ExpectedClaim::Quasimonotone(true),
        ExpectedClaim::Monotone(false),
        ExpectedClaim::Premaximal { consistent: true },
        ExpectedClaim::AeMaximal {
            consistent: false,
            witness: Some(pair1(s(1), s(1))),
        },
        ExpectedClaim::Maximal {
            consistent: false,
            witness: Some(pair1(q(-1, 2), s(-1))),
        },
        ExpectedClaim::ESetDirect(ClassExpect::Singleton(vec![s(0)])),
        ExpectedClaim::ESetPolarGrid(ClassExpect::Singleton(vec![s(0)])),
        ExpectedClaim::MvipDirect(whole_grid),
        ExpectedClaim::MvipPolar(vec![vec![s(1)]]),
    ];
    Ok(Scenario {
        name: "step".into(),
        graph,
        grid,
        constraints: Some(k_grid),
        expected,
    })
}

/// Angular width in radians of a planar polar fiber: the angle between
/// its two extreme rays, 2*pi for the full plane.
pub fn fiber_width_radians(t: &OperatorGraph, at: &[Scalar]) -> Result<f64, Error> {
    let fiber = t.polar_fiber(at)?;
    if fiber.dim() != 2 {
        return Err(Error::InvalidParams(
            "fiber width is defined for planar operators".into(),
        ));
    }
    let rays = fiber.extreme_rays()?;
    match rays.generators() {
        [] => Ok(0.0),
        [_] => Ok(0.0),
        [a, b] => {
            let na = (a[0].to_f64(), a[1].to_f64());
            let nb = (b[0].to_f64(), b[1].to_f64());
            let dot = na.0 * nb.0 + na.1 * nb.1;
            let la = (na.0 * na.0 + na.1 * na.1).sqrt();
            let lb = (nb.0 * nb.0 + nb.1 * nb.1).sqrt();
            Ok((dot / (la * lb)).clamp(-1.0, 1.0).acos())
        }
        _ => Ok(2.0 * std::f64::consts::PI),
    }
}

fn class_matches(actual: &SetClass, expected: &ClassExpect, mode: &Mode) -> bool {
    match (actual, expected) {
        (SetClass::Empty, ClassExpect::Empty) => true,
        (SetClass::Larger, ClassExpect::Larger) => true,
        (SetClass::Singleton(p), ClassExpect::Singleton(e)) => {
            p.len() == e.len()
                && p.iter().zip(e.iter()).all(|(a, b)| mode.eq(a, b))
        }
        _ => false,
    }
}

fn witness_pair(cert: &Certificate) -> Option<&Pair> {
    match cert.verdict.witness() {
        Some(Witness::Pair(p)) => Some(p),
        _ => None,
    }
}

fn check_certificate(
    label: &str,
    cert: Result<Certificate, Error>,
    consistent: bool,
    witness: &Option<Pair>,
    graph: &OperatorGraph,
) -> ClaimResult {
    let cert = match cert {
        Ok(c) => c,
        Err(e) => {
            return ClaimResult {
                label: label.into(),
                pass: false,
                detail: format!("error: {e}"),
            }
        }
    };
    let pass = if consistent {
        matches!(cert.verdict, Verdict::ConsistentOnGrid(_))
    } else {
        let refuted = matches!(
            cert.verdict,
            Verdict::ExactlyFalse(_) | Verdict::RefutedWithWitness(_)
        );
        let witness_ok = match witness {
            None => true,
            Some(expected) => witness_pair(&cert) == Some(expected),
        };
        refuted && witness_ok && cert.replay(graph)
    };
    ClaimResult {
        label: label.into(),
        pass,
        detail: format!("verdict {:?}", cert.verdict),
    }
}

/// Runs every expected claim of a scenario and reports one result per
/// claim.
pub fn verify_scenario(sc: &Scenario) -> Vec<ClaimResult> {
    let t = &sc.graph;
    let mode = t.mode();
    let mut out = Vec::new();
    for claim in &sc.expected {
        let result = match claim {
            ExpectedClaim::Quasimonotone(expected) => {
                let actual = t.is_quasimonotone();
                ClaimResult {
                    label: "quasimonotone".into(),
                    pass: actual == *expected,
                    detail: format!("expected {expected}, got {actual}"),
                }
            }
            ExpectedClaim::Monotone(expected) => {
                let actual = t.is_monotone();
                ClaimResult {
                    label: "monotone".into(),
                    pass: actual == *expected,
                    detail: format!("expected {expected}, got {actual}"),
                }
            }
            ExpectedClaim::PolarMembers(probes) => {
                let mut pass = true;
                let mut detail = String::new();
                for (p, expected) in probes {
                    match t.polar_member(p) {
                        Ok(actual) if actual == *expected => {}
                        Ok(actual) => {
                            pass = false;
                            detail = format!("probe {p:?}: expected {expected}, got {actual}");
                            break;
                        }
                        Err(e) => {
                            pass = false;
                            detail = format!("probe {p:?}: error {e}");
                            break;
                        }
                    }
                }
                ClaimResult {
                    label: "polar-members".into(),
                    pass,
                    detail,
                }
            }
            ExpectedClaim::FiberEqualsCone { at, generators } => {
                let outcome = (|| -> Result<bool, Error> {
                    let fiber = t.polar_fiber(at)?;
                    let cone = VCone::new(t.dim(), mode, generators.clone())?;
                    cone_equal(ConeRef::H(&fiber), ConeRef::V(&cone))
                })();
                match outcome {
                    Ok(equal) => ClaimResult {
                        label: "polar-fiber-equals-cone".into(),
                        pass: equal,
                        detail: format!("at {at:?}"),
                    },
                    Err(e) => ClaimResult {
                        label: "polar-fiber-equals-cone".into(),
                        pass: false,
                        detail: format!("error: {e}"),
                    },
                }
            }
            ExpectedClaim::FiberContains {
                at,
                covector,
                expected,
            } => {
                let outcome = t.polar_fiber(at).and_then(|f| f.member(covector));
                match outcome {
                    Ok(actual) => ClaimResult {
                        label: "polar-fiber-contains".into(),
                        pass: actual == *expected,
                        detail: format!("covector {covector:?}: expected {expected}, got {actual}"),
                    },
                    Err(e) => ClaimResult {
                        label: "polar-fiber-contains".into(),
                        pass: false,
                        detail: format!("error: {e}"),
                    },
                }
            }
            ExpectedClaim::FiberWidthBelow { at, max_radians } => {
                match fiber_width_radians(t, at) {
                    Ok(width) => ClaimResult {
                        label: "polar-fiber-width".into(),
                        pass: width < *max_radians,
                        detail: format!("width {width:.4} rad, bound {max_radians}"),
                    },
                    Err(e) => ClaimResult {
                        label: "polar-fiber-width".into(),
                        pass: false,
                        detail: format!("error: {e}"),
                    },
                }
            }
            ExpectedClaim::Premaximal { consistent } => check_certificate(
                "premaximal",
                certify_premaximal(t, &sc.grid),
                *consistent,
                &None,
                t,
            ),
            ExpectedClaim::AeMaximal {
                consistent,
                witness,
            } => check_certificate(
                "ae-maximal",
                certify_ae_maximal(t, &sc.grid),
                *consistent,
                witness,
                t,
            ),
            ExpectedClaim::Maximal {
                consistent,
                witness,
            } => check_certificate(
                "maximal",
                certify_maximal(t, &sc.grid),
                *consistent,
                witness,
                t,
            ),
            ExpectedClaim::ESetDirect(expected) => match t.e_polyhedron().classify() {
                Ok(actual) => ClaimResult {
                    label: "e-set-direct".into(),
                    pass: class_matches(&actual, expected, &mode),
                    detail: format!("got {actual:?}"),
                },
                Err(e) => ClaimResult {
                    label: "e-set-direct".into(),
                    pass: false,
                    detail: format!("error: {e}"),
                },
            },
            ExpectedClaim::ESetMembership { point, expected } => {
                match t.e_polyhedron().contains(point) {
                    Ok(actual) => ClaimResult {
                        label: "e-set-membership".into(),
                        pass: actual == *expected,
                        detail: format!("point {point:?}: expected {expected}, got {actual}"),
                    },
                    Err(e) => ClaimResult {
                        label: "e-set-membership".into(),
                        pass: false,
                        detail: format!("error: {e}"),
                    },
                }
            }
            ExpectedClaim::ESetPolarGrid(expected) => {
                let outcome = polar_e_polyhedron(t, sc.grid.base_points())
                    .and_then(|e| e.classify());
                match outcome {
                    Ok(actual) => ClaimResult {
                        label: "e-set-polar-grid".into(),
                        pass: class_matches(&actual, expected, &mode),
                        detail: format!("got {actual:?}"),
                    },
                    Err(e) => ClaimResult {
                        label: "e-set-polar-grid".into(),
                        pass: false,
                        detail: format!("error: {e}"),
                    },
                }
            }
            ExpectedClaim::MvipDirect(expected) => match sc.constraints.as_ref() {
                None => ClaimResult {
                    label: "mvip-direct".into(),
                    pass: false,
                    detail: "scenario has no constraint set".into(),
                },
                Some(k) => match minty_solve(t, k) {
                    Ok(actual) => ClaimResult {
                        label: "mvip-direct".into(),
                        pass: point_sets_equal(&actual, expected),
                        detail: format!("got {actual:?}"),
                    },
                    Err(e) => ClaimResult {
                        label: "mvip-direct".into(),
                        pass: false,
                        detail: format!("error: {e}"),
                    },
                },
            },
            ExpectedClaim::MvipPolar(expected) => match sc.constraints.as_ref() {
                None => ClaimResult {
                    label: "mvip-polar".into(),
                    pass: false,
                    detail: "scenario has no constraint set".into(),
                },
                Some(k) => match minty_solve_polar(t, k) {
                    Ok(actual) => ClaimResult {
                        label: "mvip-polar".into(),
                        pass: point_sets_equal(&actual, expected),
                        detail: format!("got {actual:?}"),
                    },
                    Err(e) => ClaimResult {
                        label: "mvip-polar".into(),
                        pass: false,
                        detail: format!("error: {e}"),
                    },
                },
            },
            ExpectedClaim::BipolarRefuted(p) => {
                // The refutation needs a grid point strictly between the
                // probe and the graph; reuse the scenario grid shifted by
                // -1/2 so it straddles the probe.
                let result = bipolar_member_falsify(t, p, &bipolar_grid(sc));
                match result {
                    Ok(cert)
                        if matches!(cert.verdict, Verdict::RefutedWithWitness(_))
                            && cert.replay(t) =>
                    {
                        ClaimResult {
                            label: "bipolar-refuted".into(),
                            pass: true,
                            detail: format!("verdict {:?}", cert.verdict),
                        }
                    }
                    Ok(cert) => ClaimResult {
                        label: "bipolar-refuted".into(),
                        pass: false,
                        detail: format!("verdict {:?}", cert.verdict),
                    },
                    Err(e) => ClaimResult {
                        label: "bipolar-refuted".into(),
                        pass: false,
                        detail: format!("error: {e}"),
                    },
                }
            }
        };
        out.push(result);
    }
    out
}

/// Grid used by bipolar refutation claims: the scenario grid shifted half
/// a unit left so it contains points on the far side of the probe.
fn bipolar_grid(sc: &Scenario) -> Grid {
    let mode = sc.graph.mode();
    let shift = vec![match mode {
        Mode::Exact => Scalar::rational(-1, 2),
        Mode::Float { .. } => Scalar::Float(-0.5),
    }];
    sc.grid
        .translate(&shift)
        .unwrap_or_else(|_| sc.grid.clone())
}

fn point_sets_equal(a: &[Vector], b: &[Vector]) -> bool {
    let mut a: Vec<Vector> = a.to_vec();
    let mut b: Vec<Vector> = b.to_vec();
    a.sort_by(|x, y| vec_cmp(x, y));
    b.sort_by(|x, y| vec_cmp(x, y));
    a == b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scenario_generation_is_deterministic() {
        for name in SCENARIO_NAMES {
            let a = generate_scenario(name, &ScenarioParams::default()).unwrap();
            let b = generate_scenario(name, &ScenarioParams::default()).unwrap();
            assert_eq!(a.graph, b.graph, "scenario {name} not deterministic");
        }
    }

    #[test]
    fn unknown_scenario_is_rejected() {
        assert!(matches!(
            generate_scenario("nope", &ScenarioParams::default()),
            Err(Error::UnknownScenario(_))
        ));
    }

    #[test]
    fn all_scenarios_verify() {
        for name in SCENARIO_NAMES {
            let sc = generate_scenario(name, &ScenarioParams::default()).unwrap();
            let results = verify_scenario(&sc);
            for r in &results {
                assert!(r.pass, "scenario {name}, claim {}: {}", r.label, r.detail);
            }
        }
    }

    #[test]
    fn identity_width_shrinks_with_more_samples() {
        let coarse = generate_scenario(
            "identity",
            &ScenarioParams {
                n: 64,
                ..ScenarioParams::default()
            },
        )
        .unwrap();
        let fine = generate_scenario(
            "identity",
            &ScenarioParams {
                n: 128,
                ..ScenarioParams::default()
            },
        )
        .unwrap();
        let at = vec![Scalar::Float(1.0), Scalar::Float(0.0)];
        let w64 = fiber_width_radians(&coarse.graph, &at).unwrap();
        let w128 = fiber_width_radians(&fine.graph, &at).unwrap();
        assert!(w128 <= w64, "width grew: {w64} -> {w128}");
        assert!(w128 < 0.2, "width at n=128 is {w128}");
    }
}
