//! Minty variational inequality solution sets over finite constraint sets.
//!
//! For a graph T and a finite set K, the solution set M(T, K) collects the
//! x in K with `<x - y, y*> <= 0` for every graph pair based inside K. The
//! same problem posed against the polar quantifies over whole fiber cones
//! instead of sampled covectors; both are computed exactly here.

use crate::cones::{check_vector, SetClass};
use crate::error::Error;
use crate::operator::OperatorGraph;
use crate::scalar::{dot, vec_cmp, vec_sub, Mode, Vector};

/// The finite set K of an MVIP instance.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintSet {
    dim: usize,
    mode: Mode,
    points: Vec<Vector>,
}

impl ConstraintSet {
    pub fn new(dim: usize, mode: Mode, points: Vec<Vector>) -> Result<Self, Error> {
        if points.is_empty() {
            return Err(Error::InvalidParams(
                "constraint set needs at least one point".into(),
            ));
        }
        for p in &points {
            check_vector(p, dim, &mode)?;
        }
        let mut points = points;
        points.sort_by(|a, b| vec_cmp(a, b));
        points.dedup();
        Ok(ConstraintSet { dim, mode, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn contains(&self, x: &[crate::scalar::Scalar]) -> bool {
        self.points
            .iter()
            .any(|p| vec_cmp(p, x) == std::cmp::Ordering::Equal)
    }
}

fn check_compatible(t: &OperatorGraph, k: &ConstraintSet) -> Result<(), Error> {
    if k.dim() != t.dim() {
        return Err(Error::DimensionMismatch {
            expected: t.dim(),
            got: k.dim(),
        });
    }
    if k.mode() != t.mode() {
        return Err(Error::MixedModes);
    }
    Ok(())
}

/// M(T, K): the direct double loop over candidates and graph pairs,
/// cross-checked against the equivalent active-point formulation
/// `{x in K : V_T(x) cap K is empty}`.
pub fn minty_solve(t: &OperatorGraph, k: &ConstraintSet) -> Result<Vec<Vector>, Error> {
    check_compatible(t, k)?;
    let mode = t.mode();
    let mut out = Vec::new();
    for x in k.points() {
        let solves = t.pairs().iter().all(|p| {
            if !k.contains(&p.x) {
                return true;
            }
            let d = vec_sub(x, &p.x);
            !mode.is_positive(&dot(&d, &p.xstar))
        });
        if solves {
            out.push(x.clone());
        }
    }

    let via_v_set: Vec<Vector> = {
        let mut alt = Vec::new();
        for x in k.points() {
            let v = t.v_set(x)?;
            if v.iter().all(|y| !k.contains(y)) {
                alt.push(x.clone());
            }
        }
        alt
    };
    debug_assert_eq!(out, via_v_set, "direct and V_T formulations must agree");

    Ok(out)
}

/// M(T^nu, K): x solves iff for every y in K the polar fiber at y admits
/// no member with `<x - y, .> > 0`; each check is one cone LP.
pub fn minty_solve_polar(t: &OperatorGraph, k: &ConstraintSet) -> Result<Vec<Vector>, Error> {
    check_compatible(t, k)?;
    let fibers: Vec<_> = k
        .points()
        .iter()
        .map(|y| t.polar_fiber(y))
        .collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    for x in k.points() {
        let mut solves = true;
        for (y, fiber) in k.points().iter().zip(fibers.iter()) {
            let d = vec_sub(x, y);
            if fiber.admits_positive(&d)?.is_some() {
                solves = false;
                break;
            }
        }
        if solves {
            out.push(x.clone());
        }
    }
    Ok(out)
}

/// Classification of M(T, X) = E_T over the whole space.
pub fn minty_global(t: &OperatorGraph) -> Result<SetClass, Error> {
    t.e_polyhedron().classify()
}

/// E_{T^nu} restricted to fibers at the given grid points: one linear
/// constraint `<g, x - y> <= 0` per extreme ray g of the fiber at y.
/// Subject to the double-description dimension guard.
pub fn polar_e_polyhedron(
    t: &OperatorGraph,
    grid_points: &[Vector],
) -> Result<crate::cones::HPolyhedron, Error> {
    let mode = t.mode();
    let mut constraints = Vec::new();
    for y in grid_points {
        let fiber = t.polar_fiber(y)?;
        let rays = fiber.extreme_rays()?;
        for g in rays.generators() {
            constraints.push((g.clone(), dot(g, y)));
        }
    }
    crate::cones::HPolyhedron::new(t.dim(), mode, constraints)
}

/// Constructs the two-point constraint set from a quasimonotonicity
/// violation; with K = {u, v} the direct problem has no solution while v
/// still solves the polar-side problem, which realizes the contrapositive
/// of the inclusion lemma exactly.
pub fn violation_constraint_set(
    t: &OperatorGraph,
    violation: &(crate::operator::Pair, crate::operator::Pair),
) -> Result<ConstraintSet, Error> {
    let (p, q) = violation;
    ConstraintSet::new(t.dim(), t.mode(), vec![p.x.clone(), q.x.clone()])
}

/// Checks `<x - y, .> <= 0` on the whole fiber cone at y for all pairs of
/// points drawn from K, i.e. whether the polar solution set fails to be
/// contained in the direct one.
pub fn polar_not_included(t: &OperatorGraph, k: &ConstraintSet) -> Result<bool, Error> {
    let direct = minty_solve(t, k)?;
    let polar = minty_solve_polar(t, k)?;
    Ok(!polar.iter().all(|x| direct.contains(x)))
}
