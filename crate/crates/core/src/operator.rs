//! Finite multivalued operator graphs and the (quasi)monotone machinery:
//! relation tests, polar membership, polar fibers, the active-point sets
//! V_T(x), the polyhedra E_T, conic hulls, translations and perturbations.
//!
//! An operator is identified with its graph, a finite set of pairs
//! (point, covector) in one ambient dimension. The quasimonotone relation
//! between two pairs is
//!
//! ```text
//! (x, x*) ~q (y, y*)  iff  min{ <y - x, x*>, <x - y, y*> } <= 0,
//! ```
//!
//! a reflexive and symmetric condition. The quasimonotone polar of a graph
//! collects all pairs related to every pair of the graph; its fiber at a
//! point is a closed convex polyhedral cone, computable exactly as the
//! normal cone of the finite set V_T(x).

use std::cmp::Ordering;

use crate::cones::{check_vector, normal_cone_of_points, HCone, HPolyhedron, VCone};
use crate::error::Error;
use crate::scalar::{dot, is_zero_vector, vec_add, vec_cmp, vec_sub, Mode, Scalar, Vector};

/// One graph element: a point and a covector of the same dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct Pair {
    pub x: Vector,
    pub xstar: Vector,
}

impl Pair {
    pub fn new(x: Vector, xstar: Vector) -> Self {
        Pair { x, xstar }
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    fn validate(&self, dim: usize, mode: &Mode) -> Result<(), Error> {
        check_vector(&self.x, dim, mode)?;
        check_vector(&self.xstar, dim, mode)
    }
}

/// Quasimonotone relation between two pairs:
/// `min{<q.x - p.x, p.xstar>, <p.x - q.x, q.xstar>} <= 0`.
pub fn qm_related(p: &Pair, q: &Pair, mode: &Mode) -> bool {
    let d = vec_sub(&q.x, &p.x);
    let forward = dot(&d, &p.xstar);
    if mode.sign(&forward) != Ordering::Greater {
        return true;
    }
    let backward = dot(&crate::scalar::vec_neg(&d), &q.xstar);
    mode.sign(&backward) != Ordering::Greater
}

/// Monotone relation: `<p.x - q.x, p.xstar - q.xstar> >= 0`.
pub fn mono_related(p: &Pair, q: &Pair, mode: &Mode) -> bool {
    let dx = vec_sub(&p.x, &q.x);
    let ds = vec_sub(&p.xstar, &q.xstar);
    mode.sign(&dot(&dx, &ds)) != Ordering::Less
}

/// A finite multivalued operator, identified with its graph. Immutable
/// after construction; pairs are deduplicated and canonically ordered.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorGraph {
    dim: usize,
    mode: Mode,
    pairs: Vec<Pair>,
}

impl OperatorGraph {
    pub fn new(dim: usize, mode: Mode, pairs: Vec<Pair>) -> Result<Self, Error> {
        if dim == 0 {
            return Err(Error::InvalidParams("dimension must be positive".into()));
        }
        for p in &pairs {
            p.validate(dim, &mode)?;
        }
        let mut pairs = pairs;
        pairs.sort_by(|a, b| vec_cmp(&a.x, &b.x).then_with(|| vec_cmp(&a.xstar, &b.xstar)));
        pairs.dedup();
        Ok(OperatorGraph { dim, mode, pairs })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains_pair(&self, p: &Pair) -> bool {
        self.pairs.iter().any(|q| q == p)
    }

    /// Distinct base points, canonically ordered.
    pub fn base_points(&self) -> Vec<Vector> {
        let mut out: Vec<Vector> = self.pairs.iter().map(|p| p.x.clone()).collect();
        out.sort_by(|a, b| vec_cmp(a, b));
        out.dedup();
        out
    }

    /// Effective domain: base points carrying some nonzero covector.
    pub fn edom(&self) -> Vec<Vector> {
        let mut out: Vec<Vector> = self
            .pairs
            .iter()
            .filter(|p| !is_zero_vector(&p.xstar, &self.mode))
            .map(|p| p.x.clone())
            .collect();
        out.sort_by(|a, b| vec_cmp(a, b));
        out.dedup();
        out
    }

    /// Covectors attached to a base point.
    pub fn covectors_at(&self, x: &[Scalar]) -> Vec<Vector> {
        self.pairs
            .iter()
            .filter(|p| vec_cmp(&p.x, x) == Ordering::Equal)
            .map(|p| p.xstar.clone())
            .collect()
    }

    /// First pair-of-pairs violating the quasimonotone relation, if any.
    /// Unordered scan in canonical order, so the witness is deterministic.
    pub fn quasimonotone_violation(&self) -> Option<(Pair, Pair)> {
        for (i, p) in self.pairs.iter().enumerate() {
            for q in &self.pairs[i + 1..] {
                if !qm_related(p, q, &self.mode) {
                    return Some((p.clone(), q.clone()));
                }
            }
        }
        None
    }

    pub fn is_quasimonotone(&self) -> bool {
        self.quasimonotone_violation().is_none()
    }

    pub fn monotone_violation(&self) -> Option<(Pair, Pair)> {
        for (i, p) in self.pairs.iter().enumerate() {
            for q in &self.pairs[i + 1..] {
                if !mono_related(p, q, &self.mode) {
                    return Some((p.clone(), q.clone()));
                }
            }
        }
        None
    }

    pub fn is_monotone(&self) -> bool {
        self.monotone_violation().is_none()
    }

    /// V_T(x): base points carrying a covector with `<x - y, y*> > 0`.
    pub fn v_set(&self, x: &[Scalar]) -> Result<Vec<Vector>, Error> {
        check_vector(x, self.dim, &self.mode)?;
        let mut out: Vec<Vector> = Vec::new();
        for p in &self.pairs {
            let d = vec_sub(x, &p.x);
            if self.mode.is_positive(&dot(&d, &p.xstar)) {
                out.push(p.x.clone());
            }
        }
        out.sort_by(|a, b| vec_cmp(a, b));
        out.dedup();
        Ok(out)
    }

    /// Quasimonotone polar membership: `p` related to every pair of the
    /// graph. On failure the offending graph pair is returned.
    pub fn polar_violation(&self, p: &Pair) -> Result<Option<Pair>, Error> {
        p.validate(self.dim, &self.mode)?;
        Ok(self
            .pairs
            .iter()
            .find(|q| !qm_related(p, q, &self.mode))
            .cloned())
    }

    pub fn polar_member(&self, p: &Pair) -> Result<bool, Error> {
        Ok(self.polar_violation(p)?.is_none())
    }

    /// Monotone polar membership, with witness on failure.
    pub fn mono_polar_violation(&self, p: &Pair) -> Result<Option<Pair>, Error> {
        p.validate(self.dim, &self.mode)?;
        Ok(self
            .pairs
            .iter()
            .find(|q| !mono_related(p, q, &self.mode))
            .cloned())
    }

    pub fn mono_polar_member(&self, p: &Pair) -> Result<bool, Error> {
        Ok(self.mono_polar_violation(p)?.is_none())
    }

    /// The polar fiber T^nu(x) as a halfspace cone: the full space when
    /// V_T(x) is empty, otherwise the normal cone of V_T(x) at x.
    pub fn polar_fiber(&self, x: &[Scalar]) -> Result<HCone, Error> {
        let v = self.v_set(x)?;
        if v.is_empty() {
            return Ok(HCone::full_space(self.dim, self.mode));
        }
        normal_cone_of_points(&v, x, self.mode)
    }

    /// E_T as a polyhedron: one constraint `<y*, x> <= <y*, y>` per pair
    /// with nonzero covector.
    pub fn e_polyhedron(&self) -> HPolyhedron {
        let constraints: Vec<(Vector, Scalar)> = self
            .pairs
            .iter()
            .filter(|p| !is_zero_vector(&p.xstar, &self.mode))
            .map(|p| (p.xstar.clone(), dot(&p.xstar, &p.x)))
            .collect();
        HPolyhedron::new(self.dim, self.mode, constraints)
            .expect("pairs were validated at construction")
    }

    /// Lateral translation: every base point shifted by `x0`, covectors
    /// unchanged.
    pub fn translate(&self, x0: &[Scalar]) -> Result<OperatorGraph, Error> {
        check_vector(x0, self.dim, &self.mode)?;
        let pairs = self
            .pairs
            .iter()
            .map(|p| Pair::new(vec_add(&p.x, x0), p.xstar.clone()))
            .collect();
        OperatorGraph::new(self.dim, self.mode, pairs)
    }

    /// Linear perturbation: `alpha` added to every covector.
    pub fn perturb(&self, alpha: &[Scalar]) -> Result<OperatorGraph, Error> {
        check_vector(alpha, self.dim, &self.mode)?;
        let pairs = self
            .pairs
            .iter()
            .map(|p| Pair::new(p.x.clone(), vec_add(&p.xstar, alpha)))
            .collect();
        OperatorGraph::new(self.dim, self.mode, pairs)
    }

    /// Union of two graphs over the same ambient space.
    pub fn union(&self, other: &OperatorGraph) -> Result<OperatorGraph, Error> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        if other.mode != self.mode {
            return Err(Error::MixedModes);
        }
        let mut pairs = self.pairs.clone();
        pairs.extend(other.pairs.iter().cloned());
        OperatorGraph::new(self.dim, self.mode, pairs)
    }

    pub fn with_pair(&self, p: Pair) -> Result<OperatorGraph, Error> {
        let mut pairs = self.pairs.clone();
        pairs.push(p);
        OperatorGraph::new(self.dim, self.mode, pairs)
    }

    /// Conic hull operator: the fiber at each base point is the generator
    /// cone of its covectors; the flag records the glued zero section
    /// `X x {0}`.
    pub fn conic_hull(&self, with_zero_section: bool) -> ConicOperator {
        let bases = self.base_points();
        let fibers = bases
            .into_iter()
            .map(|b| {
                let cone = VCone::new(self.dim, self.mode, self.covectors_at(&b))
                    .expect("covectors were validated at construction");
                (b, cone)
            })
            .collect();
        ConicOperator {
            dim: self.dim,
            mode: self.mode,
            fibers,
            includes_zero_section: with_zero_section,
        }
    }
}

/// A conically-hulled operator: finitely generated cone fibers over a
/// finite set of base points, optionally together with the zero section.
#[derive(Clone, Debug)]
pub struct ConicOperator {
    dim: usize,
    mode: Mode,
    fibers: Vec<(Vector, VCone)>,
    includes_zero_section: bool,
}

impl ConicOperator {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn fibers(&self) -> &[(Vector, VCone)] {
        &self.fibers
    }

    pub fn includes_zero_section(&self) -> bool {
        self.includes_zero_section
    }

    /// Fiber at a point: the stored cone on base points, `{0}` elsewhere.
    pub fn fiber_at(&self, x: &[Scalar]) -> VCone {
        self.fibers
            .iter()
            .find(|(b, _)| vec_cmp(b, x) == Ordering::Equal)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| VCone::origin(self.dim, self.mode))
    }

    /// Base points whose fiber is larger than `{0}`.
    pub fn edom(&self) -> Vec<Vector> {
        self.fibers
            .iter()
            .filter(|(_, c)| !c.is_origin())
            .map(|(b, _)| b.clone())
            .collect()
    }

    /// Materializes the conic operator as a plain graph: one pair per
    /// fiber generator, plus a zero pair at every base point when the zero
    /// section is included.
    pub fn to_graph(&self) -> OperatorGraph {
        let mut pairs = Vec::new();
        for (b, cone) in &self.fibers {
            if self.includes_zero_section || cone.is_origin() {
                pairs.push(Pair::new(b.clone(), vec![self.mode.zero(); self.dim]));
            }
            for g in cone.generators() {
                pairs.push(Pair::new(b.clone(), g.clone()));
            }
        }
        OperatorGraph::new(self.dim, self.mode, pairs)
            .expect("fibers were validated at construction")
    }

    /// Quasimonotonicity of the conic operator. For base points x != y a
    /// violation needs a fiber member over x with `<y - x, .> > 0` and one
    /// over y with `<x - y, .> > 0`; over finitely generated cones each
    /// existential reduces to a generator scan (equivalent to the
    /// normalized-LP form by homogeneity). The zero section never
    /// contributes a violation.
    pub fn qm_violation(&self) -> Option<(Vector, Vector, Vector, Vector)> {
        for (i, (x, cx)) in self.fibers.iter().enumerate() {
            for (y, cy) in &self.fibers[i + 1..] {
                let d = vec_sub(y, x);
                let fwd = cx
                    .admits_positive(&d)
                    .expect("fiber dims are consistent");
                let Some(gx) = fwd else { continue };
                let back = cy
                    .admits_positive(&crate::scalar::vec_neg(&d))
                    .expect("fiber dims are consistent");
                if let Some(gy) = back {
                    return Some((x.clone(), gx, y.clone(), gy));
                }
            }
        }
        None
    }

    pub fn is_quasimonotone(&self) -> bool {
        self.qm_violation().is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    fn half(n: i64) -> Scalar {
        Scalar::rational(n, 2)
    }

    fn pair1(x: i64, xs: i64) -> Pair {
        Pair::new(vec![s(x)], vec![s(xs)])
    }

    fn graph1(pairs: &[(i64, i64)]) -> OperatorGraph {
        OperatorGraph::new(
            1,
            Mode::Exact,
            pairs.iter().map(|&(x, xs)| pair1(x, xs)).collect(),
        )
        .unwrap()
    }

    /// Integer slice of the constant-covector operator: {-m..m} x {1}.
    pub(crate) fn z_slice(m: i64) -> OperatorGraph {
        graph1(&(-m..=m).map(|k| (k, 1)).collect::<Vec<_>>())
    }

    #[test]
    fn qm_relation_examples() {
        let mode = Mode::Exact;
        // Zero covector relates to everything.
        assert!(qm_related(&pair1(0, 0), &pair1(1, 1), &mode));
        // min{1*1, (-1)*(-1)} = 1 > 0.
        assert!(!qm_related(&pair1(0, 1), &pair1(1, -1), &mode));
        // Reflexive.
        let p = pair1(3, -7);
        assert!(qm_related(&p, &p, &mode));
        // Symmetric on a sample.
        let q = pair1(-2, 5);
        assert_eq!(qm_related(&p, &q, &mode), qm_related(&q, &p, &mode));
    }

    #[test]
    fn mono_relation_examples() {
        let mode = Mode::Exact;
        assert!(mono_related(&pair1(0, 0), &pair1(1, 1), &mode));
        assert!(!mono_related(&pair1(0, 1), &pair1(1, 0), &mode));
    }

    #[test]
    fn z_slice_is_monotone_hence_quasimonotone() {
        let t = z_slice(2);
        assert!(t.is_monotone());
        assert!(t.is_quasimonotone());
    }

    #[test]
    fn violating_graph_reports_witness() {
        let t = graph1(&[(0, 1), (1, -1)]);
        let (p, q) = t.quasimonotone_violation().unwrap();
        assert!(!qm_related(&p, &q, &Mode::Exact));
        assert!(!t.is_quasimonotone());
    }

    #[test]
    fn v_set_of_z_slice_at_half() {
        let t = z_slice(2);
        let v = t.v_set(&[half(1)]).unwrap();
        assert_eq!(v, vec![vec![s(-2)], vec![s(-1)], vec![s(0)]]);
    }

    #[test]
    fn v_set_empty_when_nothing_active() {
        let t = graph1(&[(0, 1)]);
        assert!(t.v_set(&[s(-5)]).unwrap().is_empty());
    }

    #[test]
    fn polar_contains_zero_section() {
        let t = graph1(&[(0, 1), (1, 1), (-2, 3)]);
        for x in [-3, 0, 2] {
            assert!(t.polar_member(&pair1(x, 0)).unwrap());
        }
    }

    #[test]
    fn z_slice_polar_membership_at_half() {
        let t = z_slice(2);
        let p = Pair::new(vec![half(1)], vec![s(1)]);
        assert!(t.polar_member(&p).unwrap());
        let down = Pair::new(vec![half(1)], vec![s(-1)]);
        assert!(!t.polar_member(&down).unwrap());
    }

    #[test]
    fn polar_violation_witness_on_identity_sample() {
        // Identity sample containing (1/2, 0)*e1; probe ((1,0), (-1,0)).
        let half_e1 = vec![half(1), s(0)];
        let t = OperatorGraph::new(
            2,
            Mode::Exact,
            vec![
                Pair::new(vec![s(1), s(0)], vec![s(1), s(0)]),
                Pair::new(half_e1.clone(), half_e1.clone()),
                Pair::new(vec![s(0), s(1)], vec![s(0), s(1)]),
            ],
        )
        .unwrap();
        let probe = Pair::new(vec![s(1), s(0)], vec![s(-1), s(0)]);
        let witness = t.polar_violation(&probe).unwrap().unwrap();
        assert_eq!(witness, Pair::new(half_e1.clone(), half_e1));
    }

    #[test]
    fn polar_fiber_full_space_when_v_empty() {
        let t = graph1(&[(0, 1)]);
        let fiber = t.polar_fiber(&[s(-5)]).unwrap();
        assert!(fiber.is_full_space());
    }

    #[test]
    fn polar_fiber_of_z_slice_at_half_is_upper_halfline() {
        let t = z_slice(2);
        let fiber = t.polar_fiber(&[half(1)]).unwrap();
        assert_eq!(fiber.normals(), &[vec![s(-1)]]);
    }

    #[test]
    fn e_polyhedron_examples() {
        // Zero covector contributes nothing: full space.
        let trivial = graph1(&[(0, 0)]);
        assert!(trivial.e_polyhedron().constraints().is_empty());

        // Z-slice: x <= y for every sampled y collapses to x <= -2.
        let t = z_slice(2);
        let e = t.e_polyhedron();
        use crate::cones::SetClass;
        assert!(e.contains(&[s(-2)]).unwrap());
        assert!(e.contains(&[s(-3)]).unwrap());
        assert!(!e.contains(&[s(-1)]).unwrap());
        assert_eq!(e.classify().unwrap(), SetClass::Larger);

        // Three-pair step sample pins the origin.
        let step = graph1(&[(-1, -1), (0, 1), (0, -1)]);
        assert_eq!(
            step.e_polyhedron().classify().unwrap(),
            SetClass::Singleton(vec![s(0)])
        );
    }

    #[test]
    fn translate_and_perturb() {
        let t = graph1(&[(0, 1)]);
        let shifted = t.translate(&[s(2)]).unwrap();
        assert_eq!(shifted.pairs(), &[pair1(2, 1)]);
        let bumped = t.perturb(&[s(-1)]).unwrap();
        assert_eq!(bumped.pairs(), &[pair1(0, 0)]);
    }

    #[test]
    fn conic_hull_fiber_is_canonically_scaled() {
        let t = graph1(&[(1, 2)]);
        let c = t.conic_hull(false);
        assert_eq!(c.fiber_at(&[s(1)]).generators(), &[vec![s(1)]]);
        assert_eq!(c.fiber_at(&[s(7)]).generators().len(), 0);
    }

    #[test]
    fn conic_hull_preserves_edom() {
        let t = graph1(&[(0, 1), (1, 0), (2, -3)]);
        let c = t.conic_hull(true);
        assert_eq!(c.edom(), t.edom());
    }

    #[test]
    fn conic_qm_check_matches_graph_check() {
        let good = z_slice(1);
        assert!(good.conic_hull(true).is_quasimonotone());
        let bad = graph1(&[(0, 1), (1, -1)]);
        assert!(!bad.conic_hull(true).is_quasimonotone());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let t = z_slice(1);
        assert!(matches!(
            t.v_set(&[s(0), s(0)]),
            Err(Error::DimensionMismatch { .. })
        ));
        let p2 = Pair::new(vec![s(0), s(0)], vec![s(1), s(0)]);
        assert!(t.polar_member(&p2).is_err());
    }
}
