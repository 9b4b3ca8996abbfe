//! Polyhedral cones and polyhedra: halfspace and generator representations,
//! membership, containment, equality, normal cones of finite point sets,
//! and feasible-set classification.
//!
//! Halfspace cones are `{v : <a_i, v> <= 0}`; generator cones are all
//! nonnegative combinations. Both are kept in canonical form (primitive
//! integer scaling in exact mode, unit norm in float mode, lexicographic
//! order, duplicates removed) so equal cones built along different routes
//! compare bit-identically after reduction.

mod dd;

pub use dd::extreme_rays;

use std::cmp::Ordering;

use crate::error::Error;
use crate::lp::{feasible_point, lp_feasible, Constraint, LpProblem, LpResult};
use crate::scalar::{
    canonicalize_direction, dot, is_zero_vector, vec_cmp, vec_sub, Mode, Scalar, Vector,
};

/// Maximum ambient dimension for H-to-V conversion.
pub const DD_DIMENSION_GUARD: usize = 4;

/// Cone as an intersection of homogeneous halfspaces `<a_i, v> <= 0`.
/// An empty normal list is the full space.
#[derive(Clone, Debug, PartialEq)]
pub struct HCone {
    dim: usize,
    mode: Mode,
    normals: Vec<Vector>,
}

impl HCone {
    pub fn new(dim: usize, mode: Mode, normals: Vec<Vector>) -> Result<Self, Error> {
        for n in &normals {
            check_vector(n, dim, &mode)?;
        }
        let normals = canonical_direction_set(normals, &mode);
        Ok(HCone { dim, mode, normals })
    }

    pub fn full_space(dim: usize, mode: Mode) -> Self {
        HCone {
            dim,
            mode,
            normals: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn normals(&self) -> &[Vector] {
        &self.normals
    }

    pub fn is_full_space(&self) -> bool {
        self.normals.is_empty()
    }

    /// Membership test: every defining product nonpositive.
    pub fn member(&self, v: &[Scalar]) -> Result<bool, Error> {
        check_vector(v, self.dim, &self.mode)?;
        Ok(self
            .normals
            .iter()
            .all(|a| self.mode.is_nonpositive(&dot(a, v))))
    }

    /// Whether some member has `<d, v> > 0`; by homogeneity this is the
    /// feasibility of `{A v <= 0, <d, v> = 1}`. Returns a witness member.
    pub fn admits_positive(&self, d: &[Scalar]) -> Result<Option<Vector>, Error> {
        check_vector(d, self.dim, &self.mode)?;
        if is_zero_vector(d, &self.mode) {
            return Ok(None);
        }
        let mut constraints: Vec<Constraint> = self
            .normals
            .iter()
            .map(|a| Constraint::le(a.clone(), self.mode.zero()))
            .collect();
        constraints.push(Constraint::eq(d.to_vec(), self.mode.one()));
        Ok(feasible_point(self.dim, self.mode, constraints)?)
    }

    /// Drops normals implied by the remaining ones (one LP per normal).
    pub fn remove_redundant(&self) -> Result<Self, Error> {
        let mut kept: Vec<Vector> = self.normals.clone();
        let mut i = 0;
        while i < kept.len() {
            // kept[i] is redundant iff no point of the cone defined by the
            // other normals strictly violates it.
            let mut constraints: Vec<Constraint> = kept
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, a)| Constraint::le(a.clone(), self.mode.zero()))
                .collect();
            constraints.push(Constraint::eq(kept[i].clone(), self.mode.one()));
            let violable = feasible_point(self.dim, self.mode, constraints)?.is_some();
            if violable {
                i += 1;
            } else {
                kept.remove(i);
            }
        }
        Ok(HCone {
            dim: self.dim,
            mode: self.mode,
            normals: kept,
        })
    }

    /// Generator representation with the same member set. Guarded to small
    /// ambient dimension; see [`DD_DIMENSION_GUARD`].
    pub fn extreme_rays(&self) -> Result<VCone, Error> {
        dd::extreme_rays(self)
    }

    pub fn contains_vcone(&self, inner: &VCone) -> Result<bool, Error> {
        self.check_compatible(inner.dim(), &inner.mode())?;
        for g in inner.generators() {
            if !self.member(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `self` contains `inner` iff no normal of `self` is strictly
    /// violable inside `inner` (one LP per normal; no conversion needed).
    pub fn contains_hcone(&self, inner: &HCone) -> Result<bool, Error> {
        self.check_compatible(inner.dim, &inner.mode)?;
        for a in &self.normals {
            if inner.admits_positive(a)?.is_some() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check_compatible(&self, dim: usize, mode: &Mode) -> Result<(), Error> {
        if dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: dim,
            });
        }
        if *mode != self.mode {
            return Err(Error::MixedModes);
        }
        Ok(())
    }
}

/// Cone generated by nonnegative combinations of finitely many covectors.
/// An empty generator list is the origin cone `{0}`.
#[derive(Clone, Debug, PartialEq)]
pub struct VCone {
    dim: usize,
    mode: Mode,
    generators: Vec<Vector>,
}

impl VCone {
    pub fn new(dim: usize, mode: Mode, generators: Vec<Vector>) -> Result<Self, Error> {
        for g in &generators {
            check_vector(g, dim, &mode)?;
        }
        let generators = canonical_direction_set(generators, &mode);
        Ok(VCone {
            dim,
            mode,
            generators,
        })
    }

    pub fn origin(dim: usize, mode: Mode) -> Self {
        VCone {
            dim,
            mode,
            generators: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn is_origin(&self) -> bool {
        self.generators.is_empty()
    }

    /// Membership via the nonnegative-combination LP.
    pub fn member(&self, v: &[Scalar]) -> Result<bool, Error> {
        check_vector(v, self.dim, &self.mode)?;
        if is_zero_vector(v, &self.mode) {
            return Ok(true);
        }
        if self.generators.is_empty() {
            return Ok(false);
        }
        Ok(in_conic_hull(&self.generators, v, self.dim, &self.mode)?)
    }

    /// Whether some member has `<d, v> > 0`. Over a finitely generated
    /// cone this holds iff some generator already does, which is the same
    /// predicate as feasibility of `{v in cone, <d, v> = 1}`.
    pub fn admits_positive(&self, d: &[Scalar]) -> Result<Option<Vector>, Error> {
        check_vector(d, self.dim, &self.mode)?;
        Ok(self
            .generators
            .iter()
            .find(|g| self.mode.is_positive(&dot(d, g)))
            .cloned())
    }

    pub fn contains_vcone(&self, inner: &VCone) -> Result<bool, Error> {
        if inner.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: inner.dim,
            });
        }
        for g in &inner.generators {
            if !self.member(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Containment of an H-cone: convert via extreme rays, then check the
    /// rays. Inherits the double-description dimension guard.
    pub fn contains_hcone(&self, inner: &HCone) -> Result<bool, Error> {
        let rays = inner.extreme_rays()?;
        self.contains_vcone(&rays)
    }
}

/// Either representation, borrowed; the argument type of the polymorphic
/// containment and equality checks.
#[derive(Clone, Copy, Debug)]
pub enum ConeRef<'a> {
    H(&'a HCone),
    V(&'a VCone),
}

impl<'a> From<&'a HCone> for ConeRef<'a> {
    fn from(c: &'a HCone) -> Self {
        ConeRef::H(c)
    }
}

impl<'a> From<&'a VCone> for ConeRef<'a> {
    fn from(c: &'a VCone) -> Self {
        ConeRef::V(c)
    }
}

/// Exact set containment between cones in either representation.
pub fn cone_contains(outer: ConeRef<'_>, inner: ConeRef<'_>) -> Result<bool, Error> {
    match (outer, inner) {
        (ConeRef::H(o), ConeRef::V(i)) => o.contains_vcone(i),
        (ConeRef::H(o), ConeRef::H(i)) => o.contains_hcone(i),
        (ConeRef::V(o), ConeRef::V(i)) => o.contains_vcone(i),
        (ConeRef::V(o), ConeRef::H(i)) => o.contains_hcone(i),
    }
}

/// Exact set equality: mutual containment.
pub fn cone_equal(a: ConeRef<'_>, b: ConeRef<'_>) -> Result<bool, Error> {
    Ok(cone_contains(a, b)? && cone_contains(b, a)?)
}

/// Normal cone of a finite point set at `x`: one halfspace normal `y - x`
/// per point, redundant normals removed. The point set need not be convex
/// and `x` need not belong to it. Empty point set gives the full space.
pub fn normal_cone_of_points(
    points: &[Vector],
    x: &[Scalar],
    mode: Mode,
) -> Result<HCone, Error> {
    let dim = x.len();
    let mut normals = Vec::new();
    for y in points {
        check_vector(y, dim, &mode)?;
        let n = vec_sub(y, x);
        if is_zero_vector(&n, &mode) {
            continue;
        }
        normals.push(n);
    }
    HCone::new(dim, mode, normals)?.remove_redundant()
}

/// Intersection of affine halfspaces `<normal, x> <= rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct HPolyhedron {
    dim: usize,
    mode: Mode,
    constraints: Vec<(Vector, Scalar)>,
}

impl HPolyhedron {
    pub fn new(dim: usize, mode: Mode, constraints: Vec<(Vector, Scalar)>) -> Result<Self, Error> {
        for (n, r) in &constraints {
            check_vector(n, dim, &mode)?;
            if !mode.admits(r) {
                return Err(Error::MixedModes);
            }
        }
        let mut constraints = constraints;
        constraints.sort_by(|(na, ra), (nb, rb)| {
            vec_cmp(na, nb).then_with(|| ra.total_cmp(rb))
        });
        constraints.dedup();
        Ok(HPolyhedron {
            dim,
            mode,
            constraints,
        })
    }

    pub fn full_space(dim: usize, mode: Mode) -> Self {
        HPolyhedron {
            dim,
            mode,
            constraints: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn constraints(&self) -> &[(Vector, Scalar)] {
        &self.constraints
    }

    pub fn contains(&self, x: &[Scalar]) -> Result<bool, Error> {
        check_vector(x, self.dim, &self.mode)?;
        Ok(self
            .constraints
            .iter()
            .all(|(n, r)| self.mode.sign(&(dot(n, x) - r.clone())) != Ordering::Greater))
    }

    fn lp_constraints(&self) -> Vec<Constraint> {
        self.constraints
            .iter()
            .map(|(n, r)| Constraint::le(n.clone(), r.clone()))
            .collect()
    }

    /// Empty / single point / anything larger, decided by `2*dim + 1` LPs.
    pub fn classify(&self) -> Result<SetClass, Error> {
        if feasible_point(self.dim, self.mode, self.lp_constraints())?.is_none() {
            return Ok(SetClass::Empty);
        }
        let mut point = Vec::with_capacity(self.dim);
        for k in 0..self.dim {
            let mut obj = vec![self.mode.zero(); self.dim];
            obj[k] = self.mode.one();
            let hi = self.extremum(obj.clone())?;
            obj[k] = -self.mode.one();
            let lo = self.extremum(obj)?;
            match (hi, lo) {
                (Some(max_k), Some(neg_min_k)) => {
                    let min_k = -neg_min_k;
                    if !self.mode.eq(&max_k, &min_k) {
                        return Ok(SetClass::Larger);
                    }
                    point.push(max_k);
                }
                _ => return Ok(SetClass::Larger),
            }
        }
        Ok(SetClass::Singleton(point))
    }

    fn extremum(&self, objective: Vector) -> Result<Option<Scalar>, Error> {
        let p = LpProblem::new(self.dim, self.mode, self.lp_constraints(), Some(objective))?;
        match lp_feasible(&p)? {
            LpResult::Optimal { value, .. } => Ok(Some(value)),
            LpResult::Unbounded { .. } => Ok(None),
            LpResult::Infeasible => unreachable!("classified feasible above"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SetClass {
    Empty,
    Singleton(Vector),
    Larger,
}

/// Feasibility of `v = sum lambda_j g_j` with `lambda >= 0`, solved in the
/// lambda variables.
fn in_conic_hull(
    generators: &[Vector],
    v: &[Scalar],
    dim: usize,
    mode: &Mode,
) -> Result<bool, Error> {
    let m = generators.len();
    let mut constraints = Vec::with_capacity(dim + m);
    for k in 0..dim {
        let row: Vector = generators.iter().map(|g| g[k].clone()).collect();
        constraints.push(Constraint::eq(row, v[k].clone()));
    }
    for j in 0..m {
        let mut row = vec![mode.zero(); m];
        row[j] = -mode.one();
        constraints.push(Constraint::le(row, mode.zero()));
    }
    Ok(feasible_point(m, *mode, constraints)?.is_some())
}

pub(crate) fn check_vector(v: &[Scalar], dim: usize, mode: &Mode) -> Result<(), Error> {
    if v.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: v.len(),
        });
    }
    if !v.iter().all(|s| mode.admits(s)) {
        return Err(Error::MixedModes);
    }
    Ok(())
}

/// Canonical form of a set of directions: scale, drop zeros, sort, dedup.
fn canonical_direction_set(vectors: Vec<Vector>, mode: &Mode) -> Vec<Vector> {
    let mut out: Vec<Vector> = vectors
        .iter()
        .filter(|v| !is_zero_vector(v, mode))
        .map(|v| canonicalize_direction(v, mode))
        .collect();
    out.sort_by(|a, b| vec_cmp(a, b));
    if mode.is_exact() {
        out.dedup();
    } else {
        out.dedup_by(|a, b| {
            a.iter()
                .zip(b.iter())
                .all(|(x, y)| mode.is_zero(&(x.clone() - y.clone())))
        });
    }
    out
}

/// Re-exported prunes used by the double-description step.
pub(crate) fn prune_conic_generators(
    mut gens: Vec<Vector>,
    dim: usize,
    mode: &Mode,
) -> Result<Vec<Vector>, Error> {
    let mut i = 0;
    while i < gens.len() {
        let rest: Vec<Vector> = gens
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let redundant = if rest.is_empty() {
            false
        } else {
            in_conic_hull(&rest, &gens[i], dim, mode)?
        };
        if redundant {
            gens.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    fn sv(vals: &[i64]) -> Vector {
        vals.iter().map(|&v| s(v)).collect()
    }

    #[test]
    fn zero_is_in_every_hcone() {
        let c = HCone::new(1, Mode::Exact, vec![sv(&[1])]).unwrap();
        assert!(c.member(&sv(&[0])).unwrap());
    }

    #[test]
    fn halfline_membership() {
        let c = HCone::new(1, Mode::Exact, vec![sv(&[1])]).unwrap();
        assert!(c.member(&sv(&[-3])).unwrap());
        assert!(!c.member(&sv(&[3])).unwrap());
    }

    #[test]
    fn vcone_membership_by_lp() {
        let c = VCone::new(2, Mode::Exact, vec![sv(&[1, 0])]).unwrap();
        assert!(c.member(&sv(&[2, 0])).unwrap());
        assert!(!c.member(&sv(&[-1, 0])).unwrap());
        let q = VCone::new(2, Mode::Exact, vec![sv(&[1, 0]), sv(&[0, 1])]).unwrap();
        // 3*(1,0) + 5*(0,1) solves the nonnegative 2x2 system.
        assert!(q.member(&sv(&[3, 5])).unwrap());
        assert!(!q.member(&sv(&[3, -5])).unwrap());
    }

    #[test]
    fn normal_cone_of_slice_points() {
        // Points {-2,-1,0} seen from 0.5 all lie to the left: cone {v >= 0}.
        let pts = vec![sv(&[-2]), sv(&[-1]), sv(&[0])];
        let x = vec![Scalar::rational(1, 2)];
        let c = normal_cone_of_points(&pts, &x, Mode::Exact).unwrap();
        assert_eq!(c.normals(), &[sv(&[-1])]);
        assert!(c.member(&sv(&[1])).unwrap());
        assert!(!c.member(&sv(&[-1])).unwrap());
    }

    #[test]
    fn normal_cone_of_empty_set_is_full_space() {
        let c = normal_cone_of_points(&[], &sv(&[0, 0]), Mode::Exact).unwrap();
        assert!(c.is_full_space());
        assert!(c.member(&sv(&[5, -7])).unwrap());
    }

    #[test]
    fn points_equal_to_x_contribute_nothing() {
        let c = normal_cone_of_points(&[sv(&[1])], &sv(&[1]), Mode::Exact).unwrap();
        assert!(c.is_full_space());
    }

    #[test]
    fn quadrant_extreme_rays() {
        let c = HCone::new(2, Mode::Exact, vec![sv(&[-1, 0]), sv(&[0, -1])]).unwrap();
        let rays = c.extreme_rays().unwrap();
        assert_eq!(rays.generators(), &[sv(&[0, 1]), sv(&[1, 0])]);
    }

    #[test]
    fn full_line_extreme_rays() {
        let c = HCone::full_space(1, Mode::Exact);
        let rays = c.extreme_rays().unwrap();
        assert_eq!(rays.generators(), &[sv(&[-1]), sv(&[1])]);
    }

    #[test]
    fn dd_guard_rejects_high_dimension() {
        let c = HCone::full_space(5, Mode::Exact);
        assert!(matches!(
            c.extreme_rays(),
            Err(Error::DimensionGuard { dim: 5, .. })
        ));
    }

    #[test]
    fn halfline_equals_its_generator_cone() {
        let h = HCone::new(1, Mode::Exact, vec![sv(&[-1])]).unwrap();
        let v = VCone::new(1, Mode::Exact, vec![sv(&[1])]).unwrap();
        assert!(cone_equal(ConeRef::H(&h), ConeRef::V(&v)).unwrap());
    }

    #[test]
    fn containment_without_equality() {
        let fiber = HCone::new(1, Mode::Exact, vec![sv(&[-1])]).unwrap();
        let inner = VCone::new(1, Mode::Exact, vec![vec![Scalar::rational(1, 2)]]).unwrap();
        assert!(fiber.contains_vcone(&inner).unwrap());
        let origin = VCone::origin(1, Mode::Exact);
        assert!(fiber.contains_vcone(&origin).unwrap());
        assert!(!origin.contains_hcone(&fiber).unwrap());
    }

    #[test]
    fn hcone_containment_via_lp() {
        let narrow = HCone::new(2, Mode::Exact, vec![sv(&[-1, 1]), sv(&[0, -1])]).unwrap();
        let wide = HCone::new(2, Mode::Exact, vec![sv(&[-1, 0])]).unwrap();
        assert!(wide.contains_hcone(&narrow).unwrap());
        assert!(!narrow.contains_hcone(&wide).unwrap());
    }

    #[test]
    fn classify_point_interval_empty() {
        let singleton = HPolyhedron::new(
            1,
            Mode::Exact,
            vec![(sv(&[1]), s(0)), (sv(&[-1]), s(0))],
        )
        .unwrap();
        assert_eq!(singleton.classify().unwrap(), SetClass::Singleton(sv(&[0])));

        let empty = HPolyhedron::new(
            1,
            Mode::Exact,
            vec![(sv(&[1]), s(-1)), (sv(&[-1]), s(0))],
        )
        .unwrap();
        assert_eq!(empty.classify().unwrap(), SetClass::Empty);

        let halfline = HPolyhedron::new(1, Mode::Exact, vec![(sv(&[1]), s(2))]).unwrap();
        assert_eq!(halfline.classify().unwrap(), SetClass::Larger);
    }

    #[test]
    fn redundancy_removal_keeps_the_cone() {
        let c = HCone::new(
            1,
            Mode::Exact,
            vec![sv(&[-1]), sv(&[-2]), sv(&[-3])],
        )
        .unwrap();
        // Canonicalization already merges parallel normals.
        assert_eq!(c.normals().len(), 1);
        let c2 = HCone::new(2, Mode::Exact, vec![sv(&[-1, 0]), sv(&[-1, -1]), sv(&[0, -1])])
            .unwrap()
            .remove_redundant()
            .unwrap();
        // (-1,-1) is implied by the axis constraints.
        assert_eq!(c2.normals().len(), 2);
    }
}
