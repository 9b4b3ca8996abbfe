//! Maximality certificates for quasimonotone operators.
//!
//! Maximality against all of `X x X*` is not finitely decidable, so every
//! certificate is explicit about what was established:
//!
//! - `ExactlyTrue` / `ExactlyFalse`: the claim was decided outright; a
//!   false verdict always carries a witness that replays through the
//!   defining relations.
//! - `RefutedWithWitness`: a universally quantified claim was refuted by a
//!   concrete counterexample (again replayable).
//! - `ConsistentOnGrid`: no counterexample exists on the given finite
//!   scaffold; nothing more is asserted.
//!
//! A found witness refutes maximality outright (one strictly larger
//! quasimonotone extension suffices), while absence of a witness is only
//! ever grid-consistency: a finite graph in R^d is never maximal against
//! the whole space, so the asymmetry is intentional.

use std::cmp::Ordering;

use sha2::{Digest, Sha256};

use crate::cones::{check_vector, HCone};
use crate::error::Error;
use crate::operator::{mono_related, qm_related, OperatorGraph, Pair};
use crate::scalar::{dot, vec_add, vec_cmp, vec_neg, vec_sub, Mode, Scalar, Vector};

/// Finite scaffold for claims quantified over points or covectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    dim: usize,
    mode: Mode,
    base_points: Vec<Vector>,
    probe_covectors: Vec<Vector>,
}

impl Grid {
    pub fn new(
        dim: usize,
        mode: Mode,
        base_points: Vec<Vector>,
        probe_covectors: Vec<Vector>,
    ) -> Result<Self, Error> {
        if base_points.is_empty() {
            return Err(Error::InvalidParams("grid needs at least one base point".into()));
        }
        for p in base_points.iter().chain(probe_covectors.iter()) {
            check_vector(p, dim, &mode)?;
        }
        let mut base_points = base_points;
        base_points.sort_by(|a, b| vec_cmp(a, b));
        base_points.dedup();
        let mut probe_covectors = probe_covectors;
        probe_covectors.sort_by(|a, b| vec_cmp(a, b));
        probe_covectors.dedup();
        Ok(Grid {
            dim,
            mode,
            base_points,
            probe_covectors,
        })
    }

    /// Default scaffold for a graph: its base points, midpoints of
    /// canonically consecutive base points, and an outer margin of one
    /// graph diameter along each axis; probes are the signed unit axes.
    pub fn default_for(t: &OperatorGraph) -> Grid {
        let dim = t.dim();
        let mode = t.mode();
        let bases = t.base_points();
        let mut points = bases.clone();
        let two = mode.from_int(2);
        for w in bases.windows(2) {
            let mid: Vector = vec_add(&w[0], &w[1])
                .into_iter()
                .map(|c| c / two.clone())
                .collect();
            points.push(mid);
        }
        if !bases.is_empty() {
            let mut lo = bases[0].clone();
            let mut hi = bases[0].clone();
            for b in &bases {
                for k in 0..dim {
                    if b[k].total_cmp(&lo[k]) == Ordering::Less {
                        lo[k] = b[k].clone();
                    }
                    if b[k].total_cmp(&hi[k]) == Ordering::Greater {
                        hi[k] = b[k].clone();
                    }
                }
            }
            let mut diam = mode.zero();
            for k in 0..dim {
                let span = &hi[k] - &lo[k];
                if span.total_cmp(&diam) == Ordering::Greater {
                    diam = span;
                }
            }
            if mode.is_zero(&diam) {
                diam = mode.one();
            }
            let centroid: Vector = (0..dim)
                .map(|k| (&lo[k] + &hi[k]) / two.clone())
                .collect();
            for k in 0..dim {
                let mut low_pt = centroid.clone();
                low_pt[k] = &lo[k] - &diam;
                points.push(low_pt);
                let mut high_pt = centroid.clone();
                high_pt[k] = &hi[k] + &diam;
                points.push(high_pt);
            }
        }
        let mut probes = Vec::with_capacity(2 * dim);
        for k in 0..dim {
            let mut e = vec![mode.zero(); dim];
            e[k] = mode.one();
            probes.push(e.clone());
            e[k] = -mode.one();
            probes.push(e);
        }
        Grid::new(dim, mode, points, probes).expect("graph base points are valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn base_points(&self) -> &[Vector] {
        &self.base_points
    }

    pub fn probe_covectors(&self) -> &[Vector] {
        &self.probe_covectors
    }

    /// Shifts every base point; probes are covectors and stay fixed.
    pub fn translate(&self, x0: &[Scalar]) -> Result<Grid, Error> {
        check_vector(x0, self.dim, &self.mode)?;
        Grid::new(
            self.dim,
            self.mode,
            self.base_points.iter().map(|b| vec_add(b, x0)).collect(),
            self.probe_covectors.clone(),
        )
    }

    pub fn digest(&self) -> GridDigest {
        let mut hasher = Sha256::new();
        hasher.update(self.dim.to_le_bytes());
        for v in self.base_points.iter().chain(self.probe_covectors.iter()) {
            for s in v {
                hasher.update(s.canonical_string().as_bytes());
                hasher.update(b",");
            }
            hasher.update(b";");
        }
        let hex = hasher
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect::<String>();
        GridDigest {
            base_points: self.base_points.len(),
            probe_covectors: self.probe_covectors.len(),
            digest: hex[..16].to_string(),
        }
    }
}

/// Summary of the scaffold a grid-qualified verdict was checked on.
#[derive(Clone, Debug, PartialEq)]
pub struct GridDigest {
    pub base_points: usize,
    pub probe_covectors: usize,
    pub digest: String,
}

/// The statement a certificate is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    Quasimonotone,
    Monotone,
    Maximal,
    Premaximal,
    AeMaximal,
    BipolarMember,
}

impl Claim {
    pub fn tag(&self) -> &'static str {
        match self {
            Claim::Quasimonotone => "quasimonotone",
            Claim::Monotone => "monotone",
            Claim::Maximal => "maximal",
            Claim::Premaximal => "premaximal",
            Claim::AeMaximal => "ae-maximal",
            Claim::BipolarMember => "bipolar-member",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    Pair(Pair),
    PairOfPairs(Pair, Pair),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    ExactlyTrue,
    ExactlyFalse(Witness),
    RefutedWithWitness(Witness),
    ConsistentOnGrid(GridDigest),
}

impl Verdict {
    pub fn kind(&self) -> &'static str {
        match self {
            Verdict::ExactlyTrue => "exactly-true",
            Verdict::ExactlyFalse(_) => "exactly-false",
            Verdict::RefutedWithWitness(_) => "refuted-with-witness",
            Verdict::ConsistentOnGrid(_) => "consistent-on-grid",
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::ExactlyFalse(w) | Verdict::RefutedWithWitness(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub claim: Claim,
    pub verdict: Verdict,
}

impl Certificate {
    /// Re-verifies the witness by direct relation evaluation against the
    /// graph; no certificate is accepted on solver say-so alone.
    pub fn replay(&self, t: &OperatorGraph) -> bool {
        let mode = t.mode();
        match (&self.claim, &self.verdict) {
            (_, Verdict::ExactlyTrue) | (_, Verdict::ConsistentOnGrid(_)) => true,
            (Claim::Quasimonotone, Verdict::ExactlyFalse(Witness::PairOfPairs(p, q))) => {
                t.contains_pair(p) && t.contains_pair(q) && !qm_related(p, q, &mode)
            }
            (Claim::Monotone, Verdict::ExactlyFalse(Witness::PairOfPairs(p, q))) => {
                t.contains_pair(p) && t.contains_pair(q) && !mono_related(p, q, &mode)
            }
            (Claim::Maximal, Verdict::ExactlyFalse(Witness::Pair(p))) => {
                !t.contains_pair(p) && t.polar_member(p).unwrap_or(false)
            }
            (Claim::Premaximal, Verdict::RefutedWithWitness(Witness::PairOfPairs(p, q))) => {
                t.polar_member(p).unwrap_or(false)
                    && t.polar_member(q).unwrap_or(false)
                    && !qm_related(p, q, &mode)
            }
            (Claim::AeMaximal, Verdict::ExactlyFalse(Witness::Pair(p))) => {
                let in_polar = t.polar_member(p).unwrap_or(false);
                let hull = t.conic_hull(true);
                let in_hull = hull
                    .fiber_at(&p.x)
                    .member(&p.xstar)
                    .unwrap_or(true);
                in_polar && !in_hull
            }
            (Claim::BipolarMember, Verdict::RefutedWithWitness(Witness::PairOfPairs(p, q))) => {
                t.polar_member(q).unwrap_or(false) && !qm_related(p, q, &mode)
            }
            _ => false,
        }
    }
}

/// Exact quasimonotonicity certificate for a finite graph.
pub fn certify_quasimonotone(t: &OperatorGraph) -> Certificate {
    let verdict = match t.quasimonotone_violation() {
        None => Verdict::ExactlyTrue,
        Some((p, q)) => Verdict::ExactlyFalse(Witness::PairOfPairs(p, q)),
    };
    Certificate {
        claim: Claim::Quasimonotone,
        verdict,
    }
}

/// Exact monotonicity certificate for a finite graph.
pub fn certify_monotone(t: &OperatorGraph) -> Certificate {
    let verdict = match t.monotone_violation() {
        None => Verdict::ExactlyTrue,
        Some((p, q)) => Verdict::ExactlyFalse(Witness::PairOfPairs(p, q)),
    };
    Certificate {
        claim: Claim::Monotone,
        verdict,
    }
}

fn require_quasimonotone(t: &OperatorGraph) -> Result<(), Error> {
    if t.is_quasimonotone() {
        Ok(())
    } else {
        Err(Error::NotQuasimonotone)
    }
}

fn check_grid(t: &OperatorGraph, g: &Grid) -> Result<(), Error> {
    if g.dim() != t.dim() {
        return Err(Error::DimensionMismatch {
            expected: t.dim(),
            got: g.dim(),
        });
    }
    if g.mode() != t.mode() {
        return Err(Error::MixedModes);
    }
    Ok(())
}

/// Candidate covectors at a base point: the grid probes plus the extreme
/// rays of the polar fiber there (rays skipped above the DD guard), in
/// canonical order.
fn candidate_covectors(t: &OperatorGraph, fiber: &HCone, g: &Grid) -> Vec<Vector> {
    let mut cands: Vec<Vector> = g.probe_covectors().to_vec();
    if t.dim() <= crate::cones::DD_DIMENSION_GUARD {
        if let Ok(rays) = fiber.extreme_rays() {
            cands.extend(rays.generators().iter().cloned());
        }
    }
    cands.sort_by(|a, b| vec_cmp(a, b));
    cands.dedup();
    cands
}

/// Searches the scaffold for a polar member outside the graph. Any such
/// pair extends the graph to a strictly larger quasimonotone operator, so
/// finding one decides non-maximality outright.
pub fn certify_maximal(t: &OperatorGraph, g: &Grid) -> Result<Certificate, Error> {
    require_quasimonotone(t)?;
    check_grid(t, g)?;
    for x in g.base_points() {
        let fiber = t.polar_fiber(x)?;
        for c in candidate_covectors(t, &fiber, g) {
            let p = Pair::new(x.clone(), c);
            if t.contains_pair(&p) {
                continue;
            }
            if t.polar_member(&p)? {
                let cert = Certificate {
                    claim: Claim::Maximal,
                    verdict: Verdict::ExactlyFalse(Witness::Pair(p)),
                };
                debug_assert!(cert.replay(t));
                return Ok(cert);
            }
        }
    }
    Ok(Certificate {
        claim: Claim::Maximal,
        verdict: Verdict::ConsistentOnGrid(g.digest()),
    })
}

/// Looks for a quasimonotonicity violation inside the polar: two grid
/// points whose fibers admit strictly positive products against each
/// other. Each existential is the cone LP `{v in fiber, <d, v> = 1}`.
pub fn certify_premaximal(t: &OperatorGraph, g: &Grid) -> Result<Certificate, Error> {
    require_quasimonotone(t)?;
    check_grid(t, g)?;
    let bases = g.base_points();
    let fibers: Vec<HCone> = bases
        .iter()
        .map(|x| t.polar_fiber(x))
        .collect::<Result<_, _>>()?;
    for i in 0..bases.len() {
        for j in (i + 1)..bases.len() {
            let d = vec_sub(&bases[j], &bases[i]);
            let Some(v) = fibers[i].admits_positive(&d)? else {
                continue;
            };
            if let Some(w) = fibers[j].admits_positive(&vec_neg(&d))? {
                let p = Pair::new(bases[i].clone(), v);
                let q = Pair::new(bases[j].clone(), w);
                let cert = Certificate {
                    claim: Claim::Premaximal,
                    verdict: Verdict::RefutedWithWitness(Witness::PairOfPairs(p, q)),
                };
                debug_assert!(cert.replay(t));
                return Ok(cert);
            }
        }
    }
    Ok(Certificate {
        claim: Claim::Premaximal,
        verdict: Verdict::ConsistentOnGrid(g.digest()),
    })
}

/// Compares the conic hull fiber against the polar fiber at every grid
/// point. For a quasimonotone graph the hull fiber is always contained in
/// the polar fiber, so any strict gap shows up as a polar extreme ray
/// outside the hull and refutes the conic-maximality claim outright.
pub fn certify_ae_maximal(t: &OperatorGraph, g: &Grid) -> Result<Certificate, Error> {
    require_quasimonotone(t)?;
    check_grid(t, g)?;
    let hull = t.conic_hull(true);
    for x in g.base_points() {
        let fiber = t.polar_fiber(x)?;
        let kcone = hull.fiber_at(x);
        debug_assert!(
            fiber.contains_vcone(&kcone)?,
            "hull fiber escapes the polar fiber of a quasimonotone graph"
        );
        let rays = fiber.extreme_rays()?;
        for ray in rays.generators() {
            if !kcone.member(ray)? {
                let cert = Certificate {
                    claim: Claim::AeMaximal,
                    verdict: Verdict::ExactlyFalse(Witness::Pair(Pair::new(
                        x.clone(),
                        ray.clone(),
                    ))),
                };
                debug_assert!(cert.replay(t));
                return Ok(cert);
            }
        }
    }
    Ok(Certificate {
        claim: Claim::AeMaximal,
        verdict: Verdict::ConsistentOnGrid(g.digest()),
    })
}

/// Grid falsification of `p in T^nunu`: finds a grid-based element of the
/// polar which is not quasimonotonically related to `p`.
pub fn bipolar_member_falsify(
    t: &OperatorGraph,
    p: &Pair,
    g: &Grid,
) -> Result<Certificate, Error> {
    check_grid(t, g)?;
    check_vector(&p.x, t.dim(), &t.mode())?;
    check_vector(&p.xstar, t.dim(), &t.mode())?;
    let mode = t.mode();
    for y in g.base_points() {
        let d = vec_sub(y, &p.x);
        if !mode.is_positive(&dot(&d, &p.xstar)) {
            continue;
        }
        let fiber = t.polar_fiber(y)?;
        if let Some(w) = fiber.admits_positive(&vec_neg(&d))? {
            let q = Pair::new(y.clone(), w);
            let cert = Certificate {
                claim: Claim::BipolarMember,
                verdict: Verdict::RefutedWithWitness(Witness::PairOfPairs(p.clone(), q)),
            };
            debug_assert!(cert.replay(t));
            return Ok(cert);
        }
    }
    Ok(Certificate {
        claim: Claim::BipolarMember,
        verdict: Verdict::ConsistentOnGrid(g.digest()),
    })
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

    fn graph1(pairs: &[(Scalar, Scalar)]) -> OperatorGraph {
        OperatorGraph::new(
            1,
            Mode::Exact,
            pairs
                .iter()
                .map(|(x, xs)| Pair::new(vec![x.clone()], vec![xs.clone()]))
                .collect(),
        )
        .unwrap()
    }

    fn z_slice(m: i64) -> OperatorGraph {
        graph1(
            &(-m..=m)
                .map(|k| (s(k), s(1)))
                .collect::<Vec<_>>(),
        )
    }

    fn grid1(points: &[Scalar]) -> Grid {
        Grid::new(
            1,
            Mode::Exact,
            points.iter().map(|p| vec![p.clone()]).collect(),
            vec![vec![s(-1)], vec![s(1)]],
        )
        .unwrap()
    }

    /// Scenario-style grid for the integer slice: interior base points
    /// (where the truncated sample still mirrors the full operator) plus
    /// the midpoints 1/2 and 3/2.
    fn z_slice_grid() -> Grid {
        grid1(&[s(-1), s(0), half(1), s(1), half(3), s(2)])
    }

    #[test]
    fn maximal_is_refuted_with_the_midpoint_witness() {
        let t = z_slice(2);
        let cert = certify_maximal(&t, &z_slice_grid()).unwrap();
        match &cert.verdict {
            Verdict::ExactlyFalse(Witness::Pair(p)) => {
                assert_eq!(p, &Pair::new(vec![half(1)], vec![s(1)]));
            }
            other => panic!("expected exactly-false, got {other:?}"),
        }
        assert!(cert.replay(&t));
    }

    #[test]
    fn zero_covector_probe_refutes_any_off_graph_point() {
        let t = graph1(&[(s(0), s(1))]);
        let g = Grid::new(1, Mode::Exact, vec![vec![s(1)]], vec![vec![s(0)]]).unwrap();
        let cert = certify_maximal(&t, &g).unwrap();
        match &cert.verdict {
            Verdict::ExactlyFalse(Witness::Pair(p)) => {
                assert_eq!(p, &Pair::new(vec![s(1)], vec![s(0)]));
            }
            other => panic!("expected exactly-false, got {other:?}"),
        }
    }

    #[test]
    fn premaximal_consistent_on_the_paper_grid() {
        let t = z_slice(2);
        // Midpoint ladder -2.5, -1.5, ..., 2.5.
        let g = grid1(&[half(-5), half(-3), half(-1), half(1), half(3), half(5)]);
        let cert = certify_premaximal(&t, &g).unwrap();
        assert!(matches!(cert.verdict, Verdict::ConsistentOnGrid(_)));
    }

    #[test]
    fn ae_maximal_fails_for_the_slice_with_midpoint_witness() {
        let t = z_slice(2);
        let cert = certify_ae_maximal(&t, &z_slice_grid()).unwrap();
        match &cert.verdict {
            Verdict::ExactlyFalse(Witness::Pair(p)) => {
                assert_eq!(p, &Pair::new(vec![half(1)], vec![s(1)]));
            }
            other => panic!("expected exactly-false, got {other:?}"),
        }
        assert!(cert.replay(&t));
    }

    #[test]
    fn sign_sample_is_ae_consistent_and_its_perturbation_is_not() {
        let sign = graph1(&[(s(-1), s(-1)), (s(0), s(-1)), (s(0), s(1)), (s(1), s(1))]);
        let g = grid1(&[s(-1), s(0), s(1)]);
        let cert = certify_ae_maximal(&sign, &g).unwrap();
        assert!(matches!(cert.verdict, Verdict::ConsistentOnGrid(_)));

        let perturbed = sign.perturb(&[s(1)]).unwrap();
        let cert = certify_ae_maximal(&perturbed, &g).unwrap();
        match &cert.verdict {
            Verdict::ExactlyFalse(Witness::Pair(p)) => {
                assert!(cert.replay(&perturbed));
                assert_eq!(p.x, vec![s(-1)]);
            }
            other => panic!("expected exactly-false, got {other:?}"),
        }
    }

    #[test]
    fn non_quasimonotone_input_is_rejected() {
        let t = graph1(&[(s(0), s(1)), (s(1), s(-1))]);
        let g = grid1(&[s(0)]);
        assert!(matches!(
            certify_maximal(&t, &g),
            Err(Error::NotQuasimonotone)
        ));
        assert!(matches!(
            certify_premaximal(&t, &g),
            Err(Error::NotQuasimonotone)
        ));
        assert!(matches!(
            certify_ae_maximal(&t, &g),
            Err(Error::NotQuasimonotone)
        ));
    }

    #[test]
    fn bipolar_falsification_on_the_slice() {
        let t = z_slice(2);
        let p = Pair::new(vec![s(0)], vec![s(-1)]);
        let g = grid1(&[half(-1)]);
        let cert = bipolar_member_falsify(&t, &p, &g).unwrap();
        match &cert.verdict {
            Verdict::RefutedWithWitness(Witness::PairOfPairs(probe, q)) => {
                assert_eq!(probe, &p);
                assert_eq!(q.x, vec![half(-1)]);
                assert!(!qm_related(probe, q, &Mode::Exact));
                assert!(t.polar_member(q).unwrap());
            }
            other => panic!("expected refuted, got {other:?}"),
        }
        assert!(cert.replay(&t));
    }

    #[test]
    fn bipolar_holds_for_graph_pairs_and_zero_covectors() {
        let t = z_slice(1);
        let g = z_slice_grid();
        for p in t.pairs() {
            let cert = bipolar_member_falsify(&t, p, &g).unwrap();
            assert!(matches!(cert.verdict, Verdict::ConsistentOnGrid(_)));
        }
        let zero = Pair::new(vec![s(7)], vec![s(0)]);
        let cert = bipolar_member_falsify(&t, &zero, &g).unwrap();
        assert!(matches!(cert.verdict, Verdict::ConsistentOnGrid(_)));
    }

    #[test]
    fn certificates_are_translation_equivariant() {
        let t = z_slice(2);
        let g = z_slice_grid();
        let x0 = vec![s(3)];
        let t2 = t.translate(&x0).unwrap();
        let g2 = g.translate(&x0).unwrap();
        let before = certify_ae_maximal(&t, &g).unwrap();
        let after = certify_ae_maximal(&t2, &g2).unwrap();
        match (&before.verdict, &after.verdict) {
            (
                Verdict::ExactlyFalse(Witness::Pair(p)),
                Verdict::ExactlyFalse(Witness::Pair(q)),
            ) => {
                assert_eq!(vec_add(&p.x, &x0), q.x);
                assert_eq!(p.xstar, q.xstar);
            }
            other => panic!("expected matching refutations, got {other:?}"),
        }
        let b2 = certify_premaximal(&t, &g).unwrap();
        let a2 = certify_premaximal(&t2, &g2).unwrap();
        assert_eq!(b2.verdict.kind(), a2.verdict.kind());
    }

    #[test]
    fn default_grid_catches_the_slice_midpoint() {
        let t = z_slice(2);
        let g = Grid::default_for(&t);
        assert!(g
            .base_points()
            .iter()
            .any(|b| b == &vec![half(1)]));
        // Margin points one diameter out on both sides.
        assert!(g.base_points().iter().any(|b| b == &vec![s(-6)]));
        assert!(g.base_points().iter().any(|b| b == &vec![s(6)]));
    }

    #[test]
    fn grid_digest_is_stable_and_content_sensitive() {
        let g1 = grid1(&[s(0), s(1)]);
        let g2 = grid1(&[s(1), s(0)]);
        let g3 = grid1(&[s(0), s(2)]);
        assert_eq!(g1.digest(), g2.digest());
        assert_ne!(g1.digest().digest, g3.digest().digest);
    }
}
