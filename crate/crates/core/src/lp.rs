//! Dense linear-programming kernel: feasibility and optimization over free
//! variables with `<=` / `=` constraints.
//!
//! Two-phase simplex with Bland's anti-cycling rule on a dense tableau.
//! Free variables are split into differences of nonnegative pairs. Exact
//! mode runs entirely in rational arithmetic, so feasibility answers are
//! decisions, not estimates. Instances here are tiny (cone membership,
//! redundancy tests, coordinate ranges), so simplicity wins over speed.

use std::cmp::Ordering;

use crate::error::Error;
use crate::scalar::{dot, Mode, Scalar, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub normal: Vector,
    pub rhs: Scalar,
    pub sense: Sense,
}

impl Constraint {
    pub fn le(normal: Vector, rhs: Scalar) -> Self {
        Constraint {
            normal,
            rhs,
            sense: Sense::Le,
        }
    }

    pub fn eq(normal: Vector, rhs: Scalar) -> Self {
        Constraint {
            normal,
            rhs,
            sense: Sense::Eq,
        }
    }
}

/// A small dense LP: `dim` free variables, constraints, and an optional
/// linear objective to maximize.
#[derive(Clone, Debug)]
pub struct LpProblem {
    pub dim: usize,
    pub mode: Mode,
    pub constraints: Vec<Constraint>,
    pub objective: Option<Vector>,
}

impl LpProblem {
    pub fn new(
        dim: usize,
        mode: Mode,
        constraints: Vec<Constraint>,
        objective: Option<Vector>,
    ) -> Result<Self, Error> {
        if constraints.is_empty() && objective.is_none() {
            return Err(Error::EmptyProblem);
        }
        for c in &constraints {
            if c.normal.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: c.normal.len(),
                });
            }
            if !c.normal.iter().all(|s| mode.admits(s)) || !mode.admits(&c.rhs) {
                return Err(Error::MixedModes);
            }
        }
        if let Some(obj) = &objective {
            if obj.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: obj.len(),
                });
            }
            if !obj.iter().all(|s| mode.admits(s)) {
                return Err(Error::MixedModes);
            }
        }
        Ok(LpProblem {
            dim,
            mode,
            constraints,
            objective,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpResult {
    Infeasible,
    Optimal { point: Vector, value: Scalar },
    Unbounded { ray: Vector },
}

impl LpResult {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpResult::Infeasible)
    }

    pub fn point(&self) -> Option<&Vector> {
        match self {
            LpResult::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }
}

/// Solves the problem: phase-1 feasibility, then phase-2 optimization when
/// an objective is present.
pub fn lp_feasible(problem: &LpProblem) -> Result<LpResult, Error> {
    let mut t = Tableau::build(problem);
    if !t.phase_one() {
        return Ok(LpResult::Infeasible);
    }
    match &problem.objective {
        None => Ok(LpResult::Optimal {
            point: t.extract_point(),
            value: problem.mode.zero(),
        }),
        Some(obj) => match t.phase_two(obj) {
            Phase2::Optimal => {
                let point = t.extract_point();
                let value = dot(obj, &point);
                Ok(LpResult::Optimal { point, value })
            }
            Phase2::Unbounded(ray) => Ok(LpResult::Unbounded { ray }),
        },
    }
}

/// Convenience: feasibility of a constraint set without an objective.
pub fn feasible_point(
    dim: usize,
    mode: Mode,
    constraints: Vec<Constraint>,
) -> Result<Option<Vector>, Error> {
    if constraints.is_empty() {
        return Ok(Some(vec![mode.zero(); dim]));
    }
    let problem = LpProblem::new(dim, mode, constraints, None)?;
    match lp_feasible(&problem)? {
        LpResult::Infeasible => Ok(None),
        LpResult::Optimal { point, .. } => Ok(Some(point)),
        LpResult::Unbounded { .. } => unreachable!("feasibility run cannot be unbounded"),
    }
}

enum Phase2 {
    Optimal,
    Unbounded(Vector),
}

/// Dense simplex tableau. Columns: `2*dim` split variables (x = u - w),
/// then one slack per `<=` row, then one artificial per row that lacks a
/// natural basic column. The final column is the right-hand side.
struct Tableau {
    mode: Mode,
    dim: usize,
    n_cols: usize, // structural (split vars + slacks) + artificials
    rows: Vec<Vec<Scalar>>,
    basis: Vec<usize>,
    artificial_start: usize,
}

impl Tableau {
    fn build(problem: &LpProblem) -> Self {
        let mode = problem.mode;
        let dim = problem.dim;
        let m = problem.constraints.len();
        let n_slack = problem
            .constraints
            .iter()
            .filter(|c| c.sense == Sense::Le)
            .count();
        let n_structural = 2 * dim + n_slack;

        // Assemble rows over split variables and slacks, with rhs >= 0.
        let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(m);
        let mut slack_col_of_row: Vec<Option<usize>> = Vec::with_capacity(m);
        let mut negated: Vec<bool> = Vec::with_capacity(m);
        let mut next_slack = 2 * dim;
        for c in &problem.constraints {
            let mut row = vec![mode.zero(); n_structural + 1];
            for (k, a) in c.normal.iter().enumerate() {
                row[k] = a.clone();
                row[dim + k] = -a;
            }
            let slack = if c.sense == Sense::Le {
                row[next_slack] = mode.one();
                let s = next_slack;
                next_slack += 1;
                Some(s)
            } else {
                None
            };
            row[n_structural] = c.rhs.clone();
            let neg = mode.sign(&row[n_structural]) == Ordering::Less;
            if neg {
                for v in row.iter_mut() {
                    *v = -&*v;
                }
            }
            rows.push(row);
            slack_col_of_row.push(slack);
            negated.push(neg);
        }

        // Basic column per row: the slack when its coefficient stayed +1,
        // otherwise a fresh artificial.
        let mut basis = vec![usize::MAX; m];
        let mut artificial_rows = Vec::new();
        for r in 0..m {
            match slack_col_of_row[r] {
                Some(s) if !negated[r] => basis[r] = s,
                _ => artificial_rows.push(r),
            }
        }
        let n_cols = n_structural + artificial_rows.len();
        for row in rows.iter_mut() {
            let rhs = row.pop().expect("row has rhs");
            row.resize(n_cols, mode.zero());
            row.push(rhs);
        }
        for (i, &r) in artificial_rows.iter().enumerate() {
            let col = n_structural + i;
            rows[r][col] = mode.one();
            basis[r] = col;
        }

        Tableau {
            mode,
            dim,
            n_cols,
            rows,
            basis,
            artificial_start: n_structural,
        }
    }

    fn rhs(&self, r: usize) -> &Scalar {
        &self.rows[r][self.n_cols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let pivot = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v = &*v / &pivot;
        }
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let factor = self.rows[i][c].clone();
            if self.mode.is_zero(&factor) {
                continue;
            }
            for j in 0..=self.n_cols {
                let delta = &factor * &self.rows[r][j];
                self.rows[i][j] = &self.rows[i][j] - &delta;
            }
        }
        self.basis[r] = c;
    }

    /// One simplex run minimizing `cost` over the columns in
    /// `[0, eligible_end)`. Returns the entering column that proved the
    /// problem unbounded, if any.
    fn minimize(&mut self, cost: &[Scalar], eligible_end: usize) -> Option<usize> {
        loop {
            // Reduced costs z_j = c_j - c_B . column_j, recomputed fresh;
            // Bland: enter at the smallest improving index.
            let mut entering = None;
            for j in 0..eligible_end {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut z = cost[j].clone();
                for (r, row) in self.rows.iter().enumerate() {
                    let cb = &cost[self.basis[r]];
                    if !self.mode.is_zero(cb) {
                        z = z - cb * &row[j];
                    }
                }
                if self.mode.sign(&z) == Ordering::Less {
                    entering = Some(j);
                    break;
                }
            }
            let Some(j) = entering else {
                return None; // optimal
            };

            // Ratio test; Bland tie-break on the smallest basis column.
            let mut leaving: Option<(usize, Scalar)> = None;
            for r in 0..self.rows.len() {
                let coeff = &self.rows[r][j];
                if self.mode.sign(coeff) != Ordering::Greater {
                    continue;
                }
                let ratio = self.rhs(r) / coeff;
                leaving = match leaving {
                    None => Some((r, ratio)),
                    Some((best_r, best)) => match self.mode.cmp(&ratio, &best) {
                        Ordering::Less => Some((r, ratio)),
                        Ordering::Equal if self.basis[r] < self.basis[best_r] => Some((r, ratio)),
                        _ => Some((best_r, best)),
                    },
                };
            }
            match leaving {
                Some((r, _)) => self.pivot(r, j),
                None => return Some(j), // unbounded along column j
            }
        }
    }

    /// Phase 1: true iff the constraint system is feasible.
    fn phase_one(&mut self) -> bool {
        if self.n_cols == self.artificial_start {
            return true; // no artificials were needed
        }
        let mut cost = vec![self.mode.zero(); self.n_cols];
        for c in cost.iter_mut().skip(self.artificial_start) {
            *c = self.mode.one();
        }
        let unbounded = self.minimize(&cost, self.n_cols);
        debug_assert!(unbounded.is_none(), "phase 1 is bounded below by zero");
        let mut obj = self.mode.zero();
        for (r, &b) in self.basis.iter().enumerate() {
            if b >= self.artificial_start {
                obj = obj + self.rhs(r).clone();
            }
        }
        if self.mode.sign(&obj) == Ordering::Greater {
            return false;
        }
        self.drive_out_artificials();
        true
    }

    /// Pivots zero-valued artificials out of the basis; rows where no
    /// structural pivot exists are redundant and dropped.
    fn drive_out_artificials(&mut self) {
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] < self.artificial_start {
                r += 1;
                continue;
            }
            let pivot_col = (0..self.artificial_start)
                .find(|&j| !self.mode.is_zero(&self.rows[r][j]) && !self.basis.contains(&j));
            match pivot_col {
                Some(j) => {
                    self.pivot(r, j);
                    r += 1;
                }
                None => {
                    self.rows.remove(r);
                    self.basis.remove(r);
                }
            }
        }
    }

    fn phase_two(&mut self, objective: &Vector) -> Phase2 {
        // Maximize c.x == minimize -c over the split columns.
        let mut cost = vec![self.mode.zero(); self.n_cols];
        for (k, c) in objective.iter().enumerate() {
            cost[k] = -c;
            cost[self.dim + k] = c.clone();
        }
        match self.minimize(&cost, self.artificial_start) {
            None => Phase2::Optimal,
            Some(j) => Phase2::Unbounded(self.extract_ray(j)),
        }
    }

    fn column_values(&self) -> Vec<Scalar> {
        let mut vals = vec![self.mode.zero(); self.n_cols];
        for (r, &b) in self.basis.iter().enumerate() {
            vals[b] = self.rhs(r).clone();
        }
        vals
    }

    fn extract_point(&self) -> Vector {
        let vals = self.column_values();
        (0..self.dim)
            .map(|k| &vals[k] - &vals[self.dim + k])
            .collect()
    }

    /// Recession direction in the original variables for an entering column
    /// with no blocking row.
    fn extract_ray(&self, entering: usize) -> Vector {
        let mut cols = vec![self.mode.zero(); self.n_cols];
        cols[entering] = self.mode.one();
        for (r, &b) in self.basis.iter().enumerate() {
            cols[b] = -&self.rows[r][entering];
        }
        let ray: Vector = (0..self.dim)
            .map(|k| &cols[k] - &cols[self.dim + k])
            .collect();
        crate::scalar::canonicalize_direction(&ray, &self.mode)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    fn exact_le(normal: Vec<i64>, rhs: i64) -> Constraint {
        Constraint::le(normal.into_iter().map(s).collect(), s(rhs))
    }

    fn exact_eq(normal: Vec<i64>, rhs: i64) -> Constraint {
        Constraint::eq(normal.into_iter().map(s).collect(), s(rhs))
    }

    #[test]
    fn contradictory_constraints_are_infeasible() {
        let p = LpProblem::new(
            1,
            Mode::Exact,
            vec![exact_le(vec![1], 0), exact_eq(vec![1], 1)],
            None,
        )
        .unwrap();
        assert_eq!(lp_feasible(&p).unwrap(), LpResult::Infeasible);
    }

    #[test]
    fn boundary_optimum() {
        let p = LpProblem::new(
            1,
            Mode::Exact,
            vec![exact_le(vec![1], 0)],
            Some(vec![s(1)]),
        )
        .unwrap();
        match lp_feasible(&p).unwrap() {
            LpResult::Optimal { point, value } => {
                assert_eq!(point, vec![s(0)]);
                assert_eq!(value, s(0));
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn halfline_is_unbounded_with_unit_ray() {
        let p = LpProblem::new(
            1,
            Mode::Exact,
            vec![exact_le(vec![-1], 0)],
            Some(vec![s(1)]),
        )
        .unwrap();
        match lp_feasible(&p).unwrap() {
            LpResult::Unbounded { ray } => assert_eq!(ray, vec![s(1)]),
            other => panic!("expected unbounded, got {other:?}"),
        }
    }

    #[test]
    fn equality_rows_with_negative_rhs() {
        // maximize x subject to x + y = -3, x - y <= 1: x <= -1.
        let p = LpProblem::new(
            2,
            Mode::Exact,
            vec![exact_eq(vec![1, 1], -3), exact_le(vec![1, -1], 1)],
            Some(vec![s(1), s(0)]),
        )
        .unwrap();
        match lp_feasible(&p).unwrap() {
            LpResult::Optimal { point, value } => {
                assert_eq!(&point[0] + &point[1], s(-3));
                assert_eq!(value, s(-1));
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    // ---- brute-force vertex enumeration oracle ------------------------

    /// Exact Gaussian elimination for square systems; None when singular.
    fn gauss_solve(a: &[Vec<Scalar>], b: &[Scalar]) -> Option<Vector> {
        let n = b.len();
        let mut m: Vec<Vec<Scalar>> = a
            .iter()
            .zip(b.iter())
            .map(|(row, rhs)| {
                let mut r = row.clone();
                r.push(rhs.clone());
                r
            })
            .collect();
        for col in 0..n {
            let pivot_row = (col..n).find(|&r| m[r][col] != s(0))?;
            m.swap(col, pivot_row);
            let pivot = m[col][col].clone();
            for j in col..=n {
                m[col][j] = &m[col][j] / &pivot;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = m[r][col].clone();
                if f == s(0) {
                    continue;
                }
                for j in col..=n {
                    let d = &f * &m[col][j];
                    m[r][j] = &m[r][j] - &d;
                }
            }
        }
        Some(m.into_iter().map(|row| row[n].clone()).collect())
    }

    fn satisfies_all(point: &[Scalar], cons: &[Constraint]) -> bool {
        cons.iter().all(|c| {
            let v = dot(&c.normal, point);
            match c.sense {
                Sense::Le => v <= c.rhs,
                Sense::Eq => v == c.rhs,
            }
        })
    }

    /// Enumerates candidate vertices (solutions of dim-subsets treated as
    /// equalities) and returns the best feasible objective value.
    fn vertex_oracle(p: &LpProblem) -> Option<(Vector, Scalar)> {
        let obj = p.objective.as_ref().unwrap();
        let n = p.dim;
        let m = p.constraints.len();
        let mut best: Option<(Vector, Scalar)> = None;
        let mut subset = vec![0usize; n];
        fn rec(
            depth: usize,
            start: usize,
            n: usize,
            m: usize,
            subset: &mut Vec<usize>,
            p: &LpProblem,
            obj: &Vector,
            best: &mut Option<(Vector, Scalar)>,
        ) {
            if depth == n {
                let a: Vec<Vec<Scalar>> = subset
                    .iter()
                    .map(|&i| p.constraints[i].normal.clone())
                    .collect();
                let b: Vec<Scalar> = subset.iter().map(|&i| p.constraints[i].rhs.clone()).collect();
                if let Some(x) = gauss_solve(&a, &b) {
                    if satisfies_all(&x, &p.constraints) {
                        let v = dot(obj, &x);
                        let better = match best {
                            None => true,
                            Some((_, bv)) => v.total_cmp(bv) == Ordering::Greater,
                        };
                        if better {
                            *best = Some((x, v));
                        }
                    }
                }
                return;
            }
            for i in start..m {
                subset[depth] = i;
                rec(depth + 1, i + 1, n, m, subset, p, obj, best);
            }
        }
        rec(0, 0, n, m, &mut subset, p, obj, &mut best);
        best
    }

    fn random_problem(rng: &mut StdRng, bounding_box: bool) -> LpProblem {
        let dim = rng.gen_range(1..=3usize);
        let n_cons = rng.gen_range(1..=8usize);
        let mut cons = Vec::new();
        for _ in 0..n_cons {
            let normal: Vector = (0..dim).map(|_| s(rng.gen_range(-3..=3))).collect();
            if normal.iter().all(|v| *v == s(0)) {
                continue;
            }
            let rhs = s(rng.gen_range(-3..=3));
            let sense = if rng.gen_bool(0.85) { Sense::Le } else { Sense::Eq };
            cons.push(Constraint { normal, rhs, sense });
        }
        if bounding_box {
            // Large enough to contain every vertex of small-integer systems.
            for k in 0..dim {
                let mut n1 = vec![s(0); dim];
                n1[k] = s(1);
                cons.push(Constraint::le(n1, s(10_000)));
                let mut n2 = vec![s(0); dim];
                n2[k] = s(-1);
                cons.push(Constraint::le(n2, s(10_000)));
            }
        }
        if cons.is_empty() {
            cons.push(exact_le(vec![1; dim], 3));
        }
        let objective: Vector = (0..dim).map(|_| s(rng.gen_range(-3..=3))).collect();
        LpProblem::new(dim, Mode::Exact, cons, Some(objective)).unwrap()
    }

    #[test]
    fn optimal_results_match_vertex_enumeration() {
        let mut rng = StdRng::seed_from_u64(42);
        let mut optimal_seen = 0;
        for _ in 0..150 {
            let p = random_problem(&mut rng, true);
            let result = lp_feasible(&p).unwrap();
            let oracle = vertex_oracle(&p);
            match result {
                LpResult::Infeasible => assert!(
                    oracle.is_none(),
                    "simplex says infeasible but oracle found a vertex"
                ),
                LpResult::Optimal { point, value } => {
                    optimal_seen += 1;
                    assert!(satisfies_all(&point, &p.constraints), "optimal point violates");
                    let (_, oracle_value) =
                        oracle.expect("oracle must find a vertex of a bounded feasible region");
                    assert_eq!(value, oracle_value, "objective value mismatch on {p:?}");
                }
                LpResult::Unbounded { .. } => {
                    panic!("boxed instances cannot be unbounded")
                }
            }
        }
        assert!(optimal_seen > 20, "fuzz should produce optimal cases");
    }

    #[test]
    fn unbounded_rays_are_certified() {
        let mut rng = StdRng::seed_from_u64(7);
        let mut unbounded_seen = 0;
        for _ in 0..200 {
            let p = random_problem(&mut rng, false);
            if let LpResult::Unbounded { ray } = lp_feasible(&p).unwrap() {
                unbounded_seen += 1;
                let obj = p.objective.as_ref().unwrap();
                assert!(dot(obj, &ray).raw_sign() == Ordering::Greater);
                for c in &p.constraints {
                    let v = dot(&c.normal, &ray);
                    match c.sense {
                        Sense::Le => assert!(v.raw_sign() != Ordering::Greater),
                        Sense::Eq => assert!(v.raw_sign() == Ordering::Equal),
                    }
                }
            }
        }
        assert!(unbounded_seen > 10, "fuzz should produce unbounded cases");
    }

    #[test]
    fn bland_terminates_on_larger_instances() {
        let mut rng = StdRng::seed_from_u64(99);
        for _ in 0..40 {
            let dim = rng.gen_range(1..=6usize);
            let n_cons = rng.gen_range(1..=64usize);
            let mut cons = Vec::new();
            for _ in 0..n_cons {
                let normal: Vector = (0..dim).map(|_| s(rng.gen_range(-2..=2))).collect();
                if normal.iter().all(|v| *v == s(0)) {
                    continue;
                }
                cons.push(Constraint::le(normal, s(rng.gen_range(0..=3))));
            }
            if cons.is_empty() {
                continue;
            }
            let objective: Vector = (0..dim).map(|_| s(rng.gen_range(-2..=2))).collect();
            let p = LpProblem::new(dim, Mode::Exact, cons, Some(objective)).unwrap();
            // Termination is the assertion; any verdict is acceptable.
            let _ = lp_feasible(&p).unwrap();
        }
    }

    #[test]
    fn float_and_exact_agree_on_integer_instances() {
        let mut rng = StdRng::seed_from_u64(2024);
        for _ in 0..100 {
            let p = random_problem(&mut rng, true);
            let float_cons: Vec<Constraint> = p
                .constraints
                .iter()
                .map(|c| Constraint {
                    normal: c.normal.iter().map(|v| Scalar::Float(v.to_f64())).collect(),
                    rhs: Scalar::Float(c.rhs.to_f64()),
                    sense: c.sense,
                })
                .collect();
            let float_obj = p
                .objective
                .as_ref()
                .map(|o| o.iter().map(|v| Scalar::Float(v.to_f64())).collect());
            let fp = LpProblem::new(p.dim, Mode::float_default(), float_cons, float_obj).unwrap();
            let exact = lp_feasible(&p).unwrap();
            let float = lp_feasible(&fp).unwrap();
            let status = |r: &LpResult| match r {
                LpResult::Infeasible => 0,
                LpResult::Optimal { .. } => 1,
                LpResult::Unbounded { .. } => 2,
            };
            assert_eq!(status(&exact), status(&float), "status disagreement");
        }
    }

    #[test]
    fn objective_without_constraints_is_unbounded() {
        let p = LpProblem::new(2, Mode::Exact, vec![], Some(vec![s(1), s(0)])).unwrap();
        assert!(matches!(lp_feasible(&p).unwrap(), LpResult::Unbounded { .. }));
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let err = LpProblem::new(2, Mode::Exact, vec![exact_le(vec![1], 0)], None);
        assert!(matches!(err, Err(Error::DimensionMismatch { .. })));
    }
}
