//! Exact two-phase simplex over the rationals.
//!
//! Pivoting follows Bland's rule (smallest improving column enters, smallest
//! basic index leaves on ratio ties), which guarantees termination. Every
//! outcome carries a certificate that [`LpOutcome::verify`] re-checks by
//! substitution; [`solve_lp`] asserts that check before returning.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::{int, RatVector, Rational};

/// `maximize objective·x` subject to `a·x <= b` for every constraint and
/// `x_j >= 0` wherever `nonneg[j]` is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpProblem {
    pub objective: RatVector,
    pub constraints: Vec<(RatVector, Rational)>,
    pub nonneg: Vec<bool>,
}

/// Farkas multipliers proving that an [`LpProblem`] has no feasible point:
/// `λ >= 0`, `μ >= 0` (with `μ_j = 0` on free variables),
/// `Σ λ_i a_i - μ = 0` and `Σ λ_i b_i < 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfeasibilityCertificate {
    pub constraint_multipliers: Vec<Rational>,
    pub bound_multipliers: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { point: RatVector, value: Rational },
    Infeasible(InfeasibilityCertificate),
    /// `point` is feasible and `point + t·ray` stays feasible for all `t >= 0`
    /// while the objective grows without bound.
    Unbounded { point: RatVector, ray: RatVector },
}

impl LpProblem {
    /// A problem in `num_vars` free variables with zero objective and no constraints.
    pub fn new(num_vars: usize) -> Self {
        LpProblem {
            objective: RatVector::zeros(num_vars),
            constraints: Vec::new(),
            nonneg: vec![false; num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.dim()
    }

    pub fn maximize(mut self, objective: RatVector) -> Self {
        assert_eq!(objective.dim(), self.num_vars());
        self.objective = objective;
        self
    }

    pub fn add_constraint(&mut self, a: RatVector, b: Rational) {
        assert_eq!(a.dim(), self.num_vars());
        self.constraints.push((a, b));
    }

    pub fn set_nonneg(&mut self, var: usize) {
        self.nonneg[var] = true;
    }

    pub fn is_feasible(&self, x: &RatVector) -> bool {
        x.dim() == self.num_vars()
            && self
                .nonneg
                .iter()
                .zip(x.iter())
                .all(|(&nn, v)| !nn || !v.is_negative())
            && self.constraints.iter().all(|(a, b)| a.dot(x) <= *b)
    }
}

impl InfeasibilityCertificate {
    pub fn verify(&self, p: &LpProblem) -> bool {
        let n = p.num_vars();
        if self.constraint_multipliers.len() != p.constraints.len()
            || self.bound_multipliers.len() != n
        {
            return false;
        }
        if self
            .constraint_multipliers
            .iter()
            .chain(&self.bound_multipliers)
            .any(Signed::is_negative)
        {
            return false;
        }
        if (0..n).any(|j| !p.nonneg[j] && !self.bound_multipliers[j].is_zero()) {
            return false;
        }
        let mut combo = RatVector::zeros(n);
        let mut rhs = Rational::zero();
        for (lambda, (a, b)) in self.constraint_multipliers.iter().zip(&p.constraints) {
            if lambda.is_zero() {
                continue;
            }
            combo = &combo + &a.scale(lambda);
            rhs += lambda * b;
        }
        let balanced = (0..n).all(|j| combo[j] == self.bound_multipliers[j]);
        balanced && rhs.is_negative()
    }
}

impl LpOutcome {
    /// Re-checks the outcome against `p` by exact substitution.
    pub fn verify(&self, p: &LpProblem) -> bool {
        match self {
            LpOutcome::Optimal { point, value } => {
                p.is_feasible(point) && p.objective.dot(point) == *value
            }
            LpOutcome::Infeasible(cert) => cert.verify(p),
            LpOutcome::Unbounded { point, ray } => {
                p.is_feasible(point)
                    && ray.dim() == p.num_vars()
                    && p.objective.dot(ray).is_positive()
                    && p.constraints.iter().all(|(a, _)| !a.dot(ray).is_positive())
                    && p
                        .nonneg
                        .iter()
                        .zip(ray.iter())
                        .all(|(&nn, r)| !nn || !r.is_negative())
            }
        }
    }

    pub fn is_optimal(&self) -> bool {
        matches!(self, LpOutcome::Optimal { .. })
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, LpOutcome::Infeasible(_))
    }
}

/// Solves `p` exactly. Deterministic: identical inputs give identical outputs.
pub fn solve_lp(p: &LpProblem) -> LpOutcome {
    let outcome = solve_unchecked(p);
    assert!(
        outcome.verify(p),
        "simplex produced an outcome that fails re-substitution"
    );
    outcome
}

fn solve_unchecked(p: &LpProblem) -> LpOutcome {
    let n = p.num_vars();
    let m = p.constraints.len();

    // Column layout: one column per nonneg variable, a (+,-) pair per free
    // variable, then one slack per constraint.
    let mut pos_col = Vec::with_capacity(n);
    let mut neg_col = Vec::with_capacity(n);
    let mut ncols = 0;
    for &nn in &p.nonneg {
        pos_col.push(ncols);
        ncols += 1;
        if nn {
            neg_col.push(None);
        } else {
            neg_col.push(Some(ncols));
            ncols += 1;
        }
    }
    let slack0 = ncols;
    ncols += m;

    let mut a = vec![vec![Rational::zero(); ncols]; m];
    let mut b = Vec::with_capacity(m);
    for (i, (row, rhs)) in p.constraints.iter().enumerate() {
        for j in 0..n {
            if row[j].is_zero() {
                continue;
            }
            a[i][pos_col[j]] = row[j].clone();
            if let Some(c) = neg_col[j] {
                a[i][c] = -row[j].clone();
            }
        }
        a[i][slack0 + i] = int(1);
        b.push(rhs.clone());
    }
    let mut cost = vec![Rational::zero(); ncols];
    for j in 0..n {
        cost[pos_col[j]] = -p.objective[j].clone();
        if let Some(c) = neg_col[j] {
            cost[c] = p.objective[j].clone();
        }
    }

    let to_x = |y: &[Rational]| -> RatVector {
        (0..n)
            .map(|j| {
                let mut v = y[pos_col[j]].clone();
                if let Some(c) = neg_col[j] {
                    v -= &y[c];
                }
                v
            })
            .collect()
    };

    match solve_standard(a, b, &cost) {
        StdOutcome::Optimal(y) => {
            let point = to_x(&y);
            let value = p.objective.dot(&point);
            LpOutcome::Optimal { point, value }
        }
        StdOutcome::Unbounded { point, ray } => LpOutcome::Unbounded {
            point: to_x(&point),
            ray: to_x(&ray),
        },
        StdOutcome::Infeasible => LpOutcome::Infeasible(farkas(p)),
    }
}

/// Finds Farkas multipliers for an infeasible problem by solving the
/// alternative system `λ >= 0, μ >= 0, λᵀA - μ = 0, λᵀb = -1`.
fn farkas(p: &LpProblem) -> InfeasibilityCertificate {
    let n = p.num_vars();
    let m = p.constraints.len();
    let bounded: Vec<usize> = (0..n).filter(|&j| p.nonneg[j]).collect();
    let ncols = m + bounded.len();
    let mut a = vec![vec![Rational::zero(); ncols]; n + 1];
    for (i, (row, rhs)) in p.constraints.iter().enumerate() {
        for j in 0..n {
            a[j][i] = row[j].clone();
        }
        a[n][i] = rhs.clone();
    }
    for (k, &j) in bounded.iter().enumerate() {
        a[j][m + k] = int(-1);
    }
    let mut b = vec![Rational::zero(); n + 1];
    b[n] = int(-1);
    let cost = vec![Rational::zero(); ncols];
    let StdOutcome::Optimal(y) = solve_standard(a, b, &cost) else {
        unreachable!("Farkas alternative must be feasible for an infeasible system");
    };
    let mut bound_multipliers = vec![Rational::zero(); n];
    for (k, &j) in bounded.iter().enumerate() {
        bound_multipliers[j] = y[m + k].clone();
    }
    InfeasibilityCertificate {
        constraint_multipliers: y[..m].to_vec(),
        bound_multipliers,
    }
}

enum StdOutcome {
    Optimal(Vec<Rational>),
    Infeasible,
    Unbounded {
        point: Vec<Rational>,
        ray: Vec<Rational>,
    },
}

/// Fraction-free tableau: the true entries are `rows / det` and `rhs / det`,
/// with `det > 0` the determinant of the current basis. Pivoting divides
/// exactly by the previous determinant, so entries stay integral and no gcd
/// is ever taken.
struct Tableau {
    rows: Vec<Vec<BigInt>>,
    rhs: Vec<BigInt>,
    basis: Vec<usize>,
    det: BigInt,
}

fn exact_div(num: BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_rem(den);
    debug_assert!(r.is_zero(), "fraction-free pivot left a remainder");
    q
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        let unit = p == self.det;
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let f = std::mem::take(&mut self.rows[i][c]);
            if f.is_zero() {
                if !unit {
                    for x in self.rows[i].iter_mut().chain(std::iter::once(&mut self.rhs[i])) {
                        if !x.is_zero() {
                            *x = exact_div(&*x * &p, &self.det);
                        }
                    }
                }
                continue;
            }
            for (j, x) in self.rows[i].iter_mut().enumerate() {
                if j == c {
                    continue;
                }
                let pr = &pivot_row[j];
                if pr.is_zero() {
                    if !x.is_zero() && !unit {
                        *x = exact_div(&*x * &p, &self.det);
                    }
                } else {
                    *x = exact_div(&*x * &p - &f * pr, &self.det);
                }
            }
            let x = &mut self.rhs[i];
            *x = exact_div(&*x * &p - &f * &pivot_rhs, &self.det);
        }
        self.det = p;
        if self.det.is_negative() {
            self.det = -std::mem::take(&mut self.det);
            for x in self.rows.iter_mut().flatten().chain(self.rhs.iter_mut()) {
                if !x.is_zero() {
                    *x = -std::mem::take(x);
                }
            }
        }
        self.basis[r] = c;
    }

    /// Bland-rule simplex minimizing `cost` over the allowed columns.
    /// Returns `Err(col)` when `col` is an unbounded improving direction.
    fn run(&mut self, cost: &[BigInt], allowed: usize) -> Result<(), usize> {
        loop {
            let mut entering = None;
            for j in 0..allowed {
                if self.basis.contains(&j) {
                    continue;
                }
                // Reduced cost scaled by `det`.
                let mut reduced = &cost[j] * &self.det;
                for (r, &bj) in self.basis.iter().enumerate() {
                    if !cost[bj].is_zero() && !self.rows[r][j].is_zero() {
                        reduced -= &cost[bj] * &self.rows[r][j];
                    }
                }
                if reduced.is_negative() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else {
                return Ok(());
            };
            let mut leaving: Option<usize> = None;
            for r in 0..self.rows.len() {
                if !self.rows[r][c].is_positive() {
                    continue;
                }
                let better = match leaving {
                    None => true,
                    Some(lr) => {
                        let lhs = &self.rhs[r] * &self.rows[lr][c];
                        let rhs = &self.rhs[lr] * &self.rows[r][c];
                        lhs < rhs || (lhs == rhs && self.basis[r] < self.basis[lr])
                    }
                };
                if better {
                    leaving = Some(r);
                }
            }
            match leaving {
                Some(r) => self.pivot(r, c),
                None => return Err(c),
            }
        }
    }

    fn value(&self, x: &BigInt) -> Rational {
        Rational::new(x.clone(), self.det.clone())
    }

    fn solution(&self, ncols: usize) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); ncols];
        for (r, &bj) in self.basis.iter().enumerate() {
            if bj < ncols {
                x[bj] = self.value(&self.rhs[r]);
            }
        }
        x
    }
}

fn common_denominator<'a>(xs: impl Iterator<Item = &'a Rational>) -> BigInt {
    xs.fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

fn scaled(x: &Rational, by: &BigInt) -> BigInt {
    x.numer() * (by / x.denom())
}

/// `minimize cost·x` subject to `A x = b`, `x >= 0`.
fn solve_standard(a: Vec<Vec<Rational>>, b: Vec<Rational>, cost: &[Rational]) -> StdOutcome {
    let m = a.len();
    let n = cost.len();

    // One common scale for all of `A` and `b` keeps the artificials' phase
    // one weights equal, so the pivot sequence is that of the rational
    // tableau.
    let scale = common_denominator(a.iter().flatten().chain(b.iter()));
    let cost_scale = common_denominator(cost.iter());
    let cost: Vec<BigInt> = cost.iter().map(|x| scaled(x, &cost_scale)).collect();

    // Phase 1: artificial identity columns n..n+m on sign-normalized rows.
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for (i, (row, bi)) in a.into_iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let sign = |x: BigInt| if flip { -x } else { x };
        let mut out: Vec<BigInt> = row.iter().map(|x| sign(scaled(x, &scale))).collect();
        out.extend((0..m).map(|k| if k == i { BigInt::one() } else { BigInt::zero() }));
        rows.push(out);
        rhs.push(sign(scaled(&bi, &scale)));
    }
    let mut t = Tableau {
        rows,
        rhs,
        basis: (n..n + m).collect(),
        det: BigInt::one(),
    };
    let mut phase1_cost = vec![BigInt::zero(); n];
    phase1_cost.extend((0..m).map(|_| BigInt::one()));
    t.run(&phase1_cost, n + m)
        .expect("phase one objective is bounded below");
    let infeasibility: BigInt = t
        .basis
        .iter()
        .zip(&t.rhs)
        .filter(|(&bj, _)| bj >= n)
        .map(|(_, v)| v.clone())
        .sum();
    if infeasibility.is_positive() {
        return StdOutcome::Infeasible;
    }

    // Drive remaining (zero-level) artificials out of the basis; rows with no
    // structural entry left are redundant and dropped.
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] < n {
            r += 1;
            continue;
        }
        match (0..n).find(|&j| !t.rows[r][j].is_zero()) {
            Some(j) => {
                t.pivot(r, j);
                r += 1;
            }
            None => {
                t.rows.remove(r);
                t.rhs.remove(r);
                t.basis.remove(r);
            }
        }
    }
    for row in t.rows.iter_mut() {
        row.truncate(n);
    }

    match t.run(&cost, n) {
        Ok(()) => StdOutcome::Optimal(t.solution(n)),
        Err(c) => {
            let point = t.solution(n);
            let mut ray = vec![Rational::zero(); n];
            ray[c] = int(1);
            for (r, &bj) in t.basis.iter().enumerate() {
                ray[bj] = -t.value(&t.rows[r][c]);
            }
            StdOutcome::Unbounded { point, ray }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> RatVector {
        RatVector::from_ints(xs)
    }

    #[test]
    fn single_variable_optimum() {
        let mut p = LpProblem::new(1).maximize(v(&[1]));
        p.add_constraint(v(&[1]), int(1));
        match solve_lp(&p) {
            LpOutcome::Optimal { point, value } => {
                assert_eq!(point, v(&[1]));
                assert_eq!(value, int(1));
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn contradictory_bounds_give_unit_multipliers() {
        let mut p = LpProblem::new(1);
        p.add_constraint(v(&[1]), int(-1));
        p.add_constraint(v(&[-1]), int(0));
        let LpOutcome::Infeasible(cert) = solve_lp(&p) else {
            panic!("expected infeasible");
        };
        assert!(cert.verify(&p));
        assert_eq!(cert.constraint_multipliers, vec![int(1), int(1)]);
    }

    #[test]
    fn unbounded_ray() {
        let mut p = LpProblem::new(2).maximize(v(&[1, 1]));
        p.add_constraint(v(&[1, -1]), int(0));
        let out = solve_lp(&p);
        assert!(matches!(out, LpOutcome::Unbounded { .. }));
    }

    #[test]
    fn nonneg_bounds_enter_certificate() {
        // x >= 0 and x <= -1
        let mut p = LpProblem::new(1);
        p.set_nonneg(0);
        p.add_constraint(v(&[1]), int(-1));
        let LpOutcome::Infeasible(cert) = solve_lp(&p) else {
            panic!("expected infeasible");
        };
        assert_eq!(cert.bound_multipliers, vec![int(1)]);
    }

    #[test]
    fn degenerate_problem_terminates() {
        // Classic cycling-prone instance (Beale); Bland's rule must terminate.
        use crate::linalg::frac;
        let mut p = LpProblem::new(4).maximize(RatVector::new(vec![
            frac(3, 4),
            int(-150),
            frac(1, 50),
            int(-6),
        ]));
        for j in 0..4 {
            p.set_nonneg(j);
        }
        p.add_constraint(
            RatVector::new(vec![frac(1, 4), int(-60), frac(-1, 25), int(9)]),
            int(0),
        );
        p.add_constraint(
            RatVector::new(vec![frac(1, 2), int(-90), frac(-1, 50), int(3)]),
            int(0),
        );
        p.add_constraint(v(&[0, 0, 1, 0]), int(1));
        match solve_lp(&p) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, frac(1, 20)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn equality_via_paired_inequalities() {
        // x + y = 2, x - y = 0, maximize x
        let mut p = LpProblem::new(2).maximize(v(&[1, 0]));
        p.add_constraint(v(&[1, 1]), int(2));
        p.add_constraint(v(&[-1, -1]), int(-2));
        p.add_constraint(v(&[1, -1]), int(0));
        p.add_constraint(v(&[-1, 1]), int(0));
        match solve_lp(&p) {
            LpOutcome::Optimal { point, .. } => assert_eq!(point, v(&[1, 1])),
            other => panic!("unexpected {other:?}"),
        }
    }
}
