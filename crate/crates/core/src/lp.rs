//! Exact rational linear programming over `[0, 1]` boxes.
//!
//! A bounded-variable primal simplex on a dense tableau with Bland's rule.
//! Arithmetic first runs in `Ratio<i128>` with overflow checks; any overflow
//! restarts the solve in `BigRational`. Every answer is exact.

use std::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use crate::dist::Rational;
use crate::error::{invalid_arg, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Row {
    pub coeffs: Vec<(usize, Rational)>,
    pub sense: Sense,
    pub rhs: Rational,
}

impl Row {
    pub fn new(coeffs: Vec<(usize, Rational)>, sense: Sense, rhs: Rational) -> Self {
        Row { coeffs, sense, rhs }
    }

    pub fn lhs(&self, values: &[Rational]) -> Rational {
        self.coeffs.iter().map(|(j, a)| a * &values[*j]).sum()
    }

    pub fn holds(&self, values: &[Rational]) -> bool {
        let lhs = self.lhs(values);
        match self.sense {
            Sense::Le => lhs <= self.rhs,
            Sense::Ge => lhs >= self.rhs,
            Sense::Eq => lhs == self.rhs,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Objective {
    pub coeffs: Vec<(usize, Rational)>,
    pub maximize: bool,
}

/// Variables live in `[0, 1]`; rows are sparse.
#[derive(Clone, Debug, Default)]
pub struct LinearProgram {
    num_vars: usize,
    rows: Vec<Row>,
    objective: Option<Objective>,
    forced_zero: Vec<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Feasible,
    Optimal,
    Infeasible,
}

#[derive(Clone, Debug)]
pub struct FractionalSolution {
    pub status: LpStatus,
    pub values: Vec<Rational>,
    pub objective: Option<Rational>,
    /// Set when `values` is a vertex of the feasible polytope.
    pub vertex: bool,
}

impl FractionalSolution {
    pub fn is_feasible(&self) -> bool {
        self.status != LpStatus::Infeasible
    }

    pub fn fractional_count(&self) -> usize {
        self.values.iter().filter(|v| !v.is_integer()).count()
    }
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            rows: Vec::new(),
            objective: None,
            forced_zero: vec![false; num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn objective(&self) -> Option<&Objective> {
        self.objective.as_ref()
    }

    pub fn add_row(&mut self, coeffs: Vec<(usize, Rational)>, sense: Sense, rhs: Rational) -> usize {
        self.rows.push(Row::new(coeffs, sense, rhs));
        self.rows.len() - 1
    }

    pub fn set_objective(&mut self, coeffs: Vec<(usize, Rational)>, maximize: bool) {
        self.objective = Some(Objective { coeffs, maximize });
    }

    pub fn force_zero(&mut self, var: usize) {
        self.forced_zero[var] = true;
    }

    pub fn is_forced_zero(&self, var: usize) -> bool {
        self.forced_zero[var]
    }

    fn validate(&self) -> Result<()> {
        let check = |coeffs: &[(usize, Rational)], what: &str| {
            for (j, _) in coeffs {
                if *j >= self.num_vars {
                    return Err(invalid_arg!(
                        "{what} references variable {j}, program has {}",
                        self.num_vars
                    ));
                }
            }
            Ok(())
        };
        for (i, row) in self.rows.iter().enumerate() {
            check(&row.coeffs, &format!("row {i}"))?;
        }
        if let Some(obj) = &self.objective {
            check(&obj.coeffs, "objective")?;
        }
        Ok(())
    }

    /// Rows violated by `values` (box bounds and forced zeros are reported as `None`).
    pub fn violations(&self, values: &[Rational]) -> Vec<Option<usize>> {
        let mut out = Vec::new();
        if values.len() != self.num_vars {
            out.push(None);
            return out;
        }
        for (j, v) in values.iter().enumerate() {
            if v.is_negative() || *v > Rational::one() || (self.forced_zero[j] && !v.is_zero()) {
                out.push(None);
                break;
            }
        }
        for (i, row) in self.rows.iter().enumerate() {
            if !row.holds(values) {
                out.push(Some(i));
            }
        }
        out
    }

    pub fn is_satisfied_by(&self, values: &[Rational]) -> bool {
        self.violations(values).is_empty()
    }

    pub fn objective_value(&self, values: &[Rational]) -> Option<Rational> {
        self.objective
            .as_ref()
            .map(|o| o.coeffs.iter().map(|(j, a)| a * &values[*j]).sum())
    }
}

/// Finds a feasible point, or reports infeasibility.
pub fn solve_feasibility(lp: &LinearProgram) -> Result<FractionalSolution> {
    lp.validate()?;
    let mut sol = run(lp, false);
    if sol.status == LpStatus::Optimal {
        sol.status = LpStatus::Feasible;
        sol.objective = None;
    }
    Ok(sol)
}

/// Optimizes the objective and returns an optimal vertex.
pub fn solve_extreme_max(lp: &LinearProgram) -> Result<FractionalSolution> {
    lp.validate()?;
    if lp.objective.is_none() {
        return Err(invalid_arg!("extreme-point solve needs an objective"));
    }
    Ok(run(lp, true))
}

fn run(lp: &LinearProgram, optimize: bool) -> FractionalSolution {
    match Simplex::<Ratio<i128>>::solve(lp, optimize) {
        Some(sol) => sol,
        None => Simplex::<Rational>::solve(lp, optimize)
            .expect("big rational arithmetic cannot overflow"),
    }
}

/// Exact field arithmetic; `None` signals overflow.
trait Field: Clone + Ord + fmt::Debug {
    fn nil() -> Self;
    fn unit() -> Self;
    fn from_rational(r: &Rational) -> Option<Self>;
    fn to_rational(&self) -> Rational;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn div(&self, o: &Self) -> Option<Self>;
    fn is_nil(&self) -> bool;
    fn is_pos(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn neg(&self) -> Self;
}

impl Field for Ratio<i128> {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn from_rational(r: &Rational) -> Option<Self> {
        Some(Ratio::new_raw(r.numer().to_i128()?, r.denom().to_i128()?))
    }
    fn to_rational(&self) -> Rational {
        Rational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        self.checked_div(o)
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_pos(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Self {
        -*self
    }
}

impl Field for Rational {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn from_rational(r: &Rational) -> Option<Self> {
        Some(r.clone())
    }
    fn to_rational(&self) -> Rational {
        self.clone()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        Some(self / o)
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_pos(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Upper {
    One,
    Unbounded,
    /// Artificial variables after phase one.
    Fixed,
}

struct Simplex<F> {
    /// Tableau `B^-1 A`, one row per constraint.
    rows: Vec<Vec<F>>,
    /// Current values of the basic variables.
    beta: Vec<F>,
    basis: Vec<usize>,
    is_basic: Vec<bool>,
    at_upper: Vec<bool>,
    upper: Vec<Upper>,
    /// Reduced costs of the current phase.
    reduced: Vec<F>,
    cost: Vec<F>,
}

enum Step {
    Optimal,
    Continue,
    Unbounded,
}

impl<F: Field> Simplex<F> {
    fn solve(lp: &LinearProgram, optimize: bool) -> Option<FractionalSolution> {
        // columns: kept structural vars, then one slack per inequality, then artificials
        let kept: Vec<usize> = (0..lp.num_vars).filter(|&j| !lp.forced_zero[j]).collect();
        let mut col_of = vec![usize::MAX; lp.num_vars];
        for (c, &j) in kept.iter().enumerate() {
            col_of[j] = c;
        }
        let num_struct = kept.len();
        let num_slack = lp.rows.iter().filter(|r| r.sense != Sense::Eq).count();
        let m = lp.rows.len();

        // dense rows with slack, normalized so rhs >= 0
        let mut dense: Vec<Vec<F>> = Vec::with_capacity(m);
        let mut rhs: Vec<F> = Vec::with_capacity(m);
        let mut slack_col: Vec<Option<usize>> = Vec::with_capacity(m);
        let mut next_slack = num_struct;
        for row in &lp.rows {
            let mut d = vec![F::nil(); num_struct + num_slack];
            for (j, a) in &row.coeffs {
                let c = col_of[*j];
                if c != usize::MAX {
                    d[c] = d[c].add(&F::from_rational(a)?)?;
                }
            }
            let mut b = F::from_rational(&row.rhs)?;
            let mut slack = None;
            match row.sense {
                Sense::Le => {
                    d[next_slack] = F::unit();
                    slack = Some(next_slack);
                    next_slack += 1;
                }
                Sense::Ge => {
                    d[next_slack] = F::unit().neg();
                    slack = Some(next_slack);
                    next_slack += 1;
                }
                Sense::Eq => {}
            }
            let flip = b.is_neg() || (b.is_nil() && slack.is_some_and(|s| d[s].is_neg()));
            if flip {
                for v in d.iter_mut() {
                    *v = v.neg();
                }
                b = b.neg();
            }
            dense.push(d);
            rhs.push(b);
            slack_col.push(slack);
        }

        // initial basis: a +1 slack where available, otherwise an artificial
        let mut basis = Vec::with_capacity(m);
        let mut artificial_rows = Vec::new();
        for i in 0..m {
            match slack_col[i] {
                Some(s) if dense[i][s].is_pos() => basis.push(s),
                _ => {
                    artificial_rows.push(i);
                    basis.push(usize::MAX);
                }
            }
        }
        let num_art = artificial_rows.len();
        let total = num_struct + num_slack + num_art;
        for d in dense.iter_mut() {
            d.resize(total, F::nil());
        }
        for (a, &i) in artificial_rows.iter().enumerate() {
            let col = num_struct + num_slack + a;
            dense[i][col] = F::unit();
            basis[i] = col;
        }
        let mut upper = vec![Upper::One; num_struct];
        upper.extend(std::iter::repeat_n(Upper::Unbounded, num_slack + num_art));
        let mut is_basic = vec![false; total];
        for &b in &basis {
            is_basic[b] = true;
        }

        let mut sx = Simplex {
            rows: dense,
            beta: rhs,
            basis,
            is_basic,
            at_upper: vec![false; total],
            upper,
            reduced: Vec::new(),
            cost: Vec::new(),
        };

        if num_art > 0 {
            let mut cost = vec![F::nil(); total];
            for a in 0..num_art {
                cost[num_struct + num_slack + a] = F::unit();
            }
            sx.set_cost(cost)?;
            loop {
                match sx.step()? {
                    Step::Optimal => break,
                    Step::Continue => {}
                    Step::Unbounded => unreachable!("phase one is bounded below"),
                }
            }
            let first_art = num_struct + num_slack;
            let infeasible = sx
                .basis
                .iter()
                .zip(&sx.beta)
                .any(|(&b, v)| b >= first_art && !v.is_nil());
            if infeasible {
                return Some(FractionalSolution {
                    status: LpStatus::Infeasible,
                    values: Vec::new(),
                    objective: None,
                    vertex: false,
                });
            }
            sx.drive_out_artificials(first_art)?;
            for a in first_art..total {
                sx.upper[a] = Upper::Fixed;
            }
        }

        let mut status = LpStatus::Feasible;
        if optimize {
            let obj = lp.objective.as_ref().expect("checked by caller");
            let mut cost = vec![F::nil(); total];
            for (j, a) in &obj.coeffs {
                let c = col_of[*j];
                if c == usize::MAX {
                    continue;
                }
                let a = F::from_rational(a)?;
                // the tableau minimizes
                let a = if obj.maximize { a.neg() } else { a };
                cost[c] = cost[c].add(&a)?;
            }
            sx.set_cost(cost)?;
            loop {
                match sx.step()? {
                    Step::Optimal => break,
                    Step::Continue => {}
                    Step::Unbounded => unreachable!("box-bounded objective"),
                }
            }
            status = LpStatus::Optimal;
        }

        let mut col_values = vec![F::nil(); total];
        for j in 0..total {
            if !sx.is_basic[j] && sx.at_upper[j] {
                col_values[j] = F::unit();
            }
        }
        for (i, &b) in sx.basis.iter().enumerate() {
            col_values[b] = sx.beta[i].clone();
        }
        let values: Vec<Rational> = (0..lp.num_vars)
            .map(|j| match col_of[j] {
                usize::MAX => <Rational as Zero>::zero(),
                c => col_values[c].to_rational(),
            })
            .collect();
        let objective = if optimize { lp.objective_value(&values) } else { None };
        Some(FractionalSolution { status, values, objective, vertex: true })
    }

    fn set_cost(&mut self, cost: Vec<F>) -> Option<()> {
        let mut reduced = cost.clone();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_nil() {
                continue;
            }
            for (j, r) in reduced.iter_mut().enumerate() {
                let t = &self.rows[i][j];
                if !t.is_nil() {
                    *r = r.sub(&cb.mul(t)?)?;
                }
            }
        }
        self.cost = cost;
        self.reduced = reduced;
        Some(())
    }

    fn movable(&self, j: usize) -> bool {
        !self.is_basic[j] && self.upper[j] != Upper::Fixed
    }

    /// One Bland iteration.
    fn step(&mut self) -> Option<Step> {
        let entering = (0..self.reduced.len()).find(|&j| {
            self.movable(j)
                && ((!self.at_upper[j] && self.reduced[j].is_neg())
                    || (self.at_upper[j] && self.reduced[j].is_pos()))
        });
        let Some(j) = entering else {
            return Some(Step::Optimal);
        };
        let increasing = !self.at_upper[j];

        // ratio test; ties go to the smallest basic variable index
        let mut best: Option<(F, usize)> = None;
        for i in 0..self.rows.len() {
            let t = &self.rows[i][j];
            if t.is_nil() {
                continue;
            }
            // basic value moves by -theta * coef
            let coef = if increasing { t.clone() } else { t.neg() };
            let limit = if coef.is_pos() {
                self.beta[i].div(&coef)?
            } else {
                match self.upper[self.basis[i]] {
                    Upper::One => F::unit().sub(&self.beta[i])?.div(&coef.neg())?,
                    Upper::Fixed => F::nil(),
                    Upper::Unbounded => continue,
                }
            };
            let better = match &best {
                None => true,
                Some((theta, r)) => limit < *theta || (limit == *theta && self.basis[i] < self.basis[*r]),
            };
            if better {
                best = Some((limit, i));
            }
        }
        let flip_limit = match self.upper[j] {
            Upper::One => Some(F::unit()),
            _ => None,
        };

        let flip = match (&best, &flip_limit) {
            (None, None) => return Some(Step::Unbounded),
            (None, Some(_)) => true,
            (Some(_), None) => false,
            (Some((theta, _)), Some(f)) => f < theta,
        };

        if flip {
            // entering variable jumps to its other bound
            let theta = F::unit();
            for i in 0..self.rows.len() {
                let t = &self.rows[i][j];
                if t.is_nil() {
                    continue;
                }
                let delta = theta.mul(t)?;
                self.beta[i] = if increasing { self.beta[i].sub(&delta)? } else { self.beta[i].add(&delta)? };
            }
            self.at_upper[j] = increasing;
            return Some(Step::Continue);
        }

        let (theta, r) = best.expect("pivot row exists");
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let t = &self.rows[i][j];
            if t.is_nil() {
                continue;
            }
            let delta = theta.mul(t)?;
            self.beta[i] = if increasing { self.beta[i].sub(&delta)? } else { self.beta[i].add(&delta)? };
        }
        let leaving = self.basis[r];
        let coef = if increasing { self.rows[r][j].clone() } else { self.rows[r][j].neg() };
        let leaving_to_upper = coef.is_neg() && self.upper[leaving] == Upper::One;
        let entering_value = if increasing { theta } else { F::unit().sub(&theta)? };
        self.pivot(r, j)?;
        self.beta[r] = entering_value;
        self.is_basic[leaving] = false;
        self.at_upper[leaving] = leaving_to_upper;
        self.is_basic[j] = true;
        self.at_upper[j] = false;
        self.basis[r] = j;
        Some(Step::Continue)
    }

    /// Gauss-Jordan pivot on `(r, j)` over the tableau and the reduced costs.
    fn pivot(&mut self, r: usize, j: usize) -> Option<()> {
        let p = self.rows[r][j].clone();
        if p != F::unit() {
            for v in self.rows[r].iter_mut() {
                if !v.is_nil() {
                    *v = v.div(&p)?;
                }
            }
        }
        let pivot_row = self.rows[r].clone();
        let nz: Vec<usize> = (0..pivot_row.len()).filter(|&c| !pivot_row[c].is_nil()).collect();
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let f = self.rows[i][j].clone();
            if f.is_nil() {
                continue;
            }
            for &c in &nz {
                let v = self.rows[i][c].sub(&f.mul(&pivot_row[c])?)?;
                self.rows[i][c] = v;
            }
        }
        let f = self.reduced[j].clone();
        if !f.is_nil() {
            for &c in &nz {
                self.reduced[c] = self.reduced[c].sub(&f.mul(&pivot_row[c])?)?;
            }
        }
        Some(())
    }

    /// Pivots zero-valued artificials out of the basis; rows with no other
    /// support are redundant and dropped.
    fn drive_out_artificials(&mut self, first_art: usize) -> Option<()> {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] < first_art {
                i += 1;
                continue;
            }
            let col = (0..first_art).find(|&c| !self.is_basic[c] && !self.rows[i][c].is_nil());
            match col {
                Some(c) => {
                    // degenerate pivot: the artificial is zero, values do not move
                    let value = if self.at_upper[c] { F::unit() } else { F::nil() };
                    let leaving = self.basis[i];
                    self.pivot(i, c)?;
                    self.beta[i] = value;
                    self.is_basic[leaving] = false;
                    self.at_upper[leaving] = false;
                    self.is_basic[c] = true;
                    self.at_upper[c] = false;
                    self.basis[i] = c;
                    i += 1;
                }
                None => {
                    let b = self.basis[i];
                    self.is_basic[b] = false;
                    self.rows.remove(i);
                    self.beta.remove(i);
                    self.basis.remove(i);
                }
            }
        }
        Some(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{int, rat};

    fn one() -> Rational {
        int(1)
    }

    #[test]
    fn box_makes_large_rhs_infeasible() {
        let mut lp = LinearProgram::new(1);
        lp.add_row(vec![(0, one())], Sense::Ge, int(2));
        let sol = solve_feasibility(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Infeasible);
    }

    #[test]
    fn empty_program_is_feasible_at_zero() {
        let lp = LinearProgram::new(3);
        let sol = solve_feasibility(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Feasible);
        assert!(sol.values.iter().all(Zero::is_zero));
    }

    #[test]
    fn single_forced_variable() {
        // max 5y s.t. 3y >= 3, y <= 1
        let mut lp = LinearProgram::new(1);
        lp.add_row(vec![(0, int(3))], Sense::Ge, int(3));
        lp.add_row(vec![(0, one())], Sense::Le, int(1));
        lp.set_objective(vec![(0, int(5))], true);
        let sol = solve_extreme_max(&lp).unwrap();
        assert_eq!(sol.values, vec![one()]);
        assert_eq!(sol.objective, Some(int(5)));
    }

    #[test]
    fn two_variable_fractional_vertex() {
        // max 4a s.t. 4b >= 2, a + b <= 1
        let mut lp = LinearProgram::new(2);
        lp.add_row(vec![(1, int(4))], Sense::Ge, int(2));
        lp.add_row(vec![(0, one()), (1, one())], Sense::Le, int(1));
        lp.set_objective(vec![(0, int(4))], true);
        let sol = solve_extreme_max(&lp).unwrap();
        assert_eq!(sol.values, vec![rat(1, 2), rat(1, 2)]);
        assert_eq!(sol.objective, Some(int(2)));
        assert_eq!(sol.fractional_count(), 2);
    }

    #[test]
    fn forced_zero_is_respected() {
        let mut lp = LinearProgram::new(2);
        lp.add_row(vec![(0, one()), (1, one())], Sense::Ge, one());
        lp.force_zero(0);
        let sol = solve_feasibility(&lp).unwrap();
        assert_eq!(sol.values, vec![int(0), one()]);
        lp.force_zero(1);
        assert_eq!(solve_feasibility(&lp).unwrap().status, LpStatus::Infeasible);
    }

    #[test]
    fn equality_and_negative_rhs() {
        // x0 - x1 = -1/2  ->  x1 = x0 + 1/2 ; min x1 means x0 = 0
        let mut lp = LinearProgram::new(2);
        lp.add_row(vec![(0, one()), (1, -one())], Sense::Eq, rat(-1, 2));
        lp.set_objective(vec![(1, -one())], true);
        let sol = solve_extreme_max(&lp).unwrap();
        assert_eq!(sol.values, vec![int(0), rat(1, 2)]);
        assert!(lp.is_satisfied_by(&sol.values));
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::new(2);
        lp.add_row(vec![(0, one()), (1, one())], Sense::Eq, one());
        lp.add_row(vec![(0, int(2)), (1, int(2))], Sense::Eq, int(2));
        lp.set_objective(vec![(0, one())], true);
        let sol = solve_extreme_max(&lp).unwrap();
        assert_eq!(sol.values, vec![one(), int(0)]);
    }

    #[test]
    fn bad_variable_reference() {
        let mut lp = LinearProgram::new(1);
        lp.add_row(vec![(3, one())], Sense::Le, one());
        assert!(solve_feasibility(&lp).is_err());
        let lp = LinearProgram::new(1);
        assert!(solve_extreme_max(&lp).is_err());
    }

    #[test]
    fn huge_coefficients_fall_back_to_bigint() {
        let big = Rational::from_integer(BigInt::from(10).pow(40));
        let mut lp = LinearProgram::new(2);
        lp.add_row(vec![(0, big.clone()), (1, one())], Sense::Ge, big.clone() / int(3));
        lp.set_objective(vec![(0, -one()), (1, -one())], true);
        let sol = solve_extreme_max(&lp).unwrap();
        assert!(lp.is_satisfied_by(&sol.values));
        assert_eq!(sol.values[0], rat(1, 3));
    }
}
