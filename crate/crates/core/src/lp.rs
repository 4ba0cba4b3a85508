//! Dense two-phase simplex over exact rationals.
//!
//! Pivoting follows Bland's smallest-index rule in every phase, so the
//! solver terminates on degenerate problems and always returns the same
//! basis for the same input. Problems are stated as
//! `min cᵀx  s.t.  A x {≥,=,≤} b` with a per-variable sign restriction;
//! they are converted to standard form internally (slack and surplus
//! columns, free variables split into a difference of nonnegatives,
//! artificials for `≥` and `=` rows).

use serde::{Deserialize, Serialize};

use crate::numerics::{dot, Rational};
use crate::Error;

/// Row sense of a linear constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sense {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "<=")]
    Le,
}

impl Sense {
    pub fn symbol(self) -> &'static str {
        match self {
            Sense::Ge => ">=",
            Sense::Eq => "=",
            Sense::Le => "<=",
        }
    }

    fn flipped(self) -> Sense {
        match self {
            Sense::Ge => Sense::Le,
            Sense::Eq => Sense::Eq,
            Sense::Le => Sense::Ge,
        }
    }

    /// Whether `lhs (sense) rhs` holds.
    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Sense::Ge => lhs >= rhs,
            Sense::Eq => lhs == rhs,
            Sense::Le => lhs <= rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub matrix: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
    pub senses: Vec<Sense>,
    /// `true` means `x_j ≥ 0`, `false` means `x_j` is free.
    pub sign_restricted: Vec<bool>,
}

impl LinearProgram {
    /// Builds an LP with all variables nonnegative.
    pub fn new(
        objective: Vec<Rational>,
        matrix: Vec<Vec<Rational>>,
        rhs: Vec<Rational>,
        senses: Vec<Sense>,
    ) -> Result<Self, Error> {
        let n = objective.len();
        Self::with_signs(objective, matrix, rhs, senses, vec![true; n])
    }

    pub fn with_signs(
        objective: Vec<Rational>,
        matrix: Vec<Vec<Rational>>,
        rhs: Vec<Rational>,
        senses: Vec<Sense>,
        sign_restricted: Vec<bool>,
    ) -> Result<Self, Error> {
        let lp = LinearProgram {
            objective,
            matrix,
            rhs,
            senses,
            sign_restricted,
        };
        lp.validate()?;
        Ok(lp)
    }

    pub fn variable_count(&self) -> usize {
        self.objective.len()
    }

    pub fn row_count(&self) -> usize {
        self.matrix.len()
    }

    pub fn validate(&self) -> Result<(), Error> {
        let n = self.objective.len();
        let m = self.matrix.len();
        if self.rhs.len() != m || self.senses.len() != m {
            return Err(Error::DimensionMismatch(format!(
                "{m} rows but {} right-hand sides and {} senses",
                self.rhs.len(),
                self.senses.len()
            )));
        }
        if self.sign_restricted.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{n} variables but {} sign flags",
                self.sign_restricted.len()
            )));
        }
        if let Some((i, row)) = self.matrix.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "row {i} has {} coefficients, expected {n}",
                row.len()
            )));
        }
        Ok(())
    }

    /// Exact feasibility check of a candidate point.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.variable_count()
            && x.iter()
                .zip(&self.sign_restricted)
                .all(|(v, &restricted)| !restricted || !v.is_negative())
            && self
                .matrix
                .iter()
                .zip(&self.rhs)
                .zip(&self.senses)
                .all(|((row, b), sense)| sense.holds(&dot(row, x), b))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpResult {
    pub status: LpStatus,
    pub solution: Option<Vec<Rational>>,
    pub value: Option<Rational>,
    /// Row multipliers of the primary objective; `dualᵀ·rhs = value`.
    pub dual: Option<Vec<Rational>>,
}

impl LpResult {
    fn status_only(status: LpStatus) -> Self {
        LpResult {
            status,
            solution: None,
            value: None,
            dual: None,
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

/// Solves `min objectiveᵀx` over the LP's feasible set.
pub fn solve_lp(lp: &LinearProgram) -> LpResult {
    solve_lex_lp(lp, &[])
}

/// Solves the LP, then successively minimizes each tie objective over the
/// optimal face of the objectives before it.
///
/// The returned point is a basic feasible solution, so it is a vertex of
/// the feasible region (and its image under the objectives is a vertex of
/// the image polyhedron whenever the ties pin it down).
pub fn solve_lex_lp(lp: &LinearProgram, tie_objectives: &[Vec<Rational>]) -> LpResult {
    lp.validate().expect("malformed linear program");
    for t in tie_objectives {
        assert_eq!(t.len(), lp.variable_count(), "tie objective length");
    }
    let mut tableau = Tableau::from_lp(lp);
    if !tableau.phase_one() {
        return LpResult::status_only(LpStatus::Infeasible);
    }
    tableau.start_phase_two(&lp.objective);
    if !tableau.optimize() {
        return LpResult::status_only(LpStatus::Unbounded);
    }
    let primary_reduced = tableau.reduced.clone();
    let value = tableau.objective_value(&lp.objective);
    for tie in tie_objectives {
        tableau.freeze_positive_reduced_costs();
        tableau.set_costs(tie);
        if !tableau.optimize() {
            return LpResult::status_only(LpStatus::Unbounded);
        }
    }
    let solution = tableau.primal_solution();
    let dual = tableau.dual_solution(&primary_reduced);
    debug_assert_eq!(dot(&lp.objective, &solution), value);
    LpResult {
        status: LpStatus::Optimal,
        solution: Some(solution),
        value: Some(value),
        dual: Some(dual),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ColumnKind {
    /// Original variable `j`, with sign `+1` or `-1` (the negative half of a
    /// split free variable).
    Structural {
        var: usize,
        negated: bool,
    },
    Slack,
    Artificial,
}

struct Tableau {
    /// `rows[i]` holds the current `B⁻¹A` row followed by the `B⁻¹b` entry.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    kinds: Vec<ColumnKind>,
    /// Column that was basic for row `i` in the starting basis (identity).
    initial_unit: Vec<usize>,
    /// `+1`/`-1` applied to original row `i` to make its rhs nonnegative.
    row_sign: Vec<bool>,
    costs: Vec<Rational>,
    reduced: Vec<Rational>,
    eligible: Vec<bool>,
    var_count: usize,
}

impl Tableau {
    fn from_lp(lp: &LinearProgram) -> Self {
        let m = lp.row_count();
        let mut kinds = Vec::new();
        for (var, &restricted) in lp.sign_restricted.iter().enumerate() {
            kinds.push(ColumnKind::Structural {
                var,
                negated: false,
            });
            if !restricted {
                kinds.push(ColumnKind::Structural { var, negated: true });
            }
        }
        let structural = kinds.len();

        let mut row_sign = Vec::with_capacity(m);
        let mut senses = Vec::with_capacity(m);
        for (b, &s) in lp.rhs.iter().zip(&lp.senses) {
            let flip = b.is_negative();
            row_sign.push(flip);
            senses.push(if flip { s.flipped() } else { s });
        }
        let slack_rows: Vec<usize> = (0..m).filter(|&i| senses[i] != Sense::Eq).collect();
        let art_rows: Vec<usize> = (0..m).filter(|&i| senses[i] != Sense::Le).collect();
        kinds.extend(slack_rows.iter().map(|_| ColumnKind::Slack));
        kinds.extend(art_rows.iter().map(|_| ColumnKind::Artificial));
        let width = kinds.len();

        let mut rows = vec![vec![Rational::zero(); width + 1]; m];
        let mut basis = vec![usize::MAX; m];
        for (i, row) in rows.iter_mut().enumerate() {
            let sign = if row_sign[i] {
                -Rational::one()
            } else {
                Rational::one()
            };
            for (col, kind) in kinds[..structural].iter().enumerate() {
                if let ColumnKind::Structural { var, negated } = *kind {
                    let a = &lp.matrix[i][var] * &sign;
                    row[col] = if negated { -a } else { a };
                }
            }
            row[width] = &lp.rhs[i] * &sign;
        }
        for (k, &i) in slack_rows.iter().enumerate() {
            let col = structural + k;
            rows[i][col] = match senses[i] {
                Sense::Le => Rational::one(),
                _ => -Rational::one(),
            };
            if senses[i] == Sense::Le {
                basis[i] = col;
            }
        }
        for (k, &i) in art_rows.iter().enumerate() {
            let col = structural + slack_rows.len() + k;
            rows[i][col] = Rational::one();
            basis[i] = col;
        }
        let initial_unit = basis.clone();
        Tableau {
            rows,
            basis,
            kinds,
            initial_unit,
            row_sign,
            costs: vec![Rational::zero(); width],
            reduced: vec![Rational::zero(); width],
            eligible: vec![true; width],
            var_count: lp.variable_count(),
        }
    }

    fn width(&self) -> usize {
        self.kinds.len()
    }

    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.width()]
    }

    fn set_costs(&mut self, per_var: &[Rational]) {
        let costs: Vec<Rational> = self
            .kinds
            .iter()
            .map(|kind| match *kind {
                ColumnKind::Structural { var, negated } => {
                    if negated {
                        -&per_var[var]
                    } else {
                        per_var[var].clone()
                    }
                }
                _ => Rational::zero(),
            })
            .collect();
        self.install_costs(costs);
    }

    fn install_costs(&mut self, costs: Vec<Rational>) {
        let width = self.width();
        let mut reduced = costs.clone();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for (j, r) in reduced.iter_mut().enumerate().take(width) {
                let a = &self.rows[i][j];
                if !a.is_zero() {
                    *r -= &(cb * a);
                }
            }
        }
        self.costs = costs;
        self.reduced = reduced;
    }

    /// Returns `false` when the constraints are infeasible.
    fn phase_one(&mut self) -> bool {
        let costs = self
            .kinds
            .iter()
            .map(|k| match k {
                ColumnKind::Artificial => Rational::one(),
                _ => Rational::zero(),
            })
            .collect();
        self.install_costs(costs);
        let bounded = self.optimize();
        debug_assert!(bounded, "phase one is bounded below by zero");
        let infeasibility: Rational = self
            .basis
            .iter()
            .enumerate()
            .filter(|(_, &b)| self.kinds[b] == ColumnKind::Artificial)
            .map(|(i, _)| self.rhs(i).clone())
            .sum();
        if infeasibility.is_positive() {
            return false;
        }
        // Drive zero-valued artificials out of the basis where possible;
        // rows where that fails are redundant and stay inert.
        for i in 0..self.rows.len() {
            if self.kinds[self.basis[i]] != ColumnKind::Artificial {
                continue;
            }
            let replacement = (0..self.width())
                .find(|&j| self.kinds[j] != ColumnKind::Artificial && !self.rows[i][j].is_zero());
            if let Some(j) = replacement {
                self.pivot(i, j);
            }
        }
        for (j, kind) in self.kinds.iter().enumerate() {
            if *kind == ColumnKind::Artificial {
                self.eligible[j] = false;
            }
        }
        true
    }

    fn start_phase_two(&mut self, objective: &[Rational]) {
        self.set_costs(objective);
    }

    /// Nonbasic columns with positive reduced cost must stay at zero to keep
    /// the current objective optimal.
    fn freeze_positive_reduced_costs(&mut self) {
        for j in 0..self.width() {
            if self.reduced[j].is_positive() {
                self.eligible[j] = false;
            }
        }
    }

    /// Runs primal simplex with Bland's rule. Returns `false` if unbounded.
    fn optimize(&mut self) -> bool {
        loop {
            let entering =
                (0..self.width()).find(|&j| self.eligible[j] && self.reduced[j].is_negative());
            let Some(col) = entering else {
                return true;
            };
            let mut leaving: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leaving {
                    None => true,
                    Some((k, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*k])
                    }
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
            match leaving {
                Some((row, _)) => self.pivot(row, col),
                None => return false,
            }
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let width = self.width();
        let inv = self.rows[row][col]
            .recip()
            .expect("pivot element is nonzero");
        for v in self.rows[row].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = self.rows[row].clone();
        for (i, r) in self.rows.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let factor = r[col].clone();
            for (v, p) in r.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &(&factor * p);
                }
            }
        }
        if !self.reduced[col].is_zero() {
            let factor = self.reduced[col].clone();
            for (v, p) in self.reduced.iter_mut().zip(&pivot_row[..width]) {
                if !p.is_zero() {
                    *v -= &(&factor * p);
                }
            }
        }
        self.basis[row] = col;
    }

    fn column_values(&self) -> Vec<Rational> {
        let mut values = vec![Rational::zero(); self.width()];
        for (i, &b) in self.basis.iter().enumerate() {
            values[b] = self.rhs(i).clone();
        }
        values
    }

    fn primal_solution(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.var_count];
        for (col, value) in self.column_values().into_iter().enumerate() {
            if let ColumnKind::Structural { var, negated } = self.kinds[col] {
                if negated {
                    x[var] -= &value;
                } else {
                    x[var] += &value;
                }
            }
        }
        x
    }

    fn objective_value(&self, objective: &[Rational]) -> Rational {
        dot(objective, &self.primal_solution())
    }

    /// `y = c_B B⁻¹`, read off the reduced costs of the starting identity
    /// columns (all of which carry zero cost in phase two).
    fn dual_solution(&self, primary_reduced: &[Rational]) -> Vec<Rational> {
        self.initial_unit
            .iter()
            .zip(&self.row_sign)
            .map(|(&col, &flipped)| {
                let y = -&primary_reduced[col];
                if flipped {
                    -y
                } else {
                    y
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{rat, rats};

    fn lp(c: &[&str], rows: &[(&[&str], Sense, &str)]) -> LinearProgram {
        LinearProgram::new(
            rats(c),
            rows.iter().map(|(a, _, _)| rats(a)).collect(),
            rows.iter().map(|(_, _, b)| rat(b)).collect(),
            rows.iter().map(|(_, s, _)| *s).collect(),
        )
        .unwrap()
    }

    fn assert_strong_duality(problem: &LinearProgram, result: &LpResult) {
        let dual = result.dual.as_ref().unwrap();
        assert_eq!(&dot(dual, &problem.rhs), result.value.as_ref().unwrap());
    }

    #[test]
    fn box_maximization() {
        let p = lp(
            &["-1", "-1"],
            &[(&["1", "0"], Sense::Le, "1"), (&["0", "1"], Sense::Le, "1")],
        );
        let r = solve_lp(&p);
        assert_eq!(r.status, LpStatus::Optimal);
        assert_eq!(r.solution.as_deref(), Some(&rats(&["1", "1"])[..]));
        assert_eq!(r.value, Some(rat("-2")));
        assert_strong_duality(&p, &r);
    }

    #[test]
    fn contradictory_bounds_are_infeasible() {
        let p = lp(
            &["1"],
            &[(&["1"], Sense::Ge, "1"), (&["1"], Sense::Le, "0")],
        );
        assert_eq!(solve_lp(&p).status, LpStatus::Infeasible);
    }

    #[test]
    fn unbounded_ray() {
        let p = lp(&["-1", "0"], &[(&["1", "-1"], Sense::Le, "2")]);
        assert_eq!(solve_lp(&p).status, LpStatus::Unbounded);
    }

    #[test]
    fn lexicographic_forcing_on_a_flat_objective() {
        let p = lp(&["0", "0"], &[(&["1", "1"], Sense::Eq, "1")]);
        let r = solve_lex_lp(&p, &[rats(&["1", "0"])]);
        assert_eq!(r.solution.unwrap(), rats(&["0", "1"]));
        assert_eq!(r.value, Some(rat("0")));
    }

    #[test]
    fn lexicographic_unique_optimum_matches_plain_solve() {
        let p = lp(
            &["1", "2"],
            &[(&["1", "1"], Sense::Ge, "3"), (&["1", "0"], Sense::Le, "2")],
        );
        let plain = solve_lp(&p);
        let lex = solve_lex_lp(&p, &[rats(&["0", "1"]), rats(&["1", "0"])]);
        assert_eq!(plain, lex);
    }

    #[test]
    fn negative_rhs_rows_and_duals() {
        // min 2x + 3y  s.t.  -x - y <= -4,  x - y = -1  (i.e. y = x + 1)
        let p = lp(
            &["2", "3"],
            &[
                (&["-1", "-1"], Sense::Le, "-4"),
                (&["1", "-1"], Sense::Eq, "-1"),
            ],
        );
        let r = solve_lp(&p);
        assert_eq!(r.solution.clone().unwrap(), rats(&["3/2", "5/2"]));
        assert_eq!(r.value, Some(rat("21/2")));
        assert_strong_duality(&p, &r);
        // `≤` rows of a min problem carry nonpositive multipliers.
        assert!(!r.dual.as_ref().unwrap()[0].is_positive());
    }

    #[test]
    fn free_variables() {
        // min x  s.t.  x >= -5, x free
        let p = LinearProgram::with_signs(
            rats(&["1"]),
            vec![rats(&["1"])],
            rats(&["-5"]),
            vec![Sense::Ge],
            vec![false],
        )
        .unwrap();
        let r = solve_lp(&p);
        assert_eq!(r.solution.clone().unwrap(), rats(&["-5"]));
        assert_strong_duality(&p, &r);
    }

    #[test]
    fn redundant_equalities() {
        let p = lp(
            &["1", "1"],
            &[
                (&["1", "1"], Sense::Eq, "2"),
                (&["2", "2"], Sense::Eq, "4"),
                (&["1", "0"], Sense::Ge, "1/2"),
            ],
        );
        let r = solve_lp(&p);
        assert_eq!(r.value, Some(rat("2")));
        assert!(p.is_feasible(r.solution.as_ref().unwrap()));
        assert_strong_duality(&p, &r);
    }

    #[test]
    fn beale_cycling_example_terminates() {
        // Beale's classic instance cycles under the largest-coefficient rule.
        let p = lp(
            &["-3/4", "20", "-1/2", "6"],
            &[
                (&["1/4", "-8", "-1", "9"], Sense::Le, "0"),
                (&["1/2", "-12", "-1/2", "3"], Sense::Le, "0"),
                (&["0", "0", "1", "0"], Sense::Le, "1"),
            ],
        );
        let r = solve_lp(&p);
        assert_eq!(r.status, LpStatus::Optimal);
        assert_eq!(r.value, Some(rat("-5/4")));
        assert_strong_duality(&p, &r);
    }

    #[test]
    fn malformed_programs_are_rejected() {
        let err = LinearProgram::new(
            rats(&["1", "1"]),
            vec![rats(&["1"])],
            rats(&["1"]),
            vec![Sense::Le],
        );
        assert!(matches!(err, Err(Error::DimensionMismatch(_))));
    }
}
