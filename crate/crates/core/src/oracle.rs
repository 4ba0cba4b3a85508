//! Brute-force cross-checks.
//!
//! Nothing here shares code with the main path beyond the LP solver used
//! for boundedness tests and dichotomic steps. Vertex enumeration tries
//! every square subsystem of the active constraints; the extreme image
//! filter clips the simplex directly; the sweep solves fixed-λ biobjective
//! problems on a rational grid.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::breakpoints::{enumerate_breakpoints_with, Method, ParametricSolution};
use crate::geometry::{component_vertices, ConvexPolygon2};
use crate::lp::{solve_lex_lp, solve_lp, LinearProgram, LpStatus, Sense};
use crate::numerics::{dot, ExtendedRational, Rational};
use crate::problem::{
    build_tolp, fix_lambda, lambda_from_weight, project_image, Bolp, FeasibleSet, Image3, Pblp,
};
use crate::wsd::{decompose, Decomposition};
use crate::Error;

/// Largest number of candidate bases tried by vertex enumeration.
pub const MAX_CANDIDATES: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    /// Sorted, pairwise distinct.
    pub vertices: Vec<Vec<Rational>>,
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k.min(n));
    (0..k as u128).fold(1u128, |acc, i| acc * (n as u128 - i) / (i + 1))
}

/// Unique solution of the square system `a x = b`, if `a` is nonsingular.
pub fn solve_square(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = b.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip().ok()?;
        for v in m[col].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (v, p) in m[r].iter_mut().zip(&pivot_row) {
                    *v = &*v - &(&f * p);
                }
            }
        }
    }
    Some(
        m.into_iter()
            .map(|mut r| r.pop().expect("augmented"))
            .collect(),
    )
}

/// Maximizes each coordinate; `x ≥ 0` makes that enough for boundedness.
fn check_bounded(system: &FeasibleSet) -> Result<(), Error> {
    let n = system.vars;
    for j in 0..n {
        let mut objective = vec![Rational::zero(); n];
        objective[j] = -Rational::one();
        match solve_lp(&system.lp(objective)?).status {
            LpStatus::Optimal => {}
            LpStatus::Infeasible => return Err(Error::Infeasible),
            LpStatus::Unbounded => return Err(Error::UnboundedFeasibleSet),
        }
    }
    Ok(())
}

/// All vertices of `{x ≥ 0 : rows}` by trying every choice of `n` tight
/// constraints among the rows and the bounds.
pub fn enumerate_vertices_bruteforce(system: &FeasibleSet) -> Result<VertexSet, Error> {
    check_size(system)?;
    check_bounded(system)?;
    enumerate_pointed_vertices(system)
}

fn check_size(system: &FeasibleSet) -> Result<(), Error> {
    let candidates = binomial(system.rows() + system.vars, system.vars);
    if candidates > MAX_CANDIDATES {
        return Err(Error::TooLarge(candidates));
    }
    Ok(())
}

/// Vertices without the boundedness requirement. The polyhedron is pointed
/// because of `x ≥ 0`, so this still lists every vertex; it just no longer
/// describes the whole set.
pub fn enumerate_pointed_vertices(system: &FeasibleSet) -> Result<VertexSet, Error> {
    check_size(system)?;
    let n = system.vars;
    let total = system.rows() + n;
    let mut rows: Vec<(Vec<Rational>, Rational)> = system
        .matrix
        .iter()
        .cloned()
        .zip(system.rhs.iter().cloned())
        .collect();
    for j in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[j] = Rational::one();
        rows.push((e, Rational::zero()));
    }
    let mut found = BTreeSet::new();
    for chosen in (0..total).combinations(n) {
        let a: Vec<Vec<Rational>> = chosen.iter().map(|&i| rows[i].0.clone()).collect();
        let b: Vec<Rational> = chosen.iter().map(|&i| rows[i].1.clone()).collect();
        if let Some(x) = solve_square(&a, &b) {
            if system.contains(&x) {
                found.insert(x);
            }
        }
    }
    Ok(VertexSet {
        vertices: found.into_iter().collect(),
    })
}

/// Vertex enumeration for a standalone LP whose variables are all `≥ 0`.
pub fn lp_vertices(lp: &LinearProgram) -> Result<VertexSet, Error> {
    assert!(lp.sign_restricted.iter().all(|&s| s), "free variables");
    let system = FeasibleSet::new(
        lp.variable_count(),
        lp.matrix.clone(),
        lp.rhs.clone(),
        lp.senses.clone(),
    )?;
    enumerate_vertices_bruteforce(&system)
}

/// Whether `dual` certifies optimality of `value` for the minimization `lp`.
pub fn dual_certifies(lp: &LinearProgram, dual: &[Rational], value: &Rational) -> bool {
    let signs_ok = dual.iter().zip(&lp.senses).all(|(y, s)| match s {
        Sense::Ge => !y.is_negative(),
        Sense::Le => !y.is_positive(),
        Sense::Eq => true,
    });
    let reduced_ok = (0..lp.variable_count()).all(|j| {
        let column: Vec<Rational> = lp.matrix.iter().map(|r| r[j].clone()).collect();
        let reduced = &lp.objective[j] - &dot(&column, dual);
        if lp.sign_restricted[j] {
            !reduced.is_negative()
        } else {
            reduced.is_zero()
        }
    });
    signs_ok && reduced_ok && &dot(dual, &lp.rhs) == value
}

/// Keeps the images whose weight set component has positive area.
pub fn extreme_nondominated_bruteforce(images: &[Image3]) -> Vec<Image3> {
    let distinct: Vec<Image3> = images
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    distinct
        .iter()
        .enumerate()
        .filter(|&(i, y)| {
            let others: Vec<Image3> = distinct
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, o)| o.clone())
                .collect();
            component_vertices(y, &others).is_full_dimensional()
        })
        .map(|(_, y)| y.clone())
        .collect()
}

/// One extreme point of a biobjective problem with the solution found for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiobjectivePoint {
    pub image: [Rational; 2],
    pub witness: Vec<Rational>,
}

fn weighted(bolp: &Bolp, w1: &Rational, w2: &Rational) -> Vec<Rational> {
    bolp.objectives[0]
        .iter()
        .zip(&bolp.objectives[1])
        .map(|(a, b)| w1 * a + w2 * b)
        .collect()
}

fn lex_point(
    bolp: &Bolp,
    objective: Vec<Rational>,
    ties: &[Vec<Rational>],
) -> Result<BiobjectivePoint, Error> {
    let result = solve_lex_lp(&bolp.feasible.lp(objective)?, ties);
    match result.status {
        LpStatus::Optimal => {
            let witness = result.solution.expect("optimal");
            Ok(BiobjectivePoint {
                image: bolp.image(&witness),
                witness,
            })
        }
        LpStatus::Infeasible => Err(Error::Infeasible),
        LpStatus::Unbounded => Err(Error::UnboundedScalarization("biobjective".into())),
    }
}

/// Dichotomic search with witnesses. After the two objectives, ties are
/// broken by `extra_ties`, so the witness is canonical for its image.
pub fn dichotomic_with_witnesses(
    bolp: &Bolp,
    extra_ties: &[Vec<Rational>],
) -> Result<Vec<BiobjectivePoint>, Error> {
    let [f1, f2] = bolp.objectives.clone();
    let ties_12: Vec<Vec<Rational>> = [vec![f1.clone(), f2.clone()], extra_ties.to_vec()].concat();
    let ties_21: Vec<Vec<Rational>> = [vec![f2.clone(), f1.clone()], extra_ties.to_vec()].concat();
    let a = lex_point(bolp, f1.clone(), &ties_12)?;
    let b = lex_point(bolp, f2.clone(), &ties_21)?;
    if a.image == b.image {
        return Ok(vec![a]);
    }
    let mut out = vec![a.clone(), b.clone()];
    let mut stack = vec![(a, b)];
    while let Some((a, b)) = stack.pop() {
        let w1 = &a.image[1] - &b.image[1];
        let w2 = &b.image[0] - &a.image[0];
        let bound = &w1 * &a.image[0] + &w2 * &a.image[1];
        let c = lex_point(bolp, weighted(bolp, &w1, &w2), &ties_12)?;
        if &w1 * &c.image[0] + &w2 * &c.image[1] < bound {
            out.push(c.clone());
            stack.push((a, c.clone()));
            stack.push((c, b));
        }
    }
    out.sort_by(|p, q| p.image.cmp(&q.image));
    Ok(out)
}

/// Extreme nondominated images of a biobjective LP, sorted by first
/// coordinate.
pub fn dichotomic_bolp(bolp: &Bolp) -> Result<Vec<[Rational; 2]>, Error> {
    Ok(dichotomic_with_witnesses(bolp, &[])?
        .into_iter()
        .map(|p| p.image)
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub grid: Vec<Rational>,
    /// Biobjective extreme images at each grid value.
    pub images: Vec<Vec<[Rational; 2]>>,
    /// Triobjective images of the canonical witnesses at each grid value.
    pub observed: Vec<BTreeSet<Image3>>,
    /// Cells `i` (between `grid[i]` and `grid[i+1]`) where the observed set
    /// changes.
    pub changes: Vec<usize>,
}

impl SweepReport {
    pub fn cell(&self, i: usize) -> (&Rational, &Rational) {
        (&self.grid[i], &self.grid[i + 1])
    }
}

pub fn sweep_lambda(p: &Pblp, lambda_max: &Rational, steps: usize) -> Result<SweepReport, Error> {
    if steps < 2 {
        return Err(Error::DimensionMismatch(format!(
            "sweep needs at least 2 steps, got {steps}"
        )));
    }
    if !lambda_max.is_positive() {
        return Err(Error::NegativeParameter(lambda_max.clone()));
    }
    let t = build_tolp(p);
    let step = lambda_max / &Rational::from_integer(steps as i64);
    let grid: Vec<Rational> = (0..=steps)
        .map(|i| &step * &Rational::from_integer(i as i64))
        .collect();
    let mut images = Vec::with_capacity(grid.len());
    let mut observed = Vec::with_capacity(grid.len());
    for lam in &grid {
        let points = dichotomic_with_witnesses(&fix_lambda(p, lam)?, &t.objectives)?;
        observed.push(points.iter().map(|q| t.image(&q.witness)).collect());
        images.push(points.into_iter().map(|q| q.image).collect());
    }
    let changes = (0..steps)
        .filter(|&i| observed[i] != observed[i + 1])
        .collect();
    Ok(SweepReport {
        grid,
        images,
        observed,
        changes,
    })
}

/// Outcome of running every available cross-check on one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub images: usize,
    pub breakpoints: Vec<Rational>,
    pub component_vertices: usize,
    pub lp_solves: usize,
    /// False when the feasible set is too large to enumerate.
    pub oracle_ran: bool,
    pub sweep_ran: bool,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    /// Run the grid sweep when it needs at most this many steps.
    pub max_sweep_steps: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            max_sweep_steps: 200,
        }
    }
}

/// Sample parameter values: every breakpoint and one interior point per
/// axis segment.
fn sample_lambdas(sol: &ParametricSolution) -> Vec<Rational> {
    let mut out = BTreeSet::new();
    for seg in &sol.axis {
        match &seg.upper {
            ExtendedRational::Finite(u) => {
                out.insert((&seg.lower + u) / Rational::from_integer(2));
            }
            ExtendedRational::PosInfinity => {
                out.insert(&seg.lower + &Rational::one());
            }
        }
    }
    out.extend(sol.breakpoints.iter().cloned());
    out.insert(Rational::zero());
    out.into_iter().collect()
}

fn sweep_grid(breakpoints: &[Rational], max_steps: usize) -> Option<(Rational, usize)> {
    let mut marks = vec![Rational::zero()];
    marks.extend(breakpoints.iter().filter(|b| b.is_positive()).cloned());
    let last = marks.last().expect("nonempty").clone();
    let min_gap = marks
        .windows(2)
        .map(|w| &w[1] - &w[0])
        .min()
        .unwrap_or_else(Rational::one);
    let lambda_max = &last + &Rational::one();
    // spacing = lambda_max / steps < min_gap / 2
    let ratio = (&lambda_max * &Rational::from_integer(2)) / min_gap;
    let steps = (ratio.numer() / ratio.denom()) + num_bigint::BigInt::from(1);
    let steps: usize = steps.try_into().ok()?;
    (steps.max(2) <= max_steps).then_some((lambda_max, steps.max(2)))
}

fn check_tiling(dec: &Decomposition, failures: &mut Vec<String>) {
    let area: Rational = dec.components.iter().map(ConvexPolygon2::area).sum();
    if area != Rational::new(1, 2) {
        failures.push(format!("component areas sum to {area}, not 1/2"));
    }
    for (i, j) in (0..dec.components.len()).tuple_combinations() {
        let overlap = dec.components[i].intersection(&dec.components[j]).area();
        if !overlap.is_zero() {
            failures.push(format!(
                "components {i} and {j} overlap with area {overlap}"
            ));
        }
    }
}

/// Runs both breakpoint methods, the structural checks on their results,
/// and (for bounded instances) the brute-force and dichotomic oracles.
pub fn check_instance(p: &Pblp, options: CheckOptions) -> Result<CheckReport, Error> {
    let t = build_tolp(p);
    let dec = decompose(&t)?;
    let lp = enumerate_breakpoints_with(p, &dec, Method::AlgorithmOne)?;
    let vx = enumerate_breakpoints_with(p, &dec, Method::AdaptedWsd)?;
    let mut failures = Vec::new();

    if lp.intervals != vx.intervals {
        failures.push("interval sets differ between methods".into());
    }
    if lp.breakpoints != vx.breakpoints {
        failures.push(format!(
            "breakpoints differ: lp {:?}, adapted {:?}",
            lp.breakpoints, vx.breakpoints
        ));
    }
    if lp.axis != vx.axis {
        failures.push("axis decompositions differ between methods".into());
    }
    if lp.lp_solves > 2 * dec.images.len() {
        failures.push(format!(
            "{} LPs for {} images",
            lp.lp_solves,
            dec.images.len()
        ));
    }
    check_tiling(&dec, &mut failures);

    let vertex_count = dec.vertex_count();
    if lp.breakpoints.len() > vertex_count {
        failures.push(format!(
            "{} breakpoints but only {vertex_count} component vertices",
            lp.breakpoints.len()
        ));
    }
    let vertex_lambdas: BTreeSet<Rational> = dec
        .components
        .iter()
        .flat_map(|c| c.weights())
        .filter_map(|w| lambda_from_weight(p.case, &w).extended())
        .filter_map(|v| v.finite().cloned())
        .collect();
    for b in &lp.breakpoints {
        if !vertex_lambdas.contains(b) {
            failures.push(format!(
                "breakpoint {b} is not the parameter of any component vertex"
            ));
        }
    }

    // The decomposition succeeded, so every weighted sum is bounded and
    // attains its minimum at a vertex; vertex images suffice even for an
    // unbounded feasible set.
    let oracle_ran = match enumerate_pointed_vertices(&p.feasible) {
        Ok(vs) => {
            let images: Vec<Image3> = vs.vertices.iter().map(|x| t.image(x)).collect();
            let brute = extreme_nondominated_bruteforce(&images);
            if brute != dec.image_vectors() {
                failures.push(format!(
                    "decomposition found {} images, brute force {}",
                    dec.images.len(),
                    brute.len()
                ));
            }
            true
        }
        Err(Error::TooLarge(_)) => false,
        Err(e) => return Err(e),
    };

    if oracle_ran {
        for lam in sample_lambdas(&lp) {
            let expected: BTreeSet<[Rational; 2]> = dichotomic_bolp(&fix_lambda(p, &lam)?)?
                .into_iter()
                .collect();
            let seg = lp.solution_set_at(&lam).expect("axis covers [0, inf)");
            let got: BTreeSet<[Rational; 2]> = seg
                .members
                .iter()
                .map(|&k| project_image(p.case, &lam, &lp.intervals[k].image))
                .collect();
            if got != expected || got.len() != seg.members.len() {
                failures.push(format!(
                    "solution set at λ = {lam} disagrees with the dichotomic oracle"
                ));
            }
        }
    }

    let mut sweep_ran = false;
    if oracle_ran {
        if let Some((lambda_max, steps)) = sweep_grid(&lp.breakpoints, options.max_sweep_steps) {
            sweep_ran = true;
            let report = sweep_lambda(p, &lambda_max, steps)?;
            check_sweep(&report, &lp.breakpoints, &mut failures);
        }
    }

    Ok(CheckReport {
        images: dec.images.len(),
        breakpoints: lp.breakpoints,
        component_vertices: vertex_count,
        lp_solves: lp.lp_solves,
        oracle_ran,
        sweep_ran,
        failures,
    })
}

/// Every change cell holds exactly one breakpoint and every breakpoint in
/// range lies in a change cell.
pub fn check_sweep(report: &SweepReport, breakpoints: &[Rational], failures: &mut Vec<String>) {
    let in_cell = |i: usize, b: &Rational| {
        let (lo, hi) = report.cell(i);
        lo <= b && b <= hi
    };
    for &i in &report.changes {
        let count = breakpoints.iter().filter(|b| in_cell(i, b)).count();
        if count != 1 {
            let (lo, hi) = report.cell(i);
            failures.push(format!(
                "sweep cell [{lo}, {hi}] changes but holds {count} breakpoints"
            ));
        }
    }
    let top = report.grid.last().expect("nonempty grid");
    for b in breakpoints.iter().filter(|b| *b <= top) {
        if !report.changes.iter().any(|&i| in_cell(i, b)) {
            failures.push(format!("no sweep change around breakpoint {b}"));
        }
    }
}
