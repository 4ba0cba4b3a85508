//! Parameter intervals and breakpoints.
//!
//! Every extreme image `y` of the triobjective LP owns a weight set
//! component `W(y)`. The biobjective weight set at parameter `λ` is a
//! segment through the simplex, so `y`'s solution belongs to a minimal
//! solution set exactly for the `λ` whose segment meets `W(y)`: a closed
//! interval `[λ_ℓ, λ_u]`. Two independent routes compute it:
//!
//! - [`Method::AlgorithmOne`] solves two LPs per image. Case two optimizes
//!   `w₁ + w₂` over the lifted description of `W(y)`. Case one substitutes
//!   `ℓ₁ = (1+λ)/(2+λ)`, `ℓ₂ = 1/(2+λ)` and optimizes `ℓ₁` over the dual of
//!   the lifted description, which is linear in `(x, x_opt, x_w, ℓ)`.
//! - [`Method::AdaptedWsd`] evaluates `λ` at the component's vertices.
//!
//! The interval endpoints are the breakpoints. [`assemble`] then splits
//! `[0, ∞)` into segments with constant solution sets.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::geometry::{component_hrep, extreme_nondominated_2d, ComponentHrep, ConvexPolygon2};
use crate::lp::{solve_lp, LinearProgram, LpStatus, Sense};
use crate::numerics::{ExtendedRational, Rational};
use crate::problem::{
    build_tolp, format_image, lambda_from_weight, project_image, Case, Image3, LambdaValue, Pblp,
    Tolp,
};
use crate::wsd::{decompose, Decomposition};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    /// Two LPs per extreme image.
    #[serde(rename = "lp")]
    AlgorithmOne,
    /// Parameter values read off the component vertices.
    #[serde(rename = "adapted")]
    AdaptedWsd,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::AlgorithmOne => "lp",
            Method::AdaptedWsd => "adapted",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParameterInterval {
    pub lower: Rational,
    pub upper: ExtendedRational,
    pub image: Image3,
    pub witness: Vec<Rational>,
}

impl ParameterInterval {
    pub fn covers(&self, lam: &Rational) -> bool {
        &self.lower <= lam && ExtendedRational::Finite(lam.clone()) <= self.upper
    }

    /// Whether the interval contains the open cell `(lo, hi)`.
    fn covers_cell(&self, lo: &Rational, hi: &ExtendedRational) -> bool {
        &self.lower <= lo && hi <= &self.upper
    }
}

/// A maximal piece of the parameter axis with one solution set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxisSegment {
    pub lower: Rational,
    pub lower_closed: bool,
    pub upper: ExtendedRational,
    pub upper_closed: bool,
    /// Indices into [`ParametricSolution::intervals`].
    pub members: Vec<usize>,
}

impl AxisSegment {
    pub fn is_point(&self) -> bool {
        self.upper == ExtendedRational::Finite(self.lower.clone())
    }

    pub fn contains(&self, lam: &Rational) -> bool {
        let above = if self.lower_closed {
            lam >= &self.lower
        } else {
            lam > &self.lower
        };
        let x = ExtendedRational::Finite(lam.clone());
        let below = if self.upper_closed {
            x <= self.upper
        } else {
            x < self.upper
        };
        above && below
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParametricSolution {
    pub case: Case,
    pub method: Method,
    /// One interval per extreme image, in decomposition order.
    pub intervals: Vec<ParameterInterval>,
    pub breakpoints: Vec<Rational>,
    pub axis: Vec<AxisSegment>,
    /// LPs solved for the interval computation (not the decomposition).
    pub lp_solves: usize,
}

impl ParametricSolution {
    /// Witnesses of the minimal solution set at `lam`.
    pub fn solution_set_at(&self, lam: &Rational) -> Option<&AxisSegment> {
        self.axis.iter().find(|s| s.contains(lam))
    }
}

fn lp_optimum(lp: &LinearProgram, image: &Image3) -> Result<Rational, Error> {
    let result = solve_lp(lp);
    match result.status {
        LpStatus::Optimal => Ok(result.value.expect("optimal value")),
        LpStatus::Infeasible => Err(Error::EmptyComponent(format_image(image))),
        LpStatus::Unbounded => unreachable!("interval programs are bounded"),
    }
}

/// Case two: `λ = (1 − s)/s` for `s = w₁ + w₂`, so the extremes of `s` over
/// the component give the interval.
pub fn interval_lp_case2(
    hrep: &ComponentHrep,
    image: &Image3,
) -> Result<(Rational, ExtendedRational), Error> {
    let m = hrep.dual_vars;
    let mut sum = vec![Rational::zero(); m + 3];
    sum[m] = Rational::one();
    sum[m + 1] = Rational::one();
    let neg_sum: Vec<Rational> = sum.iter().map(|v| -v).collect();
    let s_max = -lp_optimum(&hrep.lp(neg_sum), image)?;
    let s_min = lp_optimum(&hrep.lp(sum), image)?;
    let from_s = |s: &Rational| -> Result<Rational, Error> { Ok(s.recip()? - Rational::one()) };
    if !s_max.is_positive() {
        return Err(Error::EmptyComponent(format_image(image)));
    }
    let lower = from_s(&s_max)?;
    let upper = if s_min.is_zero() {
        ExtendedRational::PosInfinity
    } else {
        ExtendedRational::Finite(from_s(&s_min)?)
    };
    Ok((lower, upper))
}

/// Which side of the case-one interval to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Lower,
    Upper,
}

/// The linear program in `(x, x_opt, x_w, ℓ₁, ℓ₂)` whose optimal `ℓ₁`
/// encodes one end of the case-one interval of `y`.
///
/// With `A'x ≥ b'` the feasible set in `≥` form, the rows are
/// - `A'x − b'·x_opt ≥ 0`,
/// - lower: `−C x + y·x_opt + 1·x_w − (ℓ₁, ℓ₂, 0) ≥ 0`, maximize `ℓ₁`;
///   upper: `C x − y·x_opt + 1·x_w − (ℓ₁, ℓ₂, 0) ≤ 0`, minimize `ℓ₁`,
/// - `x_w − ℓ₂ = 0` and `ℓ₁ + ℓ₂ = 1`,
///
/// with `x, ℓ ≥ 0` and `x_opt, x_w` free. Feasibility of a given `ℓ` means
/// that `max_{w∈W(y)} ℓ₁w₁ + ℓ₂w₂ ≤ ℓ₂` (lower) or `min … ≥ ℓ₂` (upper),
/// i.e. `λ ≤ w₃/w₁` respectively `λ ≥ w₃/w₁` on the whole component.
pub fn case1_program(t: &Tolp, y: &Image3, bound: Bound) -> LinearProgram {
    let (a, b) = t.feasible.ge_rows();
    let n = t.vars();
    let (x_opt, x_w, l1, l2) = (n, n + 1, n + 2, n + 3);
    let width = n + 4;
    let zero_row = || vec![Rational::zero(); width];
    let mut matrix = Vec::new();
    let mut rhs = Vec::new();
    let mut senses = Vec::new();
    for (row_a, b_i) in a.iter().zip(&b) {
        let mut row = zero_row();
        row[..n].clone_from_slice(row_a);
        row[x_opt] = -b_i;
        matrix.push(row);
        rhs.push(Rational::zero());
        senses.push(Sense::Ge);
    }
    let sign = match bound {
        Bound::Lower => -Rational::one(),
        Bound::Upper => Rational::one(),
    };
    for (k, (objective, y_k)) in t.objectives.iter().zip(y).enumerate() {
        let mut row = zero_row();
        for (entry, c) in row.iter_mut().zip(objective) {
            *entry = &sign * c;
        }
        row[x_opt] = -(&sign * y_k);
        row[x_w] = Rational::one();
        match k {
            0 => row[l1] = -Rational::one(),
            1 => row[l2] = -Rational::one(),
            _ => {}
        }
        matrix.push(row);
        rhs.push(Rational::zero());
        senses.push(match bound {
            Bound::Lower => Sense::Ge,
            Bound::Upper => Sense::Le,
        });
    }
    let mut tie = zero_row();
    tie[x_w] = Rational::one();
    tie[l2] = -Rational::one();
    matrix.push(tie);
    rhs.push(Rational::zero());
    senses.push(Sense::Eq);
    let mut simplex = zero_row();
    simplex[l1] = Rational::one();
    simplex[l2] = Rational::one();
    matrix.push(simplex);
    rhs.push(Rational::one());
    senses.push(Sense::Eq);

    let mut objective = zero_row();
    objective[l1] = match bound {
        Bound::Lower => -Rational::one(),
        Bound::Upper => Rational::one(),
    };
    let mut sign_restricted = vec![true; width];
    sign_restricted[x_opt] = false;
    sign_restricted[x_w] = false;
    LinearProgram::with_signs(objective, matrix, rhs, senses, sign_restricted)
        .expect("case-one program is rectangular")
}

/// Optimal `ℓ₁` of the lower and upper case-one programs.
pub fn case1_ell(t: &Tolp, y: &Image3) -> Result<(Rational, Rational), Error> {
    let lower = -lp_optimum(&case1_program(t, y, Bound::Lower), y)?;
    let upper = lp_optimum(&case1_program(t, y, Bound::Upper), y)?;
    Ok((lower, upper))
}

/// Inverse of `ℓ₁ = (1+λ)/(2+λ)`; `ℓ₁ = 1` means `λ → ∞`.
pub fn lambda_from_ell(ell: &Rational) -> ExtendedRational {
    let rest = Rational::one() - ell;
    if rest.is_zero() {
        return ExtendedRational::PosInfinity;
    }
    ExtendedRational::Finite((Rational::from_integer(2) * ell - Rational::one()) / rest)
}

pub fn interval_lp_case1(t: &Tolp, y: &Image3) -> Result<(Rational, ExtendedRational), Error> {
    let (ell_lower, ell_upper) = case1_ell(t, y)?;
    let lower = match lambda_from_ell(&ell_lower) {
        ExtendedRational::Finite(l) => l,
        // Every point of a full-dimensional component would need w₁ = 0.
        ExtendedRational::PosInfinity => return Err(Error::EmptyComponent(format_image(y))),
    };
    Ok((lower, lambda_from_ell(&ell_upper)))
}

/// Interval from the component's vertices.
pub fn interval_vertex(
    case: Case,
    poly: &ConvexPolygon2,
) -> Result<(Rational, ExtendedRational), Error> {
    let values: Vec<ExtendedRational> = poly
        .weights()
        .iter()
        .filter_map(|w| match lambda_from_weight(case, w) {
            // (0,1,0) lies on every case-one segment; it carries no λ.
            LambdaValue::Undefined => None,
            v => v.extended(),
        })
        .collect();
    let lower = values.iter().min().ok_or(Error::NoFiniteVertex)?;
    let upper = values.iter().max().ok_or(Error::NoFiniteVertex)?;
    match lower {
        ExtendedRational::Finite(l) => Ok((l.clone(), upper.clone())),
        ExtendedRational::PosInfinity => Err(Error::NoFiniteVertex),
    }
}

/// Intervals for every extreme image of `dec`, and the number of LPs used.
pub fn compute_intervals(
    t: &Tolp,
    dec: &Decomposition,
    case: Case,
    method: Method,
) -> Result<(Vec<ParameterInterval>, usize), Error> {
    let mut lp_solves = 0;
    let mut intervals = Vec::with_capacity(dec.images.len());
    for (e, poly) in dec.images.iter().zip(&dec.components) {
        let (lower, upper) = match (method, case) {
            (Method::AlgorithmOne, Case::Two) => {
                lp_solves += 2;
                interval_lp_case2(&component_hrep(t, &e.image), &e.image)?
            }
            (Method::AlgorithmOne, Case::One) => {
                lp_solves += 2;
                interval_lp_case1(t, &e.image)?
            }
            (Method::AdaptedWsd, _) => interval_vertex(case, poly)?,
        };
        intervals.push(ParameterInterval {
            lower,
            upper,
            image: e.image.clone(),
            witness: e.witness.clone(),
        });
    }
    Ok((intervals, lp_solves))
}

pub fn enumerate_breakpoints(p: &Pblp, method: Method) -> Result<ParametricSolution, Error> {
    let t = build_tolp(p);
    let dec = decompose(&t)?;
    enumerate_breakpoints_with(p, &dec, method)
}

/// As [`enumerate_breakpoints`], reusing an existing decomposition.
pub fn enumerate_breakpoints_with(
    p: &Pblp,
    dec: &Decomposition,
    method: Method,
) -> Result<ParametricSolution, Error> {
    let t = build_tolp(p);
    let (intervals, lp_solves) = compute_intervals(&t, dec, p.case, method)?;
    let (breakpoints, axis) = assemble(p.case, &intervals);
    Ok(ParametricSolution {
        case: p.case,
        method,
        intervals,
        breakpoints,
        axis,
        lp_solves,
    })
}

/// Projected images at `lam` that are extreme nondominated for the
/// biobjective instance.
fn extreme_at(case: Case, lam: &Rational, intervals: &[ParameterInterval]) -> Vec<[Rational; 2]> {
    let points: Vec<[Rational; 2]> = intervals
        .iter()
        .map(|iv| project_image(case, lam, &iv.image))
        .collect();
    extreme_nondominated_2d(&points)
}

fn projected_set(
    case: Case,
    lam: &Rational,
    intervals: &[ParameterInterval],
    members: &[usize],
) -> BTreeSet<[Rational; 2]> {
    members
        .iter()
        .map(|&k| project_image(case, lam, &intervals[k].image))
        .collect()
}

fn cell_members(
    intervals: &[ParameterInterval],
    lo: &Rational,
    hi: &ExtendedRational,
) -> Vec<usize> {
    (0..intervals.len())
        .filter(|&k| intervals[k].covers_cell(lo, hi))
        .collect()
}

/// The actual minimal solution set at `lam`: one witness per extreme image
/// of the biobjective instance, preferring witnesses from `prefer` (in
/// order) where images coincide.
fn solution_set_at_point(
    case: Case,
    lam: &Rational,
    intervals: &[ParameterInterval],
    prefer: &[&[usize]],
) -> Vec<usize> {
    let mut members = Vec::new();
    for point in extreme_at(case, lam, intervals) {
        let candidates: Vec<usize> = (0..intervals.len())
            .filter(|&k| {
                intervals[k].covers(lam) && project_image(case, lam, &intervals[k].image) == point
            })
            .collect();
        let chosen = prefer
            .iter()
            .find_map(|set| candidates.iter().find(|k| set.contains(k)))
            .or_else(|| candidates.first())
            .copied()
            .expect("every extreme image at λ has a covering interval");
        members.push(chosen);
    }
    members.sort_unstable();
    members
}

/// Sorted breakpoints and the decomposition of `[0, ∞)`.
///
/// Between consecutive endpoints the solution set is the set of intervals
/// covering the open cell. At a breakpoint the set usually matches one of
/// its neighbours and the point joins that segment; when it matches both,
/// it joins the preceding one. Otherwise the point becomes its own segment.
/// `0` is a breakpoint only when the set at `0` differs from the one just
/// after it.
pub fn assemble(case: Case, intervals: &[ParameterInterval]) -> (Vec<Rational>, Vec<AxisSegment>) {
    let mut points: BTreeSet<Rational> = BTreeSet::new();
    points.insert(Rational::zero());
    for iv in intervals {
        points.insert(iv.lower.clone());
        if let Some(u) = iv.upper.finite() {
            points.insert(u.clone());
        }
    }
    let points: Vec<Rational> = points.into_iter().collect();
    let cell_end = |i: usize| -> ExtendedRational {
        points
            .get(i + 1)
            .cloned()
            .map(ExtendedRational::Finite)
            .unwrap_or(ExtendedRational::PosInfinity)
    };
    let cells: Vec<Vec<usize>> = (0..points.len())
        .map(|i| cell_members(intervals, &points[i], &cell_end(i)))
        .collect();

    let mut breakpoints = Vec::new();
    let mut axis = Vec::new();
    let mut start = (Rational::zero(), true);
    for (i, b) in points.iter().enumerate() {
        let right = &cells[i];
        let left = if i == 0 { None } else { Some(&cells[i - 1]) };
        let extreme: BTreeSet<[Rational; 2]> = extreme_at(case, b, intervals).into_iter().collect();
        let matches_right = projected_set(case, b, intervals, right) == extreme;
        let matches_left = left.is_some_and(|l| projected_set(case, b, intervals, l) == extreme);

        if i == 0 && matches_right {
            continue;
        }
        breakpoints.push(b.clone());
        if matches_left {
            axis.push(AxisSegment {
                lower: start.0.clone(),
                lower_closed: start.1,
                upper: ExtendedRational::Finite(b.clone()),
                upper_closed: true,
                members: left.expect("checked").clone(),
            });
            start = (b.clone(), false);
            continue;
        }
        if let Some(l) = left {
            axis.push(AxisSegment {
                lower: start.0.clone(),
                lower_closed: start.1,
                upper: ExtendedRational::Finite(b.clone()),
                upper_closed: false,
                members: l.clone(),
            });
        }
        if matches_right {
            start = (b.clone(), true);
        } else {
            let prefer: Vec<&[usize]> = left
                .map(|l| vec![l.as_slice(), right.as_slice()])
                .unwrap_or_else(|| vec![right.as_slice()]);
            axis.push(AxisSegment {
                lower: b.clone(),
                lower_closed: true,
                upper: ExtendedRational::Finite(b.clone()),
                upper_closed: true,
                members: solution_set_at_point(case, b, intervals, &prefer),
            });
            start = (b.clone(), false);
        }
    }
    axis.push(AxisSegment {
        lower: start.0,
        lower_closed: start.1,
        upper: ExtendedRational::PosInfinity,
        upper_closed: false,
        members: cells.last().cloned().unwrap_or_default(),
    });
    (breakpoints, axis)
}
