//! Exact planar geometry on the projected weight simplex.
//!
//! Weights `(w₁, w₂, w₃)` are handled in the `(w₁, w₂)` projection with
//! `w₃ = 1 − w₁ − w₂`; the simplex becomes the triangle with corners
//! `(0,0)`, `(1,0)`, `(0,1)` and has area `1/2`.

use std::fmt;

use crate::lp::{solve_lp, LinearProgram, Sense};
use crate::numerics::Rational;
use crate::problem::{Image3, Tolp, Weight3};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point2 {
    pub x: Rational,
    pub y: Rational,
}

impl Point2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point2 { x, y }
    }

    pub fn sub(&self, other: &Point2) -> Point2 {
        Point2::new(&self.x - &other.x, &self.y - &other.y)
    }

    pub fn cross(&self, other: &Point2) -> Rational {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot(&self, other: &Point2) -> Rational {
        &self.x * &other.x + &self.y * &other.y
    }

    /// `w₃` of the lifted weight.
    pub fn third(&self) -> Rational {
        Rational::one() - &self.x - &self.y
    }
}

impl fmt::Debug for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// `{(w₁, w₂) : a1·w₁ + a2·w₂ ≤ rhs}`. A zero normal encodes either the
/// whole plane (`rhs ≥ 0`) or nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfPlane {
    pub a1: Rational,
    pub a2: Rational,
    pub rhs: Rational,
}

impl HalfPlane {
    pub fn new(a1: Rational, a2: Rational, rhs: Rational) -> Self {
        HalfPlane { a1, a2, rhs }
    }

    /// Signed slack: `≤ 0` inside.
    fn excess(&self, p: &Point2) -> Rational {
        &self.a1 * &p.x + &self.a2 * &p.y - &self.rhs
    }

    pub fn contains(&self, p: &Point2) -> bool {
        !self.excess(p).is_positive()
    }

    pub fn is_trivial(&self) -> bool {
        self.a1.is_zero() && self.a2.is_zero()
    }

    /// The three sides of the projected simplex.
    pub fn simplex_bounds() -> [HalfPlane; 3] {
        let (z, o) = (Rational::zero(), Rational::one());
        [
            HalfPlane::new(-o.clone(), z.clone(), z.clone()),
            HalfPlane::new(z.clone(), -o.clone(), z.clone()),
            HalfPlane::new(o.clone(), o.clone(), o),
        ]
    }
}

/// A convex polygon with canonical vertex order: counterclockwise, starting
/// at the lexicographically smallest vertex, no repeated or collinear
/// vertices. Degenerate polygons (empty, a point, a segment) are allowed.
#[derive(Clone, PartialEq, Eq)]
pub struct ConvexPolygon2 {
    vertices: Vec<Point2>,
}

impl fmt::Debug for ConvexPolygon2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.vertices).finish()
    }
}

impl ConvexPolygon2 {
    pub fn empty() -> Self {
        ConvexPolygon2 {
            vertices: Vec::new(),
        }
    }

    /// The projected weight simplex.
    pub fn simplex() -> Self {
        let (z, o) = (Rational::zero(), Rational::one());
        ConvexPolygon2::from_vertices(vec![
            Point2::new(z.clone(), z.clone()),
            Point2::new(o.clone(), z.clone()),
            Point2::new(z, o),
        ])
    }

    /// Canonicalizes a convex vertex loop given in either orientation.
    pub fn from_vertices(points: Vec<Point2>) -> Self {
        ConvexPolygon2 {
            vertices: canonicalize(points),
        }
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Twice the signed area, exact.
    fn doubled_area(&self) -> Rational {
        let n = self.vertices.len();
        if n < 3 {
            return Rational::zero();
        }
        (0..n)
            .map(|i| self.vertices[i].cross(&self.vertices[(i + 1) % n]))
            .sum()
    }

    pub fn area(&self) -> Rational {
        self.doubled_area() * Rational::new(1, 2)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.vertices.len() >= 3
    }

    pub fn contains(&self, p: &Point2) -> bool {
        match self.vertices.len() {
            0 => false,
            1 => &self.vertices[0] == p,
            2 => {
                let seg = crate::problem::Segment2 {
                    p: self.vertices[0].clone(),
                    q: self.vertices[1].clone(),
                };
                seg.contains(p)
            }
            n => (0..n).all(|i| {
                let a = &self.vertices[i];
                let b = &self.vertices[(i + 1) % n];
                !b.sub(a).cross(&p.sub(a)).is_negative()
            }),
        }
    }

    /// Edges as half-planes (only meaningful for full-dimensional polygons).
    pub fn edge_halfplanes(&self) -> Vec<HalfPlane> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let a = &self.vertices[i];
                let b = &self.vertices[(i + 1) % n];
                // inside of a CCW edge a→b: cross(b−a, p−a) ≥ 0
                let d = b.sub(a);
                let a1 = d.y.clone();
                let a2 = -&d.x;
                let rhs = &a1 * &a.x + &a2 * &a.y;
                HalfPlane::new(a1, a2, rhs)
            })
            .collect()
    }

    /// Intersection of two convex polygons; at least one of them must be
    /// full-dimensional.
    pub fn intersection(&self, other: &ConvexPolygon2) -> ConvexPolygon2 {
        if other.is_full_dimensional() {
            self.clip_all(&other.edge_halfplanes())
        } else {
            assert!(
                self.is_full_dimensional(),
                "intersection of two degenerate polygons"
            );
            other.clip_all(&self.edge_halfplanes())
        }
    }

    pub fn clip_all(&self, planes: &[HalfPlane]) -> ConvexPolygon2 {
        planes
            .iter()
            .fold(self.clone(), |poly, h| clip_polygon(&poly, h))
    }

    /// Lifts every vertex to a full weight.
    pub fn weights(&self) -> Vec<Weight3> {
        self.vertices
            .iter()
            .map(|p| Weight3::from_projection(p).expect("vertex inside the simplex"))
            .collect()
    }
}

fn canonicalize(mut points: Vec<Point2>) -> Vec<Point2> {
    points.dedup();
    while points.len() > 1 && points.first() == points.last() {
        points.pop();
    }
    if points.len() <= 1 {
        return points;
    }
    let n = points.len();
    let doubled: Rational = (0..n).map(|i| points[i].cross(&points[(i + 1) % n])).sum();
    if doubled.is_zero() {
        // Collinear: keep the two extreme points.
        let lo = points.iter().min().cloned().unwrap();
        let hi = points.iter().max().cloned().unwrap();
        return if lo == hi { vec![lo] } else { vec![lo, hi] };
    }
    if doubled.is_negative() {
        points.reverse();
    }
    let mut changed = true;
    while changed && points.len() >= 3 {
        changed = false;
        let n = points.len();
        for i in 0..n {
            let prev = &points[(i + n - 1) % n];
            let next = &points[(i + 1) % n];
            let cur = &points[i];
            if cur == next || cur.sub(prev).cross(&next.sub(cur)).is_zero() {
                points.remove(i);
                changed = true;
                break;
            }
        }
    }
    let start = points
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.cmp(b.1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    points.rotate_left(start);
    points
}

/// Intersects a convex polygon with one half-plane (Sutherland–Hodgman).
pub fn clip_polygon(poly: &ConvexPolygon2, h: &HalfPlane) -> ConvexPolygon2 {
    if h.is_trivial() {
        return if h.rhs.is_negative() {
            ConvexPolygon2::empty()
        } else {
            poly.clone()
        };
    }
    let vs = poly.vertices();
    match vs.len() {
        0 => return ConvexPolygon2::empty(),
        1 => {
            return if h.contains(&vs[0]) {
                poly.clone()
            } else {
                ConvexPolygon2::empty()
            }
        }
        _ => {}
    }
    let mut out = Vec::with_capacity(vs.len() + 1);
    for i in 0..vs.len() {
        let cur = &vs[i];
        let next = &vs[(i + 1) % vs.len()];
        let fc = h.excess(cur);
        let fn_ = h.excess(next);
        if !fc.is_positive() {
            out.push(cur.clone());
        }
        if (fc.is_negative() && fn_.is_positive()) || (fc.is_positive() && fn_.is_negative()) {
            // cur + t (next − cur) with t = fc / (fc − fn)
            let t = &fc / &(&fc - &fn_);
            let d = next.sub(cur);
            out.push(Point2::new(&cur.x + &(&t * &d.x), &cur.y + &(&t * &d.y)));
        }
    }
    ConvexPolygon2::from_vertices(out)
}

/// Half-planes describing where `y` is weighted-sum optimal against each
/// of `others`, followed by the three simplex bounds.
///
/// `wᵀy ≤ wᵀy'` with `w₃ = 1 − w₁ − w₂` reads
/// `(Δ₁ − Δ₃) w₁ + (Δ₂ − Δ₃) w₂ ≤ −Δ₃` for `Δ = y − y'`.
pub fn component_halfplanes(y: &Image3, others: &[Image3]) -> Vec<HalfPlane> {
    let mut planes: Vec<HalfPlane> = others
        .iter()
        .map(|other| {
            let d: Vec<Rational> = y.iter().zip(other).map(|(a, b)| a - b).collect();
            HalfPlane::new(&d[0] - &d[2], &d[1] - &d[2], -&d[2])
        })
        .collect();
    planes.extend(HalfPlane::simplex_bounds());
    planes
}

/// The weight set component of `y` relative to a finite image set.
pub fn component_vertices(y: &Image3, others: &[Image3]) -> ConvexPolygon2 {
    ConvexPolygon2::simplex().clip_all(&component_halfplanes(y, others))
}

/// Lifted description `P·(v, w) ≥ q`, `v, w ≥ 0`, of a weight set component.
///
/// Columns are `(v₁, …, v_m, w₁, w₂, w₃)` where `m` counts the rows of the
/// feasible set in `≥` form (each `=` row contributes two). Row blocks, in
/// order:
/// - `n` rows `Cᵀw − A'ᵀv ≥ 0` (dual feasibility of `v` for weight `w`),
/// - `b'ᵀv − yᵀw ≥ 0` and `yᵀw − b'ᵀv ≥ 0` (no duality gap at `y`),
/// - `1ᵀw ≥ 1` and `−1ᵀw ≥ −1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentHrep {
    pub p: Vec<Vec<Rational>>,
    pub q: Vec<Rational>,
    /// Number of `v` columns.
    pub dual_vars: usize,
}

impl ComponentHrep {
    pub fn rows(&self) -> usize {
        self.p.len()
    }

    pub fn columns(&self) -> usize {
        self.dual_vars + 3
    }

    /// The system as an LP over `(v, w) ≥ 0` with the given objective.
    pub fn lp(&self, objective: Vec<Rational>) -> LinearProgram {
        LinearProgram::new(
            objective,
            self.p.clone(),
            self.q.clone(),
            vec![Sense::Ge; self.p.len()],
        )
        .expect("hrep is rectangular")
    }

    /// Whether some `v ≥ 0` completes `w` to a solution.
    pub fn contains(&self, w: &Weight3) -> bool {
        let m = self.dual_vars;
        let rhs = self
            .p
            .iter()
            .zip(&self.q)
            .map(|(row, q)| {
                let fixed: Rational = row[m..].iter().zip(w.as_array()).map(|(a, b)| a * b).sum();
                q - &fixed
            })
            .collect();
        let lp = LinearProgram::new(
            vec![Rational::zero(); m],
            self.p.iter().map(|row| row[..m].to_vec()).collect(),
            rhs,
            vec![Sense::Ge; self.p.len()],
        )
        .expect("hrep is rectangular");
        solve_lp(&lp).is_optimal()
    }
}

pub fn component_hrep(t: &Tolp, y: &Image3) -> ComponentHrep {
    let (a, b) = t.feasible.ge_rows();
    let m = a.len();
    let n = t.vars();
    let zero = Rational::zero;
    let mut p = Vec::with_capacity(n + 4);
    let mut q = Vec::with_capacity(n + 4);
    for j in 0..n {
        let mut row: Vec<Rational> = a.iter().map(|ai| -&ai[j]).collect();
        row.extend(t.objectives.iter().map(|c| c[j].clone()));
        p.push(row);
        q.push(zero());
    }
    let mut gap: Vec<Rational> = b.clone();
    gap.extend(y.iter().map(|v| -v));
    p.push(gap.clone());
    q.push(zero());
    p.push(gap.iter().map(|v| -v).collect());
    q.push(zero());
    let mut total = vec![zero(); m];
    total.extend(std::iter::repeat_n(Rational::one(), 3));
    p.push(total.clone());
    q.push(Rational::one());
    p.push(total.iter().map(|v| -v).collect());
    q.push(-Rational::one());
    ComponentHrep { p, q, dual_vars: m }
}

/// Extreme nondominated points of a finite planar set under minimization
/// (vertices of the lower-left hull of `points + ℝ²≥`), sorted by first
/// coordinate. Duplicates collapse.
pub fn extreme_nondominated_2d(points: &[[Rational; 2]]) -> Vec<[Rational; 2]> {
    let mut sorted: Vec<[Rational; 2]> = points.to_vec();
    sorted.sort();
    sorted.dedup();
    // Nondominated staircase: strictly decreasing second coordinate.
    let mut stair: Vec<[Rational; 2]> = Vec::new();
    for p in sorted {
        if stair.last().is_none_or(|last| p[1] < last[1]) {
            stair.push(p);
        }
    }
    // Lower convex chain; drop points on or above the chord of neighbours.
    let mut hull: Vec<[Rational; 2]> = Vec::new();
    for p in stair {
        while hull.len() >= 2 {
            let a = &hull[hull.len() - 2];
            let b = &hull[hull.len() - 1];
            let ab = Point2::new(&b[0] - &a[0], &b[1] - &a[1]);
            let ap = Point2::new(&p[0] - &a[0], &p[1] - &a[1]);
            if ab.cross(&ap).is_positive() {
                break;
            }
            hull.pop();
        }
        hull.push(p);
    }
    hull
}
