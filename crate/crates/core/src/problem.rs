//! Problem instances and the weight maps between the biobjective and the
//! triobjective weight spaces.
//!
//! For case one, a biobjective weight `(w₁, w₂)` at parameter `λ` equals the
//! triobjective weight `(w₁, w₂, λw₁)` up to scaling; for case two it is
//! `(w₁, w₂, λ)` since `w₁ + w₂ = 1`. Normalizing either onto the simplex
//! gives [`map_weight_to_simplex`], and [`lambda_from_weight`] inverts it.

use serde::{Deserialize, Serialize};

use crate::geometry::Point2;
use crate::lp::{LinearProgram, Sense};
use crate::numerics::{dot, ExtendedRational, Rational};
use crate::Error;

/// Which objectives carry the parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    /// `(c₁ + λd₁, c₂)`.
    One,
    /// `(c₁ + λd₁, c₂ + λd₁)`.
    Two,
}

impl Case {
    pub fn number(self) -> u8 {
        match self {
            Case::One => 1,
            Case::Two => 2,
        }
    }
}

/// `{x ≥ 0 : A x (senses) b}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibleSet {
    pub matrix: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
    pub senses: Vec<Sense>,
    pub vars: usize,
}

impl FeasibleSet {
    pub fn new(
        vars: usize,
        matrix: Vec<Vec<Rational>>,
        rhs: Vec<Rational>,
        senses: Vec<Sense>,
    ) -> Result<Self, Error> {
        if vars == 0 {
            return Err(Error::DimensionMismatch("no variables".into()));
        }
        let set = FeasibleSet {
            matrix,
            rhs,
            senses,
            vars,
        };
        set.lp(vec![Rational::zero(); vars])?;
        Ok(set)
    }

    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn lp(&self, objective: Vec<Rational>) -> Result<LinearProgram, Error> {
        LinearProgram::new(
            objective,
            self.matrix.clone(),
            self.rhs.clone(),
            self.senses.clone(),
        )
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.lp(vec![Rational::zero(); self.vars])
            .map(|lp| lp.is_feasible(x))
            .unwrap_or(false)
    }

    /// The same set written as `A' x ≥ b'`: `≤` rows are negated and each
    /// `=` row becomes a pair of opposite `≥` rows.
    pub fn ge_rows(&self) -> (Vec<Vec<Rational>>, Vec<Rational>) {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for ((row, rhs), sense) in self.matrix.iter().zip(&self.rhs).zip(&self.senses) {
            let negated =
                || -> (Vec<Rational>, Rational) { (row.iter().map(|v| -v).collect(), -rhs) };
            match sense {
                Sense::Ge => {
                    a.push(row.clone());
                    b.push(rhs.clone());
                }
                Sense::Le => {
                    let (r, v) = negated();
                    a.push(r);
                    b.push(v);
                }
                Sense::Eq => {
                    a.push(row.clone());
                    b.push(rhs.clone());
                    let (r, v) = negated();
                    a.push(r);
                    b.push(v);
                }
            }
        }
        (a, b)
    }
}

/// A parametric biobjective linear program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pblp {
    pub feasible: FeasibleSet,
    pub c1: Vec<Rational>,
    pub c2: Vec<Rational>,
    pub d1: Vec<Rational>,
    pub case: Case,
}

impl Pblp {
    pub fn new(
        feasible: FeasibleSet,
        c1: Vec<Rational>,
        c2: Vec<Rational>,
        d1: Vec<Rational>,
        case: Case,
    ) -> Result<Self, Error> {
        let n = feasible.vars;
        for (name, v) in [("c1", &c1), ("c2", &c2), ("d1", &d1)] {
            if v.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "{name} has {} entries, expected {n}",
                    v.len()
                )));
            }
        }
        if d1.iter().all(Rational::is_zero) {
            return Err(Error::NotParametric);
        }
        Ok(Pblp {
            feasible,
            c1,
            c2,
            d1,
            case,
        })
    }

    pub fn vars(&self) -> usize {
        self.feasible.vars
    }

    pub fn with_case(&self, case: Case) -> Pblp {
        Pblp {
            case,
            ..self.clone()
        }
    }
}

/// Objective vector of the triobjective LP, ordered `(c₁x, c₂x, d₁x)`.
pub type Image3 = [Rational; 3];

/// Human-readable `(a, b, c)` form of an image.
pub fn format_image(y: &Image3) -> String {
    format!("({}, {}, {})", y[0], y[1], y[2])
}

/// The triobjective LP `min (c₁x, c₂x, d₁x)` shared by both cases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tolp {
    pub feasible: FeasibleSet,
    pub objectives: [Vec<Rational>; 3],
}

impl Tolp {
    pub fn image(&self, x: &[Rational]) -> Image3 {
        [
            dot(&self.objectives[0], x),
            dot(&self.objectives[1], x),
            dot(&self.objectives[2], x),
        ]
    }

    pub fn vars(&self) -> usize {
        self.feasible.vars
    }
}

pub fn build_tolp(p: &Pblp) -> Tolp {
    Tolp {
        feasible: p.feasible.clone(),
        objectives: [p.c1.clone(), p.c2.clone(), p.d1.clone()],
    }
}

/// A non-parametric biobjective LP, i.e. a parametric one with `λ` fixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bolp {
    pub feasible: FeasibleSet,
    pub objectives: [Vec<Rational>; 2],
}

impl Bolp {
    pub fn image(&self, x: &[Rational]) -> [Rational; 2] {
        [dot(&self.objectives[0], x), dot(&self.objectives[1], x)]
    }
}

fn check_parameter(lam: &Rational) -> Result<(), Error> {
    if lam.is_negative() {
        return Err(Error::NegativeParameter(lam.clone()));
    }
    Ok(())
}

fn axpy(x: &[Rational], lam: &Rational, d: &[Rational]) -> Vec<Rational> {
    x.iter().zip(d).map(|(a, b)| a + &(lam * b)).collect()
}

pub fn fix_lambda(p: &Pblp, lam: &Rational) -> Result<Bolp, Error> {
    check_parameter(lam)?;
    let first = axpy(&p.c1, lam, &p.d1);
    let second = match p.case {
        Case::One => p.c2.clone(),
        Case::Two => axpy(&p.c2, lam, &p.d1),
    };
    Ok(Bolp {
        feasible: p.feasible.clone(),
        objectives: [first, second],
    })
}

/// Image of a triobjective image under `fix_lambda`, without an `x`.
pub fn project_image(case: Case, lam: &Rational, y: &Image3) -> [Rational; 2] {
    let shift = lam * &y[2];
    match case {
        Case::One => [&y[0] + &shift, y[1].clone()],
        Case::Two => [&y[0] + &shift, &y[1] + &shift],
    }
}

/// A normalized weight on the three objectives.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weight3([Rational; 3]);

impl Weight3 {
    pub fn new(w1: Rational, w2: Rational, w3: Rational) -> Result<Self, Error> {
        let w = [w1, w2, w3];
        if w.iter().any(Rational::is_negative) {
            return Err(Error::InvalidWeight(format!("negative entry in {w:?}")));
        }
        if w.iter().sum::<Rational>() != Rational::one() {
            return Err(Error::InvalidWeight(format!("{w:?} does not sum to 1")));
        }
        Ok(Weight3(w))
    }

    /// Lifts a point of the `(w₁, w₂)` projection with `w₃ = 1 − w₁ − w₂`.
    pub fn from_projection(p: &Point2) -> Result<Self, Error> {
        let w3 = Rational::one() - &p.x - &p.y;
        Weight3::new(p.x.clone(), p.y.clone(), w3)
    }

    pub fn projection(&self) -> Point2 {
        Point2::new(self.0[0].clone(), self.0[1].clone())
    }

    pub fn as_array(&self) -> &[Rational; 3] {
        &self.0
    }

    pub fn w1(&self) -> &Rational {
        &self.0[0]
    }

    pub fn w2(&self) -> &Rational {
        &self.0[1]
    }

    pub fn w3(&self) -> &Rational {
        &self.0[2]
    }

    pub fn apply(&self, y: &Image3) -> Rational {
        dot(&self.0, y)
    }
}

impl std::fmt::Display for Weight3 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

/// A normalized weight on the two objectives of a biobjective instance.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weight2([Rational; 2]);

impl Weight2 {
    pub fn new(w1: Rational, w2: Rational) -> Result<Self, Error> {
        if w1.is_negative() || w2.is_negative() || &w1 + &w2 != Rational::one() {
            return Err(Error::InvalidWeight(format!("({w1}, {w2})")));
        }
        Ok(Weight2([w1, w2]))
    }

    pub fn w1(&self) -> &Rational {
        &self.0[0]
    }

    pub fn w2(&self) -> &Rational {
        &self.0[1]
    }
}

/// Weighted-sum scalarization `min w₁c₁x + w₂c₂x + w₃d₁x`.
pub fn ws_scalarize(t: &Tolp, w: &Weight3) -> LinearProgram {
    let objective = (0..t.vars())
        .map(|j| {
            w.as_array()
                .iter()
                .zip(&t.objectives)
                .map(|(wk, ck)| wk * &ck[j])
                .sum()
        })
        .collect();
    t.feasible
        .lp(objective)
        .expect("tolp dimensions are validated on construction")
}

pub fn map_weight_to_simplex(case: Case, w: &Weight2, lam: &Rational) -> Result<Weight3, Error> {
    check_parameter(lam)?;
    let lifted_third = match case {
        Case::One => w.w1() * lam,
        Case::Two => lam.clone(),
    };
    // Entries of (w₁, w₂, lifted_third) sum to 1 + lifted_third > 0.
    let scale = (Rational::one() + &lifted_third)
        .recip()
        .expect("positive normalizer");
    Weight3::new(w.w1() * &scale, w.w2() * &scale, lifted_third * &scale)
}

/// Parameter value encoded by a triobjective weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LambdaValue {
    Finite(Rational),
    Infinite,
    /// The weight lies on every parameter's segment (case one, `(0,1,0)`).
    Undefined,
}

impl LambdaValue {
    pub fn extended(&self) -> Option<ExtendedRational> {
        match self {
            LambdaValue::Finite(r) => Some(ExtendedRational::Finite(r.clone())),
            LambdaValue::Infinite => Some(ExtendedRational::PosInfinity),
            LambdaValue::Undefined => None,
        }
    }
}

pub fn lambda_from_weight(case: Case, w: &Weight3) -> LambdaValue {
    match case {
        Case::One => {
            if w.w1().is_positive() {
                LambdaValue::Finite(w.w3() / w.w1())
            } else if w.w3().is_positive() {
                LambdaValue::Infinite
            } else {
                LambdaValue::Undefined
            }
        }
        Case::Two => {
            let rest = Rational::one() - w.w3();
            if rest.is_zero() {
                LambdaValue::Infinite
            } else {
                LambdaValue::Finite(w.w3() / &rest)
            }
        }
    }
}

/// A line segment in the `(w₁, w₂)` projection of the weight simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment2 {
    pub p: Point2,
    pub q: Point2,
}

impl Segment2 {
    /// Exact membership test (collinear and between the endpoints).
    pub fn contains(&self, r: &Point2) -> bool {
        let d = self.q.sub(&self.p);
        let e = r.sub(&self.p);
        if !d.cross(&e).is_zero() {
            return false;
        }
        let t = d.dot(&e);
        !t.is_negative() && t <= d.dot(&d)
    }
}

/// Projected weight set of the biobjective instance at `lam`.
pub fn segment_for_lambda(case: Case, lam: &Rational) -> Result<Segment2, Error> {
    check_parameter(lam)?;
    let end = (Rational::one() + lam).recip().expect("positive");
    let p = match case {
        Case::One => Point2::new(Rational::zero(), Rational::one()),
        Case::Two => Point2::new(Rational::zero(), end.clone()),
    };
    Ok(Segment2 {
        p,
        q: Point2::new(end, Rational::zero()),
    })
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::numerics::rats;

    /// First illustrative instance: `3x₁ + 2x₂ ≥ 6, x₁ ≤ 10, x₂ ≤ 3`.
    pub fn example_one(case: Case) -> Pblp {
        let feasible = FeasibleSet::new(
            2,
            vec![rats(&["3", "2"]), rats(&["1", "0"]), rats(&["0", "1"])],
            rats(&["6", "10", "3"]),
            vec![Sense::Ge, Sense::Le, Sense::Le],
        )
        .unwrap();
        Pblp::new(
            feasible,
            rats(&["-3", "-1"]),
            rats(&["1", "-2"]),
            rats(&["1", "1"]),
            case,
        )
        .unwrap()
    }

    /// Second illustrative instance, with identity objectives.
    pub fn example_two(case: Case) -> Pblp {
        let feasible = FeasibleSet::new(
            3,
            vec![
                rats(&["2", "3", "5"]),
                rats(&["2", "15", "-15"]),
                rats(&["2", "-1", "1"]),
                rats(&["2", "-1", "-15"]),
            ],
            rats(&["40", "0", "0", "0"]),
            vec![Sense::Ge, Sense::Ge, Sense::Ge, Sense::Le],
        )
        .unwrap();
        Pblp::new(
            feasible,
            rats(&["1", "0", "0"]),
            rats(&["0", "1", "0"]),
            rats(&["0", "0", "1"]),
            case,
        )
        .unwrap()
    }
}
