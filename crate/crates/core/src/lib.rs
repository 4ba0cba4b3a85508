//! Exact solver for linear parametric biobjective linear programs.
//!
//! A parametric biobjective LP minimizes `(c₁x + λ d₁x, c₂x)` (case one) or
//! `(c₁x + λ d₁x, c₂x + λ d₁x)` (case two) over a polyhedron, for every
//! `λ ≥ 0`. Both variants are solved through the triobjective LP with
//! objectives `(c₁x, c₂x, d₁x)`:
//!
//! 1. [`wsd::decompose`] enumerates the extreme nondominated images of the
//!    triobjective LP together with their weight set components.
//! 2. [`breakpoints::enumerate_breakpoints`] turns every component into the
//!    parameter interval over which its solution stays in a minimal solution
//!    set, either by solving two LPs per component or by reading the
//!    component vertices, and assembles the ordered breakpoints.
//! 3. [`oracle`] re-derives the same objects by brute force.
//!
//! All arithmetic is exact ([`numerics::Rational`]).

pub mod breakpoints;
pub mod geometry;
pub mod io;
pub mod lp;
pub mod numerics;
pub mod oracle;
pub mod problem;
pub mod random;
pub mod wsd;

use thiserror::Error;

pub use breakpoints::{
    enumerate_breakpoints, AxisSegment, Method, ParameterInterval, ParametricSolution,
};
pub use geometry::{ConvexPolygon2, HalfPlane, Point2};
pub use lp::{solve_lex_lp, solve_lp, LinearProgram, LpResult, LpStatus, Sense};
pub use numerics::{ExtendedRational, Rational, RationalError};
pub use problem::{build_tolp, fix_lambda, Case, Image3, Pblp, Tolp, Weight2, Weight3};
pub use wsd::{decompose, Decomposition, ExtremeImage};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Rational(#[from] RationalError),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parameter must be nonnegative, got {0}")]
    NegativeParameter(Rational),
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("d1 is identically zero; the problem has no parameter")]
    NotParametric,
    #[error("the feasible set is empty")]
    Infeasible,
    #[error("weighted-sum scalarization is unbounded at weight {0}")]
    UnboundedScalarization(String),
    #[error("weight set component of image {0} is empty")]
    EmptyComponent(String),
    #[error("component has no vertex with a positive first weight")]
    NoFiniteVertex,
    #[error("vertex enumeration needs {0} candidate bases")]
    TooLarge(u128),
    #[error("the feasible set is unbounded")]
    UnboundedFeasibleSet,
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("case must be 1 or 2, got `{0}`")]
    BadCase(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
