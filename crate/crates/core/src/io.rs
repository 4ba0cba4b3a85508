//! Problem files, result documents and plot data.
//!
//! Problem file:
//!
//! ```text
//! # comment
//! case: 2
//! vars: 3
//! row: >= 2 3 5 40
//! row: <= 2 -1 -15 0
//! c1: 1 0 0
//! c2: 0 1 0
//! d1: 0 0 1
//! ```
//!
//! Results are JSON with every rational written as a `"p/q"` string and
//! `+∞` as `"inf"`. Plot data is one comma-separated record per line.

use std::fmt::Write as _;

use serde::Serialize;

use crate::breakpoints::ParametricSolution;
use crate::geometry::Point2;
use crate::lp::Sense;
use crate::numerics::{ExtendedRational, Rational};
use crate::oracle::{CheckReport, SweepReport};
use crate::problem::{segment_for_lambda, Case, FeasibleSet, Image3, Pblp};
use crate::wsd::Decomposition;
use crate::Error;

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str, from: usize) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices().skip_while(|&(i, _)| i < from) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token {
                    text: &line[s..i],
                    column: line[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: line[..s].chars().count() + 1,
        });
    }
    out
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn parse_rational(tok: &Token, line: usize) -> Result<Rational, Error> {
    tok.text.parse().map_err(|_| {
        parse_error(
            line,
            tok.column,
            format!("`{}` is not a rational number", tok.text),
        )
    })
}

fn parse_vector(toks: &[Token], line: usize) -> Result<Vec<Rational>, Error> {
    toks.iter().map(|t| parse_rational(t, line)).collect()
}

struct RawRow {
    line: usize,
    sense: Sense,
    values: Vec<Rational>,
}

#[derive(Default)]
struct Sections {
    case: Option<Case>,
    vars: Option<usize>,
    rows: Vec<RawRow>,
    c1: Option<(usize, Vec<Rational>)>,
    c2: Option<(usize, Vec<Rational>)>,
    d1: Option<(usize, Vec<Rational>)>,
}

fn single<'a>(
    toks: &'a [Token<'a>],
    line: usize,
    key: &str,
    key_column: usize,
) -> Result<&'a Token<'a>, Error> {
    match toks {
        [t] => Ok(t),
        [] => Err(parse_error(
            line,
            key_column,
            format!("`{key}` needs a value"),
        )),
        [_, extra, ..] => Err(parse_error(
            line,
            extra.column,
            format!("unexpected token `{}`", extra.text),
        )),
    }
}

pub fn parse_problem(text: &str) -> Result<Pblp, Error> {
    let mut s = Sections::default();
    let mut last_line = 0;
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let key_start = content.len() - content.trim_start().len();
        let key_column = content[..key_start].chars().count() + 1;
        let Some(colon) = content.find(':') else {
            return Err(parse_error(line, key_column, "expected `key: values`"));
        };
        let key = content[..colon].trim();
        let toks = tokens(content, colon + 1);
        let duplicate = || parse_error(line, key_column, format!("duplicate `{key}`"));
        match key {
            "case" => {
                let t = single(&toks, line, key, key_column)?;
                if s.case.is_some() {
                    return Err(duplicate());
                }
                s.case = Some(match t.text {
                    "1" => Case::One,
                    "2" => Case::Two,
                    other => return Err(Error::BadCase(other.to_string())),
                });
            }
            "vars" => {
                let t = single(&toks, line, key, key_column)?;
                if s.vars.is_some() {
                    return Err(duplicate());
                }
                let n: usize = t.text.parse().ok().filter(|&n| n > 0).ok_or_else(|| {
                    parse_error(
                        line,
                        t.column,
                        format!("`{}` is not a positive integer", t.text),
                    )
                })?;
                s.vars = Some(n);
            }
            "row" => {
                let Some((first, rest)) = toks.split_first() else {
                    return Err(parse_error(line, key_column, "`row` needs a sense"));
                };
                let sense = match first.text {
                    ">=" => Sense::Ge,
                    "<=" => Sense::Le,
                    "=" => Sense::Eq,
                    other => {
                        return Err(parse_error(
                            line,
                            first.column,
                            format!("unknown sense `{other}`"),
                        ))
                    }
                };
                s.rows.push(RawRow {
                    line,
                    sense,
                    values: parse_vector(rest, line)?,
                });
            }
            "c1" | "c2" | "d1" => {
                let slot = match key {
                    "c1" => &mut s.c1,
                    "c2" => &mut s.c2,
                    _ => &mut s.d1,
                };
                if slot.is_some() {
                    return Err(duplicate());
                }
                *slot = Some((line, parse_vector(&toks, line)?));
            }
            other => {
                return Err(parse_error(
                    line,
                    key_column,
                    format!("unknown key `{other}`"),
                ))
            }
        }
    }
    let missing = |key: &str| parse_error(last_line + 1, 1, format!("missing `{key}`"));
    let case = s.case.ok_or_else(|| missing("case"))?;
    let n = s.vars.ok_or_else(|| missing("vars"))?;
    if s.rows.is_empty() {
        return Err(missing("row"));
    }
    let mut matrix = Vec::new();
    let mut rhs = Vec::new();
    let mut senses = Vec::new();
    for mut row in s.rows {
        if row.values.len() != n + 1 {
            return Err(Error::DimensionMismatch(format!(
                "line {}: row has {} numbers, expected {} coefficients and a right-hand side",
                row.line,
                row.values.len(),
                n
            )));
        }
        rhs.push(row.values.pop().expect("nonempty"));
        matrix.push(row.values);
        senses.push(row.sense);
    }
    let objective =
        |slot: Option<(usize, Vec<Rational>)>, key: &str| -> Result<Vec<Rational>, Error> {
            let (line, v) = slot.ok_or_else(|| missing(key))?;
            if v.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "line {line}: `{key}` has {} entries, expected {n}",
                    v.len()
                )));
            }
            Ok(v)
        };
    let c1 = objective(s.c1, "c1")?;
    let c2 = objective(s.c2, "c2")?;
    let d1 = objective(s.d1, "d1")?;
    let feasible = FeasibleSet::new(n, matrix, rhs, senses)?;
    Pblp::new(feasible, c1, c2, d1, case)
}

fn join(v: &[Rational]) -> String {
    v.iter()
        .map(Rational::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Canonical problem text; `parse_problem(&write_problem(p)) == p`.
pub fn write_problem(p: &Pblp) -> String {
    let mut out = String::new();
    writeln!(out, "case: {}", p.case.number()).unwrap();
    writeln!(out, "vars: {}", p.vars()).unwrap();
    let f = &p.feasible;
    for ((row, sense), b) in f.matrix.iter().zip(&f.senses).zip(&f.rhs) {
        writeln!(out, "row: {} {} {}", sense.symbol(), join(row), b).unwrap();
    }
    writeln!(out, "c1: {}", join(&p.c1)).unwrap();
    writeln!(out, "c2: {}", join(&p.c2)).unwrap();
    writeln!(out, "d1: {}", join(&p.d1)).unwrap();
    out
}

#[derive(Debug, Serialize)]
pub struct RowDoc {
    pub sense: Sense,
    pub coefficients: Vec<Rational>,
    pub rhs: Rational,
}

#[derive(Debug, Serialize)]
pub struct ProblemDoc {
    pub case: u8,
    pub vars: usize,
    pub rows: Vec<RowDoc>,
    pub c1: Vec<Rational>,
    pub c2: Vec<Rational>,
    pub d1: Vec<Rational>,
}

impl ProblemDoc {
    pub fn new(p: &Pblp) -> Self {
        let f = &p.feasible;
        ProblemDoc {
            case: p.case.number(),
            vars: p.vars(),
            rows: f
                .matrix
                .iter()
                .zip(&f.senses)
                .zip(&f.rhs)
                .map(|((row, sense), b)| RowDoc {
                    sense: *sense,
                    coefficients: row.clone(),
                    rhs: b.clone(),
                })
                .collect(),
            c1: p.c1.clone(),
            c2: p.c2.clone(),
            d1: p.d1.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ImageDoc {
    pub image: Image3,
    pub witness: Vec<Rational>,
    /// Counterclockwise vertices of the component in `(w1, w2)`.
    pub component: Vec<[Rational; 2]>,
}

#[derive(Debug, Serialize)]
pub struct IntervalDoc {
    pub image: Image3,
    pub lower: Rational,
    pub upper: ExtendedRational,
}

#[derive(Debug, Serialize)]
pub struct SegmentDoc {
    pub lower: Rational,
    pub lower_closed: bool,
    pub upper: ExtendedRational,
    pub upper_closed: bool,
    pub images: Vec<Image3>,
    pub witnesses: Vec<Vec<Rational>>,
}

#[derive(Debug, Serialize)]
pub struct LpCounts {
    pub decomposition: usize,
    pub intervals: usize,
}

#[derive(Debug, Serialize)]
pub struct ResultDocument {
    pub problem: ProblemDoc,
    pub method: &'static str,
    pub extreme_images: Vec<ImageDoc>,
    pub intervals: Vec<IntervalDoc>,
    pub breakpoints: Vec<Rational>,
    pub axis: Vec<SegmentDoc>,
    pub lp_solves: LpCounts,
}

fn point(p: &Point2) -> [Rational; 2] {
    [p.x.clone(), p.y.clone()]
}

fn image_docs(dec: &Decomposition) -> Vec<ImageDoc> {
    dec.images
        .iter()
        .zip(&dec.components)
        .map(|(e, c)| ImageDoc {
            image: e.image.clone(),
            witness: e.witness.clone(),
            component: c.vertices().iter().map(point).collect(),
        })
        .collect()
}

pub fn solution_document(
    p: &Pblp,
    sol: &ParametricSolution,
    dec: &Decomposition,
) -> ResultDocument {
    ResultDocument {
        problem: ProblemDoc::new(p),
        method: sol.method.name(),
        extreme_images: image_docs(dec),
        intervals: sol
            .intervals
            .iter()
            .map(|iv| IntervalDoc {
                image: iv.image.clone(),
                lower: iv.lower.clone(),
                upper: iv.upper.clone(),
            })
            .collect(),
        breakpoints: sol.breakpoints.clone(),
        axis: sol
            .axis
            .iter()
            .map(|s| SegmentDoc {
                lower: s.lower.clone(),
                lower_closed: s.lower_closed,
                upper: s.upper.clone(),
                upper_closed: s.upper_closed,
                images: s
                    .members
                    .iter()
                    .map(|&k| sol.intervals[k].image.clone())
                    .collect(),
                witnesses: s
                    .members
                    .iter()
                    .map(|&k| sol.intervals[k].witness.clone())
                    .collect(),
            })
            .collect(),
        lp_solves: LpCounts {
            decomposition: dec.lp_solves,
            intervals: sol.lp_solves,
        },
    }
}

fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

pub fn emit_solution(p: &Pblp, sol: &ParametricSolution, dec: &Decomposition) -> String {
    to_json(&solution_document(p, sol, dec))
}

#[derive(Debug, Serialize)]
struct DecompositionDoc {
    problem: ProblemDoc,
    extreme_images: Vec<ImageDoc>,
    lp_solves: usize,
}

pub fn emit_decomposition(p: &Pblp, dec: &Decomposition) -> String {
    to_json(&DecompositionDoc {
        problem: ProblemDoc::new(p),
        extreme_images: image_docs(dec),
        lp_solves: dec.lp_solves,
    })
}

#[derive(Debug, Serialize)]
struct SweepPointDoc {
    lambda: Rational,
    images: Vec<[Rational; 2]>,
    solutions: Vec<Image3>,
}

#[derive(Debug, Serialize)]
struct SweepCellDoc {
    lower: Rational,
    upper: Rational,
}

#[derive(Debug, Serialize)]
struct SweepDoc {
    grid: Vec<SweepPointDoc>,
    changes: Vec<SweepCellDoc>,
}

pub fn emit_sweep(report: &SweepReport) -> String {
    to_json(&SweepDoc {
        grid: report
            .grid
            .iter()
            .zip(&report.images)
            .zip(&report.observed)
            .map(|((l, imgs), obs)| SweepPointDoc {
                lambda: l.clone(),
                images: imgs.clone(),
                solutions: obs.iter().cloned().collect(),
            })
            .collect(),
        changes: report
            .changes
            .iter()
            .map(|&i| {
                let (lower, upper) = report.cell(i);
                SweepCellDoc {
                    lower: lower.clone(),
                    upper: upper.clone(),
                }
            })
            .collect(),
    })
}

#[derive(Debug, Serialize)]
struct CheckDoc<'a> {
    passed: bool,
    extreme_images: usize,
    breakpoints: &'a [Rational],
    component_vertices: usize,
    lp_solves: usize,
    oracle_ran: bool,
    sweep_ran: bool,
    failures: &'a [String],
}

pub fn emit_check(report: &CheckReport) -> String {
    to_json(&CheckDoc {
        passed: report.passed(),
        extreme_images: report.images,
        breakpoints: &report.breakpoints,
        component_vertices: report.component_vertices,
        lp_solves: report.lp_solves,
        oracle_ran: report.oracle_ran,
        sweep_ran: report.sweep_ran,
        failures: &report.failures,
    })
}

fn image_label(y: &Image3) -> String {
    y.iter()
        .map(Rational::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

fn decimal(r: &Rational) -> String {
    format!("{:.6}", r.to_f64())
}

/// Polygon and segment records.
///
/// ```text
/// polygon,<y1;y2;y3>,<x1>,<y1>,<x2>,<y2>,...
/// segment,<lambda>,<px>,<py>,<qx>,<qy>
/// ```
///
/// Each record is followed by a `polygon_decimal` / `segment_decimal`
/// copy with six-digit decimals. Those are lossy and meant for plotting
/// only.
pub fn emit_plot_data(
    dec: &Decomposition,
    case: Case,
    lambdas: &[Rational],
) -> Result<String, Error> {
    let mut out = String::new();
    for (e, c) in dec.images.iter().zip(&dec.components) {
        let label = image_label(&e.image);
        let exact: Vec<String> = c
            .vertices()
            .iter()
            .flat_map(|v| [v.x.to_string(), v.y.to_string()])
            .collect();
        let approx: Vec<String> = c
            .vertices()
            .iter()
            .flat_map(|v| [decimal(&v.x), decimal(&v.y)])
            .collect();
        writeln!(out, "polygon,{label},{}", exact.join(",")).unwrap();
        writeln!(out, "polygon_decimal,{label},{}", approx.join(",")).unwrap();
    }
    for lam in lambdas {
        let s = segment_for_lambda(case, lam)?;
        let ends = [&s.p.x, &s.p.y, &s.q.x, &s.q.y];
        let exact: Vec<String> = ends.iter().map(|r| r.to_string()).collect();
        let approx: Vec<String> = ends.iter().map(|r| decimal(r)).collect();
        writeln!(out, "segment,{lam},{}", exact.join(",")).unwrap();
        writeln!(out, "segment_decimal,{lam},{}", approx.join(",")).unwrap();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::breakpoints::{enumerate_breakpoints_with, Method};
    use crate::numerics::{rat, rats};
    use crate::problem::build_tolp;
    use crate::problem::fixtures::{example_one, example_two};
    use crate::random::{random_instance, InstanceShape};
    use crate::wsd::decompose;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const EXAMPLE_ONE: &str = "\
# Example with four weight set components
case: 1
vars: 2
row: >= 3 2 6
row: <= 1 0 10
row: <= 0 1 3
c1: -3 -1
c2: 1 -2
d1: 1 1
";

    #[test]
    fn parses_example_one() {
        let p = parse_problem(EXAMPLE_ONE).unwrap();
        assert_eq!(p, example_one(Case::One));
        assert_eq!(p.c1, rats(&["-3", "-1"]));
        assert_eq!(p.feasible.rows(), 3);
    }

    #[test]
    fn accepts_decimals_fractions_and_any_order() {
        let text =
            "d1: 0 1\nc2: 1/2 0\nrow: = 0.5 1 2 # tail comment\n  vars:   2\nc1: 1 1\ncase: 2\n";
        let p = parse_problem(text).unwrap();
        assert_eq!(p.feasible.matrix[0], rats(&["1/2", "1"]));
        assert_eq!(p.case, Case::Two);
    }

    #[test]
    fn rejects_bad_case() {
        let text = EXAMPLE_ONE.replace("case: 1", "case: 3");
        assert_eq!(parse_problem(&text), Err(Error::BadCase("3".into())));
    }

    #[test]
    fn rejects_wrong_arity() {
        let text = EXAMPLE_ONE.replace("row: <= 1 0 10", "row: <= 1 0 0 10");
        assert!(matches!(
            parse_problem(&text),
            Err(Error::DimensionMismatch(_))
        ));
        let text = EXAMPLE_ONE.replace("c2: 1 -2", "c2: 1");
        assert!(matches!(
            parse_problem(&text),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn reports_line_and_column() {
        let text = EXAMPLE_ONE.replace("row: <= 0 1 3", "row: <= 0 x 3");
        match parse_problem(&text) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (6, 11)),
            other => panic!("{other:?}"),
        }
        let text = EXAMPLE_ONE.replace("row: >=", "row: =>");
        assert!(matches!(
            parse_problem(&text),
            Err(Error::Parse {
                line: 4,
                column: 6,
                ..
            })
        ));
        assert!(matches!(
            parse_problem("case: 1\nfoo: 2\n"),
            Err(Error::Parse {
                line: 2,
                column: 1,
                ..
            })
        ));
        let text = EXAMPLE_ONE.replace("d1: 1 1\n", "");
        assert!(matches!(
            parse_problem(&text),
            Err(Error::Parse { line: 9, .. })
        ));
        assert!(matches!(
            parse_problem("case: 1\ncase: 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn zero_parameter_objective_is_rejected() {
        let text = EXAMPLE_ONE.replace("d1: 1 1", "d1: 0 0");
        assert_eq!(parse_problem(&text), Err(Error::NotParametric));
    }

    #[test]
    fn write_then_parse_is_identity() {
        for p in [example_one(Case::One), example_two(Case::Two)] {
            assert_eq!(parse_problem(&write_problem(&p)).unwrap(), p);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let p = random_instance(&mut rng, InstanceShape::default(), Case::One);
            assert_eq!(parse_problem(&write_problem(&p)).unwrap(), p);
        }
    }

    fn solve(p: &Pblp) -> (ParametricSolution, Decomposition) {
        let dec = decompose(&build_tolp(p)).unwrap();
        let sol = enumerate_breakpoints_with(p, &dec, Method::AlgorithmOne).unwrap();
        (sol, dec)
    }

    #[test]
    fn solution_document_for_example_two() {
        let p = example_two(Case::Two);
        let (sol, dec) = solve(&p);
        let text = emit_solution(&p, &sol, &dec);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["breakpoints"], serde_json::json!(["1", "5"]));
        assert_eq!(v["method"], "lp");
        let intervals = v["intervals"].as_array().unwrap();
        assert!(intervals.contains(
            &serde_json::json!({"image": ["5", "10", "0"], "lower": "1", "upper": "inf"})
        ));
        assert_eq!(v["axis"][0]["lower"], "0");
        assert_eq!(
            v["axis"].as_array().unwrap().last().unwrap()["upper"],
            "inf"
        );
        assert_eq!(text, emit_solution(&p, &sol, &dec));
    }

    #[test]
    fn empty_breakpoint_list_serializes() {
        let feasible =
            FeasibleSet::new(1, vec![rats(&["1"])], rats(&["1"]), vec![Sense::Eq]).unwrap();
        let p = Pblp::new(
            feasible,
            rats(&["1"]),
            rats(&["1"]),
            rats(&["1"]),
            Case::One,
        )
        .unwrap();
        let (sol, dec) = solve(&p);
        let v: serde_json::Value = serde_json::from_str(&emit_solution(&p, &sol, &dec)).unwrap();
        assert_eq!(v["breakpoints"], serde_json::json!([]));
    }

    #[test]
    fn plot_records() {
        let dec = decompose(&build_tolp(&example_two(Case::Two))).unwrap();
        let text = emit_plot_data(&dec, Case::Two, &[rat("1")]).unwrap();
        assert!(text.lines().any(|l| l == "segment,1,0,1/2,1/2,0"));
        assert!(text
            .lines()
            .any(|l| l == "polygon,5;10;0,0,0,1/2,0,1/5,3/10,0,1/6"));
        assert!(text
            .lines()
            .any(|l| l.starts_with("segment_decimal,1,0.000000,0.500000")));

        let dec = decompose(&build_tolp(&example_one(Case::One))).unwrap();
        let text = emit_plot_data(&dec, Case::One, &[]).unwrap();
        assert_eq!(
            text.lines().filter(|l| l.starts_with("polygon,")).count(),
            4
        );
        assert!(!text.contains("segment"));
    }
}
