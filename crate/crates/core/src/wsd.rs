//! Weight set decomposition of the triobjective LP.
//!
//! The decomposition is built by refinement. A set `K` of known extreme
//! images induces a tentative subdivision of the weight simplex (each
//! `y ∈ K` gets the weights where it beats the rest of `K`). Every vertex
//! `w` of that subdivision is checked by solving the weighted-sum LP at
//! `w`: if the optimum undercuts `min_{y∈K} wᵀy`, the optimal image is new
//! and joins `K`. The weighted-sum value function is concave and the
//! tentative one is piecewise linear on the same cells, so once every
//! vertex certifies the two agree on the whole simplex and `K` is complete.

use std::collections::BTreeMap;

use crate::geometry::{component_vertices, ConvexPolygon2, Point2};
use crate::lp::{solve_lex_lp, solve_lp, LpStatus};
use crate::numerics::Rational;
use crate::problem::{format_image, ws_scalarize, Image3, Tolp, Weight3};
use crate::Error;

/// An extreme nondominated image with a feasible solution mapping to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremeImage {
    pub image: Image3,
    pub witness: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// Extreme nondominated images, sorted by image.
    pub images: Vec<ExtremeImage>,
    /// `components[i]` is the weight set component of `images[i]`.
    pub components: Vec<ConvexPolygon2>,
    /// Images that ended with a zero-area cell. Empty for exact input, kept
    /// for diagnostics.
    pub degenerate: Vec<(ExtremeImage, ConvexPolygon2)>,
    /// Number of LPs solved, including the up-front boundedness checks.
    pub lp_solves: usize,
}

impl Decomposition {
    pub fn component_of(&self, image: &Image3) -> Option<&ConvexPolygon2> {
        self.images
            .iter()
            .position(|e| &e.image == image)
            .map(|i| &self.components[i])
    }

    pub fn image_vectors(&self) -> Vec<Image3> {
        self.images.iter().map(|e| e.image.clone()).collect()
    }

    /// Number of component vertices, counted per component.
    pub fn vertex_count(&self) -> usize {
        self.components.iter().map(|c| c.vertices().len()).sum()
    }
}

fn weight_label(w: &Weight3) -> String {
    w.to_string()
}

/// Solves the weighted-sum LP at `w`, breaking ties lexicographically by
/// `(c₁, c₂, d₁)` so that the returned image is an extreme point.
pub fn find_extreme_image(t: &Tolp, w: &Weight3) -> Result<ExtremeImage, Error> {
    let lp = ws_scalarize(t, w);
    let result = solve_lex_lp(&lp, &t.objectives);
    match result.status {
        LpStatus::Optimal => {
            let witness = result.solution.expect("optimal result has a solution");
            Ok(ExtremeImage {
                image: t.image(&witness),
                witness,
            })
        }
        LpStatus::Infeasible => Err(Error::Infeasible),
        LpStatus::Unbounded => Err(Error::UnboundedScalarization(weight_label(w))),
    }
}

fn unit_weights() -> [Weight3; 3] {
    let (z, o) = (Rational::zero, Rational::one);
    [
        Weight3::new(o(), z(), z()).unwrap(),
        Weight3::new(z(), o(), z()).unwrap(),
        Weight3::new(z(), z(), o()).unwrap(),
    ]
}

/// Cells of the tentative decomposition induced by `known`.
fn tentative_cells(known: &[ExtremeImage]) -> Vec<ConvexPolygon2> {
    (0..known.len())
        .map(|i| {
            let others: Vec<Image3> = known
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, e)| e.image.clone())
                .collect();
            component_vertices(&known[i].image, &others)
        })
        .collect()
}

pub fn decompose(t: &Tolp) -> Result<Decomposition, Error> {
    let mut lp_solves = 0;
    // Weighted sums are bounded on the whole simplex iff they are bounded at
    // its corners.
    for w in unit_weights() {
        lp_solves += 1;
        match solve_lp(&ws_scalarize(t, &w)).status {
            LpStatus::Optimal => {}
            LpStatus::Infeasible => return Err(Error::Infeasible),
            LpStatus::Unbounded => return Err(Error::UnboundedScalarization(weight_label(&w))),
        }
    }
    let third = Rational::new(1, 3);
    let seed = Weight3::new(third.clone(), third.clone(), third).unwrap();
    lp_solves += 1;
    let mut known = vec![find_extreme_image(t, &seed)?];

    // Exact optimal value of the weighted-sum LP per weight already solved.
    let mut solved: BTreeMap<Point2, Rational> = BTreeMap::new();
    solved.insert(seed.projection(), seed.apply(&known[0].image));

    loop {
        let cells = tentative_cells(&known);
        let mut vertices: Vec<Point2> = cells
            .iter()
            .flat_map(|c| c.vertices().iter().cloned())
            .collect();
        vertices.sort();
        vertices.dedup();

        let mut found: Vec<ExtremeImage> = Vec::new();
        for p in vertices {
            let w = Weight3::from_projection(&p)?;
            let upper = known
                .iter()
                .map(|e| w.apply(&e.image))
                .min()
                .expect("known is nonempty");
            if let Some(value) = solved.get(&p) {
                debug_assert!(*value <= upper);
                if *value == upper {
                    continue;
                }
            }
            lp_solves += 1;
            let candidate = find_extreme_image(t, &w)?;
            let value = w.apply(&candidate.image);
            solved.insert(p, value.clone());
            if value < upper && !found.iter().any(|f| f.image == candidate.image) {
                found.push(candidate);
            }
        }
        if found.is_empty() {
            break;
        }
        known.extend(found);
    }

    known.sort_by(|a, b| a.image.cmp(&b.image));
    let cells = tentative_cells(&known);
    let mut images = Vec::new();
    let mut components = Vec::new();
    let mut degenerate = Vec::new();
    for (image, cell) in known.into_iter().zip(cells) {
        if cell.is_full_dimensional() {
            images.push(image);
            components.push(cell);
        } else {
            degenerate.push((image, cell));
        }
    }
    Ok(Decomposition {
        images,
        components,
        degenerate,
        lp_solves,
    })
}

/// Checks that `y` is weighted-sum optimal at every vertex of its cell.
pub fn certify(t: &Tolp, dec: &Decomposition) -> Result<bool, Error> {
    for (e, cell) in dec.images.iter().zip(&dec.components) {
        for w in cell.weights() {
            let result = solve_lp(&ws_scalarize(t, &w));
            match result.value {
                Some(v) if v == w.apply(&e.image) => {}
                Some(_) => return Ok(false),
                None => return Err(Error::UnboundedScalarization(weight_label(&w))),
            }
        }
    }
    Ok(true)
}

/// Human-readable label for an image, used in error messages.
pub fn describe(e: &ExtremeImage) -> String {
    format_image(&e.image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::Sense;
    use crate::numerics::{rat, rats};
    use crate::problem::fixtures::{example_one, example_two};
    use crate::problem::{build_tolp, Case, FeasibleSet, Pblp};

    fn w3(a: &str, b: &str, c: &str) -> Weight3 {
        Weight3::new(rat(a), rat(b), rat(c)).unwrap()
    }

    fn img(a: &str, b: &str, c: &str) -> Image3 {
        [rat(a), rat(b), rat(c)]
    }

    #[test]
    fn extreme_images_of_example_two() {
        let t = build_tolp(&example_two(Case::Two));
        let y = find_extreme_image(&t, &w3("1/3", "1/3", "1/3")).unwrap();
        assert_eq!(y.image, img("0", "5", "5"));
        assert_eq!(
            find_extreme_image(&t, &w3("1", "0", "0")).unwrap().image,
            img("0", "5", "5")
        );
        assert_eq!(
            find_extreme_image(&t, &w3("0", "0", "1")).unwrap().image,
            img("5", "10", "0")
        );
        // A boundary weight shared by two components returns one of them.
        let y = find_extreme_image(&t, &w3("1/5", "3/10", "1/2")).unwrap();
        assert!([img("5", "10", "0"), img("0", "5", "5")].contains(&y.image));
        assert_eq!(w3("1/5", "3/10", "1/2").apply(&y.image), rat("4"));
    }

    #[test]
    fn decomposition_of_example_two() {
        let t = build_tolp(&example_two(Case::Two));
        let dec = decompose(&t).unwrap();
        assert_eq!(
            dec.image_vectors(),
            vec![img("0", "5", "5"), img("5", "10", "0"), img("15", "0", "2")]
        );
        for e in &dec.images {
            assert_eq!(t.image(&e.witness), e.image);
            assert!(t.feasible.contains(&e.witness));
        }
        assert!(dec.degenerate.is_empty());
        assert!(certify(&t, &dec).unwrap());
        let area: Rational = dec.components.iter().map(|c| c.area()).sum();
        assert_eq!(area, rat("1/2"));
    }

    #[test]
    fn decomposition_of_example_one_has_four_cells() {
        let t = build_tolp(&example_one(Case::One));
        let dec = decompose(&t).unwrap();
        assert_eq!(dec.images.len(), 4);
        assert!(certify(&t, &dec).unwrap());
    }

    #[test]
    fn single_point_feasible_set() {
        let feasible = FeasibleSet::new(
            2,
            vec![rats(&["1", "0"]), rats(&["0", "1"])],
            rats(&["2", "3"]),
            vec![Sense::Eq, Sense::Eq],
        )
        .unwrap();
        let p = Pblp::new(
            feasible,
            rats(&["1", "-1"]),
            rats(&["2", "0"]),
            rats(&["0", "1"]),
            Case::One,
        )
        .unwrap();
        let dec = decompose(&build_tolp(&p)).unwrap();
        assert_eq!(dec.image_vectors(), vec![img("-1", "4", "3")]);
        assert_eq!(dec.components[0], ConvexPolygon2::simplex());
    }

    #[test]
    fn unbounded_scalarization_is_an_error() {
        let feasible =
            FeasibleSet::new(1, vec![rats(&["1"])], rats(&["1"]), vec![Sense::Ge]).unwrap();
        let p = Pblp::new(
            feasible,
            rats(&["-1"]),
            rats(&["1"]),
            rats(&["1"]),
            Case::Two,
        )
        .unwrap();
        assert!(matches!(
            decompose(&build_tolp(&p)),
            Err(Error::UnboundedScalarization(_))
        ));
    }

    #[test]
    fn empty_feasible_set_is_an_error() {
        let feasible = FeasibleSet::new(
            1,
            vec![rats(&["1"]), rats(&["1"])],
            rats(&["2", "1"]),
            vec![Sense::Ge, Sense::Le],
        )
        .unwrap();
        let p = Pblp::new(
            feasible,
            rats(&["1"]),
            rats(&["1"]),
            rats(&["1"]),
            Case::Two,
        )
        .unwrap();
        assert_eq!(decompose(&build_tolp(&p)), Err(Error::Infeasible));
    }

    #[test]
    fn decomposition_is_deterministic() {
        let t = build_tolp(&example_one(Case::Two));
        assert_eq!(decompose(&t).unwrap(), decompose(&t).unwrap());
    }
}
