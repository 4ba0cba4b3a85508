//! Random bounded instances for property suites and benchmarks.
//!
//! Row 0 is `a·x ≤ r` with strictly positive `a` and `r`, which together
//! with `x ≥ 0` bounds the feasible set. The remaining rows are arbitrary;
//! infeasible draws are rejected.

use rand::Rng;

use crate::lp::{solve_lp, LinearProgram, LpStatus, Sense};
use crate::numerics::Rational;
use crate::problem::{Case, FeasibleSet, Pblp};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceShape {
    pub max_vars: usize,
    pub max_rows: usize,
    /// Coefficients are drawn from `[-coef, coef]`.
    pub coef: i64,
}

impl Default for InstanceShape {
    fn default() -> Self {
        InstanceShape {
            max_vars: 5,
            max_rows: 7,
            coef: 9,
        }
    }
}

fn coef<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    Rational::from_integer(rng.gen_range(-bound..=bound))
}

fn vector<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vec<Rational> {
    (0..n).map(|_| coef(rng, bound)).collect()
}

fn sense<R: Rng>(rng: &mut R) -> Sense {
    match rng.gen_range(0..10) {
        0 => Sense::Eq,
        1..=4 => Sense::Le,
        _ => Sense::Ge,
    }
}

fn bounded_rows<R: Rng>(rng: &mut R, n: usize, m: usize, bound: i64) -> FeasibleSet {
    let mut matrix = vec![(0..n)
        .map(|_| Rational::from_integer(rng.gen_range(1..=bound)))
        .collect::<Vec<_>>()];
    let mut rhs = vec![Rational::from_integer(rng.gen_range(1..=bound))];
    let mut senses = vec![Sense::Le];
    for _ in 1..m {
        matrix.push(vector(rng, n, bound));
        rhs.push(coef(rng, bound));
        senses.push(sense(rng));
    }
    FeasibleSet::new(n, matrix, rhs, senses).expect("rows have length n")
}

fn is_feasible(system: &FeasibleSet) -> bool {
    let lp = system
        .lp(vec![Rational::zero(); system.vars])
        .expect("well formed");
    solve_lp(&lp).status != LpStatus::Infeasible
}

/// A random bounded, feasible feasible set with `2..=max_vars` variables.
pub fn random_feasible_set<R: Rng>(rng: &mut R, shape: InstanceShape) -> FeasibleSet {
    loop {
        let n = rng.gen_range(2..=shape.max_vars.max(2));
        let m = rng.gen_range(1..=shape.max_rows.max(1));
        let system = bounded_rows(rng, n, m, shape.coef);
        if is_feasible(&system) {
            return system;
        }
    }
}

/// A random parametric instance over a bounded feasible set.
pub fn random_instance<R: Rng>(rng: &mut R, shape: InstanceShape, case: Case) -> Pblp {
    let feasible = random_feasible_set(rng, shape);
    let n = feasible.vars;
    loop {
        let c1 = vector(rng, n, shape.coef);
        let c2 = vector(rng, n, shape.coef);
        let d1 = vector(rng, n, shape.coef);
        if let Ok(p) = Pblp::new(feasible.clone(), c1, c2, d1, case) {
            return p;
        }
    }
}

/// A random feasible LP over a bounded region, all variables `≥ 0`.
pub fn random_lp<R: Rng>(rng: &mut R, shape: InstanceShape) -> LinearProgram {
    let system = loop {
        let n = rng.gen_range(1..=shape.max_vars.max(1));
        let m = rng.gen_range(1..=shape.max_rows.max(1));
        let system = bounded_rows(rng, n, m, shape.coef);
        if is_feasible(&system) {
            break system;
        }
    };
    let objective = vector(rng, system.vars, shape.coef);
    system.lp(objective).expect("well formed")
}

/// A random rational in `[-bound, bound]` with denominator at most `den`.
pub fn random_rational<R: Rng>(rng: &mut R, bound: i64, den: i64) -> Rational {
    let q = rng.gen_range(1..=den);
    Rational::new(rng.gen_range(-bound * q..=bound * q), q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::enumerate_vertices_bruteforce;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn instances_are_bounded_and_feasible() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let p = random_instance(&mut rng, InstanceShape::default(), Case::One);
            assert!(p.vars() <= 5 && p.feasible.rows() <= 7);
            let vs = enumerate_vertices_bruteforce(&p.feasible).unwrap();
            assert!(!vs.vertices.is_empty());
        }
    }

    #[test]
    fn generation_is_reproducible() {
        let draw = || {
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            (
                random_instance(&mut rng, InstanceShape::default(), Case::Two),
                random_lp(&mut rng, InstanceShape::default()),
            )
        };
        assert_eq!(draw(), draw());
    }

    #[test]
    fn random_rationals_stay_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let r = random_rational(&mut rng, 2, 7);
            assert!(r.abs() <= Rational::from_integer(2));
        }
    }
}
