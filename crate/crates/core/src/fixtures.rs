//! Seeded random inputs shared by the self-test, the CLI and the test suites.
//!
//! Every generator draws from a [`SplitMix64`] only, so a seed fixes the
//! fixture exactly.

use num_traits::{One, Zero};

use crate::algebra::{
    determinant, linalg::mat_vec, monomials_of_degree, Monomial, MultiPoly, Scalar,
};
use crate::multivector::{increasing_tuples, Multivector};
use crate::pencil::{GramMatrix, QuadricPencil};
use crate::polar::{polar_line, ProjPoint};
use crate::rng::SplitMix64;

/// Coefficient range used unless stated otherwise.
pub const COEFF_RANGE: i64 = 9;

fn int(n: i64) -> Scalar {
    Scalar::from_integer(n.into())
}

/// Quadric with all ten coefficients uniform in `[-range, range]`, nonzero.
pub fn random_quadric(rng: &mut SplitMix64, range: i64) -> MultiPoly {
    let basis = monomials_of_degree(4, 2);
    loop {
        let coeffs: Vec<Scalar> = basis
            .iter()
            .map(|_| int(rng.int_in(-range, range)))
            .collect();
        let q = MultiPoly::from_coefficients(&basis, &coeffs);
        if !q.is_zero() {
            return q;
        }
    }
}

pub fn random_pencil(rng: &mut SplitMix64) -> QuadricPencil {
    loop {
        let (a, b) = (
            random_quadric(rng, COEFF_RANGE),
            random_quadric(rng, COEFF_RANGE),
        );
        if let Ok(p) = QuadricPencil::new(a, b) {
            return p;
        }
    }
}

pub fn random_generic_pencil(rng: &mut SplitMix64) -> QuadricPencil {
    loop {
        let p = random_pencil(rng);
        if p.is_generic() {
            return p;
        }
    }
}

pub fn random_quadruple(rng: &mut SplitMix64) -> [MultiPoly; 4] {
    std::array::from_fn(|_| random_quadric(rng, COEFF_RANGE))
}

/// Four quadrics spanning at most three dimensions: `Q4 = a Q1 + b Q2 + c Q3`.
pub fn rank_deficient_quadruple(rng: &mut SplitMix64) -> [MultiPoly; 4] {
    let [q1, q2, q3, _] = random_quadruple(rng);
    let [a, b, c] = [0; 3].map(|_| int(rng.int_in(-3, 3)));
    let q4 = &(&q1.scale(&a) + &q2.scale(&b)) + &q3.scale(&c);
    [q1, q2, q3, q4]
}

/// Two generic pencils sharing a member.
pub fn meeting_pencils(rng: &mut SplitMix64) -> (QuadricPencil, QuadricPencil) {
    loop {
        let a = random_generic_pencil(rng);
        let (l, m) = (int(rng.int_in(-3, 3)), int(rng.int_in(1, 3)));
        let shared = a.member(&l, &m);
        let other = random_quadric(rng, COEFF_RANGE);
        if let Ok(b) = QuadricPencil::new(shared, other) {
            if b.is_generic() {
                return (a, b);
            }
        }
    }
}

fn random_invertible(rng: &mut SplitMix64, range: i64) -> Vec<Vec<Scalar>> {
    loop {
        let g: Vec<Vec<Scalar>> = (0..4)
            .map(|_| (0..4).map(|_| int(rng.int_in(-range, range))).collect())
            .collect();
        if !determinant(&g).is_zero() {
            return g;
        }
    }
}

/// `Q(g x)` for an integer matrix `g`.
pub fn transform(q: &MultiPoly, g: &[Vec<Scalar>]) -> MultiPoly {
    let images: Vec<MultiPoly> = g
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .fold(MultiPoly::zero(4), |acc, (j, c)| {
                    &acc + &MultiPoly::var(4, j).scale(c)
                })
        })
        .collect();
    q.compose(&images).expect("four images")
}

/// `<Σ y_i², Σ a_i y_i²>` in coordinates `y = g x`, with distinct `a_i`;
/// generic, with the four rational vertices `g⁻¹ e_i`.
pub fn transformed_diagonal_pencil(rng: &mut SplitMix64) -> QuadricPencil {
    let mut a: Vec<i64> = Vec::new();
    while a.len() < 4 {
        let v = rng.int_in(-6, 6);
        if !a.contains(&v) {
            a.push(v);
        }
    }
    let g = random_invertible(rng, 2);
    let sq = |i| MultiPoly::var(4, i).pow(2);
    let q1 = (0..4).fold(MultiPoly::zero(4), |acc, i| &acc + &sq(i));
    let q2 = (0..4).fold(MultiPoly::zero(4), |acc, i| &acc + &sq(i).scale(&int(a[i])));
    QuadricPencil::new(transform(&q1, &g), transform(&q2, &g)).expect("independent")
}

/// A generic pencil whose base curve passes through `p` and is smooth there.
/// `p` must have a nonzero coordinate (always true for a `ProjPoint`).
pub fn pencil_through_point(rng: &mut SplitMix64, p: &ProjPoint) -> QuadricPencil {
    let j = p.largest_coordinate();
    let pj2 = &p.coords()[j] * &p.coords()[j];
    let square = Monomial::new((0..4).map(|i| if i == j { 2 } else { 0 }).collect());
    let through = |q: MultiPoly| -> MultiPoly {
        let v = q.evaluate(p.coords()).expect("four coordinates");
        &q - &MultiPoly::term(square.clone(), v / &pj2)
    };
    loop {
        let q1 = through(random_quadric(rng, COEFF_RANGE));
        let q2 = through(random_quadric(rng, COEFF_RANGE));
        let Ok(pencil) = QuadricPencil::new(q1, q2) else {
            continue;
        };
        if pencil.is_generic() && polar_line(&pencil, p).is_ok() {
            return pencil;
        }
    }
}

/// Pencils `Pa`, `Pb` and a point `p` at which both polar lines are defined
/// and meet: `Qb2 = R + t S` with `t` chosen to make the four polar forms at
/// `p` dependent.
pub fn polar_meeting_configuration(
    rng: &mut SplitMix64,
) -> (QuadricPencil, QuadricPencil, ProjPoint) {
    loop {
        let pa = random_pencil(rng);
        let p = ProjPoint::new((0..4).map(|_| int(rng.int_in(-4, 4))).collect());
        let Ok(p) = p else { continue };
        let qb1 = random_quadric(rng, COEFF_RANGE);
        let r = random_quadric(rng, COEFF_RANGE);
        let s = random_quadric(rng, COEFF_RANGE);
        let form = |q: &MultiPoly| mat_vec(GramMatrix::from_quadric(q).unwrap().rows(), p.coords());
        let rows = |last: Vec<Scalar>| vec![form(pa.q1()), form(pa.q2()), form(&qb1), last];
        let dr = determinant(&rows(form(&r)));
        let ds = determinant(&rows(form(&s)));
        if ds.is_zero() {
            continue;
        }
        let t = -(dr / ds);
        let qb2 = &r + &s.scale(&t);
        let Ok(pb) = QuadricPencil::new(qb1, qb2) else {
            continue;
        };
        if polar_line(&pa, &p).is_ok() && polar_line(&pb, &p).is_ok() {
            return (pa, pb, p);
        }
    }
}

/// Random, not necessarily homogeneous, polynomial of degree at most
/// `max_degree` and up to `terms` terms, coefficients in `[-3, 3]`.
pub fn random_poly(rng: &mut SplitMix64, nvars: usize, max_degree: u32, terms: usize) -> MultiPoly {
    let monos: Vec<Monomial> = (0..=max_degree)
        .flat_map(|d| monomials_of_degree(nvars, d))
        .collect();
    let mut p = MultiPoly::zero(nvars);
    for _ in 0..terms {
        let m = monos[rng.int_in(0, monos.len() as i64 - 1) as usize].clone();
        p += &MultiPoly::term(m, int(rng.int_in(-3, 3)));
    }
    p
}

/// Random `degree`-vector field on `nvars`-space with sparse polynomial
/// coefficients of degree at most `max_coeff_degree`.
pub fn random_multivector(
    rng: &mut SplitMix64,
    nvars: usize,
    degree: usize,
    max_coeff_degree: u32,
) -> Multivector {
    let tuples = increasing_tuples(nvars, degree);
    let count = rng.int_in(1, tuples.len().min(3) as i64) as usize;
    let terms: Vec<(Vec<usize>, MultiPoly)> = (0..count)
        .map(|_| {
            let idx = tuples[rng.int_in(0, tuples.len() as i64 - 1) as usize].clone();
            (idx, random_poly(rng, nvars, max_coeff_degree, 2))
        })
        .collect();
    Multivector::from_terms(nvars, degree, terms)
}

/// Float point with coordinates in `[-1, 1)`, away from the origin.
pub fn random_float_point(rng: &mut SplitMix64) -> [f64; 4] {
    loop {
        let p: [f64; 4] = std::array::from_fn(|_| rng.f64_in(-1.0, 1.0));
        if p.iter().map(|x| x * x).sum::<f64>() > 0.25 {
            return p;
        }
    }
}

/// A fixed smooth rational point used for conormal fixtures.
pub fn base_point() -> ProjPoint {
    ProjPoint::new(vec![Scalar::one(); 4]).expect("nonzero")
}
