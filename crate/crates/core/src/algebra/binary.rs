//! Binary forms: squarefreeness and rational projective roots.
//!
//! A binary form `f(l, m)` of degree `d` is handled through its
//! dehomogenization `g(t) = f(t, 1)` plus the multiplicity `d - deg g` of
//! the root at infinity `(1:0)`. A repeated projective root of `f` is the
//! same thing as a nonconstant `gcd(f, df/dl, df/dm)`, which on the affine
//! chart is `gcd(g, g')`, together with a root at infinity of multiplicity
//! at least two.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::MultiPoly;
use super::Scalar;
use crate::error::{Error, Result};

/// Dense univariate polynomial, coefficients from low to high degree, with
/// no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly(Vec<Scalar>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Scalar::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        self.0
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| acc * t + c)
    }

    pub fn monic(&self) -> UniPoly {
        match self.0.last() {
            Some(lc) => {
                let inv = lc.recip();
                UniPoly(self.0.iter().map(|c| c * &inv).collect())
            }
            None => self.clone(),
        }
    }

    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc_inv = d.0[dd].recip();
        let mut rem = self.0.clone();
        let n = self.0.len();
        if n <= dd {
            return (UniPoly::new(Vec::new()), self.clone());
        }
        let mut quot = vec![Scalar::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.0.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Distinct rational roots, ascending.
    pub fn rational_roots(&self) -> Vec<Scalar> {
        let mut roots = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return roots;
        }
        // integer coefficients
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|c| (c * Scalar::from_integer(lcm.clone())).to_integer())
            .collect();
        if ints[0].is_zero() {
            roots.push(Scalar::zero());
            let k = ints.iter().position(|c| !c.is_zero()).unwrap();
            ints.drain(..k);
        }
        if ints.len() > 1 {
            let c0 = ints[0].abs();
            let cn = ints.last().unwrap().abs();
            for p in divisors(&c0) {
                for q in divisors(&cn) {
                    if !p.gcd(&q).is_one() {
                        continue;
                    }
                    for sign in [1, -1] {
                        let cand = Scalar::new(&p * BigInt::from(sign), q.clone());
                        if self.eval(&cand).is_zero() && !roots.contains(&cand) {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
        roots.sort();
        roots
    }
}

/// Positive divisors of a positive integer by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut rest = n.clone();
    let mut d = BigInt::from(2);
    while &d * &d <= rest {
        let mut e = 0;
        while (&rest % &d).is_zero() {
            rest /= &d;
            e += 1;
        }
        if e > 0 {
            primes.push((d.clone(), e));
        }
        d += 1;
    }
    if rest > BigInt::one() {
        primes.push((rest, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for dv in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(dv * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs
}

/// Affine part `f(t, 1)` and degree of a nonzero homogeneous binary form.
fn dehomogenize(f: &MultiPoly) -> Result<(UniPoly, u32)> {
    if f.nvars() != 2 {
        return Err(Error::NvarsMismatch {
            left: 2,
            right: f.nvars(),
        });
    }
    let d = f.total_degree().ok_or(Error::ZeroPolynomial)?;
    if !f.is_homogeneous(d) {
        return Err(Error::NotHomogeneous { expected: d });
    }
    let mut coeffs = vec![Scalar::zero(); d as usize + 1];
    for (m, c) in f.terms() {
        coeffs[m.exponents()[0] as usize] = c.clone();
    }
    Ok((UniPoly::new(coeffs), d))
}

fn homogenize(g: &UniPoly, d: u32) -> MultiPoly {
    MultiPoly::from_terms(
        2,
        g.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| (vec![i as u32, d - i as u32], c.clone())),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeReport {
    pub squarefree: bool,
    /// Product of the distinct linear factors, leading coefficient 1.
    pub part: MultiPoly,
}

/// Squarefreeness of a homogeneous binary form (variables `x1`, `x2`).
pub fn binary_form_squarefree(f: &MultiPoly) -> Result<SquarefreeReport> {
    let (g, d) = dehomogenize(f)?;
    let deg_g = g.degree().unwrap_or(0) as u32;
    let at_infinity = d - deg_g;
    let common = g.gcd(&g.derivative());
    let reduced = g.div_rem(&common).0;
    let red_deg = reduced.degree().unwrap_or(0) as u32;
    let mut part = homogenize(&reduced, red_deg);
    if at_infinity > 0 {
        part = &part * &MultiPoly::var(2, 1);
    }
    Ok(SquarefreeReport {
        squarefree: common.degree() == Some(0) && at_infinity <= 1,
        part: part.monic(),
    })
}

/// Distinct rational projective roots `(l : m)` of a binary form, each
/// normalized to `(r : 1)` or `(1 : 0)`.
pub fn binary_rational_roots(f: &MultiPoly) -> Result<Vec<(Scalar, Scalar)>> {
    let (g, d) = dehomogenize(f)?;
    let mut roots: Vec<(Scalar, Scalar)> = g
        .rational_roots()
        .into_iter()
        .map(|r| (r, Scalar::one()))
        .collect();
    if g.degree().unwrap_or(0) < d as usize {
        roots.push((Scalar::one(), Scalar::zero()));
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn bf(s: &str) -> MultiPoly {
        MultiPoly::parse(s, 2).unwrap()
    }

    fn product(factors: &[&str]) -> MultiPoly {
        factors
            .iter()
            .fold(MultiPoly::one(2), |acc, f| &acc * &bf(f))
    }

    #[test]
    fn distinct_linear_factors() {
        let f = product(&["x1", "x2", "x1+x2", "x1+2*x2"]);
        let r = binary_form_squarefree(&f).unwrap();
        assert!(r.squarefree);
        assert_eq!(r.part, f.monic());
    }

    #[test]
    fn double_roots_at_zero_and_infinity() {
        let r = binary_form_squarefree(&bf("x1^2*x2^2")).unwrap();
        assert!(!r.squarefree);
        assert_eq!(r.part, bf("x1*x2"));
    }

    #[test]
    fn diagonal_pencil_determinant() {
        let f = product(&["x1+x2", "x1+2*x2", "x1+3*x2", "x1+4*x2"]);
        assert!(binary_form_squarefree(&f).unwrap().squarefree);
        let roots = binary_rational_roots(&f).unwrap();
        let ls: Vec<Scalar> = roots.iter().map(|r| r.0.clone()).collect();
        assert_eq!(ls, vec![int(-4), int(-3), int(-2), int(-1)]);
    }

    #[test]
    fn zero_form_rejected() {
        assert_eq!(
            binary_form_squarefree(&MultiPoly::zero(2)),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn irreducible_quartic_has_no_rational_roots() {
        let f = bf("x1^4+x2^4");
        assert!(binary_rational_roots(&f).unwrap().is_empty());
        assert!(binary_form_squarefree(&f).unwrap().squarefree);
    }

    #[test]
    fn rational_roots_with_denominators() {
        // (2t - 3)(3t + 1) t
        let g = UniPoly::new(vec![int(0), int(-3), int(-7), int(6)]);
        assert_eq!(
            g.rational_roots(),
            vec![
                Scalar::new((-1).into(), 3.into()),
                int(0),
                Scalar::new(3.into(), 2.into())
            ]
        );
    }

    #[test]
    fn univariate_gcd() {
        // (t-1)^2 (t+2) and its derivative share (t-1)
        let g = UniPoly::new(vec![int(2), int(-3), int(0), int(1)]);
        assert_eq!(g.gcd(&g.derivative()), UniPoly::new(vec![int(-1), int(1)]));
    }
}
