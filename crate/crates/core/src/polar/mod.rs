//! Points, lines and polars in P³.
//!
//! The polar plane of `p` with respect to a quadric `Q = xᵀMx` is the linear
//! form `x ↦ B_Q(p, x) = pᵀMx`, with `M` the Gram matrix (halved
//! off-diagonal). The polar line of `p` with respect to a pencil is the
//! intersection of the polar planes of two basis quadrics.
//!
//! Because each row of the matrix defining [`intersection_quartic`] is half a
//! gradient, that quartic equals `phi_quartic / 16` identically.

mod harmonic;

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::{
    linalg::{mat_vec, null_space, rank},
    poly_determinant, MultiPoly, Scalar,
};
use crate::error::{Error, Result};
use crate::fo::check_quadric;
use crate::pencil::{GramMatrix, QuadricPencil};

pub use harmonic::{
    cross_ratio, harmonic_check, HarmonicLine, HarmonicOutcome, HarmonicReport, DEGENERACY_FLOOR,
};

/// Rational point of P³, normalized so the first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPoint(Vec<Scalar>);

impl ProjPoint {
    pub fn new(coords: Vec<Scalar>) -> Result<ProjPoint> {
        if coords.len() != 4 {
            return Err(Error::LengthMismatch {
                expected: 4,
                got: coords.len(),
            });
        }
        let lead = coords
            .iter()
            .find(|c| !c.is_zero())
            .cloned()
            .ok_or(Error::ZeroPoint)?;
        Ok(ProjPoint(coords.into_iter().map(|c| c / &lead).collect()))
    }

    pub fn from_ints(coords: [i64; 4]) -> Result<ProjPoint> {
        ProjPoint::new(
            coords
                .iter()
                .map(|&c| Scalar::from_integer(c.into()))
                .collect(),
        )
    }

    /// Parses `"a,b,c,d"` with integer or `p/q` entries.
    pub fn parse(s: &str) -> Result<ProjPoint> {
        let mut coords = Vec::new();
        let mut pos = 0;
        for part in s.split(',') {
            let t = part.trim();
            let value = t.parse::<Scalar>().map_err(|_| Error::Parse {
                pos,
                msg: format!("invalid coordinate '{t}'"),
            })?;
            coords.push(value);
            pos += part.len() + 1;
        }
        ProjPoint::new(coords)
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    /// Index of the coordinate of largest absolute value; smallest index on ties.
    pub fn largest_coordinate(&self) -> usize {
        let mut best = 0;
        for (i, c) in self.0.iter().enumerate() {
            if c.abs() > self.0[best].abs() {
                best = i;
            }
        }
        best
    }

    pub fn to_f64(&self) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (o, c) in out.iter_mut().zip(&self.0) {
            *o = crate::algebra::scalar_to_f64(c);
        }
        out
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(":"))
    }
}

/// Linear form `Σ c_i x_i` on 4-space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm(Vec<Scalar>);

impl LinearForm {
    pub fn new(coeffs: Vec<Scalar>) -> Result<LinearForm> {
        if coeffs.len() != 4 {
            return Err(Error::LengthMismatch {
                expected: 4,
                got: coeffs.len(),
            });
        }
        Ok(LinearForm(coeffs))
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        self.0.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn to_poly(&self) -> MultiPoly {
        self.0
            .iter()
            .enumerate()
            .fold(MultiPoly::zero(4), |acc, (i, c)| {
                &acc + &MultiPoly::var(4, i).scale(c)
            })
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// Line in P³ as the common zero locus of two independent linear forms.
#[derive(Clone, Debug)]
pub struct ProjLine {
    forms: [LinearForm; 2],
}

impl ProjLine {
    pub fn new(a: LinearForm, b: LinearForm) -> Result<ProjLine> {
        if rank(&[a.0.clone(), b.0.clone()]) < 2 {
            return Err(Error::DegeneratePoint {
                cause: "defining forms of the line are dependent".into(),
            });
        }
        Ok(ProjLine { forms: [a, b] })
    }

    pub fn forms(&self) -> &[LinearForm; 2] {
        &self.forms
    }

    /// Dual Plücker coordinates `p_ij = a_i b_j − a_j b_i`, ordered
    /// `(12, 13, 14, 23, 24, 34)`.
    pub fn plucker(&self) -> [Scalar; 6] {
        let (a, b) = (&self.forms[0].0, &self.forms[1].0);
        let p = |i: usize, j: usize| &a[i] * &b[j] - &a[j] * &b[i];
        [p(0, 1), p(0, 2), p(0, 3), p(1, 2), p(1, 3), p(2, 3)]
    }

    /// `p12 p34 − p13 p24 + p14 p23`; zero for every line.
    pub fn plucker_relation(&self) -> Scalar {
        let p = self.plucker();
        &p[0] * &p[5] - &p[1] * &p[4] + &p[2] * &p[3]
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.forms.iter().all(|f| f.eval(p.coords()).is_zero())
    }

    fn stacked(&self, other: &ProjLine) -> Vec<Vec<Scalar>> {
        self.forms
            .iter()
            .chain(other.forms.iter())
            .map(|f| f.0.clone())
            .collect()
    }

    /// Two lines meet iff their four forms are dependent.
    pub fn meets(&self, other: &ProjLine) -> bool {
        rank(&self.stacked(other)) <= 3
    }

    pub fn same_line(&self, other: &ProjLine) -> bool {
        rank(&self.stacked(other)) == 2
    }

    /// The unique common point of two distinct meeting lines.
    pub fn intersection_point(&self, other: &ProjLine) -> Option<ProjPoint> {
        let kernel = null_space(&self.stacked(other), 4);
        if kernel.len() != 1 {
            return None;
        }
        ProjPoint::new(kernel.into_iter().next().unwrap()).ok()
    }
}

impl PartialEq for ProjLine {
    fn eq(&self, other: &ProjLine) -> bool {
        self.same_line(other)
    }
}

impl Eq for ProjLine {}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{} = 0, {} = 0}}", self.forms[0], self.forms[1])
    }
}

fn polar_form(m: &GramMatrix, p: &ProjPoint) -> LinearForm {
    LinearForm(m.apply(p.coords()))
}

/// `x ↦ B_Q(p, x) = ½ Σ ∂_iQ(p) x_i`.
pub fn polar_plane(q: &MultiPoly, p: &ProjPoint) -> Result<LinearForm> {
    check_quadric(q)?;
    let form = polar_form(&GramMatrix::from_quadric(q)?, p);
    if form.is_zero() {
        return Err(Error::VertexPoint {
            quadric: q.to_string(),
        });
    }
    Ok(form)
}

/// Intersection of the polar planes of `p` for the two basis quadrics.
pub fn polar_line(pencil: &QuadricPencil, p: &ProjPoint) -> Result<ProjLine> {
    let (m1, m2) = pencil.grams();
    let (a, b) = (polar_form(m1, p), polar_form(m2, p));
    if rank(&[a.0.clone(), b.0.clone()]) == 2 {
        return Ok(ProjLine { forms: [a, b] });
    }
    // some member l·M1 + m·M2 kills p
    let (l, m) = if a.is_zero() {
        (Scalar::one(), Scalar::zero())
    } else if b.is_zero() {
        (Scalar::zero(), Scalar::one())
    } else {
        let i = a.0.iter().position(|c| !c.is_zero()).unwrap();
        (-(&b.0[i] / &a.0[i]), Scalar::one())
    };
    Err(Error::DegeneratePoint {
        cause: format!(
            "{p} is the vertex of the member ({l}:{m}) = {}, so its polar planes coincide",
            pencil.member(&l, &m)
        ),
    })
}

/// `det` of the four polar forms `B_{Q}(x, ·)` as polynomials in `x`.
///
/// Equal to `phi_quartic(Qa1, Qa2, Qb1, Qb2) / 16`: each row is half a
/// gradient.
pub fn intersection_quartic(a: &QuadricPencil, b: &QuadricPencil) -> MultiPoly {
    let xs: Vec<MultiPoly> = (0..4).map(|i| MultiPoly::var(4, i)).collect();
    let rows: Vec<Vec<MultiPoly>> = [a.grams().0, a.grams().1, b.grams().0, b.grams().1]
        .iter()
        .map(|m| {
            m.rows()
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(&xs)
                        .fold(MultiPoly::zero(4), |acc, (c, x)| &acc + &x.scale(c))
                })
                .collect()
        })
        .collect();
    poly_determinant(&rows, 4)
}

/// The plane `B_Q(p, ·)` evaluated numerically from exact data; used by the
/// harmonic check.
pub(crate) fn polar_rows_f64(pencil: &QuadricPencil, p: &ProjPoint) -> [[f64; 4]; 2] {
    let (m1, m2) = pencil.grams();
    let to = |v: Vec<Scalar>| {
        let mut o = [0.0; 4];
        for (x, c) in o.iter_mut().zip(&v) {
            *x = crate::algebra::scalar_to_f64(c);
        }
        o
    };
    [
        to(mat_vec(m1.rows(), p.coords())),
        to(mat_vec(m2.rows(), p.coords())),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{frac, int};
    use crate::fo::phi_quartic;

    fn q(s: &str) -> MultiPoly {
        MultiPoly::parse(s, 4).unwrap()
    }

    fn pt(c: [i64; 4]) -> ProjPoint {
        ProjPoint::from_ints(c).unwrap()
    }

    fn form(s: &str) -> LinearForm {
        let p = q(s);
        LinearForm(
            (0..4)
                .map(|i| p.coeff(&crate::algebra::Monomial::var(4, i)))
                .collect(),
        )
    }

    const SUM: &str = "x1^2+x2^2+x3^2+x4^2";
    const DIAG: &str = "x1^2+2*x2^2+3*x3^2+4*x4^2";

    #[test]
    fn point_normalization() {
        let p = ProjPoint::from_ints([0, 2, -4, 6]).unwrap();
        assert_eq!(p.coords(), &[int(0), int(1), int(-2), int(3)]);
        assert_eq!(p, pt([0, -1, 2, -3]));
        assert_eq!(ProjPoint::from_ints([0, 0, 0, 0]), Err(Error::ZeroPoint));
        assert_eq!(p.largest_coordinate(), 3);
        assert_eq!(pt([1, -1, 1, 0]).largest_coordinate(), 0);
    }

    #[test]
    fn point_parsing() {
        let p = ProjPoint::parse("2, 1/2, 0, -1").unwrap();
        assert_eq!(p.coords(), &[int(1), frac(1, 4), int(0), frac(-1, 2)]);
        assert!(matches!(
            ProjPoint::parse("1,2,x,4"),
            Err(Error::Parse { pos: 4, .. })
        ));
        assert!(matches!(
            ProjPoint::parse("1,2,3"),
            Err(Error::LengthMismatch { .. })
        ));
        assert_eq!(p.to_string(), "(1:1/4:0:-1/2)");
    }

    #[test]
    fn polar_plane_examples() {
        assert_eq!(
            polar_plane(&q(SUM), &pt([1, 1, 1, 1])).unwrap(),
            form("x1+x2+x3+x4")
        );
        assert!(matches!(
            polar_plane(&q("x1^2"), &pt([0, 1, 0, 0])),
            Err(Error::VertexPoint { .. })
        ));
        let half = polar_plane(&q("x1*x2"), &pt([1, 0, 0, 0])).unwrap();
        assert_eq!(half.coeffs(), &[int(0), frac(1, 2), int(0), int(0)]);
    }

    #[test]
    fn polar_line_examples() {
        let pencil = QuadricPencil::new(q(SUM), q(DIAG)).unwrap();
        let line = polar_line(&pencil, &pt([1, 1, 1, 1])).unwrap();
        assert_eq!(line.forms()[0], form("x1+x2+x3+x4"));
        assert_eq!(line.forms()[1], form("x1+2*x2+3*x3+4*x4"));

        let changed = QuadricPencil::new(&q(SUM) + &q(DIAG), q(DIAG)).unwrap();
        assert_eq!(polar_line(&changed, &pt([1, 1, 1, 1])).unwrap(), line);

        match polar_line(&pencil, &pt([1, 0, 0, 0])) {
            Err(Error::DegeneratePoint { cause }) => assert!(cause.contains("(-1:1)"), "{cause}"),
            other => panic!("expected degenerate point, got {other:?}"),
        }
    }

    #[test]
    fn plucker_coordinates() {
        let line = ProjLine::new(form("x1+x2+x3+x4"), form("x1+2*x2+3*x3+4*x4")).unwrap();
        assert!(line.plucker_relation().is_zero());
        assert_eq!(line.plucker()[0], int(1));
        assert!(ProjLine::new(form("x1"), form("2*x1")).is_err());
    }

    #[test]
    fn line_incidence() {
        let l1 = ProjLine::new(form("x3"), form("x4")).unwrap();
        let l2 = ProjLine::new(form("x2"), form("x4")).unwrap();
        let l3 = ProjLine::new(form("x1"), form("x2")).unwrap();
        assert!(l1.meets(&l2));
        assert_eq!(l1.intersection_point(&l2), Some(pt([1, 0, 0, 0])));
        assert!(!l1.meets(&l3));
        assert!(l1.contains(&pt([3, 5, 0, 0])));
        assert!(l1.meets(&l1) && l1.intersection_point(&l1).is_none());
    }

    #[test]
    fn intersection_quartic_golden() {
        let a = QuadricPencil::new(q("x1^2"), q("x1*x2")).unwrap();
        let b = QuadricPencil::new(q("x1*x3"), q("x1*x4")).unwrap();
        let iq = intersection_quartic(&a, &b);
        assert_eq!(iq, q("1/8*x1^4"));
        let phi = phi_quartic([a.q1(), a.q2(), b.q1(), b.q2()]).unwrap();
        assert_eq!(phi.scale(&frac(1, 16)), iq);
        assert!(intersection_quartic(&a, &a).is_zero());
    }
}
