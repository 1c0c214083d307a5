//! Pencils of quadrics in four variables and the compatibility criterion
//! for collections of their brackets.
//!
//! A pencil `<Q1, Q2>` is a line in the 9-dimensional projective space of
//! quadrics. Two brackets are compatible iff their lines meet, i.e. iff the
//! four quadrics span a space of dimension at most 3. A family of pairwise
//! meeting lines either passes through one point (a shared quadric) or lies
//! in one plane (a 3-dimensional space `W` of quadrics).

use std::fmt;

use num_traits::Zero;

use crate::algebra::{
    binary_form_squarefree, binary_rational_roots,
    linalg::{null_space, rank, rref},
    monomials_of_degree, poly_determinant, MultiPoly, Scalar,
};
use crate::error::{Error, Result};
use crate::fo::check_quadric;
use crate::polar::ProjPoint;

/// Symmetric matrix `M` with `Q(x) = xᵀ M x`; off-diagonal entries carry
/// half the coefficient of `x_i x_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix(Vec<Vec<Scalar>>);

impl GramMatrix {
    pub fn from_quadric(q: &MultiPoly) -> Result<GramMatrix> {
        let n = q.nvars();
        if !q.is_homogeneous(2) {
            return Err(Error::NotHomogeneous { expected: 2 });
        }
        let half = Scalar::new(1.into(), 2.into());
        let mut m = vec![vec![Scalar::zero(); n]; n];
        for (mono, c) in q.terms() {
            let e = mono.exponents();
            let idx: Vec<usize> = (0..n).filter(|&i| e[i] > 0).collect();
            match idx.as_slice() {
                [i] => m[*i][*i] = c.clone(),
                [i, j] => {
                    m[*i][*j] = c * &half;
                    m[*j][*i] = c * &half;
                }
                _ => unreachable!("degree-2 monomial"),
            }
        }
        Ok(GramMatrix(m))
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `B(u, v) = uᵀ M v`.
    pub fn bilinear(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        let mv = self.apply(v);
        u.iter().zip(&mv).map(|(a, b)| a * b).sum()
    }

    /// `M v`.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        crate::algebra::linalg::mat_vec(&self.0, v)
    }

    pub fn to_quadric(&self) -> MultiPoly {
        let n = self.dim();
        let mut q = MultiPoly::zero(n);
        for i in 0..n {
            for j in 0..n {
                let t = &MultiPoly::var(n, i) * &MultiPoly::var(n, j);
                q += &t.scale(&self.0[i][j]);
            }
        }
        q
    }

    /// Entries as linear forms `l·M_a + m·M_b` in two variables.
    fn combine(a: &GramMatrix, b: &GramMatrix) -> Vec<Vec<MultiPoly>> {
        let (l, m) = (MultiPoly::var(2, 0), MultiPoly::var(2, 1));
        a.0.iter()
            .zip(&b.0)
            .map(|(ra, rb)| {
                ra.iter()
                    .zip(rb)
                    .map(|(x, y)| &l.scale(x) + &m.scale(y))
                    .collect()
            })
            .collect()
    }

    fn combination(a: &GramMatrix, b: &GramMatrix, l: &Scalar, m: &Scalar) -> Vec<Vec<Scalar>> {
        a.0.iter()
            .zip(&b.0)
            .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| l * x + m * y).collect())
            .collect()
    }
}

pub(crate) fn quadric_coefficients(q: &MultiPoly) -> Vec<Scalar> {
    q.coefficients_in(&monomials_of_degree(4, 2))
}

fn quadric_from_coefficients(c: &[Scalar]) -> MultiPoly {
    MultiPoly::from_coefficients(&monomials_of_degree(4, 2), c)
}

/// Ordered basis `(Q1, Q2)` of a pencil, with Gram matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricPencil {
    q1: MultiPoly,
    q2: MultiPoly,
    m1: GramMatrix,
    m2: GramMatrix,
}

impl QuadricPencil {
    pub fn new(q1: MultiPoly, q2: MultiPoly) -> Result<QuadricPencil> {
        check_quadric(&q1)?;
        check_quadric(&q2)?;
        if rank(&[quadric_coefficients(&q1), quadric_coefficients(&q2)]) < 2 {
            return Err(Error::DependentQuadrics);
        }
        let m1 = GramMatrix::from_quadric(&q1)?;
        let m2 = GramMatrix::from_quadric(&q2)?;
        Ok(QuadricPencil { q1, q2, m1, m2 })
    }

    pub fn q1(&self) -> &MultiPoly {
        &self.q1
    }

    pub fn q2(&self) -> &MultiPoly {
        &self.q2
    }

    pub fn grams(&self) -> (&GramMatrix, &GramMatrix) {
        (&self.m1, &self.m2)
    }

    pub fn quadrics(&self) -> [&MultiPoly; 2] {
        [&self.q1, &self.q2]
    }

    /// `l·Q1 + m·Q2`.
    pub fn member(&self, l: &Scalar, m: &Scalar) -> MultiPoly {
        &self.q1.scale(l) + &self.q2.scale(m)
    }

    /// True when `q` lies in the span of the pencil.
    pub fn contains(&self, q: &MultiPoly) -> bool {
        rank(&[
            quadric_coefficients(&self.q1),
            quadric_coefficients(&self.q2),
            quadric_coefficients(q),
        ]) == 2
    }

    /// Binary quartic `det(l·M1 + m·M2)` in the variables `x1 = l`, `x2 = m`.
    pub fn discriminant_form(&self) -> MultiPoly {
        poly_determinant(&GramMatrix::combine(&self.m1, &self.m2), 2)
    }

    /// A pencil is generic (smooth base curve) iff its discriminant is a
    /// nonzero binary quartic with four distinct projective roots.
    pub fn genericity(&self) -> Genericity {
        let disc = self.discriminant_form();
        if disc.is_zero() {
            return Genericity::ZeroDiscriminant;
        }
        let report = binary_form_squarefree(&disc).expect("nonzero binary quartic");
        if report.squarefree {
            Genericity::Generic
        } else {
            Genericity::RepeatedRoot {
                squarefree_part: report.part,
            }
        }
    }

    pub fn is_generic(&self) -> bool {
        self.genericity() == Genericity::Generic
    }

    /// Singular members with rational parameters and their vertices; the
    /// remaining members are only counted, with the discriminant as the
    /// exact certificate.
    pub fn rational_singular_members(&self) -> Result<SingularMembers> {
        let diag = self.genericity();
        if diag != Genericity::Generic {
            return Err(Error::NonGenericPencil(diag.to_string()));
        }
        let discriminant = self.discriminant_form();
        let mut members = Vec::new();
        for (l, m) in binary_rational_roots(&discriminant)? {
            let comb = GramMatrix::combination(&self.m1, &self.m2, &l, &m);
            let kernel = null_space(&comb, 4);
            if kernel.len() != 1 {
                return Err(Error::Inconsistent(format!(
                    "singular member ({l}:{m}) has a {}-dimensional kernel",
                    kernel.len()
                )));
            }
            let vertex = ProjPoint::new(kernel.into_iter().next().unwrap())?;
            members.push(SingularMember {
                lambda: l,
                mu: m,
                vertex,
            });
        }
        let irrational_count = 4 - members.len();
        Ok(SingularMembers {
            members,
            irrational_count,
            discriminant,
        })
    }
}

impl fmt::Display for QuadricPencil {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.q1, self.q2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Genericity {
    Generic,
    ZeroDiscriminant,
    RepeatedRoot { squarefree_part: MultiPoly },
}

impl fmt::Display for Genericity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Genericity::Generic => write!(f, "generic: discriminant has four distinct roots"),
            Genericity::ZeroDiscriminant => write!(f, "discriminant vanishes identically"),
            Genericity::RepeatedRoot { squarefree_part } => write!(
                f,
                "discriminant has a repeated root (squarefree part {squarefree_part})"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularMember {
    pub lambda: Scalar,
    pub mu: Scalar,
    pub vertex: ProjPoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularMembers {
    pub members: Vec<SingularMember>,
    pub irrational_count: usize,
    pub discriminant: MultiPoly,
}

/// Dimension of the span of a list of quadrics in the 10-dimensional space
/// of quadratic forms.
pub fn span_rank(quadrics: &[&MultiPoly]) -> Result<usize> {
    for q in quadrics {
        check_quadric(q)?;
    }
    let rows: Vec<Vec<Scalar>> = quadrics.iter().map(|q| quadric_coefficients(q)).collect();
    Ok(rank(&rows))
}

pub fn pairwise_compatible(a: &QuadricPencil, b: &QuadricPencil) -> bool {
    span_rank(&[&a.q1, &a.q2, &b.q1, &b.q2]).expect("validated quadrics") <= 3
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// Every pencil contains `shared`.
    Concurrent { shared: MultiPoly },
    /// Every pencil lies in the 3-dimensional span of `basis`.
    Coplanar { basis: Vec<MultiPoly> },
    /// Pencils `witness.0` and `witness.1` (0-based) do not meet.
    Incompatible { witness: (usize, usize) },
}

impl Classification {
    pub fn name(&self) -> &'static str {
        match self {
            Classification::Concurrent { .. } => "concurrent",
            Classification::Coplanar { .. } => "coplanar",
            Classification::Incompatible { .. } => "incompatible",
        }
    }

    pub fn is_compatible(&self) -> bool {
        !matches!(self, Classification::Incompatible { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollectionClassification {
    pub kind: Classification,
    /// Indices of input pencils failing the genericity test. When nonempty
    /// the result is a linear-algebra classification only: the equivalence
    /// with compatibility of brackets is only known for smooth base curves.
    pub non_generic: Vec<usize>,
}

impl CollectionClassification {
    pub fn curve_semantics(&self) -> bool {
        self.non_generic.is_empty()
    }
}

/// Row-reduced basis of the span of coefficient vectors.
fn span_basis(vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let mut m = vectors.to_vec();
    let pivots = rref(&mut m, 10);
    m.truncate(pivots.len());
    m
}

/// Intersection of two subspaces given by spanning sets.
fn intersect(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // columns a_1..a_r, -b_1..-b_s
    let cols = a.len() + b.len();
    let rows: Vec<Vec<Scalar>> = (0..10)
        .map(|r| {
            a.iter()
                .map(|v| v[r].clone())
                .chain(b.iter().map(|v| -v[r].clone()))
                .collect()
        })
        .collect();
    let kernel = null_space(&rows, cols);
    let vectors: Vec<Vec<Scalar>> = kernel
        .iter()
        .map(|k| {
            (0..10)
                .map(|r| a.iter().zip(k).map(|(v, c)| &v[r] * c).sum())
                .collect()
        })
        .collect();
    span_basis(&vectors)
}

pub fn classify_collection(pencils: &[QuadricPencil]) -> Result<CollectionClassification> {
    if pencils.len() < 2 {
        return Err(Error::TooFewPencils {
            needed: 2,
            got: pencils.len(),
        });
    }
    let non_generic: Vec<usize> = pencils
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_generic())
        .map(|(i, _)| i)
        .collect();
    for i in 0..pencils.len() {
        for j in i + 1..pencils.len() {
            if !pairwise_compatible(&pencils[i], &pencils[j]) {
                return Ok(CollectionClassification {
                    kind: Classification::Incompatible { witness: (i, j) },
                    non_generic,
                });
            }
        }
    }
    let spans: Vec<Vec<Vec<Scalar>>> = pencils
        .iter()
        .map(|p| vec![quadric_coefficients(&p.q1), quadric_coefficients(&p.q2)])
        .collect();
    let common = spans[1..]
        .iter()
        .fold(span_basis(&spans[0]), |acc, s| intersect(&acc, s));
    if let Some(v) = common.first() {
        let shared = quadric_from_coefficients(v).monic();
        if !pencils.iter().all(|p| p.contains(&shared)) {
            return Err(Error::Inconsistent(
                "shared quadric not in every pencil".into(),
            ));
        }
        return Ok(CollectionClassification {
            kind: Classification::Concurrent { shared },
            non_generic,
        });
    }
    let all: Vec<Vec<Scalar>> = spans.concat();
    let w = span_basis(&all);
    if w.len() <= 3 {
        return Ok(CollectionClassification {
            kind: Classification::Coplanar {
                basis: w.iter().map(|v| quadric_from_coefficients(v)).collect(),
            },
            non_generic,
        });
    }
    Err(Error::Inconsistent(
        "pairwise meeting pencils are neither concurrent nor coplanar".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn q(s: &str) -> MultiPoly {
        MultiPoly::parse(s, 4).unwrap()
    }

    fn pencil(a: &str, b: &str) -> QuadricPencil {
        QuadricPencil::new(q(a), q(b)).unwrap()
    }

    fn bf(s: &str) -> MultiPoly {
        MultiPoly::parse(s, 2).unwrap()
    }

    const SUM: &str = "x1^2+x2^2+x3^2+x4^2";
    const DIAG: &str = "x1^2+2*x2^2+3*x3^2+4*x4^2";

    #[test]
    fn gram_matrix_halves_off_diagonal() {
        let m = GramMatrix::from_quadric(&q("x1*x2+3*x3^2")).unwrap();
        assert_eq!(m.rows()[0][1], Scalar::new(1.into(), 2.into()));
        assert_eq!(m.rows()[2][2], int(3));
        assert_eq!(m.to_quadric(), q("x1*x2+3*x3^2"));
    }

    #[test]
    fn rejects_dependent_basis() {
        assert_eq!(
            QuadricPencil::new(q("x1^2"), q("2*x1^2")),
            Err(Error::DependentQuadrics)
        );
    }

    #[test]
    fn diagonal_discriminant() {
        let d = pencil(SUM, DIAG).discriminant_form();
        let expected = ["x1+x2", "x1+2*x2", "x1+3*x2", "x1+4*x2"]
            .iter()
            .fold(MultiPoly::one(2), |acc, f| &acc * &bf(f));
        assert_eq!(d, expected);
    }

    #[test]
    fn degenerate_pencil_has_zero_discriminant() {
        let p = pencil("x1^2", "x1*x2");
        assert!(p.discriminant_form().is_zero());
        assert_eq!(p.genericity(), Genericity::ZeroDiscriminant);
    }

    #[test]
    fn identity_second_member_gives_characteristic_polynomial() {
        // det(l M1 + m I) with M1 = diag(2, -1, 5, 0)
        let p = pencil("2*x1^2-x2^2+5*x3^2", SUM);
        let expected = ["2*x1+x2", "-x1+x2", "5*x1+x2", "x2"]
            .iter()
            .fold(MultiPoly::one(2), |acc, f| &acc * &bf(f));
        assert_eq!(p.discriminant_form(), expected);
    }

    #[test]
    fn genericity_cases() {
        assert!(pencil(SUM, DIAG).is_generic());
        assert!(!pencil("x1^2", "x1*x2").is_generic());
        let rep = pencil(SUM, "x1^2+x2^2+2*x3^2+2*x4^2").genericity();
        assert_eq!(
            rep,
            Genericity::RepeatedRoot {
                squarefree_part: bf("x1^2+3*x1*x2+2*x2^2")
            }
        );
    }

    #[test]
    fn diagonal_vertices_are_coordinate_points() {
        let sm = pencil(SUM, DIAG).rational_singular_members().unwrap();
        assert_eq!(sm.irrational_count, 0);
        assert_eq!(sm.members.len(), 4);
        for m in &sm.members {
            // root (-a_i : 1) has vertex e_i
            let i = (-m.lambda.clone())
                .to_integer()
                .try_into()
                .map(|a: i64| a as usize - 1)
                .unwrap();
            let mut e = vec![int(0); 4];
            e[i] = int(1);
            assert_eq!(m.vertex, ProjPoint::new(e).unwrap());
            assert_eq!(m.mu, int(1));
        }
    }

    #[test]
    fn irrational_singular_members_are_counted() {
        // discriminant (l^2 + l m - m^2)(l + 3m)(l + 4m)
        let p = pencil(SUM, "2*x1*x2+x2^2+3*x3^2+4*x4^2");
        let sm = p.rational_singular_members().unwrap();
        assert_eq!(sm.members.len(), 2);
        assert_eq!(sm.irrational_count, 2);
        let mut lambdas: Vec<Scalar> = sm.members.iter().map(|m| m.lambda.clone()).collect();
        lambdas.sort();
        assert_eq!(lambdas, vec![int(-4), int(-3)]);
    }

    #[test]
    fn non_generic_members_rejected() {
        assert!(matches!(
            pencil("x1^2", "x1*x2").rational_singular_members(),
            Err(Error::NonGenericPencil(_))
        ));
    }

    #[test]
    fn span_ranks() {
        let qs: Vec<MultiPoly> = ["x1^2", "x1*x2", "x1*x3", "x1*x4"]
            .iter()
            .map(|s| q(s))
            .collect();
        assert_eq!(span_rank(&qs.iter().collect::<Vec<_>>()).unwrap(), 4);
        let (a, b, c) = (q(SUM), q(DIAG), q("x1*x3"));
        assert_eq!(span_rank(&[&a, &b, &a, &c]).unwrap(), 3);
        let v: Vec<MultiPoly> = [
            "x1^2+x2^2+x3^2+x4^2",
            "x1^2+2*x2^2+3*x3^2+4*x4^2",
            "x1^2+4*x2^2+9*x3^2+16*x4^2",
            "x1^2+8*x2^2+27*x3^2+64*x4^2",
        ]
        .iter()
        .map(|s| q(s))
        .collect();
        assert_eq!(span_rank(&v.iter().collect::<Vec<_>>()).unwrap(), 4);
    }

    #[test]
    fn pairwise_examples() {
        assert!(pairwise_compatible(
            &pencil(SUM, DIAG),
            &pencil(SUM, "x1*x2")
        ));
        assert!(!pairwise_compatible(
            &pencil("x1^2", "x1*x2"),
            &pencil("x1*x3", "x1*x4")
        ));
    }

    #[test]
    fn classify_concurrent() {
        let ps = [
            pencil(SUM, "x1*x2"),
            pencil(SUM, "x3*x4"),
            pencil(SUM, "x1*x4"),
        ];
        let c = classify_collection(&ps).unwrap();
        assert_eq!(c.kind, Classification::Concurrent { shared: q(SUM) });
    }

    #[test]
    fn classify_coplanar() {
        let ps = [
            pencil("x1^2+x2^2", "x2^2+x3^2"),
            pencil("x1^2-x3^2", "x1^2+2*x2^2+3*x3^2"),
            pencil("x1^2+5*x2^2", "2*x2^2-7*x3^2"),
        ];
        let c = classify_collection(&ps).unwrap();
        assert_eq!(c.kind.name(), "coplanar");
        let Classification::Coplanar { basis } = &c.kind else {
            unreachable!()
        };
        assert_eq!(basis.len(), 3);
        for p in &ps {
            for member in p.quadrics() {
                let mut all: Vec<&MultiPoly> = basis.iter().collect();
                all.push(member);
                assert_eq!(span_rank(&all).unwrap(), 3);
            }
        }
        // the planes in W are degenerate pencils (diagonal in three variables)
        assert!(!c.curve_semantics());
    }

    #[test]
    fn classify_incompatible_and_errors() {
        let ps = [pencil("x1^2", "x1*x2"), pencil("x1*x3", "x1*x4")];
        let c = classify_collection(&ps).unwrap();
        assert_eq!(c.kind, Classification::Incompatible { witness: (0, 1) });
        assert!(matches!(
            classify_collection(&ps[..1]),
            Err(Error::TooFewPencils { .. })
        ));
    }
}
