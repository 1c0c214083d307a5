//! Jacobian Poisson bivectors of pairs of quadrics in four variables.
//!
//! For quadrics `Q1, Q2` the bracket
//! `{l1, l2} = dl1 ∧ dl2 ∧ dQ1 ∧ dQ2 / vol` is quadratic, Poisson on 4-space,
//! and descends to P³, where it is the Feigin–Odesskii bracket of the
//! elliptic curve `Q1 = Q2 = 0` (normalized by the choice of `vol`).

use num_traits::{One, Zero};

use crate::algebra::{
    linalg::{rank, solve_linear},
    monomials_of_degree, poly_determinant, Monomial, MultiPoly, Scalar,
};
use crate::error::{Error, Result};
use crate::multivector::{
    increasing_tuples, quartic_from_trivector, sort_with_sign, Multivector, VolumeForm,
};
use crate::polar::ProjPoint;

pub(crate) fn check_quadric(q: &MultiPoly) -> Result<()> {
    if q.nvars() != 4 {
        return Err(Error::NvarsMismatch {
            left: 4,
            right: q.nvars(),
        });
    }
    if !q.is_homogeneous(2) {
        return Err(Error::NotHomogeneous { expected: 2 });
    }
    Ok(())
}

/// Bivector attached to an ordered pair of quadrics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FOBivector {
    pub q1: MultiPoly,
    pub q2: MultiPoly,
    pub pi: Multivector,
}

/// `π_ij` is the coefficient of `vol` in `dx_i ∧ dx_j ∧ dQ1 ∧ dQ2`, i.e. the
/// complementary Jacobian minor `∂(Q1,Q2)/∂(x_k,x_l)` times the sign of the
/// permutation `(i, j, k, l)`.
pub fn fo_bivector(q1: &MultiPoly, q2: &MultiPoly) -> Result<FOBivector> {
    check_quadric(q1)?;
    check_quadric(q2)?;
    let g1 = q1.gradient();
    let g2 = q2.gradient();
    let mut terms = Vec::with_capacity(6);
    for ij in increasing_tuples(4, 2) {
        let kl: Vec<usize> = (0..4).filter(|c| !ij.contains(c)).collect();
        let (k, l) = (kl[0], kl[1]);
        let minor = &(&g1[k] * &g2[l]) - &(&g1[l] * &g2[k]);
        let mut perm = vec![ij[0], ij[1], k, l];
        let sign = sort_with_sign(&mut perm).expect("distinct indices");
        terms.push((ij, if sign < 0 { -minor } else { minor }));
    }
    Ok(FOBivector {
        q1: q1.clone(),
        q2: q2.clone(),
        pi: Multivector::from_terms(4, 2, terms),
    })
}

/// `det[∂_j Q_i]`, the quartic of `Q1 ∧ Q2 ∧ Q3 ∧ Q4` against `vol`.
pub fn phi_quartic(qs: [&MultiPoly; 4]) -> Result<MultiPoly> {
    for q in qs {
        check_quadric(q)?;
    }
    let rows: Vec<Vec<MultiPoly>> = qs.iter().map(|q| q.gradient()).collect();
    Ok(poly_determinant(&rows, 4))
}

/// Quartic of `[Π(Q1,Q2), Π(Q3,Q4)]`.
pub fn schouten_quartic(qs: [&MultiPoly; 4]) -> Result<MultiPoly> {
    let t = compatibility_bracket(qs[0], qs[1], qs[2], qs[3])?;
    quartic_from_trivector(&t, &VolumeForm::standard(4))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticIdentityReport {
    pub lhs: MultiPoly,
    pub rhs: MultiPoly,
    pub equal: bool,
}

/// Compares the bracket quartic with `4 · phi_quartic`.
pub fn verify_quartic_identity(qs: [&MultiPoly; 4]) -> Result<QuarticIdentityReport> {
    let lhs = schouten_quartic(qs)?;
    let rhs = phi_quartic(qs)?.scale(&Scalar::from_integer(4.into()));
    let equal = lhs == rhs;
    Ok(QuarticIdentityReport { lhs, rhs, equal })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiReport {
    pub jacobiator: Multivector,
    pub is_poisson: bool,
}

/// `[Π, Π]` for any bivector; zero iff `Π` is Poisson.
pub fn verify_jacobi(pi: &Multivector) -> Result<JacobiReport> {
    if pi.degree() != 2 {
        return Err(Error::WrongMultivectorDegree {
            expected: 2,
            got: pi.degree(),
        });
    }
    let jacobiator = pi.schouten(pi)?;
    let is_poisson = jacobiator.is_zero();
    Ok(JacobiReport {
        jacobiator,
        is_poisson,
    })
}

/// Full trivector `[Π(Qa1,Qa2), Π(Qb1,Qb2)]` on 4-space.
pub fn compatibility_bracket(
    qa1: &MultiPoly,
    qa2: &MultiPoly,
    qb1: &MultiPoly,
    qb2: &MultiPoly,
) -> Result<Multivector> {
    let a = fo_bivector(qa1, qa2)?;
    let b = fo_bivector(qb1, qb2)?;
    a.pi.schouten(&b.pi)
}

/// `c = l1·Q1 + l2·Q2` for one cubic coefficient of `E ∧ Π`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicCertificate {
    /// Component of `E ∧ Π` (0-based, increasing).
    pub indices: Vec<usize>,
    pub cubic: MultiPoly,
    pub l1: MultiPoly,
    pub l2: MultiPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealMembershipCertificate {
    pub q1: MultiPoly,
    pub q2: MultiPoly,
    pub entries: Vec<CubicCertificate>,
}

impl IdealMembershipCertificate {
    /// Re-checks every identity `c = l1 Q1 + l2 Q2` by substitution.
    pub fn verify(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.cubic == &(&e.l1 * &self.q1) + &(&e.l2 * &self.q2))
    }
}

/// Writes each of the four cubic coefficients of `E ∧ Π(Q1,Q2)` as an
/// element of the ideal `(Q1, Q2)` with linear multipliers. This certifies
/// that the bivector vanishes on the base curve as a bivector on P³.
pub fn vanishing_certificate(q1: &MultiPoly, q2: &MultiPoly) -> Result<IdealMembershipCertificate> {
    let fo = fo_bivector(q1, q2)?;
    let ewedge = fo.pi.euler_wedge();
    let cubics = monomials_of_degree(4, 3);
    let cubics = &cubics;
    // columns: x_i Q1 (i = 0..4), then x_i Q2
    let columns: Vec<Vec<Scalar>> = [q1, q2]
        .iter()
        .flat_map(|q| (0..4).map(move |i| (&MultiPoly::var(4, i) * q).coefficients_in(cubics)))
        .collect();
    let rows: Vec<Vec<Scalar>> = (0..cubics.len())
        .map(|r| columns.iter().map(|c| c[r].clone()).collect())
        .collect();
    let mut entries = Vec::with_capacity(4);
    for idx in increasing_tuples(4, 3) {
        let cubic = ewedge.component(&idx);
        let rhs = cubic.coefficients_in(cubics);
        let sol = solve_linear(&rows, &rhs)?;
        let Some(v) = sol.solution else {
            return Err(Error::Inconsistent(format!(
                "cubic {cubic} of component {idx:?} is not in the ideal (Q1, Q2)"
            )));
        };
        let linear = |off: usize| {
            MultiPoly::from_coefficients(
                &(0..4).map(|i| Monomial::var(4, i)).collect::<Vec<_>>(),
                &v[off..off + 4],
            )
        };
        entries.push(CubicCertificate {
            indices: idx,
            cubic,
            l1: linear(0),
            l2: linear(4),
        });
    }
    let cert = IdealMembershipCertificate {
        q1: q1.clone(),
        q2: q2.clone(),
        entries,
    };
    if !cert.verify() {
        return Err(Error::Inconsistent(
            "certificate substitution check failed".into(),
        ));
    }
    Ok(cert)
}

/// Lie algebra on the cotangent space at a zero of an affine bivector,
/// induced by the linear part of the bivector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConormalStructure {
    /// Point in homogeneous coordinates.
    pub point: ProjPoint,
    /// Chart index `k` (0-based): coordinates `y_j = x_j / x_k`.
    pub chart: usize,
    /// `[dz_a, dz_b] = Σ_c structure[a][b][c] dz_c`.
    pub structure: Vec<Vec<Vec<Scalar>>>,
    /// Basis of the conormal plane to the curve, in chart coordinates.
    pub plane: [Vec<Scalar>; 2],
    /// Covector outside the plane used for the `ad` test.
    pub complement: Vec<Scalar>,
    pub constant_part_vanishes: bool,
    pub plane_abelian: bool,
    /// `Some(s)` when `ad(complement)` acts on the plane as `s · id`, `s ≠ 0`.
    pub ad_scalar: Option<Scalar>,
}

impl ConormalStructure {
    pub fn dim(&self) -> usize {
        self.structure.len()
    }

    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for a in 0..n {
            if u[a].is_zero() {
                continue;
            }
            for b in 0..n {
                if v[b].is_zero() {
                    continue;
                }
                let f = &u[a] * &v[b];
                for (o, c) in out.iter_mut().zip(&self.structure[a][b]) {
                    *o += &f * c;
                }
            }
        }
        out
    }

    /// Antisymmetry and Jacobi on basis covectors.
    pub fn is_lie_algebra(&self) -> bool {
        let n = self.dim();
        let e = |i: usize| {
            let mut v = vec![Scalar::zero(); n];
            v[i] = Scalar::one();
            v
        };
        for a in 0..n {
            for b in 0..n {
                let ab = self.bracket(&e(a), &e(b));
                let ba = self.bracket(&e(b), &e(a));
                if ab.iter().zip(&ba).any(|(x, y)| !(x + y).is_zero()) {
                    return false;
                }
                for c in 0..n {
                    let t1 = self.bracket(&e(a), &self.bracket(&e(b), &e(c)));
                    let t2 = self.bracket(&e(b), &self.bracket(&e(c), &e(a)));
                    let t3 = self.bracket(&e(c), &self.bracket(&e(a), &e(b)));
                    if (0..n).any(|i| !(&t1[i] + &t2[i] + &t3[i]).is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn all_flags(&self) -> bool {
        self.constant_part_vanishes && self.plane_abelian && self.ad_scalar.is_some()
    }
}

/// Linearizes an affine bivector at `origin` and tests the plane spanned by
/// `plane` for the structure `abelian plane + ad(y) = s·id`.
pub fn conormal_from_affine(
    pi: &Multivector,
    origin: &[Scalar],
    plane: [Vec<Scalar>; 2],
    point: ProjPoint,
    chart: usize,
) -> Result<ConormalStructure> {
    let n = pi.nvars();
    if origin.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: origin.len(),
        });
    }
    let shift: Vec<MultiPoly> = (0..n)
        .map(|j| &MultiPoly::var(n, j) + &MultiPoly::constant(n, origin[j].clone()))
        .collect();
    let moved = pi.map_coefficients(n, |c| c.compose(&shift).expect("shift images"));
    let constant_part_vanishes = moved.components().all(|(_, c)| c.constant_term().is_zero());

    let mut structure = vec![vec![vec![Scalar::zero(); n]; n]; n];
    for (idx, c) in moved.components() {
        let (a, b) = (idx[0], idx[1]);
        for k in 0..n {
            let lin = c.coeff(&Monomial::var(n, k));
            structure[a][b][k] = lin.clone();
            structure[b][a][k] = -lin;
        }
    }

    let mut cs = ConormalStructure {
        point,
        chart,
        structure,
        plane: plane.clone(),
        complement: Vec::new(),
        constant_part_vanishes,
        plane_abelian: false,
        ad_scalar: None,
    };
    let [u, v] = &plane;
    cs.plane_abelian = cs.bracket(u, v).iter().all(Zero::is_zero);

    let complement = (0..n)
        .map(|i| {
            let mut e = vec![Scalar::zero(); n];
            e[i] = Scalar::one();
            e
        })
        .find(|e| rank(&[u.clone(), v.clone(), e.clone()]) == 3)
        .ok_or_else(|| Error::DegeneratePoint {
            cause: "conormal plane does not have codimension 1".into(),
        })?;

    // [y, u] = α u + β v and [y, v] = γ u + δ v; need β = γ = 0, α = δ ≠ 0
    let basis_cols: Vec<Vec<Scalar>> = (0..n).map(|r| vec![u[r].clone(), v[r].clone()]).collect();
    let coords = |w: Vec<Scalar>| -> Option<Vec<Scalar>> {
        let res = solve_linear(&basis_cols, &w).ok()?;
        res.solution
    };
    let yu = coords(cs.bracket(&complement, u));
    let yv = coords(cs.bracket(&complement, v));
    cs.ad_scalar = match (yu, yv) {
        (Some(a), Some(b))
            if a[1].is_zero() && b[0].is_zero() && a[0] == b[1] && !a[0].is_zero() =>
        {
            Some(a[0].clone())
        }
        _ => None,
    };
    cs.complement = complement;
    Ok(cs)
}

/// Conormal Lie algebra of the bracket of `(Q1, Q2)` at a smooth point of the
/// base curve. The chart is the coordinate of largest absolute value
/// (smallest index on ties).
pub fn linearize_at(q1: &MultiPoly, q2: &MultiPoly, p: &ProjPoint) -> Result<ConormalStructure> {
    check_quadric(q1)?;
    check_quadric(q2)?;
    let coords = p.coords();
    if !q1.evaluate(coords)?.is_zero() || !q2.evaluate(coords)?.is_zero() {
        return Err(Error::NotOnCurve);
    }
    let grads: Vec<Vec<Scalar>> = [q1, q2]
        .iter()
        .map(|q| {
            q.gradient()
                .iter()
                .map(|g| g.evaluate(coords))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    if rank(&grads) < 2 {
        return Err(Error::SingularPoint);
    }
    let chart = p.largest_coordinate();
    let pk = coords[chart].clone();
    let origin: Vec<Scalar> = (0..4)
        .filter(|&j| j != chart)
        .map(|j| &coords[j] / &pk)
        .collect();
    let fo = fo_bivector(q1, q2)?;
    let affine = fo.pi.dehomogenize(chart)?;
    let drop_chart = |g: &Vec<Scalar>| -> Vec<Scalar> {
        (0..4)
            .filter(|&j| j != chart)
            .map(|j| g[j].clone())
            .collect()
    };
    let plane = [drop_chart(&grads[0]), drop_chart(&grads[1])];
    conormal_from_affine(&affine, &origin, plane, p.clone(), chart)
}
