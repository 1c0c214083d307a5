//! Floating-point check of the harmonic description of polar lines.
//!
//! For `p` off the base curve `E`, let `Q_p` be the member of the pencil
//! through `p`. The two rulings of `Q_p` through `p` each meet `E` in two
//! points `p_i, q_i`; the harmonic conjugates `r_i` of `p` with respect to
//! those pairs span the polar line of `p`.
//!
//! Rulings may be complex even for real quadrics, so the computation runs in
//! `Complex64`. Residuals are measured against the exact polar line of the
//! rational point with the same binary value as the input.

use num_complex::Complex64 as C;

use super::{polar_line, polar_rows_f64, ProjPoint};
use crate::algebra::{scalar_from_f64, scalar_to_f64};
use crate::error::{Error, Result};
use crate::pencil::QuadricPencil;

/// Relative size below which an intermediate quantity counts as degenerate.
pub const DEGENERACY_FLOOR: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub enum HarmonicOutcome {
    Verified,
    Refuted,
    Inconclusive(String),
}

/// One ruling through `p` and the points constructed on it.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicLine {
    pub direction: [C; 4],
    pub base_points: [[C; 4]; 2],
    pub conjugate: [C; 4],
    pub cross_ratio: C,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicReport {
    pub outcome: HarmonicOutcome,
    /// `(λ, μ)` with `λ Q1(p) + μ Q2(p) = 0`, unit norm.
    pub member: Option<[f64; 2]>,
    pub lines: Vec<HarmonicLine>,
    /// `max |cr + 1|` over the two rulings.
    pub cross_ratio_residual: f64,
    /// `max |f(r_i)|` over unit polar forms `f` and unit `r_i`.
    pub polar_residual: f64,
    pub max_residual: f64,
    /// Smallest relative size among the quantities checked against the floor.
    pub conditioning: f64,
}

impl HarmonicReport {
    fn inconclusive(reason: impl Into<String>, conditioning: f64) -> Self {
        HarmonicReport {
            outcome: HarmonicOutcome::Inconclusive(reason.into()),
            member: None,
            lines: Vec::new(),
            cross_ratio_residual: f64::NAN,
            polar_residual: f64::NAN,
            max_residual: f64::NAN,
            conditioning,
        }
    }
}

/// `det(z1,z3) det(z2,z4) / (det(z2,z3) det(z1,z4))` for points on a line
/// in homogeneous coordinates.
pub fn cross_ratio(z1: [C; 2], z2: [C; 2], z3: [C; 2], z4: [C; 2]) -> C {
    let d = |a: [C; 2], b: [C; 2]| a[0] * b[1] - a[1] * b[0];
    d(z1, z3) * d(z2, z4) / (d(z2, z3) * d(z1, z4))
}

type Mat = [[f64; 4]; 4];

fn gram_f64(pencil: &QuadricPencil) -> (Mat, Mat) {
    let conv = |g: &crate::pencil::GramMatrix| {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in g.rows().iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                m[i][j] = scalar_to_f64(c);
            }
        }
        let norm = m.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
        m.iter_mut().flatten().for_each(|x| *x /= norm);
        m
    };
    let (a, b) = pencil.grams();
    (conv(a), conv(b))
}

fn bil(m: &Mat, u: &[C; 4], v: &[C; 4]) -> C {
    let mut s = C::new(0.0, 0.0);
    for i in 0..4 {
        for j in 0..4 {
            s += u[i] * m[i][j] * v[j];
        }
    }
    s
}

fn norm(v: &[C; 4]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn unit(v: [C; 4]) -> [C; 4] {
    let n = norm(&v);
    v.map(|z| z / n)
}

fn real(v: [f64; 4]) -> [C; 4] {
    v.map(|x| C::new(x, 0.0))
}

fn dot_r(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm_r(a: &[f64; 4]) -> f64 {
    dot_r(a, a).sqrt()
}

/// Roots `(α : β)` of `a α² + 2b αβ + c β²`, computed without cancellation.
fn binary_roots(a: C, b: C, c: C) -> ([C; 2], [C; 2], f64) {
    let disc = b * b - a * c;
    let sq = disc.sqrt();
    let q = if (b + sq).norm() >= (b - sq).norm() {
        -(b + sq)
    } else {
        -(b - sq)
    };
    let scale = a.norm().max(b.norm()).max(c.norm());
    let rel = if scale > 0.0 {
        disc.norm() / (scale * scale)
    } else {
        0.0
    };
    ([q, a], [c, q], rel)
}

/// Runs the harmonic construction at the float point `p`.
///
/// Degenerate configurations (`p` on or near the base curve, near a vertex,
/// a tangent ruling, ...) give [`HarmonicOutcome::Inconclusive`]; a verdict is
/// only issued when every intermediate quantity clears [`DEGENERACY_FLOOR`].
pub fn harmonic_check(pencil: &QuadricPencil, p: [f64; 4], tol: f64) -> Result<HarmonicReport> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if p.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    let exact = ProjPoint::new(p.iter().map(|&x| scalar_from_f64(x).unwrap()).collect())?;
    let pn = norm_r(&p);
    let pr = p.map(|x| x / pn);
    let pc = real(pr);
    let mut cond = f64::INFINITY;
    let mut check = |value: f64, what: &str| -> std::result::Result<(), String> {
        cond = cond.min(value);
        if value < DEGENERACY_FLOOR {
            Err(format!("{what} (relative size {value:.3e})"))
        } else {
            Ok(())
        }
    };

    let (m1, m2) = gram_f64(pencil);
    let result =
        (|| -> std::result::Result<(Vec<HarmonicLine>, [f64; 2], [[f64; 4]; 2]), String> {
            polar_line(pencil, &exact).map_err(|e| e.to_string())?;
            let mut forms = polar_rows_f64(pencil, &exact);
            for f in forms.iter_mut() {
                let n = norm_r(f);
                f.iter_mut().for_each(|x| *x /= n);
            }
            let overlap = dot_r(&forms[0], &forms[1]);
            check(
                (1.0 - overlap * overlap).max(0.0).sqrt(),
                "polar planes nearly coincide",
            )?;

            let q1 = bil(&m1, &pc, &pc).re;
            let q2 = bil(&m2, &pc, &pc).re;
            let h = q1.hypot(q2);
            check(h, "point lies on or near the base curve")?;
            let (lam, mu) = (q2 / h, -q1 / h);
            let mut mp = [[0.0; 4]; 4];
            for i in 0..4 {
                for j in 0..4 {
                    mp[i][j] = lam * m1[i][j] + mu * m2[i][j];
                }
            }
            let other = if mu.abs() >= lam.abs() { m1 } else { m2 };

            // tangent plane of Q_p at p, with a basis complementary to p
            let mut n = [0.0; 4];
            for i in 0..4 {
                n[i] = dot_r(&mp[i], &pr);
            }
            let mp_norm = mp.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
            check(
                norm_r(&n) / mp_norm,
                "point is near the vertex of its member quadric",
            )?;
            let mut frame: Vec<[f64; 4]> = vec![pr];
            let orth = |v: [f64; 4], frame: &[[f64; 4]]| {
                let mut v = v;
                for f in frame {
                    let c = dot_r(&v, f);
                    for k in 0..4 {
                        v[k] -= c * f[k];
                    }
                }
                v
            };
            let nv = orth(n, &frame);
            let nn = norm_r(&nv);
            check(nn / norm_r(&n), "tangent plane degenerate")?;
            frame.push(nv.map(|x| x / nn));
            for _ in 0..2 {
                let best = (0..4)
                    .map(|i| {
                        let mut e = [0.0; 4];
                        e[i] = 1.0;
                        orth(e, &frame)
                    })
                    .max_by(|a, b| norm_r(a).total_cmp(&norm_r(b)))
                    .unwrap();
                let bn = norm_r(&best);
                frame.push(best.map(|x| x / bn));
            }
            let (u, w) = (real(frame[2]), real(frame[3]));

            // Q_p on the tangent plane is a pair of lines through p
            let (d1c, d2c, rel) =
                binary_roots(bil(&mp, &u, &u), bil(&mp, &u, &w), bil(&mp, &w, &w));
            check(rel, "rulings through p nearly coincide")?;
            let dirs = [d1c, d2c].map(|c| {
                let mut d = [C::new(0.0, 0.0); 4];
                for k in 0..4 {
                    d[k] = c[0] * u[k] + c[1] * w[k];
                }
                unit(d)
            });

            let mut lines = Vec::with_capacity(2);
            for d in dirs {
                let a = bil(&other, &pc, &pc);
                let b = bil(&other, &pc, &d);
                let c = bil(&other, &d, &d);
                check(a.norm(), "point lies on or near the base curve")?;
                let (z3, z4, rel) = binary_roots(a, b, c);
                check(rel, "ruling is nearly tangent to the base curve")?;
                let at = |z: [C; 2]| {
                    let mut x = [C::new(0.0, 0.0); 4];
                    for k in 0..4 {
                        x[k] = z[0] * pc[k] + z[1] * d[k];
                    }
                    x
                };
                // harmonic conjugate of (1:0): the polar of p for the restricted quadric
                let zr = [-b, a];
                let cr = cross_ratio([C::new(1.0, 0.0), C::new(0.0, 0.0)], zr, z3, z4);
                lines.push(HarmonicLine {
                    direction: d,
                    base_points: [unit(at(z3)), unit(at(z4))],
                    conjugate: unit(at(zr)),
                    cross_ratio: cr,
                });
            }
            let (r1, r2) = (&lines[0].conjugate, &lines[1].conjugate);
            let mut wedge = 0.0f64;
            for i in 0..4 {
                for j in i + 1..4 {
                    wedge += (r1[i] * r2[j] - r1[j] * r2[i]).norm_sqr();
                }
            }
            check(wedge.sqrt(), "harmonic conjugates nearly coincide")?;
            Ok((lines, [lam, mu], forms))
        })();

    let (lines, member, forms) = match result {
        Ok(v) => v,
        Err(reason) => return Ok(HarmonicReport::inconclusive(reason, cond)),
    };
    let cross_ratio_residual = lines
        .iter()
        .map(|l| (l.cross_ratio + 1.0).norm())
        .fold(0.0, f64::max);
    let polar_residual = lines
        .iter()
        .flat_map(|l| {
            forms.iter().map(move |f| {
                real(*f)
                    .iter()
                    .zip(&l.conjugate)
                    .map(|(a, b)| a * b)
                    .sum::<C>()
                    .norm()
            })
        })
        .fold(0.0, f64::max);
    let max_residual = cross_ratio_residual.max(polar_residual);
    let outcome = if max_residual <= tol {
        HarmonicOutcome::Verified
    } else {
        HarmonicOutcome::Refuted
    };
    Ok(HarmonicReport {
        outcome,
        member: Some(member),
        lines,
        cross_ratio_residual,
        polar_residual,
        max_residual,
        conditioning: cond,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::MultiPoly;

    fn pencil(a: &str, b: &str) -> QuadricPencil {
        QuadricPencil::new(
            MultiPoly::parse(a, 4).unwrap(),
            MultiPoly::parse(b, 4).unwrap(),
        )
        .unwrap()
    }

    fn c(x: f64) -> C {
        C::new(x, 0.0)
    }

    #[test]
    fn standard_harmonic_range() {
        // p = ∞, r = 0, pair {1, -1}
        let cr = cross_ratio(
            [c(1.0), c(0.0)],
            [c(0.0), c(1.0)],
            [c(1.0), c(1.0)],
            [c(-1.0), c(1.0)],
        );
        assert!((cr + 1.0).norm() < 1e-15);
    }

    #[test]
    fn diagonal_pencil_point() {
        let p = pencil("x1^2+x2^2+x3^2+x4^2", "x1^2+2*x2^2+3*x3^2+4*x4^2");
        let r = harmonic_check(&p, [0.3, -1.1, 0.7, 0.45], 1e-9).unwrap();
        assert_eq!(r.outcome, HarmonicOutcome::Verified, "{r:?}");
        assert!(r.max_residual <= 1e-9);
    }

    #[test]
    fn point_on_curve_is_inconclusive() {
        let p = pencil("x1^2-x2^2", "x3^2-x4^2");
        let r = harmonic_check(&p, [1.0, 1.0, 1.0, 1.0], 1e-9).unwrap();
        assert!(
            matches!(r.outcome, HarmonicOutcome::Inconclusive(_)),
            "{r:?}"
        );
    }

    #[test]
    fn vertex_is_inconclusive() {
        let p = pencil("x1^2+x2^2+x3^2+x4^2", "x1^2+2*x2^2+3*x3^2+4*x4^2");
        let r = harmonic_check(&p, [1.0, 0.0, 0.0, 0.0], 1e-9).unwrap();
        assert!(
            matches!(r.outcome, HarmonicOutcome::Inconclusive(_)),
            "{r:?}"
        );
    }

    #[test]
    fn bad_arguments() {
        let p = pencil("x1^2+x2^2+x3^2+x4^2", "x1^2+2*x2^2+3*x3^2+4*x4^2");
        assert!(harmonic_check(&p, [f64::NAN, 0.0, 0.0, 1.0], 1e-9).is_err());
        assert!(harmonic_check(&p, [0.0; 4], 1e-9).is_err());
        assert!(harmonic_check(&p, [1.0; 4], 0.0).is_err());
    }
}
