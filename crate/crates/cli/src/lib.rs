//! Library side of the `fo` command-line tool.
//!
//! [`run`] parses an argument vector, dispatches to `fo-poisson` and returns
//! the rendered output with an exit code:
//!
//! | code | meaning                                         |
//! |------|-------------------------------------------------|
//! | 0    | success / identity holds / compatible           |
//! | 1    | identity fails / incompatible / check refuted   |
//! | 2    | input error (usage, parse failure, bad shape)   |
//! | 3    | precondition or degeneracy error                |
//!
//! JSON output carries `"schema": "fo-poisson/1"`. Exact numbers are strings
//! (`"-3/4"`); variable and `∂` indices are 1-based; pencil indices in
//! witnesses are 0-based positions in the `--pencils` list.

mod render;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde_json::{json, Value};

use fo_poisson::algebra::Scalar;
use fo_poisson::fo::{
    compatibility_bracket, fo_bivector, linearize_at, phi_quartic, schouten_quartic,
    vanishing_certificate, verify_jacobi, verify_quartic_identity,
};
use fo_poisson::pencil::{
    classify_collection, pairwise_compatible, Classification, Genericity, QuadricPencil,
};
use fo_poisson::polar::{
    harmonic_check, intersection_quartic, polar_line, HarmonicOutcome, ProjPoint,
};
use fo_poisson::selftest::run_selftest;
use fo_poisson::{Error, MultiPoly};

use render::{binary_form, chart_field, field_json, field_text, point_json, rename_chart};

pub const SCHEMA: &str = "fo-poisson/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Response {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "fo",
    version,
    about = "Exact Feigin–Odesskii Poisson brackets on P³"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bivector of the pencil <Q1, Q2>, homogeneous and in an affine chart.
    Bracket {
        #[arg(allow_hyphen_values = true)]
        q1: String,
        #[arg(allow_hyphen_values = true)]
        q2: String,
        /// Chart x_k = 1 (1-based).
        #[arg(long, default_value_t = 1)]
        chart: usize,
    },
    /// Schouten bracket of the bivectors of <Q1, Q2> and <Q3, Q4>, and its quartic.
    Schouten {
        #[arg(allow_hyphen_values = true)]
        q1: String,
        #[arg(allow_hyphen_values = true)]
        q2: String,
        #[arg(allow_hyphen_values = true)]
        q3: String,
        q4: String,
    },
    /// det of the gradients of four quadrics.
    Phi {
        #[arg(allow_hyphen_values = true)]
        q1: String,
        #[arg(allow_hyphen_values = true)]
        q2: String,
        #[arg(allow_hyphen_values = true)]
        q3: String,
        q4: String,
    },
    /// Checks that the bracket quartic equals 4 · phi.
    #[command(name = "verify-d")]
    VerifyD {
        #[arg(allow_hyphen_values = true)]
        q1: String,
        #[arg(allow_hyphen_values = true)]
        q2: String,
        #[arg(allow_hyphen_values = true)]
        q3: String,
        q4: String,
    },
    /// Jacobiator [Π, Π] of the bivector of <Q1, Q2>.
    Jacobi {
        #[arg(allow_hyphen_values = true)]
        q1: String,
        q2: String,
    },
    /// Compatibility of a family of brackets, cross-checked pairwise.
    Compatible {
        /// Pencils "Q1,Q2;Q3,Q4;...".
        #[arg(long)]
        pencils: String,
    },
    /// Concurrent / coplanar / incompatible classification of pencils.
    Classify {
        #[arg(long)]
        pencils: String,
    },
    /// Polar line of a point with respect to a pencil.
    Polar {
        #[arg(allow_hyphen_values = true)]
        q1: String,
        #[arg(allow_hyphen_values = true)]
        q2: String,
        /// Rational point "a,b,c,d".
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Quartic surface where the polar lines of two pencils meet.
    #[command(name = "quartic-surface")]
    QuarticSurface {
        /// Exactly two pencils "Q1,Q2;Q3,Q4".
        #[arg(long)]
        pencils: String,
    },
    /// Certificates that the bivector vanishes on the base curve in P³.
    Vanish {
        #[arg(allow_hyphen_values = true)]
        q1: String,
        q2: String,
    },
    /// Conormal Lie algebra at a smooth point of the base curve.
    Linearize {
        #[arg(allow_hyphen_values = true)]
        q1: String,
        #[arg(allow_hyphen_values = true)]
        q2: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Discriminant det(l·M1 + m·M2) and singular members.
    Discriminant {
        #[arg(allow_hyphen_values = true)]
        q1: String,
        q2: String,
    },
    /// Floating-point check of the harmonic description of the polar line.
    Harmonic {
        #[arg(allow_hyphen_values = true)]
        q1: String,
        #[arg(allow_hyphen_values = true)]
        q2: String,
        /// Float point "a,b,c,d".
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Seeded randomized self-test of the main identities.
    Selftest {
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Failure of a command, with the exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn from_error(context: &str, e: Error) -> Failure {
        let code = if e.is_precondition() {
            EXIT_PRECONDITION
        } else {
            EXIT_INPUT
        };
        let message = if context.is_empty() {
            e.to_string()
        } else {
            format!("{context}: {e}")
        };
        Failure { code, message }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::from_error("", e)
    }
}

/// Successful command output.
struct Output {
    json: Value,
    text: String,
    code: i32,
}

type CmdResult = std::result::Result<Output, Failure>;

fn quadric(name: &str, s: &str) -> std::result::Result<MultiPoly, Failure> {
    let q =
        MultiPoly::parse(s, 4).map_err(|e| Failure::from_error(&format!("argument {name}"), e))?;
    if !q.is_homogeneous(2) {
        return Err(Failure::input(format!(
            "argument {name}: '{q}' is not a quadratic form"
        )));
    }
    Ok(q)
}

fn pencil(name: &str, a: &str, b: &str) -> std::result::Result<QuadricPencil, Failure> {
    let (qa, qb) = (
        quadric(&format!("{name} first quadric"), a)?,
        quadric(&format!("{name} second quadric"), b)?,
    );
    QuadricPencil::new(qa, qb).map_err(|e| Failure::from_error(name, e))
}

fn pencil_list(s: &str) -> std::result::Result<Vec<QuadricPencil>, Failure> {
    s.split(';')
        .enumerate()
        .map(|(i, part)| {
            let qs: Vec<&str> = part.split(',').map(str::trim).collect();
            if qs.len() != 2 {
                return Err(Failure::input(format!(
                    "pencil {i}: expected two comma-separated quadrics, got {}",
                    qs.len()
                )));
            }
            pencil(&format!("pencil {i}"), qs[0], qs[1])
        })
        .collect()
}

fn float_point(s: &str) -> std::result::Result<[f64; 4], Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(Failure::input(format!(
            "point: expected 4 coordinates, got {}",
            parts.len()
        )));
    }
    let mut out = [0.0; 4];
    for (o, p) in out.iter_mut().zip(&parts) {
        *o = p
            .parse::<f64>()
            .map_err(|_| Failure::input(format!("point: invalid float '{p}'")))?;
    }
    Ok(out)
}

fn rational_point(s: &str) -> std::result::Result<ProjPoint, Failure> {
    ProjPoint::parse(s).map_err(|e| Failure::from_error("point", e))
}

fn quartet(q: [&str; 4]) -> std::result::Result<[MultiPoly; 4], Failure> {
    let names = ["Q1", "Q2", "Q3", "Q4"];
    let mut out: Vec<MultiPoly> = Vec::with_capacity(4);
    for (n, s) in names.iter().zip(q) {
        out.push(quadric(n, s)?);
    }
    Ok(out.try_into().expect("four quadrics"))
}

fn bracket_cmd(q1: &str, q2: &str, chart: usize) -> CmdResult {
    let (a, b) = (quadric("Q1", q1)?, quadric("Q2", q2)?);
    if !(1..=4).contains(&chart) {
        return Err(Failure::input(format!(
            "--chart must be between 1 and 4, got {chart}"
        )));
    }
    let fo = fo_bivector(&a, &b)?;
    let affine = fo.pi.dehomogenize(chart - 1)?;
    let text = format!(
        "bivector: {}\nchart x{chart}=1: {}",
        field_text(&fo.pi),
        rename_chart(&affine.to_string(), chart - 1)
    );
    Ok(Output {
        json: json!({
            "bivector": field_json(&fo.pi),
            "chart": chart,
            "affine": chart_field(&affine, chart - 1),
        }),
        text,
        code: EXIT_OK,
    })
}

fn schouten_cmd(q: [&str; 4]) -> CmdResult {
    let qs = quartet(q)?;
    let t = compatibility_bracket(&qs[0], &qs[1], &qs[2], &qs[3])?;
    let quartic = schouten_quartic([&qs[0], &qs[1], &qs[2], &qs[3]])?;
    Ok(Output {
        text: format!("trivector: {}\nquartic: {quartic}", field_text(&t)),
        json: json!({
            "trivector": field_json(&t),
            "quartic": quartic.to_string(),
            "vanishes": t.is_zero(),
        }),
        code: EXIT_OK,
    })
}

fn phi_cmd(q: [&str; 4]) -> CmdResult {
    let qs = quartet(q)?;
    let quartic = phi_quartic([&qs[0], &qs[1], &qs[2], &qs[3]])?;
    Ok(Output {
        text: format!("phi: {quartic}"),
        json: json!({ "quartic": quartic.to_string() }),
        code: EXIT_OK,
    })
}

fn verify_d_cmd(q: [&str; 4]) -> CmdResult {
    let qs = quartet(q)?;
    let r = verify_quartic_identity([&qs[0], &qs[1], &qs[2], &qs[3]])?;
    Ok(Output {
        text: format!(
            "lhs: {}\nrhs: {}\n{}",
            r.lhs,
            r.rhs,
            if r.equal {
                "identity holds"
            } else {
                "identity FAILS"
            }
        ),
        json: json!({ "lhs": r.lhs.to_string(), "rhs": r.rhs.to_string(), "equal": r.equal }),
        code: if r.equal { EXIT_OK } else { EXIT_FAIL },
    })
}

fn jacobi_cmd(q1: &str, q2: &str) -> CmdResult {
    let (a, b) = (quadric("Q1", q1)?, quadric("Q2", q2)?);
    let fo = fo_bivector(&a, &b)?;
    let r = verify_jacobi(&fo.pi)?;
    Ok(Output {
        text: format!(
            "jacobiator: {}\n{}",
            field_text(&r.jacobiator),
            if r.is_poisson {
                "Poisson"
            } else {
                "not Poisson"
            }
        ),
        json: json!({ "jacobiator": field_json(&r.jacobiator), "poisson": r.is_poisson }),
        code: if r.is_poisson { EXIT_OK } else { EXIT_FAIL },
    })
}

fn classification_json(kind: &Classification) -> Value {
    match kind {
        Classification::Concurrent { shared } => json!({ "shared": shared.to_string() }),
        Classification::Coplanar { basis } => {
            json!({ "basis": basis.iter().map(|q| q.to_string()).collect::<Vec<_>>() })
        }
        Classification::Incompatible { witness } => json!({ "witness": [witness.0, witness.1] }),
    }
}

fn classification_text(kind: &Classification) -> String {
    match kind {
        Classification::Concurrent { shared } => {
            format!("concurrent: every pencil contains {shared}")
        }
        Classification::Coplanar { basis } => format!(
            "coplanar: every pencil lies in span({})",
            basis
                .iter()
                .map(|q| q.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ),
        Classification::Incompatible { witness } => {
            format!(
                "incompatible: pencils {} and {} do not meet",
                witness.0, witness.1
            )
        }
    }
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Some(b), Value::Object(e)) = (base.as_object_mut(), extra) {
        b.extend(e);
    }
    base
}

fn classify_cmd(pencils: &str, cross_check: bool) -> CmdResult {
    let ps = pencil_list(pencils)?;
    let c = classify_collection(&ps)?;
    let compatible = c.kind.is_compatible();
    let mut json = merge(
        json!({
            "classification": c.kind.name(),
            "compatible": compatible,
            "non_generic": c.non_generic,
            "curve_semantics": c.curve_semantics(),
        }),
        classification_json(&c.kind),
    );
    let mut text = classification_text(&c.kind);
    if !c.curve_semantics() {
        text.push_str(&format!(
            "\nnote: pencils {:?} are not generic; classification is linear-algebraic only",
            c.non_generic
        ));
    }
    if cross_check {
        let mut pairs = Vec::new();
        for i in 0..ps.len() {
            for j in i + 1..ps.len() {
                let meet = pairwise_compatible(&ps[i], &ps[j]);
                let t = compatibility_bracket(ps[i].q1(), ps[i].q2(), ps[j].q1(), ps[j].q2())?;
                text.push_str(&format!(
                    "\npair ({i},{j}): pencils meet: {meet}, bracket vanishes: {}",
                    t.is_zero()
                ));
                pairs.push(json!({ "pair": [i, j], "pencils_meet": meet, "bracket_vanishes": t.is_zero() }));
            }
        }
        json = merge(json, json!({ "pairs": pairs }));
    }
    Ok(Output {
        json,
        text,
        code: if compatible { EXIT_OK } else { EXIT_FAIL },
    })
}

fn polar_cmd(q1: &str, q2: &str, point: &str) -> CmdResult {
    let p = pencil("pencil", q1, q2)?;
    let x = rational_point(point)?;
    let line = polar_line(&p, &x)?;
    let [f1, f2] = line.forms();
    let plucker: Vec<String> = line.plucker().iter().map(Scalar::to_string).collect();
    Ok(Output {
        text: format!(
            "point: {x}\npolar line: {f1} = 0, {f2} = 0\nplucker: [{}]",
            plucker.join(", ")
        ),
        json: json!({
            "point": point_json(&x),
            "forms": [f1.to_string(), f2.to_string()],
            "plucker": plucker,
            "plucker_relation": line.plucker_relation().to_string(),
        }),
        code: EXIT_OK,
    })
}

fn quartic_surface_cmd(pencils: &str) -> CmdResult {
    let ps = pencil_list(pencils)?;
    if ps.len() != 2 {
        return Err(Failure::input(format!(
            "expected exactly two pencils, got {}",
            ps.len()
        )));
    }
    let (a, b) = (&ps[0], &ps[1]);
    let quartic = intersection_quartic(a, b);
    let phi = phi_quartic([a.q1(), a.q2(), b.q1(), b.q2()])?;
    let matches = phi.scale(&Scalar::new(1.into(), 16.into())) == quartic;
    let mut vertices = Vec::new();
    let mut text = format!("quartic: {quartic}\nphi: {phi}\nquartic = phi/16: {matches}");
    for (i, p) in ps.iter().enumerate() {
        if let Ok(sm) = p.rational_singular_members() {
            for m in sm.members {
                let on = quartic.evaluate(m.vertex.coords())?.is_zero();
                text.push_str(&format!(
                    "\nvertex {} of pencil {i}: on surface: {on}",
                    m.vertex
                ));
                vertices.push(
                    json!({ "pencil": i, "vertex": point_json(&m.vertex), "on_surface": on }),
                );
            }
        }
    }
    Ok(Output {
        json: json!({
            "quartic": quartic.to_string(),
            "phi": phi.to_string(),
            "phi_over_16": matches,
            "rational_vertices": vertices,
        }),
        text,
        code: if matches { EXIT_OK } else { EXIT_FAIL },
    })
}

fn vanish_cmd(q1: &str, q2: &str) -> CmdResult {
    let p = pencil("pencil", q1, q2)?;
    let cert = vanishing_certificate(p.q1(), p.q2())?;
    let entries: Vec<Value> = cert
        .entries
        .iter()
        .map(|e| {
            json!({
                "indices": e.indices.iter().map(|i| i + 1).collect::<Vec<_>>(),
                "cubic": e.cubic.to_string(),
                "l1": e.l1.to_string(),
                "l2": e.l2.to_string(),
            })
        })
        .collect();
    let mut text = String::from("E^Pi components as l1*Q1 + l2*Q2:");
    for e in &cert.entries {
        let idx: Vec<String> = e.indices.iter().map(|i| (i + 1).to_string()).collect();
        text.push_str(&format!(
            "\n  [{}] {} = ({})*Q1 + ({})*Q2",
            idx.join(","),
            e.cubic,
            e.l1,
            e.l2
        ));
    }
    let mut vertices = Vec::new();
    let mut all_zero = true;
    if let Ok(sm) = p.rational_singular_members() {
        for m in &sm.members {
            let zero = cert
                .entries
                .iter()
                .map(|e| e.cubic.evaluate(m.vertex.coords()))
                .collect::<fo_poisson::Result<Vec<_>>>()?
                .iter()
                .all(Zero::is_zero);
            all_zero &= zero;
            text.push_str(&format!(
                "\nrational vertex {}: cubics vanish: {zero}",
                m.vertex
            ));
            vertices.push(json!({ "vertex": point_json(&m.vertex), "cubics_vanish": zero }));
        }
        text.push_str(&format!("\nirrational vertices: {}", sm.irrational_count));
    }
    let verified = cert.verify() && all_zero;
    Ok(Output {
        json: json!({ "certificates": entries, "verified": verified, "rational_vertices": vertices }),
        text,
        code: if verified { EXIT_OK } else { EXIT_FAIL },
    })
}

fn linearize_cmd(q1: &str, q2: &str, point: &str) -> CmdResult {
    let (a, b) = (quadric("Q1", q1)?, quadric("Q2", q2)?);
    let x = rational_point(point)?;
    let cs = linearize_at(&a, &b, &x)?;
    let n = cs.dim();
    // affine coordinate names in the chart, by original index
    let names: Vec<String> = (0..4)
        .filter(|&j| j != cs.chart)
        .map(|j| format!("dy{}", j + 1))
        .collect();
    let mut brackets = Vec::new();
    let mut lines = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let terms: Vec<(usize, &Scalar)> = cs.structure[i][j]
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            if terms.is_empty() {
                continue;
            }
            let rhs: Vec<String> = terms
                .iter()
                .map(|(k, c)| format!("({c})*{}", names[*k]))
                .collect();
            lines.push(format!(
                "  [{}, {}] = {}",
                names[i],
                names[j],
                rhs.join(" + ")
            ));
            brackets.push(json!({
                "left": names[i],
                "right": names[j],
                "terms": terms.iter().map(|(k, c)| json!({ "basis": names[*k], "coeff": c.to_string() })).collect::<Vec<_>>(),
            }));
        }
    }
    let vec_text = |v: &[Scalar]| -> String {
        v.iter()
            .zip(&names)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, nm)| format!("({c})*{nm}"))
            .collect::<Vec<_>>()
            .join(" + ")
    };
    let ok = cs.all_flags();
    let text = format!(
        "point: {x}\nchart: x{}=1\nlinear part:\n{}\nconstant part vanishes: {}\nconormal plane: span({}, {})\nconormal plane abelian: {}\nad({}) on plane: {}",
        cs.chart + 1,
        if lines.is_empty() { "  0".to_string() } else { lines.join("\n") },
        cs.constant_part_vanishes,
        vec_text(&cs.plane[0]),
        vec_text(&cs.plane[1]),
        cs.plane_abelian,
        vec_text(&cs.complement),
        cs.ad_scalar.as_ref().map_or("not a nonzero scalar".to_string(), |s| format!("{s} * id")),
    );
    Ok(Output {
        json: json!({
            "point": point_json(&x),
            "chart": cs.chart + 1,
            "brackets": brackets,
            "constant_part_vanishes": cs.constant_part_vanishes,
            "plane": cs.plane.iter().map(|v| v.iter().map(Scalar::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "plane_abelian": cs.plane_abelian,
            "complement": cs.complement.iter().map(Scalar::to_string).collect::<Vec<_>>(),
            "ad_scalar": cs.ad_scalar.as_ref().map(Scalar::to_string),
            "lie_algebra": cs.is_lie_algebra(),
        }),
        text,
        code: if ok { EXIT_OK } else { EXIT_FAIL },
    })
}

fn discriminant_cmd(q1: &str, q2: &str) -> CmdResult {
    let p = pencil("pencil", q1, q2)?;
    let disc = p.discriminant_form();
    let g = p.genericity();
    let mut json = json!({
        "discriminant": binary_form(&disc),
        "generic": g == Genericity::Generic,
        "diagnosis": g.to_string(),
    });
    let mut text = format!("discriminant: {}\n{g}", binary_form(&disc));
    if let Ok(sm) = p.rational_singular_members() {
        let members: Vec<Value> = sm
            .members
            .iter()
            .map(|m| json!({ "lambda": m.lambda.to_string(), "mu": m.mu.to_string(), "vertex": point_json(&m.vertex) }))
            .collect();
        for m in &sm.members {
            text.push_str(&format!(
                "\nsingular member ({}:{}) with vertex {}",
                m.lambda, m.mu, m.vertex
            ));
        }
        text.push_str(&format!(
            "\nirrational singular members: {}",
            sm.irrational_count
        ));
        json = merge(
            json,
            json!({ "rational_members": members, "irrational_count": sm.irrational_count }),
        );
    }
    Ok(Output {
        json,
        text,
        code: EXIT_OK,
    })
}

fn harmonic_cmd(q1: &str, q2: &str, point: &str, tol: f64) -> CmdResult {
    let p = pencil("pencil", q1, q2)?;
    let x = float_point(point)?;
    let r = harmonic_check(&p, x, tol)?;
    let (name, reason, code) = match &r.outcome {
        HarmonicOutcome::Verified => ("verified", None, EXIT_OK),
        HarmonicOutcome::Refuted => ("refuted", None, EXIT_FAIL),
        HarmonicOutcome::Inconclusive(why) => {
            ("inconclusive", Some(why.clone()), EXIT_PRECONDITION)
        }
    };
    let finite = |v: f64| if v.is_finite() { json!(v) } else { Value::Null };
    let conjugates: Vec<Value> = r
        .lines
        .iter()
        .map(|l| json!(l.conjugate.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>()))
        .collect();
    let mut text = format!("outcome: {name}");
    if let Some(why) = &reason {
        text.push_str(&format!(" ({why})"));
    } else {
        text.push_str(&format!(
            "\ncross-ratio residual: {:.3e}\npolar residual: {:.3e}\ntolerance: {tol:e}",
            r.cross_ratio_residual, r.polar_residual
        ));
    }
    Ok(Output {
        json: json!({
            "outcome": name,
            "reason": reason,
            "member": r.member,
            "cross_ratio_residual": finite(r.cross_ratio_residual),
            "polar_residual": finite(r.polar_residual),
            "max_residual": finite(r.max_residual),
            "conditioning": finite(r.conditioning),
            "tolerance": tol,
            "conjugates": conjugates,
        }),
        text,
        code,
    })
}

fn selftest_cmd(trials: usize, seed: u64) -> CmdResult {
    if trials == 0 {
        return Err(Failure::input("--trials must be at least 1"));
    }
    let report = run_selftest(trials, seed);
    let suites: Vec<Value> = report
        .suites
        .iter()
        .map(|s| {
            json!({
                "name": s.name,
                "trials": s.trials,
                "passed": s.passed,
                "failures": s.failures.iter().map(|(i, m)| json!({ "trial": i, "message": m })).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(Output {
        json: json!({ "seed": seed, "trials": trials, "suites": suites, "ok": report.ok() }),
        text: report.to_string(),
        code: if report.ok() { EXIT_OK } else { EXIT_FAIL },
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Bracket { .. } => "bracket",
        Command::Schouten { .. } => "schouten",
        Command::Phi { .. } => "phi",
        Command::VerifyD { .. } => "verify-d",
        Command::Jacobi { .. } => "jacobi",
        Command::Compatible { .. } => "compatible",
        Command::Classify { .. } => "classify",
        Command::Polar { .. } => "polar",
        Command::QuarticSurface { .. } => "quartic-surface",
        Command::Vanish { .. } => "vanish",
        Command::Linearize { .. } => "linearize",
        Command::Discriminant { .. } => "discriminant",
        Command::Harmonic { .. } => "harmonic",
        Command::Selftest { .. } => "selftest",
    }
}

fn dispatch(c: &Command) -> CmdResult {
    match c {
        Command::Bracket { q1, q2, chart } => bracket_cmd(q1, q2, *chart),
        Command::Schouten { q1, q2, q3, q4 } => schouten_cmd([q1, q2, q3, q4]),
        Command::Phi { q1, q2, q3, q4 } => phi_cmd([q1, q2, q3, q4]),
        Command::VerifyD { q1, q2, q3, q4 } => verify_d_cmd([q1, q2, q3, q4]),
        Command::Jacobi { q1, q2 } => jacobi_cmd(q1, q2),
        Command::Compatible { pencils } => classify_cmd(pencils, true),
        Command::Classify { pencils } => classify_cmd(pencils, false),
        Command::Polar { q1, q2, point } => polar_cmd(q1, q2, point),
        Command::QuarticSurface { pencils } => quartic_surface_cmd(pencils),
        Command::Vanish { q1, q2 } => vanish_cmd(q1, q2),
        Command::Linearize { q1, q2, point } => linearize_cmd(q1, q2, point),
        Command::Discriminant { q1, q2 } => discriminant_cmd(q1, q2),
        Command::Harmonic { q1, q2, point, tol } => harmonic_cmd(q1, q2, point, *tol),
        Command::Selftest { trials, seed } => selftest_cmd(*trials, *seed),
    }
}

fn wants_json<I, T>(argv: I) -> bool
where
    I: IntoIterator<Item = T>,
    T: AsRef<str>,
{
    let args: Vec<String> = argv.into_iter().map(|a| a.as_ref().to_string()).collect();
    args.windows(2)
        .any(|w| w[0] == "--format" && w[1] == "json")
        || args.iter().any(|a| a == "--format=json")
}

fn error_response(json: bool, command: Option<&str>, code: i32, message: &str) -> Response {
    let kind = if code == EXIT_PRECONDITION {
        "precondition"
    } else {
        "input"
    };
    if json {
        let v = json!({
            "schema": SCHEMA,
            "command": command,
            "error": { "kind": kind, "message": message },
        });
        Response {
            stdout: format!(
                "{}\n",
                serde_json::to_string_pretty(&v).expect("serializable")
            ),
            stderr: String::new(),
            exit_code: code,
        }
    } else {
        Response {
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
            exit_code: code,
        }
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Response
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone + AsRef<str>,
{
    let argv: Vec<T> = argv.into_iter().collect();
    let json_requested = wants_json(argv.iter().map(|a| a.as_ref().to_string()));
    let cli = match Cli::try_parse_from(argv.iter().cloned()) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Response {
                    stdout: rendered,
                    stderr: String::new(),
                    exit_code: EXIT_OK,
                },
                _ if json_requested => error_response(true, None, EXIT_INPUT, rendered.trim()),
                _ => Response {
                    stdout: String::new(),
                    stderr: rendered,
                    exit_code: EXIT_INPUT,
                },
            };
        }
    };
    let name = command_name(&cli.command);
    match dispatch(&cli.command) {
        Ok(out) => {
            let stdout = match cli.format {
                Format::Json => {
                    let v = merge(json!({ "schema": SCHEMA, "command": name }), out.json);
                    format!(
                        "{}\n",
                        serde_json::to_string_pretty(&v).expect("serializable")
                    )
                }
                Format::Text => format!("{}\n", out.text),
            };
            Response {
                stdout,
                stderr: String::new(),
                exit_code: out.code,
            }
        }
        Err(f) => error_response(cli.format == Format::Json, Some(name), f.code, &f.message),
    }
}
