//! Text and JSON rendering of library values.

use serde_json::{json, Value};

use fo_poisson::polar::ProjPoint;
use fo_poisson::{MultiPoly, Multivector};

/// Rewrites variable tokens `x<n>` and `d<n>` through `map` (1-based in and
/// out), producing `y<m>` / `dy<m>`.
fn rename(s: &str, map: impl Fn(usize) -> usize) -> String {
    let chars: Vec<char> = s.chars().collect();
    let mut out = String::with_capacity(s.len() + 8);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let boundary = i == 0 || !chars[i - 1].is_ascii_alphanumeric();
        if (c == 'x' || c == 'd')
            && boundary
            && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())
        {
            let mut j = i + 1;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let n: usize = chars[i + 1..j]
                .iter()
                .collect::<String>()
                .parse()
                .expect("digits");
            out.push_str(if c == 'x' { "y" } else { "dy" });
            out.push_str(&map(n).to_string());
            i = j;
        } else {
            out.push(c);
            i += 1;
        }
    }
    out
}

/// Original 1-based index of affine coordinate `i` (1-based) in chart `k` (0-based).
fn chart_index(i: usize, chart: usize) -> usize {
    if i - 1 < chart {
        i
    } else {
        i + 1
    }
}

pub fn rename_chart(s: &str, chart: usize) -> String {
    rename(s, |i| chart_index(i, chart))
}

pub fn field_text(m: &Multivector) -> String {
    m.to_string()
}

pub fn field_json(m: &Multivector) -> Value {
    Value::Array(
        m.components()
            .map(|(idx, c)| {
                json!({
                    "indices": idx.iter().map(|i| i + 1).collect::<Vec<_>>(),
                    "coeff": c.to_string(),
                })
            })
            .collect(),
    )
}

/// Affine field in chart `chart` (0-based), with indices and variables named
/// by their original coordinates.
pub fn chart_field(m: &Multivector, chart: usize) -> Value {
    Value::Array(
        m.components()
            .map(|(idx, c)| {
                json!({
                    "indices": idx.iter().map(|i| chart_index(i + 1, chart)).collect::<Vec<_>>(),
                    "coeff": rename_chart(&c.to_string(), chart),
                })
            })
            .collect(),
    )
}

/// Binary form in `x1, x2` printed in the pencil parameters `l, m`.
pub fn binary_form(f: &MultiPoly) -> String {
    f.to_string().replace("x1", "l").replace("x2", "m")
}

pub fn point_json(p: &ProjPoint) -> Value {
    Value::Array(
        p.coords()
            .iter()
            .map(|c| Value::String(c.to_string()))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renames_tokens_in_chart() {
        assert_eq!(
            rename_chart("2*x2 d1^d2 + x3^2 d2^d3", 0),
            "2*y3 dy2^dy3 + y4^2 dy3^dy4"
        );
        assert_eq!(rename_chart("x1*x3 d3", 1), "y1*y4 dy4");
    }
}
