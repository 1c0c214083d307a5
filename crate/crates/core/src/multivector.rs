//! Polynomial multivector fields on affine n-space.
//!
//! A degree-`p` multivector is stored as a map from strictly increasing
//! index tuples `(i1 < ... < ip)` to polynomial coefficients, so equal
//! multivectors have identical representations.
//!
//! # Sign convention of the Schouten bracket
//!
//! Write `∂_i` as an odd generator `θ_i`. For homogeneous `A` of degree `a`
//! and `B` of degree `b`,
//!
//! ```text
//! A • B  = Σ_i (A ∂⃖/∂θ_i) ∧ (∂B/∂x_i)
//! [A, B] = A • B − (−1)^{(a−1)(b−1)} B • A
//! ```
//!
//! where `∂⃖/∂θ_i` differentiates from the right (move `θ_i` to the end,
//! then delete it). With this choice:
//!
//! * on vector fields, `[X, Y]` is the usual Lie bracket;
//! * `[f, X] = −X(f)` for a function `f`;
//! * `[A, ·]` is a graded derivation of the wedge product:
//!   `[A, B ∧ C] = [A, B] ∧ C + (−1)^{(a−1)b} B ∧ [A, C]`;
//! * the linear model `Σ_i x_i ∂_{x_i} ∧ ∂_y` brackets to
//!   `[Π_lin, ∂_{x_i} ∧ ∂_{x_j}] = +2 ∂_{x_i} ∧ ∂_{x_j} ∧ ∂_y`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed};

use crate::algebra::{int, MultiPoly, Scalar};
use crate::error::{Error, Result};

/// Sorts `idx` in place and returns the permutation sign, or `None` on a
/// repeated index.
pub fn sort_with_sign(idx: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

/// Equality ignores the degree of zero multivectors: the bracket of two
/// functions has formal degree −1 and is stored as the zero function.
#[derive(Clone, Debug)]
pub struct Multivector {
    nvars: usize,
    degree: usize,
    comps: BTreeMap<Vec<usize>, MultiPoly>,
}

impl PartialEq for Multivector {
    fn eq(&self, other: &Multivector) -> bool {
        self.nvars == other.nvars
            && self.comps == other.comps
            && (self.degree == other.degree || self.comps.is_empty())
    }
}

impl Eq for Multivector {}

impl Multivector {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        Multivector {
            nvars,
            degree,
            comps: BTreeMap::new(),
        }
    }

    /// Degree-0 multivector.
    pub fn function(f: MultiPoly) -> Self {
        let mut m = Self::zero(f.nvars(), 0);
        m.add_component(Vec::new(), f);
        m
    }

    /// `f · ∂_{i1} ∧ ... ∧ ∂_{ip}` for arbitrary (0-based) indices; the
    /// permutation sign is absorbed and repeated indices give zero.
    pub fn monomial(f: MultiPoly, indices: &[usize]) -> Self {
        let nvars = f.nvars();
        let mut m = Self::zero(nvars, indices.len());
        m.push(indices, f);
        m
    }

    /// Constant-coefficient `∂_{i1} ∧ ... ∧ ∂_{ip}`.
    pub fn basis(nvars: usize, indices: &[usize]) -> Self {
        Self::monomial(MultiPoly::one(nvars), indices)
    }

    pub fn from_terms<I>(nvars: usize, degree: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<usize>, MultiPoly)>,
    {
        let mut m = Self::zero(nvars, degree);
        for (idx, f) in terms {
            assert_eq!(idx.len(), degree, "index tuple length");
            m.push(&idx, f);
        }
        m
    }

    fn push(&mut self, indices: &[usize], f: MultiPoly) {
        assert_eq!(f.nvars(), self.nvars, "coefficient nvars");
        assert!(
            indices.iter().all(|&i| i < self.nvars),
            "index out of range"
        );
        let mut idx = indices.to_vec();
        if let Some(sign) = sort_with_sign(&mut idx) {
            let f = if sign < 0 { -f } else { f };
            self.add_component(idx, f);
        }
    }

    fn add_component(&mut self, idx: Vec<usize>, f: MultiPoly) {
        if f.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.comps.entry(idx) {
            Entry::Vacant(v) => {
                v.insert(f);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &f;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Nonzero components, ordered by index tuple.
    pub fn components(&self) -> impl Iterator<Item = (&[usize], &MultiPoly)> + '_ {
        self.comps.iter().map(|(k, v)| (k.as_slice(), v))
    }

    /// Coefficient of `∂_{i1} ∧ ... ∧ ∂_{ip}` for indices in any order
    /// (antisymmetric in the indices).
    pub fn component(&self, indices: &[usize]) -> MultiPoly {
        let mut idx = indices.to_vec();
        match sort_with_sign(&mut idx) {
            Some(sign) => {
                let c = self
                    .comps
                    .get(&idx)
                    .cloned()
                    .unwrap_or_else(|| MultiPoly::zero(self.nvars));
                if sign < 0 {
                    -c
                } else {
                    c
                }
            }
            None => MultiPoly::zero(self.nvars),
        }
    }

    /// True when every coefficient is homogeneous of degree equal to the
    /// multivector degree, i.e. the field commutes with the Euler field and
    /// descends to projective space.
    pub fn descends_to_projective(&self) -> bool {
        self.comps
            .values()
            .all(|f| f.is_homogeneous(self.degree as u32))
    }

    pub fn map_coefficients(
        &self,
        nvars: usize,
        mut f: impl FnMut(&MultiPoly) -> MultiPoly,
    ) -> Multivector {
        let mut out = Self::zero(nvars, self.degree);
        for (k, v) in &self.comps {
            out.add_component(k.clone(), f(v));
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Multivector {
        self.map_coefficients(self.nvars, |p| p.scale(c))
    }

    pub fn mul_function(&self, f: &MultiPoly) -> Multivector {
        self.map_coefficients(self.nvars, |p| p * f)
    }

    fn check_same(&self, other: &Multivector) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::NvarsMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    /// Sum of two multivectors of the same degree; a zero operand is
    /// accepted at any degree.
    pub fn try_add(&self, other: &Multivector) -> Result<Multivector> {
        self.check_same(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.degree != other.degree {
            return Err(Error::WrongMultivectorDegree {
                expected: self.degree,
                got: other.degree,
            });
        }
        let mut out = self.clone();
        for (k, v) in &other.comps {
            out.add_component(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Multivector) -> Result<Multivector> {
        self.try_add(&other.scale(&int(-1)))
    }

    /// Exterior product; graded commutative and associative.
    pub fn wedge(&self, other: &Multivector) -> Result<Multivector> {
        self.check_same(other)?;
        let degree = self.degree + other.degree;
        let mut out = Self::zero(self.nvars, degree);
        if degree > self.nvars {
            return Ok(out);
        }
        for (i, a) in &self.comps {
            for (j, b) in &other.comps {
                if let Some((idx, sign)) = merge(i, j) {
                    let c = a * b;
                    out.add_component(idx, if sign < 0 { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Right derivative with respect to `θ_i`.
    fn right_theta_derivative(&self, i: usize) -> Multivector {
        let mut out = Self::zero(self.nvars, self.degree.saturating_sub(1));
        if self.degree == 0 {
            return out;
        }
        for (idx, f) in &self.comps {
            if let Some(pos) = idx.iter().position(|&k| k == i) {
                let mut rest = idx.clone();
                rest.remove(pos);
                let c = if (self.degree - 1 - pos) % 2 == 1 {
                    -f
                } else {
                    f.clone()
                };
                out.add_component(rest, c);
            }
        }
        out
    }

    fn coefficient_derivative(&self, i: usize) -> Multivector {
        self.map_coefficients(self.nvars, |p| p.diff(i))
    }

    fn bullet(&self, other: &Multivector) -> Multivector {
        let degree = (self.degree + other.degree).saturating_sub(1);
        let mut acc = Self::zero(self.nvars, degree);
        if self.degree == 0 {
            return acc;
        }
        for i in 0..self.nvars {
            let l = self.right_theta_derivative(i);
            if l.is_zero() {
                continue;
            }
            let r = other.coefficient_derivative(i);
            if r.is_zero() {
                continue;
            }
            let w = l.wedge(&r).expect("same nvars");
            for (k, v) in w.comps {
                acc.add_component(k, v);
            }
        }
        acc
    }

    /// Schouten–Nijenhuis bracket; see the module docs for the sign
    /// convention.
    pub fn schouten(&self, other: &Multivector) -> Result<Multivector> {
        self.check_same(other)?;
        let (a, b) = (self.degree as i64, other.degree as i64);
        let degree = (a + b - 1).max(0) as usize;
        if a + b == 0 {
            return Ok(Self::zero(self.nvars, 0));
        }
        let mut out = self.bullet(other);
        let rev = other.bullet(self);
        let sign_plus = ((a - 1) * (b - 1)).rem_euclid(2) == 1;
        for (k, v) in rev.comps {
            out.add_component(k, if sign_plus { v } else { -v });
        }
        out.degree = degree;
        Ok(out)
    }

    /// `E ∧ self` where `E = Σ x_i ∂_i` is the Euler field.
    pub fn euler_wedge(&self) -> Multivector {
        euler_field(self.nvars).wedge(self).expect("same nvars")
    }

    /// Dehomogenizes a field that descends to projective space into the
    /// affine chart `x_k = 1` with coordinates `y_j = x_j / x_k` for the
    /// remaining indices, kept in their original order.
    ///
    /// Degree-`p` components transform by
    /// `T(dy_I) = T_I − Σ_r x_{i_r} T_{I[i_r → k]}` evaluated at `x_k = 1`.
    pub fn dehomogenize(&self, chart: usize) -> Result<Multivector> {
        if chart >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: chart,
                nvars: self.nvars,
            });
        }
        if !self.descends_to_projective() {
            return Err(Error::NotHomogeneous {
                expected: self.degree as u32,
            });
        }
        let n = self.nvars;
        let others: Vec<usize> = (0..n).filter(|&j| j != chart).collect();
        let images: Vec<MultiPoly> = (0..n)
            .map(|j| match others.iter().position(|&o| o == j) {
                Some(pos) => MultiPoly::var(n - 1, pos),
                None => MultiPoly::one(n - 1),
            })
            .collect();
        let mut out = Self::zero(n - 1, self.degree);
        for tuple in increasing_tuples(n - 1, self.degree) {
            let idx: Vec<usize> = tuple.iter().map(|&t| others[t]).collect();
            let mut c = self.component(&idx);
            for r in 0..idx.len() {
                let mut swapped = idx.clone();
                swapped[r] = chart;
                let t = self.component(&swapped);
                if !t.is_zero() {
                    c -= &(&MultiPoly::var(n, idx[r]) * &t);
                }
            }
            let c = c.compose(&images).expect("image count");
            out.add_component(tuple, c);
        }
        Ok(out)
    }
}

/// Merges two sorted disjoint index tuples, returning the sorted union and
/// the sign of the shuffle.
fn merge(i: &[usize], j: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut out = Vec::with_capacity(i.len() + j.len());
    let (mut a, mut b) = (0, 0);
    let mut inversions = 0usize;
    while a < i.len() || b < j.len() {
        if b == j.len() || (a < i.len() && i[a] < j[b]) {
            out.push(i[a]);
            a += 1;
        } else if a == i.len() || j[b] < i[a] {
            inversions += i.len() - a;
            out.push(j[b]);
            b += 1;
        } else {
            return None;
        }
    }
    Some((out, if inversions % 2 == 0 { 1 } else { -1 }))
}

/// All strictly increasing `p`-tuples from `0..n`.
pub fn increasing_tuples(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, p, &mut Vec::new(), &mut out);
    out
}

/// Euler vector field `Σ x_i ∂_i`.
pub fn euler_field(nvars: usize) -> Multivector {
    Multivector::from_terms(
        nvars,
        1,
        (0..nvars).map(|i| (vec![i], MultiPoly::var(nvars, i))),
    )
}

/// The standard volume form `dx1 ∧ ... ∧ dxn` up to an orientation sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VolumeForm {
    pub nvars: usize,
    pub orientation: i8,
}

impl VolumeForm {
    pub fn standard(nvars: usize) -> Self {
        VolumeForm {
            nvars,
            orientation: 1,
        }
    }

    /// Pairing of a top-degree multivector with the form.
    pub fn contract_top(&self, top: &Multivector) -> Result<MultiPoly> {
        if top.nvars != self.nvars {
            return Err(Error::NvarsMismatch {
                left: self.nvars,
                right: top.nvars,
            });
        }
        if top.degree != self.nvars {
            return Err(Error::WrongMultivectorDegree {
                expected: self.nvars,
                got: top.degree,
            });
        }
        let all: Vec<usize> = (0..self.nvars).collect();
        let c = top.component(&all);
        Ok(if self.orientation < 0 { -c } else { c })
    }
}

/// Scalar fixing the identification of trivectors on P³ with quartics.
///
/// The Schouten bracket of the Jacobian bivectors of `(x1², x1x2)` and
/// `(x1x3, x1x4)` must map to the quartic `8·x1⁴`. Under the sign convention
/// of this module, `E ∧ [Π1, Π2] = −8·x1⁴ ∂1∧∂2∧∂3∧∂4`, so the constant is −1.
pub const TRIVECTOR_QUARTIC_CALIBRATION: i64 = -1;

/// Quartic attached to a trivector on 4-space with cubic coefficients: the
/// coefficient of `E ∧ T` against `vol`, times
/// [`TRIVECTOR_QUARTIC_CALIBRATION`]. Trivectors of the form `E ∧ β` map to
/// zero.
///
/// Coefficients of any common degree `d` are accepted (the result then has
/// degree `d + 1`); mixed degrees are rejected.
pub fn quartic_from_trivector(t: &Multivector, vol: &VolumeForm) -> Result<MultiPoly> {
    if t.nvars != 4 {
        return Err(Error::NvarsMismatch {
            left: 4,
            right: t.nvars,
        });
    }
    if t.degree != 3 {
        return Err(Error::WrongMultivectorDegree {
            expected: 3,
            got: t.degree,
        });
    }
    let d = t
        .comps
        .values()
        .next()
        .and_then(MultiPoly::total_degree)
        .unwrap_or(3);
    if !t.comps.values().all(|c| c.is_homogeneous(d)) {
        return Err(Error::NotHomogeneous { expected: d });
    }
    let top = t.euler_wedge();
    Ok(vol
        .contract_top(&top)?
        .scale(&int(TRIVECTOR_QUARTIC_CALIBRATION)))
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (idx, c)) in self.comps.iter().enumerate() {
            let wedge = idx
                .iter()
                .map(|i| format!("d{}", i + 1))
                .collect::<Vec<_>>()
                .join("^");
            let single = c.len() == 1;
            let (neg, body) = match c.terms().next() {
                Some((_, lc)) if single && lc.is_negative() => (true, -c),
                _ => (false, c.clone()),
            };
            if k > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            let coeff = if single {
                body.to_string()
            } else {
                format!("({body})")
            };
            if idx.is_empty() {
                write!(f, "{coeff}")?;
            } else if single
                && body
                    .leading_term()
                    .is_some_and(|(m, a)| m.is_one() && a.is_one())
            {
                write!(f, "{wedge}")?;
            } else {
                write!(f, "{coeff} {wedge}")?;
            }
        }
        Ok(())
    }
}
