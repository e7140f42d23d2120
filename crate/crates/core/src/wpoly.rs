//! Weighted-homogeneous polynomials over GF(q): monomial bases, parsing,
//! evaluation, the substitutions behind pi_i^* and sigma_i^j, and the explicit
//! extremal constructions.

use crate::gf::{lcm, Field, FieldError};
use crate::wps::WeightSystem;
use serde_json::json;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("mixed weighted degrees {0:?}; the polynomial is not homogeneous")]
    MixedDegrees(Vec<u64>),
    #[error("variable index {0} exceeds dimension {1}")]
    VarIndex(usize, usize),
    #[error("bad coefficient: {0}")]
    BadCoeff(FieldError),
    #[error("indices r={0} and s={1} must be distinct and within range")]
    BadIndices(usize, usize),
    #[error("degree {0} is not a multiple of lcm(a_r,a_s) = {1}")]
    DegreeNotMultiple(u64, u64),
    #[error("expected {0} pairs, got {1}")]
    WrongPairCount(u64, usize),
    #[error("{0} factors exceed the q+1 = {1} distinct points of P^1(F_q)")]
    TooManyFactors(u64, u64),
    #[error("duplicate pair at position {0}: the (alpha_i : beta_i) must be distinct in P^1")]
    DuplicatePair(usize),
    #[error("pair at position {0} is (0,0), which is not a point of P^1")]
    ZeroPair(usize),
    #[error("saturating polynomial needs the first two weights equal to 1")]
    NeedStraightStart,
    #[error("saturating polynomial needs degree d >= q+1, got d={0}, q={1}")]
    DegreeTooSmall(u64, u32),
}

/// An exponent tuple (e_0,...,e_n).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn weighted_degree(&self, w: &WeightSystem) -> u64 {
        self.0
            .iter()
            .zip(w.weights())
            .map(|(&e, &a)| e as u64 * a as u64)
            .sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }
}

/// A weighted-homogeneous polynomial as a finite monomial -> coefficient map.
/// Zero coefficients are never stored; the zero polynomial has an empty map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedPolynomial {
    weights: WeightSystem,
    degree: u64,
    terms: BTreeMap<Vec<u32>, u32>,
}

impl WeightedPolynomial {
    pub fn zero(weights: WeightSystem, degree: u64) -> WeightedPolynomial {
        WeightedPolynomial {
            weights,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Build from raw terms, checking homogeneity against the declared weights.
    pub fn from_terms(
        weights: WeightSystem,
        raw: impl IntoIterator<Item = (Vec<u32>, u32)>,
        field: &Field,
    ) -> Result<WeightedPolynomial, PolyError> {
        let mut terms: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
        let mut degrees: Vec<u64> = Vec::new();
        for (exps, coeff) in raw {
            if exps.len() != weights.weights().len() {
                return Err(PolyError::VarIndex(exps.len() - 1, weights.n()));
            }
            if coeff == 0 {
                continue;
            }
            let d = Monomial(exps.clone()).weighted_degree(&weights);
            if !degrees.contains(&d) {
                degrees.push(d);
            }
            let entry = terms.entry(exps).or_insert(0);
            *entry = field.add(*entry, coeff);
        }
        terms.retain(|_, &mut c| c != 0);
        degrees.sort_unstable();
        if degrees.len() > 1 {
            return Err(PolyError::MixedDegrees(degrees));
        }
        let degree = degrees.first().copied().unwrap_or(0);
        Ok(WeightedPolynomial {
            weights,
            degree,
            terms,
        })
    }

    /// Dense coefficient vector over a basis, used by the search stream.
    pub fn from_coeffs(
        weights: WeightSystem,
        degree: u64,
        basis: &[Monomial],
        coeffs: &[u32],
    ) -> WeightedPolynomial {
        let terms = basis
            .iter()
            .zip(coeffs)
            .filter(|(_, &c)| c != 0)
            .map(|(m, &c)| (m.0.clone(), c))
            .collect();
        WeightedPolynomial {
            weights,
            degree,
            terms,
        }
    }

    pub fn weights(&self) -> &WeightSystem {
        &self.weights
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, u32)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, exps: &[u32]) -> u32 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    /// Value at a coordinate vector, with 0^0 = 1.
    pub fn evaluate(&self, v: &[u32], field: &Field) -> u32 {
        let mut acc = 0u32;
        for (exps, &coeff) in &self.terms {
            let mut term = coeff;
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    if v[i] == 0 {
                        term = 0;
                        break;
                    }
                    term = field.mul(term, field.pow(v[i], e as i64));
                }
            }
            acc = field.add(acc, term);
        }
        acc
    }

    /// Multiply by a scalar.
    pub fn scale(&self, c: u32, field: &Field) -> WeightedPolynomial {
        if c == 0 {
            return WeightedPolynomial::zero(self.weights.clone(), self.degree);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, &a)| (m.clone(), field.mul(a, c)))
            .collect();
        WeightedPolynomial {
            weights: self.weights.clone(),
            degree: self.degree,
            terms,
        }
    }

    /// Product of two polynomials on the same weight system.
    pub fn mul(&self, other: &WeightedPolynomial, field: &Field) -> WeightedPolynomial {
        let mut terms: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                let exps: Vec<u32> = ma.iter().zip(mb).map(|(&x, &y)| x + y).collect();
                let entry = terms.entry(exps).or_insert(0);
                *entry = field.add(*entry, field.mul(ca, cb));
            }
        }
        terms.retain(|_, &mut c| c != 0);
        WeightedPolynomial {
            weights: self.weights.clone(),
            degree: self.degree + other.degree,
            terms,
        }
    }

    /// Stable text form, terms in basis (descending lexicographic) order.
    pub fn to_text(&self, field: &Field) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (exps, &coeff) in self.terms.iter().rev() {
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("X{i}")),
                    _ => factors.push(format!("X{i}^{e}")),
                }
            }
            let vars = factors.join("*");
            let piece = if vars.is_empty() {
                field.format_elem(coeff)
            } else if coeff == 1 {
                vars
            } else {
                format!("{}*{}", field.format_elem(coeff), vars)
            };
            if out.is_empty() {
                out = piece;
            } else {
                out = format!("{out} + {piece}");
            }
        }
        out
    }

    /// JSON form: {degree, weights, terms:[{exps, coeff}]}.
    pub fn to_json(&self, field: &Field) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .rev()
            .map(|(exps, &c)| json!({"exps": exps, "coeff": field.format_elem(c)}))
            .collect();
        json!({
            "degree": self.degree,
            "weights": self.weights.weights(),
            "terms": terms,
        })
    }
}

/// All exponent tuples of weighted degree d, in descending lexicographic order.
pub fn monomial_basis(w: &WeightSystem, d: u64) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(w.weights().len());
    gen_basis(w.weights(), d, &mut prefix, &mut out);
    out
}

fn gen_basis(weights: &[u32], remaining: u64, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if weights.len() == 1 {
        if remaining.is_multiple_of(weights[0] as u64) {
            let e = remaining / weights[0] as u64;
            if e <= u32::MAX as u64 {
                prefix.push(e as u32);
                out.push(Monomial(prefix.clone()));
                prefix.pop();
            }
        }
        return;
    }
    let a = weights[0] as u64;
    let max = remaining / a;
    for e in (0..=max).rev() {
        prefix.push(e as u32);
        gen_basis(&weights[1..], remaining - e * a, prefix, out);
        prefix.pop();
    }
}

/// Homogeneity verdict for a raw term map, with the numeric scaling oracle.
#[derive(Debug, Clone)]
pub struct HomogeneityCheck {
    pub homogeneous: bool,
    pub degree: Option<u64>,
    /// Distinct weighted degrees seen, sorted; the witness on failure.
    pub degrees: Vec<u64>,
    /// Result of checking F(lambda^{a_i} x_i) = lambda^d F(x) on a
    /// deterministic point sample; `None` when not applicable.
    pub numeric_ok: Option<bool>,
}

/// Symbolic homogeneity test plus the numeric scaling oracle.
pub fn is_homogeneous(
    raw: &BTreeMap<Vec<u32>, u32>,
    w: &WeightSystem,
    field: &Field,
) -> HomogeneityCheck {
    let mut degrees: Vec<u64> = raw
        .iter()
        .filter(|(_, &c)| c != 0)
        .map(|(m, _)| Monomial(m.clone()).weighted_degree(w))
        .collect();
    degrees.sort_unstable();
    degrees.dedup();
    if degrees.len() > 1 {
        return HomogeneityCheck {
            homogeneous: false,
            degree: None,
            degrees,
            numeric_ok: None,
        };
    }
    if degrees.is_empty() {
        // zero map: homogeneous by convention, degree undefined
        return HomogeneityCheck {
            homogeneous: true,
            degree: None,
            degrees,
            numeric_ok: None,
        };
    }
    let d = degrees[0];
    let poly = WeightedPolynomial {
        weights: w.clone(),
        degree: d,
        terms: raw.clone().into_iter().filter(|&(_, c)| c != 0).collect(),
    };
    let m = w.weights().len();
    let q = field.q() as u64;
    let total = q.saturating_pow(m as u32);
    let sample = total.min(32);
    let stride = (total / sample).max(1);
    let mut ok = true;
    'outer: for s in 0..sample {
        let mut code = s * stride;
        let mut v = vec![0u32; m];
        for i in (0..m).rev() {
            v[i] = field.elem_from_key((code % q) as u32);
            code /= q;
        }
        let base = poly.evaluate(&v, field);
        for lambda in field.nonzero_elements() {
            let scaled: Vec<u32> = v
                .iter()
                .zip(w.weights())
                .map(|(&x, &a)| field.mul(field.pow(lambda, a as i64), x))
                .collect();
            if poly.evaluate(&scaled, field) != field.mul(field.pow(lambda, d as i64), base) {
                ok = false;
                break 'outer;
            }
        }
    }
    HomogeneityCheck {
        homogeneous: true,
        degree: Some(d),
        degrees,
        numeric_ok: Some(ok),
    }
}

/// Parse `term (+|- term)*`, term = `[coeff*] X<i>[^<e>] (* factor)*`.
pub fn parse_poly(
    text: &str,
    w: &WeightSystem,
    field: &Field,
) -> Result<WeightedPolynomial, PolyError> {
    let n = w.n();
    let mut raw: Vec<(Vec<u32>, u32)> = Vec::new();
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(PolyError::Syntax("empty input".to_string()));
    }
    // split into signed terms
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut sign = false;
    let mut first = true;
    for (idx, ch) in cleaned.chars().enumerate() {
        if (ch == '+' || ch == '-') && !first {
            // a sign following '*' or '^' would be mid-token; reject
            let prev = cleaned.chars().nth(idx - 1).unwrap();
            if prev == '*' || prev == '^' || prev == '+' || prev == '-' {
                return Err(PolyError::Syntax(format!("unexpected `{ch}`")));
            }
            terms.push((sign, std::mem::take(&mut cur)));
            sign = ch == '-';
            continue;
        }
        if first && (ch == '+' || ch == '-') {
            sign = ch == '-';
            first = false;
            continue;
        }
        first = false;
        cur.push(ch);
    }
    terms.push((sign, cur));

    for (negate, term) in terms {
        if term.is_empty() {
            return Err(PolyError::Syntax("empty term".to_string()));
        }
        let mut coeff = field.one();
        let mut exps = vec![0u32; n + 1];
        for factor in term.split('*') {
            if factor.is_empty() {
                return Err(PolyError::Syntax("empty factor".to_string()));
            }
            if let Some(rest) = factor.strip_prefix('X') {
                let (i_str, e_str) = match rest.split_once('^') {
                    Some((i, e)) => (i, Some(e)),
                    None => (rest, None),
                };
                let i: usize = i_str
                    .parse()
                    .map_err(|_| PolyError::Syntax(format!("bad variable `{factor}`")))?;
                if i > n {
                    return Err(PolyError::VarIndex(i, n));
                }
                let e: u32 = match e_str {
                    Some(e) => e
                        .parse()
                        .map_err(|_| PolyError::Syntax(format!("bad exponent `{factor}`")))?,
                    None => 1,
                };
                exps[i] += e;
            } else {
                let c = field.parse_elem(factor).map_err(PolyError::BadCoeff)?;
                coeff = field.mul(coeff, c);
            }
        }
        if negate {
            coeff = field.neg(coeff);
        }
        raw.push((exps, coeff));
    }
    WeightedPolynomial::from_terms(w.clone(), raw, field)
}

/// pi_i^* F: substitute X_i <- X_i^{a_i}. Lives on the weight system whose
/// i-th weight is 1, with the same degree.
pub fn pullback(f: &WeightedPolynomial, i: usize) -> WeightedPolynomial {
    let a = f.weights().weight(i);
    let upstairs = f.weights().with_weight(i, 1);
    let terms: BTreeMap<Vec<u32>, u32> = f
        .terms
        .iter()
        .map(|(m, &c)| {
            let mut e = m.clone();
            e[i] *= a;
            (e, c)
        })
        .collect();
    WeightedPolynomial {
        weights: upstairs,
        degree: f.degree,
        terms,
    }
}

/// F composed with sigma_i^j: each coefficient is multiplied by delta^{j e_i}.
pub fn twist(f: &WeightedPolynomial, i: usize, j: u32, field: &Field) -> WeightedPolynomial {
    let terms: BTreeMap<Vec<u32>, u32> = f
        .terms
        .iter()
        .map(|(m, &c)| {
            let factor = field.pow(field.delta(), j as i64 * m[i] as i64);
            (m.clone(), field.mul(c, factor))
        })
        .collect();
    WeightedPolynomial {
        weights: f.weights.clone(),
        degree: f.degree,
        terms,
    }
}

/// The lower-bound product: prod (alpha_i X_r^{a_rs/a_r} - beta_i X_s^{a_rs/a_s})
/// over distinct (alpha_i : beta_i) in P^1(F_q), with a_rs = lcm(a_r, a_s).
pub fn product_of_forms(
    pairs: &[(u32, u32)],
    r: usize,
    s: usize,
    w: &WeightSystem,
    d: u64,
    field: &Field,
) -> Result<WeightedPolynomial, PolyError> {
    let n = w.n();
    if r == s || r > n || s > n {
        return Err(PolyError::BadIndices(r, s));
    }
    let a_rs = lcm(w.weight(r) as u64, w.weight(s) as u64);
    if !d.is_multiple_of(a_rs) {
        return Err(PolyError::DegreeNotMultiple(d, a_rs));
    }
    let m = d / a_rs;
    if m > field.q() as u64 + 1 {
        return Err(PolyError::TooManyFactors(m, field.q() as u64 + 1));
    }
    if pairs.len() as u64 != m {
        return Err(PolyError::WrongPairCount(m, pairs.len()));
    }
    // normalize each pair as a point of P^1 and require distinctness
    let mut seen: Vec<(u32, u32)> = Vec::new();
    for (idx, &(alpha, beta)) in pairs.iter().enumerate() {
        if alpha == 0 && beta == 0 {
            return Err(PolyError::ZeroPair(idx));
        }
        let normal = if alpha != 0 {
            (1, field.div(beta, alpha))
        } else {
            (0, 1)
        };
        if seen.contains(&normal) {
            return Err(PolyError::DuplicatePair(idx));
        }
        seen.push(normal);
    }

    let er = (a_rs / w.weight(r) as u64) as u32;
    let es = (a_rs / w.weight(s) as u64) as u32;
    let mut acc = WeightedPolynomial {
        weights: w.clone(),
        degree: 0,
        terms: BTreeMap::from([(vec![0u32; n + 1], 1u32)]),
    };
    // build each factor from the normalized pair: (1:beta) gives
    // X_r^{er} - beta X_s^{es}, the point at infinity (0:1) gives X_s^{es}
    for &(alpha, beta) in &seen {
        let mut terms: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
        if alpha != 0 {
            let mut e = vec![0u32; n + 1];
            e[r] = er;
            terms.insert(e, alpha);
            if beta != 0 {
                let mut e = vec![0u32; n + 1];
                e[s] = es;
                terms.insert(e, field.neg(beta));
            }
        } else {
            let mut e = vec![0u32; n + 1];
            e[s] = es;
            terms.insert(e, beta);
        }
        let factor = WeightedPolynomial {
            weights: w.clone(),
            degree: a_rs,
            terms,
        };
        acc = acc.mul(&factor, field);
    }
    Ok(acc)
}

/// The saturating polynomial X_0^{d-q-1} (X_0^q X_1 - X_0 X_1^q), whose zero
/// set is the whole space. Needs a_0 = a_1 = 1 and d >= q+1.
pub fn saturating_poly(
    d: u64,
    w: &WeightSystem,
    field: &Field,
) -> Result<WeightedPolynomial, PolyError> {
    if w.weight(0) != 1 || w.weight(1) != 1 {
        return Err(PolyError::NeedStraightStart);
    }
    let q = field.q();
    if d < q as u64 + 1 {
        return Err(PolyError::DegreeTooSmall(d, q));
    }
    let mut t1 = vec![0u32; w.weights().len()];
    t1[0] = (d - 1) as u32;
    t1[1] = 1;
    let mut t2 = vec![0u32; w.weights().len()];
    t2[0] = (d - q as u64) as u32;
    t2[1] = q;
    WeightedPolynomial::from_terms(w.clone(), [(t1, 1u32), (t2, field.neg(1))], field)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[u32]) -> WeightSystem {
        WeightSystem::new(v.to_vec()).unwrap()
    }

    fn exps(m: &[Monomial]) -> Vec<Vec<u32>> {
        m.iter().map(|x| x.0.clone()).collect()
    }

    #[test]
    fn basis_examples() {
        assert_eq!(
            exps(&monomial_basis(&w(&[1, 1, 2]), 2)),
            vec![vec![2, 0, 0], vec![1, 1, 0], vec![0, 2, 0], vec![0, 0, 1]]
        );
        assert_eq!(
            exps(&monomial_basis(&w(&[2, 3]), 6)),
            vec![vec![3, 0], vec![0, 2]]
        );
        assert!(monomial_basis(&w(&[2, 3]), 1).is_empty());
    }

    #[test]
    fn basis_size_matches_binomial_for_straight_weights() {
        let ws = w(&[1, 1, 1]);
        for d in 0..6u64 {
            let expect = (d + 1) * (d + 2) / 2;
            assert_eq!(monomial_basis(&ws, d).len() as u64, expect);
        }
    }

    #[test]
    fn parse_examples() {
        let f3 = Field::new(3, 1).unwrap();
        let p = parse_poly("X0^3*X1 - X0*X1^3", &w(&[1, 1]), &f3).unwrap();
        assert_eq!(p.degree(), 4);
        assert_eq!(p.term_count(), 2);

        let err = parse_poly("X0^2*X1 + 2*X2", &w(&[1, 1, 2]), &f3).unwrap_err();
        assert_eq!(err, PolyError::MixedDegrees(vec![2, 3]));

        let f5 = Field::new(5, 1).unwrap();
        let p = parse_poly("X0 - X1^2", &w(&[2, 1]), &f5).unwrap();
        assert_eq!(p.degree(), 2);
    }

    #[test]
    fn parse_rejects_garbage() {
        let f = Field::new(3, 1).unwrap();
        assert!(parse_poly("X0 + + X1", &w(&[1, 1]), &f).is_err());
        assert!(parse_poly("X5", &w(&[1, 1]), &f).is_err());
        assert!(parse_poly("7*X0", &w(&[1, 1]), &f).is_err());
        assert!(parse_poly("", &w(&[1, 1]), &f).is_err());
    }

    #[test]
    fn evaluate_examples() {
        let f3 = Field::new(3, 1).unwrap();
        let p = parse_poly("X0*X1", &w(&[1, 1]), &f3).unwrap();
        assert_eq!(p.evaluate(&[1, 2], &f3), 2);

        let f2 = Field::new(2, 1).unwrap();
        let p = parse_poly("X0^3*X1 - X0*X1^3", &w(&[1, 1]), &f2).unwrap();
        assert_eq!(p.evaluate(&[1, 1], &f2), 0);

        let f5 = Field::new(5, 1).unwrap();
        let p = parse_poly("X0 - X1^2", &w(&[2, 1]), &f5).unwrap();
        assert_eq!(p.evaluate(&[4, 2], &f5), 0);
    }

    #[test]
    fn pullback_examples() {
        let f5 = Field::new(5, 1).unwrap();
        let p = parse_poly("X0 - X1^2", &w(&[2, 1]), &f5).unwrap();
        let pb = pullback(&p, 0);
        assert_eq!(pb.weights().weights(), &[1, 1]);
        assert_eq!(pb, parse_poly("X0^2 - X1^2", &w(&[1, 1]), &f5).unwrap());

        let f3 = Field::new(3, 1).unwrap();
        let p = parse_poly("X2", &w(&[1, 1, 2]), &f3).unwrap();
        let pb = pullback(&p, 2);
        assert_eq!(pb, parse_poly("X2^2", &w(&[1, 1, 1]), &f3).unwrap());

        let p = parse_poly("X0*X1", &w(&[1, 2]), &f3).unwrap();
        assert_eq!(pullback(&p, 0).terms, p.terms);
    }

    #[test]
    fn twist_examples() {
        let f3 = Field::new(3, 1).unwrap();
        let ws = w(&[1, 1]);
        let p = parse_poly("X0*X1", &ws, &f3).unwrap();
        assert_eq!(twist(&p, 1, 1, &f3), p.scale(2, &f3));
        assert_eq!(twist(&p, 1, 0, &f3), p);

        let f5 = Field::new(5, 1).unwrap();
        let p = parse_poly("X1^2", &w(&[1, 1]), &f5).unwrap();
        assert_eq!(twist(&p, 1, 1, &f5), p.scale(4, &f5));
    }

    #[test]
    fn twist_composes_and_has_order_dividing_q_minus_1() {
        let f5 = Field::new(5, 1).unwrap();
        let ws = w(&[1, 2]);
        let p = parse_poly("X0^2 - X1", &ws, &f5).unwrap();
        for i in 0..2 {
            for j1 in 0..5u32 {
                for j2 in 0..5u32 {
                    assert_eq!(
                        twist(&twist(&p, i, j1, &f5), i, j2, &f5),
                        twist(&p, i, j1 + j2, &f5)
                    );
                }
            }
            assert_eq!(twist(&p, i, 4, &f5), p);
        }
    }

    #[test]
    fn product_of_forms_examples() {
        let f3 = Field::new(3, 1).unwrap();
        let ws = w(&[1, 1, 2]);
        let p = product_of_forms(&[(1, 0), (0, 1)], 0, 1, &ws, 2, &f3).unwrap();
        assert_eq!(p, parse_poly("X0*X1", &ws, &f3).unwrap());

        let f5 = Field::new(5, 1).unwrap();
        let ws = w(&[2, 3]);
        let p = product_of_forms(&[(1, 1)], 0, 1, &ws, 6, &f5).unwrap();
        assert_eq!(p, parse_poly("X0^3 - X1^2", &ws, &f5).unwrap());

        let err = product_of_forms(&[(1, 1), (2, 2)], 0, 1, &w(&[1, 1]), 2, &f5).unwrap_err();
        assert_eq!(err, PolyError::DuplicatePair(1));
    }

    #[test]
    fn product_vanishes_iff_some_factor_does() {
        let f3 = Field::new(3, 1).unwrap();
        let ws = w(&[1, 1, 2]);
        let pairs = [(1u32, 0u32), (1, 1), (0, 1)];
        let p = product_of_forms(&pairs, 0, 1, &ws, 3, &f3).unwrap();
        for x0 in 0..3 {
            for x1 in 0..3 {
                for x2 in 0..3 {
                    let v = [x0, x1, x2];
                    let factor_zero = pairs.iter().any(|&(a, b)| {
                        f3.sub(f3.mul(a, x0), f3.mul(b, x1)) == 0
                    });
                    assert_eq!(p.evaluate(&v, &f3) == 0, factor_zero);
                }
            }
        }
    }

    #[test]
    fn saturating_examples() {
        let f2 = Field::new(2, 1).unwrap();
        let p = saturating_poly(4, &w(&[1, 1, 2]), &f2).unwrap();
        assert_eq!(p, parse_poly("X0^3*X1 - X0^2*X1^2", &w(&[1, 1, 2]), &f2).unwrap());

        let p = saturating_poly(3, &w(&[1, 1]), &f2).unwrap();
        assert_eq!(p, parse_poly("X0^2*X1 - X0*X1^2", &w(&[1, 1]), &f2).unwrap());

        let f3 = Field::new(3, 1).unwrap();
        assert_eq!(
            saturating_poly(2, &w(&[1, 1]), &f3).unwrap_err(),
            PolyError::DegreeTooSmall(2, 3)
        );
    }

    #[test]
    fn homogeneity_check() {
        let f3 = Field::new(3, 1).unwrap();
        let raw: BTreeMap<Vec<u32>, u32> =
            BTreeMap::from([(vec![2, 0], 1u32), (vec![0, 1], 2)]);
        let c = is_homogeneous(&raw, &w(&[1, 2]), &f3);
        assert!(c.homogeneous);
        assert_eq!(c.degree, Some(2));
        assert_eq!(c.numeric_ok, Some(true));

        let c = is_homogeneous(&raw, &w(&[1, 1]), &f3);
        assert!(!c.homogeneous);
        assert_eq!(c.degrees, vec![1, 2]);

        let c = is_homogeneous(&BTreeMap::new(), &w(&[1, 1]), &f3);
        assert!(c.homogeneous);
        assert_eq!(c.degree, None);
    }

    #[test]
    fn pullback_commutes_with_evaluation() {
        // evaluate(pullback(f,i), v) = evaluate(f, pi_i(v)) exhaustively
        let f4 = Field::new(2, 2).unwrap();
        let ws = w(&[1, 2, 3]);
        let f = parse_poly("X0^6 + X1^3 + X2^2", &ws, &f4).unwrap();
        for i in 0..3 {
            let pb = pullback(&f, i);
            let a = ws.weight(i);
            for code in 0..64u32 {
                let v = [code % 4, (code / 4) % 4, code / 16];
                let mut img = v;
                img[i] = f4.pow(v[i], a as i64);
                assert_eq!(pb.evaluate(&v, &f4), f.evaluate(&img, &f4));
            }
        }
    }
}
