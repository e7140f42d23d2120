//! Rational points of the weighted projective space P(a_0,...,a_n) over GF(q):
//! canonical representatives, enumeration, and representative orbits.
//!
//! Two nonzero coordinate vectors represent the same rational point exactly
//! when they lie in one orbit of the scalar action restricted to the stratum
//! of their common support. On a stratum with support I, gcd d_I and reduced
//! weights b_i = a_i/d_I, the canonical representative is the unique one with
//! prod_{i in I} x_i^{u_i} = 1 for a fixed Bezout combination
//! sum_{i in I} u_i b_i = 1.

use crate::gf::{egcd, gcd, Field};
use thiserror::Error;

/// Default cap on the number of affine vectors visited by enumeration.
pub const DEFAULT_ENUM_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WpsError {
    #[error("weights must be positive")]
    BadWeight,
    #[error("at least two weights are required")]
    TooFewWeights,
    #[error("the zero vector does not represent a projective point")]
    ZeroVector,
    #[error("coordinate count {0} does not match weight count {1}")]
    DimensionMismatch(usize, usize),
    #[error("enumeration of {0} vectors exceeds the budget of {1}")]
    BudgetExceeded(u64, u64),
}

/// The weight tuple (a_0,...,a_n).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightSystem {
    weights: Vec<u32>,
}

impl WeightSystem {
    pub fn new(weights: Vec<u32>) -> Result<WeightSystem, WpsError> {
        if weights.len() < 2 {
            return Err(WpsError::TooFewWeights);
        }
        if weights.contains(&0) {
            return Err(WpsError::BadWeight);
        }
        Ok(WeightSystem { weights })
    }

    /// Dimension n of P(a_0,...,a_n).
    pub fn n(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.weights[i]
    }

    /// Same system with the i-th weight replaced (the upstairs space of pi_i).
    pub fn with_weight(&self, i: usize, a: u32) -> WeightSystem {
        let mut w = self.weights.clone();
        w[i] = a;
        WeightSystem { weights: w }
    }

    pub fn is_straight(&self) -> bool {
        self.weights.iter().all(|&a| a == 1)
    }

    /// r_i = gcd(a_i, q-1).
    pub fn r(&self, i: usize, field: &Field) -> u32 {
        field.r_of(self.weights[i])
    }
}

impl std::fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// p_n = q^n + ... + q + 1 for n >= 0, zero for n < 0.
pub fn pn(n: i64, q: u64) -> u64 {
    if n < 0 {
        return 0;
    }
    (0..=n as u32).map(|m| q.pow(m)).sum()
}

/// The Bezout-normalized representative of a rational point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalPoint {
    coords: Vec<u32>,
    support: Vec<usize>,
    /// d_I = gcd(a_i, i in support).
    pub stratum_gcd: u32,
    /// b_i = a_i / d_I, one entry per support index.
    pub reduced_weights: Vec<u32>,
    /// Bezout coefficients with sum u_i b_i = 1, one entry per support index.
    pub bezout: Vec<i64>,
}

impl CanonicalPoint {
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    /// Whether this is the distinguished point O_i.
    pub fn is_origin_at(&self, i: usize) -> bool {
        self.support == [i]
    }

    /// `[x0:x1:...:xn]` using the field's element syntax.
    pub fn format(&self, field: &Field) -> String {
        let parts: Vec<String> = self.coords.iter().map(|&x| field.format_elem(x)).collect();
        format!("[{}]", parts.join(":"))
    }

    /// Coordinates as element strings, for JSON reports.
    pub fn coord_strings(&self, field: &Field) -> Vec<String> {
        self.coords.iter().map(|&x| field.format_elem(x)).collect()
    }

    /// Packed sort key: coordinates mapped through the canonical element
    /// order, coordinate 0 most significant.
    pub fn sort_key(&self, field: &Field) -> u64 {
        encode(&self.coords, field)
    }
}

fn encode(coords: &[u32], field: &Field) -> u64 {
    let q = field.q() as u64;
    coords
        .iter()
        .fold(0u64, |acc, &x| acc * q + field.ord_key(x) as u64)
}

/// Deterministic Bezout coefficients for coprime b: a left-to-right extended
/// Euclid fold over the support order.
fn bezout_chain(b: &[u32]) -> Vec<i64> {
    let mut u: Vec<i64> = vec![1];
    let mut g = b[0] as i64;
    for &bi in &b[1..] {
        if g == 1 {
            u.push(0);
            continue;
        }
        let (g2, x, y) = egcd(g, bi as i64);
        for ui in u.iter_mut() {
            *ui *= x;
        }
        u.push(y);
        g = g2;
    }
    debug_assert_eq!(g, 1);
    u
}

/// Map v to the canonical representative of its rational point.
pub fn canonicalize(
    v: &[u32],
    w: &WeightSystem,
    field: &Field,
) -> Result<CanonicalPoint, WpsError> {
    if v.len() != w.weights().len() {
        return Err(WpsError::DimensionMismatch(v.len(), w.weights().len()));
    }
    let support: Vec<usize> = (0..v.len()).filter(|&i| v[i] != 0).collect();
    if support.is_empty() {
        return Err(WpsError::ZeroVector);
    }
    let d = support
        .iter()
        .fold(0u64, |g, &i| gcd(g, w.weight(i) as u64)) as u32;
    let reduced: Vec<u32> = support.iter().map(|&i| w.weight(i) / d).collect();
    let u = bezout_chain(&reduced);
    // lambda = prod v_i^{-u_i}
    let mut lambda = 1u32;
    for (idx, &i) in support.iter().enumerate() {
        lambda = field.mul(lambda, field.pow(v[i], -u[idx]));
    }
    let mut coords = vec![0u32; v.len()];
    for (idx, &i) in support.iter().enumerate() {
        coords[i] = field.mul(field.pow(lambda, reduced[idx] as i64), v[i]);
    }
    Ok(CanonicalPoint {
        coords,
        support,
        stratum_gcd: d,
        reduced_weights: reduced,
        bezout: u,
    })
}

/// The q-1 rational representatives of a point: the orbit of its canonical
/// coordinates under lambda^{b_i} scaling, lambda in GF(q)^*.
pub fn representatives(p: &CanonicalPoint, field: &Field) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = field
        .nonzero_elements()
        .map(|lambda| {
            let mut v = vec![0u32; p.coords().len()];
            for (idx, &i) in p.support().iter().enumerate() {
                v[i] = field.mul(
                    field.pow(lambda, p.reduced_weights[idx] as i64),
                    p.coords()[i],
                );
            }
            v
        })
        .collect();
    out.sort_by_key(|v| encode(v, field));
    out.dedup();
    out
}

/// All rational points of P(a_0,...,a_n)(F_q), sorted lexicographically in
/// the canonical element order.
pub fn enumerate_points(w: &WeightSystem, field: &Field) -> Result<Vec<CanonicalPoint>, WpsError> {
    enumerate_points_with_budget(w, field, DEFAULT_ENUM_BUDGET)
}

pub fn enumerate_points_with_budget(
    w: &WeightSystem,
    field: &Field,
    budget: u64,
) -> Result<Vec<CanonicalPoint>, WpsError> {
    let q = field.q() as u64;
    let m = w.weights().len() as u32;
    let total = q
        .checked_pow(m)
        .filter(|&t| t <= budget)
        .ok_or(WpsError::BudgetExceeded(u64::MAX, budget))?;
    if total > budget {
        return Err(WpsError::BudgetExceeded(total, budget));
    }

    let mut codes: Vec<u64> = Vec::new();
    let mut seen = if total <= (1 << 24) {
        Some(vec![false; total as usize])
    } else {
        None
    };
    let mut v = vec![0u32; m as usize];
    for code in 1..total {
        // decode: digits are canonical element keys, coordinate 0 first
        let mut c = code;
        for i in (0..m as usize).rev() {
            v[i] = field.elem_from_key((c % q) as u32);
            c /= q;
        }
        let p = canonicalize(&v, w, field).expect("nonzero by construction");
        let key = p.sort_key(field);
        match &mut seen {
            Some(table) => {
                if !table[key as usize] {
                    table[key as usize] = true;
                    codes.push(key);
                }
            }
            None => codes.push(key),
        }
    }
    codes.sort_unstable();
    codes.dedup();

    let points = codes
        .into_iter()
        .map(|key| {
            let mut c = key;
            let mut v = vec![0u32; m as usize];
            for i in (0..m as usize).rev() {
                v[i] = field.elem_from_key((c % q) as u32);
                c /= q;
            }
            canonicalize(&v, w, field).expect("canonical coordinates are nonzero")
        })
        .collect();
    Ok(points)
}
