//! Exact arithmetic in GF(p^k) with full log/exp tables relative to a
//! distinguished primitive element.
//!
//! Elements are packed base-p digit vectors: an element a_0 + a_1 x + ... +
//! a_{k-1} x^{k-1} of the polynomial basis is stored as the integer
//! a_0 + a_1 p + ... + a_{k-1} p^{k-1}. For k = 1 this is just the residue.

use serde::Serialize;
use thiserror::Error;

/// Hard cap on field size; tables are dense arrays of length q-1.
pub const MAX_FIELD_SIZE: u64 = 1 << 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NonPrime(u32),
    #[error("extension degree must be at least 1")]
    BadDegree,
    #[error("field size {0} exceeds limit {MAX_FIELD_SIZE}")]
    TooLarge(u64),
    #[error("subgroup exponent must be at least 1")]
    BadExponent,
    #[error("`{0}` is not an element of GF({1})")]
    BadElement(String, u64),
}

/// A concrete finite field GF(p^k), immutable after construction.
#[derive(Debug, Clone)]
pub struct Field {
    p: u32,
    k: u32,
    q: u32,
    /// Monic irreducible modulus, coefficients low-degree-first, length k+1.
    /// Empty for prime fields.
    modulus: Vec<u32>,
    delta: u32,
    /// log[x] for x in 1..q; log[0] is unused.
    log: Vec<u32>,
    /// exp[j] = delta^j for j in 0..q-1.
    exp: Vec<u32>,
}

/// Kernel and image data of the power map z -> z^a on the multiplicative group.
#[derive(Debug, Clone, Serialize)]
pub struct SubgroupData {
    pub a: u32,
    /// gcd(a, q-1).
    pub r: u32,
    /// a-th roots of unity, sorted in the canonical element order.
    pub mu: Vec<u32>,
    /// a-th powers, sorted in the canonical element order.
    pub delta_a: Vec<u32>,
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Extended Euclid: returns (g, x, y) with x*a + y*b = g = gcd(a, b).
pub fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Dense polynomial arithmetic over GF(p), used only during construction.
mod polyp {
    pub fn trim(v: &mut Vec<u32>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] += ai as u64 * bj as u64;
            }
        }
        out.iter().map(|&c| (c % p as u64) as u32).collect()
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r: Vec<u32> = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p);
        while r.len() > dm {
            let dr = r.len() - 1;
            let c = (r[dr] as u64 * lead_inv as u64 % p as u64) as u32;
            for i in 0..=dm {
                let sub = c as u64 * m[i] as u64 % p as u64;
                r[dr - dm + i] = ((r[dr - dm + i] as u64 + p as u64 - sub) % p as u64) as u32;
            }
            trim(&mut r);
        }
        r
    }

    pub fn inv_mod(a: u32, p: u32) -> u32 {
        let (_, x, _) = super::egcd(a as i64, p as i64);
        x.rem_euclid(p as i64) as u32
    }
}

impl Field {
    /// Build GF(p^k) with deterministic modulus and primitive element.
    pub fn new(p: u32, k: u32) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NonPrime(p));
        }
        if k < 1 {
            return Err(FieldError::BadDegree);
        }
        let q128 = (p as u64).checked_pow(k).filter(|&q| q <= MAX_FIELD_SIZE);
        let q = match q128 {
            Some(q) => q as u32,
            None => return Err(FieldError::TooLarge((p as u64).saturating_pow(k))),
        };

        let modulus = if k == 1 {
            Vec::new()
        } else {
            find_modulus(p, k)
        };

        let mut field = Field {
            p,
            k,
            q,
            modulus,
            delta: 0,
            log: vec![0; q as usize],
            exp: Vec::new(),
        };
        field.delta = field.find_generator();
        field.build_tables();
        Ok(field)
    }

    /// Parse a field designation `p` or `p^k`.
    pub fn from_order_text(text: &str) -> Result<Field, FieldError> {
        let (p, k) = parse_order(text)
            .ok_or_else(|| FieldError::BadElement(text.to_string(), 0))?;
        Field::new(p, k)
    }

    /// Build the field of order q when q is a prime power.
    pub fn of_order(q: u64) -> Result<Field, FieldError> {
        if q > MAX_FIELD_SIZE {
            return Err(FieldError::TooLarge(q));
        }
        let q32 = q as u32;
        for p in 2..=q32 {
            if !is_prime(p) {
                continue;
            }
            let mut k = 0u32;
            let mut m = q32;
            while m.is_multiple_of(p) {
                m /= p;
                k += 1;
            }
            if m == 1 && k >= 1 {
                return Field::new(p, k);
            }
            if q32.is_multiple_of(p) {
                break;
            }
        }
        Err(FieldError::NonPrime(q32))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// The modulus polynomial, low-degree-first; `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u32]> {
        if self.modulus.is_empty() {
            None
        } else {
            Some(&self.modulus)
        }
    }

    pub fn modulus_text(&self) -> Option<String> {
        self.modulus().map(|m| {
            let mut parts = Vec::new();
            for (i, &c) in m.iter().enumerate().rev() {
                if c == 0 {
                    continue;
                }
                let var = match i {
                    0 => String::new(),
                    1 => "x".to_string(),
                    _ => format!("x^{i}"),
                };
                let part = if i == 0 {
                    format!("{c}")
                } else if c == 1 {
                    var
                } else {
                    format!("{c}*{var}")
                };
                parts.push(part);
            }
            parts.join(" + ")
        })
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    /// Discrete log to base delta; `None` for zero.
    pub fn log(&self, x: u32) -> Option<u32> {
        if x == 0 {
            None
        } else {
            Some(self.log[x as usize])
        }
    }

    /// delta^j, j taken mod q-1.
    pub fn exp(&self, j: u64) -> u32 {
        self.exp[(j % (self.q as u64 - 1)) as usize]
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return (a + b) % self.p;
        }
        let (p, mut a, mut b) = (self.p, a, b);
        let mut out = 0u32;
        let mut mult = 1u32;
        while a > 0 || b > 0 {
            out += (a % p + b % p) % p * mult;
            a /= p;
            b /= p;
            mult *= p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.k == 1 {
            return (self.p - a) % self.p;
        }
        let p = self.p;
        let mut a = a;
        let mut out = 0u32;
        let mut mult = 1u32;
        while a > 0 {
            out += (p - a % p) % p * mult;
            a /= p;
            mult *= p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q as u64 - 1;
        self.exp[((self.log[a as usize] as u64 + self.log[b as usize] as u64) % n) as usize]
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        let n = self.q - 1;
        self.exp[((n - self.log[a as usize]) % n) as usize]
    }

    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    /// a^e with 0^0 = 1. Negative exponents require a nonzero base.
    pub fn pow(&self, a: u32, e: i64) -> u32 {
        if a == 0 {
            if e == 0 {
                return 1;
            }
            assert!(e > 0, "negative power of zero");
            return 0;
        }
        let n = self.q as i64 - 1;
        let j = (self.log[a as usize] as i128 * e as i128).rem_euclid(n as i128) as usize;
        self.exp[j]
    }

    /// Canonical element order: 0 first, then by discrete log.
    pub fn ord_key(&self, x: u32) -> u32 {
        if x == 0 {
            0
        } else {
            self.log[x as usize] + 1
        }
    }

    /// Inverse of `ord_key`.
    pub fn elem_from_key(&self, key: u32) -> u32 {
        if key == 0 {
            0
        } else {
            self.exp[(key - 1) as usize]
        }
    }

    /// All elements in canonical order: 0, 1, delta, delta^2, ...
    pub fn elements(&self) -> impl Iterator<Item = u32> + '_ {
        std::iter::once(0).chain(self.exp.iter().copied())
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = u32> + '_ {
        self.exp.iter().copied()
    }

    pub fn format_elem(&self, x: u32) -> String {
        if self.k == 1 {
            return x.to_string();
        }
        if x == 0 {
            "0".to_string()
        } else {
            format!("g^{}", self.log[x as usize])
        }
    }

    pub fn parse_elem(&self, text: &str) -> Result<u32, FieldError> {
        let t = text.trim();
        let bad = || FieldError::BadElement(t.to_string(), self.q as u64);
        if t == "g" {
            return Ok(self.delta);
        }
        if let Some(rest) = t.strip_prefix("g^") {
            let j: u64 = rest.parse().map_err(|_| bad())?;
            return Ok(self.exp(j));
        }
        let v: u32 = t.parse().map_err(|_| bad())?;
        if v < self.p {
            Ok(v)
        } else {
            Err(bad())
        }
    }

    /// Subgroup data for the power map z -> z^a.
    pub fn subgroup_data(&self, a: u32) -> Result<SubgroupData, FieldError> {
        if a < 1 {
            return Err(FieldError::BadExponent);
        }
        let n = self.q - 1;
        let r = gcd(a as u64, n as u64) as u32;
        let mut mu: Vec<u32> = (0..r).map(|j| self.exp[(j * (n / r)) as usize]).collect();
        let mut delta_a: Vec<u32> = (0..n / r).map(|j| self.exp[(j * r % n) as usize]).collect();
        mu.sort_by_key(|&x| self.ord_key(x));
        delta_a.sort_by_key(|&x| self.ord_key(x));
        Ok(SubgroupData { a, r, mu, delta_a })
    }

    /// gcd(a, q-1).
    pub fn r_of(&self, a: u32) -> u32 {
        gcd(a as u64, self.q as u64 - 1) as u32
    }

    /// Whether x is an a-th power in the multiplicative group.
    pub fn is_power(&self, x: u32, a: u32) -> bool {
        x != 0 && self.log[x as usize].is_multiple_of(self.r_of(a))
    }

    fn to_digits(&self, x: u32) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.k as usize);
        let mut x = x;
        for _ in 0..self.k {
            v.push(x % self.p);
            x /= self.p;
        }
        polyp::trim(&mut v);
        v
    }

    fn pack_digits(&self, d: &[u32]) -> u32 {
        let mut out = 0u32;
        for &c in d.iter().rev() {
            out = out * self.p + c;
        }
        out
    }

    fn raw_mul(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let prod = polyp::mul(&self.to_digits(a), &self.to_digits(b), self.p);
        if prod.len() <= self.k as usize {
            self.pack_digits(&prod)
        } else {
            self.pack_digits(&polyp::rem(&prod, &self.modulus, self.p))
        }
    }

    fn raw_pow(&self, a: u32, mut e: u32) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.raw_mul(acc, base);
            }
            base = self.raw_mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn find_generator(&self) -> u32 {
        let n = self.q - 1;
        if n == 1 {
            return 1;
        }
        let factors = prime_factors(n);
        for cand in 2..self.q {
            if factors.iter().all(|&f| self.raw_pow(cand, n / f) != 1) {
                return cand;
            }
        }
        unreachable!("multiplicative group of a finite field is cyclic");
    }

    fn build_tables(&mut self) {
        let n = (self.q - 1) as usize;
        self.exp = Vec::with_capacity(n);
        let mut x = 1u32;
        for j in 0..n {
            self.exp.push(x);
            self.log[x as usize] = j as u32;
            x = self.raw_mul(x, self.delta);
        }
        debug_assert_eq!(x, 1, "delta must have order q-1");
    }
}

/// Lexicographically smallest (low-degree-first) monic irreducible of degree k.
fn find_modulus(p: u32, k: u32) -> Vec<u32> {
    let count = (p as u64).pow(k);
    let mut candidates: Vec<Vec<u32>> = Vec::new();
    for code in 0..count {
        let mut c = code;
        let mut coeffs = Vec::with_capacity(k as usize + 1);
        for _ in 0..k {
            coeffs.push((c % p as u64) as u32);
            c /= p as u64;
        }
        coeffs.push(1);
        candidates.push(coeffs);
    }
    candidates.sort();
    candidates
        .into_iter()
        .find(|f| is_irreducible(f, p))
        .expect("an irreducible polynomial of every degree exists")
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let k = f.len() - 1;
    if f[0] == 0 {
        return k == 1;
    }
    // Trial division by every monic polynomial of degree 1..=k/2.
    for deg in 1..=k / 2 {
        let count = (p as u64).pow(deg as u32);
        for code in 0..count {
            let mut c = code;
            let mut g = Vec::with_capacity(deg + 1);
            for _ in 0..deg {
                g.push((c % p as u64) as u32);
                c /= p as u64;
            }
            g.push(1);
            if polyp::rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn parse_order(text: &str) -> Option<(u32, u32)> {
    let t = text.trim();
    if let Some((base, exp)) = t.split_once('^') {
        Some((base.parse().ok()?, exp.parse().ok()?))
    } else {
        let q: u64 = t.parse().ok()?;
        if q > MAX_FIELD_SIZE {
            return None;
        }
        let q32 = q as u32;
        for p in 2..=q32 {
            if q32.is_multiple_of(p) {
                let mut k = 0;
                let mut m = q32;
                while m.is_multiple_of(p) {
                    m /= p;
                    k += 1;
                }
                return if m == 1 { Some((p, k)) } else { None };
            }
        }
        None
    }
}
