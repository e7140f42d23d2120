//! N(F), the coordinate partition of the point set, preimage counts along the
//! power-map morphisms, bound formulas, and machine auditors for the partition
//! lemma, the preimage proposition, the pullback identities, the averaged
//! pullback inequality, and the unscrewing chain down to straight space.

use crate::gf::{gcd, lcm, Field};
use crate::wpoly::{pullback, twist, WeightedPolynomial};
use crate::wps::{canonicalize, enumerate_points, pn, CanonicalPoint, WeightSystem, WpsError};
use serde::Serialize;
use thiserror::Error;

/// Cap on the product r_0 * ... * r_n in the unscrewing chain.
pub const DEFAULT_UNSCREW_BUDGET: u64 = 10_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CountError {
    #[error("the zero polynomial does not define a hypersurface")]
    ZeroPolynomial,
    #[error("coordinate index {0} out of range for dimension {1}")]
    IndexOutOfRange(usize, usize),
    #[error(transparent)]
    Wps(#[from] WpsError),
    #[error("unscrewing chain of {0} pullbacks exceeds the budget of {1}")]
    UnscrewBudget(u64, u64),
}

/// Which set semantics a partition count uses.
///
/// The defining properties are phrased on coordinates of a representative, and
/// one point can have representatives matching several of them. `Literal`
/// counts each class by "admits a representative with the property" and
/// reports the overlap; `Disjoint` applies the precedence R > T > Z/I so the
/// classes genuinely partition the examined points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PartitionMode {
    Literal,
    Disjoint,
}

/// A point recorded as a member of more than one literal class.
#[derive(Debug, Clone, Serialize)]
pub struct OverlapRecord {
    pub point: String,
    pub classes: Vec<String>,
}

/// Counts of the classes R_i, T_i, I_i and the slices Z_i(j), j = 1..r_i-1.
#[derive(Debug, Clone, Serialize)]
pub struct PartitionCounts {
    pub index: usize,
    pub mode: PartitionMode,
    pub r: u64,
    pub t: u64,
    pub i: u64,
    /// z[j-1] counts Z_i(j) for j = 1..r_i-1.
    pub z: Vec<u64>,
    pub examined: u64,
    pub overlap: Vec<OverlapRecord>,
}

/// The bound bundle for a degree-d hypersurface in P(a_0,...,a_n).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundSet {
    pub pn: u64,
    /// d q^{n-1} + p_{n-2}.
    pub serre: u64,
    /// min{p_n, (d/a_1) q^{n-1} + p_{n-2}} with sorted weights starting at 1;
    /// `None` when the divisibility hypothesis fails.
    pub conjecture: Option<u64>,
    /// min{p_n, (d/a) q^{n-1} + p_{n-2}}, a = min lcm over weight pairs;
    /// `None` when a does not divide d.
    pub lower: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inapplicable,
}

/// Machine-checkable verdict for one proposition at one configuration.
#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub prop: String,
    pub q: u32,
    pub weights: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poly: Option<String>,
    pub verdict: Verdict,
    pub safe: bool,
    pub lhs: u64,
    pub rhs: u64,
    pub witnesses: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equality: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coprime_weights: Option<bool>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// N(F): the number of rational points of V(F). Vanishing is representative
/// independent for homogeneous F, so counting canonical points is enough.
pub fn count_zeros(f: &WeightedPolynomial, field: &Field) -> Result<u64, CountError> {
    if f.is_zero() {
        return Err(CountError::ZeroPolynomial);
    }
    let points = enumerate_points(f.weights(), field)?;
    Ok(count_zeros_on(f, &points, field))
}

/// N(F) over a precomputed point list of the matching space.
pub fn count_zeros_on(f: &WeightedPolynomial, points: &[CanonicalPoint], field: &Field) -> u64 {
    points
        .iter()
        .filter(|p| f.evaluate(p.coords(), field) == 0)
        .count() as u64
}

/// Raw representative-level memberships of one point at coordinate i.
struct ClassFlags {
    /// Every representative has y_i = 0.
    zero: bool,
    /// This is the distinguished point O_i.
    origin: bool,
    /// Some representative has y_i = 1.
    one: bool,
    /// Some representative has y_i outside Delta^{a_i}.
    nonpower: bool,
    /// For j in 1..=q-1: some representative has y_i = delta^j.
    delta_exp: Vec<bool>,
}

fn classify(p: &CanonicalPoint, i: usize, w: &WeightSystem, field: &Field) -> ClassFlags {
    let q = field.q();
    let a_i = w.weight(i);
    let r_i = field.r_of(a_i);
    let mut flags = ClassFlags {
        zero: p.coords()[i] == 0,
        origin: p.is_origin_at(i),
        one: false,
        nonpower: false,
        delta_exp: vec![false; q as usize],
    };
    if flags.zero {
        return flags;
    }
    let pos = p.support().iter().position(|&s| s == i).unwrap();
    let b_i = p.reduced_weights[pos];
    // values of coordinate i across the q-1 representatives
    for lambda in field.nonzero_elements() {
        let y = field.mul(field.pow(lambda, b_i as i64), p.coords()[i]);
        let log = field.log(y).unwrap();
        if y == 1 {
            flags.one = true;
        }
        if !log.is_multiple_of(r_i) {
            flags.nonpower = true;
        }
        if log > 0 {
            flags.delta_exp[log as usize] = true;
        }
        // delta^{q-1} = 1: slot q-1 aliases y = 1
        if log == 0 && q > 1 {
            flags.delta_exp[(q - 1) as usize] = true;
        }
    }
    flags
}

/// Literal membership in the three coordinate classes. The O_i corrections
/// are part of the definitions: R_i adjoins O_i, T_i removes it.
fn literal_rti(flags: &ClassFlags) -> (bool, bool, bool) {
    let r = flags.zero || flags.origin;
    let t = flags.one && !flags.origin;
    let i = flags.nonpower;
    (r, t, i)
}

fn partition_over(
    points: &[CanonicalPoint],
    i: usize,
    mode: PartitionMode,
    w: &WeightSystem,
    field: &Field,
) -> PartitionCounts {
    let r_i = field.r_of(w.weight(i));
    let mut counts = PartitionCounts {
        index: i,
        mode,
        r: 0,
        t: 0,
        i: 0,
        z: vec![0; r_i.saturating_sub(1) as usize],
        examined: points.len() as u64,
        overlap: Vec::new(),
    };
    for p in points {
        let flags = classify(p, i, w, field);
        let (in_r, in_t, in_i) = literal_rti(&flags);
        match mode {
            PartitionMode::Literal => {
                if in_r {
                    counts.r += 1;
                }
                if in_t {
                    counts.t += 1;
                }
                if in_i {
                    counts.i += 1;
                }
                for j in 1..r_i {
                    if flags.delta_exp[j as usize] {
                        counts.z[(j - 1) as usize] += 1;
                    }
                }
                let mut classes = Vec::new();
                if in_r {
                    classes.push(format!("R{i}"));
                }
                if in_t {
                    classes.push(format!("T{i}"));
                }
                if in_i {
                    classes.push(format!("I{i}"));
                }
                if classes.len() > 1 {
                    counts.overlap.push(OverlapRecord {
                        point: p.format(field),
                        classes,
                    });
                }
            }
            PartitionMode::Disjoint => {
                if in_r {
                    counts.r += 1;
                } else if in_t {
                    counts.t += 1;
                } else {
                    counts.i += 1;
                    // assign the smallest applicable Z slice
                    let j = (1..r_i)
                        .find(|&j| flags.delta_exp[j as usize])
                        .expect("a non-R non-T point admits a slice representative");
                    counts.z[(j - 1) as usize] += 1;
                }
            }
        }
    }
    counts
}

/// Classify the points of V(f) at coordinate i.
pub fn partition_counts(
    f: &WeightedPolynomial,
    i: usize,
    mode: PartitionMode,
    field: &Field,
) -> Result<PartitionCounts, CountError> {
    if f.is_zero() {
        return Err(CountError::ZeroPolynomial);
    }
    let w = f.weights();
    if i > w.n() {
        return Err(CountError::IndexOutOfRange(i, w.n()));
    }
    let points: Vec<CanonicalPoint> = enumerate_points(w, field)?
        .into_iter()
        .filter(|p| f.evaluate(p.coords(), field) == 0)
        .collect();
    Ok(partition_over(&points, i, mode, w, field))
}

/// Classify every point of the whole space (the audit form with f omitted).
pub fn partition_counts_space(
    w: &WeightSystem,
    i: usize,
    mode: PartitionMode,
    field: &Field,
) -> Result<PartitionCounts, CountError> {
    if i > w.n() {
        return Err(CountError::IndexOutOfRange(i, w.n()));
    }
    let points = enumerate_points(w, field)?;
    Ok(partition_over(&points, i, mode, w, field))
}

/// The rational fiber of pi_i over a point, by direct enumeration of the
/// upstairs space. Deliberately independent of the preimage proposition.
pub fn preimage_count(
    p: &CanonicalPoint,
    i: usize,
    w: &WeightSystem,
    field: &Field,
) -> Result<(u64, Vec<CanonicalPoint>), CountError> {
    if i > w.n() {
        return Err(CountError::IndexOutOfRange(i, w.n()));
    }
    let a_i = w.weight(i);
    let upstairs = w.with_weight(i, 1);
    let mut fiber = Vec::new();
    for q_pt in enumerate_points(&upstairs, field)? {
        let mut img = q_pt.coords().to_vec();
        img[i] = field.pow(img[i], a_i as i64);
        if img.iter().all(|&x| x == 0) {
            continue;
        }
        let img = canonicalize(&img, w, field)?;
        if img.coords() == p.coords() {
            fiber.push(q_pt);
        }
    }
    Ok((fiber.len() as u64, fiber))
}

/// The bound bundle {p_n, Serre, conjecture, lower} for degree d on W.
pub fn bounds(d: u64, w: &WeightSystem, field: &Field) -> BoundSet {
    let q = field.q() as u64;
    let n = w.n() as i64;
    let p_n = pn(n, q);
    let qn1 = q.pow((n - 1) as u32);
    let p_n2 = pn(n - 2, q);
    let serre = d * qn1 + p_n2;

    let mut sorted = w.weights().to_vec();
    sorted.sort_unstable();
    let conjecture = if sorted[0] == 1 {
        let l = sorted[1..].iter().fold(1u64, |acc, &a| lcm(acc, a as u64));
        if d.is_multiple_of(l) {
            let a1 = sorted[1] as u64;
            Some(p_n.min(d / a1 * qn1 + p_n2))
        } else {
            None
        }
    } else {
        None
    };

    let mut a = u64::MAX;
    for r in 0..w.weights().len() {
        for s in r + 1..w.weights().len() {
            a = a.min(lcm(w.weight(r) as u64, w.weight(s) as u64));
        }
    }
    let lower = if d.is_multiple_of(a) {
        Some(p_n.min(d / a * qn1 + p_n2))
    } else {
        None
    };

    BoundSet {
        pn: p_n,
        serre,
        conjecture,
        lower,
    }
}

/// A configuration (W, q, i) is SAFE when, on every stratum through
/// coordinate i of size at least 2, reducing the weight does not change
/// gcd(a_i, q-1). On SAFE configurations the literal classes are
/// point-well-defined and genuinely partition the space.
pub fn is_safe(w: &WeightSystem, field: &Field, i: usize) -> bool {
    let m = w.weights().len();
    let r_i = field.r_of(w.weight(i));
    for mask in 1u32..(1 << m) {
        if mask & (1 << i) == 0 || mask.count_ones() < 2 {
            continue;
        }
        let d = (0..m)
            .filter(|&j| mask & (1 << j) != 0)
            .fold(0u64, |g, j| gcd(g, w.weight(j) as u64)) as u32;
        if field.r_of(w.weight(i) / d) != r_i {
            return false;
        }
    }
    true
}

fn report(
    prop: &str,
    w: &WeightSystem,
    field: &Field,
    i: Option<usize>,
    poly: Option<String>,
) -> AuditReport {
    AuditReport {
        prop: prop.to_string(),
        q: field.q(),
        weights: w.weights().to_vec(),
        i,
        poly,
        verdict: Verdict::Pass,
        safe: i.map(|i| is_safe(w, field, i)).unwrap_or(true),
        lhs: 0,
        rhs: 0,
        witnesses: Vec::new(),
        equality: None,
        coprime_weights: None,
    }
}

/// Audit the partition lemma for the Z slices: periodicity mod r_i,
/// Z_i(r_i) = T_i, and I_i as the union of the first r_i - 1 slices.
/// Set identities are compared away from O_i, whose class membership is fixed
/// by convention; its raw memberships are recorded as overlap diagnostics.
pub fn audit_les_zi(w: &WeightSystem, field: &Field, i: usize) -> Result<AuditReport, CountError> {
    if i > w.n() {
        return Err(CountError::IndexOutOfRange(i, w.n()));
    }
    let q = field.q();
    let r_i = field.r_of(w.weight(i));
    let points = enumerate_points(w, field)?;
    let mut rep = report("lesZi", w, field, Some(i), None);

    // literal memberships, O_i excluded from the compared sets
    let mut z_sets: Vec<Vec<usize>> = vec![Vec::new(); q as usize];
    let mut t_set: Vec<usize> = Vec::new();
    let mut i_set: Vec<usize> = Vec::new();
    for (idx, p) in points.iter().enumerate() {
        let flags = classify(p, i, w, field);
        let (in_r, in_t, in_i) = literal_rti(&flags);
        if flags.origin {
            let mut classes = Vec::new();
            if in_r {
                classes.push(format!("R{i}"));
            }
            if flags.one {
                classes.push(format!("T{i}"));
            }
            if in_i {
                classes.push(format!("I{i}"));
            }
            if classes.len() > 1 {
                rep.witnesses.push(format!(
                    "overlap: {} admits representatives in {}",
                    p.format(field),
                    classes.join(" and ")
                ));
            }
            continue;
        }
        for j in 1..=(q - 1) as usize {
            if flags.delta_exp[j] {
                z_sets[j - 1].push(idx);
            }
        }
        if in_t {
            t_set.push(idx);
        }
        if in_i {
            i_set.push(idx);
        }
    }

    let mut ok = true;
    // (i) periodicity: Z_i(j) = Z_i(j') when j = j' mod r_i
    for j in 1..=(q - 1) {
        let j0 = if j % r_i == 0 { r_i } else { j % r_i };
        if z_sets[(j - 1) as usize] != z_sets[(j0 - 1) as usize] {
            ok = false;
            rep.witnesses
                .push(format!("Z{i}({j}) differs from Z{i}({j0})"));
        }
    }
    // (ii) Z_i(r_i) = T_i
    if z_sets[(r_i - 1) as usize] != t_set {
        ok = false;
        rep.witnesses.push(format!(
            "Z{i}({r_i}) has {} points but T{i} has {}",
            z_sets[(r_i - 1) as usize].len(),
            t_set.len()
        ));
    }
    // (iii) I_i empty for r_i = 1, else the union of the first slices
    if r_i == 1 {
        if !i_set.is_empty() {
            ok = false;
            rep.witnesses
                .push(format!("I{i} should be empty but has {} points", i_set.len()));
        }
    } else {
        let mut union: Vec<usize> = (1..r_i)
            .flat_map(|j| z_sets[(j - 1) as usize].iter().copied())
            .collect();
        union.sort_unstable();
        union.dedup();
        if union != i_set {
            ok = false;
            for &idx in union.iter().filter(|x| !i_set.contains(x)) {
                rep.witnesses.push(format!(
                    "{} in union of slices but not in I{i}",
                    points[idx].format(field)
                ));
            }
            for &idx in i_set.iter().filter(|x| !union.contains(x)) {
                rep.witnesses.push(format!(
                    "{} in I{i} but in no slice",
                    points[idx].format(field)
                ));
            }
        }
    }
    rep.lhs = t_set.len() as u64;
    rep.rhs = z_sets[(r_i - 1) as usize].len() as u64;
    rep.verdict = if ok { Verdict::Pass } else { Verdict::Fail };
    Ok(rep)
}

/// Audit the preimage counts of pi_i against the disjoint classification:
/// 1 on R_i, r_i on T_i, 0 on I_i, each fiber built by direct enumeration.
pub fn audit_antecedent(
    w: &WeightSystem,
    field: &Field,
    i: usize,
) -> Result<AuditReport, CountError> {
    if i > w.n() {
        return Err(CountError::IndexOutOfRange(i, w.n()));
    }
    let r_i = field.r_of(w.weight(i)) as u64;
    let points = enumerate_points(w, field)?;
    let mut rep = report("antecedent", w, field, Some(i), None);
    let mut mismatches = 0u64;
    let mut total_fibers = 0u64;
    for p in &points {
        let flags = classify(p, i, w, field);
        let (in_r, in_t, _) = literal_rti(&flags);
        let expected = if in_r {
            1
        } else if in_t {
            r_i
        } else {
            0
        };
        let (actual, _) = preimage_count(p, i, w, field)?;
        total_fibers += actual;
        if actual != expected {
            mismatches += 1;
            rep.witnesses.push(format!(
                "{}: enumerated {} rational preimages, proposition predicts {}",
                p.format(field),
                actual,
                expected
            ));
        }
    }
    rep.lhs = mismatches;
    rep.rhs = total_fibers;
    rep.verdict = if mismatches == 0 {
        Verdict::Pass
    } else if rep.safe {
        Verdict::Fail
    } else {
        Verdict::Inapplicable
    };
    Ok(rep)
}

/// Audit the pullback identities: N = R + T + I, N(pi_i^* F) = r_i T + R
/// (with the pullback count recomputed independently on the upstairs space),
/// and T(F o sigma_i^j) = Z_i(j)(F) for each slice.
pub fn audit_identities(
    f: &WeightedPolynomial,
    i: usize,
    field: &Field,
) -> Result<AuditReport, CountError> {
    if f.is_zero() {
        return Err(CountError::ZeroPolynomial);
    }
    let w = f.weights().clone();
    if i > w.n() {
        return Err(CountError::IndexOutOfRange(i, w.n()));
    }
    let r_i = field.r_of(w.weight(i)) as u64;
    let mut rep = report("identities", &w, field, Some(i), Some(f.to_text(field)));

    let n_f = count_zeros(f, field)?;
    let pc = partition_counts(f, i, PartitionMode::Disjoint, field)?;
    let mut ok = true;

    if n_f != pc.r + pc.t + pc.i {
        ok = false;
        rep.witnesses.push(format!(
            "N(F) = {n_f} but R+T+I = {}+{}+{}",
            pc.r, pc.t, pc.i
        ));
    }

    let n_pull = count_zeros(&pullback(f, i), field)?;
    rep.lhs = n_pull;
    rep.rhs = r_i * pc.t + pc.r;
    if rep.lhs != rep.rhs {
        ok = false;
        rep.witnesses.push(format!(
            "N(pullback) = {} but r_i*T + R = {}*{} + {} = {}",
            rep.lhs, r_i, pc.t, pc.r, rep.rhs
        ));
    }

    for j in 1..r_i {
        let twisted = twist(f, i, j as u32, field);
        let tc = partition_counts(&twisted, i, PartitionMode::Disjoint, field)?;
        if tc.t != pc.z[(j - 1) as usize] {
            ok = false;
            rep.witnesses.push(format!(
                "T(F o sigma^{j}) = {} but Z({j})(F) = {}",
                tc.t,
                pc.z[(j - 1) as usize]
            ));
        }
    }

    rep.verdict = if ok {
        Verdict::Pass
    } else if rep.safe {
        Verdict::Fail
    } else {
        Verdict::Inapplicable
    };
    Ok(rep)
}

/// Audit the averaged pullback inequality
/// r_i N(F) <= sum_j N(pi_i^*(F o sigma_i^j)), compared with denominators
/// cleared, plus the equality observation under pairwise coprime weights.
pub fn audit_mondo(
    f: &WeightedPolynomial,
    i: usize,
    field: &Field,
) -> Result<AuditReport, CountError> {
    if f.is_zero() {
        return Err(CountError::ZeroPolynomial);
    }
    let w = f.weights().clone();
    if i > w.n() {
        return Err(CountError::IndexOutOfRange(i, w.n()));
    }
    let r_i = field.r_of(w.weight(i)) as u64;
    let mut rep = report("mondo", &w, field, Some(i), Some(f.to_text(field)));

    let n_f = count_zeros(f, field)?;
    let mut sum = 0u64;
    for j in 0..r_i {
        sum += count_zeros(&pullback(&twist(f, i, j as u32, field), i), field)?;
    }
    rep.lhs = r_i * n_f;
    rep.rhs = sum;
    rep.equality = Some(rep.lhs == rep.rhs);
    // the remark's hypothesis: pairwise coprime weights a_1..a_n
    let tail = &w.weights()[1..];
    let coprime = (0..tail.len()).all(|x| {
        (x + 1..tail.len()).all(|y| gcd(tail[x] as u64, tail[y] as u64) == 1)
    });
    rep.coprime_weights = Some(coprime);
    if rep.lhs > rep.rhs {
        rep.verdict = Verdict::Fail;
        rep.witnesses.push(format!(
            "r_i*N(F) = {} exceeds the pullback sum {}",
            rep.lhs, rep.rhs
        ));
    }
    Ok(rep)
}

/// Apply the chain of averaged pullback reductions at indices 0..n, producing
/// the r_0 * ... * r_n twisted pullbacks on straight weights, and check the
/// cleared-denominator bound exactly.
pub fn unscrew(
    f: &WeightedPolynomial,
    field: &Field,
) -> Result<(Vec<WeightedPolynomial>, AuditReport), CountError> {
    unscrew_with_budget(f, field, DEFAULT_UNSCREW_BUDGET)
}

pub fn unscrew_with_budget(
    f: &WeightedPolynomial,
    field: &Field,
    budget: u64,
) -> Result<(Vec<WeightedPolynomial>, AuditReport), CountError> {
    if f.is_zero() {
        return Err(CountError::ZeroPolynomial);
    }
    let w = f.weights().clone();
    let r_product: u64 = (0..=w.n()).map(|i| field.r_of(w.weight(i)) as u64).product();
    if r_product > budget {
        return Err(CountError::UnscrewBudget(r_product, budget));
    }

    let mut current = vec![f.clone()];
    for i in 0..=w.n() {
        let r_i = field.r_of(w.weight(i));
        let mut next = Vec::with_capacity(current.len() * r_i as usize);
        for g in &current {
            for j in 0..r_i {
                next.push(pullback(&twist(g, i, j, field), i));
            }
        }
        current = next;
    }

    let mut rep = report("unscrew", &w, field, None, Some(f.to_text(field)));
    rep.lhs = r_product * count_zeros(f, field)?;
    let mut sum = 0u64;
    for g in &current {
        debug_assert!(g.weights().is_straight());
        sum += count_zeros(g, field)?;
    }
    rep.rhs = sum;
    rep.equality = Some(rep.lhs == rep.rhs);
    if rep.lhs > rep.rhs {
        rep.verdict = Verdict::Fail;
        rep.witnesses.push(format!(
            "(r_0...r_n)*N(F) = {} exceeds the straight-space sum {}",
            rep.lhs, rep.rhs
        ));
    }
    Ok((current, rep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wpoly::{parse_poly, saturating_poly};

    fn w(v: &[u32]) -> WeightSystem {
        WeightSystem::new(v.to_vec()).unwrap()
    }

    #[test]
    fn count_zeros_examples() {
        let f3 = Field::new(3, 1).unwrap();
        let p = parse_poly("X0", &w(&[1, 1, 2]), &f3).unwrap();
        assert_eq!(count_zeros(&p, &f3).unwrap(), 4);

        let f2 = Field::new(2, 1).unwrap();
        let p = saturating_poly(3, &w(&[1, 1]), &f2).unwrap();
        assert_eq!(count_zeros(&p, &f2).unwrap(), 3);

        let p = parse_poly("X0*X1", &w(&[1, 1, 1]), &f2).unwrap();
        assert_eq!(count_zeros(&p, &f2).unwrap(), 5);

        let z = WeightedPolynomial::zero(w(&[1, 1]), 2);
        assert_eq!(count_zeros(&z, &f2).unwrap_err(), CountError::ZeroPolynomial);
    }

    #[test]
    fn partition_whole_space_p12_gf3() {
        let f3 = Field::new(3, 1).unwrap();
        let pc = partition_counts_space(&w(&[1, 2]), 1, PartitionMode::Disjoint, &f3).unwrap();
        assert_eq!((pc.r, pc.t, pc.i), (2, 1, 1));
        assert_eq!(pc.examined, 4);
    }

    #[test]
    fn partition_i_empty_when_r_is_1() {
        for q in [2u64, 3, 4, 5] {
            let f = Field::of_order(q).unwrap();
            let pc =
                partition_counts_space(&w(&[1, 1]), 0, PartitionMode::Disjoint, &f).unwrap();
            assert_eq!(pc.i, 0);
            let pc = partition_counts_space(&w(&[1, 1]), 0, PartitionMode::Literal, &f).unwrap();
            assert_eq!(pc.i, 0);
        }
    }

    #[test]
    fn partition_on_hypersurface() {
        // V(X0) on P(1,2)/GF(3) is the single point O_1, which R_1 contains
        let f3 = Field::new(3, 1).unwrap();
        let p = parse_poly("X0", &w(&[1, 2]), &f3).unwrap();
        let pc = partition_counts(&p, 1, PartitionMode::Disjoint, &f3).unwrap();
        assert_eq!((pc.r, pc.t, pc.i), (1, 0, 0));
    }

    #[test]
    fn literal_overlap_at_origin_p12_gf3() {
        let f3 = Field::new(3, 1).unwrap();
        let pc = partition_counts_space(&w(&[1, 2]), 1, PartitionMode::Literal, &f3).unwrap();
        // O_1 admits representatives (0,1) and (0,2): member of R and I
        assert_eq!(pc.overlap.len(), 1);
        assert_eq!(pc.overlap[0].point, "[0:1]");
        assert!(pc.r + pc.t + pc.i > pc.examined);
    }

    #[test]
    fn preimage_examples() {
        let f5 = Field::new(5, 1).unwrap();
        let ws = w(&[1, 2]);
        let p = canonicalize(&[1, 1], &ws, &f5).unwrap();
        let (count, fiber) = preimage_count(&p, 1, &ws, &f5).unwrap();
        assert_eq!(count, 2);
        let mut coords: Vec<Vec<u32>> = fiber.iter().map(|q| q.coords().to_vec()).collect();
        coords.sort();
        assert_eq!(coords, vec![vec![1, 1], vec![1, 4]]);

        let p = canonicalize(&[1, 0], &ws, &f5).unwrap();
        assert_eq!(preimage_count(&p, 1, &ws, &f5).unwrap().0, 1);

        let f3 = Field::new(3, 1).unwrap();
        let p = canonicalize(&[1, 2], &ws, &f3).unwrap();
        assert_eq!(preimage_count(&p, 1, &ws, &f3).unwrap().0, 0);
    }

    #[test]
    fn bounds_examples() {
        let f3 = Field::new(3, 1).unwrap();
        let b = bounds(2, &w(&[1, 1, 2]), &f3);
        assert_eq!(
            b,
            BoundSet {
                pn: 13,
                serre: 7,
                conjecture: Some(7),
                lower: Some(7)
            }
        );

        let f2 = Field::new(2, 1).unwrap();
        let b = bounds(3, &w(&[1, 1]), &f2);
        assert_eq!(b.serre, 3);
        assert_eq!(b.serre, b.pn);

        let f5 = Field::new(5, 1).unwrap();
        let b = bounds(1, &w(&[2, 3]), &f5);
        assert_eq!(b.conjecture, None);
        assert_eq!(b.serre, 1);
    }

    #[test]
    fn lower_never_exceeds_conjecture() {
        let f3 = Field::new(3, 1).unwrap();
        for ws in [vec![1u32, 2, 3], vec![1, 1, 2], vec![1, 2, 2]] {
            let ws = w(&ws);
            for d in 1..=12u64 {
                let b = bounds(d, &ws, &f3);
                if let (Some(lo), Some(cj)) = (b.lower, b.conjecture) {
                    assert!(lo <= cj);
                }
            }
        }
    }

    #[test]
    fn les_zi_examples() {
        let f3 = Field::new(3, 1).unwrap();
        let rep = audit_les_zi(&w(&[1, 1, 2]), &f3, 2).unwrap();
        assert!(rep.passed());

        let f4 = Field::new(2, 2).unwrap();
        let rep = audit_les_zi(&w(&[1, 1]), &f4, 1).unwrap();
        assert!(rep.passed());

        let rep = audit_les_zi(&w(&[1, 2]), &f3, 1).unwrap();
        assert!(rep.passed());
        // O_1 flagged with a double membership
        assert!(rep.witnesses.iter().any(|w| w.contains("overlap")));
    }

    #[test]
    fn identities_examples() {
        let f3 = Field::new(3, 1).unwrap();
        let p = parse_poly("X0*X1", &w(&[1, 1]), &f3).unwrap();
        let rep = audit_identities(&p, 1, &f3).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.lhs, 2);

        let p = parse_poly("X0", &w(&[1, 2]), &f3).unwrap();
        let rep = audit_identities(&p, 1, &f3).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.lhs, 1);

        // UNSAFE configuration: observations recorded, never asserted
        let p = parse_poly("X1 - X2", &w(&[1, 2, 2]), &f3).unwrap();
        let rep = audit_identities(&p, 1, &f3).unwrap();
        assert!(!rep.safe);
        assert_ne!(rep.verdict, Verdict::Fail);
    }

    #[test]
    fn mondo_examples() {
        let f3 = Field::new(3, 1).unwrap();
        let p = parse_poly("X0", &w(&[1, 2]), &f3).unwrap();
        let rep = audit_mondo(&p, 1, &f3).unwrap();
        assert!(rep.passed());
        assert_eq!((rep.lhs, rep.rhs), (2, 2));
        assert_eq!(rep.equality, Some(true));

        // r_i = 1 forces equality through the single pullback
        let p = parse_poly("X0*X1", &w(&[1, 2]), &f3).unwrap();
        let rep = audit_mondo(&p, 0, &f3).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.equality, Some(true));
    }

    #[test]
    fn safe_flag() {
        let f3 = Field::new(3, 1).unwrap();
        assert!(is_safe(&w(&[1, 1, 2]), &f3, 2));
        assert!(is_safe(&w(&[1, 2]), &f3, 0));
        // stratum {1,2} of (1,2,2) has gcd 2: reducing kills r_1
        assert!(!is_safe(&w(&[1, 2, 2]), &f3, 1));
    }

    #[test]
    fn unscrew_examples() {
        let f3 = Field::new(3, 1).unwrap();
        let p = parse_poly("X0", &w(&[1, 2]), &f3).unwrap();
        let (polys, rep) = unscrew(&p, &f3).unwrap();
        assert_eq!(polys.len(), 2);
        assert!(rep.passed());
        assert_eq!((rep.lhs, rep.rhs), (2, 2));
        for g in &polys {
            assert!(g.weights().is_straight());
            assert_eq!(g.degree(), 1);
        }

        let f5 = Field::new(5, 1).unwrap();
        let p = parse_poly("X0^3 - X1^2", &w(&[2, 3]), &f5).unwrap();
        let (polys, rep) = unscrew(&p, &f5).unwrap();
        assert_eq!(polys.len(), 2); // r_0 = gcd(2,4) = 2, r_1 = gcd(3,4) = 1
        assert!(rep.passed());

        // already straight: every pullback is a twist of f, counts all equal
        let p = parse_poly("X0 + X1", &w(&[1, 1]), &f5).unwrap();
        let (polys, rep) = unscrew(&p, &f5).unwrap();
        assert_eq!(polys.len(), 1);
        assert!(rep.passed());
        assert_eq!(rep.equality, Some(true));
    }
}
