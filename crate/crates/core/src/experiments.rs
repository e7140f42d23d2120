//! The reproduction suites behind the acceptance experiments: each runner
//! recomputes a family of counts or audits from scratch and tabulates
//! computed-versus-expected rows.

use crate::counting::{
    audit_antecedent, audit_identities, audit_les_zi, audit_mondo, count_zeros, partition_counts_space,
    preimage_count, PartitionMode, Verdict,
};
use crate::gf::{lcm, Field};
use crate::search::{eq_exhaustive, CandidateStream, DEFAULT_SEARCH_BUDGET};
use crate::wpoly::{monomial_basis, WeightedPolynomial};
use crate::wps::{canonicalize, pn, WeightSystem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const SUITES: [&str; 6] = [
    "serre-p2",
    "two-weights",
    "main-theorem",
    "mondo",
    "partitions",
    "theorem41",
];

/// One expected-versus-computed line of a suite.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteRow {
    pub name: String,
    pub pass: bool,
    pub lhs: u64,
    pub rhs: u64,
    pub witnesses: Vec<String>,
}

impl SuiteRow {
    fn check(name: String, lhs: u64, rhs: u64) -> SuiteRow {
        SuiteRow {
            name,
            pass: lhs == rhs,
            lhs,
            rhs,
            witnesses: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub rows: Vec<SuiteRow>,
    pub pass: bool,
}

impl SuiteReport {
    fn new(suite: &str, rows: Vec<SuiteRow>) -> SuiteReport {
        let pass = rows.iter().all(|r| r.pass);
        SuiteReport {
            suite: suite.to_string(),
            rows,
            pass,
        }
    }
}

pub fn run_suite(name: &str) -> Result<SuiteReport, String> {
    match name {
        "serre-p2" => Ok(run_serre_p2()),
        "two-weights" => Ok(run_two_weights()),
        "main-theorem" => Ok(run_main_theorem()),
        "mondo" => Ok(run_mondo()),
        "partitions" => Ok(run_partitions()),
        "theorem41" => Ok(run_theorem41()),
        other => Err(format!(
            "unknown suite '{other}'; expected one of {}",
            SUITES.join(", ")
        )),
    }
}

fn w(v: &[u32]) -> WeightSystem {
    WeightSystem::new(v.to_vec()).unwrap()
}

/// Whether f, read as a binary form in two of its variables, has exactly d
/// roots in P^1(F_q) — the "union of d distinct hyperplanes" shape.
fn splits_into_distinct_linear_forms(f: &WeightedPolynomial, field: &Field) -> bool {
    let m = f.weights().weights().len();
    let mut used: Vec<usize> = (0..m)
        .filter(|&i| f.terms().any(|(e, _)| e[i] > 0))
        .collect();
    if used.len() > 2 {
        return false;
    }
    while used.len() < 2 {
        let spare = (0..m).find(|i| !used.contains(i)).unwrap();
        used.push(spare);
    }
    let (r, s) = (used[0], used[1]);
    let mut roots = 0u64;
    let mut point = vec![0u32; m];
    for x in field.elements() {
        point.iter_mut().for_each(|c| *c = 0);
        point[r] = 1;
        point[s] = x;
        if f.evaluate(&point, field) == 0 {
            roots += 1;
        }
    }
    point.iter_mut().for_each(|c| *c = 0);
    point[s] = 1;
    if f.evaluate(&point, field) == 0 {
        roots += 1;
    }
    roots == f.degree()
}

/// Serre tightness on straight space: e_q(d;1,...,1) = dq^{n-1}+p_{n-2} for
/// d <= q and p_n for d >= q+1, with witness shape at n = 1, 2 recorded.
pub fn run_serre_p2() -> SuiteReport {
    let mut rows = Vec::new();
    for q in [2u64, 3] {
        let field = Field::of_order(q).unwrap();
        for n in [1usize, 2] {
            let ws = w(&vec![1u32; n + 1]);
            // d = q+1 already reaches the saturated regime; one degree higher
            // at n = 2 would put ~5e9 candidates past the search budget
            for d in 1..=q + 1 {
                let expected = if d <= q {
                    d * q.pow((n - 1) as u32) + pn(n as i64 - 2, q)
                } else {
                    pn(n as i64, q)
                };
                let res = eq_exhaustive(&ws, d, &field).unwrap();
                let mut row = SuiteRow::check(
                    format!("e_{q}({d};{ws}) = {expected}"),
                    res.value,
                    expected,
                );
                if d <= q {
                    for text in &res.witnesses {
                        let f = crate::wpoly::parse_poly(text, &ws, &field).unwrap();
                        let shape = splits_into_distinct_linear_forms(&f, &field);
                        row.witnesses.push(format!(
                            "witness {text}: {} d distinct linear forms in two variables",
                            if shape { "product of" } else { "NOT a product of" }
                        ));
                    }
                }
                rows.push(row);
            }
        }
    }
    SuiteReport::new("serre-p2", rows)
}

/// e_q(d; a_0, a_1) = min{p_1, d/a}, a = lcm(a_0, a_1), over all multiples
/// of a up to a(q+1).
pub fn run_two_weights() -> SuiteReport {
    let mut rows = Vec::new();
    for q in [2u64, 3, 5] {
        let field = Field::of_order(q).unwrap();
        for (a0, a1) in [(1u32, 1u32), (1, 2), (2, 3), (2, 4)] {
            let ws = w(&[a0, a1]);
            let a = lcm(a0 as u64, a1 as u64);
            let mut d = a;
            while d <= a * (q + 1) {
                let expected = pn(1, q).min(d / a);
                let res = eq_exhaustive(&ws, d, &field).unwrap();
                rows.push(SuiteRow::check(
                    format!("e_{q}({d};{ws}) = min{{p_1, {d}/{a}}} = {expected}"),
                    res.value,
                    expected,
                ));
                d += a;
            }
        }
    }
    SuiteReport::new("two-weights", rows)
}

/// e_q(d; 1,1,a_2) = min{p_2, dq+1} for small q, a_2, d, plus the dimension-3
/// instance e_2(2; 1,1,2,2) = 11.
pub fn run_main_theorem() -> SuiteReport {
    let mut rows = Vec::new();
    for q in [2u64, 3] {
        let field = Field::of_order(q).unwrap();
        for a2 in [2u32, 3] {
            let ws = w(&[1, 1, a2]);
            for d in 1..=q + 2 {
                if monomial_basis(&ws, d).is_empty() {
                    continue;
                }
                let expected = pn(2, q).min(d * q + 1);
                let res = eq_exhaustive(&ws, d, &field).unwrap();
                rows.push(SuiteRow::check(
                    format!("e_{q}({d};{ws}) = min{{p_2, {d}*{q}+1}} = {expected}"),
                    res.value,
                    expected,
                ));
            }
        }
    }
    let field = Field::of_order(2).unwrap();
    let ws = w(&[1, 1, 2, 2]);
    let res = eq_exhaustive(&ws, 2, &field).unwrap();
    rows.push(SuiteRow::check(
        "e_2(2;(1,1,2,2)) = min{p_3, 2q^2+p_1} = 11".to_string(),
        res.value,
        11,
    ));
    SuiteReport::new("main-theorem", rows)
}

const MONDO_CONFIGS: [(&[u32], u64); 5] = [
    (&[1, 1], 2),
    (&[1, 2], 2),
    (&[1, 1, 2], 2),
    (&[2, 3], 6),
    (&[1, 2, 3], 6),
];

fn config_seed(q: u64, weights: &[u32]) -> u64 {
    weights
        .iter()
        .fold(q, |acc, &a| acc.wrapping_mul(1_000_003).wrapping_add(a as u64))
}

/// audit_identities and audit_mondo over 200 seeded-random nonzero forms per
/// configuration; SAFE failures fail the suite, UNSAFE ones are recorded, and
/// the coprimality remark's equality is asserted where its hypothesis holds.
pub fn run_mondo() -> SuiteReport {
    let mut rows = Vec::new();
    for q in [2u64, 3, 4, 5] {
        let field = Field::of_order(q).unwrap();
        for &(weights, d) in &MONDO_CONFIGS {
            let ws = w(weights);
            let stream = CandidateStream::new(&ws, d, &field, DEFAULT_SEARCH_BUDGET).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(config_seed(q, weights));
            let polys: Vec<WeightedPolynomial> = (0..200)
                .map(|_| stream.get(rng.gen_range(0..stream.total()), &field))
                .collect();
            for i in 0..=ws.n() {
                let mut failures = 0u64;
                let mut equality_breaks = 0u64;
                let mut witnesses = Vec::new();
                let mut unsafe_obs = 0u64;
                for f in &polys {
                    let ident = audit_identities(f, i, &field).unwrap();
                    if ident.verdict == Verdict::Fail {
                        failures += 1;
                        if witnesses.len() < 4 {
                            witnesses.push(format!("identities fail: {}", f.to_text(&field)));
                        }
                    } else if ident.verdict == Verdict::Inapplicable {
                        unsafe_obs += 1;
                    }
                    let mondo = audit_mondo(f, i, &field).unwrap();
                    if mondo.verdict == Verdict::Fail {
                        failures += 1;
                        if witnesses.len() < 4 {
                            witnesses.push(format!("mondo fail: {}", f.to_text(&field)));
                        }
                    }
                    if mondo.coprime_weights == Some(true) && mondo.equality == Some(false) {
                        equality_breaks += 1;
                        if witnesses.len() < 4 {
                            witnesses.push(format!(
                                "equality breaks under coprime weights: {} ({} < {})",
                                f.to_text(&field),
                                mondo.lhs,
                                mondo.rhs
                            ));
                        }
                    }
                }
                if unsafe_obs > 0 {
                    witnesses.push(format!(
                        "{unsafe_obs} UNSAFE observations recorded, not asserted"
                    ));
                }
                let mut row = SuiteRow::check(
                    format!("mondo/identities q={q} W={ws} i={i} d={d}: 0 violations"),
                    failures + equality_breaks,
                    0,
                );
                row.witnesses = witnesses;
                rows.push(row);
            }
        }
    }
    SuiteReport::new("mondo", rows)
}

/// Partition-lemma and preimage audits over small configurations, with the
/// W=(1,2,2), q=3 discrepancy regression pinned.
pub fn run_partitions() -> SuiteReport {
    let mut rows = Vec::new();
    for q in [2u64, 3, 4, 5] {
        let field = Field::of_order(q).unwrap();
        for weights in [&[1u32, 2][..], &[1, 1, 2], &[2, 3], &[1, 2, 2], &[1, 2, 3]] {
            let ws = w(weights);
            for i in 0..=ws.n() {
                let zi = audit_les_zi(&ws, &field, i).unwrap();
                let ant = audit_antecedent(&ws, &field, i).unwrap();
                let safe = zi.safe;
                let fail =
                    u64::from(zi.verdict == Verdict::Fail) + u64::from(ant.verdict == Verdict::Fail);
                let mut row = SuiteRow::check(
                    format!(
                        "partition audits q={q} W={ws} i={i} ({}): 0 failures",
                        if safe { "SAFE" } else { "UNSAFE" }
                    ),
                    fail,
                    0,
                );
                row.witnesses.extend(zi.witnesses.iter().take(3).cloned());
                if ant.verdict == Verdict::Inapplicable {
                    row.witnesses.push(format!(
                        "UNSAFE: {} fiber mismatches recorded, not asserted",
                        ant.lhs
                    ));
                }
                rows.push(row);
            }
        }
    }

    // regression: the overlap point of W=(1,2,2) over GF(3) at i=1
    let field = Field::of_order(3).unwrap();
    let ws = w(&[1, 2, 2]);
    let pc = partition_counts_space(&ws, 1, PartitionMode::Literal, &field).unwrap();
    let target = canonicalize(&[0, 1, 1], &ws, &field).unwrap();
    let target_str = target.format(&field);
    let overlap_hit = pc.overlap.iter().any(|o| o.point == target_str);
    let mut row = SuiteRow::check(
        format!("regression: literal overlap at {target_str} on W=(1,2,2) q=3 i=1"),
        u64::from(overlap_hit),
        1,
    );
    row.witnesses.extend(
        pc.overlap
            .iter()
            .map(|o| format!("{} in {}", o.point, o.classes.join(" and "))),
    );
    rows.push(row);

    let (fiber, _) = preimage_count(&target, 1, &ws, &field).unwrap();
    rows.push(SuiteRow::check(
        format!("regression: pi_1 fiber over {target_str} has 1 point"),
        fiber,
        1,
    ));

    SuiteReport::new("partitions", rows)
}

/// N(F) <= dq^{n-1} + p_{n-2} for every nonzero F of admissible degree
/// d <= q+1 on the listed weight systems (exhaustive over S_d up to scalar).
pub fn run_theorem41() -> SuiteReport {
    let mut rows = Vec::new();
    for q in [2u64, 3] {
        let field = Field::of_order(q).unwrap();
        for weights in [&[1u32, 1, 2][..], &[1, 2, 2], &[1, 1, 3], &[1, 2, 3]] {
            let ws = w(weights);
            for d in 1..=q + 1 {
                if monomial_basis(&ws, d).is_empty() {
                    continue;
                }
                let bound = d * q + 1;
                let stream =
                    CandidateStream::new(&ws, d, &field, DEFAULT_SEARCH_BUDGET).unwrap();
                let mut violations = 0u64;
                let mut max_seen = 0u64;
                let mut witnesses = Vec::new();
                for idx in 0..stream.total() {
                    let f = stream.get(idx, &field);
                    let n_f = count_zeros(&f, &field).unwrap();
                    max_seen = max_seen.max(n_f);
                    if n_f > bound {
                        violations += 1;
                        if witnesses.len() < 4 {
                            witnesses
                                .push(format!("N({}) = {n_f} > {bound}", f.to_text(&field)));
                        }
                    }
                }
                let mut row = SuiteRow::check(
                    format!(
                        "q={q} W={ws} d={d}: all {} forms satisfy N <= {bound} (max seen {max_seen})",
                        stream.total()
                    ),
                    violations,
                    0,
                );
                row.witnesses = witnesses;
                rows.push(row);
            }
        }
    }
    SuiteReport::new("theorem41", rows)
}
