//! The acceptance gate: one test per criterion, each printing a single
//! pass/fail line. Everything here recomputes from scratch; no fixture data.

use wpcount_core::*;

fn ws(v: &[u32]) -> WeightSystem {
    WeightSystem::new(v.to_vec()).unwrap()
}

fn verdict_line(criterion: u32, ok: bool, desc: &str) {
    println!(
        "criterion {criterion}: {} - {desc}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {criterion} failed: {desc}");
}

const TUPLES: [&[u32]; 32] = [
    // n = 1
    &[1, 1],
    &[1, 2],
    &[1, 3],
    &[1, 6],
    &[2, 3],
    &[2, 4],
    &[2, 5],
    &[3, 4],
    &[3, 5],
    &[4, 6],
    &[5, 6],
    // n = 2
    &[1, 1, 1],
    &[1, 1, 2],
    &[1, 2, 2],
    &[1, 2, 3],
    &[1, 1, 3],
    &[2, 3, 5],
    &[1, 4, 6],
    &[2, 2, 3],
    &[3, 4, 5],
    &[2, 4, 6],
    &[1, 5, 6],
    &[6, 6, 6],
    // n = 3
    &[1, 1, 1, 1],
    &[1, 1, 2, 2],
    &[1, 2, 3, 4],
    &[1, 1, 1, 2],
    &[2, 3, 5, 6],
    &[1, 2, 2, 4],
    &[1, 3, 3, 3],
    &[2, 2, 2, 2],
    &[1, 2, 4, 6],
];

#[test]
fn criterion_1_point_counts() {
    let mut ok = true;
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let field = Field::of_order(q).unwrap();
        for tuple in TUPLES {
            let w = ws(tuple);
            let points = enumerate_points(&w, &field).unwrap();
            if points.len() as u64 != pn(w.n() as i64, q) {
                ok = false;
                eprintln!("{w} over GF({q}): {} points, expected p_n", points.len());
            }
            for p in &points {
                if representatives(p, &field).len() as u64 != q - 1 {
                    ok = false;
                    eprintln!("{w} over GF({q}): {} lacks q-1 representatives", p.format(&field));
                }
            }
        }
    }
    verdict_line(
        1,
        ok,
        "enumerate_points yields p_n points with q-1 representatives each \
         (32 weight tuples, q in {2,3,4,5,7,8,9})",
    );
}

#[test]
fn criterion_2_two_weight_formula() {
    let rep = run_suite("two-weights").unwrap();
    for row in rep.rows.iter().filter(|r| !r.pass) {
        eprintln!("{}: {} != {}", row.name, row.lhs, row.rhs);
    }
    verdict_line(2, rep.pass, "e_q(d;a_0,a_1) = min{p_1, d/a} on all admissible d");
}

#[test]
fn criterion_3_lower_bound_constructions() {
    let mut ok = true;

    // the q+1 points of P^1(F_q) as (alpha, beta) pairs
    let p1_pairs = |field: &Field| -> Vec<(u32, u32)> {
        let mut pairs = vec![(1u32, 0u32), (0, 1)];
        pairs.extend(field.nonzero_elements().map(|x| (1, x)));
        pairs
    };

    for (q_list, weights, r, s) in [
        (&[2u64, 3, 5][..], &[1u32, 1][..], 0usize, 1usize),
        (&[2, 3], &[1, 1, 2], 0, 1),
        (&[2, 3, 5], &[2, 3], 0, 1),
        (&[2, 3], &[1, 2, 3], 1, 2),
    ] {
        for &q in q_list {
            let field = Field::of_order(q).unwrap();
            let w = ws(weights);
            let n = w.n() as i64;
            let a_rs = gf::lcm(w.weight(r) as u64, w.weight(s) as u64);
            let max_m = (q + 1).min(3);
            for m in 1..=max_m {
                let d = m * a_rs;
                let pairs = &p1_pairs(&field)[..m as usize];
                let f = product_of_forms(pairs, r, s, &w, d, &field).unwrap();
                let count = count_zeros(&f, &field).unwrap();
                let expected = m * q.pow((n - 1) as u32) + pn(n - 2, q);
                if count != expected {
                    ok = false;
                    eprintln!(
                        "product of {m} forms on {w}/GF({q}): N = {count}, expected {expected}"
                    );
                }
            }
        }
    }

    for q in [2u64, 3] {
        let field = Field::of_order(q).unwrap();
        for weights in [&[1u32, 1][..], &[1, 1, 1]] {
            let w = ws(weights);
            for d in [q + 1, q + 2] {
                let f = saturating_poly(d, &w, &field).unwrap();
                let count = count_zeros(&f, &field).unwrap();
                let expected = pn(w.n() as i64, q);
                if count != expected {
                    ok = false;
                    eprintln!("saturating d={d} on {w}/GF({q}): N = {count}, expected {expected}");
                }
            }
        }
    }

    verdict_line(
        3,
        ok,
        "product-of-forms counts (d/a_rs)q^{n-1}+p_{n-2}; saturating polynomial counts p_n",
    );
}

#[test]
fn criterion_4_theorem41_exhaustive() {
    let rep = run_suite("theorem41").unwrap();
    for row in rep.rows.iter().filter(|r| !r.pass) {
        eprintln!("{}: {:?}", row.name, row.witnesses);
    }
    verdict_line(
        4,
        rep.pass,
        "every nonzero F of admissible degree d <= q+1 satisfies N(F) <= dq+1 (q in {2,3}, four weight tuples)",
    );
}

#[test]
fn criterion_5_main_theorem() {
    let rep = run_suite("main-theorem").unwrap();
    for row in rep.rows.iter().filter(|r| !r.pass) {
        eprintln!("{}: {} != {}", row.name, row.lhs, row.rhs);
    }
    verdict_line(
        5,
        rep.pass,
        "e_q(d;1,1,a_2) = min{p_2, dq+1} and e_2(2;1,1,2,2) = 11",
    );
}

#[test]
fn criterion_6_proposition_audits() {
    let rep = run_suite("mondo").unwrap();
    for row in rep.rows.iter().filter(|r| !r.pass) {
        eprintln!("{}: {:?}", row.name, row.witnesses);
    }
    verdict_line(
        6,
        rep.pass,
        "identity and averaged-pullback audits pass on 200 seeded forms per SAFE configuration, \
         with equality under pairwise-coprime weights",
    );
}

#[test]
fn criterion_7_unconditional_preimage_identity() {
    let mut ok = true;
    // includes the UNSAFE configuration (1,2,2)/GF(3)
    for (q, weights, d) in [
        (2u64, &[1u32, 2][..], 2u64),
        (3, &[1, 2], 2),
        (3, &[1, 2, 2], 2),
        (3, &[1, 1, 2], 2),
        (5, &[2, 3], 6),
    ] {
        let field = Field::of_order(q).unwrap();
        let w = ws(weights);
        let stream = CandidateStream::new(&w, d, &field, DEFAULT_SEARCH_BUDGET).unwrap();
        let take = stream.total().min(25);
        for idx in 0..take {
            let f = stream.get(idx, &field);
            let points = enumerate_points(&w, &field).unwrap();
            for i in 0..=w.n() {
                let lhs = count_zeros(&pullback(&f, i), &field).unwrap();
                let mut rhs = 0u64;
                for p in points.iter().filter(|p| f.evaluate(p.coords(), &field) == 0) {
                    rhs += preimage_count(p, i, &w, &field).unwrap().0;
                }
                if lhs != rhs {
                    ok = false;
                    eprintln!(
                        "{w}/GF({q}) i={i} f={}: N(pullback) = {lhs}, fiber sum = {rhs}",
                        f.to_text(&field)
                    );
                }
            }
        }
    }
    verdict_line(
        7,
        ok,
        "N(pullback(f,i)) equals the sum of enumerated fiber sizes over V(f), including UNSAFE configurations",
    );
}

#[test]
fn criterion_8_serre_tightness() {
    let rep = run_suite("serre-p2").unwrap();
    for row in rep.rows.iter().filter(|r| !r.pass) {
        eprintln!("{}: {} != {}", row.name, row.lhs, row.rhs);
    }
    // witness shape is recorded, not asserted; surface it in the log
    for row in &rep.rows {
        for note in &row.witnesses {
            println!("  [recorded] {}: {note}", row.name);
        }
    }
    verdict_line(
        8,
        rep.pass,
        "e_q(d;1,..,1) = dq^{n-1}+p_{n-2} for d <= q and p_n beyond, witness shapes recorded",
    );
}

#[test]
fn criterion_9_discrepancy_regression() {
    let field = Field::of_order(3).unwrap();
    let w = ws(&[1, 2, 2]);
    let target = canonicalize(&[0, 1, 1], &w, &field).unwrap();
    let target_str = target.format(&field);

    let pc = partition_counts_space(&w, 1, PartitionMode::Literal, &field).unwrap();
    let overlap_hit = pc.overlap.iter().any(|o| o.point == target_str);
    let (fiber, _) = preimage_count(&target, 1, &w, &field).unwrap();
    let ok = overlap_hit && fiber == 1 && !is_safe(&w, &field, 1);
    if !ok {
        eprintln!(
            "overlap_hit = {overlap_hit}, fiber = {fiber}, safe = {}",
            is_safe(&w, &field, 1)
        );
    }
    verdict_line(
        9,
        ok,
        "W=(1,2,2), q=3, i=1: literal-class overlap at the point of [0:1:1] and an enumerated pi_1 fiber of 1",
    );
}
