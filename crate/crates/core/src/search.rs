//! Exact computation of e_q(d; a_0,...,a_n): exhaustive search over the
//! nonzero degree-d forms up to scalar, seeded random lower-bound search, and
//! an append-only JSONL result cache whose entries are re-verified on read.

use crate::counting::count_zeros_on;
use crate::gf::Field;
use crate::wpoly::{monomial_basis, parse_poly, Monomial, WeightedPolynomial};
use crate::wps::{enumerate_points, CanonicalPoint, WeightSystem, WpsError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::{BufRead, Write};
use thiserror::Error;

/// Cap on the number of normalized candidates an exhaustive search will visit.
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;
/// At most this many maximizing witnesses are stored per result.
pub const WITNESS_CAP: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("S_{0} is empty for weights {1}: no monomials of that degree")]
    EmptyBasis(u64, String),
    #[error("search over {0} candidates exceeds the budget of {1}")]
    BudgetExceeded(u64, u64),
    #[error("at least one trial is required")]
    NoTrials,
    #[error(transparent)]
    Wps(#[from] WpsError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Exhaustive,
    Random,
}

/// The outcome of one e_q search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub q: u32,
    pub weights: Vec<u32>,
    pub d: u64,
    pub mode: SearchMode,
    /// Largest point count found; equals e_q when `exhaustive` is set.
    pub value: u64,
    pub witnesses: Vec<String>,
    /// Total number of polynomials attaining `value` (exhaustive mode).
    pub maximizer_count: u64,
    pub searched: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub exhaustive: bool,
    pub version: String,
}

/// One representative per scalar class of S_d \ {0}: coefficient vectors over
/// the basis order whose first nonzero entry is 1, indexed in ascending
/// lexicographic order (canonical element order per digit).
#[derive(Debug)]
pub struct CandidateStream {
    weights: WeightSystem,
    degree: u64,
    basis: Vec<Monomial>,
    q: u64,
    total: u64,
}

impl CandidateStream {
    pub fn new(
        w: &WeightSystem,
        d: u64,
        field: &Field,
        budget: u64,
    ) -> Result<CandidateStream, SearchError> {
        let basis = monomial_basis(w, d);
        if basis.is_empty() {
            return Err(SearchError::EmptyBasis(d, w.to_string()));
        }
        let q = field.q() as u64;
        let m = basis.len() as u32;
        // (q^m - 1)/(q - 1), guarded against overflow past the budget
        let mut total = 0u64;
        for e in 0..m {
            total = total.saturating_add(q.saturating_pow(e));
            if total > budget {
                return Err(SearchError::BudgetExceeded(total, budget));
            }
        }
        Ok(CandidateStream {
            weights: w.clone(),
            degree: d,
            basis,
            q,
            total,
        })
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    /// Coefficient vector of the idx-th candidate, entries as element keys in
    /// the canonical order (decoded to field elements by the caller).
    fn coeff_keys(&self, idx: u64) -> Vec<u32> {
        let m = self.basis.len();
        // blocks by leading position: lead = m-1 has 1 vector, lead = l has
        // q^{m-1-l}, and ascending lex order means lead descends
        let mut rest = idx;
        let mut lead = m - 1;
        loop {
            let block = self.q.pow((m - 1 - lead) as u32);
            if rest < block {
                break;
            }
            rest -= block;
            lead -= 1;
        }
        let mut keys = vec![0u32; m];
        keys[lead] = 1;
        for j in (lead + 1..m).rev() {
            keys[j] = (rest % self.q) as u32;
            rest /= self.q;
        }
        keys
    }

    pub fn get(&self, idx: u64, field: &Field) -> WeightedPolynomial {
        let coeffs: Vec<u32> = self
            .coeff_keys(idx)
            .iter()
            .map(|&k| field.elem_from_key(k))
            .collect();
        WeightedPolynomial::from_coeffs(self.weights.clone(), self.degree, &self.basis, &coeffs)
    }
}

struct ChunkBest {
    value: u64,
    witnesses: Vec<u64>,
    maximizers: u64,
}

fn merge(mut a: ChunkBest, b: ChunkBest) -> ChunkBest {
    if b.value > a.value {
        b
    } else if b.value < a.value {
        a
    } else {
        a.maximizers += b.maximizers;
        for idx in b.witnesses {
            if a.witnesses.len() < WITNESS_CAP {
                a.witnesses.push(idx);
            }
        }
        a
    }
}

/// Exact e_q(d; W) by exhaustive search over the normalized candidate stream.
pub fn eq_exhaustive(
    w: &WeightSystem,
    d: u64,
    field: &Field,
) -> Result<SearchResult, SearchError> {
    eq_exhaustive_with_budget(w, d, field, DEFAULT_SEARCH_BUDGET)
}

pub fn eq_exhaustive_with_budget(
    w: &WeightSystem,
    d: u64,
    field: &Field,
    budget: u64,
) -> Result<SearchResult, SearchError> {
    let stream = CandidateStream::new(w, d, field, budget)?;
    let points = enumerate_points(w, field)?;
    let values = monomial_values(&stream.basis, &points, field);
    let m = stream.basis.len();
    let total = stream.total;

    let chunk = 1u64 << 14;
    let n_chunks = total.div_ceil(chunk);
    let best = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * chunk;
            let hi = total.min(lo + chunk);
            let mut best = ChunkBest {
                value: 0,
                witnesses: Vec::new(),
                maximizers: 0,
            };
            let mut coeffs = vec![0u32; m];
            for idx in lo..hi {
                let keys = stream.coeff_keys(idx);
                for (c, &k) in coeffs.iter_mut().zip(&keys) {
                    *c = field.elem_from_key(k);
                }
                let mut zeros = 0u64;
                for row in &values {
                    let mut acc = 0u32;
                    for (&c, &v) in coeffs.iter().zip(row) {
                        if c != 0 && v != 0 {
                            acc = field.add(acc, field.mul(c, v));
                        }
                    }
                    if acc == 0 {
                        zeros += 1;
                    }
                }
                if zeros > best.value {
                    best.value = zeros;
                    best.witnesses.clear();
                    best.witnesses.push(idx);
                    best.maximizers = 1;
                } else if zeros == best.value {
                    best.maximizers += 1;
                    if best.witnesses.len() < WITNESS_CAP {
                        best.witnesses.push(idx);
                    }
                }
            }
            (c, best)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .map(|(_, b)| b)
        .reduce(merge)
        .expect("the stream is nonempty");

    let witnesses = best
        .witnesses
        .iter()
        .map(|&idx| stream.get(idx, field).to_text(field))
        .collect();
    Ok(SearchResult {
        q: field.q(),
        weights: w.weights().to_vec(),
        d,
        mode: SearchMode::Exhaustive,
        value: best.value,
        witnesses,
        maximizer_count: best.maximizers,
        searched: total,
        seed: None,
        exhaustive: true,
        version: env!("CARGO_PKG_VERSION").to_string(),
    })
}

/// Seeded-uniform sampling of normalized candidates: a reproducible lower
/// bound on e_q for spaces too large to exhaust.
pub fn eq_random(
    w: &WeightSystem,
    d: u64,
    field: &Field,
    trials: u64,
    seed: u64,
) -> Result<SearchResult, SearchError> {
    if trials == 0 {
        return Err(SearchError::NoTrials);
    }
    let stream = CandidateStream::new(w, d, field, u64::MAX)?;
    let points = enumerate_points(w, field)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best_value = 0u64;
    let mut best_idx: Vec<u64> = Vec::new();
    let mut maximizers = 0u64;
    for _ in 0..trials {
        let idx = rng.gen_range(0..stream.total);
        let f = stream.get(idx, field);
        let zeros = count_zeros_on(&f, &points, field);
        if zeros > best_value {
            best_value = zeros;
            best_idx.clear();
            best_idx.push(idx);
            maximizers = 1;
        } else if zeros == best_value {
            maximizers += 1;
            if best_idx.len() < WITNESS_CAP && !best_idx.contains(&idx) {
                best_idx.push(idx);
            }
        }
    }
    Ok(SearchResult {
        q: field.q(),
        weights: w.weights().to_vec(),
        d,
        mode: SearchMode::Random,
        value: best_value,
        witnesses: best_idx
            .iter()
            .map(|&idx| stream.get(idx, field).to_text(field))
            .collect(),
        maximizer_count: maximizers,
        searched: trials,
        seed: Some(seed),
        exhaustive: false,
        version: env!("CARGO_PKG_VERSION").to_string(),
    })
}

/// values[p][j] = j-th basis monomial evaluated at the p-th point.
fn monomial_values(
    basis: &[Monomial],
    points: &[CanonicalPoint],
    field: &Field,
) -> Vec<Vec<u32>> {
    points
        .iter()
        .map(|p| {
            basis
                .iter()
                .map(|mono| {
                    let mut acc = 1u32;
                    for (i, &e) in mono.exponents().iter().enumerate() {
                        if e > 0 {
                            if p.coords()[i] == 0 {
                                acc = 0;
                                break;
                            }
                            acc = field.mul(acc, field.pow(p.coords()[i], e as i64));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Re-count every stored witness and check it attains the stored value.
pub fn verify_result(res: &SearchResult, field: &Field) -> bool {
    let w = match WeightSystem::new(res.weights.clone()) {
        Ok(w) => w,
        Err(_) => return false,
    };
    if field.q() != res.q {
        return false;
    }
    let points = match enumerate_points(&w, field) {
        Ok(p) => p,
        Err(_) => return false,
    };
    res.witnesses.iter().all(|text| {
        parse_poly(text, &w, field)
            .map(|f| count_zeros_on(&f, &points, field) == res.value)
            .unwrap_or(false)
    })
}

/// Scan a JSONL cache for a result with matching key, re-verifying witnesses
/// before trusting it. Malformed lines are skipped.
pub fn cache_lookup(
    path: &std::path::Path,
    q: u32,
    weights: &[u32],
    d: u64,
    mode: SearchMode,
    field: &Field,
) -> Option<SearchResult> {
    let file = std::fs::File::open(path).ok()?;
    for line in std::io::BufReader::new(file).lines() {
        let line = line.ok()?;
        if line.trim().is_empty() {
            continue;
        }
        if let Ok(res) = serde_json::from_str::<SearchResult>(&line) {
            if res.q == q && res.weights == weights && res.d == d && res.mode == mode
                && verify_result(&res, field) {
                    return Some(res);
                }
        }
    }
    None
}

pub fn cache_append(path: &std::path::Path, res: &SearchResult) -> std::io::Result<()> {
    let mut file = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)?;
    writeln!(file, "{}", serde_json::to_string(res).expect("serializable"))
}
