//! The optimality search over pairs of invariants with extremal trace.

use rayon::prelude::*;
use serde::Serialize;

use crate::construct::{from_j1_v, solve_v, ConstructionParams};
use crate::ec::standard_model;
use crate::error::{Error, Result};
use crate::gf::{m_q, primes_in, Element, Field, FieldDesc, TABLE_LIMIT};

use super::cert::Certificate;

/// Values of `m^2 - 4q` for which no optimal curve exists.
pub const EXCLUDED_DISCS: [i64; 4] = [-3, -4, -8, -11];

/// Which pairs `(j, j')` of the extremal set are tried.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairMode {
    #[default]
    All,
    /// `j' = j`.
    Diagonal,
    /// `j' = j^p`.
    Frobenius,
}

/// Best count found and its certificate.
#[derive(Clone, Debug, Serialize)]
pub struct Best {
    #[serde(rename = "N")]
    pub n: i64,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub field: String,
    pub q: u64,
    pub m_q: u64,
    pub excluded: bool,
    /// Absolute trace targeted when building the extremal set.
    pub target: u64,
    pub j_set: usize,
    pub candidates: usize,
    pub best: Option<Best>,
    pub worst: Option<Best>,
    /// `q + 1 + 3 m_q - best`.
    pub defect: Option<i64>,
    pub optimal: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<Certificate>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl SearchReport {
    pub(crate) fn empty(k: &Field, target: u64) -> Self {
        let q = k.q();
        let m = m_q(q);
        SearchReport {
            field: k.literal(),
            q,
            m_q: m,
            excluded: is_excluded(q),
            target,
            j_set: 0,
            candidates: 0,
            best: None,
            worst: None,
            defect: None,
            optimal: false,
            certificates: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Serre–Weil bound for genus 3.
    pub fn bound(&self) -> i64 {
        self.q as i64 + 1 + 3 * self.m_q as i64
    }

    pub(crate) fn set_best(&mut self, best: Best) {
        self.defect = Some(self.bound() - best.n);
        self.optimal = best.n == self.bound();
        self.best = Some(best);
    }

    pub fn best_n(&self) -> Option<i64> {
        self.best.as_ref().map(|b| b.n)
    }

    /// `q, m_q, bestN, defect, method` as a TSV row.
    pub fn tsv_row(&self) -> String {
        let best = self.best.as_ref();
        format!(
            "{}\t{}\t{}\t{}\t{}",
            self.q,
            self.m_q,
            best.map_or("-".into(), |b| b.n.to_string()),
            self.defect.map_or("-".into(), |d| d.to_string()),
            best.map_or("-".into(), |b| format!("{:?}", b.certificate.method).to_uppercase()),
        )
    }
}

pub const TSV_HEADER: &str = "q\tm_q\tbestN\tdefect\tmethod";

/// `m_q^2 - 4q ∈ {-3, -4, -8, -11}`.
pub fn is_excluded(q: u64) -> bool {
    let m = m_q(q) as i128;
    EXCLUDED_DISCS.contains(&((m * m - 4 * q as i128) as i64))
}

/// Every `j ∉ {0, 1728}` whose standard model has trace `±target`, sorted.
pub fn optimal_j_set(k: &Field, target: u64) -> Result<Vec<Element>> {
    if k.q() > TABLE_LIMIT {
        return Err(Error::Budget {
            what: "invariant scan",
            needed: k.q() as u128,
            limit: TABLE_LIMIT as u128,
        });
    }
    if target > m_q(k.q()) {
        return Ok(Vec::new());
    }
    let js: Vec<Element> = k.elements().collect();
    let mut out: Vec<Element> = js
        .par_iter()
        .filter_map(|&j| {
            let e = standard_model(k, j).ok()?;
            let t = e.trace().ok()?.t;
            (t.unsigned_abs() == target).then_some(j)
        })
        .collect();
    out.sort();
    Ok(out)
}

fn pairs(k: &Field, js: &[Element], mode: PairMode) -> Vec<(Element, Element)> {
    match mode {
        PairMode::All => js.iter().flat_map(|&a| js.iter().map(move |&b| (a, b))).collect(),
        PairMode::Diagonal => js.iter().map(|&a| (a, a)).collect(),
        PairMode::Frobenius => js.iter().map(|&a| (a, k.frobenius(a, 1))).collect(),
    }
}

/// Runs the search: for each pair, the base-field roots of the solvent give
/// candidate members, whose counts are predicted from the traces of their
/// quotients. The best candidate is recounted when `q^2 ≤ count_bound`.
pub fn search_family(k: &Field, mode: PairMode, count_bound: u128) -> Result<SearchReport> {
    if matches!(k.p(), 2 | 3) {
        return Err(Error::WrongCharacteristic {
            expected: "at least 5",
            got: k.p(),
        });
    }
    let m = m_q(k.q());
    let excluded = is_excluded(k.q());
    let target = if excluded { m - 1 } else { m };
    let mut report = SearchReport::empty(k, target);
    if excluded {
        report
            .notes
            .push(format!("m_q^2 - 4q is excluded; extremal set built for |trace| = {target}"));
    }
    let js = optimal_j_set(k, target)?;
    report.j_set = js.len();
    let cands: Vec<(Element, Element, Element)> = pairs(k, &js, mode)
        .into_par_iter()
        .map(|(j1, j2)| {
            Ok(solve_v(k, j1, j2)?
                .into_iter()
                .map(|v| (j1, j2, v))
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let mut built: Vec<ConstructionParams> = cands
        .par_iter()
        .filter_map(|&(j1, _, v)| {
            let mut c = from_j1_v(k, j1, v).ok()?;
            c.prediction = c.predict().ok()?;
            c.prediction?;
            Some(c)
        })
        .collect();
    report.candidates = built.len();
    let key = |c: &ConstructionParams| {
        (
            c.prediction.map(|p| p.n).unwrap_or(i64::MIN),
            std::cmp::Reverse((c.j1, c.j2, c.v)),
        )
    };
    built.sort_by_key(|c| key(c));
    let pick = |c: Option<&ConstructionParams>| -> Result<Option<Best>> {
        let Some(c) = c else { return Ok(None) };
        let mut c = c.clone();
        c.validate(count_bound)?;
        let certificate = Certificate::from_params(&c)?;
        let n = certificate.n().expect("predicted");
        Ok(Some(Best { n, certificate }))
    };
    report.worst = pick(built.first())?;
    if let Some(b) = pick(built.last())? {
        report.set_best(b);
    }
    Ok(report)
}

/// Outcome of a prime-range scan.
#[derive(Clone, Debug, Serialize)]
pub struct PrimeScan {
    pub pmin: u64,
    pub pmax: u64,
    /// Primes without an optimal certificate.
    pub failures: Vec<u64>,
    /// Primes with `m^2 - 4p` excluded.
    pub excluded: Vec<u64>,
    /// Primes outside the supported characteristics (2 and 3).
    pub skipped: Vec<u64>,
    /// Per-prime reports for the failures, as diagnostics.
    pub diagnostics: Vec<SearchReport>,
    /// Number of primes with an optimal certificate backed by a count.
    pub counted_optimal: usize,
}

/// `search_family` over every prime in `[pmin, pmax]`.
pub fn scan_primes(pmin: u64, pmax: u64, count_bound: u128) -> Result<PrimeScan> {
    let primes = primes_in(pmin, pmax);
    let reports: Vec<(u64, Option<SearchReport>)> = primes
        .par_iter()
        .map(|&p| {
            if p < 5 {
                return Ok((p, None));
            }
            let k = FieldDesc::new(p, 1)?;
            Ok((p, Some(search_family(&k, PairMode::All, count_bound)?)))
        })
        .collect::<Result<_>>()?;
    let mut out = PrimeScan {
        pmin,
        pmax,
        failures: Vec::new(),
        excluded: Vec::new(),
        skipped: Vec::new(),
        diagnostics: Vec::new(),
        counted_optimal: 0,
    };
    for (p, r) in reports {
        let Some(r) = r else {
            out.skipped.push(p);
            continue;
        };
        if r.excluded {
            out.excluded.push(p);
        } else if !r.optimal {
            out.failures.push(p);
            out.diagnostics.push(r);
        } else if r.best.as_ref().is_some_and(|b| b.certificate.verified_n.is_some()) {
            out.counted_optimal += 1;
        }
    }
    Ok(out)
}
