//! Defect evidence over `F_{3^n}` from the characteristic-3 family.

use rayon::prelude::*;

use crate::construct::{char3_cube_pair, char3_from_invariants, ConstructionParams};
use crate::ec::standard_model;
use crate::error::{Error, Result};
use crate::gf::{m_q, Element, Field, FieldDesc};

use super::cert::Certificate;
use super::family::{Best, SearchReport};

/// Traces of `E(j)` for every `j ≠ 0`, indexed by packed value; one count
/// per Frobenius orbit.
fn trace_table(k: &Field) -> Result<Vec<i64>> {
    let q = k.q() as usize;
    let reps: Vec<Element> = k
        .elements()
        .filter(|&j| !j.is_zero() && (1..k.n()).all(|i| k.frobenius(j, i) >= j))
        .collect();
    let traced: Vec<(Element, i64)> = reps
        .par_iter()
        .map(|&j| Ok((j, standard_model(k, j)?.trace()?.t)))
        .collect::<Result<_>>()?;
    let mut table = vec![0i64; q];
    for (j, t) in traced {
        for i in 0..k.n() {
            table[k.frobenius(j, i).packed() as usize] = t;
        }
    }
    Ok(table)
}

fn certify(c: ConstructionParams, count_bound: u128) -> Result<(ConstructionParams, Certificate)> {
    let mut c = c;
    c.validate(count_bound)?;
    let cert = Certificate::from_params(&c)?;
    Ok((c, cert))
}

/// Largest count reachable by the characteristic-3 family over `F_{3^n}`:
/// the conjugate pairs `(j, j^3)` at the largest trace prime to 3, and
/// pairs `(J1, J2)` of invariants with near-extremal traces.
pub fn char3_defect(n: u32, count_bound: u128) -> Result<SearchReport> {
    if n.is_multiple_of(2) || !(3..=11).contains(&n) {
        return Err(Error::degenerate("n must be odd with 3 ≤ n ≤ 11"));
    }
    let k = FieldDesc::new(3, n)?;
    let q = k.q() as i64;
    let m = m_q(k.q()) as i64;
    let table = trace_table(&k)?;
    let tr = |j: Element| table[j.packed() as usize];
    let mut report = SearchReport::empty(&k, m as u64);
    report.j_set = table.iter().filter(|t| t.abs() >= m - 6).count();

    // Conjugate pairs.
    let outside_f3: Vec<Element> = k.elements().filter(|&j| !k.is_in_prime_field(j)).collect();
    let a = outside_f3
        .iter()
        .map(|&j| tr(j).abs())
        .filter(|t| t % 3 != 0)
        .max()
        .ok_or_else(|| Error::NotFound("no trace prime to 3 outside F_3".into()))?;
    report.target = a as u64;
    report.notes.push(format!(
        "largest trace prime to 3 outside F_3: {a}; conjugate pairs give D ≤ {}",
        3 * (m - a)
    ));
    let j = *outside_f3.iter().find(|&&j| tr(j).abs() == a).expect("present");
    let (c, cp) = char3_cube_pair(&k, j)?;
    let mut best: Option<(i64, Certificate)> = None;
    let mut consider = |cert: Certificate| {
        let n = cert.n().expect("predicted");
        if best.as_ref().is_none_or(|(b, _)| n > *b) {
            best = Some((n, cert));
        }
    };
    for x in [c, cp] {
        let (_, cert) = certify(x, count_bound)?;
        consider(cert);
    }

    // Mixed pairs among near-extremal invariants.
    let top: Vec<Element> = k
        .elements()
        .filter(|&j| !j.is_zero() && tr(j).abs() >= m - 6)
        .collect();
    let scored: Vec<(i64, Element, Element)> = top
        .par_iter()
        .flat_map_iter(|&j1| {
            let k = &k;
            top.iter().filter_map(move |&j2| {
                if j1 == j2 {
                    return None;
                }
                let a3 = *k.cube_roots(k.neg(k.div(j1, j2).ok()?)).first()?;
                let h = k.mul(a3, k.add(a3, k.one()));
                if h.is_zero() {
                    return None;
                }
                let chi = k.quadratic_character(h) as i64;
                Some((q + 1 - chi * (2 * tr(j1) + tr(j2)), j1, j2))
            })
        })
        .collect();
    report.candidates = scored.len() + 2;
    if let Some(&(_, j1, j2)) = scored
        .iter()
        .max_by_key(|(n, j1, j2)| (*n, std::cmp::Reverse((*j1, *j2))))
    {
        let (_, cert) = certify(char3_from_invariants(&k, j1, j2)?, count_bound)?;
        report
            .notes
            .push(format!("best mixed pair: J1 = {}, J2 = {}", k.format(j1), k.format(j2)));
        consider(cert);
    }
    if let Some((n, certificate)) = best {
        report.set_best(Best { n, certificate });
    }
    Ok(report)
}
