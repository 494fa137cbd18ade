//! Characteristic 7 recipes, run as verified scans over the parameter `t`.

use rayon::prelude::*;
use serde::Serialize;

use crate::ec::{e_t, j3, quotient_partner, TRACE_BOUND};
use crate::error::{Error, Result};
use crate::gf::{m_q, Element, Field};
use crate::s3q::sum;

use super::ct::{ct, ct_e2_model};
use super::j1v::{equal_invariant_vs, from_j1_v};
use super::{ConstructionParams, RouteTag};

fn require_char7_odd(k: &Field, a: i64) -> Result<()> {
    if k.p() != 7 {
        return Err(Error::WrongCharacteristic {
            expected: "7",
            got: k.p(),
        });
    }
    if k.n().is_multiple_of(2) {
        return Err(Error::degenerate("the extension degree must be odd"));
    }
    if a.unsigned_abs() > m_q(k.q()) {
        return Err(Error::degenerate(format!("|a| = {} exceeds m_q", a.abs())));
    }
    if a.rem_euclid(7) == 0 {
        return Err(Error::degenerate("a is divisible by 7"));
    }
    Ok(())
}

/// First `t` in ascending order with `t^2 + t + 1` a nonzero square and the
/// `E2(t)` model of trace `a`; the member `C_t` then has `q + 1 - 3a` points.
pub fn char7_triple_trace(k: &Field, a: i64) -> Result<ConstructionParams> {
    require_char7_odd(k, a)?;
    if ![9, 15, 18].contains(&a.rem_euclid(21)) {
        return Err(Error::degenerate(format!("a = {a} is not 9, 15 or 18 mod 21")));
    }
    let a7 = a.rem_euclid(7) as u64;
    let ts: Vec<Element> = k.elements().collect();
    let hit = ts.par_iter().find_map_first(|&t| {
        let s = sum(k, [k.square(t), t, k.one()]);
        if t == k.one() || s.is_zero() || !k.is_square(s) {
            return None;
        }
        let e2 = ct_e2_model(k, t).ok()?;
        // Hasse invariant precheck before counting.
        if k.norm_to_prime(e2.hasse_char7().ok()?) != a7 {
            return None;
        }
        (e2.trace_with_bound(TRACE_BOUND).ok()?.t == a).then_some(t)
    });
    let t = hit.ok_or_else(|| {
        Error::NotFound(format!("no t with t^2 + t + 1 square and trace {a} over {}", k.literal()))
    })?;
    let mut c = ct(k, t)?;
    c.route = RouteTag::Char7A;
    let expect = k.q() as i64 + 1 - 3 * a;
    match c.predict()? {
        Some(p) if p.n == expect => {}
        Some(p) => {
            return Err(Error::Mismatch {
                predicted: expect,
                counted: p.n,
            })
        }
        None => {}
    }
    c.notes.push(format!("trace of E2(t) is {a}; expected N = {expect}"));
    Ok(c)
}

/// Which residue-class conditions admit `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Mod12Readings {
    /// `a ≡ 1, 4, 5, 7, 8, 11 (mod 12)`.
    pub classes: bool,
    /// The literal wording `a ≢ -1 (mod 3)` and `a ≢ 2 (mod 4)`, or
    /// `a ≡ 1 (mod 3)` and `a ≢ 2 (mod 4)`.
    pub literal: bool,
}

impl Mod12Readings {
    pub fn of(a: i64) -> Self {
        let r12 = a.rem_euclid(12);
        let not2mod4 = a.rem_euclid(4) != 2;
        Mod12Readings {
            classes: [1, 4, 5, 7, 8, 11].contains(&r12),
            literal: not2mod4 && a.rem_euclid(3) != 2,
        }
    }
}

/// Outcome of the `M3 = ρ` recipe for one trace `a`.
#[derive(Clone, Debug)]
pub struct Mod12Outcome {
    pub a: i64,
    pub readings: Mod12Readings,
    /// Trace of `E_t` actually used: `a` or `-a`, whichever is `≡ -1 (mod 3)`.
    pub a_eff: i64,
    pub t: Option<Element>,
    /// `q + 1 - 3a` and `q + 1 + 3a`.
    pub minus: Option<ConstructionParams>,
    pub plus: Option<ConstructionParams>,
    /// Why the recipe could not complete, when it could not.
    pub blocked: Option<String>,
    pub notes: Vec<String>,
}

fn two_torsion_rational(k: &Field, t: Element) -> Result<usize> {
    // y^2 + xy + ty = x^3  <=>  (2y + x + t)^2 = 4x^3 + (x + t)^2
    let f = crate::poly::UniPoly::new(
        k,
        vec![k.square(t), k.mul_int(t, 2), k.one(), k.from_i64(4)],
    );
    Ok(f.roots()?.len())
}

/// Members on the branches `M3 = ρ^i` (i = 1, 2) over `J = j3(t)` whose
/// predicted count is `target`.
fn branch_members(k: &Field, t: Element, target: i64) -> Result<Option<ConstructionParams>> {
    let j = j3(k, t)?;
    if j.is_zero() || j == k.from_i64(1728) {
        return Ok(None);
    }
    for branch in [1u8, 2] {
        for v in equal_invariant_vs(k, j, branch)? {
            let Ok(mut c) = from_j1_v(k, j, v) else { continue };
            if let Some(p) = c.predict()? {
                if p.n == target {
                    c.route = RouteTag::Char7B;
                    c.t = Some(t);
                    c.branch = Some(branch);
                    return Ok(Some(c));
                }
            }
        }
    }
    Ok(None)
}

/// Scans `t` for `E_t` with trace `a_eff ≡ -1 (mod 3)` and builds members
/// with `q + 1 ∓ 3a` points on the `M3 = ρ` branches over the invariant of
/// `E_t` or of its 3-isogenous partner.
pub fn char7_mod12(k: &Field, a: i64) -> Result<Mod12Outcome> {
    require_char7_odd(k, a)?;
    let readings = Mod12Readings::of(a);
    let a_eff = if a.rem_euclid(3) == 2 { a } else { -a };
    let mut out = Mod12Outcome {
        a,
        readings,
        a_eff,
        t: None,
        minus: None,
        plus: None,
        blocked: None,
        notes: Vec::new(),
    };
    if a.rem_euclid(3) == 0 {
        out.blocked = Some("3 divides a: no curve with trace ±a has a rational 3-torsion point".into());
        return Ok(out);
    }
    let q1 = k.q() as i64 + 1;
    let ts: Vec<Element> = k.elements().collect();
    let candidates: Vec<Element> = ts
        .par_iter()
        .filter(|&&t| {
            e_t(k, t)
                .and_then(|e| e.trace_with_bound(TRACE_BOUND))
                .map(|r| r.t == a_eff)
                .unwrap_or(false)
        })
        .copied()
        .collect();
    let generic: Vec<Element> = candidates
        .iter()
        .copied()
        .filter(|&t| j3(k, t).map(|j| !j.is_zero() && j != k.from_i64(1728)).unwrap_or(false))
        .collect();
    out.notes.push(format!(
        "{} parameters t with trace(E_t) = {a_eff}, {} with invariant outside {{0, 1728}}",
        candidates.len(),
        generic.len()
    ));
    if generic.is_empty() {
        out.blocked = Some(if candidates.is_empty() {
            format!("no E_t with trace {a_eff}")
        } else {
            format!("every E_t with trace {a_eff} has invariant 0 or 1728")
        });
        return Ok(out);
    }
    for &t in &generic {
        let (tp, _) = quotient_partner(k, t)?;
        let chi_plus = k.quadratic_character(k.add(t, k.one()));
        let chi_minus = k.quadratic_character(k.neg(t));
        let mut found = (None, None);
        for param in [t, tp] {
            if found.0.is_none() {
                found.0 = branch_members(k, param, q1 - 3 * a)?;
            }
            if found.1.is_none() {
                found.1 = branch_members(k, param, q1 + 3 * a)?;
            }
        }
        if let (Some(m), Some(p)) = found {
            let disc_sq = k.is_square(k.mul(t, k.add(t, k.one())));
            let two_tors = two_torsion_rational(k, t)?;
            out.notes.push(format!(
                "t = {}: chi(1 + t) = {chi_plus}, chi(-t) = {chi_minus}; t(1 + t) {} a square, {} rational 2-torsion abscissae",
                k.format(t),
                if disc_sq { "is" } else { "is not" },
                two_tors
            ));
            out.t = Some(t);
            out.minus = Some(m);
            out.plus = Some(p);
            return Ok(out);
        }
    }
    out.blocked = Some(format!(
        "no member with q + 1 ∓ 3a points on the M3 = ρ branches over the {} admissible t",
        generic.len()
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldDesc;

    #[test]
    fn readings_differ_on_residues_mod_three() {
        for a in -50i64..50 {
            let r = Mod12Readings::of(a);
            let m4 = a.rem_euclid(4) != 2;
            assert_eq!(r.classes, m4 && a.rem_euclid(3) != 0);
            assert_eq!(r.literal, m4 && a.rem_euclid(3) != 2);
        }
    }

    #[test]
    fn triple_trace_over_f7() {
        // m_7 = 5; a = -3 ≡ 18 (mod 21).
        let k = FieldDesc::new(7, 1).unwrap();
        if let Ok(c) = char7_triple_trace(&k, -3) {
            assert_eq!(c.quartic.count_points().unwrap() as i64, 8 + 9);
        }
    }
}
