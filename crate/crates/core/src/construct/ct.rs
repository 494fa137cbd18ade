//! The equal-invariant family `C_t` (`M3 = 1`, `J1 = J2 = 1728 t^3`) and the
//! thirteen rational CM invariants.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::ec::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::gf::{factor, format_rational, Element, Field};
use crate::s3q::{sum, S3Quartic};

use super::j1v::require_large_char;
use super::{ConstructionParams, RouteTag};

/// `(a1, a2)` of `C_t`.
pub fn ct_coefficients(k: &Field, t: Element) -> Result<(Element, Element)> {
    require_large_char(k)?;
    let s = sum(k, [k.square(t), t, k.one()]);
    if t == k.one() || s.is_zero() {
        return Err(Error::degenerate(format!(
            "t = {} makes C_t singular",
            k.format(t)
        )));
    }
    let num = sum(
        k,
        [
            k.mul_int(k.pow(t, 4), 112),
            k.mul_int(k.pow(t, 3), 272),
            k.mul_int(k.square(t), 408),
            k.mul_int(t, 296),
            k.from_i64(127),
        ],
    );
    let a1 = k.div(num, k.mul_int(k.square(s), 432))?;
    let a2 = k.neg(k.div(
        sum(k, [k.mul_int(k.square(t), 8), k.mul_int(t, 10), k.from_i64(9)]),
        k.mul_int(s, 6),
    )?);
    Ok((a1, a2))
}

/// `y^2 = x^3 - 3t(t^3 - 1) x - 2 (t^3 - 1)^2`.
pub fn ct_e2_model(k: &Field, t: Element) -> Result<WeierstrassCurve> {
    let c = k.sub(k.pow(t, 3), k.one());
    WeierstrassCurve::from_short(k, k.mul_int(k.mul(t, c), -3), k.mul_int(k.square(c), -2))
}

/// `-3 (t^2 + t + 1)`, the twist carrying the displayed `E2` model to `E1`.
pub fn ct_twist(k: &Field, t: Element) -> Element {
    k.mul_int(sum(k, [k.square(t), t, k.one()]), -3)
}

/// The member `C_t`. Checks `J1 = J2 = 1728 t^3` and `M3 = 1` where defined.
pub fn ct(k: &Field, t: Element) -> Result<ConstructionParams> {
    let (a1, a2) = ct_coefficients(k, t)?;
    let quartic = S3Quartic::general(k, a1, a2)?;
    let mut params = ConstructionParams::assemble(RouteTag::Ct, quartic)?;
    params.t = Some(t);
    let j = k.mul_int(k.pow(t, 3), 1728);
    if params.j1 != Some(j) || params.j2 != Some(j) {
        return Err(Error::Internal(format!(
            "C_t at t = {} does not have J1 = J2 = 1728 t^3",
            k.format(t)
        )));
    }
    if let Some(m) = params.m3 {
        if m != k.one() {
            return Err(Error::Internal("C_t with M3 ≠ 1".into()));
        }
    }
    Ok(params)
}

/// `C_t` for a rational parameter, reduced into the field.
pub fn ct_rational(k: &Field, t: &BigRational) -> Result<ConstructionParams> {
    let te = k.from_rational(t)?;
    let mut c = ct(k, te)?;
    c.notes.push(format!("t = {} reduced mod {}", format_rational(t), k.p()));
    Ok(c)
}

/// One of the thirteen rational invariants with complex multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmEntry {
    pub j: BigRational,
    pub disc: i64,
    /// `t` with `1728 t^3 = j`, when `j` is a rational cube times 1728.
    pub t: Option<BigRational>,
    /// Squarefree part of `-3(t^2 + t + 1)`.
    pub twist: Option<i64>,
    /// `E1` and `E2` of `C_t` are isogenous over the rationals.
    pub q_isogenous: bool,
    /// `C_t` is singular (only `t = 1`).
    pub singular: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CmRecord {
    pub j: String,
    pub disc: i64,
    pub t: Option<String>,
    pub twist: Option<i64>,
    pub q_isogenous: bool,
    pub singular: bool,
}

impl CmEntry {
    pub fn record(&self) -> CmRecord {
        CmRecord {
            j: format_rational(&self.j),
            disc: self.disc,
            t: self.t.as_ref().map(format_rational),
            twist: self.twist,
            q_isogenous: self.q_isogenous,
            singular: self.singular,
        }
    }
}

/// `(j, disc, t, printed twist part)`.
const CATALOG: [(&str, i64, Option<&str>, Option<i64>); 13] = [
    ("1728", -4, Some("1"), None),
    ("8000", -8, Some("5/3"), Some(-3)),
    ("0", -3, Some("0"), Some(-3)),
    ("-3375", -7, Some("-5/4"), Some(-7)),
    ("-32768", -11, Some("-8/3"), Some(-3)),
    ("-884736", -19, Some("-8"), Some(-19)),
    ("-884736000", -43, Some("-80"), Some(-43)),
    ("-147197952000", -67, Some("-440"), Some(-67)),
    ("-262537412640768000", -163, Some("-53360"), Some(-163)),
    ("287496", -16, Some("11/2"), Some(-1)),
    ("54000", -12, None, None),
    ("16581375", -28, Some("85/4"), Some(-7)),
    ("-12288000", -27, None, None),
];

/// Discriminants of the entries whose quotients are isogenous over the
/// rationals.
const Q_ISOGENOUS: [i64; 8] = [-3, -7, -19, -43, -67, -163, -16, -28];

fn squarefree_part_int(n: &BigInt) -> Result<i64> {
    let abs = n
        .abs()
        .to_u64()
        .ok_or_else(|| Error::Internal("integer too large to factor".into()))?;
    let core: u64 = factor(abs)
        .into_iter()
        .filter(|&(_, e)| e % 2 == 1)
        .map(|(p, _)| p)
        .product();
    Ok(if n.is_negative() { -(core as i64) } else { core as i64 })
}

/// Squarefree integer in the square class of a nonzero rational.
pub fn squarefree_part(r: &BigRational) -> Result<i64> {
    if r.is_zero() {
        return Err(Error::degenerate("zero has no squarefree part"));
    }
    squarefree_part_int(&(r.numer() * r.denom()))
}

fn rat(s: &str) -> BigRational {
    crate::gf::parse_rational(s).expect("catalog literal")
}

/// The static catalog, with `1728 t^3 = j` and the printed twist parts
/// checked in exact arithmetic.
pub fn cm_catalog() -> Result<Vec<CmEntry>> {
    CATALOG
        .iter()
        .map(|&(j, disc, t, printed)| {
            let j = rat(j);
            let t = t.map(rat);
            let mut twist = None;
            let mut singular = false;
            if let Some(t) = &t {
                let cube = t * t * t * BigRational::from_integer(BigInt::from(1728));
                if cube != j {
                    return Err(Error::Internal(format!("1728 t^3 ≠ j for disc {disc}")));
                }
                singular = t.is_one();
                if !singular {
                    let s = (t * t + t + BigRational::one()) * BigRational::from_integer(BigInt::from(-3));
                    let part = squarefree_part(&s)?;
                    if Some(part) != printed {
                        return Err(Error::Internal(format!(
                            "twist part {part} disagrees with the table for disc {disc}"
                        )));
                    }
                    twist = Some(part);
                }
            }
            Ok(CmEntry {
                j,
                disc,
                t,
                twist,
                q_isogenous: Q_ISOGENOUS.contains(&disc),
                singular,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldDesc;
    use crate::s3q::m3_of;

    #[test]
    fn catalog_loads() {
        let c = cm_catalog().unwrap();
        assert_eq!(c.len(), 13);
        let e7 = c.iter().find(|e| e.disc == -7).unwrap();
        assert_eq!(e7.j, rat("-3375"));
        assert_eq!(e7.t, Some(rat("-5/4")));
        assert!(e7.q_isogenous);
        for d in [-8, -11] {
            assert!(!c.iter().find(|e| e.disc == d).unwrap().q_isogenous);
        }
        assert!(c[0].singular);
    }

    #[test]
    fn isogeny_matches_twist_class() {
        // E1 is the twist of a CM curve by the twist part; it is isogenous
        // to E2 exactly when that part is the square class of the CM field.
        for e in cm_catalog().unwrap() {
            if let Some(tw) = e.twist {
                let cls = squarefree_part(&BigRational::from_integer(e.disc.into())).unwrap();
                assert_eq!(tw == cls, e.q_isogenous, "disc {}", e.disc);
            }
        }
    }

    #[test]
    fn ct_invariants_over_f13() {
        let k = FieldDesc::new(13, 1).unwrap();
        for t in k.elements() {
            let Ok(c) = ct(&k, t) else { continue };
            assert_eq!(c.j1, Some(k.mul_int(k.pow(t, 3), 1728)));
            let [a1, a2, _, _] = c.quartic.coeffs();
            if let Ok(m) = m3_of(&k, a1, a2) {
                assert_eq!(m, k.one());
            }
            let te2 = ct_e2_model(&k, t).unwrap().trace().unwrap().t;
            let t1 = c.e1.trace().unwrap().t;
            assert_eq!(t1, k.quadratic_character(ct_twist(&k, t)) as i64 * te2);
        }
    }

    #[test]
    fn klein_class_mod_11() {
        let k = FieldDesc::new(11, 1).unwrap();
        let c = ct_rational(&k, &rat("-5/4")).unwrap();
        let t1 = c.e1.trace().unwrap().t;
        let n = c.quartic.count_points().unwrap() as i64;
        assert_eq!(n, 12 - 3 * t1);
    }

    #[test]
    fn bad_prime_is_reported() {
        let k = FieldDesc::new(5, 1).unwrap();
        assert!(matches!(ct_rational(&k, &rat("11/5")), Err(Error::BadPrime { .. })));
    }
}
