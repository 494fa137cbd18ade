//! Characteristic 3: the family `C_{a1,a3}` from a pair of invariants, the
//! Frobenius-conjugate pairs `(j, j^3)`, and the supersingular family
//! `a3 = -1`.

use crate::error::{Error, Result};
use crate::gf::{Element, Field};
use crate::s3q::{Family, S3Quartic};

use super::{ConstructionParams, RouteTag};

fn require_char3(k: &Field) -> Result<()> {
    if k.p() == 3 {
        Ok(())
    } else {
        Err(Error::WrongCharacteristic {
            expected: "3",
            got: k.p(),
        })
    }
}

/// `a3` from `J1/J2 = -a3^3` (unique, since cubing is bijective) and
/// `a1 = a3 (a3 + 1)^3 / J1`.
pub fn char3_from_invariants(k: &Field, j1: Element, j2: Element) -> Result<ConstructionParams> {
    require_char3(k)?;
    if j1.is_zero() || j2.is_zero() {
        return Err(Error::ExcludedInvariant("zero invariant".into()));
    }
    if j1 == j2 {
        return Err(Error::degenerate("J1 = J2"));
    }
    let r = k.neg(k.div(j1, j2)?);
    let a3 = *k
        .cube_roots(r)
        .first()
        .ok_or_else(|| Error::Internal("no cube root in characteristic 3".into()))?;
    if a3.is_zero() || k.add(a3, k.one()).is_zero() {
        return Err(Error::degenerate("a3 is 0 or -1"));
    }
    let a1 = k.div(k.mul(a3, k.pow(k.add(a3, k.one()), 3)), j1)?;
    let quartic = S3Quartic::char3(k, a1, a3)?;
    let params = ConstructionParams::assemble(RouteTag::Char3, quartic)?;
    if params.j1 != Some(j1) || params.j2 != Some(j2) {
        return Err(Error::Internal("recomputed (J1, J2) disagree".into()));
    }
    Ok(params)
}

/// `C` from `(j, j^3)` and `C'` from `(j^3, j)`.
///
/// When traces are affordable the pair is checked: `E1` of `C` and of `C'`
/// have opposite traces, and the two quotients of `C` have equal traces.
/// Outcomes are recorded in the notes of `C`.
pub fn char3_cube_pair(k: &Field, j: Element) -> Result<(ConstructionParams, ConstructionParams)> {
    require_char3(k)?;
    let j3 = k.pow(j, 3);
    if j.is_zero() || j3 == j {
        return Err(Error::degenerate("j must lie outside F_3"));
    }
    let mut c = char3_from_invariants(k, j, j3)?;
    let mut cp = char3_from_invariants(k, j3, j)?;
    c.route = RouteTag::Char3;
    cp.route = RouteTag::Char3;
    if let (Some(p), Some(pp)) = (c.predict()?, cp.predict()?) {
        c.notes.push(format!(
            "E1 traces of C and C': {} and {} ({})",
            p.t1,
            pp.t1,
            if p.t1 == -pp.t1 { "opposite" } else { "not opposite" }
        ));
        c.notes.push(format!(
            "quotient traces of C: {} and {} ({})",
            p.t1,
            p.t2,
            if p.t1 == p.t2 { "equal" } else { "unequal" }
        ));
    }
    Ok((c, cp))
}

/// `a1 T1^4 + a2 T1^2 T2 - T1 T3 + T2^2`.
pub fn char3_supersingular(k: &Field, a1: Element, a2: Element) -> Result<ConstructionParams> {
    require_char3(k)?;
    if a1.is_zero() {
        return Err(Error::degenerate("a1 = 0"));
    }
    let quartic = S3Quartic::new(k, [a1, a2, k.from_i64(-1), k.one()])?;
    if !quartic.looks_smooth()? {
        return Err(Error::Singular("the quartic has a singular point".into()));
    }
    let mut params = ConstructionParams::assemble(RouteTag::Char3Ss, quartic)?;
    debug_assert_eq!(params.family, Family::Char3Supersingular);
    let nonsquare = !k.is_square(k.neg(a2));
    params.notes.push(if nonsquare {
        "-a2 is a non-square: both quotients have q + 1 points".into()
    } else {
        "-a2 is a square: the optimality claim does not apply".into()
    });
    Ok(params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldDesc;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn invariants_round_trip_f27() {
        let k = FieldDesc::new(3, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut done = 0;
        while done < 50 {
            let (j1, j2) = (k.random_nonzero(&mut rng), k.random_nonzero(&mut rng));
            let Ok(c) = char3_from_invariants(&k, j1, j2) else { continue };
            assert_eq!((c.j1, c.j2), (Some(j1), Some(j2)));
            done += 1;
        }
    }

    #[test]
    fn cube_pair_f27() {
        let k = FieldDesc::new(3, 3).unwrap();
        let mut checked = 0;
        for j in k.elements() {
            let Ok((c, cp)) = char3_cube_pair(&k, j) else { continue };
            let p = c.predict().unwrap().unwrap();
            let pp = cp.predict().unwrap().unwrap();
            assert_eq!(p.t1, p.t2);
            assert_eq!(p.t1, -pp.t1);
            assert_eq!(p.n, 28 - 3 * p.t1);
            assert_eq!(p.n + pp.n, 2 * 28);
            assert_eq!(c.quartic.count_points().unwrap() as i64, p.n);
            checked += 1;
        }
        assert!(checked > 0);
    }

    #[test]
    fn supersingular_over_f3_and_f9() {
        let k = FieldDesc::new(3, 1).unwrap();
        let c = char3_supersingular(&k, k.one(), k.one()).unwrap();
        assert_eq!(c.e1.trace().unwrap().t, 0);
        assert_eq!(c.e2.trace().unwrap().t, 0);
        let k9 = FieldDesc::new(3, 2).unwrap();
        let lifted = c.quartic.lift(&k9).unwrap();
        assert_eq!(lifted.count_points().unwrap(), 28);
    }
}
