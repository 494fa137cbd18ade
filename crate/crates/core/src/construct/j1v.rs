//! The one-parameter family over a fixed `J1`: the member attached to
//! `(J1, v)`, its second invariant, the solvent in `v`, and the route
//! through homographies between 3-division quadruples.

use crate::ec::standard_model;
use crate::error::{Error, Result};
use crate::gf::{Element, Field, FieldDesc};
use crate::poly::{quadruple_homographies, splitting_extension, three_division, Homography, ProjValue, Splitting, UniPoly};
use crate::s3q::{sum, S3Quartic};

use super::{ConstructionParams, RouteTag};

type Terms = [(i64, u64, u64)];

/// `U` with terms `(c, deg J, deg v)`.
const U_TERMS: [(i64, u64, u64); 12] = [
    (-2985984, 0, 0),
    (-35831808, 0, 1),
    (-1, 2, 0),
    (3456, 1, 0),
    (93312, 1, 2),
    (-54, 2, 2),
    (-81, 2, 4),
    (-108, 2, 3),
    (-12, 2, 1),
    (41472, 1, 1),
    (186624, 1, 3),
    (559872, 1, 4),
];

const V_TERMS: [(i64, u64, u64); 8] = [
    (243, 2, 4),
    (216, 2, 3),
    (54, 2, 2),
    (-1, 2, 0),
    (3456, 1, 0),
    (-2985984, 0, 0),
    (-93312, 1, 2),
    (-373248, 1, 3),
];

/// Numerator of `a1`.
const N_TERMS: [(i64, u64, u64); 8] = [
    (14929920, 0, 0),
    (-17280, 1, 0),
    (5, 2, 0),
    (10368, 1, 2),
    (-6, 2, 2),
    (-13824, 1, 3),
    (8, 2, 3),
    (9, 2, 4),
];

/// Cofactor with `J2 - 1728 = -(J1 - 1728) W^2 / V^3`.
const W_TERMS: [(i64, u64, u64); 19] = [
    (729, 3, 6),
    (1458, 3, 5),
    (1215, 3, 4),
    (540, 3, 3),
    (135, 3, 2),
    (18, 3, 1),
    (1, 3, 0),
    (10077696, 2, 6),
    (5038848, 2, 5),
    (-2099520, 2, 4),
    (-1866240, 2, 3),
    (-466560, 2, 2),
    (-62208, 2, 1),
    (-5184, 2, 0),
    (1612431360, 1, 3),
    (403107840, 1, 2),
    (53747712, 1, 1),
    (8957952, 1, 0),
    (-5159780352, 0, 0),
];

fn eval_jv(k: &FieldDesc, terms: &Terms, j: Element, v: Element) -> Element {
    sum(
        k,
        terms
            .iter()
            .map(|&(c, a, b)| k.mul(k.from_i64(c), k.mul(k.pow(j, a), k.pow(v, b)))),
    )
}

/// The polynomial in `v` obtained by fixing `J`.
fn poly_in_v(k: &Field, terms: &Terms, j: Element) -> UniPoly {
    let deg = terms.iter().map(|t| t.2).max().unwrap_or(0) as usize;
    let mut c = vec![k.zero(); deg + 1];
    for &(coef, a, b) in terms {
        let b = b as usize;
        c[b] = k.add(c[b], k.mul(k.from_i64(coef), k.pow(j, a)));
    }
    UniPoly::new(k, c)
}

pub(crate) fn require_large_char(k: &FieldDesc) -> Result<()> {
    match k.p() {
        2 => Err(Error::CharacteristicTwo),
        3 => Err(Error::WrongCharacteristic {
            expected: "at least 5",
            got: 3,
        }),
        _ => Ok(()),
    }
}

pub(crate) fn require_generic_j(k: &FieldDesc, j: Element) -> Result<()> {
    if j.is_zero() || j == k.from_i64(1728) {
        Err(Error::ExcludedInvariant(format!("j = {} is 0 or 1728", k.format(j))))
    } else {
        Ok(())
    }
}

pub fn u_of(k: &Field, j: Element, v: Element) -> Element {
    eval_jv(k, &U_TERMS, j, v)
}

pub fn v_of(k: &Field, j: Element, v: Element) -> Element {
    eval_jv(k, &V_TERMS, j, v)
}

pub fn w_of(k: &Field, j: Element, v: Element) -> Element {
    eval_jv(k, &W_TERMS, j, v)
}

/// `(a1, a2)` of the member attached to `(J1, v)`, without any checks
/// beyond invertibility.
pub fn member_coefficients(k: &Field, j1: Element, v: Element) -> Result<(Element, Element)> {
    let jm = k.sub(j1, k.from_i64(1728));
    let a1 = k.div(eval_jv(k, &N_TERMS, j1, v), k.mul_int(k.square(jm), 16))?;
    let a2 = k.div(
        k.mul_int(k.add(k.sub(k.mul(k.square(v), j1), j1), k.from_i64(1728)), 3),
        k.mul_int(jm, 2),
    )?;
    Ok((a1, a2))
}

/// `J2 = J1 U^3 / V^3`.
pub fn j2_of(k: &Field, j1: Element, v: Element) -> Result<Element> {
    require_large_char(k)?;
    let vv = v_of(k, j1, v);
    if vv.is_zero() {
        return Err(Error::degenerate("V = 0"));
    }
    let u = u_of(k, j1, v);
    k.div(k.mul(j1, k.pow(u, 3)), k.pow(vv, 3))
}

/// Coefficients of the second quotient in the factored form
/// `A = 3 J v^2 U / (J - 1728)^3`, `B = -2 J v^3 W / (J - 1728)^4`.
pub fn e2_factored(k: &Field, j1: Element, v: Element) -> Result<(Element, Element)> {
    let jm = k.sub(j1, k.from_i64(1728));
    let a = k.div(
        k.mul_int(k.mul(k.mul(j1, k.square(v)), u_of(k, j1, v)), 3),
        k.pow(jm, 3),
    )?;
    let b = k.div(
        k.mul_int(k.mul(k.mul(j1, k.pow(v, 3)), w_of(k, j1, v)), -2),
        k.pow(jm, 4),
    )?;
    Ok((a, b))
}

/// The member attached to `(J1, v)`. Checks that the recomputed invariants
/// agree with `J1` and with `J2 = J1 U^3 / V^3`, that `E1` is the `v`-twist
/// of `E(J1)`, and that the factored `E2` model is the one computed from
/// the quartic.
pub fn from_j1_v(k: &Field, j1: Element, v: Element) -> Result<ConstructionParams> {
    require_large_char(k)?;
    require_generic_j(k, j1)?;
    if v.is_zero() {
        return Err(Error::degenerate("v = 0"));
    }
    let j2 = j2_of(k, j1, v)?;
    let (a1, a2) = member_coefficients(k, j1, v)?;
    let quartic = S3Quartic::general(k, a1, a2)?;
    let mut params = ConstructionParams::assemble(RouteTag::J1v, quartic)?;
    params.v = Some(v);
    if params.j1 != Some(j1) || params.j2 != Some(j2) {
        return Err(Error::Internal(format!(
            "invariants of the member at v = {} disagree with (J1, J2)",
            k.format(v)
        )));
    }
    let twist = standard_model(k, j1)?.quadratic_twist(v)?;
    if twist.coeffs() != params.e1.coeffs() {
        return Err(Error::Internal("E1 is not the v-twist of E(J1)".into()));
    }
    let (a, b) = e2_factored(k, j1, v)?;
    let [_, _, _, a4, a6] = params.e2.coeffs();
    if (a4, a6) != (a, b) {
        return Err(Error::Internal("factored E2 model disagrees".into()));
    }
    params
        .notes
        .push("E1 equals the v-twist of E(J1); E2 matches the factored (U, W) model".into());
    Ok(params)
}

/// The solvent `J1 U(v)^3 - J2 V(v)^3`, of degree at most 12 in `v`.
pub fn solvent(k: &Field, j1: Element, j2: Element) -> Result<UniPoly> {
    require_large_char(k)?;
    let u = poly_in_v(k, &U_TERMS, j1);
    let vv = poly_in_v(k, &V_TERMS, j1);
    let s = u.pow(3).scale(j1).sub(&vv.pow(3).scale(j2))?;
    if s.is_zero() {
        return Err(Error::degenerate("solvent vanishes identically"));
    }
    Ok(s)
}

/// Base-field roots `v` of the solvent, excluding `v = 0` and `V = 0`.
pub fn solve_v(k: &Field, j1: Element, j2: Element) -> Result<Vec<Element>> {
    require_generic_j(k, j1)?;
    require_generic_j(k, j2)?;
    let s = solvent(k, j1, j2)?;
    Ok(s
        .roots()?
        .into_iter()
        .filter(|&v| !v.is_zero() && !v_of(k, j1, v).is_zero())
        .collect())
}

/// One homography between the 3-division quadruples, with its `v`.
#[derive(Clone, Debug)]
pub struct HomographyV {
    pub h: Homography,
    /// `1/(3 h(∞))`, in the splitting extension.
    pub v: ProjValue,
    /// `v` pulled back to the base field, when it lies there.
    pub base: Option<Element>,
}

#[derive(Clone, Debug)]
pub struct HomographyRoute {
    pub splitting: Splitting,
    pub entries: Vec<HomographyV>,
}

/// Enumerates the homographies carrying the 3-division abscissae of `E(J2)`
/// onto those of `E(J1)` and reads off `v = 1/(3 h(∞))` for each.
pub fn homography_route(k: &Field, j1: Element, j2: Element, ext_cap: u32) -> Result<HomographyRoute> {
    require_large_char(k)?;
    require_generic_j(k, j1)?;
    require_generic_j(k, j2)?;
    if j1 == j2 {
        return Err(Error::degenerate("J1 = J2"));
    }
    let (a1, b1) = standard_model(k, j1)?.short_coefficients()?;
    let (a2, b2) = standard_model(k, j2)?.short_coefficients()?;
    let f = three_division(k, a1, b1)?;
    let g = three_division(k, a2, b2)?;
    let splitting = splitting_extension(&f.mul(&g)?, ext_cap)?;
    let ext = splitting.field.clone();
    let fr = f.map(&splitting.embedding)?;
    let gr = g.map(&splitting.embedding)?;
    let pick = |p: &UniPoly| -> Result<[ProjValue; 4]> {
        let r: Vec<ProjValue> = splitting
            .roots
            .iter()
            .filter(|&&x| p.eval(x).is_zero())
            .map(|&x| ProjValue::Finite(x))
            .collect();
        r.try_into()
            .map_err(|_| Error::Internal("3-division polynomial without 4 distinct roots".into()))
    };
    let target = pick(&fr)?;
    let source = pick(&gr)?;
    let three = ext.from_i64(3);
    let entries = quadruple_homographies(&ext, source, target)
        .into_iter()
        .map(|h| {
            let v = match h.apply(&ext, ProjValue::Infinity) {
                ProjValue::Infinity => ProjValue::Finite(ext.zero()),
                ProjValue::Finite(x) if x.is_zero() => ProjValue::Infinity,
                ProjValue::Finite(x) => ProjValue::Finite(ext.inv(ext.mul(three, x)).expect("nonzero")),
            };
            let base = v.finite().and_then(|x| splitting.embedding.preimage(x));
            HomographyV { h, v, base }
        })
        .collect();
    Ok(HomographyRoute { splitting, entries })
}

/// Roots `v` with `V = ρ^i U`, i.e. members with `J2 = J1` and `M3 = ρ^i`.
pub fn equal_invariant_vs(k: &Field, j1: Element, branch: u8) -> Result<Vec<Element>> {
    require_large_char(k)?;
    require_generic_j(k, j1)?;
    let r = match branch % 3 {
        0 => k.one(),
        i => {
            let rho = k
                .primitive_cube_root()
                .ok_or_else(|| Error::degenerate("no primitive cube root of unity in the field"))?;
            k.pow(rho, i as u64)
        }
    };
    let p = poly_in_v(k, &V_TERMS, j1).sub(&poly_in_v(k, &U_TERMS, j1).scale(r))?;
    if p.is_zero() {
        return Ok(Vec::new());
    }
    Ok(p.roots()?
        .into_iter()
        .filter(|&v| !v.is_zero() && !u_of(k, j1, v).is_zero())
        .collect())
}
