//! The S3-symmetric quartics `a1 T1^4 + a2 T1^2 T2 + a3 T1 T3 + a4 T2^2`,
//! with `T1, T2, T3` the elementary symmetric functions of (X, Y, Z).

use rayon::prelude::*;
use serde::Serialize;

use crate::ec::{WeierstrassCurve, TRACE_BOUND};
use crate::error::{Error, Result};
use crate::gf::{Element, Field, FieldDesc};
use crate::poly::{quadruple_homographies, splitting_extension, three_division, Homography, ProjValue, UniPoly};

/// Default bound on `q^2` for exhaustive point counts.
pub const COUNT_BOUND: u128 = 1 << 36;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S3Quartic {
    field: Field,
    a: [Element; 4],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuarticRecord {
    pub field: String,
    pub a: [String; 4],
}

/// Which normal form the invariants were computed from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// a3 = 2, a4 = 1 (characteristic above 3)
    General,
    /// a2 = 0, a4 = 1, a3 ≠ -1 (characteristic 3)
    Char3,
    /// a3 = -1, a4 = 1 (characteristic 3)
    Char3Supersingular,
}

/// The two elliptic quotients of a smooth member and their invariants.
#[derive(Clone, Debug)]
pub struct QuarticInvariants {
    pub family: Family,
    pub normalized: S3Quartic,
    pub d: Option<Element>,
    pub disc: Element,
    pub j1: Element,
    pub j2: Element,
    /// `M3` with `M3^3 = J1/J2`, where defined.
    pub m3: Option<Element>,
    pub e1: WeierstrassCurve,
    pub e2: WeierstrassCurve,
}

pub(crate) fn sum(k: &FieldDesc, xs: impl IntoIterator<Item = Element>) -> Element {
    xs.into_iter().fold(k.zero(), |s, x| k.add(s, x))
}

/// Evaluates `sum c * a1^i * a2^j` over the terms `(c, i, j)`.
pub(crate) fn eval2(k: &FieldDesc, terms: &[(i64, u64, u64)], a1: Element, a2: Element) -> Element {
    sum(
        k,
        terms
            .iter()
            .map(|&(c, i, j)| k.mul(k.from_i64(c), k.mul(k.pow(a1, i), k.pow(a2, j)))),
    )
}

const D_TERMS: [(i64, u64, u64); 7] = [
    (-432, 1, 0),
    (72, 0, 2),
    (76, 0, 3),
    (-216, 1, 2),
    (432, 2, 0),
    (-432, 1, 1),
    (27, 0, 4),
];

const A_TERMS: [(i64, u64, u64); 9] = [
    (-48, 0, 0),
    (-128, 0, 1),
    (-648, 0, 2),
    (3456, 1, 1),
    (-648, 0, 3),
    (1944, 1, 2),
    (-243, 0, 4),
    (3168, 1, 0),
    (-3888, 2, 0),
];

const B_TERMS: [(i64, u64, u64); 16] = [
    (512, 0, 1),
    (-2400, 0, 2),
    (46080, 1, 1),
    (-7200, 0, 3),
    (77760, 1, 2),
    (-9720, 0, 4),
    (-124416, 2, 1),
    (54432, 1, 3),
    (-5832, 0, 5),
    (-69984, 2, 2),
    (17496, 1, 4),
    (-1458, 0, 6),
    (128, 0, 0),
    (19328, 1, 0),
    (-120960, 2, 0),
    (93312, 3, 0),
];

fn require_large_char(k: &FieldDesc) -> Result<()> {
    if k.p() == 3 {
        Err(Error::WrongCharacteristic {
            expected: "at least 5",
            got: 3,
        })
    } else {
        Ok(())
    }
}

fn require_char3(k: &FieldDesc) -> Result<()> {
    if k.p() != 3 {
        Err(Error::WrongCharacteristic {
            expected: "3",
            got: k.p(),
        })
    } else {
        Ok(())
    }
}

impl S3Quartic {
    /// Requires `a3 ≠ 0` and `a4 ≠ 0`; otherwise the curve is reducible.
    pub fn new(field: &Field, a: [Element; 4]) -> Result<Self> {
        if field.p() == 2 {
            return Err(Error::CharacteristicTwo);
        }
        if a[2].is_zero() || a[3].is_zero() {
            return Err(Error::degenerate("a3 = 0 or a4 = 0 gives a reducible quartic"));
        }
        Ok(S3Quartic {
            field: field.clone(),
            a,
        })
    }

    /// `C_{a1,a2}`: the member with a3 = 2, a4 = 1.
    pub fn general(field: &Field, a1: Element, a2: Element) -> Result<Self> {
        Self::new(field, [a1, a2, field.from_i64(2), field.one()])
    }

    /// `C_{a1,a3}` in characteristic 3: a2 = 0, a4 = 1.
    pub fn char3(field: &Field, a1: Element, a3: Element) -> Result<Self> {
        require_char3(field)?;
        Self::new(field, [a1, field.zero(), a3, field.one()])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> [Element; 4] {
        self.a
    }

    pub fn record(&self) -> QuarticRecord {
        QuarticRecord {
            field: self.field.literal(),
            a: self.a.map(|c| self.field.format(c)),
        }
    }

    /// The same equation over an extension field.
    pub fn lift(&self, to: &Field) -> Result<Self> {
        let emb = crate::poly::Embedding::new(&self.field, to)?;
        Self::new(to, self.a.map(|c| emb.apply(c)))
    }

    pub fn evaluate(&self, x: Element, y: Element, z: Element) -> Element {
        let k = &self.field;
        let t1 = k.add(k.add(x, y), z);
        let t2 = sum(k, [k.mul(x, y), k.mul(y, z), k.mul(z, x)]);
        let t3 = k.mul(k.mul(x, y), z);
        let [a1, a2, a3, a4] = self.a;
        let t1s = k.square(t1);
        sum(
            k,
            [
                k.mul(a1, k.square(t1s)),
                k.mul(a2, k.mul(t1s, t2)),
                k.mul(a3, k.mul(t1, t3)),
                k.mul(a4, k.square(t2)),
            ],
        )
    }

    /// Gradient of the defining form at (x, y, z).
    pub fn gradient(&self, x: Element, y: Element, z: Element) -> [Element; 3] {
        let k = &self.field;
        let t1 = k.add(k.add(x, y), z);
        let t2 = sum(k, [k.mul(x, y), k.mul(y, z), k.mul(z, x)]);
        let t3 = k.mul(k.mul(x, y), z);
        let [a1, a2, a3, a4] = self.a;
        let t1s = k.square(t1);
        // d/dX with dT1 = 1, dT2 = Y + Z, dT3 = YZ, and symmetrically
        let part = |s: Element, p: Element| {
            sum(
                k,
                [
                    k.mul_int(k.mul(a1, k.mul(t1s, t1)), 4),
                    k.mul(a2, k.add(k.mul_int(k.mul(t1, t2), 2), k.mul(t1s, s))),
                    k.mul(a3, k.add(t3, k.mul(t1, p))),
                    k.mul_int(k.mul(a4, k.mul(t2, s)), 2),
                ],
            )
        };
        [
            part(k.add(y, z), k.mul(y, z)),
            part(k.add(x, z), k.mul(x, z)),
            part(k.add(x, y), k.mul(x, y)),
        ]
    }

    /// Coefficients (constant first) of the quartic in y obtained by
    /// restricting to the line z = 1, x fixed.
    fn row_coefficients(&self, x: Element) -> [Element; 5] {
        let k = &self.field;
        let [a1, a2, a3, a4] = self.a;
        let s = k.add(x, k.one());
        let s2 = k.square(s);
        let s3 = k.mul(s2, s);
        let sx = k.mul(s, x);
        let c4 = a1;
        let c3 = k.mul(s, k.add(k.mul_int(a1, 4), a2));
        let c2 = sum(
            k,
            [
                k.mul_int(k.mul(a1, s2), 6),
                k.mul(a2, k.add(x, k.mul_int(s2, 2))),
                k.mul(a3, x),
                k.mul(a4, s2),
            ],
        );
        let c1 = sum(
            k,
            [
                k.mul_int(k.mul(a1, s3), 4),
                k.mul(a2, k.add(k.mul_int(sx, 2), s3)),
                k.mul(a3, sx),
                k.mul_int(k.mul(a4, sx), 2),
            ],
        );
        let c0 = sum(
            k,
            [
                k.mul(a1, k.square(s2)),
                k.mul(a2, k.mul(s2, x)),
                k.mul(a4, k.square(x)),
            ],
        );
        [c0, c1, c2, c3, c4]
    }

    /// Number of F_q-rational points, by enumerating every point of the plane.
    pub fn count_points(&self) -> Result<u64> {
        self.count_points_with_bound(COUNT_BOUND)
    }

    pub fn count_points_with_bound(&self, bound: u128) -> Result<u64> {
        let k = &self.field;
        let q = k.q();
        let work = q as u128 * q as u128;
        if work > bound {
            return Err(Error::Budget {
                what: "quartic point count",
                needed: work,
                limit: bound,
            });
        }
        let row = |xv: u64| -> u64 {
            let x = k.from_packed(xv).expect("in range");
            let [c0, c1, c2, c3, c4] = self.row_coefficients(x);
            let mut n = 0;
            for y in k.elements() {
                let v = k.add(k.mul(k.add(k.mul(k.add(k.mul(k.add(k.mul(c4, y), c3), y), c2), y), c1), y), c0);
                if v.is_zero() {
                    n += 1;
                }
            }
            if self.evaluate(x, k.one(), k.zero()).is_zero() {
                n += 1;
            }
            n
        };
        let affine: u64 = if q > 64 {
            (0..q).into_par_iter().map(row).sum()
        } else {
            (0..q).map(row).sum()
        };
        let at_infinity = self.evaluate(k.one(), k.zero(), k.zero()).is_zero() as u64;
        Ok(affine + at_infinity)
    }

    /// Singular points over F_{q^deg}, as projective triples normalised with
    /// the last nonzero coordinate equal to 1.
    pub fn singular_points(&self, deg: u32) -> Result<Vec<[Element; 3]>> {
        let base = &self.field;
        let ext = if deg == 1 {
            base.clone()
        } else {
            FieldDesc::new(base.p(), base.n() * deg)?
        };
        let c = if deg == 1 { self.clone() } else { self.lift(&ext)? };
        let k = &ext;
        let q = k.q();
        if q as u128 * q as u128 > COUNT_BOUND {
            return Err(Error::Budget {
                what: "singular point scan",
                needed: q as u128 * q as u128,
                limit: COUNT_BOUND,
            });
        }
        let singular = |x: Element, y: Element, z: Element| {
            c.evaluate(x, y, z).is_zero() && c.gradient(x, y, z).iter().all(|g| g.is_zero())
        };
        let mut out: Vec<[Element; 3]> = (0..q)
            .into_par_iter()
            .flat_map_iter(|xv| {
                let x = k.from_packed(xv).expect("in range");
                k.elements()
                    .filter(move |&y| singular(x, y, k.one()))
                    .map(move |y| [x, y, k.one()])
                    .collect::<Vec<_>>()
            })
            .collect();
        for x in k.elements() {
            if singular(x, k.one(), k.zero()) {
                out.push([x, k.one(), k.zero()]);
            }
        }
        if singular(k.one(), k.zero(), k.zero()) {
            out.push([k.one(), k.zero(), k.zero()]);
        }
        out.sort();
        Ok(out)
    }

    /// No singular point over F_q or F_{q^2}.
    pub fn looks_smooth(&self) -> Result<bool> {
        Ok(self.singular_points(1)?.is_empty() && self.singular_points(2)?.is_empty())
    }

    /// Image under `X -> X + a T1` (and likewise for Y, Z), rescaled.
    fn shifted(&self, a: Element) -> Result<Self> {
        let k = &self.field;
        let [a1, a2, a3, a4] = self.a;
        let s = k.add(k.one(), k.mul_int(a, 3));
        let c = k.add(k.mul_int(a, 2), k.mul_int(k.square(a), 3));
        let e = k.add(k.square(a), k.pow(a, 3));
        let s2 = k.square(s);
        let b1 = sum(
            k,
            [
                k.mul(a1, k.square(s2)),
                k.mul(a2, k.mul(s2, c)),
                k.mul(a3, k.mul(s, e)),
                k.mul(a4, k.square(c)),
            ],
        );
        let b2 = sum(
            k,
            [
                k.mul(a2, s2),
                k.mul(a3, k.mul(s, a)),
                k.mul_int(k.mul(a4, c), 2),
            ],
        );
        Self::new(k, [b1, b2, k.mul(a3, s), a4])
    }

    fn with_unit_a4(&self) -> Self {
        let k = &self.field;
        let inv = k.inv(self.a[3]).expect("a4 is nonzero");
        S3Quartic {
            field: self.field.clone(),
            a: self.a.map(|c| k.mul(c, inv)),
        }
    }

    /// Projectively equivalent member with a3 = 2, a4 = 1.
    pub fn normalize_general(&self) -> Result<Self> {
        require_large_char(&self.field)?;
        let k = &self.field;
        let c = self.with_unit_a4();
        let a3 = c.a[2];
        let a = k.div(k.sub(k.from_i64(2), a3), k.mul_int(a3, 3))?;
        c.shifted(a)
    }

    /// Characteristic 3: equivalent member with a2 = 0, a4 = 1 (needs a3 ≠ -a4).
    pub fn normalize_char3(&self) -> Result<Self> {
        require_char3(&self.field)?;
        let k = &self.field;
        let c = self.with_unit_a4();
        let [_, a2, a3, _] = c.a;
        let denom = k.add(k.one(), a3);
        if denom.is_zero() {
            return Err(Error::degenerate("a3 = -1 has no a2 = 0 normal form"));
        }
        c.shifted(k.neg(k.div(a2, denom)?))
    }

    /// Quotients and invariants, dispatched on the characteristic.
    pub fn invariants(&self) -> Result<QuarticInvariants> {
        let k = &self.field;
        if k.p() != 3 {
            let n = self.normalize_general()?;
            let [a1, a2, _, _] = n.a;
            return general_invariants(k, a1, a2);
        }
        let c = self.with_unit_a4();
        if k.add(c.a[2], k.one()).is_zero() {
            let [a1, a2, _, _] = c.a;
            return supersingular_invariants(k, a1, a2);
        }
        let n = c.normalize_char3()?;
        char3_invariants(k, n.a[0], n.a[2])
    }

    /// `q + 1 - 2 t1 - t2` from the quotient traces.
    pub fn trace_relation_n(&self) -> Result<Prediction> {
        let inv = self.invariants()?;
        let t1 = inv.e1.trace_with_bound(TRACE_BOUND)?.t;
        let t2 = inv.e2.trace_with_bound(TRACE_BOUND)?.t;
        let q = self.field.q() as i64;
        Ok(Prediction {
            t1,
            t2,
            n: q + 1 - 2 * t1 - t2,
        })
    }
}

/// A point count predicted from the quotient traces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub t1: i64,
    pub t2: i64,
    pub n: i64,
}

/// `(d, disc)` with `disc = 256 (27 a1 + 5 + 9 a2) d^3`.
pub fn disc_general(k: &Field, a1: Element, a2: Element) -> (Element, Element) {
    let d = eval2(k, &D_TERMS, a1, a2);
    let lin = sum(k, [k.mul_int(a1, 27), k.from_i64(5), k.mul_int(a2, 9)]);
    let disc = k.mul(k.mul_int(lin, 256), k.pow(d, 3));
    (d, disc)
}

/// `E1: y^2 = x^3 - (3 + 2a2) x - 4a1 + 2 + 2a2 + a2^2` and
/// `J1 = -6912 (2a2 + 3)^3 / d`.
pub fn e1_of(k: &Field, a1: Element, a2: Element) -> Result<(WeierstrassCurve, Element)> {
    require_large_char(k)?;
    let (d, _) = disc_general(k, a1, a2);
    if d.is_zero() {
        return Err(Error::degenerate("d = 0"));
    }
    let a = k.neg(k.add(k.from_i64(3), k.mul_int(a2, 2)));
    let b = sum(
        k,
        [
            k.mul_int(a1, -4),
            k.from_i64(2),
            k.mul_int(a2, 2),
            k.square(a2),
        ],
    );
    let e1 = WeierstrassCurve::from_short(k, a, b)?;
    let j1 = k.div(
        k.mul_int(k.pow(k.add(k.mul_int(a2, 2), k.from_i64(3)), 3), -6912),
        d,
    )?;
    Ok((e1, j1))
}

/// Image of a point of `C_{a1,a2}` on `E1`; `None` is the point at infinity.
pub fn phi1(c: &S3Quartic, p: [Element; 3]) -> Option<(Element, Element)> {
    let k = c.field();
    let [x, y, z] = p;
    let t1 = k.add(k.add(x, y), z);
    if t1.is_zero() {
        return None;
    }
    let t2 = sum(k, [k.mul(x, y), k.mul(y, z), k.mul(z, x)]);
    let a2 = c.coeffs()[1];
    let u = k.div(k.sub(k.add(x, y), z), t1).ok()?;
    let num = sum(
        k,
        [
            k.mul_int(k.sub(k.square(z), k.mul(x, y)), 2),
            k.mul(a2, k.square(t1)),
            k.mul_int(t2, 4),
        ],
    );
    let v = k.div(num, k.square(t1)).ok()?;
    Some((u, v))
}

/// `E2: y^2 = x^3 + A x + B` and its invariant.
pub fn e2_of(k: &Field, a1: Element, a2: Element) -> Result<(WeierstrassCurve, Element)> {
    require_large_char(k)?;
    let a = eval2(k, &A_TERMS, a1, a2);
    let b = eval2(k, &B_TERMS, a1, a2);
    let e2 = WeierstrassCurve::from_short(k, a, b)
        .map_err(|_| Error::degenerate("E2 is singular"))?;
    let j2 = e2.j_invariant();
    Ok((e2, j2))
}

/// `M3 = 16 (27 a1 + 5 + 9 a2)(3 + 2 a2) / A`, so that `M3^3 = J1/J2`.
pub fn m3_of(k: &Field, a1: Element, a2: Element) -> Result<Element> {
    require_large_char(k)?;
    let a = eval2(k, &A_TERMS, a1, a2);
    if a.is_zero() {
        return Err(Error::degenerate("M3 undefined"));
    }
    let lin = sum(k, [k.mul_int(a1, 27), k.from_i64(5), k.mul_int(a2, 9)]);
    let num = k.mul_int(k.mul(lin, k.add(k.from_i64(3), k.mul_int(a2, 2))), 16);
    k.div(num, a)
}

fn general_invariants(k: &Field, a1: Element, a2: Element) -> Result<QuarticInvariants> {
    let (d, disc) = disc_general(k, a1, a2);
    if disc.is_zero() {
        return Err(Error::Singular("discriminant vanishes".into()));
    }
    let (e1, j1) = e1_of(k, a1, a2)?;
    let (e2, j2) = e2_of(k, a1, a2)?;
    Ok(QuarticInvariants {
        family: Family::General,
        normalized: S3Quartic::general(k, a1, a2)?,
        d: Some(d),
        disc,
        j1,
        j2,
        m3: m3_of(k, a1, a2).ok(),
        e1,
        e2,
    })
}

/// `2 (a3 + 1)^9 a1^3 a3^12`
pub fn disc_char3(k: &Field, a1: Element, a3: Element) -> Result<Element> {
    require_char3(k)?;
    Ok(k.mul(
        k.mul_int(k.pow(k.add(a3, k.one()), 9), 2),
        k.mul(k.pow(a1, 3), k.pow(a3, 12)),
    ))
}

fn char3_quotient_inputs(k: &Field, a1: Element, a3: Element) -> Result<Element> {
    require_char3(k)?;
    if a1.is_zero() {
        return Err(Error::degenerate("a1 = 0"));
    }
    let h = k.mul(a3, k.add(a3, k.one()));
    if h.is_zero() {
        return Err(Error::degenerate("a3 (a3 + 1) = 0"));
    }
    Ok(h)
}

/// `E1: v^2 = u^3 + a3(a3+1) u^2 + 2 a3^2 a1`, `J1 = a3 (a3+1)^3 / a1`.
pub fn e1_char3(k: &Field, a1: Element, a3: Element) -> Result<(WeierstrassCurve, Element)> {
    let h = char3_quotient_inputs(k, a1, a3)?;
    let e = WeierstrassCurve::from_cubic(k, h, k.zero(), k.mul_int(k.mul(k.square(a3), a1), 2))?;
    let j = k.div(k.mul(a3, k.pow(k.add(a3, k.one()), 3)), a1)?;
    Ok((e, j))
}

/// `E2: v^2 = u^3 + a3(a3+1) u^2 + a1 a3^5`, `J2 = 2 (a3+1)^3 / (a1 a3^2)`.
pub fn e2_char3(k: &Field, a1: Element, a3: Element) -> Result<(WeierstrassCurve, Element)> {
    let h = char3_quotient_inputs(k, a1, a3)?;
    let e = WeierstrassCurve::from_cubic(k, h, k.zero(), k.mul(a1, k.pow(a3, 5)))?;
    let j = k.div(
        k.mul_int(k.pow(k.add(a3, k.one()), 3), 2),
        k.mul(a1, k.square(a3)),
    )?;
    Ok((e, j))
}

/// `J1 / J2 = -a3^3`.
pub fn ratio_char3(k: &Field, a3: Element) -> Result<Element> {
    require_char3(k)?;
    Ok(k.neg(k.pow(a3, 3)))
}

fn char3_invariants(k: &Field, a1: Element, a3: Element) -> Result<QuarticInvariants> {
    let disc = disc_char3(k, a1, a3)?;
    if disc.is_zero() {
        return Err(Error::Singular("discriminant vanishes".into()));
    }
    let (e1, j1) = e1_char3(k, a1, a3)?;
    let (e2, j2) = e2_char3(k, a1, a3)?;
    Ok(QuarticInvariants {
        family: Family::Char3,
        normalized: S3Quartic::char3(k, a1, a3)?,
        d: None,
        disc,
        j1,
        j2,
        m3: Some(k.neg(a3)),
        e1,
        e2,
    })
}

/// Quotients of `a1 T1^4 + a2 T1^2 T2 - T1 T3 + T2^2` in characteristic 3:
/// `y^2 = x^3 + a2 x + 2a1 + a2^2` and `y^2 = x^3 + a2 a1^2 x + 2 a1^4`.
pub fn supersingular_quotients(
    k: &Field,
    a1: Element,
    a2: Element,
) -> Result<(WeierstrassCurve, WeierstrassCurve)> {
    require_char3(k)?;
    let e1 = WeierstrassCurve::from_short(k, a2, k.add(k.mul_int(a1, 2), k.square(a2)))?;
    let e2 = WeierstrassCurve::from_short(
        k,
        k.mul(a2, k.square(a1)),
        k.mul_int(k.pow(a1, 4), 2),
    )?;
    Ok((e1, e2))
}

fn supersingular_invariants(k: &Field, a1: Element, a2: Element) -> Result<QuarticInvariants> {
    let (e1, e2) = supersingular_quotients(k, a1, a2)
        .map_err(|_| Error::Singular("a quotient is singular".into()))?;
    let normalized = S3Quartic::new(k, [a1, a2, k.from_i64(-1), k.one()])?;
    Ok(QuarticInvariants {
        family: Family::Char3Supersingular,
        normalized,
        d: None,
        disc: k.one(),
        j1: k.zero(),
        j2: k.zero(),
        m3: None,
        e1,
        e2,
    })
}

/// Looks for a homography defined over the base field carrying the
/// 3-division abscissae of `e1` onto those of `e2`. Returns the homography
/// (entries in the base field) or `None`.
pub fn galois_3torsion_check(
    e1: &WeierstrassCurve,
    e2: &WeierstrassCurve,
) -> Result<Option<Homography>> {
    let k = e1.field();
    let (a, b) = e1.short_coefficients()?;
    let (c, d) = e2.short_coefficients()?;
    let f3 = three_division(k, a, b)?;
    let g3 = three_division(k, c, d)?;
    let both = f3.mul(&g3)?;
    let split = splitting_extension(&both, crate::poly::EXT_CAP)?;
    let ext = &split.field;
    let fr = f3.map(&split.embedding)?;
    let gr = g3.map(&split.embedding)?;
    let roots_of = |f: &UniPoly| -> Vec<ProjValue> {
        split
            .roots
            .iter()
            .filter(|&&r| f.eval(r).is_zero())
            .map(|&r| ProjValue::Finite(r))
            .collect()
    };
    let r = roots_of(&fr);
    let s = roots_of(&gr);
    if r.len() != 4 || s.len() != 4 {
        return Err(Error::Internal("3-division polynomial with repeated roots".into()));
    }
    let hs = quadruple_homographies(ext, [r[0], r[1], r[2], r[3]], [s[0], s[1], s[2], s[3]]);
    for h in hs {
        let pre: Option<Vec<Element>> = h
            .entries()
            .iter()
            .map(|&e| split.embedding.preimage(e))
            .collect();
        if let Some(p) = pre {
            return Ok(Some(Homography::new(k, p[0], p[1], p[2], p[3])?));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ec::e_t;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fld(p: u64, n: u32) -> Field {
        FieldDesc::new(p, n).unwrap()
    }

    /// Independent count straight from the projective definition.
    fn naive_count(c: &S3Quartic) -> u64 {
        let k = c.field();
        let mut n = 0;
        for x in k.elements() {
            for y in k.elements() {
                n += c.evaluate(x, y, k.one()).is_zero() as u64;
            }
            n += c.evaluate(x, k.one(), k.zero()).is_zero() as u64;
        }
        n + c.evaluate(k.one(), k.zero(), k.zero()).is_zero() as u64
    }

    fn random_quartic(k: &Field, rng: &mut ChaCha8Rng) -> S3Quartic {
        loop {
            let a = [(); 4].map(|_| k.random(rng));
            if let Ok(c) = S3Quartic::new(k, a) {
                return c;
            }
        }
    }

    fn random_smooth_general(k: &Field, rng: &mut ChaCha8Rng) -> (Element, Element) {
        loop {
            let a1 = k.random(rng);
            let a2 = k.random(rng);
            if !disc_general(k, a1, a2).1.is_zero() && e2_of(k, a1, a2).is_ok() {
                return (a1, a2);
            }
        }
    }

    #[test]
    fn counting_matches_naive_and_rho_point() {
        let mut rng = ChaCha8Rng::seed_from_u64(30);
        for k in [fld(7, 1), fld(13, 1), fld(3, 3), fld(5, 2)] {
            for _ in 0..10 {
                let c = random_quartic(&k, &mut rng);
                assert_eq!(c.count_points().unwrap(), naive_count(&c));
                if let Some(rho) = k.primitive_cube_root() {
                    assert!(c.evaluate(rho, k.square(rho), k.one()).is_zero());
                }
            }
        }
        let big = fld(1_000_003, 1);
        let c = S3Quartic::general(&big, big.one(), big.one()).unwrap();
        assert!(matches!(c.count_points(), Err(Error::Budget { .. })));
        assert!(S3Quartic::new(&big, [big.one(), big.one(), big.zero(), big.one()]).is_err());
    }

    #[test]
    fn symmetric_under_permutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let k = fld(13, 1);
        for _ in 0..20 {
            let c = random_quartic(&k, &mut rng);
            let [x, y, z] = [(); 3].map(|_| k.random(&mut rng));
            let v = c.evaluate(x, y, z);
            for (a, b, d) in [(x, z, y), (y, x, z), (y, z, x), (z, x, y), (z, y, x)] {
                assert_eq!(c.evaluate(a, b, d), v);
            }
        }
    }

    #[test]
    fn gradient_matches_finite_differences_of_row() {
        // d/dy of the row polynomial equals the Y-component of the gradient
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let k = fld(13, 1);
        for _ in 0..20 {
            let c = random_quartic(&k, &mut rng);
            let x = k.random(&mut rng);
            let row = UniPoly::new(&k, c.row_coefficients(x).to_vec()).derivative();
            for y in k.elements() {
                assert_eq!(row.eval(y), c.gradient(x, y, k.one())[1]);
            }
        }
    }

    #[test]
    fn normalization_preserves_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let k = fld(13, 1);
        for _ in 0..20 {
            let c = random_quartic(&k, &mut rng);
            let n = c.normalize_general().unwrap();
            assert_eq!(n.coeffs()[2], k.from_i64(2));
            assert_eq!(n.coeffs()[3], k.one());
            assert_eq!(n.count_points().unwrap(), c.count_points().unwrap());
            assert_eq!(n.normalize_general().unwrap(), n);
            let s = k.random_nonzero(&mut rng);
            let scaled = S3Quartic::new(&k, c.coeffs().map(|x| k.mul(x, s))).unwrap();
            assert_eq!(scaled.normalize_general().unwrap(), n);
        }
        let k3 = fld(3, 3);
        for _ in 0..20 {
            let c = random_quartic(&k3, &mut rng);
            match c.normalize_char3() {
                Ok(n) => {
                    assert!(n.coeffs()[1].is_zero());
                    assert_eq!(n.count_points().unwrap(), c.count_points().unwrap());
                }
                Err(e) => assert!(matches!(e, Error::Degenerate(_))),
            }
        }
        assert!(c_wrong_char().is_err());
    }

    fn c_wrong_char() -> Result<S3Quartic> {
        let k = fld(3, 1);
        S3Quartic::new(&k, [k.one(), k.one(), k.one(), k.one()])?.normalize_general()
    }

    #[test]
    fn discriminant_examples() {
        let k = fld(13, 1);
        let (d, disc) = disc_general(&k, k.zero(), k.zero());
        assert!(d.is_zero() && disc.is_zero());
    }

    #[test]
    fn discriminant_tracks_singularity() {
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        let k = fld(13, 1);
        let mut agree = 0;
        for _ in 0..200 {
            let a1 = k.random(&mut rng);
            let a2 = k.random(&mut rng);
            let c = S3Quartic::general(&k, a1, a2).unwrap();
            let smooth = c.looks_smooth().unwrap();
            let nonzero = !disc_general(&k, a1, a2).1.is_zero();
            // a singular point defined over a larger extension is possible in
            // principle; over F_13 and F_169 the two notions coincided
            assert_eq!(smooth, nonzero, "a1={a1:?} a2={a2:?}");
            agree += 1;
        }
        assert_eq!(agree, 200);
    }

    #[test]
    fn j1_and_phi1() {
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        let k = fld(5, 2);
        for _ in 0..50 {
            let (a1, a2) = random_smooth_general(&k, &mut rng);
            let (e1, j1) = e1_of(&k, a1, a2).unwrap();
            assert_eq!(e1.j_invariant(), j1);
        }
        let k = fld(13, 1);
        let rho = k.primitive_cube_root().unwrap();
        let mut checked = 0;
        while checked < 50 {
            let (a1, a2) = random_smooth_general(&k, &mut rng);
            let c = S3Quartic::general(&k, a1, a2).unwrap();
            let (e1, _) = e1_of(&k, a1, a2).unwrap();
            assert_eq!(phi1(&c, [rho, k.square(rho), k.one()]), None);
            for x in k.elements() {
                for y in k.elements() {
                    if !c.evaluate(x, y, k.one()).is_zero() {
                        continue;
                    }
                    if let Some((u, v)) = phi1(&c, [x, y, k.one()]) {
                        assert!(e1.is_on_curve(crate::ec::Point::Affine(u, v)));
                        checked += 1;
                    }
                }
            }
        }
    }

    #[test]
    fn master_identity_and_cube_relation() {
        let mut rng = ChaCha8Rng::seed_from_u64(36);
        for k in [fld(13, 1), fld(5, 2), fld(11, 1), fld(7, 2)] {
            for _ in 0..30 {
                let (a1, a2) = random_smooth_general(&k, &mut rng);
                let c = S3Quartic::general(&k, a1, a2).unwrap();
                let pred = c.trace_relation_n().unwrap();
                assert_eq!(pred.n, c.count_points().unwrap() as i64);
                let inv = c.invariants().unwrap();
                if let Some(m3) = inv.m3 {
                    assert_eq!(k.mul(k.pow(m3, 3), inv.j2), inv.j1);
                }
            }
        }
    }

    #[test]
    fn master_identity_over_quadratic_extension() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let k = fld(5, 1);
        let k2 = fld(5, 2);
        for _ in 0..20 {
            let (a1, a2) = random_smooth_general(&k, &mut rng);
            let c = S3Quartic::general(&k, a1, a2).unwrap();
            let p = c.trace_relation_n().unwrap();
            let t1 = crate::ec::trace_over_extension(p.t1, 5, 2) as i64;
            let t2 = crate::ec::trace_over_extension(p.t2, 5, 2) as i64;
            let lifted = c.lift(&k2).unwrap();
            assert_eq!(lifted.count_points().unwrap() as i64, 26 - 2 * t1 - t2);
        }
    }

    #[test]
    fn ct_specialisation_of_e2() {
        let k = fld(13, 1);
        for tv in 0..13 {
            let t = k.from_i64(tv);
            let q = k.add(k.add(k.square(t), t), k.one());
            if q.is_zero() || tv == 1 {
                continue;
            }
            let i = |n: i64| k.from_i64(n);
            let t2 = k.square(t);
            let poly = sum(&k, [
                k.mul(i(112), k.square(t2)),
                k.mul(i(272), k.mul(t2, t)),
                k.mul(i(408), t2),
                k.mul(i(296), t),
                i(127),
            ]);
            let a1 = k.div(poly, k.mul(i(432), k.square(q))).unwrap();
            let a2 = k
                .div(
                    k.neg(sum(&k, [k.mul(i(8), t2), k.mul(i(10), t), i(9)])),
                    k.mul(i(6), q),
                )
                .unwrap();
            let Ok((e2, _)) = e2_of(&k, a1, a2) else { continue };
            let t31 = k.sub(k.pow(t, 3), k.one());
            let expect = WeierstrassCurve::from_short(
                &k,
                k.mul(i(-3), k.mul(t, t31)),
                k.mul(i(-2), k.square(t31)),
            );
            if let Ok(expect) = expect {
                assert_eq!(e2.j_invariant(), expect.j_invariant());
                assert_eq!(e2.trace().unwrap().t, expect.trace().unwrap().t);
            }
            match m3_of(&k, a1, a2) {
                Ok(m3) => assert_eq!(m3, k.one()),
                // A vanishes exactly when E2 has invariant 0
                Err(_) => assert!(e2.j_invariant().is_zero()),
            }
        }
    }

    #[test]
    fn galois_homography_exists() {
        let mut rng = ChaCha8Rng::seed_from_u64(38);
        let k = fld(13, 1);
        for _ in 0..30 {
            let (a1, a2) = random_smooth_general(&k, &mut rng);
            let inv = general_invariants(&k, a1, a2).unwrap();
            let h = galois_3torsion_check(&inv.e1, &inv.e2).unwrap().expect("rational homography");
            let (a, b) = inv.e1.short_coefficients().unwrap();
            let (c, d) = inv.e2.short_coefficients().unwrap();
            let f3 = three_division(&k, a, b).unwrap();
            let g3 = three_division(&k, c, d).unwrap();
            assert!(h.pullback_numerator(&g3).rem(&f3).unwrap().is_zero());
        }
        let e = e_t(&k, k.from_i64(2)).unwrap();
        assert!(galois_3torsion_check(&e, &e).unwrap().is_some());
    }

    #[test]
    fn char3_formulas() {
        let mut rng = ChaCha8Rng::seed_from_u64(39);
        for k in [fld(3, 3), fld(3, 5)] {
            let mut done = 0;
            while done < 30 {
                let a1 = k.random_nonzero(&mut rng);
                let a3 = k.random(&mut rng);
                if disc_char3(&k, a1, a3).unwrap().is_zero() {
                    continue;
                }
                let c = S3Quartic::char3(&k, a1, a3).unwrap();
                let inv = c.invariants().unwrap();
                assert_eq!(inv.family, Family::Char3);
                assert_eq!(inv.e1.j_invariant(), inv.j1);
                assert_eq!(inv.e2.j_invariant(), inv.j2);
                assert_eq!(k.div(inv.j1, inv.j2).unwrap(), ratio_char3(&k, a3).unwrap());
                let p = c.trace_relation_n().unwrap();
                assert_eq!(p.n, c.count_points().unwrap() as i64);
                assert_eq!((p.t1 - p.t2).rem_euclid(3), 0);
                if p.t1 % 3 != 0 {
                    // congruent and nonzero mod 3, hence never opposite
                    assert_ne!(p.t1, -p.t2);
                }
                done += 1;
            }
        }
    }

    #[test]
    fn supersingular_member_over_f9() {
        let k = fld(3, 1);
        let (a1, a2) = (k.one(), k.one());
        let (e1, e2) = supersingular_quotients(&k, a1, a2).unwrap();
        assert_eq!(e1.trace().unwrap().n, 4);
        assert_eq!(e2.trace().unwrap().n, 4);
        let c = S3Quartic::new(&k, [a1, a2, k.from_i64(-1), k.one()]).unwrap();
        let c9 = c.lift(&fld(3, 2)).unwrap();
        assert_eq!(c9.count_points().unwrap(), 28);
        assert_eq!(c9.trace_relation_n().unwrap().n, 28);
    }
}
