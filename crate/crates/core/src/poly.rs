//! Univariate polynomials over F_q, root finding, splitting fields, and
//! homographies of the projective line.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Element, Field, FieldDesc};

/// Default bound on the field size for exhaustive root scans.
pub const SCAN_BOUND: u64 = 1 << 26;
/// Largest splitting-extension degree we will search.
pub const EXT_CAP: u32 = 12;

fn same_field(a: &Field, b: &Field) -> Result<()> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(Error::MixedFields)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<Element>,
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly[{}](", self.field.literal())?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}", self.field.format(*c))?;
        }
        write!(f, ")")
    }
}

impl UniPoly {
    /// Builds a polynomial from coefficients, constant term first.
    pub fn new(field: &Field, coeffs: Vec<Element>) -> Self {
        let mut p = UniPoly {
            field: field.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: &Field) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn constant(field: &Field, c: Element) -> Self {
        Self::new(field, vec![c])
    }

    pub fn x(field: &Field) -> Self {
        Self::new(field, vec![field.zero(), field.one()])
    }

    /// `x - r`
    pub fn linear(field: &Field, r: Element) -> Self {
        Self::new(field, vec![field.neg(r), field.one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Element] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Element {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Element {
        self.coeffs.last().copied().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_field(&self.field, &other.field)?;
        let k = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Self::new(
            k,
            (0..n).map(|i| k.add(self.coeff(i), other.coeff(i))).collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        same_field(&self.field, &other.field)?;
        let k = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Self::new(
            k,
            (0..n).map(|i| k.sub(self.coeff(i), other.coeff(i))).collect(),
        ))
    }

    pub fn scale(&self, c: Element) -> Self {
        let k = &self.field;
        Self::new(k, self.coeffs.iter().map(|&a| k.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        same_field(&self.field, &other.field)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let k = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(k);
        }
        let mut out = vec![k.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = k.add(out[i + j], k.mul(a, b));
            }
        }
        Self::new(k, out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::constant(&self.field, self.field.one());
        for _ in 0..e {
            r = r.mul_unchecked(self);
        }
        r
    }

    /// Quotient and remainder.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        same_field(&self.field, &d.field)?;
        let k = &self.field;
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = k.inv(d.leading())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(k), self.clone()));
        }
        let mut quo = vec![k.zero(); r.len() - dd];
        for top in (dd..r.len()).rev() {
            let c = k.mul(r[top], lead_inv);
            if c.is_zero() {
                continue;
            }
            quo[top - dd] = c;
            for (i, &di) in d.coeffs.iter().enumerate() {
                let idx = top - dd + i;
                r[idx] = k.sub(r[idx], k.mul(c, di));
            }
        }
        r.truncate(dd);
        Ok((Self::new(k, quo), Self::new(k, r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.divrem(d)?.1)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        same_field(&self.field, &other.field)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn derivative(&self) -> Self {
        let k = &self.field;
        Self::new(
            k,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| k.mul(c, k.from_u64(i as u64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: Element) -> Element {
        let k = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(k.zero(), |acc, &c| k.add(k.mul(acc, x), c))
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u64, m: &Self) -> Result<Self> {
        let mut r = Self::constant(&self.field, self.field.one()).rem(m)?;
        let mut b = self.rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul_unchecked(&b).rem(m)?;
            }
            b = b.mul_unchecked(&b).rem(m)?;
            e >>= 1;
        }
        Ok(r)
    }

    /// Image of the polynomial under a field embedding.
    pub fn map(&self, emb: &Embedding) -> Result<Self> {
        same_field(&self.field, &emb.from)?;
        Ok(Self::new(
            &emb.to,
            self.coeffs.iter().map(|&c| emb.apply(c)).collect(),
        ))
    }

    /// Coefficients as element strings, constant term first.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|&c| self.field.format(c)).collect()
    }

    /// Distinct roots in the coefficient field by exhaustive evaluation.
    pub fn roots_in(&self, scan_bound: u64) -> Result<Vec<Element>> {
        if self.is_zero() {
            return Err(Error::degenerate("roots of the zero polynomial"));
        }
        let k = &self.field;
        if k.q() > scan_bound {
            return Err(Error::Budget {
                what: "root scan",
                needed: k.q() as u128,
                limit: scan_bound as u128,
            });
        }
        Ok(k.elements().filter(|&x| self.eval(x).is_zero()).collect())
    }

    /// Distinct roots in the coefficient field, by equal-degree splitting
    /// of `gcd(f, x^q - x)`. Works in fields too large to scan.
    pub fn roots(&self) -> Result<Vec<Element>> {
        if self.is_zero() {
            return Err(Error::degenerate("roots of the zero polynomial"));
        }
        let k = self.field.clone();
        let f = self.monic();
        if f.degree() == Some(0) {
            return Ok(Vec::new());
        }
        let x = Self::x(&k);
        let xq = x.powmod(k.q(), &f)?;
        let g = f.gcd(&xq.sub(&x)?)?;
        let mut out = Vec::new();
        split_linear(&g, &mut out)?;
        out.sort();
        Ok(out)
    }

    /// True when every root lies in F_{q^k}, i.e. the squarefree part
    /// divides `x^{q^k} - x`.
    fn splits_over_degree(&self, k: u32) -> Result<bool> {
        let f = self.monic();
        let sq = f.squarefree_part()?;
        if sq.degree().unwrap_or(0) == 0 {
            return Ok(true);
        }
        let x = Self::x(&self.field);
        let mut y = x.rem(&sq)?;
        for _ in 0..k {
            y = y.powmod(self.field.q(), &sq)?;
        }
        Ok(y.sub(&x)?.rem(&sq)?.is_zero())
    }

    /// `f / gcd(f, f')`, corrected for p-th powers.
    fn squarefree_part(&self) -> Result<Self> {
        let f = self.monic();
        let d = f.derivative();
        if d.is_zero() {
            // f is a p-th power; its radical has the same roots as f^(1/p)
            let k = &self.field;
            let p = k.p() as usize;
            let inv_frob = |c: Element| k.pow(c, k.q() / k.p());
            let root = Self::new(
                k,
                f.coeffs.iter().step_by(p).map(|&c| inv_frob(c)).collect(),
            );
            return root.squarefree_part();
        }
        let g = f.gcd(&d)?;
        let (mut q, _) = f.divrem(&g)?;
        // repeated factors of multiplicity divisible by p survive in g
        let rest = g.divrem(&g.gcd(&q)?)?.0;
        if rest.degree().unwrap_or(0) > 0 {
            let extra = rest.squarefree_part()?;
            q = q.mul_unchecked(&extra.divrem(&extra.gcd(&q)?)?.0);
        }
        Ok(q.monic())
    }
}

fn split_linear(g: &UniPoly, out: &mut Vec<Element>) -> Result<()> {
    let k = g.field.clone();
    match g.degree() {
        None | Some(0) => return Ok(()),
        Some(1) => {
            out.push(k.neg(k.div(g.coeff(0), g.leading())?));
            return Ok(());
        }
        _ => {}
    }
    // (x + delta)^((q-1)/2) - 1 separates roots by the character of r + delta
    let half = (k.q() - 1) / 2;
    for delta in 0..k.q() {
        let shift = UniPoly::new(&k, vec![crate::gf::Element::ZERO, k.one()])
            .add(&UniPoly::constant(&k, k.from_packed(delta)?))?;
        let h = shift
            .powmod(half, g)?
            .sub(&UniPoly::constant(&k, k.one()))?;
        let d = g.gcd(&h)?;
        let dd = d.degree().unwrap_or(0);
        if dd > 0 && Some(dd) < g.degree() {
            let (other, _) = g.divrem(&d)?;
            split_linear(&d, out)?;
            split_linear(&other.monic(), out)?;
            return Ok(());
        }
    }
    Err(Error::Internal("equal-degree splitting did not terminate".into()))
}

/// An embedding F_q -> F_{q^k}, determined by the image of the generator.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub from: Field,
    pub to: Field,
    pub z_image: Element,
    basis: Vec<Element>,
}

impl Embedding {
    pub fn new(from: &Field, to: &Field) -> Result<Self> {
        if from.p() != to.p() || !to.n().is_multiple_of(from.n()) {
            return Err(Error::MixedFields);
        }
        let z_image = if from.n() == 1 {
            to.zero()
        } else {
            let m = UniPoly::new(
                to,
                from.modulus().iter().map(|&c| to.from_u64(c)).collect(),
            );
            *m.roots()?
                .first()
                .ok_or_else(|| Error::Internal("modulus has no root in the extension".into()))?
        };
        let basis = (0..from.n()).map(|i| to.pow(z_image, i as u64)).collect();
        Ok(Embedding {
            from: from.clone(),
            to: to.clone(),
            z_image,
            basis,
        })
    }

    pub fn apply(&self, a: Element) -> Element {
        let t = &self.to;
        self.from
            .coeffs(a)
            .iter()
            .zip(&self.basis)
            .fold(t.zero(), |acc, (&c, &b)| t.add(acc, t.mul(t.from_u64(c), b)))
    }

    /// Inverse image, if `x` lies in the embedded subfield.
    pub fn preimage(&self, x: Element) -> Option<Element> {
        let t = &self.to;
        if self.from.n() == 1 {
            return t.is_in_prime_field(x).then(|| self.from.from_u64(x.packed()));
        }
        if t.pow(x, self.from.q()) != x {
            return None;
        }
        // solve sum c_i basis_i = x over F_p by elimination
        let p = t.p();
        let n = self.from.n() as usize;
        let rows = t.n() as usize;
        let cols: Vec<Vec<u64>> = self.basis.iter().map(|&b| t.coeffs(b)).collect();
        let rhs = t.coeffs(x);
        let mut m: Vec<Vec<u64>> = (0..rows)
            .map(|r| {
                let mut row: Vec<u64> = (0..n).map(|c| cols[c][r]).collect();
                row.push(rhs[r]);
                row
            })
            .collect();
        let mut pivot_row = 0;
        let mut pivots = Vec::new();
        for c in 0..n {
            let Some(r) = (pivot_row..rows).find(|&r| m[r][c] != 0) else {
                continue;
            };
            m.swap(pivot_row, r);
            let inv = crate::gf::inv_mod(m[pivot_row][c], p)?;
            for v in m[pivot_row].iter_mut() {
                *v = *v * inv % p;
            }
            for r2 in 0..rows {
                if r2 != pivot_row && m[r2][c] != 0 {
                    let f = m[r2][c];
                    for c2 in 0..=n {
                        m[r2][c2] = (m[r2][c2] + p * p - f * m[pivot_row][c2]) % p;
                    }
                }
            }
            pivots.push(c);
            pivot_row += 1;
        }
        let mut sol = vec![0u64; n];
        for (r, &c) in pivots.iter().enumerate() {
            sol[c] = m[r][n];
        }
        let a = self.from.from_coeffs(&sol).ok()?;
        (self.apply(a) == x).then_some(a)
    }
}

/// Result of a splitting-field computation.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub degree: u32,
    pub field: Field,
    pub embedding: Embedding,
    pub roots: Vec<Element>,
}

/// Smallest extension F_{q^k} (k ≤ `kmax`) over which `f` splits, with the
/// embedding of the base field and the distinct roots there.
pub fn splitting_extension(f: &UniPoly, kmax: u32) -> Result<Splitting> {
    let deg = f.degree().ok_or_else(|| Error::degenerate("zero polynomial"))?;
    if deg > 12 || kmax > EXT_CAP {
        return Err(Error::degenerate("splitting fields are limited to degree 12"));
    }
    let base = f.field();
    for k in 1..=kmax {
        if !f.splits_over_degree(k)? {
            continue;
        }
        let ext = if k == 1 {
            base.clone()
        } else {
            FieldDesc::new(base.p(), base.n() * k)?
        };
        let embedding = Embedding::new(base, &ext)?;
        let roots = f.map(&embedding)?.roots()?;
        return Ok(Splitting {
            degree: k,
            field: ext,
            embedding,
            roots,
        });
    }
    Err(Error::NotSplit(kmax))
}

/// `3x^4 + 6ax^2 + 12bx - a^2`, whose roots are the abscissae of the
/// 3-torsion points of `y^2 = x^3 + ax + b`.
pub fn three_division(k: &Field, a: Element, b: Element) -> Result<UniPoly> {
    let disc = k.add(
        k.mul_int(k.pow(a, 3), 4),
        k.mul_int(k.square(b), 27),
    );
    if disc.is_zero() {
        return Err(Error::Singular("4a^3 + 27b^2 = 0".into()));
    }
    Ok(UniPoly::new(
        k,
        vec![
            k.neg(k.square(a)),
            k.mul_int(b, 12),
            k.mul_int(a, 6),
            k.zero(),
            k.from_i64(3),
        ],
    ))
}

/// A point of the projective line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProjValue {
    Finite(Element),
    Infinity,
}

impl ProjValue {
    pub fn finite(self) -> Option<Element> {
        match self {
            ProjValue::Finite(e) => Some(e),
            ProjValue::Infinity => None,
        }
    }
}

/// `x -> (ax + b) / (cx + d)`, stored with the first nonzero entry equal to 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Homography {
    pub a: Element,
    pub b: Element,
    pub c: Element,
    pub d: Element,
}

impl Homography {
    pub fn new(k: &FieldDesc, a: Element, b: Element, c: Element, d: Element) -> Result<Self> {
        let det = k.sub(k.mul(a, d), k.mul(b, c));
        if det.is_zero() {
            return Err(Error::degenerate("homography with zero determinant"));
        }
        let first = [a, b, c, d]
            .into_iter()
            .find(|e| !e.is_zero())
            .expect("nonzero determinant");
        let s = k.inv(first)?;
        Ok(Homography {
            a: k.mul(a, s),
            b: k.mul(b, s),
            c: k.mul(c, s),
            d: k.mul(d, s),
        })
    }

    pub fn identity(k: &FieldDesc) -> Self {
        Homography {
            a: k.one(),
            b: k.zero(),
            c: k.zero(),
            d: k.one(),
        }
    }

    pub fn entries(&self) -> [Element; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn apply(&self, k: &FieldDesc, x: ProjValue) -> ProjValue {
        match x {
            ProjValue::Infinity => {
                if self.c.is_zero() {
                    ProjValue::Infinity
                } else {
                    ProjValue::Finite(k.div(self.a, self.c).expect("nonzero"))
                }
            }
            ProjValue::Finite(x) => {
                let num = k.add(k.mul(self.a, x), self.b);
                let den = k.add(k.mul(self.c, x), self.d);
                if den.is_zero() {
                    ProjValue::Infinity
                } else {
                    ProjValue::Finite(k.div(num, den).expect("nonzero"))
                }
            }
        }
    }

    /// `self ∘ other`
    pub fn compose(&self, k: &FieldDesc, other: &Self) -> Self {
        let m = |x: Element, y: Element, z: Element, w: Element| k.add(k.mul(x, y), k.mul(z, w));
        Homography::new(
            k,
            m(self.a, other.a, self.b, other.c),
            m(self.a, other.b, self.b, other.d),
            m(self.c, other.a, self.d, other.c),
            m(self.c, other.b, self.d, other.d),
        )
        .expect("product of invertible matrices")
    }

    pub fn inverse(&self, k: &FieldDesc) -> Self {
        Homography::new(k, self.d, k.neg(self.b), k.neg(self.c), self.a)
            .expect("adjugate of an invertible matrix")
    }

    /// Numerator of `g(h(x))`, i.e. `sum g_i (ax+b)^i (cx+d)^(deg g - i)`.
    pub fn pullback_numerator(&self, g: &UniPoly) -> UniPoly {
        let k = g.field();
        let Some(deg) = g.degree() else {
            return g.clone();
        };
        let num = UniPoly::new(k, vec![self.b, self.a]);
        let den = UniPoly::new(k, vec![self.d, self.c]);
        let mut acc = UniPoly::zero(k);
        for (i, &gi) in g.coeffs().iter().enumerate() {
            let term = num
                .pow(i as u32)
                .mul_unchecked(&den.pow((deg - i) as u32))
                .scale(gi);
            acc = acc.add(&term).expect("same field");
        }
        acc
    }
}

/// Homography sending (z1, z2, z3) to (0, 1, ∞).
fn to_standard(k: &FieldDesc, z: [ProjValue; 3]) -> Result<Homography> {
    use ProjValue::*;
    match z {
        [Infinity, Finite(z2), Finite(z3)] => {
            Homography::new(k, k.zero(), k.sub(z2, z3), k.one(), k.neg(z3))
        }
        [Finite(z1), Infinity, Finite(z3)] => {
            Homography::new(k, k.one(), k.neg(z1), k.one(), k.neg(z3))
        }
        [Finite(z1), Finite(z2), Infinity] => {
            Homography::new(k, k.one(), k.neg(z1), k.zero(), k.sub(z2, z1))
        }
        [Finite(z1), Finite(z2), Finite(z3)] => {
            let u = k.sub(z2, z3);
            let w = k.sub(z2, z1);
            Homography::new(k, u, k.neg(k.mul(z1, u)), w, k.neg(k.mul(z3, w)))
        }
        _ => Err(Error::degenerate("repeated point")),
    }
}

/// The unique homography with `h(src[i]) = dst[i]`.
pub fn homography_through(
    k: &FieldDesc,
    src: [ProjValue; 3],
    dst: [ProjValue; 3],
) -> Result<Homography> {
    let s = to_standard(k, src).map_err(|_| Error::degenerate("source points not distinct"))?;
    let t = to_standard(k, dst).map_err(|_| Error::degenerate("target points not distinct"))?;
    Ok(t.inverse(k).compose(k, &s))
}

/// `((a-c)(b-d)) / ((a-d)(b-c))`, with factors involving ∞ dropped.
pub fn cross_ratio(
    k: &FieldDesc,
    a: ProjValue,
    b: ProjValue,
    c: ProjValue,
    d: ProjValue,
) -> Result<Element> {
    let pts = [a, b, c, d];
    for i in 0..4 {
        for j in i + 1..4 {
            if pts[i] == pts[j] {
                return Err(Error::degenerate("cross-ratio of repeated points"));
            }
        }
    }
    let diff = |x: ProjValue, y: ProjValue| match (x, y) {
        (ProjValue::Finite(x), ProjValue::Finite(y)) => k.sub(x, y),
        _ => k.one(),
    };
    let num = k.mul(diff(a, c), diff(b, d));
    let den = k.mul(diff(a, d), diff(b, c));
    k.div(num, den)
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let v = [a, b, c, d];
                    if (0..4).all(|i| v.contains(&i)) {
                        out.push(v);
                    }
                }
            }
        }
    }
    out
}

/// Every homography carrying the set `r` onto the set `s`, sorted.
pub fn quadruple_homographies(
    k: &FieldDesc,
    r: [ProjValue; 4],
    s: [ProjValue; 4],
) -> Vec<Homography> {
    let mut out: Vec<Homography> = permutations4()
        .into_iter()
        .filter_map(|perm| {
            let h = homography_through(
                k,
                [r[0], r[1], r[2]],
                [s[perm[0]], s[perm[1]], s[perm[2]]],
            )
            .ok()?;
            (h.apply(k, r[3]) == s[perm[3]]).then_some(h)
        })
        .collect();
    out.sort();
    out.dedup();
    out
}
