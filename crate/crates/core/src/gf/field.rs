use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;

use super::int::{factor, inv_mod, is_prime};
use crate::error::{Error, Result};

/// Fields up to this size get log/antilog/Zech tables.
pub const TABLE_LIMIT: u64 = 1 << 20;

pub type Field = Arc<FieldDesc>;

/// A field element in packed form: the base-p digits of its coefficient
/// vector, constant term least significant. Elements carry no field; every
/// operation goes through the owning [`FieldDesc`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(u64);

impl Element {
    pub const ZERO: Element = Element(0);

    #[inline]
    pub fn packed(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
    // log(1 + g^k), or NONE when 1 + g^k = 0
    zech: Vec<u32>,
}

const NONE: u32 = u32::MAX;

enum Backend {
    Prime { squares: Option<Vec<bool>> },
    Table(Tables),
    Poly,
}

pub struct FieldDesc {
    p: u64,
    n: u32,
    q: u64,
    modulus: Vec<u64>,
    id: u64,
    backend: Backend,
}

impl fmt::Debug for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldDesc")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldDesc {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n && self.modulus == other.modulus
    }
}

impl Eq for FieldDesc {}

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

// ---- small dense polynomials over F_p (for modulus search) ----

fn fp_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p).expect("nonzero leading coefficient");
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        if c != 0 {
            for i in 0..=dm {
                let idx = top - dm + i;
                r[idx] = (r[idx] + p - c * m[i] % p) % p;
            }
        }
        r.pop();
        r = fp_trim(r);
        if r.len() <= dm {
            break;
        }
    }
    fp_trim(r)
}

fn fp_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    fp_rem(&fp_trim(out), m, p)
}

fn fp_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut r = vec![1u64];
    let mut b = fp_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = fp_mulmod(&r, &b, m, p);
        }
        b = fp_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    r
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = fp_trim(a.to_vec());
    let mut b = fp_trim(b.to_vec());
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    fp_trim(out)
}

/// Rabin's irreducibility test for a monic polynomial of degree n over F_p.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = (f.len() - 1) as u32;
    let x = vec![0u64, 1];
    // x^(p^k) mod f, by repeated p-th powering
    let frob = |k: u32| {
        let mut r = x.clone();
        for _ in 0..k {
            r = fp_powmod(&r, p, f, p);
        }
        r
    };
    if fp_sub(&frob(n), &x, p).iter().any(|&c| c != 0) {
        return false;
    }
    for (r, _) in factor(n as u64) {
        let h = fp_sub(&frob(n / r as u32), &x, p);
        if fp_gcd(f, &h, p).len() != 1 {
            return false;
        }
    }
    true
}

impl FieldDesc {
    /// Builds F_{p^n} with the smallest monic irreducible modulus, ordering
    /// candidates by the packed value of their lower coefficients (highest
    /// non-leading coefficient most significant).
    pub fn new(p: u64, n: u32) -> Result<Field> {
        if p == 2 {
            return Err(Error::CharacteristicTwo);
        }
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = p.checked_pow(n).ok_or(Error::FieldTooLarge { p, n })?;
        let modulus = if n == 1 {
            vec![0, 1]
        } else {
            Self::find_modulus(p, n, q)?
        };
        let mut fd = FieldDesc {
            p,
            n,
            q,
            modulus,
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            backend: Backend::Poly,
        };
        fd.backend = if n == 1 {
            let squares = (p <= TABLE_LIMIT * 4).then(|| {
                let mut sq = vec![false; p as usize];
                for x in 1..p {
                    sq[(x * x % p) as usize] = true;
                }
                sq
            });
            Backend::Prime { squares }
        } else if q <= TABLE_LIMIT {
            Backend::Table(fd.build_tables())
        } else {
            Backend::Poly
        };
        Ok(Arc::new(fd))
    }

    /// Parses a field literal "p" or "p^n".
    pub fn parse(lit: &str) -> Result<Field> {
        let lit = lit.trim();
        let (p, n) = match lit.split_once('^') {
            Some((p, n)) => (p.trim(), n.trim()),
            None => (lit, "1"),
        };
        let p: u64 = p
            .parse()
            .map_err(|_| Error::Parse(format!("bad characteristic in field literal {lit:?}")))?;
        let n: u32 = n
            .parse()
            .map_err(|_| Error::Parse(format!("bad degree in field literal {lit:?}")))?;
        FieldDesc::new(p, n)
    }

    fn find_modulus(p: u64, n: u32, q: u64) -> Result<Vec<u64>> {
        for idx in 0..q {
            let mut f: Vec<u64> = Vec::with_capacity(n as usize + 1);
            let mut v = idx;
            for _ in 0..n {
                f.push(v % p);
                v /= p;
            }
            f.push(1);
            if f[0] == 0 {
                continue;
            }
            if is_irreducible(&f, p) {
                return Ok(f);
            }
        }
        Err(Error::Internal(format!("no irreducible polynomial of degree {n} over F_{p}")))
    }

    fn build_tables(&self) -> Tables {
        let q = self.q;
        let order = q - 1;
        let primes: Vec<u64> = factor(order).into_iter().map(|(r, _)| r).collect();
        let g = (1..q)
            .map(Element)
            .find(|&g| primes.iter().all(|&r| !self.poly_pow(g, order / r).eq(&Element(1))))
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![0u32; q as usize];
        let mut cur = Element(1);
        for i in 0..order as usize {
            exp[i] = cur.0 as u32;
            exp[i + order as usize] = cur.0 as u32;
            log[cur.0 as usize] = i as u32;
            cur = self.poly_mul(cur, g);
        }
        let zech = (0..order as usize)
            .map(|k| {
                let s = self.digit_add(Element(1), Element(exp[k] as u64));
                if s.is_zero() {
                    NONE
                } else {
                    log[s.0 as usize]
                }
            })
            .collect();
        Tables { exp, log, zech }
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Monic modulus, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Process-unique identity, used for mixed-field checks.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn literal(&self) -> String {
        if self.n == 1 {
            self.p.to_string()
        } else {
            format!("{}^{}", self.p, self.n)
        }
    }

    pub fn zero(&self) -> Element {
        Element(0)
    }

    pub fn one(&self) -> Element {
        Element(1)
    }

    /// The class of the polynomial variable, i.e. a root of the modulus.
    pub fn z(&self) -> Element {
        if self.n == 1 {
            Element(0)
        } else {
            Element(self.p)
        }
    }

    pub fn contains(&self, a: Element) -> bool {
        a.0 < self.q
    }

    pub fn is_in_prime_field(&self, a: Element) -> bool {
        a.0 < self.p
    }

    pub fn from_i64(&self, k: i64) -> Element {
        Element(k.rem_euclid(self.p as i64) as u64)
    }

    pub fn from_u64(&self, k: u64) -> Element {
        Element(k % self.p)
    }

    pub fn from_bigint(&self, k: &BigInt) -> Element {
        let p = BigInt::from(self.p);
        Element(k.mod_floor(&p).to_u64().expect("residue fits"))
    }

    /// Reduces a rational mod p; fails when p divides the denominator.
    pub fn from_rational(&self, r: &BigRational) -> Result<Element> {
        let den = self.from_bigint(r.denom());
        if den.is_zero() {
            return Err(Error::BadPrime {
                p: self.p,
                what: format!("denominator of {r} vanishes"),
            });
        }
        self.div(self.from_bigint(r.numer()), den)
    }

    /// Element from a packed value (must be < q).
    pub fn from_packed(&self, v: u64) -> Result<Element> {
        if v < self.q {
            Ok(Element(v))
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn from_coeffs(&self, c: &[u64]) -> Result<Element> {
        if c.len() > self.n as usize {
            return Err(Error::Parse(format!(
                "{} coefficients for a degree-{} field",
                c.len(),
                self.n
            )));
        }
        let mut v = 0u64;
        for &d in c.iter().rev() {
            v = v * self.p + d % self.p;
        }
        Ok(Element(v))
    }

    /// Coefficient vector of length n, constant term first.
    pub fn coeffs(&self, a: Element) -> Vec<u64> {
        let mut v = a.0;
        (0..self.n)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + Clone {
        (0..self.q).map(Element)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Element {
        Element(rng.gen_range(0..self.q))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Element {
        Element(rng.gen_range(1..self.q))
    }

    // ---- arithmetic ----

    #[inline]
    fn digit_add(&self, a: Element, b: Element) -> Element {
        let p = self.p;
        let (mut x, mut y, mut r, mut pw) = (a.0, b.0, 0u64, 1u64);
        while x > 0 || y > 0 {
            let d = (x % p + y % p) % p;
            r += d * pw;
            pw = pw.wrapping_mul(p);
            x /= p;
            y /= p;
        }
        Element(r)
    }

    #[inline]
    fn digit_neg(&self, a: Element) -> Element {
        let p = self.p;
        let (mut x, mut r, mut pw) = (a.0, 0u64, 1u64);
        while x > 0 {
            let d = (p - x % p) % p;
            r += d * pw;
            pw = pw.wrapping_mul(p);
            x /= p;
        }
        Element(r)
    }

    fn poly_mul(&self, a: Element, b: Element) -> Element {
        let n = self.n as usize;
        let p = self.p as u128;
        let ca = self.coeffs(a);
        let cb = self.coeffs(b);
        let mut prod = vec![0u128; 2 * n - 1];
        for i in 0..n {
            if ca[i] == 0 {
                continue;
            }
            for j in 0..n {
                prod[i + j] = (prod[i + j] + ca[i] as u128 * cb[j] as u128) % p;
            }
        }
        for top in (n..2 * n - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for (i, &m) in self.modulus[..n].iter().enumerate() {
                let idx = top - n + i;
                prod[idx] = (prod[idx] + (p - c) * m as u128) % p;
            }
            prod[top] = 0;
        }
        let mut v = 0u64;
        for &d in prod[..n].iter().rev() {
            v = v * self.p + d as u64;
        }
        Element(v)
    }

    fn poly_pow(&self, a: Element, mut e: u64) -> Element {
        let mut r = Element(1);
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.poly_mul(r, b);
            }
            b = self.poly_mul(b, b);
            e >>= 1;
        }
        r
    }

    #[inline]
    pub fn add(&self, a: Element, b: Element) -> Element {
        match &self.backend {
            Backend::Prime { .. } => {
                let s = a.0 + b.0;
                Element(if s >= self.p { s - self.p } else { s })
            }
            Backend::Table(t) => {
                if a.0 == 0 {
                    return b;
                }
                if b.0 == 0 {
                    return a;
                }
                let order = (self.q - 1) as u32;
                let la = t.log[a.0 as usize];
                let lb = t.log[b.0 as usize];
                let d = if lb >= la { lb - la } else { lb + order - la };
                let z = t.zech[d as usize];
                if z == NONE {
                    Element(0)
                } else {
                    Element(t.exp[(la + z) as usize] as u64)
                }
            }
            Backend::Poly => self.digit_add(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Element) -> Element {
        match &self.backend {
            Backend::Prime { .. } => Element(if a.0 == 0 { 0 } else { self.p - a.0 }),
            Backend::Table(t) => {
                if a.0 == 0 {
                    a
                } else {
                    let half = ((self.q - 1) / 2) as u32;
                    Element(t.exp[(t.log[a.0 as usize] + half) as usize] as u64)
                }
            }
            Backend::Poly => self.digit_neg(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: Element, b: Element) -> Element {
        match &self.backend {
            Backend::Prime { .. } => Element(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + self.p - b.0 }),
            _ => self.add(a, self.neg(b)),
        }
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        match &self.backend {
            Backend::Prime { .. } => Element(a.0 * b.0 % self.p),
            Backend::Table(t) => {
                if a.0 == 0 || b.0 == 0 {
                    Element(0)
                } else {
                    let l = t.log[a.0 as usize] + t.log[b.0 as usize];
                    Element(t.exp[l as usize] as u64)
                }
            }
            Backend::Poly => self.poly_mul(a, b),
        }
    }

    #[inline]
    pub fn square(&self, a: Element) -> Element {
        self.mul(a, a)
    }

    /// Multiplies by a small signed integer.
    #[inline]
    pub fn mul_int(&self, a: Element, k: i64) -> Element {
        self.mul(a, self.from_i64(k))
    }

    pub fn inv(&self, a: Element) -> Result<Element> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.backend {
            Backend::Prime { .. } => Element(inv_mod(a.0, self.p).expect("prime modulus")),
            Backend::Table(t) => {
                let order = (self.q - 1) as u32;
                Element(t.exp[(order - t.log[a.0 as usize]) as usize] as u64)
            }
            Backend::Poly => self.poly_pow(a, self.q - 2),
        })
    }

    pub fn div(&self, a: Element, b: Element) -> Result<Element> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Element, e: u64) -> Element {
        if e == 0 {
            return Element(1);
        }
        if a.0 == 0 {
            return Element(0);
        }
        let order = self.q - 1;
        match &self.backend {
            Backend::Table(t) => {
                let l = (t.log[a.0 as usize] as u128 * (e % order) as u128 % order as u128) as usize;
                Element(t.exp[l] as u64)
            }
            _ => {
                let mut e = e % order;
                if e == 0 {
                    return Element(1);
                }
                let mut r = Element(1);
                let mut b = a;
                while e > 0 {
                    if e & 1 == 1 {
                        r = self.mul(r, b);
                    }
                    b = self.mul(b, b);
                    e >>= 1;
                }
                r
            }
        }
    }

    /// Signed exponent; negative powers need a nonzero base.
    pub fn pow_i64(&self, a: Element, e: i64) -> Result<Element> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(self.inv(a)?, e.unsigned_abs()))
        }
    }

    pub fn pow_big(&self, a: Element, e: &BigUint) -> Element {
        if e.is_zero() {
            return Element(1);
        }
        if a.0 == 0 {
            return Element(0);
        }
        let r = (e % BigUint::from(self.q - 1)).to_u64().expect("reduced exponent");
        if r == 0 {
            Element(1)
        } else {
            self.pow(a, r)
        }
    }

    /// `a^(p^i)`.
    pub fn frobenius(&self, a: Element, i: u32) -> Element {
        let k = i % self.n;
        self.pow(a, self.p.pow(k))
    }

    /// Norm down to the prime field, as a residue mod p.
    pub fn norm_to_prime(&self, a: Element) -> u64 {
        if a.0 == 0 {
            return 0;
        }
        let v = self.pow(a, (self.q - 1) / (self.p - 1));
        debug_assert!(v.0 < self.p);
        v.0
    }

    pub fn quadratic_character(&self, a: Element) -> i8 {
        if a.0 == 0 {
            return 0;
        }
        match &self.backend {
            Backend::Prime { squares: Some(sq) } => {
                if sq[a.0 as usize] {
                    1
                } else {
                    -1
                }
            }
            Backend::Table(t) => {
                if t.log[a.0 as usize] % 2 == 0 {
                    1
                } else {
                    -1
                }
            }
            _ => {
                if self.pow(a, (self.q - 1) / 2) == Element(1) {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn is_square(&self, a: Element) -> bool {
        self.quadratic_character(a) >= 0
    }

    /// Square root with the smaller packed value, if any.
    pub fn sqrt(&self, a: Element) -> Option<Element> {
        if a.0 == 0 {
            return Some(a);
        }
        let r = self.rth_root(a, 2)?;
        let s = self.neg(r);
        Some(r.min(s))
    }

    /// All cube roots of `a`, sorted by packed value.
    pub fn cube_roots(&self, a: Element) -> Vec<Element> {
        if a.0 == 0 {
            return vec![a];
        }
        if self.p == 3 {
            return vec![self.pow(a, self.q / 3)];
        }
        let Some(r) = self.rth_root(a, 3) else {
            return Vec::new();
        };
        let mut out = vec![r];
        if let Some(w) = self.primitive_cube_root() {
            out.push(self.mul(r, w));
            out.push(self.mul(r, self.mul(w, w)));
        }
        out.sort();
        out
    }

    /// Smallest root of x^2 + x + 1 when q = 1 mod 3.
    pub fn primitive_cube_root(&self) -> Option<Element> {
        if self.q % 3 != 1 {
            return None;
        }
        if let Backend::Table(t) = &self.backend {
            let third = ((self.q - 1) / 3) as usize;
            let a = Element(t.exp[third] as u64);
            let b = Element(t.exp[2 * third] as u64);
            return Some(a.min(b));
        }
        // (-1 +- sqrt(-3)) / 2
        let s = self.rth_root(self.from_i64(-3), 2)?;
        let half = self.inv(self.from_i64(2)).ok()?;
        let m1 = self.from_i64(-1);
        let a = self.mul(self.add(m1, s), half);
        let b = self.mul(self.sub(m1, s), half);
        Some(a.min(b))
    }

    /// One r-th root (r prime) of a nonzero element, via the Sylow-subgroup
    /// variant of Tonelli-Shanks.
    fn rth_root(&self, a: Element, r: u64) -> Option<Element> {
        debug_assert!(a.0 != 0);
        let order = self.q - 1;
        if let Backend::Table(t) = &self.backend {
            let la = t.log[a.0 as usize] as u64;
            if !order.is_multiple_of(r) {
                let k = inv_mod(r, order)?;
                return Some(Element(t.exp[(la as u128 * k as u128 % order as u128) as usize] as u64));
            }
            if !la.is_multiple_of(r) {
                return None;
            }
            return Some(Element(t.exp[(la / r) as usize] as u64));
        }
        if !order.is_multiple_of(r) {
            let k = inv_mod(r, order)?;
            return Some(self.pow(a, k));
        }
        if self.pow(a, order / r) != Element(1) {
            return None;
        }
        let mut s = 0u32;
        let mut t = order;
        while t.is_multiple_of(r) {
            t /= r;
            s += 1;
        }
        let c = (2..self.q)
            .map(Element)
            .find(|&c| self.pow(c, order / r) != Element(1))
            .expect("non-residue exists");
        let g = self.pow(c, t);
        let k = if t == 1 { 0 } else { inv_mod(r % t, t)? };
        let x0 = self.pow(a, k);
        let b = self.div(self.pow(x0, r), a).ok()?;
        // discrete log of b to base g in the group of order r^s
        let gamma = self.pow(g, r.pow(s - 1));
        let g_inv = self.inv(g).ok()?;
        let mut e = 0u64;
        for i in 0..s {
            let partial = self.mul(b, self.pow(g_inv, e));
            let h = self.pow(partial, r.pow(s - 1 - i));
            let d = (0..r).find(|&d| self.pow(gamma, d) == h)?;
            e += d * r.pow(i);
        }
        if !e.is_multiple_of(r) {
            return None;
        }
        let rs = r.pow(s);
        let z = self.pow(g, (rs - e / r) % rs);
        let x = self.mul(x0, z);
        debug_assert_eq!(self.pow(x, r), a);
        Some(x)
    }

    // ---- text form ----

    pub fn format(&self, a: Element) -> String {
        if self.n == 1 {
            a.0.to_string()
        } else {
            self.coeffs(a)
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    /// Parses an element literal: an integer, a rational `a/b`, a
    /// comma-joined coefficient list (constant first), or `z^k` for a power
    /// of the modulus root.
    pub fn parse_element(&self, s: &str) -> Result<Element> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty element literal".into()));
        }
        if let Some(rest) = s.strip_prefix('z') {
            if self.n == 1 {
                return Err(Error::Parse("z-notation needs an extension field".into()));
            }
            let rest = rest.trim();
            let k: i64 = if rest.is_empty() {
                1
            } else {
                let e = rest.strip_prefix('^').unwrap_or(rest);
                e.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?
            };
            return self.pow_i64(self.z(), k);
        }
        if s.contains(',') {
            let digits = s
                .split(',')
                .map(|d| {
                    d.trim()
                        .parse::<i64>()
                        .map(|v| v.rem_euclid(self.p as i64) as u64)
                        .map_err(|_| Error::Parse(format!("bad coefficient in {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            return self.from_coeffs(&digits);
        }
        if let Some((num, den)) = s.split_once('/') {
            let num: BigInt = num
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
            let den: BigInt = den
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return self.from_rational(&BigRational::new(num, den));
        }
        let v: BigInt = s
            .parse()
            .map_err(|_| Error::Parse(format!("bad element literal {s:?}")))?;
        Ok(self.from_bigint(&v))
    }
}

/// Parses a rational literal `a/b` or integer.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(num, den))
}

pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_positive() && r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
