//! Reproducible number-theoretic scans: the primes `4b^2 + 7` carrying an
//! optimal and a minimal member of the Klein class, and the exponents `n`
//! for which `m_{3^n}` is divisible by 3 with a large fractional part.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::construct::ct_rational;
use crate::error::{Error, Result};
use crate::gf::{is_prime, jacobi, m_q, parse_rational, FieldDesc};

use super::cert::Certificate;

#[derive(Clone, Debug, Serialize)]
pub struct TwinEntry {
    pub p: u64,
    pub b: u64,
    pub m_p: u64,
    /// Certificates for `t = -5/4` and `t = 85/4`, when counted.
    pub certificates: Vec<Certificate>,
    pub optimal: Option<i64>,
    pub minimal: Option<i64>,
    /// Whether one member is optimal and the other minimal.
    pub confirmed: Option<bool>,
}

/// Primes `p = 4b^2 + 7` (b ≥ 4, p ≤ bound) with `(p/57) = -1`. Members
/// `C_{-5/4}` and `C_{85/4}` are built for `p^2 ≤ count_bound`.
pub fn twin_scan(bound: u64, count_bound: u128) -> Result<Vec<TwinEntry>> {
    if bound > 1_000_000 {
        return Err(Error::Budget {
            what: "twin prime bound",
            needed: bound as u128,
            limit: 1_000_000,
        });
    }
    let ts = [parse_rational("-5/4")?, parse_rational("85/4")?];
    let bs: Vec<u64> = (4..).take_while(|b| 4 * b * b + 7 <= bound).collect();
    bs.par_iter()
        .filter_map(|&b| {
            let p = 4 * b * b + 7;
            (is_prime(p) && jacobi(p as i64, 57) == -1).then_some((b, p))
        })
        .map(|(b, p)| {
            let m_p = m_q(p);
            let mut e = TwinEntry {
                p,
                b,
                m_p,
                certificates: Vec::new(),
                optimal: None,
                minimal: None,
                confirmed: None,
            };
            if (p as u128) * (p as u128) <= count_bound {
                let k = FieldDesc::new(p, 1)?;
                let mut ns = Vec::new();
                for t in &ts {
                    let mut c = ct_rational(&k, t)?;
                    c.validate(count_bound)?;
                    let cert = Certificate::from_params(&c)?;
                    ns.push(cert.n().expect("counted"));
                    e.certificates.push(cert);
                }
                let hi = p as i64 + 1 + 3 * m_p as i64;
                let lo = p as i64 + 1 - 3 * m_p as i64;
                e.optimal = ns.iter().copied().find(|&n| n == hi);
                e.minimal = ns.iter().copied().find(|&n| n == lo);
                e.confirmed = Some(e.optimal.is_some() && e.minimal.is_some());
            }
            Ok(e)
        })
        .collect::<Result<Vec<_>>>()
        .map(|mut v| {
            v.sort_by_key(|e| e.p);
            v
        })
}

/// Working precision, in bits, for the fractional-part comparison.
const PREC_BITS: u64 = 256;

#[derive(Clone, Debug, Serialize)]
pub struct Mq3Entry {
    pub n: u64,
    /// `m_{3^n} mod 3`.
    pub m_mod3: u8,
    /// Fractional part of `2 * 3^(n/2)` exceeds the threshold.
    pub above: bool,
    /// `|frac - threshold|`, as a decimal string with 30 digits.
    pub distance: String,
    /// Distance below `1e-20`: the comparison is not trusted.
    pub flagged: bool,
}

/// `y^3 + 2y^2 - y - 1`, whose root in (0, 1) is `1 - 4 cos^2(3π/7)`.
fn theta_poly(y: &BigRational) -> BigRational {
    let two = BigRational::from_integer(2.into());
    y * y * y + &two * y * y - y - BigRational::one()
}

/// The threshold scaled by `2^PREC_BITS`, by bisection.
fn theta_fixed() -> BigInt {
    let scale = BigInt::one() << PREC_BITS;
    let (mut lo, mut hi) = (BigInt::zero(), scale.clone());
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1;
        let y = BigRational::new(mid.clone(), scale.clone());
        if theta_poly(&y).is_negative() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Exact sign of `p(f)` for `f = s - m`, `s = sqrt(4q)`:
/// `p(f) = beta s + alpha` with integer `alpha`, `beta`.
fn above_threshold_exact(q: &BigInt, m: &BigInt) -> bool {
    let (qm, mm) = (q * m, m * m);
    let beta: BigInt = q * 4 + &mm * 3 - m * 4 - 1;
    let alpha: BigInt = q * 8 + &mm * 2 + m - 1 - qm * 12 - &mm * m;
    if !alpha.is_negative() {
        return true;
    }
    // beta > 0, so beta s > -alpha  <=>  beta^2 4q > alpha^2.
    &beta * &beta * q * 4 > &alpha * &alpha
}

/// Odd `n ≤ nmax` with `m_{3^n} ≡ 0 (mod 3)` and the fractional part of
/// `2 * 3^(n/2)` above `1 - 4 cos^2(3π/7)`.
pub fn mq_mod3_scan(nmax: u64) -> Result<(Vec<u64>, Vec<Mq3Entry>)> {
    if nmax > 2000 {
        return Err(Error::Budget {
            what: "exponent range",
            needed: nmax as u128,
            limit: 2000,
        });
    }
    let theta = theta_fixed();
    let scale = BigInt::one() << PREC_BITS;
    let tiny = &scale / BigInt::from(10u64).pow(20);
    let entries: Vec<Mq3Entry> = (1..=nmax)
        .into_par_iter()
        .filter(|n| n % 2 == 1)
        .map(|n| {
            let q = BigInt::from(BigUint::from(3u32).pow(n as u32));
            let four_q: BigInt = &q * 4;
            let m: BigInt = four_q.sqrt();
            let m_mod3 = (&m % BigInt::from(3)).to_u8().expect("small");
            // frac * 2^PREC = floor(sqrt(4q * 4^PREC)) - m * 2^PREC
            let s_fixed = (&four_q << (2 * PREC_BITS)).sqrt();
            let frac = &s_fixed - (&m << PREC_BITS);
            let diff = &frac - &theta;
            let above_fixed = diff.is_positive();
            let above = above_threshold_exact(&q, &m);
            let flagged = diff.abs() <= tiny || above_fixed != above;
            Mq3Entry {
                n,
                m_mod3,
                above,
                distance: decimal(&diff.abs(), &scale, 30),
                flagged,
            }
        })
        .collect();
    if let Some(e) = entries.iter().find(|e| e.flagged) {
        return Err(Error::Internal(format!(
            "precision guard tripped at n = {} (distance {})",
            e.n, e.distance
        )));
    }
    let hits = entries
        .iter()
        .filter(|e| e.m_mod3 == 0 && e.above)
        .map(|e| e.n)
        .collect();
    Ok((hits, entries))
}

fn decimal(x: &BigInt, scale: &BigInt, digits: u32) -> String {
    let ip = x / scale;
    let frac = (x % scale) * BigInt::from(10u64).pow(digits) / scale;
    format!("{ip}.{:0>width$}", frac.to_string(), width = digits as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_value() {
        let t = theta_fixed();
        let s = decimal(&t, &(BigInt::one() << PREC_BITS), 12);
        // 1 - 4 cos^2(3π/7) = 0.80193773580...
        assert_eq!(&s[..10], "0.80193773");
    }

    #[test]
    fn small_exponents() {
        let (hits, entries) = mq_mod3_scan(20).unwrap();
        assert_eq!(hits, vec![15]);
        assert!(entries.iter().any(|e| e.n == 13 && !(e.m_mod3 == 0 && e.above)));
    }
}
