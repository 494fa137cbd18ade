use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::construct::ConstructionParams;
use crate::error::{Error, Result};
use crate::gf::FieldDesc;
use crate::s3q::S3Quartic;

/// How a certificate's count is backed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Method {
    /// Trace relation only.
    Trace,
    /// Direct enumeration only.
    Count,
    Both,
}

/// A claimed point count with its evidence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub field: String,
    pub quartic: [String; 4],
    pub traces: Option<[i64; 2]>,
    pub predicted_n: Option<i64>,
    pub verified_n: Option<u64>,
    pub method: Method,
    pub route: String,
    #[serde(default)]
    pub params: BTreeMap<String, String>,
}

impl Certificate {
    /// Certificate for a construction; the trace prediction is required.
    pub fn from_params(c: &ConstructionParams) -> Result<Self> {
        let p = match c.prediction {
            Some(p) => p,
            None => c
                .predict()?
                .ok_or(Error::Budget {
                    what: "trace computation",
                    needed: c.field.q() as u128,
                    limit: crate::ec::TRACE_BOUND as u128,
                })?,
        };
        let k = &c.field;
        let mut params = BTreeMap::new();
        for (name, val) in [("j1", c.j1), ("j2", c.j2), ("v", c.v), ("t", c.t)] {
            if let Some(x) = val {
                params.insert(name.to_string(), k.format(x));
            }
        }
        if let Some(b) = c.branch {
            params.insert("branch".into(), b.to_string());
        }
        let (verified_n, method) = match c.counted {
            Some(n) => (Some(n), Method::Both),
            None => (None, Method::Trace),
        };
        Ok(Certificate {
            field: k.literal(),
            quartic: c.quartic.record().a,
            traces: Some([p.t1, p.t2]),
            predicted_n: Some(p.n),
            verified_n,
            method,
            route: c.route.name().to_string(),
            params,
        })
    }

    /// The claimed count: the verified one when present.
    pub fn n(&self) -> Option<i64> {
        self.verified_n.map(|n| n as i64).or(self.predicted_n)
    }

    pub fn quartic(&self) -> Result<S3Quartic> {
        let k = FieldDesc::parse(&self.field)?;
        let mut a = [k.zero(); 4];
        for (slot, s) in a.iter_mut().zip(&self.quartic) {
            *slot = k.parse_element(s)?;
        }
        S3Quartic::new(&k, a)
    }
}

/// Recounts the quartic and upgrades the method tag. A disagreement with
/// the predicted or previously verified count is a hard error.
pub fn verify(c: &Certificate, count_bound: u128) -> Result<Certificate> {
    let quartic = c.quartic()?;
    let n = quartic.count_points_with_bound(count_bound)?;
    for claim in [c.predicted_n, c.verified_n.map(|v| v as i64)].into_iter().flatten() {
        if claim != n as i64 {
            return Err(Error::Mismatch {
                predicted: claim,
                counted: n as i64,
            });
        }
    }
    let mut out = c.clone();
    out.verified_n = Some(n);
    out.method = if c.predicted_n.is_some() {
        Method::Both
    } else {
        Method::Count
    };
    Ok(out)
}
