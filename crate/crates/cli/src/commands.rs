use std::collections::BTreeMap;
use std::fmt::Write as _;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::json;

use s3quartic::construct::{cm_catalog, ConstructionParams, Registry, RouteArgs};
use s3quartic::ec::standard_model;
use s3quartic::gf::{Field, FieldDesc};
use s3quartic::s3q::S3Quartic;
use s3quartic::search::{
    char3_defect, mq_mod3_scan, scan_primes, search_family, twin_scan, verify, Certificate, Method,
    PairMode, TSV_HEADER,
};
use s3quartic::{Error, ErrorKind};

use crate::config::{Config, Format, VerifyPolicy};
use crate::{CatalogCommand, Cli, Command, ConstructArgs, Pairs, ScanCommand};

/// Prime ranges above this need `--long-run`.
const LONG_RUN_FROM: u64 = 2000;

/// How a failed run is reported: exit code plus a stable reason tag.
pub struct Failure {
    pub code: u8,
    pub class: &'static str,
    pub reason: &'static str,
    pub message: String,
}

impl Failure {
    pub fn of(e: &anyhow::Error) -> Self {
        let message = format!("{e:#}");
        match e.downcast_ref::<Error>() {
            Some(err) => {
                let (code, class) = match err.kind() {
                    ErrorKind::Precondition => (2, "precondition"),
                    ErrorKind::Budget => (3, "budget"),
                    ErrorKind::Mismatch => (4, "mismatch"),
                    ErrorKind::Internal => (1, "internal"),
                };
                Failure {
                    code,
                    class,
                    reason: err.reason(),
                    message,
                }
            }
            None => Failure {
                code: 2,
                class: "precondition",
                reason: "invalid input",
                message,
            },
        }
    }

    pub fn json(&self) -> String {
        json!({
            "error": self.class,
            "reason": self.reason,
            "message": self.message,
        })
        .to_string()
    }
}

struct Ctx {
    cfg: Config,
}

impl Ctx {
    fn field(&self, flag: &Option<String>) -> Result<Field> {
        let lit = flag
            .as_deref()
            .or(self.cfg.field.as_deref())
            .ok_or_else(|| Error::Parse("no field given (--field or config)".into()))?;
        Ok(FieldDesc::parse(lit)?)
    }

    fn count_bound(&self) -> u128 {
        self.cfg.budgets.count_bound
    }

    fn emit<T: Serialize>(&self, value: &T, tsv: impl FnOnce() -> String) -> Result<String> {
        Ok(match self.cfg.format {
            Format::Json => serde_json::to_string_pretty(value)? + "\n",
            Format::Tsv => tsv(),
        })
    }
}

pub fn run(cli: Cli) -> Result<String> {
    let mut cfg = Config::load(cli.config.as_deref())?;
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    if let Some(p) = cli.policy {
        cfg.verify = p;
    }
    if let Some(n) = cli.workers {
        if n == 0 {
            return Err(Error::Parse("--workers must be positive".into()).into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("cannot start worker pool")?;
    }
    let ctx = Ctx { cfg };
    match cli.command {
        Command::Construct(args) => construct(&ctx, args),
        Command::Search { field, pairs } => search(&ctx, &field, pairs),
        Command::Scan(s) => scan(&ctx, s),
        Command::Verify { file } => verify_file(&ctx, &file),
        Command::Catalog(CatalogCommand::Cm) => catalog(&ctx),
        Command::Trace { field, j, twist } => trace(&ctx, &field, &j, twist.as_deref()),
        Command::Count { field, coeffs } => count(&ctx, &field, &coeffs),
    }
}

#[derive(Serialize)]
struct ConstructOutput {
    route: String,
    field: String,
    policy: String,
    results: Vec<ConstructResult>,
}

#[derive(Serialize)]
struct ConstructResult {
    certificate: Certificate,
    construction: s3quartic::construct::ConstructionRecord,
}

fn certificate_tsv(out: &mut String, c: &Certificate) {
    let traces = c.traces.map_or("-\t-".into(), |[a, b]| format!("{a}\t{b}"));
    let _ = writeln!(
        out,
        "{}\t{}\t{}\t{}\t{}\t{}",
        c.field,
        c.route,
        c.quartic.join(";"),
        traces,
        c.n().map_or("-".into(), |n| n.to_string()),
        method_name(c.method),
    );
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Trace => "TRACE",
        Method::Count => "COUNT",
        Method::Both => "BOTH",
    }
}

const CERT_TSV_HEADER: &str = "field\troute\tquartic\tt1\tt2\tN\tmethod";

fn construct(ctx: &Ctx, a: ConstructArgs) -> Result<String> {
    let registry = Registry::default();
    if a.list_routes {
        let mut out = String::new();
        for r in registry.iter() {
            let _ = writeln!(out, "{}\t{}", r.name(), r.summary());
        }
        return Ok(out);
    }
    let name = a.route.as_deref().unwrap_or_default();
    let route = registry.get(name).ok_or_else(|| {
        Error::Parse(format!("unknown route {name:?}; known: {}", registry.names().join(", ")))
    })?;
    let k = ctx.field(&a.field)?;
    let args = RouteArgs {
        j1: a.j1,
        j2: a.j2,
        j: a.j,
        v: a.v,
        t: a.t,
        a1: a.a1,
        a2: a.a2,
        a: a.a,
        branch: a.branch,
        ext_cap: Some(ctx.cfg.budgets.ext_cap),
    };
    let q = k.q() as u128;
    let bound = match ctx.cfg.verify {
        VerifyPolicy::Trace => 0,
        VerifyPolicy::Both => ctx.count_bound(),
        VerifyPolicy::Count => {
            if q * q > ctx.count_bound() {
                return Err(Error::Budget {
                    what: "point count",
                    needed: q * q,
                    limit: ctx.count_bound(),
                }
                .into());
            }
            ctx.count_bound()
        }
    };
    let built: Vec<ConstructionParams> = route.build(&k, &args)?;
    let mut results = Vec::new();
    for mut c in built {
        c.validate(bound)?;
        results.push(ConstructResult {
            certificate: Certificate::from_params(&c)?,
            construction: c.record(),
        });
    }
    let out = ConstructOutput {
        route: route.name().to_string(),
        field: k.literal(),
        policy: format!("{:?}", ctx.cfg.verify).to_lowercase(),
        results,
    };
    ctx.emit(&out, || {
        let mut s = format!("{CERT_TSV_HEADER}\n");
        for r in &out.results {
            certificate_tsv(&mut s, &r.certificate);
        }
        s
    })
}

fn within_scan(ctx: &Ctx, what: &'static str, needed: u64) -> Result<()> {
    let limit = ctx.cfg.budgets.scan_bound;
    if needed > limit {
        return Err(Error::Budget {
            what,
            needed: needed as u128,
            limit: limit as u128,
        }
        .into());
    }
    Ok(())
}

fn search(ctx: &Ctx, field: &Option<String>, pairs: Pairs) -> Result<String> {
    let k = ctx.field(field)?;
    within_scan(ctx, "field size", k.q())?;
    let report = if k.p() == 3 {
        char3_defect(k.n(), ctx.count_bound())?
    } else {
        let mode = match pairs {
            Pairs::All => PairMode::All,
            Pairs::Diagonal => PairMode::Diagonal,
            Pairs::Frobenius => PairMode::Frobenius,
        };
        search_family(&k, mode, ctx.count_bound())?
    };
    ctx.emit(&report, || format!("{TSV_HEADER}\n{}\n", report.tsv_row()))
}

fn scan(ctx: &Ctx, s: ScanCommand) -> Result<String> {
    match s {
        ScanCommand::Primes { pmin, pmax, long_run } => {
            if pmin > pmax {
                return Err(Error::Parse(format!("empty range [{pmin}, {pmax}]")).into());
            }
            if pmax > LONG_RUN_FROM && !long_run {
                return Err(Error::Budget {
                    what: "prime range without --long-run",
                    needed: pmax as u128,
                    limit: LONG_RUN_FROM as u128,
                }
                .into());
            }
            within_scan(ctx, "prime range", pmax)?;
            let r = scan_primes(pmin, pmax, ctx.count_bound())?;
            ctx.emit(&r, || {
                let mut rows: BTreeMap<u64, &str> = BTreeMap::new();
                rows.extend(r.failures.iter().map(|&p| (p, "failure")));
                rows.extend(r.excluded.iter().map(|&p| (p, "excluded")));
                rows.extend(r.skipped.iter().map(|&p| (p, "skipped")));
                let mut s = String::from("p\tstatus\n");
                for (p, status) in rows {
                    let _ = writeln!(s, "{p}\t{status}");
                }
                s
            })
        }
        ScanCommand::Twin { bound } => {
            within_scan(ctx, "twin prime bound", bound)?;
            let r = twin_scan(bound, ctx.count_bound())?;
            ctx.emit(&r, || {
                let mut s = String::from("p\tb\tm_p\toptimal\tminimal\tconfirmed\n");
                let opt = |x: Option<i64>| x.map_or("-".into(), |v| v.to_string());
                for e in &r {
                    let _ = writeln!(
                        s,
                        "{}\t{}\t{}\t{}\t{}\t{}",
                        e.p,
                        e.b,
                        e.m_p,
                        opt(e.optimal),
                        opt(e.minimal),
                        e.confirmed.map_or("-".into(), |c| c.to_string())
                    );
                }
                s
            })
        }
        ScanCommand::Mq3 { nmax } => {
            let (hits, entries) = mq_mod3_scan(nmax)?;
            let value = json!({ "nmax": nmax, "hits": hits, "entries": entries });
            ctx.emit(&value, || {
                let mut s = String::from("n\tm_mod3\tabove\tdistance\thit\n");
                for e in &entries {
                    let _ = writeln!(
                        s,
                        "{}\t{}\t{}\t{}\t{}",
                        e.n,
                        e.m_mod3,
                        e.above,
                        e.distance,
                        e.m_mod3 == 0 && e.above
                    );
                }
                s
            })
        }
    }
}

fn verify_file(ctx: &Ctx, path: &std::path::Path) -> Result<String> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read certificate {}", path.display()))?;
    let cert: Certificate = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("certificate JSON: {e}")))?;
    let checked = verify(&cert, ctx.count_bound())?;
    ctx.emit(&checked, || {
        let mut s = format!("{CERT_TSV_HEADER}\n");
        certificate_tsv(&mut s, &checked);
        s
    })
}

fn catalog(ctx: &Ctx) -> Result<String> {
    let rows: Vec<_> = cm_catalog()?.iter().map(|e| e.record()).collect();
    ctx.emit(&rows, || {
        let mut s = String::from("j\tdisc\tt\ttwist\tq_isogenous\tsingular\n");
        for r in &rows {
            let _ = writeln!(
                s,
                "{}\t{}\t{}\t{}\t{}\t{}",
                r.j,
                r.disc,
                r.t.as_deref().unwrap_or("-"),
                r.twist.map_or("-".into(), |t| t.to_string()),
                r.q_isogenous,
                r.singular
            );
        }
        s
    })
}

fn trace(ctx: &Ctx, field: &Option<String>, j: &str, twist: Option<&str>) -> Result<String> {
    let k = ctx.field(field)?;
    let jv = k.parse_element(j)?;
    let mut e = standard_model(&k, jv)?;
    if let Some(d) = twist {
        e = e.quadratic_twist(k.parse_element(d)?)?;
    }
    let t = e.trace()?;
    let value = json!({
        "field": k.literal(),
        "j": k.format(jv),
        "twist": twist.map(|d| k.parse_element(d).map(|x| k.format(x))).transpose()?,
        "curve": e.record(),
        "trace": t,
    });
    ctx.emit(&value, || format!("q\tt\tN\n{}\t{}\t{}\n", t.q, t.t, t.n))
}

fn count(ctx: &Ctx, field: &Option<String>, coeffs: &[String]) -> Result<String> {
    let k = ctx.field(field)?;
    let mut a = [k.zero(); 4];
    for (slot, s) in a.iter_mut().zip(coeffs) {
        *slot = k.parse_element(s)?;
    }
    let quartic = S3Quartic::new(&k, a)?;
    let n = quartic.count_points_with_bound(ctx.count_bound())?;
    // The trace relation is added when the quartic has computable quotients.
    let prediction = quartic.trace_relation_n().ok();
    if let Some(p) = prediction {
        if p.n != n as i64 {
            return Err(Error::Mismatch {
                predicted: p.n,
                counted: n as i64,
            }
            .into());
        }
    }
    let cert = Certificate {
        field: k.literal(),
        quartic: quartic.record().a,
        traces: prediction.map(|p| [p.t1, p.t2]),
        predicted_n: prediction.map(|p| p.n),
        verified_n: Some(n),
        method: if prediction.is_some() { Method::Both } else { Method::Count },
        route: "count".into(),
        params: BTreeMap::new(),
    };
    ctx.emit(&cert, || {
        let mut s = format!("{CERT_TSV_HEADER}\n");
        certificate_tsv(&mut s, &cert);
        s
    })
}
