//! Construction routes from invariants or parameters to quartics.
//!
//! Every route produces [`ConstructionParams`], which carries the quartic,
//! its two quotients and enough context to re-validate itself. Routes are
//! also exposed as trait objects through [`Registry`] so front ends can pick
//! one by name.

mod char3;
mod char7;
mod ct;
mod j1v;

pub use char3::{char3_cube_pair, char3_from_invariants, char3_supersingular};
pub use char7::{char7_mod12, char7_triple_trace, Mod12Outcome, Mod12Readings};
pub use ct::{cm_catalog, ct, ct_coefficients, ct_e2_model, ct_rational, ct_twist, squarefree_part, CmEntry, CmRecord};
pub use j1v::{
    e2_factored, equal_invariant_vs, from_j1_v, homography_route, j2_of, member_coefficients, solve_v,
    solvent, u_of, v_of, w_of, HomographyRoute, HomographyV,
};

use serde::Serialize;

use crate::ec::{trace_over_extension, CurveRecord, WeierstrassCurve, TRACE_BOUND};
use crate::error::{Error, Result};
use crate::gf::{Element, Field, FieldDesc};
use crate::poly::EXT_CAP;
use crate::s3q::{Family, Prediction, QuarticRecord, S3Quartic, COUNT_BOUND};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum RouteTag {
    J1v,
    Homog,
    Ct,
    Eqinv,
    Char3,
    Char3Ss,
    Char7A,
    Char7B,
}

impl RouteTag {
    pub fn name(self) -> &'static str {
        match self {
            RouteTag::J1v => "j1v",
            RouteTag::Homog => "homog",
            RouteTag::Ct => "ct",
            RouteTag::Eqinv => "eqinv",
            RouteTag::Char3 => "char3",
            RouteTag::Char3Ss => "char3ss",
            RouteTag::Char7A => "char7a",
            RouteTag::Char7B => "char7b",
        }
    }
}

/// A constructed quartic with its quotients and the parameters that led to it.
#[derive(Clone, Debug)]
pub struct ConstructionParams {
    pub route: RouteTag,
    pub field: Field,
    pub family: Family,
    pub j1: Option<Element>,
    pub j2: Option<Element>,
    pub v: Option<Element>,
    pub t: Option<Element>,
    /// `i` with `M3 = ρ^i`, for the equal-invariant branches.
    pub branch: Option<u8>,
    pub m3: Option<Element>,
    pub quartic: S3Quartic,
    pub e1: WeierstrassCurve,
    pub e2: WeierstrassCurve,
    pub prediction: Option<Prediction>,
    pub counted: Option<u64>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstructionRecord {
    pub route: RouteTag,
    pub field: String,
    pub j1: Option<String>,
    pub j2: Option<String>,
    pub v: Option<String>,
    pub t: Option<String>,
    pub branch: Option<u8>,
    pub quartic: QuarticRecord,
    pub e1: CurveRecord,
    pub e2: CurveRecord,
    pub traces: Option<[i64; 2]>,
    pub predicted_n: Option<i64>,
    pub counted_n: Option<u64>,
    pub notes: Vec<String>,
}

impl ConstructionParams {
    /// Computes the invariants of `quartic` and records them.
    pub fn assemble(route: RouteTag, quartic: S3Quartic) -> Result<Self> {
        let inv = quartic.invariants()?;
        let stores_j = inv.family != Family::Char3Supersingular;
        Ok(ConstructionParams {
            route,
            field: quartic.field().clone(),
            family: inv.family,
            j1: stores_j.then_some(inv.j1),
            j2: stores_j.then_some(inv.j2),
            v: None,
            t: None,
            branch: None,
            m3: inv.m3,
            quartic,
            e1: inv.e1,
            e2: inv.e2,
            prediction: None,
            counted: None,
            notes: Vec::new(),
        })
    }

    /// Trace-relation prediction, computed once; `None` above the trace bound.
    pub fn predict(&self) -> Result<Option<Prediction>> {
        if let Some(p) = self.prediction {
            return Ok(Some(p));
        }
        if self.field.q() > TRACE_BOUND {
            return Ok(None);
        }
        let t1 = self.e1.trace()?.t;
        let t2 = self.e2.trace()?.t;
        let q = self.field.q() as i64;
        Ok(Some(Prediction {
            t1,
            t2,
            n: q + 1 - 2 * t1 - t2,
        }))
    }

    /// Fills in the prediction (and the count when `q^2 ≤ count_bound`),
    /// after checking that the recomputed invariants match the stored ones.
    pub fn validate(&mut self, count_bound: u128) -> Result<()> {
        let inv = self.quartic.invariants()?;
        if inv.family != Family::Char3Supersingular
            && (self.j1 != Some(inv.j1) || self.j2 != Some(inv.j2))
        {
            return Err(Error::Internal("recomputed invariants differ from the stored ones".into()));
        }
        self.prediction = self.predict()?;
        let q = self.field.q() as u128;
        if q * q <= count_bound {
            let n = self.quartic.count_points_with_bound(count_bound)?;
            self.counted = Some(n);
            if let Some(p) = self.prediction {
                if p.n != n as i64 {
                    return Err(Error::Mismatch {
                        predicted: p.n,
                        counted: n as i64,
                    });
                }
            }
        }
        Ok(())
    }

    /// Count over `F_{q^k}` predicted from the traces over `F_q`.
    pub fn predicted_over_extension(&self, k: u32) -> Result<Option<i64>> {
        let Some(p) = self.predict()? else { return Ok(None) };
        let q = self.field.q();
        let qk = (q as i128).checked_pow(k).ok_or(Error::FieldTooLarge { p: self.field.p(), n: self.field.n() * k })?;
        let t1 = trace_over_extension(p.t1, q, k);
        let t2 = trace_over_extension(p.t2, q, k);
        Ok(Some((qk + 1 - 2 * t1 - t2) as i64))
    }

    pub fn record(&self) -> ConstructionRecord {
        let k = &self.field;
        let fmt = |e: Option<Element>| e.map(|x| k.format(x));
        ConstructionRecord {
            route: self.route,
            field: k.literal(),
            j1: fmt(self.j1),
            j2: fmt(self.j2),
            v: fmt(self.v),
            t: fmt(self.t),
            branch: self.branch,
            quartic: self.quartic.record(),
            e1: self.e1.record(),
            e2: self.e2.record(),
            traces: self.prediction.map(|p| [p.t1, p.t2]),
            predicted_n: self.prediction.map(|p| p.n),
            counted_n: self.counted,
            notes: self.notes.clone(),
        }
    }
}

/// Textual arguments handed to a route; each route parses what it needs.
#[derive(Clone, Debug, Default)]
pub struct RouteArgs {
    pub j1: Option<String>,
    pub j2: Option<String>,
    pub j: Option<String>,
    pub v: Option<String>,
    pub t: Option<String>,
    pub a1: Option<String>,
    pub a2: Option<String>,
    pub a: Option<i64>,
    pub branch: Option<u8>,
    /// Largest extension degree searched for splitting fields.
    pub ext_cap: Option<u32>,
}

fn need<'a>(name: &str, v: &'a Option<String>) -> Result<&'a str> {
    v.as_deref()
        .ok_or_else(|| Error::Parse(format!("missing argument --{name}")))
}

fn elem(k: &FieldDesc, name: &str, v: &Option<String>) -> Result<Element> {
    k.parse_element(need(name, v)?)
}

/// A named construction recipe.
pub trait ConstructionRoute: Send + Sync {
    fn tag(&self) -> RouteTag;
    fn summary(&self) -> &'static str;
    fn build(&self, k: &Field, args: &RouteArgs) -> Result<Vec<ConstructionParams>>;
    fn name(&self) -> &'static str {
        self.tag().name()
    }
}

struct J1vRoute;
struct HomogRoute;
struct CtRoute;
struct EqinvRoute;
struct Char3Route;
struct Char3SsRoute;
struct Char7aRoute;
struct Char7bRoute;

impl ConstructionRoute for J1vRoute {
    fn tag(&self) -> RouteTag {
        RouteTag::J1v
    }
    fn summary(&self) -> &'static str {
        "member attached to (J1, v)"
    }
    fn build(&self, k: &Field, args: &RouteArgs) -> Result<Vec<ConstructionParams>> {
        let j1 = elem(k, "j1", &args.j1)?;
        let v = elem(k, "v", &args.v)?;
        Ok(vec![from_j1_v(k, j1, v)?])
    }
}

impl ConstructionRoute for HomogRoute {
    fn tag(&self) -> RouteTag {
        RouteTag::Homog
    }
    fn summary(&self) -> &'static str {
        "members over (J1, J2) from homographies between 3-division quadruples"
    }
    fn build(&self, k: &Field, args: &RouteArgs) -> Result<Vec<ConstructionParams>> {
        let j1 = elem(k, "j1", &args.j1)?;
        let j2 = elem(k, "j2", &args.j2)?;
        let route = homography_route(k, j1, j2, args.ext_cap.unwrap_or(EXT_CAP))?;
        let mut vs: Vec<Element> = route.entries.iter().filter_map(|e| e.base).collect();
        vs.sort();
        vs.dedup();
        let mut out = Vec::new();
        for v in vs {
            if let Ok(mut c) = from_j1_v(k, j1, v) {
                c.route = RouteTag::Homog;
                out.push(c);
            }
        }
        if out.is_empty() {
            return Err(Error::NotFound("no homography yields a base-field member".into()));
        }
        Ok(out)
    }
}

impl ConstructionRoute for CtRoute {
    fn tag(&self) -> RouteTag {
        RouteTag::Ct
    }
    fn summary(&self) -> &'static str {
        "equal-invariant member C_t (t may be a rational a/b)"
    }
    fn build(&self, k: &Field, args: &RouteArgs) -> Result<Vec<ConstructionParams>> {
        let s = need("t", &args.t)?;
        let c = match crate::gf::parse_rational(s) {
            Ok(r) => ct_rational(k, &r)?,
            Err(_) => ct(k, k.parse_element(s)?)?,
        };
        Ok(vec![c])
    }
}

impl ConstructionRoute for EqinvRoute {
    fn tag(&self) -> RouteTag {
        RouteTag::Eqinv
    }
    fn summary(&self) -> &'static str {
        "members with J2 = J1 on the branch M3 = ρ^i"
    }
    fn build(&self, k: &Field, args: &RouteArgs) -> Result<Vec<ConstructionParams>> {
        let j1 = elem(k, "j1", &args.j1)?;
        let branch = args.branch.unwrap_or(0);
        let mut out = Vec::new();
        for v in equal_invariant_vs(k, j1, branch)? {
            if let Ok(mut c) = from_j1_v(k, j1, v) {
                c.route = RouteTag::Eqinv;
                c.branch = Some(branch % 3);
                out.push(c);
            }
        }
        if out.is_empty() {
            return Err(Error::NotFound(format!("no smooth member on branch {branch}")));
        }
        Ok(out)
    }
}

impl ConstructionRoute for Char3Route {
    fn tag(&self) -> RouteTag {
        RouteTag::Char3
    }
    fn summary(&self) -> &'static str {
        "characteristic 3: C_{a1,a3} from (J1, J2), or the pair (j, j^3) from --j"
    }
    fn build(&self, k: &Field, args: &RouteArgs) -> Result<Vec<ConstructionParams>> {
        if args.j.is_some() {
            let (c, cp) = char3_cube_pair(k, elem(k, "j", &args.j)?)?;
            return Ok(vec![c, cp]);
        }
        let j1 = elem(k, "j1", &args.j1)?;
        let j2 = elem(k, "j2", &args.j2)?;
        Ok(vec![char3_from_invariants(k, j1, j2)?])
    }
}

impl ConstructionRoute for Char3SsRoute {
    fn tag(&self) -> RouteTag {
        RouteTag::Char3Ss
    }
    fn summary(&self) -> &'static str {
        "characteristic 3 supersingular family a3 = -1"
    }
    fn build(&self, k: &Field, args: &RouteArgs) -> Result<Vec<ConstructionParams>> {
        let a1 = elem(k, "a1", &args.a1)?;
        let a2 = elem(k, "a2", &args.a2)?;
        Ok(vec![char3_supersingular(k, a1, a2)?])
    }
}

impl ConstructionRoute for Char7aRoute {
    fn tag(&self) -> RouteTag {
        RouteTag::Char7A
    }
    fn summary(&self) -> &'static str {
        "characteristic 7: C_t with q + 1 - 3a points, a ≡ 9, 15, 18 (mod 21)"
    }
    fn build(&self, k: &Field, args: &RouteArgs) -> Result<Vec<ConstructionParams>> {
        let a = args.a.ok_or_else(|| Error::Parse("missing argument --a".into()))?;
        Ok(vec![char7_triple_trace(k, a)?])
    }
}

impl ConstructionRoute for Char7bRoute {
    fn tag(&self) -> RouteTag {
        RouteTag::Char7B
    }
    fn summary(&self) -> &'static str {
        "characteristic 7: twist pair with q + 1 ∓ 3a points on M3 = ρ"
    }
    fn build(&self, k: &Field, args: &RouteArgs) -> Result<Vec<ConstructionParams>> {
        let a = args.a.ok_or_else(|| Error::Parse("missing argument --a".into()))?;
        let out = char7_mod12(k, a)?;
        match (out.minus, out.plus) {
            (Some(m), Some(p)) => Ok(vec![m, p]),
            _ => Err(Error::NotFound(
                out.blocked.unwrap_or_else(|| "no admissible parameter".into()),
            )),
        }
    }
}

/// All routes, addressable by name.
pub struct Registry {
    routes: Vec<Box<dyn ConstructionRoute>>,
}

impl Default for Registry {
    fn default() -> Self {
        Registry {
            routes: vec![
                Box::new(J1vRoute),
                Box::new(HomogRoute),
                Box::new(CtRoute),
                Box::new(EqinvRoute),
                Box::new(Char3Route),
                Box::new(Char3SsRoute),
                Box::new(Char7aRoute),
                Box::new(Char7bRoute),
            ],
        }
    }
}

impl Registry {
    pub fn get(&self, name: &str) -> Option<&dyn ConstructionRoute> {
        let name = name.to_ascii_lowercase();
        self.routes.iter().find(|r| r.name() == name).map(|r| r.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.routes.iter().map(|r| r.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn ConstructionRoute> {
        self.routes.iter().map(|r| r.as_ref())
    }
}

/// Builds through the named route and validates every result.
pub fn build_validated(
    registry: &Registry,
    route: &str,
    k: &Field,
    args: &RouteArgs,
    count_bound: u128,
) -> Result<Vec<ConstructionParams>> {
    let r = registry
        .get(route)
        .ok_or_else(|| Error::Parse(format!("unknown route {route}")))?;
    let mut out = r.build(k, args)?;
    for c in &mut out {
        c.validate(count_bound)?;
    }
    Ok(out)
}

/// Default count bound, re-exported for front ends.
pub const DEFAULT_COUNT_BOUND: u128 = COUNT_BOUND;
