//! One line per acceptance criterion, then an assertion.

use std::collections::BTreeSet;
use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use s3quartic::construct::{
    char3_from_invariants, char3_supersingular, char7_mod12, char7_triple_trace, cm_catalog, ct_rational,
    homography_route, solvent,
};
use s3quartic::gf::{m_q, primes_in, Element, Field, FieldDesc};
use s3quartic::poly::{splitting_extension, ProjValue, EXT_CAP};
use s3quartic::s3q::{ratio_char3, S3Quartic};
use s3quartic::search::{char3_defect, mq_mod3_scan, scan_primes, search_family, twin_scan, PairMode};

const COUNT_BOUND: u128 = 1 << 36;

/// Writes through the stdout handle, which the test harness does not
/// capture, so every criterion line shows up in the run log.
fn report(n: u32, name: &str, ok: bool, detail: impl AsRef<str>) {
    let _ = writeln!(
        std::io::stdout().lock(),
        "criterion {n:>2} [{name}]: {} ({})",
        if ok { "PASS" } else { "FAIL" },
        detail.as_ref()
    );
    assert!(ok, "criterion {n} failed: {}", detail.as_ref());
}

fn field(p: u64, n: u32) -> Field {
    FieldDesc::new(p, n).unwrap()
}

/// Smooth random members: `C_{a1,a2}` in characteristic above 3 and
/// `C_{a1,a3}` in characteristic 3.
fn samples(per_field: usize) -> Vec<S3Quartic> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut out = Vec::new();
    for (p, n) in [(5, 1), (7, 1), (11, 1), (13, 1), (5, 2), (7, 2), (3, 3), (3, 5)] {
        let k = field(p, n);
        let mut got = 0;
        let mut tries = 0;
        while got < per_field && tries < 100 * per_field {
            tries += 1;
            let c = if p == 3 {
                S3Quartic::char3(&k, k.random(&mut rng), k.random(&mut rng))
            } else {
                S3Quartic::general(&k, k.random(&mut rng), k.random(&mut rng))
            };
            let Ok(c) = c else { continue };
            if c.invariants().is_ok() {
                out.push(c);
                got += 1;
            }
        }
    }
    out
}

#[test]
fn c01_master_isogeny_identity() {
    let qs = samples(70);
    let bad: Vec<String> = qs
        .iter()
        .filter_map(|c| {
            let p = c.trace_relation_n().ok()?;
            let n = c.count_points().ok()? as i64;
            (n != p.n).then(|| format!("{:?}: counted {n}, predicted {}", c.record(), p.n))
        })
        .collect();
    report(
        1,
        "N = q + 1 - 2 t1 - t2",
        qs.len() >= 500 && bad.is_empty(),
        format!("{} samples, {} mismatches {:?}", qs.len(), bad.len(), bad.first()),
    );
}

#[test]
fn c02_cube_relation() {
    let qs = samples(70);
    let mut checked = 0;
    let mut bad = 0;
    for c in &qs {
        let inv = c.invariants().unwrap();
        let k = c.field();
        if k.p() == 3 {
            let a3 = inv.normalized.coeffs()[2];
            checked += 1;
            if k.div(inv.j1, inv.j2).ok() != Some(ratio_char3(k, a3).unwrap()) {
                bad += 1;
            }
        } else if let Some(m) = inv.m3 {
            checked += 1;
            if k.mul(k.pow(m, 3), inv.j2) != inv.j1 {
                bad += 1;
            }
        }
    }
    report(
        2,
        "M3^3 J2 = J1, J1/J2 = -a3^3",
        checked >= 450 && bad == 0,
        format!("{checked} checked, {bad} failures"),
    );
}

#[test]
fn c03_twelve_structure() {
    let k = field(13, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut pairs = 0;
    let mut failures = Vec::new();
    let generic = |j: Element| !j.is_zero() && j != k.from_i64(1728);
    while pairs < 10 {
        let (j1, j2) = (k.random(&mut rng), k.random(&mut rng));
        if j1 == j2 || !generic(j1) || !generic(j2) {
            continue;
        }
        pairs += 1;
        let s = solvent(&k, j1, j2).unwrap();
        let own = splitting_extension(&s, EXT_CAP).unwrap();
        let route = homography_route(&k, j1, j2, EXT_CAP).unwrap();
        let sm = s.map(&route.splitting.embedding).unwrap();
        let vs: BTreeSet<ProjValue> = route.entries.iter().map(|e| e.v).collect();
        // The solvent is a binary form of degree 12; a drop in degree is a
        // root at v = ∞, matched by homographies with h(∞) = 0.
        let deg = s.degree().unwrap_or(0);
        let at_infinity = vs.iter().filter(|v| **v == ProjValue::Infinity).count();
        let finite_roots = vs
            .iter()
            .filter_map(|v| v.finite())
            .all(|x| sm.eval(x).is_zero());
        let ok = own.roots.len() + (12 - deg) == 12
            && route.entries.len() == 12
            && vs.len() == 12
            && at_infinity == 12 - deg
            && finite_roots;
        if !ok {
            failures.push(format!(
                "({}, {}): degree {:?}, {} roots, {} homographies, {} distinct v",
                k.format(j1),
                k.format(j2),
                s.degree(),
                own.roots.len(),
                route.entries.len(),
                vs.len()
            ));
        }
    }
    report(
        3,
        "12 solvent roots = {1/(3h(inf))}",
        failures.is_empty(),
        format!("{pairs} pairs over F_13, failures {failures:?}"),
    );
}

const FAILURES_1000: [u64; 19] = [
    53, 167, 173, 193, 293, 311, 347, 353, 359, 479, 523, 557, 569, 661, 709, 773, 787, 823, 997,
];

#[test]
fn c04_failure_primes() {
    let fast = scan_primes(2, 200, COUNT_BOUND).unwrap();
    let fast_ok = fast.failures == [53, 167, 173, 193];
    let full = scan_primes(2, 1000, COUNT_BOUND).unwrap();
    let full_ok = full.failures == FAILURES_1000;
    let supported = primes_in(5, 1000).len() - full.excluded.len() - full.failures.len();
    let counted_ok = full.counted_optimal == supported;
    let diag: Vec<String> = full
        .diagnostics
        .iter()
        .filter(|r| !FAILURES_1000.contains(&r.q))
        .map(|r| format!("q={} J={} cands={} best={:?}", r.q, r.j_set, r.candidates, r.best_n()))
        .collect();
    report(
        4,
        "failure primes below 1000",
        fast_ok && full_ok && counted_ok,
        format!(
            "[2,200] -> {:?}; [2,1000] -> {:?}; {} counted optimal of {supported}; unexpected {diag:?}",
            fast.failures, full.failures, full.counted_optimal
        ),
    );
}

#[test]
fn c05_q_19_cubed() {
    let k = field(19, 3);
    let diag = search_family(&k, PairMode::Diagonal, COUNT_BOUND).unwrap();
    let frob = search_family(&k, PairMode::Frobenius, COUNT_BOUND).unwrap();
    let cert = frob.best.as_ref().map(|b| &b.certificate);
    let counted = cert.and_then(|c| c.verified_n);
    report(
        5,
        "q = 19^3 pairs",
        m_q(6859) == 165
            && diag.best_n() == Some(6365)
            && frob.best_n() == Some(7355)
            && counted == Some(7355),
        format!(
            "diagonal best {:?}, Frobenius best {:?} (counted {:?}), |J| = {}",
            diag.best_n(),
            frob.best_n(),
            counted,
            frob.j_set
        ),
    );
}

#[test]
fn c06_record_over_f243() {
    let k = field(3, 5);
    let j2 = k.pow(k.z(), 114);
    let mut c = char3_from_invariants(&k, k.one(), j2).unwrap();
    c.validate(COUNT_BOUND).unwrap();
    let p = c.prediction.unwrap();
    report(
        6,
        "F_243, J1 = 1, J2 = z^114",
        (p.t1, p.t2) == (-31, -28) && c.counted == Some(334) && 243 + 1 + 3 * 31 - 3 == 334,
        format!(
            "modulus {:?}, traces ({}, {}), counted {:?}",
            k.modulus(),
            p.t1,
            p.t2,
            c.counted
        ),
    );
}

#[test]
fn c07_char3_defect() {
    let mut lines = Vec::new();
    let mut ok = true;
    for n in [5u32, 7, 9] {
        let bound = if n == 9 { 0 } else { COUNT_BOUND };
        let r = char3_defect(n, bound).unwrap();
        let d = r.defect.unwrap_or(i64::MAX);
        ok &= d <= 3;
        if n == 9 {
            ok &= r.best_n() == Some(20524);
        }
        lines.push(format!(
            "n={n}: best {:?}, D = {d}, method {:?}",
            r.best_n(),
            r.best.as_ref().map(|b| b.certificate.method)
        ));
    }
    report(7, "D_{3^n}(3) <= 3", ok, lines.join("; "));
}

#[test]
fn c08_supersingular() {
    let k = field(3, 1);
    let c = char3_supersingular(&k, k.one(), k.one()).unwrap();
    let n1 = c.e1.trace().unwrap().n;
    let n2 = c.e2.trace().unwrap().n;
    let k9 = field(3, 2);
    let n = c.quartic.lift(&k9).unwrap().count_points().unwrap();
    report(
        8,
        "supersingular family over F_9",
        n1 == 4 && n2 == 4 && n == 28 && m_q(9) == 6,
        format!("quotients {n1}, {n2} points over F_3; quartic {n} points over F_9"),
    );
}

#[test]
fn c09_cm_and_twins() {
    let mut lines = Vec::new();
    let mut ok = true;
    let catalog = cm_catalog().unwrap();
    let iso: Vec<_> = catalog.iter().filter(|e| e.q_isogenous).collect();
    ok &= iso.len() == 8;
    for e in iso {
        let t = e.t.as_ref().unwrap();
        let mut used = Vec::new();
        for p in primes_in(5, 400) {
            if used.len() == 3 {
                break;
            }
            let k = field(p, 1);
            let Ok(c) = ct_rational(&k, t) else { continue };
            let t1 = c.e1.trace().unwrap().t;
            let n = c.quartic.count_points().unwrap() as i64;
            ok &= n == p as i64 + 1 - 3 * t1;
            used.push(p);
        }
        ok &= used.len() == 3;
        lines.push(format!("disc {} at {:?}", e.disc, used));
    }
    let twins = twin_scan(10_000, COUNT_BOUND).unwrap();
    let ps: Vec<u64> = twins.iter().map(|e| e.p).collect();
    let listed = [151, 263, 331, 491, 907, 1031, 1163, 1451, 1607, 2311, 4363, 5483, 5783];
    ok &= ps == listed;
    ok &= twins.iter().all(|e| e.confirmed == Some(true));
    let p151 = twins.iter().find(|e| e.p == 151).unwrap();
    let ns: BTreeSet<i64> = p151.certificates.iter().filter_map(|c| c.n()).collect();
    ok &= p151.m_p == 24 && ns == BTreeSet::from([80, 224]);
    lines.push(format!("twins {ps:?}; p=151: m = {}, N = {ns:?}", p151.m_p));
    report(9, "CM trace tripling and twin primes", ok, lines.join("; "));
}

#[test]
fn c10_char7_routes() {
    let k = field(7, 3);
    let mut lines = Vec::new();
    let mut ok = true;
    for (a, want) in [(36, 236), (-33, 443)] {
        let mut c = char7_triple_trace(&k, a).unwrap();
        c.validate(COUNT_BOUND).unwrap();
        ok &= c.counted == Some(want);
        lines.push(format!("a={a}: counted {:?}", c.counted));
    }
    let mut paired = Vec::new();
    let mut blocked = Vec::new();
    for a in 1..=37i64 {
        if !s3quartic::construct::Mod12Readings::of(a).classes || a % 7 == 0 {
            continue;
        }
        let out = char7_mod12(&k, a).unwrap();
        match (&out.minus, &out.plus) {
            (Some(m), Some(p)) => {
                let (mut m, mut p) = (m.clone(), p.clone());
                m.validate(COUNT_BOUND).unwrap();
                p.validate(COUNT_BOUND).unwrap();
                let (nm, np) = (m.counted.unwrap() as i64, p.counted.unwrap() as i64);
                ok &= nm + np == 688 && nm == 344 - 3 * a && np == 344 + 3 * a;
                paired.push(a);
            }
            _ => blocked.push((a, out.blocked.clone().unwrap_or_default())),
        }
    }
    ok &= paired.contains(&31);
    ok &= blocked.iter().any(|(a, _)| *a == 37);
    lines.push(format!("twist pairs for a in {paired:?}; blocked {blocked:?}"));
    report(10, "characteristic 7 over F_343", ok, lines.join("; "));
}

#[test]
fn c11_mq_mod3() {
    let (hits, entries) = mq_mod3_scan(400).unwrap();
    let want = [15, 47, 53, 69, 159, 329, 349, 375, 383, 399];
    let min_dist = entries
        .iter()
        .map(|e| e.distance.clone())
        .min()
        .unwrap_or_default();
    report(
        11,
        "m_{3^n} mod 3 scan",
        hits == want,
        format!("{hits:?}; closest approach to the threshold {min_dist}"),
    );
}

/// About 90% success over primes up to 10723 (97 failures). Hours-scale in
/// the original setting; run with `--ignored`.
#[test]
#[ignore]
fn long_run_statistic() {
    let r = scan_primes(2, 10723, 0).unwrap();
    let considered = primes_in(5, 10723).len() - r.excluded.len();
    let rate = 1.0 - r.failures.len() as f64 / considered as f64;
    println!(
        "long run: {} failures over {considered} primes, success rate {:.3}",
        r.failures.len(),
        rate
    );
    assert!((0.90..=0.94).contains(&rate));
}
