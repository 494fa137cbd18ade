use proptest::prelude::*;

use s3quartic::construct::{build_validated, ct, from_j1_v, j2_of, solve_v, Registry, RouteArgs};
use s3quartic::gf::{Field, FieldDesc};
use s3quartic::s3q::S3Quartic;
use s3quartic::search::{verify, Certificate, Method};
use s3quartic::{Error, ErrorKind};

const BOUND: u128 = 1 << 30;

fn f(p: u64, n: u32) -> Field {
    FieldDesc::new(p, n).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn count_equals_trace_relation(p in prop::sample::select(vec![7u64, 11, 13, 17]), a1 in 0u64..17, a2 in 0u64..17) {
        let k = f(p, 1);
        let c = S3Quartic::general(&k, k.from_u64(a1), k.from_u64(a2));
        prop_assume!(c.is_ok());
        let c = c.unwrap();
        let pred = c.trace_relation_n();
        prop_assume!(pred.is_ok());
        prop_assert_eq!(c.count_points().unwrap() as i64, pred.unwrap().n);
    }

    #[test]
    fn member_from_j1_v_has_requested_invariants(j1 in 2u64..13, v in 1u64..13) {
        let k = f(13, 1);
        let (j1, v) = (k.from_u64(j1), k.from_u64(v));
        if let Ok(c) = from_j1_v(&k, j1, v) {
            let inv = c.quartic.invariants().unwrap();
            prop_assert_eq!(inv.j1, j1);
            prop_assert_eq!(Some(inv.j2), j2_of(&k, j1, v).ok());
            prop_assert_eq!(inv.e1.j_invariant(), j1);
            prop_assert_eq!(inv.e2.j_invariant(), inv.j2);
        }
    }

    #[test]
    fn solvent_roots_reach_the_pair(j1 in 2u64..19, j2 in 2u64..19) {
        let k = f(19, 1);
        let (j1, j2) = (k.from_u64(j1), k.from_u64(j2));
        prop_assume!(j1 != k.from_i64(1728) && j2 != k.from_i64(1728));
        if let Ok(vs) = solve_v(&k, j1, j2) {
            for v in vs {
                if let Ok(c) = from_j1_v(&k, j1, v) {
                    prop_assert_eq!(c.j2, Some(j2));
                }
            }
        }
    }

    #[test]
    fn ct_members_have_equal_invariants(t in 0u64..23) {
        let k = f(23, 1);
        if let Ok(c) = ct(&k, k.from_u64(t)) {
            prop_assert_eq!(c.j1, c.j2);
            // M3 is undefined where E2 has invariant 0, i.e. t(t^3 - 1) = 0.
            prop_assert!(c.m3.is_none_or(|m| m == k.one()));
        }
    }
}

fn sample_certificate() -> Certificate {
    let k = f(13, 1);
    let mut c = build_validated(
        &Registry::default(),
        "ct",
        &k,
        &RouteArgs {
            t: Some("2".into()),
            ..Default::default()
        },
        BOUND,
    )
    .unwrap()
    .remove(0);
    c.validate(BOUND).unwrap();
    Certificate::from_params(&c).unwrap()
}

#[test]
fn certificate_json_round_trip() {
    let cert = sample_certificate();
    let text = serde_json::to_string(&cert).unwrap();
    let back: Certificate = serde_json::from_str(&text).unwrap();
    assert_eq!(back, cert);
    assert!(text.contains("\"method\":\"BOTH\""));
}

#[test]
fn verify_is_idempotent() {
    let cert = sample_certificate();
    let once = verify(&cert, BOUND).unwrap();
    assert_eq!(verify(&once, BOUND).unwrap(), once);
    assert_eq!(once.method, Method::Both);
}

#[test]
fn trace_only_certificate_upgrades() {
    let mut cert = sample_certificate();
    cert.verified_n = None;
    cert.method = Method::Trace;
    let checked = verify(&cert, BOUND).unwrap();
    assert_eq!(checked.method, Method::Both);
    assert_eq!(checked.verified_n.map(|n| n as i64), cert.predicted_n);
}

#[test]
fn tampered_certificate_is_rejected() {
    let mut cert = sample_certificate();
    cert.predicted_n = cert.predicted_n.map(|n| n + 3);
    let err = verify(&cert, BOUND).unwrap_err();
    assert!(matches!(err, Error::Mismatch { .. }));
    assert_eq!(err.kind(), ErrorKind::Mismatch);
}

#[test]
fn registry_resolves_every_name() {
    let r = Registry::default();
    let names = r.names();
    assert_eq!(names.len(), 8);
    for n in &names {
        assert_eq!(r.get(n).unwrap().name(), *n);
        assert_eq!(r.get(&n.to_uppercase()).unwrap().name(), *n);
    }
    assert!(r.get("missing").is_none());
}

#[test]
fn excluded_invariant_is_a_precondition() {
    let k = f(13, 1);
    let err = from_j1_v(&k, k.zero(), k.from_u64(2)).unwrap_err();
    assert_eq!(err.kind(), ErrorKind::Precondition);
    assert_eq!(err.reason(), "excluded invariant");
}
