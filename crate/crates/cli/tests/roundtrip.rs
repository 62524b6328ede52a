//! Parse and serialize are inverse on random bare fans.

use proptest::prelude::*;
use spherical_cli::document::{parse_document, Document};
use spherical_cli::normalize;

fn frac() -> impl Strategy<Value = (i64, i64)> {
    (-9i64..=9, 1i64..=5)
}

fn text((n, d): (i64, i64)) -> String {
    format!("\"{n}/{d}\"")
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn normalize_is_idempotent(a in (frac(), frac()), b in (frac(), frac()), s in 1i64..=4, t in 1i64..=4) {
        prop_assume!(a.0.0 * b.1.0 * a.1.1 * b.0.1 != a.1.0 * b.0.0 * a.0.1 * b.1.1);
        let rho = |i: usize| {
            let (x, y) = if i == 0 { (a.0, b.0) } else { (a.1, b.1) };
            format!("\"{}/{}\"", s * x.0 * y.1 + t * y.0 * x.1, x.1 * y.1)
        };
        let doc = format!(
            r#"{{"kind": "fan", "dim": 2,
                "colors": [{{"label": "D", "rho": [{}, {}]}}],
                "cones": [{{"rays": [[{}, {}], [{}, {}]], "colors": ["D"]}}],
                "invariant_rays": []}}"#,
            rho(0), rho(1), text(a.0), text(a.1), text(b.0), text(b.1)
        );
        let once = normalize(&doc).unwrap();
        prop_assert_eq!(normalize(&once).unwrap(), once.clone());
        let Document::Fan(f) = parse_document(&once).unwrap() else { panic!("kind changed") };
        prop_assert_eq!(f.dim, 2);
        prop_assert_eq!(f.cones.len(), 1);
        prop_assert_eq!(f.cones[0].1.len(), 1);
    }
}
