use std::path::PathBuf;

use spherical_core::criteria::{load_corpus_dir, run_corpus, verify_mfs_case, CorpusStatus};

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/mfs")
}

#[test]
fn shipped_corpus_passes() {
    let cases = load_corpus_dir(&corpus_dir()).unwrap();
    assert!(cases.len() >= 40);
    let report = run_corpus(cases, None, 4).unwrap();
    assert_eq!(report.status(), CorpusStatus::Pass, "\n{report}");
}

#[test]
fn mandatory_items_present() {
    let cases = load_corpus_dir(&corpus_dir()).unwrap();
    let ids: std::collections::BTreeSet<u32> = cases.iter().filter_map(|(_, c)| c.as_ref().ok().map(|c| c.id)).collect();
    for id in [1, 2, 5, 8, 21] {
        assert!(ids.contains(&id), "item {id}");
    }
}

#[test]
fn lowering_one_multiplicity_breaks_each_case_with_spherical_roots() {
    for (name, c) in load_corpus_dir(&corpus_dir()).unwrap() {
        let mut c = c.unwrap();
        if c.lambda_coords.is_empty() {
            continue;
        }
        let theta = c.theta();
        // the coordinate where theta is tightest against -m
        let j = (0..c.rank).min_by_key(|&j| theta[j].clone() + num_rational::BigRational::from_integer(c.m[j].into())).unwrap();
        c.m[j] -= 1;
        let r = verify_mfs_case(&c).unwrap();
        assert!(!r.passed(), "{name}");
    }
}

#[test]
fn run_order_is_deterministic() {
    let a = run_corpus(load_corpus_dir(&corpus_dir()).unwrap(), None, 1).unwrap().to_string();
    let b = run_corpus(load_corpus_dir(&corpus_dir()).unwrap(), None, 8).unwrap().to_string();
    assert_eq!(a, b);
}
