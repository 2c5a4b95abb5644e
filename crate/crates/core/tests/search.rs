use std::fs;
use std::time::Duration;

use trispec::extremal::canon::{canonical_key, key_to_family};
use trispec::extremal::search::{enumerate_connected_families, phi_table, search_connected, SearchConfig};
use trispec::random::{random_relabel, rng};

#[test]
fn enumerated_classes_are_canonical_and_distinct() {
    let classes = enumerate_connected_families(4, 9).unwrap();
    let mut keys: Vec<_> = classes.iter().map(|f| canonical_key(f).unwrap()).collect();
    for (f, k) in classes.iter().zip(&keys) {
        assert!(f.is_connected());
        assert_eq!(f.len(), 4);
        assert_eq!(&key_to_family(k), f);
    }
    keys.sort();
    keys.dedup();
    assert_eq!(keys.len(), classes.len());
}

#[test]
fn relabeled_classes_map_back() {
    let mut r = rng(11);
    for f in enumerate_connected_families(3, 7).unwrap() {
        let g = random_relabel(&mut r, &f);
        assert_eq!(canonical_key(&g).unwrap(), canonical_key(&f).unwrap());
    }
}

#[test]
fn pruning_does_not_change_phi() {
    let pruned = phi_table(5, &SearchConfig::default()).unwrap();
    let full = phi_table(5, &SearchConfig { prune: false, ..Default::default() }).unwrap();
    for (a, b) in pruned.entries.values().zip(full.entries.values()) {
        assert_eq!(a.phi, b.phi, "t = {}", a.t);
        assert!(a.exhaustive && b.exhaustive);
    }
    let t4 = pruned.get(4).unwrap();
    assert!(t4.pruned > 0);
    assert!(full.get(4).unwrap().classes > t4.classes);
}

#[test]
fn checkpoint_resumes_to_the_same_answer() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("phi4.ckpt");
    let cfg = SearchConfig { checkpoint: Some(path.clone()), ..Default::default() };
    let first = search_connected(4, &cfg, None).unwrap();
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# trispec phi checkpoint t=4 max_vertices=9 prune=true\n"));
    assert!(text.lines().any(|l| l.starts_with("# best 4")));
    // The root prefix closes last.
    assert_eq!(text.lines().last().unwrap(), "0-1-2");

    let resumed = search_connected(4, &cfg, None).unwrap();
    assert_eq!(resumed.best_lambda, first.best_lambda);
    assert_eq!(resumed.best_key, first.best_key);
    assert_eq!(resumed.classes, 0);

    // A run killed part way leaves a prefix of the file; resuming finishes it.
    let cut = text.lines().position(|l| !l.starts_with('#')).unwrap() + 1;
    let partial: Vec<&str> = text.lines().take(cut).collect();
    fs::write(&path, partial.join("\n") + "\n").unwrap();
    let redone = search_connected(4, &cfg, None).unwrap();
    assert_eq!(redone.best_lambda, first.best_lambda);
    assert!(redone.exhaustive);
}

#[test]
fn checkpoint_for_other_parameters_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ckpt");
    fs::write(&path, "# trispec phi checkpoint t=3 max_vertices=7 prune=true\n").unwrap();
    let cfg = SearchConfig { checkpoint: Some(path), ..Default::default() };
    assert!(search_connected(4, &cfg, None).is_err());
}

#[test]
fn zero_budget_is_not_exhaustive() {
    let cfg = SearchConfig { budget: Some(Duration::ZERO), ..Default::default() };
    let out = search_connected(5, &cfg, None).unwrap();
    assert!(out.timed_out);
    assert!(!out.exhaustive);
}

#[test]
fn small_vertex_cap_is_exhaustive_only_when_counting_allows() {
    // Seven vertices cannot host a 4-triangle family with lambda above 3,
    // and K4 reaches 4 on four vertices.
    let cfg = SearchConfig { max_vertices: Some(6), ..Default::default() };
    let out = search_connected(4, &cfg, None).unwrap();
    assert_eq!(out.best_lambda, Some(4.0));
    assert!(out.exhaustive);
    let cfg = SearchConfig { max_vertices: Some(4), ..Default::default() };
    let out = search_connected(2, &cfg, None).unwrap();
    assert!(!out.exhaustive);
}
