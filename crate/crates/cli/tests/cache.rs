use std::fs;

use segre_acm::{run_with_cache, Cache};

fn argv(args: &[&str]) -> Vec<String> {
    std::iter::once("segre-acm")
        .chain(args.iter().copied())
        .map(String::from)
        .collect()
}

#[test]
fn hits_return_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let args = argv(&["--json", "uk", "12"]);
    let first = run_with_cache(&args, Some(dir.path()));
    assert_eq!(first.code, 0);
    let key = Cache::key(&args[1..]);
    let stored = fs::read_to_string(dir.path().join(format!("{key}.out"))).unwrap();
    assert_eq!(stored, first.stdout);
    let second = run_with_cache(&args, Some(dir.path()));
    assert_eq!(first, second);
    assert_eq!(first, run_with_cache(&args, None));
}

#[test]
fn entries_are_served_from_disk() {
    let dir = tempfile::tempdir().unwrap();
    let args = argv(&["uk", "2"]);
    let key = Cache::key(&args[1..]);
    fs::write(dir.path().join(format!("{key}.out")), "planted\n").unwrap();
    assert_eq!(run_with_cache(&args, Some(dir.path())).stdout, "planted\n");
}

#[test]
fn failures_are_not_cached() {
    let dir = tempfile::tempdir().unwrap();
    for args in [argv(&["coh", "O("]), argv(&["uk", "999999999"])] {
        let out = run_with_cache(&args, Some(dir.path()));
        assert_ne!(out.code, 0);
    }
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn deleting_the_cache_is_safe() {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path().join("nested");
    let args = argv(&["hilb", "O(0)"]);
    let first = run_with_cache(&args, Some(&root));
    fs::remove_dir_all(&root).unwrap();
    assert_eq!(run_with_cache(&args, Some(&root)), first);
}

#[test]
fn keys_separate_arguments() {
    assert_ne!(
        Cache::key(&["ab".into(), "c".into()]),
        Cache::key(&["a".into(), "bc".into()])
    );
    assert_eq!(Cache::key(&["uk".into()]).len(), 64);
}
