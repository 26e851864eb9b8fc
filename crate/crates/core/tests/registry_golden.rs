use std::fs;
use std::path::PathBuf;

use superaudit_core::registry::build_registry;

fn golden(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() || !path.exists() {
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(&path, actual).unwrap();
    }
    assert_eq!(fs::read_to_string(&path).unwrap(), actual, "golden mismatch: {}", path.display());
}

#[test]
fn registry_renderings() {
    golden("registry.txt", &build_registry().render_all());
}

#[test]
fn registry_listing() {
    golden("list.txt", &build_registry().list());
}

#[test]
fn every_rendering_round_trips() {
    for e in build_registry().entries() {
        e.value.round_trip().unwrap_or_else(|err| panic!("{}: {err}", e.id));
    }
}
