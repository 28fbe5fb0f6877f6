use std::path::PathBuf;

use fracspec::reference::TABLE2;
use fracspec_cli::branch::parse_branch_file;
use fracspec_cli::modes::{reference_branches, root_set};
use fracspec_cli::{RunConfig, Settings};

fn data_file() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/table2_branches.txt")
}

#[test]
fn checked_in_branch_file_is_current() {
    let cfg = RunConfig::from_settings(Settings::default()).unwrap();
    let text = reference_branches(&cfg).unwrap().to_text();
    if std::env::var_os("FRACSPEC_BLESS").is_some() {
        std::fs::write(data_file(), &text).unwrap();
    }
    assert_eq!(std::fs::read_to_string(data_file()).unwrap(), text);
}

#[test]
fn branch_file_selects_published_roots() {
    let cfg = RunConfig::from_settings(Settings::default()).unwrap();
    let text = std::fs::read_to_string(data_file()).unwrap();
    let overrides = parse_branch_file(&text, "table2_branches.txt").unwrap();
    for row in &TABLE2 {
        let set = root_set(&cfg, &overrides, row.dim, row.alpha).unwrap();
        assert!(
            (set.k_star() - row.k_star).abs() < 1e-4,
            "N={} alpha={}: {} vs {}",
            row.dim,
            row.alpha,
            set.k_star(),
            row.k_star
        );
    }
}
