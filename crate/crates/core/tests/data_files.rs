use std::path::PathBuf;

use ctxkit::graph::{builtin_graph, parse_graph};
use ctxkit::pauli::{builtin_avn, parse_avn};
use ctxkit::rays::{builtin_rayset, parse_rayset, serialize_rayset};

fn data(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "data", name].iter().collect();
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn ray_files_match_builtins() {
    for name in ["cabello18", "yu_oh13", "kcbs5"] {
        let parsed = parse_rayset(name, &data(&format!("{name}.rays"))).unwrap();
        let builtin = builtin_rayset(name).unwrap();
        assert_eq!(parsed, builtin, "{name}");
        let labels: Vec<&str> = parsed.rays().iter().map(|r| r.label()).collect();
        let builtin_labels: Vec<&str> = builtin.rays().iter().map(|r| r.label()).collect();
        assert_eq!(labels, builtin_labels);
        assert!(parsed.is_exact());
        assert_eq!(parse_rayset(name, &serialize_rayset(&parsed)).unwrap(), parsed);
    }
}

#[test]
fn graph_files_match_builtins() {
    for name in ["c5", "k4", "icosa", "icosa16"] {
        let parsed = parse_graph(&data(&format!("{name}.graph"))).unwrap();
        assert_eq!(parsed, builtin_graph(name).unwrap(), "{name}");
    }
}

#[test]
fn avn_files_match_builtins() {
    for (file, name) in [
        ("avn_cabello01.txt", "cabello01"),
        ("phip_huang03.txt", "phip_huang03"),
        ("peres_mermin.txt", "peres_mermin"),
        ("bell_control.txt", "bell_control"),
    ] {
        assert_eq!(parse_avn(&data(file)).unwrap(), builtin_avn(name).unwrap(), "{name}");
    }
}
