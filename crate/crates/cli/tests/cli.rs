use std::fs;
use std::process::Command;

use crossmod::catalog::Catalog;
use crossmod::enumeration::census;
use crossmod::report::ReportTable;
use crossmod::xmod::xmod_to_json;
use crossmod_cli::{run, EXIT_FALSE, EXIT_TRUE, EXIT_USAGE};

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("crossmod").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_crossmod"));
    for var in [
        "CROSSMOD_WORKERS",
        "CROSSMOD_CACHE_DIR",
        "CROSSMOD_SLOW",
        "CROSSMOD_FORMAT",
        "CROSSMOD_PAPER_ROW",
        "CROSSMOD_CATALOG",
        "CROSSMOD_DERIVATION_CAP",
    ] {
        c.env_remove(var);
    }
    c
}

#[test]
fn group_isoclinism_exit_codes() {
    assert_eq!(call(&["groups", "isoclinic", "8:4", "8:3"]), (EXIT_TRUE, "true\n".into(), String::new()));
    let (code, out, _) = call(&["groups", "isoclinic", "8:1", "8:3"]);
    assert_eq!((code, out.as_str()), (EXIT_FALSE, "false\n"));
    let (code, _, err) = call(&["groups", "isoclinic", "8:9", "8:3"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.starts_with("error:"));
    assert_eq!(call(&["groups", "isoclinic", "8-4", "8:3"]).0, EXIT_USAGE);
    assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(call(&["report", "table9"]).0, EXIT_USAGE);
    assert_eq!(call(&["--help"]).0, EXIT_TRUE);
}

#[test]
fn census_counts() {
    assert_eq!(call(&["xmods", "census", "4", "4"]).1, "(60,18,2)\n");
    let (code, out, _) = call(&["--format", "csv", "xmods", "census", "4", "4"]);
    assert_eq!(code, EXIT_TRUE);
    assert_eq!(out, "Raw,Classes,Families\r\n60,18,2\r\n");
}

#[test]
fn table2_rows() {
    let (code, out, _) = call(&["--format", "csv", "report", "table2"]);
    assert_eq!(code, EXIT_TRUE);
    let t = ReportTable::from_csv(&out).unwrap();
    let total: usize = t.column("Num.").unwrap().iter().map(|s| s.parse::<usize>().unwrap()).sum();
    assert_eq!(total, 294);
    // the reference table lists 20 families
    assert_eq!(t.rows.len(), 20, "computed {} families", t.rows.len());
}

#[test]
fn json_and_paper_row() {
    let (code, out, _) = call(&["--format", "json", "--paper-row", "groups", "families", "8"]);
    assert_eq!(code, EXIT_TRUE);
    let t = ReportTable::from_json(&out).unwrap();
    assert_eq!(t.headers.last().unwrap(), "Ref.");
    assert_eq!(t.rows.len(), 2);
    assert!(t.column("Ref.").unwrap().iter().all(|c| *c != "-"));
    assert!(out.trim_start().starts_with('{') && out.contains("\"meta\"") && out.contains("\"rows\""));
}

#[test]
fn xmod_files() {
    let tmp = tempfile::tempdir().unwrap();
    let r = census(4, 4).unwrap();
    let fam = &r.families[1];
    let write = |name: &str, i: usize| {
        let p = tmp.path().join(name);
        fs::write(&p, xmod_to_json(&r.representatives[i])).unwrap();
        p.display().to_string()
    };
    let (a, b, c) = (write("a.json", fam[0]), write("b.json", fam[1]), write("c.json", r.families[0][0]));
    assert_eq!(call(&["xmods", "isoclinic", &a, &b]).0, EXIT_TRUE);
    assert_eq!(call(&["xmods", "isoclinic", &a, &c]).0, EXIT_FALSE);
    assert_eq!(call(&["--slow", "xmods", "isoclinic", &a, &b]).0, EXIT_TRUE);

    let (code, out, _) = call(&["--format", "csv", "xmods", "invariants", &a]);
    assert_eq!(code, EXIT_TRUE);
    let t = ReportTable::from_csv(&out).unwrap();
    let get = |k: &str| t.rows.iter().find(|r| r[0] == k).unwrap()[1].clone();
    assert_eq!(get("Order"), "[4,4]");
    assert_eq!(get("Rank"), "[2,1]");
    assert!(get("Regular derivations").contains(" of "));
    let (code, out, _) = call(&["--derivation-cap", "2", "--format", "csv", "xmods", "invariants", &a]);
    assert_eq!(code, EXIT_TRUE);
    assert!(out.contains("skipped"));

    let bad = tmp.path().join("bad.json");
    fs::write(&bad, "{not json").unwrap();
    assert_eq!(call(&["xmods", "invariants", bad.to_str().unwrap()]).0, EXIT_USAGE);
    assert_eq!(call(&["xmods", "invariants", "/nonexistent/x.json"]).0, EXIT_USAGE);
}

#[test]
fn catalog_import_and_list() {
    let tmp = tempfile::tempdir().unwrap();
    let file = tmp.path().join("cat.txt");
    fs::write(&file, "catalog-format 1\n4 1 C4 (0,1,2,3)\n4 2 V4 (0,1) (2,3)\n").unwrap();
    let f = file.to_str().unwrap();
    let (code, out, _) = call(&["catalog", "import", f]);
    assert_eq!(code, EXIT_TRUE);
    let parsed = Catalog::parse(&out).unwrap();
    assert_eq!(parsed.entries().len(), 2);

    let cache = tmp.path().join("cache");
    let (code, out, _) = call(&["--cache-dir", cache.to_str().unwrap(), "catalog", "import", f]);
    assert_eq!(code, EXIT_TRUE);
    assert!(out.contains("imported 2 groups"));
    let stored = cache.join(format!("catalog-{}.txt", parsed.version()));
    assert_eq!(Catalog::from_file(&stored).unwrap().format(), parsed.format());

    let (code, out, _) = call(&["--catalog", f, "--format", "csv", "catalog", "list"]);
    assert_eq!(code, EXIT_TRUE);
    assert_eq!(ReportTable::from_csv(&out).unwrap().rows.len(), 2);
    assert_eq!(call(&["--catalog", f, "groups", "isoclinic", "4:1", "4:2"]).0, EXIT_TRUE);

    fs::write(&file, "catalog-format 1\n4 1 C4 (0,1,2)\n").unwrap();
    assert_eq!(call(&["catalog", "import", f]).0, EXIT_USAGE);
}

#[test]
fn binary_exit_codes() {
    let st = |args: &[&str]| bin().args(args).output().unwrap();
    let o = st(&["groups", "isoclinic", "8:4", "8:3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&o.stdout), "true\n");
    assert_eq!(st(&["groups", "isoclinic", "8:1", "8:3"]).status.code(), Some(1));
    assert_eq!(st(&["xmods"]).status.code(), Some(2));
    assert_eq!(st(&["xmods", "census", "x", "4"]).status.code(), Some(2));
}

#[test]
fn environment_fallback_and_flag_precedence() {
    let tmp = tempfile::tempdir().unwrap();
    let o = bin().env("CROSSMOD_FORMAT", "csv").args(["xmods", "census", "4", "4"]).output().unwrap();
    assert_eq!(String::from_utf8_lossy(&o.stdout), "Raw,Classes,Families\r\n60,18,2\r\n");
    let o = bin().env("CROSSMOD_FORMAT", "csv").args(["--format", "text", "xmods", "census", "4", "4"]).output().unwrap();
    assert_eq!(String::from_utf8_lossy(&o.stdout), "(60,18,2)\n");

    let o = bin()
        .env("CROSSMOD_CACHE_DIR", tmp.path())
        .env("CROSSMOD_WORKERS", "2")
        .env("CROSSMOD_SLOW", "1")
        .args(["xmods", "census", "4", "4"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(tmp.path().join("census-4-4").join("meta").exists());

    let other = tmp.path().join("other");
    let o = bin()
        .env("CROSSMOD_CACHE_DIR", tmp.path())
        .args(["--cache-dir", other.to_str().unwrap(), "xmods", "census", "2", "2"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(other.join("census-2-2").exists());
    assert!(!tmp.path().join("census-2-2").exists());

    let o = bin().env("CROSSMOD_FORMAT", "yaml").args(["xmods", "census", "1", "1"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = bin().env("CROSSMOD_WORKERS", "many").args(["xmods", "census", "1", "1"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}
