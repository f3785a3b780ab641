use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use homomesy_core::rational::{parse, ratio};
use homomesy_core::ReportDocument;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homomesy")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).expect("valid JSON")
}

fn cycle4() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/cycle4.sandpile").display().to_string()
}

#[test]
fn promotion_on_ideals_is_homomesic() {
    let doc = json(&["check", "grid-promotion-ideals", "--a", "3", "--b", "2", "--stat", "ideal-size"]);
    assert_eq!(doc["homomesic"], true);
    assert_eq!(doc["c"], serde_json::json!(["3"]));
    let out = run(&["check", "grid-promotion-ideals", "--a", "3", "--b", "2", "--expect-c", "3"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("homomesic, c = 3"));
}

#[test]
fn promotion_on_antichains_is_not_homomesic() {
    let args = ["check", "grid-promotion-antichains", "--a", "3", "--b", "2", "--stat", "antichain-size"];
    let doc = json(&args);
    assert_eq!(doc["homomesic"], false);
    assert_eq!(doc["c"], Value::Null);
    let averages: BTreeSet<String> = doc["orbits"].as_array().unwrap().iter().map(|o| o["average"][0].as_str().unwrap().to_string()).collect();
    assert_eq!(averages, BTreeSet::from(["4/5".to_string(), "8/5".to_string()]));
    let mut expecting = args.to_vec();
    expecting.extend(["--expect-c", "6/5"]);
    assert_eq!(code(&run(&expecting)), 4);
}

#[test]
fn rowmotion_on_antichains_of_a_square() {
    let out = run(&["check", "grid-rowmotion-antichains", "--a", "2", "--b", "2", "--stat", "antichain-size", "--expect-c", "1"]);
    assert_eq!(code(&out), 0);
    let out = run(&["check", "grid-rowmotion-antichains", "--a", "2", "--b", "2", "--expect-c", "2/3"]);
    assert_eq!(code(&out), 4);
}

#[test]
fn json_report_round_trips() {
    let cases: [&[&str]; 4] = [
        &["check", "grid-rowmotion-ideals", "--a", "3", "--b", "3"],
        &["check", "grid-promotion-antichains", "--a", "3", "--b", "2"],
        &["check", "sandpile", "--graph", &cycle4()],
        &["check", "suter", "--n", "6", "--stat", "weight:2,4"],
    ];
    for args in cases {
        let doc: ReportDocument = serde_json::from_value(json(args)).expect("report document");
        let (homomesic, c) = doc.recompute_verdict().unwrap();
        assert_eq!(homomesic, doc.homomesic, "{args:?}");
        assert_eq!(c, doc.parsed_c().unwrap(), "{args:?}");
        let again = serde_json::to_value(&doc).unwrap();
        assert_eq!(again, json(args));
    }
}

#[test]
fn rowmotion_orbit_from_a_seed() {
    let doc = json(&["orbits", "grid-rowmotion-ideals", "--a", "4", "--b", "2", "--seed", "{(2,1)}"]);
    let orbit = &doc["orbits"][0];
    assert_eq!(orbit["period"], 6);
    let words: Vec<&str> = orbit["words"].as_array().unwrap().iter().map(|w| w.as_str().unwrap()).collect();
    assert_eq!(words, ["--+--+", "-+--+-", "+--+--", "-++---", "+----+", "---++-"]);
    assert_eq!(orbit["states"][0], "[[1,1],[2,1]]");
}

#[test]
fn suter_and_sandpile_orbit_sizes() {
    let doc = json(&["orbits", "suter", "--n", "5"]);
    let mut sizes: Vec<u64> = doc["orbits"].as_array().unwrap().iter().map(|o| o["period"].as_u64().unwrap()).collect();
    sizes.sort();
    assert_eq!(sizes, [1, 5, 5, 5]);
    let doc = json(&["orbits", "sandpile", "--graph", &cycle4()]);
    let sizes: Vec<u64> = doc["orbits"].as_array().unwrap().iter().map(|o| o["period"].as_u64().unwrap()).collect();
    assert_eq!(sizes, [2, 2]);
    let out = run(&["check", "sandpile", "--graph", &cycle4(), "--expect-c", "1/2,1,1/2"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn subspace_reports_named_generators() {
    let doc = json(&["subspace", "grid-rowmotion-ideals", "--a", "3", "--b", "2"]);
    let gens = doc["generators"].as_array().unwrap();
    let files: Vec<&Value> = gens.iter().filter(|g| g["family"] == "file-sum").collect();
    assert_eq!(files.len(), 4);
    assert!(gens.iter().all(|g| g["present"] == true));
    let doc = json(&["subspace", "grid-rowmotion-antichains", "--a", "3", "--b", "2"]);
    let gens = doc["generators"].as_array().unwrap();
    assert!(gens.iter().any(|g| g["family"] == "fiber-sum"));
    assert!(gens.iter().any(|g| g["family"] == "opposite-difference"));
    assert!(gens.iter().all(|g| g["present"] == true));
}

#[test]
fn subspace_dimensions_match_the_pinned_table() {
    let pinned = [[1, 2, 3, 4], [2, 3, 5, 6], [3, 5, 7, 9], [4, 6, 9, 11]];
    for system in ["grid-rowmotion-ideals", "grid-rowmotion-antichains"] {
        for a in 1..=4 {
            for b in 1..=4 {
                let doc = json(&["subspace", system, "--a", &a.to_string(), "--b", &b.to_string()]);
                assert_eq!(doc["dimension"], pinned[a - 1][b - 1], "{system} {a}x{b}");
                assert_eq!(doc["basis"].as_array().unwrap().len(), pinned[a - 1][b - 1]);
            }
        }
    }
}

#[test]
fn csv_output_parses() {
    let out = run(&["check", "ballot", "--a", "2", "--b", "4", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let headers = reader.headers().unwrap().clone();
    assert_eq!(headers.iter().collect::<Vec<_>>(), ["orbit", "representative", "period", "average", "homomesic", "c"]);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    let total: usize = rows.iter().map(|r| r[2].parse::<usize>().unwrap()).sum();
    assert_eq!(total, 15);
    assert!(rows.iter().all(|r| parse(&r[5]).unwrap() == ratio(1, 3)));

    let out = run(&["orbits", "sandpile", "--graph", &cycle4(), "--format", "csv"]);
    let reader = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(reader.into_records().count(), 4);
}

#[test]
fn word_and_permutation_systems() {
    let doc = json(&["check", "cyclic-inversions", "--a", "3", "--b", "4"]);
    assert_eq!(doc["c"], serde_json::json!(["6"]));
    let doc = json(&["check", "ballot", "--a", "3", "--b", "4", "--stat", "minus-positions"]);
    assert_eq!(doc["c"], serde_json::json!(["6"]));
    let doc = json(&["check", "reversal-inversions", "--n", "5"]);
    assert_eq!(doc["c"], serde_json::json!(["5"]));
    let doc = json(&["orbits", "cyclic-inversions", "--a", "2", "--b", "2", "--seed", "0011"]);
    assert_eq!(doc["orbits"][0]["states"], serde_json::json!(["--++", "-++-", "++--", "+--+"]));
}

#[test]
fn lyness_and_ssyt() {
    let doc = json(&["check", "lyness", "--seed", "1,3;-5/2,7"]);
    assert_eq!(doc["c"], serde_json::json!(["0"]));
    assert_eq!(doc["orbits"].as_array().unwrap().len(), 2);
    let doc = json(&["orbits", "lyness", "--seed", "1,3"]);
    let xs: BTreeSet<&str> = doc["orbits"][0]["words"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(xs, BTreeSet::from(["1", "3", "4", "5/3", "2/3"]));
    assert_eq!(code(&run(&["check", "lyness", "--seed", "-1,3"])), 2);

    let out = run(&["check", "ssyt", "--m", "2", "--n", "3", "--k", "5", "--cells", "1,1;2,3", "--expect-c", "6"]);
    assert_eq!(code(&out), 0);
    let doc = json(&["orbits", "ssyt", "--m", "2", "--n", "3", "--k", "5", "--seed", "1,1,2/2,3,4"]);
    let states = &doc["orbits"][0]["states"];
    assert_eq!(states, &serde_json::json!(["(1,1,2/2,3,4)", "(1,1,3/2,5,5)", "(1,2,4/4,5,5)", "(1,3,4/3,4,5)", "(2,2,3/3,4,5)"]));
}

#[test]
fn exit_codes() {
    // usage
    assert_eq!(code(&run(&["check", "grid-rowmotion-ideals", "--a", "2"])), 2);
    assert_eq!(code(&run(&["check", "grid-rowmotion-ideals", "--a", "2", "--b", "2", "--stat", "nope"])), 2);
    assert_eq!(code(&run(&["check", "grid-rowmotion-ideals", "--a", "2", "--b", "2", "--n", "3"])), 2);
    assert_eq!(code(&run(&["check", "suter", "--n", "4", "--expect-c", "1.5"])), 2);
    assert_eq!(code(&run(&["orbits", "grid-rowmotion-ideals", "--a", "2", "--b", "2", "--expect-c", "2"])), 2);
    assert_eq!(code(&run(&["subspace", "suter", "--n", "4"])), 2);
    assert_eq!(code(&run(&["check", "no-such-system"])), 2);
    assert_eq!(code(&run(&["check", "sandpile", "--graph", "/nonexistent/graph"])), 2);
    // guard
    assert_eq!(code(&run(&["check", "grid-rowmotion-ideals", "--a", "9", "--b", "9", "--guard", "1000"])), 3);
    assert_eq!(code(&run(&["check", "ssyt", "--m", "3", "--n", "3", "--k", "9", "--guard", "10"])), 3);
    // expectation
    assert_eq!(code(&run(&["check", "suter", "--n", "4", "--expect-c", "5"])), 0);
    assert_eq!(code(&run(&["check", "suter", "--n", "4", "--expect-c", "4"])), 4);
}

#[test]
fn sandpile_graph_files() {
    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "sink 1\nsource 2\n2 1 1\n3 3 1").unwrap();
    let out = run(&["check", "sandpile", "--graph", bad.path().to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("no path to the sink"));

    let mut single = tempfile::NamedTempFile::new().unwrap();
    writeln!(single, "sink t\nsource v\nv t 1").unwrap();
    let out = run(&["check", "sandpile", "--graph", single.path().to_str().unwrap(), "--expect-c", "1"]);
    assert_eq!(code(&out), 0);
}
