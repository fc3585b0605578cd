use std::process::{Command, Output};

fn sumlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sumlab"))
        .args(args)
        .env_remove("SUMLAB_FORMAT")
        .env_remove("SUMLAB_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<serde_json::Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn restricted_tau_of_z3_squared() {
    let o = sumlab(&["quantity", "--family", "tau", "--variant", "restricted", "--group", "Z3^2", "--terms", "exact:3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = json_lines(&o);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["value"], 4);
    assert_eq!(rows[0]["group"], "Z3xZ3");
}

#[test]
fn quantity_reports_citations_and_witness() {
    let o = sumlab(&["quantity", "--family", "rho", "--group", "Z11", "--m", "4", "--terms", "exact:2", "--witnesses"]);
    assert_eq!(o.status.code(), Some(0));
    let row = &json_lines(&o)[0];
    assert_eq!(row["value"], 7);
    assert_eq!(row["known"], 7);
    assert!(row["citations"].as_str().unwrap().contains("cor:rho-vs-p"));
    assert!(row["witness"].as_str().unwrap().starts_with('{'));
}

#[test]
fn quantity_sweeps_cyclic_groups_as_csv() {
    let o = sumlab(&["quantity", "--family", "chi", "--n", "5..7", "--terms", "exact:3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("group,family,variant,terms,m,value"));
    assert!(lines[1].starts_with("Z5,chi,plain,exact:3,,"));
}

#[test]
fn sumset_table_rows() {
    for (variant, want) in [("plain", "{4,5,6}"), ("signed", "{1,4,5,6,7,8,9,12}"), ("restricted-signed", "{1,5,8,12}")] {
        let o = sumlab(&["sumset", "--group", "Z13", "--set", "2,3", "--variant", variant]);
        assert_eq!(json_lines(&o)[0]["sumset"], want, "{variant}");
    }
    let o = sumlab(&["sumset", "--group", "Z2xZ2", "--set", "(0,1),(1,0)", "--terms", "upto:2"]);
    assert_eq!(json_lines(&o)[0]["size"], 4);
}

#[test]
fn side_functions() {
    let o = sumlab(&["side", "u", "--n", "15", "--m", "6,7", "--h", "2"]);
    let vals: Vec<u64> = json_lines(&o).iter().map(|r| r["value"].as_u64().unwrap()).collect();
    assert_eq!(vals, vec![9, 13]);
    let o = sumlab(&["side", "v", "--n", "15", "--h", "3", "--g", "1"]);
    assert_eq!(json_lines(&o)[0]["value"], 6);
    let o = sumlab(&["side", "u", "--n", "15", "--h", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn phi_table_reproduces_fixture() {
    let o = sumlab(&["table", "--name", "phi-cyclic-upto2", "--n", "1..35", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let fixture = include_str!("../../sumlab/fixtures/phi-cyclic-upto2.csv");
    assert_eq!(stdout(&o), fixture);
}

#[test]
fn nu_exception_row_shape() {
    let o = sumlab(&["table", "--name", "nu-exceptions", "--n", "20"]);
    let first = stdout(&o).lines().next().unwrap().to_string();
    assert_eq!(first, r#"{"n":20,"m":5,"h":2,"bound":15,"value":14}"#);
}

#[test]
fn empty_table_still_has_header() {
    let o = sumlab(&["table", "--name", "rhohat-exceptions", "--n", "1..9", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("n,m,h,bound,value\n"));
}

#[test]
fn table_list_names_every_fixture() {
    let o = sumlab(&["table", "--list"]);
    let names: Vec<String> = json_lines(&o).iter().map(|r| r["name"].as_str().unwrap().to_string()).collect();
    assert!(names.contains(&"v-table".to_string()));
    assert!(names.contains(&"hallfors".to_string()));
}

#[test]
fn fixtures_all_pass_and_are_deterministic() {
    let a = sumlab(&["fixtures", "--all"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert!(json_lines(&a).iter().all(|r| r["status"] == "ok"));
    let b = sumlab(&["fixtures", "--all"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn fixture_write_regenerates_bytes() {
    let dir = std::env::temp_dir().join(format!("sumlab-fixtures-{}", std::process::id()));
    let o = sumlab(&["fixtures", "--name", "v-table", "--name", "uhat-15", "--write", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    for name in ["v-table", "uhat-15"] {
        let got = std::fs::read_to_string(dir.join(format!("{name}.csv"))).unwrap();
        let want = std::fs::read_to_string(format!("{}/../sumlab/fixtures/{name}.csv", env!("CARGO_MANIFEST_DIR"))).unwrap();
        assert_eq!(got, want, "{name}");
    }
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn verify_streams_points() {
    let o = sumlab(&["verify", "--theorem", "thm:rho=u", "--max-n", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = json_lines(&o);
    assert!(rows.len() > 100);
    assert!(rows.iter().all(|r| r["status"] == "confirmed" && r["id"] == "thm:rho=u"));
}

#[test]
fn conjecture_run() {
    let o = sumlab(&["conjecture", "--id", "conj:zconj", "--n", "1..30", "--h", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = json_lines(&o);
    assert_eq!(rows.len(), 30);
    assert!(rows.iter().all(|r| r["status"] == "confirmed"));
}

#[test]
fn construction_verification() {
    let o = sumlab(&["construct", "--kind", "Ad", "--params", "n=15,m=6,d=3,h=2", "--verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(json_lines(&o).iter().all(|r| r["ok"] == true));
    // a grid point where the restricted size formula fails
    let o = sumlab(&["construct", "--kind", "Ad", "--params", "n=6,m=5,d=3,h=4", "--verify"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(json_lines(&o).iter().any(|r| r["ok"] == false));
}

#[test]
fn usage_errors_name_the_token() {
    let o = sumlab(&["quantity", "--family", "rho", "--group", "Zq", "--terms", "exact:2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("Zq"));
    let o = sumlab(&["side", "v", "--n", "5..2", "--h", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("5..2"));
    let o = sumlab(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
    let o = sumlab(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn budget_exhaustion_exits_2() {
    let o = sumlab(&["quantity", "--family", "rho", "--variant", "restricted", "--group", "Z40", "--m", "20", "--terms", "exact:2", "--budget", "1000"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("budget"));
}

#[test]
fn env_overrides_flags() {
    let o = Command::new(env!("CARGO_BIN_EXE_sumlab"))
        .args(["side", "vpm", "--n", "7", "--h", "2"])
        .env("SUMLAB_FORMAT", "csv")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "n,h,value\n7,2,3\n");
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["quantity", "--family", "sigma", "--n", "10..14", "--terms", "exact:2", "--witnesses"];
    assert_eq!(sumlab(&args).stdout, sumlab(&args).stdout);
}
