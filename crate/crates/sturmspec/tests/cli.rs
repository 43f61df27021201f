use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sturmspec")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn bands_record_count() {
    let o = run(&["bands", "--cf", "1,1,1", "--V", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let bands = v.as_array().unwrap();
    assert_eq!(bands.len(), 3);
    assert!(bands.iter().all(|b| b["type"].is_string()));
}

#[test]
fn bands_half_edges() {
    // Roots of t = E^2 - E - 2 = +-2 at V = 1: (1 - sqrt 17)/2, 0, 1, (1 + sqrt 17)/2.
    let r = 17f64.sqrt();
    let want = [(1.0 - r) / 2.0, 0.0, 1.0, (1.0 + r) / 2.0];
    for extra in [&[][..], &["--exact"]] {
        let mut args = vec!["bands", "--rat", "1/2", "--V", "1", "--format", "csv"];
        args.extend_from_slice(extra);
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0));
        let text = stdout(&o);
        let mut rdr = csv::Reader::from_reader(text.as_bytes());
        let mut edges = Vec::new();
        for rec in rdr.records() {
            let rec = rec.unwrap();
            edges.push(rec[3].parse::<f64>().unwrap());
            edges.push(rec[4].parse::<f64>().unwrap());
        }
        assert_eq!(edges.len(), 4);
        for (e, w) in edges.iter().zip(want) {
            assert!((e - w).abs() < 1e-10, "{e} vs {w}");
        }
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["bands", "--cf", "1", "--V", "0"]).status.code(), Some(2));
    assert_eq!(run(&["bands", "--cf", "1,x", "--V", "1"]).status.code(), Some(2));
    assert_eq!(run(&["bands", "--rat", "3/2", "--V", "1"]).status.code(), Some(2));
    assert_eq!(run(&["bands", "--preset", "bronze", "--V", "1"]).status.code(), Some(2));
    assert_eq!(run(&["bands", "--preset", "golden", "--k", "12", "--V", "1", "--exact"]).status.code(), Some(2));
    assert_eq!(run(&["bands", "--V", "1"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "traces", "--V", "0"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "traces"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "words"]).status.code(), Some(0));
}

#[test]
fn verify_reports_failure() {
    // A tolerance of zero cannot be met by floating point edges.
    let o = run(&["verify", "edges", "--tol", "0"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn verify_dry_tmp() {
    let o = run(&["verify", "dry-tmp", "--V", "1", "--k", "10", "--L", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS"));
}

#[test]
fn butterfly_rows_and_empty_grid() {
    let o = run(&["butterfly", "--preset", "golden", "--V-grid", "0.2:8:32", "--depth", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows = text.lines().count() - 1;
    // q_1 + ... + q_6 = 32 bands per coupling.
    assert_eq!(rows, 32 * 32);
    assert!(text.starts_with("cf,V,left,right,type\n"));

    let empty = run(&["butterfly", "--preset", "golden", "--V-grid", "0:1:0"]);
    assert_eq!(empty.status.code(), Some(0));
    assert!(empty.stdout.is_empty());

    let slice = run(&["butterfly", "--preset", "golden", "--V", "2", "--format", "svg"]);
    let svg = stdout(&slice);
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<rect").count(), 32 + 1);
}

#[test]
fn byte_stable() {
    for args in [
        &["bands", "--preset", "silver", "--k", "5", "--V", "2.5", "--format", "csv"][..],
        &["bands", "--cf", "2,1,3", "--V", "-1.5"],
        &["butterfly", "--preset", "golden", "--V-grid", "0.5:4:7", "--format", "svg"],
        &["verify", "words"],
    ] {
        let (a, b) = (run(args), run(args));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn out_file() {
    let dir = std::env::temp_dir().join(format!("sturmspec-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bands.json");
    let o = run(&["bands", "--cf", "2", "--V", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let direct = run(&["bands", "--cf", "2", "--V", "1"]);
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}
