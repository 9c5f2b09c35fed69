use std::path::PathBuf;
use std::process::{Command, Output};

fn latglue(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latglue")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("latglue-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn tables_print_all_four() {
    let o = latglue(&["tables"]);
    assert!(o.status.success());
    let s = stdout(&o);
    for title in ["Table 1", "Table 2", "Table 3", "Table 4"] {
        assert!(s.contains(title), "{title} missing");
    }
    assert!(s.contains("[5/6 1/3 1/2 0]    12          14/3  72"));
    assert!(s.contains("4/3-2/3√3"));
}

#[test]
fn tables_as_csv_and_json() {
    let csv = stdout(&latglue(&["tables", "--format", "csv"]));
    assert!(csv.contains("# Table 3: short vectors of L12\nglue,orbit size,norm,per class,total\n"));
    assert!(csv.contains("[5/6 1/3 1/2 0],12,6,144,1728"));
    let json: serde_json::Value = serde_json::from_str(&stdout(&latglue(&["tables", "--format", "json"]))).unwrap();
    assert_eq!(json.as_array().unwrap().len(), 4);
}

#[test]
fn kissing_and_densities() {
    let k = stdout(&latglue(&["kissing-l12"]));
    assert_eq!(k.lines().next(), Some("648"));
    assert!(k.contains("48+96+108+108+288"));
    let d = stdout(&latglue(&["densities"]));
    assert_eq!(d, "δ8=1/96 δ4=1/12 δ12=1/32 δ10=1/32\n");
}

#[test]
fn singular_kissing_and_cosines() {
    let o = latglue(&["kissing", "--singular"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(s.lines().next(), Some("378"));
    assert_eq!(stdout(&latglue(&["kissing-q10"])), s);
    let c = stdout(&latglue(&["cosines", "--format", "csv"]));
    assert!(c.contains("1/4+1/12√3,"));
}

#[test]
fn patch_verify_tiling_round_trip() {
    let p = scratch("p6.json");
    let svg = scratch("t6.svg");
    let o = latglue(&["patch", "--bound", "6", "--out", p.to_str().unwrap()]);
    assert!(o.status.success());
    let v = latglue(&["verify", p.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0), "{}", String::from_utf8_lossy(&v.stderr));
    assert!(stdout(&v).contains("min squared distance 4\n"));
    let t = latglue(&["tiling", p.to_str().unwrap(), "--svg", svg.to_str().unwrap()]);
    assert!(t.status.success(), "{}", String::from_utf8_lossy(&t.stderr));
    assert!(stdout(&t).contains("edge squared length 2/3+1/3√3"));
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
}

#[test]
fn off_center_patch_verifies_under_its_own_window() {
    let p = scratch("off.json");
    let c = "1/5,-1/7,0,1/3+1/9√3";
    assert!(latglue(&["patch", "--bound", "4", "--centering", c, "--out", p.to_str().unwrap()]).status.success());
    assert_eq!(latglue(&["verify", p.to_str().unwrap(), "--centering", c]).status.code(), Some(0));
    // under the singular window some of its fibers are not admitted
    assert_eq!(latglue(&["verify", p.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let a = latglue(&["patch", "--bound", "5"]);
    let b = latglue(&["--threads", "1", "patch", "--bound", "5"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(latglue(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(latglue(&["gram", "--format", "svg"]).status.code(), Some(2));
    assert_eq!(latglue(&["patch", "--bound", "0"]).status.code(), Some(2));
    assert_eq!(latglue(&["verify", "/nonexistent/patch.json"]).status.code(), Some(2));
    let bad = scratch("bad.json");
    std::fs::write(&bad, r#"[{"glue":["0","0","0","0"],"c4":[0,0,0,0],"perp_norm":"1"}]"#).unwrap();
    assert_eq!(latglue(&["verify", bad.to_str().unwrap()]).status.code(), Some(2));
}
