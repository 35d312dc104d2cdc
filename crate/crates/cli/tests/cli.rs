use std::process::{Command, Output};
use tableau_core::checks::type_a_sweep;
use tableau_core::Tableau;

const FIXTURE: &str = ". x1 x3 1/x2 1 1/1 2 2";

fn tableau(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tableau")).args(args).env_remove("TABLEAU_SWEEP_MAX").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn grid_part(s: &str) -> String {
    s.lines().take_while(|l| !l.starts_with("transition")).map(|l| format!("{l}\n")).collect()
}

#[test]
fn coswitch_hop_variant_on_fixture() {
    let o = tableau(&["coswitch", "--variant", "hop", FIXTURE]);
    assert!(o.status.success());
    assert_eq!(grid_part(&stdout(&o)), ". 1 1 1\n1 2 x1\n2 x2 x3\n");
}

#[test]
fn hop_prints_transition() {
    let o = tableau(&["hop", FIXTURE]);
    assert_eq!(stdout(&o), ". 1 1 1\n1 2 x2\n2 x1 x3\ntransition: 3 2 3\n");
}

#[test]
fn oracle_variant_agrees() {
    let a = tableau(&["pesh", FIXTURE]);
    let b = tableau(&["pesh", "--variant", "crystal", FIXTURE]);
    assert_eq!(stdout(&a), grid_part(&stdout(&b)));
}

#[test]
fn hop_with_empty_inner_echoes_outer() {
    let dir = std::env::temp_dir().join(format!("tableau-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let x = dir.join("x.txt");
    let t = dir.join("t.txt");
    std::fs::write(&x, "").unwrap();
    std::fs::write(&t, "1 1 1\n2 2\n3\n").unwrap();
    let o = tableau(&["hop", x.to_str().unwrap(), t.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(grid_part(&stdout(&o)), "1 1 1\n2 2\n3\n");
}

#[test]
fn sweep_counts_every_pair() {
    let n = type_a_sweep(3, 4, 5).len();
    let o = tableau(&["verify", "--sweep", "5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), format!("OK: {n} instances, 0 mismatches\n"));
}

#[test]
fn sweep_respects_env_cap() {
    let n = type_a_sweep(3, 4, 3).len();
    let o = Command::new(env!("CARGO_BIN_EXE_tableau"))
        .args(["verify", "--sweep", "6"])
        .env("TABLEAU_SWEEP_MAX", "3")
        .output()
        .unwrap();
    assert_eq!(stdout(&o), format!("OK: {n} instances, 0 mismatches\n"));
}

#[test]
fn shifted_verify_single_pair() {
    let input = ". . . . x3 1' 1/. . . x2 1' 1/. . x1 x4 2' 2/. . . 1 2";
    let o = tableau(&["verify", "--type", "B", input]);
    assert_eq!(stdout(&o), "OK: 1 instances, 0 mismatches\n");
    let o = tableau(&["shifted-hop", input]);
    assert_eq!(stdout(&o), ". . . . 1 1 1\n. . . 1 2 x2\n. . 1 2' x1 x3\n. . . 2 x4\ntransition: 3 2 3 4\n");
}

#[test]
fn exit_codes() {
    assert_eq!(tableau(&["hop", "x1 zz"]).status.code(), Some(2));
    assert_eq!(tableau(&["hop", "x1 1/1 2/1 1 1"]).status.code(), Some(2));
    assert_eq!(tableau(&["hop", "--variant", "array", FIXTURE]).status.code(), Some(2));
    assert_eq!(tableau(&["nosuch"]).status.code(), Some(2));
    let o = tableau(&["hop", "x1 2/1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not Littlewood-Richardson"));
    assert_eq!(tableau(&["mixed", "--type", "B", "x1 1"]).status.code(), Some(3));
}

#[test]
fn printed_grids_reparse() {
    for cmd in ["switch", "coswitch", "pesh", "epair", "hop", "crystal", "mixed", "array", "omega"] {
        let o = tableau(&[cmd, FIXTURE]);
        assert!(o.status.success(), "{cmd}");
        let g = grid_part(&stdout(&o));
        let g: String = g.lines().take_while(|l| !l.contains(':')).map(|l| format!("{l}\n")).collect();
        let t = Tableau::from_grid(&g, false).unwrap();
        assert_eq!(t.to_grid(), g, "{cmd}");
    }
}

#[test]
fn reverse_undoes_hop() {
    let out = grid_part(&stdout(&tableau(&["hop", FIXTURE])));
    let back = tableau(&["revhop", &out.trim_end().replace('\n', "/")]);
    assert_eq!(stdout(&back), FIXTURE.replace('/', "\n") + "\n");
}

#[test]
fn json_round_trip() {
    let o = tableau(&["rectify", "--format", "json", ". . 1/. 2/3"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let t = Tableau::from_json(&v["result"], false).unwrap();
    assert_eq!(t.to_grid(), "1\n2\n3\n");
}

#[test]
fn bench_family_csv() {
    let o = tableau(&["bench"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("id,alpha,beta,lambda,phase1,phase2,oracle"));
    let rows: Vec<Vec<usize>> = lines.map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 13);
    assert!(rows.iter().all(|r| r[4] + r[5] == rows[0][4] + rows[0][5]));
}

#[test]
fn bench_empty_inner_is_free() {
    let o = tableau(&["bench", "--family", "1 1/2", "--bound", "(1)"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    for l in s.lines().skip(1) {
        let r: Vec<usize> = l.split(',').map(|c| c.parse().unwrap()).collect();
        assert_eq!(r[2], 0);
        assert_eq!(r[4] + r[5], 0);
    }
}
