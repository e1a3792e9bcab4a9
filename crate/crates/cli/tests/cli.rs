use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn modrec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modrec")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

const TRIANGLE: &str = "0 0 0\n0 1 1\n0 2 2\n1 0 1 3\n1 1 2 4\n1 0 2 5\n2 0 1 2 6\n";

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn filled_triangle_both_modes() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "tri.txt", TRIANGLE);
    let out = dir.path().join("dgm");
    let run =
        modrec(&["reduce", "--filtration", &input, "-r", "2,3", "--mode", "both", "--out", out.to_str().unwrap()]);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));

    let mf = fs::read_to_string(out.join("multifield.txt")).unwrap();
    assert_eq!(mf.lines().count(), 4);
    assert!(mf.lines().all(|l| l.ends_with("primes=2,3")));
    for q in [2, 3] {
        let field = fs::read_to_string(out.join(format!("field_{q}.txt"))).unwrap();
        assert_eq!(field.lines().count(), 4);
        assert!(field.lines().next().unwrap().starts_with("0 1 inf"));
    }
}

#[test]
fn empty_input_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "empty.txt", "# nothing here\n\n");
    let run = modrec(&["reduce", "--filtration", &input, "-r", "2"]);
    assert_eq!(run.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(modrec(&["reduce", "-r", "2"]).status.code(), Some(1));
    assert_eq!(modrec(&["window", "--n", "10", "--m-max", "20"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "tri.txt", TRIANGLE);
    assert_eq!(modrec(&["reduce", "--filtration", &input, "-r", "two"]).status.code(), Some(1));
    assert_eq!(modrec(&["rips", "--filtration", &input]).status.code(), Some(1));
    assert!(modrec(&["--help"]).status.success());
}

#[test]
fn composite_modulus_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "tri.txt", TRIANGLE);
    assert_eq!(modrec(&["reduce", "--filtration", &input, "-r", "2,4"]).status.code(), Some(2));
}

#[test]
fn klein_bottle_torsion_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("klein");
    let run = modrec(&[
        "torsion",
        "--shape",
        "klein-bottle",
        "--samples",
        "20000",
        "--landmarks",
        "400",
        "--seed",
        "1",
        "--rho",
        "1.6",
        "--max-dim",
        "3",
        "-r",
        "2",
        "--at",
        "1.28",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert!(stdout(&run).contains("H_1 = Z + Z/2^*Z"));
    let csv = fs::read_to_string(out.join("torsion.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "t,d,beta_Z,q,t(d,q)");
}

#[test]
fn generators_feed_reduce() {
    let dir = tempfile::tempdir().unwrap();
    let ym = dir.path().join("ym.txt");
    assert!(modrec(&["gen-ym", "--n", "8", "--m", "20", "--seed", "3", "--out", ym.to_str().unwrap()])
        .status
        .success());
    let text = fs::read_to_string(&ym).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("2 ")).count(), 20);

    let flag = dir.path().join("flag.txt");
    assert!(modrec(&["gen-flag", "--n", "10", "--m", "25", "--out", flag.to_str().unwrap()]).status.success());
    let run = modrec(&["reduce", "--filtration", flag.to_str().unwrap(), "-r", "3", "--mode", "both"]);
    assert!(run.status.success());
    assert!(String::from_utf8_lossy(&run.stderr).contains("agree"));
}

#[test]
fn rips_from_distance_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "d.txt", "1\n1 1\n1.5 1 1\n");
    let run = modrec(&["rips", "--distances", &input, "--rho", "1.2", "--max-dim", "2"]);
    assert!(run.status.success());
    let text = stdout(&run);
    assert_eq!(text.lines().filter(|l| l.starts_with("1 ")).count(), 5);
    assert_eq!(text.lines().filter(|l| l.starts_with("2 ")).count(), 2);
}

#[test]
fn bench_and_window_write_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bench");
    let run = modrec(&[
        "bench",
        "--shape",
        "cube:3",
        "--samples",
        "60",
        "--rho",
        "0.3",
        "--max-dim",
        "2",
        "--sweep",
        "2,4",
        "--repeats",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let csv = fs::read_to_string(out.join("bench.csv")).unwrap();
    assert_eq!(csv.lines().count(), 3);
    assert!(csv.starts_with("r,simplices,T_r,T_bf,R_r"));

    let out = dir.path().join("window");
    let run = modrec(&[
        "window",
        "--n",
        "12",
        "--m-max",
        "220",
        "-r",
        "5",
        "--trials",
        "3",
        "--c-star",
        "2.754",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(fs::read_to_string(out.join("window_trials.csv")).unwrap().lines().count(), 4);
    assert!(stdout(&run).starts_with("n,edge,count"));
}
