use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn glg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_glg")).args(args).output().unwrap()
}

fn glg_threads(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_glg"))
        .args(args)
        .env("GLG_THREADS", threads)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write(name: &str, text: &str) -> String {
    let p = tmp(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

fn data(rel: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(rel).to_str().unwrap().to_owned()
}

#[test]
fn simulate_path_middle() {
    let o = glg(&["simulate", "--graph", &data("fixtures/path5.g6"), "--seed", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "t=0 alive=[2]\nt=1 alive=[1,3]\nt=2 alive=[0,4]\nt=3 alive=[1,3]\ncomplexity=3 outcome=cycled entry=1 repeat_at=3\n"
    );
}

#[test]
fn simulate_complete_and_star() {
    let k5 = write("k5.g6", "D~{\n");
    let o = glg(&["simulate", "--graph", &k5, "--seed", "0"]);
    assert!(stdout(&o).ends_with("complexity=2 outcome=cycled entry=1 repeat_at=2\n"), "{}", stdout(&o));
    let star = write("star4.txt", "4 3\n0 1\n0 2\n0 3\n");
    let o = glg(&["simulate", "--graph", &star, "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("complexity="));
}

#[test]
fn simulate_cap_exit_code() {
    let o = glg(&["simulate", "--graph", &data("fixtures/path5.g6"), "--seed", "2", "--cap", "1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn iso_exit_codes() {
    let p4 = write("p4.g6", "Ch\n");
    let s4 = write("s4.g6", "Cs\n");
    let o = glg(&["iso", "--g", &p4, "--h", &s4, "--k", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "non-isomorphic step=1\n");
    let o = glg(&["iso", "--g", &p4, "--h", &p4, "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "likely-isomorphic k=2\n");
}

#[test]
fn usage_errors() {
    assert_eq!(glg(&["iso", "--g", "/nonexistent", "--h", "/nonexistent"]).status.code(), Some(2));
    let bad = write("bad.g6", "Bx\n");
    assert_eq!(glg(&["features", "--graph", &bad]).status.code(), Some(2));
    assert_eq!(glg(&["conway", "--pattern", "pulsar"]).status.code(), Some(2));
    assert_eq!(glg(&["bogus"]).status.code(), Some(2));
    assert_eq!(glg(&["lines", "--input", &data("corpus/connected7.g6")]).status.code(), Some(2));
}

#[test]
fn conway_patterns() {
    let o = glg(&["conway", "--pattern", "blinker", "--grid", "5x5"]);
    assert_eq!(stdout(&o), "pattern=blinker grid=5x5 period=2\n");
    let o = glg(&["conway", "--pattern", "glider", "--grid", "8x8"]);
    assert_eq!(stdout(&o), "pattern=glider grid=8x8 period=32 translation_step=4 dx=1 dy=1\n");
}

#[test]
fn features_and_distance() {
    let p4 = write("p4b.g6", "Ch\n");
    let s4 = write("s4b.g6", "Cs\n");
    let o = glg(&["features", "--graph", &p4, "--k", "1"]);
    assert_eq!(stdout(&o), "4 1 0 2 2 3 3\n");
    let o = glg(&["distance", "--g", &p4, "--h", &s4, "--k", "1"]);
    assert_eq!(stdout(&o).trim().parse::<f64>().unwrap(), 2f64.sqrt());
}

#[test]
fn phase_row_count_and_reproducibility() {
    let args = ["phase", "--n", "15", "--m", "1..60", "--samples", "100", "--seed", "7"];
    let a = glg_threads(&args, "1");
    let b = glg_threads(&args, "8");
    assert_eq!(a.status.code(), Some(0));
    let text = stdout(&a);
    assert_eq!(text.lines().count(), 61);
    assert!(text.starts_with("n,m,density,"));
    assert_eq!(text, stdout(&b));
    assert_eq!(text, stdout(&glg_threads(&args, "3")));
}

#[test]
fn file_outputs_are_byte_identical() {
    let corpus = data("corpus/connected6.g6");
    let dir = tmp("phase_dir");
    std::fs::create_dir_all(&dir).unwrap();
    let mut outputs = Vec::new();
    for (run, threads) in ["1", "4"].iter().enumerate() {
        let lines = tmp(&format!("lines{run}.csv"));
        let scan = tmp(&format!("scan{run}.txt"));
        let o = glg_threads(&["lines", "--input", &corpus, "--k", "1", "--output", lines.to_str().unwrap()], threads);
        assert_eq!(o.status.code(), Some(0));
        let o = glg_threads(&["scan", "--input", &data("corpus/connected7.g6"), "--output", scan.to_str().unwrap()], threads);
        assert_eq!(o.status.code(), Some(0));
        let o = glg_threads(&["phase", "--input", &corpus, "--output", dir.to_str().unwrap()], threads);
        assert_eq!(o.status.code(), Some(0));
        let phase = dir.join("phase_n6_exhaustive_1-1-1.csv");
        outputs.push([lines, scan, phase].map(|p| std::fs::read(p).unwrap()));
    }
    assert_eq!(outputs[0], outputs[1]);
    let scan = String::from_utf8(outputs[0][1].clone()).unwrap();
    assert!(scan.starts_with("total=853 k=2 params=1/1/1 "), "{scan}");
    let phase = String::from_utf8(outputs[0][2].clone()).unwrap();
    assert_eq!(phase.lines().count(), 1 + 11);
}

#[test]
fn gen_matches_corpus() {
    let out = tmp("gen5.g6");
    let o = glg(&["gen", "--n", "5", "--connected", "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read(out).unwrap(), std::fs::read(data("corpus/connected5.g6")).unwrap());
}
