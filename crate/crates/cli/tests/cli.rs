use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn mcls(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcls"))
        .args(args)
        .current_dir(cwd)
        .env_remove("MCLS_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn synth(dir: &Path, out: &str, extra: &[&str]) {
    let mut args = vec!["synth", "--out", out];
    args.extend_from_slice(extra);
    let o = mcls(&args, dir);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn canonical_case_segments_and_reports_dice() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    synth(d, "corpus", &["--count", "1", "--seed", "3"]);
    let o = mcls(
        &[
            "segment",
            "--image",
            "corpus/case_000/image.pgm",
            "--prior",
            "corpus/case_000/prior.fmap",
            "--gt",
            "corpus/case_000/gt.pgm",
            "--out",
            "run",
        ],
        d,
    );
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let dice: f64 = text
        .split_whitespace()
        .skip_while(|w| *w != "dice")
        .nth(1)
        .expect("dice printed")
        .parse()
        .unwrap();
    assert!(dice >= 0.97, "{text}");
    for f in ["mask.pgm", "phi.fmap", "diagnostics.csv", "overlay.pgm", "config.json"] {
        assert!(d.join("run").join(f).is_file(), "{f}");
    }
    let cfg = std::fs::read_to_string(d.join("run/config.json")).unwrap();
    assert!(cfg.contains("\"steps\": 500"));
}

#[test]
fn out_dir_comes_from_environment() {
    let tmp = TempDir::new().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_mcls"))
        .args(["synth", "--count", "1"])
        .current_dir(tmp.path())
        .env("MCLS_OUT_DIR", "from_env")
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(tmp.path().join("from_env/manifest.json").is_file());
}

#[test]
fn mismatched_dimensions_exit_4() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    synth(d, "a", &["--count", "1"]);
    let spec = r#"{"seed":0,"canvas":[64,64],"shape":{"kind":"disk","center":[32,32],"radius":10},
        "foreground":150,"background":80,"noise_sigma":10,"prior_blur_sigma":3,"prior_noise_sigma":0}"#;
    std::fs::write(d.join("small.json"), spec).unwrap();
    let o = mcls(&["synth", "--spec", "small.json", "--count", "1", "--out", "b"], d);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = mcls(
        &["segment", "--image", "a/case_000/image.pgm", "--prior", "b/case_000/prior.fmap", "--out", "x"],
        d,
    );
    assert_eq!(o.status.code(), Some(4), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn missing_input_file_exits_3() {
    let tmp = TempDir::new().unwrap();
    let o = mcls(&["segment", "--image", "nope.pgm", "--prior", "nope.fmap"], tmp.path());
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nope.pgm"));
}

#[test]
fn bad_parameter_exits_2() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    synth(d, "c", &["--count", "1"]);
    let o = mcls(
        &["segment", "--image", "c/case_000/image.pgm", "--prior", "c/case_000/prior.fmap", "--eta", "-1"],
        d,
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn threshold_above_prior_exits_6() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    // prior eroded to nothing and blurred: no pixel reaches 0.5
    let spec = r#"{"seed":0,"canvas":[64,64],"shape":{"kind":"disk","center":[32,32],"radius":3},
        "foreground":150,"background":80,"noise_sigma":10,"prior_blur_sigma":5,"prior_noise_sigma":0,
        "prior_corruption":{"kind":"erode","radius":4}}"#;
    std::fs::write(d.join("tiny.json"), spec).unwrap();
    synth(d, "c", &["--spec", "tiny.json", "--count", "1"]);
    let o = mcls(
        &[
            "segment",
            "--image",
            "c/case_000/image.pgm",
            "--prior",
            "c/case_000/prior.fmap",
            "--out",
            "x",
        ],
        d,
    );
    assert_eq!(o.status.code(), Some(6), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn empty_corpus_writes_manifest_only() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    synth(d, "empty", &["--count", "0"]);
    let manifest = std::fs::read_to_string(d.join("empty/manifest.json")).unwrap();
    assert!(manifest.contains("\"cases\": []"), "{manifest}");
    let entries = std::fs::read_dir(d.join("empty")).unwrap().count();
    assert_eq!(entries, 1);
    // nothing to ablate
    let o = mcls(&["ablate", "--corpus", "empty", "--out", "ab"], d);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn synth_is_deterministic() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    synth(d, "one", &["--count", "2", "--preset", "eroded-prior", "--seed", "9"]);
    synth(d, "two", &["--count", "2", "--preset", "eroded-prior", "--seed", "9"]);
    for case in ["case_000", "case_001"] {
        for f in ["image.pgm", "gt.pgm", "prior.fmap", "spec.json"] {
            let a = std::fs::read(d.join("one").join(case).join(f)).unwrap();
            let b = std::fs::read(d.join("two").join(case).join(f)).unwrap();
            assert_eq!(a, b, "{case}/{f}");
        }
    }
    let a = std::fs::read(d.join("one/case_000/image.pgm")).unwrap();
    let b = std::fs::read(d.join("one/case_001/image.pgm")).unwrap();
    assert_ne!(a, b);
}

#[test]
fn eval_reports_summary_and_flags_missing_cases() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    synth(d, "c", &["--count", "2"]);
    // references used as predictions: perfect scores
    std::fs::create_dir(d.join("same")).unwrap();
    for case in ["case_000", "case_001"] {
        std::fs::copy(d.join("c").join(case).join("gt.pgm"), d.join("same").join(format!("{case}.pgm"))).unwrap();
    }
    let o = mcls(&["eval", "--pred", "same", "--gt", "c", "--out", "e"], d);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(d.join("e/eval.csv")).unwrap();
    assert!(csv.contains("\n\nsummary,cases,mean_dice,std_dice_population,max_dice,min_dice\ndice,2,1,0,1,1\n"), "{csv}");

    std::fs::create_dir(d.join("pred")).unwrap();
    std::fs::copy(d.join("c/case_000/gt.pgm"), d.join("pred/case_000.pgm")).unwrap();
    let o = mcls(&["eval", "--pred", "pred", "--gt", "c", "--out", "e2"], d);
    assert_eq!(o.status.code(), Some(3));
    let csv = std::fs::read_to_string(d.join("e2/eval.csv")).unwrap();
    assert!(csv.contains("case_001,missing"), "{csv}");
    assert!(String::from_utf8_lossy(&o.stderr).contains("case_001"));
}

#[test]
fn sweep_writes_argmax() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    synth(d, "c", &["--count", "1"]);
    let o = mcls(
        &["sweep", "--prior", "c/case_000/prior.fmap", "--gt", "c/case_000/gt.pgm", "--grid", "0.2,0.5,0.8", "--out", "s"],
        d,
    );
    assert!(o.status.success());
    let csv = std::fs::read_to_string(d.join("s/sweep.csv")).unwrap();
    let lines: Vec<_> = csv.lines().collect();
    assert_eq!(lines[0], "beta,dice");
    assert_eq!(lines.len(), 6);
    assert!(lines[4].starts_with("argmax,"));
    assert!(lines[5].starts_with("variance_population,"));
}

#[test]
fn config_file_and_flags_combine() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    synth(d, "c", &["--count", "1"]);
    std::fs::write(d.join("cfg.json"), r#"{"levelset": {"steps": 5, "mu": 10.0}}"#).unwrap();
    let o = mcls(
        &[
            "segment",
            "--config",
            "cfg.json",
            "--steps",
            "3",
            "--image",
            "c/case_000/image.pgm",
            "--prior",
            "c/case_000/prior.fmap",
            "--out",
            "r",
        ],
        d,
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("iterations 3"));
    let cfg = std::fs::read_to_string(d.join("r/config.json")).unwrap();
    assert!(cfg.contains("\"mu\": 10.0") && cfg.contains("\"steps\": 3"), "{cfg}");

    std::fs::write(d.join("bad.json"), r#"{"levelset": {"stepz": 5}}"#).unwrap();
    let o = mcls(&["segment", "--config", "bad.json", "--image", "x", "--prior", "y"], d);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn corpus_mode_and_ablation_tables() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    synth(d, "c", &["--count", "2"]);
    let o = mcls(&["segment", "--corpus", "c", "--steps", "20", "--color", "--out", "seg"], d);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(d.join("seg/case_001/overlay.ppm").is_file());
    assert!(d.join("seg/refine.csv").is_file());

    let o = mcls(&["ablate", "--corpus", "c", "--steps", "20", "--out", "ab"], d);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(d.join("ab/ablation.csv")).unwrap();
    assert_eq!(csv.lines().count(), 6, "{csv}");

    let o = mcls(&["uncertainty", "--corpus", "c", "--steps", "20", "--out", "u"], d);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(std::fs::read_to_string(d.join("u/uncertainty.csv")).unwrap().lines().count(), 3);
}
