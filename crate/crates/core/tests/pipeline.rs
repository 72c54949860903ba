use mcls_core::formats::write_mask_pgm;
use mcls_core::pipeline::{
    ablate, ablation_csv, eval_csv, evaluate_dirs, load_corpus, read_manifest, refine_case, synthesize_corpus,
    write_corpus, AblationVariant, RunConfig,
};
use mcls_core::{corpus_summary, overlap, LevelSetConfig, SynthCaseSpec};
use tempfile::TempDir;

#[test]
fn corpus_round_trips_through_disk() {
    let dir = TempDir::new().unwrap();
    let spec = SynthCaseSpec::eroded_prior(3);
    let manifest = write_corpus(&spec, 3, dir.path()).unwrap();
    assert_eq!(read_manifest(dir.path()).unwrap(), manifest);
    let loaded = load_corpus(dir.path()).unwrap();
    let memory = synthesize_corpus(&spec, 3).unwrap();
    assert_eq!(loaded.len(), 3);
    for (a, b) in loaded.iter().zip(&memory) {
        assert_eq!(a.name, b.name);
        assert_eq!(a.gt, b.gt);
        // FMAP stores single precision
        for (x, y) in a.prior.plane().data().iter().zip(b.prior.plane().data()) {
            assert_eq!(*x, *y as f32 as f64);
        }
        // PGM stores 8-bit samples
        for (x, y) in a.image.plane().data().iter().zip(b.image.plane().data()) {
            assert!((x - y.round()).abs() < 1e-9);
        }
    }
}

#[test]
fn eval_footer_matches_summary_of_cases() {
    let dir = TempDir::new().unwrap();
    let (gt_dir, pred_dir) = (dir.path().join("gt"), dir.path().join("pred"));
    write_corpus(&SynthCaseSpec::eroded_prior(0), 20, &gt_dir).unwrap();
    std::fs::create_dir(&pred_dir).unwrap();
    let cases = load_corpus(&gt_dir).unwrap();
    let mut reports = Vec::new();
    for c in &cases {
        let pred = c.prior.threshold(0.4);
        write_mask_pgm(&pred, pred_dir.join(format!("{}.pgm", c.name))).unwrap();
        reports.push(overlap(&pred, &c.gt).unwrap());
    }
    let outcome = evaluate_dirs(&pred_dir, &gt_dir).unwrap();
    assert!(outcome.missing.is_empty());
    let expected = corpus_summary(&reports).unwrap();
    let got = outcome.summary.as_ref().unwrap();
    assert_eq!(got.mean, expected.mean);
    assert_eq!(got.std, expected.std);
    let csv = eval_csv(&outcome);
    let footer = csv.lines().last().unwrap();
    assert_eq!(
        footer,
        format!("dice,20,{},{},{},{}", expected.mean, expected.std, expected.max, expected.min)
    );
}

#[test]
fn failed_runs_score_zero() {
    // a prior eroded away entirely never reaches the threshold
    let spec = SynthCaseSpec {
        prior_corruption: mcls_core::synth::Corruption::Erode { radius: 40.0 },
        ..SynthCaseSpec::canonical_disk(0)
    };
    let cases = synthesize_corpus(&spec, 1).unwrap();
    let config = LevelSetConfig {
        steps: 3,
        ..Default::default()
    };
    let (row, seg) = refine_case(&cases[0], &config).unwrap();
    assert!(seg.is_none());
    assert_eq!(row.dice, 0.0);
    assert!(row.failure.unwrap().contains("threshold"));
}

#[test]
fn ablation_is_deterministic_and_covers_every_variant() {
    let cases = synthesize_corpus(&SynthCaseSpec::cluttered_scene(0), 2).unwrap();
    let base = LevelSetConfig {
        steps: 30,
        ..Default::default()
    };
    let a = ablate(&cases, &base).unwrap();
    let b = ablate(&cases, &base).unwrap();
    assert_eq!(ablation_csv(&a), ablation_csv(&b));
    let variants: Vec<_> = a.iter().map(|r| r.variant).collect();
    assert_eq!(variants, AblationVariant::ALL.to_vec());
    for r in &a {
        assert_eq!(r.dice.len(), 2);
        assert!(r.min <= r.mean && r.mean <= r.max);
    }
}

#[test]
fn run_config_applies_ablation_switches() {
    let rc = RunConfig::from_json(r#"{"ablation": {"no_texture": true, "no_prior": true}}"#).unwrap();
    let cfg = rc.effective().unwrap();
    assert_eq!(cfg.channels, [true, false, false, false, false]);
    assert!(RunConfig::from_json(r#"{"levelset": {"eta": -1}}"#).unwrap().effective().is_err());
}
