use std::path::Path;

use mcls_core::formats::{read_bytes, read_fmap_prob, read_mask_pgm, read_pgm, write_bytes};
use mcls_core::levelset::EdgeIndicatorMode;
use mcls_core::metrics::{default_sweep_grid, threshold_sweep};
use mcls_core::pipeline::{
    ablate, ablation_csv, ablation_table, eval_csv, evaluate_dirs, load_corpus, read_manifest, refine_case,
    refine_csv, sweep_csv, uncertainty_csv, uncertainty_report, write_corpus, write_segmentation, CorpusCase,
    RunConfig,
};
use mcls_core::synth::SynthCaseSpec;
use mcls_core::{overlap, segment, Error, Result};

use crate::args::{AblateArgs, ConfigArgs, EdgeMode, EvalArgs, Preset, SegmentArgs, SweepArgs, SynthArgs, UncertaintyArgs};

/// File value of the run config with command-line overrides applied.
pub fn run_config(args: &ConfigArgs) -> Result<RunConfig> {
    let mut rc = match &args.config {
        Some(path) => RunConfig::from_path(path)?,
        None => RunConfig::default(),
    };
    let ls = &mut rc.levelset;
    macro_rules! set {
        ($($field:ident => $target:expr),* $(,)?) => {
            $(if let Some(v) = args.$field { $target = v; })*
        };
    }
    set! {
        eta => ls.eta,
        nu => ls.nu,
        mu => ls.mu,
        tau => ls.tau,
        sigma_edge => ls.sigma_edge,
        steps => ls.steps,
        init_threshold => ls.init_threshold,
        init_amplitude => ls.init_amplitude,
        sigma_floor => ls.sigma_floor,
        stats_refresh => ls.stats_refresh,
        diffusion_tau => ls.diffusion.tau,
        diffusion_p => ls.diffusion.p,
        diffusion_step_size => ls.diffusion.step_size,
        diffusion_steps => ls.diffusion.steps,
    }
    if let Some(w) = &args.omega {
        ls.omega.copy_from_slice(w);
    }
    if let Some(mode) = args.edge_indicator {
        ls.edge_indicator = match mode {
            EdgeMode::SmoothedGradient => EdgeIndicatorMode::SmoothedGradient,
            EdgeMode::LiteralIntensity => EdgeIndicatorMode::LiteralIntensity,
        };
    }
    rc.ablation.no_position |= args.no_position;
    rc.ablation.no_texture |= args.no_texture;
    rc.ablation.no_prior |= args.no_prior;
    Ok(rc)
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    write_bytes(path, text.as_bytes())
}

fn create_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|source| Error::File {
        path: dir.to_path_buf(),
        source,
    })
}

pub fn segment_cmd(args: &SegmentArgs) -> Result<()> {
    let mut rc = run_config(&args.config)?;
    let config = rc.effective()?;
    let out = &args.out.out;
    create_dir(out)?;

    if let Some(corpus) = &args.corpus {
        let manifest = read_manifest(corpus)?;
        let mut rows = Vec::new();
        for name in &manifest.cases {
            let case = mcls_core::pipeline::load_case(corpus, name)?;
            let (row, seg) = refine_case(&case, &config)?;
            if let Some(seg) = seg {
                write_segmentation(&seg, &case.image, Some(&case.gt), &out.join(name), args.color)?;
            }
            println!("{name} dice {:.4} prior {:.4}", row.dice, row.prior_dice);
            rows.push(row);
        }
        write_text(&out.join("refine.csv"), &refine_csv(&rows))?;
        write_text(&out.join("config.json"), &rc.to_json())?;
        return Ok(());
    }

    let image_path = args.image.as_ref().expect("required by clap");
    let prior_path = args.prior.as_ref().expect("required by clap");
    let image = read_pgm(image_path)?;
    let prior = read_fmap_prob(prior_path)?;
    let gt = args.gt.as_ref().map(read_mask_pgm).transpose()?;
    rc.image = Some(image_path.clone());
    rc.prior = Some(prior_path.clone());
    rc.gt = args.gt.clone();
    rc.out_dir = Some(out.clone());

    let seg = segment(&image, &prior, &config)?;
    write_segmentation(&seg, &image, gt.as_ref(), out, args.color)?;
    write_text(&out.join("config.json"), &rc.to_json())?;
    let d = &seg.diagnostics;
    println!(
        "iterations {} area {}{}",
        d.iterations,
        seg.mask.count(),
        if d.empty_background_init {
            " (initial contour covered the whole image)"
        } else {
            ""
        }
    );
    if let Some(gt) = &gt {
        let report = overlap(&seg.mask, gt)?;
        let baseline = overlap(&prior.threshold(config.init_threshold), gt)?;
        println!("dice {:.4} iou {:.4} (thresholded prior dice {:.4})", report.dice, report.iou, baseline.dice);
    }
    Ok(())
}

pub fn synth_cmd(args: &SynthArgs) -> Result<()> {
    let mut spec = match &args.spec {
        Some(path) => {
            serde_json::from_slice::<SynthCaseSpec>(&read_bytes(path)?)?
        }
        None => match args.preset {
            Preset::CanonicalDisk => SynthCaseSpec::canonical_disk(0),
            Preset::ErodedPrior => SynthCaseSpec::eroded_prior(0),
            Preset::Cluttered => SynthCaseSpec::cluttered_scene(0),
        },
    };
    if let Some(seed) = args.seed {
        spec.seed = seed;
    }
    let manifest = write_corpus(&spec, args.count, &args.out.out)?;
    println!("wrote {} cases to {}", manifest.cases.len(), args.out.out.display());
    Ok(())
}

/// Returns whether any case was missing a counterpart.
pub fn eval_cmd(args: &EvalArgs) -> Result<bool> {
    let outcome = evaluate_dirs(&args.pred, &args.gt)?;
    create_dir(&args.out.out)?;
    let csv = eval_csv(&outcome);
    write_text(&args.out.out.join("eval.csv"), &csv)?;
    print!("{csv}");
    for name in &outcome.missing {
        eprintln!("missing counterpart for case {name}; skipped");
    }
    Ok(!outcome.missing.is_empty())
}

pub fn sweep_cmd(args: &SweepArgs) -> Result<()> {
    let prior = read_fmap_prob(&args.prior)?;
    let gt = read_mask_pgm(&args.gt)?;
    let grid = args.grid.clone().unwrap_or_else(default_sweep_grid);
    let sweep = threshold_sweep(&prior, &gt, &grid)?;
    create_dir(&args.out.out)?;
    let csv = sweep_csv(&sweep);
    write_text(&args.out.out.join("sweep.csv"), &csv)?;
    print!("{csv}");
    Ok(())
}

fn corpus_and_config(corpus: &Path, config: &ConfigArgs) -> Result<(Vec<CorpusCase>, RunConfig)> {
    let cases = load_corpus(corpus)?;
    if cases.is_empty() {
        return Err(Error::InvalidInput(format!("corpus {} has no cases", corpus.display())));
    }
    Ok((cases, run_config(config)?))
}

pub fn ablate_cmd(args: &AblateArgs) -> Result<()> {
    let (cases, rc) = corpus_and_config(&args.corpus, &args.config)?;
    // variants set their own switches on top of the base config
    let rows = ablate(&cases, &rc.levelset)?;
    create_dir(&args.out.out)?;
    write_text(&args.out.out.join("ablation.csv"), &ablation_csv(&rows))?;
    print!("{}", ablation_table(&rows));
    Ok(())
}

pub fn uncertainty_cmd(args: &UncertaintyArgs) -> Result<()> {
    let (cases, rc) = corpus_and_config(&args.corpus, &args.config)?;
    let rows = uncertainty_report(&cases, &rc.effective()?)?;
    create_dir(&args.out.out)?;
    let csv = uncertainty_csv(&rows);
    write_text(&args.out.out.join("uncertainty.csv"), &csv)?;
    print!("{csv}");
    Ok(())
}
