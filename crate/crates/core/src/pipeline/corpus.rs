use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formats::{read_bytes, read_fmap_prob, read_mask_pgm, read_pgm, write_bytes, write_fmap, write_mask_pgm, write_pgm};
use crate::grid::{BinaryMask, GrayImage, ProbMap};
use crate::synth::{make_synthetic_case, SynthCaseSpec};

pub const MANIFEST_FILE: &str = "manifest.json";
pub const IMAGE_FILE: &str = "image.pgm";
pub const GT_FILE: &str = "gt.pgm";
pub const PRIOR_FILE: &str = "prior.fmap";
pub const SPEC_FILE: &str = "spec.json";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    /// Spec the cases were derived from.
    pub spec: SynthCaseSpec,
    pub cases: Vec<String>,
}

pub fn case_name(index: usize) -> String {
    format!("case_{index:03}")
}

/// Generates `count` cases under `dir`, one subdirectory each, then the manifest.
pub fn write_corpus(spec: &SynthCaseSpec, count: usize, dir: &Path) -> Result<Manifest> {
    spec.validate()?;
    create_dir(dir)?;
    let mut cases = Vec::with_capacity(count);
    for i in 0..count {
        let name = case_name(i);
        let case_spec = spec.for_case(i as u64);
        let case = make_synthetic_case(&case_spec)?;
        let case_dir = dir.join(&name);
        create_dir(&case_dir)?;
        write_pgm(&case.image, case_dir.join(IMAGE_FILE))?;
        write_mask_pgm(&case.gt, case_dir.join(GT_FILE))?;
        write_fmap(case.prior.plane(), case_dir.join(PRIOR_FILE))?;
        write_json(&case_dir.join(SPEC_FILE), &case_spec)?;
        log::debug!("wrote {}", case_dir.display());
        cases.push(name);
    }
    let manifest = Manifest {
        spec: spec.clone(),
        cases,
    };
    write_json(&dir.join(MANIFEST_FILE), &manifest)?;
    Ok(manifest)
}

pub fn read_manifest(dir: &Path) -> Result<Manifest> {
    let bytes = read_bytes(&dir.join(MANIFEST_FILE))?;
    Ok(serde_json::from_slice(&bytes)?)
}

/// One case loaded from a corpus directory.
#[derive(Clone, Debug)]
pub struct CorpusCase {
    pub name: String,
    pub image: GrayImage,
    pub gt: BinaryMask,
    pub prior: ProbMap,
}

pub fn load_case(dir: &Path, name: &str) -> Result<CorpusCase> {
    let case_dir = dir.join(name);
    Ok(CorpusCase {
        name: name.to_string(),
        image: read_pgm(case_dir.join(IMAGE_FILE))?,
        gt: read_mask_pgm(case_dir.join(GT_FILE))?,
        prior: read_fmap_prob(case_dir.join(PRIOR_FILE))?,
    })
}

pub fn load_corpus(dir: &Path) -> Result<Vec<CorpusCase>> {
    read_manifest(dir)?
        .cases
        .iter()
        .map(|name| load_case(dir, name))
        .collect()
}

/// Generates the cases of a corpus in memory, without touching the disk.
pub fn synthesize_corpus(spec: &SynthCaseSpec, count: usize) -> Result<Vec<CorpusCase>> {
    (0..count)
        .map(|i| {
            let case = make_synthetic_case(&spec.for_case(i as u64))?;
            Ok(CorpusCase {
                name: case_name(i),
                image: case.image,
                gt: case.gt,
                prior: case.prior,
            })
        })
        .collect()
}

/// Mask file for case `name` under `dir`: `dir/name/<file>` if present,
/// otherwise `dir/name.pgm`.
pub fn find_mask(dir: &Path, name: &str, file: &str) -> Option<PathBuf> {
    let nested = dir.join(name).join(file);
    if nested.is_file() {
        return Some(nested);
    }
    let flat = dir.join(format!("{name}.pgm"));
    flat.is_file().then_some(flat)
}

/// Case names found in `dir`: subdirectories and `*.pgm` stems, sorted.
pub fn list_case_names(dir: &Path) -> Result<Vec<String>> {
    let entries = std::fs::read_dir(dir).map_err(|source| Error::File {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut names = Vec::new();
    for entry in entries {
        let path = entry?.path();
        let Some(stem) = path.file_stem().and_then(|s| s.to_str()) else {
            continue;
        };
        if stem.starts_with('.') {
            continue;
        }
        if path.is_dir() || path.extension().is_some_and(|e| e == "pgm") {
            names.push(stem.to_string());
        }
    }
    names.sort();
    names.dedup();
    Ok(names)
}

pub(crate) fn create_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|source| Error::File {
        path: dir.to_path_buf(),
        source,
    })
}

pub(crate) fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_bytes(path, text.as_bytes())
}
