//! On-disk formats: binary PGM for images and masks, FMAP for real-valued
//! fields, and PGM/PPM overlays.

mod fmap;
mod overlay;
mod pgm;

use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

pub use fmap::{decode_fmap, encode_fmap, read_fmap, read_fmap_field, read_fmap_prob, write_fmap};
pub use overlay::{render_overlay_gray, render_overlay_rgb, write_ppm};
pub use pgm::{
    decode_pgm, encode_pgm, read_mask_pgm, read_pgm, write_mask_pgm, write_pgm, PgmRaster,
};

/// Writes `bytes` to `path` through a sibling temporary file and a rename, so
/// readers never observe a partially written file.
pub fn write_atomic(path: impl AsRef<Path>, bytes: &[u8]) -> std::io::Result<()> {
    let path = path.as_ref();
    let file_name = path
        .file_name()
        .ok_or_else(|| std::io::Error::new(std::io::ErrorKind::InvalidInput, "path has no file name"))?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(file_name);
    tmp_name.push(format!(".tmp{}", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)
}

/// Reads a whole file, attaching the path to any error.
pub fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|source| Error::File {
        path: path.to_path_buf(),
        source,
    })
}

/// [`write_atomic`], attaching the path to any error.
pub fn write_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    write_atomic(path, bytes).map_err(|source| Error::File {
        path: path.to_path_buf(),
        source,
    })
}
