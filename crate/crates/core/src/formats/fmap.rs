//! FMAP: `b"FMAP"`, `u32` LE width, `u32` LE height, then `width * height`
//! little-endian IEEE-754 `f32` values in row-major order.

use std::path::Path;

use crate::error::{Error, Result};
use crate::grid::{LevelSetField, Plane, ProbMap};

use super::{read_bytes, write_bytes};

const FORMAT: &str = "FMAP";
const MAGIC: &[u8; 4] = b"FMAP";
const HEADER_LEN: usize = 12;

fn parse_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        format: FORMAT,
        offset,
        message: message.into(),
    }
}

/// Encodes a plane; values are narrowed to `f32`.
pub fn encode_fmap(plane: &Plane) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + 4 * plane.len());
    out.extend_from_slice(MAGIC);
    out.extend((plane.width() as u32).to_le_bytes());
    out.extend((plane.height() as u32).to_le_bytes());
    for &v in plane.data() {
        out.extend((v as f32).to_le_bytes());
    }
    out
}

pub fn decode_fmap(bytes: &[u8]) -> Result<Plane> {
    if bytes.len() < 4 || &bytes[..4] != MAGIC {
        return Err(parse_err(0, "bad magic, expected \"FMAP\""));
    }
    if bytes.len() < HEADER_LEN {
        return Err(parse_err(bytes.len(), "truncated header"));
    }
    let width = u32::from_le_bytes(bytes[4..8].try_into().unwrap()) as usize;
    let height = u32::from_le_bytes(bytes[8..12].try_into().unwrap()) as usize;
    if width == 0 || height == 0 {
        return Err(parse_err(4, format!("zero dimension {width}x{height}")));
    }
    let payload = &bytes[HEADER_LEN..];
    let expected = width
        .checked_mul(height)
        .and_then(|n| n.checked_mul(4))
        .ok_or_else(|| parse_err(4, "dimensions overflow"))?;
    if payload.len() != expected {
        return Err(parse_err(
            HEADER_LEN + payload.len().min(expected),
            format!(
                "size mismatch: header says {width}x{height} ({expected} payload bytes), found {}",
                payload.len()
            ),
        ));
    }
    let data = payload
        .chunks_exact(4)
        .map(|ch| f64::from(f32::from_le_bytes([ch[0], ch[1], ch[2], ch[3]])))
        .collect();
    Plane::new(width, height, data)
}

pub fn read_fmap(path: impl AsRef<Path>) -> Result<Plane> {
    decode_fmap(&read_bytes(path.as_ref())?)
}

/// Reads an FMAP as a probability map; NaN or out-of-range payloads are rejected.
pub fn read_fmap_prob(path: impl AsRef<Path>) -> Result<ProbMap> {
    let plane = read_fmap(path)?;
    if let Some(i) = plane.data().iter().position(|v| v.is_nan()) {
        return Err(parse_err(HEADER_LEN + 4 * i, "NaN in probability map"));
    }
    ProbMap::new(plane)
}

pub fn read_fmap_field(path: impl AsRef<Path>) -> Result<LevelSetField> {
    let plane = read_fmap(path)?;
    if let Some(i) = plane.data().iter().position(|v| !v.is_finite()) {
        return Err(parse_err(HEADER_LEN + 4 * i, "non-finite level-set value"));
    }
    LevelSetField::new(plane)
}

pub fn write_fmap(plane: &Plane, path: impl AsRef<Path>) -> Result<()> {
    write_bytes(path.as_ref(), &encode_fmap(plane))?;
    Ok(())
}
