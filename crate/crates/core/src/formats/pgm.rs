use std::path::Path;

use crate::error::{Error, Result};
use crate::grid::{BinaryMask, GrayImage, Plane};

use super::{read_bytes, write_bytes};

const FORMAT: &str = "PGM";

/// Decoded P5 raster before range normalization.
#[derive(Clone, Debug, PartialEq)]
pub struct PgmRaster {
    pub width: usize,
    pub height: usize,
    pub maxval: u32,
    pub samples: Vec<u16>,
}

impl PgmRaster {
    /// Samples rescaled to `[0, 255]`; 8-bit data with maxval 255 is returned unchanged.
    pub fn to_plane(&self) -> Result<Plane> {
        let scale = 255.0 / f64::from(self.maxval);
        let data = if self.maxval == 255 {
            self.samples.iter().map(|&s| f64::from(s)).collect()
        } else {
            self.samples.iter().map(|&s| f64::from(s) * scale).collect()
        };
        Plane::new(self.width, self.height, data)
    }
}

fn parse_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        format: FORMAT,
        offset,
        message: message.into(),
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws_and_comments(&mut self) {
        while self.pos < self.bytes.len() {
            let b = self.bytes[self.pos];
            if b == b'#' {
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<(usize, u64)> {
        self.skip_ws_and_comments();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(parse_err(start, format!("expected {what}")));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .map(|v| (start, v))
            .ok_or_else(|| parse_err(start, format!("{what} out of range")))
    }
}

pub fn decode_pgm(bytes: &[u8]) -> Result<PgmRaster> {
    if bytes.len() < 2 || &bytes[..2] != b"P5" {
        return Err(parse_err(0, "missing P5 magic"));
    }
    let mut cur = Cursor { bytes, pos: 2 };
    let (_, width) = cur.number("width")?;
    let (_, height) = cur.number("height")?;
    let (maxval_at, maxval) = cur.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(parse_err(2, format!("zero dimension {width}x{height}")));
    }
    if maxval == 0 || maxval > 65535 {
        return Err(parse_err(maxval_at, format!("maxval {maxval} not in 1..=65535")));
    }
    match bytes.get(cur.pos) {
        Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
        _ => return Err(parse_err(cur.pos, "expected single whitespace after maxval")),
    }
    let (width, height) = (width as usize, height as usize);
    let bytes_per_sample = if maxval < 256 { 1 } else { 2 };
    let need = width
        .checked_mul(height)
        .and_then(|n| n.checked_mul(bytes_per_sample))
        .ok_or_else(|| parse_err(2, "image too large"))?;
    let payload = &bytes[cur.pos..];
    if payload.len() < need {
        return Err(parse_err(
            bytes.len(),
            format!("truncated payload: need {need} bytes, found {}", payload.len()),
        ));
    }
    let samples: Vec<u16> = if bytes_per_sample == 1 {
        payload[..need].iter().map(|&b| u16::from(b)).collect()
    } else {
        payload[..need]
            .chunks_exact(2)
            .map(|ch| u16::from_be_bytes([ch[0], ch[1]]))
            .collect()
    };
    if let Some(i) = samples.iter().position(|&s| u64::from(s) > maxval) {
        return Err(parse_err(
            cur.pos + i * bytes_per_sample,
            format!("sample exceeds maxval {maxval}"),
        ));
    }
    Ok(PgmRaster {
        width,
        height,
        maxval: maxval as u32,
        samples,
    })
}

/// 8-bit P5 encoding; values are rounded to the nearest integer in `[0, 255]`.
pub fn encode_pgm(plane: &Plane) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", plane.width(), plane.height()).into_bytes();
    out.extend(
        plane
            .data()
            .iter()
            .map(|&v| v.round().clamp(0.0, 255.0) as u8),
    );
    out
}

pub fn read_pgm(path: impl AsRef<Path>) -> Result<GrayImage> {
    let bytes = read_bytes(path.as_ref())?;
    GrayImage::new(decode_pgm(&bytes)?.to_plane()?)
}

pub fn write_pgm(image: &GrayImage, path: impl AsRef<Path>) -> Result<()> {
    write_bytes(path.as_ref(), &encode_pgm(image.plane()))?;
    Ok(())
}

/// Masks are stored as 0 / 255; on read any sample above half of maxval is foreground.
pub fn read_mask_pgm(path: impl AsRef<Path>) -> Result<BinaryMask> {
    let bytes = read_bytes(path.as_ref())?;
    let raster = decode_pgm(&bytes)?;
    let half = raster.maxval / 2;
    Ok(BinaryMask::from_predicate(raster.width, raster.height, |i| {
        u32::from(raster.samples[i]) > half
    }))
}

pub fn write_mask_pgm(mask: &BinaryMask, path: impl AsRef<Path>) -> Result<()> {
    let plane = mask.to_plane().map(|v| v * 255.0);
    write_bytes(path.as_ref(), &encode_pgm(&plane))?;
    Ok(())
}
