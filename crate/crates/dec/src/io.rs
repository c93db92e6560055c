//! On-disk formats: raw cochain dumps and the diagnostics CSV.
//!
//! A dump file is a fixed 32-byte header followed by the cochain values as
//! little-endian `f64`:
//!
//! ```text
//! offset  size  field
//! 0       4     magic "DECF"
//! 4       4     format version (little-endian u32, currently 1)
//! 8       4     cochain degree (0..=3)
//! 12      12    grid dims nx, ny, nz (little-endian u32 each)
//! 24      8     reserved, zero
//! 32      ...   values, little-endian f64
//! ```
//!
//! The diagnostics CSV has the fixed header
//! `step,time,divB,charge_residual,energy` and one row per emission; floats
//! are printed with Rust's shortest round-trip formatting, so files are
//! byte-stable across runs.

use std::io::{Read, Write};
use std::path::Path;

use crate::complex::GridDims;
use crate::error::DecError;
use crate::sim::Diagnostics;

pub const DUMP_MAGIC: [u8; 4] = *b"DECF";
pub const DUMP_VERSION: u32 = 1;
pub const DUMP_HEADER_LEN: usize = 32;

/// Number of cochain values for a degree on these dims.
pub fn cochain_len(degree: u32, dims: GridDims) -> Result<usize, DecError> {
    let cells = dims.cells();
    match degree {
        0 | 3 => Ok(cells),
        1 | 2 => Ok(3 * cells),
        _ => Err(DecError::DumpFormat(format!(
            "degree {degree} is not a cochain degree (expected 0..=3)"
        ))),
    }
}

/// Writes a cochain dump.
pub fn write_cochain_dump(
    path: &Path,
    degree: u32,
    dims: GridDims,
    values: &[f64],
) -> Result<(), DecError> {
    let expected = cochain_len(degree, dims)?;
    if values.len() != expected {
        return Err(DecError::CochainLength {
            degree: degree as u8,
            got: values.len(),
            expected,
        });
    }
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    file.write_all(&DUMP_MAGIC)?;
    file.write_all(&DUMP_VERSION.to_le_bytes())?;
    file.write_all(&degree.to_le_bytes())?;
    for n in [dims.nx, dims.ny, dims.nz] {
        file.write_all(&n.to_le_bytes())?;
    }
    file.write_all(&[0u8; 8])?;
    for v in values {
        file.write_all(&v.to_le_bytes())?;
    }
    file.flush()?;
    Ok(())
}

/// Reads a cochain dump back, validating the header and the value count.
pub fn read_cochain_dump(path: &Path) -> Result<(u32, GridDims, Vec<f64>), DecError> {
    let mut file = std::io::BufReader::new(std::fs::File::open(path)?);
    let mut header = [0u8; DUMP_HEADER_LEN];
    file.read_exact(&mut header)
        .map_err(|_| DecError::DumpFormat("file shorter than the 32-byte header".into()))?;
    if header[0..4] != DUMP_MAGIC {
        return Err(DecError::DumpFormat("bad magic, not a cochain dump".into()));
    }
    let word = |at: usize| u32::from_le_bytes(header[at..at + 4].try_into().unwrap());
    let version = word(4);
    if version != DUMP_VERSION {
        return Err(DecError::DumpFormat(format!(
            "unsupported version {version}, expected {DUMP_VERSION}"
        )));
    }
    let degree = word(8);
    let dims = GridDims::new(word(12), word(16), word(20));
    if header[24..32] != [0u8; 8] {
        return Err(DecError::DumpFormat("reserved bytes are not zero".into()));
    }
    let expected = cochain_len(degree, dims)?;
    let mut bytes = Vec::new();
    file.read_to_end(&mut bytes)?;
    if bytes.len() != expected * 8 {
        return Err(DecError::DumpFormat(format!(
            "payload holds {} bytes, expected {} for degree {degree} on {}x{}x{}",
            bytes.len(),
            expected * 8,
            dims.nx,
            dims.ny,
            dims.nz
        )));
    }
    let values = bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    Ok((degree, dims, values))
}

/// Header line of the diagnostics CSV.
pub const CSV_HEADER: &str = "step,time,divB,charge_residual,energy";

/// Formats one diagnostics row. Floats use shortest round-trip scientific
/// notation, so identical runs produce identical bytes and tiny residuals
/// stay readable.
pub fn csv_row(step: u64, time: f64, d: &Diagnostics) -> String {
    format!(
        "{step},{time:e},{:e},{:e},{:e}",
        d.div_b, d.charge_residual, d.energy
    )
}
