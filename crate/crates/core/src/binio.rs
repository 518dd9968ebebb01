//! Little-endian binary helpers shared by the on-disk formats.

use std::io::{Read, Write};

use crate::error::Result;
use crate::Error;
use std::path::Path;

pub(crate) fn write_u32<W: Write>(w: &mut W, v: u32) -> std::io::Result<()> {
    w.write_all(&v.to_le_bytes())
}

pub(crate) fn write_u64<W: Write>(w: &mut W, v: u64) -> std::io::Result<()> {
    w.write_all(&v.to_le_bytes())
}

pub(crate) fn write_f64_slice<W: Write>(w: &mut W, vals: &[f64]) -> std::io::Result<()> {
    // One buffered pass; 8 bytes per value.
    let mut buf = Vec::with_capacity(vals.len() * 8);
    for v in vals {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    w.write_all(&buf)
}

pub(crate) fn read_u32<R: Read>(r: &mut R) -> std::io::Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

pub(crate) fn read_u64<R: Read>(r: &mut R) -> std::io::Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}

pub(crate) fn read_f64_vec<R: Read>(r: &mut R, count: usize) -> std::io::Result<Vec<f64>> {
    let mut buf = vec![0u8; count * 8];
    r.read_exact(&mut buf)?;
    Ok(buf
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect())
}

/// Checked conversion for counts read from file headers.
pub(crate) fn header_count(path: &Path, what: &str, v: u64, max: u64) -> Result<usize> {
    if v > max {
        return Err(Error::parse(
            path,
            0,
            format!("{what} = {v} exceeds sane limit {max}"),
        ));
    }
    Ok(v as usize)
}
