//! On-disk formats for lattice functions.
//!
//! Two formats round-trip a [`LatticeFunction`]:
//!
//! * JSON: `{"orders": [...], "re": [...], "im": [...]}`, human-readable,
//!   values exact to f64 round-trip printing;
//! * binary: magic `RLZ1`, little-endian `u32` axis count, the orders as
//!   `u32`s, then interleaved `f64` re/im pairs in row-major order. The
//!   binary format is bit-exact.

use std::io::{Read, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::lattice::{GroupSpec, LatticeFunction};
use crate::{Error, Result};

const MAGIC: &[u8; 4] = b"RLZ1";

#[derive(Serialize, Deserialize)]
struct FunctionJson {
    orders: Vec<usize>,
    re: Vec<f64>,
    im: Vec<f64>,
}

/// Serialises a function to the JSON format.
pub fn write_json<W: Write>(f: &LatticeFunction, mut out: W) -> Result<()> {
    let doc = FunctionJson {
        orders: f.group().orders().to_vec(),
        re: f.values().iter().map(|v| v.re).collect(),
        im: f.values().iter().map(|v| v.im).collect(),
    };
    serde_json::to_writer(&mut out, &doc)?;
    Ok(())
}

/// Reads a function from the JSON format.
pub fn read_json<R: Read>(input: R) -> Result<LatticeFunction> {
    let doc: FunctionJson = serde_json::from_reader(input)?;
    let group = GroupSpec::new(&doc.orders)?;
    if doc.re.len() != group.size() || doc.im.len() != group.size() {
        return Err(Error::MalformedFunctionFile {
            reason: format!(
                "group has {} points but file carries {} re / {} im values",
                group.size(),
                doc.re.len(),
                doc.im.len()
            ),
        });
    }
    let values = doc
        .re
        .iter()
        .zip(&doc.im)
        .map(|(&re, &im)| Complex64::new(re, im))
        .collect();
    LatticeFunction::from_values(&group, values)
}

/// Serialises a function to the binary format.
pub fn write_binary<W: Write>(f: &LatticeFunction, mut out: W) -> Result<()> {
    out.write_all(MAGIC)?;
    let dims = u32::try_from(f.group().dims()).map_err(|_| Error::GroupTooLarge)?;
    out.write_all(&dims.to_le_bytes())?;
    for &m in f.group().orders() {
        let m = u32::try_from(m).map_err(|_| Error::GroupTooLarge)?;
        out.write_all(&m.to_le_bytes())?;
    }
    for v in f.values() {
        out.write_all(&v.re.to_le_bytes())?;
        out.write_all(&v.im.to_le_bytes())?;
    }
    Ok(())
}

/// Reads a function from the binary format, rejecting wrong magic bytes,
/// truncation, and trailing garbage.
pub fn read_binary<R: Read>(mut input: R) -> Result<LatticeFunction> {
    let mut magic = [0u8; 4];
    input.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::MalformedFunctionFile {
            reason: format!("bad magic {magic:?}, expected {MAGIC:?}"),
        });
    }
    let mut word = [0u8; 4];
    input.read_exact(&mut word)?;
    let dims = u32::from_le_bytes(word) as usize;
    let mut orders = Vec::with_capacity(dims);
    for _ in 0..dims {
        input.read_exact(&mut word)?;
        orders.push(u32::from_le_bytes(word) as usize);
    }
    let group = GroupSpec::new(&orders)?;
    let mut values = Vec::with_capacity(group.size());
    let mut pair = [0u8; 16];
    for _ in 0..group.size() {
        input.read_exact(&mut pair)?;
        let re = f64::from_le_bytes(pair[..8].try_into().expect("slice of 8"));
        let im = f64::from_le_bytes(pair[8..].try_into().expect("slice of 8"));
        values.push(Complex64::new(re, im));
    }
    let mut trailing = [0u8; 1];
    if input.read(&mut trailing)? != 0 {
        return Err(Error::MalformedFunctionFile {
            reason: "trailing bytes after function data".into(),
        });
    }
    LatticeFunction::from_values(&group, values)
}
