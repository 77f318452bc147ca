//! On-disk cache of restricted operator matrices.
//!
//! Layout (little endian): magic `ORBSCSR\0`, `u32` scheme version, `u64` row
//! count, `u64` nonzero count, then row pointers (`u64`), columns (`u32`) and
//! values (`f64` bits).

use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use super::csr::CsrMatrix;
use super::operator::Scheme;
use super::spectrum::Parity;
use super::SpectraError;

/// Bumped whenever assembly changes the matrix it produces.
pub const SCHEME_VERSION: u32 = 1;

const MAGIC: &[u8; 8] = b"ORBSCSR\0";

pub fn operator_cache_path(dir: &Path, scheme: Scheme, n: usize, parity: Parity) -> PathBuf {
    dir.join(format!(
        "{}-{:016x}-N{}-{}-v{}.csr",
        scheme.label(),
        scheme.parameter().to_bits(),
        n,
        parity.label(),
        SCHEME_VERSION
    ))
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> SpectraError + '_ {
    move |e| SpectraError::Cache(format!("{}: {e}", path.display()))
}

pub fn store_operator(path: &Path, a: &CsrMatrix) -> Result<(), SpectraError> {
    let err = io_err(path);
    let tmp = path.with_extension("partial");
    {
        let mut w = BufWriter::new(std::fs::File::create(&tmp).map_err(&err)?);
        let (row_ptr, cols, vals) = a.parts();
        w.write_all(MAGIC).map_err(&err)?;
        w.write_all(&SCHEME_VERSION.to_le_bytes()).map_err(&err)?;
        w.write_all(&(a.dim() as u64).to_le_bytes()).map_err(&err)?;
        w.write_all(&(vals.len() as u64).to_le_bytes())
            .map_err(&err)?;
        for &r in row_ptr {
            w.write_all(&(r as u64).to_le_bytes()).map_err(&err)?;
        }
        for &c in cols {
            w.write_all(&c.to_le_bytes()).map_err(&err)?;
        }
        for &v in vals {
            w.write_all(&v.to_bits().to_le_bytes()).map_err(&err)?;
        }
        w.flush().map_err(&err)?;
    }
    std::fs::rename(&tmp, path).map_err(&err)
}

/// `Ok(None)` when the file does not exist.
pub fn load_operator(path: &Path) -> Result<Option<CsrMatrix>, SpectraError> {
    let err = io_err(path);
    let file = match std::fs::File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(err(e)),
    };
    let mut r = BufReader::new(file);
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic).map_err(&err)?;
    if &magic != MAGIC {
        return Err(SpectraError::Cache(format!(
            "{}: not an operator cache file",
            path.display()
        )));
    }
    let mut b4 = [0u8; 4];
    let mut b8 = [0u8; 8];
    r.read_exact(&mut b4).map_err(&err)?;
    let version = u32::from_le_bytes(b4);
    if version != SCHEME_VERSION {
        return Err(SpectraError::Cache(format!(
            "{}: scheme version {version}, expected {SCHEME_VERSION}",
            path.display()
        )));
    }
    let mut read_u64 = |r: &mut BufReader<std::fs::File>| -> Result<u64, SpectraError> {
        r.read_exact(&mut b8).map_err(&err)?;
        Ok(u64::from_le_bytes(b8))
    };
    let n = read_u64(&mut r)? as usize;
    let nnz = read_u64(&mut r)? as usize;
    let row_ptr = (0..=n)
        .map(|_| read_u64(&mut r).map(|v| v as usize))
        .collect::<Result<Vec<_>, _>>()?;
    let mut cols = Vec::with_capacity(nnz);
    for _ in 0..nnz {
        r.read_exact(&mut b4).map_err(&err)?;
        cols.push(u32::from_le_bytes(b4));
    }
    let vals = (0..nnz)
        .map(|_| read_u64(&mut r).map(f64::from_bits))
        .collect::<Result<Vec<_>, _>>()?;
    CsrMatrix::from_parts(row_ptr, cols, vals)
        .map(Some)
        .ok_or_else(|| {
            SpectraError::Cache(format!("{}: inconsistent matrix layout", path.display()))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::assemble;

    #[test]
    fn roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let a = assemble(0.25, 4).unwrap().to_csr();
        let path = operator_cache_path(dir.path(), Scheme::Deformed { t: 0.25 }, 4, Parity::Full);
        assert_eq!(load_operator(&path).unwrap(), None);
        store_operator(&path, &a).unwrap();
        assert_eq!(load_operator(&path).unwrap(), Some(a));
        std::fs::write(&path, b"garbage!").unwrap();
        assert!(load_operator(&path).is_err());
        let other = operator_cache_path(dir.path(), Scheme::Deformed { t: 0.0 }, 4, Parity::Full);
        assert_ne!(path, other);
    }
}
