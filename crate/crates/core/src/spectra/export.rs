//! CSV tables. Floats use Rust's shortest round-trip formatting, so equal
//! values always produce equal bytes.

use std::io::Write;
use std::path::Path;

use super::spectrum::{HeatTrace, SpectrumResult};
use super::SpectraError;

pub fn spectrum_csv(spectra: &[SpectrumResult]) -> String {
    let mut out = String::from("t,N,parity,index,eigenvalue\n");
    for s in spectra {
        for (i, v) in s.values.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                s.parameter(),
                s.n,
                s.parity.label(),
                i,
                v
            ));
        }
    }
    out
}

pub fn heat_trace_csv(traces: &[HeatTrace]) -> String {
    let mut out = String::from("t,N,tau,trace,truncation_bound\n");
    for h in traces {
        for ((tau, v), b) in h.taus.iter().zip(&h.values).zip(&h.truncation_bounds) {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                h.scheme.parameter(),
                h.n,
                tau,
                v,
                b
            ));
        }
    }
    out
}

pub fn write_csv(path: &Path, contents: &str) -> Result<(), SpectraError> {
    let io = |e: std::io::Error| SpectraError::Io(format!("{}: {e}", path.display()));
    let mut f = std::fs::File::create(path).map_err(io)?;
    f.write_all(contents.as_bytes()).map_err(io)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{heat_trace, Parity, Scheme};

    #[test]
    fn layout() {
        let s = SpectrumResult {
            scheme: Scheme::Deformed { t: 0.25 },
            n: 6,
            parity: Parity::Even,
            values: vec![0.0, 39.5],
            dimension: 10,
            complete: false,
            tol: 1e-8,
            seed: 7,
            residuals: vec![],
        };
        assert_eq!(
            spectrum_csv(std::slice::from_ref(&s)),
            "t,N,parity,index,eigenvalue\n0.25,6,even,0,0\n0.25,6,even,1,39.5\n"
        );
        let h = heat_trace(&s, &[0.1]).unwrap();
        let csv = heat_trace_csv(&[h]);
        assert!(csv.starts_with("t,N,tau,trace,truncation_bound\n0.25,6,0.1,"));
    }
}
