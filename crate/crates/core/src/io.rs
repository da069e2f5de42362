//! Deterministic CSV serialization for signals, spectra, and reports.
//!
//! Floats are written with Rust's shortest-round-trip formatting, so the
//! same values always produce the same bytes; every file starts with a
//! header row naming its columns. Complex values use the `re+imj` format
//! (a bare real is accepted on input).

use std::io::{BufRead, Write};
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graphon::FourierCoefficients;
use crate::grid::{Grid, Signal};
use crate::kernel::GridKernel;
use crate::localize::BandReport;
use crate::spectral::SpectralDecomposition;

/// Formats a complex number as `re+imj` (bare `re` when the imaginary
/// part is zero).
pub fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}j", z.re, z.im)
    }
}

/// Parses `re+imj`, `re-imj`, a bare real, or a bare imaginary (`imj`).
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let text = s.trim();
    if text.is_empty() {
        return Err(Error::Csv("empty value where a number was expected".into()));
    }
    let bad = |what: &str| Error::Csv(format!("cannot parse {text:?} as a complex number ({what})"));
    if let Some(body) = text.strip_suffix(['j', 'J']) {
        // split at the sign that separates real and imaginary parts:
        // the last '+'/'-' that is neither leading nor part of an exponent
        let bytes = body.as_bytes();
        let mut split = None;
        for pos in (1..bytes.len()).rev() {
            let b = bytes[pos];
            if (b == b'+' || b == b'-')
                && !matches!(bytes[pos - 1], b'e' | b'E')
            {
                split = Some(pos);
                break;
            }
        }
        match split {
            Some(pos) => {
                let re: f64 = body[..pos].parse().map_err(|_| bad("real part"))?;
                let im: f64 = body[pos..].parse().map_err(|_| bad("imaginary part"))?;
                Ok(Complex64::new(re, im))
            }
            None => {
                let im: f64 = if body.is_empty() || body == "+" {
                    1.0
                } else if body == "-" {
                    -1.0
                } else {
                    body.parse().map_err(|_| bad("imaginary part"))?
                };
                Ok(Complex64::new(0.0, im))
            }
        }
    } else {
        let re: f64 = text.parse().map_err(|_| bad("real part"))?;
        Ok(Complex64::new(re, 0.0))
    }
}

/// Writes a signal as `node,re,im` rows.
pub fn write_signal_csv(out: &mut impl Write, signal: &Signal) -> Result<()> {
    writeln!(out, "node,re,im")?;
    for (k, z) in signal.values().iter().enumerate() {
        writeln!(out, "{},{},{}", signal.grid().node(k), z.re, z.im)?;
    }
    Ok(())
}

/// Reads a signal written by [`write_signal_csv`] back onto `grid`.
/// Row count and node coordinates must match the grid.
pub fn read_signal_csv(input: &mut impl BufRead, grid: &Arc<Grid>) -> Result<Signal> {
    let mut lines = input.lines();
    match lines.next() {
        Some(header) => {
            let header = header?;
            if header.trim() != "node,re,im" {
                return Err(Error::Csv(format!(
                    "expected header \"node,re,im\", got {header:?}"
                )));
            }
        }
        None => return Err(Error::Csv("signal file is empty".into())),
    }
    let mut values = Vec::with_capacity(grid.len());
    for (row, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let mut next = |what: &str| {
            fields
                .next()
                .ok_or_else(|| Error::Csv(format!("row {row}: missing {what} column")))
        };
        let node: f64 = next("node")?
            .trim()
            .parse()
            .map_err(|_| Error::Csv(format!("row {row}: bad node coordinate")))?;
        let re: f64 = next("re")?
            .trim()
            .parse()
            .map_err(|_| Error::Csv(format!("row {row}: bad real part")))?;
        let im: f64 = next("im")?
            .trim()
            .parse()
            .map_err(|_| Error::Csv(format!("row {row}: bad imaginary part")))?;
        if values.len() >= grid.len() {
            return Err(Error::Csv(format!(
                "more rows than the {} grid nodes",
                grid.len()
            )));
        }
        let expected = grid.node(values.len());
        if (node - expected).abs() > 1e-9 * (1.0 + expected.abs()) {
            return Err(Error::Csv(format!(
                "row {row}: node {node} does not match grid node {expected}"
            )));
        }
        values.push(Complex64::new(re, im));
    }
    if values.len() != grid.len() {
        return Err(Error::Csv(format!(
            "expected {} rows, got {}",
            grid.len(),
            values.len()
        )));
    }
    Ok(Signal::from_raw(grid, nalgebra::DVector::from_vec(values)))
}

/// Writes Fourier coefficients as `index,re,im` rows.
pub fn write_coefficients_csv(
    out: &mut impl Write,
    coeffs: &FourierCoefficients,
) -> Result<()> {
    writeln!(out, "index,re,im")?;
    for (i, z) in coeffs.values().iter().enumerate() {
        writeln!(out, "{i},{},{}", z.re, z.im)?;
    }
    Ok(())
}

/// Reads coefficients written by [`write_coefficients_csv`].
pub fn read_coefficients_csv(input: &mut impl BufRead) -> Result<FourierCoefficients> {
    let mut lines = input.lines();
    match lines.next() {
        Some(header) => {
            let header = header?;
            if header.trim() != "index,re,im" {
                return Err(Error::Csv(format!(
                    "expected header \"index,re,im\", got {header:?}"
                )));
            }
        }
        None => return Err(Error::Csv("coefficient file is empty".into())),
    }
    let mut values = Vec::new();
    for (row, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(Error::Csv(format!("row {row}: expected 3 columns")));
        }
        let index: usize = fields[0]
            .trim()
            .parse()
            .map_err(|_| Error::Csv(format!("row {row}: bad index")))?;
        if index != values.len() {
            return Err(Error::Csv(format!(
                "row {row}: index {index} out of order (expected {})",
                values.len()
            )));
        }
        let re: f64 = fields[1]
            .trim()
            .parse()
            .map_err(|_| Error::Csv(format!("row {row}: bad real part")))?;
        let im: f64 = fields[2]
            .trim()
            .parse()
            .map_err(|_| Error::Csv(format!("row {row}: bad imaginary part")))?;
        values.push(Complex64::new(re, im));
    }
    Ok(FourierCoefficients::new(values))
}

/// Writes eigenvalues as `index,eigenvalue` rows.
pub fn write_spectrum_csv(out: &mut impl Write, dec: &SpectralDecomposition) -> Result<()> {
    writeln!(out, "index,eigenvalue")?;
    for (i, lambda) in dec.eigenvalues().iter().enumerate() {
        writeln!(out, "{i},{lambda}")?;
    }
    Ok(())
}

/// Writes eigenfunctions column-wise as `node,mode_0,mode_1,...` with
/// complex entries in `re+imj` form. `count` limits the exported modes.
pub fn write_modes_csv(
    out: &mut impl Write,
    dec: &SpectralDecomposition,
    count: Option<usize>,
) -> Result<()> {
    let m = count.unwrap_or(dec.len());
    if m > dec.len() {
        return Err(Error::InvalidArgument(format!(
            "asked to export {m} modes, decomposition holds {}",
            dec.len()
        )));
    }
    write!(out, "node")?;
    for i in 0..m {
        write!(out, ",mode_{i}")?;
    }
    writeln!(out)?;
    for k in 0..dec.grid().len() {
        write!(out, "{}", dec.grid().node(k))?;
        for i in 0..m {
            write!(out, ",{}", fmt_complex(dec.mode_value(i, k)))?;
        }
        writeln!(out)?;
    }
    Ok(())
}

/// Writes a kernel matrix with one row per node; the header names each
/// column by its node coordinate.
pub fn write_kernel_csv(out: &mut impl Write, kernel: &GridKernel) -> Result<()> {
    let grid = kernel.grid();
    write!(out, "node")?;
    for j in 0..grid.len() {
        write!(out, ",{}", grid.node(j))?;
    }
    writeln!(out)?;
    for i in 0..grid.len() {
        write!(out, "{}", grid.node(i))?;
        for j in 0..grid.len() {
            write!(out, ",{}", fmt_complex(kernel.entry(i, j)))?;
        }
        writeln!(out)?;
    }
    Ok(())
}

/// Writes a band report as `mode,sigma,abs_fhat,band` rows; eigenvalues
/// come from the decomposition the report was computed against.
pub fn write_band_report_csv(
    out: &mut impl Write,
    report: &BandReport,
    dec: &SpectralDecomposition,
) -> Result<()> {
    if report.magnitudes.len() != dec.len() {
        return Err(Error::DimensionMismatch {
            expected: dec.len(),
            got: report.magnitudes.len(),
        });
    }
    writeln!(out, "mode,sigma,abs_fhat,band")?;
    for i in 0..report.magnitudes.len() {
        writeln!(
            out,
            "{i},{},{},{}",
            dec.eigenvalue(i),
            report.magnitudes[i],
            report.band_of(i).name()
        )?;
    }
    Ok(())
}

/// Writes expansion data as `center_index,re,im` rows.
pub fn write_expansion_csv(
    out: &mut impl Write,
    centers: &[usize],
    coeffs: &[Complex64],
) -> Result<()> {
    if centers.len() != coeffs.len() {
        return Err(Error::DimensionMismatch {
            expected: centers.len(),
            got: coeffs.len(),
        });
    }
    writeln!(out, "center_index,re,im")?;
    for (&t, z) in centers.iter().zip(coeffs.iter()) {
        writeln!(out, "{t},{},{}", z.re, z.im)?;
    }
    Ok(())
}
