//! Coefficient dump: CSV with columns `component,k,re,im`, 17 significant
//! digits so that values round-trip exactly.

use std::io::{BufRead, Write};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::vec3;

use super::TrigPoly;

pub const COEFF_CSV_HEADER: &str = "component,k,re,im";

pub fn write_coeffs_csv<W: Write>(poly: &TrigPoly, mut w: W) -> std::io::Result<()> {
    writeln!(w, "{COEFF_CSV_HEADER}")?;
    for c in 0..3 {
        for k in poly.frequencies() {
            let z = poly.coeff(k)[c];
            writeln!(w, "{c},{k},{:.16e},{:.16e}", z.re, z.im)?;
        }
    }
    Ok(())
}

pub fn read_coeffs_csv<R: BufRead>(r: R) -> Result<TrigPoly> {
    let mut entries = Vec::new();
    for (lineno, line) in r.lines().enumerate() {
        let line = line.map_err(|e| Error::Parse(e.to_string()))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line == COEFF_CSV_HEADER {
            continue;
        }
        let bad = || Error::Parse(format!("line {}: expected component,k,re,im", lineno + 1));
        let mut parts = line.split(',');
        let mut next = || parts.next().ok_or_else(bad);
        let c: usize = next()?.trim().parse().map_err(|_| bad())?;
        let k: i64 = next()?.trim().parse().map_err(|_| bad())?;
        let re: f64 = next()?.trim().parse().map_err(|_| bad())?;
        let im: f64 = next()?.trim().parse().map_err(|_| bad())?;
        if c > 2 {
            return Err(bad());
        }
        entries.push((c, k, Complex64::new(re, im)));
    }
    let degree = entries
        .iter()
        .map(|e| e.1.unsigned_abs() as usize)
        .max()
        .unwrap_or(0);
    let mut coeffs = vec![vec3::CZERO; 2 * degree + 1];
    for (c, k, z) in entries {
        coeffs[(k + degree as i64) as usize][c] = z;
    }
    TrigPoly::new(degree, coeffs)
}
