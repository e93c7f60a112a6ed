//! Ordered tables of sweep results and their CSV rendering.

use std::io::{self, Write};

use crate::error::{Error, Result};

/// Rows of `(grid point, computed values...)` with a one-line metadata header
/// and optional footer comments.
///
/// Numbers are written with Rust's shortest round-trip exponent format, so
/// the bytes depend only on the values.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepTable {
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub footer: Vec<(String, String)>,
}

impl SweepTable {
    pub fn new(columns: Vec<String>) -> Self {
        Self {
            columns,
            ..Self::default()
        }
    }

    pub fn with_metadata(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.metadata.push((key.into(), value.into()));
        self
    }

    pub fn extend_metadata(&mut self, pairs: impl IntoIterator<Item = (String, String)>) {
        self.metadata.extend(pairs);
    }

    pub fn push_row(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Copies out one column by name.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        if !self.metadata.is_empty() {
            writeln!(out, "# {}", render_pairs(&self.metadata))?;
        }
        writeln!(out, "{}", self.columns.join(","))?;
        let mut line = String::new();
        for row in &self.rows {
            line.clear();
            for (i, v) in row.iter().enumerate() {
                if i > 0 {
                    line.push(',');
                }
                line.push_str(&format_value(*v));
            }
            writeln!(out, "{line}")?;
        }
        for (k, v) in &self.footer {
            writeln!(out, "# {k}={v}")?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("csv output is utf-8")
    }
}

fn render_pairs(pairs: &[(String, String)]) -> String {
    pairs
        .iter()
        .map(|(k, v)| format!("{k}={}", v.replace(char::is_whitespace, "_")))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn format_value(v: f64) -> String {
    format!("{v:e}")
}

/// Column-name suffix for a polarization angle given in radians: `phi0`,
/// `phi90`, `phi22.5`.
pub fn phi_label(phi: f64) -> String {
    format!("phi{}", trim_degrees(phi.to_degrees()))
}

pub fn trim_degrees(deg: f64) -> String {
    let rounded = (deg * 1e6).round() / 1e6;
    let rounded = if rounded == 0.0 { 0.0 } else { rounded };
    format!("{rounded}")
}

/// `n` uniformly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    check_grid(lo, hi, n)?;
    let step = (hi - lo) / (n - 1) as f64;
    Ok((0..n)
        .map(|i| if i == n - 1 { hi } else { lo + step * i as f64 })
        .collect())
}

/// `n` logarithmically spaced points from `lo` to `hi` inclusive.
pub fn logspace(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    check_grid(lo, hi, n)?;
    if lo <= 0.0 {
        return Err(Error::Domain(format!("log grid needs a positive lower bound, got {lo}")));
    }
    let (l0, l1) = (lo.ln(), hi.ln());
    let step = (l1 - l0) / (n - 1) as f64;
    Ok((0..n)
        .map(|i| match i {
            0 => lo,
            i if i == n - 1 => hi,
            i => (l0 + step * i as f64).exp(),
        })
        .collect())
}

fn check_grid(lo: f64, hi: f64, n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain(format!("a grid needs at least 2 points, got {n}")));
    }
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::Domain(format!("grid range [{lo}, {hi}] is empty or not finite")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut t = SweepTable::new(vec!["x".into(), "y".into()]).with_metadata("state", "sym");
        t.push_row(vec![0.5, -13.25]);
        t.push_row(vec![1.0, 2e-20]);
        t.footer.push(("max_rel_err".into(), "1e-12".into()));
        let csv = t.to_csv_string();
        assert_eq!(csv, "# state=sym\nx,y\n5e-1,-1.325e1\n1e0,2e-20\n# max_rel_err=1e-12\n");
    }

    #[test]
    fn values_round_trip_through_text() {
        for v in [0.1, -13.407543974309691, 1.0 / 3.0, 6.02e23, f64::MIN_POSITIVE] {
            assert_eq!(format_value(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn labels() {
        assert_eq!(phi_label(0.0), "phi0");
        assert_eq!(phi_label(std::f64::consts::FRAC_PI_2), "phi90");
        assert_eq!(phi_label(45f64.to_radians()), "phi45");
        assert_eq!(phi_label(22.5f64.to_radians()), "phi22.5");
    }

    #[test]
    fn grids() {
        let g = linspace(0.0, 1.0, 5).unwrap();
        assert_eq!(g, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let l = logspace(1e3, 1e7, 5).unwrap();
        assert_eq!(l[0], 1e3);
        assert_eq!(l[4], 1e7);
        assert!((l[2] - 1e5).abs() / 1e5 < 1e-12);
        assert!(linspace(1.0, 1.0, 3).is_err());
        assert!(linspace(0.0, 1.0, 1).is_err());
        assert!(logspace(0.0, 1.0, 3).is_err());
    }
}
