//! Per-row root choices read from `N, alpha = index` lines.

use crate::error::{CliError, CliResult};

/// Orders closer than this are treated as equal when looking up a row.
pub const ALPHA_MATCH: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchEntry {
    pub dim: u32,
    pub alpha: f64,
    /// Zero-based index into the ascending root list.
    pub index: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BranchOverrides {
    entries: Vec<BranchEntry>,
}

impl BranchOverrides {
    pub fn entries(&self) -> &[BranchEntry] {
        &self.entries
    }

    pub fn lookup(&self, dim: u32, alpha: f64) -> Option<usize> {
        self.entries
            .iter()
            .find(|e| e.dim == dim && (e.alpha - alpha).abs() < ALPHA_MATCH)
            .map(|e| e.index)
    }

    /// Renders entries in the format accepted by [`parse_branch_file`].
    pub fn to_text(&self) -> String {
        let mut out = String::from("# N, alpha = root index (0-based, ascending k)\n");
        for e in &self.entries {
            out.push_str(&format!("{}, {} = {}\n", e.dim, e.alpha, e.index));
        }
        out
    }
}

impl FromIterator<BranchEntry> for BranchOverrides {
    fn from_iter<I: IntoIterator<Item = BranchEntry>>(iter: I) -> Self {
        BranchOverrides {
            entries: iter.into_iter().collect(),
        }
    }
}

fn parse_line(line: &str) -> Result<BranchEntry, String> {
    let (key, index) = line
        .split_once('=')
        .ok_or_else(|| format!("expected `N, alpha = index`, got {line:?}"))?;
    let (dim, alpha) = key
        .split_once(',')
        .ok_or_else(|| format!("expected `N, alpha` before '=', got {key:?}"))?;
    let dim: u32 = dim
        .trim()
        .parse()
        .map_err(|_| format!("invalid dimension {:?}", dim.trim()))?;
    let alpha: f64 = alpha
        .trim()
        .parse()
        .map_err(|_| format!("invalid order {:?}", alpha.trim()))?;
    let index: usize = index
        .trim()
        .parse()
        .map_err(|_| format!("invalid root index {:?}", index.trim()))?;
    if dim < 2 {
        return Err(format!("dimension {dim} must be at least 2"));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(format!("order {alpha} not in (0, 1]"));
    }
    Ok(BranchEntry { dim, alpha, index })
}

/// Parses a branch file. Blank lines and `#` comments are skipped; a repeated
/// `(N, alpha)` pair is an error.
pub fn parse_branch_file(text: &str, origin: &str) -> CliResult<BranchOverrides> {
    let mut out = BranchOverrides::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| CliError::Parse {
            path: origin.to_string(),
            line: i + 1,
            msg,
        };
        let entry = parse_line(line).map_err(err)?;
        if out.lookup(entry.dim, entry.alpha).is_some() {
            return Err(err(format!(
                "duplicate entry for N={}, alpha={}",
                entry.dim, entry.alpha
            )));
        }
        out.entries.push(entry);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_looks_up() {
        let text = "# header\n3, 0.85 = 1\n 4 ,1.0= 0 # trailing\n\n";
        let b = parse_branch_file(text, "b").unwrap();
        assert_eq!(b.entries().len(), 2);
        assert_eq!(b.lookup(3, 0.85), Some(1));
        assert_eq!(b.lookup(4, 1.0), Some(0));
        assert_eq!(b.lookup(5, 1.0), None);
    }

    #[test]
    fn rejects_malformed_lines() {
        for bad in [
            "3 0.85 = 1",
            "3, 0.85",
            "x, 0.85 = 1",
            "3, 1.5 = 0",
            "1, 0.5 = 0",
            "3, 0.5 = -1",
            "3, 0.5 = 0\n3, 0.5 = 1",
        ] {
            assert!(parse_branch_file(bad, "b").is_err(), "{bad}");
        }
    }

    #[test]
    fn text_round_trip() {
        let b: BranchOverrides = [
            BranchEntry {
                dim: 3,
                alpha: 0.7,
                index: 2,
            },
            BranchEntry {
                dim: 5,
                alpha: 0.95,
                index: 0,
            },
        ]
        .into_iter()
        .collect();
        assert_eq!(parse_branch_file(&b.to_text(), "b").unwrap(), b);
    }
}
