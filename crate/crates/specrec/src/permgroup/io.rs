use super::permutation::{parse_cycles_at, Permutation};
use crate::error::{Error, Result};
use num_bigint::BigUint;
use std::path::Path;

/// Contents of a generator file.
#[derive(Clone, Debug)]
pub struct GeneratorFile {
    pub degree: usize,
    pub generators: Vec<Permutation>,
    /// `#` comment lines, without the marker, in file order.
    pub comments: Vec<String>,
}

impl GeneratorFile {
    /// Order stated by an `# order N` comment, if any.
    pub fn declared_order(&self) -> Option<BigUint> {
        self.comments
            .iter()
            .find_map(|c| c.strip_prefix("order ")?.trim().parse().ok())
    }
}

/// Parses the generator format: line 1 is `degree N`, then one generator per
/// non-empty, non-`#` line in 1-based cycle notation.
pub fn parse_generator_file(text: &str) -> Result<GeneratorFile> {
    let mut degree: Option<usize> = None;
    let mut generators = Vec::new();
    let mut comments = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if idx == 0 && !line.starts_with("degree") {
            return Err(Error::parse(1, 1, "line 1 must be `degree N`"));
        }
        if let Some(c) = line.strip_prefix('#') {
            comments.push(c.trim().to_string());
            continue;
        }
        if line.is_empty() {
            continue;
        }
        match degree {
            None => {
                let rest = line
                    .strip_prefix("degree")
                    .ok_or_else(|| Error::parse(line_no, 1, "expected `degree N`"))?;
                let n: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(line_no, 8, "degree must be a positive integer"))?;
                if n == 0 {
                    return Err(Error::parse(line_no, 8, "degree must be positive"));
                }
                degree = Some(n);
            }
            Some(n) => generators.push(parse_cycles_at(line, n, line_no)?),
        }
    }
    let degree = degree.ok_or_else(|| Error::parse(1, 1, "missing `degree N` line"))?;
    Ok(GeneratorFile {
        degree,
        generators,
        comments,
    })
}

pub fn read_generator_file(path: &Path) -> Result<GeneratorFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_generator_file(&text)
}

/// Serialises generators in the same format, without comments.
pub fn format_generator_file(degree: usize, generators: &[Permutation]) -> String {
    let mut out = format!("degree {degree}\n");
    for g in generators {
        out.push_str(&g.to_cycle_string());
        out.push('\n');
    }
    out
}
