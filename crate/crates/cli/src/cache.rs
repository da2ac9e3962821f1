//! Persistent memo tables.
//!
//! ```text
//! WKCACHE v1
//! 0;0,0,0;1/1
//! 1;1;1/24
//! 2;2,3;29/5760
//! ```
//!
//! Records are sorted by genus, then number of points, then exponents, so
//! a table has exactly one serialization.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;
use wk_core::{Rational, TauEvaluator, TauSpec};

pub const HEADER: &str = "WKCACHE v1";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("unsupported cache header {found:?}, expected {HEADER:?}")]
    Version { found: String },
    #[error("line {line}: {reason}")]
    Record { line: usize, reason: String },
}

pub type Table = Vec<(TauSpec, Rational)>;

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CacheError + '_ {
    move |source| CacheError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Canonical text of a table.
pub fn render(table: &[(TauSpec, Rational)]) -> String {
    let mut sorted: Vec<&(TauSpec, Rational)> = table.iter().collect();
    sorted.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out = String::with_capacity(32 * (sorted.len() + 1));
    out.push_str(HEADER);
    out.push('\n');
    for (spec, value) in sorted {
        let exps: Vec<String> = spec.exponents().iter().map(u32::to_string).collect();
        out.push_str(&format!(
            "{};{};{}/{}\n",
            spec.genus(),
            exps.join(","),
            value.numer(),
            value.denom()
        ));
    }
    out
}

pub fn parse(text: &str) -> Result<Table, CacheError> {
    let mut lines = text.lines();
    let header = lines.next().unwrap_or("");
    if header != HEADER {
        return Err(CacheError::Version {
            found: header.to_string(),
        });
    }
    let mut table: Table = Vec::new();
    for (i, line) in lines.enumerate() {
        let line_no = i + 2;
        let bad = |reason: String| CacheError::Record { line: line_no, reason };
        let (spec, value) = parse_record(line).map_err(bad)?;
        if let Some((prev, _)) = table.last() {
            if *prev >= spec {
                return Err(bad(format!("{spec} is out of canonical order or repeated")));
            }
        }
        table.push((spec, value));
    }
    Ok(table)
}

fn parse_record(line: &str) -> Result<(TauSpec, Rational), String> {
    let fields: Vec<&str> = line.split(';').collect();
    let [g, exps, value] = fields[..] else {
        return Err(format!("expected 3 ';'-separated fields, got {}", fields.len()));
    };
    let genus: u32 = g.parse().map_err(|_| format!("bad genus {g:?}"))?;
    let exponents = if exps.is_empty() {
        Vec::new()
    } else {
        exps.split(',')
            .map(|e| e.parse::<u32>().map_err(|_| format!("bad exponent {e:?}")))
            .collect::<Result<Vec<_>, _>>()?
    };
    if exponents.windows(2).any(|w| w[0] > w[1]) {
        return Err(format!("exponents {exps:?} are not sorted"));
    }
    let spec = TauSpec::new(genus, exponents);
    if !spec.is_dimension_valid() {
        return Err(format!("{spec} is not dimension-valid"));
    }
    let (num, den) = value
        .split_once('/')
        .ok_or_else(|| format!("value {value:?} is not num/den"))?;
    let num: BigInt = num.parse().map_err(|_| format!("bad numerator {num:?}"))?;
    let den: BigInt = den.parse().map_err(|_| format!("bad denominator {den:?}"))?;
    if !num.is_positive() || !den.is_positive() {
        return Err(format!("value {value} is not positive"));
    }
    let q = Rational::new(num.clone(), den.clone());
    if *q.numer() != num || *q.denom() != den {
        return Err(format!("value {value} is not in lowest terms"));
    }
    if spec.genus() == 0 || spec.n() == 1 {
        // cheap closed forms; catches tampering of these records
        let expected = closed_form(&spec);
        if q != expected {
            return Err(format!("{spec} = {expected}, file says {value}"));
        }
    }
    Ok((spec, q))
}

fn closed_form(spec: &TauSpec) -> Rational {
    if spec.genus() == 0 {
        return wk_core::tau::genus0_closed_form(spec.exponents()).expect("dimension-valid");
    }
    let g = spec.genus() as u64;
    let den = wk_core::scalar::factorial(g) * num_bigint::BigUint::from(24u32).pow(spec.genus());
    Rational::new(BigInt::one(), den.into())
}

/// Recomputes every record from scratch; returns the line of the first mismatch.
pub fn verify(table: &[(TauSpec, Rational)]) -> Result<(), CacheError> {
    let ev = TauEvaluator::new();
    for (i, (spec, value)) in table.iter().enumerate() {
        let actual = ev.intersection(spec).expect("validated on load");
        if actual != *value {
            return Err(CacheError::Record {
                line: i + 2,
                reason: format!("{spec} = {actual}, file says {value}"),
            });
        }
    }
    Ok(())
}

pub fn load(path: &Path) -> Result<Table, CacheError> {
    parse(&fs::read_to_string(path).map_err(io_err(path))?)
}

/// Writes to a temporary file next to `path`, then renames it into place.
pub fn save(path: &Path, table: &[(TauSpec, Rational)]) -> Result<(), CacheError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err(path))?;
    tmp.write_all(render(table).as_bytes()).map_err(io_err(path))?;
    tmp.persist(path).map_err(|e| io_err(path)(e.error))?;
    Ok(())
}
