use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Argument of a correlator `<tau_{d_1} ... tau_{d_n}>_g`.
///
/// Exponents are kept sorted non-decreasing, so two specs compare equal
/// exactly when they describe the same correlator.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TauSpec {
    genus: u32,
    exponents: Vec<u32>,
}

impl TauSpec {
    /// Builds a spec from unsorted exponents.
    pub fn new(genus: u32, mut exponents: Vec<u32>) -> Self {
        exponents.sort_unstable();
        TauSpec { genus, exponents }
    }

    /// Caller guarantees `exponents` is already sorted.
    pub(crate) fn from_sorted(genus: u32, exponents: Vec<u32>) -> Self {
        debug_assert!(exponents.windows(2).all(|w| w[0] <= w[1]));
        TauSpec { genus, exponents }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn n(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> u64 {
        self.exponents.iter().map(|&d| d as u64).sum()
    }

    /// `2g - 2 + n >= 1`.
    pub fn is_stable(&self) -> bool {
        2 * self.genus as i64 - 2 + self.n() as i64 >= 1
    }

    /// `sum d_i = 3g - 3 + n`.
    pub fn has_valid_degree(&self) -> bool {
        self.degree() as i64 == 3 * self.genus as i64 - 3 + self.n() as i64
    }

    /// Stable and of the right degree, i.e. the correlator is a genuine
    /// top-degree integral over `M_{g,n}`.
    pub fn is_dimension_valid(&self) -> bool {
        self.is_stable() && self.has_valid_degree()
    }

    pub fn contains(&self, exponent: u32) -> bool {
        self.exponents.binary_search(&exponent).is_ok()
    }

    /// The spec with one copy of `exponent` removed, if present.
    pub fn without(&self, exponent: u32) -> Option<TauSpec> {
        let pos = self.exponents.binary_search(&exponent).ok()?;
        let mut rest = self.exponents.clone();
        rest.remove(pos);
        Some(TauSpec::from_sorted(self.genus, rest))
    }

    /// The spec with the exponent at `index` replaced, re-sorted.
    pub fn replaced(&self, index: usize, exponent: u32) -> TauSpec {
        let mut e = self.exponents.clone();
        e[index] = exponent;
        TauSpec::new(self.genus, e)
    }
}

/// Validating constructor for user input.
pub fn normalize(genus: i64, exponents: &[i64]) -> Result<TauSpec> {
    if genus < 0 {
        return Err(domain(format!("negative genus {genus}")));
    }
    let genus = u32::try_from(genus).map_err(|_| domain(format!("genus {genus} out of range")))?;
    let exponents = exponents
        .iter()
        .map(|&d| {
            if d < 0 {
                Err(domain(format!("negative exponent {d}")))
            } else {
                u32::try_from(d).map_err(|_| domain(format!("exponent {d} out of range")))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TauSpec::new(genus, exponents))
}

pub fn dimension_valid(spec: &TauSpec) -> bool {
    spec.is_dimension_valid()
}

// Canonical order: genus, then number of points, then exponents lexicographically.
impl Ord for TauSpec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.genus
            .cmp(&other.genus)
            .then(self.n().cmp(&other.n()))
            .then_with(|| self.exponents.cmp(&other.exponents))
    }
}

impl PartialOrd for TauSpec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for TauSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TauSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, d) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "t{d}")?;
        }
        write!(f, ">_{}", self.genus)
    }
}

/// Lexicographic stream of every sorted exponent tuple of length `n`, with
/// entries `>= min_exponent`, summing to `3g - 3 + n`.
#[derive(Debug, Clone)]
pub struct SpecEnumerator {
    genus: u32,
    current: Option<Vec<u32>>,
}

impl Iterator for SpecEnumerator {
    type Item = TauSpec;

    fn next(&mut self) -> Option<TauSpec> {
        let current = self.current.as_mut()?;
        let out = TauSpec::from_sorted(self.genus, current.clone());
        if !advance(current) {
            self.current = None;
        }
        Some(out)
    }
}

// Moves a sorted tuple to its lexicographic successor with the same sum,
// keeping every entry at least as large as the entry before it.
fn advance(d: &mut [u32]) -> bool {
    let n = d.len();
    if n < 2 {
        return false;
    }
    let total: u64 = d.iter().map(|&x| x as u64).sum();
    // Find the rightmost i < n-1 such that bumping d[i] and filling the tail
    // with d[i]+1 (the last entry absorbing the rest) stays sorted.
    for i in (0..n - 1).rev() {
        let head: u64 = d[..i].iter().map(|&x| x as u64).sum();
        let v = d[i] as u64 + 1;
        let tail_len = (n - i) as u64;
        if head + v * tail_len <= total {
            for x in d[i..n - 1].iter_mut() {
                *x = v as u32;
            }
            d[n - 1] = (total - head - v * (tail_len - 1)) as u32;
            return true;
        }
    }
    false
}

/// Enumerates the dimension-valid specs of `M_{g,n}` with every exponent at
/// least `min_exponent`. Infeasible or unstable constraints give an empty
/// stream.
pub fn enumerate_specs(genus: u32, n: usize, min_exponent: u32) -> SpecEnumerator {
    let total = 3 * genus as i64 - 3 + n as i64;
    let stable = 2 * genus as i64 - 2 + n as i64 >= 1;
    let feasible = stable && total >= min_exponent as i64 * n as i64 && (n > 0 || total == 0);
    let current = feasible.then(|| {
        let mut d = vec![min_exponent; n];
        if n > 0 {
            d[n - 1] = (total - min_exponent as i64 * (n as i64 - 1)) as u32;
        }
        d
    });
    SpecEnumerator { genus, current }
}
