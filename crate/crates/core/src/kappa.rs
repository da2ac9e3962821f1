//! Pure kappa-class integrals over `M_g`.
//!
//! Forgetting `m` points pushes `prod psi_i^{a_i+1}` forward to the sum over
//! permutations of products of kappa classes indexed by cycle sums. Grouping
//! permutations by the set partition formed by their cycles gives
//!
//! ```text
//! <tau_{a_1+1} ... tau_{a_m+1}>_g = sum_P prod_{B in P} (|B|-1)! * K(g; {sum_{i in B} a_i})
//! ```
//!
//! which is triangular in the number of blocks and is inverted here.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::scalar::Scalar;
use crate::tau::{Evaluator, Memo, TauSpec};

/// Argument of `int_{M_g} kappa_{a_1} ... kappa_{a_m}`; indices sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KappaSpec {
    genus: u32,
    indices: Vec<u32>,
}

impl KappaSpec {
    pub fn new(genus: u32, mut indices: Vec<u32>) -> Result<Self> {
        if genus < 2 {
            return Err(domain(format!("kappa integrals over M_g need g >= 2, got {genus}")));
        }
        if indices.iter().any(|&a| a < 1) {
            return Err(domain("kappa indices must be >= 1"));
        }
        indices.sort_unstable();
        Ok(KappaSpec { genus, indices })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    /// `sum a_i = 3g - 3`.
    pub fn is_dimension_valid(&self) -> bool {
        self.indices.iter().map(|&a| a as u64).sum::<u64>() == 3 * self.genus as u64 - 3
    }

    /// The psi correlator `<tau_{a_1+1} ... tau_{a_m+1}>_g` pushed forward to this integral.
    pub fn psi_spec(&self) -> TauSpec {
        TauSpec::new(self.genus, self.indices.iter().map(|&a| a + 1).collect())
    }
}

impl fmt::Debug for KappaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for KappaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K_{}(", self.genus)?;
        for (i, a) in self.indices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// A set partition of `{0, ..., m-1}`; blocks ordered by least element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetPartition {
    pub blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Number of permutations whose cycles are exactly these blocks.
    pub fn permutation_count(&self) -> u64 {
        self.blocks
            .iter()
            .map(|b| (1..b.len() as u64).product::<u64>())
            .product()
    }

    /// Merged indices `{sum_{i in B} a_i : B}`, sorted.
    pub fn merge(&self, indices: &[u32]) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&i| indices[i]).sum())
            .collect();
        out.sort_unstable();
        out
    }
}

/// Restricted-growth-string enumeration of the set partitions of an `m`-set.
#[derive(Debug, Clone)]
pub struct SetPartitions {
    // labels[i] is the block of element i; labels[i] <= 1 + max(labels[..i])
    labels: Option<Vec<usize>>,
}

impl Iterator for SetPartitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        let labels = self.labels.as_mut()?;
        let block_count = labels.iter().max().map_or(0, |&b| b + 1);
        let mut blocks = vec![Vec::new(); block_count];
        for (i, &b) in labels.iter().enumerate() {
            blocks[b].push(i);
        }
        // advance: bump the rightmost label that may grow, reset the tail to 0
        let m = labels.len();
        let mut prefix_max = vec![0usize; m];
        for i in 1..m {
            prefix_max[i] = prefix_max[i - 1].max(labels[i - 1]);
        }
        match (1..m).rev().find(|&i| labels[i] <= prefix_max[i]) {
            Some(i) => {
                labels[i] += 1;
                for l in &mut labels[i + 1..] {
                    *l = 0;
                }
            }
            None => self.labels = None,
        }
        Some(SetPartition { blocks })
    }
}

pub fn set_partitions(m: usize) -> Result<SetPartitions> {
    if m < 1 {
        return Err(domain("set partitions need m >= 1"));
    }
    Ok(SetPartitions {
        labels: Some(vec![0; m]),
    })
}

/// Memoizing evaluator of kappa integrals, backed by a psi evaluator.
#[derive(Debug)]
pub struct KappaEvaluator<'a, S> {
    tau: &'a Evaluator<S>,
    memo: Memo<KappaSpec, S>,
}

impl<'a, S: Scalar> KappaEvaluator<'a, S> {
    pub fn new(tau: &'a Evaluator<S>) -> Self {
        KappaEvaluator { tau, memo: Memo::new() }
    }

    pub fn tau(&self) -> &'a Evaluator<S> {
        self.tau
    }

    /// `int_{M_g} kappa_{a_1} ... kappa_{a_m}` by triangular inversion.
    pub fn kappa_integral(&self, spec: &KappaSpec) -> Result<S> {
        check_dimension(spec)?;
        Ok(self.value(spec))
    }

    fn value(&self, spec: &KappaSpec) -> S {
        if let Some(v) = self.memo.get(spec) {
            return v;
        }
        let m = spec.indices.len();
        let mut v = self.tau.value(&spec.psi_spec());
        for p in set_partitions(m).expect("m >= 1") {
            if p.blocks.len() == m {
                continue;
            }
            let merged = KappaSpec {
                genus: spec.genus,
                indices: p.merge(&spec.indices),
            };
            v = v - S::from_u64(p.permutation_count()) * self.value(&merged);
        }
        self.memo.insert(spec.clone(), v)
    }

    /// Right-hand side of the pushforward identity: the sum over set
    /// partitions of the kappa integrals, which must reproduce the psi
    /// correlator `<tau_{a_1+1} ... tau_{a_m+1}>_g`.
    pub fn psi_from_kappa_identity(&self, genus: u32, indices: &[u32]) -> Result<S> {
        let spec = KappaSpec::new(genus, indices.to_vec())?;
        check_dimension(&spec)?;
        let mut total = S::zero();
        for p in set_partitions(indices.len())? {
            let merged = KappaSpec {
                genus,
                indices: p.merge(&spec.indices),
            };
            total = total + S::from_u64(p.permutation_count()) * self.value(&merged);
        }
        Ok(total)
    }
}

fn check_dimension(spec: &KappaSpec) -> Result<()> {
    if spec.indices.is_empty() || !spec.is_dimension_valid() {
        return Err(domain(format!(
            "{spec}: indices must sum to 3g-3 = {}",
            3 * spec.genus - 3
        )));
    }
    Ok(())
}

/// Every dimension-valid kappa spec of genus `g` (partitions of `3g - 3`).
pub fn enumerate_kappa_specs(genus: u32) -> Result<Vec<KappaSpec>> {
    if genus < 2 {
        return Err(domain(format!("kappa specs need g >= 2, got {genus}")));
    }
    let mut out = Vec::new();
    integer_partitions(3 * genus - 3, 3 * genus - 3, &mut Vec::new(), &mut |parts| {
        out.push(KappaSpec {
            genus,
            indices: parts.iter().rev().copied().collect(),
        })
    });
    Ok(out)
}

// Partitions of `rest` into parts <= `max`, parts emitted in non-increasing order.
fn integer_partitions(rest: u32, max: u32, parts: &mut Vec<u32>, emit: &mut impl FnMut(&[u32])) {
    if rest == 0 {
        emit(parts);
        return;
    }
    for p in (1..=max.min(rest)).rev() {
        parts.push(p);
        integer_partitions(rest - p, p, parts, emit);
        parts.pop();
    }
}
