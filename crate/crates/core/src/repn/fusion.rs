//! Multiplicities of simple objects: ballot numbers, Clebsch-Gordan rules and
//! their truncation at a root of unity.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::diagram::catalan;
use crate::error::{Error, Result};

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k as u128 {
        c = c * (n as u128 - i) / (i + 1);
    }
    c
}

/// Multiplicity of `X_{n-2j}` in `X^{⊗n}`: `C(n, j) - C(n, j-1)`.
pub fn ballot(n: usize, j: usize) -> Result<u128> {
    if j > n / 2 {
        return Err(Error::IndexOutOfRange(format!(
            "ballot({n}, {j}) needs j <= {}",
            n / 2
        )));
    }
    let prev = if j == 0 { 0 } else { binomial(n as u64, j as u64 - 1) };
    Ok(binomial(n as u64, j as u64) - prev)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BallotTable {
    pub n: usize,
    /// `j -> ballot(n, j)`.
    pub entries: BTreeMap<usize, u128>,
}

impl BallotTable {
    /// `(simple index, multiplicity)` in decreasing index order.
    pub fn summands(&self) -> Vec<(usize, u128)> {
        self.entries.iter().map(|(&j, &m)| (self.n - 2 * j, m)).collect()
    }

    pub fn multiplicity(&self, simple: usize) -> u128 {
        if simple > self.n || !(self.n - simple).is_multiple_of(2) {
            return 0;
        }
        self.entries.get(&((self.n - simple) / 2)).copied().unwrap_or(0)
    }
}

impl fmt::Display for BallotTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .summands()
            .into_iter()
            .map(|(k, m)| if m == 1 { format!("X{k}") } else { format!("{m} X{k}") })
            .collect();
        write!(f, "X^{} = {}", self.n, parts.join(" + "))
    }
}

pub fn decompose_power(n: usize) -> BallotTable {
    let entries = (0..=n / 2)
        .map(|j| (j, ballot(n, j).expect("j in range")))
        .collect();
    BallotTable { n, entries }
}

/// `(sum_j ballot(n, j)^2, Catalan(n))`.
pub fn catalan_identity_check(n: usize) -> (u128, u128) {
    let lhs = (0..=n / 2)
        .map(|j| ballot(n, j).expect("j in range").pow(2))
        .sum();
    (lhs, catalan(n))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FusionResult {
    /// `(simple index, multiplicity)`, sorted by index.
    pub summands: Vec<(usize, u64)>,
}

impl FusionResult {
    pub fn indices(&self) -> Vec<usize> {
        self.summands.iter().map(|&(s, _)| s).collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{:>6}  {:>12}\n", "simple", "multiplicity");
        for (k, m) in &self.summands {
            s.push_str(&format!("{k:>6}  {m:>12}\n"));
        }
        s
    }
}

impl fmt::Display for FusionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|&(k, m)| if m == 1 { format!("X{k}") } else { format!("{m} X{k}") })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

fn run(lo: usize, hi: usize) -> FusionResult {
    FusionResult {
        summands: (lo..=hi).step_by(2).map(|s| (s, 1)).collect(),
    }
}

/// `X_j ⊗ X_k = X_{|j-k|} ⊕ X_{|j-k|+2} ⊕ ... ⊕ X_{j+k}`.
pub fn clebsch_gordan(j: usize, k: usize) -> FusionResult {
    run(j.abs_diff(k), j + k)
}

/// The rule at level `l`: the top summand is `j + k` if `j + k <= l - 2`,
/// otherwise `2(l - 2) - (j + k)`.
pub fn truncated_fusion(j: usize, k: usize, l: usize) -> Result<FusionResult> {
    if l < 3 {
        return Err(Error::IndexOutOfRange(format!("truncation level {l} < 3")));
    }
    let cap = l - 2;
    if j > cap || k > cap {
        return Err(Error::IndexOutOfRange(format!(
            "X{j} (x) X{k} at level {l}: indices must be <= {cap}"
        )));
    }
    let top = if j + k <= cap { j + k } else { 2 * cap - (j + k) };
    Ok(run(j.abs_diff(k), top))
}

/// Multiplicities in `X^{⊗n}` from the recursion `X_k ⊗ X = X_{k-1} ⊕ X_{k+1}`,
/// truncated at level `l` when given (`X_{l-2} ⊗ X = X_{l-3}`).
pub fn power_decomposition(n: usize, l: Option<usize>) -> Result<BTreeMap<usize, u128>> {
    if let Some(l) = l {
        if l < 3 {
            return Err(Error::IndexOutOfRange(format!("truncation level {l} < 3")));
        }
    }
    let cap = l.map_or(usize::MAX, |l| l - 2);
    let mut cur: BTreeMap<usize, u128> = BTreeMap::from([(0, 1)]);
    for _ in 0..n {
        let mut next = BTreeMap::new();
        for (&k, &m) in &cur {
            if k >= 1 {
                *next.entry(k - 1).or_insert(0) += m;
            }
            if k < cap {
                *next.entry(k + 1).or_insert(0) += m;
            }
        }
        cur = next;
    }
    Ok(cur)
}
