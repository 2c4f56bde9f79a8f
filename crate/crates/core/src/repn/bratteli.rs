//! The Bratteli diagram of the tower `End(X^0) ⊂ End(X^1) ⊂ ...`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BratteliDiagram {
    /// Simple indices present at each level, in decreasing order.
    pub levels: Vec<Vec<usize>>,
    /// `edges[t][a][b]`: edges from `levels[t][a]` to `levels[t + 1][b]`.
    pub edges: Vec<Vec<Vec<u8>>>,
    pub truncation: Option<usize>,
}

/// Levels `0..=n`; with truncation `l`, only indices up to `l - 2` appear.
pub fn bratteli(n: usize, l: Option<usize>) -> Result<BratteliDiagram> {
    if let Some(l) = l {
        if l < 3 {
            return Err(Error::IndexOutOfRange(format!("truncation level {l} < 3")));
        }
    }
    let cap = l.map_or(usize::MAX, |l| l - 2);
    let levels: Vec<Vec<usize>> = (0..=n)
        .map(|t| {
            (0..=t)
                .rev()
                .filter(|k| (t - k) % 2 == 0 && *k <= cap)
                .collect()
        })
        .collect();
    let edges = levels
        .windows(2)
        .map(|w| {
            w[0].iter()
                .map(|&a| {
                    w[1].iter()
                        .map(|&b| u8::from(a.abs_diff(b) == 1))
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok(BratteliDiagram {
        levels,
        edges,
        truncation: l,
    })
}

impl BratteliDiagram {
    /// Number of paths from the root to each vertex of `level`, paired with its index.
    pub fn dimensions(&self, level: usize) -> Vec<(usize, u128)> {
        let mut counts = vec![1u128];
        for t in 0..level {
            let next: Vec<u128> = (0..self.levels[t + 1].len())
                .map(|b| {
                    (0..self.levels[t].len())
                        .map(|a| counts[a] * self.edges[t][a][b] as u128)
                        .sum()
                })
                .collect();
            counts = next;
        }
        self.levels[level].iter().copied().zip(counts).collect()
    }

    /// Graphviz form: one `rank=same` subgraph per level, nodes `X{k}@{level}`.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph bratteli {\n  rankdir=TB;\n  node [shape=circle];\n");
        for (t, level) in self.levels.iter().enumerate() {
            let _ = write!(s, "  subgraph level_{t} {{\n    rank=same;\n");
            for k in level {
                let _ = writeln!(s, "    \"X{k}@{t}\" [label=\"X{k}\"];");
            }
            s.push_str("  }\n");
        }
        for (t, block) in self.edges.iter().enumerate() {
            for (a, row) in block.iter().enumerate() {
                for (b, &mult) in row.iter().enumerate() {
                    for _ in 0..mult {
                        let _ = writeln!(
                            s,
                            "  \"X{}@{}\" -> \"X{}@{}\";",
                            self.levels[t][a],
                            t,
                            self.levels[t + 1][b],
                            t + 1
                        );
                    }
                }
            }
        }
        s.push_str("}\n");
        s
    }
}
