//! Jones-Wenzl idempotents by Wenzl's recursion
//! `f_{k+1} = f_k ⊗ 1 - ([k]/[k+1]) (f_k ⊗ 1) h_k (f_k ⊗ 1)`,
//! and the Frobenius pair `φ_n`, `ψ_n` relating `f_{n-1}` and `f_n`.

use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::scalar::{BackendKind, Field, ScalarBackend};
use crate::words::diagram_to_reduced;

pub const DEFAULT_MAX_LEVEL_EXACT: usize = 8;
pub const DEFAULT_MAX_LEVEL_FLOAT: usize = 10;

/// `[k]` computed from the loop value: `[0] = 0`, `[1] = 1`, `[k+1] = d[k] - [k-1]`.
/// Agrees with the `q`-formula whenever `d = q + q^-1`.
pub fn loop_integer<S: Field>(backend: &ScalarBackend<S>, k: usize) -> S {
    let (mut a, mut b) = (backend.zero(), backend.one());
    if k == 0 {
        return a;
    }
    for _ in 1..k {
        let next = backend.d.mul(&b).sub(&a);
        a = b;
        b = next;
    }
    b
}

#[derive(Clone, Debug, PartialEq)]
pub struct JonesWenzl<S: Field> {
    pub level: usize,
    pub morphism: Arc<Morphism<S>>,
}

impl<S: Field> JonesWenzl<S> {
    pub fn kind(&self) -> BackendKind {
        S::KIND
    }
}

/// `ψ_n ∘ φ_n = λ_n f_{n-1}` with `λ_n = tr(f_n) / tr(f_{n-1})`.
#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusPair<S: Field> {
    pub level: usize,
    /// `X^{n-1} -> X^{n+1}`.
    pub phi: Morphism<S>,
    /// `X^{n+1} -> X^{n-1}`.
    pub psi: Morphism<S>,
    pub lambda: S,
}

/// Memoized construction of `f_0, f_1, ...` for one backend.
pub struct JonesWenzlBuilder<S: Field> {
    backend: Arc<ScalarBackend<S>>,
    max_level: usize,
    levels: Mutex<Vec<Arc<Morphism<S>>>>,
}

impl<S: Field> JonesWenzlBuilder<S> {
    pub fn new(backend: &Arc<ScalarBackend<S>>) -> Self {
        let max_level = if S::KIND == BackendKind::Float {
            DEFAULT_MAX_LEVEL_FLOAT
        } else {
            DEFAULT_MAX_LEVEL_EXACT
        };
        Self {
            backend: backend.clone(),
            max_level,
            levels: Mutex::new(vec![Arc::new(Morphism::identity(backend, 0))]),
        }
    }

    pub fn with_max_level(mut self, max_level: usize) -> Self {
        self.max_level = max_level;
        self
    }

    pub fn backend(&self) -> &Arc<ScalarBackend<S>> {
        &self.backend
    }

    pub fn get(&self, k: usize) -> Result<JonesWenzl<S>> {
        Ok(JonesWenzl {
            level: k,
            morphism: self.morphism(k)?,
        })
    }

    pub fn morphism(&self, k: usize) -> Result<Arc<Morphism<S>>> {
        if k > self.max_level {
            return Err(Error::SizeLimit {
                pairs: k,
                limit: self.max_level,
            });
        }
        let mut levels = self.levels.lock().expect("jones-wenzl cache poisoned");
        while levels.len() <= k {
            let j = levels.len() - 1;
            let next = self.step(&levels[j], j)?;
            levels.push(Arc::new(next));
        }
        Ok(levels[k].clone())
    }

    /// `f_{j+1}` from `f_j`.
    fn step(&self, f: &Morphism<S>, j: usize) -> Result<Morphism<S>> {
        let b = &self.backend;
        let f1 = f.tensor(&Morphism::identity(b, 1))?;
        if j == 0 {
            return Ok(f1);
        }
        let denom = loop_integer(b, j + 1);
        let ratio = loop_integer(b, j)
            .div(&denom)
            .map_err(|_| Error::VanishingQuantumInteger(j as i64 + 1))?;
        let h = Morphism::elementary(b, j + 1, j)?;
        let sandwich = f1.compose(&h)?.compose(&f1)?;
        f1.sub(&sandwich.scale(&ratio))
    }

    pub fn trace(&self, k: usize) -> Result<S> {
        self.morphism(k)?.markov_trace()
    }

    pub fn frobenius_pair(&self, n: usize) -> Result<FrobeniusPair<S>> {
        if n == 0 {
            return Err(Error::IndexOutOfRange("Frobenius pair needs n >= 1".into()));
        }
        let b = &self.backend;
        let f_n = self.morphism(n)?;
        let f_prev = self.morphism(n - 1)?;
        let f_n1 = f_n.tensor(&Morphism::identity(b, 1))?;
        let id_prev = Morphism::identity(b, n - 1);
        let cup = id_prev.tensor(&Morphism::cup(b))?;
        let cap = id_prev.tensor(&Morphism::cap(b))?;
        let phi = Morphism::compose_all(&[&f_n1, &cup, &f_prev])?;
        let psi = Morphism::compose_all(&[&f_prev, &cap, &f_n1])?;
        let lambda = f_n
            .markov_trace()?
            .div(&f_prev.markov_trace()?)
            .map_err(|_| Error::VanishingQuantumInteger(n as i64))?;
        Ok(FrobeniusPair {
            level: n,
            phi,
            psi,
            lambda,
        })
    }

    /// `f_{n+1} = f_n ⊗ 1 - (tr f_{n-1} / tr f_n) φ_n ψ_n`.
    pub fn wenzl_from_frobenius(&self, n: usize) -> Result<Morphism<S>> {
        let pair = self.frobenius_pair(n)?;
        let b = &self.backend;
        let f_n1 = self.morphism(n)?.tensor(&Morphism::identity(b, 1))?;
        let ratio = pair
            .lambda
            .inv()
            .ok_or(Error::VanishingQuantumInteger(n as i64 + 1))?;
        f_n1.sub(&pair.phi.compose(&pair.psi)?.scale(&ratio))
    }
}

pub fn jones_wenzl<S: Field>(k: usize, backend: &Arc<ScalarBackend<S>>) -> Result<JonesWenzl<S>> {
    JonesWenzlBuilder::new(backend).get(k)
}

pub fn jw_trace<S: Field>(k: usize, backend: &Arc<ScalarBackend<S>>) -> Result<S> {
    JonesWenzlBuilder::new(backend).trace(k)
}

pub fn frobenius_pair<S: Field>(
    n: usize,
    backend: &Arc<ScalarBackend<S>>,
) -> Result<FrobeniusPair<S>> {
    JonesWenzlBuilder::new(backend).frobenius_pair(n)
}

pub fn wenzl_from_frobenius<S: Field>(
    n: usize,
    backend: &Arc<ScalarBackend<S>>,
) -> Result<Morphism<S>> {
    JonesWenzlBuilder::new(backend).wenzl_from_frobenius(n)
}

/// One line per term: the reduced word of the diagram, then its coefficient.
pub fn pretty_terms<S: Field>(f: &Morphism<S>) -> Result<String> {
    let mut rows = Vec::new();
    for (d, c) in f.terms() {
        let nf = diagram_to_reduced(d)?;
        let word = if nf.is_empty() {
            "1".to_string()
        } else {
            nf.blocks
                .iter()
                .map(|(i, j)| {
                    (*j..=*i)
                        .rev()
                        .map(|k| format!("h{k}"))
                        .collect::<Vec<_>>()
                        .join("")
                })
                .collect::<Vec<_>>()
                .join(" ")
        };
        rows.push((word, c.to_string()));
    }
    let width = rows.iter().map(|(w, _)| w.len()).max().unwrap_or(0);
    Ok(rows
        .into_iter()
        .map(|(w, c)| format!("{w:<width$}  {c}\n"))
        .collect())
}
