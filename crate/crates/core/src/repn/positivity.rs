use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::diagram::Diagram;
use crate::error::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", content = "level", rename_all = "snake_case")]
pub enum Verdict {
    Admissible,
    Violated(usize),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelReport {
    pub strands: usize,
    pub dimension: usize,
    pub min_eigenvalue: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PositivityReport {
    pub d_value: f64,
    pub tolerance: f64,
    pub levels: Vec<LevelReport>,
    pub verdict: Verdict,
}

impl PositivityReport {
    pub fn to_text(&self) -> String {
        let mut s = format!("d = {}  tolerance = {:e}\n", self.d_value, self.tolerance);
        s.push_str(&format!("{:>7}  {:>9}  {:>22}\n", "strands", "dimension", "min eigenvalue"));
        for l in &self.levels {
            s.push_str(&format!(
                "{:>7}  {:>9}  {:>22.15e}\n",
                l.strands, l.dimension, l.min_eigenvalue
            ));
        }
        match self.verdict {
            Verdict::Admissible => s.push_str("verdict: admissible\n"),
            Verdict::Violated(k) => s.push_str(&format!("verdict: violated at {k} strands\n")),
        }
        s
    }
}

/// The Hermitian form `H_ij = tr(D_i* ∘ D_j)` on `K_n` at real `d`.
///
/// For endomorphism diagrams the star has no sign factor, so `D* = D'`. When
/// `d < 0` the trace is normalized by `(-1)^n` so that `tr(1) = |d|^n > 0`.
pub fn hermitian_form(d: f64, n: usize) -> Result<DMatrix<f64>> {
    let basis = Diagram::enumerate(n, n)?;
    let starred: Vec<Diagram> = basis.iter().map(Diagram::reflect_horizontal).collect();
    let k = basis.len();
    let sign = if d < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
    let max_loops = n as i32;
    let pows: Vec<f64> = (0..=max_loops).map(|c| d.powi(c)).collect();
    let mut h = DMatrix::<f64>::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let r = starred[i].compose_unchecked(&basis[j]);
            let c = r.loops + r.diagram.closure_loops()?;
            let v = sign * pows[c as usize];
            h[(i, j)] = v;
            h[(j, i)] = v;
        }
    }
    Ok(h)
}

pub fn min_eigenvalue(h: DMatrix<f64>) -> Result<f64> {
    if h.nrows() == 0 {
        return Ok(f64::INFINITY);
    }
    let eig = SymmetricEigen::try_new(h, 1e-15, 10_000)
        .ok_or_else(|| Error::NumericalFailure("symmetric eigensolver did not converge".into()))?;
    Ok(eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min))
}

/// Minimum eigenvalue of the trace form on `K_n` for `n = 1..=max_strands`.
pub fn positivity_scan(d: f64, max_strands: usize, tol: f64) -> Result<PositivityReport> {
    if d == 0.0 || !d.is_finite() {
        return Err(Error::NumericalFailure(format!("loop value {d} must be finite and nonzero")));
    }
    let mut levels = Vec::with_capacity(max_strands);
    let mut verdict = Verdict::Admissible;
    for n in 1..=max_strands {
        let h = hermitian_form(d, n)?;
        let dimension = h.nrows();
        let scale = h.amax().max(1.0);
        let min = min_eigenvalue(h)?;
        levels.push(LevelReport {
            strands: n,
            dimension,
            min_eigenvalue: min,
        });
        if min < -tol * scale && verdict == Verdict::Admissible {
            verdict = Verdict::Violated(n);
        }
    }
    Ok(PositivityReport {
        d_value: d,
        tolerance: tol,
        levels,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn admissible_values() {
        for n in 3..=6 {
            let d = 2.0 * (PI / n as f64).cos();
            let r = positivity_scan(d, 4, DEFAULT_TOLERANCE).unwrap();
            assert_eq!(r.verdict, Verdict::Admissible, "d = 2cos(pi/{n})");
        }
        let r = positivity_scan(2.5, 5, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.verdict, Verdict::Admissible);
        assert!(r.levels.iter().all(|l| l.min_eigenvalue > 0.0));
        let r = positivity_scan(-2.5, 5, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.verdict, Verdict::Admissible);
    }

    #[test]
    fn inadmissible_value_fails() {
        let r = positivity_scan(1.5, 5, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.verdict, Verdict::Violated(4));
        assert!(r.levels[2].min_eigenvalue > 0.0);
    }

    #[test]
    fn level_one_and_two() {
        let h = hermitian_form(1.7, 2).unwrap();
        assert_eq!(h.nrows(), 2);
        assert!((h[(0, 0)] - 1.7 * 1.7).abs() < 1e-12);
        assert!((h[(0, 1)] - 1.7).abs() < 1e-12);
        let m = min_eigenvalue(h).unwrap();
        assert!((m - (1.7 * 1.7 - 1.7)).abs() < 1e-12);
        assert!(positivity_scan(0.0, 2, 1e-9).is_err());
    }
}
