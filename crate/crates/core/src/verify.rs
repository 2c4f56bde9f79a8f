//! Self-checks of the structural identities, grouped into named suites.
//!
//! Every suite is deterministic given the seed; sampled checks draw from a
//! seeded [`StdRng`].

use std::f64::consts::PI;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::diagram::{catalan, Diagram};
use crate::jones_wenzl::JonesWenzlBuilder;
use crate::morphism::{Morphism, StarConfig};
use crate::repn::{self, Verdict};
use crate::scalar::{Cyclotomic, Field, RationalFunction, ScalarBackend};
use crate::words::{self, Word};

type Check = std::result::Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: std::result::Result<T, E>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

pub struct Suite {
    pub name: &'static str,
    pub run: fn(&mut StdRng) -> Check,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub name: &'static str,
    pub result: Check,
    pub elapsed: Duration,
}

pub fn suites() -> Vec<Suite> {
    vec![
        Suite { name: "diagram.counts", run: diagram_counts },
        Suite { name: "diagram.relations", run: diagram_relations },
        Suite { name: "diagram.transpose", run: diagram_transpose },
        Suite { name: "morphism.interchange", run: morphism_interchange },
        Suite { name: "morphism.trace", run: morphism_trace },
        Suite { name: "morphism.rescaling", run: morphism_rescaling },
        Suite { name: "morphism.star", run: morphism_star },
        Suite { name: "morphism.bending", run: morphism_bending },
        Suite { name: "words.reduced", run: words_reduced },
        Suite { name: "words.normal_form", run: words_normal_form },
        Suite { name: "jones_wenzl.generic", run: jw_generic },
        Suite { name: "jones_wenzl.roots_of_unity", run: jw_roots },
        Suite { name: "repn.multiplicities", run: repn_multiplicities },
        Suite { name: "repn.gram", run: repn_gram },
        Suite { name: "repn.negligible", run: repn_negligible },
        Suite { name: "repn.bratteli", run: repn_bratteli },
        Suite { name: "repn.positivity", run: repn_positivity },
    ]
}

/// Run suites whose name starts with `filter` (`"all"` runs everything).
pub fn run(filter: &str, seed: u64) -> Vec<Outcome> {
    suites()
        .into_iter()
        .filter(|s| filter == "all" || s.name.starts_with(filter))
        .map(|s| {
            let mut rng = StdRng::seed_from_u64(seed);
            let start = Instant::now();
            let result = (s.run)(&mut rng);
            Outcome {
                name: s.name,
                result,
                elapsed: start.elapsed(),
            }
        })
        .collect()
}

fn generic() -> Arc<ScalarBackend<RationalFunction>> {
    Arc::new(ScalarBackend::generic())
}

fn basis<S: Field>(b: &Arc<ScalarBackend<S>>, m: usize, n: usize) -> Vec<Morphism<S>> {
    Diagram::enumerate(m, n)
        .expect("small hom-set")
        .into_iter()
        .map(|d| Morphism::from_diagram(b, d))
        .collect()
}

/// `a + b q^e` with small random integers.
fn random_scalar(rng: &mut StdRng, b: &ScalarBackend<RationalFunction>) -> RationalFunction {
    let a = b.int(rng.gen_range(-3..=3));
    let c = b.int(rng.gen_range(-3..=3));
    let e = rng.gen_range(-2..=2);
    a.add(&c.mul(&b.q.powi(e).expect("q is invertible")))
}

fn random_morphism(
    rng: &mut StdRng,
    b: &Arc<ScalarBackend<RationalFunction>>,
    m: usize,
    n: usize,
    terms: usize,
) -> Morphism<RationalFunction> {
    let ds = Diagram::enumerate(m, n).expect("small hom-set");
    let mut f = Morphism::zero(b, m, n);
    for _ in 0..terms {
        let d = ds[rng.gen_range(0..ds.len())].clone();
        let c = random_scalar(rng, b);
        f = f
            .add(&Morphism::from_diagram(b, d).scale(&c))
            .expect("same signature");
    }
    f
}

fn diagram_counts(_: &mut StdRng) -> Check {
    for total in 0..=12 {
        for m in 0..=total {
            let got = ok(Diagram::enumerate(m, total - m))?;
            let expect = if total % 2 == 0 { catalan(total / 2) } else { 0 };
            ensure!(got.len() as u128 == expect, "|K_{{{m},{}}}| = {}", total - m, got.len());
            for d in &got {
                ensure!(ok(Diagram::decode(&d.encode()))? == *d, "round trip of {d}");
            }
        }
    }
    ensure!(ok(Diagram::enumerate(3, 3))?.len() == 5, "|K_3| != 5");
    Ok(())
}

fn diagram_relations(_: &mut StdRng) -> Check {
    for n in 2..=6 {
        let h: Vec<Diagram> = (1..n).map(|i| Diagram::elementary(n, i).unwrap()).collect();
        for i in 0..n - 1 {
            let sq = ok(h[i].compose(&h[i]))?;
            ensure!(sq.diagram == h[i] && sq.loops == 1, "h_{}^2 on {n} strands", i + 1);
            for j in 0..n - 1 {
                let ij = ok(h[i].compose(&h[j]))?;
                if i.abs_diff(j) >= 2 {
                    let ji = ok(h[j].compose(&h[i]))?;
                    ensure!(ij == ji && ij.loops == 0, "h_{} h_{} commute", i + 1, j + 1);
                }
                if i.abs_diff(j) == 1 {
                    let iji = ok(ij.diagram.compose(&h[i]))?;
                    ensure!(
                        iji.diagram == h[i] && iji.loops + ij.loops == 0,
                        "h_{0} h_{1} h_{0} = h_{0}",
                        i + 1,
                        j + 1
                    );
                }
            }
        }
    }
    Ok(())
}

fn diagram_transpose(_: &mut StdRng) -> Check {
    let k4 = ok(Diagram::enumerate(4, 4))?;
    for c in &k4 {
        ensure!(c.rotate_pi().rotate_pi() == *c, "rotation is involutive");
        for d in &k4 {
            let cd = ok(c.compose(d))?;
            let t = ok(d.rotate_pi().compose(&c.rotate_pi()))?;
            ensure!(cd.diagram.rotate_pi() == t.diagram && cd.loops == t.loops, "ᵗ(CD) = ᵗD ᵗC");
            ensure!(
                cd.diagram.arc_index() == c.arc_index() + d.arc_index(),
                "arc index additivity"
            );
            ensure!(
                ok(Diagram::decode(&cd.diagram.encode()))? == cd.diagram,
                "composition output is canonical"
            );
        }
    }
    Ok(())
}

fn morphism_interchange(_: &mut StdRng) -> Check {
    let b = generic();
    let pieces: Vec<_> = [(2, 2), (2, 0), (0, 2), (1, 1)]
        .iter()
        .flat_map(|&(m, n)| basis(&b, m, n))
        .collect();
    for f in &pieces {
        for f2 in pieces.iter().filter(|f2| f2.top() == f.bottom()) {
            for g in &pieces {
                for g2 in pieces.iter().filter(|g2| g2.top() == g.bottom()) {
                    let lhs = ok(ok(f.tensor(g))?.compose(&ok(f2.tensor(g2))?))?;
                    let rhs = ok(ok(f.compose(f2))?.tensor(&ok(g.compose(g2))?))?;
                    ensure!(lhs == rhs, "interchange law");
                }
            }
        }
    }
    Ok(())
}

fn morphism_trace(_: &mut StdRng) -> Check {
    let b = generic();
    for m in 0..=3 {
        for n in (m % 2..=3).step_by(2) {
            for f in basis(&b, n, m) {
                for g in basis(&b, m, n) {
                    let fg = ok(ok(f.compose(&g))?.markov_trace())?;
                    let gf = ok(ok(g.compose(&f))?.markov_trace())?;
                    ensure!(fg == gf, "tr(fg) = tr(gf) for m={m}, n={n}");
                }
            }
        }
    }
    for n in 0..=5 {
        for f in basis(&b, n, n) {
            let t = ok(f.markov_trace())?;
            ensure!(ok(f.left_trace())? == t, "left closure = right closure on {n} strands");
            ensure!(ok(f.transpose().markov_trace())? == t, "tr(ᵗf) = tr(f)");
        }
    }
    let one = Morphism::identity(&b, 1);
    for x in basis(&b, 3, 3) {
        let e = ok(x.conditional_expectation(2))?;
        ensure!(
            ok(e.markov_trace())?.mul(&b.d) == ok(x.markov_trace())?,
            "tr(E(x)) d = tr(x)"
        );
        for a in basis(&b, 2, 2) {
            let a1 = ok(a.tensor(&one))?;
            let lhs = ok(ok(a1.compose(&x))?.conditional_expectation(2))?;
            ensure!(lhs == ok(a.compose(&e))?, "E is a bimodule map");
        }
    }
    Ok(())
}

fn morphism_rescaling(_: &mut StdRng) -> Check {
    let a = generic();
    let b = Arc::new(a.with_loop_value(a.d.neg()));
    let ratio = ok(a.d.div(&b.d))?;
    for n in 2..=5 {
        let img: Vec<_> = (1..n)
            .map(|i| Morphism::elementary(&b, n, i).unwrap().scale(&ratio))
            .collect();
        for i in 0..n - 1 {
            ensure!(ok(img[i].compose(&img[i]))? == img[i].scale(&a.d), "image of h_i^2 = d h_i");
            for j in 0..n - 1 {
                let ij = ok(img[i].compose(&img[j]))?;
                if i.abs_diff(j) == 1 {
                    ensure!(ok(ij.compose(&img[i]))? == img[i], "image of h_i h_j h_i = h_i");
                }
                if i.abs_diff(j) >= 2 {
                    ensure!(ij == ok(img[j].compose(&img[i]))?, "images commute");
                }
            }
        }
    }
    Ok(())
}

fn morphism_star(rng: &mut StdRng) -> Check {
    let b = generic();
    let cfg = StarConfig::for_backend(&b);
    for _ in 0..20 {
        let f = random_morphism(rng, &b, 3, 1, 3);
        ensure!(ok(ok(f.star(&cfg))?.star(&cfg))? == f, "star is involutive");
        let g = random_morphism(rng, &b, 1, 3, 3);
        let fg = ok(f.compose(&g))?;
        ensure!(
            ok(fg.star(&cfg))? == ok(ok(g.star(&cfg))?.compose(&ok(f.star(&cfg))?))?,
            "(fg)* = g* f*"
        );
        ensure!(
            ok(ok(f.tensor(&g))?.star(&cfg))? == ok(ok(f.star(&cfg))?.tensor(&ok(g.star(&cfg))?))?,
            "(f ⊗ g)* = f* ⊗ g*"
        );
        let lambda = random_scalar(rng, &b);
        if !lambda.is_zero() {
            ensure!(
                ok(fg.twist(&lambda))? == ok(ok(f.twist(&lambda))?.compose(&ok(g.twist(&lambda))?))?,
                "twist is multiplicative"
            );
        }
    }
    // f* f = 0 only for f = 0 on small hom-sets at a real admissible d
    let fl = Arc::new(ok(ScalarBackend::float_d(2.0 * (PI / 5.0).cos()))?);
    let cfg = StarConfig::for_backend(&fl);
    for f in basis(&fl, 3, 1) {
        let ff = ok(ok(f.star(&cfg))?.compose(&f))?;
        ensure!(!ok(ff.markov_trace())?.is_zero(), "tr(f* f) vanishes for a basis diagram");
    }
    Ok(())
}

fn morphism_bending(_: &mut StdRng) -> Check {
    let b = generic();
    for (m, n) in [(3, 1), (1, 3), (2, 2), (4, 0), (0, 4), (2, 4)] {
        for f in basis(&b, m, n) {
            ensure!(ok(f.full_bend_right())? == f.transpose(), "full bend (right) is the transpose");
            ensure!(ok(f.full_bend_left())? == f.transpose(), "full bend (left) is the transpose");
            if m > 0 {
                ensure!(ok(ok(f.bend_right_down())?.bend_right_up())? == f, "bend inverse on the right");
                ensure!(ok(ok(f.bend_left_down())?.bend_left_up())? == f, "bend inverse on the left");
            }
        }
    }
    for n in 0..=3 {
        let id = Morphism::identity(&b, n);
        ensure!(ok(id.dual_idempotent())? == id, "dual of the identity");
    }
    Ok(())
}

fn words_reduced(_: &mut StdRng) -> Check {
    for n in 0..=8 {
        let forms = ok(words::enumerate_reduced(n))?;
        ensure!(forms.len() as u128 == catalan(n), "reduced word count for n={n}");
    }
    for n in 0..=6 {
        let mut seen = std::collections::BTreeSet::new();
        for nf in ok(words::enumerate_reduced(n))? {
            let (d, loops) = nf.word().evaluate();
            ensure!(loops == 0, "{nf} produced loops");
            ensure!(ok(words::diagram_to_reduced(&d))? == nf, "inverse map on {nf}");
            ensure!(seen.insert(d), "two reduced words give one diagram");
        }
        ensure!(seen.len() as u128 == catalan(n), "bijection on {n} strands");
    }
    for n in 2..=3 {
        let (d, loops) = words::h_element_word(n).evaluate();
        let expect = ok(Diagram::nested_cup(n).compose(&Diagram::nested_cap(n)))?;
        ensure!(d == expect.diagram && loops == expect.loops, "h-element for {n}");
    }
    Ok(())
}

fn words_normal_form(rng: &mut StdRng) -> Check {
    let mut frontier = vec![Vec::<usize>::new()];
    let mut all = vec![Vec::new()];
    for _ in 0..5 {
        let mut next = Vec::new();
        for w in &frontier {
            for i in 1..4 {
                let mut v = w.clone();
                v.push(i);
                next.push(v);
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    for letters in all {
        let w = ok(Word::new(4, letters))?;
        let nf = words::normal_form(&w);
        let (d, e) = w.evaluate();
        ensure!(nf.d_exponent == e && nf.word().evaluate() == (d, 0), "normal form of {w}");
    }
    for _ in 0..50 {
        let len = rng.gen_range(0..10);
        let letters: Vec<usize> = (0..len).map(|_| rng.gen_range(1..5)).collect();
        let w = ok(Word::new(5, letters))?;
        let (d, e) = w.evaluate();
        let (di, ei) = w.include().evaluate();
        ensure!(di == ok(d.tensor(&Diagram::identity(1)))? && ei == e, "inclusion of {w}");
    }
    Ok(())
}

fn jw_generic(_: &mut StdRng) -> Check {
    let b = generic();
    let jw = JonesWenzlBuilder::new(&b);
    let cfg = StarConfig::for_backend(&b);
    let mut traces = Vec::new();
    for k in 0..=8 {
        let f = ok(jw.morphism(k))?;
        ensure!(ok(f.compose(&f))? == *f, "f_{k} is idempotent");
        ensure!(f.transpose() == *f, "f_{k} is self-transposed");
        ensure!(ok(f.star(&cfg))? == *f, "f_{k} is self-adjoint");
        for i in 1..k {
            let h = ok(Morphism::elementary(&b, k, i))?;
            ensure!(ok(h.compose(&f))?.is_zero(), "h_{i} f_{k} = 0");
            ensure!(ok(f.compose(&h))?.is_zero(), "f_{k} h_{i} = 0");
        }
        let t = ok(f.markov_trace())?;
        ensure!(t == b.quantum_integer(k as i64 + 1), "tr(f_{k}) = [{}]", k + 1);
        traces.push(t);
    }
    for k in 1..8 {
        ensure!(
            traces[k + 1] == b.d.mul(&traces[k]).sub(&traces[k - 1]),
            "trace recursion at {k}"
        );
    }
    for k in 1..=6 {
        let fk = ok(jw.morphism(k))?;
        for m in 0..k {
            let fm = ok(ok(jw.morphism(m))?.tensor(&Morphism::identity(&b, k - m)))?;
            ensure!(ok(fm.compose(&fk))? == *fk, "(f_{m} ⊗ 1) f_{k} = f_{k}");
        }
    }
    for n in 1..=4 {
        let p = ok(jw.frobenius_pair(n))?;
        let f_prev = ok(jw.morphism(n - 1))?;
        ensure!(ok(p.psi.compose(&p.phi))? == f_prev.scale(&p.lambda), "ψφ = λ f at {n}");
        ensure!(ok(jw.wenzl_from_frobenius(n))? == *ok(jw.morphism(n + 1))?, "two recursions agree at {n}");
    }
    Ok(())
}

fn jw_roots(_: &mut StdRng) -> Check {
    for l in 3..=6u32 {
        let b: Arc<ScalarBackend<Cyclotomic>> = Arc::new(ok(ScalarBackend::root_of_unity_level(l))?);
        let jw = JonesWenzlBuilder::new(&b);
        let l = l as usize;
        for k in 0..l {
            ok(jw.morphism(k))?;
        }
        ensure!(ok(jw.trace(l - 1))?.is_zero(), "tr(f_{}) = [{l}] = 0", l - 1);
        ensure!(
            jw.morphism(l) == Err(crate::Error::VanishingQuantumInteger(l as i64)),
            "f_{l} must fail at level {l}"
        );
    }
    Ok(())
}

fn repn_multiplicities(_: &mut StdRng) -> Check {
    for n in 0..=8 {
        let (lhs, rhs) = repn::catalan_identity_check(n);
        ensure!(lhs == rhs && rhs == catalan(n), "sum of squares at {n}");
        let rec = ok(repn::power_decomposition(n, None))?;
        let table = repn::decompose_power(n);
        for (k, m) in &rec {
            ensure!(table.multiplicity(*k) == *m, "iterated fusion at {n}");
        }
    }
    Ok(())
}

fn repn_gram(_: &mut StdRng) -> Check {
    for n in 0..=5 {
        let p = ok(repn::loop_matrix(n, n))?.determinant_poly();
        ensure!(!p.is_zero(), "generic Gram determinant vanishes at {n}");
        for l in 3..=7u32 {
            let c = ok(ScalarBackend::<Cyclotomic>::root_of_unity_level(l))?;
            let v = ok(p.eval(&c))?;
            ensure!(v.is_zero() == (n + 1 >= l as usize), "determinant at n={n}, l={l}");
        }
    }
    Ok(())
}

fn repn_negligible(_: &mut StdRng) -> Check {
    for l in [3u32, 4, 5] {
        let b: Arc<ScalarBackend<Cyclotomic>> = Arc::new(ok(ScalarBackend::root_of_unity_level(l))?);
        let jw = JonesWenzlBuilder::new(&b);
        for k in 1..l as usize {
            let ker = ok(repn::negligible_basis(k, k, &b))?;
            if k + 1 < l as usize {
                ensure!(ker.is_empty(), "kernel of End(X^{k}) at l={l} should be zero");
            } else {
                ensure!(ker.len() == 1, "kernel of End(X^{k}) at l={l} should be a line");
                let f = ok(jw.morphism(k))?;
                let (d0, c0) = f.terms().next().ok_or("empty projector")?;
                let r = ok(ker[0].coeff(d0).div(c0))?;
                ensure!(f.scale(&r) == ker[0], "kernel at l={l} is spanned by f_{k}");
            }
        }
        for n in 0..=5 {
            let q = ok(repn::quotient_dimension(n, l))? as u128;
            ensure!(q == ok(repn::truncated_dimension(n, l as usize))?, "quotient dimension n={n} l={l}");
        }
        if l <= 4 {
            let k = l as usize - 1;
            for f in ok(repn::negligible_basis(k, k, &b))? {
                for g in basis(&b, k, k) {
                    ensure!(ok(repn::is_negligible(&ok(f.compose(&g))?))?, "left ideal");
                    ensure!(ok(repn::is_negligible(&ok(g.compose(&f))?))?, "right ideal");
                }
                for g in basis(&b, 4 - k, 4 - k) {
                    ensure!(ok(repn::is_negligible(&ok(f.tensor(&g))?))?, "tensor ideal");
                }
            }
        }
    }
    Ok(())
}

fn repn_bratteli(_: &mut StdRng) -> Check {
    let br = ok(repn::bratteli(8, None))?;
    for n in 0..=8 {
        let table = repn::decompose_power(n);
        for (k, c) in br.dimensions(n) {
            ensure!(table.multiplicity(k) == c, "path count at X{k}@{n}");
        }
    }
    for l in 3..=6usize {
        let br = ok(repn::bratteli(6, Some(l)))?;
        for n in 0..=6 {
            let sq: u128 = br.dimensions(n).iter().map(|(_, c)| c * c).sum();
            ensure!(sq == ok(repn::truncated_dimension(n, l))?, "truncated paths at n={n}, l={l}");
        }
    }
    Ok(())
}

fn repn_positivity(_: &mut StdRng) -> Check {
    for n in 3..=6 {
        let d = 2.0 * (PI / n as f64).cos();
        let r = ok(repn::positivity_scan(d, 4, 1e-9))?;
        ensure!(r.verdict == Verdict::Admissible, "d = 2cos(pi/{n}) should be admissible");
    }
    let r = ok(repn::positivity_scan(2.5, 4, 1e-9))?;
    ensure!(r.verdict == Verdict::Admissible, "d = 2.5 should be admissible");
    let r = ok(repn::positivity_scan(1.5, 6, 1e-9))?;
    ensure!(matches!(r.verdict, Verdict::Violated(_)), "d = 1.5 should be violated");
    Ok(())
}
