//! Linear combinations of Kauffman diagrams: the morphisms of the
//! Temperley-Lieb category with loop value `d`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::scalar::{
    BackendKind, ComplexFloat, Cyclotomic, Field, RationalFunction, ScalarBackend,
};

/// A morphism `X^n -> X^m`: finitely many diagrams of `K_{m,n}` with nonzero
/// coefficients. The backend (and with it `d`) travels with the value.
#[derive(Clone, Debug)]
pub struct Morphism<S: Field> {
    top: usize,
    bottom: usize,
    terms: BTreeMap<Diagram, S>,
    backend: Arc<ScalarBackend<S>>,
}

impl<S: Field> PartialEq for Morphism<S> {
    fn eq(&self, other: &Self) -> bool {
        self.top == other.top
            && self.bottom == other.bottom
            && same_backend(&self.backend, &other.backend)
            && self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .zip(other.terms.iter())
                .all(|((da, ca), (db, cb))| da == db && ca == cb)
    }
}

fn same_backend<S: Field>(a: &Arc<ScalarBackend<S>>, b: &Arc<ScalarBackend<S>>) -> bool {
    Arc::ptr_eq(a, b) || (a.ctx == b.ctx && a.d == b.d)
}

impl<S: Field> Morphism<S> {
    pub fn zero(backend: &Arc<ScalarBackend<S>>, top: usize, bottom: usize) -> Self {
        Self {
            top,
            bottom,
            terms: BTreeMap::new(),
            backend: backend.clone(),
        }
    }

    pub fn from_diagram(backend: &Arc<ScalarBackend<S>>, d: Diagram) -> Self {
        let mut f = Self::zero(backend, d.top(), d.bottom());
        f.terms.insert(d, backend.one());
        f
    }

    pub fn from_terms(
        backend: &Arc<ScalarBackend<S>>,
        top: usize,
        bottom: usize,
        terms: impl IntoIterator<Item = (Diagram, S)>,
    ) -> Result<Self> {
        let mut f = Self::zero(backend, top, bottom);
        for (d, c) in terms {
            if d.top() != top || d.bottom() != bottom {
                return Err(Error::SignatureMismatch(format!(
                    "diagram {d} in a morphism of K_{{{top},{bottom}}}"
                )));
            }
            f.add_term(d, c);
        }
        Ok(f)
    }

    pub fn identity(backend: &Arc<ScalarBackend<S>>, n: usize) -> Self {
        Self::from_diagram(backend, Diagram::identity(n))
    }

    pub fn elementary(backend: &Arc<ScalarBackend<S>>, n: usize, i: usize) -> Result<Self> {
        Ok(Self::from_diagram(backend, Diagram::elementary(n, i)?))
    }

    /// `e_i = h_i / d`, idempotent when `d` is invertible.
    pub fn jones_projection(backend: &Arc<ScalarBackend<S>>, n: usize, i: usize) -> Result<Self> {
        let dinv = backend
            .d
            .inv()
            .ok_or_else(|| Error::DivisionByZero(format!("d = {}", backend.d)))?;
        Ok(Self::elementary(backend, n, i)?.scale(&dinv))
    }

    pub fn cap(backend: &Arc<ScalarBackend<S>>) -> Self {
        Self::from_diagram(backend, Diagram::cap())
    }

    pub fn cup(backend: &Arc<ScalarBackend<S>>) -> Self {
        Self::from_diagram(backend, Diagram::cup())
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn backend(&self) -> &Arc<ScalarBackend<S>> {
        &self.backend
    }

    pub fn d(&self) -> &S {
        &self.backend.d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical diagram order.
    pub fn terms(&self) -> impl Iterator<Item = (&Diagram, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, d: &Diagram) -> S {
        self.terms
            .get(d)
            .cloned()
            .unwrap_or_else(|| self.backend.zero())
    }

    fn add_term(&mut self, d: Diagram, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(d) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_backend(&self, other: &Self) -> Result<()> {
        if same_backend(&self.backend, &other.backend) {
            Ok(())
        } else {
            Err(Error::BackendMismatch(format!(
                "loop values {} and {}",
                self.backend.d, other.backend.d
            )))
        }
    }

    fn check_same_signature(&self, other: &Self) -> Result<()> {
        self.check_backend(other)?;
        if (self.top, self.bottom) != (other.top, other.bottom) {
            return Err(Error::SignatureMismatch(format!(
                "K_{{{},{}}} vs K_{{{},{}}}",
                self.top, self.bottom, other.top, other.bottom
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_signature(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|_, c| c.neg())
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map_coeffs(|_, c| c.mul(s))
    }

    fn map_coeffs(&self, f: impl Fn(&Diagram, &S) -> S) -> Self {
        let mut out = Self::zero(&self.backend, self.top, self.bottom);
        for (d, c) in &self.terms {
            let v = f(d, c);
            if !v.is_zero() {
                out.terms.insert(d.clone(), v);
            }
        }
        out
    }

    fn map_diagrams(&self, top: usize, bottom: usize, f: impl Fn(&Diagram, &S) -> (Diagram, S)) -> Self {
        let mut out = Self::zero(&self.backend, top, bottom);
        for (d, c) in &self.terms {
            let (e, v) = f(d, c);
            out.add_term(e, v);
        }
        out
    }

    /// `self ∘ lower`: `lower` first, then `self`. Each closed loop becomes a factor `d`.
    pub fn compose(&self, lower: &Self) -> Result<Self> {
        self.check_backend(lower)?;
        if self.bottom != lower.top {
            return Err(Error::SignatureMismatch(format!(
                "cannot compose K_{{{},{}}} over K_{{{},{}}}",
                self.top, self.bottom, lower.top, lower.bottom
            )));
        }
        let (lhs_d, lhs_c): (Vec<&Diagram>, Vec<S>) =
            self.terms.iter().map(|(d, c)| (d, c.clone())).unzip();
        let (rhs_d, rhs_c): (Vec<&Diagram>, Vec<S>) =
            lower.terms.iter().map(|(d, c)| (d, c.clone())).unzip();

        // group (lhs, rhs, loops) index triples by output diagram
        let mut slot: HashMap<Diagram, usize> = HashMap::new();
        let mut groups: Vec<(Diagram, Vec<(u32, u32, u32)>)> = Vec::new();
        for (a, da) in lhs_d.iter().enumerate() {
            for (b, db) in rhs_d.iter().enumerate() {
                let r = da.compose_unchecked(db);
                let entry = (a as u32, b as u32, r.loops);
                match slot.get(&r.diagram) {
                    Some(&i) => groups[i].1.push(entry),
                    None => {
                        slot.insert(r.diagram.clone(), groups.len());
                        groups.push((r.diagram, vec![entry]));
                    }
                }
            }
        }
        drop(slot);

        let lp = S::prepare(&lhs_c);
        let rp = S::prepare(&rhs_c);
        let ctx = &self.backend.ctx;
        let d = &self.backend.d;
        let mut out = Self::zero(&self.backend, self.top, lower.bottom);
        for (diagram, entries) in groups {
            let v = S::sum_products(ctx, &lp, &rp, &entries, d);
            if !v.is_zero() {
                out.terms.insert(diagram, v);
            }
        }
        Ok(out)
    }

    /// Composition of a chain, applied right to left like ordinary composition.
    pub fn compose_all(chain: &[&Self]) -> Result<Self> {
        let (last, rest) = chain
            .split_last()
            .expect("compose_all needs at least one morphism");
        let mut acc = (*last).clone();
        for f in rest.iter().rev() {
            acc = f.compose(&acc)?;
        }
        Ok(acc)
    }

    pub fn tensor(&self, right: &Self) -> Result<Self> {
        self.check_backend(right)?;
        let mut out = Self::zero(
            &self.backend,
            self.top + right.top,
            self.bottom + right.bottom,
        );
        for (da, ca) in &self.terms {
            for (db, cb) in &right.terms {
                out.add_term(da.tensor(db)?, ca.mul(cb));
            }
        }
        Ok(out)
    }

    /// The transpose `ᵗf`, rotating every diagram by a half turn.
    pub fn transpose(&self) -> Self {
        self.map_diagrams(self.bottom, self.top, |d, c| (d.rotate_pi(), c.clone()))
    }

    fn require_endomorphism(&self) -> Result<()> {
        if self.top != self.bottom {
            return Err(Error::NotEndomorphism {
                top: self.top,
                bottom: self.bottom,
            });
        }
        Ok(())
    }

    fn sum_with_loops(&self, f: impl Fn(&Diagram) -> Result<u32>) -> Result<S> {
        let d = &self.backend.d;
        let mut acc = self.backend.zero();
        for (diag, c) in &self.terms {
            acc = acc.add(&c.mul(&d.pow(f(diag)?)));
        }
        Ok(acc)
    }

    /// Closing every strand around the right side; each loop contributes `d`.
    pub fn markov_trace(&self) -> Result<S> {
        self.require_endomorphism()?;
        self.sum_with_loops(|d| d.closure_loops())
    }

    /// `ε_n ∘ (1_n ⊗ f) ∘ δ_n`, closing around the left side with nested arcs.
    pub fn left_trace(&self) -> Result<S> {
        self.require_endomorphism()?;
        let n = self.top;
        let wrapped = Self::identity(&self.backend, n).tensor(self)?;
        self.close_with_arcs(n, &wrapped)
    }

    /// `ε_n ∘ (f ⊗ 1_n) ∘ δ_n`, the right closure built from arcs.
    pub fn right_trace(&self) -> Result<S> {
        self.require_endomorphism()?;
        let n = self.top;
        let wrapped = self.tensor(&Self::identity(&self.backend, n))?;
        self.close_with_arcs(n, &wrapped)
    }

    fn close_with_arcs(&self, n: usize, wrapped: &Self) -> Result<S> {
        let cap = Self::from_diagram(&self.backend, Diagram::nested_cap(n));
        let cup = Self::from_diagram(&self.backend, Diagram::nested_cup(n));
        let scalar = Self::compose_all(&[&cap, wrapped, &cup])?;
        Ok(scalar.coeff(&Diagram::identity(0)))
    }

    /// Close the last `close` strands of an endomorphism and divide by `d^close`,
    /// so that the identity maps to the identity.
    pub fn conditional_expectation(&self, keep: usize) -> Result<Self> {
        if self.top != self.bottom || keep > self.top {
            return Err(Error::SignatureMismatch(format!(
                "cannot keep {keep} strands of K_{{{},{}}}",
                self.top, self.bottom
            )));
        }
        let close = self.top - keep;
        let d = &self.backend.d;
        let norm = d
            .pow(close as u32)
            .inv()
            .ok_or_else(|| Error::DivisionByZero(format!("d^{close} with d = {d}")))?;
        let mut out = Self::zero(&self.backend, keep, keep);
        for (diag, c) in &self.terms {
            let r = diag.close_right(close)?;
            out.add_term(r.diagram, c.mul(&d.pow(r.loops)).mul(&norm));
        }
        Ok(out)
    }

    /// `Hom(X^n, X^m ⊗ X) -> Hom(X^n ⊗ X, X^m)`: `(1_m ⊗ ε) ∘ (f ⊗ 1)`.
    pub fn bend_right_down(&self) -> Result<Self> {
        if self.top == 0 {
            return Err(Error::NoStrand("top right"));
        }
        let b = &self.backend;
        let lhs = Self::identity(b, self.top - 1).tensor(&Self::cap(b))?;
        lhs.compose(&self.tensor(&Self::identity(b, 1))?)
    }

    /// `Hom(X^n ⊗ X, X^m) -> Hom(X^n, X^m ⊗ X)`: `(f ⊗ 1) ∘ (1_n ⊗ δ)`.
    pub fn bend_right_up(&self) -> Result<Self> {
        if self.bottom == 0 {
            return Err(Error::NoStrand("bottom right"));
        }
        let b = &self.backend;
        let rhs = Self::identity(b, self.bottom - 1).tensor(&Self::cup(b))?;
        self.tensor(&Self::identity(b, 1))?.compose(&rhs)
    }

    /// `Hom(X^n, X ⊗ X^m) -> Hom(X ⊗ X^n, X^m)`: `(ε ⊗ 1_m) ∘ (1 ⊗ f)`.
    pub fn bend_left_down(&self) -> Result<Self> {
        if self.top == 0 {
            return Err(Error::NoStrand("top left"));
        }
        let b = &self.backend;
        let lhs = Self::cap(b).tensor(&Self::identity(b, self.top - 1))?;
        lhs.compose(&Self::identity(b, 1).tensor(self)?)
    }

    /// `Hom(X ⊗ X^n, X^m) -> Hom(X^n, X ⊗ X^m)`: `(1 ⊗ f) ∘ (δ ⊗ 1_n)`.
    pub fn bend_left_up(&self) -> Result<Self> {
        if self.bottom == 0 {
            return Err(Error::NoStrand("bottom left"));
        }
        let b = &self.backend;
        let rhs = Self::cup(b).tensor(&Self::identity(b, self.bottom - 1))?;
        Self::identity(b, 1).tensor(self)?.compose(&rhs)
    }

    /// Bend every top strand down around the right, then every bottom strand
    /// up around the left. Agrees with [`Morphism::transpose`].
    pub fn full_bend_right(&self) -> Result<Self> {
        let mut f = self.clone();
        for _ in 0..self.top {
            f = f.bend_right_down()?;
        }
        for _ in 0..self.bottom {
            f = f.bend_left_up()?;
        }
        Ok(f)
    }

    /// Bend every top strand down around the left, then every bottom strand
    /// up around the right.
    pub fn full_bend_left(&self) -> Result<Self> {
        let mut f = self.clone();
        for _ in 0..self.top {
            f = f.bend_left_down()?;
        }
        for _ in 0..self.bottom {
            f = f.bend_right_up()?;
        }
        Ok(f)
    }

    pub fn is_idempotent(&self) -> Result<bool> {
        self.require_endomorphism()?;
        Ok(self.compose(self)? == *self)
    }

    /// The idempotent `(1_n ⊗ ε_n)(1_n ⊗ p ⊗ 1_n)(δ_n ⊗ 1_n)` on the dual object.
    pub fn dual_idempotent(&self) -> Result<Self> {
        if !self.is_idempotent()? {
            return Err(Error::NotIdempotent);
        }
        let b = &self.backend;
        let n = self.top;
        let id = Self::identity(b, n);
        let cap = Self::from_diagram(b, Diagram::nested_cap(n));
        let cup = Self::from_diagram(b, Diagram::nested_cup(n));
        let upper = id.tensor(&cap)?;
        let middle = id.tensor(self)?.tensor(&id)?;
        let lower = cup.tensor(&id)?;
        Self::compose_all(&[&upper, &middle, &lower])
    }

    /// `D* = s^{♯D} D'` with `D'` the upside-down diagram, extended conjugate-linearly.
    pub fn star(&self, cfg: &StarConfig<S>) -> Result<Self> {
        if cfg.sign_factor.ctx() != self.backend.ctx {
            return Err(Error::BackendMismatch(
                "star configuration from another field".into(),
            ));
        }
        let s = &cfg.sign_factor;
        let s_inv = s
            .inv()
            .ok_or_else(|| Error::NonInvertibleScalar(s.to_string()))?;
        Ok(self.map_diagrams(self.bottom, self.top, |d, c| {
            let k = d.arc_index();
            let factor = if k >= 0 { s.pow(k as u32) } else { s_inv.pow((-k) as u32) };
            (d.reflect_horizontal(), c.conj().mul(&factor))
        }))
    }

    /// `F(D) = λ^{♯D} D`.
    pub fn twist(&self, lambda: &S) -> Result<Self> {
        let inv = lambda
            .inv()
            .ok_or_else(|| Error::NonInvertibleScalar(lambda.to_string()))?;
        Ok(self.map_coeffs(|d, c| {
            let k = d.arc_index();
            let f = if k >= 0 { lambda.pow(k as u32) } else { inv.pow((-k) as u32) };
            c.mul(&f)
        }))
    }

    pub fn to_json_value(&self) -> MorphismJson {
        MorphismJson {
            m: self.top,
            n: self.bottom,
            d: self.backend.d.to_string(),
            terms: self
                .terms
                .iter()
                .map(|(d, c)| TermJson {
                    coeff: c.to_string(),
                    diagram: d.encode(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("serializable")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("serializable")
    }

    /// Read a morphism whose `d` must match the given backend.
    pub fn from_json_value(j: &MorphismJson, backend: &Arc<ScalarBackend<S>>) -> Result<Self> {
        let d = backend.parse(&j.d)?;
        if d != backend.d {
            return Err(Error::BackendMismatch(format!(
                "morphism has d = {}, backend has d = {}",
                j.d, backend.d
            )));
        }
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            terms.push((Diagram::decode(&t.diagram)?, backend.parse(&t.coeff)?));
        }
        Self::from_terms(backend, j.m, j.n, terms)
    }

    pub fn from_json(s: &str, backend: &Arc<ScalarBackend<S>>) -> Result<Self> {
        let j: MorphismJson = serde_json::from_str(s).map_err(json_error)?;
        Self::from_json_value(&j, backend)
    }
}

impl Morphism<RationalFunction> {
    /// Evaluate every coefficient at the target backend's `q`. The loop value
    /// becomes the target's `d`.
    pub fn specialize<T: Field>(&self, target: &Arc<ScalarBackend<T>>) -> Result<Morphism<T>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (d, c) in &self.terms {
            terms.push((d.clone(), crate::scalar::evaluate_at(c, target)?));
        }
        Morphism::from_terms(target, self.top, self.bottom, terms)
    }
}

impl<S: Field> fmt::Display for Morphism<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 in K_{{{},{}}}", self.top, self.bottom);
        }
        for (i, (d, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{d}  {c}")?;
        }
        Ok(())
    }
}

/// Parameters of the star operation: `D* = sign_factor^{♯D} D'`.
#[derive(Clone, Debug, PartialEq)]
pub struct StarConfig<S: Field> {
    pub sign_factor: S,
}

impl<S: Field> StarConfig<S> {
    /// `d/|d|` when `d` is a nonzero real number in the backend's complex
    /// reading, otherwise 1 (including the generic backend).
    pub fn for_backend(backend: &ScalarBackend<S>) -> Self {
        let sign = match backend.d.to_complex() {
            Some(z) if z.im.abs() <= crate::scalar::FLOAT_TOLERANCE && z.re < 0.0 => -1,
            _ => 1,
        };
        Self {
            sign_factor: backend.int(sign),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub diagram: String,
}

/// Wire form: `{"m", "n", "d", "terms": [{"coeff", "diagram"}]}`, terms in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub m: usize,
    pub n: usize,
    pub d: String,
    pub terms: Vec<TermJson>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::parse(e.column().saturating_sub(1), e.to_string())
}

/// A morphism in whichever backend its JSON `d` string indicates.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyMorphism {
    Generic(Morphism<RationalFunction>),
    Cyclotomic(Morphism<Cyclotomic>),
    Float(Morphism<ComplexFloat>),
}

/// Backend indicated by a serialized loop value: `... mod Phi_N` is cyclotomic,
/// `(re, im)` is float, anything else is a rational function of `q`.
pub fn detect_backend(d: &str) -> Result<AnyBackend> {
    let t = d.trim();
    if let Some(pos) = t.rfind("mod Phi_") {
        let order: u32 = t[pos + 8..]
            .trim()
            .parse()
            .map_err(|_| Error::parse(pos + 8, "bad cyclotomic order"))?;
        let b = ScalarBackend::cyclotomic(order)?;
        let dv = b.parse(t)?;
        return Ok(AnyBackend::Cyclotomic(Arc::new(b.with_loop_value(dv))));
    }
    if t.starts_with('(') && t.contains(',') {
        let z = ComplexFloat::parse(&(), t)?;
        if z.im.abs() > crate::scalar::FLOAT_TOLERANCE {
            return Err(Error::BackendMismatch(format!(
                "float loop value {t} is not real"
            )));
        }
        return Ok(AnyBackend::Float(Arc::new(ScalarBackend::float_d(z.re)?)));
    }
    let b = ScalarBackend::generic();
    let dv = b.parse(t)?;
    Ok(AnyBackend::Generic(Arc::new(b.with_loop_value(dv))))
}

#[derive(Clone, Debug)]
pub enum AnyBackend {
    Generic(Arc<ScalarBackend<RationalFunction>>),
    Cyclotomic(Arc<ScalarBackend<Cyclotomic>>),
    Float(Arc<ScalarBackend<ComplexFloat>>),
}

impl AnyBackend {
    pub fn kind(&self) -> BackendKind {
        match self {
            AnyBackend::Generic(_) => BackendKind::Generic,
            AnyBackend::Cyclotomic(_) => BackendKind::Cyclotomic,
            AnyBackend::Float(_) => BackendKind::Float,
        }
    }
}

impl AnyMorphism {
    pub fn from_json(s: &str) -> Result<Self> {
        let j: MorphismJson = serde_json::from_str(s).map_err(json_error)?;
        Ok(match detect_backend(&j.d)? {
            AnyBackend::Generic(b) => AnyMorphism::Generic(Morphism::from_json_value(&j, &b)?),
            AnyBackend::Cyclotomic(b) => {
                AnyMorphism::Cyclotomic(Morphism::from_json_value(&j, &b)?)
            }
            AnyBackend::Float(b) => AnyMorphism::Float(Morphism::from_json_value(&j, &b)?),
        })
    }

    pub fn to_json(&self) -> String {
        match self {
            AnyMorphism::Generic(f) => f.to_json(),
            AnyMorphism::Cyclotomic(f) => f.to_json(),
            AnyMorphism::Float(f) => f.to_json(),
        }
    }

    pub fn to_json_pretty(&self) -> String {
        match self {
            AnyMorphism::Generic(f) => f.to_json_pretty(),
            AnyMorphism::Cyclotomic(f) => f.to_json_pretty(),
            AnyMorphism::Float(f) => f.to_json_pretty(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn generic() -> Arc<ScalarBackend<RationalFunction>> {
        Arc::new(ScalarBackend::generic())
    }

    fn basis<S: Field>(b: &Arc<ScalarBackend<S>>, m: usize, n: usize) -> Vec<Morphism<S>> {
        Diagram::enumerate(m, n)
            .unwrap()
            .into_iter()
            .map(|d| Morphism::from_diagram(b, d))
            .collect()
    }

    #[test]
    fn cap_after_cup_is_d() {
        let b = generic();
        let r = Morphism::cap(&b).compose(&Morphism::cup(&b)).unwrap();
        assert_eq!(r, Morphism::identity(&b, 0).scale(&b.d));
    }

    #[test]
    fn jones_projection_relations() {
        let b = generic();
        let e1 = Morphism::jones_projection(&b, 3, 1).unwrap();
        let e2 = Morphism::jones_projection(&b, 3, 2).unwrap();
        let lhs = Morphism::compose_all(&[&e1, &e2, &e1]).unwrap();
        let dm2 = b.d.pow(2).inv().unwrap();
        assert_eq!(lhs, e1.scale(&dm2));
        assert_eq!(e1.compose(&e1).unwrap(), e1);
    }

    #[test]
    fn hook_identity() {
        let b = generic();
        let id = Morphism::identity(&b, 1);
        let lhs = id.tensor(&Morphism::cap(&b)).unwrap();
        let rhs = Morphism::cup(&b).tensor(&id).unwrap();
        assert_eq!(lhs.compose(&rhs).unwrap(), id);
        assert_eq!(Morphism::cup(&b).bend_right_down().unwrap(), id);
    }

    #[test]
    fn transpose_reverses_products() {
        let b = generic();
        let h1 = Morphism::elementary(&b, 3, 1).unwrap();
        let h2 = Morphism::elementary(&b, 3, 2).unwrap();
        let lhs = h1.compose(&h2).unwrap().transpose();
        let rhs = h2.transpose().compose(&h1.transpose()).unwrap();
        assert_eq!(lhs, rhs);
        // ᵗh2 = h1 and ᵗh1 = h2, so the product flips order
        assert_eq!(rhs, h1.compose(&h2).unwrap().transpose());
        assert_eq!(h2.transpose(), h1);
        let f = h1.add(&h2.scale(&b.q)).unwrap();
        assert_eq!(f.tensor(&Morphism::identity(&b, 0)).unwrap(), f);
    }

    #[test]
    fn traces() {
        let b = generic();
        for n in 0..=4 {
            let id = Morphism::identity(&b, n);
            assert_eq!(id.markov_trace().unwrap(), b.d.pow(n as u32));
            for i in 1..n {
                let h = Morphism::elementary(&b, n, i).unwrap();
                assert_eq!(h.markov_trace().unwrap(), b.d.pow(n as u32 - 1));
            }
        }
        for n in 0..=4 {
            for f in basis(&b, n, n) {
                let t = f.markov_trace().unwrap();
                assert_eq!(f.left_trace().unwrap(), t);
                assert_eq!(f.right_trace().unwrap(), t);
            }
        }
        assert!(matches!(
            Morphism::cap(&b).markov_trace(),
            Err(Error::NotEndomorphism { .. })
        ));
    }

    #[test]
    fn trace_is_cyclic() {
        let b = generic();
        for m in 0..=3 {
            for n in (m % 2..=3).step_by(2) {
                let fs = basis(&b, n, m);
                let gs = basis(&b, m, n);
                for f in &fs {
                    for g in &gs {
                        let fg = f.compose(g).unwrap().markov_trace().unwrap();
                        let gf = g.compose(f).unwrap().markov_trace().unwrap();
                        assert_eq!(fg, gf);
                    }
                }
            }
        }
    }

    #[test]
    fn conditional_expectation() {
        let b = generic();
        let id2 = Morphism::identity(&b, 2);
        assert_eq!(id2.conditional_expectation(1).unwrap(), Morphism::identity(&b, 1));
        let h = Morphism::elementary(&b, 2, 1).unwrap();
        let dinv = b.d.inv().unwrap();
        assert_eq!(
            h.conditional_expectation(1).unwrap(),
            Morphism::identity(&b, 1).scale(&dinv)
        );
        let basis2: Vec<_> = basis(&b, 2, 2)
            .into_iter()
            .chain([id2.add(&h.scale(&b.q)).unwrap(), h.scale(&b.int(-3))])
            .collect();
        assert_eq!(basis2.len(), 4);
        for x in &basis2 {
            let e = x.conditional_expectation(1).unwrap();
            assert_eq!(
                e.markov_trace().unwrap().mul(&b.d),
                x.markov_trace().unwrap()
            );
        }
    }

    #[test]
    fn bimodule_property() {
        let b = generic();
        let k2 = basis(&b, 2, 2);
        let k3 = basis(&b, 3, 3);
        let one = Morphism::identity(&b, 1);
        for a in &k2 {
            let a1 = a.tensor(&one).unwrap();
            assert_eq!(a1.conditional_expectation(2).unwrap(), *a);
            for c in &k2 {
                let c1 = c.tensor(&one).unwrap();
                for x in &k3 {
                    let lhs = Morphism::compose_all(&[&a1, x, &c1])
                        .unwrap()
                        .conditional_expectation(2)
                        .unwrap();
                    let rhs = Morphism::compose_all(&[a, &x.conditional_expectation(2).unwrap(), c])
                        .unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn bends_invert_and_transpose() {
        let b = generic();
        for f in basis(&b, 3, 1) {
            assert_eq!(f.full_bend_right().unwrap(), f.transpose());
            assert_eq!(f.full_bend_left().unwrap(), f.transpose());
        }
        for f in basis(&b, 3, 1) {
            assert_eq!(f.bend_right_down().unwrap().bend_right_up().unwrap(), f);
            assert_eq!(f.bend_left_down().unwrap().bend_left_up().unwrap(), f);
            assert_eq!(f.bend_left_up().unwrap().bend_left_down().unwrap(), f);
            assert_eq!(f.bend_right_up().unwrap().bend_right_down().unwrap(), f);
        }
        for f in basis(&b, 2, 4).into_iter().chain(basis(&b, 4, 2)) {
            assert_eq!(f.full_bend_right().unwrap(), f.transpose());
            assert_eq!(f.full_bend_left().unwrap(), f.transpose());
        }
        assert!(matches!(
            Morphism::cap(&b).bend_right_down(),
            Err(Error::NoStrand(_))
        ));
    }

    #[test]
    fn dual_idempotents() {
        let b = generic();
        for n in 0..=3 {
            let id = Morphism::identity(&b, n);
            assert_eq!(id.dual_idempotent().unwrap(), id);
        }
        let e1 = Morphism::jones_projection(&b, 2, 1).unwrap();
        assert_eq!(e1.dual_idempotent().unwrap(), e1);
        let e = Morphism::jones_projection(&b, 3, 1).unwrap();
        let q = e.dual_idempotent().unwrap();
        assert_eq!(q, e.transpose());
        assert!(q.is_idempotent().unwrap());
        let h = Morphism::elementary(&b, 2, 1).unwrap();
        assert_eq!(h.dual_idempotent(), Err(Error::NotIdempotent));
    }

    #[test]
    fn star_and_twist() {
        let b = generic();
        let cfg = StarConfig::for_backend(&b);
        assert_eq!(Morphism::cap(&b).star(&cfg).unwrap(), Morphism::cup(&b));
        for n in 2..=4 {
            for i in 1..n {
                let h = Morphism::elementary(&b, n, i).unwrap();
                assert_eq!(h.star(&cfg).unwrap(), h);
                assert_eq!(h.twist(&b.q).unwrap(), h);
            }
        }
        let neg = Arc::new(ScalarBackend::<ComplexFloat>::float_d(-1.5).unwrap());
        let cfg = StarConfig::for_backend(&neg);
        assert_eq!(cfg.sign_factor, neg.int(-1));
        let cap = Morphism::cap(&neg);
        assert_eq!(cap.star(&cfg).unwrap(), Morphism::cup(&neg).scale(&neg.int(-1)));

        let lambda = b.q.add(&b.int(2));
        let linv = lambda.inv().unwrap();
        assert_eq!(
            Morphism::cap(&b).twist(&lambda).unwrap(),
            Morphism::cap(&b).scale(&lambda)
        );
        assert_eq!(
            Morphism::cup(&b).twist(&lambda).unwrap(),
            Morphism::cup(&b).scale(&linv)
        );
        assert_eq!(
            Morphism::cup(&b).twist(&b.zero()),
            Err(Error::NonInvertibleScalar("0".into()))
        );
    }

    #[test]
    fn twist_is_multiplicative() {
        let b = generic();
        let lambda = b.q.mul(&b.int(3));
        let k2 = basis(&b, 2, 2);
        let k20 = basis(&b, 2, 0);
        let k02 = basis(&b, 0, 2);
        for f in k2.iter().chain(&k20) {
            for g in k2.iter().chain(&k02) {
                if f.bottom() != g.top() {
                    continue;
                }
                let lhs = f.compose(g).unwrap().twist(&lambda).unwrap();
                let rhs = f
                    .twist(&lambda)
                    .unwrap()
                    .compose(&g.twist(&lambda).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        for f in &k20 {
            for g in &k02 {
                let lhs = g.compose(f).unwrap().twist(&lambda).unwrap();
                let rhs = g.twist(&lambda).unwrap().compose(&f.twist(&lambda).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn interchange_law() {
        let b = generic();
        let pieces: Vec<Morphism<_>> = [(2, 2), (2, 0), (0, 2), (1, 1)]
            .iter()
            .flat_map(|&(m, n)| basis(&b, m, n))
            .collect();
        for f in &pieces {
            for f2 in &pieces {
                if f.bottom() != f2.top() {
                    continue;
                }
                for g in &pieces {
                    for g2 in &pieces {
                        if g.bottom() != g2.top() {
                            continue;
                        }
                        let lhs = f.tensor(g).unwrap().compose(&f2.tensor(g2).unwrap()).unwrap();
                        let rhs = f.compose(f2).unwrap().tensor(&g.compose(g2).unwrap()).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let b = generic();
        let f = Morphism::elementary(&b, 3, 1)
            .unwrap()
            .scale(&b.d.inv().unwrap())
            .add(&Morphism::identity(&b, 3).scale(&b.q))
            .unwrap();
        let s = f.to_json();
        assert!(s.starts_with("{\"m\":3,\"n\":3,\"d\":\"q^-1 + q\",\"terms\":["));
        assert_eq!(Morphism::from_json(&s, &b).unwrap(), f);
        assert_eq!(AnyMorphism::from_json(&s).unwrap(), AnyMorphism::Generic(f));

        let c = Arc::new(ScalarBackend::root_of_unity_level(5).unwrap());
        let g = Morphism::elementary(&c, 2, 1).unwrap().scale(&c.q);
        assert_eq!(
            AnyMorphism::from_json(&g.to_json()).unwrap(),
            AnyMorphism::Cyclotomic(g)
        );
        let fl = Arc::new(ScalarBackend::float_d(1.25).unwrap());
        let h = Morphism::cap(&fl).scale(&ComplexFloat::new(0.5, -2.0));
        assert_eq!(AnyMorphism::from_json(&h.to_json()).unwrap(), AnyMorphism::Float(h));
        assert!(Morphism::from_json(&g_json_with_other_d(), &b).is_err());
    }

    fn g_json_with_other_d() -> String {
        r#"{"m":0,"n":2,"d":"2*q","terms":[{"coeff":"1","diagram":"0:2:()"}]}"#.into()
    }

    #[test]
    fn backend_mismatch() {
        let a = generic();
        let b2 = Arc::new(a.with_loop_value(a.d.neg()));
        let f = Morphism::identity(&a, 1);
        let g = Morphism::identity(&b2, 1);
        assert!(matches!(f.compose(&g), Err(Error::BackendMismatch(_))));
        assert!(matches!(f.add(&g), Err(Error::BackendMismatch(_))));
    }

    #[test]
    fn rescaling_isomorphism() {
        // h_i -> (d1/d2) h_i respects the relations when d1^2 = d2^2
        let a = generic();
        let b = Arc::new(a.with_loop_value(a.d.neg()));
        let ratio = a.d.div(&b.d).unwrap();
        let n = 4;
        let img: Vec<_> = (1..n)
            .map(|i| Morphism::elementary(&b, n, i).unwrap().scale(&ratio))
            .collect();
        for i in 0..n - 1 {
            assert_eq!(img[i].compose(&img[i]).unwrap(), img[i].scale(&a.d));
            for j in 0..n - 1 {
                let ij = img[i].compose(&img[j]).unwrap();
                if i.abs_diff(j) == 1 {
                    assert_eq!(ij.compose(&img[i]).unwrap(), img[i]);
                }
                if i.abs_diff(j) >= 2 {
                    assert_eq!(ij, img[j].compose(&img[i]).unwrap());
                }
            }
        }
    }
}
