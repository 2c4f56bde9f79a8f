//! Words in the generators `h_1, ..., h_{n-1}` and their Jones normal form.
//!
//! A reduced word is a product of descending runs
//! `(h_{i1} ... h_{j1}) (h_{i2} ... h_{j2}) ... (h_{ik} ... h_{jk})` with
//! `i1 < ... < ik` and `j1 < ... < jk`. Reduced words evaluate to distinct
//! diagrams without loops, and every diagram of `K_n` arises this way.

use std::fmt;
use std::sync::Arc;

use crate::diagram::{Diagram, Endpoint, DEFAULT_MAX_PAIRS};
use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::scalar::{Field, ScalarBackend};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    n: usize,
    letters: Vec<usize>,
}

impl Word {
    pub fn new(n: usize, letters: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&i| i == 0 || i >= n) {
            return Err(Error::IndexOutOfRange(format!(
                "generator h_{bad} in a word on {n} strands"
            )));
        }
        Ok(Self { n, letters })
    }

    pub fn unit(n: usize) -> Self {
        Self {
            n,
            letters: Vec::new(),
        }
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    /// The same letters on one more strand.
    pub fn include(&self) -> Self {
        Self {
            n: self.n + 1,
            letters: self.letters.clone(),
        }
    }

    /// Product of the generators left to right, as a diagram and a loop count.
    pub fn evaluate(&self) -> (Diagram, u32) {
        let mut acc = Diagram::identity(self.n);
        let mut loops = 0;
        for &i in &self.letters {
            let h = Diagram::elementary(self.n, i).expect("letters are in range");
            let r = acc.compose_unchecked(&h);
            acc = r.diagram;
            loops += r.loops;
        }
        (acc, loops)
    }

    /// Parse `n: i1 i2 ... ik`.
    pub fn parse(s: &str) -> Result<Self> {
        let (n_str, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::parse(0, "expected `n: i1 i2 ...`"))?;
        let n: usize = n_str
            .trim()
            .parse()
            .map_err(|_| Error::parse(0, format!("bad strand count `{}`", n_str.trim())))?;
        let mut letters = Vec::new();
        let base = n_str.len() + 1;
        for tok in rest.split_whitespace() {
            let at = base + (tok.as_ptr() as usize - rest.as_ptr() as usize);
            let i: usize = tok
                .parse()
                .map_err(|_| Error::parse(at, format!("bad generator index `{tok}`")))?;
            letters.push(i);
        }
        Self::new(n, letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.n)?;
        for i in &self.letters {
            write!(f, " {i}")?;
        }
        Ok(())
    }
}

/// `d^{d_exponent}` times a product of descending runs `(i, j)`, each meaning
/// `h_i h_{i-1} ... h_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub n: usize,
    pub d_exponent: u32,
    pub blocks: Vec<(usize, usize)>,
}

impl NormalForm {
    pub fn unit(n: usize) -> Self {
        Self {
            n,
            d_exponent: 0,
            blocks: Vec::new(),
        }
    }

    /// Check the block conditions: `j <= i`, both strictly increasing, in range.
    pub fn validate(&self) -> Result<()> {
        let mut prev: Option<(usize, usize)> = None;
        for &(i, j) in &self.blocks {
            if j == 0 || j > i || i >= self.n {
                return Err(Error::IndexOutOfRange(format!(
                    "block ({i}..{j}) on {} strands",
                    self.n
                )));
            }
            if let Some((pi, pj)) = prev {
                if pi >= i || pj >= j {
                    return Err(Error::IndexOutOfRange(format!(
                        "block ({i}..{j}) does not increase after ({pi}..{pj})"
                    )));
                }
            }
            prev = Some((i, j));
        }
        Ok(())
    }

    pub fn word(&self) -> Word {
        let letters = self
            .blocks
            .iter()
            .flat_map(|&(i, j)| (j..=i).rev())
            .collect();
        Word { n: self.n, letters }
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|&(i, j)| i - j + 1).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Parse `n: d^e; (i1..j1)(i2..j2)...`. The `d^e;` part may be omitted.
    pub fn parse(s: &str) -> Result<Self> {
        let (n_str, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::parse(0, "expected `n: d^e; (i..j)...`"))?;
        let n: usize = n_str
            .trim()
            .parse()
            .map_err(|_| Error::parse(0, format!("bad strand count `{}`", n_str.trim())))?;
        let mut offset = n_str.len() + 1;
        let mut body = rest;
        let mut d_exponent = 0;
        if let Some((head, tail)) = rest.split_once(';') {
            let h = head.trim();
            let e = h
                .strip_prefix("d^")
                .ok_or_else(|| Error::parse(offset, "expected `d^e;`"))?;
            d_exponent = e
                .trim()
                .parse()
                .map_err(|_| Error::parse(offset, format!("bad exponent `{e}`")))?;
            offset += head.len() + 1;
            body = tail;
        }
        let mut blocks = Vec::new();
        let bytes = body.as_bytes();
        let mut p = 0;
        let skip = |p: &mut usize| {
            while *p < bytes.len() && bytes[*p].is_ascii_whitespace() {
                *p += 1;
            }
        };
        let number = |p: &mut usize| -> Result<usize> {
            let start = *p;
            while *p < bytes.len() && bytes[*p].is_ascii_digit() {
                *p += 1;
            }
            body[start..*p]
                .parse()
                .map_err(|_| Error::parse(offset + start, "expected an integer"))
        };
        loop {
            skip(&mut p);
            if p == bytes.len() {
                break;
            }
            if bytes[p] != b'(' {
                return Err(Error::parse(offset + p, "expected `(`"));
            }
            p += 1;
            skip(&mut p);
            let i = number(&mut p)?;
            skip(&mut p);
            if !body[p..].starts_with("..") {
                return Err(Error::parse(offset + p, "expected `..`"));
            }
            p += 2;
            skip(&mut p);
            let j = number(&mut p)?;
            skip(&mut p);
            if bytes.get(p) != Some(&b')') {
                return Err(Error::parse(offset + p, "expected `)`"));
            }
            p += 1;
            blocks.push((i, j));
        }
        let nf = Self {
            n,
            d_exponent,
            blocks,
        };
        nf.validate()?;
        Ok(nf)
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: d^{};", self.n, self.d_exponent)?;
        if !self.blocks.is_empty() {
            f.write_str(" ")?;
        }
        for (i, j) in &self.blocks {
            write!(f, "({i}..{j})")?;
        }
        Ok(())
    }
}

pub fn word_to_morphism<S: Field>(w: &Word, backend: &Arc<ScalarBackend<S>>) -> Morphism<S> {
    let (diagram, loops) = w.evaluate();
    Morphism::from_diagram(backend, diagram).scale(&backend.d.pow(loops))
}

/// Normalize by evaluating to a diagram and reading off its reduced word.
pub fn normal_form(w: &Word) -> NormalForm {
    let (diagram, loops) = w.evaluate();
    let mut nf = diagram_to_reduced(&diagram).expect("evaluation of a word is an endomorphism");
    nf.d_exponent = loops;
    nf
}

/// All reduced forms on `n` strands, ordered by number of blocks, then
/// lexicographically with `i` ascending and `j` descending.
pub fn enumerate_reduced(n: usize) -> Result<Vec<NormalForm>> {
    enumerate_reduced_with_limit(n, DEFAULT_MAX_PAIRS)
}

pub fn enumerate_reduced_with_limit(n: usize, max_strands: usize) -> Result<Vec<NormalForm>> {
    if n > max_strands {
        return Err(Error::SizeLimit {
            pairs: n,
            limit: max_strands,
        });
    }
    let mut all = Vec::new();
    let mut cur = Vec::new();
    reduced_rec(n, 0, 0, &mut cur, &mut all);
    all.sort_by_key(|b: &Vec<(usize, usize)>| b.len());
    Ok(all
        .into_iter()
        .map(|blocks| NormalForm {
            n,
            d_exponent: 0,
            blocks,
        })
        .collect())
}

fn reduced_rec(
    n: usize,
    min_i: usize,
    min_j: usize,
    cur: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    out.push(cur.clone());
    for i in min_i + 1..n {
        for j in (min_j + 1..=i).rev() {
            cur.push((i, j));
            reduced_rec(n, i, j, cur, out);
            cur.pop();
        }
    }
}

/// The diagram of a reduced form; composing its blocks produces no loops.
pub fn reduced_to_diagram(nf: &NormalForm) -> Result<Diagram> {
    nf.validate()?;
    let (d, loops) = nf.word().evaluate();
    debug_assert_eq!(loops, 0, "reduced words are loop-free");
    Ok(d)
}

/// `h_m h_{m-1} ... h_l` on `n` strands.
fn block_diagram(n: usize, m: usize, l: usize) -> Diagram {
    let mut pairs = vec![
        (Endpoint::Bottom(l), Endpoint::Bottom(l + 1)),
        (Endpoint::Top(m), Endpoint::Top(m + 1)),
    ];
    pairs.extend((l + 2..=m + 1).map(|j| (Endpoint::Bottom(j), Endpoint::Top(j - 2))));
    pairs.extend(
        (1..=n)
            .filter(|&k| k < l || k > m + 1)
            .map(|k| (Endpoint::Bottom(k), Endpoint::Top(k))),
    );
    Diagram::from_pairs(n, n, pairs).expect("descending run is planar")
}

/// The unique reduced form evaluating to `d`.
///
/// Peels the last block: if `m + 1` is the largest non-vertical position, the
/// last block is `(m, l)` for some bottom cup `(B_l, B_{l+1})`, and undoing it
/// leaves a diagram on the first `m` strands.
pub fn diagram_to_reduced(d: &Diagram) -> Result<NormalForm> {
    if !d.is_endomorphism() {
        return Err(Error::NotEndomorphism {
            top: d.top(),
            bottom: d.bottom(),
        });
    }
    let n = d.top();
    let mut blocks = peel(d, n, usize::MAX).ok_or_else(|| {
        Error::NotPlanar(format!("no reduced word evaluates to {d}"))
    })?;
    blocks.reverse();
    Ok(NormalForm {
        n,
        d_exponent: 0,
        blocks,
    })
}

/// Blocks of `d` (restricted to strands `1..=width`) in reverse order, with
/// every block bottom below `bound`.
fn peel(d: &Diagram, width: usize, bound: usize) -> Option<Vec<(usize, usize)>> {
    let Some(top) = (1..=width).rev().find(|&k| !d.is_vertical_at(k)) else {
        return Some(Vec::new());
    };
    if top < 2 {
        return None;
    }
    let m = top - 1;
    for l in (1..=m).rev() {
        if l >= bound {
            continue;
        }
        if d.partner(Endpoint::Bottom(l)) != Some(Endpoint::Bottom(l + 1)) {
            continue;
        }
        // relabel the endpoints of d that belong to the remaining word
        let to_rest = |e: Endpoint| -> Endpoint {
            match e {
                Endpoint::Top(k) if k <= m => Endpoint::Top(k),
                Endpoint::Top(k) if k == m + 1 => Endpoint::Bottom(m),
                Endpoint::Bottom(k) if k < l => Endpoint::Bottom(k),
                Endpoint::Bottom(k) if k >= l + 2 && k <= m + 1 => Endpoint::Bottom(k - 2),
                other => other,
            }
        };
        let inside = |e: Endpoint| match e {
            Endpoint::Top(k) => k <= m + 1,
            Endpoint::Bottom(k) => k <= m + 1 && k != l && k != l + 1,
        };
        let pairs: Vec<_> = d
            .pairs()
            .into_iter()
            .filter(|&(a, b)| inside(a) && inside(b))
            .map(|(a, b)| (to_rest(a), to_rest(b)))
            .collect();
        if pairs.len() != m {
            continue;
        }
        let Ok(rest) = Diagram::from_pairs(m, m, pairs) else {
            continue;
        };
        if let Some(mut tail) = peel(&rest, m, l) {
            tail.insert(0, (m, l));
            return Some(tail);
        }
    }
    None
}

/// Diagram of the block `h_m ... h_l` on `n` strands, for callers that build
/// words block by block.
pub fn descending_run(n: usize, m: usize, l: usize) -> Result<Diagram> {
    if l == 0 || l > m || m >= n {
        return Err(Error::IndexOutOfRange(format!(
            "run ({m}..{l}) on {n} strands"
        )));
    }
    Ok(block_diagram(n, m, l))
}

/// `(h_n ... h_1)(h_{n+1} ... h_2) ... (h_{2n-1} ... h_n)` on `2n` strands.
pub fn h_element_word(n: usize) -> Word {
    let letters = (0..n).flat_map(|t| (t + 1..=t + n).rev()).collect();
    Word {
        n: 2 * n,
        letters,
    }
}
