//! Kauffman diagrams: non-crossing perfect matchings of `m` top and `n` bottom
//! boundary points.
//!
//! Boundary points are walked counterclockwise as `B1, ..., Bn, Tm, ..., T1`.
//! In that circular order a matching is non-crossing exactly when it nests like
//! balanced parentheses, which gives both the canonical form and the wire
//! encoding `m:n:parens`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Default bound on strand pairs for enumeration.
pub const DEFAULT_MAX_PAIRS: usize = 16;

/// Representation limit: matchings are stored with one byte per point.
pub const HARD_MAX_PAIRS: usize = 127;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Endpoint {
    /// 1-based position on the top edge.
    Top(usize),
    /// 1-based position on the bottom edge.
    Bottom(usize),
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::Top(k) => write!(f, "T{k}"),
            Endpoint::Bottom(k) => write!(f, "B{k}"),
        }
    }
}

/// An element of `K_{m,n}`: `m = top` points, `n = bottom` points, a morphism
/// `X^n -> X^m` (diagrams are read bottom to top).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    top: u8,
    bottom: u8,
    /// `partner[i]` is the circular index matched with circular index `i`.
    partner: Box<[u8]>,
}

/// Outcome of stacking two diagrams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComposeResult {
    pub diagram: Diagram,
    pub loops: u32,
}

fn check_size(points: usize) -> Result<()> {
    if points / 2 > HARD_MAX_PAIRS {
        return Err(Error::SizeLimit {
            pairs: points / 2,
            limit: HARD_MAX_PAIRS,
        });
    }
    Ok(())
}

impl Diagram {
    pub fn top(&self) -> usize {
        self.top as usize
    }

    pub fn bottom(&self) -> usize {
        self.bottom as usize
    }

    pub fn points(&self) -> usize {
        self.partner.len()
    }

    pub fn is_endomorphism(&self) -> bool {
        self.top == self.bottom
    }

    #[inline]
    fn idx_top(&self, k: usize) -> usize {
        self.bottom as usize + self.top as usize - k
    }

    #[inline]
    fn idx_bottom(&self, k: usize) -> usize {
        k - 1
    }

    #[inline]
    fn endpoint_at(&self, idx: usize) -> Endpoint {
        let n = self.bottom as usize;
        if idx < n {
            Endpoint::Bottom(idx + 1)
        } else {
            Endpoint::Top(n + self.top as usize - idx)
        }
    }

    fn index_of(&self, e: Endpoint) -> Option<usize> {
        match e {
            Endpoint::Top(k) if (1..=self.top()).contains(&k) => Some(self.idx_top(k)),
            Endpoint::Bottom(k) if (1..=self.bottom()).contains(&k) => Some(self.idx_bottom(k)),
            _ => None,
        }
    }

    /// The endpoint joined to `e`, or `None` if `e` is not a boundary point.
    pub fn partner(&self, e: Endpoint) -> Option<Endpoint> {
        let i = self.index_of(e)?;
        Some(self.endpoint_at(self.partner[i] as usize))
    }

    /// The strands as endpoint pairs, sorted by first endpoint in circular order.
    pub fn pairs(&self) -> Vec<(Endpoint, Endpoint)> {
        (0..self.points())
            .filter(|&i| (self.partner[i] as usize) > i)
            .map(|i| (self.endpoint_at(i), self.endpoint_at(self.partner[i] as usize)))
            .collect()
    }

    /// Validate a circular partner array.
    fn from_partner(top: usize, bottom: usize, partner: Vec<u8>) -> Result<Self> {
        check_size(top + bottom)?;
        if partner.len() != top + bottom {
            return Err(Error::NotPlanar(format!(
                "{} matched points for {top} top and {bottom} bottom points",
                partner.len()
            )));
        }
        let mut stack: Vec<usize> = Vec::new();
        for (i, &p) in partner.iter().enumerate() {
            let p = p as usize;
            if p >= partner.len() || p == i || partner[p] as usize != i {
                return Err(Error::NotPlanar(format!("point {i} is not properly matched")));
            }
            if p > i {
                stack.push(i);
            } else if stack.pop() != Some(p) {
                return Err(Error::NotPlanar("strands cross".into()));
            }
        }
        Ok(Self {
            top: top as u8,
            bottom: bottom as u8,
            partner: partner.into_boxed_slice(),
        })
    }

    /// Build from strands given as endpoint pairs.
    pub fn from_pairs(
        top: usize,
        bottom: usize,
        pairs: impl IntoIterator<Item = (Endpoint, Endpoint)>,
    ) -> Result<Self> {
        check_size(top + bottom)?;
        if !(top + bottom).is_multiple_of(2) {
            return Err(Error::NotPlanar(format!("{top} + {bottom} points is odd")));
        }
        let shell = Self {
            top: top as u8,
            bottom: bottom as u8,
            partner: Box::new([]),
        };
        let mut partner = vec![u8::MAX; top + bottom];
        for (a, b) in pairs {
            let ia = shell
                .index_of(a)
                .ok_or_else(|| Error::IndexOutOfRange(format!("endpoint {a}")))?;
            let ib = shell
                .index_of(b)
                .ok_or_else(|| Error::IndexOutOfRange(format!("endpoint {b}")))?;
            if partner[ia] != u8::MAX || partner[ib] != u8::MAX || ia == ib {
                return Err(Error::NotPlanar(format!("endpoint used twice in {a}-{b}")));
            }
            partner[ia] = ib as u8;
            partner[ib] = ia as u8;
        }
        if partner.contains(&u8::MAX) {
            return Err(Error::NotPlanar("unmatched endpoint".into()));
        }
        Self::from_partner(top, bottom, partner)
    }

    fn map_endpoints(&self, top: usize, bottom: usize, f: impl Fn(Endpoint) -> Endpoint) -> Self {
        let pairs: Vec<_> = self.pairs().into_iter().map(|(a, b)| (f(a), f(b))).collect();
        Self::from_pairs(top, bottom, pairs).expect("endpoint map preserves planarity")
    }

    pub fn identity(n: usize) -> Self {
        Self::from_pairs(n, n, (1..=n).map(|k| (Endpoint::Bottom(k), Endpoint::Top(k))))
            .expect("identity is planar")
    }

    /// `h_i` in `K_n`: cup on `(Bi, Bi+1)`, cap on `(Ti, Ti+1)`, other strands vertical.
    pub fn elementary(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange(format!(
                "elementary diagram h_{i} needs 1 <= i <= {}",
                n as i64 - 1
            )));
        }
        let mut pairs = vec![
            (Endpoint::Bottom(i), Endpoint::Bottom(i + 1)),
            (Endpoint::Top(i), Endpoint::Top(i + 1)),
        ];
        pairs.extend(
            (1..=n)
                .filter(|&k| k != i && k != i + 1)
                .map(|k| (Endpoint::Bottom(k), Endpoint::Top(k))),
        );
        Self::from_pairs(n, n, pairs)
    }

    /// The pairing `X (x) X -> I`, an element of `K_{0,2}`.
    pub fn cap() -> Self {
        Self::nested_cap(1)
    }

    /// The copairing `I -> X (x) X`, an element of `K_{2,0}`.
    pub fn cup() -> Self {
        Self::nested_cup(1)
    }

    /// Pairing of `X^n` with itself: nested arcs `(Bi, B(2n+1-i))` in `K_{0,2n}`.
    pub fn nested_cap(n: usize) -> Self {
        Self::from_pairs(
            0,
            2 * n,
            (1..=n).map(|i| (Endpoint::Bottom(i), Endpoint::Bottom(2 * n + 1 - i))),
        )
        .expect("nested arcs are planar")
    }

    /// Copairing of `X^n`: nested arcs `(Ti, T(2n+1-i))` in `K_{2n,0}`.
    pub fn nested_cup(n: usize) -> Self {
        Self::from_pairs(
            2 * n,
            0,
            (1..=n).map(|i| (Endpoint::Top(i), Endpoint::Top(2 * n + 1 - i))),
        )
        .expect("nested arcs are planar")
    }

    /// Caps minus cups in any arc presentation; equals `(n - m) / 2`.
    pub fn arc_index(&self) -> i64 {
        (self.bottom as i64 - self.top as i64) / 2
    }

    /// Number of strands joining the top edge to the bottom edge.
    pub fn through_strands(&self) -> usize {
        (0..self.bottom as usize)
            .filter(|&i| self.partner[i] as usize >= self.bottom as usize)
            .count()
    }

    /// All diagrams of `K_{m,n}` in lexicographic order of their encodings.
    pub fn enumerate(m: usize, n: usize) -> Result<Vec<Diagram>> {
        Self::enumerate_with_limit(m, n, DEFAULT_MAX_PAIRS)
    }

    pub fn enumerate_with_limit(m: usize, n: usize, max_pairs: usize) -> Result<Vec<Diagram>> {
        let total = m + n;
        if total / 2 > max_pairs.min(HARD_MAX_PAIRS) {
            return Err(Error::SizeLimit {
                pairs: total / 2,
                limit: max_pairs.min(HARD_MAX_PAIRS),
            });
        }
        if !total.is_multiple_of(2) {
            return Ok(Vec::new());
        }
        let mut out = Vec::with_capacity(catalan(total / 2) as usize);
        let mut partner = vec![0u8; total];
        let mut stack = Vec::with_capacity(total / 2);
        enumerate_rec(0, total, &mut partner, &mut stack, &mut |p| {
            out.push(Diagram {
                top: m as u8,
                bottom: n as u8,
                partner: p.to_vec().into_boxed_slice(),
            })
        });
        Ok(out)
    }

    /// Stack `self` on top of `lower`, removing closed loops.
    pub fn compose(&self, lower: &Diagram) -> Result<ComposeResult> {
        if self.bottom != lower.top {
            return Err(Error::SignatureMismatch(format!(
                "cannot compose K_{{{},{}}} over K_{{{},{}}}",
                self.top, self.bottom, lower.top, lower.bottom
            )));
        }
        Ok(self.compose_unchecked(lower))
    }

    pub(crate) fn compose_unchecked(&self, lower: &Diagram) -> ComposeResult {
        let m = self.top as usize;
        let mid = self.bottom as usize;
        let p = lower.bottom as usize;
        let total = m + p;
        let mut partner = vec![u8::MAX; total];
        let mut seen = [false; 256];

        // result circular index: Bk -> k-1 (lower), Tk -> p + m - k (upper)
        for start in 0..total {
            if partner[start] != u8::MAX {
                continue;
            }
            // (in_upper, circular index inside that diagram)
            let (mut upper_side, mut idx) = if start < p {
                (false, start)
            } else {
                (true, mid + m - (p + m - start))
            };
            let end = loop {
                if upper_side {
                    let j = self.partner[idx] as usize;
                    if j >= mid {
                        // upper top point T(mid + m - j)
                        break p + m - (mid + m - j);
                    }
                    seen[j] = true;
                    // cross into lower at top point T(j+1)
                    upper_side = false;
                    idx = lower.idx_top(j + 1);
                } else {
                    let j = lower.partner[idx] as usize;
                    if j < p {
                        break j;
                    }
                    let k = mid + p - j; // lower top point Tk
                    seen[k - 1] = true;
                    upper_side = true;
                    idx = k - 1;
                }
            };
            partner[start] = end as u8;
            partner[end] = start as u8;
        }

        let mut loops = 0;
        for i in 0..mid {
            if seen[i] {
                continue;
            }
            loops += 1;
            let mut cur = i;
            loop {
                seen[cur] = true;
                let j = self.partner[cur] as usize; // another upper bottom point
                seen[j] = true;
                let lj = lower.idx_top(j + 1);
                let k = mid + p - lower.partner[lj] as usize; // lower top point Tk
                cur = k - 1;
                if seen[cur] {
                    break;
                }
            }
        }
        ComposeResult {
            diagram: Diagram {
                top: m as u8,
                bottom: p as u8,
                partner: partner.into_boxed_slice(),
            },
            loops,
        }
    }

    /// Juxtaposition with `right` placed to the right of `self`.
    pub fn tensor(&self, right: &Diagram) -> Result<Diagram> {
        let (m1, n1) = (self.top(), self.bottom());
        let top = m1 + right.top();
        let bottom = n1 + right.bottom();
        check_size(top + bottom)?;
        let shift = |e: Endpoint| match e {
            Endpoint::Top(k) => Endpoint::Top(k + m1),
            Endpoint::Bottom(k) => Endpoint::Bottom(k + n1),
        };
        let pairs = self
            .pairs()
            .into_iter()
            .chain(right.pairs().into_iter().map(|(a, b)| (shift(a), shift(b))));
        Self::from_pairs(top, bottom, pairs)
    }

    /// The transpose: rotation by a half turn, `K_{m,n} -> K_{n,m}`.
    pub fn rotate_pi(&self) -> Diagram {
        let total = self.points();
        if total == 0 {
            return self.clone();
        }
        let shift = self.top as usize;
        let mut partner = vec![0u8; total];
        for i in 0..total {
            let j = self.partner[i] as usize;
            partner[(i + shift) % total] = ((j + shift) % total) as u8;
        }
        Diagram {
            top: self.bottom,
            bottom: self.top,
            partner: partner.into_boxed_slice(),
        }
    }

    /// Upside-down reflection, `K_{m,n} -> K_{n,m}` with `Tk <-> Bk`.
    pub fn reflect_horizontal(&self) -> Diagram {
        self.map_endpoints(self.bottom(), self.top(), |e| match e {
            Endpoint::Top(k) => Endpoint::Bottom(k),
            Endpoint::Bottom(k) => Endpoint::Top(k),
        })
    }

    /// Left-right mirror image, `K_{m,n} -> K_{m,n}`.
    pub fn reflect_vertical(&self) -> Diagram {
        let (m, n) = (self.top(), self.bottom());
        self.map_endpoints(m, n, |e| match e {
            Endpoint::Top(k) => Endpoint::Top(m + 1 - k),
            Endpoint::Bottom(k) => Endpoint::Bottom(n + 1 - k),
        })
    }

    /// Join the rightmost `k` top points to the rightmost `k` bottom points
    /// around the right side. Returns the remaining diagram and the loop count.
    pub fn close_right(&self, k: usize) -> Result<ComposeResult> {
        let (m, n) = (self.top(), self.bottom());
        if k > m || k > n {
            return Err(Error::SignatureMismatch(format!(
                "cannot close {k} strands of K_{{{m},{n}}}"
            )));
        }
        // glue[i] = circular index identified with closed point i
        let total = m + n;
        let mut glue = vec![usize::MAX; total];
        for j in 1..=k {
            let t = self.idx_top(m - k + j);
            let b = self.idx_bottom(n - k + j);
            glue[t] = b;
            glue[b] = t;
        }
        // new coordinates for surviving points
        let (nm, nn) = (m - k, n - k);
        let new_index = |e: Endpoint| -> usize {
            match e {
                Endpoint::Bottom(b) => b - 1,
                Endpoint::Top(t) => nn + nm - t,
            }
        };
        let mut partner = vec![u8::MAX; nm + nn];
        let mut seen = vec![false; total];
        for start in 0..total {
            if glue[start] != usize::MAX || seen[start] {
                continue;
            }
            seen[start] = true;
            let mut cur = self.partner[start] as usize;
            while glue[cur] != usize::MAX {
                seen[cur] = true;
                let g = glue[cur];
                seen[g] = true;
                cur = self.partner[g] as usize;
            }
            seen[cur] = true;
            let a = new_index(self.endpoint_at(start));
            let b = new_index(self.endpoint_at(cur));
            partner[a] = b as u8;
            partner[b] = a as u8;
        }
        let mut loops = 0;
        for i in 0..total {
            if seen[i] {
                continue;
            }
            loops += 1;
            let mut cur = i;
            while !seen[cur] {
                seen[cur] = true;
                let j = self.partner[cur] as usize;
                seen[j] = true;
                cur = glue[j];
            }
        }
        Ok(ComposeResult {
            diagram: Diagram::from_partner(nm, nn, partner)?,
            loops,
        })
    }

    /// Closed loops after joining every top point to the bottom point below it.
    pub fn closure_loops(&self) -> Result<u32> {
        if !self.is_endomorphism() {
            return Err(Error::NotEndomorphism {
                top: self.top(),
                bottom: self.bottom(),
            });
        }
        Ok(self.close_right(self.top())?.loops)
    }

    /// Whether `Tk` is joined straight down to `Bk`.
    pub fn is_vertical_at(&self, k: usize) -> bool {
        self.partner(Endpoint::Top(k)) == Some(Endpoint::Bottom(k))
    }

    pub fn parens(&self) -> String {
        (0..self.points())
            .map(|i| if self.partner[i] as usize > i { '(' } else { ')' })
            .collect()
    }

    /// `m:n:parens` with the parentheses read in circular order `B1..Bn, Tm..T1`.
    pub fn encode(&self) -> String {
        format!("{}:{}:{}", self.top, self.bottom, self.parens())
    }

    pub fn decode(s: &str) -> Result<Diagram> {
        let mut parts = s.splitn(3, ':');
        let m_str = parts.next().unwrap_or("");
        let n_str = parts
            .next()
            .ok_or_else(|| Error::parse(m_str.len(), "expected `m:n:parens`"))?;
        let body = parts
            .next()
            .ok_or_else(|| Error::parse(m_str.len() + n_str.len() + 1, "expected `m:n:parens`"))?;
        let m: usize = m_str
            .trim()
            .parse()
            .map_err(|_| Error::parse(0, format!("bad top count `{m_str}`")))?;
        let n: usize = n_str
            .trim()
            .parse()
            .map_err(|_| Error::parse(m_str.len() + 1, format!("bad bottom count `{n_str}`")))?;
        let offset = m_str.len() + n_str.len() + 2;
        check_size(m + n)?;
        if body.len() != m + n {
            return Err(Error::parse(
                offset,
                format!("expected {} parentheses, found {}", m + n, body.len()),
            ));
        }
        let mut partner = vec![0u8; m + n];
        let mut stack = Vec::new();
        for (i, c) in body.bytes().enumerate() {
            match c {
                b'(' => stack.push(i),
                b')' => {
                    let j = stack.pop().ok_or_else(|| {
                        Error::NotPlanar(format!("unmatched `)` at position {}", offset + i))
                    })?;
                    partner[i] = j as u8;
                    partner[j] = i as u8;
                }
                _ => {
                    return Err(Error::parse(
                        offset + i,
                        format!("unexpected character `{}`", c as char),
                    ))
                }
            }
        }
        if !stack.is_empty() {
            return Err(Error::NotPlanar(format!("{} unmatched `(`", stack.len())));
        }
        Self::from_partner(m, n, partner)
    }
}

fn enumerate_rec(
    pos: usize,
    total: usize,
    partner: &mut Vec<u8>,
    stack: &mut Vec<usize>,
    emit: &mut impl FnMut(&[u8]),
) {
    if pos == total {
        emit(partner);
        return;
    }
    let remaining = total - pos;
    // '(' sorts first; open only if the rest can still close everything
    if stack.len() < remaining - 1 {
        stack.push(pos);
        enumerate_rec(pos + 1, total, partner, stack, emit);
        stack.pop();
    }
    if let Some(open) = stack.pop() {
        partner[pos] = open as u8;
        partner[open] = pos as u8;
        enumerate_rec(pos + 1, total, partner, stack, emit);
        stack.push(open);
    }
}

/// Catalan number `C_n = binom(2n, n) / (n + 1)`.
pub fn catalan(n: usize) -> u128 {
    let mut c: u128 = 1;
    for k in 0..n as u128 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}

impl Ord for Diagram {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.top, self.bottom).cmp(&(other.top, other.bottom)).then_with(|| {
            let key = |d: &Diagram, i: usize| (d.partner[i] as usize) < i;
            for i in 0..self.points().min(other.points()) {
                match key(self, i).cmp(&key(other, i)) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            self.points().cmp(&other.points())
        })
    }
}

impl PartialOrd for Diagram {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram({})", self.encode())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    /// All perfect matchings of `points` circular points, filtered to the non-crossing ones.
    fn brute_force_noncrossing(points: usize) -> BTreeSet<Vec<usize>> {
        fn rec(free: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if free.is_empty() {
                out.push(cur.clone());
                return;
            }
            let a = free.remove(0);
            for k in 0..free.len() {
                let b = free.remove(k);
                cur[a] = b;
                cur[b] = a;
                rec(free, cur, out);
                free.insert(k, b);
            }
            free.insert(0, a);
        }
        let mut out = Vec::new();
        rec(&mut (0..points).collect(), &mut vec![0; points], &mut out);
        let crosses = |m: &Vec<usize>| {
            (0..points).any(|a| {
                let b = m[a];
                (0..points).any(|c| {
                    let d = m[c];
                    a < c && c < b && b < d
                })
            })
        };
        out.into_iter().filter(|m| !crosses(m)).collect()
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for (m, n) in [(4, 4), (2, 4), (0, 6), (3, 1)] {
            let ours: BTreeSet<Vec<usize>> = Diagram::enumerate(m, n)
                .unwrap()
                .iter()
                .map(|d| d.partner.iter().map(|&p| p as usize).collect())
                .collect();
            assert_eq!(ours, brute_force_noncrossing(m + n), "K_{{{m},{n}}}");
        }
        assert_eq!(Diagram::enumerate(4, 4).unwrap().len(), 14);
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(Diagram::enumerate(3, 3).unwrap().len(), 5);
        let empty = Diagram::enumerate(0, 0).unwrap();
        assert_eq!(empty.len(), 1);
        assert_eq!(empty[0].encode(), "0:0:");
        assert!(Diagram::enumerate(2, 1).unwrap().is_empty());
        for total in 0..=12 {
            for m in 0..=total {
                let ds = Diagram::enumerate(m, total - m).unwrap();
                let expect = if total % 2 == 0 { catalan(total / 2) } else { 0 };
                assert_eq!(ds.len() as u128, expect);
                assert!(ds.windows(2).all(|w| w[0].encode() < w[1].encode()));
            }
        }
        assert!(matches!(
            Diagram::enumerate(17, 17),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn encodings() {
        assert_eq!(Diagram::identity(2).encode(), "2:2:(())");
        assert_eq!(Diagram::cap().encode(), "0:2:()");
        assert_eq!(Diagram::elementary(2, 1).unwrap().encode(), "2:2:()()");
        let d = Diagram::decode("3:1:(())").unwrap();
        assert_eq!(Diagram::decode(&d.encode()).unwrap(), d);
        assert!(matches!(Diagram::decode("2:2:(()"), Err(Error::ParseError { .. })));
        assert!(matches!(Diagram::decode("2:2:)(()"), Err(Error::NotPlanar(_))));
        assert!(matches!(Diagram::decode("1:1:((x"), Err(Error::ParseError { .. })));
        assert!(matches!(Diagram::decode("2:2:(((("), Err(Error::NotPlanar(_))));
        assert!(matches!(Diagram::decode("a:2:()"), Err(Error::ParseError { pos: 0, .. })));
    }

    #[test]
    fn cap_cup_and_loops() {
        let r = Diagram::cap().compose(&Diagram::cup()).unwrap();
        assert_eq!(r.diagram, Diagram::identity(0));
        assert_eq!(r.loops, 1);
        let h = Diagram::elementary(2, 1).unwrap();
        let r = h.compose(&h).unwrap();
        assert_eq!(r, ComposeResult { diagram: h.clone(), loops: 1 });
        assert!(matches!(
            Diagram::identity(3).compose(&h),
            Err(Error::SignatureMismatch(_))
        ));
        // cap_n over cup_n closes n loops
        let r = Diagram::nested_cap(3).compose(&Diagram::nested_cup(3)).unwrap();
        assert_eq!(r.loops, 3);
    }

    #[test]
    fn identity_is_neutral() {
        for n in 0..=4 {
            for p in (n % 2..=6).step_by(2) {
                for d in Diagram::enumerate(n, p).unwrap() {
                    let r = Diagram::identity(n).compose(&d).unwrap();
                    assert_eq!((r.diagram, r.loops), (d.clone(), 0));
                    let r = d.rotate_pi().compose(&Diagram::identity(n)).unwrap();
                    assert_eq!((r.diagram, r.loops), (d.rotate_pi(), 0));
                }
            }
        }
    }

    #[test]
    fn tensor_examples() {
        let id1 = Diagram::identity(1);
        assert_eq!(id1.tensor(&id1).unwrap(), Diagram::identity(2));
        let ee = Diagram::cap().tensor(&Diagram::cap()).unwrap();
        assert_eq!(
            ee.pairs(),
            vec![
                (Endpoint::Bottom(1), Endpoint::Bottom(2)),
                (Endpoint::Bottom(3), Endpoint::Bottom(4))
            ]
        );
        let h1 = Diagram::elementary(2, 1).unwrap();
        assert_eq!(h1.tensor(&id1).unwrap(), Diagram::elementary(3, 1).unwrap());
        let e = Diagram::identity(0);
        let d = Diagram::decode("3:1:(())").unwrap();
        assert_eq!(d.tensor(&e).unwrap(), d);
        assert_eq!(e.tensor(&d).unwrap(), d);
    }

    #[test]
    fn symmetries_of_elementary_diagrams() {
        for n in 2..=6 {
            assert_eq!(Diagram::identity(n).rotate_pi(), Diagram::identity(n));
            for i in 1..n {
                let h = Diagram::elementary(n, i).unwrap();
                let mirrored = Diagram::elementary(n, n - i).unwrap();
                assert_eq!(h.rotate_pi(), mirrored);
                assert_eq!(h.reflect_vertical(), mirrored);
                assert_eq!(h.reflect_horizontal(), h);
                assert_eq!(h.arc_index(), 0);
            }
        }
        assert_eq!(Diagram::cap().reflect_horizontal(), Diagram::cup());
        assert_eq!(Diagram::cap().arc_index(), 1);
        assert_eq!(Diagram::cup().arc_index(), -1);
    }

    #[test]
    fn rotation_of_a_three_one_diagram() {
        // T1-T2 cap with T3 running down to B1
        let d = Diagram::from_pairs(
            3,
            1,
            [
                (Endpoint::Top(1), Endpoint::Top(2)),
                (Endpoint::Top(3), Endpoint::Bottom(1)),
            ],
        )
        .unwrap();
        let t = d.rotate_pi();
        assert_eq!((t.top(), t.bottom()), (1, 3));
        assert_eq!(t.partner(Endpoint::Bottom(3)), Some(Endpoint::Bottom(2)));
        assert_eq!(t.partner(Endpoint::Bottom(1)), Some(Endpoint::Top(1)));
        assert_eq!(t.rotate_pi(), d);
    }

    #[test]
    fn elementary_four_two() {
        let h = Diagram::elementary(4, 2).unwrap();
        assert!(h.is_vertical_at(1) && h.is_vertical_at(4));
        assert!(!h.is_vertical_at(2) && !h.is_vertical_at(3));
        assert!(Diagram::enumerate(4, 4).unwrap().contains(&h));
        assert!(Diagram::enumerate(3, 3).unwrap().contains(&Diagram::identity(3)));
        assert!(matches!(Diagram::elementary(3, 3), Err(Error::IndexOutOfRange(_))));
        assert!(matches!(Diagram::elementary(3, 0), Err(Error::IndexOutOfRange(_))));
        let k2 = Diagram::enumerate(2, 2).unwrap();
        let h1 = Diagram::elementary(2, 1).unwrap();
        assert_eq!(k2.len(), 2);
        assert!(k2.contains(&h1) && h1 != Diagram::identity(2));
    }

    #[test]
    fn temperley_lieb_relations() {
        for n in 2..=6 {
            let h: Vec<Diagram> = (1..n).map(|i| Diagram::elementary(n, i).unwrap()).collect();
            for i in 0..n - 1 {
                let sq = h[i].compose(&h[i]).unwrap();
                assert_eq!((&sq.diagram, sq.loops), (&h[i], 1));
                for j in 0..n - 1 {
                    let ij = h[i].compose(&h[j]).unwrap();
                    if i.abs_diff(j) >= 2 {
                        let ji = h[j].compose(&h[i]).unwrap();
                        assert_eq!(ij, ji);
                        assert_eq!(ij.loops, 0);
                    }
                    if i.abs_diff(j) == 1 {
                        let iji = ij.diagram.compose(&h[i]).unwrap();
                        assert_eq!((&iji.diagram, iji.loops + ij.loops), (&h[i], 0));
                    }
                }
            }
        }
    }

    #[test]
    fn transpose_is_antimultiplicative() {
        let k4 = Diagram::enumerate(4, 4).unwrap();
        for c in &k4 {
            assert_eq!(c.rotate_pi().rotate_pi(), *c);
            assert_eq!(c.rotate_pi(), c.reflect_horizontal().reflect_vertical());
            for d in &k4 {
                let cd = c.compose(d).unwrap();
                let tdc = d.rotate_pi().compose(&c.rotate_pi()).unwrap();
                assert_eq!(cd.diagram.rotate_pi(), tdc.diagram);
                assert_eq!(cd.loops, tdc.loops);
                assert_eq!(
                    c.tensor(d).unwrap().rotate_pi(),
                    d.rotate_pi().tensor(&c.rotate_pi()).unwrap()
                );
                assert_eq!(cd.diagram.arc_index(), c.arc_index() + d.arc_index());
            }
        }
    }

    #[test]
    fn arc_index_is_additive_across_signatures() {
        let k13 = Diagram::enumerate(1, 3).unwrap();
        let k31 = Diagram::enumerate(3, 1).unwrap();
        let k33 = Diagram::enumerate(3, 3).unwrap();
        for a in &k13 {
            for b in &k33 {
                let r = a.compose(b).unwrap();
                assert_eq!(r.diagram.arc_index(), a.arc_index() + b.arc_index());
            }
            for b in &k31 {
                let r = b.compose(a).unwrap();
                assert_eq!(r.diagram.arc_index(), a.arc_index() + b.arc_index());
                assert_eq!(a.tensor(b).unwrap().arc_index(), 0);
            }
        }
    }

    #[test]
    fn closures() {
        for n in 0..=5 {
            assert_eq!(Diagram::identity(n).closure_loops().unwrap(), n as u32);
            for i in 1..n {
                let h = Diagram::elementary(n, i).unwrap();
                assert_eq!(h.closure_loops().unwrap(), n as u32 - 1);
            }
        }
        let h = Diagram::elementary(2, 1).unwrap();
        let r = h.close_right(1).unwrap();
        assert_eq!((r.diagram, r.loops), (Diagram::identity(1), 0));
        assert!(Diagram::cap().closure_loops().is_err());
    }

    #[test]
    fn compose_output_is_canonical() {
        let k3 = Diagram::enumerate(3, 3).unwrap();
        let k31 = Diagram::enumerate(3, 1).unwrap();
        let k15 = Diagram::enumerate(1, 5).unwrap();
        for a in &k31 {
            for b in &k15 {
                let r = a.compose(b).unwrap();
                assert_eq!(Diagram::decode(&r.diagram.encode()).unwrap(), r.diagram);
            }
        }
        for a in &k3 {
            for b in &k3 {
                let r = a.compose(b).unwrap();
                assert!(k3.contains(&r.diagram));
            }
        }
    }
}
