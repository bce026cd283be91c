//! The Birman–Ko–Lee Garside structure.
//!
//! Band generators `(t s)` (`t > s`) generate the braid group; the simple
//! elements are the canonical factors, products of pairwise parallel
//! descending cycles. A canonical factor is determined by its non-crossing
//! partition of `{1..n}`, and is stored as its permutation table: each
//! block `b_1 < b_2 < .. < b_k` is the cycle `b_1 -> b_2 -> .. -> b_k -> b_1`
//! of start-to-end positions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::garside::{GarsideStructure, NormalForm, Presentation};
use crate::perm::{Permutation, MAX_STRANDS};
use crate::word::{BraidWord, Letter};

/// `(t s) = σ_{t-1} ⋯ σ_s σ_{s+1}⁻¹ ⋯ σ_{t-1}⁻¹`, `t > s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BandGenerator {
    pub t: usize,
    pub s: usize,
}

impl BandGenerator {
    pub fn new(t: usize, s: usize, strands: usize) -> Result<Self> {
        if s == 0 || t <= s || t > strands {
            return Err(Error::InvalidBand { t, s, strands });
        }
        Ok(BandGenerator { t, s })
    }

    /// The Artin generator `σ_i = (i+1 i)`.
    pub fn artin(i: usize) -> Self {
        BandGenerator { t: i + 1, s: i }
    }
}

impl fmt::Display for BandGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.t, self.s)
    }
}

/// The defining Artin word of a band generator.
pub fn band_to_artin(g: BandGenerator, strands: usize) -> Result<BraidWord> {
    let g = BandGenerator::new(g.t, g.s, strands)?;
    let mut letters: Vec<Letter> = (g.s..g.t).rev().map(Letter::pos).collect();
    letters.extend((g.s + 1..g.t).map(Letter::neg));
    BraidWord::new(strands, letters)
}

/// `(n_1 n_2 .. n_m)` with `n_1 > n_2 > .. > n_m`, `m ≥ 2`; the braid
/// `(n_1 n_2)(n_2 n_3) ⋯ (n_{m-1} n_m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DescendingCycle(Vec<usize>);

impl DescendingCycle {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::InvalidCycle(format!("{entries:?} has fewer than two entries")));
        }
        if entries.windows(2).any(|w| w[0] <= w[1]) || entries.last() == Some(&0) {
            return Err(Error::InvalidCycle(format!("{entries:?} is not strictly decreasing and positive")));
        }
        Ok(DescendingCycle(entries))
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn word(&self) -> BklWord {
        let n = self.0[0];
        let letters = self.0.windows(2).map(|w| (BandGenerator { t: w[0], s: w[1] }, true)).collect();
        BklWord { strands: n, letters }
    }
}

impl fmt::Display for DescendingCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// `descending_cycle_word` on a given strand count.
pub fn descending_cycle_word(c: &DescendingCycle, strands: usize) -> Result<BklWord> {
    let mut w = c.word();
    if c.0[0] > strands {
        return Err(Error::InvalidCycle(format!("{c} exceeds {strands} strands")));
    }
    w.strands = strands;
    Ok(w)
}

/// Two cycles are parallel when for every edge `(n_i, n_{i+1})` of one and
/// `(m_j, m_{j+1})` of the other
/// `(n_i - m_j)(n_i - m_{j+1})(n_{i+1} - m_j)(n_{i+1} - m_{j+1}) > 0`.
pub fn are_parallel(a: &DescendingCycle, b: &DescendingCycle) -> bool {
    a.0.windows(2).all(|x| {
        b.0.windows(2).all(|y| {
            let d = |p: usize, q: usize| p as i64 - q as i64;
            d(x[0], y[0]) * d(x[0], y[1]) * d(x[1], y[0]) * d(x[1], y[1]) > 0
        })
    })
}

/// A canonical factor on `n` strands.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalFactor(Permutation);

impl CanonicalFactor {
    pub fn identity(n: usize) -> Self {
        CanonicalFactor(Permutation::identity(n))
    }

    /// `δ = (n n-1 .. 1)`.
    pub fn delta(n: usize) -> Self {
        CanonicalFactor(Permutation::from_fn(n, |i| (i + 1) % n))
    }

    pub fn band(g: BandGenerator, n: usize) -> Result<Self> {
        let g = BandGenerator::new(g.t, g.s, n)?;
        Ok(Self::from_blocks_unchecked(n, &[vec![g.s - 1, g.t - 1]]))
    }

    /// The product of the given cycles, after checking that they are
    /// disjoint and pairwise parallel.
    pub fn from_cycles(cycles: &[DescendingCycle], n: usize) -> Result<Self> {
        if n == 0 || n > MAX_STRANDS {
            return Err(Error::StrandCount(n));
        }
        let mut used = vec![false; n + 1];
        for c in cycles {
            if c.0[0] > n {
                return Err(Error::InvalidCycle(format!("{c} exceeds {n} strands")));
            }
            for &e in &c.0 {
                if std::mem::replace(&mut used[e], true) {
                    return Err(Error::OverlappingCycles(e));
                }
            }
        }
        for (i, a) in cycles.iter().enumerate() {
            for b in &cycles[i + 1..] {
                if !are_parallel(a, b) {
                    return Err(Error::NotParallel(a.to_string(), b.to_string()));
                }
            }
        }
        let blocks: Vec<Vec<usize>> =
            cycles.iter().map(|c| c.0.iter().rev().map(|&e| e - 1).collect()).collect();
        Ok(Self::from_blocks_unchecked(n, &blocks))
    }

    /// Blocks are 0-based and sorted ascending.
    fn from_blocks_unchecked(n: usize, blocks: &[Vec<usize>]) -> Self {
        let mut img: Vec<usize> = (0..n).collect();
        for b in blocks {
            for (k, &e) in b.iter().enumerate() {
                img[e] = b[(k + 1) % b.len()];
            }
        }
        CanonicalFactor(Permutation::from_fn(n, |i| img[i]))
    }

    /// Accepts a table only if it is the permutation of a canonical factor.
    pub fn from_permutation(p: Permutation) -> Option<Self> {
        let f = CanonicalFactor(p);
        let cycles = p.cycles();
        for c in &cycles {
            // each cycle must be rotated ascending: min -> .. -> max -> min
            let mut sorted = c.clone();
            sorted.sort_unstable();
            if *c != sorted {
                return None;
            }
        }
        let descending = f.cycles();
        for (i, a) in descending.iter().enumerate() {
            if descending[i + 1..].iter().any(|b| !are_parallel(a, b)) {
                return None;
            }
        }
        Some(f)
    }

    pub fn permutation(&self) -> &Permutation {
        &self.0
    }

    pub fn strands(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    pub fn is_delta(&self) -> bool {
        *self == Self::delta(self.strands())
    }

    /// Blocks of the partition (0-based, ascending), singletons included.
    fn blocks(&self) -> Vec<Vec<usize>> {
        self.0.cycles()
    }

    /// The descending cycles (singletons omitted), ordered by largest entry,
    /// largest first.
    pub fn cycles(&self) -> Vec<DescendingCycle> {
        let mut out: Vec<DescendingCycle> = self
            .blocks()
            .into_iter()
            .filter(|b| b.len() > 1)
            .map(|b| DescendingCycle(b.iter().rev().map(|&e| e + 1).collect()))
            .collect();
        out.sort_unstable_by(|a, b| b.0[0].cmp(&a.0[0]));
        out
    }

    /// Number of band generators in a positive word for the factor.
    pub fn length(&self) -> usize {
        self.strands() - self.blocks().len()
    }

    /// 0-based block label of every point (the smallest element of its block).
    fn labels(&self) -> [u8; MAX_STRANDS] {
        let mut label = [0u8; MAX_STRANDS];
        for b in self.blocks() {
            for &e in &b {
                label[e] = b[0] as u8;
            }
        }
        label
    }

    /// `(t s)` divides the factor (on either side) iff `t` and `s` lie in one
    /// of its cycles.
    pub fn divisible_by(&self, g: BandGenerator) -> bool {
        g.s >= 1 && g.t <= self.strands() && self.0.cycles().iter().any(|c| c.contains(&(g.t - 1)) && c.contains(&(g.s - 1)))
    }

    /// Greatest common divisor: the common refinement of the two partitions.
    pub fn meet(&self, other: &CanonicalFactor) -> CanonicalFactor {
        let n = self.strands();
        let (la, lb) = (self.labels(), other.labels());
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut index = std::collections::HashMap::new();
        for i in 0..n {
            let k = *index.entry((la[i], lb[i])).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[k].push(i);
        }
        Self::from_blocks_unchecked(n, &blocks)
    }

    /// `δ^{-k} f δ^k`: every index shifted up by `k`, cyclically.
    pub fn tau_pow(&self, k: i64) -> CanonicalFactor {
        let n = self.strands() as i64;
        let k = k.rem_euclid(n) as usize;
        if k == 0 {
            return *self;
        }
        let n = n as usize;
        CanonicalFactor(Permutation::from_fn(n, |i| (self.0.get((i + n - k) % n) + k) % n))
    }

    /// `δ⁻¹ f δ`.
    pub fn tau(&self) -> CanonicalFactor {
        self.tau_pow(1)
    }

    /// `(δ f⁻¹, f⁻¹ δ)`.
    pub fn complements(&self) -> (CanonicalFactor, CanonicalFactor) {
        let delta = Self::delta(self.strands()).0;
        let inv = self.0.inverse();
        (CanonicalFactor(delta.then(&inv)), CanonicalFactor(inv.then(&delta)))
    }

    /// A positive word: the descending cycles in order.
    pub fn word(&self) -> BklWord {
        let n = self.strands();
        let mut letters = Vec::with_capacity(self.length());
        for c in self.cycles() {
            letters.extend(c.word().letters);
        }
        BklWord { strands: n, letters }
    }
}

impl fmt::Display for CanonicalFactor {
    /// Blocks with entries descending, largest block first: `{5,3,2}{4,1}`.
    /// The identity is `{}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "{{}}");
        }
        for c in cycles {
            write!(f, "{{")?;
            for (i, e) in c.0.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CanonicalFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses the block notation of [`CanonicalFactor`]'s `Display`.
pub fn parse_canonical_factor(text: &str, n: usize) -> Result<CanonicalFactor> {
    let t = text.trim();
    if t == "{}" {
        return Ok(CanonicalFactor::identity(n));
    }
    let mut cycles = Vec::new();
    let mut rest = t;
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('{')
            .ok_or_else(|| Error::Parse(format!("expected '{{' in {text:?}")))?;
        let end = body.find('}').ok_or_else(|| Error::Parse(format!("unclosed block in {text:?}")))?;
        let entries = body[..end]
            .split(',')
            .map(|e| e.trim().parse::<usize>().map_err(|err| Error::Parse(format!("{e:?}: {err}"))))
            .collect::<Result<Vec<_>>>()?;
        cycles.push(DescendingCycle::new(entries)?);
        rest = body[end + 1..].trim_start();
    }
    CanonicalFactor::from_cycles(&cycles, n)
}

/// Every canonical factor on `n` strands, one per non-crossing partition,
/// identity and `δ` included.
pub fn enumerate_canonical_factors(n: usize) -> Vec<CanonicalFactor> {
    let points: Vec<usize> = (0..n).collect();
    let mut out: Vec<CanonicalFactor> = noncrossing_partitions(&points)
        .into_iter()
        .map(|blocks| CanonicalFactor::from_blocks_unchecked(n, &blocks))
        .collect();
    out.sort_unstable();
    out
}

/// Non-crossing partitions of a sorted point list. The block of the first
/// point is grown left to right; the gaps it leaves are filled
/// independently.
fn noncrossing_partitions(points: &[usize]) -> Vec<Vec<Vec<usize>>> {
    fn grow(points: &[usize], block: Vec<usize>, pos: usize, acc: Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        // close the block; the tail is partitioned on its own
        for tail in noncrossing_partitions(&points[pos..]) {
            let mut p = acc.clone();
            p.push(block.clone());
            p.extend(tail);
            out.push(p);
        }
        for j in pos..points.len() {
            for gap in noncrossing_partitions(&points[pos..j]) {
                let mut b = block.clone();
                b.push(points[j]);
                let mut a = acc.clone();
                a.extend(gap);
                grow(points, b, j + 1, a, out);
            }
        }
    }

    if points.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    grow(points, vec![points[0]], 1, Vec::new(), &mut out);
    out
}

/// A word in band generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BklWord {
    strands: usize,
    letters: Vec<(BandGenerator, bool)>,
}

impl BklWord {
    pub fn new(strands: usize, letters: Vec<(BandGenerator, bool)>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::StrandCount(strands));
        }
        for (g, _) in &letters {
            BandGenerator::new(g.t, g.s, strands)?;
        }
        Ok(BklWord { strands, letters })
    }

    /// Parses `"(3,1);-(4,2)"`. The empty string is the identity.
    pub fn parse(strands: usize, text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for item in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let (positive, body) = match item.strip_prefix('-') {
                Some(rest) => (false, rest.trim()),
                None => (true, item.strip_prefix('+').unwrap_or(item).trim()),
            };
            let inner = body
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| Error::Parse(format!("expected (t,s) band, got {item:?}")))?;
            let nums = inner
                .split(',')
                .map(|v| v.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{v:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            let [t, s] = nums[..] else {
                return Err(Error::Parse(format!("band {item:?} needs two indices")));
            };
            letters.push((BandGenerator::new(t, s, strands)?, positive));
        }
        BklWord::new(strands, letters)
    }

    /// Embeds an Artin word letterwise via `σ_i = (i+1 i)`.
    pub fn from_artin(w: &BraidWord) -> Self {
        BklWord {
            strands: w.strands(),
            letters: w.letters().iter().map(|l| (BandGenerator::artin(l.generator), l.positive)).collect(),
        }
    }

    /// The word of `δ`: `(n n-1)(n-1 n-2) ⋯ (2 1)`.
    pub fn delta(strands: usize) -> Self {
        let letters = (1..strands).rev().map(|s| (BandGenerator { t: s + 1, s }, true)).collect();
        BklWord { strands, letters }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[(BandGenerator, bool)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        BklWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|&(g, p)| (g, !p)).collect(),
        }
    }

    pub fn concat(&self, other: &BklWord) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BklWord { strands: self.strands, letters })
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::new();
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BklWord { strands: self.strands, letters }
    }

    /// Letterwise expansion into Artin generators.
    pub fn to_artin(&self) -> BraidWord {
        let mut letters = Vec::new();
        for &(g, positive) in &self.letters {
            let w = band_to_artin(g, self.strands).expect("bands validated on construction");
            if positive {
                letters.extend_from_slice(w.letters());
            } else {
                letters.extend(w.inverse().letters().iter().copied());
            }
        }
        BraidWord::new(self.strands, letters).expect("expansion stays in range")
    }
}

impl fmt::Display for BklWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (g, positive)) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            if !positive {
                write!(f, "-")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// The Birman–Ko–Lee Garside structure on `n` strands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BklGroup {
    n: usize,
    delta: CanonicalFactor,
}

impl BklGroup {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_STRANDS {
            return Err(Error::StrandCount(n));
        }
        Ok(BklGroup { n, delta: CanonicalFactor::delta(n) })
    }

    pub fn normal_form(&self, w: &BklWord) -> Result<NormalForm<CanonicalFactor>> {
        if w.strands != self.n {
            return Err(Error::StrandMismatch(self.n, w.strands));
        }
        let mut nf = NormalForm::identity();
        for &(g, positive) in &w.letters {
            let f = CanonicalFactor::band(g, self.n)?;
            if positive {
                nf.push_simple(self, f);
            } else {
                nf.push_inverse_simple(self, f);
            }
        }
        Ok(nf)
    }

    /// BKL normal form of an Artin word, via `σ_i = (i+1 i)`.
    pub fn normal_form_of_artin(&self, w: &BraidWord) -> Result<NormalForm<CanonicalFactor>> {
        self.normal_form(&BklWord::from_artin(w))
    }

    pub fn equals(&self, u: &BklWord, v: &BklWord) -> Result<bool> {
        Ok(self.normal_form(u)? == self.normal_form(v)?)
    }

    /// A band-generator word for the normal form.
    pub fn to_word(&self, nf: &NormalForm<CanonicalFactor>) -> BklWord {
        let mut w = BklWord::delta(self.n).pow(nf.inf);
        for f in &nf.factors {
            w.letters.extend(f.word().letters);
        }
        w
    }
}

/// Whether no band generator divides both `f⁻¹δ` and `b`.
pub fn bkl_left_weighted(a: &CanonicalFactor, b: &CanonicalFactor) -> bool {
    a.complements().1.meet(b).is_identity()
}

impl GarsideStructure for BklGroup {
    type Factor = CanonicalFactor;

    fn presentation(&self) -> Presentation {
        Presentation::Bkl
    }

    fn strands(&self) -> usize {
        self.n
    }

    fn identity(&self) -> CanonicalFactor {
        CanonicalFactor::identity(self.n)
    }

    fn garside_element(&self) -> CanonicalFactor {
        self.delta
    }

    fn tau_pow(&self, f: &CanonicalFactor, k: i64) -> CanonicalFactor {
        f.tau_pow(k)
    }

    fn left_complement(&self, f: &CanonicalFactor) -> CanonicalFactor {
        f.complements().0
    }

    fn right_complement(&self, f: &CanonicalFactor) -> CanonicalFactor {
        f.complements().1
    }

    fn is_left_weighted(&self, a: &CanonicalFactor, b: &CanonicalFactor) -> bool {
        bkl_left_weighted(a, b)
    }

    /// Moves the greatest common divisor of `a⁻¹δ` and `b` into `a`.
    fn left_weight_pair(&self, a: &CanonicalFactor, b: &CanonicalFactor) -> (CanonicalFactor, CanonicalFactor) {
        let common = a.complements().1.meet(b);
        if common.is_identity() {
            return (*a, *b);
        }
        let a2 = CanonicalFactor(a.0.then(&common.0));
        let b2 = CanonicalFactor(common.0.inverse().then(&b.0));
        debug_assert!(CanonicalFactor::from_permutation(a2.0).is_some());
        debug_assert!(CanonicalFactor::from_permutation(b2.0).is_some());
        (a2, b2)
    }

    fn simples(&self) -> Vec<CanonicalFactor> {
        enumerate_canonical_factors(self.n)
    }

    fn factor_length(&self, f: &CanonicalFactor) -> usize {
        f.length()
    }

    fn format_factor(&self, f: &CanonicalFactor) -> String {
        f.to_string()
    }

    fn parse_factor(&self, s: &str) -> Result<CanonicalFactor> {
        parse_canonical_factor(s, self.n)
    }
}
