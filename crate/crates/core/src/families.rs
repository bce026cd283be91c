//! The braids `α_n` and the families of conjugates used to bound the size of
//! their Ultra Summit Sets from below.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::artin::ArtinGroup;
use crate::bkl::{descending_cycle_word, BandGenerator, BklGroup, BklWord, CanonicalFactor, DescendingCycle};
use crate::error::{Error, Result};
use crate::garside::{NormalForm, Presentation};
use crate::report::{Check, MemberRow, VerificationReport};
use crate::summit::{self, UssOptions};
use crate::word::{BraidWord, Letter};

/// Sign of the letter of `α_n` with generator index `i`.
fn alpha_sign(i: usize) -> bool {
    i % 2 == 1
}

/// `α_n = σ1 σ2⁻¹ σ3 σ4⁻¹ ⋯ σ_{n-1}^{(-1)^n}`.
pub fn alpha(n: usize) -> Result<BraidWord> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("alpha_n needs n >= 2, got {n}")));
    }
    BraidWord::new(n, (1..n).map(|i| Letter { generator: i, positive: alpha_sign(i) }).collect())
}

/// Relative order of neighbouring letters in a rearrangement of the word of
/// `α_n`: `bits[i-1]` is true iff the letter with index `i` precedes the
/// letter with index `i+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrderBits {
    strands: usize,
    bits: Vec<bool>,
}

impl OrderBits {
    pub fn new(strands: usize, bits: Vec<bool>) -> Result<Self> {
        if strands < 2 || bits.len() != strands - 2 {
            return Err(Error::InvalidArgument(format!(
                "{} order bits for {strands} strands; expected {}",
                bits.len(),
                strands.saturating_sub(2)
            )));
        }
        Ok(OrderBits { strands, bits })
    }

    /// All `2^{n-2}` bit vectors, in binary counting order (bit 1 most
    /// significant, `true` = 0).
    pub fn all(strands: usize) -> Vec<OrderBits> {
        let len = strands.saturating_sub(2);
        (0..1u64 << len)
            .map(|m| OrderBits {
                strands,
                bits: (0..len).map(|i| m & (1 << (len - 1 - i)) == 0).collect(),
            })
            .collect()
    }

    /// Reads the bits off a rearrangement of the letters of `α_n`.
    pub fn of_word(w: &BraidWord) -> Result<Self> {
        let n = w.strands();
        let pos = alpha_positions(w)?;
        OrderBits::new(n, (1..n - 1).map(|i| pos[i] < pos[i + 1]).collect())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }
}

/// Position of each generator index in `w`, checking that `w` uses the
/// letters of `α_n` exactly once each.
fn alpha_positions(w: &BraidWord) -> Result<Vec<usize>> {
    let n = w.strands();
    let mut pos = vec![usize::MAX; n];
    if w.len() != n.saturating_sub(1) {
        return Err(Error::NotAlphaRearrangement(n));
    }
    for (k, l) in w.letters().iter().enumerate() {
        if l.positive != alpha_sign(l.generator) || pos[l.generator] != usize::MAX {
            return Err(Error::NotAlphaRearrangement(n));
        }
        pos[l.generator] = k;
    }
    Ok(pos)
}

/// Linearizes the order constraints, emitting the lowest available
/// generator index first.
pub fn word_from_order_bits(ob: &OrderBits) -> BraidWord {
    let n = ob.strands;
    let m = n - 1; // letters 1..=m
    let mut emitted = vec![false; m + 1];
    let mut letters = Vec::with_capacity(m);
    while letters.len() < m {
        let ready = (1..=m)
            .find(|&i| {
                !emitted[i]
                    // left neighbour i-1 must come first if it precedes i
                    && (i == 1 || emitted[i - 1] || !ob.bits[i - 2])
                    // right neighbour i+1 must come first if it precedes i
                    && (i == m || emitted[i + 1] || ob.bits[i - 1])
            })
            .expect("a path orientation is acyclic");
        emitted[ready] = true;
        letters.push(Letter { generator: ready, positive: alpha_sign(ready) });
    }
    BraidWord::new(n, letters).expect("indices in range")
}

/// Run lengths `n_1, m_1, .., n_r, m_r` of the bit vector: `n_k` trues
/// followed by `m_k` falses. Only `n_1` and `m_r` may be zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NmSequence(pub Vec<(usize, usize)>);

pub fn nm_sequence(ob: &OrderBits) -> NmSequence {
    let mut runs = Vec::new();
    let mut i = 0;
    let bits = &ob.bits;
    loop {
        let start = i;
        while i < bits.len() && bits[i] {
            i += 1;
        }
        let trues = i - start;
        let start = i;
        while i < bits.len() && !bits[i] {
            i += 1;
        }
        runs.push((trues, i - start));
        if i >= bits.len() {
            return NmSequence(runs);
        }
    }
}

impl NmSequence {
    /// Every `n_i` even, every `m_i` but the last odd, and `m_r ≠ 0`.
    pub fn satisfies_family_constraint(&self) -> bool {
        let r = self.0.len();
        self.0.iter().all(|&(ni, _)| ni % 2 == 0)
            && self.0[..r - 1].iter().all(|&(_, mi)| mi % 2 == 1)
            && self.0[r - 1].1 != 0
    }
}

/// The rearrangements of `α_n`'s word whose run lengths satisfy the family
/// constraint.
pub fn constrained_family(n: usize) -> Result<Vec<BraidWord>> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("constrained family needs n >= 3, got {n}")));
    }
    Ok(OrderBits::all(n)
        .iter()
        .filter(|ob| nm_sequence(ob).satisfies_family_constraint())
        .map(word_from_order_bits)
        .collect())
}

/// Result of [`conjugator_to_alpha`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaConjugation {
    /// `c` with `c⁻¹ · w · c = α_n`.
    pub conjugator: BraidWord,
    /// Elementary moves used: commuting the assembled prefix past one
    /// letter, or one cyclic conjugation.
    pub moves: usize,
}

/// Conjugates a rearrangement of the letters of `α_n` back to `α_n`.
///
/// The prefix `σ1 σ2⁻¹ ⋯ σ_k` is assembled as a contiguous block: the block
/// is commuted rightwards past letters of index `≥ k+2` until it meets
/// `σ_{k+1}`, wrapping around the end of the word by conjugation when
/// needed. This is at most `n²` moves.
pub fn conjugator_to_alpha(w: &BraidWord) -> Result<AlphaConjugation> {
    let n = w.strands();
    alpha_positions(w)?;
    let mut cur: Vec<Letter> = w.letters().to_vec();
    let mut conj: Vec<Letter> = Vec::new();
    let mut moves = 0;
    if n <= 2 {
        return Ok(AlphaConjugation { conjugator: BraidWord::identity(n), moves });
    }

    // block occupies cur[start .. start + k]
    let mut start = cur.iter().position(|l| l.generator == 1).unwrap();
    let mut k = 1;
    while k < n - 1 {
        let end = start + k;
        if end == cur.len() {
            // u·B -> B·u = B (u B) B⁻¹, i.e. conjugation by B⁻¹
            let block: Vec<Letter> = cur.drain(start..).collect();
            conj.extend(block.iter().rev().map(|l| l.inverse()));
            cur.splice(0..0, block);
            start = 0;
            moves += 1;
            continue;
        }
        if cur[end].generator == k + 1 {
            k += 1;
            continue;
        }
        debug_assert!(cur[end].generator >= k + 2);
        let x = cur.remove(end);
        cur.insert(start, x);
        start += 1;
        moves += 1;
    }
    debug_assert!(cur.iter().enumerate().all(|(i, l)| l.generator == i + 1));
    Ok(AlphaConjugation { conjugator: BraidWord::new(n, conj)?, moves })
}

/// The bands `(n-1 1), (n-2 2), .., ((n+1)/2 (n-1)/2)` for odd `n`.
pub fn beta_bands(n: usize) -> Result<Vec<BandGenerator>> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("beta is defined for odd n >= 3, got {n}")));
    }
    (1..=(n - 1) / 2).map(|i| BandGenerator::new(n - i, i, n)).collect()
}

fn positive_word(n: usize, bands: &[BandGenerator]) -> BklWord {
    BklWord::new(n, bands.iter().map(|&b| (b, true)).collect()).expect("bands validated")
}

/// `β = δ⁻¹ ((n-1 1)(n-2 2) ⋯ ((n+1)/2 (n-1)/2))²` for odd `n`.
pub fn beta_bkl(n: usize) -> Result<BklWord> {
    let square = positive_word(n, &beta_bands(n)?).pow(2);
    BklWord::delta(n).inverse().concat(&square)
}

/// `(δ⁻¹ s δ)⁻¹ β (δ⁻¹ s δ)` as a word, `s` the product of the chosen bands.
pub fn subset_conjugate_word(n: usize, subset: &[BandGenerator]) -> Result<BklWord> {
    let bands = beta_bands(n)?;
    let mut seen = BTreeSet::new();
    for b in subset {
        if !bands.contains(b) || !seen.insert(*b) {
            return Err(Error::InvalidArgument(format!("{b} is not an unused band of beta_{n}")));
        }
    }
    let delta = BklWord::delta(n);
    let shifted_s = delta.inverse().concat(&positive_word(n, subset))?.concat(&delta)?;
    shifted_s.inverse().concat(&beta_bkl(n)?)?.concat(&shifted_s)
}

/// BKL normal form of the subset conjugate.
pub fn subset_conjugate(n: usize, subset: &[BandGenerator]) -> Result<NormalForm<CanonicalFactor>> {
    BklGroup::new(n)?.normal_form(&subset_conjugate_word(n, subset)?)
}

/// The normal form the construction predicts for a subset conjugate:
/// `δ⁻¹ · (ts) · (t · δ⁻¹sδ)`, `t` the product of the bands left out. The
/// last factor is the canonical factor whose blocks join the bands of `t`
/// with those of `s` shifted up by one.
pub fn predicted_subset_normal_form(n: usize, subset: &[BandGenerator]) -> Result<NormalForm<CanonicalFactor>> {
    let bands = beta_bands(n)?;
    let all = blocks_factor(n, &bands)?;
    let second: Vec<BandGenerator> = bands
        .iter()
        .map(|b| if subset.contains(b) { BandGenerator::new(b.t + 1, b.s + 1, n) } else { Ok(*b) })
        .collect::<Result<_>>()?;
    Ok(NormalForm { inf: -1, factors: vec![all, blocks_factor(n, &second)?] })
}

/// Canonical factor whose blocks are the connected components of `bands`.
fn blocks_factor(n: usize, bands: &[BandGenerator]) -> Result<CanonicalFactor> {
    let mut root: Vec<usize> = (0..=n).collect();
    fn find(root: &mut [usize], i: usize) -> usize {
        if root[i] != i {
            root[i] = find(root, root[i]);
        }
        root[i]
    }
    for b in bands {
        let (x, y) = (find(&mut root, b.t), find(&mut root, b.s));
        root[x] = y;
    }
    let mut blocks = std::collections::BTreeMap::<usize, Vec<usize>>::new();
    for i in 1..=n {
        let r = find(&mut root, i);
        blocks.entry(r).or_default().push(i);
    }
    let cycles = blocks
        .into_values()
        .filter(|b| b.len() > 1)
        .map(|mut b| {
            b.reverse();
            DescendingCycle::new(b)
        })
        .collect::<Result<Vec<_>>>()?;
    CanonicalFactor::from_cycles(&cycles, n)
}

/// All `2^{(n-1)/2}` subsets of the bands of `β`, in binary counting order.
pub fn band_subsets(n: usize) -> Result<Vec<Vec<BandGenerator>>> {
    let bands = beta_bands(n)?;
    Ok((0..1u64 << bands.len())
        .map(|m| bands.iter().enumerate().filter(|(i, _)| m & (1 << i) != 0).map(|(_, b)| *b).collect())
        .collect())
}

/// `δ · X · Y⁻¹` with `X = (n ⋯ 2)(n ⋯ 4) ⋯ (n n-1)` and
/// `Y = (n n-1)(n-2 n-3) ⋯ (3 2)`; conjugating `β` by it gives
/// [`beta_bridge_target`].
pub fn beta_bridge_conjugator(n: usize) -> Result<BklWord> {
    beta_bands(n)?;
    let mut x = BklWord::new(n, vec![])?;
    for lo in (2..n).step_by(2) {
        let c = DescendingCycle::new((lo..=n).rev().collect())?;
        x = x.concat(&descending_cycle_word(&c, n)?)?;
    }
    let mut y = BklWord::new(n, vec![])?;
    for t in (3..=n).rev().step_by(2) {
        y = y.concat(&BklWord::new(n, vec![(BandGenerator::new(t, t - 1, n)?, true)])?)?;
    }
    BklWord::delta(n).concat(&x)?.concat(&y.inverse())
}

/// `σ_{n-2}⁻¹ σ_{n-4}⁻¹ ⋯ σ_1⁻¹ σ_{n-1} σ_{n-3} ⋯ σ_2` for odd `n`.
pub fn beta_bridge_target(n: usize) -> Result<BraidWord> {
    beta_bands(n)?;
    let mut signed: Vec<i64> = (1..=n as i64 - 2).rev().step_by(2).map(|i| -i).collect();
    signed.extend((2..=n as i64 - 1).rev().step_by(2));
    BraidWord::from_signed(n, &signed)
}

/// An Artin word `K` with `K⁻¹ β K = α_n`: the bridge conjugator, then `Δ`
/// (which flips the target into a rearrangement of `α_n`), then
/// [`conjugator_to_alpha`].
pub fn beta_to_alpha_conjugator(n: usize) -> Result<BraidWord> {
    let z = beta_bridge_conjugator(n)?.to_artin();
    let flipped = beta_bridge_target(n)?.flipped();
    let c = conjugator_to_alpha(&flipped)?.conjugator;
    z.concat(&ArtinGroup::new(n)?.to_word(&NormalForm::delta_power(1)))?.concat(&c)
}

/// `2^{⌊(n-2)/2⌋}`.
pub fn alpha_family_bound(n: usize) -> u64 {
    1 << (n.saturating_sub(2) / 2)
}

/// USS size of `α_n` in the Artin presentation: `(3 - (-1)^n) · 3^{n-3}`.
pub fn artin_uss_formula(n: usize) -> u64 {
    let sign = if n.is_multiple_of(2) { 2 } else { 4 };
    sign * 3u64.pow(n as u32 - 3)
}

/// USS size of `α_n` in the BKL presentation:
/// `(3 - (-1)^n)/2 · n · 3^{n-3}`.
pub fn bkl_uss_formula(n: usize) -> u64 {
    artin_uss_formula(n) / 2 * n as u64
}

fn bits_label(ob: &OrderBits) -> String {
    ob.bits().iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Checks every member of [`constrained_family`]: Artin normal form of shape
/// `Δ⁻¹ · a · b`, rigid, conjugate to `α_n` in at most `n²` moves, members
/// pairwise distinct, and the family at least [`alpha_family_bound`] large.
/// Also reports rigidity of `α_n` and of every rearrangement of its word.
pub fn verify_alpha_family(n: usize) -> Result<VerificationReport> {
    if !(3..=crate::perm::MAX_STRANDS).contains(&n) {
        return Err(Error::InvalidArgument(format!("alpha family needs 3 <= n <= {}, got {n}", crate::perm::MAX_STRANDS)));
    }
    let g = ArtinGroup::new(n)?;
    let alpha_w = alpha(n)?;
    let bound = alpha_family_bound(n);
    let family: Vec<OrderBits> = OrderBits::all(n)
        .into_iter()
        .filter(|ob| nm_sequence(ob).satisfies_family_constraint())
        .collect();

    let rows: Vec<(MemberRow, NormalForm<_>, bool, bool)> = family
        .par_iter()
        .map(|ob| -> Result<_> {
            let w = word_from_order_bits(ob);
            let nf = g.normal_form(&w)?;
            let rigid = summit::is_rigid(&g, &nf);
            let shape = nf.inf == -1 && nf.canonical_length() == 2;
            let conj = conjugator_to_alpha(&w)?;
            let back = conj.conjugator.inverse().concat(&w)?.concat(&conj.conjugator)?;
            let conjugate = g.equals(&back, &alpha_w)? && conj.moves <= n * n;
            let row = MemberRow {
                label: bits_label(ob),
                word: w.to_string(),
                normal_form: nf.serialize(&g),
                inf: nf.inf,
                canonical_length: nf.canonical_length(),
                rigid,
                conjugator: Some(conj.conjugator.to_string()),
                moves: Some(conj.moves),
                in_uss: None,
                passed: shape && rigid && conjugate,
            };
            Ok((row, nf, shape, conjugate))
        })
        .collect::<Result<_>>()?;

    let distinct = rows.iter().map(|r| &r.1).collect::<BTreeSet<_>>().len() == rows.len();
    let alpha_nf = g.normal_form(&alpha_w)?;
    let rearrangements_rigid = OrderBits::all(n)
        .par_iter()
        .filter(|ob| summit::is_rigid(&g, &g.normal_form(&word_from_order_bits(ob)).expect("valid word")))
        .count();
    let total = 1usize << (n - 2);

    let checks = vec![
        Check::new(
            "shape",
            rows.iter().all(|r| r.2),
            "every member has inf = -1 and canonical length 2",
        ),
        Check::new("rigid", rows.iter().all(|r| r.0.rigid), "every member is rigid"),
        Check::new(
            "conjugate_to_alpha",
            rows.iter().all(|r| r.3),
            format!("every member conjugates to alpha_{n} within {} moves", n * n),
        ),
        Check::new("distinct", distinct, "members have pairwise distinct normal forms"),
        Check::new(
            "count",
            rows.len() as u64 >= bound,
            format!("{} members, bound {bound}", rows.len()),
        ),
        Check::new(
            "alpha_rigid",
            summit::is_rigid(&g, &alpha_nf),
            format!("alpha_{n} itself: {}", alpha_nf.serialize(&g)),
        ),
        Check::new(
            "all_rearrangements_rigid",
            rearrangements_rigid == total,
            format!("{rearrangements_rigid} of {total} rearrangements of alpha_{n} are rigid"),
        ),
    ];
    Ok(VerificationReport {
        subject: format!("alpha_{n} constrained family"),
        presentation: Presentation::Artin,
        n,
        family_size: rows.len(),
        bound: Some(bound),
        members: rows.into_iter().map(|r| r.0).collect(),
        checks,
    })
}

/// Largest `n` at which [`verify_beta_family`] also enumerates the BKL Ultra
/// Summit Set of `α_n` to confirm membership.
pub const BETA_USS_LIMIT: usize = 7;

/// Checks the `2^{(n-1)/2}` subset conjugates of `β` in the BKL presentation:
/// predicted normal form, rigid, pairwise distinct, members of the Ultra
/// Summit Set of `α_n` (for `n ≤ uss_limit`), and `β` conjugate to `α_n` by
/// an explicit conjugator.
pub fn verify_beta_family(n: usize, uss_limit: usize) -> Result<VerificationReport> {
    let g = BklGroup::new(n)?;
    let subsets = band_subsets(n)?;
    let uss = if n <= uss_limit {
        let alpha_nf = g.normal_form_of_artin(&alpha(n)?)?;
        Some(summit::uss_enumerate(&g, &alpha_nf, UssOptions::default())?)
    } else {
        None
    };

    let rows: Vec<(MemberRow, NormalForm<CanonicalFactor>, bool)> = subsets
        .par_iter()
        .map(|subset| -> Result<_> {
            let nf = subset_conjugate(n, subset)?;
            let predicted = predicted_subset_normal_form(n, subset)?;
            let rigid = summit::is_rigid(&g, &nf);
            let matches = nf == predicted && nf.inf == -1 && nf.canonical_length() == 2;
            let in_uss = uss.as_ref().map(|u| u.contains(&nf));
            let label = if subset.is_empty() {
                "{}".to_string()
            } else {
                subset.iter().map(|b| b.to_string()).collect::<Vec<_>>().join("")
            };
            let row = MemberRow {
                label,
                word: subset_conjugate_word(n, subset)?.to_string(),
                normal_form: nf.serialize(&g),
                inf: nf.inf,
                canonical_length: nf.canonical_length(),
                rigid,
                conjugator: None,
                moves: None,
                in_uss,
                passed: matches && rigid && in_uss != Some(false),
            };
            Ok((row, nf, matches))
        })
        .collect::<Result<_>>()?;

    let distinct = rows.iter().map(|r| &r.1).collect::<BTreeSet<_>>().len() == rows.len();
    let bound = 1u64 << ((n - 1) / 2);
    let artin = ArtinGroup::new(n)?;
    let k = beta_to_alpha_conjugator(n)?;
    let beta_artin = beta_bkl(n)?.to_artin();
    let bridged = artin.equals(&k.inverse().concat(&beta_artin)?.concat(&k)?, &alpha(n)?)?;

    let mut checks = vec![
        Check::new(
            "predicted_form",
            rows.iter().all(|r| r.2),
            "every normal form is delta^-1 (ts) (t delta^-1 s delta)",
        ),
        Check::new("rigid", rows.iter().all(|r| r.0.rigid), "every subset conjugate is rigid"),
        Check::new("distinct", distinct, "subset conjugates have pairwise distinct normal forms"),
        Check::new("count", rows.len() as u64 >= bound, format!("{} members, bound {bound}", rows.len())),
        Check::new(
            "beta_conjugate_to_alpha",
            bridged,
            format!("K^-1 beta K = alpha_{n} for K = {k}"),
        ),
    ];
    if let Some(u) = &uss {
        checks.push(Check::new(
            "in_uss",
            rows.iter().all(|r| r.0.in_uss == Some(true)),
            format!("all members lie in the BKL USS of alpha_{n} ({} elements)", u.size()),
        ));
    }
    Ok(VerificationReport {
        subject: format!("beta_{n} subset conjugates"),
        presentation: Presentation::Bkl,
        n,
        family_size: rows.len(),
        bound: Some(bound),
        members: rows.into_iter().map(|r| r.0).collect(),
        checks,
    })
}

/// Size of the Ultra Summit Set of `α_n` in the given presentation.
pub fn uss_census(n: usize, presentation: Presentation, budget: usize) -> Result<usize> {
    let opts = UssOptions { budget, track_conjugators: false };
    let w = alpha(n)?;
    match presentation {
        Presentation::Artin => {
            let g = ArtinGroup::new(n)?;
            Ok(summit::uss_enumerate(&g, &g.normal_form(&w)?, opts)?.size())
        }
        Presentation::Bkl => {
            let g = BklGroup::new(n)?;
            Ok(summit::uss_enumerate(&g, &g.normal_form_of_artin(&w)?, opts)?.size())
        }
    }
}
