//! Permutation braids and the Artin left normal form.
//!
//! A [`SimpleFactor`] is a positive braid in which every pair of strands
//! crosses at most once. It is stored as the table sending each start
//! position to its end position; strands starting at `i < j` cross exactly
//! when `p(i) > p(j)`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::garside::{GarsideStructure, NormalForm, Presentation};
use crate::perm::{Permutation, MAX_STRANDS};
use crate::word::{BraidWord, Letter};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleFactor(Permutation);

impl SimpleFactor {
    pub fn identity(n: usize) -> Self {
        SimpleFactor(Permutation::identity(n))
    }

    /// The half twist `Δ`, `p(i) = n + 1 - i`.
    pub fn delta(n: usize) -> Self {
        SimpleFactor(Permutation::from_fn(n, |i| n - 1 - i))
    }

    /// The crossing `σ_i` (1-based).
    pub fn generator(n: usize, i: usize) -> Self {
        let mut p = Permutation::identity(n);
        p.swap_positions(i - 1);
        SimpleFactor(p)
    }

    pub fn from_permutation(p: Permutation) -> Self {
        SimpleFactor(p)
    }

    /// Permutation braid of the positive word; fails if some pair of strands
    /// would cross twice.
    pub fn from_positive_word(n: usize, generators: &[usize]) -> Result<Self> {
        let mut f = SimpleFactor::identity(n);
        for &i in generators {
            if i == 0 || i >= n {
                return Err(Error::GeneratorOutOfRange { index: i, strands: n });
            }
            if f.finishing_mask() & (1 << (i - 1)) != 0 {
                return Err(Error::InvalidArgument(format!(
                    "positive word {generators:?} is not a permutation braid"
                )));
            }
            f.0.swap_values(i - 1);
        }
        Ok(f)
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
        *self == SimpleFactor::delta(self.strands())
    }

    /// Bitmask of 0-based starting-set positions.
    #[inline]
    pub fn starting_mask(&self) -> u32 {
        self.0.descent_mask()
    }

    /// Bitmask of 0-based finishing-set positions.
    #[inline]
    pub fn finishing_mask(&self) -> u32 {
        self.0.inverse().descent_mask()
    }

    /// `{ j : p(j) > p(j+1) }`, 1-based.
    pub fn starting_set(&self) -> BTreeSet<usize> {
        mask_to_set(self.starting_mask())
    }

    /// `{ j : p⁻¹(j) > p⁻¹(j+1) }`, 1-based.
    pub fn finishing_set(&self) -> BTreeSet<usize> {
        mask_to_set(self.finishing_mask())
    }

    /// `(Δ f⁻¹, f⁻¹ Δ)`.
    pub fn complements(&self) -> (SimpleFactor, SimpleFactor) {
        let delta = SimpleFactor::delta(self.strands());
        let inv = self.0.inverse();
        (SimpleFactor(delta.0.then(&inv)), SimpleFactor(inv.then(&delta.0)))
    }

    /// `Δ⁻¹ f Δ`: the table conjugated by the reversal of positions.
    pub fn tau(&self) -> SimpleFactor {
        SimpleFactor(self.0.flipped())
    }

    /// Number of crossings.
    pub fn length(&self) -> usize {
        self.0.inversions()
    }

    /// A positive word for the factor (generator indices, 1-based).
    pub fn to_generators(&self) -> Vec<usize> {
        let mut rest = *self;
        let mut out = Vec::with_capacity(rest.length());
        while !rest.is_identity() {
            let j = rest.starting_mask().trailing_zeros() as usize;
            out.push(j + 1);
            rest.0.swap_positions(j);
        }
        out
    }
}

fn mask_to_set(mask: u32) -> BTreeSet<usize> {
    (0..32).filter(|j| mask & (1 << j) != 0).map(|j| j + 1).collect()
}

impl fmt::Display for SimpleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for SimpleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Table of the braid `a · b`. The product need not be a permutation braid.
pub fn compose_simple(a: &SimpleFactor, b: &SimpleFactor) -> Result<Permutation> {
    if a.strands() != b.strands() {
        return Err(Error::StrandMismatch(a.strands(), b.strands()));
    }
    Ok(a.0.then(&b.0))
}

/// Moves crossings from the head of `b` to the tail of `a`, one at a time,
/// until the starting set of `b` lies inside the finishing set of `a`.
pub fn left_weight_pair(a: &SimpleFactor, b: &SimpleFactor) -> (SimpleFactor, SimpleFactor) {
    let (mut a, mut b) = (*a, *b);
    loop {
        let movable = b.starting_mask() & !a.finishing_mask();
        if movable == 0 {
            return (a, b);
        }
        let j = movable.trailing_zeros() as usize;
        a.0.swap_values(j);
        b.0.swap_positions(j);
    }
}

/// The Artin Garside structure on `n` strands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArtinGroup {
    n: usize,
    delta: SimpleFactor,
}

impl ArtinGroup {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_STRANDS {
            return Err(Error::StrandCount(n));
        }
        Ok(ArtinGroup { n, delta: SimpleFactor::delta(n) })
    }

    pub fn normal_form(&self, w: &BraidWord) -> Result<NormalForm<SimpleFactor>> {
        if w.strands() != self.n {
            return Err(Error::StrandMismatch(self.n, w.strands()));
        }
        let mut nf = NormalForm::identity();
        for l in w.letters() {
            let s = SimpleFactor::generator(self.n, l.generator);
            if l.positive {
                nf.push_simple(self, s);
            } else {
                nf.push_inverse_simple(self, s);
            }
        }
        Ok(nf)
    }

    pub fn equals(&self, u: &BraidWord, v: &BraidWord) -> Result<bool> {
        if u.strands() != v.strands() {
            return Err(Error::StrandMismatch(u.strands(), v.strands()));
        }
        Ok(self.normal_form(u)? == self.normal_form(v)?)
    }

    /// A word representing the normal form: `Δ^k` spelled out, then each
    /// factor as a positive word.
    pub fn to_word(&self, nf: &NormalForm<SimpleFactor>) -> BraidWord {
        let delta_word: Vec<Letter> =
            self.delta.to_generators().into_iter().map(Letter::pos).collect();
        let mut letters = Vec::new();
        for _ in 0..nf.inf.unsigned_abs() {
            if nf.inf > 0 {
                letters.extend_from_slice(&delta_word);
            } else {
                letters.extend(delta_word.iter().rev().map(|l| l.inverse()));
            }
        }
        for f in &nf.factors {
            letters.extend(f.to_generators().into_iter().map(Letter::pos));
        }
        BraidWord::new(self.n, letters).expect("generators are in range")
    }
}

impl GarsideStructure for ArtinGroup {
    type Factor = SimpleFactor;

    fn presentation(&self) -> Presentation {
        Presentation::Artin
    }

    fn strands(&self) -> usize {
        self.n
    }

    fn identity(&self) -> SimpleFactor {
        SimpleFactor::identity(self.n)
    }

    fn garside_element(&self) -> SimpleFactor {
        self.delta
    }

    fn tau_pow(&self, f: &SimpleFactor, k: i64) -> SimpleFactor {
        if k % 2 == 0 {
            *f
        } else {
            f.tau()
        }
    }

    fn left_complement(&self, f: &SimpleFactor) -> SimpleFactor {
        f.complements().0
    }

    fn right_complement(&self, f: &SimpleFactor) -> SimpleFactor {
        f.complements().1
    }

    fn is_left_weighted(&self, a: &SimpleFactor, b: &SimpleFactor) -> bool {
        b.starting_mask() & !a.finishing_mask() == 0
    }

    fn left_weight_pair(&self, a: &SimpleFactor, b: &SimpleFactor) -> (SimpleFactor, SimpleFactor) {
        left_weight_pair(a, b)
    }

    fn simples(&self) -> Vec<SimpleFactor> {
        all_permutations(self.n).into_iter().map(SimpleFactor).collect()
    }

    fn factor_length(&self, f: &SimpleFactor) -> usize {
        f.length()
    }

    fn format_factor(&self, f: &SimpleFactor) -> String {
        f.to_string()
    }

    fn parse_factor(&self, s: &str) -> Result<SimpleFactor> {
        let p: Permutation = s.parse()?;
        if p.len() != self.n {
            return Err(Error::StrandMismatch(self.n, p.len()));
        }
        Ok(SimpleFactor(p))
    }
}

/// All permutations of `n` points in lexicographic order of their tables.
fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut cur: Vec<usize> = (1..=n).collect();
    let mut out = Vec::new();
    loop {
        out.push(Permutation::from_images(&cur).expect("valid permutation"));
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(images: &[usize]) -> SimpleFactor {
        SimpleFactor(Permutation::from_images(images).unwrap())
    }

    fn word(n: usize, text: &str) -> BraidWord {
        BraidWord::parse(n, text).unwrap()
    }

    /// Follows every strand through the positive word, recording which
    /// adjacent start (or end) pairs cross. Independent of the table code.
    fn diagram_sets(n: usize, gens: &[usize]) -> (BTreeSet<usize>, BTreeSet<usize>) {
        let mut at: Vec<usize> = (0..n).collect(); // position -> strand id
        let mut crossed = vec![vec![false; n]; n];
        for &g in gens {
            let (x, y) = (at[g - 1], at[g]);
            crossed[x][y] = true;
            crossed[y][x] = true;
            at.swap(g - 1, g);
        }
        let starting = (0..n - 1).filter(|&j| crossed[j][j + 1]).map(|j| j + 1).collect();
        let finishing = (0..n - 1).filter(|&j| crossed[at[j]][at[j + 1]]).map(|j| j + 1).collect();
        (starting, finishing)
    }

    #[test]
    fn delta_tables() {
        assert_eq!(SimpleFactor::delta(3).permutation().images(), vec![3, 2, 1]);
        assert_eq!(SimpleFactor::delta(4).permutation().images(), vec![4, 3, 2, 1]);
        assert!(SimpleFactor::delta(1).is_identity());
    }

    #[test]
    fn starting_and_finishing_sets() {
        let d = SimpleFactor::delta(3);
        assert_eq!(d.starting_set(), BTreeSet::from([1, 2]));
        assert_eq!(SimpleFactor::delta(5).finishing_set(), BTreeSet::from([1, 2, 3, 4]));
        assert!(SimpleFactor::identity(3).starting_set().is_empty());
        assert!(SimpleFactor::identity(3).finishing_set().is_empty());

        let f = SimpleFactor::from_positive_word(3, &[2, 1]).unwrap();
        assert_eq!(f.permutation().images(), vec![2, 3, 1]);
        let (start, finish) = diagram_sets(3, &[2, 1]);
        assert_eq!(start, BTreeSet::from([2]));
        assert_eq!(finish, BTreeSet::from([1]));
        assert_eq!(f.starting_set(), start);
        assert_eq!(f.finishing_set(), finish);
    }

    #[test]
    fn sets_agree_with_diagram_for_all_simples() {
        let g = ArtinGroup::new(5).unwrap();
        for f in g.simples() {
            let gens = f.to_generators();
            assert_eq!(SimpleFactor::from_positive_word(5, &gens).unwrap(), f);
            let (start, finish) = diagram_sets(5, &gens);
            assert_eq!(f.starting_set(), start);
            assert_eq!(f.finishing_set(), finish);
        }
    }

    #[test]
    fn compose() {
        let s1 = SimpleFactor::generator(3, 1);
        let s2 = SimpleFactor::generator(3, 2);
        // the braid σ1σ2: strand 1 -> 3, strand 2 -> 1, strand 3 -> 2
        assert_eq!(compose_simple(&s1, &s2).unwrap().images(), vec![3, 1, 2]);
        assert_eq!(compose_simple(&SimpleFactor::identity(3), &s2).unwrap(), *s2.permutation());
        let d = SimpleFactor::delta(2);
        assert!(compose_simple(&d, &d).unwrap().is_identity());
        assert_eq!(
            compose_simple(&s1, &SimpleFactor::identity(4)),
            Err(Error::StrandMismatch(3, 4))
        );
    }

    #[test]
    fn complements() {
        let d = SimpleFactor::delta(3);
        assert_eq!(d.complements(), (SimpleFactor::identity(3), SimpleFactor::identity(3)));
        assert_eq!(SimpleFactor::identity(3).complements(), (d, d));

        let s1 = SimpleFactor::generator(3, 1);
        let (_, right) = s1.complements();
        // σ1 · x = Δ solved in the symmetric group; x = σ2σ1
        let solved = (0..6)
            .map(|k| ArtinGroup::new(3).unwrap().simples()[k])
            .find(|x| compose_simple(&s1, x).unwrap() == *d.permutation())
            .unwrap();
        assert_eq!(right, solved);
        assert_eq!(right.to_generators(), vec![2, 1]);
    }

    #[test]
    fn complement_identities_up_to_five_strands() {
        for n in 1..=5 {
            let g = ArtinGroup::new(n).unwrap();
            let d = *g.garside_element().permutation();
            for f in g.simples() {
                let (l, r) = f.complements();
                assert_eq!(compose_simple(&f, &r).unwrap(), d);
                assert_eq!(compose_simple(&l, &f).unwrap(), d);
                assert_eq!(f.length() + r.length(), n * (n - 1) / 2);
            }
        }
    }

    #[test]
    fn tau_examples() {
        assert_eq!(SimpleFactor::generator(3, 1).tau(), SimpleFactor::generator(3, 2));
        assert_eq!(SimpleFactor::delta(3).tau(), SimpleFactor::delta(3));
        let f = perm(&[2, 3, 1]);
        assert_eq!(f.tau().permutation().images(), vec![3, 1, 2]);
        assert_eq!(f.tau().to_generators(), vec![1, 2]);
        let g = ArtinGroup::new(4).unwrap();
        for f in g.simples() {
            assert_eq!(f.tau().tau(), f);
        }
    }

    #[test]
    fn left_weight_pair_examples() {
        let s1 = SimpleFactor::generator(3, 1);
        let s2 = SimpleFactor::generator(3, 2);
        let s2s1 = perm(&[2, 3, 1]);
        assert_eq!(left_weight_pair(&s2, &s2s1), (s2, s2s1));
        let id = SimpleFactor::identity(3);
        assert_eq!(left_weight_pair(&id, &s1), (s1, id));
        assert_eq!(left_weight_pair(&s1, &s1), (s1, s1));
        // on two strands σ1 = Δ
        let d2 = SimpleFactor::delta(2);
        assert_eq!(left_weight_pair(&d2, &d2), (d2, d2));
    }

    #[test]
    fn left_weight_pair_preserves_product() {
        let g = ArtinGroup::new(4).unwrap();
        let simples = g.simples();
        for a in &simples {
            for b in &simples {
                let (a2, b2) = left_weight_pair(a, b);
                assert_eq!(a.permutation().then(b.permutation()), a2.permutation().then(b2.permutation()));
                assert_eq!(a.length() + b.length(), a2.length() + b2.length());
                assert!(g.is_left_weighted(&a2, &b2));
            }
        }
    }

    #[test]
    fn normal_form_examples() {
        let g = ArtinGroup::new(3).unwrap();
        let nf = g.normal_form(&word(3, "1 2 1")).unwrap();
        assert_eq!((nf.inf, nf.factors.len()), (1, 0));

        let nf = g.normal_form(&word(3, "1 -2")).unwrap();
        assert_eq!(nf.inf, -1);
        assert_eq!(nf.factors, vec![SimpleFactor::generator(3, 2), perm(&[2, 3, 1])]);

        assert!(g.normal_form(&word(3, "")).unwrap().is_identity());

        let g2 = ArtinGroup::new(2).unwrap();
        let nf = g2.normal_form(&word(2, "1 1 1")).unwrap();
        assert_eq!(nf, NormalForm::delta_power(3));
    }

    /// Enumerates `Δ⁻¹ · x · y` over all simple pairs and keeps the
    /// left-weighted ones representing `σ1 σ2⁻¹` (compared as permutation
    /// plus crossing count, then certified by `equals` on words).
    #[test]
    fn normal_form_brute_force_oracle() {
        let g = ArtinGroup::new(3).unwrap();
        let target = word(3, "1 -2");
        let delta_inv = SimpleFactor::delta(3).to_generators();
        let mut hits = Vec::new();
        for x in g.simples() {
            for y in g.simples() {
                if x.is_identity() || y.is_identity() || x.is_delta() || y.is_delta() {
                    continue;
                }
                if !g.is_left_weighted(&x, &y) {
                    continue;
                }
                let mut signed: Vec<i64> = delta_inv.iter().rev().map(|&i| -(i as i64)).collect();
                signed.extend(x.to_generators().iter().map(|&i| i as i64));
                signed.extend(y.to_generators().iter().map(|&i| i as i64));
                let candidate = BraidWord::from_signed(3, &signed).unwrap();
                if g.equals(&candidate, &target).unwrap() {
                    hits.push((x, y));
                }
            }
        }
        assert_eq!(hits, vec![(SimpleFactor::generator(3, 2), perm(&[2, 3, 1]))]);
    }

    #[test]
    fn equals_examples() {
        let g3 = ArtinGroup::new(3).unwrap();
        assert!(g3.equals(&word(3, "1 2 1"), &word(3, "2 1 2")).unwrap());
        assert!(!g3.equals(&word(3, "1"), &word(3, "2")).unwrap());
        let g4 = ArtinGroup::new(4).unwrap();
        assert!(g4.equals(&word(4, "1 3"), &word(4, "3 1")).unwrap());
        assert_eq!(g3.equals(&word(3, "1"), &word(4, "1")), Err(Error::StrandMismatch(3, 4)));
    }

    #[test]
    fn simple_census() {
        assert_eq!(ArtinGroup::new(4).unwrap().simples().len(), 24);
        let set: BTreeSet<_> = ArtinGroup::new(5).unwrap().simples().into_iter().collect();
        assert_eq!(set.len(), 120);
    }

    #[test]
    fn from_positive_word_rejects_double_crossing() {
        assert!(SimpleFactor::from_positive_word(3, &[1, 1]).is_err());
        assert!(SimpleFactor::from_positive_word(3, &[1, 2, 1, 2]).is_err());
        assert!(SimpleFactor::from_positive_word(3, &[1, 2, 1]).unwrap().is_delta());
    }
}
