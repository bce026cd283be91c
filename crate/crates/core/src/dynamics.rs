//! Exponent sums, strand deletion and linking numbers: the finite checks
//! behind pseudo-Anosov-ness of `α_n` for odd `n`.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::artin::ArtinGroup;
use crate::error::{Error, Result};
use crate::families::alpha;
use crate::garside::Presentation;
use crate::report::{Check, MemberRow, VerificationReport};
use crate::summit;
use crate::word::{BraidWord, Letter};

/// Positive letters minus negative letters.
pub fn exponent_sum(w: &BraidWord) -> i64 {
    w.letters().iter().map(|l| l.signed().signum()).sum()
}

/// True when `w` has exponent sum zero and is not the trivial braid. Such a
/// braid cannot be periodic. `false` means only that the test does not
/// apply.
pub fn periodicity_excluded(w: &BraidWord) -> Result<bool> {
    if exponent_sum(w) != 0 {
        return Ok(false);
    }
    let g = ArtinGroup::new(w.strands())?;
    Ok(!g.normal_form(w)?.is_identity())
}

/// Where each strand is, letter by letter. Strands are named by their
/// starting position (1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrandTrace {
    strands: usize,
    /// `at[t][p]` is the strand at position `p` (0-based) before letter `t`;
    /// the last entry is the final arrangement.
    at: Vec<Vec<usize>>,
}

impl StrandTrace {
    pub fn new(w: &BraidWord) -> Self {
        let n = w.strands();
        let mut cur: Vec<usize> = (1..=n).collect();
        let mut at = Vec::with_capacity(w.len() + 1);
        at.push(cur.clone());
        for l in w.letters() {
            cur.swap(l.generator - 1, l.generator);
            at.push(cur.clone());
        }
        StrandTrace { strands: n, at }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    /// Strands occupying positions `i` and `i+1` when letter `t` is read.
    pub fn crossing(&self, t: usize, i: usize) -> (usize, usize) {
        (self.at[t][i - 1], self.at[t][i])
    }

    /// Final position of every strand, indexed by strand.
    pub fn final_positions(&self) -> Vec<usize> {
        let last = self.at.last().expect("trace is never empty");
        let mut pos = vec![0; self.strands + 1];
        for (p, &s) in last.iter().enumerate() {
            pos[s] = p + 1;
        }
        pos
    }
}

/// Removes every strand not in `keep` and renumbers the rest, keeping only
/// crossings between two kept strands.
pub fn delete_strands(w: &BraidWord, keep: &BTreeSet<usize>) -> Result<BraidWord> {
    let n = w.strands();
    if keep.is_empty() {
        return Err(Error::InvalidArgument("no strands kept".into()));
    }
    if let Some(&bad) = keep.iter().find(|&&s| s == 0 || s > n) {
        return Err(Error::InvalidArgument(format!("strand {bad} out of range 1..={n}")));
    }
    let trace = StrandTrace::new(w);
    let mut letters = Vec::new();
    for (t, l) in w.letters().iter().enumerate() {
        let (a, b) = trace.crossing(t, l.generator);
        if keep.contains(&a) && keep.contains(&b) {
            let below = trace.at[t][..l.generator - 1].iter().filter(|s| keep.contains(s)).count();
            letters.push(Letter { generator: below + 1, positive: l.positive });
        }
    }
    BraidWord::new(keep.len(), letters)
}

/// A number in `½ℤ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfInteger {
    pub twice: i64,
}

impl HalfInteger {
    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// Half the signed number of crossings between strands `i` and `j`.
pub fn linking_number(w: &BraidWord, i: usize, j: usize) -> Result<HalfInteger> {
    let n = w.strands();
    if i == j || i == 0 || j == 0 || i > n || j > n {
        return Err(Error::InvalidArgument(format!("strand pair ({i}, {j}) on {n} strands")));
    }
    let trace = StrandTrace::new(w);
    let twice = w
        .letters()
        .iter()
        .enumerate()
        .filter(|(t, l)| {
            let (a, b) = trace.crossing(*t, l.generator);
            (a, b) == (i, j) || (a, b) == (j, i)
        })
        .map(|(_, l)| l.signed().signum())
        .sum();
    Ok(HalfInteger { twice })
}

/// Triples `k < l < m` with `l - k` and `m - l` odd.
pub fn odd_gap_triples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for k in 1..=n {
        for l in (k + 1..=n).step_by(2) {
            for m in (l + 1..=n).step_by(2) {
                out.push((k, l, m));
            }
        }
    }
    out
}

/// Checks, for odd `n`: `α_n` has exponent sum zero and is nontrivial, so
/// it is not periodic; deleting all but an odd-gap triple of strands from
/// `α_n^n` leaves `α_3³`; and the strands of `α_3³` are pairwise unlinked.
pub fn verify_strand_deletion(n: usize) -> Result<VerificationReport> {
    if n < 3 || n.is_multiple_of(2) || n > crate::perm::MAX_STRANDS {
        return Err(Error::InvalidArgument(format!("needs odd 3 <= n <= {}, got {n}", crate::perm::MAX_STRANDS)));
    }
    let a = alpha(n)?;
    let power = a.pow(n as i64);
    let g3 = ArtinGroup::new(3)?;
    let alpha3_cubed = alpha(3)?.pow(3);

    let rows: Vec<MemberRow> = odd_gap_triples(n)
        .par_iter()
        .map(|&(k, l, m)| -> Result<MemberRow> {
            let kept = delete_strands(&power, &BTreeSet::from([k, l, m]))?;
            let nf = g3.normal_form(&kept)?;
            Ok(MemberRow {
                label: format!("({k},{l},{m})"),
                word: kept.to_string(),
                normal_form: nf.serialize(&g3),
                inf: nf.inf,
                canonical_length: nf.canonical_length(),
                rigid: summit::is_rigid(&g3, &nf),
                conjugator: None,
                moves: None,
                in_uss: None,
                passed: g3.equals(&kept, &alpha3_cubed)?,
            })
        })
        .collect::<Result<_>>()?;

    let links: Vec<HalfInteger> = [(1, 2), (1, 3), (2, 3)]
        .iter()
        .map(|&(i, j)| linking_number(&alpha3_cubed, i, j))
        .collect::<Result<_>>()?;

    let checks = vec![
        Check::new(
            "periodicity_excluded",
            periodicity_excluded(&a)?,
            format!("exponent sum of alpha_{n} is {}", exponent_sum(&a)),
        ),
        Check::new(
            "triples_reduce_to_alpha3_cubed",
            rows.iter().all(|r| r.passed),
            format!("{} odd-gap triples", rows.len()),
        ),
        Check::new(
            "alpha3_cubed_unlinked",
            links.iter().all(|h| h.twice == 0),
            format!(
                "linking numbers {}",
                links.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(", ")
            ),
        ),
    ];
    Ok(VerificationReport {
        subject: format!("strand deletion of alpha_{n}^{n}"),
        presentation: Presentation::Artin,
        n,
        family_size: rows.len(),
        bound: None,
        members: rows,
        checks,
    })
}
