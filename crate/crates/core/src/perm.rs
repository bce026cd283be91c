//! Fixed-capacity permutation tables.
//!
//! A table maps a start position to an end position. Positions are stored
//! 0-based internally and displayed 1-based, matching the usual strand
//! numbering.

use std::fmt;

use crate::error::{Error, Result};

/// Largest strand count supported by the table-backed factor types.
pub const MAX_STRANDS: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    n: u8,
    img: [u8; MAX_STRANDS],
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_STRANDS, "strand count {n} exceeds {MAX_STRANDS}");
        let mut img = [0u8; MAX_STRANDS];
        for (i, v) in img.iter_mut().enumerate().take(n) {
            *v = i as u8;
        }
        Permutation { n: n as u8, img }
    }

    /// Builds a table from 1-based images `p(1), .., p(n)`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n == 0 || n > MAX_STRANDS {
            return Err(Error::StrandCount(n));
        }
        let mut img = [0u8; MAX_STRANDS];
        let mut used = [false; MAX_STRANDS];
        for (i, &v) in images.iter().enumerate() {
            if v == 0 || v > n || used[v - 1] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            used[v - 1] = true;
            img[i] = (v - 1) as u8;
        }
        Ok(Permutation { n: n as u8, img })
    }

    /// Builds a table from a 0-based image function.
    pub(crate) fn from_fn(n: usize, f: impl Fn(usize) -> usize) -> Self {
        let mut p = Permutation::identity(n);
        for i in 0..n {
            p.img[i] = f(i) as u8;
        }
        debug_assert!(p.is_valid());
        p
    }

    fn is_valid(&self) -> bool {
        let mut seen = [false; MAX_STRANDS];
        self.as_slice().iter().all(|&v| {
            let v = v as usize;
            v < self.len() && !std::mem::replace(&mut seen[v], true)
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// 0-based image of the 0-based position `i`.
    #[inline]
    pub fn get(&self, i: usize) -> usize {
        self.img[i] as usize
    }

    #[inline]
    pub fn as_slice(&self) -> &[u8] {
        &self.img[..self.len()]
    }

    /// 1-based images, as printed.
    pub fn images(&self) -> Vec<usize> {
        self.as_slice().iter().map(|&v| v as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.as_slice().iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = *self;
        for i in 0..self.len() {
            inv.img[self.img[i] as usize] = i as u8;
        }
        inv
    }

    /// The table of "first `self`, then `other`".
    pub fn then(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let mut out = *self;
        for i in 0..self.len() {
            out.img[i] = other.img[self.img[i] as usize];
        }
        out
    }

    /// Conjugation by the reversal `i -> n-1-i`.
    pub fn flipped(&self) -> Self {
        let last = self.len() - 1;
        Permutation::from_fn(self.len(), |i| last - self.get(last - i))
    }

    /// Exchanges the images at positions `j` and `j+1` (pre-composition with
    /// the adjacent transposition).
    #[inline]
    pub(crate) fn swap_positions(&mut self, j: usize) {
        self.img.swap(j, j + 1);
    }

    /// Exchanges the values `j` and `j+1` wherever they occur
    /// (post-composition with the adjacent transposition).
    #[inline]
    pub(crate) fn swap_values(&mut self, j: usize) {
        for v in self.img[..self.n as usize].iter_mut() {
            if *v as usize == j {
                *v += 1;
            } else if *v as usize == j + 1 {
                *v -= 1;
            }
        }
    }

    /// Number of pairs `i < j` with `p(i) > p(j)`.
    pub fn inversions(&self) -> usize {
        let s = self.as_slice();
        let mut count = 0;
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                if s[i] > s[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Bitmask of the 0-based descents `{ j : p(j) > p(j+1) }`.
    #[inline]
    pub fn descent_mask(&self) -> u32 {
        let mut mask = 0u32;
        for j in 0..self.len().saturating_sub(1) {
            if self.img[j] > self.img[j + 1] {
                mask |= 1 << j;
            }
        }
        mask
    }

    /// Cycles of the permutation (0-based), each starting at its smallest
    /// element, ordered by that element. Fixed points are included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = [false; MAX_STRANDS];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.get(i);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.images().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses the `[2,3,1]` table notation.
impl std::str::FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected [..] permutation, got {s:?}")))?;
        let images = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_images(&images)
    }
}
