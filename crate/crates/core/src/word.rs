//! Signed words in the Artin generators.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One letter `σ_i` or `σ_i⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub positive: bool,
}

impl Letter {
    pub fn pos(generator: usize) -> Self {
        Letter { generator, positive: true }
    }

    pub fn neg(generator: usize) -> Self {
        Letter { generator, positive: false }
    }

    pub fn inverse(self) -> Self {
        Letter { positive: !self.positive, ..self }
    }

    /// `+i` or `-i`.
    pub fn signed(self) -> i64 {
        if self.positive {
            self.generator as i64
        } else {
            -(self.generator as i64)
        }
    }
}

/// A braid word on a fixed number of strands. The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::StrandCount(strands));
        }
        for l in &letters {
            if l.generator == 0 || l.generator >= strands {
                return Err(Error::GeneratorOutOfRange { index: l.generator, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord { strands: strands.max(1), letters: Vec::new() }
    }

    /// Builds a word from signed generator indices, e.g. `[1, -2, 3]`.
    pub fn from_signed(strands: usize, signed: &[i64]) -> Result<Self> {
        let letters = signed
            .iter()
            .map(|&v| {
                if v == 0 {
                    Err(Error::Parse("generator index 0".into()))
                } else {
                    Ok(Letter { generator: v.unsigned_abs() as usize, positive: v > 0 })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        BraidWord::new(strands, letters)
    }

    /// Parses whitespace-separated signed integers: `"1 -2 3"` is `σ1 σ2⁻¹ σ3`.
    pub fn parse(strands: usize, text: &str) -> Result<Self> {
        let signed = text
            .split_whitespace()
            .map(|t| t.parse::<i64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        BraidWord::from_signed(strands, &signed)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn signed(&self) -> Vec<i64> {
        self.letters.iter().map(|l| l.signed()).collect()
    }

    pub fn inverse(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &BraidWord) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    /// `self^k`; negative exponents repeat the inverse.
    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord { strands: self.strands, letters }
    }

    /// The word with every index `i` replaced by `n - i`; as a braid this is
    /// conjugation by the half twist.
    pub fn flipped(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: self
                .letters
                .iter()
                .map(|l| Letter { generator: self.strands - l.generator, ..*l })
                .collect(),
        }
    }

    pub fn push(&mut self, letter: Letter) -> Result<()> {
        if letter.generator == 0 || letter.generator >= self.strands {
            return Err(Error::GeneratorOutOfRange { index: letter.generator, strands: self.strands });
        }
        self.letters.push(letter);
        Ok(())
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", l.signed())?;
        }
        Ok(())
    }
}
