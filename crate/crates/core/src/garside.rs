//! The interface a braid presentation provides to the summit-set engine, and
//! the presentation-independent left normal form built on it.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Presentation {
    Artin,
    Bkl,
}

impl Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Presentation::Artin => "artin",
            Presentation::Bkl => "bkl",
        })
    }
}

impl std::str::FromStr for Presentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "artin" => Ok(Presentation::Artin),
            "bkl" => Ok(Presentation::Bkl),
            other => Err(Error::Parse(format!("unknown presentation {other:?}"))),
        }
    }
}

/// A Garside structure on the braid group `B_n`: a finite lattice of simple
/// elements below a Garside element `Δ`, with the operations needed to
/// compute and manipulate left normal forms.
///
/// Implementations must guarantee that `Δ` is simple, that `tau_pow` is an
/// automorphism of the simples, and that `f · right_complement(f) = Δ` and
/// `left_complement(f) · f = Δ`.
pub trait GarsideStructure: Sync {
    type Factor: Copy + Eq + Ord + Hash + Debug + Send + Sync;

    fn presentation(&self) -> Presentation;

    fn strands(&self) -> usize;

    fn identity(&self) -> Self::Factor;

    fn garside_element(&self) -> Self::Factor;

    /// `Δ^{-k} · f · Δ^k`.
    fn tau_pow(&self, f: &Self::Factor, k: i64) -> Self::Factor;

    /// `Δ · f⁻¹`.
    fn left_complement(&self, f: &Self::Factor) -> Self::Factor;

    /// `f⁻¹ · Δ`.
    fn right_complement(&self, f: &Self::Factor) -> Self::Factor;

    /// Whether `a · b` is left-weighted: no nontrivial left divisor of `b`
    /// can be moved into `a` while keeping `a` simple.
    fn is_left_weighted(&self, a: &Self::Factor, b: &Self::Factor) -> bool;

    /// Rewrites `a · b` as `a' · b'` with the pair left-weighted.
    fn left_weight_pair(&self, a: &Self::Factor, b: &Self::Factor) -> (Self::Factor, Self::Factor);

    /// Every simple element, identity and `Δ` included.
    fn simples(&self) -> Vec<Self::Factor>;

    /// Number of generator letters in a positive word for `f`.
    fn factor_length(&self, f: &Self::Factor) -> usize;

    fn format_factor(&self, f: &Self::Factor) -> String;

    fn parse_factor(&self, s: &str) -> Result<Self::Factor>;

    fn is_identity(&self, f: &Self::Factor) -> bool {
        *f == self.identity()
    }

    fn is_garside_element(&self, f: &Self::Factor) -> bool {
        *f == self.garside_element()
    }
}

/// `Δ^inf · factors[0] ⋯ factors[m-1]`.
///
/// Values produced by [`NormalForm::normalize`] and the engine are in left
/// normal form: no factor is the identity or `Δ`, and adjacent factors are
/// left-weighted. The derived ordering compares `(inf, factors)`
/// lexicographically and is the canonical ordering used for reports.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm<F> {
    pub inf: i64,
    pub factors: Vec<F>,
}

impl<F: Copy + Eq> NormalForm<F> {
    pub fn delta_power(k: i64) -> Self {
        NormalForm { inf: k, factors: Vec::new() }
    }

    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    pub fn sup(&self) -> i64 {
        self.inf + self.factors.len() as i64
    }

    /// The identity braid in normal form.
    pub fn identity() -> Self {
        Self::delta_power(0)
    }

    pub fn is_identity(&self) -> bool {
        self.inf == 0 && self.factors.is_empty()
    }

    /// Left normal form of `Δ^inf · s_1 ⋯ s_r` for arbitrary simples.
    pub fn normalize<G>(g: &G, inf: i64, simples: impl IntoIterator<Item = F>) -> Self
    where
        G: GarsideStructure<Factor = F> + ?Sized,
    {
        let mut nf = NormalForm::delta_power(inf);
        for s in simples {
            nf.push_simple(g, s);
        }
        nf
    }

    /// Multiplies on the right by a simple element, restoring normal form
    /// with a right-to-left sweep of local left-weighting.
    pub fn push_simple<G>(&mut self, g: &G, s: F)
    where
        G: GarsideStructure<Factor = F> + ?Sized,
    {
        if g.is_identity(&s) {
            return;
        }
        self.factors.push(s);
        let mut i = self.factors.len() - 1;
        while i > 0 {
            let (a, b) = g.left_weight_pair(&self.factors[i - 1], &self.factors[i]);
            if a == self.factors[i - 1] {
                break;
            }
            self.factors[i - 1] = a;
            self.factors[i] = b;
            i -= 1;
        }
        let leading = self.factors.iter().take_while(|f| g.is_garside_element(f)).count();
        if leading > 0 {
            self.factors.drain(..leading);
            self.inf += leading as i64;
        }
        self.factors.retain(|f| !g.is_identity(f));
        debug_assert!(self.is_valid(g), "push_simple broke left-weightedness");
    }

    /// Multiplies on the right by `Δ^k`, moving the power to the front.
    pub fn push_delta_power<G>(&mut self, g: &G, k: i64)
    where
        G: GarsideStructure<Factor = F> + ?Sized,
    {
        if k == 0 {
            return;
        }
        for f in self.factors.iter_mut() {
            *f = g.tau_pow(f, k);
        }
        self.inf += k;
    }

    /// Multiplies on the right by the inverse of a simple element:
    /// `s⁻¹ = Δ⁻¹ · (Δ s⁻¹)`.
    pub fn push_inverse_simple<G>(&mut self, g: &G, s: F)
    where
        G: GarsideStructure<Factor = F> + ?Sized,
    {
        if g.is_identity(&s) {
            return;
        }
        self.push_delta_power(g, -1);
        self.push_simple(g, g.left_complement(&s));
    }

    /// Right multiplication by another normal form.
    pub fn mul<G>(&self, g: &G, rhs: &NormalForm<F>) -> Self
    where
        G: GarsideStructure<Factor = F> + ?Sized,
    {
        let mut out = self.clone();
        out.push_delta_power(g, rhs.inf);
        for &f in &rhs.factors {
            out.push_simple(g, f);
        }
        out
    }

    pub fn inverse<G>(&self, g: &G) -> Self
    where
        G: GarsideStructure<Factor = F> + ?Sized,
    {
        let mut out = NormalForm::identity();
        for &f in self.factors.iter().rev() {
            out.push_inverse_simple(g, f);
        }
        out.push_delta_power(g, -self.inf);
        out
    }

    /// `c⁻¹ · self · c`.
    pub fn conjugate<G>(&self, g: &G, c: &NormalForm<F>) -> Self
    where
        G: GarsideStructure<Factor = F> + ?Sized,
    {
        c.inverse(g).mul(g, self).mul(g, c)
    }

    /// `s⁻¹ · self · s` for a simple `s`.
    pub fn conjugate_by_simple<G>(&self, g: &G, s: &F) -> Self
    where
        G: GarsideStructure<Factor = F> + ?Sized,
    {
        // s⁻¹ Δ^k B s = Δ^{k-1} τ^k(Δ s⁻¹) B s
        let head = g.tau_pow(&g.left_complement(s), self.inf);
        let mut out = NormalForm::delta_power(self.inf - 1);
        out.push_simple(g, head);
        for &f in &self.factors {
            out.push_simple(g, f);
        }
        out.push_simple(g, *s);
        out
    }

    /// Checks the normal-form invariants.
    pub fn is_valid<G>(&self, g: &G) -> bool
    where
        G: GarsideStructure<Factor = F> + ?Sized,
    {
        self.factors.iter().all(|f| !g.is_identity(f) && !g.is_garside_element(f))
            && self.factors.windows(2).all(|w| g.is_left_weighted(&w[0], &w[1]))
    }

    /// Serialized as `inf;factor;factor..`, e.g. `-1;[1,3,2];[2,3,1]`.
    pub fn serialize<G>(&self, g: &G) -> String
    where
        G: GarsideStructure<Factor = F> + ?Sized,
    {
        let mut s = self.inf.to_string();
        for f in &self.factors {
            s.push(';');
            s.push_str(&g.format_factor(f));
        }
        s
    }

    /// Inverse of [`NormalForm::serialize`]; rejects strings that are not
    /// in left normal form.
    pub fn parse<G>(g: &G, text: &str) -> Result<Self>
    where
        G: GarsideStructure<Factor = F> + ?Sized,
    {
        let mut parts = text.trim().split(';');
        let inf = parts
            .next()
            .unwrap_or("")
            .trim()
            .parse::<i64>()
            .map_err(|e| Error::Parse(format!("infimum in {text:?}: {e}")))?;
        let factors = parts.map(|p| g.parse_factor(p)).collect::<Result<Vec<_>>>()?;
        let nf = NormalForm { inf, factors };
        if !nf.is_valid(g) {
            return Err(Error::Parse(format!("{text:?} is not in left normal form")));
        }
        Ok(nf)
    }
}
