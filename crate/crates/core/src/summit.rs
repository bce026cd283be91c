//! Cycling, decycling, rigidity, and Super/Ultra Summit Set computation over
//! any [`GarsideStructure`].

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::garside::{GarsideStructure, NormalForm};

/// Default cap on the number of elements an enumeration may hold.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// `Δ^k · b_2 ⋯ b_m · τ^{-k}(b_1)`, renormalized. Forms of canonical length
/// at most one are fixed points.
pub fn cycling<G: GarsideStructure + ?Sized>(g: &G, nf: &NormalForm<G::Factor>) -> NormalForm<G::Factor> {
    if nf.factors.len() <= 1 {
        return nf.clone();
    }
    let moved = g.tau_pow(&nf.factors[0], -nf.inf);
    NormalForm::normalize(g, nf.inf, nf.factors[1..].iter().copied().chain(std::iter::once(moved)))
}

/// `Δ^k · τ^k(b_m) · b_1 ⋯ b_{m-1}`, renormalized. Forms of canonical
/// length at most one are fixed points.
pub fn decycling<G: GarsideStructure + ?Sized>(g: &G, nf: &NormalForm<G::Factor>) -> NormalForm<G::Factor> {
    let m = nf.factors.len();
    if m <= 1 {
        return nf.clone();
    }
    let moved = g.tau_pow(&nf.factors[m - 1], nf.inf);
    NormalForm::normalize(g, nf.inf, std::iter::once(moved).chain(nf.factors[..m - 1].iter().copied()))
}

/// The simple conjugator `c` with `cycling(x) = c⁻¹ x c`.
pub fn cycling_conjugator<G: GarsideStructure + ?Sized>(g: &G, nf: &NormalForm<G::Factor>) -> G::Factor {
    if nf.factors.len() <= 1 {
        g.identity()
    } else {
        g.tau_pow(&nf.factors[0], -nf.inf)
    }
}

/// Whether the cycled concatenation is already left-weighted. Forms with
/// no factors are rigid by convention.
pub fn is_rigid<G: GarsideStructure + ?Sized>(g: &G, nf: &NormalForm<G::Factor>) -> bool {
    let m = nf.factors.len();
    if m <= 1 {
        return true;
    }
    let moved = g.tau_pow(&nf.factors[0], -nf.inf);
    g.is_left_weighted(&nf.factors[m - 1], &moved)
}

/// Generator-letter length of a positive-word rendering of `nf`.
pub fn letter_length<G: GarsideStructure + ?Sized>(g: &G, nf: &NormalForm<G::Factor>) -> usize {
    let delta = g.factor_length(&g.garside_element());
    nf.inf.unsigned_abs() as usize * delta + nf.factors.iter().map(|f| g.factor_length(f)).sum::<usize>()
}

/// Drives `nf` into its Super Summit Set.
///
/// Cycles until the infimum stops growing (a revisited form means it never
/// will), then decycles until the supremum stops shrinking, and repeats
/// until a round changes nothing. `word_length` sets the iteration cap
/// `(word_length + 2) · n²`.
pub fn sss_representative<G: GarsideStructure + ?Sized>(
    g: &G,
    nf: &NormalForm<G::Factor>,
    word_length: usize,
) -> Result<NormalForm<G::Factor>> {
    let n = g.strands();
    let cap = (word_length + 2) * n * n;
    let mut steps = 0usize;
    let mut x = nf.clone();
    loop {
        let before = (x.inf, x.sup());
        x = descend(g, x, cycling, |old, new| new.inf > old.inf, &mut steps, cap)?;
        x = descend(g, x, decycling, |old, new| new.sup() < old.sup(), &mut steps, cap)?;
        if (x.inf, x.sup()) == before {
            return Ok(x);
        }
    }
}

fn descend<G, Step, Better>(
    g: &G,
    mut x: NormalForm<G::Factor>,
    step: Step,
    better: Better,
    steps: &mut usize,
    cap: usize,
) -> Result<NormalForm<G::Factor>>
where
    G: GarsideStructure + ?Sized,
    Step: Fn(&G, &NormalForm<G::Factor>) -> NormalForm<G::Factor>,
    Better: Fn(&NormalForm<G::Factor>, &NormalForm<G::Factor>) -> bool,
{
    let mut seen = HashSet::new();
    seen.insert(x.clone());
    loop {
        if x.factors.len() <= 1 {
            return Ok(x);
        }
        let y = step(g, &x);
        *steps += 1;
        if *steps > cap {
            return Err(Error::IterationCap(cap));
        }
        if better(&x, &y) {
            seen.clear();
        } else if seen.contains(&y) {
            return Ok(x);
        }
        seen.insert(y.clone());
        x = y;
    }
}

/// Follows cycling from an element of the Super Summit Set and returns the
/// first form that recurs, which lies on a closed cycling orbit.
pub fn uss_orbit_representative<G: GarsideStructure + ?Sized>(
    g: &G,
    nf: &NormalForm<G::Factor>,
) -> NormalForm<G::Factor> {
    let mut seen = HashSet::new();
    let mut x = nf.clone();
    while seen.insert(x.clone()) {
        x = cycling(g, &x);
    }
    x
}

/// The cycling orbit of an element on a closed orbit, starting at `nf`.
pub fn cycling_orbit<G: GarsideStructure + ?Sized>(
    g: &G,
    nf: &NormalForm<G::Factor>,
) -> Vec<NormalForm<G::Factor>> {
    let mut orbit = vec![nf.clone()];
    let mut x = cycling(g, nf);
    while x != *nf {
        orbit.push(x.clone());
        x = cycling(g, &x);
        debug_assert!(orbit.len() <= 1 << 20, "cycling orbit did not close");
    }
    orbit
}

#[derive(Debug, Clone, Copy)]
pub struct UssOptions {
    /// Maximum number of elements before enumeration aborts.
    pub budget: usize,
    /// Record, for every element, a product of simples conjugating the seed
    /// to it.
    pub track_conjugators: bool,
}

impl Default for UssOptions {
    fn default() -> Self {
        UssOptions { budget: DEFAULT_BUDGET, track_conjugators: false }
    }
}

/// An enumerated Ultra Summit Set.
#[derive(Debug, Clone)]
pub struct UssReport<F> {
    /// Normal form the enumeration started from.
    pub generated_from: NormalForm<F>,
    /// The USS element reached from `generated_from`.
    pub seed: NormalForm<F>,
    pub elements: BTreeSet<NormalForm<F>>,
    /// Cycling orbits, each listed from its least element in cycling order;
    /// orbits are ordered by their first element.
    pub orbits: Vec<Vec<NormalForm<F>>>,
    /// For each element `y`, simples `s_1 .. s_r` with
    /// `y = (s_1⋯s_r)⁻¹ · seed · (s_1⋯s_r)`, when requested.
    pub conjugators: Option<BTreeMap<NormalForm<F>, Vec<F>>>,
}

impl<F: Copy + Eq + Ord> UssReport<F> {
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn inf(&self) -> i64 {
        self.seed.inf
    }

    pub fn canonical_length(&self) -> usize {
        self.seed.factors.len()
    }

    pub fn contains(&self, nf: &NormalForm<F>) -> bool {
        self.elements.contains(nf)
    }
}

/// Parent element and the simples conjugating it to the child.
type Link<F> = Option<(NormalForm<F>, Vec<F>)>;
type Parents<F> = HashMap<NormalForm<F>, Link<F>>;
/// A new conjugate and the simple that produced it.
type Step<F> = (NormalForm<F>, F);

/// Enumerates the Ultra Summit Set of the conjugacy class of `nf`.
///
/// The seed is found by SSS descent followed by cycling until a form
/// recurs. The set is then closed under conjugation by every simple
/// element: conjugates keeping the infimum and canonical length are mapped
/// onto their closed cycling orbit and added with that whole orbit.
/// Frontier elements are processed in parallel; the result does not depend
/// on scheduling.
pub fn uss_enumerate<G: GarsideStructure + ?Sized>(
    g: &G,
    nf: &NormalForm<G::Factor>,
    opts: UssOptions,
) -> Result<UssReport<G::Factor>> {
    let sss = sss_representative(g, nf, letter_length(g, nf))?;
    let seed = uss_orbit_representative(g, &sss);
    let simples: Vec<G::Factor> = g.simples().into_iter().filter(|s| !g.is_identity(s)).collect();
    let profile = (seed.inf, seed.factors.len());

    // element -> (parent, conjugating simples from parent)
    let mut seen: Parents<G::Factor> =
        HashMap::new();
    let mut frontier = Vec::new();
    add_orbit(g, &seed, None, &mut seen, &mut frontier, opts.budget)?;

    while !frontier.is_empty() {
        let seen_ref = &seen;
        let discovered: Vec<Vec<Step<G::Factor>>> = frontier
            .par_iter()
            .map(|x: &NormalForm<G::Factor>| {
                let mut local: Vec<Step<G::Factor>> = Vec::new();
                let mut local_seen = HashSet::new();
                for s in &simples {
                    let y = x.conjugate_by_simple(g, s);
                    if (y.inf, y.factors.len()) != profile || seen_ref.contains_key(&y) {
                        continue;
                    }
                    if local_seen.insert(y.clone()) {
                        local.push((y, *s));
                    }
                }
                local
            })
            .collect();

        let mut next = Vec::new();
        for (x, found) in frontier.iter().zip(discovered) {
            for (y, s) in found {
                if seen.contains_key(&y) {
                    continue;
                }
                // y is in the Super Summit Set; walk it onto a closed orbit.
                let mut path = vec![s];
                let mut z = y;
                let mut visited = HashSet::new();
                while visited.insert(z.clone()) {
                    path.push(cycling_conjugator(g, &z));
                    z = cycling(g, &z);
                }
                let rep = uss_orbit_representative(g, &z);
                if seen.contains_key(&rep) {
                    continue;
                }
                let parent = opts.track_conjugators.then(|| (x.clone(), path));
                add_orbit(g, &rep, parent, &mut seen, &mut next, opts.budget)?;
            }
        }
        frontier = next;
    }

    let elements: BTreeSet<_> = seen.keys().cloned().collect();
    let orbits = partition_orbits(g, &elements);
    let conjugators = opts.track_conjugators.then(|| resolve_conjugators(g, &seed, &seen));
    Ok(UssReport { generated_from: nf.clone(), seed, elements, orbits, conjugators })
}

fn add_orbit<G: GarsideStructure + ?Sized>(
    g: &G,
    start: &NormalForm<G::Factor>,
    parent: Link<G::Factor>,
    seen: &mut Parents<G::Factor>,
    out: &mut Vec<NormalForm<G::Factor>>,
    budget: usize,
) -> Result<()> {
    let mut link = parent;
    let mut x = start.clone();
    loop {
        if seen.contains_key(&x) {
            return Ok(());
        }
        if seen.len() >= budget {
            return Err(Error::BudgetExceeded(budget));
        }
        let c = cycling_conjugator(g, &x);
        let y = cycling(g, &x);
        seen.insert(x.clone(), link.take());
        out.push(x.clone());
        link = Some((x, vec![c]));
        x = y;
    }
}

fn resolve_conjugators<G: GarsideStructure + ?Sized>(
    g: &G,
    seed: &NormalForm<G::Factor>,
    seen: &Parents<G::Factor>,
) -> BTreeMap<NormalForm<G::Factor>, Vec<G::Factor>> {
    let mut out: BTreeMap<NormalForm<G::Factor>, Vec<G::Factor>> = BTreeMap::new();
    out.insert(seed.clone(), Vec::new());
    for start in seen.keys() {
        let mut chain = Vec::new();
        let mut x = start.clone();
        let prefix = loop {
            if let Some(p) = out.get(&x) {
                break p.clone();
            }
            let (parent, path) = seen[&x].clone().expect("only the seed lacks a parent");
            chain.push((x, path));
            x = parent;
        };
        let mut acc = prefix;
        for (node, path) in chain.into_iter().rev() {
            acc.extend(path.into_iter().filter(|s| !g.is_identity(s)));
            out.insert(node, acc.clone());
        }
    }
    out
}

/// Splits a cycling-closed set into its orbits.
pub fn partition_orbits<G: GarsideStructure + ?Sized>(
    g: &G,
    elements: &BTreeSet<NormalForm<G::Factor>>,
) -> Vec<Vec<NormalForm<G::Factor>>> {
    let mut assigned = HashSet::new();
    let mut orbits = Vec::new();
    for x in elements {
        if assigned.contains(x) {
            continue;
        }
        let orbit = cycling_orbit(g, x);
        assigned.extend(orbit.iter().cloned());
        orbits.push(orbit);
    }
    orbits
}
