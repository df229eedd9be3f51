//! The functional digraph of a Case-2 labeled configuration, free chains,
//! pivot selection and the edge surgery that realizes ψ on this branch.

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::{Cycle, Permutation};
use crate::psi::LabeledConfiguration;

/// Out-degree-one digraph on `[n]`: `i → π(i)` on the designated cycle,
/// `i → f(i)` everywhere else.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionalDigraph {
    k: usize,
    out: Vec<usize>,
    on_cycle: Vec<bool>,
    designated: Cycle,
}

impl FunctionalDigraph {
    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn out(&self, x: usize) -> usize {
        self.out[x - 1]
    }

    pub fn designated(&self) -> &Cycle {
        &self.designated
    }

    pub fn is_designated(&self, x: usize) -> bool {
        self.on_cycle[x - 1]
    }

    /// Edges `(from, to)` ordered by source.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out.iter().enumerate().map(|(x, &y)| (x + 1, y))
    }

    /// The unique vertex off the designated cycle pointing at `x`, if any.
    ///
    /// Labels of Case-2 configurations are pairwise distinct, so a second such
    /// vertex means the digraph is corrupt.
    pub fn outside_in_neighbor(&self, x: usize) -> Result<Option<usize>> {
        let mut found = None;
        for (y, &target) in self.out.iter().enumerate() {
            if target == x && !self.on_cycle[y] {
                if found.is_some() {
                    return Err(Error::Corrupted(format!(
                        "vertex {x} has more than one in-neighbor off the designated cycle"
                    )));
                }
                found = Some(y + 1);
            }
        }
        Ok(found)
    }

    fn cycle_predecessor(&self, x: usize) -> usize {
        let elems = self.designated.elements();
        let pos = elems
            .iter()
            .position(|&y| y == x)
            .expect("vertex lies on the designated cycle");
        elems[(pos + elems.len() - 1) % elems.len()]
    }

    /// Reads the configuration back, using the tracked designated cycle.
    pub fn to_configuration(&self) -> Result<LabeledConfiguration> {
        let n = self.n();
        let image = (1..=n)
            .map(|x| if self.is_designated(x) { self.out(x) } else { x })
            .collect();
        let perm = Permutation::from_images(image)?;
        let labels = (1..=n)
            .filter(|&x| !self.is_designated(x))
            .map(|x| (x, self.out(x)))
            .collect();
        LabeledConfiguration::new(perm, self.designated.clone(), self.k, labels)
    }

    /// Graphviz rendering; designated-cycle edges are drawn bold and red.
    pub fn to_dot(&self) -> String {
        let mut dot = String::from("digraph D {\n  node [shape=circle];\n");
        for x in 1..=self.n() {
            dot.push_str(&format!("  {x};\n"));
        }
        for (x, y) in self.edges() {
            if self.is_designated(x) {
                dot.push_str(&format!("  {x} -> {y} [color=red, penwidth=2];\n"));
            } else {
                dot.push_str(&format!("  {x} -> {y};\n"));
            }
        }
        dot.push_str("}\n");
        dot
    }

    fn with_edges(&self, out: Vec<usize>, designated: Vec<usize>) -> FunctionalDigraph {
        let mut on_cycle = vec![false; out.len()];
        for &x in &designated {
            on_cycle[x - 1] = true;
        }
        FunctionalDigraph {
            k: self.k,
            out,
            on_cycle,
            designated: Cycle::canonical(designated),
        }
    }

    /// The vertex just before `x` on its path of "hairs": the outside
    /// in-neighbor of `x` if there is one, otherwise its predecessor on the
    /// designated cycle.
    fn word_predecessor(&self, x: usize) -> Result<usize> {
        Ok(match self.outside_in_neighbor(x)? {
            Some(u) => u,
            None => self.cycle_predecessor(x),
        })
    }

    /// Reading the component of the designated cycle as a cyclic word (each
    /// cycle vertex preceded by the path feeding into it), the letter after `x`.
    fn word_successor(&self, x: usize) -> Result<usize> {
        if !self.is_designated(x) {
            return Ok(self.out(x));
        }
        let mut s = self.out(x);
        while let Some(t) = self.outside_in_neighbor(s)? {
            s = t;
        }
        Ok(s)
    }

    /// Vertices whose forward path reaches the designated cycle.
    fn component(&self) -> Vec<usize> {
        let n = self.n();
        (1..=n)
            .filter(|&start| {
                let mut x = start;
                for _ in 0..=n {
                    if self.is_designated(x) {
                        return true;
                    }
                    x = self.out(x);
                }
                false
            })
            .collect()
    }
}

impl fmt::Display for FunctionalDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges().map(|(x, y)| format!("{x}->{y}")).collect();
        write!(f, "C={} edges: {}", self.designated, edges.join(", "))
    }
}

/// Requires that no Case-1 pair exists, so every non-marked cycle is a
/// fixed point carrying a distinct label.
pub fn build_digraph(cfg: &LabeledConfiguration) -> Result<FunctionalDigraph> {
    let n = cfg.n();
    let mut out = vec![0; n];
    let mut on_cycle = vec![false; n];
    for &x in cfg.marked().elements() {
        on_cycle[x - 1] = true;
        out[x - 1] = cfg.perm().apply(x);
    }
    let mut used = vec![false; cfg.k() + 1];
    for (x, label) in cfg.labels() {
        if cfg.perm().apply(x) != x {
            return Err(Error::Precondition(format!(
                "cycle through {x} is not a fixed point; Case 1 applies"
            )));
        }
        if std::mem::replace(&mut used[label], true) {
            return Err(Error::Precondition(format!(
                "label {label} is used twice; Case 1 applies"
            )));
        }
        out[x - 1] = label;
    }
    Ok(FunctionalDigraph {
        k: cfg.k(),
        out,
        on_cycle,
        designated: cfg.marked().clone(),
    })
}

/// `i` is free when `i ≤ k` and its only in-edge comes from the cycle itself.
pub fn is_free(d: &FunctionalDigraph, i: usize) -> Result<bool> {
    if i == 0 || i > d.n() || !d.is_designated(i) {
        return Err(Error::Precondition(format!(
            "{i} is not on the designated cycle {}",
            d.designated
        )));
    }
    Ok(i <= d.k && d.outside_in_neighbor(i)?.is_none())
}

/// `(m₁, …, m_ℓ)`: `m_i` is the `i`-th smallest vertex of the cycle and, for
/// `i ≥ 2`, free with `m_i = π(m_{i-1})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeChain {
    elements: Vec<usize>,
}

impl FreeChain {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn first(&self) -> usize {
        self.elements[0]
    }
}

impl fmt::Display for FreeChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn maximal_free_chain(d: &FunctionalDigraph) -> Result<FreeChain> {
    let mut sorted = d.designated.elements().to_vec();
    sorted.sort_unstable();
    if sorted[0] > d.k {
        return Err(Error::Precondition(format!(
            "designated cycle {} has no vertex in [1, {}]",
            d.designated, d.k
        )));
    }
    let mut elements = vec![sorted[0]];
    while elements.len() < sorted.len() {
        let next = d.out(*elements.last().unwrap());
        if next != sorted[elements.len()] || !is_free(d, next)? {
            break;
        }
        elements.push(next);
    }
    Ok(FreeChain { elements })
}

/// How the pivot is read off the chain length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ParityRule {
    /// `m₁` for odd length, `m₂` for even length.
    #[default]
    Standard,
    /// Deliberately wrong: `m₂` for odd length (when it exists), `m₁` for even.
    Inverted,
}

pub fn select_pivot(chain: &FreeChain) -> usize {
    select_pivot_with(chain, ParityRule::Standard)
}

pub fn select_pivot_with(chain: &FreeChain, parity: ParityRule) -> usize {
    let odd = chain.len() % 2 == 1;
    match parity {
        ParityRule::Standard if odd => chain.elements[0],
        ParityRule::Standard => chain.elements[1],
        ParityRule::Inverted if odd && chain.len() >= 3 => chain.elements[1],
        ParityRule::Inverted => chain.elements[0],
    }
}

/// One edge surgery at a pivot `m̄`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Surgery {
    pub pivot: usize,
    pub pivot_free: bool,
    pub u: usize,
    pub v: usize,
}

/// If `m̄` is free, with `v → u → m̄` on the cycle, replace `v → u` by `v → m̄`
/// (`u` leaves the cycle). Otherwise, with `u → m̄` from outside and `v → m̄`
/// on the cycle, replace `v → m̄` by `v → u` (`u` joins the cycle).
pub fn toggle_at_pivot(d: &FunctionalDigraph, pivot: usize) -> Result<(FunctionalDigraph, Surgery)> {
    let pivot_free = is_free(d, pivot)?;
    let mut out = d.out.clone();
    let cycle = d.designated.elements();
    if pivot_free {
        let u = d.cycle_predecessor(pivot);
        if u == pivot {
            return Err(Error::Corrupted(format!(
                "free pivot {pivot} is alone on the designated cycle"
            )));
        }
        let v = d.cycle_predecessor(u);
        out[v - 1] = pivot;
        let designated = cycle.iter().copied().filter(|&x| x != u).collect();
        Ok((
            d.with_edges(out, designated),
            Surgery {
                pivot,
                pivot_free,
                u,
                v,
            },
        ))
    } else {
        let u = d.outside_in_neighbor(pivot)?.ok_or_else(|| {
            Error::Corrupted(format!("pivot {pivot} is neither free nor fed from outside"))
        })?;
        let v = d.cycle_predecessor(pivot);
        out[v - 1] = u;
        let mut designated = Vec::with_capacity(cycle.len() + 1);
        for &x in cycle {
            if x == pivot {
                designated.push(u);
            }
            designated.push(x);
        }
        Ok((
            d.with_edges(out, designated),
            Surgery {
                pivot,
                pivot_free,
                u,
                v,
            },
        ))
    }
}

/// Whether the surgery at `m₁` would be answered by a surgery somewhere else.
///
/// This happens exactly when the chain has odd length, the vertex `u` just
/// before `m₁` exceeds `m₁`, and moving `u` across the cycle changes the rank
/// pattern so that the resulting chain has even length.
pub fn is_unbalanced(d: &FunctionalDigraph, chain: &FreeChain) -> Result<bool> {
    if chain.len() % 2 == 0 {
        return Ok(false);
    }
    let m1 = chain.first();
    if d.word_predecessor(m1)? < m1 {
        return Ok(false);
    }
    let (partner, _) = toggle_at_pivot(d, m1)?;
    Ok(maximal_free_chain(&partner)?.len() % 2 == 0)
}

/// Moves the largest vertex `y` of the designated cycle's component whose
/// word successor lies in `[k]` across the cycle boundary.
///
/// On a cycle vertex `y` this splices `y` out (its predecessor now points at
/// `π(y)`) and points `y` at its word successor; off the cycle it splices `y`
/// in just before the cycle vertex its path leads to. Neither step touches
/// the free chain, so this pairs unbalanced configurations with each other.
pub fn rebalance(d: &FunctionalDigraph) -> Result<(FunctionalDigraph, usize)> {
    let mut best = None;
    for x in d.component() {
        if d.word_successor(x)? <= d.k {
            best = Some(x);
        }
    }
    let y = best.ok_or_else(|| Error::Corrupted("no movable vertex in the component".into()))?;
    let mut out = d.out.clone();
    let cycle = d.designated.elements();
    if d.is_designated(y) {
        if cycle.len() == 1 {
            return Err(Error::Corrupted(format!("{y} is alone on the designated cycle")));
        }
        let p = d.cycle_predecessor(y);
        out[p - 1] = d.out(y);
        out[y - 1] = d.word_successor(y)?;
        let designated = cycle.iter().copied().filter(|&x| x != y).collect();
        Ok((d.with_edges(out, designated), y))
    } else {
        let mut c = d.out(y);
        while !d.is_designated(c) {
            c = d.out(c);
        }
        let p = d.cycle_predecessor(c);
        out[p - 1] = y;
        out[y - 1] = c;
        let mut designated = Vec::with_capacity(cycle.len() + 1);
        for &x in cycle {
            if x == c {
                designated.push(y);
            }
            designated.push(x);
        }
        Ok((d.with_edges(out, designated), y))
    }
}
