//! Marked permutations `(π, C)` and the involution φ on them.
//!
//! φ pairs up marked permutations of opposite sign. Its fixed points are the
//! `(n-2)!` pairs where `1` is a fixed point and the marked cycle is an
//! `(n-1)`-cycle on `{2, …, n}`, so the signed count of all marked
//! permutations is `(-1)^n (n-2)!`.

use std::fmt;

use crate::enumerate::{enumerate_permutations_capped, Caps};
use crate::error::{Error, Result};
use crate::perm::{left_multiply_transposition, parse_cycle_notation_auto, Cycle, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkedPermutation {
    perm: Permutation,
    marked: Cycle,
}

impl MarkedPermutation {
    pub fn new(perm: Permutation, marked: Cycle) -> Result<Self> {
        if !perm.has_cycle(&marked) {
            return Err(Error::NotACycle(marked.to_string()));
        }
        Ok(MarkedPermutation { perm, marked })
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn marked(&self) -> &Cycle {
        &self.marked
    }

    pub fn n(&self) -> usize {
        self.perm.n()
    }

    pub fn sign(&self) -> i64 {
        self.perm.sign()
    }

    /// Parses `<cycle notation> | C=<cycle>`.
    pub fn parse(text: &str) -> Result<Self> {
        let (perm_text, rest) = text.split_once('|').ok_or_else(|| Error::Malformed {
            offset: text.len(),
            message: "expected '| C=<cycle>'".into(),
        })?;
        let perm = parse_cycle_notation_auto(perm_text)?;
        let marked = parse_marked_field(rest, perm_text.len() + 1)?;
        MarkedPermutation::new(perm, marked)
    }
}

pub(crate) fn parse_marked_field(field: &str, offset: usize) -> Result<Cycle> {
    let body = field
        .trim()
        .strip_prefix("C=")
        .ok_or_else(|| Error::Malformed {
            offset,
            message: "expected 'C=<cycle>'".into(),
        })?;
    Cycle::parse(body)
}

impl fmt::Display for MarkedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | C={}", self.perm, self.marked)
    }
}

/// Which φ to run. Only [`PhiRule::Standard`] is the real involution; the
/// other variant exists so the verification harness can be shown to reject it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PhiRule {
    #[default]
    Standard,
    /// Splits off the last element of the long cycle instead of the one after `1`.
    SplitLast,
}

/// What φ did to its input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PhiStep {
    /// `|C| ≤ n-2`: multiplied by `τ_ij` for the smallest pair outside `C`.
    Transpose { i: usize, j: usize },
    /// `|C| ≥ n-1` and `1 ∉ C`.
    Fixed,
    /// `π` was an `n`-cycle; `a0` became a fixed point.
    Split { a0: usize },
    /// `a0` was a fixed point; it was inserted right after `1`.
    Merge { a0: usize },
}

pub fn phi(mp: &MarkedPermutation) -> Result<MarkedPermutation> {
    phi_with(mp, PhiRule::Standard).map(|(out, _)| out)
}

pub fn phi_with(mp: &MarkedPermutation, rule: PhiRule) -> Result<(MarkedPermutation, PhiStep)> {
    let n = mp.n();
    if n < 2 {
        return Err(Error::SizeTooSmall { n, min: 2 });
    }
    let c = &mp.marked;
    if c.len() + 2 <= n {
        let mut outside = (1..=n).filter(|&x| !c.contains(x));
        let i = outside.next().expect("at least two elements outside C");
        let j = outside.next().expect("at least two elements outside C");
        let perm = left_multiply_transposition(i, j, &mp.perm)?;
        return Ok((
            MarkedPermutation {
                perm,
                marked: c.clone(),
            },
            PhiStep::Transpose { i, j },
        ));
    }
    if !c.contains(1) {
        return Ok((mp.clone(), PhiStep::Fixed));
    }

    // C starts with 1 in canonical form.
    let tail = &c.elements()[1..];
    if c.len() == n {
        let split_at = match rule {
            PhiRule::Standard => 0,
            PhiRule::SplitLast => tail.len() - 1,
        };
        let a0 = tail[split_at];
        let mut rest = vec![1];
        rest.extend(tail.iter().copied().filter(|&x| x != a0));
        let perm = Permutation::from_cycles(n, &[vec![a0], rest.clone()])?;
        let marked = Cycle::canonical(rest);
        Ok((MarkedPermutation { perm, marked }, PhiStep::Split { a0 }))
    } else {
        let a0 = (1..=n)
            .find(|&x| !c.contains(x))
            .expect("exactly one element outside C");
        let mut long = vec![1, a0];
        long.extend_from_slice(tail);
        let perm = Permutation::from_cycles(n, &[long.clone()])?;
        let marked = Cycle::canonical(long);
        Ok((MarkedPermutation { perm, marked }, PhiStep::Merge { a0 }))
    }
}

/// True iff `π = (1)(C)` with `C` an `(n-1)`-cycle on `{2, …, n}`.
pub fn is_phi_fixed(mp: &MarkedPermutation) -> bool {
    let n = mp.n();
    n >= 2 && mp.perm.apply(1) == 1 && mp.marked.len() == n - 1 && !mp.marked.contains(1)
}

/// All of `T(n)`: permutations in lexicographic order, each followed by its
/// cycles in canonical order as the marked cycle.
pub fn enumerate_marked(n: usize) -> Result<impl Iterator<Item = MarkedPermutation>> {
    enumerate_marked_capped(n, Caps::default().marked)
}

pub fn enumerate_marked_capped(
    n: usize,
    cap: usize,
) -> Result<impl Iterator<Item = MarkedPermutation>> {
    let perms = enumerate_permutations_capped(n, cap)?;
    Ok(perms.flat_map(|perm| {
        let cycles = perm.cycle_decomposition();
        cycles
            .cycles()
            .to_vec()
            .into_iter()
            .map(move |marked| MarkedPermutation {
                perm: perm.clone(),
                marked,
            })
    }))
}

/// `Σ_{(π,C) ∈ T(n)} sgn(π)` by enumeration.
pub fn signed_cycle_sum(n: usize) -> Result<i64> {
    if n < 2 {
        return Err(Error::SizeTooSmall { n, min: 2 });
    }
    Ok(enumerate_marked(n)?.map(|mp| mp.sign()).sum())
}
