//! Exhaustive enumeration of permutations in lexicographic order of their
//! one-line notation.

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Upper bounds on exhaustive domains. Everything is enumerated exactly, so
/// these are the only knobs that bound running time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest `n` for which all `n!` permutations may be enumerated.
    pub permutations: usize,
    /// Largest `n` for the marked-permutation domain.
    pub marked: usize,
    /// Largest `n` for the labeled-configuration domain.
    pub labeled: usize,
    /// Largest `n` for Stirling-table based checks.
    pub table: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            permutations: 10,
            marked: 8,
            labeled: 7,
            table: 20,
        }
    }
}

pub fn enumerate_permutations(n: usize) -> Result<Permutations> {
    enumerate_permutations_capped(n, Caps::default().permutations)
}

pub fn enumerate_permutations_capped(n: usize, cap: usize) -> Result<Permutations> {
    if n == 0 {
        return Err(Error::SizeTooSmall { n, min: 1 });
    }
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    Ok(Permutations {
        next: Some((1..=n).collect()),
    })
}

/// Iterator over all permutations of `[n]`, lexicographically by image sequence.
#[derive(Debug, Clone)]
pub struct Permutations {
    next: Option<Vec<usize>>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_lexicographic(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation::from_images_unchecked(current))
    }
}

fn next_lexicographic(a: &mut [usize]) -> bool {
    let Some(i) = a.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = a.iter().rposition(|&x| x > a[i]).expect("pivot has a larger suffix element");
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}
