//! Permutations of `[n] = {1, …, n}` and their cycle structure.
//!
//! Elements are 1-based everywhere in the public interface. Cycles are kept in
//! canonical form: each cycle starts at its minimum and a decomposition lists
//! its cycles by increasing minimum.

use std::fmt;

use crate::error::{Error, Result};

/// A bijection of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // image[x - 1] = π(x)
    image: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its one-line notation `[π(1), …, π(n)]`.
    pub fn from_images(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        if n == 0 {
            return Err(Error::SizeTooSmall { n, min: 1 });
        }
        let mut seen = vec![false; n];
        for &y in &image {
            if y == 0 || y > n {
                return Err(Error::ElementOutOfRange { element: y, n });
            }
            if std::mem::replace(&mut seen[y - 1], true) {
                return Err(Error::DuplicateElement { element: y });
            }
        }
        Ok(Permutation { image })
    }

    pub(crate) fn from_images_unchecked(image: Vec<usize>) -> Self {
        debug_assert!(Permutation::from_images(image.clone()).is_ok());
        Permutation { image }
    }

    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::SizeTooSmall { n, min: 1 });
        }
        Ok(Permutation {
            image: (1..=n).collect(),
        })
    }

    /// Builds a permutation from cycles, each read as `x ↦ next(x)`.
    /// Every element of `[n]` has to appear exactly once.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if n == 0 {
            return Err(Error::SizeTooSmall { n, min: 1 });
        }
        let mut image = vec![0usize; n];
        for cycle in cycles {
            for (pos, &x) in cycle.iter().enumerate() {
                if x == 0 || x > n {
                    return Err(Error::ElementOutOfRange { element: x, n });
                }
                if image[x - 1] != 0 {
                    return Err(Error::DuplicateElement { element: x });
                }
                image[x - 1] = cycle[(pos + 1) % cycle.len()];
            }
        }
        if let Some(missing) = image.iter().position(|&y| y == 0) {
            return Err(Error::MissingElement {
                element: missing + 1,
            });
        }
        Ok(Permutation { image })
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    /// π(x). Panics if `x` is not in `[n]`.
    pub fn apply(&self, x: usize) -> usize {
        self.image[x - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (x, &y) in self.image.iter().enumerate() {
            inv[y - 1] = x + 1;
        }
        Permutation { image: inv }
    }

    pub fn cycle_decomposition(&self) -> CycleDecomposition {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 1..=n {
            if seen[start - 1] {
                continue;
            }
            let mut elements = Vec::new();
            let mut x = start;
            while !seen[x - 1] {
                seen[x - 1] = true;
                elements.push(x);
                x = self.apply(x);
            }
            // `start` is the smallest unvisited element, so this is already canonical.
            cycles.push(Cycle { elements });
        }
        CycleDecomposition { cycles }
    }

    /// Number of cycles, fixed points included.
    pub fn cycle_count(&self) -> usize {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.image[x] - 1;
            }
        }
        count
    }

    /// `(-1)^(n - cyc(π))`.
    pub fn sign(&self) -> i64 {
        if (self.n() - self.cycle_count()) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// The cycle of π through `x`, in canonical rotation.
    pub fn cycle_of(&self, x: usize) -> Cycle {
        let mut elements = vec![x];
        let mut y = self.apply(x);
        while y != x {
            elements.push(y);
            y = self.apply(y);
        }
        Cycle::canonical(elements)
    }

    /// Whether `cycle` is one of the cycles of this permutation.
    pub fn has_cycle(&self, cycle: &Cycle) -> bool {
        let elems = cycle.elements();
        elems.iter().all(|&x| x >= 1 && x <= self.n())
            && elems
                .iter()
                .enumerate()
                .all(|(pos, &x)| self.apply(x) == elems[(pos + 1) % elems.len()])
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.cycle_decomposition().fmt(f)
    }
}

/// `τ_ij ∘ π`, i.e. `x ↦ τ_ij(π(x))`.
pub fn left_multiply_transposition(i: usize, j: usize, p: &Permutation) -> Result<Permutation> {
    let n = p.n();
    for x in [i, j] {
        if x == 0 || x > n {
            return Err(Error::ElementOutOfRange { element: x, n });
        }
    }
    if i == j {
        return Err(Error::DegenerateTransposition { i, j });
    }
    let image = p
        .image
        .iter()
        .map(|&y| {
            if y == i {
                j
            } else if y == j {
                i
            } else {
                y
            }
        })
        .collect();
    Ok(Permutation { image })
}

/// A single cycle, rotated so that its minimum comes first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    elements: Vec<usize>,
}

impl Cycle {
    /// Validates distinctness and rotates to canonical form.
    pub fn new(elements: Vec<usize>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::Malformed {
                offset: 0,
                message: "empty cycle".into(),
            });
        }
        let mut sorted = elements.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateElement { element: w[0] });
        }
        if sorted[0] == 0 {
            return Err(Error::ElementOutOfRange {
                element: 0,
                n: *sorted.last().unwrap(),
            });
        }
        Ok(Cycle::canonical(elements))
    }

    pub(crate) fn canonical(mut elements: Vec<usize>) -> Self {
        let (pos, _) = elements
            .iter()
            .enumerate()
            .min_by_key(|&(_, x)| *x)
            .expect("cycle is non-empty");
        elements.rotate_left(pos);
        Cycle { elements }
    }

    /// Parses a single `(a,b,…)` group.
    pub fn parse(text: &str) -> Result<Self> {
        let groups = parse_groups(text)?;
        match groups.as_slice() {
            [single] => Cycle::new(single.clone()),
            _ => Err(Error::Malformed {
                offset: 0,
                message: format!("expected exactly one cycle, found {}", groups.len()),
            }),
        }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn smallest(&self) -> usize {
        self.elements[0]
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.contains(&x)
    }

    /// The successor of `x` along the cycle, if `x` lies on it.
    pub fn next(&self, x: usize) -> Option<usize> {
        let pos = self.elements.iter().position(|&y| y == x)?;
        Some(self.elements[(pos + 1) % self.elements.len()])
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (pos, x) in self.elements.iter().enumerate() {
            if pos > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// All cycles of a permutation, sorted by minimum.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleDecomposition {
    cycles: Vec<Cycle>,
}

impl CycleDecomposition {
    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Cycle> {
        self.cycles.iter()
    }

    pub fn containing(&self, x: usize) -> Option<&Cycle> {
        self.cycles.iter().find(|c| c.contains(x))
    }

    /// For each element, the minimum of its cycle (index `x - 1`).
    pub fn cycle_minima(&self) -> Vec<usize> {
        let n = self.cycles.iter().map(Cycle::len).sum();
        let mut minima = vec![0; n];
        for c in &self.cycles {
            for &x in c.elements() {
                minima[x - 1] = c.smallest();
            }
        }
        minima
    }
}

impl<'a> IntoIterator for &'a CycleDecomposition {
    type Item = &'a Cycle;
    type IntoIter = std::slice::Iter<'a, Cycle>;

    fn into_iter(self) -> Self::IntoIter {
        self.cycles.iter()
    }
}

impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cycles {
            c.fmt(f)?;
        }
        Ok(())
    }
}

/// Parses cycle notation such as `(2,3,5,10,8)(1)(4)(6)(7)(9)(11)`.
///
/// Groups may come in any order and any rotation; whitespace between tokens is
/// ignored. Every element of `[n]` must occur exactly once.
pub fn parse_cycle_notation(text: &str, n: usize) -> Result<Permutation> {
    let groups = parse_groups(text)?;
    for g in &groups {
        for &x in g {
            if x == 0 || x > n {
                return Err(Error::ElementOutOfRange { element: x, n });
            }
        }
    }
    Permutation::from_cycles(n, &groups)
}

/// Like [`parse_cycle_notation`] but takes `n` to be the number of listed elements.
pub fn parse_cycle_notation_auto(text: &str) -> Result<Permutation> {
    let groups = parse_groups(text)?;
    let n = groups.iter().map(Vec::len).sum();
    parse_cycle_notation(text, n)
}

fn parse_groups(text: &str) -> Result<Vec<Vec<usize>>> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut groups = Vec::new();

    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let malformed = |offset: usize, message: &str| Error::Malformed {
        offset,
        message: message.to_string(),
    };

    skip_ws(&mut pos);
    while pos < bytes.len() {
        if bytes[pos] != b'(' {
            return Err(malformed(pos, "expected '('"));
        }
        pos += 1;
        let mut group = Vec::new();
        loop {
            skip_ws(&mut pos);
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if start == pos {
                return Err(malformed(pos, "expected an integer"));
            }
            let value: usize = text[start..pos]
                .parse()
                .map_err(|_| malformed(start, "integer too large"))?;
            group.push(value);
            skip_ws(&mut pos);
            match bytes.get(pos) {
                Some(b',') => pos += 1,
                Some(b')') => {
                    pos += 1;
                    break;
                }
                _ => return Err(malformed(pos, "expected ',' or ')'")),
            }
        }
        groups.push(group);
        skip_ws(&mut pos);
    }
    if groups.is_empty() {
        return Err(malformed(0, "no cycles"));
    }
    Ok(groups)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(text: &str, n: usize) -> Permutation {
        parse_cycle_notation(text, n).unwrap()
    }

    #[test]
    fn parses_figure_one_permutation() {
        let p = perm("(2,3,5,10,8)(1)(4)(6)(7)(9)(11)", 11);
        assert_eq!(p.apply(2), 3);
        assert_eq!(p.apply(3), 5);
        assert_eq!(p.apply(5), 10);
        assert_eq!(p.apply(10), 8);
        assert_eq!(p.apply(8), 2);
        for x in [1, 4, 6, 7, 9, 11] {
            assert_eq!(p.apply(x), x);
        }
        assert_eq!(p.to_string(), "(1)(2,3,5,10,8)(4)(6)(7)(9)(11)");
    }

    #[test]
    fn parses_identity_and_disjoint_transpositions() {
        assert_eq!(perm("(1)(2)(3)", 3), Permutation::identity(3).unwrap());
        assert_eq!(perm("(1,2)(3,4)", 4).images(), &[2, 1, 4, 3]);
        assert_eq!(perm("(3, 4) (2,1)", 4).images(), &[2, 1, 4, 3]);
    }

    #[test]
    fn rejects_bad_notation() {
        assert!(matches!(
            parse_cycle_notation("(1,2", 2),
            Err(Error::Malformed { .. })
        ));
        assert!(matches!(
            parse_cycle_notation("1,2", 2),
            Err(Error::Malformed { .. })
        ));
        assert!(matches!(
            parse_cycle_notation("()", 2),
            Err(Error::Malformed { .. })
        ));
        assert!(matches!(
            parse_cycle_notation("", 2),
            Err(Error::Malformed { .. })
        ));
        assert_eq!(
            parse_cycle_notation("(1,2)(2)", 2),
            Err(Error::DuplicateElement { element: 2 })
        );
        assert_eq!(
            parse_cycle_notation("(1,3)(2)", 2),
            Err(Error::ElementOutOfRange { element: 3, n: 2 })
        );
        assert_eq!(
            parse_cycle_notation("(1,2)", 3),
            Err(Error::MissingElement { element: 3 })
        );
    }

    #[test]
    fn decomposition_of_figure_two() {
        let p = perm("(1,2,3,5,10,8)(4)(6)(7)(9)(11)", 11);
        let d = p.cycle_decomposition();
        let shown: Vec<String> = d.iter().map(ToString::to_string).collect();
        assert_eq!(
            shown,
            ["(1,2,3,5,10,8)", "(4)", "(6)", "(7)", "(9)", "(11)"]
        );
        assert_eq!(p.cycle_count(), 6);
    }

    #[test]
    fn sign_values() {
        assert_eq!(Permutation::identity(5).unwrap().sign(), 1);
        assert_eq!(perm("(1)(2,4)(3)", 4).sign(), -1);
        // seven cycles on eleven points
        assert_eq!(perm("(2,3,5,10,8)(1)(4)(6)(7)(9)(11)", 11).sign(), 1);
    }

    #[test]
    fn transposition_products() {
        let id2 = Permutation::identity(2).unwrap();
        assert_eq!(left_multiply_transposition(1, 2, &id2).unwrap(), perm("(1,2)", 2));
        let p = perm("(1,2)(3,4)", 4);
        assert_eq!(
            left_multiply_transposition(3, 4, &p).unwrap(),
            perm("(1,2)(3)(4)", 4)
        );
        let q = perm("(1,2)(3)", 3);
        assert_eq!(left_multiply_transposition(1, 3, &q).unwrap(), perm("(1,2,3)", 3));
        assert_eq!(
            left_multiply_transposition(2, 2, &q),
            Err(Error::DegenerateTransposition { i: 2, j: 2 })
        );
    }

    #[test]
    fn cycle_canonical_rotation() {
        let c = Cycle::new(vec![5, 10, 8, 2, 3]).unwrap();
        assert_eq!(c.elements(), &[2, 3, 5, 10, 8]);
        assert_eq!(c.next(8), Some(2));
        assert_eq!(Cycle::parse("(8,2,3,5,10)").unwrap(), c);
        assert!(Cycle::parse("(1)(2)").is_err());
        assert_eq!(
            Cycle::new(vec![1, 2, 1]),
            Err(Error::DuplicateElement { element: 1 })
        );
    }

    #[test]
    fn has_cycle_checks_successors() {
        let p = perm("(1,2,3)(4)", 4);
        assert!(p.has_cycle(&Cycle::parse("(2,3,1)").unwrap()));
        assert!(!p.has_cycle(&Cycle::parse("(1,3,2)").unwrap()));
        assert!(p.has_cycle(&Cycle::parse("(4)").unwrap()));
        assert!(!p.has_cycle(&Cycle::parse("(5)").unwrap()));
    }
}
