//! Labeled configurations `(π, C, f)` and the involution ψ on them.
//!
//! `f` labels every cycle other than the marked cycle `C` with a value in
//! `[k]`. ψ pairs configurations of opposite sign; its fixed points are those
//! where `1, …, k` are fixed points with distinct labels and `C` is a cycle on
//! `{k+1, …, n}`.
//!
//! # Text format
//!
//! ```text
//! config  := cycles ws? "|" ws? "C=" cycle ws? "|" ws? "f:" (ws? entry (ws? "," ws? entry)*)? ws?
//! entry   := number ws? "->" ws? number
//! cycles  := cycle-notation covering every element of [n], fixed points included
//! ```
//!
//! `n` is the number of elements listed in `cycles`; `k` is supplied
//! separately. Entry keys are cycle minima and may come in any order. The
//! printed form lists keys in increasing order separated by `", "`, e.g.
//! `(1)(2,3,5,10,8)(4)(6)(7)(9)(11) | C=(2,3,5,10,8) | f: 1->2, 4->6, 6->4, 7->7, 9->8, 11->1`.

mod digraph;

use std::collections::BTreeMap;
use std::fmt;

pub use digraph::{
    build_digraph, is_free, is_unbalanced, maximal_free_chain, rebalance, select_pivot,
    select_pivot_with, toggle_at_pivot, FreeChain, FunctionalDigraph, ParityRule, Surgery,
};

use crate::enumerate::{enumerate_permutations_capped, Caps};
use crate::error::{Error, Result};
use crate::perm::{left_multiply_transposition, parse_cycle_notation_auto, Cycle, Permutation};
use crate::phi::parse_marked_field;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledConfiguration {
    perm: Permutation,
    marked: Cycle,
    k: usize,
    labels: BTreeMap<usize, usize>,
}

impl LabeledConfiguration {
    pub fn new(
        perm: Permutation,
        marked: Cycle,
        k: usize,
        labels: BTreeMap<usize, usize>,
    ) -> Result<Self> {
        let n = perm.n();
        if k == 0 || k >= n {
            return Err(Error::ParameterOutOfRange {
                name: "k",
                value: k,
                range: format!("[1, {}]", n.saturating_sub(1)),
            });
        }
        if !perm.has_cycle(&marked) {
            return Err(Error::NotACycle(marked.to_string()));
        }
        let cycles = perm.cycle_decomposition();
        let mut expected = 0;
        for c in cycles.iter().filter(|c| **c != marked) {
            expected += 1;
            match labels.get(&c.smallest()) {
                None => {
                    return Err(Error::InvalidLabels(format!("cycle {c} has no label")));
                }
                Some(&v) if v == 0 || v > k => {
                    return Err(Error::InvalidLabels(format!(
                        "label {v} of cycle {c} is outside [1, {k}]"
                    )));
                }
                Some(_) => {}
            }
        }
        if labels.len() != expected {
            let stray = labels
                .keys()
                .find(|&&m| marked.contains(m) || m == 0 || m > n || perm.cycle_of(m).smallest() != m)
                .copied()
                .unwrap_or(0);
            return Err(Error::InvalidLabels(format!(
                "key {stray} is not the minimum of an unmarked cycle"
            )));
        }
        Ok(LabeledConfiguration {
            perm,
            marked,
            k,
            labels,
        })
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn marked(&self) -> &Cycle {
        &self.marked
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.perm.n()
    }

    pub fn sign(&self) -> i64 {
        self.perm.sign()
    }

    /// `(cycle minimum, label)` pairs in increasing key order.
    pub fn labels(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.labels.iter().map(|(&m, &v)| (m, v))
    }

    /// Label of the cycle through `x`, or `None` for the marked cycle.
    pub fn label_of(&self, x: usize) -> Option<usize> {
        if self.marked.contains(x) {
            return None;
        }
        self.labels.get(&self.perm.cycle_of(x).smallest()).copied()
    }

    pub fn parse(text: &str, k: usize) -> Result<Self> {
        let mut fields = text.splitn(3, '|');
        let perm_text = fields.next().unwrap_or_default();
        let marked_text = fields.next().ok_or_else(|| Error::Malformed {
            offset: text.len(),
            message: "expected '| C=<cycle>'".into(),
        })?;
        let labels_text = fields.next().ok_or_else(|| Error::Malformed {
            offset: text.len(),
            message: "expected '| f: ...'".into(),
        })?;
        let perm = parse_cycle_notation_auto(perm_text)?;
        let marked = parse_marked_field(marked_text, perm_text.len() + 1)?;
        let labels_offset = perm_text.len() + marked_text.len() + 2;
        let labels = parse_labels(labels_text, labels_offset)?;
        LabeledConfiguration::new(perm, marked, k, labels)
    }
}

fn parse_labels(field: &str, offset: usize) -> Result<BTreeMap<usize, usize>> {
    let lead = field.len() - field.trim_start().len();
    let body = field.trim().strip_prefix("f:").ok_or_else(|| Error::Malformed {
        offset: offset + lead,
        message: "expected 'f:'".into(),
    })?;
    let mut labels = BTreeMap::new();
    if body.trim().is_empty() {
        return Ok(labels);
    }
    let number = |s: &str| {
        s.trim().parse::<usize>().map_err(|_| Error::Malformed {
            offset: offset + lead,
            message: format!("expected a number, found '{}'", s.trim()),
        })
    };
    for entry in body.split(',') {
        let (key, value) = entry.split_once("->").ok_or_else(|| Error::Malformed {
            offset: offset + lead,
            message: format!("expected 'm->v', found '{}'", entry.trim()),
        })?;
        let key = number(key)?;
        if labels.insert(key, number(value)?).is_some() {
            return Err(Error::InvalidLabels(format!("key {key} is given twice")));
        }
    }
    Ok(labels)
}

impl fmt::Display for LabeledConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | C={} | f:", self.perm, self.marked)?;
        for (pos, (m, v)) in self.labels().enumerate() {
            let sep = if pos == 0 { " " } else { ", " };
            write!(f, "{sep}{m}->{v}")?;
        }
        Ok(())
    }
}

/// Smallest `i < j`, both outside `C`, whose cycles carry the same label.
pub fn find_case1_pair(cfg: &LabeledConfiguration) -> Option<(usize, usize)> {
    let n = cfg.n();
    let minima = cfg.perm.cycle_decomposition().cycle_minima();
    let label = |x: usize| cfg.labels.get(&minima[x - 1]).copied();
    for i in 1..=n {
        let Some(li) = label(i) else { continue };
        for j in i + 1..=n {
            if label(j) == Some(li) {
                return Some((i, j));
            }
        }
    }
    None
}

/// `(τ_ij π, C, f′)`: cycles avoiding `i` and `j` keep their labels, the one
/// or two cycles through them get the old label of `i`'s cycle.
pub fn apply_case1(cfg: &LabeledConfiguration, i: usize, j: usize) -> Result<LabeledConfiguration> {
    let (Some(li), Some(lj)) = (cfg.label_of(i), cfg.label_of(j)) else {
        return Err(Error::Precondition(format!(
            "({i}, {j}) must both lie outside the marked cycle"
        )));
    };
    if li != lj {
        return Err(Error::Precondition(format!(
            "cycles through {i} and {j} have labels {li} and {lj}"
        )));
    }
    let perm = left_multiply_transposition(i, j, &cfg.perm)?;
    let old_i = cfg.perm.cycle_of(i).smallest();
    let old_j = cfg.perm.cycle_of(j).smallest();
    let mut labels = cfg.labels.clone();
    labels.remove(&old_i);
    labels.remove(&old_j);
    labels.insert(perm.cycle_of(i).smallest(), li);
    labels.insert(perm.cycle_of(j).smallest(), li);
    Ok(LabeledConfiguration {
        perm,
        marked: cfg.marked.clone(),
        k: cfg.k,
        labels,
    })
}

/// Which ψ to run.
///
/// [`PsiRule::BALANCED`] is the involution. [`PsiRule::LITERAL`] performs
/// only the pivot surgery; it has the right signed sum and fixed points but
/// fails to be an involution on a small set of configurations (the first one
/// appears at `n = 4, k = 3`). [`PsiRule::INVERTED_PARITY`] is a deliberately
/// broken variant used to check that verification notices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PsiRule {
    pub parity: ParityRule,
    pub rebalance: bool,
}

impl PsiRule {
    pub const BALANCED: PsiRule = PsiRule {
        parity: ParityRule::Standard,
        rebalance: true,
    };
    pub const LITERAL: PsiRule = PsiRule {
        parity: ParityRule::Standard,
        rebalance: false,
    };
    pub const INVERTED_PARITY: PsiRule = PsiRule {
        parity: ParityRule::Inverted,
        rebalance: true,
    };
}

impl Default for PsiRule {
    fn default() -> Self {
        PsiRule::BALANCED
    }
}

/// What ψ did to its input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PsiStep {
    Case1 { i: usize, j: usize },
    /// `C` avoids `[k]`.
    Fixed,
    /// Edge surgery at the pivot.
    Surgery { chain: FreeChain, surgery: Surgery },
    /// The chain has odd length but the surgery at `m₁` would not be undone by
    /// ψ of its result; `moved` crossed the cycle boundary instead.
    Rebalanced { chain: FreeChain, moved: usize, joined: bool },
}

impl PsiStep {
    pub fn chain(&self) -> Option<&FreeChain> {
        match self {
            PsiStep::Surgery { chain, .. } | PsiStep::Rebalanced { chain, .. } => Some(chain),
            _ => None,
        }
    }

    pub fn pivot(&self) -> Option<usize> {
        match self {
            PsiStep::Surgery { surgery, .. } => Some(surgery.pivot),
            _ => None,
        }
    }
}

impl fmt::Display for PsiStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PsiStep::Case1 { i, j } => write!(f, "case 1: multiply by ({i},{j})"),
            PsiStep::Fixed => write!(f, "fixed point"),
            PsiStep::Surgery { chain, surgery } => {
                let freeness = if surgery.pivot_free { "free" } else { "not free" };
                write!(
                    f,
                    "case 2: chain {chain}, pivot {} ({freeness}), u={}, v={}",
                    surgery.pivot, surgery.u, surgery.v
                )
            }
            PsiStep::Rebalanced {
                chain,
                moved,
                joined,
            } => {
                let dir = if *joined { "joins" } else { "leaves" };
                write!(f, "case 2: chain {chain}, rebalanced: {moved} {dir} C")
            }
        }
    }
}

/// Sub-Case 2-b: surgery at the pivot, or the rebalancing move when the
/// surgery would not be undone.
pub fn apply_case2(cfg: &LabeledConfiguration) -> Result<LabeledConfiguration> {
    apply_case2_with(cfg, PsiRule::default()).map(|(out, _)| out)
}

fn apply_case2_with(
    cfg: &LabeledConfiguration,
    rule: PsiRule,
) -> Result<(LabeledConfiguration, PsiStep)> {
    let d = build_digraph(cfg)?;
    let chain = maximal_free_chain(&d)?;
    let pivot = select_pivot_with(&chain, rule.parity);
    if rule.rebalance
        && chain.len() % 2 == 1
        && pivot == chain.first()
        && is_unbalanced(&d, &chain)?
    {
        let (next, moved) = rebalance(&d)?;
        let joined = next.is_designated(moved);
        let step = PsiStep::Rebalanced {
            chain,
            moved,
            joined,
        };
        return Ok((next.to_configuration()?, step));
    }
    let (next, surgery) = toggle_at_pivot(&d, pivot)?;
    Ok((next.to_configuration()?, PsiStep::Surgery { chain, surgery }))
}

pub fn psi(cfg: &LabeledConfiguration) -> Result<LabeledConfiguration> {
    psi_with(cfg, PsiRule::default()).map(|(out, _)| out)
}

pub fn psi_with(
    cfg: &LabeledConfiguration,
    rule: PsiRule,
) -> Result<(LabeledConfiguration, PsiStep)> {
    if let Some((i, j)) = find_case1_pair(cfg) {
        return Ok((apply_case1(cfg, i, j)?, PsiStep::Case1 { i, j }));
    }
    if cfg.marked.elements().iter().all(|&x| x > cfg.k) {
        return Ok((cfg.clone(), PsiStep::Fixed));
    }
    apply_case2_with(cfg, rule)
}

/// Membership in `Fix(n, k)`.
pub fn is_fix(cfg: &LabeledConfiguration) -> bool {
    let k = cfg.k;
    let n = cfg.n();
    let mut seen = vec![false; k + 1];
    (1..=k).all(|i| cfg.perm.apply(i) == i)
        && cfg.marked.len() == n - k
        && cfg.marked.smallest() > k
        && cfg
            .labels
            .values()
            .all(|&v| !std::mem::replace(&mut seen[v], true))
}

/// All of `P(n, k)`: permutations in lexicographic order, then the marked
/// cycle in canonical order, then labelings as a mixed-radix counter over the
/// remaining cycles (first cycle most significant, labels increasing).
pub fn enumerate_configurations(
    n: usize,
    k: usize,
) -> Result<impl Iterator<Item = LabeledConfiguration>> {
    enumerate_configurations_capped(n, k, Caps::default().labeled)
}

pub fn enumerate_configurations_capped(
    n: usize,
    k: usize,
    cap: usize,
) -> Result<impl Iterator<Item = LabeledConfiguration>> {
    if n < 2 {
        return Err(Error::SizeTooSmall { n, min: 2 });
    }
    if k == 0 || k >= n {
        return Err(Error::ParameterOutOfRange {
            name: "k",
            value: k,
            range: format!("[1, {}]", n - 1),
        });
    }
    let perms = enumerate_permutations_capped(n, cap)?;
    Ok(perms.flat_map(move |perm| {
        let cycles = perm.cycle_decomposition().cycles().to_vec();
        (0..cycles.len()).flat_map(move |mi| {
            let marked = cycles[mi].clone();
            let keys: Vec<usize> = cycles
                .iter()
                .enumerate()
                .filter(|&(ci, _)| ci != mi)
                .map(|(_, c)| c.smallest())
                .collect();
            let perm = perm.clone();
            Labelings::new(keys.len(), k).map(move |digits| LabeledConfiguration {
                perm: perm.clone(),
                marked: marked.clone(),
                k,
                labels: keys.iter().copied().zip(digits).collect(),
            })
        })
    }))
}

/// Mixed-radix counter over `[k]^len`, last position varying fastest.
struct Labelings {
    k: usize,
    next: Option<Vec<usize>>,
}

impl Labelings {
    fn new(len: usize, k: usize) -> Self {
        Labelings {
            k,
            next: Some(vec![1; len]),
        }
    }
}

impl Iterator for Labelings {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for pos in (0..succ.len()).rev() {
            if succ[pos] < self.k {
                succ[pos] += 1;
                self.next = Some(succ);
                break;
            }
            succ[pos] = 1;
        }
        Some(current)
    }
}

/// `Σ_{(π,C,f) ∈ P(n,k)} sgn(π)` by enumeration.
pub fn signed_sum(n: usize, k: usize) -> Result<i64> {
    Ok(enumerate_configurations(n, k)?.map(|c| c.sign()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG1: &str = "(1)(2,3,5,10,8)(4)(6)(7)(9)(11) | C=(2,3,5,10,8) | f: 1->2, 4->6, 6->4, 7->7, 9->8, 11->1";
    const FIG2: &str = "(1,2,3,5,10,8)(4)(6)(7)(9)(11) | C=(1,2,3,5,10,8) | f: 4->6, 6->4, 7->7, 9->8, 11->1";

    fn cfg(text: &str, k: usize) -> LabeledConfiguration {
        LabeledConfiguration::parse(text, k).unwrap()
    }

    #[test]
    fn text_round_trip() {
        let c = cfg(FIG1, 8);
        assert_eq!(c.to_string(), FIG1);
        assert_eq!(c.n(), 11);
        let sloppy = cfg("(8,2,3,5,10)(11)(9)(7)(6)(4)(1)|C=(3,5,10,8,2)|f:11->1,9->8,7->7,6->4,4->6,1->2", 8);
        assert_eq!(sloppy, c);
        assert_eq!(cfg("(1,2,3) | C=(1,2,3) | f:", 1).to_string(), "(1,2,3) | C=(1,2,3) | f:");
    }

    #[test]
    fn rejects_bad_labels() {
        assert!(LabeledConfiguration::parse("(1,2)(3) | C=(1,2) | f:", 1).is_err());
        assert!(LabeledConfiguration::parse("(1,2)(3) | C=(1,2) | f: 3->2", 1).is_err());
        assert!(LabeledConfiguration::parse("(1,2)(3) | C=(1,2) | f: 3->1, 1->1", 1).is_err());
        assert!(LabeledConfiguration::parse("(1,2)(3) | C=(1,2) | f: 3->1, 3->1", 1).is_err());
        assert!(LabeledConfiguration::parse("(1,2)(3) | C=(1,2) | f: 3->1", 3).is_err());
        assert!(LabeledConfiguration::parse("(1,2)(3) | C=(1,2)", 1).is_err());
        assert!(LabeledConfiguration::parse("(1,2)(3) | C=(1,2) | 3->1", 1).is_err());
    }

    #[test]
    fn case_one_pairs() {
        assert_eq!(find_case1_pair(&cfg(FIG1, 8)), None);
        let a = cfg("(1,2)(3)(4) | C=(1,2) | f: 3->1, 4->1", 1);
        assert_eq!(find_case1_pair(&a), Some((3, 4)));
        let merged = apply_case1(&a, 3, 4).unwrap();
        assert_eq!(merged, cfg("(1,2)(3,4) | C=(1,2) | f: 3->1", 1));
        assert_eq!(psi(&merged).unwrap(), a);

        let b = cfg("(1,2)(3,4)(5) | C=(1,2) | f: 3->2, 5->2", 2);
        assert_eq!(find_case1_pair(&b), Some((3, 4)));
        assert_eq!(
            apply_case1(&b, 3, 4).unwrap(),
            cfg("(1,2)(3)(4)(5) | C=(1,2) | f: 3->2, 4->2, 5->2", 2)
        );
        assert!(apply_case1(&b, 1, 3).is_err());
        assert!(apply_case1(&cfg(FIG1, 8), 1, 4).is_err());
    }

    #[test]
    fn figure_digraph() {
        let d = build_digraph(&cfg(FIG1, 8)).unwrap();
        let edges: Vec<_> = d.edges().collect();
        assert_eq!(
            edges,
            [(1, 2), (2, 3), (3, 5), (4, 6), (5, 10), (6, 4), (7, 7), (8, 2), (9, 8), (10, 8), (11, 1)]
        );
        assert!(is_free(&d, 3).unwrap());
        assert!(is_free(&d, 5).unwrap());
        assert!(!is_free(&d, 2).unwrap());
        assert!(!is_free(&d, 10).unwrap());
        assert!(is_free(&d, 1).is_err());
        assert_eq!(maximal_free_chain(&d).unwrap().elements(), [2, 3, 5]);
        assert!(build_digraph(&cfg("(1,2)(3)(4) | C=(1,2) | f: 3->1, 4->1", 1)).is_err());
    }

    #[test]
    fn figures_swap() {
        let (out, step) = psi_with(&cfg(FIG1, 8), PsiRule::BALANCED).unwrap();
        assert_eq!(out, cfg(FIG2, 8));
        assert_eq!(step.chain().unwrap().elements(), [2, 3, 5]);
        assert_eq!(step.pivot(), Some(2));
        let (back, step) = psi_with(&out, PsiRule::BALANCED).unwrap();
        assert_eq!(back, cfg(FIG1, 8));
        assert_eq!(step.chain().unwrap().elements(), [1, 2, 3, 5]);
        assert_eq!(step.pivot(), Some(2));
    }

    #[test]
    fn small_surgery() {
        let c = cfg("(1,2,3) | C=(1,2,3) | f:", 1);
        let (out, step) = psi_with(&c, PsiRule::BALANCED).unwrap();
        assert_eq!(out, cfg("(1,2)(3) | C=(1,2) | f: 3->1", 1));
        let PsiStep::Surgery { surgery, .. } = step else {
            panic!("expected a surgery, got {step}");
        };
        assert_eq!((surgery.pivot, surgery.u, surgery.v), (1, 3, 2));
        assert!(surgery.pivot_free);
        assert_eq!(psi(&out).unwrap(), c);
    }

    #[test]
    fn literal_rule_breaks_at_four_three() {
        let c = cfg("(1,3,2)(4) | C=(1,3,2) | f: 4->2", 3);
        let (once, _) = psi_with(&c, PsiRule::LITERAL).unwrap();
        assert_eq!(once, cfg("(1,3)(2)(4) | C=(1,3) | f: 2->1, 4->2", 3));
        let (twice, _) = psi_with(&once, PsiRule::LITERAL).unwrap();
        assert_ne!(twice, c);

        let (once, step) = psi_with(&c, PsiRule::BALANCED).unwrap();
        assert!(matches!(step, PsiStep::Rebalanced { moved: 4, .. }), "{step}");
        assert_eq!(psi(&once).unwrap(), c);
    }

    #[test]
    fn fixed_points() {
        let f = cfg("(1)(2,3) | C=(2,3) | f: 1->1", 1);
        assert!(is_fix(&f));
        assert_eq!(psi(&f).unwrap(), f);
        assert!(!is_fix(&cfg(FIG1, 8)));
        let big = cfg(
            "(1)(2)(3)(4)(5)(6)(7)(8)(9,11,10) | C=(9,11,10) | f: 1->3, 2->1, 3->2, 4->8, 5->7, 6->6, 7->5, 8->4",
            8,
        );
        assert!(is_fix(&big));
        assert!(!is_fix(&cfg("(1)(2)(3,4) | C=(3,4) | f: 1->1, 2->1", 2)));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_configurations(2, 1).unwrap().count(), 3);
        assert_eq!(enumerate_configurations(3, 1).unwrap().count(), 11);
        assert_eq!(enumerate_configurations(3, 2).unwrap().count(), 26);
        assert_eq!(signed_sum(2, 1).unwrap(), 1);
        assert_eq!(signed_sum(3, 2).unwrap(), 2);
        assert!(enumerate_configurations(3, 3).is_err());
        assert!(enumerate_configurations(8, 1).is_err());
        let first: Vec<String> = enumerate_configurations(3, 2)
            .unwrap()
            .take(3)
            .map(|c| c.to_string())
            .collect();
        assert_eq!(
            first,
            [
                "(1)(2)(3) | C=(1) | f: 2->1, 3->1",
                "(1)(2)(3) | C=(1) | f: 2->1, 3->2",
                "(1)(2)(3) | C=(1) | f: 2->2, 3->1",
            ]
        );
    }

    #[test]
    fn dot_export() {
        let dot = build_digraph(&cfg(FIG1, 8)).unwrap().to_dot();
        assert_eq!(dot.matches("->").count(), 11);
        assert_eq!(dot.matches("color=red").count(), 5);
        assert!(dot.contains("  9 -> 8;\n"));
        assert!(dot.contains("  10 -> 8 [color=red, penwidth=2];\n"));
    }
}
