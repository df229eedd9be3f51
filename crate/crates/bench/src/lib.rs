//! Inputs shared by the benchmarks.

use cycleparity_core::psi::enumerate_configurations;
use cycleparity_core::LabeledConfiguration;

pub const FIGURE_ONE: &str =
    "(1)(2,3,5,10,8)(4)(6)(7)(9)(11) | C=(2,3,5,10,8) | f: 1->2, 4->6, 6->4, 7->7, 9->8, 11->1";

pub fn figure_one() -> LabeledConfiguration {
    LabeledConfiguration::parse(FIGURE_ONE, 8).expect("figure one parses")
}

/// Every configuration of `P(n, k)`, collected.
pub fn labeled_domain(n: usize, k: usize) -> Vec<LabeledConfiguration> {
    enumerate_configurations(n, k).expect("within cap").collect()
}
