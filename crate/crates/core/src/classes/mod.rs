//! Graph classes: the pattern catalog, cocomparability recognition with its
//! brute-force oracles, and generators that attach provenance witnesses.

mod catalog;
mod generate;
mod recognize;

pub use catalog::{named, Pattern};
pub use generate::{
    gen_interval, gen_poset_cocomp, gen_rejection, interval_graph, interval_order, random_poset,
    ClassSample, Interval, PosetSpec, Provenance,
};
pub use recognize::{
    classify, cocomp_oracle, cocomp_oracle_by_orderings, cocomp_oracle_by_orientation,
    is_cocomparability, is_interval, pattern_free, ClassTag, Recognition, ORDERING_ORACLE_MAX_N,
    ORIENTATION_ORACLE_MAX_EDGES,
};
