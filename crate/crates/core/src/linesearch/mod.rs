//! Breakpoints of a query line and the pruned search for a point of
//! minimum weight loss on it.

mod index;
mod search;
mod select;
mod sequence;

pub use index::{build_angular_index, AngularIndex, Side};
pub use search::{
    local_optimum_on_line, search_line, search_sequences, Evaluated, LineLocalOptimum, LineObjective,
    LineSearch, LineSearchOutcome, OptimumStatus,
};
pub use select::{weighted_median, PruneStats};
pub use sequence::{breakpoint_sequences, upward, Breakpoint, BreakpointSequences, BreakpointSource, ImplicitSequence};

pub(crate) use search::evaluate;
pub(crate) use select::{parallel_binary_search, Cut};
pub(crate) use sequence::{partition, piece_mid, pieces};
