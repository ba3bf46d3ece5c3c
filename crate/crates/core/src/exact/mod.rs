//! Exact recurrence tables: big-integer path counts and rational weighted
//! sums derived from them.

mod checks;
mod counts;
pub mod csv;
mod weights;

pub use checks::{
    check_compacted_suffix_monotone, check_ehat_between, check_passage_bound, check_sandwich,
    check_suffix_monotone, cutoff_losses, fixed_decimal, CutoffRow, ExactCheck,
};
pub use counts::{CountTable, StorageMode, DEFAULT_FULL_TRIANGLE_CAP};
pub use weights::{
    compacted_meander_weight, compacted_suffix_weight_table,
    compacted_suffix_weight_table_with_cap, ehat_table, meander_cut, meander_table,
    meander_table_with_cap, meander_weight, passage_proportion, passage_proportion_in,
    sandwich_bounds, sandwich_lower, sandwich_upper, suffix_weight_table,
    suffix_weight_table_with_cap, truncated_meander_table, RationalTable, WeightKind,
    DEFAULT_RATIONAL_CAP,
};
