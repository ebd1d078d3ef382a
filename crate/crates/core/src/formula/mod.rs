//! Closed-form diamond counts and the method dispatcher.

mod closed;
mod dispatch;
mod multiprime;
mod primary;

pub use closed::{
    dm_elementary, dm_rank2, dm_rank2_shortcut, dm_shortcut_prime_by_cyclic,
    dm_shortcut_square_2group,
};
pub use dispatch::{
    component_dm, dm, ComponentResult, DmConfig, DmResult, Method, MethodPreference,
};
pub use multiprime::dm_multiprime;
pub use primary::{
    dm_master_sum, primary_diamond_count, primary_diamond_count_of_type, ClosedFormCensus,
    SquareSectionCounts,
};
