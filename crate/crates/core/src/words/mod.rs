//! Cyclic loop and band words: equivalence moves, normal forms, and the
//! conversions between loop data and band data.

mod data;
mod normalize;
mod word;

pub use data::{
    band_to_loop, delta_row, dual_band, flip_loop, loop_to_band, positivity_row, reverse_raw,
    scalar_is, shift_band, shift_band_steps, BandDatum, LoopDatum, ShiftSteps,
};
pub use normalize::{
    applicable_moves, apply_move, bfs_to_normal, is_non_hyperbolic, normalize, Move, MoveTrace,
    BFS_NODE_BUDGET,
};
pub use word::{is_normal, NormalWord, Word};
