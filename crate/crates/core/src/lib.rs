//! Exact-arithmetic simulation and analysis of Schmidt (α, β)-games on the
//! real line.
//!
//! * [`numerics`]: rationals, rigorous logarithm enclosures, turn scheduling.
//! * [`game`]: intervals, parameters, transcripts and the game engine.
//! * [`strategies`]: explicit strategies and strategy transformations.
//! * [`analysis`]: finite-horizon certificates over transcripts.
//! * [`diagram`]: parameter-square classification and rendering.

pub mod analysis;
pub mod diagram;
pub mod game;
pub mod numerics;
pub mod strategies;
