pub mod checkers;
pub mod freegroup;
pub mod group_algebra;
pub mod matrix;
pub mod quotient;
pub mod rings;
pub mod textio;
