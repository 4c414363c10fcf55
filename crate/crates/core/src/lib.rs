pub mod colimit;
pub mod delta;
pub mod error;
pub mod sset;
pub mod builders;
pub mod desing;
pub mod iso;
pub mod subdiv;
pub mod expr;
pub mod report;
pub mod text;
