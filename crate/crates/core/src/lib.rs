//! Power graphs of finite groups and their edge colorings.
//!
//! The power graph joins two group elements when one is a power of the
//! other. Its chromatic index is `Δ` except for cyclic groups of odd
//! prime-power order, where the graph is complete and overfull. This crate
//! builds the graphs, classifies them, and produces verified colorings as
//! witnesses.

pub mod catalog;
pub mod coloring;
pub mod groups;
pub mod oracle;
pub mod overfull;
pub mod par;
pub mod powergraph;
pub mod survey;
