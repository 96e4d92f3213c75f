//! Fiedler vectors of trees, the random-walk payoff game behind them, and
//! the tools for checking where their extremes sit.

pub mod admissibility;
pub mod enumeration;
pub mod error;
pub mod game;
pub mod generators;
pub mod graph;
pub mod graph6;
pub mod hitting;
pub mod json;
pub mod linalg;
pub mod spectral;
pub mod survey;

pub use error::{Error, Result};
pub use graph::{parse_edge_list, Graph};
pub use spectral::{fiedler_pair, EigenPair};
