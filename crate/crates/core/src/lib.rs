//! Prefix tables of indeterminate strings and their reverse engineering.
//!
//! Given a feasible array, [`reveng::infer`] builds the prefix graph and
//! returns a lexicographically least indeterminate string whose prefix table
//! is that array. The [`oracle`] module holds brute-force references for small
//! instances, and [`bench`] the random-instance timing harness.

pub mod bench;
mod dsu;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod par;
pub mod prefix_table;
pub mod reveng;
pub mod string;

pub use error::{Error, Result};
pub use graph::{build_prefix_graph, is_regular, PrefixGraph};
pub use prefix_table::{
    compute_prefix_table, validate_feasible, verify_prefix_table, FeasibleArray,
};
pub use reveng::{infer, infer_traced};
pub use string::{
    compare_letters, compare_strings, letters_match, IndeterminateString, Letter, Symbol,
};
