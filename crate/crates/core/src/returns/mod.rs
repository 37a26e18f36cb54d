//! Return words, derived substitutions, the coboundary graph and periodicity.

mod coboundary;
mod derive;

pub use coboundary::{coboundary_graph, coboundary_space, graph_preserved, CoboundaryGraph};
pub use derive::{
    derived_sequence, derived_substitution, is_periodic, return_substitution, return_words,
    return_words_on, ReturnSubstitution,
};
