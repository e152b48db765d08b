//! Strong set-colorings of finite simple graphs.
//!
//! A strong set-coloring of `G` labels every vertex and edge with a distinct
//! nonempty subset of an `n`-element color set, using every subset exactly
//! once, so that each edge carries the symmetric difference of its ends.
//! Such a coloring exists exactly when the triples `{u, v, uv}` of `G` embed
//! as a packing into the Steiner triple system S(2,3,2ⁿ−1), realized here as
//! the lines of PG(n−1,2).
//!
//! - [`gf2`]: vectors of F₂ⁿ and the vector/subset bijection.
//! - [`graph`]: graphs, associated hypergraphs, text format, canonical forms.
//! - [`steiner`]: the projective triple system and packing embeddings.
//! - [`coloring`]: certificates, the verifier, and construction from a packing.
//! - [`search`]: the backtracking decision procedure and enumeration.
//! - [`cli`]: the `ssc` command-line front end.

pub mod cli;
pub mod coloring;
pub mod error;
pub mod gf2;
pub mod graph;
pub mod search;
pub mod steiner;
mod text;

pub use coloring::{
    color_from_packing, make_star_realization, verify_coloring, Coloring, Element, Lambda, PackingFailure,
    PackingRealization, Rejection, Verdict,
};
pub use error::{Error, Result};
pub use gf2::{ColorVector, Dimension};
pub use graph::{Graph, Hypergraph};
pub use search::{enumerate_colorable, exhaustive_oracle, solve, Outcome, SearchConfig, SolveReport};
pub use steiner::{check_packing_embedding, find_packing_embedding, third_point, PackingEmbedding, TripleSystem};
