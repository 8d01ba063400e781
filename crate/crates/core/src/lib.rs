//! Antimagic edge labelings of the direct product `K_{1,s} x P_n`.
//!
//! * [`graph`] builds stars, paths, their direct product (with role-annotated
//!   vertices) and analyses connectivity.
//! * [`labeling`] computes vertex weights and verifies antimagicness.
//! * [`constructions`] holds the closed-form labeling families and the
//!   [`construct`](constructions::construct) dispatcher.
//! * [`search`] is an exhaustive/backtracking oracle producing witnesses and
//!   non-existence certificates.
//! * [`census`] sweeps parameter grids; [`io`] reads and writes JSON, DOT and
//!   CSV.

pub mod census;
pub mod constructions;
pub mod exec;
pub mod graph;
pub mod io;
pub mod labeling;
pub mod search;

pub use constructions::{construct, Construction, ConstructionOutcome, Epsilon, MethodTag, Parity};
pub use exec::Execution;
pub use graph::{Graph, ProductParams, VertexRole};
pub use labeling::{is_antimagic_labeling, vertex_weights, EdgeLabeling, Verdict};
pub use search::{find_antimagic, SearchBudget, SearchMode, SearchOutcome};
