//! Exhaustive and backtracking search for antimagic labelings of small graphs.
//!
//! Two engines share one driver:
//!
//! * [`SearchMode::Exhaustive`] walks every label permutation in edge-id order
//!   and only judges complete labelings. It is the unpruned reference and is
//!   restricted to graphs with at most [`EXHAUSTIVE_EDGE_LIMIT`] edges.
//! * [`SearchMode::Backtracking`] visits edges by descending endpoint degree
//!   sum and tracks partial weights. Once every edge at a vertex is labeled its
//!   weight is final, and any collision between two final weights closes the
//!   branch. Every vertex is final at a leaf, so leaves are always witnesses.
//!
//! Labels are tried in ascending order, so witnesses are reproducible.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::{construct, ConstructionError, ConstructionOutcome};
use crate::graph::{product_star_path, EdgeId, Graph, ProductParams, VertexId};
use crate::labeling::{is_antimagic_labeling, EdgeLabeling, Label, Weight};

/// Largest edge count the unpruned engine accepts.
pub const EXHAUSTIVE_EDGE_LIMIT: usize = 12;
/// Default search-tree node cap.
pub const DEFAULT_MAX_NODES: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("graph has no edges")]
    NoEdges,
    #[error("exhaustive search is limited to {EXHAUSTIVE_EDGE_LIMIT} edges (graph has {0})")]
    TooLargeForExhaustive(usize),
    #[error("search budget must allow at least one node")]
    ZeroBudget,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Exhaustive,
    Backtracking,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub mode: SearchMode,
}

impl SearchBudget {
    pub fn exhaustive(max_nodes: u64) -> Self {
        Self { max_nodes, mode: SearchMode::Exhaustive }
    }

    pub fn backtracking(max_nodes: u64) -> Self {
        Self { max_nodes, mode: SearchMode::Backtracking }
    }

    pub fn with_mode(self, mode: SearchMode) -> Self {
        Self { mode, ..self }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self::backtracking(DEFAULT_MAX_NODES)
    }
}

/// Work done by one search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Partial assignments created (one per label placed on an edge).
    pub nodes: u64,
    /// Complete labelings reached.
    pub assignments_examined: u64,
}

/// Record that a search closed the whole assignment space without finding an
/// antimagic labeling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonAntimagicCertificate {
    pub vertex_count: usize,
    /// Canonical edge list of the searched graph.
    pub fingerprint: Vec<(VertexId, VertexId)>,
    pub mode: SearchMode,
    pub assignments_examined: u64,
    pub nodes: u64,
    pub exhaustive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetReport {
    pub max_nodes: u64,
    pub mode: SearchMode,
    pub stats: SearchStats,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Antimagic { labeling: EdgeLabeling, stats: SearchStats },
    NotAntimagic(NonAntimagicCertificate),
    Unknown(BudgetReport),
}

impl SearchOutcome {
    pub fn is_antimagic(&self) -> bool {
        matches!(self, SearchOutcome::Antimagic { .. })
    }
}

enum Flow {
    Found,
    Exhausted,
    OutOfBudget,
}

struct Searcher<'g> {
    graph: &'g Graph,
    prune: bool,
    order: Vec<EdgeId>,
    used: Vec<bool>,
    labels: Vec<Label>,
    weight: Vec<Weight>,
    unlabeled: Vec<usize>,
    finalized: HashSet<Weight>,
    max_nodes: u64,
    stats: SearchStats,
}

impl<'g> Searcher<'g> {
    fn new(graph: &'g Graph, budget: SearchBudget) -> Self {
        let prune = budget.mode == SearchMode::Backtracking;
        let mut order: Vec<EdgeId> = (0..graph.edge_count()).collect();
        if prune {
            let key = |e: EdgeId| {
                let (u, v) = graph.endpoints(e);
                graph.degree(u) + graph.degree(v)
            };
            order.sort_by(|&x, &y| key(y).cmp(&key(x)).then(x.cmp(&y)));
        }
        Self {
            graph,
            prune,
            order,
            used: vec![false; graph.edge_count() + 1],
            labels: vec![0; graph.edge_count()],
            weight: vec![0; graph.vertex_count()],
            unlabeled: (0..graph.vertex_count()).map(|v| graph.degree(v)).collect(),
            finalized: HashSet::new(),
            max_nodes: budget.max_nodes,
            stats: SearchStats::default(),
        }
    }

    /// Seeds the final-weight set with isolated vertices. Returns `false` if
    /// two of them already collide.
    fn seed_isolated(&mut self) -> bool {
        let isolated = self.unlabeled.iter().filter(|&&d| d == 0).count();
        if isolated > 0 {
            self.finalized.insert(0);
        }
        isolated < 2
    }

    /// Adds `label` to the endpoints of `edge`. On collision, rolls back and
    /// returns `false`.
    fn place(&mut self, edge: EdgeId, label: Label) -> bool {
        let (u, v) = self.graph.endpoints(edge);
        let mut closed: [Option<Weight>; 2] = [None, None];
        let mut ok = true;
        for (slot, x) in [u, v].into_iter().enumerate() {
            self.weight[x] += label;
            self.unlabeled[x] -= 1;
            if ok && self.unlabeled[x] == 0 {
                let w = self.weight[x];
                if self.finalized.insert(w) {
                    closed[slot] = Some(w);
                } else {
                    ok = false;
                }
            }
        }
        if !ok {
            for w in closed.into_iter().flatten() {
                self.finalized.remove(&w);
            }
            for x in [u, v] {
                self.weight[x] -= label;
                self.unlabeled[x] += 1;
            }
        }
        ok
    }

    fn unplace(&mut self, edge: EdgeId, label: Label) {
        let (u, v) = self.graph.endpoints(edge);
        for x in [u, v] {
            if self.unlabeled[x] == 0 {
                self.finalized.remove(&self.weight[x]);
            }
            self.weight[x] -= label;
            self.unlabeled[x] += 1;
        }
    }

    fn run(&mut self, depth: usize) -> Flow {
        let size = self.labels.len() as Label;
        let edge = self.order[depth];
        for label in 1..=size {
            if self.used[label as usize] {
                continue;
            }
            self.stats.nodes += 1;
            if self.stats.nodes > self.max_nodes {
                return Flow::OutOfBudget;
            }
            if self.prune && !self.place(edge, label) {
                continue;
            }
            self.used[label as usize] = true;
            self.labels[edge] = label;

            let flow = if depth + 1 == self.order.len() {
                self.stats.assignments_examined += 1;
                if self.prune || self.leaf_is_antimagic() {
                    Flow::Found
                } else {
                    Flow::Exhausted
                }
            } else {
                self.run(depth + 1)
            };
            match flow {
                Flow::Exhausted => {}
                other => return other,
            }

            self.used[label as usize] = false;
            if self.prune {
                self.unplace(edge, label);
            }
        }
        Flow::Exhausted
    }

    fn leaf_is_antimagic(&self) -> bool {
        let labeling = EdgeLabeling::new(self.labels.clone());
        is_antimagic_labeling(self.graph, &labeling)
            .map(|v| v.is_pass())
            .unwrap_or(false)
    }
}

/// Searches for an antimagic labeling of `g`.
///
/// `NotAntimagic` is returned only when the whole space was closed;
/// `Unknown` when the node budget ran out first.
pub fn find_antimagic(g: &Graph, budget: SearchBudget) -> Result<SearchOutcome, SearchError> {
    if g.edge_count() == 0 {
        return Err(SearchError::NoEdges);
    }
    if budget.max_nodes == 0 {
        return Err(SearchError::ZeroBudget);
    }
    if budget.mode == SearchMode::Exhaustive && g.edge_count() > EXHAUSTIVE_EDGE_LIMIT {
        return Err(SearchError::TooLargeForExhaustive(g.edge_count()));
    }
    let mut searcher = Searcher::new(g, budget);
    let flow = if searcher.prune && !searcher.seed_isolated() {
        Flow::Exhausted
    } else {
        searcher.run(0)
    };
    let stats = searcher.stats;
    Ok(match flow {
        Flow::Found => {
            let labeling = EdgeLabeling::new(searcher.labels);
            debug_assert!(is_antimagic_labeling(g, &labeling).unwrap().is_pass());
            SearchOutcome::Antimagic { labeling, stats }
        }
        Flow::Exhausted => SearchOutcome::NotAntimagic(NonAntimagicCertificate {
            vertex_count: g.vertex_count(),
            fingerprint: g.canonical_edge_list(),
            mode: budget.mode,
            assignments_examined: stats.assignments_examined,
            nodes: stats.nodes,
            exhaustive: true,
        }),
        Flow::OutOfBudget => SearchOutcome::Unknown(BudgetReport {
            max_nodes: budget.max_nodes,
            mode: budget.mode,
            stats,
        }),
    })
}

#[derive(Debug, Error)]
pub enum CrossValidationError {
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("{params}: dispatcher says {dispatcher}, search says {search}")]
    Disagreement { params: ProductParams, dispatcher: &'static str, search: &'static str },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossValidation {
    pub params: ProductParams,
    /// Verdict both sides agreed on.
    pub antimagic: bool,
    pub dispatcher: ConstructionOutcome,
    pub search: SearchOutcome,
}

fn search_word(outcome: &SearchOutcome) -> &'static str {
    match outcome {
        SearchOutcome::Antimagic { .. } => "antimagic",
        SearchOutcome::NotAntimagic(_) => "not-antimagic",
        SearchOutcome::Unknown(_) => "unknown",
    }
}

/// Runs the dispatcher and an independent search on `K_{1,s} x P_n` and
/// demands the same verdict.
pub fn cross_validate(
    p: ProductParams,
    budget: SearchBudget,
) -> Result<CrossValidation, CrossValidationError> {
    let dispatcher = construct(p, budget)?;
    let search = find_antimagic(&product_star_path(p), budget)?;
    let antimagic = match (&dispatcher, &search) {
        (ConstructionOutcome::Antimagic { .. }, SearchOutcome::Antimagic { .. }) => true,
        (ConstructionOutcome::NotAntimagic(_), SearchOutcome::NotAntimagic(_)) => false,
        _ => {
            return Err(CrossValidationError::Disagreement {
                params: p,
                dispatcher: dispatcher.verdict_word(),
                search: search_word(&search),
            })
        }
    };
    Ok(CrossValidation { params: p, antimagic, dispatcher, search })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_path, Graph};
    use proptest::prelude::*;

    fn disjoint_paths(count: usize, n: usize) -> Graph {
        let edges = (0..count)
            .flat_map(|c| (1..n).map(move |k| (c * n + k - 1, c * n + k)))
            .collect();
        Graph::new(count * n, edges).unwrap()
    }

    #[test]
    fn two_k2_is_not_antimagic() {
        for budget in [SearchBudget::exhaustive(1_000), SearchBudget::backtracking(1_000)] {
            match find_antimagic(&disjoint_paths(2, 2), budget).unwrap() {
                SearchOutcome::NotAntimagic(cert) => {
                    assert!(cert.exhaustive);
                    if budget.mode == SearchMode::Exhaustive {
                        assert_eq!(cert.assignments_examined, 2);
                    }
                }
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn two_p3_is_not_antimagic() {
        let outcome = find_antimagic(&disjoint_paths(2, 3), SearchBudget::exhaustive(1_000)).unwrap();
        match outcome {
            SearchOutcome::NotAntimagic(cert) => {
                assert!(cert.exhaustive);
                assert_eq!(cert.assignments_examined, 24);
            }
            other => panic!("{other:?}"),
        }
        let pruned = find_antimagic(&disjoint_paths(2, 3), SearchBudget::backtracking(1_000)).unwrap();
        match pruned {
            SearchOutcome::NotAntimagic(cert) => assert!(cert.assignments_examined <= 24),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn two_p4_has_a_witness() {
        let g = disjoint_paths(2, 4);
        for budget in [SearchBudget::exhaustive(10_000_000), SearchBudget::backtracking(1_000_000)] {
            match find_antimagic(&g, budget).unwrap() {
                SearchOutcome::Antimagic { labeling, .. } => {
                    assert!(is_antimagic_labeling(&g, &labeling).unwrap().is_pass())
                }
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn rejects_large_exhaustive_and_empty_graphs() {
        let g = make_path(14).unwrap();
        assert_eq!(
            find_antimagic(&g, SearchBudget::exhaustive(10)),
            Err(SearchError::TooLargeForExhaustive(13))
        );
        assert_eq!(
            find_antimagic(&Graph::new(2, vec![]).unwrap(), SearchBudget::default()),
            Err(SearchError::NoEdges)
        );
    }

    #[test]
    fn tiny_budget_gives_unknown() {
        let g = disjoint_paths(2, 6);
        match find_antimagic(&g, SearchBudget::backtracking(3)).unwrap() {
            SearchOutcome::Unknown(report) => assert_eq!(report.stats.nodes, 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn isolated_pair_short_circuits() {
        let g = Graph::new(4, vec![(0, 1)]).unwrap();
        match find_antimagic(&g, SearchBudget::backtracking(10)).unwrap() {
            SearchOutcome::NotAntimagic(cert) => assert_eq!(cert.assignments_examined, 0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn witnesses_are_deterministic() {
        let g = disjoint_paths(2, 5);
        let a = find_antimagic(&g, SearchBudget::backtracking(1_000_000)).unwrap();
        let b = find_antimagic(&g, SearchBudget::backtracking(1_000_000)).unwrap();
        assert_eq!(a, b);
    }

    fn small_graph() -> impl Strategy<Value = Graph> {
        (2usize..7).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let max = pairs.len().min(7);
            proptest::sample::subsequence(pairs, 1..=max)
                .prop_map(move |edges| Graph::new(n, edges).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn pruning_is_sound(g in small_graph()) {
            let full = find_antimagic(&g, SearchBudget::exhaustive(u64::MAX)).unwrap();
            let pruned = find_antimagic(&g, SearchBudget::backtracking(u64::MAX)).unwrap();
            prop_assert_eq!(full.is_antimagic(), pruned.is_antimagic());
            for outcome in [&full, &pruned] {
                if let SearchOutcome::Antimagic { labeling, .. } = outcome {
                    prop_assert!(is_antimagic_labeling(&g, labeling).unwrap().is_pass());
                }
            }
        }
    }
}
