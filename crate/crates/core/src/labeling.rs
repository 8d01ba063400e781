//! Edge labelings, vertex weights and the antimagic verifier.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::graph::{EdgeId, Graph, VertexId};

pub type Label = u64;
pub type Weight = u64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabelingError {
    #[error("labeling domain does not match the edge set: missing edges {missing:?}, unknown edges {extra:?}")]
    Domain { missing: Vec<EdgeId>, extra: Vec<EdgeId> },
    #[error("edge {0} is labeled more than once")]
    RepeatedEdge(EdgeId),
}

/// Total mapping from edge ids `0..|E|` to labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeLabeling {
    labels: Vec<Label>,
}

impl EdgeLabeling {
    /// `labels[e]` is the label of edge `e`.
    pub fn new(labels: Vec<Label>) -> Self {
        Self { labels }
    }

    /// Builds a labeling from `(edge, label)` pairs, requiring the edge ids to
    /// be exactly `0..edge_count`.
    pub fn from_pairs(
        edge_count: usize,
        pairs: impl IntoIterator<Item = (EdgeId, Label)>,
    ) -> Result<Self, LabelingError> {
        let mut map = BTreeMap::new();
        for (edge, label) in pairs {
            if map.insert(edge, label).is_some() {
                return Err(LabelingError::RepeatedEdge(edge));
            }
        }
        let missing: Vec<EdgeId> = (0..edge_count).filter(|e| !map.contains_key(e)).collect();
        let extra: Vec<EdgeId> = map.keys().copied().filter(|&e| e >= edge_count).collect();
        if !missing.is_empty() || !extra.is_empty() {
            return Err(LabelingError::Domain { missing, extra });
        }
        Ok(Self { labels: map.into_values().collect() })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, edge: EdgeId) -> Label {
        self.labels[edge]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn iter(&self) -> impl Iterator<Item = (EdgeId, Label)> + '_ {
        self.labels.iter().copied().enumerate()
    }
}

fn check_domain(g: &Graph, labeling: &EdgeLabeling) -> Result<(), LabelingError> {
    let (have, want) = (labeling.len(), g.edge_count());
    if have == want {
        return Ok(());
    }
    Err(LabelingError::Domain {
        missing: (have..want).collect(),
        extra: (want..have).collect(),
    })
}

/// Why a labeling is not a bijection onto `{1..|E|}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BijectionDefect {
    OutOfRange { edge: EdgeId, label: Label },
    Duplicate { label: Label, first: EdgeId, second: EdgeId },
}

impl fmt::Display for BijectionDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BijectionDefect::OutOfRange { edge, label } => {
                write!(f, "edge {edge} has label {label}, outside 1..|E|")
            }
            BijectionDefect::Duplicate { label, first, second } => {
                write!(f, "label {label} is used by edges {first} and {second}")
            }
        }
    }
}

/// First bijection defect in edge-id order, if any.
pub fn bijection_defect(
    g: &Graph,
    labeling: &EdgeLabeling,
) -> Result<Option<BijectionDefect>, LabelingError> {
    check_domain(g, labeling)?;
    let size = labeling.len() as Label;
    let mut owner: Vec<Option<EdgeId>> = vec![None; labeling.len() + 1];
    for (edge, label) in labeling.iter() {
        if label == 0 || label > size {
            return Ok(Some(BijectionDefect::OutOfRange { edge, label }));
        }
        let slot = &mut owner[label as usize];
        if let Some(first) = *slot {
            return Ok(Some(BijectionDefect::Duplicate { label, first, second: edge }));
        }
        *slot = Some(edge);
    }
    Ok(None)
}

/// `true` iff the labels are exactly `{1, ..., |E|}`.
pub fn check_bijection(g: &Graph, labeling: &EdgeLabeling) -> Result<bool, LabelingError> {
    Ok(bijection_defect(g, labeling)?.is_none())
}

/// Vertex weights, indexed by vertex id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMap {
    weights: Vec<Weight>,
}

impl WeightMap {
    pub fn weight(&self, vertex: VertexId) -> Weight {
        self.weights[vertex]
    }

    pub fn as_slice(&self) -> &[Weight] {
        &self.weights
    }

    pub fn total(&self) -> Weight {
        self.weights.iter().sum()
    }

    /// Weights sorted ascending.
    pub fn sorted(&self) -> Vec<Weight> {
        let mut w = self.weights.clone();
        w.sort_unstable();
        w
    }

    /// Lexicographically least pair of distinct vertices sharing a weight.
    pub fn first_collision(&self) -> Option<(VertexId, VertexId, Weight)> {
        let mut first_seen: HashMap<Weight, VertexId> = HashMap::with_capacity(self.weights.len());
        let mut best: Option<(VertexId, VertexId)> = None;
        for (v, &w) in self.weights.iter().enumerate() {
            match first_seen.get(&w) {
                // the first hit for a given `u` carries its smallest partner
                Some(&u) => {
                    if best.is_none_or(|(bu, _)| u < bu) {
                        best = Some((u, v));
                    }
                }
                None => {
                    first_seen.insert(w, v);
                }
            }
        }
        best.map(|(u, v)| (u, v, self.weights[u]))
    }
}

/// Sum of incident labels per vertex. Isolated vertices weigh 0.
pub fn vertex_weights(g: &Graph, labeling: &EdgeLabeling) -> Result<WeightMap, LabelingError> {
    check_domain(g, labeling)?;
    let mut weights = vec![0; g.vertex_count()];
    for (edge, &(u, v)) in g.edges().iter().enumerate() {
        let label = labeling.label(edge);
        weights[u] += label;
        weights[v] += label;
    }
    Ok(WeightMap { weights })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Defect {
    Bijection(BijectionDefect),
    Collision { first: VertexId, second: VertexId, weight: Weight },
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Defect::Bijection(d) => write!(f, "not a bijection: {d}"),
            Defect::Collision { first, second, weight } => {
                write!(f, "vertices {first} and {second} both have weight {weight}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Defect),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

/// Pass iff the labeling is a bijection onto `{1..|E|}` and all vertex
/// weights are distinct. A failure carries one witness: the bijection defect,
/// or the lexicographically least colliding vertex pair.
pub fn is_antimagic_labeling(g: &Graph, labeling: &EdgeLabeling) -> Result<Verdict, LabelingError> {
    if let Some(defect) = bijection_defect(g, labeling)? {
        return Ok(Verdict::Fail(Defect::Bijection(defect)));
    }
    let weights = vertex_weights(g, labeling)?;
    Ok(match weights.first_collision() {
        Some((first, second, weight)) => Verdict::Fail(Defect::Collision { first, second, weight }),
        None => Verdict::Pass,
    })
}
