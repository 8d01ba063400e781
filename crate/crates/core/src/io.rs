//! JSON, DOT and CSV forms of graphs and labelings.
//!
//! Graph JSON:
//!
//! ```json
//! {"vertices": [{"id": 0, "role": {"family": "a", "i": 0, "j": 1}}, {"id": 1}],
//!  "edges": [{"id": 0, "u": 0, "v": 1}]}
//! ```
//!
//! Labeling JSON: `{"graph_ref": "...", "labels": [{"edge": 0, "label": 1}]}`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Family, Graph, GraphError, VertexRole};
use crate::labeling::{vertex_weights, EdgeLabeling, Label, LabelingError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("`{key}`: expected id {expected}, found {found}")]
    NonContiguousId { key: String, expected: usize, found: usize },
    #[error("`{key}`: family `{family}` {problem}")]
    Role { key: String, family: &'static str, problem: &'static str },
    #[error("`edges`: {0}")]
    Graph(#[from] GraphError),
    #[error("`labels`: {0}")]
    Labeling(#[from] LabelingError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RoleJson {
    pub family: Family,
    pub i: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexJson {
    pub id: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub role: Option<RoleJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    pub id: usize,
    pub u: usize,
    pub v: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<EdgeJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelJson {
    pub edge: usize,
    pub label: Label,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelingJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph_ref: Option<String>,
    pub labels: Vec<LabelJson>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        let vertices = (0..g.vertex_count())
            .map(|id| VertexJson {
                id,
                role: g.role(id).map(|r| RoleJson { family: r.family, i: r.i, j: r.j }),
            })
            .collect();
        let edges = g
            .edges()
            .iter()
            .enumerate()
            .map(|(id, &(u, v))| EdgeJson { id, u, v })
            .collect();
        Self { vertices, edges }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = FormatError;

    fn try_from(doc: GraphJson) -> Result<Self, FormatError> {
        let mut roles = Vec::with_capacity(doc.vertices.len());
        for (expected, vertex) in doc.vertices.into_iter().enumerate() {
            let key = format!("vertices[{expected}].id");
            if vertex.id != expected {
                return Err(FormatError::NonContiguousId { key, expected, found: vertex.id });
            }
            let role = match vertex.role {
                None => None,
                Some(RoleJson { family, i, j }) => {
                    let key = format!("vertices[{expected}].role.j");
                    let family_name = family.as_str();
                    match (family.has_branch(), j) {
                        (true, None) => {
                            return Err(FormatError::Role { key, family: family_name, problem: "needs a branch index" })
                        }
                        (false, Some(_)) => {
                            return Err(FormatError::Role { key, family: family_name, problem: "takes no branch index" })
                        }
                        _ => Some(VertexRole { family, i, j }),
                    }
                }
            };
            roles.push(role);
        }
        let mut edges = Vec::with_capacity(doc.edges.len());
        for (expected, edge) in doc.edges.into_iter().enumerate() {
            if edge.id != expected {
                let key = format!("edges[{expected}].id");
                return Err(FormatError::NonContiguousId { key, expected, found: edge.id });
            }
            edges.push((edge.u, edge.v));
        }
        Ok(Graph::with_roles(roles, edges)?)
    }
}

pub fn labeling_to_json(labeling: &EdgeLabeling, graph_ref: Option<String>) -> LabelingJson {
    LabelingJson {
        graph_ref,
        labels: labeling.iter().map(|(edge, label)| LabelJson { edge, label }).collect(),
    }
}

pub fn labeling_from_json(doc: &LabelingJson, edge_count: usize) -> Result<EdgeLabeling, FormatError> {
    Ok(EdgeLabeling::from_pairs(edge_count, doc.labels.iter().map(|l| (l.edge, l.label)))?)
}

pub fn graph_to_json_string(g: &Graph) -> String {
    serde_json::to_string_pretty(&GraphJson::from(g)).expect("graph JSON serialises")
}

pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let doc: GraphJson = serde_json::from_str(text)?;
    Graph::try_from(doc)
}

pub fn parse_labeling(text: &str, g: &Graph) -> Result<EdgeLabeling, FormatError> {
    let doc: LabelingJson = serde_json::from_str(text)?;
    labeling_from_json(&doc, g.edge_count())
}

fn vertex_name(g: &Graph, v: usize) -> String {
    g.role(v).map_or_else(|| v.to_string(), |r| r.to_string())
}

fn escape(text: &str) -> String {
    text.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Undirected DOT; vertices read `role:weight`, edges carry their label.
pub fn to_dot(g: &Graph, labeling: &EdgeLabeling, title: &str) -> Result<String, LabelingError> {
    let weights = vertex_weights(g, labeling)?;
    let mut out = String::new();
    writeln!(out, "graph \"{}\" {{", escape(title)).unwrap();
    for v in 0..g.vertex_count() {
        let label = format!("{}:{}", vertex_name(g, v), weights.weight(v));
        writeln!(out, "  n{v} [label=\"{}\"];", escape(&label)).unwrap();
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        writeln!(out, "  n{u} -- n{v} [label=\"{}\"];", labeling.label(e)).unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}

/// Edge table `edge,u,v,u_role,v_role,label`.
pub fn to_edge_csv(g: &Graph, labeling: &EdgeLabeling) -> Result<String, csv::Error> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(["edge", "u", "v", "u_role", "v_role", "label"])?;
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let role = |x: usize| g.role(x).map(|r| r.to_string()).unwrap_or_default();
        writer.write_record([
            e.to_string(),
            u.to_string(),
            v.to_string(),
            role(u),
            role(v),
            labeling.label(e).to_string(),
        ])?;
    }
    let bytes = writer.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
