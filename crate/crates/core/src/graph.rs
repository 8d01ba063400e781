//! Simple undirected graphs, star/path constructors, the direct product and
//! connectivity analysis.
//!
//! Vertex ids and edge ids are always contiguous (`0..|V|` and `0..|E|`). A
//! graph is frozen once built; every operation here returns a new value.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {edge} is a loop on vertex {vertex}")]
    Loop { edge: EdgeId, vertex: VertexId },
    #[error("edge {edge} duplicates edge {first} ({u}, {v})")]
    DuplicateEdge { edge: EdgeId, first: EdgeId, u: VertexId, v: VertexId },
    #[error("edge {edge} references vertex {vertex}, but the graph has {vertex_count} vertices")]
    VertexOutOfRange { edge: EdgeId, vertex: VertexId, vertex_count: usize },
    #[error("role {0} is assigned to more than one vertex")]
    DuplicateRole(VertexRole),
    #[error("a star needs at least one leaf (got s = {0})")]
    EmptyStar(usize),
    #[error("a path needs at least two vertices (got n = {0})")]
    ShortPath(usize),
    #[error("direct product of an empty graph")]
    EmptyFactor,
}

/// Which of the four vertex classes of `K_{1,s} x P_n` a vertex belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    A,
    B,
    V,
    U,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::A => "a",
            Family::B => "b",
            Family::V => "v",
            Family::U => "u",
        }
    }

    /// Leaf-derived families carry a branch index.
    pub fn has_branch(self) -> bool {
        matches!(self, Family::A | Family::B)
    }
}

/// Semantic address of a vertex in `K_{1,s} x P_n`.
///
/// `a`/`b` vertices come from star leaves and carry a branch index `j >= 1`;
/// `v`/`u` vertices come from the hub.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexRole {
    pub family: Family,
    pub i: usize,
    pub j: Option<usize>,
}

impl VertexRole {
    pub fn a(i: usize, j: usize) -> Self {
        Self { family: Family::A, i, j: Some(j) }
    }

    pub fn b(i: usize, j: usize) -> Self {
        Self { family: Family::B, i, j: Some(j) }
    }

    pub fn v(i: usize) -> Self {
        Self { family: Family::V, i, j: None }
    }

    pub fn u(i: usize) -> Self {
        Self { family: Family::U, i, j: None }
    }
}

impl fmt::Display for VertexRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.j {
            Some(j) => write!(f, "{}_{}^{}", self.family.as_str(), self.i, j),
            None => write!(f, "{}_{}", self.family.as_str(), self.i),
        }
    }
}

/// Parameters of `K_{1,s} x P_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProductParams {
    s: usize,
    n: usize,
}

impl ProductParams {
    pub fn new(s: usize, n: usize) -> Result<Self, GraphError> {
        if s == 0 {
            return Err(GraphError::EmptyStar(s));
        }
        if n < 2 {
            return Err(GraphError::ShortPath(n));
        }
        Ok(Self { s, n })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_even(&self) -> bool {
        self.n.is_multiple_of(2)
    }

    /// `n = 2m + 2` for even paths, `n = 2m + 1` for odd paths.
    pub fn m(&self) -> usize {
        if self.is_even() {
            (self.n - 2) / 2
        } else {
            (self.n - 1) / 2
        }
    }

    pub fn edge_count(&self) -> usize {
        2 * self.s * (self.n - 1)
    }

    pub fn vertex_count(&self) -> usize {
        (self.s + 1) * self.n
    }
}

impl fmt::Display for ProductParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K_{{1,{}}} x P_{}", self.s, self.n)
    }
}

/// Immutable simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    roles: Vec<Option<VertexRole>>,
    edges: Vec<(VertexId, VertexId)>,
    adjacency: Vec<Vec<(VertexId, EdgeId)>>,
    role_index: HashMap<VertexRole, VertexId>,
}

impl Graph {
    /// Builds an unannotated graph. Edge `k` gets id `k`.
    pub fn new(vertex_count: usize, edges: Vec<(VertexId, VertexId)>) -> Result<Self, GraphError> {
        Self::with_roles(vec![None; vertex_count], edges)
    }

    /// Builds a graph whose vertex `k` carries `roles[k]`.
    pub fn with_roles(
        roles: Vec<Option<VertexRole>>,
        edges: Vec<(VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        let vertex_count = roles.len();
        let mut adjacency = vec![Vec::new(); vertex_count];
        let mut seen: HashMap<(VertexId, VertexId), EdgeId> = HashMap::with_capacity(edges.len());
        for (edge, &(u, v)) in edges.iter().enumerate() {
            for vertex in [u, v] {
                if vertex >= vertex_count {
                    return Err(GraphError::VertexOutOfRange { edge, vertex, vertex_count });
                }
            }
            if u == v {
                return Err(GraphError::Loop { edge, vertex: u });
            }
            let key = (u.min(v), u.max(v));
            if let Some(&first) = seen.get(&key) {
                return Err(GraphError::DuplicateEdge { edge, first, u, v });
            }
            seen.insert(key, edge);
            adjacency[u].push((v, edge));
            adjacency[v].push((u, edge));
        }
        let mut role_index = HashMap::new();
        for (id, role) in roles.iter().enumerate() {
            if let Some(role) = role {
                if role_index.insert(*role, id).is_some() {
                    return Err(GraphError::DuplicateRole(*role));
                }
            }
        }
        Ok(Self { roles, edges, adjacency, role_index })
    }

    pub fn vertex_count(&self) -> usize {
        self.roles.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn endpoints(&self, edge: EdgeId) -> (VertexId, VertexId) {
        self.edges[edge]
    }

    /// `(neighbour, edge)` pairs incident to `vertex`.
    pub fn incident(&self, vertex: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adjacency[vertex]
    }

    pub fn degree(&self, vertex: VertexId) -> usize {
        self.adjacency[vertex].len()
    }

    pub fn role(&self, vertex: VertexId) -> Option<VertexRole> {
        self.roles[vertex]
    }

    pub fn roles(&self) -> &[Option<VertexRole>] {
        &self.roles
    }

    pub fn vertex_by_role(&self, role: VertexRole) -> Option<VertexId> {
        self.role_index.get(&role).copied()
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.adjacency
            .get(u)?
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, e)| e)
    }

    /// Edge joining the vertices carrying the two roles.
    pub fn edge_between_roles(&self, x: VertexRole, y: VertexRole) -> Option<EdgeId> {
        self.edge_between(self.vertex_by_role(x)?, self.vertex_by_role(y)?)
    }

    /// Degrees sorted ascending.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut degrees: Vec<usize> = (0..self.vertex_count()).map(|v| self.degree(v)).collect();
        degrees.sort_unstable();
        degrees
    }

    /// Sorted list of `(min, max)` endpoint pairs; equal for graphs that are
    /// identical up to edge-id order.
    pub fn canonical_edge_list(&self) -> Vec<(VertexId, VertexId)> {
        let mut list: Vec<_> = self.edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        list.sort_unstable();
        list
    }
}

/// `K_{1,s}`: hub is vertex 0, leaves are `1..=s`.
pub fn make_star(s: usize) -> Result<Graph, GraphError> {
    if s == 0 {
        return Err(GraphError::EmptyStar(s));
    }
    Graph::new(s + 1, (1..=s).map(|leaf| (0, leaf)).collect())
}

/// `P_n` on vertices `0..n` in path order.
pub fn make_path(n: usize) -> Result<Graph, GraphError> {
    if n < 2 {
        return Err(GraphError::ShortPath(n));
    }
    Graph::new(n, (1..n).map(|k| (k - 1, k)).collect())
}

/// Direct (tensor) product. Vertex `(x, y)` gets id `x * |V(h)| + y`; edges
/// are listed in canonical order.
pub fn direct_product(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    if g.vertex_count() == 0 || h.vertex_count() == 0 {
        return Err(GraphError::EmptyFactor);
    }
    let width = h.vertex_count();
    let id = |x: VertexId, y: VertexId| x * width + y;
    let mut edges = Vec::with_capacity(2 * g.edge_count() * h.edge_count());
    for &(x, x2) in g.edges() {
        for &(y, y2) in h.edges() {
            for (p, q) in [(id(x, y), id(x2, y2)), (id(x, y2), id(x2, y))] {
                edges.push((p.min(q), p.max(q)));
            }
        }
    }
    edges.sort_unstable();
    Graph::new(g.vertex_count() * width, edges)
}

/// Role of the product vertex `(star vertex, path position)` in
/// `K_{1,s} x P_n`. Star vertex 0 is the hub, `1..=s` the leaves.
pub fn star_path_role(p: ProductParams, star_vertex: usize, pos: usize) -> VertexRole {
    let m = p.m();
    let hub = star_vertex == 0;
    let j = star_vertex;
    if p.is_even() {
        match (hub, pos.is_multiple_of(2)) {
            (true, false) => VertexRole::v((pos - 1) / 2),
            (false, true) => VertexRole::a(pos / 2, j),
            (true, true) => VertexRole::u((2 * m - pos) / 2),
            (false, false) => VertexRole::b((2 * m + 1 - pos) / 2, j),
        }
    } else {
        match (hub, pos.is_multiple_of(2)) {
            (false, true) => VertexRole::a(pos / 2, j),
            (true, false) => VertexRole::v((pos - 1) / 2),
            (true, true) => VertexRole::u(pos / 2),
            (false, false) => VertexRole::b(pos.div_ceil(2), j),
        }
    }
}

/// `direct_product(make_star(s), make_path(n))` with every vertex annotated
/// by its role. Vertex ids follow the plain product numbering.
pub fn star_path_direct_product(p: ProductParams) -> Result<Graph, GraphError> {
    let plain = direct_product(&make_star(p.s())?, &make_path(p.n())?)?;
    let roles = (0..plain.vertex_count())
        .map(|id| Some(star_path_role(p, id / p.n(), id % p.n())))
        .collect();
    Graph::with_roles(roles, plain.edges().to_vec())
}

/// All roles of `K_{1,s} x P_n` in id order: `a` (i, then j ascending), `b`, `v`, `u`.
pub fn star_path_roles(p: ProductParams) -> Vec<VertexRole> {
    let (s, m) = (p.s(), p.m());
    let (b_range, v_last) = if p.is_even() { (0..=m, m) } else { (1..=m, m - 1) };
    let mut roles = Vec::with_capacity(p.vertex_count());
    for i in 0..=m {
        roles.extend((1..=s).map(|j| VertexRole::a(i, j)));
    }
    for i in b_range {
        roles.extend((1..=s).map(|j| VertexRole::b(i, j)));
    }
    roles.extend((0..=v_last).map(VertexRole::v));
    roles.extend((0..=m).map(VertexRole::u));
    roles
}

/// Role pairs forming the edge set of `K_{1,s} x P_n`.
pub fn star_path_role_edges(p: ProductParams) -> Vec<(VertexRole, VertexRole)> {
    let (s, m) = (p.s(), p.m());
    let mut edges = Vec::with_capacity(p.edge_count());
    for j in 1..=s {
        if p.is_even() {
            for i in 0..=m {
                edges.push((VertexRole::a(i, j), VertexRole::v(i)));
                edges.push((VertexRole::b(i, j), VertexRole::u(i)));
            }
            for i in 1..=m {
                edges.push((VertexRole::a(i, j), VertexRole::v(i - 1)));
                edges.push((VertexRole::b(i, j), VertexRole::u(i - 1)));
            }
        } else {
            for i in 0..m {
                edges.push((VertexRole::a(i, j), VertexRole::v(i)));
                edges.push((VertexRole::a(i + 1, j), VertexRole::v(i)));
            }
            for i in 1..=m {
                edges.push((VertexRole::b(i, j), VertexRole::u(i)));
                edges.push((VertexRole::b(i, j), VertexRole::u(i - 1)));
            }
        }
    }
    edges
}

/// `K_{1,s} x P_n` built from its role-level description, with deterministic
/// vertex ids (see [`star_path_roles`]) and canonically ordered edges.
pub fn product_star_path(p: ProductParams) -> Graph {
    let roles = star_path_roles(p);
    let index: HashMap<VertexRole, VertexId> =
        roles.iter().enumerate().map(|(id, &r)| (r, id)).collect();
    let mut edges: Vec<(VertexId, VertexId)> = star_path_role_edges(p)
        .into_iter()
        .map(|(x, y)| {
            let (a, b) = (index[&x], index[&y]);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    Graph::with_roles(roles.into_iter().map(Some).collect(), edges)
        .expect("role-level edge set is simple")
}

/// A connected component together with the ids it had in the parent graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub graph: Graph,
    /// `parent_vertices[local] = parent id`.
    pub parent_vertices: Vec<VertexId>,
    /// `parent_edges[local] = parent id`.
    pub parent_edges: Vec<EdgeId>,
}

/// Connected components ordered by their smallest parent vertex id. Inside a
/// component, vertices and edges keep their relative parent order.
pub fn components(g: &Graph) -> Vec<Component> {
    let n = g.vertex_count();
    let mut component_of = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if component_of[start] != usize::MAX {
            continue;
        }
        component_of[start] = count;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &(y, _) in g.incident(x) {
                if component_of[y] == usize::MAX {
                    component_of[y] = count;
                    queue.push_back(y);
                }
            }
        }
        count += 1;
    }

    let mut parent_vertices = vec![Vec::new(); count];
    let mut local = vec![0; n];
    for v in 0..n {
        let c = component_of[v];
        local[v] = parent_vertices[c].len();
        parent_vertices[c].push(v);
    }
    let mut parent_edges = vec![Vec::new(); count];
    let mut local_edges = vec![Vec::new(); count];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let c = component_of[u];
        parent_edges[c].push(e);
        local_edges[c].push((local[u], local[v]));
    }

    parent_vertices
        .into_iter()
        .zip(parent_edges)
        .zip(local_edges)
        .map(|((vertices, edges), local_edges)| {
            let roles = vertices.iter().map(|&v| g.role(v)).collect();
            Component {
                graph: Graph::with_roles(roles, local_edges).expect("subgraph of a simple graph"),
                parent_vertices: vertices,
                parent_edges: edges,
            }
        })
        .collect()
}

/// `true` iff the graph is not bipartite.
pub fn has_odd_cycle(g: &Graph) -> bool {
    let mut colour: Vec<Option<bool>> = vec![None; g.vertex_count()];
    for start in 0..g.vertex_count() {
        if colour[start].is_some() {
            continue;
        }
        colour[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let cx = colour[x].unwrap();
            for &(y, _) in g.incident(x) {
                match colour[y] {
                    None => {
                        colour[y] = Some(!cx);
                        queue.push_back(y);
                    }
                    Some(cy) if cy == cx => return true,
                    Some(_) => {}
                }
            }
        }
    }
    false
}

/// Set of role-pairs, normalised so that comparisons ignore edge direction.
pub fn role_edge_set(g: &Graph) -> Option<HashSet<(VertexRole, VertexRole)>> {
    g.edges()
        .iter()
        .map(|&(u, v)| {
            let (x, y) = (g.role(u)?, g.role(v)?);
            Some((x.min(y), x.max(y)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(s: usize, n: usize) -> ProductParams {
        ProductParams::new(s, n).unwrap()
    }

    #[test]
    fn star_shapes() {
        assert_eq!(make_star(1).unwrap().degree_sequence(), vec![1, 1]);
        assert_eq!(make_star(3).unwrap().degree_sequence(), vec![1, 1, 1, 3]);
        assert_eq!(make_star(5).unwrap().degree_sequence(), vec![1, 1, 1, 1, 1, 5]);
        assert_eq!(make_star(0), Err(GraphError::EmptyStar(0)));
    }

    #[test]
    fn path_shapes() {
        assert_eq!(make_path(2).unwrap().edge_count(), 1);
        let p5 = make_path(5).unwrap();
        assert_eq!(p5.edge_count(), 4);
        let degrees: Vec<_> = (0..5).map(|v| p5.degree(v)).collect();
        assert_eq!(degrees, vec![1, 2, 2, 2, 1]);
        let p3 = make_path(3).unwrap();
        assert_eq!((0..3).map(|v| p3.degree(v)).collect::<Vec<_>>(), vec![1, 2, 1]);
        assert_eq!(make_path(1), Err(GraphError::ShortPath(1)));
    }

    #[test]
    fn rejects_non_simple_input() {
        assert!(matches!(Graph::new(2, vec![(0, 0)]), Err(GraphError::Loop { .. })));
        assert!(matches!(
            Graph::new(2, vec![(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge { edge: 1, first: 0, .. })
        ));
        assert!(matches!(
            Graph::new(2, vec![(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, .. })
        ));
    }

    #[test]
    fn smallest_products() {
        let g = direct_product(&make_star(1).unwrap(), &make_path(2).unwrap()).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 2));
        assert_eq!(components(&g).len(), 2);

        let g = direct_product(&make_star(2).unwrap(), &make_path(2).unwrap()).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (6, 4));
        let comps = components(&g);
        assert_eq!(comps.len(), 2);
        for c in comps {
            assert_eq!(c.graph.degree_sequence(), vec![1, 1, 2]);
        }
    }

    #[test]
    fn product_edge_count_matches_pair_enumeration() {
        // Brute force: test every vertex pair for adjacency in both factors.
        let star = make_star(3).unwrap();
        let path = make_path(4).unwrap();
        let adjacent = |g: &Graph, x: usize, y: usize| g.edge_between(x, y).is_some();
        let pairs: Vec<(usize, usize)> =
            (0..4).flat_map(|x| (0..4).map(move |y| (x, y))).collect();
        let mut brute = 0;
        for (k, &(x, y)) in pairs.iter().enumerate() {
            for &(x2, y2) in &pairs[k + 1..] {
                if adjacent(&star, x, x2) && adjacent(&path, y, y2) {
                    brute += 1;
                }
            }
        }
        assert_eq!(brute, 18);
        assert_eq!(direct_product(&star, &path).unwrap().edge_count(), brute);
    }

    #[test]
    fn role_scheme_sizes() {
        let g = product_star_path(params(2, 4));
        assert_eq!((g.vertex_count(), g.edge_count()), (12, 12));
        let g = product_star_path(params(2, 3));
        assert_eq!((g.vertex_count(), g.edge_count()), (9, 8));
        let g = product_star_path(params(1, 2));
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 2));
        assert_eq!(g.degree_sequence(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn role_ids_follow_family_order() {
        let g = product_star_path(params(2, 3));
        let expected = [
            VertexRole::a(0, 1),
            VertexRole::a(0, 2),
            VertexRole::a(1, 1),
            VertexRole::a(1, 2),
            VertexRole::b(1, 1),
            VertexRole::b(1, 2),
            VertexRole::v(0),
            VertexRole::u(0),
            VertexRole::u(1),
        ];
        for (id, role) in expected.iter().enumerate() {
            assert_eq!(g.role(id), Some(*role));
        }
    }

    #[test]
    fn coordinate_roles_match_role_scheme() {
        for s in 1..=4 {
            for n in 2..=9 {
                let p = params(s, n);
                let direct = star_path_direct_product(p).unwrap();
                let scheme = product_star_path(p);
                assert_eq!(role_edge_set(&direct), role_edge_set(&scheme), "{p}");
            }
        }
    }

    #[test]
    fn component_order_starts_at_v0() {
        for n in 2..8 {
            let g = product_star_path(params(3, n));
            let comps = components(&g);
            assert_eq!(comps.len(), 2);
            assert!(comps[0].graph.vertex_by_role(VertexRole::v(0)).is_some());
        }
    }

    #[test]
    fn component_counts() {
        assert_eq!(components(&make_path(5).unwrap()).len(), 1);
        assert_eq!(components(&Graph::new(3, vec![]).unwrap()).len(), 3);
    }

    #[test]
    fn component_back_references() {
        let g = product_star_path(params(2, 5));
        for c in components(&g) {
            for (local, &(u, v)) in c.graph.edges().iter().enumerate() {
                let parent = g.endpoints(c.parent_edges[local]);
                assert_eq!(parent, (c.parent_vertices[u], c.parent_vertices[v]));
            }
        }
    }

    #[test]
    fn odd_cycles() {
        assert!(!has_odd_cycle(&make_path(7).unwrap()));
        assert!(has_odd_cycle(&Graph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap()));
        assert!(!has_odd_cycle(&make_star(4).unwrap()));
        assert!(!has_odd_cycle(&Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()));
    }

    #[test]
    fn params_derive_m() {
        assert_eq!(params(3, 8).m(), 3);
        assert_eq!(params(3, 7).m(), 3);
        assert_eq!(params(2, 2).m(), 0);
        assert!(ProductParams::new(0, 4).is_err());
        assert!(ProductParams::new(2, 1).is_err());
    }

    #[test]
    fn role_display() {
        assert_eq!(VertexRole::a(0, 3).to_string(), "a_0^3");
        assert_eq!(VertexRole::u(2).to_string(), "u_2");
    }
}
