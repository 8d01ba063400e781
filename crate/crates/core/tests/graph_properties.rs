use antimagic::graph::{
    components, direct_product, has_odd_cycle, make_path, make_star, product_star_path,
    star_path_direct_product, Graph, ProductParams,
};
use petgraph::algo::is_isomorphic;
use petgraph::graph::UnGraph;
use proptest::prelude::*;

fn params(s: usize, n: usize) -> ProductParams {
    ProductParams::new(s, n).unwrap()
}

fn to_petgraph(g: &Graph) -> UnGraph<(), ()> {
    let mut pg = UnGraph::new_undirected();
    let nodes: Vec<_> = (0..g.vertex_count()).map(|_| pg.add_node(())).collect();
    for &(u, v) in g.edges() {
        pg.add_edge(nodes[u], nodes[v], ());
    }
    pg
}

#[test]
fn product_sizes() {
    for s in 1..=10 {
        for n in 2..=30 {
            let g = product_star_path(params(s, n));
            assert_eq!(g.edge_count(), 2 * s * (n - 1));
            assert_eq!(g.vertex_count(), (s + 1) * n);
        }
    }
}

#[test]
fn exactly_two_components() {
    for s in 1..=10 {
        for n in 2..=30 {
            let g = product_star_path(params(s, n));
            let comps = components(&g);
            assert_eq!(comps.len(), 2, "({s},{n})");
            if n % 2 == 0 {
                assert_eq!(comps[0].graph.vertex_count(), comps[1].graph.vertex_count());
                assert_eq!(comps[0].graph.edge_count(), comps[1].graph.edge_count());
            }
        }
    }
}

#[test]
fn role_scheme_matches_the_product_operator() {
    for s in 1..=10 {
        for n in 2..=30 {
            let p = params(s, n);
            let scheme = product_star_path(p);
            let direct = direct_product(&make_star(s).unwrap(), &make_path(n).unwrap()).unwrap();
            assert_eq!(scheme.edge_count(), direct.edge_count());
            assert_eq!(scheme.degree_sequence(), direct.degree_sequence());
            if scheme.vertex_count() <= 20 {
                assert!(is_isomorphic(&to_petgraph(&scheme), &to_petgraph(&direct)), "{p}");
            }
        }
    }
}

#[test]
fn annotated_product_keeps_plain_numbering() {
    let p = params(3, 5);
    let annotated = star_path_direct_product(p).unwrap();
    let plain = direct_product(&make_star(3).unwrap(), &make_path(5).unwrap()).unwrap();
    assert_eq!(annotated.edges(), plain.edges());
    assert!(annotated.roles().iter().all(Option::is_some));
}

#[test]
fn even_halves_are_isomorphic() {
    for s in 1..=4 {
        for n in (2..=8).step_by(2) {
            let comps = components(&product_star_path(params(s, n)));
            if comps[0].graph.vertex_count() <= 20 {
                assert!(is_isomorphic(&to_petgraph(&comps[0].graph), &to_petgraph(&comps[1].graph)));
            }
        }
    }
}

#[test]
fn bipartite_factors_and_products() {
    for s in 1..=5 {
        assert!(!has_odd_cycle(&make_star(s).unwrap()));
        for n in 2..=8 {
            assert!(!has_odd_cycle(&product_star_path(params(s, n))));
        }
    }
}

fn small_graph(max_vertices: usize) -> impl Strategy<Value = Graph> {
    (1..=max_vertices).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let len = pairs.len();
        proptest::sample::subsequence(pairs, 0..=len).prop_map(move |edges| Graph::new(n, edges).unwrap())
    })
}

proptest! {
    #[test]
    fn product_degrees_multiply(g in small_graph(6), h in small_graph(6)) {
        let gh = direct_product(&g, &h).unwrap();
        prop_assert_eq!(gh.edge_count(), 2 * g.edge_count() * h.edge_count());
        for x in 0..g.vertex_count() {
            for y in 0..h.vertex_count() {
                prop_assert_eq!(gh.degree(x * h.vertex_count() + y), g.degree(x) * h.degree(y));
            }
        }
    }

    #[test]
    fn components_partition_the_graph(g in small_graph(9)) {
        let comps = components(&g);
        let vertices: usize = comps.iter().map(|c| c.graph.vertex_count()).sum();
        let edges: usize = comps.iter().map(|c| c.graph.edge_count()).sum();
        prop_assert_eq!(vertices, g.vertex_count());
        prop_assert_eq!(edges, g.edge_count());
        for c in &comps {
            prop_assert_eq!(components(&c.graph).len(), 1);
        }
        let firsts: Vec<usize> = comps.iter().map(|c| c.parent_vertices[0]).collect();
        prop_assert!(firsts.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn bipartite_connected_factors_give_two_components(s in 1usize..6, a in 2usize..7, b in 2usize..7) {
        // product of two paths: both bipartite and connected
        let g = direct_product(&make_path(a).unwrap(), &make_path(b).unwrap()).unwrap();
        prop_assert_eq!(components(&g).len(), 2);
        let star = direct_product(&make_star(s).unwrap(), &make_path(b).unwrap()).unwrap();
        prop_assert_eq!(components(&star).len(), 2);
    }
}

#[test]
fn odd_cycle_factor_connects_the_product() {
    let triangle = Graph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
    for n in 2..=6 {
        let g = direct_product(&triangle, &make_path(n).unwrap()).unwrap();
        assert_eq!(components(&g).len(), 1);
    }
}
