//! Matroid recolouring into PG(2,2) against Kempe recolouring into K8.

use std::collections::HashSet;
use std::sync::Arc;

use matrecol::decision::{mk_transfer_to_kempe, mk_transfer_to_matroid, tutte_tau_with, DecisionGraph, TutteContext};
use matrecol::graphs::{graph_homs, kempe_components};
use matrecol::recolor::build_col_graph;
use matrecol::{BinaryMatroid, BitVec, Caps, SimpleGraph};

fn caps() -> Caps {
    Caps::default()
}

fn corpus() -> Vec<(&'static str, SimpleGraph)> {
    let diamond = SimpleGraph::new(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
    vec![
        ("K3", SimpleGraph::complete(3)),
        ("C4", SimpleGraph::cycle(4)),
        ("diamond", diamond),
        ("K4", SimpleGraph::complete(4)),
        ("C5", SimpleGraph::cycle(5)),
    ]
}

#[test]
fn components_agree_with_eight_colours() {
    let pg = Arc::new(BinaryMatroid::projective_geometry(2, false));
    let dg = DecisionGraph::universal(pg.clone(), &caps()).unwrap();
    assert_eq!(dg.graph().vertex_count(), 8);
    let zero = dg.vertex_of(&BitVec::zeros(dg.dim())).unwrap();
    for (name, g) in corpus() {
        let g = Arc::new(g);
        let m = Arc::new(BinaryMatroid::graphic(&g));
        let cols = graph_homs(&g, dg.graph(), &caps()).unwrap();
        let col = build_col_graph(&m, &pg, &caps()).unwrap();
        let matroid_side = col.component_labels();
        let kempe_side = kempe_components(&cols).unwrap();
        let rooted: Vec<usize> = (0..cols.len()).filter(|&i| cols[i].image()[0] == zero).collect();
        let hom_of: Vec<usize> = rooted
            .iter()
            .map(|&i| col.index_of(tutte_tau_with(&cols[i], &dg, &m).unwrap().image()).unwrap())
            .collect();
        assert_eq!(hom_of.iter().collect::<HashSet<_>>().len(), col.vertex_count(), "{name}");
        assert_eq!(rooted.len(), col.vertex_count(), "{name}");
        for a in 0..rooted.len() {
            for b in a + 1..rooted.len() {
                assert_eq!(
                    matroid_side[hom_of[a]] == matroid_side[hom_of[b]],
                    kempe_side[rooted[a]] == kempe_side[rooted[b]],
                    "{name}: rooted colourings {a} and {b}"
                );
            }
        }
    }
}

#[test]
fn edges_transfer_both_ways() {
    let pg = Arc::new(BinaryMatroid::projective_geometry(2, false));
    let dg = DecisionGraph::universal(pg.clone(), &caps()).unwrap();
    for (name, g) in corpus().into_iter().take(4) {
        let g = Arc::new(g);
        let m = Arc::new(BinaryMatroid::graphic(&g));
        let ctx = TutteContext::bfs(g.clone(), 0).unwrap();
        let col = build_col_graph(&m, &pg, &caps()).unwrap();
        for (i, j, _) in col.edges.iter().take(200) {
            let (kp, t) = mk_transfer_to_kempe(&col.homs[*i], &col.homs[*j], &ctx, &dg).unwrap();
            assert_eq!(t, 3, "{name}");
            kp.validate().unwrap();
            let back = mk_transfer_to_matroid(&kp, &dg, &m).unwrap();
            back.validate().unwrap();
            assert_eq!(back.end().image(), col.homs[*j].image(), "{name}");
        }
    }
}
