//! A fast, deterministic battery of the headline small examples, run by
//! `matrecol verify`. Each check reports pass/fail with a short detail line.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::decision::{tutte_phi, tutte_tau, tutte_tau_with, DecisionGraph, TutteContext};
use crate::error::{Caps, Result};
use crate::gf2::BitVec;
use crate::graphs::{gcol_adjacent, graph_homs, graph_isomorphism, kempe_components, GraphColouring, SimpleGraph};
use crate::hom::{dismantles_to, dismantling_retractions, enumerate_homs, is_homomorphism, is_homomorphism_exhaustive, MatroidHom};
use crate::matroid::BinaryMatroid;
use crate::recolor::{adjacent, build_col_graph, difference};
use crate::reduction::{verify_k5auto, verify_reduction};

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    pub fn line(&self) -> String {
        format!("{} {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

type Check = fn(&Caps) -> Result<(bool, String)>;

const CHECKS: &[(&str, Check)] = &[
    ("col-c5-k3", col_c5_k3),
    ("col-k4-k3-is-k33", col_k4_k3),
    ("gcol-k4-k4-independent", gcol_k4_k4),
    ("decision-graphs", decision_graphs),
    ("tutte-figure", tutte_figure),
    ("cocircuit-differences", cocircuit_differences),
    ("pg-connectivity", pg_connectivity),
    ("dismantling", dismantling),
    ("matroid-kempe", matroid_kempe),
    ("k5-embeddings", k5_embeddings),
    ("gadget-reduction", gadget_reduction),
    ("cross-oracles", cross_oracles),
];

/// Runs every check in a fixed order. Errors count as failures.
pub fn run_suite(caps: &Caps) -> Vec<CheckResult> {
    CHECKS
        .iter()
        .map(|&(name, check)| match check(caps) {
            Ok((passed, detail)) => CheckResult { name, passed, detail },
            Err(e) => CheckResult { name, passed: false, detail: format!("error: {e}") },
        })
        .collect()
}

fn arc<T>(x: T) -> Arc<T> {
    Arc::new(x)
}

fn k3() -> Arc<BinaryMatroid> {
    arc(BinaryMatroid::clique(3))
}

fn graphic(g: &SimpleGraph) -> Arc<BinaryMatroid> {
    arc(BinaryMatroid::graphic(g))
}

fn col_c5_k3(caps: &Caps) -> Result<(bool, String)> {
    let col = build_col_graph(&graphic(&SimpleGraph::cycle(5)), &k3(), caps)?;
    let ok = col.vertex_count() == 60 && col.is_connected();
    Ok((ok, format!("{} vertices, {} components", col.vertex_count(), col.components().len())))
}

fn col_k4_k3(caps: &Caps) -> Result<(bool, String)> {
    let col = build_col_graph(&graphic(&SimpleGraph::complete(4)), &k3(), caps)?;
    let k33 = SimpleGraph::new(6, (0..3).flat_map(|i| (3..6).map(move |j| (i, j))))?;
    let ok = graph_isomorphism(&col.to_simple_graph(), &k33).is_some();
    Ok((ok, format!("{} vertices, {} edges", col.vertex_count(), col.edge_count())))
}

fn gcol_k4_k4(caps: &Caps) -> Result<(bool, String)> {
    let k4 = arc(SimpleGraph::complete(4));
    let cols = graph_homs(&k4, &k4, caps)?;
    let mut edges = 0;
    for (i, a) in cols.iter().enumerate() {
        for b in &cols[i + 1..] {
            edges += usize::from(gcol_adjacent(a, b)?);
        }
    }
    Ok((cols.len() == 24 && edges == 0, format!("{} vertices, {edges} edges", cols.len())))
}

fn decision_graphs(caps: &Caps) -> Result<(bool, String)> {
    let iso = |n: BinaryMatroid, h: SimpleGraph| -> Result<bool> {
        let d = DecisionGraph::universal(arc(n), caps)?;
        Ok(graph_isomorphism(d.graph(), &h).is_some())
    };
    let results = [
        iso(BinaryMatroid::clique(3), SimpleGraph::complete(4))?,
        iso(BinaryMatroid::projective_geometry(1, false), SimpleGraph::complete(4))?,
        iso(BinaryMatroid::projective_geometry(2, false), SimpleGraph::complete(8))?,
        iso(BinaryMatroid::clique(4), SimpleGraph::half_cube(4))?,
        iso(BinaryMatroid::clique(5), SimpleGraph::half_cube(5))?,
    ];
    let passed = results.iter().filter(|&&b| b).count();
    Ok((passed == results.len(), format!("{passed}/{} isomorphisms", results.len())))
}

/// The 5-vertex figure: a 5-cycle with chord 2-4, coloured into `D_u(M(K_3))`.
fn tutte_figure(caps: &Caps) -> Result<(bool, String)> {
    let g = arc(SimpleGraph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (2, 4)])?);
    let n = arc(BinaryMatroid::from_strings(&["01", "10", "11"], false)?);
    let dg = DecisionGraph::universal(n, caps)?;
    let bv = |s: &str| BitVec::parse(s);
    let image = ["10", "11", "10", "11", "01"]
        .iter()
        .map(|s| dg.vertex_of(&bv(s)?))
        .collect::<Result<Vec<_>>>()?;
    let phi = GraphColouring::new(g.clone(), dg.graph().clone(), image)?;
    let tau = tutte_tau(&phi, &dg)?;
    let values: Vec<String> = (0..6).map(|e| tau.value(e).to_string()).collect();
    let back = tutte_phi(&tau, &TutteContext::bfs(g, 0)?, &dg, &bv("01")?)?;
    let colours: Vec<String> = back.image().iter().map(|&v| dg.vector(v).to_string()).collect();
    let ok = values == ["01", "01", "01", "10", "11", "11"] && colours == ["01", "00", "01", "00", "10"];
    Ok((ok, format!("tau = {}, phi = {}", values.join(" "), colours.join(" "))))
}

fn cocircuit_differences(caps: &Caps) -> Result<(bool, String)> {
    let m = graphic(&SimpleGraph::complete(4));
    let homs = enumerate_homs(&m, &k3(), caps)?;
    let mut pairs = 0;
    let mut violations = 0;
    for a in &homs {
        for b in &homs {
            pairs += 1;
            let d = difference(a, b)?;
            let is_cocircuit = !d.is_empty() && m.is_cocircuit(&d);
            let constant: BTreeSet<BitVec> = d.iter().map(|e| a.value(e) + b.value(e)).collect();
            if is_cocircuit != (is_cocircuit && constant.len() == 1) || is_cocircuit != adjacent(a, b)?.is_some() {
                violations += 1;
            }
        }
    }
    Ok((violations == 0, format!("{pairs} pairs, {violations} violations")))
}

fn pg_connectivity(caps: &Caps) -> Result<(bool, String)> {
    let m = graphic(&SimpleGraph::complete(4));
    let pg = arc(BinaryMatroid::projective_geometry(1, true));
    let col = build_col_graph(&m, &pg, caps)?;
    Ok((col.is_connected(), format!("{} homs into the looped PG(1,2)", col.vertex_count())))
}

fn dismantling(caps: &Caps) -> Result<(bool, String)> {
    let k4 = arc(BinaryMatroid::clique(4));
    let c = crate::matroid::PointSet::from_indices(k4.len(), (0..k4.len()).filter(|&i| k4.point(i).get(3)));
    let example = MatroidHom::identity(k4.clone()).add_on(&c, &BitVec::parse("1111")?);
    let found = example.as_ref().is_some_and(|r| dismantling_retractions(&k4, caps).is_ok_and(|all| all.contains(r)));
    let to_k3 = dismantles_to(&k4, &BinaryMatroid::clique(3), caps)?.is_some();
    let mut loops = true;
    for n in 2..=4 {
        loops &= dismantles_to(&arc(BinaryMatroid::looped_clique(n)), &BinaryMatroid::single_loop(), caps)?.is_some();
    }
    let k3_stuck = dismantles_to(&k3(), &BinaryMatroid::clique(2), caps)?.is_none();
    let ok = found && to_k3 && loops && k3_stuck;
    Ok((ok, format!("example found {found}, K4 to K3 {to_k3}, looped cliques {loops}, K3 rigid {k3_stuck}")))
}

/// Connectivity in `Col(M(G), PG(1,2))` against Kempe connectivity of
/// rooted colourings into `K_4`, on two small graphs.
fn matroid_kempe(caps: &Caps) -> Result<(bool, String)> {
    let pg = arc(BinaryMatroid::projective_geometry(1, false));
    let dg = DecisionGraph::universal(pg.clone(), caps)?;
    let zero = dg.vertex_of(&BitVec::zeros(dg.dim()))?;
    let mut pairs = 0;
    let mut mismatches = 0;
    for g in [SimpleGraph::cycle(4), SimpleGraph::new(4, [(0, 1), (1, 2), (2, 0), (2, 3)])?] {
        let g = arc(g);
        let m = graphic(&g);
        let col = build_col_graph(&m, &pg, caps)?;
        let labels = col.component_labels();
        let cols = graph_homs(&g, dg.graph(), caps)?;
        let kempe = kempe_components(&cols)?;
        let rooted: Vec<usize> = (0..cols.len()).filter(|&i| cols[i].image()[0] == zero).collect();
        let hom_index = rooted
            .iter()
            .map(|&i| {
                let tau = tutte_tau_with(&cols[i], &dg, &m)?;
                Ok(col.index_of(tau.image()).expect("Tutte maps are homomorphisms"))
            })
            .collect::<Result<Vec<_>>>()?;
        for a in 0..rooted.len() {
            for b in a + 1..rooted.len() {
                pairs += 1;
                let matroid_side = labels[hom_index[a]] == labels[hom_index[b]];
                let kempe_side = kempe[rooted[a]] == kempe[rooted[b]];
                mismatches += usize::from(matroid_side != kempe_side);
            }
        }
    }
    Ok((mismatches == 0, format!("{pairs} pairs, {mismatches} mismatches")))
}

fn k5_embeddings(caps: &Caps) -> Result<(bool, String)> {
    let r = verify_k5auto(5, &SimpleGraph::complete(6), caps)?;
    let small = verify_k5auto(4, &SimpleGraph::complete(3), caps)?;
    let ok = r.holds() && small.counterexample.is_some();
    Ok((ok, format!("{}/{} embeddings into M(K6), K4 counterexample {:?}", r.embeddings, r.homs, small.counterexample)))
}

fn gadget_reduction(caps: &Caps) -> Result<(bool, String)> {
    let r = verify_reduction(&k3(), &arc(BinaryMatroid::clique(5)), caps)?;
    Ok((r.holds(), format!("{} pairs, {} mismatches", r.pairs_checked, r.mismatches.len())))
}

fn cross_oracles(caps: &Caps) -> Result<(bool, String)> {
    let c5 = graphic(&SimpleGraph::cycle(5));
    let col = build_col_graph(&c5, &k3(), caps)?;
    let sorted = |mut v: Vec<(usize, usize)>| {
        v.sort_unstable();
        v
    };
    let moves = sorted(col.edges.iter().map(|(i, j, _)| (*i, *j)).collect());
    let pairwise = sorted(col.pairwise_edges()?.iter().map(|(i, j, _)| (*i, *j)).collect());
    let mut hom_checks = 0;
    let mut disagreements = 0;
    for h in &col.homs {
        hom_checks += 1;
        let fast = is_homomorphism(&c5, &k3(), h.image())?;
        let slow = is_homomorphism_exhaustive(&c5, &k3(), h.image(), caps)?;
        disagreements += usize::from(fast != slow);
    }
    let ok = moves == pairwise && disagreements == 0;
    Ok((ok, format!("{} edges both ways, {hom_checks} hom checks, {disagreements} disagreements", moves.len())))
}
