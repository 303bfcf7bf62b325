//! The clique gadget: from `M` build `M*` so that recolouring `M` into
//! `M(K_4)` reduces to recolouring `M*` into a graphic `N` containing
//! `M(K_n)`, `n ≥ 5`. Includes brute-force harnesses for each step.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Caps, Error, Result};
use crate::gf2::BitVec;
use crate::graphs::SimpleGraph;
use crate::hom::{enumerate_homs, linear_extension_from, same_matroid, MatroidHom};
use crate::matroid::{find_clique_copy, isomorphism, BinaryMatroid, PointSet};
use crate::recolor::{adjacent, build_col_graph, cocycle_walk, lift_walk, neighbor_moves, recol_decide, RecolPath, Witness};

/// Position of the pair `{i, j}` in the lexicographic list of pairs of `0..n`.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// All permutations of `0..k` in lexicographic order.
fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                go(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// `M*` together with everything needed to move homomorphisms across.
///
/// Points of `M*` are `E`, then the twins `E'` in the same order, then the
/// clique block `2U_n` in lexicographic pair order. The clique vertices are
/// `v_1..v_n` of `N`, stored 0-based.
#[derive(Clone, Debug)]
pub struct GadgetInstance {
    pub source: Arc<BinaryMatroid>,
    pub target: Arc<BinaryMatroid>,
    pub clique_size: usize,
    /// `v_1..v_n` as unit vectors of `N`'s ambient space.
    pub vertices: Vec<BitVec>,
    /// `N` index of `v_i + v_j`, lexicographic in `(i, j)`.
    pub copy_points: Vec<usize>,
    /// `N` indices of the copy of `M(K_4)` spanned by `v_1..v_4`.
    pub k4_points: Vec<usize>,
    /// That copy as a matroid; the codomain of source homomorphisms.
    pub k4: Arc<BinaryMatroid>,
    pub gadget: Arc<BinaryMatroid>,
    /// A basis of `M`, then the star `u_i + u_n`.
    pub gadget_basis: Vec<usize>,
}

impl GadgetInstance {
    pub fn source_len(&self) -> usize {
        self.source.len()
    }

    pub fn twin(&self, e: usize) -> usize {
        self.source.len() + e
    }

    /// `M*` index of `u_i + u_j`.
    pub fn block_point(&self, i: usize, j: usize) -> usize {
        2 * self.source.len() + pair_index(self.clique_size, i, j)
    }

    pub fn block(&self) -> std::ops::Range<usize> {
        2 * self.source.len()..self.gadget.len()
    }

    /// `M_Z = {u_i + u_n : i = 1..4}`.
    pub fn star(&self) -> Vec<usize> {
        (0..4).map(|i| self.block_point(i, self.clique_size - 1)).collect()
    }

    /// Sidecar text mapping `M*` indices back to their roles.
    pub fn index_map(&self) -> String {
        let mut out = String::from("# matrecol v1 gadget-map\n");
        let _ = writeln!(out, "# source points {} clique {}", self.source.len(), self.clique_size);
        for e in 0..self.source.len() {
            let _ = writeln!(out, "{} {}", e, self.twin(e));
        }
        let _ = writeln!(out, "block {} {}", self.block().start, self.block().end);
        out
    }
}

/// Checks that every point of `n` has weight two, i.e. `n` is given in its
/// standard graphic representation.
fn check_standard_graphic(n: &BinaryMatroid) -> Result<()> {
    if n.has_loop() || n.points().iter().any(|p| p.weight() != 2) {
        return Err(Error::Precondition(
            "target must be loopless and in standard graphic representation (every column of weight 2)".into(),
        ));
    }
    Ok(())
}

/// Unit vectors `v_1..v_n` of a clique copy in a standard graphic matroid.
/// For `n ≥ 5` the anchors form a star around a common vertex, which
/// becomes `v_n`.
fn clique_vertices(n: &BinaryMatroid, anchors: &[BitVec]) -> Result<Vec<BitVec>> {
    let centre = anchors[1].and(&anchors[2]);
    if centre.weight() != 1 || anchors[1..].iter().any(|a| !centre.is_subset(a)) {
        return Err(Error::Internal("clique anchors do not share a vertex".into()));
    }
    let mut vertices: Vec<BitVec> = anchors[1..].iter().map(|a| a + &centre).collect();
    vertices.push(centre);
    debug_assert!(vertices.iter().all(|v| v.weight() == 1 && v.len() == n.ambient_dim()));
    Ok(vertices)
}

/// Builds `M*` for a source `m` and a graphic target `n` containing `M(K_5)`.
pub fn build_gadget(m: &Arc<BinaryMatroid>, n: &Arc<BinaryMatroid>) -> Result<GadgetInstance> {
    check_standard_graphic(n)?;
    let mut best = find_clique_copy(n, 5).ok_or_else(|| Error::Precondition("target contains no copy of M(K_5)".into()))?;
    while let Some(bigger) = find_clique_copy(n, best.size() + 1) {
        best = bigger;
    }
    let size = best.size();
    let vertices = clique_vertices(n, &best.anchors)?;
    let point = |i: usize, j: usize| -> Result<usize> {
        n.index_of(&(&vertices[i] + &vertices[j]))
            .ok_or_else(|| Error::Internal("clique pair is not a point".into()))
    };
    let mut copy_points = Vec::new();
    for i in 0..size {
        for j in i + 1..size {
            copy_points.push(point(i, j)?);
        }
    }
    let mut k4_points = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            k4_points.push(point(i, j)?);
        }
    }
    let k4 = Arc::new(n.restriction(&k4_points)?);

    let dim = m.ambient_dim();
    let zero_block = BitVec::zeros(size);
    let z = BitVec::from_indices(size, [0, 1, 2, 3]);
    let mut columns: Vec<BitVec> = m.points().iter().map(|p| p.concat(&zero_block)).collect();
    columns.extend(m.points().iter().map(|p| p.concat(&z)));
    for i in 0..size {
        for j in i + 1..size {
            columns.push(BitVec::zeros(dim).concat(&BitVec::from_indices(size, [i, j])));
        }
    }
    let gadget = BinaryMatroid::new(dim + size, columns, m.has_loop())
        .map_err(|e| Error::Construction(format!("gadget columns are not distinct: {e}")))?;

    let mut g = GadgetInstance {
        source: m.clone(),
        target: n.clone(),
        clique_size: size,
        vertices,
        copy_points,
        k4_points,
        k4,
        gadget: Arc::new(gadget),
        gadget_basis: Vec::new(),
    };
    let mut basis = m.basis().to_vec();
    basis.extend((0..size - 1).map(|i| g.block_point(i, size - 1)));
    let basis_set = PointSet::from_indices(g.gadget.len(), basis.iter().copied());
    if basis.len() != g.gadget.rank() || !g.gadget.is_independent(&basis_set) {
        return Err(Error::Internal("a basis of M plus the star is not a basis of M*".into()));
    }
    g.gadget_basis = basis;
    // {e, e'} ∪ M_Z is always a circuit; it is the fundamental circuit of e'
    // when e is in the basis, and otherwise e is traded for its own
    // fundamental circuit in M.
    for e in 0..m.len() {
        let twin_circuit = PointSet::from_indices(g.gadget.len(), [e, g.twin(e)].into_iter().chain(g.star()));
        let mut expected = PointSet::from_indices(g.gadget.len(), [g.twin(e)].into_iter().chain(g.star()));
        match m.basis_position(e) {
            Some(_) => expected.insert(e),
            None => m.fundamental_circuit(e)?.iter().filter(|&f| f != e).for_each(|f| expected.insert(f)),
        }
        let found = g.gadget.fundamental_circuit_in(&g.gadget_basis, g.twin(e))?;
        if found != expected || !g.gadget.is_circuit(&twin_circuit) {
            return Err(Error::Internal(format!("twin of {e} does not close a circuit with the star")));
        }
    }
    Ok(g)
}

/// `s(τ)`: `τ` on `M`, the identity from the clique block onto the copy,
/// extended linearly.
pub fn lift_hom(g: &GadgetInstance, tau: &MatroidHom) -> Result<MatroidHom> {
    if !same_matroid(tau.domain(), &g.source) || !same_matroid(tau.codomain(), &g.k4) {
        return Err(Error::Mismatch("source homomorphism must map M into the designated M(K_4) copy".into()));
    }
    let n = g.clique_size;
    let mut images: Vec<usize> = g.source.basis().iter().map(|&b| g.k4_points[tau.image()[b]]).collect();
    images.extend((0..n - 1).map(|i| g.copy_points[pair_index(n, i, n - 1)]));
    let lifted = linear_extension_from(&g.gadget, &g.target, &g.gadget_basis, &images)?
        .ok_or_else(|| Error::Internal("lift of a homomorphism is not a homomorphism".into()))?;
    for e in 0..g.source.len() {
        if lifted.image()[e] != g.k4_points[tau.image()[e]] {
            return Err(Error::Internal("lift does not restrict to the original map".into()));
        }
    }
    Ok(lifted)
}

/// Vertices `w_1..w_n` with `σ(u_i + u_j) = w_i + w_j`, read off the star.
pub fn block_labelling(g: &GadgetInstance, sigma: &MatroidHom) -> Result<Vec<BitVec>> {
    let n = g.clique_size;
    let star: Vec<&BitVec> = (0..n - 1).map(|i| sigma.value(g.block_point(i, n - 1))).collect();
    let centre = star[0].and(star[1]);
    if centre.weight() != 1 || star.iter().any(|s| !centre.is_subset(s)) {
        return Err(Error::Internal("the clique block is not mapped onto a clique copy".into()));
    }
    let mut w: Vec<BitVec> = star.iter().map(|s| *s + &centre).collect();
    w.push(centre);
    for i in 0..n {
        for j in i + 1..n {
            if sigma.value(g.block_point(i, j)) != &(&w[i] + &w[j]) {
                return Err(Error::Internal("the clique block is not mapped isomorphically".into()));
            }
        }
    }
    Ok(w)
}

/// Coordinate permutation of `N`'s ambient space sending `w_i` to `v_i`.
fn normaliser(g: &GadgetInstance, w: &[BitVec]) -> Vec<usize> {
    let dim = g.target.ambient_dim();
    let coord = |v: &BitVec| v.first_one().expect("unit vector");
    let mut perm = vec![usize::MAX; dim];
    let mut used = vec![false; dim];
    for (wi, vi) in w.iter().zip(&g.vertices) {
        perm[coord(wi)] = coord(vi);
        used[coord(vi)] = true;
    }
    let mut free = (0..dim).filter(|&c| !used[c]);
    for slot in perm.iter_mut().filter(|p| **p == usize::MAX) {
        *slot = free.next().expect("a permutation");
    }
    perm
}

fn permute(v: &BitVec, perm: &[usize]) -> BitVec {
    BitVec::from_indices(v.len(), v.ones().map(|c| perm[c]))
}

/// `σ_M` after relabelling the clique copy hit by `σ` onto `v_1..v_n`: a
/// homomorphism `M → ` the designated `M(K_4)` copy.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub hom: MatroidHom,
    /// `w_1..w_n`, the clique vertices `σ` uses.
    pub labelling: Vec<BitVec>,
}

pub fn restrict_hom(g: &GadgetInstance, sigma: &MatroidHom) -> Result<Restriction> {
    if !same_matroid(sigma.domain(), &g.gadget) || !same_matroid(sigma.codomain(), &g.target) {
        return Err(Error::Mismatch("expected a homomorphism M* → N".into()));
    }
    let labelling = block_labelling(g, sigma)?;
    let perm = normaliser(g, &labelling);
    let mut image = Vec::with_capacity(g.source.len());
    for e in 0..g.source.len() {
        let moved = permute(sigma.value(e), &perm);
        let p = g
            .k4
            .index_of(&moved)
            .ok_or_else(|| Error::Internal(format!("restriction sends point {e} outside the M(K_4) copy")))?;
        image.push(p);
    }
    let hom = MatroidHom::new(g.source.clone(), g.k4.clone(), image)
        .map_err(|_| Error::Internal("normalised restriction is not a homomorphism".into()))?;
    Ok(Restriction { hom, labelling })
}

/// How a cocircuit of `M*` meets the clique block, up to relabelling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CrossingClass {
    /// Misses the block.
    Empty,
    /// The star at clique vertex `vertex`; the constant is `w_vertex + partner`
    /// with `partner` a vertex outside the copy.
    Star { vertex: usize, partner: usize },
    /// The cut between `{a, b}` and the rest; the constant is `w_a + w_b`.
    Pair { a: usize, b: usize },
    Anomalous(String),
}

fn classify(g: &GadgetInstance, w: &[BitVec], witness: &Witness) -> CrossingClass {
    let n = g.clique_size;
    let in_cut = |i: usize, j: usize| witness.cocircuit.contains(g.block_point(i, j));
    let side: Vec<usize> = (0..n - 1).filter(|&i| in_cut(i, n - 1)).collect();
    let on_side = |i: usize| side.contains(&i);
    for i in 0..n {
        for j in i + 1..n {
            if in_cut(i, j) != (on_side(i) != on_side(j)) {
                return CrossingClass::Anomalous("block part is not a vertex cut".into());
            }
        }
    }
    let small: Vec<usize> = if side.len() * 2 <= n { side } else { (0..n).filter(|i| !on_side(*i)).collect() };
    let c = &witness.constant;
    match small.as_slice() {
        [] => CrossingClass::Empty,
        [k] => {
            let partner = c + &w[*k];
            match partner.first_one() {
                Some(p) if partner.weight() == 1 && !w.contains(&partner) => CrossingClass::Star { vertex: *k, partner: p },
                _ => CrossingClass::Anomalous(format!("star cut with constant {c}")),
            }
        }
        [a, b] if c == &(&w[*a] + &w[*b]) => CrossingClass::Pair { a: *a, b: *b },
        _ => CrossingClass::Anomalous(format!("cut of {:?} with constant {c}", small)),
    }
}

/// Classifies every admissible move `σ + c·χ_C` at `σ` by how `C` meets
/// the clique block. Vertex indices refer to the labelling `w` of `σ`.
pub fn classify_crossing_cocircuits(
    g: &GadgetInstance,
    sigma: &MatroidHom,
    caps: &Caps,
) -> Result<Vec<(Witness, CrossingClass)>> {
    let w = block_labelling(g, sigma)?;
    Ok(neighbor_moves(sigma, caps)?.into_iter().map(|(_, wit)| {
        let class = classify(g, &w, &wit);
        (wit, class)
    }).collect())
}

/// A permutation of `v_1..v_4` as an automorphism of the `M(K_4)` copy.
fn k4_permutation(g: &GadgetInstance, perm: &[usize]) -> MatroidHom {
    let image = (0..4)
        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
        .map(|(i, j)| pair_index(4, perm[i], perm[j]))
        .collect();
    MatroidHom::new(g.k4.clone(), g.k4.clone(), image).expect("vertex permutations are automorphisms")
}

/// Walk in `M*` for one edge of the source recolouring graph: add the
/// constant on `C ∪ C'`.
pub fn lifted_edge_path(g: &GadgetInstance, tau: &MatroidHom, tau_next: &MatroidHom) -> Result<RecolPath> {
    let w = adjacent(tau, tau_next)?.ok_or_else(|| Error::Argument("source maps are not adjacent".into()))?;
    let doubled = PointSet::from_indices(
        g.gadget.len(),
        w.cocircuit.iter().flat_map(|e| [e, g.twin(e)]),
    );
    if !g.gadget.is_cocycle(&doubled) {
        return Err(Error::Internal(format!("{doubled} is not a cocycle of M*")));
    }
    let path = cocycle_walk(&lift_hom(g, tau)?, &doubled, &w.constant)?;
    if path.end() != &lift_hom(g, tau_next)? {
        return Err(Error::Internal("lifted edge walk ends in the wrong place".into()));
    }
    Ok(path)
}

/// Paths in `Col(K4 copy, K4 copy)` from the identity to each vertex
/// permutation, found on demand.
struct PermutationWalks {
    perms: Vec<Vec<usize>>,
    walks: HashMap<Vec<usize>, RecolPath>,
}

impl PermutationWalks {
    fn new() -> Self {
        Self { perms: permutations(4), walks: HashMap::new() }
    }

    fn walk(&mut self, g: &GadgetInstance, perm: &[usize], caps: &Caps) -> Result<RecolPath> {
        if let Some(p) = self.walks.get(perm) {
            return Ok(p.clone());
        }
        let id = MatroidHom::identity(g.k4.clone());
        let target = k4_permutation(g, perm);
        let p = recol_decide(&id, &target, caps)?
            .ok_or_else(|| Error::Internal("vertex permutation not reachable from the identity".into()))?;
        self.walks.insert(perm.to_vec(), p.clone());
        Ok(p)
    }
}

/// Walk in the source between the normalised restrictions `ρ` and `ρ'` of
/// two adjacent gadget homs, as a recolouring on a cocycle followed by a relabelling of `V_4`,
/// realised through a lifted walk from the identity.
fn gadget_edge_path(
    g: &GadgetInstance,
    rho: &MatroidHom,
    rho_next: &MatroidHom,
    walks: &mut PermutationWalks,
    caps: &Caps,
) -> Result<Option<RecolPath>> {
    let perms = walks.perms.clone();
    for perm in &perms {
        let a = k4_permutation(g, perm);
        let mut inverse = [0; 6];
        for (i, &x) in a.image().iter().enumerate() {
            inverse[x] = i;
        }
        let middle: Vec<usize> = rho_next.image().iter().map(|&x| inverse[x]).collect();
        let diff: Vec<usize> = (0..middle.len()).filter(|&e| middle[e] != rho.image()[e]).collect();
        let constant = diff.first().map(|&e| rho.value(e) + g.k4.point(middle[e]));
        if let Some(c) = &constant {
            if diff.iter().any(|&e| &(rho.value(e) + g.k4.point(middle[e])) != c) {
                continue;
            }
        }
        let set = PointSet::from_indices(middle.len(), diff.iter().copied());
        if !g.source.is_cocycle(&set) {
            continue;
        }
        let mut path = match &constant {
            Some(c) => cocycle_walk(rho, &set, c)?,
            None => RecolPath::trivial(rho.clone()),
        };
        let middle_hom = path.end().clone();
        let relabel = walks.walk(g, perm, caps)?;
        for k in 0..relabel.len() {
            path.extend(lift_walk(&middle_hom, &relabel.homs[k], &relabel.homs[k + 1])?)?;
        }
        if path.end().image() != rho_next.image() {
            return Err(Error::Internal("gadget edge walk ends in the wrong place".into()));
        }
        return Ok(Some(path));
    }
    Ok(None)
}

/// Summary of an exhaustive check of the reduction on one instance.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ReductionReport {
    pub clique_size: usize,
    pub gadget_points: usize,
    pub gadget_rank: usize,
    pub source_homs: usize,
    pub gadget_homs: usize,
    pub source_components: usize,
    pub pairs_checked: usize,
    pub mismatches: Vec<(usize, usize)>,
    pub lifted_edges: usize,
    pub lifted_failures: usize,
    pub restrictions_checked: usize,
    pub restriction_failures: usize,
    pub gadget_edges: usize,
    pub gadget_failures: usize,
    pub crossing_empty: usize,
    pub crossing_star: usize,
    pub crossing_pair: usize,
    pub crossing_anomalous: usize,
}

impl ReductionReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
            && self.lifted_failures == 0
            && self.restriction_failures == 0
            && self.gadget_failures == 0
            && self.crossing_anomalous == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "gadget: {} points, rank {}, clique size {}", self.gadget_points, self.gadget_rank, self.clique_size);
        let _ = writeln!(out, "source homs {} in {} components; gadget homs {}", self.source_homs, self.source_components, self.gadget_homs);
        let _ = writeln!(out, "pairs checked {}, mismatches {}", self.pairs_checked, self.mismatches.len());
        let _ = writeln!(out, "lifted edge walks {}, failures {}", self.lifted_edges, self.lifted_failures);
        let _ = writeln!(out, "restrictions {}, failures {}", self.restrictions_checked, self.restriction_failures);
        let _ = writeln!(out, "gadget edge walks {}, failures {}", self.gadget_edges, self.gadget_failures);
        let _ = writeln!(
            out,
            "crossing cocircuits: empty {}, star {}, pair {}, anomalous {}",
            self.crossing_empty, self.crossing_star, self.crossing_pair, self.crossing_anomalous
        );
        let _ = writeln!(out, "result: {}", if self.holds() { "equivalence holds" } else { "FAILED" });
        out
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Checks, for every pair of homs `τ, τ'` of `M` into the `M(K_4)` copy,
/// that they are connected in `Col(M, M(K_4))` exactly when `s(τ), s(τ')`
/// are connected in `Col(M*, N)`; validates a walk for every edge in both
/// directions along the way.
pub fn verify_reduction(m: &Arc<BinaryMatroid>, n: &Arc<BinaryMatroid>, caps: &Caps) -> Result<ReductionReport> {
    let g = build_gadget(m, n)?;
    let mut report = ReductionReport {
        clique_size: g.clique_size,
        gadget_points: g.gadget.len(),
        gadget_rank: g.gadget.rank(),
        ..Default::default()
    };

    let source = build_col_graph(&g.source, &g.k4, caps)?;
    let source_labels = source.component_labels();
    report.source_homs = source.vertex_count();
    report.source_components = source.components().len();
    for (i, j, _) in &source.edges {
        report.lifted_edges += 1;
        let ok = lifted_edge_path(&g, &source.homs[*i], &source.homs[*j]).and_then(|p| p.validate());
        if ok.is_err() {
            report.lifted_failures += 1;
        }
    }

    let gadget_homs = enumerate_homs(&g.gadget, &g.target, caps)?;
    report.gadget_homs = gadget_homs.len();
    let index: HashMap<&[usize], usize> = gadget_homs.iter().enumerate().map(|(i, h)| (h.image(), i)).collect();
    let mut restricted: Vec<Option<MatroidHom>> = Vec::with_capacity(gadget_homs.len());
    for sigma in &gadget_homs {
        report.restrictions_checked += 1;
        match restrict_hom(&g, sigma) {
            Ok(r) => restricted.push(Some(r.hom)),
            Err(_) => {
                report.restriction_failures += 1;
                restricted.push(None);
            }
        }
    }

    let mut uf = UnionFind((0..gadget_homs.len()).collect());
    let mut walks = PermutationWalks::new();
    let mut seen_pairs: HashSet<(Vec<usize>, Vec<usize>)> = HashSet::new();
    for (i, sigma) in gadget_homs.iter().enumerate() {
        let labelling = block_labelling(&g, sigma).ok();
        for (next, witness) in neighbor_moves(sigma, caps)? {
            let j = *index
                .get(next.image())
                .ok_or_else(|| Error::Internal("gadget neighbour missing from the enumeration".into()))?;
            if j < i {
                continue;
            }
            uf.union(i, j);
            match labelling.as_ref().map(|w| classify(&g, w, &witness)) {
                Some(CrossingClass::Empty) => report.crossing_empty += 1,
                Some(CrossingClass::Star { .. }) => report.crossing_star += 1,
                Some(CrossingClass::Pair { .. }) => report.crossing_pair += 1,
                _ => report.crossing_anomalous += 1,
            }
            report.gadget_edges += 1;
            let (Some(rho), Some(rho_next)) = (&restricted[i], &restricted[j]) else {
                report.gadget_failures += 1;
                continue;
            };
            if !seen_pairs.insert((rho.image().to_vec(), rho_next.image().to_vec())) {
                continue;
            }
            let ok = match gadget_edge_path(&g, rho, rho_next, &mut walks, caps) {
                Ok(Some(p)) => p.validate().is_ok() && p.start() == rho,
                _ => false,
            };
            if !ok {
                report.gadget_failures += 1;
            }
        }
    }

    let lifted: Vec<usize> = source
        .homs
        .iter()
        .map(|tau| {
            let s = lift_hom(&g, tau)?;
            index
                .get(s.image())
                .copied()
                .ok_or_else(|| Error::Internal("lifted map missing from the enumeration".into()))
        })
        .collect::<Result<_>>()?;
    for a in 0..source.homs.len() {
        for b in a + 1..source.homs.len() {
            report.pairs_checked += 1;
            let small = source_labels[a] == source_labels[b];
            let big = uf.find(lifted[a]) == uf.find(lifted[b]);
            if small != big {
                report.mismatches.push((a, b));
            }
        }
    }
    Ok(report)
}

/// Outcome of checking that homomorphisms `M(K_n) → M(G)` are embeddings.
#[derive(Clone, Debug, Serialize)]
pub struct K5AutoReport {
    pub n: usize,
    pub homs: usize,
    pub embeddings: usize,
    /// Ordered cliques `0, x_1, .., x_{n-1}` in the decision graph.
    pub rooted_cliques: usize,
    /// Whether the clique route reproduces exactly the enumerated homs.
    pub routes_agree: bool,
    /// Image array of the first non-injective hom, if any.
    pub counterexample: Option<Vec<usize>>,
}

impl K5AutoReport {
    pub fn holds(&self) -> bool {
        self.embeddings == self.homs && self.routes_agree
    }
}

/// Enumerates `M(K_n) → M(G)` directly and via ordered `n`-cliques through
/// `0` in `D(M(G), A_G)`, and checks every hom is an isomorphism onto a
/// copy of `M(K_n)`.
pub fn verify_k5auto(n: usize, g: &SimpleGraph, caps: &Caps) -> Result<K5AutoReport> {
    if n < 2 {
        return Err(Error::Argument("clique size must be at least 2".into()));
    }
    let kn = Arc::new(BinaryMatroid::clique(n));
    let mg = Arc::new(BinaryMatroid::graphic(g));
    let homs = enumerate_homs(&kn, &mg, caps)?;
    let mut embeddings = 0;
    let mut counterexample = None;
    for h in &homs {
        let pts = h.image_points();
        let injective = pts.len() == kn.len();
        let copy = injective && isomorphism(&mg.restriction(&pts)?, &kn).is_some();
        if copy {
            embeddings += 1;
        } else if counterexample.is_none() {
            counterexample = Some(h.image().to_vec());
        }
    }

    // cliques through 0: x_1..x_{n-1} distinct points with pairwise sums points
    let points = mg.points();
    let mut via_cliques: HashSet<Vec<usize>> = HashSet::new();
    let mut rooted = 0usize;
    let mut chosen: Vec<usize> = Vec::new();
    fn extend(
        mg: &BinaryMatroid,
        points: &[BitVec],
        n: usize,
        chosen: &mut Vec<usize>,
        out: &mut HashSet<Vec<usize>>,
        count: &mut usize,
        cap: u64,
    ) -> Result<()> {
        if chosen.len() == n - 1 {
            *count += 1;
            if *count as u64 > cap {
                return Err(Error::Capacity { what: "clique enumeration", needed: format!("more than {cap} cliques"), cap: cap.to_string() });
            }
            let x = |i: usize| if i == 0 { BitVec::zeros(mg.ambient_dim()) } else { points[chosen[i - 1]].clone() };
            let mut image = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    image.push(mg.index_of(&(&x(i) + &x(j))).expect("clique sums are points"));
                }
            }
            out.insert(image);
            return Ok(());
        }
        for p in 0..points.len() {
            if chosen.contains(&p) || !chosen.iter().all(|&q| mg.index_of(&(&points[p] + &points[q])).is_some()) {
                continue;
            }
            chosen.push(p);
            extend(mg, points, n, chosen, out, count, cap)?;
            chosen.pop();
        }
        Ok(())
    }
    extend(&mg, points, n, &mut chosen, &mut via_cliques, &mut rooted, caps.max_homs)?;
    let enumerated: HashSet<Vec<usize>> = homs.iter().map(|h| h.image().to_vec()).collect();
    Ok(K5AutoReport {
        n,
        homs: homs.len(),
        embeddings,
        rooted_cliques: rooted,
        routes_agree: rooted == homs.len() && via_cliques == enumerated,
        counterexample,
    })
}
