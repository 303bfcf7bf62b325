//! Simple graphs, graph homomorphisms, single-vertex recolouring and Kempe
//! recolouring of colourings into vector-labelled (decision) graphs.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Caps, Error, Result};
use crate::gf2::BitVec;

/// An undirected graph without multi-edges.
///
/// Edges keep their insertion order because the graphic matroid of a graph
/// numbers its points in edge-list order. A graph may carry a `BitVec`
/// payload per vertex, which is how decision graphs expose their vertex
/// vectors.
#[derive(Clone, Debug)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    edge_index: HashMap<(usize, usize), usize>,
    payload: Option<Vec<BitVec>>,
    reflexive: bool,
}

impl PartialEq for SimpleGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.edges == other.edges
            && self.payload == other.payload
            && self.reflexive == other.reflexive
    }
}

impl Eq for SimpleGraph {}

fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl SimpleGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            edge_index: HashMap::new(),
            payload: None,
            reflexive: false,
        };
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::Argument(format!("edge {u}-{v} out of range for {} vertices", self.n)));
        }
        if u == v {
            return Err(Error::Argument(format!("self-loop at vertex {u}")));
        }
        let k = key(u, v);
        if self.edge_index.contains_key(&k) {
            return Err(Error::Argument(format!("duplicate edge {u}-{v}")));
        }
        self.edge_index.insert(k, self.edges.len());
        self.edges.push(k);
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.adj[u].sort_unstable();
        self.adj[v].sort_unstable();
        Ok(())
    }

    /// Attaches one vector per vertex.
    pub fn with_payload(mut self, payload: Vec<BitVec>) -> Result<Self> {
        if payload.len() != self.n {
            return Err(Error::Dimension { expected: self.n, found: payload.len() });
        }
        self.payload = Some(payload);
        Ok(self)
    }

    /// Marks every vertex as carrying a loop (a reflexive target).
    pub fn reflexive(mut self) -> Self {
        self.reflexive = true;
        self
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        Self::new(n, edges).expect("complete graph edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are valid")
    }

    /// The path with `n` vertices.
    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
    }

    pub fn empty(n: usize) -> Self {
        Self::new(n, []).expect("no edges")
    }

    /// `n`-vertex half-cube: vectors of GF(2)^(n-1), adjacent at Hamming
    /// distance 1 or 2. Vertex `i` carries the vector with integer value `i`.
    pub fn half_cube(n: usize) -> Self {
        assert!((1..=21).contains(&n));
        let dim = n - 1;
        let count = 1usize << dim;
        let mut edges = Vec::new();
        for u in 0..count {
            for v in u + 1..count {
                let d = (u ^ v).count_ones();
                if d == 1 || d == 2 {
                    edges.push((u, v));
                }
            }
        }
        let payload = (0..count).map(|i| BitVec::from_u64(dim, i as u64)).collect();
        Self::new(count, edges).expect("valid").with_payload(payload).expect("sized")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (u == v && self.reflexive) || self.edge_index.contains_key(&key(u, v))
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_index.get(&key(u, v)).copied()
    }

    pub fn payload(&self) -> Option<&[BitVec]> {
        self.payload.as_deref()
    }

    pub fn is_reflexive(&self) -> bool {
        self.reflexive
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.component_of(0, |_| true).len() == self.n
    }

    /// Vertices reachable from `start` through vertices accepted by `keep`.
    pub fn component_of(&self, start: usize, keep: impl Fn(usize) -> bool) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if keep(w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Edges with exactly one end in `side`.
    pub fn edge_cut(&self, side: &[bool]) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&i| {
                let (u, v) = self.edges[i];
                side[u] != side[v]
            })
            .collect()
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph {name} {{\n");
        for v in 0..self.n {
            let label = match &self.payload {
                Some(p) => p[v].to_string(),
                None => v.to_string(),
            };
            let _ = writeln!(out, "  {v} [label=\"{label}\"];");
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }
}

/// Finds a vertex bijection preserving adjacency, by backtracking with
/// degree pruning.
pub fn graph_isomorphism(g: &SimpleGraph, h: &SimpleGraph) -> Option<Vec<usize>> {
    if g.vertex_count() != h.vertex_count()
        || g.edge_count() != h.edge_count()
        || g.degree_sequence() != h.degree_sequence()
    {
        return None;
    }
    fn extend(
        g: &SimpleGraph,
        h: &SimpleGraph,
        map: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let v = map.len();
        if v == g.vertex_count() {
            return true;
        }
        for w in 0..h.vertex_count() {
            if used[w] || g.degree(v) != h.degree(w) {
                continue;
            }
            let consistent = (0..v).all(|u| g.has_edge(u, v) == h.has_edge(map[u], w));
            if !consistent {
                continue;
            }
            map.push(w);
            used[w] = true;
            if extend(g, h, map, used) {
                return true;
            }
            used[w] = false;
            map.pop();
        }
        false
    }
    let mut map = Vec::with_capacity(g.vertex_count());
    let mut used = vec![false; h.vertex_count()];
    extend(g, h, &mut map, &mut used).then_some(map)
}

/// A vertex map from a source graph into a target graph.
#[derive(Clone, Debug)]
pub struct GraphColouring {
    source: Arc<SimpleGraph>,
    target: Arc<SimpleGraph>,
    image: Vec<usize>,
}

impl PartialEq for GraphColouring {
    fn eq(&self, other: &Self) -> bool {
        self.image == other.image
            && (Arc::ptr_eq(&self.source, &other.source) || self.source == other.source)
            && (Arc::ptr_eq(&self.target, &other.target) || self.target == other.target)
    }
}

impl Eq for GraphColouring {}

impl GraphColouring {
    /// Validates that every source edge lands on a target edge.
    pub fn new(source: Arc<SimpleGraph>, target: Arc<SimpleGraph>, image: Vec<usize>) -> Result<Self> {
        if image.len() != source.vertex_count() {
            return Err(Error::Dimension { expected: source.vertex_count(), found: image.len() });
        }
        if let Some(&bad) = image.iter().find(|&&x| x >= target.vertex_count()) {
            return Err(Error::Argument(format!("colour {bad} is not a target vertex")));
        }
        if !is_graph_hom(&source, &target, &image) {
            return Err(Error::Argument("vertex map is not a graph homomorphism".into()));
        }
        Ok(Self { source, target, image })
    }

    pub(crate) fn new_unchecked(source: Arc<SimpleGraph>, target: Arc<SimpleGraph>, image: Vec<usize>) -> Self {
        Self { source, target, image }
    }

    pub fn source(&self) -> &Arc<SimpleGraph> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimpleGraph> {
        &self.target
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// Colour of vertex `v` as a vector; requires a vector-labelled target.
    pub fn colour_vector(&self, v: usize) -> Result<&BitVec> {
        let payload = self.target.payload().ok_or_else(not_vector_labelled)?;
        Ok(&payload[self.image[v]])
    }

    fn same_frame(&self, other: &GraphColouring) -> Result<()> {
        let same_source = Arc::ptr_eq(&self.source, &other.source) || self.source == other.source;
        let same_target = Arc::ptr_eq(&self.target, &other.target) || self.target == other.target;
        if same_source && same_target {
            Ok(())
        } else {
            Err(Error::Mismatch("colourings have different source or target graphs".into()))
        }
    }
}

fn not_vector_labelled() -> Error {
    Error::Precondition("target graph is not vector-labelled".into())
}

pub fn is_graph_hom(g: &SimpleGraph, h: &SimpleGraph, image: &[usize]) -> bool {
    g.edges().iter().all(|&(u, v)| h.has_edge(image[u], image[v]))
}

/// All homomorphisms `G → H` in lexicographic order of image arrays.
pub fn graph_homs(g: &Arc<SimpleGraph>, h: &Arc<SimpleGraph>, caps: &Caps) -> Result<Vec<GraphColouring>> {
    let space = (h.vertex_count() as f64).powi(g.vertex_count() as i32);
    if space > caps.max_homs as f64 {
        return Err(Error::Capacity {
            what: "graph homomorphism enumeration",
            needed: format!("{}^{}", h.vertex_count(), g.vertex_count()),
            cap: caps.max_homs.to_string(),
        });
    }
    let mut out = Vec::new();
    let mut image = Vec::with_capacity(g.vertex_count());
    fn extend(
        g: &SimpleGraph,
        h: &SimpleGraph,
        image: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let v = image.len();
        if v == g.vertex_count() {
            out.push(image.clone());
            return;
        }
        for c in 0..h.vertex_count() {
            let ok = g.neighbors(v).iter().filter(|&&u| u < v).all(|&u| h.has_edge(image[u], c));
            if ok {
                image.push(c);
                extend(g, h, image, out);
                image.pop();
            }
        }
    }
    let mut raw = Vec::new();
    extend(g, h, &mut image, &mut raw);
    out.extend(raw.into_iter().map(|im| GraphColouring::new_unchecked(g.clone(), h.clone(), im)));
    Ok(out)
}

/// True iff the two colourings differ on exactly one vertex.
pub fn gcol_adjacent(phi: &GraphColouring, psi: &GraphColouring) -> Result<bool> {
    phi.same_frame(psi)?;
    let diff = phi.image.iter().zip(&psi.image).filter(|(a, b)| a != b).count();
    Ok(diff == 1)
}

/// Witness for a Kempe move `ψ = φ + b·χ_U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KempeWitness {
    /// The constant added on `U`.
    pub shift: BitVec,
    /// Least colour (as a vector) present on `U`; the pair class is
    /// `{base, base + shift}`.
    pub base: BitVec,
    pub vertices: BTreeSet<usize>,
}

/// Vector-labelled target helper: vertex index of each payload vector.
struct Palette<'a> {
    vectors: &'a [BitVec],
    index: HashMap<&'a BitVec, usize>,
}

impl<'a> Palette<'a> {
    fn of(target: &'a SimpleGraph) -> Result<Self> {
        let vectors = target.payload().ok_or_else(not_vector_labelled)?;
        let index = vectors.iter().enumerate().map(|(i, v)| (v, i)).collect();
        Ok(Self { vectors, index })
    }
}

/// Connected component of `start` in the subgraph of `g` induced on
/// vertices whose colour is `a` or `b`.
fn two_colour_component(g: &SimpleGraph, image: &[usize], start: usize, a: usize, b: usize) -> BTreeSet<usize> {
    g.component_of(start, |w| image[w] == a || image[w] == b)
}

/// Decides Kempe adjacency; the witness base colour is normalised to the
/// least colour vector appearing on the toggled component.
pub fn kempe_adjacent(phi: &GraphColouring, psi: &GraphColouring) -> Result<Option<KempeWitness>> {
    phi.same_frame(psi)?;
    let palette = Palette::of(&phi.target)?;
    let g = &phi.source;
    let diff: Vec<usize> = (0..g.vertex_count()).filter(|&v| phi.image[v] != psi.image[v]).collect();
    let Some(&first) = diff.first() else {
        return Ok(None);
    };
    let shift = &palette.vectors[phi.image[first]] + &palette.vectors[psi.image[first]];
    let constant = diff
        .iter()
        .all(|&v| &palette.vectors[phi.image[v]] + &palette.vectors[psi.image[v]] == shift);
    if !constant {
        return Ok(None);
    }
    let a = phi.image[first];
    let partner = &palette.vectors[a] + &shift;
    let Some(&b) = palette.index.get(&partner) else {
        return Ok(None);
    };
    let component = two_colour_component(g, &phi.image, first, a, b);
    let diff_set: BTreeSet<usize> = diff.into_iter().collect();
    if component != diff_set {
        return Ok(None);
    }
    let base = component.iter().map(|&v| palette.vectors[phi.image[v]].clone()).min().expect("nonempty");
    Ok(Some(KempeWitness { shift, base, vertices: component }))
}

/// All colourings one Kempe move away from `phi`, sorted by image array.
///
/// A toggled component is kept only when the result is still a
/// homomorphism; on complete targets this never filters anything.
pub fn kempe_neighbors(phi: &GraphColouring) -> Result<Vec<GraphColouring>> {
    Ok(kempe_moves(phi)?.into_iter().map(|(im, _)| GraphColouring::new_unchecked(phi.source.clone(), phi.target.clone(), im)).collect())
}

pub(crate) fn kempe_moves(phi: &GraphColouring) -> Result<Vec<(Vec<usize>, KempeWitness)>> {
    let palette = Palette::of(&phi.target)?;
    let g = &phi.source;
    let target = &phi.target;
    let dim = palette.vectors.first().map_or(0, BitVec::len);
    let mut results: Vec<(Vec<usize>, KempeWitness)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for shift in palette.vectors.iter().filter(|v| !v.is_zero()) {
        debug_assert_eq!(shift.len(), dim);
        let mut done = vec![false; g.vertex_count()];
        for start in 0..g.vertex_count() {
            if done[start] {
                continue;
            }
            let a = phi.image[start];
            let partner = &palette.vectors[a] + shift;
            let Some(&b) = palette.index.get(&partner) else {
                done[start] = true;
                continue;
            };
            let component = two_colour_component(g, &phi.image, start, a, b);
            for &v in &component {
                done[v] = true;
            }
            let mut image = phi.image.clone();
            for &v in &component {
                let moved = &palette.vectors[image[v]] + shift;
                image[v] = palette.index[&moved];
            }
            if !is_graph_hom(g, target, &image) || !seen.insert(image.clone()) {
                continue;
            }
            let base = component.iter().map(|&v| palette.vectors[phi.image[v]].clone()).min().expect("nonempty");
            results.push((image, KempeWitness { shift: shift.clone(), base, vertices: component }));
        }
    }
    results.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(results)
}

/// A path of Kempe moves with the witness of every step.
#[derive(Clone, Debug)]
pub struct KempePath {
    pub colourings: Vec<GraphColouring>,
    pub moves: Vec<KempeWitness>,
}

impl KempePath {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Re-checks every step with [`kempe_adjacent`].
    pub fn validate(&self) -> Result<()> {
        if self.colourings.len() != self.moves.len() + 1 {
            return Err(Error::Internal("Kempe path has inconsistent lengths".into()));
        }
        for (i, w) in self.moves.iter().enumerate() {
            match kempe_adjacent(&self.colourings[i], &self.colourings[i + 1])? {
                Some(found) if found.shift == w.shift && found.vertices == w.vertices => {}
                _ => return Err(Error::Internal(format!("Kempe path step {i} is not a Kempe move"))),
            }
        }
        Ok(())
    }
}

/// Breadth-first search in the Kempe recolouring graph.
pub fn kempe_decide(phi: &GraphColouring, psi: &GraphColouring, caps: &Caps) -> Result<Option<KempePath>> {
    phi.same_frame(psi)?;
    let mut parent: HashMap<Vec<usize>, Option<(Vec<usize>, KempeWitness)>> = HashMap::new();
    parent.insert(phi.image.clone(), None);
    let mut queue = VecDeque::from([phi.image.clone()]);
    let rebuild = |im: Vec<usize>| GraphColouring::new_unchecked(phi.source.clone(), phi.target.clone(), im);
    while let Some(current) = queue.pop_front() {
        if current == psi.image {
            let mut colourings = vec![rebuild(current.clone())];
            let mut moves = Vec::new();
            let mut cursor = current;
            while let Some(Some((prev, w))) = parent.get(&cursor) {
                moves.push(w.clone());
                colourings.push(rebuild(prev.clone()));
                cursor = prev.clone();
            }
            colourings.reverse();
            moves.reverse();
            return Ok(Some(KempePath { colourings, moves }));
        }
        for (next, w) in kempe_moves(&rebuild(current.clone()))? {
            if parent.contains_key(&next) {
                continue;
            }
            if parent.len() >= caps.max_states {
                return Err(Error::Capacity {
                    what: "Kempe recolouring search",
                    needed: format!("more than {} states", caps.max_states),
                    cap: caps.max_states.to_string(),
                });
            }
            parent.insert(next.clone(), Some((current.clone(), w)));
            queue.push_back(next);
        }
    }
    Ok(None)
}

/// Connected components of the Kempe recolouring graph on `colourings`,
/// returned as a component label per colouring. Moves leading outside the
/// given list are an error, so pass the full vertex set.
pub fn kempe_components(colourings: &[GraphColouring]) -> Result<Vec<usize>> {
    let index: HashMap<&[usize], usize> =
        colourings.iter().enumerate().map(|(i, c)| (c.image(), i)).collect();
    let mut label = vec![usize::MAX; colourings.len()];
    let mut next = 0;
    for start in 0..colourings.len() {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = next;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for (im, _) in kempe_moves(&colourings[i])? {
                let j = *index.get(im.as_slice()).ok_or_else(|| {
                    Error::Argument("Kempe move leaves the supplied colouring set".into())
                })?;
                if label[j] == usize::MAX {
                    label[j] = next;
                    queue.push_back(j);
                }
            }
        }
        next += 1;
    }
    Ok(label)
}

/// Recolouring graph (single-vertex or Kempe) rendered as DOT.
pub fn colouring_graph_dot(colourings: &[GraphColouring], kempe: bool) -> Result<String> {
    let index: HashMap<&[usize], usize> =
        colourings.iter().enumerate().map(|(i, c)| (c.image(), i)).collect();
    let mut out = String::from(if kempe { "graph kcol {\n" } else { "graph gcol {\n" });
    for (i, c) in colourings.iter().enumerate() {
        let label: Vec<String> = c.image().iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "  {i} [label=\"{}\"];", label.join(" "));
    }
    for (i, c) in colourings.iter().enumerate() {
        let mut nbrs = BTreeSet::new();
        if kempe {
            for (im, _) in kempe_moves(c)? {
                if let Some(&j) = index.get(im.as_slice()) {
                    nbrs.insert(j);
                }
            }
        } else {
            for (j, d) in colourings.iter().enumerate() {
                if gcol_adjacent(c, d)? {
                    nbrs.insert(j);
                }
            }
        }
        for j in nbrs.into_iter().filter(|&j| j > i) {
            let _ = writeln!(out, "  {i} -- {j};");
        }
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(g: SimpleGraph) -> Arc<SimpleGraph> {
        Arc::new(g)
    }

    /// K_{2^t} with vertex `i` labelled by the vector of value `i`.
    fn vector_clique(t: usize) -> Arc<SimpleGraph> {
        let n = 1 << t;
        let payload = (0..n).map(|i| BitVec::from_u64(t, i as u64)).collect();
        arc(SimpleGraph::complete(n).with_payload(payload).unwrap())
    }

    #[test]
    fn constructors_reject_bad_edges() {
        assert!(SimpleGraph::new(3, [(0, 0)]).is_err());
        assert!(SimpleGraph::new(3, [(0, 1), (1, 0)]).is_err());
        assert!(SimpleGraph::new(3, [(0, 3)]).is_err());
    }

    #[test]
    fn hom_counts() {
        let caps = Caps::default();
        let k4 = arc(SimpleGraph::complete(4));
        assert_eq!(graph_homs(&k4, &k4, &caps).unwrap().len(), 24);
        let k3 = arc(SimpleGraph::complete(3));
        let k2 = arc(SimpleGraph::complete(2));
        assert!(graph_homs(&k3, &k2, &caps).unwrap().is_empty());
        let c5 = arc(SimpleGraph::cycle(5));
        assert_eq!(graph_homs(&c5, &k3, &caps).unwrap().len(), 30);
    }

    #[test]
    fn homs_are_sorted() {
        let c5 = arc(SimpleGraph::cycle(5));
        let k3 = arc(SimpleGraph::complete(3));
        let homs = graph_homs(&c5, &k3, &Caps::default()).unwrap();
        assert!(homs.windows(2).all(|w| w[0].image() < w[1].image()));
    }

    #[test]
    fn single_vertex_adjacency() {
        let caps = Caps::default();
        let k4 = arc(SimpleGraph::complete(4));
        let homs = graph_homs(&k4, &k4, &caps).unwrap();
        for a in &homs {
            for b in &homs {
                assert!(!gcol_adjacent(a, b).unwrap());
            }
        }
        let c5 = arc(SimpleGraph::cycle(5));
        let k3 = arc(SimpleGraph::complete(3));
        let a = GraphColouring::new(c5.clone(), k3.clone(), vec![0, 1, 0, 1, 2]).unwrap();
        let b = GraphColouring::new(c5, k3, vec![0, 2, 0, 1, 2]).unwrap();
        assert!(gcol_adjacent(&a, &b).unwrap());
    }

    #[test]
    fn kempe_toggle_of_a_component() {
        let d = vector_clique(2);
        let c4 = arc(SimpleGraph::cycle(4));
        let phi = GraphColouring::new(c4.clone(), d.clone(), vec![1, 2, 1, 2]).unwrap();
        let psi = GraphColouring::new(c4.clone(), d.clone(), vec![2, 1, 2, 1]).unwrap();
        let w = kempe_adjacent(&phi, &psi).unwrap().unwrap();
        assert_eq!(w.vertices.len(), 4);
        assert_eq!(w.shift, BitVec::from_u64(2, 3));
        assert!(kempe_neighbors(&phi).unwrap().contains(&psi));
        assert!(kempe_adjacent(&phi, &phi).unwrap().is_none());

        // half of the component is not a move
        let partial = GraphColouring::new(c4, d, vec![2, 1, 1, 2]);
        assert!(partial.is_err());
    }

    #[test]
    fn single_vertex_change_is_kempe() {
        let d = vector_clique(2);
        let p3 = arc(SimpleGraph::path(3));
        let phi = GraphColouring::new(p3.clone(), d.clone(), vec![0, 1, 0]).unwrap();
        let psi = GraphColouring::new(p3, d, vec![0, 1, 3]).unwrap();
        assert!(gcol_adjacent(&phi, &psi).unwrap());
        let w = kempe_adjacent(&phi, &psi).unwrap().unwrap();
        assert_eq!(w.vertices, BTreeSet::from([2]));
    }

    #[test]
    fn edgeless_source_moves_are_single_vertex_changes() {
        let d = vector_clique(2);
        let g = arc(SimpleGraph::empty(3));
        let phi = GraphColouring::new(g, d, vec![0, 1, 2]).unwrap();
        let nbrs = kempe_neighbors(&phi).unwrap();
        assert_eq!(nbrs.len(), 9);
        for n in &nbrs {
            assert!(gcol_adjacent(&phi, n).unwrap());
        }
    }

    #[test]
    fn kempe_neighbors_match_pairwise_scan() {
        let caps = Caps::default();
        let d = vector_clique(2);
        let c5 = arc(SimpleGraph::cycle(5));
        let all = graph_homs(&c5, &d, &caps).unwrap();
        for phi in all.iter().step_by(7) {
            let nbrs = kempe_neighbors(phi).unwrap();
            let scan: Vec<&GraphColouring> =
                all.iter().filter(|psi| kempe_adjacent(phi, psi).unwrap().is_some()).collect();
            assert_eq!(nbrs.len(), scan.len());
            for psi in scan {
                assert!(nbrs.contains(psi));
            }
        }
    }

    #[test]
    fn kempe_search_on_k4() {
        let caps = Caps::default();
        let d = vector_clique(2);
        let k4 = arc(SimpleGraph::complete(4));
        let all = graph_homs(&k4, &d, &caps).unwrap();
        let labels = kempe_components(&all).unwrap();
        assert!(labels.iter().all(|&l| l == 0));
        let path = kempe_decide(&all[0], &all[23], &caps).unwrap().unwrap();
        path.validate().unwrap();
        assert_eq!(kempe_decide(&all[3], &all[3], &caps).unwrap().unwrap().len(), 0);
    }

    #[test]
    fn kempe_requires_vector_labels() {
        let k3 = arc(SimpleGraph::complete(3));
        let phi = GraphColouring::new(k3.clone(), k3, vec![0, 1, 2]).unwrap();
        assert!(matches!(kempe_neighbors(&phi), Err(Error::Precondition(_))));
    }

    #[test]
    fn graph_isomorphism_finds_relabelling() {
        let g = SimpleGraph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let h = SimpleGraph::new(4, [(2, 0), (0, 3), (3, 1)]).unwrap();
        let map = graph_isomorphism(&g, &h).unwrap();
        for &(u, v) in g.edges() {
            assert!(h.has_edge(map[u], map[v]));
        }
        assert!(graph_isomorphism(&g, &SimpleGraph::cycle(4)).is_none());
    }

    #[test]
    fn half_cube_degrees() {
        let h = SimpleGraph::half_cube(4);
        assert_eq!(h.vertex_count(), 8);
        // 3 at distance one, 3 at distance two
        assert!((0..8).all(|v| h.degree(v) == 6));
    }
}
