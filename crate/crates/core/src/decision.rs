//! Decision graphs and the Tutte connection between homomorphisms
//! `M(G) → N` and colourings `G → D_u(N)`, plus the transfers between
//! matroid recolouring and Kempe recolouring.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use crate::error::{Caps, Error, Result};
use crate::gf2::BitVec;
use crate::graphs::{graph_homs, kempe_adjacent, GraphColouring, KempePath, SimpleGraph};
use crate::hom::{enumerate_homs, same_matroid, MatroidHom};
use crate::matroid::{BinaryMatroid, PointSet};
use crate::recolor::{adjacent, cocycle_walk, RecolPath};

/// `D(N, A)`: all vectors of the representation space, `v ~ w` when
/// `v + w` is a point. Vertex `i` is the vector whose integer value is `i`.
#[derive(Clone, Debug)]
pub struct DecisionGraph {
    matroid: Arc<BinaryMatroid>,
    graph: Arc<SimpleGraph>,
    /// Each point of the matroid in the coordinates used for the vertices.
    labels: Vec<BitVec>,
    point_of: HashMap<BitVec, usize>,
    /// Ambient vector of each coordinate axis.
    axes: Vec<BitVec>,
    as_given: bool,
}

impl DecisionGraph {
    /// With `universal`, a representation with `rank(N)` rows is used: the
    /// given one when it already has that many rows, otherwise coordinates
    /// over the cached basis. Without it, the given representation.
    pub fn new(n: Arc<BinaryMatroid>, universal: bool, caps: &Caps) -> Result<Self> {
        let as_given = !universal || n.ambient_dim() == n.rank();
        let dim = if as_given { n.ambient_dim() } else { n.rank() };
        if dim as u32 > caps.max_decision_dim {
            return Err(Error::Capacity {
                what: "decision graph",
                needed: format!("2^{dim} vertices"),
                cap: format!("2^{}", caps.max_decision_dim),
            });
        }
        let (labels, axes): (Vec<BitVec>, Vec<BitVec>) = if as_given {
            (n.points().to_vec(), (0..dim).map(|i| BitVec::unit(dim, i)).collect())
        } else {
            let labels = (0..n.len()).map(|e| n.coords(e).clone()).collect();
            (labels, n.basis().iter().map(|&b| n.point(b).clone()).collect())
        };
        let count = 1usize << dim;
        let steps: Vec<usize> =
            labels.iter().filter(|l| !l.is_zero()).map(|l| l.to_u64().expect("dim ≤ 64") as usize).collect();
        let mut edges = Vec::new();
        for v in 0..count {
            for &s in &steps {
                let w = v ^ s;
                if v < w {
                    edges.push((v, w));
                }
            }
        }
        edges.sort_unstable();
        let payload = (0..count).map(|i| BitVec::from_u64(dim, i as u64)).collect();
        let mut graph = SimpleGraph::new(count, edges)?.with_payload(payload)?;
        if n.has_loop() {
            graph = graph.reflexive();
        }
        let point_of = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        Ok(Self { matroid: n, graph: Arc::new(graph), labels, point_of, axes, as_given })
    }

    /// `D_u(N)`.
    pub fn universal(n: Arc<BinaryMatroid>, caps: &Caps) -> Result<Self> {
        Self::new(n, true, caps)
    }

    pub fn matroid(&self) -> &Arc<BinaryMatroid> {
        &self.matroid
    }

    pub fn graph(&self) -> &Arc<SimpleGraph> {
        &self.graph
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn vertex_of(&self, v: &BitVec) -> Result<usize> {
        if v.len() != self.dim() {
            return Err(Error::Dimension { expected: self.dim(), found: v.len() });
        }
        Ok(v.to_u64().expect("dim ≤ 64") as usize)
    }

    pub fn vector(&self, vertex: usize) -> BitVec {
        BitVec::from_u64(self.dim(), vertex as u64)
    }

    /// Point `e` of the matroid in vertex coordinates.
    pub fn label(&self, e: usize) -> &BitVec {
        &self.labels[e]
    }

    pub fn point_of_label(&self, v: &BitVec) -> Option<usize> {
        self.point_of.get(v).copied()
    }

    /// A vertex-coordinate vector back in the matroid's ambient space.
    pub fn to_ambient(&self, v: &BitVec) -> BitVec {
        let mut acc = BitVec::zeros(self.matroid.ambient_dim());
        for i in v.ones() {
            acc += &self.axes[i];
        }
        acc
    }

    /// An ambient vector of the point space in vertex coordinates.
    pub fn from_ambient(&self, v: &BitVec) -> Result<BitVec> {
        if self.as_given {
            return Ok(v.clone());
        }
        self.matroid
            .express(v)
            .ok_or_else(|| Error::Argument(format!("{v} is not in the point space")))
    }

    /// Vertex count, edge count and sorted degree sequence.
    pub fn summary(&self) -> String {
        let mut degrees = self.graph.degree_sequence();
        degrees.sort_unstable();
        degrees.dedup();
        format!(
            "vertices {} edges {} reflexive {} degrees {:?}",
            self.graph.vertex_count(),
            self.graph.edge_count(),
            self.graph.is_reflexive(),
            degrees
        )
    }

    pub fn to_dot(&self) -> String {
        self.graph.to_dot("decision")
    }
}

/// Root, spanning tree and a vertex order refining the tree order.
#[derive(Clone, Debug)]
pub struct TutteContext {
    graph: Arc<SimpleGraph>,
    root: usize,
    parent: Vec<Option<usize>>,
    order: Vec<usize>,
}

impl TutteContext {
    /// Breadth-first tree, children in index order.
    pub fn bfs(graph: Arc<SimpleGraph>, root: usize) -> Result<Self> {
        Self::build(graph, root, false)
    }

    /// Depth-first tree; a second canonical choice for cross-checks.
    pub fn dfs(graph: Arc<SimpleGraph>, root: usize) -> Result<Self> {
        Self::build(graph, root, true)
    }

    fn build(graph: Arc<SimpleGraph>, root: usize, depth_first: bool) -> Result<Self> {
        let n = graph.vertex_count();
        if root >= n {
            return Err(Error::Argument(format!("root {root} out of range for {n} vertices")));
        }
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut frontier = VecDeque::from([root]);
        seen[root] = true;
        if depth_first {
            seen[root] = false;
            let mut stack = vec![(root, None)];
            while let Some((v, from)) = stack.pop() {
                if seen[v] {
                    continue;
                }
                seen[v] = true;
                parent[v] = from;
                order.push(v);
                for &w in graph.neighbors(v).iter().rev() {
                    if !seen[w] {
                        stack.push((w, Some(v)));
                    }
                }
            }
        } else {
            while let Some(v) = frontier.pop_front() {
                order.push(v);
                for &w in graph.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        parent[w] = Some(v);
                        frontier.push_back(w);
                    }
                }
            }
        }
        if order.len() != n {
            return Err(Error::Precondition("the Tutte connection needs a connected graph".into()));
        }
        Ok(Self { graph, root, parent, order })
    }

    pub fn graph(&self) -> &Arc<SimpleGraph> {
        &self.graph
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }
}

fn check_graphic_domain(tau: &MatroidHom, g: &SimpleGraph) -> Result<()> {
    if **tau.domain() != BinaryMatroid::graphic(g) {
        return Err(Error::Mismatch("domain is not the graphic matroid of the context graph".into()));
    }
    Ok(())
}

/// `φ_{τ,b}`: `b` at the root, then along the tree
/// `φ(v) = φ(parent) + τ(parent v)`.
pub fn tutte_phi(tau: &MatroidHom, ctx: &TutteContext, dg: &DecisionGraph, b: &BitVec) -> Result<GraphColouring> {
    check_graphic_domain(tau, &ctx.graph)?;
    if !same_matroid(tau.codomain(), dg.matroid()) {
        return Err(Error::Mismatch("codomain differs from the decision graph's matroid".into()));
    }
    if b.len() != dg.dim() {
        return Err(Error::Dimension { expected: dg.dim(), found: b.len() });
    }
    let mut colour: Vec<Option<BitVec>> = vec![None; ctx.graph.vertex_count()];
    colour[ctx.root] = Some(b.clone());
    for &v in &ctx.order[1..] {
        let p = ctx.parent[v].expect("non-root vertices have parents");
        let edge = ctx.graph.edge_id(p, v).expect("tree edges are graph edges");
        let value = colour[p].as_ref().expect("parents come first") + dg.label(tau.image()[edge]);
        colour[v] = Some(value);
    }
    let image = colour
        .iter()
        .map(|c| dg.vertex_of(c.as_ref().expect("all vertices reached")))
        .collect::<Result<Vec<_>>>()?;
    GraphColouring::new(ctx.graph.clone(), dg.graph().clone(), image)
        .map_err(|_| Error::Internal("Tutte colouring is not a homomorphism".into()))
}

/// `τ_φ(uv) = φ(u) + φ(v)` with the given graphic domain.
pub fn tutte_tau_with(phi: &GraphColouring, dg: &DecisionGraph, domain: &Arc<BinaryMatroid>) -> Result<MatroidHom> {
    if phi.target() != dg.graph() {
        return Err(Error::Mismatch("colouring does not target this decision graph".into()));
    }
    let g = phi.source();
    let mut image = Vec::with_capacity(g.edge_count());
    for &(u, v) in g.edges() {
        let sum = dg.vector(phi.image()[u]) + dg.vector(phi.image()[v]);
        let e = dg
            .point_of_label(&sum)
            .ok_or_else(|| Error::Argument(format!("edge {u}{v} maps to a non-edge")))?;
        image.push(e);
    }
    MatroidHom::new(domain.clone(), dg.matroid().clone(), image)
}

pub fn tutte_tau(phi: &GraphColouring, dg: &DecisionGraph) -> Result<MatroidHom> {
    let domain = Arc::new(BinaryMatroid::graphic(phi.source()));
    tutte_tau_with(phi, dg, &domain)
}

/// Outcome of checking that `Φ_b` is a bijection onto the colourings with
/// root colour `b`, for every `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport {
    pub homs: usize,
    pub colourings: usize,
    /// Size of each fiber, indexed by root colour.
    pub fibers: Vec<usize>,
    pub failures: usize,
}

impl FiberReport {
    pub fn holds(&self) -> bool {
        self.failures == 0 && self.fibers.iter().all(|&f| f == self.homs)
    }
}

pub fn phi_fiber_bijection_check(g: &Arc<SimpleGraph>, n: &Arc<BinaryMatroid>, root: usize, caps: &Caps) -> Result<FiberReport> {
    let dg = DecisionGraph::universal(n.clone(), caps)?;
    let ctx = TutteContext::bfs(g.clone(), root)?;
    let domain = Arc::new(BinaryMatroid::graphic(g));
    let homs = enumerate_homs(&domain, n, caps)?;
    let colourings = graph_homs(g, dg.graph(), caps)?;
    let mut fibers = vec![0; dg.graph().vertex_count()];
    let mut by_image: HashMap<&[usize], usize> = HashMap::new();
    for (i, phi) in colourings.iter().enumerate() {
        fibers[phi.image()[root]] += 1;
        by_image.insert(phi.image(), i);
    }
    let mut failures = 0;
    for b in 0..dg.graph().vertex_count() {
        let bv = dg.vector(b);
        for tau in &homs {
            let phi = tutte_phi(tau, &ctx, &dg, &bv)?;
            let back = tutte_tau_with(&phi, &dg, &domain)?;
            if !by_image.contains_key(phi.image()) || back.image() != tau.image() {
                failures += 1;
            }
        }
    }
    for phi in &colourings {
        let tau = tutte_tau_with(phi, &dg, &domain)?;
        let again = tutte_phi(&tau, &ctx, &dg, &dg.vector(phi.image()[ctx.root]))?;
        if again.image() != phi.image() {
            failures += 1;
        }
    }
    Ok(FiberReport { homs: homs.len(), colourings: colourings.len(), fibers, failures })
}

/// Turns a Kempe path into a path in `Col(M(G), N)`: each move on `U`
/// changes `τ_φ` by its constant on the cut `δ(U)`, which is recoloured
/// one cocircuit at a time.
pub fn mk_transfer_to_matroid(path: &KempePath, dg: &DecisionGraph, domain: &Arc<BinaryMatroid>) -> Result<RecolPath> {
    let first = path.colourings.first().ok_or_else(|| Error::Argument("empty Kempe path".into()))?;
    let mut out = RecolPath::trivial(tutte_tau_with(first, dg, domain)?);
    let g = first.source();
    for (i, mv) in path.moves.iter().enumerate() {
        let mut side = vec![false; g.vertex_count()];
        for &v in &mv.vertices {
            side[v] = true;
        }
        let cut = PointSet::from_indices(g.edge_count(), g.edge_cut(&side));
        let constant = dg.to_ambient(&mv.shift);
        let step = cocycle_walk(out.end(), &cut, &constant)
            .map_err(|e| Error::Internal(format!("cut of a Kempe component did not decompose: {e}")))?;
        out.extend(step)?;
        let expected = tutte_tau_with(&path.colourings[i + 1], dg, domain)?;
        if out.end().image() != expected.image() {
            return Err(Error::Internal(format!("transferred path diverges after Kempe move {i}")));
        }
    }
    Ok(out)
}

/// Number of coordinates `t` when `N` is `PG(t-1, 2)`.
pub fn projective_dimension(n: &BinaryMatroid) -> Option<usize> {
    let t = n.rank();
    (!n.has_loop() && t < usize::BITS as usize && n.len() == (1usize << t) - 1).then_some(t)
}

/// For an edge `τ ~ τ'` of `Col(M(G), PG(t-1,2))`, a Kempe path from
/// `Φ_0(τ)` to `Φ_0(τ')`. The side `U` of the cut away from the root is
/// split into its two-colour components, toggled one after another.
/// Returns the path together with `t`.
pub fn mk_transfer_to_kempe(
    tau: &MatroidHom,
    tau_next: &MatroidHom,
    ctx: &TutteContext,
    dg: &DecisionGraph,
) -> Result<(KempePath, usize)> {
    let t = projective_dimension(dg.matroid())
        .ok_or_else(|| Error::Precondition("codomain is not a projective geometry".into()))?;
    let zero = BitVec::zeros(dg.dim());
    let phi = tutte_phi(tau, ctx, dg, &zero)?;
    let target = tutte_phi(tau_next, ctx, dg, &zero)?;
    let mut path = KempePath { colourings: vec![phi.clone()], moves: Vec::new() };
    let Some(w) = adjacent(tau, tau_next)? else {
        if tau.image() == tau_next.image() {
            return Ok((path, t));
        }
        return Err(Error::Argument("the homomorphisms are not adjacent".into()));
    };
    let g = ctx.graph();
    let keep_side = {
        let mut reach = BTreeSet::from([ctx.root()]);
        let mut queue = VecDeque::from([ctx.root()]);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                let e = g.edge_id(u, v).expect("adjacent");
                if !w.cocircuit.contains(e) && reach.insert(v) {
                    queue.push_back(v);
                }
            }
        }
        reach
    };
    let u_side: BTreeSet<usize> = (0..g.vertex_count()).filter(|v| !keep_side.contains(v)).collect();
    let b = dg.from_ambient(&w.constant)?;
    let mut current = phi.clone();
    let mut done: BTreeSet<usize> = BTreeSet::new();
    for &u in &u_side {
        if done.contains(&u) {
            continue;
        }
        let a = phi.image()[u];
        let partner = dg.vertex_of(&(&dg.vector(a) + &b))?;
        let component = g.component_of(u, |x| phi.image()[x] == a || phi.image()[x] == partner);
        if !component.is_subset(&u_side) {
            return Err(Error::Internal(format!("two-colour component of {u} leaves the cut side")));
        }
        done.extend(component.iter().copied());
        let mut image = current.image().to_vec();
        for &x in &component {
            image[x] = dg.vertex_of(&(&dg.vector(image[x]) + &b))?;
        }
        let next = GraphColouring::new(g.clone(), dg.graph().clone(), image)
            .map_err(|_| Error::Internal("Kempe toggle produced an improper colouring".into()))?;
        let witness = kempe_adjacent(&current, &next)?
            .ok_or_else(|| Error::Internal("component toggle is not a Kempe move".into()))?;
        path.colourings.push(next.clone());
        path.moves.push(witness);
        current = next;
    }
    if current.image() != target.image() {
        return Err(Error::Internal("Kempe toggles do not reach the image of the neighbour".into()));
    }
    Ok((path, t))
}

/// `a ∘ φ` for an automorphism `a` of the target. Exploratory only.
pub fn conjugate_colouring(phi: &GraphColouring, automorphism: &[usize]) -> Result<GraphColouring> {
    let target = phi.target();
    if automorphism.len() != target.vertex_count() {
        return Err(Error::Dimension { expected: target.vertex_count(), found: automorphism.len() });
    }
    let bijective = {
        let mut seen = vec![false; automorphism.len()];
        automorphism.iter().all(|&x| x < seen.len() && !std::mem::replace(&mut seen[x], true))
    };
    let preserves = target.edges().iter().all(|&(u, v)| target.has_edge(automorphism[u], automorphism[v]));
    if !bijective || !preserves {
        return Err(Error::Argument("map is not an automorphism of the target".into()));
    }
    let image = phi.image().iter().map(|&x| automorphism[x]).collect();
    GraphColouring::new(phi.source().clone(), target.clone(), image)
}

/// Translation by `b`, an automorphism of every decision graph.
pub fn translation(dg: &DecisionGraph, b: &BitVec) -> Result<Vec<usize>> {
    let shift = dg.vertex_of(b)?;
    Ok((0..dg.graph().vertex_count()).map(|v| v ^ shift).collect())
}
