//! The recolouring graph `Col(M, N)`: homomorphisms `M → N`, adjacent when
//! they differ by a constant on a single cocircuit of `M`.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Caps, Error, Result};
use crate::gf2::BitVec;
use crate::hom::{compose, enumerate_homs, same_matroid, shift_candidates, MatroidHom};
use crate::matroid::{BinaryMatroid, PointSet};

/// Why two homomorphisms are adjacent: `σ = τ + c·χ_C`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Witness {
    pub cocircuit: PointSet,
    pub constant: BitVec,
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} +{}", self.cocircuit, self.constant)
    }
}

fn check_frame(tau: &MatroidHom, sigma: &MatroidHom) -> Result<()> {
    if !same_matroid(tau.domain(), sigma.domain()) || !same_matroid(tau.codomain(), sigma.codomain()) {
        return Err(Error::Mismatch("homomorphisms have different domains or codomains".into()));
    }
    Ok(())
}

/// Points where the two maps disagree.
pub fn difference(tau: &MatroidHom, sigma: &MatroidHom) -> Result<PointSet> {
    check_frame(tau, sigma)?;
    let n = tau.image().len();
    Ok(PointSet::from_indices(n, (0..n).filter(|&e| tau.image()[e] != sigma.image()[e])))
}

/// The witness of adjacency, if any. A cocircuit difference set without a
/// constant difference would contradict linearity and is reported as an
/// internal error.
pub fn adjacent(tau: &MatroidHom, sigma: &MatroidHom) -> Result<Option<Witness>> {
    let diff = difference(tau, sigma)?;
    let Some(first) = diff.iter().next() else {
        return Ok(None);
    };
    if !tau.domain().is_cocircuit(&diff) {
        return Ok(None);
    }
    let constant = tau.value(first) + sigma.value(first);
    if diff.iter().any(|e| tau.value(e) + sigma.value(e) != constant) {
        return Err(Error::Internal(format!("difference on cocircuit {diff} is not constant")));
    }
    Ok(Some(Witness { cocircuit: diff, constant }))
}

/// Every `τ + c·χ_C` that is still a homomorphism, with its witness, sorted
/// by image array.
pub fn neighbor_moves(tau: &MatroidHom, caps: &Caps) -> Result<Vec<(MatroidHom, Witness)>> {
    let dom = tau.domain();
    let mut out = Vec::new();
    for cocircuit in dom.cocircuits(caps)?.iter() {
        let first = cocircuit.iter().next().expect("cocircuits are nonempty");
        for c in shift_candidates(tau.codomain(), tau.value(first)) {
            if let Some(next) = tau.add_on(cocircuit, &c) {
                debug_assert!(crate::hom::is_homomorphism(dom, tau.codomain(), next.image()).unwrap_or(false));
                out.push((next, Witness { cocircuit: cocircuit.clone(), constant: c }));
            }
        }
    }
    out.sort_by(|a, b| a.0.image().cmp(b.0.image()));
    out.dedup_by(|a, b| a.0.image() == b.0.image());
    Ok(out)
}

pub fn neighbors(tau: &MatroidHom, caps: &Caps) -> Result<Vec<MatroidHom>> {
    Ok(neighbor_moves(tau, caps)?.into_iter().map(|(h, _)| h).collect())
}

/// An explicitly built `Col(M, N)`.
#[derive(Clone, Debug)]
pub struct RecolouringGraph {
    pub homs: Vec<MatroidHom>,
    /// Edges `(i, j, witness)` with `i < j` and `homs[j] = homs[i] + c·χ_C`.
    pub edges: Vec<(usize, usize, Witness)>,
}

impl RecolouringGraph {
    pub fn vertex_count(&self) -> usize {
        self.homs.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.homs.len()];
        for &(i, j, _) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Component label per vertex, labels numbered by least member.
    pub fn component_labels(&self) -> Vec<usize> {
        let adj = self.adjacency();
        let mut label = vec![usize::MAX; self.homs.len()];
        let mut next = 0;
        for start in 0..self.homs.len() {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// Components as sorted index lists; the first entry of each is its
    /// lexicographically least hom.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let labels = self.component_labels();
        let count = labels.iter().max().map_or(0, |m| m + 1);
        let mut parts = vec![Vec::new(); count];
        for (v, &l) in labels.iter().enumerate() {
            parts[l].push(v);
        }
        parts
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn index_of(&self, image: &[usize]) -> Option<usize> {
        self.homs.binary_search_by(|h| h.image().cmp(image)).ok()
    }

    /// The same edge set recomputed by testing every pair with [`adjacent`].
    pub fn pairwise_edges(&self) -> Result<Vec<(usize, usize, Witness)>> {
        let mut out = Vec::new();
        for i in 0..self.homs.len() {
            for j in i + 1..self.homs.len() {
                if let Some(w) = adjacent(&self.homs[i], &self.homs[j])? {
                    out.push((i, j, w));
                }
            }
        }
        Ok(out)
    }

    /// The underlying simple graph, for isomorphism checks.
    pub fn to_simple_graph(&self) -> crate::graphs::SimpleGraph {
        crate::graphs::SimpleGraph::new(self.homs.len(), self.edges.iter().map(|&(i, j, _)| (i, j)))
            .expect("edges are distinct pairs of distinct vertices")
    }

    /// DOT with vertices labelled by image arrays and edges by witnesses.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph col {\n");
        for (i, h) in self.homs.iter().enumerate() {
            let _ = writeln!(out, "  {i} [label=\"{}\"];", h.to_line());
        }
        for (i, j, w) in &self.edges {
            let _ = writeln!(out, "  {i} -- {j} [label=\"{w}\"];");
        }
        out.push_str("}\n");
        out
    }
}

/// Builds `Col(M, N)` by enumeration and neighbour generation.
pub fn build_col_graph(m: &Arc<BinaryMatroid>, n: &Arc<BinaryMatroid>, caps: &Caps) -> Result<RecolouringGraph> {
    let homs = enumerate_homs(m, n, caps)?;
    let index: HashMap<&[usize], usize> = homs.iter().enumerate().map(|(i, h)| (h.image(), i)).collect();
    let mut edges = Vec::new();
    for (i, h) in homs.iter().enumerate() {
        for (next, w) in neighbor_moves(h, caps)? {
            let j = *index
                .get(next.image())
                .ok_or_else(|| Error::Internal("neighbour missing from the enumeration".into()))?;
            if i < j {
                edges.push((i, j, w));
            }
        }
    }
    edges.sort_by_key(|e| (e.0, e.1));
    Ok(RecolouringGraph { homs, edges })
}

/// Connected components of `Col(M, N)` as lists of indices into the
/// lexicographic enumeration.
pub fn components(m: &Arc<BinaryMatroid>, n: &Arc<BinaryMatroid>, caps: &Caps) -> Result<Vec<Vec<usize>>> {
    Ok(build_col_graph(m, n, caps)?.components())
}

/// A path in `Col(M, N)` with the witness of each step.
#[derive(Clone, Debug)]
pub struct RecolPath {
    pub homs: Vec<MatroidHom>,
    pub steps: Vec<Witness>,
}

impl RecolPath {
    pub fn trivial(tau: MatroidHom) -> Self {
        Self { homs: vec![tau], steps: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn start(&self) -> &MatroidHom {
        &self.homs[0]
    }

    pub fn end(&self) -> &MatroidHom {
        self.homs.last().expect("paths are nonempty")
    }

    /// Appends `path`, which must start where this one ends.
    pub fn extend(&mut self, path: RecolPath) -> Result<()> {
        if path.start().image() != self.end().image() {
            return Err(Error::Internal("concatenated paths do not meet".into()));
        }
        self.homs.extend(path.homs.into_iter().skip(1));
        self.steps.extend(path.steps);
        Ok(())
    }

    /// Re-checks every step with [`adjacent`] and the stated witness.
    pub fn validate(&self) -> Result<()> {
        if self.homs.len() != self.steps.len() + 1 {
            return Err(Error::Internal("path has inconsistent lengths".into()));
        }
        for (i, w) in self.steps.iter().enumerate() {
            match adjacent(&self.homs[i], &self.homs[i + 1])? {
                Some(found) if &found == w => {}
                _ => return Err(Error::Internal(format!("path step {i} is not a witnessed edge"))),
            }
        }
        Ok(())
    }
}

/// Breadth-first search from `tau` to `sigma`, expanding neighbours in
/// lexicographic order. Explores at most the component of `tau`.
pub fn recol_decide(tau: &MatroidHom, sigma: &MatroidHom, caps: &Caps) -> Result<Option<RecolPath>> {
    check_frame(tau, sigma)?;
    let mut parent: HashMap<Vec<usize>, Option<(Vec<usize>, Witness)>> = HashMap::new();
    parent.insert(tau.image().to_vec(), None);
    let mut queue = VecDeque::from([tau.clone()]);
    while let Some(current) = queue.pop_front() {
        if current.image() == sigma.image() {
            let rebuild = |im: &[usize]| MatroidHom::new_unchecked(tau.domain().clone(), tau.codomain().clone(), im.to_vec());
            let mut homs = vec![current.clone()];
            let mut steps = Vec::new();
            let mut cursor = current.image().to_vec();
            while let Some(Some((prev, w))) = parent.get(&cursor) {
                steps.push(w.clone());
                homs.push(rebuild(prev));
                cursor = prev.clone();
            }
            homs.reverse();
            steps.reverse();
            return Ok(Some(RecolPath { homs, steps }));
        }
        for (next, w) in neighbor_moves(&current, caps)? {
            if parent.contains_key(next.image()) {
                continue;
            }
            if parent.len() >= caps.max_states {
                return Err(Error::Capacity {
                    what: "recolouring search",
                    needed: format!("more than {} states", caps.max_states),
                    cap: caps.max_states.to_string(),
                });
            }
            parent.insert(next.image().to_vec(), Some((current.image().to_vec(), w)));
            queue.push_back(next);
        }
    }
    Ok(None)
}

/// Adds `c` on a cocycle one cocircuit at a time. Each intermediate map is
/// a homomorphism because every part is a cocircuit.
pub fn cocycle_walk(tau: &MatroidHom, cocycle: &PointSet, c: &BitVec) -> Result<RecolPath> {
    let mut path = RecolPath::trivial(tau.clone());
    if cocycle.is_empty() {
        return Ok(path);
    }
    if c.is_zero() {
        return Err(Error::Argument("cannot recolour by the zero constant".into()));
    }
    for part in tau.domain().cocircuit_decomposition(cocycle)? {
        let next = path
            .end()
            .add_on(&part, c)
            .ok_or_else(|| Error::Argument(format!("adding {c} on {part} leaves the codomain")))?;
        path.homs.push(next);
        path.steps.push(Witness { cocircuit: part, constant: c.clone() });
    }
    Ok(path)
}

/// For `α: M → L` and an edge `β ~ β'` of `Col(L, N)`, a walk from `β∘α`
/// to `β'∘α`: the preimage `α⁻¹(C)` is a cocycle of `M`, recoloured one
/// cocircuit at a time.
pub fn lift_walk(alpha: &MatroidHom, beta: &MatroidHom, beta_next: &MatroidHom) -> Result<RecolPath> {
    let w = adjacent(beta, beta_next)?.ok_or_else(|| Error::Argument("the outer maps are not adjacent".into()))?;
    let start = compose(beta, alpha)?;
    let preimage = PointSet::from_indices(
        alpha.image().len(),
        (0..alpha.image().len()).filter(|&e| w.cocircuit.contains(alpha.image()[e])),
    );
    if !alpha.domain().is_cocycle(&preimage) {
        return Err(Error::Internal(format!("preimage {preimage} of a cocircuit is not a cocycle")));
    }
    let path = cocycle_walk(&start, &preimage, &w.constant)?;
    if path.end() != &compose(beta_next, alpha)? {
        return Err(Error::Internal("lifted walk ends in the wrong place".into()));
    }
    Ok(path)
}

/// Image of a path under `f: N → N'`. Steps that `f` collapses are
/// dropped; the others keep their cocircuit with constant `f(c)`.
pub fn push_path(f: &MatroidHom, path: &RecolPath) -> Result<RecolPath> {
    let mut out = RecolPath::trivial(compose(f, path.start())?);
    for (i, w) in path.steps.iter().enumerate() {
        let next = compose(f, &path.homs[i + 1])?;
        if next.image() == out.end().image() {
            continue;
        }
        let constant = f.apply_vector(&w.constant)?;
        let witness = Witness { cocircuit: w.cocircuit.clone(), constant };
        out.homs.push(next);
        out.steps.push(witness);
    }
    Ok(out)
}

/// Basis elements of the domain's cached basis where `tau` and `sigma` differ.
pub fn basis_disagreements(tau: &MatroidHom, sigma: &MatroidHom) -> usize {
    tau.domain().basis().iter().filter(|&&b| tau.image()[b] != sigma.image()[b]).count()
}

/// The fundamental cocircuit of the `i`-th element of the cached basis:
/// that element together with every point whose fundamental circuit uses it.
pub fn fundamental_cocircuit(m: &BinaryMatroid, i: usize) -> PointSet {
    PointSet::from_indices(m.len(), (0..m.len()).filter(|&e| m.coords(e).get(i)))
}

/// Walks from `tau` to `sigma` fixing one basis element at a time, adding
/// the needed constant on its fundamental cocircuit. Always succeeds when
/// the codomain is a full vector space; otherwise an intermediate map may
/// leave the codomain and a precondition error is returned.
pub fn basis_walk(tau: &MatroidHom, sigma: &MatroidHom) -> Result<RecolPath> {
    check_frame(tau, sigma)?;
    let dom = tau.domain().clone();
    let mut path = RecolPath::trivial(tau.clone());
    for (i, &b) in dom.basis().iter().enumerate() {
        let c = path.end().value(b) + sigma.value(b);
        if c.is_zero() {
            continue;
        }
        let part = fundamental_cocircuit(&dom, i);
        let next = path
            .end()
            .add_on(&part, &c)
            .ok_or_else(|| Error::Precondition("basis walk left the codomain".into()))?;
        path.homs.push(next);
        path.steps.push(Witness { cocircuit: part, constant: c });
    }
    if path.end().image() != sigma.image() {
        return Err(Error::Internal("basis walk did not reach its target".into()));
    }
    Ok(path)
}
