//! Binary matroids given by a representing matrix with distinct columns.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Caps, Error, Result};
use crate::gf2::{BitMatrix, BitVec, XorBasis};
use crate::graphs::SimpleGraph;

/// A subset of the points of a host matroid, stored as a bitmask over point
/// indices. Symmetric difference of cycles is plain XOR.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet(BitVec);

impl PointSet {
    pub fn empty(size: usize) -> Self {
        Self(BitVec::zeros(size))
    }

    pub fn from_indices(size: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        Self(BitVec::from_indices(size, indices))
    }

    pub fn from_bits(bits: BitVec) -> Self {
        Self(bits)
    }

    pub fn bits(&self) -> &BitVec {
        &self.0
    }

    /// Size of the host ground set.
    pub fn universe(&self) -> usize {
        self.0.len()
    }

    pub fn len(&self) -> usize {
        self.0.weight()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_zero()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.get(i)
    }

    pub fn insert(&mut self, i: usize) {
        self.0.set(i, true);
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn intersection_len(&self, other: &PointSet) -> usize {
        self.0.and(&other.0).weight()
    }

    pub fn symmetric_difference(&self, other: &PointSet) -> PointSet {
        PointSet(&self.0 + &other.0)
    }

    pub fn complement(&self) -> PointSet {
        let all = BitVec::from_indices(self.universe(), 0..self.universe());
        PointSet(&self.0 + &all)
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// A binary matroid: an ordered list of distinct columns in `GF(2)^ambient_dim`.
///
/// Rank, a greedy-leftmost basis, and the coordinates of every point with
/// respect to that basis are computed at construction. Circuits and
/// cocircuits are enumerated lazily and cached.
pub struct BinaryMatroid {
    ambient_dim: usize,
    points: Vec<BitVec>,
    allows_loop: bool,
    index: HashMap<BitVec, usize>,
    basis: Vec<usize>,
    basis_position: Vec<Option<usize>>,
    coords: Vec<BitVec>,
    circuits: OnceLock<Arc<Vec<PointSet>>>,
    cocircuits: OnceLock<Arc<Vec<PointSet>>>,
}

impl Clone for BinaryMatroid {
    fn clone(&self) -> Self {
        Self::new(self.ambient_dim, self.points.clone(), self.allows_loop).expect("already validated")
    }
}

impl PartialEq for BinaryMatroid {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.allows_loop == other.allows_loop
            && self.points == other.points
    }
}

impl Eq for BinaryMatroid {}

impl fmt::Debug for BinaryMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts: Vec<String> = self.points.iter().map(|p| p.to_string()).collect();
        f.debug_struct("BinaryMatroid")
            .field("ambient_dim", &self.ambient_dim)
            .field("rank", &self.rank())
            .field("points", &pts)
            .finish()
    }
}

impl BinaryMatroid {
    /// Builds a matroid from columns of length `ambient_dim`. Zero columns
    /// (loops) are accepted only when `allow_loops` is set.
    pub fn new(ambient_dim: usize, points: Vec<BitVec>, allow_loops: bool) -> Result<Self> {
        let mut index = HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if p.len() != ambient_dim {
                return Err(Error::Dimension { expected: ambient_dim, found: p.len() });
            }
            if p.is_zero() && !allow_loops {
                return Err(Error::Loop(i));
            }
            if index.insert(p.clone(), i).is_some() {
                return Err(Error::Simplicity(p.to_string()));
            }
        }
        let mut span = XorBasis::new(ambient_dim, points.len());
        let mut basis = Vec::new();
        for (i, p) in points.iter().enumerate() {
            if span.insert(p) {
                basis.push(i);
            }
        }
        let mut basis_position = vec![None; points.len()];
        for (pos, &b) in basis.iter().enumerate() {
            basis_position[b] = Some(pos);
        }
        let coords = coordinates(ambient_dim, &points, &basis)?;
        Ok(Self {
            ambient_dim,
            points,
            allows_loop: allow_loops,
            index,
            basis,
            basis_position,
            coords,
            circuits: OnceLock::new(),
            cocircuits: OnceLock::new(),
        })
    }

    /// Builds a matroid from nonempty columns of equal length.
    pub fn from_columns(cols: Vec<BitVec>, allow_loops: bool) -> Result<Self> {
        let dim = cols
            .first()
            .map(BitVec::len)
            .ok_or_else(|| Error::Argument("a matroid needs at least one column".into()))?;
        Self::new(dim, cols, allow_loops)
    }

    /// Parses columns written as bitstrings.
    pub fn from_strings(cols: &[&str], allow_loops: bool) -> Result<Self> {
        let parsed = cols.iter().map(|c| BitVec::parse(c)).collect::<Result<Vec<_>>>()?;
        Self::from_columns(parsed, allow_loops)
    }

    /// The graphic matroid in its standard representation: the edge `ij`
    /// becomes `v_i + v_j` in `GF(2)^|V|`, in edge-list order.
    pub fn graphic(g: &SimpleGraph) -> Self {
        let n = g.vertex_count();
        let points = g.edges().iter().map(|&(u, v)| BitVec::from_indices(n, [u, v])).collect();
        Self::new(n, points, false).expect("graph edges give distinct nonzero columns")
    }

    /// `M(K_n)`, graphically represented.
    pub fn clique(n: usize) -> Self {
        Self::graphic(&SimpleGraph::complete(n))
    }

    /// `M^ℓ(K_n)`: the columns of length `n` with zero or two nonzero entries.
    pub fn looped_clique(n: usize) -> Self {
        let mut points = vec![BitVec::zeros(n)];
        points.extend(Self::clique(n).points);
        Self::new(n, points, true).expect("distinct columns")
    }

    /// `PG(t,2)`: the nonzero vectors of `GF(2)^(t+1)`; with `looped` the
    /// zero vector is added, giving `PG^ℓ(t,2)`.
    pub fn projective_geometry(t: usize, looped: bool) -> Self {
        let dim = t + 1;
        assert!(dim <= 20, "projective geometry too large");
        let start = if looped { 0 } else { 1 };
        let points = (start..1u64 << dim).map(|v| BitVec::from_u64(dim, v)).collect();
        Self::new(dim, points, looped).expect("distinct columns")
    }

    /// The single loop `M^ℓ(K_1)`.
    pub fn single_loop() -> Self {
        Self::new(1, vec![BitVec::zeros(1)], true).expect("one zero column")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn points(&self) -> &[BitVec] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &BitVec {
        &self.points[i]
    }

    pub fn allows_loop(&self) -> bool {
        self.allows_loop
    }

    pub fn has_loop(&self) -> bool {
        self.points.iter().any(BitVec::is_zero)
    }

    /// Point index of a vector, if it is a point.
    pub fn index_of(&self, v: &BitVec) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    /// Position of point `i` in the cached basis, if it is a basis element.
    pub fn basis_position(&self, i: usize) -> Option<usize> {
        self.basis_position[i]
    }

    /// Coordinates of point `i` over the cached basis (length = rank).
    pub fn coords(&self, i: usize) -> &BitVec {
        &self.coords[i]
    }

    pub fn matrix(&self) -> BitMatrix {
        BitMatrix::from_columns(self.ambient_dim, self.points.clone()).expect("uniform columns")
    }

    pub fn full_set(&self) -> PointSet {
        PointSet::from_indices(self.len(), 0..self.len())
    }

    pub fn rank_of(&self, set: &PointSet) -> usize {
        let mut span = XorBasis::new(self.ambient_dim, self.len());
        for i in set.iter() {
            span.insert(&self.points[i]);
        }
        span.rank()
    }

    pub fn is_independent(&self, set: &PointSet) -> bool {
        self.rank_of(set) == set.len()
    }

    /// Sum of the points in `set`.
    pub fn sum(&self, set: &PointSet) -> BitVec {
        let mut acc = BitVec::zeros(self.ambient_dim);
        for i in set.iter() {
            acc += &self.points[i];
        }
        acc
    }

    /// True iff the points of `set` sum to zero.
    pub fn is_cycle(&self, set: &PointSet) -> bool {
        self.sum(set).is_zero()
    }

    /// A circuit is a nonempty cycle each of whose proper subsets is independent.
    pub fn is_circuit(&self, set: &PointSet) -> bool {
        !set.is_empty() && self.is_cycle(set) && self.rank_of(set) + 1 == set.len()
    }

    /// True iff `set` meets every fundamental circuit evenly, i.e. its
    /// indicator lies in the row space of the representation.
    pub fn is_cocycle(&self, set: &PointSet) -> bool {
        (0..self.len())
            .filter(|&e| self.basis_position[e].is_none())
            .all(|e| self.fundamental_circuit_unchecked(e).intersection_len(set).is_multiple_of(2))
    }

    /// A nonempty cocycle whose complement has rank `rank − 1` (a hyperplane)
    /// is a cocircuit, and every cocircuit is of that form.
    pub fn is_cocircuit(&self, set: &PointSet) -> bool {
        !set.is_empty() && self.is_cocycle(set) && self.rank_of(&set.complement()) + 1 == self.rank()
    }

    fn fundamental_circuit_unchecked(&self, e: usize) -> PointSet {
        let mut set = PointSet::from_indices(self.len(), self.coords[e].ones().map(|p| self.basis[p]));
        set.insert(e);
        set
    }

    /// The unique circuit inside `basis ∪ {e}` for the cached basis.
    pub fn fundamental_circuit(&self, e: usize) -> Result<PointSet> {
        if e >= self.len() {
            return Err(Error::Argument(format!("point {e} out of range")));
        }
        if self.basis_position[e].is_some() {
            return Err(Error::Argument(format!("point {e} is in the basis")));
        }
        Ok(self.fundamental_circuit_unchecked(e))
    }

    /// Fundamental circuit of `e` with respect to an arbitrary basis.
    pub fn fundamental_circuit_in(&self, basis: &[usize], e: usize) -> Result<PointSet> {
        if basis.contains(&e) {
            return Err(Error::Argument(format!("point {e} is in the basis")));
        }
        let coords = self.coordinates_in(basis)?;
        let mut set = PointSet::from_indices(self.len(), coords[e].ones().map(|p| basis[p]));
        set.insert(e);
        Ok(set)
    }

    /// Coordinates of every point over the given basis (which must be one).
    pub fn coordinates_in(&self, basis: &[usize]) -> Result<Vec<BitVec>> {
        if basis.iter().any(|&b| b >= self.len()) {
            return Err(Error::Argument("basis index out of range".into()));
        }
        let set = PointSet::from_indices(self.len(), basis.iter().copied());
        if set.len() != basis.len() || !self.is_independent(&set) || basis.len() != self.rank() {
            return Err(Error::Argument("the given points do not form a basis".into()));
        }
        coordinates(self.ambient_dim, &self.points, basis)
    }

    /// Expresses an ambient vector over the cached basis, if it lies in the
    /// point space.
    pub fn express(&self, v: &BitVec) -> Option<BitVec> {
        let mut span = XorBasis::new(self.ambient_dim, self.rank());
        for &b in &self.basis {
            span.insert(&self.points[b]);
        }
        span.express(v)
    }

    /// All circuits, by sweeping the cycle space and keeping minimal supports.
    pub fn circuits(&self, caps: &Caps) -> Result<Arc<Vec<PointSet>>> {
        if let Some(c) = self.circuits.get() {
            return Ok(c.clone());
        }
        let corank = self.len() - self.rank();
        if corank > caps.max_rank as usize {
            return Err(Error::Capacity {
                what: "circuit enumeration",
                needed: format!("2^{corank}"),
                cap: format!("2^{}", caps.max_rank),
            });
        }
        let generators: Vec<BitVec> = (0..self.len())
            .filter(|&e| self.basis_position[e].is_none())
            .map(|e| self.fundamental_circuit_unchecked(e).0)
            .collect();
        let mut cycles = Vec::with_capacity(1 << generators.len());
        let mut current = BitVec::zeros(self.len());
        for step in 1u64..(1u64 << generators.len()) {
            current.xor_with(&generators[step.trailing_zeros() as usize]);
            cycles.push(current.clone());
        }
        let found = Arc::new(minimal_supports(cycles));
        Ok(self.circuits.get_or_init(|| found).clone())
    }

    /// All cocircuits, by sweeping the row space and keeping minimal supports.
    pub fn cocircuits(&self, caps: &Caps) -> Result<Arc<Vec<PointSet>>> {
        if let Some(c) = self.cocircuits.get() {
            return Ok(c.clone());
        }
        let space = self.matrix().row_space(caps.max_rank)?;
        let found = Arc::new(minimal_supports(space.filter(|v| !v.is_zero()).collect()));
        Ok(self.cocircuits.get_or_init(|| found).clone())
    }

    /// Splits a cocycle into disjoint cocircuits.
    ///
    /// Each round closes the complement of the residual, extends it inside
    /// the residual to a hyperplane, and removes the complementary cocircuit.
    pub fn cocircuit_decomposition(&self, cocycle: &PointSet) -> Result<Vec<PointSet>> {
        if cocycle.universe() != self.len() {
            return Err(Error::Dimension { expected: self.len(), found: cocycle.universe() });
        }
        if !self.is_cocycle(cocycle) {
            return Err(Error::Argument(format!("{cocycle} is not a cocycle")));
        }
        let mut residual = cocycle.clone();
        let mut parts = Vec::new();
        while !residual.is_empty() {
            let mut span = XorBasis::new(self.ambient_dim, self.len());
            for i in residual.complement().iter() {
                span.insert(&self.points[i]);
            }
            for i in residual.iter() {
                if span.rank() + 1 >= self.rank() {
                    break;
                }
                span.insert(&self.points[i]);
            }
            let part = PointSet::from_indices(
                self.len(),
                (0..self.len()).filter(|&i| !span.contains(&self.points[i])),
            );
            if part.is_empty() || !part.is_subset(&residual) || !self.is_cocircuit(&part) {
                return Err(Error::Internal(format!("could not split cocycle {cocycle}")));
            }
            residual = residual.symmetric_difference(&part);
            parts.push(part);
        }
        Ok(parts)
    }

    /// The restriction of this matroid to the given points, in the given order.
    pub fn restriction(&self, indices: &[usize]) -> Result<BinaryMatroid> {
        let points = indices.iter().map(|&i| self.points[i].clone()).collect::<Vec<_>>();
        let looped = points.iter().any(BitVec::is_zero);
        BinaryMatroid::new(self.ambient_dim, points, looped)
    }

    pub fn to_dot_label(&self) -> String {
        self.points.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")
    }
}

fn coordinates(ambient_dim: usize, points: &[BitVec], basis: &[usize]) -> Result<Vec<BitVec>> {
    let mut span = XorBasis::new(ambient_dim, basis.len());
    for &b in basis {
        span.insert(&points[b]);
    }
    points
        .iter()
        .map(|p| span.express(p).ok_or_else(|| Error::Internal("point outside the span of its basis".into())))
        .collect()
}

/// Keeps the supports not containing another kept support, in vector order.
fn minimal_supports(mut candidates: Vec<BitVec>) -> Vec<PointSet> {
    candidates.sort_by(|a, b| a.weight().cmp(&b.weight()).then_with(|| a.cmp(b)));
    let mut kept: Vec<BitVec> = Vec::new();
    for c in candidates {
        if !kept.iter().any(|k| k.is_subset(&c)) {
            kept.push(c);
        }
    }
    kept.sort();
    kept.into_iter().map(PointSet).collect()
}

/// Finds a bijection of points preserving cycles in both directions.
///
/// Backtracks over images of the first matroid's basis; every other point
/// is forced by linearity, so each partial assignment is checked as soon
/// as the points it determines are known.
pub fn isomorphism(m1: &BinaryMatroid, m2: &BinaryMatroid) -> Option<Vec<usize>> {
    if m1.len() != m2.len() || m1.rank() != m2.rank() || m1.has_loop() != m2.has_loop() {
        return None;
    }
    let r = m1.rank();
    // points whose coordinates are complete once basis position k is assigned
    let mut ready: Vec<Vec<usize>> = vec![Vec::new(); r + 1];
    for e in 0..m1.len() {
        if m1.basis_position(e).is_none() {
            let level = m1.coords(e).ones().last().map_or(0, |p| p + 1);
            ready[level].push(e);
        }
    }
    struct Search<'a> {
        m1: &'a BinaryMatroid,
        m2: &'a BinaryMatroid,
        ready: Vec<Vec<usize>>,
        image: Vec<Option<usize>>,
        used: Vec<bool>,
        basis_images: Vec<BitVec>,
    }
    impl Search<'_> {
        fn forced(&self, e: usize) -> BitVec {
            let mut acc = BitVec::zeros(self.m2.ambient_dim());
            for p in self.m1.coords(e).ones() {
                acc += &self.basis_images[p];
            }
            acc
        }

        /// Assigns the points ready at `level`; returns the ones assigned or
        /// `None` after undoing a conflict.
        fn settle(&mut self, level: usize) -> Option<Vec<usize>> {
            let mut assigned = Vec::new();
            for idx in 0..self.ready[level].len() {
                let e = self.ready[level][idx];
                match self.m2.index_of(&self.forced(e)) {
                    Some(t) if !self.used[t] => {
                        self.used[t] = true;
                        self.image[e] = Some(t);
                        assigned.push(e);
                    }
                    _ => {
                        self.undo(&assigned);
                        return None;
                    }
                }
            }
            Some(assigned)
        }

        fn undo(&mut self, assigned: &[usize]) {
            for &e in assigned {
                let t = self.image[e].take().expect("assigned");
                self.used[t] = false;
            }
        }

        fn run(&mut self, level: usize, span: &XorBasis) -> bool {
            if level == self.m1.rank() {
                return true;
            }
            let b = self.m1.basis()[level];
            for t in 0..self.m2.len() {
                if self.used[t] || span.contains(self.m2.point(t)) {
                    continue;
                }
                let mut next_span = span.clone();
                next_span.insert(self.m2.point(t));
                self.used[t] = true;
                self.image[b] = Some(t);
                self.basis_images.push(self.m2.point(t).clone());
                if let Some(assigned) = self.settle(level + 1) {
                    if self.run(level + 1, &next_span) {
                        return true;
                    }
                    self.undo(&assigned);
                }
                self.basis_images.pop();
                self.image[b] = None;
                self.used[t] = false;
            }
            false
        }
    }
    let mut search = Search {
        m1,
        m2,
        ready,
        image: vec![None; m1.len()],
        used: vec![false; m2.len()],
        basis_images: Vec::with_capacity(r),
    };
    search.settle(0)?;
    let span = XorBasis::new(m2.ambient_dim(), r.max(1));
    if search.run(0, &span) {
        search.image.into_iter().collect()
    } else {
        None
    }
}

/// An injective copy of `M(K_n)` inside a matroid, found as an `n`-clique
/// through the zero vertex of the decision graph: `anchors[0] = 0` and the
/// point for the pair `i < j` is `anchors[i] + anchors[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueCopy {
    pub anchors: Vec<BitVec>,
    /// Host point index for each pair `(i, j)`, `i < j`, in lexicographic order.
    pub pair_points: Vec<usize>,
}

impl CliqueCopy {
    pub fn size(&self) -> usize {
        self.anchors.len()
    }

    /// Host point index of the pair `{i, j}`.
    pub fn pair_point(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        let n = self.anchors.len();
        let offset = i * n - i * (i + 1) / 2;
        self.pair_points[offset + (j - i - 1)]
    }
}

/// Looks for a copy of `M(K_n)` in `host`: nonzero anchors `x_1..x_{n-1}`
/// that are linearly independent, are points, and whose pairwise sums are
/// points. The first copy in lexicographic order of anchor indices wins.
pub fn find_clique_copy(host: &BinaryMatroid, n: usize) -> Option<CliqueCopy> {
    if n == 0 {
        return None;
    }
    let candidates: Vec<usize> = (0..host.len()).filter(|&i| !host.point(i).is_zero()).collect();
    fn extend(
        host: &BinaryMatroid,
        candidates: &[usize],
        chosen: &mut Vec<usize>,
        span: &XorBasis,
        need: usize,
    ) -> bool {
        if chosen.len() == need {
            return true;
        }
        let start = chosen.last().map_or(0, |&last| {
            candidates.iter().position(|&c| c == last).expect("chosen from candidates") + 1
        });
        for &c in &candidates[start..] {
            let x = host.point(c);
            if span.contains(x) {
                continue;
            }
            if !chosen.iter().all(|&o| host.index_of(&(x + host.point(o))).is_some()) {
                continue;
            }
            let mut next = span.clone();
            next.insert(x);
            chosen.push(c);
            if extend(host, candidates, chosen, &next, need) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    let span = XorBasis::new(host.ambient_dim(), n.max(1));
    if !extend(host, &candidates, &mut chosen, &span, n - 1) {
        return None;
    }
    let mut anchors = vec![BitVec::zeros(host.ambient_dim())];
    anchors.extend(chosen.iter().map(|&c| host.point(c).clone()));
    let mut pair_points = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pair_points.push(host.index_of(&(&anchors[i] + &anchors[j])).expect("checked during search"));
        }
    }
    Some(CliqueCopy { anchors, pair_points })
}
