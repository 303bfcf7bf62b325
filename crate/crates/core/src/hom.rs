//! Matroid homomorphisms: point maps that are linear on point spaces.
//!
//! Also retractions, dismantling retractions, and the search for a
//! dismantling sequence down to a loop or a single edge.

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use crate::error::{Caps, Error, Result};
use crate::gf2::BitVec;
use crate::matroid::{isomorphism, BinaryMatroid, CliqueCopy, PointSet};

/// A homomorphism `domain → codomain`, stored as the codomain point index of
/// each domain point.
#[derive(Clone)]
pub struct MatroidHom {
    domain: Arc<BinaryMatroid>,
    codomain: Arc<BinaryMatroid>,
    image: Vec<usize>,
}

impl PartialEq for MatroidHom {
    fn eq(&self, other: &Self) -> bool {
        self.image == other.image
            && same_matroid(&self.domain, &other.domain)
            && same_matroid(&self.codomain, &other.codomain)
    }
}

impl Eq for MatroidHom {}

impl std::hash::Hash for MatroidHom {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.image.hash(state);
    }
}

impl fmt::Debug for MatroidHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatroidHom{:?}", self.image)
    }
}

pub(crate) fn same_matroid(a: &Arc<BinaryMatroid>, b: &Arc<BinaryMatroid>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn check_indices(dom: &BinaryMatroid, cod: &BinaryMatroid, image: &[usize]) -> Result<()> {
    if image.len() != dom.len() {
        return Err(Error::Dimension { expected: dom.len(), found: image.len() });
    }
    if let Some(&bad) = image.iter().find(|&&t| t >= cod.len()) {
        return Err(Error::Argument(format!("image index {bad} out of range for {} points", cod.len())));
    }
    Ok(())
}

/// Sum of the images of the basis elements in `coords`.
fn forced_image(dom: &BinaryMatroid, cod: &BinaryMatroid, basis_images: &[usize], coords: &BitVec) -> BitVec {
    let mut acc = BitVec::zeros(cod.ambient_dim());
    for p in coords.ones() {
        acc += cod.point(basis_images[p]);
    }
    debug_assert!(coords.len() == dom.rank());
    acc
}

/// Checks the fundamental circuits of the cached basis; by linearity this
/// covers every circuit. Loops are fundamental circuits of size one, so a
/// loop must land on a loop.
pub fn is_homomorphism(dom: &BinaryMatroid, cod: &BinaryMatroid, image: &[usize]) -> Result<bool> {
    check_indices(dom, cod, image)?;
    let basis_images: Vec<usize> = dom.basis().iter().map(|&b| image[b]).collect();
    Ok((0..dom.len())
        .filter(|&e| dom.basis_position(e).is_none())
        .all(|e| &forced_image(dom, cod, &basis_images, dom.coords(e)) == cod.point(image[e])))
}

/// Slow cross-check: every circuit of the domain maps to a zero sum.
pub fn is_homomorphism_exhaustive(
    dom: &BinaryMatroid,
    cod: &BinaryMatroid,
    image: &[usize],
    caps: &Caps,
) -> Result<bool> {
    check_indices(dom, cod, image)?;
    let circuits = dom.circuits(caps)?;
    Ok(circuits.iter().all(|z| {
        let mut acc = BitVec::zeros(cod.ambient_dim());
        for e in z.iter() {
            acc += cod.point(image[e]);
        }
        acc.is_zero()
    }))
}

impl MatroidHom {
    /// Validates the map before wrapping it.
    pub fn new(domain: Arc<BinaryMatroid>, codomain: Arc<BinaryMatroid>, image: Vec<usize>) -> Result<Self> {
        if !is_homomorphism(&domain, &codomain, &image)? {
            return Err(Error::Argument("point map is not a matroid homomorphism".into()));
        }
        Ok(Self { domain, codomain, image })
    }

    pub(crate) fn new_unchecked(domain: Arc<BinaryMatroid>, codomain: Arc<BinaryMatroid>, image: Vec<usize>) -> Self {
        Self { domain, codomain, image }
    }

    pub fn identity(m: Arc<BinaryMatroid>) -> Self {
        let image = (0..m.len()).collect();
        Self { domain: m.clone(), codomain: m, image }
    }

    pub fn domain(&self) -> &Arc<BinaryMatroid> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<BinaryMatroid> {
        &self.codomain
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn into_image(self) -> Vec<usize> {
        self.image
    }

    /// Image of domain point `e` as a vector.
    pub fn value(&self, e: usize) -> &BitVec {
        self.codomain.point(self.image[e])
    }

    /// Same map, reinterpreted with another (equal) codomain or domain handle.
    pub fn with_frame(&self, domain: Arc<BinaryMatroid>, codomain: Arc<BinaryMatroid>) -> Result<Self> {
        if !same_matroid(&domain, &self.domain) || !same_matroid(&codomain, &self.codomain) {
            return Err(Error::Mismatch("frame differs from the map's matroids".into()));
        }
        Ok(Self { domain, codomain, image: self.image.clone() })
    }

    /// The linear map of point spaces applied to a vector of `P(domain)`.
    pub fn apply_vector(&self, v: &BitVec) -> Result<BitVec> {
        let coords = self
            .domain
            .express(v)
            .ok_or_else(|| Error::Argument(format!("{v} is not in the domain point space")))?;
        let basis_images: Vec<usize> = self.domain.basis().iter().map(|&b| self.image[b]).collect();
        Ok(forced_image(&self.domain, &self.codomain, &basis_images, &coords))
    }

    /// `τ + c·χ_C`, when every shifted value is still a codomain point.
    pub fn add_on(&self, set: &PointSet, c: &BitVec) -> Option<MatroidHom> {
        let mut image = self.image.clone();
        for e in set.iter() {
            image[e] = self.codomain.index_of(&(self.value(e) + c))?;
        }
        Some(Self { domain: self.domain.clone(), codomain: self.codomain.clone(), image })
    }

    /// Sorted, deduplicated codomain indices hit by the map.
    pub fn image_points(&self) -> Vec<usize> {
        let mut pts = self.image.clone();
        pts.sort_unstable();
        pts.dedup();
        pts
    }

    pub fn is_endomorphism(&self) -> bool {
        same_matroid(&self.domain, &self.codomain)
    }

    /// Reads off the images of the domain's cached basis.
    pub fn basis_images(&self) -> Vec<usize> {
        self.domain.basis().iter().map(|&b| self.image[b]).collect()
    }

    /// The map on points as text: one codomain index per domain point.
    pub fn to_line(&self) -> String {
        self.image.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
    }
}

/// Extends images of the domain's cached basis linearly. Absent when some
/// forced value is not a codomain point.
pub fn linear_extension(
    dom: &Arc<BinaryMatroid>,
    cod: &Arc<BinaryMatroid>,
    basis_images: &[usize],
) -> Result<Option<MatroidHom>> {
    linear_extension_from(dom, cod, dom.basis(), basis_images)
}

/// Linear extension from an arbitrary basis of the domain.
pub fn linear_extension_from(
    dom: &Arc<BinaryMatroid>,
    cod: &Arc<BinaryMatroid>,
    basis: &[usize],
    basis_images: &[usize],
) -> Result<Option<MatroidHom>> {
    if basis_images.len() != basis.len() {
        return Err(Error::Dimension { expected: basis.len(), found: basis_images.len() });
    }
    if let Some(&bad) = basis_images.iter().find(|&&t| t >= cod.len()) {
        return Err(Error::Argument(format!("image index {bad} out of range")));
    }
    let coords = dom.coordinates_in(basis)?;
    let mut image = Vec::with_capacity(dom.len());
    for c in &coords {
        let mut acc = BitVec::zeros(cod.ambient_dim());
        for p in c.ones() {
            acc += cod.point(basis_images[p]);
        }
        match cod.index_of(&acc) {
            Some(t) => image.push(t),
            None => return Ok(None),
        }
    }
    Ok(Some(MatroidHom::new_unchecked(dom.clone(), cod.clone(), image)))
}

/// All homomorphisms as raw image arrays, sorted lexicographically.
pub fn enumerate_images(dom: &BinaryMatroid, cod: &BinaryMatroid, caps: &Caps) -> Result<Vec<Vec<usize>>> {
    let space = (cod.len() as f64).powi(dom.rank() as i32);
    if space > caps.max_homs as f64 {
        return Err(Error::Capacity {
            what: "homomorphism enumeration",
            needed: format!("{}^{}", cod.len(), dom.rank()),
            cap: caps.max_homs.to_string(),
        });
    }
    let r = dom.rank();
    let mut ready: Vec<Vec<usize>> = vec![Vec::new(); r + 1];
    for e in 0..dom.len() {
        if dom.basis_position(e).is_none() {
            let level = dom.coords(e).ones().last().map_or(0, |p| p + 1);
            ready[level].push(e);
        }
    }
    struct Search<'a> {
        dom: &'a BinaryMatroid,
        cod: &'a BinaryMatroid,
        ready: Vec<Vec<usize>>,
        image: Vec<usize>,
        basis_images: Vec<usize>,
        out: Vec<Vec<usize>>,
    }
    impl Search<'_> {
        fn settle(&mut self, level: usize) -> bool {
            for idx in 0..self.ready[level].len() {
                let e = self.ready[level][idx];
                let v = forced_image(self.dom, self.cod, &self.basis_images, self.dom.coords(e));
                match self.cod.index_of(&v) {
                    Some(t) => self.image[e] = t,
                    None => return false,
                }
            }
            true
        }

        fn run(&mut self, level: usize) {
            if level == self.dom.rank() {
                self.out.push(self.image.clone());
                return;
            }
            let b = self.dom.basis()[level];
            for t in 0..self.cod.len() {
                self.image[b] = t;
                self.basis_images.push(t);
                if self.settle(level + 1) {
                    self.run(level + 1);
                }
                self.basis_images.pop();
            }
        }
    }
    let mut search = Search {
        dom,
        cod,
        ready,
        image: vec![usize::MAX; dom.len()],
        basis_images: Vec::with_capacity(r),
        out: Vec::new(),
    };
    if search.settle(0) {
        search.run(0);
    }
    let mut out = search.out;
    out.sort();
    Ok(out)
}

/// All homomorphisms, each once, in lexicographic order of image arrays.
pub fn enumerate_homs(dom: &Arc<BinaryMatroid>, cod: &Arc<BinaryMatroid>, caps: &Caps) -> Result<Vec<MatroidHom>> {
    Ok(enumerate_images(dom, cod, caps)?
        .into_iter()
        .map(|im| MatroidHom::new_unchecked(dom.clone(), cod.clone(), im))
        .collect())
}

/// `β ∘ α`.
pub fn compose(beta: &MatroidHom, alpha: &MatroidHom) -> Result<MatroidHom> {
    if !same_matroid(&alpha.codomain, &beta.domain) {
        return Err(Error::Mismatch("codomain of the inner map is not the domain of the outer map".into()));
    }
    let image = alpha.image.iter().map(|&m| beta.image[m]).collect();
    Ok(MatroidHom::new_unchecked(alpha.domain.clone(), beta.codomain.clone(), image))
}

/// A retraction here is an idempotent endomorphism: it fixes its image
/// pointwise, so the image is a submatroid with `r ∘ inclusion = id`.
pub fn is_retraction(r: &MatroidHom) -> Result<bool> {
    if !r.is_endomorphism() {
        return Err(Error::Mismatch("a retraction must be an endomorphism".into()));
    }
    Ok(r.image.iter().all(|&m| r.image[m] == m))
}

/// Nonzero vectors `c` of the codomain point space such that `value + c`
/// is a point, i.e. the only constants that can be added at a point with
/// that value.
pub(crate) fn shift_candidates(cod: &BinaryMatroid, value: &BitVec) -> Vec<BitVec> {
    let mut out: Vec<BitVec> = cod.points().iter().map(|p| p + value).filter(|c| !c.is_zero()).collect();
    out.sort();
    out
}

/// Every idempotent `id + c·χ_C` over cocircuits `C` of `n` and nonzero
/// constants `c` of its point space. Sorted by image array.
pub fn dismantling_retractions(n: &Arc<BinaryMatroid>, caps: &Caps) -> Result<Vec<MatroidHom>> {
    let id = MatroidHom::identity(n.clone());
    let mut found = Vec::new();
    for cocircuit in n.cocircuits(caps)?.iter() {
        let first = cocircuit.iter().next().expect("cocircuits are nonempty");
        for c in shift_candidates(n, n.point(first)) {
            let Some(r) = id.add_on(cocircuit, &c) else { continue };
            if !is_homomorphism(n, n, &r.image)? {
                return Err(Error::Internal("adding a constant on a cocircuit broke linearity".into()));
            }
            if is_retraction(&r)? {
                found.push(r);
            }
        }
    }
    found.sort_by(|a, b| a.image.cmp(&b.image));
    found.dedup();
    Ok(found)
}

/// The image of an endomorphism as a matroid in its own right.
pub fn image_matroid(r: &MatroidHom) -> Result<BinaryMatroid> {
    r.codomain.restriction(&r.image_points())
}

/// Re-targets a retraction onto its image: the step `N → N'` of a
/// dismantling sequence as a homomorphism into the smaller matroid.
pub fn corestrict(r: &MatroidHom, image: Arc<BinaryMatroid>) -> Result<MatroidHom> {
    let pts = r.image_points();
    let mut position = vec![usize::MAX; r.codomain.len()];
    for (i, &p) in pts.iter().enumerate() {
        position[p] = i;
    }
    let out: Vec<usize> = r.image.iter().map(|&m| position[m]).collect();
    MatroidHom::new(r.domain.clone(), image, out)
}

/// Breadth-first search for a sequence of dismantling retractions from `n`
/// to a matroid isomorphic to `target`. Each returned step is an
/// endomorphism of the previous step's image; visited images are merged up
/// to isomorphism, so the search terminates and finds a shortest sequence.
pub fn dismantles_to(
    n: &Arc<BinaryMatroid>,
    target: &BinaryMatroid,
    caps: &Caps,
) -> Result<Option<Vec<MatroidHom>>> {
    if isomorphism(n, target).is_some() {
        return Ok(Some(Vec::new()));
    }
    let mut visited: Vec<Arc<BinaryMatroid>> = vec![n.clone()];
    let mut queue: VecDeque<(Arc<BinaryMatroid>, Vec<MatroidHom>)> = VecDeque::from([(n.clone(), Vec::new())]);
    while let Some((current, steps)) = queue.pop_front() {
        for r in dismantling_retractions(&current, caps)? {
            let image = Arc::new(image_matroid(&r)?);
            if image.len() < target.len() || visited.iter().any(|v| isomorphism(v, &image).is_some()) {
                continue;
            }
            let mut next_steps = steps.clone();
            next_steps.push(r);
            if isomorphism(&image, target).is_some() {
                return Ok(Some(next_steps));
            }
            if visited.len() >= caps.max_states {
                return Err(Error::Capacity {
                    what: "dismantling search",
                    needed: format!("more than {} isomorphism classes", caps.max_states),
                    cap: caps.max_states.to_string(),
                });
            }
            visited.push(image.clone());
            queue.push_back((image, next_steps));
        }
    }
    Ok(None)
}

/// What a triviality certificate dismantles to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrivialTarget {
    /// The empty matroid `M(K_1)`.
    Empty,
    /// The loop `M^ℓ(K_1)`.
    Loop,
    /// The single edge `M(K_2)`.
    Edge,
}

#[derive(Clone, Debug)]
pub struct TrivialityCertificate {
    pub target: TrivialTarget,
    pub steps: Vec<MatroidHom>,
}

/// A dismantling sequence to a loop or an edge, which makes every
/// recolouring instance with codomain `n` a YES instance. Absence says
/// nothing about the converse.
pub fn triviality_certificate(n: &Arc<BinaryMatroid>, caps: &Caps) -> Result<Option<TrivialityCertificate>> {
    if n.is_empty() {
        return Ok(Some(TrivialityCertificate { target: TrivialTarget::Empty, steps: Vec::new() }));
    }
    let targets = [
        (TrivialTarget::Loop, BinaryMatroid::single_loop()),
        (TrivialTarget::Edge, BinaryMatroid::from_strings(&["1"], false)?),
    ];
    for (kind, target) in targets {
        if let Some(steps) = dismantles_to(n, &target, caps)? {
            return Ok(Some(TrivialityCertificate { target: kind, steps }));
        }
    }
    Ok(None)
}

/// The injective homomorphism `M(K_n) → host` described by a clique copy,
/// with `M(K_n)` in its graphic representation.
pub fn clique_embedding(copy: &CliqueCopy, host: &Arc<BinaryMatroid>) -> MatroidHom {
    let k = Arc::new(BinaryMatroid::clique(copy.size()));
    MatroidHom::new(k, host.clone(), copy.pair_points.clone()).expect("a clique copy is linear")
}
