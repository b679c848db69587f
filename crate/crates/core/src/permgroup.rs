//! Finite permutation groups backed by a stabilizer chain.
//!
//! Permutations act on the right: `x^(gh) = (x^g)^h`, and `g.then(h)` is the
//! product `gh`. The chain is built with Knuth's incremental Schreier-Sims
//! variant (sift, then close reps x generators under products), with base
//! points chosen as the smallest moved point unless a prefix is requested.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on `|G|` for the brute-force normalizer.
pub const DEFAULT_GROUP_BOUND: u64 = 20_000;

/// A permutation of `0..degree`, stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm(Vec<u32>);

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.0)
    }
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u32).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Perm(images.into_iter().map(|x| x as u32).collect()))
    }

    pub(crate) fn from_u32_unchecked(images: Vec<u32>) -> Self {
        Perm(images)
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut img: Vec<usize> = (0..degree).collect();
        for cyc in cycles {
            for (k, &x) in cyc.iter().enumerate() {
                if x >= degree {
                    return Err(Error::InvalidPermutation(format!("point {x} >= {degree}")));
                }
                img[x] = cyc[(k + 1) % cyc.len()];
            }
        }
        Perm::from_images(img)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&x| x as usize)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// The product `self * other`: apply `self`, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    /// `other^-1 * self * other`.
    pub fn conjugate_by(&self, other: &Perm) -> Perm {
        other.inverse().then(self).then(other)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.0.iter().enumerate().position(|(i, &x)| i as u32 != x)
    }
}

#[derive(Clone, Debug)]
struct Level {
    point: u32,
    gens: Vec<Perm>,
    // orbit in discovery order, with a transversal rep (and its inverse) per point
    orbit: Vec<u32>,
    reps: Vec<Perm>,
    rep_inv: Vec<Perm>,
    slot: Vec<u32>,
}

impl Level {
    fn new(point: u32, degree: usize) -> Self {
        let mut slot = vec![u32::MAX; degree];
        slot[point as usize] = 0;
        Level {
            point,
            gens: Vec::new(),
            orbit: vec![point],
            reps: vec![Perm::identity(degree)],
            rep_inv: vec![Perm::identity(degree)],
            slot,
        }
    }
}

/// A base and strong generating set with explicit transversals.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

enum Task {
    Add(usize, Perm),
    Extend(usize, Perm),
}

impl StabChain {
    pub fn new(degree: usize) -> Self {
        StabChain { degree, levels: Vec::new() }
    }

    /// An empty chain whose first base points are `prefix` (in order).
    pub fn with_base_prefix(degree: usize, prefix: &[usize]) -> Self {
        StabChain {
            degree,
            levels: prefix.iter().map(|&p| Level::new(p as u32, degree)).collect(),
        }
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point as usize).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| acc * l.orbit.len())
    }

    /// Sifts `g` from `level` down; returns the residue and the level where
    /// sifting stopped (`levels.len()` when it ran through).
    fn sift_from(&self, level: usize, mut g: Perm) -> (Perm, usize) {
        for k in level..self.levels.len() {
            let l = &self.levels[k];
            let j = g.apply(l.point as usize);
            let s = l.slot[j];
            if s == u32::MAX {
                return (g, k);
            }
            if j != l.point as usize {
                g = g.then(&l.rep_inv[s as usize]);
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (r, _) = self.sift_from(0, g.clone());
        r.is_identity()
    }

    /// Adds a generator and restores the chain invariants.
    pub fn add_generator(&mut self, g: Perm) {
        assert_eq!(g.degree(), self.degree, "generator degree mismatch");
        let mut work = vec![Task::Add(0, g)];
        while let Some(task) = work.pop() {
            match task {
                Task::Add(k, p) => {
                    if p.is_identity() {
                        continue;
                    }
                    if k == self.levels.len() {
                        let point = p.first_moved().expect("non-identity");
                        self.levels.push(Level::new(point as u32, self.degree));
                    } else {
                        let (r, _) = self.sift_from(k, p.clone());
                        if r.is_identity() {
                            continue;
                        }
                    }
                    let l = &mut self.levels[k];
                    l.gens.push(p.clone());
                    for rep in &l.reps {
                        work.push(Task::Extend(k, rep.then(&p)));
                    }
                }
                Task::Extend(k, p) => {
                    let l = &mut self.levels[k];
                    let j = p.apply(l.point as usize);
                    let s = l.slot[j];
                    if s == u32::MAX {
                        l.slot[j] = l.orbit.len() as u32;
                        l.orbit.push(j as u32);
                        l.rep_inv.push(p.inverse());
                        for gen in &l.gens {
                            work.push(Task::Extend(k, p.then(gen)));
                        }
                        l.reps.push(p);
                    } else {
                        let residue = p.then(&l.rep_inv[s as usize]);
                        work.push(Task::Add(k + 1, residue));
                    }
                }
            }
        }
    }

    /// The chain of the stabilizer of the first base point.
    fn tail(&self) -> StabChain {
        StabChain { degree: self.degree, levels: self.levels[1..].to_vec() }
    }

    /// Calls `f` on every group element, in a fixed order.
    fn for_each_element(&self, f: &mut dyn FnMut(&Perm) -> bool) {
        fn rec(levels: &[Level], acc: &Perm, f: &mut dyn FnMut(&Perm) -> bool) -> bool {
            match levels.split_first() {
                None => f(acc),
                Some((first, rest)) => {
                    // element = u_m ... u_1 u_0
                    for rep in &first.reps {
                        if !rec(rest, &rep.then(acc), f) {
                            return false;
                        }
                    }
                    true
                }
            }
        }
        rec(&self.levels, &Perm::identity(self.degree), f);
    }
}

/// A finite permutation group given by generators; the stabilizer chain is
/// computed on first use.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    chain: OnceLock<StabChain>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators.len())
            .finish()
    }
}

/// JSON form: generator image arrays.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PermGroupJson {
    pub degree: usize,
    pub generators: Vec<Perm>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::InvalidPermutation(format!(
                "generator of degree {} in a group of degree {degree}",
                g.degree()
            )));
        }
        Ok(PermGroup { degree, generators, chain: OnceLock::new() })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup { degree, generators: Vec::new(), chain: OnceLock::new() }
    }

    fn from_chain(chain: StabChain, generators: Vec<Perm>) -> Self {
        let degree = chain.degree;
        let cell = OnceLock::new();
        let _ = cell.set(chain);
        PermGroup { degree, generators, chain: cell }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| {
            let mut c = StabChain::new(self.degree);
            for g in &self.generators {
                c.add_generator(g.clone());
            }
            c
        })
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    /// The order when it fits in a `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        u64::try_from(self.order()).ok()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.chain().contains(g)
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(Perm::is_identity)
    }

    fn check_point(&self, point: usize) -> Result<()> {
        if point >= self.degree {
            return Err(Error::PointOutOfRange { index: point, size: self.degree });
        }
        Ok(())
    }

    /// The orbit of `point`, sorted ascending.
    pub fn orbit(&self, point: usize) -> Result<Vec<usize>> {
        self.check_point(point)?;
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut stack = vec![point];
        let mut out = vec![point];
        while let Some(x) = stack.pop() {
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    stack.push(y);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    pub fn point_stabilizer(&self, point: usize) -> Result<PermGroup> {
        self.check_point(point)?;
        let mut c = StabChain::with_base_prefix(self.degree, &[point]);
        for g in &self.generators {
            c.add_generator(g.clone());
        }
        let tail = c.tail();
        let gens = tail.levels.first().map(|l| l.gens.clone()).unwrap_or_default();
        Ok(PermGroup::from_chain(tail, gens))
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Equality as subgroups of the symmetric group.
    pub fn same_subgroup(&self, other: &PermGroup) -> bool {
        self.is_subgroup_of(other) && other.is_subgroup_of(self)
    }

    /// Calls `f` on every element until it returns `false`.
    pub fn for_each_element(&self, mut f: impl FnMut(&Perm) -> bool) {
        self.chain().for_each_element(&mut f);
    }

    /// All elements, refusing groups larger than `bound`.
    pub fn elements(&self, bound: u64) -> Result<Vec<Perm>> {
        self.check_bound(bound)?;
        let mut out = Vec::new();
        self.for_each_element(|g| {
            out.push(g.clone());
            true
        });
        Ok(out)
    }

    /// The order, if it is at most `bound`.
    pub fn check_bound(&self, bound: u64) -> Result<u64> {
        match self.order_u64() {
            Some(o) if o <= bound => Ok(o),
            _ => Err(Error::TooLarge { order: self.order().to_string(), bound }),
        }
    }

    /// The subgroup of elements satisfying `keep`, found by scanning `self`.
    fn filtered_subgroup(&self, mut keep: impl FnMut(&Perm) -> bool) -> PermGroup {
        let mut chain = StabChain::new(self.degree);
        let mut gens = Vec::new();
        self.for_each_element(|g| {
            if !chain.contains(g) && keep(g) {
                chain.add_generator(g.clone());
                gens.push(g.clone());
            }
            true
        });
        PermGroup::from_chain(chain, gens)
    }

    /// `self ∩ other` by scanning the elements of the smaller group.
    pub fn intersection(&self, other: &PermGroup, bound: u64) -> Result<PermGroup> {
        if self.degree != other.degree {
            return Err(Error::InvalidPermutation("degree mismatch".into()));
        }
        let (small, big) = if self.order() <= other.order() { (self, other) } else { (other, self) };
        small.check_bound(bound)?;
        Ok(small.filtered_subgroup(|g| big.contains(g)))
    }

    /// Order of `self ∩ other`, counted without building the intersection.
    pub fn intersection_order(&self, other: &PermGroup, bound: u64) -> Result<u64> {
        let (small, big) = if self.order() <= other.order() { (self, other) } else { (other, self) };
        small.check_bound(bound)?;
        let mut count = 0u64;
        small.for_each_element(|g| {
            if big.contains(g) {
                count += 1;
            }
            true
        });
        Ok(count)
    }

    /// `Norm_self(h)` by scanning every element of `self`.
    pub fn normalizer_bruteforce(&self, h: &PermGroup, bound: u64) -> Result<PermGroup> {
        if !h.is_subgroup_of(self) {
            return Err(Error::NotSubgroup);
        }
        self.check_bound(bound)?;
        Ok(self.filtered_subgroup(|x| h.generators.iter().all(|s| h.contains(&s.conjugate_by(x)))))
    }

    pub fn to_json(&self) -> PermGroupJson {
        PermGroupJson { degree: self.degree, generators: self.generators.clone() }
    }

    pub fn from_json(json: PermGroupJson) -> Result<Self> {
        for g in &json.generators {
            Perm::from_images(g.images().collect())?;
        }
        PermGroup::new(json.degree, json.generators)
    }
}

/// A homomorphism between permutation groups, given by generator images.
///
/// Well-definedness is checked exactly: the diagonal group generated by the
/// pairs `(g_i, h_i)` on the disjoint union must have the same order as the
/// source, i.e. no nontrivial element of the form `(1, h)`.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: PermGroup,
    target: PermGroup,
    images: Vec<Perm>,
    diagonal: StabChain,
}

impl GroupHom {
    pub fn new(source: PermGroup, target: PermGroup, images: Vec<Perm>) -> Result<Self> {
        if images.len() != source.generators.len() {
            return Err(Error::NotHomomorphism);
        }
        if images.iter().any(|h| !target.contains(h)) {
            return Err(Error::NotHomomorphism);
        }
        let s = source.degree;
        let mut diagonal = StabChain::with_base_prefix(s + target.degree, &(0..s).collect::<Vec<_>>());
        for (g, h) in source.generators.iter().zip(&images) {
            let mut img: Vec<u32> = g.as_slice().to_vec();
            img.extend(h.as_slice().iter().map(|&y| y + s as u32));
            diagonal.add_generator(Perm(img));
        }
        if diagonal.order() != source.order() {
            return Err(Error::NotHomomorphism);
        }
        Ok(GroupHom { source, target, images, diagonal })
    }

    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn target(&self) -> &PermGroup {
        &self.target
    }

    pub fn generator_images(&self) -> &[Perm] {
        &self.images
    }

    pub fn apply(&self, x: &Perm) -> Result<Perm> {
        if !self.source.contains(x) {
            return Err(Error::NotSubgroup);
        }
        let s = self.source.degree;
        let t = self.target.degree;
        let mut cur = x.clone();
        let mut image = Perm::identity(t);
        for l in &self.diagonal.levels {
            if l.point as usize >= s {
                break;
            }
            let j = cur.apply(l.point as usize);
            let slot = l.slot[j] as usize;
            let rep = &l.reps[slot];
            let rep_source = Perm(rep.0[..s].to_vec());
            let rep_target = Perm(rep.0[s..].iter().map(|&y| y - s as u32).collect());
            cur = cur.then(&rep_source.inverse());
            image = rep_target.then(&image);
        }
        debug_assert!(cur.is_identity());
        Ok(image)
    }

    pub fn image(&self) -> PermGroup {
        PermGroup::new(self.target.degree, self.images.clone()).expect("degrees checked")
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.target.order()
    }
}
