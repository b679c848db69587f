//! Face posets and the bridge to flag graphs.
//!
//! The `i`-faces of a flag graph are the connected components left after
//! deleting the color-`i` edges; two faces are incident when they share a
//! flag. Polytopality is decided by the component intersection property.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flaggraph::{validate_maniplex, FlagGraph};

/// A ranked poset given by its cover relation.
///
/// Faces are addressed by position; `ids` carries the external names used in
/// JSON and error messages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacePoset {
    rank: usize,
    ranks: Vec<i32>,
    ids: Vec<usize>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FaceJson {
    pub rank: i32,
    pub id: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FacePosetJson {
    pub rank: usize,
    pub faces: Vec<FaceJson>,
    pub covers: Vec<[usize; 2]>,
}

/// A face of a flag graph, named by its rank and the smallest flag it holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FaceId {
    pub rank: usize,
    pub min_flag: usize,
}

impl fmt::Display for FaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}@{}", self.rank, self.min_flag)
    }
}

/// A strictly increasing sequence of faces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chain(pub Vec<FaceId>);

impl FacePoset {
    /// Builds a poset from `(rank, id)` faces and `(lower id, upper id)`
    /// cover pairs. Only the local shape is checked here; the polytope axioms
    /// are checked by [`FacePoset::check_axioms`].
    pub fn new(rank: usize, faces: &[(i32, usize)], covers: &[(usize, usize)]) -> Result<Self> {
        let mut pos = HashMap::with_capacity(faces.len());
        let mut ranks = Vec::with_capacity(faces.len());
        let mut ids = Vec::with_capacity(faces.len());
        for (k, &(r, id)) in faces.iter().enumerate() {
            if r < -1 || r > rank as i32 {
                return Err(Error::MalformedPoset(format!("face {id} has rank {r} outside -1..={rank}")));
            }
            if pos.insert(id, k).is_some() {
                return Err(Error::MalformedPoset(format!("duplicate face id {id}")));
            }
            ranks.push(r);
            ids.push(id);
        }
        let mut up = vec![Vec::new(); faces.len()];
        let mut down = vec![Vec::new(); faces.len()];
        for &(lo, hi) in covers {
            let (&a, &b) = match (pos.get(&lo), pos.get(&hi)) {
                (Some(a), Some(b)) => (a, b),
                _ => return Err(Error::MalformedPoset(format!("cover ({lo}, {hi}) names an unknown face"))),
            };
            if ranks[b] != ranks[a] + 1 {
                return Err(Error::RankGap { face: hi });
            }
            if !up[a].contains(&b) {
                up[a].push(b);
                down[b].push(a);
            }
        }
        for v in up.iter_mut().chain(down.iter_mut()) {
            v.sort_unstable();
        }
        Ok(FacePoset { rank, ranks, ids, up, down })
    }

    /// Convenience builder for polyhedra given by vertex count, edges as
    /// vertex pairs, and faces as cyclic vertex sequences. Face ids are
    /// assigned in order: minimum, vertices, edges, 2-faces, maximum.
    pub fn from_polyhedron(vertices: usize, edges: &[[usize; 2]], faces: &[Vec<usize>]) -> Result<Self> {
        let mut list = vec![(-1, 0)];
        let v0 = 1;
        let e0 = v0 + vertices;
        let f0 = e0 + edges.len();
        let top = f0 + faces.len();
        list.extend((0..vertices).map(|v| (0, v0 + v)));
        list.extend((0..edges.len()).map(|e| (1, e0 + e)));
        list.extend((0..faces.len()).map(|f| (2, f0 + f)));
        list.push((3, top));
        let mut covers = Vec::new();
        covers.extend((0..vertices).map(|v| (0, v0 + v)));
        for (e, &[a, b]) in edges.iter().enumerate() {
            if a >= vertices || b >= vertices {
                return Err(Error::MalformedPoset(format!("edge {e} names a missing vertex")));
            }
            covers.push((v0 + a, e0 + e));
            covers.push((v0 + b, e0 + e));
        }
        let edge_index: HashMap<(usize, usize), usize> = edges
            .iter()
            .enumerate()
            .map(|(e, &[a, b])| ((a.min(b), a.max(b)), e))
            .collect();
        for (f, cycle) in faces.iter().enumerate() {
            for k in 0..cycle.len() {
                let (a, b) = (cycle[k], cycle[(k + 1) % cycle.len()]);
                let e = edge_index.get(&(a.min(b), a.max(b))).ok_or_else(|| {
                    Error::MalformedPoset(format!("face {f} uses a missing edge ({a}, {b})"))
                })?;
                covers.push((e0 + e, f0 + f));
            }
            covers.push((f0 + f, top));
        }
        FacePoset::new(3, &list, &covers)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn face_rank(&self, face: usize) -> i32 {
        self.ranks[face]
    }

    pub fn face_id(&self, face: usize) -> usize {
        self.ids[face]
    }

    /// Position of the face with external id `id`.
    pub fn position(&self, id: usize) -> Option<usize> {
        self.ids.iter().position(|&x| x == id)
    }

    pub fn upper_covers(&self, face: usize) -> &[usize] {
        &self.up[face]
    }

    pub fn lower_covers(&self, face: usize) -> &[usize] {
        &self.down[face]
    }

    pub fn faces_of_rank(&self, r: i32) -> Vec<usize> {
        (0..self.len()).filter(|&f| self.ranks[f] == r).collect()
    }

    /// Number of faces of each rank `-1..=n`.
    pub fn face_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.rank + 2];
        for &r in &self.ranks {
            counts[(r + 1) as usize] += 1;
        }
        counts
    }

    fn closure(&self, start: usize, upward: bool) -> HashSet<usize> {
        let mut seen = HashSet::from([start]);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            let next = if upward { &self.up[x] } else { &self.down[x] };
            for &y in next {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen
    }

    pub fn less_or_equal(&self, lower: usize, upper: usize) -> bool {
        self.ranks[lower] <= self.ranks[upper] && self.closure(lower, true).contains(&upper)
    }

    /// Conditions 1-3 of a polytope: unique extrema, every maximal chain
    /// visits every rank, and the diamond condition.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.rank as i32;
        for r in [-1, n] {
            let count = self.ranks.iter().filter(|&&x| x == r).count();
            if count != 1 {
                return Err(Error::MultipleExtrema { rank: r, count });
            }
        }
        for f in 0..self.len() {
            let r = self.ranks[f];
            if (r > -1 && self.down[f].is_empty()) || (r < n && self.up[f].is_empty()) {
                return Err(Error::RankGap { face: self.ids[f] });
            }
        }
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&f| (self.ranks[f], self.ids[f]));
        for &f in &order {
            let mut middle: BTreeMap<usize, usize> = BTreeMap::new();
            for &h in &self.up[f] {
                for &g in &self.up[h] {
                    *middle.entry(g).or_default() += 1;
                }
            }
            let mut bad: Vec<(usize, usize)> = middle.into_iter().filter(|&(_, c)| c != 2).collect();
            bad.sort_by_key(|&(g, _)| self.ids[g]);
            if let Some(&(g, count)) = bad.first() {
                return Err(Error::DiamondViolation { lower: self.ids[f], upper: self.ids[g], count });
            }
        }
        Ok(())
    }

    /// The section `upper/lower`: faces `H` with `lower <= H <= upper`,
    /// reranked so that `lower` has rank -1. Arguments are face positions.
    pub fn section(&self, lower: usize, upper: usize) -> Result<FacePoset> {
        let above = self.closure(lower, true);
        if lower == upper || !above.contains(&upper) {
            return Err(Error::NotComparable { lower: self.ids[lower], upper: self.ids[upper] });
        }
        let below = self.closure(upper, false);
        let mut keep: Vec<usize> = above.intersection(&below).copied().collect();
        keep.sort_by_key(|&f| (self.ranks[f], self.ids[f]));
        let shift = self.ranks[lower] + 1;
        let faces: Vec<(i32, usize)> = keep.iter().map(|&f| (self.ranks[f] - shift, self.ids[f])).collect();
        let kept: HashSet<usize> = keep.iter().copied().collect();
        let mut covers = Vec::new();
        for &f in &keep {
            for &g in &self.up[f] {
                if kept.contains(&g) {
                    covers.push((self.ids[f], self.ids[g]));
                }
            }
        }
        FacePoset::new((self.ranks[upper] - self.ranks[lower] - 1) as usize, &faces, &covers)
    }

    /// Whether some rank-2 section has exactly two faces in each middle rank.
    pub fn has_digonal_section(&self) -> bool {
        for f in 0..self.len() {
            // G -> (faces one above f, faces two above f) leading to G
            let mut mids: HashMap<usize, (HashSet<usize>, HashSet<usize>)> = HashMap::new();
            for &h1 in &self.up[f] {
                for &h2 in &self.up[h1] {
                    for &g in &self.up[h2] {
                        let e = mids.entry(g).or_default();
                        e.0.insert(h1);
                        e.1.insert(h2);
                    }
                }
            }
            if mids.values().any(|(a, b)| a.len() == 2 && b.len() == 2) {
                return true;
            }
        }
        false
    }

    /// The flags as face positions from rank -1 to n, in the order used by
    /// [`flag_graph_of_poset`].
    pub fn flag_chains(&self) -> Result<Vec<Vec<u32>>> {
        self.check_axioms()?;
        Ok(self.maximal_chains())
    }

    /// Enumerates maximal chains (as face positions from rank -1 to n) in
    /// lexicographic order of positions.
    fn maximal_chains(&self) -> Vec<Vec<u32>> {
        let bottom = (0..self.len()).find(|&f| self.ranks[f] == -1).expect("checked");
        let mut out = Vec::new();
        let mut chain = vec![bottom as u32];
        fn rec(p: &FacePoset, chain: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            let last = *chain.last().unwrap() as usize;
            if p.up[last].is_empty() {
                out.push(chain.clone());
                return;
            }
            for &g in &p.up[last] {
                chain.push(g as u32);
                rec(p, chain, out);
                chain.pop();
            }
        }
        rec(self, &mut chain, &mut out);
        out
    }

    pub fn to_json(&self) -> FacePosetJson {
        let mut covers = Vec::new();
        for f in 0..self.len() {
            for &g in &self.up[f] {
                covers.push([self.ids[f], self.ids[g]]);
            }
        }
        FacePosetJson {
            rank: self.rank,
            faces: (0..self.len()).map(|f| FaceJson { rank: self.ranks[f], id: self.ids[f] }).collect(),
            covers,
        }
    }

    pub fn from_json(json: &FacePosetJson) -> Result<Self> {
        let faces: Vec<(i32, usize)> = json.faces.iter().map(|f| (f.rank, f.id)).collect();
        let covers: Vec<(usize, usize)> = json.covers.iter().map(|c| (c[0], c[1])).collect();
        FacePoset::new(json.rank, &faces, &covers)
    }
}

/// Enumerates the flags of a poset and builds its flag graph.
///
/// Flags are numbered in lexicographic order of their face positions.
pub fn flag_graph_of_poset(p: &FacePoset) -> Result<FlagGraph> {
    if p.rank == 0 {
        return Err(Error::MalformedPoset("rank-0 posets have no adjacency colors".into()));
    }
    p.check_axioms()?;
    let flags = p.maximal_chains();
    let index: HashMap<&[u32], usize> = flags.iter().enumerate().map(|(k, c)| (c.as_slice(), k)).collect();
    let n = p.rank;
    let mut adj = vec![vec![0usize; flags.len()]; n];
    let mut scratch = Vec::with_capacity(n + 2);
    for (k, chain) in flags.iter().enumerate() {
        for i in 0..n {
            // chain[i + 1] is the i-face
            let (lo, cur, hi) = (chain[i] as usize, chain[i + 1] as usize, chain[i + 2] as usize);
            let other = p.up[lo]
                .iter()
                .copied()
                .find(|&h| h != cur && p.up[h].binary_search(&hi).is_ok())
                .ok_or(Error::DiamondViolation { lower: p.ids[lo], upper: p.ids[hi], count: 1 })?;
            scratch.clear();
            scratch.extend_from_slice(chain);
            scratch[i + 1] = other as u32;
            adj[i][k] = index[scratch.as_slice()];
        }
    }
    validate_maniplex(n, adj)
}

/// The `i`-faces of a flag graph: components after deleting color `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacePartition {
    pub rank: usize,
    /// Face index of each flag; faces are ordered by their smallest flag.
    pub label: Vec<u32>,
    /// Flags of each face, ascending.
    pub faces: Vec<Vec<usize>>,
}

impl FacePartition {
    pub fn count(&self) -> usize {
        self.faces.len()
    }

    pub fn face_of(&self, flag: usize) -> usize {
        self.label[flag] as usize
    }

    pub fn face_id(&self, face: usize) -> FaceId {
        FaceId { rank: self.rank, min_flag: self.faces[face][0] }
    }
}

pub fn faces_of(g: &FlagGraph, i: usize) -> Result<FacePartition> {
    if i >= g.rank() {
        return Err(Error::ColorOutOfRange { color: i, rank: g.rank() });
    }
    let (label, count) = g.components(|c| c != i);
    let mut faces = vec![Vec::new(); count];
    for (f, &l) in label.iter().enumerate() {
        faces[l as usize].push(f);
    }
    Ok(FacePartition { rank: i, label, faces })
}

/// The poset of components with incidence given by nonempty intersection,
/// plus formal minimum and maximum faces.
///
/// Face ids are sequential: the minimum is 0, then the faces of each rank in
/// order of their smallest flag, then the maximum.
pub fn poset_of_flag_graph(g: &FlagGraph) -> FacePoset {
    let n = g.rank();
    let parts: Vec<FacePartition> = (0..n).map(|i| faces_of(g, i).expect("in range")).collect();
    let mut offset = vec![1usize; n + 1];
    for i in 0..n {
        offset[i + 1] = offset[i] + parts[i].count();
    }
    let top = offset[n];
    let mut faces = vec![(-1, 0)];
    for (i, part) in parts.iter().enumerate() {
        faces.extend((0..part.count()).map(|k| (i as i32, offset[i] + k)));
    }
    faces.push((n as i32, top));
    let mut covers: Vec<(usize, usize)> = (0..parts[0].count()).map(|k| (0, offset[0] + k)).collect();
    for i in 0..n.saturating_sub(1) {
        let mut pairs: Vec<(usize, usize)> = (0..g.flag_count())
            .map(|f| (offset[i] + parts[i].face_of(f), offset[i + 1] + parts[i + 1].face_of(f)))
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        covers.extend(pairs);
    }
    covers.extend((0..parts[n - 1].count()).map(|k| (offset[n - 1] + k, top)));
    FacePoset::new(n, &faces, &covers).expect("derived poset is well-formed")
}

/// How a chain of faces fails the component intersection property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CipFailure {
    /// The faces meet pairwise but their intersection splits.
    Disconnected,
    /// The faces meet pairwise but have no common flag.
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CipWitness {
    pub chain: Chain,
    pub failure: CipFailure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolytopalityReport {
    pub polytopal: bool,
    pub witness: Option<CipWitness>,
}

/// Decides polytopality via the component intersection property.
///
/// Chains of pairwise-incident faces are grown by ascending rank, one chain
/// length at a time, so the first witness is a shortest one. A grown chain
/// is only extended further while its intersection is connected.
pub fn is_polytopal(g: &FlagGraph) -> PolytopalityReport {
    let n = g.rank();
    let parts: Vec<FacePartition> = (0..n).map(|i| faces_of(g, i).expect("in range")).collect();
    // incident[r][face][s]: sorted rank-s faces meeting the given rank-r face
    let incident: Vec<Vec<Vec<Vec<u32>>>> = parts
        .iter()
        .map(|part| {
            part.faces
                .iter()
                .map(|flags| {
                    (0..n)
                        .map(|s| {
                            let mut v: Vec<u32> = flags.iter().map(|&f| parts[s].label[f]).collect();
                            v.sort_unstable();
                            v.dedup();
                            v
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let mut residues: HashMap<u32, Vec<u32>> = HashMap::new();

    struct Node {
        // (rank, face index) in ascending rank
        chain: Vec<(usize, usize)>,
        mask: u32,
        flags: Vec<usize>,
    }
    let face_ids = |chain: &[(usize, usize)]| -> Chain {
        Chain(chain.iter().map(|&(r, k)| parts[r].face_id(k)).collect())
    };

    let mut frontier: Vec<Node> = Vec::new();
    for (r, part) in parts.iter().enumerate() {
        for (k, flags) in part.faces.iter().enumerate() {
            frontier.push(Node { chain: vec![(r, k)], mask: 1 << r, flags: flags.clone() });
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for node in &frontier {
            let top = node.chain.last().unwrap().0;
            for s in top + 1..n {
                let mask = node.mask | (1 << s);
                let res = residues.entry(mask).or_insert_with(|| g.components(|c| mask & (1 << c) == 0).0);
                let mut groups: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
                for &f in &node.flags {
                    groups.entry(parts[s].label[f]).or_default().push(f);
                }
                for (&face, flags) in &groups {
                    let r0 = res[flags[0]];
                    if flags.iter().any(|&f| res[f] != r0) {
                        let mut chain = node.chain.clone();
                        chain.push((s, face as usize));
                        return PolytopalityReport {
                            polytopal: false,
                            witness: Some(CipWitness { chain: face_ids(&chain), failure: CipFailure::Disconnected }),
                        };
                    }
                }
                let (last_r, last_k) = *node.chain.last().unwrap();
                for &cand in &incident[last_r][last_k][s] {
                    if groups.contains_key(&cand) {
                        continue;
                    }
                    let pairwise = node
                        .chain
                        .iter()
                        .all(|&(r, k)| incident[r][k][s].binary_search(&cand).is_ok());
                    if pairwise {
                        let mut chain = node.chain.clone();
                        chain.push((s, cand as usize));
                        return PolytopalityReport {
                            polytopal: false,
                            witness: Some(CipWitness { chain: face_ids(&chain), failure: CipFailure::Empty }),
                        };
                    }
                }
                for (face, flags) in groups {
                    let mut chain = node.chain.clone();
                    chain.push((s, face as usize));
                    next.push(Node { chain, mask, flags });
                }
            }
        }
        frontier = next;
    }
    PolytopalityReport { polytopal: true, witness: None }
}

/// Digonal rank-2 sections read off the flag graph: a residue of two
/// consecutive colors with only four flags.
pub fn has_digonal_residue(g: &FlagGraph) -> bool {
    (0..g.rank().saturating_sub(1)).any(|i| {
        let (label, count) = g.components(|c| c == i || c == i + 1);
        let mut sizes = vec![0usize; count];
        for l in label {
            sizes[l as usize] += 1;
        }
        sizes.contains(&4)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cube_poset() -> FacePoset {
        // vertices: bit pattern xyz
        let vertices = 8;
        let mut edges = Vec::new();
        for v in 0..8usize {
            for b in 0..3 {
                let w = v ^ (1 << b);
                if v < w {
                    edges.push([v, w]);
                }
            }
        }
        let mut faces = Vec::new();
        for b in 0..3 {
            for val in 0..2 {
                let (p, q) = ((b + 1) % 3, (b + 2) % 3);
                let base = val << b;
                faces.push(vec![base, base | 1 << p, base | 1 << p | 1 << q, base | 1 << q]);
            }
        }
        FacePoset::from_polyhedron(vertices, &edges, &faces).unwrap()
    }

    fn polygon_poset(p: usize) -> FacePoset {
        let mut faces = vec![(-1, 0)];
        faces.extend((0..p).map(|v| (0, 1 + v)));
        faces.extend((0..p).map(|e| (1, 1 + p + e)));
        faces.push((2, 1 + 2 * p));
        let mut covers = Vec::new();
        for v in 0..p {
            covers.push((0, 1 + v));
            covers.push((1 + v, 1 + p + v));
            covers.push((1 + (v + 1) % p, 1 + p + v));
            covers.push((1 + p + v, 1 + 2 * p));
        }
        FacePoset::new(2, &faces, &covers).unwrap()
    }

    #[test]
    fn polygon_poset_gives_cycle() {
        let g = flag_graph_of_poset(&polygon_poset(5)).unwrap();
        assert_eq!(g.flag_count(), 10);
        assert_eq!(g.components(|_| true).1, 1);
    }

    #[test]
    fn cube_has_48_flags() {
        let p = cube_poset();
        assert_eq!(p.face_counts(), vec![1, 8, 12, 6, 1]);
        let g = flag_graph_of_poset(&p).unwrap();
        assert_eq!(g.flag_count(), 48);
        let squares = faces_of(&g, 2).unwrap();
        assert_eq!(squares.count(), 6);
        assert!(squares.faces.iter().all(|f| f.len() == 8));
        assert!(is_polytopal(&g).polytopal);
        assert!(!p.has_digonal_section());
        assert!(!has_digonal_residue(&g));
    }

    #[test]
    fn square_vertices() {
        let g = flag_graph_of_poset(&polygon_poset(4)).unwrap();
        let v = faces_of(&g, 0).unwrap();
        assert_eq!(v.count(), 4);
        assert!(v.faces.iter().all(|f| f.len() == 2));
        let p = poset_of_flag_graph(&g);
        assert_eq!(p.face_counts(), vec![1, 4, 4, 1]);
        assert!(matches!(faces_of(&g, 2), Err(Error::ColorOutOfRange { .. })));
    }

    #[test]
    fn axioms_are_checked() {
        // two minimal faces
        let p = FacePoset::new(1, &[(-1, 0), (-1, 1), (0, 2), (0, 3), (1, 4)], &[(0, 2), (1, 3), (2, 4), (3, 4)])
            .unwrap();
        assert_eq!(flag_graph_of_poset(&p).unwrap_err(), Error::MultipleExtrema { rank: -1, count: 2 });
        // a segment with three vertices breaks the diamond condition
        let p = FacePoset::new(
            1,
            &[(-1, 0), (0, 1), (0, 2), (0, 3), (1, 4)],
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
        )
        .unwrap();
        assert_eq!(
            flag_graph_of_poset(&p).unwrap_err(),
            Error::DiamondViolation { lower: 0, upper: 4, count: 3 }
        );
        let err = FacePoset::new(1, &[(-1, 0), (1, 1)], &[(0, 1)]).unwrap_err();
        assert_eq!(err, Error::RankGap { face: 1 });
    }

    #[test]
    fn cube_sections() {
        let p = cube_poset();
        let top = p.faces_of_rank(3)[0];
        for v in p.faces_of_rank(0) {
            let vf = p.section(v, top).unwrap();
            assert_eq!(vf.rank(), 2);
            assert_eq!(vf.face_counts(), vec![1, 3, 3, 1]);
        }
        let bottom = p.faces_of_rank(-1)[0];
        for f in p.faces_of_rank(2) {
            assert_eq!(p.section(bottom, f).unwrap().face_counts(), vec![1, 4, 4, 1]);
        }
        let v = p.faces_of_rank(0);
        assert!(matches!(p.section(v[0], v[1]), Err(Error::NotComparable { .. })));
    }

    #[test]
    fn poset_json_round_trip() {
        let p = polygon_poset(3);
        let j = serde_json::to_string(&p.to_json()).unwrap();
        assert!(j.starts_with(r#"{"rank":2,"faces":[{"rank":-1,"id":0}"#));
        let back = FacePoset::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back, p);
    }
}
