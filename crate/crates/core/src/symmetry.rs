//! Automorphisms, flag orbits and symmetry type graphs.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flaggraph::{propagate, ColorWord, FlagGraph, RootedFlagGraph};
use crate::permgroup::{Perm, PermGroup};
use crate::poset::{faces_of, is_polytopal};

/// Length of the cycle of `r_i r_{i+1}` through each flag, per `i`.
/// Automorphisms preserve it, so it prunes candidate images cheaply.
fn local_signature(g: &FlagGraph) -> Vec<Vec<u32>> {
    let n = g.rank();
    let mut sig = vec![Vec::with_capacity(n.saturating_sub(1)); g.flag_count()];
    for i in 0..n.saturating_sub(1) {
        let mut len = vec![0u32; g.flag_count()];
        for f in 0..g.flag_count() {
            if len[f] != 0 {
                continue;
            }
            let mut cycle = vec![f];
            let mut x = g.neighbor(g.neighbor(f, i), i + 1);
            while x != f {
                cycle.push(x);
                x = g.neighbor(g.neighbor(x, i), i + 1);
            }
            for &y in &cycle {
                len[y] = cycle.len() as u32;
            }
        }
        for (f, s) in sig.iter_mut().enumerate() {
            s.push(len[f]);
        }
    }
    sig
}

fn closure_of(start: usize, gens: &[Perm], degree: usize) -> Vec<bool> {
    let mut seen = vec![false; degree];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}

/// The group of color-preserving permutations of the flags.
///
/// Every automorphism is fixed by the image of flag 0; candidates already in
/// the orbit of flag 0 under the automorphisms found so far are skipped, and
/// so is the orbit of each rejected candidate.
pub fn automorphism_group(g: &FlagGraph) -> PermGroup {
    let f = g.flag_count();
    let sig = local_signature(g);
    let mut gens: Vec<Perm> = Vec::new();
    let mut reached = closure_of(0, &gens, f);
    let mut rejected = vec![false; f];
    for t in 1..f {
        if reached[t] || rejected[t] || sig[t] != sig[0] {
            continue;
        }
        match propagate(g, 0, g, t) {
            Ok(map) => {
                gens.push(Perm::from_u32_unchecked(map));
                reached = closure_of(0, &gens, f);
            }
            Err(_) => {
                for (x, hit) in closure_of(t, &gens, f).into_iter().enumerate() {
                    rejected[x] |= hit;
                }
            }
        }
    }
    PermGroup::new(f, gens).expect("automorphisms are permutations of the flags")
}

/// Flag orbits under a group of automorphisms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitPartition {
    /// Orbit id of each flag; ids ascend with the smallest flag of the orbit.
    pub orbit_of: Vec<u32>,
    /// Smallest flag of each orbit.
    pub representatives: Vec<usize>,
}

impl OrbitPartition {
    pub fn count(&self) -> usize {
        self.representatives.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut s = vec![0; self.count()];
        for &o in &self.orbit_of {
            s[o as usize] += 1;
        }
        s
    }

    pub fn of(&self, flag: usize) -> usize {
        self.orbit_of[flag] as usize
    }
}

pub fn orbits_of_group(group: &PermGroup) -> OrbitPartition {
    let degree = group.degree();
    let mut orbit_of = vec![u32::MAX; degree];
    let mut representatives = Vec::new();
    let mut stack = Vec::new();
    for f in 0..degree {
        if orbit_of[f] != u32::MAX {
            continue;
        }
        let id = representatives.len() as u32;
        representatives.push(f);
        orbit_of[f] = id;
        stack.push(f);
        while let Some(x) = stack.pop() {
            for g in group.generators() {
                let y = g.apply(x);
                if orbit_of[y] == u32::MAX {
                    orbit_of[y] = id;
                    stack.push(y);
                }
            }
        }
    }
    OrbitPartition { orbit_of, representatives }
}

pub fn flag_orbits(g: &FlagGraph) -> OrbitPartition {
    orbits_of_group(&automorphism_group(g))
}

/// A connected edge-colored multigraph where each color is an involution on
/// the vertices; fixed points are semi-edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryTypeGraph {
    rank: usize,
    adj: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StgJson {
    pub rank: usize,
    pub vertices: usize,
    pub adjacency: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StgEdge {
    pub color: usize,
    pub from: usize,
    pub to: usize,
}

impl SymmetryTypeGraph {
    /// Checks that each color is an involution; connectivity and commuting
    /// are left to [`is_allowable`].
    pub fn new(rank: usize, adjacency: Vec<Vec<usize>>) -> Result<Self> {
        if adjacency.len() != rank {
            return Err(Error::MalformedAdjacency(format!("expected {rank} colors, got {}", adjacency.len())));
        }
        let k = adjacency.first().map_or(0, Vec::len);
        if k == 0 {
            return Err(Error::MalformedAdjacency("no vertices".into()));
        }
        let mut adj = Vec::with_capacity(rank);
        for (c, row) in adjacency.into_iter().enumerate() {
            if row.len() != k {
                return Err(Error::MalformedAdjacency(format!("color {c} has {} entries, expected {k}", row.len())));
            }
            for (v, &w) in row.iter().enumerate() {
                if w >= k {
                    return Err(Error::PointOutOfRange { index: w, size: k });
                }
                if row[w] != v {
                    return Err(Error::NotInvolution { color: c, flag: v });
                }
            }
            adj.push(row.into_iter().map(|w| w as u32).collect());
        }
        Ok(SymmetryTypeGraph { rank, adj })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.adj[0].len()
    }

    pub fn neighbor(&self, v: usize, color: usize) -> usize {
        self.adj[color][v] as usize
    }

    pub fn is_semi_edge(&self, v: usize, color: usize) -> bool {
        self.neighbor(v, color) == v
    }

    /// Proper edges, each listed once with `from < to`.
    pub fn edges(&self) -> Vec<StgEdge> {
        let mut out = Vec::new();
        for v in 0..self.vertex_count() {
            for c in 0..self.rank {
                let w = self.neighbor(v, c);
                if v < w {
                    out.push(StgEdge { color: c, from: v, to: w });
                }
            }
        }
        out
    }

    /// Semi-edges as `(vertex, color)`.
    pub fn semi_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for v in 0..self.vertex_count() {
            for c in 0..self.rank {
                if self.is_semi_edge(v, c) {
                    out.push((v, c));
                }
            }
        }
        out
    }

    /// Colors shifted up by one, with a color-0 semi-edge at every vertex.
    pub fn shifted(&self) -> SymmetryTypeGraph {
        let k = self.vertex_count() as u32;
        let mut adj = vec![(0..k).collect::<Vec<u32>>()];
        adj.extend(self.adj.iter().cloned());
        SymmetryTypeGraph { rank: self.rank + 1, adj }
    }

    /// A new top color with a semi-edge at every vertex.
    pub fn with_top_semi_edges(&self) -> SymmetryTypeGraph {
        let k = self.vertex_count() as u32;
        let mut adj = self.adj.clone();
        adj.push((0..k).collect());
        SymmetryTypeGraph { rank: self.rank + 1, adj }
    }

    pub fn dual(&self) -> SymmetryTypeGraph {
        SymmetryTypeGraph { rank: self.rank, adj: self.adj.iter().rev().cloned().collect() }
    }

    pub fn to_json(&self) -> StgJson {
        StgJson { rank: self.rank, vertices: self.vertex_count(), adjacency: self.adj.clone() }
    }

    pub fn from_json(json: StgJson) -> Result<Self> {
        let adj = json.adjacency.into_iter().map(|r| r.into_iter().map(|x| x as usize).collect()).collect();
        let s = SymmetryTypeGraph::new(json.rank, adj)?;
        if s.vertex_count() != json.vertices {
            return Err(Error::MalformedAdjacency("vertex count does not match adjacency".into()));
        }
        Ok(s)
    }

    /// Graphviz rendering; semi-edges end at invisible point nodes.
    pub fn to_dot(&self, base: Option<usize>) -> String {
        let mut s = String::from("graph stg {\n");
        for v in 0..self.vertex_count() {
            let shape = if base == Some(v) { "doublecircle" } else { "circle" };
            writeln!(s, "  v{v} [label=\"{v}\", shape={shape}];").unwrap();
        }
        for e in self.edges() {
            writeln!(s, "  v{} -- v{} [label=\"{}\"];", e.from, e.to, e.color).unwrap();
        }
        for (v, c) in self.semi_edges() {
            writeln!(s, "  s{v}_{c} [shape=point, style=invis];").unwrap();
            writeln!(s, "  v{v} -- s{v}_{c} [label=\"{c}\"];").unwrap();
        }
        s.push_str("}\n");
        s
    }

    fn is_connected(&self) -> bool {
        let k = self.vertex_count();
        let mut seen = vec![false; k];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for c in 0..self.rank {
                let w = self.neighbor(v, c);
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == k
    }

    /// Color-preserving vertex map sending `from` to `to`, if one exists and
    /// is a bijection.
    fn rooted_map(&self, from: usize, other: &SymmetryTypeGraph, to: usize) -> Option<Vec<u32>> {
        let k = self.vertex_count();
        let mut map = vec![u32::MAX; k];
        map[from] = to as u32;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            let w = map[v] as usize;
            for c in 0..self.rank {
                let (vc, wc) = (self.neighbor(v, c), other.neighbor(w, c) as u32);
                if map[vc] == u32::MAX {
                    map[vc] = wc;
                    queue.push_back(vc);
                } else if map[vc] != wc {
                    return None;
                }
            }
        }
        let mut hit = vec![false; k];
        for &w in &map {
            if w == u32::MAX || std::mem::replace(&mut hit[w as usize], true) {
                return None;
            }
        }
        Some(map)
    }

    /// Structural equality up to renaming vertices. Both graphs are assumed
    /// connected.
    pub fn isomorphic(&self, other: &SymmetryTypeGraph) -> bool {
        self.rank == other.rank
            && self.vertex_count() == other.vertex_count()
            && (0..other.vertex_count()).any(|t| self.rooted_map(0, other, t).is_some())
    }
}

/// A symmetry type graph with a distinguished vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedStg {
    pub graph: SymmetryTypeGraph,
    pub base: usize,
}

impl RootedStg {
    pub fn isomorphic_rooted(&self, other: &RootedStg) -> bool {
        self.graph.rank == other.graph.rank
            && self.graph.vertex_count() == other.graph.vertex_count()
            && self.graph.rooted_map(self.base, &other.graph, other.base).is_some()
    }
}

/// Quotient of a flag graph by a flag partition that the colors respect.
pub fn quotient_graph(g: &FlagGraph, orbits: &OrbitPartition) -> SymmetryTypeGraph {
    let adj = (0..g.rank())
        .map(|c| orbits.representatives.iter().map(|&r| orbits.orbit_of[g.neighbor(r, c)]).collect())
        .collect();
    SymmetryTypeGraph { rank: g.rank(), adj }
}

pub fn symmetry_type_graph(g: &FlagGraph) -> SymmetryTypeGraph {
    quotient_graph(g, &flag_orbits(g))
}

pub fn rooted_symmetry_type_graph(g: &RootedFlagGraph) -> RootedStg {
    let orbits = flag_orbits(&g.graph);
    RootedStg { graph: quotient_graph(&g.graph, &orbits), base: orbits.of(g.base) }
}

/// Connected, and colors `i`, `j` with `|i - j| >= 2` commute.
pub fn is_allowable(t: &SymmetryTypeGraph) -> bool {
    if !t.is_connected() {
        return false;
    }
    for i in 0..t.rank {
        for j in i + 2..t.rank {
            for v in 0..t.vertex_count() {
                if t.neighbor(t.neighbor(v, i), j) != t.neighbor(t.neighbor(v, j), i) {
                    return false;
                }
            }
        }
    }
    true
}

/// A generator of the automorphism group named by a closed walk in the
/// symmetry type graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StgGenerator {
    pub word: ColorWord,
    /// The automorphism sending the base flag to `base^word`.
    pub automorphism: Perm,
}

/// Generators of the automorphism group read off a spanning tree of the
/// symmetry type graph.
///
/// The tree is grown breadth-first from the base orbit with colors in
/// ascending order. Each non-tree dart, semi-edges included, gives the walk
/// tree path, dart, tree path back; darts are visited in tree order and then
/// by color. A walk is skipped when it names the same element as an earlier
/// walk using only the involution and far-commuting relations, so `202` is
/// dropped after `0` while `21212` survives next to `1`.
pub fn stg_generators(g: &RootedFlagGraph) -> Vec<StgGenerator> {
    let graph = &g.graph;
    let orbits = flag_orbits(graph);
    let stg = quotient_graph(graph, &orbits);
    let root = orbits.of(g.base);
    let k = stg.vertex_count();
    let mut path: Vec<Option<Vec<usize>>> = vec![None; k];
    let mut parent_dart: Vec<Option<(usize, usize)>> = vec![None; k];
    let mut order = vec![root];
    path[root] = Some(Vec::new());
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for c in 0..stg.rank {
            let w = stg.neighbor(v, c);
            if path[w].is_none() {
                let mut p = path[v].clone().unwrap();
                p.push(c);
                path[w] = Some(p);
                parent_dart[w] = Some((v, c));
                order.push(w);
            }
        }
    }
    let position: Vec<usize> = {
        let mut pos = vec![0; k];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    };
    let mut out = Vec::new();
    let mut seen: Vec<ColorWord> = Vec::new();
    for &v in &order {
        for c in 0..stg.rank {
            let w = stg.neighbor(v, c);
            let is_tree = parent_dart[w] == Some((v, c)) || parent_dart[v] == Some((w, c));
            // a proper non-tree edge is emitted from its earlier endpoint only
            if is_tree || (w != v && position[w] < position[v]) {
                continue;
            }
            let to_v = ColorWord(path[v].clone().unwrap());
            let back = ColorWord(path[w].clone().unwrap()).reversed();
            let word = to_v.concat(&ColorWord(vec![c])).concat(&back);
            let target = graph.apply_word(g.base, &word).expect("colors in range");
            let map = propagate(graph, g.base, graph, target).expect("closed walks give automorphisms");
            let automorphism = Perm::from_u32_unchecked(map);
            let normal = word.string_normal_form();
            if normal.is_empty() || seen.contains(&normal) {
                continue;
            }
            seen.push(normal);
            out.push(StgGenerator { word, automorphism });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisibilityReport {
    /// Flag orbits of a facet.
    pub k1: usize,
    /// Flag orbits of a vertex-figure.
    pub k2: usize,
    /// Flag orbits of the whole polytope.
    pub k3: usize,
    pub divisible: bool,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Faces of one kind as standalone maniplexes: facets (`drop = n-1`) or
/// vertex-figures (`drop = 0`).
pub(crate) fn face_graphs(g: &FlagGraph, drop: usize) -> Result<Vec<FlagGraph>> {
    let colors: Vec<usize> = (0..g.rank()).filter(|&c| c != drop).collect();
    faces_of(g, drop)?
        .faces
        .iter()
        .map(|flags| g.restrict(flags, &colors).map(|(h, _)| h))
        .collect()
}

/// Orbit counts of a facet, a vertex-figure and the whole, for a polytope
/// whose facets are mutually isomorphic and whose vertex-figures are too.
pub fn amalgam_orbit_divisibility(g: &FlagGraph) -> Result<DivisibilityReport> {
    if g.rank() < 2 {
        return Err(Error::NotAnAmalgamation("rank below 2".into()));
    }
    if !is_polytopal(g).polytopal {
        return Err(Error::NotAnAmalgamation("not polytopal".into()));
    }
    let n = g.rank();
    let mut k = [0usize; 2];
    for (slot, (drop, what)) in [(n - 1, "facets"), (0, "vertex-figures")].into_iter().enumerate() {
        let faces = face_graphs(g, drop)?;
        for h in &faces[1..] {
            if !crate::flaggraph::isomorphic(&faces[0], h)? {
                return Err(Error::NotAnAmalgamation(format!("{what} are not mutually isomorphic")));
            }
        }
        k[slot] = flag_orbits(&faces[0]).count();
    }
    let k3 = flag_orbits(g).count();
    let lcm = k[0] / gcd(k[0], k[1]) * k[1];
    Ok(DivisibilityReport { k1: k[0], k2: k[1], k3, divisible: k3.is_multiple_of(lcm) })
}
