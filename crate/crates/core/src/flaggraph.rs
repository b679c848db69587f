//! Flag graphs of maniplexes.
//!
//! A [`FlagGraph`] of rank `n` is stored as `n` fixed-point-free involutions on
//! the dense flag set `0..F`. Color `i` sends a flag to its `i`-adjacent flag.
//! Words act on the right: `apply_word(f, [a, b])` is `(f^a)^b`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A validated maniplex flag graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FlagGraph {
    rank: usize,
    adj: Vec<Vec<u32>>,
}

/// A flag graph together with a distinguished base flag.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootedFlagGraph {
    pub graph: FlagGraph,
    pub base: usize,
}

/// A word over the colors `0..n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorWord(pub Vec<usize>);

/// Bit-exact JSON interchange form: `adjacency[i][f]` is `f^i`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FlagGraphJson {
    pub rank: usize,
    pub flags: usize,
    pub adjacency: Vec<Vec<usize>>,
}

/// Where a color-propagation between two rooted graphs broke down.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropagationConflict {
    /// Word from the source base to the flag whose image is contradictory.
    pub word: ColorWord,
    /// The source flag reached by `word`.
    pub flag: usize,
}

impl fmt::Debug for FlagGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FlagGraph")
            .field("rank", &self.rank)
            .field("flags", &self.flag_count())
            .finish()
    }
}

/// Checks the three maniplex conditions on raw adjacency data and builds the
/// graph.
///
/// Checks run in phases (shape, involutions, commuting squares, connectivity)
/// and within each phase in ascending flag order, then ascending color order.
pub fn validate_maniplex(rank: usize, adjacency: Vec<Vec<usize>>) -> Result<FlagGraph> {
    if rank == 0 {
        return Err(Error::MalformedAdjacency("rank must be at least 1".into()));
    }
    if adjacency.len() != rank {
        return Err(Error::MalformedAdjacency(format!(
            "expected {rank} color mappings, found {}",
            adjacency.len()
        )));
    }
    let flags = adjacency[0].len();
    if flags == 0 {
        return Err(Error::MalformedAdjacency("empty flag set".into()));
    }
    if flags > u32::MAX as usize {
        return Err(Error::MalformedAdjacency("too many flags".into()));
    }
    for (i, row) in adjacency.iter().enumerate() {
        if row.len() != flags {
            return Err(Error::MalformedAdjacency(format!(
                "color {i} maps {} flags, expected {flags}",
                row.len()
            )));
        }
        if let Some(&bad) = row.iter().find(|&&t| t >= flags) {
            return Err(Error::MalformedAdjacency(format!(
                "color {i} sends a flag to {bad}, outside 0..{flags}"
            )));
        }
    }
    let adj: Vec<Vec<u32>> = adjacency
        .into_iter()
        .map(|row| row.into_iter().map(|x| x as u32).collect())
        .collect();
    let g = FlagGraph { rank, adj };
    g.check_involutions()?;
    g.check_squares()?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(g)
}

impl FlagGraph {
    /// Validating constructor; see [`validate_maniplex`].
    pub fn new(rank: usize, adjacency: Vec<Vec<usize>>) -> Result<Self> {
        validate_maniplex(rank, adjacency)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn flag_count(&self) -> usize {
        self.adj[0].len()
    }

    /// `flag^color`. Panics if either index is out of range.
    #[inline]
    pub fn neighbor(&self, flag: usize, color: usize) -> usize {
        self.adj[color][flag] as usize
    }

    /// The involution of one color as an image array.
    pub fn color_map(&self, color: usize) -> &[u32] {
        &self.adj[color]
    }

    pub fn apply_word(&self, flag: usize, word: &ColorWord) -> Result<usize> {
        self.check_flag(flag)?;
        let mut f = flag;
        for &c in &word.0 {
            if c >= self.rank {
                return Err(Error::ColorOutOfRange { color: c, rank: self.rank });
            }
            f = self.neighbor(f, c);
        }
        Ok(f)
    }

    /// Reverses the color order: color `i` becomes color `n-1-i`.
    pub fn dual(&self) -> FlagGraph {
        let mut adj = self.adj.clone();
        adj.reverse();
        FlagGraph { rank: self.rank, adj }
    }

    pub fn rooted(&self, base: usize) -> Result<RootedFlagGraph> {
        RootedFlagGraph::new(self.clone(), base)
    }

    pub(crate) fn check_flag(&self, flag: usize) -> Result<()> {
        if flag >= self.flag_count() {
            return Err(Error::PointOutOfRange { index: flag, size: self.flag_count() });
        }
        Ok(())
    }

    fn check_involutions(&self) -> Result<()> {
        for f in 0..self.flag_count() {
            for i in 0..self.rank {
                let t = self.neighbor(f, i);
                if t == f {
                    return Err(Error::FixedPoint { color: i, flag: f });
                }
                if self.neighbor(t, i) != f {
                    return Err(Error::NotInvolution { color: i, flag: f });
                }
            }
        }
        Ok(())
    }

    fn check_squares(&self) -> Result<()> {
        for f in 0..self.flag_count() {
            for i in 0..self.rank {
                for j in i + 2..self.rank {
                    let ij = self.neighbor(self.neighbor(f, i), j);
                    let ji = self.neighbor(self.neighbor(f, j), i);
                    if ij != ji {
                        return Err(Error::SquareViolation { i, j, flag: f });
                    }
                }
            }
        }
        Ok(())
    }

    fn is_connected(&self) -> bool {
        let (_, count) = self.components(|_| true);
        count == 1
    }

    /// Connected components using only the colors accepted by `keep`.
    ///
    /// Returns a label per flag and the component count. Labels are assigned
    /// in ascending order of each component's minimum flag.
    pub fn components(&self, keep: impl Fn(usize) -> bool) -> (Vec<u32>, usize) {
        let n = self.flag_count();
        let colors: Vec<usize> = (0..self.rank).filter(|&c| keep(c)).collect();
        let mut label = vec![u32::MAX; n];
        let mut count = 0u32;
        let mut stack = Vec::new();
        for start in 0..n {
            if label[start] != u32::MAX {
                continue;
            }
            label[start] = count;
            stack.push(start);
            while let Some(f) = stack.pop() {
                for &c in &colors {
                    let t = self.neighbor(f, c);
                    if label[t] == u32::MAX {
                        label[t] = count;
                        stack.push(t);
                    }
                }
            }
            count += 1;
        }
        (label, count as usize)
    }

    /// The maniplex induced on a set of flags closed under `colors`, with the
    /// kept colors renumbered `0..colors.len()` in the given order.
    ///
    /// Used for facets (`colors = 0..n-1`) and vertex-figures
    /// (`colors = 1..n`). Returns the graph and the original flag of each new
    /// flag index.
    pub fn restrict(&self, flags: &[usize], colors: &[usize]) -> Result<(FlagGraph, Vec<usize>)> {
        if colors.is_empty() {
            return Err(Error::MalformedAdjacency("restriction needs at least one color".into()));
        }
        let mut local = std::collections::HashMap::with_capacity(flags.len());
        for (k, &f) in flags.iter().enumerate() {
            self.check_flag(f)?;
            local.insert(f, k);
        }
        let mut adj = Vec::with_capacity(colors.len());
        for &c in colors {
            if c >= self.rank {
                return Err(Error::ColorOutOfRange { color: c, rank: self.rank });
            }
            let mut row = Vec::with_capacity(flags.len());
            for &f in flags {
                let t = self.neighbor(f, c);
                match local.get(&t) {
                    Some(&k) => row.push(k),
                    None => {
                        return Err(Error::MalformedAdjacency(format!(
                            "flag set not closed under color {c}"
                        )))
                    }
                }
            }
            adj.push(row);
        }
        Ok((validate_maniplex(colors.len(), adj)?, flags.to_vec()))
    }

    pub fn to_json(&self) -> FlagGraphJson {
        FlagGraphJson {
            rank: self.rank,
            flags: self.flag_count(),
            adjacency: self
                .adj
                .iter()
                .map(|row| row.iter().map(|&x| x as usize).collect())
                .collect(),
        }
    }

    pub fn from_json(json: FlagGraphJson) -> Result<Self> {
        if json.adjacency.iter().any(|row| row.len() != json.flags) {
            return Err(Error::MalformedAdjacency(format!(
                "declared {} flags but an adjacency row disagrees",
                json.flags
            )));
        }
        validate_maniplex(json.rank, json.adjacency)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("flag graph json")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_json(serde_json::from_str(s)?)
    }
}

impl RootedFlagGraph {
    pub fn new(graph: FlagGraph, base: usize) -> Result<Self> {
        graph.check_flag(base)?;
        Ok(RootedFlagGraph { graph, base })
    }

    pub fn rank(&self) -> usize {
        self.graph.rank()
    }

    /// The same graph rooted at `base^word`.
    pub fn reroot(&self, word: &ColorWord) -> Result<Self> {
        let base = self.graph.apply_word(self.base, word)?;
        Ok(RootedFlagGraph { graph: self.graph.clone(), base })
    }
}

/// Propagates `a_base -> b_base` along colors.
///
/// Returns the unique color-preserving map from `a` into `b` extending the
/// base assignment, or the first conflict in BFS order (colors ascending).
pub fn propagate(
    a: &FlagGraph,
    a_base: usize,
    b: &FlagGraph,
    b_base: usize,
) -> std::result::Result<Vec<u32>, PropagationConflict> {
    debug_assert_eq!(a.rank(), b.rank());
    let n = a.flag_count();
    let mut map = vec![u32::MAX; n];
    // (parent flag, color) for witness reconstruction
    let mut parent: Vec<(u32, u8)> = vec![(u32::MAX, 0); n];
    let mut queue = VecDeque::new();
    map[a_base] = b_base as u32;
    queue.push_back(a_base);
    while let Some(x) = queue.pop_front() {
        let y = map[x] as usize;
        for c in 0..a.rank() {
            let xc = a.neighbor(x, c);
            let yc = b.neighbor(y, c) as u32;
            if map[xc] == u32::MAX {
                map[xc] = yc;
                parent[xc] = (x as u32, c as u8);
                queue.push_back(xc);
            } else if map[xc] != yc {
                let mut word = vec![c];
                let mut cur = x;
                while cur != a_base {
                    let (p, pc) = parent[cur];
                    word.push(pc as usize);
                    cur = p as usize;
                }
                word.reverse();
                return Err(PropagationConflict { word: ColorWord(word), flag: xc });
            }
        }
    }
    Ok(map)
}

/// The rooted isomorphism sending `a.base` to `b.base`, if any.
pub fn rooted_isomorphism(a: &RootedFlagGraph, b: &RootedFlagGraph) -> Result<Option<Vec<u32>>> {
    if a.rank() != b.rank() {
        return Err(Error::RankMismatch { left: a.rank(), right: b.rank() });
    }
    if a.graph.flag_count() != b.graph.flag_count() {
        return Ok(None);
    }
    Ok(match propagate(&a.graph, a.base, &b.graph, b.base) {
        // Equal sizes: a surjective color-preserving map between connected
        // graphs is a bijection iff it is injective.
        Ok(map) if is_injective(&map, b.graph.flag_count()) => Some(map),
        _ => None,
    })
}

pub fn isomorphic_rooted(a: &RootedFlagGraph, b: &RootedFlagGraph) -> Result<bool> {
    Ok(rooted_isomorphism(a, b)?.is_some())
}

/// Unrooted color-preserving isomorphism: fixes flag 0 of `a` and tries every
/// flag of `b` as its image.
pub fn isomorphic(a: &FlagGraph, b: &FlagGraph) -> Result<bool> {
    if a.rank() != b.rank() {
        return Err(Error::RankMismatch { left: a.rank(), right: b.rank() });
    }
    if a.flag_count() != b.flag_count() {
        return Ok(false);
    }
    let n = b.flag_count();
    Ok((0..n).any(|t| match propagate(a, 0, b, t) {
        Ok(map) => is_injective(&map, n),
        Err(_) => false,
    }))
}

pub(crate) fn is_injective(map: &[u32], range: usize) -> bool {
    let mut seen = vec![false; range];
    for &y in map {
        let y = y as usize;
        if seen[y] {
            return false;
        }
        seen[y] = true;
    }
    true
}

impl ColorWord {
    pub fn new(colors: Vec<usize>) -> Self {
        ColorWord(colors)
    }

    pub fn empty() -> Self {
        ColorWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &ColorWord) -> ColorWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        ColorWord(v)
    }

    pub fn reversed(&self) -> ColorWord {
        let mut v = self.0.clone();
        v.reverse();
        ColorWord(v)
    }

    /// Normal form in the group where each color is an involution and colors
    /// `i`, `j` with `|i - j| >= 2` commute, and nothing else holds.
    ///
    /// That group is right-angled, so a word reduces by cancelling two equal
    /// letters separated only by letters commuting with them, and reduced
    /// words for the same element differ only by commutations. The normal form
    /// is the lexicographically least such rearrangement.
    pub fn string_normal_form(&self) -> ColorWord {
        let commute = |a: usize, b: usize| a.abs_diff(b) >= 2;
        let mut w = self.0.clone();
        'reduce: loop {
            for i in 0..w.len() {
                for j in i + 1..w.len() {
                    if w[j] == w[i] {
                        w.remove(j);
                        w.remove(i);
                        continue 'reduce;
                    }
                    if !commute(w[i], w[j]) {
                        break;
                    }
                }
            }
            break;
        }
        let mut out = Vec::with_capacity(w.len());
        while !w.is_empty() {
            // letters that can be commuted to the front
            let k = (0..w.len())
                .filter(|&k| w[..k].iter().all(|&x| commute(x, w[k])))
                .min_by_key(|&k| w[k])
                .expect("the first letter is always available");
            out.push(w.remove(k));
        }
        ColorWord(out)
    }
}

impl From<Vec<usize>> for ColorWord {
    fn from(v: Vec<usize>) -> Self {
        ColorWord(v)
    }
}

/// Digits run together when every color is below 10 (`"12121"`), otherwise
/// comma-separated.
impl fmt::Display for ColorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&c| c < 10) {
            for c in &self.0 {
                write!(f, "{c}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl FromStr for ColorWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::MalformedAdjacency(format!("bad color word {s:?}")))
        };
        if s.contains(',') {
            s.split(',').map(parse).collect::<Result<Vec<_>>>().map(ColorWord)
        } else {
            s.chars()
                .map(|c| parse(&c.to_string()))
                .collect::<Result<Vec<_>>>()
                .map(ColorWord)
        }
    }
}

impl Serialize for ColorWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> FlagGraph {
        // flag 2k = (vertex k, edge k), flag 2k+1 = (vertex k+1, edge k)
        let r0 = (0..8).map(|f| f ^ 1).collect();
        let r1 = (0..8).map(|f| if f % 2 == 1 { (f + 1) % 8 } else { (f + 7) % 8 }).collect();
        FlagGraph::new(2, vec![r0, r1]).unwrap()
    }

    #[test]
    fn square_is_valid() {
        let g = square();
        assert_eq!(g.rank(), 2);
        assert_eq!(g.flag_count(), 8);
    }

    #[test]
    fn word_action() {
        let g = square();
        assert_eq!(g.apply_word(0, &ColorWord::empty()).unwrap(), 0);
        let w = ColorWord(vec![0, 1, 0, 1, 0, 1, 0, 1]);
        assert_eq!(g.apply_word(0, &w).unwrap(), 0);
        assert_eq!(g.apply_word(0, &ColorWord(vec![0, 1])).unwrap(), 2);
        assert!(matches!(
            g.apply_word(0, &ColorWord(vec![2])),
            Err(Error::ColorOutOfRange { color: 2, rank: 2 })
        ));
    }

    #[test]
    fn validation_errors_name_first_witness() {
        // r0 fixes flag 1
        let err = FlagGraph::new(1, vec![vec![1, 1]]).unwrap_err();
        assert_eq!(err, Error::NotInvolution { color: 0, flag: 0 });
        let err = FlagGraph::new(1, vec![vec![0, 1]]).unwrap_err();
        assert_eq!(err, Error::FixedPoint { color: 0, flag: 0 });
        let err = FlagGraph::new(1, vec![vec![1, 0, 3, 2]]).unwrap_err();
        assert_eq!(err, Error::Disconnected);
    }

    #[test]
    fn square_violation_is_reported() {
        // r0 = (01)(23)(45), r2 = (02)(14)(35): 0^{02} = 4 but 0^{20} = 3
        let r0 = vec![1, 0, 3, 2, 5, 4];
        let r1 = vec![1, 0, 3, 2, 5, 4];
        let r2 = vec![2, 4, 0, 5, 1, 3];
        let err = FlagGraph::new(3, vec![r0, r1, r2]).unwrap_err();
        assert_eq!(err, Error::SquareViolation { i: 0, j: 2, flag: 0 });
    }

    #[test]
    fn dual_is_involution() {
        let g = square();
        assert_eq!(g.dual().dual(), g);
        assert!(isomorphic_rooted(&g.rooted(0).unwrap(), &g.dual().rooted(0).unwrap()).unwrap());
    }

    #[test]
    fn rooted_iso_on_polygon() {
        let g = square();
        let a = g.rooted(0).unwrap();
        for t in 0..8 {
            assert!(isomorphic_rooted(&a, &g.rooted(t).unwrap()).unwrap());
        }
    }

    #[test]
    fn json_round_trip() {
        let g = square();
        let s = g.to_json_string();
        assert!(s.starts_with("{\"rank\":2,\"flags\":8,\"adjacency\":[["));
        assert_eq!(FlagGraph::from_json_str(&s).unwrap(), g);
    }

    #[test]
    fn color_word_text() {
        let w: ColorWord = "12121".parse().unwrap();
        assert_eq!(w.0, vec![1, 2, 1, 2, 1]);
        assert_eq!(w.to_string(), "12121");
        let w: ColorWord = "1,12".parse().unwrap();
        assert_eq!(w.to_string(), "1,12");
    }

    #[test]
    fn restrict_to_vertex() {
        let g = square();
        let err = g.restrict(&[0, 1], &[1]).unwrap_err();
        assert!(matches!(err, Error::MalformedAdjacency(_)));
        let (v, _) = g.restrict(&[0, 1], &[0]).unwrap();
        assert_eq!(v.flag_count(), 2);
    }
}
