//! Coverings and the mix (parallel product) of rooted flag graphs and of
//! symmetry type graphs.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::flaggraph::{isomorphic, propagate, FlagGraph, RootedFlagGraph};
use crate::symmetry::{flag_orbits, quotient_graph, RootedStg, SymmetryTypeGraph};

fn same_rank(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::RankMismatch { left: a, right: b });
    }
    Ok(())
}

/// A color-preserving surjection sending base to base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Covering {
    pub source_base: usize,
    pub target_base: usize,
    /// Image of each source flag.
    pub map: Vec<u32>,
}

impl Covering {
    pub fn apply(&self, flag: usize) -> usize {
        self.map[flag] as usize
    }

    /// `other` after `self`.
    pub fn then(&self, other: &Covering) -> Covering {
        Covering {
            source_base: self.source_base,
            target_base: other.target_base,
            map: self.map.iter().map(|&x| other.map[x as usize]).collect(),
        }
    }
}

/// The covering `a -> b` determined by the bases, or the word along which
/// the base assignment first conflicts.
pub fn covers(a: &RootedFlagGraph, b: &RootedFlagGraph) -> Result<Covering> {
    same_rank(a.rank(), b.rank())?;
    // b is connected, so a conflict-free propagation is onto
    match propagate(&a.graph, a.base, &b.graph, b.base) {
        Ok(map) => Ok(Covering { source_base: a.base, target_base: b.base, map }),
        Err(c) => Err(Error::NoCover { word: c.word }),
    }
}

/// A rooted mix with the pair of input flags behind each flag.
#[derive(Clone, Debug)]
pub struct Mix {
    pub graph: RootedFlagGraph,
    pub pairs: Vec<(u32, u32)>,
}

/// The component of `(a.base, b.base)` in the colorwise product, explored
/// breadth first with colors ascending; pairs are numbered in discovery
/// order, so the root is flag 0.
pub fn mix_with_pairs(a: &RootedFlagGraph, b: &RootedFlagGraph) -> Result<Mix> {
    same_rank(a.rank(), b.rank())?;
    let n = a.rank();
    let fb = b.graph.flag_count() as u64;
    let key = |x: u32, y: u32| x as u64 * fb + y as u64;
    let mut pairs = vec![(a.base as u32, b.base as u32)];
    let mut index: HashMap<u64, u32> = HashMap::new();
    index.insert(key(pairs[0].0, pairs[0].1), 0);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut head = 0;
    while head < pairs.len() {
        let (x, y) = pairs[head];
        for (c, row) in adj.iter_mut().enumerate() {
            let next = (a.graph.neighbor(x as usize, c) as u32, b.graph.neighbor(y as usize, c) as u32);
            let k = *index.entry(key(next.0, next.1)).or_insert_with(|| {
                pairs.push(next);
                (pairs.len() - 1) as u32
            });
            row.push(k as usize);
        }
        head += 1;
    }
    let graph = RootedFlagGraph::new(FlagGraph::new(n, adj)?, 0)?;
    Ok(Mix { graph, pairs })
}

pub fn mix_rooted(a: &RootedFlagGraph, b: &RootedFlagGraph) -> Result<RootedFlagGraph> {
    Ok(mix_with_pairs(a, b)?.graph)
}

/// Mix of several rooted graphs, folded from the left.
pub fn mix_many(parts: &[RootedFlagGraph]) -> Result<RootedFlagGraph> {
    let (first, rest) = parts
        .split_first()
        .ok_or_else(|| Error::MalformedAdjacency("nothing to mix".into()))?;
    rest.iter().try_fold(first.clone(), |acc, g| mix_rooted(&acc, g))
}

/// Pair-state exploration over two symmetry type graphs. Returns the mixed
/// graph and the vertex pair behind each vertex.
fn stg_product(
    s: &SymmetryTypeGraph,
    s_base: usize,
    t: &SymmetryTypeGraph,
    t_base: usize,
) -> (SymmetryTypeGraph, Vec<(usize, usize)>) {
    let n = s.rank();
    let mut pairs = vec![(s_base, t_base)];
    let mut index: HashMap<(usize, usize), usize> = HashMap::from([((s_base, t_base), 0)]);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut head = 0;
    while head < pairs.len() {
        let (x, y) = pairs[head];
        for (c, row) in adj.iter_mut().enumerate() {
            let next = (s.neighbor(x, c), t.neighbor(y, c));
            let k = *index.entry(next).or_insert_with(|| {
                pairs.push(next);
                pairs.len() - 1
            });
            row.push(k);
        }
        head += 1;
    }
    let g = SymmetryTypeGraph::new(n, adj).expect("componentwise involutions");
    (g, pairs)
}

/// The component of the base pair in the product of two rooted symmetry
/// type graphs; a pair of semi-edges gives a semi-edge.
pub fn mix_stg(s: &RootedStg, t: &RootedStg) -> Result<RootedStg> {
    same_rank(s.graph.rank(), t.graph.rank())?;
    let (graph, _) = stg_product(&s.graph, s.base, &t.graph, t.base);
    Ok(RootedStg { graph, base: 0 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StgSurjectionReport {
    /// Vertices of the mixed symmetry type graphs.
    pub product_vertices: usize,
    /// Flag orbits of the mixed flag graph.
    pub mix_orbits: usize,
    /// Orbit counts of the two inputs.
    pub k: usize,
    pub m: usize,
    pub well_defined: bool,
    pub color_preserving: bool,
    pub surjective: bool,
    /// `mix_orbits <= k * m`.
    pub within_bound: bool,
}

/// Builds the map from the mix of the rooted symmetry type graphs onto the
/// symmetry type graph of the mix, sending a vertex pair to the orbit of a
/// mixed flag lying over it, and checks its properties.
pub fn verify_stg_surjection(p: &RootedFlagGraph, q: &RootedFlagGraph) -> Result<StgSurjectionReport> {
    same_rank(p.rank(), q.rank())?;
    let (op, oq) = (flag_orbits(&p.graph), flag_orbits(&q.graph));
    let (tp, tq) = (quotient_graph(&p.graph, &op), quotient_graph(&q.graph, &oq));
    let (product, product_pairs) = stg_product(&tp, op.of(p.base), &tq, oq.of(q.base));
    let mix = mix_with_pairs(p, q)?;
    let om = flag_orbits(&mix.graph.graph);
    let tm = quotient_graph(&mix.graph.graph, &om);
    let vertex_of: HashMap<(usize, usize), usize> =
        product_pairs.iter().enumerate().map(|(v, &pair)| (pair, v)).collect();
    let mut image = vec![usize::MAX; product.vertex_count()];
    let mut well_defined = true;
    let mut covered = true;
    for (flag, &(x, y)) in mix.pairs.iter().enumerate() {
        match vertex_of.get(&(op.of(x as usize), oq.of(y as usize))) {
            Some(&v) => {
                let o = om.of(flag);
                if image[v] == usize::MAX {
                    image[v] = o;
                } else if image[v] != o {
                    well_defined = false;
                }
            }
            None => covered = false,
        }
    }
    let defined = image.iter().all(|&o| o != usize::MAX);
    let color_preserving = well_defined
        && defined
        && (0..product.vertex_count()).all(|v| {
            (0..product.rank()).all(|c| image[product.neighbor(v, c)] == tm.neighbor(image[v], c))
        });
    let mut hit = vec![false; tm.vertex_count()];
    for &o in image.iter().filter(|&&o| o != usize::MAX) {
        hit[o] = true;
    }
    Ok(StgSurjectionReport {
        product_vertices: product.vertex_count(),
        mix_orbits: om.count(),
        k: op.count(),
        m: oq.count(),
        well_defined: well_defined && covered && defined,
        color_preserving,
        surjective: hit.iter().all(|&h| h),
        within_bound: om.count() <= op.count() * oq.count(),
    })
}

/// Outcome of comparing the rooted mixes over all pairs of orbits.
#[derive(Clone, Debug)]
pub enum UnrootedMix {
    WellDefined {
        graph: FlagGraph,
        stg_product_connected: bool,
    },
    Incomparable {
        /// Root pair and mix of the first pair of orbit representatives.
        first: ((usize, usize), RootedFlagGraph),
        /// The first later root pair whose mix is not isomorphic to `first`.
        second: ((usize, usize), RootedFlagGraph),
        stg_product_connected: bool,
    },
}

impl UnrootedMix {
    pub fn is_well_defined(&self) -> bool {
        matches!(self, UnrootedMix::WellDefined { .. })
    }

    pub fn stg_product_connected(&self) -> bool {
        match self {
            UnrootedMix::WellDefined { stg_product_connected, .. }
            | UnrootedMix::Incomparable { stg_product_connected, .. } => *stg_product_connected,
        }
    }
}

/// Mixes `p` and `q` at every pair of orbit representatives (smallest flag
/// of each orbit) and compares the results up to unrooted isomorphism.
pub fn unrooted_mix_welldefined(p: &FlagGraph, q: &FlagGraph) -> Result<UnrootedMix> {
    same_rank(p.rank(), q.rank())?;
    let (op, oq) = (flag_orbits(p), flag_orbits(q));
    let (tp, tq) = (quotient_graph(p, &op), quotient_graph(q, &oq));
    let (product, _) = stg_product(&tp, 0, &tq, 0);
    // the full product is connected iff the component of (0, 0) is all of it
    let stg_product_connected = product.vertex_count() == op.count() * oq.count();
    let mut first: Option<((usize, usize), RootedFlagGraph)> = None;
    for &x in &op.representatives {
        for &y in &oq.representatives {
            let m = mix_rooted(&p.rooted(x)?, &q.rooted(y)?)?;
            match &first {
                None => first = Some(((x, y), m)),
                Some((_, f)) => {
                    if !isomorphic(&f.graph, &m.graph)? {
                        return Ok(UnrootedMix::Incomparable {
                            first: first.unwrap(),
                            second: ((x, y), m),
                            stg_product_connected,
                        });
                    }
                }
            }
        }
    }
    Ok(UnrootedMix::WellDefined { graph: first.unwrap().1.graph, stg_product_connected })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flaggraph::isomorphic_rooted;

    fn polygon(p: usize) -> FlagGraph {
        let f = 2 * p;
        let r0 = (0..f).map(|x| x ^ 1).collect();
        let r1 = (0..f).map(|x| if x % 2 == 1 { (x + 1) % f } else { (x + f - 1) % f }).collect();
        FlagGraph::new(2, vec![r0, r1]).unwrap()
    }

    #[test]
    fn polygon_mix_is_lcm() {
        let a = polygon(4).rooted(0).unwrap();
        let b = polygon(6).rooted(0).unwrap();
        let m = mix_rooted(&a, &b).unwrap();
        assert!(isomorphic(&m.graph, &polygon(12)).unwrap());
        assert!(covers(&m, &a).is_ok());
        assert!(covers(&m, &b).is_ok());
        assert!(matches!(covers(&a, &b), Err(Error::NoCover { .. })));
    }

    #[test]
    fn self_mix_is_idempotent() {
        let a = polygon(5).rooted(3).unwrap();
        assert!(isomorphic_rooted(&mix_rooted(&a, &a).unwrap(), &a).unwrap());
    }

    #[test]
    fn rank_mismatch() {
        let a = polygon(3).rooted(0).unwrap();
        let t = SymmetryTypeGraph::new(3, vec![vec![0], vec![0], vec![0]]).unwrap();
        let b = RootedFlagGraph::new(
            FlagGraph::new(3, vec![vec![1, 0], vec![1, 0], vec![1, 0]]).unwrap(),
            0,
        )
        .unwrap();
        assert_eq!(mix_rooted(&a, &b).unwrap_err(), Error::RankMismatch { left: 2, right: 3 });
        let s = RootedStg { graph: SymmetryTypeGraph::new(2, vec![vec![0], vec![0]]).unwrap(), base: 0 };
        assert!(mix_stg(&s, &RootedStg { graph: t, base: 0 }).is_err());
    }

    #[test]
    fn one_vertex_stgs_mix_to_one_vertex() {
        let s = RootedStg { graph: SymmetryTypeGraph::new(2, vec![vec![0], vec![0]]).unwrap(), base: 0 };
        assert_eq!(mix_stg(&s, &s).unwrap().graph.vertex_count(), 1);
    }
}
