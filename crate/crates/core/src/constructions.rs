//! Constructors for polygons, prisms, toroidal maps, cube stacks, trivial
//! extensions and the `2^P` flag-set construction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flaggraph::FlagGraph;
use crate::poset::{faces_of, flag_graph_of_poset, FacePoset};
use crate::symmetry::symmetry_type_graph;

/// Default cap on the number of flags `two_power` may allocate.
pub const DEFAULT_FLAG_BUDGET: u64 = 10_000_000;

/// The `p`-gon. Flag `2k` is (vertex `k`, edge `k`) and flag `2k+1` is
/// (vertex `k+1`, edge `k`), where edge `k` joins vertices `k` and `k+1`.
pub fn polygon(p: usize) -> Result<FlagGraph> {
    if p < 2 {
        return Err(Error::TooSmall { value: p, min: 2 });
    }
    let f = 2 * p;
    let r0 = (0..f).map(|x| x ^ 1).collect();
    let r1 = (0..f).map(|x| if x % 2 == 1 { (x + 1) % f } else { (x + f - 1) % f }).collect();
    FlagGraph::new(2, vec![r0, r1])
}

/// A stack of `m` prisms over the `p`-gon, seams kept. Vertex `(j, l)` has
/// index `l * p + j`.
fn prism_stack_poset(p: usize, m: usize) -> Result<FacePoset> {
    let v = |j: usize, l: usize| l * p + j % p;
    let mut edges = Vec::new();
    for l in 0..=m {
        edges.extend((0..p).map(|j| [v(j, l), v(j + 1, l)]));
    }
    for l in 0..m {
        edges.extend((0..p).map(|j| [v(j, l), v(j, l + 1)]));
    }
    let mut faces = vec![(0..p).map(|j| v(j, 0)).collect::<Vec<_>>(), (0..p).map(|j| v(j, m)).collect()];
    for l in 0..m {
        faces.extend((0..p).map(|j| vec![v(j, l), v(j + 1, l), v(j + 1, l + 1), v(j, l + 1)]));
    }
    FacePoset::from_polyhedron(p * (m + 1), &edges, &faces)
}

/// The prism over a polygon given as a rank-2 flag graph.
pub fn prism_over(g: &FlagGraph) -> Result<FlagGraph> {
    if g.rank() != 2 {
        return Err(Error::RankMismatch { left: g.rank(), right: 2 });
    }
    flag_graph_of_poset(&prism_stack_poset(g.flag_count() / 2, 1)?)
}

/// `m` cubes glued face to face in a column, keeping the seams.
pub fn cube_stack(m: usize) -> Result<FlagGraph> {
    if m < 1 {
        return Err(Error::TooSmall { value: m, min: 1 });
    }
    flag_graph_of_poset(&cube_stack_poset(m)?)
}

pub fn cube_stack_poset(m: usize) -> Result<FacePoset> {
    prism_stack_poset(4, m)
}

/// Parameters of the toroidal map `{4,4}_(b,c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToroidParams {
    pub b: i64,
    pub c: i64,
}

/// `(g, u, v)` with `u*a + v*b = g = gcd(a, b) >= 0`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, u, v) = ext_gcd(b, a.rem_euclid(b));
        (g, v, u - a.div_euclid(b) * v)
    }
}

/// The square tiling of the plane modulo the lattice spanned by `(b, c)` and
/// `(-c, b)`.
///
/// Squares are named by their lower-left vertex, reduced to the fundamental
/// domain `0 <= x < N/D`, `0 <= y < D` with `N = b^2 + c^2`, `D = gcd(b, c)`.
/// Flag `(s*4 + k)*2 + t` sits at corner `k` of square `s = x*D + y` (corners
/// counterclockwise from the lower left) on the side leaving `k` forward
/// (`t = 0`) or backward (`t = 1`). The base flag is 0.
pub fn toroid_44(t: ToroidParams) -> Result<FlagGraph> {
    let ToroidParams { b, c } = t;
    let n = b
        .checked_mul(b)
        .and_then(|bb| c.checked_mul(c).and_then(|cc| bb.checked_add(cc)))
        .filter(|&n| n > 0 && n <= u32::MAX as i64 / 8)
        .ok_or(Error::DegenerateLattice { b, c })?;
    // u*c + v*b = d gives the lattice vector (u*b - v*c, d)
    let (d, u, v) = ext_gcd(c, b);
    let a = n / d;
    let shear = u * b - v * c;
    let square = |x: i64, y: i64| -> usize {
        let q = y.div_euclid(d);
        let y = y.rem_euclid(d);
        let x = (x - q * shear).rem_euclid(a);
        (x * d + y) as usize
    };
    let flag = |s: usize, k: usize, t: usize| (s * 4 + k) * 2 + t;
    let count = 8 * n as usize;
    let mut r0 = vec![0; count];
    let mut r1 = vec![0; count];
    let mut r2 = vec![0; count];
    for x in 0..a {
        for y in 0..d {
            let s = square(x, y);
            let (below, right, above, left) = (square(x, y - 1), square(x + 1, y), square(x, y + 1), square(x - 1, y));
            for k in 0..4 {
                r0[flag(s, k, 0)] = flag(s, (k + 1) % 4, 1);
                r0[flag(s, (k + 1) % 4, 1)] = flag(s, k, 0);
                r1[flag(s, k, 0)] = flag(s, k, 1);
                r1[flag(s, k, 1)] = flag(s, k, 0);
            }
            let across = [
                ((0, 0), below, (3, 1)),
                ((1, 1), below, (2, 0)),
                ((1, 0), right, (0, 1)),
                ((2, 1), right, (3, 0)),
                ((2, 0), above, (1, 1)),
                ((3, 1), above, (0, 0)),
                ((0, 1), left, (1, 0)),
                ((3, 0), left, (2, 1)),
            ];
            for ((k, t), other, (k2, t2)) in across {
                r2[flag(s, k, t)] = flag(other, k2, t2);
            }
        }
    }
    FlagGraph::new(3, vec![r0, r1, r2])
}

/// Two copies of `g` glued along their boundary: colors below the rank act
/// within each copy and the new top color swaps the copies.
pub fn trivial_extension(g: &FlagGraph) -> FlagGraph {
    let f = g.flag_count();
    let mut adj: Vec<Vec<usize>> = (0..g.rank())
        .map(|c| {
            let m = g.color_map(c);
            (0..2 * f).map(|x| m[x % f] as usize + (x / f) * f).collect()
        })
        .collect();
    adj.push((0..2 * f).map(|x| (x + f) % (2 * f)).collect());
    FlagGraph::new(g.rank() + 1, adj).expect("trivial extension of a maniplex is a maniplex")
}

/// The `2^P` construction on flags `Omega x Z_2^m`, `m` the vertex count.
///
/// Flag `(phi, x)` has index `x * F + phi`. Color 0 flips the bit of the
/// vertex of `phi` (vertices in order of smallest flag); color `i >= 1` acts
/// as input color `i - 1`.
pub fn two_power(g: &FlagGraph, budget: u64) -> Result<FlagGraph> {
    let f = g.flag_count();
    let vertices = faces_of(g, 0)?;
    let m = vertices.count();
    let needed = if m >= 100 { u128::MAX } else { (f as u128) << m };
    if needed > budget as u128 || needed > u32::MAX as u128 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let total = needed as usize;
    let mut adj = Vec::with_capacity(g.rank() + 1);
    adj.push((0..total).map(|i| ((i / f) ^ (1 << vertices.face_of(i % f))) * f + i % f).collect());
    for c in 0..g.rank() {
        let map = g.color_map(c);
        adj.push((0..total).map(|i| i - i % f + map[i % f] as usize).collect());
    }
    FlagGraph::new(g.rank() + 1, adj)
}

/// One label-shifting step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShiftStep {
    /// Dual of the trivial extension of the dual.
    TrivialExtension,
    TwoPower,
}

#[derive(Clone, Debug)]
pub struct ShiftResult {
    pub graph: FlagGraph,
    /// Whether each step shifted the symmetry type graph labels by one and
    /// added color-0 semi-edges.
    pub stg_shifted: Vec<bool>,
}

/// Applies the steps in order, checking the symmetry type graph after each.
pub fn shift_stg_iterate(g: &FlagGraph, steps: &[ShiftStep], budget: u64) -> Result<ShiftResult> {
    let mut cur = g.clone();
    let mut stg = symmetry_type_graph(&cur);
    let mut stg_shifted = Vec::with_capacity(steps.len());
    for step in steps {
        let next = match step {
            ShiftStep::TrivialExtension => trivial_extension(&cur.dual()).dual(),
            ShiftStep::TwoPower => two_power(&cur, budget)?,
        };
        if next.flag_count() as u64 > budget {
            return Err(Error::BudgetExceeded { needed: next.flag_count() as u128, budget });
        }
        let next_stg = symmetry_type_graph(&next);
        stg_shifted.push(next_stg.isomorphic(&stg.shifted()));
        cur = next;
        stg = next_stg;
    }
    Ok(ShiftResult { graph: cur, stg_shifted })
}

/// A named member of the example corpus.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub graph: FlagGraph,
}

fn entry(name: impl Into<String>, graph: FlagGraph) -> CorpusEntry {
    CorpusEntry { name: name.into(), graph }
}

/// Toroid parameters used by the corpus.
pub const CORPUS_TOROIDS: [(i64, i64); 12] =
    [(2, 0), (3, 0), (2, 2), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 3), (3, 4), (4, 0), (5, 0)];

/// The rank-3 corpus: prisms `p = 3..=6`, one toroid per isomorphism class
/// with `5 <= b^2 + c^2 <= 25` plus the small regular `{4,4}_(2,0)`, and
/// cube stacks `m = 1..=3`.
pub fn rank3_corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for p in 3..=6 {
        out.push(entry(format!("prism{p}"), prism_over(&polygon(p).unwrap()).unwrap()));
    }
    for (b, c) in CORPUS_TOROIDS {
        out.push(entry(format!("toroid_{b}_{c}"), toroid_44(ToroidParams { b, c }).unwrap()));
    }
    for m in 1..=3 {
        out.push(entry(format!("cubestack{m}"), cube_stack(m).unwrap()));
    }
    out
}

/// The full corpus in a fixed order.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for p in 3..=6 {
        out.push(entry(format!("polygon{p}"), polygon(p).unwrap()));
    }
    out.extend(rank3_corpus());
    let triangle = polygon(3).unwrap();
    out.push(entry("trivext_polygon3", trivial_extension(&triangle)));
    out.push(entry("twopower_polygon3", two_power(&triangle, DEFAULT_FLAG_BUDGET).unwrap()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::flag_orbits;

    #[test]
    fn ext_gcd_identity() {
        for a in -12i64..=12 {
            for b in -12i64..=12 {
                let (g, u, v) = ext_gcd(a, b);
                assert_eq!(u * a + v * b, g);
                assert!(g >= 0);
                if g > 0 {
                    assert_eq!(a % g, 0);
                    assert_eq!(b % g, 0);
                }
            }
        }
    }

    #[test]
    fn polygon_sizes() {
        assert_eq!(polygon(3).unwrap().flag_count(), 6);
        assert_eq!(polygon(2).unwrap().flag_count(), 4);
        assert_eq!(polygon(1).unwrap_err(), Error::TooSmall { value: 1, min: 2 });
    }

    #[test]
    fn toroid_counts() {
        for (b, c, orbits) in [(2, 0, 1), (1, 2, 2), (1, 4, 2), (3, 3, 1), (2, -1, 2)] {
            let g = toroid_44(ToroidParams { b, c }).unwrap();
            assert_eq!(g.flag_count() as i64, 8 * (b * b + c * c));
            assert_eq!(flag_orbits(&g).count(), orbits, "({b},{c})");
        }
        assert_eq!(toroid_44(ToroidParams { b: 0, c: 0 }).unwrap_err(), Error::DegenerateLattice { b: 0, c: 0 });
    }

    #[test]
    fn prism_and_stack_sizes() {
        let prism = prism_over(&polygon(3).unwrap()).unwrap();
        assert_eq!(prism.flag_count(), 36);
        assert_eq!(flag_orbits(&prism).count(), 3);
        assert_eq!(cube_stack(3).unwrap().flag_count(), 112);
        assert_eq!(cube_stack(0).unwrap_err(), Error::TooSmall { value: 0, min: 1 });
        assert!(matches!(prism_over(&prism), Err(Error::RankMismatch { left: 3, right: 2 })));
    }

    #[test]
    fn two_power_budget() {
        let g = polygon(3).unwrap();
        assert_eq!(two_power(&g, 48).unwrap().flag_count(), 48);
        assert_eq!(two_power(&g, 47).unwrap_err(), Error::BudgetExceeded { needed: 48, budget: 47 });
    }

    #[test]
    fn shift_steps() {
        let g = polygon(3).unwrap();
        let r = shift_stg_iterate(&g, &[], DEFAULT_FLAG_BUDGET).unwrap();
        assert_eq!(r.graph, g);
        let r = shift_stg_iterate(&g, &[ShiftStep::TrivialExtension; 2], DEFAULT_FLAG_BUDGET).unwrap();
        assert_eq!(r.graph.rank(), 4);
        assert_eq!(r.graph.flag_count(), 24);
        assert_eq!(r.stg_shifted, [true, true]);
    }
}
