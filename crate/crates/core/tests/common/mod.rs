//! Independent oracles shared by the integration tests. Nothing here calls the
//! library routine it is used to check.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use maniplex::FlagGraph;

/// Components of the flags using only `colors`, by plain BFS.
fn residue_labels(g: &FlagGraph, colors: &[usize]) -> Vec<usize> {
    let n = g.flag_count();
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        let mut q = VecDeque::from([s]);
        label[s] = next;
        while let Some(f) = q.pop_front() {
            for &c in colors {
                let t = g.neighbor(f, c);
                if label[t] == usize::MAX {
                    label[t] = next;
                    q.push_back(t);
                }
            }
        }
        next += 1;
    }
    label
}

fn connected_within(g: &FlagGraph, flags: &[usize], colors: &[usize]) -> bool {
    let inside: HashSet<usize> = flags.iter().copied().collect();
    let mut seen = HashSet::from([flags[0]]);
    let mut q = VecDeque::from([flags[0]]);
    while let Some(f) = q.pop_front() {
        for &c in colors {
            let t = g.neighbor(f, c);
            if inside.contains(&t) && seen.insert(t) {
                q.push_back(t);
            }
        }
    }
    seen.len() == flags.len()
}

/// Checks every set of pairwise-incident faces of distinct ranks, of any
/// size, for a nonempty connected intersection. Returns the first failing
/// chain as `(rank, face label)` pairs.
#[allow(clippy::needless_range_loop)]
pub fn exhaustive_cip(g: &FlagGraph) -> Option<Vec<(usize, usize)>> {
    let n = g.rank();
    let faces: Vec<Vec<usize>> = (0..n)
        .map(|i| residue_labels(g, &(0..n).filter(|&c| c != i).collect::<Vec<_>>()))
        .collect();
    let counts: Vec<usize> = faces.iter().map(|l| l.iter().max().unwrap() + 1).collect();
    let mut incident: Vec<Vec<HashSet<(usize, usize)>>> = vec![vec![HashSet::new(); n]; n];
    for f in 0..g.flag_count() {
        for r in 0..n {
            for s in 0..n {
                incident[r][s].insert((faces[r][f], faces[s][f]));
            }
        }
    }
    fn rec(
        g: &FlagGraph,
        faces: &[Vec<usize>],
        counts: &[usize],
        incident: &[Vec<HashSet<(usize, usize)>>],
        rank: usize,
        chain: &mut Vec<(usize, usize)>,
    ) -> Option<Vec<(usize, usize)>> {
        let n = faces.len();
        if rank == n {
            if chain.is_empty() {
                return None;
            }
            let flags: Vec<usize> = (0..g.flag_count())
                .filter(|&f| chain.iter().all(|&(r, k)| faces[r][f] == k))
                .collect();
            let colors: Vec<usize> = (0..n).filter(|c| chain.iter().all(|&(r, _)| r != *c)).collect();
            if flags.is_empty() || !connected_within(g, &flags, &colors) {
                return Some(chain.clone());
            }
            return None;
        }
        if let Some(w) = rec(g, faces, counts, incident, rank + 1, chain) {
            return Some(w);
        }
        for k in 0..counts[rank] {
            if chain.iter().all(|&(r, j)| incident[r][rank].contains(&(j, k))) {
                chain.push((rank, k));
                let w = rec(g, faces, counts, incident, rank + 1, chain);
                chain.pop();
                if w.is_some() {
                    return w;
                }
            }
        }
        None
    }
    rec(g, &faces, &counts, &incident, 0, &mut Vec::new())
}

/// Number of color-preserving bijections, counted by building each candidate
/// map from flag 0 and checking every edge.
pub fn automorphism_count(g: &FlagGraph) -> usize {
    let n = g.flag_count();
    let mut count = 0;
    'target: for t in 0..n {
        let mut map = vec![usize::MAX; n];
        map[0] = t;
        let mut q = VecDeque::from([0]);
        while let Some(f) = q.pop_front() {
            for c in 0..g.rank() {
                let (x, y) = (g.neighbor(f, c), g.neighbor(map[f], c));
                if map[x] == usize::MAX {
                    map[x] = y;
                    q.push_back(x);
                } else if map[x] != y {
                    continue 'target;
                }
            }
        }
        let distinct: HashSet<usize> = map.iter().copied().collect();
        if distinct.len() == n {
            count += 1;
        }
    }
    count
}

/// Order of the group generated by image arrays, by closure.
pub fn closure_order(gens: &[Vec<usize>]) -> usize {
    let degree = gens[0].len();
    let id: Vec<usize> = (0..degree).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut q = VecDeque::from([id]);
    while let Some(x) = q.pop_front() {
        for g in gens {
            let y: Vec<usize> = x.iter().map(|&i| g[i]).collect();
            if seen.insert(y.clone()) {
                q.push_back(y);
            }
        }
    }
    seen.len()
}

/// Gaussian integers `a + bi`.
pub type Gauss = (i64, i64);

pub fn gauss_norm((a, b): Gauss) -> i64 {
    a * a + b * b
}

fn gauss_mul((a, b): Gauss, (c, d): Gauss) -> Gauss {
    (a * c - b * d, a * d + b * c)
}

fn gauss_rem(x: Gauss, y: Gauss) -> Gauss {
    // x / y = x * conj(y) / N(y), rounded to the nearest lattice point
    let n = gauss_norm(y);
    let (p, q) = gauss_mul(x, (y.0, -y.1));
    let round = |v: i64| (2 * v + n).div_euclid(2 * n);
    let quot = (round(p), round(q));
    let prod = gauss_mul(quot, y);
    (x.0 - prod.0, x.1 - prod.1)
}

pub fn gauss_gcd(mut x: Gauss, mut y: Gauss) -> Gauss {
    while y != (0, 0) {
        let r = gauss_rem(x, y);
        x = y;
        y = r;
    }
    x
}

/// Norm of the least common multiple.
pub fn gauss_lcm_norm(x: Gauss, y: Gauss) -> i64 {
    gauss_norm(x) * gauss_norm(y) / gauss_norm(gauss_gcd(x, y))
}

/// A generator of the least common multiple ideal.
pub fn gauss_lcm(x: Gauss, y: Gauss) -> Gauss {
    let g = gauss_gcd(x, y);
    let p = gauss_mul(x, y);
    // exact division p / g
    let n = gauss_norm(g);
    let (a, b) = gauss_mul(p, (g.0, -g.1));
    (a / n, b / n)
}

/// Chirality group order of `{4,4}_(b,c)` from the lattice picture: the
/// monodromy group is the flag set of the smallest regular toroid covering
/// both enantiomorphs, whose translation lattice is `lcm(b+ci, b-ci)`.
pub fn toroid_chirality_order(b: i64, c: i64) -> i64 {
    gauss_lcm_norm((b, c), (b, -c)) / gauss_norm((b, c))
}
