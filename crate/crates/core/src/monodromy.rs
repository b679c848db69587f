//! Monodromy groups and the quantities computed in their finite image:
//! flag stabilizers, normalizers, the minimal regular cover, the chirality
//! group and the string C-group test.

use std::collections::HashMap;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::flaggraph::{FlagGraph, RootedFlagGraph};
use crate::permgroup::{Perm, PermGroup, StabChain};
use crate::symmetry::{automorphism_group, orbits_of_group, OrbitPartition};

/// The permutation group on flags generated by the connection involutions.
#[derive(Clone, Debug)]
pub struct MonodromyGroup {
    group: PermGroup,
    connections: Vec<Perm>,
}

impl MonodromyGroup {
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    /// `r_i` as a permutation of the flags.
    pub fn connections(&self) -> &[Perm] {
        &self.connections
    }

    pub fn rank(&self) -> usize {
        self.connections.len()
    }

    pub fn order(&self) -> BigUint {
        self.group.order()
    }

    pub fn as_sggi(&self) -> Sggi {
        Sggi { group: self.group.clone(), generators: self.connections.clone() }
    }
}

pub fn monodromy_group(g: &FlagGraph) -> MonodromyGroup {
    let connections: Vec<Perm> = (0..g.rank())
        .map(|c| Perm::from_u32_unchecked(g.color_map(c).to_vec()))
        .collect();
    let group = PermGroup::new(g.flag_count(), connections.clone()).expect("connections are permutations");
    MonodromyGroup { group, connections }
}

pub fn flag_stabilizer_image(m: &MonodromyGroup, flag: usize) -> Result<PermGroup> {
    m.group.point_stabilizer(flag)
}

/// Two flags lie in the same automorphism orbit exactly when their
/// stabilizers in the monodromy group coincide.
pub fn same_orbit_by_stabilizer(m: &MonodromyGroup, f1: usize, f2: usize) -> Result<bool> {
    let a = m.group.point_stabilizer(f1)?;
    let b = m.group.point_stabilizer(f2)?;
    Ok(a.same_subgroup(&b))
}

/// Orbits of flags under "same stabilizer", ids by smallest flag.
pub fn orbits_by_stabilizer(m: &MonodromyGroup) -> Result<OrbitPartition> {
    let degree = m.group.degree();
    let mut stabs: Vec<PermGroup> = Vec::new();
    let mut orbit_of = Vec::with_capacity(degree);
    let mut representatives = Vec::new();
    for f in 0..degree {
        let s = m.group.point_stabilizer(f)?;
        match stabs.iter().position(|t| t.same_subgroup(&s)) {
            Some(k) => orbit_of.push(k as u32),
            None => {
                orbit_of.push(stabs.len() as u32);
                stabs.push(s);
                representatives.push(f);
            }
        }
    }
    Ok(OrbitPartition { orbit_of, representatives })
}

/// The flag graph of the monodromy group acting on itself.
///
/// Flags are group elements numbered in breadth-first order from the
/// identity (flag 0), colors ascending; the `i`-neighbor of `x` is `x` then
/// `r_i`. An element is stored by its images of the base of a stabilizer
/// chain whose first base point is flag 0, so flag `x` covers flag
/// `0^x` of `g`.
pub fn minimal_regular_cover(g: &FlagGraph, budget: u64) -> Result<RootedFlagGraph> {
    let m = monodromy_group(g);
    let order = m.order();
    if order > BigUint::from(budget) {
        let needed = u128::try_from(&order).unwrap_or(u128::MAX);
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let size = usize::try_from(&order).expect("bounded by budget");
    let mut chain = StabChain::with_base_prefix(g.flag_count(), &[0]);
    for r in &m.connections {
        chain.add_generator(r.clone());
    }
    let base: Vec<u32> = chain.base().into_iter().map(|b| b as u32).collect();
    let mut index: HashMap<Vec<u32>, u32> = HashMap::with_capacity(size);
    let mut keys = vec![base.clone()];
    index.insert(base, 0);
    let n = g.rank();
    let mut adj = vec![vec![0usize; size]; n];
    let mut head = 0;
    while head < keys.len() {
        for (c, row) in adj.iter_mut().enumerate() {
            let map = g.color_map(c);
            let next: Vec<u32> = keys[head].iter().map(|&x| map[x as usize]).collect();
            let k = match index.get(&next) {
                Some(&k) => k,
                None => {
                    let k = keys.len() as u32;
                    index.insert(next.clone(), k);
                    keys.push(next);
                    k
                }
            };
            row[head] = k as usize;
        }
        head += 1;
    }
    debug_assert_eq!(keys.len(), size);
    RootedFlagGraph::new(FlagGraph::new(n, adj)?, 0)
}

/// The chirality group of a two-orbit maniplex, realized as the stabilizer
/// of flag 0 in the monodromy group.
pub fn chirality_group(g: &FlagGraph) -> Result<PermGroup> {
    let k = orbits_of_group(&automorphism_group(g)).count();
    if k != 2 {
        return Err(Error::NotTwoOrbit(k));
    }
    monodromy_group(g).group.point_stabilizer(0)
}

/// A group with distinguished generators `rho_0, ..., rho_{n-1}`.
#[derive(Clone, Debug)]
pub struct Sggi {
    group: PermGroup,
    generators: Vec<Perm>,
}

impl Sggi {
    /// Checks that every generator squares to the identity and that
    /// generators two or more apart commute.
    pub fn new(generators: Vec<Perm>) -> Result<Self> {
        let degree = generators.first().map_or(0, Perm::degree);
        for (i, r) in generators.iter().enumerate() {
            if !r.then(r).is_identity() {
                return Err(Error::NotSggi(format!("rho_{i} is not an involution")));
            }
            for (j, s) in generators.iter().enumerate().skip(i + 2) {
                if r.then(s) != s.then(r) {
                    return Err(Error::NotSggi(format!("rho_{i} and rho_{j} do not commute")));
                }
            }
        }
        let group = PermGroup::new(degree, generators.clone())?;
        Ok(Sggi { group, generators })
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    fn parabolic(&self, mask: u32) -> PermGroup {
        let gens = (0..self.rank()).filter(|i| mask & (1 << i) != 0).map(|i| self.generators[i].clone()).collect();
        PermGroup::new(self.group.degree(), gens).expect("same degree")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionWitness {
    pub i: Vec<usize>,
    pub j: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CGroupReport {
    pub string_c_group: bool,
    pub witness: Option<IntersectionWitness>,
}

fn mask_members(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask & (1 << i) != 0).collect()
}

/// The intersection condition over every incomparable pair of generator
/// subsets, in ascending order of bitmask; comparable pairs hold trivially.
/// Each intersection is counted by enumerating the smaller side, which must
/// have at most `bound` elements.
pub fn is_string_c_group(s: &Sggi, bound: u64) -> Result<CGroupReport> {
    let n = s.rank();
    let full = 1u32 << n;
    let parabolics: Vec<PermGroup> = (0..full).map(|m| s.parabolic(m)).collect();
    for a in 0..full {
        for b in a + 1..full {
            if a & b == a || a & b == b {
                continue;
            }
            let meet = parabolics[(a & b) as usize].order();
            let got = parabolics[a as usize].intersection_order(&parabolics[b as usize], bound)?;
            if BigUint::from(got) != meet {
                return Ok(CGroupReport {
                    string_c_group: false,
                    witness: Some(IntersectionWitness { i: mask_members(a, n), j: mask_members(b, n) }),
                });
            }
        }
    }
    Ok(CGroupReport { string_c_group: true, witness: None })
}

/// The index and order bounds on the monodromy group of a `k`-orbit
/// maniplex, evaluated in the finite image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonBounds {
    pub mon_order: u64,
    pub gamma_order: u64,
    pub k: usize,
    /// Smallest flag of each orbit.
    pub representatives: Vec<usize>,
    pub stabilizer_orders: Vec<u64>,
    /// `[N_i : S_i]` for each orbit.
    pub normalizer_indices: Vec<u64>,
    /// `[Mon : N]` with `N` the intersection of all normalizers.
    pub normalizer_core_index: u64,
    /// `|T_i|`, `T_i` the intersection of the stabilizers other than `S_i`.
    pub t_orders: Vec<u64>,
    pub lower: u128,
    pub upper: u128,
    pub factorial_bound: u128,
    pub index_within_factorial: bool,
    pub lower_holds: bool,
    pub upper_holds: bool,
    pub factorial_holds: bool,
}

fn sat_pow(x: u128, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, _| acc.saturating_mul(x))
}

pub fn mon_bounds_report(g: &FlagGraph, bound: u64) -> Result<MonBounds> {
    let m = monodromy_group(g);
    let mon = &m.group;
    mon.check_bound(bound)?;
    let mon_order = mon.order_u64().expect("bounded");
    let gamma = automorphism_group(g);
    let gamma_order = gamma.order_u64().expect("at most the flag count");
    let orbits = orbits_of_group(&gamma);
    let k = orbits.count();
    let stabs: Vec<PermGroup> =
        orbits.representatives.iter().map(|&r| mon.point_stabilizer(r)).collect::<Result<_>>()?;
    let mut normalizer_indices = Vec::with_capacity(k);
    let mut core: Option<PermGroup> = None;
    for s in &stabs {
        let nrm = mon.normalizer_bruteforce(s, bound)?;
        normalizer_indices.push(nrm.order_u64().unwrap() / s.order_u64().unwrap());
        core = Some(match core {
            None => nrm,
            Some(c) => c.intersection(&nrm, bound)?,
        });
    }
    let core = core.expect("at least one orbit");
    let normalizer_core_index = mon_order / core.order_u64().unwrap();
    let mut t_orders = Vec::with_capacity(k);
    for i in 0..k {
        let mut t = mon.clone();
        for (j, s) in stabs.iter().enumerate() {
            if j != i {
                t = t.intersection(s, bound)?;
            }
        }
        t_orders.push(t.order_u64().unwrap());
    }
    let idx = normalizer_core_index as u128;
    let lower = idx.saturating_mul(sat_pow(t_orders[0] as u128, k));
    let upper = idx.saturating_mul(sat_pow(gamma_order as u128, k));
    let fact: u128 = (1..=k as u128).product();
    let factorial_bound = fact.saturating_mul(sat_pow(gamma_order as u128, k));
    let mo = mon_order as u128;
    Ok(MonBounds {
        mon_order,
        gamma_order,
        k,
        representatives: orbits.representatives.clone(),
        stabilizer_orders: stabs.iter().map(|s| s.order_u64().unwrap()).collect(),
        normalizer_indices,
        normalizer_core_index,
        t_orders,
        lower,
        upper,
        factorial_bound,
        index_within_factorial: idx <= fact,
        lower_holds: lower <= mo,
        upper_holds: mo <= upper,
        factorial_holds: upper <= factorial_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flaggraph::isomorphic;

    fn polygon(p: usize) -> FlagGraph {
        let f = 2 * p;
        let r0 = (0..f).map(|x| x ^ 1).collect();
        let r1 = (0..f).map(|x| if x % 2 == 1 { (x + 1) % f } else { (x + f - 1) % f }).collect();
        FlagGraph::new(2, vec![r0, r1]).unwrap()
    }

    #[test]
    fn square_monodromy_is_regular() {
        let g = polygon(4);
        let m = monodromy_group(&g);
        assert_eq!(m.group().order_u64(), Some(8));
        assert!(flag_stabilizer_image(&m, 3).unwrap().is_trivial());
        assert!(same_orbit_by_stabilizer(&m, 0, 5).unwrap());
        let cover = minimal_regular_cover(&g, 1000).unwrap();
        assert!(isomorphic(&cover.graph, &g).unwrap());
        assert_eq!(chirality_group(&g).unwrap_err(), Error::NotTwoOrbit(1));
    }

    #[test]
    fn degenerate_rank_two_sggi() {
        let t = Perm::from_cycles(2, &[&[0, 1]]).unwrap();
        let s = Sggi::new(vec![t.clone(), t]).unwrap();
        let r = is_string_c_group(&s, 1000).unwrap();
        assert!(!r.string_c_group);
        assert_eq!(r.witness, Some(IntersectionWitness { i: vec![0], j: vec![1] }));
    }

    #[test]
    fn sggi_relations_checked() {
        let a = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        assert!(Sggi::new(vec![a.clone(), b.clone()]).is_ok());
        assert!(matches!(Sggi::new(vec![a.clone(), a.clone(), b]), Err(Error::NotSggi(_))));
        let c = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        assert!(matches!(Sggi::new(vec![c]), Err(Error::NotSggi(_))));
    }

    #[test]
    fn polygon_bounds_collapse() {
        let b = mon_bounds_report(&polygon(5), 20_000).unwrap();
        assert_eq!((b.k, b.mon_order, b.gamma_order), (1, 10, 10));
        assert_eq!((b.lower, b.upper, b.factorial_bound), (10, 10, 10));
    }
}
