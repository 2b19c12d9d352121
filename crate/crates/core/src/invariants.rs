//! Breadth invariants and structural predicates for finite p-groups.
//!
//! Element breadth of x is log_p [G : C_G(x)]; subgroup breadth of H is
//! log_p [G : N_G(H)]. The group-level invariants ebr(G), sbr(G), cbr(G)
//! take maxima over elements, all subgroups, and cyclic subgroups
//! respectively. Since C_G(x) <= N_G(<x>) and cyclic subgroups are
//! subgroups, cbr <= ebr and cbr <= sbr; ebr and sbr are incomparable
//! in general (Q8 has ebr 1, sbr 0).

use crate::bitset::BitSet;
use crate::error::Result;
use crate::group::{
    center, centralizer_of_element, derived_subgroup, frattini, omega1, Group, Subgroup,
};
use crate::lattice::{normalizer, SubgroupLattice};
use serde::Serialize;
use std::collections::HashSet;

/// log_p of an index known to be a power of p.
pub fn log_p_exact(p: u64, n: usize) -> u32 {
    let mut n = n as u64;
    let mut k = 0;
    while n > 1 {
        assert_eq!(n % p, 0, "{n} is not a power of {p}");
        n /= p;
        k += 1;
    }
    k
}

/// ebr(x) = log_p [G : C_G(x)].
pub fn element_breadth(g: &Group, x: usize) -> Result<u32> {
    let p = g.require_prime()?;
    let c = centralizer_of_element(g, x);
    Ok(log_p_exact(p, c.index_in(g)))
}

/// ebr(G) = max over elements.
pub fn group_element_breadth(g: &Group) -> Result<u32> {
    let p = g.require_prime()?;
    let mut best = 0;
    for x in 0..g.order() {
        let c = centralizer_of_element(g, x);
        best = best.max(log_p_exact(p, c.index_in(g)));
    }
    Ok(best)
}

/// sbr(H) = log_p [G : N_G(H)].
pub fn subgroup_breadth_of(g: &Group, h: &Subgroup) -> Result<u32> {
    let p = g.require_prime()?;
    let n = normalizer(g, h);
    Ok(log_p_exact(p, n.index_in(g)))
}

/// sbr(G) = max over all subgroups; the lattice already stores each
/// conjugacy class, whose size is the normalizer index.
pub fn group_subgroup_breadth(g: &Group, lattice: &SubgroupLattice) -> Result<u32> {
    let p = g.require_prime()?;
    let mut best = 0;
    for class in &lattice.classes {
        best = best.max(log_p_exact(p, class.conjugates.len()));
    }
    Ok(best)
}

/// cbr(G) = max of sbr over cyclic subgroups. Walks the cyclic
/// subgroups directly, so it does not need the full lattice.
pub fn group_cyclic_breadth(g: &Group) -> Result<u32> {
    let p = g.require_prime()?;
    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut best = 0;
    for x in 0..g.order() {
        let cyc = g.generated_subgroup(&[x])?;
        if !seen.insert(cyc.members().clone()) {
            continue;
        }
        let n = normalizer(g, &cyc);
        best = best.max(log_p_exact(p, n.index_in(g)));
    }
    Ok(best)
}

/// All maximal subgroups. In a p-group these are exactly the kernels of
/// the nontrivial homomorphisms G -> Z_p, which are found by propagating
/// candidate generator values over the multiplication table.
pub fn maximal_subgroups(g: &Group) -> Result<Vec<Subgroup>> {
    let p = g.require_prime()? as usize;
    if g.order() == 1 {
        return Ok(Vec::new());
    }
    let k = g.gens().len();
    let mut kernels: Vec<Subgroup> = Vec::new();
    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut tuple = vec![0usize; k];
    loop {
        // next tuple in odometer order
        let mut i = 0;
        while i < k {
            tuple[i] += 1;
            if tuple[i] < p {
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
        if let Some(ker) = kernel_of_labeling(g, p, &tuple) {
            if seen.insert(ker.members().clone()) {
                kernels.push(ker);
            }
        }
    }
    kernels.sort_by(|a, b| a.members().cmp(b.members()));
    Ok(kernels)
}

/// Tries to extend generator values to a homomorphism G -> Z_p by BFS;
/// returns its kernel, or None when the values are inconsistent.
fn kernel_of_labeling(g: &Group, p: usize, gen_vals: &[usize]) -> Option<Subgroup> {
    let n = g.order();
    let mut val: Vec<Option<usize>> = vec![None; n];
    val[g.identity()] = Some(0);
    let mut queue = vec![g.identity()];
    let mut qi = 0;
    while qi < queue.len() {
        let x = queue[qi];
        qi += 1;
        let vx = val[x].unwrap();
        for (gi, &s) in g.gens().iter().enumerate() {
            let y = g.mul(x, s);
            let vy = (vx + gen_vals[gi]) % p;
            match val[y] {
                None => {
                    val[y] = Some(vy);
                    queue.push(y);
                }
                Some(old) if old != vy => return None,
                _ => {}
            }
        }
    }
    let mut members = BitSet::new(n);
    for x in 0..n {
        if val[x] == Some(0) {
            members.insert(x);
        }
    }
    if members.count() == n {
        return None; // trivial labeling, kernel is not proper
    }
    Some(Subgroup::from_members(g, members))
}

pub fn has_abelian_maximal_subgroup(g: &Group) -> Result<bool> {
    Ok(maximal_subgroups(g)?
        .iter()
        .any(|m| m.is_abelian_in(g)))
}

/// Dedekind's criterion: every subgroup is normal iff every cyclic
/// subgroup is. Abelian groups count.
pub fn is_hamiltonian(g: &Group) -> bool {
    let mut seen: HashSet<BitSet> = HashSet::new();
    for x in 0..g.order() {
        let cyc = g.generated_subgroup(&[x]).expect("element in range");
        if seen.insert(cyc.members().clone()) && !cyc.is_normal_in(g) {
            return false;
        }
    }
    true
}

/// sbr(G) <= 1: every subgroup has at most p conjugates.
pub fn is_mn_group(g: &Group, lattice: &SubgroupLattice) -> Result<bool> {
    Ok(group_subgroup_breadth(g, lattice)? <= 1)
}

/// Nonabelian with every proper subgroup abelian; it suffices to check
/// the maximal subgroups.
pub fn is_minimal_nonabelian(g: &Group) -> Result<bool> {
    if g.is_abelian() {
        return Ok(false);
    }
    Ok(maximal_subgroups(g)?.iter().all(|m| m.is_abelian_in(g)))
}

#[derive(Clone, Debug, Serialize)]
pub struct InvolutionProfile {
    pub count: usize,
    pub all_commute: bool,
}

pub fn involution_profile(g: &Group) -> InvolutionProfile {
    let invs: Vec<usize> = (0..g.order()).filter(|&x| g.elt_order(x) == 2).collect();
    let all_commute = invs
        .iter()
        .all(|&a| invs.iter().all(|&b| g.mul(a, b) == g.mul(b, a)));
    InvolutionProfile {
        count: invs.len(),
        all_commute,
    }
}

/// Intersection of all non-normal subgroups, when any exist.
pub enum NonnormalMeet {
    AllNormal,
    Meet(Subgroup),
}

pub fn nonnormal_intersection(g: &Group, lattice: &SubgroupLattice) -> NonnormalMeet {
    let mut acc: Option<BitSet> = None;
    for class in &lattice.classes {
        if class.is_normal {
            continue;
        }
        for k in &class.conjugates {
            match &mut acc {
                None => acc = Some(k.members().clone()),
                Some(m) => m.intersect_with(k.members()),
            }
        }
    }
    match acc {
        None => NonnormalMeet::AllNormal,
        Some(m) => NonnormalMeet::Meet(Subgroup::from_members(g, m)),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportFlags {
    pub abelian: bool,
    pub hamiltonian: bool,
    pub mn_group: bool,
    pub minimal_nonabelian: bool,
    pub all_involutions_commute: bool,
    pub cyclic_center: bool,
    pub has_abelian_maximal: bool,
}

/// Full numeric profile of one group, as printed by `analyze`.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub order: usize,
    pub prime: u64,
    pub exponent: u32,
    pub center_order: usize,
    pub center_index: usize,
    pub derived_order: usize,
    pub frattini_order: usize,
    pub omega1_order: usize,
    pub ebr: u32,
    pub sbr: u32,
    pub cbr: u32,
    pub involution_count: usize,
    pub flags: ReportFlags,
    pub construction_label: String,
}

pub fn invariant_report(g: &Group, lattice: &SubgroupLattice) -> Result<InvariantReport> {
    let p = g.require_prime()?;
    let z = center(g);
    let inv = involution_profile(g);
    Ok(InvariantReport {
        order: g.order(),
        prime: p,
        exponent: g.exponent(),
        center_order: z.size(),
        center_index: z.index_in(g),
        derived_order: derived_subgroup(g)?.size(),
        frattini_order: frattini(g)?.size(),
        omega1_order: omega1(g)?.size(),
        ebr: group_element_breadth(g)?,
        sbr: group_subgroup_breadth(g, lattice)?,
        cbr: group_cyclic_breadth(g)?,
        involution_count: inv.count,
        flags: ReportFlags {
            abelian: g.is_abelian(),
            hamiltonian: is_hamiltonian(g),
            mn_group: is_mn_group(g, lattice)?,
            minimal_nonabelian: is_minimal_nonabelian(g)?,
            all_involutions_commute: inv.all_commute,
            cyclic_center: center(g).is_cyclic_in(g),
            has_abelian_maximal: has_abelian_maximal_subgroup(g)?,
        },
        construction_label: g.label().to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{all_subgroups, LatticeConfig};
    use crate::error::Error;
    use crate::oracle;

    fn lat(g: &Group) -> SubgroupLattice {
        all_subgroups(g, &LatticeConfig::default()).unwrap()
    }

    #[test]
    fn log_p_exact_small() {
        assert_eq!(log_p_exact(2, 1), 0);
        assert_eq!(log_p_exact(2, 16), 4);
        assert_eq!(log_p_exact(3, 27), 3);
        assert_eq!(log_p_exact(5, 125), 3);
    }

    #[test]
    #[should_panic]
    fn log_p_exact_rejects_non_powers() {
        log_p_exact(2, 12);
    }

    #[test]
    fn q8_breadths_and_flags() {
        let q8 = oracle::quaternion_model();
        let l = lat(&q8);
        assert_eq!(group_element_breadth(&q8).unwrap(), 1);
        assert_eq!(group_cyclic_breadth(&q8).unwrap(), 0);
        assert_eq!(group_subgroup_breadth(&q8, &l).unwrap(), 0);
        assert!(is_hamiltonian(&q8));
        assert!(is_mn_group(&q8, &l).unwrap());
        assert!(is_minimal_nonabelian(&q8).unwrap());
        assert_eq!(involution_profile(&q8).count, 1);
        assert!(matches!(
            nonnormal_intersection(&q8, &l),
            NonnormalMeet::AllNormal
        ));
    }

    #[test]
    fn d8_breadths() {
        let d8 = oracle::dihedral_model(8);
        let l = lat(&d8);
        assert_eq!(group_element_breadth(&d8).unwrap(), 1);
        assert_eq!(group_cyclic_breadth(&d8).unwrap(), 1);
        assert_eq!(group_subgroup_breadth(&d8, &l).unwrap(), 1);
        assert!(!is_hamiltonian(&d8));
        assert!(is_minimal_nonabelian(&d8).unwrap());
        assert_eq!(involution_profile(&d8).count, 5);
        assert!(!involution_profile(&d8).all_commute);
        match nonnormal_intersection(&d8, &l) {
            NonnormalMeet::Meet(m) => assert_eq!(m.size(), 1),
            NonnormalMeet::AllNormal => panic!("D8 has non-normal subgroups"),
        }
    }

    #[test]
    fn d16_has_subgroup_breadth_two() {
        // a reflection subgroup of the order-16 dihedral group has
        // four conjugates
        let d16 = oracle::dihedral_model(16);
        let l = lat(&d16);
        assert_eq!(group_element_breadth(&d16).unwrap(), 2);
        assert_eq!(group_subgroup_breadth(&d16, &l).unwrap(), 2);
        assert_eq!(group_cyclic_breadth(&d16).unwrap(), 2);
    }

    #[test]
    fn maximal_subgroups_of_q8_and_intersection_is_frattini() {
        let q8 = oracle::quaternion_model();
        let maxes = maximal_subgroups(&q8).unwrap();
        assert_eq!(maxes.len(), 3);
        assert!(maxes.iter().all(|m| m.size() == 4));
        let mut meet = maxes[0].members().clone();
        for m in &maxes[1..] {
            meet.intersect_with(m.members());
        }
        assert_eq!(&meet, frattini(&q8).unwrap().members());
        assert!(has_abelian_maximal_subgroup(&q8).unwrap());
    }

    #[test]
    fn maximal_subgroups_of_elementary_abelian() {
        let n = 8;
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = (a ^ b) as u16;
            }
        }
        let g = Group::from_mul_table(
            mul,
            vec![1, 2, 4],
            vec!["a".into(), "b".into(), "c".into()],
            "E8",
        )
        .unwrap();
        // (2^3 - 1)/(2 - 1) hyperplanes
        assert_eq!(maximal_subgroups(&g).unwrap().len(), 7);
    }

    #[test]
    fn cbr_bounded_by_ebr_and_sbr() {
        for g in [
            oracle::quaternion_model(),
            oracle::dihedral_model(8),
            oracle::dihedral_model(16),
            oracle::dihedral_model(32),
            oracle::cyclic_table(16),
        ] {
            let l = lat(&g);
            let ebr = group_element_breadth(&g).unwrap();
            let cbr = group_cyclic_breadth(&g).unwrap();
            let sbr = group_subgroup_breadth(&g, &l).unwrap();
            assert!(cbr <= sbr, "{}", g.label());
            assert!(cbr <= ebr, "{}", g.label());
        }
    }

    #[test]
    fn report_serializes() {
        let d8 = oracle::dihedral_model(8);
        let l = lat(&d8);
        let r = invariant_report(&d8, &l).unwrap();
        assert_eq!(r.order, 8);
        assert_eq!(r.center_index, 4);
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"sbr\":1"));
        assert!(json.contains("\"mn_group\":true"));
    }

    #[test]
    fn non_p_group_is_rejected() {
        let c6 = oracle::cyclic_table(6);
        assert!(matches!(
            group_element_breadth(&c6),
            Err(Error::NotPGroup { .. })
        ));
    }
}
