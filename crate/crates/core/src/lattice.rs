//! Exhaustive subgroup enumeration with conjugacy classification,
//! normalizers, cores, normal closures, and the core/closure "requires
//! all conjugates" condition checkers.
//!
//! For p-groups the lattice is built in layers: every subgroup of order
//! p^(k+1) contains a maximal (hence normal) subgroup H of order p^k and
//! equals the union of cosets H x^i for any x in N_G(H) - H with x^p in
//! H, so layer k+1 is generated from layer k by exactly those extensions,
//! deduplicated by bitset.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use serde::Serialize;
use std::collections::HashSet;

#[derive(Clone, Debug)]
pub struct LatticeConfig {
    /// Refuse groups larger than this.
    pub order_cap: usize,
    /// Refuse lattices with more subgroups than this.
    pub subgroup_cap: usize,
}

impl Default for LatticeConfig {
    fn default() -> Self {
        LatticeConfig {
            order_cap: 512,
            subgroup_cap: 2_000_000,
        }
    }
}

/// One conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub representative: Subgroup,
    pub conjugates: Vec<Subgroup>,
    pub normalizer: Subgroup,
    pub is_normal: bool,
}

#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    pub classes: Vec<SubgroupClass>,
    pub total_count: usize,
}

impl SubgroupLattice {
    /// Classes of subgroups of one given order.
    pub fn classes_of_order(&self, order: usize) -> impl Iterator<Item = &SubgroupClass> {
        self.classes
            .iter()
            .filter(move |c| c.representative.size() == order)
    }

    pub fn has_nonnormal(&self) -> bool {
        self.classes.iter().any(|c| !c.is_normal)
    }
}

/// JSON export: one line per class.
#[derive(Serialize)]
pub struct LatticeSummary {
    pub group_order: usize,
    pub total_subgroups: usize,
    pub classes: Vec<ClassSummary>,
}

#[derive(Serialize)]
pub struct ClassSummary {
    pub order: usize,
    pub class_size: usize,
    pub normalizer_index: usize,
    pub is_normal: bool,
}

impl SubgroupLattice {
    pub fn summary(&self, g: &Group) -> LatticeSummary {
        LatticeSummary {
            group_order: g.order(),
            total_subgroups: self.total_count,
            classes: self
                .classes
                .iter()
                .map(|c| ClassSummary {
                    order: c.representative.size(),
                    class_size: c.conjugates.len(),
                    normalizer_index: c.normalizer.index_in(g),
                    is_normal: c.is_normal,
                })
                .collect(),
        }
    }
}

/// N_G(H) = { x : H^x = H }.
pub fn normalizer(g: &Group, h: &Subgroup) -> Subgroup {
    let mut members = BitSet::new(g.order());
    for x in 0..g.order() {
        if h.normalized_by(g, x) {
            members.insert(x);
        }
    }
    Subgroup::from_members(g, members)
}

/// Orbit of H under conjugation, in sorted bitset order;
/// length = [G : N_G(H)].
pub fn conjugates(g: &Group, h: &Subgroup) -> Vec<Subgroup> {
    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut orbit = vec![h.clone()];
    seen.insert(h.members().clone());
    let mut i = 0;
    while i < orbit.len() {
        let cur = orbit[i].clone();
        for &s in g.gens() {
            let conj = cur.conjugate_by(g, s);
            if !seen.contains(conj.members()) {
                seen.insert(conj.members().clone());
                orbit.push(conj);
            }
        }
        i += 1;
    }
    orbit.sort_by(|a, b| a.members().cmp(b.members()));
    orbit
}

/// Core H_G = intersection of all conjugates: the largest normal
/// subgroup of G inside H.
pub fn core(g: &Group, h: &Subgroup) -> Subgroup {
    let conj = conjugates(g, h);
    let mut members = h.members().clone();
    for k in &conj {
        members.intersect_with(k.members());
    }
    Subgroup::from_members(g, members)
}

/// Normal closure H^G = subgroup generated by all conjugates: the
/// smallest normal subgroup of G containing H.
pub fn normal_closure(g: &Group, h: &Subgroup) -> Subgroup {
    let conj = conjugates(g, h);
    let seeds: Vec<usize> = conj.iter().flat_map(|k| k.gens().iter().copied()).collect();
    g.generated_subgroup(&seeds).expect("seeds in range")
}

fn check_budget(count: usize, cfg: &LatticeConfig) -> Result<()> {
    if count > cfg.subgroup_cap {
        return Err(Error::BudgetExceeded {
            what: format!("subgroup count exceeds cap {}", cfg.subgroup_cap),
        });
    }
    Ok(())
}

/// Complete subgroup lattice, classes in deterministic order
/// (ascending subgroup order, then bitset order of representatives).
pub fn all_subgroups(g: &Group, cfg: &LatticeConfig) -> Result<SubgroupLattice> {
    if g.order() > cfg.order_cap {
        return Err(Error::BudgetExceeded {
            what: format!(
                "lattice capped at group order {} (got {})",
                cfg.order_cap,
                g.order()
            ),
        });
    }
    let subgroups = if let Some(p) = g.prime() {
        enumerate_p_group(g, p as usize, cfg)?
    } else {
        enumerate_generic(g, cfg)?
    };
    let total_count = subgroups.len();

    // group into conjugacy classes; `subgroups` is sorted
    let mut class_of: std::collections::HashMap<BitSet, usize> = std::collections::HashMap::new();
    let mut classes: Vec<SubgroupClass> = Vec::new();
    for sub in &subgroups {
        if class_of.contains_key(sub.members()) {
            continue;
        }
        let orbit = conjugates(g, sub);
        let idx = classes.len();
        for k in &orbit {
            class_of.insert(k.members().clone(), idx);
        }
        let norm = normalizer(g, sub);
        debug_assert_eq!(orbit.len() * norm.size(), g.order());
        classes.push(SubgroupClass {
            representative: sub.clone(),
            is_normal: orbit.len() == 1,
            conjugates: orbit,
            normalizer: norm,
        });
    }
    Ok(SubgroupLattice {
        classes,
        total_count,
    })
}

/// Layered enumeration for p-groups (see module docs).
fn enumerate_p_group(g: &Group, p: usize, cfg: &LatticeConfig) -> Result<Vec<Subgroup>> {
    let trivial = g.trivial_subgroup();
    let mut seen: HashSet<BitSet> = HashSet::new();
    seen.insert(trivial.members().clone());
    let mut all: Vec<Subgroup> = vec![trivial.clone()];
    let mut layer: Vec<Subgroup> = vec![trivial];
    while !layer.is_empty() {
        let mut next: Vec<Subgroup> = Vec::new();
        for h in &layer {
            if h.size() == g.order() {
                continue;
            }
            for x in 0..g.order() {
                if h.contains(x) || !h.normalized_by(g, x) {
                    continue;
                }
                if !h.contains(g.power(x, p as i64)) {
                    continue;
                }
                // K = H u Hx u ... u Hx^(p-1)
                let mut members = h.members().clone();
                let mut xi = x;
                for _ in 1..p {
                    for m in h.iter() {
                        members.insert(g.mul(m, xi));
                    }
                    xi = g.mul(xi, x);
                }
                if seen.contains(&members) {
                    continue;
                }
                seen.insert(members.clone());
                check_budget(all.len() + 1, cfg)?;
                let mut gens = h.gens().to_vec();
                gens.push(x);
                let k = subgroup_from_closed(g, members, gens);
                all.push(k.clone());
                next.push(k);
            }
        }
        next.sort_by(|a, b| a.members().cmp(b.members()));
        layer = next;
    }
    all.sort_by(|a, b| {
        (a.size(), a.members()).cmp(&(b.size(), b.members()))
    });
    Ok(all)
}

/// Wraps a member set already known to be closed.
fn subgroup_from_closed(g: &Group, members: BitSet, gens: Vec<usize>) -> Subgroup {
    debug_assert_eq!(
        g.generated_subgroup(&gens).unwrap().members(),
        &members
    );
    Subgroup::from_members(g, members)
}

/// Fallback for non-prime-power orders: worklist closure over ⟨H, x⟩.
fn enumerate_generic(g: &Group, cfg: &LatticeConfig) -> Result<Vec<Subgroup>> {
    let trivial = g.trivial_subgroup();
    let mut seen: HashSet<BitSet> = HashSet::new();
    seen.insert(trivial.members().clone());
    let mut all = vec![trivial];
    let mut i = 0;
    while i < all.len() {
        let h = all[i].clone();
        for x in 0..g.order() {
            if h.contains(x) {
                continue;
            }
            let mut gens = h.gens().to_vec();
            gens.push(x);
            let k = g.generated_subgroup(&gens)?;
            if !seen.contains(k.members()) {
                seen.insert(k.members().clone());
                check_budget(all.len() + 1, cfg)?;
                all.push(k);
            }
        }
        i += 1;
    }
    all.sort_by(|a, b| (a.size(), a.members()).cmp(&(b.size(), b.members())));
    Ok(all)
}

/// Condition (CO): for every non-normal subgroup H, the intersection of
/// any proper nonempty subset of its conjugates properly contains the
/// core H_G. Vacuously true when every subgroup is normal.
///
/// Intersections only shrink as the subset grows, so it suffices to test
/// the maximal proper subsets (leave one conjugate out).
pub fn check_co(_g: &Group, lattice: &SubgroupLattice) -> bool {
    for class in &lattice.classes {
        if class.is_normal {
            continue;
        }
        let conj = &class.conjugates;
        let mut core_members = conj[0].members().clone();
        for k in &conj[1..] {
            core_members.intersect_with(k.members());
        }
        for omit in 0..conj.len() {
            let mut inter: Option<BitSet> = None;
            for (i, k) in conj.iter().enumerate() {
                if i == omit {
                    continue;
                }
                match &mut inter {
                    None => inter = Some(k.members().clone()),
                    Some(m) => m.intersect_with(k.members()),
                }
            }
            if inter.expect("at least two conjugates") == core_members {
                return false;
            }
        }
    }
    true
}

/// Condition (NC): for every non-normal subgroup H, any proper nonempty
/// subset of its conjugates generates a proper subgroup of the normal
/// closure H^G. Dual to (CO); generated subgroups only grow, so the
/// leave-one-out subsets again suffice.
pub fn check_nc(g: &Group, lattice: &SubgroupLattice) -> bool {
    for class in &lattice.classes {
        if class.is_normal {
            continue;
        }
        let conj = &class.conjugates;
        let closure_seeds: Vec<usize> = conj
            .iter()
            .flat_map(|k| k.gens().iter().copied())
            .collect();
        let closure = g.generated_subgroup(&closure_seeds).expect("seeds in range");
        for omit in 0..conj.len() {
            let seeds: Vec<usize> = conj
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != omit)
                .flat_map(|(_, k)| k.gens().iter().copied())
                .collect();
            let gen = g.generated_subgroup(&seeds).expect("seeds in range");
            if gen.size() == closure.size() {
                return false;
            }
        }
    }
    true
}
