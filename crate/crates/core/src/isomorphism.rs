//! Isomorphism testing for small concrete groups.
//!
//! Fast-reject by an invariant fingerprint, then backtracking over images
//! of a generating sequence, pruned by element order and conjugacy class
//! size. A successful search returns the witness bijection.

use crate::error::{Error, Result};
use crate::group::{center, derived_subgroup, frattini, omega1, Group};

/// Budget guard for the backtracking search.
pub const ISO_ORDER_CAP: usize = 512;

/// Invariant profile used to reject non-isomorphic pairs before search.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fingerprint {
    pub order: usize,
    pub exponent: u32,
    pub center_order: usize,
    pub derived_order: usize,
    pub frattini_order: usize,
    pub omega1_order: usize,
    pub element_orders: Vec<u32>,
    pub class_sizes: Vec<usize>,
}

/// Conjugacy class sizes of elements, via orbit closure under
/// conjugation by the distinguished generators.
pub fn element_class_sizes(g: &Group) -> Vec<usize> {
    let n = g.order();
    let mut assigned = vec![false; n];
    let mut sizes = Vec::new();
    for x in 0..n {
        if assigned[x] {
            continue;
        }
        let mut orbit = vec![x];
        assigned[x] = true;
        let mut i = 0;
        while i < orbit.len() {
            let y = orbit[i];
            for &s in g.gens() {
                let z = g.conjugate(y, s);
                if !assigned[z] {
                    assigned[z] = true;
                    orbit.push(z);
                }
            }
            i += 1;
        }
        sizes.push(orbit.len());
    }
    sizes.sort_unstable();
    sizes
}

/// Class size of each individual element.
fn per_element_class_size(g: &Group) -> Vec<usize> {
    let n = g.order();
    let mut size = vec![0usize; n];
    let mut assigned = vec![false; n];
    for x in 0..n {
        if assigned[x] {
            continue;
        }
        let mut orbit = vec![x];
        assigned[x] = true;
        let mut i = 0;
        while i < orbit.len() {
            let y = orbit[i];
            for &s in g.gens() {
                let z = g.conjugate(y, s);
                if !assigned[z] {
                    assigned[z] = true;
                    orbit.push(z);
                }
            }
            i += 1;
        }
        for &y in &orbit {
            size[y] = orbit.len();
        }
    }
    size
}

pub fn fingerprint(g: &Group) -> Fingerprint {
    let mut element_orders: Vec<u32> = (0..g.order()).map(|x| g.elt_order(x)).collect();
    element_orders.sort_unstable();
    Fingerprint {
        order: g.order(),
        exponent: g.exponent(),
        center_order: center(g).size(),
        derived_order: derived_subgroup(g).map(|s| s.size()).unwrap_or(0),
        frattini_order: frattini(g).map(|s| s.size()).unwrap_or(0),
        omega1_order: omega1(g).map(|s| s.size()).unwrap_or(0),
        element_orders,
        class_sizes: element_class_sizes(g),
    }
}

struct Search<'a> {
    g1: &'a Group,
    g2: &'a Group,
    gens: Vec<usize>,
    class1: Vec<usize>,
    class2: Vec<usize>,
    /// candidate images per generator, prefiltered
    candidates: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    /// Attempts to extend the partial map `img` (defined on the subgroup
    /// generated by gens[..k]) with gens[k] -> t, closing multiplicatively.
    fn extend(&self, img: &[Option<u16>], known: &[usize], s: usize, t: usize) -> Option<(Vec<Option<u16>>, Vec<usize>)> {
        let mut img = img.to_vec();
        let mut known = known.to_vec();
        if let Some(old) = img[s] {
            return if old as usize == t { Some((img, known)) } else { None };
        }
        // injectivity: t must be outside the image of the known subgroup
        if known.iter().any(|&x| img[x] == Some(t as u16)) {
            return None;
        }
        img[s] = Some(t as u16);
        known.push(s);
        // close under multiplication: defined(x), defined(y) => define(xy)
        let mut i = 0;
        while i < known.len() {
            let x = known[i];
            let fx = img[x].unwrap() as usize;
            for j in 0..known.len() {
                let y = known[j];
                let fy = img[y].unwrap() as usize;
                for (p, fp) in [(self.g1.mul(x, y), self.g2.mul(fx, fy)),
                                (self.g1.mul(y, x), self.g2.mul(fy, fx))] {
                    match img[p] {
                        None => {
                            // injectivity on the fly
                            if known.iter().any(|&k| img[k] == Some(fp as u16)) {
                                return None;
                            }
                            img[p] = Some(fp as u16);
                            known.push(p);
                        }
                        Some(q) => {
                            if q as usize != fp {
                                return None;
                            }
                        }
                    }
                }
            }
            i += 1;
        }
        Some((img, known))
    }

    fn search(&self, img: Vec<Option<u16>>, known: Vec<usize>, depth: usize) -> Option<Vec<u16>> {
        if known.len() == self.g1.order() {
            return Some(img.iter().map(|o| o.unwrap()).collect());
        }
        if depth == self.gens.len() {
            // generators exhausted but map incomplete: cannot happen when
            // gens generate g1, guard anyway
            return None;
        }
        let s = self.gens[depth];
        if img[s].is_some() {
            return self.search(img, known, depth + 1);
        }
        for &t in &self.candidates[depth] {
            if self.class1[s] != self.class2[t] {
                continue;
            }
            if let Some((img2, known2)) = self.extend(&img, &known, s, t) {
                if let Some(w) = self.search(img2, known2, depth + 1) {
                    return Some(w);
                }
            }
        }
        None
    }
}

/// Greedy generating sequence: highest element order first, then lowest
/// index, adding only elements outside the span so far.
fn generating_sequence(g: &Group) -> Vec<usize> {
    let mut order_sorted: Vec<usize> = (1..g.order()).collect();
    order_sorted.sort_by_key(|&x| (std::cmp::Reverse(g.elt_order(x)), x));
    let mut gens = Vec::new();
    let mut span = g.trivial_subgroup();
    for x in order_sorted {
        if !span.contains(x) {
            gens.push(x);
            span = g
                .generated_subgroup(&gens)
                .expect("seeds in range");
            if span.size() == g.order() {
                break;
            }
        }
    }
    gens
}

/// Tests isomorphism; returns the witness map g1 -> g2 on success.
pub fn is_isomorphic(g1: &Group, g2: &Group) -> Result<Option<Vec<u16>>> {
    if g1.order() > ISO_ORDER_CAP || g2.order() > ISO_ORDER_CAP {
        return Err(Error::BudgetExceeded {
            what: format!(
                "isomorphism test capped at order {ISO_ORDER_CAP} (got {} and {})",
                g1.order(),
                g2.order()
            ),
        });
    }
    if g1.order() != g2.order() {
        return Ok(None);
    }
    if g1.order() == 1 {
        return Ok(Some(vec![0]));
    }
    if fingerprint(g1) != fingerprint(g2) {
        return Ok(None);
    }
    let gens = generating_sequence(g1);
    let class1 = per_element_class_size(g1);
    let class2 = per_element_class_size(g2);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            (0..g2.order())
                .filter(|&t| g2.elt_order(t) == g1.elt_order(s) && class2[t] == class1[s])
                .collect()
        })
        .collect();
    let search = Search {
        g1,
        g2,
        gens,
        class1,
        class2,
        candidates,
    };
    let mut img = vec![None; g1.order()];
    img[0] = Some(0);
    let witness = search.search(img, vec![0], 0);
    if let Some(w) = &witness {
        debug_assert!(verify_isomorphism(g1, g2, w));
    }
    Ok(witness)
}

/// Checks that a map is a bijective homomorphism (used on witnesses).
pub fn verify_isomorphism(g1: &Group, g2: &Group, map: &[u16]) -> bool {
    if map.len() != g1.order() || g1.order() != g2.order() {
        return false;
    }
    let mut seen = vec![false; g2.order()];
    for &v in map {
        if seen[v as usize] {
            return false;
        }
        seen[v as usize] = true;
    }
    for a in 0..g1.order() {
        for b in 0..g1.order() {
            if map[g1.mul(a, b)] != g2.mul(map[a] as usize, map[b] as usize) as u16 {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    #[test]
    fn reflexive_with_identity_witness() {
        let q8 = oracle::quaternion_model();
        let w = is_isomorphic(&q8, &q8).unwrap().expect("isomorphic to itself");
        assert!(verify_isomorphism(&q8, &q8, &w));
    }

    #[test]
    fn d8_not_isomorphic_to_q8() {
        let d8 = oracle::dihedral_model(8);
        let q8 = oracle::quaternion_model();
        assert!(is_isomorphic(&d8, &q8).unwrap().is_none());
        // involution counts 5 vs 1 show up in the fingerprint
        assert_ne!(
            fingerprint(&d8).element_orders,
            fingerprint(&q8).element_orders
        );
    }

    #[test]
    fn symmetric_on_models() {
        let d8 = oracle::dihedral_model(8);
        let d8b = oracle::dihedral_model(8);
        let w = is_isomorphic(&d8, &d8b).unwrap().unwrap();
        assert!(verify_isomorphism(&d8, &d8b, &w));
        let w = is_isomorphic(&d8b, &d8).unwrap().unwrap();
        assert!(verify_isomorphism(&d8b, &d8, &w));
    }

    #[test]
    fn budget_guard() {
        let big = oracle::cyclic_table(1024);
        assert!(matches!(
            is_isomorphic(&big, &big),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn cyclic_groups_of_equal_order() {
        let a = oracle::cyclic_table(12);
        let b = oracle::cyclic_table(12);
        assert!(is_isomorphic(&a, &b).unwrap().is_some());
        let c6 = oracle::cyclic_table(6);
        assert!(is_isomorphic(&a, &c6).unwrap().is_none());
    }
}
