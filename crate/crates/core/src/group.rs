//! Concrete finite groups as full Cayley tables, and subgroups as bitsets.
//!
//! Element indices are small integers with the identity fixed at 0;
//! multiplication is a single table lookup, which every downstream
//! algorithm (lattice enumeration, breadth computation, isomorphism
//! search) leans on.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Hard cap on realized group order: the Cayley table is order^2 entries.
pub const ORDER_CAP: usize = 2048;

/// Orders up to this bound get exhaustive associativity verification at
/// construction; larger tables are checked on sampled triples.
const FULL_ASSOC_BOUND: usize = 256;

#[derive(Clone, Debug)]
pub struct Group {
    order: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    elt_order: Vec<u32>,
    gens: Vec<usize>,
    gen_labels: Vec<String>,
    prime: Option<u64>,
    label: String,
}

/// Serialized form of a group for caching: order, row-major table,
/// distinguished generators and their labels.
#[derive(Serialize, Deserialize)]
pub struct GroupDump {
    pub order: usize,
    pub mul: Vec<u16>,
    pub gens: Vec<usize>,
    pub gen_labels: Vec<String>,
    pub label: String,
}

fn prime_power_base(n: usize) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let mut m = n as u64;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            return if m == 1 { Some(p) } else { None };
        }
        p += 1;
    }
    Some(m) // n itself prime
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

impl Group {
    /// Builds and verifies a group from its multiplication table.
    ///
    /// Checks: identity row/column at index 0, two-sided inverses,
    /// associativity (exhaustive up to order 256, 10^4 sampled triples
    /// above), and that the distinguished generators generate the group.
    pub fn from_mul_table(
        mul: Vec<u16>,
        gens: Vec<usize>,
        gen_labels: Vec<String>,
        label: impl Into<String>,
    ) -> Result<Group> {
        let label = label.into();
        let order = (mul.len() as f64).sqrt().round() as usize;
        if order == 0 || order * order != mul.len() {
            return Err(Error::InvalidParams(format!(
                "mul table length {} is not a perfect square",
                mul.len()
            )));
        }
        if order > ORDER_CAP {
            return Err(Error::OrderCapExceeded {
                order,
                cap: ORDER_CAP,
            });
        }
        let at = |a: usize, b: usize| mul[a * order + b] as usize;
        for x in 0..order {
            if at(0, x) != x || at(x, 0) != x {
                return Err(Error::InvalidParams(
                    "identity row/column is not the identity map".into(),
                ));
            }
        }
        let mut inv = vec![u16::MAX; order];
        for x in 0..order {
            let y = (0..order)
                .find(|&y| at(x, y) == 0)
                .ok_or_else(|| Error::InvalidParams(format!("element {x} has no inverse")))?;
            if at(y, x) != 0 {
                return Err(Error::InvalidParams(format!(
                    "inverse of {x} is one-sided"
                )));
            }
            inv[x] = y as u16;
        }
        if order <= FULL_ASSOC_BOUND {
            for a in 0..order {
                for b in 0..order {
                    let ab = at(a, b);
                    for c in 0..order {
                        if at(ab, c) != at(a, at(b, c)) {
                            return Err(Error::InvalidParams(format!(
                                "associativity fails at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut state = 0x5eed_u64 ^ order as u64;
            for _ in 0..10_000 {
                let a = (splitmix64(&mut state) % order as u64) as usize;
                let b = (splitmix64(&mut state) % order as u64) as usize;
                let c = (splitmix64(&mut state) % order as u64) as usize;
                if at(at(a, b), c) != at(a, at(b, c)) {
                    return Err(Error::InvalidParams(format!(
                        "associativity fails at ({a},{b},{c})"
                    )));
                }
            }
        }
        let mut elt_order = vec![0u32; order];
        for x in 0..order {
            let mut k = 1u32;
            let mut acc = x;
            while acc != 0 {
                acc = at(acc, x);
                k += 1;
            }
            elt_order[x] = k;
        }
        let g = Group {
            order,
            mul,
            inv,
            elt_order,
            gens,
            gen_labels,
            prime: prime_power_base(order),
            label,
        };
        // the distinguished generators must actually generate
        let generated = g.generated_subgroup(&g.gens.clone())?;
        if generated.size() != order {
            return Err(Error::ClosureMismatch {
                closure: generated.size(),
                live: order,
            });
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    #[inline]
    pub fn elt_order(&self, a: usize) -> u32 {
        self.elt_order[a]
    }

    /// g^-1 a g
    #[inline]
    pub fn conjugate(&self, a: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), a), g)
    }

    /// [a,b] = a^-1 b^-1 a b
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn power(&self, x: usize, n: i64) -> usize {
        let base = if n < 0 { self.inv(x) } else { x };
        let mut acc = 0;
        for _ in 0..n.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn gen_labels(&self) -> &[String] {
        &self.gen_labels
    }

    /// p with order = p^e, when the order is a prime power.
    pub fn prime(&self) -> Option<u64> {
        self.prime
    }

    pub fn require_prime(&self) -> Result<u64> {
        if self.order == 1 {
            // the trivial group is vacuously a p-group for any p; use 2
            return Ok(2);
        }
        self.prime.ok_or(Error::NotPGroup { order: self.order })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Group {
        self.label = label.into();
        self
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .all(|&a| self.gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn exponent(&self) -> u32 {
        fn lcm(a: u64, b: u64) -> u64 {
            fn gcd(a: u64, b: u64) -> u64 {
                if b == 0 { a } else { gcd(b, a % b) }
            }
            a / gcd(a, b) * b
        }
        self.elt_order
            .iter()
            .fold(1u64, |acc, &o| lcm(acc, o as u64)) as u32
    }

    /// Label of the generator with the given index, or a positional name.
    pub fn gen_label_or(&self, i: usize) -> String {
        self.gen_labels
            .get(i)
            .cloned()
            .unwrap_or_else(|| format!("g{i}"))
    }

    pub fn dump(&self) -> GroupDump {
        GroupDump {
            order: self.order,
            mul: self.mul.clone(),
            gens: self.gens.clone(),
            gen_labels: self.gen_labels.clone(),
            label: self.label.clone(),
        }
    }

    pub fn from_dump(d: GroupDump) -> Result<Group> {
        Group::from_mul_table(d.mul, d.gens, d.gen_labels, d.label)
    }

    /// Least subgroup containing the seeds: breadth-first closure under
    /// right multiplication by the seeds.
    pub fn generated_subgroup(&self, seeds: &[usize]) -> Result<Subgroup> {
        for &s in seeds {
            if s >= self.order {
                return Err(Error::InvalidParams(format!(
                    "seed {s} out of range for order {}",
                    self.order
                )));
            }
        }
        let mut members = BitSet::new(self.order);
        members.insert(0);
        let mut work = vec![0usize];
        while let Some(x) = work.pop() {
            for &s in seeds {
                let y = self.mul(x, s);
                if !members.contains(y) {
                    members.insert(y);
                    work.push(y);
                }
            }
        }
        Ok(Subgroup::from_members_with_gens(
            self,
            members,
            seeds.to_vec(),
        ))
    }

    /// The subgroup of all elements: convenience for whole-group results.
    pub fn full_subgroup(&self) -> Subgroup {
        let mut members = BitSet::new(self.order);
        for i in 0..self.order {
            members.insert(i);
        }
        Subgroup::from_members(self, members)
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        let mut members = BitSet::new(self.order);
        members.insert(0);
        Subgroup::from_members(self, members)
    }
}

/// A subgroup of an ambient group: an element bitset with cached order
/// and a generating list. Operations take the ambient group explicitly.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: BitSet,
    size: usize,
    gens: Vec<usize>,
}

// equality is by member set; the generating list is only a hint
impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    /// Wraps a member set known to be closed, computing a greedy
    /// generating list. Lagrange is asserted.
    pub fn from_members(g: &Group, members: BitSet) -> Subgroup {
        let size = members.count();
        assert_eq!(
            g.order() % size,
            0,
            "subgroup size {} does not divide group order {}",
            size,
            g.order()
        );
        let mut gens = Vec::new();
        let mut span = BitSet::new(g.order());
        span.insert(0);
        let mut span_count = 1;
        for x in members.iter() {
            if span_count == size {
                break;
            }
            if !span.contains(x) {
                gens.push(x);
                // extend span closure with x
                let mut work: Vec<usize> = span.iter().collect();
                while let Some(y) = work.pop() {
                    for &s in &gens {
                        let z = g.mul(y, s);
                        if !span.contains(z) {
                            span.insert(z);
                            span_count += 1;
                            work.push(z);
                        }
                    }
                }
            }
        }
        debug_assert_eq!(span_count, size);
        Subgroup {
            members,
            size,
            gens,
        }
    }

    fn from_members_with_gens(g: &Group, members: BitSet, gens: Vec<usize>) -> Subgroup {
        let size = members.count();
        assert_eq!(g.order() % size, 0);
        let gens = gens.into_iter().filter(|&s| s != 0).collect();
        Subgroup {
            members,
            size,
            gens,
        }
    }

    pub fn members(&self) -> &BitSet {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }

    pub fn is_whole(&self, g: &Group) -> bool {
        self.size == g.order()
    }

    pub fn index_in(&self, g: &Group) -> usize {
        g.order() / self.size
    }

    /// True when every pair of members commutes (checked on generators).
    pub fn is_abelian_in(&self, g: &Group) -> bool {
        self.gens
            .iter()
            .all(|&a| self.gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    /// True when the subgroup is cyclic.
    pub fn is_cyclic_in(&self, g: &Group) -> bool {
        self.iter().any(|x| g.elt_order(x) as usize == self.size)
    }

    /// The conjugate subgroup x^-1 H x.
    pub fn conjugate_by(&self, g: &Group, x: usize) -> Subgroup {
        let mut members = BitSet::new(g.order());
        for h in self.iter() {
            members.insert(g.conjugate(h, x));
        }
        let gens = self.gens.iter().map(|&s| g.conjugate(s, x)).collect();
        Subgroup {
            members,
            size: self.size,
            gens,
        }
    }

    /// True iff x normalizes the subgroup.
    pub fn normalized_by(&self, g: &Group, x: usize) -> bool {
        self.gens
            .iter()
            .all(|&s| self.members.contains(g.conjugate(s, x)))
    }

    pub fn is_normal_in(&self, g: &Group) -> bool {
        g.gens().iter().all(|&x| self.normalized_by(g, x))
    }
}

/// Z(g) = elements commuting with everything (generators suffice).
pub fn center(g: &Group) -> Subgroup {
    let mut members = BitSet::new(g.order());
    for x in 0..g.order() {
        if g.gens()
            .iter()
            .all(|&y| g.mul(x, y) == g.mul(y, x))
        {
            members.insert(x);
        }
    }
    Subgroup::from_members(g, members)
}

/// Centralizer of a single element.
pub fn centralizer_of_element(g: &Group, target: usize) -> Subgroup {
    let mut members = BitSet::new(g.order());
    for x in 0..g.order() {
        if g.mul(x, target) == g.mul(target, x) {
            members.insert(x);
        }
    }
    Subgroup::from_members(g, members)
}

/// Centralizer of a subgroup: elements commuting with all its members
/// (its generators suffice).
pub fn centralizer_of_subgroup(g: &Group, h: &Subgroup) -> Subgroup {
    let mut members = BitSet::new(g.order());
    for x in 0..g.order() {
        if h.gens()
            .iter()
            .all(|&y| g.mul(x, y) == g.mul(y, x))
        {
            members.insert(x);
        }
    }
    Subgroup::from_members(g, members)
}

/// G' = subgroup generated by all commutators.
pub fn derived_subgroup(g: &Group) -> Result<Subgroup> {
    let mut seeds = Vec::new();
    let mut seen = BitSet::new(g.order());
    for a in 0..g.order() {
        for b in 0..g.order() {
            let c = g.commutator(a, b);
            if c != 0 && !seen.contains(c) {
                seen.insert(c);
                seeds.push(c);
            }
        }
    }
    g.generated_subgroup(&seeds)
}

/// Φ(G) = G' G^p for a p-group; cross-checked elsewhere against the
/// intersection of maximal subgroups.
pub fn frattini(g: &Group) -> Result<Subgroup> {
    let p = g.require_prime()?;
    let derived = derived_subgroup(g)?;
    let mut seeds: Vec<usize> = derived.gens().to_vec();
    let mut seen = BitSet::new(g.order());
    for x in 0..g.order() {
        let xp = g.power(x, p as i64);
        if xp != 0 && !seen.contains(xp) {
            seen.insert(xp);
            seeds.push(xp);
        }
    }
    g.generated_subgroup(&seeds)
}

/// Ω₁(G) = subgroup generated by elements of order dividing p.
pub fn omega1(g: &Group) -> Result<Subgroup> {
    let p = g.require_prime()?;
    let seeds: Vec<usize> = (1..g.order())
        .filter(|&x| g.elt_order(x) as u64 == p)
        .collect();
    g.generated_subgroup(&seeds)
}

/// G/N on cosets, with deterministic coset numbering by least member
/// index. The identity coset (containing 0) sorts first.
pub fn quotient(g: &Group, n: &Subgroup) -> Result<Group> {
    if !n.is_normal_in(g) {
        return Err(Error::NotNormal);
    }
    let order = g.order();
    // coset representative = least member of x N
    let mut rep = vec![usize::MAX; order];
    let mut reps = Vec::new();
    for x in 0..order {
        if rep[x] == usize::MAX {
            let mut least = usize::MAX;
            let mut coset = Vec::with_capacity(n.size());
            for h in n.iter() {
                let y = g.mul(x, h);
                least = least.min(y);
                coset.push(y);
            }
            for y in coset {
                rep[y] = least;
            }
            reps.push(least);
        }
    }
    reps.sort_unstable();
    reps.dedup();
    let index_of = |r: usize| reps.binary_search(&r).unwrap();
    let q = reps.len();
    let mut mul = vec![0u16; q * q];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            mul[i * q + j] = index_of(rep[g.mul(a, b)]) as u16;
        }
    }
    let gens: Vec<usize> = g.gens().iter().map(|&s| index_of(rep[s])).collect();
    let gen_labels = g.gen_labels().to_vec();
    Group::from_mul_table(
        mul,
        gens,
        gen_labels,
        format!("{}/N{}", g.label(), n.size()),
    )
}
