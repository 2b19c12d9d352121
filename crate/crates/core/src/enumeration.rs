//! Todd–Coxeter coset enumeration over the trivial subgroup.
//!
//! HLT-style driver with Felsch-style deduction propagation: each live
//! coset is processed in order, every relator is scanned at it and any
//! gap is bridged by defining new cosets; each new table entry goes on a
//! deduction stack whose draining scans the relator rotations that start
//! with the deduced letter, so coincidences surface early and redundant
//! cosets stay rare. Coincidences merge by union-find with the lowest
//! index surviving, so coset numbering is reproducible. With the trivial
//! subgroup the closed table is the regular action and its live cosets
//! are the group elements.

use crate::error::{Error, Result};
use crate::group::{Group, ORDER_CAP};
use crate::presentation::Presentation;

pub const DEFAULT_MAX_COSETS: usize = 65_536;

const UNDEF: u32 = u32::MAX;

/// A closed, consistent coset table: entry(c, col) for columns
/// alternating generator / generator-inverse, with compacted live cosets.
#[derive(Clone, Debug)]
pub struct CosetTable {
    num_gens: usize,
    /// rows[c * 2*num_gens + col], col 2g = generator g, 2g+1 = inverse.
    rows: Vec<u32>,
    num_live: usize,
}

impl CosetTable {
    pub fn num_live(&self) -> usize {
        self.num_live
    }

    pub fn num_gens(&self) -> usize {
        self.num_gens
    }

    #[inline]
    pub fn entry(&self, coset: usize, col: usize) -> usize {
        self.rows[coset * 2 * self.num_gens + col] as usize
    }

    /// Action of generator g on a coset.
    #[inline]
    pub fn act(&self, coset: usize, gen: usize) -> usize {
        self.entry(coset, 2 * gen)
    }
}

struct Enumerator {
    num_gens: usize,
    cols: usize,
    table: Vec<u32>, // rows appended as cosets are defined
    parent: Vec<u32>,
    live: usize,
    defined: usize,
    max_cosets: usize,
    deductions: Vec<(u32, usize)>,
    coincidences: Vec<(u32, u32)>,
    /// Cyclically reduced relators as column sequences.
    relators: Vec<Vec<usize>>,
    /// For each column letter, the rotations of every (forward and
    /// inverted) relator that begin with that letter.
    rotations_by_first: Vec<Vec<Vec<usize>>>,
}

#[inline]
fn inv_col(col: usize) -> usize {
    col ^ 1
}

impl Enumerator {
    fn new(p: &Presentation, max_cosets: usize) -> Self {
        let num_gens = p.num_generators();
        let cols = 2 * num_gens;
        // relators as column sequences, cyclically reduced
        let mut relators: Vec<Vec<usize>> = Vec::new();
        for w in &p.relators {
            let mut seq: Vec<usize> = w
                .flatten()
                .into_iter()
                .map(|(g, pos)| if pos { 2 * g } else { 2 * g + 1 })
                .collect();
            // cyclic reduction
            while seq.len() >= 2 && *seq.first().unwrap() == inv_col(*seq.last().unwrap()) {
                seq.pop();
                seq.remove(0);
            }
            if !seq.is_empty() {
                relators.push(seq);
            }
        }
        let mut rotations_by_first = vec![Vec::new(); cols];
        let mut push_rotations = |rel: &[usize]| {
            for start in 0..rel.len() {
                let rot: Vec<usize> = rel[start..]
                    .iter()
                    .chain(rel[..start].iter())
                    .copied()
                    .collect();
                let bucket = &mut rotations_by_first[rot[0]];
                if !bucket.contains(&rot) {
                    bucket.push(rot);
                }
            }
        };
        for rel in &relators {
            push_rotations(rel);
            let inv: Vec<usize> = rel.iter().rev().map(|&c| inv_col(c)).collect();
            push_rotations(&inv);
        }
        Enumerator {
            num_gens,
            cols,
            table: vec![UNDEF; cols],
            parent: vec![0],
            live: 1,
            defined: 1,
            max_cosets,
            deductions: Vec::new(),
            coincidences: Vec::new(),
            relators,
            rotations_by_first,
        }
    }

    fn find(&mut self, mut c: u32) -> u32 {
        while self.parent[c as usize] != c {
            let p = self.parent[c as usize];
            self.parent[c as usize] = self.parent[p as usize];
            c = self.parent[c as usize];
        }
        c
    }

    #[inline]
    fn get(&mut self, c: u32, col: usize) -> u32 {
        let raw = self.table[c as usize * self.cols + col];
        if raw == UNDEF {
            UNDEF
        } else {
            self.find(raw)
        }
    }

    fn set(&mut self, c: u32, col: usize, d: u32) {
        // install both directions; conflicting prior entries coincide
        for (from, via, to) in [(c, col, d), (d, inv_col(col), c)] {
            let cur = self.get(from, via);
            if cur == UNDEF {
                self.table[from as usize * self.cols + via] = to;
                self.deductions.push((from, via));
            } else if cur != to {
                self.coincidences.push((cur, to));
            }
        }
    }

    fn merge_pending(&mut self) {
        while let Some((a, b)) = self.coincidences.pop() {
            let ra = self.find(a);
            let rb = self.find(b);
            if ra == rb {
                continue;
            }
            let (survivor, loser) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[loser as usize] = survivor;
            self.live -= 1;
            for col in 0..self.cols {
                let raw = self.table[loser as usize * self.cols + col];
                if raw == UNDEF {
                    continue;
                }
                let e = self.find(raw);
                let cur = self.get(survivor, col);
                if cur == UNDEF {
                    self.set(survivor, col, e);
                } else if cur != e {
                    self.coincidences.push((cur, e));
                }
            }
        }
    }

    /// Scan one relator rotation at a coset, filling at most one gap.
    fn scan_and_fill(&mut self, word: &[usize], start: u32) {
        let n = word.len();
        let mut f = start;
        let mut i = 0;
        while i < n {
            let next = self.get(f, word[i]);
            if next == UNDEF {
                break;
            }
            f = next;
            i += 1;
        }
        if i == n {
            if f != start {
                self.coincidences.push((f, start));
            }
            return;
        }
        let mut b = start;
        let mut j = n; // b is the coset at position j
        while j > i + 1 {
            let prev = self.get(b, inv_col(word[j - 1]));
            if prev == UNDEF {
                break;
            }
            b = prev;
            j -= 1;
        }
        if j == i + 1 {
            // exactly one gap: deduce entry (f, word[i]) = b
            self.set(f, word[i], b);
        }
    }

    fn drain_deductions(&mut self) {
        loop {
            self.merge_pending();
            let Some((c, col)) = self.deductions.pop() else {
                break;
            };
            let c = self.find(c);
            let d = self.get(c, col);
            if d == UNDEF {
                continue; // stale after a merge
            }
            let rotations = std::mem::take(&mut self.rotations_by_first[col]);
            for rot in &rotations {
                // re-find: a merge inside this loop may have retired c
                let start = self.find(c);
                self.scan_and_fill(rot, start);
                self.merge_pending();
            }
            self.rotations_by_first[col] = rotations;
            // the mirrored entry (d, inv) also starts scans at d
            let rotations = std::mem::take(&mut self.rotations_by_first[inv_col(col)]);
            for rot in &rotations {
                let start = self.find(d);
                self.scan_and_fill(rot, start);
                self.merge_pending();
            }
            self.rotations_by_first[inv_col(col)] = rotations;
        }
    }

    fn define(&mut self) -> Result<u32> {
        if self.defined >= self.max_cosets {
            return Err(Error::CosetLimitExceeded {
                limit: self.max_cosets,
            });
        }
        let new = self.defined as u32;
        self.defined += 1;
        self.live += 1;
        self.parent.push(new);
        self.table.extend(std::iter::repeat(UNDEF).take(self.cols));
        Ok(new)
    }

    /// Closes one relator cycle at a coset, defining new cosets to bridge
    /// the gap one entry at a time; deductions are drained after every
    /// new entry so coincidences collapse the table as early as possible.
    fn scan_and_close(&mut self, word: &[usize], start: u32) -> Result<()> {
        let n = word.len();
        loop {
            self.merge_pending();
            let start = self.find(start);
            let mut f = start;
            let mut i = 0;
            while i < n {
                let next = self.get(f, word[i]);
                if next == UNDEF {
                    break;
                }
                f = next;
                i += 1;
            }
            if i == n {
                if f != start {
                    self.coincidences.push((f, start));
                    self.merge_pending();
                }
                return Ok(());
            }
            let mut b = start;
            let mut j = n; // b is the coset at position j
            while j > i + 1 {
                let prev = self.get(b, inv_col(word[j - 1]));
                if prev == UNDEF {
                    break;
                }
                b = prev;
                j -= 1;
            }
            if j == i + 1 {
                // exactly one gap left: close the cycle
                self.set(f, word[i], b);
            } else {
                let new = self.define()?;
                self.set(f, word[i], new);
            }
            self.drain_deductions();
        }
    }

    fn run(mut self) -> Result<CosetTable> {
        self.drain_deductions();
        let mut c = 0u32;
        while (c as usize) < self.defined {
            if self.find(c) != c {
                c += 1;
                continue;
            }
            let relators = std::mem::take(&mut self.relators);
            let mut result = Ok(());
            for rel in &relators {
                // a merge may retire c; its lower-numbered survivor has
                // already been fully processed
                if self.find(c) != c {
                    break;
                }
                result = self.scan_and_close(rel, c);
                if result.is_err() {
                    break;
                }
            }
            self.relators = relators;
            result?;
            // complete the row so the regular action is total
            for col in 0..self.cols {
                if self.find(c) != c {
                    break;
                }
                if self.get(c, col) == UNDEF {
                    let new = self.define()?;
                    self.set(c, col, new);
                    self.drain_deductions();
                }
            }
            c += 1;
        }
        self.compact()
    }

    fn compact(mut self) -> Result<CosetTable> {
        let mut remap = vec![UNDEF; self.defined];
        let mut live_idx = 0u32;
        for c in 0..self.defined as u32 {
            if self.find(c) == c {
                remap[c as usize] = live_idx;
                live_idx += 1;
            }
        }
        let num_live = live_idx as usize;
        let mut rows = vec![UNDEF; num_live * self.cols];
        for c in 0..self.defined as u32 {
            if self.find(c) != c {
                continue;
            }
            for col in 0..self.cols {
                let e = self.get(c, col);
                debug_assert_ne!(e, UNDEF, "closed table has no holes");
                rows[remap[c as usize] as usize * self.cols + col] = remap[e as usize];
            }
        }
        Ok(CosetTable {
            num_gens: self.num_gens,
            rows,
            num_live,
        })
    }
}

/// Enumerates cosets of the trivial subgroup; on success the live-coset
/// count is the group order and every relator traces to the identity
/// cycle at every coset (verified before returning).
pub fn enumerate_cosets(p: &Presentation, max_cosets: usize) -> Result<CosetTable> {
    if max_cosets == 0 {
        return Err(Error::InvalidParams("max_cosets must be >= 1".into()));
    }
    let table = Enumerator::new(p, max_cosets).run()?;
    // consistency: entry(c, g) = d iff entry(d, g^-1) = c
    for c in 0..table.num_live() {
        for g in 0..table.num_gens() {
            let d = table.entry(c, 2 * g);
            if table.entry(d, 2 * g + 1) != c {
                return Err(Error::InvalidParams(
                    "internal: coset table inverse inconsistency".into(),
                ));
            }
        }
    }
    // every relator traces the identity cycle at every coset
    for w in &p.relators {
        let seq = w.flatten();
        for c in 0..table.num_live() {
            let mut cur = c;
            for &(g, pos) in &seq {
                cur = table.entry(cur, if pos { 2 * g } else { 2 * g + 1 });
            }
            if cur != c {
                return Err(Error::InvalidParams(
                    "internal: relator does not trace identity".into(),
                ));
            }
        }
    }
    Ok(table)
}

/// Realizes the closed table as a concrete group: generator i acts as the
/// regular permutation c -> entry(c, i); the multiplication table is the
/// closure of those permutations, identity at index 0.
pub fn realize_group(table: &CosetTable, labels: &[String]) -> Result<Group> {
    let n = table.num_live();
    if n > ORDER_CAP {
        return Err(Error::OrderCapExceeded {
            order: n,
            cap: ORDER_CAP,
        });
    }
    // perm[d][x] = x * w_d, built by BFS over representative words
    let mut perm: Vec<Vec<u16>> = vec![Vec::new(); n];
    perm[0] = (0..n as u16).collect();
    let mut queue = std::collections::VecDeque::from([0usize]);
    let mut seen = vec![false; n];
    seen[0] = true;
    while let Some(c) = queue.pop_front() {
        for col in 0..2 * table.num_gens() {
            let d = table.entry(c, col);
            if !seen[d] {
                seen[d] = true;
                let p: Vec<u16> = perm[c]
                    .iter()
                    .map(|&x| table.entry(x as usize, col) as u16)
                    .collect();
                perm[d] = p;
                queue.push_back(d);
            }
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(Error::ClosureMismatch {
            closure: seen.iter().filter(|&&s| s).count(),
            live: n,
        });
    }
    let mut mul = vec![0u16; n * n];
    for d in 0..n {
        for x in 0..n {
            mul[x * n + d] = perm[d][x];
        }
    }
    let gens: Vec<usize> = (0..table.num_gens()).map(|g| table.act(0, g)).collect();
    Group::from_mul_table(mul, gens, labels.to_vec(), "presentation")
}

/// Convenience: parse nothing, enumerate, realize.
pub fn group_of_presentation(p: &Presentation, max_cosets: usize) -> Result<Group> {
    let table = enumerate_cosets(p, max_cosets)?;
    realize_group(&table, &p.generator_names)
}
