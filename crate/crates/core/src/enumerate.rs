//! Exhaustive and random generation of small Cayley tables.
//!
//! [`TableEnumeration`] is a backtracking search over table cells. In
//! commutative mode it fills the upper triangle (mirroring as it goes),
//! otherwise every cell in row-major order. After each placement it
//! probes every associativity triple whose products are all determined,
//! so dead branches are cut long before the table is complete. Tables
//! come out in lexicographic order of the flattened table, and the
//! `up_to_iso` filter keeps exactly the lexicographically smallest
//! member of each relabeling orbit.
//!
//! Random sampling reuses the same search with a shuffled value order
//! per cell and keeps the first table it reaches, so it works at orders
//! where rejection sampling of raw tables would essentially never hit
//! an associative one.

use alloc::string::String;
use alloc::vec::Vec;

use rand_core::{RngCore, SeedableRng};

use crate::caps;
use crate::semigroup::{Semigroup, TableError};

/// Sentinel for an undetermined cell (never a valid element).
const UNSET: usize = usize::MAX;

/// Backtracking enumeration of associative Cayley tables of one order.
///
/// Yields every table exactly once, in lexicographic order of the
/// flattened row-major table.
#[derive(Debug)]
pub struct TableEnumeration {
    n: usize,
    commutative: bool,
    up_to_iso: bool,
    /// Cell fill order; upper triangle only in commutative mode.
    cells: Vec<(usize, usize)>,
    table: Vec<usize>,
    /// Per-depth index of the next value to try.
    next_try: Vec<usize>,
    /// Per-cell value order; ascending when absent.
    orders: Option<Vec<Vec<usize>>>,
    depth: usize,
    /// Set when the table at full depth has been returned and the next
    /// call must backtrack past it.
    yielded: bool,
    done: bool,
}

impl TableEnumeration {
    fn new(n: usize, commutative: bool, up_to_iso: bool, orders: Option<Vec<Vec<usize>>>) -> Self {
        let mut cells = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if !commutative || a <= b {
                    cells.push((a, b));
                }
            }
        }
        let next_try = alloc::vec![0; cells.len()];
        TableEnumeration {
            n,
            commutative,
            up_to_iso,
            cells,
            table: alloc::vec![UNSET; n * n],
            next_try,
            orders,
            depth: 0,
            yielded: false,
            done: n == 0,
        }
    }

    fn place(&mut self, cell: (usize, usize), v: usize) {
        self.table[cell.0 * self.n + cell.1] = v;
        if self.commutative {
            self.table[cell.1 * self.n + cell.0] = v;
        }
    }

    /// Whether every associativity triple with all four products
    /// determined holds. Sound as a pruning test: a violated triple
    /// stays violated in every completion.
    fn consistent(&self) -> bool {
        let n = self.n;
        let t = |a: usize, b: usize| self.table[a * n + b];
        for x in 0..n {
            for y in 0..n {
                let xy = t(x, y);
                if xy == UNSET {
                    continue;
                }
                for z in 0..n {
                    let xy_z = t(xy, z);
                    if xy_z == UNSET {
                        continue;
                    }
                    let yz = t(y, z);
                    if yz == UNSET {
                        continue;
                    }
                    let x_yz = t(x, yz);
                    if x_yz != UNSET && xy_z != x_yz {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn value_at(&self, depth: usize, i: usize) -> usize {
        match &self.orders {
            Some(o) => o[depth][i],
            None => i,
        }
    }
}

impl Iterator for TableEnumeration {
    type Item = Semigroup;

    fn next(&mut self) -> Option<Semigroup> {
        if self.done {
            return None;
        }
        loop {
            if self.depth == self.cells.len() {
                if !self.yielded {
                    self.yielded = true;
                    if !self.up_to_iso || canonical_table(self.n, &self.table) == self.table {
                        let s = Semigroup::from_table(self.n, self.table.clone())
                            .expect("a fully consistent table is associative");
                        return Some(s);
                    }
                }
                self.yielded = false;
                if self.depth == 0 {
                    self.done = true;
                    return None;
                }
                self.depth -= 1;
                self.place(self.cells[self.depth], UNSET);
            }
            let cell = self.cells[self.depth];
            let mut advanced = false;
            while self.next_try[self.depth] < self.n {
                let i = self.next_try[self.depth];
                self.next_try[self.depth] += 1;
                self.place(cell, self.value_at(self.depth, i));
                if self.consistent() {
                    self.depth += 1;
                    if self.depth < self.cells.len() {
                        self.next_try[self.depth] = 0;
                    }
                    advanced = true;
                    break;
                }
                self.place(cell, UNSET);
            }
            if !advanced {
                if self.depth == 0 {
                    self.done = true;
                    return None;
                }
                self.depth -= 1;
                self.place(self.cells[self.depth], UNSET);
            }
        }
    }
}

/// All labeled commutative semigroups of order `n`, lexicographically.
pub fn enumerate_commutative(
    n: usize,
    up_to_iso: bool,
    cap: usize,
) -> Result<TableEnumeration, EnumerateError> {
    check_order(n, cap)?;
    Ok(TableEnumeration::new(n, true, up_to_iso, None))
}

/// All labeled semigroups of order `n`, lexicographically.
pub fn enumerate_all(
    n: usize,
    up_to_iso: bool,
    cap: usize,
) -> Result<TableEnumeration, EnumerateError> {
    check_order(n, cap)?;
    Ok(TableEnumeration::new(n, false, up_to_iso, None))
}

fn check_order(n: usize, cap: usize) -> Result<(), EnumerateError> {
    if n == 0 {
        return Err(EnumerateError::ZeroOrder);
    }
    if n > cap {
        return Err(EnumerateError::CapExceeded { order: n, cap });
    }
    Ok(())
}

/// The lexicographically smallest flattened table over all n!
/// relabelings.
fn canonical_table(n: usize, table: &[usize]) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<usize>> = None;
    loop {
        let mut image = alloc::vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                image[perm[a] * n + perm[b]] = perm[table[a * n + b]];
            }
        }
        if best.as_ref().map_or(true, |b| image < *b) {
            best = Some(image);
        }
        if !next_permutation(&mut perm) {
            return best.expect("at least the identity relabeling was tried");
        }
    }
}

/// Advances `perm` to its lexicographic successor; false once wrapped.
fn next_permutation(perm: &mut [usize]) -> bool {
    if perm.len() < 2 {
        return false;
    }
    let mut i = perm.len() - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = perm.len() - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// The canonical representative of the relabeling orbit of `s`: the
/// lexicographically smallest flattened table among all n! relabelings.
pub fn canonicalize(s: &Semigroup, cap: usize) -> Result<Semigroup, EnumerateError> {
    let n = s.order();
    if n > cap {
        return Err(EnumerateError::CapExceeded { order: n, cap });
    }
    let table = canonical_table(n, s.table());
    Ok(Semigroup::from_table(n, table).expect("relabeling preserves associativity"))
}

/// The relabeling of `s` along `perm` (element i becomes `perm[i]`).
pub fn relabel(s: &Semigroup, perm: &[usize]) -> Result<Semigroup, EnumerateError> {
    let n = s.order();
    let mut seen = alloc::vec![false; n];
    if perm.len() != n || !perm.iter().all(|&p| p < n && !core::mem::replace(&mut seen[p], true)) {
        return Err(EnumerateError::NotAPermutation);
    }
    let mut image = alloc::vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            image[perm[a] * n + perm[b]] = perm[s.table()[a * n + b]];
        }
    }
    Ok(Semigroup::from_table(n, image).expect("relabeling preserves associativity"))
}

/// `count` random associative tables of order `n`, sampled with
/// replacement by running the backtracking search with a seeded
/// shuffled value order per cell and keeping the first table reached.
pub fn sample(
    n: usize,
    count: usize,
    seed: u64,
    commutative: bool,
    cap: usize,
) -> Result<Vec<Semigroup>, EnumerateError> {
    check_order(n, cap)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let cells = if commutative { n * (n + 1) / 2 } else { n * n };
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let orders: Vec<Vec<usize>> = (0..cells)
            .map(|_| {
                let mut vals: Vec<usize> = (0..n).collect();
                for i in (1..n).rev() {
                    let j = (rng.next_u64() % (i as u64 + 1)) as usize;
                    vals.swap(i, j);
                }
                vals
            })
            .collect();
        let s = TableEnumeration::new(n, commutative, false, Some(orders))
            .next()
            .expect("every order has at least one semigroup");
        out.push(s);
    }
    Ok(out)
}

/// Where a corpus entry came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CorpusSource {
    Generated,
    Loaded,
}

/// One validated table in a corpus, tagged with where it came from and
/// whether it is known to be in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub semigroup: Semigroup,
    /// True when the table equals its canonical form. For loaded
    /// entries above the canonicalization cap this is false rather
    /// than unknown.
    pub canonical: bool,
    pub source: CorpusSource,
}

impl CorpusEntry {
    /// Wraps a generator output; `canonical` is the generator's
    /// `up_to_iso` mode, since that mode emits canonical forms only.
    pub fn generated(semigroup: Semigroup, canonical: bool) -> CorpusEntry {
        CorpusEntry { semigroup, canonical, source: CorpusSource::Generated }
    }

    /// Wraps a parsed table, checking canonicity when the order is
    /// within [`caps::CANONICALIZE`].
    pub fn loaded(semigroup: Semigroup) -> CorpusEntry {
        let canonical = canonicalize(&semigroup, caps::CANONICALIZE)
            .map(|c| c == semigroup)
            .unwrap_or(false);
        CorpusEntry { semigroup, canonical, source: CorpusSource::Loaded }
    }
}

/// Parses a corpus: concatenated Cayley tables, blank lines and '#'
/// comments allowed anywhere. Errors carry the offending line.
pub fn parse_corpus(text: &str) -> Result<Vec<Semigroup>, TableError> {
    crate::semigroup::parse_many(text, None)
}

/// Serializes tables in the corpus file format, one blank line between
/// consecutive tables.
pub fn corpus_to_text(tables: &[Semigroup]) -> String {
    let mut out = String::new();
    for (i, s) in tables.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&s.to_cayley_text());
    }
    out
}

/// Why enumeration could not start.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EnumerateError {
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("order {order} above enumeration cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("relabeling is not a permutation of the carrier")]
    NotAPermutation,
}
