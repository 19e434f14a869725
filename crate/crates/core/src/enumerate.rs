//! Todd–Coxeter coset enumeration, HLT strategy.
//!
//! Every live coset is visited in definition order and each relator is
//! traced from it, defining new cosets to fill gaps. Definitions and
//! deductions are pushed on a stack and immediately re-scanned against the
//! cyclic conjugates of the relators that start with the affected column.
//! Coincidences are processed to completion before scanning resumes. Dead
//! cosets are recycled through a free list, so the table never holds more
//! than `max_cosets` rows.

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::{Letter, Word};

const NONE: u32 = u32::MAX;
const DEDUCTION_CAP: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_cosets: usize,
}

impl Limits {
    pub fn new(max_cosets: usize) -> Self {
        assert!(max_cosets >= 1, "max_cosets must be positive");
        Limits { max_cosets }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_cosets: 500_000 }
    }
}

/// A complete, closed coset table with cosets numbered in breadth-first
/// order from the subgroup coset `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    presentation: Presentation,
    subgroup: Vec<Word>,
    cols: usize,
    cosets: usize,
    table: Vec<u32>,
}

impl CosetTable {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn subgroup(&self) -> &[Word] {
        &self.subgroup
    }

    /// Number of cosets, i.e. the index of the subgroup.
    pub fn len(&self) -> usize {
        self.cosets
    }

    pub fn is_empty(&self) -> bool {
        self.cosets == 0
    }

    pub fn act(&self, coset: usize, letter: Letter) -> usize {
        self.table[coset * self.cols + letter.column()] as usize
    }

    pub fn trace(&self, coset: usize, w: &Word) -> usize {
        w.letters().iter().fold(coset, |c, &l| self.act(c, l))
    }

    /// Right action of each generator on cosets `0..len()`.
    pub fn permutation_images(&self) -> Vec<Vec<u32>> {
        (0..self.presentation.generator_count())
            .map(|g| {
                (0..self.cosets)
                    .map(|c| self.table[c * self.cols + 2 * g])
                    .collect()
            })
            .collect()
    }

    /// Relators fix every coset and subgroup generators fix coset `0`.
    pub fn is_closed(&self) -> bool {
        let inverse_ok = (0..self.cosets).all(|c| {
            (0..self.cols).all(|x| {
                let d = self.table[c * self.cols + x] as usize;
                d < self.cosets && self.table[d * self.cols + (x ^ 1)] as usize == c
            })
        });
        inverse_ok
            && (0..self.cosets)
                .all(|c| self.presentation.relators().iter().all(|r| self.trace(c, r) == c))
            && self.subgroup.iter().all(|w| self.trace(0, w) == 0)
    }
}

/// Enumerates the cosets of `<sub>` in the group presented by `p`.
pub fn todd_coxeter(p: &Presentation, sub: &[Word], limits: Limits) -> Result<CosetTable> {
    let count = p.generator_count();
    for w in sub {
        if let Some(index) = w.max_generator().filter(|&g| g >= count) {
            return Err(Error::InvalidGenerator { index, count });
        }
    }
    let cols = 2 * count;
    let relators: Vec<Vec<u32>> = {
        let mut rs: Vec<Vec<u32>> = p
            .cyclically_reduced()
            .relators()
            .iter()
            .map(columns)
            .collect();
        let mut seen = std::collections::HashSet::new();
        rs.retain(|r| seen.insert(r.clone()));
        rs
    };
    let mut e = Enumerator::new(cols, &relators, limits.max_cosets);
    for w in sub {
        let w = columns(&w.free_reduce());
        e.scan_and_fill(0, &w)?;
        e.process_deductions()?;
    }
    e.run(&relators)?;
    let (cosets, table) = e.standardize();
    Ok(CosetTable {
        presentation: p.clone(),
        subgroup: sub.to_vec(),
        cols,
        cosets,
        table,
    })
}

fn columns(w: &Word) -> Vec<u32> {
    w.letters().iter().map(|l| l.column() as u32).collect()
}

struct Enumerator {
    cols: usize,
    table: Vec<u32>,
    fwd: Vec<u32>,
    next: Vec<u32>,
    prev: Vec<u32>,
    tail: u32,
    free: Vec<u32>,
    pending_free: Vec<u32>,
    live: usize,
    max: usize,
    deductions: Vec<(u32, u32)>,
    queue: Vec<u32>,
    /// cyclic conjugates of relators and their inverses, grouped by first column
    conjugates: Vec<Vec<Vec<u32>>>,
}

impl Enumerator {
    fn new(cols: usize, relators: &[Vec<u32>], max: usize) -> Self {
        let mut conjugates: Vec<Vec<Vec<u32>>> = vec![Vec::new(); cols];
        let mut seen = std::collections::HashSet::new();
        for r in relators {
            let inv: Vec<u32> = r.iter().rev().map(|&x| x ^ 1).collect();
            for w in [r, &inv] {
                for s in 0..w.len() {
                    let mut c = w[s..].to_vec();
                    c.extend_from_slice(&w[..s]);
                    if seen.insert(c.clone()) {
                        conjugates[c[0] as usize].push(c);
                    }
                }
            }
        }
        let mut e = Enumerator {
            cols,
            table: Vec::new(),
            fwd: Vec::new(),
            next: Vec::new(),
            prev: Vec::new(),
            tail: NONE,
            free: Vec::new(),
            pending_free: Vec::new(),
            live: 0,
            max,
            deductions: Vec::new(),
            queue: Vec::new(),
            conjugates,
        };
        e.new_coset().expect("limit is at least one");
        e
    }

    #[inline]
    fn get(&self, c: u32, x: u32) -> u32 {
        self.table[c as usize * self.cols + x as usize]
    }

    #[inline]
    fn set(&mut self, c: u32, x: u32, v: u32) {
        self.table[c as usize * self.cols + x as usize] = v;
    }

    #[inline]
    fn alive(&self, c: u32) -> bool {
        self.fwd[c as usize] == c
    }

    fn new_coset(&mut self) -> Result<u32> {
        if self.live >= self.max {
            return Err(Error::Overflow { limit: self.max });
        }
        let c = match self.free.pop() {
            Some(c) => {
                let start = c as usize * self.cols;
                self.table[start..start + self.cols].fill(NONE);
                c
            }
            None => {
                let c = self.fwd.len() as u32;
                self.table.resize(self.table.len() + self.cols, NONE);
                self.fwd.push(NONE);
                self.next.push(NONE);
                self.prev.push(NONE);
                c
            }
        };
        self.fwd[c as usize] = c;
        self.next[c as usize] = NONE;
        self.prev[c as usize] = self.tail;
        if self.tail != NONE {
            self.next[self.tail as usize] = c;
        }
        self.tail = c;
        self.live += 1;
        Ok(c)
    }

    fn define(&mut self, c: u32, x: u32) -> Result<()> {
        let d = self.new_coset()?;
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        self.push_deduction(c, x);
        Ok(())
    }

    fn push_deduction(&mut self, c: u32, x: u32) {
        // deductions only accelerate HLT, so a full stack is simply dropped
        if self.deductions.len() < DEDUCTION_CAP {
            self.deductions.push((c, x));
        }
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.fwd[r as usize] != r {
            r = self.fwd[r as usize];
        }
        let mut c = c;
        while self.fwd[c as usize] != r {
            let n = self.fwd[c as usize];
            self.fwd[c as usize] = r;
            c = n;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (p, q) = (self.rep(a), self.rep(b));
        if p == q {
            return;
        }
        let (keep, kill) = if p < q { (p, q) } else { (q, p) };
        self.fwd[kill as usize] = keep;
        self.live -= 1;
        let (pv, nx) = (self.prev[kill as usize], self.next[kill as usize]);
        if pv != NONE {
            self.next[pv as usize] = nx;
        }
        if nx != NONE {
            self.prev[nx as usize] = pv;
        } else {
            self.tail = pv;
        }
        // `next[kill]` stays stale so the main loop can step past a dead coset
        self.queue.push(kill);
        self.pending_free.push(kill);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.cols as u32 {
                let d = self.get(g, x);
                if d == NONE {
                    continue;
                }
                self.set(d, x ^ 1, NONE);
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mx = self.get(mu, x);
                if mx != NONE {
                    self.merge(nu, mx);
                    continue;
                }
                let nx = self.get(nu, x ^ 1);
                if nx != NONE {
                    self.merge(mu, nx);
                    continue;
                }
                self.set(mu, x, nu);
                self.set(nu, x ^ 1, mu);
                self.push_deduction(mu, x);
            }
        }
        self.queue.clear();
    }

    fn scan_and_fill(&mut self, alpha: u32, w: &[u32]) -> Result<()> {
        let (mut f, mut b) = (alpha, alpha);
        let (mut i, mut j) = (0usize, w.len());
        loop {
            while i < j {
                let n = self.get(f, w[i]);
                if n == NONE {
                    break;
                }
                f = n;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i {
                let n = self.get(b, w[j - 1] ^ 1);
                if n == NONE {
                    break;
                }
                b = n;
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.set(f, w[i], b);
                self.set(b, w[i] ^ 1, f);
                self.push_deduction(f, w[i]);
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    /// Trace without defining; deduce on a gap of one, merge on a mismatch.
    fn scan(&mut self, alpha: u32, w: &[u32]) {
        let (mut f, mut b) = (alpha, alpha);
        let (mut i, mut j) = (0usize, w.len());
        while i < j {
            let n = self.get(f, w[i]);
            if n == NONE {
                break;
            }
            f = n;
            i += 1;
        }
        if i == j {
            if f != b {
                self.coincidence(f, b);
            }
            return;
        }
        while j > i {
            let n = self.get(b, w[j - 1] ^ 1);
            if n == NONE {
                break;
            }
            b = n;
            j -= 1;
        }
        if j == i {
            self.coincidence(f, b);
        } else if j == i + 1 {
            self.set(f, w[i], b);
            self.set(b, w[i] ^ 1, f);
            self.push_deduction(f, w[i]);
        }
    }

    fn process_deductions(&mut self) -> Result<()> {
        while let Some((c, x)) = self.deductions.pop() {
            if (c as usize) >= self.fwd.len() || !self.alive(c) {
                continue;
            }
            for k in 0..self.conjugates[x as usize].len() {
                if !self.alive(c) {
                    break;
                }
                let w = std::mem::take(&mut self.conjugates[x as usize][k]);
                self.scan(c, &w);
                self.conjugates[x as usize][k] = w;
            }
            if !self.alive(c) {
                continue;
            }
            let d = self.get(c, x);
            if d == NONE || !self.alive(d) {
                continue;
            }
            let xi = (x ^ 1) as usize;
            for k in 0..self.conjugates[xi].len() {
                if !self.alive(d) {
                    break;
                }
                let w = std::mem::take(&mut self.conjugates[xi][k]);
                self.scan(d, &w);
                self.conjugates[xi][k] = w;
            }
        }
        Ok(())
    }

    fn run(&mut self, relators: &[Vec<u32>]) -> Result<()> {
        let mut alpha = 0u32;
        while alpha != NONE {
            for r in relators {
                if !self.alive(alpha) {
                    break;
                }
                self.scan_and_fill(alpha, r)?;
                self.process_deductions()?;
            }
            if self.alive(alpha) {
                for x in 0..self.cols as u32 {
                    if self.get(alpha, x) == NONE {
                        self.define(alpha, x)?;
                        self.process_deductions()?;
                    }
                    if !self.alive(alpha) {
                        break;
                    }
                }
            }
            let mut nxt = self.next[alpha as usize];
            while nxt != NONE && !self.alive(nxt) {
                nxt = self.next[nxt as usize];
            }
            for c in self.pending_free.drain(..) {
                self.fwd[c as usize] = NONE;
                self.free.push(c);
            }
            alpha = nxt;
        }
        Ok(())
    }

    /// Renumbers live cosets in breadth-first order from coset 0.
    fn standardize(&self) -> (usize, Vec<u32>) {
        let mut label = vec![NONE; self.fwd.len()];
        let mut order = vec![0u32];
        label[0] = 0;
        let mut head = 0;
        while head < order.len() {
            let c = order[head];
            head += 1;
            for x in 0..self.cols as u32 {
                let d = self.get(c, x);
                debug_assert!(d != NONE && self.alive(d), "incomplete table after enumeration");
                if label[d as usize] == NONE {
                    label[d as usize] = order.len() as u32;
                    order.push(d);
                }
            }
        }
        let n = order.len();
        let mut table = vec![0u32; n * self.cols];
        for (new, &old) in order.iter().enumerate() {
            for x in 0..self.cols {
                table[new * self.cols + x] = label[self.get(old, x as u32) as usize];
            }
        }
        (n, table)
    }
}
