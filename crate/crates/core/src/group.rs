//! Finite groups as multiplication tables.
//!
//! Elements are indices `0..order` with `0` the identity. Products follow
//! the right-action convention used by coset tables: for permutation groups
//! `a * b` means "apply `a`, then `b`".

use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;
use serde::Serialize;

use crate::abelian::AbelianInvariants;
use crate::enumerate::{todd_coxeter, Limits};
use crate::error::{Error, Result};
use crate::par;
use crate::presentation::Presentation;
use crate::word::{Letter, Word};

/// Closure bound for [`FiniteGroup::from_permutations`].
pub const MAX_GROUP_ORDER: usize = 1_000_000;

pub type Perm = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    generators: Vec<usize>,
}

/// A set of elements of some parent group, closed under products and
/// inverses. Sorted, always contains `0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    parent_order: usize,
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.parent_order
    }
}

fn compose(p: &[u32], q: &[u32]) -> Perm {
    p.iter().map(|&i| q[i as usize]).collect()
}

impl FiniteGroup {
    /// Closure of the permutation group generated by `perms`; generator `i`
    /// of the result is the element realizing `perms[i]`.
    pub fn from_permutations(perms: &[Perm]) -> Result<FiniteGroup> {
        Self::from_permutations_with_elements(perms).map(|(g, _)| g)
    }

    /// Like [`from_permutations`](Self::from_permutations) but also returns
    /// the permutation realizing each element.
    pub fn from_permutations_with_elements(perms: &[Perm]) -> Result<(FiniteGroup, Vec<Perm>)> {
        let degree = perms.first().map_or(0, Vec::len);
        for p in perms {
            if p.len() != degree {
                return Err(Error::DegreeMismatch(degree, p.len()));
            }
        }
        let identity: Perm = (0..degree as u32).collect();
        let mut index: HashMap<Perm, u32> = HashMap::new();
        index.insert(identity.clone(), 0);
        let mut elements = vec![identity];
        let k = perms.len();
        let mut right = Vec::new();
        let mut head = 0;
        while head < elements.len() {
            for p in perms {
                let prod = compose(&elements[head], p);
                let next = index.len() as u32;
                let id = *index.entry(prod.clone()).or_insert(next);
                if id == next {
                    if elements.len() >= MAX_GROUP_ORDER {
                        return Err(Error::GroupTooLarge(MAX_GROUP_ORDER));
                    }
                    elements.push(prod);
                }
                right.push(id);
            }
            head += 1;
        }
        let generators = perms.iter().map(|p| index[p] as usize).collect();
        let group = Self::from_cayley_graph(elements.len(), k, &right, generators);
        Ok((group, elements))
    }

    /// Builds the full table from right multiplication by generators, where
    /// elements are numbered in breadth-first order from the identity.
    fn from_cayley_graph(n: usize, k: usize, right: &[u32], generators: Vec<usize>) -> FiniteGroup {
        // BFS parent of each element: b = parent * gen
        let mut parent = vec![(0u32, 0u32); n];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut order = vec![0usize];
        let mut head = 0;
        while head < order.len() {
            let a = order[head];
            head += 1;
            for s in 0..k {
                let b = right[a * k + s] as usize;
                if !seen[b] {
                    seen[b] = true;
                    parent[b] = (a as u32, s as u32);
                    order.push(b);
                }
            }
        }
        let rows = par::map(n, |a| {
            let mut row = vec![0u32; n];
            row[0] = a as u32;
            for &b in &order[1..] {
                let (pb, s) = parent[b];
                row[b] = right[row[pb as usize] as usize * k + s as usize];
            }
            row
        });
        let table: Vec<u32> = rows.into_iter().flatten().collect();
        let mut inverses = vec![0u32; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] == 0 {
                    inverses[a] = b as u32;
                    break;
                }
            }
        }
        FiniteGroup { order: n, table, inverses, generators }
    }

    /// Validates a multiplication table (identity `0`, associativity,
    /// inverses) and picks a generating set greedily.
    pub fn from_table(order: usize, table: Vec<u32>) -> Result<FiniteGroup> {
        if order == 0 || table.len() != order * order {
            return Err(Error::InvalidTable("table size does not match order".into()));
        }
        if table.iter().any(|&v| v as usize >= order) {
            return Err(Error::InvalidTable("entry out of range".into()));
        }
        let m = |a: usize, b: usize| table[a * order + b] as usize;
        if (0..order).any(|a| m(0, a) != a || m(a, 0) != a) {
            return Err(Error::InvalidTable("element 0 is not the identity".into()));
        }
        let assoc = par::all(order, |a| {
            (0..order).all(|b| (0..order).all(|c| m(m(a, b), c) == m(a, m(b, c))))
        });
        if !assoc {
            return Err(Error::InvalidTable("not associative".into()));
        }
        let inverses = (0..order)
            .map(|a| match (0..order).find(|&b| m(a, b) == 0) {
                Some(b) => Ok(b as u32),
                None => Err(Error::InvalidTable(format!("element {a} has no inverse"))),
            })
            .collect::<Result<Vec<u32>>>()?;
        let mut g = FiniteGroup { order, table, inverses, generators: Vec::new() };
        let mut generated = g.subgroup_generated(&[]);
        for a in 0..order {
            if !generated.contains(a) {
                g.generators.push(a);
                generated = g.subgroup_generated(&g.generators.clone());
            }
        }
        Ok(g)
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup { order: 1, table: vec![0], inverses: vec![0], generators: Vec::new() }
    }

    /// `Z/n` with element `i` the residue `i` and generator `1`.
    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n >= 1);
        let table = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
        let inverses = (0..n).map(|a| ((n - a) % n) as u32).collect();
        let generators = if n > 1 { vec![1] } else { Vec::new() };
        FiniteGroup { order: n, table, inverses, generators }
    }

    /// `a x b` with element `(i, j)` numbered `i * |b| + j`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
        let (na, nb) = (a.order, b.order);
        let n = na * nb;
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                let (xi, xj) = (x / nb, x % nb);
                let (yi, yj) = (y / nb, y % nb);
                table[x * n + y] = (a.mul(xi, yi) * nb + b.mul(xj, yj)) as u32;
            }
        }
        let inverses = (0..n).map(|x| (a.inv(x / nb) * nb + b.inv(x % nb)) as u32).collect();
        let mut generators: Vec<usize> = a.generators.iter().map(|&g| g * nb).collect();
        generators.extend(b.generators.iter().copied());
        FiniteGroup { order: n, table, inverses, generators }
    }

    /// Enumerates `p` over the trivial subgroup; generator `i` of the result
    /// is the image of presentation generator `i`.
    pub fn from_presentation(p: &Presentation, limits: Limits) -> Result<FiniteGroup> {
        let t = todd_coxeter(p, &[], limits)?;
        FiniteGroup::from_permutations(&t.permutation_images())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = 0;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    /// `[a, b] = a b a^-1 b^-1`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    /// `g h g^-1`.
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter().all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_central(&self, a: usize) -> bool {
        self.generators.iter().all(|&g| self.mul(a, g) == self.mul(g, a))
    }

    /// Evaluates a word whose letters index `images`.
    pub fn eval(&self, w: &Word, images: &[usize]) -> usize {
        w.letters().iter().fold(0, |acc, l| {
            let x = images[l.generator()];
            self.mul(acc, if l.is_inverse() { self.inv(x) } else { x })
        })
    }

    /// A word in the generators for every element (breadth-first, so
    /// shortest).
    pub fn element_words(&self) -> Vec<Word> {
        let mut words: Vec<Option<Word>> = vec![None; self.order];
        words[0] = Some(Word::empty());
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let a = queue[head];
            head += 1;
            for (i, &g) in self.generators.iter().enumerate() {
                for (inverse, x) in [(false, g), (true, self.inv(g))] {
                    let b = self.mul(a, x);
                    if words[b].is_none() {
                        let mut letters = words[a].as_ref().unwrap().letters().to_vec();
                        letters.push(Letter::new(i, inverse));
                        words[b] = Some(Word::from_letters(letters));
                        queue.push(b);
                    }
                }
            }
        }
        words.into_iter().map(|w| w.expect("generators generate the group")).collect()
    }

    /// A presentation on this group's generators read off the Cayley graph:
    /// one relator `w(a) s w(a s)^-1` per element and generator.
    pub fn presentation(&self) -> Presentation {
        let k = self.generators.len();
        let names: Vec<String> = if k == 0 {
            vec!["g0".to_string()]
        } else {
            (0..k).map(|i| format!("g{i}")).collect()
        };
        let words = self.element_words();
        let mut relators = Vec::new();
        if k == 0 {
            relators.push(Word::generator(0));
        }
        let mut seen = std::collections::HashSet::new();
        for a in 0..self.order {
            for (i, &g) in self.generators.iter().enumerate() {
                let r = words[a]
                    .concat(&Word::generator(i))
                    .concat(&words[self.mul(a, g)].inverse())
                    .free_reduce();
                let (core, _) = r.cyclic_reduce();
                if !core.is_empty() && seen.insert(core.clone()) {
                    relators.push(core);
                }
            }
        }
        Presentation::new(names, relators).expect("well-formed Cayley presentation")
    }

    pub fn subgroup_from_sorted(&self, elements: Vec<usize>) -> Subgroup {
        Subgroup { parent_order: self.order, elements }
    }

    pub fn whole(&self) -> Subgroup {
        self.subgroup_from_sorted((0..self.order).collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.subgroup_from_sorted(vec![0])
    }

    pub fn subgroup_generated(&self, elems: &[usize]) -> Subgroup {
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut list = vec![0usize];
        let mut head = 0;
        while head < list.len() {
            let a = list[head];
            head += 1;
            for &g in elems {
                let b = self.mul(a, g);
                if !member[b] {
                    member[b] = true;
                    list.push(b);
                }
            }
        }
        list.sort_unstable();
        self.subgroup_from_sorted(list)
    }

    pub fn is_normal(&self, s: &Subgroup) -> bool {
        s.elements
            .iter()
            .all(|&h| self.generators.iter().all(|&g| s.contains(self.conjugate(g, h))))
    }

    /// Smallest normal subgroup containing `elems`.
    pub fn normal_closure(&self, elems: &[usize]) -> Subgroup {
        let mut gens: Vec<usize> = elems.to_vec();
        loop {
            let s = self.subgroup_generated(&gens);
            let missing = s.elements.iter().find_map(|&h| {
                self.generators
                    .iter()
                    .map(|&g| self.conjugate(g, h))
                    .find(|c| !s.contains(*c))
            });
            match missing {
                Some(c) => gens.push(c),
                None => return s,
            }
        }
    }

    pub fn center(&self) -> Subgroup {
        let elements = (0..self.order).filter(|&a| self.is_central(a)).collect();
        self.subgroup_from_sorted(elements)
    }

    /// `[A, B]`, generated by all commutators `[a, b]`.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut comms: Vec<usize> = a
            .elements
            .iter()
            .flat_map(|&x| b.elements.iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.commutator(x, y))
            .collect();
        comms.sort_unstable();
        comms.dedup();
        self.subgroup_generated(&comms)
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let gens: Vec<usize> = self
            .generators
            .iter()
            .flat_map(|&a| self.generators.iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .collect();
        self.normal_closure(&gens)
    }

    /// The subgroup as a group in its own right; element `i` of the result
    /// is `s.elements()[i]`.
    pub fn subgroup_as_group(&self, s: &Subgroup) -> FiniteGroup {
        let pos: HashMap<usize, u32> =
            s.elements.iter().enumerate().map(|(i, &e)| (e, i as u32)).collect();
        let n = s.order();
        let mut table = vec![0u32; n * n];
        for (i, &a) in s.elements.iter().enumerate() {
            for (j, &b) in s.elements.iter().enumerate() {
                table[i * n + j] = pos[&self.mul(a, b)];
            }
        }
        let inverses = s.elements.iter().map(|&a| pos[&self.inv(a)]).collect();
        let mut g = FiniteGroup { order: n, table, inverses, generators: Vec::new() };
        let mut generated = g.subgroup_generated(&[]);
        for a in 0..n {
            if !generated.contains(a) {
                g.generators.push(a);
                generated = g.subgroup_generated(&g.generators.clone());
            }
        }
        g
    }

    /// `G / N` with the projection `G -> G/N` as an element map. Coset of
    /// the identity is element `0`; cosets are numbered by least member.
    pub fn quotient(&self, normal: &Subgroup) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_normal(normal) {
            return Err(Error::NotNormal);
        }
        let mut proj = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for a in 0..self.order {
            if proj[a] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(a);
            for &h in &normal.elements {
                proj[self.mul(a, h)] = id;
            }
        }
        let m = reps.len();
        let mut table = vec![0u32; m * m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * m + j] = proj[self.mul(a, b)] as u32;
            }
        }
        let inverses = reps.iter().map(|&a| proj[self.inv(a)] as u32).collect();
        let mut generators: Vec<usize> = Vec::new();
        for &g in &self.generators {
            let q = proj[g];
            if q != 0 && !generators.contains(&q) {
                generators.push(q);
            }
        }
        Ok((FiniteGroup { order: m, table, inverses, generators }, proj))
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for a in 0..self.order {
            if seen[a] {
                continue;
            }
            let mut class: Vec<usize> = (0..self.order).map(|g| self.conjugate(g, a)).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                seen[c] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Invariant factors of an abelian group, from the number of solutions
    /// of `x^(p^k) = 1` for each prime `p`.
    pub fn abelian_invariants(&self) -> AbelianInvariants {
        assert!(self.is_abelian(), "abelian_invariants on a non-abelian group");
        let orders: Vec<u64> = (0..self.order).map(|a| self.element_order(a)).collect();
        let mut prime_powers = Vec::new();
        let mut n = self.order as u64;
        let mut p = 2;
        while n > 1 {
            if !n.is_multiple_of(p) {
                p += 1;
                continue;
            }
            while n.is_multiple_of(p) {
                n /= p;
            }
            // counts[k] = #{x : x^(p^k) = 1}
            let mut counts = vec![1u64];
            let mut pk = 1u64;
            loop {
                pk *= p;
                let c = orders.iter().filter(|&&o| pk.is_multiple_of(o) && is_power_of(o, p)).count() as u64;
                if c == *counts.last().unwrap() {
                    break;
                }
                counts.push(c);
            }
            // number of cyclic factors of exponent >= k is log_p(counts[k]/counts[k-1])
            let ge: Vec<u32> = counts.windows(2).map(|w| ilog(w[1] / w[0], p)).collect();
            for k in 0..ge.len() {
                let exactly = ge[k] - ge.get(k + 1).copied().unwrap_or(0);
                for _ in 0..exactly {
                    prime_powers.push(p.pow(k as u32 + 1));
                }
            }
        }
        AbelianInvariants::from_cyclic_factors(&prime_powers)
    }

    pub fn abelianization(&self) -> AbelianInvariants {
        let (q, _) = self.quotient(&self.derived_subgroup()).expect("derived subgroup is normal");
        q.abelian_invariants()
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let orders = par::map(self.order, |a| self.element_order(a));
        let mut histogram = BTreeMap::new();
        for &o in &orders {
            *histogram.entry(o).or_insert(0usize) += 1;
        }
        let exponent = orders.iter().fold(1u64, |acc, &o| acc.lcm(&o));

        let mut derived_series = vec![self.order];
        let mut current = self.whole();
        loop {
            let next = self.commutator_subgroup(&current, &current);
            if next.order() == current.order() {
                break;
            }
            derived_series.push(next.order());
            current = next;
        }

        let whole = self.whole();
        let mut lower = whole.clone();
        let mut class = 0;
        let nilpotency_class = loop {
            if lower.is_trivial() {
                break Some(class);
            }
            let next = self.commutator_subgroup(&lower, &whole);
            if next.order() == lower.order() {
                break None;
            }
            lower = next;
            class += 1;
        };

        Fingerprint {
            order: self.order,
            abelianization: self.abelianization().torsion_u64(),
            derived_series,
            center_order: self.center().order(),
            nilpotency_class,
            exponent,
            order_histogram: histogram,
        }
    }
}

fn is_power_of(mut x: u64, p: u64) -> bool {
    while x.is_multiple_of(p) {
        x /= p;
    }
    x == 1
}

fn ilog(mut x: u64, p: u64) -> u32 {
    let mut k = 0;
    while x > 1 {
        x /= p;
        k += 1;
    }
    k
}

/// Isomorphism-invariant summary of a finite group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    /// invariant factors of `G/G'` (the group is finite, so no free part)
    pub abelianization: Vec<u64>,
    /// orders of `G, G', G'', ...` until the series stabilizes
    pub derived_series: Vec<usize>,
    pub center_order: usize,
    /// `None` when the group is not nilpotent
    pub nilpotency_class: Option<usize>,
    pub exponent: u64,
    pub order_histogram: BTreeMap<u64, usize>,
}

impl Fingerprint {
    pub fn is_abelian(&self) -> bool {
        self.nilpotency_class.is_some_and(|c| c <= 1)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_class.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomSource {
    Presented(Presentation),
    Finite(FiniteGroup),
}

/// A homomorphism given by generator images, verified at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hom {
    source: HomSource,
    target: FiniteGroup,
    images: Vec<usize>,
    /// full element map, for finite sources
    map: Option<Vec<usize>>,
}

impl Hom {
    /// Every relator of `src` must evaluate to the identity.
    pub fn from_presentation(src: &Presentation, target: &FiniteGroup, images: &[usize]) -> Result<Hom> {
        if images.len() != src.generator_count() {
            return Err(Error::ImageCount { expected: src.generator_count(), got: images.len() });
        }
        if let Some(&bad) = images.iter().find(|&&x| x >= target.order()) {
            return Err(Error::InvalidGenerator { index: bad, count: target.order() });
        }
        for (index, r) in src.relators().iter().enumerate() {
            if target.eval(r, images) != 0 {
                return Err(Error::RelatorViolation {
                    index,
                    relator: src.display_word(r).to_string(),
                });
            }
        }
        Ok(Hom {
            source: HomSource::Presented(src.clone()),
            target: target.clone(),
            images: images.to_vec(),
            map: None,
        })
    }

    /// Extends `images` of `src`'s generators along a spanning tree and
    /// checks `phi(a s) = phi(a) phi(s)` for every element `a` and generator `s`.
    pub fn from_finite(src: &FiniteGroup, target: &FiniteGroup, images: &[usize]) -> Result<Hom> {
        if images.len() != src.generators().len() {
            return Err(Error::ImageCount { expected: src.generators().len(), got: images.len() });
        }
        let words = src.element_words();
        let map: Vec<usize> = words.iter().map(|w| target.eval(w, images)).collect();
        let gens = src.generators();
        let bad = par::find_first(src.order(), |a| {
            gens.iter()
                .enumerate()
                .find(|&(i, &s)| map[src.mul(a, s)] != target.mul(map[a], images[i]))
                .map(|(i, _)| (a, i))
        });
        if let Some((a, i)) = bad {
            return Err(Error::RelatorViolation {
                index: a * gens.len() + i,
                relator: format!("element {a} times generator {i}"),
            });
        }
        Ok(Hom {
            source: HomSource::Finite(src.clone()),
            target: target.clone(),
            images: images.to_vec(),
            map: Some(map),
        })
    }

    /// Builds from a full element map, verifying the homomorphism property on
    /// generators.
    pub fn from_element_map(src: &FiniteGroup, target: &FiniteGroup, map: Vec<usize>) -> Result<Hom> {
        let images: Vec<usize> = src.generators().iter().map(|&g| map[g]).collect();
        let hom = Hom::from_finite(src, target, &images)?;
        if hom.map.as_ref() != Some(&map) {
            return Err(Error::RelatorViolation {
                index: 0,
                relator: "element map disagrees with generator extension".into(),
            });
        }
        Ok(hom)
    }

    pub fn source(&self) -> &HomSource {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Element map for finite sources.
    pub fn element_map(&self) -> Option<&[usize]> {
        self.map.as_deref()
    }

    pub fn apply(&self, a: usize) -> Result<usize> {
        self.map.as_ref().map(|m| m[a]).ok_or(Error::InfiniteSource)
    }

    pub fn apply_word(&self, w: &Word) -> usize {
        self.target.eval(w, &self.images)
    }

    pub fn image(&self) -> Subgroup {
        self.target.subgroup_generated(&self.images)
    }

    pub fn kernel(&self) -> Result<Subgroup> {
        match (&self.source, &self.map) {
            (HomSource::Finite(src), Some(map)) => {
                let elements = (0..src.order()).filter(|&a| map[a] == 0).collect();
                Ok(src.subgroup_from_sorted(elements))
            }
            _ => Err(Error::InfiniteSource),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Quaternion group from `<i, j | i^4, i^2 j^-2, j^-1 i j i>`.
    fn q8() -> FiniteGroup {
        let p = Presentation::parse("< i, j | i^4, i^2 j^-2, j^-1 i j i >").unwrap();
        FiniteGroup::from_presentation(&p, Limits::default()).unwrap()
    }

    fn s3() -> FiniteGroup {
        FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![0, 2, 1]]).unwrap()
    }

    #[test]
    fn permutation_closure() {
        let c3 = FiniteGroup::from_permutations(&[vec![1, 2, 0]]).unwrap();
        assert_eq!(c3.order(), 3);
        assert_eq!(FiniteGroup::from_permutations(&[]).unwrap().order(), 1);
        assert_eq!(s3().order(), 6);
        assert!(matches!(
            FiniteGroup::from_permutations(&[vec![0, 1], vec![0, 1, 2]]),
            Err(Error::DegreeMismatch(2, 3))
        ));
    }

    #[test]
    fn table_laws() {
        let g = s3();
        let t = FiniteGroup::from_table(g.order(), g.table.clone()).unwrap();
        assert_eq!(t.order(), 6);
        assert!(FiniteGroup::from_table(2, vec![0, 1, 1, 1]).is_err());
    }

    #[test]
    fn cyclic_fingerprint() {
        let f = FiniteGroup::cyclic(6).fingerprint();
        assert_eq!(f.order, 6);
        assert!(f.is_abelian());
        assert_eq!(f.nilpotency_class, Some(1));
        assert_eq!(f.order_histogram, BTreeMap::from([(1, 1), (2, 1), (3, 2), (6, 2)]));
        assert_eq!(f.abelianization, vec![6]);
    }

    #[test]
    fn quaternion_structure() {
        let q = q8();
        assert_eq!(q.order(), 8);
        assert_eq!(q.center().order(), 2);
        assert_eq!(q.derived_subgroup().order(), 2);
        let f = q.fingerprint();
        assert_eq!(f.order_histogram, BTreeMap::from([(1, 1), (2, 1), (4, 6)]));
        assert_eq!(f.abelianization, vec![2, 2]);
        assert_eq!(f.nilpotency_class, Some(2));
    }

    #[test]
    fn class_equation() {
        for g in [q8(), s3(), FiniteGroup::cyclic(5)] {
            let classes = g.conjugacy_classes();
            assert_eq!(classes.iter().map(Vec::len).sum::<usize>(), g.order());
            let singletons = classes.iter().filter(|c| c.len() == 1).count();
            assert_eq!(singletons, g.center().order());
        }
    }

    #[test]
    fn homomorphisms_from_presentations() {
        let g1 = Presentation::parse("< x, y | x y x = y x y >").unwrap();
        let s3 = FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![0, 2, 1]]).unwrap();
        let gens = s3.generators().to_vec();
        let h = Hom::from_presentation(&g1, &s3, &gens).unwrap();
        assert_eq!(h.image().order(), 6);
        assert_eq!(h.kernel(), Err(Error::InfiniteSource));

        let g2 = Presentation::parse("< x, a | x^-1 a x = a^-1, a^3 = 1 >").unwrap();
        let c3 = FiniteGroup::from_permutations(&[vec![1, 2, 0]]).unwrap();
        let err = Hom::from_presentation(&g2, &c3, &[0, c3.generators()[0]]).unwrap_err();
        assert!(matches!(err, Error::RelatorViolation { index: 0, .. }));

        let trivial = FiniteGroup::trivial();
        assert!(Hom::from_presentation(&g2, &trivial, &[0, 0]).is_ok());
    }

    #[test]
    fn kernel_of_abelianization_map() {
        let h = Presentation::parse("< x, y | x y x = y x y, y = x^-3 y x^3, x^3 >").unwrap();
        let g = FiniteGroup::from_presentation(&h, Limits::default()).unwrap();
        let (q, proj) = g.quotient(&g.derived_subgroup()).unwrap();
        assert_eq!(q.order(), 3);
        let hom = Hom::from_element_map(&g, &q, proj).unwrap();
        assert_eq!(hom.kernel().unwrap().order(), 8);
        assert_eq!(hom.image().order() * hom.kernel().unwrap().order(), g.order());
    }

    #[test]
    fn direct_products() {
        let z3q8 = FiniteGroup::direct_product(&FiniteGroup::cyclic(3), &q8());
        let f = z3q8.fingerprint();
        assert_eq!(f.order, 24);
        assert_eq!(f.abelianization, vec![2, 6]);
        assert_eq!(f.center_order, 6);
        assert_eq!(f.nilpotency_class, Some(2));
        assert_eq!(f.exponent, 12);
        assert_eq!(
            f.order_histogram,
            BTreeMap::from([(1, 1), (2, 1), (3, 2), (4, 6), (6, 2), (12, 12)])
        );
    }

    #[test]
    fn cayley_presentation_recovers_group() {
        for g in [q8(), s3(), FiniteGroup::cyclic(4)] {
            let p = g.presentation();
            let back = FiniteGroup::from_presentation(&p, Limits::default()).unwrap();
            assert_eq!(back.fingerprint(), g.fingerprint());
        }
    }

    #[test]
    fn abelian_invariants_by_counting() {
        let g = FiniteGroup::direct_product(&FiniteGroup::cyclic(4), &FiniteGroup::cyclic(6));
        assert_eq!(g.abelian_invariants().torsion_u64(), vec![2, 12]);
        assert_eq!(FiniteGroup::cyclic(1).abelian_invariants(), AbelianInvariants::trivial());
        let z2_3 = FiniteGroup::direct_product(
            &FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)),
            &FiniteGroup::cyclic(8),
        );
        assert_eq!(z2_3.abelian_invariants().torsion_u64(), vec![2, 2, 8]);
    }
}
