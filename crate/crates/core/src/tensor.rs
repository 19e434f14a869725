//! Non-abelian tensor and exterior squares of finite groups.
//!
//! `G ⊗ G` is presented on one generator `t(g,h)` per ordered pair subject to
//!
//! ```text
//! t(gh, k) = t(ᵍh, ᵍk) t(g, k)
//! t(g, hk) = t(g, h) t(ʰg, ʰk)
//! ```
//!
//! for all `g, h, k`, where `ᵍh = g h g⁻¹`. The exterior square adds
//! `t(g, g) = 1` for every `g`. Both are enumerated over the trivial subgroup.

use std::ops::Deref;

use crate::abelian::AbelianInvariants;
use crate::enumerate::{todd_coxeter, Limits};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Hom, Subgroup};
use crate::par;
use crate::presentation::Presentation;
use crate::word::{Letter, Word};

/// Largest source order accepted by the constructions; covers Z6 x Z6.
pub const MAX_SOURCE_ORDER: usize = 36;

/// A group generated by the values of a crossed pairing `G x G -> carrier`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pairing {
    source: FiniteGroup,
    carrier: FiniteGroup,
    pairs: Vec<usize>,
}

impl Pairing {
    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn carrier(&self) -> &FiniteGroup {
        &self.carrier
    }

    /// Carrier element realizing `g ⊗ h` (or `g ∧ h`).
    pub fn pair(&self, g: usize, h: usize) -> usize {
        self.pairs[g * self.source.order() + h]
    }

    /// Checks both defining relation families for every triple of source
    /// elements.
    pub fn verify_relations(&self) -> Result<()> {
        let (s, c) = (&self.source, &self.carrier);
        let n = s.order();
        let bad = par::find_first(n, |g| {
            for h in 0..n {
                for k in 0..n {
                    let lhs = self.pair(s.mul(g, h), k);
                    let rhs = c.mul(self.pair(s.conjugate(g, h), s.conjugate(g, k)), self.pair(g, k));
                    if lhs != rhs {
                        return Some(format!("left relation fails at ({g}, {h}, {k})"));
                    }
                    let lhs = self.pair(g, s.mul(h, k));
                    let rhs = c.mul(self.pair(g, h), self.pair(s.conjugate(h, g), s.conjugate(h, k)));
                    if lhs != rhs {
                        return Some(format!("right relation fails at ({g}, {h}, {k})"));
                    }
                }
            }
            None
        });
        match bad {
            Some(msg) => Err(Error::ConstructionCheck(msg)),
            None => Ok(()),
        }
    }

    /// Subgroup generated by the diagonal values `g ⊗ g`.
    pub fn diagonal_subgroup(&self) -> Subgroup {
        let n = self.source.order();
        let diag: Vec<usize> = (0..n).map(|g| self.pair(g, g)).collect();
        self.carrier.subgroup_generated(&diag)
    }

    /// The map `g ⊗ h ↦ [g, h]` onto the derived subgroup of the source.
    pub fn commutator_hom(&self) -> Result<Hom> {
        let n = self.source.order();
        let images: Vec<usize> = (0..n * n)
            .map(|i| self.source.commutator(i / n, i % n))
            .collect();
        Hom::from_finite(&self.carrier, &self.source, &images)
    }

    fn central_kernel(&self) -> Result<Subgroup> {
        let k = self.commutator_hom()?.kernel()?;
        ensure_central(&self.carrier, &k, "commutator kernel")?;
        Ok(k)
    }
}

fn ensure_central(g: &FiniteGroup, s: &Subgroup, what: &str) -> Result<()> {
    match s.elements().iter().find(|&&a| !g.is_central(a)) {
        Some(a) => Err(Error::ConstructionCheck(format!("{what} contains non-central element {a}"))),
        None => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorSquare(Pairing);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExteriorSquare(Pairing);

impl Deref for TensorSquare {
    type Target = Pairing;
    fn deref(&self) -> &Pairing {
        &self.0
    }
}

impl Deref for ExteriorSquare {
    type Target = Pairing;
    fn deref(&self) -> &Pairing {
        &self.0
    }
}

/// Presentation of `G ⊗ G` (and of `G ∧ G` when `exterior`) on generators
/// `t{g}_{h}`, generator index `g * |G| + h`.
pub fn pairing_presentation(g: &FiniteGroup, exterior: bool) -> Presentation {
    let n = g.order();
    let t = |a: usize, b: usize| Letter::gen(a * n + b);
    let inv = |a: usize, b: usize| Letter::inv(a * n + b);
    let mut relators = Vec::with_capacity(2 * n * n * n + n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                relators.push(Word::from_letters(vec![
                    t(g.mul(a, b), c),
                    inv(a, c),
                    inv(g.conjugate(a, b), g.conjugate(a, c)),
                ]));
                relators.push(Word::from_letters(vec![
                    t(a, g.mul(b, c)),
                    inv(g.conjugate(b, a), g.conjugate(b, c)),
                    inv(a, b),
                ]));
            }
        }
    }
    if exterior {
        relators.extend((0..n).map(|a| Word::from_letters(vec![t(a, a)])));
    }
    let names = (0..n * n).map(|i| format!("t{}_{}", i / n, i % n)).collect();
    Presentation::new(names, relators).expect("pairing presentation is well formed")
}

fn build(g: &FiniteGroup, exterior: bool, limits: Limits) -> Result<Pairing> {
    if g.order() > MAX_SOURCE_ORDER {
        return Err(Error::SourceTooLarge { order: g.order(), budget: MAX_SOURCE_ORDER });
    }
    let p = pairing_presentation(g, exterior);
    let table = todd_coxeter(&p, &[], limits)?;
    let (carrier, _) = FiniteGroup::from_permutations_with_elements(&table.permutation_images())?;
    let pairs = carrier.generators().to_vec();
    let pairing = Pairing { source: g.clone(), carrier, pairs };
    pairing.verify_relations()?;
    Ok(pairing)
}

pub fn tensor_square(g: &FiniteGroup, limits: Limits) -> Result<TensorSquare> {
    build(g, false, limits).map(TensorSquare)
}

pub fn exterior_square(g: &FiniteGroup, limits: Limits) -> Result<ExteriorSquare> {
    let e = build(g, true, limits)?;
    if let Some(a) = (0..g.order()).find(|&a| e.pair(a, a) != 0) {
        return Err(Error::ConstructionCheck(format!("diagonal value at {a} is not trivial")));
    }
    Ok(ExteriorSquare(e))
}

/// `∇(G)`, generated by the diagonal `g ⊗ g`; checked central.
pub fn nabla(t: &TensorSquare) -> Result<Subgroup> {
    let s = t.diagonal_subgroup();
    ensure_central(t.carrier(), &s, "diagonal subgroup")?;
    Ok(s)
}

/// `J(G)`, the kernel of `g ⊗ h ↦ [g, h]`; checked central.
pub fn j_subgroup(t: &TensorSquare) -> Result<Subgroup> {
    t.central_kernel()
}

/// Kernel of `g ∧ h ↦ [g, h]`, as an abelian group.
pub fn schur_multiplier(g: &FiniteGroup, limits: Limits) -> Result<AbelianInvariants> {
    let e = exterior_square(g, limits)?;
    multiplier_of(&e)
}

pub fn multiplier_of(e: &ExteriorSquare) -> Result<AbelianInvariants> {
    let k = e.central_kernel()?;
    let kg = e.carrier().subgroup_as_group(&k);
    if !kg.is_abelian() {
        return Err(Error::ConstructionCheck("multiplier kernel is not abelian".into()));
    }
    Ok(kg.abelian_invariants())
}

/// `(a ⊗ g)^n = 1` where `n` is the order of the central element `a`.
pub fn central_torsion_power_check(t: &TensorSquare, a: usize, g: usize) -> Result<bool> {
    let s = t.source();
    if !s.is_central(a) {
        return Err(Error::NotCentral(a));
    }
    let n = s.element_order(a) as i64;
    Ok(t.carrier().pow(t.pair(a, g), n) == 0)
}

/// A central extension `1 -> A -> K -> G -> 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionData {
    total: FiniteGroup,
    kernel: Subgroup,
    projection: Hom,
}

impl ExtensionData {
    /// `projection` must have finite source `total`, be surjective, and
    /// have kernel exactly the central subgroup `kernel`.
    pub fn new(total: FiniteGroup, kernel: Subgroup, projection: Hom) -> Result<Self> {
        let bad = |m: &str| Err(Error::IncompatibleExtension(m.to_string()));
        if kernel.parent_order() != total.order() {
            return bad("kernel is not a subgroup of the total group");
        }
        if kernel.elements().iter().any(|&a| !total.is_central(a)) {
            return bad("kernel is not central");
        }
        match projection.source() {
            crate::group::HomSource::Finite(src) if *src == total => {}
            _ => return bad("projection source differs from the total group"),
        }
        if !projection.image().is_whole() {
            return bad("projection is not surjective");
        }
        if projection.kernel()? != kernel {
            return bad("projection kernel differs from the central subgroup");
        }
        Ok(ExtensionData { total, kernel, projection })
    }

    pub fn total(&self) -> &FiniteGroup {
        &self.total
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn projection(&self) -> &Hom {
        &self.projection
    }

    pub fn quotient(&self) -> &FiniteGroup {
        self.projection.target()
    }

    /// One preimage per quotient element: the first in element order, or the
    /// last.
    pub fn section(&self, last: bool) -> Vec<usize> {
        let map = self.projection.element_map().expect("finite source");
        let mut s = vec![usize::MAX; self.quotient().order()];
        for (k, &g) in map.iter().enumerate() {
            if last || s[g] == usize::MAX {
                s[g] = k;
            }
        }
        s
    }
}

fn xi_with_section(ext: &ExtensionData, t: &TensorSquare, section: &[usize]) -> Result<Hom> {
    let n = t.source().order();
    let k = ext.total();
    let images: Vec<usize> = (0..n * n)
        .map(|i| k.commutator(section[i / n], section[i % n]))
        .collect();
    Hom::from_finite(t.carrier(), k, &images)
}

/// `ξ: G ⊗ G -> K`, `g ⊗ h ↦ [k₁, k₂]` for lifts `kᵢ`. Built from two
/// different sections, which must agree, and checked against the
/// commutator map of `G` after projecting.
pub fn xi_hom(ext: &ExtensionData, t: &TensorSquare) -> Result<Hom> {
    if ext.quotient() != t.source() {
        return Err(Error::IncompatibleExtension(
            "extension quotient is not the tensor square's source".into(),
        ));
    }
    let first = xi_with_section(ext, t, &ext.section(false))?;
    let second = xi_with_section(ext, t, &ext.section(true))?;
    let n = t.source().order();
    if let Some(i) = (0..n * n).find(|&i| first.images()[i] != second.images()[i]) {
        return Err(Error::LiftDependence(i / n, i % n));
    }
    let kappa = t.commutator_hom()?;
    let pi = ext.projection().element_map().expect("finite source");
    let xi = first.element_map().expect("finite source");
    let kappa_map = kappa.element_map().expect("finite source");
    if let Some(c) = (0..t.carrier().order()).find(|&c| pi[xi[c]] != kappa_map[c]) {
        return Err(Error::ConstructionCheck(format!(
            "projection of xi disagrees with the commutator map at carrier element {c}"
        )));
    }
    Ok(first)
}
