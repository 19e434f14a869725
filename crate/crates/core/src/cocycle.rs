//! Circular orders on finite groups as `{0,1}`-valued 2-cocycles, the
//! central extensions by `Z` they define, and the passage to homogeneous
//! 3-cochains.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::par;

/// Inhomogeneous cocycle `f: G x G -> {0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleTable {
    group: FiniteGroup,
    values: Vec<u8>,
}

/// First failure found by [`validate_inhomogeneous`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `f(id, g)` or `f(g, id)` is nonzero
    Normalization { g: usize, h: usize },
    /// `f(g, g^-1) != 1` for `g != id`
    InversePair { g: usize },
    /// `f(g,h) + f(gh,k) != f(h,k) + f(g,hk)`
    CocycleIdentity { g: usize, h: usize, k: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Normalization { g, h } => write!(f, "f({g}, {h}) is nonzero on the identity"),
            Violation::InversePair { g } => write!(f, "f({g}, {g}^-1) = 0"),
            Violation::CocycleIdentity { g, h, k } => {
                write!(f, "cocycle identity fails at ({g}, {h}, {k})")
            }
        }
    }
}

impl CocycleTable {
    /// `values[g * n + h] = f(g, h)`; entries must be 0 or 1.
    pub fn new(group: FiniteGroup, values: Vec<u8>) -> Result<Self> {
        let n = group.order();
        if values.len() != n * n {
            return Err(Error::InvalidCocycle(format!(
                "expected {} values, got {}",
                n * n,
                values.len()
            )));
        }
        if values.iter().any(|&v| v > 1) {
            return Err(Error::InvalidCocycle("values must be 0 or 1".into()));
        }
        Ok(CocycleTable { group, values })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn get(&self, g: usize, h: usize) -> u8 {
        self.values[g * self.group.order() + h]
    }

    pub fn set(&mut self, g: usize, h: usize, v: bool) {
        let n = self.group.order();
        self.values[g * n + h] = v as u8;
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }
}

/// Checks normalization, the cocycle identity over all triples, and
/// `f(g, g^-1) = 1`, in that order. Reports the first failure.
pub fn validate_inhomogeneous(f: &CocycleTable) -> std::result::Result<(), Violation> {
    let g = &f.group;
    let n = g.order();
    for a in 0..n {
        if f.get(0, a) != 0 {
            return Err(Violation::Normalization { g: 0, h: a });
        }
        if f.get(a, 0) != 0 {
            return Err(Violation::Normalization { g: a, h: 0 });
        }
    }
    let bad = par::find_first(n, |a| {
        for b in 0..n {
            for c in 0..n {
                let lhs = f.get(a, b) + f.get(g.mul(a, b), c);
                let rhs = f.get(b, c) + f.get(a, g.mul(b, c));
                if lhs != rhs {
                    return Some(Violation::CocycleIdentity { g: a, h: b, k: c });
                }
            }
        }
        None
    });
    if let Some(v) = bad {
        return Err(v);
    }
    match (1..n).find(|&a| f.get(a, g.inv(a)) != 1) {
        Some(a) => Err(Violation::InversePair { g: a }),
        None => Ok(()),
    }
}

/// On `Z/n` with representatives `0..n`: `f(i, j) = 1` iff `i + j >= n`.
pub fn carry_cocycle(n: usize) -> CocycleTable {
    assert!(n >= 1);
    let values = (0..n * n).map(|i| u8::from(i / n + i % n >= n)).collect();
    CocycleTable { group: FiniteGroup::cyclic(n), values }
}

/// Element `(m, g)` of the extension `1 -> Z -> G_f -> G -> 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ExtElement {
    pub m: i64,
    pub g: usize,
}

impl ExtElement {
    pub fn new(m: i64, g: usize) -> Self {
        ExtElement { m, g }
    }
}

/// `G_f` with product `(m,g)(m',g') = (m + m' + f(g,g'), gg')`. Elements
/// are produced on demand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionGroup {
    f: CocycleTable,
}

impl ExtensionGroup {
    pub fn new(f: CocycleTable) -> Result<Self> {
        validate_inhomogeneous(&f).map_err(|v| Error::InvalidCocycle(v.to_string()))?;
        Ok(ExtensionGroup { f })
    }

    pub fn cocycle(&self) -> &CocycleTable {
        &self.f
    }

    pub fn base(&self) -> &FiniteGroup {
        &self.f.group
    }

    pub fn identity(&self) -> ExtElement {
        ExtElement::new(0, 0)
    }

    /// The central generator `(1, id)` of the kernel.
    pub fn z(&self) -> ExtElement {
        ExtElement::new(1, 0)
    }

    pub fn mul(&self, a: ExtElement, b: ExtElement) -> ExtElement {
        ExtElement::new(a.m + b.m + i64::from(self.f.get(a.g, b.g)), self.base().mul(a.g, b.g))
    }

    pub fn inv(&self, a: ExtElement) -> ExtElement {
        let gi = self.base().inv(a.g);
        ExtElement::new(-a.m - i64::from(self.f.get(a.g, gi)), gi)
    }

    pub fn pow(&self, a: ExtElement, k: i64) -> ExtElement {
        let base = if k < 0 { self.inv(a) } else { a };
        (0..k.unsigned_abs()).fold(self.identity(), |acc, _| self.mul(acc, base))
    }

    /// All `(m, g)` with `|m| <= radius`.
    pub fn window(&self, radius: i64) -> Vec<ExtElement> {
        (-radius..=radius)
            .flat_map(|m| (0..self.base().order()).map(move |g| ExtElement::new(m, g)))
            .collect()
    }

    /// Associativity over all triples of the window, and centrality of
    /// `(1, id)` against it.
    pub fn check_window(&self, radius: i64) -> Result<()> {
        let w = self.window(radius);
        let z = self.z();
        if let Some(a) = w.iter().find(|&&a| self.mul(a, z) != self.mul(z, a)) {
            return Err(Error::AxiomViolation(format!("(1, id) does not commute with {a:?}")));
        }
        let bad = par::find_first(w.len(), |i| {
            let a = w[i];
            w.iter().find_map(|&b| {
                w.iter()
                    .find(|&&c| self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)))
                    .map(|&c| (a, b, c))
            })
        });
        match bad {
            Some((a, b, c)) => Err(Error::AxiomViolation(format!(
                "associativity fails at {a:?}, {b:?}, {c:?}"
            ))),
            None => Ok(()),
        }
    }
}

/// Homogeneous circular order `c: G^3 -> {-1, 0, 1}`, stored as a linear
/// order on `G` with the identity first; `c` is the orientation of a triple
/// relative to that order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousOrder {
    group: FiniteGroup,
    rank: Vec<usize>,
}

impl HomogeneousOrder {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Position of each element in the linear order.
    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    /// Elements listed in increasing order.
    pub fn sorted(&self) -> Vec<usize> {
        let mut s = vec![0; self.rank.len()];
        for (g, &r) in self.rank.iter().enumerate() {
            s[r] = g;
        }
        s
    }

    /// `+1` for a cyclic rotation of an increasing triple, `-1` for one of a
    /// decreasing triple, `0` on repeats.
    pub fn c(&self, a: usize, b: usize, c: usize) -> i8 {
        let (x, y, z) = (self.rank[a], self.rank[b], self.rank[c]);
        if x == y || y == z || x == z {
            return 0;
        }
        if (x < y && y < z) || (y < z && z < x) || (z < x && x < y) {
            1
        } else {
            -1
        }
    }

    /// The four defining conditions, exhaustively. Value range and zero set
    /// hold by construction of [`c`](Self::c) and are rechecked anyway.
    pub fn validate(&self) -> Result<()> {
        let g = &self.group;
        let n = g.order();
        let bad = par::find_first(n, |a| {
            for b in 0..n {
                for c in 0..n {
                    let v = self.c(a, b, c);
                    let repeat = a == b || b == c || a == c;
                    if !(-1..=1).contains(&v) || (v == 0) != repeat {
                        return Some(format!("zero set fails at ({a}, {b}, {c})"));
                    }
                    for d in 0..n {
                        let delta = self.c(b, c, d) - self.c(a, c, d) + self.c(a, b, d) - self.c(a, b, c);
                        if delta != 0 {
                            return Some(format!("cocycle condition fails at ({a}, {b}, {c}, {d})"));
                        }
                        if self.c(g.mul(d, a), g.mul(d, b), g.mul(d, c)) != v {
                            return Some(format!(
                                "left invariance fails at ({a}, {b}, {c}) translated by {d}"
                            ));
                        }
                    }
                }
            }
            None
        });
        bad.map_or(Ok(()), |m| Err(Error::AxiomViolation(m)))
    }
}

/// Orders `G` by `a < b` iff `f(a, a^-1 b) = 0` (identity first), takes the
/// induced cyclic orientation, and validates it.
pub fn homogeneous_from_inhomogeneous(f: &CocycleTable) -> Result<HomogeneousOrder> {
    validate_inhomogeneous(f).map_err(|v| Error::InvalidCocycle(v.to_string()))?;
    let g = &f.group;
    let n = g.order();
    let below = |a: usize, b: usize| a != b && (a == 0 || (b != 0 && f.get(a, g.mul(g.inv(a), b)) == 0));
    for a in 1..n {
        for b in 1..n {
            if a != b && below(a, b) == below(b, a) {
                return Err(Error::AxiomViolation(format!(
                    "elements {a} and {b} are not comparable exactly one way"
                )));
            }
        }
    }
    let rank: Vec<usize> = (0..n).map(|b| (0..n).filter(|&a| below(a, b)).count()).collect();
    let mut seen = vec![false; n];
    for &r in &rank {
        if seen[r] {
            return Err(Error::AxiomViolation("induced relation is not transitive".into()));
        }
        seen[r] = true;
    }
    let order = HomogeneousOrder { group: g.clone(), rank };
    order.validate()?;
    Ok(order)
}
