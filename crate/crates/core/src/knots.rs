//! Knot diagrams to groups: Gauss codes, Wirtinger presentations, Maeda's
//! metacyclic family, and the bundled table of virtual knot groups.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::{Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Pass {
    pub crossing: u32,
    pub over: bool,
    /// `+1` or `-1`
    pub sign: i8,
}

/// Cyclic sequence of classical crossing passes. Virtual crossings are not
/// recorded.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussCode {
    passes: Vec<Pass>,
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.passes.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let ou = if p.over { 'O' } else { 'U' };
            let s = if p.sign > 0 { '+' } else { '-' };
            write!(f, "{ou}{}{s}", p.crossing)?;
        }
        Ok(())
    }
}

impl GaussCode {
    /// Each crossing must appear exactly twice, once over and once under,
    /// with the same sign.
    pub fn new(passes: Vec<Pass>) -> Result<Self> {
        let mut seen: std::collections::BTreeMap<u32, (Option<i8>, Option<i8>)> = Default::default();
        for p in &passes {
            if p.sign != 1 && p.sign != -1 {
                return Err(Error::GaussCode(format!("crossing {} has sign {}", p.crossing, p.sign)));
            }
            let slot = seen.entry(p.crossing).or_default();
            let side = if p.over { &mut slot.0 } else { &mut slot.1 };
            if side.is_some() {
                let kind = if p.over { "over" } else { "under" };
                return Err(Error::GaussCode(format!(
                    "crossing {} has a repeated {kind}-pass",
                    p.crossing
                )));
            }
            *side = Some(p.sign);
        }
        for (id, slot) in &seen {
            match slot {
                (Some(a), Some(b)) if a != b => {
                    return Err(Error::GaussCode(format!("crossing {id} has mismatched signs")))
                }
                (Some(_), Some(_)) => {}
                (None, _) => return Err(Error::GaussCode(format!("crossing {id} has no over-pass"))),
                (_, None) => return Err(Error::GaussCode(format!("crossing {id} has no under-pass"))),
            }
        }
        Ok(GaussCode { passes })
    }

    /// Tokens `O<id><sign>` or `U<id><sign>`, separated by whitespace or
    /// commas.
    pub fn parse(text: &str) -> Result<Self> {
        let passes = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(parse_pass)
            .collect::<Result<Vec<_>>>()?;
        GaussCode::new(passes)
    }

    pub fn passes(&self) -> &[Pass] {
        &self.passes
    }

    pub fn crossing_count(&self) -> usize {
        self.passes.len() / 2
    }
}

fn parse_pass(token: &str) -> Result<Pass> {
    let bad = || Error::GaussCode(format!("malformed token `{token}`"));
    let mut chars = token.chars();
    let over = match chars.next() {
        Some('O' | 'o') => true,
        Some('U' | 'u') => false,
        _ => return Err(bad()),
    };
    let rest = chars.as_str();
    let (digits, sign) = match rest.chars().last() {
        Some('+') => (&rest[..rest.len() - 1], 1),
        Some('-') => (&rest[..rest.len() - 1], -1),
        _ => return Err(bad()),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let crossing = digits.parse().map_err(|_| bad())?;
    Ok(Pass { crossing, over, sign })
}

/// Relation `outgoing = over^s incoming over^-s` at one crossing
/// (`s = +1` for a positive crossing, conjugating the other way otherwise).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CrossingRelation {
    pub crossing: u32,
    pub over: usize,
    pub incoming: usize,
    pub outgoing: usize,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WirtingerData {
    pub arcs: Vec<String>,
    pub relations: Vec<CrossingRelation>,
}

impl WirtingerData {
    /// One generator per arc, one relator `c^-1 w a w^-1` per crossing,
    /// with `w = b` for positive crossings and `w = b^-1` for negative.
    pub fn presentation(&self) -> Presentation {
        let relators = self
            .relations
            .iter()
            .map(|r| {
                let b = Letter::new(r.over, r.sign < 0);
                Word::from_letters(vec![
                    Letter::inv(r.outgoing),
                    b,
                    Letter::gen(r.incoming),
                    b.inverse(),
                ])
            })
            .collect();
        Presentation::new(self.arcs.clone(), relators).expect("arcs are valid generator names")
    }
}

/// Arc `k` starts right after the `k`-th under-pass and runs to the next
/// one, wrapping around the code.
pub fn wirtinger_data(code: &GaussCode) -> Result<WirtingerData> {
    let passes = code.passes();
    if passes.is_empty() {
        return Err(Error::GaussCode("empty code has no arcs".into()));
    }
    let unders: Vec<usize> = (0..passes.len()).filter(|&i| !passes[i].over).collect();
    let c = unders.len();
    // arc containing position i: the one started by the last under-pass
    // strictly before i, or the wrapping arc
    let arc_at = |i: usize| match unders.iter().rposition(|&u| u < i) {
        Some(k) => k,
        None => c - 1,
    };
    let relations = unders
        .iter()
        .enumerate()
        .map(|(k, &u)| {
            let id = passes[u].crossing;
            let over_pos = passes.iter().position(|p| p.over && p.crossing == id).unwrap();
            CrossingRelation {
                crossing: id,
                over: arc_at(over_pos),
                incoming: (k + c - 1) % c,
                outgoing: k,
                sign: passes[u].sign,
            }
        })
        .collect();
    let arcs = (0..c).map(|k| format!("a{k}")).collect();
    Ok(WirtingerData { arcs, relations })
}

pub fn wirtinger_presentation(code: &GaussCode) -> Result<Presentation> {
    Ok(wirtinger_data(code)?.presentation())
}

/// `(m, n)`: the metacyclic form `<x, a | a^m, x^-1 a x = a^n>`, the
/// two-relator Wirtinger form obtained by `y = x a^-1`, and `q` with
/// `q (n - 1) = 1 mod m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaedaGroup {
    pub m: u64,
    pub n: i64,
    pub q: u64,
    pub metacyclic: Presentation,
    pub wirtinger: Presentation,
}

pub fn maeda_group(m: u64, n: i64) -> Result<MaedaGroup> {
    if m == 0 {
        return Err(Error::Precondition("m must be positive".into()));
    }
    let mi = m as i64;
    if n.gcd(&mi) != 1 {
        return Err(Error::Precondition(format!("gcd({m}, {n}) != 1")));
    }
    let q = match mod_inverse(n - 1, mi) {
        Some(q) => q as u64,
        None => return Err(Error::Precondition(format!("gcd({}, {m}) != 1", n - 1))),
    };
    let metacyclic = Presentation::parse(&format!("< x, a | a^{m}, x^-1 a x = a^{n} >"))?;
    let wirtinger = Presentation::parse(&format!(
        "< x, y | y = (y^-1 x)^-{q} x (y^-1 x)^{q}, x = (y^-1 x)^-{m} x (y^-1 x)^{m} >"
    ))?;
    Ok(MaedaGroup { m, n, q, metacyclic, wirtinger })
}

fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let e = a.mod_floor(&m).extended_gcd(&m);
    (e.gcd == 1).then(|| e.x.mod_floor(&m))
}

/// Normal form `x^k a^j` in `<x, a | a^m, x^-1 a x = a^l>`, with `x`
/// generator 0 and `a` generator 1. Returns `(k, j mod m)`.
pub fn metacyclic_normal_form(w: &Word, m: u64, l: i64) -> Result<(i64, u64)> {
    let mi = m as i64;
    let l_inv = mod_inverse(l, mi).ok_or_else(|| Error::Precondition(format!("gcd({l}, {m}) != 1")))?;
    if let Some(index) = w.max_generator().filter(|&g| g >= 2) {
        return Err(Error::InvalidGenerator { index, count: 2 });
    }
    let l = l.mod_floor(&mi);
    let (mut k, mut j) = (0i64, 0i64);
    for letter in w.letters() {
        match (letter.generator(), letter.is_inverse()) {
            // x^k a^j x = x^(k+1) a^(j l)
            (0, false) => (k, j) = (k + 1, (j * l).mod_floor(&mi)),
            (0, true) => (k, j) = (k - 1, (j * l_inv).mod_floor(&mi)),
            (_, inverse) => j = (j + if inverse { -1 } else { 1 }).mod_floor(&mi),
        }
    }
    Ok((k, j as u64))
}

/// `(x^k1 a^j1)(x^k2 a^j2) = x^(k1+k2) a^(j1 l^k2 + j2)`.
pub fn metacyclic_compose(a: (i64, u64), b: (i64, u64), m: u64, l: i64) -> Result<(i64, u64)> {
    let mi = m as i64;
    let base = if b.0 >= 0 {
        l.mod_floor(&mi)
    } else {
        mod_inverse(l, mi).ok_or_else(|| Error::Precondition(format!("gcd({l}, {m}) != 1")))?
    };
    let mut f = 1 % mi;
    for _ in 0..b.0.unsigned_abs() {
        f = (f * base).mod_floor(&mi);
    }
    Ok((a.0 + b.0, ((a.1 as i64 * f + b.1 as i64).mod_floor(&mi)) as u64))
}

const GREEN_DATA: &str = include_str!("../data/green_groups.txt");

/// Identifiers of the bundled groups, in table order.
pub const GREEN_IDS: [&str; 10] = ["Z", "G1", "G2", "G3", "G4", "G5", "G6", "G7", "G8", "G9"];

/// Parses a table whose first line is `# sha256:<hex>` over the remaining
/// bytes, followed by `id: <presentation>` lines.
pub fn parse_green_table(text: &str) -> Result<Vec<(String, Presentation)>> {
    let (header, body) = text
        .split_once('\n')
        .ok_or_else(|| Error::CorruptData("missing checksum line".into()))?;
    let expected = header
        .trim()
        .strip_prefix("# sha256:")
        .ok_or_else(|| Error::CorruptData("missing checksum line".into()))?;
    let actual = hex::encode(Sha256::digest(body.as_bytes()));
    if actual != expected {
        return Err(Error::CorruptData(format!("checksum mismatch: expected {expected}, got {actual}")));
    }
    body.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let (id, p) = line
                .split_once(':')
                .ok_or_else(|| Error::CorruptData(format!("malformed line `{line}`")))?;
            let p = Presentation::parse(p).map_err(|e| Error::CorruptData(format!("{id}: {e}")))?;
            Ok((id.trim().to_string(), p))
        })
        .collect()
}

pub fn green_table() -> Result<Vec<(String, Presentation)>> {
    parse_green_table(GREEN_DATA)
}

pub fn green_group(id: &str) -> Result<Presentation> {
    green_table()?
        .into_iter()
        .find(|(k, _)| k == id)
        .map(|(_, p)| p)
        .ok_or_else(|| Error::UnknownIdentifier(id.to_string()))
}
