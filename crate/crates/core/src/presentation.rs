//! Finitely presented groups and their textual grammar.
//!
//! ```text
//! presentation := "<" ident ("," ident)* "|" [relation ("," relation)*] ">"
//! relation     := word | word "=" word
//! word         := "1" | factor+
//! factor       := ident ["^" sint] | "(" word ")" ["^" sint]
//! ```
//!
//! Whitespace is ignored and `*` may separate factors. A relation `u = v`
//! becomes the relator `u v^-1`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::abelian::IntMatrix;
use crate::error::{Error, Result};
use crate::word::{Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Validates names and generator indices, and freely reduces relators.
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyGeneratorList);
        }
        let mut seen = HashMap::new();
        for name in &generators {
            if !is_ident(name) {
                return Err(Error::Syntax { pos: 0, msg: format!("`{name}` is not an identifier") });
            }
            if seen.insert(name.as_str(), ()).is_some() {
                return Err(Error::DuplicateGenerator(name.clone()));
            }
        }
        let count = generators.len();
        for r in &relators {
            if let Some(index) = r.max_generator().filter(|&g| g >= count) {
                return Err(Error::InvalidGenerator { index, count });
            }
        }
        let relators = relators.iter().map(Word::free_reduce).collect();
        Ok(Presentation { generators, relators })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Parser::new(text).presentation()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Parses a single word over this presentation's generators.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut p = Parser::new(text);
        p.names = self.generators.clone();
        let w = p.word()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.err("trailing input after word"));
        }
        Ok(w.free_reduce())
    }

    /// Relator-exponent-sum matrix: entry `(k, i)` is the exponent sum of
    /// generator `i` in relator `k`.
    pub fn exponent_matrix(&self) -> IntMatrix {
        let n = self.generators.len();
        let m = self.relators.len();
        let mut mat = IntMatrix::zeros(m, n);
        for (k, r) in self.relators.iter().enumerate() {
            for l in r.letters() {
                let e = mat.get(k, l.generator()) + l.sign();
                mat.set(k, l.generator(), e);
            }
        }
        mat
    }

    /// Generator count minus relator count.
    pub fn deficiency(&self) -> i64 {
        self.generators.len() as i64 - self.relators.len() as i64
    }

    /// True iff every relator, up to cyclic permutation and inversion, reads
    /// `x_i^-1 w x_j w^-1`.
    pub fn is_wirtinger(&self) -> bool {
        self.relators.iter().all(is_wirtinger_relator)
    }

    /// Presentation of the quotient by the normal closure of `words`.
    pub fn add_relators(&self, words: &[Word]) -> Result<Presentation> {
        let count = self.generators.len();
        for w in words {
            if let Some(index) = w.max_generator().filter(|&g| g >= count) {
                return Err(Error::InvalidGenerator { index, count });
            }
        }
        let mut relators = self.relators.clone();
        relators.extend(words.iter().map(Word::free_reduce));
        Ok(Presentation { generators: self.generators.clone(), relators })
    }

    /// Same group with relators cyclically reduced and empty relators
    /// dropped. Used before enumeration.
    pub fn cyclically_reduced(&self) -> Presentation {
        let relators = self
            .relators
            .iter()
            .map(|r| r.cyclic_reduce().0)
            .filter(|r| !r.is_empty())
            .collect();
        Presentation { generators: self.generators.clone(), relators }
    }

    pub fn display_word<'a>(&'a self, w: &'a Word) -> crate::word::WordDisplay<'a> {
        w.display(&self.generators)
    }
}

impl FromStr for Presentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Presentation::parse(s)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} |", self.generators.join(", "))?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, " {}", r.display(&self.generators))?;
        }
        f.write_str(" >")
    }
}

pub(crate) fn is_wirtinger_relator(r: &Word) -> bool {
    let (core, _) = r.cyclic_reduce();
    if core.is_empty() {
        return true;
    }
    let n = core.len();
    if n % 2 != 0 {
        return false;
    }
    let k = (n - 2) / 2;
    [core.clone(), core.inverse()].iter().any(|w| {
        w.rotations().any(|rot| {
            let l = rot.letters();
            l[0].is_inverse()
                && !l[k + 1].is_inverse()
                && (0..k).all(|t| l[k + 2 + t] == l[k - t].inverse())
        })
    })
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    names: Vec<String>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { src: text.as_bytes(), pos: 0, names: Vec::new() }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", c as char)))
        }
    }

    fn ident(&mut self) -> Result<(String, usize)> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() => self.pos += 1,
            _ => return Err(self.err("expected identifier")),
        }
        while let Some(c) = self.src.get(self.pos) {
            if c.is_ascii_alphanumeric() || *c == b'_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii slice");
        Ok((s.to_string(), start))
    }

    fn sint(&mut self) -> Result<i64> {
        self.skip_ws();
        let neg = if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        };
        let start = self.pos;
        while matches!(self.src.get(self.pos), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer exponent"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii slice");
        let v: i64 = digits
            .parse()
            .map_err(|_| Error::Syntax { pos: start, msg: "exponent out of range".into() })?;
        if v > 1_000_000 {
            return Err(Error::Syntax { pos: start, msg: "exponent too large".into() });
        }
        Ok(if neg { -v } else { v })
    }

    fn presentation(&mut self) -> Result<Presentation> {
        self.expect(b'<')?;
        if self.peek() == Some(b'|') {
            return Err(Error::EmptyGeneratorList);
        }
        let mut names = Vec::new();
        loop {
            let (name, _) = self.ident()?;
            if names.contains(&name) {
                return Err(Error::DuplicateGenerator(name));
            }
            names.push(name);
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b'|') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.err("expected `,` or `|`")),
            }
        }
        self.names = names;
        let mut relators = Vec::new();
        if self.peek() != Some(b'>') {
            loop {
                relators.push(self.relation()?);
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b'>') => break,
                    _ => return Err(self.err("expected `,` or `>`")),
                }
            }
        }
        self.expect(b'>')?;
        if self.peek().is_some() {
            return Err(self.err("trailing input after `>`"));
        }
        Presentation::new(std::mem::take(&mut self.names), relators)
    }

    fn relation(&mut self) -> Result<Word> {
        let lhs = self.word()?;
        if self.peek() == Some(b'=') {
            self.pos += 1;
            let rhs = self.word()?;
            Ok(lhs.concat(&rhs.inverse()).free_reduce())
        } else {
            Ok(lhs.free_reduce())
        }
    }

    fn word(&mut self) -> Result<Word> {
        if self.peek() == Some(b'1') {
            self.pos += 1;
            return Ok(Word::empty());
        }
        let mut letters: Vec<Letter> = Vec::new();
        let mut any = false;
        loop {
            match self.peek() {
                Some(b'*') if any => {
                    self.pos += 1;
                    continue;
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'(' => {}
                _ => break,
            }
            let base = if self.peek() == Some(b'(') {
                self.pos += 1;
                let inner = self.word()?;
                self.expect(b')')?;
                inner
            } else {
                let (name, at) = self.ident()?;
                let g = self
                    .names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or(Error::UnknownGenerator { name, pos: at })?;
                Word::generator(g)
            };
            let exp = if self.peek() == Some(b'^') {
                self.pos += 1;
                self.sint()?
            } else {
                1
            };
            let part = if exp < 0 { base.inverse() } else { base };
            for _ in 0..exp.unsigned_abs() {
                letters.extend_from_slice(part.letters());
            }
            any = true;
        }
        if !any {
            return Err(self.err("expected a word"));
        }
        Ok(Word::from_letters(letters))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::IntMatrix;

    fn w(s: &[i32]) -> Word {
        Word::from_signed(s)
    }

    #[test]
    fn parses_braid_relation() {
        let p = Presentation::parse("< x, y | x y x = y x y >").unwrap();
        assert_eq!(p.generator_count(), 2);
        assert_eq!(p.relators(), &[w(&[1, 2, 1, -2, -1, -2])]);
    }

    #[test]
    fn parses_free_group() {
        let p = Presentation::parse("< x | >").unwrap();
        assert_eq!(p.generator_count(), 1);
        assert!(p.relators().is_empty());
    }

    #[test]
    fn parses_metacyclic_relators() {
        let p = Presentation::parse("< x, a | x^-1 a x a, a^3 >").unwrap();
        assert_eq!(p.relators(), &[w(&[-1, 2, 1, 2]), w(&[2, 2, 2])]);
    }

    #[test]
    fn parses_parentheses_star_and_identity() {
        let p = Presentation::parse("<x,y|(x*y)^2=1, (y^-1 x)^-2>").unwrap();
        assert_eq!(p.relators(), &[w(&[1, 2, 1, 2]), w(&[-1, 2, -1, 2])]);
    }

    #[test]
    fn reports_errors() {
        assert!(matches!(
            Presentation::parse("< x | x z >"),
            Err(Error::UnknownGenerator { ref name, pos: 8 }) if name == "z"
        ));
        assert_eq!(Presentation::parse("< | >"), Err(Error::EmptyGeneratorList));
        assert!(matches!(Presentation::parse("< x | x^ >"), Err(Error::Syntax { .. })));
        assert!(matches!(Presentation::parse("< x, x | >"), Err(Error::DuplicateGenerator(_))));
        assert!(matches!(Presentation::parse("< x | x > junk"), Err(Error::Syntax { .. })));
        assert!(matches!(Presentation::parse("< x | x"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn exponent_matrices() {
        let g1 = Presentation::parse("< x, y | x y x = y x y >").unwrap();
        assert_eq!(g1.exponent_matrix(), IntMatrix::from_rows(&[vec![1, -1]]));
        let g2 = Presentation::parse("< x, a | x^-1 a x = a^-1, a^3 = 1 >").unwrap();
        assert_eq!(g2.exponent_matrix(), IntMatrix::from_rows(&[vec![0, 2], vec![0, 3]]));
        let free = Presentation::parse("< x | >").unwrap();
        let m = free.exponent_matrix();
        assert_eq!((m.rows(), m.cols()), (0, 1));
    }

    #[test]
    fn wirtinger_shape() {
        assert!(Presentation::parse("< x, y | x y x = y x y >").unwrap().is_wirtinger());
        assert!(!Presentation::parse("< x, a | a^3 >").unwrap().is_wirtinger());
        assert!(Presentation::parse("< x | >").unwrap().is_wirtinger());
        // inverted and rotated forms
        assert!(Presentation::parse("< a, b, c | c = b a b^-1 >").unwrap().is_wirtinger());
        assert!(Presentation::parse("< a, b | (b^-1 a^-1 b a)^-1 >").unwrap().is_wirtinger());
        assert!(!Presentation::parse("< a, b | a b a b >").unwrap().is_wirtinger());
    }

    #[test]
    fn deficiency_counts() {
        assert_eq!(Presentation::parse("< x, y | x y x = y x y >").unwrap().deficiency(), 1);
        assert_eq!(Presentation::parse("< x | >").unwrap().deficiency(), 1);
        let g9 = Presentation::parse(
            "< x, y | x y x y^-1 x^-1 = y x^-1 y x y^-1, x^-1 y^-1 x y x = y^-1 x^-1 y x y >",
        )
        .unwrap();
        assert_eq!(g9.deficiency(), 0);
    }

    #[test]
    fn adding_relators() {
        let g1 = Presentation::parse("< x, y | x y x = y x y >").unwrap();
        let q = g1.add_relators(&[w(&[1, 1])]).unwrap();
        assert_eq!(q.relators().len(), 2);
        assert_eq!(g1.add_relators(&[]).unwrap(), g1);
        assert!(matches!(
            g1.add_relators(&[w(&[3])]),
            Err(Error::InvalidGenerator { index: 2, count: 2 })
        ));
    }

    #[test]
    fn display_round_trip() {
        let p = Presentation::parse("< x, y | x y x = y x y, y = x^-3 y x^3 >").unwrap();
        let text = p.to_string();
        assert_eq!(Presentation::parse(&text).unwrap(), p);
        assert_eq!(Presentation::parse("< x | >").unwrap().to_string(), "< x | >");
    }
}
