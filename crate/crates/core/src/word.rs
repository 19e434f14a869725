//! Words in a free group, stored letter by letter.

use std::fmt;

/// A generator or its inverse. Generator `i` is encoded as `2i`, its inverse
/// as `2i + 1`, which is also the column index used by coset tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter((generator as u32) << 1 | inverse as u32)
    }

    pub fn gen(generator: usize) -> Self {
        Self::new(generator, false)
    }

    pub fn inv(generator: usize) -> Self {
        Self::new(generator, true)
    }

    pub fn from_column(col: usize) -> Self {
        Letter(col as u32)
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    /// +1 or -1.
    pub fn sign(self) -> i64 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }

    pub fn column(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    /// Builds a word without reducing it.
    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    /// Builds a word from signed generator indices: `+(i+1)` is generator `i`,
    /// `-(i+1)` its inverse. Handy for tests.
    pub fn from_signed(signed: &[i32]) -> Self {
        let letters = signed
            .iter()
            .map(|&s| {
                assert!(s != 0, "0 is not a signed generator");
                Letter::new(s.unsigned_abs() as usize - 1, s < 0)
            })
            .collect();
        Word { letters }
    }

    pub fn generator(i: usize) -> Self {
        Word { letters: vec![Letter::gen(i)] }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator()).max()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Concatenation followed by free reduction.
    pub fn mul(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word::from_letters(letters).free_reduce()
    }

    /// Concatenation without reduction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// `self^k`, freely reduced; negative `k` uses the inverse.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Word::from_letters(letters).free_reduce()
    }

    /// Commutator `[a, b] = a b a^-1 b^-1`, freely reduced.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse()).free_reduce()
    }

    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1].inverse())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_reduced()
            && match (self.letters.first(), self.letters.last()) {
                (Some(&a), Some(&b)) => self.letters.len() < 2 || a != b.inverse(),
                _ => true,
            }
    }

    /// Splits a reduced word as `conjugator · core · conjugator^-1` with a
    /// cyclically reduced core.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let w = self.free_reduce();
        let n = w.letters.len();
        let mut k = 0;
        while 2 * k + 1 < n && w.letters[k] == w.letters[n - 1 - k].inverse() {
            k += 1;
        }
        let conjugator = Word { letters: w.letters[..k].to_vec() };
        let core = Word { letters: w.letters[k..n - k].to_vec() };
        (core, conjugator)
    }

    /// If the word is `r^k` with `k >= 2` as a letter sequence, returns the
    /// primitive root and `k`.
    pub fn proper_power_root(&self) -> Result<Option<(Word, usize)>, crate::Error> {
        if self.is_empty() {
            return Err(crate::Error::EmptyWord);
        }
        let n = self.letters.len();
        let period = minimal_period(&self.letters);
        if period < n {
            let root = Word { letters: self.letters[..period].to_vec() };
            Ok(Some((root, n / period)))
        } else {
            Ok(None)
        }
    }

    /// All cyclic rotations, starting with the word itself.
    pub fn rotations(&self) -> impl Iterator<Item = Word> + '_ {
        let n = self.letters.len().max(1);
        (0..n).map(move |i| {
            let mut letters = self.letters[i.min(self.letters.len())..].to_vec();
            letters.extend_from_slice(&self.letters[..i.min(self.letters.len())]);
            Word { letters }
        })
    }

    /// Exponent sum of generator `g`.
    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.generator() == g)
            .map(|l| l.sign())
            .sum()
    }

    /// Substitutes a word for every generator.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut letters = Vec::new();
        for l in &self.letters {
            let img = &images[l.generator()];
            if l.is_inverse() {
                letters.extend(img.inverse().letters);
            } else {
                letters.extend_from_slice(&img.letters);
            }
        }
        Word { letters }.free_reduce()
    }

    /// Renders the word with the given generator names, compressing runs into
    /// powers. The empty word renders as `1`.
    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

/// Smallest `p` dividing `s.len()` with `s[i] == s[i + p]` throughout.
fn minimal_period<T: PartialEq>(s: &[T]) -> usize {
    let n = s.len();
    // prefix function
    let mut pi = vec![0usize; n];
    for i in 1..n {
        let mut k = pi[i - 1];
        while k > 0 && s[i] != s[k] {
            k = pi[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        pi[i] = k;
    }
    let p = n - pi[n - 1];
    if n.is_multiple_of(p) {
        p
    } else {
        n
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = &self.word.letters;
        if letters.is_empty() {
            return f.write_str("1");
        }
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let l = letters[i];
            let mut run = 1;
            while i + run < letters.len() && letters[i + run] == l {
                run += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let exp = run as i64 * l.sign();
            f.write_str(&self.names[l.generator()])?;
            if exp != 1 {
                write!(f, "^{exp}")?;
            }
            i += run;
        }
        Ok(())
    }
}
