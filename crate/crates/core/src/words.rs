//! Generator alphabets and words over them.
//!
//! An [`Alphabet`] is an ordered list of single-character generator symbols
//! together with an involution pairing each symbol with its inverse.  Symbol
//! order is total and fixed; it is the tie-breaker for every shortlex
//! comparison in the crate.  A [`Word`] is a plain sequence of symbols.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::fmt;

/// Index of a generator symbol in its alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u16);

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Ordered set of generator symbols closed under inversion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<char>,
    inverse: Vec<Symbol>,
}

impl Alphabet {
    /// Builds an alphabet from `(name, inverse name)` pairs.  A generator
    /// equal to its own inverse is listed once with both names equal.
    pub fn new(pairs: &[(char, char)]) -> Self {
        let mut names = Vec::new();
        for &(c, inv) in pairs {
            names.push(c);
            if inv != c {
                names.push(inv);
            }
        }
        let inverse = pairs
            .iter()
            .flat_map(|&(c, inv)| {
                let i = names.iter().position(|&n| n == c).unwrap() as u16;
                if inv == c {
                    vec![Symbol(i)]
                } else {
                    let j = names.iter().position(|&n| n == inv).unwrap() as u16;
                    vec![Symbol(j), Symbol(i)]
                }
            })
            .collect();
        Alphabet { names, inverse }
    }

    /// Lowercase generators `a, b, c, ...` with uppercase inverses.
    pub fn lowercase(count: usize, start: char) -> Self {
        let base = start as u8;
        let pairs: Vec<(char, char)> = (0..count)
            .map(|i| {
                let c = (base + i as u8) as char;
                (c, c.to_ascii_uppercase())
            })
            .collect();
        Alphabet::new(&pairs)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.names.len() as u16).map(Symbol)
    }

    pub fn inverse(&self, s: Symbol) -> Symbol {
        self.inverse[s.index()]
    }

    pub fn name(&self, s: Symbol) -> char {
        self.names[s.index()]
    }

    pub fn symbol_by_name(&self, c: char) -> Option<Symbol> {
        self.names.iter().position(|&n| n == c).map(|i| Symbol(i as u16))
    }

    pub fn check_symbol(&self, s: Symbol) -> Result<()> {
        if s.index() < self.names.len() {
            Ok(())
        } else {
            Err(Error::SymbolNotInAlphabet(s.index(), self.names.len()))
        }
    }

    /// Adds a generator pair, returning the new symbol.  Used when the
    /// alphabet is formally extended by subgroup generators.
    pub fn push_pair(&mut self, name: char, inv_name: char) -> (Symbol, Symbol) {
        let s = Symbol(self.names.len() as u16);
        self.names.push(name);
        if inv_name == name {
            self.inverse.push(s);
            (s, s)
        } else {
            let t = Symbol(self.names.len() as u16);
            self.names.push(inv_name);
            self.inverse.push(t);
            self.inverse.push(s);
            (s, t)
        }
    }
}

/// A finite sequence of symbols.  The empty word is the identity.
/// The derived ordering is plain lexicographic; metric comparisons use
/// [`Word::shortlex_cmp`].
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn single(s: Symbol) -> Self {
        Word(vec![s])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Formal inverse: reversed word with every symbol inverted.
    pub fn formal_inverse(&self, alphabet: &Alphabet) -> Word {
        Word(self.0.iter().rev().map(|&s| alphabet.inverse(s)).collect())
    }

    /// Shortlex comparison: length first, then symbol order.
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay {
            word: self,
            alphabet,
        }
    }

    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        self.display(alphabet).to_string()
    }

    /// Parses a word.  Symbols are single characters; `^n` repeats the
    /// preceding symbol (negative exponents invert it).  `1` denotes the
    /// empty word and whitespace is ignored.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Word> {
        let err = |reason: &str| Error::WordParse {
            input: text.to_string(),
            reason: reason.to_string(),
        };
        let mut out = Vec::new();
        let mut chars = text.chars().peekable();
        while let Some(c) = chars.next() {
            if c.is_whitespace() {
                continue;
            }
            if c == '1' {
                continue;
            }
            if c == '^' {
                let mut num = String::new();
                if chars.peek() == Some(&'-') {
                    num.push(chars.next().unwrap());
                }
                while chars.peek().is_some_and(|d| d.is_ascii_digit()) {
                    num.push(chars.next().unwrap());
                }
                let n: i64 = num.parse().map_err(|_| err("bad exponent"))?;
                let last = *out.last().ok_or_else(|| err("exponent without symbol"))?;
                out.pop();
                let (sym, reps) = if n >= 0 {
                    (last, n as usize)
                } else {
                    (alphabet.inverse(last), (-n) as usize)
                };
                out.extend(std::iter::repeat_n(sym, reps));
                continue;
            }
            match alphabet.symbol_by_name(c) {
                Some(s) => out.push(s),
                None => return Err(err(&format!("unknown symbol {c:?}"))),
            }
        }
        Ok(Word(out))
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    alphabet: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.word.0 {
            write!(f, "{}", self.alphabet.name(s))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free2() -> Alphabet {
        Alphabet::lowercase(2, 'a')
    }

    #[test]
    fn alphabet_involution() {
        let ab = free2();
        for s in ab.symbols() {
            assert_eq!(ab.inverse(ab.inverse(s)), s);
        }
        assert_eq!(ab.len(), 4);
    }

    #[test]
    fn self_inverse_generator_listed_once() {
        let ab = Alphabet::new(&[('a', 'a'), ('b', 'B')]);
        assert_eq!(ab.len(), 3);
        let a = ab.symbol_by_name('a').unwrap();
        assert_eq!(ab.inverse(a), a);
    }

    #[test]
    fn parse_roundtrip() {
        let ab = free2();
        let w = Word::parse("abA^2b", &ab).unwrap();
        assert_eq!(w.to_text(&ab), "abAAb");
        assert_eq!(Word::parse(&w.to_text(&ab), &ab).unwrap(), w);
        assert_eq!(Word::parse("a^-2", &ab).unwrap().to_text(&ab), "AA");
        assert!(Word::parse("z", &ab).is_err());
        assert_eq!(Word::parse("1", &ab).unwrap(), Word::empty());
        assert_eq!(Word::parse("", &ab).unwrap(), Word::empty());
    }

    #[test]
    fn shortlex() {
        let ab = free2();
        let p = |t: &str| Word::parse(t, &ab).unwrap();
        assert_eq!(p("b").shortlex_cmp(&p("aa")), Ordering::Less);
        // Symbol order is interleaved: a < A < b < B.
        assert_eq!(p("aA").shortlex_cmp(&p("ab")), Ordering::Less);
    }
}
