//! Built-in group families with solvable word problem.
//!
//! Each family owns a normal form that is a geodesic word, and two words have
//! equal normal forms iff they represent the same group element:
//!
//! * free groups: free reduction;
//! * free abelian groups: exponent vectors rendered coordinate by coordinate;
//! * free products of two finite cyclic groups: alternating syllables with
//!   exponents of minimal absolute value;
//! * surface groups: Dehn reduction followed by the shortlex-least word in
//!   the half-relator swap closure (see [`dehn`]).

pub mod dehn;
pub mod subgroup;

use crate::error::{Error, Result};
use crate::words::{Alphabet, Symbol, Word};
use dehn::{free_reduce_symbols, RelatorTable};
use std::fmt;

/// The supported group families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupFamily {
    /// Free group of the given rank.
    Free { rank: usize },
    /// Free abelian group of the given rank.
    FreeAbelian { rank: usize },
    /// Free product Z_m * Z_n.
    FreeProductCyclic { m: u32, n: u32 },
    /// Fundamental group of the closed orientable surface of the given genus.
    Surface { genus: usize },
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupFamily::Free { rank } => write!(f, "free:{rank}"),
            GroupFamily::FreeAbelian { rank } => write!(f, "zfree:{rank}"),
            GroupFamily::FreeProductCyclic { m, n } => write!(f, "fpc:{m},{n}"),
            GroupFamily::Surface { genus } => write!(f, "surface:{genus}"),
        }
    }
}

/// A group instance: alphabet plus normal-form machinery.
///
/// Elements are identified with their normal-form words, so a `Word` returned
/// by [`GroupOracle::normal_form`] doubles as a hashable element key, and its
/// length is the word-metric length of the element.
#[derive(Clone, Debug)]
pub struct GroupOracle {
    family: GroupFamily,
    alphabet: Alphabet,
    relators: Option<RelatorTable>,
}

impl GroupOracle {
    pub fn new(family: GroupFamily) -> Result<Self> {
        let alphabet = match family {
            GroupFamily::Free { rank } => {
                if rank == 0 || rank > 12 {
                    return Err(Error::UnsupportedFamily(format!("free rank {rank}")));
                }
                Alphabet::lowercase(rank, 'a')
            }
            GroupFamily::FreeAbelian { rank } => {
                if rank == 0 || rank > 3 {
                    return Err(Error::UnsupportedFamily(format!("zfree rank {rank}")));
                }
                Alphabet::lowercase(rank, 'x')
            }
            GroupFamily::FreeProductCyclic { m, n } => {
                if m < 2 || n < 2 {
                    return Err(Error::UnsupportedFamily(format!("fpc:{m},{n}")));
                }
                let a = if m == 2 { ('a', 'a') } else { ('a', 'A') };
                let b = if n == 2 { ('b', 'b') } else { ('b', 'B') };
                Alphabet::new(&[a, b])
            }
            GroupFamily::Surface { genus } => {
                if genus < 2 || genus > 3 {
                    return Err(Error::UnsupportedFamily(format!("surface genus {genus}")));
                }
                Alphabet::lowercase(2 * genus, 'a')
            }
        };
        let relators = match family {
            GroupFamily::Surface { genus } => Some(RelatorTable::for_surface(&alphabet, genus)),
            _ => None,
        };
        Ok(GroupOracle {
            family,
            alphabet,
            relators,
        })
    }

    pub fn family(&self) -> GroupFamily {
        self.family
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relator_table(&self) -> Option<&RelatorTable> {
        self.relators.as_ref()
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        for &s in w.symbols() {
            self.alphabet.check_symbol(s)?;
        }
        Ok(())
    }

    /// Canonical geodesic word for the element of `w`.
    pub fn normal_form(&self, w: &Word) -> Result<Word> {
        self.check_word(w)?;
        Ok(match self.family {
            GroupFamily::Free { .. } => Word(free_reduce_symbols(&w.0, &self.alphabet)),
            GroupFamily::FreeAbelian { rank } => {
                let v = self.exponent_vector(w);
                self.render_abelian(&v, rank)
            }
            GroupFamily::FreeProductCyclic { .. } => {
                let syllables = self.fpc_syllables(w);
                self.render_fpc(&syllables)
            }
            GroupFamily::Surface { .. } => self
                .relators
                .as_ref()
                .unwrap()
                .normal_form(w, &self.alphabet),
        })
    }

    /// normal_form(u v); u and v need not be in normal form.
    pub fn multiply(&self, u: &Word, v: &Word) -> Result<Word> {
        self.normal_form(&u.concat(v))
    }

    /// normal_form(u^{-1}).
    pub fn invert(&self, u: &Word) -> Result<Word> {
        self.normal_form(&u.formal_inverse(&self.alphabet))
    }

    pub fn is_identity(&self, w: &Word) -> Result<bool> {
        self.check_word(w)?;
        Ok(match self.family {
            GroupFamily::Surface { .. } => self
                .relators
                .as_ref()
                .unwrap()
                .is_identity(w, &self.alphabet),
            _ => self.normal_form(w)?.is_empty(),
        })
    }

    /// Word-metric length of the element of `w` (normal forms are geodesic).
    pub fn length(&self, w: &Word) -> Result<usize> {
        Ok(self.normal_form(w)?.len())
    }

    /// Exponent vector of a word in a free abelian family.
    pub fn exponent_vector(&self, w: &Word) -> Vec<i64> {
        let GroupFamily::FreeAbelian { rank } = self.family else {
            panic!("exponent_vector requires a free abelian family");
        };
        let mut v = vec![0i64; rank];
        for &s in w.symbols() {
            let coord = s.index() / 2;
            if s.index() % 2 == 0 {
                v[coord] += 1;
            } else {
                v[coord] -= 1;
            }
        }
        v
    }

    fn render_abelian(&self, v: &[i64], rank: usize) -> Word {
        let mut out = Vec::new();
        for coord in 0..rank {
            let e = v[coord];
            let sym = if e >= 0 {
                Symbol((2 * coord) as u16)
            } else {
                Symbol((2 * coord + 1) as u16)
            };
            out.extend(std::iter::repeat_n(sym, e.unsigned_abs() as usize));
        }
        Word(out)
    }

    /// Splits a word in Z_m * Z_n into alternating reduced syllables.
    /// Each entry is (factor, exponent mod order) with nonzero exponent.
    fn fpc_syllables(&self, w: &Word) -> Vec<(u8, u32)> {
        let GroupFamily::FreeProductCyclic { m, n } = self.family else {
            panic!("fpc_syllables requires a free product family");
        };
        let mut stack: Vec<(u8, u32)> = Vec::new();
        for &s in w.symbols() {
            let (factor, order) = if self.alphabet.name(s).to_ascii_lowercase() == 'a' {
                (0u8, m)
            } else {
                (1u8, n)
            };
            let delta = if self.alphabet.name(s).is_ascii_lowercase() {
                1
            } else {
                order - 1
            };
            match stack.last_mut() {
                Some((f, e)) if *f == factor => {
                    *e = (*e + delta) % order;
                    if *e == 0 {
                        stack.pop();
                        // Merging may cascade: xs a^0 ys with x and y in the
                        // same factor.
                        while stack.len() >= 2 {
                            let len = stack.len();
                            if stack[len - 2].0 != stack[len - 1].0 {
                                break;
                            }
                            let (f2, e2) = stack.pop().unwrap();
                            let order2 = if f2 == 0 { m } else { n };
                            let top = stack.last_mut().unwrap();
                            top.1 = (top.1 + e2) % order2;
                            if top.1 == 0 {
                                stack.pop();
                            }
                        }
                    }
                }
                _ => stack.push((factor, delta % order)),
            }
        }
        stack
    }

    fn render_fpc(&self, syllables: &[(u8, u32)]) -> Word {
        let GroupFamily::FreeProductCyclic { m, n } = self.family else {
            unreachable!()
        };
        let mut out = Vec::new();
        for &(factor, e) in syllables {
            let order = if factor == 0 { m } else { n };
            let base = self
                .alphabet
                .symbol_by_name(if factor == 0 { 'a' } else { 'b' })
                .unwrap();
            // Minimal spelling of g^e in Z_order: positive letters when
            // e <= order/2 (ties go to the positive side), inverse letters
            // otherwise.
            if 2 * e <= order {
                out.extend(std::iter::repeat_n(base, e as usize));
            } else {
                let inv = self.alphabet.inverse(base);
                out.extend(std::iter::repeat_n(inv, (order - e) as usize));
            }
        }
        Word(out)
    }
}

/// Freely reduces a word over a free-group alphabet.
pub fn reduce_free(alphabet: &Alphabet, w: &Word) -> Result<Word> {
    for &s in w.symbols() {
        alphabet.check_symbol(s)?;
    }
    Ok(Word(free_reduce_symbols(&w.0, alphabet)))
}

/// Dehn-reduces `w` against a symmetrized relator set.
pub fn dehn_reduce(alphabet: &Alphabet, relators: &[Vec<Symbol>], w: &Word) -> Result<Word> {
    RelatorTable::check_symmetrized(alphabet, relators)?;
    let table = RelatorTable::from_relator(alphabet, relators[0].clone());
    Ok(table.dehn_reduce(w, alphabet))
}

/// Parses the `family:params` group spec grammar used by the CLI.
pub fn parse_group_spec(text: &str) -> Result<GroupFamily> {
    let err = |reason: &str| Error::GroupSpecParse {
        input: text.to_string(),
        reason: reason.to_string(),
    };
    let (name, params) = text.split_once(':').ok_or_else(|| err("expected name:params"))?;
    match name {
        "free" => Ok(GroupFamily::Free {
            rank: params.parse().map_err(|_| err("bad rank"))?,
        }),
        "zfree" => Ok(GroupFamily::FreeAbelian {
            rank: params.parse().map_err(|_| err("bad rank"))?,
        }),
        "fpc" => {
            let (m, n) = params.split_once(',').ok_or_else(|| err("expected fpc:M,N"))?;
            Ok(GroupFamily::FreeProductCyclic {
                m: m.parse().map_err(|_| err("bad order"))?,
                n: n.parse().map_err(|_| err("bad order"))?,
            })
        }
        "surface" => Ok(GroupFamily::Surface {
            genus: params.parse().map_err(|_| err("bad genus"))?,
        }),
        other => Err(err(&format!("unknown family {other:?}"))),
    }
}
