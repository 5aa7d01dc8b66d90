//! Ambient generating sets extended by subgroup generators.
//!
//! The subgroup pipeline assumes the subgroup's generators are letters of
//! the ambient alphabet.  When they are longer words, the alphabet is
//! formally extended by fresh letters evaluating to those words, and all
//! geometry (lengths, delta, quasiconvexity, the geodesic language) is
//! recomputed over the extended alphabet.  The extension changes the word
//! metric, so extended contexts certify lengths through the ball dictionary
//! rather than the family oracle.

use crate::cayley::{Ball, BallAlphabet};
use crate::error::{Error, Result};
use crate::groups::subgroup::SubgroupSpec;
use crate::groups::GroupOracle;
use crate::words::{Symbol, Word};

#[derive(Clone, Debug)]
pub struct AnalysisContext {
    pub gens: BallAlphabet,
    /// The subgroup generators as symbols of `gens.alphabet()`.
    pub h_symbols: Vec<Symbol>,
    pub extended: bool,
}

const FRESH_NAMES: &str = "stuvwpqronmlkjihgfedcba";

/// Builds the generator context for a `(G, H)` pair, extending the alphabet
/// when some subgroup generator is not a single letter.
pub fn context_for_subgroup(oracle: &GroupOracle, spec: &SubgroupSpec) -> Result<AnalysisContext> {
    let base = BallAlphabet::for_oracle(oracle);
    if spec.is_trivial() {
        return Ok(AnalysisContext {
            gens: base,
            h_symbols: Vec::new(),
            extended: false,
        });
    }
    let single: Option<Vec<Symbol>> = spec
        .generators()
        .iter()
        .map(|g| match g.symbols() {
            [s] => Some(*s),
            _ => None,
        })
        .collect();
    if let Some(h_symbols) = single {
        return Ok(AnalysisContext {
            gens: base,
            h_symbols,
            extended: false,
        });
    }

    let mut alphabet = oracle.alphabet().clone();
    let mut elements: Vec<Word> = alphabet.symbols().map(Word::single).collect();
    let used: Vec<char> = alphabet
        .symbols()
        .map(|s| alphabet.name(s).to_ascii_lowercase())
        .collect();
    let mut fresh: std::vec::IntoIter<char> = FRESH_NAMES
        .chars()
        .filter(|c| !used.contains(c))
        .collect::<Vec<_>>()
        .into_iter();
    let mut h_symbols = Vec::new();
    let mut handled: Vec<Word> = Vec::new();
    for g in spec.generators() {
        if handled.contains(g) {
            continue;
        }
        let inv = oracle.invert(g)?;
        handled.push(g.clone());
        handled.push(inv.clone());
        if let [s] = g.symbols() {
            h_symbols.push(*s);
            if inv != *g {
                h_symbols.push(oracle.alphabet().inverse(*s));
            }
            continue;
        }
        let name = fresh
            .next()
            .ok_or_else(|| Error::Extension("ran out of fresh letters".into()))?;
        let (sym, sym_inv) = if inv == *g {
            let (s, _) = alphabet.push_pair(name, name);
            (s, s)
        } else {
            alphabet.push_pair(name, name.to_ascii_uppercase())
        };
        elements.push(g.clone());
        h_symbols.push(sym);
        if sym_inv != sym {
            elements.push(inv);
            h_symbols.push(sym_inv);
        }
    }
    h_symbols.sort();
    h_symbols.dedup();
    let active: Vec<Symbol> = alphabet.symbols().collect();
    Ok(AnalysisContext {
        gens: BallAlphabet::restricted(alphabet, active, elements),
        h_symbols,
        extended: true,
    })
}

/// The subgroup's own Cayley ball over its generator letters, validated to
/// embed isometrically at desk scale: the internal length of every element
/// equals its ambient length.  The ambient ball certifies the latter.
pub fn subgroup_cayley_ball(
    oracle: &GroupOracle,
    ctx: &AnalysisContext,
    ambient: &Ball,
    radius: u32,
) -> Result<Ball> {
    let h_gens = BallAlphabet::restricted(
        ctx.gens.alphabet().clone(),
        ctx.h_symbols.clone(),
        (0..ctx.gens.alphabet().len() as u16)
            .map(|i| ctx.gens.element_of(Symbol(i)).clone())
            .collect(),
    );
    let h_ball = Ball::build(oracle, h_gens, radius)?;
    for i in 0..h_ball.len() as u32 {
        let internal = h_ball.length(i);
        match ambient.length_of_key(oracle, h_ball.key(i))? {
            Some(ambient_len) if ambient_len == internal => {}
            Some(ambient_len) => {
                return Err(Error::Extension(format!(
                    "subgroup element {:?} has internal length {internal} but ambient length {ambient_len}",
                    h_ball.key(i).to_text(ctx.gens.alphabet())
                )));
            }
            None => {
                return Err(Error::Extension(
                    "subgroup element left the certified ambient region".into(),
                ));
            }
        }
    }
    Ok(h_ball)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupFamily;

    #[test]
    fn single_letter_generators_do_not_extend() {
        let o = GroupOracle::new(GroupFamily::Free { rank: 2 }).unwrap();
        let h = SubgroupSpec::parse("a", &o).unwrap();
        let ctx = context_for_subgroup(&o, &h).unwrap();
        assert!(!ctx.extended);
        assert_eq!(ctx.h_symbols.len(), 2);
    }

    #[test]
    fn word_generator_extends_alphabet() {
        let o = GroupOracle::new(GroupFamily::Free { rank: 2 }).unwrap();
        let h = SubgroupSpec::parse("ab", &o).unwrap();
        let ctx = context_for_subgroup(&o, &h).unwrap();
        assert!(ctx.extended);
        let alphabet = ctx.gens.alphabet();
        assert_eq!(alphabet.len(), 6);
        let s = alphabet.symbol_by_name('s').unwrap();
        assert_eq!(
            ctx.gens.element_of(s).to_text(o.alphabet()),
            "ab"
        );
        assert_eq!(ctx.h_symbols, vec![s, alphabet.inverse(s)]);
    }

    #[test]
    fn extended_ball_has_shorter_metric() {
        let o = GroupOracle::new(GroupFamily::Free { rank: 2 }).unwrap();
        let h = SubgroupSpec::parse("ab", &o).unwrap();
        let ctx = context_for_subgroup(&o, &h).unwrap();
        let ball = Ball::build(&o, ctx.gens.clone(), 3).unwrap();
        // abab = s s has extended length 2.
        let abab = Word::parse("abab", o.alphabet()).unwrap();
        let key = o.normal_form(&abab).unwrap();
        let idx = ball.index_of(&key).unwrap();
        assert_eq!(ball.length(idx), 2);
        let h_ball = subgroup_cayley_ball(&o, &ctx, &ball, 3).unwrap();
        assert_eq!(h_ball.len(), 7); // s^-3 .. s^3
    }
}
