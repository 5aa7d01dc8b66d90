//! The regular language of geodesic words landing in the minimal-length
//! coset transversal.
//!
//! With `Lambda'` the geodesic language of the subgroup over its own letters
//! and `C1` the same-coset diameter bound, the target set is
//!
//! ```text
//! S = { x in Lambda : <x, y> <= min(|y|, C1) for all y in Lambda' }
//! ```
//!
//! realized as two regular pieces: the universal bound `<x, y> <= C1`
//! (complement, projection, complement over the delayed pair language), and
//! one `fix_tape` instance per short subgroup word `|y| <= C1`.

use super::ln::LnTower;
use super::pairs::delayed_join;
use crate::automata::determinize::determinize_minimize_capped;
use crate::automata::enumerate::{enumerate, shortest_accepted};
use crate::automata::ops::{fix_tape, intersect, project, raw_complement, union};
use crate::automata::MultiTapeAutomaton;
use crate::error::{Error, Result};
use crate::words::Word;

#[derive(Clone, Debug)]
pub struct SLanguage {
    /// Minimized one-tape acceptor of the geodesic spellings of `S`.
    pub automaton: MultiTapeAutomaton,
    pub c1: i64,
    /// When the diagnostic comparison runs: whether the union-over-radii
    /// form from the derivation equals the implemented form, with a witness
    /// word accepted by exactly one of the two when they differ.
    pub paper_form_equal: Option<bool>,
    pub paper_form_witness: Option<Word>,
}

pub fn build_s_language(
    lambda: &MultiTapeAutomaton,
    lambda_h: &MultiTapeAutomaton,
    tower: &LnTower,
    c1: i64,
    state_cap: usize,
    diagnostic: bool,
) -> Result<SLanguage> {
    if c1 < 0 {
        return Err(Error::NegativeConstant(format!("C1 = {c1}")));
    }
    let c1_idx = c1 as usize;
    assert!(
        tower.cumulative.len() > c1_idx,
        "tower must reach C1 = {c1}"
    );

    // Universal part: x is bad iff some subgroup word cancels more than C1.
    let pairs = delayed_join(lambda, lambda_h)?;
    let too_deep = raw_complement(&tower.cumulative[c1_idx], state_cap)?;
    let bad = intersect(&pairs, &too_deep)?;
    let bad_x = determinize_minimize_capped(&project(&bad, &[0])?, state_cap)?;
    let mut s = determinize_minimize_capped(
        &intersect(lambda, &raw_complement(&bad_x, state_cap)?)?,
        state_cap,
    )?;

    // Short-word part: <x, y> <= |y| for every subgroup word with |y| <= C1.
    for tuple in enumerate(lambda_h, c1_idx, 1_000_000)? {
        let y = &tuple[0];
        let within = fix_tape(&tower.cumulative[y.len()], 1, y)?;
        s = determinize_minimize_capped(&intersect(&s, &within)?, state_cap)?;
    }

    let (paper_form_equal, paper_form_witness) = if diagnostic {
        let paper = paper_form(lambda, lambda_h, tower, c1_idx, state_cap, &bad_x)?;
        match compare_languages(&s, &paper, state_cap)? {
            None => (Some(true), None),
            Some(w) => (Some(false), Some(w)),
        }
    } else {
        (None, None)
    };

    Ok(SLanguage {
        automaton: s,
        c1,
        paper_form_equal,
        paper_form_witness,
    })
}

/// The union-over-radii form: for each r up to C1, intersect the constraints
/// `<x, y> <= r` over subgroup words of length at most r, then take the
/// union over r, inside the universal C1 bound.
fn paper_form(
    lambda: &MultiTapeAutomaton,
    lambda_h: &MultiTapeAutomaton,
    tower: &LnTower,
    c1: usize,
    state_cap: usize,
    bad_x: &MultiTapeAutomaton,
) -> Result<MultiTapeAutomaton> {
    let mut by_radius: Option<MultiTapeAutomaton> = None;
    for r in 0..=c1 {
        let mut inner = intersect(lambda, &raw_complement(bad_x, state_cap)?)?;
        for tuple in enumerate(lambda_h, r, 1_000_000)? {
            let y = &tuple[0];
            let within = fix_tape(&tower.cumulative[r], 1, y)?;
            inner = determinize_minimize_capped(&intersect(&inner, &within)?, state_cap)?;
        }
        by_radius = Some(match by_radius {
            None => inner,
            Some(acc) => determinize_minimize_capped(&union(&acc, &inner)?, state_cap)?,
        });
    }
    Ok(by_radius.expect("at least r = 0"))
}

/// Exact comparison by emptiness of both differences; returns a word in the
/// symmetric difference when the languages differ.
fn compare_languages(
    a: &MultiTapeAutomaton,
    b: &MultiTapeAutomaton,
    state_cap: usize,
) -> Result<Option<Word>> {
    for (x, y) in [(a, b), (b, a)] {
        let diff = intersect(x, &raw_complement(y, state_cap)?)?;
        if let Some(string) = shortest_accepted(&diff) {
            let word = Word(string.iter().filter_map(|sym| sym.get(0)).collect());
            return Ok(Some(word));
        }
    }
    Ok(None)
}

/// Convenience for downstream checks: does the acceptor accept some geodesic
/// spelling of each listed word, and nothing else, up to the given length.
pub fn accepted_words(
    s: &MultiTapeAutomaton,
    maxlen: usize,
) -> Result<Vec<Word>> {
    Ok(enumerate(s, maxlen, 1_000_000)?
        .into_iter()
        .map(|mut t| t.remove(0))
        .collect())
}
