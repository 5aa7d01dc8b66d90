//! Geodesic enumeration inside a ball.

use crate::cayley::Ball;
use crate::error::{Error, Result};
use crate::groups::GroupOracle;
use crate::words::{Symbol, Word};

pub const DEFAULT_GEODESIC_CAP: usize = 100_000;

/// All geodesic words from `x` to `y`, obtained by walking the parent links
/// of `x^{-1} y` backwards.  Words are returned in sorted order.  `x = y`
/// yields exactly the empty geodesic.
pub fn enumerate_geodesics(
    ball: &Ball,
    oracle: &GroupOracle,
    x: u32,
    y: u32,
    cap: usize,
) -> Result<Vec<Word>> {
    let key = oracle.multiply(&oracle.invert(ball.key(x))?, ball.key(y))?;
    let g = ball
        .index_of(&key)
        .ok_or_else(|| Error::OutOfBall(key.to_text(ball.gens().alphabet())))?;
    let mut out = Vec::new();
    let mut suffix: Vec<Symbol> = Vec::new();
    walk(ball, g, &mut suffix, &mut out, cap)?;
    out.sort_by(|a, b| a.shortlex_cmp(b));
    Ok(out)
}

fn walk(
    ball: &Ball,
    g: u32,
    suffix: &mut Vec<Symbol>,
    out: &mut Vec<Word>,
    cap: usize,
) -> Result<()> {
    if ball.length(g) == 0 {
        if out.len() >= cap {
            return Err(Error::GeodesicCap(cap));
        }
        out.push(Word(suffix.iter().rev().copied().collect()));
        return Ok(());
    }
    for (s, p) in ball.parents(g) {
        // The edge p --s--> g exists iff g's parent link via s^{-1} does;
        // record the forward letter.
        let forward = ball.gens().alphabet().inverse(s);
        suffix.push(forward);
        walk(ball, p, suffix, out, cap)?;
        suffix.pop();
    }
    Ok(())
}

/// The vertex chain of a geodesic word starting at `from`, as element keys.
pub fn chain_keys(
    ball: &Ball,
    oracle: &GroupOracle,
    from: &Word,
    word: &Word,
) -> Result<Vec<Word>> {
    let mut out = Vec::with_capacity(word.len() + 1);
    let mut cur = from.clone();
    out.push(cur.clone());
    for &s in word.symbols() {
        cur = oracle.multiply(&cur, ball.gens().element_of(s))?;
        out.push(cur.clone());
    }
    Ok(out)
}
