//! Exact Cayley-ball geometry.
//!
//! A [`Ball`] is the exact metric ball `B(R)` around the identity in the
//! Cayley graph of a group for a chosen generator set.  It is built by
//! breadth-first search level by level, so the recorded length of every
//! element is the true word-metric length inside the ball.  Elements are
//! indexed in shortlex order of their canonical geodesic words.
//!
//! Generators need not be single letters of the group family: a
//! [`BallAlphabet`] maps symbols to arbitrary group elements, which is how
//! subgroup Cayley graphs and formally extended generating sets reuse the
//! same machinery.  When generators are exactly the family's own letters the
//! ball metric agrees with the oracle's normal-form length and distance
//! queries never leave the certified region.

pub mod geodesics;
pub mod hyperbolicity;
pub mod ray;
pub mod subgroup;

use crate::error::{Error, Result};
use crate::groups::GroupOracle;
use crate::halfint::HalfInt;
use crate::words::{Alphabet, Symbol, Word};
use serde::Serialize;
use std::collections::HashMap;

pub const DEFAULT_ELEMENT_CAP: usize = 5_000_000;

/// Generator set for a ball: symbols plus the group element each evaluates to.
#[derive(Clone, Debug)]
pub struct BallAlphabet {
    alphabet: Alphabet,
    /// Symbols that actually generate this graph (a subgroup ball uses a
    /// subset of the ambient alphabet).
    active: Vec<Symbol>,
    /// Normal form of each symbol of `alphabet` as a group element.
    element: Vec<Word>,
}

impl BallAlphabet {
    /// The family's own letters.
    pub fn for_oracle(oracle: &GroupOracle) -> Self {
        let alphabet = oracle.alphabet().clone();
        let active: Vec<Symbol> = alphabet.symbols().collect();
        let element = active.iter().map(|&s| Word::single(s)).collect();
        BallAlphabet {
            alphabet,
            active,
            element,
        }
    }

    /// A restriction of an existing alphabet to the given symbols, evaluating
    /// symbols through `element`.
    pub fn restricted(alphabet: Alphabet, active: Vec<Symbol>, element: Vec<Word>) -> Self {
        BallAlphabet {
            alphabet,
            active,
            element,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn active(&self) -> &[Symbol] {
        &self.active
    }

    pub fn element_of(&self, s: Symbol) -> &Word {
        &self.element[s.index()]
    }

    /// True when the generators are exactly the single letters of the
    /// ambient alphabet, so the oracle's length function is this metric.
    pub fn is_oracle_metric(&self) -> bool {
        self.active.len() == self.alphabet.len()
            && self
                .active
                .iter()
                .all(|&s| self.element[s.index()].symbols() == [s])
    }
}

/// The exact ball `B(R)` with per-element lengths, adjacency and parents.
#[derive(Clone, Debug)]
pub struct Ball {
    gens: BallAlphabet,
    radius: u32,
    /// Canonical geodesic word over the ball alphabet, per element.
    words: Vec<Word>,
    /// Oracle normal form, per element; doubles as the element key.
    keys: Vec<Word>,
    lens: Vec<u32>,
    /// In-ball neighbors `(symbol, target)`, sorted by symbol.
    adj: Vec<Vec<(Symbol, u32)>>,
    index: HashMap<Word, u32>,
    /// `sphere_start[n]` = index of the first element of length `n`.
    sphere_start: Vec<usize>,
}

impl Ball {
    pub fn build(oracle: &GroupOracle, gens: BallAlphabet, radius: u32) -> Result<Ball> {
        Self::build_capped(oracle, gens, radius, element_cap_from_env())
    }

    pub fn build_capped(
        oracle: &GroupOracle,
        gens: BallAlphabet,
        radius: u32,
        cap: usize,
    ) -> Result<Ball> {
        let mut words = vec![Word::empty()];
        let mut keys = vec![Word::empty()];
        let mut lens = vec![0u32];
        let mut adj: Vec<Vec<(Symbol, u32)>> = vec![Vec::new()];
        let mut index = HashMap::new();
        index.insert(Word::empty(), 0u32);
        let mut sphere_start = vec![0usize, 1];

        let mut level: Vec<u32> = vec![0];
        for n in 0..radius {
            // Discover level n+1: products of level-n elements with every
            // generator.  `found` maps new keys to (best word, discoverers).
            let mut found: HashMap<Word, (Word, Vec<(u32, Symbol)>)> = HashMap::new();
            for &i in &level {
                for &s in gens.active.iter() {
                    let key = oracle.multiply(&keys[i as usize], gens.element_of(s))?;
                    if let Some(&j) = index.get(&key) {
                        adj[i as usize].push((s, j));
                    } else {
                        let mut cand = words[i as usize].clone();
                        cand.push(s);
                        let entry = found
                            .entry(key)
                            .or_insert_with(|| (cand.clone(), Vec::new()));
                        if cand.shortlex_cmp(&entry.0) == std::cmp::Ordering::Less {
                            entry.0 = cand;
                        }
                        entry.1.push((i, s));
                    }
                }
            }
            let mut new_elems: Vec<(Word, Word, Vec<(u32, Symbol)>)> = found
                .into_iter()
                .map(|(key, (word, discoverers))| (word, key, discoverers))
                .collect();
            new_elems.sort_by(|a, b| a.0.shortlex_cmp(&b.0));
            if words.len() + new_elems.len() > cap {
                return Err(Error::BallBudget {
                    count: words.len() + new_elems.len(),
                    radius: n + 1,
                    cap,
                });
            }
            let mut next_level = Vec::with_capacity(new_elems.len());
            for (word, key, discoverers) in new_elems {
                let j = words.len() as u32;
                index.insert(key.clone(), j);
                words.push(word);
                keys.push(key);
                lens.push(n + 1);
                adj.push(Vec::new());
                for (i, s) in discoverers {
                    adj[i as usize].push((s, j));
                }
                next_level.push(j);
            }
            sphere_start.push(words.len());
            level = next_level;
        }
        // The outermost sphere was never processed as a source: record its
        // in-ball edges so adjacency is complete.
        for &i in &level {
            for &s in gens.active.iter() {
                let key = oracle.multiply(&keys[i as usize], gens.element_of(s))?;
                if let Some(&j) = index.get(&key) {
                    adj[i as usize].push((s, j));
                }
            }
        }
        for list in adj.iter_mut() {
            list.sort();
        }
        Ok(Ball {
            gens,
            radius,
            words,
            keys,
            lens,
            adj,
            index,
            sphere_start,
        })
    }

    pub fn gens(&self) -> &BallAlphabet {
        &self.gens
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn word(&self, i: u32) -> &Word {
        &self.words[i as usize]
    }

    pub fn key(&self, i: u32) -> &Word {
        &self.keys[i as usize]
    }

    pub fn length(&self, i: u32) -> u32 {
        self.lens[i as usize]
    }

    pub fn neighbors(&self, i: u32) -> &[(Symbol, u32)] {
        &self.adj[i as usize]
    }

    /// Predecessors on geodesics from the identity.
    pub fn parents(&self, i: u32) -> impl Iterator<Item = (Symbol, u32)> + '_ {
        let target = self.lens[i as usize].wrapping_sub(1);
        self.adj[i as usize]
            .iter()
            .copied()
            .filter(move |&(_, j)| self.lens[j as usize] == target)
    }

    pub fn index_of(&self, key: &Word) -> Option<u32> {
        self.index.get(key).copied()
    }

    /// Elements of length exactly `n`.
    pub fn sphere(&self, n: u32) -> std::ops::Range<u32> {
        let n = n as usize;
        if n + 1 >= self.sphere_start.len() {
            return 0..0;
        }
        let lo = self.sphere_start[n] as u32;
        let hi = self.sphere_start[n + 1] as u32;
        lo..hi
    }

    /// Elements of length at most `n`.
    pub fn ball(&self, n: u32) -> std::ops::Range<u32> {
        let hi = self.sphere_start[((n as usize) + 1).min(self.sphere_start.len() - 1)];
        0..hi as u32
    }

    pub fn sphere_sizes(&self) -> Vec<usize> {
        (0..self.sphere_start.len() - 1)
            .map(|n| self.sphere_start[n + 1] - self.sphere_start[n])
            .collect()
    }

    /// Length of the element `key` in this metric, if certifiable: by ball
    /// lookup, or through the oracle when the generators are the family's own
    /// letters (normal forms are geodesic).
    pub fn length_of_key(&self, oracle: &GroupOracle, key: &Word) -> Result<Option<u32>> {
        if let Some(i) = self.index_of(key) {
            return Ok(Some(self.lens[i as usize]));
        }
        if self.gens.is_oracle_metric() {
            return Ok(Some(oracle.length(key)? as u32));
        }
        Ok(None)
    }

    /// Exact word-metric distance between two ball elements.
    pub fn distance(&self, oracle: &GroupOracle, x: u32, y: u32) -> Result<u32> {
        let key = oracle.multiply(&oracle.invert(self.key(x))?, self.key(y))?;
        match self.length_of_key(oracle, &key)? {
            Some(d) => Ok(d),
            None => Err(Error::OutOfBallDistance(key.to_text(self.gens.alphabet()))),
        }
    }

    /// Distance between arbitrary element keys, or `None` when it cannot be
    /// certified from this ball.
    pub fn distance_keys(&self, oracle: &GroupOracle, x: &Word, y: &Word) -> Result<Option<u32>> {
        let key = oracle.multiply(&oracle.invert(x)?, y)?;
        self.length_of_key(oracle, &key)
    }

    /// Gromov product `(p . q)_base`, an exact half-integer.
    pub fn gromov_product(
        &self,
        oracle: &GroupOracle,
        p: u32,
        q: u32,
        base: u32,
    ) -> Result<HalfInt> {
        let dp = self.distance(oracle, p, base)? as i64;
        let dq = self.distance(oracle, q, base)? as i64;
        let dpq = self.distance(oracle, p, q)? as i64;
        Ok(HalfInt::from_doubled(dp + dq - dpq))
    }

    /// JSON export with deterministic shortlex element order.
    pub fn to_json(&self, family: &str) -> BallJson {
        let alphabet = self.gens.alphabet();
        BallJson {
            family: family.to_string(),
            radius: self.radius,
            elements: self.words.iter().map(|w| w.to_text(alphabet)).collect(),
            length: self.lens.clone(),
            edges: (0..self.words.len())
                .flat_map(|i| {
                    self.adj[i]
                        .iter()
                        .map(move |&(s, j)| (i as u32, alphabet.name(s).to_string(), j))
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct BallJson {
    pub family: String,
    pub radius: u32,
    pub elements: Vec<String>,
    pub length: Vec<u32>,
    pub edges: Vec<(u32, String, u32)>,
}

fn element_cap_from_env() -> usize {
    std::env::var("COSETNET_MAX_ELEMENTS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_ELEMENT_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupFamily;

    fn ball(family: GroupFamily, radius: u32) -> (GroupOracle, Ball) {
        let o = GroupOracle::new(family).unwrap();
        let b = Ball::build(&o, BallAlphabet::for_oracle(&o), radius).unwrap();
        (o, b)
    }

    #[test]
    fn free2_ball_counts() {
        let (_, b) = ball(GroupFamily::Free { rank: 2 }, 2);
        // 1 + 4 + 4*3 reduced words.
        assert_eq!(b.len(), 17);
        assert_eq!(b.sphere_sizes(), vec![1, 4, 12]);
    }

    #[test]
    fn zfree2_ball_counts() {
        let (_, b) = ball(GroupFamily::FreeAbelian { rank: 2 }, 2);
        // Lattice diamond of L1-radius 2.
        assert_eq!(b.len(), 13);
    }

    #[test]
    fn surface_ball_radius_one() {
        let (_, b) = ball(GroupFamily::Surface { genus: 2 }, 1);
        assert_eq!(b.len(), 9);
    }

    #[test]
    fn parents_are_one_shorter_and_nonempty() {
        let (_, b) = ball(GroupFamily::FreeProductCyclic { m: 2, n: 3 }, 5);
        for i in 0..b.len() as u32 {
            if b.length(i) == 0 {
                continue;
            }
            let parents: Vec<_> = b.parents(i).collect();
            assert!(!parents.is_empty(), "element {i} has no parents");
            for (_, p) in parents {
                assert_eq!(b.length(p), b.length(i) - 1);
            }
        }
    }

    #[test]
    fn adjacent_lengths_differ_by_at_most_one() {
        let (_, b) = ball(GroupFamily::FreeAbelian { rank: 2 }, 3);
        for i in 0..b.len() as u32 {
            for &(_, j) in b.neighbors(i) {
                let di = b.length(i) as i64;
                let dj = b.length(j) as i64;
                assert!((di - dj).abs() <= 1);
            }
        }
    }

    #[test]
    fn distances_and_gromov_products() {
        let (o, b) = ball(GroupFamily::Free { rank: 2 }, 2);
        let a = b.index_of(&Word::parse("a", o.alphabet()).unwrap()).unwrap();
        let bb = b.index_of(&Word::parse("b", o.alphabet()).unwrap()).unwrap();
        let ab = b.index_of(&Word::parse("ab", o.alphabet()).unwrap()).unwrap();
        let one = b.index_of(&Word::empty()).unwrap();
        assert_eq!(b.distance(&o, a, a).unwrap(), 0);
        assert_eq!(b.distance(&o, a, bb).unwrap(), 2);
        assert_eq!(b.gromov_product(&o, a, a, a).unwrap(), HalfInt::ZERO);
        assert_eq!(b.gromov_product(&o, a, bb, one).unwrap(), HalfInt::ZERO);
        assert_eq!(
            b.gromov_product(&o, a, ab, one).unwrap(),
            HalfInt::from_int(1)
        );
    }

    #[test]
    fn triangle_inequality_exhaustive_small() {
        let (o, b) = ball(GroupFamily::FreeAbelian { rank: 2 }, 3);
        let n = b.len() as u32;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let dxz = b.distance(&o, x, z).unwrap();
                    let dxy = b.distance(&o, x, y).unwrap();
                    let dyz = b.distance(&o, y, z).unwrap();
                    assert!(dxz <= dxy + dyz);
                }
            }
        }
    }

    #[test]
    fn ball_words_match_oracle_normal_forms() {
        for family in [
            GroupFamily::Free { rank: 2 },
            GroupFamily::FreeAbelian { rank: 2 },
            GroupFamily::FreeProductCyclic { m: 2, n: 3 },
            GroupFamily::Surface { genus: 2 },
        ] {
            let (o, b) = ball(family, 3);
            for i in 0..b.len() as u32 {
                assert_eq!(b.word(i), b.key(i), "family {family}");
                assert_eq!(b.length(i) as usize, b.key(i).len());
                assert_eq!(&o.normal_form(b.word(i)).unwrap(), b.key(i));
            }
        }
    }

    #[test]
    fn element_cap_is_enforced() {
        let o = GroupOracle::new(GroupFamily::Free { rank: 2 }).unwrap();
        let err = Ball::build_capped(&o, BallAlphabet::for_oracle(&o), 5, 100).unwrap_err();
        assert!(matches!(err, Error::BallBudget { .. }));
    }
}
