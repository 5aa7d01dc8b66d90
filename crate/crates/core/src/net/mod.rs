//! Brute-force minimal-length coset machinery: sigma, the transversal set
//! `S`, coset tables and sections.
//!
//! Everything here is oracle-driven set computation, independent of the
//! automaton pipeline; the two are reconciled by the crosscheck in
//! [`checks`].  All computations follow a safe-radius policy: a value is
//! only produced when every witness it needs is certifiably inside the
//! explored region.

pub mod checks;
pub mod defect;
pub mod pipeline;
pub mod report;

use crate::cayley::Ball;
use crate::error::{Error, Result};
use crate::groups::subgroup::SubgroupSpec;
use crate::groups::GroupOracle;
use crate::words::Word;
use std::collections::{HashMap, HashSet, VecDeque};

const ORBIT_CAP: usize = 4_000_000;

/// `H` intersected with the ball of `radius`, as element keys with their
/// ambient lengths.
#[derive(Clone, Debug)]
pub struct SubgroupSet {
    pub lengths: HashMap<Word, u32>,
    pub radius: u32,
    /// Certified complete: the exploration bound was not clipped and growing
    /// it further found nothing new.
    pub exact: bool,
}

impl SubgroupSet {
    pub fn contains(&self, key: &Word) -> bool {
        self.lengths.contains_key(key)
    }

    /// Members of length at most `bound`, with lengths.
    pub fn up_to(&self, bound: u32) -> impl Iterator<Item = (&Word, u32)> + '_ {
        self.lengths
            .iter()
            .filter(move |(_, &l)| l <= bound)
            .map(|(k, &l)| (k, l))
    }
}

/// Explores the subgroup orbit out to ambient length `radius`, passing
/// through elements up to `enlargement * radius`, and certifies exactness by
/// checking that `enlargement + 1` adds nothing.  Lengths are certified by
/// the ball (falling back to the oracle when the generators are the family's
/// own letters); elements whose length cannot be certified are pruned.
pub fn subgroup_set(
    ball: &Ball,
    oracle: &GroupOracle,
    spec: &SubgroupSpec,
    radius: u32,
    enlargement: u32,
) -> Result<SubgroupSet> {
    let run = |factor: u32| -> Result<(HashMap<Word, u32>, bool)> {
        let bound = factor * radius;
        let mut seen: HashSet<Word> = HashSet::new();
        let mut found: HashMap<Word, u32> = HashMap::new();
        let mut queue: VecDeque<Word> = VecDeque::new();
        let mut clipped = false;
        seen.insert(Word::empty());
        found.insert(Word::empty(), 0);
        queue.push_back(Word::empty());
        while let Some(g) = queue.pop_front() {
            for h in spec.generators() {
                let next = oracle.multiply(&g, h)?;
                if seen.contains(&next) {
                    continue;
                }
                let Some(len) = ball.length_of_key(oracle, &next)? else {
                    clipped = true;
                    continue;
                };
                if len > bound {
                    continue;
                }
                if seen.len() >= ORBIT_CAP {
                    clipped = true;
                    continue;
                }
                seen.insert(next.clone());
                if len <= radius {
                    found.insert(next.clone(), len);
                }
                queue.push_back(next);
            }
        }
        Ok((found, clipped))
    };
    let (first, clip1) = run(enlargement)?;
    let (second, clip2) = run(enlargement + 1)?;
    let exact = !clip1 && !clip2 && first == second;
    Ok(SubgroupSet {
        lengths: second,
        radius,
        exact,
    })
}

/// `sigma(g) = min |g h|` over the subgroup.  Requires the subgroup set to
/// reach radius `2 |g|`; any `h` improving on `h = 1` satisfies
/// `|h| <= |g| + |gh| < 2 |g|`.
pub fn sigma(
    ball: &Ball,
    oracle: &GroupOracle,
    h_set: &SubgroupSet,
    g: &Word,
    g_len: u32,
) -> Result<u32> {
    if h_set.radius < 2 * g_len {
        return Err(Error::InsufficientSubgroupRadius {
            have: h_set.radius,
            need: 2 * g_len,
        });
    }
    let mut best = g_len;
    for (h, _) in h_set.up_to(2 * g_len) {
        let gh = oracle.multiply(g, h)?;
        if let Some(len) = ball.length_of_key(oracle, &gh)? {
            best = best.min(len);
        }
    }
    Ok(best)
}

/// The transversal candidates: `S = {g : |g| = sigma(g)}`, over the ball of
/// `measure_radius`.
pub fn compute_s_bruteforce(
    ball: &Ball,
    oracle: &GroupOracle,
    h_set: &SubgroupSet,
    measure_radius: u32,
) -> Result<Vec<u32>> {
    if h_set.radius < 2 * measure_radius {
        return Err(Error::InsufficientSubgroupRadius {
            have: h_set.radius,
            need: 2 * measure_radius,
        });
    }
    let mut out = Vec::new();
    'next: for g in ball.ball(measure_radius) {
        let g_len = ball.length(g);
        for (h, _) in h_set.up_to(2 * g_len) {
            let gh = oracle.multiply(ball.key(g), h)?;
            if let Some(len) = ball.length_of_key(oracle, &gh)? {
                if len < g_len {
                    continue 'next;
                }
            }
        }
        out.push(g);
    }
    Ok(out)
}

/// Right cosets of the subgroup meeting the measured ball.
#[derive(Clone, Debug)]
pub struct CosetTable {
    pub measure_radius: u32,
    /// Per ball element of the measured region: its coset id.
    pub coset_of: HashMap<u32, u32>,
    /// Canonical (shortlex-least minimal-length) coset member.
    pub canonical: Vec<Word>,
    /// Minimal length in the coset.
    pub sigma: Vec<u32>,
    /// Ball indices of `S` members, ascending (= shortlex order).
    pub s_members: Vec<Vec<u32>>,
}

impl CosetTable {
    pub fn coset_count(&self) -> usize {
        self.canonical.len()
    }

    /// The coset id of an arbitrary in-region element key.
    pub fn coset_of_key(&self, ball: &Ball, key: &Word) -> Option<u32> {
        ball.index_of(key).and_then(|i| self.coset_of.get(&i).copied())
    }
}

pub fn coset_table(
    ball: &Ball,
    oracle: &GroupOracle,
    h_set: &SubgroupSet,
    s_elements: &[u32],
    measure_radius: u32,
) -> Result<CosetTable> {
    if h_set.radius < 2 * measure_radius {
        return Err(Error::InsufficientSubgroupRadius {
            have: h_set.radius,
            need: 2 * measure_radius,
        });
    }
    let s_set: HashSet<u32> = s_elements.iter().copied().collect();
    let mut ids: HashMap<Word, u32> = HashMap::new();
    let mut coset_of = HashMap::new();
    let mut canonical = Vec::new();
    let mut sigma_v = Vec::new();
    let mut s_members: Vec<Vec<u32>> = Vec::new();
    for g in ball.ball(measure_radius) {
        let g_len = ball.length(g);
        // Canonical coset key: shortlex-least among g h; minimal-length
        // members are reachable within |h| <= 2 |g|.
        let mut best = ball.key(g).clone();
        for (h, _) in h_set.up_to(2 * g_len) {
            let gh = oracle.multiply(ball.key(g), h)?;
            if ball.length_of_key(oracle, &gh)?.is_some()
                && gh.shortlex_cmp(&best) == std::cmp::Ordering::Less
            {
                best = gh;
            }
        }
        let next = ids.len() as u32;
        let id = *ids.entry(best.clone()).or_insert(next);
        if id == next {
            canonical.push(best.clone());
            sigma_v.push(best.len() as u32);
            s_members.push(Vec::new());
        }
        coset_of.insert(g, id);
        if s_set.contains(&g) {
            s_members[id as usize].push(g);
        }
    }
    Ok(CosetTable {
        measure_radius,
        coset_of,
        canonical,
        sigma: sigma_v,
        s_members,
    })
}

/// A section of the coset space: one transversal point per coset, plus the
/// worst-case (shortlex-greatest) choice for robustness comparison.
#[derive(Clone, Debug)]
pub struct Section {
    pub by_coset: Vec<u32>,
    pub worst_by_coset: Vec<u32>,
}

pub fn build_section(table: &CosetTable) -> Result<Section> {
    let mut by_coset = Vec::with_capacity(table.coset_count());
    let mut worst = Vec::with_capacity(table.coset_count());
    for members in &table.s_members {
        let first = *members.first().ok_or(Error::EmptyCoset)?;
        let last = *members.last().unwrap();
        by_coset.push(first);
        worst.push(last);
    }
    Ok(Section {
        by_coset,
        worst_by_coset: worst,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::BallAlphabet;
    use crate::groups::GroupFamily;

    fn setup(family: GroupFamily, radius: u32) -> (GroupOracle, Ball) {
        let o = GroupOracle::new(family).unwrap();
        let b = Ball::build(&o, BallAlphabet::for_oracle(&o), radius).unwrap();
        (o, b)
    }

    #[test]
    fn sigma_examples_free_a() {
        let (o, b) = setup(GroupFamily::Free { rank: 2 }, 8);
        let h = SubgroupSpec::parse("a", &o).unwrap();
        let hs = subgroup_set(&b, &o, &h, 8, 3).unwrap();
        assert!(hs.exact);
        let w = |t: &str| Word::parse(t, o.alphabet()).unwrap();
        assert_eq!(sigma(&b, &o, &hs, &w("b"), 1).unwrap(), 1);
        // h in H has sigma 0.
        assert_eq!(sigma(&b, &o, &hs, &w("aaa"), 3).unwrap(), 0);
        // b a^3 reduces to b on the right.
        assert_eq!(sigma(&b, &o, &hs, &w("baaa"), 4).unwrap(), 1);
    }

    #[test]
    fn brute_s_of_free_a() {
        let (o, b) = setup(GroupFamily::Free { rank: 2 }, 6);
        let h = SubgroupSpec::parse("a", &o).unwrap();
        let hs = subgroup_set(&b, &o, &h, 6, 3).unwrap();
        let s = compute_s_bruteforce(&b, &o, &hs, 3).unwrap();
        // {1} plus reduced words ending in b or B.
        for &g in &s {
            let word = b.word(g);
            let ok = word.is_empty()
                || matches!(
                    o.alphabet().name(*word.symbols().last().unwrap()),
                    'b' | 'B'
                );
            assert!(ok, "unexpected member {}", word.to_text(o.alphabet()));
        }
        let expect: usize = 1 + [1usize, 2, 3]
            .iter()
            .map(|&n| {
                // Reduced words of length n ending in b or B.
                2 * 3usize.pow((n - 1) as u32)
            })
            .sum::<usize>();
        assert_eq!(s.len(), expect);
    }

    #[test]
    fn trivial_and_whole_group_transversals() {
        let (o, b) = setup(GroupFamily::Free { rank: 2 }, 4);
        let trivial = SubgroupSpec::parse("", &o).unwrap();
        let hs = subgroup_set(&b, &o, &trivial, 4, 3).unwrap();
        let s = compute_s_bruteforce(&b, &o, &hs, 2).unwrap();
        assert_eq!(s.len(), b.ball(2).len());

        let whole = SubgroupSpec::parse("a,b", &o).unwrap();
        let hs = subgroup_set(&b, &o, &whole, 4, 3).unwrap();
        let s = compute_s_bruteforce(&b, &o, &hs, 2).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(b.length(s[0]), 0);
    }

    #[test]
    fn coset_table_and_section_free_a() {
        let (o, b) = setup(GroupFamily::Free { rank: 2 }, 8);
        let h = SubgroupSpec::parse("a", &o).unwrap();
        let hs = subgroup_set(&b, &o, &h, 8, 3).unwrap();
        let s = compute_s_bruteforce(&b, &o, &hs, 4).unwrap();
        let table = coset_table(&b, &o, &hs, &s, 4).unwrap();
        let section = build_section(&table).unwrap();
        // s(bH) = b; s(H) = 1.
        let w = |t: &str| Word::parse(t, o.alphabet()).unwrap();
        let b_id = table.coset_of_key(&b, &w("b")).unwrap();
        assert_eq!(b.word(section.by_coset[b_id as usize]).to_text(o.alphabet()), "b");
        let one_id = table.coset_of_key(&b, &Word::empty()).unwrap();
        assert_eq!(b.length(section.by_coset[one_id as usize]), 0);
        // Every coset member shares the coset id with its translates.
        let ba_id = table.coset_of_key(&b, &w("ba")).unwrap();
        assert_eq!(b_id, ba_id);
        assert_ne!(b_id, one_id);
        // Unique minima for this pair: section and worst-case agree.
        assert_eq!(section.by_coset, section.worst_by_coset);
    }

    #[test]
    fn abelian_axis_section() {
        let (o, b) = setup(GroupFamily::FreeAbelian { rank: 2 }, 8);
        let h = SubgroupSpec::parse("x", &o).unwrap();
        let hs = subgroup_set(&b, &o, &h, 8, 3).unwrap();
        let s = compute_s_bruteforce(&b, &o, &hs, 4).unwrap();
        let table = coset_table(&b, &o, &hs, &s, 4).unwrap();
        let section = build_section(&table).unwrap();
        // s((n, m) + H) = (0, m): the y-axis.
        let w = |t: &str| Word::parse(t, o.alphabet()).unwrap();
        let id = table.coset_of_key(&b, &w("xxy")).unwrap();
        assert_eq!(
            b.word(section.by_coset[id as usize]).to_text(o.alphabet()),
            "y"
        );
        for (coset, &rep) in section.by_coset.iter().enumerate() {
            let v = o.exponent_vector(b.key(rep));
            assert_eq!(v[0], 0, "coset {coset}");
        }
    }

    #[test]
    fn insufficient_radius_is_an_error() {
        let (o, b) = setup(GroupFamily::Free { rank: 2 }, 4);
        let h = SubgroupSpec::parse("a", &o).unwrap();
        let hs = subgroup_set(&b, &o, &h, 4, 3).unwrap();
        let err = compute_s_bruteforce(&b, &o, &hs, 3).unwrap_err();
        assert!(matches!(err, Error::InsufficientSubgroupRadius { .. }));
    }
}
