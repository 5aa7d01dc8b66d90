//! Subgroup balls `H ∩ B(R)` and quasiconvexity estimation.

use crate::cayley::geodesics::{chain_keys, enumerate_geodesics, DEFAULT_GEODESIC_CAP};
use crate::cayley::Ball;
use crate::error::{Error, Result};
use crate::groups::subgroup::SubgroupSpec;
use crate::groups::GroupOracle;
use crate::words::Word;
use std::collections::{HashMap, HashSet, VecDeque};

pub const DEFAULT_ENLARGEMENT: u32 = 3;
const ORBIT_CAP: usize = 2_000_000;

/// The intersection `H ∩ B(R)` together with an exactness certificate.
#[derive(Clone, Debug)]
pub struct SubgroupBall {
    /// Ball indices of the subgroup elements, ascending.
    pub members: Vec<u32>,
    /// Element keys, for O(1) membership tests.
    pub key_set: HashSet<Word>,
    /// Radius of the ambient ball.
    pub radius: u32,
    /// True when the set is certified to be exactly `H ∩ B(R)`: either an
    /// exact membership predicate was available, or growing the exploration
    /// bound added no elements.
    pub exact: bool,
}

impl SubgroupBall {
    pub fn contains_key(&self, key: &Word) -> bool {
        self.key_set.contains(key)
    }
}

/// Computes `H ∩ B(R)`.
///
/// With an exact membership predicate the ball is filtered directly.
/// Otherwise the orbit of the identity under right multiplication by the
/// subgroup generators is explored through elements of length at most
/// `enlargement * R`, and exactness is certified by checking that
/// `enlargement + 1` discovers nothing new.
pub fn subgroup_ball(
    ball: &Ball,
    oracle: &GroupOracle,
    spec: &SubgroupSpec,
    enlargement: u32,
) -> Result<SubgroupBall> {
    if spec.has_exact_membership() {
        let mut members = Vec::new();
        let mut key_set = HashSet::new();
        for i in 0..ball.len() as u32 {
            if spec.contains(ball.key(i), oracle)? == Some(true) {
                members.push(i);
                key_set.insert(ball.key(i).clone());
            }
        }
        return Ok(SubgroupBall {
            members,
            key_set,
            radius: ball.radius(),
            exact: true,
        });
    }

    let first = orbit_in_ball(ball, oracle, spec, enlargement)?;
    let second = orbit_in_ball(ball, oracle, spec, enlargement + 1)?;
    let exact = first.0 == second.0 && !first.1 && !second.1;
    let (keys, _) = second;
    let mut members: Vec<u32> = keys
        .iter()
        .filter_map(|k| ball.index_of(k))
        .collect();
    members.sort_unstable();
    let key_set = members.iter().map(|&i| ball.key(i).clone()).collect();
    Ok(SubgroupBall {
        members,
        key_set,
        radius: ball.radius(),
        exact,
    })
}

/// H-orbit exploration bounded by ambient length; returns the in-ball subset
/// and whether the orbit cap was hit.
fn orbit_in_ball(
    ball: &Ball,
    oracle: &GroupOracle,
    spec: &SubgroupSpec,
    enlargement: u32,
) -> Result<(HashSet<Word>, bool)> {
    let bound = (enlargement * ball.radius()) as usize;
    let mut seen: HashSet<Word> = HashSet::new();
    let mut queue = VecDeque::new();
    let mut truncated = false;
    seen.insert(Word::empty());
    queue.push_back(Word::empty());
    while let Some(g) = queue.pop_front() {
        for h in spec.generators() {
            let next = oracle.multiply(&g, h)?;
            if next.len() > bound || seen.contains(&next) {
                continue;
            }
            if seen.len() >= ORBIT_CAP {
                truncated = true;
                continue;
            }
            seen.insert(next.clone());
            queue.push_back(next);
        }
    }
    let radius = ball.radius() as usize;
    let in_ball = seen.into_iter().filter(|k| k.len() <= radius).collect();
    Ok((in_ball, truncated))
}

/// Lower bound for the quasiconvexity constant of `H`: the largest distance
/// from a vertex of a geodesic between two elements of `H ∩ B(R/2)` to the
/// set `H ∩ B(R)`.  Also reports the radius at which the estimate stabilized.
pub fn estimate_quasiconvexity(
    ball: &Ball,
    oracle: &GroupOracle,
    h_ball: &SubgroupBall,
) -> Result<QuasiconvexityEstimate> {
    if h_ball.members.is_empty() {
        return Err(Error::EmptySubgroupBall);
    }
    let radius = ball.radius();
    let mut per_radius = Vec::new();
    for r in 1..=radius {
        per_radius.push(quasiconvexity_at(ball, oracle, h_ball, r)?);
    }
    let k = *per_radius.last().unwrap();
    let mut stabilized_at = radius;
    for (idx, &v) in per_radius.iter().enumerate().rev() {
        if v == k {
            stabilized_at = idx as u32 + 1;
        } else {
            break;
        }
    }
    Ok(QuasiconvexityEstimate {
        k,
        stabilized_at,
        per_radius,
    })
}

#[derive(Clone, Debug)]
pub struct QuasiconvexityEstimate {
    pub k: u32,
    /// Smallest radius from which the estimate stayed constant.
    pub stabilized_at: u32,
    /// Estimate per ball radius, index 0 = radius 1.
    pub per_radius: Vec<u32>,
}

fn quasiconvexity_at(
    ball: &Ball,
    oracle: &GroupOracle,
    h_ball: &SubgroupBall,
    r: u32,
) -> Result<u32> {
    let pair_range = ball.ball(r / 2);
    let pairs: Vec<u32> = h_ball
        .members
        .iter()
        .copied()
        .filter(|&i| pair_range.contains(&i))
        .collect();
    let targets: Vec<&Word> = h_ball
        .members
        .iter()
        .filter(|&&i| ball.length(i) <= r)
        .map(|&i| ball.key(i))
        .collect();
    let mut worst = 0u32;
    let mut cache: HashMap<Word, u32> = HashMap::new();
    for &p in &pairs {
        for &q in &pairs {
            if p >= q {
                continue;
            }
            for word in enumerate_geodesics(ball, oracle, p, q, DEFAULT_GEODESIC_CAP)? {
                for v in chain_keys(ball, oracle, ball.key(p), &word)? {
                    let d = match cache.get(&v) {
                        Some(&d) => d,
                        None => {
                            let d = dist_to_set(ball, oracle, &v, &targets)?;
                            cache.insert(v.clone(), d);
                            d
                        }
                    };
                    worst = worst.max(d);
                }
            }
        }
    }
    Ok(worst)
}

/// min over the target set of the certified distance; uncertifiable
/// distances are skipped (the minimum is realized nearby).
fn dist_to_set(
    ball: &Ball,
    oracle: &GroupOracle,
    v: &Word,
    targets: &[&Word],
) -> Result<u32> {
    let mut best = u32::MAX;
    for &t in targets {
        if v == t {
            return Ok(0);
        }
        if let Some(d) = ball.distance_keys(oracle, v, t)? {
            best = best.min(d);
        }
    }
    Ok(if best == u32::MAX { 0 } else { best })
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

    fn texts(ball: &Ball, h: &SubgroupBall, o: &GroupOracle) -> Vec<String> {
        h.members
            .iter()
            .map(|&i| ball.key(i).to_text(o.alphabet()))
            .collect()
    }

    #[test]
    fn powers_of_a() {
        let (o, b) = setup(GroupFamily::Free { rank: 2 }, 3);
        let h = SubgroupSpec::parse("a", &o).unwrap();
        let hb = subgroup_ball(&b, &o, &h, DEFAULT_ENLARGEMENT).unwrap();
        assert!(hb.exact);
        assert_eq!(hb.members.len(), 7); // a^-3 .. a^3
    }

    #[test]
    fn powers_of_ab_in_radius_four() {
        let (o, b) = setup(GroupFamily::Free { rank: 2 }, 4);
        let h = SubgroupSpec::parse("ab", &o).unwrap();
        let hb = subgroup_ball(&b, &o, &h, DEFAULT_ENLARGEMENT).unwrap();
        let mut t = texts(&b, &hb, &o);
        t.sort();
        assert_eq!(t, vec!["", "BA", "BABA", "ab", "abab"]);
    }

    #[test]
    fn abelian_axis() {
        let (o, b) = setup(GroupFamily::FreeAbelian { rank: 2 }, 2);
        let h = SubgroupSpec::parse("x", &o).unwrap();
        let hb = subgroup_ball(&b, &o, &h, DEFAULT_ENLARGEMENT).unwrap();
        assert!(hb.exact);
        assert_eq!(hb.members.len(), 5); // x^-2 .. x^2
    }

    #[test]
    fn finite_subgroup_orbit_closes() {
        let (o, b) = setup(GroupFamily::FreeProductCyclic { m: 2, n: 3 }, 4);
        let h = SubgroupSpec::parse("b", &o).unwrap();
        let hb = subgroup_ball(&b, &o, &h, DEFAULT_ENLARGEMENT).unwrap();
        assert!(hb.exact);
        let mut t = texts(&b, &hb, &o);
        t.sort();
        assert_eq!(t, vec!["", "B", "b"]);
    }

    #[test]
    fn quasiconvexity_of_a_axis_is_zero() {
        let (o, b) = setup(GroupFamily::Free { rank: 2 }, 4);
        let h = SubgroupSpec::parse("a", &o).unwrap();
        let hb = subgroup_ball(&b, &o, &h, DEFAULT_ENLARGEMENT).unwrap();
        let est = estimate_quasiconvexity(&b, &o, &hb).unwrap();
        assert_eq!(est.k, 0);
    }

    #[test]
    fn quasiconvexity_of_ab_is_one() {
        let (o, b) = setup(GroupFamily::Free { rank: 2 }, 8);
        let h = SubgroupSpec::parse("ab", &o).unwrap();
        let hb = subgroup_ball(&b, &o, &h, DEFAULT_ENLARGEMENT).unwrap();
        let est = estimate_quasiconvexity(&b, &o, &hb).unwrap();
        // The geodesic from 1 to abab passes through a and aba, both at
        // distance 1 from H.
        assert_eq!(est.k, 1);
    }

    #[test]
    fn whole_group_is_zero_quasiconvex() {
        let (o, b) = setup(GroupFamily::Free { rank: 2 }, 3);
        let h = SubgroupSpec::parse("a,b", &o).unwrap();
        let hb = subgroup_ball(&b, &o, &h, DEFAULT_ENLARGEMENT).unwrap();
        assert_eq!(hb.members.len(), b.len());
        let est = estimate_quasiconvexity(&b, &o, &hb).unwrap();
        assert_eq!(est.k, 0);
    }
}
