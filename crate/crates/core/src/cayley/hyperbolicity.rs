//! Hyperbolicity estimation: the four-point condition and thin triangles.
//!
//! Both estimators return lower bounds for the true delta of the group; on a
//! fixed family they are nondecreasing in the ball radius.  Degenerate tuples
//! contribute zero.
//!
//! Four-point tuples range over the whole ball when the metric is the
//! oracle's own (all pairwise distances are then exact), and over `B(R/2)`
//! otherwise.  Thin-triangle triples always range over `B(R/2)`: geodesics
//! are enumerated through parent links, which requires the connecting element
//! to lie inside the ball.

use crate::cayley::geodesics::{chain_keys, enumerate_geodesics, DEFAULT_GEODESIC_CAP};
use crate::cayley::Ball;
use crate::error::Result;
use crate::groups::GroupOracle;
use crate::halfint::HalfInt;
use crate::parallel;
use crate::words::Word;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaMode {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

/// Exhaustive scans are quartic in the ball size.  Picks the largest radius
/// at most `preferred` whose ball stays within `size_cap` elements.
pub fn exhaustive_delta_radius(
    oracle: &crate::groups::GroupOracle,
    gens: &crate::cayley::BallAlphabet,
    preferred: u32,
    size_cap: usize,
) -> Result<u32> {
    let mut chosen = 0;
    for r in 0..=preferred {
        let ball = crate::cayley::Ball::build_capped(oracle, gens.clone(), r, size_cap + 1)
            .map(|b| b.len());
        match ball {
            Ok(n) if n <= size_cap => chosen = r,
            _ => break,
        }
    }
    Ok(chosen)
}

#[derive(Clone, Debug, Serialize)]
pub struct HyperbolicityProfile {
    /// Thin-triangle estimate: least eps with [pr] in the eps-neighborhood
    /// of [pq] union [qr], maximized over tested triples and all geodesic
    /// choices.
    pub delta_thin: HalfInt,
    /// Four-point estimate: max of min((p.r)_x, (q.r)_x) - (p.q)_x.
    pub delta_four_point: HalfInt,
    pub sample_size: usize,
    pub exhaustive: bool,
}

pub fn estimate_delta(
    ball: &Ball,
    oracle: &GroupOracle,
    mode: DeltaMode,
    workers: usize,
) -> Result<HyperbolicityProfile> {
    let quad_domain: Vec<u32> = if ball.gens().is_oracle_metric() {
        (0..ball.len() as u32).collect()
    } else {
        ball.ball(ball.radius() / 2).collect()
    };
    let triple_domain: Vec<u32> = ball.ball(ball.radius() / 2).collect();
    match mode {
        DeltaMode::Exhaustive => {
            let four = four_point_exhaustive(ball, oracle, &quad_domain, workers)?;
            let thin = thin_exhaustive(ball, oracle, &triple_domain)?;
            Ok(HyperbolicityProfile {
                delta_thin: thin,
                delta_four_point: four,
                sample_size: quad_domain.len(),
                exhaustive: true,
            })
        }
        DeltaMode::Sampled { count, seed } => {
            let mut rng = StdRng::seed_from_u64(seed);
            let mut four = HalfInt::ZERO;
            let mut thin = HalfInt::ZERO;
            // Thin triples cost two orders of magnitude more than four-point
            // quadruples (geodesic enumeration per sample), so they get a
            // tenth of the budget.
            let thin_budget = (count / 10).max(count.min(200));
            let pick = |rng: &mut StdRng, dom: &[u32]| dom[rng.random_range(0..dom.len())];
            for i in 0..count {
                let p = pick(&mut rng, &quad_domain);
                let q = pick(&mut rng, &quad_domain);
                let r = pick(&mut rng, &quad_domain);
                let x = pick(&mut rng, &quad_domain);
                four = four.max(four_point_defect(ball, oracle, p, q, r, x)?);
                if i < thin_budget {
                    let tp = pick(&mut rng, &triple_domain);
                    let tq = pick(&mut rng, &triple_domain);
                    let tr = pick(&mut rng, &triple_domain);
                    thin = thin.max(thin_triple(ball, oracle, tp, tq, tr)?);
                }
            }
            Ok(HyperbolicityProfile {
                delta_thin: thin,
                delta_four_point: four,
                sample_size: count,
                exhaustive: false,
            })
        }
    }
}

fn four_point_defect(
    ball: &Ball,
    oracle: &GroupOracle,
    p: u32,
    q: u32,
    r: u32,
    x: u32,
) -> Result<HalfInt> {
    let pr = ball.gromov_product(oracle, p, r, x)?;
    let qr = ball.gromov_product(oracle, q, r, x)?;
    let pq = ball.gromov_product(oracle, p, q, x)?;
    Ok((pr.min(qr) - pq).max(HalfInt::ZERO))
}

fn four_point_exhaustive(
    ball: &Ball,
    oracle: &GroupOracle,
    domain: &[u32],
    workers: usize,
) -> Result<HalfInt> {
    let n = domain.len();
    if n == 0 {
        return Ok(HalfInt::ZERO);
    }
    // Dense distance matrix; exhaustive scans are only viable on small balls.
    let mut dist = vec![0u16; n * n];
    for (ii, &i) in domain.iter().enumerate() {
        for (jj, &j) in domain.iter().enumerate() {
            dist[ii * n + jj] = ball.distance(oracle, i, j)? as u16;
        }
    }
    let d = |a: usize, b: usize| dist[a * n + b] as i64;
    let best = parallel::par_max(n, workers, 0, |p| {
        let mut acc = 0i64;
        for q in 0..n {
            for r in 0..n {
                for x in 0..n {
                    // Doubled Gromov products.
                    let pr = d(p, x) + d(r, x) - d(p, r);
                    let qr = d(q, x) + d(r, x) - d(q, r);
                    let pq = d(p, x) + d(q, x) - d(p, q);
                    let defect = pr.min(qr) - pq;
                    if defect > acc {
                        acc = defect;
                    }
                }
            }
        }
        acc
    });
    Ok(HalfInt::from_doubled(best))
}

fn thin_exhaustive(ball: &Ball, oracle: &GroupOracle, domain: &[u32]) -> Result<HalfInt> {
    let n = domain.len();
    let mut worst = HalfInt::ZERO;
    for p in 0..n {
        for q in p + 1..n {
            for r in q + 1..n {
                worst = worst.max(thin_triple(ball, oracle, domain[p], domain[q], domain[r])?);
            }
        }
    }
    Ok(worst)
}

/// Worst thinness over one triple, trying each vertex in the opposite role.
fn thin_triple(ball: &Ball, oracle: &GroupOracle, p: u32, q: u32, r: u32) -> Result<HalfInt> {
    let mut worst = 0i64;
    for (a, b, c) in [(p, q, r), (q, p, r), (p, r, q)] {
        worst = worst.max(thin_role(ball, oracle, a, b, c)?);
    }
    Ok(HalfInt::from_int(worst))
}

/// Thinness of the side [a c] against the union [a b] + [b c]: the largest,
/// over geodesics [a c] and vertices v on them, of the distance from v to the
/// worst-choice union of the two other sides.
fn thin_role(ball: &Ball, oracle: &GroupOracle, a: u32, b: u32, c: u32) -> Result<i64> {
    let side_ac = side_chains(ball, oracle, a, c)?;
    let side_ab = side_chains(ball, oracle, a, b)?;
    let side_bc = side_chains(ball, oracle, b, c)?;

    let mut worst = 0i64;
    for chain in &side_ac.chains {
        for &v in chain {
            let v = &side_ac.vertices[v];
            let da = worst_chain_distance(ball, oracle, v, &side_ab)?;
            let db = worst_chain_distance(ball, oracle, v, &side_bc)?;
            worst = worst.max(da.min(db));
        }
    }
    Ok(worst)
}

struct SideChains {
    vertices: Vec<Word>,
    chains: Vec<Vec<usize>>,
}

fn side_chains(ball: &Ball, oracle: &GroupOracle, x: u32, y: u32) -> Result<SideChains> {
    let mut vertices: Vec<Word> = Vec::new();
    let mut seen = std::collections::HashMap::new();
    let mut chains = Vec::new();
    for word in enumerate_geodesics(ball, oracle, x, y, DEFAULT_GEODESIC_CAP)? {
        let keys = chain_keys(ball, oracle, ball.key(x), &word)?;
        let chain = keys
            .into_iter()
            .map(|k| {
                *seen.entry(k.clone()).or_insert_with(|| {
                    vertices.push(k);
                    vertices.len() - 1
                })
            })
            .collect();
        chains.push(chain);
    }
    Ok(SideChains { vertices, chains })
}

/// max over geodesic chains of min over chain vertices of d(v, vertex).
/// Distances that cannot be certified from the ball are treated as infinite;
/// the minimum over a chain is realized nearby, so the result is exact.
fn worst_chain_distance(
    ball: &Ball,
    oracle: &GroupOracle,
    v: &Word,
    side: &SideChains,
) -> Result<i64> {
    let mut per_vertex: Vec<Option<i64>> = Vec::with_capacity(side.vertices.len());
    for u in &side.vertices {
        per_vertex.push(ball.distance_keys(oracle, v, u)?.map(|d| d as i64));
    }
    let mut worst = 0i64;
    for chain in &side.chains {
        let best = chain
            .iter()
            .filter_map(|&u| per_vertex[u])
            .min()
            .unwrap_or(i64::MAX);
        worst = worst.max(best);
    }
    Ok(worst)
}
