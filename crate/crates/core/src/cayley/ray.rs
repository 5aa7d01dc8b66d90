//! Finite-scale surrogate for the geodesic-ray extension constant.
//!
//! Measures the least `C` such that every element of `B(R - C)` lies within
//! `C` of some element on a geodesic from the identity to the sphere of
//! radius `R`.  Rays cannot be represented at desk scale; geodesics to the
//! outer sphere stand in for them.

use crate::cayley::Ball;
use crate::error::Result;
use crate::groups::GroupOracle;

pub fn ray_extension_constant(ball: &Ball, oracle: &GroupOracle) -> Result<u32> {
    let radius = ball.radius();
    let n = ball.len();
    // An element lies on a geodesic from 1 to the sphere of radius R iff it
    // has a descendant chain reaching length R: mark the sphere and close
    // backwards over parent links.
    let mut marked = vec![false; n];
    for i in ball.sphere(radius) {
        marked[i as usize] = true;
    }
    for len in (0..radius).rev() {
        for i in ball.sphere(len) {
            let extendable = ball.neighbors(i).iter().any(|&(_, j)| {
                ball.length(j) == len + 1 && marked[j as usize]
            });
            if extendable {
                marked[i as usize] = true;
            }
        }
    }

    // Every marked element needs C >= 0; an unmarked g constrains C only
    // while g is inside B(R - C), so it forces C >= min(D(g), R - |g| + 1).
    let marked_keys: Vec<u32> = (0..n as u32).filter(|&i| marked[i as usize]).collect();
    let mut required = 0u32;
    for g in 0..n as u32 {
        if marked[g as usize] {
            continue;
        }
        let mut dist = u32::MAX;
        for &m in &marked_keys {
            if let Some(d) = ball.distance_keys(oracle, ball.key(g), ball.key(m))? {
                dist = dist.min(d);
                if dist <= 1 {
                    break;
                }
            }
        }
        let escape = radius - ball.length(g) + 1;
        required = required.max(dist.min(escape));
    }
    Ok(required)
}
