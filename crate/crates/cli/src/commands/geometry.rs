//! Geometry profile: delta estimates, quasiconvexity, ray constant, growth.

use crate::config::{Mode, RunConfig};
use cosetnet_core::cayley::hyperbolicity::{estimate_delta, DeltaMode};
use cosetnet_core::cayley::ray::ray_extension_constant;
use cosetnet_core::cayley::subgroup::{estimate_quasiconvexity, subgroup_ball, DEFAULT_ENLARGEMENT};
use cosetnet_core::cayley::Ball;
use cosetnet_core::conelang::cone_types::compute_cone_types;
use cosetnet_core::conelang::extension::context_for_subgroup;
use cosetnet_core::error::Result;
use cosetnet_core::groups::subgroup::SubgroupSpec;
use cosetnet_core::groups::GroupOracle;

pub fn run(config: &RunConfig) -> Result<i32> {
    let oracle = GroupOracle::new(config.family()?)?;
    let spec = SubgroupSpec::parse(&config.subgroup, &oracle)?;
    let ctx = context_for_subgroup(&oracle, &spec)?;
    let ball = Ball::build(&oracle, ctx.gens.clone(), config.radius)?;

    println!("family            {}", config.group);
    println!(
        "alphabet          {}",
        ctx.gens
            .alphabet()
            .symbols()
            .map(|s| ctx.gens.alphabet().name(s))
            .collect::<String>()
    );
    println!(
        "ball growth       {}",
        ball.sphere_sizes()
            .iter()
            .enumerate()
            .map(|(r, n)| format!("{r}:{n}"))
            .collect::<Vec<_>>()
            .join(" ")
    );

    let small_radius = cosetnet_core::cayley::hyperbolicity::exhaustive_delta_radius(
        &oracle,
        &ctx.gens,
        config.radius.min(4),
        150,
    )?;
    let small = Ball::build(&oracle, ctx.gens.clone(), small_radius)?;
    let exhaustive = estimate_delta(&small, &oracle, DeltaMode::Exhaustive, config.workers)?;
    println!(
        "delta exhaustive  thin {} / four-point {} (radius {})",
        exhaustive.delta_thin,
        exhaustive.delta_four_point,
        small.radius()
    );
    if let Mode::Sampled(count) = config.mode {
        let sampled = estimate_delta(
            &ball,
            &oracle,
            DeltaMode::Sampled {
                count,
                seed: config.seed,
            },
            config.workers,
        )?;
        println!(
            "delta sampled     thin {} / four-point {} ({} samples)",
            sampled.delta_thin, sampled.delta_four_point, count
        );
    }

    println!("ray constant      {}", ray_extension_constant(&ball, &oracle)?);

    let delta_ceil = exhaustive
        .delta_thin
        .max(exhaustive.delta_four_point)
        .ceil()
        .max(0) as u32;
    let k = config
        .signature_radius
        .unwrap_or(2 * delta_ceil + 2)
        .clamp(1, (config.radius - 1).max(1));
    match compute_cone_types(&ball, &oracle, k) {
        Ok(table) => {
            println!("cone types        {} (k = {k})", table.class_count());
            println!(
                "cones by radius   {}",
                table
                    .counts_by_radius()
                    .iter()
                    .enumerate()
                    .map(|(r, n)| format!("{r}:{n}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            );
        }
        Err(e) => println!("cone types        unavailable ({e})"),
    }

    if !spec.is_trivial() {
        let h_ball = subgroup_ball(&ball, &oracle, &spec, DEFAULT_ENLARGEMENT)?;
        let qc = estimate_quasiconvexity(&ball, &oracle, &h_ball)?;
        println!(
            "quasiconvexity K  {} (stable from radius {}, subgroup ball {})",
            qc.k,
            qc.stabilized_at,
            if h_ball.exact { "exact" } else { "heuristic" }
        );
    }
    Ok(0)
}
