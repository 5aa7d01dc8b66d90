//! Export of individual automata from the construction pipeline.

use crate::artifacts::write_automaton;
use crate::config::RunConfig;
use cosetnet_core::automata::determinize::trim;
use cosetnet_core::automata::enumerate::count_by_length;
use cosetnet_core::automata::MultiTapeAutomaton;
use cosetnet_core::cayley::hyperbolicity::{estimate_delta, DeltaMode};
use cosetnet_core::cayley::Ball;
use cosetnet_core::conelang::acceptor::geodesic_acceptor;
use cosetnet_core::conelang::cone_types::compute_cone_types;
use cosetnet_core::conelang::extension::context_for_subgroup;
use cosetnet_core::conelang::ln::{build_p, build_tower, TowerParams};
use cosetnet_core::conelang::quadruples::{build_r, build_r_c};
use cosetnet_core::conelang::word_difference::build_with_doubling;
use cosetnet_core::error::{Error, Result};
use cosetnet_core::groups::subgroup::SubgroupSpec;
use cosetnet_core::groups::GroupOracle;
use cosetnet_core::net::pipeline::run_analysis;
use cosetnet_core::words::{Symbol, Word};

#[derive(Clone, Debug)]
pub enum Which {
    Lambda,
    Ln(u32),
    S,
    P(char),
    R,
    Rc(char),
}

impl Which {
    pub fn parse(text: &str) -> Result<Which> {
        let bad = |reason: &str| Error::GroupSpecParse {
            input: text.to_string(),
            reason: reason.to_string(),
        };
        match text {
            "lambda" => Ok(Which::Lambda),
            "S" | "s" => Ok(Which::S),
            "R" | "r" => Ok(Which::R),
            other => {
                if let Some(n) = other.strip_prefix("Ln:") {
                    return Ok(Which::Ln(n.parse().map_err(|_| bad("bad level"))?));
                }
                if let Some(c) = other.strip_prefix("P:") {
                    let mut chars = c.chars();
                    if let (Some(letter), None) = (chars.next(), chars.next()) {
                        return Ok(Which::P(letter));
                    }
                    return Err(bad("P takes one letter"));
                }
                if let Some(c) = other.strip_prefix("Rc:") {
                    let mut chars = c.chars();
                    if let (Some(letter), None) = (chars.next(), chars.next()) {
                        return Ok(Which::Rc(letter));
                    }
                    return Err(bad("Rc takes one letter"));
                }
                Err(bad("expected lambda, Ln:N, S, P:c, R or Rc:c"))
            }
        }
    }

    fn stem(&self) -> String {
        match self {
            Which::Lambda => "lambda".into(),
            Which::Ln(n) => format!("Ln_{n}"),
            Which::S => "S".into(),
            Which::P(c) => format!("P_{c}"),
            Which::R => "R".into(),
            Which::Rc(c) => format!("Rc_{c}"),
        }
    }
}

struct GroupMachinery {
    oracle: GroupOracle,
    ball: Ball,
    lambda: MultiTapeAutomaton,
    table: cosetnet_core::conelang::cone_types::ConeTypeTable,
}

fn group_machinery(config: &RunConfig) -> Result<GroupMachinery> {
    let oracle = GroupOracle::new(config.family()?)?;
    let spec = SubgroupSpec::parse(&config.subgroup, &oracle)?;
    let ctx = context_for_subgroup(&oracle, &spec)?;
    let ball = Ball::build(&oracle, ctx.gens.clone(), config.radius)?;
    let small = Ball::build(&oracle, ctx.gens.clone(), config.radius.min(3))?;
    let profile = estimate_delta(&small, &oracle, DeltaMode::Exhaustive, config.workers)?;
    let delta_ceil = profile
        .delta_thin
        .max(profile.delta_four_point)
        .ceil()
        .max(0) as u32;
    let k = config
        .signature_radius
        .unwrap_or(2 * delta_ceil + 2)
        .clamp(1, (config.radius - 1).max(1));
    let table = compute_cone_types(&ball, &oracle, k)?;
    let lambda = geodesic_acceptor(&table, &ball)?;
    Ok(GroupMachinery {
        oracle,
        ball,
        lambda,
        table,
    })
}

fn letter(oracle: &GroupOracle, c: char) -> Result<Symbol> {
    oracle
        .alphabet()
        .symbol_by_name(c)
        .ok_or_else(|| Error::WordParse {
            input: c.to_string(),
            reason: "not a generator".into(),
        })
}

pub fn run(config: &RunConfig, which: &Which) -> Result<i32> {
    let automaton = match which {
        Which::Lambda => group_machinery(config)?.lambda,
        Which::R => {
            let m = group_machinery(config)?;
            build_r(&m.table, &m.ball, &m.lambda)?
        }
        Which::Rc(c) => {
            let m = group_machinery(config)?;
            let sym = letter(&m.oracle, *c)?;
            build_r_c(&build_r(&m.table, &m.ball, &m.lambda)?, sym)?
        }
        Which::P(c) => {
            let m = group_machinery(config)?;
            let sym = letter(&m.oracle, *c)?;
            let cap = (config.radius / 2).max(2);
            let (m_c, _) = build_with_doubling(
                &m.ball,
                &m.oracle,
                &m.lambda,
                &Word::single(sym),
                config.difference_bound.unwrap_or(2),
                cap,
            )?;
            let parts = build_p(&m.table, &m.lambda, &m_c, sym, 1_000_000)?;
            // Export all three parts; report on P_0.
            let dir = config.artifact_dir();
            for (i, part) in parts.iter().enumerate() {
                write_automaton(&dir, &format!("P{i}_{c}"), part)?;
            }
            parts.into_iter().next().unwrap()
        }
        Which::Ln(n) => {
            let m = group_machinery(config)?;
            let cap = (config.radius / 2).max(2);
            let tower = build_tower(
                &m.ball,
                &m.oracle,
                &m.table,
                &m.lambda,
                *n,
                TowerParams {
                    state_cap: cosetnet_core::automata::DEFAULT_STATE_CAP,
                    difference_bound: config.difference_bound.unwrap_or(2).clamp(1, cap),
                    difference_bound_cap: cap,
                },
            )?;
            tower.levels[*n as usize].clone()
        }
        Which::S => {
            let analysis = config.to_analysis_config()?;
            let outcome = run_analysis(&analysis)?;
            match outcome.s_language {
                Some(s) => s.automaton,
                None => {
                    return Err(Error::Extension(
                        outcome
                            .report
                            .automaton_error
                            .unwrap_or_else(|| "automaton unavailable".into()),
                    ))
                }
            }
        }
    };

    let dir = config.artifact_dir();
    let stem = which.stem();
    write_automaton(&dir, &stem, &automaton)?;
    let trimmed = trim(&automaton);
    println!("automaton         {stem}");
    println!("states            {}", trimmed.state_count());
    println!("tapes             {}", automaton.tapes());
    let counts = count_by_length(&automaton, 6)?;
    println!(
        "accepted by len   {}",
        counts
            .iter()
            .enumerate()
            .map(|(l, c)| format!("{l}:{c}"))
            .collect::<Vec<_>>()
            .join(" ")
    );
    println!("artifacts         {}", dir.display());
    Ok(0)
}
