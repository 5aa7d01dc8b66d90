//! End-to-end analysis of one (group, subgroup, radius) configuration:
//! geometry estimates, the regular-language transversal, the brute-force
//! transversal, their crosscheck, and the net certificate.

use super::checks::{action_displacement, check_same_coset_bound, oracle_crosscheck};
use super::defect::{net_defect, net_defect_with_margin_policy};
use super::report::{DefectRow, NetReport};
use super::{build_section, compute_s_bruteforce, coset_table, subgroup_set, SubgroupSet};
use crate::automata::determinize::trim;
use crate::automata::ops::completion_distance;
use crate::automata::MultiTapeAutomaton;
use crate::cayley::hyperbolicity::{estimate_delta, DeltaMode, HyperbolicityProfile};
use crate::cayley::ray::ray_extension_constant;
use crate::cayley::subgroup::{estimate_quasiconvexity, subgroup_ball, DEFAULT_ENLARGEMENT};
use crate::cayley::Ball;
use crate::conelang::acceptor::{geodesic_acceptor, validate_acceptor};
use crate::conelang::cone_types::compute_cone_types;
use crate::conelang::extension::{context_for_subgroup, subgroup_cayley_ball, AnalysisContext};
use crate::conelang::ln::{build_tower, TowerParams};
use crate::conelang::s_language::{build_s_language, SLanguage};
use crate::error::{Error, Result};
use crate::groups::subgroup::SubgroupSpec;
use crate::groups::{GroupFamily, GroupOracle};

#[derive(Clone, Debug)]
pub struct AnalysisConfig {
    pub family: GroupFamily,
    pub subgroup: String,
    pub radius: u32,
    /// Signature radius override; default 2 ceil(delta) + 2.
    pub signature_radius: Option<u32>,
    /// Word-difference bound override.
    pub difference_bound: Option<u32>,
    /// C1 override.
    pub c1: Option<i64>,
    pub exhaustive_delta_radius: u32,
    pub sample_count: usize,
    pub seed: u64,
    pub workers: usize,
    pub state_cap: usize,
    /// Also evaluate the union-over-radii form of the transversal language
    /// and compare.
    pub diagnostic: bool,
    /// Skip the automaton pipeline entirely (geometry only).
    pub geometry_only: bool,
}

impl AnalysisConfig {
    pub fn new(family: GroupFamily, subgroup: &str, radius: u32) -> Self {
        AnalysisConfig {
            family,
            subgroup: subgroup.to_string(),
            radius,
            signature_radius: None,
            difference_bound: None,
            c1: None,
            exhaustive_delta_radius: 3,
            sample_count: 20_000,
            seed: 0,
            workers: 1,
            state_cap: crate::automata::DEFAULT_STATE_CAP,
            diagnostic: false,
            geometry_only: false,
        }
    }
}

/// Everything a run produces: the report plus the exportable automata.
pub struct AnalysisOutcome {
    pub report: NetReport,
    pub oracle: GroupOracle,
    pub context: AnalysisContext,
    pub ball: Ball,
    pub lambda: Option<MultiTapeAutomaton>,
    pub lambda_h: Option<MultiTapeAutomaton>,
    pub tower: Option<crate::conelang::ln::LnTower>,
    pub s_language: Option<SLanguage>,
}

pub fn run_analysis(config: &AnalysisConfig) -> Result<AnalysisOutcome> {
    let oracle = GroupOracle::new(config.family)?;
    let spec = SubgroupSpec::parse(&config.subgroup, &oracle)?;
    let ctx = context_for_subgroup(&oracle, &spec)?;
    let ball = Ball::build(&oracle, ctx.gens.clone(), config.radius)?;
    let oracle_metric = ctx.gens.is_oracle_metric();
    let measure_radius = if oracle_metric {
        config.radius
    } else {
        config.radius / 2
    };

    // Hyperbolicity: exhaustive on a small ball, sampled on the full one.
    let small_radius = crate::cayley::hyperbolicity::exhaustive_delta_radius(
        &oracle,
        &ctx.gens,
        config.exhaustive_delta_radius.min(config.radius),
        150,
    )?;
    let small_ball = Ball::build(&oracle, ctx.gens.clone(), small_radius)?;
    let exhaustive = estimate_delta(&small_ball, &oracle, DeltaMode::Exhaustive, config.workers)?;
    let sampled = estimate_delta(
        &ball,
        &oracle,
        DeltaMode::Sampled {
            count: config.sample_count,
            seed: config.seed,
        },
        config.workers,
    )?;
    let profile = HyperbolicityProfile {
        delta_thin: exhaustive.delta_thin.max(sampled.delta_thin),
        delta_four_point: exhaustive.delta_four_point.max(sampled.delta_four_point),
        sample_size: sampled.sample_size,
        exhaustive: false,
    };
    let delta = profile.delta_thin.max(profile.delta_four_point);

    // Subgroup geometry.
    let h_in_ball = subgroup_ball(&ball, &oracle, &spec, DEFAULT_ENLARGEMENT)?;
    let qc = estimate_quasiconvexity(&ball, &oracle, &h_in_ball)?;
    let h_set: SubgroupSet = subgroup_set(&ball, &oracle, &spec, 2 * measure_radius, 3)?;

    // C1 = 4 delta + 2 K + 8, bumped if the observed slack exceeds it.
    let c1_formula = 2 * delta.doubled() + 2 * qc.k as i64 + 8;
    let brute_s = compute_s_bruteforce(&ball, &oracle, &h_set, measure_radius)?;
    let table = coset_table(&ball, &oracle, &h_set, &brute_s, measure_radius)?;
    let slack = check_same_coset_bound(&ball, &oracle, &table)?;
    let c1_used = config.c1.unwrap_or_else(|| c1_formula.max(slack.max_slack));

    let section = build_section(&table)?;
    let image = section.by_coset.clone();
    let defect = net_defect_with_margin_policy(&ball, &oracle, &image, measure_radius)?;
    let worst_defect = net_defect(
        &ball,
        &oracle,
        &section.worst_by_coset,
        measure_radius,
        defect.margin,
    )?;
    let action = action_displacement(
        &ball,
        &oracle,
        &table,
        &section,
        2.min(measure_radius),
        c1_used,
    )?;

    // Per-radius table, all from the same ball and subgroup set.
    let mut defect_rows = Vec::new();
    for r in 2..=measure_radius {
        let s_r = compute_s_bruteforce(&ball, &oracle, &h_set, r)?;
        let t_r = coset_table(&ball, &oracle, &h_set, &s_r, r)?;
        let sec_r = build_section(&t_r)?;
        let slack_r = check_same_coset_bound(&ball, &oracle, &t_r)?;
        // Fixed margin 2 across radii keeps rows comparable.
        let sub_ball = Ball::build(&oracle, ctx.gens.clone(), r)?;
        let image_keys: Vec<u32> = sec_r
            .by_coset
            .iter()
            .filter_map(|&i| sub_ball.index_of(ball.key(i)))
            .collect();
        let d_r = net_defect(&sub_ball, &oracle, &image_keys, r, 2)?;
        defect_rows.push(DefectRow {
            radius: r,
            coset_count: t_r.coset_count(),
            s_size: s_r.len(),
            defect: d_r,
            lemma_slack_max: slack_r.max_slack,
        });
    }

    // Cone types and the geodesic language.  The preferred signature radius
    // is 2 ceil(delta) + 2, but a radius too large for the ball leaves
    // successors unobserved, so the choice backs off until the acceptor
    // builds and validates.
    let delta_ceil = delta.ceil().max(0) as u32;
    let preferred_k = config
        .signature_radius
        .unwrap_or(2 * delta_ceil + 2)
        .clamp(1, (config.radius - 1).max(1));
    let (cone_table, k, lambda_checked) =
        choose_cone_table(&ball, &oracle, preferred_k, config.signature_radius.is_some())?;

    let mut report = NetReport {
        family: config.family.to_string(),
        subgroup: config.subgroup.clone(),
        radius: config.radius,
        measure_radius,
        extended_alphabet: ctx.extended,
        alphabet: ctx
            .gens
            .alphabet()
            .symbols()
            .map(|s| ctx.gens.alphabet().name(s))
            .collect(),
        ball_size: ball.len(),
        sphere_sizes: ball.sphere_sizes(),
        delta_thin: profile.delta_thin,
        delta_four_point: profile.delta_four_point,
        delta_exhaustive_radius: small_radius,
        quasiconvexity_k: qc.k,
        quasiconvexity_stabilized_at: qc.stabilized_at,
        subgroup_ball_exact: h_in_ball.exact && h_set.exact,
        c1_formula,
        c1_used,
        lemma_slack_max: slack.max_slack,
        s_coset_diameter_max: slack.max_s_diameter,
        cone_type_count: cone_table.class_count(),
        signature_radius: k,
        cone_counts_by_radius: cone_table.counts_by_radius().to_vec(),
        coset_count: table.coset_count(),
        s_size: brute_s.len(),
        section_size: section.by_coset.len(),
        net_defect: Some(defect.defect),
        net_margin: Some(defect.margin),
        net_stabilized: defect.stabilized,
        worst_choice_defect: Some(worst_defect),
        automaton_available: false,
        automaton_error: None,
        s_acceptor_states: None,
        completion_distance: None,
        difference_bound: None,
        oracle_agreement: None,
        first_discrepancy: None,
        paper_form_equal: None,
        paper_form_witness: None,
        action_displacement_max: Some(action.max_displacement),
        action_bound: Some(action.bound),
        action_within_bound: Some(action.within_bound),
        ray_extension_constant: None,
        defect_rows,
    };
    if config.radius >= 2 {
        report.ray_extension_constant = Some(ray_extension_constant(&ball, &oracle)?);
    }

    if config.geometry_only {
        return Ok(AnalysisOutcome {
            report,
            oracle,
            context: ctx,
            ball,
            lambda: None,
            lambda_h: None,
            tower: None,
            s_language: None,
        });
    }

    // The regular-language route; failures are recorded, not fatal, so the
    // brute-force half of the report survives families where the machinery
    // cannot exist (the non-hyperbolic counterexample).
    let automaton_route = match lambda_checked {
        Ok(lambda) => {
            build_automaton_route(config, &oracle, &ctx, &ball, &cone_table, lambda, c1_used, &spec)
        }
        Err(e) => Err(e),
    };
    let mut lambda_out = None;
    let mut lambda_h_out = None;
    let mut tower_out = None;
    let mut s_out = None;
    match automaton_route {
        Ok(route) => {
            let AutomatonRoute {
                lambda,
                lambda_h,
                tower,
                s_language,
            } = route;
            let s_min = &s_language.automaton;
            report.automaton_available = true;
            report.s_acceptor_states = Some(trim(s_min).state_count());
            report.completion_distance = Some(completion_distance(s_min)?);
            report.difference_bound = Some(tower.difference_bound_used);
            report.paper_form_equal = s_language.paper_form_equal;
            report.paper_form_witness = s_language
                .paper_form_witness
                .as_ref()
                .map(|w| w.to_text(ctx.gens.alphabet()));
            let cross = oracle_crosscheck(
                s_min,
                &ctx.gens,
                &ball,
                &oracle,
                &brute_s,
                measure_radius,
            )?;
            report.oracle_agreement = Some(cross.agree);
            report.first_discrepancy = cross
                .first_discrepancy
                .map(|(w, side)| format!("{w} ({side})"));
            lambda_out = Some(lambda);
            lambda_h_out = Some(lambda_h);
            tower_out = Some(tower);
            s_out = Some(s_language);
        }
        Err(e) => {
            report.automaton_error = Some(e.to_string());
        }
    }

    Ok(AnalysisOutcome {
        report,
        oracle,
        context: ctx,
        ball,
        lambda: lambda_out,
        lambda_h: lambda_h_out,
        tower: tower_out,
        s_language: s_out,
    })
}

/// Picks the largest workable signature radius at most `preferred`, backing
/// off while successors are unobserved or the acceptor fails its in-ball
/// validation.  Returns the chosen table together with the acceptor outcome;
/// with an explicit override no back-off happens.
fn choose_cone_table(
    ball: &Ball,
    oracle: &GroupOracle,
    preferred: u32,
    pinned: bool,
) -> Result<(
    crate::conelang::cone_types::ConeTypeTable,
    u32,
    Result<MultiTapeAutomaton>,
)> {
    let mut fallback: Option<(crate::conelang::cone_types::ConeTypeTable, u32)> = None;
    let mut last_err: Option<Error> = None;
    for k in (1..=preferred).rev() {
        let table = match compute_cone_types(ball, oracle, k) {
            Ok(t) => t,
            Err(e) => {
                last_err = Some(e);
                continue;
            }
        };
        match geodesic_acceptor(&table, ball) {
            Ok(lambda) => {
                match validate_acceptor(&lambda, ball, oracle, ball.radius() - k)? {
                    None => return Ok((table, k, Ok(lambda))),
                    Some(w) => {
                        last_err = Some(Error::ConeSuccessor(format!(
                            "geodesic acceptor disagrees with lengths at {:?}",
                            w.to_text(ball.gens().alphabet())
                        )));
                    }
                }
            }
            Err(e) => last_err = Some(e),
        }
        if fallback.is_none() {
            fallback = Some((table, k));
        }
        if pinned {
            break;
        }
    }
    let err = last_err.unwrap_or_else(|| {
        Error::SignatureRadius {
            k: preferred,
            radius: ball.radius(),
        }
    });
    match fallback {
        Some((table, k)) => Ok((table, k, Err(err))),
        None => Err(err),
    }
}

struct AutomatonRoute {
    lambda: MultiTapeAutomaton,
    lambda_h: MultiTapeAutomaton,
    tower: crate::conelang::ln::LnTower,
    s_language: SLanguage,
}

#[allow(clippy::too_many_arguments)]
fn build_automaton_route(
    config: &AnalysisConfig,
    oracle: &GroupOracle,
    ctx: &AnalysisContext,
    ball: &Ball,
    cone_table: &crate::conelang::cone_types::ConeTypeTable,
    lambda: MultiTapeAutomaton,
    c1: i64,
    spec: &SubgroupSpec,
) -> Result<AutomatonRoute> {
    let lambda_h = subgroup_geodesic_language(oracle, ctx, ball, spec, c1)?;

    let bound_cap = (ball.radius() / 2).max(2);
    let params = TowerParams {
        state_cap: config.state_cap,
        difference_bound: config
            .difference_bound
            .unwrap_or(2)
            .clamp(1, bound_cap),
        difference_bound_cap: bound_cap,
    };
    let tower = build_tower(ball, oracle, cone_table, &lambda, c1.max(0) as u32, params)?;
    let s_language = build_s_language(
        &lambda,
        &lambda_h,
        &tower,
        c1,
        config.state_cap,
        config.diagnostic,
    )?;
    Ok(AutomatonRoute {
        lambda,
        lambda_h,
        tower,
        s_language,
    })
}

/// The geodesic language of the subgroup over its own letters, as a one-tape
/// automaton over the ambient alphabet.
fn subgroup_geodesic_language(
    oracle: &GroupOracle,
    ctx: &AnalysisContext,
    ball: &Ball,
    spec: &SubgroupSpec,
    c1: i64,
) -> Result<MultiTapeAutomaton> {
    if spec.is_trivial() {
        let ta = crate::automata::TapeAlphabet::new(ctx.gens.alphabet().clone(), 1);
        return Ok(MultiTapeAutomaton::epsilon_language(ta));
    }
    // Enough radius to enumerate subgroup words past C1 and classify cones.
    let h_radius = (c1 as u32 + 2).min(ball.radius());
    let h_ball = subgroup_cayley_ball(oracle, ctx, ball, h_radius)?;
    let delta_h = estimate_delta(&h_ball, oracle, DeltaMode::Exhaustive, 1)?;
    let delta_ceil = delta_h
        .delta_thin
        .max(delta_h.delta_four_point)
        .ceil()
        .max(0) as u32;
    let k_h = (2 * delta_ceil + 2).clamp(1, (h_radius - 1).max(1));
    let table = compute_cone_types(&h_ball, oracle, k_h)?;
    let acceptor = geodesic_acceptor(&table, &h_ball)?;
    if let Some(w) = validate_acceptor(&acceptor, &h_ball, oracle, h_radius - k_h)? {
        return Err(Error::Extension(format!(
            "subgroup geodesic language disagrees with lengths at {:?}",
            w.to_text(ctx.gens.alphabet())
        )));
    }
    Ok(acceptor)
}
