//! The certified-constants report for one (group, subgroup, radius) run.

use crate::halfint::HalfInt;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct NetReport {
    pub family: String,
    pub subgroup: String,
    pub radius: u32,
    pub measure_radius: u32,
    pub extended_alphabet: bool,
    pub alphabet: String,
    pub ball_size: usize,
    pub sphere_sizes: Vec<usize>,

    pub delta_thin: HalfInt,
    pub delta_four_point: HalfInt,
    pub delta_exhaustive_radius: u32,
    pub quasiconvexity_k: u32,
    pub quasiconvexity_stabilized_at: u32,
    pub subgroup_ball_exact: bool,

    /// 4 delta + 2 K + 8 from the estimates.
    pub c1_formula: i64,
    /// The constant actually used, after bumping to cover the observed
    /// slack.
    pub c1_used: i64,
    pub lemma_slack_max: i64,
    pub s_coset_diameter_max: u32,

    pub cone_type_count: usize,
    pub signature_radius: u32,
    pub cone_counts_by_radius: Vec<usize>,

    pub coset_count: usize,
    pub s_size: usize,
    pub section_size: usize,
    pub net_defect: Option<u32>,
    pub net_margin: Option<u32>,
    pub net_stabilized: bool,
    pub worst_choice_defect: Option<u32>,

    pub automaton_available: bool,
    pub automaton_error: Option<String>,
    pub s_acceptor_states: Option<usize>,
    pub completion_distance: Option<u32>,
    pub difference_bound: Option<u32>,
    pub oracle_agreement: Option<bool>,
    pub first_discrepancy: Option<String>,
    pub paper_form_equal: Option<bool>,
    pub paper_form_witness: Option<String>,

    pub action_displacement_max: Option<u32>,
    pub action_bound: Option<i64>,
    pub action_within_bound: Option<bool>,

    pub ray_extension_constant: Option<u32>,
    pub defect_rows: Vec<DefectRow>,
}

/// One CSV row of the per-radius defect table.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct DefectRow {
    pub radius: u32,
    pub coset_count: usize,
    pub s_size: usize,
    pub defect: u32,
    pub lemma_slack_max: i64,
}

impl NetReport {
    /// The CSV hand-off: one row per measured radius.
    pub fn defect_csv(&self) -> String {
        let mut out = String::from("R,coset_count,S_size,defect,lemma5A_max_slack\n");
        for row in &self.defect_rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                row.radius, row.coset_count, row.s_size, row.defect, row.lemma_slack_max
            ));
        }
        out
    }

    /// All certified checks that this run could evaluate.  The diagnostic
    /// comparison against the union-over-radii form is informational: the
    /// brute-force crosscheck is the arbiter of the implemented language.
    pub fn certified_ok(&self) -> bool {
        self.net_stabilized
            && self.oracle_agreement != Some(false)
            && self.lemma_slack_max <= self.c1_used
            && self.action_within_bound != Some(false)
    }
}
