//! Command dispatch: turns a resolved workbench into report sections.
//! All emission is deterministic for a fixed scenario and seed; timing
//! never enters a report.

use crate::consequence::{validate_operator, ValidationConfig, ValidationMode};
use crate::environment::{
    base_closure, build_practical_topology, check_cognitive_continuity, weak_topology_clopen,
};
use crate::error::Error;
use crate::families::{
    build_connection_ideal, build_fd_filter, build_fhat_filter, check_family_axioms,
    check_fhat_filter, filter_by_truth, FamilyKind,
};
use crate::lattice::{
    build_cct, check_structure_theorems, cognitive_closure_in, enumerate_deductive, TheoremConfig,
};
use crate::metric::{
    check_compactness, check_limit_theorems, check_tail_coincidence, detect_black_hole,
    detect_limits, validate_pseudometric,
};
use crate::report::{Check, Report, Section, Value, Verdict};
use crate::scenario::Workbench;
use crate::set::{subsets_of, SentenceSet};
use crate::universe::Universe;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Validate,
    Closures,
    Cct,
    Theorems,
    Limits,
    Blackhole,
    Families,
    Environment,
    All,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Closures => "closures",
            Command::Cct => "cct",
            Command::Theorems => "theorems",
            Command::Limits => "limits",
            Command::Blackhole => "blackhole",
            Command::Families => "families",
            Command::Environment => "environment",
            Command::All => "all",
        }
    }
}

fn format_set(universe: &Universe, set: &SentenceSet) -> String {
    format!("{{{}}}", universe.labels_of(set).join(" "))
}

fn family_value(universe: &Universe, members: &[SentenceSet]) -> Value {
    Value::List(
        members
            .iter()
            .map(|m| Value::Str(format_set(universe, m)))
            .collect(),
    )
}

pub fn run(wb: &Workbench, command: Command, report: &mut Report) -> Result<(), Error> {
    match command {
        Command::Validate => validate(wb, report),
        Command::Closures => closures(wb, report),
        Command::Cct => cct(wb, report),
        Command::Theorems => theorems(wb, report),
        Command::Limits => limits(wb, report),
        Command::Blackhole => blackhole(wb, report),
        Command::Families => families(wb, report),
        Command::Environment => environment(wb, report),
        Command::All => {
            validate(wb, report)?;
            closures(wb, report)?;
            cct(wb, report)?;
            theorems(wb, report)?;
            limits(wb, report)?;
            blackhole(wb, report)?;
            families(wb, report)?;
            environment(wb, report)
        }
    }
}

fn validate(wb: &Workbench, report: &mut Report) -> Result<(), Error> {
    let u = &wb.universe;
    let mut s = Section::new("universe");
    s.push("symbols", Value::labels(&u.labels_of(&u.full_set())));
    s.push("cognitive", Value::labels(&u.labels_of(u.cognitive())));
    s.push("logic_base", Value::labels(&u.labels_of(u.logic_base())));
    for (i, w) in u.warnings().iter().enumerate() {
        s.push_str(format!("warning.{i}"), w.clone());
    }
    report.sections.push(s);

    let cfg = ValidationConfig {
        mode: ValidationMode::Auto,
        samples: wb.parameters.samples,
        seed: wb.parameters.seed,
    };
    let axioms = validate_operator(&wb.operator, Some(&wb.implications), &cfg)?;
    let mut s = Section::new("operator_axioms");
    s.push_str("mode", if axioms.exhaustive { "exhaustive" } else { "sampled" });
    s.push_checks(&axioms.checks);
    report.sections.push(s);

    let mut s = Section::new("pseudometric");
    match &wb.metric {
        None => s.push_str("status", "no metric declared"),
        Some(m) => {
            s.push_str("variant", if m.is_weight_based() { "weight" } else { "matrix" });
            s.push_checks(&validate_pseudometric(m, u, wb.parameters.samples, wb.parameters.seed));
        }
    }
    report.sections.push(s);
    Ok(())
}

fn closures(wb: &Workbench, report: &mut Report) -> Result<(), Error> {
    let u = &wb.universe;
    let cap = wb.parameters.cap;
    let omega = enumerate_deductive(&wb.operator, &u.full_set(), cap)?;
    let over_c = enumerate_deductive(&wb.operator, u.cognitive(), cap)?;

    let mut s = Section::new("deductive_sets");
    s.push("omega.count", Value::Int(omega.len() as i64));
    s.push("omega.members", family_value(u, &omega.members));
    s.push("cognitive.count", Value::Int(over_c.len() as i64));
    s.push("cognitive.members", family_value(u, &over_c.members));

    // Cl□ agrees with close on every input; exhaustive for small
    // universes, sampled above that.
    let check = if u.len() <= 12 {
        let mut failed = None;
        for a in subsets_of(&u.full_set()) {
            if cognitive_closure_in(&omega, &a) != wb.operator.close(&a) {
                failed = Some(a);
                break;
            }
        }
        match failed {
            None => Check::new("cl_box_equals_close", Verdict::Pass)
                .with_note("exhaustive over every subset"),
            Some(a) => Check::new("cl_box_equals_close", Verdict::Fail)
                .with_witness(vec![format_set(u, &a)]),
        }
    } else {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(wb.parameters.seed);
        let mut failed = None;
        for _ in 0..wb.parameters.samples {
            let a = crate::consequence::random_subset(&mut rng, u.len());
            if cognitive_closure_in(&omega, &a) != wb.operator.close(&a) {
                failed = Some(a);
                break;
            }
        }
        match failed {
            None => Check::new("cl_box_equals_close", Verdict::Pass).with_note(format!(
                "sampled over {} random subsets",
                wb.parameters.samples
            )),
            Some(a) => Check::new("cl_box_equals_close", Verdict::Fail)
                .with_witness(vec![format_set(u, &a)]),
        }
    };
    s.push_check(&check);
    report.sections.push(s);
    Ok(())
}

fn cct(wb: &Workbench, report: &mut Report) -> Result<(), Error> {
    let u = &wb.universe;
    let tau = build_cct(&wb.operator, wb.parameters.cap)?;
    let mut s = Section::new("cct");
    s.push("count", Value::Int(tau.len() as i64));
    s.push("members", family_value(u, &tau.members));
    let contains_empty = tau.contains(&u.empty_set());
    let contains_c = tau.contains(u.cognitive());
    s.push("contains_empty", Value::Bool(contains_empty));
    s.push("contains_cognitive", Value::Bool(contains_c));
    if contains_empty || contains_c {
        s.push_str(
            "diagnostic",
            "cognitive conditions violated: τ admits ∅ or C",
        );
    }
    report.sections.push(s);
    Ok(())
}

fn theorems(wb: &Workbench, report: &mut Report) -> Result<(), Error> {
    let tau = build_cct(&wb.operator, wb.parameters.cap)?;
    let cfg = TheoremConfig {
        seed: wb.parameters.seed,
        samples: wb.parameters.samples,
        ..TheoremConfig::default()
    };
    let result = check_structure_theorems(&wb.operator, &tau, &cfg);
    let mut s = Section::new("structure_theorems");
    s.push_checks(&result.checks);
    report.sections.push(s);
    Ok(())
}

fn limits(wb: &Workbench, report: &mut Report) -> Result<(), Error> {
    let u = &wb.universe;
    let Some(metric) = &wb.metric else {
        let mut s = Section::new("limits");
        s.push_str("status", "no metric declared");
        report.sections.push(s);
        return Ok(());
    };
    let eps = wb.parameters.epsilon;
    let mut limit_reports = Vec::new();
    for (name, seq) in &wb.sequences {
        let lr = detect_limits(metric, seq, eps, wb.parameters.limit_point_min)?;
        let mut s = Section::new(format!("limits.{name}"));
        s.push("epsilon", Value::Float(eps));
        s.push("length", Value::Int(seq.len() as i64));
        s.push(
            "detected",
            Value::labels(
                &lr.detected
                    .iter()
                    .map(|&x| u.label(x).to_string())
                    .collect::<Vec<_>>(),
            ),
        );
        for &x in &lr.detected {
            let onset = lr.candidates[x].onset.expect("detected limits have onsets");
            s.push(format!("onset.{}", u.label(x)), Value::Int(onset as i64));
        }
        s.push("limit_point_threshold", Value::Int(lr.threshold as i64));
        s.push(
            "limit_points",
            Value::labels(
                &lr.limit_points
                    .iter()
                    .map(|&x| u.label(x).to_string())
                    .collect::<Vec<_>>(),
            ),
        );
        if let Some(v) = seq.virtual_limit {
            s.push_str("virtual_limit", u.label(v));
        }
        s.push_checks(&check_limit_theorems(
            &wb.operator,
            metric,
            seq,
            &lr,
            wb.parameters.cap,
        ));
        report.sections.push(s);
        limit_reports.push(lr);
    }
    if wb.sequences.len() > 1 {
        let mut s = Section::new("tail_coincidence");
        for i in 0..wb.sequences.len() {
            for j in i + 1..wb.sequences.len() {
                let (name_i, seq_i) = &wb.sequences[i];
                let (name_j, seq_j) = &wb.sequences[j];
                let mut check = check_tail_coincidence(
                    u,
                    metric,
                    (seq_i, &limit_reports[i]),
                    (seq_j, &limit_reports[j]),
                );
                check.id = format!("thm_3_12.{name_i}.{name_j}");
                s.push_check(&check);
            }
        }
        report.sections.push(s);
    }
    Ok(())
}

fn blackhole(wb: &Workbench, report: &mut Report) -> Result<(), Error> {
    let u = &wb.universe;
    let Some(metric) = &wb.metric else {
        if !wb.blackholes.is_empty() || wb.compactness.is_some() {
            return Err(Error::Scenario(
                "black-hole analysis requires weights or a similarity matrix".into(),
            ));
        }
        return Ok(());
    };
    for (i, spec) in wb.blackholes.iter().enumerate() {
        let seq = wb.sequence(&spec.sequence).expect("validated at build time");
        let eps = spec.epsilon.unwrap_or(wb.parameters.epsilon);
        let found = detect_black_hole(metric, seq, spec.center, eps, &spec.region)?;
        let mut s = Section::new(format!("blackhole.{i}"));
        s.push_str("sequence", spec.sequence.clone());
        s.push_str("center", u.label(spec.center));
        s.push("epsilon", Value::Float(eps));
        s.push_str("region", format_set(u, &spec.region));
        match found {
            None => s.push_str("result", "absent"),
            Some(k) => {
                s.push_str("result", "detected");
                s.push("onset", Value::Int(k as i64));
                // Thm 5.1: a black hole rules out convergence at its center
                let lr = detect_limits(metric, seq, eps, wb.parameters.limit_point_min)?;
                s.push_check(&if lr.detected.contains(&spec.center) {
                    Check::new("thm_5_1", Verdict::Fail)
                        .with_note("black hole found yet the sequence converges to its center")
                } else {
                    Check::new("thm_5_1", Verdict::Pass)
                });
            }
        }
        report.sections.push(s);
    }
    if let Some(spec) = &wb.compactness {
        let sequences: Vec<(String, crate::metric::ThoughtSequence)> = spec
            .sequences
            .iter()
            .map(|name| {
                (
                    name.clone(),
                    wb.sequence(name).expect("validated at build time").clone(),
                )
            })
            .collect();
        let result = check_compactness(metric, &spec.solution_space, &sequences, &spec.epsilon_grid)?;
        let mut s = Section::new("compactness");
        s.push_str("solution_space", format_set(u, &spec.solution_space));
        s.push(
            "epsilon_grid",
            Value::List(spec.epsilon_grid.iter().map(|&e| Value::Float(e)).collect()),
        );
        s.push("compact", Value::Bool(result.compact));
        if result.vacuous {
            s.push_str("warning", "no registered sequences; compactness is vacuous");
        }
        for (i, w) in result.witnesses.iter().enumerate() {
            s.push_str(
                format!("witness.{i}"),
                format!(
                    "sequence {} center {} epsilon {} onset {}",
                    w.sequence,
                    u.label(w.center),
                    crate::report::format_float(w.epsilon),
                    w.onset
                ),
            );
            let mut check = result.divergence_checks[i].clone();
            check.id = format!("thm_5_1.{i}");
            s.push_check(&check);
        }
        report.sections.push(s);
    }
    Ok(())
}

fn families(wb: &Workbench, report: &mut Report) -> Result<(), Error> {
    let u = &wb.universe;
    let cap = wb.parameters.cap.min(crate::families::DEFAULT_FAMILY_CAP);
    for (i, spec) in wb.ideals.iter().enumerate() {
        let graph = wb.graph.as_ref().expect("validated at build time");
        let mut family = build_connection_ideal(graph, spec.f_star, &spec.within, cap)?;
        let mut s = Section::new(format!("connection_ideal.{i}"));
        s.push_str("f_star", u.label(spec.f_star));
        if spec.apply_truth {
            let truth = wb.truth.as_ref().expect("validated at build time");
            family = filter_by_truth(&family, truth);
            s.push_str("truth_restricted", "true");
        }
        s.push("count", Value::Int(family.len() as i64));
        s.push("members", family_value(u, &family.members));
        s.push_checks(&check_family_axioms(
            u,
            &family,
            FamilyKind::ClassicIdeal,
            Some(&wb.operator),
            cap,
        )?);
        report.sections.push(s);
    }
    for (i, spec) in wb.fd_filters.iter().enumerate() {
        let family = build_fd_filter(&wb.operator, &spec.carrier, spec.f, cap)?;
        let mut s = Section::new(format!("fd_filter.{i}"));
        s.push_str("carrier", format_set(u, &spec.carrier));
        s.push_str("f", u.label(spec.f));
        s.push("count", Value::Int(family.len() as i64));
        s.push("members", family_value(u, &family.members));
        // classic filter axioms scoped to the carrier
        let mut checks = Vec::new();
        let mut upward = Check::new("filter_upward_closed", Verdict::Pass);
        'up: for m in &family.members {
            for extra in subsets_of(&family.domain.difference(m)) {
                if !family.contains(&m.union(&extra)) {
                    upward = Check::new("filter_upward_closed", Verdict::Fail)
                        .with_witness(vec![format_set(u, m), format_set(u, &m.union(&extra))]);
                    break 'up;
                }
            }
        }
        checks.push(upward);
        let mut inter = Check::new("filter_intersection_closed", Verdict::Pass);
        'inter: for (a_i, a) in family.members.iter().enumerate() {
            for b in &family.members[a_i + 1..] {
                if !family.contains(&a.intersection(b)) {
                    inter = Check::new("filter_intersection_closed", Verdict::Fail)
                        .with_witness(vec![format_set(u, a), format_set(u, b)]);
                    break 'inter;
                }
            }
        }
        checks.push(inter);
        // corollary: Cn(C_d) = C_d must itself be a member
        let cn_carrier = wb.operator.close(&spec.carrier);
        checks.push(if family.contains(&cn_carrier) {
            Check::new("consequence_filter_on_carrier", Verdict::Pass)
        } else {
            Check::new("consequence_filter_on_carrier", Verdict::Fail)
                .with_witness(vec![format_set(u, &cn_carrier)])
                .with_note("Cn(C_d) is not a member")
        });
        s.push_checks(&checks);
        report.sections.push(s);
    }
    for (i, &f) in wb.fhat_filters.iter().enumerate() {
        let family = build_fhat_filter(&wb.operator, f, cap)?;
        let mut s = Section::new(format!("fhat_filter.{i}"));
        s.push_str("f", u.label(f));
        s.push("count", Value::Int(family.len() as i64));
        s.push("members", family_value(u, &family.members));
        s.push_checks(&check_fhat_filter(&wb.operator, &family, f));
        report.sections.push(s);
    }
    Ok(())
}

fn environment(wb: &Workbench, report: &mut Report) -> Result<(), Error> {
    let Some(spec) = &wb.environment else {
        return Ok(());
    };
    let u = &wb.universe;
    let env = &spec.env;
    let topology = build_practical_topology(env)?;
    let mut s = Section::new("environment");
    s.push(
        "points",
        Value::labels(&env.labels_of(&env.full_set())),
    );
    s.push(
        "opens",
        Value::List(
            topology
                .opens
                .iter()
                .map(|o| Value::Str(format!("{{{}}}", env.labels_of(o).join(" "))))
                .collect(),
        ),
    );
    for (i, (b, tag)) in env.base_objects.iter().enumerate() {
        s.push_str(
            format!("base.{i}"),
            format!("{{{}}} [{}]", env.labels_of(b).join(" "), tag.as_str()),
        );
        match base_closure(env, i) {
            Err(e) => s.push_str(format!("base_closure.{i}"), format!("none ({e})")),
            Ok(bc) => {
                s.push_str(
                    format!("base_closure.{i}"),
                    format!("{{{}}}", env.labels_of(&bc.closure).join(" ")),
                );
                s.push(format!("base_closure.{i}.ambiguous"), Value::Bool(bc.ambiguous));
                s.push(
                    format!("base_closure.{i}.multiplicity"),
                    Value::Int(bc.multiplicity as i64),
                );
            }
        }
    }
    report.sections.push(s);

    if let Some(map) = &spec.map {
        let tau = build_cct(&wb.operator, wb.parameters.cap)?;
        let mut s = Section::new("continuity");
        s.push_check(&check_cognitive_continuity(u, env, map, &topology, &tau));
        let weak = weak_topology_clopen(u, map, &topology);
        s.push("weak_family", family_value(u, &weak.family));
        s.push_checks(&weak.checks);
        report.sections.push(s);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::Scenario;

    const TINY: &str = r#"
version = 1

[universe]
symbols = ["t", "a", "b", "e"]
cognitive = ["t", "a", "b"]
logic_base = ["t"]

[[rules]]
premises = ["a", "b"]
conclusion = "e"

[weights]
t = 0.9
a = 1.0
b = 0.2
e = 0.5

[[sequences]]
name = "steady"
entries = ["t", "a", "a", "a"]

[[fhat_filters]]
f = "e"

[parameters]
epsilon = 0.1
"#;

    fn run_command(cmd: Command) -> Report {
        let wb = Scenario::parse(TINY).unwrap().build().unwrap();
        let mut report = Report::new(cmd.as_str(), "test", wb.parameters.seed);
        run(&wb, cmd, &mut report).unwrap();
        report
    }

    #[test]
    fn theorems_section_has_expected_verdicts() {
        let report = run_command(Command::Theorems);
        let text = report.emit_text();
        assert!(text.contains("t1 = pass"));
        assert!(text.contains("t3 = pass"));
        assert!(text.contains("t3.witness = [t]"));
        assert!(text.contains("t5 = pass"));
    }

    #[test]
    fn cct_section_lists_tau() {
        let report = run_command(Command::Cct);
        let text = report.emit_text();
        assert!(text.contains("members = [{a}, {b}, {a b}]"));
        assert!(text.contains("contains_empty = false"));
    }

    #[test]
    fn all_runs_every_section_deterministically() {
        let a = run_command(Command::All).emit_text();
        let b = run_command(Command::All).emit_text();
        assert_eq!(a, b);
        assert!(a.contains("[structure_theorems]"));
        assert!(a.contains("[limits.steady]"));
        assert!(a.contains("[fhat_filter.0]"));
    }

    #[test]
    fn limits_section_reports_onset() {
        let report = run_command(Command::Limits);
        let text = report.emit_text();
        assert!(text.contains("detected = [a]"));
        assert!(text.contains("onset.a = 2"));
        assert!(text.contains("thm_t8 = pass"));
    }
}
