//! One function per subcommand. Each fills a [`Report`]; input errors propagate as `Err`.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rcsbr_core::beliefs::{find_justifying_cps, Cps};
use rcsbr_core::epistemic::{
    check_theorem_bf, project, rcbr, rcsbr, validate_type_structure, EventProfile, StateSet, Trace,
};
use rcsbr_core::format::{
    closures_to_json, cps_to_json, family_to_json, parse_closures, parse_product_set, parse_state_space_spec,
    parse_type_structure, player_family_to_json, product_set_to_json, state_space_from_spec, state_space_to_json,
    type_structure_to_json,
};
use rcsbr_core::random::{random_state_space, random_structure};
use rcsbr_core::separating::{
    classify, construct_prop2, induce_separating_structure, minimal_closure, minimal_profile, real_rcsbr_profile,
    verify_prop1, Quadrant,
};
use rcsbr_core::solution::{
    correlated_rationalizability, enumerate_fbrs, enumerate_fsbrs, enumerate_mfsbrs, is_fbrs, is_fsbrs,
    mfsbrs_witnesses, strong_rationalizability, Certificate, Families,
};
use rcsbr_core::{Closure, DynamicGame, PlayerId, ProductSet, SeparatingStructure, SetFamily, StateSpace, TypeStructure};
use serde_json::{json, Map, Value};

use crate::args::Concept;
use crate::inputs::Inputs;
use crate::report::Report;

/// Options shared by every command.
pub struct Ctx {
    pub command: String,
    pub certify: bool,
    pub seed: u64,
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn render_states(game: &DynamicGame, ts: &TypeStructure, i: PlayerId, set: &StateSet) -> String {
    if set.is_empty() {
        return "∅".into();
    }
    let items: Vec<String> = set
        .iter()
        .map(|&(s, t)| format!("({}, {})", game.strategy_label(i, s), ts.type_label(i, t)))
        .collect();
    format!("{{{}}}", items.join(", "))
}

fn states_json(game: &DynamicGame, ts: &TypeStructure, event: &EventProfile) -> Value {
    let map: Map<String, Value> = game
        .players()
        .map(|i| {
            let pairs: Vec<Value> = event[i.0]
                .iter()
                .map(|&(s, t)| json!([game.strategy_label(i, s), ts.type_label(i, t)]))
                .collect();
            (game.player_name(i).to_string(), Value::Array(pairs))
        })
        .collect();
    Value::Object(map)
}

fn type_set(ts: &TypeStructure, i: PlayerId, set: &BTreeSet<usize>) -> String {
    if set.is_empty() {
        return "∅".into();
    }
    let labels: Vec<&str> = set.iter().map(|&t| ts.type_label(i, t)).collect();
    format!("{{{}}}", labels.join(", "))
}

fn player_header(game: &DynamicGame, first: &str) -> Vec<String> {
    std::iter::once(first.to_string())
        .chain(game.player_names().iter().cloned())
        .collect()
}

fn certificate_lines(report: &mut Report, game: &DynamicGame, cert: &Certificate, indent: &str) {
    for i in game.players() {
        for (s, cps) in cert.player(i) {
            cps_line(report, game, i, *s, cps, indent);
        }
    }
}

fn cps_line(report: &mut Report, game: &DynamicGame, i: PlayerId, s: usize, cps: &Cps, indent: &str) {
    report.line(format!(
        "{indent}{} {}: {}",
        game.player_name(i),
        game.strategy_label(i, s),
        cps_to_json(game, i, cps)
    ));
}

fn certificate_json(game: &DynamicGame, cert: &Certificate) -> Value {
    let map: Map<String, Value> = game
        .players()
        .map(|i| {
            let per: Map<String, Value> = cert
                .player(i)
                .iter()
                .map(|(s, cps)| (game.strategy_label(i, *s).to_string(), cps_to_json(game, i, cps)))
                .collect();
            (game.player_name(i).to_string(), Value::Object(per))
        })
        .collect();
    Value::Object(map)
}

pub fn validate(ctx: &Ctx, path: &Path, game_path: Option<&Path>) -> Result<Report> {
    let mut inputs = Inputs::default();
    let Some(gp) = game_path else {
        let game = inputs.game(path)?;
        let mut report = Report::new(ctx.command.clone(), inputs.digest());
        report.line(format!("game: OK, {} players", game.num_players()));
        let rows = game
            .players()
            .map(|i| {
                let labels: Vec<&str> = (0..game.num_strategies(i)).map(|s| game.strategy_label(i, s)).collect();
                vec![game.player_name(i).to_string(), game.player_infosets(i).len().to_string(), labels.join(", ")]
            })
            .collect();
        report.table(&["player", "infosets", "strategies"], rows);
        let strategies: Map<String, Value> = game
            .players()
            .map(|i| {
                let labels: Vec<&str> = (0..game.num_strategies(i)).map(|s| game.strategy_label(i, s)).collect();
                (game.player_name(i).to_string(), json!(labels))
            })
            .collect();
        report.output("kind", json!("game"));
        report.output("strategies", Value::Object(strategies));
        return Ok(report);
    };
    let game = inputs.game(gp)?;
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let value: Value = serde_json::from_str(&text).with_context(|| format!("malformed JSON in {}", path.display()))?;
    if value.get("real_types").is_some() {
        let (host, ss, host_path) = inputs.state_space(&game, path)?;
        let mut report = Report::new(ctx.command.clone(), inputs.digest());
        report.line(format!("state space: OK, host {}", host_path.display()));
        let rows = game
            .players()
            .map(|i| vec![game.player_name(i).to_string(), type_set(&host, i, &ss.real[i.0])])
            .collect();
        report.table(&["player", "real types"], rows);
        report.output("kind", json!("state-space"));
        report.output("state_space", state_space_to_json(&game, &host, &host_path.display().to_string(), &ss));
        return Ok(report);
    }
    let ts = inputs.structure(&game, path)?;
    let warnings = validate_type_structure(&game, &ts)?;
    let mut report = Report::new(ctx.command.clone(), inputs.digest());
    report.line("type structure: OK");
    let rows = game
        .players()
        .map(|i| vec![game.player_name(i).to_string(), ts.num_types(i).to_string(), ts.types(i).join(", ")])
        .collect();
    report.table(&["player", "count", "types"], rows);
    for w in &warnings {
        report.line(format!("warning: {w}"));
    }
    report.output("kind", json!("type-structure"));
    report.output("warnings", json!(warnings));
    Ok(report)
}

pub fn solve(ctx: &Ctx, which: Concept, path: &Path) -> Result<Report> {
    let mut inputs = Inputs::default();
    let game = inputs.game(path)?;
    let mut report = Report::new(ctx.command.clone(), inputs.digest());
    match which {
        Concept::Sr => {
            let sr = strong_rationalizability(&game);
            let rows = sr
                .steps
                .iter()
                .enumerate()
                .map(|(k, p)| vec![format!("SR^{k}"), p.render(&game)])
                .collect();
            report.table(&["step", "surviving profiles"], rows);
            report.line(format!("SR^∞ = {}", sr.fixpoint().render(&game)));
            report.output("steps", json!(sr.steps.iter().map(|p| product_set_to_json(&game, p)).collect::<Vec<_>>()));
            report.output("fixpoint", product_set_to_json(&game, sr.fixpoint()));
            if ctx.certify {
                report.blank();
                report.line("justifying beliefs (each survivor strongly believes the previous step)");
                let mut certs = Vec::new();
                for k in 1..sr.steps.len() {
                    report.line(format!("  SR^{k}"));
                    let mut step = Map::new();
                    for i in game.players() {
                        let opp = sr.steps[k - 1].opponent_event(&game, i);
                        let mut per = Map::new();
                        for &s in sr.steps[k].component(i) {
                            let cps = find_justifying_cps(&game, i, s, &opp, None)
                                .ok_or_else(|| anyhow!("no justifying belief for a survivor"))?;
                            cps_line(&mut report, &game, i, s, &cps, "    ");
                            per.insert(game.strategy_label(i, s).to_string(), cps_to_json(&game, i, &cps));
                        }
                        step.insert(game.player_name(i).to_string(), Value::Object(per));
                    }
                    certs.push(Value::Object(step));
                }
                report.output("certificates", Value::Array(certs));
            }
        }
        Concept::Fsbrs => {
            let fam = enumerate_fsbrs(&game)?;
            family_section(&mut report, &game, "full strong best-reply sets", &fam, ctx.certify, |m| is_fsbrs(&game, m));
        }
        Concept::Mfsbrs => {
            let f = enumerate_fsbrs(&game)?;
            let m = enumerate_mfsbrs(&game, &f)?;
            report.line(format!("misaligned full strong best-reply sets ({})", m.len()));
            let mut rows = Vec::new();
            let mut members = Vec::new();
            for member in m.members() {
                let w = mfsbrs_witnesses(&game, member, &f).into_iter().next().expect("members have witnesses");
                rows.push(vec![format!("  {}", member.render(&game)), format!("within {}", w.witness.render(&game))]);
                let mut entry = Map::new();
                entry.insert("set".into(), product_set_to_json(&game, member));
                entry.insert("witness".into(), product_set_to_json(&game, &w.witness));
                if ctx.certify {
                    entry.insert("certificate".into(), certificate_json(&game, &w.certificate));
                }
                members.push((member.labels(&game), Value::Object(entry)));
            }
            report.lines_table(rows);
            if ctx.certify {
                report.blank();
                report.line("justifying beliefs");
                for member in m.members() {
                    let w = mfsbrs_witnesses(&game, member, &f).into_iter().next().expect("members have witnesses");
                    report.line(format!("  {}", member.render(&game)));
                    certificate_lines(&mut report, &game, &w.certificate, "    ");
                }
            }
            members.sort_by(|a, b| a.0.cmp(&b.0));
            report.output("members", Value::Array(members.into_iter().map(|(_, v)| v).collect()));
            player_families(&mut report, &game, &m, "𝕄");
        }
        Concept::PInfinity => {
            let rounds = correlated_rationalizability(&game)?;
            let rows = rounds
                .iter()
                .enumerate()
                .map(|(k, p)| vec![format!("P^{k}"), p.render(&game)])
                .collect();
            report.table(&["round", "surviving profiles"], rows);
            let last = rounds.last().expect("round zero is present");
            report.line(format!("P^∞ = {}", last.render(&game)));
            report.output("rounds", json!(rounds.iter().map(|p| product_set_to_json(&game, p)).collect::<Vec<_>>()));
            report.output("fixpoint", product_set_to_json(&game, last));
        }
        Concept::Fbrs => {
            let fam = enumerate_fbrs(&game)?;
            family_section(&mut report, &game, "full best-reply sets", &fam, ctx.certify, |m| {
                is_fbrs(&game, m).ok().flatten()
            });
        }
    }
    Ok(report)
}

impl Report {
    fn lines_table(&mut self, rows: Vec<Vec<String>>) {
        for l in crate::report::align(&rows) {
            self.line(l);
        }
    }
}

fn family_section(
    report: &mut Report,
    game: &DynamicGame,
    title: &str,
    fam: &SetFamily,
    certify: bool,
    certificate: impl Fn(&ProductSet) -> Option<Certificate>,
) {
    report.line(format!("{title} ({})", fam.len()));
    for m in fam.members() {
        report.line(format!("  {}", m.render(game)));
    }
    report.output("members", family_to_json(game, fam));
    if certify {
        report.blank();
        report.line("justifying beliefs");
        let mut all = Vec::new();
        for m in fam.members() {
            let cert = certificate(m).expect("members carry certificates");
            report.line(format!("  {}", m.render(game)));
            certificate_lines(report, game, &cert, "    ");
            all.push(json!({ "set": product_set_to_json(game, m), "certificate": certificate_json(game, &cert) }));
        }
        report.output("certificates", Value::Array(all));
    }
    player_families(report, game, fam, if title.contains("strong") { "𝔉" } else { "FBRS" });
}

fn player_families(report: &mut Report, game: &DynamicGame, fam: &SetFamily, name: &str) {
    report.blank();
    let mut per = Map::new();
    for i in game.players() {
        let pf = fam.project(i);
        let rendered: Vec<String> = pf
            .labels(game)
            .iter()
            .map(|m| if m.is_empty() { "∅".to_string() } else { format!("{{{}}}", m.join(", ")) })
            .collect();
        report.line(format!("{name}_{} = {{ {} }}", game.player_name(i), rendered.join(", ")));
        per.insert(game.player_name(i).to_string(), player_family_to_json(game, &pf));
    }
    report.output("player_families", Value::Object(per));
}

fn trace_table(report: &mut Report, game: &DynamicGame, ts: &TypeStructure, trace: &Trace, label: &str) {
    let mut rows = Vec::new();
    for (m, level) in trace.levels.iter().enumerate() {
        let name = if m == 0 { "Rat".to_string() } else { format!("{label}^{m}") };
        rows.push(
            std::iter::once(name)
                .chain(game.players().map(|i| render_states(game, ts, i, &level[i.0])))
                .collect(),
        );
    }
    let header = player_header(game, "level");
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    report.table(&header, rows);
}

pub fn rcsbr_cmd(
    ctx: &Ctx,
    game_path: &Path,
    structure: Option<&Path>,
    use_rcbr: bool,
    random: Option<usize>,
    max_types: usize,
) -> Result<Report> {
    let mut inputs = Inputs::default();
    let game = inputs.game(game_path)?;
    if use_rcbr && !game.is_static() {
        bail!(rcsbr_core::epistemic::NotStatic);
    }
    if let Some(n) = random {
        inputs.absorb(format!("random {n} seed {} max-types {max_types}", ctx.seed).as_bytes());
        let report = Report::new(ctx.command.clone(), inputs.digest());
        return Ok(random_rcsbr(ctx, &game, n, max_types, use_rcbr, report));
    }
    let path = structure.ok_or_else(|| anyhow!(UsageError("a type-structure file or --random is required".into())))?;
    let ts = inputs.structure(&game, path)?;
    let mut report = Report::new(ctx.command.clone(), inputs.digest());
    let (trace, name) = if use_rcbr {
        (rcbr(&game, &ts)?, "CB")
    } else {
        (rcsbr(&game, &ts), "CSB")
    };
    trace_table(&mut report, &game, &ts, &trace, name);
    let fix = trace.fixpoint();
    let proj = project(fix);
    report.blank();
    let which = if use_rcbr { "RCBR" } else { "RCSBR" };
    for i in game.players() {
        report.line(format!("{which}_{} = {}", game.player_name(i), render_states(&game, &ts, i, &fix[i.0])));
    }
    report.line(format!("proj_S {which} = {}", proj.render(&game)));
    report.output(
        "levels",
        Value::Array(trace.levels.iter().map(|l| states_json(&game, &ts, l)).collect()),
    );
    report.output("fixpoint", states_json(&game, &ts, fix));
    report.output("projection", product_set_to_json(&game, &proj));
    if use_rcbr {
        let cert = is_fbrs(&game, &proj)?;
        let p_inf = correlated_rationalizability(&game)?.last().cloned().expect("round zero");
        report.line(format!("∈ full best-reply sets: {}", yes(cert.is_some())));
        report.line(format!("⊆ P^∞: {}", yes(proj.is_subset(&p_inf))));
        report.output("is_fbrs", json!(cert.is_some()));
        report.assert("the projection is a full best-reply set", cert.is_some());
        report.assert("the projection lies inside P^∞", proj.is_subset(&p_inf));
        if let (true, Some(c)) = (ctx.certify, cert) {
            certificate_lines(&mut report, &game, &c, "  ");
        }
    } else {
        let cert = is_fsbrs(&game, &proj);
        report.line(format!("∈ 𝔉: {}", yes(cert.is_some())));
        report.output("in_fsbrs", json!(cert.is_some()));
        report.assert("the projection is a full strong best-reply set", cert.is_some());
        if let (true, Some(c)) = (ctx.certify, cert) {
            certificate_lines(&mut report, &game, &c, "  ");
        }
    }
    Ok(report)
}

fn random_rcsbr(ctx: &Ctx, game: &DynamicGame, n: usize, max_types: usize, use_rcbr: bool, mut report: Report) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut seen: BTreeMap<Vec<Vec<String>>, (ProductSet, usize)> = BTreeMap::new();
    let mut failures = Vec::new();
    for k in 0..n {
        let ts = random_structure(game, &mut rng, max_types.max(1));
        let (proj, ok) = if use_rcbr {
            let proj = project(rcbr(game, &ts).expect("checked static").fixpoint());
            let ok = is_fbrs(game, &proj).ok().flatten().is_some();
            (proj, ok)
        } else {
            let r = check_theorem_bf(game, &ts);
            let ok = r.passes();
            (r.projection, ok)
        };
        if !ok {
            failures.push(k);
        }
        seen.entry(proj.labels(game)).or_insert((proj, 0)).1 += 1;
    }
    report.line(format!("{n} random structures, seed {}, at most {max_types} types per player", ctx.seed));
    let rows = seen
        .values()
        .map(|(p, c)| vec![p.render(game), c.to_string()])
        .collect();
    report.table(&["projection", "count"], rows);
    let family = if use_rcbr { "full best-reply sets" } else { "𝔉" };
    report.output("structures", json!(n));
    report.output(
        "projections",
        Value::Array(seen.values().map(|(p, c)| json!({ "set": product_set_to_json(game, p), "count": c })).collect()),
    );
    report.output("failures", json!(failures));
    report.assert(
        format!("every projection is in {family} ({}/{n})", n - failures.len()),
        failures.is_empty(),
    );
    report
}

/// Print closures, real events, the projection and, on request, quadrant and family checks.
#[allow(clippy::too_many_arguments)]
fn analyse_real(
    report: &mut Report,
    game: &DynamicGame,
    host: &TypeStructure,
    profile: &[SeparatingStructure],
    classify_it: bool,
    families: Option<&Families>,
    certify: bool,
) -> Result<(ProductSet, Quadrant)> {
    let mut header = vec!["closure of".to_string()];
    header.extend(game.player_names().iter().map(|p| format!("types of {p}")));
    header.push("imaginary".into());
    let header_ref: Vec<&str> = header.iter().map(String::as_str).collect();
    let rows = profile
        .iter()
        .map(|st| {
            let o = st.owner();
            let mut row = vec![game.player_name(o).to_string()];
            row.extend(game.players().map(|j| type_set(host, j, &st.closure.types[j.0])));
            row.push(type_set(host, o, &st.imaginary()));
            row
        })
        .collect();
    report.table(&header_ref, rows);
    let (events, proj) = real_rcsbr_profile(game, profile);
    report.blank();
    for i in game.players() {
        report.line(format!("RCSBR♥_{} = {}", game.player_name(i), render_states(game, host, i, &events[i.0])));
    }
    report.line(format!("proj_S RCSBR♥ = {}", proj.render(game)));
    let closures: Vec<Closure> = profile.iter().map(|st| st.closure.clone()).collect();
    report.output("closures", closures_to_json(game, host, &closures));
    report.output("real_rcsbr", states_json(game, host, &events));
    report.output("projection", product_set_to_json(game, &proj));
    let taxonomy = classify(profile)?;
    let quadrant = taxonomy.quadrant();
    if classify_it || families.is_some() {
        report.line(format!("quadrant: {quadrant}"));
        report.output("quadrant", json!(quadrant.slug()));
    }
    if let Some(fam) = families {
        let report1 = verify_prop1(game, profile, fam)?;
        let memberships = [
            ("𝔉", report1.in_fsbrs),
            ("𝕄", report1.in_mfsbrs),
            ("∏𝔉_j", fam.fsbrs.contains_in_product_of_projections(&proj)),
            ("∏𝕄_j", fam.mfsbrs.contains_in_product_of_projections(&proj)),
        ];
        let text: Vec<String> = memberships.iter().map(|(n, b)| format!("∈ {n}: {}", yes(*b))).collect();
        report.line(text.join("; "));
        let mut checks = Vec::new();
        for c in &report1.checks {
            report.assert(format!("part {}: the projection is in {}", c.part, c.family), c.holds);
            checks.push(json!({ "part": c.part, "family": c.family, "holds": c.holds }));
        }
        report.output("membership", json!(memberships.iter().map(|(n, b)| json!({ "family": n, "member": b })).collect::<Vec<_>>()));
        report.output("checks", Value::Array(checks));
        if certify && !proj.is_empty() {
            report.blank();
            if let Some(w) = mfsbrs_witnesses(game, &proj, &fam.fsbrs).into_iter().next() {
                report.line(format!("witness {} with beliefs", w.witness.render(game)));
                certificate_lines(report, game, &w.certificate, "  ");
            }
        }
    }
    Ok((proj, quadrant))
}

#[allow(clippy::too_many_arguments)]
pub fn real(
    ctx: &Ctx,
    game_path: &Path,
    ss_path: Option<&Path>,
    closures: Option<&Path>,
    classify_it: bool,
    verify: bool,
    random: Option<usize>,
    max_types: usize,
) -> Result<Report> {
    let mut inputs = Inputs::default();
    let game = inputs.game(game_path)?;
    if let Some(n) = random {
        inputs.absorb(format!("random {n} seed {} max-types {max_types}", ctx.seed).as_bytes());
        let report = Report::new(ctx.command.clone(), inputs.digest());
        return random_real(ctx, &game, n, max_types, report);
    }
    let path = ss_path.ok_or_else(|| anyhow!(UsageError("a state-space file or --random is required".into())))?;
    let (host, ss, _) = inputs.state_space(&game, path)?;
    let given = match closures {
        Some(p) => {
            let text = inputs.read(p)?;
            parse_closures(&game, &host, &text).with_context(|| format!("invalid closures {}", p.display()))?
        }
        None => vec![None; game.num_players()],
    };
    let profile = build_profile(&game, &host, &ss, given)?;
    let families = if verify { Some(Families::compute(&game)?) } else { None };
    let mut report = Report::new(ctx.command.clone(), inputs.digest());
    analyse_real(&mut report, &game, &host, &profile, classify_it, families.as_ref(), ctx.certify)?;
    Ok(report)
}

fn build_profile(
    game: &DynamicGame,
    host: &TypeStructure,
    ss: &StateSpace,
    given: Vec<Option<Closure>>,
) -> Result<Vec<SeparatingStructure>> {
    game.players()
        .zip(given)
        .map(|(i, cl)| {
            let cl = cl.unwrap_or_else(|| minimal_closure(game, host, ss, i));
            induce_separating_structure(game, host, ss, &cl).map_err(anyhow::Error::from)
        })
        .collect()
}

fn random_real(ctx: &Ctx, game: &DynamicGame, n: usize, max_types: usize, mut report: Report) -> Result<Report> {
    let fam = Families::compute(game)?;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut by_quadrant: BTreeMap<&'static str, usize> = BTreeMap::new();
    // part → (applicable, held)
    let mut parts: BTreeMap<u8, (usize, usize)> = BTreeMap::new();
    for _ in 0..n {
        let host = random_structure(game, &mut rng, max_types.max(1));
        let ss = random_state_space(game, &host, &mut rng);
        let profile = minimal_profile(game, &host, &ss);
        let r = verify_prop1(game, &profile, &fam)?;
        *by_quadrant.entry(r.taxonomy.quadrant().slug()).or_default() += 1;
        for c in &r.checks {
            let e = parts.entry(c.part).or_default();
            e.0 += 1;
            e.1 += usize::from(c.holds);
        }
    }
    report.line(format!("{n} random hosts with minimal closures, seed {}", ctx.seed));
    let rows = by_quadrant.iter().map(|(q, c)| vec![q.to_string(), c.to_string()]).collect();
    report.table(&["quadrant", "count"], rows);
    for (part, (applicable, held)) in &parts {
        report.assert(format!("part {part} holds whenever it applies ({held}/{applicable})"), held == applicable);
    }
    report.output("hosts", json!(n));
    report.output("quadrants", json!(by_quadrant));
    report.output(
        "parts",
        Value::Array(parts.iter().map(|(p, (a, h))| json!({ "part": p, "applicable": a, "held": h })).collect()),
    );
    Ok(report)
}

/// Accepts slugs and looser spellings such as `common/non-degenerate`.
pub fn parse_quadrant(text: &str) -> Option<Quadrant> {
    if let Some(q) = Quadrant::parse(text) {
        return Some(q);
    }
    let squashed: String = text.to_lowercase().chars().filter(|c| c.is_alphanumeric() || *c == '/').collect();
    let words: Vec<&str> = squashed.split('/').filter(|w| !w.is_empty()).collect();
    let mut common = None;
    let mut degenerate = None;
    for w in words {
        match w {
            "common" => common = Some(true),
            "noncommon" => common = Some(false),
            "degenerate" => degenerate = Some(true),
            "nondegenerate" => degenerate = Some(false),
            "commondegenerate" => (common, degenerate) = (Some(true), Some(true)),
            "noncommondegenerate" => (common, degenerate) = (Some(false), Some(true)),
            "commonnondegenerate" => (common, degenerate) = (Some(true), Some(false)),
            "noncommonnondegenerate" => (common, degenerate) = (Some(false), Some(false)),
            _ => return None,
        }
    }
    Some(Quadrant::new(common?, degenerate?))
}

pub fn construct(ctx: &Ctx, game_path: &Path, target: &str, quadrant: &str, out: &Path) -> Result<Report> {
    let mut inputs = Inputs::default();
    let game = inputs.game(game_path)?;
    let target_text = if target.trim_start().starts_with('{') {
        inputs.absorb(target.as_bytes());
        target.to_string()
    } else {
        inputs.read(Path::new(target))?
    };
    let target = parse_product_set(&game, &target_text).context("invalid target")?;
    let quadrant = parse_quadrant(quadrant).ok_or_else(|| anyhow!(UsageError(format!("unknown quadrant `{quadrant}`"))))?;
    inputs.absorb(quadrant.slug().as_bytes());
    let families = Families::compute(&game)?;
    let built = construct_prop2(&game, &target, quadrant, &families)?;

    fs::create_dir_all(out).with_context(|| format!("cannot create {}", out.display()))?;
    let write = |name: &str, value: &Value| -> Result<()> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        fs::write(out.join(name), text).with_context(|| format!("cannot write {name}"))
    };
    write("host.ts.json", &type_structure_to_json(&game, &built.host))?;
    write("ss.json", &state_space_to_json(&game, &built.host, "host.ts.json", &built.state_space))?;
    write("closures.json", &closures_to_json(&game, &built.host, &built.closures))?;

    let mut report = Report::new(ctx.command.clone(), inputs.digest());
    report.line(format!("target {} in quadrant {quadrant}", target.render(&game)));
    report.line("wrote host.ts.json, ss.json, closures.json");
    report.output("files", json!(["host.ts.json", "ss.json", "closures.json"]));
    report.blank();

    // Re-read what was written, exactly as `real` would.
    let host = parse_type_structure(&game, &fs::read_to_string(out.join("host.ts.json"))?)?;
    let spec = parse_state_space_spec(&fs::read_to_string(out.join("ss.json"))?)?;
    let ss = state_space_from_spec(&game, &host, &spec)?;
    let given = parse_closures(&game, &host, &fs::read_to_string(out.join("closures.json"))?)?;
    let rows = game
        .players()
        .map(|i| vec![game.player_name(i).to_string(), host.types(i).join(", "), type_set(&host, i, &ss.real[i.0])])
        .collect();
    report.table(&["player", "host types", "real"], rows);
    report.blank();
    let profile = build_profile(&game, &host, &ss, given)?;
    let (proj, got) = analyse_real(&mut report, &game, &host, &profile, true, None, false)?;
    report.assert(format!("the projection equals the target {}", target.render(&game)), proj == target);
    report.assert(format!("the profile is {quadrant}"), got == quadrant);
    Ok(report)
}

/// Marks errors that should exit as usage errors.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}
