//! Pipelines behind the `qtwist` subcommands and report rendering.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{Format, Session, TermSpec};
use crate::dual::{pointedness_check, verify_dual_relations};
use crate::error::{Error, Result};
use crate::group::coset_representatives;
use crate::hopf::{
    closed_form_check, coproduct_difference, hopf_verify, intertwining, lift_family, smash_build, twist_hopf,
    verify_lifted, GroupTwist, HopfAlgebra, DEFAULT_MAX_DIM,
};
use crate::report::{VerificationReport, Witness};
use crate::scalar::q_binomial_identity_sweep;
use crate::tensor::{Algebra, Bialgebra, GroupAlgebra, Tensor};
use crate::twist::{make_j_d, twisted_dual_associativity, verify_twist, BraidedTwist, Provenance};

pub const SCHEMA: u32 = 1;

/// Stages run by `report`, in output order.
pub const STAGES: [&str; 8] = ["validate", "qcheck", "verify-twist", "verify-hopf", "dual", "pointed", "gauge-check", "question"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Validate,
    Qcheck { max_n: usize },
    Build,
    VerifyTwist,
    VerifyHopf,
    Dual { coset: Option<usize> },
    Pointed,
    GaugeCheck,
    Question,
    Report,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Qcheck { .. } => "qcheck",
            Command::Build => "build",
            Command::VerifyTwist => "verify-twist",
            Command::VerifyHopf => "verify-hopf",
            Command::Dual { .. } => "dual",
            Command::Pointed => "pointed",
            Command::GaugeCheck => "gauge-check",
            Command::Question => "question",
            Command::Report => "report",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Options {
    pub max_dim: usize,
    pub parallel: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { max_dim: DEFAULT_MAX_DIM, parallel: false }
    }
}

/// Result of one subcommand.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub report: VerificationReport,
    /// Structure constants, emitted by `build` only.
    pub structure: Option<Value>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.report.all_pass() {
            0
        } else {
            1
        }
    }
}

/// Errors that stop a run with exit code 2; anything else is a failed check.
fn is_fatal(e: &Error) -> bool {
    matches!(e, Error::Config { .. } | Error::DimensionBudget { .. })
}

/// Turns a construction error into a failed check, or passes fatal ones on.
fn absorb<T>(r: &mut VerificationReport, name: &str, res: Result<T>) -> Result<Option<T>> {
    match res {
        Ok(v) => Ok(Some(v)),
        Err(e) if is_fatal(&e) => Err(e),
        Err(e) => {
            r.fail(name, e.to_string(), None);
            Ok(None)
        }
    }
}

/// Lazily built `H = 𝔅(V)#kG` and `A = H^T`, shared between stages.
pub struct Context<'a> {
    pub session: &'a Session,
    pub options: Options,
    h: OnceLock<Result<HopfAlgebra>>,
    a: OnceLock<Result<HopfAlgebra>>,
}

impl<'a> Context<'a> {
    pub fn new(session: &'a Session, options: Options) -> Self {
        Context { session, options, h: OnceLock::new(), a: OnceLock::new() }
    }

    pub fn h(&self) -> Result<&HopfAlgebra> {
        self.h
            .get_or_init(|| smash_build(self.session.nichols.clone(), self.options.max_dim))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn group_twist(&self) -> Option<GroupTwist> {
        self.session.sub.as_ref().map(|sd| {
            let algebra = GroupAlgebra::new(&sd.f);
            let value = algebra.tensor_from_matrix(&sd.jf);
            GroupTwist { algebra, value }
        })
    }

    pub fn a(&self) -> Result<&HopfAlgebra> {
        self.a
            .get_or_init(|| {
                let h = self.h()?;
                let t = lift_family(h, &self.session.family, self.group_twist())?;
                twist_hopf(h, &t)
            })
            .as_ref()
            .map_err(Clone::clone)
    }
}

pub fn run(session: &Session, cmd: &Command, options: &Options) -> Result<Outcome> {
    let ctx = Context::new(session, options.clone());
    let mut out = Outcome::default();
    match cmd {
        Command::Validate => out.report = validate(session),
        Command::Qcheck { max_n } => out.report = qcheck(*max_n),
        Command::Build => {
            let (r, s) = build(&ctx)?;
            out.report = r;
            out.structure = s;
        }
        Command::VerifyTwist => out.report = verify_twist_stage(session)?,
        Command::VerifyHopf => out.report = verify_hopf(&ctx)?,
        Command::Dual { coset } => out.report = dual(&ctx, *coset)?,
        Command::Pointed => out.report = pointed(&ctx)?,
        Command::GaugeCheck => out.report = gauge(session)?,
        Command::Question => out.report = question(&ctx)?,
        Command::Report => out.report = report(&ctx)?,
    }
    Ok(out)
}

/// `qcheck` without a config file.
pub fn run_qcheck(max_n: usize) -> Outcome {
    Outcome { report: qcheck(max_n), structure: None }
}

fn report(ctx: &Context) -> Result<VerificationReport> {
    let s = ctx.session;
    let wanted: Vec<&str> = match &s.config.checks {
        Some(list) => {
            if let Some(bad) = list.iter().find(|c| !STAGES.contains(&c.as_str())) {
                return Err(Error::Config { location: "checks".into(), message: format!("unknown stage {bad:?}") });
            }
            STAGES.iter().copied().filter(|st| list.iter().any(|c| c == st)).collect()
        }
        None => STAGES.to_vec(),
    };
    let max_n = s.datum.orders().iter().copied().max().unwrap_or(2).max(2);
    let run_stage = |st: &str| -> Result<VerificationReport> {
        match st {
            "validate" => Ok(validate(s)),
            "qcheck" => Ok(qcheck(max_n)),
            "verify-twist" => verify_twist_stage(s),
            "verify-hopf" => verify_hopf(ctx),
            "dual" => dual(ctx, None),
            "pointed" => pointed(ctx).map(|r| summary(r)),
            "gauge-check" if s.config.gauge.is_some() => gauge(s),
            "question" if s.config.question.is_some() => question(ctx),
            _ => {
                let mut r = VerificationReport::new();
                r.skip("stage", "no config block");
                Ok(r)
            }
        }
    };
    let results: Vec<Result<VerificationReport>> = if ctx.options.parallel {
        wanted.par_iter().map(|st| run_stage(st)).collect()
    } else {
        wanted.iter().map(|st| run_stage(st)).collect()
    };
    let mut r = VerificationReport::new();
    for (st, res) in wanted.iter().zip(results) {
        r.merge(&format!("{st}/"), res?);
    }
    Ok(r)
}

pub fn validate(s: &Session) -> VerificationReport {
    let d = s.datum.as_ref();
    let fam = &s.family;
    let mut r = d.validate();
    match fam.compatibility_violation(d) {
        None => r.pass("D compatible"),
        Some(why) => r.fail("D compatible", why, None),
    }
    let gamma = fam.is_invariant(d, d.gamma().members());
    let bilinear = fam.is_bilinear_invariant(d);
    let all: Vec<usize> = d.group().elements().collect();
    r.insert_data("gamma_invariant", json!(gamma));
    r.insert_data("bilinear_invariant", json!(bilinear));
    r.insert_data("invariance_predicates_agree", json!(gamma == bilinear));
    r.insert_data("g_invariant", json!(fam.is_invariant(d, &all)));
    r.insert_data("hat_g_invariant", json!(fam.hat(d).is_invariant(d, &all)));
    r.insert_data("q", json!(q_matrix(d)));
    r.insert_data("dim_nichols", json!(d.dim_nichols()));
    r.insert_data("dim", json!(d.dim_nichols() * d.group().order()));
    if let Some(sd) = &s.sub {
        r.insert_data("w", json!(sd.w.iter().map(|i| i + 1).collect::<Vec<_>>()));
        r.insert_data("f_order", json!(sd.f.order()));
    }
    r
}

fn q_matrix(d: &crate::qls::QlsDatum) -> Vec<Vec<String>> {
    (0..d.theta()).map(|i| (0..d.theta()).map(|j| d.q(i, j).to_string()).collect()).collect()
}

pub fn qcheck(max_n: usize) -> VerificationReport {
    let mut r = VerificationReport::new();
    let sweep = q_binomial_identity_sweep(max_n);
    match sweep.failures.first() {
        None => r.pass("q-binomial identity"),
        Some(f) => r.fail(
            "q-binomial identity",
            format!("{} failing instances", sweep.failures.len()),
            Some(Witness::new(format!("N = {}, a = {}, i = {}, j = {}", f.n, f.a, f.i, f.j), "0", &f.sum)),
        ),
    }
    r.insert_data("max_N", json!(max_n));
    r.insert_data("roots", json!(sweep.roots));
    r.insert_data("instances", json!(sweep.instances));
    r
}

pub fn verify_twist_stage(s: &Session) -> Result<VerificationReport> {
    let b = s.nichols.as_ref();
    let gamma = s.datum.gamma().members().to_vec();
    let mut r = VerificationReport::new();
    let twist = match &s.config.twist {
        None => {
            let Some(jd) = absorb(&mut r, "J_D construction", make_j_d(b, &s.family))? else { return Ok(r) };
            r.insert_data("factors", json!(jd.factors.len()));
            r.insert_data(
                "noncommuting_factors",
                json!(jd.noncommuting.map(|(i, j)| [i, j])),
            );
            jd.twist
        }
        Some(spec) => {
            let value = spec.resolve(s, 2, "twist")?;
            let Some(t) = absorb(&mut r, "invertible", BraidedTwist::from_value(b, value, Provenance::User))? else {
                return Ok(r);
            };
            t
        }
    };
    r.insert_data("provenance", serde_json::to_value(&twist.provenance).unwrap());
    r.insert_data("terms", twist.value.to_json(b));
    let checks = verify_twist(b, &twist, Some(&gamma));
    let twist_ok = checks.passed("twist equation");
    r.merge("", checks);
    if let Some(assoc) = absorb(&mut r, "dual oracle", twisted_dual_associativity(b, &twist.value))? {
        r.insert_data("dual_associative", json!(assoc));
        r.check("dual oracle agrees", assoc == twist_ok, "twisted dual associativity disagrees with the twist equation");
    }
    if let Some(sd) = &s.sub {
        let ga = GroupAlgebra::new(&sd.f);
        let value = ga.tensor_from_matrix(&sd.jf);
        if let Some(jf) = absorb(&mut r, "J_F: invertible", BraidedTwist::from_value(&ga, value, Provenance::User))? {
            r.merge("J_F: ", verify_twist(&ga, &jf, None));
        }
    }
    Ok(r)
}

pub fn verify_hopf(ctx: &Context) -> Result<VerificationReport> {
    let mut r = VerificationReport::new();
    let h = ctx.h()?;
    r.insert_data("dim", json!(h.dim()));
    let Some(a) = absorb(&mut r, "A constructed", ctx.a())? else {
        r.merge("H: ", hopf_verify(h));
        return Ok(r);
    };
    let t = a.twist().expect("twisted algebra carries its twist");
    let (rh, ra) = if ctx.options.parallel {
        rayon::join(|| hopf_verify(h), || hopf_verify(a))
    } else {
        (hopf_verify(h), hopf_verify(a))
    };
    r.merge("H: ", rh);
    r.merge("T: ", verify_lifted(h, t));
    r.merge("A: ", ra);
    r.insert_data("coproduct_changed", json!(coproduct_difference(h, a).is_some()));
    if let Some((matches, w)) = closed_form_check(h, a) {
        r.insert_data("closed_form_matches", json!(matches));
        r.insert_data("closed_form_first_mismatch", json!(w));
    }
    Ok(r)
}

pub fn dual(ctx: &Context, coset: Option<usize>) -> Result<VerificationReport> {
    let s = ctx.session;
    let d = s.datum.as_ref();
    let mut r = VerificationReport::new();
    let reps = match coset {
        Some(g) if g >= d.group().order() => {
            return Err(Error::Config {
                location: "--coset".into(),
                message: format!("element {g} outside 0..{}", d.group().order()),
            })
        }
        Some(g) => vec![g],
        None => coset_representatives(d.gamma()),
    };
    let Some(a) = absorb(&mut r, "A constructed", ctx.a())? else { return Ok(r) };
    for g in reps {
        let label = d.group().label(g).to_string();
        if let Some((rep, _)) = absorb(&mut r, &format!("A_{label}: subcoalgebra"), verify_dual_relations(a, &s.family, g))? {
            r.merge(&format!("A_{label}: "), rep);
        }
    }
    Ok(r)
}

pub fn pointed(ctx: &Context) -> Result<VerificationReport> {
    let mut r = VerificationReport::new();
    let Some(a) = absorb(&mut r, "A constructed", ctx.a())? else { return Ok(r) };
    if let Some((_, rep)) = absorb(&mut r, "pointedness", pointedness_check(a, &ctx.session.family))? {
        r.merge("", rep);
    }
    Ok(r)
}

/// Drops per-coset entries, which the `dual` stage already carries.
fn summary(r: VerificationReport) -> VerificationReport {
    let keep = |name: &str| !name.starts_with("A_");
    VerificationReport {
        checks: r.checks.into_iter().filter(|c| keep(&c.name)).collect(),
        data: r.data.into_iter().filter(|(k, _)| keep(k)).collect(),
    }
}

pub fn gauge(s: &Session) -> Result<VerificationReport> {
    let Some(gc) = &s.config.gauge else {
        return Err(Error::Config { location: "gauge".into(), message: "gauge-check needs a gauge block".into() });
    };
    let b = s.nichols.as_ref();
    let j = gc.j.resolve(s, 2, "gauge.j")?;
    let j2 = gc.j2.resolve(s, 2, "gauge.j2")?;
    let c = gc.c.resolve(s, 1, "gauge.c")?;
    let mut r = VerificationReport::new();
    if let Some(t) = absorb(&mut r, "J' invertible", BraidedTwist::from_value(b, j2.clone(), Provenance::User))? {
        r.insert_data("j2_is_twist", json!(verify_twist(b, &t, None).all_pass()));
    }
    r.insert_data("c", c.to_json(b));
    if let Some(o) = absorb(&mut r, "gauge equivalent", crate::twist::gauge_check(b, &j, &j2, &c))? {
        match o.witness {
            None if o.equivalent => r.pass("gauge equivalent"),
            w => r.fail("gauge equivalent", "Δ(c) J (c⁻¹⊗c⁻¹) differs from J'", w),
        }
        r.insert_data("transformed", o.transformed.to_json(b));
        r.insert_data("g_invariant", json!(o.g_invariant));
    }
    Ok(r)
}

/// Searches the supplied candidates for a conjugation `H ≅ A`; no claim beyond them.
pub fn question(ctx: &Context) -> Result<VerificationReport> {
    let s = ctx.session;
    let candidates = match &s.config.question {
        Some(q) => q.candidates.clone(),
        None => vec![TermSpec::Unit],
    };
    let mut r = VerificationReport::new();
    let h = ctx.h()?;
    let Some(a) = absorb(&mut r, "A constructed", ctx.a())? else { return Ok(r) };
    let mut rows = Vec::new();
    let mut found = false;
    for (k, spec) in candidates.iter().enumerate() {
        let c = spec.resolve(s, 1, &format!("question.candidates[{k}]"))?;
        let Some(o) = absorb(&mut r, &format!("candidate {k}"), intertwining(h, a, &c))? else { continue };
        found |= o.matches == h.dim();
        rows.push(json!({
            "c": c.to_json(s.nichols.as_ref()),
            "matches": o.matches,
            "gauge_trivial": o.gauge_trivial,
            "first_mismatch": o.witness,
        }));
    }
    r.pass("experiment ran");
    r.insert_data("dim", json!(h.dim()));
    r.insert_data("candidates", Value::Array(rows));
    r.insert_data("isomorphism_found", json!(found));
    Ok(r)
}

/// Sparse structure constants of `A`: products, coproducts and antipode by basis index.
pub fn build(ctx: &Context) -> Result<(VerificationReport, Option<Value>)> {
    let mut r = VerificationReport::new();
    let Some(a) = absorb(&mut r, "A constructed", ctx.a())? else { return Ok((r, None)) };
    r.pass("A constructed");
    let dim = a.dim() as u32;
    let lit = |c: &crate::scalar::Cyclotomic| c.to_string();
    let products: Vec<Value> = (0..dim)
        .into_par_iter()
        .flat_map_iter(|x| {
            (0..dim).filter_map(move |y| Tensor::mul_keys(a, &[x], &[y]).map(|(k, c)| json!([x, y, k[0], lit(&c)])))
        })
        .collect();
    let sparse = |t: &Tensor| -> Value {
        Value::Array(t.terms().map(|(k, c)| json!([k.to_vec(), lit(c)])).collect())
    };
    let coproducts: Vec<Value> = (0..dim).map(|x| sparse(a.coproduct(x))).collect();
    let antipode: Option<Vec<Value>> = (0..dim).map(|x| a.antipode(x).map(sparse)).collect();
    let mut s = BTreeMap::new();
    s.insert("dim", json!(dim));
    s.insert("basis", json!((0..dim).map(|x| a.label(x)).collect::<Vec<_>>()));
    s.insert("unit", json!(a.unit()));
    s.insert("counit", json!((0..dim).map(|x| lit(&a.counit(x))).collect::<Vec<_>>()));
    s.insert("product", Value::Array(products));
    s.insert("coproduct", Value::Array(coproducts));
    s.insert("antipode", json!(antipode));
    if let Some(t) = a.twist() {
        s.insert("twist", sparse(&t.value));
    }
    r.insert_data("dim", json!(dim));
    Ok((r, Some(serde_json::to_value(s).unwrap())))
}

/// Deterministic JSON document for a finished run.
pub fn render_json(cmd: &Command, config: Option<&str>, out: &Outcome) -> String {
    let mut doc = serde_json::Map::new();
    doc.insert("schema".into(), json!(SCHEMA));
    doc.insert("command".into(), json!(cmd.name()));
    doc.insert("config".into(), json!(config));
    doc.insert("status".into(), json!(if out.report.all_pass() { "pass" } else { "fail" }));
    doc.insert("checks".into(), serde_json::to_value(&out.report.checks).unwrap());
    doc.insert("data".into(), serde_json::to_value(&out.report.data).unwrap());
    if let Some(s) = &out.structure {
        doc.insert("structure".into(), s.clone());
    }
    let mut text = serde_json::to_string_pretty(&Value::Object(doc)).unwrap();
    text.push('\n');
    text
}

pub fn render_text(cmd: &Command, config: Option<&str>, out: &Outcome) -> String {
    let status = if out.report.all_pass() { "PASS" } else { "FAIL" };
    let mut text = match config {
        Some(c) => format!("{} on {c}: {status}\n", cmd.name()),
        None => format!("{}: {status}\n", cmd.name()),
    };
    text.push_str(&out.report.to_string());
    if let Some(s) = &out.structure {
        let count = |k: &str| s[k].as_array().map_or(0, |a| a.len());
        text.push_str(&format!("  structure: dim {}, {} nonzero products\n", s["dim"], count("product")));
    }
    text
}

pub fn render(format: Format, cmd: &Command, config: Option<&str>, out: &Outcome) -> String {
    match format {
        Format::Json => render_json(cmd, config, out),
        Format::Text => render_text(cmd, config, out),
    }
}

pub fn render_error(format: Format, cmd: &Command, e: &Error) -> String {
    match format {
        Format::Json => {
            let (location, message) = match e {
                Error::Config { location, message } => (Some(location.clone()), message.clone()),
                other => (None, other.to_string()),
            };
            let doc = json!({
                "schema": SCHEMA,
                "command": cmd.name(),
                "status": "error",
                "error": {"location": location, "message": message},
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
        }
        Format::Text => format!("error: {e}\n"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn session(name: &str) -> Session {
        let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(format!("{name}.json"));
        Session::load(&path).unwrap()
    }

    #[test]
    fn qcheck_small() {
        let out = run_qcheck(6);
        assert!(out.report.all_pass());
        assert_eq!(out.exit_code(), 0);
    }

    #[test]
    fn e1_twist_and_hopf() {
        let s = session("e1");
        let o = Options::default();
        assert!(run(&s, &Command::VerifyTwist, &o).unwrap().report.all_pass());
        let h = run(&s, &Command::VerifyHopf, &o).unwrap();
        assert!(h.report.all_pass(), "{}", h.report);
        assert_eq!(h.report.data["dim"], json!(8));
    }

    #[test]
    fn e1_pointed_false() {
        let s = session("e1");
        let out = run(&s, &Command::Pointed, &Options::default()).unwrap();
        assert_eq!(out.report.data["pointed"], json!(false));
        assert!(out.report.passed("pointedness oracles agree"));
    }

    #[test]
    fn gauge_needs_block() {
        let s = session("e1");
        assert!(matches!(run(&s, &Command::GaugeCheck, &Options::default()), Err(Error::Config { .. })));
    }

    #[test]
    fn e3_gauge() {
        let s = session("e3");
        let out = run(&s, &Command::GaugeCheck, &Options::default()).unwrap();
        assert!(out.report.all_pass(), "{}", out.report);
        assert_eq!(out.report.data["j2_is_twist"], json!(true));
    }

    #[test]
    fn dimension_cap_refuses() {
        let s = session("e2");
        let o = Options { max_dim: 10, parallel: false };
        assert!(matches!(run(&s, &Command::VerifyHopf, &o), Err(Error::DimensionBudget { .. })));
    }

    #[test]
    fn build_emits_tables() {
        let s = session("e1");
        let out = run(&s, &Command::Build, &Options::default()).unwrap();
        let st = out.structure.unwrap();
        assert_eq!(st["dim"], json!(8));
        assert_eq!(st["coproduct"].as_array().unwrap().len(), 8);
        assert!(st["antipode"].is_array());
    }
}
