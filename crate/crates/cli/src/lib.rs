//! Command-line surface of `jetoper`: argument parsing, the commands, and a
//! deterministic report.
//!
//! Every command either reads its input from `--in` or samples it from the
//! seeded generator, runs its checks, and returns a [`Report`]. Reports
//! contain no timing, so a fixed configuration renders to identical bytes.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use jetoper::affine::{verma_sugawara_scalars, Level};
use jetoper::freefield::{
    basic0_values, basic2_check, basic_check, build_wakimoto_action, predicted_central_character, scalars_from_class,
    vacuum_in_check, verify_affine_relations, wakimoto_central_character, CheckReport,
};
use jetoper::json::{
    algebra_to_json, canonical_to_json, class_to_json, connection_from_json, connection_to_json,
    field_expression_to_json, gauge_to_json, jet_weight_from_json, jet_weight_to_json, oper_from_json, oper_to_json,
    parse_text, scalar_from_json, scalar_to_json,
};
use jetoper::liealg::{ChevalleyAlgebra, LieSeries};
use jetoper::miura::{miura_residue_check, Twist};
use jetoper::opers::{
    canonical_to_punctured, canonicalize_disk, canonicalize_punctured, embed, gauge_apply_disk, gauge_apply_punctured,
    res_n, res_n_m, residue_from_canonical, OperDisk, OperPunctured,
};
use jetoper::random::Sampler;
use jetoper::takiff::{central_eigenvalue, centrality_failures, geoffriau_character, rho_n, varpi, CentralQuadratic, JetWeight};
use jetoper::{Error, Q, Result};

#[derive(Parser, Debug, Clone)]
#[command(name = "jetoper", version, about = "Exact computations with opers, jet algebras and Wakimoto modules")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by every command.
#[derive(Args, Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Cartan type of the algebra.
    #[arg(long = "type", global = true, default_value = "A")]
    pub kind: String,
    #[arg(long, global = true, default_value_t = 1)]
    pub rank: usize,
    /// Pole order `n`.
    #[arg(long, global = true, default_value_t = 1)]
    pub order: usize,
    /// Series are known modulo `t^precision`.
    #[arg(long, global = true, default_value_t = 8)]
    pub precision: i64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Input JSON document; sampled from the seed when absent.
    #[arg(long = "in", global = true)]
    pub input: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Render the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { kind: "A".into(), rank: 1, order: 1, precision: 8, seed: 0, input: None, out: None, json: false }
    }
}

#[derive(Subcommand, Debug, Clone, PartialEq)]
pub enum Command {
    /// Drinfeld-Sokolov canonical form and the gauge reaching it.
    Canonicalize {
        #[arg(long, default_value_t = 1)]
        samples: usize,
    },
    /// The class of `p_{-1} + ev_n(x)` and its truncations.
    Residue {
        /// Report only the `m`-th truncated residue.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 1)]
        samples: usize,
    },
    /// Canonical form on the punctured disk of a disk oper.
    Embed {
        #[arg(long, default_value_t = 1)]
        samples: usize,
    },
    /// Residue of a Miura transform against the shifted Cartan residue.
    MiuraCheck {
        #[arg(long, default_value = "+rho")]
        twist: String,
        #[arg(long, default_value_t = 1)]
        samples: usize,
    },
    /// Quadratic central elements of the Takiff algebra on Verma modules.
    TakiffCharacter {
        /// Length bound of the Verma monomials used for centrality.
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value_t = 1)]
        samples: usize,
    },
    /// Free-field realization checks for `sl_2`.
    WakimotoVerify {
        /// Number of creators in the tested Fock monomials.
        #[arg(long, default_value_t = 2)]
        depth: usize,
        /// Level `k` in trace-form units; sampled when absent.
        #[arg(long)]
        level: Option<String>,
    },
    /// Verma, Wakimoto, oper-side and Geoffriau central characters for `sl_2`.
    Compat {
        #[arg(long, default_value_t = 5)]
        samples: usize,
        /// Negative control: use `+rho_n` instead of `-rho_n` in the
        /// oper-side prediction.
        #[arg(long)]
        inject_rho_sign_error: bool,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Canonicalize { .. } => "canonicalize",
            Command::Residue { .. } => "residue",
            Command::Embed { .. } => "embed",
            Command::MiuraCheck { .. } => "miura-check",
            Command::TakiffCharacter { .. } => "takiff-character",
            Command::WakimotoVerify { .. } => "wakimoto-verify",
            Command::Compat { .. } => "compat",
        }
    }
}

/// One named check with an optional counterexample.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub counterexample: Option<Value>,
}

/// Result of a command: echo, checks, outputs.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub config: Value,
    pub checks: Vec<Check>,
    pub outputs: Vec<(String, Value)>,
}

impl Report {
    fn new(cli: &Cli) -> Self {
        let c = &cli.config;
        let config = json!({
            "type": c.kind,
            "rank": c.rank,
            "order": c.order,
            "precision": c.precision,
            "seed": c.seed,
            "input": c.input.as_ref().map(|p| p.display().to_string()),
            "options": format!("{:?}", cli.command),
        });
        Self { command: cli.command.name().into(), config, checks: Vec::new(), outputs: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, counterexample: impl FnOnce() -> Value) {
        let counterexample = (!passed).then(counterexample);
        self.checks.push(Check { name: name.into(), passed, counterexample });
    }

    fn check_report(&mut self, name: &str, r: CheckReport) {
        let failures: Vec<Value> = r.failures.iter().take(5).map(|f| json!(f)).collect();
        let passed = r.passed();
        self.check(format!("{name} ({} cases)", r.checked), passed, || json!(failures));
    }

    fn output(&mut self, key: impl Into<String>, v: Value) {
        self.outputs.push((key.into(), v));
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                let mut o = Map::new();
                o.insert("name".into(), json!(c.name));
                o.insert("status".into(), json!(if c.passed { "pass" } else { "fail" }));
                if let Some(x) = &c.counterexample {
                    o.insert("counterexample".into(), x.clone());
                }
                Value::Object(o)
            })
            .collect();
        let outputs: Map<String, Value> = self.outputs.iter().cloned().collect();
        json!({
            "command": self.command,
            "config": self.config,
            "passed": self.passed(),
            "checks": checks,
            "outputs": outputs,
        })
    }

    /// The report as text or pretty JSON, newline-terminated.
    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            return serde_json::to_string_pretty(&self.to_json()).expect("serializable") + "\n";
        }
        let mut s = format!("jetoper {}\n", self.command);
        for c in &self.checks {
            s.push_str(if c.passed { "PASS " } else { "FAIL " });
            s.push_str(&c.name);
            if let Some(x) = &c.counterexample {
                s.push_str(&format!(": {x}"));
            }
            s.push('\n');
        }
        for (k, v) in &self.outputs {
            s.push_str(&format!("{k}: {v}\n"));
        }
        s.push_str(if self.passed() { "result: pass\n" } else { "result: fail\n" });
        s
    }
}

fn algebra(cfg: &RunConfig) -> Result<ChevalleyAlgebra> {
    ChevalleyAlgebra::build(&cfg.kind, cfg.rank)
}

fn read_input(cfg: &RunConfig) -> Result<Option<Value>> {
    match &cfg.input {
        None => Ok(None),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", p.display())))?;
            parse_text(&text).map(Some)
        }
    }
}

fn require_order(cfg: &RunConfig) -> Result<()> {
    if cfg.order == 0 {
        return Err(Error::Invalid("--order must be at least 1".into()));
    }
    Ok(())
}

/// Runs the command and assembles its report.
pub fn run(cli: &Cli) -> Result<Report> {
    let mut report = Report::new(cli);
    let cfg = &cli.config;
    match &cli.command {
        Command::Canonicalize { samples } => canonicalize_cmd(cfg, *samples, &mut report)?,
        Command::Residue { m, samples } => residue_cmd(cfg, *m, *samples, &mut report)?,
        Command::Embed { samples } => embed_cmd(cfg, *samples, &mut report)?,
        Command::MiuraCheck { twist, samples } => miura_cmd(cfg, twist, *samples, &mut report)?,
        Command::TakiffCharacter { depth, samples } => takiff_cmd(cfg, *depth, *samples, &mut report)?,
        Command::WakimotoVerify { depth, level } => wakimoto_cmd(cfg, *depth, level.as_deref(), &mut report)?,
        Command::Compat { samples, inject_rho_sign_error } => {
            compat_cmd(cfg, *samples, *inject_rho_sign_error, &mut report)?
        }
    }
    Ok(report)
}

enum OperInput {
    Disk(OperDisk),
    Punctured(OperPunctured),
}

fn canonicalize_cmd(cfg: &RunConfig, samples: usize, report: &mut Report) -> Result<()> {
    let mut s = Sampler::new(cfg.seed);
    let (alg, opers) = match read_input(cfg)? {
        Some(v) => {
            let doc = oper_from_json(&v)?;
            let op = match doc.order {
                Some(order) => OperInput::Disk(OperDisk { order, x: doc.x }),
                None => OperInput::Punctured(OperPunctured { x: doc.x }),
            };
            (doc.alg, vec![op])
        }
        None => {
            let alg = algebra(cfg)?;
            let ops = (0..samples).map(|_| OperInput::Punctured(s.oper_punctured(&alg, -1, cfg.precision))).collect();
            (alg, ops)
        }
    };
    let mut results = Vec::new();
    for (i, op) in opers.iter().enumerate() {
        match op {
            OperInput::Punctured(op) => {
                let (c, g) = canonicalize_punctured(&alg, op)?;
                let reached = gauge_apply_punctured(&alg, &g, op)?;
                let target = canonical_to_punctured(&alg, &c)?;
                report.check(format!("sample {i}: recorded gauge reaches the canonical form"), reached.x.agrees_with(&target.x), || {
                    json!({"reached": lie(&alg, &reached.x)})
                });
                let (c2, g2) = canonicalize_punctured(&alg, &target)?;
                report.check(format!("sample {i}: idempotent"), c2.agrees_with(&c) && g2.is_identity(), || {
                    json!({"again": canonical_to_json(&alg, &c2)})
                });
                let moved = gauge_apply_punctured(&alg, &s.gauge(&alg, -1, cfg.precision), op)?;
                let (c3, _) = canonicalize_punctured(&alg, &moved)?;
                report.check(format!("sample {i}: gauge invariant"), c3.agrees_with(&c), || {
                    json!({"after_gauge": canonical_to_json(&alg, &c3)})
                });
                results.push(json!({"canonical": canonical_to_json(&alg, &c), "gauge": gauge_to_json(&alg, &g)}));
            }
            OperInput::Disk(op) => {
                let (c, g) = canonicalize_disk(&alg, op)?;
                let reached = gauge_apply_disk(&alg, &g, op)?;
                let target = canonical_to_punctured(&alg, &c)?;
                report.check(format!("sample {i}: recorded gauge reaches the canonical form"), reached.x.agrees_with(&target.x), || {
                    json!({"reached": lie(&alg, &reached.x)})
                });
                let again = OperDisk { order: op.order, x: target.x };
                let (c2, g2) = canonicalize_disk(&alg, &again)?;
                report.check(format!("sample {i}: idempotent"), c2.agrees_with(&c) && g2.is_identity(), || {
                    json!({"again": canonical_to_json(&alg, &c2)})
                });
                let moved = gauge_apply_disk(&alg, &s.gauge(&alg, 0, op.x.precision()), op)?;
                let (c3, _) = canonicalize_disk(&alg, &moved)?;
                report.check(format!("sample {i}: gauge invariant"), c3.agrees_with(&c), || {
                    json!({"after_gauge": canonical_to_json(&alg, &c3)})
                });
                results.push(json!({"canonical": canonical_to_json(&alg, &c), "gauge": gauge_to_json(&alg, &g)}));
            }
        }
    }
    report.output("results", Value::Array(results));
    Ok(())
}

fn lie(alg: &ChevalleyAlgebra, x: &LieSeries) -> Value {
    jetoper::json::lie_series_to_json(alg, x)
}

fn disk_inputs(cfg: &RunConfig, s: &mut Sampler, samples: usize, precision: i64) -> Result<(ChevalleyAlgebra, Vec<OperDisk>)> {
    match read_input(cfg)? {
        Some(v) => {
            let doc = oper_from_json(&v)?;
            let order = doc.order.ok_or_else(|| Error::Parse("a disk oper needs an \"order\" field".into()))?;
            Ok((doc.alg, vec![OperDisk { order, x: doc.x }]))
        }
        None => {
            require_order(cfg)?;
            let alg = algebra(cfg)?;
            let ops = (0..samples).map(|_| s.oper_disk(&alg, cfg.order, precision)).collect();
            Ok((alg, ops))
        }
    }
}

fn residue_cmd(cfg: &RunConfig, m: Option<usize>, samples: usize, report: &mut Report) -> Result<()> {
    let mut s = Sampler::new(cfg.seed);
    let (alg, ops) = disk_inputs(cfg, &mut s, samples, cfg.precision)?;
    let mut results = Vec::new();
    for (i, op) in ops.iter().enumerate() {
        let (_, class) = res_n(&alg, op)?;
        let n = op.order;
        let shown = match m {
            Some(m) => res_n_m(&alg, op, m)?,
            None => class.clone(),
        };
        report.check(format!("sample {i}: Res_n^n equals Res_n"), res_n_m(&alg, op, n)? == class, || json!(null));
        for k in 1..n {
            let rk = res_n_m(&alg, op, k)?;
            report.check(format!("sample {i}: Res_n^{k} truncates Res_n"), rk == class.truncate(k)?, || class_to_json(&rk));
        }
        let moved = gauge_apply_disk(&alg, &s.gauge(&alg, 0, op.x.precision()), op)?;
        let (_, after) = res_n(&alg, &moved)?;
        report.check(format!("sample {i}: gauge invariant"), after == class, || class_to_json(&after));
        results.push(json!({"order": n, "m": m.unwrap_or(n), "class": class_to_json(&shown)}));
    }
    report.output("results", Value::Array(results));
    Ok(())
}

fn embed_cmd(cfg: &RunConfig, samples: usize, report: &mut Report) -> Result<()> {
    let mut s = Sampler::new(cfg.seed);
    let (alg, ops) = disk_inputs(cfg, &mut s, samples, cfg.order as i64 + 1)?;
    let mut results = Vec::new();
    for (i, op) in ops.iter().enumerate() {
        let e = embed(&alg, op)?;
        let observed = residue_from_canonical(&alg, &e, op.order)?;
        let (_, expected) = res_n(&alg, op)?;
        report.check(format!("sample {i}: residue recovered from the embedding"), observed == expected, || {
            json!({"observed": class_to_json(&observed), "expected": class_to_json(&expected)})
        });
        results.push(json!({
            "input": oper_to_json(&alg, Some(op.order), &op.x),
            "embedded": canonical_to_json(&alg, &e),
        }));
    }
    report.output("results", Value::Array(results));
    Ok(())
}

fn miura_cmd(cfg: &RunConfig, twist: &str, samples: usize, report: &mut Report) -> Result<()> {
    let mut s = Sampler::new(cfg.seed);
    let (alg, conns) = match read_input(cfg)? {
        Some(v) => {
            let (alg, c) = connection_from_json(&v)?;
            (alg, vec![c])
        }
        None => {
            require_order(cfg)?;
            let alg = algebra(cfg)?;
            let twist = Twist::parse(twist)?;
            let conns = (0..samples).map(|_| s.h_connection(&alg, twist, cfg.order, cfg.order as i64 + 1)).collect();
            (alg, conns)
        }
    };
    let mut results = Vec::new();
    for (i, c) in conns.iter().enumerate() {
        let r = miura_residue_check(&alg, c)?;
        report.check(format!("sample {i}: Miura residue diagram commutes"), r.passed(), || {
            json!({"predicted": class_to_json(&r.predicted), "observed": class_to_json(&r.observed)})
        });
        results.push(json!({"connection": connection_to_json(&alg, c), "class": class_to_json(&r.observed)}));
    }
    report.output("results", Value::Array(results));
    Ok(())
}

/// `2 [t^{2n-2-a}] varpi(Lambda + rho_n)_1 - delta_{n,1} / 2`.
fn geoffriau_prediction(alg: &ChevalleyAlgebra, lambda: &JetWeight, a: usize) -> Result<Q> {
    let n = lambda.n();
    let class = geoffriau_character(alg, lambda)?;
    let c = &class.jets[0].coeffs()[2 * n - 2 - a];
    let mut out = c * Q::from_integer(2.into());
    if n == 1 {
        out -= Q::new(1.into(), 2.into());
    }
    Ok(out)
}

fn takiff_cmd(cfg: &RunConfig, depth: usize, samples: usize, report: &mut Report) -> Result<()> {
    let mut s = Sampler::new(cfg.seed);
    let alg = algebra(cfg)?;
    let weights = match read_input(cfg)? {
        Some(v) => vec![jet_weight_from_json(&v)?],
        None => {
            require_order(cfg)?;
            (0..samples).map(|_| s.jet_weight(alg.rank(), cfg.order)).collect()
        }
    };
    let mut results = Vec::new();
    for (i, lam) in weights.iter().enumerate() {
        let n = lam.n();
        let reflected = lam.add(&rho_n(&alg, n)?)?.neg().sub(&rho_n(&alg, n)?)?;
        let mut eigen = Vec::new();
        for a in n - 1..=2 * n - 2 {
            let c = CentralQuadratic::new(&alg, n, a)?;
            let value = central_eigenvalue(&alg, &c, lam)?;
            let fails = centrality_failures(&alg, &c, lam, depth)?;
            report.check(format!("sample {i}: C_{a} central to depth {depth}"), fails.is_empty(), || {
                json!(fails.iter().take(3).map(|f| format!("{f:?}")).collect::<Vec<_>>())
            });
            let predicted = geoffriau_prediction(&alg, lam, a)?;
            report.check(format!("sample {i}: C_{a} eigenvalue matches the character"), value == predicted, || {
                json!({"value": scalar_to_json(&value), "predicted": scalar_to_json(&predicted)})
            });
            let mirrored = central_eigenvalue(&alg, &c, &reflected)?;
            report.check(format!("sample {i}: C_{a} invariant under Lambda + rho_n -> -(Lambda + rho_n)"), mirrored == value, || {
                json!({"value": scalar_to_json(&value), "reflected": scalar_to_json(&mirrored)})
            });
            eigen.push(scalar_to_json(&value));
        }
        results.push(json!({
            "lambda": jet_weight_to_json(lam),
            "character": class_to_json(&geoffriau_character(&alg, lam)?),
            "eigenvalues": eigen,
        }));
    }
    report.output("results", Value::Array(results));
    Ok(())
}

fn sl2(cfg: &RunConfig) -> Result<ChevalleyAlgebra> {
    if !cfg.kind.eq_ignore_ascii_case("A") || cfg.rank != 1 {
        return Err(Error::UnsupportedAlgebra { kind: cfg.kind.clone(), rank: cfg.rank });
    }
    ChevalleyAlgebra::build("A", 1)
}

fn wakimoto_cmd(cfg: &RunConfig, depth: usize, level: Option<&str>, report: &mut Report) -> Result<()> {
    let alg = sl2(cfg)?;
    require_order(cfg)?;
    let n = cfg.order;
    let mut s = Sampler::new(cfg.seed);
    let lam = match read_input(cfg)? {
        Some(v) => jet_weight_from_json(&v)?,
        None => s.jet_weight(1, n),
    };
    let n = lam.n();
    let k = match level {
        Some(text) => scalar_from_json(&json!(text))?,
        None => s.rational(),
    };
    let module = build_wakimoto_action(&alg, &Level::new(k.clone()), &lam)?;
    let action = module.action();
    report.check("f field has no constant term", !action.fields[alg.f(0)].has_constant_term(), || json!(null));
    report.check_report("affine relations", verify_affine_relations(&module, depth));
    report.check_report("vacuum is an eigenvector of I_n with character Lambda", vacuum_in_check(&module, &lam, 4));
    report.check_report("normally ordered :T(a*) a: kill the vacuum", basic_check(n, 2, 6)?);
    report.check_report("[R(a*) b]_m kill the vacuum", basic2_check(n, &lam, 6)?);
    let b0 = basic0_values(n, 4)?;
    let expected0 = Q::from_integer((-(n as i64)).into());
    report.check("[:a a*:]_m u_n vanishes for m > 0", b0[1..].iter().all(num_traits::Zero::is_zero), || {
        json!(b0.iter().map(scalar_to_json).collect::<Vec<_>>())
    });
    report.check("[:a a*:]_0 u_n = -n u_n from the Weyl relations", b0[0] == expected0, || scalar_to_json(&b0[0]));

    let fields: Map<String, Value> =
        (0..alg.dim()).map(|b| (alg.label(b).to_string(), field_expression_to_json(&action.fields[b]))).collect();
    report.output("level", scalar_to_json(&k));
    report.output("lambda", jet_weight_to_json(&lam));
    report.output("c1", scalar_to_json(&action.c1));
    report.output("heisenberg_normalization", scalar_to_json(&action.c_h));
    report.output("fields", Value::Object(fields));
    report.output("basic0", json!(b0.iter().map(scalar_to_json).collect::<Vec<_>>()));
    Ok(())
}

fn scalars(v: &[Q]) -> Value {
    json!(v.iter().map(scalar_to_json).collect::<Vec<_>>())
}

fn compat_cmd(cfg: &RunConfig, samples: usize, inject: bool, report: &mut Report) -> Result<()> {
    let alg = sl2(cfg)?;
    require_order(cfg)?;
    let crit = Level::critical(&alg);
    let mut s = Sampler::new(cfg.seed);
    let weights = match read_input(cfg)? {
        Some(v) => vec![jet_weight_from_json(&v)?],
        None => {
            let n = cfg.order;
            let mut w = vec![rho_n(&alg, n)?.neg()];
            w.extend((0..samples).map(|_| s.jet_weight(1, n)));
            w
        }
    };
    let mut results = Vec::new();
    for (i, lam) in weights.iter().enumerate() {
        let n = lam.n();
        let rho = rho_n(&alg, n)?;
        let verma = verma_sugawara_scalars(&alg, &crit, lam, 2)?;
        let wakimoto = wakimoto_central_character(&alg, lam)?;
        let shifted = if inject { lam.neg().add(&rho)? } else { lam.neg().sub(&rho)? };
        let class = varpi(&alg, &shifted)?;
        let predicted = scalars_from_class(&alg, &class)?;
        let geoffriau = geoffriau_character(&alg, lam)?;
        let reflected = lam.neg().sub(&rho.scale(&Q::from_integer(2.into())))?;
        let mirror = verma_sugawara_scalars(&alg, &crit, &reflected, 0)?;

        let tag = format!("sample {i}");
        report.check(format!("{tag}: Verma equals Wakimoto"), verma == wakimoto, || {
            json!({"verma": scalars(&verma), "wakimoto": scalars(&wakimoto)})
        });
        report.check(format!("{tag}: Verma equals the oper-side prediction"), verma == predicted, || {
            json!({"verma": scalars(&verma), "predicted": scalars(&predicted)})
        });
        report.check(format!("{tag}: Geoffriau class equals the predicted class"), geoffriau == class, || {
            json!({"geoffriau": class_to_json(&geoffriau), "predicted": class_to_json(&class)})
        });
        report.check(format!("{tag}: invariant under Lambda -> -Lambda - 2 rho_n"), mirror == verma, || {
            json!({"verma": scalars(&verma), "reflected": scalars(&mirror)})
        });
        results.push(json!({
            "lambda": jet_weight_to_json(lam),
            "sugawara": scalars(&verma),
            "class": class_to_json(&class),
        }));
    }
    // The reference pipeline without injected errors, for the record.
    if inject {
        let lam = &weights[0];
        report.output("uninjected_prediction", scalars(&predicted_central_character(&alg, lam)?));
    }
    report.output("algebra", algebra_to_json(&alg));
    report.output("results", Value::Array(results));
    Ok(())
}

/// Parses `args`, runs, writes the report, and returns the exit status:
/// 0 when every check passes, 1 when a check fails, 2 on errors.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let start = std::time::Instant::now();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let text = report.render(cli.config.json);
    match &cli.config.out {
        Some(p) => {
            if let Err(e) = fs::write(p, &text) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return 2;
            }
        }
        None => print!("{text}"),
    }
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    i32::from(!report.passed())
}
