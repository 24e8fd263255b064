//! The four batch commands.

use std::fmt::Display;
use std::time::Instant;

use num_traits::Zero;

use crate::arith::{parse_scalar, GaussScalar, Rational};
use crate::dirac::{self, Lagrangian, SubspaceReal};
use crate::geometry;
use crate::linalg::Matrix;
use crate::normal_form::{self, Epsilon, Extension};
use crate::poisson::Part;
use crate::FormField;

use super::problem::Problem;
use super::report::{Record, Report, Verdict};
use super::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Check,
    Invariants,
    Dirac,
    NormalForm,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Invariants => "invariants",
            Command::Dirac => "dirac",
            Command::NormalForm => "normal-form",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    /// Extra sample points.
    pub points: Vec<Vec<Rational>>,
    pub grid_size: usize,
    /// Overrides the checks listed in the problem file.
    pub checks: Option<Vec<String>>,
    pub timing: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { points: Vec::new(), grid_size: 20, checks: None, timing: false }
    }
}

pub const CHECK_IDS: [&str; 3] = ["jacobi", "pair_conditions", "pde"];
pub const INVARIANT_IDS: [&str; 8] =
    ["ranks", "regular", "strongly_regular", "quasi_real", "real_index", "a_pi", "leaf_forms", "gcs"];
pub const NORMAL_FORM_IDS: [&str; 4] = ["mixed", "moser", "extension", "splitting"];

pub fn run(cmd: Command, problem: &Problem, opts: &Options) -> Result<Report, CliError> {
    for p in &opts.points {
        if p.len() != problem.chart.dim() {
            return Err(CliError::Invalid(format!(
                "point has {} coordinates, chart has {}",
                p.len(),
                problem.chart.dim()
            )));
        }
    }
    Ok(match cmd {
        Command::Check => cmd_check(problem, opts),
        Command::Invariants => cmd_invariants(problem, opts),
        Command::Dirac => cmd_dirac(problem, opts),
        Command::NormalForm => cmd_normal_form(problem, opts),
    })
}

/// Requested ids in order without repeats, flagged when known.
fn selection(known: &[&str], defaults: &[&str], problem: &Problem, opts: &Options) -> Vec<(String, bool)> {
    let requested: Vec<String> = match opts.checks.as_ref().or(problem.checks.as_ref()) {
        Some(ids) => ids.clone(),
        None => defaults.iter().map(|s| s.to_string()).collect(),
    };
    let mut out: Vec<(String, bool)> = Vec::new();
    for id in requested {
        if !out.iter().any(|(k, _)| *k == id) {
            let ok = known.contains(&id.as_str());
            out.push((id, ok));
        }
    }
    out
}

fn timed(opts: &Options, f: impl FnOnce() -> Record) -> Record {
    let start = Instant::now();
    let mut r = f();
    if opts.timing {
        r.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    r
}

fn unknown(report: &mut Report, id: &str, cmd: Command) {
    report.push(Record::refused(id, "", format!("unknown check `{id}` for `{}`", cmd.name())));
}

pub fn fmt_point(p: &[Rational]) -> String {
    format!("({})", p.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

fn fmt_row<T: Display>(r: &[T]) -> String {
    format!("[{}]", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

pub fn fmt_matrix<T: Display>(m: &Matrix<T>) -> String {
    format!("[{}]", m.iter().map(|r| fmt_row(r)).collect::<Vec<_>>().join(", "))
}

fn fmt_split<T: Display>(v: &[T], n: usize) -> String {
    let s = |xs: &[T]| xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    format!("({} | {})", s(&v[..n]), s(&v[n..]))
}

fn fmt_lagrangian(l: &Lagrangian) -> String {
    format!("span{{{}}}", l.basis().iter().map(|v| fmt_split(v, l.n())).collect::<Vec<_>>().join(", "))
}

fn fmt_real(s: &SubspaceReal) -> String {
    let n = s.ambient() / 2;
    format!("span{{{}}}", s.basis().iter().map(|v| fmt_split(v, n)).collect::<Vec<_>>().join(", "))
}

fn cmd_check(problem: &Problem, opts: &Options) -> Report {
    let cmd = Command::Check;
    let mut report = Report::new(cmd.name());
    for (id, ok) in selection(&CHECK_IDS, &CHECK_IDS, problem, opts) {
        if !ok {
            unknown(&mut report, &id, cmd);
            continue;
        }
        for (name, pi) in &problem.bivectors {
            report.push(timed(opts, || match id.as_str() {
                "jacobi" => {
                    let r = pi.jacobi_residual();
                    let rec = Record::pass_if(&id, name, r.is_zero());
                    if r.is_zero() { rec } else { rec.witness(format!("[π, π] = {r}")) }
                }
                "pair_conditions" => {
                    let (a, b) = pi.pair_conditions();
                    let mut rec = Record::pass_if(&id, name, a.is_zero() && b.is_zero());
                    if !a.is_zero() {
                        rec = rec.witness(format!("[π₁, π₂] = {a}"));
                    }
                    if !b.is_zero() {
                        rec = rec.witness(format!("[π₁, π₁] − [π₂, π₂] = {b}"));
                    }
                    rec
                }
                _ => {
                    let res: Vec<_> = pi.jacobi_pde_residuals().into_iter().filter(|r| !r.value.is_zero()).collect();
                    let vars = pi.chart().vars();
                    Record::pass_if(&id, name, res.is_empty()).witnesses(res.iter().map(|r| {
                        let part = match r.part {
                            Part::Real => "re",
                            Part::Imaginary => "im",
                        };
                        let (a, b, c) = r.triple;
                        format!("{part} ({}, {}, {}): {}", vars[a], vars[b], vars[c], r.value)
                    }))
                }
            }));
        }
    }
    report
}

fn sample(problem: &Problem, opts: &Options) -> Vec<Vec<Rational>> {
    let mut pts = geometry::default_grid(problem.chart.dim(), opts.grid_size);
    pts.extend(problem.points.iter().cloned());
    pts.extend(opts.points.iter().cloned());
    pts
}

fn cmd_invariants(problem: &Problem, opts: &Options) -> Report {
    let cmd = Command::Invariants;
    let mut report = Report::new(cmd.name());
    let pts = sample(problem, opts);
    let sel = selection(&INVARIANT_IDS, &INVARIANT_IDS, problem, opts);
    for (id, ok) in &sel {
        if !ok {
            unknown(&mut report, id, cmd);
        }
    }
    for (name, pi) in &problem.bivectors {
        let summary = geometry::rank_profiles(pi, &pts);
        let drops = || {
            summary.rank_drop_points.iter().map(|&k| format!("rank drop at {}", fmt_point(&pts[k]))).collect::<Vec<_>>()
        };
        for (id, ok) in &sel {
            if !ok {
                continue;
            }
            let id = id.as_str();
            report.push(timed(opts, || match id {
                "ranks" => Record::new(id, name, Verdict::Pass).witnesses(summary.profiles.iter().map(|p| {
                    format!(
                        "{} dim_E={} dim_Delta={} dim_D={} real_index={} order={}",
                        fmt_point(&p.point),
                        p.dim_e,
                        p.dim_delta,
                        p.dim_d,
                        p.real_index,
                        p.order
                    )
                })),
                "regular" => Record::pass_if(id, name, summary.consistent_with_regular).witnesses(drops()),
                "strongly_regular" => {
                    Record::pass_if(id, name, summary.consistent_with_strongly_regular).witnesses(drops())
                }
                "quasi_real" => Record::pass_if(id, name, summary.quasi_real_on_sample).witnesses(
                    summary
                        .profiles
                        .iter()
                        .filter(|p| !p.quasi_real_sample)
                        .take(3)
                        .map(|p| format!("Δ ≠ D at {}: {} < {}", fmt_point(&p.point), p.dim_delta, p.dim_d)),
                ),
                "real_index" => {
                    let mut bad = Vec::new();
                    for p in &summary.profiles {
                        let l = dirac::graph_bivector(&pi.matrix_at(&p.point)).expect("skew");
                        let slice = dirac::real_slice(&l).dim();
                        if slice != p.real_index {
                            bad.push(format!("{}: nullity {} but real slice {}", fmt_point(&p.point), p.real_index, slice));
                        }
                    }
                    let idx: Vec<usize> = summary.profiles.iter().map(|p| p.real_index).collect();
                    let (lo, hi) = (idx.iter().min().copied().unwrap_or(0), idx.iter().max().copied().unwrap_or(0));
                    Record::pass_if(id, name, bad.is_empty())
                        .witness(format!("real index ranges over {lo}..={hi}"))
                        .witnesses(bad)
                }
                "a_pi" => {
                    let bad: Vec<String> = pts
                        .iter()
                        .filter_map(|p| {
                            let a = geometry::a_pi_at(pi, p);
                            (!(a.routes_agree && a.dimension_identity)).then(|| format!("mismatch at {}", fmt_point(p)))
                        })
                        .collect();
                    let first = pts.first().map(|p| geometry::a_pi_at(pi, p));
                    Record::pass_if(id, name, bad.is_empty())
                        .witnesses(first.map(|a| format!("dim_R A = {}, dim_C (A + iA) = {}", a.real.dim(), a.complexified.dim())))
                        .witnesses(bad)
                }
                "leaf_forms" => {
                    let mut bad = Vec::new();
                    for p in &pts {
                        let d = geometry::presymplectic_at(pi, p);
                        if !d.well_defined {
                            bad.push(format!("leafwise form depends on preimages at {}", fmt_point(p)));
                        }
                        if !geometry::hat_sign_check(pi, p) {
                            bad.push(format!("sign relation fails at {}", fmt_point(p)));
                        }
                    }
                    let first = pts.first().map(|p| geometry::presymplectic_at(pi, p));
                    Record::pass_if(id, name, bad.is_empty())
                        .witnesses(first.map(|d| {
                            format!("omega_re = {}, omega_im = {}", fmt_matrix(&d.omega_re), fmt_matrix(&d.omega_im))
                        }))
                        .witnesses(bad)
                }
                _ => {
                    let mut bad = Vec::new();
                    let mut first = None;
                    for p in &pts {
                        match geometry::gcs_matrix(pi, p) {
                            Ok(g) => {
                                let graph = dirac::graph_bivector(&pi.matrix_at(p)).expect("skew");
                                if !(g.squares_to_minus_one()
                                    && g.preserves_pairing()
                                    && &g.plus_i_eigenspace() == graph.space())
                                {
                                    bad.push(format!("J fails its identities at {}", fmt_point(p)));
                                }
                                first.get_or_insert(g);
                            }
                            Err(e) => bad.push(format!("{} at {}", e, fmt_point(p))),
                        }
                    }
                    let mut rec = Record::pass_if(id, name, bad.is_empty());
                    if let Some(g) = first {
                        rec = rec.witness(format!("J = {}", fmt_matrix(&g.j))).witness(format!("sigma = {}", fmt_matrix(&g.sigma)));
                    }
                    let extra = bad.len().saturating_sub(5);
                    rec = rec.witnesses(bad.into_iter().take(5));
                    if extra > 0 {
                        rec = rec.witness(format!("… and {extra} more points"));
                    }
                    rec
                }
            }));
        }
    }
    report
}

enum Item {
    C(Lagrangian),
    R(SubspaceReal),
}

impl Item {
    fn show(&self) -> String {
        match self {
            Item::C(l) => fmt_lagrangian(l),
            Item::R(s) => format!("real {}", fmt_real(s)),
        }
    }
}

struct Machine<'a> {
    problem: &'a Problem,
    point: &'a [Rational],
    stack: Vec<Item>,
    witnesses: Vec<String>,
    failed: bool,
}

type OpResult = std::result::Result<(), String>;

impl Machine<'_> {
    fn pop(&mut self) -> std::result::Result<Item, String> {
        self.stack.pop().ok_or_else(|| "stack underflow".to_string())
    }

    fn pop_c(&mut self) -> std::result::Result<Lagrangian, String> {
        match self.pop()? {
            Item::C(l) => Ok(l),
            Item::R(s) => Lagrangian::complexify(&s).map_err(|e| e.to_string()),
        }
    }

    fn pop_r(&mut self) -> std::result::Result<SubspaceReal, String> {
        match self.pop()? {
            Item::R(s) => Ok(s),
            Item::C(l) if l.is_real() => Ok(dirac::real_slice(&l)),
            Item::C(_) => Err("expected a real lagrangian".into()),
        }
    }

    fn graph(&self, name: &str) -> std::result::Result<Lagrangian, String> {
        if let Ok(pi) = self.problem.bivector(name) {
            return dirac::graph_bivector(&pi.matrix_at(self.point)).map_err(|e| e.to_string());
        }
        let w = self.two_form(name)?;
        dirac::graph_twoform(&w).map_err(|e| e.to_string())
    }

    fn two_form(&self, name: &str) -> std::result::Result<Matrix<GaussScalar>, String> {
        let f: &FormField = self.problem.form(name).map_err(|e| e.to_string())?;
        f.matrix_at(self.point).map_err(|e| e.to_string())
    }

    fn expect(&mut self, ok: bool, what: String) {
        if !ok {
            self.failed = true;
        }
        self.witnesses.push(format!("{} {what}", if ok { "ok" } else { "FAILED" }));
    }

    fn step(&mut self, op: &str) -> OpResult {
        let words: Vec<&str> = op.split_whitespace().collect();
        let arg = |k: usize| words.get(k).copied().ok_or_else(|| format!("`{op}` needs an argument"));
        let err = |e: crate::Error| e.to_string();
        let n = self.problem.chart.dim();
        match words.first().copied().unwrap_or("") {
            "graph" => {
                let l = self.graph(arg(1)?)?;
                self.stack.push(Item::C(l));
            }
            "tangent" => self.stack.push(Item::C(Lagrangian::tangent(n))),
            "cotangent" => self.stack.push(Item::C(Lagrangian::cotangent(n))),
            "hat" => {
                let l = self.pop_c()?;
                self.stack.push(Item::R(dirac::hat(&l)));
            }
            "check" => {
                let l = self.pop_c()?;
                self.stack.push(Item::R(dirac::check(&l)));
            }
            "tilde" => {
                let l = self.pop_c()?;
                self.stack.push(Item::C(dirac::tilde(&l).map_err(err)?));
            }
            "hat_cot" => {
                let l = self.pop_c()?;
                self.stack.push(Item::R(dirac::hat_cot(&l).map_err(err)?));
            }
            "check_cot" => {
                let l = self.pop_c()?;
                self.stack.push(Item::R(dirac::check_cot(&l).map_err(err)?));
            }
            "tilde_cot" => {
                let l = self.pop_c()?;
                self.stack.push(Item::C(dirac::tilde_cot(&l).map_err(err)?));
            }
            "complexify" => {
                let l = self.pop_c()?;
                self.stack.push(Item::C(l));
            }
            "conj" => {
                let l = self.pop_c()?;
                self.stack.push(Item::C(dirac::conjugate(&l)));
            }
            "dot" | "bullet" => {
                let z = parse_scalar(arg(1)?).map_err(err)?;
                let l = self.pop_c()?;
                let out = if words[0] == "dot" { dirac::scalar_dot(&z, &l) } else { dirac::scalar_bullet(&z, &l) };
                self.stack.push(Item::C(out));
            }
            "product" | "coproduct" => {
                let b = self.pop_c()?;
                let a = self.pop_c()?;
                let out = if words[0] == "product" { dirac::tangent_product(&a, &b) } else { dirac::cotangent_product(&a, &b) };
                self.stack.push(Item::C(out.map_err(err)?));
            }
            "sum" | "cosum" => {
                let b = self.pop_r()?;
                let a = self.pop_r()?;
                let out =
                    if words[0] == "sum" { dirac::complex_tangent_sum(&a, &b) } else { dirac::complex_cotangent_sum(&a, &b) };
                self.stack.push(Item::C(out.map_err(err)?));
            }
            "bfield" => {
                let w = self.two_form(arg(1)?)?;
                let l = self.pop_c()?;
                self.stack.push(Item::C(dirac::b_field(&w, &l).map_err(err)?));
            }
            "beta" => {
                let p = self.problem.bivector(arg(1)?).map_err(|e| e.to_string())?.matrix_at(self.point);
                let l = self.pop_c()?;
                self.stack.push(Item::C(dirac::beta(&p, &l).map_err(err)?));
            }
            "dup" => {
                let top = self.pop_c()?;
                self.stack.push(Item::C(top.clone()));
                self.stack.push(Item::C(top));
            }
            "swap" => {
                let b = self.pop()?;
                let a = self.pop()?;
                self.stack.push(b);
                self.stack.push(a);
            }
            "drop" => {
                self.pop()?;
            }
            "show" => {
                let top = self.stack.last().ok_or("stack underflow")?;
                self.witnesses.push(top.show());
            }
            "indices" => {
                let l = self.pop_c()?;
                let i = dirac::indices(&l);
                self.witnesses.push(format!(
                    "real_index={} dim_range={} dim_delta={} dim_d={} kernel_dim={}",
                    i.real_index, i.dim_range, i.dim_delta, i.dim_d, i.kernel_dim
                ));
                self.stack.push(Item::C(l));
            }
            "expect_equal" => {
                let b = self.pop_c()?;
                let a = self.pop_c()?;
                self.expect(a == b, "top two entries agree".into());
            }
            "expect_graph" => {
                let name = arg(1)?;
                let g = self.graph(name)?;
                let top = self.pop_c()?;
                self.expect(top == g, format!("top equals the graph of `{name}`"));
                self.stack.push(Item::C(top));
            }
            "expect_real_index" => {
                let k: usize = arg(1)?.parse().map_err(|_| format!("`{op}`: expected an integer"))?;
                let top = self.pop_c()?;
                let got = dirac::indices(&top).real_index;
                self.expect(got == k, format!("real index {got} (expected {k})"));
                self.stack.push(Item::C(top));
            }
            "expect_leaf" => {
                let name = arg(1)?;
                let pi = self.problem.bivector(name).map_err(|e| e.to_string())?;
                let data = geometry::presymplectic_at(pi, self.point);
                let top = self.pop_c()?;
                let minus = geometry::leaf_lagrangian(&data, -1).map_err(err)?;
                let plus = geometry::leaf_lagrangian(&data, 1).map_err(err)?;
                self.expect(top == minus, format!("top equals L(Δ_ℂ, −Ω) for `{name}`"));
                self.witnesses.push(format!("top equals L(Δ_ℂ, Ω): {}", top == plus));
                self.stack.push(Item::C(top));
            }
            "" => return Err("empty operation".into()),
            other => return Err(format!("unknown operation `{other}`")),
        }
        Ok(())
    }
}

fn cmd_dirac(problem: &Problem, opts: &Options) -> Report {
    let cmd = Command::Dirac;
    let mut report = Report::new(cmd.name());
    let names: Vec<&str> = problem.pipelines.iter().map(|p| p.name.as_str()).collect();
    let mut pts: Vec<Vec<Rational>> = problem.points.iter().chain(&opts.points).cloned().collect();
    if pts.is_empty() {
        pts.push(vec![Rational::zero(); problem.chart.dim()]);
    }
    for (id, ok) in selection(&names, &names, problem, opts) {
        if !ok {
            unknown(&mut report, &id, cmd);
            continue;
        }
        let pipeline = problem.pipelines.iter().find(|p| p.name == id).expect("known pipeline");
        report.push(timed(opts, || {
            let mut witnesses = Vec::new();
            let mut failed = false;
            for pt in &pts {
                let mut m = Machine { problem, point: pt, stack: Vec::new(), witnesses: Vec::new(), failed: false };
                for op in &pipeline.ops {
                    if let Err(reason) = m.step(op) {
                        return Record::refused(&id, pipeline.ops.join("; "), format!("`{op}` at {}: {reason}", fmt_point(pt)))
                            .witnesses(witnesses);
                    }
                }
                if let Some(top) = m.stack.last() {
                    m.witnesses.push(format!("result {}", top.show()));
                }
                failed |= m.failed;
                witnesses.extend(m.witnesses.into_iter().map(|w| format!("{}: {w}", fmt_point(pt))));
            }
            Record::pass_if(&id, pipeline.ops.join("; "), !failed).witnesses(witnesses)
        }));
    }
    report
}

fn cmd_normal_form(problem: &Problem, opts: &Options) -> Report {
    let cmd = Command::NormalForm;
    let mut report = Report::new(cmd.name());
    let nf = problem.normal_form.as_ref();
    let mut defaults = vec!["mixed"];
    if nf.is_some_and(|s| !s.moser.is_empty()) {
        defaults.push("moser");
    }
    if nf.is_some_and(|s| s.extension.is_some()) {
        defaults.push("extension");
    }
    if nf.is_some_and(|s| s.x.is_some()) {
        defaults.push("splitting");
    }
    let sel = selection(&NORMAL_FORM_IDS, &defaults, problem, opts);
    let (Some(bundle), Some(nf)) = (problem.bundle.as_ref(), nf) else {
        for (id, _) in sel {
            report.push(Record::refused(id, "", "the file needs [submanifold] and [normal_form] sections"));
        }
        return report;
    };
    let pi = match problem.bivector(&nf.bivector) {
        Ok(pi) => pi,
        Err(e) => {
            for (id, _) in sel {
                report.push(Record::refused(id, &nf.bivector, e.to_string()));
            }
            return report;
        }
    };
    let pts = sample(problem, opts);
    let base_pts: Vec<Vec<Rational>> = pts.iter().map(|p| p[..bundle.base_dim()].to_vec()).collect();
    let mixed = normal_form::mixed_check(pi, bundle, &base_pts).expect("charts agree");
    let vars = bundle.chart().vars();
    for (id, ok) in sel {
        if !ok {
            unknown(&mut report, &id, cmd);
            continue;
        }
        report.push(timed(opts, || match id.as_str() {
            "mixed" => {
                let bad = mixed.direct_sum.iter().filter(|&&b| !b).count();
                Record::pass_if(&id, &nf.bivector, mixed.is_mixed())
                    .witnesses(
                        mixed
                            .imaginary_witnesses
                            .iter()
                            .map(|((a, j), w)| format!("π₂(d{}, d{}) on N = {w}", vars[*a], vars[*j])),
                    )
                    .witness(format!("direct sum fails at {bad} of {} points", mixed.direct_sum.len()))
                    .witness(format!("cosymplectic: {}", mixed.is_cosymplectic()))
            }
            "moser" => {
                if nf.moser.is_empty() {
                    return Record::refused(&id, "", "no forms listed under normal_form.moser");
                }
                let mut ws = Vec::new();
                for name in &nf.moser {
                    let averaged = problem.form(name).map_err(|e| e.to_string()).and_then(|f| {
                        normal_form::moser_average(bundle, f).map_err(|e| e.to_string())
                    });
                    match averaged {
                        Ok(f) => ws.push(format!("{name} ↦ {f}")),
                        Err(e) => return Record::refused(&id, name, format!("weight: {e}")).witnesses(ws),
                    }
                }
                Record::new(&id, nf.moser.join(", "), Verdict::Pass).witnesses(ws)
            }
            "extension" => {
                let Some(name) = &nf.extension else {
                    return Record::refused(&id, "", "no extension form given");
                };
                let ext = match problem.form(name).map_err(|e| e.to_string()).and_then(|f| {
                    Extension::new(bundle, f.clone()).map_err(|e| e.to_string())
                }) {
                    Ok(e) => e,
                    Err(e) => return Record::refused(&id, name, e),
                };
                let rep = normal_form::extension_check(bundle, &ext, &base_pts);
                let mut bad = Vec::new();
                for b in &base_pts {
                    let z = bundle.zero_section(b);
                    let base = bundle.base_chart().map(|_| pi_on_base(pi, bundle, b));
                    match base {
                        Some(Err(e)) => return Record::refused(&id, name, e),
                        Some(Ok(pn)) => match normal_form::local_model_from_matrix(bundle, &pn, &ext.matrix_at(&z)) {
                            Ok(l) if l.as_bivector().is_some() => {}
                            _ => bad.push(format!("local model is not a graph at {}", fmt_point(&z))),
                        },
                        None => match normal_form::local_model_from_matrix(bundle, &Vec::new(), &ext.matrix_at(&z)) {
                            Ok(l) if l.as_bivector().is_some() => {}
                            _ => bad.push(format!("local model is not a graph at {}", fmt_point(&z))),
                        },
                    }
                }
                Record::pass_if(&id, name, rep.passed() && bad.is_empty())
                    .witness(format!("closed: {}", rep.closed))
                    .witnesses(bad)
            }
            _ => {
                if nf.require_mixed && !mixed.is_mixed() {
                    return Record::refused(&id, &nf.bivector, "no mixed submanifold: N is not mixed for this bivector");
                }
                let zero = FormField::zero(bundle.chart(), 1);
                let eps = (|| -> std::result::Result<Epsilon, CliError> {
                    let x = nf.x.as_ref().ok_or_else(|| CliError::Invalid("normal_form.x is missing".into()))?;
                    Ok(Epsilon {
                        x: problem.vector(x)?.clone(),
                        xi1: nf.xi1.as_ref().map(|n| problem.form(n).cloned()).transpose()?.unwrap_or_else(|| zero.clone()),
                        xi2: nf.xi2.as_ref().map(|n| problem.form(n).cloned()).transpose()?.unwrap_or_else(|| zero.clone()),
                    })
                })();
                let eps = match eps {
                    Ok(e) => e,
                    Err(e) => return Record::refused(&id, &nf.bivector, e.to_string()),
                };
                match normal_form::splitting_check(pi, bundle, &eps, &pts) {
                    Err(e) => Record::refused(&id, &nf.bivector, e.to_string()),
                    Ok(rep) => {
                        let bad: Vec<String> = rep
                            .points
                            .iter()
                            .filter(|p| !p.model_matches)
                            .map(|p| format!("model differs from gr(π) at {}", fmt_point(&p.point)))
                            .collect();
                        let fiber_bad = rep.fiber_matches_dirac_form.iter().filter(|&&b| !b).count();
                        Record::pass_if(&id, &nf.bivector, rep.passed())
                            .witness(format!("B = {}", rep.b))
                            .witness(format!("omega = {}", rep.omega))
                            .witness(format!("B + i omega = {}", rep.extension()))
                            .witness(format!(
                                "model agrees with gr(π) at {} of {} points",
                                rep.points.len() - bad.len(),
                                rep.points.len()
                            ))
                            .witness(format!("fiber block differs from the transverse Dirac form at {fiber_bad} points"))
                            .witnesses(rep.warnings.iter().map(|w| format!("warning: {w}")))
                            .witnesses(bad.into_iter().take(5))
                    }
                }
            }
        }));
    }
    report
}

fn pi_on_base(
    pi: &crate::poisson::ComplexBivector,
    bundle: &normal_form::BundleChart,
    b: &[Rational],
) -> std::result::Result<Matrix<GaussScalar>, String> {
    let l = dirac::graph_bivector(&pi.matrix_at(&bundle.zero_section(b))).map_err(|e| e.to_string())?;
    dirac::backward(&bundle.inclusion(), &l)
        .map_err(|e| e.to_string())?
        .as_bivector()
        .ok_or_else(|| "the structure induced on N is not a bivector".to_string())
}
