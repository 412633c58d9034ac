#![allow(clippy::result_large_err)]

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use axial_core::{
    a0s_check, axis_check, axis_closure, build, build_form, conjugation_check, generating_maps, is_automorphism,
    jordan_label, parse_element, parse_presentation, radical_report, render_presentation, spanning_checks,
    uniqueness_check, verify_form, Algebra, AxisReport, CatalogParams, CheckOutcome, Element, Entry, FormVerification,
    FrobeniusError, FrobeniusForm, Matrix, MiyamotoError, Uniqueness, DEFAULT_CAP,
};
use clap::{Args, Parser, Subcommand};

use report::Report;

/// Exact analysis of axes in nonassociative algebras.
#[derive(Parser)]
#[command(name = "axial", version)]
struct Cli {
    /// Emit a flat JSON object instead of the indented text report.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct AxesArgs {
    /// Presentation file.
    file: PathBuf,
    /// Comma-separated element expressions, e.g. `a,b` or `1/2*a + b0`.
    #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
    axes: Vec<String>,
    /// Maximum number of closure members before giving up on completeness.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a presentation file and summarise it.
    Parse {
        file: PathBuf,
        /// Also print the canonical form of the presentation.
        #[arg(long)]
        render: bool,
    },
    /// Decompose an element and test the axis conditions.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        axis: String,
        /// Second axis used to refine the Jordan type label.
        #[arg(long)]
        partner: Option<String>,
    },
    /// Miyamoto involutions and their closure.
    Miyamoto(AxesArgs),
    /// Build and verify the Frobenius form on the closure of the axes.
    Frobenius(AxesArgs),
    /// Radical and Z_a checks for the Frobenius form of the axes.
    Zcheck(AxesArgs),
    /// Emit a catalog algebra as a presentation file.
    Catalog {
        /// ex2..ex9, uniform, exceptional or k2.
        entry: String,
        /// Parameter as key=value; repeatable.
        #[arg(long = "param", short = 'p')]
        params: Vec<String>,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Run every applicable check; exits 0 only if all pass.
    Verify(AxesArgs),
}

/// Bad input: exit status 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> InputError {
        InputError(e.to_string())
    }
}

/// A finished analysis; `passed = false` gives exit status 1.
struct Outcome {
    report: Report,
    passed: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Parse { file, render } => parse_cmd(file, *render),
        Command::Analyze { file, axis, partner } => analyze_cmd(file, axis, partner.as_deref()),
        Command::Miyamoto(a) => miyamoto_cmd(a),
        Command::Frobenius(a) => frobenius_cmd(a),
        Command::Zcheck(a) => zcheck_cmd(a),
        Command::Catalog { entry, params, output } => catalog_cmd(entry, params, output.as_deref(), cli.json),
        Command::Verify(a) => verify_cmd(a),
    };
    match result {
        Ok(Some(out)) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.report.to_json()).expect("json"));
            } else {
                print!("{}", out.report.render_text());
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> Result<Algebra, InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    parse_presentation(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn element(alg: &Algebra, expr: &str) -> Result<Element, InputError> {
    parse_element(alg, expr).map_err(|e| InputError(format!("in expression `{expr}`: {e}")))
}

fn elements(alg: &Algebra, exprs: &[String]) -> Result<Vec<Element>, InputError> {
    exprs.iter().map(|e| element(alg, e)).collect()
}

fn matrix_rows(m: &Matrix) -> Vec<String> {
    (0..m.rows())
        .map(|r| {
            let row: Vec<String> = m.row(r).iter().map(|c| c.to_string()).collect();
            format!("[{}]", row.join(" "))
        })
        .collect()
}

fn outcome_ok(o: CheckOutcome) -> bool {
    o != CheckOutcome::Fail
}

fn frobenius_error_kind(e: &FrobeniusError) -> &'static str {
    match e {
        FrobeniusError::NotAxis { .. } => "not_axis",
        FrobeniusError::FusionFailed { .. } => "fusion_failed",
        FrobeniusError::NotWeaklyPrimitive { .. } => "not_weakly_primitive",
        FrobeniusError::NonHomogeneous { .. } => "non_homogeneous",
        FrobeniusError::ClosureDoesNotSpan { .. } => "closure_does_not_span",
        FrobeniusError::NotAutomorphism(_) => "not_automorphism",
        FrobeniusError::PhiAsymmetry { .. } => "phi_asymmetry",
        FrobeniusError::PhiMismatch { .. } => "phi_mismatch",
        FrobeniusError::Closure(_) => "closure",
        FrobeniusError::Axis(_) => "axis",
    }
}

fn error_outcome(kind: &str, message: String) -> Outcome {
    let mut r = Report::new();
    r.text("status", "error")
        .text("error_kind", kind)
        .text("error", message);
    Outcome {
        report: r,
        passed: false,
    }
}

fn parse_cmd(file: &Path, render: bool) -> Result<Option<Outcome>, InputError> {
    let alg = load(file)?;
    let mut r = Report::new();
    r.text("field", alg.field())
        .count("dim", alg.dim())
        .list("basis", alg.labels())
        .flag("commutative", alg.is_commutative())
        .count("annihilator_dim", alg.annihilator().dim());
    if render {
        r.text("canonical", format!("\n{}", render_presentation(&alg).trim_end()));
    }
    Ok(Some(Outcome {
        report: r,
        passed: true,
    }))
}

fn axis_block(alg: &Algebra, rep: &AxisReport, partner: Option<&Element>) -> Report {
    let mut r = Report::new();
    r.text("element", alg.format_element(&rep.element))
        .flag("is_axis", rep.is_axis);
    if let Some(reason) = &rep.reason {
        r.text("reason", reason);
    }
    if let Some(p) = &rep.left_minimal_polynomial {
        r.text("left_minimal_polynomial", p);
    }
    if let Some(p) = &rep.right_minimal_polynomial {
        r.text("right_minimal_polynomial", p);
    }
    if !rep.is_axis {
        return r;
    }
    r.list("left_eigenvalues", &rep.left_eigenvalues)
        .list("right_eigenvalues", &rep.right_eigenvalues)
        .list("s_circ", &rep.s_circ)
        .list("s_dagger", &rep.s_dagger)
        .list("s_comm", &rep.s_comm);
    let mut spaces = Report::new();
    for c in rep.components() {
        let s = rep.space(&c);
        let mut b = Report::new();
        b.count("dim", s.dim())
            .list("basis", s.basis().iter().map(|v| alg.format_element(v)));
        spaces.block(&c.to_string(), b);
    }
    r.block("spaces", spaces)
        .flag("weakly_primitive", rep.weakly_primitive)
        .flag("left_primitive", rep.left_primitive)
        .flag("right_primitive", rep.right_primitive)
        .flag("fusion", rep.fusion_ok)
        .list("fusion_violations", &rep.fusion_violations)
        .flag("jordan_condition", rep.jordan_condition)
        .text("jordan_label", jordan_label(alg, rep, partner))
        .count("z_dim", rep.z_space().dim());
    r
}

fn analyze_cmd(file: &Path, axis: &str, partner: Option<&str>) -> Result<Option<Outcome>, InputError> {
    let alg = load(file)?;
    let a = element(&alg, axis)?;
    let partner = partner.map(|p| element(&alg, p)).transpose()?;
    let rep = axis_check(&alg, &a);
    Ok(Some(Outcome {
        report: axis_block(&alg, &rep, partner.as_ref()),
        passed: true,
    }))
}

/// Involution, automorphism and conjugation checks on the generating maps.
fn map_checks(alg: &Algebra, reports: &[AxisReport], labels: &[String]) -> Result<(Report, bool), MiyamotoError> {
    let mut r = Report::new();
    let mut ok = true;
    let mut all_maps = Vec::new();
    for (rep, label) in reports.iter().zip(labels) {
        let maps = generating_maps(rep)?;
        let mut block = Report::new();
        for m in &maps {
            let inv = m.is_involution();
            let auto = is_automorphism(alg, &m.matrix);
            ok &= inv && auto;
            let mut mb = Report::new();
            mb.flag("involution", inv).flag("automorphism", auto);
            block.block(
                &format!(
                    "flip {}",
                    m.flipped.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")
                ),
                mb,
            );
        }
        r.block(label, block);
        all_maps.extend(maps);
    }
    let (mut checked, mut failed) = (0, 0);
    for rep in reports {
        for tau in generating_maps(rep)? {
            for rho in &all_maps {
                checked += 1;
                if !conjugation_check(alg, rep, &rho.matrix, &tau.flipped)? {
                    failed += 1;
                }
            }
        }
    }
    ok &= failed == 0;
    r.count("conjugation_checks", checked)
        .count("conjugation_failures", failed);
    Ok((r, ok))
}

fn closure_block(
    alg: &Algebra,
    axes: &[Element],
    reports: &[AxisReport],
    labels: &[String],
    cap: usize,
) -> Result<(Report, bool), MiyamotoError> {
    let orbit = axis_closure(alg, axes, cap)?;
    let mut r = Report::new();
    let mut ok = true;
    r.count("members", orbit.members.len())
        .flag("complete", orbit.is_complete())
        .count("generators", orbit.generators.len())
        .count("span_dim", orbit.span(alg).dim());
    for (rep, label) in reports.iter().zip(labels) {
        let s = spanning_checks(alg, &orbit, rep)?;
        // Inconclusive outcomes on a capped orbit are reported but do not fail.
        ok &= [s.span, s.module_closure]
            .into_iter()
            .chain(s.eigenspace_sums.iter().map(|x| x.1))
            .chain(s.eigenspace_squares.iter().map(|x| x.1))
            .all(outcome_ok);
        let mut b = Report::new();
        b.text("span", s.span).text("module_closure", s.module_closure);
        for (c, o) in &s.eigenspace_sums {
            b.text(&format!("sum {c}"), o);
        }
        for (p, o) in &s.eigenspace_squares {
            b.text(&format!("square {p}"), o);
        }
        r.block(&format!("checks {label}"), b);
    }
    Ok((r, ok))
}

fn reports_for(alg: &Algebra, axes: &[Element]) -> Vec<AxisReport> {
    axes.iter().map(|a| axis_check(alg, a)).collect()
}

fn miyamoto_cmd(args: &AxesArgs) -> Result<Option<Outcome>, InputError> {
    let alg = load(&args.file)?;
    let axes = elements(&alg, &args.axes)?;
    let reports = reports_for(&alg, &axes);
    let run = || -> Result<Outcome, MiyamotoError> {
        let (maps, maps_ok) = map_checks(&alg, &reports, &args.axes)?;
        let (closure, closure_ok) = closure_block(&alg, &axes, &reports, &args.axes, args.cap)?;
        let mut r = Report::new();
        let passed = maps_ok && closure_ok;
        r.text("status", if passed { "pass" } else { "fail" })
            .block("maps", maps)
            .block("closure", closure);
        Ok(Outcome { report: r, passed })
    };
    Ok(Some(run().unwrap_or_else(|e| error_outcome("miyamoto", e.to_string()))))
}

fn verification_block(v: &FormVerification) -> Report {
    let mut r = Report::new();
    r.flag("passed", v.passed())
        .flag("symmetric", v.symmetric)
        .count("triples_checked", v.triples_checked)
        .count("associativity_failures", v.associativity_failures.len())
        .count("commutation_failures", v.commutation_failures.len())
        .count("invariance_failures", v.invariance_failures.len())
        .count("orthogonality_failures", v.orthogonality_failures.len())
        .count("unit_norm_failures", v.unit_norm_failures.len())
        .count("phi_failures", v.phi_failures.len());
    r
}

fn form_block(alg: &Algebra, form: &FrobeniusForm) -> Report {
    let mut r = Report::new();
    r.count("closure_members", form.orbit.members.len())
        .flag("closure_complete", form.closure_complete)
        .list("basis_axes", form.basis_axes.iter().map(|a| alg.format_element(a)))
        .list("gram_on_basis", matrix_rows(&form.gram_on_basis))
        .list("gram_ambient", matrix_rows(&form.gram_ambient))
        .count("radical_dim", form.radical.dim())
        .list(
            "radical_basis",
            form.radical.basis().iter().map(|v| alg.format_element(v)),
        );
    r
}

fn frobenius_cmd(args: &AxesArgs) -> Result<Option<Outcome>, InputError> {
    let alg = load(&args.file)?;
    let axes = elements(&alg, &args.axes)?;
    let form = match build_form(&alg, &axes, args.cap) {
        Ok(f) => f,
        Err(e) => return Ok(Some(error_outcome(frobenius_error_kind(&e), e.to_string()))),
    };
    let v = verify_form(&alg, &form);
    let mut r = Report::new();
    r.text("status", if v.passed() { "pass" } else { "fail" })
        .block("form", form_block(&alg, &form))
        .block("verify", verification_block(&v));
    match uniqueness_check(&alg, &form) {
        Ok(Uniqueness::Identical { .. }) => r.text("uniqueness", "identical"),
        Ok(Uniqueness::Differs { .. }) => r.text("uniqueness", "differs"),
        Ok(Uniqueness::NoAlternative) => r.text("uniqueness", "no alternative basis"),
        Err(e) => r.text("uniqueness", format!("error: {e}")),
    };
    Ok(Some(Outcome {
        report: r,
        passed: v.passed(),
    }))
}

/// Radical containments and the `A_0`-square statements; returns the report and
/// whether every statement that must hold does.
fn z_blocks(
    alg: &Algebra,
    form: &FrobeniusForm,
    axes: &[Element],
    labels: &[String],
) -> Result<(Report, bool), FrobeniusError> {
    let rr = radical_report(alg, form, axes)?;
    let mut ok = rr.containments_hold();
    let mut r = Report::new();
    r.count("radical_dim", rr.radical.dim())
        .flag("radical_is_ideal", rr.radical_is_ideal)
        .count("annihilator_dim", rr.annihilator.dim())
        .flag("annihilator_in_radical", rr.annihilator_in_radical);
    for ((z, label), a) in rr.z_reports.iter().zip(labels).zip(axes) {
        let mut b = Report::new();
        b.count("z_dim", z.z.dim())
            .flag("z_in_radical", z.z_in_radical)
            .flag("z_squared_zero", z.z_squared_zero)
            .flag("z_squared_times_axis_zero", z.z_squared_times_axis_zero)
            .flag("z_is_ideal", z.z_is_ideal);
        for t in &z.transpose_pairings {
            b.flag(&format!("transpose_pairing {}", t.pair), t.holds());
        }
        let rep = axis_check(alg, a);
        let a0s = a0s_check(alg, form, &rep)?;
        ok &= a0s.holds();
        b.text("norm", &a0s.norm)
            .flag("jordan_required", a0s.jordan_required)
            .flag("jordan_condition", a0s.jordan_condition)
            .flag("zero_square_statements", a0s.holds());
        r.block(&format!("axis {label}"), b);
    }
    Ok((r, ok))
}

fn zcheck_cmd(args: &AxesArgs) -> Result<Option<Outcome>, InputError> {
    let alg = load(&args.file)?;
    let axes = elements(&alg, &args.axes)?;
    let run = || -> Result<Outcome, FrobeniusError> {
        let form = build_form(&alg, &axes, args.cap)?;
        let (z, ok) = z_blocks(&alg, &form, &axes, &args.axes)?;
        let mut r = Report::new();
        r.text("status", if ok { "pass" } else { "fail" }).block("radical", z);
        Ok(Outcome { report: r, passed: ok })
    };
    Ok(Some(run().unwrap_or_else(|e| {
        error_outcome(frobenius_error_kind(&e), e.to_string())
    })))
}

fn catalog_cmd(
    entry: &str,
    params: &[String],
    output: Option<&Path>,
    json: bool,
) -> Result<Option<Outcome>, InputError> {
    let entry: Entry = entry.parse()?;
    let mut field = axial_core::FieldSpec::Rational;
    let mut rest = Vec::new();
    for p in params {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| InputError(format!("parameter `{p}` is not of the form key=value")))?;
        if k.trim() == "field" {
            field = parse_field_param(v.trim())?;
        } else {
            rest.push((k.trim(), v.trim()));
        }
    }
    let mut cp = CatalogParams::new(entry, field);
    for (k, v) in rest {
        cp.set(k, v)?;
    }
    let built = build(&cp)?;
    let alg = &built.algebra;
    let mut text = format!("# catalog entry {}\n", entry.name());
    for p in params {
        text.push_str(&format!("# param {p}\n"));
    }
    for ax in &built.axes {
        text.push_str(&format!("# axis {} = {}\n", ax.name, alg.format_element(&ax.element)));
    }
    text.push_str(&format!("# generators {}\n", built.generators.join(",")));
    text.push_str(&render_presentation(alg));

    if let Some(path) = output {
        fs::write(path, &text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    } else if !json {
        print!("{text}");
    }
    if json {
        let mut r = Report::new();
        r.text("entry", entry.name())
            .text("field", alg.field())
            .count("dim", alg.dim())
            .list("generators", &built.generators)
            .text("presentation", text);
        return Ok(Some(Outcome {
            report: r,
            passed: true,
        }));
    }
    Ok(None)
}

/// `rational`, `gf<p>` or `gf <p>`.
fn parse_field_param(v: &str) -> Result<axial_core::FieldSpec, InputError> {
    if v == "rational" {
        return Ok(axial_core::FieldSpec::Rational);
    }
    let p = v
        .strip_prefix("gf")
        .and_then(|p| p.trim().parse::<u64>().ok())
        .ok_or_else(|| InputError(format!("bad field `{v}`; expected rational or gf<p>")))?;
    Ok(axial_core::FieldSpec::prime(p)?)
}

fn verify_cmd(args: &AxesArgs) -> Result<Option<Outcome>, InputError> {
    let alg = load(&args.file)?;
    let axes = elements(&alg, &args.axes)?;
    let reports = reports_for(&alg, &axes);
    let mut r = Report::new();
    let mut passed = true;

    let mut axes_block = Report::new();
    for (rep, label) in reports.iter().zip(&args.axes) {
        passed &= rep.is_axis && rep.fusion_ok;
        let mut b = Report::new();
        b.flag("is_axis", rep.is_axis)
            .flag("fusion", rep.fusion_ok)
            .flag("weakly_primitive", rep.weakly_primitive)
            .flag("jordan_condition", rep.jordan_condition)
            .text("jordan_label", jordan_label(&alg, rep, None));
        axes_block.block(label, b);
    }
    r.block("axes", axes_block);
    if !passed {
        return Ok(Some(suite_outcome(r, passed)));
    }

    match map_checks(&alg, &reports, &args.axes) {
        Ok((b, ok)) => {
            passed &= ok;
            r.block("maps", b);
        }
        Err(e) => {
            passed = false;
            r.text("maps", format!("error: {e}"));
        }
    }
    match closure_block(&alg, &axes, &reports, &args.axes, args.cap) {
        Ok((b, ok)) => {
            passed &= ok;
            r.block("closure", b);
        }
        Err(e) => {
            passed = false;
            r.text("closure", format!("error: {e}"));
        }
    }

    // The form needs weakly primitive, homogeneous axes; otherwise it is not
    // applicable rather than failed.
    match build_form(&alg, &axes, args.cap) {
        Ok(form) => {
            let v = verify_form(&alg, &form);
            passed &= v.passed();
            r.block("form", form_block(&alg, &form))
                .block("verify", verification_block(&v));
            match z_blocks(&alg, &form, &axes, &args.axes) {
                Ok((b, ok)) => {
                    passed &= ok;
                    r.block("radical", b);
                }
                Err(e) => {
                    passed = false;
                    r.text("radical", format!("error: {e}"));
                }
            }
        }
        Err(e @ (FrobeniusError::NotWeaklyPrimitive { .. } | FrobeniusError::NonHomogeneous { .. })) => {
            r.text("form", format!("not applicable: {e}"));
        }
        Err(e) => {
            passed = false;
            r.text("form", format!("error: {e}"));
        }
    }
    Ok(Some(suite_outcome(r, passed)))
}

fn suite_outcome(suite: Report, passed: bool) -> Outcome {
    let mut report = Report::new();
    report
        .text("status", if passed { "pass" } else { "fail" })
        .block("suite", suite);
    Outcome { report, passed }
}
