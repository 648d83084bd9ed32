//! The `metadual` command-line tool.
//!
//! Exit codes: 0 success, 1 invalid input, 2 violated mathematical
//! precondition, 3 resource cap exceeded, 4 internal error.

pub mod input;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use metadual_core::census::{bg_cohomology, parameter_census, CurveModel};
use metadual_core::metaplectic::{critical_parity, levi_parity, levi_sharp_compat, metaplectic_dual_with_caps};
use metadual_core::quad_form::{restricted_forms, EnumOptions, TorsionQuadForm};
use metadual_core::root_datum::{
    catalog, datum_invariants, levi_datum, standard_names, validate_datum, weyl_group, BasedRootDatum, Caps,
};
use metadual_core::{Error, ErrorClass};

use report::*;

#[derive(Debug, Parser)]
#[command(name = "metadual", version, about = "Metaplectic Langlands dual data, computed exactly")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for form enumeration; output does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Maximum number of Weyl group elements.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    pub weyl_cap: u64,
    /// Maximum coroot orbit size in the finiteness check.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub orbit_cap: u64,
    /// Maximum number of candidate forms in an enumeration.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    pub enum_cap: u64,
}

impl Global {
    fn caps(&self) -> Caps {
        Caps {
            weyl_elements: self.weyl_cap,
            coroot_orbit: self.orbit_cap,
        }
    }

    fn enum_options(&self) -> EnumOptions {
        EnumOptions {
            cap: self.enum_cap,
            jobs: self.jobs,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the root-datum axioms and report |W|.
    Validate {
        #[arg(long)]
        group: String,
    },
    /// Compute (H, G_Z, ε) for a restricted form.
    Dual {
        #[arg(long)]
        group: String,
        /// Form JSON (or @file); defaults to the zero form.
        #[arg(long)]
        form: Option<String>,
        /// Opaque label recorded for the gerbe component.
        #[arg(long)]
        gerbe_label: Option<String>,
    },
    /// Levi subdatum on a subset of simple indices, with the ♯-compatibility
    /// check when a form is given.
    Levi {
        #[arg(long)]
        group: String,
        #[arg(long)]
        subset: String,
        #[arg(long)]
        form: Option<String>,
    },
    /// Homotopy groups of the space of metaplectic data over a complete curve.
    Census {
        #[arg(long)]
        group: String,
        #[arg(long, allow_negative_numbers = true)]
        coeff: i64,
        #[arg(long)]
        genus: u32,
    },
    /// List the restricted Weyl-invariant forms with values in (1/n)Z/Z.
    Enumerate {
        #[arg(long)]
        group: String,
        #[arg(long, allow_negative_numbers = true)]
        coeff: i64,
    },
    /// Critical parity character, or ε_P for the Levi on --subset.
    Parity {
        #[arg(long)]
        group: String,
        #[arg(long)]
        subset: Option<String>,
    },
}

/// A failure, with its exit status and an optional witness for reports.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub class: &'static str,
    pub message: String,
    pub witness: Option<serde_json::Value>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, class) = match e.class() {
            ErrorClass::InvalidInput => (1, "invalid_input"),
            ErrorClass::Precondition => (2, "precondition"),
            ErrorClass::Resource => (3, "resource"),
            ErrorClass::Internal => (4, "internal"),
        };
        let witness = match &e {
            Error::NotWeylInvariant { generator, j, k } => {
                Some(json!({"generator": generator, "j": j, "k": k}))
            }
            Error::RestrictionFailed {
                coroot,
                basis,
                lhs,
                rhs,
            } => Some(json!({"coroot": coroot, "basis": basis, "lhs": lhs, "rhs": rhs})),
            Error::InvalidDatum(v) => Some(json!({ "violations": v })),
            _ => None,
        };
        Failure {
            code,
            class,
            message: e.to_string(),
            witness,
        }
    }
}

struct Output {
    json: serde_json::Value,
    text: String,
}

fn output<T: Serialize>(report: &T, text: String) -> Output {
    Output {
        json: serde_json::to_value(report).expect("reports serialize"),
        text,
    }
}

fn group_with_caps(arg: &str, caps: Caps) -> Result<BasedRootDatum, Failure> {
    let rd = input::parse_group(arg)?;
    validate_datum(&rd, caps).into_result()?;
    Ok(rd)
}

fn form_for(arg: Option<&str>, rd: &BasedRootDatum) -> Result<TorsionQuadForm, Failure> {
    Ok(match arg {
        Some(a) => input::parse_form(a, rd.rank())?,
        None => TorsionQuadForm::zero(rd.rank()),
    })
}

/// The first catalog name of the same rank whose invariant record matches.
fn catalog_match(rd: &BasedRootDatum) -> Option<String> {
    let inv = datum_invariants(rd).ok()?;
    standard_names(rd.rank()).into_iter().find(|n| {
        let c = catalog(n).expect("standard names parse");
        c.rank() == rd.rank() && datum_invariants(&c).ok().as_ref() == Some(&inv)
    })
}

fn invariants_json(rd: &BasedRootDatum) -> Result<InvariantsJson, Failure> {
    Ok(InvariantsJson::new(&datum_invariants(rd)?, catalog_match(rd)))
}

fn describe_invariants(inv: &InvariantsJson) -> String {
    let ty = inv.matches.as_deref().map(|m| format!(" ({m}-type)")).unwrap_or_default();
    format!(
        "rank {}, semisimple rank {}, pi1 {}, dual pi1 {}{}",
        inv.rank, inv.semisimple_rank, inv.pi1.description, inv.dual_pi1.description, ty
    )
}

fn fmt_matrix(rows: &[Vec<Int>]) -> String {
    let show = |x: &Int| match x {
        Int::Small(v) => v.to_string(),
        Int::Big(s) => s.clone(),
    };
    let inner: Vec<String> = rows
        .iter()
        .map(|r| format!("[{}]", r.iter().map(show).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", inner.join(", "))
}

fn fmt_ints(v: &[Int]) -> String {
    fmt_matrix(&[v.to_vec()]).trim_start_matches('[').trim_end_matches(']').to_string()
}

fn validate(group: &str, g: &Global) -> Result<Output, Failure> {
    let rd = input::parse_group(group)?;
    let report = validate_datum(&rd, g.caps());
    let weyl_order = if report.is_valid() {
        Some(weyl_group(&rd, g.weyl_cap)?.order() as u64)
    } else {
        None
    };
    let r = ValidateReport {
        command: "validate".into(),
        valid: report.is_valid(),
        rank: rd.rank(),
        num_simple: rd.num_simple(),
        weyl_order,
        violations: report.messages(),
    };
    if !r.valid {
        return Err(Failure {
            code: 1,
            class: "invalid_input",
            message: format!("invalid root datum: {}", r.violations.join("; ")),
            witness: Some(json!({ "violations": r.violations })),
        });
    }
    let text = format!("valid, |W| = {}", weyl_order.expect("valid datum"));
    Ok(output(&r, text))
}

fn dual(group: &str, form: Option<&str>, label: Option<&str>, g: &Global) -> Result<Output, Failure> {
    let rd = group_with_caps(group, g.caps())?;
    let q = form_for(form, &rd)?;
    let mut d = metaplectic_dual_with_caps(&rd, &q, g.caps())?;
    if let Some(l) = label {
        d = d.with_gerbe_label(l);
    }
    let r = DualReport::new(&rd, &q, &d, invariants_json(&d.h)?);
    let mut text = vec![
        format!("G#: coroots {}, roots {}", fmt_matrix(&r.sharp_datum.simple_coroots), fmt_matrix(&r.sharp_datum.simple_roots)),
        format!("Lambda# basis: {}", fmt_matrix(&r.lambda_sharp)),
        format!("orders: {}", fmt_ints(&r.orders)),
        format!("H invariants: {}", describe_invariants(&r.h_invariants)),
        format!("pi1(G#) = {}", r.pi1_sharp.description),
        format!(
            "epsilon: {} (values {})",
            if r.epsilon_nontrivial { "nontrivial" } else { "trivial" },
            fmt_ints(&r.epsilon.values)
        ),
        format!(
            "gerbe class slot: Hom(pi1(G#), Z/{}) = {}",
            fmt_ints(std::slice::from_ref(&r.gerbe_coefficients)),
            r.gerbe_class_slot.description
        ),
    ];
    if let Some(l) = &r.gerbe_label {
        text.push(format!("gerbe label: {l}"));
    }
    Ok(output(&r, text.join("\n")))
}

fn levi(group: &str, subset: &str, form: Option<&str>, g: &Global) -> Result<Output, Failure> {
    let rd = group_with_caps(group, g.caps())?;
    let idx = input::parse_subset(subset)?;
    let m = levi_datum(&rd, &idx)?;
    let compat = match form {
        Some(f) => {
            let q = input::parse_form(f, rd.rank())?;
            Some(levi_sharp_compat(&rd, &q, &idx)?)
        }
        None => None,
    };
    let mut sorted = idx.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let r = LeviReport {
        command: "levi".into(),
        subset: sorted,
        levi: (&m).into(),
        invariants: invariants_json(&m)?,
        compat: compat.as_ref().map(Into::into),
    };
    let mut text = vec![
        format!("Levi on {:?}: coroots {}, roots {}", r.subset, fmt_matrix(&r.levi.simple_coroots), fmt_matrix(&r.levi.simple_roots)),
        format!("invariants: {}", describe_invariants(&r.invariants)),
    ];
    if let Some(c) = &r.compat {
        text.push(format!(
            "radical identical: {}, sharp simple data match: {}, pi1 surjection: {}",
            c.radical_identical, c.sharp_simple_data_match, c.pi1_surjection
        ));
        text.extend(c.failures.iter().cloned());
    }
    Ok(output(&r, text.join("\n")))
}

fn census(group: &str, coeff: i64, genus: u32, g: &Global) -> Result<Output, Failure> {
    let rd = group_with_caps(group, g.caps())?;
    let c = parameter_census(&rd, coeff, CurveModel::complete(genus), g.enum_options())?;
    let r = CensusJson {
        command: "census".into(),
        modulus: c.modulus,
        genus: c.genus,
        pi0_order: (&c.pi0_order).into(),
        pi0_quad_count: (&c.pi0_quad_count).into(),
        pi0_quad_group: (&c.pi0_quad_group).into(),
        pi0_gerbe_group: (&c.pi0_gerbe_group).into(),
        pi1_order: (&c.pi1_order).into(),
        pi1_group: (&c.pi1_group).into(),
        pi2_order: (&c.pi2_order).into(),
        pi2_group: (&c.pi2_group).into(),
        h3_group: (&c.h3_group).into(),
        divisibility_caveat: c.divisibility_caveat,
    };
    let mut text = vec![
        format!("|π₀| = {}, |π₁| = {}, |π₂| = {}", c.pi0_order, c.pi1_order, c.pi2_order),
        format!("π₀ = Quad^W_restr ({}) x {}", c.pi0_quad_group, c.pi0_gerbe_group),
        format!("π₁ = {}", c.pi1_group),
        format!("π₂ = {}", c.pi2_group),
        format!("H³ = {}", c.h3_group),
    ];
    if c.divisibility_caveat {
        text.push("note: coefficients are not divisible and pi1 has torsion".into());
    }
    Ok(output(&r, text.join("\n")))
}

fn enumerate(group: &str, coeff: i64, g: &Global) -> Result<Output, Failure> {
    let rd = group_with_caps(group, g.caps())?;
    let forms = restricted_forms(&rd, coeff, g.enum_options())?;
    let h4 = bg_cohomology(&rd, coeff, 4, g.enum_options())?.group;
    let list = forms.forms();
    let r = EnumerateReport {
        command: "enumerate".into(),
        modulus: coeff,
        count: list.len(),
        group_structure: (&h4).into(),
        forms: list.iter().map(Into::into).collect(),
    };
    let mut text = vec![format!("{} forms, group {}", r.count, h4)];
    for f in &r.forms {
        text.push(serde_json::to_string(f).expect("forms serialize"));
    }
    Ok(output(&r, text.join("\n")))
}

fn parity(group: &str, subset: Option<&str>, g: &Global) -> Result<Output, Failure> {
    let rd = group_with_caps(group, g.caps())?;
    let r = match subset {
        None => {
            let p = critical_parity(&rd)?;
            ParityReport {
                command: "parity".into(),
                subset: None,
                two_rho: ints(&p.two_rho_check),
                nontrivial: !p.character.is_zero(),
                character: (&p.character).into(),
            }
        }
        Some(s) => {
            let p = levi_parity(&rd, &input::parse_subset(s)?)?;
            ParityReport {
                command: "parity".into(),
                subset: Some(p.subset.clone()),
                two_rho: ints(&p.two_rho_gm),
                nontrivial: !p.eps_p.is_zero(),
                character: (&p.eps_p).into(),
            }
        }
    };
    let text = format!(
        "{}: {} on {} (2rho = {}, values {})",
        if r.subset.is_some() { "eps_P" } else { "critical parity" },
        if r.nontrivial { "nontrivial" } else { "trivial" },
        r.character.source.description,
        fmt_ints(&r.two_rho),
        fmt_ints(&r.character.values)
    );
    Ok(output(&r, text))
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Validate { group } => validate(group, g),
        Command::Dual {
            group,
            form,
            gerbe_label,
        } => dual(group, form.as_deref(), gerbe_label.as_deref(), g),
        Command::Levi { group, subset, form } => levi(group, subset, form.as_deref(), g),
        Command::Census { group, coeff, genus } => census(group, *coeff, *genus, g),
        Command::Enumerate { group, coeff } => enumerate(group, *coeff, g),
        Command::Parity { group, subset } => parity(group, subset.as_deref(), g),
    }
}

/// Runs the tool on `args` (including the program name) and returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{rendered}");
            return code;
        }
    };
    let result = execute(&cli);
    let json = cli.global.json;
    match result {
        Ok(o) => {
            let body = if json {
                serde_json::to_string_pretty(&o.json).expect("json")
            } else {
                o.text
            };
            let _ = writeln!(out, "{body}");
            0
        }
        Err(f) => {
            if json {
                let r = ErrorReport {
                    error: ErrorJson {
                        class: f.class.into(),
                        exit_code: f.code,
                        message: f.message.clone(),
                        witness: f.witness.clone(),
                    },
                };
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&r).expect("json"));
            }
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
