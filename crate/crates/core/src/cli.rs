//! `cpplab` command line. Exit codes: 0 success, 1 a verification
//! assertion failed, 2 usage or hypothesis error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::dickson::{
    closed_form_matches_recurrence, dickson_integer_coeffs, dickson_is_pp, dickson_terms,
    reversed_fraction_agreements,
};
use crate::error::{Error, Result};
use crate::family::{Family, FamilyClass, FamilySpec};
use crate::field::{FieldCtx, Limits, ModulusVariant, DEFAULT_MAX_Q};
use crate::modring::{mod_inverse, InversePath};
use crate::monomial::Exponent;
use crate::report::{
    DicksonDocument, EnumerateDocument, EnumerateRow, FamilyInfo, FieldInfo, Format,
    InverseDocument, RunConfig, ScanDocument, VerifyDocument, DICKSON_NOTE, TOOL_VERSION,
};
use crate::verify::{cpp_scan, verify_family, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "cpplab", version, about = "Complete permutation monomials over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the admissible coefficients of a family.
    Enumerate {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verify every admissible coefficient of a family exhaustively.
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Skip the exhaustive scan over all coefficients.
        #[arg(long)]
        no_scan: bool,
        /// Report elapsed_ms as 0 so output is byte-identical across runs.
        #[arg(long)]
        no_timing: bool,
    },
    /// Inverse exponent of d modulo q-1, for a family or an explicit pair.
    Inverse {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, requires = "q")]
        d: Option<BigUint>,
        #[arg(long, requires = "d")]
        q: Option<BigUint>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// All v with v^{-1} x^d complete, for a family's d or an explicit d.
    Scan {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        d: Option<BigUint>,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Dickson polynomial coefficients and permutation criterion.
    Dickson {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u64,
        /// Also decide whether D_n permutes F_{p^m}.
        #[arg(long)]
        m: Option<u32>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long, value_parser = parse_class)]
    pub class: Option<FamilyClass>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub s: Option<u64>,
    /// x2+1, x2+2x+2, x2+x+2 or auto; defaults to the class's own modulus.
    #[arg(long, value_parser = parse_modulus)]
    pub modulus: Option<ModulusVariant>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Largest field order swept exhaustively.
    #[arg(long, env = "CPPLAB_MAX_Q", default_value_t = DEFAULT_MAX_Q)]
    pub max_q: u64,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_class(s: &str) -> std::result::Result<FamilyClass, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_modulus(s: &str) -> std::result::Result<ModulusVariant, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl FamilyArgs {
    fn spec(&self) -> Result<FamilySpec> {
        let class = self
            .class
            .ok_or_else(|| Error::InvalidArgument("--class is required".into()))?;
        let p = self.p.unwrap_or(3);
        let m = self
            .m
            .ok_or_else(|| Error::InvalidArgument("--m is required".into()))?;
        let modulus = self.modulus.unwrap_or(match class {
            FamilyClass::C1 => ModulusVariant::X2Plus1,
            FamilyClass::C2 => ModulusVariant::X2Plus2XPlus2,
            FamilyClass::C3 => ModulusVariant::Auto,
        });
        if class == FamilyClass::C3 && self.p.is_none() {
            return Err(Error::InvalidArgument("--p is required for c3".into()));
        }
        Ok(FamilySpec {
            class,
            p,
            m,
            s: self.s,
            modulus,
        })
    }

    fn resolve(&self, config: &mut RunConfig) -> Result<FamilySpec> {
        let spec = self.spec()?;
        config.class = Some(spec.class.to_string());
        config.p = Some(spec.p);
        config.m = Some(spec.m);
        config.s = spec.s;
        config.modulus_variant = Some(spec.modulus.to_string());
        Ok(spec)
    }

    fn config(&self, subcommand: &str, output: &OutputArgs) -> RunConfig {
        RunConfig {
            subcommand: subcommand.into(),
            class: self.class.map(|c| c.to_string()),
            p: self.p,
            m: self.m,
            s: self.s,
            modulus_variant: self.modulus.map(|v| v.to_string()),
            d: None,
            q: None,
            n: None,
            format: output.format,
            max_q: output.max_q,
            workers: 1,
            scan: false,
        }
    }
}

enum Outcome {
    Pass(String),
    Fail(String),
}

/// Runs the tool on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let out_path = output_of(&cli.command).out.clone();
    match execute(cli.command) {
        Ok(outcome) => {
            let (text, code) = match outcome {
                Outcome::Pass(t) => (t, EXIT_OK),
                Outcome::Fail(t) => (t, EXIT_FAILED),
            };
            let written = match out_path {
                Some(path) => std::fs::write(&path, text.as_bytes())
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(msg) = written {
                let _ = writeln!(stderr, "error: {msg}");
                return EXIT_USAGE;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            match e {
                Error::InternalInvariant(_) => EXIT_FAILED,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn output_of(cmd: &Command) -> &OutputArgs {
    match cmd {
        Command::Enumerate { output, .. }
        | Command::Verify { output, .. }
        | Command::Inverse { output, .. }
        | Command::Scan { output, .. }
        | Command::Dickson { output, .. } => output,
    }
}

fn field_for(family: &Family, output: &OutputArgs) -> Result<FieldCtx> {
    family.context_with_limits(Limits::with_max_q(output.max_q))
}

fn execute(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Enumerate { family, output } => {
            let mut config = family.config("enumerate", &output);
            let fam = family.resolve(&mut config)?.validate()?;
            let ctx = field_for(&fam, &output)?;
            let rows = fam
                .admissible_v(&ctx)?
                .into_iter()
                .map(|v| {
                    let back = fam.inverse_monomial(&ctx, v)?;
                    Ok(EnumerateRow {
                        v: ctx.encode(v),
                        v_index: crate::field::FiniteField::index(&ctx, v),
                        forward_exponent: Exponent::new(fam.d().clone()),
                        inverse_exponent: back.exponent().clone(),
                        inverse_path: fam.inverse().path,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let doc = EnumerateDocument {
                version: TOOL_VERSION,
                config,
                field: FieldInfo::of(&ctx),
                family: FamilyInfo::of(&fam),
                count: rows.len(),
                rows,
            };
            Ok(Outcome::Pass(doc.render(output.format)?))
        }
        Command::Verify {
            family,
            output,
            workers,
            no_scan,
            no_timing,
        } => {
            let mut config = family.config("verify", &output);
            config.workers = workers;
            config.scan = !no_scan;
            let fam = family.resolve(&mut config)?.validate()?;
            let ctx = field_for(&fam, &output)?;
            let opts = VerifyOptions {
                workers,
                scan: !no_scan,
            };
            let mut report = verify_family(&ctx, &fam, &opts)?;
            if no_timing {
                report.elapsed_ms = 0;
            }
            let pass = report.all_pass;
            let text = VerifyDocument::new(config, &ctx, &fam, report).render(output.format)?;
            Ok(if pass { Outcome::Pass(text) } else { Outcome::Fail(text) })
        }
        Command::Inverse {
            family,
            d,
            q,
            output,
        } => {
            let mut config = family.config("inverse", &output);
            let doc = match (d, q) {
                (Some(d), Some(q)) => {
                    config.d = Some(d.to_string());
                    config.q = Some(q.to_string());
                    if q < BigUint::from(3u32) {
                        return Err(Error::InvalidArgument("q must be at least 3".into()));
                    }
                    let n = &q - BigUint::one();
                    let e = mod_inverse(&BigInt::from(d.clone()), &n)?;
                    InverseDocument {
                        version: TOOL_VERSION,
                        config,
                        d: Exponent::new(d),
                        modulus: Exponent::new(n),
                        inverse_e: Exponent::new(e),
                        inverse_path: InversePath::Generic,
                        formula: None,
                        integer_value: None,
                    }
                }
                _ => {
                    let fam = family.resolve(&mut config)?.validate()?;
                    let inv = fam.inverse();
                    let sp = fam.spec();
                    let n = crate::modring::biguint_pow(sp.p, 2 * sp.m) - 1u32;
                    InverseDocument {
                        version: TOOL_VERSION,
                        config,
                        d: Exponent::new(fam.d().clone()),
                        modulus: Exponent::new(n),
                        inverse_e: fam.inverse_exponent(),
                        inverse_path: inv.path,
                        formula: inv.formula,
                        integer_value: inv.integer_value.as_ref().map(|x| x.to_string()),
                    }
                }
            };
            Ok(Outcome::Pass(doc.render(output.format)?))
        }
        Command::Scan {
            family,
            d,
            output,
            workers,
        } => {
            let mut config = family.config("scan", &output);
            config.workers = workers;
            config.scan = true;
            let limits = Limits::with_max_q(output.max_q);
            let (ctx, d, fam) = match (family.class, d) {
                (Some(_), None) => {
                    let fam = family.resolve(&mut config)?.validate()?;
                    let ctx = fam.context_with_limits(limits)?;
                    (ctx, fam.d().clone(), Some(fam))
                }
                (None, Some(d)) => {
                    let p = family
                        .p
                        .ok_or_else(|| Error::InvalidArgument("--p is required".into()))?;
                    let m = family
                        .m
                        .ok_or_else(|| Error::InvalidArgument("--m is required".into()))?;
                    let variant = family.modulus.unwrap_or(ModulusVariant::Auto);
                    (FieldCtx::with_limits(p, m, variant, limits)?, d, None)
                }
                _ => {
                    return Err(Error::InvalidArgument(
                        "give exactly one of --class or --d".into(),
                    ))
                }
            };
            config.d = Some(d.to_string());
            let hits = cpp_scan(&ctx, &d, workers)?;
            let (admissible_count, superset_ok) = match &fam {
                Some(f) => {
                    let adm = f.admissible_v(&ctx)?;
                    let ok = adm.iter().all(|v| hits.binary_search(v).is_ok());
                    (Some(adm.len()), Some(ok))
                }
                None => (None, None),
            };
            let doc = ScanDocument {
                version: TOOL_VERSION,
                config,
                field: FieldInfo::of(&ctx),
                d: Exponent::new(d),
                count: hits.len(),
                hits: hits.iter().map(|&v| ctx.encode(v)).collect(),
                admissible_count,
                superset_ok,
            };
            let text = doc.render(output.format)?;
            Ok(if superset_ok == Some(false) {
                Outcome::Fail(text)
            } else {
                Outcome::Pass(text)
            })
        }
        Command::Dickson { p, n, m, output } => {
            if !crate::modring::is_prime(p as u64) {
                return Err(Error::NotPrime(p as u64));
            }
            let config = RunConfig {
                subcommand: "dickson".into(),
                class: None,
                p: Some(p as u64),
                m,
                s: None,
                modulus_variant: None,
                d: None,
                q: None,
                n: Some(n),
                format: output.format,
                max_q: output.max_q,
                workers: 1,
                scan: false,
            };
            let q = match m {
                Some(m) => Some(crate::modring::checked_pow(p as u64, m).ok_or_else(|| {
                    Error::UnsupportedSize(format!("{p}^{m} overflows 64 bits"))
                })?),
                None => None,
            };
            let recurrence_agrees = closed_form_matches_recurrence(p, n)?;
            let doc = DicksonDocument {
                version: TOOL_VERSION,
                config,
                n,
                p,
                terms: dickson_terms(p, n)?,
                integer_coefficients: dickson_integer_coeffs(n)?
                    .iter()
                    .map(|c| c.to_string())
                    .collect(),
                recurrence_agrees,
                reversed_fraction_agrees: reversed_fraction_agreements(n).contains(&n),
                note: DICKSON_NOTE,
                q,
                is_pp: q.map(|q| dickson_is_pp(n, &BigUint::from(q))),
            };
            let text = doc.render(output.format)?;
            Ok(if recurrence_agrees {
                Outcome::Pass(text)
            } else {
                Outcome::Fail(text)
            })
        }
    }
}
