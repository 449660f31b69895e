//! Command-line front end.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use stratihom::algebra::{Coefficients, HomologySummary};
use stratihom::blowup::BlowupComplex;
use stratihom::chains::{intersection_complex, ChainOptions, Theory};
use stratihom::constructors::Space;
use stratihom::duality::{self, DualityReport};
use stratihom::parallel::Execution;
use stratihom::perversity::Perversity;
use stratihom::recipe::{load_space, space_to_json, Recipe, ZOO};

pub const EXIT_INPUT: u8 = 1;
pub const EXIT_PRECONDITION: u8 = 2;
pub const EXIT_VERIFY_FAILED: u8 = 3;

/// Intersection homology and blown-up intersection cohomology of filtered
/// simplicial complexes.
///
/// A SPACE is either a JSON file or an expression such as `cone(torus)`,
/// `join_sphere(0,torus)` or `product_cube(1,cone(circle(6)))`.
#[derive(Debug, Parser)]
#[command(name = "stratihom", version)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    /// Coefficients: z, q or zp:<prime>.
    #[arg(long, global = true, default_value = "z")]
    coeff: Coefficients,

    /// Perversity: zero, top, codim:a,b,..., gm:a,b,..., strata:{id:v,...} or dual:<perversity>.
    #[arg(long, global = true)]
    perversity: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Include timings (omitted by default so output is byte-stable).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TheoryArg {
    King,
    Tame,
    /// Cohomology of the dual of the tame complex.
    Cochain,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a space and check the pseudomanifold conditions.
    Validate { space: String },
    /// List strata with codimension and perversity value.
    Strata { space: String },
    /// Intersection homology of a space.
    Homology {
        space: String,
        #[arg(long, value_enum, default_value_t = TheoryArg::Tame)]
        theory: TheoryArg,
        /// Borel-Moore model: homology relative to the boundary of the space.
        #[arg(long)]
        bm: bool,
    },
    /// Blown-up intersection cohomology of a space.
    Blowup {
        space: String,
        /// Also print the dimensions of the global and allowable complexes.
        #[arg(long)]
        dims: bool,
    },
    /// Run verification reports.
    Verify {
        #[command(subcommand)]
        check: Check,
    },
    /// Print a sample space as JSON, or list the samples.
    Example { name: Option<String> },
}

#[derive(Debug, Subcommand)]
enum Check {
    /// Cone formulas on cone(BASE) with apex value PV.
    Cone {
        #[arg(long)]
        base: String,
        #[arg(long, allow_hyphen_values = true)]
        pv: i64,
    },
    /// Join formula for join_sphere(A, SPACE) with sphere value PS.
    Join {
        #[arg(long)]
        space: String,
        #[arg(long)]
        a: usize,
        #[arg(long, allow_hyphen_values = true)]
        ps: i64,
    },
    /// Product formula for BASE x I^A relative to BASE x boundary.
    BmProduct {
        #[arg(long)]
        base: String,
        #[arg(long)]
        a: usize,
    },
    /// Poincaré duality between blown-up cohomology and Borel-Moore homology.
    Poincare { space: String },
    /// Complementary duality over a field.
    Complementary { space: String },
    /// Biduality over a field.
    Bidual { space: String },
    /// Local Deligne conditions on cone(BASE) with apex value PV.
    Deligne {
        #[arg(long)]
        base: String,
        #[arg(long, allow_hyphen_values = true)]
        pv: i64,
    },
    /// The fundamental cycle generates top homology.
    Fundamental { space: String },
    /// The standard battery.
    All,
}

fn space_arg(arg: &str) -> anyhow::Result<Space> {
    Ok(load_space(arg)?.1)
}

fn perversity(common: &Common, s: &Space) -> anyhow::Result<Perversity> {
    let spec = common.perversity.as_deref().unwrap_or("zero");
    Ok(Perversity::parse(spec, &s.complex)?)
}

fn homology_table(h: &HomologySummary) -> String {
    let mut out = String::new();
    for (k, d) in h.degrees.iter().enumerate() {
        let _ = writeln!(out, "{k:>3}  {d}");
    }
    out
}

fn homology_csv(h: &HomologySummary) -> String {
    let mut out = String::from("degree,betti,torsion\n");
    for (k, d) in h.degrees.iter().enumerate() {
        let torsion: Vec<String> = d.torsion.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{k},{},{}", d.betti, torsion.join(" "));
    }
    out
}

fn json<T: Serialize>(v: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string(v)? + "\n")
}

fn render_homology(format: Format, h: &HomologySummary) -> anyhow::Result<String> {
    Ok(match format {
        Format::Table => homology_table(h),
        Format::Json => json(h)?,
        Format::Csv => homology_csv(h),
    })
}

fn render_reports(format: Format, reports: &[DualityReport]) -> anyhow::Result<String> {
    Ok(match format {
        Format::Table => reports.iter().map(ToString::to_string).collect(),
        Format::Json => json(&reports)?,
        Format::Csv => {
            let mut out = String::from("check,space,perversity,coefficients,degree,expected,computed,pass,source\n");
            for r in reports {
                for row in &r.rows {
                    let _ = writeln!(
                        out,
                        "{},\"{}\",\"{}\",{},{},{},{},{},\"{}\"",
                        r.check, r.space, r.perversity, r.coefficients, row.degree, row.expected, row.computed, row.pass, row.source
                    );
                }
            }
            out
        }
    })
}

fn emit(common: &Common, text: &str) -> anyhow::Result<()> {
    match &common.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// The fixed set of reports run by `verify all`, in output order.
fn battery(coeff: Coefficients) -> Vec<Box<dyn Fn() -> stratihom::Result<Vec<DualityReport>> + Send + Sync>> {
    type Job = Box<dyn Fn() -> stratihom::Result<Vec<DualityReport>> + Send + Sync>;
    fn sp(r: &str) -> stratihom::Result<Space> {
        r.parse::<Recipe>()?.evaluate()
    }
    let mut jobs: Vec<Job> = Vec::new();
    for base in ["circle(6)", "torus", "rp2"] {
        for pv in [-1, 0, 1, 2] {
            jobs.push(Box::new(move || {
                let l = sp(base)?;
                duality::verify_cone_formulas(base, &l, &Perversity::zero(&l.complex), pv, coeff)
            }));
        }
    }
    for base in ["circle(3)", "torus"] {
        for a in [0, 1] {
            for ps in [0, 1] {
                jobs.push(Box::new(move || {
                    let x = sp(base)?;
                    Ok(vec![duality::verify_join_formula(base, &x, &Perversity::zero(&x.complex), a, ps, coeff)?])
                }));
            }
        }
    }
    for (base, a) in [("circle(6)", 1), ("point", 2)] {
        jobs.push(Box::new(move || {
            let l = sp(base)?;
            Ok(vec![duality::verify_bm_product_formula(base, &l, &Perversity::zero(&l.complex), a, coeff)?])
        }));
    }
    for x in ["sphere(2)", "cone(circle(6))", "join_sphere(0,torus)", "cone(rp2)"] {
        jobs.push(Box::new(move || {
            let s = sp(x)?;
            let poincare_coeff = if x == "cone(rp2)" { Coefficients::PrimeField(2) } else { coeff };
            let field = if coeff.is_field() { coeff } else { Coefficients::Rationals };
            let mut out = Vec::new();
            for p in [Perversity::zero(&s.complex), Perversity::top(&s.complex)] {
                out.push(duality::verify_poincare(x, &s, &p, poincare_coeff)?);
                out.push(duality::verify_complementary_field(x, &s, &p, field)?);
                out.push(duality::verify_bidual_field(x, &s, &p, field)?);
            }
            Ok(out)
        }));
    }
    for base in ["circle(6)", "torus"] {
        for pv in [-1, 0, 1] {
            jobs.push(Box::new(move || {
                let l = sp(base)?;
                Ok(vec![duality::verify_local_deligne(base, &l, &Perversity::zero(&l.complex), pv, coeff)?])
            }));
        }
    }
    jobs
}

fn verify(common: &Common, check: &Check) -> anyhow::Result<Vec<DualityReport>> {
    let coeff = common.coeff;
    let with_base = |base: &str| -> anyhow::Result<(Space, Perversity)> {
        let l = space_arg(base)?;
        let p = perversity(common, &l)?;
        Ok((l, p))
    };
    Ok(match check {
        Check::Cone { base, pv } => {
            let (l, p) = with_base(base)?;
            duality::verify_cone_formulas(base, &l, &p, *pv, coeff)?
        }
        Check::Join { space, a, ps } => {
            let (x, p) = with_base(space)?;
            vec![duality::verify_join_formula(space, &x, &p, *a, *ps, coeff)?]
        }
        Check::BmProduct { base, a } => {
            let (l, p) = with_base(base)?;
            vec![duality::verify_bm_product_formula(base, &l, &p, *a, coeff)?]
        }
        Check::Poincare { space } => {
            let (x, p) = with_base(space)?;
            vec![duality::verify_poincare(space, &x, &p, coeff)?]
        }
        Check::Complementary { space } => {
            let (x, p) = with_base(space)?;
            vec![duality::verify_complementary_field(space, &x, &p, coeff)?]
        }
        Check::Bidual { space } => {
            let (x, p) = with_base(space)?;
            vec![duality::verify_bidual_field(space, &x, &p, coeff)?]
        }
        Check::Deligne { base, pv } => {
            let (l, p) = with_base(base)?;
            vec![duality::verify_local_deligne(base, &l, &p, *pv, coeff)?]
        }
        Check::Fundamental { space } => {
            let x = space_arg(space)?;
            vec![duality::verify_fundamental_cycle(space, &x, coeff)?]
        }
        Check::All => {
            let results = Execution::Parallel.map(battery(coeff), |job| job());
            let mut out = Vec::new();
            for r in results {
                out.extend(r?);
            }
            out
        }
    })
}

fn validate(space: &Space) -> (bool, String) {
    let x = &space.complex;
    let report = x.pseudomanifold_check(Some(&space.boundary));
    let orientable = x.orient().is_ok();
    let mut out = String::new();
    let _ = writeln!(out, "formal dimension  {}", x.formal_dimension());
    let _ = writeln!(out, "vertices          {}", x.vertices().len());
    let counts: Vec<String> = (0..=x.dimension()).map(|d| x.count(d).to_string()).collect();
    let _ = writeln!(out, "simplices         {}", counts.join(" "));
    let _ = writeln!(out, "strata            {}", x.strata().list.len());
    let _ = writeln!(out, "boundary          {} simplices", space.boundary.len());
    let _ = writeln!(out, "euler             {}", x.euler_characteristic());
    let _ = writeln!(out, "pure              {}", report.pure);
    let _ = writeln!(out, "nonbranching      {}", report.nonbranching);
    let _ = writeln!(out, "dimensions        {}", report.dimensions);
    let _ = writeln!(out, "orientable        {orientable}");
    for f in &report.failures {
        let _ = writeln!(out, "  {f}");
    }
    (report.passes(), out)
}

#[derive(Serialize)]
struct StratumRow {
    id: String,
    dim: usize,
    codim: usize,
    simplices: usize,
    perversity: i64,
}

pub fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let common = &cli.common;
    let start = Instant::now();
    let mut code = ExitCode::SUCCESS;
    let text = match &cli.command {
        Command::Validate { space } => {
            let s = space_arg(space)?;
            let (ok, table) = validate(&s);
            if !ok {
                code = ExitCode::from(EXIT_PRECONDITION);
            }
            match common.format {
                Format::Json => json(&s.complex.pseudomanifold_check(Some(&s.boundary)))?,
                _ => table,
            }
        }
        Command::Strata { space } => {
            let s = space_arg(space)?;
            let p = perversity(common, &s)?;
            let rows: Vec<StratumRow> = s
                .complex
                .strata()
                .list
                .iter()
                .map(|st| StratumRow {
                    id: st.id.clone(),
                    dim: st.dim,
                    codim: st.codim,
                    simplices: st.simplices.len(),
                    perversity: p.value(&st.id),
                })
                .collect();
            match common.format {
                Format::Json => json(&rows)?,
                Format::Csv => {
                    let mut out = String::from("id,dim,codim,simplices,perversity\n");
                    for r in &rows {
                        let _ = writeln!(out, "{},{},{},{},{}", r.id, r.dim, r.codim, r.simplices, r.perversity);
                    }
                    out
                }
                Format::Table => {
                    let mut out = String::new();
                    for r in &rows {
                        let _ = writeln!(out, "{:<8} dim {} codim {} simplices {:>4} p {}", r.id, r.dim, r.codim, r.simplices, r.perversity);
                    }
                    out
                }
            }
        }
        Command::Homology { space, theory, bm } => {
            let s = space_arg(space)?;
            let p = perversity(common, &s)?;
            let chain_theory = if *theory == TheoryArg::King { Theory::King } else { Theory::Tame };
            let mut opts = ChainOptions::new(chain_theory, common.coeff);
            if *bm {
                opts = opts.relative_to(&s.boundary);
            }
            let c = intersection_complex(&s.complex, &p, &opts)?;
            let h = if *theory == TheoryArg::Cochain { c.cohomology()? } else { c.homology()? };
            render_homology(common.format, &h)?
        }
        Command::Blowup { space, dims } => {
            let s = space_arg(space)?;
            let p = perversity(common, &s)?;
            let b = BlowupComplex::new(&s.complex);
            let allowable = b.perverse_complex(&s.complex, &p, common.coeff)?;
            let h = allowable.complex.homology()?.resized(b.complex.len());
            let mut out = render_homology(common.format, &h)?;
            if *dims && common.format == Format::Table {
                let _ = writeln!(out, "global    {:?}", b.complex.dims);
                let _ = writeln!(out, "allowable {:?}", allowable.complex.dims);
            }
            out
        }
        Command::Verify { check } => {
            let mut reports = verify(common, check)?;
            if common.timing {
                reports = reports.into_iter().map(DualityReport::with_timing).collect();
            }
            if reports.iter().any(|r| !r.passed()) {
                code = ExitCode::from(EXIT_VERIFY_FAILED);
            }
            render_reports(common.format, &reports)?
        }
        Command::Example { name } => match name {
            None => ZOO.iter().map(|z| format!("{z}\n")).collect(),
            Some(n) => {
                let s = n.parse::<Recipe>()?.evaluate()?;
                let mut text = serde_json::to_string_pretty(&space_to_json(&s))?;
                text.push('\n');
                text
            }
        },
    };
    emit(common, &text)?;
    if common.timing && !matches!(cli.command, Command::Verify { .. }) {
        eprintln!("elapsed {} ms", start.elapsed().as_millis());
    }
    Ok(code)
}

/// Exit code for an error escaping [`run`].
pub fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<stratihom::Error>() {
        Some(e) if !e.is_input_error() => EXIT_PRECONDITION,
        _ => EXIT_INPUT,
    }
}
