//! strad: string algebras, their AR quivers, and radical depths of composites.
//!
//! Exit codes: 0 all requested checks pass, 1 a verified-false claim or a
//! domain error, 2 usage errors.

mod expr;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};

use strad_core::artheory::ArQuiver;
use strad_core::field::{Field, FieldDescriptor, PrimeField, Rationals};
use strad_core::quiver::{build_a_nm, is_string_algebra, parse_presentation, Presentation};
use strad_core::radical::{IndecomposableIndex, RadicalTable};
use strad_core::repmod::{hom_basis, string_module};
use strad_core::strings::{enumerate_strings, find_bands, StringWord};
use strad_core::verify::{igusa_todorov_check, verify_main_theorem, FamilyContext};

#[derive(Parser)]
#[command(
    name = "strad",
    about = "Exact engine for string algebras: strings, AR quivers, radical depths",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Built-in family member A(n,m), e.g. --family 3,2
    #[arg(long, global = true, value_name = "n,m")]
    family: Option<String>,

    /// Presentation file (see README for the format)
    #[arg(long, global = true, value_name = "FILE")]
    input: Option<PathBuf>,

    /// Scalar field: q (exact rationals) or fp:PRIME
    #[arg(long, global = true, default_value = "q")]
    field: String,

    /// Worker threads for the radical table and AR quiver
    #[arg(long, global = true, value_name = "K")]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the string-algebra conditions; list violations
    Validate,
    /// Enumerate all strings (canonical representative per inverse pair)
    Strings,
    /// Detect bands (witnesses of infinite representation type)
    Bands,
    /// Print the string module M(C) as explicit matrices
    Module {
        /// string literal, e.g. "beta1 ~alpha ~beta1" or "e(2)"
        string: String,
    },
    /// Dimension and basis of Hom(M(X), M(Y))
    Hom { x: String, y: String },
    /// Radical depth of a composite expression of named chain maps
    Depth {
        /// e.g. "f1*g5*g4*g3*g2*g1*f2*f3" or "f1 + f1*g5*g4*g3*g2*g1"
        expr: String,
    },
    /// Build the AR quiver; optionally export DOT
    ArQuiver {
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
    },
    /// Certify 0 -> S(2) -> P(1) -> tau^{-1}S(2) -> 0 for A(n,m)
    VerifyLemma1 {
        /// inclusive ranges "nmin:nmax,mmin:mmax"
        #[arg(long, value_name = "RANGES")]
        grid: Option<String>,
    },
    /// Verify the composite of n irreducibles has depth exactly n+m+3
    VerifyMain {
        #[arg(long, value_name = "RANGES")]
        grid: Option<String>,
        /// write a machine-readable report
        #[arg(long, value_name = "FILE")]
        report: Option<PathBuf>,
    },
    /// Igusa-Todorov check on the canonical sectional chain of A(n,m)
    ItCheck,
}

fn main() -> ExitCode {
    // die quietly when the reader of a pipe goes away (e.g. `strad ... | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if k == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        // ignore failure when a pool is already installed (e.g. tests)
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global();
    }
    let field = match cli.field.parse::<FieldDescriptor>() {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let outcome = match field {
        FieldDescriptor::Rational => run(&cli, Rationals),
        FieldDescriptor::Prime(p) => match PrimeField::new(p) {
            Ok(f) => run(&cli, f),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        },
    };
    match outcome {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Ok(Outcome::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

enum Outcome {
    Pass,
    Fail,
    Usage(String),
}

fn parse_family(s: &str) -> Option<(i64, i64)> {
    let (n, m) = s.split_once(',')?;
    Some((n.trim().parse().ok()?, m.trim().parse().ok()?))
}

fn parse_grid(s: &str) -> Option<(std::ops::RangeInclusive<i64>, std::ops::RangeInclusive<i64>)> {
    let (ns, ms) = s.split_once(',')?;
    let parse_range = |r: &str| -> Option<std::ops::RangeInclusive<i64>> {
        let (a, b) = r.split_once(':')?;
        Some(a.trim().parse().ok()?..=b.trim().parse().ok()?)
    };
    Some((parse_range(ns)?, parse_range(ms)?))
}

struct Source {
    pres: Arc<Presentation>,
}

fn load_source(cli: &Cli) -> anyhow::Result<Result<Source, String>> {
    match (&cli.family, &cli.input) {
        (Some(f), None) => {
            let Some((n, m)) = parse_family(f) else {
                return Ok(Err(format!("bad --family `{f}`, expected n,m")));
            };
            let pres = build_a_nm(n, m)?;
            Ok(Ok(Source {
                pres: Arc::new(pres),
            }))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)?;
            let pres = parse_presentation(&text)?;
            Ok(Ok(Source {
                pres: Arc::new(pres),
            }))
        }
        (Some(_), Some(_)) => Ok(Err("use either --family or --input, not both".into())),
        (None, None) => Ok(Err(
            "a presentation is required: --family n,m or --input FILE".into(),
        )),
    }
}

fn grid_of(
    cli_grid: &Option<String>,
    family: Option<(i64, i64)>,
) -> Result<Vec<(i64, i64)>, String> {
    if let Some(g) = cli_grid {
        let Some((nr, mr)) = parse_grid(g) else {
            return Err(format!("bad --grid `{g}`, expected nmin:nmax,mmin:mmax"));
        };
        let mut out = Vec::new();
        for n in nr {
            for m in mr.clone() {
                out.push((n, m));
            }
        }
        return Ok(out);
    }
    if let Some((n, m)) = family {
        return Ok(vec![(n, m)]);
    }
    Err("verification needs --family n,m or --grid".into())
}

fn run<K: Field>(cli: &Cli, field: K) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Validate => {
            let src = match load_source(cli)? {
                Ok(s) => s,
                Err(m) => return Ok(Outcome::Usage(m)),
            };
            let report = is_string_algebra(&src.pres);
            if report.is_string_algebra() {
                println!(
                    "string algebra: yes ({} vertices, {} arrows, {} relations)",
                    src.pres.quiver.vertex_count(),
                    src.pres.quiver.arrow_count(),
                    src.pres.relations().len()
                );
                match src.pres.check_finite_dimensional() {
                    Ok(()) => println!("finite-dimensional: yes"),
                    Err(e) => {
                        println!("finite-dimensional: no ({e})");
                        return Ok(Outcome::Fail);
                    }
                }
                Ok(Outcome::Pass)
            } else {
                println!("string algebra: no");
                for v in &report.violations {
                    println!("  violation: {v}");
                }
                Ok(Outcome::Fail)
            }
        }
        Command::Strings => {
            let src = match load_source(cli)? {
                Ok(s) => s,
                Err(m) => return Ok(Outcome::Usage(m)),
            };
            let words = enumerate_strings(&src.pres)?;
            println!("strings: {}", words.len());
            for w in &words {
                let dims = string_module(field.clone(), w).rep.dim_vector_string();
                println!("  {}  dim {}", w.render(), dims);
            }
            Ok(Outcome::Pass)
        }
        Command::Bands => {
            let src = match load_source(cli)? {
                Ok(s) => s,
                Err(m) => return Ok(Outcome::Usage(m)),
            };
            let bands = find_bands(&src.pres);
            if bands.is_empty() {
                println!("bands: none (finite representation type)");
            } else {
                println!("bands: {}", bands.len());
                for b in &bands {
                    println!("  {}", b.render());
                }
            }
            Ok(Outcome::Pass)
        }
        Command::Module { string } => {
            let src = match load_source(cli)? {
                Ok(s) => s,
                Err(m) => return Ok(Outcome::Usage(m)),
            };
            let w = StringWord::parse(src.pres.clone(), string)?;
            let module = string_module(field, &w);
            println!("string: {}", w.render());
            println!("canonical: {}", w.canonical().render());
            print!("{}", module.rep.render());
            Ok(Outcome::Pass)
        }
        Command::Hom { x, y } => {
            let src = match load_source(cli)? {
                Ok(s) => s,
                Err(m) => return Ok(Outcome::Usage(m)),
            };
            let wx = StringWord::parse(src.pres.clone(), x)?;
            let wy = StringWord::parse(src.pres.clone(), y)?;
            let mx = string_module(field.clone(), &wx);
            let my = string_module(field, &wy);
            let basis = hom_basis(&mx.rep, &my.rep);
            println!(
                "dim Hom(M({}), M({})) = {}",
                wx.render(),
                wy.render(),
                basis.len()
            );
            for (i, b) in basis.iter().enumerate() {
                println!("basis[{i}]:");
                print!("{}", b.render());
            }
            Ok(Outcome::Pass)
        }
        Command::Depth { expr } => {
            let Some((n, m)) = cli.family.as_deref().and_then(parse_family) else {
                return Ok(Outcome::Usage(
                    "depth expressions name the A(n,m) chain maps; use --family n,m".into(),
                ));
            };
            let ctx = FamilyContext::build(n, m, field)?;
            let morphism = expr::evaluate(&ctx, expr)?;
            if morphism.is_zero() {
                println!("composite = 0 (depth undefined: the zero morphism lies in every power)");
                return Ok(Outcome::Pass);
            }
            let table = ctx.table();
            let sx = table.index().node_of_rep(morphism.source())?;
            let sy = table.index().node_of_rep(morphism.target())?;
            let d = table.depth(sx, sy, &morphism)?;
            println!("depth={d}");
            println!("  in rad^{d}: yes");
            println!("  in rad^{}: no", d + 1);
            Ok(Outcome::Pass)
        }
        Command::ArQuiver { dot } => {
            let src = match load_source(cli)? {
                Ok(s) => s,
                Err(m) => return Ok(Outcome::Usage(m)),
            };
            let index = IndecomposableIndex::build(&src.pres, field)?;
            let table = RadicalTable::build(index)?;
            let ar = ArQuiver::build(table)?;
            if let Some(path) = dot {
                std::fs::write(path, ar.to_dot())?;
            }
            println!("nodes: {}", ar.node_count());
            println!("arrows: {}", ar.arrows().len());
            for x in 0..ar.node_count() {
                let e = ar.index().entry(x);
                let mut marks = String::new();
                if let Some(v) = e.projective {
                    marks.push_str(&format!(" P({})", src.pres.quiver.vertex_name(v)));
                }
                if let Some(v) = e.injective {
                    marks.push_str(&format!(" I({})", src.pres.quiver.vertex_name(v)));
                }
                println!(
                    "  {}  dim {}{}",
                    e.word.render(),
                    e.module.rep.dim_vector_string(),
                    marks
                );
            }
            if let Some(path) = dot {
                println!("dot written to {}", path.display());
            }
            Ok(Outcome::Pass)
        }
        Command::VerifyLemma1 { grid } => {
            let fam = cli.family.as_deref().and_then(parse_family);
            let cells = match grid_of(grid, fam) {
                Ok(c) => c,
                Err(m) => return Ok(Outcome::Usage(m)),
            };
            let mut ok = true;
            for (n, m) in cells {
                match FamilyContext::build(n, m, field.clone()) {
                    Ok(ctx) => {
                        let mid = ctx.ar.index().entry(ctx.lemma.middles[0]).word.render();
                        println!(
                            "A({n},{m}): certified 0 -> S(2) -> M({mid}) -> tau^-1 S(2) -> 0 \
                             (middle indecomposable = P(1))"
                        );
                    }
                    Err(e) => {
                        println!("A({n},{m}): FAIL ({e})");
                        ok = false;
                    }
                }
            }
            Ok(if ok { Outcome::Pass } else { Outcome::Fail })
        }
        Command::VerifyMain { grid, report } => {
            let fam = cli.family.as_deref().and_then(parse_family);
            let cells = match grid_of(grid, fam) {
                Ok(c) => c,
                Err(m) => return Ok(Outcome::Usage(m)),
            };
            let mut blocks = String::new();
            let mut ok = true;
            for (n, m) in cells {
                let ctx = FamilyContext::build(n, m, field.clone())?;
                let rep = verify_main_theorem(&ctx)?;
                println!("{}", rep.summary());
                blocks.push_str(&rep.render());
                blocks.push('\n');
                ok &= rep.pass;
            }
            if let Some(path) = report {
                std::fs::write(path, &blocks)?;
            }
            Ok(if ok { Outcome::Pass } else { Outcome::Fail })
        }
        Command::ItCheck => {
            let Some((n, m)) = cli.family.as_deref().and_then(parse_family) else {
                return Ok(Outcome::Usage(
                    "it-check runs on the A(n,m) chain; use --family".into(),
                ));
            };
            let ctx = FamilyContext::build(n, m, field)?;
            let ok = igusa_todorov_check(&ctx.ar, &ctx.chain.nodes, &ctx.chain.maps)?;
            println!(
                "A({n},{m}): sectional chain of length {}: composite depth {} length ({})",
                ctx.chain.len(),
                if ok { "equals" } else { "differs from" },
                if ok { "PASS" } else { "FAIL" }
            );
            Ok(if ok { Outcome::Pass } else { Outcome::Fail })
        }
    }
}
