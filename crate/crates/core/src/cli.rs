//! Command-line entry points. Exit codes: 0 success, 1 usage or input error,
//! 2 inconsistent presentation or failed conditions, 3 oracle mismatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use num_rational::BigRational;

use crate::algebra::SkewPbw;
use crate::catalog;
use crate::error::Error;
use crate::expr::{eval, parse, Scope};
use crate::presentation::check::{check_all, DEFAULT_SAMPLES, DEFAULT_SEED};
use crate::presentation::Presentation;
use crate::reduction::oracle_product;
use crate::schema::{load_presentation, presentation_to_json, HomSpecDoc};
use crate::universal::HomSpec;

const GRAMMAR: &str = "\
Expressions:
  sum     := signed (('+' | '-') signed)*
  signed  := '-' signed | product
  product := power ('*' power)*
  power   := atom ('^' '-'? INT)?
  atom    := INT ('/' INT)? | NAME | '(' sum ')'
'^' binds tighter than '*', '*' tighter than unary minus, unary minus tighter
than '+'. Products are noncommutative and keep their order; juxtaposition is
an error. Negative exponents apply only to unit constants such as q^-1.

Presentations are JSON files or catalog:NAME (see `catalog list`).

Exit codes: 0 ok, 1 usage/input error, 2 inconsistent presentation or failed
homomorphism conditions, 3 product disagrees with the word-level oracle.";

#[derive(Parser, Debug)]
#[command(name = "skewpbw", version, about = "Skew PBW extensions: consistency checks, normal forms, products, homomorphisms", after_help = GRAMMAR)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check that a presentation defines a skew PBW extension
    Check {
        presentation: String,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Print the canonical form of an expression
    Nf { presentation: String, expr: String },
    /// Multiply two expressions
    Mul {
        presentation: String,
        left: String,
        right: String,
        /// Also compute the product by word reduction and compare
        #[arg(long)]
        verify: bool,
    },
    /// Apply the homomorphism described by a spec file
    Hom {
        spec: String,
        expr: Option<String>,
        /// Only report on the conditions
        #[arg(long)]
        check_only: bool,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// List or show catalog presentations
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogCmd {
    List,
    Show {
        name: String,
        /// Parameters as key=value, e.g. n=2 or lambda12=1/2
        #[arg(long, value_delimiter = ',')]
        params: Vec<String>,
    },
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

fn input_error(io: &mut Io, e: impl std::fmt::Display) -> i32 {
    let _ = writeln!(io.err, "error: {e}");
    1
}

fn consistent(io: &mut Io, p: &Presentation) -> bool {
    let rep = check_all(p, DEFAULT_SAMPLES, DEFAULT_SEED);
    if !rep.overall {
        let _ = writeln!(io.err, "presentation is not consistent:\n{rep}");
    }
    rep.overall
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut io = Io { out, err };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(io.out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(io.err, "{}", e.render());
                    1
                }
            };
        }
    };
    match cli.cmd {
        Cmd::Check { presentation, samples, seed, json } => {
            let p = match load_presentation(&presentation, None) {
                Ok(p) => p,
                Err(e) => return input_error(&mut io, e),
            };
            let rep = check_all(&p, samples, seed);
            if json {
                let _ = writeln!(io.out, "{}", serde_json::to_string_pretty(&rep).expect("serializable"));
            } else {
                let _ = writeln!(io.out, "{rep}");
            }
            if rep.overall {
                0
            } else {
                2
            }
        }
        Cmd::Nf { presentation, expr } => with_algebra(&mut io, &presentation, |io, alg| {
            let f = parse(&expr, &Scope::of(alg.presentation())).and_then(|e| eval(&e, alg));
            match f {
                Ok(f) => {
                    let _ = writeln!(io.out, "{}", f.to_text(alg.presentation()));
                    0
                }
                Err(e) => input_error(io, e),
            }
        }),
        Cmd::Mul { presentation, left, right, verify } => with_algebra(&mut io, &presentation, |io, alg| {
            let p = alg.presentation().clone();
            let parsed = parse(&left, &Scope::of(&p))
                .and_then(|l| eval(&l, alg))
                .and_then(|l| Ok((l, parse(&right, &Scope::of(&p)).and_then(|r| eval(&r, alg))?)));
            let (f, g) = match parsed {
                Ok(fg) => fg,
                Err(e) => return input_error(io, e),
            };
            let prod = match alg.mul(&f, &g) {
                Ok(x) => x,
                Err(e) => return input_error(io, e),
            };
            let _ = writeln!(io.out, "{}", prod.to_text(&p));
            if verify {
                match oracle_product(&f, &g, &p) {
                    Ok(o) if o == prod => {}
                    Ok(o) => {
                        let _ = writeln!(io.err, "oracle mismatch: word reduction gives {}", o.to_text(&p));
                        return 3;
                    }
                    Err(e) => return input_error(io, e),
                }
            }
            0
        }),
        Cmd::Hom { spec, expr, check_only, samples, seed, json } => hom(&mut io, &spec, expr, check_only, samples, seed, json),
        Cmd::Catalog { cmd: CatalogCmd::List } => {
            for e in catalog::ENTRIES {
                let params: Vec<String> = e.params.iter().map(|(k, d)| format!("{k}={d}")).collect();
                let params = if params.is_empty() { String::new() } else { format!(" [{}]", params.join(", ")) };
                let _ = writeln!(io.out, "{}{params}  {}", e.name, e.summary);
            }
            0
        }
        Cmd::Catalog { cmd: CatalogCmd::Show { name, params } } => {
            let mut map = catalog::Params::new();
            for kv in params {
                let Some((k, v)) = kv.split_once('=') else {
                    return input_error(&mut io, format!("parameter `{kv}` is not key=value"));
                };
                match v.trim().parse::<BigRational>() {
                    Ok(v) => {
                        map.insert(k.trim().to_string(), v);
                    }
                    Err(_) => return input_error(&mut io, format!("parameter `{k}`: `{v}` is not a rational")),
                }
            }
            match catalog::get(&name, &map) {
                Ok(p) => {
                    let _ = writeln!(io.out, "{}", presentation_to_json(&p));
                    0
                }
                Err(e) => input_error(&mut io, e),
            }
        }
    }
}

fn with_algebra(io: &mut Io, spec: &str, f: impl FnOnce(&mut Io, &SkewPbw) -> i32) -> i32 {
    let p = match load_presentation(spec, None) {
        Ok(p) => p,
        Err(e) => return input_error(io, e),
    };
    if !consistent(io, &p) {
        return 2;
    }
    let alg = SkewPbw::new(Arc::new(p));
    f(io, &alg)
}

fn hom(io: &mut Io, path: &str, expr: Option<String>, check_only: bool, samples: usize, seed: u64, json: bool) -> i32 {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return input_error(io, format!("{path}: {e}")),
    };
    let spec = match HomSpecDoc::parse(&text).and_then(|d| HomSpec::from_doc(&d, Path::new(path).parent())) {
        Ok(s) => s,
        Err(e) => return input_error(io, e),
    };
    for p in [spec.source().presentation().clone(), spec.target().presentation().clone()] {
        if !consistent(io, &p) {
            return 2;
        }
    }
    let source = spec.source().presentation().clone();
    let verified = spec.verify(samples, seed);
    let report = match &verified {
        Ok(h) => h.report().clone(),
        Err((_, r)) => r.clone(),
    };
    if check_only {
        if json {
            let _ = writeln!(io.out, "{}", serde_json::to_string_pretty(&report).expect("serializable"));
        } else {
            let _ = writeln!(io.out, "{report}");
        }
        return if report.pass { 0 } else { 2 };
    }
    let h = match verified {
        Ok(h) => h,
        Err((_, r)) => {
            let _ = writeln!(io.err, "homomorphism conditions fail:\n{r}");
            return 2;
        }
    };
    let Some(expr) = expr else {
        return input_error(io, Error::Hom("an expression is required unless --check-only is given".into()));
    };
    let salg = h.spec().source();
    let image = parse(&expr, &Scope::of(&source)).and_then(|e| eval(&e, salg)).and_then(|f| h.extend(&f));
    match image {
        Ok(g) => {
            let _ = writeln!(io.out, "{}", g.to_text(h.spec().target().presentation()));
            0
        }
        Err(e) => input_error(io, e),
    }
}
