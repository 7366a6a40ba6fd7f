use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use linper_core::distinction::{
    arthur_split, pole_set_transfer_check, shape_classify, Context, Decider, Decision, Parity,
};
use linper_core::enumerate::{crosscheck, Universe};
use linper_core::multiseg::{central_exponent, is_ladder, is_left_aligned, is_right_aligned, standard_order};
use linper_core::orbits::{admissible_exponents, enumerate_admissible, enumerate_orbits, general_orbit_exponents};
use linper_core::segment::{dual_segment, is_linked, precedes};
use linper_core::structure::{
    commutes, derivative, divisions, highest_derivative_speh, jacquet_ladder, mat_matrices, standard_module_kernel,
};
use linper_core::{Error, LineSet, Rat, SpehDatum};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::parse::{self, Expr, Term};
use crate::{report, universe};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "linper", version, about = "Ladder combinatorics and linear periods for p-adic GL(n)")]
pub struct Cli {
    /// Universe file; falls back to LINPER_UNIVERSE, then the builtin set.
    #[arg(long, global = true)]
    pub universe: Option<PathBuf>,
    /// Which Steinberg lengths are distinguished on exterior-pole lines.
    #[arg(long, global = true, value_enum, default_value_t = ParityArg::OddExterior)]
    pub parity: ParityArg,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ParityArg {
    OddExterior,
    OddSymmetric,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::OddExterior => Parity::OddExterior,
            ParityArg::OddSymmetric => Parity::OddSymmetric,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Mode {
    Auto,
    Segments,
    Ladders,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Parse and print in normal form.
    Parse { expr: String },
    /// Contragredient.
    Dual { expr: String },
    /// Ladder shape predicates of a multisegment.
    Shapes { expr: String },
    /// Expand `Sp(seg,k)`, or recover the datum of an essentially Speh ladder.
    Speh { expr: String },
    /// Jacquet module constituents with first factor of degree k.
    Jacquet {
        #[arg(long)]
        k: u64,
        expr: String,
    },
    /// All divisions, optionally with right part of degree k.
    Divisions {
        #[arg(long)]
        k: Option<u64>,
        expr: String,
    },
    /// Derivative of a left aligned ladder.
    Derivative {
        #[arg(long)]
        k: u64,
        expr: String,
    },
    /// Kernel of the standard module onto a ladder.
    Kernel { expr: String },
    /// Parabolic orbits; with --a, the induced contexts.
    Orbits {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<Rat>,
    },
    /// Admissible orbit data for a composition.
    Admissible {
        #[arg(long, value_delimiter = ',', required = true)]
        nbar: Vec<u32>,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
    },
    /// Matrices with the given row and column sums.
    Mat {
        #[arg(long, value_delimiter = ',', required = true)]
        alpha: Vec<u32>,
        #[arg(long, value_delimiter = ',', required = true)]
        beta: Vec<u32>,
    },
    /// Decide distinction.
    Distinguished {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: Rat,
        expr: String,
    },
    /// Run the necessity search and print a certificate.
    Certify {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: Rat,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
        expr: String,
    },
    /// Shape class of a right aligned ladder on a degree one line.
    Shape { expr: String },
    /// Sufficient condition for `Sp(seg,k) x L = L x Sp(seg,k)`, L right aligned.
    Commutes { expr: String },
    /// Pole set check for the twist a.
    Poleset {
        #[arg(long, allow_hyphen_values = true)]
        a: Rat,
        expr: String,
    },
    /// Compare the classification with the brute-force oracle.
    Crosscheck {
        #[arg(long)]
        max_degree: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true, default_value = "-8")]
        window_lo: Rat,
        #[arg(long, allow_hyphen_values = true, default_value = "8")]
        window_hi: Rat,
        #[arg(long, default_value_t = 8)]
        max_len: u64,
        #[arg(long, default_value_t = 8)]
        max_height: usize,
    },
}

impl Cmd {
    fn name(&self) -> &'static str {
        match self {
            Cmd::Parse { .. } => "parse",
            Cmd::Dual { .. } => "dual",
            Cmd::Shapes { .. } => "shapes",
            Cmd::Speh { .. } => "speh",
            Cmd::Jacquet { .. } => "jacquet",
            Cmd::Divisions { .. } => "divisions",
            Cmd::Derivative { .. } => "derivative",
            Cmd::Kernel { .. } => "kernel",
            Cmd::Orbits { .. } => "orbits",
            Cmd::Admissible { .. } => "admissible",
            Cmd::Mat { .. } => "mat",
            Cmd::Distinguished { .. } => "distinguished",
            Cmd::Certify { .. } => "certify",
            Cmd::Shape { .. } => "shape",
            Cmd::Commutes { .. } => "commutes",
            Cmd::Poleset { .. } => "poleset",
            Cmd::Crosscheck { .. } => "crosscheck",
        }
    }
}

fn ctx(p: u32, q: u32, a: Rat) -> Context {
    Context::new(p, q, a)
}

fn term_json(t: &Term, lines: &LineSet) -> Value {
    match t {
        Term::Sum(s) => json!({
            "kind": "sum",
            "text": parse::print_term(t, lines),
            "segments": s.iter().map(|x| report::segment(x, lines)).collect::<Vec<_>>(),
        }),
        Term::Speh(d, alpha) => json!({
            "kind": "speh",
            "text": parse::print_term(t, lines),
            "datum": report::speh(d, lines),
            "alpha": alpha.map(report::rat),
        }),
    }
}

fn dual_expr(e: &Expr, lines: &LineSet) -> Result<Expr, CliError> {
    let terms = e
        .terms()?
        .iter()
        .map(|t| match t {
            Term::Sum(s) => {
                let mut d: Vec<_> = s.iter().map(|x| dual_segment(lines, x)).collect();
                d.sort();
                Term::Sum(d)
            }
            Term::Speh(d, x) => Term::Speh(d.dual(lines), *x),
        })
        .collect();
    Ok(Expr::Product(terms))
}

fn decision_name(d: Decision) -> &'static str {
    match d {
        Decision::Yes => "yes",
        Decision::No => "no",
        Decision::Unknown => "unknown",
    }
}

fn execute(cmd: &Cmd, lines: &LineSet, parity: Parity) -> Result<Value, CliError> {
    let dec = Decider::with_parity(lines, parity);
    let expr = |s: &str| parse::parse(s, lines);
    Ok(match cmd {
        Cmd::Parse { expr: src } => {
            let e = expr(src)?;
            match &e {
                Expr::Context(c) => json!({
                    "normalized": parse::print(&e, lines),
                    "kind": "context",
                    "context": report::context(*c),
                }),
                Expr::Product(terms) => {
                    let mut v = json!({
                        "normalized": parse::print(&e, lines),
                        "kind": "product",
                        "degree": e.multisegment()?.degree(lines),
                        "terms": terms.iter().map(|t| term_json(t, lines)).collect::<Vec<_>>(),
                    });
                    if let Some(u) = e.unitary()? {
                        let (ar, comp) = arthur_split(&u);
                        v["arthur_part"] = report::unitary(&ar, lines);
                        v["complementary_part"] = report::unitary(&comp, lines);
                    }
                    v
                }
            }
        }
        Cmd::Dual { expr: src } => {
            let e = expr(src)?;
            let d = dual_expr(&e, lines)?;
            let self_dual = match e.unitary()? {
                Some(u) => u.is_self_dual(lines),
                None => e.multisegment()? == d.multisegment()?,
            };
            json!({
                "input": parse::print(&e, lines),
                "dual": parse::print(&d, lines),
                "self_dual": self_dual,
                "multisegment": report::multisegment(&d.multisegment()?, lines),
            })
        }
        Cmd::Shapes { expr: src } => {
            let e = expr(src)?;
            let m = e.multisegment()?;
            let speh = linper_core::LadderRep::new(m.clone()).ok().and_then(|l| SpehDatum::recover(&l));
            let order = standard_order(&m);
            let pairs = |f: fn(&linper_core::Segment, &linper_core::Segment) -> bool| -> Vec<[usize; 2]> {
                let mut out = Vec::new();
                for (i, x) in order.iter().enumerate() {
                    for (j, y) in order.iter().enumerate() {
                        if i != j && f(x, y) {
                            out.push([i + 1, j + 1]);
                        }
                    }
                }
                out
            };
            json!({
                "multisegment": report::multisegment(&m, lines),
                "degree": m.degree(lines),
                "ladder": is_ladder(&m),
                "left_aligned": is_left_aligned(&m),
                "right_aligned": is_right_aligned(&m),
                "essentially_speh": linper_core::multiseg::is_ess_speh(&m),
                "self_dual": linper_core::multiseg::is_self_dual_rep(lines, &m),
                "central_exponent": report::rat(central_exponent(lines, &m)),
                "standard_order": order.iter().map(|s| report::segment(s, lines)).collect::<Vec<_>>(),
                "linked": pairs(is_linked).into_iter().filter(|[i, j]| i < j).collect::<Vec<_>>(),
                "precedes": pairs(precedes),
                "speh": speh.map(|d| report::speh(&d, lines)),
            })
        }
        Cmd::Speh { expr: src } => {
            let e = expr(src)?;
            match e.single()? {
                t @ Term::Speh(d, _) => json!({
                    "datum": report::speh(d, lines),
                    "ladders": t.ladders().iter().map(|l| report::ladder(l, lines)).collect::<Vec<_>>(),
                }),
                t @ Term::Sum(_) => {
                    let l = t.ladder()?;
                    json!({
                        "ladder": report::ladder(&l, lines),
                        "datum": SpehDatum::recover(&l).map(|d| report::speh(&d, lines)),
                    })
                }
            }
        }
        Cmd::Jacquet { k, expr: src } => {
            let l = expr(src)?.ladder()?;
            let n = l.degree(lines);
            if *k > n {
                return Err(Error::Precondition(format!("k = {k} exceeds the degree {n}")).into());
            }
            let pairs = jacquet_ladder(lines, &l, *k);
            json!({
                "ladder": report::ladder(&l, lines),
                "k": k,
                "pairs": pairs.iter().map(|(r, le)| json!({
                    "right": report::ladder(r, lines),
                    "left": report::ladder(le, lines),
                })).collect::<Vec<_>>(),
            })
        }
        Cmd::Divisions { k, expr: src } => {
            let l = expr(src)?.ladder()?;
            let all = divisions(lines, &l, *k);
            json!({
                "ladder": report::ladder(&l, lines),
                "count": all.len(),
                "divisions": all.iter().map(|d| report::division(d, lines)).collect::<Vec<_>>(),
            })
        }
        Cmd::Derivative { k, expr: src } => {
            let e = expr(src)?;
            let l = e.ladder()?;
            let d = derivative(lines, &l, *k)?;
            let mut v = json!({
                "ladder": report::ladder(&l, lines),
                "k": k,
                "derivative": d.map(|x| report::ladder(&x, lines)),
            });
            if let Term::Speh(sp, None) = e.single()? {
                let (shift, rest) = highest_derivative_speh(sp);
                v["highest_speh"] = json!({ "shift": report::rat(shift), "result": rest.map(|r| report::speh(&r, lines)) });
            }
            v
        }
        Cmd::Kernel { expr: src } => {
            let l = expr(src)?.ladder()?;
            let terms = standard_module_kernel(&l);
            json!({
                "ladder": report::ladder(&l, lines),
                "terms": terms.iter().enumerate().map(|(i, t)| report::kernel_term(i, t, lines)).collect::<Vec<_>>(),
            })
        }
        Cmd::Orbits { k, p, q, a } => {
            let orbits = enumerate_orbits(*k, *p, *q);
            let mut rows = Vec::new();
            for o in &orbits {
                let mut row = json!({ "r": o.r, "s": o.s, "defect": o.defect });
                if let Some(a) = a {
                    let c = general_orbit_exponents(o.r, o.s, *k, *p, *q, *a)?;
                    row["first"] = report::context(c.first);
                    row["middle_degree"] = json!(c.middle_degree);
                    row["last"] = report::context(c.last);
                }
                rows.push(row);
            }
            json!({ "k": k, "p": p, "q": q, "orbits": rows })
        }
        Cmd::Admissible { nbar, p, q } => {
            let data = enumerate_admissible(nbar, *p, *q)?;
            let rows: Vec<Value> = data
                .iter()
                .map(|d| {
                    json!({
                        "tau": d.tau.iter().map(|i| i + 1).collect::<Vec<_>>(),
                        "splits": d.splits.iter().map(|s| s.map(|(x, y)| [x, y])).collect::<Vec<_>>(),
                        "exponents": admissible_exponents(d, nbar)
                            .into_iter()
                            .map(|(l, x)| json!({ "block": report::block_label(l), "exponent": report::rat(x) }))
                            .collect::<Vec<_>>(),
                    })
                })
                .collect();
            json!({ "nbar": nbar, "p": p, "q": q, "count": rows.len(), "data": rows })
        }
        Cmd::Mat { alpha, beta } => {
            let mats = mat_matrices(alpha, beta)?;
            json!({
                "alpha": alpha,
                "beta": beta,
                "count": mats.len(),
                "matrices": mats.iter().map(|m| m.entries.clone()).collect::<Vec<_>>(),
            })
        }
        Cmd::Distinguished { p, q, a, expr: src } => {
            let e = expr(src)?;
            let c = ctx(*p, *q, *a);
            let (rule, decision) = decide(&dec, &e, c)?;
            if decision == Decision::Unknown {
                return Err(Error::Undecided(format!("{} at {c}: the pole set check fails", parse::print(&e, lines))).into());
            }
            json!({
                "input": parse::print(&e, lines),
                "context": report::context(c),
                "rule": rule,
                "decision": decision_name(decision),
                "distinguished": decision == Decision::Yes,
            })
        }
        Cmd::Certify { p, q, a, mode, expr: src } => {
            let e = expr(src)?;
            let c = ctx(*p, *q, *a);
            let segs = e.segments();
            let (kind, v) = match (mode, segs) {
                (Mode::Segments, None) => return Err(CliError::Usage("segment mode needs a product of segments".into())),
                (Mode::Segments | Mode::Auto, Some(s)) => ("segments", dec.nec_search_segments(&s, c)?),
                (Mode::Ladders, _) | (Mode::Auto, None) => ("ladders", dec.nec_search_speh_products(&e.ladders()?, c)?),
            };
            json!({
                "input": parse::print(&e, lines),
                "context": report::context(c),
                "search": kind,
                "verdict": if v.possible { "possible" } else { "impossible" },
                "certificate": report::verdict(&v),
            })
        }
        Cmd::Shape { expr: src } => {
            let l = expr(src)?.ladder()?;
            json!({ "ladder": report::ladder(&l, lines), "shape": report::shape(shape_classify(lines, &l)?) })
        }
        Cmd::Commutes { expr: src } => {
            let e = expr(src)?;
            let (sp, rest) = match e.terms()? {
                [Term::Speh(d, None), t] => (d, t.ladder()?),
                _ => return Err(CliError::Usage("expected 'Sp(seg,k) x ladder'".into())),
            };
            json!({
                "speh": report::speh(sp, lines),
                "ladder": report::ladder(&rest, lines),
                "commutes": commutes(sp, &rest)?,
            })
        }
        Cmd::Poleset { a, expr: src } => {
            let l = expr(src)?.ladder()?;
            let points: Vec<Rat> = if l.line().is_some_and(|x| lines.is_trivial(x)) {
                l.segments().iter().map(|s| s.a - Rat::HALF).collect()
            } else {
                vec![]
            };
            json!({
                "ladder": report::ladder(&l, lines),
                "a": report::rat(*a),
                "points": report::rats(&points),
                "passes": pole_set_transfer_check(lines, &l, *a),
            })
        }
        Cmd::Crosscheck { max_degree, out, window_lo, window_hi, max_len, max_height } => {
            let u = Universe::new(lines.clone(), (*window_lo, *window_hi), *max_len, *max_height)?;
            let r = crosscheck(&u, &dec, *max_degree);
            let mut v = json!({
                "universe": universe::to_entries(lines),
                "parity": match parity { Parity::OddExterior => "odd-exterior", Parity::OddSymmetric => "odd-symmetric" },
                "max_degree": max_degree,
                "window": [report::rat(*window_lo), report::rat(*window_hi)],
                "max_len": max_len,
                "max_height": max_height,
            });
            if let (Value::Object(dst), Value::Object(src)) = (&mut v, report::crosscheck(&r, lines)) {
                dst.extend(src);
            }
            if let Some(path) = out {
                let mut doc = v.clone();
                doc["schema"] = json!(schema("crosscheck"));
                let text = serde_json::to_string_pretty(&doc).expect("json values serialize");
                std::fs::write(path, text + "\n").map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            }
            v
        }
    })
}

/// Picks the applicable criterion for the input.
fn decide(dec: &Decider<'_>, e: &Expr, c: Context) -> Result<(&'static str, Decision), CliError> {
    let lines = dec.lines;
    let n = e.multisegment()?.degree(lines);
    if n != c.n() {
        return Err(Error::SizeMismatch { expected: c.n(), found: n }.into());
    }
    if let [t @ (Term::Sum(_) | Term::Speh(_, None))] = e.terms()? {
        if let Some(d) = SpehDatum::recover(&t.ladder()?) {
            return Ok(("essentially-speh", dec.decide_ess_speh(&d, c)?));
        }
    }
    if let Some(u) = e.unitary()? {
        if c.p != c.q || !c.a.is_zero() {
            return Err(Error::Precondition(format!("products of unitary factors are decided only at (m,m,0), not {c}")).into());
        }
        return Ok(("unitary", dec.is_dist_unitary(&u)?.into()));
    }
    Err(Error::Precondition("no closed criterion applies; try certify".into()).into())
}

pub fn schema(cmd: &str) -> String {
    format!("linper.{cmd}/{SCHEMA_VERSION}")
}

/// Runs one invocation; `env_universe` stands in for `LINPER_UNIVERSE`.
pub fn run_with<I, T>(args: I, env_universe: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    let result = universe::resolve(cli.universe.as_deref(), env_universe)
        .and_then(|lines| execute(&cli.cmd, &lines, cli.parity.into()));
    match result {
        Ok(body) => {
            let mut doc = json!({ "schema": schema(cli.cmd.name()) });
            if let (Value::Object(dst), Value::Object(src)) = (&mut doc, body) {
                dst.extend(src);
            }
            let text = serde_json::to_string_pretty(&doc).expect("json values serialize");
            match writeln!(out, "{text}") {
                Ok(()) => 0,
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
                Err(e) => {
                    let _ = writeln!(err, "linper: {e}");
                    1
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "linper: {e}");
            e.exit_code()
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let env = std::env::var("LINPER_UNIVERSE").ok();
    run_with(args, env.as_deref(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
