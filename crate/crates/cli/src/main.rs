mod report;

use std::process::ExitCode;

use apolar::apolarity::{ann_generators, apolar_dim};
use apolar::classification::orbit_membership_heuristic;
use apolar::tangent_orbits::tangent_report;
use apolar::*;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use report::Report;

#[derive(Parser)]
#[command(name = "apolar", version, about = "Inverse systems, tangent spaces and normal forms of apolar algebras")]
struct Cli {
    /// Coefficient field: `q` or `fp:<prime>`.
    #[arg(long, global = true, default_value = "q")]
    field: String,
    /// Number of variables; inferred from the input when omitted.
    #[arg(long, global = true)]
    vars: Option<usize>,
    /// Read input as divided powers (`dp`) or as ordinary monomials (`classical`).
    #[arg(long, global = true, default_value = "dp")]
    mode: String,
    /// Emit a JSON report.
    #[arg(long, global = true)]
    json: bool,
    /// Truncation degree for power series; must be at least the input degree.
    #[arg(long, global = true)]
    trunc: Option<u32>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Tcompressed,
    Improved,
    Square,
    Membership,
}

#[derive(Clone, Copy, ValueEnum)]
enum Golden {
    #[value(name = "13331")]
    G13331,
    #[value(name = "1222111")]
    G1222111,
    #[value(name = "char2")]
    Char2,
}

#[derive(Subcommand)]
enum Cmd {
    /// Hilbert function of the apolar algebra.
    Hilbert { poly: String },
    /// Graded pieces and generators of the homogeneous annihilator.
    Ann {
        poly: String,
        #[arg(long)]
        up_to: Option<u32>,
    },
    /// Tangent space to the orbit.
    Tangent {
        poly: String,
        #[arg(long)]
        unip: bool,
    },
    /// Orthogonal space of the tangent space.
    Perp {
        poly: String,
        #[arg(long)]
        unip: bool,
        #[arg(long)]
        max_deg: Option<u32>,
    },
    /// Orbit dimension.
    OrbitDim { poly: String },
    /// Symmetric decomposition of the Hilbert function.
    Symdec { poly: String },
    /// Compressedness of the apolar algebra.
    Compressed { poly: String },
    /// Reduce lower-order terms.
    Reduce {
        poly: String,
        #[arg(long, value_enum, default_value = "tcompressed")]
        method: Method,
        /// Target form for membership (defaults to the top degree form).
        #[arg(long)]
        target: Option<String>,
        #[arg(long)]
        t: Option<u32>,
    },
    /// Whether the tangent space of a form contains all lower degrees.
    DenseTest { form: String },
    /// The counting filter for canonically graded pairs (n, d); prints a table without arguments.
    CangradFilter { n: Option<u64>, d: Option<u64> },
    /// Reproduce a worked classification.
    Golden {
        #[arg(value_enum)]
        which: Golden,
        /// Input for 1222111; defaults to the shipped example.
        poly: Option<String>,
    },
}

const GOLDEN_13331: &str = include_str!("../golden/13331.json");
const GOLDEN_1222111: &str = include_str!("../golden/1222111.json");
const GOLDEN_CHAR2: &str = include_str!("../golden/char2.json");
const DEFAULT_1222111: &str = "x^[6] + x^[2]*y^[2] + 5*y^[3] + 3*x^[2] - x*y + 2*y^[2] + x - y + 7";

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Syntax { .. } | Error::InvalidField(_) => 1,
        Error::CrossCheckFailed(_)
        | Error::GoldenMismatch(_)
        | Error::ReductionFailed(_)
        | Error::DecompositionInvariantViolated(_) => 3,
        _ => 2,
    }
}

struct Ctx {
    field: Field,
    mode: Mode,
    vars: usize,
    trunc: Option<u32>,
}

impl Ctx {
    fn poly(&self, src: &str) -> Result<DPPoly> {
        let f = parse_poly(src, self.vars, self.field, self.mode)?;
        if let (Some(t), Some(d)) = (self.trunc, f.degree()) {
            if t < d {
                return Err(Error::HypothesisFailed(format!("truncation {t} is below the degree {d} of {src}")));
            }
        }
        Ok(f)
    }
}

fn trace_value(t: &ReductionTrace) -> Result<Value> {
    t.validate()?;
    let steps: Vec<Value> = t
        .steps
        .iter()
        .map(|s| json!({"element": report::group_element(&s.element), "result": report::poly(&s.result)}))
        .collect();
    Ok(json!({
        "target": report::poly(&t.target),
        "steps": steps,
        "final": report::poly(&t.result),
        "accumulated": report::group_element(&t.accumulated),
        "validated": true,
    }))
}

fn membership_value(m: &Membership) -> Result<Value> {
    Ok(match m {
        Membership::Yes(t) => json!({"member": true, "trace": trace_value(t)?}),
        Membership::No { degree } => json!({"member": false, "witness_degree": degree}),
    })
}

fn compare_golden(r: &mut Report, expected: &str) -> Result<()> {
    let want: Value = serde_json::from_str(expected).map_err(|e| Error::GoldenMismatch(format!("bad expected file: {e}")))?;
    let got = Value::Object(r.results.clone());
    if got != want {
        return Err(Error::GoldenMismatch(format!(
            "results differ from the shipped expected output\ngot: {}\nexpected: {}",
            serde_json::to_string(&got).unwrap_or_default(),
            serde_json::to_string(&want).unwrap_or_default()
        )));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Report> {
    let field: Field = cli.field.parse()?;
    let mode: Mode = cli.mode.parse()?;
    let (name, inputs): (&str, Vec<String>) = match &cli.cmd {
        Cmd::Hilbert { poly } => ("hilbert", vec![poly.clone()]),
        Cmd::Ann { poly, .. } => ("ann", vec![poly.clone()]),
        Cmd::Tangent { poly, .. } => ("tangent", vec![poly.clone()]),
        Cmd::Perp { poly, .. } => ("perp", vec![poly.clone()]),
        Cmd::OrbitDim { poly } => ("orbit-dim", vec![poly.clone()]),
        Cmd::Symdec { poly } => ("symdec", vec![poly.clone()]),
        Cmd::Compressed { poly } => ("compressed", vec![poly.clone()]),
        Cmd::Reduce { poly, target, .. } => ("reduce", std::iter::once(poly.clone()).chain(target.clone()).collect()),
        Cmd::DenseTest { form } => ("dense-test", vec![form.clone()]),
        Cmd::CangradFilter { .. } => ("cangrad-filter", vec![]),
        Cmd::Golden { which, poly } => match which {
            Golden::G13331 => ("golden 13331", vec![]),
            Golden::G1222111 => ("golden 1222111", vec![poly.clone().unwrap_or_else(|| DEFAULT_1222111.into())]),
            Golden::Char2 => ("golden char2", vec![]),
        },
    };
    let vars = cli.vars.unwrap_or_else(|| inputs.iter().map(|s| infer_arity(s)).max().unwrap_or(1));
    let ctx = Ctx { field, mode, vars, trunc: cli.trunc };
    let mut r = Report::new(name, field.to_string(), vars, inputs.clone());
    if mode == Mode::Classical {
        r.warn("input read as ordinary monomials and converted to divided powers; output uses divided powers");
    }
    match &cli.cmd {
        Cmd::Hilbert { poly } => {
            let f = ctx.poly(poly)?;
            let h = hilbert_function(&f)?;
            r.set("poly", report::poly(&f));
            r.set("hilbert", h.values().to_vec());
            r.set("socle_degree", h.socle_degree());
            r.set("apolar_dim", h.total());
        }
        Cmd::Ann { poly, up_to } => {
            let f = ctx.poly(poly)?;
            let d = f.degree().ok_or(Error::ZeroPolynomial)?;
            let up = up_to.unwrap_or(d + 1);
            let gens: Vec<Value> = ann_generators(&f, up)?
                .iter()
                .map(|(j, g)| json!({"degree": j, "generators": g.iter().map(report::op).collect::<Vec<_>>()}))
                .collect();
            let pieces: Vec<Value> = (0..=up).map(|i| Ok(report::basis(&ann_graded(&f, i)?))).collect::<Result<_>>()?;
            r.set("generators", gens);
            r.set("graded", pieces);
        }
        Cmd::Tangent { poly, unip } => {
            let f = ctx.poly(poly)?;
            let t = if *unip { unip_tangent_space(&f)? } else { tangent_space(&f)? };
            r.set("unipotent", *unip);
            r.set("dim", t.dim());
            r.set("ambient_dim", t.ambient().dim());
            r.set("basis", report::basis(&t));
        }
        Cmd::Perp { poly, unip, max_deg } => {
            let f = ctx.poly(poly)?;
            let d = f.degree().ok_or(Error::ZeroPolynomial)?;
            let m = max_deg.or(cli.trunc).unwrap_or(d);
            let p = perp_tangent(&f, *unip, m)?;
            r.set("unipotent", *unip);
            r.set("max_degree", m);
            r.set("dim", p.dim());
            r.set("basis", report::basis(&p));
        }
        Cmd::OrbitDim { poly } => {
            let f = ctx.poly(poly)?;
            let rep = tangent_report(&f, false)?;
            r.set("tangent_dim", rep.orbit_dim);
            match orbit_dimension(&f) {
                Ok(d) => r.set("orbit_dim", d),
                Err(e @ Error::CharacteristicTooSmall { .. }) => {
                    r.set("orbit_dim", Value::Null);
                    r.warn(format!("{e}; reporting the tangent space dimension only"));
                }
                Err(e) => return Err(e),
            }
        }
        Cmd::Symdec { poly } => {
            let f = ctx.poly(poly)?;
            let sd = symmetric_decomposition(&f)?;
            r.set("hilbert", sd.sum());
            r.set("deltas", sd.deltas().to_vec());
        }
        Cmd::Compressed { poly } => {
            let f = ctx.poly(poly)?;
            let h = hilbert_function(&f)?;
            r.set("hilbert", h.values().to_vec());
            r.set("compressed", h.is_compressed(vars));
            r.set("max_t_compressed", h.max_t_compressed(vars));
        }
        Cmd::Reduce { poly, method, target, t } => {
            let f = ctx.poly(poly)?;
            match method {
                Method::Tcompressed => {
                    let (tt, trace) = t_compressed_normal_form(&f)?;
                    r.set("t", tt);
                    r.set("trace", trace_value(&trace)?);
                }
                Method::Improved => {
                    let tt = t.ok_or_else(|| Error::HypothesisFailed("--t is required for the improved method".into()))?;
                    r.set("t", tt);
                    r.set("trace", trace_value(&improved_normal_form(&f, tt)?)?);
                }
                Method::Square => {
                    let tt = t.unwrap_or(0);
                    r.set("t", tt);
                    r.set("trace", trace_value(&square_ideal_reduce(&f, tt)?)?);
                }
                Method::Membership => {
                    let form = match target {
                        Some(s) => ctx.poly(s)?,
                        None => f.tdf(),
                    };
                    r.set("target", report::poly(&form));
                    let m = if form.is_homogeneous() {
                        unip_orbit_membership(&form, &f)?
                    } else {
                        r.warn("target is not homogeneous: greedy reduction is sound for yes answers only");
                        orbit_membership_heuristic(&form, &f)?
                    };
                    r.set("membership", membership_value(&m)?);
                }
            }
            r.set("apolar_dim", apolar_dim(&f)?);
        }
        Cmd::DenseTest { form } => {
            let f = ctx.poly(form)?;
            let dense = dense_orbit_test(&f)?;
            r.set("dense", dense);
            r.warn(
                "linear-algebra test only: a true answer is evidence, not a proof, that a general polynomial \
                 with this leading form is canonically graded",
            );
        }
        Cmd::CangradFilter { n, d } => match (n, d) {
            (Some(n), Some(d)) => {
                r.set("n", *n);
                r.set("d", *d);
                r.set("passes", cangrad_pair_filter(*n, *d));
            }
            _ => {
                let pairs: Vec<Value> = (1..=10u64)
                    .flat_map(|n| (2..=12u64).map(move |d| (n, d)))
                    .filter(|&(n, d)| cangrad_pair_filter(n, d))
                    .map(|(n, d)| json!([n, d]))
                    .collect();
                r.set("passing_pairs", pairs);
            }
        },
        Cmd::Golden { which, poly } => golden(&mut r, *which, poly.as_deref())?,
    }
    Ok(r)
}

fn golden(r: &mut Report, which: Golden, poly: Option<&str>) -> Result<()> {
    match which {
        Golden::G13331 => {
            r.field = Field::Rationals.to_string();
            r.vars = 3;
            let g = golden_13331()?;
            let lf: Vec<Value> = g
                .leading_forms
                .iter()
                .map(|c| json!({"name": c.name, "form": report::poly(&c.form), "perp_unip_le3": c.perp.iter().map(report::op).collect::<Vec<_>>()}))
                .collect();
            let nf: Vec<Value> = g
                .normal_forms
                .iter()
                .map(|c| json!({"name": c.name, "poly": report::poly(&c.poly), "tangent_dim": c.tangent_dim}))
                .collect();
            r.set("leading_forms", lf);
            r.set("normal_forms", nf);
            r.set("tangent_dims", g.normal_forms.iter().map(|c| c.tangent_dim).collect::<Vec<_>>());
            r.set("tab_matrix_at_1_2", report::matrix(&g.tab_matrix));
            r.set("tab_matrix_stabilised_form", report::matrix(&g.tab_matrix_stabilised));
            r.set("quotient_basis", vec!["y*y*y", "y*y*z", "y*z*z"]);
            for w in &g.warnings {
                r.warn(w.clone());
            }
            compare_golden(r, GOLDEN_13331)
        }
        Golden::G1222111 => {
            let field: Field = r.field.parse()?;
            r.vars = 2;
            let src = poly.unwrap_or(DEFAULT_1222111);
            let f = parse_poly(src, 2, field, Mode::DividedPower)?;
            let g = golden_1222111(&f)?;
            r.set("lambda", g.lambda.as_ref().map(report::scalar));
            r.set("lambda_squared", g.lambda_squared.as_ref().map(report::scalar));
            r.set("normal_form", report::poly(&g.normal_form));
            r.set("y4_branch_member", g.y4_member);
            let stages: Vec<Value> =
                g.stages.iter().map(|(n, p)| json!({"stage": n, "poly": report::poly(p)})).collect();
            r.set("stages", stages);
            r.set("hilbert", hilbert_function(&f)?.values().to_vec());
            r.set("deltas", symmetric_decomposition(&f)?.deltas().to_vec());
            for w in &g.warnings {
                r.warn(w.clone());
            }
            if poly.is_none() && field == Field::Rationals {
                compare_golden(r, GOLDEN_1222111)?;
            }
            Ok(())
        }
        Golden::Char2 => {
            r.field = "fp:2".into();
            r.vars = 2;
            let g = golden_char2()?;
            r.set("poly", report::poly(&g.poly));
            r.set("hilbert", g.hilbert.clone());
            r.set("square_in_perp", g.square_in_perp);
            r.set("tangent_dim", g.tangent_dim);
            r.set("ambient_dim", g.ambient_dim);
            r.set("orbit_dimension_refused", g.orbit_dimension_refused);
            r.set("x2_in_tangent", g.x2_in_tangent);
            compare_golden(r, GOLDEN_CHAR2)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&r.to_json()).expect("report serialises"));
            } else {
                print!("{}", r.to_text());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            if cli.json {
                println!("{}", json!({"error": e.to_string(), "exit_code": exit_code(&e)}));
            }
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
