//! Command-line front end. `run` does all the work so tests can drive the
//! tool without spawning processes.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use polegerm::cones::{check_properly_positioned, common_refinement, Positioning, SimplicialCone};
use polegerm::exact::{parse_rational, to_f64_vec, RationalVector};
use polegerm::exprio::format::{
    expansion_to_json, family_to_json, germ_sum_to_json, meromorphic_to_json, poly_json, read_cone_family, read_gram,
    read_rows, report, truncated_to_json, vector_json, write_cone_family,
};
use polegerm::exprio::{max_variable_index, parse_expr, to_germ, SessionConfig};
use polegerm::germs::{decompose, germ_equal, MeromorphicGerm};
use polegerm::lattice::{default_point, exp_integral, exp_sum, numeric_oracle, p_res_exp_sum, LatticeCone};
use polegerm::laurent::laurent_expand;
use polegerm::residues::{
    brion_vergne_split, coproduct, graded_split, jk_residue, p_order, p_res, pi_minus, pi_plus, Arrangement,
};
use polegerm::{Error, Result};

/// Tolerance reported with the numeric oracle.
pub const ORACLE_TOLERANCE: f64 = 1e-6;
/// Summation height of the numeric oracle.
pub const ORACLE_HEIGHT: u32 = 40;

#[derive(Parser, Debug)]
#[command(name = "polegerm", version, about = "Exact Laurent expansions of germs with linear poles")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Ambient dimension k; inferred from the inputs when omitted.
    #[arg(long, global = true)]
    pub dim: Option<usize>,
    /// File holding the k×k Gram matrix of the inner product.
    #[arg(long, global = true)]
    pub gram: Option<PathBuf>,
    /// Seed recorded in the session (all commands are deterministic).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Truncation order for exponential sums.
    #[arg(long, global = true, default_value_t = polegerm::exprio::config::DEFAULT_TRUNCATION)]
    pub trunc: usize,
    /// Largest ambient dimension accepted.
    #[arg(long, global = true, default_value_t = polegerm::exact::space::DEFAULT_DIMENSION_CAP)]
    pub cap: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Polar decomposition into a sum of polar germs and a polynomial.
    Decompose { expr: String },
    /// Laurent expansion, on the default support or on a given cone family.
    Laurent {
        expr: String,
        #[arg(long)]
        support: Option<PathBuf>,
    },
    /// Holomorphic projection π₊.
    ProjectPlus { expr: String },
    /// Polar projection π₋.
    ProjectMinus { expr: String },
    /// Components graded by supporting subspace and p-order.
    Grade { expr: String },
    /// Generalised Jeffrey–Kirwan residue with respect to a subspace.
    Jk {
        expr: String,
        /// Basis of the subspace, one vector per line.
        #[arg(long)]
        subspace: Option<PathBuf>,
    },
    /// Split into the part generated by an arrangement and the rest.
    BrionVergne {
        expr: String,
        /// Forms of the arrangement, one per line.
        #[arg(long)]
        arrangement: PathBuf,
    },
    /// Largest p-order of the Laurent terms.
    POrder { expr: String },
    /// p-residue.
    PRes { expr: String },
    /// The coproduct Σ h ⊗ 1/L^s.
    Coproduct { expr: String },
    /// Cone family operations.
    Cone {
        #[command(subcommand)]
        action: ConeAction,
    },
    /// Exponential sum over a lattice cone, its p-residue and the integral.
    ExpSum {
        /// Generators of the cone, one per line.
        #[arg(long)]
        cone: PathBuf,
        /// Basis of the lattice, one vector per line.
        #[arg(long)]
        lattice: PathBuf,
        /// Evaluation point for the numeric check, e.g. "-1 -1/2".
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Decide whether two expressions define the same germ.
    Verify { left: String, right: String },
}

#[derive(Subcommand, Debug)]
pub enum ConeAction {
    /// Properly positioned common refinement.
    Refine { file: PathBuf },
    /// Properly positioned verdict with a witness pair on failure.
    Check { file: PathBuf },
}

/// Exit code plus what would go to stdout and stderr.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok(v) => Outcome { code: 0, stdout: format!("{}\n", v), stderr: String::new() },
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {}\n", e) },
    }
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::format(path.display().to_string(), e.to_string()))
}

fn source(path: &Path) -> String {
    path.display().to_string()
}

/// Dimension from --dim, the Gram file, the data files, or the expressions.
fn session(g: &GlobalOpts, hint: Option<usize>, exprs: &[&str]) -> Result<SessionConfig> {
    let gram = match &g.gram {
        Some(p) => Some(read_gram(&read_file(p)?, &source(p))?),
        None => None,
    };
    let inferred = gram
        .as_ref()
        .map(|m| m.rows())
        .or(hint)
        .unwrap_or_else(|| exprs.iter().map(|e| max_variable_index(e)).max().unwrap_or(0).max(1));
    let dim = g.dim.unwrap_or(inferred);
    Ok(SessionConfig { dim, gram, trunc: g.trunc, cap: g.cap, seed: g.seed })
}

fn germ(text: &str, k: usize) -> Result<MeromorphicGerm> {
    to_germ(&parse_expr(text, k)?, k)
}

fn rows_dim(path: &Path) -> Result<usize> {
    Ok(read_rows(&read_file(path)?, &source(path), None)?.first().map_or(0, RationalVector::dim))
}

fn execute(cli: &Cli) -> Result<Value> {
    let g = &cli.global;
    match &cli.command {
        Command::Decompose { expr } => {
            let cfg = session(g, None, &[expr])?;
            let space = cfg.space()?;
            let f = germ(expr, cfg.dim)?;
            let d = decompose(&space, &f)?;
            Ok(report(vec![
                ("command", json!("decompose")),
                ("input", meromorphic_to_json(&f)),
                ("result", germ_sum_to_json(&d)),
                ("text", json!(d.to_string())),
            ]))
        }
        Command::Laurent { expr, support } => {
            let hint = support.as_deref().map(rows_dim).transpose()?;
            let cfg = session(g, hint, &[expr])?;
            let space = cfg.space()?;
            let f = germ(expr, cfg.dim)?;
            let fam = match support {
                Some(p) => Some(read_cone_family(&read_file(p)?, &source(p), Some(cfg.dim))?),
                None => None,
            };
            let x = laurent_expand(&space, &f, fam.as_deref())?;
            Ok(report(vec![
                ("command", json!("laurent")),
                ("support", family_to_json(&x.support())),
                ("result", expansion_to_json(&x)),
                ("text", json!(x.to_string())),
            ]))
        }
        Command::ProjectPlus { expr } => {
            let cfg = session(g, None, &[expr])?;
            let p = pi_plus(&cfg.space()?, &germ(expr, cfg.dim)?)?;
            Ok(report(vec![("command", json!("project-plus")), ("result", poly_json(&p)), ("text", json!(p.to_string()))]))
        }
        Command::ProjectMinus { expr } => {
            let cfg = session(g, None, &[expr])?;
            let m = pi_minus(&cfg.space()?, &germ(expr, cfg.dim)?)?;
            Ok(report(vec![
                ("command", json!("project-minus")),
                ("result", germ_sum_to_json(&m)),
                ("text", json!(m.to_string())),
            ]))
        }
        Command::Grade { expr } => {
            let cfg = session(g, None, &[expr])?;
            let split = graded_split(&cfg.space()?, &germ(expr, cfg.dim)?)?;
            let comps: Vec<Value> = split
                .iter()
                .map(|(key, part)| {
                    json!({
                        "span": key.support_span.iter().map(vector_json).collect::<Vec<_>>(),
                        "p_order": key.p_order,
                        "component": germ_sum_to_json(part),
                        "text": part.to_string(),
                    })
                })
                .collect();
            Ok(report(vec![("command", json!("grade")), ("components", Value::Array(comps))]))
        }
        Command::Jk { expr, subspace } => {
            let hint = subspace.as_deref().map(rows_dim).transpose()?;
            let cfg = session(g, hint, &[expr])?;
            let u = match subspace {
                Some(p) => Some(read_rows(&read_file(p)?, &source(p), Some(cfg.dim))?),
                None => None,
            };
            let r = jk_residue(&cfg.space()?, &germ(expr, cfg.dim)?, u.as_deref())?;
            Ok(report(vec![("command", json!("jk")), ("result", germ_sum_to_json(&r)), ("text", json!(r.to_string()))]))
        }
        Command::BrionVergne { expr, arrangement } => {
            let cfg = session(g, Some(rows_dim(arrangement)?), &[expr])?;
            let forms = read_rows(&read_file(arrangement)?, &source(arrangement), Some(cfg.dim))?;
            let arr = Arrangement::new(forms)?;
            let (gp, ngp) = brion_vergne_split(&cfg.space()?, &germ(expr, cfg.dim)?, &arr)?;
            Ok(report(vec![
                ("command", json!("brion-vergne")),
                ("generated", germ_sum_to_json(&gp)),
                ("not_generated", germ_sum_to_json(&ngp)),
                ("text", json!(format!("G: {} ; NG: {}", gp, ngp))),
            ]))
        }
        Command::POrder { expr } => {
            let cfg = session(g, None, &[expr])?;
            let p = p_order(&cfg.space()?, &germ(expr, cfg.dim)?)?;
            Ok(report(vec![("command", json!("p-order")), ("result", json!(p))]))
        }
        Command::PRes { expr } => {
            let cfg = session(g, None, &[expr])?;
            let r = p_res(&cfg.space()?, &germ(expr, cfg.dim)?)?;
            Ok(report(vec![("command", json!("p-res")), ("result", germ_sum_to_json(&r)), ("text", json!(r.to_string()))]))
        }
        Command::Coproduct { expr } => {
            let cfg = session(g, None, &[expr])?;
            let terms = coproduct(&cfg.space()?, &germ(expr, cfg.dim)?)?;
            let items: Vec<Value> = terms
                .iter()
                .map(|t| {
                    let right = match &t.right {
                        None => Value::Null,
                        Some(c) => {
                            json!(c.factors().iter().map(|(v, s)| json!({"gen": vector_json(v), "exp": s})).collect::<Vec<_>>())
                        }
                    };
                    json!({"left": poly_json(&t.left), "right": right, "text": t.to_string()})
                })
                .collect();
            Ok(report(vec![("command", json!("coproduct")), ("terms", Value::Array(items))]))
        }
        Command::Cone { action } => match action {
            ConeAction::Refine { file } => {
                let (cfg, fam) = load_family(g, file)?;
                let r = common_refinement(&cfg.space()?, &fam)?;
                let cones: Vec<SimplicialCone> = r.family.iter().cloned().collect();
                Ok(report(vec![
                    ("command", json!("cone refine")),
                    ("family", family_to_json(&cones)),
                    ("index_sets", json!(r.index_sets)),
                    ("text", json!(write_cone_family(&cones))),
                ]))
            }
            ConeAction::Check { file } => {
                let (cfg, fam) = load_family(g, file)?;
                let verdict = check_properly_positioned(&cfg.space()?, &fam)?;
                let witness = match verdict {
                    Positioning::Proper => Value::Null,
                    Positioning::NotAlongFace(i, j) | Positioning::ContainsLine(i, j) => json!({
                        "indices": [i, j],
                        "cones": family_to_json(&[fam[i].clone(), fam[j].clone()])["cones"].clone(),
                    }),
                };
                Ok(report(vec![
                    ("command", json!("cone check")),
                    ("properly_positioned", json!(verdict == Positioning::Proper)),
                    ("counterexample", witness),
                    ("text", json!(verdict.to_string())),
                ]))
            }
        },
        Command::ExpSum { cone, lattice, point } => exp_sum_report(g, cone, lattice, point.as_deref()),
        Command::Verify { left, right } => {
            let cfg = session(g, None, &[left, right])?;
            cfg.space()?;
            let (a, b) = (germ(left, cfg.dim)?, germ(right, cfg.dim)?);
            let eq = germ_equal(&a, &b);
            Ok(report(vec![
                ("command", json!("verify")),
                ("equal", json!(eq)),
                ("text", json!(if eq { "equal" } else { "not equal" })),
            ]))
        }
    }
}

fn load_family(g: &GlobalOpts, file: &Path) -> Result<(SessionConfig, Vec<SimplicialCone>)> {
    let text = read_file(file)?;
    let fam = read_cone_family(&text, &source(file), g.dim)?;
    let hint = fam.first().map(SimplicialCone::ambient_dim);
    Ok((session(g, hint, &[])?, fam))
}

fn parse_point(text: &str, k: usize) -> Result<Vec<f64>> {
    let entries: Vec<&str> = text.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).collect();
    let qs = entries
        .iter()
        .map(|t| parse_rational(t).ok_or_else(|| Error::format("--point", format!("bad rational '{}'", t))))
        .collect::<Result<Vec<_>>>()?;
    if qs.len() != k {
        return Err(Error::format("--point", format!("expected {} coordinates, found {}", k, qs.len())));
    }
    Ok(to_f64_vec(&qs))
}

fn exp_sum_report(g: &GlobalOpts, cone: &Path, lattice: &Path, point: Option<&str>) -> Result<Value> {
    let gens = read_rows(&read_file(cone)?, &source(cone), g.dim)?;
    let hint = gens.first().map(RationalVector::dim);
    let cfg = session(g, hint, &[])?;
    let space = cfg.space()?;
    let basis = read_rows(&read_file(lattice)?, &source(lattice), Some(cfg.dim))?;
    let lc = LatticeCone::from_generators(&gens, basis)?;
    let t = exp_sum(&space, &lc, cfg.trunc)?;
    let pres = p_res_exp_sum(&space, &lc, None)?;
    let integral = exp_integral(&space, &lc)?;
    let pt = match point {
        Some(p) => parse_point(p, cfg.dim)?,
        None => to_f64_vec(default_point(&lc)?.coords()),
    };
    let oracle = numeric_oracle(&space, &lc, &pt, cfg.trunc, ORACLE_HEIGHT)?;
    Ok(report(vec![
        ("command", json!("exp-sum")),
        ("generators", json!(lc.lattice_generators().iter().map(vector_json).collect::<Vec<_>>())),
        ("smooth", json!(lc.is_smooth())),
        ("truncated", truncated_to_json(&t)),
        ("p_order", json!(t.p_order(&space)?)),
        ("p_res", germ_sum_to_json(&pres)),
        ("exp_integral", germ_sum_to_json(&integral)),
        ("p_res_equals_integral", json!(germ_equal(&pres, &integral))),
        (
            "oracle",
            json!({
                "point": oracle.point,
                "series": oracle.series,
                "direct": oracle.direct,
                "residual": oracle.residual,
                "height": ORACLE_HEIGHT,
                "tolerance": ORACLE_TOLERANCE,
                "within_tolerance": oracle.residual <= ORACLE_TOLERANCE,
            }),
        ),
        ("text", json!(t.to_string())),
    ]))
}
