use std::path::Path;
use std::str::FromStr;

use num_rational::BigRational;
use serde::Deserialize;
use serde_json::{json, Value};
use thetacalc_core::combinatorics::binomial_u128;
use thetacalc_core::power_duality::{
    sym_duality_matrix, theta_evaluate, wedge_duality_matrix, Point, SectionModel,
};
use thetacalc_core::Error;

use super::non_negative;
use crate::config::CliConfig;
use crate::error::{CliError, CliResult};
use crate::output::{int, ints, Report};
use crate::DualityOp;

pub fn run(op: &DualityOp, cfg: &CliConfig) -> CliResult<Report> {
    match op {
        DualityOp::Wedge { n, k, export } => wedge(*n, *k, export.as_deref(), cfg),
        DualityOp::Sym { wdim, n } => sym(*wdim, *n, cfg),
        DualityOp::ThetaVanishes { points } => theta(points),
    }
}

fn check_dim(dim: u128, cfg: &CliConfig) -> CliResult<()> {
    if dim > cfg.term_budget as u128 {
        return Err(Error::TermBudget {
            terms: dim.to_string(),
            budget: cfg.term_budget,
        }
        .into());
    }
    Ok(())
}

fn wedge(n: i64, k: i64, export: Option<&Path>, cfg: &CliConfig) -> CliResult<Report> {
    let mut rep = Report::new(
        "duality wedge",
        "wedge pairing Lambda^k V (x) Lambda^(n-k) V -> Lambda^n V in colex subset bases",
    );
    rep.input("n", n).input("k", k);
    if let Some(p) = export {
        rep.input("export", p.display().to_string());
    }
    let (nu, ku): (usize, usize) = (non_negative("n", n)?, non_negative("k", k)?);
    if ku <= nu {
        check_dim(binomial_u128(nu as u64, ku as u64), cfg)?;
    }
    let m = wedge_duality_matrix(nu, ku)?;
    let dual = wedge_duality_matrix(nu, nu - ku)?;
    let sign: i8 = if (ku * (nu - ku)) % 2 == 0 { 1 } else { -1 };
    let transpose_law = m
        .triplets()
        .iter()
        .all(|&(r, c, s)| dual.entry(c, r) == sign * s);
    let triplets: Vec<Value> = m
        .triplets()
        .iter()
        .map(|&(r, c, s)| json!([r.to_string(), c.to_string(), s.to_string()]))
        .collect();
    rep.field("dim", int(m.dim()))
        .field("nonzero", int(triplets.len()))
        .field("signed_permutation", m.is_signed_permutation())
        .field("determinant", int(m.determinant()))
        .field("transpose_sign", int(sign))
        .field("transpose_law_holds", transpose_law);
    match export {
        Some(path) => {
            let doc = json!({
                "n": nu,
                "k": ku,
                "index_order": "colex",
                "entries": triplets,
            });
            let mut text = serde_json::to_string_pretty(&doc)
                .map_err(|e| CliError::Input(format!("json: {e}")))?;
            text.push('\n');
            std::fs::write(path, text)
                .map_err(|e| CliError::Input(format!("export {}: {e}", path.display())))?;
        }
        None => {
            rep.field("index_order", "colex").field("entries", triplets);
        }
    }
    Ok(rep)
}

fn sym(wdim: i64, n: i64, cfg: &CliConfig) -> CliResult<Report> {
    let mut rep = Report::new(
        "duality sym",
        "pairing Sym^n W (x) Sym^n W^dual -> Q, diagonal in monomial bases with multinomial entries",
    );
    rep.input("wdim", wdim).input("n", n);
    let (wu, nu): (usize, u32) = (non_negative("wdim", wdim)?, non_negative("n", n)?);
    if wu >= 1 {
        check_dim(binomial_u128((wu as u64) + nu as u64 - 1, nu as u64), cfg)?;
    }
    let p = sym_duality_matrix(wu, nu)?;
    rep.field("dim", int(p.dim()))
        .field("basis_order", "lex-descending exponent vectors")
        .field("basis", Value::Array(p.basis.iter().map(ints).collect()))
        .field("diagonal", ints(&p.diagonal));
    Ok(rep)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RatInput {
    Int(i64),
    Text(String),
}

impl RatInput {
    fn to_rational(&self) -> CliResult<BigRational> {
        match self {
            RatInput::Int(x) => Ok(BigRational::from_integer((*x).into())),
            RatInput::Text(s) => BigRational::from_str(s.trim())
                .map_err(|_| CliError::Input(format!("not a rational number: {s:?}"))),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PointsFile {
    model: Vec<[u32; 2]>,
    #[serde(rename = "Z")]
    z: Vec<[RatInput; 2]>,
    #[serde(rename = "W")]
    w: Vec<[RatInput; 2]>,
}

fn points(raw: &[[RatInput; 2]]) -> CliResult<Vec<Point>> {
    raw.iter()
        .map(|[x, y]| Ok((x.to_rational()?, y.to_rational()?)))
        .collect()
}

fn theta(path: &Path) -> CliResult<Report> {
    let mut rep = Report::new(
        "duality theta-vanishes",
        "theta divisor: det of evaluation at Z u W equals the wedge pairing of ev_Z and ev_W up to sign",
    );
    rep.input("points", path.display().to_string());
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("points {}: {e}", path.display())))?;
    let file: PointsFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("points {}: {e}", path.display())))?;
    let model = SectionModel(file.model.iter().map(|[a, b]| (*a, *b)).collect());
    let (z, w) = (points(&file.z)?, points(&file.w)?);
    let eval = theta_evaluate(&z, &w, &model)?;
    rep.field("n", int(model.dim()))
        .field("k", int(z.len()))
        .field("vanishes", eval.vanishes)
        .field("determinant", eval.determinant.to_string())
        .field("pairing", eval.pairing.to_string());
    Ok(rep)
}
