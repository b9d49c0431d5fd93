use num_bigint::BigInt;
use thetacalc_core::verlinde::{Verlinde, VerlindeQuery};
use thetacalc_core::Error;

use super::non_negative;
use crate::config::CliConfig;
use crate::error::CliResult;
use crate::output::{int, Report};
use crate::VerlindeArgs;

const REF: &str = "Verlinde formula as a sum over k-subsets of products of 2 sin(pi |s-t|/(r+k))";

pub fn run(a: &VerlindeArgs, cfg: &CliConfig) -> CliResult<Report> {
    let q = VerlindeQuery::new(
        non_negative("r", a.r)?,
        non_negative("k", a.k)?,
        non_negative("g", a.g)?,
    )?;
    let ev = Verlinde::with_budget(cfg.term_budget);
    let mut rep = Report::new("verlinde", REF);
    rep.input("r", a.r).input("k", a.k).input("g", a.g);
    if a.float_oracle {
        rep.input("precision", cfg.precision);
    }
    // echo of the query at top level, as in `{"r":2,"k":1,"g":2,"value":"4"}`
    rep.field("r", a.r).field("k", a.k).field("g", a.g);

    let value = ev.number(&q)?;
    rep.field("value", int(&value));
    if a.modified {
        rep.field("modified", int(ev.modified(&q)?));
    }
    if a.check_symmetry {
        let report = ev.check_rank_level_symmetry(&q)?;
        let mut sym = serde_json::Map::new();
        sym.insert("partner".into(), int(&report.partner));
        sym.insert(
            "value_times_k_pow_g".into(),
            int(&report.value * BigInt::from(q.level).pow(q.genus)),
        );
        sym.insert(
            "partner_times_r_pow_g".into(),
            int(&report.partner * BigInt::from(q.rank).pow(q.genus)),
        );
        sym.insert("modified".into(), int(&report.modified));
        sym.insert("modified_partner".into(), int(report.modified_partner()?));
        sym.insert("holds".into(), report.symmetry_holds.into());
        rep.field("symmetry", serde_json::Value::Object(sym));
        if !report.symmetry_holds {
            return Err(Error::IdentityFailed(format!(
                "v_{{{},{}}} k^g != v_{{{},{}}} r^g in genus {}",
                q.rank, q.level, q.level, q.rank, q.genus
            ))
            .into());
        }
    }
    if a.float_oracle {
        let approx = ev.float_oracle_fixed(&q, cfg.precision)?;
        let approx_f: f64 = approx.parse().unwrap_or(f64::NAN);
        let exact_f: f64 = value.to_string().parse().unwrap_or(f64::NAN);
        let rel = if exact_f == 0.0 {
            approx_f.abs()
        } else {
            ((approx_f - exact_f) / exact_f).abs()
        };
        let mut fo = serde_json::Map::new();
        fo.insert("value".into(), approx.into());
        fo.insert("relative_error".into(), format!("{rel:.3e}").into());
        rep.field("float_oracle", serde_json::Value::Object(fo));
    }
    Ok(rep)
}
