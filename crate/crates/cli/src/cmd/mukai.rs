use serde_json::{Map, Value};
use thetacalc_core::mukai::{
    c1_tensor, check_conjecture, chi_abelian, chi_k3, chi_tensor, dv, fm_transform, mukai_pairing,
    AbelianVariant,
};

use super::{parse_class, parse_vector, vector_value};
use crate::config::CliConfig;
use crate::error::{CliError, CliResult};
use crate::output::{int, Report};
use crate::{MukaiOp, VectorPair};

pub fn run(op: &MukaiOp, cfg: &CliConfig) -> CliResult<Report> {
    let lattice = cfg.lattice()?;
    let pair = |p: &VectorPair, rep: &mut Report| -> CliResult<_> {
        rep.input("v", p.v.as_str())
            .input("w", p.w.as_str())
            .input("lattice", lattice.name());
        Ok((parse_vector(&p.v, &lattice)?, parse_vector(&p.w, &lattice)?))
    };
    match op {
        MukaiOp::Pair(p) => {
            let mut rep = Report::new(
                "mukai pair",
                "Mukai pairing <v,w> = c1.c1' - v0 w4 - v4 w0 with chi(v (x) w) = -<v,w>",
            );
            let (v, w) = pair(p, &mut rep)?;
            rep.field("pairing", int(mukai_pairing(&v, &w)?))
                .field("chi_tensor", int(chi_tensor(&v, &w)?))
                .field("v_squared", int(v.self_pairing()))
                .field("w_squared", int(w.self_pairing()));
            Ok(rep)
        }
        MukaiOp::ChiK3(p) => {
            let mut rep = Report::new(
                "mukai chi-k3",
                "chi(M_v, Theta_w) = C(d_v + d_w, d_v) on a K3 surface",
            );
            let (v, w) = pair(p, &mut rep)?;
            rep.field("d_v", int(dv(&v)?))
                .field("d_w", int(dv(&w)?))
                .field("value", int(chi_k3(&v, &w)?));
            Ok(rep)
        }
        MukaiOp::ChiAbelian { pair: p, variant } => {
            let which = AbelianVariant::parse(variant).ok_or_else(|| {
                CliError::Input(format!(
                    "unknown variant {variant:?}; expected s2, s3 or s4"
                ))
            })?;
            let paper_ref = match which {
                AbelianVariant::AlbanesePlus => {
                    "chi(K_v, Theta_w) = c1(v (x) w)^2 / (2n) C(n, d_v - 1), n = d_v + d_w - 2"
                }
                AbelianVariant::AlbaneseMinus => {
                    "chi(K_v, Theta_w) = c1(v^ (x) w^)^2 / (2n) C(n, d_v - 1) on Fourier-Mukai transforms"
                }
                AbelianVariant::Kummer => {
                    "chi(K_v, Theta_w) = (d_v - 1)^2 / n C(n, d_v - 1) on generalized Kummer fibers"
                }
            };
            let mut rep = Report::new("mukai chi-abelian", paper_ref);
            let (v, w) = pair(p, &mut rep)?;
            rep.input("variant", variant.as_str());
            let value = chi_abelian(&v, &w, which)?;
            rep.field("d_v", int(dv(&v)?)).field("d_w", int(dv(&w)?));
            let c1 = match which {
                AbelianVariant::AlbaneseMinus => {
                    c1_tensor(&fm_transform(&v)?, &fm_transform(&w)?)?.square()
                }
                _ => c1_tensor(&v, &w)?.square(),
            };
            if which != AbelianVariant::Kummer {
                rep.field("c1_tensor_squared", int(c1));
            }
            rep.field("value", int(value));
            Ok(rep)
        }
        MukaiOp::Fm { v } => {
            let mut rep = Report::new(
                "mukai fm",
                "cohomological Fourier-Mukai transform (v0, c1, v4) -> (v4, -c1, v0)",
            );
            rep.input("v", v.as_str()).input("lattice", lattice.name());
            let vec = parse_vector(v, &lattice)?;
            let hat = fm_transform(&vec)?;
            rep.field("transform", vector_value(&hat)).field(
                "pairing_preserved",
                Value::Bool(hat.self_pairing() == vec.self_pairing()),
            );
            Ok(rep)
        }
        MukaiOp::Conjecture {
            pair: p,
            h,
            effective_v,
            effective_w,
        } => {
            let mut rep = Report::new(
                "mukai conjecture",
                "hypotheses of the theta-duality conjecture: orthogonal, primitive, positive, c1(v (x) w).H > 0",
            );
            let (v, w) = pair(p, &mut rep)?;
            rep.input("H", h.as_str())
                .input("effective_v", *effective_v)
                .input("effective_w", *effective_w);
            let pol = parse_class(h, &lattice)?;
            let verdict = check_conjecture(&v, &w, &pol, *effective_v, *effective_w)?;
            let mut m = Map::new();
            for (k, b) in [
                ("orthogonal", verdict.orthogonal),
                ("v_primitive", verdict.v_primitive),
                ("w_primitive", verdict.w_primitive),
                ("v_positive", verdict.v_positive),
                ("w_positive", verdict.w_positive),
                ("slope_condition", verdict.slope_condition),
                ("c1_proportional", verdict.c1_proportional),
            ] {
                m.insert(k.into(), b.into());
            }
            rep.field("pairing", int(mukai_pairing(&v, &w)?))
                .field("checks", Value::Object(m))
                .field("applicable", verdict.applicable);
            Ok(rep)
        }
    }
}
