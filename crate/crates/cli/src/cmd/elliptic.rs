use serde_json::{Map, Value};
use thetacalc_core::elliptic_k3::{
    chi_pair, compute_nu, normalize_vector, strange_duality_dims, theta_bundle_class,
};
use thetacalc_core::mukai::NSClass;

use crate::config::CliConfig;
use crate::error::CliResult;
use crate::output::{int, Report};
use crate::{EllipticOp, Quad};

fn divisor(c: &NSClass) -> Value {
    let mut m = Map::new();
    m.insert("sigma".into(), int(c.coords()[0]));
    m.insert("f".into(), int(c.coords()[1]));
    Value::Object(m)
}

fn quad(rep: &mut Report, q: &Quad) {
    rep.input("r", q.r)
        .input("s", q.s)
        .input("a", q.a)
        .input("b", q.b);
}

pub fn run(op: &EllipticOp, _cfg: &CliConfig) -> CliResult<Report> {
    match op {
        EllipticOp::Normalize { r, k, p } => {
            let mut rep = Report::new(
                "elliptic normalize",
                "normalization v_{r,a} = (r, sigma + (a - r(r-1)) f, (1-r) omega) by O(f) twists",
            );
            rep.input("r", *r).input("k", *k).input("p", *p);
            let (nv, twists) = normalize_vector(*r, *k, *p)?;
            rep.field("a", int(nv.a))
                .field("twists", int(twists))
                .field("rank", int(nv.vector.rank))
                .field("c1", divisor(&nv.vector.c1))
                .field("point", int(nv.vector.point))
                .field("self_pairing", int(nv.vector.self_pairing()));
            Ok(rep)
        }
        EllipticOp::Nu(q) => {
            let mut rep = Report::new(
                "elliptic nu",
                "nu = (r+s-2) - (a+b-2)/(r+s), the fiber twist with chi(E_r (x) F_s (x) O(nu f)) = 0",
            );
            quad(&mut rep, q);
            let info = compute_nu(q.r, q.s, q.a, q.b)?;
            rep.field("nu", int(info.nu))
                .field("divisible", info.divisible)
                .field("nu_strong", info.nu_strong)
                .field("chi_pair", int(chi_pair(q.r, q.s, q.a, q.b)));
            Ok(rep)
        }
        EllipticOp::ThetaClass(q) => {
            let mut rep = Report::new(
                "elliptic theta-class",
                "theta class L^[a] on X^[a] with L = (r+s) sigma + (2(r+s) - 2 - nu) f",
            );
            quad(&mut rep, q);
            let t = theta_bundle_class(q.r, q.s, q.a, q.b)?;
            rep.field("nu", int(t.nu))
                .field("L", divisor(&t.l))
                .field("m_exponent", int(t.m_exponent))
                .field("hilb_side", int(t.hilb_side))
                .field("chi_L", int(t.chi_l));
            Ok(rep)
        }
        EllipticOp::Dims(q) => {
            let mut rep = Report::new(
                "elliptic dims",
                "h^0(X^[a], L^[a]) = C(chi(L), a) and h^0(X^[b], L^[b]) = C(chi(L), b) with chi(L) = a + b",
            );
            quad(&mut rep, q);
            let d = strange_duality_dims(q.r, q.s, q.a, q.b)?;
            rep.field("nu", int(d.nu))
                .field("chi_L", int(d.chi_l))
                .field("dim_a", int(&d.dim_a))
                .field("dim_b", int(&d.dim_b))
                .field("equal", d.equal)
                .field("corollary_applies", d.corollary_applies);
            Ok(rep)
        }
    }
}
