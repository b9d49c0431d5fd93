use std::sync::Arc;

use thetacalc_core::mukai::{MukaiVector, NSClass, NSLattice};
use thetacalc_core::Error;

use crate::error::{CliError, CliResult};

pub mod duality;
pub mod elliptic;
pub mod mukai;
pub mod verlinde;

pub(crate) fn non_negative<T: TryFrom<i64>>(name: &str, x: i64) -> CliResult<T> {
    T::try_from(x).map_err(|_| CliError::Core(Error::Range(format!("{name} out of range: {x}"))))
}

fn parse_ints(text: &str) -> CliResult<Vec<i64>> {
    text.split(',')
        .map(|t| {
            t.trim().parse::<i64>().map_err(|_| {
                CliError::Input(format!(
                    "expected an integer, got {:?} in {text:?}",
                    t.trim()
                ))
            })
        })
        .collect()
}

/// `v0,c1_1,..,c1_n,v4` over `lattice`.
pub(crate) fn parse_vector(text: &str, lattice: &Arc<NSLattice>) -> CliResult<MukaiVector> {
    let xs = parse_ints(text)?;
    if xs.len() != lattice.rank() + 2 {
        return Err(Error::DimensionMismatch {
            expected: lattice.rank() + 2,
            found: xs.len(),
        }
        .into());
    }
    let (r, rest) = xs.split_first().expect("non-empty");
    let (p, c1) = rest.split_last().expect("non-empty");
    Ok(MukaiVector::from_coords(lattice, *r, c1, *p)?)
}

pub(crate) fn parse_class(text: &str, lattice: &Arc<NSLattice>) -> CliResult<NSClass> {
    Ok(NSClass::new(lattice.clone(), parse_ints(text)?)?)
}

pub(crate) fn vector_value(v: &MukaiVector) -> serde_json::Value {
    let mut xs = vec![v.rank];
    xs.extend_from_slice(v.c1.coords());
    xs.push(v.point);
    crate::output::ints(xs)
}
