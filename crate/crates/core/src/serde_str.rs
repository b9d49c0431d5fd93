//! Big integers serialize as decimal strings so JSON consumers never round them.

use num_bigint::BigInt;
use serde::Serializer;

pub fn serialize<S: Serializer>(value: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(value)
}
