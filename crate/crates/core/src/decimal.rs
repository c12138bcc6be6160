//! Serializes big integers as decimal strings.

use num_bigint::BigUint;
use serde::ser::{SerializeSeq, Serializer};

pub fn serialize<S: Serializer>(value: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(value)
}

pub fn serialize_seq<S: Serializer>(values: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(values.len()))?;
    for v in values {
        seq.serialize_element(&v.to_str_radix(10))?;
    }
    seq.end()
}
