//! Complex numbers serialize as `[re, im]` pairs.

use serde::ser::SerializeSeq;
use serde::Serializer;

use crate::C64;

pub fn serialize<S: Serializer>(c: &C64, s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(2))?;
    seq.serialize_element(&c.re)?;
    seq.serialize_element(&c.im)?;
    seq.end()
}

pub mod opt {
    use super::*;

    pub fn serialize<S: Serializer>(c: &Option<C64>, s: S) -> Result<S::Ok, S::Error> {
        match c {
            Some(c) => super::serialize(c, s),
            None => s.serialize_none(),
        }
    }
}
