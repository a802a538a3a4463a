//! Serde helpers for the report types: arbitrary-precision counts are
//! emitted as decimal strings.

use num_bigint::BigUint;
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::Serializer;
use std::collections::BTreeMap;

pub(crate) fn weights_as_rows<S: Serializer>(
    map: &BTreeMap<u64, BigUint>,
    ser: S,
) -> Result<S::Ok, S::Error> {
    let mut seq = ser.serialize_seq(Some(map.len()))?;
    for (w, freq) in map {
        seq.serialize_element(&Row {
            key: "w",
            label: *w as i64,
            freq: freq.to_string(),
        })?;
    }
    seq.end()
}

pub(crate) fn svalues_as_rows<S: Serializer>(
    map: &BTreeMap<i64, BigUint>,
    ser: S,
) -> Result<S::Ok, S::Error> {
    let mut seq = ser.serialize_seq(Some(map.len()))?;
    for (s, freq) in map {
        seq.serialize_element(&Row {
            key: "s",
            label: *s,
            freq: freq.to_string(),
        })?;
    }
    seq.end()
}

struct Row {
    key: &'static str,
    label: i64,
    freq: String,
}

impl serde::Serialize for Row {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("Row", 2)?;
        st.serialize_field(self.key, &self.label)?;
        st.serialize_field("freq", &self.freq)?;
        st.end()
    }
}
