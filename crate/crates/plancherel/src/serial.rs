//! Serialization helpers: complex numbers as `[re, im]`.

use num_complex::Complex64;
use reps::Side;
use serde::Serializer;

use crate::PlancherelError;

pub fn complex<S: Serializer>(v: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&[v.re, v.im], s)
}

pub fn complex_rows<S: Serializer>(rows: &[Vec<Complex64>], s: S) -> Result<S::Ok, S::Error> {
    let pairs: Vec<Vec<[f64; 2]>> = rows
        .iter()
        .map(|r| r.iter().map(|v| [v.re, v.im]).collect())
        .collect();
    serde::Serialize::serialize(&pairs, s)
}

pub fn side_name<S: Serializer>(side: &Side, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(if *side == Side::Left { "L" } else { "R" })
}

pub fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String, PlancherelError> {
    let bytes = w
        .into_inner()
        .map_err(|e| PlancherelError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| PlancherelError::Output(e.to_string()))
}
