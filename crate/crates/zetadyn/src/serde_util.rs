//! serde adapters: complex numbers as [re, im] pairs.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub fn ser_complex<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(2))?;
    seq.serialize_element(&z.re)?;
    seq.serialize_element(&z.im)?;
    seq.end()
}

pub fn de_complex<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
    let v: [f64; 2] = Deserialize::deserialize(d)?;
    if !v[0].is_finite() || !v[1].is_finite() {
        return Err(D::Error::custom("complex components must be finite"));
    }
    Ok(Complex64::new(v[0], v[1]))
}

pub fn ser_complex_opt<S: Serializer>(z: &Option<Complex64>, s: S) -> Result<S::Ok, S::Error> {
    match z {
        Some(v) => ser_complex(v, s),
        None => s.serialize_none(),
    }
}

/// `#[serde(with = "complex")]` for a Complex64 field.
pub mod complex {
    pub use super::de_complex as deserialize;
    pub use super::ser_complex as serialize;
}

/// `#[serde(with = "complex_vec")]` for Vec<Complex64>.
pub mod complex_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = v.iter().map(|z| [z.re, z.im]).collect();
        pairs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        let pairs: Vec<[f64; 2]> = Deserialize::deserialize(d)?;
        pairs
            .into_iter()
            .map(|p| {
                if p[0].is_finite() && p[1].is_finite() {
                    Ok(Complex64::new(p[0], p[1]))
                } else {
                    Err(D::Error::custom("complex components must be finite"))
                }
            })
            .collect()
    }
}

/// `#[serde(with = "root_vec")]` for Vec<(Complex64, u32)> (location, order).
pub mod root_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[(Complex64, u32)], s: S) -> Result<S::Ok, S::Error> {
        let triples: Vec<([f64; 2], u32)> = v.iter().map(|(z, m)| ([z.re, z.im], *m)).collect();
        triples.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Vec<(Complex64, u32)>, D::Error> {
        let triples: Vec<([f64; 2], u32)> = Deserialize::deserialize(d)?;
        Ok(triples
            .into_iter()
            .map(|(p, m)| (Complex64::new(p[0], p[1]), m))
            .collect())
    }
}
