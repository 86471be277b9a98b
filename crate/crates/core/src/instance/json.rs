//! JSON wire formats for both instance layers.

use num_rational::BigRational;
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize};
use std::fmt;

use super::full::{parse_rational, rational_string, FullInstance, RationalData};
use super::reduced::ReducedInstance;
use crate::error::{Error, Result};
use crate::finite::field::check_odd_prime;
use crate::finite::{FpMatrix, FpPoly, PrimeField};
use crate::padic::DEFAULT_PRECISION;

#[derive(Clone, Debug)]
pub enum Instance {
    Full(FullInstance),
    Reduced(ReducedInstance),
}

/// A rational written as "a/b", "a", or a bare JSON integer.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Rat(BigRational);

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Rat;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational as \"a/b\" or an integer")
            }
            fn visit_str<E: de::Error>(self, s: &str) -> std::result::Result<Rat, E> {
                parse_rational(s).map(Rat).map_err(|e| E::custom(e.to_string()))
            }
            fn visit_i64<E: de::Error>(self, x: i64) -> std::result::Result<Rat, E> {
                Ok(Rat(BigRational::from_integer(x.into())))
            }
            fn visit_u64<E: de::Error>(self, x: u64) -> std::result::Result<Rat, E> {
                Ok(Rat(BigRational::from_integer(x.into())))
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FullIn {
    #[allow(dead_code)]
    layer: String,
    p: u64,
    precision: Option<u32>,
    n: usize,
    gram: Vec<Vec<Rat>>,
    g: Vec<Vec<Rat>>,
    x: Vec<Rat>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ReducedIo {
    layer: String,
    p: u64,
    t: usize,
    omega_gram: Vec<Vec<i64>>,
    gbar: Vec<Vec<i64>>,
    #[serde(rename = "P")]
    poly: Vec<i64>,
}

#[derive(Serialize)]
struct FullOut<'a> {
    layer: &'a str,
    p: u64,
    precision: u32,
    n: usize,
    gram: Vec<Vec<String>>,
    g: Vec<Vec<String>>,
    x: Vec<String>,
}

fn typed<T: for<'de> Deserialize<'de>>(v: serde_json::Value) -> Result<T> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let path = e.path().to_string();
        Error::InvalidInput(format!("malformed instance at `{path}`: {}", e.into_inner()))
    })
}

/// Parse either layer; `precision` overrides the file's value when given.
pub fn parse_instance(text: &str, precision: Option<u32>) -> Result<Instance> {
    let v: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("malformed JSON: {e}")))?;
    let layer = v
        .get("layer")
        .and_then(|l| l.as_str())
        .ok_or_else(|| Error::InvalidInput("malformed instance at `layer`: missing or not a string".into()))?
        .to_string();
    match layer.as_str() {
        "full" => {
            let f: FullIn = typed(v)?;
            check_odd_prime(f.p)?;
            if f.gram.len() != f.n || f.g.len() != f.n || f.x.len() != f.n {
                return Err(Error::InvalidInput(format!("malformed instance at `n`: dimensions disagree with n = {}", f.n)));
            }
            let prec = precision.or(f.precision).unwrap_or(DEFAULT_PRECISION);
            let un = |m: Vec<Vec<Rat>>| m.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect();
            let data = RationalData { gram: un(f.gram), g: un(f.g), x: f.x.into_iter().map(|x| x.0).collect() };
            Ok(Instance::Full(FullInstance::from_rationals(f.p, prec, data)?))
        }
        "reduced" => {
            let r: ReducedIo = typed(v)?;
            let field = PrimeField::new(r.p)?;
            let gram = FpMatrix::from_i64(&field, &r.omega_gram)
                .map_err(|e| Error::InvalidInput(format!("malformed instance at `omega_gram`: {e}")))?;
            let gbar = FpMatrix::from_i64(&field, &r.gbar)
                .map_err(|e| Error::InvalidInput(format!("malformed instance at `gbar`: {e}")))?;
            if gbar.rows() != r.t {
                return Err(Error::InvalidInput(format!("malformed instance at `t`: gbar has {} rows", gbar.rows())));
            }
            let poly = FpPoly::new(r.p, r.poly)?;
            Ok(Instance::Reduced(ReducedInstance::new(r.p, gram, gbar, poly)?))
        }
        other => Err(Error::InvalidInput(format!("malformed instance at `layer`: unknown layer {other:?}"))),
    }
}

pub fn reduced_to_json(red: &ReducedInstance) -> serde_json::Value {
    serde_json::to_value(ReducedIo {
        layer: "reduced".into(),
        p: red.p,
        t: red.t,
        omega_gram: red.omega_gram.to_i64(),
        gbar: red.gbar.to_i64(),
        poly: red.poly.to_i64(),
    })
    .expect("serializable")
}

pub fn full_to_json(inst: &FullInstance) -> Result<serde_json::Value> {
    let src = inst
        .source
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("full instance without rational source".into()))?;
    let s = |m: &Vec<Vec<BigRational>>| m.iter().map(|r| r.iter().map(rational_string).collect()).collect();
    Ok(serde_json::to_value(FullOut {
        layer: "full",
        p: inst.p,
        precision: inst.precision,
        n: inst.n,
        gram: s(&src.gram),
        g: s(&src.g),
        x: src.x.iter().map(rational_string).collect(),
    })
    .expect("serializable"))
}

pub fn instance_to_json(inst: &Instance) -> Result<serde_json::Value> {
    match inst {
        Instance::Full(f) => full_to_json(f),
        Instance::Reduced(r) => Ok(reduced_to_json(r)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_roundtrip() {
        let text = r#"{"layer":"reduced","p":3,"t":2,"omega_gram":[[1,0],[0,1]],"gbar":[[0,2],[1,0]],"P":[1,0,1]}"#;
        let Instance::Reduced(r) = parse_instance(text, None).unwrap() else { panic!() };
        assert_eq!(r.t, 2);
        assert_eq!(serde_json::to_string(&reduced_to_json(&r)).unwrap(), text);
    }

    #[test]
    fn field_path_diagnostics() {
        let text = r#"{"layer":"reduced","p":3,"t":2,"omega_gram":[[1,0],[0,"x"]],"gbar":[[0,2],[1,0]],"P":[1,0,1]}"#;
        let err = parse_instance(text, None).unwrap_err().to_string();
        assert!(err.contains("omega_gram[1][1]"), "{err}");
        let err = parse_instance(r#"{"layer":"full","p":3}"#, None).unwrap_err().to_string();
        assert!(err.contains("missing field"), "{err}");
        let err = parse_instance(r#"{"layer":"reduced","p":2,"t":0,"omega_gram":[],"gbar":[],"P":[1]}"#, None).unwrap_err();
        assert_eq!(err, Error::NotOddPrime(2));
    }
}
