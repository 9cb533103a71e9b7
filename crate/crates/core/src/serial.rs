//! JSON encodings: rationals as `[num, den]` with arbitrary-precision
//! integers, cyclotomic numbers as `{"m", "coeffs"}`, polynomials as a
//! graded-lex list of `{"exps", "coeff"}` terms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Number;

use crate::cyclotomic::CycloNum;
use crate::polyring::{Exponents, Poly};

fn int_to_number(n: &BigInt) -> Number {
    n.to_string()
        .parse()
        .expect("decimal integer is a JSON number")
}

fn number_to_int(n: &Number) -> Result<BigInt, String> {
    n.to_string()
        .parse()
        .map_err(|_| format!("expected an integer, got {n}"))
}

/// `[num, den]`.
pub fn rational_to_json(q: &BigRational) -> [Number; 2] {
    [int_to_number(q.numer()), int_to_number(q.denom())]
}

pub fn rational_from_json(pair: &[Number; 2]) -> Result<BigRational, String> {
    let den = number_to_int(&pair[1])?;
    if den.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(BigRational::new(number_to_int(&pair[0])?, den))
}

/// Serde adapter for a single `BigRational` field.
pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        rational_to_json(q).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let pair = <[Number; 2]>::deserialize(d)?;
        rational_from_json(&pair).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct CycloJson {
    m: u32,
    coeffs: Vec<[Number; 2]>,
}

impl Serialize for CycloNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycloJson {
            m: self.conductor(),
            coeffs: self.coeffs().iter().map(rational_to_json).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = CycloJson::deserialize(d)?;
        let coeffs = raw
            .coeffs
            .iter()
            .map(rational_from_json)
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        CycloNum::canonicalize(raw.m, &coeffs).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exps: Exponents,
    coeff: CycloNum,
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self
            .grlex_terms()
            .into_iter()
            .map(|(e, c)| TermJson {
                exps: e.clone(),
                coeff: c.clone(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<TermJson>::deserialize(d)?;
        let nvars = terms.first().map_or(0, |t| t.exps.len());
        if terms.iter().any(|t| t.exps.len() != nvars) {
            return Err(D::Error::custom(
                "terms have differing numbers of variables",
            ));
        }
        Ok(Poly::from_terms(
            nvars,
            terms.into_iter().map(|t| (t.exps, t.coeff)),
        ))
    }
}
