//! Serialized forms of core values.

use serde::{Deserialize, Serialize};
use taut_core::poly::Polynomial;
use taut_core::weyl::EOType;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    /// Exact integers as decimal strings.
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub weights: Vec<u32>,
    /// Largest monomial first.
    pub terms: Vec<TermJson>,
}

impl From<&Polynomial> for PolynomialJson {
    fn from(p: &Polynomial) -> Self {
        PolynomialJson {
            weights: p.weights().to_vec(),
            terms: p
                .terms()
                .rev()
                .map(|(m, c)| TermJson {
                    exp: m.exponents().to_vec(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EOTypeJson {
    pub g: usize,
    pub parts: Vec<u32>,
}

impl From<&EOType> for EOTypeJson {
    fn from(t: &EOType) -> Self {
        EOTypeJson {
            g: t.genus(),
            parts: t.parts().to_vec(),
        }
    }
}

pub fn to_string_pretty<T: Serialize>(v: &T) -> serde_json::Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}
