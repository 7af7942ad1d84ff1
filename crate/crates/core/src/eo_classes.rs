//! Cycle classes of the p-rank loci in the tautological ring.
//!
//! `[V_f] = (p-1)(p²-1)⋯(p^{g-f}-1) λ_{g-f}`, with `V_g` the whole space.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::brokemper::is_prime;
use crate::poly::Rational;
use crate::taut_ring::{GradedRing, RingElement};
use crate::zip_oracle::OrbitReport;
use crate::Error;

/// Primes above this need no enumeration but are refused to keep
/// coefficients readable.
pub const MAX_CLASS_PRIME: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumClassRecord {
    pub g: usize,
    pub p: u64,
    /// p-rank bound.
    pub f: usize,
    pub codimension: usize,
    /// `Π_{i=1}^{g-f} (p^i - 1)`; 1 when `f = g`.
    pub coefficient: BigInt,
    pub class: RingElement,
}

impl StratumClassRecord {
    pub fn class_text(&self) -> String {
        if self.f == self.g {
            return String::from("1");
        }
        format!("{}*u{}", self.coefficient, self.codimension)
    }
}

pub fn locus_coefficient(g: usize, f: usize, p: u64) -> BigInt {
    let p = BigInt::from(p);
    (1..=(g - f) as u32).map(|i| p.pow(i) - 1u32).product()
}

fn check_prime(p: u64) -> Result<(), Error> {
    if p > MAX_CLASS_PRIME {
        return Err(Error::ResourceGuard(format!(
            "prime {p} exceeds {MAX_CLASS_PRIME}"
        )));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// `[V_f]` in normal form.
pub fn p_rank_locus_class(
    ring: &GradedRing,
    f: usize,
    p: u64,
) -> Result<StratumClassRecord, Error> {
    let g = ring.genus();
    if f > g {
        return Err(Error::InvalidArgument(format!(
            "p-rank bound {f} exceeds genus {g}"
        )));
    }
    check_prime(p)?;
    let coefficient = locus_coefficient(g, f, p);
    let codimension = g - f;
    let class = if f == g {
        ring.one()
    } else {
        ring.scale(
            &ring.lambda(codimension)?,
            &Rational::from(coefficient.clone()),
        )
    };
    Ok(StratumClassRecord {
        g,
        p,
        f,
        codimension,
        coefficient,
        class,
    })
}

/// Records for `f = 0..=g`.
pub fn class_table(ring: &GradedRing, p: u64) -> Result<Vec<StratumClassRecord>, Error> {
    (0..=ring.genus())
        .map(|f| p_rank_locus_class(ring, f, p))
        .collect()
}

/// `λ_i = multiplier · [V_{g-i}]` with a positive rational multiplier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EffectivityCertificate {
    pub i: usize,
    pub f: usize,
    pub multiplier: Rational,
    /// `multiplier · [V_f]` reduces to `λ_i`.
    pub reconstructs: bool,
    pub lambda_nonzero: bool,
}

impl EffectivityCertificate {
    pub fn holds(&self) -> bool {
        self.reconstructs
            && self.lambda_nonzero
            && !self.multiplier.is_negative()
            && !self.multiplier.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EffectivityReport {
    pub g: usize,
    pub p: u64,
    pub certificates: Vec<EffectivityCertificate>,
    /// For `f = 0..g`, the number of enumerated zips of p-rank at most `f`,
    /// when an enumeration was supplied.
    pub oracle_points: Option<Vec<usize>>,
}

impl EffectivityReport {
    pub fn holds(&self) -> bool {
        self.certificates.len() == self.g
            && self.certificates.iter().all(EffectivityCertificate::holds)
            && self
                .oracle_points
                .as_ref()
                .is_none_or(|pts| pts.iter().all(|&n| n > 0))
    }
}

/// Certifies every `λ_i` as a positive multiple of the p-rank locus class
/// of codimension `i`. An orbit report for the same `(g, p)`, if given, must
/// contain points of every p-rank bound `f < g`.
pub fn effectivity_check(
    ring: &GradedRing,
    p: u64,
    oracle: Option<&OrbitReport>,
) -> Result<EffectivityReport, Error> {
    let g = ring.genus();
    let mut certificates = Vec::with_capacity(g);
    for i in 1..=g {
        let record = p_rank_locus_class(ring, g - i, p)?;
        let multiplier = Rational::from(record.coefficient.clone()).recip();
        let lambda = ring.lambda(i)?;
        let rebuilt = ring.scale(&record.class, &multiplier);
        certificates.push(EffectivityCertificate {
            i,
            f: g - i,
            reconstructs: rebuilt == lambda,
            lambda_nonzero: !lambda.is_zero(),
            multiplier,
        });
    }
    let oracle_points = match oracle {
        None => None,
        Some(report) => {
            if report.g != g || report.p as u64 != p {
                return Err(Error::InvalidArgument(format!(
                    "orbit report is for g={}, p={}, expected g={g}, p={p}",
                    report.g, report.p
                )));
            }
            Some(
                (0..g)
                    .map(|f| {
                        report
                            .classes
                            .iter()
                            .filter(|c| c.p_rank <= f)
                            .map(|c| c.points)
                            .sum()
                    })
                    .collect(),
            )
        }
    };
    Ok(EffectivityReport {
        g,
        p,
        certificates,
        oracle_points,
    })
}
