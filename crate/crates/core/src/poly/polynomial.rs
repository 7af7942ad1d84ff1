use core::cmp::Ordering;
use core::fmt;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::Rational;
use crate::Error;

/// Exponent vector with its weighted degree cached.
///
/// Ordered by weighted degree first, then lexicographically on exponents, so
/// `u1^2 > u2` when both have degree 2.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    degree: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>, weights: &[u32]) -> Result<Self, Error> {
        if exps.len() != weights.len() {
            return Err(Error::Arity {
                expected: weights.len(),
                found: exps.len(),
            });
        }
        let degree = exps.iter().zip(weights).map(|(e, w)| e * w).sum();
        Ok(Monomial { degree, exps })
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            degree: 0,
            exps: vec![0; nvars],
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0 && self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            degree: self.degree + other.degree,
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// `self / var_i`, if `var_i` divides `self`.
    pub fn div_var(&self, i: usize, weights: &[u32]) -> Option<Monomial> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[i] -= 1;
        Some(Monomial {
            degree: self.degree - weights[i],
            exps,
        })
    }

    /// Index of the first variable occurring in the monomial.
    pub fn first_var(&self) -> Option<usize> {
        self.exps.iter().position(|&e| e > 0)
    }

    pub fn to_text(&self, prefix: &str) -> String {
        self.text_with(prefix, true)
    }

    fn text_with(&self, prefix: &str, indexed: bool) -> String {
        let mut out = String::new();
        let single = !indexed;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('*');
            }
            out.push_str(prefix);
            if !single {
                out.push_str(&(i + 1).to_string());
            }
            if e > 1 {
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors of weighted degree exactly `d`, in increasing monomial order.
pub fn monomials_of_degree(weights: &[u32], d: u32) -> Vec<Monomial> {
    fn rec(weights: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = weights[i];
        let max = left / w;
        for e in 0..=max {
            cur[i] = e;
            rec(weights, i + 1, left - e * w, cur, out);
        }
        cur[i] = 0;
    }
    let mut raw = Vec::new();
    let mut cur = vec![0; weights.len()];
    rec(weights, 0, d, &mut cur, &mut raw);
    let mut out: Vec<Monomial> = raw
        .into_iter()
        .map(|exps| Monomial { degree: d, exps })
        .collect();
    out.sort();
    out
}

/// Sparse multivariate polynomial over ℚ with positive integer variable weights.
///
/// Terms are kept in a `BTreeMap`, so iteration order is the monomial order
/// and no stored coefficient is ever zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    weights: Vec<u32>,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(weights: &[u32]) -> Self {
        Polynomial {
            weights: weights.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational, weights: &[u32]) -> Self {
        let mut p = Polynomial::zero(weights);
        p.add_term(Monomial::one(weights.len()), c);
        p
    }

    pub fn one(weights: &[u32]) -> Self {
        Polynomial::constant(Rational::one(), weights)
    }

    /// The `i`-th generator (0-based).
    pub fn var(i: usize, weights: &[u32]) -> Self {
        let mut exps = vec![0; weights.len()];
        exps[i] = 1;
        Polynomial::monomial(
            Monomial::new(exps, weights).unwrap(),
            Rational::one(),
            weights,
        )
    }

    pub fn monomial(m: Monomial, c: Rational, weights: &[u32]) -> Self {
        let mut p = Polynomial::zero(weights);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(
        weights: &[u32],
        terms: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Result<Self, Error> {
        let mut p = Polynomial::zero(weights);
        for (exps, c) in terms {
            p.add_term(Monomial::new(exps, weights)?, c);
        }
        Ok(p)
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn coeff_of(&self, exps: &[u32]) -> Rational {
        match Monomial::new(exps.to_vec(), &self.weights) {
            Ok(m) => self.coeff(&m),
            Err(_) => Rational::zero(),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.nvars(), self.weights.len());
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Highest weighted degree of a term, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys();
        match it.next() {
            None => true,
            Some(first) => it.all(|m| m.degree == first.degree),
        }
    }

    fn check_arity(&self, other: &Polynomial) -> Result<(), Error> {
        if self.weights != other.weights {
            return Err(Error::Arity {
                expected: self.weights.len(),
                found: other.weights.len(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, Error> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, Error> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, Error> {
        self.check_arity(other)?;
        let mut out = Polynomial::zero(&self.weights);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Sum, panicking on mismatched arity. Use [`Polynomial::try_add`] at API boundaries.
    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.try_add(other).expect("polynomial arity mismatch")
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.try_sub(other).expect("polynomial arity mismatch")
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.try_mul(other).expect("polynomial arity mismatch")
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        let mut out = Polynomial::zero(&self.weights);
        if c.is_zero() {
            return out;
        }
        for (m, a) in &self.terms {
            out.terms.insert(m.clone(), a * c);
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&Rational::from(-1))
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one(&self.weights);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Sum of the terms of weighted degree exactly `d`.
    pub fn graded_component(&self, d: u32) -> Polynomial {
        Polynomial {
            weights: self.weights.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Nonzero homogeneous components, by increasing degree.
    pub fn homogeneous_components(&self) -> Vec<(u32, Polynomial)> {
        let mut out: Vec<(u32, Polynomial)> = Vec::new();
        for (m, c) in &self.terms {
            match out.last_mut() {
                Some((d, p)) if *d == m.degree => {
                    p.terms.insert(m.clone(), c.clone());
                }
                _ => {
                    let mut p = Polynomial::zero(&self.weights);
                    p.terms.insert(m.clone(), c.clone());
                    out.push((m.degree, p));
                }
            }
        }
        out
    }

    /// Substitutes `images[i]` for the `i`-th variable. All images must share
    /// one target ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial, Error> {
        if images.len() != self.nvars() {
            return Err(Error::Arity {
                expected: self.nvars(),
                found: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.weights.clone(),
            None => self.weights.clone(),
        };
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(&p.weights)])
            .collect();
        let mut out = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(c.clone(), &target);
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().try_mul(&images[i])?;
                    powers[i].push(next);
                }
                term = term.try_mul(&powers[i][e as usize])?;
            }
            out = out.try_add(&term)?;
        }
        Ok(out)
    }

    /// Canonical text form, terms in decreasing monomial order, variables
    /// named `{prefix}{index}` (or just `prefix` in one variable).
    pub fn to_text(&self, prefix: &str) -> String {
        self.text_with(prefix, true)
    }

    /// Text form of a polynomial in one variable called `name`.
    pub fn to_text_univariate(&self, name: &str) -> String {
        debug_assert_eq!(self.nvars(), 1);
        self.text_with(name, false)
    }

    fn text_with(&self, prefix: &str, indexed: bool) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&m.text_with(prefix, indexed));
            }
        }
        out
    }

    /// Parses the canonical text form (also accepts any term order and
    /// repeated factors).
    pub fn parse(s: &str, weights: &[u32], prefix: &str) -> Result<Polynomial, Error> {
        let bad = || Error::Parse(String::from(s));
        let n = weights.len();
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut out = Polynomial::zero(weights);
        let mut chunks: Vec<(bool, &str)> = Vec::new();
        let bytes = compact.as_bytes();
        let mut start = 0;
        let mut neg = false;
        if bytes[0] == b'-' || bytes[0] == b'+' {
            neg = bytes[0] == b'-';
            start = 1;
        }
        let first = start;
        for i in first..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && i > start && bytes[i - 1] != b'^' {
                chunks.push((neg, &compact[start..i]));
                neg = bytes[i] == b'-';
                start = i + 1;
            }
        }
        chunks.push((neg, &compact[start..]));

        for (neg, chunk) in chunks {
            if chunk.is_empty() {
                return Err(bad());
            }
            let mut coeff = Rational::one();
            let mut exps = vec![0u32; n];
            for factor in chunk.split('*') {
                if factor.is_empty() {
                    return Err(bad());
                }
                if factor.as_bytes()[0].is_ascii_digit() {
                    coeff = coeff * factor.parse::<Rational>()?;
                    continue;
                }
                let (name, e) = match factor.split_once('^') {
                    Some((name, e)) => (name, e.parse::<u32>().map_err(|_| bad())?),
                    None => (factor, 1),
                };
                let rest = name.strip_prefix(prefix).ok_or_else(bad)?;
                let idx = if rest.is_empty() && n == 1 {
                    0
                } else {
                    let i: usize = rest.parse().map_err(|_| bad())?;
                    if i == 0 || i > n {
                        return Err(Error::Arity {
                            expected: n,
                            found: i,
                        });
                    }
                    i - 1
                };
                exps[idx] += e;
            }
            if neg {
                coeff = -coeff;
            }
            out.add_term(Monomial::new(exps, weights)?, coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("u"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, w: &[u32]) -> Polynomial {
        Polynomial::parse(s, w, "u").unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let w = [1];
        let a = Polynomial::parse("1 + u", &w, "u").unwrap();
        let b = Polynomial::parse("1 - u", &w, "u").unwrap();
        assert_eq!(a.mul(&b).to_text_univariate("u"), "-u^2 + 1");
        assert!(a.mul(&Polynomial::zero(&w)).is_zero());
    }

    #[test]
    fn genus_two_relation_source() {
        let w = [1, 2];
        let prod = p("1 + u1 + u2", &w).mul(&p("1 - u1 + u2", &w));
        assert_eq!(prod, p("1 + 2*u2 - u1^2 + u2^2", &w));
        let degs: Vec<u32> = prod.terms().map(|(m, _)| m.degree()).collect();
        assert_eq!(degs, [0, 2, 2, 4]);
        let rel = prod.sub(&Polynomial::one(&w));
        assert_eq!(rel.graded_component(2), p("2*u2 - u1^2", &w));
        assert!(rel.graded_component(7).is_zero());
        assert_eq!(p("1 - u1^2", &w).graded_component(2), p("-u1^2", &w));
    }

    #[test]
    fn canonical_text() {
        let w = [1, 2];
        let q = p("u2 - 1/2*u1^2", &w);
        assert_eq!(q.to_text("u"), "-1/2*u1^2 + u2");
        assert_eq!(p("3*u1*u2 - 2 + u1", &w).to_text("u"), "3*u1*u2 + u1 - 2");
        assert_eq!(Polynomial::zero(&w).to_text("u"), "0");
    }

    #[test]
    fn arity_errors() {
        let a = Polynomial::one(&[1, 2]);
        let b = Polynomial::one(&[1]);
        assert!(matches!(a.try_mul(&b), Err(Error::Arity { .. })));
        assert!(Polynomial::parse("u3", &[1, 2], "u").is_err());
        assert!(Polynomial::parse("u1 +", &[1, 2], "u").is_err());
    }

    #[test]
    fn monomial_enumeration() {
        let ms = monomials_of_degree(&[1, 2, 3], 4);
        // u1^4, u1^2 u2, u2^2, u1 u3
        assert_eq!(ms.len(), 4);
        assert!(ms.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(ms.last().unwrap().exponents(), &[4, 0, 0]);
    }

    #[test]
    fn substitution() {
        // u1 -> x1 + x2, u2 -> x1 x2
        let x = [1, 1];
        let e1 = Polynomial::parse("x1 + x2", &x, "x").unwrap();
        let e2 = Polynomial::parse("x1*x2", &x, "x").unwrap();
        let f = p("u1^2 - 2*u2", &[1, 2]);
        let img = f.substitute(&[e1, e2]).unwrap();
        assert_eq!(img, Polynomial::parse("x1^2 + x2^2", &x, "x").unwrap());
    }
}
