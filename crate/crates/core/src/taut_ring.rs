//! The graded ring `Q[u1..ug]/I`, `deg u_i = i`, where `I` is generated by
//! the graded pieces of `(1 + u1 + .. + ug)(1 - u1 + u2 - .. ± ug) - 1`.
//!
//! Degrees are computed one at a time. Degree `d` of the quotient is the
//! formal span of `u_j ⊗ b` (`b` a basis monomial of degree `d - j`) modulo
//!
//! * commutativity: `u_j ⊗ (u_i a) - u_i ⊗ (u_j a)` for basis monomials `a`
//!   of degree `d - i - j`, with `u_i a` already in normal form, and
//! * the presentation's relation generators of degree `d`.
//!
//! Columns are ordered by their monomial `u_j b`, largest first, and the
//! surviving (non-pivot) columns are the standard monomials for the graded
//! lex order. The result carries, for every degree and generator, the
//! matrix of multiplication by that generator in the chosen bases.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::poly::{EchelonBasis, Monomial, Polynomial, Rational};
use crate::Error;

/// Generators, weights and homogeneous relation generators of a graded
/// quotient of `Q[u1..ug]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    genus: usize,
    weights: Vec<u32>,
    relations: Vec<Polynomial>,
}

impl Presentation {
    /// The tautological presentation of genus `g`.
    pub fn tautological(g: usize) -> Result<Self, Error> {
        if g == 0 {
            return Err(Error::InvalidArgument(String::from(
                "genus must be at least 1",
            )));
        }
        let master = master_relation(g);
        let relations = master
            .homogeneous_components()
            .into_iter()
            .filter(|(d, _)| *d > 0)
            .map(|(_, p)| p)
            .collect();
        Ok(Presentation {
            genus: g,
            weights: weights(g),
            relations,
        })
    }

    /// A presentation with arbitrary relations; each is split into its
    /// homogeneous components.
    pub fn with_relations(g: usize, relations: Vec<Polynomial>) -> Result<Self, Error> {
        let w = weights(g);
        let mut out = Vec::new();
        for r in relations {
            if r.weights() != w.as_slice() {
                return Err(Error::Arity {
                    expected: g,
                    found: r.nvars(),
                });
            }
            out.extend(r.homogeneous_components().into_iter().map(|(_, p)| p));
        }
        Ok(Presentation {
            genus: g,
            weights: w,
            relations: out,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    /// Adds a relation (used for quotients).
    pub fn add_relation(&mut self, r: Polynomial) -> Result<(), Error> {
        if r.weights() != self.weights.as_slice() {
            return Err(Error::Arity {
                expected: self.genus,
                found: r.nvars(),
            });
        }
        self.relations
            .extend(r.homogeneous_components().into_iter().map(|(_, p)| p));
        Ok(())
    }

    /// Replaces the relation of degree `d`, or drops it when `replacement`
    /// is `None`. Test fixture for negative controls.
    pub fn corrupt_relation(&mut self, d: u32, replacement: Option<Polynomial>) {
        self.relations.retain(|r| r.degree() != Some(d));
        if let Some(r) = replacement {
            self.relations.push(r);
        }
    }
}

pub fn weights(g: usize) -> Vec<u32> {
    (1..=g as u32).collect()
}

/// `(1 + u1 + .. + ug)(1 - u1 + u2 - .. + (-1)^g ug) - 1`.
pub fn master_relation(g: usize) -> Polynomial {
    let w = weights(g);
    let mut plus = Polynomial::one(&w);
    let mut alt = Polynomial::one(&w);
    for i in 0..g {
        let u = Polynomial::var(i, &w);
        plus = plus.add(&u);
        alt = if (i + 1) % 2 == 1 {
            alt.sub(&u)
        } else {
            alt.add(&u)
        };
    }
    plus.mul(&alt).sub(&Polynomial::one(&w))
}

/// Top degree `g(g+1)/2` of the tautological ring.
pub fn top_degree(g: usize) -> u32 {
    (g * (g + 1) / 2) as u32
}

#[derive(Clone, Debug)]
struct Degree {
    basis: Vec<Monomial>,
    // mult[j][k]: u_{j+1} times basis_{d - w_j}[k], in coordinates of `basis`
    mult: Vec<Vec<Vec<Rational>>>,
}

/// Per-degree monomial bases of a graded quotient together with the
/// multiplication-by-generator maps.
#[derive(Clone, Debug)]
pub struct GradedRing {
    presentation: Presentation,
    degrees: Vec<Degree>,
}

impl GradedRing {
    /// Computes degrees `0..=max_degree`.
    pub fn compute(presentation: &Presentation, max_degree: u32) -> Result<Self, Error> {
        let mut ring = GradedRing {
            presentation: presentation.clone(),
            degrees: Vec::new(),
        };
        let mut by_degree: BTreeMap<u32, Vec<&Polynomial>> = BTreeMap::new();
        for r in &presentation.relations {
            if let Some(d) = r.degree() {
                by_degree.entry(d).or_default().push(r);
            }
        }
        if by_degree.contains_key(&0) {
            return Err(Error::InvalidArgument(String::from(
                "relation with a constant term: the quotient is zero",
            )));
        }
        for d in 0..=max_degree {
            let rels = by_degree.get(&d).map(Vec::as_slice).unwrap_or(&[]);
            let deg = ring.next_degree(d, rels)?;
            ring.degrees.push(deg);
        }
        Ok(ring)
    }

    /// The tautological ring of genus `g`, computed far enough past the top
    /// degree to certify that everything above it vanishes.
    pub fn tautological(g: usize) -> Result<Self, Error> {
        let p = Presentation::tautological(g)?;
        GradedRing::compute(&p, top_degree(g) + g as u32)
    }

    fn next_degree(&self, d: u32, rels: &[&Polynomial]) -> Result<Degree, Error> {
        let weights = self.presentation.weights.clone();
        let nvars = weights.len();
        if d == 0 {
            return Ok(Degree {
                basis: vec![Monomial::one(nvars)],
                mult: vec![Vec::new(); nvars],
            });
        }
        // formal columns (var, index into basis_{d - w_var})
        let mut cols: Vec<(Monomial, usize, usize)> = Vec::new();
        for (j, &w) in weights.iter().enumerate() {
            if w > d {
                continue;
            }
            for (k, b) in self.degrees[(d - w) as usize].basis.iter().enumerate() {
                let mut e = vec![0u32; nvars];
                e[j] = 1;
                let m = b.mul(&Monomial::new(e, &weights)?);
                cols.push((m, j, k));
            }
        }
        // largest monomial first; among equal monomials, larger variable first
        cols.sort_by(|a, b| b.0.cmp(&a.0).then(b.1.cmp(&a.1)));
        let ncols = cols.len();
        let col_of: BTreeMap<(usize, usize), usize> = cols
            .iter()
            .enumerate()
            .map(|(c, (_, j, k))| ((*j, *k), c))
            .collect();

        let mut echelon = EchelonBasis::new(ncols);

        for i in 0..nvars {
            for j in i + 1..nvars {
                let wij = weights[i] + weights[j];
                if wij > d {
                    continue;
                }
                let base = (d - wij) as usize;
                for a in 0..self.degrees[base].basis.len() {
                    let mut row = vec![Rational::zero(); ncols];
                    // u_j ⊗ (u_i a)
                    let ui_a = &self.degrees[(d - weights[j]) as usize].mult[i][a];
                    for (k, x) in ui_a.iter().enumerate() {
                        if !x.is_zero() {
                            row[col_of[&(j, k)]] += x;
                        }
                    }
                    let uj_a = &self.degrees[(d - weights[i]) as usize].mult[j][a];
                    for (k, x) in uj_a.iter().enumerate() {
                        if !x.is_zero() {
                            row[col_of[&(i, k)]] -= x;
                        }
                    }
                    echelon.insert(&row);
                }
            }
        }

        for r in rels {
            let mut row = vec![Rational::zero(); ncols];
            for (m, c) in r.terms() {
                let j = m.first_var().expect("positive-degree monomial");
                let rest = m.div_var(j, &weights).unwrap();
                let coords = self.monomial_coords(&rest)?;
                for (k, x) in coords.iter().enumerate() {
                    if !x.is_zero() {
                        row[col_of[&(j, k)]] += &(x * c);
                    }
                }
            }
            echelon.insert(&row);
        }

        let free: Vec<usize> = (0..ncols).filter(|&c| !echelon.is_pivot(c)).collect();
        let basis: Vec<Monomial> = free.iter().map(|&c| cols[c].0.clone()).collect();
        if basis.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Verification(format!(
                "degree {d}: two surviving columns share a monomial"
            )));
        }
        let pos_in_basis: BTreeMap<usize, usize> =
            free.iter().enumerate().map(|(i, &c)| (c, i)).collect();

        let mut mult = vec![Vec::new(); nvars];
        for (c, (_, j, k)) in cols.iter().enumerate() {
            let mut v = vec![Rational::zero(); basis.len()];
            match echelon.pivot_row(c) {
                None => v[pos_in_basis[&c]] = Rational::one(),
                Some(row) => {
                    for (n, x) in row {
                        if *n != c {
                            v[pos_in_basis[n]] = -x;
                        }
                    }
                }
            }
            let list = &mut mult[*j];
            if list.len() <= *k {
                list.resize(*k + 1, Vec::new());
            }
            list[*k] = v;
        }
        // basis stored in increasing monomial order
        let mut order: Vec<usize> = (0..basis.len()).collect();
        order.sort_by(|&a, &b| basis[a].cmp(&basis[b]));
        let basis_sorted: Vec<Monomial> = order.iter().map(|&i| basis[i].clone()).collect();
        for list in &mut mult {
            for v in list.iter_mut() {
                *v = order.iter().map(|&i| v[i].clone()).collect();
            }
        }
        Ok(Degree {
            basis: basis_sorted,
            mult,
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn genus(&self) -> usize {
        self.presentation.genus
    }

    pub fn weights(&self) -> &[u32] {
        &self.presentation.weights
    }

    /// Highest degree that was computed.
    pub fn max_degree(&self) -> u32 {
        self.degrees.len() as u32 - 1
    }

    /// Basis monomials of degree `d`, increasing. Empty beyond the computed
    /// range only when [`GradedRing::vanishes_above_range`] holds.
    pub fn basis(&self, d: u32) -> &[Monomial] {
        self.degrees
            .get(d as usize)
            .map(|x| x.basis.as_slice())
            .unwrap_or(&[])
    }

    /// Dimensions of every computed degree.
    pub fn dimensions(&self) -> Vec<usize> {
        self.degrees.iter().map(|x| x.basis.len()).collect()
    }

    /// Hilbert function: computed dimensions with trailing zeros removed.
    pub fn hilbert_function(&self) -> Vec<usize> {
        let mut dims = self.dimensions();
        while dims.last() == Some(&0) {
            dims.pop();
        }
        dims
    }

    pub fn total_dimension(&self) -> usize {
        self.dimensions().iter().sum()
    }

    /// True when the last `max weight` computed degrees are all zero. Since
    /// the ring is generated in degrees `1..=max weight`, every higher degree
    /// vanishes too.
    pub fn vanishes_above_range(&self) -> bool {
        let window = *self.weights().iter().max().unwrap_or(&1) as usize;
        let dims = self.dimensions();
        dims.len() > window && dims[dims.len() - window..].iter().all(|&x| x == 0)
    }

    fn index_in_basis(&self, m: &Monomial) -> Option<usize> {
        self.basis(m.degree()).binary_search(m).ok()
    }

    /// Coordinates of a monomial's normal form in the basis of its degree.
    pub fn monomial_coords(&self, m: &Monomial) -> Result<Vec<Rational>, Error> {
        let d = m.degree();
        if d as usize >= self.degrees.len() {
            if self.vanishes_above_range() {
                return Ok(Vec::new());
            }
            return Err(Error::ResourceGuard(format!(
                "degree {d} lies beyond the computed range {}",
                self.max_degree()
            )));
        }
        if let Some(i) = self.index_in_basis(m) {
            let mut v = vec![Rational::zero(); self.basis(d).len()];
            v[i] = Rational::one();
            return Ok(v);
        }
        if d == 0 {
            return Ok(vec![Rational::one()]);
        }
        let j = m.first_var().unwrap();
        let rest = m.div_var(j, self.weights()).unwrap();
        let inner = self.monomial_coords(&rest)?;
        Ok(self.mul_var_coords(j, rest.degree(), &inner))
    }

    /// Multiplies a degree-`d` coordinate vector by generator `j`.
    fn mul_var_coords(&self, j: usize, d: u32, coords: &[Rational]) -> Vec<Rational> {
        let target = d + self.weights()[j];
        if target as usize >= self.degrees.len() {
            return Vec::new();
        }
        let deg = &self.degrees[target as usize];
        let mut out = vec![Rational::zero(); deg.basis.len()];
        for (k, x) in coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (o, y) in out.iter_mut().zip(&deg.mult[j][k]) {
                if !y.is_zero() {
                    *o += &(x * y);
                }
            }
        }
        out
    }

    /// Normal form of an arbitrary polynomial.
    pub fn normal_form(&self, p: &Polynomial) -> Result<RingElement, Error> {
        if p.weights() != self.weights() {
            return Err(Error::Arity {
                expected: self.weights().len(),
                found: p.nvars(),
            });
        }
        let mut out = Polynomial::zero(self.weights());
        for (m, c) in p.terms() {
            let coords = self.monomial_coords(m)?;
            for (b, x) in self.basis(m.degree()).iter().zip(coords) {
                out.add_term(b.clone(), &x * c);
            }
        }
        Ok(RingElement {
            genus: self.genus(),
            poly: out,
        })
    }

    /// The class of `u_i` (1-based), i.e. `λ_i`.
    pub fn lambda(&self, i: usize) -> Result<RingElement, Error> {
        if i == 0 || i > self.genus() {
            return Err(Error::InvalidArgument(format!(
                "no generator u{i} in genus {}",
                self.genus()
            )));
        }
        self.normal_form(&Polynomial::var(i - 1, self.weights()))
    }

    pub fn one(&self) -> RingElement {
        RingElement {
            genus: self.genus(),
            poly: Polynomial::one(self.weights()),
        }
    }

    pub fn element_from_text(&self, s: &str) -> Result<RingElement, Error> {
        self.normal_form(&Polynomial::parse(s, self.weights(), "u")?)
    }

    pub fn multiply(&self, a: &RingElement, b: &RingElement) -> Result<RingElement, Error> {
        if a.genus != b.genus || a.genus != self.genus() {
            return Err(Error::GenusMismatch {
                left: a.genus,
                right: b.genus,
            });
        }
        self.normal_form(&a.poly.mul(&b.poly))
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> Result<RingElement, Error> {
        if a.genus != b.genus {
            return Err(Error::GenusMismatch {
                left: a.genus,
                right: b.genus,
            });
        }
        Ok(RingElement {
            genus: a.genus,
            poly: a.poly.add(&b.poly),
        })
    }

    pub fn scale(&self, a: &RingElement, c: &Rational) -> RingElement {
        RingElement {
            genus: a.genus,
            poly: a.poly.scale(c),
        }
    }

    /// Coordinates of a homogeneous element in the basis of degree `d`.
    pub fn coords(&self, e: &RingElement, d: u32) -> Vec<Rational> {
        self.basis(d).iter().map(|b| e.poly.coeff(b)).collect()
    }

    /// The quotient by the ideal `(u_g)` compared against the ring of genus
    /// `g - 1`.
    pub fn quotient_by_top_lambda(&self, lower: &GradedRing) -> Result<QuotientReport, Error> {
        let g = self.genus();
        if g < 2 || lower.genus() + 1 != g {
            return Err(Error::InvalidArgument(format!(
                "need genus >= 2 and a ring of genus {}",
                g.saturating_sub(1)
            )));
        }
        let top = g - 1;
        let wg = self.weights()[top];
        let max = self.max_degree().max(lower.max_degree());
        // per degree: span of u_g * (degree d - g)
        let mut ideal: Vec<EchelonBasis> = Vec::new();
        let mut quotient_dims = Vec::new();
        for d in 0..=max {
            let n = self.basis(d).len();
            let mut eb = EchelonBasis::new(n);
            if d >= wg && n > 0 {
                for k in 0..self.basis(d - wg).len() {
                    let mut unit = vec![Rational::zero(); self.basis(d - wg).len()];
                    unit[k] = Rational::one();
                    eb.insert(&self.mul_var_coords(top, d - wg, &unit));
                }
            }
            quotient_dims.push(n - eb.rank());
            ideal.push(eb);
        }
        let lower_dims: Vec<usize> = (0..=max).map(|d| lower.basis(d).len()).collect();

        // image of a lower-genus element in genus g, reduced modulo (u_g)
        let lift = |e: &RingElement, d: u32| -> Result<Vec<Rational>, Error> {
            let mut poly = Polynomial::zero(self.weights());
            for (m, c) in e.poly.terms() {
                let mut exps = m.exponents().to_vec();
                exps.push(0);
                poly.add_term(Monomial::new(exps, self.weights())?, c.clone());
            }
            let nf = self.normal_form(&poly)?;
            Ok(ideal[d as usize].reduce(&self.coords(&nf, d)))
        };

        let mut bijective = quotient_dims == lower_dims;
        for d in 0..=max {
            let mut span = ideal[d as usize].clone();
            for b in lower.basis(d) {
                let e = lower.normal_form(&Polynomial::monomial(
                    b.clone(),
                    Rational::one(),
                    lower.weights(),
                ))?;
                span.insert(&lift(&e, d)?);
            }
            if span.rank() != self.basis(d).len() {
                bijective = false;
            }
        }

        let mut products = 0usize;
        let mut multiplicative = true;
        for d1 in 0..=lower.max_degree() {
            for d2 in d1..=lower.max_degree() {
                for b1 in lower.basis(d1) {
                    for b2 in lower.basis(d2) {
                        let e1 = Polynomial::monomial(b1.clone(), Rational::one(), lower.weights());
                        let e2 = Polynomial::monomial(b2.clone(), Rational::one(), lower.weights());
                        let prod = lower.normal_form(&e1.mul(&e2))?;
                        let d = d1 + d2;
                        products += 1;
                        if d > max {
                            if !prod.is_zero() {
                                multiplicative = false;
                            }
                            continue;
                        }
                        // image(b1) * image(b2) vs image(b1 b2)
                        let direct = {
                            let mut poly = Polynomial::zero(self.weights());
                            let mut exps: Vec<u32> = b1.mul(b2).exponents().to_vec();
                            exps.push(0);
                            poly.add_term(Monomial::new(exps, self.weights())?, Rational::one());
                            let nf = self.normal_form(&poly)?;
                            ideal[d as usize].reduce(&self.coords(&nf, d))
                        };
                        if direct != lift(&prod, d)? {
                            multiplicative = false;
                        }
                    }
                }
            }
        }

        let mut presentation = self.presentation.clone();
        presentation.add_relation(Polynomial::var(top, self.weights()))?;
        let trim = |mut v: Vec<usize>| {
            while v.last() == Some(&0) {
                v.pop();
            }
            v
        };
        Ok(QuotientReport {
            genus: g,
            presentation,
            quotient_dims: trim(quotient_dims),
            lower_dims: trim(lower_dims),
            bijective,
            multiplicative,
            products_checked: products,
        })
    }
}

/// Outcome of comparing `Ř_g / (u_g)` with `Ř_{g-1}`.
#[derive(Clone, Debug)]
pub struct QuotientReport {
    pub genus: usize,
    /// The presentation of `Ř_g` with `u_g` added to the relations.
    pub presentation: Presentation,
    pub quotient_dims: Vec<usize>,
    pub lower_dims: Vec<usize>,
    /// `u_i ↦ u_i` sends a basis of each degree of `Ř_{g-1}` onto a basis of
    /// the quotient.
    pub bijective: bool,
    pub multiplicative: bool,
    pub products_checked: usize,
}

impl QuotientReport {
    pub fn holds(&self) -> bool {
        self.quotient_dims == self.lower_dims && self.bijective && self.multiplicative
    }
}

/// An element of a graded ring in normal form (supported on basis
/// monomials only), so equality is equality of classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    genus: usize,
    poly: Polynomial,
}

impl RingElement {
    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn to_text(&self) -> String {
        self.poly.to_text("u")
    }
}

impl core::fmt::Display for RingElement {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(g: usize) -> GradedRing {
        GradedRing::tautological(g).unwrap()
    }

    #[test]
    fn presentations() {
        let p1 = Presentation::tautological(1).unwrap();
        assert_eq!(p1.relations().len(), 1);
        assert_eq!(p1.relations()[0].to_text("u"), "-u1^2");
        let p2 = Presentation::tautological(2).unwrap();
        let texts: Vec<String> = p2.relations().iter().map(|r| r.to_text("u")).collect();
        assert_eq!(texts, ["-u1^2 + 2*u2", "u2^2"]);
        let p3 = Presentation::tautological(3).unwrap();
        let degs: Vec<u32> = p3.relations().iter().map(|r| r.degree().unwrap()).collect();
        assert_eq!(degs, [2, 4, 6]);
        assert_eq!(p3.relations()[0].to_text("u"), "-u1^2 + 2*u2");
        assert!(Presentation::tautological(0).is_err());
    }

    #[test]
    fn small_bases() {
        let r1 = ring(1);
        assert_eq!(r1.hilbert_function(), [1, 1]);
        assert_eq!(r1.basis(1)[0].to_text("u"), "u1");
        assert_eq!(ring(2).hilbert_function(), [1, 1, 1, 1]);
        assert_eq!(ring(3).hilbert_function(), [1, 1, 1, 2, 1, 1, 1]);
        assert!(ring(3).vanishes_above_range());
    }

    #[test]
    fn flagship_identities() {
        let r = ring(2);
        let nf = |s: &str| r.element_from_text(s).unwrap().to_text();
        assert_eq!(nf("u1^2"), "2*u2");
        assert_eq!(nf("u2^2"), "0");
        assert_eq!(nf("u1^3"), "2*u1*u2");
        assert_eq!(nf("u1^5"), "0");
        let l1 = r.lambda(1).unwrap();
        assert_eq!(
            r.multiply(&l1, &l1).unwrap(),
            r.scale(&r.lambda(2).unwrap(), &Rational::from(2))
        );
        assert_eq!(r.multiply(&l1, &r.one()).unwrap(), l1);
    }

    #[test]
    fn relations_reduce_to_zero() {
        for g in 1..=4 {
            let r = ring(g);
            for rel in r.presentation().relations() {
                assert!(r.normal_form(rel).unwrap().is_zero());
            }
            assert!(r.normal_form(&master_relation(g)).unwrap().is_zero());
        }
    }

    #[test]
    fn genus_mismatch() {
        let a = ring(2).one();
        let b = ring(3).one();
        assert!(matches!(
            ring(2).multiply(&a, &b),
            Err(Error::GenusMismatch { .. })
        ));
        assert!(ring(2).normal_form(&Polynomial::one(&[1])).is_err());
    }

    #[test]
    fn dropped_relation_is_infinite() {
        let mut p = Presentation::tautological(2).unwrap();
        p.corrupt_relation(2, None);
        let r = GradedRing::compute(&p, top_degree(2) + 2).unwrap();
        assert!(!r.vanishes_above_range());
        assert_ne!(r.total_dimension(), 4);
    }

    #[test]
    fn quotient_small() {
        let q = ring(2).quotient_by_top_lambda(&ring(1)).unwrap();
        assert_eq!(q.quotient_dims, [1, 1]);
        assert!(q.holds());
        let q = ring(3).quotient_by_top_lambda(&ring(2)).unwrap();
        assert_eq!(q.quotient_dims, [1, 1, 1, 1]);
        assert!(q.holds());
    }
}
