//! Two presentations of the same graded ring inside the symmetric
//! polynomials `Q[x1..xg]^{S_g}`: the Borel quotient by the ideal generated
//! by positive-degree `W(C_g)`-invariants, and the twisted quotient by
//! `f - φ̃(f)` where `φ̃` multiplies characters by `p` (composed with a Weyl
//! element). `W(C_g)`-invariants are generated by `e_j(x1², .., xg²)`, so
//! both ideals are generated by finitely many elements.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::poly::{EchelonBasis, Polynomial, Rational};
use crate::taut_ring::{master_relation, top_degree, GradedRing};
use crate::weyl::SignedPermutation;
use crate::Error;

fn x_weights(g: usize) -> Vec<u32> {
    vec![1; g]
}

/// Elementary symmetric polynomial `e_k(x1^s, .., xg^s)`.
pub fn elementary(g: usize, k: usize, s: u32) -> Polynomial {
    let w = x_weights(g);
    let mut out = Polynomial::zero(&w);
    if k > g {
        return out;
    }
    for mask in 0u32..(1 << g) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let exps = (0..g)
            .map(|i| if mask >> i & 1 == 1 { s } else { 0 })
            .collect();
        out = out.add(&Polynomial::from_terms(&w, [(exps, Rational::one())]).unwrap());
    }
    out
}

/// Partitions of `d` with at most `len` parts, each padded to `len` entries.
pub fn partitions(d: u32, len: usize) -> Vec<Vec<u32>> {
    fn rec(left: u32, max: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            let mut p = cur.clone();
            p.resize(p.len() + slots, 0);
            out.push(p);
            return;
        }
        if slots == 0 {
            return;
        }
        for part in (1..=max.min(left)).rev() {
            cur.push(part);
            rec(left - part, part, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, len, &mut Vec::new(), &mut out);
    out
}

/// Monomial symmetric polynomial `m_λ`.
pub fn monomial_symmetric(g: usize, lambda: &[u32]) -> Polynomial {
    let w = x_weights(g);
    let mut perms: Vec<Vec<u32>> = Vec::new();
    let mut cur = lambda.to_vec();
    cur.sort_unstable();
    // next_permutation over the multiset
    loop {
        perms.push(cur.clone());
        let Some(i) = (0..cur.len().saturating_sub(1))
            .rev()
            .find(|&i| cur[i] < cur[i + 1])
        else {
            break;
        };
        let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    Polynomial::from_terms(&w, perms.into_iter().map(|e| (e, Rational::one()))).unwrap()
}

/// Coordinates of a symmetric polynomial on the `m_λ` basis of degree `d`.
fn sym_coords(p: &Polynomial, parts: &[Vec<u32>]) -> Vec<Rational> {
    parts.iter().map(|l| p.coeff_of(l)).collect()
}

pub fn is_symmetric(p: &Polynomial) -> bool {
    let g = p.nvars();
    (0..g.saturating_sub(1)).all(|i| {
        let images: Vec<Polynomial> = (0..g)
            .map(|k| {
                let src = if k == i {
                    i + 1
                } else if k == i + 1 {
                    i
                } else {
                    k
                };
                Polynomial::var(src, p.weights())
            })
            .collect();
        &p.substitute(&images).unwrap() == p
    })
}

/// The Borel generators `e_j(x²)`, `j = 1..g` (degree `2j`).
pub fn borel_ideal_gens(g: usize, d_max: u32) -> Result<Vec<Polynomial>, Error> {
    if g == 0 || d_max < 2 {
        return Err(Error::InvalidArgument(format!(
            "need g >= 1 and d_max >= 2, got g={g}, d_max={d_max}"
        )));
    }
    Ok((1..=g).map(|j| elementary(g, j, 2)).collect())
}

pub fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|k| k * k <= p)
            .all(|k| !p.is_multiple_of(k))
}

/// The isogeny `φ̃` on characters: `x_i ↦ p · x_{w(i)}` with signs, for a
/// prime `p` and a Weyl element `w`.
#[derive(Clone, Debug)]
pub struct TwistData {
    pub p: u64,
    pub weyl: SignedPermutation,
}

impl TwistData {
    pub fn new(p: u64, weyl: SignedPermutation) -> Result<Self, Error> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(TwistData { p, weyl })
    }

    /// `φ̃` as a ring endomorphism of `Q[x1..xg]`.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial, Error> {
        let g = self.weyl.genus();
        if f.nvars() != g {
            return Err(Error::Arity {
                expected: g,
                found: f.nvars(),
            });
        }
        let p = Rational::from(self.p as i64);
        let images: Vec<Polynomial> = (1..=g as i32)
            .map(|i| {
                let v = self.weyl.apply(i);
                let x = Polynomial::var(v.unsigned_abs() as usize - 1, f.weights());
                let x = if v < 0 { x.neg() } else { x };
                x.scale(&p)
            })
            .collect();
        f.substitute(&images)
    }
}

/// `f - φ̃(f)` for the Borel generators, with `φ̃` actually applied.
pub fn twisted_ideal_gens_with(twist: &TwistData, d_max: u32) -> Result<Vec<Polynomial>, Error> {
    let g = twist.weyl.genus();
    borel_ideal_gens(g, d_max)?
        .into_iter()
        .map(|f| Ok(f.sub(&twist.apply(&f)?)))
        .collect()
}

/// Twisted generators with the identity Weyl part: `(1 - p^{2j}) e_j(x²)`.
pub fn twisted_ideal_gens(g: usize, p: u64, d_max: u32) -> Result<Vec<Polynomial>, Error> {
    twisted_ideal_gens_with(&TwistData::new(p, SignedPermutation::identity(g))?, d_max)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeComparison {
    pub d: u32,
    /// Dimension of the degree-`d` symmetric polynomials.
    pub sym_dim: usize,
    pub rank_borel: usize,
    pub rank_twisted: usize,
    pub rank_union: usize,
}

impl DegreeComparison {
    pub fn equal(&self) -> bool {
        self.rank_borel == self.rank_twisted && self.rank_twisted == self.rank_union
    }

    pub fn quotient_dim(&self) -> usize {
        self.sym_dim - self.rank_borel
    }
}

#[derive(Clone, Debug)]
pub struct IdealComparison {
    pub g: usize,
    pub p: u64,
    pub degrees: Vec<DegreeComparison>,
}

impl IdealComparison {
    pub fn all_equal(&self) -> bool {
        self.degrees.iter().all(DegreeComparison::equal)
    }

    pub fn quotient_dims(&self) -> Vec<usize> {
        self.degrees
            .iter()
            .map(DegreeComparison::quotient_dim)
            .collect()
    }
}

/// Degree-`d` slice of the ideal of `Sym` generated by `gens`, as an
/// echelon basis on the `m_λ` coordinates.
fn ideal_slice(g: usize, gens: &[Polynomial], d: u32, parts: &[Vec<u32>]) -> EchelonBasis {
    let mut eb = EchelonBasis::new(parts.len());
    for f in gens {
        let Some(fd) = f.degree() else { continue };
        if fd > d {
            continue;
        }
        for lambda in partitions(d - fd, g) {
            let prod = f.mul(&monomial_symmetric(g, &lambda));
            eb.insert(&sym_coords(&prod, parts));
        }
    }
    eb
}

/// Compares the Borel and twisted ideals degree by degree for `d ≤ d_max`,
/// using the given twist.
pub fn ideals_equal_by_degree_with(
    twist: &TwistData,
    d_max: u32,
) -> Result<IdealComparison, Error> {
    let g = twist.weyl.genus();
    let borel = borel_ideal_gens(g, d_max.max(2))?;
    let twisted = twisted_ideal_gens_with(twist, d_max.max(2))?;
    let mut degrees = Vec::new();
    for d in 0..=d_max {
        let parts = partitions(d, g);
        let b = ideal_slice(g, &borel, d, &parts);
        let t = ideal_slice(g, &twisted, d, &parts);
        let mut u = b.clone();
        for c in t.pivots() {
            let row = t.pivot_row(c).unwrap();
            let mut dense = vec![Rational::zero(); parts.len()];
            for (j, x) in row {
                dense[*j] = x.clone();
            }
            u.insert(&dense);
        }
        degrees.push(DegreeComparison {
            d,
            sym_dim: parts.len(),
            rank_borel: b.rank(),
            rank_twisted: t.rank(),
            rank_union: u.rank(),
        });
    }
    Ok(IdealComparison {
        g,
        p: twist.p,
        degrees,
    })
}

pub fn ideals_equal_by_degree(g: usize, p: u64, d_max: u32) -> Result<IdealComparison, Error> {
    ideals_equal_by_degree_with(&TwistData::new(p, SignedPermutation::identity(g))?, d_max)
}

#[derive(Clone, Debug)]
pub struct ChernMapReport {
    pub g: usize,
    /// Image of the master relation under `u_i ↦ e_i(x)`.
    pub image: Polynomial,
    /// The image equals `Π(1 - x_i²) - 1`.
    pub matches_product: bool,
    /// The image equals `Σ_j (-1)^j e_j(x²)`, an explicit combination of
    /// Borel generators.
    pub in_borel_ideal: bool,
    pub borel_quotient_dims: Vec<usize>,
    pub ring_dims: Vec<usize>,
}

impl ChernMapReport {
    pub fn holds(&self) -> bool {
        self.matches_product && self.in_borel_ideal && self.borel_quotient_dims == self.ring_dims
    }
}

/// Checks the substitution `u_i ↦ e_i(x)` symbolically and compares graded
/// dimensions of the Borel quotient with the tautological ring up to `d_max`.
pub fn chern_map_check(g: usize, d_max: u32, ring: &GradedRing) -> Result<ChernMapReport, Error> {
    if ring.genus() != g {
        return Err(Error::GenusMismatch {
            left: g,
            right: ring.genus(),
        });
    }
    let w = x_weights(g);
    let images: Vec<Polynomial> = (1..=g).map(|i| elementary(g, i, 1)).collect();
    let image = master_relation(g).substitute(&images)?;

    let mut product = Polynomial::one(&w);
    for i in 0..g {
        let xi = Polynomial::var(i, &w);
        product = product.mul(&Polynomial::one(&w).sub(&xi.mul(&xi)));
    }
    let matches_product = image == product.sub(&Polynomial::one(&w));

    let mut certificate = Polynomial::zero(&w);
    for j in 1..=g {
        let sign = if j % 2 == 1 {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        certificate = certificate.add(&elementary(g, j, 2).scale(&Rational::from(sign)));
    }
    let in_borel_ideal = image == certificate;

    let mut borel_quotient_dims = Vec::new();
    let gens = borel_ideal_gens(g, d_max.max(2))?;
    for d in 0..=d_max {
        let parts = partitions(d, g);
        borel_quotient_dims.push(parts.len() - ideal_slice(g, &gens, d, &parts).rank());
    }
    let ring_dims = (0..=d_max).map(|d| ring.basis(d).len()).collect();
    Ok(ChernMapReport {
        g,
        image,
        matches_product,
        in_borel_ideal,
        borel_quotient_dims,
        ring_dims,
    })
}

/// Default degree cap: the top degree of the quotient.
pub fn default_d_max(g: usize) -> u32 {
    top_degree(g)
}
