//! The Weyl group of type C_g as signed permutations of `{1..g}`, its Siegel
//! parabolic subgroup `W_P = S_g`, and the `2^g` minimal representatives of
//! `W_P \ W` labelled by strict partitions.
//!
//! Conventions: a signed permutation is stored in one-line notation
//! `w = [w(1), .., w(g)]` with `w(-i) = -w(i)`; composition is
//! `(a ∘ b)(i) = a(b(i))`. Simple reflections are `s0` (negate the first
//! entry) and `s_i` (swap positions `i`, `i+1`); they act on the right.
//! `W_P` acts on the left, permuting values, so a right coset `W_P w` is
//! determined by which positions carry negative entries. The strict
//! partition attached to a coset lists those positions in decreasing order;
//! its size equals the length of the minimal representative.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::poly::{Polynomial, Rational};
use crate::Error;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SignedPermutation {
    images: Vec<i32>,
}

impl SignedPermutation {
    pub fn new(images: Vec<i32>) -> Result<Self, Error> {
        let g = images.len();
        let mut seen = vec![false; g + 1];
        for &x in &images {
            let a = x.unsigned_abs() as usize;
            if a == 0 || a > g || seen[a] {
                return Err(Error::InvalidArgument(format!(
                    "{images:?} is not a signed permutation"
                )));
            }
            seen[a] = true;
        }
        Ok(SignedPermutation { images })
    }

    pub fn identity(g: usize) -> Self {
        SignedPermutation {
            images: (1..=g as i32).collect(),
        }
    }

    pub fn genus(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[i32] {
        &self.images
    }

    /// Image of a signed letter `i ∈ ±{1..g}`.
    pub fn apply(&self, i: i32) -> i32 {
        let v = self.images[i.unsigned_abs() as usize - 1];
        if i < 0 {
            -v
        } else {
            v
        }
    }

    /// Simple reflection `s0` (k = 0) or `s_k` (1 ≤ k < g).
    pub fn simple_reflection(g: usize, k: usize) -> Self {
        let mut w = SignedPermutation::identity(g);
        if k == 0 {
            w.images[0] = -1;
        } else {
            w.images.swap(k - 1, k);
        }
        w
    }

    pub fn compose(&self, other: &SignedPermutation) -> Result<Self, Error> {
        if self.genus() != other.genus() {
            return Err(Error::GenusMismatch {
                left: self.genus(),
                right: other.genus(),
            });
        }
        Ok(SignedPermutation {
            images: other.images.iter().map(|&i| self.apply(i)).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.genus()];
        for (pos, &v) in self.images.iter().enumerate() {
            let p = pos as i32 + 1;
            images[v.unsigned_abs() as usize - 1] = if v < 0 { -p } else { p };
        }
        SignedPermutation { images }
    }

    /// Coxeter length: inversions plus the absolute values of the negative
    /// entries.
    pub fn length(&self) -> usize {
        let w = &self.images;
        let mut len = 0usize;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    len += 1;
                }
            }
            if w[i] < 0 {
                len += w[i].unsigned_abs() as usize;
            }
        }
        len
    }

    /// Positions (1-based) holding negative entries; constant on `W_P`-cosets.
    pub fn negative_positions(&self) -> Vec<u32> {
        self.images
            .iter()
            .enumerate()
            .filter(|(_, &v)| v < 0)
            .map(|(i, _)| i as u32 + 1)
            .collect()
    }

    /// Left multiplication by the `W_P` simple reflection swapping values
    /// `k` and `k+1`.
    fn swap_values(&self, k: i32) -> Self {
        SignedPermutation {
            images: self
                .images
                .iter()
                .map(|&v| match v.abs() {
                    a if a == k => v.signum() * (k + 1),
                    a if a == k + 1 => v.signum() * k,
                    _ => v,
                })
                .collect(),
        }
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

/// Every element of W(C_g); exponential, meant for small `g`.
pub fn all_elements(g: usize) -> Vec<SignedPermutation> {
    let mut out = Vec::new();
    for perm in permutations(g) {
        for signs in 0u32..(1 << g) {
            let images = perm
                .iter()
                .enumerate()
                .map(|(i, &v)| if signs >> i & 1 == 1 { -v } else { v })
                .collect();
            out.push(SignedPermutation { images });
        }
    }
    out
}

/// The parabolic subgroup `W_P ≅ S_g` (unsigned permutations).
pub fn parabolic_elements(g: usize) -> Vec<SignedPermutation> {
    permutations(g)
        .into_iter()
        .map(|images| SignedPermutation { images })
        .collect()
}

fn permutations(g: usize) -> Vec<Vec<i32>> {
    fn rec(cur: &mut Vec<i32>, used: &mut [bool], out: &mut Vec<Vec<i32>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v as i32 + 1);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; g], &mut out);
    out
}

/// Word lengths of all elements by breadth-first search in the Cayley graph
/// on the simple reflections.
pub fn bfs_lengths(g: usize) -> BTreeMap<SignedPermutation, usize> {
    let gens: Vec<SignedPermutation> = (0..g)
        .map(|k| SignedPermutation::simple_reflection(g, k))
        .collect();
    let mut dist = BTreeMap::new();
    let id = SignedPermutation::identity(g);
    dist.insert(id.clone(), 0);
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        let d = dist[&w];
        for s in &gens {
            let next = w.compose(s).unwrap();
            if !dist.contains_key(&next) {
                dist.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    dist
}

/// Strict partition with parts in `{1..g}`, indexing a stratum of genus `g`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EOType {
    genus: usize,
    parts: Vec<u32>,
}

impl EOType {
    pub fn new(genus: usize, mut parts: Vec<u32>) -> Result<Self, Error> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let strict = parts.windows(2).all(|w| w[0] > w[1]);
        let fits = parts.iter().all(|&p| p >= 1 && p as usize <= genus);
        if !strict || !fits {
            return Err(Error::InvalidArgument(format!(
                "{parts:?} is not a strict partition with parts in 1..={genus}"
            )));
        }
        Ok(EOType { genus, parts })
    }

    /// The open (ordinary) stratum.
    pub fn empty(genus: usize) -> Self {
        EOType {
            genus,
            parts: Vec::new(),
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn codimension(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// All `2^g` strict partitions in the staircase, by codimension then parts.
    pub fn all(genus: usize) -> Vec<EOType> {
        let mut out: Vec<EOType> = (0u32..1 << genus)
            .map(|mask| EOType {
                genus,
                parts: (1..=genus as u32)
                    .rev()
                    .filter(|i| mask >> (i - 1) & 1 == 1)
                    .collect(),
            })
            .collect();
        out.sort_by(|a, b| {
            a.codimension()
                .cmp(&b.codimension())
                .then_with(|| a.parts.cmp(&b.parts))
        });
        out
    }

    /// Parses the text form `[3,1]`.
    pub fn parse(genus: usize, s: &str) -> Result<Self, Error> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(String::from(s)))?;
        let parts = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(String::from(s)))
                })
                .collect::<Result<Vec<_>, _>>()?
        };
        EOType::new(genus, parts)
    }
}

impl fmt::Display for EOType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for SignedPermutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(String::from(s)))?;
        let images = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i32>().map_err(|_| Error::Parse(String::from(s))))
            .collect::<Result<Vec<_>, _>>()?;
        SignedPermutation::new(images)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CosetRep {
    pub rep: SignedPermutation,
    pub length: usize,
    pub label: EOType,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CosetTable {
    pub genus: usize,
    /// Sorted like [`EOType::all`].
    pub reps: Vec<CosetRep>,
}

/// Minimal element of the coset `W_P w`: walk down along left descents in
/// `W_P` until none is left.
pub fn minimal_in_coset(w: &SignedPermutation) -> SignedPermutation {
    let g = w.genus() as i32;
    let mut cur = w.clone();
    let mut len = cur.length();
    'outer: loop {
        for k in 1..g {
            let next = cur.swap_values(k);
            let l = next.length();
            if l < len {
                cur = next;
                len = l;
                continue 'outer;
            }
        }
        return cur;
    }
}

/// The `2^g` minimal coset representatives of `W_P \ W(C_g)`.
pub fn min_coset_reps(g: usize) -> Result<CosetTable, Error> {
    if g == 0 {
        return Err(Error::InvalidArgument(String::from(
            "genus must be at least 1",
        )));
    }
    let mut reps = Vec::with_capacity(1 << g);
    for label in EOType::all(g) {
        let mut images: Vec<i32> = (1..=g as i32).collect();
        for &p in label.parts() {
            images[p as usize - 1] *= -1;
        }
        let rep = minimal_in_coset(&SignedPermutation { images });
        let length = rep.length();
        if length as u32 != label.codimension() {
            return Err(Error::Verification(format!(
                "coset {label}: minimal length {length} differs from codimension"
            )));
        }
        reps.push(CosetRep { rep, length, label });
    }
    Ok(CosetTable { genus: g, reps })
}

impl CosetTable {
    pub fn lookup(&self, w: &SignedPermutation) -> Option<&CosetRep> {
        let neg = w.negative_positions();
        self.reps.iter().find(|r| {
            let mut p = r.label.parts().to_vec();
            p.reverse();
            p == neg
        })
    }
}

/// `Σ t^length` over the minimal coset representatives.
pub fn poincare_wp(g: usize) -> Result<Polynomial, Error> {
    let table = min_coset_reps(g)?;
    let w = [1u32];
    let mut p = Polynomial::zero(&w);
    for r in &table.reps {
        p = p.add(&Polynomial::from_terms(
            &w,
            [(vec![r.length as u32], Rational::one())],
        )?);
    }
    Ok(p)
}

/// `Π_{i=1}^{g} (1 + t^i)`.
pub fn staircase_product(g: usize) -> Polynomial {
    let w = [1u32];
    (1..=g as u32).fold(Polynomial::one(&w), |acc, i| {
        let f =
            Polynomial::from_terms(&w, [(vec![0], Rational::one()), (vec![i], Rational::one())])
                .unwrap();
        acc.mul(&f)
    })
}

/// Coefficient list of a polynomial in one variable, lowest degree first.
pub fn coefficient_list(p: &Polynomial) -> Vec<Rational> {
    let Some(deg) = p.degree() else {
        return Vec::new();
    };
    (0..=deg).map(|d| p.coeff_of(&[d])).collect()
}

/// Where an entry of the ι table comes from.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IotaSource {
    /// Frozen from the finite-field zip enumeration.
    Verified,
    /// Closed-form guess (keep the parts); not checked by enumeration.
    Conjectured,
}

/// `(g, r, genus-(g−r) parts, genus-g parts)` rows derived by the zip
/// enumeration over F_2 and F_3 and frozen here.
const IOTA_TABLE: &[(usize, usize, &[u32], &[u32])] = &[
    (2, 1, &[], &[]),
    (2, 1, &[1], &[1]),
    (3, 1, &[], &[]),
    (3, 1, &[1], &[1]),
    (3, 1, &[2], &[2]),
    (3, 1, &[2, 1], &[2, 1]),
    (3, 2, &[], &[]),
    (3, 2, &[1], &[1]),
];

/// The embedding `ι: W_{P'}\W' ↪ W_P\W` for reduction along an isotropic
/// subspace of dimension `r`, on strict-partition labels.
pub fn iota_embedding(g: usize, r: usize, t: &EOType) -> Result<(EOType, IotaSource), Error> {
    if r == 0 || r >= g {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= r <= g-1, got r={r}, g={g}"
        )));
    }
    if t.genus() != g - r {
        return Err(Error::GenusMismatch {
            left: t.genus(),
            right: g - r,
        });
    }
    if let Some(row) = IOTA_TABLE
        .iter()
        .find(|(tg, tr, src, _)| *tg == g && *tr == r && *src == t.parts())
    {
        return Ok((EOType::new(g, row.3.to_vec())?, IotaSource::Verified));
    }
    Ok((iota_conjectured(g, t), IotaSource::Conjectured))
}

/// Conjectured closed form: the strict partition is kept unchanged.
pub fn iota_conjectured(g: usize, t: &EOType) -> EOType {
    EOType {
        genus: g,
        parts: t.parts().to_vec(),
    }
}

/// Whether the frozen table covers `(g, r)`.
pub fn iota_table_covers(g: usize, r: usize) -> bool {
    let rows: BTreeSet<&[u32]> = IOTA_TABLE
        .iter()
        .filter(|(tg, tr, _, _)| *tg == g && *tr == r)
        .map(|row| row.2)
        .collect();
    rows.len() == 1 << (g - r)
}
