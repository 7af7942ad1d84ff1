//! Brute-force zip geometry over a prime field `F_p`.
//!
//! Over `F_p` the absolute Frobenius fixes every scalar, so a zip on the
//! standard symplectic space `H = F_p^{2g}` is just a linear endomorphism
//! `F` of rank `g` whose kernel and image are Lagrangian. The triple view
//! `(ker F, im F, H/ker F ≅ im F)` is recovered by [`Zip::triple`].
//!
//! The isomorphism invariant is built from two chains of subspaces: `C`,
//! the closure of `{0, H}` under preimages `F⁻¹(·)` and symplectic perps
//! (refining the Hodge filtration `ker F`), and `D`, the closure under
//! images `F(·)` and perps (refining the conjugate filtration `im F`). The
//! invariant is the matrix `dim(Cⁱ ∩ D_j)` together with the action of `F`
//! on `C`, from which the elementary sequence and the strict-partition
//! label are read off.

mod linalg;
mod symplectic;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub use linalg::{FpMatrix, PrimeField, Subspace, MAX_PRIME};
pub use symplectic::SymplecticSpace;

use crate::weyl::EOType;
use crate::Error;

/// Limits on brute-force enumeration. Exceeding one is an error, never a
/// silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guard {
    pub max_genus: usize,
    pub max_prime: u32,
    /// Upper bound on the number of candidate matrices an enumeration may
    /// visit.
    pub max_candidates: u64,
}

impl Default for Guard {
    fn default() -> Self {
        Guard {
            max_genus: 3,
            max_prime: MAX_PRIME,
            max_candidates: 1_000_000,
        }
    }
}

impl Guard {
    fn check(&self, g: usize, p: u32, candidates: u64, what: &str) -> Result<(), Error> {
        if g == 0 {
            return Err(Error::InvalidArgument(String::from(
                "genus must be at least 1",
            )));
        }
        if g > self.max_genus {
            return Err(Error::ResourceGuard(format!(
                "{what}: genus {g} exceeds limit {}",
                self.max_genus
            )));
        }
        if p > self.max_prime {
            return Err(Error::ResourceGuard(format!(
                "{what}: prime {p} exceeds limit {}",
                self.max_prime
            )));
        }
        if candidates > self.max_candidates {
            return Err(Error::ResourceGuard(format!(
                "{what}: {candidates} candidates at g={g}, p={p} exceed limit {}",
                self.max_candidates
            )));
        }
        Ok(())
    }
}

/// `Π_{i=1}^{g} (p^i + 1)`, the number of Lagrangians in `F_p^{2g}`.
pub fn lagrangian_count(g: usize, p: u32) -> u64 {
    (1..=g as u32).map(|i| (p as u64).pow(i) + 1).product()
}

/// `(#Lagrangians)² · |GL_g(F_p)|`.
pub fn zip_count(g: usize, p: u32) -> u64 {
    let q = p as u64;
    let gl: u64 = (0..g as u32).map(|i| q.pow(g as u32) - q.pow(i)).product();
    lagrangian_count(g, p).pow(2) * gl
}

/// All Lagrangians, each exactly once, sorted by canonical basis.
///
/// Every Lagrangian is the graph of a symmetric matrix over one of the `2^g`
/// coordinate Lagrangians, so the charts are enumerated and deduplicated.
#[allow(clippy::needless_range_loop)]
pub fn enumerate_lagrangians(
    space: &SymplecticSpace,
    guard: &Guard,
) -> Result<Vec<Subspace>, Error> {
    let g = space.genus();
    let f = *space.field();
    let p = f.p();
    let sym_entries = (g * (g + 1) / 2) as u32;
    let candidates = (1u64 << g) * (p as u64).pow(sym_entries);
    guard.check(g, p, candidates, "lagrangian enumeration")?;

    let n = 2 * g;
    let mut seen = BTreeSet::new();
    let minus_one = f.neg(1);
    for chart in 0u32..(1 << g) {
        // a_i = f_i if bit i set else e_i; b_i the dual partner with <a_i, b_i> = 1
        let (a, b): (Vec<Vec<u8>>, Vec<Vec<u8>>) = (0..g)
            .map(|i| {
                let mut a = vec![0u8; n];
                let mut b = vec![0u8; n];
                if chart >> i & 1 == 1 {
                    a[g + i] = 1;
                    b[i] = minus_one;
                } else {
                    a[i] = 1;
                    b[g + i] = 1;
                }
                (a, b)
            })
            .unzip();
        let mut entries = vec![0u8; sym_entries as usize];
        loop {
            let mut sym = vec![vec![0u8; g]; g];
            let mut k = 0;
            for i in 0..g {
                for j in i..g {
                    sym[i][j] = entries[k];
                    sym[j][i] = entries[k];
                    k += 1;
                }
            }
            let rows: Vec<Vec<u8>> = (0..g)
                .map(|i| {
                    let mut v = a[i].clone();
                    for j in 0..g {
                        for c in 0..n {
                            v[c] = f.add(v[c], f.mul(sym[i][j], b[j][c]));
                        }
                    }
                    v
                })
                .collect();
            seen.insert(Subspace::span(&FpMatrix::from_rows(n, &rows), &f));
            if !increment(&mut entries, p as u8) {
                break;
            }
        }
    }
    let out: Vec<Subspace> = seen.into_iter().collect();
    if let Some(bad) = out.iter().find(|l| !space.is_lagrangian(l)) {
        return Err(Error::Verification(format!(
            "non-Lagrangian chart output {:?}",
            bad.basis()
        )));
    }
    let want = lagrangian_count(g, p);
    if out.len() as u64 != want {
        return Err(Error::Verification(format!(
            "found {} Lagrangians at g={g}, p={p}, expected {want}",
            out.len()
        )));
    }
    Ok(out)
}

/// Mixed-radix counter; returns `false` after wrapping to all zeros.
fn increment(digits: &mut [u8], base: u8) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Invertible `g × g` matrices over the field.
pub fn general_linear(g: usize, f: &PrimeField) -> Vec<FpMatrix> {
    let mut out = Vec::new();
    let mut entries = vec![0u8; g * g];
    loop {
        let m = FpMatrix::from_data(g, g, entries.clone());
        if m.rank(f) == g {
            out.push(m);
        }
        if !increment(&mut entries, f.p() as u8) {
            break;
        }
    }
    out
}

/// A zip on the standard symplectic space of genus `g`: a rank-`g`
/// endomorphism with Lagrangian kernel and image.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Zip {
    matrix: FpMatrix,
}

impl Zip {
    pub fn new(space: &SymplecticSpace, matrix: FpMatrix) -> Result<Self, Error> {
        let n = space.dim();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::InvalidArgument(format!(
                "zip matrix must be {n}x{n}"
            )));
        }
        if !Zip::is_valid(space, &matrix) {
            return Err(Error::InvalidArgument(String::from(
                "kernel and image must both be Lagrangian",
            )));
        }
        Ok(Zip { matrix })
    }

    fn is_valid(space: &SymplecticSpace, m: &FpMatrix) -> bool {
        let f = space.field();
        if m.rank(f) != space.genus() {
            return false;
        }
        let image = Subspace::span(&m.transpose(), f);
        if !space.is_isotropic(&image) {
            return false;
        }
        let kernel = Subspace::span(&m.nullspace(f), f);
        space.is_isotropic(&kernel)
    }

    /// Builds the zip with kernel `l1`, image `l2` and `H/l1 → l2` given by
    /// `iso` in the bases (standard complement of `l1`, canonical basis of
    /// `l2`).
    pub fn from_triple(
        space: &SymplecticSpace,
        l1: &Subspace,
        l2: &Subspace,
        iso: &FpMatrix,
    ) -> Result<Self, Error> {
        let f = space.field();
        let n = space.dim();
        let g = space.genus();
        let complement = standard_complement(l1, f);
        // columns: basis of l1, then the complement
        let mut p = FpMatrix::zeros(n, n);
        for (k, v) in (0..g)
            .map(|i| l1.basis().row(i).to_vec())
            .chain(complement.iter().cloned())
            .enumerate()
        {
            for (i, &x) in v.iter().enumerate() {
                p.set(i, k, x);
            }
        }
        let p_inv = p
            .inverse(f)
            .ok_or_else(|| Error::Verification(String::from("complement is not complementary")))?;
        let l2_cols = l2.basis().transpose();
        let block = l2_cols.mul(iso, f);
        let mut fp = FpMatrix::zeros(n, n);
        for i in 0..n {
            for k in 0..g {
                fp.set(i, g + k, block.get(i, k));
            }
        }
        Zip::new(space, fp.mul(&p_inv, f))
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }

    pub fn genus(&self) -> usize {
        self.matrix.rows() / 2
    }

    pub fn kernel(&self, f: &PrimeField) -> Subspace {
        Subspace::span(&self.matrix.nullspace(f), f)
    }

    pub fn image(&self, f: &PrimeField) -> Subspace {
        Subspace::span(&self.matrix.transpose(), f)
    }

    /// `(L1, L2, φ)` with `φ` in the bases used by [`Zip::from_triple`].
    pub fn triple(&self, f: &PrimeField) -> (Subspace, Subspace, FpMatrix) {
        let l1 = self.kernel(f);
        let l2 = self.image(f);
        let g = self.genus();
        let (_, pivots) = l2.basis().rref(f);
        let complement = standard_complement(&l1, f);
        let mut iso = FpMatrix::zeros(g, g);
        for (k, c) in complement.iter().enumerate() {
            let img = self.matrix.apply(c, f);
            for (i, &pc) in pivots.iter().enumerate() {
                iso.set(i, k, img[pc]);
            }
        }
        (l1, l2, iso)
    }

    /// `s F s⁻¹`.
    pub fn conjugate(&self, s: &FpMatrix, s_inv: &FpMatrix, f: &PrimeField) -> Zip {
        Zip {
            matrix: s.mul(&self.matrix, f).mul(s_inv, f),
        }
    }
}

/// Unit vectors at the non-pivot columns of a subspace's canonical basis.
fn standard_complement(u: &Subspace, f: &PrimeField) -> Vec<Vec<u8>> {
    let n = u.ambient();
    let (_, pivots) = u.basis().rref(f);
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|c| {
            let mut v = vec![0u8; n];
            v[c] = 1;
            v
        })
        .collect()
}

/// Every zip on `F_p^{2g}`, sorted; the count is checked against
/// `(#Lagrangians)² · |GL_g|`.
pub fn enumerate_zips(space: &SymplecticSpace, guard: &Guard) -> Result<Vec<Zip>, Error> {
    let g = space.genus();
    let f = *space.field();
    guard.check(g, f.p(), zip_count(g, f.p()), "zip enumeration")?;
    let lags = enumerate_lagrangians(space, guard)?;
    let gl = general_linear(g, &f);
    let mut out = Vec::with_capacity(zip_count(g, f.p()) as usize);
    for l1 in &lags {
        for l2 in &lags {
            for a in &gl {
                out.push(Zip::from_triple(space, l1, l2, a)?);
            }
        }
    }
    out.sort();
    let before = out.len();
    out.dedup();
    let want = zip_count(g, f.p());
    if out.len() != before || out.len() as u64 != want {
        return Err(Error::Verification(format!(
            "zip enumeration produced {} distinct of {before}, expected {want}",
            out.len()
        )));
    }
    Ok(out)
}

/// Stable rank of `F`, i.e. `rank F^{2g}`.
pub fn p_rank(zip: &Zip, f: &PrimeField) -> usize {
    zip.matrix.pow(2 * zip.genus() as u32, f).rank(f)
}

/// Isomorphism invariant of a zip.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ZipInvariant {
    pub genus: usize,
    /// Dimensions of the descending chain `C` (Hodge side).
    pub descending: Vec<usize>,
    /// Dimensions of the ascending chain `D` (conjugate side).
    pub ascending: Vec<usize>,
    /// `matrix[i][j] = dim(Cⁱ ∩ D_j)`.
    pub matrix: Vec<Vec<usize>>,
    /// For each member `U` of `C` (descending), `dim F(U)`.
    pub frobenius_dims: Vec<usize>,
    /// Elementary sequence `φ(1..g)`.
    pub elementary: Vec<usize>,
}

impl ZipInvariant {
    /// Canonical one-line serialization.
    pub fn canonical(&self) -> String {
        let join = |v: &[usize]| {
            v.iter()
                .map(|x| format!("{x}"))
                .collect::<Vec<_>>()
                .join(",")
        };
        let m: Vec<String> = self.matrix.iter().map(|r| join(r)).collect();
        format!(
            "g{};C{};D{};M{};F{}",
            self.genus,
            join(&self.descending),
            join(&self.ascending),
            m.join("/"),
            join(&self.frobenius_dims)
        )
    }

    /// Strict-partition label: a part `g + 1 - i` for every `i` where the
    /// elementary sequence stalls (`φ(i) = φ(i-1)`).
    pub fn eo_type(&self) -> EOType {
        let g = self.genus;
        let mut parts = Vec::new();
        let mut prev = 0;
        for (k, &v) in self.elementary.iter().enumerate() {
            let i = k + 1;
            if v == prev {
                parts.push((g + 1 - i) as u32);
            }
            prev = v;
        }
        EOType::new(g, parts).expect("elementary sequence yields a strict partition")
    }

    /// Largest `f` with `φ(f) = f`.
    pub fn p_rank(&self) -> usize {
        self.elementary
            .iter()
            .enumerate()
            .take_while(|(k, &v)| v == k + 1)
            .count()
    }
}

impl fmt::Display for ZipInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

/// Closure of `{0, H}` under the given operations, as a chain sorted by
/// dimension. Saturation is capped at `4g` rounds.
fn saturate(
    space: &SymplecticSpace,
    ops: &dyn Fn(&Subspace) -> [Subspace; 2],
) -> Result<Vec<Subspace>, Error> {
    let n = space.dim();
    let cap = 4 * space.genus();
    let mut all: BTreeSet<Subspace> = BTreeSet::from([Subspace::zero(n), Subspace::whole(n)]);
    let mut frontier: Vec<Subspace> = all.iter().cloned().collect();
    let mut rounds = 0;
    while !frontier.is_empty() {
        rounds += 1;
        if rounds > cap {
            return Err(Error::Verification(format!(
                "filtration did not stabilize within {cap} rounds"
            )));
        }
        let mut next = Vec::new();
        for u in &frontier {
            for v in ops(u) {
                if !all.contains(&v) {
                    all.insert(v.clone());
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    let mut chain: Vec<Subspace> = all.into_iter().collect();
    chain.sort_by_key(Subspace::dim);
    let f = space.field();
    for w in chain.windows(2) {
        if w[0].dim() == w[1].dim() || !w[1].contains(&w[0], f) {
            return Err(Error::Verification(String::from(
                "canonical filtration is not a chain",
            )));
        }
    }
    Ok(chain)
}

pub fn zip_invariant(space: &SymplecticSpace, zip: &Zip) -> Result<ZipInvariant, Error> {
    let f = *space.field();
    let m = &zip.matrix;
    let g = space.genus();
    let c_chain = saturate(space, &|u| [u.preimage(m, &f), space.perp(u)])?;
    let d_chain = saturate(space, &|u| [u.image(m, &f), space.perp(u)])?;

    let descending: Vec<usize> = c_chain.iter().rev().map(Subspace::dim).collect();
    let ascending: Vec<usize> = d_chain.iter().map(Subspace::dim).collect();
    let matrix = c_chain
        .iter()
        .rev()
        .map(|c| d_chain.iter().map(|d| c.intersect(d, &f).dim()).collect())
        .collect();
    let frobenius_dims = c_chain.iter().rev().map(|c| c.image(m, &f).dim()).collect();

    // ψ(dim U) = dim V(U) with V the adjoint of F: V(U) = (F⁻¹(U^⊥))^⊥
    let mut psi: Vec<Option<usize>> = vec![None; 2 * g + 1];
    for u in &c_chain {
        let v = space.perp(&space.perp(u).preimage(m, &f));
        psi[u.dim()] = Some(v.dim());
    }
    let mut known: Vec<(usize, usize)> = psi
        .iter()
        .enumerate()
        .filter_map(|(i, x)| x.map(|v| (i, v)))
        .collect();
    known.sort();
    let mut full = vec![0usize; 2 * g + 1];
    for w in known.windows(2) {
        let ((a, pa), (b, pb)) = (w[0], w[1]);
        if pb == pa {
            for item in full.iter_mut().take(b + 1).skip(a) {
                *item = pa;
            }
        } else if pb - pa == b - a {
            for (i, item) in full.iter_mut().enumerate().take(b + 1).skip(a) {
                *item = pa + (i - a);
            }
        } else {
            return Err(Error::Verification(format!(
                "canonical type jumps by {} over a step of {}",
                pb - pa,
                b - a
            )));
        }
    }
    if full[2 * g] != g {
        return Err(Error::Verification(String::from(
            "adjoint has rank different from g",
        )));
    }
    Ok(ZipInvariant {
        genus: g,
        descending,
        ascending,
        matrix,
        frobenius_dims,
        elementary: full[1..=g].to_vec(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassReport {
    pub invariant: ZipInvariant,
    pub eo_type: EOType,
    pub points: usize,
    /// Sizes of the `Sp_{2g}(F_p)`-orbits inside the class, decreasing.
    pub orbits: Vec<usize>,
    pub p_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    pub g: usize,
    pub p: u32,
    pub zip_count: usize,
    /// Sorted by codimension of the label.
    pub classes: Vec<ClassReport>,
    pub orbit_count: usize,
    /// The invariant is constant on every orbit.
    pub invariant_constant_on_orbits: bool,
    /// Matrix p-rank agrees with the p-rank read off the invariant.
    pub p_rank_consistent: bool,
}

impl OrbitReport {
    pub fn distinct_invariants(&self) -> usize {
        self.classes.len()
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb) as usize] = ra.min(rb);
        }
    }
}

/// Orbits of `Sp_{2g}(F_p)` on all zips (by conjugation, via union-find over
/// generator moves) and the invariant classes they fall into.
pub fn orbit_decomposition(g: usize, p: u32, guard: &Guard) -> Result<OrbitReport, Error> {
    let field = PrimeField::new(p)?;
    let space = SymplecticSpace::new(g, field);
    let zips = enumerate_zips(&space, guard)?;
    let gens = space.generators();
    let mut uf = UnionFind::new(zips.len());
    for (i, z) in zips.iter().enumerate() {
        for (s, s_inv) in &gens {
            let moved = z.conjugate(s, s_inv, &field);
            let j = zips.binary_search(&moved).map_err(|_| {
                Error::Verification(String::from("conjugate of a zip is not a zip"))
            })?;
            uf.union(i as u32, j as u32);
        }
    }
    let mut orbit_inv: BTreeMap<u32, ZipInvariant> = BTreeMap::new();
    let mut orbit_size: BTreeMap<u32, usize> = BTreeMap::new();
    let mut constant = true;
    let mut p_rank_consistent = true;
    let mut class_points: BTreeMap<ZipInvariant, (usize, usize)> = BTreeMap::new();
    for (i, z) in zips.iter().enumerate() {
        let inv = zip_invariant(&space, z)?;
        let root = uf.find(i as u32);
        *orbit_size.entry(root).or_default() += 1;
        match orbit_inv.get(&root) {
            Some(prev) if prev != &inv => constant = false,
            Some(_) => {}
            None => {
                orbit_inv.insert(root, inv.clone());
            }
        }
        let pr = p_rank(z, &field);
        if pr != inv.p_rank() {
            p_rank_consistent = false;
        }
        class_points.entry(inv).or_insert((0, pr)).0 += 1;
    }
    let mut classes: Vec<ClassReport> = class_points
        .into_iter()
        .map(|(invariant, (points, p_rank))| {
            let mut orbits: Vec<usize> = orbit_inv
                .iter()
                .filter(|(_, inv)| **inv == invariant)
                .map(|(root, _)| orbit_size[root])
                .collect();
            orbits.sort_unstable_by(|a, b| b.cmp(a));
            ClassReport {
                eo_type: invariant.eo_type(),
                invariant,
                points,
                orbits,
                p_rank,
            }
        })
        .collect();
    classes.sort_by(|a, b| {
        a.eo_type
            .codimension()
            .cmp(&b.eo_type.codimension())
            .then_with(|| a.eo_type.cmp(&b.eo_type))
    });
    Ok(OrbitReport {
        g,
        p,
        zip_count: zips.len(),
        classes,
        orbit_count: orbit_size.len(),
        invariant_constant_on_orbits: constant,
        p_rank_consistent,
    })
}

/// Coordinate maps for the standard isotropic subspace `I = <e1..er>`:
/// `H' = I^⊥/I` is identified with `<e_{r+1}..e_g, f_{r+1}..f_g>`.
#[derive(Clone, Copy, Debug)]
pub struct IsotropicReduction {
    pub g: usize,
    pub r: usize,
}

impl IsotropicReduction {
    pub fn new(g: usize, r: usize) -> Result<Self, Error> {
        if r == 0 || r >= g {
            return Err(Error::InvalidArgument(format!(
                "need 1 <= r <= g-1, got r={r}, g={g}"
            )));
        }
        Ok(IsotropicReduction { g, r })
    }

    /// Coordinate in `H` of the `k`-th basis vector of `H'`.
    pub fn lift_coord(&self, k: usize) -> usize {
        let h = self.g - self.r;
        if k < h {
            self.r + k
        } else {
            k - h + self.g + self.r
        }
    }

    fn in_i(&self, c: usize) -> bool {
        c < self.r
    }

    /// Coordinates of `f_1..f_r`, spanning a complement of `I^⊥`.
    fn is_f_low(&self, c: usize) -> bool {
        c >= self.g && c < self.g + self.r
    }

    /// `F(I) = 0`, `F(I^⊥) ⊆ I^⊥`, and `F` induces the identity on `H/I^⊥`.
    pub fn contains(&self, zip: &Zip) -> bool {
        let m = zip.matrix();
        let n = 2 * self.g;
        for c in 0..n {
            for row in 0..n {
                let v = m.get(row, c);
                if self.in_i(c) {
                    if v != 0 {
                        return false;
                    }
                } else if self.is_f_low(c) {
                    if self.is_f_low(row) && v != u8::from(row == c) {
                        return false;
                    }
                } else if self.is_f_low(row) && v != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// The zip induced on `I^⊥/I`.
    pub fn induced_zip(&self, zip: &Zip, field: &PrimeField) -> Result<Zip, Error> {
        if zip.genus() != self.g || !self.contains(zip) {
            return Err(Error::InvalidArgument(String::from(
                "zip does not preserve the isotropic flag",
            )));
        }
        let h = 2 * (self.g - self.r);
        let mut m = FpMatrix::zeros(h, h);
        for k in 0..h {
            for l in 0..h {
                m.set(
                    k,
                    l,
                    zip.matrix().get(self.lift_coord(k), self.lift_coord(l)),
                );
            }
        }
        let sub = SymplecticSpace::new(self.g - self.r, *field);
        Zip::new(&sub, m)
            .map_err(|_| Error::Verification(String::from("induced endomorphism is not a zip")))
    }

    /// `z'` padded by zero on `I` and the identity `f_i ↦ f_i`.
    pub fn pad(&self, lower: &Zip, field: &PrimeField) -> Result<Zip, Error> {
        let n = 2 * self.g;
        let h = 2 * (self.g - self.r);
        let mut m = FpMatrix::zeros(n, n);
        for k in 0..h {
            for l in 0..h {
                m.set(
                    self.lift_coord(k),
                    self.lift_coord(l),
                    lower.matrix().get(k, l),
                );
            }
        }
        for i in 0..self.r {
            m.set(self.g + i, self.g + i, 1);
        }
        Zip::new(&SymplecticSpace::new(self.g, *field), m)
    }
}

/// The zips of `Z(H, I)` grouped by the induced zip.
#[derive(Clone, Debug)]
pub struct IsotropicFamily {
    pub g: usize,
    pub r: usize,
    pub p: u32,
    pub lower: Vec<Zip>,
    /// `members[k]` are the lifts of `lower[k]`.
    pub members: Vec<Vec<Zip>>,
}

impl IsotropicFamily {
    pub fn zips(&self) -> impl Iterator<Item = &Zip> {
        self.members.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.members.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn fiber_sizes(&self) -> BTreeSet<usize> {
        self.members.iter().map(Vec::len).collect()
    }
}

/// All zips with `F(I) = 0`, `F(I^⊥) ⊆ I^⊥` and identity on `H/I^⊥`, for
/// the standard isotropic `I` of dimension `r`. Built by lifting every zip
/// of `I^⊥/I`; every candidate lift is validated as a zip.
pub fn zips_with_isotropic(
    g: usize,
    p: u32,
    r: usize,
    guard: &Guard,
) -> Result<IsotropicFamily, Error> {
    let red = IsotropicReduction::new(g, r)?;
    let field = PrimeField::new(p)?;
    let h = g - r;
    let q = p as u64;
    let lifts_per = q.pow((r * 2 * h) as u32) * q.pow((r * (2 * g - r)) as u32);
    guard.check(g, p, zip_count(h, p) * lifts_per, "isotropic family")?;

    let sub = SymplecticSpace::new(h, field);
    let space = SymplecticSpace::new(g, field);
    let lower = enumerate_zips(&sub, guard)?;
    let n = 2 * g;
    let perp_coords: Vec<usize> = (0..g).chain(g + r..n).collect();
    let free_per_lift = r * 2 * h + r * perp_coords.len();

    let mut members = Vec::with_capacity(lower.len());
    for z in &lower {
        let mut base = FpMatrix::zeros(n, n);
        for k in 0..2 * h {
            for l in 0..2 * h {
                base.set(red.lift_coord(k), red.lift_coord(l), z.matrix().get(k, l));
            }
        }
        for i in 0..r {
            base.set(g + i, g + i, 1);
        }
        let mut digits = vec![0u8; free_per_lift];
        let mut fiber = Vec::new();
        loop {
            let mut m = base.clone();
            let mut d = 0;
            // H'-columns pick up an element of I
            for k in 0..2 * h {
                let col = red.lift_coord(k);
                for i in 0..r {
                    m.set(i, col, digits[d]);
                    d += 1;
                }
            }
            // f_i columns pick up an element of I^⊥
            for i in 0..r {
                for &row in &perp_coords {
                    let v = field.add(m.get(row, g + i), digits[d]);
                    m.set(row, g + i, v);
                    d += 1;
                }
            }
            if Zip::is_valid(&space, &m) {
                fiber.push(Zip { matrix: m });
            }
            if !increment(&mut digits, p as u8) {
                break;
            }
        }
        members.push(fiber);
    }
    Ok(IsotropicFamily {
        g,
        r,
        p,
        lower,
        members,
    })
}

/// The map `invariant(induced zip) ↦ invariant(zip)` over `Z(H, I)(F_p)`.
#[derive(Clone, Debug)]
pub struct IotaDerivation {
    pub g: usize,
    pub r: usize,
    pub p: u32,
    pub points: usize,
    pub table: BTreeMap<ZipInvariant, ZipInvariant>,
    pub fiber_sizes: BTreeSet<usize>,
}

impl IotaDerivation {
    pub fn injective(&self) -> bool {
        let images: BTreeSet<&ZipInvariant> = self.table.values().collect();
        images.len() == self.table.len()
    }

    /// The table on strict-partition labels.
    pub fn eo_table(&self) -> Vec<(EOType, EOType)> {
        let mut out: Vec<(EOType, EOType)> = self
            .table
            .iter()
            .map(|(a, b)| (a.eo_type(), b.eo_type()))
            .collect();
        out.sort();
        out
    }
}

/// Derives `ι` empirically. Fails hard if the relation is not a function.
pub fn derive_iota(g: usize, r: usize, p: u32, guard: &Guard) -> Result<IotaDerivation, Error> {
    let family = zips_with_isotropic(g, p, r, guard)?;
    let field = PrimeField::new(p)?;
    let space = SymplecticSpace::new(g, field);
    let sub = SymplecticSpace::new(g - r, field);
    let red = IsotropicReduction::new(g, r)?;
    let mut table: BTreeMap<ZipInvariant, ZipInvariant> = BTreeMap::new();
    for (lower, fiber) in family.lower.iter().zip(&family.members) {
        let lower_inv = zip_invariant(&sub, lower)?;
        for z in fiber {
            if &red.induced_zip(z, &field)? != lower {
                return Err(Error::Verification(String::from(
                    "lift does not induce its parent zip",
                )));
            }
            let inv = zip_invariant(&space, z)?;
            match table.get(&lower_inv) {
                Some(prev) if prev != &inv => {
                    return Err(Error::Verification(format!(
                        "iota is not well defined: {} maps to both {} and {}",
                        lower_inv.eo_type(),
                        prev.eo_type(),
                        inv.eo_type()
                    )));
                }
                Some(_) => {}
                None => {
                    table.insert(lower_inv.clone(), inv);
                }
            }
        }
    }
    let out = IotaDerivation {
        g,
        r,
        p,
        points: family.len(),
        table,
        fiber_sizes: family.fiber_sizes(),
    };
    if !out.injective() {
        return Err(Error::Verification(String::from("iota is not injective")));
    }
    Ok(out)
}

/// Point counts of each invariant class for several primes.
#[derive(Clone, Debug)]
pub struct PointCounts {
    pub g: usize,
    pub primes: Vec<u32>,
    /// label → counts aligned with `primes`
    pub counts: BTreeMap<EOType, Vec<usize>>,
}

pub fn orbit_point_counts(g: usize, primes: &[u32], guard: &Guard) -> Result<PointCounts, Error> {
    if g > 2 {
        return Err(Error::ResourceGuard(String::from(
            "point counts are limited to g <= 2",
        )));
    }
    let mut counts: BTreeMap<EOType, Vec<usize>> = BTreeMap::new();
    for (k, &p) in primes.iter().enumerate() {
        let report = orbit_decomposition(g, p, guard)?;
        for c in report.classes {
            let e = counts
                .entry(c.eo_type)
                .or_insert_with(|| vec![0; primes.len()]);
            e[k] = c.points;
        }
    }
    Ok(PointCounts {
        g,
        primes: primes.to_vec(),
        counts,
    })
}
