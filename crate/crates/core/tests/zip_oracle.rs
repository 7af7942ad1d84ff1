use std::collections::BTreeSet;

use proptest::prelude::*;
use taut_core::weyl::{iota_embedding, EOType};
use taut_core::zip_oracle::*;

fn space(g: usize, p: u32) -> SymplecticSpace {
    SymplecticSpace::new(g, PrimeField::new(p).unwrap())
}

fn all_vectors(n: usize, p: u32) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..p as u8).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

// Symplectic form written out by hand: <e_i, f_i> = 1.
fn omega(x: &[u8], y: &[u8], p: u32) -> u32 {
    let g = x.len() / 2;
    let mut s = 0u32;
    for i in 0..g {
        s += x[i] as u32 * y[g + i] as u32 + p * p - x[g + i] as u32 * y[i] as u32;
    }
    s % p
}

fn matvec(m: &[u8], n: usize, v: &[u8], p: u32) -> Vec<u8> {
    (0..n)
        .map(|i| {
            ((0..n)
                .map(|j| m[i * n + j] as u32 * v[j] as u32)
                .sum::<u32>()
                % p) as u8
        })
        .collect()
}

/// Zip test by listing vectors: kernel and image of size p^g, both isotropic.
fn brute_is_zip(m: &[u8], g: usize, p: u32, vecs: &[Vec<u8>]) -> bool {
    let n = 2 * g;
    let kernel: Vec<&Vec<u8>> = vecs
        .iter()
        .filter(|v| matvec(m, n, v, p).iter().all(|&x| x == 0))
        .collect();
    if kernel.len() != (p as usize).pow(g as u32) {
        return false;
    }
    let image: BTreeSet<Vec<u8>> = vecs.iter().map(|v| matvec(m, n, v, p)).collect();
    let iso = |s: &mut dyn Iterator<Item = &Vec<u8>>| {
        let s: Vec<&Vec<u8>> = s.collect();
        s.iter().all(|a| s.iter().all(|b| omega(a, b, p) == 0))
    };
    iso(&mut kernel.iter().copied()) && iso(&mut image.iter())
}

#[test]
fn lagrangian_counts() {
    let guard = Guard::default();
    for (g, p, want) in [(1, 2, 3), (2, 2, 15), (2, 3, 40), (1, 13, 14), (3, 2, 135)] {
        let lags = enumerate_lagrangians(&space(g, p), &guard).unwrap();
        assert_eq!(lags.len(), want, "g={g} p={p}");
        assert_eq!(lagrangian_count(g, p), want as u64);
    }
}

#[test]
fn lagrangians_match_pairwise_spans() {
    let guard = Guard::default();
    for (g, p) in [(1, 2), (1, 3), (2, 2), (2, 3)] {
        let sp = space(g, p);
        let f = *sp.field();
        let vecs = all_vectors(2 * g, p);
        let mut found = BTreeSet::new();
        if g == 1 {
            for v in &vecs {
                let s = Subspace::span(&FpMatrix::from_rows(2, std::slice::from_ref(v)), &f);
                if s.dim() == 1 {
                    found.insert(s);
                }
            }
        } else {
            for a in &vecs {
                for b in &vecs {
                    if omega(a, b, p) != 0 {
                        continue;
                    }
                    let s = Subspace::span(&FpMatrix::from_rows(4, &[a.clone(), b.clone()]), &f);
                    if s.dim() == 2 {
                        found.insert(s);
                    }
                }
            }
        }
        let charted: BTreeSet<Subspace> = enumerate_lagrangians(&sp, &guard)
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(found, charted, "g={g} p={p}");
    }
}

#[test]
fn zip_counts_match_closed_form_and_brute_force() {
    let guard = Guard::default();
    for (g, p, want) in [(1, 2, 9), (1, 3, 32), (1, 5, 144), (2, 2, 1350)] {
        assert_eq!(zip_count(g, p), want);
        let zips = enumerate_zips(&space(g, p), &guard).unwrap();
        assert_eq!(zips.len() as u64, want);

        let n = 2 * g;
        let vecs = all_vectors(n, p);
        let brute: Vec<Vec<u8>> = all_vectors(n * n, p)
            .into_iter()
            .filter(|m| brute_is_zip(m, g, p, &vecs))
            .collect();
        let ours: Vec<Vec<u8>> = zips.iter().map(|z| z.matrix().data().to_vec()).collect();
        let brute: BTreeSet<_> = brute.into_iter().collect();
        let ours: BTreeSet<_> = ours.into_iter().collect();
        assert_eq!(brute, ours, "g={g} p={p}");
    }
}

#[test]
fn triple_view_round_trips() {
    let sp = space(2, 3);
    let f = *sp.field();
    let zips = enumerate_zips(&sp, &Guard::default()).unwrap();
    for z in zips.iter().step_by(97) {
        let (l1, l2, iso) = z.triple(&f);
        assert!(sp.is_lagrangian(&l1) && sp.is_lagrangian(&l2));
        assert_eq!(&Zip::from_triple(&sp, &l1, &l2, &iso).unwrap(), z);
    }
}

#[test]
fn guard_rejects_large_inputs() {
    let guard = Guard::default();
    assert!(matches!(
        enumerate_zips(&space(4, 2), &guard),
        Err(taut_core::Error::ResourceGuard(_))
    ));
    assert!(matches!(
        PrimeField::new(17),
        Err(taut_core::Error::ResourceGuard(_))
    ));
    assert!(matches!(
        PrimeField::new(9),
        Err(taut_core::Error::NotPrime(9))
    ));
    let tight = Guard {
        max_candidates: 100,
        ..Guard::default()
    };
    assert!(matches!(
        enumerate_zips(&space(2, 2), &tight),
        Err(taut_core::Error::ResourceGuard(_))
    ));
}

#[test]
fn generators_give_the_whole_symplectic_group() {
    for (g, p) in [(1, 2), (1, 3), (2, 2), (2, 3)] {
        let sp = space(g, p);
        for (s, s_inv) in sp.generators() {
            assert!(sp.is_symplectic(&s));
            assert_eq!(s.mul(&s_inv, sp.field()), FpMatrix::identity(2 * g));
        }
        let order = sp.generated_group_order(100_000).unwrap();
        assert_eq!(order as u64, sp.group_order(), "g={g} p={p}");
    }
}

#[test]
fn isotropic_lines_form_one_orbit() {
    let sp = space(2, 2);
    let f = *sp.field();
    let gens = sp.generators();
    let start = Subspace::span(&FpMatrix::from_rows(4, &[sp.unit(0)]), &f);
    let mut seen = BTreeSet::from([start.clone()]);
    let mut stack = vec![start];
    while let Some(l) = stack.pop() {
        for (s, _) in &gens {
            let m = l.image(s, &f);
            if seen.insert(m.clone()) {
                stack.push(m);
            }
        }
    }
    let lines: BTreeSet<Subspace> = all_vectors(4, 2)
        .into_iter()
        .filter(|v| v.iter().any(|&x| x != 0))
        .map(|v| Subspace::span(&FpMatrix::from_rows(4, &[v]), &f))
        .filter(|l| sp.is_isotropic(l))
        .collect();
    assert_eq!(lines.len(), 15);
    assert_eq!(seen, lines);
}

#[test]
fn genus_one_classes() {
    let report = orbit_decomposition(1, 2, &Guard::default()).unwrap();
    assert_eq!(report.zip_count, 9);
    assert_eq!(report.orbit_count, 2);
    let sizes: Vec<usize> = report.classes.iter().map(|c| c.points).collect();
    assert_eq!(sizes, vec![6, 3]);
    assert_eq!(report.classes[0].eo_type, EOType::empty(1));
    assert_eq!(report.classes[0].p_rank, 1);
    assert_eq!(report.classes[1].eo_type, EOType::new(1, vec![1]).unwrap());
    assert_eq!(report.classes[1].p_rank, 0);
    assert!(report.invariant_constant_on_orbits);
}

#[test]
fn distinct_invariants_are_two_to_the_genus() {
    let guard = Guard::default();
    for (g, p) in [(1, 2), (1, 3), (1, 5), (2, 2), (2, 3)] {
        let r = orbit_decomposition(g, p, &guard).unwrap();
        assert_eq!(r.distinct_invariants(), 1 << g, "g={g} p={p}");
        assert!(r.invariant_constant_on_orbits);
        assert!(r.p_rank_consistent);
        let total: usize = r.classes.iter().map(|c| c.points).sum();
        assert_eq!(total, r.zip_count);
        for c in &r.classes {
            assert_eq!(c.orbits.iter().sum::<usize>(), c.points);
            let largest = c.eo_type.parts().first().copied().unwrap_or(0) as usize;
            assert_eq!(c.p_rank, g - largest);
        }
        let labels: BTreeSet<EOType> = r.classes.iter().map(|c| c.eo_type.clone()).collect();
        assert_eq!(labels, EOType::all(g).into_iter().collect());
    }
}

#[test]
fn p_rank_histogram_genus_two() {
    let sp = space(2, 2);
    let f = *sp.field();
    let zips = enumerate_zips(&sp, &Guard::default()).unwrap();
    let ranks: BTreeSet<usize> = zips.iter().map(|z| p_rank(z, &f)).collect();
    assert_eq!(ranks, BTreeSet::from([0, 1, 2]));
    let r = orbit_decomposition(2, 2, &Guard::default()).unwrap();
    let open = &r.classes[0];
    assert_eq!(open.eo_type, EOType::empty(2));
    assert_eq!(open.p_rank, 2);
    assert!(r.classes[1..].iter().all(|c| c.p_rank < 2));
}

#[test]
fn projection_is_ordinary() {
    // projection onto <f1, f2> along <e1, e2>
    let sp = space(2, 5);
    let f = *sp.field();
    let mut m = FpMatrix::zeros(4, 4);
    m.set(2, 2, 1);
    m.set(3, 3, 1);
    let z = Zip::new(&sp, m).unwrap();
    let inv = zip_invariant(&sp, &z).unwrap();
    assert_eq!(inv.eo_type(), EOType::empty(2));
    assert_eq!(p_rank(&z, &f), 2);
    assert!(Zip::new(&sp, FpMatrix::identity(4)).is_err());
}

#[test]
fn kernel_equal_image_is_superspecial_in_genus_one() {
    let sp = space(1, 3);
    let f = *sp.field();
    let mut m = FpMatrix::zeros(2, 2);
    m.set(0, 1, 2);
    let z = Zip::new(&sp, m).unwrap();
    assert_eq!(z.kernel(&f), z.image(&f));
    assert_eq!(p_rank(&z, &f), 0);
    assert_eq!(
        zip_invariant(&sp, &z).unwrap().eo_type(),
        EOType::new(1, vec![1]).unwrap()
    );
}

#[test]
fn invariant_is_constant_on_exhaustive_genus_one_orbits() {
    let sp = space(1, 2);
    let f = *sp.field();
    let zips = enumerate_zips(&sp, &Guard::default()).unwrap();
    let group: Vec<FpMatrix> = all_vectors(4, 2)
        .into_iter()
        .map(|d| FpMatrix::from_data(2, 2, d))
        .filter(|s| sp.is_symplectic(s) && s.rank(&f) == 2)
        .collect();
    assert_eq!(group.len(), 6);
    for z in &zips {
        let inv = zip_invariant(&sp, z).unwrap();
        for s in &group {
            let moved = z.conjugate(s, &s.inverse(&f).unwrap(), &f);
            assert_eq!(zip_invariant(&sp, &moved).unwrap(), inv);
        }
    }
}

fn random_symplectic(sp: &SymplecticSpace, word: &[usize]) -> (FpMatrix, FpMatrix) {
    let f = sp.field();
    let gens = sp.generators();
    let mut s = FpMatrix::identity(sp.dim());
    let mut s_inv = FpMatrix::identity(sp.dim());
    for &k in word {
        let (a, a_inv) = &gens[k % gens.len()];
        s = s.mul(a, f);
        s_inv = a_inv.mul(&s_inv, f);
    }
    (s, s_inv)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn invariant_survives_random_conjugation(
        idx in 0usize..76800,
        word in proptest::collection::vec(0usize..64, 1..24),
    ) {
        let sp = space(2, 3);
        let f = *sp.field();
        let lags = enumerate_lagrangians(&sp, &Guard::default()).unwrap();
        let gl = general_linear(2, &f);
        let a = &gl[idx % gl.len()];
        let l1 = &lags[(idx / gl.len()) % lags.len()];
        let l2 = &lags[(idx / gl.len() / lags.len()) % lags.len()];
        let z = Zip::from_triple(&sp, l1, l2, a).unwrap();
        let (s, s_inv) = random_symplectic(&sp, &word);
        prop_assert!(sp.is_symplectic(&s));
        let moved = z.conjugate(&s, &s_inv, &f);
        prop_assert_eq!(zip_invariant(&sp, &z).unwrap(), zip_invariant(&sp, &moved).unwrap());
        prop_assert_eq!(p_rank(&z, &f), p_rank(&moved, &f));
    }
}

#[test]
fn isotropic_family_matches_filter_of_all_zips() {
    let guard = Guard::default();
    for p in [2, 3] {
        let sp = space(2, p);
        let red = IsotropicReduction::new(2, 1).unwrap();
        let filtered: BTreeSet<Zip> = enumerate_zips(&sp, &guard)
            .unwrap()
            .into_iter()
            .filter(|z| red.contains(z))
            .collect();
        let family = zips_with_isotropic(2, p, 1, &guard).unwrap();
        let lifted: BTreeSet<Zip> = family.zips().cloned().collect();
        assert_eq!(lifted.len(), family.len());
        assert_eq!(filtered, lifted, "p={p}");
    }
}

#[test]
fn isotropic_family_shape() {
    let guard = Guard::default();
    let p = 2;
    let f = PrimeField::new(p).unwrap();
    let sp = space(2, p);
    let red = IsotropicReduction::new(2, 1).unwrap();
    let family = zips_with_isotropic(2, p, 1, &guard).unwrap();
    assert!(!family.is_empty());
    // sandwiched: I ⊆ ker F ⊆ I^⊥
    let i = Subspace::span(&FpMatrix::from_rows(4, &[sp.unit(0)]), &f);
    let i_perp = sp.perp(&i);
    for z in family.zips() {
        let k = z.kernel(&f);
        assert!(k.contains(&i, &f) && i_perp.contains(&k, &f));
        assert!(red.induced_zip(z, &f).is_ok());
    }
    // constant fibers over every genus-one zip
    assert_eq!(family.lower.len(), 9);
    assert_eq!(family.fiber_sizes().len(), 1);
    let size = *family.fiber_sizes().iter().next().unwrap();
    assert!(size.is_power_of_two());
    assert!(matches!(
        IsotropicReduction::new(2, 2),
        Err(taut_core::Error::InvalidArgument(_))
    ));
    assert!(zips_with_isotropic(2, 2, 0, &guard).is_err());
}

#[test]
fn padding_is_a_section_of_reduction() {
    let f = PrimeField::new(3).unwrap();
    let red = IsotropicReduction::new(3, 1).unwrap();
    for z in enumerate_zips(&space(2, 3), &Guard::default())
        .unwrap()
        .iter()
        .step_by(131)
    {
        let big = red.pad(z, &f).unwrap();
        assert!(red.contains(&big));
        assert_eq!(&red.induced_zip(&big, &f).unwrap(), z);
    }
    let outside = Zip::new(&space(2, 3), {
        // projection onto <e1, e2>; does not kill e1
        let mut m = FpMatrix::zeros(4, 4);
        m.set(0, 0, 1);
        m.set(1, 1, 1);
        m
    })
    .unwrap();
    let red2 = IsotropicReduction::new(2, 1).unwrap();
    assert!(red2.induced_zip(&outside, &f).is_err());
}

fn labels(d: &IotaDerivation) -> Vec<(EOType, EOType)> {
    d.eo_table()
}

#[test]
fn iota_genus_two_is_prime_independent() {
    let guard = Guard::default();
    let a = derive_iota(2, 1, 2, &guard).unwrap();
    let b = derive_iota(2, 1, 3, &guard).unwrap();
    assert_eq!(a.table.len(), 2);
    assert!(a.injective() && b.injective());
    assert_eq!(labels(&a), labels(&b));
    let canon = |d: &IotaDerivation| -> Vec<(String, String)> {
        d.table
            .iter()
            .map(|(k, v)| (k.canonical(), v.canonical()))
            .collect()
    };
    assert_eq!(canon(&a), canon(&b));
    let codims: Vec<(u32, u32)> = labels(&a)
        .iter()
        .map(|(x, y)| (x.codimension(), y.codimension()))
        .collect();
    assert_eq!(codims, vec![(0, 0), (1, 1)]);
    for (src, dst) in labels(&a) {
        assert_eq!(iota_embedding(2, 1, &src).unwrap().0, dst);
    }
}

#[test]
fn iota_genus_three_matches_frozen_table_and_composes() {
    let guard = Guard::default();
    let one = derive_iota(3, 1, 2, &guard).unwrap();
    let two = derive_iota(3, 2, 2, &guard).unwrap();
    let step = derive_iota(2, 1, 2, &guard).unwrap();
    assert_eq!(one.table.len(), 4);
    assert_eq!(two.table.len(), 2);
    assert_eq!(one.fiber_sizes.len(), 1);
    assert_eq!(two.fiber_sizes.len(), 1);
    for (d, r) in [(&one, 1), (&two, 2)] {
        for (src, dst) in labels(d) {
            assert_eq!(src.codimension(), dst.codimension());
            assert_eq!(iota_embedding(3, r, &src).unwrap().0, dst);
        }
    }
    // g=3 -> g=1 directly equals g=3 -> g=2 after g=2 -> g=1
    for (src, dst) in labels(&two) {
        let (_, mid) = labels(&step).into_iter().find(|(a, _)| *a == src).unwrap();
        let (_, end) = labels(&one).into_iter().find(|(a, _)| *a == mid).unwrap();
        assert_eq!(end, dst);
    }
}

#[test]
fn point_counts_across_primes() {
    let counts = orbit_point_counts(1, &[2, 3, 5], &Guard::default()).unwrap();
    let ordinary = &counts.counts[&EOType::empty(1)];
    let special = &counts.counts[&EOType::new(1, vec![1]).unwrap()];
    assert_eq!(ordinary, &vec![6, 24, 120]);
    assert_eq!(special, &vec![3, 8, 24]);
    assert!(ordinary.iter().zip(special).all(|(a, b)| a > b));
    let two = orbit_point_counts(2, &[2], &Guard::default()).unwrap();
    assert_eq!(two.counts.values().map(|v| v[0]).sum::<usize>(), 1350);
    assert!(orbit_point_counts(3, &[2], &Guard::default()).is_err());
}
