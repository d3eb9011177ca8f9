use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_integer::Integer;
use proptest::prelude::*;

use surfsym::arith::{gcd, units};
use surfsym::classifier::{classify, classify_all, power_class};
use surfsym::epimorphism::{canonicalize, enumerate_epimorphisms};
use surfsym::extend::ExtensionType;
use surfsym::orbifold::{enumerate_quotient_signatures, orbifold_euler_characteristic};
use surfsym::{ActionClass, Character, CombinatorialCover, CyclicEpimorphism, Mode, OrbifoldSignature, Rational, SignedBidiagonalMap};

fn strict_classes() -> &'static [ActionClass] {
    static CLASSES: OnceLock<Vec<ActionClass>> = OnceLock::new();
    CLASSES.get_or_init(|| {
        let mut all = classify_all(2, Mode::Strict).unwrap();
        all.extend(classify_all(3, Mode::Strict).unwrap());
        all
    })
}

fn class_strategy() -> impl Strategy<Value = &'static ActionClass> {
    let classes = strict_classes();
    (0..classes.len()).prop_map(move |i| &classes[i])
}

/// A random admissible, not necessarily canonical, epimorphism of a random
/// strict class.
fn raw_epi_strategy() -> impl Strategy<Value = (u32, CyclicEpimorphism)> {
    (class_strategy(), any::<prop::sample::Index>()).prop_map(|(class, pick)| {
        let epis = enumerate_epimorphisms(class.signature(), class.order(), class.character(), Mode::Strict).unwrap();
        (class.genus(), pick.get(&epis).clone())
    })
}

/// Applies a unit and a permutation inside each block of equal cone index.
fn disguise(epi: &CyclicEpimorphism, unit: u32, shuffle: &[usize]) -> CyclicEpimorphism {
    let n = epi.order();
    let sig = epi.signature();
    let mut cones: Vec<u32> = epi.cone_images().iter().map(|&c| c * unit % n).collect();
    let indices = sig.cone_indices();
    let mut start = 0;
    while start < indices.len() {
        let end = start + indices[start..].iter().take_while(|&&q| q == indices[start]).count();
        let block = &mut cones[start..end];
        for (i, &s) in shuffle.iter().enumerate().take(block.len()) {
            block.swap(i, i + s % (block.len() - i));
        }
        start = end;
    }
    let crosscaps = epi.crosscap_images().iter().map(|&d| d * unit % n).collect();
    CyclicEpimorphism::new(sig.clone(), n, cones, crosscaps, Mode::Strict).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn canonical_form_is_idempotent((_, epi) in raw_epi_strategy()) {
        let c = canonicalize(&epi);
        prop_assert_eq!(canonicalize(&c), c);
    }

    #[test]
    fn canonical_form_ignores_units_and_block_order(
        (_, epi) in raw_epi_strategy(),
        unit_pick in any::<prop::sample::Index>(),
        shuffle in prop::collection::vec(0usize..8, 8),
    ) {
        let unit = *unit_pick.get(&units(epi.order()));
        let moved = disguise(&epi, unit, &shuffle);
        prop_assert_eq!(canonicalize(&moved), canonicalize(&epi));
    }

    #[test]
    fn every_admissible_datum_gives_the_surface((g, epi) in raw_epi_strategy()) {
        let cover = CombinatorialCover::from_epimorphism(&epi).unwrap();
        prop_assert!(cover.is_connected());
        prop_assert!(cover.is_orientable());
        prop_assert_eq!(cover.euler_characteristic(), 2 - 2 * g as i64);
    }

    #[test]
    fn fixed_points_depend_on_gcd(class in class_strategy(), d in 1u32..64) {
        let n = class.order();
        prop_assume!(d % n != 0);
        prop_assume!(class.character().power(d) == Character::Preserving);
        prop_assert_eq!(class.fixed_points(d).unwrap(), class.fixed_points(gcd(d, n)).unwrap());
    }

    #[test]
    fn powers_compose(class in class_strategy(), a in 1u32..30, b in 1u32..30) {
        let n = class.order();
        prop_assume!(a % n != 0 && (a * b) % n != 0);
        let first = power_class(class, a).unwrap();
        let twice = power_class(&first, b).unwrap();
        let once = power_class(class, a * b % n).unwrap();
        prop_assert_eq!(twice.epimorphism(), once.epimorphism());
    }

    #[test]
    fn power_fixed_points_match_the_power_class(class in class_strategy(), d in 1u32..30) {
        let n = class.order();
        prop_assume!(d % n != 0 && class.character().power(d) == Character::Preserving);
        let power = power_class(class, d).unwrap();
        prop_assert_eq!(power.fixed_points(1).unwrap(), class.fixed_points(d).unwrap());
    }

    #[test]
    fn bidiagonal_powers(g in prop::sample::select(vec![2u32, 4, 6]), a in 0u32..2, b in 0u32..2, k in 0u32..24, j in 1u32..40) {
        let word = format!("sigma^{a} rho^{b} tau^{k}");
        let map = SignedBidiagonalMap::from_word(&word, g).unwrap();
        let order = map.order();
        let power = map.pow(j);
        prop_assert_eq!(power.order(), order / gcd(order, j));
        if let (Ok(ty), Ok(pty)) = (map.map_type(g), power.map_type(g)) {
            prop_assert_eq!(pty, ty.power(j));
        }
    }
}

#[test]
fn riemann_hurwitz_holds_for_every_signature() {
    for g in 2..=3u32 {
        let target = Rational::from_integer(2 - 2 * g as i64);
        for n in 2..=24 {
            for character in Character::ALL {
                if character == Character::Reversing && n % 2 == 1 {
                    continue;
                }
                for sig in enumerate_quotient_signatures(g, n, character).unwrap() {
                    let chi = orbifold_euler_characteristic(&sig);
                    assert_eq!(chi * Rational::from_integer(n as i64), target, "{sig} at n={n}");
                    let generic: f64 = sig.euler_characteristic();
                    assert!((generic * n as f64 - (2.0 - 2.0 * g as f64)).abs() < 1e-12);
                }
            }
        }
    }
}

/// Independent count of orientation-preserving classes with a sphere
/// quotient: tuples of cone images of the right orders that sum to zero and
/// generate, up to units and reordering of equal-index cones.
fn sphere_class_count(sig: &OrbifoldSignature, n: u32) -> usize {
    let q = sig.cone_indices();
    let choices: Vec<Vec<u32>> = q.iter().map(|&qi| (1..n).filter(|&c| n / gcd(c, n) == qi).collect()).collect();
    let mut keys = BTreeSet::new();
    let mut tuple = vec![0u32; q.len()];
    fn walk(i: usize, choices: &[Vec<u32>], q: &[u32], n: u32, tuple: &mut Vec<u32>, keys: &mut BTreeSet<Vec<u32>>) {
        if i == choices.len() {
            if tuple.iter().sum::<u32>() % n != 0 || tuple.iter().fold(n, |acc, &c| acc.gcd(&c)) != 1 {
                return;
            }
            let key = units(n)
                .into_iter()
                .map(|u| {
                    let mut scaled: Vec<(u32, u32)> = q.iter().zip(tuple.iter()).map(|(&qi, &c)| (qi, c * u % n)).collect();
                    scaled.sort();
                    scaled.into_iter().map(|(_, c)| c).collect::<Vec<u32>>()
                })
                .min()
                .unwrap();
            keys.insert(key);
            return;
        }
        for &c in &choices[i] {
            tuple[i] = c;
            walk(i + 1, choices, q, n, tuple, keys);
        }
    }
    walk(0, &choices, q, n, &mut tuple, &mut keys);
    keys.len()
}

#[test]
fn sphere_quotient_counts_match_brute_force() {
    for g in 2..=3u32 {
        for n in 2..=24 {
            let classes = classify(g, n, Character::Preserving, Mode::Strict).unwrap();
            for sig in enumerate_quotient_signatures(g, n, Character::Preserving).unwrap() {
                if !(sig.is_orientable() && sig.genus_or_crosscaps() == 0) {
                    continue;
                }
                let ours = classes.iter().filter(|c| c.signature() == &sig).count();
                assert_eq!(ours, sphere_class_count(&sig, n), "g={g} n={n} {sig}");
            }
        }
    }
}

#[test]
fn genus_two_preserving_counts() {
    let expected = [(2, 2), (3, 1), (4, 1), (5, 1), (6, 2), (7, 0), (8, 1), (9, 0), (10, 1), (11, 0), (12, 0)];
    for (n, count) in expected {
        assert_eq!(classify(2, n, Character::Preserving, Mode::Strict).unwrap().len(), count, "n={n}");
    }
}

/// Relaxed data may break the parity test; the cover is orientable exactly
/// when the test holds.
#[test]
fn orientability_matches_parity() {
    let mut relaxed = 0;
    for g in 2..=3u32 {
        for n in (2..=16).step_by(2) {
            for sig in enumerate_quotient_signatures(g, n, Character::Reversing).unwrap() {
                for epi in enumerate_epimorphisms(&sig, n, Character::Reversing, Mode::Paper).unwrap() {
                    let cover = CombinatorialCover::from_epimorphism(&epi).unwrap();
                    assert_eq!(cover.is_orientable(), epi.strict_parity(), "{epi}");
                    relaxed += usize::from(!epi.strict_parity());
                }
            }
        }
    }
    assert!(relaxed > 0);
}

#[test]
fn extension_type_powers() {
    for ty in ExtensionType::ALL {
        assert_eq!(ty.power(2), ExtensionType::Pp);
        assert_eq!(ty.power(3), ty);
    }
}
