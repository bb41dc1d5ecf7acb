use num_integer::gcd;
use proptest::prelude::*;

use finis::characters::{character_table, inner_product, regular_character, ClassFunction, C64};
use finis::cli::{parse_group_spec, Action, GroupSpec};
use finis::coh::{abelianize, cobord, cohomology, Cochain, FinAbGroup, GModule};
use finis::ffgroups::{MatrixGroupSpec, MatrixKind};
use finis::perm::{cosets, PermGroup, Permutation, Side};
use finis::transfer::legendre_gauss;

fn perm_of(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn cycle_type(p: &Permutation) -> Vec<usize> {
    let mut t: Vec<usize> = p.cycles().iter().map(Vec::len).collect();
    t.sort_unstable();
    t
}

proptest! {
    #[test]
    fn composition_is_associative(a in perm_of(7), b in perm_of(7), c in perm_of(7)) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn inverse_and_order(a in perm_of(8)) {
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert!(a.pow(a.order() as i64).is_identity());
        prop_assert_eq!(a.pow(-1), a.inverse());
    }

    #[test]
    fn sign_is_multiplicative(a in perm_of(6), b in perm_of(6)) {
        prop_assert_eq!(a.compose(&b).sign(), a.sign() * b.sign());
    }

    #[test]
    fn conjugation_keeps_cycle_type(a in perm_of(7), x in perm_of(7)) {
        prop_assert_eq!(cycle_type(&x.conjugate(&a)), cycle_type(&a));
    }

    #[test]
    fn display_parses_back(a in perm_of(9)) {
        let text = a.to_string();
        prop_assert_eq!(Permutation::parse(&text, 9).unwrap(), a);
    }

    #[test]
    fn lagrange_and_coset_partition(a in perm_of(5), b in perm_of(5)) {
        let g = PermGroup::symmetric(5);
        let h = g.subgroup_generated(&[a, b]).unwrap();
        let n = h.order().unwrap();
        prop_assert_eq!(120 % n, 0);
        let cs = cosets(&g, &h, Side::Left).unwrap();
        prop_assert_eq!(cs.len() * n, 120);
    }

    #[test]
    fn legendre_is_multiplicative(a in 1i64..500, b in 1i64..500, pi in 0usize..8) {
        let p = [3u64, 5, 7, 11, 13, 101, 103, 199][pi];
        prop_assume!(a % p as i64 != 0 && b % p as i64 != 0);
        let l = |x| legendre_gauss(x, p).unwrap();
        prop_assert_eq!(l(a * b), l(a) * l(b));
    }
}

fn simple_spec() -> impl Strategy<Value = GroupSpec> {
    prop_oneof![
        (1usize..6).prop_map(GroupSpec::Symmetric),
        (3usize..6).prop_map(GroupSpec::Alternating),
        (1usize..13).prop_map(GroupSpec::Cyclic),
        (2usize..8).prop_map(GroupSpec::Dihedral),
        Just(GroupSpec::Quaternion),
        Just(GroupSpec::Klein),
        prop_oneof![
            Just(MatrixKind::GL),
            Just(MatrixKind::SL),
            Just(MatrixKind::PSL),
        ]
        .prop_map(|kind| GroupSpec::Matrix(MatrixGroupSpec { kind, n: 2, q: 3 })),
        (1usize..5).prop_map(|q| GroupSpec::Matrix(MatrixGroupSpec { kind: MatrixKind::AGL1, n: 1, q: [2, 3, 5, 7][q - 1] })),
    ]
}

/// Generator lists take their degree from the largest moved point.
fn perm_spec() -> impl Strategy<Value = GroupSpec> {
    (perm_of(6), perm_of(6)).prop_map(|(a, b)| {
        let show = |p: &Permutation| p.to_string();
        let (degree, generators) = finis::cli::parse_generators(&format!("{}, {}", show(&a), show(&b)), 0).unwrap();
        GroupSpec::Perm { degree, generators }
    })
}

fn group_spec() -> impl Strategy<Value = GroupSpec> {
    prop_oneof![
        3 => simple_spec(),
        1 => perm_spec(),
        1 => prop::collection::vec(simple_spec(), 2..4).prop_map(GroupSpec::Product),
        1 => (2u32..8, 1i64..7).prop_map(|(k, e)| GroupSpec::Semidirect {
            normal: Box::new(GroupSpec::Cyclic(k as usize)),
            acting: Box::new(GroupSpec::Cyclic(2)),
            action: Action::Power(vec![e]),
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn group_spec_round_trips(spec in group_spec()) {
        let text = spec.to_string();
        let back = parse_group_spec(&text).unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back, spec);
    }
}

const SMALL: [&str; 8] = ["C4", "Klein", "S3", "C6", "D4", "Q8", "A4", "D5"];

fn small_group(i: usize) -> PermGroup {
    parse_group_spec(SMALL[i]).unwrap().build().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn inner_product_is_bilinear(i in 0usize..8, xs in prop::collection::vec(-5f64..5.0, 10), ys in prop::collection::vec(-5f64..5.0, 10), t in -3f64..3.0) {
        let g = small_group(i);
        let ct = character_table(&g).unwrap();
        let k = ct.classes.len();
        let inv = finis::characters::inverse_classes(&g).unwrap();
        let f = ClassFunction::new(&ct.classes, (0..k).map(|c| C64::new(xs[c], ys[c])).collect()).unwrap();
        // h(s) = h(s⁻¹), so the pairing with h is symmetric
        let h = ClassFunction::from_real(&ct.classes, &(0..k).map(|c| xs[inv[c]] + xs[c]).collect::<Vec<_>>()).unwrap();
        let lhs = inner_product(&g, &f.add(&h.scale(t)).unwrap(), &h).unwrap();
        let rhs = inner_product(&g, &f, &h).unwrap() + inner_product(&g, &h, &h).unwrap() * t;
        prop_assert!((lhs - rhs).norm() < 1e-9);
        let fh = inner_product(&g, &f, &h).unwrap();
        let hf = inner_product(&g, &h, &f).unwrap();
        prop_assert!((fh - hf).norm() < 1e-9);
    }

    #[test]
    fn regular_character_multiplicities_are_degrees(i in 0usize..8) {
        let g = small_group(i);
        let ct = character_table(&g).unwrap();
        let coeffs = ct.decompose(&regular_character(&g).unwrap()).unwrap();
        for (c, d) in coeffs.iter().zip(&ct.degrees) {
            prop_assert!((c - C64::new(*d as f64, 0.0)).norm() < 1e-8);
        }
    }

    #[test]
    fn irreducibles_have_unit_norm(i in 0usize..8) {
        let g = small_group(i);
        let ct = character_table(&g).unwrap();
        for chi in ct.characters() {
            prop_assert!((inner_product(&g, &chi, &chi).unwrap() - C64::new(1.0, 0.0)).norm() < 1e-8);
        }
    }

    #[test]
    fn coboundaries_are_cocycles(i in 0usize..6, d in 2u64..6, seed in prop::collection::vec(0i64..6, 64)) {
        let g = small_group(i);
        let m = GModule::trivial(g.clone(), FinAbGroup::cyclic(d)).unwrap();
        let f = Cochain::from_fn(&m, 1, |idx| m.ab().element(&[seed[idx[0] % seed.len()]]));
        prop_assert!(cobord(&m, &cobord(&m, &f).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn h1_with_trivial_action_is_hom_from_abelianization(i in 0usize..8, d in 2u64..7) {
        let g = small_group(i);
        let m = GModule::trivial(g.clone(), FinAbGroup::cyclic(d)).unwrap();
        let ab = abelianize(&g).unwrap();
        let want: u64 = ab.group.invariant_factors().iter().map(|&e| gcd(e, d)).product();
        prop_assert_eq!(cohomology(&m, 1).unwrap().order(), want);
        prop_assert_eq!(cohomology(&m, 0).unwrap().order(), d);
    }
}
