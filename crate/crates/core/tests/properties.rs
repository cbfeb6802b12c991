mod common;

use proptest::prelude::*;

use common::*;
use lrslab::classify::classify_presentation;
use lrslab::format::{elem_to_string, parse_poly, parse_seq, poly_to_string};
use lrslab::lrs::{detect_period, PeriodicSeq, Recursion};
use lrslab::{make_field, Elem, Field, Poly};

const FIELDS: [(u64, u32); 7] = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (2, 3)];

fn field() -> impl Strategy<Value = Field> {
    (0..FIELDS.len()).prop_map(|i| make_field(FIELDS[i].0, FIELDS[i].1, None).unwrap())
}

fn elems(k: &Field, codes: &[u64]) -> Vec<Elem> {
    codes.iter().map(|&c| k.from_code(c % k.size()).unwrap()).collect()
}

fn field_and_window(max_len: usize) -> impl Strategy<Value = (Field, Vec<Elem>)> {
    (field(), prop::collection::vec(any::<u64>(), 1..=max_len)).prop_map(|(k, c)| {
        let w = elems(&k, &c);
        (k, w)
    })
}

fn poly(k: &Field, codes: &[u64]) -> Poly {
    Poly::from_elems(k, elems(k, codes))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms(k in field(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let [a, b, c]: [Elem; 3] = elems(&k, &[a, b, c]).try_into().unwrap();
        prop_assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
        prop_assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
        prop_assert_eq!(k.add(a, k.neg(a)), Elem::ZERO);
        prop_assert_eq!(k.pow(a, k.size()), a);
        if a != Elem::ZERO {
            prop_assert_eq!(k.mul(a, k.inv(a).unwrap()), Elem::ONE);
            prop_assert_eq!((k.size() - 1) % k.mul_order(a).unwrap(), 0);
        }
    }

    #[test]
    fn division_identity(k in field(), a in prop::collection::vec(any::<u64>(), 0..8), b in prop::collection::vec(any::<u64>(), 1..5)) {
        let (a, b) = (poly(&k, &a), poly(&k, &b));
        prop_assume!(!b.is_zero());
        let (q, r) = a.divmod(&b).unwrap();
        prop_assert_eq!(q.mul(&b).unwrap().add(&r).unwrap(), a.clone());
        prop_assert!(r.degree() < b.degree());
        let g = a.gcd(&b).unwrap();
        prop_assert!(g.divides(&a).unwrap() && g.divides(&b).unwrap());
    }

    #[test]
    fn minimal_recursion_matches_brute_force((k, w) in field_and_window(8)) {
        // the oracle runs on the given window, which may repeat a shorter period
        let f = PeriodicSeq::from_stream(&k, &w).unwrap().minimal_recursion();
        let divisors = divisors_x_m_minus_1(&k, w.len());
        prop_assert_eq!(&f, &brute_minimal_recursion(&k, &divisors, &w));
        prop_assert!(f.divides(&Poly::x_pow_minus_one(&k, w.len())).unwrap());
    }

    #[test]
    fn minimal_recursion_is_shift_and_scale_invariant((k, w) in field_and_window(10), d in 0i64..10, c in any::<u64>()) {
        let s = PeriodicSeq::from_stream(&k, &w).unwrap();
        let f = s.minimal_recursion();
        prop_assert_eq!(&s.shift(d).minimal_recursion(), &f);
        let c = k.from_code(c % (k.size() - 1) + 1).unwrap();
        prop_assert_eq!(&s.scale(c).unwrap().minimal_recursion(), &f);
    }

    #[test]
    fn iterated_window_satisfies_its_recursion(k in field(), c in prop::collection::vec(any::<u64>(), 1..4), seed in prop::collection::vec(any::<u64>(), 3)) {
        let mut c = elems(&k, &c);
        if c[0] == Elem::ZERO {
            c[0] = Elem::ONE;
        }
        c.push(Elem::ONE);
        let f = Poly::from_elems(&k, c);
        let d = f.degree().unwrap();
        let rec = Recursion::new(f.clone()).unwrap();
        let seed = &elems(&k, &seed)[..d];
        let per = detect_period(&rec, seed).unwrap() as usize;
        let mut w = seed.to_vec();
        w.extend(rec.iterate(seed, per.saturating_sub(d)).unwrap());
        w.truncate(per);
        prop_assert!(annihilates(&k, f.coeffs(), &w));
        let s = PeriodicSeq::new(&k, w).unwrap();
        prop_assert!(s.minimal_recursion().divides(&f).unwrap());
    }

    #[test]
    fn presentation_reports_agree_with_closure((k, w) in field_and_window(6)) {
        prop_assume!(w.iter().all(|&a| a != Elem::ZERO));
        let w = PeriodicSeq::from_stream(&k, &w).unwrap().window().to_vec();
        let mut sorted = w.clone();
        sorted.sort();
        let is_group = sorted.windows(2).all(|x| x[0] != x[1]) && closure(&k, &w) == sorted;
        let s = PeriodicSeq::new(&k, w.clone()).unwrap();
        let r = classify_presentation(&s, None).unwrap();
        prop_assert_eq!(r.group.is_some(), is_group);
        if is_group {
            prop_assert_eq!(r.is_cyclic(), is_cyclic_window(&k, &w));
        }
    }

    #[test]
    fn text_round_trips((k, w) in field_and_window(8), f in prop::collection::vec(any::<u64>(), 1..6)) {
        let text: Vec<String> = w.iter().map(|&a| elem_to_string(&k, a)).collect();
        prop_assert_eq!(parse_seq(&k, &text.join(",")).unwrap(), w);
        let f = poly(&k, &f);
        prop_assert_eq!(parse_poly(&k, &poly_to_string(&f)).unwrap(), f);
    }
}
