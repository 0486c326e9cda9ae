mod common;

use std::sync::LazyLock;

use cancelkit::oracle::EqVerdict;
use cancelkit::{check_conditions, parse_presentation, Context, HalfInteger, Presentation, StripCertificate, Word};
use common::{pres, FREETRI, HEX, KLEIN, Z2};
use proptest::prelude::*;

static CONTEXTS: LazyLock<Vec<Context>> =
    LazyLock::new(|| [Z2, KLEIN, HEX, FREETRI].iter().map(|t| Context::new(&pres(t)).unwrap()).collect());

/// A context index paired with a word over that context's alphabet.
fn arb_case(max_len: usize) -> impl Strategy<Value = (usize, Word)> {
    (0..CONTEXTS.len()).prop_flat_map(move |i| {
        let alphabet = CONTEXTS[i].geometry().alphabet().to_vec();
        (Just(i), prop::collection::vec(prop::sample::select(alphabet), 0..=max_len))
            .prop_map(|(i, ls)| (i, Word::from_letters(ls)))
    })
}

fn arb_presentation() -> impl Strategy<Value = Presentation> {
    let relator = prop::collection::vec(prop::sample::select(vec!['a', 'A', 'b', 'B', 'c', 'C']), 2..7)
        .prop_map(|cs| cs.into_iter().collect::<String>());
    prop::collection::vec(relator, 1..4).prop_filter_map("relators must be cyclically reduced", |rels| {
        let text = format!("gens: a b c\n{}", rels.iter().map(|r| format!("rel: {r}\n")).collect::<String>());
        parse_presentation(&text).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn words_round_trip_through_text((_, x) in arb_case(16)) {
        let back: Word = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn reduction_is_geodesic_and_idempotent((i, x) in arb_case(12)) {
        let g = CONTEXTS[i].geometry();
        let (r, trail) = g.reduce_to_geodesic(&x);
        prop_assert!(g.is_geodesic(&r));
        prop_assert!(r.len() <= x.free_reduce().len());
        prop_assert!(trail.iter().all(|c| c.verify(g.symmetrized()).is_ok()));
        prop_assert_eq!(g.reduce_to_geodesic(&r).0, r.clone());
        prop_assert_eq!(g.geodesic_length(&x), r.len());
    }

    #[test]
    fn certificates_are_sound_and_serializable((i, x) in arb_case(12)) {
        let c = &CONTEXTS[i];
        if let Some(cert) = c.geometry().find_bad_subword(&x) {
            prop_assert!(cert.verify(c.geometry().symmetrized()).is_ok());
            prop_assert_eq!(cert.outer.len(), cert.replacement.len() + c.kind().length_drop());
            prop_assert_eq!(c.oracle().equal(&cert.outer, &cert.replacement), Ok(EqVerdict::Equal));
            let json = serde_json::to_string(&cert).unwrap();
            let back: StripCertificate = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(back, cert);
        } else {
            prop_assert_eq!(c.geometry().is_geodesic(&x), x.is_freely_reduced());
        }
    }

    #[test]
    fn geodesic_language_is_prefix_and_suffix_closed((i, x) in arb_case(14)) {
        let c = &CONTEXTS[i];
        let accepted = c.dfa().accepts(&x);
        prop_assert_eq!(accepted, c.geometry().is_geodesic(&x));
        if accepted {
            for k in 0..=x.len() {
                prop_assert!(c.dfa().accepts(&x.subword(0, k)));
                prop_assert!(c.dfa().accepts(&x.subword(k, x.len())));
            }
            prop_assert!(c.dfa().accepts(&x.inverse()));
        }
    }

    #[test]
    fn translation_numbers_are_bounded_half_integers((i, x) in arb_case(6)) {
        let c = &CONTEXTS[i];
        let t = c.translation_number(&x).unwrap();
        let rep = c.shortest_class_rep(&x).unwrap();
        // torsion-free: only the identity class has translation number zero
        prop_assert_eq!(t.twice == 0, rep.length == 0);
        prop_assert!(t.twice <= 2 * rep.length as u64);
        prop_assert!(t.twice >= rep.length as u64);
        prop_assert!(rep.rep.is_cyclically_reduced());
        prop_assert!(rep.rep.rotations().all(|v| c.geometry().is_geodesic(&v)));
    }

    #[test]
    fn half_integers_round_trip(twice in 0u64..1000) {
        let h = HalfInteger::from_twice(twice);
        prop_assert_eq!(h.to_string().parse::<HalfInteger>().unwrap(), h);
        let json = serde_json::to_string(&h).unwrap();
        prop_assert_eq!(json, format!("{{\"twice\":{twice}}}"));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn presentations_round_trip(p in arb_presentation()) {
        let back = parse_presentation(&p.to_string()).unwrap();
        prop_assert_eq!(back, p);
    }

    /// Conditions depend only on the symmetrized closure.
    #[test]
    fn conditions_ignore_relator_spelling(p in arb_presentation(), shift in 0usize..6, invert in any::<bool>()) {
        let rels: Vec<String> = p
            .relators()
            .iter()
            .map(|r| {
                let r = r.rotate(shift % r.len());
                if invert { r.inverse() } else { r }.to_string()
            })
            .collect();
        let text = format!("gens: a b c\n{}", rels.iter().map(|r| format!("rel: {r}\n")).collect::<String>());
        let q = parse_presentation(&text).unwrap();
        let (a, b) = (check_conditions(&p), check_conditions(&q));
        prop_assert_eq!(a.c_max, b.c_max);
        prop_assert_eq!(a.t_max, b.t_max);
        prop_assert_eq!(a.p_holds, b.p_holds);
        prop_assert_eq!(a.classification, b.classification);
    }
}
