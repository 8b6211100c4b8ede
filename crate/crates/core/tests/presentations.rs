mod common;

use conjgen_core::almost_cyclic::is_almost_cyclic;
use conjgen_core::catalog::build_catalog;
use conjgen_core::presentation::{
    analyze_one_relator, is_cyclic_abelianization, parse_presentation, zero_exponent_rewrite,
    Classification, Presentation,
};
use conjgen_core::snf::{smith_normal_form, IntMatrix};
use conjgen_core::words::{Alphabet, Word};
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-20i64..=20, c), r))
}

fn relator() -> impl Strategy<Value = Vec<i8>> {
    prop::collection::vec(prop::sample::select(vec![1i8, -1, 2, -2]), 1..20)
}

fn one_relator(letters: &[i8]) -> Presentation {
    Presentation::new(
        Alphabet::new(["t", "u"]).unwrap(),
        vec![common::to_word(letters)],
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_matches_minor_gcds(rows in matrix()) {
        let m = IntMatrix::from_rows(&rows, rows[0].len());
        let s = smith_normal_form(&m);
        prop_assert_eq!(&s.invariants, &common::invariant_factors(&rows));
        prop_assert_eq!(s.left.mul(&m).mul(&s.right), s.diagonal);
    }

    #[test]
    fn abelianization_ignores_conjugation_and_inversion(l in relator(), c in relator()) {
        let p = one_relator(&l);
        let w = &p.relators()[0];
        let conj = common::to_word(&c);
        let alphabet = p.alphabet().clone();
        let conjugated = Presentation::new(alphabet.clone(), vec![w.conjugate(&conj)]).unwrap();
        let inverted = Presentation::new(alphabet, vec![w.inverse()]).unwrap();
        prop_assert_eq!(conjugated.abelianization(), p.abelianization());
        prop_assert_eq!(inverted.abelianization(), p.abelianization());
    }

    #[test]
    fn rewrite_round_trip(l in relator()) {
        let p = one_relator(&l);
        let rw = zero_exponent_rewrite(&p).unwrap();
        prop_assert_eq!(rw.presentation.abelianization(), p.abelianization());
        let again = zero_exponent_rewrite(&rw.presentation).unwrap();
        prop_assert!(again.moves.is_empty());
    }

    #[test]
    fn verdicts_are_stable_under_their_own_rewrite(l in relator()) {
        let p = one_relator(&l);
        let v = analyze_one_relator(&p).unwrap();
        prop_assert_ne!(v.classification, Classification::CyclicCertified);
        if let Some(t) = &v.transformed {
            prop_assert_eq!(analyze_one_relator(t).unwrap().classification, v.classification);
        }
        let last = &v.justification.last().unwrap().rule;
        let expected = match last.as_str() {
            "proper_power" => Classification::FiniteCyclicIfAlmostCyclic,
            "abelianization" => Classification::NotAlmostCyclic,
            _ => Classification::CyclicIfAlmostCyclic,
        };
        prop_assert_eq!(v.classification, expected);
    }
}

/// Presentations of catalog groups, paired by name.
const KNOWN: &[(&str, &str)] = &[
    ("Z1", "< t | t >"),
    ("Z6", "< t | t^6 >"),
    ("Z12", "< t | t^12 >"),
    ("Z2xZ2", "< a, b | a^2, b^2, a b a^-1 b^-1 >"),
    ("Z2xZ4", "< a, b | a^2, b^4, a b a^-1 b^-1 >"),
    ("Z3xZ3", "< a, b | a^3, b^3, a b a^-1 b^-1 >"),
    (
        "Z2xZ2xZ2",
        "< a, b, c | a^2, b^2, c^2, a b a^-1 b^-1, a c a^-1 c^-1, b c b^-1 c^-1 >",
    ),
    ("S3", "< a, b | a^3, b^2, b a b^-1 a >"),
    ("D4", "< a, b | a^4, b^2, b a b^-1 a >"),
    ("D5", "< a, b | a^5, b^2, b a b^-1 a >"),
    ("D6", "< a, b | a^6, b^2, b a b^-1 a >"),
    ("Q8", "< i, j | i^4, i^2 j^-2, j i j^-1 i >"),
    ("A4", "< a, b | a^2, b^3, (a b)^3 >"),
    ("S4", "< a, b | a^2, b^3, (a b)^4 >"),
    ("Z7:Z3", "< a, b | a^7, b^3, b a b^-1 a^-2 >"),
];

#[test]
fn abelianizations_of_catalog_groups() {
    let catalog = build_catalog(24).unwrap();
    for (name, text) in KNOWN {
        let g = &catalog
            .iter()
            .find(|e| e.name == *name)
            .unwrap_or_else(|| panic!("{name}"))
            .group;
        let inv = parse_presentation(text).unwrap().abelianization();
        assert_eq!(inv.free_rank, 0, "{name}");
        let order: i64 = inv.torsion.iter().product();
        let derived = g.commutator_subgroup();
        assert_eq!(order as usize, derived.index(), "{name}: |G/[G,G]|");
        let q = g.quotient(&derived).unwrap();
        assert_eq!(
            is_cyclic_abelianization(&inv),
            q.group.is_cyclic().is_some(),
            "{name}"
        );
        // a noncyclic abelianization rules out almost cyclic
        if !is_cyclic_abelianization(&inv) {
            assert!(!is_almost_cyclic(g), "{name}");
        }
    }
}

#[test]
fn ladder_examples() {
    let v = |t: &str| {
        analyze_one_relator(&parse_presentation(t).unwrap())
            .unwrap()
            .classification
    };
    assert_eq!(v("< t | t^5 >"), Classification::SingleGenerator);
    assert_eq!(v("< t, u | >"), Classification::NotAlmostCyclic);
    assert_eq!(
        v("< a, b, c | a b a^-1 b^-1 >"),
        Classification::NotAlmostCyclic
    );
    assert_eq!(
        v("< t, u | (t u)^3 >"),
        Classification::FiniteCyclicIfAlmostCyclic
    );
    assert_eq!(
        v("< t, u | t u t^-1 u^-2 >"),
        Classification::CyclicIfAlmostCyclic
    );
    assert_eq!(
        v("< t, u | t^2 u^3 >"),
        Classification::CyclicIfAlmostCyclic
    );
    // Z x Z_2: cyclic abelianization fails, not a proper power
    assert_eq!(
        v("< t, u | t^2 u^2 t^-2 u^-2 >"),
        Classification::NotAlmostCyclic
    );
    assert!(analyze_one_relator(&parse_presentation("< t | t^2, t^3 >").unwrap()).is_err());
}

#[test]
fn verdict_json_shape() {
    let p = parse_presentation("< t, u | t^2 u^3 >").unwrap();
    let v: serde_json::Value = serde_json::to_value(analyze_one_relator(&p).unwrap()).unwrap();
    assert_eq!(v["classification"], "CyclicIfAlmostCyclic");
    let steps = v["justification"].as_array().unwrap();
    assert!(steps
        .iter()
        .all(|s| s["rule"].is_string() && s["citation"].is_string() && s.get("data").is_some()));
    let transformed = v["transformed"].as_str().unwrap();
    let back = parse_presentation(transformed).unwrap();
    let r: &Word = &back.relators()[0];
    assert!(r.exponent_sum(0) == 0 || r.exponent_sum(1) == 0);
}
