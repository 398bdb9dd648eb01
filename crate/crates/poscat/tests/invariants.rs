//! Cross-module invariants checked over a small exhaustive corpus.

use poscat::diagram::DiagramSpec;
use poscat::enumerate::enumerate_categories;
use poscat::json::{parse_category, serialize_category};
use poscat::limits::{all_strict_limits, all_weak_limits};
use poscat::FinPosCategory;
use std::sync::LazyLock;

static CORPUS: LazyLock<Vec<FinPosCategory>> =
    LazyLock::new(|| enumerate_categories(2, 4).expect("within guard"));

fn generating_specs(c: &FinPosCategory) -> Vec<DiagramSpec> {
    let mut specs = vec![DiagramSpec::terminal()];
    for x in c.objects() {
        for y in c.objects() {
            specs.push(DiagramSpec::binary_product(x, y));
        }
    }
    for f in c.morphisms() {
        for g in c.morphisms() {
            if c.parallel(f, g) {
                specs.push(DiagramSpec::inserter(c, f, g).unwrap());
            }
            if c.cod(f) == c.cod(g) {
                specs.push(DiagramSpec::comma(c, f, g).unwrap());
            }
        }
    }
    specs
}

#[test]
fn weak_limits_of_one_spec_factor_through_each_other() {
    for c in CORPUS.iter() {
        for spec in generating_specs(c) {
            let weaks = all_weak_limits(c, &spec).unwrap();
            for a in &weaks {
                for b in &weaks {
                    let found = c.hom(a.cone.apex, b.cone.apex).iter().any(|&h| {
                        b.cone
                            .legs
                            .iter()
                            .zip(a.cone.legs.iter())
                            .all(|(&bl, &al)| c.comp(bl, h) == al)
                    });
                    assert!(found, "weak limits must mutually factor");
                }
            }
        }
    }
}

#[test]
fn strict_limits_are_weak_limits() {
    for c in CORPUS.iter() {
        for spec in generating_specs(c) {
            let weak_cones: Vec<_> = all_weak_limits(c, &spec)
                .unwrap()
                .into_iter()
                .map(|l| l.cone)
                .collect();
            for strict in all_strict_limits(c, &spec).unwrap() {
                assert!(weak_cones.contains(&strict.cone));
            }
        }
    }
}

#[test]
fn limit_searches_are_deterministic() {
    use poscat::limits::{search_strict_limit, search_weak_limit};
    for c in CORPUS.iter().take(200) {
        for spec in generating_specs(c) {
            assert_eq!(
                search_weak_limit(c, &spec).unwrap(),
                search_weak_limit(c, &spec).unwrap()
            );
            assert_eq!(
                search_strict_limit(c, &spec).unwrap(),
                search_strict_limit(c, &spec).unwrap()
            );
        }
    }
}

#[test]
fn corpus_serialization_round_trips() {
    for c in CORPUS.iter() {
        let s = serialize_category(c);
        let back = parse_category(&s).unwrap();
        assert_eq!(&back, c);
        assert_eq!(serialize_category(&back), s);
    }
}

#[test]
fn duals_stay_in_the_corpus_and_involute() {
    let keys: std::collections::BTreeSet<Vec<u32>> =
        CORPUS.iter().map(|c| c.canonical_encoding()).collect();
    for c in CORPUS.iter() {
        assert_eq!(&c.dual().dual(), c);
        assert!(keys.contains(&c.dual().canonical_encoding()));
    }
}
