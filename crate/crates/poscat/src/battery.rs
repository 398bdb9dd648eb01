//! The theorem battery: sweeps over an enumerated corpus of small categories
//! asserting every structural statement the completion machinery promises.
//! Shared by the CLI corpus driver and the acceptance suite.

use crate::category::{fixture_arrow, fixture_idem, fixture_one, FinPosCategory};
use crate::completion::{
    build_exact_completion, coinserter_presentation, gamma, gamma_with_comma_choice,
    internal_construction_crosscheck, CrosscheckKind, ExCompletion,
};
use crate::diagram::DiagramSpec;
use crate::enumerate::{enumerate_categories, EnumerationError};
use crate::functor::{
    check_fully_order_faithful, check_left_covering,
    check_projective_cover_theorem, check_regular_functor, enumerate_functors, extend_functor,
    find_lemma_diagrams, image_congruence_check, naturally_isomorphic, useful_lemma_check,
    validate_functor, PosFunctor,
};
use crate::ids::{MorphismId, ObjectId};
use crate::limits::{check_weakly_lex, MissingWeakLimit};
use crate::par;
use crate::regexact::{
    all_relations, check_exact, check_projective, check_projective_cover, check_regular,
    check_weak_limits_in_cover, is_congruence, so_effective_epi_agreement, CoverLimitKind,
};

/// Outcome of one battery sweep: how many instances ran and which failed.
#[derive(Debug, Clone)]
pub struct BatteryOutcome {
    pub name: String,
    pub instances: usize,
    pub failures: Vec<String>,
}

impl BatteryOutcome {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Size gate for the exhaustive-uniqueness part of the universal property.
#[derive(Debug, Clone, Copy)]
pub struct UniversalPropertyGates {
    /// Skip instances whose completion has more objects than this.
    pub max_completion_objects: usize,
}

impl Default for UniversalPropertyGates {
    fn default() -> Self {
        UniversalPropertyGates { max_completion_objects: 4 }
    }
}

/// The corpus with its weakly lex members and their completions, built once.
pub struct Corpus {
    pub categories: Vec<FinPosCategory>,
    pub weakly_lex: Vec<usize>,
    pub completions: Vec<(usize, ExCompletion)>,
}

pub fn build_corpus(max_objects: usize, max_morphisms: usize) -> Result<Corpus, EnumerationError> {
    let categories = enumerate_categories(max_objects, max_morphisms)?;
    let verdicts = par::map_collect(categories.clone(), |c| check_weakly_lex(&c).holds());
    let weakly_lex: Vec<usize> = verdicts
        .iter()
        .enumerate()
        .filter_map(|(i, ok)| ok.then_some(i))
        .collect();
    let completions = weakly_lex
        .iter()
        .map(|&i| {
            let e = build_exact_completion(&categories[i]).expect("weakly lex member completes");
            (i, e)
        })
        .collect();
    Ok(Corpus { categories, weakly_lex, completions })
}

/// Every completion of a weakly lex corpus member is exact.
pub fn exactness_theorem(corpus: &Corpus) -> BatteryOutcome {
    let failures = par::map_collect(corpus.completions.iter().collect::<Vec<_>>(), |(i, e)| {
        let report = check_exact(&e.cat);
        (!report.holds()).then(|| format!("category #{}: {:?}", i, report.failures))
    })
    .into_iter()
    .flatten()
    .collect();
    BatteryOutcome {
        name: "exactness of completions".into(),
        instances: corpus.completions.len(),
        failures,
    }
}

/// Γ validates, is fully order-faithful, lands on so-projectives, its image
/// is a projective cover, and the embedding is choice-independent.
pub fn embedding_suite(corpus: &Corpus) -> BatteryOutcome {
    let mut failures = Vec::new();
    let mut instances = 0;
    for (i, e) in &corpus.completions {
        let c = &corpus.categories[*i];
        let g = gamma(c, e);
        instances += 1;
        if validate_functor(&g.functor).is_err() {
            failures.push(format!("category #{}: embedding does not validate", i));
            continue;
        }
        if !check_fully_order_faithful(&g.functor).0 {
            failures.push(format!("category #{}: embedding not fully order-faithful", i));
        }
        for x in c.objects() {
            if !check_projective(&e.cat, g.functor.on_obj(x)) {
                failures.push(format!(
                    "category #{}: image of {} not projective",
                    i,
                    c.object_name(x)
                ));
            }
        }
        let image: Vec<ObjectId> = g.functor.obj_map.clone();
        if !check_projective_cover(&e.cat, &image).0 {
            failures.push(format!("category #{}: image is not a projective cover", i));
        }
        // the cover inherits every generating weak limit kind
        for kind in [
            CoverLimitKind::Terminal,
            CoverLimitKind::BinaryProduct,
            CoverLimitKind::Inserter,
            CoverLimitKind::IdentityComma,
            CoverLimitKind::Pullback,
        ] {
            match check_weak_limits_in_cover(&e.cat, &image, kind) {
                Ok(true) => {}
                Ok(false) => failures.push(format!(
                    "category #{}: cover lacks weak {:?} limits",
                    i, kind
                )),
                Err(err) => failures.push(format!("category #{}: {}", i, err)),
            }
        }
        // the image of every pseudocongruence under the embedding is a
        // congruence in the completion
        for pc in &e.objects {
            match image_congruence_check(&g.functor, pc.span) {
                Ok(rel) => {
                    if !matches!(is_congruence(&e.cat, rel.span), Ok((true, _))) {
                        failures.push(format!(
                            "category #{}: embedded image of {:?} is not a congruence",
                            i, pc.span
                        ));
                    }
                }
                Err(err) => failures.push(format!("category #{}: {}", i, err)),
            }
        }
        // choice independence: the last weak comma instead of the first
        let alt = gamma_with_comma_choice(c, e, |c, x| {
            let id = c.identity(x);
            let lims =
                crate::limits::all_weak_limits(c, &DiagramSpec::comma(c, id, id).unwrap()).unwrap();
            lims.last().unwrap().cone.clone()
        });
        for x in c.objects() {
            let a = g.functor.on_obj(x);
            let b = alt.functor.on_obj(x);
            if e.cat.find_iso(a, b).is_none() {
                failures.push(format!(
                    "category #{}: embedding depends on the comma choice at {}",
                    i,
                    c.object_name(x)
                ));
            }
        }
    }
    BatteryOutcome { name: "embedding suite".into(), instances, failures }
}

/// Every morphism of every completion has a valid coinserter presentation.
pub fn presentation_suite(corpus: &Corpus) -> BatteryOutcome {
    let mut failures = Vec::new();
    let mut instances = 0;
    for (i, e) in &corpus.completions {
        let c = &corpus.categories[*i];
        let g = gamma(c, e);
        for m in e.cat.morphisms() {
            instances += 1;
            if let Err(err) = coinserter_presentation(e, &g, m) {
                failures.push(format!("category #{} morphism {:?}: {}", i, m, err));
            }
        }
    }
    BatteryOutcome { name: "coinserter presentations".into(), instances, failures }
}

/// The explicit recipes agree with brute-force search on every instance, and
/// every so-morphism of a completion is an identity class up to isomorphism.
pub fn construction_crosschecks(corpus: &Corpus) -> BatteryOutcome {
    let work: Vec<(usize, &ExCompletion, CrosscheckKind)> = corpus
        .completions
        .iter()
        .flat_map(|(i, e)| CrosscheckKind::ALL.into_iter().map(move |k| (*i, e, k)))
        .collect();
    let instances = work.len();
    let mut failures: Vec<String> = par::map_collect(work, |(i, e, kind)| {
        internal_construction_crosscheck(e, kind)
            .err()
            .map(|err| format!("category #{} {:?}: {}", i, kind, err))
    })
    .into_iter()
    .flatten()
    .collect();

    for (i, e) in &corpus.completions {
        for m in e.cat.morphisms() {
            if !crate::regexact::check_so(&e.cat, m).0 {
                continue;
            }
            // the ff part of the recipe factorization must be invertible
            let fac = crate::regexact::so_ff_factorize(&e.cat, m)
                .expect("completions factorize");
            if !e.cat.is_iso(fac.m) {
                failures.push(format!(
                    "category #{}: so-morphism {:?} is not an identity class up to iso",
                    i, m
                ));
            }
        }
    }
    BatteryOutcome { name: "construction cross-checks".into(), instances, failures }
}

/// Exact corpus members that are their own projective cover are equivalent
/// to their completion through the extension of the identity inclusion.
pub fn idempotence_suite(corpus: &Corpus) -> BatteryOutcome {
    let mut failures = Vec::new();
    let mut instances = 0;

    let one = fixture_one();
    let arrow = fixture_arrow();
    for (name, c) in [("ONE", &one), ("ARROW", &arrow)] {
        instances += 1;
        let e = build_exact_completion(c).expect("fixtures are weakly lex");
        if !e.cat.isomorphic_to(c) {
            failures.push(format!("completion of {} is not isomorphic to it", name));
        }
    }

    for &i in &corpus.weakly_lex {
        let c = &corpus.categories[i];
        if !check_exact(c).holds() {
            continue;
        }
        let all: Vec<ObjectId> = c.objects().collect();
        if !check_projective_cover(c, &all).0 {
            continue;
        }
        instances += 1;
        match check_projective_cover_theorem(c, &all) {
            Ok(report) if report.holds() => {}
            Ok(report) => failures.push(format!(
                "category #{}: cover theorem fails ({:?})",
                i, report
            )),
            Err(err) => failures.push(format!("category #{}: {}", i, err)),
        }
    }
    BatteryOutcome { name: "idempotence on exact inputs".into(), instances, failures }
}

/// For every left covering functor between corpus members with exact target
/// (and completion under the gate): the extension exists, is regular, commutes
/// with the embeddings up to natural isomorphism, and is unique among regular
/// extensions up to natural isomorphism.
pub fn universal_property_suite(corpus: &Corpus, gates: UniversalPropertyGates) -> BatteryOutcome {
    let mut failures = Vec::new();
    let mut instances = 0;

    let exact_targets: Vec<usize> = corpus
        .weakly_lex
        .iter()
        .copied()
        .filter(|&i| check_exact(&corpus.categories[i]).holds())
        .collect();

    for (ci, e) in &corpus.completions {
        if e.cat.object_count() > gates.max_completion_objects {
            continue;
        }
        let c = &corpus.categories[*ci];
        let g = gamma(c, e);
        for &ti in &exact_targets {
            let target = &corpus.categories[ti];
            for f in enumerate_functors(c, target) {
                let report = match check_left_covering(&f) {
                    Ok(r) => r,
                    Err(_) => continue,
                };
                if !report.holds() {
                    continue;
                }
                instances += 1;
                let ext = match extend_functor(&f, e) {
                    Ok(ext) => ext,
                    Err(err) => {
                        failures.push(format!("{} → {}: extension failed: {}", ci, ti, err));
                        continue;
                    }
                };
                if let Err(err) = check_regular_functor(&ext.fbar) {
                    failures.push(format!("{} → {}: extension not regular: {}", ci, ti, err));
                }
                let composed = compose_functors(&ext.fbar, &g.functor);
                if !naturally_isomorphic(&composed, &f) {
                    failures.push(format!("{} → {}: extension does not restrict to the functor", ci, ti));
                }
                // a fully order-faithful functor landing on projectives
                // extends to a fully order-faithful functor
                let lands_on_projectives = c
                    .objects()
                    .all(|x| check_projective(target, f.on_obj(x)));
                if check_fully_order_faithful(&f).0
                    && lands_on_projectives
                    && !check_fully_order_faithful(&ext.fbar).0
                {
                    failures.push(format!(
                        "{} → {}: extension lost fully order-faithfulness",
                        ci, ti
                    ));
                }
                // image congruences of all pseudocongruences are congruences
                for pc in &e.objects {
                    match image_congruence_check(&f, pc.span) {
                        Ok(rel) => {
                            if !matches!(is_congruence(target, rel.span), Ok((true, _))) {
                                failures.push(format!(
                                    "{} → {}: image of a pseudocongruence is not a congruence",
                                    ci, ti
                                ));
                            }
                        }
                        Err(err) => failures.push(format!("{} → {}: {}", ci, ti, err)),
                    }
                }
                // exhaustive uniqueness: every regular functor agreeing with
                // f on the embedding is naturally isomorphic to the extension
                for cand in enumerate_functors(&e.cat, target) {
                    if check_regular_functor(&cand).is_err() {
                        continue;
                    }
                    let cand_restricted = compose_functors(&cand, &g.functor);
                    if !naturally_isomorphic(&cand_restricted, &f) {
                        continue;
                    }
                    if !naturally_isomorphic(&cand, &ext.fbar) {
                        failures.push(format!(
                            "{} → {}: a non-isomorphic regular extension exists",
                            ci, ti
                        ));
                    }
                }
            }
        }
    }
    BatteryOutcome { name: "universal property".into(), instances, failures }
}

fn compose_functors(g: &PosFunctor, f: &PosFunctor) -> PosFunctor {
    assert_eq!(f.target, g.source);
    PosFunctor {
        source: f.source.clone(),
        target: g.target.clone(),
        obj_map: f.obj_map.iter().map(|&x| g.on_obj(x)).collect(),
        mor_map: f.mor_map.iter().map(|&m| g.on_mor(m)).collect(),
    }
}

/// (a) the two congruence characterizations agree on every jointly
/// order-monic span; (b) in regular members, so ⟺ effective epi ⟺ coinserter
/// of the kernel congruence; (c) the inserter-rows lemma holds on every
/// matching diagram.
pub fn definitional_equivalences(corpus: &Corpus) -> BatteryOutcome {
    let items: Vec<(usize, FinPosCategory)> =
        corpus.categories.iter().cloned().enumerate().collect();
    let results = par::map_collect(items, |(i, c)| {
        let mut local = Vec::new();
        let mut count = 0usize;
        for span in all_relations(&c) {
            count += 1;
            if is_congruence(&c, span).is_err() {
                local.push(format!("category #{}: congruence routes disagree on {:?}", i, span));
            }
        }
        if check_regular(&c).holds() {
            for m in so_effective_epi_agreement(&c) {
                local.push(format!(
                    "category #{}: so/effective-epi/coinserter verdicts disagree on {:?}",
                    i, m
                ));
            }
            for d in find_lemma_diagrams(&c) {
                count += 1;
                match useful_lemma_check(&c, &d) {
                    Ok(true) => {}
                    Ok(false) => local.push(format!("category #{}: lemma fails on {:?}", i, d)),
                    Err(err) => local.push(format!("category #{}: {}", i, err)),
                }
            }
        }
        (count, local)
    });
    let mut instances = 0;
    let mut failures = Vec::new();
    for (count, local) in results {
        instances += count;
        failures.extend(local);
    }
    BatteryOutcome { name: "definitional equivalences".into(), instances, failures }
}

/// The documented rejections: IDEM is not weakly lex (missing weak product
/// of (x, x) with the identity-legged candidate failing to cover (id, e)),
/// and the collapse ARROW → ONE is not fully order-faithful.
pub fn negative_controls() -> BatteryOutcome {
    let mut failures = Vec::new();

    let idem = fixture_idem();
    let report = check_weakly_lex(&idem);
    let product_missing = report.missing.iter().find_map(|m| match m {
        MissingWeakLimit::BinaryProduct { x, y, witness } => Some((*x, *y, witness.clone())),
        _ => None,
    });
    match product_missing {
        None => failures.push("IDEM: no missing weak product was reported".into()),
        Some((x, y, witness)) => {
            if x != ObjectId(0) || y != ObjectId(0) {
                failures.push("IDEM: wrong product instance reported".into());
            }
            match witness.witness {
                Some((cand, uncovered)) => {
                    if cand.legs != vec![MorphismId(0), MorphismId(0)]
                        || uncovered.legs != vec![MorphismId(0), MorphismId(1)]
                    {
                        failures.push(format!(
                            "IDEM: unexpected witness {:?} / {:?}",
                            cand, uncovered
                        ));
                    }
                }
                None => failures.push("IDEM: witness cone missing".into()),
            }
        }
    }

    let collapse = PosFunctor {
        source: fixture_arrow(),
        target: fixture_one(),
        obj_map: vec![ObjectId(0), ObjectId(0)],
        mor_map: vec![MorphismId(0), MorphismId(0), MorphismId(0)],
    };
    let (ok, witness) = check_fully_order_faithful(&collapse);
    if ok {
        failures.push("collapse ARROW → ONE wrongly accepted".into());
    } else if !witness.unwrap_or_default().contains("misses") {
        failures.push("collapse ARROW → ONE rejected with an unexpected witness".into());
    }

    BatteryOutcome { name: "negative controls".into(), instances: 2, failures }
}

/// Runs the full battery and returns every outcome.
pub fn run_full_battery(
    max_objects: usize,
    max_morphisms: usize,
) -> Result<(Corpus, Vec<BatteryOutcome>), EnumerationError> {
    let corpus = build_corpus(max_objects, max_morphisms)?;
    let outcomes = vec![
        exactness_theorem(&corpus),
        embedding_suite(&corpus),
        presentation_suite(&corpus),
        construction_crosschecks(&corpus),
        idempotence_suite(&corpus),
        universal_property_suite(&corpus, UniversalPropertyGates::default()),
        definitional_equivalences(&corpus),
        negative_controls(),
    ];
    Ok((corpus, outcomes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_controls_hold() {
        let outcome = negative_controls();
        assert!(outcome.holds(), "{:?}", outcome.failures);
    }

    #[test]
    fn small_corpus_battery_passes() {
        let (corpus, outcomes) = run_full_battery(2, 3).unwrap();
        assert!(!corpus.categories.is_empty());
        for o in &outcomes {
            assert!(o.holds(), "{}: {:?}", o.name, o.failures);
        }
    }
}
