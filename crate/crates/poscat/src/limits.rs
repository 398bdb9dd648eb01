//! Brute-force solvers for weak and strict finite limits and for coinserters.
//!
//! Universal properties are checked by quantifying over every object and every
//! tuple of morphisms out of it, so the verdicts are exact on finite
//! categories. Canonical selection is least apex id, then lexicographically
//! least legs, which makes every result deterministic.

use crate::category::FinPosCategory;
use crate::diagram::{Cone, DiagramSpec, SpecError};
use crate::ids::{MorphismId, ObjectId};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitKind {
    Weak,
    Strict,
}

/// A found limit: the canonical cone, the number of cones over the spec, and
/// a factoring mediator for every cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitResult {
    pub kind: LimitKind,
    pub cone: Cone,
    pub all_cones: usize,
    /// For each cone over the spec, a mediator h with legs ∘ h = cone legs.
    /// Weak: some chosen h. Strict: the unique h, and the assignment is a
    /// poset isomorphism hom(A, apex) ≅ cones over A for every A.
    pub mediators: Vec<(Cone, MorphismId)>,
}

/// Why a limit search failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotFound {
    /// The canonically first candidate cone, if any cone exists at all,
    /// together with the first cone it fails to cover.
    pub witness: Option<(Cone, Cone)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LimitError {
    #[error(transparent)]
    SpecInvalid(#[from] SpecError),
    #[error("morphisms are not parallel")]
    NotParallel,
}

/// Outcome of a limit search: found, or not present in the category.
pub type LimitOutcome = Result<LimitResult, NotFound>;

fn sorted_cones(c: &FinPosCategory, spec: &DiagramSpec) -> Vec<Cone> {
    let mut cones = spec.all_cones(c);
    cones.sort();
    cones
}

/// Does every cone factor through `cand`? On success returns the chosen
/// mediators; on failure the first uncovered cone.
fn covers_weakly(
    c: &FinPosCategory,
    spec: &DiagramSpec,
    cand: &Cone,
    cones: &[Cone],
) -> Result<Vec<(Cone, MorphismId)>, Cone> {
    let mut mediators = Vec::with_capacity(cones.len());
    'outer: for cone in cones {
        for &h in c.hom(cone.apex, cand.apex) {
            if factors(c, spec, cand, cone, h) {
                mediators.push((cone.clone(), h));
                continue 'outer;
            }
        }
        return Err(cone.clone());
    }
    Ok(mediators)
}

fn factors(c: &FinPosCategory, spec: &DiagramSpec, cand: &Cone, cone: &Cone, h: MorphismId) -> bool {
    let _ = spec;
    cand.legs
        .iter()
        .zip(cone.legs.iter())
        .all(|(&leg, &want)| c.comp(leg, h) == want)
}

/// Checks the strict universal property of `cand`: unique factorization of
/// every cone and joint order-reflection of the legs.
fn covers_strictly(
    c: &FinPosCategory,
    spec: &DiagramSpec,
    cand: &Cone,
    cones: &[Cone],
) -> Option<Vec<(Cone, MorphismId)>> {
    let mut mediators = Vec::with_capacity(cones.len());
    for cone in cones {
        let hs: Vec<MorphismId> = c
            .hom(cone.apex, cand.apex)
            .iter()
            .copied()
            .filter(|&h| factors(c, spec, cand, cone, h))
            .collect();
        if hs.len() != 1 {
            return None;
        }
        mediators.push((cone.clone(), hs[0]));
    }
    // Legs jointly order-reflecting: h ≤ h' whenever all leg composites are ≤.
    for a in c.objects() {
        let homs = c.hom(a, cand.apex);
        for &h in homs {
            for &h2 in homs {
                let pointwise = cand
                    .legs
                    .iter()
                    .all(|&leg| c.le(c.comp(leg, h), c.comp(leg, h2)));
                if pointwise && !c.le(h, h2) {
                    return None;
                }
            }
        }
    }
    Some(mediators)
}

/// Does the given cone satisfy the weak universal property for the spec?
pub fn is_weak_limit_cone(c: &FinPosCategory, spec: &DiagramSpec, cone: &Cone) -> bool {
    if !spec.is_cone(c, cone.apex, &cone.legs) {
        return false;
    }
    let cones = sorted_cones(c, spec);
    covers_weakly(c, spec, cone, &cones).is_ok()
}

/// Does the given cone satisfy the strict universal property for the spec?
pub fn is_strict_limit_cone(c: &FinPosCategory, spec: &DiagramSpec, cone: &Cone) -> bool {
    if !spec.is_cone(c, cone.apex, &cone.legs) {
        return false;
    }
    let cones = sorted_cones(c, spec);
    covers_strictly(c, spec, cone, &cones).is_some()
}

/// Least-apex, lexicographically-least weak limit of the spec, if one exists.
pub fn search_weak_limit(c: &FinPosCategory, spec: &DiagramSpec) -> Result<LimitOutcome, LimitError> {
    spec.validate(c)?;
    let cones = sorted_cones(c, spec);
    for cand in &cones {
        if let Ok(mediators) = covers_weakly(c, spec, cand, &cones) {
            return Ok(Ok(LimitResult {
                kind: LimitKind::Weak,
                cone: cand.clone(),
                all_cones: cones.len(),
                mediators,
            }));
        }
    }
    let witness = cones.first().map(|cand| {
        let uncovered = covers_weakly(c, spec, cand, &cones).unwrap_err();
        (cand.clone(), uncovered)
    });
    Ok(Err(NotFound { witness }))
}

/// Every weak limit of the spec (every cone through which all cones factor).
pub fn all_weak_limits(c: &FinPosCategory, spec: &DiagramSpec) -> Result<Vec<LimitResult>, LimitError> {
    spec.validate(c)?;
    let cones = sorted_cones(c, spec);
    let mut out = Vec::new();
    for cand in &cones {
        if let Ok(mediators) = covers_weakly(c, spec, cand, &cones) {
            out.push(LimitResult {
                kind: LimitKind::Weak,
                cone: cand.clone(),
                all_cones: cones.len(),
                mediators,
            });
        }
    }
    Ok(out)
}

/// Canonical strict limit of the spec, if one exists.
pub fn search_strict_limit(c: &FinPosCategory, spec: &DiagramSpec) -> Result<LimitOutcome, LimitError> {
    spec.validate(c)?;
    let cones = sorted_cones(c, spec);
    for cand in &cones {
        if let Some(mediators) = covers_strictly(c, spec, cand, &cones) {
            return Ok(Ok(LimitResult {
                kind: LimitKind::Strict,
                cone: cand.clone(),
                all_cones: cones.len(),
                mediators,
            }));
        }
    }
    let witness = cones.first().map(|cand| {
        let uncovered = match covers_weakly(c, spec, cand, &cones) {
            Err(cone) => cone,
            Ok(_) => cand.clone(), // covers weakly but fails strictness
        };
        (cand.clone(), uncovered)
    });
    Ok(Err(NotFound { witness }))
}

/// Every strict limit of the spec.
pub fn all_strict_limits(c: &FinPosCategory, spec: &DiagramSpec) -> Result<Vec<LimitResult>, LimitError> {
    spec.validate(c)?;
    let cones = sorted_cones(c, spec);
    Ok(cones
        .iter()
        .filter_map(|cand| {
            covers_strictly(c, spec, cand, &cones).map(|mediators| LimitResult {
                kind: LimitKind::Strict,
                cone: cand.clone(),
                all_cones: cones.len(),
                mediators,
            })
        })
        .collect())
}

pub fn weak_terminal(c: &FinPosCategory) -> LimitOutcome {
    search_weak_limit(c, &DiagramSpec::terminal()).expect("terminal spec is always valid")
}

pub fn weak_product(c: &FinPosCategory, x: ObjectId, y: ObjectId) -> LimitOutcome {
    search_weak_limit(c, &DiagramSpec::binary_product(x, y)).expect("product spec is always valid")
}

pub fn weak_inserter(c: &FinPosCategory, f: MorphismId, g: MorphismId) -> Result<LimitOutcome, LimitError> {
    search_weak_limit(c, &DiagramSpec::inserter(c, f, g)?)
}

pub fn weak_comma(c: &FinPosCategory, f: MorphismId, g: MorphismId) -> Result<LimitOutcome, LimitError> {
    search_weak_limit(c, &DiagramSpec::comma(c, f, g)?)
}

pub fn weak_pullback(c: &FinPosCategory, f: MorphismId, g: MorphismId) -> Result<LimitOutcome, LimitError> {
    search_weak_limit(c, &DiagramSpec::pullback(c, f, g)?)
}

/// A found coinserter of an ordered parallel pair (f, g): the canonical
/// q with q∘f ≤ q∘g through which every such morphism factors uniquely and
/// order-reflectingly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoinserterResult {
    pub pair: (MorphismId, MorphismId),
    pub q: MorphismId,
    /// For each h with h∘f ≤ h∘g, the unique mediator u with u∘q = h.
    pub mediators: Vec<(MorphismId, MorphismId)>,
}

/// Does `q` satisfy the coinserter universal property for (f, g)?
pub fn is_coinserter(
    c: &FinPosCategory,
    f: MorphismId,
    g: MorphismId,
    q: MorphismId,
) -> Option<Vec<(MorphismId, MorphismId)>> {
    let y = c.cod(f);
    if c.dom(q) != y {
        return None;
    }
    let qf = c.comp(q, f);
    let qg = c.comp(q, g);
    if !c.le(qf, qg) {
        return None;
    }
    let target = c.cod(q);
    let mut mediators = Vec::new();
    for z in c.objects() {
        for &h in c.hom(y, z) {
            if !c.le(c.comp(h, f), c.comp(h, g)) {
                continue;
            }
            let us: Vec<MorphismId> = c
                .hom(target, z)
                .iter()
                .copied()
                .filter(|&u| c.comp(u, q) == h)
                .collect();
            if us.len() != 1 {
                return None;
            }
            mediators.push((h, us[0]));
        }
        // induced hom-map order-reflecting: u ≤ u' iff u∘q ≤ u'∘q
        for &u in c.hom(target, z) {
            for &u2 in c.hom(target, z) {
                if c.le(c.comp(u, q), c.comp(u2, q)) && !c.le(u, u2) {
                    return None;
                }
            }
        }
    }
    Some(mediators)
}

/// Canonical coinserter of (f, g): least q in morphism-id order.
pub fn search_coinserter(
    c: &FinPosCategory,
    f: MorphismId,
    g: MorphismId,
) -> Result<Result<CoinserterResult, NotFound>, LimitError> {
    if !c.parallel(f, g) {
        return Err(LimitError::NotParallel);
    }
    let y = c.cod(f);
    for q in c.out_of(y) {
        if let Some(mediators) = is_coinserter(c, f, g, q) {
            return Ok(Ok(CoinserterResult { pair: (f, g), q, mediators }));
        }
    }
    Ok(Err(NotFound { witness: None }))
}

/// Which generating weak limits a category is missing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MissingWeakLimit {
    Terminal,
    BinaryProduct { x: ObjectId, y: ObjectId, witness: NotFound },
    Inserter { f: MorphismId, g: MorphismId, witness: NotFound },
    IdentityComma { x: ObjectId, witness: NotFound },
}

/// Verdict of the weakly-lex check, with every missing instance listed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeaklyLexReport {
    pub missing: Vec<MissingWeakLimit>,
}

impl WeaklyLexReport {
    pub fn holds(&self) -> bool {
        self.missing.is_empty()
    }
}

/// A category is weakly lex when every finite weight admits a weak limit;
/// the generating family checked here is a weak terminal, all weak binary
/// products, all weak inserters, and all weak commas of identity pairs.
pub fn check_weakly_lex(c: &FinPosCategory) -> WeaklyLexReport {
    let mut missing = Vec::new();
    if weak_terminal(c).is_err() {
        missing.push(MissingWeakLimit::Terminal);
    }
    for x in c.objects() {
        for y in c.objects() {
            if let Err(w) = weak_product(c, x, y) {
                missing.push(MissingWeakLimit::BinaryProduct { x, y, witness: w });
            }
        }
    }
    for f in c.morphisms() {
        for g in c.morphisms() {
            if !c.parallel(f, g) {
                continue;
            }
            if let Err(w) = weak_inserter(c, f, g).expect("parallel pair") {
                missing.push(MissingWeakLimit::Inserter { f, g, witness: w });
            }
        }
    }
    for x in c.objects() {
        let id = c.identity(x);
        if let Err(w) = weak_comma(c, id, id).expect("identity pair shares codomain") {
            missing.push(MissingWeakLimit::IdentityComma { x, witness: w });
        }
    }
    WeaklyLexReport { missing }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{fixture_arrow, fixture_idem, fixture_one};

    const ID_A: MorphismId = MorphismId(0);
    const ID_B: MorphismId = MorphismId(1);
    const F: MorphismId = MorphismId(2);

    #[test]
    fn idem_has_no_weak_comma_of_identities() {
        // Hand enumeration: candidates (id,id), (id,e), (e,e) each fail to
        // cover one of the three ≤-pairs.
        let idem = fixture_idem();
        let out = weak_comma(&idem, MorphismId(0), MorphismId(0)).unwrap();
        let nf = out.expect_err("IDEM has no weak comma of (id, id)");
        let (cand, uncovered) = nf.witness.expect("cones exist");
        assert_eq!(cand.legs, vec![MorphismId(0), MorphismId(0)]);
        assert_eq!(uncovered.legs, vec![MorphismId(0), MorphismId(1)]);
    }

    #[test]
    fn arrow_weak_comma_of_identities_is_identity_cone() {
        let arrow = fixture_arrow();
        let out = weak_comma(&arrow, ID_A, ID_A).unwrap().expect("exists");
        assert_eq!(out.cone.apex, ObjectId(0));
        assert_eq!(out.cone.legs, vec![ID_A, ID_A]);
    }

    #[test]
    fn one_has_all_conical_weak_limits() {
        let one = fixture_one();
        assert!(weak_terminal(&one).is_ok());
        let p = weak_product(&one, ObjectId(0), ObjectId(0)).expect("exists");
        assert_eq!(p.cone.apex, ObjectId(0));
    }

    #[test]
    fn idem_has_no_weak_product() {
        // All four leg choices fail to cover the four generalized-element
        // pairs of hom(x,x)².
        let idem = fixture_idem();
        let out = weak_product(&idem, ObjectId(0), ObjectId(0));
        assert!(out.is_err());
    }

    #[test]
    fn arrow_weak_inserter_of_f_f_is_identity() {
        let arrow = fixture_arrow();
        let out = weak_inserter(&arrow, F, F).unwrap().expect("exists");
        assert_eq!(out.cone.apex, ObjectId(0));
        assert_eq!(out.cone.legs, vec![ID_A]);
    }

    #[test]
    fn arrow_strict_pullback_of_f_with_itself() {
        let arrow = fixture_arrow();
        let spec = DiagramSpec::pullback(&arrow, F, F).unwrap();
        let out = search_strict_limit(&arrow, &spec).unwrap().expect("exists");
        assert_eq!(out.cone.apex, ObjectId(0));
        assert_eq!(out.cone.legs[0], ID_A);
        assert_eq!(out.cone.legs[1], ID_A);
    }

    #[test]
    fn arrow_strict_terminal_is_b() {
        let arrow = fixture_arrow();
        let out = search_strict_limit(&arrow, &DiagramSpec::terminal())
            .unwrap()
            .expect("exists");
        assert_eq!(out.cone.apex, ObjectId(1));
    }

    #[test]
    fn one_strict_product_is_identity_cone() {
        let one = fixture_one();
        let spec = DiagramSpec::binary_product(ObjectId(0), ObjectId(0));
        let out = search_strict_limit(&one, &spec).unwrap().expect("exists");
        assert_eq!(out.cone.legs, vec![MorphismId(0), MorphismId(0)]);
    }

    #[test]
    fn coinserter_of_equal_identity_pair_is_identity() {
        let arrow = fixture_arrow();
        let out = search_coinserter(&arrow, ID_A, ID_A).unwrap().expect("exists");
        assert_eq!(out.q, ID_A);
    }

    #[test]
    fn coinserter_of_f_f_is_identity_on_b() {
        let arrow = fixture_arrow();
        let out = search_coinserter(&arrow, F, F).unwrap().expect("exists");
        assert_eq!(out.q, ID_B);
    }

    #[test]
    fn coinserter_in_idem_of_id_and_e() {
        // q = e fails mediator uniqueness (both id and e mediate h = e);
        // q = id works with every mediator equal to h itself.
        let idem = fixture_idem();
        assert!(is_coinserter(&idem, MorphismId(0), MorphismId(1), MorphismId(1)).is_none());
        let out = search_coinserter(&idem, MorphismId(0), MorphismId(1))
            .unwrap()
            .expect("exists");
        assert_eq!(out.q, MorphismId(0));
    }

    #[test]
    fn coinserter_rejects_non_parallel() {
        let arrow = fixture_arrow();
        assert!(matches!(
            search_coinserter(&arrow, ID_A, F),
            Err(LimitError::NotParallel)
        ));
    }

    #[test]
    fn weakly_lex_verdicts() {
        assert!(check_weakly_lex(&fixture_one()).holds());
        assert!(check_weakly_lex(&fixture_arrow()).holds());
        let report = check_weakly_lex(&fixture_idem());
        assert!(!report.holds());
        assert!(report
            .missing
            .iter()
            .any(|m| matches!(m, MissingWeakLimit::BinaryProduct { .. })));
    }

    #[test]
    fn empty_category_fails_only_the_weak_terminal() {
        let empty = crate::category::validate_category(crate::category::RawCategory {
            object_names: vec![],
            morphism_names: vec![],
            dom: vec![],
            cod: vec![],
            identities: vec![],
            compose: vec![],
            order_pairs: vec![],
        })
        .unwrap();
        let report = check_weakly_lex(&empty);
        assert_eq!(report.missing, vec![MissingWeakLimit::Terminal]);
    }

    #[test]
    fn strict_limits_are_also_weak_limits() {
        let arrow = fixture_arrow();
        for spec in [
            DiagramSpec::terminal(),
            DiagramSpec::binary_product(ObjectId(0), ObjectId(1)),
            DiagramSpec::pullback(&arrow, F, F).unwrap(),
        ] {
            if let Ok(strict) = search_strict_limit(&arrow, &spec).unwrap() {
                let weaks = all_weak_limits(&arrow, &spec).unwrap();
                assert!(weaks.iter().any(|w| w.cone == strict.cone));
            }
        }
    }

    #[test]
    fn weak_limits_of_one_spec_mutually_factor() {
        let arrow = fixture_arrow();
        let spec = DiagramSpec::binary_product(ObjectId(1), ObjectId(1));
        let weaks = all_weak_limits(&arrow, &spec).unwrap();
        assert!(!weaks.is_empty());
        for a in &weaks {
            for b in &weaks {
                let found = arrow
                    .hom(a.cone.apex, b.cone.apex)
                    .iter()
                    .any(|&h| {
                        b.cone
                            .legs
                            .iter()
                            .zip(a.cone.legs.iter())
                            .all(|(&bl, &al)| arrow.comp(bl, h) == al)
                    });
                assert!(found, "weak limits must factor through each other");
            }
        }
    }
}
