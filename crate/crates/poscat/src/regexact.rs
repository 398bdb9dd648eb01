//! Morphism classes, congruence machinery, and the regularity/exactness
//! verdicts.
//!
//! An order-mono (ff-morphism) is one whose postcomposition reflects the
//! hom-order; an so-morphism is left orthogonal to all of those, witnessed by
//! the hom-square being a pullback of posets. A category is regular when it
//! has strict finite limits, (so, ff) factorizations, and so-morphisms are
//! stable under pullback; exact when moreover every congruence is effective.

use crate::category::FinPosCategory;
use crate::diagram::DiagramSpec;
use crate::ids::{MorphismId, ObjectId};
use crate::limits::{
    all_strict_limits, is_coinserter, search_coinserter, search_strict_limit, LimitResult,
};
use thiserror::Error;

/// A parallel pair r0, r1: R → X with its relation flags. Each flag carries a
/// witness (or counterexample) from the generalized-element check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub span: Span,
    pub jointly_order_monic: Flag,
    pub order_reflexive: Flag,
    pub reflexive: Flag,
    pub transitive: Flag,
    pub order_ideal: Flag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Span {
    pub r: ObjectId,
    pub r0: MorphismId,
    pub r1: MorphismId,
    pub x: ObjectId,
}

/// Verdict of one relation property plus a witness morphism tuple: for a
/// failing check the offending generalized elements, for a passing
/// existential check a chosen witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flag {
    pub holds: bool,
    pub witness: Vec<MorphismId>,
}

impl Flag {
    fn yes() -> Self {
        Flag { holds: true, witness: vec![] }
    }
    fn no(witness: Vec<MorphismId>) -> Self {
        Flag { holds: false, witness }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelationError {
    #[error("span is not jointly order-monic, so it is not a relation")]
    NotARelation,
    #[error("the two congruence characterizations disagree: {0}")]
    DefinitionMismatch(String),
}

/// An (so, ff) factorization of a morphism through `middle`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub e: MorphismId,
    pub m: MorphismId,
    pub middle: ObjectId,
}

/// Is `m` an order-mono: for all u, v: Z → dom(m), m∘u ≤ m∘v implies u ≤ v.
pub fn check_ff(c: &FinPosCategory, m: MorphismId) -> (bool, Option<(ObjectId, MorphismId, MorphismId)>) {
    let x = c.dom(m);
    for z in c.objects() {
        let hom = c.hom(z, x);
        for &u in hom {
            for &v in hom {
                if c.le(c.comp(m, u), c.comp(m, v)) && !c.le(u, v) {
                    return (false, Some((z, u, v)));
                }
            }
        }
    }
    (true, None)
}

/// Why an so-check failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SoFailure {
    /// No mediator h for the compatible pair (f, g) against order-mono m.
    NoMediator { m: MorphismId, f: MorphismId, g: MorphismId },
    /// More than one mediator for the pair.
    MediatorNotUnique { m: MorphismId, f: MorphismId, g: MorphismId },
    /// Order-reflection fails: h∘e ≤ h'∘e and m∘h ≤ m∘h' but not h ≤ h'.
    NotOrderReflecting { m: MorphismId, h: MorphismId, h2: MorphismId },
}

/// Is `e: A → B` an so-morphism: for every order-mono m: X → Y the square of
/// hom-posets is a pullback. Concretely, (i) every compatible pair
/// (f: A→X, g: B→Y) with g∘e = m∘f has a unique h: B→X with h∘e = f and
/// m∘h = g, and (ii) h ≤ h' iff h∘e ≤ h'∘e and m∘h ≤ m∘h'.
pub fn check_so(c: &FinPosCategory, e: MorphismId) -> (bool, Option<SoFailure>) {
    let a = c.dom(e);
    let b = c.cod(e);
    for m in c.morphisms() {
        if !check_ff(c, m).0 {
            continue;
        }
        let x = c.dom(m);
        let y = c.cod(m);
        for &f in c.hom(a, x) {
            for &g in c.hom(b, y) {
                if c.comp(g, e) != c.comp(m, f) {
                    continue;
                }
                let mediators: Vec<MorphismId> = c
                    .hom(b, x)
                    .iter()
                    .copied()
                    .filter(|&h| c.comp(h, e) == f && c.comp(m, h) == g)
                    .collect();
                match mediators.len() {
                    0 => return (false, Some(SoFailure::NoMediator { m, f, g })),
                    1 => {}
                    _ => return (false, Some(SoFailure::MediatorNotUnique { m, f, g })),
                }
            }
        }
        for &h in c.hom(b, x) {
            for &h2 in c.hom(b, x) {
                if c.le(c.comp(h, e), c.comp(h2, e))
                    && c.le(c.comp(m, h), c.comp(m, h2))
                    && !c.le(h, h2)
                {
                    return (false, Some(SoFailure::NotOrderReflecting { m, h, h2 }));
                }
            }
        }
    }
    (true, None)
}

/// Canonical (so, ff) factorization of `f`, searching middles in id order.
pub fn so_ff_factorize(c: &FinPosCategory, f: MorphismId) -> Option<Factorization> {
    let x = c.dom(f);
    let y = c.cod(f);
    for middle in c.objects() {
        for &e in c.hom(x, middle) {
            for &m in c.hom(middle, y) {
                if c.comp(m, e) == f && check_so(c, e).0 && check_ff(c, m).0 {
                    return Some(Factorization { e, m, middle });
                }
            }
        }
    }
    None
}

/// All (so, ff) factorizations of `f`.
pub fn all_so_ff_factorizations(c: &FinPosCategory, f: MorphismId) -> Vec<Factorization> {
    let x = c.dom(f);
    let y = c.cod(f);
    let mut out = Vec::new();
    for middle in c.objects() {
        for &e in c.hom(x, middle) {
            for &m in c.hom(middle, y) {
                if c.comp(m, e) == f && check_so(c, e).0 && check_ff(c, m).0 {
                    out.push(Factorization { e, m, middle });
                }
            }
        }
    }
    out
}

/// Computes every relation flag of a span by generalized-element enumeration.
pub fn analyze_span(c: &FinPosCategory, span: Span) -> Relation {
    let Span { r, r0, r1, x } = span;
    debug_assert_eq!(c.dom(r0), r);
    debug_assert_eq!(c.dom(r1), r);
    debug_assert_eq!(c.cod(r0), x);
    debug_assert_eq!(c.cod(r1), x);

    // jointly order-monic: r0u ≤ r0v and r1u ≤ r1v imply u ≤ v
    let mut jointly_order_monic = Flag::yes();
    'jom: for a in c.objects() {
        for &u in c.hom(a, r) {
            for &v in c.hom(a, r) {
                if c.le(c.comp(r0, u), c.comp(r0, v))
                    && c.le(c.comp(r1, u), c.comp(r1, v))
                    && !c.le(u, v)
                {
                    jointly_order_monic = Flag::no(vec![u, v]);
                    break 'jom;
                }
            }
        }
    }

    let pairs_through = |a0: MorphismId, a1: MorphismId| -> Option<MorphismId> {
        let a = c.dom(a0);
        c.hom(a, r)
            .iter()
            .copied()
            .find(|&u| c.comp(r0, u) == a0 && c.comp(r1, u) == a1)
    };

    // order-reflexive: every a0 ≤ a1: A → X factors through (r0, r1)
    let mut order_reflexive = Flag::yes();
    'orefl: for a in c.objects() {
        for &a0 in c.hom(a, x) {
            for &a1 in c.hom(a, x) {
                if c.le(a0, a1) && pairs_through(a0, a1).is_none() {
                    order_reflexive = Flag::no(vec![a0, a1]);
                    break 'orefl;
                }
            }
        }
    }

    // reflexive: the diagonal factors through (r0, r1)
    let mut reflexive = Flag::yes();
    'refl: for a in c.objects() {
        for &a0 in c.hom(a, x) {
            if pairs_through(a0, a0).is_none() {
                reflexive = Flag::no(vec![a0]);
                break 'refl;
            }
        }
    }

    // transitive: a, b: A → R with r1∘a = r0∘b admit t with r0∘t = r0∘a,
    // r1∘t = r1∘b
    let mut transitive = Flag::yes();
    'trans: for a in c.objects() {
        for &u in c.hom(a, r) {
            for &v in c.hom(a, r) {
                if c.comp(r1, u) != c.comp(r0, v) {
                    continue;
                }
                let needed0 = c.comp(r0, u);
                let needed1 = c.comp(r1, v);
                let found = c
                    .hom(a, r)
                    .iter()
                    .any(|&t| c.comp(r0, t) == needed0 && c.comp(r1, t) == needed1);
                if !found {
                    transitive = Flag::no(vec![u, v]);
                    break 'trans;
                }
            }
        }
    }

    // order-ideal: (x, y) in the relation, x' ≤ x, y ≤ y' imply (x', y') in it
    let mut order_ideal = Flag::yes();
    'ideal: for a in c.objects() {
        for &w in c.hom(a, r) {
            let px = c.comp(r0, w);
            let py = c.comp(r1, w);
            for &px2 in c.hom(a, x) {
                if !c.le(px2, px) {
                    continue;
                }
                for &py2 in c.hom(a, x) {
                    if !c.le(py, py2) {
                        continue;
                    }
                    if pairs_through(px2, py2).is_none() {
                        order_ideal = Flag::no(vec![w, px2, py2]);
                        break 'ideal;
                    }
                }
            }
        }
    }

    Relation {
        span,
        jointly_order_monic,
        order_reflexive,
        reflexive,
        transitive,
        order_ideal,
    }
}

/// Which congruence characterization fired, for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceTrace {
    pub via_reflexive_transitive_ideal: bool,
    pub via_transitive_order_reflexive: bool,
}

/// Evaluates both congruence characterizations — (reflexive ∧ transitive ∧
/// order-ideal) and (transitive ∧ order-reflexive) — asserts they agree, and
/// returns the shared verdict.
pub fn is_congruence(c: &FinPosCategory, span: Span) -> Result<(bool, CongruenceTrace), RelationError> {
    let rel = analyze_span(c, span);
    if !rel.jointly_order_monic.holds {
        return Err(RelationError::NotARelation);
    }
    let route_a = rel.reflexive.holds && rel.transitive.holds && rel.order_ideal.holds;
    let route_b = rel.transitive.holds && rel.order_reflexive.holds;
    if route_a != route_b {
        return Err(RelationError::DefinitionMismatch(format!(
            "reflexive+transitive+ideal = {}, transitive+order-reflexive = {} on span {:?}",
            route_a, route_b, span
        )));
    }
    Ok((
        route_a,
        CongruenceTrace {
            via_reflexive_transitive_ideal: route_a,
            via_transitive_order_reflexive: route_b,
        },
    ))
}

/// The kernel congruence of `f`: the strict comma of (f, f), with flags.
pub fn kernel_congruence(c: &FinPosCategory, f: MorphismId) -> Option<Relation> {
    let spec = DiagramSpec::comma(c, f, f).expect("f shares codomain with itself");
    let lim = search_strict_limit(c, &spec).expect("comma spec valid").ok()?;
    let span = Span {
        r: lim.cone.apex,
        r0: lim.cone.legs[0],
        r1: lim.cone.legs[1],
        x: c.dom(f),
    };
    Some(analyze_span(c, span))
}

/// Subobject equality of jointly order-monic spans: mutual factorization.
pub fn spans_equal_as_subobjects(c: &FinPosCategory, a: Span, b: Span) -> bool {
    if a.x != b.x {
        return false;
    }
    let forward = c
        .hom(a.r, b.r)
        .iter()
        .any(|&p| c.comp(b.r0, p) == a.r0 && c.comp(b.r1, p) == a.r1);
    let backward = c
        .hom(b.r, a.r)
        .iter()
        .any(|&p| c.comp(a.r0, p) == b.r0 && c.comp(a.r1, p) == b.r1);
    forward && backward
}

/// Is the span the kernel congruence of some morphism out of X, compared as
/// subobjects? Returns the witnessing morphism.
pub fn is_effective_congruence(c: &FinPosCategory, span: Span) -> (bool, Option<MorphismId>) {
    for q in c.out_of(span.x) {
        if let Some(k) = kernel_congruence(c, q) {
            if spans_equal_as_subobjects(c, span, k.span) {
                return (true, Some(q));
            }
        }
    }
    (false, None)
}

/// Is `e` an effective epimorphism: the coinserter of some parallel pair.
pub fn is_effective_epi(c: &FinPosCategory, e: MorphismId) -> bool {
    let y = c.dom(e);
    for w in c.objects() {
        for &f in c.hom(w, y) {
            for &g in c.hom(w, y) {
                if is_coinserter(c, f, g, e).is_some() {
                    return true;
                }
            }
        }
    }
    false
}

/// One failed check inside a regularity/exactness report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportEntry {
    pub check: String,
    pub witness: String,
}

/// Verdict with the failing checks listed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub failures: Vec<ReportEntry>,
}

impl StructureReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, check: impl Into<String>, witness: impl Into<String>) {
        self.failures.push(ReportEntry { check: check.into(), witness: witness.into() });
    }
}

/// All strict-limit instances of the five kinds checked directly: terminal,
/// binary products, inserters, commas, pullbacks.
fn check_strict_lex(c: &FinPosCategory, report: &mut StructureReport) {
    if search_strict_limit(c, &DiagramSpec::terminal()).unwrap().is_err() {
        report.fail("strict terminal", "no terminal object");
    }
    for x in c.objects() {
        for y in c.objects() {
            if search_strict_limit(c, &DiagramSpec::binary_product(x, y)).unwrap().is_err() {
                report.fail("strict binary product", format!("({}, {})", c.object_name(x), c.object_name(y)));
            }
        }
    }
    for f in c.morphisms() {
        for g in c.morphisms() {
            if c.parallel(f, g) {
                let spec = DiagramSpec::inserter(c, f, g).unwrap();
                if search_strict_limit(c, &spec).unwrap().is_err() {
                    report.fail("strict inserter", format!("({}, {})", c.morphism_name(f), c.morphism_name(g)));
                }
            }
            if c.cod(f) == c.cod(g) {
                let comma = DiagramSpec::comma(c, f, g).unwrap();
                if search_strict_limit(c, &comma).unwrap().is_err() {
                    report.fail("strict comma", format!("({}, {})", c.morphism_name(f), c.morphism_name(g)));
                }
                let pb = DiagramSpec::pullback(c, f, g).unwrap();
                if search_strict_limit(c, &pb).unwrap().is_err() {
                    report.fail("strict pullback", format!("({}, {})", c.morphism_name(f), c.morphism_name(g)));
                }
            }
        }
    }
}

/// Every strict pullback square of (e, g), as (pulled-back leg toward dom g,
/// the full limit result).
fn pullback_squares(c: &FinPosCategory, e: MorphismId, g: MorphismId) -> Vec<(MorphismId, LimitResult)> {
    let spec = DiagramSpec::pullback(c, e, g).unwrap();
    all_strict_limits(c, &spec)
        .unwrap()
        .into_iter()
        .map(|lim| (lim.cone.legs[1], lim))
        .collect()
}

/// Regularity: strict finite limits, (so, ff) factorizations of every
/// morphism, and stability of so-morphisms under every strict pullback.
pub fn check_regular(c: &FinPosCategory) -> StructureReport {
    let mut report = StructureReport { failures: vec![] };
    check_strict_lex(c, &mut report);
    if !report.holds() {
        return report;
    }
    for f in c.morphisms() {
        if so_ff_factorize(c, f).is_none() {
            report.fail("(so,ff) factorization", c.morphism_name(f).to_string());
        }
    }
    if !report.holds() {
        return report;
    }
    for e in c.morphisms() {
        if !check_so(c, e).0 {
            continue;
        }
        for g in c.morphisms() {
            if c.cod(g) != c.cod(e) {
                continue;
            }
            for (pulled, _) in pullback_squares(c, e, g) {
                if !check_so(c, pulled).0 {
                    report.fail(
                        "so stability under pullback",
                        format!(
                            "pullback of {} along {} gives non-so {}",
                            c.morphism_name(e),
                            c.morphism_name(g),
                            c.morphism_name(pulled)
                        ),
                    );
                }
            }
        }
    }
    report
}

/// All jointly order-monic spans on all objects.
pub fn all_relations(c: &FinPosCategory) -> Vec<Span> {
    let mut out = Vec::new();
    for r in c.objects() {
        for x in c.objects() {
            for &r0 in c.hom(r, x) {
                for &r1 in c.hom(r, x) {
                    let span = Span { r, r0, r1, x };
                    if analyze_span(c, span).jointly_order_monic.holds {
                        out.push(span);
                    }
                }
            }
        }
    }
    out
}

/// All congruences (jointly order-monic + both characterizations).
pub fn all_congruences(c: &FinPosCategory) -> Vec<Span> {
    all_relations(c)
        .into_iter()
        .filter(|&s| matches!(is_congruence(c, s), Ok((true, _))))
        .collect()
}

/// Exactness: regular and every congruence effective.
pub fn check_exact(c: &FinPosCategory) -> StructureReport {
    let mut report = check_regular(c);
    if !report.holds() {
        return report;
    }
    for span in all_congruences(c) {
        if !is_effective_congruence(c, span).0 {
            report.fail(
                "congruence effectiveness",
                format!(
                    "span ({}, {}) on {} is not a kernel congruence",
                    c.morphism_name(span.r0),
                    c.morphism_name(span.r1),
                    c.object_name(span.x)
                ),
            );
        }
    }
    report
}

/// Is `p` so-projective: every f: P → B lifts along every so e: A ↠ B.
pub fn check_projective(c: &FinPosCategory, p: ObjectId) -> bool {
    for e in c.morphisms() {
        if !check_so(c, e).0 {
            continue;
        }
        let a = c.dom(e);
        let b = c.cod(e);
        for &f in c.hom(p, b) {
            let lift = c.hom(p, a).iter().any(|&l| c.comp(e, l) == f);
            if !lift {
                return false;
            }
        }
    }
    true
}

/// For each object, the covering object and so-morphism found for it.
pub type CoverMap = Vec<(ObjectId, Option<(ObjectId, MorphismId)>)>;

/// Is `objs` a projective cover: all listed objects projective and every
/// object admits an so-morphism from a listed one. Returns the cover map
/// (object → (cover object, so-morphism)) on success.
pub fn check_projective_cover(c: &FinPosCategory, objs: &[ObjectId]) -> (bool, CoverMap) {
    let mut ok = objs.iter().all(|&p| check_projective(c, p));
    let mut cover_map = Vec::new();
    for x in c.objects() {
        let mut found = None;
        'search: for &p in objs {
            for &e in c.hom(p, x) {
                if check_so(c, e).0 {
                    found = Some((p, e));
                    break 'search;
                }
            }
        }
        if found.is_none() {
            ok = false;
        }
        cover_map.push((x, found));
    }
    (ok, cover_map)
}

/// Weak-limit kinds a projective cover inherits from its ambient category.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverLimitKind {
    Terminal,
    BinaryProduct,
    Inserter,
    IdentityComma,
    Pullback,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("objects do not form a projective cover")]
    NotACover,
}

/// Confirms the full subcategory on a verified projective cover has all weak
/// limits of the given kind.
pub fn check_weak_limits_in_cover(
    c: &FinPosCategory,
    objs: &[ObjectId],
    kind: CoverLimitKind,
) -> Result<bool, CoverError> {
    if !check_projective_cover(c, objs).0 {
        return Err(CoverError::NotACover);
    }
    let sub = c.full_subcategory(objs).map_err(|_| CoverError::NotACover)?;
    let s = &sub.cat;
    let ok = match kind {
        CoverLimitKind::Terminal => crate::limits::weak_terminal(s).is_ok(),
        CoverLimitKind::BinaryProduct => s
            .objects()
            .all(|x| s.objects().all(|y| crate::limits::weak_product(s, x, y).is_ok())),
        CoverLimitKind::Inserter => s.morphisms().all(|f| {
            s.morphisms().all(|g| {
                !s.parallel(f, g) || crate::limits::weak_inserter(s, f, g).unwrap().is_ok()
            })
        }),
        CoverLimitKind::IdentityComma => s.objects().all(|x| {
            let id = s.identity(x);
            crate::limits::weak_comma(s, id, id).unwrap().is_ok()
        }),
        CoverLimitKind::Pullback => s.morphisms().all(|f| {
            s.morphisms().all(|g| {
                s.cod(f) != s.cod(g)
                    || crate::limits::weak_pullback(s, f, g).unwrap().is_ok()
            })
        }),
    };
    Ok(ok)
}

/// In a regular category, every so-morphism must be the coinserter of its
/// kernel congruence; checks that for `e`.
pub fn so_is_coinserter_of_kernel(c: &FinPosCategory, e: MorphismId) -> bool {
    match kernel_congruence(c, e) {
        Some(rel) => is_coinserter(c, rel.span.r0, rel.span.r1, e).is_some(),
        None => false,
    }
}

/// Convenience used in equivalence sweeps: e is so ⟺ e is an effective epi
/// ⟺ e is the coinserter of its kernel congruence, plus agreement with the
/// canonical coinserter search. Returns mismatching morphisms.
pub fn so_effective_epi_agreement(c: &FinPosCategory) -> Vec<MorphismId> {
    let mut bad = Vec::new();
    for e in c.morphisms() {
        let so = check_so(c, e).0;
        let eff = is_effective_epi(c, e);
        let coker = so_is_coinserter_of_kernel(c, e);
        if so != eff || so != coker {
            bad.push(e);
            continue;
        }
        if so {
            // The canonical coinserter of the kernel congruence reproduces e
            // up to isomorphism.
            let rel = kernel_congruence(c, e).expect("regular categories have commas");
            let canon = search_coinserter(c, rel.span.r0, rel.span.r1)
                .expect("parallel")
                .expect("so-morphisms are coinserters of their kernels");
            let same_up_to_iso = c.hom(c.cod(canon.q), c.cod(e)).iter().any(|&i| {
                c.is_iso(i) && c.comp(i, canon.q) == e
            });
            if !same_up_to_iso {
                bad.push(e);
            }
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{fixture_arrow, fixture_idem, fixture_one};

    const ID_A: MorphismId = MorphismId(0);
    const ID_B: MorphismId = MorphismId(1);
    const F: MorphismId = MorphismId(2);

    #[test]
    fn ff_verdicts() {
        let one = fixture_one();
        assert!(check_ff(&one, MorphismId(0)).0);
        let arrow = fixture_arrow();
        assert!(check_ff(&arrow, F).0);
        // In IDEM, e∘e ≤ e∘id but e ≰ id.
        let idem = fixture_idem();
        let (ok, witness) = check_ff(&idem, MorphismId(1));
        assert!(!ok);
        assert_eq!(witness, Some((ObjectId(0), MorphismId(1), MorphismId(0))));
    }

    #[test]
    fn so_verdicts() {
        let arrow = fixture_arrow();
        assert!(check_so(&arrow, ID_A).0);
        // f fails against m = f with the pair (id_a, id_b): no h: b → a.
        let (ok, failure) = check_so(&arrow, F);
        assert!(!ok);
        assert_eq!(
            failure,
            Some(SoFailure::NoMediator { m: F, f: ID_A, g: ID_B })
        );
        // In IDEM the only order-mono is id, and against m = id the second
        // mediator equation m∘h = g pins h uniquely, so e is so.
        let idem = fixture_idem();
        assert!(check_ff(&idem, MorphismId(0)).0);
        assert!(!check_ff(&idem, MorphismId(1)).0);
        assert!(check_so(&idem, MorphismId(1)).0);
    }

    #[test]
    fn factorization_of_arrow_f() {
        let arrow = fixture_arrow();
        let fac = so_ff_factorize(&arrow, F).expect("exists");
        assert_eq!(fac.e, ID_A);
        assert_eq!(fac.m, F);
        let idf = so_ff_factorize(&arrow, ID_A).expect("identity factors");
        assert_eq!((idf.e, idf.m), (ID_A, ID_A));
    }

    #[test]
    fn kernel_congruence_of_arrow_f() {
        let arrow = fixture_arrow();
        let rel = kernel_congruence(&arrow, F).expect("exists");
        assert_eq!(rel.span, Span { r: ObjectId(0), r0: ID_A, r1: ID_A, x: ObjectId(0) });
        assert!(matches!(is_congruence(&arrow, rel.span), Ok((true, _))));
    }

    #[test]
    fn kernel_congruences_are_congruences_everywhere() {
        for c in crate::enumerate::enumerate_categories(2, 4).unwrap() {
            for f in c.morphisms() {
                if let Some(rel) = kernel_congruence(&c, f) {
                    assert!(matches!(is_congruence(&c, rel.span), Ok((true, _))));
                }
            }
        }
    }

    #[test]
    fn congruence_routes_agree_on_corpus() {
        for c in crate::enumerate::enumerate_categories(2, 4).unwrap() {
            for span in all_relations(&c) {
                assert!(is_congruence(&c, span).is_ok());
            }
        }
    }

    #[test]
    fn effective_congruences_in_arrow() {
        let arrow = fixture_arrow();
        let diag = Span { r: ObjectId(0), r0: ID_A, r1: ID_A, x: ObjectId(0) };
        let (ok, q) = is_effective_congruence(&arrow, diag);
        assert!(ok);
        assert_eq!(q, Some(ID_A));
        let kf = kernel_congruence(&arrow, F).unwrap();
        assert!(is_effective_congruence(&arrow, kf.span).0);
    }

    #[test]
    fn regular_and_exact_verdicts() {
        assert!(check_exact(&fixture_one()).holds());
        assert!(check_exact(&fixture_arrow()).holds());
        let idem = check_regular(&fixture_idem());
        assert!(!idem.holds());
    }

    #[test]
    fn projectives_in_arrow() {
        let arrow = fixture_arrow();
        assert!(check_projective(&arrow, ObjectId(0)));
        assert!(check_projective(&arrow, ObjectId(1)));
        let (ok, map) = check_projective_cover(&arrow, &[ObjectId(0), ObjectId(1)]);
        assert!(ok);
        assert!(map.iter().all(|(_, m)| m.is_some()));
        let one = fixture_one();
        assert!(check_projective_cover(&one, &[ObjectId(0)]).0);
    }

    #[test]
    fn cover_limit_check_on_one() {
        let one = fixture_one();
        assert_eq!(
            check_weak_limits_in_cover(&one, &[ObjectId(0)], CoverLimitKind::BinaryProduct),
            Ok(true)
        );
        let idem = fixture_idem();
        // x is not projective in IDEM? Regardless: the cover precondition is
        // what's checked here — an empty list cannot cover.
        assert_eq!(
            check_weak_limits_in_cover(&idem, &[], CoverLimitKind::Terminal),
            Err(CoverError::NotACover)
        );
    }

    #[test]
    fn so_equals_effective_epi_in_regular_corpus() {
        for c in crate::enumerate::enumerate_categories(2, 4).unwrap() {
            if !check_regular(&c).holds() {
                continue;
            }
            assert!(so_effective_epi_agreement(&c).is_empty());
        }
    }

    #[test]
    fn ff_and_so_closed_under_composition_and_isos() {
        for c in crate::enumerate::enumerate_categories(2, 4).unwrap() {
            for f in c.morphisms() {
                if c.is_iso(f) {
                    assert!(check_ff(&c, f).0, "isos are ff");
                    assert!(check_so(&c, f).0, "isos are so");
                }
                for g in c.morphisms() {
                    if c.cod(f) != c.dom(g) {
                        continue;
                    }
                    let gf = c.comp(g, f);
                    if check_ff(&c, f).0 && check_ff(&c, g).0 {
                        assert!(check_ff(&c, gf).0, "ff closed under composition");
                    }
                    if check_so(&c, f).0 && check_so(&c, g).0 {
                        assert!(check_so(&c, gf).0, "so closed under composition");
                    }
                }
            }
        }
    }

    #[test]
    fn factorizations_unique_up_to_iso_in_regular_corpus() {
        for c in crate::enumerate::enumerate_categories(2, 4).unwrap() {
            if !check_regular(&c).holds() {
                continue;
            }
            for f in c.morphisms() {
                let facs = all_so_ff_factorizations(&c, f);
                assert!(!facs.is_empty());
                for a in &facs {
                    for b in &facs {
                        // a unique compatible iso i: middle_a → middle_b
                        let isos: Vec<MorphismId> = c
                            .hom(a.middle, b.middle)
                            .iter()
                            .copied()
                            .filter(|&i| {
                                c.is_iso(i)
                                    && c.comp(i, a.e) == b.e
                                    && c.comp(b.m, i) == a.m
                            })
                            .collect();
                        assert_eq!(isos.len(), 1, "unique compatible iso between factorizations");
                    }
                }
            }
        }
    }
}
