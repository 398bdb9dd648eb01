//! Poset-enriched functors, left-covering detection, and the extension of a
//! left covering functor to a regular functor on the exact completion.

use crate::category::FinPosCategory;
use crate::completion::{gamma, ExCompletion};
use crate::diagram::{Cone, DiagramSpec};
use crate::ids::{MorphismId, ObjectId};
use crate::limits::{
    all_weak_limits, is_strict_limit_cone, search_coinserter, search_strict_limit,
};
use crate::regexact::{
    analyze_span, check_ff, check_projective_cover, check_regular, check_so, is_effective_epi,
    so_ff_factorize, Relation, Span,
};
use thiserror::Error;

/// A locally monotone functor between finite poset-enriched categories.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosFunctor {
    pub source: FinPosCategory,
    pub target: FinPosCategory,
    pub obj_map: Vec<ObjectId>,
    pub mor_map: Vec<MorphismId>,
}

impl PosFunctor {
    pub fn identity(c: &FinPosCategory) -> PosFunctor {
        PosFunctor {
            source: c.clone(),
            target: c.clone(),
            obj_map: c.objects().collect(),
            mor_map: c.morphisms().collect(),
        }
    }

    pub fn on_obj(&self, x: ObjectId) -> ObjectId {
        self.obj_map[x.index()]
    }

    pub fn on_mor(&self, f: MorphismId) -> MorphismId {
        self.mor_map[f.index()]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctorError {
    #[error("not a functor: {law} ({witness})")]
    NotAFunctor { law: String, witness: String },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("coinserter missing in the target; the target failed exactness")]
    CoinserterMissing,
    #[error("diagram shape invalid: {0}")]
    DiagramShapeInvalid(String),
}

/// Checks totality, dom/cod preservation, identities, composition, and local
/// monotonicity.
pub fn validate_functor(f: &PosFunctor) -> Result<(), FunctorError> {
    let (s, t) = (&f.source, &f.target);
    if f.obj_map.len() != s.object_count() || f.mor_map.len() != s.morphism_count() {
        return Err(FunctorError::NotAFunctor {
            law: "totality".into(),
            witness: "maps must cover every id".into(),
        });
    }
    for x in &f.obj_map {
        if x.index() >= t.object_count() {
            return Err(FunctorError::NotAFunctor {
                law: "totality".into(),
                witness: format!("{:?} out of range", x),
            });
        }
    }
    for m in &f.mor_map {
        if m.index() >= t.morphism_count() {
            return Err(FunctorError::NotAFunctor {
                law: "totality".into(),
                witness: format!("{:?} out of range", m),
            });
        }
    }
    for g in s.morphisms() {
        let fg = f.on_mor(g);
        if t.dom(fg) != f.on_obj(s.dom(g)) || t.cod(fg) != f.on_obj(s.cod(g)) {
            return Err(FunctorError::NotAFunctor {
                law: "dom/cod".into(),
                witness: s.morphism_name(g).to_string(),
            });
        }
    }
    for x in s.objects() {
        if f.on_mor(s.identity(x)) != t.identity(f.on_obj(x)) {
            return Err(FunctorError::NotAFunctor {
                law: "identities".into(),
                witness: s.object_name(x).to_string(),
            });
        }
    }
    for g in s.morphisms() {
        for h in s.morphisms() {
            if let Some(hg) = s.compose(h, g) {
                if f.on_mor(hg) != t.comp(f.on_mor(h), f.on_mor(g)) {
                    return Err(FunctorError::NotAFunctor {
                        law: "composition".into(),
                        witness: format!("{} ∘ {}", s.morphism_name(h), s.morphism_name(g)),
                    });
                }
            }
        }
    }
    for a in s.morphisms() {
        for b in s.morphisms() {
            if s.le(a, b) && !t.le(f.on_mor(a), f.on_mor(b)) {
                return Err(FunctorError::NotAFunctor {
                    law: "local monotonicity".into(),
                    witness: format!("{} ≤ {}", s.morphism_name(a), s.morphism_name(b)),
                });
            }
        }
    }
    Ok(())
}

/// Every hom map must be a bijection onto the target hom-set between image
/// objects, preserving and reflecting the order.
pub fn check_fully_order_faithful(f: &PosFunctor) -> (bool, Option<String>) {
    let (s, t) = (&f.source, &f.target);
    for x in s.objects() {
        for y in s.objects() {
            let dom_hom = s.hom(x, y);
            let img_hom = t.hom(f.on_obj(x), f.on_obj(y));
            // surjective
            for &g in img_hom {
                if !dom_hom.iter().any(|&h| f.on_mor(h) == g) {
                    return (
                        false,
                        Some(format!(
                            "hom({}, {}) misses {}",
                            s.object_name(x),
                            s.object_name(y),
                            t.morphism_name(g)
                        )),
                    );
                }
            }
            for &a in dom_hom {
                for &b in dom_hom {
                    // injective
                    if a != b && f.on_mor(a) == f.on_mor(b) {
                        return (
                            false,
                            Some(format!(
                                "{} and {} collapse",
                                s.morphism_name(a),
                                s.morphism_name(b)
                            )),
                        );
                    }
                    // order-reflecting
                    if t.le(f.on_mor(a), f.on_mor(b)) && !s.le(a, b) {
                        return (
                            false,
                            Some(format!(
                                "order not reflected on {} ≤ {}",
                                s.morphism_name(a),
                                s.morphism_name(b)
                            )),
                        );
                    }
                }
            }
        }
    }
    (true, None)
}

/// A generating weak-limit instance whose comparison into the strict limit
/// of the image diagram failed to be an so-morphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LeftCoveringFailure {
    NoStrictLimitInTarget { instance: String },
    NoComparison { instance: String },
    ComparisonNotSo { instance: String, comparison: MorphismId },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeftCoveringReport {
    pub failures: Vec<LeftCoveringFailure>,
}

impl LeftCoveringReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

fn map_cone(f: &PosFunctor, cone: &Cone) -> Cone {
    Cone {
        apex: f.on_obj(cone.apex),
        legs: cone.legs.iter().map(|&l| f.on_mor(l)).collect(),
    }
}

fn comparison_check(
    f: &PosFunctor,
    source_spec: &DiagramSpec,
    target_spec: &DiagramSpec,
    instance: &str,
    failures: &mut Vec<LeftCoveringFailure>,
) {
    let weaks = all_weak_limits(&f.source, source_spec).expect("spec valid");
    if weaks.is_empty() {
        return; // nothing to cover
    }
    let strict = match search_strict_limit(&f.target, target_spec).expect("spec valid") {
        Ok(l) => l,
        Err(_) => {
            failures.push(LeftCoveringFailure::NoStrictLimitInTarget { instance: instance.into() });
            return;
        }
    };
    for weak in &weaks {
        let image = map_cone(f, &weak.cone);
        let mediators: Vec<MorphismId> = f
            .target
            .hom(image.apex, strict.cone.apex)
            .iter()
            .copied()
            .filter(|&u| {
                strict
                    .cone
                    .legs
                    .iter()
                    .zip(image.legs.iter())
                    .all(|(&sl, &il)| f.target.comp(sl, u) == il)
            })
            .collect();
        match mediators.first() {
            None => failures.push(LeftCoveringFailure::NoComparison {
                instance: format!("{} (weak limit on apex {})", instance, weak.cone.apex.0),
            }),
            Some(&u) => {
                if !check_so(&f.target, u).0 {
                    failures.push(LeftCoveringFailure::ComparisonNotSo {
                        instance: format!("{} (weak limit on apex {})", instance, weak.cone.apex.0),
                        comparison: u,
                    });
                }
            }
        }
    }
}

/// Left covering over the generating family: for every weak terminal, weak
/// binary product and weak inserter occurrence in the source, the canonical
/// comparison into the strict limit of the image diagram is so in the target.
pub fn check_left_covering(f: &PosFunctor) -> Result<LeftCoveringReport, FunctorError> {
    if !crate::limits::check_weakly_lex(&f.source).holds() {
        return Err(FunctorError::PreconditionFailed("source must be weakly lex".into()));
    }
    if !check_regular(&f.target).holds() {
        return Err(FunctorError::PreconditionFailed("target must be regular".into()));
    }
    let mut failures = Vec::new();
    let s = &f.source;

    comparison_check(f, &DiagramSpec::terminal(), &DiagramSpec::terminal(), "terminal", &mut failures);
    for x in s.objects() {
        for y in s.objects() {
            comparison_check(
                f,
                &DiagramSpec::binary_product(x, y),
                &DiagramSpec::binary_product(f.on_obj(x), f.on_obj(y)),
                &format!("product ({}, {})", s.object_name(x), s.object_name(y)),
                &mut failures,
            );
        }
    }
    for a in s.morphisms() {
        for b in s.morphisms() {
            if !s.parallel(a, b) {
                continue;
            }
            comparison_check(
                f,
                &DiagramSpec::inserter(s, a, b).expect("parallel"),
                &DiagramSpec::inserter(&f.target, f.on_mor(a), f.on_mor(b)).expect("parallel"),
                &format!("inserter ({}, {})", s.morphism_name(a), s.morphism_name(b)),
                &mut failures,
            );
        }
    }
    Ok(LeftCoveringReport { failures })
}

/// Image of a pseudocongruence under a left covering functor: the pairing
/// ⟨Fr0, Fr1⟩ into FX × FX followed by its (so, ff) factorization. The
/// resulting span must be a congruence in the target.
pub fn image_congruence_check(f: &PosFunctor, span: Span) -> Result<Relation, FunctorError> {
    let t = &f.target;
    let fx = f.on_obj(span.x);
    let fr = f.on_obj(span.r);
    let spec = DiagramSpec::binary_product(fx, fx);
    let product = search_strict_limit(t, &spec)
        .expect("valid")
        .map_err(|_| FunctorError::PreconditionFailed("target lacks FX × FX".into()))?;
    let (p0, p1) = (product.cone.legs[0], product.cone.legs[1]);
    let pairing = t
        .hom(fr, product.cone.apex)
        .iter()
        .copied()
        .find(|&u| t.comp(p0, u) == f.on_mor(span.r0) && t.comp(p1, u) == f.on_mor(span.r1))
        .ok_or_else(|| FunctorError::PreconditionFailed("pairing into the product missing".into()))?;
    let fac = so_ff_factorize(t, pairing)
        .ok_or_else(|| FunctorError::PreconditionFailed("target lacks (so,ff) factorizations".into()))?;
    let s0 = t.comp(p0, fac.m);
    let s1 = t.comp(p1, fac.m);
    Ok(analyze_span(t, Span { r: fac.middle, r0: s0, r1: s1, x: fx }))
}

/// The extension of a left covering functor to the completion.
#[derive(Debug, Clone)]
pub struct ExtensionResult {
    pub fbar: PosFunctor,
    /// Per completion object, the coinserter of the image span: FX ↠ F̄(X,R).
    pub per_object_q: Vec<MorphismId>,
    /// Components FX → F̄(ΓX) of the natural isomorphism F̄ ∘ Γ ≅ F.
    pub natural_iso: Vec<MorphismId>,
}

/// Defines F̄ on objects as the coinserter of (Fr0, Fr1) and on morphisms as
/// the unique mediator between the coinserter rows, then verifies the
/// regular-functor contract and the natural isomorphism F̄ ∘ Γ ≅ F.
pub fn extend_functor(f: &PosFunctor, cex: &ExCompletion) -> Result<ExtensionResult, FunctorError> {
    if cex.base != f.source {
        return Err(FunctorError::PreconditionFailed(
            "completion must be built from the functor's source".into(),
        ));
    }
    let t = &f.target;
    let n_obj = cex.cat.object_count();

    let mut per_object_q = Vec::with_capacity(n_obj);
    let mut obj_map = Vec::with_capacity(n_obj);
    for i in 0..n_obj {
        let span = cex.pseudocongruence(ObjectId(i as u32)).span;
        let q = search_coinserter(t, f.on_mor(span.r0), f.on_mor(span.r1))
            .expect("parallel image pair")
            .map_err(|_| FunctorError::CoinserterMissing)?;
        per_object_q.push(q.q);
        obj_map.push(t.cod(q.q));
    }

    let mut mor_map = Vec::with_capacity(cex.cat.morphism_count());
    for m in cex.cat.morphisms() {
        let hom = cex.provenance(m);
        let q_src = per_object_q[hom.src.index()];
        let q_dst = per_object_q[hom.dst.index()];
        let h = t.comp(q_dst, f.on_mor(hom.representative));
        let mediators: Vec<MorphismId> = t
            .hom(t.cod(q_src), t.cod(q_dst))
            .iter()
            .copied()
            .filter(|&u| t.comp(u, q_src) == h)
            .collect();
        if mediators.len() != 1 {
            return Err(FunctorError::CoinserterMissing);
        }
        mor_map.push(mediators[0]);
    }

    let fbar = PosFunctor {
        source: cex.cat.clone(),
        target: t.clone(),
        obj_map,
        mor_map,
    };
    validate_functor(&fbar)?;

    // natural isomorphism components: the coinserter maps at Γ-objects
    let g = gamma(&f.source, cex);
    let mut natural_iso = Vec::with_capacity(f.source.object_count());
    for x in f.source.objects() {
        let gx = g.functor.on_obj(x);
        let eta = per_object_q[gx.index()];
        if !t.is_iso(eta) {
            return Err(FunctorError::PreconditionFailed(
                "comparison at an embedded object is not invertible".into(),
            ));
        }
        natural_iso.push(eta);
    }
    for m in f.source.morphisms() {
        let (x, y) = (f.source.dom(m), f.source.cod(m));
        let lhs = t.comp(fbar.on_mor(g.functor.on_mor(m)), natural_iso[x.index()]);
        let rhs = t.comp(natural_iso[y.index()], f.on_mor(m));
        if lhs != rhs {
            return Err(FunctorError::PreconditionFailed(
                "naturality square fails for the comparison isomorphism".into(),
            ));
        }
    }

    Ok(ExtensionResult { fbar, per_object_q, natural_iso })
}

/// Regular-functor contract: preserves the strict terminal, binary products,
/// inserters, and so-morphisms. The source must have the strict limits.
pub fn check_regular_functor(f: &PosFunctor) -> Result<(), String> {
    validate_functor(f).map_err(|e| e.to_string())?;
    let (s, t) = (&f.source, &f.target);

    if let Ok(lim) = search_strict_limit(s, &DiagramSpec::terminal()).expect("valid") {
        let image = map_cone(f, &lim.cone);
        if !is_strict_limit_cone(t, &DiagramSpec::terminal(), &image) {
            return Err("terminal not preserved".into());
        }
    }
    for x in s.objects() {
        for y in s.objects() {
            let spec = DiagramSpec::binary_product(x, y);
            if let Ok(lim) = search_strict_limit(s, &spec).expect("valid") {
                let image = map_cone(f, &lim.cone);
                let target_spec = DiagramSpec::binary_product(f.on_obj(x), f.on_obj(y));
                if !is_strict_limit_cone(t, &target_spec, &image) {
                    return Err(format!("product ({}, {}) not preserved", s.object_name(x), s.object_name(y)));
                }
            }
        }
    }
    for a in s.morphisms() {
        for b in s.morphisms() {
            if !s.parallel(a, b) {
                continue;
            }
            let spec = DiagramSpec::inserter(s, a, b).expect("parallel");
            if let Ok(lim) = search_strict_limit(s, &spec).expect("valid") {
                let image = map_cone(f, &lim.cone);
                let target_spec =
                    DiagramSpec::inserter(t, f.on_mor(a), f.on_mor(b)).expect("parallel");
                if !is_strict_limit_cone(t, &target_spec, &image) {
                    return Err(format!(
                        "inserter ({}, {}) not preserved",
                        s.morphism_name(a),
                        s.morphism_name(b)
                    ));
                }
            }
        }
    }
    for e in s.morphisms() {
        if check_so(s, e).0 && !check_so(t, f.on_mor(e)).0 {
            return Err(format!("so-morphism {} not preserved", s.morphism_name(e)));
        }
    }
    Ok(())
}

/// Diagram shape for the inserter-rows lemma: two inserter rows with an
/// effective epi p between the middles and an order-mono m between the ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaDiagram {
    pub top: (MorphismId, MorphismId, MorphismId),
    pub bottom: (MorphismId, MorphismId, MorphismId),
    pub p: MorphismId,
    pub m: MorphismId,
}

/// In a regular category, the induced morphism between the inserter apexes
/// of the diagram is again an effective epi, and the left-hand square is a
/// strict pullback. Verifies both by search.
pub fn useful_lemma_check(c: &FinPosCategory, d: &LemmaDiagram) -> Result<bool, FunctorError> {
    let (i, f0, f1) = d.top;
    let (ip, f0p, f1p) = d.bottom;
    if !c.parallel(f0, f1) || !c.parallel(f0p, f1p) {
        return Err(FunctorError::DiagramShapeInvalid("rows must be parallel pairs".into()));
    }
    if c.cod(i) != c.dom(f0) || c.cod(ip) != c.dom(f0p) {
        return Err(FunctorError::DiagramShapeInvalid("row legs must target the pairs".into()));
    }
    if c.dom(d.p) != c.dom(f0) || c.cod(d.p) != c.dom(f0p) {
        return Err(FunctorError::DiagramShapeInvalid("p must connect the middles".into()));
    }
    if c.dom(d.m) != c.cod(f0) || c.cod(d.m) != c.cod(f0p) {
        return Err(FunctorError::DiagramShapeInvalid("m must connect the ends".into()));
    }
    if c.comp(f0p, d.p) != c.comp(d.m, f0) || c.comp(f1p, d.p) != c.comp(d.m, f1) {
        return Err(FunctorError::DiagramShapeInvalid("squares must commute".into()));
    }
    let top_spec = DiagramSpec::inserter(c, f0, f1).expect("parallel");
    let bottom_spec = DiagramSpec::inserter(c, f0p, f1p).expect("parallel");
    if !is_strict_limit_cone(c, &top_spec, &Cone { apex: c.dom(i), legs: vec![i] }) {
        return Err(FunctorError::DiagramShapeInvalid("top row is not an inserter".into()));
    }
    if !is_strict_limit_cone(c, &bottom_spec, &Cone { apex: c.dom(ip), legs: vec![ip] }) {
        return Err(FunctorError::DiagramShapeInvalid("bottom row is not an inserter".into()));
    }
    if !is_effective_epi(c, d.p) {
        return Err(FunctorError::DiagramShapeInvalid("p must be an effective epi".into()));
    }
    if !check_ff(c, d.m).0 {
        return Err(FunctorError::DiagramShapeInvalid("m must be an order-mono".into()));
    }

    // induced q: unique morphism with i' ∘ q = p ∘ i
    let want = c.comp(d.p, i);
    let qs: Vec<MorphismId> = c
        .hom(c.dom(i), c.dom(ip))
        .iter()
        .copied()
        .filter(|&q| c.comp(ip, q) == want)
        .collect();
    if qs.len() != 1 {
        return Ok(false);
    }
    let q = qs[0];
    if !is_effective_epi(c, q) {
        return Ok(false);
    }
    // the left-hand square is a strict pullback of (i', p)
    let pb_spec = DiagramSpec::pullback(c, ip, d.p).expect("common codomain");
    let cone = Cone { apex: c.dom(i), legs: vec![q, i, want] };
    Ok(is_strict_limit_cone(c, &pb_spec, &cone))
}

/// All diagrams in the category matching the lemma shape, over every strict
/// inserter cone of every parallel pair.
pub fn find_lemma_diagrams(c: &FinPosCategory) -> Vec<LemmaDiagram> {
    let mut rows = Vec::new();
    for f0 in c.morphisms() {
        for f1 in c.morphisms() {
            if !c.parallel(f0, f1) {
                continue;
            }
            let spec = DiagramSpec::inserter(c, f0, f1).expect("parallel");
            for lim in crate::limits::all_strict_limits(c, &spec).expect("valid") {
                rows.push((lim.cone.legs[0], f0, f1));
            }
        }
    }
    let mut out = Vec::new();
    for &top in &rows {
        for &bottom in &rows {
            let (_, f0, f1) = top;
            let (_, f0p, f1p) = bottom;
            for p in c.hom(c.dom(f0), c.dom(f0p)).iter().copied() {
                if !is_effective_epi(c, p) {
                    continue;
                }
                for m in c.hom(c.cod(f0), c.cod(f0p)).iter().copied() {
                    if !check_ff(c, m).0 {
                        continue;
                    }
                    if c.comp(f0p, p) == c.comp(m, f0) && c.comp(f1p, p) == c.comp(m, f1) {
                        out.push(LemmaDiagram { top, bottom, p, m });
                    }
                }
            }
        }
    }
    out
}

/// Equivalence of categories: fully order-faithful and essentially
/// surjective.
pub fn check_equivalence(f: &PosFunctor) -> bool {
    if validate_functor(f).is_err() || !check_fully_order_faithful(f).0 {
        return false;
    }
    f.target.objects().all(|y| {
        f.source
            .objects()
            .any(|x| f.target.find_iso(f.on_obj(x), y).is_some())
    })
}

/// All functors between two small categories, by exhaustive assignment with
/// law pruning.
pub fn enumerate_functors(source: &FinPosCategory, target: &FinPosCategory) -> Vec<PosFunctor> {
    let mut out = Vec::new();
    let n_obj = source.object_count();
    let mut obj_map: Vec<ObjectId> = vec![ObjectId(0); n_obj];
    rec_obj(source, target, 0, &mut obj_map, &mut out);
    return out;

    fn rec_obj(
        s: &FinPosCategory,
        t: &FinPosCategory,
        k: usize,
        obj_map: &mut Vec<ObjectId>,
        out: &mut Vec<PosFunctor>,
    ) {
        if k == s.object_count() {
            let mut mor_map: Vec<Option<MorphismId>> = vec![None; s.morphism_count()];
            for x in s.objects() {
                mor_map[s.identity(x).index()] = Some(t.identity(obj_map[x.index()]));
            }
            rec_mor(s, t, 0, obj_map, &mut mor_map, out);
            return;
        }
        for y in t.objects() {
            obj_map[k] = y;
            rec_obj(s, t, k + 1, obj_map, out);
        }
    }

    fn consistent(
        s: &FinPosCategory,
        t: &FinPosCategory,
        mor_map: &[Option<MorphismId>],
    ) -> bool {
        for g in s.morphisms() {
            for h in s.morphisms() {
                if let Some(hg) = s.compose(h, g) {
                    if let (Some(fg), Some(fh), Some(fhg)) = (
                        mor_map[g.index()],
                        mor_map[h.index()],
                        mor_map[hg.index()],
                    ) {
                        if t.compose(fh, fg) != Some(fhg) {
                            return false;
                        }
                    }
                }
            }
        }
        for a in s.morphisms() {
            for b in s.morphisms() {
                if s.le(a, b) {
                    if let (Some(fa), Some(fb)) = (mor_map[a.index()], mor_map[b.index()]) {
                        if !t.le(fa, fb) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn rec_mor(
        s: &FinPosCategory,
        t: &FinPosCategory,
        k: usize,
        obj_map: &Vec<ObjectId>,
        mor_map: &mut Vec<Option<MorphismId>>,
        out: &mut Vec<PosFunctor>,
    ) {
        if k == s.morphism_count() {
            let f = PosFunctor {
                source: s.clone(),
                target: t.clone(),
                obj_map: obj_map.clone(),
                mor_map: mor_map.iter().map(|m| m.unwrap()).collect(),
            };
            if validate_functor(&f).is_ok() {
                out.push(f);
            }
            return;
        }
        let m = MorphismId(k as u32);
        if mor_map[k].is_some() {
            rec_mor(s, t, k + 1, obj_map, mor_map, out);
            return;
        }
        let (d, c) = (obj_map[s.dom(m).index()], obj_map[s.cod(m).index()]);
        for &cand in t.hom(d, c) {
            mor_map[k] = Some(cand);
            if consistent(s, t, mor_map) {
                rec_mor(s, t, k + 1, obj_map, mor_map, out);
            }
            mor_map[k] = None;
        }
    }
}

/// Natural isomorphism search between parallel functors: componentwise isos
/// with all naturality squares commuting.
pub fn naturally_isomorphic(f: &PosFunctor, g: &PosFunctor) -> bool {
    assert_eq!(f.source, g.source);
    assert_eq!(f.target, g.target);
    let t = &f.target;
    let s = &f.source;
    // choose a component per object; backtrack over candidates
    let mut components: Vec<MorphismId> = Vec::with_capacity(s.object_count());
    return rec(s, t, f, g, &mut components);

    fn rec(
        s: &FinPosCategory,
        t: &FinPosCategory,
        f: &PosFunctor,
        g: &PosFunctor,
        components: &mut Vec<MorphismId>,
    ) -> bool {
        let k = components.len();
        if k == s.object_count() {
            // naturality on every morphism
            return s.morphisms().all(|m| {
                let (x, y) = (s.dom(m), s.cod(m));
                t.comp(components[y.index()], f.on_mor(m))
                    == t.comp(g.on_mor(m), components[x.index()])
            });
        }
        let x = ObjectId(k as u32);
        for &cand in t.hom(f.on_obj(x), g.on_obj(x)) {
            if !t.is_iso(cand) {
                continue;
            }
            components.push(cand);
            if rec(s, t, f, g, components) {
                components.pop();
                return true;
            }
            components.pop();
        }
        false
    }
}

/// Report of the characterization theorem: an exact category with a
/// projective cover is equivalent to the exact completion of that cover.
#[derive(Debug, Clone)]
pub struct CoverTheoremReport {
    pub cover_weakly_lex: bool,
    pub inclusion_left_covering: bool,
    pub extension_equivalence: bool,
}

impl CoverTheoremReport {
    pub fn holds(&self) -> bool {
        self.cover_weakly_lex && self.inclusion_left_covering && self.extension_equivalence
    }
}

/// Builds the full subcategory on a verified projective cover, completes it,
/// extends the inclusion, and checks the extension is an equivalence.
pub fn check_projective_cover_theorem(
    e: &FinPosCategory,
    cover: &[ObjectId],
) -> Result<CoverTheoremReport, FunctorError> {
    if !crate::regexact::check_exact(e).holds() {
        return Err(FunctorError::PreconditionFailed("category must be exact".into()));
    }
    if !check_projective_cover(e, cover).0 {
        return Err(FunctorError::PreconditionFailed("objects must form a projective cover".into()));
    }
    let sub = e.full_subcategory(cover).map_err(|err| {
        FunctorError::PreconditionFailed(err.to_string())
    })?;
    let cover_weakly_lex = crate::limits::check_weakly_lex(&sub.cat).holds();
    if !cover_weakly_lex {
        return Ok(CoverTheoremReport {
            cover_weakly_lex,
            inclusion_left_covering: false,
            extension_equivalence: false,
        });
    }
    let inclusion = PosFunctor {
        source: sub.cat.clone(),
        target: e.clone(),
        obj_map: sub.object_map.clone(),
        mor_map: sub.morphism_map.clone(),
    };
    validate_functor(&inclusion)?;
    let inclusion_left_covering = check_left_covering(&inclusion)?.holds();
    if !inclusion_left_covering {
        return Ok(CoverTheoremReport {
            cover_weakly_lex,
            inclusion_left_covering,
            extension_equivalence: false,
        });
    }
    let pex = crate::completion::build_exact_completion(&sub.cat)
        .map_err(|err| FunctorError::PreconditionFailed(err.to_string()))?;
    let ext = extend_functor(&inclusion, &pex)?;
    let extension_equivalence = check_equivalence(&ext.fbar);
    Ok(CoverTheoremReport {
        cover_weakly_lex,
        inclusion_left_covering,
        extension_equivalence,
    })
}
