//! The exact completion of a weakly lex category.
//!
//! Objects of the completion are pseudocongruences of the base: parallel
//! pairs r0, r1: R → X that are order-reflexive and transitive. Morphisms
//! (X,R) → (Y,S) are equivalence classes of liftable base morphisms, ordered
//! by factorization through the target pseudocongruence. The construction
//! stores its witnesses (lifts, order witnesses, reflexivity and transitivity
//! factorizations) so reports can replay them.
//!
//! The recipe cross-checks mirror the explicit two-stage weak-limit
//! constructions of products, commas, pullbacks, inserters, (so,ff)
//! factorizations and congruence quotients inside the completion, and compare
//! each against brute-force search.

use crate::category::{validate_category, FinPosCategory, RawCategory};
use crate::diagram::{Cone, DiagramSpec, Edge};
use crate::functor::{check_fully_order_faithful, validate_functor, PosFunctor};
use crate::ids::{MorphismId, ObjectId};
use crate::limits::{
    check_weakly_lex, is_coinserter, is_strict_limit_cone, search_coinserter, search_weak_limit,
    weak_comma, weak_product, weak_terminal, WeaklyLexReport,
};
use crate::regexact::Span;
use std::collections::BTreeMap;
use thiserror::Error;

/// A validated pseudocongruence with stored witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pseudocongruence {
    pub span: Span,
    /// (a0, a1) with a0 ≤ a1 → u with r0∘u = a0, r1∘u = a1.
    pub order_reflexivity: BTreeMap<(MorphismId, MorphismId), MorphismId>,
    /// (a, b) with r1∘a = r0∘b → t with r0∘t = r0∘a, r1∘t = r1∘b.
    pub transitivity: BTreeMap<(MorphismId, MorphismId), MorphismId>,
}

/// Provenance of one morphism class of the completion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomClass {
    pub src: ObjectId,
    pub dst: ObjectId,
    /// Least base morphism in the ≈-class.
    pub representative: MorphismId,
    /// All base morphisms in the class, sorted.
    pub members: Vec<MorphismId>,
    /// A lift f̄ of the representative: s0∘f̄ = f∘r0 and s1∘f̄ = f∘r1.
    pub lift: MorphismId,
}

/// The exact completion: a finite category whose objects carry their
/// pseudocongruence provenance and whose morphisms are classes with stored
/// witnesses.
#[derive(Debug, Clone)]
pub struct ExCompletion {
    pub cat: FinPosCategory,
    pub base: FinPosCategory,
    pub objects: Vec<Pseudocongruence>,
    pub homs: Vec<HomClass>,
    /// ([f], [g]) with [f] ≤ [g] → the base witness Σ with s0∘Σ = f, s1∘Σ = g.
    pub order_witnesses: BTreeMap<(MorphismId, MorphismId), MorphismId>,
    span_index: BTreeMap<Span, ObjectId>,
    class_index: BTreeMap<(ObjectId, ObjectId, MorphismId), MorphismId>,
}

/// Caps on the size of the built completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeGuard {
    pub max_objects: usize,
    pub max_morphisms: usize,
}

impl Default for SizeGuard {
    fn default() -> Self {
        SizeGuard { max_objects: 512, max_morphisms: 8192 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompletionError {
    #[error("category is not weakly lex ({missing} missing weak limit instances)")]
    NotWeaklyLex { missing: usize },
    #[error("size guard exceeded: {what} count {got} over cap {cap}")]
    SizeGuardExceeded { what: String, got: usize, cap: usize },
}

/// A recipe disagreed with brute-force search; this is a library bug when it
/// fires on a validated completion.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("construction mismatch: {0}")]
pub struct ConstructionMismatch(pub String);

fn require_weakly_lex(c: &FinPosCategory) -> Result<WeaklyLexReport, CompletionError> {
    let report = check_weakly_lex(c);
    if !report.holds() {
        return Err(CompletionError::NotWeaklyLex { missing: report.missing.len() });
    }
    Ok(report)
}

/// Is the parallel pair a pseudocongruence? Returns the witness maps.
pub fn check_pseudocongruence(c: &FinPosCategory, span: Span) -> Option<Pseudocongruence> {
    let Span { r, r0, r1, x } = span;
    let mut order_reflexivity = BTreeMap::new();
    for a in c.objects() {
        for &a0 in c.hom(a, x) {
            for &a1 in c.hom(a, x) {
                if !c.le(a0, a1) {
                    continue;
                }
                let u = c
                    .hom(a, r)
                    .iter()
                    .copied()
                    .find(|&u| c.comp(r0, u) == a0 && c.comp(r1, u) == a1)?;
                order_reflexivity.insert((a0, a1), u);
            }
        }
    }
    let mut transitivity = BTreeMap::new();
    for a in c.objects() {
        for &u in c.hom(a, r) {
            for &v in c.hom(a, r) {
                if c.comp(r1, u) != c.comp(r0, v) {
                    continue;
                }
                let t = c
                    .hom(a, r)
                    .iter()
                    .copied()
                    .find(|&t| c.comp(r0, t) == c.comp(r0, u) && c.comp(r1, t) == c.comp(r1, v))?;
                transitivity.insert((u, v), t);
            }
        }
    }
    Some(Pseudocongruence { span, order_reflexivity, transitivity })
}

/// All pseudocongruences of a weakly lex category, in deterministic
/// (X, R, r0, r1) order.
pub fn enumerate_pseudocongruences(
    c: &FinPosCategory,
) -> Result<Vec<Pseudocongruence>, CompletionError> {
    require_weakly_lex(c)?;
    let mut out = Vec::new();
    for x in c.objects() {
        for r in c.objects() {
            for &r0 in c.hom(r, x) {
                for &r1 in c.hom(r, x) {
                    let span = Span { r, r0, r1, x };
                    if let Some(pc) = check_pseudocongruence(c, span) {
                        out.push(pc);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Builds the exact completion with the default size guard.
pub fn build_exact_completion(c: &FinPosCategory) -> Result<ExCompletion, CompletionError> {
    build_exact_completion_with(c, SizeGuard::default())
}

pub fn build_exact_completion_with(
    c: &FinPosCategory,
    guard: SizeGuard,
) -> Result<ExCompletion, CompletionError> {
    let pcs = enumerate_pseudocongruences(c)?;
    if pcs.len() > guard.max_objects {
        return Err(CompletionError::SizeGuardExceeded {
            what: "objects".into(),
            got: pcs.len(),
            cap: guard.max_objects,
        });
    }

    let n_obj = pcs.len();
    let mut span_index = BTreeMap::new();
    for (i, pc) in pcs.iter().enumerate() {
        span_index.insert(pc.span, ObjectId(i as u32));
    }

    // Liftable morphisms per hom-pair, their ≼ relation, and the ≈-classes.
    struct HomData {
        src: usize,
        dst: usize,
        classes: Vec<Vec<MorphismId>>,
        lifts: BTreeMap<MorphismId, MorphismId>,
        sigma: BTreeMap<(MorphismId, MorphismId), MorphismId>,
    }

    let pairs: Vec<(usize, usize)> =
        (0..n_obj).flat_map(|i| (0..n_obj).map(move |j| (i, j))).collect();
    let hom_data: Vec<HomData> = crate::par::map_collect(pairs, |(i, j)| {
        let rsp = pcs[i].span;
        let ssp = pcs[j].span;
        let mut liftable: Vec<MorphismId> = Vec::new();
        let mut lifts = BTreeMap::new();
        for &f in c.hom(rsp.x, ssp.x) {
            let lift = c.hom(rsp.r, ssp.r).iter().copied().find(|&fb| {
                c.comp(ssp.r0, fb) == c.comp(f, rsp.r0) && c.comp(ssp.r1, fb) == c.comp(f, rsp.r1)
            });
            if let Some(fb) = lift {
                liftable.push(f);
                lifts.insert(f, fb);
            }
        }
        // f ≼ g iff some Σ: X → S has s0∘Σ = f and s1∘Σ = g.
        let mut sigma = BTreeMap::new();
        let mut le = vec![false; liftable.len() * liftable.len()];
        for (fi, &f) in liftable.iter().enumerate() {
            for (gi, &g) in liftable.iter().enumerate() {
                let s = c
                    .hom(rsp.x, ssp.r)
                    .iter()
                    .copied()
                    .find(|&s| c.comp(ssp.r0, s) == f && c.comp(ssp.r1, s) == g);
                if let Some(s) = s {
                    le[fi * liftable.len() + gi] = true;
                    sigma.insert((f, g), s);
                }
            }
        }
        // ≼ must be a preorder on liftables (reflexivity and transitivity
        // come from the pseudocongruence structure of S).
        for fi in 0..liftable.len() {
            assert!(le[fi * liftable.len() + fi], "≼ must be reflexive");
            for gi in 0..liftable.len() {
                for hi in 0..liftable.len() {
                    if le[fi * liftable.len() + gi] && le[gi * liftable.len() + hi] {
                        assert!(le[fi * liftable.len() + hi], "≼ must be transitive");
                    }
                }
            }
        }
        // classes of the induced equivalence, ordered by least member
        let mut classes: Vec<Vec<MorphismId>> = Vec::new();
        let mut assigned = vec![false; liftable.len()];
        for fi in 0..liftable.len() {
            if assigned[fi] {
                continue;
            }
            let mut class = Vec::new();
            for gi in 0..liftable.len() {
                if le[fi * liftable.len() + gi] && le[gi * liftable.len() + fi] {
                    class.push(liftable[gi]);
                    assigned[gi] = true;
                }
            }
            classes.push(class);
        }
        HomData { src: i, dst: j, classes, lifts, sigma }
    });

    let total_classes: usize = hom_data.iter().map(|h| h.classes.len()).sum();
    if total_classes > guard.max_morphisms {
        return Err(CompletionError::SizeGuardExceeded {
            what: "morphisms".into(),
            got: total_classes,
            cap: guard.max_morphisms,
        });
    }

    // Assign dense morphism ids.
    let mut homs: Vec<HomClass> = Vec::new();
    let mut class_index: BTreeMap<(ObjectId, ObjectId, MorphismId), MorphismId> = BTreeMap::new();
    let mut order_witnesses = BTreeMap::new();
    for h in &hom_data {
        for class in &h.classes {
            let id = MorphismId(homs.len() as u32);
            let rep = class[0];
            for &m in class {
                class_index.insert((ObjectId(h.src as u32), ObjectId(h.dst as u32), m), id);
            }
            homs.push(HomClass {
                src: ObjectId(h.src as u32),
                dst: ObjectId(h.dst as u32),
                representative: rep,
                members: class.clone(),
                lift: h.lifts[&rep],
            });
        }
    }
    let n_mor = homs.len();

    // Order between classes, with Σ witnesses on representatives.
    let mut order_pairs = Vec::new();
    for h in &hom_data {
        for ci in 0..h.classes.len() {
            for cj in 0..h.classes.len() {
                let fi = h.classes[ci][0];
                let fj = h.classes[cj][0];
                if let Some(&s) = h.sigma.get(&(fi, fj)) {
                    let a = class_index[&(ObjectId(h.src as u32), ObjectId(h.dst as u32), fi)];
                    let b = class_index[&(ObjectId(h.src as u32), ObjectId(h.dst as u32), fj)];
                    if a != b {
                        order_pairs.push((a, b));
                    }
                    order_witnesses.insert((a, b), s);
                }
            }
        }
    }

    // Composition by representatives; well-definedness asserted over all
    // member pairs.
    let mut compose = vec![None; n_mor * n_mor];
    for g in 0..n_mor {
        for f in 0..n_mor {
            if homs[f].dst != homs[g].src {
                continue;
            }
            let comp_rep = c.comp(homs[g].representative, homs[f].representative);
            let id = class_index
                .get(&(homs[f].src, homs[g].dst, comp_rep))
                .copied()
                .expect("composite of liftable classes must be liftable");
            for &fm in &homs[f].members {
                for &gm in &homs[g].members {
                    let alt = class_index
                        .get(&(homs[f].src, homs[g].dst, c.comp(gm, fm)))
                        .copied();
                    assert_eq!(alt, Some(id), "≈-classes must compose well-definedly");
                }
            }
            compose[g * n_mor + f] = Some(id);
        }
    }

    let identities: Vec<MorphismId> = (0..n_obj)
        .map(|i| {
            let x = pcs[i].span.x;
            class_index[&(ObjectId(i as u32), ObjectId(i as u32), c.identity(x))]
        })
        .collect();

    let object_names: Vec<String> = pcs
        .iter()
        .map(|pc| {
            format!(
                "⟨{};{},{},{}⟩",
                c.object_name(pc.span.x),
                c.object_name(pc.span.r),
                c.morphism_name(pc.span.r0),
                c.morphism_name(pc.span.r1)
            )
        })
        .collect();
    let morphism_names: Vec<String> = homs
        .iter()
        .map(|h| format!("[{}]:{}→{}", c.morphism_name(h.representative), h.src.0, h.dst.0))
        .collect();

    let cat = validate_category(RawCategory {
        object_names,
        morphism_names,
        dom: homs.iter().map(|h| h.src).collect(),
        cod: homs.iter().map(|h| h.dst).collect(),
        identities,
        compose,
        order_pairs,
    })
    .expect("the completion must validate as a category");

    Ok(ExCompletion {
        cat,
        base: c.clone(),
        objects: pcs,
        homs,
        order_witnesses,
        span_index,
        class_index,
    })
}

impl ExCompletion {
    /// Completion object carrying exactly this base span, if any.
    pub fn object_of_span(&self, span: Span) -> Option<ObjectId> {
        self.span_index.get(&span).copied()
    }

    /// The class of a liftable base morphism between two completion objects.
    pub fn class_of(&self, src: ObjectId, dst: ObjectId, f: MorphismId) -> Option<MorphismId> {
        self.class_index.get(&(src, dst, f)).copied()
    }

    pub fn provenance(&self, class: MorphismId) -> &HomClass {
        &self.homs[class.index()]
    }

    pub fn pseudocongruence(&self, obj: ObjectId) -> &Pseudocongruence {
        &self.objects[obj.index()]
    }
}

/// The canonical embedding of the base into its completion: X ↦ (X, I_X)
/// with I_X a chosen weak comma of (1_X, 1_X), and f ↦ [f].
#[derive(Debug, Clone)]
pub struct GammaFunctor {
    pub functor: PosFunctor,
    /// Chosen weak comma span per base object: i0 ≤ i1 on X.
    pub commas: Vec<Span>,
}

/// Builds Γ with the canonical weak comma choice per object.
pub fn gamma(c: &FinPosCategory, e: &ExCompletion) -> GammaFunctor {
    gamma_with_comma_choice(c, e, |c, x| {
        let id = c.identity(x);
        let lim = weak_comma(c, id, id)
            .expect("identity pair")
            .expect("weakly lex base has identity commas");
        Cone { apex: lim.cone.apex, legs: lim.cone.legs }
    })
}

/// Builds Γ from any choice of weak comma cone per object. Used to confirm
/// that the embedding is independent of the choice up to isomorphism.
pub fn gamma_with_comma_choice(
    c: &FinPosCategory,
    e: &ExCompletion,
    choose: impl Fn(&FinPosCategory, ObjectId) -> Cone,
) -> GammaFunctor {
    assert_eq!(&e.base, c, "completion must be built from this base");
    let mut commas = Vec::with_capacity(c.object_count());
    let mut obj_map = Vec::with_capacity(c.object_count());
    for x in c.objects() {
        let cone = choose(c, x);
        let span = Span { r: cone.apex, r0: cone.legs[0], r1: cone.legs[1], x };
        let obj = e
            .object_of_span(span)
            .expect("every weak comma of an identity pair is a pseudocongruence");
        commas.push(span);
        obj_map.push(obj);
    }
    let mut mor_map = Vec::with_capacity(c.morphism_count());
    for f in c.morphisms() {
        let src = obj_map[c.dom(f).index()];
        let dst = obj_map[c.cod(f).index()];
        let class = e
            .class_of(src, dst, f)
            .expect("every base morphism lifts between identity commas");
        mor_map.push(class);
    }
    let functor = PosFunctor {
        source: c.clone(),
        target: e.cat.clone(),
        obj_map,
        mor_map,
    };
    validate_functor(&functor).expect("Γ is a functor");
    assert!(
        check_fully_order_faithful(&functor).0,
        "Γ must be fully order-faithful"
    );
    GammaFunctor { functor, commas }
}

/// The coinserter presentation of one completion morphism: both rows are
/// coinserters of the images of the defining spans, and the squares commute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationDiagram {
    /// Γ applied to the span of the source object, then its quotient.
    pub top: (MorphismId, MorphismId, MorphismId),
    /// Same for the target object.
    pub bottom: (MorphismId, MorphismId, MorphismId),
    /// Verticals: Γ of the lift, Γ of the representative, the morphism.
    pub verticals: (MorphismId, MorphismId, MorphismId),
}

/// Verifies that `[f]` sits in a commutative diagram whose rows are the
/// coinserter presentations of its source and target.
pub fn coinserter_presentation(
    e: &ExCompletion,
    g: &GammaFunctor,
    class: MorphismId,
) -> Result<PresentationDiagram, ConstructionMismatch> {
    let ec = &e.cat;
    let hom = e.provenance(class);
    let (src, dst) = (hom.src, hom.dst);
    let rsp = e.pseudocongruence(src).span;
    let ssp = e.pseudocongruence(dst).span;
    let f = hom.representative;
    let fbar = hom.lift;

    let gamma_of = |m: MorphismId| g.functor.mor_map[m.index()];
    let gobj = |x: ObjectId| g.functor.obj_map[x.index()];

    let gr0 = gamma_of(rsp.r0);
    let gr1 = gamma_of(rsp.r1);
    let gs0 = gamma_of(ssp.r0);
    let gs1 = gamma_of(ssp.r1);
    let q_src = e
        .class_of(gobj(rsp.x), src, e.base.identity(rsp.x))
        .ok_or_else(|| ConstructionMismatch("identity does not define the quotient map".into()))?;
    let q_dst = e
        .class_of(gobj(ssp.x), dst, e.base.identity(ssp.x))
        .ok_or_else(|| ConstructionMismatch("identity does not define the quotient map".into()))?;

    // Rows are coinserters.
    if is_coinserter(ec, gr0, gr1, q_src).is_none() {
        return Err(ConstructionMismatch("top row is not a coinserter".into()));
    }
    if is_coinserter(ec, gs0, gs1, q_dst).is_none() {
        return Err(ConstructionMismatch("bottom row is not a coinserter".into()));
    }

    // Squares commute.
    let gf = gamma_of(f);
    let gfbar = gamma_of(fbar);
    if ec.comp(gf, gr0) != ec.comp(gs0, gfbar) || ec.comp(gf, gr1) != ec.comp(gs1, gfbar) {
        return Err(ConstructionMismatch("left squares do not commute".into()));
    }
    if ec.comp(class, q_src) != ec.comp(q_dst, gf) {
        return Err(ConstructionMismatch("right square does not commute".into()));
    }

    Ok(PresentationDiagram {
        top: (gr0, gr1, q_src),
        bottom: (gs0, gs1, q_dst),
        verticals: (gfbar, gf, class),
    })
}

/// Which explicit recipe to cross-check against brute-force search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrosscheckKind {
    /// Terminal object (T, T×T) and all binary products via the two-stage
    /// weak limit.
    Product,
    Inserter,
    Comma,
    Pullback,
    SoFf,
    EffectiveCongruence,
}

impl CrosscheckKind {
    pub const ALL: [CrosscheckKind; 6] = [
        CrosscheckKind::Product,
        CrosscheckKind::Inserter,
        CrosscheckKind::Comma,
        CrosscheckKind::Pullback,
        CrosscheckKind::SoFf,
        CrosscheckKind::EffectiveCongruence,
    ];
}

/// The second-stage weak limit shared by the product, comma and pullback
/// recipes: legs into R, S and two copies of P, matched over X, X, Y, Y.
fn gamma_stage(
    c: &FinPosCategory,
    rsp: Span,
    ssp: Span,
    p: ObjectId,
    px: MorphismId,
    py: MorphismId,
) -> Option<Cone> {
    let spec = DiagramSpec::conical(
        vec![rsp.r, ssp.r, p, p, rsp.x, rsp.x, ssp.x, ssp.x],
        vec![
            Edge { from: 0, to: 4, label: rsp.r0 },
            Edge { from: 0, to: 5, label: rsp.r1 },
            Edge { from: 1, to: 6, label: ssp.r0 },
            Edge { from: 1, to: 7, label: ssp.r1 },
            Edge { from: 2, to: 4, label: px },
            Edge { from: 2, to: 6, label: py },
            Edge { from: 3, to: 5, label: px },
            Edge { from: 3, to: 7, label: py },
        ],
    );
    search_weak_limit(c, &spec).expect("stage diagram is valid").ok().map(|l| l.cone)
}

fn mismatch(msg: impl Into<String>) -> ConstructionMismatch {
    ConstructionMismatch(msg.into())
}

/// Runs one recipe kind over every applicable instance of the completion and
/// compares against brute-force search in the completion category.
pub fn internal_construction_crosscheck(
    e: &ExCompletion,
    kind: CrosscheckKind,
) -> Result<(), ConstructionMismatch> {
    match kind {
        CrosscheckKind::Product => crosscheck_products(e),
        CrosscheckKind::Inserter => crosscheck_inserters(e),
        CrosscheckKind::Comma => crosscheck_commas_or_pullbacks(e, false),
        CrosscheckKind::Pullback => crosscheck_commas_or_pullbacks(e, true),
        CrosscheckKind::SoFf => crosscheck_so_ff(e),
        CrosscheckKind::EffectiveCongruence => crosscheck_effective_congruences(e),
    }
}

fn crosscheck_products(e: &ExCompletion) -> Result<(), ConstructionMismatch> {
    let c = &e.base;
    let ec = &e.cat;

    // Terminal: (T, T×T) for a weak terminal T and weak product T×T.
    let t = weak_terminal(c).expect("weakly lex base").cone.apex;
    let tp = weak_product(c, t, t).expect("weakly lex base").cone;
    let t_span = Span { r: tp.apex, r0: tp.legs[0], r1: tp.legs[1], x: t };
    let t_obj = e
        .object_of_span(t_span)
        .ok_or_else(|| mismatch("(T, T×T) is not a pseudocongruence"))?;
    let term_cone = Cone { apex: t_obj, legs: vec![] };
    if !is_strict_limit_cone(ec, &DiagramSpec::terminal(), &term_cone) {
        return Err(mismatch("(T, T×T) is not terminal in the completion"));
    }

    for i in ec.objects() {
        for j in ec.objects() {
            let rsp = e.pseudocongruence(i).span;
            let ssp = e.pseudocongruence(j).span;
            let wp = weak_product(c, rsp.x, ssp.x).expect("weakly lex base").cone;
            let (p, px, py) = (wp.apex, wp.legs[0], wp.legs[1]);
            let stage = gamma_stage(c, rsp, ssp, p, px, py)
                .ok_or_else(|| mismatch("second-stage weak limit missing"))?;
            let gsp = Span { r: stage.apex, r0: stage.legs[2], r1: stage.legs[3], x: p };
            let g_obj = e
                .object_of_span(gsp)
                .ok_or_else(|| mismatch("product stage span is not a pseudocongruence"))?;
            let px_class = e
                .class_of(g_obj, i, px)
                .ok_or_else(|| mismatch("projection does not define a class"))?;
            let py_class = e
                .class_of(g_obj, j, py)
                .ok_or_else(|| mismatch("projection does not define a class"))?;
            let cone = Cone { apex: g_obj, legs: vec![px_class, py_class] };
            let spec = DiagramSpec::binary_product(i, j);
            if !is_strict_limit_cone(ec, &spec, &cone) {
                return Err(mismatch(format!(
                    "recipe product of ({}, {}) fails the universal property",
                    ec.object_name(i),
                    ec.object_name(j)
                )));
            }
            // agreement with brute-force search, up to compatible iso
            let found = crate::limits::search_strict_limit(ec, &spec)
                .expect("spec valid")
                .map_err(|_| mismatch("search finds no product where the recipe builds one"))?;
            if !limit_cones_isomorphic(ec, &cone, &found.cone) {
                return Err(mismatch("recipe and searched products are not isomorphic"));
            }
        }
    }
    Ok(())
}

/// Two strict-limit cones over one spec must be isomorphic through mediators
/// compatible with the legs.
fn limit_cones_isomorphic(c: &FinPosCategory, a: &Cone, b: &Cone) -> bool {
    let to_b = c.hom(a.apex, b.apex).iter().copied().find(|&u| {
        b.legs.iter().zip(a.legs.iter()).all(|(&bl, &al)| c.comp(bl, u) == al)
    });
    let to_a = c.hom(b.apex, a.apex).iter().copied().find(|&v| {
        a.legs.iter().zip(b.legs.iter()).all(|(&al, &bl)| c.comp(al, v) == bl)
    });
    match (to_b, to_a) {
        (Some(u), Some(v)) => {
            c.comp(v, u) == c.identity(a.apex) && c.comp(u, v) == c.identity(b.apex)
        }
        _ => false,
    }
}

fn crosscheck_inserters(e: &ExCompletion) -> Result<(), ConstructionMismatch> {
    let c = &e.base;
    let ec = &e.cat;
    for fc in ec.morphisms() {
        for gc in ec.morphisms() {
            if !ec.parallel(fc, gc) {
                continue;
            }
            let src = e.provenance(fc).src;
            let dst = e.provenance(fc).dst;
            let rsp = e.pseudocongruence(src).span;
            let ssp = e.pseudocongruence(dst).span;
            let f = e.provenance(fc).representative;
            let g = e.provenance(gc).representative;

            // stage 1: E with legs e, φ such that f∘e = s0∘φ and g∘e = s1∘φ
            let stage1 = DiagramSpec::conical(
                vec![rsp.x, ssp.r, ssp.x, ssp.x],
                vec![
                    Edge { from: 0, to: 2, label: f },
                    Edge { from: 1, to: 2, label: ssp.r0 },
                    Edge { from: 0, to: 3, label: g },
                    Edge { from: 1, to: 3, label: ssp.r1 },
                ],
            );
            let e_cone = search_weak_limit(c, &stage1)
                .expect("valid")
                .ok()
                .ok_or_else(|| mismatch("inserter stage-1 weak limit missing"))?
                .cone;
            let (e_apex, e_leg) = (e_cone.apex, e_cone.legs[0]);

            // stage 2: R̃ with legs r̃0, r̃1, ē matched over e and the span
            let stage2 = DiagramSpec::conical(
                vec![e_apex, e_apex, rsp.r, rsp.x, rsp.x],
                vec![
                    Edge { from: 0, to: 3, label: e_leg },
                    Edge { from: 2, to: 3, label: rsp.r0 },
                    Edge { from: 1, to: 4, label: e_leg },
                    Edge { from: 2, to: 4, label: rsp.r1 },
                ],
            );
            let r_cone = search_weak_limit(c, &stage2)
                .expect("valid")
                .ok()
                .ok_or_else(|| mismatch("inserter stage-2 weak limit missing"))?
                .cone;
            let rt_span = Span { r: r_cone.apex, r0: r_cone.legs[0], r1: r_cone.legs[1], x: e_apex };
            let ins_obj = e
                .object_of_span(rt_span)
                .ok_or_else(|| mismatch("inserter stage span is not a pseudocongruence"))?;
            let e_class = e
                .class_of(ins_obj, src, e_leg)
                .ok_or_else(|| mismatch("inserter leg does not define a class"))?;

            let spec = DiagramSpec::inserter(ec, fc, gc).expect("parallel");
            let cone = Cone { apex: ins_obj, legs: vec![e_class] };
            if !is_strict_limit_cone(ec, &spec, &cone) {
                return Err(mismatch("recipe inserter fails the universal property"));
            }
            let found = crate::limits::search_strict_limit(ec, &spec)
                .expect("valid")
                .map_err(|_| mismatch("search finds no inserter where the recipe builds one"))?;
            if !limit_cones_isomorphic(ec, &cone, &found.cone) {
                return Err(mismatch("recipe and searched inserters are not isomorphic"));
            }
        }
    }
    Ok(())
}

fn crosscheck_commas_or_pullbacks(
    e: &ExCompletion,
    pullback: bool,
) -> Result<(), ConstructionMismatch> {
    let c = &e.base;
    let ec = &e.cat;
    for fc in ec.morphisms() {
        for gc in ec.morphisms() {
            if ec.cod(fc) != ec.cod(gc) {
                continue;
            }
            let (src_f, src_g) = (e.provenance(fc).src, e.provenance(gc).src);
            let rsp = e.pseudocongruence(src_f).span;
            let ssp = e.pseudocongruence(src_g).span;
            let tsp = e.pseudocongruence(ec.cod(fc)).span;
            let f = e.provenance(fc).representative;
            let g = e.provenance(gc).representative;

            // stage 1: C (or P) with legs into X, Y and T (twice for
            // pullbacks, witnessing both directions).
            let stage1 = if pullback {
                DiagramSpec::conical(
                    vec![rsp.x, ssp.x, tsp.r, tsp.r, tsp.x, tsp.x],
                    vec![
                        Edge { from: 0, to: 4, label: f },
                        Edge { from: 2, to: 4, label: tsp.r0 },
                        Edge { from: 3, to: 4, label: tsp.r1 },
                        Edge { from: 1, to: 5, label: g },
                        Edge { from: 2, to: 5, label: tsp.r1 },
                        Edge { from: 3, to: 5, label: tsp.r0 },
                    ],
                )
            } else {
                DiagramSpec::conical(
                    vec![rsp.x, ssp.x, tsp.r, tsp.x, tsp.x],
                    vec![
                        Edge { from: 0, to: 3, label: f },
                        Edge { from: 2, to: 3, label: tsp.r0 },
                        Edge { from: 1, to: 4, label: g },
                        Edge { from: 2, to: 4, label: tsp.r1 },
                    ],
                )
            };
            let c_cone = search_weak_limit(c, &stage1)
                .expect("valid")
                .ok()
                .ok_or_else(|| mismatch("stage-1 weak limit missing"))?
                .cone;
            let (p, px, py) = (c_cone.apex, c_cone.legs[0], c_cone.legs[1]);
            let stage = gamma_stage(c, rsp, ssp, p, px, py)
                .ok_or_else(|| mismatch("second-stage weak limit missing"))?;
            let gsp = Span { r: stage.apex, r0: stage.legs[2], r1: stage.legs[3], x: p };
            let g_obj = e
                .object_of_span(gsp)
                .ok_or_else(|| mismatch("stage span is not a pseudocongruence"))?;
            let px_class = e
                .class_of(g_obj, src_f, px)
                .ok_or_else(|| mismatch("projection does not define a class"))?;
            let py_class = e
                .class_of(g_obj, src_g, py)
                .ok_or_else(|| mismatch("projection does not define a class"))?;

            let (spec, cone) = if pullback {
                let spec = DiagramSpec::pullback(ec, fc, gc).expect("common codomain");
                let third = ec.comp(fc, px_class);
                (spec, Cone { apex: g_obj, legs: vec![px_class, py_class, third] })
            } else {
                let spec = DiagramSpec::comma(ec, fc, gc).expect("common codomain");
                (spec, Cone { apex: g_obj, legs: vec![px_class, py_class] })
            };
            if !is_strict_limit_cone(ec, &spec, &cone) {
                return Err(mismatch("recipe comma/pullback fails the universal property"));
            }
            let found = crate::limits::search_strict_limit(ec, &spec)
                .expect("valid")
                .map_err(|_| mismatch("search finds no limit where the recipe builds one"))?;
            if !limit_cones_isomorphic(ec, &cone, &found.cone) {
                return Err(mismatch("recipe and searched limits are not isomorphic"));
            }
        }
    }
    Ok(())
}

fn crosscheck_so_ff(e: &ExCompletion) -> Result<(), ConstructionMismatch> {
    let c = &e.base;
    let ec = &e.cat;
    for fc in ec.morphisms() {
        let hom = e.provenance(fc);
        let rsp = e.pseudocongruence(hom.src).span;
        let ssp = e.pseudocongruence(hom.dst).span;
        let f = hom.representative;

        // weak limit I with legs i0, i1, φ: f∘i0 = s0∘φ and f∘i1 = s1∘φ
        let spec = DiagramSpec::conical(
            vec![rsp.x, rsp.x, ssp.r, ssp.x, ssp.x],
            vec![
                Edge { from: 0, to: 3, label: f },
                Edge { from: 2, to: 3, label: ssp.r0 },
                Edge { from: 1, to: 4, label: f },
                Edge { from: 2, to: 4, label: ssp.r1 },
            ],
        );
        let i_cone = search_weak_limit(c, &spec)
            .expect("valid")
            .ok()
            .ok_or_else(|| mismatch("factorization weak limit missing"))?
            .cone;
        let i_span = Span { r: i_cone.apex, r0: i_cone.legs[0], r1: i_cone.legs[1], x: rsp.x };
        let mid_obj = e
            .object_of_span(i_span)
            .ok_or_else(|| mismatch("factorization span is not a pseudocongruence"))?;
        let e_class = e
            .class_of(hom.src, mid_obj, c.identity(rsp.x))
            .ok_or_else(|| mismatch("identity does not define the so part"))?;
        let m_class = e
            .class_of(mid_obj, hom.dst, f)
            .ok_or_else(|| mismatch("representative does not define the ff part"))?;

        if ec.comp(m_class, e_class) != fc {
            return Err(mismatch("factorization does not compose to the morphism"));
        }
        if !crate::regexact::check_so(ec, e_class).0 {
            return Err(mismatch("so part of the recipe factorization is not so"));
        }
        if !crate::regexact::check_ff(ec, m_class).0 {
            return Err(mismatch("ff part of the recipe factorization is not ff"));
        }
        // agreement with the canonical search, up to compatible iso
        let canon = crate::regexact::so_ff_factorize(ec, fc)
            .ok_or_else(|| mismatch("search finds no factorization where the recipe builds one"))?;
        let compatible = ec.hom(mid_obj, canon.middle).iter().copied().any(|i| {
            ec.is_iso(i) && ec.comp(i, e_class) == canon.e && ec.comp(canon.m, i) == m_class
        });
        if !compatible {
            return Err(mismatch("recipe and searched factorizations are not isomorphic"));
        }
    }
    Ok(())
}

fn crosscheck_effective_congruences(e: &ExCompletion) -> Result<(), ConstructionMismatch> {
    let c = &e.base;
    let ec = &e.cat;
    for span in crate::regexact::all_congruences(ec) {
        let h0c = span.r0;
        let h1c = span.r1;
        let h0 = e.provenance(h0c).representative;
        let h1 = e.provenance(h1c).representative;
        let xsp = e.pseudocongruence(ec.dom(h0c)).span;
        let ssp = e.pseudocongruence(ec.cod(h0c)).span;

        // weak limit S' with legs p0, p0', s', p1', p1 matched over four
        // copies of the underlying object of the target.
        let spec = DiagramSpec::conical(
            vec![ssp.r, ssp.r, xsp.x, ssp.r, ssp.r, ssp.x, ssp.x, ssp.x, ssp.x],
            vec![
                Edge { from: 0, to: 5, label: ssp.r1 },
                Edge { from: 1, to: 5, label: ssp.r0 },
                Edge { from: 0, to: 6, label: ssp.r0 },
                Edge { from: 1, to: 6, label: ssp.r1 },
                Edge { from: 2, to: 6, label: h0 },
                Edge { from: 3, to: 7, label: ssp.r1 },
                Edge { from: 4, to: 7, label: ssp.r0 },
                Edge { from: 2, to: 7, label: h1 },
                Edge { from: 3, to: 8, label: ssp.r0 },
                Edge { from: 4, to: 8, label: ssp.r1 },
            ],
        );
        let s_cone = search_weak_limit(c, &spec)
            .expect("valid")
            .ok()
            .ok_or_else(|| mismatch("quotient weak limit missing"))?
            .cone;
        let p0 = s_cone.legs[0];
        let p0p = s_cone.legs[1];
        let p1p = s_cone.legs[3];
        let p1 = s_cone.legs[4];
        let s0p = c.comp(ssp.r0, p0p);
        let s1p = c.comp(ssp.r1, p1);
        debug_assert_eq!(s0p, c.comp(ssp.r1, p0));
        debug_assert_eq!(s1p, c.comp(ssp.r0, p1p));

        let q_span = Span { r: s_cone.apex, r0: s0p, r1: s1p, x: ssp.x };
        let q_obj = e
            .object_of_span(q_span)
            .ok_or_else(|| mismatch("quotient span is not a pseudocongruence"))?;
        let q_class = e
            .class_of(ec.cod(h0c), q_obj, c.identity(ssp.x))
            .ok_or_else(|| mismatch("identity does not define the quotient"))?;

        if is_coinserter(ec, h0c, h1c, q_class).is_none() {
            return Err(mismatch("recipe quotient is not a coinserter of the congruence"));
        }
        // two-route comparison with the canonical coinserter
        let canon = search_coinserter(ec, h0c, h1c)
            .expect("parallel")
            .map_err(|_| mismatch("search finds no coinserter where the recipe builds one"))?;
        let iso = ec.hom(q_obj, ec.cod(canon.q)).iter().copied().any(|i| {
            ec.is_iso(i) && ec.comp(i, q_class) == canon.q
        });
        if !iso {
            return Err(mismatch("recipe and searched coinserters are not isomorphic"));
        }
        // effectiveness: the congruence is the kernel congruence of its quotient
        let kernel = crate::regexact::kernel_congruence(ec, q_class)
            .ok_or_else(|| mismatch("quotient has no kernel congruence"))?;
        if !crate::regexact::spans_equal_as_subobjects(ec, span, kernel.span) {
            return Err(mismatch("congruence is not the kernel of its quotient"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{fixture_arrow, fixture_idem, fixture_one};
    use crate::regexact::check_exact;

    #[test]
    fn pseudocongruences_of_one_and_arrow() {
        let one = fixture_one();
        let pcs = enumerate_pseudocongruences(&one).unwrap();
        assert_eq!(pcs.len(), 1);

        let arrow = fixture_arrow();
        let pcs = enumerate_pseudocongruences(&arrow).unwrap();
        let spans: Vec<Span> = pcs.iter().map(|p| p.span).collect();
        assert_eq!(
            spans,
            vec![
                Span { r: ObjectId(0), r0: MorphismId(0), r1: MorphismId(0), x: ObjectId(0) },
                Span { r: ObjectId(1), r0: MorphismId(1), r1: MorphismId(1), x: ObjectId(1) },
            ]
        );
        // (a; f, f) on b fails order-reflexivity: (id_b, id_b) cannot factor.
        assert!(check_pseudocongruence(
            &arrow,
            Span { r: ObjectId(0), r0: MorphismId(2), r1: MorphismId(2), x: ObjectId(1) }
        )
        .is_none());
    }

    #[test]
    fn idem_is_rejected() {
        let idem = fixture_idem();
        assert!(matches!(
            build_exact_completion(&idem),
            Err(CompletionError::NotWeaklyLex { .. })
        ));
    }

    #[test]
    fn completion_of_one_is_one() {
        let one = fixture_one();
        let e = build_exact_completion(&one).unwrap();
        assert!(e.cat.isomorphic_to(&one));
        assert!(check_exact(&e.cat).holds());
    }

    #[test]
    fn completion_of_arrow_is_arrow() {
        let arrow = fixture_arrow();
        let e = build_exact_completion(&arrow).unwrap();
        assert!(e.cat.isomorphic_to(&arrow));
        assert!(check_exact(&e.cat).holds());
    }

    #[test]
    fn size_guard_fires() {
        let arrow = fixture_arrow();
        let guard = SizeGuard { max_objects: 1, max_morphisms: 8192 };
        assert!(matches!(
            build_exact_completion_with(&arrow, guard),
            Err(CompletionError::SizeGuardExceeded { .. })
        ));
    }

    #[test]
    fn gamma_on_one_and_arrow() {
        for c in [fixture_one(), fixture_arrow()] {
            let e = build_exact_completion(&c).unwrap();
            let g = gamma(&c, &e);
            // order-faithfulness on every parallel pair: f ≤ h iff Γf ≤ Γh
            for f in c.morphisms() {
                for h in c.morphisms() {
                    if c.parallel(f, h) {
                        let gf = g.functor.mor_map[f.index()];
                        let gh = g.functor.mor_map[h.index()];
                        assert_eq!(c.le(f, h), e.cat.le(gf, gh));
                    }
                }
            }
        }
    }

    #[test]
    fn presentations_hold_on_arrow_completion() {
        let arrow = fixture_arrow();
        let e = build_exact_completion(&arrow).unwrap();
        let g = gamma(&arrow, &e);
        for m in e.cat.morphisms() {
            coinserter_presentation(&e, &g, m).unwrap();
        }
    }

    #[test]
    fn crosschecks_hold_on_small_completions() {
        for c in [fixture_one(), fixture_arrow()] {
            let e = build_exact_completion(&c).unwrap();
            for kind in CrosscheckKind::ALL {
                internal_construction_crosscheck(&e, kind).unwrap();
            }
        }
    }

    #[test]
    fn gamma_choice_independence_on_arrow() {
        let arrow = fixture_arrow();
        let e = build_exact_completion(&arrow).unwrap();
        let canonical = gamma(&arrow, &e);
        // Picks the last weak comma instead of the first; the resulting
        // embedding must land on isomorphic objects.
        let alt = gamma_with_comma_choice(&arrow, &e, |c, x| {
            let id = c.identity(x);
            let lims = crate::limits::all_weak_limits(c, &DiagramSpec::comma(c, id, id).unwrap())
                .unwrap();
            let last = lims.last().unwrap();
            last.cone.clone()
        });
        for x in arrow.objects() {
            let a = canonical.functor.obj_map[x.index()];
            let b = alt.functor.obj_map[x.index()];
            assert!(e.cat.find_iso(a, b).is_some());
        }
    }
}
