//! Finite poset-enriched categories with total composition tables.
//!
//! A category here is a finite set of objects, a finite set of morphisms with
//! assigned (dom, cod), a total composition table over composable pairs, and a
//! partial order on every hom-set under which composition is monotone in both
//! variables. Values are immutable once validated; every solver in this crate
//! runs over this type.

use crate::ids::{MorphismId, ObjectId};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Raw, not-yet-validated category data. Build one of these (or parse it from
/// JSON) and pass it to [`validate_category`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawCategory {
    pub object_names: Vec<String>,
    pub morphism_names: Vec<String>,
    /// dom/cod per morphism, indexed by `MorphismId`.
    pub dom: Vec<ObjectId>,
    pub cod: Vec<ObjectId>,
    /// Identity morphism per object, indexed by `ObjectId`.
    pub identities: Vec<MorphismId>,
    /// `compose[g.index() * n_mor + f.index()] = Some(g ∘ f)` for composable
    /// pairs (cod f = dom g), `None` elsewhere.
    pub compose: Vec<Option<MorphismId>>,
    /// Order generators: pairs (lo, hi) meaning lo ≤ hi. The validator closes
    /// these reflexively and transitively.
    pub order_pairs: Vec<(MorphismId, MorphismId)>,
}

/// A validated finite poset-enriched category.
///
/// The stored hom-order is the full reflexive-transitive closure, so order
/// queries are O(1). Obtainable only through [`validate_category`] or the
/// built-in fixtures.
#[derive(Clone, PartialEq, Eq)]
pub struct FinPosCategory {
    object_names: Vec<String>,
    morphism_names: Vec<String>,
    dom: Vec<ObjectId>,
    cod: Vec<ObjectId>,
    identities: Vec<MorphismId>,
    compose: Vec<Option<MorphismId>>,
    le: Vec<bool>,
    /// `homs[x.index() * n_obj + y.index()]` lists hom(x, y) in id order.
    homs: Vec<Vec<MorphismId>>,
}

/// Violation of one of the category laws, with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum ValidationError {
    #[error("missing composite {g} ∘ {f}")]
    MissingComposite { g: String, f: String },
    #[error("composite {g} ∘ {f} defined on a non-composable pair or has wrong dom/cod")]
    IllTypedComposite { g: String, f: String },
    #[error("associativity fails on ({h}, {g}, {f}): {h}∘({g}∘{f}) ≠ ({h}∘{g})∘{f}")]
    NonAssociative { h: String, g: String, f: String },
    #[error("identity law fails: {witness}")]
    IdentityLaw { witness: String },
    #[error("hom order is not a partial order: {witness}")]
    OrderNotPartial { witness: String },
    #[error("composition not monotone: {w} ∘ ({u} ≤ {v}) on side {side}")]
    CompositionNotMonotone {
        w: String,
        u: String,
        v: String,
        side: String,
    },
    #[error("malformed input: {0}")]
    Malformed(String),
}

impl fmt::Debug for FinPosCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FinPosCategory({} objects, {} morphisms)",
            self.object_count(),
            self.morphism_count()
        )
    }
}

impl FinPosCategory {
    pub fn object_count(&self) -> usize {
        self.object_names.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphism_names.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjectId> {
        (0..self.object_count() as u32).map(ObjectId)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorphismId> {
        (0..self.morphism_count() as u32).map(MorphismId)
    }

    pub fn object_name(&self, x: ObjectId) -> &str {
        &self.object_names[x.index()]
    }

    pub fn morphism_name(&self, f: MorphismId) -> &str {
        &self.morphism_names[f.index()]
    }

    pub fn dom(&self, f: MorphismId) -> ObjectId {
        self.dom[f.index()]
    }

    pub fn cod(&self, f: MorphismId) -> ObjectId {
        self.cod[f.index()]
    }

    pub fn identity(&self, x: ObjectId) -> MorphismId {
        self.identities[x.index()]
    }

    pub fn is_identity(&self, f: MorphismId) -> bool {
        self.identities[self.dom(f).index()] == f
    }

    /// g ∘ f, defined when cod f = dom g.
    pub fn compose(&self, g: MorphismId, f: MorphismId) -> Option<MorphismId> {
        self.compose[g.index() * self.morphism_count() + f.index()]
    }

    /// g ∘ f for a pair known to be composable.
    pub fn comp(&self, g: MorphismId, f: MorphismId) -> MorphismId {
        self.compose(g, f)
            .expect("compose called on non-composable pair")
    }

    /// Hom-order: a ≤ b. Holds only between parallel morphisms.
    pub fn le(&self, a: MorphismId, b: MorphismId) -> bool {
        self.le[a.index() * self.morphism_count() + b.index()]
    }

    /// hom(x, y) in morphism-id order.
    pub fn hom(&self, x: ObjectId, y: ObjectId) -> &[MorphismId] {
        &self.homs[x.index() * self.object_count() + y.index()]
    }

    /// All morphisms out of `x`, in id order.
    pub fn out_of(&self, x: ObjectId) -> impl Iterator<Item = MorphismId> + '_ {
        self.morphisms().filter(move |&f| self.dom(f) == x)
    }

    pub fn parallel(&self, f: MorphismId, g: MorphismId) -> bool {
        self.dom(f) == self.dom(g) && self.cod(f) == self.cod(g)
    }

    /// Two morphisms f: X→Y, g: Y→X with g∘f = 1_X and f∘g = 1_Y, if any.
    pub fn find_iso(&self, x: ObjectId, y: ObjectId) -> Option<(MorphismId, MorphismId)> {
        for &f in self.hom(x, y) {
            for &g in self.hom(y, x) {
                if self.comp(g, f) == self.identity(x) && self.comp(f, g) == self.identity(y) {
                    return Some((f, g));
                }
            }
        }
        None
    }

    pub fn is_iso(&self, f: MorphismId) -> bool {
        let (x, y) = (self.dom(f), self.cod(f));
        self.hom(y, x).iter().any(|&g| {
            self.comp(g, f) == self.identity(x) && self.comp(f, g) == self.identity(y)
        })
    }

    /// Raw data of this category, e.g. for re-validation or editing.
    pub fn to_raw(&self) -> RawCategory {
        let n = self.morphism_count();
        let mut order_pairs = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && self.le[a * n + b] {
                    order_pairs.push((MorphismId(a as u32), MorphismId(b as u32)));
                }
            }
        }
        RawCategory {
            object_names: self.object_names.clone(),
            morphism_names: self.morphism_names.clone(),
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            identities: self.identities.clone(),
            compose: self.compose.clone(),
            order_pairs,
        }
    }

    /// Opposite category: dom/cod swapped, composition reversed, hom-order kept.
    pub fn dual(&self) -> FinPosCategory {
        let n = self.morphism_count();
        let mut compose = vec![None; n * n];
        for g in 0..n {
            for f in 0..n {
                compose[g * n + f] = self.compose[f * n + g];
            }
        }
        let mut c = FinPosCategory {
            object_names: self.object_names.clone(),
            morphism_names: self.morphism_names.clone(),
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            identities: self.identities.clone(),
            compose,
            le: self.le.clone(),
            homs: Vec::new(),
        };
        c.rebuild_homs();
        c
    }

    /// Full subcategory on the given objects. Errors with `UnknownObject` when
    /// an object id is out of range; duplicates are ignored.
    pub fn full_subcategory(&self, objs: &[ObjectId]) -> Result<SubcategoryEmbedding, SliceError> {
        for &x in objs {
            if x.index() >= self.object_count() {
                return Err(SliceError::UnknownObject {
                    object: format!("{:?}", x),
                });
            }
        }
        let mut keep: Vec<ObjectId> = objs.to_vec();
        keep.sort();
        keep.dedup();

        let mut obj_back = vec![None; self.object_count()];
        for (new, &old) in keep.iter().enumerate() {
            obj_back[old.index()] = Some(ObjectId(new as u32));
        }
        let kept_mors: Vec<MorphismId> = self
            .morphisms()
            .filter(|&f| obj_back[self.dom(f).index()].is_some() && obj_back[self.cod(f).index()].is_some())
            .collect();
        let mut mor_back = vec![None; self.morphism_count()];
        for (new, &old) in kept_mors.iter().enumerate() {
            mor_back[old.index()] = Some(MorphismId(new as u32));
        }

        let m = kept_mors.len();
        let mut compose = vec![None; m * m];
        for (gi, &g) in kept_mors.iter().enumerate() {
            for (fi, &f) in kept_mors.iter().enumerate() {
                if let Some(gf) = self.compose(g, f) {
                    compose[gi * m + fi] = mor_back[gf.index()];
                }
            }
        }
        let mut le = vec![false; m * m];
        for (ai, &a) in kept_mors.iter().enumerate() {
            for (bi, &b) in kept_mors.iter().enumerate() {
                le[ai * m + bi] = self.le(a, b);
            }
        }
        let mut cat = FinPosCategory {
            object_names: keep.iter().map(|&x| self.object_names[x.index()].clone()).collect(),
            morphism_names: kept_mors.iter().map(|&f| self.morphism_names[f.index()].clone()).collect(),
            dom: kept_mors.iter().map(|&f| obj_back[self.dom(f).index()].unwrap()).collect(),
            cod: kept_mors.iter().map(|&f| obj_back[self.cod(f).index()].unwrap()).collect(),
            identities: keep.iter().map(|&x| mor_back[self.identity(x).index()].unwrap()).collect(),
            compose,
            le,
            homs: Vec::new(),
        };
        cat.rebuild_homs();
        Ok(SubcategoryEmbedding {
            cat,
            object_map: keep,
            morphism_map: kept_mors,
        })
    }

    fn rebuild_homs(&mut self) {
        let n_obj = self.object_count();
        let mut homs = vec![Vec::new(); n_obj * n_obj];
        for f in self.morphisms() {
            homs[self.dom(f).index() * n_obj + self.cod(f).index()].push(f);
        }
        self.homs = homs;
    }

    /// Canonical byte encoding: lexicographically least over all relabelings
    /// that keep identities first. Two categories are isomorphic iff their
    /// canonical encodings agree, so this doubles as the iso test at this
    /// scale. Names are ignored.
    pub fn canonical_encoding(&self) -> Vec<u32> {
        let n_obj = self.object_count();
        let n_mor = self.morphism_count();
        // Normalize to "identities first": identity of object k is morphism k.
        let mut base_order: Vec<MorphismId> = self.identities.clone();
        for f in self.morphisms() {
            if !self.is_identity(f) {
                base_order.push(f);
            }
        }
        let non_ids = n_mor - n_obj;

        let mut best: Option<Vec<u32>> = None;
        for obj_perm in permutations(n_obj) {
            for rest_perm in permutations(non_ids) {
                // new id -> old id
                let mut mor_of_new: Vec<MorphismId> = Vec::with_capacity(n_mor);
                for k in 0..n_obj {
                    mor_of_new.push(base_order[obj_perm[k]]);
                }
                for k in 0..non_ids {
                    mor_of_new.push(base_order[n_obj + rest_perm[k]]);
                }
                let mut obj_new = vec![0usize; n_obj];
                for (new, &old) in obj_perm.iter().enumerate() {
                    obj_new[old] = new;
                }
                let mut mor_new = vec![0usize; n_mor];
                for (new, &old) in mor_of_new.iter().enumerate() {
                    mor_new[old.index()] = new;
                }
                // Map original object index -> position in base identity list.
                // base_order[k] = identity of object k for k < n_obj.
                let enc = self.encode_relabeled(&obj_new, &mor_new, &mor_of_new);
                if best.as_ref().map_or(true, |b| enc < *b) {
                    best = Some(enc);
                }
            }
        }
        best.unwrap_or_else(|| vec![0, 0])
    }

    fn encode_relabeled(
        &self,
        obj_new: &[usize],
        mor_new: &[usize],
        mor_of_new: &[MorphismId],
    ) -> Vec<u32> {
        let n_obj = self.object_count();
        let n_mor = self.morphism_count();
        let mut enc = Vec::with_capacity(2 + 2 * n_mor + n_mor * n_mor * 2);
        enc.push(n_obj as u32);
        enc.push(n_mor as u32);
        for &old in mor_of_new {
            enc.push(obj_new[self.dom(old).index()] as u32);
            enc.push(obj_new[self.cod(old).index()] as u32);
        }
        for &g_old in mor_of_new {
            for &f_old in mor_of_new {
                match self.compose(g_old, f_old) {
                    Some(h) => enc.push(mor_new[h.index()] as u32 + 1),
                    None => enc.push(0),
                }
            }
        }
        for &a_old in mor_of_new {
            for &b_old in mor_of_new {
                enc.push(self.le(a_old, b_old) as u32);
            }
        }
        enc
    }

    /// Structural isomorphism test via canonical forms.
    pub fn isomorphic_to(&self, other: &FinPosCategory) -> bool {
        self.object_count() == other.object_count()
            && self.morphism_count() == other.morphism_count()
            && self.canonical_encoding() == other.canonical_encoding()
    }
}

/// Result of taking a full subcategory: the subcategory plus the maps sending
/// its dense ids back to the ambient category.
#[derive(Debug, Clone)]
pub struct SubcategoryEmbedding {
    pub cat: FinPosCategory,
    /// new object id -> ambient object id
    pub object_map: Vec<ObjectId>,
    /// new morphism id -> ambient morphism id
    pub morphism_map: Vec<MorphismId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SliceError {
    #[error("unknown object {object}")]
    UnknownObject { object: String },
}

/// All permutations of 0..n in lexicographic order. n is tiny here (≤ 8).
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next_permutation
        if n < 2 {
            break;
        }
        let mut i = n - 1;
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Checks all five category laws on the raw data and returns the validated
/// category. The error names the first violated law with a witness.
pub fn validate_category(raw: RawCategory) -> Result<FinPosCategory, ValidationError> {
    let n_obj = raw.object_names.len();
    let n_mor = raw.morphism_names.len();
    if raw.dom.len() != n_mor || raw.cod.len() != n_mor {
        return Err(ValidationError::Malformed(
            "dom/cod tables must cover every morphism".into(),
        ));
    }
    if raw.identities.len() != n_obj {
        return Err(ValidationError::Malformed(
            "identities table must cover every object".into(),
        ));
    }
    if raw.compose.len() != n_mor * n_mor {
        return Err(ValidationError::Malformed(
            "compose table must be n_mor × n_mor".into(),
        ));
    }
    for f in 0..n_mor {
        if raw.dom[f].index() >= n_obj || raw.cod[f].index() >= n_obj {
            return Err(ValidationError::Malformed(format!(
                "morphism {} has out-of-range dom/cod",
                raw.morphism_names[f]
            )));
        }
    }
    for x in 0..n_obj {
        if raw.identities[x].index() >= n_mor {
            return Err(ValidationError::Malformed(format!(
                "identity of object {} is out of range",
                raw.object_names[x]
            )));
        }
    }

    let name = |f: MorphismId| raw.morphism_names[f.index()].clone();

    // Composition defined exactly on composable pairs, with correct dom/cod.
    for g in 0..n_mor {
        for f in 0..n_mor {
            let composable = raw.cod[f] == raw.dom[g];
            match raw.compose[g * n_mor + f] {
                Some(gf) => {
                    if !composable {
                        return Err(ValidationError::IllTypedComposite {
                            g: raw.morphism_names[g].clone(),
                            f: raw.morphism_names[f].clone(),
                        });
                    }
                    if gf.index() >= n_mor
                        || raw.dom[gf.index()] != raw.dom[f]
                        || raw.cod[gf.index()] != raw.cod[g]
                    {
                        return Err(ValidationError::IllTypedComposite {
                            g: raw.morphism_names[g].clone(),
                            f: raw.morphism_names[f].clone(),
                        });
                    }
                }
                None => {
                    if composable {
                        return Err(ValidationError::MissingComposite {
                            g: raw.morphism_names[g].clone(),
                            f: raw.morphism_names[f].clone(),
                        });
                    }
                }
            }
        }
    }

    // Identity laws.
    for x in 0..n_obj {
        let i = raw.identities[x];
        if raw.dom[i.index()].index() != x || raw.cod[i.index()].index() != x {
            return Err(ValidationError::IdentityLaw {
                witness: format!(
                    "identity {} of {} is not an endomorphism of it",
                    name(i),
                    raw.object_names[x]
                ),
            });
        }
    }
    for f in 0..n_mor {
        let fx = MorphismId(f as u32);
        let id_dom = raw.identities[raw.dom[f].index()];
        let id_cod = raw.identities[raw.cod[f].index()];
        if raw.compose[f * n_mor + id_dom.index()] != Some(fx) {
            return Err(ValidationError::IdentityLaw {
                witness: format!("{} ∘ {} ≠ {}", name(fx), name(id_dom), name(fx)),
            });
        }
        if raw.compose[id_cod.index() * n_mor + f] != Some(fx) {
            return Err(ValidationError::IdentityLaw {
                witness: format!("{} ∘ {} ≠ {}", name(id_cod), name(fx), name(fx)),
            });
        }
    }

    // Associativity over all composable triples.
    for h in 0..n_mor {
        for g in 0..n_mor {
            if raw.cod[g] != raw.dom[h] {
                continue;
            }
            let hg = raw.compose[h * n_mor + g].unwrap();
            for f in 0..n_mor {
                if raw.cod[f] != raw.dom[g] {
                    continue;
                }
                let gf = raw.compose[g * n_mor + f].unwrap();
                let left = raw.compose[h * n_mor + gf.index()];
                let right = raw.compose[hg.index() * n_mor + f];
                if left != right {
                    return Err(ValidationError::NonAssociative {
                        h: raw.morphism_names[h].clone(),
                        g: raw.morphism_names[g].clone(),
                        f: raw.morphism_names[f].clone(),
                    });
                }
            }
        }
    }

    // Hom order: generators must relate parallel morphisms. Close reflexively
    // and transitively, then reject antisymmetry violations.
    let mut le = vec![false; n_mor * n_mor];
    for &(a, b) in &raw.order_pairs {
        if a.index() >= n_mor || b.index() >= n_mor {
            return Err(ValidationError::Malformed("order pair out of range".into()));
        }
        if raw.dom[a.index()] != raw.dom[b.index()] || raw.cod[a.index()] != raw.cod[b.index()] {
            return Err(ValidationError::OrderNotPartial {
                witness: format!("{} ≤ {} relates non-parallel morphisms", name(a), name(b)),
            });
        }
        le[a.index() * n_mor + b.index()] = true;
    }
    for i in 0..n_mor {
        le[i * n_mor + i] = true;
    }
    // Floyd-Warshall style closure.
    for k in 0..n_mor {
        for a in 0..n_mor {
            if le[a * n_mor + k] {
                for b in 0..n_mor {
                    if le[k * n_mor + b] {
                        le[a * n_mor + b] = true;
                    }
                }
            }
        }
    }
    for a in 0..n_mor {
        for b in 0..n_mor {
            if a != b && le[a * n_mor + b] && le[b * n_mor + a] {
                return Err(ValidationError::OrderNotPartial {
                    witness: format!(
                        "{} ≤ {} and {} ≤ {} (antisymmetry)",
                        raw.morphism_names[a], raw.morphism_names[b], raw.morphism_names[b], raw.morphism_names[a]
                    ),
                });
            }
        }
    }

    // Monotonicity of composition in both variables.
    for u in 0..n_mor {
        for v in 0..n_mor {
            if !le[u * n_mor + v] || u == v {
                continue;
            }
            for w in 0..n_mor {
                // post-composition: w ∘ u ≤ w ∘ v when defined
                if raw.cod[u] == raw.dom[w] {
                    let wu = raw.compose[w * n_mor + u].unwrap();
                    let wv = raw.compose[w * n_mor + v].unwrap();
                    if !le[wu.index() * n_mor + wv.index()] {
                        return Err(ValidationError::CompositionNotMonotone {
                            w: raw.morphism_names[w].clone(),
                            u: raw.morphism_names[u].clone(),
                            v: raw.morphism_names[v].clone(),
                            side: "post".into(),
                        });
                    }
                }
                // pre-composition: u ∘ w ≤ v ∘ w when defined
                if raw.cod[w] == raw.dom[u] {
                    let uw = raw.compose[u * n_mor + w].unwrap();
                    let vw = raw.compose[v * n_mor + w].unwrap();
                    if !le[uw.index() * n_mor + vw.index()] {
                        return Err(ValidationError::CompositionNotMonotone {
                            w: raw.morphism_names[w].clone(),
                            u: raw.morphism_names[u].clone(),
                            v: raw.morphism_names[v].clone(),
                            side: "pre".into(),
                        });
                    }
                }
            }
        }
    }

    let mut cat = FinPosCategory {
        object_names: raw.object_names,
        morphism_names: raw.morphism_names,
        dom: raw.dom,
        cod: raw.cod,
        identities: raw.identities,
        compose: raw.compose,
        le,
        homs: Vec::new(),
    };
    cat.rebuild_homs();
    Ok(cat)
}

/// One object ⋆ with only its identity.
pub fn fixture_one() -> FinPosCategory {
    validate_category(RawCategory {
        object_names: vec!["⋆".into()],
        morphism_names: vec!["id_⋆".into()],
        dom: vec![ObjectId(0)],
        cod: vec![ObjectId(0)],
        identities: vec![MorphismId(0)],
        compose: vec![Some(MorphismId(0))],
        order_pairs: vec![],
    })
    .expect("fixture ONE is valid")
}

/// Two objects a, b and one non-identity morphism f: a → b; discrete order.
pub fn fixture_arrow() -> FinPosCategory {
    let n = 3;
    let mut compose = vec![None; n * n];
    let set = |c: &mut Vec<Option<MorphismId>>, g: usize, f: usize, gf: usize| {
        c[g * n + f] = Some(MorphismId(gf as u32));
    };
    // ids: 0 = id_a, 1 = id_b, 2 = f
    set(&mut compose, 0, 0, 0);
    set(&mut compose, 1, 1, 1);
    set(&mut compose, 2, 0, 2); // f ∘ id_a
    set(&mut compose, 1, 2, 2); // id_b ∘ f
    validate_category(RawCategory {
        object_names: vec!["a".into(), "b".into()],
        morphism_names: vec!["id_a".into(), "id_b".into(), "f".into()],
        dom: vec![ObjectId(0), ObjectId(1), ObjectId(0)],
        cod: vec![ObjectId(0), ObjectId(1), ObjectId(1)],
        identities: vec![MorphismId(0), MorphismId(1)],
        compose,
        order_pairs: vec![],
    })
    .expect("fixture ARROW is valid")
}

/// One object x with morphisms {id, e}, e ∘ e = e, and order id ≤ e.
pub fn fixture_idem() -> FinPosCategory {
    let n = 2;
    let mut compose = vec![None; n * n];
    compose[0] = Some(MorphismId(0)); // id ∘ id
    compose[1] = Some(MorphismId(1)); // id ∘ e
    compose[n] = Some(MorphismId(1)); // e ∘ id
    compose[n + 1] = Some(MorphismId(1)); // e ∘ e
    validate_category(RawCategory {
        object_names: vec!["x".into()],
        morphism_names: vec!["id_x".into(), "e".into()],
        dom: vec![ObjectId(0), ObjectId(0)],
        cod: vec![ObjectId(0), ObjectId(0)],
        identities: vec![MorphismId(0)],
        compose,
        order_pairs: vec![(MorphismId(0), MorphismId(1))],
    })
    .expect("fixture IDEM is valid")
}

/// Look up a named built-in fixture.
pub fn builtin(name: &str) -> Option<FinPosCategory> {
    match name.to_ascii_uppercase().as_str() {
        "ONE" => Some(fixture_one()),
        "ARROW" => Some(fixture_arrow()),
        "IDEM" => Some(fixture_idem()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent law checker used as the oracle for validate_category. It
    /// re-derives every law from the raw tables with plain loops.
    fn laws_hold_brute(raw: &RawCategory) -> bool {
        let n = raw.morphism_names.len();
        let composable = |f: usize, g: usize| raw.cod[f] == raw.dom[g];
        // totality and typing
        for g in 0..n {
            for f in 0..n {
                let c = raw.compose[g * n + f];
                if composable(f, g) != c.is_some() {
                    return false;
                }
                if let Some(gf) = c {
                    if raw.dom[gf.index()] != raw.dom[f] || raw.cod[gf.index()] != raw.cod[g] {
                        return false;
                    }
                }
            }
        }
        // identities
        for (x, &i) in raw.identities.iter().enumerate() {
            if raw.dom[i.index()].index() != x || raw.cod[i.index()].index() != x {
                return false;
            }
        }
        for f in 0..n {
            let i_d = raw.identities[raw.dom[f].index()].index();
            let i_c = raw.identities[raw.cod[f].index()].index();
            if raw.compose[f * n + i_d] != Some(MorphismId(f as u32)) {
                return false;
            }
            if raw.compose[i_c * n + f] != Some(MorphismId(f as u32)) {
                return false;
            }
        }
        // associativity
        for f in 0..n {
            for g in 0..n {
                for h in 0..n {
                    if composable(f, g) && composable(g, h) {
                        let gf = raw.compose[g * n + f].unwrap().index();
                        let hg = raw.compose[h * n + g].unwrap().index();
                        if raw.compose[h * n + gf] != raw.compose[hg * n + f] {
                            return false;
                        }
                    }
                }
            }
        }
        // order: closure of generators must be antisymmetric, parallel-only,
        // and composition-monotone
        let mut le = vec![false; n * n];
        for &(a, b) in &raw.order_pairs {
            if raw.dom[a.index()] != raw.dom[b.index()] || raw.cod[a.index()] != raw.cod[b.index()] {
                return false;
            }
            le[a.index() * n + b.index()] = true;
        }
        for i in 0..n {
            le[i * n + i] = true;
        }
        loop {
            let mut changed = false;
            for a in 0..n {
                for b in 0..n {
                    if !le[a * n + b] {
                        continue;
                    }
                    for c in 0..n {
                        if le[b * n + c] && !le[a * n + c] {
                            le[a * n + c] = true;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && le[a * n + b] && le[b * n + a] {
                    return false;
                }
            }
        }
        for u in 0..n {
            for v in 0..n {
                if !le[u * n + v] {
                    continue;
                }
                for w in 0..n {
                    if composable(u, w) {
                        let wu = raw.compose[w * n + u].unwrap().index();
                        let wv = raw.compose[w * n + v].unwrap().index();
                        if !le[wu * n + wv] {
                            return false;
                        }
                    }
                    if composable(w, u) {
                        let uw = raw.compose[u * n + w].unwrap().index();
                        let vw = raw.compose[v * n + w].unwrap().index();
                        if !le[uw * n + vw] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    #[test]
    fn fixtures_agree_with_law_oracle() {
        for c in [fixture_one(), fixture_arrow(), fixture_idem()] {
            assert!(laws_hold_brute(&c.to_raw()));
            assert!(validate_category(c.to_raw()).is_ok());
        }
    }

    #[test]
    fn idem_with_reversed_order_is_valid() {
        // Same table as IDEM but with e ≤ id: monotonicity gives e∘e ≤ e∘id,
        // i.e. e ≤ e, and id∘e ≤ id, i.e. e ≤ id. Both hold, so it validates.
        let mut raw = fixture_idem().to_raw();
        raw.order_pairs = vec![(MorphismId(1), MorphismId(0))];
        assert!(laws_hold_brute(&raw));
        let c = validate_category(raw).expect("reversed IDEM order is valid");
        assert!(c.le(MorphismId(1), MorphismId(0)));
        assert!(!c.le(MorphismId(0), MorphismId(1)));
    }

    #[test]
    fn idem_missing_composite_is_rejected() {
        let mut raw = fixture_idem().to_raw();
        raw.compose[3] = None; // drop e ∘ e
        assert!(!laws_hold_brute(&raw));
        match validate_category(raw) {
            Err(ValidationError::MissingComposite { g, f }) => {
                assert_eq!(g, "e");
                assert_eq!(f, "e");
            }
            other => panic!("expected MissingComposite, got {:?}", other),
        }
    }

    #[test]
    fn nonmonotone_order_is_rejected() {
        // Two-element group with id ≤ e: e∘id ≤ e∘e would force e ≤ id.
        let mut raw = fixture_idem().to_raw();
        raw.compose[2 + 1] = Some(MorphismId(0)); // e ∘ e = id
        raw.order_pairs = vec![(MorphismId(0), MorphismId(1))];
        assert!(!laws_hold_brute(&raw));
        match validate_category(raw) {
            Err(ValidationError::CompositionNotMonotone { .. }) => {}
            other => panic!("expected CompositionNotMonotone, got {:?}", other),
        }
    }

    #[test]
    fn order_between_nonparallel_is_rejected() {
        let mut raw = fixture_arrow().to_raw();
        raw.order_pairs = vec![(MorphismId(0), MorphismId(2))]; // id_a ≤ f
        match validate_category(raw) {
            Err(ValidationError::OrderNotPartial { .. }) => {}
            other => panic!("expected OrderNotPartial, got {:?}", other),
        }
    }

    #[test]
    fn antisymmetry_violation_is_rejected() {
        let mut raw = fixture_idem().to_raw();
        raw.order_pairs = vec![
            (MorphismId(0), MorphismId(1)),
            (MorphismId(1), MorphismId(0)),
        ];
        match validate_category(raw) {
            Err(ValidationError::OrderNotPartial { .. }) => {}
            other => panic!("expected OrderNotPartial, got {:?}", other),
        }
    }

    #[test]
    fn dual_is_involutive_and_idem_self_dual() {
        let arrow = fixture_arrow();
        assert_eq!(arrow.dual().dual(), arrow);
        let idem = fixture_idem();
        assert_eq!(idem.dual(), idem);
    }

    #[test]
    fn full_subcategory_of_arrow_on_a_is_one() {
        let arrow = fixture_arrow();
        let sub = arrow.full_subcategory(&[ObjectId(0)]).unwrap();
        assert!(sub.cat.isomorphic_to(&fixture_one()));
        assert!(validate_category(sub.cat.to_raw()).is_ok());
        let unknown = arrow.full_subcategory(&[ObjectId(7)]);
        assert!(matches!(unknown, Err(SliceError::UnknownObject { .. })));
    }

    #[test]
    fn empty_category_is_valid() {
        let empty = validate_category(RawCategory {
            object_names: vec![],
            morphism_names: vec![],
            dom: vec![],
            cod: vec![],
            identities: vec![],
            compose: vec![],
            order_pairs: vec![],
        })
        .expect("the empty category is valid");
        assert_eq!(empty.object_count(), 0);
        assert_eq!(empty.dual(), empty);
    }

    #[test]
    fn canonical_encoding_is_relabeling_invariant() {
        // Relabel ARROW by swapping object ids and check the canonical form
        // is unchanged.
        let arrow = fixture_arrow();
        let swapped = validate_category(RawCategory {
            object_names: vec!["b".into(), "a".into()],
            morphism_names: vec!["id_b".into(), "id_a".into(), "f".into()],
            dom: vec![ObjectId(0), ObjectId(1), ObjectId(1)],
            cod: vec![ObjectId(0), ObjectId(1), ObjectId(0)],
            identities: vec![MorphismId(0), MorphismId(1)],
            compose: {
                let n = 3;
                let mut c = vec![None; n * n];
                c[0] = Some(MorphismId(0));
                c[n + 1] = Some(MorphismId(1));
                c[2 * n + 1] = Some(MorphismId(2)); // f ∘ id_a
                c[2] = Some(MorphismId(2)); // id_b ∘ f
                c
            },
            order_pairs: vec![],
        })
        .unwrap();
        assert!(arrow.isomorphic_to(&swapped));
        assert!(!arrow.isomorphic_to(&fixture_one()));
    }

    mod proptests {
        use super::*;
        use proptest::prelude::*;

        fn corpus() -> &'static [FinPosCategory] {
            use std::sync::OnceLock;
            static CORPUS: OnceLock<Vec<FinPosCategory>> = OnceLock::new();
            CORPUS.get_or_init(|| crate::enumerate::enumerate_categories(2, 3).unwrap())
        }

        proptest! {
            /// The validator and the independent law oracle agree on corpus
            /// members and on random single-cell mutations of them.
            #[test]
            fn validator_agrees_with_law_oracle(
                ix in 0usize..1000,
                cell in 0usize..16,
                value in 0usize..4,
                flip_order in proptest::bool::ANY,
            ) {
                let cats = corpus();
                let c = &cats[ix % cats.len()];
                let mut raw = c.to_raw();
                let n = raw.morphism_names.len();
                if flip_order && n >= 2 {
                    raw.order_pairs.push((
                        MorphismId((cell % n) as u32),
                        MorphismId((value % n) as u32),
                    ));
                } else if n > 0 {
                    let slot = cell % (n * n);
                    raw.compose[slot] = if value == 0 {
                        None
                    } else {
                        Some(MorphismId(((value - 1) % n) as u32))
                    };
                }
                prop_assert_eq!(laws_hold_brute(&raw), validate_category(raw).is_ok());
            }
        }
    }
}
