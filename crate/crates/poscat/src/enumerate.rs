//! Exhaustive enumeration of small poset-enriched categories.
//!
//! Every valid category within the requested bounds is produced exactly once
//! up to relabeling, in a deterministic canonical order. The pipeline is:
//! assign dom/cod shapes, backtrack composition tables with associativity
//! pruning, attach one labeled poset per hom-set filtered by monotonicity of
//! composition, then dedupe on canonical encodings.

use crate::category::{validate_category, FinPosCategory, RawCategory};
use crate::ids::{MorphismId, ObjectId};
use crate::par;
use std::sync::OnceLock;
use thiserror::Error;

/// Upper bounds that enumeration refuses to exceed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub max_objects: usize,
    pub max_morphisms: usize,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits { max_objects: 3, max_morphisms: 6 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("bounds ({objects}, {morphisms}) exceed the configured cap ({cap_objects}, {cap_morphisms})")]
    BoundsTooLarge {
        objects: usize,
        morphisms: usize,
        cap_objects: usize,
        cap_morphisms: usize,
    },
}

/// All valid categories with at most `max_objects` objects and
/// `max_morphisms` morphisms, each exactly once up to relabeling.
pub fn enumerate_categories(
    max_objects: usize,
    max_morphisms: usize,
) -> Result<Vec<FinPosCategory>, EnumerationError> {
    enumerate_categories_with(EnumerationLimits::default(), max_objects, max_morphisms)
}

pub fn enumerate_categories_with(
    limits: EnumerationLimits,
    max_objects: usize,
    max_morphisms: usize,
) -> Result<Vec<FinPosCategory>, EnumerationError> {
    if max_objects > limits.max_objects || max_morphisms > limits.max_morphisms {
        return Err(EnumerationError::BoundsTooLarge {
            objects: max_objects,
            morphisms: max_morphisms,
            cap_objects: limits.max_objects,
            cap_morphisms: limits.max_morphisms,
        });
    }

    // Phase 1: composition tables per shape (cheap backtracking).
    // Phase 2: order attachment per table, which dominates, fanned out in
    // parallel at (shape, table) granularity.
    let mut units = Vec::new();
    for n_obj in 1..=max_objects {
        for n_mor in n_obj..=max_morphisms {
            for assignment in domcod_assignments(n_obj, n_mor) {
                let shape = Shape::new(n_obj, n_mor, &assignment);
                for table in shape.tables() {
                    units.push((shape.clone(), table));
                }
            }
        }
    }

    let results = par::map_collect(units, |(shape, table)| shape.with_orders(&table));

    let mut keyed: Vec<(Vec<u32>, FinPosCategory)> = results
        .into_iter()
        .flatten()
        .map(|c| (c.canonical_encoding(), c))
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    Ok(keyed.into_iter().map(|(_, c)| c).collect())
}

/// dom/cod pairs for the non-identity morphisms. Morphism k < n_obj is the
/// identity of object k.
fn domcod_assignments(n_obj: usize, n_mor: usize) -> Vec<Vec<(ObjectId, ObjectId)>> {
    let extra = n_mor - n_obj;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(extra);
    fn rec(
        n_obj: usize,
        extra: usize,
        cur: &mut Vec<(ObjectId, ObjectId)>,
        out: &mut Vec<Vec<(ObjectId, ObjectId)>>,
    ) {
        if cur.len() == extra {
            out.push(cur.clone());
            return;
        }
        for d in 0..n_obj {
            for c in 0..n_obj {
                cur.push((ObjectId(d as u32), ObjectId(c as u32)));
                rec(n_obj, extra, cur, out);
                cur.pop();
            }
        }
    }
    rec(n_obj, extra, &mut cur, &mut out);
    out
}

/// A dom/cod shape: object and morphism counts plus typing of non-identities.
#[derive(Debug, Clone)]
struct Shape {
    n_obj: usize,
    n_mor: usize,
    dom: Vec<ObjectId>,
    cod: Vec<ObjectId>,
    hom_sets: Vec<Vec<usize>>,
}

impl Shape {
    fn new(n_obj: usize, n_mor: usize, assignment: &[(ObjectId, ObjectId)]) -> Shape {
        let mut dom = Vec::with_capacity(n_mor);
        let mut cod = Vec::with_capacity(n_mor);
        for k in 0..n_obj {
            dom.push(ObjectId(k as u32));
            cod.push(ObjectId(k as u32));
        }
        for &(d, c) in assignment {
            dom.push(d);
            cod.push(c);
        }
        let hom_sets = hom_partition(n_obj, n_mor, &dom, &cod);
        Shape { n_obj, n_mor, dom, cod, hom_sets }
    }

    /// All associative composition tables over this shape.
    fn tables(&self) -> Vec<Vec<Option<MorphismId>>> {
        let (n_obj, n_mor) = (self.n_obj, self.n_mor);
        // Pre-fill identity composites; collect the free cells.
        let mut table: Vec<Option<MorphismId>> = vec![None; n_mor * n_mor];
        for f in 0..n_mor {
            let id_dom = self.dom[f].index(); // identity of dom(f) is morphism dom(f)
            let id_cod = self.cod[f].index();
            table[f * n_mor + id_dom] = Some(MorphismId(f as u32));
            table[id_cod * n_mor + f] = Some(MorphismId(f as u32));
        }
        let mut cells = Vec::new();
        for g in n_obj..n_mor {
            for f in n_obj..n_mor {
                if self.cod[f] == self.dom[g] && table[g * n_mor + f].is_none() {
                    cells.push((g, f));
                }
            }
        }
        // Candidates per cell: morphisms typed dom(f) -> cod(g).
        let candidates: Vec<Vec<MorphismId>> = cells
            .iter()
            .map(|&(g, f)| {
                (0..n_mor)
                    .filter(|&h| self.dom[h] == self.dom[f] && self.cod[h] == self.cod[g])
                    .map(|h| MorphismId(h as u32))
                    .collect()
            })
            .collect();
        // Composable triples (f, g, h): checks h∘(g∘f) = (h∘g)∘f.
        let mut triples = Vec::new();
        for f in 0..n_mor {
            for g in 0..n_mor {
                if self.cod[f] != self.dom[g] {
                    continue;
                }
                for h in 0..n_mor {
                    if self.cod[g] == self.dom[h] {
                        triples.push((f, g, h));
                    }
                }
            }
        }
        let mut tables = Vec::new();
        fill_tables(n_mor, &cells, &candidates, &triples, &mut table, 0, &mut tables);
        tables
    }

    /// All monotone orderings of one table, as validated categories.
    fn with_orders(&self, table: &[Option<MorphismId>]) -> Vec<FinPosCategory> {
        let mut out = Vec::new();
        attach_orders(self.n_obj, self.n_mor, &self.dom, &self.cod, table, &self.hom_sets, &mut out);
        out
    }
}

/// Associativity holds on every triple whose subterms are all defined.
fn assoc_consistent(n_mor: usize, table: &[Option<MorphismId>], triples: &[(usize, usize, usize)]) -> bool {
    for &(f, g, h) in triples {
        let Some(gf) = table[g * n_mor + f] else { continue };
        let Some(hg) = table[h * n_mor + g] else { continue };
        let left = table[h * n_mor + gf.index()];
        let right = table[hg.index() * n_mor + f];
        if let (Some(l), Some(r)) = (left, right) {
            if l != r {
                return false;
            }
        }
    }
    true
}

fn fill_tables(
    n_mor: usize,
    cells: &[(usize, usize)],
    candidates: &[Vec<MorphismId>],
    triples: &[(usize, usize, usize)],
    table: &mut Vec<Option<MorphismId>>,
    k: usize,
    out: &mut Vec<Vec<Option<MorphismId>>>,
) {
    if k == cells.len() {
        out.push(table.clone());
        return;
    }
    let (g, f) = cells[k];
    for &h in &candidates[k] {
        table[g * n_mor + f] = Some(h);
        if assoc_consistent(n_mor, table, triples) {
            fill_tables(n_mor, cells, candidates, triples, table, k + 1, out);
        }
    }
    table[g * n_mor + f] = None;
}

fn hom_partition(n_obj: usize, n_mor: usize, dom: &[ObjectId], cod: &[ObjectId]) -> Vec<Vec<usize>> {
    let mut homs = vec![Vec::new(); n_obj * n_obj];
    for m in 0..n_mor {
        homs[dom[m].index() * n_obj + cod[m].index()].push(m);
    }
    homs.retain(|h| !h.is_empty());
    homs
}

/// A labeled partial order on k points, reflexive closure included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Poset {
    pub k: usize,
    pub le: Vec<bool>,
}

impl Poset {
    fn le(&self, a: usize, b: usize) -> bool {
        self.le[a * self.k + b]
    }
}

/// All labeled posets on k points. Built recursively: a poset on k points is
/// a poset on the first k−1 together with a down-closed set below and an
/// up-closed set above the new point, every such pair already related.
pub(crate) fn labeled_posets(k: usize) -> &'static [Poset] {
    static CACHE: OnceLock<Vec<Vec<Poset>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| {
        let max_k = 6;
        let mut by_k: Vec<Vec<Poset>> = Vec::with_capacity(max_k + 1);
        by_k.push(vec![Poset { k: 0, le: vec![] }]);
        for k in 1..=max_k {
            let mut cur = Vec::new();
            for p in &by_k[k - 1] {
                extend_poset(p, k, &mut cur);
            }
            by_k.push(cur);
        }
        by_k
    });
    &cache[k]
}

fn extend_poset(p: &Poset, k: usize, out: &mut Vec<Poset>) {
    let prev = k - 1;
    let subsets = 1usize << prev;
    for down in 0..subsets {
        // down-closed: d in down and d' ≤ d imply d' in down
        let down_ok = (0..prev).all(|d| {
            (down >> d) & 1 == 0 || (0..prev).all(|d2| !p.le(d2, d) || (down >> d2) & 1 == 1)
        });
        if !down_ok {
            continue;
        }
        for up in 0..subsets {
            if down & up != 0 {
                continue;
            }
            let up_ok = (0..prev).all(|u| {
                (up >> u) & 1 == 0 || (0..prev).all(|u2| !p.le(u, u2) || (up >> u2) & 1 == 1)
            });
            if !up_ok {
                continue;
            }
            // transitivity across the new point: d < new < u needs d < u
            let bridged = (0..prev).all(|d| {
                (down >> d) & 1 == 0
                    || (0..prev).all(|u| (up >> u) & 1 == 0 || p.le(d, u))
            });
            if !bridged {
                continue;
            }
            let mut le = vec![false; k * k];
            for a in 0..prev {
                for b in 0..prev {
                    le[a * k + b] = p.le(a, b);
                }
            }
            le[prev * k + prev] = true;
            for d in 0..prev {
                if (down >> d) & 1 == 1 {
                    le[d * k + prev] = true;
                }
            }
            for u in 0..prev {
                if (up >> u) & 1 == 1 {
                    le[prev * k + u] = true;
                }
            }
            out.push(Poset { k, le });
        }
    }
}

/// Attach every monotone combination of hom-set orders to the table.
fn attach_orders(
    n_obj: usize,
    n_mor: usize,
    dom: &[ObjectId],
    cod: &[ObjectId],
    table: &[Option<MorphismId>],
    hom_sets: &[Vec<usize>],
    out: &mut Vec<FinPosCategory>,
) {
    let mut le = vec![false; n_mor * n_mor];
    rec_orders(n_obj, n_mor, dom, cod, table, hom_sets, 0, &mut le, out);
}

#[allow(clippy::too_many_arguments)]
fn rec_orders(
    n_obj: usize,
    n_mor: usize,
    dom: &[ObjectId],
    cod: &[ObjectId],
    table: &[Option<MorphismId>],
    hom_sets: &[Vec<usize>],
    i: usize,
    le: &mut Vec<bool>,
    out: &mut Vec<FinPosCategory>,
) {
    if i == hom_sets.len() {
        if monotone(n_mor, table, le) {
            out.push(build_category(n_obj, n_mor, dom, cod, table, le));
        }
        return;
    }
    let hs = &hom_sets[i];
    for p in labeled_posets(hs.len()) {
        for (ai, &a) in hs.iter().enumerate() {
            for (bi, &b) in hs.iter().enumerate() {
                le[a * n_mor + b] = p.le[ai * p.k + bi];
            }
        }
        rec_orders(n_obj, n_mor, dom, cod, table, hom_sets, i + 1, le, out);
    }
}

fn monotone(n_mor: usize, table: &[Option<MorphismId>], le: &[bool]) -> bool {
    for u in 0..n_mor {
        for v in 0..n_mor {
            if u == v || !le[u * n_mor + v] {
                continue;
            }
            for w in 0..n_mor {
                if let Some(wu) = table[w * n_mor + u] {
                    let wv = table[w * n_mor + v].unwrap();
                    if !le[wu.index() * n_mor + wv.index()] {
                        return false;
                    }
                }
                if let Some(uw) = table[u * n_mor + w] {
                    let vw = table[v * n_mor + w].unwrap();
                    if !le[uw.index() * n_mor + vw.index()] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn build_category(
    n_obj: usize,
    n_mor: usize,
    dom: &[ObjectId],
    cod: &[ObjectId],
    table: &[Option<MorphismId>],
    le: &[bool],
) -> FinPosCategory {
    let mut order_pairs = Vec::new();
    for a in 0..n_mor {
        for b in 0..n_mor {
            if a != b && le[a * n_mor + b] {
                order_pairs.push((MorphismId(a as u32), MorphismId(b as u32)));
            }
        }
    }
    let raw = RawCategory {
        object_names: (0..n_obj).map(|k| format!("x{}", k)).collect(),
        morphism_names: (0..n_mor)
            .map(|m| {
                if m < n_obj {
                    format!("id_x{}", m)
                } else {
                    format!("m{}", m)
                }
            })
            .collect(),
        dom: dom.to_vec(),
        cod: cod.to_vec(),
        identities: (0..n_obj).map(|k| MorphismId(k as u32)).collect(),
        compose: table.to_vec(),
        order_pairs,
    };
    validate_category(raw).expect("enumerated candidate must validate")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{fixture_arrow, fixture_idem, fixture_one};

    #[test]
    fn labeled_poset_counts_match_known_values() {
        // 1, 1, 3, 19, 219, 4231
        assert_eq!(labeled_posets(0).len(), 1);
        assert_eq!(labeled_posets(1).len(), 1);
        assert_eq!(labeled_posets(2).len(), 3);
        assert_eq!(labeled_posets(3).len(), 19);
        assert_eq!(labeled_posets(4).len(), 219);
        assert_eq!(labeled_posets(5).len(), 4231);
    }

    #[test]
    fn bounds_guard_fires() {
        assert!(matches!(
            enumerate_categories(4, 4),
            Err(EnumerationError::BoundsTooLarge { .. })
        ));
        assert!(matches!(
            enumerate_categories(2, 7),
            Err(EnumerationError::BoundsTooLarge { .. })
        ));
    }

    #[test]
    fn one_one_yields_exactly_the_terminal_category() {
        let cats = enumerate_categories(1, 1).unwrap();
        assert_eq!(cats.len(), 1);
        assert!(cats[0].isomorphic_to(&fixture_one()));
    }

    #[test]
    fn one_two_contents() {
        // Hand enumeration: ONE; the idempotent table with its three orders
        // (discrete, id ≤ e, e ≤ id); the two-element group, discrete only.
        let cats = enumerate_categories(1, 2).unwrap();
        assert_eq!(cats.len(), 5);
        assert!(cats.iter().any(|c| c.isomorphic_to(&fixture_one())));
        assert!(cats.iter().any(|c| c.isomorphic_to(&fixture_idem())));
        // the 2-element group: e∘e = id forces a discrete order
        let group2 = cats
            .iter()
            .filter(|c| {
                c.morphism_count() == 2
                    && c.compose(MorphismId(1), MorphismId(1)) == Some(MorphismId(0))
            })
            .collect::<Vec<_>>();
        assert_eq!(group2.len(), 1);
        assert!(!group2[0].le(MorphismId(0), MorphismId(1)));
        assert!(!group2[0].le(MorphismId(1), MorphismId(0)));
    }

    #[test]
    fn two_three_contains_arrow() {
        let cats = enumerate_categories(2, 3).unwrap();
        let arrow = fixture_arrow();
        assert!(cats.iter().any(|c| c.isomorphic_to(&arrow)));
    }

    #[test]
    fn corpus_is_closed_under_dual() {
        let cats = enumerate_categories(2, 4).unwrap();
        let keys: std::collections::BTreeSet<Vec<u32>> =
            cats.iter().map(|c| c.canonical_encoding()).collect();
        for c in &cats {
            assert!(keys.contains(&c.dual().canonical_encoding()));
        }
    }

    #[test]
    fn corpus_orders_relate_only_parallel_morphisms() {
        for c in enumerate_categories(2, 3).unwrap() {
            for a in c.morphisms() {
                for b in c.morphisms() {
                    if c.le(a, b) {
                        assert!(c.parallel(a, b));
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_is_deterministic() {
        let a = enumerate_categories(2, 3).unwrap();
        let b = enumerate_categories(2, 3).unwrap();
        let ka: Vec<_> = a.iter().map(|c| c.canonical_encoding()).collect();
        let kb: Vec<_> = b.iter().map(|c| c.canonical_encoding()).collect();
        assert_eq!(ka, kb);
    }
}
