//! Finite lax diagrams describing (weak) limit problems.
//!
//! A `DiagramSpec` has vertices (each receives a cone leg), edges (which a
//! cone must make commute on the nose), and order constraints between leg
//! composites. Every limit shape used by the solvers — terminal, binary
//! product, inserter, comma, pullback and the multi-legged shapes of the
//! completion recipes — is expressed in this one encoding.

use crate::category::FinPosCategory;
use crate::ids::{MorphismId, ObjectId};
use thiserror::Error;

pub type VertexId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintRel {
    Eq,
    Le,
}

/// A leg composite: the cone leg into `start` postcomposed with `labels`
/// in application order (labels[0] first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSpec {
    pub start: VertexId,
    pub labels: Vec<MorphismId>,
}

impl PathSpec {
    pub fn leg(start: VertexId) -> Self {
        PathSpec { start, labels: Vec::new() }
    }

    pub fn then(start: VertexId, labels: Vec<MorphismId>) -> Self {
        PathSpec { start, labels }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub from: VertexId,
    pub to: VertexId,
    pub label: MorphismId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub lhs: PathSpec,
    pub rhs: PathSpec,
    pub rel: ConstraintRel,
}

/// Shape of a limit problem over some category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramSpec {
    pub vertices: Vec<ObjectId>,
    pub edges: Vec<Edge>,
    pub constraints: Vec<Constraint>,
}

/// A cone: an apex together with one leg per vertex. Valid only when every
/// edge commutes and every constraint holds; the solvers check that.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cone {
    pub apex: ObjectId,
    pub legs: Vec<MorphismId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("diagram spec invalid: {0}")]
    SpecInvalid(String),
}

impl DiagramSpec {
    pub fn conical(vertices: Vec<ObjectId>, edges: Vec<Edge>) -> Self {
        DiagramSpec { vertices, edges, constraints: Vec::new() }
    }

    /// Empty diagram; a cone is just an apex.
    pub fn terminal() -> Self {
        DiagramSpec { vertices: vec![], edges: vec![], constraints: vec![] }
    }

    pub fn binary_product(x: ObjectId, y: ObjectId) -> Self {
        DiagramSpec { vertices: vec![x, y], edges: vec![], constraints: vec![] }
    }

    /// Inserter shape of an ordered parallel pair (f, g): a leg e into dom f
    /// with f∘e ≤ g∘e.
    pub fn inserter(c: &FinPosCategory, f: MorphismId, g: MorphismId) -> Result<Self, SpecError> {
        if !c.parallel(f, g) {
            return Err(SpecError::SpecInvalid("inserter needs a parallel pair".into()));
        }
        Ok(DiagramSpec {
            vertices: vec![c.dom(f)],
            edges: vec![],
            constraints: vec![Constraint {
                lhs: PathSpec::then(0, vec![f]),
                rhs: PathSpec::then(0, vec![g]),
                rel: ConstraintRel::Le,
            }],
        })
    }

    /// Comma shape of a cospan (f: X→Z, g: Y→Z): legs c0, c1 with f∘c0 ≤ g∘c1.
    pub fn comma(c: &FinPosCategory, f: MorphismId, g: MorphismId) -> Result<Self, SpecError> {
        if c.cod(f) != c.cod(g) {
            return Err(SpecError::SpecInvalid("comma needs a common codomain".into()));
        }
        Ok(DiagramSpec {
            vertices: vec![c.dom(f), c.dom(g)],
            edges: vec![],
            constraints: vec![Constraint {
                lhs: PathSpec::then(0, vec![f]),
                rhs: PathSpec::then(1, vec![g]),
                rel: ConstraintRel::Le,
            }],
        })
    }

    /// Conical pullback shape of a cospan (f: X→Z, g: Y→Z).
    pub fn pullback(c: &FinPosCategory, f: MorphismId, g: MorphismId) -> Result<Self, SpecError> {
        if c.cod(f) != c.cod(g) {
            return Err(SpecError::SpecInvalid("pullback needs a common codomain".into()));
        }
        Ok(DiagramSpec::conical(
            vec![c.dom(f), c.dom(g), c.cod(f)],
            vec![
                Edge { from: 0, to: 2, label: f },
                Edge { from: 1, to: 2, label: g },
            ],
        ))
    }

    /// Checks vertex/edge/constraint typing against a category.
    pub fn validate(&self, c: &FinPosCategory) -> Result<(), SpecError> {
        for &v in &self.vertices {
            if v.index() >= c.object_count() {
                return Err(SpecError::SpecInvalid("vertex object out of range".into()));
            }
        }
        for e in &self.edges {
            if e.from >= self.vertices.len() || e.to >= self.vertices.len() {
                return Err(SpecError::SpecInvalid("edge endpoint out of range".into()));
            }
            if c.dom(e.label) != self.vertices[e.from] || c.cod(e.label) != self.vertices[e.to] {
                return Err(SpecError::SpecInvalid(format!(
                    "edge label {} does not match its vertex objects",
                    c.morphism_name(e.label)
                )));
            }
        }
        for k in &self.constraints {
            let lhs = self.path_cod(c, &k.lhs)?;
            let rhs = self.path_cod(c, &k.rhs)?;
            if lhs != rhs {
                return Err(SpecError::SpecInvalid(
                    "constraint paths must target the same object".into(),
                ));
            }
        }
        Ok(())
    }

    fn path_cod(&self, c: &FinPosCategory, p: &PathSpec) -> Result<ObjectId, SpecError> {
        if p.start >= self.vertices.len() {
            return Err(SpecError::SpecInvalid("path start out of range".into()));
        }
        let mut at = self.vertices[p.start];
        for &l in &p.labels {
            if c.dom(l) != at {
                return Err(SpecError::SpecInvalid("path labels not composable".into()));
            }
            at = c.cod(l);
        }
        Ok(at)
    }

    /// Value of a path under a cone's legs.
    pub fn eval_path(&self, c: &FinPosCategory, legs: &[MorphismId], p: &PathSpec) -> MorphismId {
        let mut m = legs[p.start];
        for &l in &p.labels {
            m = c.comp(l, m);
        }
        m
    }

    /// Whether (apex, legs) is a cone: edges commute, constraints hold.
    pub fn is_cone(&self, c: &FinPosCategory, apex: ObjectId, legs: &[MorphismId]) -> bool {
        debug_assert_eq!(legs.len(), self.vertices.len());
        for (i, &v) in self.vertices.iter().enumerate() {
            if c.dom(legs[i]) != apex || c.cod(legs[i]) != v {
                return false;
            }
        }
        for e in &self.edges {
            if c.comp(e.label, legs[e.from]) != legs[e.to] {
                return false;
            }
        }
        for k in &self.constraints {
            let l = self.eval_path(c, legs, &k.lhs);
            let r = self.eval_path(c, legs, &k.rhs);
            let ok = match k.rel {
                ConstraintRel::Eq => l == r,
                ConstraintRel::Le => c.le(l, r),
            };
            if !ok {
                return false;
            }
        }
        true
    }

    /// All cones with the given apex, in lexicographic leg order.
    ///
    /// Legs are enumerated for "free" vertices (those that are not the target
    /// of any edge) and derived along edges for the rest, which keeps the
    /// search space small on the multi-legged recipe diagrams.
    pub fn cones_with_apex(&self, c: &FinPosCategory, apex: ObjectId) -> Vec<Cone> {
        let nv = self.vertices.len();
        if nv == 0 {
            return vec![Cone { apex, legs: vec![] }];
        }
        // Vertices derivable from an in-edge; process in dependency order.
        let mut derived_from: Vec<Option<&Edge>> = vec![None; nv];
        for e in &self.edges {
            if derived_from[e.to].is_none() && e.from != e.to {
                derived_from[e.to] = Some(e);
            }
        }
        // Break derivation cycles: a vertex is free unless its deriving chain
        // bottoms out in a genuinely free vertex.
        let mut free: Vec<VertexId> = Vec::new();
        let mut order: Vec<VertexId> = Vec::new(); // derivation order
        let mut state = vec![0u8; nv]; // 0 unvisited, 1 in progress, 2 done
        fn visit(
            v: VertexId,
            derived_from: &mut Vec<Option<&Edge>>,
            state: &mut Vec<u8>,
            free: &mut Vec<VertexId>,
            order: &mut Vec<VertexId>,
        ) {
            if state[v] == 2 {
                return;
            }
            if state[v] == 1 {
                // cycle: make it free
                derived_from[v] = None;
                free.push(v);
                state[v] = 2;
                return;
            }
            state[v] = 1;
            let df = derived_from[v];
            match df {
                Some(e) => {
                    visit(e.from, derived_from, state, free, order);
                    if state[v] == 2 {
                        return; // was resolved as free during the cycle break
                    }
                    order.push(v);
                }
                None => free.push(v),
            }
            state[v] = 2;
        }
        for v in 0..nv {
            visit(v, &mut derived_from, &mut state, &mut free, &mut order);
        }
        free.sort_unstable();

        let mut out = Vec::new();
        let mut legs = vec![MorphismId(u32::MAX); nv];
        self.assign_free(c, apex, &free, 0, &mut legs, &order, &derived_from, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn assign_free(
        &self,
        c: &FinPosCategory,
        apex: ObjectId,
        free: &[VertexId],
        k: usize,
        legs: &mut Vec<MorphismId>,
        order: &[VertexId],
        derived_from: &[Option<&Edge>],
        out: &mut Vec<Cone>,
    ) {
        if k == free.len() {
            // Derive the remaining legs along edges, then check everything.
            for &v in order {
                let e = derived_from[v].unwrap();
                legs[v] = c.comp(e.label, legs[e.from]);
            }
            if self.is_cone(c, apex, legs) {
                out.push(Cone { apex, legs: legs.clone() });
            }
            return;
        }
        let v = free[k];
        for &m in c.hom(apex, self.vertices[v]) {
            legs[v] = m;
            self.assign_free(c, apex, free, k + 1, legs, order, derived_from, out);
        }
    }

    /// All cones over the spec, apexes in id order.
    pub fn all_cones(&self, c: &FinPosCategory) -> Vec<Cone> {
        let mut out = Vec::new();
        for apex in c.objects() {
            out.extend(self.cones_with_apex(c, apex));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{fixture_arrow, fixture_idem, fixture_one};

    #[test]
    fn comma_cones_over_idem() {
        let idem = fixture_idem();
        let spec = DiagramSpec::comma(&idem, MorphismId(0), MorphismId(0)).unwrap();
        let cones = spec.all_cones(&idem);
        // exactly the ≤-pairs (id,id), (id,e), (e,e)
        let pairs: Vec<(u32, u32)> = cones.iter().map(|c| (c.legs[0].0, c.legs[1].0)).collect();
        assert_eq!(pairs, vec![(0, 0), (0, 1), (1, 1)]);
    }

    #[test]
    fn pullback_cones_derive_the_third_leg() {
        let arrow = fixture_arrow();
        let f = MorphismId(2);
        let spec = DiagramSpec::pullback(&arrow, f, f).unwrap();
        let cones = spec.all_cones(&arrow);
        assert_eq!(cones.len(), 1);
        assert_eq!(cones[0].apex, ObjectId(0));
        assert_eq!(cones[0].legs, vec![MorphismId(0), MorphismId(0), f]);
    }

    #[test]
    fn terminal_spec_has_one_cone_per_apex() {
        let one = fixture_one();
        let spec = DiagramSpec::terminal();
        assert_eq!(spec.all_cones(&one).len(), 1);
    }

    #[test]
    fn spec_validation_rejects_bad_typing() {
        let arrow = fixture_arrow();
        assert!(DiagramSpec::inserter(&arrow, MorphismId(0), MorphismId(2)).is_err());
        let bad = DiagramSpec::conical(
            vec![ObjectId(0)],
            vec![Edge { from: 0, to: 0, label: MorphismId(2) }],
        );
        assert!(bad.validate(&arrow).is_err());
    }
}
