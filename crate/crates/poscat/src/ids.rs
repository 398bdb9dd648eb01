//! Dense integer identifiers for objects and morphisms of one category.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Index of an object within one category. Ids are contiguous from 0.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ObjectId(pub u32);

/// Index of a morphism within one category. Ids are contiguous from 0 and
/// every morphism has exactly one (dom, cod) pair.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MorphismId(pub u32);

impl ObjectId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl MorphismId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O{}", self.0)
    }
}

impl fmt::Debug for MorphismId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M{}", self.0)
    }
}

impl From<usize> for ObjectId {
    fn from(i: usize) -> Self {
        ObjectId(i as u32)
    }
}

impl From<usize> for MorphismId {
    fn from(i: usize) -> Self {
        MorphismId(i as u32)
    }
}
