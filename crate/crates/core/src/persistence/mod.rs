//! Persistent homology engine: max-min landmark selection, lazy witness
//! complex construction, boundary-matrix reduction over the two-element
//! field, and barcode extraction.

mod barcode;
mod landmarks;
mod reduce;
mod witness;

pub use barcode::{Barcode, Interval};
pub use landmarks::{maxmin_landmarks, LandmarkSet};
pub use reduce::reduce_and_extract;
pub use witness::{lazy_witness_complex, WitnessConfig};

use crate::error::{Error, Result};
use smallvec::SmallVec;
use std::cmp::Ordering;

/// Vertex storage tuned to the working regime: simplices up to dimension 5
/// live inline, larger ones spill to the heap.
pub(crate) type VertexList = SmallVec<[u32; 6]>;

/// A simplex with its filtration entry value. Vertices are kept sorted.
#[derive(Debug, Clone, PartialEq)]
pub struct Simplex {
    vertices: VertexList,
    value: f64,
}

impl Simplex {
    pub fn new(vertices: Vec<u32>, value: f64) -> Self {
        Self::from_sorted(VertexList::from_vec(vertices), value)
    }

    pub(crate) fn from_sorted(mut vertices: VertexList, value: f64) -> Self {
        vertices.sort_unstable();
        debug_assert!(
            vertices.windows(2).all(|w| w[0] < w[1]),
            "simplex vertices must be distinct"
        );
        Self { vertices, value }
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }
}

/// Total order used everywhere a simplex sequence must be deterministic:
/// filtration value, then dimension, then lexicographic vertices.
pub(crate) fn simplex_order(a: &Simplex, b: &Simplex) -> Ordering {
    a.value
        .total_cmp(&b.value)
        .then(a.vertices.len().cmp(&b.vertices.len()))
        .then_with(|| a.vertices[..].cmp(&b.vertices[..]))
}

/// A simplicial complex whose simplices carry filtration values, stored in
/// reduction order.
#[derive(Debug, Clone, PartialEq)]
pub struct FilteredComplex {
    simplices: Vec<Simplex>,
    max_dimension: usize,
    max_filtration: f64,
}

impl FilteredComplex {
    /// Sorts the simplices into filtration order and checks value bounds.
    /// Face monotonicity is verified later, during reduction.
    pub fn new(
        mut simplices: Vec<Simplex>,
        max_dimension: usize,
        max_filtration: f64,
    ) -> Result<Self> {
        if !(max_filtration > 0.0) || !max_filtration.is_finite() {
            return Err(Error::InvalidParam(format!(
                "max filtration must be positive and finite, got {max_filtration}"
            )));
        }
        for s in &simplices {
            if !s.value.is_finite() || s.value < 0.0 || s.value > max_filtration {
                return Err(Error::InvalidParam(format!(
                    "filtration value {} outside [0, {max_filtration}]",
                    s.value
                )));
            }
            if s.dim() > max_dimension {
                return Err(Error::InvalidParam(format!(
                    "simplex of dimension {} exceeds cap {max_dimension}",
                    s.dim()
                )));
            }
        }
        simplices.sort_by(simplex_order);
        Ok(Self {
            simplices,
            max_dimension,
            max_filtration,
        })
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn max_dimension(&self) -> usize {
        self.max_dimension
    }

    pub fn max_filtration(&self) -> f64 {
        self.max_filtration
    }
}
