//! Vectors over the ground set and the modular functions they induce.

use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::set::Subset;

/// A point `x ∈ R^n`; it induces the modular function `x(S) = Σ_{j∈S} x[j]`
/// with `x(∅) = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        Point { coords }
    }

    pub fn zeros(n: usize) -> Self {
        Point { coords: vec![0.0; n] }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    pub fn get(&self, element: usize) -> f64 {
        self.coords[element]
    }

    /// `x(S)`, summed in ascending element order.
    pub fn sum_over(&self, s: Subset) -> f64 {
        s.indices().map(|j| self.coords[j]).sum()
    }

    /// `x(V)`.
    pub fn total(&self) -> f64 {
        self.coords.iter().sum()
    }
}

impl Index<usize> for Point {
    type Output = f64;

    fn index(&self, element: usize) -> &f64 {
        &self.coords[element]
    }
}

impl From<Vec<f64>> for Point {
    fn from(coords: Vec<f64>) -> Self {
        Point::new(coords)
    }
}
