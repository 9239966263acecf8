//! Split vector bundles on the projective line, as multisets of degrees.

use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};

/// `⊕ O(d_i)`, degrees kept sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SplitBundle {
    degrees: Vec<i64>,
}

impl SplitBundle {
    pub fn new(mut degrees: Vec<i64>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::Precondition("a split bundle needs rank at least one".into()));
        }
        degrees.sort_unstable();
        Ok(SplitBundle { degrees })
    }

    pub fn line(d: i64) -> Self {
        SplitBundle { degrees: vec![d] }
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    /// Degree of the determinant.
    pub fn degree(&self) -> i64 {
        self.degrees.iter().sum()
    }

    pub fn dual(&self) -> Self {
        SplitBundle::new(self.degrees.iter().map(|d| -d).collect()).expect("same rank")
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let degrees = self
            .degrees
            .iter()
            .cartesian_product(&other.degrees)
            .map(|(a, b)| a + b)
            .collect();
        SplitBundle::new(degrees).expect("nonempty product")
    }

    pub fn twist(&self, k: i64) -> Self {
        SplitBundle::new(self.degrees.iter().map(|d| d + k).collect()).expect("same rank")
    }

    /// `Sym^m`: one summand per degree-m monomial in the summands.
    pub fn sym(&self, m: usize) -> Self {
        if m == 0 {
            return SplitBundle::line(0);
        }
        let degrees = self
            .degrees
            .iter()
            .combinations_with_replacement(m)
            .map(|c| c.into_iter().sum())
            .collect();
        SplitBundle::new(degrees).expect("nonempty")
    }

    pub fn h0(&self) -> u64 {
        self.degrees.iter().map(|&d| (d + 1).max(0) as u64).sum()
    }

    pub fn h1(&self) -> u64 {
        self.degrees.iter().map(|&d| (-d - 1).max(0) as u64).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees.iter().map(|d| d + 1).sum()
    }
}

impl fmt::Display for SplitBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .degrees
            .iter()
            .dedup_with_count()
            .map(|(k, d)| {
                if k == 1 {
                    format!("O({})", d)
                } else {
                    format!("O({})^{}", d, k)
                }
            })
            .collect();
        f.write_str(&parts.join(" ⊕ "))
    }
}

/// `h⁰(P(E), O(mξ + kf))`, computed as `h⁰` of `Sym^m(E*) ⊗ O(k)` on the line:
/// sections of the relative hyperplane class push forward to the dual.
pub fn projective_bundle_h0(e: &SplitBundle, m: usize, k: i64) -> u64 {
    pushforward(e, m, k).h0()
}

pub fn pushforward(e: &SplitBundle, m: usize, k: i64) -> SplitBundle {
    e.dual().sym(m).twist(k)
}
