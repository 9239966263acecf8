//! Scale of a vector and the (±)-modification of a form by it:
//! b'(α, β) = b(α, β) ± b(x, α) b(x, β) / s², s = scale of x.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::BilinearLattice;
use crate::error::{Error, Result};
use crate::linalg::{vec_content, IntegerMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn opposite(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if *self == Sign::Plus { "+" } else { "-" })
    }
}

impl std::str::FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Sign> {
        match s {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            other => Err(Error::Parse(format!("sign must be + or -, got {:?}", other))),
        }
    }
}

/// Gcd of the entries of `b(x, ·)`; zero exactly when x is in the kernel.
pub fn scale(l: &BilinearLattice, x: &[BigInt]) -> Result<BigInt> {
    Ok(vec_content(&l.functional(x)?))
}

pub fn modify(l: &BilinearLattice, x: &[BigInt], sign: Sign) -> Result<BilinearLattice> {
    let v = l.functional(x)?;
    let s = vec_content(&v);
    if s.is_zero() {
        return Err(Error::ZeroScale);
    }
    let w: Vec<BigInt> = v.iter().map(|e| e / &s).collect();
    let n = l.rank();
    let mut g = l.gram().clone();
    let k = BigInt::from(sign.value());
    for i in 0..n {
        for j in 0..n {
            g[(i, j)] += &k * &w[i] * &w[j];
        }
    }
    BilinearLattice::new(g)
}

impl BilinearLattice {
    pub fn scale(&self, x: &[BigInt]) -> Result<BigInt> {
        scale(self, x)
    }

    pub fn modify(&self, x: &[BigInt], sign: Sign) -> Result<BilinearLattice> {
        modify(self, x, sign)
    }

    pub fn from_gram_unchecked(gram: IntegerMatrix) -> BilinearLattice {
        debug_assert!(gram.is_symmetric());
        BilinearLattice { gram }
    }
}
