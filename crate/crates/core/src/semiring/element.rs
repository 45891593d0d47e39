//! Payload types for extended numeric carriers.

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Count;

/// A finite value or `∞`. Ordered with every finite value below `∞`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ext<T> {
    Fin(T),
    Inf,
}

/// Arctic payload: `−∞`, a finite value, or `+∞`, in that order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Arctic {
    NegInf,
    Fin(BigRational),
    PosInf,
}

pub(super) fn ext_add<T>(x: &Ext<T>, y: &Ext<T>) -> Ext<T>
where
    T: Clone,
    for<'a> &'a T: Add<&'a T, Output = T>,
{
    match (x, y) {
        (Ext::Fin(a), Ext::Fin(b)) => Ext::Fin(a + b),
        _ => Ext::Inf,
    }
}

pub(super) fn ext_mul<T>(x: &Ext<T>, y: &Ext<T>) -> Ext<T>
where
    T: Clone + Zero,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    match (x, y) {
        (Ext::Fin(a), _) if a.is_zero() => Ext::Fin(T::zero()),
        (_, Ext::Fin(b)) if b.is_zero() => Ext::Fin(T::zero()),
        (Ext::Fin(a), Ext::Fin(b)) => Ext::Fin(a * b),
        _ => Ext::Inf,
    }
}

/// `count · x` where an infinite count absorbs every nonzero value and
/// `∞ · 0 = 0`.
pub(super) fn ext_scale<T>(count: Count, x: &Ext<T>) -> Ext<T>
where
    T: Clone + Zero + FromCount,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    let c = match count {
        Count::Fin(n) => Ext::Fin(T::from_count(n)),
        Count::Inf => Ext::Inf,
    };
    ext_mul(&c, x)
}

/// Conversion from a finite family size.
pub(super) trait FromCount {
    fn from_count(n: u64) -> Self;
}

impl FromCount for BigUint {
    fn from_count(n: u64) -> Self {
        BigUint::from(n)
    }
}

impl FromCount for BigRational {
    fn from_count(n: u64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

pub(super) fn arctic_mul(x: &Arctic, y: &Arctic) -> Arctic {
    match (x, y) {
        (Arctic::NegInf, _) | (_, Arctic::NegInf) => Arctic::NegInf,
        (Arctic::PosInf, _) | (_, Arctic::PosInf) => Arctic::PosInf,
        (Arctic::Fin(a), Arctic::Fin(b)) => Arctic::Fin(a + b),
    }
}

pub(super) fn render_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(super) fn render_ext<T: RenderScalar>(x: &Ext<T>) -> String {
    match x {
        Ext::Fin(v) => v.render(),
        Ext::Inf => "inf".to_string(),
    }
}

pub(super) trait RenderScalar {
    fn render(&self) -> String;
}

impl RenderScalar for BigUint {
    fn render(&self) -> String {
        self.to_string()
    }
}

impl RenderScalar for BigRational {
    fn render(&self) -> String {
        render_rational(self)
    }
}

pub(super) fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p.trim().parse().ok()?, q))
        }
        None => Some(BigRational::from_integer(s.trim().parse().ok()?)),
    }
}

pub(super) fn parse_ext<T>(s: &str, fin: impl Fn(&str) -> Option<T>) -> Option<Ext<T>> {
    if s == "inf" {
        Some(Ext::Inf)
    } else {
        fin(s).map(Ext::Fin)
    }
}

impl fmt::Display for Arctic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arctic::NegInf => f.write_str("-inf"),
            Arctic::Fin(r) => f.write_str(&render_rational(r)),
            Arctic::PosInf => f.write_str("inf"),
        }
    }
}

impl FromStr for Arctic {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "-inf" => Ok(Arctic::NegInf),
            "inf" => Ok(Arctic::PosInf),
            other => parse_rational(other).map(Arctic::Fin).ok_or(()),
        }
    }
}
