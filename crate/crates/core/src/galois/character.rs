//! Multiplicative and additive characters, cyclotomic classes and Gaussian
//! sums over F_{p^m}. Values are double-precision complex numbers; all
//! integer facts downstream are counted exactly and only cross-checked here.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::field::{Field, FqElem};
use crate::error::{Error, Result};

/// Tolerance for character-sum identities.
pub const CHARACTER_TOLERANCE: f64 = 1e-6;

/// The `index`-th power of the canonical character of order `order`,
/// ξ^k ↦ exp(2πi·index·k/order).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultChar {
    pub order: u64,
    pub index: u64,
}

impl MultChar {
    pub fn new(field: &Field, order: u64, index: u64) -> Result<MultChar> {
        check_divides(field, order)?;
        Ok(MultChar { order, index: index % order })
    }

    pub fn is_trivial(&self) -> bool {
        self.index == 0
    }

    /// Value at ξ^k.
    pub fn at_exponent(&self, k: u64) -> Complex64 {
        let r = (self.index as u128 * k as u128 % self.order as u128) as f64;
        Complex64::from_polar(1.0, 2.0 * PI * r / self.order as f64)
    }

    /// Value at a nonzero element; `None` at zero.
    pub fn value(&self, field: &Field, x: FqElem) -> Option<Complex64> {
        field.discrete_log(x).ok().map(|k| self.at_exponent(k))
    }

    pub fn conj(&self) -> MultChar {
        MultChar { order: self.order, index: (self.order - self.index) % self.order }
    }
}

fn check_divides(field: &Field, order: u64) -> Result<()> {
    let group = field.order() - 1;
    if order == 0 || !group.is_multiple_of(order) {
        return Err(Error::OrderDoesNotDivide { order, group });
    }
    Ok(())
}

/// η^k with η = exp(2πi/p).
pub fn root_of_unity(p: u64, k: u64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * (k % p) as f64 / p as f64)
}

/// Canonical additive character χ(x) = η^tr(x).
pub fn additive_character(field: &Field, x: FqElem) -> Complex64 {
    root_of_unity(field.characteristic(), field.trace(x))
}

/// C_i^N = ξ^i·⟨ξ^N⟩, listed as ξ^(i), ξ^(i+N), ξ^(i+2N), ...
pub fn cyclotomic_class(field: &Field, i: u64, order: u64) -> Result<Vec<FqElem>> {
    check_divides(field, order)?;
    if i >= order {
        return Err(Error::IndexOutOfRange { what: "cyclotomic class index", index: i, bound: order });
    }
    let size = (field.order() - 1) / order;
    Ok((0..size).map(|k| field.xi_pow(i + order * k)).collect())
}

/// G(φ̄^j, χ) = Σ_{x≠0} φ̄^j(x)·η^tr(x) for the canonical character φ of the
/// given order.
pub fn gauss_sum(field: &Field, order: u64, j: u64) -> Result<Complex64> {
    let chi = MultChar::new(field, order, j)?.conj();
    let p = field.characteristic();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut x = field.one();
    for k in 0..field.order() - 1 {
        sum += chi.at_exponent(k) * root_of_unity(p, field.trace(x));
        x = field.mul(x, field.primitive_element());
    }
    Ok(sum)
}

/// N(b) = #{j : tr(b·d_j) = 0}.
pub fn count_zero_traces(field: &Field, b: FqElem, defining_set: &[FqElem]) -> u64 {
    defining_set.iter().filter(|&&d| field.trace(field.mul(b, d)) == 0).count() as u64
}

/// Right-hand side of p·N(b) = n + (1/N₂)·Σ_j G(φ̄^j, χ)·φ^j(b), computed
/// from Gaussian sums only.
pub fn zero_trace_character_sum(field: &Field, b: FqElem, n: u64, n2: u64) -> Result<Complex64> {
    let k = field.discrete_log(b)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..n2 {
        let phi = MultChar::new(field, n2, j)?;
        acc += gauss_sum(field, n2, j)? * phi.at_exponent(k);
    }
    Ok(Complex64::new(n as f64, 0.0) + acc / n2 as f64)
}
