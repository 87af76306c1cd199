use std::collections::HashMap;

use super::field::{Field, FqElem};
use crate::error::{Error, Result};

/// Baby-step/giant-step: with s = ⌈√(q-1)⌉, store ξ^j for j < s and walk
/// x·ξ^(-s·i) until it lands in the table.
pub fn baby_step_giant_step(field: &Field, x: FqElem) -> Result<u64> {
    if x.is_zero() {
        return Err(Error::ZeroHasNoLog);
    }
    let group = field.order() - 1;
    let step = (group as f64).sqrt().ceil() as u64;
    let xi = field.primitive_element();

    let mut baby = HashMap::with_capacity(step as usize);
    let mut acc = field.one();
    for j in 0..step {
        baby.entry(acc).or_insert(j);
        acc = field.mul_poly(acc, xi);
    }

    let giant = field.inv(field.pow(xi, step)).expect("powers of a primitive element are nonzero");
    let mut gamma = x;
    for i in 0..=step {
        if let Some(&j) = baby.get(&gamma) {
            return Ok((i * step + j) % group);
        }
        gamma = field.mul_poly(gamma, giant);
    }
    unreachable!("every nonzero element is a power of ξ")
}
