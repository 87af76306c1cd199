//! The extension ring F_{p^m} + uF_{p^m} + vF_{p^m} + uvF_{p^m} with
//! u² = v² = 0 and uv = vu, its Frobenius and Trace, and on the base ring
//! (m = 1) the Gray map to F_p⁴ and the Lee weight.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::{Field, FqElem};

/// a + b·u + c·v + d·uv.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RingElem {
    pub a: FqElem,
    pub b: FqElem,
    pub c: FqElem,
    pub d: FqElem,
}

impl RingElem {
    pub const ZERO: RingElem =
        RingElem { a: FqElem::ZERO, b: FqElem::ZERO, c: FqElem::ZERO, d: FqElem::ZERO };

    pub fn new(a: FqElem, b: FqElem, c: FqElem, d: FqElem) -> RingElem {
        RingElem { a, b, c, d }
    }

    pub fn coords(&self) -> [FqElem; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RingClass {
    Zero,
    /// α·uv with α ≠ 0.
    UvLine,
    /// Nonzero elements of the maximal ideal off the uv-line.
    OtherMaximal,
    Unit,
}

/// Ring arithmetic over a fixed coefficient field. Elements carry no field
/// reference; [`Ring::contains`] checks that coordinates are in range.
#[derive(Clone, Debug)]
pub struct Ring {
    field: Arc<Field>,
}

/// Φ(a + bu + cv + duv) = (d, c+d, b+d, a+b+c+d) over F_p.
pub fn gray_symbols(p: u64, a: u64, b: u64, c: u64, d: u64) -> [u64; 4] {
    [d % p, (c + d) % p, (b + d) % p, (a + b + c + d) % p]
}

/// A Gray image: a vector over F_p of length 4·(ring length).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayWord {
    pub entries: Vec<u64>,
}

impl GrayWord {
    pub fn hamming_weight(&self) -> u64 {
        self.entries.iter().filter(|&&s| s != 0).count() as u64
    }

    pub fn hamming_distance(&self, other: &GrayWord) -> u64 {
        self.entries.iter().zip(&other.entries).filter(|(a, b)| a != b).count() as u64
    }
}

impl Ring {
    pub fn new(field: Arc<Field>) -> Ring {
        Ring { field }
    }

    /// The base ring R = F_p + uF_p + vF_p + uvF_p.
    pub fn base(p: u64) -> Result<Ring> {
        Ok(Ring::new(Arc::new(Field::prime(p)?)))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn field_arc(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    /// Number of ring elements, q⁴.
    pub fn order(&self) -> u64 {
        self.field.order().pow(4)
    }

    pub fn elem(&self, a: FqElem, b: FqElem, c: FqElem, d: FqElem) -> RingElem {
        RingElem { a, b, c, d }
    }

    pub fn zero(&self) -> RingElem {
        RingElem::ZERO
    }

    pub fn one(&self) -> RingElem {
        RingElem { a: self.field.one(), ..RingElem::ZERO }
    }

    pub fn u(&self) -> RingElem {
        RingElem { b: self.field.one(), ..RingElem::ZERO }
    }

    pub fn v(&self) -> RingElem {
        RingElem { c: self.field.one(), ..RingElem::ZERO }
    }

    pub fn uv(&self) -> RingElem {
        RingElem { d: self.field.one(), ..RingElem::ZERO }
    }

    /// Element with the given F_p coordinates.
    pub fn from_prime_coords(&self, coords: [u64; 4]) -> RingElem {
        let f = &self.field;
        RingElem {
            a: f.from_prime(coords[0]),
            b: f.from_prime(coords[1]),
            c: f.from_prime(coords[2]),
            d: f.from_prime(coords[3]),
        }
    }

    /// k-th element in (a, b, c, d) lexicographic order, a most significant.
    pub fn from_index(&self, k: u64) -> RingElem {
        let q = self.field.order();
        RingElem {
            a: FqElem::from_raw(k / (q * q * q)),
            b: FqElem::from_raw(k / (q * q) % q),
            c: FqElem::from_raw(k / q % q),
            d: FqElem::from_raw(k % q),
        }
    }

    pub fn index_of(&self, x: &RingElem) -> u64 {
        let q = self.field.order();
        ((x.a.index() * q + x.b.index()) * q + x.c.index()) * q + x.d.index()
    }

    pub fn elements(&self) -> impl Iterator<Item = RingElem> + '_ {
        (0..self.order()).map(|k| self.from_index(k))
    }

    pub fn contains(&self, x: &RingElem) -> bool {
        x.coords().iter().all(|&c| self.field.contains(c))
    }

    pub fn add(&self, x: &RingElem, y: &RingElem) -> RingElem {
        let f = &self.field;
        RingElem { a: f.add(x.a, y.a), b: f.add(x.b, y.b), c: f.add(x.c, y.c), d: f.add(x.d, y.d) }
    }

    pub fn neg(&self, x: &RingElem) -> RingElem {
        let f = &self.field;
        RingElem { a: f.neg(x.a), b: f.neg(x.b), c: f.neg(x.c), d: f.neg(x.d) }
    }

    pub fn sub(&self, x: &RingElem, y: &RingElem) -> RingElem {
        self.add(x, &self.neg(y))
    }

    /// xy = x₀y₀ + (x₀y₁+x₁y₀)u + (x₀y₂+x₂y₀)v + (x₀y₃+x₁y₂+x₂y₁+x₃y₀)uv.
    pub fn mul(&self, x: &RingElem, y: &RingElem) -> RingElem {
        let f = &self.field;
        let a = f.mul(x.a, y.a);
        let b = f.add(f.mul(x.a, y.b), f.mul(x.b, y.a));
        let c = f.add(f.mul(x.a, y.c), f.mul(x.c, y.a));
        let d = f.add(f.add(f.mul(x.a, y.d), f.mul(x.b, y.c)), f.add(f.mul(x.c, y.b), f.mul(x.d, y.a)));
        RingElem { a, b, c, d }
    }

    /// [`Ring::mul`] with a coordinate range check on both operands.
    pub fn try_mul(&self, x: &RingElem, y: &RingElem) -> Result<RingElem> {
        if !self.contains(x) || !self.contains(y) {
            return Err(Error::MismatchedField);
        }
        Ok(self.mul(x, y))
    }

    /// Multiplication by a residue of F_p.
    pub fn scale(&self, lambda: u64, x: &RingElem) -> RingElem {
        let f = &self.field;
        RingElem {
            a: f.scale(lambda, x.a),
            b: f.scale(lambda, x.b),
            c: f.scale(lambda, x.c),
            d: f.scale(lambda, x.d),
        }
    }

    /// Embeds an element of the base ring R (coordinates in F_p).
    pub fn embed_base(&self, base: &Ring, x: &RingElem) -> Result<RingElem> {
        if base.degree() != 1 || base.field().characteristic() != self.field.characteristic() {
            return Err(Error::MismatchedField);
        }
        Ok(self.from_prime_coords(x.coords().map(|c| c.index())))
    }

    pub fn frobenius(&self, x: &RingElem) -> RingElem {
        let f = &self.field;
        RingElem { a: f.frobenius(x.a), b: f.frobenius(x.b), c: f.frobenius(x.c), d: f.frobenius(x.d) }
    }

    /// Tr(a + bu + cv + duv) = tr(a) + tr(b)u + tr(c)v + tr(d)uv, as an element
    /// of the base ring.
    pub fn trace(&self, x: &RingElem) -> RingElem {
        let t = x.coords().map(|c| FqElem::from_raw(self.field.trace(c)));
        RingElem { a: t[0], b: t[1], c: t[2], d: t[3] }
    }

    /// Tr as the sum of Frobenius iterates, for cross-checking [`Ring::trace`].
    pub fn trace_by_frobenius(&self, x: &RingElem) -> RingElem {
        let mut sum = RingElem::ZERO;
        let mut term = *x;
        for _ in 0..self.degree() {
            sum = self.add(&sum, &term);
            term = self.frobenius(&term);
        }
        let coords = sum
            .coords()
            .map(|c| FqElem::from_raw(self.field.as_prime(c).expect("trace lies in the base ring")));
        RingElem { a: coords[0], b: coords[1], c: coords[2], d: coords[3] }
    }

    pub fn classify(&self, x: &RingElem) -> RingClass {
        if !x.a.is_zero() {
            RingClass::Unit
        } else if x.b.is_zero() && x.c.is_zero() {
            if x.d.is_zero() {
                RingClass::Zero
            } else {
                RingClass::UvLine
            }
        } else {
            RingClass::OtherMaximal
        }
    }

    pub fn is_unit(&self, x: &RingElem) -> bool {
        self.classify(x) == RingClass::Unit
    }

    /// (a + n)⁻¹ = a⁻¹(1 - a⁻¹n + (a⁻¹n)² - (a⁻¹n)³) for nilpotent n.
    pub fn inverse(&self, x: &RingElem) -> Option<RingElem> {
        let a_inv = self.field.inv(x.a)?;
        let a_inv_elem = RingElem { a: a_inv, ..RingElem::ZERO };
        let nil = RingElem { a: FqElem::ZERO, ..*x };
        let t = self.mul(&a_inv_elem, &nil);
        let t2 = self.mul(&t, &t);
        let t3 = self.mul(&t2, &t);
        let series = self.add(&self.sub(&self.one(), &t), &self.sub(&t2, &t3));
        Some(self.mul(&a_inv_elem, &series))
    }

    fn require_base(&self) -> Result<()> {
        if self.degree() != 1 {
            return Err(Error::NotBaseRing(self.degree()));
        }
        Ok(())
    }

    pub fn gray(&self, x: &RingElem) -> Result<[u64; 4]> {
        self.require_base()?;
        let p = self.field.characteristic();
        Ok(gray_symbols(p, x.a.index(), x.b.index(), x.c.index(), x.d.index()))
    }

    pub fn lee_weight(&self, x: &RingElem) -> Result<u64> {
        Ok(self.gray(x)?.iter().filter(|&&s| s != 0).count() as u64)
    }

    pub fn gray_word(&self, xs: &[RingElem]) -> Result<GrayWord> {
        self.require_base()?;
        let mut entries = Vec::with_capacity(4 * xs.len());
        for x in xs {
            entries.extend_from_slice(&self.gray(x)?);
        }
        Ok(GrayWord { entries })
    }

    pub fn lee_weight_vec(&self, xs: &[RingElem]) -> Result<u64> {
        xs.iter().map(|x| self.lee_weight(x)).sum()
    }

    /// Base-ring elements of Lee weight 1: γ, γ(u-1), γ(v-1), γ(1-u)(1-v)
    /// for γ ∈ F_p*, found by enumeration.
    pub fn lee_weight_one_elements(&self) -> Result<Vec<RingElem>> {
        self.require_base()?;
        let mut out = Vec::new();
        for x in self.elements() {
            if self.lee_weight(&x)? == 1 {
                out.push(x);
            }
        }
        Ok(out)
    }

    pub fn display(&self, x: &RingElem) -> RingDisplay<'_> {
        RingDisplay { ring: self, elem: *x }
    }
}

/// Renders as `a + b*u + c*v + d*uv`.
pub struct RingDisplay<'a> {
    ring: &'a Ring,
    elem: RingElem,
}

impl fmt::Display for RingDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fld = self.ring.field();
        let e = &self.elem;
        write!(
            f,
            "{} + {}*u + {}*v + {}*uv",
            fld.fmt_elem(e.a),
            fld.fmt_elem(e.b),
            fld.fmt_elem(e.c),
            fld.fmt_elem(e.d)
        )
    }
}
