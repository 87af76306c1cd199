use std::collections::HashMap;
use std::sync::Arc;

use super::params::{derive_params, CodeParams, DerivedParams, Variant};
use crate::error::{Error, Result};
use crate::galois::{Field, FqElem};
use crate::ring::{Ring, RingElem};

/// A trace code {(Tr(rx))_{x ∈ L} : r} together with its coordinate order.
///
/// Coordinates run over x = x₀ + x₁u + x₂v + x₃uv with x₀ outermost (through D
/// in order d₁..dₙ, or through ξ⁰, ξ¹, ... for the unit variant) and x₁, x₂, x₃
/// each ascending by field-element index, x₃ fastest.
#[derive(Clone, Debug)]
pub struct TraceCode {
    params: CodeParams,
    derived: DerivedParams,
    ring: Ring,
    base: Ring,
    x0_set: Vec<FqElem>,
    x0_position: HashMap<FqElem, u64>,
    trace_table: Vec<u32>,
}

/// Per-codeword lookup tables t_k[x] = tr(r_k·x).
struct TraceRows {
    t: [Vec<u32>; 4],
}

#[inline(always)]
fn addp(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline(always)]
fn negp(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

impl TraceCode {
    pub fn new(params: CodeParams) -> Result<TraceCode> {
        let derived = derive_params(&params)?;
        let field = params.field.clone();
        let ring = Ring::new(field.clone());
        let base = Ring::base(field.characteristic())?;
        let x0_set: Vec<FqElem> = match params.variant {
            Variant::Lift => derived.defining_set.clone(),
            Variant::Units => (0..field.order() - 1).map(|k| field.xi_pow(k)).collect(),
        };
        let x0_position = x0_set.iter().enumerate().map(|(i, &x)| (x, i as u64)).collect();
        let trace_table = field.elements().map(|x| field.trace(x) as u32).collect();
        Ok(TraceCode { params, derived, ring, base, x0_set, x0_position, trace_table })
    }

    pub fn build(p: u64, m: usize, order: u64, variant: Variant) -> Result<TraceCode> {
        TraceCode::new(CodeParams::build(p, m, order, variant)?)
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn derived(&self) -> &DerivedParams {
        &self.derived
    }

    pub fn field(&self) -> &Field {
        &self.params.field
    }

    pub fn field_arc(&self) -> &Arc<Field> {
        &self.params.field
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn base_ring(&self) -> &Ring {
        &self.base
    }

    pub fn variant(&self) -> Variant {
        self.params.variant
    }

    pub fn x0_set(&self) -> &[FqElem] {
        &self.x0_set
    }

    /// Order of the cyclotomic classes on which uv-line weights are constant:
    /// N₂ for the lifted set, 1 for the unit set.
    pub fn uv_class_order(&self) -> u64 {
        match self.params.variant {
            Variant::Lift => self.derived.n2,
            Variant::Units => 1,
        }
    }

    pub fn len(&self) -> u64 {
        self.derived.coordinate_count
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn gray_length(&self) -> u64 {
        self.derived.gray_length
    }

    /// The coordinate at position `idx` of the deterministic order.
    pub fn coordinate(&self, idx: u64) -> RingElem {
        let q = self.field().order();
        let q3 = q * q * q;
        let rem = idx % q3;
        RingElem {
            a: self.x0_set[(idx / q3) as usize],
            b: FqElem::from_raw(rem / (q * q)),
            c: FqElem::from_raw(rem / q % q),
            d: FqElem::from_raw(rem % q),
        }
    }

    /// Position of `x` in the coordinate order, if it belongs to the defining set.
    pub fn locate(&self, x: &RingElem) -> Option<u64> {
        if !self.ring.contains(x) {
            return None;
        }
        let q = self.field().order();
        let pos = *self.x0_position.get(&x.a)?;
        Some(((pos * q + x.b.index()) * q + x.c.index()) * q + x.d.index())
    }

    pub fn coordinates(&self) -> CoordinateSpace<'_> {
        CoordinateSpace { code: self, next: 0, end: self.len() }
    }

    /// The k-th of `workers` contiguous blocks of the coordinate order.
    pub fn coordinate_block(&self, k: u64, workers: u64) -> CoordinateSpace<'_> {
        let len = self.len();
        let start = len * k / workers;
        let end = len * (k + 1) / workers;
        CoordinateSpace { code: self, next: start, end }
    }

    /// Ev(r) = (Tr(rx))_x as a stream, by ring multiplication and trace.
    pub fn evaluate<'a>(&'a self, r: &RingElem) -> impl Iterator<Item = RingElem> + 'a {
        let r = *r;
        self.coordinates().map(move |x| self.ring.trace(&self.ring.mul(&r, &x)))
    }

    fn rows(&self, r: &RingElem) -> TraceRows {
        let f = self.field();
        let row = |c: FqElem| -> Vec<u32> {
            f.elements().map(|x| self.trace_table[f.mul(c, x).index() as usize]).collect()
        };
        TraceRows { t: [row(r.a), row(r.b), row(r.c), row(r.d)] }
    }

    /// Runs `visit` on each entry (B₀, B₁, B₂, B₃) of Ev(r) in coordinate
    /// order, where Tr(rx) = B₀ + B₁u + B₂v + B₃uv:
    ///   B₀ = tr(r₀x₀), B₁ = tr(r₀x₁) + tr(r₁x₀), B₂ = tr(r₀x₂) + tr(r₂x₀),
    ///   B₃ = tr(r₀x₃) + tr(r₁x₂) + tr(r₂x₁) + tr(r₃x₀).
    #[inline(always)]
    fn for_each_entry<F: FnMut(u32, u32, u32, u32)>(&self, r: &RingElem, mut visit: F) {
        let p = self.field().characteristic() as u32;
        let q = self.field().order() as usize;
        let TraceRows { t: [t0, t1, t2, t3] } = self.rows(r);
        for &x0 in &self.x0_set {
            let x0 = x0.index() as usize;
            let (b0, e1, e2, e3) = (t0[x0], t1[x0], t2[x0], t3[x0]);
            for x1 in 0..q {
                let b1 = addp(t0[x1], e1, p);
                let f = addp(t2[x1], e3, p);
                for x2 in 0..q {
                    let b2 = addp(t0[x2], e2, p);
                    let c = addp(t1[x2], f, p);
                    for &s in &t0[..q] {
                        visit(b0, b1, b2, addp(s, c, p));
                    }
                }
            }
        }
    }

    /// Lee weight of Ev(r): the number of nonzero symbols of its Gray image,
    /// counted in one pass over the coordinates.
    pub fn lee_weight(&self, r: &RingElem) -> u64 {
        let p = self.field().characteristic() as u32;
        let q = self.field().order() as usize;
        let TraceRows { t: [t0, t1, t2, t3] } = self.rows(r);
        let mut weight = 0u64;
        for &x0 in &self.x0_set {
            let x0 = x0.index() as usize;
            let (b0, e1, e2, e3) = (t0[x0], t1[x0], t2[x0], t3[x0]);
            for x1 in 0..q {
                let b1 = addp(t0[x1], e1, p);
                let f = addp(t2[x1], e3, p);
                let nb1 = negp(b1, p);
                for x2 in 0..q {
                    let b2 = addp(t0[x2], e2, p);
                    let c = addp(t1[x2], f, p);
                    // Gray symbols are b3, b2+b3, b1+b3, b0+b1+b2+b3; each is
                    // zero exactly when b3 equals the negated remainder.
                    let nb2 = negp(b2, p);
                    let nsum = negp(addp(b0, addp(b1, b2, p), p), p);
                    let mut zeros = 0u32;
                    for &s in &t0[..q] {
                        let b3 = addp(s, c, p);
                        zeros +=
                            (b3 == 0) as u32 + (b3 == nb2) as u32 + (b3 == nb1) as u32 + (b3 == nsum) as u32;
                    }
                    weight += 4 * q as u64 - zeros as u64;
                }
            }
        }
        weight
    }

    /// Number of occurrences of each symbol of F_p in the Gray image of Ev(r).
    pub fn symbol_histogram(&self, r: &RingElem) -> Vec<u64> {
        let p = self.field().characteristic() as u32;
        let mut hist = vec![0u64; p as usize];
        self.for_each_entry(r, |b0, b1, b2, b3| {
            hist[b3 as usize] += 1;
            hist[addp(b2, b3, p) as usize] += 1;
            hist[addp(b1, b3, p) as usize] += 1;
            hist[addp(addp(b0, b1, p), addp(b2, b3, p), p) as usize] += 1;
        });
        hist
    }

    /// Ev(r) materialized over the base ring.
    pub fn codeword(&self, r: &RingElem) -> Vec<RingElem> {
        let mut out = Vec::with_capacity(self.len() as usize);
        self.for_each_entry(r, |b0, b1, b2, b3| {
            out.push(RingElem {
                a: FqElem::from_raw(b0 as u64),
                b: FqElem::from_raw(b1 as u64),
                c: FqElem::from_raw(b2 as u64),
                d: FqElem::from_raw(b3 as u64),
            })
        });
        out
    }

    /// Φ(Ev(r)), one byte per F_p symbol.
    pub fn gray_bytes(&self, r: &RingElem) -> Result<Vec<u8>> {
        let p = self.field().characteristic();
        if p > 256 {
            return Err(Error::SymbolTooWide(p));
        }
        let p = p as u32;
        let mut out = Vec::with_capacity(self.gray_length() as usize);
        self.for_each_entry(r, |b0, b1, b2, b3| {
            out.extend_from_slice(&[
                b3 as u8,
                addp(b2, b3, p) as u8,
                addp(b1, b3, p) as u8,
                addp(addp(b0, b1, p), addp(b2, b3, p), p) as u8,
            ]);
        });
        Ok(out)
    }

    /// c_b = (tr(b·d_j))_j, a codeword of the field code C_D.
    pub fn field_subcode_word(&self, b: FqElem) -> Vec<u64> {
        let f = self.field();
        self.derived.defining_set.iter().map(|&d| f.trace(f.mul(b, d))).collect()
    }

    /// All p^m codewords of C_D, indexed by b in element order.
    pub fn field_subcode(&self) -> Vec<Vec<u64>> {
        self.field().elements().map(|b| self.field_subcode_word(b)).collect()
    }
}

/// A restartable range of the deterministic coordinate order.
#[derive(Clone)]
pub struct CoordinateSpace<'a> {
    code: &'a TraceCode,
    next: u64,
    end: u64,
}

impl Iterator for CoordinateSpace<'_> {
    type Item = RingElem;

    fn next(&mut self) -> Option<RingElem> {
        if self.next >= self.end {
            return None;
        }
        let x = self.code.coordinate(self.next);
        self.next += 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.next) as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for CoordinateSpace<'_> {}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn random_elem(code: &TraceCode, rng: &mut ChaCha8Rng) -> RingElem {
        let q = code.field().order();
        code.ring().from_index(rng.gen_range(0..q.pow(4)))
    }

    #[test]
    fn coordinate_stream_order() {
        let code = TraceCode::build(3, 2, 1, Variant::Lift).unwrap();
        let first = code.coordinates().next().unwrap();
        assert_eq!(first, code.ring().one());
        assert_eq!(code.coordinates().len(), 2916);
        for (i, x) in code.coordinates().enumerate() {
            assert!(code.ring().is_unit(&x));
            assert_eq!(code.locate(&x), Some(i as u64));
        }
        let units = TraceCode::build(3, 2, 1, Variant::Units).unwrap();
        assert_eq!(units.coordinates().count(), 5832);
        assert!(units.coordinates().all(|x| units.ring().is_unit(&x)));
    }

    #[test]
    fn blocks_partition_the_stream() {
        let code = TraceCode::build(3, 2, 2, Variant::Lift).unwrap();
        let whole: Vec<RingElem> = code.coordinates().collect();
        let joined: Vec<RingElem> = (0..7).flat_map(|k| code.coordinate_block(k, 7)).collect();
        assert_eq!(whole, joined);
    }

    #[test]
    fn kernel_matches_ring_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, m, n, v) in [
            (3, 2, 1, Variant::Lift),
            (3, 2, 2, Variant::Lift),
            (3, 2, 1, Variant::Units),
            (5, 1, 1, Variant::Lift),
        ] {
            let code = TraceCode::build(p, m, n, v).unwrap();
            for _ in 0..6 {
                let r = random_elem(&code, &mut rng);
                let slow: Vec<RingElem> = code.evaluate(&r).collect();
                let fast = code.codeword(&r);
                assert_eq!(slow, fast);
                let word = code.base_ring().gray_word(&fast).unwrap();
                assert_eq!(code.lee_weight(&r), word.hamming_weight());
                let bytes = code.gray_bytes(&r).unwrap();
                assert!(bytes.iter().zip(&word.entries).all(|(&b, &e)| b as u64 == e));
                let hist = code.symbol_histogram(&r);
                assert_eq!(hist.iter().sum::<u64>(), code.gray_length());
                assert_eq!(code.gray_length() - hist[0], code.lee_weight(&r));
            }
        }
    }

    #[test]
    fn evaluation_is_linear() {
        let code = TraceCode::build(3, 2, 1, Variant::Lift).unwrap();
        let (ring, base) = (code.ring(), code.base_ring());
        assert!(code.codeword(&RingElem::ZERO).iter().all(|e| e.is_zero()));
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let (r, s) = (random_elem(&code, &mut rng), random_elem(&code, &mut rng));
            let sum = code.codeword(&ring.add(&r, &s));
            let parts: Vec<RingElem> =
                code.codeword(&r).iter().zip(code.codeword(&s)).map(|(a, b)| base.add(a, &b)).collect();
            assert_eq!(sum, parts);
        }
    }

    #[test]
    fn evaluation_is_injective_at_3_2() {
        let code = TraceCode::build(3, 2, 1, Variant::Lift).unwrap();
        let mut seen = HashSet::new();
        for r in code.ring().elements() {
            assert!(seen.insert(code.gray_bytes(&r).unwrap()));
        }
        assert_eq!(seen.len(), 6561);
    }

    #[test]
    fn field_subcode_weights() {
        let code = TraceCode::build(3, 2, 1, Variant::Lift).unwrap();
        let f = code.field();
        assert!(code.field_subcode_word(f.zero()).iter().all(|&s| s == 0));
        for b in f.elements().skip(1) {
            let w = code.field_subcode_word(b).iter().filter(|&&s| s != 0).count();
            assert_eq!(w, 3);
            let zeros = crate::galois::count_zero_traces(f, b, &code.derived().defining_set);
            assert_eq!(w as u64, code.derived().n - zeros);
        }
        let cd = TraceCode::build(3, 4, 4, Variant::Lift).unwrap().field_subcode();
        assert_eq!(cd.len(), 81);
        assert!(cd.iter().all(|w| w.len() == 10));
    }

    #[test]
    fn scalar_multiples_of_coordinates() {
        let code = TraceCode::build(3, 2, 1, Variant::Lift).unwrap();
        let units = TraceCode::build(3, 2, 1, Variant::Units).unwrap();
        for x in code.coordinates().step_by(13) {
            for lambda in 1..3 {
                let y = code.ring().scale(lambda, &x);
                assert!(units.locate(&y).is_some());
                assert_eq!(code.locate(&y).is_some(), lambda == 1);
            }
        }
    }
}
