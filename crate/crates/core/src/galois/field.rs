use std::fmt;

use serde::{Deserialize, Serialize};

use super::poly;
use crate::arith::{checked_pow, is_prime};
use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 40;

/// Fields up to this order get exp/log tables; above it, multiplication is
/// done on polynomials and discrete logs use baby-step/giant-step.
pub const DEFAULT_TABLE_THRESHOLD: u64 = 1 << 20;

/// An element of F_{p^m} in polynomial basis.
///
/// The element is stored as the integer whose base-p digits are its
/// coefficients, constant term most significant. Integer order therefore
/// coincides with lexicographic order of the constant-first coefficient list.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FqElem(u64);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);

    /// Wraps a raw index without a range check; callers guarantee it is
    /// below the field order.
    pub(crate) fn from_raw(index: u64) -> FqElem {
        FqElem(index)
    }

    pub fn index(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

type Digits = [u64; MAX_DEGREE];

#[derive(Clone, Debug)]
struct LogTables {
    exp: Vec<u64>,
    log: Vec<u32>,
}

/// F_{p^m} = F_p[x]/(f) with a designated primitive element.
#[derive(Clone, Debug)]
pub struct Field {
    p: u64,
    m: usize,
    q: u64,
    modulus: Vec<u32>,
    xi: FqElem,
    one: FqElem,
    basis_traces: Vec<u64>,
    tables: Option<LogTables>,
}

/// The text record identifying a field: p, m and the modulus coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldRecord {
    pub p: u64,
    pub m: usize,
    pub modulus: Vec<u32>,
}

impl fmt::Display for FieldRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
        write!(f, "p={} m={} modulus={}", self.p, self.m, coeffs.join(","))
    }
}

/// Parses a constant-first, comma-separated coefficient list such as `2,1,1`.
pub fn parse_modulus(text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidModulus(format!("cannot parse coefficient {s:?}")))
        })
        .collect()
}

impl Field {
    /// Builds F_{p^m}. Without a modulus, the lexicographically first
    /// primitive polynomial is chosen and ξ is the class of the indeterminate.
    pub fn new(p: u64, m: usize, modulus: Option<&[u32]>) -> Result<Field> {
        Self::with_table_threshold(p, m, modulus, DEFAULT_TABLE_THRESHOLD)
    }

    pub fn prime(p: u64) -> Result<Field> {
        Self::new(p, 1, None)
    }

    pub fn with_table_threshold(
        p: u64,
        m: usize,
        modulus: Option<&[u32]>,
        table_threshold: u64,
    ) -> Result<Field> {
        if p.is_multiple_of(2) {
            return Err(Error::EvenCharacteristic(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m < 1 {
            return Err(Error::InvalidDegree(m));
        }
        let q = match checked_pow(p, m) {
            Some(q) if m <= MAX_DEGREE && p < (1 << 31) && q <= (1 << 62) => q,
            _ => return Err(Error::FieldTooLarge { p, m }),
        };
        let group = q - 1;

        let (modulus, x_primitive) = match modulus {
            Some(given) => {
                validate_modulus(given, p, m)?;
                let f: Vec<u64> = given.iter().map(|&c| c as u64).collect();
                if !poly::is_irreducible(&f, p) {
                    return Err(Error::ReducibleModulus(given.to_vec()));
                }
                let x_prim = poly::has_full_order(&[0, 1], group, &f, p);
                (given.to_vec(), x_prim)
            }
            None => (search_primitive_modulus(p, m), true),
        };

        let mut field = Field {
            p,
            m,
            q,
            modulus,
            xi: FqElem(0),
            one: FqElem(p.pow(m as u32 - 1)),
            basis_traces: Vec::new(),
            tables: None,
        };

        let x_class = field.indeterminate();
        field.xi = if x_primitive {
            x_class
        } else {
            // Supplied modulus is irreducible but not primitive: fall back to
            // the first primitive element in index order.
            let f = field.modulus_u64();
            (1..q)
                .map(FqElem)
                .find(|&g| poly::has_full_order(&field.poly_of(g), group, &f, p))
                .expect("the multiplicative group of a finite field is cyclic")
        };

        field.basis_traces = (0..m)
            .map(|i| {
                let mut d = [0u64; MAX_DEGREE];
                d[i] = 1;
                field.trace_by_definition(field.pack(&d))
            })
            .collect();

        if q <= table_threshold {
            let mut exp = Vec::with_capacity(group as usize);
            let mut log = vec![0u32; q as usize];
            let mut acc = field.one;
            for k in 0..group {
                exp.push(acc.0);
                log[acc.0 as usize] = k as u32;
                acc = field.mul_poly(acc, field.xi);
            }
            field.tables = Some(LogTables { exp, log });
        }
        Ok(field)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn primitive_element(&self) -> FqElem {
        self.xi
    }

    pub fn record(&self) -> FieldRecord {
        FieldRecord { p: self.p, m: self.m, modulus: self.modulus.clone() }
    }

    pub fn has_log_tables(&self) -> bool {
        self.tables.is_some()
    }

    pub fn zero(&self) -> FqElem {
        FqElem(0)
    }

    pub fn one(&self) -> FqElem {
        self.one
    }

    /// Embeds a residue of F_p as a constant.
    pub fn from_prime(&self, c: u64) -> FqElem {
        FqElem((c % self.p) * self.one.0)
    }

    /// Inverse of [`Field::from_prime`]; `None` if `x` is not a constant.
    pub fn as_prime(&self, x: FqElem) -> Option<u64> {
        x.0.is_multiple_of(self.one.0).then_some(x.0 / self.one.0)
    }

    pub fn element(&self, index: u64) -> Result<FqElem> {
        if index < self.q {
            Ok(FqElem(index))
        } else {
            Err(Error::IndexOutOfRange { what: "field element", index, bound: self.q })
        }
    }

    pub fn contains(&self, x: FqElem) -> bool {
        x.0 < self.q
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q).map(FqElem)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FqElem> {
        if coeffs.len() != self.m {
            return Err(Error::InvalidElement(format!(
                "expected {} coefficients, got {}",
                self.m,
                coeffs.len()
            )));
        }
        let mut d = [0u64; MAX_DEGREE];
        for (slot, &c) in d.iter_mut().zip(coeffs) {
            if c as u64 >= self.p {
                return Err(Error::InvalidElement(format!("coefficient {c} not below p = {}", self.p)));
            }
            *slot = c as u64;
        }
        Ok(self.pack(&d))
    }

    pub fn coeffs(&self, x: FqElem) -> Vec<u32> {
        let d = self.unpack(x);
        d[..self.m].iter().map(|&c| c as u32).collect()
    }

    pub fn fmt_elem(&self, x: FqElem) -> String {
        let parts: Vec<String> = self.coeffs(x).iter().map(|c| c.to_string()).collect();
        if self.m == 1 {
            parts[0].clone()
        } else {
            format!("({})", parts.join(","))
        }
    }

    fn indeterminate(&self) -> FqElem {
        if self.m == 1 {
            FqElem((self.p - self.modulus[0] as u64 % self.p) % self.p)
        } else {
            let mut d = [0u64; MAX_DEGREE];
            d[1] = 1;
            self.pack(&d)
        }
    }

    fn unpack(&self, x: FqElem) -> Digits {
        let mut d = [0u64; MAX_DEGREE];
        let mut v = x.0;
        for slot in d[..self.m].iter_mut().rev() {
            *slot = v % self.p;
            v /= self.p;
        }
        d
    }

    fn pack(&self, d: &Digits) -> FqElem {
        FqElem(d[..self.m].iter().fold(0u64, |acc, &c| acc * self.p + c))
    }

    fn modulus_u64(&self) -> Vec<u64> {
        self.modulus.iter().map(|&c| c as u64).collect()
    }

    fn poly_of(&self, x: FqElem) -> Vec<u64> {
        self.unpack(x)[..self.m].to_vec()
    }

    pub fn add(&self, x: FqElem, y: FqElem) -> FqElem {
        if self.m == 1 {
            return FqElem((x.0 + y.0) % self.p);
        }
        let (a, b) = (self.unpack(x), self.unpack(y));
        let mut d = [0u64; MAX_DEGREE];
        for i in 0..self.m {
            d[i] = (a[i] + b[i]) % self.p;
        }
        self.pack(&d)
    }

    pub fn neg(&self, x: FqElem) -> FqElem {
        if self.m == 1 {
            return FqElem((self.p - x.0) % self.p);
        }
        let a = self.unpack(x);
        let mut d = [0u64; MAX_DEGREE];
        for i in 0..self.m {
            d[i] = (self.p - a[i]) % self.p;
        }
        self.pack(&d)
    }

    pub fn sub(&self, x: FqElem, y: FqElem) -> FqElem {
        self.add(x, self.neg(y))
    }

    /// Multiplication by a residue of F_p.
    pub fn scale(&self, c: u64, x: FqElem) -> FqElem {
        let c = c % self.p;
        let a = self.unpack(x);
        let mut d = [0u64; MAX_DEGREE];
        for i in 0..self.m {
            d[i] = a[i] * c % self.p;
        }
        self.pack(&d)
    }

    pub fn mul(&self, x: FqElem, y: FqElem) -> FqElem {
        match &self.tables {
            Some(t) => {
                if x.0 == 0 || y.0 == 0 {
                    return FqElem(0);
                }
                let e = (t.log[x.0 as usize] as u64 + t.log[y.0 as usize] as u64) % (self.q - 1);
                FqElem(t.exp[e as usize])
            }
            None => self.mul_poly(x, y),
        }
    }

    /// Schoolbook product reduced by the monic modulus; table-free.
    pub fn mul_poly(&self, x: FqElem, y: FqElem) -> FqElem {
        let (p, m) = (self.p, self.m);
        if m == 1 {
            return FqElem(x.0 * y.0 % p);
        }
        let (a, b) = (self.unpack(x), self.unpack(y));
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..m {
            if a[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
            }
        }
        for deg in (m..2 * m - 1).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            for j in 0..m {
                prod[deg - m + j] = (prod[deg - m + j] + (p - c) * self.modulus[j] as u64) % p;
            }
        }
        let mut d = [0u64; MAX_DEGREE];
        d[..m].copy_from_slice(&prod[..m]);
        self.pack(&d)
    }

    pub fn pow(&self, x: FqElem, mut e: u64) -> FqElem {
        let mut acc = self.one;
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// ξ^k for any k (reduced mod p^m - 1).
    pub fn xi_pow(&self, k: u64) -> FqElem {
        let k = k % (self.q - 1);
        match &self.tables {
            Some(t) => FqElem(t.exp[k as usize]),
            None => self.pow(self.xi, k),
        }
    }

    pub fn inv(&self, x: FqElem) -> Option<FqElem> {
        if x.is_zero() {
            return None;
        }
        Some(match &self.tables {
            Some(t) => {
                let l = t.log[x.0 as usize] as u64;
                FqElem(t.exp[((self.q - 1 - l) % (self.q - 1)) as usize])
            }
            None => self.pow(x, self.q - 2),
        })
    }

    pub fn frobenius(&self, x: FqElem) -> FqElem {
        self.pow(x, self.p)
    }

    /// Absolute trace to F_p, through the precomputed traces of the basis.
    pub fn trace(&self, x: FqElem) -> u64 {
        if self.m == 1 {
            return x.0;
        }
        let d = self.unpack(x);
        d[..self.m].iter().zip(&self.basis_traces).fold(0, |acc, (&c, &t)| (acc + c * t) % self.p)
    }

    /// x + x^p + ... + x^(p^(m-1)), evaluated literally.
    pub fn trace_by_definition(&self, x: FqElem) -> u64 {
        let mut sum = FqElem(0);
        let mut term = x;
        for _ in 0..self.m {
            sum = self.add(sum, term);
            term = self.pow_poly(term, self.p);
        }
        self.as_prime(sum).expect("trace lies in the prime field")
    }

    fn pow_poly(&self, x: FqElem, mut e: u64) -> FqElem {
        let mut acc = self.one;
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_poly(acc, base);
            }
            base = self.mul_poly(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, x: FqElem) -> Option<u64> {
        if x.is_zero() {
            return None;
        }
        let mut order = self.q - 1;
        for r in crate::arith::prime_factors(self.q - 1) {
            while order.is_multiple_of(r) && self.pow(x, order / r) == self.one {
                order /= r;
            }
        }
        Some(order)
    }

    /// Exponent k in [0, p^m - 1) with ξ^k = x.
    pub fn discrete_log(&self, x: FqElem) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::ZeroHasNoLog);
        }
        match &self.tables {
            Some(t) => Ok(t.log[x.0 as usize] as u64),
            None => super::dlog::baby_step_giant_step(self, x),
        }
    }
}

fn validate_modulus(given: &[u32], p: u64, m: usize) -> Result<()> {
    if given.len() != m + 1 {
        return Err(Error::InvalidModulus(format!(
            "expected {} coefficients (constant first, monic), got {}",
            m + 1,
            given.len()
        )));
    }
    if given[m] != 1 {
        return Err(Error::InvalidModulus("leading coefficient must be 1".into()));
    }
    if let Some(c) = given.iter().find(|&&c| c as u64 >= p) {
        return Err(Error::InvalidModulus(format!("coefficient {c} not below p = {p}")));
    }
    Ok(())
}

/// First monic primitive polynomial of degree m, scanning the lower
/// coefficients (c_0, ..., c_{m-1}) in lexicographic order.
fn search_primitive_modulus(p: u64, m: usize) -> Vec<u32> {
    let group = p.pow(m as u32) - 1;
    let total = p.pow(m as u32);
    for k in 0..total {
        let mut f = vec![0u64; m + 1];
        let mut v = k;
        for slot in f[..m].iter_mut().rev() {
            *slot = v % p;
            v /= p;
        }
        f[m] = 1;
        if f[0] == 0 {
            continue;
        }
        if poly::is_irreducible(&f, p) && poly::has_full_order(&[0, 1], group, &f, p) {
            return f.iter().map(|&c| c as u32).collect();
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}
