//! Dense polynomials over F_p, constant term first. Only what the modulus
//! search needs: reduction, modular powering and gcd.

pub(crate) type Poly = Vec<u64>;

fn trim(a: &mut Poly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Remainder of `a` modulo a nonzero `f`.
pub(crate) fn rem(a: &[u64], f: &[u64], p: u64) -> Poly {
    let mut r: Poly = a.to_vec();
    trim(&mut r);
    let df = f.len() - 1;
    let lead_inv = inv_mod(f[df], p);
    while r.len() > df {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        if c != 0 {
            let shift = top - df;
            for (j, &fj) in f.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p - c * fj % p) % p;
            }
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    rem(&prod, f, p)
}

pub(crate) fn pow_poly_mod(base: &[u64], mut exp: u64, f: &[u64], p: u64) -> Poly {
    let mut acc: Poly = rem(&[1], f, p);
    let mut b = rem(base, f, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(&acc, &b, f, p);
        }
        b = mul_mod(&b, &b, f, p);
        exp >>= 1;
    }
    acc
}

fn sub(a: &[u64], b: &[u64], p: u64) -> Poly {
    let n = a.len().max(b.len());
    let mut out: Poly = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let mut a: Poly = a.to_vec();
    let mut b: Poly = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// x^(p^k) mod f by k successive p-th powers.
fn frobenius_x(k: usize, f: &[u64], p: u64) -> Poly {
    let mut acc = rem(&[0, 1], f, p);
    for _ in 0..k {
        acc = pow_poly_mod(&acc, p, f, p);
    }
    acc
}

/// Rabin's irreducibility test for a monic `f` of degree m >= 1.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    let x = rem(&[0, 1], f, p);
    if sub(&frobenius_x(m, f, p), &x, p) != Vec::<u64>::new() {
        return false;
    }
    for r in crate::arith::prime_factors(m as u64) {
        let h = sub(&frobenius_x(m / r as usize, f, p), &x, p);
        let g = gcd(f, &h, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Whether the class of `g` has multiplicative order exactly `group` in F_p[x]/(f).
pub(crate) fn has_full_order(g: &[u64], group: u64, f: &[u64], p: u64) -> bool {
    let one: Poly = vec![1];
    if pow_poly_mod(g, group, f, p) != one {
        return false;
    }
    crate::arith::prime_factors(group).into_iter().all(|r| pow_poly_mod(g, group / r, f, p) != one)
}
