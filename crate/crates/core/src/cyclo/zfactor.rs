//! Factorization of squarefree integer polynomials into irreducibles over Q:
//! Cantor-Zassenhaus modulo a small prime, Hensel lifting, subset recombination.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::qpoly::QPoly;

type Fp = Vec<u64>;

fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn fp_inv(a: u64, p: u64) -> u64 {
    fp_pow(a, p - 2, p)
}

fn fp_sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

fn fp_add(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

fn fp_mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn fp_scale(a: &Fp, c: u64, p: u64) -> Fp {
    trim(a.iter().map(|&x| x * c % p).collect())
}

fn fp_divrem(a: &Fp, d: &Fp, p: u64) -> (Fp, Fp) {
    let dd = d.len() - 1;
    if a.len() <= dd {
        return (Vec::new(), a.clone());
    }
    let inv = fp_inv(d[dd], p);
    let mut rem = a.clone();
    let mut quo = vec![0u64; rem.len() - dd];
    for i in (0..quo.len()).rev() {
        let c = rem[i + dd] * inv % p;
        if c == 0 {
            continue;
        }
        for (j, &dj) in d.iter().enumerate() {
            rem[i + j] = (rem[i + j] + p - c * dj % p) % p;
        }
        quo[i] = c;
    }
    rem.truncate(dd);
    (trim(quo), trim(rem))
}

fn fp_monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        None => Vec::new(),
        Some(&l) => fp_scale(a, fp_inv(l, p), p),
    }
}

fn fp_gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = fp_divrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    fp_monic(&a, p)
}

/// s, t with s*a + t*b = 1 (a, b coprime).
fn fp_ext_gcd(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (Fp, Fp) = (vec![1], Vec::new());
    let (mut t0, mut t1): (Fp, Fp) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let s2 = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let inv = fp_inv(*r0.last().expect("coprime inputs"), p);
    (fp_scale(&s0, inv, p), fp_scale(&t0, inv, p))
}

fn fp_mulmod(a: &Fp, b: &Fp, m: &Fp, p: u64) -> Fp {
    fp_divrem(&fp_mul(a, b, p), m, p).1
}

fn fp_powmod(base: &Fp, e: &BigUint, m: &Fp, p: u64) -> Fp {
    let mut r: Fp = vec![1];
    let mut b = fp_divrem(base, m, p).1;
    for i in 0..e.bits() {
        if e.bit(i) {
            r = fp_mulmod(&r, &b, m, p);
        }
        b = fp_mulmod(&b, &b, m, p);
    }
    fp_divrem(&r, m, p).1
}

fn fp_derivative(a: &Fp, p: u64) -> Fp {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (i as u64 % p) * c % p)
            .collect(),
    )
}

fn reduce(f: &[BigInt], p: u64) -> Fp {
    let pb = BigInt::from(p);
    trim(
        f.iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect(),
    )
}

/// Distinct-degree factorization of a monic squarefree polynomial: (product, degree) pairs.
fn ddf(f: &Fp, p: u64) -> Vec<(Fp, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let mut i = 1;
    while f.len() - 1 >= 2 * i {
        h = fp_powmod(&h, &BigUint::from(p), &f, p);
        let g = fp_gcd(&fp_sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            f = fp_divrem(&f, &g, p).0;
            h = fp_divrem(&h, &f, p).1;
            out.push((g, i));
        }
        i += 1;
    }
    if f.len() > 1 {
        let d = f.len() - 1;
        out.push((f, d));
    }
    out
}

/// Equal-degree splitting of a product of irreducibles of degree `d`.
fn edf(f: &Fp, d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<Fp> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.clone()];
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: Fp = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let b = fp_sub(&fp_powmod(&a, &e, f, p), &vec![1], p);
        let g = fp_gcd(&b, f, p);
        if g.len() > 1 && g.len() < f.len() {
            let h = fp_divrem(f, &g, p).0;
            let mut out = edf(&g, d, p, rng);
            out.extend(edf(&fp_monic(&h, p), d, p, rng));
            return out;
        }
    }
}

fn small_primes(limit: u64) -> Vec<u64> {
    let mut sieve = vec![true; limit as usize + 1];
    let mut out = Vec::new();
    for i in 2..=limit as usize {
        if sieve[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= limit as usize {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn zmod(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    a.iter().map(|c| c.mod_floor(m)).collect()
}

fn to_z(a: &Fp) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lift g = a0 * b0 (mod p), a0 monic, to a factorization modulo p^k.
fn hensel_two(g: &[BigInt], a0: &Fp, b0: &Fp, p: u64, k: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let (s, t) = fp_ext_gcd(a0, b0, p);
    let mut a = to_z(a0);
    let mut b = to_z(b0);
    let pb = BigInt::from(p);
    let mut m = pb.clone();
    for _ in 1..k {
        let ab = zmul(&a, &b);
        let n = g.len().max(ab.len());
        let diff: Vec<BigInt> = (0..n)
            .map(|i| g.get(i).cloned().unwrap_or_default() - ab.get(i).cloned().unwrap_or_default())
            .collect();
        let e: Vec<BigInt> = diff.iter().map(|c| c / &m).collect();
        let e = reduce(&e, p);
        let te = fp_mul(&t, &e, p);
        let (q, alpha) = fp_divrem(&te, a0, p);
        let beta = fp_add(&fp_mul(&s, &e, p), &fp_mul(&q, b0, p), p);
        for (i, c) in alpha.iter().enumerate() {
            a[i] += &m * BigInt::from(*c);
        }
        if b.len() < beta.len() {
            b.resize(beta.len(), BigInt::zero());
        }
        for (i, c) in beta.iter().enumerate() {
            b[i] += &m * BigInt::from(*c);
        }
        m *= &pb;
        a = zmod(&a, &m);
        b = zmod(&b, &m);
    }
    (a, b)
}

fn modinv(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    e.x.mod_floor(m)
}

fn hensel_multi(g: &[BigInt], factors: &[Fp], p: u64, k: u32, m: &BigInt) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        let lc = g.last().unwrap().mod_floor(m);
        let inv = modinv(&lc, m);
        let monic: Vec<BigInt> = g.iter().map(|c| (c * &inv).mod_floor(m)).collect();
        return vec![monic];
    }
    let lcp = g
        .last()
        .unwrap()
        .mod_floor(&BigInt::from(p))
        .to_u64()
        .unwrap();
    let mut rest: Fp = vec![lcp];
    for f in &factors[1..] {
        rest = fp_mul(&rest, f, p);
    }
    let (a, b) = hensel_two(g, &factors[0], &rest, p, k);
    let mut out = vec![a];
    out.extend(hensel_multi(&b, &factors[1..], p, k, m));
    out
}

fn symmetric(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m / 2;
    a.iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect()
}

fn primitive(mut a: Vec<BigInt>) -> Vec<BigInt> {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    let mut g = BigInt::zero();
    for c in &a {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return a;
    }
    if a.last().unwrap().is_negative() {
        g = -g;
    }
    a.iter().map(|c| c / &g).collect()
}

fn exact_quotient(g: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
    if d.len() > g.len() {
        return None;
    }
    if !d[0].is_zero() && !g[0].is_zero() && !(&g[0] % &d[0]).is_zero() {
        return None;
    }
    let (q, r) = QPoly::from_integers(g).divrem(&QPoly::from_integers(d));
    if !r.is_zero() || q.0.iter().any(|c| !c.denom().is_one()) {
        return None;
    }
    Some(q.0.iter().map(|c| c.numer().clone()).collect())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Irreducible factors over Z of a squarefree primitive polynomial with positive leading
/// coefficient (ascending integer coefficients). Factors are primitive with positive leading
/// coefficient, in no particular order.
pub fn factor_squarefree(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let f = primitive(f.to_vec());
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f];
    }
    let lc = f.last().unwrap().clone();
    let mut best: Option<(u64, Vec<(Fp, usize)>, usize)> = None;
    let mut tried = 0;
    for p in small_primes(20000).into_iter().skip(1) {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = reduce(&f, p);
        if fp.len() != f.len() {
            continue;
        }
        let g = fp_gcd(&fp, &fp_derivative(&fp, p), p);
        if g.len() != 1 {
            continue;
        }
        let parts = ddf(&fp_monic(&fp, p), p);
        let count: usize = parts.iter().map(|(g, d)| (g.len() - 1) / d).sum();
        if best.as_ref().map_or(true, |b| count < b.2) {
            best = Some((p, parts, count));
        }
        tried += 1;
        if tried >= 6 || best.as_ref().unwrap().2 == 1 {
            break;
        }
    }
    let (p, parts, count) = best.expect("no suitable prime");
    if count == 1 {
        return vec![f];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ p);
    let mut modular: Vec<Fp> = Vec::new();
    for (g, d) in &parts {
        modular.extend(edf(g, *d, p, &mut rng));
    }
    // coefficient bound for any factor, times the leading coefficient
    let maxc = f.iter().map(|c| c.abs()).max().unwrap();
    let bound = BigInt::from(n as u64 + 1) * (BigInt::one() << n) * maxc * lc.abs() * 2;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut m = pb.clone();
    while m <= bound {
        m *= &pb;
        k += 1;
    }
    let mut lifted = hensel_multi(&f, &modular, p, k, &m);
    let mut g = f.clone();
    let mut result = Vec::new();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut found = None;
        for subset in combinations(lifted.len(), s) {
            let glc = g.last().unwrap().clone();
            let mut cand = vec![glc];
            for &i in &subset {
                cand = zmod(&zmul(&cand, &lifted[i]), &m);
            }
            let cand = primitive(symmetric(&cand, &m));
            if let Some(q) = exact_quotient(&g, &cand) {
                found = Some((subset, cand, q));
                break;
            }
        }
        match found {
            Some((subset, cand, q)) => {
                result.push(cand);
                g = primitive(q);
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, v)| v)
                    .collect();
            }
            None => s += 1,
        }
    }
    if g.len() > 1 {
        result.push(g);
    }
    result
}

/// Full factorization over Q of a nonzero polynomial: (monic irreducible, multiplicity).
pub fn factor_rational(f: &QPoly) -> Vec<(QPoly, usize)> {
    let mut out = Vec::new();
    for (part, mult) in f.squarefree_decomposition() {
        for fac in factor_squarefree(&part.primitive_integer()) {
            out.push((QPoly::from_integers(&fac).monic(), mult));
        }
    }
    out
}
