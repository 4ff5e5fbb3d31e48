//! Deterministic factorisation of univariate polynomials over Q:
//! Yun's squarefree split, Berlekamp modulo a small prime, quadratic
//! Hensel lifting and subset recombination. Degrees are capped at 32,
//! which keeps the recombination stage trivially cheap.

use super::unipoly::UniPoly;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub const DEGREE_CAP: usize = 32;

/// Factor `p` as content * product of monic irreducible powers.
/// Factors come back sorted by degree then coefficient sequence.
pub fn factor_univariate(p: &UniPoly) -> Result<(num_rational::BigRational, Vec<(UniPoly, u32)>)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let deg = p.degree().unwrap();
    if deg > DEGREE_CAP {
        return Err(Error::DegreeCap(deg));
    }
    let content = p.lead();
    if deg == 0 {
        return Ok((content, vec![]));
    }
    let monic = p.monic();
    let mut factors: Vec<(UniPoly, u32)> = Vec::new();
    for (part, mult) in yun_squarefree(&monic) {
        for irr in factor_squarefree(&part) {
            factors.push((irr, mult));
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok((content, factors))
}

/// Yun's algorithm; input monic, characteristic zero.
/// Returns the squarefree parts with their multiplicities.
fn yun_squarefree(f: &UniPoly) -> Vec<(UniPoly, u32)> {
    let df = f.derivative();
    let g = f.gcd(&df);
    if g.is_one() {
        return vec![(f.clone(), 1)];
    }
    let mut out = Vec::new();
    let mut c = f.div_exact(&g);
    let mut d = df.div_exact(&g).sub(&c.derivative());
    let mut i = 1u32;
    while !c.is_one() {
        let a = c.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.monic(), i));
        }
        c = c.div_exact(&a);
        d = d.div_exact(&a).sub(&c.derivative());
        i += 1;
    }
    out
}

/// Factor a monic squarefree rational polynomial into monic irreducibles.
fn factor_squarefree(f: &UniPoly) -> Vec<UniPoly> {
    let deg = f.degree().unwrap();
    if deg <= 1 {
        return vec![f.clone()];
    }
    // Reduce to the monic integer case: with F = l*f primitive over Z of
    // lead c, G(y) = c^(d-1) F(y/c) is monic over Z and G(c x) = c^(d-1) F(x).
    let (_, fi) = f.primitive_int();
    let c = fi.last().unwrap().clone();
    let d = fi.len() - 1;
    let monic_int: Vec<BigInt> = fi
        .iter()
        .enumerate()
        .map(|(i, a)| if i == d { BigInt::one() } else { a * c.pow((d - 1 - i) as u32) })
        .collect();
    let parts = zassenhaus_monic(&monic_int);
    let mut out = Vec::new();
    for h in parts {
        // Map back through y = c*x and renormalise to a monic factor of f.
        let k = h.len() - 1;
        let mapped: Vec<BigInt> = h.iter().enumerate().map(|(i, a)| a * c.pow(i as u32)).collect();
        let poly = UniPoly::from_int_coeffs(&mapped);
        out.push(poly.monic());
        debug_assert_eq!(poly.degree(), Some(k));
    }
    debug_assert_eq!(
        out.iter().fold(UniPoly::one(), |acc, g| acc.mul(g)),
        *f
    );
    out
}

// ---- arithmetic modulo a word-sized prime ------------------------------

type FpPoly = Vec<u64>; // coeffs[i] of x^i, no trailing zeros

fn fp_trim(mut v: FpPoly) -> FpPoly {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn fp_reduce_bigint(c: &BigInt, p: u64) -> u64 {
    let m = c.mod_floor(&BigInt::from(p));
    let (_, digits) = m.to_u64_digits();
    *digits.first().unwrap_or(&0)
}

fn fp_from_int(f: &[BigInt], p: u64) -> FpPoly {
    fp_trim(f.iter().map(|c| fp_reduce_bigint(c, p)).collect())
}

fn fp_mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn fp_inv(a: u64, p: u64) -> u64 {
    // Fermat; p prime, a != 0.
    let mut e = p - 2;
    let mut base = a % p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_mulmod(acc, base, p);
        }
        base = fp_mulmod(base, base, p);
        e >>= 1;
    }
    acc
}

fn fp_mul(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + fp_mulmod(x, y, p)) % p;
        }
    }
    fp_trim(out)
}

fn fp_sub(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    fp_trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

fn fp_divrem(a: &FpPoly, b: &FpPoly, p: u64) -> (FpPoly, FpPoly) {
    assert!(!b.is_empty());
    let linv = fp_inv(*b.last().unwrap(), p);
    let mut rem = a.clone();
    let db = b.len() - 1;
    let mut quo = vec![0u64; a.len().saturating_sub(db)];
    while rem.len() > db {
        let k = rem.len() - 1;
        let c = fp_mulmod(rem[k], linv, p);
        if c != 0 {
            quo[k - db] = c;
            for (i, &y) in b.iter().enumerate() {
                let idx = k - db + i;
                rem[idx] = (rem[idx] + p - fp_mulmod(c, y, p)) % p;
            }
        }
        rem.pop();
        rem = fp_trim(rem);
        if rem.len() <= db {
            break;
        }
    }
    (fp_trim(quo), fp_trim(rem))
}

fn fp_gcd(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let (_, r) = fp_divrem(&x, &y, p);
        x = y;
        y = r;
    }
    if x.is_empty() {
        return x;
    }
    let inv = fp_inv(*x.last().unwrap(), p);
    fp_trim(x.iter().map(|&c| fp_mulmod(c, inv, p)).collect())
}

fn fp_derivative(a: &FpPoly, p: u64) -> FpPoly {
    if a.len() <= 1 {
        return vec![];
    }
    fp_trim(
        a[1..]
            .iter()
            .enumerate()
            .map(|(i, &c)| fp_mulmod(c, (i as u64 + 1) % p, p))
            .collect(),
    )
}

fn fp_powmod_x(e: u64, f: &FpPoly, p: u64) -> FpPoly {
    // x^e mod f
    let mut acc: FpPoly = vec![1];
    let mut base: FpPoly = vec![0, 1];
    base = fp_divrem(&base, f, p).1;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_divrem(&fp_mul(&acc, &base, p), f, p).1;
        }
        base = fp_divrem(&fp_mul(&base, &base, p), f, p).1;
        e >>= 1;
    }
    acc
}

/// Deterministic Berlekamp over F_p for monic squarefree f.
fn berlekamp(f: &FpPoly, p: u64) -> Vec<FpPoly> {
    let d = f.len() - 1;
    if d <= 1 {
        return vec![f.clone()];
    }
    // Frobenius matrix: column i holds x^(p*i) mod f.
    let mut cols: Vec<Vec<u64>> = Vec::with_capacity(d);
    let xp = fp_powmod_x(p, f, p);
    let mut cur: FpPoly = vec![1];
    for _ in 0..d {
        let mut col = vec![0u64; d];
        for (i, &c) in cur.iter().enumerate() {
            col[i] = c;
        }
        cols.push(col);
        cur = fp_divrem(&fp_mul(&cur, &xp, p), f, p).1;
    }
    // Nullspace of (Q - I) by Gaussian elimination on rows = equations.
    let mut mat = vec![vec![0u64; d]; d];
    for (j, col) in cols.iter().enumerate() {
        for i in 0..d {
            mat[i][j] = col[i];
        }
        mat[j][j] = (mat[j][j] + p - 1) % p;
    }
    let basis = nullspace(&mat, p);
    let r = basis.len();
    let mut factors: Vec<FpPoly> = vec![f.clone()];
    for v in &basis {
        if factors.len() == r {
            break;
        }
        let vp = fp_trim(v.clone());
        if vp.len() <= 1 {
            continue; // the constants; they never split anything
        }
        let mut next: Vec<FpPoly> = Vec::new();
        for w in factors {
            if w.len() - 1 <= 1 {
                next.push(w);
                continue;
            }
            let mut rem_w = w.clone();
            for c in 0..p {
                if rem_w.len() - 1 <= 0 {
                    break;
                }
                let shifted = fp_sub(&vp, &vec![c], p);
                let g = fp_gcd(&rem_w, &shifted, p);
                if g.len() > 1 && g.len() < rem_w.len() {
                    next.push(g.clone());
                    rem_w = fp_divrem(&rem_w, &g, p).0;
                }
            }
            if rem_w.len() > 1 {
                next.push(rem_w);
            }
        }
        factors = next;
    }
    factors.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    factors
}

fn nullspace(mat: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = mat.len();
    let mut m: Vec<Vec<u64>> = mat.to_vec();
    let mut pivot_col_of_row = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let mut piv = None;
        for r in row..n {
            if m[r][col] != 0 {
                piv = Some(r);
                break;
            }
        }
        let Some(piv) = piv else { continue };
        m.swap(row, piv);
        let inv = fp_inv(m[row][col], p);
        for j in 0..n {
            m[row][j] = fp_mulmod(m[row][j], inv, p);
        }
        for r in 0..n {
            if r != row && m[r][col] != 0 {
                let factor = m[r][col];
                for j in 0..n {
                    m[r][j] = (m[r][j] + p - fp_mulmod(factor, m[row][j], p)) % p;
                }
            }
        }
        pivot_col_of_row.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    let pivots: std::collections::HashSet<usize> = pivot_col_of_row.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..n {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (r, &pc) in pivot_col_of_row.iter().enumerate() {
            v[pc] = (p - m[r][free]) % p;
        }
        basis.push(v);
    }
    basis
}

// ---- Hensel lifting over Z/p^k ------------------------------------------

type ZPoly = Vec<BigInt>;

fn z_trim(mut v: ZPoly) -> ZPoly {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

fn z_mod(f: &[BigInt], m: &BigInt) -> ZPoly {
    z_trim(f.iter().map(|c| c.mod_floor(m)).collect())
}

fn z_mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
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
    z_mod(&out, m)
}

fn z_sub_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    z_trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_else(BigInt::zero);
                let y = b.get(i).cloned().unwrap_or_else(BigInt::zero);
                (x - y).mod_floor(m)
            })
            .collect(),
    )
}

fn z_add_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    z_trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_else(BigInt::zero);
                let y = b.get(i).cloned().unwrap_or_else(BigInt::zero);
                (x + y).mod_floor(m)
            })
            .collect(),
    )
}

/// divrem by a monic divisor over Z/m.
fn z_divrem_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    assert!(b.last().map_or(false, |c| c.is_one()), "divisor must be monic");
    let db = b.len() - 1;
    let mut rem: ZPoly = a.to_vec();
    let mut quo = vec![BigInt::zero(); a.len().saturating_sub(db)];
    while rem.len() > db {
        let k = rem.len() - 1;
        let c = rem[k].clone();
        if !c.is_zero() {
            quo[k - db] = c.clone();
            for (i, y) in b.iter().enumerate() {
                let idx = k - db + i;
                rem[idx] = (&rem[idx] - &c * y).mod_floor(m);
            }
        }
        rem.pop();
        rem = z_trim(rem);
        if rem.len() <= db {
            break;
        }
    }
    (z_trim(z_mod(&quo, m)), z_trim(rem))
}

/// One quadratic Hensel step: from f = g*h, s*g + t*h = 1 (mod m) to the
/// same congruences mod m^2, with g, h monic.
fn hensel_step(
    m: &BigInt,
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = z_sub_mod(&z_mod(f, &m2), &z_mul_mod(g, h, &m2), &m2);
    let (q, r) = z_divrem_mod(&z_mul_mod(s, &e, &m2), h, &m2);
    let g1 = z_add_mod(&z_add_mod(g, &z_mul_mod(t, &e, &m2), &m2), &z_mul_mod(&q, g, &m2), &m2);
    let h1 = z_add_mod(h, &r, &m2);
    let b = z_sub_mod(
        &z_add_mod(&z_mul_mod(s, &g1, &m2), &z_mul_mod(t, &h1, &m2), &m2),
        &[BigInt::one()],
        &m2,
    );
    let (c, d) = z_divrem_mod(&z_mul_mod(s, &b, &m2), &h1, &m2);
    let s1 = z_sub_mod(s, &d, &m2);
    let t1 = z_sub_mod(&z_sub_mod(t, &z_mul_mod(t, &b, &m2), &m2), &z_mul_mod(&c, &g1, &m2), &m2);
    (g1, h1, s1, t1)
}

/// Lift f = prod(parts) from mod p to mod p^(2^j) >= bound, recursively
/// splitting the factor list in two.
fn hensel_tree(f: &ZPoly, parts: &[FpPoly], p: u64, bound: &BigInt) -> Vec<ZPoly> {
    if parts.len() == 1 {
        return vec![f.clone()];
    }
    let (left, right) = parts.split_at(parts.len() / 2);
    let pb = BigInt::from(p);
    let g0: FpPoly = left.iter().fold(vec![1], |acc, q| fp_mul(&acc, q, p));
    let h0: FpPoly = right.iter().fold(vec![1], |acc, q| fp_mul(&acc, q, p));
    // Bezout over F_p via the rational extended Euclid on lifted coeffs is
    // wasteful; do it directly in F_p.
    let (s0, t0) = fp_bezout(&g0, &h0, p);
    let mut m = pb.clone();
    let mut g: ZPoly = g0.iter().map(|&c| BigInt::from(c)).collect();
    let mut h: ZPoly = h0.iter().map(|&c| BigInt::from(c)).collect();
    let mut s: ZPoly = s0.iter().map(|&c| BigInt::from(c)).collect();
    let mut t: ZPoly = t0.iter().map(|&c| BigInt::from(c)).collect();
    while &m < bound {
        let (g1, h1, s1, t1) = hensel_step(&m, f, &g, &h, &s, &t);
        g = g1;
        h = h1;
        s = s1;
        t = t1;
        m = &m * &m;
    }
    let mut out = hensel_tree(&g, left, p, bound);
    out.extend(hensel_tree(&h, right, p, bound));
    out
}

fn fp_bezout(g: &FpPoly, h: &FpPoly, p: u64) -> (FpPoly, FpPoly) {
    // s*g + t*h = 1 in F_p[x]; g, h coprime.
    let (mut r0, mut r1) = (g.clone(), h.clone());
    let (mut s0, mut s1): (FpPoly, FpPoly) = (vec![1], vec![]);
    let (mut t0, mut t1): (FpPoly, FpPoly) = (vec![], vec![1]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        r0 = r1;
        r1 = r;
        let s2 = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        s0 = s1;
        s1 = s2;
        let t2 = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        t0 = t1;
        t1 = t2;
    }
    assert_eq!(r0.len(), 1, "factors not coprime mod p");
    let inv = fp_inv(r0[0], p);
    let scale = |v: &FpPoly| fp_trim(v.iter().map(|&c| fp_mulmod(c, inv, p)).collect());
    (scale(&s0), scale(&t0))
}

/// Zassenhaus for a monic squarefree integer polynomial. Returns monic
/// integer irreducible factors in discovery order.
fn zassenhaus_monic(f: &[BigInt]) -> Vec<ZPoly> {
    let d = f.len() - 1;
    if d == 1 {
        return vec![f.to_vec()];
    }
    let p = pick_prime(f);
    let fp = fp_from_int(f, p);
    let modular = berlekamp(&fp, p);
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }
    // Landau-Mignotte: coefficients of any monic factor are bounded by
    // 2^d * (norm2(f) + 1).
    let norm_sq: BigInt = f.iter().map(|c| c * c).sum();
    let bound = (BigInt::one() << d) * (norm_sq.sqrt() + 1);
    let lift_to = &bound * 2 + 1;
    let lifted = hensel_tree(&f.to_vec(), &modular, p, &lift_to);
    // Actual working modulus: p^(2^j) >= lift_to from the tree.
    let mut modulus = BigInt::from(p);
    while modulus < lift_to {
        modulus = &modulus * &modulus;
    }
    recombine(f.to_vec(), lifted, &modulus)
}

fn symmetric(f: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    z_trim(
        f.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn z_divides(f: &[BigInt], g: &[BigInt]) -> Option<ZPoly> {
    // exact division of integer polynomials, g monic
    let mut rem: ZPoly = f.to_vec();
    let dg = g.len() - 1;
    if f.len() < g.len() {
        return None;
    }
    let mut quo = vec![BigInt::zero(); f.len() - dg];
    while rem.len() > dg {
        let k = rem.len() - 1;
        let c = rem[k].clone();
        quo[k - dg] = c.clone();
        for (i, y) in g.iter().enumerate() {
            let idx = k - dg + i;
            rem[idx] = &rem[idx] - &c * y;
        }
        rem.pop();
        rem = z_trim(rem);
        if rem.len() <= dg && rem.iter().all(|c| c.is_zero()) {
            break;
        }
    }
    if z_trim(rem).is_empty() {
        Some(z_trim(quo))
    } else {
        None
    }
}

fn recombine(mut f: ZPoly, mut modular: Vec<ZPoly>, modulus: &BigInt) -> Vec<ZPoly> {
    let mut out = Vec::new();
    let mut s = 1usize;
    'outer: while 2 * s <= modular.len() {
        let idxs: Vec<usize> = (0..modular.len()).collect();
        for combo in combinations(&idxs, s) {
            let mut cand: ZPoly = vec![BigInt::one()];
            for &i in &combo {
                cand = z_mul_mod(&cand, &modular[i], modulus);
            }
            let cand = symmetric(&cand, modulus);
            if let Some(q) = z_divides(&f, &cand) {
                out.push(cand);
                f = q;
                let drop: std::collections::HashSet<usize> = combo.into_iter().collect();
                modular = modular
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !drop.contains(i))
                    .map(|(_, v)| v)
                    .collect();
                continue 'outer;
            }
        }
        s += 1;
    }
    if f.len() > 1 {
        out.push(f);
    }
    out
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let n = items.len();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // next combination in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn pick_prime(f: &[BigInt]) -> u64 {
    const PRIMES: [u64; 40] = [
        3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
        97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179,
    ];
    for &p in &PRIMES {
        let fp = fp_from_int(f, p);
        if fp.len() != f.len() {
            continue; // lead vanished (cannot happen for monic, but be safe)
        }
        let d = fp_derivative(&fp, p);
        if fp_gcd(&fp, &d, p).len() == 1 {
            return p;
        }
    }
    // A squarefree integer polynomial stays squarefree mod all but finitely
    // many primes, so with degree <= 32 this is unreachable in practice.
    panic!("no suitable prime below 180 for {:?}", f);
}
