//! Brute-force oracles shared by the integration tests. None of them call
//! the library's recursion, gcd or classification code.
#![allow(dead_code)]

use std::collections::HashMap;

use lrslab::{Elem, Field, Poly};

// ---- prime fields in plain integers; polys are low-to-high Vec<u64> ----

pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

pub fn order_mod(a: u64, p: u64) -> u64 {
    let mut x = a % p;
    let mut n = 1;
    while x != 1 {
        x = mulmod(x, a, p);
        n += 1;
    }
    n
}

pub fn poly_mul_int(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

pub fn eval_int(f: &[u64], a: u64, p: u64) -> u64 {
    f.iter().rev().fold(0, |acc, &c| (acc * a + c) % p)
}

/// f / (x - a); panics unless a is a root.
pub fn div_linear_int(f: &[u64], a: u64, p: u64) -> Vec<u64> {
    let n = f.len() - 1;
    let mut q = vec![0; n];
    let mut carry = 0;
    for i in (0..=n).rev() {
        let c = (f[i] + carry) % p;
        if i == 0 {
            assert_eq!(c, 0, "{a} is not a root");
        } else {
            q[i - 1] = c;
            carry = c * a % p;
        }
    }
    q
}

/// sum_i f_i w_{n+i} = 0 for every n, indices mod the window length.
pub fn annihilates_int(f: &[u64], w: &[u64], p: u64) -> bool {
    let m = w.len();
    (0..m).all(|n| f.iter().enumerate().fold(0, |acc, (i, &c)| (acc + c * w[(n + i) % m]) % p) == 0)
}

/// A squarefree annihilator is minimal when dropping any one of its roots
/// in F_p breaks annihilation; requires all roots in F_p.
pub fn is_minimal_split_annihilator(f: &[u64], w: &[u64], p: u64) -> bool {
    if !annihilates_int(f, w, p) {
        return false;
    }
    let roots: Vec<u64> = (0..p).filter(|&a| eval_int(f, a, p) == 0).collect();
    if roots.len() != f.len() - 1 {
        return false;
    }
    roots.iter().all(|&a| !annihilates_int(&div_linear_int(f, a, p), w, p))
}

/// s~ = s_0 x^{m-1} + ... + s_{m-1}, low-to-high.
pub fn s_tilde_int(w: &[u64]) -> Vec<u64> {
    w.iter().rev().copied().collect()
}

/// Phi_m | s~ in F_p[x], checked as s~(z) = 0 for every z of order m.
pub fn ans_int(w: &[u64], p: u64) -> bool {
    let m = w.len() as u64;
    let st = s_tilde_int(w);
    (1..p).filter(|&z| order_mod(z, p) == m).all(|z| eval_int(&st, z, p) == 0)
}

pub fn coeffs_int(f: &Poly) -> Vec<u64> {
    f.coeffs().iter().map(|c| c.code() as u64).collect()
}

// ---- generic fields through element operations only ----

pub fn annihilates(k: &Field, f: &[Elem], w: &[Elem]) -> bool {
    let m = w.len();
    (0..m).all(|n| {
        f.iter().enumerate().fold(Elem::ZERO, |acc, (i, &c)| k.add(acc, k.mul(c, w[(n + i) % m]))) == Elem::ZERO
    })
}

pub fn eval(k: &Field, f: &[Elem], a: Elem) -> Elem {
    f.iter().rev().fold(Elem::ZERO, |acc, &c| k.add(k.mul(acc, a), c))
}

/// The multiplicative closure of `gens`.
pub fn closure(k: &Field, gens: &[Elem]) -> Vec<Elem> {
    let mut set = vec![Elem::ONE];
    let mut i = 0;
    while i < set.len() {
        for &g in gens {
            let x = k.mul(set[i], g);
            if !set.contains(&x) {
                set.push(x);
            }
        }
        i += 1;
    }
    set.sort();
    set
}

pub fn is_cyclic_window(k: &Field, w: &[Elem]) -> bool {
    let r = k.div(w[1 % w.len()], w[0]).unwrap();
    (0..w.len()).all(|n| w[(n + 1) % w.len()] == k.mul(r, w[n]))
}

pub fn monic_polys(k: &Field, d: usize) -> Vec<Poly> {
    let q = k.size() as usize;
    let total = q.pow(d as u32);
    (0..total)
        .map(|mut code| {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..d {
                c.push(k.from_code((code % q) as u64).unwrap());
                code /= q;
            }
            c.push(Elem::ONE);
            Poly::from_elems(k, c)
        })
        .collect()
}

/// Irreducible factors of x^m - 1 with multiplicity, by trial division in
/// increasing degree.
pub fn factor_x_m_minus_1(k: &Field, m: usize) -> Vec<(Poly, u32)> {
    let mut rest = Poly::x_pow_minus_one(k, m);
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap() >= 2 * d {
        for g in monic_polys(k, d) {
            let mut mult = 0;
            loop {
                let (q, r) = rest.divmod(&g).unwrap();
                if !r.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                out.push((g, mult));
            }
        }
        d += 1;
    }
    if rest.degree().unwrap() > 0 {
        out.push((rest, 1));
    }
    out
}

/// All monic divisors of x^m - 1, by increasing degree.
pub fn divisors_x_m_minus_1(k: &Field, m: usize) -> Vec<Poly> {
    let mut divs = vec![Poly::one(k)];
    for (g, mult) in factor_x_m_minus_1(k, m) {
        let mut next = Vec::new();
        for d in &divs {
            let mut cur = d.clone();
            next.push(cur.clone());
            for _ in 0..mult {
                cur = cur.mul(&g).unwrap();
                next.push(cur.clone());
            }
        }
        divs = next;
    }
    divs.sort_by_key(|d| d.degree().unwrap());
    divs
}

/// Lowest-degree monic divisor of x^m - 1 annihilating the window; panics
/// if two of that degree do.
pub fn brute_minimal_recursion(k: &Field, divisors: &[Poly], w: &[Elem]) -> Poly {
    let mut best: Option<Poly> = None;
    for d in divisors {
        if let Some(b) = &best {
            if d.degree() > b.degree() {
                break;
            }
        }
        if annihilates(k, d.coeffs(), w) {
            assert!(best.is_none(), "two annihilators of least degree");
            best = Some(d.clone());
        }
    }
    best.expect("x^m - 1 annihilates")
}

pub struct DivisorCache(HashMap<(u64, usize), Vec<Poly>>);

impl DivisorCache {
    pub fn new() -> DivisorCache {
        DivisorCache(HashMap::new())
    }

    pub fn get(&mut self, k: &Field, m: usize) -> &[Poly] {
        self.0.entry((k.size(), m)).or_insert_with(|| divisors_x_m_minus_1(k, m))
    }
}

pub fn next_permutation<T: Ord>(xs: &mut [T]) -> bool {
    let n = xs.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}
