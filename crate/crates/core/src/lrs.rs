//! Linear recurring sequences: recursions, periodic windows, minimal
//! recursions and the spectral (root) form of a periodic sequence.
//!
//! A periodic sequence is stored as one minimal period `s_0..s_{m-1}`.
//! Its window polynomial puts `s_0` at the top: `s~(x) = s_0 x^{m-1} + ...
//! + s_{m-1}`, and the minimal recursion is `(x^m - 1) / gcd(x^m - 1, s~)`.

use num_bigint::BigInt;

use crate::arith;
use crate::error::{invalid, Error, Result};
use crate::field::{Elem, Embedding, Field};
use crate::poly::{roots_with_mult, Poly};

/// One minimal period of a bi-infinite periodic sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicSeq {
    field: Field,
    window: Vec<Elem>,
}

impl PeriodicSeq {
    /// Wraps `window`, which must be a minimal period.
    pub fn new(field: &Field, window: Vec<Elem>) -> Result<PeriodicSeq> {
        check_window(field, &window)?;
        let m = window.len();
        if minimal_period_of(&window) != m {
            return Err(invalid(format!("window of length {m} is not a minimal period")));
        }
        Ok(PeriodicSeq { field: field.clone(), window })
    }

    /// Treats `stream` as one (not necessarily minimal) period and keeps
    /// the shortest prefix that still generates it.
    pub fn from_stream(field: &Field, stream: &[Elem]) -> Result<PeriodicSeq> {
        check_window(field, stream)?;
        let d = minimal_period_of(stream);
        Ok(PeriodicSeq { field: field.clone(), window: stream[..d].to_vec() })
    }

    /// Impulse u^(m) = (0, ..., 0, 1), whose minimal recursion is x^m - 1.
    pub fn impulse(m: usize, field: &Field) -> Result<PeriodicSeq> {
        if m < 1 {
            return Err(invalid("impulse needs m >= 1"));
        }
        let mut window = vec![Elem::ZERO; m];
        window[m - 1] = Elem::ONE;
        Ok(PeriodicSeq { field: field.clone(), window })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn window(&self) -> &[Elem] {
        &self.window
    }

    pub fn period(&self) -> usize {
        self.window.len()
    }

    /// s_n for any integer n.
    pub fn get(&self, n: i64) -> Elem {
        self.window[n.rem_euclid(self.period() as i64) as usize]
    }

    /// (s_{n+d})_n.
    pub fn shift(&self, d: i64) -> PeriodicSeq {
        let m = self.period() as i64;
        let window = (0..m).map(|n| self.get(n + d)).collect();
        PeriodicSeq { field: self.field.clone(), window }
    }

    /// (c s_n)_n for nonzero c.
    pub fn scale(&self, c: Elem) -> Result<PeriodicSeq> {
        if c.is_zero() {
            return Err(Error::ZeroElement);
        }
        let window = self.window.iter().map(|&a| self.field.mul(c, a)).collect();
        Ok(PeriodicSeq { field: self.field.clone(), window })
    }

    pub fn is_zero(&self) -> bool {
        self.window.iter().all(|a| a.is_zero())
    }

    pub fn s_tilde(&self) -> Poly {
        s_tilde(self)
    }

    pub fn minimal_recursion(&self) -> Poly {
        minimal_recursion(self)
    }
}

fn check_window(field: &Field, window: &[Elem]) -> Result<()> {
    if window.is_empty() {
        return Err(invalid("empty window"));
    }
    if let Some(a) = window.iter().find(|&&a| !field.contains(a)) {
        return Err(invalid(format!("code {} outside field", a.code())));
    }
    Ok(())
}

/// Smallest d dividing len with window[i] = window[i mod d].
fn minimal_period_of(window: &[Elem]) -> usize {
    let m = window.len();
    arith::divisors(m as u64)
        .into_iter()
        .map(|d| d as usize)
        .find(|&d| (d..m).all(|i| window[i] == window[i - d]))
        .unwrap_or(m)
}

/// The window polynomial, s_0 at degree m-1 and s_{m-1} constant.
pub fn s_tilde(s: &PeriodicSeq) -> Poly {
    let coeffs = s.window.iter().rev().copied().collect();
    Poly::from_elems(&s.field, coeffs)
}

pub fn impulse(m: usize, field: &Field) -> Result<PeriodicSeq> {
    PeriodicSeq::impulse(m, field)
}

/// f_s = (x^m - 1) / gcd(x^m - 1, s~). The zero sequence gives 1.
pub fn minimal_recursion(s: &PeriodicSeq) -> Poly {
    let xm1 = Poly::x_pow_minus_one(&s.field, s.period());
    let g = xm1.gcd_unchecked(&s_tilde(s));
    xm1.divmod_unchecked(&g).expect("gcd of x^m - 1 is nonzero").0
}

/// True iff `f` annihilates `s`, checked term by term at every position.
pub fn annihilates(f: &Poly, s: &PeriodicSeq) -> bool {
    let k = s.field();
    (0..s.period() as i64).all(|n| {
        let mut acc = Elem::ZERO;
        for (i, &c) in f.coeffs().iter().enumerate() {
            acc = k.add(acc, k.mul(c, s.get(n + i as i64)));
        }
        acc.is_zero()
    })
}

/// A monic characteristic polynomial with nonzero constant term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recursion {
    f: Poly,
}

impl Recursion {
    pub fn new(f: Poly) -> Result<Recursion> {
        if f.is_zero() {
            return Err(invalid("zero polynomial is not a recursion"));
        }
        if !f.is_monic() {
            return Err(invalid("recursion polynomial must be monic"));
        }
        if f.deg() > 0 && f.coeff(0).is_zero() {
            return Err(invalid("recursion needs f(0) != 0"));
        }
        Ok(Recursion { f })
    }

    /// Divides out the leading coefficient first.
    pub fn normalized(f: &Poly) -> Result<Recursion> {
        Recursion::new(f.monic())
    }

    pub fn poly(&self) -> &Poly {
        &self.f
    }

    pub fn order(&self) -> usize {
        self.f.deg()
    }

    fn check_seed(&self, seed: &[Elem]) -> Result<()> {
        if seed.len() != self.order() {
            return Err(Error::SeedLength { expected: self.order(), got: seed.len() });
        }
        let k = self.f.field();
        if seed.iter().any(|&a| !k.contains(a)) {
            return Err(invalid("seed element outside field"));
        }
        Ok(())
    }

    /// The `count` terms s_k, ..., s_{k+count-1} following `seed` =
    /// (s_0, ..., s_{k-1}).
    pub fn iterate(&self, seed: &[Elem], count: usize) -> Result<Vec<Elem>> {
        self.check_seed(seed)?;
        let k = self.f.field();
        let deg = self.order();
        let c = self.f.coeffs();
        let mut buf = seed.to_vec();
        for n in 0..count {
            let mut acc = Elem::ZERO;
            for i in 0..deg {
                acc = k.sub(acc, k.mul(c[i], buf[n + i]));
            }
            buf.push(acc);
        }
        Ok(buf.split_off(deg))
    }

    /// The `count` terms s_{-1}, s_{-2}, ..., s_{-count} preceding `seed`.
    pub fn iterate_back(&self, seed: &[Elem], count: usize) -> Result<Vec<Elem>> {
        self.check_seed(seed)?;
        let k = self.f.field();
        let deg = self.order();
        if deg == 0 {
            return Ok(Vec::new());
        }
        let c = self.f.coeffs();
        let c0_inv = k.inv(c[0]).expect("constant term checked nonzero");
        // buf holds the known terms in reverse: buf[j] = s_{deg-1-j}
        let mut buf: Vec<Elem> = seed.iter().rev().copied().collect();
        for _ in 0..count {
            let top = buf.len();
            // s_n = -(s_{n+deg} + c_{deg-1} s_{n+deg-1} + ... + c_1 s_{n+1}) / c_0
            let mut acc = buf[top - deg];
            for i in 1..deg {
                acc = k.add(acc, k.mul(c[i], buf[top - i]));
            }
            buf.push(k.neg(k.mul(acc, c0_inv)));
        }
        Ok(buf.split_off(deg))
    }

    /// Minimal period of the sequence generated by `seed`. The state map is
    /// invertible, so the state returns to the seed after exactly one period.
    pub fn detect_period(&self, seed: &[Elem]) -> Result<u64> {
        self.check_seed(seed)?;
        let k = self.f.field();
        let deg = self.order();
        if deg == 0 || seed.iter().all(|a| a.is_zero()) {
            return Ok(1);
        }
        let c = self.f.coeffs();
        let mut state: std::collections::VecDeque<Elem> = seed.iter().copied().collect();
        let mut n = 0u64;
        loop {
            let mut acc = Elem::ZERO;
            for i in 0..deg {
                acc = k.sub(acc, k.mul(c[i], state[i]));
            }
            state.pop_front();
            state.push_back(acc);
            n += 1;
            if state.iter().eq(seed.iter()) {
                return Ok(n);
            }
        }
    }

    /// One minimal period of the sequence generated by `seed`.
    pub fn periodic(&self, seed: &[Elem]) -> Result<PeriodicSeq> {
        let per = self.detect_period(seed)? as usize;
        let mut window = seed.to_vec();
        if per > window.len() {
            window.extend(self.iterate(seed, per - window.len())?);
        }
        window.truncate(per);
        PeriodicSeq::new(self.f.field(), window)
    }
}

pub fn iterate(rec: &Recursion, seed: &[Elem], count: usize) -> Result<Vec<Elem>> {
    rec.iterate(seed, count)
}

pub fn detect_period(rec: &Recursion, seed: &[Elem]) -> Result<u64> {
    rec.detect_period(seed)
}

/// C(n, j) for all integers n, j: zero for j < 0, and for n < 0 the
/// reflection C(n, j) = (-1)^j C(j - n - 1, j).
pub fn binom_int(n: i64, j: i64) -> BigInt {
    if j < 0 {
        return BigInt::from(0);
    }
    if n >= 0 {
        if j > n {
            return BigInt::from(0);
        }
        let j = j.min(n - j);
        let mut acc = BigInt::from(1);
        for i in 0..j {
            acc = acc * (n - i) / (i + 1);
        }
        return acc;
    }
    let b = binom_int(j - n - 1, j);
    if j % 2 == 0 {
        b
    } else {
        -b
    }
}

/// C(n, j) reduced into [0, p).
pub fn binom_mod(n: i64, j: i64, p: u64) -> u64 {
    let r = binom_int(n, j) % BigInt::from(p);
    let r = if r < BigInt::from(0) { r + BigInt::from(p) } else { r };
    u64::try_from(r).expect("residue below p")
}

/// S(n, j) = sum_{i=0}^{m} (-1)^i C(m, i) C(n - i, j) mod p, summed term by
/// term. Equals [`s_of_nj_closed_form`] for n >= m, j >= 0.
pub fn s_of_nj_identity(m: i64, n: i64, j: i64, p: u64) -> Result<u64> {
    if m < 1 || n < m || j < 0 || !arith::is_prime(p) {
        return Err(invalid("S(n, j) needs m >= 1, n >= m, j >= 0 and p prime"));
    }
    let mut acc = BigInt::from(0);
    for i in 0..=m {
        let t = binom_int(m, i) * binom_int(n - i, j);
        if i % 2 == 0 {
            acc += t;
        } else {
            acc -= t;
        }
    }
    let p_big = BigInt::from(p);
    let r = ((acc % &p_big) + &p_big) % &p_big;
    Ok(u64::try_from(r).expect("residue below p"))
}

/// 0 for j < m, C(n - m, j - m) mod p otherwise.
pub fn s_of_nj_closed_form(m: i64, n: i64, j: i64, p: u64) -> u64 {
    if j < m {
        0
    } else {
        binom_mod(n - m, j - m, p)
    }
}

/// Minimal period of n -> C(n, j) mod p, found by scanning candidate
/// periods against two full cycles of values.
pub fn binom_seq_period(j: u64, p: u64) -> Result<u64> {
    if j < 1 || !arith::is_prime(p) {
        return Err(invalid("binomial period needs j >= 1 and p prime"));
    }
    // any power of p above j is a period (Lucas), so it bounds the scan
    let mut bound = p;
    while bound <= j {
        bound *= p;
    }
    let vals: Vec<u64> = (0..2 * bound as i64).map(|n| binom_mod(n, j as i64, p)).collect();
    let per =
        (1..=bound).find(|&d| (0..bound as usize).all(|n| vals[n] == vals[n + d as usize])).expect("bound is a period");
    Ok(per)
}

/// A term c * alpha^n of the spectral form. `coeffs` holds the binomial
/// basis coefficients c_{i,0}, c_{i,1}, ...; periodic sequences with
/// squarefree minimal recursion have exactly one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralTerm {
    pub root: Elem,
    pub coeffs: Vec<Elem>,
}

/// s_n = sum_i c_i alpha_i^n over a splitting field of f_s.
#[derive(Clone, Debug)]
pub struct SpectralForm {
    pub embedding: Embedding,
    pub terms: Vec<SpectralTerm>,
}

impl SpectralForm {
    pub fn field(&self) -> &Field {
        self.embedding.ext()
    }

    /// The n-th term, in the splitting field.
    pub fn eval(&self, n: i64) -> Elem {
        let k = self.field();
        self.terms.iter().fold(Elem::ZERO, |acc, t| {
            let pw = k.pow_signed(t.root, n).expect("roots are nonzero");
            k.add(acc, k.mul(t.coeffs[0], pw))
        })
    }
}

fn require_coprime(s: &PeriodicSeq) -> Result<()> {
    let p = s.field().characteristic();
    if (s.period() as u64).is_multiple_of(p) {
        return Err(Error::NotCoprime { m: s.period() as u64, p });
    }
    Ok(())
}

/// Solves a square system over `k` by Gaussian elimination.
fn solve(k: &Field, mut a: Vec<Vec<Elem>>, mut b: Vec<Elem>) -> Option<Vec<Elem>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = k.inv(a[col][col]).ok()?;
        for x in a[col].iter_mut() {
            *x = k.mul(*x, inv);
        }
        b[col] = k.mul(b[col], inv);
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col];
            let pivot = a[col].clone();
            for (x, &y) in a[r].iter_mut().zip(&pivot) {
                *x = k.sub(*x, k.mul(factor, y));
            }
            b[r] = k.sub(b[r], k.mul(factor, b[col]));
        }
    }
    Some(b)
}

/// Roots of f_s with coefficients solving the Vandermonde system
/// s_n = sum c_i alpha_i^n, n < deg f_s. The reconstruction is checked at
/// every window position before returning.
pub fn spectral_decompose(s: &PeriodicSeq, max_ext_degree: u32) -> Result<SpectralForm> {
    require_coprime(s)?;
    let f = minimal_recursion(s);
    let spec = roots_with_mult(&f, max_ext_degree)?;
    if !spec.splits() {
        return Err(Error::NoSplit(max_ext_degree));
    }
    let emb = spec.embedding().clone();
    let k = emb.ext().clone();
    let roots = spec.roots();
    let t = roots.len();
    let a: Vec<Vec<Elem>> = (0..t).map(|n| roots.iter().map(|&r| k.pow(r, n as u64)).collect()).collect();
    let b: Vec<Elem> = (0..t).map(|n| emb.embed(s.window[n])).collect();
    let c = solve(&k, a, b).ok_or_else(|| invalid("singular Vandermonde system"))?;
    let form = SpectralForm {
        embedding: emb,
        terms: roots.into_iter().zip(c).map(|(root, c)| SpectralTerm { root, coeffs: vec![c] }).collect(),
    };
    for n in 0..s.period() {
        if form.eval(n as i64) != form.embedding.embed(s.window[n]) {
            return Err(invalid("spectral form does not reproduce the window"));
        }
    }
    Ok(form)
}

/// lcm of the multiplicative orders of the roots of f_s; equals the period.
pub fn lcm_order_check(s: &PeriodicSeq) -> Result<u64> {
    require_coprime(s)?;
    let f = minimal_recursion(s);
    if f.deg() == 0 {
        return Ok(1);
    }
    let spec = roots_with_mult(&f, crate::poly::DEFAULT_MAX_EXT_DEGREE.max(12))?;
    if !spec.splits() {
        return Err(Error::NoSplit(12));
    }
    let k = spec.field();
    spec.roots().into_iter().try_fold(1u64, |acc, r| Ok(arith::lcm(acc, k.mul_order(r)?)))
}
