//! Finite fields F_p and F_{p^e} in a polynomial basis.
//!
//! An element of F_{p^e} is a coefficient vector (c_0, ..., c_{e-1}) with
//! respect to the basis 1, w, ..., w^{e-1}, where w is a root of the field
//! modulus. Elements are stored as the integer code c_0 + c_1 p + ... +
//! c_{e-1} p^{e-1}; the code is a bijection with the coefficient vector, so
//! equality, hashing and ordering of [`Elem`] are those of the code. The
//! prime subfield occupies the codes 0..p.

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith;
use crate::error::{invalid, Error, Result};

/// Fields with at most this many elements get log/antilog tables.
const TABLE_LIMIT: u64 = 1 << 16;

/// Exclusive upper bound on field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 31;

const MAX_DEGREE: usize = 31;

/// A field element, meaningful only together with its [`Field`].
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

pub struct FieldCtx {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus, low-to-high, length e + 1. Empty for prime fields.
    modulus: Vec<u32>,
    pow_p: Vec<u32>,
    group_factors: Vec<(u64, u32)>,
    tables: Option<Tables>,
}

/// Shared handle to an immutable field context.
#[derive(Clone)]
pub struct Field(Arc<FieldCtx>);

impl Deref for Field {
    type Target = FieldCtx;

    fn deref(&self) -> &FieldCtx {
        &self.0
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.p == other.p && self.e == other.e && self.modulus == other.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", crate::format::field_spec(self))
    }
}

fn field_cache() -> &'static Mutex<HashMap<(u32, u32), Field>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Field>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Builds F_{p^e}.
///
/// Without an explicit modulus, the lexicographically smallest monic
/// irreducible polynomial of degree `e` is used, comparing coefficient
/// vectors (c_0, ..., c_{e-1}) starting from c_0. Such fields are cached, so
/// repeated calls return the same context.
pub fn make_field(p: u64, e: u32, modulus: Option<&[u64]>) -> Result<Field> {
    if !arith::is_prime(p) || p >= MAX_FIELD_SIZE {
        return Err(Error::NotPrime(p));
    }
    if e == 0 {
        return Err(Error::ZeroDegree);
    }
    let q = (p as u128).checked_pow(e).unwrap_or(u128::MAX);
    if q >= MAX_FIELD_SIZE as u128 {
        return Err(Error::FieldTooLarge { p, e });
    }
    let p32 = p as u32;
    match modulus {
        Some(coeffs) => {
            if e == 1 {
                return Err(Error::BadModulus("prime fields take no modulus".into()));
            }
            if coeffs.len() != e as usize + 1 {
                return Err(Error::BadModulus(format!("expected {} coefficients, got {}", e + 1, coeffs.len())));
            }
            if coeffs.iter().any(|&c| c >= p) {
                return Err(Error::BadModulus("coefficients must lie in [0, p)".into()));
            }
            if coeffs[e as usize] != 1 {
                return Err(Error::BadModulus("modulus must be monic".into()));
            }
            let m: Vec<u32> = coeffs.iter().map(|&c| c as u32).collect();
            if !fp_poly::is_irreducible(&m, p32) {
                return Err(Error::BadModulus("modulus is reducible".into()));
            }
            Ok(Field(Arc::new(FieldCtx::build(p32, e, m))))
        }
        None => {
            let key = (p32, e);
            if let Some(f) = field_cache().lock().unwrap().get(&key) {
                return Ok(f.clone());
            }
            let m = if e == 1 { Vec::new() } else { fp_poly::smallest_irreducible(p32, e as usize) };
            let field = Field(Arc::new(FieldCtx::build(p32, e, m)));
            let mut cache = field_cache().lock().unwrap();
            Ok(cache.entry(key).or_insert(field).clone())
        }
    }
}

impl FieldCtx {
    fn build(p: u32, e: u32, modulus: Vec<u32>) -> FieldCtx {
        let mut pow_p = vec![1u32; e as usize + 1];
        for i in 1..=e as usize {
            pow_p[i] = pow_p[i - 1] * p;
        }
        let q = pow_p[e as usize];
        let mut ctx = FieldCtx { p, e, q, modulus, pow_p, group_factors: arith::factorize(q as u64 - 1), tables: None };
        if e > 1 && (q as u64) <= TABLE_LIMIT {
            ctx.tables = Some(ctx.build_tables());
        }
        ctx
    }

    fn build_tables(&self) -> Tables {
        let n = self.q - 1;
        let g = (1..self.q)
            .map(Elem)
            .find(|&a| self.order_slow(a) == n as u64)
            .expect("finite field has a primitive element");
        let mut exp = vec![0u32; 2 * n as usize];
        let mut log = vec![0u32; self.q as usize];
        let mut x = Elem::ONE;
        for i in 0..n {
            exp[i as usize] = x.0;
            exp[(i + n) as usize] = x.0;
            log[x.0 as usize] = i;
            x = self.mul_slow(x, g);
        }
        Tables { exp, log }
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn size(&self) -> u64 {
        self.q as u64
    }

    /// Monic modulus coefficients (low-to-high), present iff e > 1.
    pub fn modulus(&self) -> Option<&[u32]> {
        if self.e > 1 {
            Some(&self.modulus)
        } else {
            None
        }
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p as i64) as u32)
    }

    /// The basis element w, code p; prime fields have none.
    pub fn generator(&self) -> Option<Elem> {
        (self.e > 1).then_some(Elem(self.p))
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Elem> {
        if coeffs.len() > self.e as usize {
            return Err(invalid(format!("element has {} coefficients, field degree is {}", coeffs.len(), self.e)));
        }
        let mut code = 0u32;
        for (i, &c) in coeffs.iter().enumerate() {
            let c = (c % self.p as u64) as u32;
            code += c * self.pow_p[i];
        }
        Ok(Elem(code))
    }

    pub fn from_code(&self, code: u64) -> Result<Elem> {
        if code >= self.q as u64 {
            return Err(invalid(format!("code {code} outside a field of size {}", self.q)));
        }
        Ok(Elem(code as u32))
    }

    /// Coefficient vector of length e.
    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        let mut c = a.0;
        (0..self.e)
            .map(|_| {
                let d = c % self.p;
                c /= self.p;
                d
            })
            .collect()
    }

    pub fn contains(&self, a: Elem) -> bool {
        a.0 < self.q
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> {
        (1..self.q).map(Elem)
    }

    pub fn is_in_prime_field(&self, a: Elem) -> bool {
        a.0 < self.p
    }

    fn digits(&self, a: Elem) -> [u32; MAX_DEGREE] {
        let mut out = [0u32; MAX_DEGREE];
        let mut c = a.0;
        for d in out.iter_mut().take(self.e as usize) {
            *d = c % self.p;
            c /= self.p;
        }
        out
    }

    fn undigits(&self, d: &[u32]) -> Elem {
        let mut code = 0;
        for i in (0..self.e as usize).rev() {
            code = code * self.p + d[i];
        }
        Elem(code)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.e == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= self.p { s - self.p } else { s });
        }
        let (x, y) = (self.digits(a), self.digits(b));
        let mut z = [0u32; MAX_DEGREE];
        for i in 0..self.e as usize {
            let s = x[i] + y[i];
            z[i] = if s >= self.p { s - self.p } else { s };
        }
        self.undigits(&z)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.e == 1 {
            return Elem(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        let x = self.digits(a);
        let mut z = [0u32; MAX_DEGREE];
        for i in 0..self.e as usize {
            z[i] = if x[i] == 0 { 0 } else { self.p - x[i] };
        }
        self.undigits(&z)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        if let Some(t) = &self.tables {
            let i = t.log[a.0 as usize] + t.log[b.0 as usize];
            return Elem(t.exp[i as usize]);
        }
        self.mul_slow(a, b)
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        let p = self.p as u64;
        if self.e == 1 {
            return Elem((a.0 as u64 * b.0 as u64 % p) as u32);
        }
        let e = self.e as usize;
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..e {
            if x[i] == 0 {
                continue;
            }
            for j in 0..e {
                prod[i + j] = (prod[i + j] + x[i] as u64 * y[j] as u64) % p;
            }
        }
        for k in (e..2 * e - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            // w^e = -(m_0 + ... + m_{e-1} w^{e-1})
            for i in 0..e {
                let m = self.modulus[i] as u64;
                prod[k - e + i] = (prod[k - e + i] + (p - c) * m) % p;
            }
        }
        let mut z = [0u32; MAX_DEGREE];
        for i in 0..e {
            z[i] = prod[i] as u32;
        }
        self.undigits(&z)
    }

    /// Scalar multiple by an integer.
    pub fn scale(&self, a: Elem, n: i64) -> Elem {
        self.mul(a, self.from_int(n))
    }

    pub fn pow(&self, a: Elem, n: u64) -> Elem {
        if n == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        if let Some(t) = &self.tables {
            let k = (t.log[a.0 as usize] as u64 * (n % (self.q as u64 - 1))) % (self.q as u64 - 1);
            return Elem(t.exp[k as usize]);
        }
        self.pow_slow(a, n)
    }

    fn pow_slow(&self, mut a: Elem, mut n: u64) -> Elem {
        let mut acc = Elem::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul_slow(acc, a);
            }
            a = self.mul_slow(a, a);
            n >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.tables {
            let l = t.log[a.0 as usize];
            let k = if l == 0 { 0 } else { self.q - 1 - l };
            return Ok(Elem(t.exp[k as usize]));
        }
        Ok(self.pow(a, self.q as u64 - 2))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Power with a possibly negative exponent.
    pub fn pow_signed(&self, a: Elem, n: i64) -> Result<Elem> {
        if n >= 0 {
            Ok(self.pow(a, n as u64))
        } else {
            Ok(self.pow(self.inv(a)?, n.unsigned_abs()))
        }
    }

    fn order_slow(&self, a: Elem) -> u64 {
        let mut n = self.q as u64 - 1;
        for &(r, _) in &self.group_factors {
            while n.is_multiple_of(r) && self.pow_slow(a, n / r) == Elem::ONE {
                n /= r;
            }
        }
        n
    }

    /// Multiplicative order: the least n >= 1 with a^n = 1. It always divides
    /// q - 1; found by factoring q - 1 and stripping prime factors.
    pub fn mul_order(&self, a: Elem) -> Result<u64> {
        if a.0 == 0 {
            return Err(Error::ZeroElement);
        }
        let mut n = self.q as u64 - 1;
        for &(r, _) in &self.group_factors {
            while n.is_multiple_of(r) && self.pow(a, n / r) == Elem::ONE {
                n /= r;
            }
        }
        Ok(n)
    }

    /// The smallest element (by code) of multiplicative order exactly `m`, if
    /// `m` divides q - 1.
    pub fn primitive_mth_root(&self, m: u64) -> Option<Elem> {
        let n = self.q as u64 - 1;
        if m == 0 || !n.is_multiple_of(m) {
            return None;
        }
        let cofactor = n / m;
        let gamma =
            self.nonzero_elements().map(|b| self.pow(b, cofactor)).find(|&g| self.mul_order(g).ok() == Some(m))?;
        (1..=m).filter(|&k| arith::gcd(k, m) == 1).map(|k| self.pow(gamma, k)).min()
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> Elem {
        self.primitive_mth_root(self.q as u64 - 1).expect("multiplicative group of a finite field is cyclic")
    }

    /// Frobenius a -> a^p.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.p as u64)
    }
}

impl Field {
    pub fn new(p: u64, e: u32) -> Result<Field> {
        make_field(p, e, None)
    }

    /// Wraps an element, checking that it belongs to this field.
    pub fn fe(&self, a: Elem) -> Result<Fe> {
        if !self.contains(a) {
            return Err(invalid(format!("code {} outside field", a.0)));
        }
        Ok(Fe { field: self.clone(), value: a })
    }

    /// The degree-`k` extension F_{q^k} together with the embedding of this
    /// field into it. For prime fields the embedding is the inclusion of the
    /// prime subfield; otherwise the generator w is sent to the smallest root
    /// of this field's modulus in the extension.
    pub fn extension(&self, k: u32) -> Result<(Field, Embedding)> {
        if k == 0 {
            return Err(Error::ZeroDegree);
        }
        if k == 1 {
            return Ok((self.clone(), Embedding::identity(self)));
        }
        let ext = make_field(self.p as u64, self.e * k, None)?;
        let images = if self.e == 1 {
            vec![Elem::ONE]
        } else {
            let lifted: Vec<Elem> = self.modulus.iter().map(|&c| Elem(c)).collect();
            let poly = crate::poly::Poly::from_elems(&ext, lifted);
            let w = *crate::poly::roots::distinct_roots(&poly)
                .first()
                .ok_or_else(|| invalid("modulus has no root in extension"))?;
            let mut images = Vec::with_capacity(self.e as usize);
            let mut x = Elem::ONE;
            for _ in 0..self.e {
                images.push(x);
                x = ext.mul(x, w);
            }
            images
        };
        Ok((ext.clone(), Embedding { base: self.clone(), ext, basis_images: images, reverse: OnceLock::new() }))
    }

    /// Smallest k such that F_{q^k} contains an element of order `n`.
    pub fn host_degree(&self, n: u64) -> Result<u32> {
        if n == 0 || n.is_multiple_of(self.p as u64) {
            return Err(Error::NotCoprime { m: n, p: self.p as u64 });
        }
        let k = arith::order_mod(self.q as u64 % n, n).unwrap_or(1);
        Ok(k as u32)
    }

    /// Smallest extension (with embedding) hosting an element of order `n`.
    pub fn host_extension(&self, n: u64) -> Result<(Field, Embedding)> {
        self.extension(self.host_degree(n)?)
    }

    /// Closure of `gens` under multiplication. An empty generator set yields
    /// the trivial group {1}.
    pub fn group_generated(&self, gens: &[Elem]) -> Result<MulGroup> {
        let mut members = vec![Elem::ONE];
        let mut seen: std::collections::HashSet<Elem> = members.iter().copied().collect();
        for &g in gens {
            if g.is_zero() {
                return Err(Error::ZeroElement);
            }
            if !self.contains(g) {
                return Err(invalid("generator outside field"));
            }
        }
        let mut frontier = members.clone();
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    members.push(y);
                    frontier.push(y);
                }
            }
        }
        members.sort();
        Ok(MulGroup { field: self.clone(), elements: members })
    }

    /// The unique subgroup of order `m` (the m-th roots of unity), if m | q-1.
    pub fn subgroup_of_order(&self, m: u64) -> Option<MulGroup> {
        let alpha = self.primitive_mth_root(m)?;
        let mut elements: Vec<Elem> = (0..m).map(|k| self.pow(alpha, k)).collect();
        elements.sort();
        Some(MulGroup { field: self.clone(), elements })
    }
}

/// A field element bound to its field, with checked arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fe {
    field: Field,
    value: Elem,
}

/// The element operations exposed through [`fe_arith`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum FeOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow(i64),
    Inv,
    Neg,
}

impl Fe {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    fn same(&self, other: &Fe) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    fn wrap(&self, v: Elem) -> Fe {
        Fe { field: self.field.clone(), value: v }
    }

    pub fn add(&self, other: &Fe) -> Result<Fe> {
        self.same(other)?;
        Ok(self.wrap(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &Fe) -> Result<Fe> {
        self.same(other)?;
        Ok(self.wrap(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &Fe) -> Result<Fe> {
        self.same(other)?;
        Ok(self.wrap(self.field.mul(self.value, other.value)))
    }

    pub fn div(&self, other: &Fe) -> Result<Fe> {
        self.same(other)?;
        Ok(self.wrap(self.field.div(self.value, other.value)?))
    }

    pub fn inv(&self) -> Result<Fe> {
        Ok(self.wrap(self.field.inv(self.value)?))
    }

    pub fn neg(&self) -> Fe {
        self.wrap(self.field.neg(self.value))
    }

    pub fn pow(&self, n: i64) -> Result<Fe> {
        Ok(self.wrap(self.field.pow_signed(self.value, n)?))
    }

    pub fn mul_order(&self) -> Result<u64> {
        self.field.mul_order(self.value)
    }
}

/// Applies `op` to one operand (`Inv`, `Neg`, `Pow`) or two operands.
pub fn fe_arith(op: FeOp, a: &Fe, b: Option<&Fe>) -> Result<Fe> {
    let rhs = || b.ok_or_else(|| invalid("binary operation needs two operands"));
    match op {
        FeOp::Add => a.add(rhs()?),
        FeOp::Sub => a.sub(rhs()?),
        FeOp::Mul => a.mul(rhs()?),
        FeOp::Div => a.div(rhs()?),
        FeOp::Pow(n) => a.pow(n),
        FeOp::Inv => a.inv(),
        FeOp::Neg => Ok(a.neg()),
    }
}

/// A finite multiplicative subgroup, as a sorted list of its elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulGroup {
    field: Field,
    elements: Vec<Elem>,
}

impl MulGroup {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    pub(crate) fn from_sorted(field: &Field, elements: Vec<Elem>) -> MulGroup {
        MulGroup { field: field.clone(), elements }
    }
}

/// An embedding of `base` into an extension field `ext`.
pub struct Embedding {
    base: Field,
    ext: Field,
    basis_images: Vec<Elem>,
    reverse: OnceLock<HashMap<Elem, Elem>>,
}

impl Clone for Embedding {
    fn clone(&self) -> Self {
        Embedding {
            base: self.base.clone(),
            ext: self.ext.clone(),
            basis_images: self.basis_images.clone(),
            reverse: OnceLock::new(),
        }
    }
}

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Embedding").field("base", &self.base).field("ext", &self.ext).finish()
    }
}

impl Embedding {
    pub fn identity(field: &Field) -> Embedding {
        let basis_images = (0..field.e).map(|i| Elem(field.pow_p[i as usize])).collect();
        Embedding { base: field.clone(), ext: field.clone(), basis_images, reverse: OnceLock::new() }
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn ext(&self) -> &Field {
        &self.ext
    }

    /// [ext : base].
    pub fn relative_degree(&self) -> u32 {
        self.ext.e / self.base.e
    }

    pub fn embed(&self, a: Elem) -> Elem {
        if self.base == self.ext {
            return a;
        }
        let c = self.base.coeffs(a);
        let mut acc = Elem::ZERO;
        for (ci, &img) in c.iter().zip(&self.basis_images) {
            if *ci != 0 {
                acc = self.ext.add(acc, self.ext.mul(Elem(*ci), img));
            }
        }
        acc
    }

    pub fn embed_all(&self, xs: &[Elem]) -> Vec<Elem> {
        xs.iter().map(|&x| self.embed(x)).collect()
    }

    /// Inverse of [`Embedding::embed`] on its image.
    pub fn project(&self, a: Elem) -> Option<Elem> {
        if self.base == self.ext {
            return Some(a);
        }
        let map = self.reverse.get_or_init(|| self.base.elements().map(|x| (self.embed(x), x)).collect());
        map.get(&a).copied()
    }
}

/// Polynomials over F_p as plain residue vectors, used before a field
/// context exists (modulus search and irreducibility checks).
pub(crate) mod fp_poly {
    fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        crate::arith::pow_mod(a as u64, p as u64 - 2, p as u64) as u32
    }

    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lead_inv = inv_mod(b[db], p) as u64;
        while r.len() > db {
            let k = r.len() - 1;
            let c = r[k] as u64 * lead_inv % p as u64;
            if c != 0 {
                for i in 0..=db {
                    let t = &mut r[k - db + i];
                    *t = ((*t as u64 + (p as u64 - c) * b[i] as u64) % p as u64) as u32;
                }
            }
            r.pop();
            trim(&mut r);
        }
        r
    }

    pub fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|v| v as u32).collect();
        rem(&prod, m, p)
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// x^(p^i) mod m for i = 1..=k, by repeated p-th powering.
    fn frobenius_powers(m: &[u32], p: u32, k: usize) -> Vec<Vec<u32>> {
        let mut out = Vec::with_capacity(k);
        let mut cur = rem(&[0, 1], m, p);
        for _ in 0..k {
            let mut acc = vec![1u32];
            let mut base = cur.clone();
            let mut n = p;
            while n > 0 {
                if n & 1 == 1 {
                    acc = mulmod(&acc, &base, m, p);
                }
                base = mulmod(&base, &base, m, p);
                n >>= 1;
            }
            cur = acc;
            out.push(cur.clone());
        }
        out
    }

    /// Ben-Or test: f of degree e is irreducible iff gcd(f, x^(p^i) - x) = 1
    /// for all 1 <= i <= e/2.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let e = f.len() - 1;
        if e == 0 {
            return false;
        }
        if e == 1 {
            return true;
        }
        if f[0] == 0 {
            return false;
        }
        for xp in frobenius_powers(f, p, e / 2) {
            let mut h = xp;
            if h.len() < 2 {
                h.resize(2, 0);
            }
            h[1] = (h[1] + p - 1) % p;
            let g = gcd(f, &h, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }

    /// Lexicographically smallest monic irreducible of degree e, comparing
    /// (c_0, ..., c_{e-1}) from c_0.
    pub fn smallest_irreducible(p: u32, e: usize) -> Vec<u32> {
        let mut c = vec![0u32; e];
        loop {
            let mut f = c.clone();
            f.push(1);
            if is_irreducible(&f, p) {
                return f;
            }
            // increment with c_{e-1} as least significant digit
            let mut i = e;
            loop {
                i -= 1;
                c[i] += 1;
                if c[i] < p {
                    break;
                }
                c[i] = 0;
                assert!(i > 0, "irreducible polynomials exist in every degree");
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64, e: u32) -> Field {
        make_field(p, e, None).unwrap()
    }

    #[test]
    fn make_field_examples() {
        let f7 = f(7, 1);
        assert_eq!(f7.size(), 7);
        assert!(f7.modulus().is_none());
        assert_eq!(f(3, 2).modulus(), Some(&[1u32, 0, 1][..]));
        assert_eq!(make_field(4, 1, None).unwrap_err(), Error::NotPrime(4));
        assert_eq!(make_field(7, 0, None).unwrap_err(), Error::ZeroDegree);
        assert!(matches!(make_field(2, 31, None), Err(Error::FieldTooLarge { .. })));
    }

    #[test]
    fn explicit_modulus_checks() {
        assert!(make_field(3, 2, Some(&[2, 1, 1])).is_ok());
        // x^2 + 2 = (x - 1)(x + 1) over F_3
        assert!(matches!(make_field(3, 2, Some(&[2, 0, 1])), Err(Error::BadModulus(_))));
        assert!(matches!(make_field(3, 2, Some(&[1, 1])), Err(Error::BadModulus(_))));
        assert!(matches!(make_field(3, 2, Some(&[1, 0, 2])), Err(Error::BadModulus(_))));
        assert!(matches!(make_field(5, 1, Some(&[1, 1])), Err(Error::BadModulus(_))));
    }

    #[test]
    fn smallest_modulus_matches_brute_force_scan() {
        // Oracle: scan monic degree-e polynomials in the same order and test
        // irreducibility by checking divisibility by every monic polynomial
        // of degree 1..=e/2.
        fn brute_irreducible(f: &[u32], p: u32) -> bool {
            let e = f.len() - 1;
            for d in 1..=e / 2 {
                for t in 0..(p as u64).pow(d as u32) {
                    let mut g: Vec<u32> = (0..d).map(|i| ((t / (p as u64).pow(i as u32)) % p as u64) as u32).collect();
                    g.push(1);
                    if fp_poly::rem(f, &g, p).is_empty() {
                        return false;
                    }
                }
            }
            true
        }
        for (p, e) in [(2u32, 2usize), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2), (2, 6)] {
            let got = fp_poly::smallest_irreducible(p, e);
            let total = (p as u64).pow(e as u32);
            let expected = (0..total)
                .map(|t| {
                    let mut c: Vec<u32> =
                        (0..e).map(|i| ((t / (p as u64).pow((e - 1 - i) as u32)) % p as u64) as u32).collect();
                    c.push(1);
                    c
                })
                .find(|c| brute_irreducible(c, p))
                .unwrap();
            assert_eq!(got, expected, "p={p} e={e}");
        }
    }

    #[test]
    fn arithmetic_examples() {
        let f7 = f(7, 1);
        assert_eq!(f7.mul(Elem(3), Elem(5)), Elem(1));
        let f11 = f(11, 1);
        assert_eq!(f11.inv(Elem(3)).unwrap(), Elem(4));
        assert_eq!(f7.div(Elem(3), Elem(0)), Err(Error::DivisionByZero));
        let f9 = f(3, 2);
        let w = f9.generator().unwrap();
        assert_eq!(f9.mul(w, w), f9.from_int(-1));
        assert_eq!(f9.pow(w, 3), f9.neg(w));
    }

    #[test]
    fn checked_elements_reject_mixed_fields() {
        let a = f(7, 1).fe(Elem(3)).unwrap();
        let b = f(5, 1).fe(Elem(3)).unwrap();
        assert_eq!(a.mul(&b), Err(Error::MixedFields));
        assert_eq!(fe_arith(FeOp::Mul, &a, Some(&a)).unwrap().value(), Elem(2));
        assert_eq!(fe_arith(FeOp::Pow(-1), &a, None).unwrap().value(), Elem(5));
        assert_eq!(fe_arith(FeOp::Neg, &a, None).unwrap().value(), Elem(4));
        assert!(fe_arith(FeOp::Add, &a, None).is_err());
    }

    #[test]
    fn table_and_slow_paths_agree() {
        let t = f(5, 3);
        assert!(t.tables.is_some());
        let slow = FieldCtx::build(5, 3, t.modulus.clone());
        let mut plain = slow;
        plain.tables = None;
        for a in t.elements() {
            for b in [Elem(0), Elem(1), Elem(7), Elem(33), Elem(124)] {
                assert_eq!(t.mul(a, b), plain.mul(a, b));
            }
            if !a.is_zero() {
                assert_eq!(t.inv(a).unwrap(), plain.inv(a).unwrap());
                assert_eq!(t.pow(a, 17), plain.pow(a, 17));
            }
        }
    }

    #[test]
    fn orders() {
        let f7 = f(7, 1);
        assert_eq!(f7.mul_order(Elem(1)).unwrap(), 1);
        assert_eq!(f7.mul_order(Elem(3)).unwrap(), 6);
        assert_eq!(f7.mul_order(Elem(0)), Err(Error::ZeroElement));
        let f9 = f(3, 2);
        assert_eq!(f9.mul_order(f9.generator().unwrap()).unwrap(), 4);
    }

    #[test]
    fn orders_divide_group_order_everywhere() {
        for q in 2..=121u64 {
            let fac = arith::factorize(q);
            if fac.len() != 1 {
                continue;
            }
            let (p, e) = fac[0];
            let k = f(p, e);
            for a in k.nonzero_elements() {
                let n = k.mul_order(a).unwrap();
                assert_eq!((q - 1) % n, 0);
                assert_eq!(k.pow(a, n), Elem::ONE);
                assert_eq!(k.group_generated(&[a]).unwrap().order(), n);
            }
        }
    }

    #[test]
    fn generated_groups() {
        let f7 = f(7, 1);
        assert_eq!(f7.group_generated(&[Elem(1)]).unwrap().elements(), &[Elem(1)]);
        assert_eq!(f7.group_generated(&[]).unwrap().elements(), &[Elem(1)]);
        assert_eq!(f7.group_generated(&[Elem(2)]).unwrap().elements(), &[Elem(1), Elem(2), Elem(4)]);
        assert_eq!(f7.group_generated(&[Elem(3)]).unwrap().order(), 6);
        assert_eq!(f7.group_generated(&[Elem(2), Elem(6)]).unwrap().order(), 6);
    }

    #[test]
    fn primitive_roots() {
        let f7 = f(7, 1);
        assert_eq!(f7.primitive_mth_root(6), Some(Elem(3)));
        assert_eq!(f7.primitive_mth_root(4), None);
        let f9 = f(3, 2);
        let g = f9.primitive_mth_root(8).unwrap();
        assert_eq!(f9.mul_order(g).unwrap(), 8);
        // smallest by code among all order-8 elements
        let brute = f9.nonzero_elements().find(|&a| f9.mul_order(a).unwrap() == 8).unwrap();
        assert_eq!(g, brute);
    }

    #[test]
    fn extension_embedding_is_a_ring_map() {
        for (p, e, k) in [(7u64, 1u32, 2u32), (3, 2, 2), (2, 2, 3), (5, 1, 3)] {
            let base = f(p, e);
            let (ext, emb) = base.extension(k).unwrap();
            assert_eq!(ext.size(), base.size().pow(k));
            for a in base.elements() {
                for b in base.elements().step_by(3) {
                    assert_eq!(emb.embed(base.add(a, b)), ext.add(emb.embed(a), emb.embed(b)));
                    assert_eq!(emb.embed(base.mul(a, b)), ext.mul(emb.embed(a), emb.embed(b)));
                }
                assert_eq!(emb.project(emb.embed(a)), Some(a));
            }
        }
    }

    #[test]
    fn host_degrees() {
        let f11 = f(11, 1);
        assert_eq!(f11.host_degree(6).unwrap(), 2);
        assert_eq!(f(3, 1).host_degree(14).unwrap(), 6);
        assert!(f(7, 1).host_degree(14).is_err());
    }

    #[test]
    fn make_field_is_deterministic() {
        for (p, e) in [(2u64, 5u32), (3, 4), (11, 3)] {
            let a = make_field(p, e, None).unwrap();
            let b = make_field(p, e, None).unwrap();
            assert_eq!(a.modulus(), b.modulus());
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn frobenius_is_additive(idx in 0usize..6, x in any::<u32>(), y in any::<u32>()) {
                let (p, e) = [(2u64, 8u32), (3, 5), (5, 3), (7, 2), (13, 1), (2, 20)][idx];
                let k = make_field(p, e, None).unwrap();
                let a = Elem(x % k.size() as u32);
                let b = Elem(y % k.size() as u32);
                prop_assert_eq!(k.frobenius(k.add(a, b)), k.add(k.frobenius(a), k.frobenius(b)));
                prop_assert_eq!(k.frobenius(k.mul(a, b)), k.mul(k.frobenius(a), k.frobenius(b)));
            }

            #[test]
            fn field_axioms(idx in 0usize..4, x in any::<u32>(), y in any::<u32>(), z in any::<u32>()) {
                let (p, e) = [(2u64, 9u32), (3, 3), (31, 1), (7, 5)][idx];
                let k = make_field(p, e, None).unwrap();
                let q = k.size() as u32;
                let (a, b, c) = (Elem(x % q), Elem(y % q), Elem(z % q));
                prop_assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
                prop_assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
                prop_assert_eq!(k.sub(k.add(a, b), b), a);
                if !a.is_zero() {
                    prop_assert_eq!(k.mul(a, k.inv(a).unwrap()), Elem::ONE);
                }
            }
        }
    }
}
