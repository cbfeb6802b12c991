//! Roots of polynomials in a field and in its extensions.
//!
//! Small fields are searched exhaustively. Above [`EXHAUSTIVE_LIMIT`]
//! elements the roots are isolated as gcd(f, x^q - x) and split with the
//! usual random-free variant of equal-degree splitting: shifts x + d (odd q)
//! or traces of d*x (q even) for d running over the field in code order.

use super::Poly;
use crate::error::{invalid, Result};
use crate::field::{Elem, Embedding, Field, MAX_FIELD_SIZE};

pub const DEFAULT_MAX_EXT_DEGREE: u32 = 6;

/// Fields up to this size are searched by evaluating at every element.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 16;

/// Distinct roots of `f` in its own field, ascending by code.
pub fn distinct_roots(f: &Poly) -> Vec<Elem> {
    if f.is_zero() {
        return f.field().elements().collect();
    }
    let mut roots = if f.field().size() <= EXHAUSTIVE_LIMIT { exhaustive_roots(f) } else { splitting_roots(f) };
    roots.sort();
    roots
}

pub(crate) fn exhaustive_roots(f: &Poly) -> Vec<Elem> {
    f.field().elements().filter(|&a| f.eval(a).is_zero()).collect()
}

pub(crate) fn splitting_roots(f: &Poly) -> Vec<Elem> {
    let k = f.field();
    let f = f.monic();
    if f.deg() == 0 {
        return Vec::new();
    }
    let x = Poly::x(k);
    let xq = x.pow_mod(k.size(), &f).expect("nonzero modulus");
    let linear_part = f.gcd_unchecked(&xq.sub_unchecked(&x));
    let mut out = Vec::new();
    split(&linear_part, &mut out);
    out
}

/// Splits a monic product of distinct linear factors.
fn split(g: &Poly, out: &mut Vec<Elem>) {
    let k = g.field();
    match g.deg() {
        0 => return,
        1 => {
            out.push(k.neg(g.coeff(0)));
            return;
        }
        _ => {}
    }
    let q = k.size();
    for d in k.elements() {
        let probe = if q % 2 == 1 {
            let shifted = Poly::from_elems(k, vec![d, Elem::ONE]);
            shifted.pow_mod((q - 1) / 2, g).expect("nonzero modulus").sub_unchecked(&Poly::one(k))
        } else {
            let y = Poly::monomial(k, d, 1).divmod_unchecked(g).expect("nonzero").1;
            let mut t = y.clone();
            let mut acc = y;
            for _ in 1..k.degree() * k.characteristic().trailing_zeros() {
                t = t.mul_unchecked(&t).divmod_unchecked(g).expect("nonzero").1;
                acc = acc.add_unchecked(&t);
            }
            acc
        };
        let h = g.gcd_unchecked(&probe);
        if h.deg() > 0 && h.deg() < g.deg() {
            split(&h, out);
            split(&g.divmod_unchecked(&h).expect("nonzero").0, out);
            return;
        }
    }
    unreachable!("some shift separates distinct roots");
}

/// Multiplicity of `a` as a root of nonzero `f`.
pub fn multiplicity(f: &Poly, a: Elem) -> u32 {
    let lin = Poly::linear(f.field(), a);
    let mut g = f.clone();
    let mut k = 0;
    loop {
        let (q, r) = g.divmod_unchecked(&lin).expect("nonzero divisor");
        if !r.is_zero() || g.is_zero() {
            return k;
        }
        g = q;
        k += 1;
    }
}

/// Roots with multiplicities in a splitting field.
#[derive(Clone, Debug)]
pub struct RootSpectrum {
    embedding: Embedding,
    entries: Vec<(Elem, u32)>,
    split: bool,
}

impl RootSpectrum {
    /// The field holding the roots.
    pub fn field(&self) -> &Field {
        self.embedding.ext()
    }

    /// Embedding of the polynomial's field into [`RootSpectrum::field`].
    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn entries(&self) -> &[(Elem, u32)] {
        &self.entries
    }

    pub fn roots(&self) -> Vec<Elem> {
        self.entries.iter().map(|&(r, _)| r).collect()
    }

    /// True when the multiplicities add up to the degree.
    pub fn splits(&self) -> bool {
        self.split
    }

    /// [splitting field : base field].
    pub fn extension_degree(&self) -> u32 {
        self.embedding.relative_degree()
    }
}

fn spectrum_in(f: &Poly, emb: Embedding) -> Result<RootSpectrum> {
    let lifted = f.lift(&emb)?;
    let entries: Vec<(Elem, u32)> =
        distinct_roots(&lifted).into_iter().map(|r| (r, multiplicity(&lifted, r))).collect();
    let total: u32 = entries.iter().map(|&(_, k)| k).sum();
    let split = total as usize == f.deg();
    Ok(RootSpectrum { embedding: emb, entries, split })
}

/// Smallest d <= `max_d` such that every irreducible factor of `f` has
/// degree dividing d. With g = gcd(f, x^{q^d} - x), the product of the
/// distinct such factors, that holds iff f divides g^{deg f}.
fn splitting_degree(f: &Poly, max_d: u32) -> Option<u32> {
    let k = f.field();
    let f = f.monic();
    let n = f.deg() as u64;
    if n == 0 {
        return Some(1);
    }
    let x = Poly::x(k).divmod_unchecked(&f).expect("nonzero").1;
    let mut xqd = x.clone();
    for d in 1..=max_d {
        xqd = xqd.pow_mod(k.size(), &f).expect("nonzero modulus");
        let g = f.gcd_unchecked(&xqd.sub_unchecked(&x));
        if g.pow_mod(n, &f).expect("nonzero modulus").is_zero() {
            return Some(d);
        }
    }
    None
}

/// Finds the smallest extension degree d <= `max_ext_degree` over which `f`
/// splits completely and returns all roots there with multiplicities. When
/// there is none, or F_{q^d} would reach the field size bound, the roots in
/// the base field are returned with `splits() == false`.
pub fn roots_with_mult(f: &Poly, max_ext_degree: u32) -> Result<RootSpectrum> {
    if f.is_zero() {
        return Err(invalid("roots of the zero polynomial"));
    }
    let base = f.field();
    let d =
        splitting_degree(f, max_ext_degree.max(1)).filter(|&d| (base.size() as u128).pow(d) < MAX_FIELD_SIZE as u128);
    match d {
        Some(1) | None => spectrum_in(f, Embedding::identity(base)),
        Some(d) => spectrum_in(f, base.extension(d)?.1),
    }
}
