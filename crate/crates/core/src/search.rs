//! Exhaustive search for ANS subgroups of a given size m.
//!
//! For each prime p <= p_max with p not dividing m the search runs in the
//! host field F_{p^d}, d = ord_m(p), the smallest field with a subgroup M of
//! order m. Fix alpha, the smallest generator of M. Every ANS presentation
//! has a minimal recursion dividing D(x) = (x^m - 1)/((x - 1) Phi_m(x)),
//! whose roots are alpha^k for 0 < k < m with gcd(k, m) > 1, and the roots
//! of f_s generate M. So divisors are subsets S of those exponents with
//! gcd(S, m) = 1; the rest are pruned.
//!
//! For a divisor g of degree D, seeds are injective D-tuples from M (with
//! s_0 = 1 when normalizing). A seed yields a hit when its sequence runs
//! through all of M before returning to the seed and its minimal recursion
//! is exactly g, so every window is found under one divisor only.
//!
//! Work is split into (field, divisor) tasks; results are merged in task
//! order, so output does not depend on the thread count.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::arith;
use crate::classify::is_ans_sequence;
use crate::error::{invalid, Result};
use crate::field::{make_field, Elem, Field, MAX_FIELD_SIZE};
use crate::format::{elem_json, elems_json, field_spec, poly_json, poly_to_string};
use crate::lrs::{minimal_recursion, PeriodicSeq};
use crate::poly::Poly;

/// Default cap on the seed count per host field.
pub const DEFAULT_CAP: u64 = 200_000_000;

/// Largest subgroup size the engine accepts.
pub const MAX_M: u64 = 64;

/// Cap on candidate exponents k (gcd(k, m) > 1); divisors number 2^count.
const MAX_DIVISOR_EXPONENTS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    pub m: u64,
    pub p_max: u64,
    /// Explicit characteristics; overrides `p_max` when set.
    pub primes: Option<Vec<u64>>,
    /// Fix s_0 = 1. Scaling by s_0^{-1} keeps f_s and the class, so no class
    /// is lost.
    pub normalize: bool,
    /// Per-field seed budget; `None` searches everything.
    pub cap: Option<u64>,
    /// Enumerate prime-power sizes and pruned divisors anyway.
    pub debug_enumerate: bool,
}

impl SearchSpec {
    pub fn new(m: u64, p_max: u64) -> SearchSpec {
        SearchSpec { m, p_max, primes: None, normalize: true, cap: Some(DEFAULT_CAP), debug_enumerate: false }
    }

    pub fn exhaustive(mut self) -> SearchSpec {
        self.cap = None;
        self
    }

    fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "p_max": self.p_max,
            "primes": self.primes,
            "normalize": self.normalize,
            "cap": self.cap,
            "debug_enumerate": self.debug_enumerate,
        })
    }
}

/// The smallest field of characteristic p with a subgroup of order m.
#[derive(Clone, Debug)]
pub struct HostField {
    pub p: u64,
    pub degree: u32,
    /// `None` when p^degree is past the supported field size.
    pub field: Option<Field>,
}

pub fn enumerate_host_fields(m: u64, p_max: u64) -> Result<Vec<HostField>> {
    let primes: Vec<u64> = (2..=p_max).filter(|&p| arith::is_prime(p)).collect();
    host_fields(m, &primes)
}

fn host_fields(m: u64, primes: &[u64]) -> Result<Vec<HostField>> {
    if m < 2 {
        return Err(invalid("search needs m >= 2"));
    }
    let mut out = Vec::new();
    for &p in primes {
        if !arith::is_prime(p) {
            return Err(crate::Error::NotPrime(p));
        }
        if m.is_multiple_of(p) {
            continue;
        }
        let d = arith::order_mod(p % m, m).expect("p coprime to m") as u32;
        let fits = (p as u128).checked_pow(d).is_some_and(|q| q < MAX_FIELD_SIZE as u128);
        let field = if fits { Some(make_field(p, d, None)?) } else { None };
        out.push(HostField { p, degree: d, field });
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Counters {
    /// Seeds over all divisors, pruned or not.
    pub theoretical: u64,
    pub enumerated: u64,
    /// Seeds of divisors whose roots do not generate M.
    pub pruned: u64,
    /// Seeds of divisors left out by the cap.
    pub skipped: u64,
    pub divisors: u64,
    pub divisors_pruned: u64,
    pub divisors_skipped: u64,
}

impl Counters {
    fn add(&mut self, o: &Counters) {
        self.theoretical = self.theoretical.saturating_add(o.theoretical);
        self.enumerated = self.enumerated.saturating_add(o.enumerated);
        self.pruned = self.pruned.saturating_add(o.pruned);
        self.skipped = self.skipped.saturating_add(o.skipped);
        self.divisors = self.divisors.saturating_add(o.divisors);
        self.divisors_pruned = self.divisors_pruned.saturating_add(o.divisors_pruned);
        self.divisors_skipped = self.divisors_skipped.saturating_add(o.divisors_skipped);
    }

    fn to_json(&self) -> Value {
        json!({
            "theoretical": self.theoretical,
            "enumerated": self.enumerated,
            "pruned": self.pruned,
            "skipped": self.skipped,
            "divisors": self.divisors,
            "divisors_pruned": self.divisors_pruned,
            "divisors_skipped": self.divisors_skipped,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hit {
    pub window: Vec<Elem>,
    pub f_s: Poly,
}

/// One shift/scale class of hits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HitClass {
    pub canonical: Vec<Elem>,
    pub f_s: Poly,
    /// Hits found that belong to this class.
    pub hits: u64,
}

#[derive(Clone, Debug)]
pub struct FieldResult {
    pub host: HostField,
    /// The generator alpha of M fixing the exponent order.
    pub alpha: Option<Elem>,
    /// Hits that passed [`verify_hit`].
    pub hits: Vec<Hit>,
    /// Hits the independent check turned down; always 0 unless a bug.
    pub rejected: u64,
    pub classes: Vec<HitClass>,
    pub counters: Counters,
    pub exhaustive: bool,
}

impl FieldResult {
    fn to_json(&self) -> Value {
        let Some(k) = &self.host.field else {
            return json!({
                "p": self.host.p,
                "degree": self.host.degree,
                "field": Value::Null,
                "status": "skipped: field too large",
                "exhaustive": false,
                "hits": [],
                "rejected": 0,
                "classes": [],
                "counters": self.counters.to_json(),
            });
        };
        let hits: Vec<Value> = self
            .hits
            .iter()
            .map(|h| {
                json!({
                    "window": elems_json(k, &h.window),
                    "f_s": poly_json(&h.f_s),
                    "f_s_text": poly_to_string(&h.f_s),
                })
            })
            .collect();
        let classes: Vec<Value> = self
            .classes
            .iter()
            .map(|c| {
                json!({
                    "canonical": elems_json(k, &c.canonical),
                    "f_s": poly_json(&c.f_s),
                    "f_s_text": poly_to_string(&c.f_s),
                    "hits": c.hits,
                })
            })
            .collect();
        json!({
            "p": self.host.p,
            "degree": self.host.degree,
            "field": field_spec(k),
            "alpha": self.alpha.map(|a| elem_json(k, a)),
            "status": if self.exhaustive { "exhaustive" } else { "capped" },
            "exhaustive": self.exhaustive,
            "hits": hits,
            "rejected": self.rejected,
            "classes": classes,
            "counters": self.counters.to_json(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub spec: SearchSpec,
    /// Set when the search was answered without enumeration.
    pub short_circuit: Option<String>,
    pub fields: Vec<FieldResult>,
}

impl SearchReport {
    pub fn exhaustive(&self) -> bool {
        self.fields.iter().all(|f| f.exhaustive)
    }

    pub fn hit_count(&self) -> usize {
        self.fields.iter().map(|f| f.hits.len()).sum()
    }

    pub fn class_count(&self) -> usize {
        self.fields.iter().map(|f| f.classes.len()).sum()
    }

    /// Characteristics with at least one hit, ascending.
    pub fn characteristics_with_hits(&self) -> Vec<u64> {
        self.fields.iter().filter(|f| !f.hits.is_empty()).map(|f| f.host.p).collect()
    }

    pub fn all_verified(&self) -> bool {
        self.fields.iter().all(|f| f.rejected == 0)
    }

    pub fn counters(&self) -> Counters {
        let mut c = Counters::default();
        for f in &self.fields {
            c.add(&f.counters);
        }
        c
    }

    pub fn to_json(&self) -> Value {
        json!({
            "spec": self.spec.to_json(),
            "short_circuit": self.short_circuit,
            "exhaustive": self.exhaustive(),
            "hit_count": self.hit_count(),
            "class_count": self.class_count(),
            "characteristics_with_hits": self.characteristics_with_hits(),
            "all_verified": self.all_verified(),
            "counters": self.counters().to_json(),
            "fields": self.fields.iter().map(FieldResult::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Independent check of a candidate: rebuilds the window and asks the
/// classifier whether it is ANS.
pub fn verify_hit(window: &[Elem], field: &Field) -> bool {
    PeriodicSeq::new(field, window.to_vec()).and_then(|s| is_ans_sequence(&s)).unwrap_or(false)
}

/// Per-field data shared by the divisor tasks.
struct Host {
    field: Field,
    m: usize,
    /// powers[j] = alpha^j
    powers: Vec<Elem>,
    index: ExpIndex,
}

enum ExpIndex {
    Table(Vec<u8>),
    Map(HashMap<u32, u8>),
}

const NOT_IN_M: u8 = u8::MAX;

impl ExpIndex {
    fn get(&self, code: u32) -> u8 {
        match self {
            ExpIndex::Table(t) => t[code as usize],
            ExpIndex::Map(h) => h.get(&code).copied().unwrap_or(NOT_IN_M),
        }
    }
}

impl Host {
    fn new(field: &Field, m: usize) -> Result<Host> {
        let alpha =
            field.primitive_mth_root(m as u64).ok_or(crate::Error::NoRootOfUnity { m: m as u64, q: field.size() })?;
        let powers: Vec<Elem> = (0..m as u64).map(|j| field.pow(alpha, j)).collect();
        let index = if field.size() <= 1 << 24 {
            let mut t = vec![NOT_IN_M; field.size() as usize];
            for (j, a) in powers.iter().enumerate() {
                t[a.code() as usize] = j as u8;
            }
            ExpIndex::Table(t)
        } else {
            ExpIndex::Map(powers.iter().enumerate().map(|(j, a)| (a.code(), j as u8)).collect())
        };
        Ok(Host { field: field.clone(), m, powers, index })
    }

    /// prod(x - alpha^k) over k in the subset.
    fn divisor_poly(&self, subset: u64) -> Poly {
        let roots: Vec<Elem> = (0..self.m).filter(|k| subset >> k & 1 == 1).map(|k| self.powers[k]).collect();
        Poly::from_roots(&self.field, &roots)
    }

    fn exps_to_window(&self, exps: &[u8]) -> Vec<Elem> {
        exps.iter().map(|&j| self.powers[j as usize]).collect()
    }
}

/// Seeds for one divisor of degree `deg`.
/// Saturates at u64::MAX, which no cap can reach.
fn seed_count(m: u64, deg: u64, normalize: bool) -> u64 {
    let (n, k) = if normalize { (m - 1, deg - 1) } else { (m, deg) };
    (n - k + 1..=n).fold(1u64, |acc, x| acc.saturating_mul(x))
}

#[derive(Clone, Debug)]
struct Divisor {
    subset: u64,
    degree: u64,
    seeds: u64,
    pruned: bool,
}

fn divisors_for(m: u64, normalize: bool, debug: bool) -> Result<Vec<Divisor>> {
    let exps: Vec<u64> = (1..m).filter(|&k| arith::gcd(k, m) > 1).collect();
    if exps.len() > MAX_DIVISOR_EXPONENTS {
        return Err(invalid(format!("m = {m} has 2^{} candidate divisors", exps.len())));
    }
    let mut out = Vec::new();
    for mask in 1u64..(1 << exps.len()) {
        let chosen: Vec<u64> = (0..exps.len()).filter(|i| mask >> i & 1 == 1).map(|i| exps[i]).collect();
        let g = chosen.iter().fold(m, |acc, &k| arith::gcd(acc, k));
        let subset = chosen.iter().fold(0u64, |acc, &k| acc | 1 << k);
        let degree = chosen.len() as u64;
        out.push(Divisor { subset, degree, seeds: seed_count(m, degree, normalize), pruned: g != 1 && !debug });
    }
    // key order: degree, then the sorted exponent list
    out.sort_by_key(|d| {
        let exps: Vec<u64> = (0..m).filter(|k| d.subset >> k & 1 == 1).collect();
        (d.degree, exps)
    });
    Ok(out)
}

/// Runs every injective seed of one divisor; returns hit exponent windows.
fn run_divisor(host: &Host, div: &Divisor, normalize: bool) -> (Vec<Vec<u8>>, u64) {
    let k = &host.field;
    let m = host.m;
    let deg = div.degree as usize;
    let g = host.divisor_poly(div.subset);
    let e = k.degree() as usize;
    let p = k.characteristic();
    // prod[(i * m + j) * e ..][..e] = digits of -g_i alpha^j
    let mut prod = vec![0u32; deg * m * e];
    for i in 0..deg {
        for j in 0..m {
            let c = k.neg(k.mul(g.coeff(i), host.powers[j]));
            let digits = k.coeffs(c);
            prod[(i * m + j) * e..][..e].copy_from_slice(&digits);
        }
    }
    let mut pow_p = vec![1u64; e];
    for i in 1..e {
        pow_p[i] = pow_p[i - 1] * p;
    }
    let next_term = |buf: &[u8]| -> u8 {
        let n = buf.len();
        let mut code = 0u64;
        let mut acc = [0u64; 32];
        for i in 0..deg {
            let base = (i * m + buf[n - deg + i] as usize) * e;
            for (a, &d) in acc[..e].iter_mut().zip(&prod[base..base + e]) {
                *a += d as u64;
            }
        }
        for t in 0..e {
            code += (acc[t] % p) * pow_p[t];
        }
        host.index.get(code as u32)
    };

    let mut hits = Vec::new();
    let mut enumerated = 0u64;
    let mut used = vec![false; m];
    let mut seed: Vec<u8> = Vec::with_capacity(deg);
    let mut buf: Vec<u8> = Vec::with_capacity(m + deg);

    // depth-first over injective seeds in lexicographic exponent order
    fn rec_seeds(
        depth: usize,
        deg: usize,
        m: usize,
        used: &mut [bool],
        seed: &mut Vec<u8>,
        visit: &mut dyn FnMut(&[u8], &[bool]),
    ) {
        if depth == deg {
            visit(seed, used);
            return;
        }
        for j in 0..m {
            if used[j] {
                continue;
            }
            used[j] = true;
            seed.push(j as u8);
            rec_seeds(depth + 1, deg, m, used, seed, visit);
            seed.pop();
            used[j] = false;
        }
    }

    let mut visit = |seed: &[u8], used_seed: &[bool]| {
        enumerated += 1;
        buf.clear();
        buf.extend_from_slice(seed);
        let mut seen = used_seed.to_vec();
        while buf.len() < m {
            let t = next_term(&buf);
            if t == NOT_IN_M || seen[t as usize] {
                return;
            }
            seen[t as usize] = true;
            buf.push(t);
        }
        // wrap-around: the next deg terms must restart the window
        for i in 0..deg {
            let t = next_term(&buf);
            if t != buf[i] {
                return;
            }
            buf.push(t);
        }
        buf.truncate(m);
        hits.push(buf.clone());
    };

    if normalize {
        used[0] = true;
        seed.push(0);
        rec_seeds(1, deg, m, &mut used, &mut seed, &mut visit);
    } else {
        rec_seeds(0, deg, m, &mut used, &mut seed, &mut visit);
    }

    // keep windows whose minimal recursion is exactly g
    let hits = hits
        .into_iter()
        .filter(|w| {
            let s = PeriodicSeq::new(k, host.exps_to_window(w)).expect("distinct entries");
            minimal_recursion(&s) == g
        })
        .collect();
    (hits, enumerated)
}

/// Lexicographically least exponent vector among (c s_{n+d}), c in M:
/// scaling adds a constant to every exponent, so each rotation is shifted
/// to start at exponent 0.
pub fn canonical_exponents(exps: &[u8], m: usize) -> Vec<u8> {
    (0..exps.len())
        .map(|d| {
            let base = exps[d] as usize;
            (0..exps.len()).map(|n| ((exps[(n + d) % exps.len()] as usize + m - base) % m) as u8).collect::<Vec<u8>>()
        })
        .min()
        .unwrap_or_default()
}

/// Canonical class representative of a window presenting the order-m
/// group generated by `alpha`, ordering elements by their exponent.
pub fn canonical_window(window: &[Elem], field: &Field, alpha: Elem) -> Result<Vec<Elem>> {
    let m = window.len();
    let powers: Vec<Elem> = (0..m as u64).map(|j| field.pow(alpha, j)).collect();
    let exps = window
        .iter()
        .map(|a| powers.iter().position(|b| b == a).map(|j| j as u8))
        .collect::<Option<Vec<u8>>>()
        .ok_or_else(|| invalid("window is not inside <alpha>"))?;
    Ok(canonical_exponents(&exps, m).into_iter().map(|j| powers[j as usize]).collect())
}

struct Task {
    field_idx: usize,
    div: Divisor,
}

fn in_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| invalid(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Runs the search. `threads == Some(1)` runs every task on the calling
/// thread; `None` uses rayon's global pool.
pub fn search_ans(spec: &SearchSpec, threads: Option<usize>) -> Result<SearchReport> {
    if spec.m < 2 || spec.m > MAX_M {
        return Err(invalid(format!("search needs 2 <= m <= {MAX_M}")));
    }
    if arith::is_prime_power(spec.m) && !spec.debug_enumerate {
        return Ok(SearchReport {
            spec: spec.clone(),
            short_circuit: Some("prime power size".to_string()),
            fields: Vec::new(),
        });
    }
    let hosts = match &spec.primes {
        Some(ps) => host_fields(spec.m, ps)?,
        None => enumerate_host_fields(spec.m, spec.p_max)?,
    };
    let m = spec.m as usize;
    let divisors = divisors_for(spec.m, spec.normalize, spec.debug_enumerate)?;

    let mut results: Vec<FieldResult> = Vec::new();
    let mut prepared: Vec<Option<Host>> = Vec::new();
    let mut tasks = Vec::new();
    for (idx, h) in hosts.into_iter().enumerate() {
        let mut counters = Counters::default();
        let mut alpha = None;
        let host = match &h.field {
            Some(k) => {
                let host = Host::new(k, m)?;
                alpha = Some(host.powers[1 % m]);
                Some(host)
            }
            None => None,
        };
        let mut budget = spec.cap.unwrap_or(u64::MAX);
        let mut capped = false;
        for d in &divisors {
            counters.theoretical = counters.theoretical.saturating_add(d.seeds);
            counters.divisors += 1;
            if host.is_none() {
                counters.skipped = counters.skipped.saturating_add(d.seeds);
                counters.divisors_skipped += 1;
            } else if d.pruned {
                counters.pruned = counters.pruned.saturating_add(d.seeds);
                counters.divisors_pruned += 1;
            } else if capped || d.seeds > budget {
                capped = true;
                counters.skipped = counters.skipped.saturating_add(d.seeds);
                counters.divisors_skipped += 1;
            } else {
                budget -= d.seeds;
                tasks.push(Task { field_idx: idx, div: d.clone() });
            }
        }
        let exhaustive = host.is_some() && counters.skipped == 0;
        prepared.push(host);
        results.push(FieldResult {
            host: h,
            alpha,
            hits: Vec::new(),
            rejected: 0,
            classes: Vec::new(),
            counters,
            exhaustive,
        });
    }

    let run = |t: &Task| {
        let host = prepared[t.field_idx].as_ref().expect("tasks only for built fields");
        run_divisor(host, &t.div, spec.normalize)
    };
    let outputs: Vec<(Vec<Vec<u8>>, u64)> = if threads == Some(1) {
        tasks.iter().map(run).collect()
    } else {
        in_pool(threads, || tasks.par_iter().map(run).collect())?
    };

    for (t, (hits, enumerated)) in tasks.iter().zip(outputs) {
        let host = prepared[t.field_idx].as_ref().expect("built");
        let res = &mut results[t.field_idx];
        res.counters.enumerated += t.div.seeds;
        debug_assert_eq!(enumerated, t.div.seeds);
        let g = host.divisor_poly(t.div.subset);
        for exps in hits {
            let window = host.exps_to_window(&exps);
            if verify_hit(&window, &host.field) {
                res.hits.push(Hit { window, f_s: g.clone() });
            } else {
                res.rejected += 1;
            }
        }
    }

    for (res, host) in results.iter_mut().zip(&prepared) {
        let Some(host) = host else { continue };
        let mut classes: BTreeMap<Vec<u8>, HitClass> = BTreeMap::new();
        for h in &res.hits {
            let exps: Vec<u8> = h.window.iter().map(|a| host.index.get(a.code())).collect();
            let canon = canonical_exponents(&exps, m);
            classes
                .entry(canon.clone())
                .or_insert_with(|| HitClass { canonical: host.exps_to_window(&canon), f_s: h.f_s.clone(), hits: 0 })
                .hits += 1;
        }
        res.classes = classes.into_values().collect();
    }

    Ok(SearchReport { spec: spec.clone(), short_circuit: None, fields: results })
}

/// Largest q accepted by [`search_nonstandard_quadratic`] by default.
pub const DEFAULT_QUAD_BOUND: u64 = 64;

#[derive(Clone, Debug)]
pub struct QuadHit {
    pub a: Elem,
    pub b: Elem,
    pub f: Poly,
    /// |<a, b>|
    pub group_order: u64,
    /// Non-cyclic windows with s_0 = 1 and f_s = f.
    pub windows: u64,
    /// The first such window in seed order.
    pub example: Vec<Elem>,
    pub verified: bool,
}

#[derive(Clone, Debug)]
pub struct FamilyCheck {
    pub a: Elem,
    pub order: u64,
    pub found: bool,
}

#[derive(Clone, Debug)]
pub struct QuadReport {
    pub field: Field,
    pub pairs: u64,
    pub hits: Vec<QuadHit>,
    /// x^2 - a^2 for each a of even order > 4, taken up to sign of a.
    pub family: Vec<FamilyCheck>,
}

impl QuadReport {
    pub fn family_complete(&self) -> bool {
        self.family.iter().all(|c| c.found)
    }

    pub fn all_verified(&self) -> bool {
        self.hits.iter().all(|h| h.verified)
    }

    pub fn to_json(&self) -> Value {
        let k = &self.field;
        json!({
            "field": field_spec(k),
            "q": k.size(),
            "pairs": self.pairs,
            "all_verified": self.all_verified(),
            "family_complete": self.family_complete(),
            "hits": self.hits.iter().map(|h| json!({
                "a": elem_json(k, h.a),
                "b": elem_json(k, h.b),
                "f": poly_json(&h.f),
                "f_text": poly_to_string(&h.f),
                "group_order": h.group_order,
                "windows": h.windows,
                "example": elems_json(k, &h.example),
                "verified": h.verified,
            })).collect::<Vec<_>>(),
            "family": self.family.iter().map(|c| json!({
                "a": elem_json(k, c.a),
                "order": c.order,
                "found": c.found,
            })).collect::<Vec<_>>(),
        })
    }
}

/// F_q for a prime power q.
pub fn field_of_size(q: u64) -> Result<Field> {
    let f = arith::factorize(q);
    match f.as_slice() {
        [(p, e)] => make_field(*p, *e, None),
        _ => Err(invalid(format!("{q} is not a prime power"))),
    }
}

/// For every f = (x - a)(x - b) with a < b in F_q^*, enumerates the seeds
/// (1, s_1) and records the non-cyclic windows listing <a, b> whose
/// minimal recursion is f itself.
pub fn search_nonstandard_quadratic(q: u64, bound: u64) -> Result<QuadReport> {
    if q > bound {
        return Err(invalid(format!("q = {q} exceeds the bound {bound}")));
    }
    let k = field_of_size(q)?;
    let nonzero: Vec<Elem> = k.nonzero_elements().collect();
    let mut hits = Vec::new();
    let mut pairs = 0u64;
    for (i, &a) in nonzero.iter().enumerate() {
        for &b in &nonzero[i + 1..] {
            pairs += 1;
            let f = Poly::from_roots(&k, &[a, b]);
            let group = k.group_generated(&[a, b])?;
            let order = group.order();
            let (c0, c1) = (f.coeff(0), f.coeff(1));
            let mut count = 0u64;
            let mut example: Option<Vec<Elem>> = None;
            for &s1 in &nonzero {
                let mut w = vec![Elem::ONE, s1];
                while (w.len() as u64) < order + 2 {
                    let n = w.len();
                    let t = k.neg(k.add(k.mul(c1, w[n - 1]), k.mul(c0, w[n - 2])));
                    w.push(t);
                }
                let m = order as usize;
                if w[m] != w[0] || w[m + 1] != w[1] {
                    continue;
                }
                w.truncate(m);
                let mut sorted = w.clone();
                sorted.sort();
                if sorted != group.elements() {
                    continue;
                }
                let Ok(s) = PeriodicSeq::new(&k, w.clone()) else { continue };
                if crate::classify::cyclic_ratio(&s).is_some() || minimal_recursion(&s) != f {
                    continue;
                }
                count += 1;
                example.get_or_insert(w);
            }
            if let Some(example) = example {
                let s = PeriodicSeq::new(&k, example.clone())?;
                let r = crate::classify::classify_presentation(&s, Some(&f))?;
                let verified = r.is_group() && !r.is_cyclic() && r.f_s == f && r.zeros_generate_group;
                hits.push(QuadHit { a, b, f, group_order: order, windows: count, example, verified });
            }
        }
    }
    let mut family = Vec::new();
    for &a in &nonzero {
        let order = k.mul_order(a)?;
        let neg = k.neg(a);
        if order % 2 == 0 && order > 4 && a < neg {
            let f = Poly::from_roots(&k, &[a, neg]);
            let found = hits.iter().any(|h| h.f == f);
            family.push(FamilyCheck { a, order, found });
        }
    }
    Ok(QuadReport { field: k, pairs, hits, family })
}
