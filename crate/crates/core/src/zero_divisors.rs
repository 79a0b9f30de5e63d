use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::assoc::classify;
use crate::cycles::silo_types;
use crate::{
    basis_label, element_mul, parallel, Algebra, Blade, Element, Error, Mask, NonAssocType, Rational,
    RationalElement, Result, Signature, Silo, Triad,
};

/// `(x + sy*y)(u + tv*v) = 0` in canonical form: `x < y`, `u < v`, `x < u`
/// and `sy = +1`. The pair with both signs flipped is the same class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ZeroDivisorPair {
    pub x: Mask,
    pub y: Mask,
    pub u: Mask,
    pub v: Mask,
    pub tv: i8,
}

/// A two-blade sum given as `(mask, sign)` terms.
pub type TwoBlade = [(Mask, i8); 2];

impl ZeroDivisorPair {
    /// Normalize two signed two-blade sums. Does not check the product.
    pub fn canonical(f1: TwoBlade, f2: TwoBlade) -> Result<Self> {
        let masks = [f1[0].0, f1[1].0, f2[0].0, f2[1].0];
        let distinct: BTreeSet<Mask> = masks.iter().copied().collect();
        if distinct.len() != 4 || distinct.contains(&0) {
            return Err(Error::Domain(format!("zero-divisor factors need four distinct pure blades, got {masks:?}")));
        }
        // Scale each factor so its smaller blade has coefficient +1.
        let norm = |f: TwoBlade| {
            let (lo, hi) = if f[0].0 < f[1].0 { (f[0], f[1]) } else { (f[1], f[0]) };
            (lo.0, hi.0, lo.1 * hi.1)
        };
        let (a, b) = (norm(f1), norm(f2));
        let ((x, y, sy), (u, v, tv)) = if a.0 < b.0 { (a, b) } else { (b, a) };
        Ok(Self { x, y, u, v, tv: tv * sy })
    }

    pub fn sy(&self) -> i8 {
        1
    }

    pub fn masks(&self) -> [Mask; 4] {
        [self.x, self.y, self.u, self.v]
    }

    pub fn factor1(&self) -> TwoBlade {
        [(self.x, 1), (self.y, 1)]
    }

    pub fn factor2(&self) -> TwoBlade {
        [(self.u, 1), (self.v, self.tv)]
    }

    pub fn factors(&self) -> (RationalElement, RationalElement) {
        (two_blade_element(self.factor1()), two_blade_element(self.factor2()))
    }

    /// The other member of the sign class, `(x - y)(u - tv v)`.
    pub fn flipped_factors(&self) -> (RationalElement, RationalElement) {
        (
            two_blade_element([(self.x, 1), (self.y, -1)]),
            two_blade_element([(self.u, 1), (self.v, -self.tv)]),
        )
    }

    /// Exact product through the oracle.
    pub fn oracle_product(&self, sig: &Signature) -> Result<RationalElement> {
        let (a, b) = self.factors();
        element_mul(sig, &a, &b)
    }

    pub fn to_json(&self, sig: &Signature) -> Value {
        let t = |(m, s): (Mask, i8)| json!([basis_label(sig, m), s]);
        json!({
            "f1": self.factor1().map(t),
            "f2": self.factor2().map(t),
        })
    }

    pub fn display(&self, sig: &Signature) -> String {
        let l = |m| basis_label(sig, m);
        let op = if self.tv < 0 { '-' } else { '+' };
        format!("({} + {})({} {} {})", l(self.x), l(self.y), l(self.u), op, l(self.v))
    }
}

fn two_blade_element(f: TwoBlade) -> RationalElement {
    Element::from_terms(f.map(|(m, s)| (m, Rational::from_integer(s.into()))))
}

/// Product of two signed two-blade sums vanishes, via sign lookups.
pub fn product_vanishes(alg: &Algebra, f1: TwoBlade, f2: TwoBlade) -> bool {
    let mut acc: [(Mask, i32); 4] = [(0, 0); 4];
    let mut len = 0;
    for (m1, s1) in f1 {
        for (m2, s2) in f2 {
            let m = m1 ^ m2;
            let s = (s1 * s2 * alg.sign(m1, m2)) as i32;
            match acc[..len].iter_mut().find(|(k, _)| *k == m) {
                Some(slot) => slot.1 += s,
                None => {
                    acc[len] = (m, s);
                    len += 1;
                }
            }
        }
    }
    acc[..len].iter().all(|(_, s)| *s == 0)
}

/// Whether the squares condition `x^2 = y^2`, `u^2 = v^2` is imposed. The
/// paper's split examples mix squares, so by default it only applies (and
/// then trivially) to all-imaginary signatures.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SquaresRule {
    #[default]
    Relaxed,
    Strict,
}

#[inline]
fn pair_at(alg: &Algebra, rule: SquaresRule, x: Mask, y: Mask, u: Mask) -> Option<ZeroDivisorPair> {
    let v = x ^ y ^ u;
    if v <= u || v == y {
        return None;
    }
    if rule == SquaresRule::Strict {
        let sq = |m| alg.square_sign_unchecked(m);
        if sq(x) != sq(y) || sq(u) != sq(v) {
            return None;
        }
    }
    let xu_yv = alg.sign(x, u) * alg.sign(y, v);
    if xu_yv != alg.sign(x, v) * alg.sign(y, u) {
        return None;
    }
    Some(ZeroDivisorPair { x, y, u, v, tv: -xu_yv })
}

fn row(alg: &Algebra, rule: SquaresRule, x: Mask, n: Mask) -> impl Iterator<Item = ZeroDivisorPair> + '_ {
    (x + 1..n).flat_map(move |y| {
        (x + 1..n).filter(move |u| *u != y).filter_map(move |u| pair_at(alg, rule, x, y, u))
    })
}

/// Every canonical zero-divisor pair, sorted.
pub fn zd_direct_search(alg: &Algebra, threads: usize) -> Vec<ZeroDivisorPair> {
    zd_direct_search_with(alg, threads, SquaresRule::Relaxed)
}

pub fn zd_direct_search_with(alg: &Algebra, threads: usize, rule: SquaresRule) -> Vec<ZeroDivisorPair> {
    let n = alg.signature().dim() as Mask;
    let mut out: Vec<ZeroDivisorPair> = parallel::run(threads, || {
        (1..n).into_par_iter().flat_map_iter(|x| row(alg, rule, x, n).collect::<Vec<_>>()).collect()
    });
    out.sort_unstable();
    out
}

/// Count canonical pairs without materializing them.
pub fn zd_count(alg: &Algebra, threads: usize, rule: SquaresRule) -> u64 {
    let n = alg.signature().dim() as Mask;
    parallel::run(threads, || (1..n).into_par_iter().map(|x| row(alg, rule, x, n).count() as u64).sum())
}

/// Canonical pairs whose four blades all lie in `masks`.
pub fn zd_within(alg: &Algebra, masks: &[Mask], rule: SquaresRule) -> Vec<ZeroDivisorPair> {
    let set: BTreeSet<Mask> = masks.iter().copied().filter(|m| *m != 0).collect();
    let mut out = Vec::new();
    for &x in &set {
        for &y in set.range(x + 1..) {
            for &u in set.range(x + 1..) {
                if u == y || !set.contains(&(x ^ y ^ u)) {
                    continue;
                }
                if let Some(p) = pair_at(alg, rule, x, y, u) {
                    out.push(p);
                }
            }
        }
    }
    out.sort_unstable();
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ZdCensus {
    pub count: u64,
    /// Present only when a listing was requested and `n <= 8`.
    pub pairs: Option<Vec<ZeroDivisorPair>>,
}

pub const LISTING_MAX_LEVEL: usize = 8;

pub fn zd_census(alg: &Algebra, threads: usize, rule: SquaresRule, listing: bool) -> ZdCensus {
    if listing && alg.generators() <= LISTING_MAX_LEVEL {
        let pairs = zd_direct_search_with(alg, threads, rule);
        ZdCensus { count: pairs.len() as u64, pairs: Some(pairs) }
    } else {
        ZdCensus { count: zd_count(alg, threads, rule), pairs: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Mode {
    Prime,
    Dual,
    Extended,
    ExtendedDual,
}

impl Mode {
    pub const ALL: [Mode; 4] = [Mode::Prime, Mode::Dual, Mode::Extended, Mode::ExtendedDual];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Prime => "prime",
            Mode::Dual => "dual",
            Mode::Extended => "extended",
            Mode::ExtendedDual => "extended-dual",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A candidate `(f1)(f2)` built from a triad, with its oracle product.
#[derive(Clone, Debug)]
pub struct ModeCandidate {
    pub mode: Mode,
    pub f1: [Blade; 2],
    pub f2: [Blade; 2],
    pub product: RationalElement,
}

impl ModeCandidate {
    pub fn is_zero_divisor(&self) -> bool {
        self.product.is_zero()
    }

    pub fn pair(&self) -> Result<ZeroDivisorPair> {
        let t = |f: [Blade; 2]| f.map(|b| (b.mask, b.sign()));
        ZeroDivisorPair::canonical(t(self.f1), t(self.f2))
    }
}

/// Signed `a = c(bd)/c^2`, the blade completing `(a + b)(c + d)`.
pub fn prime_partner(alg: &Algebra, t: &Triad) -> Blade {
    let [b, c, d] = t.masks().map(Blade::positive);
    let a = alg.mul(c, alg.mul(b, d));
    if alg.square_sign_unchecked(t.c()) < 0 {
        -a
    } else {
        a
    }
}

fn candidate_factors(alg: &Algebra, t: &Triad, mode: Mode) -> ([Blade; 2], [Blade; 2]) {
    let [b, c, d] = t.masks().map(Blade::positive);
    let a = prime_partner(alg, t);
    let db = Blade::positive(t.d() ^ t.b());
    let a_ext = alg.mul(alg.mul(b, c), db);
    match mode {
        Mode::Prime => ([a, b], [c, d]),
        Mode::Dual => ([-d, b], [c, a]),
        Mode::Extended => ([a_ext, b], [c, db]),
        Mode::ExtendedDual => ([-db, b], [c, a_ext]),
    }
}

pub fn mode_transform(alg: &Algebra, t: &Triad, mode: Mode) -> Result<ModeCandidate> {
    t.check(alg)?;
    if t.is_ring() {
        return Err(Error::Degenerate(t.masks()));
    }
    let (f1, f2) = candidate_factors(alg, t, mode);
    let e = |f: [Blade; 2]| Element::blade(f[0]) + Element::blade(f[1]);
    let product = element_mul(alg.signature(), &e(f1), &e(f2))?;
    Ok(ModeCandidate { mode, f1, f2, product })
}

/// Modes whose candidate is an exact zero divisor.
pub fn mode_survey(alg: &Algebra, t: &Triad) -> Result<Vec<Mode>> {
    if t.is_ring() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for m in Mode::ALL {
        if mode_transform(alg, t, m)?.is_zero_divisor() {
            out.push(m);
        }
    }
    Ok(out)
}

/// Prime candidate vanishes, by sign lookups only.
fn prime_vanishes(alg: &Algebra, b: Mask, c: Mask, d: Mask) -> bool {
    let t = Triad::raw(b, c, d);
    let a = prime_partner(alg, &t);
    product_vanishes(alg, [(a.mask, a.sign()), (b, 1)], [(c, 1), (d, 1)])
}

/// The prime-mode pair of a type A or B triad.
///
/// For all-imaginary signatures such a triad always yields a zero divisor and
/// a failure is reported as a bug. Split signatures draw their zero divisors
/// from other triads as well, and an A/B triad there may not vanish, which
/// gives `None`.
pub fn zd_from_triad(alg: &Algebra, t: &Triad) -> Result<Option<ZeroDivisorPair>> {
    let kind = classify(alg, t)?;
    if !matches!(kind, NonAssocType::A | NonAssocType::B) {
        return Ok(None);
    }
    let cand = mode_transform(alg, t, Mode::Prime)?;
    if !cand.is_zero_divisor() {
        if alg.signature().is_imaginary() {
            return Err(Error::Invariant(format!(
                "type {kind} triad {:?} gives a nonzero prime product",
                t.masks()
            )));
        }
        return Ok(None);
    }
    cand.pair().map(Some)
}

/// A zero divisor placed in its orbit: which cycle of the representative's
/// group and which mode produced it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitMember {
    pub cycle: usize,
    pub mode: Mode,
    pub pair: ZeroDivisorPair,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimaryOrbit {
    pub representative: Triad,
    pub members: Vec<OrbitMember>,
}

impl PrimaryOrbit {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn modes(&self) -> Vec<Mode> {
        let set: BTreeSet<Mode> = self.members.iter().map(|m| m.mode).collect();
        set.into_iter().collect()
    }
}

pub const PRIMARIES_MAX_LEVEL: usize = 8;

/// Structural families of a pair: the ring of one blade from each factor,
/// and the coset of the partner of the first one.
fn families(p: &ZeroDivisorPair) -> [([Mask; 3], Mask, Mask, Mask); 4] {
    let f = |b: Mask, k1: Mask, c: Mask| {
        let mut ring = [b, c, b ^ c];
        ring.sort_unstable();
        (ring, b, c, k1)
    };
    [
        f(p.x, p.y, p.u),
        f(p.x, p.y, p.v),
        f(p.y, p.x, p.u),
        f(p.y, p.x, p.v),
    ]
}

/// Least triad `(r0, r1, d)` over the pair's families with `d` in the
/// partner coset, `d > r1` and a vanishing prime candidate.
fn representative(alg: &Algebra, p: &ZeroDivisorPair) -> Option<Triad> {
    let mut best: Option<Triad> = None;
    for (ring, _, _, k1) in families(p) {
        for d in [k1, k1 ^ ring[0], k1 ^ ring[1], k1 ^ ring[2]] {
            if d > ring[1] && prime_vanishes(alg, ring[0], ring[1], d) {
                let t = Triad::raw(ring[0], ring[1], d);
                if best.map_or(true, |b| t < b) {
                    best = Some(t);
                }
            }
        }
    }
    best
}

fn place(p: &ZeroDivisorPair, rep: &Triad) -> Option<(usize, Mode)> {
    let (r0, r1, d) = (rep.b(), rep.c(), rep.d());
    let r2 = r0 ^ r1;
    let mut ring = [r0, r1, r2];
    ring.sort_unstable();
    let coset = [d, d ^ r0, d ^ r1, d ^ r2];
    for (fr, b, c, k1) in families(p) {
        if fr != ring || !coset.contains(&k1) {
            continue;
        }
        let k2 = k1 ^ b ^ c;
        let (lo, hi, k) = if b < c { (b, c, k1) } else { (c, b, k2) };
        let cycle = match (lo, hi) {
            _ if lo == ring[0] && hi == ring[1] => 0,
            _ if lo == ring[0] && hi == ring[2] => 1,
            _ => 2,
        };
        let mode = if k == lo ^ hi ^ d {
            Mode::Prime
        } else if k == d {
            Mode::Dual
        } else if k == hi ^ d {
            Mode::Extended
        } else {
            Mode::ExtendedDual
        };
        return Some((cycle, mode));
    }
    None
}

/// Group all canonical pairs into orbits under cycle shifts and modes.
///
/// Each pair goes to the least triad `(b, c, d)` that explains it: `b < c`
/// are the two smallest blades of the ring spanned by one blade of each
/// factor, `d > c` lies in the partner coset, and the prime candidate of
/// `(b, c, d)` vanishes.
pub fn zd_primaries(alg: &Algebra, threads: usize) -> Result<Vec<PrimaryOrbit>> {
    if alg.generators() > PRIMARIES_MAX_LEVEL {
        return Err(Error::Domain(format!(
            "primary reduction is limited to {PRIMARIES_MAX_LEVEL} generators"
        )));
    }
    let pairs = zd_direct_search(alg, threads);
    let placed: Vec<Result<(Triad, OrbitMember)>> = parallel::run(threads, || {
        pairs
            .par_iter()
            .map(|p| {
                let rep = representative(alg, p).ok_or_else(|| {
                    Error::Invariant(format!("pair {p:?} has no representative triad"))
                })?;
                let (cycle, mode) = place(p, &rep)
                    .ok_or_else(|| Error::Invariant(format!("pair {p:?} does not fit {rep:?}")))?;
                Ok((rep, OrbitMember { cycle, mode, pair: *p }))
            })
            .collect()
    });
    let mut orbits: BTreeMap<Triad, Vec<OrbitMember>> = BTreeMap::new();
    for r in placed {
        let (rep, m) = r?;
        orbits.entry(rep).or_default().push(m);
    }
    Ok(orbits
        .into_iter()
        .map(|(representative, mut members)| {
            members.sort_by_key(|m| (m.cycle, m.mode, m.pair));
            PrimaryOrbit { representative, members }
        })
        .collect())
}

/// Grouping used for the level-5 primary tables, keyed on the ring of the
/// representative and the silos found on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PrimaryCategory {
    /// Only AAA orbits, ring inside the first three generators.
    OctonionAaa,
    /// Only AAA orbits, ring reaching past the first three generators.
    IndependentAaa,
    /// Both AAA and BBA orbits on the same ring.
    OverlappingAaaBba,
    BbaOnly,
    Other,
}

/// Zero-divisor counts per [`PrimaryCategory`].
pub fn categorize(alg: &Algebra, orbits: &[PrimaryOrbit]) -> Result<BTreeMap<PrimaryCategory, u64>> {
    let mut by_ring: BTreeMap<(Mask, Mask), (BTreeSet<Option<Silo>>, u64)> = BTreeMap::new();
    for o in orbits {
        let t = o.representative;
        let silo = Silo::from_types(silo_types(alg, t.b(), t.c(), t.d())?);
        let e = by_ring.entry((t.b(), t.c())).or_default();
        e.0.insert(silo);
        e.1 += o.size() as u64;
    }
    let mut out = BTreeMap::new();
    for ((b, c), (silos, n)) in by_ring {
        let aaa = silos.contains(&Some(Silo::AAA));
        let bba = silos.contains(&Some(Silo::BBA));
        let only = |s| silos.len() == 1 && silos.contains(&Some(s));
        let cat = if only(Silo::AAA) {
            if (b | c) < 8 {
                PrimaryCategory::OctonionAaa
            } else {
                PrimaryCategory::IndependentAaa
            }
        } else if aaa && bba && silos.len() == 2 {
            PrimaryCategory::OverlappingAaaBba
        } else if only(Silo::BBA) {
            PrimaryCategory::BbaOnly
        } else {
            PrimaryCategory::Other
        };
        *out.entry(cat).or_insert(0) += n;
    }
    Ok(out)
}
