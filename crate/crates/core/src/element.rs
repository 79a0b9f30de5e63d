use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use crate::{Algebra, Blade, Error, Mask, Result, Scalar, Signature};

/// Sparse element: nonzero coefficients keyed by blade mask.
///
/// Elements do not carry their signature; products take it explicitly and
/// reject masks that do not fit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element<T> {
    coeffs: BTreeMap<Mask, T>,
}

impl<T: Scalar> Default for Element<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> Element<T> {
    pub fn zero() -> Self {
        Self { coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::scalar(T::one())
    }

    pub fn scalar(value: T) -> Self {
        Self::term(0, value)
    }

    pub fn term(mask: Mask, value: T) -> Self {
        let mut e = Self::zero();
        e.add_term(mask, value);
        e
    }

    pub fn blade(b: Blade) -> Self {
        Self::term(b.mask, T::one().signed(b.sign()))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Mask, T)>) -> Self {
        let mut e = Self::zero();
        for (m, v) in terms {
            e.add_term(m, v);
        }
        e
    }

    /// Add `value` to the coefficient of `mask`, dropping it if it cancels.
    pub fn add_term(&mut self, mask: Mask, value: T) {
        if value.is_zero() {
            return;
        }
        match self.coeffs.remove(&mask) {
            Some(old) => {
                let v = old + value;
                if !v.is_zero() {
                    self.coeffs.insert(mask, v);
                }
            }
            None => {
                self.coeffs.insert(mask, value);
            }
        }
    }

    pub fn coeff(&self, mask: Mask) -> T {
        self.coeffs.get(&mask).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Mask, &T)> {
        self.coeffs.iter().map(|(m, v)| (*m, v))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn max_mask(&self) -> Option<Mask> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::from_terms(self.terms().map(|(m, v)| (m, v.clone() * k.clone())))
    }

    /// Keep the scalar part, negate every pure coefficient.
    pub fn conjugate(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(m, v)| (*m, if *m == 0 { v.clone() } else { -v.clone() }))
                .collect(),
        }
    }

    pub fn check(&self, sig: &Signature) -> Result<()> {
        match self.max_mask() {
            Some(m) => sig.check_mask(m),
            None => Ok(()),
        }
    }

    /// Bilinear product through the blade sign function. Much faster than
    /// [`element_mul`] but not independent of the structure constants.
    pub fn mul_fast(&self, alg: &Algebra, other: &Self) -> Self {
        let mut out = Self::zero();
        for (x, a) in self.terms() {
            for (y, b) in other.terms() {
                let v = (a.clone() * b.clone()).signed(alg.sign(x, y));
                out.add_term(x ^ y, v);
            }
        }
        out
    }
}

impl<T: Scalar> Add for Element<T> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (m, v) in rhs.coeffs {
            self.add_term(m, v);
        }
        self
    }
}

impl<T: Scalar> Sub for Element<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Scalar> Neg for Element<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { coeffs: self.coeffs.into_iter().map(|(m, v)| (m, -v)).collect() }
    }
}

/// Product by the pair recursion `(a,b)(c,d) = (ac - eps d*b, da + bc*)`,
/// splitting on the highest generator. This never touches the bit sign
/// function, so it serves as the oracle for it.
pub fn element_mul<T: Scalar>(sig: &Signature, a: &Element<T>, b: &Element<T>) -> Result<Element<T>> {
    a.check(sig)?;
    b.check(sig)?;
    Ok(Element { coeffs: pair_mul(sig.eps_slice(), sig.generators(), &a.coeffs, &b.coeffs) })
}

/// Oracle product of two positive blades.
pub fn oracle_blade_mul(sig: &Signature, x: Mask, y: Mask) -> Result<Blade> {
    let p = element_mul::<i64>(sig, &Element::term(x, 1), &Element::term(y, 1))?;
    let (m, v) = p.terms().next().ok_or_else(|| Error::Invariant("blade product vanished".into()))?;
    Ok(Blade::new(m, if *v < 0 { -1 } else { 1 }))
}

type Coeffs<T> = BTreeMap<Mask, T>;

fn pair_mul<T: Scalar>(eps: &[i8], level: usize, a: &Coeffs<T>, b: &Coeffs<T>) -> Coeffs<T> {
    if a.is_empty() || b.is_empty() {
        return Coeffs::new();
    }
    if level == 0 {
        let v = a[&0].clone() * b[&0].clone();
        return if v.is_zero() { Coeffs::new() } else { Coeffs::from([(0, v)]) };
    }
    let bit: Mask = 1 << (level - 1);
    let (p, q) = halves(a, bit);
    let (r, s) = halves(b, bit);
    let sub = level - 1;

    let mut low = pair_mul(eps, sub, &p, &r);
    let t = pair_mul(eps, sub, &conj(&s), &q);
    // low = pr - eps s* q
    accumulate(&mut low, t, eps[sub] == 1);

    let mut high = pair_mul(eps, sub, &s, &p);
    accumulate(&mut high, pair_mul(eps, sub, &q, &conj(&r)), false);

    for (m, v) in high {
        low.insert(m | bit, v);
    }
    low
}

fn halves<T: Scalar>(a: &Coeffs<T>, bit: Mask) -> (Coeffs<T>, Coeffs<T>) {
    let mut lo = Coeffs::new();
    let mut hi = Coeffs::new();
    for (m, v) in a {
        if m & bit == 0 {
            lo.insert(*m, v.clone());
        } else {
            hi.insert(m & !bit, v.clone());
        }
    }
    (lo, hi)
}

fn conj<T: Scalar>(a: &Coeffs<T>) -> Coeffs<T> {
    a.iter()
        .map(|(m, v)| (*m, if *m == 0 { v.clone() } else { -v.clone() }))
        .collect()
}

fn accumulate<T: Scalar>(acc: &mut Coeffs<T>, other: Coeffs<T>, negate: bool) {
    for (m, v) in other {
        let v = if negate { -v } else { v };
        let sum = match acc.remove(&m) {
            Some(old) => old + v,
            None => v,
        };
        if !sum.is_zero() {
            acc.insert(m, sum);
        }
    }
}
