use std::fmt;
use std::ops::Neg;

use crate::{Error, Mask, Result, Signature};

/// A signed basis element. Mask bit `i` is generator `i + 1`; mask 0 is the unit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Blade {
    pub mask: Mask,
    sign: i8,
}

impl Blade {
    pub const ONE: Blade = Blade { mask: 0, sign: 1 };

    pub fn new(mask: Mask, sign: i8) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        Self { mask, sign: if sign < 0 { -1 } else { 1 } }
    }

    pub fn positive(mask: Mask) -> Self {
        Self { mask, sign: 1 }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn is_positive(&self) -> bool {
        self.sign == 1
    }

    /// The positive blade with the same mask.
    pub fn abs(self) -> Self {
        Self::positive(self.mask)
    }
}

impl Neg for Blade {
    type Output = Blade;
    fn neg(self) -> Blade {
        Blade { mask: self.mask, sign: -self.sign }
    }
}

/// Structure-constant sign `S(x, y)` with `o_x * o_y = S(x, y) o_{x^y}`.
///
/// Iterative form of the generator recursion: walk generators from the top,
/// swapping the operands when the right one alone carries the bit and
/// picking up a conjugation sign whenever the residual right operand is pure.
#[inline]
pub fn product_sign(eps: &[i8], mut x: Mask, mut y: Mask) -> i8 {
    let mut s = 1i8;
    let top = Mask::BITS - (x | y).leading_zeros();
    for k in (0..top).rev() {
        let bit = 1 << k;
        let xb = x & bit != 0;
        let yb = y & bit != 0;
        x &= !bit;
        y &= !bit;
        match (xb, yb) {
            (false, false) => {}
            (false, true) => std::mem::swap(&mut x, &mut y),
            (true, false) => {
                if y != 0 {
                    s = -s;
                }
            }
            (true, true) => {
                if eps[k as usize] == 1 {
                    s = -s;
                }
                if y != 0 {
                    s = -s;
                }
                std::mem::swap(&mut x, &mut y);
            }
        }
    }
    s
}

/// Dense memo of [`product_sign`] for every pair of masks.
#[derive(Clone, Debug)]
pub struct SignTable {
    level: usize,
    signs: Vec<i8>,
}

impl SignTable {
    /// Largest level for which [`Algebra`] builds a table automatically.
    pub const MAX_LEVEL: usize = 10;

    pub fn new(sig: &Signature) -> Self {
        let level = sig.generators();
        let dim = 1usize << level;
        let mut signs = vec![1i8; dim * dim];
        for x in 0..dim {
            let row = &mut signs[x * dim..(x + 1) * dim];
            for (y, s) in row.iter_mut().enumerate() {
                *s = product_sign(sig.eps_slice(), x as Mask, y as Mask);
            }
        }
        Self { level, signs }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    #[inline]
    pub fn get(&self, x: Mask, y: Mask) -> i8 {
        self.signs[((x as usize) << self.level) | y as usize]
    }
}

/// A signature together with an optional sign table. This is the handle
/// every classification routine takes.
#[derive(Clone, Debug)]
pub struct Algebra {
    sig: Signature,
    table: Option<SignTable>,
}

impl Algebra {
    pub fn new(sig: Signature) -> Self {
        let table = (sig.generators() <= SignTable::MAX_LEVEL).then(|| SignTable::new(&sig));
        Self { sig, table }
    }

    /// Skip the table and always recurse. Used to cross-check the table.
    pub fn without_table(sig: Signature) -> Self {
        Self { sig, table: None }
    }

    pub fn imaginary(n: usize) -> Result<Self> {
        Ok(Self::new(Signature::imaginary(n)?))
    }

    pub fn split(q: usize, p: usize) -> Result<Self> {
        Ok(Self::new(Signature::split(q, p)?))
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn generators(&self) -> usize {
        self.sig.generators()
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    /// `S(x, y)` for positive blades. Masks are not range checked.
    #[inline]
    pub fn sign(&self, x: Mask, y: Mask) -> i8 {
        match &self.table {
            Some(t) => t.get(x, y),
            None => product_sign(self.sig.eps_slice(), x, y),
        }
    }

    /// Unchecked blade product.
    #[inline]
    pub fn mul(&self, x: Blade, y: Blade) -> Blade {
        Blade::new(x.mask ^ y.mask, x.sign * y.sign * self.sign(x.mask, y.mask))
    }

    pub fn blade_mul(&self, x: Blade, y: Blade) -> Result<Blade> {
        self.sig.check_mask(x.mask)?;
        self.sig.check_mask(y.mask)?;
        Ok(self.mul(x, y))
    }

    /// Square of a pure blade: `-prod eps_i` over its generators.
    pub fn square_sign(&self, mask: Mask) -> Result<i8> {
        self.sig.check_mask(mask)?;
        if mask == 0 {
            return Err(Error::UnitBlade);
        }
        Ok(self.square_sign_unchecked(mask))
    }

    #[inline]
    pub(crate) fn square_sign_unchecked(&self, mask: Mask) -> i8 {
        let prod = (0..self.generators())
            .filter(|i| mask & (1 << i) != 0)
            .fold(1i8, |acc, i| acc * self.sig.eps(i));
        -prod
    }

    /// Sum of the square signs of all pure blades.
    pub fn pure_trace(&self) -> i64 {
        (1..self.sig.dim() as Mask)
            .map(|m| self.square_sign_unchecked(m) as i64)
            .sum()
    }

    pub fn label(&self, mask: Mask) -> String {
        basis_label(&self.sig, mask)
    }

    pub fn check_mask(&self, mask: Mask) -> Result<()> {
        self.sig.check_mask(mask)
    }
}

/// Imaginary (`o`) or unitary (`u`) generator family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    Imaginary,
    Unitary,
}

impl GeneratorKind {
    fn eps(self) -> i8 {
        match self {
            GeneratorKind::Imaginary => 1,
            GeneratorKind::Unitary => -1,
        }
    }

    fn letter(self) -> char {
        match self {
            GeneratorKind::Imaginary => 'o',
            GeneratorKind::Unitary => 'u',
        }
    }
}

/// Bit index of the `index`-th (one based) generator of the given kind.
pub fn generator_bit(sig: &Signature, kind: GeneratorKind, index: usize) -> Result<usize> {
    if index == 0 {
        return Err(Error::Domain("generator indices start at 1".into()));
    }
    sig.eps_slice()
        .iter()
        .enumerate()
        .filter(|(_, e)| **e == kind.eps())
        .nth(index - 1)
        .map(|(bit, _)| bit)
        .ok_or_else(|| {
            Error::Domain(format!("{}{} is not a generator of {}", kind.letter(), index, sig))
        })
}

/// Label of a positive blade, e.g. `o12`, `o1u1`, `o[1,10]`. Mask 0 is `1`.
pub fn basis_label(sig: &Signature, mask: Mask) -> String {
    if mask == 0 {
        return "1".to_string();
    }
    let mut o = Vec::new();
    let mut u = Vec::new();
    let (mut oi, mut ui) = (0usize, 0usize);
    for (bit, e) in sig.eps_slice().iter().enumerate() {
        if *e == 1 {
            oi += 1;
        } else {
            ui += 1;
        }
        if mask & (1 << bit) != 0 {
            if *e == 1 {
                o.push(oi);
            } else {
                u.push(ui);
            }
        }
    }
    let mut out = String::new();
    for (letter, idx) in [('o', &o), ('u', &u)] {
        if idx.is_empty() {
            continue;
        }
        out.push(letter);
        if idx.iter().any(|i| *i >= 10) {
            let inner: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
            out.push('[');
            out.push_str(&inner.join(","));
            out.push(']');
        } else {
            for i in idx.iter() {
                out.push_str(&i.to_string());
            }
        }
    }
    out
}

/// Parse a positive blade label (the inverse of [`basis_label`]).
/// Indices within each family must be strictly increasing.
pub fn parse_label(sig: &Signature, text: &str) -> Result<Mask> {
    let text = text.trim();
    if text == "1" {
        return Ok(0);
    }
    let err = |msg: &str| Error::Domain(format!("bad blade label {text:?}: {msg}"));
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut mask: Mask = 0;
    let mut seen_u = false;
    let mut any = false;
    while pos < bytes.len() {
        let kind = match bytes[pos] {
            b'o' if !seen_u && !any => GeneratorKind::Imaginary,
            b'u' if !seen_u => GeneratorKind::Unitary,
            _ => return Err(err("expected `o` or `u` family")),
        };
        seen_u |= kind == GeneratorKind::Unitary;
        any = true;
        pos += 1;
        let indices = if bytes.get(pos) == Some(&b'[') {
            let close = text[pos..].find(']').ok_or_else(|| err("unclosed bracket"))? + pos;
            let inner = &text[pos + 1..close];
            pos = close + 1;
            inner
                .split(',')
                .map(|s| s.trim().parse::<usize>().map_err(|_| err("bad index")))
                .collect::<Result<Vec<_>>>()?
        } else {
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            text[start..pos].bytes().map(|b| (b - b'0') as usize).collect()
        };
        if indices.is_empty() {
            return Err(err("missing generator index"));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(err("indices must be strictly increasing"));
        }
        for i in indices {
            mask |= 1 << generator_bit(sig, kind, i)?;
        }
    }
    Ok(mask)
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        write!(f, "e{}", self.mask)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(n: usize) -> Algebra {
        Algebra::imaginary(n).unwrap()
    }

    #[test]
    fn quaternion_units() {
        let a = alg(2);
        let p = |x, y| a.mul(Blade::positive(x), Blade::positive(y));
        assert_eq!(p(1, 2), Blade::new(3, 1));
        assert_eq!(p(2, 3), Blade::new(1, 1));
        assert_eq!(p(3, 1), Blade::new(2, 1));
        assert_eq!(p(2, 1), Blade::new(3, -1));
    }

    #[test]
    fn unit_law_and_squares() {
        let a = Algebra::split(2, 2).unwrap();
        for m in 0..16 {
            assert_eq!(a.sign(m, 0), 1);
            assert_eq!(a.sign(0, m), 1);
            if m != 0 {
                assert_eq!(a.sign(m, m), a.square_sign(m).unwrap());
            }
        }
        assert_eq!(a.square_sign(0), Err(Error::UnitBlade));
    }

    #[test]
    fn sedenion_cross_term() {
        let a = alg(4);
        assert_eq!(a.mul(Blade::positive(1), Blade::positive(12)), Blade::new(13, -1));
    }

    #[test]
    fn unitary_squares() {
        let a = Algebra::split(0, 3).unwrap();
        assert_eq!(a.sign(1, 1), 1);
        assert_eq!(a.square_sign(0b11).unwrap(), -1);
    }

    #[test]
    fn table_matches_recursion() {
        let sig = Signature::split(3, 2).unwrap();
        let t = Algebra::new(sig.clone());
        let r = Algebra::without_table(sig);
        for x in 0..32 {
            for y in 0..32 {
                assert_eq!(t.sign(x, y), r.sign(x, y));
            }
        }
    }

    #[test]
    fn traces() {
        assert_eq!(alg(3).pure_trace(), -7);
        assert_eq!(Algebra::split(0, 3).unwrap().pure_trace(), 1);
        assert_eq!(Algebra::split(3, 1).unwrap().pure_trace(), 1);
    }

    #[test]
    fn labels() {
        let s4 = Signature::imaginary(4).unwrap();
        assert_eq!(basis_label(&s4, 3), "o12");
        assert_eq!(basis_label(&s4, 15), "o1234");
        assert_eq!(basis_label(&s4, 0), "1");
        let s31 = Signature::split(3, 1).unwrap();
        assert_eq!(basis_label(&s31, 9), "o1u1");
        let s10 = Signature::imaginary(10).unwrap();
        assert_eq!(basis_label(&s10, (1 << 9) | 1), "o[1,10]");
        let s = Signature::split(2, 10).unwrap();
        assert_eq!(basis_label(&s, 0b1000_0000_0100), "u[1,10]");
    }

    #[test]
    fn label_round_trip() {
        for sig in [Signature::split(3, 1).unwrap(), Signature::split(10, 2).unwrap()] {
            for m in 0..sig.dim() as Mask {
                assert_eq!(parse_label(&sig, &basis_label(&sig, m)).unwrap(), m);
            }
        }
    }

    #[test]
    fn label_errors() {
        let s = Signature::imaginary(4).unwrap();
        assert!(parse_label(&s, "o5").is_err());
        assert!(parse_label(&s, "o21").is_err());
        assert!(parse_label(&s, "u1").is_err());
        assert!(parse_label(&s, "o").is_err());
        assert!(parse_label(&s, "o1[").is_err());
    }
}
