use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::{Algebra, Blade, Element, Error, Mask, Rational, RationalElement, Result};

/// Three distinct pure blades in ascending mask order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triad {
    b: Mask,
    c: Mask,
    d: Mask,
}

impl Triad {
    pub fn new(b: Mask, c: Mask, d: Mask) -> Result<Self> {
        if b == 0 {
            return Err(Error::InvalidTriad("the unit is not a pure blade".into()));
        }
        if !(b < c && c < d) {
            return Err(Error::InvalidTriad(format!("masks {b}, {c}, {d} are not strictly increasing")));
        }
        Ok(Self { b, c, d })
    }

    /// Sort three distinct pure masks into a triad.
    pub fn sorted(x: Mask, y: Mask, z: Mask) -> Result<Self> {
        let mut m = [x, y, z];
        m.sort_unstable();
        Self::new(m[0], m[1], m[2])
    }

    pub(crate) const fn raw(b: Mask, c: Mask, d: Mask) -> Self {
        Self { b, c, d }
    }

    pub fn b(&self) -> Mask {
        self.b
    }
    pub fn c(&self) -> Mask {
        self.c
    }
    pub fn d(&self) -> Mask {
        self.d
    }

    pub fn masks(&self) -> [Mask; 3] {
        [self.b, self.c, self.d]
    }

    /// Mask of `b c d`; zero for a quaternion ring.
    pub fn product_mask(&self) -> Mask {
        self.b ^ self.c ^ self.d
    }

    pub fn is_ring(&self) -> bool {
        self.product_mask() == 0
    }

    pub fn check(&self, alg: &Algebra) -> Result<()> {
        alg.check_mask(self.d)
    }
}

/// Whether each associativity type's representative associator vanishes:
/// `z1` for `[b,d,c]`, `z2` for `[b,c,d]`, `z3` for `[c,b,d]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TypePattern {
    pub z1: bool,
    pub z2: bool,
    pub z3: bool,
}

impl TypePattern {
    /// Only the five patterns allowed by the non-associativity theorem can be built.
    pub fn new(z1: bool, z2: bool, z3: bool) -> Result<Self> {
        let zeros = z1 as u8 + z2 as u8 + z3 as u8;
        if zeros == 1 {
            return Err(Error::Invariant(format!(
                "associator pattern ({z1},{z2},{z3}) has exactly two nonzero types"
            )));
        }
        Ok(Self { z1, z2, z3 })
    }

    pub fn kind(&self) -> NonAssocType {
        match (self.z1, self.z2, self.z3) {
            (true, true, true) => NonAssocType::Associative,
            (false, true, true) => NonAssocType::A,
            (true, false, true) => NonAssocType::B,
            (true, true, false) => NonAssocType::C,
            _ => NonAssocType::X,
        }
    }
}

impl fmt::Display for TypePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = |z: bool| if z { 'T' } else { 'F' };
        write!(f, "({},{},{})", t(self.z1), t(self.z2), t(self.z3))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NonAssocType {
    Associative,
    A,
    B,
    C,
    X,
}

impl NonAssocType {
    pub const NON_ASSOCIATIVE: [NonAssocType; 4] =
        [NonAssocType::A, NonAssocType::B, NonAssocType::C, NonAssocType::X];

    pub fn letter(self) -> char {
        match self {
            NonAssocType::Associative => '0',
            NonAssocType::A => 'A',
            NonAssocType::B => 'B',
            NonAssocType::C => 'C',
            NonAssocType::X => 'X',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Some(match c {
            'A' => NonAssocType::A,
            'B' => NonAssocType::B,
            'C' => NonAssocType::C,
            'X' => NonAssocType::X,
            _ => return None,
        })
    }

    /// Index into `[A, B, C, X]` count arrays.
    pub fn index(self) -> Option<usize> {
        match self {
            NonAssocType::Associative => None,
            NonAssocType::A => Some(0),
            NonAssocType::B => Some(1),
            NonAssocType::C => Some(2),
            NonAssocType::X => Some(3),
        }
    }
}

impl fmt::Display for NonAssocType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NonAssocType::Associative => f.write_str("associative"),
            t => write!(f, "{}", t.letter()),
        }
    }
}

/// `[x,y,z] = 0` for positive blades, from four sign lookups.
#[inline]
pub fn associator_vanishes(alg: &Algebra, x: Mask, y: Mask, z: Mask) -> bool {
    alg.sign(x, y) * alg.sign(x ^ y, z) == alg.sign(y, z) * alg.sign(x, y ^ z)
}

/// Hot-loop classification without range checks or error plumbing.
/// Returns `None` for a pattern the theorem forbids.
#[inline]
pub fn classify_unchecked(alg: &Algebra, b: Mask, c: Mask, d: Mask) -> Option<NonAssocType> {
    let z1 = associator_vanishes(alg, b, d, c);
    let z2 = associator_vanishes(alg, b, c, d);
    let z3 = associator_vanishes(alg, c, b, d);
    TypePattern::new(z1, z2, z3).ok().map(|p| p.kind())
}

/// `(ab)c - a(bc)` for signed blades.
pub fn associator(alg: &Algebra, a: Blade, b: Blade, c: Blade) -> Result<RationalElement> {
    for m in [a.mask, b.mask, c.mask] {
        alg.check_mask(m)?;
    }
    let left = alg.mul(alg.mul(a, b), c);
    let right = alg.mul(a, alg.mul(b, c));
    Ok(Element::blade(left) - Element::blade(right))
}

pub fn type_pattern(alg: &Algebra, t: &Triad) -> Result<TypePattern> {
    t.check(alg)?;
    let (b, c, d) = (t.b, t.c, t.d);
    TypePattern::new(
        associator_vanishes(alg, b, d, c),
        associator_vanishes(alg, b, c, d),
        associator_vanishes(alg, c, b, d),
    )
    .map_err(|e| Error::Invariant(format!("{e} for triad {:?}", t.masks())))
}

pub fn classify(alg: &Algebra, t: &Triad) -> Result<NonAssocType> {
    Ok(type_pattern(alg, t)?.kind())
}

/// `T(b,c,d) = [b,d,c] - [d,c,b] + [c,b,d]`.
pub fn triple_associator(alg: &Algebra, t: &Triad) -> Result<RationalElement> {
    let [b, c, d] = t.masks().map(Blade::positive);
    Ok(associator(alg, b, d, c)? - associator(alg, d, c, b)? + associator(alg, c, b, d)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MoufangFlags {
    pub m1: bool,
    pub m2: bool,
    pub m3: bool,
}

impl MoufangFlags {
    pub fn all(&self) -> bool {
        self.m1 && self.m2 && self.m3
    }
}

/// Blade forms of the three Moufang identities, unparenthesized products
/// expanded from the left:
/// `d(b(dc)) = ((db)d)c`, `b(d(cd)) = ((bd)c)d`, `(db)(cd) = (d(bc))d`.
pub fn moufang_check(alg: &Algebra, t: &Triad) -> Result<MoufangFlags> {
    t.check(alg)?;
    let [b, c, d] = t.masks().map(Blade::positive);
    let m = |x, y| alg.mul(x, y);
    Ok(MoufangFlags {
        m1: m(d, m(b, m(d, c))) == m(m(m(d, b), d), c),
        m2: m(b, m(d, m(c, d))) == m(m(m(b, d), c), d),
        m3: m(m(d, b), m(c, d)) == m(m(d, m(b, c)), d),
    })
}

/// `((bc)d)b + (bc)(db) = 0`.
pub fn malcev_check(alg: &Algebra, t: &Triad) -> Result<bool> {
    t.check(alg)?;
    let [b, c, d] = t.masks().map(Blade::positive);
    let m = |x, y| alg.mul(x, y);
    let lhs = m(m(m(b, c), d), b);
    let rhs = m(m(b, c), m(d, b));
    Ok(lhs == -rhs)
}

/// `2 o_mask` with the given sign, handy for associator expectations.
pub fn twice(mask: Mask, sign: i8) -> RationalElement {
    let two = Rational::one() + Rational::one();
    Element::term(mask, if sign < 0 { -two } else { two })
}
