use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::assoc::classify_unchecked;
use crate::cycles::silo_types;
use crate::{formulas, parallel, Algebra, Error, Mask, NonAssocType, Result, Silo, Triad};

/// The seven blades generated by a non-degenerate triad, ascending.
pub fn closure_7(t: &Triad) -> Result<[Mask; 7]> {
    if t.is_ring() {
        return Err(Error::Degenerate(t.masks()));
    }
    let (b, c, d) = (t.b(), t.c(), t.d());
    let mut m = [b, c, b ^ c, d, b ^ d, c ^ d, b ^ c ^ d];
    m.sort_unstable();
    Ok(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SubalgebraClass {
    H,
    O,
    P4,
    P12,
    P14,
}

impl fmt::Display for SubalgebraClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Non-associative type counts over the 35 triads of a seven-blade set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct TypeCensus {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub x: u32,
    pub associative: u32,
}

impl TypeCensus {
    pub fn abcx(&self) -> (u32, u32, u32, u32) {
        (self.a, self.b, self.c, self.x)
    }

    pub fn class(&self) -> Option<SubalgebraClass> {
        if self.associative != 7 {
            return None;
        }
        Some(match self.abcx() {
            (0, 0, 0, 28) => SubalgebraClass::O,
            (12, 0, 12, 4) => SubalgebraClass::P4,
            (8, 8, 8, 4) => SubalgebraClass::P12,
            (7, 10, 7, 4) => SubalgebraClass::P14,
            _ => return None,
        })
    }
}

impl fmt::Display for TypeCensus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.a, self.b, self.c, self.x)
    }
}

fn check_closed(masks: &[Mask]) -> Result<BTreeSet<Mask>> {
    let set: BTreeSet<Mask> = masks.iter().copied().collect();
    if set.len() != 7 || set.contains(&0) {
        return Err(Error::Domain("expected seven distinct pure blades".into()));
    }
    for &x in &set {
        for &y in &set {
            if x != y && !set.contains(&(x ^ y)) {
                return Err(Error::NotClosed);
            }
        }
    }
    Ok(set)
}

fn census_of(alg: &Algebra, m: &[Mask]) -> Result<TypeCensus> {
    let mut out = TypeCensus::default();
    for i in 0..7 {
        for j in i + 1..7 {
            for k in j + 1..7 {
                let (b, c, d) = (m[i], m[j], m[k]);
                if b ^ c == d {
                    out.associative += 1;
                    continue;
                }
                match classify_unchecked(alg, b, c, d) {
                    Some(NonAssocType::A) => out.a += 1,
                    Some(NonAssocType::B) => out.b += 1,
                    Some(NonAssocType::C) => out.c += 1,
                    Some(NonAssocType::X) => out.x += 1,
                    _ => {
                        return Err(Error::Invariant(format!(
                            "triad ({b},{c},{d}) has an impossible associator pattern"
                        )))
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Type census of a closed seven-blade set under the ambient signature.
pub fn classify_blade_subset(alg: &Algebra, masks: &[Mask]) -> Result<TypeCensus> {
    let set = check_closed(masks)?;
    for m in &set {
        alg.check_mask(*m)?;
    }
    let sorted: Vec<Mask> = set.into_iter().collect();
    census_of(alg, &sorted)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subalgebra {
    /// Three masks for a quaternion ring, seven otherwise.
    pub masks: Vec<Mask>,
    pub class: SubalgebraClass,
    pub census: TypeCensus,
    /// Silos of the eight cycle groups inside the seven blades.
    pub silos: BTreeMap<Silo, u32>,
}

fn internal_silos(alg: &Algebra, m: &[Mask; 7]) -> Result<BTreeMap<Silo, u32>> {
    let mut out = BTreeMap::new();
    for i in 0..7 {
        for j in i + 1..7 {
            let (b, c) = (m[i], m[j]);
            let bc = b ^ c;
            if bc < c {
                continue;
            }
            for &d in m.iter().filter(|d| **d > bc) {
                let types = silo_types(alg, b, c, d)?;
                let s = Silo::from_types(types).ok_or_else(|| {
                    Error::Invariant(format!("({b},{c},{d}) has types {types:?}"))
                })?;
                *out.entry(s).or_insert(0) += 1;
            }
        }
    }
    Ok(out)
}

pub fn classify_subalgebra(alg: &Algebra, t: &Triad) -> Result<Subalgebra> {
    t.check(alg)?;
    if t.is_ring() {
        return Ok(Subalgebra {
            masks: t.masks().to_vec(),
            class: SubalgebraClass::H,
            census: TypeCensus { associative: 1, ..Default::default() },
            silos: BTreeMap::new(),
        });
    }
    let m = closure_7(t)?;
    let census = census_of(alg, &m)?;
    let class = census.class().ok_or_else(|| {
        Error::Invariant(format!("closure of {:?} has unrecognized census {census}", t.masks()))
    })?;
    Ok(Subalgebra { masks: m.to_vec(), class, census, silos: internal_silos(alg, &m)? })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SubalgebraCensus {
    pub q: usize,
    pub p: usize,
    /// Quaternion rings, from the closed form.
    pub h: u64,
    pub o: u64,
    pub p4: u64,
    pub p12: u64,
    pub p14: u64,
}

impl SubalgebraCensus {
    pub fn get(&self, class: SubalgebraClass) -> u64 {
        match class {
            SubalgebraClass::H => self.h,
            SubalgebraClass::O => self.o,
            SubalgebraClass::P4 => self.p4,
            SubalgebraClass::P12 => self.p12,
            SubalgebraClass::P14 => self.p14,
        }
    }

    pub fn quasi_total(&self) -> u64 {
        self.p4 + self.p12 + self.p14
    }

    fn add(&mut self, class: SubalgebraClass) {
        match class {
            SubalgebraClass::H => self.h += 1,
            SubalgebraClass::O => self.o += 1,
            SubalgebraClass::P4 => self.p4 += 1,
            SubalgebraClass::P12 => self.p12 += 1,
            SubalgebraClass::P14 => self.p14 += 1,
        }
    }

    fn merge(mut self, o: Self) -> Self {
        self.o += o.o;
        self.p4 += o.p4;
        self.p12 += o.p12;
        self.p14 += o.p14;
        self
    }
}

/// Largest level handled without an explicit override.
pub const SUBALGEBRA_DEFAULT_MAX_LEVEL: usize = 8;

/// Count seven-blade subalgebras by class.
///
/// Each closure is visited once, from its least non-associative triad, so
/// no set of seen closures has to be kept.
pub fn subalgebra_census(alg: &Algebra, threads: usize) -> Result<SubalgebraCensus> {
    let sig = alg.signature();
    let (q, p) = (sig.q(), sig.p());
    let n = sig.dim() as Mask;
    let mut census = parallel::run(threads, || {
        (1..n)
            .into_par_iter()
            .map(|b| {
                let mut part = SubalgebraCensus { q, p, ..Default::default() };
                for c in b + 1..n {
                    for d in c + 1..n {
                        if b ^ c == d {
                            continue;
                        }
                        let m = closure_7(&Triad::raw(b, c, d)).expect("non-degenerate");
                        let least = if m[2] == m[0] ^ m[1] { [m[0], m[1], m[3]] } else { [m[0], m[1], m[2]] };
                        if least != [b, c, d] {
                            continue;
                        }
                        let census = census_of(alg, &m)?;
                        let class = census.class().ok_or_else(|| {
                            Error::Invariant(format!("closure {m:?} has unrecognized census {census}"))
                        })?;
                        part.add(class);
                    }
                }
                Ok(part)
            })
            .try_reduce(|| SubalgebraCensus { q, p, ..Default::default() }, |x, y| Ok(x.merge(y)))
    })?;
    census.h = formulas::h_count_u64(sig.generators());
    Ok(census)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(n: usize) -> Algebra {
        Algebra::imaginary(n).unwrap()
    }

    fn t(b: Mask, c: Mask, d: Mask) -> Triad {
        Triad::new(b, c, d).unwrap()
    }

    #[test]
    fn closures() {
        assert_eq!(closure_7(&t(1, 2, 4)).unwrap(), [1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(closure_7(&t(1, 2, 3)), Err(Error::Degenerate([1, 2, 3])));
        assert!(closure_7(&t(1, 10, 12)).unwrap().contains(&(1 ^ 10 ^ 12)));
    }

    #[test]
    fn classes() {
        let a4 = alg(4);
        assert_eq!(classify_subalgebra(&a4, &t(1, 2, 4)).unwrap().class, SubalgebraClass::O);
        let p4 = classify_subalgebra(&a4, &t(1, 10, 12)).unwrap();
        assert_eq!(p4.class, SubalgebraClass::P4);
        assert_eq!(p4.silos, BTreeMap::from([(Silo::AAA, 4), (Silo::CCX, 4)]));
        assert_eq!(classify_subalgebra(&alg(5), &t(1, 10, 28)).unwrap().class, SubalgebraClass::P12);
        assert_eq!(classify_subalgebra(&a4, &t(1, 2, 3)).unwrap().class, SubalgebraClass::H);
    }

    #[test]
    fn blade_subsets() {
        let a4 = alg(4);
        assert_eq!(classify_blade_subset(&a4, &[1, 2, 3, 4, 5, 6, 7]).unwrap().abcx(), (0, 0, 0, 28));
        assert_eq!(
            classify_blade_subset(&a4, &[1, 2, 3, 12, 13, 14, 15]).unwrap().abcx(),
            (12, 0, 12, 4)
        );
        assert_eq!(classify_blade_subset(&a4, &[1, 2, 3, 4, 5, 6, 8]), Err(Error::NotClosed));
        assert!(classify_blade_subset(&a4, &[1, 2, 3]).is_err());
    }

    #[test]
    fn small_censuses() {
        let c = subalgebra_census(&alg(4), 2).unwrap();
        assert_eq!((c.h, c.o, c.p4, c.p12, c.p14), (35, 8, 7, 0, 0));
        let c = subalgebra_census(&alg(5), 2).unwrap();
        assert_eq!((c.h, c.o, c.p4, c.p12, c.p14), (155, 50, 63, 42, 0));
    }
}
