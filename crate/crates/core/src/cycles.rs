use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::assoc::classify_unchecked;
use crate::{parallel, Algebra, Error, Mask, NonAssocType, Result, Triad};

/// The three pairs `(b,c)`, `(b,|bc|)`, `(c,|bc|)` of a quaternion ring,
/// each sorted ascending.
pub fn pair_cycle(b: Mask, c: Mask) -> Result<[(Mask, Mask); 3]> {
    if b == c || b == 0 || c == 0 {
        return Err(Error::Domain(format!("pair ({b},{c}) needs two distinct pure blades")));
    }
    let bc = b ^ c;
    let s = |x: Mask, y: Mask| (x.min(y), x.max(y));
    Ok([s(b, c), s(b, bc), s(c, bc)])
}

/// Where a triad sits relative to the ring of its two smaller blades.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TriadKind {
    /// `d == |bc|`.
    Associative,
    /// `d < |bc|`.
    NonCycle,
    /// `c < |bc| < d`: first triad of its cycle group.
    CycleFirst,
    /// `|bc| < c` and `d > c`: second or third triad of the group whose
    /// first triad is `(min, mid, d)` of the ring `{b, c, |bc|}`.
    CycleMember,
}

pub fn triad_kind(t: &Triad) -> TriadKind {
    let bc = t.b() ^ t.c();
    if t.d() == bc {
        TriadKind::Associative
    } else if t.d() < bc {
        TriadKind::NonCycle
    } else if t.c() < bc {
        TriadKind::CycleFirst
    } else {
        TriadKind::CycleMember
    }
}

/// Three triads sharing `d` across the ring of `(b, c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CycleGroup {
    b: Mask,
    c: Mask,
    d: Mask,
}

impl CycleGroup {
    pub fn new(b: Mask, c: Mask, d: Mask) -> Result<Self> {
        let bc = b ^ c;
        if !(0 < b && b < c && c < bc && bc < d) {
            return Err(Error::InvalidTriad(format!("({b},{c},{d}) violates b < c < |bc| < d")));
        }
        Ok(Self { b, c, d })
    }

    /// The group containing `t`, for a cycle-first or cycle-member triad.
    pub fn containing(t: &Triad) -> Option<Self> {
        let mut ring = [t.b(), t.c(), t.b() ^ t.c()];
        ring.sort_unstable();
        Self::new(ring[0], ring[1], t.d()).ok()
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

    pub fn triads(&self) -> [Triad; 3] {
        let bc = self.b ^ self.c;
        [
            Triad::raw(self.b, self.c, self.d),
            Triad::raw(self.b, bc, self.d),
            Triad::raw(self.c, bc, self.d),
        ]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Silo {
    AAA,
    BBA,
    ACC,
    XBB,
    BXC,
    CAB,
    CCX,
    XXX,
}

impl Silo {
    pub const ALL: [Silo; 8] =
        [Silo::AAA, Silo::BBA, Silo::ACC, Silo::XBB, Silo::BXC, Silo::CAB, Silo::CCX, Silo::XXX];

    pub fn from_types(types: [NonAssocType; 3]) -> Option<Silo> {
        let word: String = types.iter().map(|t| t.letter()).collect();
        word.parse().ok()
    }

    pub fn letters(self) -> [NonAssocType; 3] {
        let s = self.to_string();
        let mut out = [NonAssocType::X; 3];
        for (o, ch) in out.iter_mut().zip(s.chars()) {
            *o = NonAssocType::from_letter(ch).expect("silo letter");
        }
        out
    }

    pub fn index(self) -> usize {
        Self::ALL.iter().position(|s| *s == self).expect("listed")
    }

    /// Silo reached by replacing `d` with `|db|` in every member triad.
    pub fn extended(self) -> Silo {
        match self {
            Silo::ACC => Silo::XBB,
            Silo::XBB => Silo::ACC,
            Silo::BXC => Silo::CAB,
            Silo::CAB => Silo::BXC,
            s => s,
        }
    }
}

impl fmt::Display for Silo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Silo {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Silo::ALL
            .into_iter()
            .find(|x| format!("{x:?}") == s)
            .ok_or_else(|| Error::Domain(format!("{s} is not a silo")))
    }
}

/// Type letters of `(b,c,d)`, `(b,bc,d)`, `(c,bc,d)` taken in that order,
/// whether or not the masks are ascending.
pub fn silo_types(alg: &Algebra, b: Mask, c: Mask, d: Mask) -> Result<[NonAssocType; 3]> {
    let bc = b ^ c;
    let mut out = [NonAssocType::Associative; 3];
    for (o, (x, y)) in out.iter_mut().zip([(b, c), (b, bc), (c, bc)]) {
        *o = classify_unchecked(alg, x, y, d).ok_or_else(|| {
            Error::Invariant(format!("forbidden associator pattern on ({x},{y},{d})"))
        })?;
    }
    Ok(out)
}

pub fn silo_of(alg: &Algebra, g: &CycleGroup) -> Result<Silo> {
    alg.check_mask(g.d)?;
    let types = silo_types(alg, g.b, g.c, g.d)?;
    Silo::from_types(types).ok_or_else(|| {
        Error::Invariant(format!(
            "cycle group ({},{},{}) has types {:?}, outside the eight silos",
            g.b, g.c, g.d, types
        ))
    })
}

/// Exhaustive triad statistics for one signature.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriadCensus {
    pub q: usize,
    pub p: usize,
    pub associative: u64,
    /// Indexed `[A, B, C, X]`.
    pub non_cycles: [u64; 4],
    /// Indexed like [`Silo::ALL`].
    pub silos: [u64; 8],
    /// Second and third triads of cycle groups; always twice the silo total.
    pub cycle_members: u64,
}

impl TriadCensus {
    fn empty(q: usize, p: usize) -> Self {
        Self { q, p, associative: 0, non_cycles: [0; 4], silos: [0; 8], cycle_members: 0 }
    }

    fn merge(mut self, other: Self) -> Self {
        self.associative += other.associative;
        self.cycle_members += other.cycle_members;
        for i in 0..4 {
            self.non_cycles[i] += other.non_cycles[i];
        }
        for i in 0..8 {
            self.silos[i] += other.silos[i];
        }
        self
    }

    pub fn generators(&self) -> usize {
        self.q + self.p
    }

    pub fn silo(&self, s: Silo) -> u64 {
        self.silos[s.index()]
    }

    pub fn non_cycle(&self, t: NonAssocType) -> u64 {
        t.index().map(|i| self.non_cycles[i]).unwrap_or(0)
    }

    pub fn silo_total(&self) -> u64 {
        self.silos.iter().sum()
    }

    pub fn non_cycle_total(&self) -> u64 {
        self.non_cycles.iter().sum()
    }

    /// Triads accounted for: associative + non-cycles + three per cycle group.
    pub fn total(&self) -> u64 {
        self.associative + self.non_cycle_total() + 3 * self.silo_total()
    }

    pub fn expected_total(&self) -> u64 {
        let n = (1u64 << self.generators()) - 1;
        n * (n - 1) * (n - 2) / 6
    }

    /// Counts of every non-associative triad by type, `[A, B, C, X]`.
    pub fn type_totals(&self) -> [u64; 4] {
        let mut out = self.non_cycles;
        for s in Silo::ALL {
            for t in s.letters() {
                out[t.index().expect("non-associative")] += self.silo(s);
            }
        }
        out
    }

    /// Check the bookkeeping identities; any failure is a bug.
    pub fn check(&self) -> Result<()> {
        if self.total() != self.expected_total() {
            return Err(Error::Invariant(format!(
                "census covers {} triads, expected {}",
                self.total(),
                self.expected_total()
            )));
        }
        if self.cycle_members != 2 * self.silo_total() {
            return Err(Error::Invariant(format!(
                "{} cycle members for {} groups",
                self.cycle_members,
                self.silo_total()
            )));
        }
        Ok(())
    }
}

/// Classify every triad, in parallel over the smallest blade.
pub fn triad_census(alg: &Algebra, threads: usize) -> Result<TriadCensus> {
    let sig = alg.signature();
    let (q, p) = (sig.q(), sig.p());
    let n = sig.dim() as Mask;
    let census = parallel::run(threads, || {
        (1..n)
            .into_par_iter()
            .map(|b| census_row(alg, q, p, b, n))
            .try_reduce(|| TriadCensus::empty(q, p), |x, y| Ok(x.merge(y)))
    })?;
    census.check()?;
    Ok(census)
}

fn census_row(alg: &Algebra, q: usize, p: usize, b: Mask, n: Mask) -> Result<TriadCensus> {
    let mut out = TriadCensus::empty(q, p);
    for c in b + 1..n {
        let bc = b ^ c;
        for d in c + 1..n {
            if d == bc {
                out.associative += 1;
            } else if d < bc {
                let t = classify_unchecked(alg, b, c, d).ok_or_else(|| {
                    Error::Invariant(format!("forbidden associator pattern on ({b},{c},{d})"))
                })?;
                let i = t.index().ok_or_else(|| {
                    Error::Invariant(format!("non-ring triad ({b},{c},{d}) is associative"))
                })?;
                out.non_cycles[i] += 1;
            } else if c < bc {
                let s = silo_of(alg, &CycleGroup { b, c, d })?;
                out.silos[s.index()] += 1;
            } else {
                out.cycle_members += 1;
            }
        }
    }
    Ok(out)
}
