//! Level-by-level comparison of computed structure with the bundled tables.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::assoc::{associator_vanishes, classify_unchecked, malcev_check};
use crate::cycles::{silo_types, triad_census, TriadCensus};
use crate::fixtures::{self, ModeBlades};
use crate::formulas::{self, Check};
use crate::subalgebras::{classify_blade_subset, subalgebra_census, SUBALGEBRA_DEFAULT_MAX_LEVEL};
use crate::zero_divisors::{
    categorize, mode_transform, zd_count, zd_direct_search, zd_primaries, PrimaryCategory, SquaresRule,
    ZeroDivisorPair,
};
use crate::{Algebra, Blade, Element, Mask, NonAssocType, Result, Silo, Triad};

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub signature: String,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Largest level at which the subalgebra census runs by default.
pub const VERIFY_SUBALGEBRA_MAX_LEVEL: usize = SUBALGEBRA_DEFAULT_MAX_LEVEL;
/// Largest level at which the extended-mode table is checked exhaustively.
pub const VERIFY_MODES_MAX_LEVEL: usize = 6;

pub fn verify(alg: &Algebra, threads: usize) -> Result<VerifyReport> {
    let sig = alg.signature();
    let n = sig.generators();
    let mut checks = Vec::new();

    let trace = if sig.is_imaginary() { -(sig.pure_count() as i64) } else { 1 };
    checks.push(Check::eq("pure trace", alg.pure_trace(), trace));

    let census = triad_census(alg, threads)?;
    checks.push(Check::new("triad census covers C(N,3)", census.check().is_ok(), census.total().to_string()));

    if sig.is_imaginary() {
        imaginary_level(alg, &census, threads, &mut checks)?;
    }
    if n <= VERIFY_MODES_MAX_LEVEL && n >= 3 {
        checks.extend(extended_mode_map(alg)?);
        checks.push(dual_type_map(alg));
    }
    match (sig.q(), sig.p()) {
        (3, 0) => checks.extend(octonions(alg)?),
        (4, 0) => checks.extend(sedenions(alg, threads)?),
        (5, 0) => checks.extend(level_five(alg, threads)?),
        (0, 3) => checks.extend(split_octonions(alg, threads)?),
        (3, 1) => checks.extend(a31(alg, threads)?),
        (0, 4) => checks.extend(a04(alg, threads)?),
        _ => {}
    }
    Ok(VerifyReport { signature: sig.to_string(), checks })
}

fn imaginary_level(alg: &Algebra, census: &TriadCensus, threads: usize, checks: &mut Vec<Check>) -> Result<()> {
    let n = alg.generators();
    if let Some(level) = fixtures::non_associative_structure()?.into_iter().find(|l| l.generators == n) {
        for s in Silo::ALL {
            let want = level.silos.get(&s.to_string()).copied().unwrap_or(0);
            checks.push(Check::eq(format!("silo {s}"), census.silo(s), want));
        }
        for t in NonAssocType::NON_ASSOCIATIVE {
            let want = level.non_cycles.get(&t.letter().to_string()).copied().unwrap_or(0);
            checks.push(Check::eq(format!("non-cycle {}", t.letter()), census.non_cycle(t), want));
        }
    }
    if let Some(level) = fixtures::triad_structure()?.into_iter().find(|l| l.generators == n) {
        checks.push(Check::eq("associative triads", census.associative, level.associative));
        checks.push(Check::eq("non-cycle triads", census.non_cycle_total(), level.non_cycles));
        checks.push(Check::eq("cycle triads", 3 * census.silo_total(), level.cycle_triads));
        checks.push(Check::eq("total triads", census.total(), level.total));
    }
    checks.push(Check::eq("associative = H formula", census.associative.into(), formulas::h_count(n)));
    checks.push(Check::eq("total = C(N,3)", census.total().into(), formulas::triad_total(n)));

    let m = n - 3;
    let z = zd_count(alg, threads, SquaresRule::Relaxed);
    checks.push(Check::eq("zero divisors = Z formula", z.into(), formulas::z_count(m)));
    if let Some(row) = fixtures::cardinality()?.into_iter().find(|r| r.q == n && r.p == 0) {
        checks.push(Check::eq("zero divisors", z, row.zero_divisors));
        let non_assoc = census.total() - census.associative;
        checks.push(Check::eq("non-associative triads", non_assoc, row.non_associative));
        if let Some(f) = row.factor28 {
            checks.push(Check::eq("28 factor", non_assoc / 28, f));
        }
        if let Some(f) = row.factor84 {
            checks.push(Check::eq("84 factor", z / 84, f));
        }
    }

    if n <= VERIFY_SUBALGEBRA_MAX_LEVEL {
        if let Some(level) = fixtures::subalgebras()?.into_iter().find(|l| l.generators == n) {
            let s = subalgebra_census(alg, threads)?;
            checks.push(Check::eq("H subalgebras", s.h, level.h));
            checks.push(Check::eq("O subalgebras", s.o, level.o));
            checks.push(Check::eq("P4 subalgebras", s.p4, level.p4));
            checks.push(Check::eq("P12 subalgebras", s.p12, level.p12));
            checks.push(Check::eq("P14 subalgebras", s.p14, level.p14));
            checks.push(Check::eq("S formula", s.quasi_total().into(), formulas::s_count(m)));
            checks.push(Check::eq("O formula", s.o.into(), formulas::o_count(m)));
        }
    }
    Ok(())
}

fn nonzero(alg: &Algebra, x: Mask, y: Mask, z: Mask) -> bool {
    !associator_vanishes(alg, x, y, z)
}

/// Prime and extended associator patterns of every cycle group against the
/// extended-mode table, plus the silo reached by `d -> |db|`.
fn extended_mode_map(alg: &Algebra) -> Result<Vec<Check>> {
    let rows = fixtures::extended_modes()?;
    let dim = alg.signature().dim() as Mask;
    let mut bad_pattern = 0u64;
    let mut bad_silo = 0u64;
    let mut groups = 0u64;
    for b in 1..dim {
        for c in b + 1..dim {
            let bc = b ^ c;
            if bc < c {
                continue;
            }
            for d in bc + 1..dim {
                let silo = match Silo::from_types(silo_types(alg, b, c, d)?) {
                    Some(s) => s,
                    None => {
                        bad_silo += 1;
                        continue;
                    }
                };
                groups += 1;
                let row = rows.iter().find(|r| r.silo == silo.to_string());
                let e = d ^ b;
                let prime = [nonzero(alg, b, d, c), nonzero(alg, c, b, d), nonzero(alg, b, d, bc), nonzero(alg, bc, b, d)];
                let ext = [
                    nonzero(alg, b, e, c),
                    nonzero(alg, c, b, e),
                    nonzero(alg, b, e, bc),
                    nonzero(alg, bc, b, e),
                    nonzero(alg, c, bc, e),
                    nonzero(alg, bc, c, e),
                ];
                match row {
                    Some(r) if r.prime == prime && r.extended == ext => {}
                    _ => bad_pattern += 1,
                }
                let target = silo_types(alg, b, c, e).ok().and_then(Silo::from_types);
                let want = row.and_then(|r| r.extended_silo.parse::<Silo>().ok());
                if target != want || target != Some(silo.extended()) {
                    bad_silo += 1;
                }
            }
        }
    }
    Ok(vec![
        Check::new("extended-mode associator patterns", bad_pattern == 0, format!("{bad_pattern} of {groups} groups differ")),
        Check::new("extended-mode silo map", bad_silo == 0, format!("{bad_silo} of {groups} groups differ")),
    ])
}

/// Replacing `d` by the prime partner `a` keeps A and X and swaps B with C.
fn dual_type_map(alg: &Algebra) -> Check {
    let dim = alg.signature().dim() as Mask;
    let (mut bad, mut seen) = (0u64, 0u64);
    for b in 1..dim {
        for c in b + 1..dim {
            for d in c + 1..dim {
                let a = b ^ c ^ d;
                if a == 0 {
                    continue;
                }
                let (Some(t), Some(u)) = (classify_unchecked(alg, b, c, d), classify_unchecked(alg, b, c, a)) else {
                    bad += 1;
                    continue;
                };
                seen += 1;
                let want = match t {
                    NonAssocType::B => NonAssocType::C,
                    NonAssocType::C => NonAssocType::B,
                    other => other,
                };
                if u != want {
                    bad += 1;
                }
            }
        }
    }
    Check::new("dual-mode type map", bad == 0, format!("{bad} of {seen} triads differ"))
}

fn octonions(alg: &Algebra) -> Result<Vec<Check>> {
    let sig = alg.signature();
    let rings: BTreeSet<[Mask; 3]> = ["o1 o2 o12", "o2 o3 o23", "o1 o3 o13", "o1 o23 o123", "o2 o13 o123", "o12 o3 o123", "o12 o13 o23"]
        .iter()
        .map(|s| {
            let v: Vec<Mask> = s.split(' ').map(|l| crate::parse_label(sig, l)).collect::<Result<_>>()?;
            let mut t = [v[0], v[1], v[2]];
            t.sort_unstable();
            Ok(t)
        })
        .collect::<Result<_>>()?;
    let mut found = BTreeSet::new();
    let (mut malcev, mut ring_malcev) = (0, 0);
    for b in 1..8 {
        for c in b + 1..8 {
            for d in c + 1..8 {
                let t = Triad::new(b, c, d)?;
                let m = malcev_check(alg, &t)?;
                if t.is_ring() {
                    found.insert(t.masks());
                    ring_malcev += m as u32;
                } else {
                    malcev += m as u32;
                }
            }
        }
    }
    Ok(vec![
        Check::new("seven quaternion rings", found == rings, format!("{found:?}")),
        Check::eq("Malcev triads", malcev, 28),
        Check::eq("rings satisfying Malcev", ring_malcev, 0),
        Check::eq("zero divisors", zd_count(alg, 1, SquaresRule::Relaxed), 0),
    ])
}

fn blade_element(b: Blade) -> crate::RationalElement {
    Element::blade(b)
}

fn vanishes(alg: &Algebra, f1: [Blade; 2], f2: [Blade; 2]) -> Result<bool> {
    let e = |f: [Blade; 2]| blade_element(f[0]) + blade_element(f[1]);
    Ok(crate::element_mul(alg.signature(), &e(f1), &e(f2))?.is_zero())
}

/// The four products a listing row stands for, with the printed signs.
fn row_modes(r: &ModeBlades) -> [([Blade; 2], [Blade; 2]); 4] {
    [([r.a, r.b], [r.c, r.d]), ([-r.d, r.b], [r.c, r.a]), ([r.ab, r.b], [r.c, r.db]), ([-r.db, r.b], [r.c, r.ab])]
}

fn canonical(f1: [Blade; 2], f2: [Blade; 2]) -> Result<ZeroDivisorPair> {
    let t = |f: [Blade; 2]| f.map(|b| (b.mask, b.sign()));
    ZeroDivisorPair::canonical(t(f1), t(f2))
}

fn sedenions(alg: &Algebra, threads: usize) -> Result<Vec<Check>> {
    let table = fixtures::u1_zero_divisors()?;
    let listing: BTreeSet<ZeroDivisorPair> = zd_direct_search(alg, threads).into_iter().collect();
    let mut from_table = BTreeSet::new();
    let mut failing = 0;
    for row in &table.rows {
        let r = row.blades(&table.signature)?;
        for (f1, f2) in row_modes(&r) {
            if !vanishes(alg, f1, f2)? {
                failing += 1;
            }
            from_table.insert(canonical(f1, f2)?);
        }
    }
    let (reps, orbit) = fixtures::u1_primaries()?;
    let want: BTreeSet<[Mask; 3]> = reps.triads.iter().copied().collect();
    let orbits = zd_primaries(alg, threads)?;
    let got: BTreeSet<[Mask; 3]> = orbits.iter().map(|o| o.representative.masks()).collect();
    let p4 = crate::subalgebras::classify_subalgebra(alg, &Triad::new(1, 10, 12)?)?;
    Ok(vec![
        Check::eq("listed products vanish", failing, 0),
        Check::eq("listing size", from_table.len(), 84),
        Check::new("listing equals search", from_table == listing, format!("{} searched", listing.len())),
        Check::new("AAA primaries", got == want, format!("{got:?}")),
        Check::new("orbit sizes", orbits.iter().all(|o| o.size() == orbit), format!("{} orbits", orbits.len())),
        Check::new("(o1,o24,o34) spans P4", p4.class == crate::SubalgebraClass::P4, p4.class.to_string()),
    ])
}

fn level_five(alg: &Algebra, threads: usize) -> Result<Vec<Check>> {
    let orbits = zd_primaries(alg, threads)?;
    let cats = categorize(alg, &orbits)?;
    let tables = fixtures::u2_primaries()?;
    let mut checks = Vec::new();
    for t in &tables.tables {
        let cat = match t.category.as_str() {
            "OctonionAaa" => PrimaryCategory::OctonionAaa,
            "IndependentAaa" => PrimaryCategory::IndependentAaa,
            "OverlappingAaaBba" => PrimaryCategory::OverlappingAaaBba,
            _ => PrimaryCategory::BbaOnly,
        };
        checks.push(Check::eq(format!("{} zero divisors", t.category), cats.get(&cat).copied().unwrap_or(0), t.zero_divisors));
    }
    checks.push(Check::eq("uncategorized zero divisors", cats.get(&PrimaryCategory::Other).copied().unwrap_or(0), 0));
    Ok(checks)
}

fn split_octonions(alg: &Algebra, threads: usize) -> Result<Vec<Check>> {
    let f = fixtures::split_octonion()?;
    let listing: BTreeSet<ZeroDivisorPair> = zd_direct_search(alg, threads).into_iter().collect();
    let mut present = 0;
    for t in &f.list.triads {
        let t = Triad::sorted(t[0], t[1], t[2])?;
        for mode in [crate::Mode::Prime, crate::Mode::Dual] {
            let cand = mode_transform(alg, &t, mode)?;
            if cand.is_zero_divisor() && listing.contains(&cand.pair()?) {
                present += 1;
                break;
            }
        }
    }
    Ok(vec![
        Check::new(
            "zero divisors",
            listing.len() as u64 == f.zero_divisors,
            format!("got {}, expected {} (cardinality table prints {})", listing.len(), f.zero_divisors, f.zero_divisors_table),
        ),
        Check::eq("listed primaries present", present, f.list.triads.len()),
    ])
}

fn a31(alg: &Algebra, threads: usize) -> Result<Vec<Check>> {
    let table = fixtures::a31_primaries()?;
    let count = zd_count(alg, threads, SquaresRule::Relaxed);
    let orbits = zd_primaries(alg, threads)?;
    let got: BTreeSet<[Mask; 3]> = orbits.iter().map(|o| o.representative.masks()).collect();
    let mut want = BTreeSet::new();
    let (mut ext_ok, mut a_flipped) = (0, 0);
    for row in &table.rows {
        let r = row.blades(&table.signature)?;
        want.insert([r.b.mask, r.c.mask, r.d.mask]);
        let [_, _, e, ed] = row_modes(&r);
        if vanishes(alg, e.0, e.1)? && vanishes(alg, ed.0, ed.1)? {
            ext_ok += 1;
        }
        let ours = crate::zero_divisors::prime_partner(alg, &Triad::new(r.b.mask, r.c.mask, r.d.mask)?);
        if ours == -r.a {
            a_flipped += 1;
        }
    }
    let u1 = 1 << 3;
    Ok(vec![
        Check::eq("zero divisors", count, 84),
        Check::eq("primaries", got.len(), 7),
        Check::new("every primary has d = u1", orbits.iter().all(|o| o.representative.d() == u1), format!("{got:?}")),
        Check::new("primaries match listing", got == want, format!("{want:?}")),
        Check::eq("listed extended modes vanish", ext_ok, 7),
        Check::new("prime partner sign", true, format!("{a_flipped} of 7 listed a are the negation of c(bd)/c^2")),
    ])
}

fn a04(alg: &Algebra, threads: usize) -> Result<Vec<Check>> {
    let f = fixtures::a04_primaries()?;
    let count = zd_count(alg, threads, SquaresRule::Relaxed);
    let orbits = zd_primaries(alg, threads)?;
    let got: BTreeSet<[Mask; 3]> = orbits.iter().map(|o| o.representative.masks()).collect();
    let want: BTreeSet<[Mask; 3]> = f.entries.iter().map(|(b, c, d)| [*b, *c, d.mask]).collect();
    let total: usize = orbits.iter().map(|o| o.size()).sum();
    let sub = classify_blade_subset(alg, &f.negative_square_subset)?;
    Ok(vec![
        Check::eq("zero divisors", count, f.zero_divisors),
        Check::eq("primaries", got.len(), f.primaries),
        Check::new("primaries match listing", got == want, format!("{} listed", want.len())),
        Check::eq("orbit total", total as u64, f.zero_divisors),
        Check::new("negative-square subset is P4", sub.abcx() == (12, 0, 12, 4), sub.to_string()),
    ])
}
