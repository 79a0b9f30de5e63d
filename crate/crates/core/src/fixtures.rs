//! Reference tables shipped with the crate, parsed on demand.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::{parse_label, Blade, Error, Mask, Result, Signature};

const NON_ASSOCIATIVE_STRUCTURE: &str = include_str!("../fixtures/non_associative_structure.json");
const TRIAD_STRUCTURE: &str = include_str!("../fixtures/triad_structure.json");
const SUBALGEBRAS: &str = include_str!("../fixtures/subalgebras.json");
const SUBALGEBRA_IDENTIFICATION: &str = include_str!("../fixtures/subalgebra_identification.json");
const CARDINALITY: &str = include_str!("../fixtures/cardinality.json");
const U1_ZERO_DIVISORS: &str = include_str!("../fixtures/u1_zero_divisors.json");
const U1_PRIMARIES: &str = include_str!("../fixtures/u1_primaries.json");
const U2_PRIMARIES: &str = include_str!("../fixtures/u2_primaries.json");
const A31_PRIMARIES: &str = include_str!("../fixtures/a31_primaries.json");
const A04_PRIMARIES: &str = include_str!("../fixtures/a04_primaries.json");
const EXTENDED_MODES: &str = include_str!("../fixtures/extended_modes.json");
const SPLIT_OCTONION: &str = include_str!("../fixtures/split_octonion.json");

fn load<T: DeserializeOwned>(name: &str, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Domain(format!("fixture {name}: {e}")))
}

/// A possibly negated label such as `-o1234`.
pub fn signed_blade(sig: &Signature, text: &str) -> Result<Blade> {
    match text.strip_prefix('-') {
        Some(rest) => Ok(Blade::new(parse_label(sig, rest)?, -1)),
        None => Ok(Blade::positive(parse_label(sig, text)?)),
    }
}

fn sig_of(pair: [usize; 2]) -> Result<Signature> {
    Signature::split(pair[0], pair[1])
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StructureLevel {
    pub label: String,
    pub generators: usize,
    pub silos: BTreeMap<String, u64>,
    pub non_cycles: BTreeMap<String, u64>,
}

#[derive(Deserialize)]
struct Levels<T> {
    levels: Vec<T>,
}

pub fn non_associative_structure() -> Result<Vec<StructureLevel>> {
    Ok(load::<Levels<_>>("non_associative_structure", NON_ASSOCIATIVE_STRUCTURE)?.levels)
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TriadLevel {
    pub label: String,
    pub generators: usize,
    pub associative: u64,
    pub non_cycles: u64,
    pub cycle_triads: u64,
    pub total: u64,
}

pub fn triad_structure() -> Result<Vec<TriadLevel>> {
    Ok(load::<Levels<_>>("triad_structure", TRIAD_STRUCTURE)?.levels)
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SubalgebraLevel {
    pub label: String,
    pub generators: usize,
    #[serde(rename = "H")]
    pub h: u64,
    #[serde(rename = "O")]
    pub o: u64,
    #[serde(rename = "P4")]
    pub p4: u64,
    #[serde(rename = "P12")]
    pub p12: u64,
    #[serde(rename = "P14")]
    pub p14: u64,
    #[serde(rename = "totalP")]
    pub total_p: u64,
}

pub fn subalgebras() -> Result<Vec<SubalgebraLevel>> {
    Ok(load::<Levels<_>>("subalgebras", SUBALGEBRAS)?.levels)
}

#[derive(Clone, Debug, Deserialize)]
pub struct ClassIdentification {
    pub class: String,
    /// Type counts keyed by letter.
    pub types: BTreeMap<String, u32>,
    /// Alternative silo decompositions.
    pub silos: Vec<BTreeMap<String, u32>>,
}

pub fn subalgebra_identification() -> Result<Vec<ClassIdentification>> {
    #[derive(Deserialize)]
    struct F {
        classes: Vec<ClassIdentification>,
    }
    Ok(load::<F>("subalgebra_identification", SUBALGEBRA_IDENTIFICATION)?.classes)
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CardinalityRow {
    pub label: String,
    pub q: usize,
    pub p: usize,
    pub pure_basis: u64,
    pub non_associative: u64,
    pub factor28: Option<u64>,
    pub zero_divisors: u64,
    pub factor84: Option<u64>,
}

pub fn cardinality() -> Result<Vec<CardinalityRow>> {
    #[derive(Deserialize)]
    struct F {
        rows: Vec<CardinalityRow>,
    }
    Ok(load::<F>("cardinality", CARDINALITY)?.rows)
}

/// One row of a listing with `b, c, d, a, db, ab` columns; signs as printed.
#[derive(Clone, Debug, Deserialize)]
pub struct ModeRow {
    pub b: String,
    pub c: String,
    pub d: String,
    pub a: String,
    pub db: String,
    pub ab: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModeBlades {
    pub b: Blade,
    pub c: Blade,
    pub d: Blade,
    pub a: Blade,
    pub db: Blade,
    pub ab: Blade,
}

impl ModeRow {
    pub fn blades(&self, sig: &Signature) -> Result<ModeBlades> {
        let p = |s: &str| signed_blade(sig, s);
        Ok(ModeBlades { b: p(&self.b)?, c: p(&self.c)?, d: p(&self.d)?, a: p(&self.a)?, db: p(&self.db)?, ab: p(&self.ab)? })
    }
}

#[derive(Clone, Debug)]
pub struct ModeTable {
    pub signature: Signature,
    pub rows: Vec<ModeRow>,
}

#[derive(Deserialize)]
struct ModeTableFile {
    signature: [usize; 2],
    rows: Vec<ModeRow>,
}

fn mode_table(name: &str, text: &str) -> Result<ModeTable> {
    let f: ModeTableFile = load(name, text)?;
    Ok(ModeTable { signature: sig_of(f.signature)?, rows: f.rows })
}

/// The 21 sedenion rows, each standing for four modes.
pub fn u1_zero_divisors() -> Result<ModeTable> {
    mode_table("u1_zero_divisors", U1_ZERO_DIVISORS)
}

/// Seven primaries of `A(3,1)`.
pub fn a31_primaries() -> Result<ModeTable> {
    mode_table("a31_primaries", A31_PRIMARIES)
}

#[derive(Clone, Debug)]
pub struct TriadList {
    pub signature: Signature,
    pub triads: Vec<[Mask; 3]>,
}

fn masks3(sig: &Signature, t: &[String; 3]) -> Result<[Mask; 3]> {
    Ok([parse_label(sig, &t[0])?, parse_label(sig, &t[1])?, parse_label(sig, &t[2])?])
}

/// Sedenion AAA primaries; each orbit has `orbit_size` members.
pub fn u1_primaries() -> Result<(TriadList, usize)> {
    #[derive(Deserialize)]
    #[serde(rename_all = "camelCase")]
    struct F {
        signature: [usize; 2],
        orbit_size: usize,
        triads: Vec<[String; 3]>,
    }
    let f: F = load("u1_primaries", U1_PRIMARIES)?;
    let sig = sig_of(f.signature)?;
    let triads = f.triads.iter().map(|t| masks3(&sig, t)).collect::<Result<_>>()?;
    Ok((TriadList { signature: sig, triads }, f.orbit_size))
}

/// Split octonion primaries, the table count and the count given in the text.
#[derive(Clone, Debug)]
pub struct SplitOctonion {
    pub list: TriadList,
    pub zero_divisors: u64,
    pub zero_divisors_table: u64,
}

pub fn split_octonion() -> Result<SplitOctonion> {
    #[derive(Deserialize)]
    #[serde(rename_all = "camelCase")]
    struct F {
        signature: [usize; 2],
        zero_divisors: u64,
        zero_divisors_table: u64,
        primaries: Vec<[String; 3]>,
    }
    let f: F = load("split_octonion", SPLIT_OCTONION)?;
    let sig = sig_of(f.signature)?;
    let triads = f.primaries.iter().map(|t| masks3(&sig, t)).collect::<Result<_>>()?;
    Ok(SplitOctonion {
        list: TriadList { signature: sig, triads },
        zero_divisors: f.zero_divisors,
        zero_divisors_table: f.zero_divisors_table,
    })
}

/// A ring `(b, c)` with one or more `d` columns.
#[derive(Clone, Debug, Deserialize)]
pub struct RingRow {
    pub b: String,
    pub c: String,
    pub d: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PrimaryTable {
    pub category: String,
    pub zero_divisors: u64,
    /// Leading `d` columns that belong to the AAA silo; the rest are BBA.
    #[serde(default)]
    pub aaa_columns: Option<usize>,
    pub rows: Vec<RingRow>,
}

#[derive(Clone, Debug)]
pub struct PrimaryTables {
    pub signature: Signature,
    pub tables: Vec<PrimaryTable>,
}

pub fn u2_primaries() -> Result<PrimaryTables> {
    #[derive(Deserialize)]
    struct F {
        signature: [usize; 2],
        tables: Vec<PrimaryTable>,
    }
    let f: F = load("u2_primaries", U2_PRIMARIES)?;
    Ok(PrimaryTables { signature: sig_of(f.signature)?, tables: f.tables })
}

#[derive(Clone, Debug)]
pub struct A04Primaries {
    pub signature: Signature,
    pub zero_divisors: u64,
    pub primaries: usize,
    pub negative_square_subset: Vec<Mask>,
    /// `(b, c, d)` with the sign printed on `d`.
    pub entries: Vec<(Mask, Mask, Blade)>,
}

pub fn a04_primaries() -> Result<A04Primaries> {
    #[derive(Deserialize)]
    #[serde(rename_all = "camelCase")]
    struct F {
        signature: [usize; 2],
        zero_divisors: u64,
        primaries: usize,
        negative_square_subset: Vec<String>,
        rows: Vec<RingRow>,
    }
    let f: F = load("a04_primaries", A04_PRIMARIES)?;
    let sig = sig_of(f.signature)?;
    let subset = f.negative_square_subset.iter().map(|s| parse_label(&sig, s)).collect::<Result<_>>()?;
    let mut entries = Vec::new();
    for r in &f.rows {
        let (b, c) = (parse_label(&sig, &r.b)?, parse_label(&sig, &r.c)?);
        for d in &r.d {
            entries.push((b, c, signed_blade(&sig, d)?));
        }
    }
    Ok(A04Primaries {
        signature: sig,
        zero_divisors: f.zero_divisors,
        primaries: f.primaries,
        negative_square_subset: subset,
        entries,
    })
}

/// Which prime and extended associators are nonzero for each silo.
#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExtendedModeRow {
    pub silo: String,
    /// `P1_1, P3_1, P1_2, P3_2`
    pub prime: [bool; 4],
    /// `E1_1, E3_1, E1_2, E3_2, E2_3, E3_3`
    pub extended: [bool; 6],
    pub extended_silo: String,
}

pub fn extended_modes() -> Result<Vec<ExtendedModeRow>> {
    #[derive(Deserialize)]
    struct F {
        rows: Vec<ExtendedModeRow>,
    }
    Ok(load::<F>("extended_modes", EXTENDED_MODES)?.rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_parse() {
        assert_eq!(non_associative_structure().unwrap().len(), 8);
        assert_eq!(triad_structure().unwrap().len(), 10);
        assert_eq!(subalgebras().unwrap().len(), 8);
        assert_eq!(subalgebra_identification().unwrap().len(), 4);
        assert_eq!(cardinality().unwrap().len(), 11);
        assert_eq!(u1_zero_divisors().unwrap().rows.len(), 21);
        assert_eq!(u1_primaries().unwrap().0.triads.len(), 7);
        assert_eq!(u2_primaries().unwrap().tables.len(), 4);
        assert_eq!(a31_primaries().unwrap().rows.len(), 7);
        assert_eq!(a04_primaries().unwrap().entries.len(), 39);
        assert_eq!(extended_modes().unwrap().len(), 8);
        assert_eq!(split_octonion().unwrap().list.triads.len(), 6);
    }

    #[test]
    fn signed_labels() {
        let sig = Signature::imaginary(4).unwrap();
        assert_eq!(signed_blade(&sig, "-o1234").unwrap(), Blade::new(15, -1));
        assert_eq!(signed_blade(&sig, "o34").unwrap(), Blade::positive(12));
        let split = Signature::split(3, 1).unwrap();
        assert_eq!(signed_blade(&split, "-o12u1").unwrap(), Blade::new(11, -1));
    }

    #[test]
    fn table_totals_are_sums() {
        for l in subalgebras().unwrap() {
            assert_eq!(l.p4 + l.p12 + l.p14, l.total_p, "{}", l.label);
        }
        for l in triad_structure().unwrap() {
            assert_eq!(l.associative + l.non_cycles + l.cycle_triads, l.total, "{}", l.label);
        }
    }
}
