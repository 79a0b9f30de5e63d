//! Closed-form counts. Level `m` means `n = m + 3` generators and
//! `N_m = 2^(m+3) - 1` pure blades.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::{Error, Result};

/// Pure blade count `2^n - 1`.
pub fn pure_count(n: usize) -> BigInt {
    (BigInt::one() << n) - 1
}

fn n_m(m: usize) -> BigInt {
    pure_count(m + 3)
}

pub fn triad_total(n: usize) -> BigInt {
    let big = pure_count(n);
    &big * (&big - 1) * (&big - 2) / 6
}

/// Quaternion rings, `N(N-1)/6`.
pub fn h_count(n: usize) -> BigInt {
    let big = pure_count(n);
    &big * (&big - 1) / 6
}

pub(crate) fn h_count_u64(n: usize) -> u64 {
    let big = (1u64 << n) - 1;
    big * (big - 1) / 6
}

/// Zero-divisor pairs, `(N-1)(N-3)(N-7)/16`.
pub fn z_count(m: usize) -> BigInt {
    let big = n_m(m);
    (&big - 1) * (&big - 3) * (&big - 7) / 16
}

/// Quasi-octonion subalgebras, `(N-1)(N-3)(N-7)/192`.
pub fn s_count(m: usize) -> BigInt {
    let big = n_m(m);
    (&big - 1) * (&big - 3) * (&big - 7) / 192
}

/// Octonion subalgebras, `S_{m+1}/7 - S_m`.
pub fn o_count(m: usize) -> BigInt {
    s_count(m + 1) / 7 - s_count(m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), passed, detail: detail.into() }
    }

    pub fn eq<T: PartialEq + std::fmt::Display>(name: impl Into<String>, got: T, want: T) -> Self {
        let passed = got == want;
        Self::new(name, passed, format!("got {got}, expected {want}"))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CountReport {
    pub m: usize,
    pub n: usize,
    pub pure_blades: BigInt,
    pub triad_total: BigInt,
    pub h: BigInt,
    pub s: BigInt,
    pub o: BigInt,
    pub z: BigInt,
    pub non_associative: BigInt,
    pub factor_28: BigInt,
    pub factor_84: BigInt,
    pub checks: Vec<Check>,
}

impl CountReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub const CONSISTENCY_MAX_LEVEL: usize = 7;

/// Internal identities of the closed forms for `m = 0..=m_max`.
pub fn consistency_check(m_max: usize) -> Result<Vec<CountReport>> {
    if m_max > CONSISTENCY_MAX_LEVEL {
        return Err(Error::Domain(format!("levels above {CONSISTENCY_MAX_LEVEL} are not covered")));
    }
    let mut out = Vec::new();
    for m in 0..=m_max {
        let n = m + 3;
        let (h, s, o, z) = (h_count(n), s_count(m), o_count(m), z_count(m));
        let total = triad_total(n);
        let non_assoc: BigInt = &total - &h;
        let factor_28: BigInt = &non_assoc / 28;
        let factor_84: BigInt = &z / 84;
        let mut checks = vec![
            Check::eq("Z = 12 S", z.clone(), &s * 12),
            Check::eq("S(m+1) = 7 (O + S)", s_count(m + 1), (&o + &s) * 7),
            Check::eq("non-associative triads = 28 (O + S)", non_assoc.clone(), (&o + &s) * 28),
            Check::new("28 divides non-associative triads", (&non_assoc % BigInt::from(28)).is_zero(), non_assoc.to_string()),
            Check::new("84 divides Z", (&z % BigInt::from(84)).is_zero(), z.to_string()),
            Check::eq("28 factor = next level's 84 factor", factor_28.clone(), z_count(m + 1) / 84),
        ];
        if m > 0 {
            checks.push(Check::new("7 divides S", (&s % BigInt::from(7)).is_zero(), s.to_string()));
        }
        out.push(CountReport {
            m,
            n,
            pure_blades: pure_count(n),
            triad_total: total,
            h,
            s,
            o,
            z,
            non_associative: non_assoc,
            factor_28,
            factor_84,
            checks,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: u64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn small_values() {
        assert_eq!(h_count(2), b(1));
        assert_eq!(h_count(3), b(7));
        assert_eq!(h_count(4), b(35));
        assert_eq!(z_count(0), b(0));
        assert_eq!(z_count(1), b(84));
        assert_eq!(z_count(2), b(1260));
        assert_eq!(s_count(1), b(7));
        assert_eq!(s_count(2), b(105));
        assert_eq!(o_count(0), b(1));
        assert_eq!(o_count(1), b(8));
        assert_eq!(triad_total(4), b(455));
    }

    #[test]
    fn all_levels_consistent() {
        let reports = consistency_check(7).unwrap();
        assert_eq!(reports.len(), 8);
        for r in &reports {
            assert!(r.passed(), "{:?}", r.checks);
        }
        assert_eq!(reports[1].factor_28, b(15));
        assert_eq!(reports[2].factor_84, b(15));
        assert!(consistency_check(8).is_err());
    }
}
