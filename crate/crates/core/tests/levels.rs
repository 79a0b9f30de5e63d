use cdlab::verify::verify;
use cdlab::Algebra;

fn assert_verified(q: usize, p: usize) {
    let report = verify(&Algebra::split(q, p).unwrap(), 0).unwrap();
    let failures: Vec<String> = report.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect();
    assert!(failures.is_empty(), "{}: {failures:#?}", report.signature);
}

#[test]
fn imaginary_levels_three_to_seven() {
    for n in 3..=7 {
        assert_verified(n, 0);
    }
}

#[test]
fn split_octonions() {
    assert_verified(0, 3);
}

#[test]
fn split_sedenions() {
    for (q, p) in [(3, 1), (2, 2), (1, 3), (0, 4)] {
        assert_verified(q, p);
    }
}

#[test]
fn checks_are_not_vacuous() {
    let report = verify(&Algebra::imaginary(5).unwrap(), 0).unwrap();
    for name in ["silo BBA", "non-cycle A", "P12 subalgebras", "zero divisors", "BbaOnly zero divisors", "extended-mode silo map"] {
        assert!(report.checks.iter().any(|c| c.name == name), "missing {name}");
    }
}
