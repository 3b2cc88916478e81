use genera::acceptance;

fn check(id: u32) {
    let c = acceptance::run(id);
    println!("{c}");
    assert!(c.passed, "{c}");
}

#[test]
fn all_criteria_report() {
    for c in acceptance::run_all() {
        println!("{c}");
    }
}

#[test]
fn criterion_01() { check(1) }
#[test]
fn criterion_02() { check(2) }
#[test]
fn criterion_03() { check(3) }
#[test]
fn criterion_04() { check(4) }
#[test]
fn criterion_05() { check(5) }
#[test]
fn criterion_06() { check(6) }
#[test]
fn criterion_07() { check(7) }
#[test]
fn criterion_08() { check(8) }
#[test]
fn criterion_09() { check(9) }
#[test]
fn criterion_10() { check(10) }
#[test]
fn criterion_11() { check(11) }
#[test]
fn criterion_12() { check(12) }
#[test]
fn criterion_13() { check(13) }
#[test]
fn criterion_14() { check(14) }
