mod support {
    pub mod properties;
}

use support::properties::suites;

#[test]
fn engine_properties() {
    let mut total = 0;
    for (name, cases, suite) in suites() {
        match suite(cases) {
            Ok(n) => total += n,
            Err(e) => panic!("{name}: {e}"),
        }
    }
    assert!(total >= 500, "{total}");
}
