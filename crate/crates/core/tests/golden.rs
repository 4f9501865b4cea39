//! Golden reports. `KUMMER_BRAUER_BLESS=1 cargo test --test golden` rewrites
//! them after an intended change.

mod common;

use std::fs;

use kummer_brauer::report::{analyze, render_report, CurvePairSpec, Format};

#[test]
fn golden_reports_regenerate() {
    let bless = std::env::var_os("KUMMER_BRAUER_BLESS").is_some();
    let dir = common::golden_dir();
    for name in common::GOLDEN_SURFACES {
        let input = fs::read_to_string(dir.join(format!("{name}.input.json"))).unwrap();
        let spec = CurvePairSpec::parse(&input).unwrap();
        let got = render_report(&analyze(&spec).unwrap(), Format::Json);
        let path = dir.join(format!("{name}.json"));
        if bless {
            fs::write(&path, &got).unwrap();
            continue;
        }
        let expected = fs::read_to_string(&path).unwrap();
        assert!(got == expected, "{name} drifted from {}", path.display());
    }
}
