#![no_main]

use libfuzzer_sys::fuzz_target;
use quadtau::quadratic::QuadraticPoly;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = s.parse::<QuadraticPoly>() {
        let shown = p.to_string();
        assert_eq!(shown.parse::<QuadraticPoly>().unwrap(), p, "{s:?} -> {shown:?}");
        let _ = p.check_hypotheses();
        let _ = p.eval(1);
    }
});
