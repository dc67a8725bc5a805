#![no_main]

use hanoi_mpoly::cli::parse_alpha;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    // Must never panic; accepted exponents re-render as a parseable fraction
    // that normalizes to the same value.
    if let Ok(alpha) = parse_alpha(s) {
        let fraction = format!("{}/{}", alpha.numer(), alpha.denom());
        assert_eq!(parse_alpha(&fraction).unwrap(), alpha);
    }
});
