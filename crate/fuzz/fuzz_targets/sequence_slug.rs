#![no_main]

use hanoi_mpoly::indices::Sequence;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    // Must never panic; accepted slugs round-trip through their canonical
    // rendering.
    if let Ok(seq) = s.parse::<Sequence>() {
        assert_eq!(seq.slug().parse::<Sequence>().unwrap(), seq);
    }
});
