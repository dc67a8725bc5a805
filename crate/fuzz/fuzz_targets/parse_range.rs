#![no_main]

use hanoi_mpoly::cli::parse_range;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    // Must never panic; accepted ranges re-render to an equivalent form.
    if let Ok(range) = parse_range(s) {
        assert!(range.start() <= range.end());
        let canonical = format!("{}..{}", range.start(), range.end());
        assert_eq!(parse_range(&canonical).unwrap(), range);
    }
});
