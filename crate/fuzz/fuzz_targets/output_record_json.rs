#![no_main]

use hanoi_mpoly::cli::OutputRecord;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(record) = serde_json::from_slice::<OutputRecord>(data) else {
        return;
    };
    // Serialization must never fail, and records whose binary64 convenience
    // fields are finite round-trip exactly. (JSON has no literal for the
    // non-finite values, so those records are not re-parseable by design.)
    let text = serde_json::to_string(&record).expect("records serialize");
    let finite = record
        .indices
        .r_alpha
        .iter()
        .chain(&record.indices.rr_alpha)
        .all(|v| v.value.is_finite());
    if finite {
        let again: OutputRecord = serde_json::from_str(&text).expect("reparse");
        assert_eq!(again, record);
    }
});
