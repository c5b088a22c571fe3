#![no_main]
use gkm_core::generator::{element_from_json, element_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(v) = serde_json::from_slice::<serde_json::Value>(data) else { return };
    if let Ok(e) = element_from_json(&v) {
        assert_eq!(element_from_json(&element_to_json(&e)).unwrap(), e);
    }
});
