#![no_main]
use gkm_core::parse_element;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(e) = parse_element(s) {
            let again = parse_element(&e.to_string()).expect("display output parses");
            assert_eq!(e, again);
        }
    }
});
