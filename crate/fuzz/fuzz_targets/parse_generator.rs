#![no_main]
use gkm_core::GenId;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(g) = s.parse::<GenId>() {
            let again: GenId = g.to_string().parse().expect("display output parses");
            assert_eq!(g, again);
        }
    }
});
