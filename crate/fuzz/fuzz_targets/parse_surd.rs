#![no_main]
use gkm_core::Surd;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(x) = s.parse::<Surd>() {
            let again: Surd = x.to_string().parse().expect("display output parses");
            assert_eq!(x, again);
            let json = x.to_json_value();
            assert_eq!(Surd::from_json_value(&json).unwrap(), x);
        }
    }
});
