#![no_main]

use dsop::numerics::parse_scalar;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(v) = parse_scalar(text) {
        // the canonical p/q form parses back to the same value
        let back = parse_scalar(&v.to_string()).expect("canonical form parses");
        assert_eq!(back, v);
    }
});
