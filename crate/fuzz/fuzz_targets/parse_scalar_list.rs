#![no_main]

use dsop::numerics::{parse_scalar, parse_scalar_list};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(list) = parse_scalar_list(text) {
        if !text.trim().is_empty() {
            assert_eq!(list.len(), text.split(',').count());
        }
        for v in &list {
            assert_eq!(&parse_scalar(&v.to_string()).unwrap(), v);
        }
    }
});
