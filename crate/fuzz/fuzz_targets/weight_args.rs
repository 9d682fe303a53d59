#![no_main]

use dsop_cli::WeightArgs;
use libfuzzer_sys::fuzz_target;

// Input lines: family, a list, b list, optional z.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let mut lines = text.splitn(4, '\n');
    let family = lines.next().unwrap_or("");
    let a = lines.next().unwrap_or("");
    let b = lines.next().unwrap_or("");
    let z = lines.next();
    if let Ok(w) = WeightArgs::parse(family, a, b, z) {
        // cancelled parameter pairs only shrink the descriptor
        assert!(w.spec.p() <= w.a.len() && w.spec.q() <= w.b.len());
    }
});
