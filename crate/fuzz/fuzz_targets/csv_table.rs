#![no_main]

use dsop_cli::CsvTable;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(table) = CsvTable::parse(text) else { return };
    // emitting is a fixed point after one round
    let once = table.emit();
    let again = CsvTable::parse(&once).expect("emitted table parses");
    assert_eq!(again.emit(), once);
});
