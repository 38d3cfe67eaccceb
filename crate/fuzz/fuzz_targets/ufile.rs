#![no_main]

use libfuzzer_sys::fuzz_target;
use qsw_cli::charspec::parse_ufile;
use qsw_core::composition::Composition;
use qsw_core::endo::Character;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(values) = parse_ufile(s) else { return };
    // character construction validates that the keys are Lyndon
    let small = values.iter().all(|(k, _)| k.weight() <= 6);
    if let Ok(char) = Character::u_assignment(values) {
        if small {
            let _ = char.value(&Composition::single(3));
        }
    }
});
