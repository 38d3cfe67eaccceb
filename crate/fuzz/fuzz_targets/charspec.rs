#![no_main]

use libfuzzer_sys::fuzz_target;
use qsw_cli::charspec::CharacterSpec;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    // grammar parsing must never panic; file resolution is not attempted
    let _ = s.parse::<CharacterSpec>();
});
