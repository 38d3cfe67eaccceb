#![no_main]

use libfuzzer_sys::fuzz_target;
use qsw_core::rational::Rational;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    // parsing must never panic; accepted values must round-trip exactly
    if let Ok(r) = s.parse::<Rational>() {
        let back: Rational = r.to_string().parse().expect("display output reparses");
        assert_eq!(back, r);
    }
});
