#![no_main]

use libfuzzer_sys::fuzz_target;
use qsw_core::permutation::Permutation;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = s.parse::<Permutation>() {
        let inv = p.inverse();
        assert_eq!(p.compose(&inv), Permutation::identity(p.n()));
        let d = p.descent_composition();
        assert_eq!(d.weight(), p.n());
        assert_eq!(p.peak_set(), d.peak_set());
    }
});
