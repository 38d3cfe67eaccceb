#![no_main]

use libfuzzer_sys::fuzz_target;
use qsw_core::composition::Composition;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(c) = s.parse::<Composition>() {
        // the subset correspondence must round-trip on anything accepted
        let set = c.descent_set();
        let back = Composition::from_subset(&set, c.weight()).expect("partial sums are valid");
        assert_eq!(back, c);
        if c.length() <= 12 {
            for (blocks, sums) in c.splits() {
                assert_eq!(blocks.len(), sums.length());
            }
        }
    }
});
