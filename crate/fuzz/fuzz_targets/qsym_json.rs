#![no_main]

use libfuzzer_sys::fuzz_target;
use qsw_core::qsym::{Basis, QSymElement};

fuzz_target!(|data: &[u8]| {
    let Ok(x) = serde_json::from_slice::<QSymElement>(data) else { return };
    // serialization round-trips on anything accepted
    let json = serde_json::to_vec(&x).expect("serializes");
    let back: QSymElement = serde_json::from_slice(&json).expect("reparses");
    assert_eq!(back, x);
    // basis changes are inverse bijections on small grades
    if x.grade() <= 7 {
        let other = match x.basis() {
            Basis::M => x.m_to_f().and_then(|f| f.f_to_m()),
            Basis::F => x.f_to_m().and_then(|m| m.m_to_f()),
        };
        assert_eq!(other.expect("round trip"), x);
    }
});
