#![no_main]

use esurf::weierstrass::WeierstrassModel;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = WeierstrassModel::parse(text) {
        assert_eq!(WeierstrassModel::parse(&m.to_string()).as_ref(), Ok(&m));
    }
});
