#![no_main]

use esurf::monodromy::parse_perm;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let degree = usize::from(n % 32);
    if let Ok(p) = parse_perm(text, degree) {
        assert_eq!(parse_perm(&p.to_string(), degree).as_ref(), Ok(&p));
    }
});
