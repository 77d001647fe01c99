#![no_main]

use hqreg::io::read_csv;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(d) = read_csv(data, "fuzz") {
        assert_eq!(d.predictors.len(), d.data.k());
        assert!(d.data.n() > 0);
        assert!(d.data.x.iter().chain(d.data.y.iter()).all(|v| v.is_finite()));
    }
});
