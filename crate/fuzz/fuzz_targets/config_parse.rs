#![no_main]

use hqreg::commands::{Command, RunConfig};
use hqreg::io::parse_config;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(map) = parse_config(text) else {
        return;
    };
    for command in [Command::Fit, Command::Simulate, Command::Contour] {
        if let Ok(cfg) = RunConfig::from_map(command, &map) {
            let again = RunConfig::from_map(command, &parse_config(&cfg.render()).unwrap()).unwrap();
            assert_eq!(again.render(), cfg.render());
        }
    }
});
