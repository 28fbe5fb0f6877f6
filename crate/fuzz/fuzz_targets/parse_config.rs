#![no_main]

use fracspec_cli::config::parse_config;
use fracspec_cli::RunConfig;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(settings) = parse_config(s, "fuzz") {
            let _ = RunConfig::from_settings(settings);
        }
    }
});
