#![no_main]

use fracspec_cli::branch::parse_branch_file;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(b) = parse_branch_file(s, "fuzz") {
            let again = parse_branch_file(&b.to_text(), "fuzz").expect("rendered file parses");
            assert_eq!(again.entries().len(), b.entries().len());
        }
    }
});
