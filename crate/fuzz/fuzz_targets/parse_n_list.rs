#![no_main]

use libfuzzer_sys::fuzz_target;
use quadtau::cli::parse_n_list;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(ns) = parse_n_list(s) {
        assert!(!ns.is_empty());
        assert!(ns.iter().all(|&n| n >= 1));
        let plain: Vec<String> = ns.iter().map(u64::to_string).collect();
        assert_eq!(parse_n_list(&plain.join(",")).unwrap(), ns);
    }
});
