#![no_main]

use ainfty::geomfacts::{e1_dim, e1_total, parse_betti_list, sh2_bound};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(m) = parse_betti_list(text) else { return };
    for (&d, &b) in &m {
        let _ = e1_total(&m, &m, d);
        let _ = e1_dim(&m, &m, d, d);
        let _ = sh2_bound(b, b);
    }
    // on a bounded window the cells add up to the total
    if m.iter().all(|(d, b)| (-8..=8).contains(d) && *b < 1 << 32) {
        for k in -8..=8 {
            let cells: u64 = (-16..=0).map(|p| e1_dim(&m, &m, p, k - p)).sum();
            assert_eq!(cells, e1_total(&m, &m, k));
        }
    }
});
