#![no_main]

use fracspec::spectrum::SpectralSolution;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(sols) = serde_json::from_slice::<Vec<SpectralSolution>>(data) {
        let text = serde_json::to_string(&sols).expect("finite values serialize");
        let back: Vec<SpectralSolution> = serde_json::from_str(&text).expect("round trip");
        for (a, b) in sols.iter().zip(&back) {
            assert_eq!(a.energy.to_bits(), b.energy.to_bits());
            assert_eq!(a.k_star.to_bits(), b.k_star.to_bits());
        }
        for s in &sols {
            let _ = s.q2_residual();
        }
    }
});
