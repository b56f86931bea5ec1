//! Plants a deliberately nonstandard wave speed in hand-built experiments
//! and checks the fit recovers it. If any discovery-side code were
//! peeking at the simulation constant instead of the data, this is where
//! it would show.

use std::f64::consts::{PI, TAU};

use discovery_core::theory_lang::Candidate;
use discovery_core::validator::{derive_c, fit};
use discovery_core::virtual_lab::{DipoleSource, Experiment, SamplePoint};

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * ((rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64))
}

fn planted_experiments(wave_speed: f64, count: usize, seed: u64) -> Vec<Experiment> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let omega = uniform(&mut rng, 1.0e9, 2.0e9);
            let source = DipoleSource::with_wave_speed(1.0, omega, wave_speed).unwrap();
            let wavelength = TAU * wave_speed / omega;
            let point = SamplePoint::new(
                uniform(&mut rng, 1.0e9, 1.0e10) * wavelength,
                uniform(&mut rng, 0.05, PI - 0.05),
                uniform(&mut rng, 0.0, TAU),
                0.0,
            );
            Experiment { source, point }
        })
        .collect()
}

#[test]
fn planted_wave_speed_is_recovered_from_the_data() {
    let planted = 1.5e8;
    let experiments = planted_experiments(planted, 5, 31);
    for label in ["HE", "IK", "JL"] {
        let candidate = Candidate::from_letters(label).unwrap();
        let theory = fit(&candidate, &experiments, 1.0e-6)
            .unwrap()
            .unwrap_or_else(|| panic!("{label} must validate"));
        let c = derive_c(&theory).unwrap().unwrap();
        assert!(
            (c - planted).abs() <= 1.0e-6 * planted,
            "{label} recovered {c}, planted {planted}"
        );
    }
}

#[test]
fn divergence_theories_hold_for_any_planted_speed() {
    for planted in [1.0e7, 2.997_924_58e8, 9.0e8] {
        let experiments = planted_experiments(planted, 5, 77);
        for label in ["C", "D"] {
            let candidate = Candidate::from_letters(label).unwrap();
            assert!(fit(&candidate, &experiments, 1.0e-6).unwrap().is_some());
        }
    }
}
