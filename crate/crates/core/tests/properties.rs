use proptest::prelude::*;

use xdecay::oracle::{embed_xstate, wootters_concurrence};
use xdecay::{
    bell_bound, concurrence_x, death_time, decay_pair, default_time_tol, energy_report,
    evolve_xstate, general_bound, general_death_omega_sq, is_fully_disentangled,
    omega_sq_from_delta_e, preset_state, time_for_omega_sq, time_to_transfer, BathParams,
    BoundVariant, DeathResult, QubitEnergy, XState,
};

fn xstate() -> impl Strategy<Value = XState> {
    (prop::array::uniform4(1e-3f64..1.0), -1.0f64..=1.0).prop_map(|(w, u)| {
        let total: f64 = w.iter().sum();
        let (a, b, c) = (w[0] / total, w[1] / total, w[2] / total);
        let d = (1.0 - a - b - c).max(0.0);
        XState::new(a, b, c, d, u * (b * c).sqrt()).unwrap()
    })
}

fn entangled_xstate() -> impl Strategy<Value = XState> {
    xstate().prop_filter("entangled", |x| concurrence_x(x) > 1e-6)
}

fn bath() -> impl Strategy<Value = BathParams> {
    (0.1f64..5.0, 0.0f64..10.0).prop_map(|(g, n)| BathParams::new(g, n).unwrap())
}

fn unit() -> QubitEnergy {
    QubitEnergy::new(1.0).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn evolution_preserves_trace_and_positivity(x0 in xstate(), bath in bath(), s in 0.0f64..20.0) {
        let xt = evolve_xstate(&x0, &bath, s / bath.total_rate()).unwrap();
        prop_assert!((xt.trace() - 1.0).abs() <= 1e-12);
        let [a, b, c, d, z] = xt.to_array();
        prop_assert!(a >= -1e-12 && b >= -1e-12 && c >= -1e-12 && d >= -1e-12);
        prop_assert!(z.abs() <= (b * c).sqrt() + 1e-12);
    }

    #[test]
    fn evolution_composes(x0 in xstate(), bath in bath(), s1 in 0.0f64..5.0, s2 in 0.0f64..5.0) {
        let rate = bath.total_rate();
        let (t1, t2) = (s1 / rate, s2 / rate);
        let stepwise = evolve_xstate(&evolve_xstate(&x0, &bath, t1).unwrap(), &bath, t2).unwrap();
        let direct = evolve_xstate(&x0, &bath, t1 + t2).unwrap();
        prop_assert!(stepwise.max_abs_diff(&direct) <= 1e-10);
    }

    #[test]
    fn coherence_decays_strictly(x0 in xstate(), bath in bath(), s in 0.0f64..10.0, ds in 1e-3f64..1.0) {
        prop_assume!(x0.z() != 0.0);
        let rate = bath.total_rate();
        let early = evolve_xstate(&x0, &bath, s / rate).unwrap();
        let late = evolve_xstate(&x0, &bath, (s + ds) / rate).unwrap();
        prop_assert!(late.z().abs() < early.z().abs());
    }

    #[test]
    fn no_revival_after_death(x0 in xstate(), bath in bath(), s in 0.0f64..10.0, ds in 0.0f64..10.0) {
        let rate = bath.total_rate();
        let early = evolve_xstate(&x0, &bath, s / rate).unwrap();
        prop_assume!(is_fully_disentangled(&early));
        let late = evolve_xstate(&x0, &bath, (s + ds) / rate).unwrap();
        prop_assert!(is_fully_disentangled(&late));
    }

    #[test]
    fn predicate_matches_concurrence(x in xstate()) {
        prop_assert_eq!(is_fully_disentangled(&x), concurrence_x(&x) == 0.0);
    }

    #[test]
    fn concurrence_paths_agree(x in xstate()) {
        let general = wootters_concurrence(&embed_xstate(&x)).unwrap();
        prop_assert!((general - concurrence_x(&x)).abs() <= 1e-10);
    }

    #[test]
    fn closed_form_energy_and_round_trip(x0 in xstate(), bath in bath(), s in 0.0f64..10.0) {
        let t = s / bath.total_rate();
        let report = energy_report(&x0, &bath, t, &unit()).unwrap();
        let w2 = decay_pair(&bath, t).unwrap().omega_sq;
        prop_assert!((report.e_final - 0.5 * (report.alpha + report.beta * w2)).abs() <= 1e-10);
        if let Ok(back) = omega_sq_from_delta_e(report.delta_e, &x0, bath.nbar(), &unit()) {
            // Reconstruction divides by the inversion offset; its rounding scales inversely.
            let offset = 0.5 * report.beta.abs();
            prop_assert!((back - w2).abs() <= 1e-10f64.max(1e-15 / offset));
        }
        if let Some(w) = report.omega_sq_reconstructed {
            prop_assert!((0.0..=1.0).contains(&w));
        }
    }

    #[test]
    fn corrected_bound_is_sufficient(x0 in xstate(), nbar in 0.01f64..10.0, s in 0.0f64..10.0) {
        let bath = BathParams::new(1.0, nbar).unwrap();
        let t = s / bath.total_rate();
        let bound = general_bound(&x0, nbar, &unit(), BoundVariant::Corrected).unwrap();
        let report = energy_report(&x0, &bath, t, &unit()).unwrap();
        if report.delta_e.abs() >= bound {
            prop_assert_eq!(concurrence_x(&evolve_xstate(&x0, &bath, t).unwrap()), 0.0);
        }
        // the ω² threshold form implies death directly
        let threshold = general_death_omega_sq(&x0, nbar).unwrap();
        if decay_pair(&bath, t).unwrap().omega_sq >= threshold {
            prop_assert_eq!(concurrence_x(&evolve_xstate(&x0, &bath, t).unwrap()), 0.0);
        }
    }

    #[test]
    fn bell_reduction(nbar in 0.0f64..50.0, ea in 0.1f64..10.0) {
        let eq = QubitEnergy::new(ea).unwrap();
        for name in ["bell-plus", "bell-minus"] {
            let bell = preset_state(name).unwrap();
            let g = general_bound(&bell, nbar, &eq, BoundVariant::Corrected).unwrap();
            prop_assert!((g - bell_bound(nbar, &eq).unwrap()).abs() <= 1e-12 * ea);
        }
    }

    #[test]
    fn death_time_is_bracketed_and_consistent(x0 in entangled_xstate(), bath in bath()) {
        let tol = default_time_tol(&bath);
        let result = death_time(&x0, &bath, &unit(), tol).unwrap();
        if bath.nbar() > 0.0 {
            prop_assert!(matches!(result, DeathResult::Finite(_)));
        }
        if let DeathResult::Finite(d) = result {
            let (lo, hi) = d.bracket;
            prop_assert!(hi - lo <= tol);
            prop_assert!(evolve_xstate(&x0, &bath, lo).unwrap().entanglement_margin() > 0.0);
            prop_assert!(evolve_xstate(&x0, &bath, hi).unwrap().entanglement_margin() <= 0.0);
            let later = evolve_xstate(&x0, &bath, d.time + 10.0 * tol).unwrap();
            prop_assert_eq!(concurrence_x(&later), 0.0);
            if d.time > 1e-6 {
                let before = evolve_xstate(&x0, &bath, d.time - 1e-6).unwrap();
                prop_assert!(concurrence_x(&before) > 0.0);
            }
            // bound ordering: the corrected bound time is never earlier than death
            let bound = general_bound(&x0, bath.nbar(), &unit(), BoundVariant::Corrected).unwrap();
            if let Some(tb) = time_to_transfer(&x0, &bath, &unit(), bound).unwrap() {
                prop_assert!(d.time <= tb + tol);
            }
            if let Some(tw) = time_for_omega_sq(&bath, general_death_omega_sq(&x0, bath.nbar()).unwrap()) {
                prop_assert!(d.time <= tw + tol);
            }
        }
    }

    #[test]
    fn bell_death_precedes_threshold_time(nbar in 0.01f64..20.0, gamma in 0.1f64..5.0) {
        let bath = BathParams::new(gamma, nbar).unwrap();
        let bell = preset_state("bell-plus").unwrap();
        let tol = default_time_tol(&bath);
        let t = death_time(&bell, &bath, &unit(), tol).unwrap().time().unwrap();
        let threshold = xdecay::bell_death_omega_sq(nbar).unwrap();
        let tb = time_for_omega_sq(&bath, threshold).unwrap();
        prop_assert!(t <= tb + tol);
    }
}
