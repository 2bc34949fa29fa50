//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::process::Command;
use std::time::Instant;

use helium_ho::coupling::zero_mode;
use helium_ho::fixtures::{embedded_fixtures, verify_fixtures, Quantity};
use helium_ho::linalg::{dot, eigen_residual, frobenius};
use helium_ho::numeric::{match_spectra, symmetric_eigen_4x4};
use helium_ho::spectrum::{
    analytic_spectrum, check_relations, check_relations_with, wannier_spectrum, QuadraticForm,
};
use helium_ho::surface::radius_surface;
use helium_ho::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

const SAMPLES: usize = 1000;

fn ensure(ok: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn solve(n1: f64, n2: f64, n3: f64) -> std::result::Result<Solution, String> {
    let n = QuantumNumbers::new(n1, n2, n3).map_err(|e| e.to_string())?;
    solve_intersection(&n, &SolveOptions::default()).map_err(|e| format!("({n1}, {n2}, {n3}): {e}"))
}

fn random_configs(seed: u64, min_tan: f64) -> Vec<AngularConfig> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..SAMPLES)
        .map(|_| {
            AngularConfig::new(rng.gen_range(-0.999..0.999), rng.gen_range(min_tan..10.0)).unwrap()
        })
        .collect()
}

fn eigen_scale(spectrum: &ModeSpectrum) -> f64 {
    spectrum
        .modes
        .iter()
        .fold(0.0f64, |m, x| m.max(x.lambda_hat.abs()))
}

fn ground_state() -> Check {
    let start = Instant::now();
    let s = solve(1.0, 1.5, 1.5)?;
    let seconds = start.elapsed().as_secs_f64();
    let (c, t) = (s.config.cos_theta(), s.config.tan_alpha());
    let ev =
        convert(s.energy_hartree, Unit::Hartree, Unit::ElectronVolt).map_err(|e| e.to_string())?;
    ensure((c - -0.22725).abs() <= 5e-4, format!("cos_theta {c}"))?;
    ensure((t - 1.2635).abs() <= 5e-4, format!("tan_alpha {t}"))?;
    ensure((s.r - 1.0481).abs() <= 5e-3 * 1.0481, format!("r {}", s.r))?;
    ensure(
        (s.energy_hartree - -2.8827).abs() <= 1e-3,
        format!("E {}", s.energy_hartree),
    )?;
    ensure((ev - -78.44).abs() <= 0.03, format!("E {ev} eV"))?;
    ensure(seconds <= 10.0, format!("solve took {seconds:.1} s"))?;
    Ok(format!(
        "cos {c:.5}, tan {t:.4}, r {:.4}, E {:.4} Ha = {ev:.2} eV, {seconds:.2} s",
        s.r, s.energy_hartree
    ))
}

fn table_regression() -> Check {
    let entries = embedded_fixtures();
    ensure(
        entries.len() >= 40,
        format!("only {} fixtures", entries.len()),
    )?;
    let required = [
        ([1.0, 1.0, 1.0], Quantity::Energy, -3.9745),
        ([1.0, 1.0, 1.0], Quantity::TanAlpha, 1.1308),
        ([1.0, 1.0, 1.0], Quantity::CosTheta, -0.082998),
        ([1.0, 1.0, 1.0], Quantity::R, 0.788),
        ([1.0, 2.0, 2.0], Quantity::Energy, -2.4381),
        ([1.0, 2.0, 2.0], Quantity::R, 1.164),
        ([1.0, 2.0, 2.0], Quantity::TanAlpha, 1.498),
        ([1.0, 2.0, 2.0], Quantity::CosTheta, -0.26771),
        ([2.0, 2.0, 2.0], Quantity::Energy, -0.99363),
        ([2.0, 2.0, 2.0], Quantity::R, 3.152),
    ];
    for (n, q, v) in required {
        ensure(
            entries
                .iter()
                .any(|e| e.n.as_array() == n && e.quantity == q && e.value == v),
            format!("missing fixture {n:?} {q} = {v}"),
        )?;
    }
    for q in [
        Quantity::R,
        Quantity::CosTheta,
        Quantity::TanAlpha,
        Quantity::Energy,
        Quantity::Residual,
    ] {
        ensure(
            entries.iter().any(|e| e.quantity == q),
            format!("no {q} fixture"),
        )?;
    }
    let outcomes =
        verify_fixtures(&entries, &SolveOptions::default()).map_err(|e| e.to_string())?;
    let failed: Vec<String> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| {
            format!(
                "{:?} {} {} vs {}",
                o.entry.n.as_array(),
                o.entry.quantity,
                o.computed,
                o.entry.value
            )
        })
        .collect();
    ensure(failed.is_empty(), failed.join("; "))?;
    Ok(format!("{} fixtures passed", outcomes.len()))
}

fn scaling_law() -> Check {
    let base = solve(1.0, 1.0, 1.0)?;
    for k in [2.0, 3.0] {
        let s = solve(k, k, k)?;
        let dc = (s.config.cos_theta() - base.config.cos_theta()).abs();
        let dt = (s.config.tan_alpha() - base.config.tan_alpha()).abs();
        ensure(
            dc <= 1e-3 && dt <= 1e-3,
            format!("n = {k}: angles moved by {dc:e}, {dt:e}"),
        )?;
        let r_ratio = s.r / base.r;
        let e_ratio = s.energy_hartree / base.energy_hartree;
        ensure(
            (r_ratio / (k * k) - 1.0).abs() <= 1e-3,
            format!("r ratio {r_ratio}"),
        )?;
        ensure(
            (e_ratio * k * k - 1.0).abs() <= 1e-3,
            format!("E ratio {e_ratio}"),
        )?;
    }
    Ok("(1,1,1), (2,2,2), (3,3,3): shared angles, r x4 x9, E /4 /9".into())
}

fn energy_identity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    for config in random_configs(40, 1.0 + 1e-6) {
        let r = rng.gen_range(0.05..20.0);
        let spectrum = analytic_spectrum(&config).map_err(|e| e.to_string())?;
        let b = energy_sum_form(r, &spectrum).map_err(|e| e.to_string())?;
        worst = worst.max(b.agreement / b.total_closed_form.abs());
    }
    ensure(worst <= 1e-9, format!("relative disagreement {worst:e}"))?;
    let mut ridge_worst = 0.0f64;
    for k in 0..=200 {
        let cos = -0.999 + 1.998 * k as f64 / 200.0;
        let r = 0.1 + 0.05 * k as f64;
        let config = AngularConfig::new(cos, 1.0).map_err(|e| e.to_string())?;
        let closed = energy_closed_form(r, &config).map_err(|e| e.to_string())?;
        let ridge = wannier_energy(r, cos).map_err(|e| e.to_string())?.energy;
        let terms = 2.0 / r * (2.0 + 0.5 / config.rho());
        ridge_worst = ridge_worst.max((closed - ridge).abs() / terms);
    }
    ensure(
        ridge_worst <= 1e-15,
        format!("ridge formula off by {ridge_worst:e}"),
    )?;
    Ok(format!(
        "max relative gap {worst:.1e}; ridge formula equal to rounding ({ridge_worst:.1e})"
    ))
}

fn spectral_correctness() -> Check {
    let (mut dev, mut resid, mut zero) = (0.0f64, 0.0f64, 0.0f64);
    for config in random_configs(50, 1.0 + 1e-6) {
        let system = build_coupling(&config);
        let spectrum = analytic_spectrum(&config).map_err(|e| e.to_string())?;
        let numeric = symmetric_eigen_4x4(&system.c2_matrix).map_err(|e| e.to_string())?;
        let matched = match_spectra(&spectrum, &numeric).map_err(|e| e.to_string())?;
        dev = dev.max(matched.max_eigenvalue_deviation / eigen_scale(&spectrum));
        let norm = frobenius(&system.c2_matrix);
        for m in &spectrum.modes {
            resid = resid.max(eigen_residual(&system.c2_matrix, m.lambda_hat, &m.eigvec) / norm);
        }
        let e4 = zero_mode(&config);
        resid = resid.max(eigen_residual(&system.c2_matrix, 0.0, &e4) / norm);
        zero = zero.max(dot(&system.c_vector, &e4).abs());
    }
    ensure(dev <= 1e-9, format!("eigenvalue deviation {dev:e}"))?;
    ensure(resid <= 1e-9, format!("eigen residual {resid:e}"))?;
    ensure(zero <= 1e-12, format!("zero-mode coupling {zero:e}"))?;
    Ok(format!(
        "eigenvalue dev {dev:.1e}, residual {resid:.1e}, zero-mode coupling {zero:.1e}"
    ))
}

fn relation_suite() -> Check {
    let (mut orth, mut sums, mut norm) = (0.0f64, 0.0f64, 0.0f64);
    let mut alternative = 0.0f64;
    for config in random_configs(60, 1.0 + 1e-6) {
        let spectrum = analytic_spectrum(&config).map_err(|e| e.to_string())?;
        let report = check_relations(&spectrum).map_err(|e| e.to_string())?;
        orth = orth.max(report.max_orthogonality());
        sums = sums.max(report.max_sum_deviation());
        norm = norm.max(report.normalization());
        let other = check_relations_with(&spectrum, QuadraticForm::TanSquared)
            .map_err(|e| e.to_string())?;
        alternative = alternative.max(other.max_sum_deviation());
    }
    ensure(orth <= 1e-9, format!("orthogonality {orth:e}"))?;
    ensure(sums <= 1e-9, format!("sum deviation {sums:e}"))?;
    ensure(norm <= 1e-9, format!("normalization {norm:e}"))?;
    ensure(
        alternative > 1e-3,
        "tan^2 weighting unexpectedly satisfies the sums",
    )?;
    Ok(format!(
        "orthogonality {orth:.1e}, nine sums {sums:.1e}, normalization {norm:.1e} (tan^-2 weighting; tan^2 weighting misses by {alternative:.1e})"
    ))
}

fn wannier_ridge() -> Check {
    let (mut product, mut resid, mut k_dev) = (0.0f64, 0.0f64, 0.0f64);
    for k in 0..=1000 {
        let cos = -0.999 + 1.998 * k as f64 / 1000.0;
        let w = wannier_spectrum(cos).map_err(|e| e.to_string())?;
        product = product.max((w.gamma_plus * w.gamma_minus + 1.0).abs());
        let config = w.config();
        let system = build_coupling(&config);
        let norm = frobenius(&system.c2_matrix);
        for m in &w.modes {
            resid = resid.max(eigen_residual(&system.c2_matrix, m.lambda_hat, &m.eigvec) / norm);
        }
        // Radial constant from the numeric eigenpair with the most negative
        // eigenvalue, independent of the closed forms.
        let numeric = symmetric_eigen_4x4(&system.c2_matrix).map_err(|e| e.to_string())?;
        let lambda = numeric.eigenvalues[0];
        let c_hat = dot(&system.c_vector, &numeric.eigenvectors[0]);
        let oracle = config.rho().powi(3) * lambda.abs().powi(3) / (4.0 * c_hat.powi(4));
        let model = radius_surface(&w.modes[0], 1.0, &config).ok_or("radial surface undefined")?;
        k_dev = k_dev.max((oracle - 0.25).abs()).max((model - oracle).abs());
    }
    ensure(product <= 1e-12, format!("gamma+ gamma- + 1 = {product:e}"))?;
    ensure(resid <= 1e-10, format!("ridge eigen residual {resid:e}"))?;
    ensure(
        k_dev <= 1e-12,
        format!("radial constant off 1/4 by {k_dev:e}"),
    )?;
    Ok(format!(
        "gamma+ gamma- = -1 to {product:.1e}, residual {resid:.1e}, K = 1/4 (not 1) to {k_dev:.1e}"
    ))
}

fn failure_behavior() -> Check {
    let n = QuantumNumbers::new(1.5, 0.5, 5.0).map_err(|e| e.to_string())?;
    match solve_intersection(&n, &SolveOptions::default()) {
        Err(Error::NoIntersection { .. }) => {}
        other => return Err(format!("library returned {other:?}")),
    }
    let status = Command::new(env!("CARGO_BIN_EXE_helium-ho"))
        .args(["solve", "--n1", "1.5", "--n2", "0.5", "--n3", "5"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(
        status.status.code() == Some(2),
        format!("exit status {:?}", status.status.code()),
    )?;
    Ok("(1.5, 0.5, 5): NoIntersection, exit 2".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("ground state", ground_state),
        ("table regression", table_regression),
        ("scaling law", scaling_law),
        ("energy identity", energy_identity),
        ("spectral correctness", spectral_correctness),
        ("relation suite", relation_suite),
        ("Wannier ridge", wannier_ridge),
        ("failure behavior", failure_behavior),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {}: {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{}/{} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
