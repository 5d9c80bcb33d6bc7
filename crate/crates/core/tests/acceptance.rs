//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use nlwit_core::linalg::{decompose, kron, CMatrix, OperatorBasis};
use nlwit_core::loophole::{
    certify, linear_threshold, measured_from_true, nonlinear_threshold, simulate_clicks, surface_grid, CertifyMode,
    DetectorModel, Figure, GridRange, MeasuredTriple, Verdict,
};
use nlwit_core::states::{bell, ppt_min_eigenvalue, rho_b, werner, Bell, DensityMatrix, StateSampler};
use nlwit_core::witness::{
    apply_extended, choi_map, eval_linear, eval_nonlinear, map_witness_for, separable_minimum, witness_from_ppt,
    LinearWitness, NonlinearWitness, SConvention,
};

const C00_PHI_PLUS_TOL: f64 = 1e-12;
const C00_BOUND_TOL: f64 = 1e-10;
const ANCHOR_OFFSET: f64 = 1e-9;
const WERNER_ROOT_TOL: f64 = 1e-9;
const WERNER_CLOSED_FORM_TOL: f64 = 1e-10;
const BOUNDARY_TOL: f64 = 1e-6;
const PPT_TOL: f64 = 1e-10;
const SURFACE_TOL: f64 = 1e-12;
const SEPARABLE_FLOOR: f64 = -1e-8;
const SEPARABLE_SAMPLES: usize = 10_000;
const MC_SHOTS: u64 = 1_000_000;
const MC_SEEDS: u64 = 10;
const SOUNDNESS_TRIALS: usize = 1_000;

type Outcome = Result<String, String>;

struct Criterion {
    id: u8,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "C00 anchors",
            budget: Duration::from_secs(1),
            run: c1_c00_anchors,
        },
        Criterion {
            id: 2,
            name: "linear threshold anchor",
            budget: Duration::from_secs(1),
            run: c2_linear_anchor,
        },
        Criterion {
            id: 3,
            name: "Werner boundary",
            budget: Duration::from_secs(1),
            run: c3_werner_boundary,
        },
        Criterion {
            id: 4,
            name: "bound-entanglement boundaries",
            budget: Duration::from_secs(5),
            run: c4_bound_boundaries,
        },
        Criterion {
            id: 5,
            name: "nonlinear threshold surfaces",
            budget: Duration::from_secs(1),
            run: c5_surfaces,
        },
        Criterion {
            id: 6,
            name: "separable positivity",
            budget: Duration::from_secs(30),
            run: c6_separable_positivity,
        },
        Criterion {
            id: 7,
            name: "Monte Carlo scaling law",
            budget: Duration::from_secs(60),
            run: c7_monte_carlo,
        },
        Criterion {
            id: 8,
            name: "soundness",
            budget: Duration::from_secs(30),
            run: c8_soundness,
        },
        Criterion {
            id: 9,
            name: "nonlinear beats linear",
            budget: Duration::from_secs(1),
            run: c9_nonlinear_beats_linear,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.budget => Err(format!("{detail}; over budget {:?}", c.budget)),
            other => other,
        };
        match outcome {
            Ok(detail) => println!(
                "PASS criterion {} ({}) [{:.3}s]: {detail}",
                c.id,
                c.name,
                elapsed.as_secs_f64()
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "FAIL criterion {} ({}) [{:.3}s]: {detail}",
                    c.id,
                    c.name,
                    elapsed.as_secs_f64()
                );
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn det(eta: f64) -> DetectorModel {
    DetectorModel::new(eta).expect("eta in (0, 1]")
}

/// Point in [lo, hi] where `is_right` switches from false to true, to
/// within `tol`. Assumes a single switch.
fn bisect(mut lo: f64, mut hi: f64, tol: f64, mut is_right: impl FnMut(f64) -> bool) -> f64 {
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if is_right(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

fn bound_witness() -> LinearWitness {
    map_witness_for(&choi_map(), &rho_b(3.5).unwrap())
        .unwrap()
        .expect("rho_b(3.5) is detected by the Choi map")
}

fn c1_c00_anchors() -> Outcome {
    let w = witness_from_ppt(&bell(Bell::PhiPlus));
    let c_phi = decompose(w.matrix(), w.dims()).map_err(err)?.c00();
    let wb = bound_witness();
    let c_bound = decompose(wb.matrix(), wb.dims()).map_err(err)?.c00();
    let detail = format!("C00(W_phi+) = {c_phi:.15}, C00(W_bar) = {c_bound:.15}");
    if (c_phi - 0.25).abs() <= C00_PHI_PLUS_TOL && (c_bound - 2.0 / 9.0).abs() <= C00_BOUND_TOL {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c2_linear_anchor() -> Outcome {
    let d = det(1.0 / 3.0);
    let t = linear_threshold(0.25, d);
    let constants = Figure::PhiPlus.constants(SConvention::Schmidt).map_err(err)?;
    let below = certify(
        &MeasuredTriple::linear_only(-0.5 - ANCHOR_OFFSET),
        &constants,
        d,
        CertifyMode::Linear,
    )
    .map_err(err)?;
    let above = certify(
        &MeasuredTriple::linear_only(-0.5 + ANCHOR_OFFSET),
        &constants,
        d,
        CertifyMode::Linear,
    )
    .map_err(err)?;
    let detail = format!(
        "threshold = {t:?}, below -> {}, above -> {}",
        below.verdict, above.verdict
    );
    if t == -0.5 && below.verdict == Verdict::Entangled && above.verdict == Verdict::Inconclusive {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c3_werner_boundary() -> Outcome {
    let w = witness_from_ppt(&bell(Bell::PhiPlus));
    let value = |p: f64| eval_linear(&w, &werner(p).unwrap()).unwrap();
    let root = bisect(0.0, 1.0, 1e-12, |p| value(p) < 0.0);
    let mut worst: f64 = 0.0;
    for k in 0..50 {
        let p = k as f64 / 49.0;
        worst = worst.max((value(p) - (1.0 - 3.0 * p) / 4.0).abs());
    }
    let detail = format!("zero at p = {root:.12}, closed-form deviation {worst:.2e}");
    if (root - 1.0 / 3.0).abs() <= WERNER_ROOT_TOL && worst <= WERNER_CLOSED_FORM_TOL {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c4_bound_boundaries() -> Outcome {
    let choi = choi_map();
    let map_min = |a: f64| {
        let image = apply_extended(&choi, &rho_b(a).unwrap()).unwrap();
        let image = (&image + &image.adjoint()).scale_real(0.5);
        nlwit_core::linalg::min_eigenvalue(&image).unwrap()
    };
    let ppt_root = bisect(3.5, 5.0, 1e-9, |a| ppt_min_eigenvalue(&rho_b(a).unwrap()) < -PPT_TOL);
    let map_root = bisect(2.0, 4.0, 1e-9, |a| map_min(a) < -PPT_TOL);
    let wb = bound_witness();
    let mut region = Vec::new();
    let mut region_ok = true;
    for a in [3.25, 3.5, 3.75, 4.0] {
        let rho = rho_b(a).unwrap();
        let ppt = ppt_min_eigenvalue(&rho);
        let lin = eval_linear(&wb, &rho).map_err(err)?;
        region_ok &= ppt >= -PPT_TOL && lin < 0.0;
        region.push(format!("a={a}: ppt {ppt:.1e}, W {lin:.4}"));
    }
    let detail = format!(
        "PPT edge a = {ppt_root:.8}, map edge a = {map_root:.8}; {}",
        region.join(", ")
    );
    if (ppt_root - 4.0).abs() <= BOUNDARY_TOL && (map_root - 3.0).abs() <= BOUNDARY_TOL && region_ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c5_surfaces() -> Outcome {
    let eta = [0.4, 0.6, 0.8, 1.0];
    let xnl = [0.0, 0.25, 0.5, 1.0];
    let cases = [
        (Figure::PhiPlus, SConvention::Schmidt, 0.25, 2.0),
        (Figure::PhiPlus, SConvention::PaperFigure, 0.25, 2.0),
        (Figure::Bound, SConvention::PaperFigure, 2.0 / 9.0, 4.0),
        (Figure::Bound, SConvention::Schmidt, 2.0 / 9.0, 2.0),
    ];
    let mut worst: f64 = 0.0;
    let mut origin_ok = true;
    for (fig, conv, c00, k) in cases {
        let constants = fig.constants(conv).map_err(err)?;
        for &e in &eta {
            let rows = surface_grid(
                &constants,
                GridRange::new(e, e, 1).map_err(err)?,
                GridRange::new(0.0, 1.0, 5).map_err(err)?,
                CertifyMode::Nonlinear,
            )
            .map_err(err)?;
            for row in rows.iter().filter(|r| xnl.contains(&r.x_nl)) {
                let closed = c00 * (1.0 - 1.0 / e) + k * e * row.x_nl * row.x_nl;
                worst = worst.max((row.boundary_w_m - closed).abs());
                if e == 1.0 && row.x_nl == 0.0 {
                    origin_ok &= row.boundary_w_m.abs() <= SURFACE_TOL;
                }
            }
        }
    }
    let detail = format!("max deviation from closed forms {worst:.2e} over 4 surfaces x 16 points");
    if worst <= SURFACE_TOL && origin_ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c6_separable_positivity() -> Outcome {
    let w_phi = witness_from_ppt(&bell(Bell::PhiPlus));
    let w_bar = Figure::Bound
        .witness(SConvention::Schmidt)
        .map_err(err)?
        .linear()
        .clone();
    let f_phi = Figure::PhiPlus.witness(SConvention::Schmidt).map_err(err)?;
    let f_bar = Figure::Bound.witness(SConvention::Schmidt).map_err(err)?;
    let f_bar_paper = Figure::Bound.witness(SConvention::PaperFigure).map_err(err)?;

    let lin = |w: &LinearWitness, seed| {
        separable_minimum(w.dims(), SEPARABLE_SAMPLES, seed, |k| w.expectation_pure(k).unwrap())
    };
    let nl = |f: &NonlinearWitness, seed| {
        separable_minimum(f.linear().dims(), SEPARABLE_SAMPLES, seed, |k| f.eval_pure(k).unwrap())
    };
    let results = [
        ("W_phi+", lin(&w_phi, 61)),
        ("W_bar", lin(&w_bar, 62)),
        ("F_phi+", nl(&f_phi, 63)),
        ("F_bar[schmidt]", nl(&f_bar, 64)),
        ("F_bar[paper-figure]", nl(&f_bar_paper, 64)),
    ];
    let detail = results
        .iter()
        .map(|(n, m)| format!("min {n} = {m:.3e}"))
        .collect::<Vec<_>>()
        .join(", ");
    let failing: Vec<&str> = results
        .iter()
        .filter(|(_, m)| *m < SEPARABLE_FLOOR)
        .map(|(n, _)| *n)
        .collect();
    if failing.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; below {SEPARABLE_FLOOR:e}: {}", failing.join(", ")))
    }
}

fn pauli_pair(i: usize) -> CMatrix {
    let p = OperatorBasis::pauli();
    kron(p.element(i), p.element(i))
}

fn c7_monte_carlo() -> Outcome {
    let cases = [
        (werner(0.9).unwrap(), pauli_pair(1), "werner(0.9) XX"),
        (werner(0.6).unwrap(), pauli_pair(3), "werner(0.6) ZZ"),
    ];
    let mut lines = Vec::new();
    let mut ok = true;
    for (rho, s, label) in &cases {
        let truth = s.trace_product(rho.matrix()).map_err(err)?.re;
        for eta in [0.5, 0.8] {
            let target = truth / eta;
            let mut worst_z: f64 = 0.0;
            let mut beyond_3 = 0;
            for seed in 0..MC_SEEDS {
                let out = simulate_clicks(rho, s, MC_SHOTS, det(eta), 1000 + seed).map_err(err)?;
                let z = (out.measured_mean - target) / out.standard_error;
                worst_z = worst_z.max(z.abs());
                if z.abs() > 3.0 {
                    beyond_3 += 1;
                }
            }
            ok &= worst_z <= 5.0 && beyond_3 <= 1;
            lines.push(format!(
                "{label} eta={eta}: target {target:.4}, max |z| {worst_z:.2}, >3σ {beyond_3}"
            ));
        }
    }
    let detail = lines.join("; ");
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c8_soundness() -> Outcome {
    let witnesses: Vec<NonlinearWitness> = vec![
        Figure::PhiPlus.witness(SConvention::Schmidt).map_err(err)?,
        Figure::Bound.witness(SConvention::Schmidt).map_err(err)?,
        Figure::Bound.witness(SConvention::PaperFigure).map_err(err)?,
    ];
    let etas = [0.2, 0.35, 0.5, 0.75, 0.9, 1.0];
    let mut sampler2 = StateSampler::new((2, 2), 808);
    let mut sampler3 = StateSampler::new((3, 3), 809);
    let mut certified = 0;
    let mut false_positives = 0;
    for t in 0..SOUNDNESS_TRIALS {
        let f = &witnesses[t % witnesses.len()];
        let rho = random_state(f.linear().dims(), t, &mut sampler2, &mut sampler3);
        let d = det(etas[t % etas.len()]);
        let readout = f.readout(&rho).map_err(err)?;
        let c = f.constants();
        let triple = MeasuredTriple::new(
            measured_from_true(readout.w, c.c00, d),
            measured_from_true(readout.h, c.c0h, d),
            measured_from_true(readout.a, c.c0a, d),
        )
        .map_err(err)?;
        for (mode, ideal) in [
            (CertifyMode::Linear, readout.w),
            (CertifyMode::Nonlinear, eval_nonlinear(f, &rho).map_err(err)?),
        ] {
            if certify(&triple, &c, d, mode).map_err(err)?.verdict == Verdict::Entangled {
                certified += 1;
                if ideal >= 0.0 {
                    false_positives += 1;
                }
            }
        }
    }
    let detail =
        format!("{SOUNDNESS_TRIALS} trials x 2 modes: {certified} certified, {false_positives} with ideal value >= 0");
    if false_positives == 0 && certified > 0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Mix of random mixed states and the two reference families so that both
/// verdicts occur.
fn random_state(dims: (usize, usize), t: usize, s2: &mut StateSampler, s3: &mut StateSampler) -> DensityMatrix {
    let sampler = if dims == (2, 2) { s2 } else { s3 };
    let random = sampler.mixed_state(1 + t % (dims.0 * dims.1));
    let family = if dims == (2, 2) {
        werner((t % 101) as f64 / 100.0).unwrap()
    } else {
        rho_b(5.0 * (t % 101) as f64 / 100.0).unwrap()
    };
    let lambda = (t % 7) as f64 / 6.0;
    DensityMatrix::mixture(&[(lambda, &random), (1.0 - lambda, &family)]).unwrap()
}

fn c9_nonlinear_beats_linear() -> Outcome {
    let mut checked = 0;
    let mut violations = 0;
    for conv in [SConvention::Schmidt, SConvention::PaperFigure] {
        for fig in [Figure::PhiPlus, Figure::Bound] {
            let c = fig.constants(conv).map_err(err)?;
            for i in 1..=50 {
                let d = det(i as f64 / 50.0);
                let lin = linear_threshold(c.c00, d);
                for j in 0..=50 {
                    let x = j as f64 / 50.0;
                    let h = x / std::f64::consts::SQRT_2;
                    let nl = nonlinear_threshold(&c, h, h, d).map_err(err)?.on_w;
                    checked += 1;
                    let ok = if j == 0 { nl == lin } else { nl > lin };
                    if !ok {
                        violations += 1;
                    }
                }
            }
        }
    }
    let detail = format!("{checked} grid points, {violations} violations");
    if violations == 0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}
