//! Acceptance criteria. Every criterion prints one `PASS`/`FAIL` line (plus
//! indented detail lines) and then asserts.

use std::io::Write;

use qsl_core::cli::{sweep_point, GridPoint, ProcessName, SweepConfig};
use qsl_core::correlations::{concurrence_sq, negativity};
use qsl_core::dynamics::closed_form::{nonlocal_concurrence_sq, nonlocal_energy_second_moment};
use qsl_core::dynamics::{closed_form, default_steps, evolve, Picture, Process};
use qsl_core::figures::{reproduce, Curve, FigureId};
use qsl_core::speedlimits::{
    bound_bell, bound_entropy, bound_entropy_double_cs, bound_negativity, verify_rate_inequality,
    RateMeasure,
};
use qsl_core::states::{chsh_eta, make_psi_p, paper_chsh_settings, DensityOperator};

const TOL_BOUND: f64 = 1e-6;

/// Written straight to the stdout handle so the line survives output capture.
fn report(criterion: u32, name: &str, pass: bool, details: &[String]) {
    let mut text = format!(
        "\ncriterion {criterion:>2} {}: {name}\n",
        if pass { "PASS" } else { "FAIL" }
    );
    for d in details {
        text.push_str("    ");
        text.push_str(d);
        text.push('\n');
    }
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    let _ = out.flush();
}

fn open_processes() -> [(&'static str, Process); 3] {
    [
        ("dephasing", Process::dephasing(1.0).unwrap()),
        ("depolarizing", Process::depolarizing(1.0).unwrap()),
        ("amplitude", Process::amplitude_damping(1.0).unwrap()),
    ]
}

fn grid() -> Vec<GridPoint> {
    SweepConfig::acceptance_grid().points()
}

fn process_of(point: &GridPoint) -> Process {
    Process::from_kind(point.process.kind(point.param, point.mu_z)).unwrap()
}

#[test]
fn criterion_01_dephasing_nsl_is_tight() {
    let mut worst: f64 = 0.0;
    for gamma in [0.5, 1.0, 2.0] {
        let proc = Process::dephasing(gamma).unwrap();
        for p in [0.1, 0.25, 0.5, 0.75, 0.9] {
            for t in [0.05, 0.1, 0.2] {
                let traj = evolve(&proc, &make_psi_p(p).unwrap(), t, default_steps(t)).unwrap();
                let r = bound_negativity(&traj, &proc).unwrap();
                worst = worst.max((r.tightness.unwrap() - 1.0).abs());
            }
        }
    }
    let pass = worst <= 1e-5;
    report(
        1,
        "dephasing T_NSL/T = 1",
        pass,
        &[format!("max |T_NSL/T - 1| = {worst:.3e} (tol 1e-5)")],
    );
    assert!(pass);
}

#[test]
fn criterion_02_bell_bound_is_tight_at_half() {
    let p = 0.5;
    let psi = make_psi_p(p).unwrap();
    let bell = paper_chsh_settings(p).unwrap().observable();
    let mut details = Vec::new();
    let mut pass = true;
    for (name, proc) in open_processes() {
        let mut worst: f64 = 0.0;
        for k in 1..=10 {
            let t = 0.015 * k as f64;
            let traj = evolve(&proc, &bell, t, default_steps(t)).unwrap();
            let r = bound_bell(&traj, &psi, &proc).unwrap();
            worst = worst.max((r.tightness.unwrap() - 1.0).abs());
        }
        let ok = worst <= 2e-3;
        pass &= ok;
        details.push(format!(
            "{} {name}: max |T_BQSL/T - 1| = {worst:.3e} (tol 2e-3)",
            if ok { "PASS" } else { "FAIL" }
        ));
    }
    report(2, "T_BQSL/T = 1 at p = 0.5", pass, &details);
    assert!(pass, "{details:#?}");
}

#[test]
fn criterion_03_depolarizing_nsl_is_tight() {
    let curves = reproduce(FigureId::Fig3a).unwrap();
    let mut details = Vec::new();
    let mut pass = true;
    for c in &curves {
        let worst =
            c.t.iter()
                .zip(&c.values)
                .map(|(t, v)| (v / t - 1.0).abs())
                .fold(0.0, f64::max);
        let ok = worst <= 2e-3;
        pass &= ok;
        details.push(format!(
            "{} {}: max |T_NSL/T - 1| = {worst:.3e} over 200 samples",
            if ok { "PASS" } else { "FAIL" },
            c.label
        ));
    }
    report(3, "depolarizing T_NSL/T = 1 on [0, 0.5]", pass, &details);
    assert!(pass);
}

#[test]
fn criterion_04_amplitude_damping_nsl_is_loose() {
    let proc = Process::amplitude_damping(1.0).unwrap();
    let mut details = Vec::new();
    let mut pass = true;
    for p in [0.25, 0.5, 0.66] {
        let traj = evolve(&proc, &make_psi_p(p).unwrap(), 0.3, default_steps(0.3)).unwrap();
        let r = bound_negativity(&traj, &proc).unwrap();
        let ratio = r.tightness.unwrap();
        let ok = ratio <= 0.95 && r.holds(TOL_BOUND);
        pass &= ok;
        details.push(format!("p = {p}: T_NSL/T = {ratio:.6}"));
    }
    report(4, "amplitude damping T_NSL/T <= 0.95", pass, &details);
    assert!(pass);
}

#[test]
fn criterion_05_validity_sweep() {
    let points = grid();
    let mut evaluated = 0;
    let mut violations = Vec::new();
    for point in &points {
        for r in sweep_point(point).unwrap().into_iter().flatten() {
            evaluated += 1;
            if !r.holds(TOL_BOUND) {
                violations.push(format!(
                    "{} param={} p={} T={}: {} = {}",
                    point.process, point.param, point.p, point.t_final, r.kind, r.bound_value
                ));
            }
        }
    }
    let pass = violations.is_empty();
    let mut details = vec![format!(
        "{} grid points, {evaluated} bounds, {} violations",
        points.len(),
        violations.len()
    )];
    details.extend(violations);
    report(5, "every bound <= T + 1e-6 over the grid", pass, &details);
    assert!(pass);
}

#[test]
fn criterion_06_closed_form_equivalence() {
    let (p, t, steps) = (0.5, 0.5, 4000);
    let eta = chsh_eta(p).unwrap();
    let psi = make_psi_p(p).unwrap();
    let bell = paper_chsh_settings(p).unwrap().observable();
    let mut details = Vec::new();
    let mut pass = true;
    for (name, proc) in open_processes() {
        let rho = evolve(&proc, &psi, t, steps).unwrap();
        let state_err = rho
            .iter()
            .map(|(s, r)| {
                (r.matrix() - &closed_form(&proc, p, s, Picture::Schrodinger, eta).unwrap())
                    .frobenius_norm()
            })
            .fold(0.0, f64::max);
        let b = evolve(&proc, &bell, t, steps).unwrap();
        let bell_err = b
            .iter()
            .map(|(s, o)| {
                (o.matrix() - &closed_form(&proc, p, s, Picture::Heisenberg, eta).unwrap())
                    .frobenius_norm()
            })
            .fold(0.0, f64::max);
        let ok = state_err <= 1e-8 && bell_err <= 1e-8;
        pass &= ok;
        details.push(format!(
            "{name}: max rho_t error {state_err:.2e}, max B_t error {bell_err:.2e}"
        ));
    }
    report(6, "numeric trajectories match closed forms", pass, &details);
    assert!(pass);
}

#[test]
fn criterion_07_formula_spot_checks() {
    let neg_err = (0..50)
        .map(|k| {
            let p = k as f64 / 49.0;
            (negativity(&make_psi_p(p).unwrap()).unwrap() - (p * (1.0 - p)).sqrt()).abs()
        })
        .fold(0.0, f64::max);

    let (theta, mu_z) = (1.0, 0.1);
    let proc = Process::nonlocal(theta, mu_z).unwrap();
    let psi0 = make_psi_p(0.0).unwrap();
    let energy_err = (proc.energy_second_moment(psi0.matrix()) - (theta * theta + mu_z * mu_z))
        .abs()
        .max(
            (nonlocal_energy_second_moment(0.0, theta, mu_z) - (theta * theta + mu_z * mu_z)).abs(),
        );

    let mut conc_err: f64 = 0.0;
    for p in [0.0, 0.1, 0.3, 0.5] {
        let traj = evolve(&proc, &make_psi_p(p).unwrap(), 0.7, default_steps(0.7)).unwrap();
        for (t, psi) in traj.iter() {
            conc_err = conc_err
                .max((concurrence_sq(psi).unwrap() - nonlocal_concurrence_sq(p, theta, t)).abs());
        }
    }
    let pass = neg_err <= 1e-12 && energy_err <= 1e-12 && conc_err <= 1e-10;
    report(
        7,
        "negativity, energy moment and concurrence formulas",
        pass,
        &[
            format!("negativity of psi_p, 50 values: max error {neg_err:.2e} (tol 1e-12)"),
            format!("tr(psi_0 H^2) - (theta^2 + mu_z^2) = {energy_err:.2e} (tol 1e-12)"),
            format!(
                "concurrence^2 along nonlocal trajectories: max error {conc_err:.2e} (tol 1e-10)"
            ),
        ],
    );
    assert!(pass);
}

#[test]
fn criterion_08_rate_inequalities() {
    let mut checked = [0usize; 3];
    let mut worst = [0.0f64; 3];
    let mut failures = Vec::new();
    for point in grid() {
        let proc = process_of(&point);
        let traj = evolve(
            &proc,
            &make_psi_p(point.p).unwrap(),
            point.t_final,
            default_steps(point.t_final),
        )
        .unwrap();
        let measures: &[RateMeasure] = if proc.is_unitary() {
            &[
                RateMeasure::Negativity,
                RateMeasure::ConcurrenceSq,
                RateMeasure::Entropy,
            ]
        } else {
            &[RateMeasure::Negativity, RateMeasure::Entropy]
        };
        for &m in measures {
            let idx = match m {
                RateMeasure::Negativity => 0,
                RateMeasure::ConcurrenceSq => 1,
                RateMeasure::Entropy => 2,
            };
            let r = verify_rate_inequality(&traj, m, &proc).unwrap();
            checked[idx] += r.points.len();
            worst[idx] = worst[idx].max(r.max_violation());
            if !r.holds() {
                failures.push(format!(
                    "{} param={} p={} T={}: {m} exceeds by {:.3e}",
                    point.process,
                    point.param,
                    point.p,
                    point.t_final,
                    r.max_excess()
                ));
            }
        }
    }
    let pass = failures.is_empty();
    let mut details: Vec<String> = ["negativity", "concurrence_sq", "entropy"]
        .iter()
        .enumerate()
        .map(|(i, name)| {
            format!(
                "{name}: {} interior points, max violation {:.3e}",
                checked[i], worst[i]
            )
        })
        .collect();
    details.extend(failures);
    report(
        8,
        "rate inequalities along every sweep trajectory",
        pass,
        &details,
    );
    assert!(pass);
}

#[test]
fn criterion_09_entropy_bound_strengthening() {
    let mut strict = 0;
    let mut weaker = Vec::new();
    let mut largest_gap: f64 = 0.0;
    let points: Vec<GridPoint> = grid()
        .into_iter()
        .filter(|g| g.process == ProcessName::Depolarizing)
        .collect();
    for point in &points {
        let proc = process_of(point);
        let traj = evolve(
            &proc,
            &make_psi_p(point.p).unwrap(),
            point.t_final,
            default_steps(point.t_final),
        )
        .unwrap();
        let single = bound_entropy(&traj, &proc).unwrap().bound_value;
        let double = bound_entropy_double_cs(&traj, &proc).unwrap().bound_value;
        let gap = single - double;
        if gap < -1e-12 * single.abs().max(1.0) {
            weaker.push(format!(
                "gamma={} p={} T={}: {single} < {double}",
                point.param, point.p, point.t_final
            ));
        }
        if gap > 1e-9 {
            strict += 1;
        }
        largest_gap = largest_gap.max(gap);
    }
    let pass = weaker.is_empty() && strict > 0;
    let mut details = vec![format!(
        "{} depolarizing points, strictly larger at {strict}, largest gap {largest_gap:.3e}",
        points.len()
    )];
    details.extend(weaker);
    report(
        9,
        "single Cauchy-Schwarz entropy bound >= double",
        pass,
        &details,
    );
    assert!(pass);
}

fn curve<'a>(curves: &'a [Curve], label: &str) -> &'a Curve {
    curves.iter().find(|c| c.label == label).unwrap()
}

/// Samples where `lower` exceeds `upper` by more than the bound tolerance.
fn crossings(lower: &Curve, upper: &Curve) -> Vec<f64> {
    lower
        .t
        .iter()
        .zip(lower.values.iter().zip(&upper.values))
        .filter(|(_, (l, u))| **l > **u + TOL_BOUND)
        .map(|(t, _)| *t)
        .collect()
}

fn ordering_line(what: &str, bad: &[f64], samples: usize) -> (bool, String) {
    let ok = bad.is_empty();
    let line = if ok {
        format!("PASS {what}: holds at all {samples} samples")
    } else {
        format!(
            "FAIL {what}: fails at {} of {samples} samples (T = {} .. {})",
            bad.len(),
            bad[0],
            bad[bad.len() - 1]
        )
    };
    (ok, line)
}

#[test]
fn criterion_10_figure_orderings() {
    let mut pass = true;
    let mut details = Vec::new();

    let fig1 = reproduce(FigureId::Fig1).unwrap();
    let (nsl, csl) = (curve(&fig1, "nsl"), curve(&fig1, "csl"));
    let (ok, line) = ordering_line("fig1 csl >= nsl", &crossings(nsl, csl), nsl.t.len());
    pass &= ok;
    details.push(line);

    for id in [FigureId::Fig2, FigureId::Fig3b, FigureId::Fig4b] {
        let curves = reproduce(id).unwrap();
        let reference = curve(&curves, "p0.50");
        for label in ["p0.25", "p0.66"] {
            let c = curve(&curves, label);
            let (ok, line) = ordering_line(
                &format!("{id} {label} <= p0.50"),
                &crossings(c, reference),
                c.t.len(),
            );
            pass &= ok;
            details.push(line);
        }
    }
    report(10, "figure curve orderings", pass, &details);
    assert!(pass, "{details:#?}");
}

#[test]
fn criterion_11_rk4_is_fourth_order() {
    let (p, gamma, t) = (0.5, 1.0, 0.5);
    let proc = Process::dephasing(gamma).unwrap();
    let psi: DensityOperator = make_psi_p(p).unwrap();
    let exact = closed_form(&proc, p, t, Picture::Schrodinger, chsh_eta(p).unwrap()).unwrap();
    let err = |steps: usize| {
        let traj = evolve(&proc, &psi, t, steps).unwrap();
        (traj.final_state().matrix() - &exact).frobenius_norm()
    };
    let (coarse, fine) = (err(40), err(80));
    let ratio = coarse / fine;
    let pass = (12.0..=20.0).contains(&ratio);
    report(
        11,
        "RK4 error ratio under step halving",
        pass,
        &[format!(
            "error(40 steps) = {coarse:.3e}, error(80 steps) = {fine:.3e}, ratio {ratio:.3}"
        )],
    );
    assert!(pass);
}
