use std::fmt::Write as _;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::config::ExperimentConfig;
use super::vector::VectorSpec;
use crate::error::Result;
use crate::scramble::{
    build_construction, check_invariants, f_bounds, pair_family, verify_dc_pair, EpsRule, PairReport,
};
use crate::seqspace::TruncatedVector;
use crate::shiftops::{LinearOperator, ShiftOperator};
use crate::spectral::{
    eigen_disk_radius, eigen_residual, gen_eigenvector, kernel_residual, mixing_witness, periodic_approximant,
    EigenVector, RootOfUnity,
};
use crate::unimodal::{certify_nu, nu_witness};

/// Result of one command before it is written to disk.
#[derive(Clone, Debug)]
pub struct CommandOutput {
    pub result: Value,
    pub pass: bool,
    /// Complete CSV text, header included.
    pub csv: String,
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize to JSON")
}

fn csv(header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    out
}

fn vector_csv(v: &TruncatedVector) -> String {
    let mut out = Vec::new();
    v.write_csv(&mut out).expect("writing to memory cannot fail");
    String::from_utf8(out).expect("CSV is ASCII")
}

pub fn orbit(cfg: &ExperimentConfig, op: &ShiftOperator) -> Result<CommandOutput> {
    let p = &cfg.orbit;
    let x = p.vector.parse::<VectorSpec>()?.resolve(op)?;
    let norms = op.orbit_norms(&x, p.n_max);
    let result = json!({
        "vector": p.vector,
        "support_len": x.support_len(),
        "n_max": p.n_max,
        "orbit_norms": to_json(&norms),
    });
    let rows = norms.iter().enumerate().map(|(i, v)| format!("{i},{v}"));
    Ok(CommandOutput { result, pass: true, csv: csv("i,norm", rows) })
}

/// `(T - ω)^{j+1} v` can only see the discarded coordinates `L..L+j`.
fn residual_bound(op: &ShiftOperator, ev: &EigenVector, trunc_len: usize) -> f64 {
    let r = op.norm_bound();
    let modulus = ev.omega.norm();
    let rounding = 1e-12 * (1.0 + ev.vector.norm());
    if ev.order == 0 {
        let last = ev.vector.coord(trunc_len - 1).abs().to_f64();
        modulus * last + r * ev.tail_bound + rounding
    } else {
        (r + modulus).powi(ev.order as i32 + 1) * ev.tail_bound + rounding
    }
}

#[derive(Serialize)]
struct SweepPoint {
    omega: Complex64,
    residual: f64,
    bound: f64,
    pass: bool,
}

pub fn eigen(cfg: &ExperimentConfig, op: &ShiftOperator) -> Result<CommandOutput> {
    let p = &cfg.eigen;
    let omega = Complex64::new(p.omega_re, p.omega_im);
    let ev = gen_eigenvector(op, omega, p.order, p.trunc_len)?;
    let residual = kernel_residual(op, &ev);
    let bound = residual_bound(op, &ev, p.trunc_len);

    let disk = eigen_disk_radius(op, crate::spectral::DEFAULT_PROBE_LEN)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let sweep = (0..p.sweep)
        .map(|_| {
            let radius = 0.9 * disk.usable_radius() * rng.gen::<f64>().sqrt();
            let w = Complex64::from_polar(radius, rng.gen_range(0.0..std::f64::consts::TAU));
            let k = gen_eigenvector(op, w, 0, p.trunc_len)?;
            let residual = eigen_residual(op, &k);
            let last = k.vector.coord(p.trunc_len - 1).abs().to_f64();
            let bound = w.norm() * last + 1e-12;
            Ok(SweepPoint { omega: w, residual, bound, pass: residual <= bound })
        })
        .collect::<Result<Vec<_>>>()?;

    let pass = residual <= bound && sweep.iter().all(|s| s.pass);
    let result = json!({
        "omega": to_json(&omega),
        "order": ev.order,
        "trunc_len": p.trunc_len,
        "tail_bound": ev.tail_bound,
        "tail_ratio": ev.tail_ratio,
        "norm": ev.vector.norm(),
        "kernel_residual": residual,
        "residual_bound": bound,
        "sweep": to_json(&sweep),
    });
    Ok(CommandOutput { result, pass, csv: vector_csv(&ev.vector) })
}

pub fn radius(cfg: &ExperimentConfig, op: &ShiftOperator) -> Result<CommandOutput> {
    let probe = cfg.radius.probe_len;
    let disk = eigen_disk_radius(op, probe)?;
    let logs = op.weights().log_prefix_products(probe);
    let result = json!({
        "probe_len": probe,
        "radius": disk.radius,
        "estimate_error": disk.estimate_error,
        "usable_radius": disk.usable_radius(),
        "contains_unit_circle": disk.contains(1.0),
    });
    let rows = (1..=probe).map(|n| format!("{n},{}", (logs[n] / n as f64).exp()));
    Ok(CommandOutput { result, pass: disk.radius > 0.0, csv: csv("n,root", rows) })
}

pub fn mixing(cfg: &ExperimentConfig, op: &ShiftOperator) -> Result<CommandOutput> {
    let p = &cfg.mixing;
    let parts = |list: &[[f64; 4]]| -> Vec<(Complex64, Complex64)> {
        list.iter().map(|[a, b, c, d]| (Complex64::new(*a, *b), Complex64::new(*c, *d))).collect()
    };
    let w = mixing_witness(op, &parts(&p.x_part), &parts(&p.y_part), p.eps, p.trunc_len)?;
    let result = json!({
        "N": w.threshold,
        "eps": w.eps,
        "M": w.m_bound,
        "lambda_bar": w.lambda_bar,
        "rho_bar": w.rho_bar,
        "checks": to_json(&w.checks),
        "certified": w.certified(),
    });
    let rows = w.checks.iter().map(|c| format!("{},{},{}", c.k, c.d_in, c.d_out));
    Ok(CommandOutput { result, pass: w.certified(), csv: csv("k,d_in,d_out", rows) })
}

pub fn periodic(cfg: &ExperimentConfig, op: &ShiftOperator) -> Result<CommandOutput> {
    let p = &cfg.periodic;
    let root = RootOfUnity::new(p.p, p.q)?;
    let target = p.target.parse::<VectorSpec>()?.resolve(op)?;
    let a = periodic_approximant(op, root, p.depth, &target, p.trunc_len)?;
    let pass = a.residual <= a.tolerance;
    let result = json!({
        "root": to_json(&root),
        "depth": p.depth,
        "period": a.period,
        "dist_to_target": a.dist_to_target,
        "residual": a.residual,
        "tolerance": a.tolerance,
        "coefficients": to_json(&a.coefficients),
        "pass": pass,
    });
    Ok(CommandOutput { result, pass, csv: vector_csv(&a.point) })
}

pub fn witness(cfg: &ExperimentConfig, op: &ShiftOperator) -> Result<CommandOutput> {
    let p = &cfg.witness;
    let cert = nu_witness(op, p.gamma, p.m)?;
    let pass = certify_nu(op, &cert.witness, p.gamma, p.m).is_ok();
    let ratios = cert.growth_ratios();
    let result = json!({
        "gamma": cert.gamma,
        "m": cert.m,
        "witness_support": cert.witness.support_len(),
        "witness_kind": to_json(&cert.kind),
        "orbit_norms": to_json(&cert.orbit),
        "growth_ratios": ratios,
        "decay_index": cert.decay_index,
        "witness": cert.witness.to_json(),
        "pass": pass,
    });
    let rows = cert.orbit.iter().enumerate().map(|(i, v)| format!("{i},{v}"));
    Ok(CommandOutput { result, pass, csv: csv("i,norm", rows) })
}

#[derive(Serialize)]
struct PairEntry {
    a: usize,
    b: usize,
    tau: f64,
    report: PairReport,
}

pub fn scramble(cfg: &ExperimentConfig, op: &ShiftOperator) -> Result<CommandOutput> {
    let p = &cfg.scramble;
    let rule: EpsRule = p.eps.parse()?;
    let c = build_construction(op, p.gamma, p.depth, &rule, p.n1)?;
    let invariants = check_invariants(op, &c);
    let family = pair_family(p.depth, p.pairs)?;

    let mut pairs = Vec::new();
    for a in 0..family.len() {
        for b in a + 1..family.len() {
            if family[a].prefix(p.depth) == family[b].prefix(p.depth) {
                continue;
            }
            for &tau in &p.taus {
                let report = verify_dc_pair(op, &c, &family[a], &family[b], tau)?;
                pairs.push(PairEntry { a, b, tau, report });
            }
        }
    }
    let pass = invariants.all_pass && pairs.iter().all(|e| e.report.all_pass);

    let mut rows = String::new();
    if let Some(first) = pairs.first() {
        let (a, b) = (first.a, first.b);
        for e in pairs.iter().filter(|e| e.a == a && e.b == b) {
            for s in &e.report.f_samples.samples {
                writeln!(rows, "{},{},{}", s.n, e.tau, s.f).expect("writing to a String cannot fail");
            }
        }
    }

    let result = json!({
        "construction": to_json(&c),
        "invariants": to_json(&invariants),
        "family": family.iter().map(|s| s.prefix(p.depth)).collect::<Vec<_>>(),
        "pairs": to_json(&pairs),
        "f_convention": "F^n counts 0 <= i < n and divides by n",
        "pass": pass,
    });
    Ok(CommandOutput { result, pass, csv: format!("n,tau,F\n{rows}") })
}

pub fn stats(cfg: &ExperimentConfig, op: &ShiftOperator) -> Result<CommandOutput> {
    let p = &cfg.stats;
    let x = p.x.parse::<VectorSpec>()?.resolve(op)?;
    let y = p.y.parse::<VectorSpec>()?.resolve(op)?;
    let s = f_bounds(op, &x, &y, p.tau, &p.window)?;
    let pass = s.samples.iter().all(|v| (0.0..=1.0).contains(&v.f)) && s.f_lower_est <= s.f_upper_est;
    let rows = s.samples.iter().map(|v| format!("{},{},{}", v.n, s.tau, v.f));
    Ok(CommandOutput { result: to_json(&s), pass, csv: csv("n,tau,F", rows) })
}
