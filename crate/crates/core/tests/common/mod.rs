//! Strategies and the property registry shared by the integration targets.
#![allow(dead_code)]

use std::sync::OnceLock;

use linchaos::cli::{execute, report_document, ExperimentConfig};
use linchaos::scramble::{
    build_construction, check_invariants, distance_series, f_bounds, f_n, pair_family, theta, verify_dc_pair,
    CloseCounts, EpsRule, ScrambleConstruction, SymbolSequence, DEFAULT_N1,
};
use linchaos::spectral::{
    eigen_approximate, eigen_disk_radius, eigen_residual, gen_eigenvector, mixing_witness, periodic_approximant,
    RootOfUnity, DEFAULT_PROBE_LEN,
};
use linchaos::unimodal::{certify_nu, nu_witness, wnu_profile};
use linchaos::{ExtReal, LinearOperator, ShiftOperator, TruncatedVector, WeightForm};
use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub type PropResult = Result<(), TestCaseError>;

pub fn two() -> ShiftOperator {
    ShiftOperator::constant(2.0).unwrap()
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

// ---- strategies ----

pub fn complex(max: f64) -> impl Strategy<Value = Complex64> {
    (-max..max, -max..max).prop_map(|(a, b)| Complex64::new(a, b))
}

pub fn vector(max_len: usize) -> impl Strategy<Value = TruncatedVector> {
    prop::collection::vec(complex(10.0), 0..=max_len).prop_map(|v| TruncatedVector::from_complex(&v))
}

pub fn nonzero_vector(max_len: usize) -> impl Strategy<Value = TruncatedVector> {
    vector(max_len).prop_filter("nonzero", |v| !v.is_zero())
}

pub fn weight_form() -> impl Strategy<Value = WeightForm> {
    prop_oneof![
        (0.25f64..4.0).prop_map(WeightForm::Constant),
        Just(WeightForm::RatioPlusOne),
        (0.25f64..4.0).prop_map(WeightForm::ScaledRatio),
        (prop::collection::vec(0.1f64..5.0, 1..8), 0.25f64..4.0)
            .prop_map(|(values, tail)| WeightForm::List { values, tail }),
    ]
}

pub fn operator() -> impl Strategy<Value = ShiftOperator> {
    weight_form().prop_map(|f| ShiftOperator::from_form(f).unwrap())
}

/// Operators whose eigen disk is comfortably wider than the unit disk.
pub fn wide_operator() -> impl Strategy<Value = ShiftOperator> {
    prop_oneof![
        (1.5f64..3.0).prop_map(WeightForm::Constant),
        (1.5f64..3.0).prop_map(WeightForm::ScaledRatio),
        (prop::collection::vec(0.5f64..3.0, 1..6), 1.5f64..3.0)
            .prop_map(|(values, tail)| WeightForm::List { values, tail }),
    ]
    .prop_map(|f| ShiftOperator::from_form(f).unwrap())
}

pub fn rel_close(a: f64, b: f64, rtol: f64) -> bool {
    (a - b).abs() <= rtol * a.abs().max(b.abs()) + f64::MIN_POSITIVE
}

/// The depth-4 construction for `w ≡ 2`, `γ = 1.5`, built once per process.
pub fn depth4() -> &'static ScrambleConstruction {
    static C: OnceLock<ScrambleConstruction> = OnceLock::new();
    C.get_or_init(|| build_construction(&two(), 1.5, 4, &EpsRule::Halving, DEFAULT_N1).unwrap())
}

// ---- the registry ----

pub struct Property {
    pub module: &'static str,
    pub name: &'static str,
    pub cases: u32,
    pub run: fn(&mut TestRunner) -> Result<(), String>,
}

macro_rules! prop {
    ($module:literal, $name:literal, $cases:expr, $strategy:expr, $body:expr) => {
        Property {
            module: $module,
            name: $name,
            cases: $cases,
            run: |runner| runner.run(&$strategy, $body).map_err(|e| e.to_string()),
        }
    };
}

/// Runs one property with a fixed seed so failures reproduce.
pub fn run_property(p: &Property) -> Result<(), String> {
    let config = Config { cases: p.cases, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    (p.run)(&mut runner)
}

pub fn properties() -> Vec<Property> {
    vec![
        // ---- seqspace ----
        prop!("seqspace", "triangle inequality", 1000, (vector(12), vector(12)), |(a, b)| {
            prop_assert!(a.add(&b).norm() <= (a.norm() + b.norm()) * (1.0 + 1e-15));
            Ok(())
        }),
        prop!("seqspace", "homogeneity", 1000, (complex(100.0), vector(12)), |(s, v)| {
            prop_assert!(rel_close(v.scale(s).norm(), s.norm() * v.norm(), 1e-12));
            Ok(())
        }),
        prop!(
            "seqspace",
            "trimming idempotence",
            1000,
            (prop::collection::vec(complex(5.0), 0..8), 0usize..6, vector(8)),
            |(coords, pad, other)| {
                let mut padded = coords.clone();
                padded.extend(std::iter::repeat_n(Complex64::new(0.0, 0.0), pad));
                let a = TruncatedVector::from_complex(&coords);
                let b = TruncatedVector::from_complex(&padded);
                prop_assert_eq!(a.norm(), b.norm());
                prop_assert_eq!(a.support_len(), b.support_len());
                let (sa, sb) = (a.add(&other), b.add(&other));
                prop_assert_eq!(sa.coords(), sb.coords());
                let (ta, tb) = (two().apply(&a), two().apply(&b));
                prop_assert_eq!(ta.coords(), tb.coords());
                Ok(())
            }
        ),
        prop!("seqspace", "norm zero iff vector zero", 1000, vector(6), |v| {
            prop_assert_eq!(v.norm() == 0.0, v.coords().iter().all(|c| c.is_zero()));
            Ok(())
        }),
        prop!("seqspace", "rescale_to hits the target", 1000, (nonzero_vector(10), 1e-6f64..1e6), |(v, t)| {
            let r = v.rescale_to(t).unwrap();
            prop_assert!(rel_close(r.norm(), t, 1e-12));
            Ok(())
        }),
        prop!("seqspace", "JSON and CSV round trips", 1000, vector(10), |v| {
            let j = TruncatedVector::from_json(&v.to_json()).unwrap();
            prop_assert_eq!(j.coords(), v.coords());
            let mut buf = Vec::new();
            v.write_csv(&mut buf).unwrap();
            let c = TruncatedVector::read_csv(std::str::from_utf8(&buf).unwrap()).unwrap();
            prop_assert_eq!(c.coords(), v.coords());
            Ok(())
        }),
        // ---- shiftops ----
        prop!("shiftops", "norm-bound contract", 1000, (operator(), vector(16)), |(op, v)| {
            prop_assert!(op.apply(&v).norm() <= op.norm_bound() * v.norm() * (1.0 + 1e-14));
            Ok(())
        }),
        prop!(
            "shiftops",
            "linearity",
            1000,
            (operator(), complex(3.0), complex(3.0), vector(12), vector(12)),
            |(op, a, b, u, v)| {
                let lhs = op.apply(&u.scale(a).add(&v.scale(b)));
                let rhs = op.apply(&u).scale(a).add(&op.apply(&v).scale(b));
                let scale = 1.0 + lhs.norm().max(rhs.norm());
                prop_assert!(lhs.sub(&rhs).norm() <= 1e-12 * scale);
                Ok(())
            }
        ),
        prop!(
            "shiftops",
            "power_apply matches repeated apply",
            1000,
            (operator(), vector(70), 0usize..=64),
            |(op, v, k)| {
                let fast = op.power_apply(k, &v);
                let slow = (0..k).fold(v.clone(), |acc, _| op.apply(&acc));
                let tol = 1e-10 * slow.norm_ext().to_f64().max(f64::MIN_POSITIVE);
                prop_assert!(fast.sub(&slow).norm() <= tol, "k = {}", k);
                Ok(())
            }
        ),
        prop!("shiftops", "finite-support annihilation", 1000, (operator(), vector(40)), |(op, v)| {
            prop_assert!(op.power_apply(v.support_len(), &v).is_zero());
            let norms = op.orbit_norms(&v, v.support_len() + 3);
            prop_assert!(norms[v.support_len()..].iter().all(ExtReal::is_zero));
            Ok(())
        }),
        prop!(
            "shiftops",
            "orbit_norms agrees with norms of iterates",
            1000,
            (operator(), vector(20), 0usize..25),
            |(op, v, n)| {
                let norms = op.orbit_norms(&v, n);
                prop_assert_eq!(norms.len(), n + 1);
                let mut x = v.clone();
                for (i, got) in norms.iter().enumerate() {
                    let want = x.norm_ext();
                    prop_assert!(got.rel_diff(want) <= 1e-12 || (got.is_zero() && want.is_zero()), "i = {}", i);
                    x = op.apply(&x);
                }
                Ok(())
            }
        ),
        // ---- spectral ----
        prop!(
            "spectral",
            "eigen-residual bound",
            1000,
            (wide_operator(), 0.0f64..0.9, 0.0f64..std::f64::consts::TAU, 5usize..80),
            |(op, frac, angle, len)| {
                let disk = eigen_disk_radius(&op, DEFAULT_PROBE_LEN).unwrap();
                let w = Complex64::from_polar(frac * disk.usable_radius(), angle);
                let k = gen_eigenvector(&op, w, 0, len).unwrap();
                let last = k.vector.coord(len - 1).abs().to_f64();
                prop_assert!(eigen_residual(&op, &k) <= w.norm() * last + 1e-12);
                Ok(())
            }
        ),
        prop!(
            "spectral",
            "derivative consistency",
            1000,
            (wide_operator(), 0.0f64..0.5, 0.0f64..std::f64::consts::TAU, 1usize..=3),
            |(op, frac, angle, j)| {
                let disk = eigen_disk_radius(&op, DEFAULT_PROBE_LEN).unwrap();
                let w = Complex64::from_polar(frac * disk.usable_radius(), angle);
                let h = 1e-4;
                let len = 40;
                let plus = gen_eigenvector(&op, w + h, j - 1, len).unwrap().vector;
                let minus = gen_eigenvector(&op, w - h, j - 1, len).unwrap().vector;
                let fd = plus.sub(&minus).scale(Complex64::new(0.5 / h, 0.0));
                let exact = gen_eigenvector(&op, w, j, len).unwrap().vector;
                prop_assert!(fd.sub(&exact).norm() <= 1e-6 * (1.0 + exact.norm()), "diff {}", fd.sub(&exact).norm());
                Ok(())
            }
        ),
        prop!(
            "spectral",
            "mixing certificate rechecks",
            1000,
            (complex(0.6), complex(0.5), 1.1f64..1.8, 0.0f64..std::f64::consts::TAU, complex(1.0), 0.005f64..0.1),
            |(l, a, rho_mod, rho_arg, b, eps)| {
                let op = two();
                let rho = Complex64::from_polar(rho_mod, rho_arg);
                let w = mixing_witness(&op, &[(l, a)], &[(rho, b)], eps, 300).unwrap();
                prop_assert!(w.certified());
                let (x, y) = (w.x(), w.y());
                for ch in &w.checks {
                    let u = linchaos::spectral::mixing_point(&x, &w.y_part, ch.k);
                    prop_assert!(u.sub(&x).norm() < eps);
                    prop_assert!(op.power_apply(ch.k, &u).sub(&y).norm() < eps);
                }
                Ok(())
            }
        ),
        prop!(
            "spectral",
            "periodic points satisfy the period equation",
            1000,
            (0i64..16, 1u64..=8, vector(6), 1usize..=2),
            |(p, q, target, depth)| {
                let op = two();
                let root = RootOfUnity::new(p, q).unwrap();
                match periodic_approximant(&op, root, depth, &target, 120) {
                    Ok(a) => {
                        prop_assert_eq!(a.period % root.q, 0);
                        let back = op.power_apply(a.period as usize, &a.point);
                        prop_assert!(back.sub(&a.point).norm() <= a.tolerance);
                    }
                    // a Jordan component in the projection has no period
                    Err(linchaos::Error::NotPeriodic { .. }) => prop_assert!(depth > 1),
                    Err(e) => return Err(TestCaseError::fail(e.to_string())),
                }
                Ok(())
            }
        ),
        prop!(
            "spectral",
            "eigen_approximate monotone under grid refinement",
            1000,
            (prop::collection::vec(complex(0.6), 1..6), prop::collection::vec(complex(0.6), 0..6), vector(8)),
            |(base, extra, target)| {
                let op = two();
                let small = eigen_approximate(&op, &target, &base, 30).unwrap();
                let grid: Vec<Complex64> = base.iter().chain(&extra).copied().collect();
                let large = eigen_approximate(&op, &target, &grid, 30).unwrap();
                prop_assert!(
                    large.residual <= small.residual + 1e-9 * (1.0 + target.norm()),
                    "{} > {}",
                    large.residual,
                    small.residual
                );
                Ok(())
            }
        ),
        // ---- unimodal ----
        prop!(
            "unimodal",
            "generator/checker agreement",
            1000,
            (wide_operator(), 0.05f64..0.95, 1usize..60),
            |(op, frac, m)| {
                let r = eigen_disk_radius(&op, DEFAULT_PROBE_LEN).unwrap().usable_radius();
                let gamma = 1.0 + frac * (r - 1.0);
                let cert = nu_witness(&op, gamma, m).unwrap();
                let again = certify_nu(&op, &cert.witness, gamma, m).unwrap();
                prop_assert_eq!(again.decay_index, cert.decay_index);
                prop_assert!(cert.orbit[cert.decay_index].is_zero());
                Ok(())
            }
        ),
        prop!(
            "unimodal",
            "scaling invariance",
            1000,
            (operator(), nonzero_vector(8), complex(5.0), 1.01f64..3.0, 1usize..8),
            |(op, x, s, gamma, m)| {
                prop_assume!(s.norm() > 1e-3);
                let a = certify_nu(&op, &x, gamma, m);
                let b = certify_nu(&op, &x.scale(s), gamma, m);
                // the checks agree except on draws whose ratio sits on the threshold to rounding
                match (&a, &b) {
                    (Ok(_), Ok(_)) => {}
                    (Err(fa), Err(fb)) if fa.index == fb.index => {}
                    (Err(f), _) | (_, Err(f)) => {
                        prop_assert!((f.ratio - 1.0).abs() < 1e-10, "flip at i = {} with ratio {}", f.index, f.ratio)
                    }
                }
                Ok(())
            }
        ),
        prop!(
            "unimodal",
            "monotone in gamma and m",
            1000,
            (operator(), nonzero_vector(10), 1.01f64..3.0, 1usize..10, 0.0f64..1.0, 0.0f64..1.0),
            |(op, x, gamma, m, tg, tm)| {
                if certify_nu(&op, &x, gamma, m).is_ok() {
                    let g2 = 1.0 + tg * (gamma - 1.0);
                    let m2 = ((m as f64) * tm).ceil().max(1.0) as usize;
                    prop_assert!(certify_nu(&op, &x, g2.max(1.0 + 1e-9), m2).is_ok());
                }
                Ok(())
            }
        ),
        prop!(
            "unimodal",
            "wnu fraction nonincreasing in C",
            1000,
            (operator(), nonzero_vector(10), 0.01f64..5.0, 0.01f64..5.0, 1usize..20),
            |(op, x, c1, c2, n)| {
                let (lo, hi) = if c1 <= c2 { (c1, c2) } else { (c2, c1) };
                let a = wnu_profile(&op, &x, lo, n).unwrap();
                let b = wnu_profile(&op, &x, hi, n).unwrap();
                prop_assert!(b.fraction <= a.fraction);
                prop_assert!(a.fraction <= (n as f64 + 1.0) / n as f64);
                Ok(())
            }
        ),
        // ---- scramble ----
        prop!("scramble", "construction soundness", 1000, (1.15f64..1.95, 1usize..=4), |(gamma, depth)| {
            let op = two();
            let c = build_construction(&op, gamma, depth, &EpsRule::Halving, DEFAULT_N1).unwrap();
            let report = check_invariants(&op, &c);
            prop_assert!(report.all_pass, "{:?}", report);
            Ok(())
        }),
        prop!(
            "scramble",
            "construction soundness, listed eps",
            200,
            (prop::collection::vec(0.01f64..0.9, 3), 1.3f64..1.9),
            |(mut eps, gamma)| {
                eps.sort_by(|a, b| b.partial_cmp(a).unwrap());
                prop_assume!(eps.windows(2).all(|w| w[1] < w[0]));
                let op = ShiftOperator::from_form(WeightForm::ScaledRatio(2.0)).unwrap();
                let c = build_construction(&op, gamma, 3, &EpsRule::List(eps), DEFAULT_N1).unwrap();
                prop_assert!(check_invariants(&op, &c).all_pass);
                Ok(())
            }
        ),
        prop!(
            "scramble",
            "pair symmetry",
            1000,
            (prop::collection::vec(0u8..=1, 4), prop::collection::vec(0u8..=1, 4), 0.05f64..2.0),
            |(a, b, tau)| {
                prop_assume!(a != b);
                let c = depth4();
                let (xa, xb) = (SymbolSequence::finite(a).unwrap(), SymbolSequence::finite(b).unwrap());
                let r1 = verify_dc_pair(&two(), c, &xa, &xb, tau).unwrap();
                let mut r2 = verify_dc_pair(&two(), c, &xb, &xa, tau).unwrap();
                r2.theta.iter_mut().for_each(|t| *t = -*t);
                prop_assert_eq!(r1, r2);
                Ok(())
            }
        ),
        prop!(
            "scramble",
            "every pair report passes",
            1000,
            (prop::collection::vec(0u8..=1, 4), prop::collection::vec(0u8..=1, 4), 0.05f64..2.0),
            |(a, b, tau)| {
                prop_assume!(a != b);
                let r = verify_dc_pair(
                    &two(),
                    depth4(),
                    &SymbolSequence::finite(a).unwrap(),
                    &SymbolSequence::finite(b).unwrap(),
                    tau,
                )
                .unwrap();
                prop_assert!(r.all_pass, "{:?}", r);
                prop_assert!(r.theta.iter().all(|t| (-1..=1).contains(t)));
                Ok(())
            }
        ),
        prop!(
            "scramble",
            "block bounds imply the limit bounds",
            1000,
            (prop::collection::vec(0u8..=1, 4), prop::collection::vec(0u8..=1, 4), 0.05f64..2.0),
            |(a, b, tau)| {
                prop_assume!(a != b);
                let c = depth4();
                let r = verify_dc_pair(
                    &two(),
                    c,
                    &SymbolSequence::finite(a).unwrap(),
                    &SymbolSequence::finite(b).unwrap(),
                    tau,
                )
                .unwrap();
                for b in r.separation_bounds.iter().filter(|b| b.k >= 3) {
                    prop_assert!(b.f <= 1.0 / b.k as f64 + 1.0 / b.n as f64);
                }
                for b in &r.proximity_bounds {
                    prop_assert!(b.f >= 1.0 - 1.0 / b.k as f64);
                }
                Ok(())
            }
        ),
        prop!(
            "scramble",
            "F monotone in tau",
            1000,
            (vector(10), vector(10), 0.01f64..50.0, 0.01f64..50.0, 1usize..30),
            |(x, y, t1, t2, n)| {
                let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
                let op = two();
                prop_assert!(f_n(&op, &x, &y, lo, n).unwrap() <= f_n(&op, &x, &y, hi, n).unwrap());
                Ok(())
            }
        ),
        prop!(
            "scramble",
            "F in [0,1] with bounded increments",
            1000,
            (vector(10), vector(10), 0.01f64..50.0, 1usize..40),
            |(x, y, tau, n)| {
                let counts = CloseCounts::new(&distance_series(&two(), &x, &y, n + 1), tau);
                let (a, b) = (counts.f_n(n), counts.f_n(n + 1));
                prop_assert!((0.0..=1.0).contains(&a) && (0.0..=1.0).contains(&b));
                prop_assert!((a - b).abs() <= 1.0 / n as f64 + 1.0 / (n + 1) as f64);
                Ok(())
            }
        ),
        prop!(
            "scramble",
            "window estimates ordered",
            1000,
            (vector(10), vector(10), 0.01f64..50.0, prop::collection::btree_set(1usize..60, 1..8)),
            |(x, y, tau, window)| {
                let window: Vec<usize> = window.into_iter().collect();
                let s = f_bounds(&two(), &x, &y, tau, &window).unwrap();
                prop_assert!(s.f_lower_est <= s.f_upper_est);
                prop_assert!(s.samples.iter().all(|p| (0.0..=1.0).contains(&p.f)));
                Ok(())
            }
        ),
        prop!("scramble", "pair family differs and agrees often", 1000, (0usize..80, 2usize..8), |(depth, count)| {
            let fam = pair_family(depth, count).unwrap();
            let floor = depth / (2 * count);
            for i in 0..count {
                for j in i + 1..count {
                    let th = theta(&fam[i], &fam[j], depth);
                    prop_assert!(th.iter().filter(|&&t| t != 0).count() >= floor);
                    prop_assert!(th.iter().filter(|&&t| t == 0).count() >= floor);
                    // beyond the explicit bits the tails keep both patterns going
                    let far = theta(&fam[i], &fam[j], depth + 2 * count);
                    prop_assert!(far[depth..].iter().any(|&t| t != 0) && far[depth..].contains(&0));
                }
            }
            Ok(())
        }),
        // ---- cli ----
        prop!(
            "cli",
            "config round trip",
            1000,
            (0..=i64::MAX as u64, 1.01f64..5.0, 1usize..100, prop::collection::vec(0.01f64..3.0, 1..4), "[a-z]{1,8}"),
            |(seed, gamma, m, taus, dir)| {
                let mut cfg = ExperimentConfig { seed, out_dir: dir.into(), ..ExperimentConfig::default() };
                cfg.witness.gamma = gamma;
                cfg.witness.m = m;
                cfg.scramble.taus = taus;
                cfg.declared_sup = Some(gamma + 2.0);
                prop_assert!(cfg.validate().is_ok());
                prop_assert_eq!(ExperimentConfig::from_toml(&cfg.to_toml().unwrap()).unwrap(), cfg.clone());
                let wide = ExperimentConfig { seed: seed | (1 << 63), ..cfg };
                prop_assert!(wide.validate().unwrap_err().to_string().contains("seed"));
                prop_assert!(wide.to_toml().is_err());
                Ok(())
            }
        ),
        prop!(
            "cli",
            "determinism and exit-status contract",
            1000,
            (1.05f64..1.95, 1usize..30, 0..=i64::MAX as u64),
            |(gamma, m, seed)| {
                let mut cfg = ExperimentConfig { seed, ..ExperimentConfig::default() };
                cfg.witness.gamma = gamma;
                cfg.witness.m = m;
                let a = execute("witness", &cfg).unwrap();
                let b = execute("witness", &cfg).unwrap();
                let ja = serde_json::to_string(&report_document("witness", &cfg, &a)).unwrap();
                let jb = serde_json::to_string(&report_document("witness", &cfg, &b)).unwrap();
                prop_assert_eq!(&ja, &jb);
                prop_assert_eq!(a.csv, b.csv);
                prop_assert!(a.pass);
                prop_assert_eq!(a.result["pass"].as_bool(), Some(a.pass));
                Ok(())
            }
        ),
    ]
}
