//! Floating-point validation layer: Gamma function, Selberg/Mehta
//! closed-form oracles, Monte-Carlo evaluation of the zeta integral at real
//! parameter points, and divergence probes at condition boundaries.
//!
//! All exact decisions live in `kn_polar_core`; this module only checks
//! that the numbers behave as the exact layer predicts.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use kn_polar_core::ratpoly::{self, AffineForm, MaxOutcome, Polyhedron};
use kn_polar_core::zeta::{self, ConvergenceCondition, Domain, PolarReport, SVariable, Sense};
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution, StandardNormal};

#[derive(thiserror::Error, Debug)]
pub enum NumError {
    #[error("gamma function pole at {0}")]
    GammaPole(f64),
    #[error("parameters outside the convergence region: violates {0}")]
    RegionViolation(String),
    #[error("unsupported for numeric evaluation: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Core(#[from] kn_polar_core::Error),
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function by the Lanczos approximation (g = 7, 9 coefficients),
/// with the reflection formula below 1/2.
pub fn gamma_fn(x: f64) -> Result<f64, NumError> {
    if x <= 0.0 && x == x.floor() {
        return Err(NumError::GammaPole(x));
    }
    if x < 0.5 {
        return Ok(PI / ((PI * x).sin() * gamma_fn(1.0 - x)?));
    }
    let z = x - 1.0;
    let mut a = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    Ok((2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * a)
}

/// Closed form of the Selberg integral
/// `∫_{[0,1]^N} ∏ t_i^{α-1} (1-t_i)^{β-1} ∏_{i<j} |t_i - t_j|^{2γ} dt`:
/// the product over `j = 0..N-1` of
/// `Γ(α+jγ) Γ(β+jγ) Γ(1+(j+1)γ) / (Γ(α+β+(N+j-1)γ) Γ(1+γ))`.
pub fn selberg(n: usize, alpha: f64, beta: f64, gamma: f64) -> Result<f64, NumError> {
    if n == 0 {
        return Err(NumError::Unsupported(String::from("selberg needs N >= 1")));
    }
    let mut limit = 1.0 / n as f64;
    if n > 1 {
        limit = limit.min(alpha / (n - 1) as f64).min(beta / (n - 1) as f64);
    }
    if !(alpha > 0.0) || !(beta > 0.0) || !(gamma > -limit) {
        return Err(NumError::RegionViolation(format!(
            "selberg needs alpha > 0, beta > 0, gamma > {}",
            -limit
        )));
    }
    let nf = n as f64;
    let mut product = 1.0;
    for j in 0..n {
        let j = j as f64;
        product *= gamma_fn(alpha + j * gamma)? * gamma_fn(beta + j * gamma)?
            * gamma_fn(1.0 + (j + 1.0) * gamma)?
            / (gamma_fn(alpha + beta + (nf + j - 1.0) * gamma)? * gamma_fn(1.0 + gamma)?);
    }
    Ok(product)
}

/// Closed form of the Mehta integral `F_N(γ) = ∏_{j=1}^{N} Γ(1+jγ)/Γ(1+γ)`
/// for `γ > -1/N`. (The printed source shows the product's upper index as
/// lowercase `n`; it is read as `N` here.)
pub fn mehta(n: usize, gamma: f64) -> Result<f64, NumError> {
    if n == 0 {
        return Err(NumError::Unsupported(String::from("mehta needs N >= 1")));
    }
    if !(gamma > -1.0 / n as f64) {
        return Err(NumError::RegionViolation(format!(
            "mehta needs gamma > {}",
            -1.0 / n as f64
        )));
    }
    let base = gamma_fn(1.0 + gamma)?;
    let mut product = 1.0;
    for j in 1..=n {
        product *= gamma_fn(1.0 + j as f64 * gamma)? / base;
    }
    Ok(product)
}

/// A total real assignment to the zeta variables (values of Re(s)).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RealParams {
    pub values: BTreeMap<SVariable, f64>,
}

impl RealParams {
    pub fn get(&self, v: &SVariable) -> f64 {
        *self.values.get(v).expect("parameters assign every variable")
    }

    /// All `d` KN variables set to one value.
    pub fn constant(n: usize, value: f64) -> Self {
        RealParams {
            values: zeta::kn_svariables(n).into_iter().map(|v| (v, value)).collect(),
        }
    }

    /// The Selberg substitution: `s_{0i} = α-1`, `s_{i(N+1)} = β-1`,
    /// `s_{ij} = 2γ`.
    pub fn selberg_point(n: usize, alpha: f64, beta: f64, gamma: f64) -> Self {
        let values = zeta::kn_svariables(n)
            .into_iter()
            .map(|v| {
                let x = match v {
                    SVariable::Zero(_) => alpha - 1.0,
                    SVariable::One(_) => beta - 1.0,
                    SVariable::Diag(_, _) | SVariable::General(_) => 2.0 * gamma,
                };
                (v, x)
            })
            .collect();
        RealParams { values }
    }

    pub fn set(mut self, v: SVariable, value: f64) -> Self {
        self.values.insert(v, value);
        self
    }

    pub fn condition_sum(&self, c: &ConvergenceCondition) -> f64 {
        c.support.iter().map(|v| self.get(v)).sum()
    }
}

/// Renders a condition as text, e.g. `Re(s01)+Re(s02)+Re(s12) > -2`.
pub fn render_condition(c: &ConvergenceCondition, n: usize) -> String {
    let lhs: Vec<String> =
        c.support.iter().map(|v| format!("Re({})", v.render(n))).collect();
    let op = match c.sense {
        Sense::Greater => '>',
        Sense::Less => '<',
    };
    format!("{} {} {}", lhs.join("+"), op, c.bound)
}

/// The first contributing condition of `report` that `s` fails to satisfy
/// strictly, if any.
pub fn violated_condition<'a>(
    report: &'a PolarReport,
    s: &RealParams,
) -> Option<&'a ConvergenceCondition> {
    report.records.iter().filter(|r| r.contributes).map(|r| &r.condition).find(|c| {
        let sum = s.condition_sum(c);
        match c.sense {
            Sense::Greater => !(sum > c.bound as f64),
            Sense::Less => !(sum < c.bound as f64),
        }
    })
}

/// Monte-Carlo estimate of an integral.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct EvalResult {
    pub estimate: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
}

struct F64Form {
    coeffs: Vec<f64>,
    constant: f64,
}

impl F64Form {
    fn from_exact(f: &AffineForm) -> Self {
        F64Form {
            coeffs: f.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect(),
            constant: f.constant.to_f64().unwrap_or(f64::NAN),
        }
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.coeffs.iter().zip(x).map(|(c, v)| c * v).sum::<f64>() + self.constant
    }
}

fn kn_integrand(n: usize, s: &RealParams, x: &[f64]) -> f64 {
    let mut v = 1.0;
    for i in 1..=n {
        v *= x[i - 1].abs().powf(s.get(&SVariable::Zero(i)));
        v *= (1.0 - x[i - 1]).abs().powf(s.get(&SVariable::One(i)));
        for j in i + 1..=n {
            v *= (x[i - 1] - x[j - 1]).abs().powf(s.get(&SVariable::Diag(i, j)));
        }
    }
    v
}

fn exact_bounds(p: &Polyhedron, i: usize) -> Result<(f64, f64), NumError> {
    let n = p.ambient_dim;
    let mut coeffs = vec![kn_polar_core::rat::int(0); n];
    coeffs[i] = kn_polar_core::rat::int(1);
    let up = AffineForm::new(coeffs, kn_polar_core::rat::int(0));
    let unbounded =
        || NumError::Unsupported(String::from("unbounded domain for Monte-Carlo evaluation"));
    let hi = match ratpoly::maximize_form(p, &up)? {
        MaxOutcome::Optimal(v) => v.to_f64().ok_or_else(unbounded)?,
        _ => return Err(unbounded()),
    };
    let lo = match ratpoly::maximize_form(p, &up.negated())? {
        MaxOutcome::Optimal(v) => (-v).to_f64().ok_or_else(unbounded)?,
        _ => return Err(unbounded()),
    };
    Ok((lo, hi))
}

const LANES: u64 = 8;

fn lane_sizes(samples: u64) -> Vec<u64> {
    (0..LANES)
        .map(|lane| samples / LANES + u64::from(lane < samples % LANES))
        .collect()
}

/// Monte-Carlo estimate of `∫_D ∏|x_i|^{s_0i} |1-x_i|^{s_i(N+1)}
/// ∏|x_i-x_j|^{s_ij} dx` for a bounded full-dimensional domain at a real
/// parameter point strictly inside the convergence region over `D`.
///
/// Sampling is per-coordinate Beta importance sampling over the exact
/// bounding box, with shape parameters `1 + s` for the boundary exponents
/// incident to each box face (clipped positive); diagonal singularities are
/// left to plain Monte-Carlo variance. Eight fixed ChaCha8 streams are
/// reduced in lane order, so results are bit-reproducible per (seed,
/// samples).
pub fn eval_zeta_mc(
    n: usize,
    d: &Domain,
    s: &RealParams,
    samples: u64,
    seed: u64,
) -> Result<EvalResult, NumError> {
    let report = zeta::polar_report(n, d)?;
    if let Some(c) = violated_condition(&report, s) {
        return Err(NumError::RegionViolation(render_condition(c, n)));
    }
    let p = d.polyhedron()?;
    let mut lo = vec![0.0; n];
    let mut hi = vec![0.0; n];
    for i in 0..n {
        let (l, h) = exact_bounds(&p, i)?;
        lo[i] = l;
        hi[i] = h;
    }
    let inequalities: Vec<F64Form> = p.inequalities.iter().map(F64Form::from_exact).collect();

    // Beta shapes: absorb the x_i = 0 / x_i = 1 boundary exponents when the
    // box touches those hyperplanes.
    let mut shapes = Vec::with_capacity(n);
    for i in 0..n {
        let a = if lo[i] == 0.0 { 1.0 + s.get(&SVariable::Zero(i + 1)) } else { 1.0 };
        let b = if hi[i] == 1.0 { 1.0 + s.get(&SVariable::One(i + 1)) } else { 1.0 };
        shapes.push((a.max(0.05), b.max(0.05)));
    }
    let betas: Vec<Beta<f64>> = shapes
        .iter()
        .map(|&(a, b)| Beta::new(a, b).expect("clipped shapes are positive"))
        .collect();
    let log_beta_norm: Vec<f64> = shapes
        .iter()
        .map(|&(a, b)| {
            let b_ab =
                gamma_fn(a).unwrap() * gamma_fn(b).unwrap() / gamma_fn(a + b).unwrap();
            b_ab.ln()
        })
        .collect();

    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    let mut x = vec![0.0; n];
    for (lane, &lane_samples) in lane_sizes(samples).iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(lane as u64);
        for _ in 0..lane_samples {
            // Sample the box and accumulate the log-density of the draw.
            let mut log_pdf = 0.0;
            let mut degenerate = false;
            for i in 0..n {
                let y: f64 = betas[i].sample(&mut rng);
                if y <= 0.0 || y >= 1.0 {
                    degenerate = true;
                    break;
                }
                let width = hi[i] - lo[i];
                x[i] = lo[i] + width * y;
                let (a, b) = shapes[i];
                log_pdf += (a - 1.0) * y.ln() + (b - 1.0) * (1.0 - y).ln()
                    - log_beta_norm[i]
                    - width.ln();
            }
            if degenerate {
                continue; // measure-zero draw; weight 0
            }
            let inside = inequalities.iter().all(|f| f.eval(&x) >= 0.0);
            let w = if inside {
                kn_integrand(n, s, &x) / log_pdf.exp()
            } else {
                0.0
            };
            sum += w;
            sum_sq += w * w;
        }
    }
    let mean = sum / samples as f64;
    let variance = (sum_sq / samples as f64 - mean * mean).max(0.0);
    Ok(EvalResult {
        estimate: mean,
        stderr: (variance / samples as f64).sqrt(),
        samples,
        seed,
    })
}

/// Gaussian Monte-Carlo estimate of the Mehta integral `F_N(γ)`: the
/// `e^{-t²/2}` weight is the sampling density, so the estimator is the mean
/// of `∏_{i<j} |t_i - t_j|^{2γ}` over standard normal draws.
pub fn mehta_mc(n: usize, gamma: f64, samples: u64, seed: u64) -> EvalResult {
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    let mut t: Vec<f64> = vec![0.0; n];
    for (lane, &lane_samples) in lane_sizes(samples).iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(lane as u64);
        for _ in 0..lane_samples {
            for ti in t.iter_mut() {
                *ti = StandardNormal.sample(&mut rng);
            }
            let mut w = 1.0;
            for i in 0..n {
                for j in i + 1..n {
                    w *= (t[i] - t[j]).abs().powf(2.0 * gamma);
                }
            }
            sum += w;
            sum_sq += w * w;
        }
    }
    let mean = sum / samples as f64;
    let variance = (sum_sq / samples as f64 - mean * mean).max(0.0);
    EvalResult { estimate: mean, stderr: (variance / samples as f64).sqrt(), samples, seed }
}

/// Evidence gathered by a divergence probe along a path `s(ε)`.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct ProbeResult {
    pub epsilons: Vec<f64>,
    pub estimates: Vec<EvalResult>,
    /// Successive growth ratios estimate[k+1] / estimate[k].
    pub ratios: Vec<f64>,
    /// Final estimate at least 10x the first.
    pub diverging: bool,
}

/// Evaluates the integral along `path(ε)` at `ε₀, ε₀/2, ..., ε₀/2^halvings`
/// and reports the growth ratios. Every point must stay strictly inside the
/// convergence region (`eval_zeta_mc` errors out otherwise).
pub fn divergence_probe(
    n: usize,
    d: &Domain,
    path: impl Fn(f64) -> RealParams,
    eps0: f64,
    halvings: usize,
    samples: u64,
    seed: u64,
) -> Result<ProbeResult, NumError> {
    let mut epsilons = Vec::new();
    let mut estimates = Vec::new();
    let mut eps = eps0;
    for step in 0..=halvings {
        let s = path(eps);
        estimates.push(eval_zeta_mc(n, d, &s, samples, seed.wrapping_add(step as u64))?);
        epsilons.push(eps);
        eps /= 2.0;
    }
    let ratios = estimates
        .windows(2)
        .map(|w| w[1].estimate / w[0].estimate)
        .collect();
    let diverging = estimates.last().unwrap().estimate
        >= 10.0 * estimates.first().unwrap().estimate;
    Ok(ProbeResult { epsilons, estimates, ratios, diverging })
}
