//! Pseudo-spectral time stepping of the KdV, mKdV, complex mKdV (Hirota) and cubic NLS flows.
//!
//! Flows, with `' = d/dx`:
//!
//! - KdV: `q_t = -q''' + 6 q q'`
//! - real mKdV: `q_t = -q''' +- 6 q^2 q'`
//! - Hirota: `q_t = -q''' +- 6 |q|^2 q'`
//! - NLS: `-i q_t = -q'' +- 2 |q|^2 q`
//!
//! In Fourier variables each reads `c_t = lambda(xi) c + N(c)` with the diagonal linear part
//! `lambda = i xi^3` (third-order flows) or `lambda = i xi^2` (NLS), treated exactly. Nonlinear
//! terms are formed on the padded physical grid and truncated to the retained band.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{FourierField, TorusGrid};

/// The evolution equations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flow {
    Kdv,
    NlsPlus,
    NlsMinus,
    MkdvRealPlus,
    MkdvRealMinus,
    HirotaPlus,
    HirotaMinus,
}

impl Flow {
    pub const ALL: [Flow; 7] = [
        Flow::Kdv,
        Flow::NlsPlus,
        Flow::NlsMinus,
        Flow::MkdvRealPlus,
        Flow::MkdvRealMinus,
        Flow::HirotaPlus,
        Flow::HirotaMinus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Flow::Kdv => "kdv",
            Flow::NlsPlus => "nls_plus",
            Flow::NlsMinus => "nls_minus",
            Flow::MkdvRealPlus => "mkdv_real_plus",
            Flow::MkdvRealMinus => "mkdv_real_minus",
            Flow::HirotaPlus => "hirota_plus",
            Flow::HirotaMinus => "hirota_minus",
        }
    }

    pub fn from_name(name: &str) -> Option<Flow> {
        Flow::ALL.into_iter().find(|f| f.name() == name)
    }

    /// Whether the flow preserves real-valued data (and requires it).
    pub fn is_real(self) -> bool {
        matches!(self, Flow::Kdv | Flow::MkdvRealPlus | Flow::MkdvRealMinus)
    }

    /// Sign of the cubic term, `None` for KdV.
    pub fn cubic_sign(self) -> Option<f64> {
        match self {
            Flow::Kdv => None,
            Flow::NlsPlus | Flow::MkdvRealPlus | Flow::HirotaPlus => Some(1.0),
            Flow::NlsMinus | Flow::MkdvRealMinus | Flow::HirotaMinus => Some(-1.0),
        }
    }

    /// Diagonal linear part `lambda(xi)`.
    pub fn linear_symbol(self, xi: f64) -> Complex64 {
        match self {
            Flow::NlsPlus | Flow::NlsMinus => Complex64::new(0.0, xi * xi),
            _ => Complex64::new(0.0, xi * xi * xi),
        }
    }

    /// Fourier coefficients of the nonlinear term.
    pub fn nonlinear(self, q: &FourierField) -> Result<FourierField> {
        let s = self.cubic_sign().unwrap_or(1.0);
        Ok(match self {
            Flow::Kdv => q.multiply(q)?.derivative(1).scale(3.0),
            Flow::MkdvRealPlus | Flow::MkdvRealMinus => FourierField::product(&[q, q, q])?.derivative(1).scale(2.0 * s),
            Flow::HirotaPlus | Flow::HirotaMinus => {
                FourierField::product(&[q, &q.conj(), &q.derivative(1)])?.scale(6.0 * s)
            }
            Flow::NlsPlus | Flow::NlsMinus => {
                FourierField::product(&[q, &q.conj(), q])?.scale_complex(Complex64::new(0.0, 2.0 * s))
            }
        })
    }

    /// `N(q) + lambda q` in physical terms, i.e. `dq/dt`.
    pub fn rhs(self, q: &FourierField) -> Result<FourierField> {
        let lin = q.apply_multiplier(|xi| self.linear_symbol(xi), self.is_real());
        let non = self.nonlinear(q)?;
        let mut out = lin.add(&non)?;
        if self.is_real() {
            out = out.into_real()?;
        }
        Ok(out)
    }
}

/// Time-stepping scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    /// Exponential time differencing RK4 with contour-integral coefficients.
    Etdrk4,
    /// Classical RK4 in the integrating-factor variable `exp(-lambda t) c`.
    IntegratingFactorRk4,
}

/// Flow, scheme, step and horizon of one run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlowSpec {
    pub flow: Flow,
    pub scheme: Scheme,
    /// Upper bound on the step; the actual step divides the horizon evenly.
    pub dt: f64,
    pub horizon: f64,
    /// Record a snapshot every this many steps (the final time is always recorded).
    pub snapshot_every: usize,
}

impl FlowSpec {
    pub fn new(flow: Flow, dt: f64, horizon: f64) -> Self {
        Self { flow, scheme: Scheme::Etdrk4, dt, horizon, snapshot_every: usize::MAX }
    }

    pub fn with_scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn with_snapshot_every(mut self, steps: usize) -> Self {
        self.snapshot_every = steps;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::Config(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.horizon >= 0.0 && self.horizon.is_finite()) {
            return Err(Error::Config(format!("horizon must be non-negative, got {}", self.horizon)));
        }
        if self.snapshot_every == 0 {
            return Err(Error::Config("snapshot cadence must be at least one step".into()));
        }
        Ok(())
    }

    /// Number of steps and the step actually taken.
    pub fn steps(&self) -> (usize, f64) {
        if self.horizon == 0.0 {
            return (0, self.dt);
        }
        let n = (self.horizon / self.dt * (1.0 - 1e-12)).ceil().max(1.0) as usize;
        (n, self.horizon / n as f64)
    }
}

/// Default step for a grid: `min(1e-4, 0.5 / xi_max)` times `scale`.
pub fn default_dt(grid: &TorusGrid, scale: f64) -> f64 {
    1e-4f64.min(0.5 / grid.xi_max()) * scale
}

/// Snapshots of a run, starting with the initial data.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub flow: Flow,
    pub snapshots: Vec<(f64, FourierField)>,
}

impl Trajectory {
    pub fn times(&self) -> Vec<f64> {
        self.snapshots.iter().map(|(t, _)| *t).collect()
    }

    pub fn last(&self) -> &FourierField {
        &self.snapshots.last().expect("trajectory holds the initial data").1
    }
}

/// Per-mode coefficients of one step.
enum Stepper {
    Etdrk4 {
        e: Vec<Complex64>,
        e2: Vec<Complex64>,
        q: Vec<Complex64>,
        f1: Vec<Complex64>,
        f2: Vec<Complex64>,
        f3: Vec<Complex64>,
    },
    IfRk4 {
        e: Vec<Complex64>,
        e2: Vec<Complex64>,
        h: f64,
    },
}

const CONTOUR_POINTS: usize = 64;

/// `h * mean_j g(h lambda + r_j)` over points `r_j` on the unit circle.
fn contour_mean(z: Complex64, h: f64, g: impl Fn(Complex64) -> Complex64) -> Complex64 {
    let sum: Complex64 = (0..CONTOUR_POINTS)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / CONTOUR_POINTS as f64;
            g(z + Complex64::from_polar(1.0, theta))
        })
        .sum();
    sum * (h / CONTOUR_POINTS as f64)
}

impl Stepper {
    fn new(flow: Flow, scheme: Scheme, grid: &TorusGrid, h: f64) -> Self {
        let lam: Vec<Complex64> = grid.frequencies().iter().map(|&xi| flow.linear_symbol(xi)).collect();
        let e: Vec<Complex64> = lam.iter().map(|l| (l * h).exp()).collect();
        let e2: Vec<Complex64> = lam.iter().map(|l| (l * h * 0.5).exp()).collect();
        match scheme {
            Scheme::IntegratingFactorRk4 => Stepper::IfRk4 { e, e2, h },
            Scheme::Etdrk4 => {
                let one = Complex64::new(1.0, 0.0);
                let map = |g: &dyn Fn(Complex64) -> Complex64| -> Vec<Complex64> {
                    lam.iter().map(|l| contour_mean(l * h, h, g)).collect()
                };
                let q = map(&|z| ((z * 0.5).exp() - one) / z);
                let f1 = map(&|z| (-4.0 - z + z.exp() * (4.0 - 3.0 * z + z * z)) / (z * z * z));
                let f2 = map(&|z| (2.0 + z + z.exp() * (z - 2.0)) / (z * z * z));
                let f3 = map(&|z| (-4.0 - 3.0 * z - z * z + z.exp() * (4.0 - z)) / (z * z * z));
                Stepper::Etdrk4 { e, e2, q, f1, f2, f3 }
            }
        }
    }
}

struct Runner<'a> {
    flow: Flow,
    grid: &'a TorusGrid,
    real: bool,
}

impl Runner<'_> {
    fn field(&self, coeffs: Vec<Complex64>, t: f64) -> Result<FourierField> {
        if coeffs.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::BlowUp { last_good_time: t });
        }
        let f = FourierField::from_coeffs(self.grid, coeffs, false)?;
        if self.real {
            let defect = f.hermitian_defect();
            if defect > 1e-9 * f.coeff_norm().max(1.0) {
                return Err(Error::Consistency(format!("real flow lost Hermitian symmetry (defect {defect:e}) at t = {t}")));
            }
            return f.into_real();
        }
        Ok(f)
    }

    fn n(&self, q: &FourierField) -> Result<Vec<Complex64>> {
        Ok(self.flow.nonlinear(q)?.coeffs().to_vec())
    }

    fn step(&self, stepper: &Stepper, v: &FourierField, t: f64) -> Result<FourierField> {
        let c = v.coeffs();
        let m = c.len();
        let comb = |f: &dyn Fn(usize) -> Complex64| -> Vec<Complex64> { (0..m).map(f).collect() };
        match stepper {
            Stepper::Etdrk4 { e, e2, q, f1, f2, f3 } => {
                let nv = self.n(v)?;
                let a = self.field(comb(&|i| e2[i] * c[i] + q[i] * nv[i]), t)?;
                let na = self.n(&a)?;
                let b = self.field(comb(&|i| e2[i] * c[i] + q[i] * na[i]), t)?;
                let nb = self.n(&b)?;
                let ac = a.coeffs();
                let cc = self.field(comb(&|i| e2[i] * ac[i] + q[i] * (2.0 * nb[i] - nv[i])), t)?;
                let nc = self.n(&cc)?;
                self.field(
                    comb(&|i| e[i] * c[i] + nv[i] * f1[i] + 2.0 * (na[i] + nb[i]) * f2[i] + nc[i] * f3[i]),
                    t,
                )
            }
            Stepper::IfRk4 { e, e2, h } => {
                let h = *h;
                let k1 = self.n(v)?;
                let a = self.field(comb(&|i| e2[i] * (c[i] + 0.5 * h * k1[i])), t)?;
                let k2 = self.n(&a)?;
                let b = self.field(comb(&|i| e2[i] * c[i] + 0.5 * h * k2[i]), t)?;
                let k3 = self.n(&b)?;
                let d = self.field(comb(&|i| e[i] * c[i] + h * e2[i] * k3[i]), t)?;
                let k4 = self.n(&d)?;
                self.field(
                    comb(&|i| e[i] * c[i] + h / 6.0 * (e[i] * k1[i] + 2.0 * e2[i] * (k2[i] + k3[i]) + k4[i])),
                    t,
                )
            }
        }
    }
}

/// Integrates `q0` over `[0, spec.horizon]`.
pub fn evolve(q0: &FourierField, spec: &FlowSpec) -> Result<Trajectory> {
    spec.validate()?;
    let real = spec.flow.is_real();
    if real && !q0.is_real() {
        return Err(Error::Domain(format!("{} requires real initial data", spec.flow.name())));
    }
    let start = if real { q0.clone() } else { q0.clone().into_complex() };
    let grid = q0.grid();
    let (n, h) = spec.steps();
    let stepper = Stepper::new(spec.flow, spec.scheme, grid, h);
    let runner = Runner { flow: spec.flow, grid, real };
    let mut snapshots = vec![(0.0, start.clone())];
    let mut v = start;
    for k in 1..=n {
        let t_prev = (k - 1) as f64 * h;
        v = runner.step(&stepper, &v, t_prev)?;
        if k % spec.snapshot_every == 0 || k == n {
            let t = if k == n { spec.horizon } else { k as f64 * h };
            snapshots.push((t, v.clone()));
        }
    }
    Ok(Trajectory { flow: spec.flow, snapshots })
}

/// `(int q, int |q|^2, energy)`; the energy `int q'^2/2 + q^3` is reported for real fields only.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassicalInvariants {
    pub mass: Complex64,
    pub l2: f64,
    pub energy: Option<f64>,
}

pub fn classical_invariants(q: &FourierField) -> Result<ClassicalInvariants> {
    let l = q.grid().period();
    let mass = q.coeff(0) * l;
    let l2 = q.l2_norm().powi(2);
    let energy = if q.is_real() {
        let kinetic = 0.5 * l * q.weighted_sum(|xi| xi * xi);
        let cubic = l * FourierField::product(&[q, q, q])?.coeff(0).re;
        Some(kinetic + cubic)
    } else {
        None
    };
    Ok(ClassicalInvariants { mass, l2, energy })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cos2(g: &TorusGrid, amp: f64) -> FourierField {
        FourierField::from_modes(g, &[(1, c(amp, 0.0)), (-1, c(amp, 0.0))], true).unwrap()
    }

    #[test]
    fn names_round_trip() {
        for f in Flow::ALL {
            assert_eq!(Flow::from_name(f.name()), Some(f));
        }
        assert_eq!(Flow::from_name("kdv2"), None);
    }

    #[test]
    fn zero_stays_zero() {
        let g = TorusGrid::new(1.0, 16).unwrap();
        let z = FourierField::zeros(&g);
        for flow in Flow::ALL {
            for scheme in [Scheme::Etdrk4, Scheme::IntegratingFactorRk4] {
                let tr = evolve(&z, &FlowSpec::new(flow, 1e-3, 0.01).with_scheme(scheme)).unwrap();
                assert!(tr.last().coeff_norm() == 0.0);
            }
        }
    }

    #[test]
    fn invariants_examples() {
        let g = TorusGrid::new(1.0, 16).unwrap();
        let z = classical_invariants(&FourierField::zeros(&g)).unwrap();
        assert_eq!((z.mass, z.l2, z.energy), (c(0.0, 0.0), 0.0, Some(0.0)));
        let inv = classical_invariants(&cos2(&g, 1.0)).unwrap();
        assert!(inv.mass.norm() < 1e-15);
        assert!((inv.l2 - 2.0).abs() < 1e-14);
        assert!((inv.energy.unwrap() - 4.0 * PI * PI).abs() < 1e-12);
        let g = TorusGrid::new(40.0, 256).unwrap();
        let sol = FourierField::from_fn(&g, |x| -2.0 / (x - 20.0).cosh().powi(2)).unwrap();
        let inv = classical_invariants(&sol).unwrap();
        assert!((inv.mass.re + 4.0).abs() < 1e-10);
        assert!((inv.l2 - 16.0 / 3.0).abs() < 1e-10);
        let cplx = classical_invariants(&sol.clone().into_complex()).unwrap();
        assert!(cplx.energy.is_none());
    }

    #[test]
    fn validation_errors() {
        let g = TorusGrid::new(1.0, 8).unwrap();
        let q = cos2(&g, 1.0);
        assert!(matches!(evolve(&q, &FlowSpec::new(Flow::Kdv, 0.0, 1.0)), Err(Error::Config(_))));
        assert!(matches!(evolve(&q, &FlowSpec::new(Flow::Kdv, 1e-3, -1.0)), Err(Error::Config(_))));
        let cq = FourierField::from_modes(&g, &[(1, c(1.0, 0.0))], false).unwrap();
        assert!(matches!(evolve(&cq, &FlowSpec::new(Flow::MkdvRealPlus, 1e-3, 0.01)), Err(Error::Domain(_))));
    }

    #[test]
    fn blow_up_is_reported() {
        let g = TorusGrid::new(1.0, 16).unwrap();
        let q = cos2(&g, 1e3);
        match evolve(&q, &FlowSpec::new(Flow::NlsPlus, 1e-2, 10.0)) {
            Err(Error::BlowUp { last_good_time }) => assert!(last_good_time >= 0.0),
            other => panic!("expected blow-up, got {other:?}"),
        }
    }

    #[test]
    fn linear_waves_are_exact() {
        // tiny amplitude: the linear propagator exp(i xi^3 t) dominates
        let g = TorusGrid::new(1.0, 16).unwrap();
        let q = cos2(&g, 1e-9);
        let t = 0.013;
        let tr = evolve(&q, &FlowSpec::new(Flow::Kdv, 1e-3, t)).unwrap();
        let xi = 2.0 * PI;
        let want = Complex64::from_polar(1e-9, xi.powi(3) * t);
        assert!((tr.last().coeff(1) - want).norm() < 1e-16);
    }

    #[test]
    fn nls_plane_wave_phase() {
        let g = TorusGrid::new(1.0, 8).unwrap();
        let a = 0.1;
        for (flow, sign) in [(Flow::NlsPlus, 1.0), (Flow::NlsMinus, -1.0)] {
            for scheme in [Scheme::Etdrk4, Scheme::IntegratingFactorRk4] {
                let q = FourierField::from_modes(&g, &[(1, c(a, 0.0))], false).unwrap();
                let tr = evolve(&q, &FlowSpec::new(flow, 1e-3, 1.0).with_scheme(scheme)).unwrap();
                let xi = 2.0 * PI;
                let omega = xi * xi + sign * 2.0 * a * a;
                let got = tr.last().coeff(1);
                let want = Complex64::from_polar(a, omega);
                assert!((got / want).arg().abs() < 1e-8, "{flow:?} {scheme:?}: {}", (got / want).arg());
                assert!((got.norm() - a).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn kdv_time_reversal() {
        let g = TorusGrid::new(1.0, 32).unwrap();
        let q0 = cos2(&g, 0.5);
        let spec = FlowSpec::new(Flow::Kdv, 1e-4, 0.02);
        let fwd = evolve(&q0, &spec).unwrap();
        let back = evolve(&fwd.last().reflect(), &spec).unwrap();
        let diff = back.last().reflect().sub(&q0).unwrap().coeff_norm();
        assert!(diff < 1e-6, "{diff}");
    }

    #[test]
    fn nls_gauge_invariance() {
        let g = TorusGrid::new(1.0, 16).unwrap();
        let q0 = FourierField::from_modes(&g, &[(0, c(0.3, 0.1)), (1, c(0.2, -0.1)), (-2, c(0.1, 0.1))], false).unwrap();
        let phase = Complex64::from_polar(1.0, 0.7);
        let spec = FlowSpec::new(Flow::NlsMinus, 1e-3, 0.1);
        let a = evolve(&q0.scale_complex(phase), &spec).unwrap();
        let b = evolve(&q0, &spec).unwrap();
        let diff = a.last().sub(&b.last().scale_complex(phase)).unwrap().coeff_norm();
        assert!(diff < 1e-10, "{diff}");
    }

    #[test]
    fn schemes_agree() {
        let g = TorusGrid::new(1.0, 32).unwrap();
        let q0 = FourierField::from_modes(&g, &[(1, c(0.3, 0.2)), (-1, c(0.1, -0.2)), (2, c(0.05, 0.0))], false).unwrap();
        for flow in [Flow::HirotaPlus, Flow::NlsMinus] {
            let a = evolve(&q0, &FlowSpec::new(flow, 2e-5, 0.02)).unwrap();
            let b = evolve(&q0, &FlowSpec::new(flow, 2e-5, 0.02).with_scheme(Scheme::IntegratingFactorRk4)).unwrap();
            let d = a.last().sub(b.last()).unwrap().coeff_norm();
            assert!(d < 1e-9, "{flow:?} {d}");
        }
    }

    #[test]
    fn snapshot_cadence() {
        let g = TorusGrid::new(1.0, 8).unwrap();
        let tr = evolve(&cos2(&g, 0.1), &FlowSpec::new(Flow::Kdv, 1e-3, 0.01).with_snapshot_every(4)).unwrap();
        let t = tr.times();
        assert_eq!(t.len(), 4);
        assert!((t[1] - 0.004).abs() < 1e-15 && t[3] == 0.01);
    }
}
