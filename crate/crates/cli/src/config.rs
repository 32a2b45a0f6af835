//! Scenario configuration files (TOML). Unknown keys are rejected.

use std::path::{Path, PathBuf};

use pertdet::alpha::{AknsSign, GatePurpose};
use pertdet::evolution::{Flow, FlowSpec, Scheme};
use pertdet::norms::{NormSpec, SurrogateFamily, XyKind};
use pertdet::profiles::Profile;
use pertdet::{Complex64, FourierField, TorusGrid};
use serde::Deserialize;

use crate::RunError;

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub name: String,
    #[serde(default)]
    pub seed: u64,
    /// `"real"` or `"complex"`; defaults to what the flow requires, else real.
    #[serde(default)]
    pub field: Option<FieldKind>,
    pub grid: GridConfig,
    pub initial: InitialConfig,
    #[serde(default)]
    pub flow: Option<FlowConfig>,
    #[serde(default)]
    pub alpha: Option<AlphaConfig>,
    #[serde(default)]
    pub norms: Vec<NormConfig>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub fallacy: Option<FallacyConfig>,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum FieldKind {
    Real,
    Complex,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub period: f64,
    pub n_max: usize,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(tag = "profile", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialConfig {
    Zero,
    Cosine { amplitude: f64, mode: i64 },
    Gaussian { amplitude: f64, width: f64, center: f64 },
    Soliton { kappa: f64, center: f64 },
    RandomBandlimited { cutoff: usize, amplitude: f64, seed: Option<u64> },
    TanhStep,
    /// Explicit `[mode, re, im]` triples.
    Coefficients { modes: Vec<(i64, f64, f64)> },
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FlowConfig {
    pub flavor: String,
    pub dt: f64,
    pub horizon: f64,
    #[serde(default = "default_scheme")]
    pub scheme: String,
    #[serde(default)]
    pub snapshot_every: Option<usize>,
}

fn default_scheme() -> String {
    "etdrk4".into()
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct AlphaConfig {
    #[serde(default)]
    pub kappa: Vec<f64>,
    /// `kdv_conserve`, `kdv_bound` or `akns`: adds `max(gate, min_kappa)` to the list.
    #[serde(default)]
    pub gate: Option<String>,
    #[serde(default = "one")]
    pub min_kappa: f64,
    /// `kdv` or `akns`; defaults from the flow (or the field type).
    #[serde(default)]
    pub family: Option<String>,
    /// `plus` or `minus`; defaults to the sign of the flow.
    #[serde(default)]
    pub akns_sign: Option<String>,
    #[serde(default)]
    pub akns_gate: Option<f64>,
    #[serde(default)]
    pub series_tol: Option<f64>,
}

fn one() -> f64 {
    1.0
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct NormConfig {
    /// `sobolev`, `h_minus_one`, `besov`, `surrogate`, `xy`, `xy_surrogate`.
    pub kind: String,
    #[serde(default)]
    pub s: Option<f64>,
    #[serde(default)]
    pub r: Option<f64>,
    #[serde(default)]
    pub kappa0: Option<f64>,
    #[serde(default)]
    pub family: Option<String>,
    #[serde(default)]
    pub which: Option<String>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default = "default_drift")]
    pub drift: f64,
    #[serde(default = "default_mass")]
    pub mass: f64,
    #[serde(default = "default_l2")]
    pub l2: f64,
    #[serde(default = "default_energy")]
    pub energy: f64,
    #[serde(default = "default_log_det")]
    pub log_det: f64,
}

fn default_drift() -> f64 {
    1e-6
}
fn default_mass() -> f64 {
    1e-12
}
fn default_l2() -> f64 {
    1e-8
}
fn default_energy() -> f64 {
    1e-7
}
fn default_log_det() -> f64 {
    1e-6
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            drift: default_drift(),
            mass: default_mass(),
            l2: default_l2(),
            energy: default_energy(),
            log_det: default_log_det(),
        }
    }
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FallacyConfig {
    pub kappa: f64,
    pub half_width: f64,
    pub points: usize,
    pub times: Vec<f64>,
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default)]
    pub dir: Option<PathBuf>,
}

/// Which determinant to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphaFamily {
    Kdv,
    Akns(AknsSign),
}

/// One norm column.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NormColumn {
    Sobolev(f64),
    HMinusOne,
    Besov { s: f64, r: f64 },
    Surrogate { spec: NormSpec, family: SurrogateFamily },
    Xy { kappa0: f64, which: XyKind },
    XySurrogate { kappa0: f64, which: XyKind },
}

impl NormColumn {
    pub fn header(&self) -> String {
        fn r_str(r: f64) -> String {
            if r.is_infinite() { "inf".into() } else { format!("{r}") }
        }
        fn xy(w: XyKind) -> &'static str {
            match w {
                XyKind::X => "x",
                XyKind::Y => "y",
            }
        }
        match *self {
            NormColumn::Sobolev(s) => format!("sobolev_s{s}"),
            NormColumn::HMinusOne => "h_minus_one".into(),
            NormColumn::Besov { s, r } => format!("besov_s{s}_r{}", r_str(r)),
            NormColumn::Surrogate { spec, family } => {
                let fam = match family {
                    SurrogateFamily::Besov1 => "besov1",
                    SurrogateFamily::Besov2 => "besov2",
                    SurrogateFamily::Besov3 => "besov3",
                    SurrogateFamily::Z => "z",
                };
                format!("{fam}_s{}_r{}_k{}", spec.s, r_str(spec.r), spec.kappa0)
            }
            NormColumn::Xy { kappa0, which } => format!("{}_k{kappa0}", xy(which)),
            NormColumn::XySurrogate { kappa0, which } => format!("{}_surrogate_k{kappa0}", xy(which)),
        }
    }

    pub fn evaluate(&self, q: &FourierField) -> pertdet::Result<f64> {
        use pertdet::norms::*;
        match *self {
            NormColumn::Sobolev(s) => Ok(q.sobolev_norm(s)),
            NormColumn::HMinusOne => Ok(h_minus_one_sq(q).sqrt()),
            NormColumn::Besov { s, r } => besov_norm(q, s, r),
            NormColumn::Surrogate { spec, family } => surrogate_norm(q, &spec, family),
            NormColumn::Xy { kappa0, which } => xy_norm(q, kappa0, which),
            NormColumn::XySurrogate { kappa0, which } => xy_surrogate(q, kappa0, which),
        }
    }
}

fn bad(key: &str, msg: impl std::fmt::Display) -> RunError {
    RunError::Config(format!("{key}: {msg}"))
}

impl ScenarioConfig {
    pub fn from_toml(text: &str) -> Result<Self, RunError> {
        let cfg: ScenarioConfig = toml::from_str(text).map_err(|e| RunError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, RunError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| RunError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// Checks every key that has a constraint; the message names the offending key.
    pub fn validate(&self) -> Result<(), RunError> {
        if self.name.is_empty() || self.name.contains(['/', '\\']) {
            return Err(bad("name", "must be a non-empty file-name-safe string"));
        }
        self.grid()?;
        if let Some(f) = &self.flow {
            self.flow_spec()?;
            if !(f.dt > 0.0) {
                return Err(bad("flow.dt", format!("must be positive, got {}", f.dt)));
            }
        }
        self.alpha_family()?;
        if let Some(a) = &self.alpha {
            for &k in &a.kappa {
                if !(k > 0.0 && k.is_finite()) {
                    return Err(bad("alpha.kappa", format!("entries must be positive, got {k}")));
                }
            }
            if !(a.min_kappa > 0.0) {
                return Err(bad("alpha.min_kappa", "must be positive"));
            }
            if let Some(t) = a.series_tol {
                if !(t > 0.0) {
                    return Err(bad("alpha.series_tol", "must be positive"));
                }
            }
            if let Some(g) = a.akns_gate {
                if !(g > 0.0) {
                    return Err(bad("alpha.akns_gate", "must be positive"));
                }
            }
            self.gate_purpose()?;
        }
        self.norm_columns()?;
        let t = &self.tolerances;
        for (key, v) in [
            ("tolerances.drift", t.drift),
            ("tolerances.mass", t.mass),
            ("tolerances.l2", t.l2),
            ("tolerances.energy", t.energy),
            ("tolerances.log_det", t.log_det),
        ] {
            if !(v > 0.0) {
                return Err(bad(key, format!("must be positive, got {v}")));
            }
        }
        if let Some(f) = &self.fallacy {
            if !(f.kappa > 0.0) {
                return Err(bad("fallacy.kappa", "must be positive"));
            }
            if !(f.half_width > 0.0) {
                return Err(bad("fallacy.half_width", "must be positive"));
            }
            if f.points < 2 {
                return Err(bad("fallacy.points", "must be at least 2"));
            }
            if f.times.is_empty() || f.times.iter().any(|t| !(*t >= 0.0)) {
                return Err(bad("fallacy.times", "must be a non-empty list of non-negative times"));
            }
            let _ = self.profile()?.line_fn().map_err(|e| bad("initial.profile", e))?;
        } else {
            self.initial_field(self.seed)?;
        }
        Ok(())
    }

    pub fn grid(&self) -> Result<TorusGrid, RunError> {
        if !(self.grid.period > 0.0 && self.grid.period.is_finite()) {
            return Err(bad("grid.period", format!("must be positive, got {}", self.grid.period)));
        }
        if self.grid.n_max == 0 || self.grid.n_max > 1024 {
            return Err(bad("grid.n_max", format!("must be in 1..=1024, got {}", self.grid.n_max)));
        }
        TorusGrid::new(self.grid.period, self.grid.n_max).map_err(|e| bad("grid", e))
    }

    pub fn flow(&self) -> Result<Option<Flow>, RunError> {
        match &self.flow {
            None => Ok(None),
            Some(f) => Flow::from_name(&f.flavor)
                .map(Some)
                .ok_or_else(|| bad("flow.flavor", format!("unknown flow `{}`", f.flavor))),
        }
    }

    pub fn flow_spec(&self) -> Result<Option<FlowSpec>, RunError> {
        let Some(f) = &self.flow else { return Ok(None) };
        let flow = self.flow()?.expect("flow section present");
        let scheme = match f.scheme.as_str() {
            "etdrk4" => Scheme::Etdrk4,
            "integrating_factor_rk4" => Scheme::IntegratingFactorRk4,
            other => return Err(bad("flow.scheme", format!("unknown scheme `{other}`"))),
        };
        if !(f.dt > 0.0 && f.dt.is_finite()) {
            return Err(bad("flow.dt", format!("must be positive, got {}", f.dt)));
        }
        if !(f.horizon >= 0.0 && f.horizon.is_finite()) {
            return Err(bad("flow.horizon", format!("must be non-negative, got {}", f.horizon)));
        }
        let every = f.snapshot_every.unwrap_or(usize::MAX);
        if every == 0 {
            return Err(bad("flow.snapshot_every", "must be at least 1"));
        }
        Ok(Some(FlowSpec::new(flow, f.dt, f.horizon).with_scheme(scheme).with_snapshot_every(every)))
    }

    pub fn is_real(&self) -> Result<bool, RunError> {
        let flow = self.flow()?;
        let real = match (self.field, flow) {
            (Some(FieldKind::Real), _) => true,
            (Some(FieldKind::Complex), Some(f)) if f.is_real() => {
                return Err(bad("field", format!("{} requires real data", f.name())));
            }
            (Some(FieldKind::Complex), _) => false,
            (None, Some(f)) => f.is_real(),
            (None, None) => !matches!(self.alpha.as_ref().and_then(|a| a.family.as_deref()), Some("akns")),
        };
        Ok(real)
    }

    pub fn profile(&self) -> Result<Profile, RunError> {
        Ok(match &self.initial {
            InitialConfig::Zero => Profile::Zero,
            &InitialConfig::Cosine { amplitude, mode } => Profile::Cosine { amplitude, mode },
            &InitialConfig::Gaussian { amplitude, width, center } => Profile::Gaussian { amplitude, width, center },
            &InitialConfig::Soliton { kappa, center } => Profile::Soliton { kappa, center },
            &InitialConfig::RandomBandlimited { cutoff, amplitude, seed } => {
                Profile::RandomBandlimited { seed: seed.unwrap_or(self.seed), cutoff, amplitude }
            }
            InitialConfig::TanhStep => Profile::TanhStep,
            InitialConfig::Coefficients { .. } => {
                return Err(bad("initial.profile", "explicit coefficients have no named profile"));
            }
        })
    }

    /// Initial data; `seed` replaces the configured seed for random profiles without their own.
    pub fn initial_field(&self, seed: u64) -> Result<FourierField, RunError> {
        let grid = self.grid()?;
        let real = self.is_real()?;
        match &self.initial {
            InitialConfig::Coefficients { modes } => {
                let modes: Vec<(i64, Complex64)> = modes.iter().map(|&(n, re, im)| (n, Complex64::new(re, im))).collect();
                FourierField::from_modes(&grid, &modes, real).map_err(|e| bad("initial.modes", e))
            }
            InitialConfig::RandomBandlimited { cutoff, amplitude, seed: own } => {
                Profile::RandomBandlimited { seed: own.unwrap_or(seed), cutoff: *cutoff, amplitude: *amplitude }
                    .build(&grid, real)
                    .map_err(|e| bad("initial", e))
            }
            _ => self.profile()?.build(&grid, real).map_err(|e| bad("initial", e)),
        }
    }

    pub fn alpha_family(&self) -> Result<AlphaFamily, RunError> {
        let flow = self.flow()?;
        let a = self.alpha.as_ref();
        let family = a.and_then(|a| a.family.clone());
        let sign = match a.and_then(|a| a.akns_sign.as_deref()) {
            Some("plus") => Some(AknsSign::Plus),
            Some("minus") => Some(AknsSign::Minus),
            Some(other) => return Err(bad("alpha.akns_sign", format!("expected plus or minus, got `{other}`"))),
            None => None,
        };
        let flow_sign = flow.and_then(|f| f.cubic_sign()).map(|s| if s > 0.0 { AknsSign::Plus } else { AknsSign::Minus });
        let akns = |sign: Option<AknsSign>| AlphaFamily::Akns(sign.or(flow_sign).unwrap_or(AknsSign::Plus));
        Ok(match family.as_deref() {
            Some("kdv") => AlphaFamily::Kdv,
            Some("akns") => akns(sign),
            Some(other) => return Err(bad("alpha.family", format!("expected kdv or akns, got `{other}`"))),
            None => match flow {
                Some(Flow::Kdv) => AlphaFamily::Kdv,
                Some(_) => akns(sign),
                None if self.field == Some(FieldKind::Complex) => akns(sign),
                None => AlphaFamily::Kdv,
            },
        })
    }

    pub fn gate_purpose(&self) -> Result<Option<GatePurpose>, RunError> {
        match self.alpha.as_ref().and_then(|a| a.gate.as_deref()) {
            None => Ok(None),
            Some("kdv_conserve") => Ok(Some(GatePurpose::KdvConserve)),
            Some("kdv_bound") => Ok(Some(GatePurpose::KdvBound)),
            Some("akns") => Ok(Some(GatePurpose::Akns)),
            Some(other) => Err(bad("alpha.gate", format!("unknown gate `{other}`"))),
        }
    }

    pub fn norm_columns(&self) -> Result<Vec<NormColumn>, RunError> {
        self.norms
            .iter()
            .enumerate()
            .map(|(i, n)| {
                let key = |k: &str| format!("norms[{i}].{k}");
                let need = |v: Option<f64>, k: &str| v.ok_or_else(|| bad(&key(k), "missing"));
                let which = || match n.which.as_deref() {
                    Some("x") => Ok(XyKind::X),
                    Some("y") => Ok(XyKind::Y),
                    _ => Err(bad(&key("which"), "expected x or y")),
                };
                let kappa0 = || {
                    let k = need(n.kappa0, "kappa0")?;
                    if k > 0.0 { Ok(k) } else { Err(bad(&key("kappa0"), "must be positive")) }
                };
                let r = || {
                    let r = need(n.r, "r")?;
                    if r >= 1.0 { Ok(r) } else { Err(bad(&key("r"), "must be >= 1")) }
                };
                Ok(match n.kind.as_str() {
                    "sobolev" => NormColumn::Sobolev(need(n.s, "s")?),
                    "h_minus_one" => NormColumn::HMinusOne,
                    "besov" => NormColumn::Besov { s: need(n.s, "s")?, r: r()? },
                    "surrogate" => {
                        let family = match n.family.as_deref() {
                            Some("besov1") => SurrogateFamily::Besov1,
                            Some("besov2") => SurrogateFamily::Besov2,
                            Some("besov3") => SurrogateFamily::Besov3,
                            Some("z") => SurrogateFamily::Z,
                            _ => return Err(bad(&key("family"), "expected besov1, besov2, besov3 or z")),
                        };
                        let spec = NormSpec::new(need(n.s, "s")?, r()?, kappa0()?).map_err(|e| bad(&key("s"), e))?;
                        NormColumn::Surrogate { spec, family }
                    }
                    "xy" => NormColumn::Xy { kappa0: kappa0()?, which: which()? },
                    "xy_surrogate" => NormColumn::XySurrogate { kappa0: kappa0()?, which: which()? },
                    other => return Err(bad(&key("kind"), format!("unknown norm `{other}`"))),
                })
            })
            .collect()
    }

    /// The kappa values to evaluate: the explicit list plus the gate value, if configured.
    pub fn kappas(&self, q0: &FourierField) -> Result<Vec<f64>, RunError> {
        let Some(a) = &self.alpha else { return Ok(Vec::new()) };
        let mut out = a.kappa.clone();
        if let Some(purpose) = self.gate_purpose()? {
            let gate = a.akns_gate.unwrap_or(pertdet::alpha::DEFAULT_GATE);
            out.push(pertdet::alpha::kappa_gate_with(q0, purpose, gate).max(a.min_kappa));
        }
        Ok(out)
    }
}
