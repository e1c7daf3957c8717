//! Line-oriented run configuration.
//!
//! ```text
//! # comment
//! name = my-run
//! kind = stationary-adr
//! gamma = 1
//! c = 400
//! mu = 1
//! n_elements = 40
//! curves = galerkin, spectral:3, spectral:15
//! ```
//!
//! Keys before the first `[section]` header are shared by every section; each
//! section defines one case and may override shared keys. Integer lists accept
//! `start:end:step` ranges (`modes = 3:41:2`).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::solvers::AffineSource;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid value for `{field}`: {message}")]
    Invalid { field: String, message: String },
}

impl ConfigError {
    fn invalid(field: &str, message: impl Into<String>) -> Self {
        ConfigError::Invalid {
            field: field.to_string(),
            message: message.into(),
        }
    }

    /// Offending field for validation errors.
    pub fn field(&self) -> Option<&str> {
        match self {
            ConfigError::Invalid { field, .. } => Some(field),
            ConfigError::Parse { .. } => None,
        }
    }
}

pub type ConfigResult<T> = std::result::Result<T, ConfigError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    StationaryAdr,
    EvolutiveAd,
    TauTable,
}

impl ProblemKind {
    fn as_str(self) -> &'static str {
        match self {
            ProblemKind::StationaryAdr => "stationary-adr",
            ProblemKind::EvolutiveAd => "evolutive-ad",
            ProblemKind::TauTable => "tau-table",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Study {
    Solution,
    HSweep,
    KSweep,
    MSweep,
}

impl Study {
    fn as_str(self) -> &'static str {
        match self {
            Study::Solution => "solution",
            Study::HSweep => "h-sweep",
            Study::KSweep => "k-sweep",
            Study::MSweep => "m-sweep",
        }
    }
}

/// One solver configuration to run and report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Curve {
    Galerkin,
    Spectral(usize),
    TauExact,
    TauTruncated(usize),
}

impl Curve {
    pub fn label(&self) -> String {
        match self {
            Curve::Galerkin => "galerkin".into(),
            Curve::Spectral(m) => format!("spectral:{m}"),
            Curve::TauExact => "tau:exact".into(),
            Curve::TauTruncated(m) => format!("tau:{m}"),
        }
    }

    fn parse(s: &str) -> Option<Curve> {
        match s {
            "galerkin" => Some(Curve::Galerkin),
            "tau:exact" => Some(Curve::TauExact),
            _ => {
                if let Some(m) = s.strip_prefix("spectral:") {
                    m.parse().ok().map(Curve::Spectral)
                } else if let Some(m) = s.strip_prefix("tau:") {
                    m.parse().ok().map(Curve::TauTruncated)
                } else {
                    None
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialKind {
    Box { lo: f64, hi: f64 },
    Sine,
    AdvectedMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferencePolicy {
    None,
    Exact,
    FineGalerkin,
    ConvergedSpectral,
}

impl ReferencePolicy {
    fn as_str(self) -> &'static str {
        match self {
            ReferencePolicy::None => "none",
            ReferencePolicy::Exact => "exact",
            ReferencePolicy::FineGalerkin => "fine-galerkin",
            ReferencePolicy::ConvergedSpectral => "converged-spectral",
        }
    }
}

/// Validated configuration of one case.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub name: String,
    pub case: String,
    pub kind: ProblemKind,
    pub study: Study,
    pub gamma: f64,
    pub c: f64,
    pub mu: f64,
    pub n_elements: usize,
    pub n_elements_list: Vec<usize>,
    /// Time step; for CFL-driven runs this is derived from `cfl_ratio`.
    pub k: f64,
    pub cfl_ratio: Option<f64>,
    pub k_list: Vec<f64>,
    pub steps: usize,
    pub t_final: f64,
    pub curves: Vec<Curve>,
    pub modes: Vec<usize>,
    pub source: AffineSource,
    pub u_left: f64,
    pub u_right: f64,
    pub initial: InitialKind,
    pub reference: ReferencePolicy,
    pub reference_factor: usize,
    pub reference_modes: usize,
    pub peclet_list: Vec<f64>,
}

const KEYS: &[&str] = &[
    "name",
    "kind",
    "study",
    "gamma",
    "c",
    "mu",
    "n_elements",
    "n_elements_list",
    "k",
    "cfl_ratio",
    "k_list",
    "t_final",
    "steps",
    "curves",
    "mode",
    "m",
    "tau",
    "modes",
    "source_slope",
    "source_intercept",
    "u_left",
    "u_right",
    "initial",
    "box",
    "reference",
    "reference_factor",
    "reference_modes",
    "peclet_list",
];

#[derive(Debug, Clone, Default)]
struct Section {
    name: String,
    entries: BTreeMap<String, (String, usize)>,
}

/// Parses a configuration text into validated cases.
pub fn parse_config(text: &str) -> ConfigResult<Vec<RunConfig>> {
    let mut shared = Section::default();
    let mut sections: Vec<Section> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('[') {
            let name = rest.strip_suffix(']').map(str::trim).unwrap_or("");
            if name.is_empty()
                || !name
                    .chars()
                    .all(|ch| ch.is_ascii_alphanumeric() || ch == '-' || ch == '_')
            {
                return Err(ConfigError::Parse {
                    line: line_no,
                    message: format!("malformed section header `{line}`"),
                });
            }
            if sections.iter().any(|s| s.name == name) {
                return Err(ConfigError::Parse {
                    line: line_no,
                    message: format!("duplicate section `{name}`"),
                });
            }
            sections.push(Section {
                name: name.to_string(),
                entries: BTreeMap::new(),
            });
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(ConfigError::Parse {
                line: line_no,
                message: format!("expected `key = value`, found `{line}`"),
            });
        };
        let key = key.trim().to_ascii_lowercase();
        let key = key.as_str();
        let value = value.trim();
        if !KEYS.contains(&key) {
            return Err(ConfigError::Parse {
                line: line_no,
                message: format!("unknown key `{key}`"),
            });
        }
        if value.is_empty() {
            return Err(ConfigError::Parse {
                line: line_no,
                message: format!("missing value for `{key}`"),
            });
        }
        let target = sections.last_mut().unwrap_or(&mut shared);
        if target.entries.contains_key(key) {
            return Err(ConfigError::Parse {
                line: line_no,
                message: format!("duplicate key `{key}`"),
            });
        }
        target
            .entries
            .insert(key.to_string(), (value.to_string(), line_no));
    }
    if sections.is_empty() {
        return Ok(vec![build(&shared.entries, "")?]);
    }
    sections
        .iter()
        .map(|s| {
            let mut merged = shared.entries.clone();
            merged.extend(s.entries.clone());
            build(&merged, &s.name)
        })
        .collect()
}

type Entries = BTreeMap<String, (String, usize)>;

fn get<'a>(e: &'a Entries, key: &str) -> Option<(&'a str, usize)> {
    e.get(key).map(|(v, l)| (v.as_str(), *l))
}

fn parse_f64(key: &str, value: &str, line: usize) -> ConfigResult<f64> {
    value.parse::<f64>().map_err(|_| ConfigError::Parse {
        line,
        message: format!("`{key}` expects a number, found `{value}`"),
    })
}

fn parse_usize(key: &str, value: &str, line: usize) -> ConfigResult<usize> {
    value.parse::<usize>().map_err(|_| ConfigError::Parse {
        line,
        message: format!("`{key}` expects a nonnegative integer, found `{value}`"),
    })
}

fn float(e: &Entries, key: &str, default: Option<f64>) -> ConfigResult<Option<f64>> {
    match get(e, key) {
        Some((v, l)) => parse_f64(key, v, l).map(Some),
        None => Ok(default),
    }
}

fn float_list(e: &Entries, key: &str) -> ConfigResult<Vec<f64>> {
    match get(e, key) {
        Some((v, l)) => v
            .split(',')
            .map(|s| parse_f64(key, s.trim(), l))
            .collect(),
        None => Ok(Vec::new()),
    }
}

fn usize_list(e: &Entries, key: &str) -> ConfigResult<Vec<usize>> {
    let Some((v, l)) = get(e, key) else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for item in v.split(',') {
        let item = item.trim();
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [one] => out.push(parse_usize(key, one, l)?),
            [a, b] | [a, b, _] => {
                let start = parse_usize(key, a, l)?;
                let end = parse_usize(key, b, l)?;
                let step = if parts.len() == 3 {
                    parse_usize(key, parts[2], l)?
                } else {
                    1
                };
                if step == 0 || end < start {
                    return Err(ConfigError::Parse {
                        line: l,
                        message: format!("bad range `{item}` for `{key}`"),
                    });
                }
                out.extend((start..=end).step_by(step));
            }
            _ => {
                return Err(ConfigError::Parse {
                    line: l,
                    message: format!("bad list item `{item}` for `{key}`"),
                })
            }
        }
    }
    Ok(out)
}

fn build(e: &Entries, case: &str) -> ConfigResult<RunConfig> {
    let name = get(e, "name").map(|(v, _)| v.to_string()).unwrap_or_else(|| "custom".into());
    let kind = match get(e, "kind") {
        Some(("stationary-adr", _)) => ProblemKind::StationaryAdr,
        Some(("evolutive-ad", _)) => ProblemKind::EvolutiveAd,
        Some(("tau-table", _)) => ProblemKind::TauTable,
        Some((v, l)) => {
            return Err(ConfigError::Parse {
                line: l,
                message: format!("unknown kind `{v}`"),
            })
        }
        None => return Err(ConfigError::invalid("kind", "missing")),
    };
    let study = match get(e, "study") {
        None | Some(("solution", _)) => Study::Solution,
        Some(("h-sweep", _)) => Study::HSweep,
        Some(("k-sweep", _)) => Study::KSweep,
        Some(("m-sweep", _)) => Study::MSweep,
        Some((v, l)) => {
            return Err(ConfigError::Parse {
                line: l,
                message: format!("unknown study `{v}`"),
            })
        }
    };
    let curves = match get(e, "curves") {
        Some((v, l)) => v
            .split(',')
            .map(|s| {
                Curve::parse(s.trim()).ok_or_else(|| ConfigError::Parse {
                    line: l,
                    message: format!("unknown curve `{}`", s.trim()),
                })
            })
            .collect::<ConfigResult<Vec<_>>>()?,
        None => Vec::new(),
    };
    let curves = match get(e, "mode") {
        None => {
            for key in ["m", "tau"] {
                if let Some((_, l)) = get(e, key) {
                    return Err(ConfigError::Parse {
                        line: l,
                        message: format!("`{key}` is only meaningful together with `mode`"),
                    });
                }
            }
            curves
        }
        Some((mode, l)) => {
            if !curves.is_empty() {
                return Err(ConfigError::invalid("mode", "give either `mode` or `curves`"));
            }
            let curve = match mode {
                "galerkin" => Curve::Galerkin,
                "spectral-vms" => match get(e, "m") {
                    Some((v, lm)) => Curve::Spectral(parse_usize("m", v, lm)?),
                    None => return Err(ConfigError::invalid("m", "mode = spectral-vms needs `m`")),
                },
                "tau-vms" => match get(e, "tau") {
                    Some(("exact", _)) => Curve::TauExact,
                    Some((v, lt)) => Curve::TauTruncated(parse_usize("tau", v, lt)?),
                    None => return Err(ConfigError::invalid("tau", "mode = tau-vms needs `tau = exact` or a mode count")),
                },
                _ => {
                    return Err(ConfigError::Parse {
                        line: l,
                        message: format!("unknown mode `{mode}`"),
                    })
                }
            };
            vec![curve]
        }
    };
    let initial = match get(e, "initial") {
        None | Some(("box", _)) => {
            let b = float_list(e, "box")?;
            match b.as_slice() {
                [] => InitialKind::Box { lo: 0.2, hi: 0.7 },
                [lo, hi] => InitialKind::Box { lo: *lo, hi: *hi },
                _ => return Err(ConfigError::invalid("box", "expects two numbers `lo, hi`")),
            }
        }
        Some(("sine", _)) => InitialKind::Sine,
        Some(("advected-mode", _)) => InitialKind::AdvectedMode,
        Some((v, l)) => {
            return Err(ConfigError::Parse {
                line: l,
                message: format!("unknown initial condition `{v}`"),
            })
        }
    };
    let reference = match get(e, "reference") {
        None | Some(("none", _)) => ReferencePolicy::None,
        Some(("exact", _)) => ReferencePolicy::Exact,
        Some(("fine-galerkin", _)) => ReferencePolicy::FineGalerkin,
        Some(("converged-spectral", _)) => ReferencePolicy::ConvergedSpectral,
        Some((v, l)) => {
            return Err(ConfigError::Parse {
                line: l,
                message: format!("unknown reference `{v}`"),
            })
        }
    };
    let usize_or = |key: &str, default: usize| -> ConfigResult<usize> {
        match get(e, key) {
            Some((v, l)) => parse_usize(key, v, l),
            None => Ok(default),
        }
    };
    let mut cfg = RunConfig {
        name,
        case: case.to_string(),
        kind,
        study,
        gamma: float(e, "gamma", Some(0.0))?.unwrap_or(0.0),
        c: float(e, "c", Some(0.0))?.unwrap_or(0.0),
        mu: float(e, "mu", None)?.ok_or_else(|| ConfigError::invalid("mu", "missing"))?,
        n_elements: usize_or("n_elements", 0)?,
        n_elements_list: usize_list(e, "n_elements_list")?,
        k: float(e, "k", None)?.unwrap_or(0.0),
        cfl_ratio: float(e, "cfl_ratio", None)?,
        k_list: float_list(e, "k_list")?,
        steps: usize_or("steps", 0)?,
        t_final: float(e, "t_final", None)?.unwrap_or(0.0),
        curves,
        modes: usize_list(e, "modes")?,
        source: AffineSource::new(
            float(e, "source_slope", Some(0.0))?.unwrap_or(0.0),
            float(e, "source_intercept", Some(0.0))?.unwrap_or(0.0),
        ),
        u_left: float(e, "u_left", Some(0.0))?.unwrap_or(0.0),
        u_right: float(e, "u_right", None)?.unwrap_or(match kind {
            ProblemKind::StationaryAdr => 1.0,
            _ => 0.0,
        }),
        initial,
        reference,
        reference_factor: usize_or("reference_factor", 10)?,
        reference_modes: usize_or("reference_modes", 20_000)?,
        peclet_list: float_list(e, "peclet_list")?,
    };
    cfg.resolve_time_grid(e.contains_key("k"), e.contains_key("t_final"))?;
    cfg.validate()?;
    Ok(cfg)
}

fn positive(field: &str, v: f64) -> ConfigResult<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(ConfigError::invalid(field, format!("must be positive, got {v}")))
    }
}

impl RunConfig {
    /// Fills `k`, `steps` and `t_final` from whichever of them were given.
    fn resolve_time_grid(&mut self, has_k: bool, has_t: bool) -> ConfigResult<()> {
        if self.kind != ProblemKind::EvolutiveAd {
            return Ok(());
        }
        if let Some(ratio) = self.cfl_ratio {
            if has_k {
                return Err(ConfigError::invalid("cfl_ratio", "give either `k` or `cfl_ratio`"));
            }
            positive("cfl_ratio", ratio)?;
            positive("mu", self.mu)?;
            if self.n_elements < 2 {
                return Err(ConfigError::invalid("n_elements", "must be at least 2"));
            }
            let h = 1.0 / self.n_elements as f64;
            self.k = crate::analysis::time_step_for_cfl_ratio(self.c, self.mu, h, ratio)
                .map_err(|err| ConfigError::invalid("cfl_ratio", err.to_string()))?;
        }
        if self.study == Study::KSweep {
            positive("t_final", self.t_final)?;
            return Ok(());
        }
        positive("k", self.k)?;
        match (self.steps > 0, has_t) {
            (true, true) => Err(ConfigError::invalid("steps", "give either `steps` or `t_final`")),
            (true, false) => {
                self.t_final = self.steps as f64 * self.k;
                Ok(())
            }
            (false, true) => {
                positive("t_final", self.t_final)?;
                let n = (self.t_final / self.k).round();
                if n < 1.0 || (n * self.k - self.t_final).abs() > 1e-12 * self.t_final.max(1.0) {
                    return Err(ConfigError::invalid(
                        "t_final",
                        format!("{} is not a multiple of k = {}", self.t_final, self.k),
                    ));
                }
                self.steps = n as usize;
                Ok(())
            }
            (false, false) => Err(ConfigError::invalid("t_final", "missing (or give `steps`)")),
        }
    }

    fn validate(&self) -> ConfigResult<()> {
        positive("mu", self.mu)?;
        if !self.c.is_finite() {
            return Err(ConfigError::invalid("c", "must be finite"));
        }
        if !(self.gamma.is_finite() && self.gamma >= 0.0) {
            return Err(ConfigError::invalid("gamma", "must be nonnegative"));
        }
        if self.kind == ProblemKind::EvolutiveAd && self.gamma != 0.0 {
            return Err(ConfigError::invalid("gamma", "the evolutive problem has no reaction term"));
        }
        if self.kind == ProblemKind::TauTable {
            return self.validate_tau_table();
        }
        let needs_mesh = self.study != Study::HSweep;
        if needs_mesh && self.n_elements < 2 {
            return Err(ConfigError::invalid("n_elements", "must be at least 2"));
        }
        for curve in &self.curves {
            match curve {
                Curve::Spectral(0) | Curve::TauTruncated(0) => {
                    return Err(ConfigError::invalid("curves", "mode counts must be at least 1"))
                }
                Curve::TauExact | Curve::TauTruncated(_) if self.kind == ProblemKind::StationaryAdr => {
                    return Err(ConfigError::invalid(
                        "curves",
                        "tau curves need kind = evolutive-ad",
                    ))
                }
                _ => {}
            }
        }
        match self.study {
            Study::Solution => {
                if self.curves.is_empty() {
                    return Err(ConfigError::invalid("curves", "at least one curve is required"));
                }
            }
            Study::HSweep => {
                if self.curves.len() != 1 {
                    return Err(ConfigError::invalid("curves", "an h-sweep needs exactly one curve"));
                }
                check_sweep("n_elements_list", &self.n_elements_list.iter().map(|&n| n as f64).collect::<Vec<_>>())?;
                if self.n_elements_list.iter().any(|&n| n < 2) {
                    return Err(ConfigError::invalid("n_elements_list", "entries must be at least 2"));
                }
            }
            Study::KSweep => {
                if self.kind != ProblemKind::EvolutiveAd {
                    return Err(ConfigError::invalid("study", "a k-sweep needs kind = evolutive-ad"));
                }
                if self.curves.len() != 1 {
                    return Err(ConfigError::invalid("curves", "a k-sweep needs exactly one curve"));
                }
                check_sweep("k_list", &self.k_list)?;
                for &k in &self.k_list {
                    positive("k_list", k)?;
                    let n = (self.t_final / k).round();
                    if n < 1.0 || (n * k - self.t_final).abs() > 1e-12 * self.t_final.max(1.0) {
                        return Err(ConfigError::invalid(
                            "k_list",
                            format!("t_final = {} is not a multiple of k = {k}", self.t_final),
                        ));
                    }
                }
            }
            Study::MSweep => {
                if !self.curves.is_empty() {
                    return Err(ConfigError::invalid(
                        "curves",
                        "an m-sweep runs the spectral method for every entry of `modes`; omit `curves`",
                    ));
                }
                check_sweep("modes", &self.modes.iter().map(|&m| m as f64).collect::<Vec<_>>())?;
                if self.modes.contains(&0) {
                    return Err(ConfigError::invalid("modes", "mode counts must be at least 1"));
                }
            }
        }
        if self.reference_factor < 1 {
            return Err(ConfigError::invalid("reference_factor", "must be at least 1"));
        }
        match (self.kind, self.reference) {
            (ProblemKind::StationaryAdr, ReferencePolicy::Exact) => {
                if self.source != AffineSource::zero() || self.u_left != 0.0 || self.u_right != 1.0 {
                    return Err(ConfigError::invalid(
                        "reference",
                        "the exact solution needs zero source and boundary values 0 and 1",
                    ));
                }
            }
            (ProblemKind::StationaryAdr, ReferencePolicy::None) => {}
            (ProblemKind::StationaryAdr, _) => {
                return Err(ConfigError::invalid("reference", "stationary runs support `exact` or `none`"))
            }
            (ProblemKind::EvolutiveAd, ReferencePolicy::Exact) => {
                if self.initial != InitialKind::AdvectedMode || self.source != AffineSource::zero() {
                    return Err(ConfigError::invalid(
                        "reference",
                        "the exact solution needs initial = advected-mode and zero source",
                    ));
                }
            }
            (ProblemKind::EvolutiveAd, ReferencePolicy::ConvergedSpectral) => {
                if self.reference_modes < 1 {
                    return Err(ConfigError::invalid("reference_modes", "must be at least 1"));
                }
            }
            _ => {}
        }
        if self.study != Study::Solution && self.reference == ReferencePolicy::None {
            return Err(ConfigError::invalid("reference", "convergence studies need a reference"));
        }
        if self.study == Study::KSweep && self.reference != ReferencePolicy::Exact {
            return Err(ConfigError::invalid("reference", "a k-sweep compares against the exact solution"));
        }
        if self.study == Study::HSweep && self.reference == ReferencePolicy::ConvergedSpectral {
            return Err(ConfigError::invalid("reference", "an h-sweep needs `exact` or `fine-galerkin`"));
        }
        if self.kind == ProblemKind::EvolutiveAd {
            for (field, v) in [("u_left", self.u_left), ("u_right", self.u_right)] {
                if v != 0.0 {
                    return Err(ConfigError::invalid(field, "the evolutive problem has zero boundary values"));
                }
            }
        }
        if let InitialKind::Box { lo, hi } = self.initial {
            if !(lo < hi) {
                return Err(ConfigError::invalid("box", "needs lo < hi"));
            }
        }
        Ok(())
    }

    fn validate_tau_table(&self) -> ConfigResult<()> {
        check_sweep("k_list", &self.k_list)?;
        for &k in &self.k_list {
            positive("k_list", k)?;
        }
        check_sweep("peclet_list", &self.peclet_list)?;
        check_sweep("modes", &self.modes.iter().map(|&m| m as f64).collect::<Vec<_>>())?;
        if self.n_elements < 2 {
            return Err(ConfigError::invalid("n_elements", "must be at least 2"));
        }
        positive("k", self.k)
    }

    /// Canonical `key = value` lines describing this case.
    pub fn canonical_lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut push = |k: &str, v: String| out.push(format!("{k} = {v}"));
        let join_f = |v: &[f64]| v.iter().map(|x| fmt_num(*x)).collect::<Vec<_>>().join(", ");
        let join_u = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        push("name", self.name.clone());
        if !self.case.is_empty() {
            push("case", self.case.clone());
        }
        push("kind", self.kind.as_str().into());
        push("study", self.study.as_str().into());
        push("gamma", fmt_num(self.gamma));
        push("c", fmt_num(self.c));
        push("mu", fmt_num(self.mu));
        if self.n_elements > 0 {
            push("n_elements", self.n_elements.to_string());
        }
        if !self.n_elements_list.is_empty() {
            push("n_elements_list", join_u(&self.n_elements_list));
        }
        if self.kind != ProblemKind::StationaryAdr {
            if self.k > 0.0 {
                push("k", fmt_num(self.k));
            }
            if let Some(r) = self.cfl_ratio {
                push("cfl_ratio", fmt_num(r));
            }
            if !self.k_list.is_empty() {
                push("k_list", join_f(&self.k_list));
            }
        }
        if self.kind == ProblemKind::EvolutiveAd {
            if self.steps > 0 {
                push("steps", self.steps.to_string());
            }
            push("t_final", fmt_num(self.t_final));
            let init = match self.initial {
                InitialKind::Box { lo, hi } => format!("box [{}, {}]", fmt_num(lo), fmt_num(hi)),
                InitialKind::Sine => "sine".into(),
                InitialKind::AdvectedMode => "advected-mode".into(),
            };
            push("initial", init);
        }
        if !self.curves.is_empty() {
            push(
                "curves",
                self.curves.iter().map(Curve::label).collect::<Vec<_>>().join(", "),
            );
        }
        if !self.modes.is_empty() {
            push("modes", join_u(&self.modes));
        }
        if self.kind != ProblemKind::TauTable {
            push("source_slope", fmt_num(self.source.slope));
            push("source_intercept", fmt_num(self.source.intercept));
            push("u_left", fmt_num(self.u_left));
            push("u_right", fmt_num(self.u_right));
            push("reference", self.reference.as_str().into());
            match self.reference {
                ReferencePolicy::FineGalerkin => push("reference_factor", self.reference_factor.to_string()),
                ReferencePolicy::ConvergedSpectral => {
                    push("reference_modes", self.reference_modes.to_string())
                }
                ReferencePolicy::Exact if self.study == Study::HSweep => {
                    push("reference_factor", self.reference_factor.to_string())
                }
                _ => {}
            }
        }
        if !self.peclet_list.is_empty() {
            push("peclet_list", join_f(&self.peclet_list));
        }
        out
    }

    /// Provenance block for CSV headers.
    pub fn provenance(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# spectral-vms {}", env!("CARGO_PKG_VERSION"));
        for line in self.canonical_lines() {
            let _ = writeln!(s, "# {line}");
        }
        s
    }
}

fn check_sweep(field: &str, values: &[f64]) -> ConfigResult<()> {
    if values.len() < 3 {
        return Err(ConfigError::invalid(field, "needs at least 3 values"));
    }
    let inc = values.windows(2).all(|w| w[1] > w[0]);
    let dec = values.windows(2).all(|w| w[1] < w[0]);
    if !(inc || dec) {
        return Err(ConfigError::invalid(field, "values must be strictly monotone"));
    }
    Ok(())
}

/// Fixed 17-significant-digit scientific formatting.
pub fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}
