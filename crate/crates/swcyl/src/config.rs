//! Flat `section.key = value` run configuration.
//!
//! Blank lines and `#` comments are ignored. Lists are comma separated.
//! Every key has a default, and [`RunConfig::resolved`] echoes the full set.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::circle::ModeBand;
use crate::error::{Result, SwError};
use crate::euclid2::CylinderPoint;
use crate::flat_moyal::PhaseGrid;
use crate::io::{read_kernel_samples, KernelSpec};
use crate::quadrature::JWeighting;
use crate::swkernel::{required_band, AngleSeries, CylinderGrid, SymbolFunction, MAX_J_STEP};
use crate::verify::{PropertyReport, SuiteSettings, TracialitySettings, MAX_TRANSLATION, SAMPLE_J};

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub kernel: KernelSpec,
    /// Operator band for verification suites.
    pub band: usize,
    /// Lower bound on circle nodes for `L_p(j)` quadrature.
    pub circle_nodes: usize,
    pub grid: CylinderGrid,
    pub radius: f64,
    /// `c` in `dμ = c dα dj`; `None` takes the kernel default.
    pub measure: Option<f64>,
    /// Per-report tolerance overrides keyed by report name.
    pub tolerances: BTreeMap<String, f64>,
    pub covariance_cases: usize,
    pub hermiticity_cases: usize,
    pub traciality: TracialitySettings,
    pub recurrence_band: usize,
    pub injectivity_band: usize,
    /// Operator band used by the quantizer in `star`.
    pub star_band: usize,
    pub flat: PhaseGrid,
    pub ltable_n_max: usize,
    pub ltable_j: Vec<f64>,
    pub overlap_u: CylinderPoint,
    pub overlap_v: CylinderPoint,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let suite = SuiteSettings::default();
        Self {
            kernel: KernelSpec::Builtin { name: "sqrt-cos".into() },
            band: suite.band.n(),
            circle_nodes: 4096,
            grid: CylinderGrid { k: 64, j_max: 40.0, dj: 0.05, weighting: JWeighting::Extrapolated },
            radius: suite.radius,
            measure: None,
            tolerances: BTreeMap::new(),
            covariance_cases: suite.covariance_cases,
            hermiticity_cases: suite.hermiticity_cases,
            traciality: suite.traciality,
            recurrence_band: suite.recurrence_band.n(),
            injectivity_band: suite.injectivity_band.n(),
            star_band: 8,
            flat: PhaseGrid::default(),
            ltable_n_max: 16,
            ltable_j: (0..=20).map(|i| -5.0 + 0.5 * i as f64).collect(),
            overlap_u: CylinderPoint::new(0.0, 0.5),
            overlap_v: CylinderPoint::new(0.0, -0.5),
            seed: 0,
        }
    }
}

struct Entry {
    value: String,
    line: usize,
}

struct Entries {
    map: BTreeMap<String, Entry>,
}

impl Entries {
    fn take(&mut self, key: &str) -> Option<Entry> {
        self.map.remove(key)
    }

    fn parse<T: FromStr>(&mut self, key: &str, target: &mut T) -> Result<()>
    where
        T::Err: std::fmt::Display,
    {
        if let Some(e) = self.take(key) {
            *target = e.value.parse().map_err(|err: T::Err| SwError::Config { line: e.line, msg: format!("{key}: {err}") })?;
        }
        Ok(())
    }

    fn list(&mut self, key: &str) -> Result<Option<(Vec<f64>, usize)>> {
        match self.take(key) {
            None => Ok(None),
            Some(e) => {
                let vals = e
                    .value
                    .split(',')
                    .map(|s| s.trim())
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<f64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|err| SwError::Config { line: e.line, msg: format!("{key}: {err}") })?;
                Ok(Some((vals, e.line)))
            }
        }
    }

    fn point(&mut self, key: &str, target: &mut CylinderPoint) -> Result<()> {
        if let Some((v, line)) = self.list(key)? {
            if v.len() != 2 {
                return Err(SwError::Config { line, msg: format!("{key}: expected 'alpha, j'") });
            }
            *target = CylinderPoint::new(v[0], v[1]);
        }
        Ok(())
    }
}

fn lex(text: &str) -> Result<Entries> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let Some((k, v)) = body.split_once('=') else {
            return Err(SwError::Config { line, msg: format!("expected 'key = value', got '{body}'") });
        };
        let key = k.trim().to_string();
        if key.is_empty() || !key.contains('.') {
            return Err(SwError::Config { line, msg: format!("key '{key}' must be 'section.name'") });
        }
        if let Some(prev) = map.insert(key.clone(), Entry { value: v.trim().to_string(), line }) {
            return Err(SwError::Config { line, msg: format!("'{key}' already set on line {}", prev.line) });
        }
    }
    Ok(Entries { map })
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text, path.parent())
    }

    /// Parse config text; `base` resolves relative sample paths.
    pub fn parse(text: &str, base: Option<&Path>) -> Result<Self> {
        let mut e = lex(text)?;
        let mut c = Self { kernel: kernel_spec(&mut e, base)?, ..Self::default() };
        e.parse("band.N", &mut c.band)?;
        e.parse("circle.M", &mut c.circle_nodes)?;
        e.parse("grid.K", &mut c.grid.k)?;
        e.parse("grid.J_max", &mut c.grid.j_max)?;
        e.parse("grid.dj", &mut c.grid.dj)?;
        e.parse("grid.weighting", &mut c.grid.weighting)?;
        e.parse("orbit.r", &mut c.radius)?;
        if let Some(m) = e.take("measure.c") {
            if m.value != "auto" {
                c.measure = Some(m.value.parse().map_err(|err| SwError::Config { line: m.line, msg: format!("measure.c: {err}") })?);
            }
        }
        e.parse("suite.covariance_cases", &mut c.covariance_cases)?;
        e.parse("suite.hermiticity_cases", &mut c.hermiticity_cases)?;
        e.parse("traciality.J_max", &mut c.traciality.j_max)?;
        e.parse("traciality.dj", &mut c.traciality.dj)?;
        e.parse("traciality.weighting", &mut c.traciality.weighting)?;
        e.parse("traciality.p_max", &mut c.traciality.p_max)?;
        e.parse("recurrence.N", &mut c.recurrence_band)?;
        e.parse("injectivity.N", &mut c.injectivity_band)?;
        e.parse("star.N", &mut c.star_band)?;
        e.parse("flat.Q", &mut c.flat.extent)?;
        e.parse("flat.G", &mut c.flat.points)?;
        e.parse("ltable.n_max", &mut c.ltable_n_max)?;
        if let Some((v, _)) = e.list("ltable.j")? {
            c.ltable_j = v;
        }
        e.point("overlap.u", &mut c.overlap_u)?;
        e.point("overlap.v", &mut c.overlap_v)?;
        e.parse("run.seed", &mut c.seed)?;
        let tol_keys: Vec<String> = e.map.keys().filter(|k| k.starts_with("tolerance.")).cloned().collect();
        for k in tol_keys {
            let mut v = 0.0;
            e.parse(&k, &mut v)?;
            c.tolerances.insert(k["tolerance.".len()..].to_string(), v);
        }
        if let Some((key, entry)) = e.map.iter().next() {
            return Err(SwError::Config { line: entry.line, msg: format!("unknown key '{key}'") });
        }
        c.traciality.measure = c.measure;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(SwError::Config { line: 0, msg });
        if self.band == 0 || self.recurrence_band == 0 || self.injectivity_band == 0 || self.star_band == 0 {
            return bad("band sizes must be positive".into());
        }
        if !(self.grid.j_max > 0.0) || !(self.grid.dj > 0.0) || self.grid.dj > MAX_J_STEP || self.grid.k == 0 {
            return bad(format!("grid needs K > 0, J_max > 0 and 0 < dj <= {MAX_J_STEP}"));
        }
        if !(self.traciality.j_max > 0.0) || !(self.traciality.dj > 0.0) {
            return bad("traciality grid must be positive".into());
        }
        if !(self.radius > 0.0) {
            return bad(format!("orbit.r must be positive, got {}", self.radius));
        }
        if let Some(m) = self.measure {
            if !(m > 0.0) {
                return bad(format!("measure.c must be positive, got {m}"));
            }
        }
        if !(self.flat.extent > 0.0) || self.flat.points < 16 {
            return bad("flat grid needs Q > 0 and G >= 16".into());
        }
        // suite points reach |j| ≤ SAMPLE_J + |a|·r
        let needed = required_band(SAMPLE_J + MAX_TRANSLATION * self.radius);
        if self.band < needed {
            return bad(format!("band.N = {} too small for sampled |j| at r = {} (need {needed})", self.band, self.radius));
        }
        let inj = required_band(SAMPLE_J);
        if self.injectivity_band < inj {
            return bad(format!("injectivity.N = {} too small (need {inj})", self.injectivity_band));
        }
        Ok(())
    }

    pub fn symbol(&self) -> Result<SymbolFunction> {
        self.kernel.build()
    }

    pub fn suite_settings(&self) -> SuiteSettings {
        SuiteSettings {
            band: ModeBand::new(self.band).expect("validated"),
            radius: self.radius,
            covariance_cases: self.covariance_cases,
            hermiticity_cases: self.hermiticity_cases,
            traciality: self.traciality,
            recurrence_band: ModeBand::new(self.recurrence_band).expect("validated"),
            injectivity_band: ModeBand::new(self.injectivity_band).expect("validated"),
            seed: self.seed,
        }
    }

    /// Apply `tolerance.<name>` overrides to matching reports.
    pub fn apply_tolerances(&self, reports: &mut [PropertyReport]) {
        for r in reports {
            if let Some(&t) = self.tolerances.get(&r.name) {
                r.retolerate(t);
            }
        }
    }

    /// Every key with its effective value.
    pub fn resolved(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        let list = |v: &[f64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match &self.kernel {
            KernelSpec::Builtin { name } => {
                m.insert("kernel.builtin".into(), name.clone());
            }
            KernelSpec::Params { name, h, phi } => {
                m.insert("kernel.name".into(), name.clone());
                for (tag, s) in [("h", h), ("phi", phi)] {
                    m.insert(format!("kernel.{tag}.cos"), list(&s.cos));
                    m.insert(format!("kernel.{tag}.sin"), list(&s.sin));
                    m.insert(format!("kernel.{tag}.sign_cos"), s.sign_cos.to_string());
                }
            }
            KernelSpec::Samples { name, values } => {
                m.insert("kernel.name".into(), name.clone());
                m.insert("kernel.samples".into(), format!("<{} values>", values.len()));
            }
        }
        m.insert("band.N".into(), self.band.to_string());
        m.insert("circle.M".into(), self.circle_nodes.to_string());
        m.insert("grid.K".into(), self.grid.k.to_string());
        m.insert("grid.J_max".into(), self.grid.j_max.to_string());
        m.insert("grid.dj".into(), self.grid.dj.to_string());
        m.insert("grid.weighting".into(), self.grid.weighting.to_string());
        m.insert("orbit.r".into(), self.radius.to_string());
        m.insert("measure.c".into(), self.measure.map_or("auto".into(), |c| c.to_string()));
        m.insert("suite.covariance_cases".into(), self.covariance_cases.to_string());
        m.insert("suite.hermiticity_cases".into(), self.hermiticity_cases.to_string());
        m.insert("traciality.J_max".into(), self.traciality.j_max.to_string());
        m.insert("traciality.dj".into(), self.traciality.dj.to_string());
        m.insert("traciality.weighting".into(), self.traciality.weighting.to_string());
        m.insert("traciality.p_max".into(), self.traciality.p_max.to_string());
        m.insert("recurrence.N".into(), self.recurrence_band.to_string());
        m.insert("injectivity.N".into(), self.injectivity_band.to_string());
        m.insert("star.N".into(), self.star_band.to_string());
        m.insert("flat.Q".into(), self.flat.extent.to_string());
        m.insert("flat.G".into(), self.flat.points.to_string());
        m.insert("ltable.n_max".into(), self.ltable_n_max.to_string());
        m.insert("ltable.j".into(), list(&self.ltable_j));
        m.insert("overlap.u".into(), format!("{},{}", self.overlap_u.alpha, self.overlap_u.j));
        m.insert("overlap.v".into(), format!("{},{}", self.overlap_v.alpha, self.overlap_v.j));
        m.insert("run.seed".into(), self.seed.to_string());
        for (k, v) in &self.tolerances {
            m.insert(format!("tolerance.{k}"), v.to_string());
        }
        m
    }
}

fn kernel_spec(e: &mut Entries, base: Option<&Path>) -> Result<KernelSpec> {
    let builtin = e.take("kernel.builtin");
    let name = e.take("kernel.name");
    let samples = e.take("kernel.samples");
    let mut series = |tag: &str| -> Result<Option<AngleSeries>> {
        let cos = e.list(&format!("kernel.{tag}.cos"))?;
        let sin = e.list(&format!("kernel.{tag}.sin"))?;
        let step = e.take(&format!("kernel.{tag}.sign_cos"));
        if cos.is_none() && sin.is_none() && step.is_none() {
            return Ok(None);
        }
        let sign_cos = match step {
            Some(s) => s.value.parse().map_err(|err| SwError::Config { line: s.line, msg: format!("kernel.{tag}.sign_cos: {err}") })?,
            None => 0.0,
        };
        Ok(Some(AngleSeries {
            cos: cos.map(|c| c.0).unwrap_or_default(),
            sin: sin.map(|s| s.0).unwrap_or_default(),
            sign_cos,
        }))
    };
    let h = series("h")?;
    let phi = series("phi")?;
    let has_params = h.is_some() || phi.is_some();
    let chosen = [builtin.is_some(), has_params, samples.is_some()].iter().filter(|b| **b).count();
    if chosen > 1 {
        let line = builtin.as_ref().or(samples.as_ref()).map_or(0, |x| x.line);
        return Err(SwError::Config { line, msg: "choose one of kernel.builtin, kernel.h/phi, kernel.samples".into() });
    }
    if let Some(b) = builtin {
        let spec = KernelSpec::Builtin { name: b.value.clone() };
        spec.build().map_err(|err| SwError::Config { line: b.line, msg: err.to_string() })?;
        return Ok(spec);
    }
    let label = name.map(|n| n.value);
    if let Some(s) = samples {
        let path = match base {
            Some(dir) if Path::new(&s.value).is_relative() => dir.join(&s.value),
            _ => PathBuf::from(&s.value),
        };
        let values = read_kernel_samples(&path).map_err(|err| SwError::Config { line: s.line, msg: format!("kernel.samples: {err}") })?;
        return Ok(KernelSpec::Samples { name: label.unwrap_or_else(|| "sampled".into()), values });
    }
    if has_params {
        return Ok(KernelSpec::Params {
            name: label.unwrap_or_else(|| "custom".into()),
            h: h.unwrap_or_default(),
            phi: phi.unwrap_or_default(),
        });
    }
    Ok(RunConfig::default().kernel)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sections_and_defaults() {
        let c = RunConfig::parse("# demo\nkernel.builtin = parity\nband.N=40\ngrid.weighting = tapered\noverlap.u = 0.1, 2\ntolerance.traciality.parity = 1.0\n", None)
            .unwrap();
        assert_eq!(c.kernel, KernelSpec::Builtin { name: "parity".into() });
        assert_eq!(c.band, 40);
        assert_eq!(c.grid.weighting, JWeighting::Tapered);
        assert_eq!(c.overlap_u, CylinderPoint::new(0.1, 2.0));
        assert_eq!(c.tolerances["traciality.parity"], 1.0);
        assert_eq!(c.resolved()["band.N"], "40");
        assert_eq!(c.resolved()["measure.c"], "auto");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let line_of = |text: &str| match RunConfig::parse(text, None) {
            Err(SwError::Config { line, .. }) => line,
            other => panic!("{other:?}"),
        };
        assert_eq!(line_of("band.N = 64\ngrid.K = many\n"), 2);
        assert_eq!(line_of("\n\nnot a pair\n"), 3);
        assert_eq!(line_of("band.N = 64\nband.N = 32\n"), 2);
        assert_eq!(line_of("bogus.key = 1\n"), 1);
        assert_eq!(line_of("kernel.builtin = nope\n"), 1);
        assert!(matches!(RunConfig::parse("band.N = 8\n", None), Err(SwError::Config { .. })));
    }

    #[test]
    fn parametrized_kernels() {
        let c = RunConfig::parse("kernel.name = mine\nkernel.h.cos = 0, 0.2\nkernel.phi.sin = 0, 0.1\n", None).unwrap();
        let s = c.symbol().unwrap();
        assert_eq!(s.name(), "mine");
        assert!(RunConfig::parse("kernel.builtin = parity\nkernel.h.cos = 0, 0.2\n", None).is_err());
    }
}
