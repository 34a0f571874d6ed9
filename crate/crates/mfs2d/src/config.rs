//! Experiment configuration: a sectioned key-value file (TOML syntax)
//! mapping onto the problem, shape, data, placement and discretization
//! choices. The full resolved config is embedded in every output file so
//! any result can be reproduced from the file alone.

use crate::bdata::BoundaryData;
use crate::error::{Error, Result};
use crate::geometry::{LaurentRational, Shape, Spacing};
use crate::solver::{Kernel, Placement};
use crate::geometry::AdaptiveParams;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A real number or an [re, im] pair.
#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum Cpx {
    Re(f64),
    Pair([f64; 2]),
}

impl Cpx {
    pub fn to_c64(self) -> Complex64 {
        match self {
            Cpx::Re(x) => Complex64::new(x, 0.0),
            Cpx::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub problem: ProblemCfg,
    pub shape: ShapeCfg,
    pub data: DataCfg,
    pub placement: PlacementCfg,
    pub discretization: DiscretizationCfg,
    #[serde(default)]
    pub outputs: OutputsCfg,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemCfg {
    pub k: f64,
    #[serde(default = "default_kernel")]
    pub kernel: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
}

fn default_kernel() -> String {
    "hankel1".into()
}

#[derive(Clone, Debug, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ShapeCfg {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a3: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a4: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a5: Option<Cpx>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a6: Option<Cpx>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a7: Option<Cpx>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub star_amplitude: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub star_frequency: Option<u32>,
    /// Laurent terms c e^{ins} for kind = "custom-laurent".
    #[serde(skip_serializing_if = "Option::is_none")]
    pub laurent: Option<Vec<LaurentTermCfg>>,
    /// Rational terms c / (e^{is} + a) for kind = "custom-laurent".
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rational: Option<Vec<RationalTermCfg>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LaurentTermCfg {
    pub n: i32,
    pub c: Cpx,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RationalTermCfg {
    pub c: Cpx,
    pub a: Cpx,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataCfg {
    /// "constant" | "fundamental" | "pole".
    pub data: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Cpx>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source_re: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source_im: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlacementCfg {
    /// "disc-circle" | "annular" | "adaptive".
    pub strategy: String,
    #[serde(rename = "R", skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spacing: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dmax: Option<f64>,
    /// "min" (default) or "literal-max" for the wavelength cap rule.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dmax_rule: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiscretizationCfg {
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(rename = "N_list", skip_serializing_if = "Option::is_none")]
    pub n_list: Option<Vec<usize>>,
    #[serde(rename = "M", skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(rename = "R_list", skip_serializing_if = "Option::is_none")]
    pub r_list: Option<Vec<f64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct OutputsCfg {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<String>,
    /// Grid spacing for field export; no field file when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field_grid: Option<f64>,
    /// Padding around the boundary bounding box for the field grid.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field_margin: Option<f64>,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.problem.k > 0.0) {
            return Err(Error::Config(format!("problem.k must be positive, got {}", self.problem.k)));
        }
        match self.problem.kernel.as_str() {
            "hankel1" => {}
            "y0-mixed" => {
                let eta = self.problem.eta.ok_or_else(|| {
                    Error::Config("problem.eta is required for kernel = \"y0-mixed\"".into())
                })?;
                if eta == 0.0 {
                    return Err(Error::Config("problem.eta must be nonzero".into()));
                }
            }
            other => {
                return Err(Error::Config(format!(
                    "problem.kernel must be \"hankel1\" or \"y0-mixed\", got \"{other}\""
                )))
            }
        }
        self.build_shape()?;
        self.build_data()?;
        self.build_placement()?;
        if self.discretization.n.is_none() && self.discretization.n_list.is_none() {
            return Err(Error::Config(
                "discretization needs N (single solve) or N_list (sweep)".into(),
            ));
        }
        if let Some(list) = &self.discretization.n_list {
            if list.is_empty() {
                return Err(Error::Config("discretization.N_list must not be empty".into()));
            }
        }
        if let Some(list) = &self.discretization.r_list {
            if list.is_empty() {
                return Err(Error::Config("discretization.R_list must not be empty".into()));
            }
            if self.discretization.n_list.is_some() {
                return Err(Error::Config(
                    "exactly one sweep variable: N_list and R_list are mutually exclusive".into(),
                ));
            }
            if self.discretization.n.is_none() {
                return Err(Error::Config("an R sweep needs a fixed discretization.N".into()));
            }
        }
        Ok(())
    }

    pub fn build_shape(&self) -> Result<Shape> {
        let s = &self.shape;
        match s.kind.as_str() {
            "disc" => Ok(Shape::disc()),
            "rounded-triangle" => Shape::rounded_triangle(s.a1.unwrap_or(0.3)),
            "inverted-ellipse" => Shape::inverted_ellipse(s.a2.unwrap_or(0.25)),
            "crescent" => Shape::crescent(s.a3.unwrap_or(0.1), s.a4.unwrap_or(0.9)),
            "generalized-crescent" => Shape::generalized_crescent(
                s.a5.map(Cpx::to_c64).unwrap_or(Complex64::new(0.9, 0.0)),
                s.a6.map(Cpx::to_c64).unwrap_or(Complex64::new(-0.8, -0.2)),
                s.a7.map(Cpx::to_c64).unwrap_or(Complex64::new(-0.2, 0.5)),
            ),
            "radial-star" => {
                Shape::radial_star(s.star_amplitude.unwrap_or(0.3), s.star_frequency.unwrap_or(5))
            }
            "custom-laurent" => {
                let laurent = s
                    .laurent
                    .as_ref()
                    .map(|v| v.iter().map(|t| (t.n, t.c.to_c64())).collect())
                    .unwrap_or_default();
                let rational = s
                    .rational
                    .as_ref()
                    .map(|v| v.iter().map(|t| (t.c.to_c64(), t.a.to_c64())).collect())
                    .unwrap_or_default();
                let form = LaurentRational { laurent, rational };
                if form.laurent.is_empty() && form.rational.is_empty() {
                    return Err(Error::Config(
                        "shape.laurent / shape.rational must define at least one term".into(),
                    ));
                }
                Shape::custom_laurent(form)
            }
            other => Err(Error::Config(format!("unknown shape.kind \"{other}\""))),
        }
    }

    pub fn build_data(&self) -> Result<BoundaryData> {
        let d = &self.data;
        match d.data.as_str() {
            "constant" => Ok(BoundaryData::Constant(
                d.value.map(Cpx::to_c64).unwrap_or(Complex64::new(1.0, 0.0)),
            )),
            "fundamental" => {
                let re = d.source_re.ok_or_else(|| {
                    Error::Config("data.source_re is required for fundamental data".into())
                })?;
                let im = d.source_im.unwrap_or(0.0);
                Ok(BoundaryData::Fundamental { source: Complex64::new(re, im) })
            }
            "pole" => {
                let re = d.source_re.ok_or_else(|| {
                    Error::Config("data.source_re is required for pole data".into())
                })?;
                let im = d.source_im.unwrap_or(0.0);
                Ok(BoundaryData::Pole {
                    order: d.order.unwrap_or(1),
                    location: Complex64::new(re, im),
                })
            }
            other => Err(Error::Config(format!(
                "data.data must be constant|fundamental|pole, got \"{other}\""
            ))),
        }
    }

    pub fn build_placement(&self) -> Result<Placement> {
        let p = &self.placement;
        match p.strategy.as_str() {
            "disc-circle" => {
                let r = p.r.ok_or_else(|| {
                    Error::Config("placement.R is required for disc-circle".into())
                })?;
                Ok(Placement::DiscCircle { r })
            }
            "annular" => {
                let r = p
                    .r
                    .ok_or_else(|| Error::Config("placement.R is required for annular".into()))?;
                let spacing = match p.spacing.as_deref().unwrap_or("conformal-angle") {
                    "conformal-angle" => Spacing::ConformalAngle,
                    "arclength" => Spacing::Arclength,
                    other => {
                        return Err(Error::Config(format!(
                            "placement.spacing must be conformal-angle|arclength, got \"{other}\""
                        )))
                    }
                };
                Ok(Placement::Annular { r, spacing })
            }
            "adaptive" => {
                let literal = match p.dmax_rule.as_deref().unwrap_or("min") {
                    "min" => false,
                    "literal-max" => true,
                    other => {
                        return Err(Error::Config(format!(
                            "placement.dmax_rule must be min|literal-max, got \"{other}\""
                        )))
                    }
                };
                Ok(Placement::Adaptive(AdaptiveParams {
                    beta: p.beta.unwrap_or(0.7),
                    gamma: p.gamma.unwrap_or(0.4),
                    dmax_override: p.dmax,
                    literal_dmax_max: literal,
                }))
            }
            other => Err(Error::Config(format!(
                "placement.strategy must be disc-circle|annular|adaptive, got \"{other}\""
            ))),
        }
    }

    pub fn build_kernel(&self) -> Result<Kernel> {
        match self.problem.kernel.as_str() {
            "hankel1" => Ok(Kernel::Hankel1),
            "y0-mixed" => Ok(Kernel::Y0Mixed { eta: self.problem.eta.unwrap_or(1.0) }),
            other => Err(Error::Config(format!("unknown kernel \"{other}\""))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOOD: &str = r#"
[problem]
k = 8.0

[shape]
kind = "disc"

[data]
data = "fundamental"
source_re = 1.2

[placement]
strategy = "disc-circle"
R = 1.5

[discretization]
N = 40
M = 240
"#;

    #[test]
    fn parses_and_round_trips() {
        let cfg = ExperimentConfig::from_toml(GOOD).unwrap();
        assert_eq!(cfg.problem.k, 8.0);
        let text = cfg.to_toml();
        let again = ExperimentConfig::from_toml(&text).unwrap();
        assert_eq!(again.problem.k, cfg.problem.k);
        assert_eq!(again.placement.r, cfg.placement.r);
        assert!(matches!(cfg.build_data().unwrap(), BoundaryData::Fundamental { .. }));
        assert!(matches!(cfg.build_kernel().unwrap(), Kernel::Hankel1));
    }

    #[test]
    fn bad_shape_kind_names_the_key() {
        let text = GOOD.replace("kind = \"disc\"", "kind = \"triangle\"");
        let err = ExperimentConfig::from_toml(&text).unwrap_err();
        assert!(err.to_string().contains("shape.kind"), "{err}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn sweep_variables_are_exclusive() {
        let text = GOOD.replace("N = 40", "N = 40\nN_list = [10, 20]\nR_list = [1.1, 1.2]");
        let err = ExperimentConfig::from_toml(&text).unwrap_err();
        assert!(err.to_string().contains("exactly one sweep variable"), "{err}");
    }

    #[test]
    fn empty_n_list_is_rejected() {
        let text = GOOD.replace("N = 40", "N_list = []");
        assert!(ExperimentConfig::from_toml(&text).is_err());
    }

    #[test]
    fn mixed_kernel_requires_eta() {
        let text = GOOD.replace("k = 8.0", "k = 8.0\nkernel = \"y0-mixed\"");
        let err = ExperimentConfig::from_toml(&text).unwrap_err();
        assert!(err.to_string().contains("eta"), "{err}");
        let ok = GOOD.replace("k = 8.0", "k = 8.0\nkernel = \"y0-mixed\"\neta = 1.0");
        assert!(ExperimentConfig::from_toml(&ok).is_ok());
    }

    #[test]
    fn custom_laurent_shape_grammar() {
        let text = r#"
[problem]
k = 3.0

[shape]
kind = "custom-laurent"
laurent = [{ n = 1, c = 1.0 }, { n = -2, c = [0.3, 0.0] }]
rational = [{ c = [-0.1, 0.0], a = [0.9, 0.0] }]

[data]
data = "constant"

[placement]
strategy = "adaptive"

[discretization]
N = 60
"#;
        let cfg = ExperimentConfig::from_toml(text).unwrap();
        let shape = cfg.build_shape().unwrap();
        // matches rounded triangle + crescent term by construction
        let z = shape.boundary_point(Complex64::new(0.0, 0.0)).unwrap();
        let want = 1.0 + 0.3 - 0.1 / 1.9;
        assert!((z - Complex64::new(want, 0.0)).norm() < 1e-14);
    }
}
