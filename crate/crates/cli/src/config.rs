//! Model configuration files: a single JSON object selecting a model
//! family and its parameters. Integers are accepted as JSON numbers or,
//! beyond 2^53, as decimal strings, and are re-emitted in that canonical
//! split so an echoed config re-parses to an equal value.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use dynzeta::models::{
    abelian_graded_action, constant_map_action, torus_graded_action, AbelianProductModel,
    GradedAction, GradedPiece, IntMatrix, TorusModel,
};
use dynzeta::{QMatrix, Rational};

/// Largest magnitude emitted as a bare JSON number; everything above is a
/// decimal string to stay lossless in double-based parsers.
const SAFE_INT: i64 = 9_007_199_254_740_992;

/// Arbitrary-precision integer with a canonical JSON form: a number while
/// |v| <= 2^53, a decimal string beyond.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigInt(pub BigInt);

impl Serialize for ConfigInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) if v.abs() <= SAFE_INT => s.serialize_i64(v),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for ConfigInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(ConfigInt(BigInt::from(v))),
            Raw::Str(s) => s
                .trim()
                .parse::<BigInt>()
                .map(ConfigInt)
                .map_err(|_| D::Error::custom(format!("not an integer: {s:?}"))),
        }
    }
}

/// One explicit graded piece for `custom_graded` models.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceConfig {
    pub degree: usize,
    pub weight: usize,
    pub f_action: Vec<Vec<ConfigInt>>,
    pub frob_action: Vec<Vec<ConfigInt>>,
}

/// Which graded-action family a config selects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Torus,
    AbelianProduct,
    Constant,
    CustomGraded,
}

impl std::fmt::Display for ModelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            ModelKind::Torus => "torus",
            ModelKind::AbelianProduct => "abelian_product",
            ModelKind::Constant => "constant",
            ModelKind::CustomGraded => "custom_graded",
        };
        f.write_str(name)
    }
}

/// Parsed model configuration; field requirements depend on `kind`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub kind: ModelKind,
    pub q: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<ConfigInt>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frob_trace: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pieces: Option<Vec<PieceConfig>>,
    #[serde(default = "default_iterate")]
    pub iterate: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proper: Option<bool>,
}

fn default_iterate() -> u32 {
    1
}

/// Anything that stops a config from becoming a graded action.
#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot parse config: {0}")]
    Json(#[from] serde_json::Error),
    #[error("field {0:?} is required for kind {1}")]
    MissingField(&'static str, ModelKind),
    #[error("field {0:?} does not apply to kind {1}")]
    ExtraField(&'static str, ModelKind),
    #[error("iterate must be >= 1")]
    BadIterate,
    #[error("matrix must be square and nonempty")]
    BadMatrix,
    #[error("model rejected: {0}")]
    Model(#[from] dynzeta::Error),
}

impl ModelConfig {
    pub fn from_path(path: &std::path::Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let cfg: ModelConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), ConfigError> {
        if self.iterate < 1 {
            return Err(ConfigError::BadIterate);
        }
        let need = |field: &'static str, present: bool| {
            if present {
                Ok(())
            } else {
                Err(ConfigError::MissingField(field, self.kind))
            }
        };
        let refuse = |field: &'static str, absent: bool| {
            if absent {
                Ok(())
            } else {
                Err(ConfigError::ExtraField(field, self.kind))
            }
        };
        match self.kind {
            ModelKind::Torus => {
                need("matrix", self.matrix.is_some())?;
                refuse("frob_trace", self.frob_trace.is_none())?;
                refuse("pieces", self.pieces.is_none())?;
                refuse("dim", self.dim.is_none())?;
                refuse("proper", self.proper.is_none())?;
            }
            ModelKind::AbelianProduct => {
                need("matrix", self.matrix.is_some())?;
                need("frob_trace", self.frob_trace.is_some())?;
                refuse("pieces", self.pieces.is_none())?;
                refuse("dim", self.dim.is_none())?;
                refuse("proper", self.proper.is_none())?;
            }
            ModelKind::Constant => {
                refuse("matrix", self.matrix.is_none())?;
                refuse("frob_trace", self.frob_trace.is_none())?;
                refuse("pieces", self.pieces.is_none())?;
                refuse("dim", self.dim.is_none())?;
                refuse("proper", self.proper.is_none())?;
            }
            ModelKind::CustomGraded => {
                need("pieces", self.pieces.is_some())?;
                need("dim", self.dim.is_some())?;
                need("proper", self.proper.is_some())?;
                refuse("matrix", self.matrix.is_none())?;
                refuse("frob_trace", self.frob_trace.is_none())?;
            }
        }
        if let Some(m) = &self.matrix {
            if m.is_empty() || m.iter().any(|r| r.len() != m.len()) {
                return Err(ConfigError::BadMatrix);
            }
        }
        Ok(())
    }

    fn int_matrix(&self) -> Result<IntMatrix, ConfigError> {
        let rows = self
            .matrix
            .as_ref()
            .expect("validated present")
            .iter()
            .map(|r| r.iter().map(|v| v.0.clone()).collect())
            .collect();
        Ok(IntMatrix::new(rows)?)
    }

    /// Builds the graded action, with the self-map already raised to the
    /// configured iterate power.
    pub fn graded_action(&self) -> Result<GradedAction, ConfigError> {
        let r = self.iterate;
        match self.kind {
            ModelKind::Torus => {
                let model = TorusModel::new(self.q, int_matrix_pow(&self.int_matrix()?, r))?;
                Ok(torus_graded_action(&model)?)
            }
            ModelKind::AbelianProduct => {
                let model = AbelianProductModel::new(
                    self.q,
                    self.frob_trace.expect("validated present"),
                    int_matrix_pow(&self.int_matrix()?, r),
                )?;
                Ok(abelian_graded_action(&model)?)
            }
            ModelKind::Constant => Ok(constant_map_action(self.q)?),
            ModelKind::CustomGraded => {
                let pieces = self
                    .pieces
                    .as_ref()
                    .expect("validated present")
                    .iter()
                    .map(|p| {
                        let f = to_qmatrix(&p.f_action).pow(r as u64)?;
                        Ok(GradedPiece::new(
                            p.degree,
                            p.weight,
                            f,
                            to_qmatrix(&p.frob_action),
                        ))
                    })
                    .collect::<Result<Vec<_>, dynzeta::Error>>()?;
                Ok(GradedAction::new(
                    pieces,
                    self.q,
                    self.dim.expect("validated present"),
                    self.proper.expect("validated present"),
                )?)
            }
        }
    }

    /// The model wrapped for fixed-point counting, when one exists.
    pub fn counted_model(&self) -> Result<Option<dynzeta::CountedModel>, ConfigError> {
        let r = self.iterate;
        Ok(match self.kind {
            ModelKind::Torus => Some(dynzeta::CountedModel::Torus(TorusModel::new(
                self.q,
                int_matrix_pow(&self.int_matrix()?, r),
            )?)),
            ModelKind::AbelianProduct => {
                Some(dynzeta::CountedModel::Abelian(AbelianProductModel::new(
                    self.q,
                    self.frob_trace.expect("validated present"),
                    int_matrix_pow(&self.int_matrix()?, r),
                )?))
            }
            ModelKind::Constant | ModelKind::CustomGraded => None,
        })
    }

    /// Copy with a different iterate, for the r-sweep.
    pub fn with_iterate(&self, r: u32) -> Self {
        let mut cfg = self.clone();
        cfg.iterate = r;
        cfg
    }

    /// Truncation order: the configured one, or the least that determines
    /// the rational function plus a couple of confirmation terms.
    pub fn resolve_terms(&self, action: &GradedAction) -> usize {
        self.terms.unwrap_or_else(|| {
            let (even, odd) = action.betti_totals();
            even + odd + 3
        })
    }
}

fn to_qmatrix(rows: &[Vec<ConfigInt>]) -> QMatrix {
    QMatrix::new(
        rows.iter()
            .map(|r| {
                r.iter()
                    .map(|v| Rational::from_integer(v.0.clone()))
                    .collect()
            })
            .collect(),
    )
    .expect("validated square")
}

fn int_matrix_pow(m: &IntMatrix, r: u32) -> IntMatrix {
    if r == 1 {
        return m.clone();
    }
    let q = m.to_qmatrix().pow(r as u64).expect("square by construction");
    let rows = (0..q.n_rows())
        .map(|i| {
            (0..q.n_cols())
                .map(|j| {
                    let v = q.at(i, j);
                    assert!(v.is_integer(), "integer matrix power stays integral");
                    v.numer().clone()
                })
                .collect()
        })
        .collect();
    IntMatrix::new(rows).expect("square by construction")
}
