//! Fixed-point data of resolutions, eigen-data of orbifolds, their JSON
//! form, and preset builders for the worked examples.

pub mod expr;
pub mod presets;
pub mod ratio;

use std::path::Path;

use serde::{Deserialize, Serialize};

pub use expr::{DeltaFactor, DeltaSum, DeltaTerm, LinearForm};
pub use ratio::Ratio;

use crate::error::{Error, Result};

/// A torus character `t^w = prod t_i^{w_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn new(components: &[i64]) -> Self {
        Weight(components.to_vec())
    }

    /// The `i`-th unit vector of length `rank`.
    pub fn unit(rank: usize, i: usize) -> Self {
        let mut w = vec![0; rank];
        w[i] = 1;
        Weight(w)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// `<w, t>` as a form over `[t_1, ..., t_r, z]`.
    fn form(&self, nvars: usize) -> LinearForm {
        let mut coeffs: Vec<i64> = self.0.clone();
        coeffs.resize(nvars, 0);
        LinearForm::ints(&coeffs)
    }
}

/// Tangent weights and divisor exponents at one isolated fixed point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointDatum {
    pub weights: Vec<Weight>,
    pub exponents: Vec<Ratio>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionModel {
    pub rank: usize,
    pub dim: usize,
    #[serde(rename = "prefactor_rational", default = "one")]
    pub prefactor: Ratio,
    pub fixed_points: Vec<FixedPointDatum>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// Joint eigen-data of one commuting pair `(g, h)`, with the number of pairs sharing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbifoldPairDatum {
    pub lambda: Vec<Ratio>,
    pub nu: Vec<Ratio>,
    pub weights: Vec<Weight>,
    pub exponents: Vec<Ratio>,
    pub multiplicity: u64,
    #[serde(rename = "h_shift_rational", default)]
    pub h_shift: Ratio,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbifoldModel {
    pub dim: usize,
    pub group_order: u64,
    pub pairs: Vec<OrbifoldPairDatum>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Model {
    Resolution(ResolutionModel),
    Orbifold(OrbifoldModel),
}

fn one() -> Ratio {
    Ratio::int(1)
}

fn check_klt(path: &str, exponents: &[Ratio]) -> Result<()> {
    for (k, a) in exponents.iter().enumerate() {
        if *a >= Ratio::int(1) {
            return Err(Error::model(
                format!("{path}.exponents[{k}]"),
                format!("klt violation: exponent {a} must be < 1"),
            ));
        }
    }
    Ok(())
}

fn check_weights(path: &str, weights: &[Weight], dim: usize, rank: usize) -> Result<()> {
    if weights.len() != dim {
        return Err(Error::model(
            format!("{path}.weights"),
            format!("expected {dim} weights, found {}", weights.len()),
        ));
    }
    for (k, w) in weights.iter().enumerate() {
        if w.rank() != rank {
            return Err(Error::model(
                format!("{path}.weights[{k}]"),
                format!("expected {rank} components, found {}", w.rank()),
            ));
        }
    }
    Ok(())
}

fn check_len(path: &str, field: &str, found: usize, dim: usize) -> Result<()> {
    if found != dim {
        return Err(Error::model(
            format!("{path}.{field}"),
            format!("expected {dim} entries, found {found}"),
        ));
    }
    Ok(())
}

impl ResolutionModel {
    pub fn validate(&self) -> Result<()> {
        if self.rank == 0 {
            return Err(Error::model("rank", "rank must be positive"));
        }
        if self.dim == 0 {
            return Err(Error::model("dim", "dim must be positive"));
        }
        if self.fixed_points.is_empty() {
            return Err(Error::model(
                "fixed_points",
                "at least one fixed point is required",
            ));
        }
        if let Some(labels) = &self.labels {
            check_len("$", "labels", labels.len(), self.fixed_points.len())?;
        }
        for (i, p) in self.fixed_points.iter().enumerate() {
            let path = format!("fixed_points[{i}]");
            check_weights(&path, &p.weights, self.dim, self.rank)?;
            check_len(&path, "exponents", p.exponents.len(), self.dim)?;
            check_klt(&path, &p.exponents)?;
        }
        Ok(())
    }

    /// Variables `[t_1, ..., t_rank, z]`.
    pub fn nvars(&self) -> usize {
        self.rank + 1
    }

    /// `prefactor * sum_p prod_k delta(<w_k, t>, -(1 - a_k) z)`.
    pub fn to_delta_sum(&self) -> DeltaSum {
        let nvars = self.nvars();
        let z = self.rank;
        let terms = self
            .fixed_points
            .iter()
            .map(|p| {
                let factors = p
                    .weights
                    .iter()
                    .zip(&p.exponents)
                    .map(|(w, a)| {
                        let b = LinearForm::zero(nvars).plus_var(z, a - &Ratio::int(1));
                        DeltaFactor::new(w.form(nvars), b)
                    })
                    .collect();
                DeltaTerm::new(nvars, factors).with_coeff(self.prefactor.clone())
            })
            .collect();
        DeltaSum::new(nvars, terms)
    }
}

impl OrbifoldPairDatum {
    fn validate(&self, path: &str, dim: usize, rank: usize, group_order: u64) -> Result<()> {
        check_len(path, "lambda", self.lambda.len(), dim)?;
        check_len(path, "nu", self.nu.len(), dim)?;
        check_len(path, "exponents", self.exponents.len(), dim)?;
        check_weights(path, &self.weights, dim, rank)?;
        check_klt(path, &self.exponents)?;
        if self.multiplicity == 0 {
            return Err(Error::model(
                format!("{path}.multiplicity"),
                "multiplicity must be >= 1",
            ));
        }
        for (field, values) in [("lambda", &self.lambda), ("nu", &self.nu)] {
            for (k, v) in values.iter().enumerate() {
                if !v.in_unit_interval() {
                    return Err(Error::model(
                        format!("{path}.{field}[{k}]"),
                        format!("{v} is outside [0, 1)"),
                    ));
                }
                if !rug::Integer::from(group_order).is_divisible(v.denom()) {
                    return Err(Error::model(
                        format!("{path}.{field}[{k}]"),
                        format!("denominator of {v} does not divide the group order {group_order}"),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Whether coordinates `k` and `dim/2 + k` carry inverse eigenvalues.
    fn is_paired(&self) -> bool {
        let m = self.lambda.len() / 2;
        (0..m).all(|k| {
            (&self.lambda[k] + &self.lambda[m + k]).is_integer()
                && (&self.nu[k] + &self.nu[m + k]).is_integer()
        })
    }
}

impl OrbifoldModel {
    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::model("dim", "dim must be positive"));
        }
        if self.group_order == 0 {
            return Err(Error::model("group_order", "group order must be positive"));
        }
        let first = self
            .pairs
            .first()
            .ok_or_else(|| Error::model("pairs", "at least one pair is required"))?;
        let rank = first.weights.first().map_or(0, Weight::rank);
        if rank == 0 {
            return Err(Error::model(
                "pairs[0].weights",
                "weights must have at least one component",
            ));
        }
        for (i, p) in self.pairs.iter().enumerate() {
            p.validate(&format!("pairs[{i}]"), self.dim, rank, self.group_order)?;
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.pairs
            .first()
            .and_then(|p| p.weights.first())
            .map_or(0, Weight::rank)
    }

    pub fn nvars(&self) -> usize {
        self.rank() + 1
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.pairs.iter().map(|p| p.multiplicity).sum()
    }

    /// Even dimension with eigenvalues of coordinates `k` and `dim/2 + k` mutually inverse.
    pub fn is_symplectic(&self) -> bool {
        self.dim % 2 == 0 && self.pairs.iter().all(OrbifoldPairDatum::is_paired)
    }

    /// `(1/|G|) sum mult * prod_k delta(lambda_k - nu_k tau + <w_k, t>, -(1 - a_k) z)
    ///  * h^{sum (a_k - 1) nu_k + h_shift}` with `h = e(-z)`.
    pub fn to_delta_sum(&self) -> DeltaSum {
        let nvars = self.nvars();
        let z = self.rank();
        let terms = self
            .pairs
            .iter()
            .map(|p| {
                let mut h_power = p.h_shift.clone();
                let factors = (0..self.dim)
                    .map(|k| {
                        let a = &p.exponents[k];
                        h_power = &h_power + &(&(a - &Ratio::int(1)) * &p.nu[k]);
                        let arg = p.weights[k]
                            .form(nvars)
                            .plus_constant(p.lambda[k].clone())
                            .plus_tau(-&p.nu[k]);
                        let b = LinearForm::zero(nvars).plus_var(z, a - &Ratio::int(1));
                        DeltaFactor::new(arg, b)
                    })
                    .collect();
                let phase = LinearForm::zero(nvars).plus_var(z, -h_power);
                let coeff = Ratio::new(p.multiplicity as i64, self.group_order as i64);
                DeltaTerm::new(nvars, factors)
                    .with_coeff(coeff)
                    .with_phase(phase)
            })
            .collect();
        DeltaSum::new(nvars, terms)
    }
}

impl Model {
    pub fn validate(&self) -> Result<()> {
        match self {
            Model::Resolution(m) => m.validate(),
            Model::Orbifold(m) => m.validate(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("models serialize")
    }
}

fn typed<T: serde::de::DeserializeOwned>(value: serde_json::Value) -> Result<T> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        let path = if path == "." { "$".to_string() } else { path };
        Error::model(path, e.into_inner().to_string())
    })
}

/// Parses and validates a model from JSON text.
pub fn parse_model(text: &str) -> Result<Model> {
    let mut value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::model("$", e.to_string()))?;
    let kind = value
        .as_object_mut()
        .ok_or_else(|| Error::model("$", "expected a JSON object"))?
        .remove("kind");
    let model = match kind.as_ref().and_then(|k| k.as_str()) {
        Some("resolution") => Model::Resolution(typed(value)?),
        Some("orbifold") => Model::Orbifold(typed(value)?),
        Some(other) => {
            return Err(Error::model(
                "kind",
                format!("unknown kind `{other}`, expected resolution or orbifold"),
            ))
        }
        None => return Err(Error::model("kind", "missing string field")),
    };
    model.validate()?;
    Ok(model)
}

/// Reads, parses and validates a model file.
pub fn load_model(path: impl AsRef<Path>) -> Result<Model> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_model(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIXTURE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/a2_resolution.json");

    #[test]
    fn shipped_fixture_is_the_a2_preset() {
        let loaded = load_model(FIXTURE).unwrap();
        assert_eq!(
            loaded,
            Model::Resolution(presets::a_n_resolution(2).unwrap())
        );
    }

    #[test]
    fn klt_violation_is_rejected() {
        let text = r#"{"kind":"resolution","rank":1,"dim":1,"prefactor_rational":"1/1",
            "fixed_points":[{"weights":[[1]],"exponents":["1/1"]}]}"#;
        let err = parse_model(text).unwrap_err();
        assert!(err.to_string().contains("klt violation"), "{err}");
        assert!(
            err.to_string().contains("fixed_points[0].exponents[0]"),
            "{err}"
        );
    }

    #[test]
    fn lambda_outside_unit_interval_is_rejected() {
        let text = r#"{"kind":"orbifold","dim":1,"group_order":4,"pairs":[{"lambda":["5/4"],"nu":["0/1"],
            "weights":[[1]],"exponents":["0/1"],"multiplicity":1,"h_shift_rational":"0/1"}]}"#;
        let err = parse_model(text).unwrap_err();
        assert!(err.to_string().contains("pairs[0].lambda[0]"), "{err}");
    }

    #[test]
    fn schema_errors_carry_the_field_path() {
        let text = r#"{"kind":"resolution","rank":1,"dim":1,
            "fixed_points":[{"weights":[[1]],"exponents":["x"]}]}"#;
        let err = parse_model(text).unwrap_err();
        assert!(
            err.to_string().contains("fixed_points[0].exponents[0]"),
            "{err}"
        );
        let err = parse_model(r#"{"kind":"blob"}"#).unwrap_err();
        assert!(matches!(err, Error::Model { .. }));
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let text = r#"{"kind":"resolution","rank":2,"dim":2,
            "fixed_points":[{"weights":[[1,0]],"exponents":["0","0"]}]}"#;
        let err = parse_model(text).unwrap_err();
        assert!(err.to_string().contains("fixed_points[0].weights"), "{err}");
    }

    #[test]
    fn missing_file_is_an_io_error() {
        assert!(matches!(
            load_model("/nonexistent/model.json"),
            Err(Error::Io(_))
        ));
    }
}
