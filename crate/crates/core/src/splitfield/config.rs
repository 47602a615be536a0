use serde::Deserialize;

use crate::algebra::{odd_primes_in, PolyModP};

use super::{residue_degree, SplitError};

/// The shipped field table.
pub const DEFAULT_FIELDS_TOML: &str = include_str!("../../data/fields.toml");

const VALIDATION_PMAX: u64 = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Presentation {
    Galois,
    Splitting,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NumberFieldSpec {
    pub name: String,
    /// Ascending integer coefficients, monic.
    pub poly: Vec<i64>,
    /// Degree of the field over Q.
    pub degree: usize,
    pub presentation: Presentation,
    pub disc_primes: Vec<u64>,
    #[serde(default)]
    pub cross_check: Option<String>,
    #[serde(default)]
    pub provenance: String,
}

impl NumberFieldSpec {
    pub fn poly_degree(&self) -> usize {
        self.poly.len().saturating_sub(1)
    }

    pub fn reduce(&self, p: u64) -> PolyModP {
        PolyModP::from_i64(p, &self.poly)
    }

    pub fn is_ramified_guard(&self, p: u64) -> bool {
        self.disc_primes.contains(&p)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    version: u32,
    field: Vec<NumberFieldSpec>,
}

/// A validated set of number fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldConfig {
    fields: Vec<NumberFieldSpec>,
}

impl FieldConfig {
    /// Parses and validates a field table:
    /// every polynomial is monic and squarefree mod every odd prime up to
    /// 1000 outside its `disc_primes`; a Galois presentation has degree
    /// equal to the field degree and equal-degree factors at those primes;
    /// a splitting presentation has residue degrees dividing the field
    /// degree; cross-checked entries agree.
    pub fn from_toml(text: &str) -> Result<Self, SplitError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| SplitError::Config(e.to_string()))?;
        if raw.version != 1 {
            return Err(SplitError::Config(format!("unsupported version {}", raw.version)));
        }
        let config = FieldConfig { fields: raw.field };
        config.validate()?;
        Ok(config)
    }

    pub fn default_fields() -> Self {
        Self::from_toml(DEFAULT_FIELDS_TOML).expect("shipped field table is valid")
    }

    pub fn fields(&self) -> &[NumberFieldSpec] {
        &self.fields
    }

    pub fn get(&self, name: &str) -> Result<&NumberFieldSpec, SplitError> {
        self.fields
            .iter()
            .find(|f| f.name == name)
            .ok_or_else(|| SplitError::Config(format!("no field named {name:?}")))
    }

    fn validate(&self) -> Result<(), SplitError> {
        let primes = odd_primes_in(3, VALIDATION_PMAX);
        for (i, f) in self.fields.iter().enumerate() {
            let bad = |msg: String| SplitError::Config(format!("{}: {msg}", f.name));
            if self.fields[..i].iter().any(|g| g.name == f.name) {
                return Err(bad("duplicate name".into()));
            }
            if f.poly.len() < 2 || f.poly.last() != Some(&1) {
                return Err(bad("polynomial must be monic of positive degree".into()));
            }
            match f.presentation {
                Presentation::Galois if f.poly_degree() != f.degree => {
                    return Err(bad(format!(
                        "galois presentation of degree {} for a field of degree {}",
                        f.poly_degree(),
                        f.degree
                    )))
                }
                _ => {}
            }
            for &p in primes.iter().filter(|&&p| !f.is_ramified_guard(p)) {
                if !f.reduce(p).is_squarefree() {
                    return Err(bad(format!("{p} divides the discriminant but is not listed")));
                }
                let r = residue_degree(f, p)?;
                if f.degree % r != 0 {
                    return Err(bad(format!("residue degree {r} at {p} does not divide {}", f.degree)));
                }
            }
            if let Some(other) = &f.cross_check {
                let g = self.get(other)?;
                for &p in primes.iter().filter(|&&p| !f.is_ramified_guard(p) && !g.is_ramified_guard(p)) {
                    if residue_degree(f, p)? != residue_degree(g, p)? {
                        return Err(bad(format!("residue degree at {p} differs from {other}")));
                    }
                }
            }
        }
        Ok(())
    }
}
