//! Problem files: what the user asks for, before any polynomial is parsed.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::CliError;

/// Weights, phi degrees and f degrees.
pub type WeightData = (Vec<u64>, Vec<u64>, [u64; 2]);

pub const DEFAULT_T_SAMPLES: [&str; 4] = ["0", "1", "2", "-1"];

/// An integer that reads from a JSON number or a decimal string and always
/// writes as a string, so large values survive generic JSON readers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(n) => Ok(Int(n.into())),
            Raw::Text(t) => BigInt::from_str(t.trim()).map(Int).map_err(|_| serde::de::Error::custom(format!("`{t}` is not an integer"))),
        }
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Int {
    pub fn to_u64(&self, what: &str) -> Result<u64, CliError> {
        u64::try_from(&self.0).map_err(|_| CliError::input(format!("{what} must be a non-negative 64-bit integer, got {}", self.0)))
    }
}

/// The map `f`: two components, or the marker `"generic"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MapSpec {
    Components([String; 2]),
    Marker(String),
}

impl MapSpec {
    pub fn is_generic(&self) -> bool {
        matches!(self, MapSpec::Marker(m) if m == "generic")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default)]
    pub variables: Vec<String>,
    #[serde(default)]
    pub phi: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<MapSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_samples: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<Int>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi_degrees: Option<Vec<Int>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_degrees: Option<Vec<Int>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<Int>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<Int>,
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let p: ProblemFile = serde_json::from_str(text).map_err(|e| CliError::input(format!("malformed problem file: {e}")))?;
        if let Some(MapSpec::Marker(m)) = &p.f {
            if m != "generic" {
                return Err(CliError::input(format!("f must be two polynomials or \"generic\", got \"{m}\"")));
            }
        }
        Ok(p)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
        ProblemFile::from_json(&text)
    }

    pub fn vars(&self) -> Vec<&str> {
        self.variables.iter().map(String::as_str).collect()
    }

    pub fn phi_strs(&self) -> Vec<&str> {
        self.phi.iter().map(String::as_str).collect()
    }

    /// Explicit components; `None` for the generic marker.
    pub fn components(&self) -> Result<Option<[&str; 2]>, CliError> {
        match &self.f {
            None => Err(CliError::input("the problem declares no map f")),
            Some(MapSpec::Components([a, b])) => Ok(Some([a, b])),
            Some(MapSpec::Marker(_)) => Ok(None),
        }
    }

    /// `(weights, phi degrees, f degrees)` when all three are present.
    pub fn weight_data(&self) -> Result<Option<WeightData>, CliError> {
        let (Some(w), Some(pd), Some(fd)) = (&self.weights, &self.phi_degrees, &self.f_degrees) else {
            if self.weights.is_some() || self.phi_degrees.is_some() || self.f_degrees.is_some() {
                return Err(CliError::input("weights, phi_degrees and f_degrees must be given together"));
            }
            return Ok(None);
        };
        let list = |v: &[Int], what: &str| v.iter().map(|x| x.to_u64(what)).collect::<Result<Vec<u64>, _>>();
        let fd = list(fd, "f degree")?;
        let fd: [u64; 2] = fd.try_into().map_err(|v: Vec<u64>| CliError::input(format!("f_degrees needs 2 entries, got {}", v.len())))?;
        Ok(Some((list(w, "weight")?, list(pd, "phi degree")?, fd)))
    }

    /// The samples from `--t`, else from the file, else the defaults.
    pub fn samples(&self, flag: Option<&[String]>) -> Result<Vec<BigRational>, CliError> {
        let texts: Vec<String> = match (flag, &self.t_samples) {
            (Some(f), _) => f.to_vec(),
            (None, Some(t)) => t.clone(),
            (None, None) => DEFAULT_T_SAMPLES.iter().map(|s| s.to_string()).collect(),
        };
        texts.iter().map(|t| parse_rational(t)).collect()
    }
}

pub fn parse_rational(text: &str) -> Result<BigRational, CliError> {
    let t = text.trim();
    let r = BigRational::from_str(t).map_err(|_| CliError::input(format!("`{text}` is not a rational number")))?;
    Ok(r)
}
