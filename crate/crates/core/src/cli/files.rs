//! Theory and lattice-sequence files.
//!
//! A theory file is JSON, or TOML when the path ends in `.toml`:
//!
//! ```json
//! {
//!   "preset": "SL2",
//!   "matter": [ { "weight": [1], "mult": 4 }, { "weight": [-1], "mult": 4 } ],
//!   "mode": "classical",
//!   "flavor_charges": [1, 1]
//! }
//! ```
//!
//! Instead of `preset`, a root datum may be given explicitly by `rank`,
//! `simple_roots` and `simple_coroots`. Presets are `torus(r)`, `SL2`,
//! `PGL2`, `GL(n)`, `SL(n)` and `A2`. `mode` is optional. `flavor_charges`
//! assigns one integer to each matter entry after merging equal weights and
//! is used by the refined Hilbert series.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::abelian_algebra::Mode;
use crate::error::{Error, Result};
use crate::hypertoric::LatticeSequence;
use crate::lattice::{Coweight, MatterContent, RootDatum, Theory, Weight};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatterSpec {
    pub weight: Vec<i64>,
    #[serde(default = "one")]
    pub mult: u32,
}

fn one() -> u32 {
    1
}

/// The on-disk description of a theory.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheoryFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simple_roots: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simple_coroots: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub matter: Vec<MatterSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flavor_charges: Option<Vec<i64>>,
}

/// A loaded theory with its optional settings.
#[derive(Clone, Debug)]
pub struct LoadedTheory {
    pub theory: Theory,
    pub mode: Option<Mode>,
    pub flavor_charges: Option<Vec<i64>>,
}

impl TheoryFile {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn from_toml(s: &str) -> Result<Self> {
        toml::from_str(s).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = read_text(path)?;
        if path.extension().is_some_and(|e| e == "toml") {
            Self::from_toml(&text)
        } else {
            Self::from_json(&text)
        }
    }

    /// Expands the preset and validates the theory.
    pub fn load(&self) -> Result<LoadedTheory> {
        let explicit = self.simple_roots.is_some() || self.simple_coroots.is_some();
        let rd = match (&self.preset, explicit) {
            (Some(_), true) => {
                return Err(Error::Schema(
                    "give either a preset or explicit roots, not both".into(),
                ));
            }
            (Some(p), false) => {
                let rd = RootDatum::preset(p)?;
                if self.rank.is_some_and(|r| r != rd.rank()) {
                    return Err(Error::Schema(format!("preset {p} has rank {}", rd.rank())));
                }
                rd
            }
            (None, _) => {
                let rank = self
                    .rank
                    .ok_or_else(|| Error::Schema("missing \"rank\" or \"preset\"".into()))?;
                let roots = self.simple_roots.clone().unwrap_or_default();
                let coroots = self.simple_coroots.clone().unwrap_or_default();
                RootDatum::new(
                    rank,
                    roots.into_iter().map(Weight).collect(),
                    coroots.into_iter().map(Coweight).collect(),
                    None,
                )?
            }
        };
        let matter = MatterContent::new(
            rd.rank(),
            self.matter
                .iter()
                .map(|m| (Weight(m.weight.clone()), m.mult)),
        )?;
        if let Some(c) = &self.flavor_charges {
            if c.len() != matter.len() {
                return Err(Error::Schema(format!(
                    "flavor_charges has {} entries for {} distinct weights",
                    c.len(),
                    matter.len()
                )));
            }
        }
        Ok(LoadedTheory {
            theory: Theory::new(rd, matter)?,
            mode: self.mode,
            flavor_charges: self.flavor_charges.clone(),
        })
    }
}

/// A lattice sequence file: `alpha` is required, `beta` is computed as a
/// kernel basis when omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceFile {
    pub alpha: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<Vec<i64>>>,
}

impl SequenceFile {
    pub fn read(path: &Path) -> Result<Self> {
        let text = read_text(path)?;
        if path.extension().is_some_and(|e| e == "toml") {
            toml::from_str(&text).map_err(|e| Error::Schema(e.to_string()))
        } else {
            serde_json::from_str(&text).map_err(|e| Error::Schema(e.to_string()))
        }
    }

    pub fn load(&self) -> Result<LatticeSequence> {
        match &self.beta {
            Some(b) => LatticeSequence::new(self.alpha.clone(), b.clone()),
            None => LatticeSequence::from_alpha(self.alpha.clone()),
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_json() {
        let f = TheoryFile::from_json(
            r#"{"preset": "SL2", "matter": [{"weight": [1], "mult": 4}, {"weight": [-1], "mult": 4}]}"#,
        )
        .unwrap();
        let t = f.load().unwrap().theory;
        assert_eq!(t.rd.rank(), 1);
        assert_eq!(t.matter.dimension(), 8);
    }

    #[test]
    fn explicit_toml() {
        let f = TheoryFile::from_toml(
            "rank = 1\nsimple_roots = [[1]]\nsimple_coroots = [[2]]\nmode = \"quantized\"\n\n[[matter]]\nweight = [1]\n\n[[matter]]\nweight = [-1]\n",
        )
        .unwrap();
        let l = f.load().unwrap();
        assert_eq!(l.mode, Some(Mode::Quantized));
        assert_eq!(l.theory.rd.simple_coroots()[0].0, vec![2]);
    }

    #[test]
    fn schema_errors() {
        assert!(TheoryFile::from_json(r#"{"preset": "SL2", "colour": 1}"#).is_err());
        let both = TheoryFile::from_json(
            r#"{"preset": "SL2", "rank": 1, "simple_roots": [[2]], "simple_coroots": [[1]]}"#,
        )
        .unwrap();
        assert_eq!(both.load().unwrap_err().exit_code(), 2);
        let missing = TheoryFile::from_json(r#"{"matter": []}"#).unwrap();
        assert!(missing.load().is_err());
        let charges = TheoryFile::from_json(
            r#"{"preset": "torus(1)", "matter": [{"weight": [1]}], "flavor_charges": [1, 2]}"#,
        )
        .unwrap();
        assert!(charges.load().is_err());
        let not_invariant =
            TheoryFile::from_json(r#"{"preset": "SL2", "matter": [{"weight": [1]}]}"#).unwrap();
        assert!(not_invariant.load().is_err());
    }
}
