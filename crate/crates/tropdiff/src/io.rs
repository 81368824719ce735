//! Instance and solution file formats: strict UTF-8 JSON, rejected on any
//! unknown field so fixtures stay unambiguous.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::inversions::{Perm, PermFamily};
use crate::solution::{ShiftRay, SolutionSet};
use crate::support::{MultiSupport, Support};
use crate::tlde::{Tlde, TldeSystem};

/// Coefficients are capped well below the integer range so that every
/// downstream sum stays overflow-free.
pub const MAX_COEFF_ABS: i64 = 1 << 40;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Shape(String),
}

/// On-disk form of a TLDE system. `equations[l][j][i]` is the coefficient
/// a_{i,j,l} of u_j^(i) in equation l.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub unknowns: usize,
    pub orders: Vec<i64>,
    pub equations: Vec<Vec<Vec<i64>>>,
}

impl InstanceFile {
    pub fn from_system(sigma: &TldeSystem) -> Self {
        InstanceFile {
            unknowns: sigma.n(),
            orders: sigma.orders(),
            equations: sigma
                .eqs()
                .iter()
                .map(|eq| eq.coeffs().to_vec())
                .collect(),
        }
    }

    pub fn parse(text: &str) -> Result<TldeSystem, ParseError> {
        let file: InstanceFile = serde_json::from_str(text)?;
        file.to_system()
    }

    pub fn to_system(&self) -> Result<TldeSystem, ParseError> {
        if self.unknowns == 0 {
            return Err(ParseError::Shape("field 'unknowns' must be ≥ 1".into()));
        }
        if self.orders.len() != self.unknowns {
            return Err(ParseError::Shape(format!(
                "field 'orders' has {} entries, expected {}",
                self.orders.len(),
                self.unknowns
            )));
        }
        if let Some(j) = self.orders.iter().position(|&k| k < 1) {
            return Err(ParseError::Shape(format!(
                "orders[{j}] must be ≥ 1, got {}",
                self.orders[j]
            )));
        }
        if self.equations.is_empty() {
            return Err(ParseError::Shape("field 'equations' is empty".into()));
        }
        let mut eqs = Vec::with_capacity(self.equations.len());
        for (l, eq) in self.equations.iter().enumerate() {
            if eq.len() != self.unknowns {
                return Err(ParseError::Shape(format!(
                    "equations[{l}] has {} coefficient blocks, expected {}",
                    eq.len(),
                    self.unknowns
                )));
            }
            for (j, block) in eq.iter().enumerate() {
                let expect = (self.orders[j] + 1) as usize;
                if block.len() != expect {
                    return Err(ParseError::Shape(format!(
                        "equations[{l}][{j}] has {} coefficients, expected {expect} (order {})",
                        block.len(),
                        self.orders[j]
                    )));
                }
                if let Some(i) = block.iter().position(|a| a.abs() > MAX_COEFF_ABS) {
                    return Err(ParseError::Shape(format!(
                        "equations[{l}][{j}][{i}] exceeds the coefficient magnitude cap"
                    )));
                }
            }
            eqs.push(
                Tlde::new(eq.clone())
                    .map_err(|e| ParseError::Shape(format!("equations[{l}]: {e}")))?,
            );
        }
        TldeSystem::new(eqs).map_err(|e| ParseError::Shape(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serialization cannot fail")
    }
}

/// On-disk form of a permutation family: 0-based image vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PermFamilyFile {
    pub r: usize,
    pub perms: Vec<Vec<usize>>,
}

impl PermFamilyFile {
    pub fn parse(text: &str) -> Result<PermFamily, ParseError> {
        let file: PermFamilyFile = serde_json::from_str(text)?;
        let mut perms = Vec::with_capacity(file.perms.len());
        for (idx, images) in file.perms.iter().enumerate() {
            if images.len() != file.r {
                return Err(ParseError::Shape(format!(
                    "perms[{idx}] has {} images, expected r = {}",
                    images.len(),
                    file.r
                )));
            }
            perms.push(
                Perm::new(images.clone())
                    .map_err(|e| ParseError::Shape(format!("perms[{idx}]: {e}")))?,
            );
        }
        PermFamily::new(perms).map_err(|e| ParseError::Shape(e.to_string()))
    }
}

/// Machine-readable solution set: parts as sorted exponent arrays.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionSetFile {
    pub finite: Vec<Vec<Vec<i64>>>,
    pub rays: Vec<RayFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RayFile {
    pub base: Vec<Vec<i64>>,
}

fn multi_to_rows(s: &MultiSupport) -> Vec<Vec<i64>> {
    s.parts().iter().map(|p| p.elems().to_vec()).collect()
}

fn rows_to_multi(rows: &[Vec<i64>]) -> Result<MultiSupport, ParseError> {
    if rows.is_empty() {
        return Err(ParseError::Shape("a support needs at least one part".into()));
    }
    for (j, row) in rows.iter().enumerate() {
        if row.iter().any(|&e| e < 0) {
            return Err(ParseError::Shape(format!(
                "part {j} contains a negative exponent"
            )));
        }
        if row.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ParseError::Shape(format!(
                "part {j} is not strictly increasing"
            )));
        }
    }
    Ok(MultiSupport::new(
        rows.iter().map(|r| Support::new(r.clone())).collect(),
    ))
}

impl SolutionSetFile {
    pub fn from_set(set: &SolutionSet) -> Self {
        SolutionSetFile {
            finite: set.finite.iter().map(multi_to_rows).collect(),
            rays: set
                .rays
                .iter()
                .map(|r| RayFile {
                    base: multi_to_rows(r.base()),
                })
                .collect(),
        }
    }

    pub fn to_set(&self) -> Result<SolutionSet, ParseError> {
        let finite = self
            .finite
            .iter()
            .map(|rows| rows_to_multi(rows))
            .collect::<Result<Vec<_>, _>>()?;
        let rays = self
            .rays
            .iter()
            .map(|r| rows_to_multi(&r.base).map(ShiftRay::new))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SolutionSet { finite, rays })
    }

    pub fn parse(text: &str) -> Result<SolutionSet, ParseError> {
        let file: SolutionSetFile = serde_json::from_str(text)?;
        file.to_set()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("solution serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instance_round_trip() {
        let sigma = TldeSystem::new(vec![
            Tlde::new(vec![vec![0, 1], vec![2, -1, 3]]).unwrap(),
            Tlde::new(vec![vec![4, 0], vec![1, 1, 1]]).unwrap(),
        ])
        .unwrap();
        let file = InstanceFile::from_system(&sigma);
        let back = InstanceFile::parse(&file.to_json()).unwrap();
        assert_eq!(back, sigma);
    }

    #[test]
    fn unknown_fields_rejected() {
        let text = r#"{"unknowns":1,"orders":[1],"equations":[[[0,1]]],"extra":true}"#;
        assert!(InstanceFile::parse(text).is_err());
    }

    #[test]
    fn shape_diagnostics_name_the_field() {
        let text = r#"{"unknowns":2,"orders":[1,1],"equations":[[[0,1]]]}"#;
        let err = InstanceFile::parse(text).unwrap_err().to_string();
        assert!(err.contains("equations[0]"), "{err}");

        let text = r#"{"unknowns":1,"orders":[2],"equations":[[[0,1]]]}"#;
        let err = InstanceFile::parse(text).unwrap_err().to_string();
        assert!(err.contains("expected 3"), "{err}");
    }

    #[test]
    fn solution_set_round_trip() {
        let set = SolutionSet::new(
            vec![MultiSupport::new(vec![
                Support::new(vec![0, 3]),
                Support::empty(),
            ])],
            vec![ShiftRay::new(MultiSupport::new(vec![
                Support::singleton(1),
                Support::singleton(2),
            ]))],
        );
        let file = SolutionSetFile::from_set(&set);
        let back = file.to_set().unwrap();
        assert_eq!(back, set);
        let reparsed = SolutionSetFile::parse(&file.to_json()).unwrap();
        assert_eq!(reparsed, set);
    }

    #[test]
    fn perm_family_parse() {
        let fam = PermFamilyFile::parse(r#"{"r":3,"perms":[[0,1,2],[2,1,0]]}"#).unwrap();
        assert_eq!(fam.n(), 2);
        assert!(PermFamilyFile::parse(r#"{"r":3,"perms":[[0,1,1],[2,1,0]]}"#).is_err());
    }
}
