//! Normal-crossings resolution data supplied as JSON.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use num::integer::gcd;
use serde::{Deserialize, Serialize};

use super::class::{ClassJson, GrothendieckClass};
use crate::error::{invalid, Result};

/// Which signed fibre a real computation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "-1")]
    Minus,
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "<")]
    Less,
    #[serde(rename = ">")]
    Greater,
}

impl Sign {
    pub const ALL: [Sign; 4] = [Sign::Minus, Sign::Plus, Sign::Less, Sign::Greater];

    pub fn label(self) -> &'static str {
        match self {
            Sign::Minus => "-1",
            Sign::Plus => "+1",
            Sign::Less => "<",
            Sign::Greater => ">",
        }
    }

    pub fn parse(s: &str) -> Result<Sign> {
        match s {
            "-1" => Ok(Sign::Minus),
            "+1" | "1" => Ok(Sign::Plus),
            "<" => Ok(Sign::Less),
            ">" => Ok(Sign::Greater),
            _ => invalid(format!("unknown sign {s:?}; expected -1, +1, < or >")),
        }
    }

    /// The fibre sign whose closure matches the link region: > ↦ +1, < ↦ −1.
    pub fn fibre(self) -> Sign {
        match self {
            Sign::Greater | Sign::Plus => Sign::Plus,
            Sign::Less | Sign::Minus => Sign::Minus,
        }
    }

    pub fn is_fibre(self) -> bool {
        matches!(self, Sign::Plus | Sign::Minus)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Complex,
    Real(Sign),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Component {
    pub id: String,
    #[serde(rename = "N")]
    pub mult: u64,
    pub nu: u64,
    pub exceptional: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumJson {
    #[serde(rename = "I")]
    pub ids: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<ClassJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_signed: Option<BTreeMap<Sign, ClassJson>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolutionJson {
    pub n: usize,
    pub components: Vec<Component>,
    pub strata: Vec<StratumJson>,
}

/// A validated stratum E_I^0 with indices into the component list.
#[derive(Debug, Clone, PartialEq)]
pub struct Stratum {
    pub members: Vec<usize>,
    /// χ(E_I^0).
    pub chi: Option<i64>,
    /// [Ẽ_I^0] in the complex setting.
    pub class: Option<GrothendieckClass>,
    /// [Ẽ_I^{0,?}] in the real setting.
    pub class_signed: BTreeMap<Sign, GrothendieckClass>,
    /// m_I = gcd of the multiplicities, the degree of the cover Ẽ_I^0 → E_I^0.
    pub cover_degree: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResolutionData {
    pub n: usize,
    pub components: Vec<Component>,
    pub strata: Vec<Stratum>,
}

impl ResolutionData {
    pub fn from_json(j: ResolutionJson) -> Result<ResolutionData> {
        if j.n == 0 {
            return invalid("ambient dimension must be positive");
        }
        let mut index = BTreeMap::new();
        for (k, c) in j.components.iter().enumerate() {
            if c.mult == 0 || c.nu == 0 {
                return invalid(format!("component {}: N and nu must be positive", c.id));
            }
            if index.insert(c.id.clone(), k).is_some() {
                return invalid(format!("duplicate component id {}", c.id));
            }
        }
        let mut seen = BTreeSet::new();
        let mut strata = Vec::new();
        for s in j.strata {
            if s.ids.is_empty() {
                return invalid("stratum with empty index set");
            }
            let mut members = Vec::new();
            for id in &s.ids {
                let Some(&k) = index.get(id) else {
                    return invalid(format!("stratum refers to unknown component {id}"));
                };
                members.push(k);
            }
            members.sort_unstable();
            if members.windows(2).any(|w| w[0] == w[1]) {
                return invalid(format!("stratum {:?} repeats a component", s.ids));
            }
            if !seen.insert(members.clone()) {
                return invalid(format!("stratum {:?} listed twice", s.ids));
            }
            let class = s.class.as_ref().map(GrothendieckClass::from_json).transpose()?;
            if let Some(c) = &class {
                if !c.is_integral() {
                    return invalid(format!("complex class of stratum {:?} has non-integer coefficients", s.ids));
                }
            }
            let mut class_signed = BTreeMap::new();
            for (sign, c) in s.class_signed.iter().flatten() {
                class_signed.insert(*sign, GrothendieckClass::from_json(c)?);
            }
            let cover_degree = members.iter().map(|&k| j.components[k].mult).fold(0, gcd);
            strata.push(Stratum { members, chi: s.chi, class, class_signed, cover_degree });
        }
        Ok(ResolutionData { n: j.n, components: j.components, strata })
    }

    pub fn from_str(s: &str) -> Result<ResolutionData> {
        Self::from_json(serde_json::from_str(s)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<ResolutionData> {
        Self::from_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> Result<ResolutionJson> {
        let strata = self
            .strata
            .iter()
            .map(|s| {
                let class_signed = if s.class_signed.is_empty() {
                    None
                } else {
                    Some(s.class_signed.iter().map(|(k, c)| Ok((*k, c.to_json()?))).collect::<Result<_>>()?)
                };
                Ok(StratumJson {
                    ids: s.members.iter().map(|&k| self.components[k].id.clone()).collect(),
                    chi: s.chi,
                    class: s.class.as_ref().map(|c| c.to_json()).transpose()?,
                    class_signed,
                })
            })
            .collect::<Result<_>>()?;
        Ok(ResolutionJson { n: self.n, components: self.components.clone(), strata })
    }

    pub fn is_exceptional(&self, k: usize) -> bool {
        self.components[k].exceptional
    }

    /// The singleton stratum E_{i}^0 of a component, if listed.
    pub fn singleton(&self, k: usize) -> Option<&Stratum> {
        self.strata.iter().find(|s| s.members == [k])
    }

    pub fn component_index(&self, id: &str) -> Option<usize> {
        self.components.iter().position(|c| c.id == id)
    }

    /// χ(Ẽ_I^0): from the class when present, otherwise m_I · χ(E_I^0).
    pub fn cover_chi(&self, s: &Stratum) -> Option<i64> {
        match (&s.class, s.chi) {
            (Some(c), _) => {
                let v = c.chi_complex();
                v.is_integer().then(|| v.to_integer().try_into().ok()).flatten()
            }
            (None, Some(chi)) => Some(s.cover_degree as i64 * chi),
            (None, None) => None,
        }
    }

    /// Strata whose class and χ disagree with χ(Ẽ_I^0) = m_I · χ(E_I^0).
    pub fn cover_mismatches(&self) -> Vec<Vec<String>> {
        self.strata
            .iter()
            .filter(|s| match (&s.class, s.chi) {
                (Some(c), Some(chi)) => c.chi_complex() != num::BigRational::from_integer((s.cover_degree as i64 * chi).into()),
                _ => false,
            })
            .map(|s| s.members.iter().map(|&k| self.components[k].id.clone()).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOY: &str = r#"{"n": 2,
        "components": [{"id": "E", "N": 2, "nu": 2, "exceptional": true},
                       {"id": "C", "N": 1, "nu": 1, "exceptional": false}],
        "strata": [{"I": ["E"], "chi": 0, "class": [[1, 2, 1], [0, -2, 1]]},
                   {"I": ["E", "C"], "chi": 1, "class": [[0, 1, 1]]}]}"#;

    #[test]
    fn parses_and_computes_cover_degree() {
        let r = ResolutionData::from_str(TOY).unwrap();
        assert_eq!(r.strata[0].cover_degree, 2);
        assert_eq!(r.strata[1].cover_degree, 1);
        assert!(r.cover_mismatches().is_empty());
        let back = ResolutionData::from_json(r.to_json().unwrap()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn rejects_unknown_ids_and_fields() {
        let bad = TOY.replace(r#"["E", "C"]"#, r#"["E", "D"]"#);
        assert!(ResolutionData::from_str(&bad).is_err());
        let bad = TOY.replace(r#""nu": 1"#, r#""nv": 1"#);
        assert!(ResolutionData::from_str(&bad).is_err());
        let bad = TOY.replace(r#"[0, -2, 1]"#, r#"[0, -1, 2]"#);
        assert!(ResolutionData::from_str(&bad).is_err());
    }
}
