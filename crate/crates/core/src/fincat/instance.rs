use serde::{Deserialize, Serialize};

use super::category::{CategoryJson, FiniteMonoidalCategory};
use super::comonad::{ComonadData, ComonadJson};
use crate::error::Result;

/// A category file, optionally carrying a comonad under `"comonad"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceJson {
    pub objects: Vec<String>,
    pub morphisms: Vec<(String, String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity: Option<std::collections::BTreeMap<String, String>>,
    pub compose: Vec<Vec<Option<String>>>,
    pub tensor_ob: Vec<Vec<String>>,
    pub tensor_mor: Vec<Vec<String>>,
    pub unit: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comonad: Option<ComonadJson>,
}

impl InstanceJson {
    pub fn new(c: &FiniteMonoidalCategory, g: Option<&ComonadData>) -> Self {
        let j = c.to_json();
        InstanceJson {
            objects: j.objects,
            morphisms: j.morphisms,
            identity: j.identity,
            compose: j.compose,
            tensor_ob: j.tensor_ob,
            tensor_mor: j.tensor_mor,
            unit: j.unit,
            comonad: g.map(|g| g.to_json(c)),
        }
    }

    pub fn resolve(self) -> Result<(FiniteMonoidalCategory, Option<ComonadData>)> {
        let c = FiniteMonoidalCategory::from_json(&CategoryJson {
            objects: self.objects,
            morphisms: self.morphisms,
            identity: self.identity,
            compose: self.compose,
            tensor_ob: self.tensor_ob,
            tensor_mor: self.tensor_mor,
            unit: self.unit,
        })?;
        let g = self.comonad.map(|j| ComonadData::from_json(&c, &j)).transpose()?;
        Ok((c, g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::fixtures;

    #[test]
    fn roundtrip() {
        let (c, g) = fixtures::interior_comonad(2, &[0, 1, 3]).unwrap();
        let text = serde_json::to_string_pretty(&InstanceJson::new(&c, Some(&g))).unwrap();
        let back: InstanceJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.resolve().unwrap(), (c.clone(), Some(g)));
        let bare: InstanceJson =
            serde_json::from_str(&serde_json::to_string(&InstanceJson::new(&c, None)).unwrap()).unwrap();
        assert_eq!(bare.resolve().unwrap().1, None);
    }
}
