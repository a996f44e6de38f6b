use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kschmidt::ClassId;

/// Finite integer combination of registry classes. Injective classes never
/// appear: they are dropped when a class vector is formed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ClassVector(BTreeMap<ClassId, i64>);

impl ClassVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(id: ClassId) -> Self {
        ClassVector(BTreeMap::from([(id, 1)]))
    }

    pub fn coords(&self) -> &BTreeMap<ClassId, i64> {
        &self.0
    }

    pub fn get(&self, id: ClassId) -> i64 {
        self.0.get(&id).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = ClassId> + '_ {
        self.0.keys().copied()
    }

    pub fn add_scaled(&mut self, other: &ClassVector, c: i64) -> Result<()> {
        for (&id, &x) in &other.0 {
            let term = x.checked_mul(c).ok_or_else(overflow)?;
            let entry = self.0.entry(id).or_insert(0);
            *entry = entry.checked_add(term).ok_or_else(overflow)?;
            if *entry == 0 {
                self.0.remove(&id);
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &ClassVector) -> Result<ClassVector> {
        let mut out = self.clone();
        out.add_scaled(other, 1)?;
        Ok(out)
    }

    pub(crate) fn insert(&mut self, id: ClassId, c: i64) -> Result<()> {
        self.add_scaled(&ClassVector::unit(id), c)
    }
}

fn overflow() -> Error {
    Error::Verification("class vector coefficient overflow".into())
}

impl fmt::Display for ClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .0
            .iter()
            .map(|(id, c)| {
                if *c == 1 {
                    format!("[{id}]")
                } else {
                    format!("{c}[{id}]")
                }
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}
