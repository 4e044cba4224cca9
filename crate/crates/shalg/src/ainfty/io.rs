//! JSON files for structures and morphisms. Operations are stored as
//! per-degree blocks of `V^{⊗n} → V`, keyed by `n` as a string.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::exactlin::{blocks_of, map_from_blocks, tensor_power, ComplexFile, MapBlocks};

use super::algebra::AInfinityAlgebra;
use super::morphism::AInfinityMorphism;
use super::AinftyError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureFile {
    pub complex: ComplexFile,
    #[serde(default)]
    pub mu: BTreeMap<String, MapBlocks>,
    #[serde(rename = "N")]
    pub order: usize,
}

fn parse_index(k: &str, what: &str) -> Result<usize, AinftyError> {
    k.parse()
        .map_err(|_| AinftyError::Format(format!("{what} key {k:?} is not a positive integer")))
}

impl StructureFile {
    pub fn from_algebra(a: &AInfinityAlgebra) -> Self {
        let mu = (2..=a.order())
            .filter(|&n| !a.mu(n).is_zero())
            .map(|n| (n.to_string(), blocks_of(a.mu(n))))
            .collect();
        StructureFile {
            complex: ComplexFile::from_complex(a.complex()),
            mu,
            order: a.order(),
        }
    }

    pub fn to_algebra(&self) -> Result<AInfinityAlgebra, AinftyError> {
        let complex = self.complex.to_complex()?;
        let v = complex.space().clone();
        let mut ops = BTreeMap::new();
        for (k, blocks) in &self.mu {
            let n = parse_index(k, "mu")?;
            if n < 2 || n > self.order {
                return Err(AinftyError::Format(format!("mu key {n} outside 2..={}", self.order)));
            }
            let m = map_from_blocks(tensor_power(&v, n)?, v.clone(), n as i32 - 2, blocks)
                .map_err(|e| AinftyError::Format(format!("mu.{n}: {e}")))?;
            ops.insert(n, m);
        }
        AInfinityAlgebra::with_operations(complex, ops, self.order)
    }
}

/// Either a path (relative to the referring file) or an inline structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Path(String),
    Inline(Box<StructureFile>),
}

impl AlgebraRef {
    pub fn resolve(&self, base: Option<&Path>) -> Result<AInfinityAlgebra, AinftyError> {
        match self {
            AlgebraRef::Inline(s) => s.to_algebra(),
            AlgebraRef::Path(p) => {
                let path = match base {
                    Some(b) => b.join(p),
                    None => Path::new(p).to_path_buf(),
                };
                load_structure(&path)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismFile {
    pub source: AlgebraRef,
    pub target: AlgebraRef,
    pub f: BTreeMap<String, MapBlocks>,
    #[serde(rename = "N")]
    pub order: usize,
}

impl MorphismFile {
    pub fn from_morphism(m: &AInfinityMorphism, source: AlgebraRef, target: AlgebraRef) -> Self {
        let f = (1..=m.order())
            .filter(|&n| !m.component(n).is_zero())
            .map(|n| (n.to_string(), blocks_of(m.component(n))))
            .collect();
        MorphismFile {
            source,
            target,
            f,
            order: m.order(),
        }
    }

    /// Inline endpoints.
    pub fn inline(m: &AInfinityMorphism) -> Self {
        Self::from_morphism(
            m,
            AlgebraRef::Inline(Box::new(StructureFile::from_algebra(m.source()))),
            AlgebraRef::Inline(Box::new(StructureFile::from_algebra(m.target()))),
        )
    }

    pub fn to_morphism(&self, base: Option<&Path>) -> Result<AInfinityMorphism, AinftyError> {
        let source = self.source.resolve(base)?;
        let target = self.target.resolve(base)?;
        if self.order == 0 {
            return Err(AinftyError::Format("N must be at least 1".into()));
        }
        let mut comps = Vec::with_capacity(self.order);
        for n in 1..=self.order {
            let src = tensor_power(source.space(), n)?;
            let blocks = self.f.get(&n.to_string()).cloned().unwrap_or_default();
            let m = map_from_blocks(src, target.space().clone(), n as i32 - 1, &blocks)
                .map_err(|e| AinftyError::Format(format!("f.{n}: {e}")))?;
            comps.push(m);
        }
        for k in self.f.keys() {
            let n = parse_index(k, "f")?;
            if n == 0 || n > self.order {
                return Err(AinftyError::Format(format!("f key {n} outside 1..={}", self.order)));
            }
        }
        AInfinityMorphism::new(source, target, comps)
    }
}

fn read(path: &Path) -> Result<String, AinftyError> {
    std::fs::read_to_string(path).map_err(|e| AinftyError::Format(format!("{}: {e}", path.display())))
}

pub fn load_structure(path: &Path) -> Result<AInfinityAlgebra, AinftyError> {
    let text = read(path)?;
    let f: StructureFile =
        serde_json::from_str(&text).map_err(|e| AinftyError::Format(format!("{}: {e}", path.display())))?;
    f.to_algebra()
}

pub fn load_morphism(path: &Path) -> Result<AInfinityMorphism, AinftyError> {
    let text = read(path)?;
    let f: MorphismFile =
        serde_json::from_str(&text).map_err(|e| AinftyError::Format(format!("{}: {e}", path.display())))?;
    f.to_morphism(path.parent())
}
