use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::exactlin::{map_from_blocks, tensor_product, ChainComplex, ComplexRef, GradedMap, MapBlocks, Space};
use crate::operadcore::{builtin, OperadAction, Presentation, PresentationFile};

use super::{parse_json, read_input, Certificate, CliError};

/// Named maps for a move (`g`, `h`, `l`, or `f`, `g`, `h` for move S), plus
/// the target complex where the move needs one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveData {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<ComplexRef>,
    #[serde(flatten)]
    pub maps: BTreeMap<String, MapBlocks>,
}

impl MoveData {
    /// The map `name`, or zero if `optional` and absent.
    pub(super) fn map(
        &self,
        path: &Path,
        name: &str,
        source: &Space,
        target: &Space,
        degree: i32,
        optional: bool,
    ) -> Result<GradedMap, CliError> {
        match self.maps.get(name) {
            Some(blocks) => map_from_blocks(source.clone(), target.clone(), degree, blocks)
                .map_err(|e| CliError::input(path, format!("field {name}: {e}"))),
            None if optional => Ok(GradedMap::zero(source.clone(), target.clone(), degree)),
            None => Err(CliError::input(path, format!("missing field {name}"))),
        }
    }
}

/// A built-in presentation name, a path to a presentation file, or an
/// inline presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PresentationRef {
    Name(String),
    Inline(Box<PresentationFile>),
}

/// An operad action: the presentation, one complex per color and one map
/// per generator. Unassigned generators are reported as not checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionFile {
    pub presentation: PresentationRef,
    /// Largest arity of the Ass-type built-in models.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    pub complexes: BTreeMap<String, ComplexRef>,
    #[serde(default)]
    pub maps: BTreeMap<String, MapBlocks>,
}

fn looks_like_file(arg: &str) -> bool {
    arg.ends_with(".json") || arg.contains('/')
}

/// A presentation given by name (built-in) or by a JSON file path.
pub(super) fn load_presentation(
    cert: &mut Certificate,
    arg: &str,
    bound: usize,
    base: Option<&Path>,
) -> Result<Presentation, CliError> {
    if !looks_like_file(arg) {
        return Ok(builtin(arg, bound)?);
    }
    let path = base.map(|b| b.join(arg)).unwrap_or_else(|| arg.into());
    let (_, text) = read_input(cert, &path)?;
    let file: PresentationFile = parse_json(&path, &text)?;
    file.to_presentation().map_err(|e| CliError::input(&path, e))
}

impl ActionFile {
    pub(super) fn load(
        &self,
        cert: &mut Certificate,
        path: &Path,
        bound: usize,
    ) -> Result<(Presentation, OperadAction), CliError> {
        let base = path.parent();
        let p = match &self.presentation {
            PresentationRef::Name(n) => load_presentation(cert, n, bound, base)?,
            PresentationRef::Inline(f) => f.to_presentation().map_err(|e| CliError::input(path, e))?,
        };
        let mut complexes: BTreeMap<String, ChainComplex> = BTreeMap::new();
        for (color, c) in &self.complexes {
            let c = c
                .resolve(base)
                .map_err(|e| CliError::input(path, format!("complexes.{color}: {e}")))?;
            complexes.insert(color.clone(), c);
        }
        let mut action = OperadAction::new(complexes);
        for (name, blocks) in &self.maps {
            let g = p
                .gen(name)
                .map_err(|e| CliError::input(path, format!("maps.{name}: {e}")))?;
            let spec = g.spec();
            let inputs = spec
                .inputs
                .iter()
                .map(|c| Ok(action.complex(c)?.space().clone()))
                .collect::<Result<Vec<_>, CliError>>()?;
            let target = action.complex(&spec.output)?.space().clone();
            let m = map_from_blocks(tensor_product(&inputs), target, spec.degree, blocks)
                .map_err(|e| CliError::input(path, format!("maps.{name}: {e}")))?;
            action.assign(name, m);
        }
        Ok((p, action))
    }
}
