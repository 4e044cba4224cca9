use std::collections::BTreeMap;

use crate::operadcore::{builtin, FreeOperadElement, OperadAction};

use super::algebra::AInfinityAlgebra;
use super::AinftyError;

/// The image of a generator under the differential of a built-in model
/// (`ass-minimal` or `ass-arrow-minimal`).
pub fn minimal_model_differential(model: &str, generator: &str) -> Result<FreeOperadElement, AinftyError> {
    let digits: String = generator.chars().skip_while(|c| !c.is_ascii_digit()).collect();
    let bound = digits.parse::<usize>().unwrap_or(2).max(2);
    let p = builtin(model, bound)?;
    let g = p.gen(generator)?;
    Ok(p.d_of(g))
}

/// The color used for the single complex of an A∞-algebra.
pub const ALGEBRA_COLOR: &str = "a";

/// Reads `μ_n` off the maps assigned to `mu2, ..., mu{order}`; missing
/// generators act by zero.
pub fn structure_from_action(action: &OperadAction, order: usize) -> Result<AInfinityAlgebra, AinftyError> {
    let complex = action.complex(ALGEBRA_COLOR)?.clone();
    let mut ops = BTreeMap::new();
    for n in 2..=order {
        if let Some(m) = action.maps.get(&format!("mu{n}")) {
            ops.insert(n, m.clone());
        }
    }
    AInfinityAlgebra::with_operations(complex, ops, order)
}

/// The action of the minimal model `ass-minimal(N)` given by `μ_n`.
pub fn action_from_structure(a: &AInfinityAlgebra) -> OperadAction {
    let mut act = OperadAction::new([(ALGEBRA_COLOR.to_string(), a.complex().clone())].into_iter().collect());
    for n in 2..=a.order() {
        act.assign(&format!("mu{n}"), a.mu(n).clone());
    }
    act
}
