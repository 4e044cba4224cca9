use std::collections::BTreeMap;

use crate::exactlin::GradedMap;
use crate::operadcore::{action_check, riso, ActionCertificate, OperadAction};

use super::sdr::{HomotopyEquivalence, SDRData};
use super::TransferError;

const HIGHER: [&str; 6] = ["f2", "g2", "f3", "g3", "f4", "g4"];

/// An action of R_iso on `x = V`, `y = W` that passed `action_check`.
#[derive(Clone, Debug)]
pub struct RIsoAction {
    pub action: OperadAction,
    pub certificate: ActionCertificate,
}

#[derive(Clone, Debug)]
pub enum RisoExtension {
    Extended(RIsoAction),
    /// The first generator whose compatibility fails, with the residual
    /// `[a(x), ∂] - a(∂x)`.
    Obstructed {
        generator: String,
        obstruction: GradedMap,
        certificate: ActionCertificate,
    },
}

impl RisoExtension {
    pub fn is_extended(&self) -> bool {
        matches!(self, RisoExtension::Extended(_))
    }

    pub fn failing_generator(&self) -> Option<&str> {
        match self {
            RisoExtension::Extended(_) => None,
            RisoExtension::Obstructed { generator, .. } => Some(generator),
        }
    }
}

/// `a(f), a(g), a(h), a(l)` from the equivalence; generators missing from
/// `higher` are sent to zero.
pub fn riso_action(e: &HomotopyEquivalence, higher: &BTreeMap<String, GradedMap>) -> OperadAction {
    let mut complexes = BTreeMap::new();
    complexes.insert("x".to_string(), e.source.clone());
    complexes.insert("y".to_string(), e.target.clone());
    let mut action = OperadAction::new(complexes);
    action.assign("f", e.f.clone());
    action.assign("g", e.g.clone());
    action.assign("h", e.h.clone());
    action.assign("l", e.l.clone());
    let (v, w) = (e.source.space(), e.target.space());
    for (k, name) in HIGHER.iter().enumerate() {
        let degree = k as i32 / 2 + 2;
        let (src, tgt) = match (k / 2 % 2 == 0, k % 2 == 0) {
            // f_even: x → y, g_even: y → x; f3 : x → x, g3 : y → y
            (true, true) => (v, w),
            (true, false) => (w, v),
            (false, true) => (v, v),
            (false, false) => (w, w),
        };
        let m = higher
            .get(*name)
            .cloned()
            .unwrap_or_else(|| GradedMap::zero(src.clone(), tgt.clone(), degree));
        action.assign(name, m);
    }
    action
}

/// The assignment `a(f) = ∇`, `a(g) = f`, `a(h) = 0`, `a(l) = φ` extended by
/// zero on `f_i, g_i`, checked through `f_4, g_4`.
pub fn riso_zero_extension(s: &SDRData) -> Result<RisoExtension, TransferError> {
    let action = riso_action(&s.equivalence(), &BTreeMap::new());
    let certificate = action_check(&action, &riso(), 1)?;
    let failure = certificate.checked.iter().find(|e| !e.pass()).cloned();
    Ok(match failure {
        None => RisoExtension::Extended(RIsoAction { action, certificate }),
        Some(entry) => RisoExtension::Obstructed {
            generator: entry.generator,
            obstruction: entry.residual,
            certificate,
        },
    })
}
