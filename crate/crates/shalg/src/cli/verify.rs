use std::path::Path;
use std::time::Instant;

use num::One;

use crate::ainfty::{MorphismFile, StructureFile};
use crate::exactlin::{hom_differential, map_from_blocks, GradedMap, Q};
use crate::operadcore::action_check;
use crate::transfer::{verify_algebra, verify_morphism, CheckLine, SdrFile};

use super::files::ActionFile;
use super::{parse_json, read_input, Bounds, Certificate, CliError, DEFAULT_N};

pub const ANCHOR_SDR: &str = "SDR data";
pub const ANCHOR_SIDE: &str = "side conditions";
pub const ANCHOR_ACTION: &str = "operad action";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyKind {
    Ainf,
    Morphism,
    Sdr,
    Action,
}

impl VerifyKind {
    pub fn name(self) -> &'static str {
        match self {
            VerifyKind::Ainf => "ainf",
            VerifyKind::Morphism => "morphism",
            VerifyKind::Sdr => "sdr",
            VerifyKind::Action => "action",
        }
    }
}

pub fn cmd_verify(kind: VerifyKind, file: &Path, bounds: &Bounds) -> Result<Certificate, CliError> {
    let start = Instant::now();
    let mut cert = Certificate::new(format!("verify {}", kind.name()));
    let (path, text) = read_input(&mut cert, file)?;
    match kind {
        VerifyKind::Ainf => {
            let f: StructureFile = parse_json(file, &text)?;
            let a = f.to_algebra().map_err(|e| CliError::input(file, e))?;
            let n = effective_order(&mut cert, bounds, a.order());
            cert.checks = verify_algebra(&a, n);
        }
        VerifyKind::Morphism => {
            let f: MorphismFile = parse_json(file, &text)?;
            let m = f.to_morphism(path.parent()).map_err(|e| CliError::input(file, e))?;
            let n = effective_order(&mut cert, bounds, m.order());
            for (side, a) in [("source", m.source()), ("target", m.target())] {
                for mut line in verify_algebra(a, n) {
                    line.identity = format!("{side} {}", line.identity);
                    cert.checks.push(line);
                }
            }
            cert.checks.extend(verify_morphism(&m, n));
        }
        VerifyKind::Sdr => {
            let f: SdrFile = parse_json(file, &text)?;
            cert.checks = sdr_lines(&f, &path)?;
        }
        VerifyKind::Action => {
            let f: ActionFile = parse_json(file, &text)?;
            let bound = f.bound.or(bounds.arity).unwrap_or(DEFAULT_N);
            let arity = bounds.arity.unwrap_or(bound);
            cert.bounds.arity = Some(arity);
            let (p, action) = f.load(&mut cert, &path, bound)?;
            let c = action_check(&action, &p, arity)?;
            for e in &c.checked {
                cert.checks.push(CheckLine::from_residual(
                    format!("∂{}", e.generator),
                    ANCHOR_ACTION,
                    &e.residual,
                ));
            }
            for s in &c.skipped {
                cert.checks.push(CheckLine::not_applicable(
                    format!("∂{s}"),
                    ANCHOR_ACTION,
                    "unassigned or above the arity bound",
                ));
            }
        }
    }
    Ok(cert.finish(start))
}

fn effective_order(cert: &mut Certificate, bounds: &Bounds, available: usize) -> usize {
    let n = bounds.n.unwrap_or(available).min(available);
    if bounds.n.is_some_and(|b| b > available) {
        cert.notes.push(format!("the file is truncated at N = {available}"));
    }
    cert.bounds.n = Some(n);
    n
}

/// The SDR identities and the three side conditions, each reported on its
/// own line, without rejecting the file on the first violation.
fn sdr_lines(f: &SdrFile, path: &Path) -> Result<Vec<CheckLine>, CliError> {
    let base = path.parent();
    let big = f
        .big
        .resolve(base)
        .map_err(|e| CliError::input(path, format!("big: {e}")))?;
    let small = f
        .small
        .resolve(base)
        .map_err(|e| CliError::input(path, format!("small: {e}")))?;
    let (a, m) = (big.space(), small.space());
    let read = |name: &str, blocks, s, t, d| {
        map_from_blocks(s, t, d, blocks).map_err(|e| CliError::input(path, format!("{name}: {e}")))
    };
    let nabla = read("nabla", &f.nabla, m.clone(), a.clone(), 0)?;
    let proj = read("f", &f.f, a.clone(), m.clone(), 0)?;
    let phi = read("phi", &f.phi, a.clone(), a.clone(), 1)?;
    let minus = -Q::one();
    let chain = |g: &GradedMap, s, t| -> Result<GradedMap, CliError> { Ok(hom_differential(g, &[s], t)?) };
    let fn_id = proj.compose(&nabla)?.add_scaled(&small.identity(), &minus)?;
    let homotopy = nabla
        .compose(&proj)?
        .add_scaled(&big.identity(), &minus)?
        .add_scaled(&chain(&phi, &big, &big)?, &minus)?;
    Ok(vec![
        CheckLine::from_residual("∇ chain map", ANCHOR_SDR, &chain(&nabla, &small, &big)?),
        CheckLine::from_residual("f chain map", ANCHOR_SDR, &chain(&proj, &big, &small)?),
        CheckLine::from_residual("f∇ = 1", ANCHOR_SDR, &fn_id),
        CheckLine::from_residual("∇f - 1 = [φ, ∂]", ANCHOR_SDR, &homotopy),
        CheckLine::from_residual("φφ = 0", ANCHOR_SIDE, &phi.compose(&phi)?),
        CheckLine::from_residual("φ∇ = 0", ANCHOR_SIDE, &phi.compose(&nabla)?),
        CheckLine::from_residual("fφ = 0", ANCHOR_SIDE, &proj.compose(&phi)?),
    ])
}
