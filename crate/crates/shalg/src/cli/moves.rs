use std::path::{Path, PathBuf};
use std::time::Instant;

use num::One;

use crate::ainfty::{underlying, AInfinityAlgebra, AInfinityMorphism, MorphismFile, StructureFile};
use crate::exactlin::{hom_differential, same_space, GradedMap, Q};
use crate::transfer::{
    chain_m4, check_side_conditions, first_entry, invert_m3, perturb_m2, transfer_m1, transfer_s, verify_algebra,
    verify_morphism, CheckLine, HomotopyEquivalence, OneSidedData, SDRData, SdrFile, TransferError, Transferred,
};

use super::files::MoveData;
use super::{parse_json, read_input, write_atomic, Bounds, Certificate, CliError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveKind {
    M1,
    M2,
    M3,
    M4,
    S,
}

impl MoveKind {
    pub fn name(self) -> &'static str {
        match self {
            MoveKind::M1 => "m1",
            MoveKind::M2 => "m2",
            MoveKind::M3 => "m3",
            MoveKind::M4 => "m4",
            MoveKind::S => "s",
        }
    }

    fn anchor(self) -> &'static str {
        match self {
            MoveKind::M1 => "transfer move",
            MoveKind::M2 => "perturbation move",
            MoveKind::M3 => "inversion move",
            MoveKind::M4 => "composition move",
            MoveKind::S => "one-sided transfer move",
        }
    }
}

/// Input files of a move.
///
/// - m1: `structure`, optionally `sdr` (default: onto homology);
/// - s: `structure` and `data` with `target`, `f`, `g`, `h`;
/// - m2, m4: `morphisms` (one for m2, applied in order for m4) and `data`
///   with `g`, `h`;
/// - m3: one morphism and `data` with `g`, `h`, `l`.
#[derive(Clone, Debug, Default)]
pub struct MoveInputs {
    pub structure: Option<PathBuf>,
    pub sdr: Option<PathBuf>,
    pub morphisms: Vec<PathBuf>,
    pub data: Option<PathBuf>,
}

fn need<'a>(p: &'a Option<PathBuf>, what: &str, kind: MoveKind) -> Result<&'a Path, CliError> {
    p.as_deref()
        .ok_or_else(|| CliError::Usage(format!("move {} needs --{what}", kind.name())))
}

fn load_structure(cert: &mut Certificate, path: &Path, bounds: &Bounds) -> Result<AInfinityAlgebra, CliError> {
    let (_, text) = read_input(cert, path)?;
    let f: StructureFile = parse_json(path, &text)?;
    let a = f.to_algebra().map_err(|e| CliError::input(path, e))?;
    let n = bounds.n.unwrap_or(a.order());
    if n > a.order() && !a.is_strict() {
        return Err(CliError::Usage(format!(
            "{} stores a non-strict structure up to N = {}; it cannot be extended to N = {n}",
            path.display(),
            a.order()
        )));
    }
    Ok(a.with_order(n))
}

fn load_morphism(cert: &mut Certificate, path: &Path, bounds: &Bounds) -> Result<AInfinityMorphism, CliError> {
    let (resolved, text) = read_input(cert, path)?;
    let f: MorphismFile = parse_json(path, &text)?;
    let m = f.to_morphism(resolved.parent()).map_err(|e| CliError::input(path, e))?;
    let n = bounds.n.unwrap_or(m.order());
    if n > m.order() {
        cert.notes
            .push(format!("{} is truncated at N = {}", path.display(), m.order()));
    }
    Ok(m.truncate(n.min(m.order())))
}

fn load_data(cert: &mut Certificate, path: &Path) -> Result<(PathBuf, MoveData), CliError> {
    let (resolved, text) = read_input(cert, path)?;
    Ok((resolved, parse_json(path, &text)?))
}

fn bracket(h: &GradedMap, a: &AInfinityAlgebra, b: &AInfinityAlgebra) -> Result<GradedMap, CliError> {
    Ok(hom_differential(h, &[a.complex()], b.complex())?)
}

type Runner = Box<dyn FnOnce() -> Result<Produced, TransferError>>;

/// Output of a move before it is written.
enum Produced {
    Structure(Transferred),
    Morphism(AInfinityMorphism),
}

pub fn cmd_move(
    kind: MoveKind,
    inputs: &MoveInputs,
    bounds: &Bounds,
    out: Option<&Path>,
) -> Result<Certificate, CliError> {
    let start = Instant::now();
    let mut cert = Certificate::new(format!("move {}", kind.name()));
    let anchor = kind.anchor();
    let minus = -Q::one();
    // hypotheses first; a failing one stops the move before any solve
    let (run, target_map): (Runner, Option<GradedMap>) = match kind {
        MoveKind::M1 => {
            let a = load_structure(&mut cert, need(&inputs.structure, "structure", kind)?, bounds)?;
            let s = match &inputs.sdr {
                Some(p) => {
                    let (resolved, text) = read_input(&mut cert, p)?;
                    let f: SdrFile = parse_json(p, &text)?;
                    match f.to_sdr(resolved.parent()) {
                        Ok(s) => s,
                        Err(e) => return hypothesis_failed(cert, start, "SDR data", anchor, e.to_string()),
                    }
                }
                None => {
                    cert.notes.push("no SDR given: transferring onto homology".into());
                    SDRData::onto_homology(a.complex())
                }
            };
            let on_complex = s.big == *a.complex();
            cert.checks.push(CheckLine::from_bool(
                "SDR retracts the structure's complex",
                anchor,
                on_complex,
                Some("the big complex differs".into()),
            ));
            let side = check_side_conditions(&s);
            cert.checks.push(CheckLine::from_bool(
                "side conditions",
                anchor,
                side.all(),
                Some(side.failing().join(", ")),
            ));
            (Box::new(move || transfer_m1(&a, &s).map(Produced::Structure)), None)
        }
        MoveKind::S => {
            let a = load_structure(&mut cert, need(&inputs.structure, "structure", kind)?, bounds)?;
            let (resolved, data) = load_data(&mut cert, need(&inputs.data, "data", kind)?)?;
            let target = data
                .target
                .as_ref()
                .ok_or_else(|| CliError::input(&resolved, "missing field target"))?
                .resolve(resolved.parent())
                .map_err(|e| CliError::input(&resolved, format!("target: {e}")))?;
            let (v, w) = (a.space().clone(), target.space().clone());
            let f = data.map(&resolved, "f", &v, &w, 0, false)?;
            let g = data.map(&resolved, "g", &w, &v, 0, false)?;
            let h = data.map(&resolved, "h", &v, &v, 1, true)?;
            let d = match OneSidedData::new(a.complex().clone(), target, f, g, h) {
                Ok(d) => d,
                Err(e) => return hypothesis_failed(cert, start, "gf - 1 = [h, ∂]", anchor, e.to_string()),
            };
            cert.checks
                .push(CheckLine::from_bool("gf - 1 = [h, ∂]", anchor, true, None));
            (Box::new(move || transfer_s(&a, &d).map(Produced::Structure)), None)
        }
        MoveKind::M2 | MoveKind::M4 => {
            let paths = &inputs.morphisms;
            match (kind, paths.len()) {
                (MoveKind::M2, 1) => {}
                (MoveKind::M4, n) if n >= 1 => {}
                _ => {
                    return Err(CliError::Usage(format!(
                        "move {} got {} --morphism files",
                        kind.name(),
                        paths.len()
                    )))
                }
            }
            let ms = paths
                .iter()
                .map(|p| load_morphism(&mut cert, p, bounds))
                .collect::<Result<Vec<_>, _>>()?;
            let composable = ms
                .windows(2)
                .all(|w| w[0].target().same_up_to(w[1].source(), w[0].order().min(w[1].order())));
            if kind == MoveKind::M4 {
                cert.checks.push(CheckLine::from_bool(
                    "morphisms composable",
                    anchor,
                    composable,
                    Some("a target differs from the next source".into()),
                ));
                if !composable {
                    return Ok(cert.finish(start));
                }
            }
            let (first, last) = (ms[0].source().clone(), ms[ms.len() - 1].target().clone());
            let (resolved, data) = load_data(&mut cert, need(&inputs.data, "data", kind)?)?;
            let g = data.map(&resolved, "g", first.space(), last.space(), 0, false)?;
            let h = data.map(&resolved, "h", first.space(), last.space(), 1, true)?;
            let mut f1 = ms[0].component(1).clone();
            for m in &ms[1..] {
                f1 = m.component(1).compose(&f1)?;
            }
            let residual = g
                .add_scaled(&f1, &minus)?
                .add_scaled(&bracket(&h, &first, &last)?, &minus)?;
            cert.checks
                .push(CheckLine::from_residual("g - f_1 = [h, ∂]", anchor, &residual));
            if !residual.is_zero() {
                return Ok(cert.finish(start));
            }
            let target = g.clone();
            let run: Runner = if kind == MoveKind::M2 {
                Box::new(move || perturb_m2(&ms[0], &g, &h).map(Produced::Morphism))
            } else {
                Box::new(move || chain_m4(&ms, &g, &h).map(Produced::Morphism))
            };
            (run, Some(target))
        }
        MoveKind::M3 => {
            if inputs.morphisms.len() != 1 {
                return Err(CliError::Usage(format!(
                    "move m3 got {} --morphism files",
                    inputs.morphisms.len()
                )));
            }
            let m = load_morphism(&mut cert, &inputs.morphisms[0], bounds)?;
            let (resolved, data) = load_data(&mut cert, need(&inputs.data, "data", kind)?)?;
            let (v, w) = (m.source().space().clone(), m.target().space().clone());
            let g = data.map(&resolved, "g", &w, &v, 0, false)?;
            let h = data.map(&resolved, "h", &v, &v, 1, true)?;
            let l = data.map(&resolved, "l", &w, &w, 1, true)?;
            let e = match HomotopyEquivalence::new(
                m.source().complex().clone(),
                m.target().complex().clone(),
                m.component(1).clone(),
                g.clone(),
                h,
                l,
            ) {
                Ok(e) => e,
                Err(e) => return hypothesis_failed(cert, start, "homotopy equivalence", anchor, e.to_string()),
            };
            cert.checks
                .push(CheckLine::from_bool("homotopy equivalence", anchor, true, None));
            (Box::new(move || invert_m3(&m, &e).map(Produced::Morphism)), Some(g))
        }
    };
    if cert.checks.iter().any(CheckLine::failed) {
        return Ok(cert.finish(start));
    }
    let produced = match run() {
        Ok(p) => p,
        Err(TransferError::Inconsistent { stage, certificate }) => {
            let w = format!(
                "{stage}: combination {:?} gives {}",
                certificate.combination, certificate.value
            );
            cert.checks
                .push(CheckLine::from_bool("linear solves consistent", anchor, false, Some(w)));
            return Ok(cert.finish(start));
        }
        Err(TransferError::Hypothesis(msg)) | Err(TransferError::SideConditions(msg)) => {
            return hypothesis_failed(cert, start, "move hypotheses", anchor, msg)
        }
        Err(e) => return Err(e.into()),
    };
    cert.checks
        .push(CheckLine::from_bool("linear solves consistent", anchor, true, None));
    let mut files: Vec<(&str, String)> = Vec::new();
    match &produced {
        Produced::Structure(t) => {
            let n = t.algebra.order();
            cert.bounds.n = Some(n);
            cert.checks.extend(verify_algebra(&t.algebra, n));
            cert.checks.extend(verify_morphism(&t.morphism, n));
            cert.notes.extend(t.notes.iter().cloned());
            let sf = StructureFile::from_algebra(&t.algebra);
            let mf = MorphismFile::inline(&t.morphism);
            let reparsed = sf.to_algebra().map(|b| b.same_up_to(&t.algebra, n)).unwrap_or(false)
                && mf.to_morphism(None).map(|m| m.same_as(&t.morphism)).unwrap_or(false);
            cert.checks.push(CheckLine::from_bool(
                "output files reparse to equal values",
                anchor,
                reparsed,
                None,
            ));
            files.push((
                "structure.json",
                serde_json::to_string_pretty(&sf).expect("serializable"),
            ));
            files.push((
                "morphism.json",
                serde_json::to_string_pretty(&mf).expect("serializable"),
            ));
        }
        Produced::Morphism(m) => {
            let n = m.order();
            cert.bounds.n = Some(n);
            cert.checks.extend(verify_morphism(m, n));
            if let Some(g) = &target_map {
                let u = underlying(m);
                let same = same_space(u.source(), g.source()) && u.equals(g);
                let w = u.add_scaled(g, &minus).ok().and_then(|d| first_entry(&d));
                cert.checks
                    .push(CheckLine::from_bool("underlying map = g", anchor, same, w));
            }
            let mf = MorphismFile::inline(m);
            let reparsed = mf.to_morphism(None).map(|b| b.same_as(m)).unwrap_or(false);
            cert.checks.push(CheckLine::from_bool(
                "output files reparse to equal values",
                anchor,
                reparsed,
                None,
            ));
            files.push((
                "morphism.json",
                serde_json::to_string_pretty(&mf).expect("serializable"),
            ));
        }
    }
    match out {
        Some(dir) => {
            for (name, text) in files {
                let p = write_atomic(dir, name, &(text + "\n"))?;
                cert.outputs.push(p.display().to_string());
            }
        }
        None => cert.notes.push("no --out given: nothing written".into()),
    }
    Ok(cert.finish(start))
}

fn hypothesis_failed(
    mut cert: Certificate,
    start: Instant,
    what: &str,
    anchor: &str,
    why: String,
) -> Result<Certificate, CliError> {
    cert.checks.push(CheckLine::from_bool(what, anchor, false, Some(why)));
    Ok(cert.finish(start))
}
