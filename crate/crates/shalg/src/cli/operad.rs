use std::path::Path;
use std::time::Instant;

use crate::ainfty::signs_appendix;
use crate::operadcore::{
    d_squared_check, kunneth_check, riso_truncation_check, tree_decomposition_dims, truncated_homology, Presentation,
};
use crate::transfer::{check_side_conditions, riso_zero_extension, CheckLine, RisoExtension, SdrFile};

use super::files::load_presentation;
use super::{parse_json, read_input, Bounds, Certificate, CliError};

pub const ANCHOR_D2: &str = "differential squares to zero";
pub const ANCHOR_TJ: &str = "elemental-cofibration filtration";
pub const ANCHOR_KUNNETH: &str = "kunneth theorem for free products";
pub const ANCHOR_RISO: &str = "r_iso differential";
pub const ANCHOR_ISO: &str = "r_iso resolves iso";

/// Largest arity accepted by `d2` for the Ass-type models; the symbolic
/// expansion of `∂²μ_n` grows quickly beyond it.
pub const MAX_D2_ARITY: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperadSub {
    D2,
    Homology,
    Kunneth,
    RisoExtend,
    TreeDims,
    Signs,
}

impl OperadSub {
    pub fn name(self) -> &'static str {
        match self {
            OperadSub::D2 => "d2",
            OperadSub::Homology => "homology",
            OperadSub::Kunneth => "kunneth",
            OperadSub::RisoExtend => "riso-extend",
            OperadSub::TreeDims => "tree-dims",
            OperadSub::Signs => "signs",
        }
    }
}

fn default_arity(name: &str) -> usize {
    match name {
        "ass-minimal" => 7,
        "ass-arrow-minimal" => 5,
        _ => 3,
    }
}

fn arg<'a>(args: &'a [String], i: usize, default: Option<&'a str>, sub: OperadSub) -> Result<&'a str, CliError> {
    args.get(i)
        .map(String::as_str)
        .or(default)
        .ok_or_else(|| CliError::Usage(format!("operad {} needs argument {}", sub.name(), i + 1)))
}

fn window(arity: usize) -> (i32, i32) {
    (0, arity.saturating_sub(2) as i32)
}

fn dims_text(m: &std::collections::BTreeMap<i32, usize>) -> String {
    m.iter().map(|(d, k)| format!("{d}:{k}")).collect::<Vec<_>>().join(" ")
}

pub fn cmd_operad(sub: OperadSub, args: &[String], bounds: &Bounds) -> Result<Certificate, CliError> {
    let start = Instant::now();
    let mut cert = Certificate::new(format!("operad {}", sub.name()));
    match sub {
        OperadSub::D2 => {
            let name = arg(args, 0, None, sub)?;
            let arity = bounds.arity.unwrap_or_else(|| default_arity(name));
            if name.starts_with("ass") && arity > MAX_D2_ARITY {
                return Err(CliError::Usage(format!(
                    "arity {arity} exceeds {MAX_D2_ARITY}: the expansion of the differential is too large to check"
                )));
            }
            let length = bounds.length.unwrap_or(16);
            cert.bounds.arity = Some(arity);
            cert.bounds.length = Some(length);
            let p = load_presentation(&mut cert, name, arity, None)?;
            let c = d_squared_check(&p, arity, length);
            for g in &c.checked {
                let ok = !c.failed.contains(g);
                let w = c
                    .first_violation
                    .as_ref()
                    .filter(|(n, _)| n == g)
                    .map(|(_, k)| format!("{k} surviving terms"));
                cert.checks
                    .push(CheckLine::from_bool(format!("∂∂{g} = 0"), ANCHOR_D2, ok, w));
            }
            for g in &c.skipped {
                cert.checks.push(CheckLine::not_applicable(
                    format!("∂∂{g} = 0"),
                    ANCHOR_D2,
                    "outside the arity or length bound",
                ));
            }
            let tj = c.first_filtration_violation.clone();
            cert.checks.push(CheckLine::from_bool(
                "∂ lowers the TJ degree by one",
                ANCHOR_TJ,
                tj.is_none(),
                tj,
            ));
        }
        OperadSub::Homology => {
            let name = arg(args, 0, None, sub)?;
            if name == "riso" {
                let length = bounds.length.unwrap_or(6);
                cert.bounds.length = Some(length);
                let r = riso_truncation_check(length)?;
                cert.checks.push(CheckLine::from_bool(
                    "α_iso maps degree 0 onto the Iso normal forms",
                    ANCHOR_ISO,
                    r.onto,
                    None,
                ));
                cert.checks.push(CheckLine::from_bool(
                    format!("degree-0 kernel is bounded from length {}", length + 1),
                    ANCHOR_ISO,
                    r.kernel_bounded == r.kernel_dim,
                    Some(format!("{} of {} kernel vectors", r.kernel_bounded, r.kernel_dim)),
                ));
                cert.checks
                    .push(CheckLine::from_bool("fgf - f = ∂(fh)", ANCHOR_ISO, r.witness, None));
                cert.notes.push(format!(
                    "{} degree-0 words, kernel dimension {}",
                    r.degree_zero_words, r.kernel_dim
                ));
            } else {
                let arity = bounds.arity.unwrap_or(3);
                let length = bounds.length.unwrap_or(arity);
                cert.bounds.arity = Some(arity);
                cert.bounds.length = Some(length);
                let p = load_presentation(&mut cert, name, arity, None)?;
                let h = truncated_homology(&p, arity, window(arity), length)?;
                cert.notes.push(format!("chain dims {}", dims_text(&h.chain_dims)));
                cert.notes
                    .push(format!("homology dims {}", dims_text(&h.homology_dims)));
                if !h.note.is_empty() {
                    cert.notes.push(h.note);
                }
            }
        }
        OperadSub::Kunneth => {
            let arity = bounds.arity.unwrap_or(3);
            cert.bounds.arity = Some(arity);
            let s = load_presentation(&mut cert, arg(args, 0, Some("ass-minimal"), sub)?, arity, None)?;
            let q = load_presentation(&mut cert, arg(args, 1, Some("free-binary"), sub)?, arity, None)?;
            kunneth_lines(&mut cert, &s, &q, arity)?;
        }
        OperadSub::RisoExtend => {
            let file = Path::new(arg(args, 0, None, sub)?);
            let (resolved, text) = read_input(&mut cert, file)?;
            let f: SdrFile = parse_json(file, &text)?;
            let s = f.to_sdr(resolved.parent()).map_err(|e| CliError::input(file, e))?;
            let side = check_side_conditions(&s);
            let failing = side.failing();
            cert.notes.push(if failing.is_empty() {
                "side conditions hold".to_string()
            } else {
                format!("violated side conditions: {}", failing.join(", "))
            });
            let ext = riso_zero_extension(&s)?;
            let checked = match &ext {
                RisoExtension::Extended(a) => &a.certificate,
                RisoExtension::Obstructed { certificate, .. } => certificate,
            };
            for e in &checked.checked {
                cert.checks.push(CheckLine::from_residual(
                    format!("∂{}", e.generator),
                    ANCHOR_RISO,
                    &e.residual,
                ));
            }
            cert.notes.push(match ext.failing_generator() {
                Some(g) => format!("zero extension fails first at {g}"),
                None => "zero extension is an action through f4, g4".to_string(),
            });
        }
        OperadSub::TreeDims => {
            let arity = bounds.arity.unwrap_or(3);
            cert.bounds.arity = Some(arity);
            let p1 = load_presentation(&mut cert, arg(args, 0, None, sub)?, arity, None)?;
            let p2 = load_presentation(&mut cert, arg(args, 1, None, sub)?, arity, None)?;
            let dims = tree_decomposition_dims(&p1, &p2, arity, window(arity))?;
            cert.notes.push(format!("arity {arity} dims {}", dims_text(&dims)));
        }
        OperadSub::Signs => {
            cert.notes.extend(signs_appendix().lines().map(str::to_string));
        }
    }
    Ok(cert.finish(start))
}

fn kunneth_lines(cert: &mut Certificate, s: &Presentation, q: &Presentation, arity: usize) -> Result<(), CliError> {
    let c = kunneth_check(s, q, arity, window(arity))?;
    for d in c.window.0..=c.window.1 {
        let lhs = c.homology_of_product.get(&d).copied().unwrap_or(0);
        let rhs = c.decomposition_of_homologies.get(&d).copied().unwrap_or(0);
        cert.checks.push(CheckLine::from_bool(
            format!("dim H_{d}({} * {})({arity}) = tree decomposition", s.name, q.name),
            ANCHOR_KUNNETH,
            lhs == rhs,
            Some(format!("{lhs} vs {rhs}")),
        ));
    }
    Ok(())
}
