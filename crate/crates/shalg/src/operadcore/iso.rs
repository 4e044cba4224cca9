use std::collections::HashMap;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use super::derivation::derivation_extend;
use super::element::FreeOperadElement;
use super::homology::{component_basis, ColoredBasisTree};
use super::presentation::{riso, word, Presentation};
use super::tree::{Planar, Tree};
use super::OperadError;
use crate::exactlin::{LinearOutcome, LinearSystem, SVec, Q};

/// Normal forms of the operad of isomorphisms between colors `x` and `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum IsoForm {
    OneX,
    OneY,
    F,
    G,
}

impl IsoForm {
    pub const ALL: [IsoForm; 4] = [IsoForm::OneX, IsoForm::OneY, IsoForm::F, IsoForm::G];

    fn index(self) -> usize {
        self as usize
    }

    /// Shortest word with this normal form, with its source color.
    fn representative(self) -> (&'static str, &'static [&'static str]) {
        match self {
            IsoForm::OneX => ("x", &[]),
            IsoForm::OneY => ("y", &[]),
            IsoForm::F => ("x", &["f"]),
            IsoForm::G => ("y", &["g"]),
        }
    }
}

/// Normal form of a word in `f`, `g` (written left to right, outermost
/// first) with the given source color. Any other letter is sent to zero,
/// reported as `None`. Mismatched colors are an error.
pub fn alpha_iso(letters: &[&str], source: &str) -> Result<Option<IsoForm>, OperadError> {
    let mut color = source;
    let mut only_fg = true;
    for l in letters.iter().rev() {
        let (from, to) = match *l {
            "f" | "f2" | "f4" => ("x", "y"),
            "g" | "g2" | "g4" => ("y", "x"),
            "h" | "f3" => ("x", "x"),
            "l" | "g3" => ("y", "y"),
            other => return Err(OperadError::UnknownGenerator(other.to_string())),
        };
        if from != color {
            return Err(OperadError::Color(format!(
                "letter {l} expects input color {from}, got {color}"
            )));
        }
        only_fg &= *l == "f" || *l == "g";
        color = to;
    }
    if !only_fg {
        return Ok(None);
    }
    Ok(Some(match (source, color) {
        ("x", "x") => IsoForm::OneX,
        ("y", "y") => IsoForm::OneY,
        ("x", "y") => IsoForm::F,
        _ => IsoForm::G,
    }))
}

fn letters_of(p: &Planar) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = p;
    while let Planar::Node(g, ch) = cur {
        out.push(g.name().to_string());
        cur = &ch[0];
    }
    out
}

fn source_color(color: &str, t: &Tree) -> String {
    t.input_colors(color)[0].clone()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RisoTruncationReport {
    pub length_cap: usize,
    pub degree_zero_words: usize,
    pub onto: bool,
    pub kernel_dim: usize,
    /// Kernel vectors shown to be boundaries of elements with at most
    /// `length_cap + 1` vertices.
    pub kernel_bounded: usize,
    /// `∂(fh) = fgf - f`.
    pub witness: bool,
    pub pass: bool,
}

/// Checks, on words with at most `length_cap` letters, that the normal form
/// map from degree zero onto the four isomorphism forms is surjective and
/// that its kernel consists of boundaries.
pub fn riso_truncation_check(length_cap: usize) -> Result<RisoTruncationReport, OperadError> {
    let p = riso();
    let words = component_basis(&p, 1, 0, length_cap);
    let mut index: HashMap<ColoredBasisTree, usize> = HashMap::new();
    for (i, w) in words.iter().enumerate() {
        index.insert(w.clone(), i);
    }
    let mut forms = Vec::with_capacity(words.len());
    for (color, t) in &words {
        let ls = letters_of(&t.shape);
        let refs: Vec<&str> = ls.iter().map(String::as_str).collect();
        let form = alpha_iso(&refs, &source_color(color, t))?
            .ok_or_else(|| OperadError::Profile("degree zero word with a positive letter".into()))?;
        forms.push(form);
    }
    let onto = IsoForm::ALL.iter().all(|f| forms.contains(f));
    let reps: Vec<Option<usize>> = IsoForm::ALL
        .iter()
        .map(|f| {
            let (src, ls) = f.representative();
            let e = if ls.is_empty() {
                FreeOperadElement::identity(src)
            } else {
                word(&p, ls).ok()?
            };
            let (t, _) = e.terms().iter().next()?;
            index.get(&(e.output.clone(), t.clone())).copied()
        })
        .collect();
    let kernel: Vec<SVec> = forms
        .iter()
        .enumerate()
        .filter_map(|(i, f)| {
            let r = reps[f.index()]?;
            (r != i).then(|| {
                let mut v = vec![(i, Q::one()), (r, -Q::one())];
                v.sort_by_key(|e| e.0);
                v
            })
        })
        .collect();
    let boundaries = boundary_columns(&p, length_cap + 1, &mut index)?;
    let mut bounded = 0;
    for k in &kernel {
        if in_span(&boundaries, k, index.len()) {
            bounded += 1;
        }
    }
    let fh = word(&p, &["f", "h"])?;
    let expected = word(&p, &["f", "g", "f"])?.sub(&p.element("f")?)?;
    let witness = derivation_extend(&p, &fh)? == expected;
    let kernel_dim = kernel.len();
    Ok(RisoTruncationReport {
        length_cap,
        degree_zero_words: words.len(),
        onto,
        kernel_dim,
        kernel_bounded: bounded,
        witness,
        pass: onto && witness && bounded == kernel_dim && kernel_dim + 4 == words.len(),
    })
}

fn boundary_columns(
    p: &Presentation,
    cap: usize,
    index: &mut HashMap<ColoredBasisTree, usize>,
) -> Result<Vec<SVec>, OperadError> {
    let mut out = Vec::new();
    for (color, t) in component_basis(p, 1, 1, cap) {
        let d = derivation_extend(p, &FreeOperadElement::from_tree(t, &color))?;
        let mut col: SVec = d
            .terms()
            .iter()
            .map(|(tt, c)| {
                let next = index.len();
                (*index.entry((color.clone(), tt.clone())).or_insert(next), c.clone())
            })
            .collect();
        col.sort_by_key(|e| e.0);
        out.push(col);
    }
    Ok(out)
}

fn in_span(cols: &[SVec], v: &SVec, nrows: usize) -> bool {
    let mut rows: Vec<SVec> = vec![Vec::new(); nrows];
    for (j, col) in cols.iter().enumerate() {
        for (i, x) in col {
            rows[*i].push((j, x.clone()));
        }
    }
    let mut rhs = vec![Q::zero(); nrows];
    for (i, x) in v {
        rhs[*i] = x.clone();
    }
    let mut sys = LinearSystem::new(cols.len());
    for (r, b) in rows.into_iter().zip(rhs) {
        sys.push(r, b);
    }
    matches!(sys.solve(), LinearOutcome::Solved(_))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_forms_of_words() {
        assert_eq!(alpha_iso(&["f", "g", "f"], "x").unwrap(), Some(IsoForm::F));
        assert_eq!(alpha_iso(&["g", "f"], "x").unwrap(), Some(IsoForm::OneX));
        assert_eq!(alpha_iso(&[], "y").unwrap(), Some(IsoForm::OneY));
        assert_eq!(alpha_iso(&["f", "h"], "x").unwrap(), None);
        assert!(alpha_iso(&["f", "f"], "x").is_err());
    }

    #[test]
    fn riso_truncation_holds() {
        let r = riso_truncation_check(6).unwrap();
        assert!(r.onto && r.witness);
        assert_eq!(r.kernel_bounded, r.kernel_dim);
        assert!(r.pass, "{r:?}");
    }
}
