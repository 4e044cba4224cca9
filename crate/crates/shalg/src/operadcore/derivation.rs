use std::collections::HashMap;

use num::Zero;
use serde::{Deserialize, Serialize};

use super::element::FreeOperadElement;
use super::presentation::Presentation;
use super::tree::{compose_trees, Planar, Tree};
use super::OperadError;
use crate::exactlin::{sign, Q};

type Terms = Vec<(Tree, Q)>;

/// Extends the differential of `p` to `x` by the signed Leibniz rule
/// `d(x(T1..Tk)) = dx(T1..Tk) + (-1)^{|x|} Σ_i (-1)^{|T1|+...+|T_{i-1}|} x(.., dTi, ..)`.
pub fn derivation_extend(p: &Presentation, x: &FreeOperadElement) -> Result<FreeOperadElement, OperadError> {
    let mut out = FreeOperadElement::zero(x.inputs.clone(), x.output.clone(), x.degree - 1);
    let mut memo: HashMap<Planar, Terms> = HashMap::new();
    for (t, c) in x.terms() {
        for (dt, dc) in d_planar(p, &t.shape, &mut memo)? {
            out.add_term(dt.relabel(&t.labels), dc * c);
        }
    }
    Ok(out)
}

fn d_planar(p: &Presentation, t: &Planar, memo: &mut HashMap<Planar, Terms>) -> Result<Terms, OperadError> {
    if let Some(v) = memo.get(t) {
        return Ok(v.clone());
    }
    let mut acc: HashMap<Tree, Q> = HashMap::new();
    if let Planar::Node(g, children) = t {
        // make sure the generator belongs to this presentation
        let g = p.gen(g.name())?.clone();
        let child_trees: Vec<Tree> = children.iter().map(|c| Tree::planar(c.clone())).collect();
        let dx = p.d_of(&g);
        {
            let subs: Vec<&Tree> = child_trees.iter().collect();
            for (term, c) in dx.terms() {
                let (odd, tt) = compose_trees(term, &subs);
                add(&mut acc, tt, if odd { -c.clone() } else { c.clone() });
            }
        }
        let corolla = Tree::corolla(&g);
        let mut before = 0i64;
        for (i, ch) in children.iter().enumerate() {
            let s = sign(g.degree() as i64 + before);
            for (dti, c) in d_planar(p, ch, memo)? {
                let mut subs: Vec<&Tree> = child_trees.iter().collect();
                subs[i] = &dti;
                let (odd, tt) = compose_trees(&corolla, &subs);
                let v = &c * &s;
                add(&mut acc, tt, if odd { -v } else { v });
            }
            before += ch.degree() as i64;
        }
    }
    let terms: Terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    memo.insert(t.clone(), terms.clone());
    Ok(terms)
}

fn add(acc: &mut HashMap<Tree, Q>, t: Tree, c: Q) {
    *acc.entry(t).or_insert_with(Q::zero) += c;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DSquaredCertificate {
    pub presentation: String,
    pub up_to_arity: usize,
    pub up_to_length: usize,
    pub checked: Vec<String>,
    pub skipped: Vec<String>,
    /// First generator with `d(d(x)) != 0`, with the number of surviving terms.
    pub first_violation: Option<(String, usize)>,
    /// Every generator with `d(d(x)) != 0`.
    pub failed: Vec<String>,
    /// First generator whose image does not lower the TJ degree by exactly one.
    pub first_filtration_violation: Option<String>,
    pub pass: bool,
}

/// Checks `d² = 0` on every generator of arity at most `up_to_arity` whose
/// image has trees with at most `up_to_length` vertices, and the TJ
/// filtration condition on all generators.
pub fn d_squared_check(p: &Presentation, up_to_arity: usize, up_to_length: usize) -> DSquaredCertificate {
    let mut cert = DSquaredCertificate {
        presentation: p.name.clone(),
        up_to_arity,
        up_to_length,
        checked: Vec::new(),
        skipped: Vec::new(),
        first_violation: None,
        failed: Vec::new(),
        first_filtration_violation: None,
        pass: true,
    };
    for g in p.generators() {
        let image = p.d_of(g);
        if g.arity() > up_to_arity || image.max_vertices() > up_to_length {
            cert.skipped.push(g.name().to_string());
            continue;
        }
        if cert.first_filtration_violation.is_none() {
            let tj = g.spec().tj;
            let ok = image.tj_degrees().iter().all(|&t| tj >= 1 && t == tj - 1);
            if !ok {
                cert.first_filtration_violation = Some(g.name().to_string());
            }
        }
        cert.checked.push(g.name().to_string());
        match derivation_extend(p, &image) {
            Ok(dd) if dd.is_zero() => {}
            Ok(dd) => {
                if cert.first_violation.is_none() {
                    cert.first_violation = Some((g.name().to_string(), dd.len()));
                }
                cert.failed.push(g.name().to_string());
            }
            Err(_) => {
                if cert.first_violation.is_none() {
                    cert.first_violation = Some((g.name().to_string(), 0));
                }
                cert.failed.push(g.name().to_string());
            }
        }
    }
    cert.pass = cert.first_violation.is_none() && cert.first_filtration_violation.is_none();
    cert
}
