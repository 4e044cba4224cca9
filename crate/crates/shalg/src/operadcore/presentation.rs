use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::element::{compose_elements, graft, FreeOperadElement};
use super::tree::{Gen, Planar, Tree};
use super::OperadError;
use crate::exactlin::{format_q, parse_q, sign, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorSet {
    colors: Vec<String>,
}

impl ColorSet {
    pub fn new(colors: Vec<String>) -> Result<Self, OperadError> {
        if colors.is_empty() {
            return Err(OperadError::Color("a color set needs at least one color".into()));
        }
        let mut seen = colors.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != colors.len() {
            return Err(OperadError::Color("color names must be unique".into()));
        }
        Ok(ColorSet { colors })
    }

    pub fn colors(&self) -> &[String] {
        &self.colors
    }

    pub fn contains(&self, c: &str) -> bool {
        self.colors.iter().any(|x| x == c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub inputs: Vec<String>,
    pub output: String,
    pub degree: i32,
    #[serde(default)]
    pub tj: u32,
}

impl GeneratorSpec {
    pub fn new(name: &str, inputs: &[&str], output: &str, degree: i32, tj: u32) -> Self {
        GeneratorSpec {
            name: name.to_string(),
            inputs: inputs.iter().map(|s| s.to_string()).collect(),
            output: output.to_string(),
            degree,
            tj,
        }
    }

    pub fn arity(&self) -> usize {
        self.inputs.len()
    }
}

/// Images of the generators; a missing generator has zero differential.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DerivationDifferential {
    pub images: BTreeMap<String, FreeOperadElement>,
}

/// Generators, colors and a differential on the free operad they span.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub name: String,
    pub colors: ColorSet,
    gens: Vec<Gen>,
    index: BTreeMap<String, usize>,
    pub differential: DerivationDifferential,
}

impl Presentation {
    pub fn new(name: &str, colors: ColorSet, specs: Vec<GeneratorSpec>) -> Result<Self, OperadError> {
        let mut index = BTreeMap::new();
        let mut gens = Vec::new();
        for s in specs {
            if s.inputs.is_empty() {
                return Err(OperadError::Profile(format!("generator {} has arity 0", s.name)));
            }
            for c in s.inputs.iter().chain(std::iter::once(&s.output)) {
                if !colors.contains(c) {
                    return Err(OperadError::Color(format!(
                        "generator {} uses unknown color {c}",
                        s.name
                    )));
                }
            }
            if index.insert(s.name.clone(), gens.len()).is_some() {
                return Err(OperadError::NameClash(s.name));
            }
            gens.push(Gen(Arc::new(s)));
        }
        Ok(Presentation {
            name: name.to_string(),
            colors,
            gens,
            index,
            differential: DerivationDifferential::default(),
        })
    }

    pub fn generators(&self) -> &[Gen] {
        &self.gens
    }

    pub fn gen(&self, name: &str) -> Result<&Gen, OperadError> {
        self.index
            .get(name)
            .map(|&i| &self.gens[i])
            .ok_or_else(|| OperadError::UnknownGenerator(name.to_string()))
    }

    pub fn element(&self, name: &str) -> Result<FreeOperadElement, OperadError> {
        Ok(FreeOperadElement::generator(self.gen(name)?))
    }

    /// Sets `∂(name) = image` after checking degree and colors.
    pub fn set_differential(&mut self, name: &str, image: FreeOperadElement) -> Result<(), OperadError> {
        let g = self.gen(name)?.clone();
        if image.inputs != g.spec().inputs || image.output != g.spec().output {
            return Err(OperadError::Profile(format!("image of {name} has the wrong colors")));
        }
        if !image.is_zero() && image.degree != g.degree() - 1 {
            return Err(OperadError::Profile(format!(
                "image of {name} has degree {} instead of {}",
                image.degree,
                g.degree() - 1
            )));
        }
        self.differential.images.insert(name.to_string(), image);
        Ok(())
    }

    /// `∂` of a generator (zero when none was declared).
    pub fn d_of(&self, g: &Gen) -> FreeOperadElement {
        self.differential.images.get(g.name()).cloned().unwrap_or_else(|| {
            FreeOperadElement::zero(g.spec().inputs.clone(), g.spec().output.clone(), g.degree() - 1)
        })
    }

    /// Whether some differential image contains the bare unit.
    pub fn is_augmented(&self) -> bool {
        self.differential
            .images
            .values()
            .all(|e| e.terms().keys().all(|t| t.vertices() > 0))
    }

    pub fn has_unary_generators(&self) -> bool {
        self.gens.iter().any(|g| g.arity() == 1)
    }
}

/// Disjoint union of generators and differentials; colors are merged.
pub fn free_product(p1: &Presentation, p2: &Presentation) -> Result<Presentation, OperadError> {
    let mut colors = p1.colors.colors().to_vec();
    for c in p2.colors.colors() {
        if !colors.contains(c) {
            colors.push(c.clone());
        }
    }
    let specs: Vec<GeneratorSpec> = p1.gens.iter().chain(&p2.gens).map(|g| g.spec().clone()).collect();
    let mut p = Presentation::new(&format!("{}*{}", p1.name, p2.name), ColorSet::new(colors)?, specs)?;
    for src in [p1, p2] {
        for (name, img) in &src.differential.images {
            let relinked = relink(&p, img)?;
            p.set_differential(name, relinked)?;
        }
    }
    Ok(p)
}

/// Rebuilds an element so its vertices point at the generators of `p`.
fn relink(p: &Presentation, e: &FreeOperadElement) -> Result<FreeOperadElement, OperadError> {
    fn planar(p: &Presentation, t: &Planar) -> Result<Planar, OperadError> {
        Ok(match t {
            Planar::Leaf => Planar::Leaf,
            Planar::Node(g, ch) => Planar::Node(
                p.gen(g.name())?.clone(),
                ch.iter().map(|c| planar(p, c)).collect::<Result<_, _>>()?,
            ),
        })
    }
    let mut out = FreeOperadElement::zero(e.inputs.clone(), e.output.clone(), e.degree);
    for (t, c) in e.terms() {
        out.add_term(
            Tree {
                shape: planar(p, &t.shape)?,
                labels: t.labels.clone(),
            },
            c.clone(),
        );
    }
    Ok(out)
}

/// Compositions of `n` into `k` positive parts, in lexicographic order.
pub fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    if n < k {
        return vec![];
    }
    let mut out = Vec::new();
    for a in 1..=n - (k - 1) {
        for mut rest in compositions(n - a, k - 1) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

/// `Σ_{a<b} r_a (r_b + 1)`.
pub fn eta_exponent(r: &[usize]) -> i64 {
    let mut e = 0i64;
    for a in 0..r.len() {
        for b in a + 1..r.len() {
            e += (r[a] * (r[b] + 1)) as i64;
        }
    }
    e
}

fn single(color: &str) -> ColorSet {
    ColorSet::new(vec![color.to_string()]).expect("one color")
}

/// `Σ_{i+j=n+1} Σ_s (-1)^{i + s(j+1)} m_i ∘_{s+1} m_j`.
fn stasheff_image(p: &Presentation, prefix: &str, n: usize) -> Result<FreeOperadElement, OperadError> {
    let top = p.gen(&format!("{prefix}{n}"))?;
    let mut acc = FreeOperadElement::zero(top.spec().inputs.clone(), top.spec().output.clone(), n as i32 - 3);
    for i in 2..n {
        let j = n + 1 - i;
        let mi = p.element(&format!("{prefix}{i}"))?;
        let mj = p.element(&format!("{prefix}{j}"))?;
        for s in 0..i {
            let term = graft(&mi, s + 1, &mj)?;
            acc = acc.add_scaled(&term, &sign((i + s * (j + 1)) as i64))?;
        }
    }
    Ok(acc)
}

/// The minimal model of the associative operad, generators `mu2..mu{bound}`.
pub fn ass_minimal(bound: usize) -> Presentation {
    let specs = (2..=bound.max(2))
        .map(|n| GeneratorSpec::new(&format!("mu{n}"), &vec!["a"; n], "a", n as i32 - 2, n as u32 - 2))
        .collect();
    let mut p = Presentation::new("ass-minimal", single("a"), specs).expect("valid generators");
    for n in 3..=bound {
        let img = stasheff_image(&p, "mu", n).expect("built from declared generators");
        p.set_differential(&format!("mu{n}"), img).expect("consistent image");
    }
    p
}

/// The minimal model of the operad of a morphism of associative algebras:
/// `mu_n` on color `a`, `nu_n` on color `b`, `f_n : a^{⊗n} → b`.
pub fn ass_arrow_minimal(bound: usize) -> Presentation {
    let bound = bound.max(2);
    let mut specs = Vec::new();
    for n in 2..=bound {
        specs.push(GeneratorSpec::new(
            &format!("mu{n}"),
            &vec!["a"; n],
            "a",
            n as i32 - 2,
            n as u32 - 2,
        ));
        specs.push(GeneratorSpec::new(
            &format!("nu{n}"),
            &vec!["b"; n],
            "b",
            n as i32 - 2,
            n as u32 - 2,
        ));
    }
    for n in 1..=bound {
        specs.push(GeneratorSpec::new(
            &format!("f{n}"),
            &vec!["a"; n],
            "b",
            n as i32 - 1,
            n as u32 - 1,
        ));
    }
    let colors = ColorSet::new(vec!["a".into(), "b".into()]).expect("two colors");
    let mut p = Presentation::new("ass-arrow-minimal", colors, specs).expect("valid generators");
    for n in 3..=bound {
        let img = stasheff_image(&p, "mu", n).expect("declared");
        p.set_differential(&format!("mu{n}"), img).expect("consistent");
        let img = stasheff_image(&p, "nu", n).expect("declared");
        p.set_differential(&format!("nu{n}"), img).expect("consistent");
    }
    for n in 2..=bound {
        let img = arrow_image(&p, n).expect("declared");
        p.set_differential(&format!("f{n}"), img).expect("consistent");
    }
    p
}

/// `∂f_n = Σ (-1)^{k + η(r)} ν_k(f_{r1} ⊗ ... ⊗ f_{rk}) - Σ (-1)^{n + s(j+1)} f_i ∘_{s+1} μ_j`.
fn arrow_image(p: &Presentation, n: usize) -> Result<FreeOperadElement, OperadError> {
    let fname = |r: usize| format!("f{r}");
    let top = p.gen(&fname(n))?;
    let mut acc = FreeOperadElement::zero(top.spec().inputs.clone(), "b".into(), n as i32 - 2);
    for k in 2..=n {
        let nu = p.element(&format!("nu{k}"))?;
        for r in compositions(n, k) {
            let fs: Vec<FreeOperadElement> = r.iter().map(|&x| p.element(&fname(x))).collect::<Result<_, _>>()?;
            let refs: Vec<&FreeOperadElement> = fs.iter().collect();
            let term = compose_elements(&nu, &refs)?;
            acc = acc.add_scaled(&term, &sign(k as i64 + eta_exponent(&r)))?;
        }
    }
    for i in 1..n {
        let j = n + 1 - i;
        let fi = p.element(&fname(i))?;
        let mj = p.element(&format!("mu{j}"))?;
        for s in 0..i {
            let term = graft(&fi, s + 1, &mj)?;
            acc = acc.add_scaled(&term, &-sign((n + s * (j + 1)) as i64))?;
        }
    }
    Ok(acc)
}

/// Composite of unary generators written left to right as in `fh = f ∘ h`.
pub fn word(p: &Presentation, letters: &[&str]) -> Result<FreeOperadElement, OperadError> {
    let mut it = letters.iter().rev();
    let first = it.next().ok_or_else(|| OperadError::Profile("empty word".into()))?;
    let mut acc = p.element(first)?;
    for l in it {
        acc = graft(&p.element(l)?, 1, &acc)?;
    }
    Ok(acc)
}

/// Resolution of the operad of isomorphisms, generators through `f4`, `g4`.
/// Color `x` is the source of `f`, color `y` its target.
pub fn riso() -> Presentation {
    let specs = vec![
        GeneratorSpec::new("f", &["x"], "y", 0, 0),
        GeneratorSpec::new("g", &["y"], "x", 0, 0),
        GeneratorSpec::new("h", &["x"], "x", 1, 1),
        GeneratorSpec::new("l", &["y"], "y", 1, 1),
        GeneratorSpec::new("f2", &["x"], "y", 2, 2),
        GeneratorSpec::new("g2", &["y"], "x", 2, 2),
        GeneratorSpec::new("f3", &["x"], "x", 3, 3),
        GeneratorSpec::new("g3", &["y"], "y", 3, 3),
        GeneratorSpec::new("f4", &["x"], "y", 4, 4),
        GeneratorSpec::new("g4", &["y"], "x", 4, 4),
    ];
    let colors = ColorSet::new(vec!["x".into(), "y".into()]).expect("two colors");
    let mut p = Presentation::new("riso", colors, specs).expect("valid generators");
    // generator, then signed words of letters
    type Formula<'a> = (&'a str, &'a [(i64, &'a [&'a str])]);
    let formulas: [Formula; 8] = [
        ("h", &[(1, &["g", "f"]), (-1, &[])]),
        ("l", &[(1, &["f", "g"]), (-1, &[])]),
        ("f2", &[(1, &["f", "h"]), (-1, &["l", "f"])]),
        ("g2", &[(1, &["g", "l"]), (-1, &["h", "g"])]),
        ("f3", &[(1, &["g", "f2"]), (-1, &["h", "h"]), (1, &["g2", "f"])]),
        ("g3", &[(1, &["f", "g2"]), (-1, &["l", "l"]), (1, &["f2", "g"])]),
        (
            "f4",
            &[
                (1, &["f", "f3"]),
                (-1, &["l", "f2"]),
                (1, &["f2", "h"]),
                (-1, &["g3", "f"]),
            ],
        ),
        (
            "g4",
            &[
                (1, &["g", "g3"]),
                (-1, &["h", "g2"]),
                (1, &["g2", "l"]),
                (-1, &["f3", "g"]),
            ],
        ),
    ];
    for (name, terms) in formulas {
        let g = p.gen(name).expect("declared").clone();
        let mut acc = FreeOperadElement::zero(g.spec().inputs.clone(), g.spec().output.clone(), g.degree() - 1);
        for (c, letters) in terms {
            let e = if letters.is_empty() {
                FreeOperadElement::identity(&g.spec().output)
            } else {
                word(&p, letters).expect("declared letters")
            };
            acc = acc.add_scaled(&e, &Q::from_integer((*c).into())).expect("same profile");
        }
        p.set_differential(name, acc).expect("consistent");
    }
    p
}

/// Generators `f`, `g` of the operad of isomorphisms; the relations
/// `gf = 1`, `fg = 1` are handled by the normal form oracle in `iso`.
pub fn iso_normal_forms() -> Presentation {
    let specs = vec![
        GeneratorSpec::new("f", &["x"], "y", 0, 0),
        GeneratorSpec::new("g", &["y"], "x", 0, 0),
    ];
    let colors = ColorSet::new(vec!["x".into(), "y".into()]).expect("two colors");
    Presentation::new("iso-normal-forms", colors, specs).expect("valid generators")
}

/// The free operad on one binary generator `nu2` of degree 0, `∂ = 0`.
pub fn free_binary() -> Presentation {
    Presentation::new(
        "free-binary",
        single("a"),
        vec![GeneratorSpec::new("nu2", &["a", "a"], "a", 0, 0)],
    )
    .expect("valid generator")
}

/// Looks up a built-in presentation. `bound` is the largest arity for the
/// Ass-type models and is ignored otherwise.
pub fn builtin(name: &str, bound: usize) -> Result<Presentation, OperadError> {
    match name {
        "ass-minimal" => Ok(ass_minimal(bound)),
        "ass-arrow-minimal" => Ok(ass_arrow_minimal(bound)),
        "riso" => Ok(riso()),
        "iso-normal-forms" => Ok(iso_normal_forms()),
        "free-binary" => Ok(free_binary()),
        other => Err(OperadError::UnknownModel(other.to_string())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub coeff: String,
    pub tree: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialRecord {
    pub generator: String,
    pub image: Vec<TermRecord>,
}

/// JSON form of a presentation. Trees are nested lists `[name, child, ...]`
/// with integer leaves carrying input numbers (from 0); a bare integer is the
/// unit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationFile {
    #[serde(default)]
    pub name: String,
    pub colors: Vec<String>,
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub differential: Vec<DifferentialRecord>,
}

fn encode_planar(t: &Planar, labels: &mut std::slice::Iter<'_, usize>) -> Value {
    match t {
        Planar::Leaf => Value::from(*labels.next().expect("one label per leaf")),
        Planar::Node(g, ch) => {
            let mut v = vec![Value::from(g.name())];
            v.extend(ch.iter().map(|c| encode_planar(c, labels)));
            Value::Array(v)
        }
    }
}

pub fn encode_tree(t: &Tree) -> Value {
    encode_planar(&t.shape, &mut t.labels.iter())
}

pub fn decode_tree(p: &Presentation, v: &Value) -> Result<Tree, OperadError> {
    fn rec(p: &Presentation, v: &Value, labels: &mut Vec<usize>) -> Result<Planar, OperadError> {
        match v {
            Value::Number(n) => {
                let l = n.as_u64().ok_or_else(|| OperadError::Format(format!("bad leaf {n}")))?;
                labels.push(l as usize);
                Ok(Planar::Leaf)
            }
            Value::Array(items) => {
                let name = items
                    .first()
                    .and_then(Value::as_str)
                    .ok_or_else(|| OperadError::Format("a vertex starts with a generator name".into()))?;
                let g = p.gen(name)?.clone();
                if items.len() != g.arity() + 1 {
                    return Err(OperadError::Format(format!("{name} needs {} children", g.arity())));
                }
                let ch = items[1..].iter().map(|c| rec(p, c, labels)).collect::<Result<_, _>>()?;
                Ok(Planar::Node(g, ch))
            }
            other => Err(OperadError::Format(format!("cannot read tree {other}"))),
        }
    }
    let mut labels = Vec::new();
    let shape = rec(p, v, &mut labels)?;
    let mut sorted = labels.clone();
    sorted.sort_unstable();
    if sorted != (0..labels.len()).collect::<Vec<_>>() {
        return Err(OperadError::Format("leaf labels must be a permutation of 0..n".into()));
    }
    if !shape.colors_match() {
        return Err(OperadError::Color("tree edges have mismatched colors".into()));
    }
    Ok(Tree { shape, labels })
}

impl PresentationFile {
    pub fn from_presentation(p: &Presentation) -> Self {
        PresentationFile {
            name: p.name.clone(),
            colors: p.colors.colors().to_vec(),
            generators: p.gens.iter().map(|g| g.spec().clone()).collect(),
            differential: p
                .differential
                .images
                .iter()
                .map(|(name, img)| DifferentialRecord {
                    generator: name.clone(),
                    image: img
                        .terms()
                        .iter()
                        .map(|(t, c)| TermRecord {
                            coeff: format_q(c),
                            tree: encode_tree(t),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_presentation(&self) -> Result<Presentation, OperadError> {
        let mut p = Presentation::new(&self.name, ColorSet::new(self.colors.clone())?, self.generators.clone())?;
        for rec in &self.differential {
            let g = p.gen(&rec.generator)?.clone();
            let mut acc = FreeOperadElement::zero(g.spec().inputs.clone(), g.spec().output.clone(), g.degree() - 1);
            for term in &rec.image {
                let t = decode_tree(&p, &term.tree)?;
                let e = FreeOperadElement::from_tree(t, &g.spec().output);
                let c = parse_q(&term.coeff)?;
                acc = acc.add_scaled(&e, &c)?;
            }
            p.set_differential(&rec.generator, acc)?;
        }
        Ok(p)
    }
}
