use super::AinftyError;

fn pm(e: i64) -> i32 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn sum(degs: &[i32]) -> i64 {
    degs.iter().map(|&d| d as i64).sum()
}

/// Element-level sign of `μ_i(a_1 ⊗ ... ⊗ a_s ⊗ μ_j(...) ⊗ ...)` in the
/// Stasheff identity: `(-1)^{i + s(j+1) + j(|a_1| + ... + |a_s|)}`.
pub fn sign_epsilon(i: usize, j: usize, s: usize, degs: &[i32]) -> Result<i32, AinftyError> {
    if i < 1 || j < 1 || s >= i {
        return Err(AinftyError::Index(format!("need 0 <= s < i, got i={i}, j={j}, s={s}")));
    }
    if degs.len() != s {
        return Err(AinftyError::Index(format!("{} degrees for s={s}", degs.len())));
    }
    Ok(pm(i as i64 + (s * (j + 1)) as i64 + j as i64 * sum(degs)))
}

/// Element-level sign of `ν_k(f_{r_1}(...) ⊗ ... ⊗ f_{r_k}(...))`:
/// `(-1)^{η(r)}` times the Koszul sign of moving each `f_{r_b}` (degree
/// `r_b - 1`) past the arguments of the earlier blocks. `degs` lists the
/// degrees of all `n = Σ r_b` arguments.
pub fn sign_eta(r: &[usize], degs: &[i32]) -> Result<i32, AinftyError> {
    if r.is_empty() || r.contains(&0) {
        return Err(AinftyError::Index(format!("block sizes must be positive, got {r:?}")));
    }
    let n: usize = r.iter().sum();
    if degs.len() != n {
        return Err(AinftyError::Index(format!(
            "{} degrees for blocks summing to {n}",
            degs.len()
        )));
    }
    let mut e = crate::operadcore::eta_exponent(r);
    let mut seen = 0i64;
    let mut pos = 0;
    for &rb in r {
        e += (rb as i64 - 1) * seen;
        seen += sum(&degs[pos..pos + rb]);
        pos += rb;
    }
    Ok(pm(e))
}

/// Element-level sign of `f_i(a_1 ⊗ ... ⊗ a_s ⊗ μ_j(...) ⊗ ...)` in the
/// morphism identity: `(-1)^{n + s(j+1) + j(|a_1| + ... + |a_s|)}`.
pub fn sign_nu(n: usize, j: usize, s: usize, degs: &[i32]) -> Result<i32, AinftyError> {
    if j < 1 || j > n || s > n - j {
        return Err(AinftyError::Index(format!(
            "need 0 <= s <= n-j, got n={n}, j={j}, s={s}"
        )));
    }
    if degs.len() != s {
        return Err(AinftyError::Index(format!("{} degrees for s={s}", degs.len())));
    }
    Ok(pm(n as i64 + (s * (j + 1)) as i64 + j as i64 * sum(degs)))
}

/// Text describing every sign convention in use.
pub fn signs_appendix() -> String {
    let lines = [
        "Grading: homological, differentials of degree -1.",
        "Tensor of maps: (f ⊗ g)(x ⊗ y) = (-1)^{|g||x|} f(x) ⊗ g(y).",
        "Composition of tensors: (⊗C_a)(⊗D_a) = (-1)^{Σ_{a<b} |D_a||C_b|} ⊗ C_a D_a.",
        "Hom differential: [f, ∂] = ∂f - (-1)^{|f|} f (Σ 1^{⊗i} ⊗ ∂ ⊗ 1^{⊗rest}).",
        "A∞ identity, order n: Σ_{i+j=n+1, i,j>=2} Σ_s (-1)^{i+s(j+1)} μ_i(1^s ⊗ μ_j ⊗ 1^{i-s-1}) = [μ_n, ∂].",
        "Morphism identity, order n: Σ_{k>=2} Σ_r (-1)^{k+η(r)} ν_k(f_{r_1} ⊗ ... ⊗ f_{r_k})",
        "    - Σ_{i+j=n+1, j>=2} Σ_s (-1)^{n+s(j+1)} f_i(1^s ⊗ μ_j ⊗ 1^{i-s-1}) = [f_n, ∂],",
        "    η(r) = Σ_{a<b} r_a (r_b + 1).",
        "Composition: (g∘f)_n = Σ_k Σ_{r_1+...+r_k=n} (-1)^{η(r)} g_k(f_{r_1} ⊗ ... ⊗ f_{r_k}).",
        "SDR data: f∇ = 1, ∇f - 1 = [φ, ∂] = ∂φ + φ∂.",
        "Operad differentials use the same signs: ∂μ_n is the A∞ sum above, ∂f_n is the",
        "    morphism sum, so that an action A satisfies A(∂x) = [A(x), ∂].",
    ];
    lines.join("\n")
}
