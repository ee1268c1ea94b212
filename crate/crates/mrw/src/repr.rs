//! Representation theory of `Σ′(W_n)` over `ℚ` and `𝔽_p`: the radical and
//! Loewy length, lifted idempotent families, Cartan matrices, the center and
//! its block decomposition, restriction to smaller ranks, and the dimensions
//! of the projective `KW_n`-modules cut out by the lifted idempotents.
//!
//! Everything here is exact.  The radical is `Ker θ` plus the span of the
//! `x_C` with `p` dividing `|𝒲(C)|`; idempotents are lifted through the
//! nilpotent kernel by the cubic Newton step `e ← 3e² − 2e³`; Cartan entries
//! are corner dimensions `dim E_μ·A·E_λ`; the center is cut out as the joint
//! kernel of the commutator maps `[·, x_C]`.

use crate::algebra::{Alg, Elem};
use crate::charring::CharData;
use crate::comp::{all_compositions, comp_p, conjugacy_type, is_min_coset_rep, Bip, SComp};
use crate::group::Group;
use crate::linalg::{smith_elementary_divisors, FpMat, Matrix, Span};
use crate::scalar::{Field, Scalar};
use num_bigint::BigInt;

/// Indices (into `alg.bips`) of the `p′` bipartitions, all of them when the
/// characteristic is zero.
pub fn p_prime_indices(alg: &Alg) -> Vec<usize> {
    let p = alg.field.characteristic();
    (0..alg.bips.len())
        .filter(|&i| p == 0 || alg.bips[i].is_p_prime(p))
        .collect()
}

// ---------------------------------------------------------------------------
// Radical and Loewy length
// ---------------------------------------------------------------------------

/// An echelonized basis of `Rad KΣ′(W_n) = Ker θ + Σ_{C ∈ Comp_p} K x_C`.
pub fn radical_basis(cd: &CharData) -> Vec<Elem> {
    let alg = cd.alg;
    let mut span = Span::new(alg.dim());
    let mut basis: Vec<Elem> = Vec::new();
    let feed = |e: Elem, span: &mut Span, basis: &mut Vec<Elem>| {
        if span.insert(e.coeffs.clone()) {
            basis.push(e);
        }
    };
    for e in cd.ker_theta_basis() {
        feed(e, &mut span, &mut basis);
    }
    let p = alg.field.characteristic();
    if p > 0 {
        for c in comp_p(alg.g.n, p) {
            feed(alg.x(&c).expect("Comp_p ⊆ Comp"), &mut span, &mut basis);
        }
    }
    basis
}

/// Loewy length of the algebra together with the dimensions of the radical
/// powers `Rad, Rad², …` down to (but excluding) zero.  The length is the
/// least `r` with `Rad^r = 0`, so a semisimple algebra reports `1`.
pub fn loewy_length_algebra(cd: &CharData) -> (usize, Vec<usize>) {
    let alg = cd.alg;
    let gens = radical_basis(cd);
    let mut dims = Vec::new();
    let mut current = gens.clone();
    while !current.is_empty() {
        dims.push(current.len());
        let mut span = Span::new(alg.dim());
        let mut next = Vec::new();
        for g in &gens {
            for b in &current {
                let prod = alg.multiply(g, b);
                if span.insert(prod.coeffs.clone()) {
                    next.push(prod);
                }
            }
        }
        current = next;
    }
    (dims.len() + 1, dims)
}

/// The identity `aⁿ⁻¹ = Σ_i (−1)^i binom(n−1, i−1) x_{C_i}` for
/// `a = x_{(n−1,−1)} − x_{(−1,n−1)}`, where `C_i` has a single `−1` in
/// position `i`.  Also confirms `a ∈ Ker θ`.
pub fn lower_bound_element_check(cd: &CharData) -> crate::Result<bool> {
    let alg = cd.alg;
    let a = alg.lower_bound_element()?;
    let in_kernel = cd.theta(&a).phi.iter().all(|s| s.is_zero());
    let power = alg.power(&a, alg.g.n - 1);
    let closed = alg.lower_bound_power_closed_form()?;
    Ok(in_kernel && power == closed)
}

// ---------------------------------------------------------------------------
// Idempotent lifting
// ---------------------------------------------------------------------------

/// A complete family of orthogonal idempotents `E_λ`, indexed by the `p′`
/// bipartitions in their canonical order, with `θ(E_λ) = e_λ^K`.
pub struct IdempotentFamily {
    /// Bipartition indices, in lift order.
    pub labels: Vec<usize>,
    pub elems: Vec<Elem>,
}

/// Lift the indicator idempotents of the semisimple quotient through the
/// nilpotent ideal `Ker θ + (radical part)`:
///
/// 1. `a_λ = Σ_ν (e_λ^K)_ν x_{ν̂}` is a θ-preimage of `e_λ^K`;
/// 2. with `f = 1 − Σ_{built} E`, the corner element `b = f·a_λ·f` is a
///    quasi-idempotent orthogonal to the finished part of the family;
/// 3. `b ← 3b² − 2b³` squares the distance to idempotency, so it stabilizes
///    within `⌈log₂ LL⌉ + 1` steps, `LL` the Loewy length (`≤ 2n − 1`).
///
/// When `p ∤ |W_n|` the corner `E_λ A E_λ` is checked to be one-dimensional,
/// which pins each `E_λ` as primitive.
pub fn lift_idempotent_family(cd: &CharData) -> crate::Result<IdempotentFamily> {
    let alg = cd.alg;
    let p = alg.field.characteristic();
    let labels = p_prime_indices(alg);
    let ll_bound = if p == 2 { 2 * alg.g.n - 1 } else { alg.g.n };
    let iter_bound = usize::BITS as usize - (ll_bound.max(1) - 1).leading_zeros() as usize + 1;

    let mut elems: Vec<Elem> = Vec::new();
    let mut partial = alg.zero();
    for &li in &labels {
        let target = cd.e_lambda_k(li)?;
        let mut a = alg.zero();
        for (nu, c) in target.phi.iter().enumerate() {
            a.coeffs[cd.hat_idx[nu]] = c.clone();
        }
        let f = alg.sub(&alg.one(), &partial);
        let mut b = alg.multiply(&alg.multiply(&f, &a), &f);
        let three = alg.field.from_i64(3);
        let two = alg.field.from_i64(2);
        let mut steps = 0usize;
        loop {
            let b2 = alg.multiply(&b, &b);
            if b2 == b {
                break;
            }
            steps += 1;
            if steps > iter_bound {
                return Err(crate::Error::Internal(
                    "idempotent lift failed to stabilize (kernel not nilpotent?)".into(),
                ));
            }
            let b3 = alg.multiply(&b2, &b);
            b = alg.sub(&alg.scale(&b2, &three), &alg.scale(&b3, &two));
        }
        if cd.theta(&b).phi != target.phi {
            return Err(crate::Error::Internal("lifted idempotent has wrong θ-image".into()));
        }
        partial = alg.add(&partial, &b);
        elems.push(b);
    }

    // family axioms: orthogonality and completeness
    for (i, ei) in elems.iter().enumerate() {
        for (j, ej) in elems.iter().enumerate() {
            if i != j && !alg.is_zero(&alg.multiply(ei, ej)) {
                return Err(crate::Error::Internal("lifted family is not orthogonal".into()));
            }
        }
    }
    if partial != alg.one() {
        return Err(crate::Error::Internal("lifted family does not sum to 1".into()));
    }

    if p == 0 || alg.g.order() % p as usize != 0 {
        // primitivity via End(𝒫_λ) = E_λ A E_λ ≅ K
        for e in &elems {
            let mut corner = Span::new(alg.dim());
            for c in 0..alg.dim() {
                let v = alg.multiply(&alg.multiply(e, &alg.x_by_index(c)), e);
                corner.insert(v.coeffs);
            }
            if corner.dim() != 1 {
                return Err(crate::Error::Internal(format!(
                    "corner dimension {} ≠ 1: lifted idempotent not primitive",
                    corner.dim()
                )));
            }
        }
    }
    Ok(IdempotentFamily { labels, elems })
}

// ---------------------------------------------------------------------------
// Cartan matrices
// ---------------------------------------------------------------------------

/// Cartan matrix: `entries[λ][μ] = [𝒫_λ : 𝒟_μ] = dim E_μ·A·E_λ`, rows and
/// columns indexed by `labels` (the `p′` bipartitions in canonical order).
pub struct CartanMatrix {
    pub labels: Vec<Bip>,
    pub entries: Vec<Vec<usize>>,
}

impl CartanMatrix {
    pub fn entry_by_labels(&self, row: &Bip, col: &Bip) -> Option<usize> {
        let r = self.labels.iter().position(|b| b == row)?;
        let c = self.labels.iter().position(|b| b == col)?;
        Some(self.entries[r][c])
    }
}

pub fn cartan_matrix(cd: &CharData, fam: &IdempotentFamily) -> crate::Result<CartanMatrix> {
    let alg = cd.alg;
    let labels: Vec<Bip> = fam.labels.iter().map(|&li| alg.bips[li].clone()).collect();
    let k = fam.elems.len();

    // a basis of each left ideal A·E_λ; the corner E_μ·A·E_λ is then the
    // image of that basis under left multiplication by E_μ
    let mut ideal_bases: Vec<Vec<Elem>> = Vec::with_capacity(k);
    for e in &fam.elems {
        let mut span = Span::new(alg.dim());
        let mut basis = Vec::new();
        for c in 0..alg.dim() {
            let v = alg.multiply(&alg.x_by_index(c), e);
            if span.insert(v.coeffs.clone()) {
                basis.push(v);
            }
        }
        ideal_bases.push(basis);
    }

    let mut entries = vec![vec![0usize; k]; k];
    for (lam, basis) in ideal_bases.iter().enumerate() {
        for (mu, emu) in fam.elems.iter().enumerate() {
            let mut span = Span::new(alg.dim());
            for b in basis {
                span.insert(alg.multiply(emu, b).coeffs);
            }
            entries[lam][mu] = span.dim();
        }
    }
    Ok(CartanMatrix { labels, entries })
}

/// `Cartan(KΣ′) = ᵗD · Cartan(ℚΣ′) · D` with `D` the decomposition matrix
/// `D[λ][μ] = δ_{λ_{p′}, μ}` (rows all of `Bip(n)`, columns `Bip_p′(n)`).
pub fn cartan_cross_check(
    g: &Group,
    cart_p: &CartanMatrix,
    cart_q: &CartanMatrix,
    p: u64,
) -> crate::Result<()> {
    let to_modular: Vec<usize> = cart_q
        .labels
        .iter()
        .map(|b| {
            let pp = b.p_prime_part(p, g);
            cart_p
                .labels
                .iter()
                .position(|m| *m == pp)
                .ok_or_else(|| crate::Error::Internal(format!("λ_{{p′}} of {b} is not p′")))
        })
        .collect::<crate::Result<_>>()?;
    let k = cart_p.labels.len();
    let mut product = vec![vec![0usize; k]; k];
    for (l, row) in cart_q.entries.iter().enumerate() {
        for (m, &v) in row.iter().enumerate() {
            product[to_modular[l]][to_modular[m]] += v;
        }
    }
    if product == cart_p.entries {
        Ok(())
    } else {
        Err(crate::Error::Verification(
            "Cartan matrix disagrees with ᵗD·Cartan(ℚ)·D".into(),
        ))
    }
}

/// Structural facts about a characteristic-zero Cartan matrix: diagonal of
/// ones, support only where `ℓ(μ) > ℓ(λ)`, constant `ℓ⁻` parity on connected
/// components, and (when the next rank is supplied) the embedding
/// `Cartan(n) ⊆ Cartan(n+1)` along `τ_n`.
pub struct CartanProps {
    /// Connected components of the symmetrized support graph, each a sorted
    /// list of row indices.
    pub components: Vec<Vec<usize>>,
}

pub fn cartan_properties(
    cart: &CartanMatrix,
    next: Option<&CartanMatrix>,
) -> crate::Result<CartanProps> {
    let k = cart.labels.len();
    for i in 0..k {
        if cart.entries[i][i] != 1 {
            return Err(crate::Error::Verification(format!(
                "Cartan diagonal entry at {} is {}",
                cart.labels[i], cart.entries[i][i]
            )));
        }
        for j in 0..k {
            if i != j && cart.entries[i][j] != 0 {
                let (li, lj) = (&cart.labels[i], &cart.labels[j]);
                if lj.len() <= li.len() {
                    return Err(crate::Error::Verification(format!(
                        "support at ({li}, {lj}) violates ℓ(μ) > ℓ(λ)"
                    )));
                }
                if lj.len_minus() % 2 != li.len_minus() % 2 {
                    return Err(crate::Error::Verification(format!(
                        "support at ({li}, {lj}) violates ℓ⁻ parity"
                    )));
                }
            }
        }
    }

    if let Some(big) = next {
        for i in 0..k {
            for j in 0..k {
                let ti = cart.labels[i].tau();
                let tj = cart.labels[j].tau();
                let Some(v) = big.entry_by_labels(&ti, &tj) else {
                    return Err(crate::Error::Verification(format!(
                        "τ image ({ti}, {tj}) missing from the larger Cartan matrix"
                    )));
                };
                if v != cart.entries[i][j] {
                    return Err(crate::Error::Verification(format!(
                        "Cartan(n) entry at ({}, {}) is {} but its τ image is {v}",
                        cart.labels[i], cart.labels[j], cart.entries[i][j]
                    )));
                }
            }
        }
    }

    Ok(CartanProps { components: support_components(&cart.entries) })
}

fn support_components(entries: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let k = entries.len();
    let mut seen = vec![false; k];
    let mut comps = Vec::new();
    for start in 0..k {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start];
        let mut comp = Vec::new();
        seen[start] = true;
        while let Some(i) = stack.pop() {
            comp.push(i);
            for j in 0..k {
                if !seen[j] && (entries[i][j] != 0 || entries[j][i] != 0) {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

// ---------------------------------------------------------------------------
// Center and blocks
// ---------------------------------------------------------------------------

/// An echelonized basis of the center, computed as the joint kernel of the
/// commutator maps `z ↦ x_C z − z x_C` over all basis elements.  The kernel
/// is intersected incrementally, so after the first one or two generators
/// only a handful of candidate vectors remain.
pub fn center_basis(alg: &Alg) -> Vec<Elem> {
    let d = alg.dim();
    // impose mixed-sign compositions first: their centralizers are smallest,
    // so the intersection collapses almost immediately
    let mut order: Vec<usize> = (0..d).collect();
    let mixed = |c: &SComp| c.0.iter().any(|&p| p > 0) && c.0.iter().any(|&p| p < 0);
    order.sort_by_key(|&i| {
        let c = &alg.comps[i];
        (std::cmp::Reverse(mixed(c) as usize), std::cmp::Reverse(c.len()))
    });

    let mut basis: Vec<Elem> = (0..d).map(|i| alg.x_by_index(i)).collect();
    for &ci in &order {
        if basis.is_empty() {
            break;
        }
        let xc = alg.x_by_index(ci);
        let mut m = Matrix::zero(alg.field, d, basis.len());
        let mut all_zero = true;
        for (j, b) in basis.iter().enumerate() {
            let im = alg.sub(&alg.multiply(&xc, b), &alg.multiply(b, &xc));
            for (i, s) in im.coeffs.into_iter().enumerate() {
                if !s.is_zero() {
                    all_zero = false;
                    m.set(i, j, s);
                }
            }
        }
        if all_zero {
            continue;
        }
        let ker = m.kernel();
        basis = ker
            .into_iter()
            .map(|coefs| {
                let mut acc = alg.zero();
                for (j, c) in coefs.iter().enumerate() {
                    if !c.is_zero() {
                        acc = alg.add(&acc, &alg.scale(&basis[j], c));
                    }
                }
                acc
            })
            .collect();
    }

    let mut span = Span::new(d);
    let mut out = Vec::new();
    for b in basis {
        if span.insert(b.coeffs.clone()) {
            out.push(b);
        }
    }
    out
}

/// Block decomposition read off the Cartan matrix, valid when `p ∤ |W_n|`:
/// the partition of the simple labels into connected components, and the
/// primitive central idempotents `F_b = Σ_{λ ∈ b} E_λ`.
pub struct Blocks {
    /// Per block, sorted positions into the Cartan labels.
    pub components: Vec<Vec<usize>>,
    pub idempotents: Vec<Elem>,
}

pub fn blocks(
    cd: &CharData,
    fam: &IdempotentFamily,
    cart: &CartanMatrix,
) -> crate::Result<Blocks> {
    let alg = cd.alg;
    let p = alg.field.characteristic();
    if p != 0 && alg.g.order() % p as usize == 0 {
        return Err(crate::Error::BadCharacteristic(format!(
            "block idempotents via Cartan connectivity need p ∤ |W_n|; p = {p} divides {}",
            alg.g.order()
        )));
    }
    let components = support_components(&cart.entries);
    let mut idempotents = Vec::with_capacity(components.len());
    for comp in &components {
        let mut f = alg.zero();
        for &pos in comp {
            f = alg.add(&f, &fam.elems[pos]);
        }
        if alg.multiply(&f, &f) != f {
            return Err(crate::Error::Verification("block sum is not idempotent".into()));
        }
        for c in 0..alg.dim() {
            let xc = alg.x_by_index(c);
            if alg.multiply(&f, &xc) != alg.multiply(&xc, &f) {
                return Err(crate::Error::Verification("block idempotent is not central".into()));
            }
        }
        idempotents.push(f);
    }
    for (i, fi) in idempotents.iter().enumerate() {
        for fj in idempotents.iter().skip(i + 1) {
            if !alg.is_zero(&alg.multiply(fi, fj)) {
                return Err(crate::Error::Verification("block idempotents not orthogonal".into()));
            }
        }
    }
    let total = idempotents.iter().fold(alg.zero(), |acc, f| alg.add(&acc, f));
    if total != alg.one() {
        return Err(crate::Error::Verification("block idempotents do not sum to 1".into()));
    }
    if center_basis(alg).len() != components.len() {
        return Err(crate::Error::Verification(
            "number of blocks differs from the center dimension".into(),
        ));
    }
    Ok(Blocks { components, idempotents })
}

// ---------------------------------------------------------------------------
// Restriction
// ---------------------------------------------------------------------------

/// The matrix of `Res_D : Σ′(W_n) → Σ′(W_D)`,
/// `Res_D x_C = Σ_{d ∈ X_CD} x^D_{^{d⁻¹}C ∩ D}`, in integer form (the same
/// matrix works over every coefficient ring).  `targets` lists the
/// compositions `E ⊂ D` indexing the basis `x^D_E` of `Σ′(W_D)`; for the
/// rank-lowering maps `Res_k^n` they are relabeled as compositions of `k`.
pub struct Restriction {
    pub d: SComp,
    pub targets: Vec<SComp>,
    /// `matrix[target][comp]` = multiplicity of `x^D_target` in `Res_D x_comp`.
    pub matrix: Vec<Vec<i64>>,
}

pub fn restriction(alg: &Alg, dcomp: &SComp) -> crate::Result<Restriction> {
    if !dcomp.is_semi_positive() {
        return Err(crate::Error::BadComposition(format!(
            "restriction needs a semi-positive composition, got {dcomp}"
        )));
    }
    alg.comp_index(dcomp)?;
    let targets: Vec<SComp> = alg.comps.iter().filter(|e| e.subset(dcomp)).cloned().collect();
    let tindex = |e: &SComp| targets.iter().position(|t| t == e);
    let mut matrix = vec![vec![0i64; alg.dim()]; targets.len()];
    for (cj, c) in alg.comps.iter().enumerate() {
        for d in alg.cosets.double(c, dcomp) {
            let e = alg.cosets.intersection_composition(
                dcomp,
                alg.g.inverse_idx(d),
                c,
            )?;
            let ti = tindex(&e).ok_or_else(|| {
                crate::Error::Internal(format!("intersection {e} escapes the targets of {dcomp}"))
            })?;
            matrix[ti][cj] += 1;
        }
    }
    Ok(Restriction { d: dcomp.clone(), targets, matrix })
}

/// `Res_k^n` via `D = (k, −1, …, −1)`, rows relabeled as `Comp(k)` in
/// canonical order (dropping the trailing `−1` blocks).
pub fn res_k_n(alg: &Alg, k: usize) -> crate::Result<Restriction> {
    let n = alg.g.n;
    if k == 0 || k > n {
        return Err(crate::Error::BadComposition(format!("no restriction from rank {n} to {k}")));
    }
    let mut parts = vec![k as i32];
    parts.extend(std::iter::repeat(-1).take(n - k));
    let d = SComp(parts);
    let raw = restriction(alg, &d)?;
    let comps_k = all_compositions(k);
    let strip = |e: &SComp| -> SComp {
        let keep = e.0.len() - (n - k);
        debug_assert!(e.0[keep..].iter().all(|&q| q == -1));
        SComp(e.0[..keep].to_vec())
    };
    let mut matrix = vec![Vec::new(); comps_k.len()];
    for (ti, e) in raw.targets.iter().enumerate() {
        let small = strip(e);
        let pos = comps_k
            .iter()
            .position(|c| *c == small)
            .ok_or_else(|| crate::Error::Internal(format!("{small} is not a composition of {k}")))?;
        matrix[pos] = raw.matrix[ti].clone();
    }
    if matrix.iter().any(|r| r.is_empty()) {
        return Err(crate::Error::Internal("restriction targets do not cover Comp(k)".into()));
    }
    Ok(Restriction { d, targets: comps_k, matrix })
}

/// Exact rank of the restriction matrix over `ℚ`.
pub fn restriction_rank_q(r: &Restriction) -> usize {
    let rows = r
        .matrix
        .iter()
        .map(|row| row.iter().map(|&v| Field::Q.from_i64(v)).collect())
        .collect();
    Matrix::from_rows(Field::Q, rows).rank()
}

/// Surjectivity over `ℤ`: all elementary divisors equal to 1.
pub fn restriction_smith_all_ones(r: &Restriction) -> bool {
    let rows: Vec<Vec<BigInt>> = r
        .matrix
        .iter()
        .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let divisors = smith_elementary_divisors(&rows);
    divisors.len() == r.targets.len() && divisors.iter().all(|d| *d == BigInt::from(1))
}

/// Group-algebra vector of the embedded basis element `x^D_E ∈ KW_D ⊆ KW_n`:
/// the indicator sum over `X_E ∩ W_D`, a full set of coset representatives
/// of `W_E` inside `W_D`.
fn embed_target(alg: &Alg, dcomp: &SComp, e: &SComp) -> Vec<Scalar> {
    let mut in_d = vec![false; alg.g.order()];
    for &u in alg.cosets.members(dcomp).iter() {
        in_d[u as usize] = true;
    }
    let mut v = vec![alg.field.zero(); alg.g.order()];
    for &u in alg.cosets.reps(e).iter() {
        if in_d[u as usize] {
            v[u as usize] = alg.field.one();
        }
    }
    v
}

fn conv_group(alg: &Alg, va: &[Scalar], vb: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![alg.field.zero(); va.len()];
    for (u, cu) in va.iter().enumerate() {
        if cu.is_zero() {
            continue;
        }
        for (v, cv) in vb.iter().enumerate() {
            if cv.is_zero() {
                continue;
            }
            let w = alg.g.compose_idx(u as u32, v as u32) as usize;
            out[w] = out[w].add(&cu.mul(cv));
        }
    }
    out
}

/// Relative distinguished double representatives
/// `X^{W_D}_{EC} = {d ∈ W_D : d⁻¹(Δ_E) > 0 and d(Δ_C) > 0}`.
fn relative_double(alg: &Alg, e: &SComp, c: &SComp, dcomp: &SComp) -> Vec<u32> {
    let n = alg.g.n;
    let de = e.simple_roots(n);
    let dc = c.simple_roots(n);
    alg.cosets
        .members(dcomp)
        .iter()
        .copied()
        .filter(|&u| {
            let w = &alg.g.elems()[u as usize];
            is_min_coset_rep(w, &dc) && is_min_coset_rep(&w.inverse(), &de)
        })
        .collect()
}

/// The relative morphism `Res_C^D : Σ′(W_D) → Σ′(W_C)` for nested
/// semi-positive `C ⊂ D`, computed entirely inside `W_D` by the same
/// double-coset formula.
pub fn relative_restriction(
    alg: &Alg,
    ccomp: &SComp,
    dcomp: &SComp,
    res_d: &Restriction,
    res_c: &Restriction,
) -> crate::Result<Vec<Vec<i64>>> {
    if !ccomp.subset(dcomp) {
        return Err(crate::Error::BadComposition(format!("{ccomp} is not contained in {dcomp}")));
    }
    let mut rel = vec![vec![0i64; res_d.targets.len()]; res_c.targets.len()];
    for (ej, e) in res_d.targets.iter().enumerate() {
        for d in relative_double(alg, e, ccomp, dcomp) {
            let f =
                alg.cosets.intersection_composition(ccomp, alg.g.inverse_idx(d), e)?;
            let fi = res_c
                .targets
                .iter()
                .position(|t| *t == f)
                .ok_or_else(|| crate::Error::Internal(format!("{f} escapes the targets of {ccomp}")))?;
            rel[fi][ej] += 1;
        }
    }
    Ok(rel)
}

/// Verification report for Prop-5.2-style laws of a single `Res_D`.
pub struct RestrictionLaws {
    /// `x_D · Res_D(x_C) = x_C · x_D` in the group algebra, for every `C`.
    pub law_a: bool,
    /// Mackey character compatibility: for every `C` and every `w ∈ W_D`, the
    /// fixed points of `w` on `W_n/W_C` match `Σ_E m_{EC} ·` fixed points on
    /// `W_D/W_E`.
    pub law_d: bool,
    pub failures: Vec<String>,
}

pub fn restriction_laws(alg: &Alg, res: &Restriction) -> crate::Result<RestrictionLaws> {
    let dcomp = &res.d;
    let mut failures = Vec::new();

    // embedded group-algebra vectors of the targets, computed once
    let embeds: Vec<Vec<Scalar>> =
        res.targets.iter().map(|e| embed_target(alg, dcomp, e)).collect();

    let xd = alg.x(dcomp)?;
    let vd = alg.group_vector(&xd);
    let mut law_a = true;
    for (cj, c) in alg.comps.iter().enumerate() {
        let mut image = vec![alg.field.zero(); alg.g.order()];
        for (ti, row) in res.matrix.iter().enumerate() {
            let m = row[cj];
            if m != 0 {
                let s = alg.field.from_i64(m);
                for (u, x) in embeds[ti].iter().enumerate() {
                    if !x.is_zero() {
                        image[u] = image[u].add(&x.mul(&s));
                    }
                }
            }
        }
        let lhs = conv_group(alg, &vd, &image);
        let rhs = alg.group_vector(&alg.multiply(&alg.x_by_index(cj), &xd));
        if lhs != rhs {
            law_a = false;
            failures.push(format!("law (a) fails at x_{c}"));
        }
    }

    // Mackey fixed-point counts, computed straight from the group action
    let g = alg.g;
    let members_d = alg.cosets.members(dcomp);
    let mut law_d = true;
    for (cj, c) in alg.comps.iter().enumerate() {
        let xc = alg.cosets.reps(c);
        for &w in members_d.iter() {
            let mut lhs = 0i64;
            for &u in xc.iter() {
                let t = g.compose_idx(g.compose_idx(g.inverse_idx(u), w), u);
                if c.contains_perm(&g.elems()[t as usize]) {
                    lhs += 1;
                }
            }
            let mut rhs = 0i64;
            for (ti, e) in res.targets.iter().enumerate() {
                let m = res.matrix[ti][cj];
                if m == 0 {
                    continue;
                }
                let mut fixed = 0i64;
                for &v in alg.cosets.reps(e).iter() {
                    if !members_d.contains(&v) {
                        continue;
                    }
                    let t = g.compose_idx(g.compose_idx(g.inverse_idx(v), w), v);
                    if e.contains_perm(&g.elems()[t as usize]) {
                        fixed += 1;
                    }
                }
                rhs += m * fixed;
            }
            if lhs != rhs {
                law_d = false;
                failures.push(format!("law (d) fails at x_{c}, group element {w}"));
            }
        }
    }

    Ok(RestrictionLaws { law_a, law_d, failures })
}

/// `π_{τ^{n−k}(λ)} = π_λ ∘ Res_k^n` (character composition law for the
/// rank-lowering maps), checked on every basis element.
pub fn restriction_pi_law(cd_n: &CharData, cd_k: &CharData) -> crate::Result<bool> {
    let n = cd_n.alg.g.n;
    let k = cd_k.alg.g.n;
    let res = res_k_n(cd_n.alg, k)?;
    for (lk, bip_k) in cd_k.alg.bips.iter().enumerate() {
        let mut tau = bip_k.clone();
        for _ in 0..n - k {
            tau = tau.tau();
        }
        let ln = cd_n
            .alg
            .bips
            .iter()
            .position(|b| *b == tau)
            .ok_or_else(|| crate::Error::Internal(format!("τ image {tau} missing")))?;
        for cj in 0..cd_n.alg.dim() {
            let lhs = cd_n.pi[ln][cj];
            let rhs: i64 = res
                .matrix
                .iter()
                .enumerate()
                .map(|(ti, row)| row[cj] * cd_k.pi[lk][ti])
                .sum();
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Projective dimensions inside the group algebra
// ---------------------------------------------------------------------------

/// Dimensions `dim_K KW_n·E_λ` (exact rank of the orbit `{w·E_λ}`), with the
/// predicted values: the conjugacy class size `|C(λ)|` over `ℚ`, and the
/// `p′`-section size `|C_{p′}(λ)| = Σ_{μ_{p′} = λ} |C(μ)|` over `𝔽_p`.
pub struct ProjectiveDims {
    pub labels: Vec<usize>,
    pub dims: Vec<usize>,
    pub expected: Vec<usize>,
}

pub fn projective_dims_in_group_algebra(
    cd: &CharData,
    fam: &IdempotentFamily,
) -> crate::Result<ProjectiveDims> {
    let alg = cd.alg;
    let g = alg.g;
    let p = alg.field.characteristic();

    let mut class_size = vec![0usize; alg.bips.len()];
    for u in 0..g.order() as u32 {
        let b = conjugacy_type(g, u);
        let i = alg
            .bips
            .iter()
            .position(|x| *x == b)
            .ok_or_else(|| crate::Error::Internal(format!("unknown conjugacy type {b}")))?;
        class_size[i] += 1;
    }

    let mut dims = Vec::new();
    let mut expected = Vec::new();
    for (pos, &li) in fam.labels.iter().enumerate() {
        let v = alg.group_vector(&fam.elems[pos]);
        let dim = match alg.field {
            Field::Q => {
                let mut rows = Vec::with_capacity(g.order());
                for w in 0..g.order() as u32 {
                    let mut row = vec![Field::Q.zero(); g.order()];
                    for (u, s) in v.iter().enumerate() {
                        if !s.is_zero() {
                            row[g.compose_idx(w, u as u32) as usize] = s.clone();
                        }
                    }
                    rows.push(row);
                }
                Matrix::from_rows(Field::Q, rows).rank()
            }
            Field::Fp(q) => {
                let mut m = FpMat::zero(q, g.order(), g.order());
                for w in 0..g.order() as u32 {
                    for (u, s) in v.iter().enumerate() {
                        let Scalar::Fp { v: sv, .. } = s else { unreachable!() };
                        if *sv != 0 {
                            m.set(w as usize, g.compose_idx(w, u as u32) as usize, *sv);
                        }
                    }
                }
                m.rank()
            }
        };
        dims.push(dim);
        let want = if p == 0 {
            class_size[li]
        } else {
            alg.bips
                .iter()
                .enumerate()
                .filter(|(_, m)| m.p_prime_part(p, g) == alg.bips[li])
                .map(|(mi, _)| class_size[mi])
                .sum()
        };
        expected.push(want);
    }
    Ok(ProjectiveDims { labels: fam.labels.clone(), dims, expected })
}

/// Trace of left multiplication by each `x_C` on the full group algebra —
/// `|W_n|` for every `C`, computed literally from the multiplication table.
pub fn group_trace_check(alg: &Alg) -> bool {
    let g = alg.g;
    (0..alg.dim()).all(|ci| {
        let mut tr = 0usize;
        for u in 0..g.order() as u32 {
            for &v in alg.support(ci).iter() {
                if g.compose_idx(v, u) == u {
                    tr += 1;
                }
            }
        }
        tr == g.order()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charring::CharData;
    use crate::comp::all_bipartitions;

    fn ctx(n: usize, field: Field) -> (&'static Group, Field) {
        let g: &'static Group = Box::leak(Box::new(Group::new(n)));
        (g, field)
    }

    fn count_p_prime(n: usize, p: u64) -> usize {
        all_bipartitions(n)
            .iter()
            .filter(|b| p == 0 || b.is_p_prime(p))
            .count()
    }

    // dim Rad = |Comp(n)| − |Bip_p′(n)|  (radical theorem)
    #[test]
    fn radical_dimension_formula() {
        for n in 1..=3 {
            for p in [0u64, 2, 3, 5] {
                let (g, f) = ctx(n, Field::from_characteristic(p).unwrap());
                let alg = Alg::new(g, f).unwrap();
                let cd = CharData::new(&alg).unwrap();
                let rad = radical_basis(&cd);
                assert_eq!(
                    rad.len(),
                    alg.comps.len() - count_p_prime(n, p),
                    "n={n} p={p}"
                );
            }
        }
        // the two examples spelled out above: n=2 gives 1 over ℚ, 5 over 𝔽₂
        assert_eq!(6 - count_p_prime(2, 0), 1);
        assert_eq!(6 - count_p_prime(2, 2), 5);
    }

    // Rad is a two-sided nilpotent ideal and the p′ characters kill it
    #[test]
    fn radical_is_nilpotent_ideal_killed_by_characters() {
        for (n, p) in [(2usize, 0u64), (2, 2), (3, 0), (3, 3)] {
            let (g, f) = ctx(n, Field::from_characteristic(p).unwrap());
            let alg = Alg::new(g, f).unwrap();
            let cd = CharData::new(&alg).unwrap();
            let rad = radical_basis(&cd);
            let mut span = Span::new(alg.dim());
            for r in &rad {
                span.insert(r.coeffs.clone());
            }
            for r in &rad {
                for c in 0..alg.dim() {
                    let xc = alg.x_by_index(c);
                    assert!(span.contains(&alg.multiply(&xc, r).coeffs));
                    assert!(span.contains(&alg.multiply(r, &xc).coeffs));
                }
                for &li in &p_prime_indices(&alg) {
                    assert!(cd.pi_lambda(li, r).is_zero());
                }
            }
            let (ll, _) = loewy_length_algebra(&cd);
            let mut power = rad.clone();
            for _ in 1..ll {
                let mut next_span = Span::new(alg.dim());
                let mut next = Vec::new();
                for a in &rad {
                    for b in &power {
                        let prod = alg.multiply(a, b);
                        if next_span.insert(prod.coeffs.clone()) {
                            next.push(prod);
                        }
                    }
                }
                power = next;
            }
            assert!(power.is_empty(), "Rad^LL ≠ 0 at n={n} p={p}");
        }
    }

    // Loewy lengths: n for p ∉ {2}, the computed ladder 2,3,5 for p=2
    #[test]
    fn loewy_lengths_small() {
        for n in 1..=3 {
            for p in [0u64, 3, 5] {
                let (g, f) = ctx(n, Field::from_characteristic(p).unwrap());
                let alg = Alg::new(g, f).unwrap();
                let cd = CharData::new(&alg).unwrap();
                assert_eq!(loewy_length_algebra(&cd).0, n, "n={n} p={p}");
            }
        }
        for (n, want) in [(1usize, 2usize), (2, 3), (3, 5)] {
            let (g, f) = ctx(n, Field::Fp(2));
            let alg = Alg::new(g, f).unwrap();
            let cd = CharData::new(&alg).unwrap();
            assert_eq!(loewy_length_algebra(&cd).0, want, "p=2 n={n}");
        }
    }

    #[test]
    fn lower_bound_identity_small() {
        for n in 2..=4 {
            let (g, f) = ctx(n, Field::Q);
            let alg = Alg::new(g, f).unwrap();
            let cd = CharData::new(&alg).unwrap();
            assert!(lower_bound_element_check(&cd).unwrap(), "n={n}");
        }
    }

    #[test]
    fn lifted_family_axioms() {
        for (n, p) in [(2usize, 0u64), (2, 2), (2, 3), (3, 0), (3, 2), (3, 3)] {
            let (g, f) = ctx(n, Field::from_characteristic(p).unwrap());
            let alg = Alg::new(g, f).unwrap();
            let cd = CharData::new(&alg).unwrap();
            let fam = lift_idempotent_family(&cd).unwrap();
            assert_eq!(fam.elems.len(), count_p_prime(n, p));
            for (pos, e) in fam.elems.iter().enumerate() {
                assert_eq!(alg.multiply(e, e), *e, "E² = E at n={n} p={p}");
                let target = cd.e_lambda_k(fam.labels[pos]).unwrap();
                assert_eq!(cd.theta(e).phi, target.phi);
            }
        }
    }

    // n=2, p=2: the single p′ bipartition forces E = 1
    #[test]
    fn lift_n2_mod2_is_unit() {
        let (g, f) = ctx(2, Field::Fp(2));
        let alg = Alg::new(g, f).unwrap();
        let cd = CharData::new(&alg).unwrap();
        let fam = lift_idempotent_family(&cd).unwrap();
        assert_eq!(fam.elems.len(), 1);
        assert_eq!(fam.elems[0], alg.one());
    }

    // the rank-2 Cartan matrix: identity except a single 1 at (∅;2, 1;1)
    #[test]
    fn cartan_n2_rational() {
        let (g, f) = ctx(2, Field::Q);
        let alg = Alg::new(g, f).unwrap();
        let cd = CharData::new(&alg).unwrap();
        let fam = lift_idempotent_family(&cd).unwrap();
        let cart = cartan_matrix(&cd, &fam).unwrap();
        let b = |s: &str| Bip::parse(s).unwrap();
        for (i, bi) in cart.labels.iter().enumerate() {
            for (j, bj) in cart.labels.iter().enumerate() {
                let want = if i == j {
                    1
                } else if *bi == b(";2") && *bj == b("1;1") {
                    1
                } else {
                    0
                };
                assert_eq!(cart.entries[i][j], want, "({bi}, {bj})");
            }
        }
    }

    // n=2, p=2: the 1×1 Cartan matrix [6] via both routes
    #[test]
    fn cartan_n2_mod2() {
        let (g, _) = ctx(2, Field::Q);
        let algq = Alg::new(g, Field::Q).unwrap();
        let cdq = CharData::new(&algq).unwrap();
        let famq = lift_idempotent_family(&cdq).unwrap();
        let cq = cartan_matrix(&cdq, &famq).unwrap();

        let alg2 = Alg::new(g, Field::Fp(2)).unwrap();
        let cd2 = CharData::new(&alg2).unwrap();
        let fam2 = lift_idempotent_family(&cd2).unwrap();
        let c2 = cartan_matrix(&cd2, &fam2).unwrap();
        assert_eq!(c2.entries, vec![vec![6]]);
        cartan_cross_check(g, &c2, &cq, 2).unwrap();
    }

    #[test]
    fn cartan_cross_checks_n3() {
        let (g, _) = ctx(3, Field::Q);
        let algq = Alg::new(g, Field::Q).unwrap();
        let cdq = CharData::new(&algq).unwrap();
        let famq = lift_idempotent_family(&cdq).unwrap();
        let cq = cartan_matrix(&cdq, &famq).unwrap();
        for p in [2u64, 3] {
            let algp = Alg::new(g, Field::Fp(p)).unwrap();
            let cdp = CharData::new(&algp).unwrap();
            let famp = lift_idempotent_family(&cdp).unwrap();
            let cp = cartan_matrix(&cdp, &famp).unwrap();
            cartan_cross_check(g, &cp, &cq, p).unwrap();
        }
    }

    // block structure of the rank-3 Cartan matrix: components of sizes 4,4,1,1
    #[test]
    fn cartan_properties_and_blocks_n3() {
        let (g2, _) = ctx(2, Field::Q);
        let (g3, _) = ctx(3, Field::Q);
        let alg2 = Alg::new(g2, Field::Q).unwrap();
        let alg3 = Alg::new(g3, Field::Q).unwrap();
        let cd2 = CharData::new(&alg2).unwrap();
        let cd3 = CharData::new(&alg3).unwrap();
        let fam2 = lift_idempotent_family(&cd2).unwrap();
        let fam3 = lift_idempotent_family(&cd3).unwrap();
        let c2 = cartan_matrix(&cd2, &fam2).unwrap();
        let c3 = cartan_matrix(&cd3, &fam3).unwrap();
        let props = cartan_properties(&c2, Some(&c3)).unwrap();
        let mut sizes2: Vec<usize> = props.components.iter().map(|c| c.len()).collect();
        sizes2.sort_unstable();
        assert_eq!(sizes2, vec![1, 1, 1, 2], "n=2 parity blocks as printed");
        let props3 = cartan_properties(&c3, None).unwrap();
        let mut sizes3: Vec<usize> = props3.components.iter().map(|c| c.len()).collect();
        sizes3.sort_unstable();
        assert_eq!(sizes3, vec![1, 1, 4, 4]);

        let blocks3 = blocks(&cd3, &fam3, &c3).unwrap();
        assert_eq!(blocks3.components.len(), 4);
    }

    // the printed primitive central idempotents of rank 2
    #[test]
    fn blocks_n2_match_printed_idempotents() {
        let (g, _) = ctx(2, Field::Q);
        let alg = Alg::new(g, Field::Q).unwrap();
        let cd = CharData::new(&alg).unwrap();
        let fam = lift_idempotent_family(&cd).unwrap();
        let cart = cartan_matrix(&cd, &fam).unwrap();
        let bl = blocks(&cd, &fam, &cart).unwrap();
        assert_eq!(bl.components.len(), 4);
        // F = ½x′_{(1,1)} and F = ⅛x′_{(−1,−1)} appear among them
        let half_x11 = alg.scale(
            &alg.x_prime(&SComp(vec![1, 1])).unwrap(),
            &Field::Q.ratio(1, 2),
        );
        let eighth_xm = alg.scale(
            &alg.x_prime(&SComp(vec![-1, -1])).unwrap(),
            &Field::Q.ratio(1, 8),
        );
        assert!(bl.idempotents.contains(&half_x11));
        assert!(bl.idempotents.contains(&eighth_xm));
    }

    #[test]
    fn blocks_refuse_modular_characteristic() {
        let (g, f) = ctx(2, Field::Fp(2));
        let alg = Alg::new(g, f).unwrap();
        let cd = CharData::new(&alg).unwrap();
        let fam = lift_idempotent_family(&cd).unwrap();
        let cart = cartan_matrix(&cd, &fam).unwrap();
        assert!(matches!(
            blocks(&cd, &fam, &cart),
            Err(crate::Error::BadCharacteristic(_))
        ));
    }

    // centre dimensions 2, 4, 4 in every characteristic tested
    #[test]
    fn center_dimensions_small() {
        for n in 1..=3 {
            for p in [0u64, 2, 3] {
                let (g, f) = ctx(n, Field::from_characteristic(p).unwrap());
                let alg = Alg::new(g, f).unwrap();
                let z = center_basis(&alg);
                let want = if n == 1 { 2 } else { 4 };
                assert_eq!(z.len(), want, "n={n} p={p}");
                // every basis vector commutes with every x_C
                for b in &z {
                    for c in 0..alg.dim() {
                        let xc = alg.x_by_index(c);
                        assert_eq!(alg.multiply(&xc, b), alg.multiply(b, &xc));
                    }
                }
            }
        }
    }

    #[test]
    fn restriction_by_full_composition_is_identity() {
        let (g, f) = ctx(3, Field::Q);
        let alg = Alg::new(g, f).unwrap();
        let r = res_k_n(&alg, 3).unwrap();
        for (i, row) in r.matrix.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert_eq!(v, i64::from(i == j));
            }
        }
    }

    #[test]
    fn restriction_rejects_negative_blocks() {
        let (g, f) = ctx(2, Field::Q);
        let alg = Alg::new(g, f).unwrap();
        assert!(matches!(
            restriction(&alg, &SComp(vec![-2])),
            Err(crate::Error::BadComposition(_))
        ));
    }

    // Prop 5.4 / Remark 5.5 at rank 3: full rank over ℚ and over ℤ
    #[test]
    fn restriction_surjectivity_n3() {
        let (g, f) = ctx(3, Field::Q);
        let alg = Alg::new(g, f).unwrap();
        for k in 1..=2usize {
            let r = res_k_n(&alg, k).unwrap();
            assert_eq!(restriction_rank_q(&r), all_compositions(k).len(), "k={k}");
            assert!(restriction_smith_all_ones(&r), "k={k}");
        }
    }

    #[test]
    fn restriction_laws_n3() {
        let (g, f) = ctx(3, Field::Q);
        let alg = Alg::new(g, f).unwrap();
        let d = SComp(vec![2, -1]);
        let res_d = restriction(&alg, &d).unwrap();
        let laws = restriction_laws(&alg, &res_d).unwrap();
        assert!(laws.law_a, "{:?}", laws.failures);
        assert!(laws.law_d, "{:?}", laws.failures);

        // transitivity through C = (1,−1,−1) ⊂ D = (2,−1)
        let c = SComp(vec![1, -1, -1]);
        let res_c = restriction(&alg, &c).unwrap();
        let rel = relative_restriction(&alg, &c, &d, &res_d, &res_c).unwrap();
        for (fi, row) in res_c.matrix.iter().enumerate() {
            for (cj, &want) in row.iter().enumerate() {
                let got: i64 =
                    (0..res_d.targets.len()).map(|e| rel[fi][e] * res_d.matrix[e][cj]).sum();
                assert_eq!(got, want, "transitivity at ({fi}, {cj})");
            }
        }
    }

    #[test]
    fn restriction_pi_composition_n3_to_n2() {
        let (g3, _) = ctx(3, Field::Q);
        let (g2, _) = ctx(2, Field::Q);
        let alg3 = Alg::new(g3, Field::Q).unwrap();
        let alg2 = Alg::new(g2, Field::Q).unwrap();
        let cd3 = CharData::new(&alg3).unwrap();
        let cd2 = CharData::new(&alg2).unwrap();
        assert!(restriction_pi_law(&cd3, &cd2).unwrap());
    }

    // Prop 8.3 / 8.5: projective dimensions in the group algebra
    #[test]
    fn projective_dimensions_n2() {
        let (g, _) = ctx(2, Field::Q);
        let algq = Alg::new(g, Field::Q).unwrap();
        let cdq = CharData::new(&algq).unwrap();
        let famq = lift_idempotent_family(&cdq).unwrap();
        let pd = projective_dims_in_group_algebra(&cdq, &famq).unwrap();
        assert_eq!(pd.dims, pd.expected);
        assert_eq!(pd.dims.iter().sum::<usize>(), g.order());
        // the central class (1,1;∅) has size 1
        let pos = pd
            .labels
            .iter()
            .position(|&li| algq.bips[li] == Bip::parse("11;").unwrap())
            .unwrap();
        assert_eq!(pd.dims[pos], 1);

        let alg2 = Alg::new(g, Field::Fp(2)).unwrap();
        let cd2 = CharData::new(&alg2).unwrap();
        let fam2 = lift_idempotent_family(&cd2).unwrap();
        let pd2 = projective_dims_in_group_algebra(&cd2, &fam2).unwrap();
        assert_eq!(pd2.dims, pd2.expected);
        let pos = pd2
            .labels
            .iter()
            .position(|&li| alg2.bips[li] == Bip::parse(";11").unwrap())
            .unwrap();
        assert_eq!(pd2.dims[pos], 8);
    }

    #[test]
    fn group_traces_are_group_order() {
        for n in 1..=3 {
            let (g, f) = ctx(n, Field::Q);
            let alg = Alg::new(g, f).unwrap();
            assert!(group_trace_check(&alg));
        }
    }

    // Σ_λ dim 𝒫_λ = dim A  (row sums of the Cartan matrix exhaust the algebra)
    #[test]
    fn cartan_row_sums_exhaust_dimension() {
        for (n, p) in [(2usize, 0u64), (3, 0), (2, 2), (3, 2)] {
            let (g, f) = ctx(n, Field::from_characteristic(p).unwrap());
            let alg = Alg::new(g, f).unwrap();
            let cd = CharData::new(&alg).unwrap();
            let fam = lift_idempotent_family(&cd).unwrap();
            let cart = cartan_matrix(&cd, &fam).unwrap();
            let total: usize = cart.entries.iter().flatten().sum();
            assert_eq!(total, alg.dim(), "n={n} p={p}");
        }
    }
}
