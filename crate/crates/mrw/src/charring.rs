//! The character side of `Σ'(W_n)`: the morphism `θ` onto class functions on
//! `Bip(n)`, the irreducible characters `π_λ`, character tables, `Ker θ`,
//! indicator idempotents of `K Irr W_n`, and the `φ`-basis ring with its
//! `rank_p` filtration.
//!
//! `K Irr W_n` is handled entirely through class functions on `Bip(n)`; the
//! irreducible characters of `W_n` itself never appear.  Elements are stored
//! in coordinates with respect to the basis `(φ_λ)_{λ ∈ Bip(n)}`, where
//! `φ_λ = Ind_{W_λ̂}^{W_n} 1 = θ(x_λ̂)`; value vectors do not faithfully
//! represent the ring in positive characteristic, coordinates do.  The
//! integer value table `π_λ(x_D) = |X_{λ̂D}^⊂|` and the integer structure
//! constants of the `φ` basis are computed once, from coset data alone, and
//! reduced into whichever field the ambient algebra carries.

use crate::algebra::{invert, Alg, Elem};
use crate::comp::{Bip, SComp};
use crate::linalg::Matrix;
use crate::scalar::{Field, Scalar};
use num_rational::BigRational;
use num_traits::Zero;
use std::cell::OnceCell;

/// A class function on `Bip(n)` — an element of `K Irr W_n` — stored in
/// `φ`-basis coordinates (indexed like `Alg::bips`).
#[derive(Clone, Debug, PartialEq)]
pub struct ClassFunction {
    pub field: Field,
    pub phi: Vec<Scalar>,
}

/// Character-theoretic data attached to an algebra context: the integer
/// table of `π_λ` values and the integer structure constants of the `φ`
/// basis.  Everything here is field-independent; the ambient field only
/// enters when values are reduced.
pub struct CharData<'a> {
    pub alg: &'a Alg<'a>,
    /// `pi[λ][D] = π_λ(x_D) = |X_{λ̂D}^⊂|` (a nonnegative integer).
    pub pi: Vec<Vec<i64>>,
    /// Index into `comps` of `λ̂`, per bipartition.
    pub hat_idx: Vec<usize>,
    /// Index into `bips` of `𝝀(C)`, per composition.
    pub lam_idx: Vec<usize>,
    /// Index of the trivial class `(n; ∅) = 𝝀((n))`.
    pub one_idx: usize,
    /// `c[λ][μ][ν]` with `φ_λ φ_μ = Σ_ν c φ_ν`, by the Mackey formula.
    phi_tensor: OnceCell<Vec<Vec<Vec<i64>>>>,
    /// Rational inverse of the value matrix `V[μ][ν] = π_μ(x_ν̂)`, used to
    /// convert value vectors (e.g. indicator functions) into `φ`-coordinates.
    vinv: OnceCell<Matrix>,
}

impl<'a> CharData<'a> {
    pub fn new(alg: &'a Alg<'a>) -> crate::Result<CharData<'a>> {
        let hat_idx: Vec<usize> = alg
            .bips
            .iter()
            .map(|b| alg.comp_index(&b.hat()))
            .collect::<crate::Result<_>>()?;
        let bip_pos = |b: &Bip| -> crate::Result<usize> {
            alg.bips
                .iter()
                .position(|x| x == b)
                .ok_or_else(|| crate::Error::Internal(format!("bipartition {b} not indexed")))
        };
        let lam_idx: Vec<usize> =
            alg.comps.iter().map(|c| bip_pos(&c.lambda())).collect::<crate::Result<_>>()?;
        let one_idx = bip_pos(&SComp(vec![alg.g.n as i32]).lambda())?;
        let pi = alg
            .bips
            .iter()
            .map(|b| {
                let hat = b.hat();
                alg.comps
                    .iter()
                    .map(|d| alg.cosets.double_sub(&hat, d).len() as i64)
                    .collect()
            })
            .collect();
        Ok(CharData { alg, pi, hat_idx, lam_idx, one_idx, phi_tensor: OnceCell::new(), vinv: OnceCell::new() })
    }

    pub fn nbip(&self) -> usize {
        self.alg.bips.len()
    }

    /// `θ(a)`: the class function `Σ_C ξ_C(a) φ_{𝝀(C)}`.
    pub fn theta(&self, a: &Elem) -> ClassFunction {
        let field = self.alg.field;
        let mut phi = vec![field.zero(); self.nbip()];
        for (i, xi) in a.coeffs.iter().enumerate() {
            if !xi.is_zero() {
                let v = self.lam_idx[i];
                phi[v] = phi[v].add(xi);
            }
        }
        ClassFunction { field, phi }
    }

    /// `π_λ(a) = Σ_C ξ_C(a) π_λ(x_C)`, reduced into the ambient field.
    pub fn pi_lambda(&self, li: usize, a: &Elem) -> Scalar {
        let field = self.alg.field;
        let mut acc = field.zero();
        for (i, xi) in a.coeffs.iter().enumerate() {
            if !xi.is_zero() {
                acc = acc.add(&xi.mul(&field.from_i64(self.pi[li][i])));
            }
        }
        acc
    }

    /// The value of a class function at the class `C(μ)`
    /// (`Σ_ν phi_ν · π_μ(x_ν̂)`).
    pub fn value(&self, f: &ClassFunction, mu: usize) -> Scalar {
        let field = self.alg.field;
        let mut acc = field.zero();
        for (v, c) in f.phi.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&c.mul(&field.from_i64(self.pi[mu][self.hat_idx[v]])));
            }
        }
        acc
    }

    /// The constant function `1` — the trivial character `φ_{(n;∅)}`.
    pub fn all_ones(&self) -> ClassFunction {
        let mut phi = vec![self.alg.field.zero(); self.nbip()];
        phi[self.one_idx] = self.alg.field.one();
        ClassFunction { field: self.alg.field, phi }
    }

    pub fn cf_zero(&self) -> ClassFunction {
        ClassFunction { field: self.alg.field, phi: vec![self.alg.field.zero(); self.nbip()] }
    }

    pub fn cf_add(&self, a: &ClassFunction, b: &ClassFunction) -> ClassFunction {
        ClassFunction {
            field: a.field,
            phi: a.phi.iter().zip(&b.phi).map(|(x, y)| x.add(y)).collect(),
        }
    }

    /// Pointwise product, computed through the integer `φ` structure
    /// constants (valid over every field).
    pub fn cf_mul(&self, a: &ClassFunction, b: &ClassFunction) -> ClassFunction {
        let field = a.field;
        let t = self.phi_tensor();
        let mut phi = vec![field.zero(); self.nbip()];
        for (l, x) in a.phi.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (m, y) in b.phi.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x.mul(y);
                for (v, &c) in t[l][m].iter().enumerate() {
                    if c != 0 {
                        phi[v] = phi[v].add(&xy.mul(&field.from_i64(c)));
                    }
                }
            }
        }
        ClassFunction { field, phi }
    }

    /// The structure constants of the `φ` basis, from the Mackey formula
    /// `φ_λ φ_μ = Σ_{d ∈ X_{λ̂μ̂}} φ_{𝝀(λ̂ ∩ ᵈμ̂)}`.  Nonnegative integers,
    /// symmetric in `λ, μ` (the ring is commutative); both facts are
    /// exercised by the test suite rather than assumed.
    pub fn phi_tensor(&self) -> &Vec<Vec<Vec<i64>>> {
        self.phi_tensor.get_or_init(|| {
            let nb = self.nbip();
            let mut t = vec![vec![vec![0i64; nb]; nb]; nb];
            for (l, bl) in self.alg.bips.iter().enumerate() {
                let hl = bl.hat();
                for (m, bm) in self.alg.bips.iter().enumerate() {
                    let hm = bm.hat();
                    for d in self.alg.cosets.double(&hl, &hm) {
                        let e = self
                            .alg
                            .cosets
                            .intersection_composition(&hl, d, &hm)
                            .expect("intersection composition exists");
                        let v = self.lam_idx[self
                            .alg
                            .comp_index(&e)
                            .expect("intersection composition is indexed")];
                        t[l][m][v] += 1;
                    }
                }
            }
            t
        })
    }

    /// Character table: rows `Bip_p′(n)`, columns `Bip_p-reg(n)` (all of
    /// `Bip(n)` when `p = 0`), entries `π_λ(x_μ̂)` in the ambient field.
    /// Returns `(row bip indices, column bip indices, matrix)`.
    pub fn character_table(&self) -> (Vec<usize>, Vec<usize>, Matrix) {
        let field = self.alg.field;
        let p = field.characteristic();
        let rows: Vec<usize> =
            (0..self.nbip()).filter(|&i| p == 0 || self.alg.bips[i].is_p_prime(p)).collect();
        let cols: Vec<usize> =
            (0..self.nbip()).filter(|&i| p == 0 || self.alg.bips[i].is_p_regular(p)).collect();
        let mut m = Matrix::zero(field, rows.len(), cols.len());
        for (i, &li) in rows.iter().enumerate() {
            for (j, &mj) in cols.iter().enumerate() {
                m.set(i, j, field.from_i64(self.pi[li][self.hat_idx[mj]]));
            }
        }
        (rows, cols, m)
    }

    /// A basis of `Ker θ`: for every `≡`-class of compositions with more
    /// than one element, the differences `x_C − x_{C₀}` against the first
    /// member.  Its length is always `|Comp(n)| − |Bip(n)|`.
    pub fn ker_theta_basis(&self) -> Vec<Elem> {
        let mut first = vec![usize::MAX; self.nbip()];
        let mut out = Vec::new();
        for (i, &v) in self.lam_idx.iter().enumerate() {
            if first[v] == usize::MAX {
                first[v] = i;
            } else {
                out.push(self.alg.sub(&self.alg.x_by_index(i), &self.alg.x_by_index(first[v])));
            }
        }
        out
    }

    /// `ℚ`-coordinates of the indicator function of the single class `C(λ)`
    /// in the `φ` basis (column `li` of the inverse value matrix).
    pub fn indicator_phi_q(&self, li: usize) -> Vec<BigRational> {
        let vinv = self.vinv.get_or_init(|| {
            let nb = self.nbip();
            let mut v = Matrix::zero(Field::Q, nb, nb);
            for mu in 0..nb {
                for nu in 0..nb {
                    v.set(mu, nu, Field::Q.from_i64(self.pi[mu][self.hat_idx[nu]]));
                }
            }
            invert(&v).expect("the φ value matrix is invertible over ℚ")
        });
        (0..self.nbip())
            .map(|r| match vinv.get(r, li) {
                Scalar::Q(q) => q.clone(),
                _ => unreachable!("vinv is rational"),
            })
            .collect()
    }

    /// `e_λ`, the indicator of `C(λ)`, as a rational class function.
    pub fn e_lambda_q(&self, li: usize) -> ClassFunction {
        ClassFunction {
            field: Field::Q,
            phi: self.indicator_phi_q(li).into_iter().map(Scalar::Q).collect(),
        }
    }

    /// `e_{λ,p′}`, the indicator of `∪ {C(μ) : μ_{p′} = λ}`, as a rational
    /// class function (`λ` must be `p`-prime).
    pub fn e_lambda_p_prime_q(&self, li: usize, p: u64) -> crate::Result<ClassFunction> {
        let lam = &self.alg.bips[li];
        if !lam.is_p_prime(p) {
            return Err(crate::Error::BadBipartition(format!("{lam} is not {p}-prime")));
        }
        let mut phi = vec![BigRational::zero(); self.nbip()];
        for (mi, mu) in self.alg.bips.iter().enumerate() {
            if &mu.p_prime_part(p, self.alg.g) == lam {
                for (r, c) in self.indicator_phi_q(mi).into_iter().enumerate() {
                    phi[r] += c;
                }
            }
        }
        Ok(ClassFunction { field: Field::Q, phi: phi.into_iter().map(Scalar::Q).collect() })
    }

    /// The primitive idempotents of `K Irr W_n` in the ambient field: `e_λ`
    /// for `p = 0`, the reduction of `e_{λ,p′}` for `p > 0` (`λ ∈ Bip_p′`).
    /// The rational coordinates are guaranteed `p`-integral; a failure is an
    /// internal inconsistency.
    pub fn e_lambda_k(&self, li: usize) -> crate::Result<ClassFunction> {
        let field = self.alg.field;
        match field.characteristic() {
            0 => Ok(self.e_lambda_q(li)),
            p => {
                let q = self.e_lambda_p_prime_q(li, p)?;
                let phi = q
                    .phi
                    .iter()
                    .map(|s| match s {
                        Scalar::Q(r) => {
                            if crate::scalar::bigint_mod_p(r.denom(), p) == 0 {
                                Err(crate::Error::Internal(format!(
                                    "e_{{λ,{p}'}} has a non-{p}-integral φ-coordinate {r}"
                                )))
                            } else {
                                Ok(crate::scalar::rational_mod_p(r, p))
                            }
                        }
                        _ => unreachable!("rational by construction"),
                    })
                    .collect::<crate::Result<Vec<u64>>>()?;
                Ok(ClassFunction {
                    field,
                    phi: phi.into_iter().map(|v| Scalar::Fp { p, v }).collect(),
                })
            }
        }
    }

    /// Dimensions of the powers of `Rad(K Irr W_n) = 𝓘_1 = span{φ_λ :
    /// rank_p λ ≥ 1}`, down to (and excluding) zero.  Empty when the
    /// radical already vanishes (`p = 0` or `n < p`).
    pub fn irr_radical_power_dims(&self) -> Vec<usize> {
        let field = self.alg.field;
        let p = field.characteristic();
        if p == 0 {
            return Vec::new();
        }
        let rad_gens: Vec<usize> =
            (0..self.nbip()).filter(|&i| self.alg.bips[i].rank_p(p) >= 1).collect();
        let mut dims = Vec::new();
        // current power, as a basis of φ-coordinate vectors
        let mut basis: Vec<ClassFunction> = rad_gens
            .iter()
            .map(|&i| {
                let mut f = self.cf_zero();
                f.phi[i] = field.one();
                f
            })
            .collect();
        loop {
            let mut span = crate::linalg::Span::new(self.nbip());
            let mut reduced = Vec::new();
            for f in &basis {
                if span.insert(f.phi.clone()) {
                    reduced.push(f.clone());
                }
            }
            if reduced.is_empty() {
                break;
            }
            dims.push(reduced.len());
            basis = rad_gens
                .iter()
                .flat_map(|&gidx| {
                    let mut gen = self.cf_zero();
                    gen.phi[gidx] = field.one();
                    reduced.iter().map(move |f| self.cf_mul(&gen, f)).collect::<Vec<_>>()
                })
                .filter(|f| f.phi.iter().any(|c| !c.is_zero()))
                .collect();
        }
        dims
    }

    /// Loewy length of `K Irr W_n` (`1` when the radical is zero).
    pub fn irr_loewy_length(&self) -> usize {
        self.irr_radical_power_dims().len() + 1
    }

    /// For `i ≥ 1`, compares `𝓘_i = span{φ_λ : rank_p λ ≥ i}` with
    /// `Rad^i`: returns `(dim 𝓘_i, dim Rad^i, 𝓘_i == Rad^i)` per `i`,
    /// until both vanish.  (Whether this is always an equality is left
    /// open; the result is reported, not asserted.)
    pub fn filtration_comparison(&self) -> Vec<(usize, usize, bool)> {
        let p = self.alg.field.characteristic();
        let rad_dims = self.irr_radical_power_dims();
        let max_rank = (0..self.nbip()).map(|i| self.alg.bips[i].rank_p(p)).max().unwrap_or(0);
        let mut out = Vec::new();
        for i in 1..=rad_dims.len().max(max_rank) {
            let fi = (0..self.nbip()).filter(|&l| self.alg.bips[l].rank_p(p) >= i).count();
            let ri = rad_dims.get(i - 1).copied().unwrap_or(0);
            // 𝓘_i ⊇ Rad^i always holds (filtration property); equality is
            // decided by dimension count since both live inside 𝓘_i.
            out.push((fi, ri, fi == ri));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comp::normalizer_order;
    use crate::comp::all_compositions;
    use crate::group::Group;
    use rand::{Rng, SeedableRng};

    fn ctx(n: usize, field: Field) -> (&'static Group, Field) {
        // tests build contexts freely; leak the group to keep lifetimes flat
        (Box::leak(Box::new(Group::new(n))), field)
    }

    fn table_by_labels(cd: &CharData, labels: &[&str]) -> Vec<Vec<i64>> {
        let order: Vec<usize> = labels
            .iter()
            .map(|s| {
                let b = Bip::parse(s).unwrap();
                cd.alg.bips.iter().position(|x| x == &b).unwrap()
            })
            .collect();
        order
            .iter()
            .map(|&li| order.iter().map(|&mj| cd.pi[li][cd.hat_idx[mj]]).collect())
            .collect()
    }

    #[test]
    fn character_table_n2_frozen() {
        let (g, f) = ctx(2, Field::Q);
        let alg = Alg::new(g, f).unwrap();
        let cd = CharData::new(&alg).unwrap();
        let rows = ["2;", ";2", "11;", "1;1", ";11"];
        let expect = vec![
            vec![1, 0, 0, 0, 0],
            vec![1, 2, 0, 0, 0],
            vec![1, 0, 2, 0, 0],
            vec![1, 0, 2, 2, 0],
            vec![1, 4, 2, 4, 8],
        ];
        assert_eq!(table_by_labels(&cd, &rows), expect);
    }

    #[test]
    fn character_table_n3_frozen() {
        let (g, f) = ctx(3, Field::Q);
        let alg = Alg::new(g, f).unwrap();
        let cd = CharData::new(&alg).unwrap();
        let rows =
            ["3;", ";3", "21;", "2;1", "1;2", ";21", "111;", "11;1", "1;11", ";111"];
        let expect = vec![
            vec![1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
            vec![1, 2, 0, 0, 0, 0, 0, 0, 0, 0],
            vec![1, 0, 1, 0, 0, 0, 0, 0, 0, 0],
            vec![1, 0, 1, 2, 0, 0, 0, 0, 0, 0],
            vec![1, 0, 1, 0, 2, 0, 0, 0, 0, 0],
            vec![1, 4, 1, 2, 2, 4, 0, 0, 0, 0],
            vec![1, 0, 3, 0, 0, 0, 6, 0, 0, 0],
            vec![1, 0, 3, 2, 0, 0, 6, 4, 0, 0],
            vec![1, 0, 3, 4, 4, 0, 6, 8, 8, 0],
            vec![1, 8, 3, 6, 12, 24, 6, 12, 24, 48],
        ];
        assert_eq!(table_by_labels(&cd, &rows), expect);
    }

    #[test]
    fn theta_basics() {
        for n in 1..=3 {
            let (g, f) = ctx(n, Field::Q);
            let alg = Alg::new(g, f).unwrap();
            let cd = CharData::new(&alg).unwrap();
            // θ(x_(n)) is the trivial character, θ(x_(−1,…,−1)) the regular one
            let triv = cd.theta(&alg.one());
            assert_eq!(triv, cd.all_ones());
            for mu in 0..cd.nbip() {
                assert_eq!(cd.value(&triv, mu), Field::Q.one());
            }
            let reg = cd.theta(&alg.x(&SComp(vec![-1; n])).unwrap());
            let regular_class =
                alg.bips.iter().position(|b| b == &SComp(vec![-1; n]).lambda()).unwrap();
            for mu in 0..cd.nbip() {
                let expect = if mu == regular_class { g.order() as i64 } else { 0 };
                assert_eq!(cd.value(&reg, mu), Field::Q.from_i64(expect), "regular at n={n}");
            }
        }
        // π_{1;1}(x_{(1,−1)}) = 2 at n = 2
        let (g, f) = ctx(2, Field::Q);
        let alg = Alg::new(g, f).unwrap();
        let cd = CharData::new(&alg).unwrap();
        let li = alg.bips.iter().position(|b| b == &Bip::parse("1;1").unwrap()).unwrap();
        let a = alg.x(&SComp(vec![1, -1])).unwrap();
        assert_eq!(cd.pi_lambda(li, &a), Field::Q.from_i64(2));
    }

    #[test]
    fn theta_is_a_ring_morphism() {
        for field in [Field::Q, Field::Fp(3)] {
            for n in 1..=3 {
                let (g, _) = ctx(n, field);
                let alg = Alg::new(g, field).unwrap();
                let cd = CharData::new(&alg).unwrap();
                for i in 0..alg.dim() {
                    for j in 0..alg.dim() {
                        let prod = alg.multiply(&alg.x_by_index(i), &alg.x_by_index(j));
                        let lhs = cd.theta(&prod);
                        let rhs =
                            cd.cf_mul(&cd.theta(&alg.x_by_index(i)), &cd.theta(&alg.x_by_index(j)));
                        assert_eq!(lhs, rhs, "θ multiplicative at i={i}, j={j}, n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn phi_tensor_two_routes_agree() {
        // Mackey counts versus grouping the x-basis structure constants
        for n in 1..=3 {
            let (g, f) = ctx(n, Field::Q);
            let alg = Alg::new(g, f).unwrap();
            let cd = CharData::new(&alg).unwrap();
            let t = cd.phi_tensor();
            let nb = cd.nbip();
            for l in 0..nb {
                for m in 0..nb {
                    // symmetry and nonnegativity
                    assert_eq!(t[l][m], t[m][l], "symmetry at ({l},{m})");
                    assert!(t[l][m].iter().all(|&c| c >= 0));
                    // x-route: expand x_λ̂·x_μ̂ and group by 𝝀
                    let row = alg.tensor_row(cd.hat_idx[l], cd.hat_idx[m]);
                    let mut grouped = vec![0i64; nb];
                    for &(e, c) in row.iter() {
                        grouped[cd.lam_idx[e as usize]] += c;
                    }
                    assert_eq!(t[l][m], grouped, "tensor routes at ({l},{m})");
                }
            }
        }
    }

    #[test]
    fn ker_theta_dimensions_and_content() {
        for (n, expected) in [(1usize, 0usize), (2, 1), (3, 8)] {
            let (g, f) = ctx(n, Field::Q);
            let alg = Alg::new(g, f).unwrap();
            let cd = CharData::new(&alg).unwrap();
            let basis = cd.ker_theta_basis();
            assert_eq!(basis.len(), expected);
            assert_eq!(basis.len(), alg.dim() - cd.nbip());
            let mut span = crate::linalg::Span::new(alg.dim());
            for b in &basis {
                assert!(cd.theta(b).phi.iter().all(|c| c.is_zero()), "θ kills the basis");
                assert!(span.insert(b.coeffs.clone()), "independent differences");
            }
        }
        // n=2: the single difference is x_{(1,−1)} − x_{(−1,1)} up to sign
        let (g, f) = ctx(2, Field::Q);
        let alg = Alg::new(g, f).unwrap();
        let cd = CharData::new(&alg).unwrap();
        let basis = cd.ker_theta_basis();
        let i = alg.comp_index(&SComp(vec![1, -1])).unwrap();
        let j = alg.comp_index(&SComp(vec![-1, 1])).unwrap();
        let d = &basis[0];
        assert!(d.coeffs[i].clone().add(&d.coeffs[j]).is_zero());
        assert!(!d.coeffs[i].is_zero());
        assert!(alg.supp(d) == vec![i.min(j), i.max(j)]);
    }

    #[test]
    fn ker_theta_x_prime_form() {
        // span{x'_C − x'_D : C ≡ D} = span{x_C − x_D : C ≡ D} away from p = 2
        for n in 1..=4 {
            for field in [Field::Q, Field::Fp(3)] {
                let (g, _) = ctx(n, field);
                let alg = Alg::new(g, field).unwrap();
                let cd = CharData::new(&alg).unwrap();
                let plain = cd.ker_theta_basis();
                let mut span = crate::linalg::Span::new(alg.dim());
                for b in &plain {
                    span.insert(b.coeffs.clone());
                }
                let mut primed_span = crate::linalg::Span::new(alg.dim());
                let mut first = vec![usize::MAX; cd.nbip()];
                let mut count = 0usize;
                for (i, &v) in cd.lam_idx.iter().enumerate() {
                    if first[v] == usize::MAX {
                        first[v] = i;
                    } else {
                        let d = alg.sub(
                            &alg.x_prime(&alg.comps[i]).unwrap(),
                            &alg.x_prime(&alg.comps[first[v]]).unwrap(),
                        );
                        assert!(span.contains(&d.coeffs), "x'-difference lies in Ker θ span");
                        primed_span.insert(d.coeffs.clone());
                        count += 1;
                    }
                }
                assert_eq!(primed_span.dim(), count, "x'-differences independent");
                assert_eq!(primed_span.dim(), span.dim());
            }
        }
    }

    #[test]
    fn theta_of_longest_element_is_sign() {
        for n in 1..=4 {
            let (g, f) = ctx(n, Field::Q);
            let alg = Alg::new(g, f).unwrap();
            let cd = CharData::new(&alg).unwrap();
            let eps = cd.theta(&alg.w_n_elem());
            for (mu, b) in alg.bips.iter().enumerate() {
                let sign = if (n - b.len_minus()) % 2 == 0 { 1 } else { -1 };
                assert_eq!(cd.value(&eps, mu), Field::Q.from_i64(sign), "ε_n at {b}");
            }
        }
    }

    #[test]
    fn theta_is_surjective() {
        for field in [Field::Q, Field::Fp(2)] {
            for n in 1..=4 {
                let (g, _) = ctx(n, field);
                let alg = Alg::new(g, field).unwrap();
                let cd = CharData::new(&alg).unwrap();
                let mut span = crate::linalg::Span::new(cd.nbip());
                for j in 0..alg.dim() {
                    span.insert(cd.theta(&alg.x_by_index(j)).phi);
                }
                assert_eq!(span.dim(), cd.nbip());
            }
        }
    }

    #[test]
    fn diagonal_entries_are_normalizer_orders() {
        for n in 1..=4 {
            let (g, f) = ctx(n, Field::Q);
            let alg = Alg::new(g, f).unwrap();
            let cd = CharData::new(&alg).unwrap();
            for (li, b) in alg.bips.iter().enumerate() {
                assert_eq!(
                    cd.pi[li][cd.hat_idx[li]] as usize,
                    normalizer_order(&b.hat()),
                    "diagonal at {b}"
                );
            }
        }
    }

    #[test]
    fn character_table_shape_and_triangularity() {
        // entries vanish unless λ ⊂ μ; over 𝔽_p the table is square with
        // |Bip_p'| = |Bip_p-reg| rows and columns
        for n in 1..=4 {
            for field in [Field::Q, Field::Fp(2), Field::Fp(3)] {
                let (g, _) = ctx(n, field);
                let alg = Alg::new(g, field).unwrap();
                let cd = CharData::new(&alg).unwrap();
                let (rows, cols, m) = cd.character_table();
                assert_eq!(rows.len(), cols.len(), "square table");
                for (i, &li) in rows.iter().enumerate() {
                    for (j, &mj) in cols.iter().enumerate() {
                        let nz = cd.pi[li][cd.hat_idx[mj]] != 0;
                        assert_eq!(
                            nz,
                            cd.alg.cosets.bip_subset(&alg.bips[li], &alg.bips[mj]),
                            "support pattern is the ⊂ order"
                        );
                        if field.characteristic() == 0 {
                            assert_eq!(m.get(i, j).is_zero(), !nz);
                        }
                    }
                }
            }
        }
        // spec'd p = 2, n = 2 corner: a 1×1 table with rows {(∅;11)},
        // columns {(2;∅)}, and entry π_{∅;11}(x_{(2)}) = 1
        let (g, _) = ctx(2, Field::Fp(2));
        let alg = Alg::new(g, Field::Fp(2)).unwrap();
        let cd = CharData::new(&alg).unwrap();
        let (rows, cols, m) = cd.character_table();
        assert_eq!(rows.len(), 1);
        assert_eq!(alg.bips[rows[0]].to_string(), ";11");
        assert_eq!(alg.bips[cols[0]].to_string(), "2;");
        assert_eq!(m.get(0, 0), &Field::Fp(2).one());
    }

    #[test]
    fn tau_bis_triangularity() {
        // ξ_D(x_C·x_D) = π_{𝝀(C)}(x_D) and ξ_E(x_C·x_D) = 0 unless E ≼ D
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 1..=4 {
            let (g, f) = ctx(n, Field::Q);
            let alg = Alg::new(g, f).unwrap();
            let cd = CharData::new(&alg).unwrap();
            let d = alg.dim();
            let pairs: Vec<(usize, usize)> = if n <= 3 {
                (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).collect()
            } else {
                (0..40).map(|_| (rng.gen_range(0..d), rng.gen_range(0..d))).collect()
            };
            for (i, j) in pairs {
                let prod = alg.multiply(&alg.x_by_index(i), &alg.x_by_index(j));
                assert_eq!(
                    prod.coeffs[j],
                    cd.pi_lambda(cd.lam_idx[j], &alg.x_by_index(i)),
                    "ξ_D(x_C x_D) = π_𝝀(D)(x_C) at C={}, D={}",
                    alg.comps[i],
                    alg.comps[j]
                );
                for e in alg.supp(&prod) {
                    assert!(
                        alg.comps[e].preceq(&alg.comps[j]),
                        "support ⊀ D at C={}, D={}, E={}",
                        alg.comps[i],
                        alg.comps[j],
                        alg.comps[e]
                    );
                }
            }
        }
    }

    #[test]
    fn indicator_idempotents() {
        for n in 1..=3 {
            let (g, f) = ctx(n, Field::Q);
            let alg = Alg::new(g, f).unwrap();
            let cd = CharData::new(&alg).unwrap();
            let nb = cd.nbip();
            let mut total = cd.cf_zero();
            for li in 0..nb {
                let e = cd.e_lambda_q(li);
                // pointwise indicator: values δ_{λμ}
                for mu in 0..nb {
                    let expect = if mu == li { Field::Q.one() } else { Field::Q.zero() };
                    assert_eq!(cd.value(&e, mu), expect);
                }
                assert_eq!(cd.cf_mul(&e, &e), e, "e_λ² = e_λ");
                for mj in 0..li {
                    let z = cd.cf_mul(&e, &cd.e_lambda_q(mj));
                    assert!(z.phi.iter().all(|c| c.is_zero()), "orthogonality");
                }
                total = cd.cf_add(&total, &e);
            }
            assert_eq!(total, cd.all_ones(), "Σ e_λ = 1");
        }
    }

    #[test]
    fn p_prime_idempotents_reduce() {
        // n=2, p=2: every μ has μ_{2'} = (∅;11), so e_{(∅;11),2'} = 1
        let (g, _) = ctx(2, Field::Fp(2));
        let alg = Alg::new(g, Field::Fp(2)).unwrap();
        let cd = CharData::new(&alg).unwrap();
        let li = alg.bips.iter().position(|b| b.to_string() == ";11").unwrap();
        let e = cd.e_lambda_k(li).unwrap();
        assert_eq!(e, cd.all_ones());
        // all p-prime idempotents are p-integral, idempotent, orthogonal,
        // and sum to 1 for small n and p
        for p in [2u64, 3, 5] {
            for n in 1..=3 {
                let (g, _) = ctx(n, Field::Fp(p));
                let alg = Alg::new(g, Field::Fp(p)).unwrap();
                let cd = CharData::new(&alg).unwrap();
                let primes: Vec<usize> =
                    (0..cd.nbip()).filter(|&i| alg.bips[i].is_p_prime(p)).collect();
                let mut total = cd.cf_zero();
                for &li in &primes {
                    let e = cd.e_lambda_k(li).unwrap();
                    assert_eq!(cd.cf_mul(&e, &e), e, "idempotent at p={p}, n={n}");
                    for &mj in primes.iter().filter(|&&m| m != li) {
                        let z = cd.cf_mul(&e, &cd.e_lambda_k(mj).unwrap());
                        assert!(z.phi.iter().all(|c| c.is_zero()));
                    }
                    total = cd.cf_add(&total, &e);
                }
                assert_eq!(total, cd.all_ones(), "Σ_λ∈Bip_p' e_λ^K = 1");
            }
        }
    }

    #[test]
    fn irr_loewy_lengths() {
        for n in 1..=4 {
            for p in [0u64, 2, 3, 5] {
                let field = if p == 0 { Field::Q } else { Field::Fp(p) };
                let (g, _) = ctx(n, field);
                let alg = Alg::new(g, field).unwrap();
                let cd = CharData::new(&alg).unwrap();
                let expect = match p {
                    0 => 1,
                    2 => n + 1,
                    _ => n / (p as usize) + 1,
                };
                assert_eq!(cd.irr_loewy_length(), expect, "Loewy(K Irr) at n={n}, p={p}");
            }
        }
    }

    #[test]
    fn rank_filtration_multiplies() {
        // 𝓘_i·𝓘_j ⊆ 𝓘_{i+j}
        for n in 1..=4 {
            for p in [2u64, 3] {
                let field = Field::Fp(p);
                let (g, _) = ctx(n, field);
                let alg = Alg::new(g, field).unwrap();
                let cd = CharData::new(&alg).unwrap();
                let t = cd.phi_tensor();
                let rank: Vec<usize> = alg.bips.iter().map(|b| b.rank_p(p)).collect();
                for l in 0..cd.nbip() {
                    for m in 0..cd.nbip() {
                        for (v, &c) in t[l][m].iter().enumerate() {
                            if c % (p as i64) != 0 {
                                assert!(
                                    rank[v] >= rank[l] + rank[m],
                                    "filtration at λ={}, μ={}, ν={}",
                                    alg.bips[l],
                                    alg.bips[m],
                                    alg.bips[v]
                                );
                            }
                        }
                    }
                }
                // reported comparison stays consistent: Rad^i never exceeds 𝓘_i
                for (fi, ri, eq) in cd.filtration_comparison() {
                    assert!(ri <= fi);
                    assert_eq!(eq, fi == ri);
                }
            }
        }
    }

    #[test]
    fn all_compositions_collapse_under_theta() {
        // θ(x_C) depends only on 𝝀(C): pairs C ≡ D map to the same φ
        let (g, f) = ctx(3, Field::Q);
        let alg = Alg::new(g, f).unwrap();
        let cd = CharData::new(&alg).unwrap();
        for c in all_compositions(3) {
            for d in all_compositions(3) {
                if c.equiv(&d) {
                    let i = alg.comp_index(&c).unwrap();
                    let j = alg.comp_index(&d).unwrap();
                    assert_eq!(
                        cd.theta(&alg.x_by_index(i)),
                        cd.theta(&alg.x_by_index(j))
                    );
                }
            }
        }
    }
}
