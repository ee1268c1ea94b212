//! Signed compositions, bipartitions, and everything purely combinatorial
//! about them: block structure, generator sets `S_C`, simple systems `Δ_C`,
//! Coxeter elements, the order relations `⊂`, `≼`, `⊂_λ`, `≡`, and the
//! `p`-classifications.
//!
//! A signed composition `C = (c_1, …, c_k)` of `n` cuts `{1, …, n}` into
//! consecutive blocks of sizes `|c_i|`; a *positive* part carries the full
//! hyperoctahedral group on its block, a *negative* part only the symmetric
//! group.  `W_C` is the corresponding reflection subgroup.

use crate::group::{act_on_root, factorial, root_is_positive, Group, Root, SignedPerm};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A signed composition; parts are nonzero, `Σ|c_i| = n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct SComp(pub Vec<i32>);

/// A bipartition `(λ⁺; λ⁻)`, both sides weakly decreasing.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Bip {
    pub plus: Vec<u32>,
    pub minus: Vec<u32>,
}

/// One block of a composition: positions `start+1, …, start+size` (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub start: usize,
    pub size: usize,
    pub positive: bool,
}

impl SComp {
    pub fn n(&self) -> usize {
        self.0.iter().map(|c| c.unsigned_abs() as usize).sum()
    }

    /// Number of parts `ℓ(C)`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of negative parts `ℓ⁻(C)`.
    pub fn len_minus(&self) -> usize {
        self.0.iter().filter(|&&c| c < 0).count()
    }

    pub fn len_plus(&self) -> usize {
        self.0.iter().filter(|&&c| c > 0).count()
    }

    /// `C⁺`: all parts made positive.
    pub fn positive_part(&self) -> SComp {
        SComp(self.0.iter().map(|c| c.abs()).collect())
    }

    /// Semi-positive: every part is `≥ −1` (negative parts only singletons).
    pub fn is_semi_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= -1)
    }

    /// Parabolic: every part after the first is negative — equivalently
    /// `S_C ⊆ S_n`, so `W_C` is a standard parabolic subgroup.
    pub fn is_parabolic(&self) -> bool {
        self.0.iter().skip(1).all(|&c| c < 0)
    }

    pub fn blocks(&self) -> Vec<Block> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut start = 0;
        for &c in &self.0 {
            out.push(Block { start, size: c.unsigned_abs() as usize, positive: c > 0 });
            start += c.unsigned_abs() as usize;
        }
        out
    }

    /// The bipartition `𝝀(C)`.
    pub fn lambda(&self) -> Bip {
        let mut plus: Vec<u32> = self.0.iter().filter(|&&c| c > 0).map(|&c| c as u32).collect();
        let mut minus: Vec<u32> = self.0.iter().filter(|&&c| c < 0).map(|&c| (-c) as u32).collect();
        plus.sort_unstable_by(|a, b| b.cmp(a));
        minus.sort_unstable_by(|a, b| b.cmp(a));
        Bip { plus, minus }
    }

    /// The simple system `Δ_C`: `2e_{a+1}` for each positive block at offset
    /// `a`, plus `e_{a+i+1} - e_{a+i}` inside every block.
    pub fn simple_roots(&self, n: usize) -> Vec<Root> {
        let mut ds = Vec::new();
        for b in self.blocks() {
            if b.positive {
                let mut r = vec![0i16; n];
                r[b.start] = 2;
                ds.push(r);
            }
            for i in 1..b.size {
                let mut r = vec![0i16; n];
                r[b.start + i] = 1;
                r[b.start + i - 1] = -1;
                ds.push(r);
            }
        }
        ds
    }

    /// The generators `S_C` as group elements: per block, `t_{a+1}` first
    /// (positive blocks), then the adjacent transpositions in increasing
    /// position order.
    pub fn generators(&self, n: usize) -> Vec<SignedPerm> {
        let mut gens = Vec::new();
        for b in self.blocks() {
            if b.positive {
                gens.push(SignedPerm::t(n, b.start + 1));
            }
            for i in 1..b.size {
                gens.push(SignedPerm::s(n, b.start + i));
            }
        }
        gens
    }

    /// Bitmask of `S_C` inside `S'_n`: bit `i` (0-based) for `t_{i+1}`,
    /// bit `n+i` for `s_{i+1}`.  Containment of generator sets is then a
    /// submask test.
    pub fn genset_mask(&self, n: usize) -> u32 {
        let mut m = 0u32;
        for b in self.blocks() {
            if b.positive {
                m |= 1 << b.start;
            }
            for i in 1..b.size {
                m |= 1 << (n + b.start + i - 1);
            }
        }
        m
    }

    /// The Coxeter element `cox_C`: product of the generators of each block
    /// in the order of [`Self::generators`], multiplied left to right.
    pub fn coxeter(&self, n: usize) -> SignedPerm {
        let mut w = SignedPerm::identity(n);
        for g in self.generators(n) {
            w = w.compose(&g);
        }
        w
    }

    /// Does `w` lie in `W_C`?  Each block must be stabilized: letters of a
    /// positive block stay in `±block`, letters of a negative block keep
    /// their sign and stay in the block.
    pub fn contains_perm(&self, w: &SignedPerm) -> bool {
        for b in self.blocks() {
            let (lo, hi) = (b.start as i8 + 1, (b.start + b.size) as i8);
            for k in lo..=hi {
                let v = w.apply(k);
                if b.positive {
                    if !(lo..=hi).contains(&v.abs()) {
                        return false;
                    }
                } else if !(lo..=hi).contains(&v) {
                    return false;
                }
            }
        }
        true
    }

    /// `|W_C| = ∏ (2^{b} b!)` over positive blocks, `∏ b!` over negative.
    pub fn subgroup_order(&self) -> usize {
        self.blocks()
            .iter()
            .map(|b| if b.positive { (1 << b.size) * factorial(b.size) } else { factorial(b.size) })
            .product()
    }

    /// `W_C ⊆ W_D`, tested by membership of every generator of `W_C`.
    pub fn subset(&self, other: &SComp) -> bool {
        let n = self.n();
        debug_assert_eq!(n, other.n());
        self.generators(n).iter().all(|g| other.contains_perm(g))
    }

    /// The order `C ≼ D`: either `W_C ⊆ W_D`, or `C ⊂ D⁺` with strictly more
    /// parts and at least as many negative parts.
    pub fn preceq(&self, other: &SComp) -> bool {
        if self.subset(other) {
            return true;
        }
        self.subset(&other.positive_part())
            && self.len() > other.len()
            && self.len_minus() >= other.len_minus()
    }

    /// `C ≡ D` iff `𝝀(C) = 𝝀(D)`.
    pub fn equiv(&self, other: &SComp) -> bool {
        self.lambda() == other.lambda()
    }

    /// `𝝀(C) ⊂ 𝝀(D)`: `W_{λ̂(C)}` embeds in some `W_n`-conjugate of
    /// `W_{λ̂(D)}`.  Exhaustive over the group — fine for small `n`; the
    /// character-theoretic route `π_{𝝀(C)}(x_D) ≥ 1` lives in `charring` and
    /// is cross-checked against this in tests.
    pub fn subset_lambda_exhaustive(&self, other: &SComp, g: &Group) -> bool {
        let c = self.lambda().hat();
        let d = other.lambda().hat();
        let gens = c.generators(g.n);
        g.elems().iter().any(|w| {
            let wi = w.inverse();
            gens.iter().all(|x| d.contains_perm(&wi.compose(x).compose(w)))
        })
    }

    /// `r_i^+(C)`: multiplicity of `i` among positive parts.
    pub fn mult_plus(&self, i: u32) -> usize {
        self.0.iter().filter(|&&c| c == i as i32).count()
    }

    pub fn mult_minus(&self, i: u32) -> usize {
        self.0.iter().filter(|&&c| -c == i as i32).count()
    }

    /// Concatenation `C ⊔ D`.
    pub fn concat(&self, other: &SComp) -> SComp {
        SComp(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn parse(s: &str) -> crate::Result<SComp> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(SComp(Vec::new()));
        }
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let v: i32 = tok
                .trim()
                .parse()
                .map_err(|_| crate::Error::BadComposition(s.to_string()))?;
            if v == 0 {
                return Err(crate::Error::BadComposition(s.to_string()));
            }
            parts.push(v);
        }
        Ok(SComp(parts))
    }
}

impl fmt::Display for SComp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl Bip {
    pub fn n(&self) -> usize {
        (self.plus.iter().sum::<u32>() + self.minus.iter().sum::<u32>()) as usize
    }

    /// `λ̂ = λ⁺ ⊔ (-λ⁻)` as a signed composition.
    pub fn hat(&self) -> SComp {
        SComp(
            self.plus
                .iter()
                .map(|&p| p as i32)
                .chain(self.minus.iter().map(|&q| -(q as i32)))
                .collect(),
        )
    }

    /// Total number of parts.
    pub fn len(&self) -> usize {
        self.plus.len() + self.minus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.plus.is_empty() && self.minus.is_empty()
    }

    pub fn len_minus(&self) -> usize {
        self.minus.len()
    }

    pub fn mult_plus(&self, i: u32) -> usize {
        self.plus.iter().filter(|&&p| p == i).count()
    }

    pub fn mult_minus(&self, i: u32) -> usize {
        self.minus.iter().filter(|&&q| q == i).count()
    }

    /// Order of `cox_{λ̂}`: `lcm(2λ_i^+, λ_j^-)`.
    pub fn coxeter_order(&self) -> u64 {
        let mut o = 1u64;
        for &p in &self.plus {
            o = num_integer::lcm(o, 2 * p as u64);
        }
        for &q in &self.minus {
            o = num_integer::lcm(o, q as u64);
        }
        o
    }

    /// `λ_{p'}`: conjugacy type of the `p'`-part of `cox_{λ̂}`.
    ///
    /// If `o(λ) = p^a·u` with `p ∤ u`, the `p'`-part is `cox^{p^a k}` for the
    /// `k` with `p^a k ≡ 1 (mod u)`; elements have order ≤ `2n ≤ 12` here, so
    /// `k` is found by walking.
    pub fn p_prime_part(&self, p: u64, g: &Group) -> Bip {
        let mut u = self.coxeter_order();
        let mut pa = 1u64;
        while u % p == 0 {
            u /= p;
            pa *= p;
        }
        let mut exponent = 0u64;
        if u > 1 {
            let mut k = pa % u;
            exponent = pa;
            while k != 1 {
                k = (k + pa) % u;
                exponent += pa;
            }
        }
        let cox = g.index_of(&self.hat().coxeter(g.n));
        let mut power = g.identity_idx();
        for _ in 0..exponent {
            power = g.compose_idx(power, cox);
        }
        let (neg, pos) = g.cycle_type(power);
        Bip {
            plus: neg.into_iter().map(|x| x as u32).collect(),
            minus: pos.into_iter().map(|x| x as u32).collect(),
        }
    }

    /// `τ_n(λ) = 𝝀(λ̂ ⊔ (−1))`: append a 1 to `λ⁻`.
    pub fn tau(&self) -> Bip {
        let mut minus = self.minus.clone();
        minus.push(1);
        minus.sort_unstable_by(|a, b| b.cmp(a));
        Bip { plus: self.plus.clone(), minus }
    }

    /// `rank_p`: p=2 → `Σ(⌊r_i^+/2⌋ + r_i^-)`; p>2 → `Σ(⌊r_i^+/p⌋ + ⌊r_i^-/p⌋)`.
    pub fn rank_p(&self, p: u64) -> usize {
        let n = self.n() as u32;
        let mut r = 0usize;
        for i in 1..=n {
            let (rp, rm) = (self.mult_plus(i), self.mult_minus(i));
            if p == 2 {
                r += rp / 2 + rm;
            } else {
                r += rp / p as usize + rm / p as usize;
            }
        }
        r
    }

    pub fn is_p_regular(&self, p: u64) -> bool {
        let n = self.n() as u32;
        (1..=n).all(|i| {
            if p == 2 {
                self.mult_plus(i) <= 1 && self.mult_minus(i) == 0
            } else {
                self.mult_plus(i) < p as usize && self.mult_minus(i) < p as usize
            }
        })
    }

    pub fn is_p_prime(&self, p: u64) -> bool {
        if p == 2 {
            self.plus.is_empty() && self.minus.iter().all(|&q| q % 2 == 1)
        } else {
            self.plus.iter().all(|&q| q as u64 % p != 0)
                && self.minus.iter().all(|&q| q as u64 % p != 0)
        }
    }

    pub fn parse(s: &str) -> crate::Result<Bip> {
        let Some((l, r)) = s.trim().split_once(';') else {
            return Err(crate::Error::BadBipartition(s.to_string()));
        };
        let side = |t: &str| -> crate::Result<Vec<u32>> {
            let t = t.trim();
            if t.is_empty() {
                return Ok(Vec::new());
            }
            let mut parts: Vec<u32> = Vec::new();
            if t.contains(',') {
                for tok in t.split(',') {
                    parts.push(
                        tok.trim().parse().map_err(|_| crate::Error::BadBipartition(s.into()))?,
                    );
                }
            } else {
                // compact digit-run form, parts < 10 at desk scale
                for ch in t.chars() {
                    let d = ch.to_digit(10).filter(|&d| d > 0);
                    parts.push(d.ok_or_else(|| crate::Error::BadBipartition(s.into()))?);
                }
            }
            let mut sorted = parts.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            if sorted != parts {
                return Err(crate::Error::BadBipartition(format!("{s}: parts not decreasing")));
            }
            Ok(parts)
        };
        Ok(Bip { plus: side(l)?, minus: side(r)? })
    }
}

impl fmt::Display for Bip {
    /// Compact form: `"21;1"`, `";2"`, `"11;"`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.plus {
            write!(f, "{p}")?;
        }
        f.write_str(";")?;
        for q in &self.minus {
            write!(f, "{q}")?;
        }
        Ok(())
    }
}

/// All signed compositions of `n`, ordered by part count then lexicographic
/// on the part vectors.  `n = 0` yields the single empty composition.
pub fn all_compositions(n: usize) -> Vec<SComp> {
    let mut out = Vec::new();
    let mut acc = Vec::new();
    fn rec(rem: usize, acc: &mut Vec<i32>, out: &mut Vec<SComp>) {
        if rem == 0 {
            out.push(SComp(acc.clone()));
            return;
        }
        for k in 1..=rem {
            for sgn in [1i32, -1] {
                acc.push(sgn * k as i32);
                rec(rem - k, acc, out);
                acc.pop();
            }
        }
    }
    rec(n, &mut acc, &mut out);
    out.sort_by(|a, b| (a.len(), &a.0).cmp(&(b.len(), &b.0)));
    out
}

/// All bipartitions of `n`, ordered by their `hat` composition under the
/// composition order (part count, then lex).
pub fn all_bipartitions(n: usize) -> Vec<Bip> {
    let mut bips: Vec<Bip> = Vec::new();
    for c in all_compositions(n) {
        let l = c.lambda();
        if !bips.contains(&l) {
            bips.push(l);
        }
    }
    bips.sort_by(|a, b| {
        let (ha, hb) = (a.hat(), b.hat());
        (ha.len(), &ha.0).cmp(&(hb.len(), &hb.0))
    });
    bips
}

/// `Comp_p(n) = {C : p divides |𝒲(C)|}` where `|𝒲(C)|` is
/// [`normalizer_order`].
pub fn comp_p(n: usize, p: u64) -> Vec<SComp> {
    all_compositions(n)
        .into_iter()
        .filter(|c| normalizer_order(c) % p as usize == 0)
        .collect()
}

/// `|𝒲(C)| = ∏_i r_i^+(C)! · ∏_i 2^{r_i^-(C)} r_i^-(C)!`.
pub fn normalizer_order(c: &SComp) -> usize {
    let n = c.n() as u32;
    let mut o = 1usize;
    for i in 1..=n {
        o *= factorial(c.mult_plus(i));
        o *= (1usize << c.mult_minus(i)) * factorial(c.mult_minus(i));
    }
    o
}

/// Conjugacy type of a group element as a bipartition: sign-changing cycles
/// land in `λ⁺`, sign-preserving ones in `λ⁻`.
pub fn conjugacy_type(g: &Group, u: u32) -> Bip {
    let (neg, pos) = g.cycle_type(u);
    Bip {
        plus: neg.into_iter().map(|x| x as u32).collect(),
        minus: pos.into_iter().map(|x| x as u32).collect(),
    }
}

/// `X_C` membership: `w(α) > 0` for every `α ∈ Δ_C`.
pub fn is_min_coset_rep(w: &SignedPerm, deltas: &[Root]) -> bool {
    deltas.iter().all(|r| root_is_positive(&act_on_root(w, r)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(all_compositions(0).len(), 1);
        for n in 1..=5 {
            assert_eq!(all_compositions(n).len(), 2 * 3usize.pow(n as u32 - 1));
        }
        assert_eq!(all_bipartitions(2).len(), 5);
        assert_eq!(all_bipartitions(3).len(), 10);
        assert_eq!(all_bipartitions(4).len(), 20);
    }

    #[test]
    fn lambda_hat_roundtrip() {
        assert_eq!(
            SComp(vec![-3, 1]).lambda(),
            Bip { plus: vec![1], minus: vec![3] }
        );
        assert_eq!(
            SComp(vec![2, -1, 1, -2]).lambda(),
            Bip { plus: vec![2, 1], minus: vec![2, 1] }
        );
        let b = Bip { plus: vec![2, 1], minus: vec![1] };
        assert_eq!(b.hat(), SComp(vec![2, 1, -1]));
        for n in 1..=4 {
            for c in all_compositions(n) {
                assert_eq!(c.lambda().hat().lambda(), c.lambda());
            }
        }
    }

    #[test]
    fn generator_sets() {
        // C=(n): everything; C=(−n): only the s_i
        let c = SComp(vec![3]);
        assert_eq!(c.generators(3).len(), 3);
        let c = SComp(vec![-3]);
        assert_eq!(c.generators(3), vec![SignedPerm::s(3, 1), SignedPerm::s(3, 2)]);
        let c = SComp(vec![1, -1]);
        assert_eq!(c.generators(2), vec![SignedPerm::t(2, 1)]);
        assert_eq!(c.simple_roots(2), vec![vec![2, 0]]);
    }

    #[test]
    fn subgroup_membership_and_order() {
        let g = Group::new(3);
        for c in all_compositions(3) {
            let count = g.elems().iter().filter(|w| c.contains_perm(w)).count();
            assert_eq!(count, c.subgroup_order(), "order of W_{c}");
        }
    }

    #[test]
    fn orders() {
        let neg = SComp(vec![-3]);
        let pos = SComp(vec![3]);
        assert!(neg.subset(&pos));
        assert!(!pos.subset(&neg));
        assert!(SComp(vec![1, -1]).preceq(&SComp(vec![-2])));
        for c in all_compositions(3) {
            assert!(c.preceq(&SComp(vec![3])));
            assert!(c.subset(&c));
        }
        // subset ⇒ the length inequalities of Remark 1.1
        for c in all_compositions(3) {
            for d in all_compositions(3) {
                if c.subset(&d) {
                    assert!(c.len() >= d.len());
                    assert!(c.len_minus() >= d.len_minus());
                    if c.len() == d.len() && c.len_minus() == d.len_minus() {
                        assert_eq!(c, d);
                    }
                }
            }
        }
    }

    #[test]
    fn coxeter_conjugacy_types() {
        let g2 = Group::new(2);
        let g3 = Group::new(3);
        for (g, n) in [(&g2, 2), (&g3, 3)] {
            for c in all_compositions(n) {
                let cox = g.index_of(&c.coxeter(n));
                assert_eq!(conjugacy_type(g, cox), c.lambda(), "Λ(cox_C) = 𝝀(C) for C={c}");
            }
        }
    }

    #[test]
    fn normalizer_orders() {
        assert_eq!(normalizer_order(&SComp(vec![-3])), 2);
        assert_eq!(normalizer_order(&SComp(vec![3])), 1);
        assert_eq!(normalizer_order(&SComp(vec![-1, -1])), 8);
        assert_eq!(normalizer_order(&SComp(vec![1, -1])), 2);
    }

    #[test]
    fn p_classifications() {
        let b2: Vec<Bip> = all_bipartitions(2).into_iter().filter(|b| b.is_p_prime(2)).collect();
        assert_eq!(b2, vec![Bip { plus: vec![], minus: vec![1, 1] }]);
        let n3_reg: Vec<Bip> =
            all_bipartitions(3).into_iter().filter(|b| b.is_p_regular(3)).collect();
        let n3_pp: Vec<Bip> =
            all_bipartitions(3).into_iter().filter(|b| b.is_p_prime(3)).collect();
        assert_eq!(n3_reg.len(), 8);
        assert_eq!(n3_pp.len(), 8);
        for n in 1..=6 {
            for p in [2u64, 3, 5] {
                let bips = all_bipartitions(n);
                let reg = bips.iter().filter(|b| b.is_p_regular(p)).count();
                let pp = bips.iter().filter(|b| b.is_p_prime(p)).count();
                assert_eq!(reg, pp, "|Bip_p-reg| = |Bip_p'| at n={n}, p={p}");
            }
        }
    }

    #[test]
    fn p_prime_parts() {
        let g = Group::new(2);
        let two_pos = Bip { plus: vec![2], minus: vec![] };
        let got = two_pos.p_prime_part(2, &g);
        assert_eq!(got, Bip { plus: vec![], minus: vec![1, 1] });
        let two_neg = Bip { plus: vec![], minus: vec![2] };
        assert_eq!(two_neg.p_prime_part(2, &g), Bip { plus: vec![], minus: vec![1, 1] });
        // p ∤ o(λ): fixed
        assert_eq!(two_neg.p_prime_part(3, &g), two_neg);
        // idempotence, and image ⊆ Bip_p'
        let g3 = Group::new(3);
        for b in all_bipartitions(3) {
            for p in [2u64, 3] {
                let pp = b.p_prime_part(p, &g3);
                assert!(pp.is_p_prime(p), "{b} -> {pp} not {p}'");
                assert_eq!(pp.p_prime_part(p, &g3), pp);
            }
        }
    }

    #[test]
    fn tau_and_rank() {
        assert_eq!(Bip { plus: vec![2], minus: vec![] }.tau(), Bip { plus: vec![2], minus: vec![1] });
        assert_eq!(
            Bip { plus: vec![], minus: vec![2, 1] }.tau(),
            Bip { plus: vec![], minus: vec![2, 1, 1] }
        );
        assert_eq!(
            Bip { plus: vec![1], minus: vec![1, 1] }.tau(),
            Bip { plus: vec![1], minus: vec![1, 1, 1] }
        );
        assert_eq!(Bip { plus: vec![], minus: vec![1, 1] }.rank_p(2), 2);
        assert_eq!(Bip { plus: vec![1, 1, 1], minus: vec![] }.rank_p(3), 1);
        for b in all_bipartitions(4) {
            for p in [2u64, 3] {
                assert_eq!(b.rank_p(p) == 0, b.is_p_regular(p));
            }
        }
    }

    #[test]
    fn parse_display() {
        assert_eq!(SComp::parse("-3,1").unwrap(), SComp(vec![-3, 1]));
        assert_eq!(SComp::parse("-3,1").unwrap().to_string(), "-3,1");
        assert!(SComp::parse("1,0").is_err());
        assert_eq!(Bip::parse("21;1").unwrap(), Bip { plus: vec![2, 1], minus: vec![1] });
        assert_eq!(Bip::parse("2,1;1").unwrap(), Bip { plus: vec![2, 1], minus: vec![1] });
        assert_eq!(Bip::parse(";2").unwrap(), Bip { plus: vec![], minus: vec![2] });
        assert_eq!(Bip::parse(";2").unwrap().to_string(), ";2");
        assert_eq!(Bip { plus: vec![1, 1], minus: vec![] }.to_string(), "11;");
        assert!(Bip::parse("12;").is_err()); // not decreasing
    }

    #[test]
    fn bip_order_matches_canonical() {
        let bips = all_bipartitions(2);
        let shown: Vec<String> = bips.iter().map(|b| b.to_string()).collect();
        assert_eq!(shown, vec![";2", "2;", ";11", "1;1", "11;"]);
    }
}
