//! Signed permutations, the root system of type `B_n`, and the group `W_n`.
//!
//! An element is stored as its image vector `[w(1), …, w(n)]` with entries in
//! `{±1, …, ±n}`; the images of negative letters are forced by `w(-i) = -w(i)`.
//! Composition is right-to-left: `(v ∘ w)(i) = v(w(i))`.
//!
//! The whole group is enumerated once, sorted lexicographically by image
//! vectors under the *value order* `1 < -1 < 2 < -2 < …`.  This puts the
//! identity first and gives every element a computable rank (mixed-radix:
//! signs are free, absolute values form a permutation), so elements can be
//! addressed by dense `u32` indices without hashing.

use std::cell::OnceCell;

/// A signed permutation, by its images of `1, …, n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SignedPerm(pub Vec<i8>);

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        SignedPerm((1..=n as i8).collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// Image of `v` (with `v` possibly negative).
    #[inline]
    pub fn apply(&self, v: i8) -> i8 {
        if v > 0 {
            self.0[(v - 1) as usize]
        } else {
            -self.0[(-v - 1) as usize]
        }
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        SignedPerm(other.0.iter().map(|&v| self.apply(v)).collect())
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut img = vec![0i8; self.n()];
        for i in 1..=self.n() as i8 {
            let v = self.apply(i);
            if v > 0 {
                img[(v - 1) as usize] = i;
            } else {
                img[(-v - 1) as usize] = -i;
            }
        }
        SignedPerm(img)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v == i as i8 + 1)
    }

    /// The longest element `w_n = -id`.
    pub fn longest(n: usize) -> Self {
        SignedPerm((1..=n as i8).map(|i| -i).collect())
    }

    /// `t_i = (i, -i)`, the sign change at `i` (1-based).
    pub fn t(n: usize, i: usize) -> Self {
        let mut w = Self::identity(n);
        w.0[i - 1] = -(i as i8);
        w
    }

    /// `s_i = (i, i+1)(-i, -(i+1))`, the plain adjacent transposition.
    pub fn s(n: usize, i: usize) -> Self {
        let mut w = Self::identity(n);
        w.0[i - 1] = i as i8 + 1;
        w.0[i] = i as i8;
        w
    }
}

/// A root, as coordinates in the basis `e_1, …, e_n` (so `2e_i` has a `2`).
pub type Root = Vec<i16>;

/// Positive when the highest-index nonzero coordinate is positive.
pub fn root_is_positive(r: &Root) -> bool {
    for &c in r.iter().rev() {
        if c != 0 {
            return c > 0;
        }
    }
    false
}

/// `w(e_i) = sign(w(i))·e_{|w(i)|}`, extended linearly.
pub fn act_on_root(w: &SignedPerm, r: &Root) -> Root {
    let n = w.n();
    let mut out = vec![0i16; n];
    for i in 0..n {
        if r[i] != 0 {
            let v = w.0[i];
            if v > 0 {
                out[(v - 1) as usize] += r[i];
            } else {
                out[(-v - 1) as usize] -= r[i];
            }
        }
    }
    out
}

/// The positive roots `Φ_n^+`: all `2e_i`, then `e_j ± e_i` for `i < j`.
/// `|Φ_n^+| = n²`.
pub fn positive_roots(n: usize) -> Vec<Root> {
    let mut roots = Vec::with_capacity(n * n);
    for i in 0..n {
        let mut r = vec![0i16; n];
        r[i] = 2;
        roots.push(r);
    }
    for i in 0..n {
        for j in i + 1..n {
            for s in [1i16, -1] {
                let mut r = vec![0i16; n];
                r[j] = 1;
                r[i] = s;
                roots.push(r);
            }
        }
    }
    roots
}

/// The reflection along a root: `2e_i ↦ t_i`, `e_j - e_i ↦ (i,j)`,
/// `e_j + e_i ↦` the signed transposition `i ↦ -j, j ↦ -i`.
pub fn reflection_of_root(n: usize, r: &Root) -> SignedPerm {
    let support: Vec<usize> = (0..n).filter(|&k| r[k] != 0).collect();
    let mut w = SignedPerm::identity(n);
    match support.len() {
        1 => {
            let i = support[0];
            debug_assert_eq!(r[i].abs(), 2);
            w.0[i] = -(i as i8 + 1);
        }
        2 => {
            let (i, j) = (support[0], support[1]);
            if r[i] * r[j] > 0 {
                // e_i + e_j up to sign
                w.0[i] = -(j as i8 + 1);
                w.0[j] = -(i as i8 + 1);
            } else {
                w.0[i] = j as i8 + 1;
                w.0[j] = i as i8 + 1;
            }
        }
        _ => panic!("not a root: {r:?}"),
    }
    w
}

/// The enumerated group `W_n` with dense indices.
pub struct Group {
    pub n: usize,
    elems: Vec<SignedPerm>,
    inv: Vec<u32>,
    pos_roots: Vec<Root>,
    lengths: OnceCell<Vec<u16>>,
    /// Full multiplication table `table[u·|W| + v] = uv`, built on demand
    /// (only sensible for `n ≤ 5`; 59 MB there, prohibitive at `n = 6`).
    mult: OnceCell<Vec<u32>>,
}

impl Group {
    pub fn new(n: usize) -> Group {
        assert!((1..=crate::MAX_CAP_N).contains(&n), "n out of range");
        let mut elems = Vec::with_capacity((1usize << n) * factorial(n));
        let mut perm: Vec<i8> = (1..=n as i8).collect();
        permute_all(&mut perm, 0, &mut |p| {
            for mask in 0..1u32 << n {
                let img: Vec<i8> = p
                    .iter()
                    .enumerate()
                    .map(|(k, &v)| if mask >> k & 1 == 1 { -v } else { v })
                    .collect();
                elems.push(SignedPerm(img));
            }
        });
        elems.sort_by_key(|w| value_key(w));
        let g = Group {
            n,
            elems,
            inv: Vec::new(),
            pos_roots: positive_roots(n),
            lengths: OnceCell::new(),
            mult: OnceCell::new(),
        };
        let inv: Vec<u32> = (0..g.order()).map(|u| g.index_of(&g.elems[u].inverse())).collect();
        Group { inv, ..g }
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elems(&self) -> &[SignedPerm] {
        &self.elems
    }

    pub fn elem(&self, u: u32) -> &SignedPerm {
        &self.elems[u as usize]
    }

    pub fn identity_idx(&self) -> u32 {
        0
    }

    pub fn longest_idx(&self) -> u32 {
        self.index_of(&SignedPerm::longest(self.n))
    }

    pub fn inverse_idx(&self, u: u32) -> u32 {
        self.inv[u as usize]
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.pos_roots
    }

    /// Rank of `w` in the sorted enumeration, computed directly: at each
    /// position count the admissible smaller images, weighting the free
    /// suffix by `2^{n-i-1}·(n-i-1)!`.
    pub fn index_of(&self, w: &SignedPerm) -> u32 {
        let n = self.n;
        let mut used = 0u32; // bitmask of absolute values already placed
        let mut rank = 0usize;
        for i in 0..n {
            let v = w.0[i];
            let (a, neg) = ((v.unsigned_abs() as usize) - 1, v < 0);
            // images strictly smaller in value order with unused absolute value
            let cnt = 2 * count_unused_below(used, a) + usize::from(neg);
            assert!(used >> a & 1 == 0, "repeated letter in signed permutation");
            let suffix = (1usize << (n - i - 1)) * factorial(n - i - 1);
            rank += cnt * suffix;
            used |= 1 << a;
        }
        rank as u32
    }

    #[inline]
    pub fn compose_idx(&self, u: u32, v: u32) -> u32 {
        if let Some(t) = self.mult.get() {
            return t[u as usize * self.order() + v as usize];
        }
        self.index_of(&self.elems[u as usize].compose(&self.elems[v as usize]))
    }

    /// Build the full multiplication table (idempotent).  Call before bulk
    /// products at `n ≤ 5`.
    pub fn ensure_mult_table(&self) {
        assert!(self.n <= 5, "multiplication table too large for n = 6");
        self.mult.get_or_init(|| {
            let m = self.order();
            let mut t = vec![0u32; m * m];
            for u in 0..m {
                let wu = &self.elems[u];
                for v in 0..m {
                    t[u * m + v] = self.index_of(&wu.compose(&self.elems[v]));
                }
            }
            t
        });
    }

    pub fn length(&self, u: u32) -> usize {
        self.lengths.get_or_init(|| {
            self.elems
                .iter()
                .map(|w| {
                    self.pos_roots
                        .iter()
                        .filter(|r| !root_is_positive(&act_on_root(w, r)))
                        .count() as u16
                })
                .collect()
        })[u as usize] as usize
    }

    /// Conjugacy data of `w`: cycle lengths of the underlying permutation,
    /// split by the product of signs over the cycle — *negative* products
    /// (sign-changing cycles) land in the first list, positive in the second.
    /// Both come back sorted decreasingly.
    pub fn cycle_type(&self, u: u32) -> (Vec<usize>, Vec<usize>) {
        let w = &self.elems[u as usize];
        let n = self.n;
        let mut seen = vec![false; n];
        let (mut neg, mut pos) = (Vec::new(), Vec::new());
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let (mut len, mut sign, mut j) = (0usize, 1i8, start);
            while !seen[j] {
                seen[j] = true;
                let v = w.0[j];
                if v < 0 {
                    sign = -sign;
                }
                j = (v.unsigned_abs() - 1) as usize;
                len += 1;
            }
            if sign < 0 {
                neg.push(len);
            } else {
                pos.push(len);
            }
        }
        neg.sort_unstable_by(|a, b| b.cmp(a));
        pos.sort_unstable_by(|a, b| b.cmp(a));
        (neg, pos)
    }

    /// Indices of the simple reflections `t_1, s_1, …, s_{n-1}`.
    pub fn simple_gens(&self) -> Vec<u32> {
        let mut gens = vec![self.index_of(&SignedPerm::t(self.n, 1))];
        for i in 1..self.n {
            gens.push(self.index_of(&SignedPerm::s(self.n, i)));
        }
        gens
    }
}

fn value_key(w: &SignedPerm) -> Vec<(i8, bool)> {
    w.0.iter().map(|&v| (v.abs(), v < 0)).collect()
}

fn count_unused_below(used: u32, a: usize) -> usize {
    (used & ((1u32 << a) - 1)).count_zeros() as usize - (32 - a)
}

pub fn factorial(k: usize) -> usize {
    (1..=k).product()
}

fn permute_all(p: &mut Vec<i8>, k: usize, f: &mut impl FnMut(&[i8])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute_all(p, k + 1, f);
        p.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_identity_first() {
        for n in 1..=4 {
            let g = Group::new(n);
            assert_eq!(g.order(), (1 << n) * factorial(n));
            assert!(g.elem(0).is_identity());
        }
    }

    #[test]
    fn rank_roundtrip() {
        let g = Group::new(3);
        for u in 0..g.order() as u32 {
            assert_eq!(g.index_of(g.elem(u)), u);
        }
    }

    #[test]
    fn composition_order() {
        // t_1 then s_1: 1 ↦ -1 ↦ -2?  No: (t₁s₁)(1) = t₁(s₁(1)) = t₁(2) = 2,
        // (t₁s₁)(2) = t₁(1) = -1.
        let t1 = SignedPerm::t(2, 1);
        let s1 = SignedPerm::s(2, 1);
        assert_eq!(t1.compose(&s1).0, vec![2, -1]);
        assert_eq!(s1.compose(&t1).0, vec![-2, 1]);
    }

    #[test]
    fn lengths() {
        let g = Group::new(3);
        assert_eq!(g.length(0), 0);
        assert_eq!(g.length(g.longest_idx()), 9); // n²
        for u in 0..g.order() as u32 {
            assert_eq!(g.length(u), g.length(g.inverse_idx(u)));
            // ℓ(w_n w) = n² - ℓ(w)
            let wn_w = g.compose_idx(g.longest_idx(), u);
            assert_eq!(g.length(wn_w), 9 - g.length(u));
        }
    }

    #[test]
    fn reflection_elements() {
        let g = Group::new(3);
        for r in g.positive_roots() {
            let s = reflection_of_root(3, r);
            // involution, and s(r) = -r
            assert!(s.compose(&s).is_identity());
            let neg: Root = r.iter().map(|&c| -c).collect();
            assert_eq!(act_on_root(&s, r), neg);
        }
        // t_{i+1} = s_i t_i s_i
        for i in 1..3 {
            let (s, t) = (SignedPerm::s(3, i), SignedPerm::t(3, i));
            assert_eq!(s.compose(&t).compose(&s), SignedPerm::t(3, i + 1));
        }
    }

    #[test]
    fn cycle_types() {
        let g = Group::new(2);
        // identity: no sign changes anywhere → (∅; 11)
        assert_eq!(g.cycle_type(0), (vec![], vec![1, 1]));
        // t₁ = (1,-1): its 1-cycle has sign -1 → (1; 1)
        let t1 = g.index_of(&SignedPerm::t(2, 1));
        assert_eq!(g.cycle_type(t1), (vec![1], vec![1]));
        // t₁s₁ = [2,-1]: one 2-cycle, one sign change → (2; ∅)
        let c = g.index_of(&SignedPerm(vec![2, -1]));
        assert_eq!(g.cycle_type(c), (vec![2], vec![]));
        // s₁: a plain 2-cycle → (∅; 2)
        let s1 = g.index_of(&SignedPerm::s(2, 1));
        assert_eq!(g.cycle_type(s1), (vec![], vec![2]));
    }

    #[test]
    fn mult_table_agrees() {
        let g = Group::new(3);
        g.ensure_mult_table();
        for u in (0..g.order() as u32).step_by(7) {
            for v in (0..g.order() as u32).step_by(5) {
                let direct = g.index_of(&g.elem(u).compose(g.elem(v)));
                assert_eq!(g.compose_idx(u, v), direct);
            }
        }
    }
}
