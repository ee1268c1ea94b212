//! Minimal coset representatives `X_C`, double-coset indices `X_{CD}`, the
//! refined sets `X_{CD}^⊂` and `X_{CD}^≡`, and intersection compositions.
//!
//! `X_C = {w : w(α) > 0 for all α ∈ Δ_C}` is the set of minimal-length left
//! coset representatives of `W_C`; every `w` factors uniquely as `x·u` with
//! `x ∈ X_C`, `u ∈ W_C`, and `ℓ(w) = ℓ(x) + ℓ(u)`.  All tables are cached by
//! composition inside a [`Cosets`] context (single-threaded construction).

use crate::comp::{all_compositions, is_min_coset_rep, Bip, SComp};
use crate::group::{act_on_root, Group, SignedPerm};
use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

pub struct Cosets<'a> {
    pub g: &'a Group,
    reps: RefCell<HashMap<SComp, Rc<Vec<u32>>>>,
    members: RefCell<HashMap<SComp, Rc<Vec<u32>>>>,
    bip_sub: RefCell<HashMap<(Bip, Bip), bool>>,
}

impl<'a> Cosets<'a> {
    pub fn new(g: &'a Group) -> Self {
        Cosets {
            g,
            reps: RefCell::new(HashMap::new()),
            members: RefCell::new(HashMap::new()),
            bip_sub: RefCell::new(HashMap::new()),
        }
    }

    /// `X_C`, ascending in the group enumeration order.
    pub fn reps(&self, c: &SComp) -> Rc<Vec<u32>> {
        if let Some(r) = self.reps.borrow().get(c) {
            return r.clone();
        }
        let deltas = c.simple_roots(self.g.n);
        let v: Vec<u32> = self
            .g
            .elems()
            .iter()
            .enumerate()
            .filter(|(_, w)| is_min_coset_rep(w, &deltas))
            .map(|(i, _)| i as u32)
            .collect();
        let rc = Rc::new(v);
        self.reps.borrow_mut().insert(c.clone(), rc.clone());
        rc
    }

    /// The elements of `W_C`, ascending.
    pub fn members(&self, c: &SComp) -> Rc<Vec<u32>> {
        if let Some(r) = self.members.borrow().get(c) {
            return r.clone();
        }
        let v: Vec<u32> = self
            .g
            .elems()
            .iter()
            .enumerate()
            .filter(|(_, w)| c.contains_perm(w))
            .map(|(i, _)| i as u32)
            .collect();
        let rc = Rc::new(v);
        self.members.borrow_mut().insert(c.clone(), rc.clone());
        rc
    }

    /// Longest element `w_C` of `W_C`.
    pub fn longest_in(&self, c: &SComp) -> u32 {
        *self
            .members(c)
            .iter()
            .max_by_key(|&&u| self.g.length(u))
            .expect("W_C is nonempty")
    }

    /// `X_{CD} = X_C⁻¹ ∩ X_D`.
    pub fn double(&self, c: &SComp, d: &SComp) -> Vec<u32> {
        let xc = self.reps(c);
        let mut in_xc_inv = vec![false; self.g.order()];
        for &u in xc.iter() {
            in_xc_inv[self.g.inverse_idx(u) as usize] = true;
        }
        self.reps(d).iter().copied().filter(|&u| in_xc_inv[u as usize]).collect()
    }

    /// `X_{CD}^⊂ = {d ∈ X_{CD} : d⁻¹ W_C d ⊆ W_D}`, via the generators of `W_C`.
    pub fn double_sub(&self, c: &SComp, d: &SComp) -> Vec<u32> {
        let gens = c.generators(self.g.n);
        self.double(c, d)
            .into_iter()
            .filter(|&u| {
                let dp = &self.g.elems()[u as usize];
                let di = dp.inverse();
                gens.iter().all(|s| d.contains_perm(&di.compose(s).compose(dp)))
            })
            .collect()
    }

    /// `X_{CD}^≡ = {d ∈ X_{CD} : Δ_C = d(Δ_D)}` (as sets of roots).
    pub fn double_equiv(&self, c: &SComp, d: &SComp) -> Vec<u32> {
        let n = self.g.n;
        let mut dc = c.simple_roots(n);
        dc.sort();
        let dd = d.simple_roots(n);
        self.double(c, d)
            .into_iter()
            .filter(|&u| {
                let dp = &self.g.elems()[u as usize];
                let mut image: Vec<_> = dd.iter().map(|r| act_on_root(dp, r)).collect();
                image.sort();
                image == dc
            })
            .collect()
    }

    /// The preorder `⊂` on bipartitions: `a ⊂ b` iff some conjugate of
    /// `W_{â}` is contained in `W_{b̂}`, i.e. `X_{â,b̂}^⊂ ≠ ∅`.
    pub fn bip_subset(&self, a: &Bip, b: &Bip) -> bool {
        let key = (a.clone(), b.clone());
        if let Some(&v) = self.bip_sub.borrow().get(&key) {
            return v;
        }
        let v = !self.double_sub(&a.hat(), &b.hat()).is_empty();
        self.bip_sub.borrow_mut().insert(key, v);
        v
    }

    /// The composition `E = C ∩ ᵈD` with `W_E = W_C ∩ d·W_D·d⁻¹`, for
    /// `d ∈ X_{CD}`.  Always satisfies `E ⊂ C`.
    ///
    /// Reconstructed from the orbits of the reflections of `H = W_C ∩ ᵈW_D`
    /// on `{±1, …, ±n}`: each orbit of absolute values is a block, negative
    /// unless the orbit fuses some `k` with `−k`, ordered by minimal element.
    /// The result is validated against `H` (reflection membership and order);
    /// on failure an exhaustive search over `E ⊂ C` takes over.
    pub fn intersection_composition(
        &self,
        c: &SComp,
        d_idx: u32,
        dd: &SComp,
    ) -> crate::Result<SComp> {
        let n = self.g.n;
        let g = self.g;
        let dp = g.elems()[d_idx as usize].clone();
        let di = dp.inverse();
        let in_h = |w: &SignedPerm| c.contains_perm(w) && dd.contains_perm(&di.compose(w).compose(&dp));

        // reflections of H, as (root, element) pairs
        let mut refl = Vec::new();
        for r in g.positive_roots() {
            let s = crate::group::reflection_of_root(n, r);
            if in_h(&s) {
                refl.push((r.clone(), s));
            }
        }

        // union-find on {+1..+n, −1..−n}: slot k−1 for +k, n+k−1 for −k
        let mut parent: Vec<usize> = (0..2 * n).collect();
        fn find(p: &mut Vec<usize>, i: usize) -> usize {
            if p[i] != i {
                let r = find(p, p[i]);
                p[i] = r;
            }
            p[i]
        }
        let union = |p: &mut Vec<usize>, a: usize, b: usize| {
            let (ra, rb) = (find(p, a), find(p, b));
            if ra != rb {
                p[ra] = rb;
            }
        };
        for (r, _) in &refl {
            let support: Vec<usize> = (0..n).filter(|&i| r[i] != 0).collect();
            match support.as_slice() {
                [i] => union(&mut parent, *i, n + i),
                [i, j] => {
                    if r[*i] * r[*j] > 0 {
                        // e_j + e_i: fuses +i with −j
                        union(&mut parent, *i, n + j);
                        union(&mut parent, n + i, *j);
                    } else {
                        union(&mut parent, *i, *j);
                        union(&mut parent, n + i, n + j);
                    }
                }
                _ => unreachable!("roots have support 1 or 2"),
            }
        }

        let candidate = (|| -> Option<SComp> {
            let mut seen = vec![false; n];
            let mut blocks: Vec<(usize, usize, bool)> = Vec::new(); // (min, size, positive)
            for k in 0..n {
                if seen[k] {
                    continue;
                }
                let root = find(&mut parent, k);
                let orbit: Vec<usize> =
                    (k..n).filter(|&m| find(&mut parent, m) == root).collect();
                for &m in &orbit {
                    seen[m] = true;
                }
                // must be an interval of letters
                if orbit.last() != Some(&(k + orbit.len() - 1)) {
                    return None;
                }
                let positive = find(&mut parent, n + k) == root;
                blocks.push((k, orbit.len(), positive));
            }
            blocks.sort_by_key(|b| b.0);
            Some(SComp(
                blocks
                    .iter()
                    .map(|&(_, size, pos)| if pos { size as i32 } else { -(size as i32) })
                    .collect(),
            ))
        })();

        let validate = |e: &SComp| -> bool {
            e.subset(c)
                && refl.iter().all(|(_, s)| e.contains_perm(s))
                && e.simple_roots(n).iter().all(|r| {
                    in_h(&crate::group::reflection_of_root(n, r))
                })
                && {
                    let order = self.members(c).iter().filter(|&&u| {
                        dd.contains_perm(&di.compose(&g.elems()[u as usize]).compose(&dp))
                    }).count();
                    order == e.subgroup_order()
                }
        };

        if let Some(e) = candidate {
            if validate(&e) {
                return Ok(e);
            }
        }
        // exhaustive fallback — never expected to run, but cheap at desk scale
        for e in all_compositions(n) {
            if validate(&e) {
                return Ok(e);
            }
        }
        Err(crate::Error::Internal(format!(
            "no composition matches W_{c} ∩ ᵈW_{dd} for d = index {d_idx}"
        )))
    }
}
