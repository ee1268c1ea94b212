//! Univariate polynomials over a [`Field`], lowest coefficient first.
//!
//! Minimal and characteristic polynomials of the operators met here always
//! split over the prime field with nonnegative integer roots (the
//! eigenvalues are the `π_λ`-values, which are coset counts), so the display
//! routine factors by root search and prints `T(T-2)(T-8)^2`-style strings;
//! anything that refuses to split falls back to the coefficient form.

use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    pub field: Field,
    /// `coeffs[k]` is the coefficient of `T^k`; invariant: no trailing zeros.
    pub coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn monic(&self) -> Poly {
        let Some(lead) = self.coeffs.last() else { return self.clone() };
        let inv = lead.inv();
        Poly {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| c.mul(&inv)).collect(),
        }
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Divide by `(T - r)`; `None` if `r` is not a root.
    pub fn deflate(&self, r: &Scalar) -> Option<Poly> {
        if self.is_zero() || !self.eval(r).is_zero() {
            return None;
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() - 1];
        let mut carry = self.field.zero();
        for k in (0..self.coeffs.len() - 1).rev() {
            carry = self.coeffs[k + 1].add(&carry.mul(r));
            out[k] = carry.clone();
        }
        Some(Poly::new(self.field, out))
    }

    /// Product of `(T - r)` over the given roots (with multiplicity).
    pub fn from_roots(field: Field, roots: &[Scalar]) -> Poly {
        let mut coeffs = vec![field.one()];
        for r in roots {
            let mut next = vec![field.zero(); coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k + 1] = next[k + 1].add(c);
                next[k] = next[k].sub(&c.mul(r));
            }
            coeffs = next;
        }
        Poly::new(field, coeffs)
    }

    /// Try to split completely using the supplied candidate roots; returns
    /// `(root, multiplicity)` sorted, with roots ordered by their display.
    pub fn split_with_candidates(&self, candidates: &[Scalar]) -> Option<Vec<(Scalar, usize)>> {
        let mut rest = self.monic();
        let mut found: Vec<(Scalar, usize)> = Vec::new();
        let mut cands: Vec<Scalar> = candidates.to_vec();
        cands.dedup();
        for r in &cands {
            let mut mult = 0;
            while let Some(next) = rest.deflate(r) {
                rest = next;
                mult += 1;
            }
            if mult > 0 {
                found.push((r.clone(), mult));
            }
        }
        if rest.degree() == 0 {
            Some(found)
        } else {
            None
        }
    }

    /// `"T(T-2)(T-4)(T-8)^2(T-32)"` when the polynomial splits over the
    /// candidates (roots printed in ascending numeric order); otherwise the
    /// expanded form `"T^3 - 6T + 2"`.
    pub fn display_factored(&self, candidates: &[Scalar]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        if let Some(mut factors) = self.monic().split_with_candidates(candidates) {
            factors.sort_by_key(|(r, _)| root_sort_key(r));
            let mut s = String::new();
            for (r, mult) in &factors {
                let base = if r.is_zero() {
                    "T".to_string()
                } else if r.display().starts_with('-') {
                    format!("(T+{})", r.neg().display())
                } else {
                    format!("(T-{})", r.display())
                };
                s.push_str(&base);
                if *mult > 1 {
                    s.push_str(&format!("^{mult}"));
                }
            }
            return s;
        }
        self.display_expanded()
    }

    pub fn display_expanded(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let var = match k {
                0 => String::new(),
                1 => "T".into(),
                _ => format!("T^{k}"),
            };
            let cs = c.display();
            let term = if k == 0 {
                cs
            } else if cs == "1" {
                var
            } else if cs == "-1" {
                format!("-{var}")
            } else {
                format!("{cs}{var}")
            };
            terms.push(term);
        }
        let mut s = terms[0].clone();
        for t in &terms[1..] {
            if let Some(stripped) = t.strip_prefix('-') {
                s.push_str(" - ");
                s.push_str(stripped);
            } else {
                s.push_str(" + ");
                s.push_str(t);
            }
        }
        s
    }
}

fn root_sort_key(r: &Scalar) -> (i64, String) {
    // integers (the only case in practice) numerically, others by display
    match r.as_i64() {
        Some(v) => (v, String::new()),
        None => match r {
            Scalar::Fp { v, .. } => (*v as i64, String::new()),
            _ => (i64::MAX, r.display()),
        },
    }
}
