//! The descent-style algebra `Σ′(W_n)` inside the group algebra `KW_n`,
//! with free basis `{x_C}_{C ∈ Comp(n)}` where `x_C = Σ_{w ∈ X_C} w`.
//!
//! Products are computed in the group algebra and pulled back to the
//! `x`-basis by exact linear algebra.  Over `ℚ` the structure constants are
//! integers; they are obtained by a modular solve followed by an exact
//! integer verification of the lifted result (with a full rational solve as
//! fallback), so every returned coordinate vector is certified by
//! re-expansion, never trusted from a single modular image.

use crate::comp::{all_bipartitions, all_compositions, Bip, SComp};
use crate::cosets::Cosets;
use crate::group::{factorial, Group};
use crate::linalg::{ExactSolver, FpMat, FpSolver, Matrix};
use crate::poly::Poly;
use crate::scalar::{Field, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::cell::{OnceCell, RefCell};
use std::collections::HashMap;
use std::rc::Rc;

/// An element of `Σ′(W_n)` in `x`-basis coordinates, ordered as
/// [`all_compositions`].
#[derive(Clone, Debug, PartialEq)]
pub struct Elem {
    pub coeffs: Vec<Scalar>,
}

pub struct Alg<'a> {
    pub g: &'a Group,
    pub field: Field,
    pub comps: Vec<SComp>,
    pub bips: Vec<Bip>,
    pub cosets: Cosets<'a>,
    index: HashMap<SComp, usize>,
    supports: Vec<Rc<Vec<u32>>>,
    /// Modulus used for coordinate extraction: the context characteristic
    /// for `𝔽_p`, a fixed 61-bit prime for `ℚ`.
    aux_p: u64,
    pivots: Vec<u32>,
    fp: FpSolver,
    /// Large-prime pivot data for integer extraction in an `𝔽_p` context,
    /// where the field solver's own modulus is too small to lift from.
    /// (In a `ℚ` context `aux_p` is already a 61-bit prime; this stays unset.)
    int_cell: OnceCell<(u64, Vec<u32>, FpSolver)>,
    exact: OnceCell<ExactSolver>,
    /// Integer structure constants, lazily per pair of basis indices:
    /// `x_C·x_D = Σ_E N^E_{CD} x_E` stored as sparse `(E, N)` rows.
    tensor: RefCell<HashMap<(u16, u16), Rc<Vec<(u16, i64)>>>>,
    xprime_inv: OnceCell<Matrix>,
    w_n_coords: OnceCell<Elem>,
}

impl<'a> Alg<'a> {
    pub fn new(g: &'a Group, field: Field) -> crate::Result<Alg<'a>> {
        let n = g.n;
        if n <= 5 {
            g.ensure_mult_table();
        }
        let comps = all_compositions(n);
        let index: HashMap<SComp, usize> =
            comps.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let cosets = Cosets::new(g);
        let supports: Vec<Rc<Vec<u32>>> = comps.iter().map(|c| cosets.reps(c)).collect();

        let mut aux_p = match field {
            Field::Q => (1u64 << 61) - 1,
            Field::Fp(p) => p,
        };
        let (pivots, fp) = loop {
            if let Some(found) = select_pivots(&supports, g.order(), aux_p) {
                break found;
            }
            match field {
                // the x_C stay independent over every field, so failure here
                // means a genuinely bad context
                Field::Fp(_) => {
                    return Err(crate::Error::Internal(format!(
                        "x-basis dependent mod {aux_p}"
                    )))
                }
                Field::Q => {
                    aux_p -= 2;
                    while !crate::scalar::is_prime(aux_p) {
                        aux_p -= 2;
                    }
                }
            }
        };

        Ok(Alg {
            g,
            field,
            bips: all_bipartitions(n),
            comps,
            cosets,
            index,
            supports,
            aux_p,
            pivots,
            fp,
            int_cell: OnceCell::new(),
            exact: OnceCell::new(),
            tensor: RefCell::new(HashMap::new()),
            xprime_inv: OnceCell::new(),
            w_n_coords: OnceCell::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn comp_index(&self, c: &SComp) -> crate::Result<usize> {
        self.index
            .get(c)
            .copied()
            .ok_or_else(|| crate::Error::BadComposition(format!("{c} is not a composition of {}", self.g.n)))
    }

    pub fn support(&self, i: usize) -> &[u32] {
        &self.supports[i]
    }

    pub fn zero(&self) -> Elem {
        Elem { coeffs: vec![self.field.zero(); self.dim()] }
    }

    /// The unit: `x_{(n)}` (its coset set is `{1}`).
    pub fn one(&self) -> Elem {
        self.x(&SComp(vec![self.g.n as i32])).expect("(n) is a composition of n")
    }

    pub fn x(&self, c: &SComp) -> crate::Result<Elem> {
        let i = self.comp_index(c)?;
        let mut e = self.zero();
        e.coeffs[i] = self.field.one();
        Ok(e)
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        Elem {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x.add(y)).collect(),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        Elem {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x.sub(y)).collect(),
        }
    }

    pub fn scale(&self, a: &Elem, s: &Scalar) -> Elem {
        Elem { coeffs: a.coeffs.iter().map(|x| x.mul(s)).collect() }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        a.coeffs.iter().all(|x| x.is_zero())
    }

    /// Expand to a dense group-algebra vector of length `|W|`.
    pub fn group_vector(&self, e: &Elem) -> Vec<Scalar> {
        let mut acc = vec![self.field.zero(); self.g.order()];
        for (i, c) in e.coeffs.iter().enumerate() {
            if !c.is_zero() {
                for &u in self.supports[i].iter() {
                    acc[u as usize] = acc[u as usize].add(c);
                }
            }
        }
        acc
    }

    /// Express a group-algebra vector in the `x`-basis; errors if it lies
    /// outside `Σ′`.  The result is verified by re-expansion.
    pub fn from_group_vector(&self, v: &[Scalar]) -> crate::Result<Elem> {
        assert_eq!(v.len(), self.g.order());
        match self.field {
            Field::Fp(p) => {
                let r: Vec<u64> = v
                    .iter()
                    .map(|s| match s {
                        Scalar::Fp { v, .. } => *v,
                        Scalar::Q(_) => panic!("rational scalar in an 𝔽_p context"),
                    })
                    .collect();
                let gamma = self.extract_mod(&r)?;
                Ok(Elem {
                    coeffs: gamma.into_iter().map(|x| Scalar::Fp { p, v: x }).collect(),
                })
            }
            Field::Q => {
                // scale to integers when possible; fall back to a fully
                // rational solve otherwise
                let rats: Vec<&BigRational> = v
                    .iter()
                    .map(|s| match s {
                        Scalar::Q(q) => q,
                        _ => panic!("𝔽_p scalar in a ℚ context"),
                    })
                    .collect();
                let mut lcm = BigInt::one();
                for q in &rats {
                    lcm = lcm.lcm(q.denom());
                }
                let ints: Option<Vec<i64>> = rats
                    .iter()
                    .map(|q| (q.numer() * (&lcm / q.denom())).to_i64())
                    .collect();
                if let Some(w) = ints {
                    if let Ok(gamma) = self.extract_int(&w) {
                        let l = BigRational::from(lcm);
                        return Ok(Elem {
                            coeffs: gamma
                                .into_iter()
                                .map(|x| Scalar::Q(BigRational::from(BigInt::from(x)) / &l))
                                .collect(),
                        });
                    }
                }
                self.from_group_vector_exact(&rats)
            }
        }
    }

    /// Direct rational extraction (no modular shortcut).
    fn from_group_vector_exact(&self, rats: &[&BigRational]) -> crate::Result<Elem> {
        let solver = self.exact_solver();
        let rhs: Vec<Scalar> =
            self.pivots.iter().map(|&j| Scalar::Q(rats[j as usize].clone())).collect();
        let gamma = solver.solve(&rhs);
        // verify against every coordinate, not just the pivot ones
        let mut acc = vec![BigRational::zero(); rats.len()];
        for (i, c) in gamma.iter().enumerate() {
            if let Scalar::Q(q) = c {
                if !q.is_zero() {
                    for &u in self.supports[i].iter() {
                        acc[u as usize] += q;
                    }
                }
            }
        }
        if acc.iter().zip(rats).all(|(a, b)| &a == b) {
            Ok(Elem { coeffs: gamma })
        } else {
            Err(crate::Error::Verification(
                "vector lies outside Σ′ (re-expansion mismatch)".into(),
            ))
        }
    }

    fn exact_solver(&self) -> &ExactSolver {
        self.exact.get_or_init(|| {
            let d = self.dim();
            let mut m = Matrix::zero(Field::Q, d, d);
            for i in 0..d {
                let in_supp: std::collections::HashSet<u32> =
                    self.supports[i].iter().copied().collect();
                for (j, &col) in self.pivots.iter().enumerate() {
                    if in_supp.contains(&col) {
                        m.set(i, j, Field::Q.one());
                    }
                }
            }
            // solver wants the matrix with basis columns: transpose so that
            // column k is x_{C_k} restricted to pivot rows
            ExactSolver::new(&m.transpose()).expect("pivot submatrix is invertible over ℚ")
        })
    }

    /// Solve `Σ γ_C x_C = w` mod `aux_p` and verify the full congruence.
    fn extract_mod(&self, w: &[u64]) -> crate::Result<Vec<u64>> {
        let p = self.aux_p;
        let rhs: Vec<u64> = self.pivots.iter().map(|&j| w[j as usize] % p).collect();
        let gamma = self.fp.solve(&rhs);
        let mut acc = vec![0u64; w.len()];
        for (i, &c) in gamma.iter().enumerate() {
            if c != 0 {
                for &u in self.supports[i].iter() {
                    let a = &mut acc[u as usize];
                    *a = crate::scalar::add_mod(*a, c, p);
                }
            }
        }
        if acc.iter().zip(w).all(|(&a, &b)| a == b % p) {
            Ok(gamma)
        } else {
            Err(crate::Error::Verification(
                "vector lies outside Σ′ (mod-p re-expansion mismatch)".into(),
            ))
        }
    }

    /// The (modulus, pivot columns, solver) triple used for integer lifts.
    fn int_path(&self) -> (u64, &[u32], &FpSolver) {
        match self.field {
            Field::Q => (self.aux_p, &self.pivots, &self.fp),
            Field::Fp(_) => {
                let (p, piv, solver) = self.int_cell.get_or_init(|| {
                    let mut q = (1u64 << 61) - 1;
                    loop {
                        if let Some((piv, fp)) = select_pivots(&self.supports, self.g.order(), q) {
                            return (q, piv, fp);
                        }
                        q -= 2;
                        while !crate::scalar::is_prime(q) {
                            q -= 2;
                        }
                    }
                });
                (*p, piv, solver)
            }
        }
    }

    /// Solve `Σ γ_C x_C = w` over ℤ: modular solve, symmetric lift, exact
    /// re-expansion check; exact rational solve as fallback.
    fn extract_int(&self, w: &[i64]) -> crate::Result<Vec<i64>> {
        let (p, pivots, fp) = self.int_path();
        let rhs: Vec<u64> = pivots
            .iter()
            .map(|&j| w[j as usize].rem_euclid(p as i64) as u64)
            .collect();
        let gamma = fp.solve(&rhs);
        let lifted: Vec<i64> = gamma
            .iter()
            .map(|&x| if x <= p / 2 { x as i64 } else { x as i64 - p as i64 })
            .collect();
        let mut acc = vec![0i128; w.len()];
        for (i, &c) in lifted.iter().enumerate() {
            if c != 0 {
                for &u in self.supports[i].iter() {
                    acc[u as usize] += c as i128;
                }
            }
        }
        if acc.iter().zip(w).all(|(&a, &b)| a == b as i128) {
            return Ok(lifted);
        }
        // integer answer too large for a single-prime lift (never observed at
        // desk scale) or not an integer combination: solve exactly
        let solver = self.exact_solver();
        let rhs: Vec<Scalar> = self
            .pivots
            .iter()
            .map(|&j| Scalar::Q(BigRational::from(BigInt::from(w[j as usize]))))
            .collect();
        let gamma = solver.solve(&rhs);
        let mut out = Vec::with_capacity(gamma.len());
        for s in &gamma {
            let Scalar::Q(q) = s else { unreachable!() };
            if !q.denom().is_one() {
                return Err(crate::Error::Verification(
                    "integer vector has non-integer x-coordinates".into(),
                ));
            }
            out.push(q.numer().to_i64().ok_or_else(|| {
                crate::Error::Verification("x-coordinate exceeds i64".into())
            })?);
        }
        let mut acc = vec![0i128; w.len()];
        for (i, &c) in out.iter().enumerate() {
            if c != 0 {
                for &u in self.supports[i].iter() {
                    acc[u as usize] += c as i128;
                }
            }
        }
        if acc.iter().zip(w).all(|(&a, &b)| a == b as i128) {
            Ok(out)
        } else {
            Err(crate::Error::Verification(
                "vector lies outside ℤΣ′ (re-expansion mismatch)".into(),
            ))
        }
    }

    /// The integer structure constants of `x_C·x_D`, cached sparse.
    pub fn tensor_row(&self, ci: usize, di: usize) -> Rc<Vec<(u16, i64)>> {
        let key = (ci as u16, di as u16);
        if let Some(r) = self.tensor.borrow().get(&key) {
            return r.clone();
        }
        let mut conv = vec![0i64; self.g.order()];
        for &x in self.supports[ci].iter() {
            for &y in self.supports[di].iter() {
                conv[self.g.compose_idx(x, y) as usize] += 1;
            }
        }
        let gamma = self
            .extract_int(&conv)
            .expect("a product of basis elements stays in ℤΣ′");
        let row: Rc<Vec<(u16, i64)>> = Rc::new(
            gamma
                .into_iter()
                .enumerate()
                .filter(|&(_, c)| c != 0)
                .map(|(e, c)| (e as u16, c))
                .collect(),
        );
        self.tensor.borrow_mut().insert(key, row.clone());
        row
    }

    pub fn multiply(&self, a: &Elem, b: &Elem) -> Elem {
        match self.field {
            Field::Q => {
                // structure-constant route: exact and fast once rows are hot
                let mut out = vec![BigRational::zero(); self.dim()];
                for (ci, ac) in a.coeffs.iter().enumerate() {
                    let Scalar::Q(aq) = ac else { panic!("field mismatch") };
                    if aq.is_zero() {
                        continue;
                    }
                    for (di, bc) in b.coeffs.iter().enumerate() {
                        let Scalar::Q(bq) = bc else { panic!("field mismatch") };
                        if bq.is_zero() {
                            continue;
                        }
                        let f = aq * bq;
                        for &(e, nn) in self.tensor_row(ci, di).iter() {
                            out[e as usize] += &f * BigInt::from(nn);
                        }
                    }
                }
                Elem { coeffs: out.into_iter().map(Scalar::Q).collect() }
            }
            Field::Fp(p) => {
                // the same integer structure constants, reduced mod p
                let mut out = vec![0u64; self.dim()];
                for (ci, ac) in a.coeffs.iter().enumerate() {
                    let Scalar::Fp { v: av, .. } = ac else { panic!("field mismatch") };
                    if *av == 0 {
                        continue;
                    }
                    for (di, bc) in b.coeffs.iter().enumerate() {
                        let Scalar::Fp { v: bv, .. } = bc else { panic!("field mismatch") };
                        if *bv == 0 {
                            continue;
                        }
                        let f = crate::scalar::mul_mod(*av, *bv, p);
                        for &(e, nn) in self.tensor_row(ci, di).iter() {
                            let nm = nn.rem_euclid(p as i64) as u64;
                            let slot = &mut out[e as usize];
                            *slot = crate::scalar::add_mod(*slot, crate::scalar::mul_mod(f, nm, p), p);
                        }
                    }
                }
                Elem { coeffs: out.into_iter().map(|v| Scalar::Fp { p, v }).collect() }
            }
        }
    }

    /// The product computed the long way round, by convolution of dense
    /// group-algebra vectors (`𝔽_p` contexts).  Test harnesses compare this
    /// against the structure-constant route.
    #[allow(dead_code)]
    pub(crate) fn multiply_group_route(&self, a: &Elem, b: &Elem) -> Elem {
        let Field::Fp(p) = self.field else { panic!("group route is the 𝔽_p cross-check") };
        let fill = |e: &Elem| -> Vec<u64> {
            let mut v = vec![0u64; self.g.order()];
            for (i, c) in e.coeffs.iter().enumerate() {
                let Scalar::Fp { v: cv, .. } = c else { panic!("field mismatch") };
                if *cv != 0 {
                    for &u in self.supports[i].iter() {
                        v[u as usize] = crate::scalar::add_mod(v[u as usize], *cv, p);
                    }
                }
            }
            v
        };
        let va = fill(a);
        let vb = fill(b);
        let nza: Vec<u32> = (0..self.g.order() as u32).filter(|&u| va[u as usize] != 0).collect();
        let nzb: Vec<u32> = (0..self.g.order() as u32).filter(|&u| vb[u as usize] != 0).collect();
        let mut conv = vec![0u64; self.g.order()];
        for &x in &nza {
            let ax = va[x as usize];
            for &y in &nzb {
                let by = vb[y as usize];
                let w = self.g.compose_idx(x, y) as usize;
                conv[w] = crate::scalar::add_mod(conv[w], crate::scalar::mul_mod(ax, by, p), p);
            }
        }
        let gamma = self.extract_mod(&conv).expect("a product of Σ′ elements stays in Σ′");
        Elem { coeffs: gamma.into_iter().map(|v| Scalar::Fp { p, v }).collect() }
    }

    pub fn power(&self, a: &Elem, k: usize) -> Elem {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.multiply(&acc, a);
        }
        acc
    }

    /// `x′_C = Σ_{S_D ⊆ S_C} (−1/2)^{|S_C|−|S_D|} x_D`.  Needs `1/2`, so the
    /// characteristic must differ from 2.
    pub fn x_prime(&self, c: &SComp) -> crate::Result<Elem> {
        if self.field.characteristic() == 2 {
            return Err(crate::Error::BadCharacteristic(
                "x′ requires 2 to be invertible".into(),
            ));
        }
        let n = self.g.n;
        let i = self.comp_index(c)?;
        let mask_c = self.comps[i].genset_mask(n);
        let size_c = mask_c.count_ones();
        let minus_half = self.field.ratio(-1, 2);
        let mut e = self.zero();
        for (j, d) in self.comps.iter().enumerate() {
            let mask_d = d.genset_mask(n);
            if mask_d & !mask_c == 0 {
                let mut coef = self.field.one();
                for _ in 0..size_c - mask_d.count_ones() {
                    coef = coef.mul(&minus_half);
                }
                e.coeffs[j] = coef;
            }
        }
        Ok(e)
    }

    /// Coordinates in the `x′`-basis (same composition order).
    pub fn to_x_prime_coords(&self, e: &Elem) -> crate::Result<Vec<Scalar>> {
        if self.field.characteristic() == 2 {
            return Err(crate::Error::BadCharacteristic(
                "x′ requires 2 to be invertible".into(),
            ));
        }
        let inv = self.xprime_inv.get_or_init(|| {
            let d = self.dim();
            let mut m = Matrix::zero(self.field, d, d);
            for j in 0..d {
                let col = self.x_prime(&self.comps[j].clone()).expect("char ≠ 2");
                for i in 0..d {
                    m.set(i, j, col.coeffs[i].clone());
                }
            }
            invert(&m).expect("x ↦ x′ is unitriangular, hence invertible")
        });
        let mut out = vec![self.field.zero(); self.dim()];
        for (i, row) in out.iter_mut().enumerate() {
            for j in 0..self.dim() {
                if !e.coeffs[j].is_zero() {
                    *row = row.add(&inv.get(i, j).mul(&e.coeffs[j]));
                }
            }
        }
        Ok(out)
    }

    /// The longest element `w_n` as an element of `Σ′`.
    pub fn w_n_elem(&self) -> Elem {
        self.w_n_coords
            .get_or_init(|| {
                let mut v = vec![self.field.zero(); self.g.order()];
                v[self.g.longest_idx() as usize] = self.field.one();
                self.from_group_vector(&v).expect("w_n lies in Σ′")
            })
            .clone()
    }

    /// `e_n^± = (1 ± w_n)/2`, the central idempotent pair cutting the two
    /// eigenspaces of `w_n`.
    pub fn e_pm(&self) -> crate::Result<(Elem, Elem)> {
        if self.field.characteristic() == 2 {
            return Err(crate::Error::BadCharacteristic(
                "e_n^± requires 2 to be invertible".into(),
            ));
        }
        let half = self.field.ratio(1, 2);
        let one = self.one();
        let wn = self.w_n_elem();
        let plus = self.scale(&self.add(&one, &wn), &half);
        let minus = self.scale(&self.sub(&one, &wn), &half);
        Ok((plus, minus))
    }

    /// Minimal polynomial of `a`, monic, via the first linear dependence
    /// among `1, a, a², …`.
    pub fn min_poly(&self, a: &Elem) -> Poly {
        let mut powers: Vec<Elem> = vec![self.one()];
        let mut span = crate::linalg::Span::new(self.dim());
        span.insert(powers[0].coeffs.clone());
        loop {
            let next = self.multiply(powers.last().unwrap(), a);
            if !span.insert(next.coeffs.clone()) {
                // next = Σ c_k a^k: solve with columns the stored powers
                let m = powers.len();
                let cols = Matrix::from_rows(
                    self.field,
                    (0..self.dim())
                        .map(|i| (0..m).map(|k| powers[k].coeffs[i].clone()).collect())
                        .collect(),
                );
                let c = cols.solve(&next.coeffs).expect("dependence just detected");
                let mut coeffs: Vec<Scalar> = c.into_iter().map(|x| x.neg()).collect();
                coeffs.push(self.field.one());
                return Poly::new(self.field, coeffs);
            }
            powers.push(next);
        }
    }

    /// Characteristic polynomial of left multiplication by `a` on `Σ′`,
    /// by the Faddeev–Leverrier recurrence (ℚ contexts).
    pub fn char_poly_regular(&self, a: &Elem) -> crate::Result<Poly> {
        if self.field != Field::Q {
            return Err(crate::Error::BadCharacteristic(
                "characteristic polynomial is computed over ℚ".into(),
            ));
        }
        let d = self.dim();
        let gamma = self.left_mult_matrix(a);
        // c_d = 1; M_1 = A; c_{d-k} = -tr(A·M_k)/k; M_{k+1} = A·M_k + c_{d-k}·I
        let mut coeffs = vec![Field::Q.zero(); d + 1];
        coeffs[d] = Field::Q.one();
        let mut m = gamma.clone();
        for k in 1..=d {
            let mut tr = Field::Q.zero();
            for i in 0..d {
                tr = tr.add(m.get(i, i));
            }
            let c = tr.mul(&Field::Q.ratio(-1, k as i64));
            coeffs[d - k] = c.clone();
            if k < d {
                for i in 0..d {
                    let v = m.get(i, i).add(&c);
                    m.set(i, i, v);
                }
                m = gamma.mul(&m);
            }
        }
        Ok(Poly::new(Field::Q, coeffs))
    }

    /// Matrix of `x ↦ a·x` in the `x`-basis (column `j` is `a·x_{C_j}`).
    pub fn left_mult_matrix(&self, a: &Elem) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zero(self.field, d, d);
        for j in 0..d {
            let col = self.multiply(a, &self.x_by_index(j));
            for i in 0..d {
                m.set(i, j, col.coeffs[i].clone());
            }
        }
        m
    }

    /// Matrix of `x ↦ x·a`.
    pub fn right_mult_matrix(&self, a: &Elem) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zero(self.field, d, d);
        for j in 0..d {
            let col = self.multiply(&self.x_by_index(j), a);
            for i in 0..d {
                m.set(i, j, col.coeffs[i].clone());
            }
        }
        m
    }

    pub fn x_by_index(&self, j: usize) -> Elem {
        let mut e = self.zero();
        e.coeffs[j] = self.field.one();
        e
    }

    /// `(dim Aa, dim aA, dim AaA, dim Z_A(a))`.
    pub fn ideal_dims(&self, a: &Elem) -> (usize, usize, usize, usize) {
        let d = self.dim();
        let left_cols: Vec<Elem> = (0..d).map(|j| self.multiply(&self.x_by_index(j), a)).collect();
        let right_cols: Vec<Elem> = (0..d).map(|j| self.multiply(a, &self.x_by_index(j))).collect();
        let mut left = crate::linalg::Span::new(d);
        for e in &left_cols {
            left.insert(e.coeffs.clone());
        }
        let mut right = crate::linalg::Span::new(d);
        for e in &right_cols {
            right.insert(e.coeffs.clone());
        }
        let mut two = crate::linalg::Span::new(d);
        for e in &left_cols {
            // x_C·a already spans Aa; multiply on the right by each basis x_D
            for j in 0..d {
                two.insert(self.multiply(e, &self.x_by_index(j)).coeffs.clone());
            }
        }
        // centralizer: kernel of L_a − R_a
        let la = self.left_mult_matrix(a);
        let ra = self.right_mult_matrix(a);
        let cent = d - la.sub(&ra).rank();
        (left.dim(), right.dim(), two.dim(), cent)
    }

    /// The Prop-C route: `x_C·x_D = Σ_{d ∈ X_{CD}} x_{^{d⁻¹}C ∩ D}`, valid
    /// when `C` is parabolic or `D` is semi-positive.
    pub fn prop_c_product(&self, c: &SComp, d: &SComp) -> crate::Result<Elem> {
        if !c.is_parabolic() && !d.is_semi_positive() {
            return Err(crate::Error::BadComposition(format!(
                "{c}·{d}: needs C parabolic or D semi-positive"
            )));
        }
        let mut out = self.zero();
        for u in self.cosets.double(c, d) {
            let ui = self.g.inverse_idx(u);
            let e = self.cosets.intersection_composition(d, ui, c)?;
            let i = self.comp_index(&e)?;
            out.coeffs[i] = out.coeffs[i].add(&self.field.one());
        }
        Ok(out)
    }

    /// The composition `𝐂(I)` with singleton parts, positive exactly at the
    /// positions in `I` (0-based mask).
    pub fn singleton_comp(&self, mask: u32) -> SComp {
        SComp(
            (0..self.g.n)
                .map(|i| if mask & (1 << i) != 0 { 1 } else { -1 })
                .collect(),
        )
    }

    /// `a = x_{(n−1,−1)} − x_{(−1,n−1)}`, the element driving the Loewy
    /// lower bound.
    pub fn lower_bound_element(&self) -> crate::Result<Elem> {
        let n = self.g.n as i32;
        if n < 2 {
            return Err(crate::Error::BadComposition("needs n ≥ 2".into()));
        }
        let a = self.x(&SComp(vec![n - 1, -1]))?;
        let b = self.x(&SComp(vec![-1, n - 1]))?;
        Ok(self.sub(&a, &b))
    }

    /// Closed form for `a^{n−1}`: `Σ_{i=1}^n (−1)^{i−1} binom(n−1, i−1)
    /// x_{C_i}` with `C_i = (−1, …, −1, +1, −1, …, −1)`, the `+1` in slot `i`.
    pub fn lower_bound_power_closed_form(&self) -> crate::Result<Elem> {
        let n = self.g.n;
        let mut out = self.zero();
        for i in 1..=n {
            let c = self.singleton_comp(1 << (i - 1));
            let j = self.comp_index(&c)?;
            let binom = (factorial(n - 1) / (factorial(i - 1) * factorial(n - i))) as i64;
            let sign = if (i - 1) % 2 == 0 { 1 } else { -1 };
            out.coeffs[j] = self.field.from_i64(sign * binom);
        }
        Ok(out)
    }

    /// `Supp(a) = {C : ξ_C(a) ≠ 0}`, as sorted indices into `comps`.
    pub fn supp(&self, a: &Elem) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !a.coeffs[i].is_zero()).collect()
    }

    /// `Sat_l(a) = {C : C ≼ D for some D ∈ Supp(a)}`, the smallest
    /// left-saturated set containing the support; `A·a ⊆ Σ'_{Sat_l(a)}`.
    pub fn sat_l(&self, a: &Elem) -> Vec<usize> {
        let supp = self.supp(a);
        (0..self.dim())
            .filter(|&i| supp.iter().any(|&j| self.comps[i].preceq(&self.comps[j])))
            .collect()
    }

    /// `Sat_r(a) = {C : C ⊂_λ D for some D ∈ Supp(a)}`, the smallest
    /// right-saturated set containing the support; `a·A ⊆ Σ'_{Sat_r(a)}`.
    pub fn sat_r(&self, a: &Elem) -> Vec<usize> {
        let supp = self.supp(a);
        let lams: Vec<_> = self.comps.iter().map(|c| c.lambda()).collect();
        (0..self.dim())
            .filter(|&i| supp.iter().any(|&j| self.cosets.bip_subset(&lams[i], &lams[j])))
            .collect()
    }

    /// The decomposition attached to the longest element (needs `p ≠ 2`):
    /// the central idempotents `e_n^± = (1 ± w_n)/2`, with the eigenspace
    /// dimensions of `w_n` acting on the algebra (both must equal `3^{n−1}`)
    /// and every `x'_C` checked to be a `w_n`-eigenvector of eigenvalue
    /// `(−1)^{n−ℓ⁻(C)}`.
    pub fn longest_structure(&self) -> crate::Result<LongestStructure> {
        let (ep, em) = self.e_pm()?;
        let expected = 3usize.pow(self.g.n as u32 - 1);
        let dims = (
            self.left_mult_matrix(&ep).rank(),
            self.left_mult_matrix(&em).rank(),
        );
        if dims != (expected, expected) {
            return Err(crate::Error::Verification(format!(
                "e_n^± eigenspace dimensions {dims:?}, expected {expected} each"
            )));
        }
        let wn = self.w_n_elem();
        for (i, c) in self.comps.iter().enumerate() {
            let xp = self.x_prime(c)?;
            let sign = if (self.g.n - c.len_minus()) % 2 == 0 { 1 } else { -1 };
            let lhs = self.multiply(&wn, &xp);
            if lhs != self.scale(&xp, &self.field.from_i64(sign)) {
                return Err(crate::Error::Verification(format!(
                    "x'_C not a w_n-eigenvector at C = {}",
                    self.comps[i]
                )));
            }
        }
        Ok(LongestStructure { e_plus: ep, e_minus: em, dims })
    }

    /// The §3 positivity suite over `ℚ`: for every basis element and for
    /// `samples` seeded elements with nonnegative integer coordinates, checks
    ///
    /// * `a·A = span{x_C : C ∈ Sat_r(a)}`,
    /// * `a` invertible ⟺ `ξ_{(n)}(a) > 0`,
    /// * `a^r·A = a·A` and `A·a^r = A·a` for `r ∈ {2, 3}`,
    /// * `A = Ker γ_a ⊕ Im γ_a` and likewise for `δ_a` (left/right
    ///   multiplication),
    /// * `Z_A(a) = Z_A(a^r)` for `r ∈ {2, 3}`,
    /// * the multiplicity of the root `0` in the minimal polynomial `f_a`
    ///   is at most `1`.
    ///
    /// Any violation is recorded; the expected report is empty.
    pub fn positivity_suite(&self, seed: u64, samples: usize) -> crate::Result<PositivityReport> {
        if self.field != Field::Q {
            return Err(crate::Error::BadCharacteristic(
                "the positivity suite needs the ordered field ℚ (characteristic 0)".into(),
            ));
        }
        use rand::{Rng, SeedableRng};
        let d = self.dim();
        let mut pool: Vec<Elem> = (0..d).map(|j| self.x_by_index(j)).collect();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let mut e = self.zero();
            for j in 0..d {
                if rng.gen_range(0..2u8) == 1 {
                    e.coeffs[j] = self.field.from_i64(rng.gen_range(1..=3i64));
                }
            }
            if !self.is_zero(&e) {
                pool.push(e);
            }
        }
        let idx_n = self.comp_index(&SComp(vec![self.g.n as i32]))?;
        let mut failures = Vec::new();
        let mut fail = |cond: bool, msg: String| {
            if !cond {
                failures.push(msg);
            }
        };
        for (k, a) in pool.iter().enumerate() {
            let sat_r = self.sat_r(a);
            let right_products: Vec<Elem> =
                (0..d).map(|j| self.multiply(a, &self.x_by_index(j))).collect();
            let mut span = crate::linalg::Span::new(d);
            for e in &right_products {
                fail(
                    self.supp(e).iter().all(|i| sat_r.contains(i)),
                    format!("#{k}: Supp(a·x_D) ⊄ Sat_r(a)"),
                );
                span.insert(e.coeffs.clone());
            }
            fail(span.dim() == sat_r.len(), format!("#{k}: dim a·A ≠ |Sat_r(a)|"));

            let la = self.left_mult_matrix(a);
            let ra = self.right_mult_matrix(a);
            let a2 = self.multiply(a, a);
            let a3 = self.multiply(&a2, a);
            let invertible = la.rank() == d;
            let xi_n_positive = match &a.coeffs[idx_n] {
                Scalar::Q(q) => q > &BigRational::zero(),
                _ => unreachable!("ℚ context"),
            };
            fail(invertible == xi_n_positive, format!("#{k}: invertible ⇎ ξ_(n)(a) > 0"));

            for (r, ar) in [(2usize, &a2), (3, &a3)] {
                let lar = self.left_mult_matrix(ar);
                let rar = self.right_mult_matrix(ar);
                fail(lar.rank() == la.rank(), format!("#{k}: a^{r}·A ≠ a·A"));
                fail(rar.rank() == ra.rank(), format!("#{k}: A·a^{r} ≠ A·a"));
                fail(
                    la.sub(&ra).rank() == lar.sub(&rar).rank(),
                    format!("#{k}: Z(a) ≠ Z(a^{r})"),
                );
            }
            fail(la.mul(&la).rank() == la.rank(), format!("#{k}: Ker γ_a ⊕ Im γ_a fails"));
            fail(ra.mul(&ra).rank() == ra.rank(), format!("#{k}: Ker δ_a ⊕ Im δ_a fails"));

            let f = self.min_poly(a);
            let val = f.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
            fail(val <= 1, format!("#{k}: val f_a = {val} > 1"));
        }
        Ok(PositivityReport { elements_checked: pool.len(), failures })
    }
}

/// Outcome of [`Alg::longest_structure`].
pub struct LongestStructure {
    pub e_plus: Elem,
    pub e_minus: Elem,
    /// Dimensions of the `±1` eigenspaces of `w_n` (each `3^{n−1}`).
    pub dims: (usize, usize),
}

/// Outcome of [`Alg::positivity_suite`].
pub struct PositivityReport {
    pub elements_checked: usize,
    pub failures: Vec<String>,
}

/// Invert a square matrix by row reduction of `[M | I]`; `None` if singular.
pub(crate) fn invert(m: &Matrix) -> Option<Matrix> {
    let d = m.rows;
    let field = m.field;
    let mut aug = Matrix::zero(field, d, 2 * d);
    for i in 0..d {
        for j in 0..d {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, d + i, field.one());
    }
    let pivots = aug.rref();
    if pivots.len() < d || pivots.iter().enumerate().any(|(k, &c)| c != k) {
        return None;
    }
    let mut inv = Matrix::zero(field, d, d);
    for i in 0..d {
        for j in 0..d {
            inv.set(i, j, aug.get(i, d + j).clone());
        }
    }
    Some(inv)
}

/// Choose group elements (columns) making the `|Comp| × |Comp|` submatrix of
/// the 0/1 support matrix invertible mod `m`, by Gaussian elimination in
/// column order.  Returns the pivot columns and an LU solver for the
/// submatrix.
fn select_pivots(
    supports: &[Rc<Vec<u32>>],
    order: usize,
    m: u64,
) -> Option<(Vec<u32>, FpSolver)> {
    let nrows = supports.len();
    let mut rows = vec![vec![0u64; order]; nrows];
    for (i, s) in supports.iter().enumerate() {
        for &u in s.iter() {
            rows[i][u as usize] = 1 % m;
        }
    }
    let mut pivots = Vec::with_capacity(nrows);
    let mut rank = 0usize;
    for col in 0..order {
        if rank == nrows {
            break;
        }
        let Some(r) = (rank..nrows).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, r);
        let inv = crate::scalar::inv_mod(rows[rank][col], m);
        for r2 in rank + 1..nrows {
            let f = rows[r2][col];
            if f != 0 {
                let factor = crate::scalar::mul_mod(f, inv, m);
                for j in col..order {
                    let s = crate::scalar::mul_mod(factor, rows[rank][j], m);
                    rows[r2][j] = crate::scalar::add_mod(rows[r2][j], m - s, m);
                }
            }
        }
        pivots.push(col as u32);
        rank += 1;
    }
    if rank < nrows {
        return None;
    }
    let mut sub = FpMat::zero(m, nrows, nrows);
    for (i, s) in supports.iter().enumerate() {
        let set: std::collections::HashSet<u32> = s.iter().copied().collect();
        for (j, &col) in pivots.iter().enumerate() {
            if set.contains(&col) {
                sub.set(i, j, 1 % m);
            }
        }
    }
    // solver consumes the matrix whose columns are the basis vectors
    let mut t = FpMat::zero(m, nrows, nrows);
    for i in 0..nrows {
        for j in 0..nrows {
            t.set(i, j, sub.get(j, i));
        }
    }
    let solver = FpSolver::new(m, &t)?;
    Some((pivots, solver))
}
