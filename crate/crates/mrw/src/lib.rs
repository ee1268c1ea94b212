//! Exact computations in the Mantaci–Reutenauer algebra `Σ'(W_n)` of the
//! hyperoctahedral group `W_n`, over `ℚ` and over prime fields `𝔽_p`.
//!
//! Conventions used throughout (fixed once, here):
//!
//! * `W_n` is the group of *signed permutations* of `{±1, …, ±n}`:
//!   bijections `w` with `w(-i) = -w(i)`, stored as the image vector
//!   `[w(1), …, w(n)]`.  Composition is `(v∘w)(i) = v(w(i))`, i.e. `w`
//!   acts first.
//! * The root system of type `B_n`/`C_n` is realised with positive roots
//!   `2e_i` (`1 ≤ i ≤ n`) and `e_j ± e_i` (`i < j`); a vector is *positive*
//!   when its highest-index nonzero coordinate is positive.  `w(e_i) =
//!   sign(w(i))·e_{|w(i)|}`, and `ℓ(w) = #{α > 0 : w(α) < 0}`.
//! * Signed compositions `C = (c_1, …, c_k)` of `n` (nonzero integers with
//!   `Σ|c_i| = n`) index the reflection subgroups `W_C`: a positive part
//!   `c_i = b` occupying positions `a+1, …, a+b` contributes the full
//!   hyperoctahedral group on those letters, a negative part `c_i = -b` only
//!   the symmetric group.  `X_C = {w : w(Δ_C) > 0}` is the set of minimal
//!   left coset representatives of `W_C`, and `x_C = Σ_{w ∈ X_C} w`.
//!   The `x_C` form the distinguished basis of `Σ'(W_n)`.
//! * Bipartitions `(λ⁺; λ⁻)` of `n` index both the conjugacy classes of
//!   `W_n` and the characters `φ_λ = Ind_{W_λ̂}^{W_n} 1`.  The conjugacy
//!   type of `w` assigns a cycle of the underlying permutation to `λ⁺` when
//!   the product of signs over the cycle is `-1`, and to `λ⁻` otherwise
//!   (so the identity has type `(∅; 1ⁿ)` and `t_1` has type `(1; 1^{n-1})`).
//!
//! Everything is exact: scalars are arbitrary-precision rationals or
//! elements of `𝔽_p` (`p < 2^61`).  No floating point is used anywhere.
//!
//! The crate is organised bottom-up: [`group`] (signed permutations and
//! roots), [`comp`] (signed compositions and bipartitions), [`cosets`]
//! (distinguished coset representatives and double cosets), [`scalar`] /
//! [`linalg`] / [`poly`] (exact linear algebra), [`algebra`] (the algebra
//! `Σ'(W_n)` itself), [`charring`] (the character side: `θ`, the `φ`-ring,
//! idempotents of `K Irr W_n`), [`repr`] (radical, Cartan matrices, center,
//! Loewy series, restriction to reflection subgroups).

pub mod algebra;
pub mod charring;
pub mod comp;
pub mod cosets;
pub mod group;
pub mod linalg;
pub mod poly;
pub mod repr;
pub mod scalar;

/// Default bound on `n` for full verification suites.
pub const DEFAULT_CAP_N: usize = 5;

/// Hard bound accepted for single computations (`W_6` has 46080 elements).
pub const MAX_CAP_N: usize = 6;

/// Effective cap: the `MRW_CAP_N` environment variable overrides the default,
/// clamped to [1, `MAX_CAP_N`].
pub fn cap_n() -> usize {
    match std::env::var("MRW_CAP_N").ok().and_then(|s| s.parse::<usize>().ok()) {
        Some(k) => k.clamp(1, MAX_CAP_N),
        None => DEFAULT_CAP_N,
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("n = {0} exceeds the cap {1}")]
    CapExceeded(usize, usize),
    #[error("invalid composition: {0}")]
    BadComposition(String),
    #[error("invalid bipartition: {0}")]
    BadBipartition(String),
    #[error("invalid characteristic: {0}")]
    BadCharacteristic(String),
    #[error("mixed moduli in scalar arithmetic: {0} vs {1}")]
    MixedModuli(u64, u64),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
