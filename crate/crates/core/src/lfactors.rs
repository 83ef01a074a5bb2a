//! Unramified L-parameters, conductor bookkeeping, and the explicit
//! tensor / Asai / epsilon polynomial factories.
//!
//! A parameter is stored through the inverse roots of its standard
//! L-factor: L(s, phi) = prod_i (1 - c_i q_E^{-s})^{-1}. Inverse roots are
//! exact rationals wherever tests permit, which keeps every identity in the
//! calculus bit-exact; epsilon factors enter only through their exponent
//! monomials since the additive character is fixed unramified.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exactnum::Rat;
use crate::polyalg::{rat_pow, MPoly, SeriesY};
use crate::{Error, Result};

/// An unramified L-parameter: inverse roots of the standard L-factor,
/// a conductor exponent, and the conjugate-self-duality flag.
#[derive(Debug, Clone, PartialEq)]
pub struct UnramParam {
    pub inverse_roots: Vec<Rat>,
    pub dim: usize,
    pub conductor: i64,
    pub conj_self_dual: bool,
}

impl UnramParam {
    pub fn new(inverse_roots: Vec<Rat>, conductor: i64) -> Result<Self> {
        if conductor < 0 {
            return Err(Error::InvalidArgument("conductor must be >= 0".into()));
        }
        let dim = inverse_roots.len();
        let conj_self_dual = Self::multiset_inverse_stable(&inverse_roots);
        Ok(UnramParam { inverse_roots, dim, conductor, conj_self_dual })
    }

    /// In the rational model the conjugate-dual of an inverse root c is
    /// c^{-1}; the parameter is conjugate-self-dual when the multiset is
    /// stable under that map.
    fn multiset_inverse_stable(roots: &[Rat]) -> bool {
        if roots.iter().any(|c| c.is_zero()) {
            return false;
        }
        let mut pool: Vec<Rat> = roots.to_vec();
        for c in roots {
            let inv = Rat::one() / c;
            match pool.iter().position(|x| *x == inv) {
                Some(i) => {
                    pool.swap_remove(i);
                }
                None => return false,
            }
        }
        true
    }

    /// Principal-series parameter of the odd unitary group of rank n with
    /// Satake values beta_1, ..., beta_n: the base-changed standard
    /// parameter has inverse roots {beta_i, beta_i^{-1}} plus 1, dimension
    /// 2n + 1, conductor 0.
    pub fn unitary_principal_series(betas: &[Rat]) -> Result<Self> {
        let mut roots = Vec::with_capacity(2 * betas.len() + 1);
        for b in betas {
            if b.is_zero() {
                return Err(Error::InvalidArgument("Satake value must be nonzero".into()));
            }
            roots.push(b.clone());
            roots.push(Rat::one() / b);
        }
        roots.push(Rat::one());
        Self::new(roots, 0)
    }

    /// P_phi(Y) with L(s, phi) = P_phi(q_E^{-s})^{-1}: the polynomial
    /// prod (1 - c_i Y) as a Y-series with X-arena `nvars`.
    pub fn standard_poly(&self, nvars: usize) -> SeriesY {
        let mut acc = SeriesY::one(nvars, i64::MAX);
        for c in &self.inverse_roots {
            let lin = SeriesY::from_terms(
                nvars,
                vec![(0, MPoly::one(nvars)), (1, MPoly::constant(-c.clone(), nvars))],
                i64::MAX,
            );
            acc = acc.mul(&lin);
        }
        acc
    }
}

/// The tensor-side polynomial prod_{j=1..r} P_phi(q_E^{-1/2} X_j Y):
/// specializing X_j -> alpha_j and Y -> q_E^{-s+1/2} yields
/// 1 / L(s, phi tensor phi_J(tau)).
pub fn tensor_poly(pi: &UnramParam, r: usize, nvars: usize) -> SeriesY {
    assert!(r <= nvars);
    let mut acc = SeriesY::one(nvars, i64::MAX);
    for j in 0..r {
        // P_phi(q_E^{-1/2} X_j Y) = prod_i (1 - c_i q_E^{-1/2} X_j Y)
        for c in &pi.inverse_roots {
            let lin = SeriesY::from_terms(
                nvars,
                vec![
                    (0, MPoly::one(nvars)),
                    (1, MPoly::var(j, nvars).scale(&-c.clone()).mul_qpow_half(-1)),
                ],
                i64::MAX,
            );
            acc = acc.mul(&lin);
        }
    }
    acc
}

/// The Asai-side polynomial
/// prod_{i<j} (1 - q_E^{-1} X_i X_j Y^2) prod_k (1 - q_E^{-1/2} X_k Y):
/// specializing gives 1 / L(2s, phi_J(tau), As).
pub fn asai_poly(r: usize, nvars: usize) -> Result<SeriesY> {
    if r < 1 || r > nvars {
        return Err(Error::InvalidArgument(format!("asai_poly needs 1 <= r <= nvars, got {r}")));
    }
    let mut acc = SeriesY::one(nvars, i64::MAX);
    for i in 0..r {
        for j in (i + 1)..r {
            let xij = MPoly::var(i, nvars).mul(&MPoly::var(j, nvars)).mul_qpow_half(-2);
            let quad =
                SeriesY::from_terms(nvars, vec![(0, MPoly::one(nvars)), (2, xij.neg())], i64::MAX);
            acc = acc.mul(&quad);
        }
    }
    for k in 0..r {
        let xk = MPoly::var(k, nvars).mul_qpow_half(-1);
        let lin =
            SeriesY::from_terms(nvars, vec![(0, MPoly::one(nvars)), (1, xk.neg())], i64::MAX);
        acc = acc.mul(&lin);
    }
    Ok(acc)
}

/// Number of explicit factors in `asai_poly(r)`: r(r-1)/2 quadratic plus r
/// linear ones.
pub fn asai_factor_count(r: usize) -> usize {
    r * (r - 1) / 2 + r
}

/// The epsilon exponent monomial (X_1 ... X_r)^(a - m) Y^((a - m) r).
pub fn epsilon_poly(a: i64, m: i64, r: usize, nvars: usize) -> SeriesY {
    let k = a - m;
    let mut e = vec![0i64; nvars];
    for x in e.iter_mut().take(r) {
        *x = k;
    }
    SeriesY::from_terms(
        nvars,
        vec![(k * r as i64, MPoly::monomial(Rat::one(), 0, e))],
        i64::MAX,
    )
}

/// Kinds of pieces feeding the conductor bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConductorPiece {
    /// A GL factor; counts twice (once for the factor, once for its
    /// conjugate dual, which has the same conductor).
    GlFactor,
    /// The tempered anchor on the smaller unitary group; counts once.
    Anchor,
}

/// Total conductor of induced data: a_anchor + 2 * sum of GL conductors.
/// The c-dual flag never changes a conductor, which is what makes the
/// doubling valid.
pub fn conductor_arith(pieces: &[(ConductorPiece, i64)]) -> Result<i64> {
    let mut total = 0i64;
    for &(kind, a) in pieces {
        if a < 0 {
            return Err(Error::InvalidArgument(format!("negative conductor {a}")));
        }
        total += match kind {
            ConductorPiece::GlFactor => 2 * a,
            ConductorPiece::Anchor => a,
        };
    }
    Ok(total)
}

/// Conductor of the conjugate-dual of a parameter: equal to the original.
pub fn conductor_of_c_dual(param: &UnramParam) -> i64 {
    param.conductor
}

/// 1 / poly as a Y-series to truncation `trunc`; requires a unit constant
/// term.
pub fn lfactor_eval(poly: &SeriesY, trunc: i64) -> Result<SeriesY> {
    let mut p = poly.clone();
    p.trunc = trunc;
    p.coeffs.retain(|d, _| *d <= trunc);
    p.invert()
}

/// L-factor value at an exact rational point y = q_E^{-s + 1/2}:
/// 1 / poly(alpha; y), fully rational.
pub fn lfactor_value(poly: &SeriesY, alphas: &[Rat], qhalf: &Rat, y: &Rat) -> Result<Rat> {
    let v = poly.eval(alphas, qhalf, y);
    if v.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rat::one() / v)
}

/// Evaluates the epsilon monomial at numeric data, for cross-checks.
pub fn epsilon_value(a: i64, m: i64, r: usize, alphas: &[Rat], y: &Rat) -> Rat {
    let k = a - m;
    let mut acc = rat_pow(y, k * r as i64);
    for alpha in alphas.iter().take(r) {
        acc *= rat_pow(alpha, k);
    }
    acc
}
