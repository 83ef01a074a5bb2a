//! Exact arithmetic in the p-adic base field model and its unramified
//! quadratic extension.
//!
//! The base field F is modelled by exact rationals with denominators allowed
//! to carry powers of p; this is a dense subfield of F containing every
//! coordinate the rest of the crate ever constructs. The quadratic extension
//! is E = F(delta) with delta = sqrt(eps) for eps the smallest positive
//! quadratic non-residue mod p, so that `conj(delta) = -delta` and
//! `val(delta) = 0`. Both fields share the uniformizer p.
//!
//! Additive characters are stored as exact rational angles (the value is
//! exp(2*pi*i*angle)); they are only converted to floating point at final
//! summation time, which keeps character sums exact as long as possible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::str::FromStr;

use crate::{Error, Result};

/// Renders a rational as the exact string "n/d" (or "n" for integers);
/// the form used whenever rationals cross a serialization boundary.
pub fn rat_to_string(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses the output of [`rat_to_string`].
pub fn rat_from_string(s: &str) -> Result<Rat> {
    let parse = |t: &str| {
        BigInt::from_str(t.trim())
            .map_err(|e| Error::InvalidArgument(format!("bad rational '{s}': {e}")))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse(s)?)),
        Some((n, d)) => {
            let den = parse(d)?;
            if den.is_zero() {
                return Err(Error::InvalidArgument(format!("bad rational '{s}': zero denominator")));
            }
            Ok(Rat::new(parse(n)?, den))
        }
    }
}

/// Exact rational scalar.
pub type Rat = BigRational;

/// Convenience constructor for small rationals.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Convenience constructor for integers.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// The ambient p-adic context: an odd prime p (residue cardinality q = p)
/// and the fixed non-residue eps defining E = F(sqrt(eps)).
///
/// The context is always an explicit parameter; there is no global state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadicCtx {
    pub p: u64,
    pub eps: u64,
}

impl PadicCtx {
    /// Builds the context for an odd prime, choosing eps deterministically
    /// as the smallest positive quadratic non-residue mod p.
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::InvalidArgument(format!("p = {p} must be an odd prime")));
        }
        let eps = (2..p)
            .find(|&c| !is_square_mod(c, p))
            .expect("every odd prime has a non-residue below p");
        Ok(PadicCtx { p, eps })
    }

    /// Residue cardinality of F.
    pub fn q(&self) -> u64 {
        self.p
    }

    /// Residue cardinality of E (= q^2).
    pub fn q_e(&self) -> u64 {
        self.p * self.p
    }

    pub fn p_big(&self) -> BigInt {
        BigInt::from(self.p)
    }

    /// p^k as a rational, k may be negative.
    pub fn p_pow(&self, k: i64) -> Rat {
        let pk = self.p_big().pow(k.unsigned_abs() as u32);
        if k >= 0 {
            Rat::from_integer(pk)
        } else {
            Rat::new(BigInt::one(), pk)
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn is_square_mod(c: u64, p: u64) -> bool {
    // Euler criterion by repeated squaring.
    let mut base = c % p;
    let mut exp = (p - 1) / 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc == 1
}

/// Exact p-adic valuation of a rational; `None` encodes +infinity (x = 0).
pub fn val_rat(x: &Rat, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut v: i64 = 0;
    let mut n = x.numer().abs();
    while (&n % &pb).is_zero() {
        n /= &pb;
        v += 1;
    }
    let mut d = x.denom().abs();
    while (&d % &pb).is_zero() {
        d /= &pb;
        v -= 1;
    }
    Some(v)
}

/// Canonical representative of a rational modulo p^m.
///
/// The result r satisfies val(x - r) >= m, has valuation >= val(x) (or is 0),
/// and the map is idempotent. Negative valuations are allowed: the
/// representative is then of the form k / p^j with 0 <= k < p^(m+j).
pub fn reduce_rat(x: &Rat, p: u64, m: i64) -> Rat {
    let v = match val_rat(x, p) {
        None => return Rat::zero(),
        Some(v) => v,
    };
    if v >= m {
        return Rat::zero();
    }
    let pb = BigInt::from(p);
    // Scale so that y = x * p^(-v) is a unit, reduce y mod p^(m - v).
    let shift = m - v; // >= 1
    let modulus = pb.pow(shift as u32);
    let scale = if v >= 0 {
        Rat::new(BigInt::one(), pb.pow(v as u32))
    } else {
        Rat::from_integer(pb.pow((-v) as u32))
    };
    let y = x * &scale; // unit: numerator and denominator coprime to p
    let num = y.numer().mod_floor(&modulus);
    let den = y.denom().clone();
    let den_inv = mod_inverse(&den, &modulus).expect("denominator is a unit mod p^k");
    let r = (num * den_inv).mod_floor(&modulus);
    Rat::from_integer(r) / scale
}

fn mod_inverse(a: &BigInt, modulus: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(modulus);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(modulus))
    } else {
        None
    }
}

/// An exact element a + b*delta of E = F(delta), delta^2 = eps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadExt {
    pub a: Rat,
    pub b: Rat,
}

impl QuadExt {
    pub fn new(a: Rat, b: Rat) -> Self {
        QuadExt { a, b }
    }

    pub fn zero() -> Self {
        QuadExt { a: Rat::zero(), b: Rat::zero() }
    }

    pub fn one() -> Self {
        QuadExt { a: Rat::one(), b: Rat::zero() }
    }

    pub fn from_rat(a: Rat) -> Self {
        QuadExt { a, b: Rat::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rint(n))
    }

    /// delta itself.
    pub fn delta() -> Self {
        QuadExt { a: Rat::zero(), b: Rat::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Lies in the base field F?
    pub fn is_in_f(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate a - b*delta.
    pub fn conj(&self) -> Self {
        QuadExt { a: self.a.clone(), b: -self.b.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        QuadExt { a: &self.a + &other.a, b: &self.b + &other.b }
    }

    pub fn sub(&self, other: &Self) -> Self {
        QuadExt { a: &self.a - &other.a, b: &self.b - &other.b }
    }

    pub fn neg(&self) -> Self {
        QuadExt { a: -self.a.clone(), b: -self.b.clone() }
    }

    pub fn mul(&self, other: &Self, ctx: &PadicCtx) -> Self {
        let eps = rint(ctx.eps as i64);
        QuadExt {
            a: &self.a * &other.a + &eps * &self.b * &other.b,
            b: &self.a * &other.b + &self.b * &other.a,
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        QuadExt { a: &self.a * c, b: &self.b * c }
    }

    /// Norm x * conj(x) = a^2 - eps b^2, an element of F.
    pub fn norm(&self, ctx: &PadicCtx) -> Rat {
        let eps = rint(ctx.eps as i64);
        &self.a * &self.a - eps * &self.b * &self.b
    }

    /// Trace x + conj(x) = 2a.
    pub fn trace(&self) -> Rat {
        &self.a + &self.a
    }

    pub fn inv(&self, ctx: &PadicCtx) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm(ctx);
        Ok(QuadExt { a: &self.a / &n, b: -&self.b / &n })
    }

    pub fn div(&self, other: &Self, ctx: &PadicCtx) -> Result<Self> {
        Ok(self.mul(&other.inv(ctx)?, ctx))
    }

    /// Valuation min(v_p(a), v_p(b)); `None` is +infinity.
    ///
    /// This is the correct extension valuation because E/F is unramified with
    /// the same uniformizer and val(delta) = 0.
    pub fn val(&self, ctx: &PadicCtx) -> Option<i64> {
        match (val_rat(&self.a, ctx.p), val_rat(&self.b, ctx.p)) {
            (None, None) => None,
            (Some(v), None) | (None, Some(v)) => Some(v),
            (Some(v), Some(w)) => Some(v.min(w)),
        }
    }

    /// Canonical representative mod p^m on both coordinates; idempotent.
    pub fn reduce(&self, ctx: &PadicCtx, m: i64) -> Self {
        QuadExt { a: reduce_rat(&self.a, ctx.p, m), b: reduce_rat(&self.b, ctx.p, m) }
    }

    /// p^k * x.
    pub fn mul_ppow(&self, ctx: &PadicCtx, k: i64) -> Self {
        let c = ctx.p_pow(k);
        self.scale(&c)
    }
}

/// A rational angle t modulo 1; the character value is exp(2*pi*i*t).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterAngle {
    pub t: Rat,
}

impl CharacterAngle {
    pub fn zero() -> Self {
        CharacterAngle { t: Rat::zero() }
    }

    pub fn new(t: Rat) -> Self {
        let f = t.floor();
        CharacterAngle { t: t - f }
    }

    pub fn add(&self, other: &Self) -> Self {
        CharacterAngle::new(&self.t + &other.t)
    }

    pub fn is_trivial(&self) -> bool {
        self.t.is_zero()
    }

    /// Complex value (cos, sin) of exp(2*pi*i*t); the only place floating
    /// point enters.
    pub fn to_complex(&self) -> (f64, f64) {
        let num = self.t.numer().to_string().parse::<f64>().unwrap_or(0.0);
        let den = self.t.denom().to_string().parse::<f64>().unwrap_or(1.0);
        let theta = 2.0 * std::f64::consts::PI * (num / den);
        (theta.cos(), theta.sin())
    }
}

/// The p-power fractional part of a rational: the canonical representative
/// of x in Z[1/p]/Z with x - frac_p(x) integral at p.
pub fn frac_p(x: &Rat, p: u64) -> Rat {
    match val_rat(x, p) {
        None => Rat::zero(),
        Some(v) if v >= 0 => Rat::zero(),
        Some(v) => {
            let k = (-v) as u32;
            let pb = BigInt::from(p);
            let modulus = pb.pow(k);
            // x = n / (d * p^k), gcd(d, p) = 1: fractional part is
            // (n * d^{-1} mod p^k) / p^k.
            let scaled = x * Rat::from_integer(modulus.clone()); // unit-denominator rational
            let num = scaled.numer().clone();
            let den = scaled.denom().clone();
            let den_inv = mod_inverse(&den, &modulus).expect("denominator is prime to p");
            let m = (num * den_inv).mod_floor(&modulus);
            Rat::new(m, modulus)
        }
    }
}

/// Additive character of F: psi_F(x) = exp(2*pi*i * frac_p(x)).
///
/// psi_F is trivial on o_F but not on p_F^{-1}. The argument must lie in F.
pub fn psi_f(x: &QuadExt, ctx: &PadicCtx) -> Result<CharacterAngle> {
    if !x.is_in_f() {
        return Err(Error::InvalidArgument("psi_F needs an argument in F (b = 0)".into()));
    }
    Ok(CharacterAngle::new(frac_p(&x.a, ctx.p)))
}

/// Additive character of E: psi_E(x) = psi_F((x - conj x) / (2 delta)).
///
/// Since (x - conj x) / (2 delta) = b for x = a + b*delta, this is just the
/// angle of b. psi_E is trivial on F and on o_E but not on p_E^{-1}.
pub fn psi_e(x: &QuadExt, ctx: &PadicCtx) -> CharacterAngle {
    CharacterAngle::new(frac_p(&x.b, ctx.p))
}

/// Which of the two additive characters to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WhichChar {
    FChar,
    EChar,
}

/// The spec-facing character bundle.
pub fn additive_character(x: &QuadExt, which: WhichChar, ctx: &PadicCtx) -> Result<CharacterAngle> {
    match which {
        WhichChar::FChar => psi_f(x, ctx),
        WhichChar::EChar => Ok(psi_e(x, ctx)),
    }
}

/// Norm-one element via the Cayley transform: (1 + u*delta) / (1 - u*delta)
/// for u in F. These are exact rational points of E^1.
pub fn cayley_norm_one(u: &Rat, ctx: &PadicCtx) -> Result<QuadExt> {
    let num = QuadExt::new(Rat::one(), u.clone());
    let den = QuadExt::new(Rat::one(), -u.clone());
    num.div(&den, ctx)
}

/// Solves the norm equation N(z) = target for a unit target in F, to
/// precision p^m: returns z with val(N(z) - target) >= m.
///
/// The residue solution is found by brute force over the residue field of E
/// and then lifted by Newton iteration on the two F-coordinates.
pub fn solve_norm_unit(target: &Rat, ctx: &PadicCtx, m: i64) -> Result<QuadExt> {
    if val_rat(target, ctx.p) != Some(0) {
        return Err(Error::InvalidArgument("norm target must be a unit".into()));
    }
    let p = ctx.p as i64;
    let t0 = reduce_rat(target, ctx.p, 1);
    let t0i = t0.numer().mod_floor(&ctx.p_big());
    // Brute-force a residue solution a^2 - eps b^2 = target mod p.
    let mut seed = None;
    'outer: for a in 0..p {
        for b in 0..p {
            let lhs = BigInt::from(a * a - (ctx.eps as i64) * b * b).mod_floor(&ctx.p_big());
            if lhs == t0i {
                seed = Some((a, b));
                break 'outer;
            }
        }
    }
    let (a0, b0) = seed.expect("norm map is surjective on residue units in an unramified extension");
    let mut z = QuadExt::new(rint(a0), rint(b0));
    // Newton on f(a, b) = a^2 - eps b^2 - target; grad = (2a, -2 eps b).
    // One of the two partials is a unit at the seed, so a single-coordinate
    // Newton step doubles precision each round.
    let mut prec = 1i64;
    while prec < m {
        let f = z.norm(ctx) - target;
        let fa = &z.a + &z.a;
        let fb = -rint(2 * ctx.eps as i64) * &z.b;
        if val_rat(&fa, ctx.p) == Some(0) {
            z.a = &z.a - f / fa;
        } else {
            z.b = &z.b - f / fb;
        }
        prec *= 2;
        z = z.reduce(ctx, prec.min(m) + 2);
    }
    z = z.reduce(ctx, m);
    debug_assert!(val_rat(&(z.norm(ctx) - target), ctx.p).map_or(true, |v| v >= m));
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn ctx3() -> PadicCtx {
        PadicCtx::new(3).unwrap()
    }

    pub(crate) fn random_rat(rng: &mut ChaCha12Rng, p: i64) -> Rat {
        // Bounded-valuation rationals: n / (d * p^k) with small n, d, k.
        let n = rng.gen_range(-40i64..=40);
        let d = rng.gen_range(1i64..=7);
        let k = rng.gen_range(-2i64..=2);
        let base = rat(n, d);
        let pk = if k >= 0 { rat(p.pow(k as u32), 1) } else { rat(1, p.pow((-k) as u32)) };
        base * pk
    }

    pub(crate) fn random_quadext(rng: &mut ChaCha12Rng, p: i64) -> QuadExt {
        QuadExt::new(random_rat(rng, p), random_rat(rng, p))
    }

    #[test]
    fn eps_is_smallest_nonresidue() {
        assert_eq!(PadicCtx::new(3).unwrap().eps, 2);
        assert_eq!(PadicCtx::new(5).unwrap().eps, 2);
        assert_eq!(PadicCtx::new(7).unwrap().eps, 3);
        assert_eq!(PadicCtx::new(11).unwrap().eps, 2);
    }

    #[test]
    fn conj_delta_is_minus_delta() {
        let d = QuadExt::delta();
        assert_eq!(d.conj(), d.neg());
        assert_eq!(d.val(&ctx3()), Some(0));
    }

    #[test]
    fn val_examples() {
        let ctx = ctx3();
        assert_eq!(QuadExt::one().val(&ctx), Some(0));
        // p * (1 + sqrt(eps)) has valuation 1 = min(v(p), v(p)).
        let x = QuadExt::new(rint(3), rint(3));
        assert_eq!(x.val(&ctx), Some(1));
        assert_eq!(QuadExt::zero().val(&ctx), None);
    }

    #[test]
    fn field_axioms_random() {
        let ctx = ctx3();
        let mut rng = ChaCha12Rng::seed_from_u64(17);
        for _ in 0..2000 {
            let x = random_quadext(&mut rng, 3);
            let y = random_quadext(&mut rng, 3);
            let z = random_quadext(&mut rng, 3);
            assert_eq!(x.add(&y), y.add(&x));
            assert_eq!(x.mul(&y, &ctx), y.mul(&x, &ctx));
            assert_eq!(x.mul(&y.add(&z), &ctx), x.mul(&y, &ctx).add(&x.mul(&z, &ctx)));
            assert_eq!(x.conj().conj(), x);
            assert_eq!(x.mul(&y, &ctx).conj(), x.conj().mul(&y.conj(), &ctx));
            // Norm lands in F.
            assert!(x.mul(&x.conj(), &ctx).is_in_f());
            // val(xy) = val x + val y, val(x + y) >= min.
            if let (Some(vx), Some(vy)) = (x.val(&ctx), y.val(&ctx)) {
                assert_eq!(x.mul(&y, &ctx).val(&ctx), Some(vx + vy));
                if let Some(vs) = x.add(&y).val(&ctx) {
                    assert!(vs >= vx.min(vy));
                }
                let xi = x.inv(&ctx).unwrap();
                assert_eq!(x.mul(&xi, &ctx), QuadExt::one());
            }
        }
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(QuadExt::zero().inv(&ctx3()), Err(Error::DivisionByZero));
    }

    #[test]
    fn character_angles() {
        let ctx = ctx3();
        // psi_F(1/p) has angle 1/p.
        let x = QuadExt::from_rat(rat(1, 3));
        assert_eq!(psi_f(&x, &ctx).unwrap().t, rat(1, 3));
        // psi_E trivial on F.
        let y = QuadExt::from_rat(rat(7, 27));
        assert!(psi_e(&y, &ctx).is_trivial());
        // psi_E trivial on o_E.
        let u = QuadExt::new(rat(2, 1), rat(5, 1));
        assert!(psi_e(&u, &ctx).is_trivial());
        // ... but not on p_E^{-1}.
        let w = QuadExt::new(Rat::zero(), rat(1, 3));
        assert_eq!(psi_e(&w, &ctx).t, rat(1, 3));
        // psi_F on F-only domain.
        assert!(psi_f(&QuadExt::delta(), &ctx).is_err());
    }

    #[test]
    fn character_additivity_random() {
        let ctx = ctx3();
        let mut rng = ChaCha12Rng::seed_from_u64(23);
        for _ in 0..2000 {
            let x = random_quadext(&mut rng, 3);
            let y = random_quadext(&mut rng, 3);
            let lhs = psi_e(&x.add(&y), &ctx);
            let rhs = psi_e(&x, &ctx).add(&psi_e(&y, &ctx));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn reduce_precision_contract() {
        let ctx = ctx3();
        // reduce(1 + p^9, 8) = 1
        let x = QuadExt::from_rat(rint(1) + rint(3).pow(9));
        assert_eq!(x.reduce(&ctx, 8), QuadExt::one());
        assert_eq!(QuadExt::zero().reduce(&ctx, 5), QuadExt::zero());
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        for _ in 0..500 {
            let x = random_quadext(&mut rng, 3);
            let r = x.reduce(&ctx, 6);
            assert_eq!(r.reduce(&ctx, 6), r, "idempotent");
            let d = x.sub(&r);
            assert!(d.val(&ctx).map_or(true, |v| v >= 6), "residual valuation");
        }
    }

    #[test]
    fn cayley_gives_norm_one() {
        let ctx = ctx3();
        let mut rng = ChaCha12Rng::seed_from_u64(44);
        for _ in 0..200 {
            let u = random_rat(&mut rng, 3);
            let z = cayley_norm_one(&u, &ctx).unwrap();
            assert_eq!(z.norm(&ctx), Rat::one());
        }
    }

    #[test]
    fn norm_equation_solver() {
        let ctx = ctx3();
        for t in [1i64, 2, 4, 5, 7, 8] {
            let target = rint(t);
            if val_rat(&target, 3) != Some(0) {
                continue;
            }
            let z = solve_norm_unit(&target, &ctx, 12).unwrap();
            let err = z.norm(&ctx) - &target;
            assert!(val_rat(&err, 3).map_or(true, |v| v >= 12));
        }
    }
}
