//! Multivariate Laurent polynomials over exact rationals with a formal
//! half-power of q, plus symmetric-function constructors and graded Laurent
//! series in a spectral variable Y.
//!
//! Every coefficient is an exact rational; the half-integral q-powers that
//! appear throughout the theory are carried by a dedicated exponent slot in
//! units of q_E^(1/2) (which is the integer q itself, since q_E = q^2), so no
//! irrational numbers ever enter. There is no floating point in this module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

use crate::exactnum::{rat, Rat};
use crate::{Error, Result};

/// Monomial key: exponent of q_E^(1/2), then exponents of the tracked
/// variables (Laurent: any sign).
pub type Mono = (i64, Vec<i64>);

/// Sparse multivariate Laurent polynomial; canonical form stores no zero
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Mono, Rat>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(Rat::one(), nvars)
    }

    pub fn constant(c: Rat, nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert((0, vec![0; nvars]), c);
        }
        p
    }

    /// The i-th variable (0-based).
    pub fn var(i: usize, nvars: usize) -> Self {
        Self::monomial(Rat::one(), 0, {
            let mut e = vec![0; nvars];
            e[i] = 1;
            e
        })
    }

    pub fn monomial(c: Rat, qexp: i64, exps: Vec<i64>) -> Self {
        let nvars = exps.len();
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert((qexp, exps), c);
        }
        p
    }

    /// q_E^(k/2) as a term, i.e. q^k in the half-power slot.
    pub fn qpow_half(k: i64, nvars: usize) -> Self {
        Self::monomial(Rat::one(), k, vec![0; nvars])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when the polynomial is a rational constant (no variables, no
    /// q-power).
    pub fn is_rational_constant(&self) -> bool {
        match self.terms.len() {
            0 => true,
            1 => {
                let ((q, e), _) = self.terms.iter().next().unwrap();
                *q == 0 && e.iter().all(|&x| x == 0)
            }
            _ => false,
        }
    }

    pub fn as_rational_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.is_rational_constant() {
            return Some(self.terms.values().next().unwrap().clone());
        }
        None
    }

    fn insert_term(&mut self, key: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for ((q1, e1), c1) in &self.terms {
            for ((q2, e2), c2) in &other.terms {
                let exps: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert_term((q1 + q2, exps), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by q_E^(k/2).
    pub fn mul_qpow_half(&self, k: i64) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|((q, e), c)| ((q + k, e.clone()), c.clone())).collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    /// Substitutes X_j -> X_j^{-1} for the listed variables.
    pub fn invert_vars(&self, vars: &[usize]) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|((q, e), c)| {
                    let mut e = e.clone();
                    for &j in vars {
                        e[j] = -e[j];
                    }
                    ((*q, e), c.clone())
                })
                .collect(),
        }
    }

    /// Applies a permutation to the variables (sigma[i] = image of i).
    pub fn permute_vars(&self, sigma: &[usize]) -> Self {
        let mut out = Self::zero(self.nvars);
        for ((q, e), c) in &self.terms {
            let mut ne = e.clone();
            for (i, &si) in sigma.iter().enumerate() {
                ne[si] = e[i];
            }
            out.insert_term((*q, ne), c.clone());
        }
        out
    }

    /// Symmetric under permutations and X_j -> X_j^{-1} of the first r
    /// variables (hyperoctahedral action)?
    pub fn is_hyperoctahedral_invariant(&self, r: usize) -> bool {
        for j in 0..r {
            if *self != self.invert_vars(&[j]) {
                return false;
            }
        }
        self.is_symmetric(r)
    }

    /// Symmetric in the first r variables? Checked on adjacent
    /// transpositions.
    pub fn is_symmetric(&self, r: usize) -> bool {
        for i in 0..r.saturating_sub(1) {
            let mut sigma: Vec<usize> = (0..self.nvars).collect();
            sigma.swap(i, i + 1);
            if *self != self.permute_vars(&sigma) {
                return false;
            }
        }
        true
    }

    /// Substitutes variable i by a polynomial. Monomials with a negative
    /// exponent of variable i require `sub` to be invertible (a monomial);
    /// otherwise an error is raised.
    pub fn subst_var(&self, i: usize, sub: &MPoly) -> Result<Self> {
        let mut out = Self::zero(self.nvars);
        for ((q, e), c) in &self.terms {
            let k = e[i];
            let mut base = e.clone();
            base[i] = 0;
            let stem = Self::monomial(c.clone(), *q, base);
            let factor = if k >= 0 {
                sub.pow(k as u32)
            } else {
                let inv = sub.mono_inverse().ok_or_else(|| {
                    Error::InvalidArgument(
                        "substitution with negative exponent needs a monomial".into(),
                    )
                })?;
                inv.pow((-k) as u32)
            };
            out = out.add(&stem.mul(&factor));
        }
        Ok(out)
    }

    /// Sets variable i to zero; errors when a pole (negative exponent)
    /// blocks it.
    pub fn restrict_var_to_zero(&self, i: usize) -> Result<Self> {
        let mut out = Self::zero(self.nvars);
        for ((q, e), c) in &self.terms {
            if e[i] < 0 {
                return Err(Error::InvalidArgument(format!(
                    "pole at X_{i} = 0 (exponent {})",
                    e[i]
                )));
            }
            if e[i] == 0 {
                out.insert_term((*q, e.clone()), c.clone());
            }
        }
        Ok(out)
    }

    /// Inverse of a single-term polynomial, if it is one.
    pub fn mono_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let ((q, e), c) = self.terms.iter().next().unwrap();
        Some(Self::monomial(Rat::one() / c, -q, e.iter().map(|x| -x).collect()))
    }

    /// Evaluates at exact rational points; `qhalf` is the numeric value of
    /// q_E^(1/2) (the integer q). Exact.
    pub fn eval(&self, xs: &[Rat], qhalf: &Rat) -> Rat {
        assert_eq!(xs.len(), self.nvars);
        let mut acc = Rat::zero();
        for ((q, e), c) in &self.terms {
            let mut t = c * rat_pow(qhalf, *q);
            for (x, &k) in xs.iter().zip(e) {
                t *= rat_pow(x, k);
            }
            acc += t;
        }
        acc
    }

    /// Regrades the polynomial by total degree in the tracked variables,
    /// realizing the homogenization identity
    /// P(Y X_1, ..., Y X_r) = Sum_l P_l(X) Y^l.
    pub fn grade_by_total_degree(&self) -> SeriesY {
        let mut coeffs: BTreeMap<i64, MPoly> = BTreeMap::new();
        for ((q, e), c) in &self.terms {
            let d: i64 = e.iter().sum();
            let entry = coeffs.entry(d).or_insert_with(|| MPoly::zero(self.nvars));
            entry.insert_term((*q, e.clone()), c.clone());
        }
        coeffs.retain(|_, p| !p.is_zero());
        SeriesY { nvars: self.nvars, coeffs, trunc: i64::MAX, exact: true }
    }

    /// Leading monomial under graded-lex (total degree, then exponent vector,
    /// then q-slot).
    fn lead(&self) -> Option<(Mono, Rat)> {
        self.terms
            .iter()
            .max_by_key(|((q, e), _)| {
                let d: i64 = e.iter().sum();
                (d, e.clone(), *q)
            })
            .map(|(k, c)| (k.clone(), c.clone()))
    }

    /// Exact division in the Laurent ring; errors if the quotient does not
    /// exist (detected by an iteration cap).
    pub fn div_exact(&self, den: &Self) -> Result<Self> {
        assert_eq!(self.nvars, den.nvars);
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (dk, dc) = den.lead().unwrap();
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        let cap = 16 * (self.terms.len() + 4) * (den.terms.len() + 4) + 256;
        for _ in 0..cap {
            if rem.is_zero() {
                return Ok(quot);
            }
            let (rk, rc) = rem.lead().unwrap();
            let t = Self::monomial(
                rc / &dc,
                rk.0 - dk.0,
                rk.1.iter().zip(&dk.1).map(|(a, b)| a - b).collect(),
            );
            quot = quot.add(&t);
            rem = rem.sub(&t.mul(den));
        }
        Err(Error::InvalidArgument("inexact polynomial division".into()))
    }

    /// Widens the variable arena, keeping existing variables first.
    pub fn extend_vars(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars);
        MPoly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|((q, e), c)| {
                    let mut ne = e.clone();
                    ne.resize(nvars, 0);
                    ((*q, ne), c.clone())
                })
                .collect(),
        }
    }

    /// Largest |coefficient * q-power| at qhalf = q, for residual reporting.
    pub fn max_abs_eval_coeff(&self, qhalf: &Rat) -> Rat {
        let mut best = Rat::zero();
        for ((q, _), c) in &self.terms {
            let t = (c * rat_pow(qhalf, *q)).abs();
            if t > best {
                best = t;
            }
        }
        best
    }
}

pub fn rat_pow(x: &Rat, k: i64) -> Rat {
    if k == 0 {
        return Rat::one();
    }
    let mut acc = Rat::one();
    let mut base = if k > 0 { x.clone() } else { Rat::one() / x };
    let mut n = k.unsigned_abs();
    while n > 0 {
        if n & 1 == 1 {
            acc *= &base;
        }
        base = base.clone() * base;
        n >>= 1;
    }
    acc
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((q, e), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            if *q != 0 {
                write!(f, " qh^{q}")?;
            }
            for (i, &k) in e.iter().enumerate() {
                if k != 0 {
                    write!(f, " X{}^{k}", i + 1)?;
                }
            }
        }
        Ok(())
    }
}

/// j-th elementary symmetric polynomial in the first r of `nvars` variables.
pub fn elem_sym(j: usize, r: usize, nvars: usize) -> Result<MPoly> {
    if j > r || r > nvars {
        return Err(Error::InvalidIndex(format!("elem_sym({j}, {r}) with {nvars} vars")));
    }
    if j == 0 {
        return Ok(MPoly::one(nvars));
    }
    let mut out = MPoly::zero(nvars);
    let mut idx: Vec<usize> = (0..j).collect();
    loop {
        let mut e = vec![0i64; nvars];
        for &i in &idx {
            e[i] = 1;
        }
        out = out.add(&MPoly::monomial(Rat::one(), 0, e));
        // next j-combination of {0, ..., r-1}
        let mut i = j;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if idx[i] != i + r - j {
                idx[i] += 1;
                for k in i + 1..j {
                    idx[k] = idx[k - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Schur polynomial s_lambda in the first r variables, via the bialternant
/// ratio computed by exact division.
pub fn schur_poly(lambda: &[i64], r: usize, nvars: usize) -> Result<MPoly> {
    if lambda.len() > r || r > nvars {
        return Err(Error::InvalidArgument(format!(
            "partition {lambda:?} needs at most r = {r} parts"
        )));
    }
    let mut lam = lambda.to_vec();
    lam.resize(r, 0);
    if lam.windows(2).any(|w| w[0] < w[1]) || lam.iter().any(|&x| x < 0) {
        return Err(Error::InvalidArgument(format!("malformed partition {lambda:?}")));
    }
    if r == 0 || lam.iter().all(|&x| x == 0) {
        return Ok(MPoly::one(nvars));
    }
    let alternant = |shifts: &[i64]| -> MPoly {
        let mut det = MPoly::zero(nvars);
        let mut perm: Vec<usize> = (0..r).collect();
        loop {
            let mut e = vec![0i64; nvars];
            for (j, &i) in perm.iter().enumerate() {
                e[i] += shifts[j];
            }
            let sign = perm_sign(&perm);
            det = det.add(&MPoly::monomial(rat(sign, 1), 0, e));
            if !next_permutation(&mut perm) {
                break;
            }
        }
        det
    };
    let shifts_num: Vec<i64> = (0..r).map(|j| lam[j] + (r - 1 - j) as i64).collect();
    let shifts_den: Vec<i64> = (0..r).map(|j| (r - 1 - j) as i64).collect();
    let num = alternant(&shifts_num);
    let den = alternant(&shifts_den);
    num.div_exact(&den)
}

fn perm_sign(perm: &[usize]) -> i64 {
    let mut sign = 1i64;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                sign = -sign;
            }
        }
    }
    sign
}

pub(crate) fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Expresses a symmetric Laurent polynomial in the first n variables through
/// the elementary symmetric basis and splits it by the exponent of
/// Y_n = X_1 ... X_n. Components come back in the X-variables; their sum
/// reassembles the input exactly.
pub fn yn_grade(p: &MPoly, n: usize) -> Result<BTreeMap<i64, MPoly>> {
    if !p.is_symmetric(n) {
        return Err(Error::InvalidArgument("yn_grade needs a symmetric polynomial".into()));
    }
    if p.is_zero() {
        return Ok(BTreeMap::new());
    }
    // Shift by Y_n^K so that all exponents are nonnegative.
    let min_exp = p
        .terms
        .keys()
        .flat_map(|(_, e)| e[..n].iter().copied())
        .min()
        .unwrap_or(0)
        .min(0);
    let shift = -min_exp; // >= 0
    let yn = elem_sym(n, n, p.nvars)?;
    let shifted = p.mul(&yn.pow(shift as u32));

    // Gauss: peel lex-leading partitions into elementary-symmetric products.
    let mut rem = shifted;
    let mut grades: BTreeMap<i64, MPoly> = BTreeMap::new();
    let elems: Vec<MPoly> = (0..=n).map(|j| elem_sym(j, n, p.nvars).unwrap()).collect();
    let unshift = yn.mono_inverse().expect("Y_n is a monomial").pow(shift as u32);
    let cap = 200_000usize;
    for _ in 0..cap {
        if rem.is_zero() {
            grades.retain(|_, g| !g.is_zero());
            return Ok(grades);
        }
        let ((q0, e0), c0) = rem
            .terms
            .iter()
            .max_by(|a, b| a.0 .1[..n].cmp(&b.0 .1[..n]))
            .map(|(k, c)| (k.clone(), c.clone()))
            .unwrap();
        let lam = &e0[..n];
        debug_assert!(lam.windows(2).all(|w| w[0] >= w[1]), "leading exponent is dominant");
        let mut prod = MPoly::monomial(c0.clone(), q0, {
            let mut rest = e0.clone();
            rest[..n].iter_mut().for_each(|x| *x = 0);
            rest
        });
        let mut en_exp = 0i64;
        for j in 1..=n {
            let mult = if j < n { lam[j - 1] - lam[j] } else { lam[n - 1] };
            if j == n {
                en_exp = mult;
            }
            prod = prod.mul(&elems[j].pow(mult as u32));
        }
        let grade = en_exp - shift;
        let component = prod.mul(&unshift);
        grades
            .entry(grade)
            .and_modify(|g| *g = g.add(&component))
            .or_insert(component);
        rem = rem.sub(&prod);
    }
    Err(Error::InvalidArgument("yn_grade failed to terminate".into()))
}

/// Laurent series in Y with coefficients in the polynomial ring; only
/// degrees up to `trunc` are stored and arithmetic propagates the truncation
/// conservatively. `exact` marks series known to be finite sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesY {
    pub nvars: usize,
    pub coeffs: BTreeMap<i64, MPoly>,
    pub trunc: i64,
    pub exact: bool,
}

impl SeriesY {
    pub fn zero(nvars: usize, trunc: i64) -> Self {
        SeriesY { nvars, coeffs: BTreeMap::new(), trunc, exact: true }
    }

    pub fn one(nvars: usize, trunc: i64) -> Self {
        let mut s = Self::zero(nvars, trunc);
        s.coeffs.insert(0, MPoly::one(nvars));
        s
    }

    pub fn from_terms(nvars: usize, terms: Vec<(i64, MPoly)>, trunc: i64) -> Self {
        let mut s = Self::zero(nvars, trunc);
        for (d, p) in terms {
            if !p.is_zero() && d <= trunc {
                s.coeffs.entry(d).and_modify(|x| *x = x.add(&p)).or_insert(p);
            }
        }
        s.coeffs.retain(|_, p| !p.is_zero());
        s
    }

    pub fn coeff(&self, d: i64) -> MPoly {
        self.coeffs.get(&d).cloned().unwrap_or_else(|| MPoly::zero(self.nvars))
    }

    pub fn lowest(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let trunc = self.trunc.min(other.trunc);
        let mut out = Self::zero(self.nvars, trunc);
        out.exact = self.exact && other.exact;
        for (d, p) in self.coeffs.iter().chain(&other.coeffs) {
            if *d > trunc {
                continue;
            }
            out.coeffs
                .entry(*d)
                .and_modify(|x| *x = x.add(p))
                .or_insert_with(|| p.clone());
        }
        out.coeffs.retain(|_, p| !p.is_zero());
        out
    }

    pub fn neg(&self) -> Self {
        SeriesY {
            nvars: self.nvars,
            coeffs: self.coeffs.iter().map(|(d, p)| (*d, p.neg())).collect(),
            trunc: self.trunc,
            exact: self.exact,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let lo_a = self.lowest().unwrap_or(0);
        let lo_b = other.lowest().unwrap_or(0);
        let trunc = if self.exact && other.exact {
            self.trunc.min(other.trunc)
        } else {
            (self.trunc.saturating_add(lo_b)).min(other.trunc.saturating_add(lo_a))
        };
        let mut out = Self::zero(self.nvars, trunc);
        out.exact = self.exact && other.exact;
        for (da, pa) in &self.coeffs {
            for (db, pb) in &other.coeffs {
                let d = da + db;
                if d > trunc {
                    continue;
                }
                let prod = pa.mul(pb);
                out.coeffs.entry(d).and_modify(|x| *x = x.add(&prod)).or_insert(prod);
            }
        }
        out.coeffs.retain(|_, p| !p.is_zero());
        out
    }

    pub fn scale(&self, p: &MPoly) -> Self {
        let mut out = Self::zero(self.nvars, self.trunc);
        out.exact = self.exact;
        for (d, c) in &self.coeffs {
            let prod = c.mul(p);
            if !prod.is_zero() {
                out.coeffs.insert(*d, prod);
            }
        }
        out
    }

    /// Multiplicative inverse of a series whose lowest term is a nonzero
    /// rational (times a q-power) — a unit of the coefficient ring. The
    /// series must carry a finite truncation order.
    pub fn invert(&self) -> Result<Self> {
        if self.trunc == i64::MAX {
            return Err(Error::InvalidArgument(
                "series inversion needs a finite truncation order".into(),
            ));
        }
        let lo = self.lowest().ok_or(Error::NonUnitSeries)?;
        let lead = self.coeff(lo);
        if lead.terms.len() != 1 || lead.terms.keys().next().unwrap().1.iter().any(|&e| e != 0) {
            return Err(Error::NonUnitSeries);
        }
        let lead_inv = lead.mono_inverse().ok_or(Error::NonUnitSeries)?;
        let trunc = self.trunc.saturating_sub(2 * lo);
        let mut inv = Self::zero(self.nvars, trunc);
        inv.exact = false;
        let mut cs: BTreeMap<i64, MPoly> = BTreeMap::new();
        let kmax = (trunc + lo).max(0);
        for k in 0..=kmax {
            let mut acc = if k == 0 { MPoly::one(self.nvars) } else { MPoly::zero(self.nvars) };
            for (j, cj) in cs.iter() {
                let a = self.coeff(lo + (k - j));
                if !a.is_zero() {
                    acc = acc.sub(&a.mul(cj));
                }
            }
            let ck = acc.mul(&lead_inv);
            if !ck.is_zero() {
                cs.insert(k, ck);
            }
        }
        for (k, c) in cs {
            let d = k - lo;
            if d <= trunc {
                inv.coeffs.insert(d, c);
            }
        }
        Ok(inv)
    }

    /// Evaluates at rational X-points and a rational Y-point; exact up to
    /// the stored truncation order.
    pub fn eval(&self, xs: &[Rat], qhalf: &Rat, y: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (d, p) in &self.coeffs {
            acc += p.eval(xs, qhalf) * rat_pow(y, *d);
        }
        acc
    }

    /// Collapses a finite series to the polynomial at Y = 1.
    pub fn specialize_y_to_one(&self) -> MPoly {
        let mut acc = MPoly::zero(self.nvars);
        for p in self.coeffs.values() {
            acc = acc.add(p);
        }
        acc
    }
}

/// Binomial coefficient as a big integer; zero when k < 0 or k > n.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n || n < 0 {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= n - i;
        den *= i + 1;
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rint;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn geometric_series_roundtrip() {
        // (1 - X Y) * sum X^k Y^k = 1 to truncation.
        let n = 1;
        let x = MPoly::var(0, n);
        let one_minus = SeriesY::from_terms(n, vec![(0, MPoly::one(n)), (1, x.neg())], 12);
        let inv = one_minus.invert().unwrap();
        for k in 0..=inv.trunc.min(10) {
            assert_eq!(inv.coeff(k), x.pow(k as u32), "coefficient at Y^{k}");
        }
        let prod = one_minus.mul(&inv);
        assert_eq!(prod.coeff(0), MPoly::one(n));
        for k in 1..=prod.trunc.min(9) {
            assert!(prod.coeff(k).is_zero());
        }
    }

    #[test]
    fn substitution_involution() {
        let mut rng = ChaCha12Rng::seed_from_u64(2);
        for _ in 0..50 {
            let mut p = MPoly::zero(2);
            for _ in 0..6 {
                p = p.add(&MPoly::monomial(
                    rat(rng.gen_range(-5i64..=5), 1),
                    rng.gen_range(-2i64..=2),
                    vec![rng.gen_range(-3i64..=3), rng.gen_range(-3i64..=3)],
                ));
            }
            assert_eq!(p.invert_vars(&[0, 1]).invert_vars(&[0, 1]), p);
        }
    }

    #[test]
    fn elem_sym_basics() {
        assert_eq!(elem_sym(0, 3, 3).unwrap(), MPoly::one(3));
        // Y_j(X^{-1}) = Y_{r-j}(X) Y_r(X)^{-1}
        let r = 3;
        for j in 0..=r {
            let lhs = elem_sym(j, r, r).unwrap().invert_vars(&[0, 1, 2]);
            let yr_inv = elem_sym(r, r, r).unwrap().mono_inverse().unwrap();
            let rhs = elem_sym(r - j, r, r).unwrap().mul(&yr_inv);
            assert_eq!(lhs, rhs, "inversion relation at j = {j}");
        }
        // Y_j(X_1, ..., X_{r-1}, 0) drops the last variable; Y_r -> 0.
        for j in 0..r {
            let lhs = elem_sym(j, r, r).unwrap().restrict_var_to_zero(r - 1).unwrap();
            let rhs = elem_sym(j, r - 1, r).unwrap();
            assert_eq!(lhs, rhs);
        }
        assert!(elem_sym(r, r, r).unwrap().restrict_var_to_zero(r - 1).unwrap().is_zero());
        assert!(elem_sym(4, 3, 3).is_err());
    }

    /// Independent oracle: Schur polynomial by brute-force enumeration of
    /// semistandard Young tableaux.
    fn schur_by_tableaux(lambda: &[i64], r: usize) -> MPoly {
        let lambda: Vec<i64> = lambda.iter().copied().filter(|&x| x > 0).collect();
        let rows = lambda.len();
        let mut out = MPoly::zero(r);
        if rows == 0 {
            return MPoly::one(r);
        }
        let mut tableau: Vec<Vec<usize>> = lambda.iter().map(|&l| vec![0; l as usize]).collect();
        fn rec(t: &mut Vec<Vec<usize>>, row: usize, col: usize, r: usize, out: &mut MPoly) {
            let rows = t.len();
            if row == rows {
                let mut e = vec![0i64; r];
                for tr in t.iter() {
                    for &v in tr {
                        e[v] += 1;
                    }
                }
                *out = out.add(&MPoly::monomial(Rat::one(), 0, e));
                return;
            }
            if col == t[row].len() {
                rec(t, row + 1, 0, r, out);
                return;
            }
            let mut lo = 0usize;
            if col > 0 {
                lo = lo.max(t[row][col - 1]);
            }
            if row > 0 {
                lo = lo.max(t[row - 1][col] + 1);
            }
            for v in lo..r {
                t[row][col] = v;
                rec(t, row, col + 1, r, out);
            }
        }
        rec(&mut tableau, 0, 0, r, &mut out);
        out
    }

    #[test]
    fn schur_examples() {
        assert_eq!(schur_poly(&[], 2, 2).unwrap(), MPoly::one(2));
        assert_eq!(schur_poly(&[1], 3, 3).unwrap(), elem_sym(1, 3, 3).unwrap());
        // s_(2,1) at r = 2 equals X1 X2 (X1 + X2), cross-checked against the
        // tableau oracle.
        let s21 = schur_poly(&[2, 1], 2, 2).unwrap();
        let x1 = MPoly::var(0, 2);
        let x2 = MPoly::var(1, 2);
        let expect = x1.mul(&x2).mul(&x1.add(&x2));
        assert_eq!(s21, expect);
        assert_eq!(s21, schur_by_tableaux(&[2, 1], 2));
        assert!(schur_poly(&[1, 2], 2, 2).is_err());
    }

    #[test]
    fn schur_matches_tableaux_and_is_positive() {
        let mut rng = ChaCha12Rng::seed_from_u64(9);
        for _ in 0..25 {
            let r = rng.gen_range(1usize..=3);
            let mut lam: Vec<i64> =
                (0..rng.gen_range(0usize..=r)).map(|_| rng.gen_range(0i64..=3)).collect();
            lam.sort_unstable_by(|a, b| b.cmp(a));
            while lam.iter().sum::<i64>() > 6 {
                lam.pop();
            }
            let s = schur_poly(&lam, r, r).unwrap();
            assert_eq!(s, schur_by_tableaux(&lam, r), "lambda = {lam:?}, r = {r}");
            for c in s.terms.values() {
                assert!(*c > Rat::zero(), "Schur coefficients are positive");
            }
        }
    }

    #[test]
    fn yn_grade_examples() {
        let c = MPoly::constant(rint(5), 2);
        let g = yn_grade(&c, 2).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g[&0], c);

        let yn2 = elem_sym(2, 2, 2).unwrap().pow(2);
        let g = yn_grade(&yn2, 2).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g[&2], yn2);

        // sum_j Y_j at n = 2: grade 0 holds 1 + Y_1, grade 1 holds Y_2.
        let y0 = elem_sym(0, 2, 2).unwrap();
        let y1 = elem_sym(1, 2, 2).unwrap();
        let y2 = elem_sym(2, 2, 2).unwrap();
        let p = y0.add(&y1).add(&y2);
        let g = yn_grade(&p, 2).unwrap();
        assert_eq!(g[&0], y0.add(&y1));
        assert_eq!(g[&1], y2);
        let mut acc = MPoly::zero(2);
        for comp in g.values() {
            acc = acc.add(comp);
        }
        assert_eq!(acc, p);
    }

    #[test]
    fn yn_grade_reassembles_random_symmetric_laurent() {
        let mut rng = ChaCha12Rng::seed_from_u64(31);
        for _ in 0..20 {
            let n = 2;
            let yn = elem_sym(n, n, n).unwrap();
            let mut p = MPoly::zero(n);
            for _ in 0..3 {
                let a = rng.gen_range(0i64..=3);
                let b = rng.gen_range(0i64..=a);
                let s = schur_poly(&[a, b], n, n).unwrap();
                let k = rng.gen_range(0u32..=2);
                let denom = yn.mono_inverse().unwrap().pow(k);
                p = p.add(&s.mul(&denom).scale(&rat(rng.gen_range(-3i64..=3), 1)));
            }
            if p.is_zero() {
                continue;
            }
            let g = yn_grade(&p, n).unwrap();
            let mut acc = MPoly::zero(n);
            for comp in g.values() {
                acc = acc.add(comp);
            }
            assert_eq!(acc, p);
        }
    }

    #[test]
    fn homogenization_regrades_by_total_degree() {
        let p = schur_poly(&[2, 1], 2, 2).unwrap().add(&MPoly::one(2));
        let s = p.grade_by_total_degree();
        assert_eq!(s.coeff(0), MPoly::one(2));
        assert_eq!(s.coeff(3), schur_poly(&[2, 1], 2, 2).unwrap());
        // Evaluating the graded series at (X, Y) equals evaluating p at Y*X.
        let xs = [rat(2, 3), rat(1, 2)];
        let y = rat(3, 5);
        let qh = rint(3);
        let lhs = s.eval(&xs, &qh, &y);
        let scaled: Vec<Rat> = xs.iter().map(|x| x * &y).collect();
        assert_eq!(lhs, p.eval(&scaled, &qh));
    }

    #[test]
    fn binomial_convention() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(-1, 0), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::from(1));
    }
}
