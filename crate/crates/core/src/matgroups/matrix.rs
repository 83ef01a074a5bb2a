//! Exact matrices over E and the Hermitian-form plumbing shared by the
//! decomposition and classification routines.

use crate::exactnum::{PadicCtx, QuadExt};
use crate::{Error, Result};

/// How a matrix is certified: exact rational coordinates, or congruent to a
/// group element modulo p^M (Hensel-produced factors).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertMode {
    Exact,
    ModP(i64),
}

impl CertMode {
    pub fn meet(self, other: CertMode) -> CertMode {
        match (self, other) {
            (CertMode::Exact, x) => x,
            (x, CertMode::Exact) => x,
            (CertMode::ModP(a), CertMode::ModP(b)) => CertMode::ModP(a.min(b)),
        }
    }

    pub fn precision(self) -> Option<i64> {
        match self {
            CertMode::Exact => None,
            CertMode::ModP(m) => Some(m),
        }
    }
}

/// Square matrix over E, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UMat {
    pub size: usize,
    pub entries: Vec<QuadExt>,
}

/// A matrix together with the mode under which group membership is
/// certified.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    pub mat: UMat,
    pub mode: CertMode,
}

impl GroupElement {
    pub fn exact(mat: UMat) -> Self {
        GroupElement { mat, mode: CertMode::Exact }
    }

    pub fn modp(mat: UMat, m: i64) -> Self {
        GroupElement { mat, mode: CertMode::ModP(m) }
    }
}

impl UMat {
    pub fn zero(size: usize) -> Self {
        UMat { size, entries: vec![QuadExt::zero(); size * size] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zero(size);
        for i in 0..size {
            m.set(i, i, QuadExt::one());
        }
        m
    }

    /// The anti-diagonal Gram matrix.
    pub fn j_form(size: usize) -> Self {
        let mut m = Self::zero(size);
        for i in 0..size {
            m.set(i, size - 1 - i, QuadExt::one());
        }
        m
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &QuadExt {
        &self.entries[i * self.size + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: QuadExt) {
        self.entries[i * self.size + j] = v;
    }

    pub fn mul(&self, other: &Self, ctx: &PadicCtx) -> Self {
        assert_eq!(self.size, other.size);
        let n = self.size;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = QuadExt::zero();
                for k in 0..n {
                    let a = self.at(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b, ctx));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let n = self.size;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.at(i, j).clone());
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        UMat { size: self.size, entries: self.entries.iter().map(|x| x.conj()).collect() }
    }

    pub fn conj_transpose(&self) -> Self {
        self.conj().transpose()
    }

    pub fn scale(&self, c: &QuadExt, ctx: &PadicCtx) -> Self {
        UMat { size: self.size, entries: self.entries.iter().map(|x| x.mul(c, ctx)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.size, other.size);
        UMat {
            size: self.size,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    /// Exact inverse by Gauss-Jordan elimination; errors on singular input.
    pub fn inverse(&self, ctx: &PadicCtx) -> Result<Self> {
        let n = self.size;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.at(r, col).is_zero())
                .ok_or(Error::DivisionByZero)?;
            if pivot != col {
                for j in 0..n {
                    let tmp = a.at(pivot, j).clone();
                    a.set(pivot, j, a.at(col, j).clone());
                    a.set(col, j, tmp);
                    let tmp = inv.at(pivot, j).clone();
                    inv.set(pivot, j, inv.at(col, j).clone());
                    inv.set(col, j, tmp);
                }
            }
            let pinv = a.at(col, col).inv(ctx)?;
            for j in 0..n {
                a.set(col, j, a.at(col, j).mul(&pinv, ctx));
                inv.set(col, j, inv.at(col, j).mul(&pinv, ctx));
            }
            for r in 0..n {
                if r == col || a.at(r, col).is_zero() {
                    continue;
                }
                let f = a.at(r, col).clone();
                for j in 0..n {
                    let va = a.at(col, j).mul(&f, ctx);
                    let cur = a.at(r, j).sub(&va);
                    a.set(r, j, cur);
                    let vi = inv.at(col, j).mul(&f, ctx);
                    let cur = inv.at(r, j).sub(&vi);
                    inv.set(r, j, cur);
                }
            }
        }
        Ok(inv)
    }

    /// Minimum valuation over all entries; `None` for the zero matrix.
    pub fn min_val(&self, ctx: &PadicCtx) -> Option<i64> {
        self.entries.iter().filter_map(|x| x.val(ctx)).min()
    }

    /// Canonical reduction of every entry mod p^m.
    pub fn reduce(&self, ctx: &PadicCtx, m: i64) -> Self {
        UMat { size: self.size, entries: self.entries.iter().map(|x| x.reduce(ctx, m)).collect() }
    }

    /// Is t*conj(g) J g = J, exactly or modulo p^prec?
    pub fn is_unitary(&self, ctx: &PadicCtx, mode: CertMode) -> bool {
        let j = Self::j_form(self.size);
        let lhs = self.conj_transpose().mul(&j, ctx).mul(self, ctx);
        let diff = lhs.sub(&j);
        match mode {
            CertMode::Exact => diff.entries.iter().all(|x| x.is_zero()),
            CertMode::ModP(m) => diff.entries.iter().all(|x| x.val(ctx).map_or(true, |v| v >= m)),
        }
    }

    /// The Hermitian pairing <x, y> = t*conj(x) J y (conjugate-linear in the
    /// first argument), with the columns given as slices.
    pub fn pair(x: &[QuadExt], y: &[QuadExt], ctx: &PadicCtx) -> QuadExt {
        let n = x.len();
        let mut acc = QuadExt::zero();
        for a in 0..n {
            if x[a].is_zero() {
                continue;
            }
            let t = x[a].conj().mul(&y[n - 1 - a], ctx);
            acc = acc.add(&t);
        }
        acc
    }

    pub fn col(&self, j: usize) -> Vec<QuadExt> {
        (0..self.size).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn apply(&self, x: &[QuadExt], ctx: &PadicCtx) -> Vec<QuadExt> {
        let n = self.size;
        let mut out = vec![QuadExt::zero(); n];
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = QuadExt::zero();
            for k in 0..n {
                let a = self.at(i, k);
                if !a.is_zero() && !x[k].is_zero() {
                    acc = acc.add(&a.mul(&x[k], ctx));
                }
            }
            *o = acc;
        }
        out
    }

    /// Embeds an H_r = U(2r) matrix into G_n = U(2n+1).
    pub fn embed_h_in_g(&self, n: usize) -> Self {
        let r = self.size / 2;
        assert_eq!(self.size, 2 * r);
        assert!(r <= n);
        let big = 2 * n + 1;
        let mut out = Self::identity(big);
        let map = |i: usize| -> usize {
            if i < r {
                i
            } else {
                big - 2 * r + i
            }
        };
        for i in 0..2 * r {
            for j in 0..2 * r {
                let v = self.at(i, j).clone();
                let (bi, bj) = (map(i), map(j));
                out.set(bi, bj, v);
            }
        }
        out
    }

    /// Embeds a GL_r(E) matrix a as diag(a, 1, a*) with a* = J t*conj(a)^{-1} J.
    pub fn embed_gl_hat(&self, n: usize, ctx: &PadicCtx) -> Result<Self> {
        let r = self.size;
        assert!(r <= n);
        let big = 2 * n + 1;
        let jr = Self::j_form(r);
        let astar = jr.mul(&self.conj_transpose().inverse(ctx)?, ctx).mul(&jr, ctx);
        let mut out = Self::identity(big);
        for i in 0..r {
            for j in 0..r {
                out.set(i, j, self.at(i, j).clone());
                out.set(big - r + i, big - r + j, astar.at(i, j).clone());
            }
        }
        Ok(out)
    }

    /// Embeds G_{n0} into G_n fixing the outer hyperbolic pairs.
    pub fn embed_g_in_g(&self, n: usize) -> Self {
        let small = self.size;
        let n0 = (small - 1) / 2;
        assert_eq!(small, 2 * n0 + 1);
        assert!(n0 <= n);
        let big = 2 * n + 1;
        let off = n - n0;
        let mut out = Self::identity(big);
        for i in 0..small {
            for j in 0..small {
                out.set(off + i, off + j, self.at(i, j).clone());
            }
        }
        out
    }

    /// The central element z * I for z in E^1.
    pub fn central(z: &QuadExt, size: usize, ctx: &PadicCtx) -> Self {
        Self::identity(size).scale(z, ctx)
    }

    /// Torus element diag(y_1, ..., y_n, t0, conj(y_n)^{-1}, ...,
    /// conj(y_1)^{-1}) of G_n.
    pub fn torus_g(ys: &[QuadExt], t0: &QuadExt, ctx: &PadicCtx) -> Result<Self> {
        let n = ys.len();
        let big = 2 * n + 1;
        let mut m = Self::zero(big);
        for (i, y) in ys.iter().enumerate() {
            m.set(i, i, y.clone());
            m.set(big - 1 - i, big - 1 - i, y.conj().inv(ctx)?);
        }
        m.set(n, n, t0.clone());
        Ok(m)
    }

    /// Torus element diag(y_1, ..., y_r, conj(y_r)^{-1}, ...) of H_r.
    pub fn torus_h(ys: &[QuadExt], ctx: &PadicCtx) -> Result<Self> {
        let r = ys.len();
        let big = 2 * r;
        let mut m = Self::zero(big);
        for (i, y) in ys.iter().enumerate() {
            m.set(i, i, y.clone());
            m.set(big - 1 - i, big - 1 - i, y.conj().inv(ctx)?);
        }
        Ok(m)
    }

    /// diag(p^l, ..., p^l, 1, p^-l, ..., p^-l) conjugating K_{n,m} to its
    /// centered variant.
    pub fn t_ell(n: usize, l: i64, ctx: &PadicCtx) -> Self {
        let big = 2 * n + 1;
        let mut m = Self::identity(big);
        let pl = QuadExt::from_rat(ctx.p_pow(l));
        let pli = QuadExt::from_rat(ctx.p_pow(-l));
        for i in 0..n {
            m.set(i, i, pl.clone());
            m.set(big - 1 - i, big - 1 - i, pli.clone());
        }
        m
    }

    /// diag(p^{mu_1..n}, 1?, p^{-mu_n..1}) for a partition-like vector, on
    /// H_n (size 2n) when `odd` is false and G_n (size 2n + 1) otherwise.
    pub fn torus_power(mu: &[i64], odd: bool, ctx: &PadicCtx) -> Self {
        let n = mu.len();
        let big = if odd { 2 * n + 1 } else { 2 * n };
        let mut m = Self::identity(big);
        for (i, &k) in mu.iter().enumerate() {
            m.set(i, i, QuadExt::from_rat(ctx.p_pow(k)));
            m.set(big - 1 - i, big - 1 - i, QuadExt::from_rat(ctx.p_pow(-k)));
        }
        m
    }

    /// True when every entry is integral.
    pub fn is_integral(&self, ctx: &PadicCtx) -> bool {
        self.entries.iter().all(|x| x.val(ctx).map_or(true, |v| v >= 0))
    }

    /// Strictly upper triangular below the diagonal (entries (i, j) with
    /// i > j vanish), exactly or mod p^prec.
    pub fn is_upper_triangular(&self, ctx: &PadicCtx, mode: CertMode) -> bool {
        for i in 0..self.size {
            for j in 0..i {
                let ok = match mode {
                    CertMode::Exact => self.at(i, j).is_zero(),
                    CertMode::ModP(m) => self.at(i, j).val(ctx).map_or(true, |v| v >= m),
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rint};

    fn ctx() -> PadicCtx {
        PadicCtx::new(3).unwrap()
    }

    #[test]
    fn j_is_involution_and_identity_unitary() {
        let ctx = ctx();
        let j = UMat::j_form(5);
        assert_eq!(j.mul(&j, &ctx), UMat::identity(5));
        assert!(UMat::identity(5).is_unitary(&ctx, CertMode::Exact));
    }

    #[test]
    fn inverse_roundtrip() {
        let ctx = ctx();
        let mut m = UMat::identity(3);
        m.set(0, 1, QuadExt::new(rat(2, 1), rat(1, 3)));
        m.set(1, 2, QuadExt::new(rat(-1, 2), rint(4)));
        m.set(2, 0, QuadExt::delta());
        let inv = m.inverse(&ctx).unwrap();
        assert_eq!(m.mul(&inv, &ctx), UMat::identity(3));
    }

    #[test]
    fn torus_is_unitary() {
        let ctx = ctx();
        let t = UMat::torus_g(
            &[QuadExt::new(rint(3), rint(1)), QuadExt::from_rat(rat(1, 3))],
            &QuadExt::one(),
            &ctx,
        )
        .unwrap();
        assert!(t.is_unitary(&ctx, CertMode::Exact));
    }

    #[test]
    fn embeddings_preserve_unitarity() {
        let ctx = ctx();
        // An H_1 element: the Weyl flip of U(2).
        let mut w = UMat::zero(2);
        w.set(0, 1, QuadExt::one());
        w.set(1, 0, QuadExt::one());
        assert!(w.is_unitary(&ctx, CertMode::Exact));
        let big = w.embed_h_in_g(2);
        assert!(big.is_unitary(&ctx, CertMode::Exact));
        // A GL_2 element embedded as hat.
        let mut a = UMat::identity(2);
        a.set(0, 1, QuadExt::new(rint(2), rint(5)));
        a.set(1, 1, QuadExt::new(rint(1), rint(1)));
        let hat = a.embed_gl_hat(3, &ctx).unwrap();
        assert!(hat.is_unitary(&ctx, CertMode::Exact));
    }
}
