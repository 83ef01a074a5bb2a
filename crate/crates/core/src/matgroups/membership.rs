//! Block-valuation membership predicates for the level subgroups, parabolic
//! subgroups and congruence subgroups used throughout.
//!
//! Every test is performed at an explicit certification mode: exact entries
//! are decided outright; entries only known mod p^M raise
//! [`crate::Error::PrecisionInsufficient`] whenever the answer would depend
//! on a digit beyond M, never returning a silent guess.

use crate::exactnum::{PadicCtx, QuadExt};
use crate::{Error, Result};

use super::matrix::{CertMode, UMat};

/// Level data m = e + 2l with e in {0, 1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelSpec {
    pub n: usize,
    pub m: i64,
}

impl LevelSpec {
    pub fn new(n: usize, m: i64) -> Result<Self> {
        if m < 0 {
            return Err(Error::InvalidArgument("level must be >= 0".into()));
        }
        Ok(LevelSpec { n, m })
    }

    pub fn e(&self) -> i64 {
        self.m.rem_euclid(2)
    }

    pub fn l(&self) -> i64 {
        (self.m - self.e()) / 2
    }
}

/// The subgroups recognized by [`group_membership`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subgroup {
    /// The full unitary group of the ambient size.
    Unitary,
    /// K_{n,m} inside G_n.
    K { n: usize, m: i64 },
    /// K0_{n,m} = t_l K_{n,m} t_l^{-1}.
    K0 { n: usize, m: i64 },
    /// R_{r,m} = K_{n,m} cap H_r, as a 2r x 2r matrix group.
    R { r: usize, m: i64 },
    /// Congruence subgroup of GL_r(o_E): last row (p^m, ..., p^m, 1 + p^m).
    Gamma { r: usize, m: i64 },
    /// Transposed congruence subgroup: last column (p^m, ..., p^m)^t above
    /// 1 + p^m.
    GammaPrime { r: usize, m: i64 },
    /// Norm-one scalars congruent to 1 mod p^m, as central matrices.
    E1 { m: i64 },
    /// Upper-triangular Borel of G_n.
    Borel { n: usize },
    /// Standard parabolic P_{n,r} (block upper triangular).
    P { n: usize, r: usize },
    /// Opposite parabolic (block lower triangular).
    PBar { n: usize, r: usize },
}

/// Checks val(x) >= need under the certification mode.
fn val_at_least(
    x: &QuadExt,
    need: i64,
    ctx: &PadicCtx,
    mode: CertMode,
    what: &str,
) -> Result<bool> {
    match x.val(ctx) {
        None => Ok(true),
        Some(v) => match mode {
            CertMode::Exact => Ok(v >= need),
            CertMode::ModP(prec) => {
                if need > prec {
                    return Err(Error::PrecisionInsufficient {
                        have: prec,
                        need,
                        what: what.to_string(),
                    });
                }
                // v < prec is an exact statement about the entry; v >= prec
                // only certifies "at least prec >= need".
                Ok(v >= need)
            }
        },
    }
}

fn is_zero_mode(x: &QuadExt, ctx: &PadicCtx, mode: CertMode) -> bool {
    match mode {
        CertMode::Exact => x.is_zero(),
        CertMode::ModP(prec) => x.val(ctx).map_or(true, |v| v >= prec),
    }
}

/// Block bound for K_{n,m}: the required valuation of entry (i, j), 0-based,
/// with blocks (n, 1, n); `one_shift` marks the middle entry tested against
/// 1 + p^m.
fn k_block_bound(i: usize, j: usize, n: usize, m: i64) -> (i64, bool) {
    let zone = |t: usize| {
        if t < n {
            0
        } else if t == n {
            1
        } else {
            2
        }
    };
    match (zone(i), zone(j)) {
        (0, 0) | (0, 1) | (1, 2) | (2, 2) => (0, false),
        (0, 2) => (-m, false),
        (1, 0) | (2, 0) | (2, 1) => (m, false),
        (1, 1) => (m, true),
        _ => unreachable!(),
    }
}

/// Membership test; see [`Subgroup`] for the recognized shapes. The ambient
/// unitary condition is included for the matrix subgroups of G_n and H_r.
pub fn group_membership(
    g: &UMat,
    which: &Subgroup,
    ctx: &PadicCtx,
    mode: CertMode,
) -> Result<bool> {
    match which {
        Subgroup::Unitary => Ok(g.is_unitary(ctx, mode)),
        Subgroup::K { n, m } => {
            let big = 2 * n + 1;
            if g.size != big {
                return Err(Error::InvalidArgument("size mismatch for K_{n,m}".into()));
            }
            if !g.is_unitary(ctx, mode) {
                return Ok(false);
            }
            for i in 0..big {
                for j in 0..big {
                    let (need, one_shift) = k_block_bound(i, j, *n, *m);
                    let entry = if one_shift {
                        g.at(i, j).sub(&QuadExt::one())
                    } else {
                        g.at(i, j).clone()
                    };
                    if !val_at_least(&entry, need, ctx, mode, "K membership")? {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        Subgroup::K0 { n, m } => {
            let spec = LevelSpec::new(*n, *m)?;
            let t = UMat::t_ell(*n, spec.l(), ctx);
            let tinv = UMat::t_ell(*n, -spec.l(), ctx);
            let conj = tinv.mul(g, ctx).mul(&t, ctx);
            group_membership(&conj, &Subgroup::K { n: *n, m: *m }, ctx, mode)
        }
        Subgroup::R { r, m } => {
            let big = 2 * r;
            if g.size != big {
                return Err(Error::InvalidArgument("size mismatch for R_{r,m}".into()));
            }
            if !g.is_unitary(ctx, mode) {
                return Ok(false);
            }
            for i in 0..big {
                for j in 0..big {
                    let need = match (i < *r, j < *r) {
                        (true, true) | (false, false) => 0,
                        (true, false) => -m,
                        (false, true) => *m,
                    };
                    if !val_at_least(g.at(i, j), need, ctx, mode, "R membership")? {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        Subgroup::Gamma { r, m } | Subgroup::GammaPrime { r, m } => {
            if g.size != *r {
                return Err(Error::InvalidArgument("size mismatch for Gamma".into()));
            }
            // GL_r(o_E): integral with integral inverse.
            if !g.is_integral(ctx) {
                return Ok(false);
            }
            let inv = match g.inverse(ctx) {
                Ok(v) => v,
                Err(_) => return Ok(false),
            };
            if !inv.is_integral(ctx) {
                return Ok(false);
            }
            let prime = matches!(which, Subgroup::GammaPrime { .. });
            for t in 0..r.saturating_sub(1) {
                let entry = if prime { g.at(t, r - 1) } else { g.at(r - 1, t) };
                if !val_at_least(entry, *m, ctx, mode, "Gamma membership")? {
                    return Ok(false);
                }
            }
            let corner = g.at(r - 1, r - 1).sub(&QuadExt::one());
            val_at_least(&corner, *m, ctx, mode, "Gamma membership")
        }
        Subgroup::E1 { m } => {
            // Central scalar z I with N(z) = 1 and z - 1 in p^m.
            let z = g.at(0, 0).clone();
            for i in 0..g.size {
                for j in 0..g.size {
                    let want = if i == j { z.clone() } else { QuadExt::zero() };
                    if !is_zero_mode(&g.at(i, j).sub(&want), ctx, mode) {
                        return Ok(false);
                    }
                }
            }
            let norm_dev = QuadExt::from_rat(z.norm(ctx)).sub(&QuadExt::one());
            let prec_need = match mode {
                CertMode::Exact => {
                    if !norm_dev.is_zero() {
                        return Ok(false);
                    }
                    true
                }
                CertMode::ModP(prec) => {
                    if !norm_dev.val(ctx).map_or(true, |v| v >= prec) {
                        return Ok(false);
                    }
                    true
                }
            };
            let _ = prec_need;
            val_at_least(&z.sub(&QuadExt::one()), *m, ctx, mode, "E1 membership")
        }
        Subgroup::Borel { n } => {
            let big = 2 * n + 1;
            if g.size != big {
                return Err(Error::InvalidArgument("size mismatch for Borel".into()));
            }
            Ok(g.is_unitary(ctx, mode) && g.is_upper_triangular(ctx, mode))
        }
        Subgroup::P { n, r } | Subgroup::PBar { n, r } => {
            let big = 2 * n + 1;
            if g.size != big {
                return Err(Error::InvalidArgument("size mismatch for parabolic".into()));
            }
            if !g.is_unitary(ctx, mode) {
                return Ok(false);
            }
            let bar = matches!(which, Subgroup::PBar { .. });
            // Blocks (r, 2(n - r) + 1, r); P is block upper triangular.
            let zone = |t: usize| {
                if t < *r {
                    0
                } else if t < big - r {
                    1
                } else {
                    2
                }
            };
            for i in 0..big {
                for j in 0..big {
                    let (zi, zj) = (zone(i), zone(j));
                    let below = zi > zj;
                    let must_vanish = if bar { zi < zj } else { below };
                    if must_vanish && !is_zero_mode(g.at(i, j), ctx, mode) {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rint, PadicCtx};
    use crate::matgroups::roots::{build_root_element, RootLabel};

    fn ctx() -> PadicCtx {
        PadicCtx::new(3).unwrap()
    }

    #[test]
    fn identity_is_in_k_for_all_levels() {
        let ctx = ctx();
        for n in 1..=2 {
            for m in 0..=5 {
                let id = UMat::identity(2 * n + 1);
                assert!(group_membership(&id, &Subgroup::K { n, m }, &ctx, CertMode::Exact)
                    .unwrap());
                assert!(group_membership(&id, &Subgroup::K0 { n, m }, &ctx, CertMode::Exact)
                    .unwrap());
            }
        }
    }

    #[test]
    fn minus_root_membership_boundary() {
        let ctx = ctx();
        let n = 2;
        for m in 1..=4i64 {
            let inside = QuadExt::from_rat(ctx.p_pow(m));
            let outside = QuadExt::from_rat(ctx.p_pow(m - 1));
            let yes = build_root_element(RootLabel::MinusEk(1), &inside, n, &ctx).unwrap();
            let no = build_root_element(RootLabel::MinusEk(1), &outside, n, &ctx).unwrap();
            assert!(group_membership(&yes, &Subgroup::K { n, m }, &ctx, CertMode::Exact).unwrap());
            assert!(!group_membership(&no, &Subgroup::K { n, m }, &ctx, CertMode::Exact).unwrap());
        }
    }

    #[test]
    fn precision_insufficiency_is_loud() {
        let ctx = ctx();
        let n = 1;
        // An entry congruent to 0 mod p^2 cannot certify a p^3 bound.
        let y = QuadExt::from_rat(rat(9, 1));
        let g = build_root_element(RootLabel::MinusEk(1), &y, n, &ctx).unwrap();
        let res = group_membership(&g, &Subgroup::K { n, m: 3 }, &ctx, CertMode::ModP(2));
        assert!(matches!(res, Err(Error::PrecisionInsufficient { .. })));
    }

    #[test]
    fn gamma_shapes() {
        let ctx = ctx();
        let mut a = UMat::identity(3);
        a.set(2, 0, QuadExt::from_rat(rint(9)));
        a.set(0, 1, QuadExt::new(rint(2), rint(1)));
        assert!(group_membership(&a, &Subgroup::Gamma { r: 3, m: 2 }, &ctx, CertMode::Exact)
            .unwrap());
        assert!(!group_membership(&a, &Subgroup::Gamma { r: 3, m: 3 }, &ctx, CertMode::Exact)
            .unwrap());
        let b = a.transpose();
        assert!(group_membership(&b, &Subgroup::GammaPrime { r: 3, m: 2 }, &ctx, CertMode::Exact)
            .unwrap());
        // Non-integral inverse is rejected even when entries are integral.
        let mut c = UMat::identity(2);
        c.set(0, 0, QuadExt::from_rat(rint(3)));
        assert!(!group_membership(&c, &Subgroup::Gamma { r: 2, m: 0 }, &ctx, CertMode::Exact)
            .unwrap());
    }

    #[test]
    fn parabolic_shapes() {
        let ctx = ctx();
        let n = 2;
        let up = build_root_element(RootLabel::Ek(1), &QuadExt::one(), n, &ctx).unwrap();
        let low = up.transpose();
        assert!(group_membership(&up, &Subgroup::P { n, r: 1 }, &ctx, CertMode::Exact).unwrap());
        assert!(!group_membership(&low, &Subgroup::P { n, r: 1 }, &ctx, CertMode::Exact).unwrap());
        assert!(group_membership(&low, &Subgroup::PBar { n, r: 1 }, &ctx, CertMode::Exact)
            .unwrap());
        // The middle-block root e_2 lives in the Levi of P_{2,1}.
        let mid = build_root_element(RootLabel::Ek(2), &QuadExt::delta(), n, &ctx).unwrap();
        assert!(group_membership(&mid, &Subgroup::P { n, r: 1 }, &ctx, CertMode::Exact).unwrap());
        assert!(group_membership(&mid, &Subgroup::PBar { n, r: 1 }, &ctx, CertMode::Exact)
            .unwrap());
    }

    #[test]
    fn filtration_k0_decreasing() {
        let ctx = ctx();
        let n = 1;
        // chi_{e_1}(p^{l}) lies in K0_{n, e+2l} and all shallower levels of
        // the same parity.
        for e in 0..=1i64 {
            for l in 0..=2i64 {
                let y = QuadExt::from_rat(ctx.p_pow(l));
                let g = build_root_element(RootLabel::Ek(1), &y, n, &ctx).unwrap();
                for l2 in 0..=l {
                    let m2 = e + 2 * l2;
                    assert!(
                        group_membership(&g, &Subgroup::K0 { n, m: m2 }, &ctx, CertMode::Exact)
                            .unwrap(),
                        "e = {e}, l = {l}, level {m2}"
                    );
                }
                let deeper = e + 2 * (l + 1);
                assert!(
                    !group_membership(&g, &Subgroup::K0 { n, m: deeper }, &ctx, CertMode::Exact)
                        .unwrap(),
                    "e = {e}, l = {l}, deeper {deeper}"
                );
            }
        }
    }
}
