//! Root subgroup elements and Weyl representatives of G_n = U(2n+1).
//!
//! Index convention is 1-based to match the root labels: for 1 <= i <= N we
//! write i* = N + 1 - i. The defining formulas are
//!   chi_{e_i - e_j}(y) = I + y E_ij - conj(y) E_{j* i*}
//!   chi_{e_i + e_j}(y) = I + y E_{i j*} - conj(y) E_{j i*}
//!   chi_{e_k}(y)       = I + y E_{k, n+1} - conj(y) E_{n+1, k*}
//!                          - (y conj(y) / 2) E_{k k*}
//!   chi_{2 e_k}(x)     = I + x delta E_{k k*}          (x in F)
//! with the negative roots given by transposition.

use crate::exactnum::{rat, PadicCtx, QuadExt};
use crate::{Error, Result};

use super::matrix::UMat;

/// Label of a root subgroup of G_n; indices are 1-based with i < j.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootLabel {
    EiMinusEj(usize, usize),
    EiPlusEj(usize, usize),
    Ek(usize),
    MinusEk(usize),
    MinusEiPlusEj(usize, usize),
    MinusEiMinusEj(usize, usize),
    TwoEk(usize),
    MinusTwoEk(usize),
}

impl RootLabel {
    fn validate(&self, n: usize) -> Result<()> {
        let ok = match *self {
            RootLabel::EiMinusEj(i, j)
            | RootLabel::EiPlusEj(i, j)
            | RootLabel::MinusEiPlusEj(i, j)
            | RootLabel::MinusEiMinusEj(i, j) => 1 <= i && i < j && j <= n,
            RootLabel::Ek(k) | RootLabel::MinusEk(k) | RootLabel::TwoEk(k)
            | RootLabel::MinusTwoEk(k) => 1 <= k && k <= n,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidIndex(format!("{self:?} out of range for rank {n}")))
        }
    }

    /// The argument of +-2e_k roots must lie in F.
    fn needs_f_argument(&self) -> bool {
        matches!(self, RootLabel::TwoEk(_) | RootLabel::MinusTwoEk(_))
    }
}

/// Builds the root element chi_alpha(y) in G_n.
pub fn build_root_element(
    label: RootLabel,
    y: &QuadExt,
    n: usize,
    ctx: &PadicCtx,
) -> Result<UMat> {
    label.validate(n)?;
    if label.needs_f_argument() && !y.is_in_f() {
        return Err(Error::InvalidArgument(format!("{label:?} needs an argument in F")));
    }
    let big = 2 * n + 1;
    let star = |i: usize| big + 1 - i; // 1-based mirror
    let mut m = UMat::identity(big);
    let yb = y.conj();
    let half = QuadExt::from_rat(rat(1, 2));
    match label {
        RootLabel::EiMinusEj(i, j) => {
            m.set(i - 1, j - 1, y.clone());
            m.set(star(j) - 1, star(i) - 1, yb.neg());
        }
        RootLabel::EiPlusEj(i, j) => {
            m.set(i - 1, star(j) - 1, y.clone());
            m.set(j - 1, star(i) - 1, yb.neg());
        }
        RootLabel::Ek(k) => {
            m.set(k - 1, n, y.clone());
            m.set(n, star(k) - 1, yb.neg());
            m.set(k - 1, star(k) - 1, y.mul(&yb, ctx).mul(&half, ctx).neg());
        }
        RootLabel::TwoEk(k) => {
            m.set(k - 1, star(k) - 1, y.mul(&QuadExt::delta(), ctx));
        }
        RootLabel::MinusEiPlusEj(i, j) => {
            return Ok(build_root_element(RootLabel::EiMinusEj(i, j), y, n, ctx)?.transpose());
        }
        RootLabel::MinusEiMinusEj(i, j) => {
            return Ok(build_root_element(RootLabel::EiPlusEj(i, j), y, n, ctx)?.transpose());
        }
        RootLabel::MinusEk(k) => {
            return Ok(build_root_element(RootLabel::Ek(k), y, n, ctx)?.transpose());
        }
        RootLabel::MinusTwoEk(k) => {
            return Ok(build_root_element(RootLabel::TwoEk(k), y, n, ctx)?.transpose());
        }
    }
    Ok(m)
}

/// The torus-mirrored permutation sign element w_S(y) with
/// w_S(y) = sum_{i not in S} (E_ii + E_{i*i*}) + E_{n+1,n+1}
///          + sum_{j in S} (conj(y)^{-1} E_{j j*} + y E_{j* j}).
pub fn weyl_w_s(s: &[usize], y: &QuadExt, n: usize, ctx: &PadicCtx) -> Result<UMat> {
    if y.is_zero() {
        return Err(Error::InvalidArgument("w_S needs a nonzero argument".into()));
    }
    for &j in s {
        if j < 1 || j > n {
            return Err(Error::InvalidIndex(format!("w_S index {j} out of range")));
        }
    }
    let big = 2 * n + 1;
    let star = |i: usize| big + 1 - i;
    let mut m = UMat::zero(big);
    m.set(n, n, QuadExt::one());
    let ybi = y.conj().inv(ctx)?;
    for i in 1..=n {
        if s.contains(&i) {
            m.set(i - 1, star(i) - 1, ybi.clone());
            m.set(star(i) - 1, i - 1, y.clone());
        } else {
            m.set(i - 1, i - 1, QuadExt::one());
            m.set(star(i) - 1, star(i) - 1, QuadExt::one());
        }
    }
    Ok(m)
}

/// Full Weyl representative hat(w_sigma) * w_S(y): sigma is a permutation of
/// {1..n} given as the image list (sigma[i-1] = sigma(i)), S a subset, y a
/// nonzero scalar.
pub fn build_weyl_rep(
    sigma: &[usize],
    s: &[usize],
    y: &QuadExt,
    n: usize,
    ctx: &PadicCtx,
) -> Result<UMat> {
    if sigma.len() != n {
        return Err(Error::InvalidArgument("permutation length must be n".into()));
    }
    let mut seen = vec![false; n + 1];
    for &v in sigma {
        if v < 1 || v > n || seen[v] {
            return Err(Error::InvalidArgument(format!("not a permutation: {sigma:?}")));
        }
        seen[v] = true;
    }
    // hat of the GL_n permutation matrix: e_i -> e_{sigma(i)}.
    let mut perm = UMat::zero(n);
    for (i, &v) in sigma.iter().enumerate() {
        perm.set(v - 1, i, QuadExt::one());
    }
    let hat = perm.embed_gl_hat(n, ctx)?;
    let ws = weyl_w_s(s, y, n, ctx)?;
    Ok(hat.mul(&ws, ctx))
}

/// The unitary elementary matrix with entry `coeff` at the (a, b) position
/// (0-based, a != b) and the mirror terms forced by the group: the building
/// block of the residue-field elimination sweeps. For mirror positions
/// b = a* the coefficient must be trace-zero (in delta F).
pub fn clear_op(a: usize, b: usize, coeff: &QuadExt, n: usize, ctx: &PadicCtx) -> Result<UMat> {
    let big = 2 * n + 1;
    assert!(a < big && b < big && a != b);
    let mid = n; // 0-based middle index
    let star0 = |i: usize| big - 1 - i;
    let (i, j) = (a + 1, b + 1); // 1-based
    if b == star0(a) {
        // mirror pair: the long root; coeff = x * delta with x in F
        let x = coeff.mul(&QuadExt::delta().inv(ctx)?, ctx);
        if !x.is_in_f() {
            return Err(Error::InvalidArgument(
                "mirror-position clearing needs a trace-zero coefficient".into(),
            ));
        }
        let label = if a < b { RootLabel::TwoEk(i) } else { RootLabel::MinusTwoEk(j) };
        return build_root_element(label, &x, n, ctx);
    }
    if a == mid {
        // (n+1 <- b): second leg of chi_{e_{b*}}(y) carries -conj(y) there.
        let t = star0(b) + 1;
        let y = coeff.conj().neg();
        let label = if b > mid { RootLabel::Ek(t) } else { RootLabel::MinusEk(b + 1) };
        // b < mid: position (mid, b) sits in the lower part: transpose leg of
        // chi_{e_{b+1}}: t*chi_{e_k}(y) has -conj(y) at (k*, n+1) and y at
        // (n+1, k): coefficient at (mid, b) is y itself.
        if b < mid {
            return build_root_element(label, coeff, n, ctx);
        }
        return build_root_element(label, &y, n, ctx);
    }
    if b == mid {
        // (a <- n+1): first leg of chi_{e_a}(y) when a is an e-index, or the
        // transpose leg when a is an f-index.
        if a < mid {
            return build_root_element(RootLabel::Ek(i), coeff, n, ctx);
        }
        // position (a, mid) with a > mid: t*chi_{e_{a*}}(y) has -conj(y) at
        // (n+1, k*)^t = (k*, n+1)... the transpose root chi_{-e_k}(y) carries
        // -conj(y) at position (k*, n+1).
        let k = star0(a) + 1;
        return build_root_element(RootLabel::MinusEk(k), &coeff.conj().neg(), n, ctx);
    }
    let ea = a < mid;
    let eb = b < mid;
    match (ea, eb) {
        (true, true) => {
            // (a, b) both e-indices: chi_{e_i - e_j} if i < j else transpose.
            if i < j {
                build_root_element(RootLabel::EiMinusEj(i, j), coeff, n, ctx)
            } else {
                build_root_element(RootLabel::MinusEiPlusEj(j, i), coeff, n, ctx)
            }
        }
        (false, false) => {
            // f-to-f block: position (a, b) = (d*, c*): chi_{e_c - e_d}
            // carries -conj(y) at (d*, c*); its transpose handles c > d.
            let d = star0(a) + 1;
            let c = star0(b) + 1;
            let y = coeff.conj().neg();
            if c < d {
                build_root_element(RootLabel::EiMinusEj(c, d), &y, n, ctx)
            } else {
                build_root_element(RootLabel::MinusEiPlusEj(d, c), &y, n, ctx)
            }
        }
        (true, false) => {
            // e-row, f-column: (i, c*) with c = b*; chi_{e_i + e_c} has y at
            // (i, c*) when i < c, -conj(y) at (c, i*)...; normalize by index.
            let c = star0(b) + 1;
            debug_assert!(c != i);
            if i < c {
                build_root_element(RootLabel::EiPlusEj(i, c), coeff, n, ctx)
            } else {
                // chi_{e_c + e_i}(y) has -conj(y) at (i, c*).
                build_root_element(RootLabel::EiPlusEj(c, i), &coeff.conj().neg(), n, ctx)
            }
        }
        (false, true) => {
            // f-row, e-column: transpose zone.
            let d = star0(a) + 1;
            debug_assert!(d != j);
            if d < j {
                // t*chi_{e_d + e_j}(y) = I + y E_{j* d} ... : carries y at
                // (d*, j)? chi_{-e_d - e_j}(y) = t*chi_{e_d+e_j}(y): entries
                // y at (j*, d)... we want position (d*, j): that is the
                // -conj(y) slot of chi_{-e_d-e_j}.
                build_root_element(RootLabel::MinusEiMinusEj(d, j), &coeff.conj().neg(), n, ctx)
            } else {
                build_root_element(RootLabel::MinusEiMinusEj(j, d), coeff, n, ctx)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rint};
    use crate::matgroups::matrix::CertMode;

    fn ctx() -> PadicCtx {
        PadicCtx::new(3).unwrap()
    }

    fn all_labels(n: usize) -> Vec<RootLabel> {
        let mut v = Vec::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                v.push(RootLabel::EiMinusEj(i, j));
                v.push(RootLabel::EiPlusEj(i, j));
                v.push(RootLabel::MinusEiPlusEj(i, j));
                v.push(RootLabel::MinusEiMinusEj(i, j));
            }
            v.push(RootLabel::Ek(i));
            v.push(RootLabel::MinusEk(i));
            v.push(RootLabel::TwoEk(i));
            v.push(RootLabel::MinusTwoEk(i));
        }
        v
    }

    #[test]
    fn root_elements_are_unitary() {
        let ctx = ctx();
        for n in 1..=3 {
            for label in all_labels(n) {
                let y = if label.needs_f_argument() {
                    QuadExt::from_rat(rat(5, 3))
                } else {
                    QuadExt::new(rat(2, 3), rint(4))
                };
                let m = build_root_element(label, &y, n, &ctx).unwrap();
                assert!(m.is_unitary(&ctx, CertMode::Exact), "{label:?} at n = {n}");
            }
        }
    }

    #[test]
    fn chi_of_zero_is_identity_and_inverse_law() {
        let ctx = ctx();
        let z = QuadExt::zero();
        let m = build_root_element(RootLabel::Ek(1), &z, 2, &ctx).unwrap();
        assert_eq!(m, UMat::identity(5));
        let y = QuadExt::new(rat(1, 3), rint(2));
        let a = build_root_element(RootLabel::Ek(1), &y, 2, &ctx).unwrap();
        let b = build_root_element(RootLabel::Ek(1), &y.neg(), 2, &ctx).unwrap();
        assert_eq!(a.mul(&b, &ctx), UMat::identity(5));
    }

    #[test]
    fn one_parameter_additivity_for_linear_roots() {
        let ctx = ctx();
        let y = QuadExt::new(rint(2), rat(1, 3));
        let z = QuadExt::new(rat(-1, 3), rint(1));
        for label in [RootLabel::EiMinusEj(1, 2), RootLabel::EiPlusEj(1, 2)] {
            let a = build_root_element(label, &y, 2, &ctx).unwrap();
            let b = build_root_element(label, &z, 2, &ctx).unwrap();
            let s = build_root_element(label, &y.add(&z), 2, &ctx).unwrap();
            assert_eq!(a.mul(&b, &ctx), s, "{label:?}");
        }
        // 2e_k roots are one-parameter in the F-argument.
        let x = QuadExt::from_rat(rat(2, 3));
        let w = QuadExt::from_rat(rint(5));
        let a = build_root_element(RootLabel::TwoEk(1), &x, 2, &ctx).unwrap();
        let b = build_root_element(RootLabel::TwoEk(1), &w, 2, &ctx).unwrap();
        let s = build_root_element(RootLabel::TwoEk(1), &x.add(&w), 2, &ctx).unwrap();
        assert_eq!(a.mul(&b, &ctx), s);
    }

    #[test]
    fn negative_root_is_transpose() {
        let ctx = ctx();
        let y = QuadExt::new(rint(1), rint(7));
        let lhs = build_root_element(RootLabel::MinusEk(1), &y, 2, &ctx).unwrap();
        let rhs = build_root_element(RootLabel::Ek(1), &y, 2, &ctx).unwrap().transpose();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn weyl_reps_are_unitary_and_identity_cases() {
        let ctx = ctx();
        let id = build_weyl_rep(&[1, 2], &[], &QuadExt::one(), 2, &ctx).unwrap();
        assert_eq!(id, UMat::identity(5));
        for n in 1..=3usize {
            let sigma: Vec<usize> = (1..=n).rev().collect();
            let s: Vec<usize> = (1..=n).step_by(2).collect();
            let y = QuadExt::from_rat(rint(3));
            let w = build_weyl_rep(&sigma, &s, &y, n, &ctx).unwrap();
            assert!(w.is_unitary(&ctx, CertMode::Exact), "n = {n}");
        }
        assert!(build_weyl_rep(&[1], &[1], &QuadExt::zero(), 1, &ctx).is_err());
    }

    #[test]
    fn w_full_conjugates_upper_to_lower_triangular() {
        let ctx = ctx();
        // Random-ish Borel elements at n <= 2: torus times positive roots.
        let n = 2;
        let t = UMat::torus_g(
            &[QuadExt::new(rint(1), rint(3)), QuadExt::from_rat(rat(2, 3))],
            &QuadExt::one(),
            &ctx,
        )
        .unwrap();
        let u1 =
            build_root_element(RootLabel::EiMinusEj(1, 2), &QuadExt::new(rint(2), rint(1)), n, &ctx)
                .unwrap();
        let u2 = build_root_element(RootLabel::Ek(2), &QuadExt::delta(), n, &ctx).unwrap();
        let b = t.mul(&u1, &ctx).mul(&u2, &ctx);
        assert!(b.is_upper_triangular(&ctx, CertMode::Exact));
        let w = weyl_w_s(&[1, 2], &QuadExt::one(), n, &ctx).unwrap();
        let conj = w.mul(&b, &ctx).mul(&w.inverse(&ctx).unwrap(), &ctx);
        // Lower triangular: transpose is upper.
        assert!(conj.transpose().is_upper_triangular(&ctx, CertMode::Exact));
    }

    #[test]
    fn clear_op_places_requested_coefficient() {
        let ctx = ctx();
        let n = 2;
        let big = 5;
        for a in 0..big {
            for b in 0..big {
                if a == b {
                    continue;
                }
                let coeff = if b == big - 1 - a {
                    QuadExt::delta().scale(&rat(2, 1))
                } else {
                    QuadExt::new(rint(2), rint(-1))
                };
                let m = clear_op(a, b, &coeff, n, &ctx).unwrap();
                assert!(m.is_unitary(&ctx, CertMode::Exact), "({a}, {b})");
                assert_eq!(m.at(a, b), &coeff, "({a}, {b}) coefficient");
                for i in 0..big {
                    assert_eq!(m.at(i, i), &QuadExt::one(), "unipotent diagonal");
                }
            }
        }
    }
}
