//! Iwasawa decompositions G_n = B_n K_{n,e} for e = 0, 1.
//!
//! Level 0 works in two stages: a Hermite column reduction over o_E writes
//! g = T gamma with T upper triangular and gamma integral, and a hyperbolic
//! Gram-Schmidt ("anti-Cholesky") of the twisted Gram matrix t*conj(T) J T
//! produces an integral upper-triangular change of basis C with
//! t*conj(C) (t*conj(T) J T) C = J, so that k = (gamma^{-1} C)^{-1}-style
//! regrouping lands the compact factor in K_{n,0}. Only the middle norm
//! equation may require a Hensel lift, in which case the factors are
//! certified mod p^M with M recorded.
//!
//! Level 1 runs level 0 first and then peels the residue-field cell of the
//! compact factor: an elimination sweep with exact lifts of Borel
//! generators brings it to a unit Weyl pattern w = hat(w_sigma) w_S(1)
//! times an element of K_{n,0} cap K_{n,1}; the identity
//! w_S(1) = t_S' w_S(p) with a torus element t_S' then converts the unit
//! Weyl into the level-one representative.

use crate::exactnum::{cayley_norm_one, rat, solve_norm_unit, PadicCtx, QuadExt, Rat};
use crate::{Error, Result};
use num_traits::One;

use super::matrix::{CertMode, GroupElement, UMat};
use super::membership::{group_membership, Subgroup};
use super::roots::{build_weyl_rep, clear_op, weyl_w_s};

/// Hermite column reduction: returns (T, kacc) with g * kacc = T upper
/// triangular and kacc in GL_N(o_E). Pivots prefer the entry of minimal
/// valuation in the working row, ties broken by lowest column index.
fn hermite_columns(g: &UMat, ctx: &PadicCtx) -> Result<(UMat, UMat)> {
    let n = g.size;
    let mut w = g.clone();
    let mut acc = UMat::identity(n);
    for row in (0..n).rev() {
        // Pivot among columns 0..=row of this row.
        let mut best: Option<(i64, usize)> = None;
        for col in 0..=row {
            if let Some(v) = w.at(row, col).val(ctx) {
                if best.map_or(true, |(bv, bc)| v < bv || (v == bv && col < bc)) {
                    best = Some((v, col));
                }
            }
        }
        let (_, pc) = best.ok_or_else(|| {
            Error::InvalidArgument("singular matrix in Hermite reduction".into())
        })?;
        if pc != row {
            for i in 0..n {
                let tmp = w.at(i, pc).clone();
                w.set(i, pc, w.at(i, row).clone());
                w.set(i, row, tmp);
                let tmp = acc.at(i, pc).clone();
                acc.set(i, pc, acc.at(i, row).clone());
                acc.set(i, row, tmp);
            }
        }
        let pivot = w.at(row, row).clone();
        for col in 0..row {
            let c = w.at(row, col).div(&pivot, ctx)?;
            if c.is_zero() {
                continue;
            }
            debug_assert!(c.val(ctx).map_or(true, |v| v >= 0), "integral Hermite step");
            for i in 0..n {
                let sub = w.at(i, row).mul(&c, ctx);
                let cur = w.at(i, col).sub(&sub);
                w.set(i, col, cur);
                let sub = acc.at(i, row).mul(&c, ctx);
                let cur = acc.at(i, col).sub(&sub);
                acc.set(i, col, cur);
            }
        }
    }
    Ok((w, acc))
}

/// Hermitian pairing with respect to a Gram matrix h: H(x, y) =
/// t*conj(x) h y.
fn gram_pair(h: &UMat, x: &[QuadExt], y: &[QuadExt], ctx: &PadicCtx) -> QuadExt {
    let n = h.size;
    let mut acc = QuadExt::zero();
    for a in 0..n {
        if x[a].is_zero() {
            continue;
        }
        let xa = x[a].conj();
        for b in 0..n {
            if y[b].is_zero() || h.at(a, b).is_zero() {
                continue;
            }
            acc = acc.add(&xa.mul(h.at(a, b), ctx).mul(&y[b], ctx));
        }
    }
    acc
}

/// Hyperbolic Gram-Schmidt: finds an upper-triangular C in GL_N(o_E) with
/// t*conj(C) h C = J, for h Hermitian, integral, unimodular and vanishing
/// above the anti-diagonal. Returns (C, mode): the middle norm equation may
/// be solved by a Hensel lift certified mod p^prec.
fn anti_cholesky(h: &UMat, ctx: &PadicCtx, prec: i64) -> Result<(UMat, CertMode)> {
    let n = h.size;
    let mut cols: Vec<Vec<QuadExt>> = (0..n)
        .map(|j| {
            let mut v = vec![QuadExt::zero(); n];
            v[j] = QuadExt::one();
            v
        })
        .collect();
    let mut mode = CertMode::Exact;
    let pairs = n / 2;
    for t in 0..pairs {
        let lo = t;
        let hi = n - 1 - t;
        let nu = gram_pair(h, &cols[lo], &cols[hi], ctx);
        if nu.val(ctx) != Some(0) {
            return Err(Error::InvalidArgument(
                "unbalanced hyperbolic pairing in Iwasawa reduction".into(),
            ));
        }
        let nu_inv = nu.inv(ctx)?;
        let a: Vec<QuadExt> = cols[hi].iter().map(|x| x.mul(&nu_inv, ctx)).collect();
        let beta = gram_pair(h, &a, &a, ctx);
        debug_assert!(beta.is_in_f(), "self-pairing is Hermitian");
        let lambda = QuadExt::from_rat(beta.a.clone() * rat(1, 2));
        let new_hi: Vec<QuadExt> =
            a.iter().zip(&cols[lo]).map(|(x, c)| x.sub(&c.mul(&lambda, ctx))).collect();
        cols[hi] = new_hi;
        for j in (lo + 1)..hi {
            let gamma = gram_pair(h, &cols[hi], &cols[j], ctx);
            debug_assert!(
                gram_pair(h, &cols[lo], &cols[j], ctx).is_zero(),
                "anti-triangular invariant"
            );
            if gamma.is_zero() {
                continue;
            }
            let corr: Vec<QuadExt> =
                cols[j].iter().zip(&cols[lo]).map(|(x, c)| x.sub(&c.mul(&gamma, ctx))).collect();
            cols[j] = corr;
        }
    }
    if n % 2 == 1 {
        let mid = n / 2;
        let eta = gram_pair(h, &cols[mid], &cols[mid], ctx);
        debug_assert!(eta.is_in_f());
        if eta != QuadExt::one() {
            if eta.val(ctx) != Some(0) {
                return Err(Error::InvalidArgument(
                    "middle norm is not a unit in Iwasawa reduction".into(),
                ));
            }
            let target = Rat::one() / eta.a.clone();
            let rho = solve_norm_unit(&target, ctx, prec)?;
            cols[mid] = cols[mid].iter().map(|x| x.mul(&rho, ctx)).collect();
            mode = CertMode::ModP(prec);
        }
    }
    let mut c = UMat::zero(n);
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            debug_assert!(i <= j || v.is_zero(), "C stays upper triangular");
            c.set(i, j, v.clone());
        }
    }
    Ok((c, mode))
}

fn iwasawa_level0(g: &UMat, ctx: &PadicCtx, prec: i64) -> Result<(GroupElement, GroupElement)> {
    let n = g.size;
    let j = UMat::j_form(n);
    let (t_mat, kacc) = hermite_columns(g, ctx)?;
    let h = t_mat.conj_transpose().mul(&j, ctx).mul(&t_mat, ctx);
    let (c, mode) = anti_cholesky(&h, ctx, prec)?;
    // g * kacc = T, t*conj(C) (t*conj(T) J T) C = J
    // => b := T C is in B_n, k := (kacc C)^{-1} is in K_{n,0}.
    let b = t_mat.mul(&c, ctx);
    let k = kacc.mul(&c, ctx).inverse(ctx)?;
    debug_assert!(b.mul(&k, ctx).sub(g).min_val(ctx).map_or(true, |v| match mode {
        CertMode::Exact => false,
        CertMode::ModP(m) => v >= m - 2,
    }) || b.mul(&k, ctx) == *g);
    Ok((GroupElement { mat: b, mode }, GroupElement { mat: k, mode }))
}

/// Residue-field elimination bringing k0 in K_{n,0} to the form
/// L k0 R === hat(w_sigma) w_S(1) modulo the congruence kernel, with
/// L built from upper-Borel generators and R from K_{n,0} cap K_{n,1}.
/// Returns (l_mat, r_mat, sigma, s).
fn kappa_bruhat(
    k0: &UMat,
    n: usize,
    ctx: &PadicCtx,
) -> Result<(UMat, UMat, Vec<usize>, Vec<usize>)> {
    let big = 2 * n + 1;
    let mid = n;
    let star = |i: usize| big - 1 - i;
    let unit = |x: &QuadExt| x.val(ctx) == Some(0);
    let resid = |x: &QuadExt| x.reduce(ctx, 1);
    let mut z = k0.clone();
    let mut lacc = UMat::identity(big);
    let mut racc = UMat::identity(big);

    // Phase A: reduced column echelon (mod p) of the first n columns via
    // hat-embedded GL_n(o_E) operations, bottom-most pivots.
    let mut pivots: Vec<Option<usize>> = vec![None; n];
    for col in 0..n {
        loop {
            // Bottom-most unit entry of this column.
            let r = (0..big)
                .rev()
                .find(|&r| unit(z.at(r, col)))
                .ok_or_else(|| Error::InvalidArgument("degenerate column mod p".into()))?;
            if let Some(prev) = (0..col).find(|&k| pivots[k] == Some(r)) {
                // Clear against the earlier pivot column.
                let c = z.at(r, col).div(z.at(r, prev), ctx)?;
                let mut a = UMat::identity(n);
                a.set(prev, col, c.neg());
                let op = a.embed_gl_hat(n, ctx)?;
                z = z.mul(&op, ctx);
                racc = racc.mul(&op, ctx);
            } else {
                pivots[col] = Some(r);
                break;
            }
        }
        // Normalize the pivot entry to a unit congruent to 1.
        let r = pivots[col].unwrap();
        let u = z.at(r, col).clone();
        let mut a = UMat::identity(n);
        a.set(col, col, u.inv(ctx)?);
        let op = a.embed_gl_hat(n, ctx)?;
        z = z.mul(&op, ctx);
        racc = racc.mul(&op, ctx);
    }
    // Cross-clear pivot rows.
    for col in 0..n {
        for other in 0..n {
            if other == col {
                continue;
            }
            let pr = pivots[other].unwrap();
            let c = z.at(pr, col).clone();
            if c.val(ctx).map_or(false, |v| v == 0) || (!c.is_zero() && c.val(ctx) == Some(0)) {
                // fallthrough handled below
            }
            if !resid(&c).is_zero() {
                let mut a = UMat::identity(n);
                a.set(other, col, resid(&c).neg());
                let op = a.embed_gl_hat(n, ctx)?;
                z = z.mul(&op, ctx);
                racc = racc.mul(&op, ctx);
            }
        }
    }
    let pivots: Vec<usize> = pivots.into_iter().map(Option::unwrap).collect();
    // Validate the signed pattern: one pivot per hyperbolic pair, no middle.
    let mut seen_pair = vec![false; n];
    for &p in &pivots {
        if p == mid {
            return Err(Error::InvalidArgument("isotropy violated: middle pivot".into()));
        }
        let pair = if p < mid { p } else { star(p) };
        if seen_pair[pair] {
            return Err(Error::InvalidArgument("isotropy violated: doubled pair".into()));
        }
        seen_pair[pair] = true;
    }
    let s: Vec<usize> =
        (0..n).filter(|&k| pivots[k] > mid).map(|k| k + 1).collect();
    let sigma: Vec<usize> = (0..n)
        .map(|k| if pivots[k] < mid { pivots[k] + 1 } else { star(pivots[k]) + 1 })
        .collect();

    // Phase B: elimination sweeps with exact Borel lifts.
    let is_pivot_row = |r: usize| pivots.contains(&r);
    let cap = 40;
    for _sweep in 0..cap {
        let mut acted = false;

        // Middle-row entries of the pivot columns, sourced from f-pivots.
        for col in 0..n {
            let p = pivots[col];
            let entry = resid(z.at(mid, col));
            if entry.is_zero() {
                continue;
            }
            if p > mid {
                let op = clear_op(mid, p, &entry.neg(), n, ctx)?;
                z = op.mul(&z, ctx);
                lacc = op.mul(&lacc, ctx);
                acted = true;
            }
            // e-pivot: handled by isotropy after the mirror diagonal clears.
        }

        // Mirror-row entries of the pivot columns.
        for col in 0..n {
            let p = pivots[col];
            for row in 0..big {
                if row == mid || is_pivot_row(row) || row >= p {
                    continue;
                }
                let entry = resid(z.at(row, col));
                if entry.is_zero() {
                    continue;
                }
                if row == star(p) {
                    // Mirror diagonal: needs a trace-zero coefficient; take
                    // the delta-component (the trace part dies with the
                    // middle entry by isotropy).
                    let db = entry.b.clone();
                    if db.is_zero() {
                        continue;
                    }
                    let coeff = QuadExt::new(Rat::from_integer(0.into()), db).neg();
                    let op = clear_op(row, p, &coeff, n, ctx)?;
                    z = op.mul(&z, ctx);
                    lacc = op.mul(&lacc, ctx);
                    acted = true;
                } else {
                    let op = clear_op(row, p, &entry.neg(), n, ctx)?;
                    z = op.mul(&z, ctx);
                    lacc = op.mul(&lacc, ctx);
                    acted = true;
                }
            }
        }

        // Middle entry of the middle column: normalize to 1 by the central
        // torus coordinate.
        let b_res = resid(z.at(mid, mid));
        if !b_res.is_zero() && b_res != QuadExt::one() {
            let t0 = lift_norm_one(&b_res, ctx)?;
            let t0i = t0.inv(ctx)?;
            let mut t = UMat::identity(big);
            t.set(mid, mid, t0i);
            z = t.mul(&z, ctx);
            lacc = t.mul(&lacc, ctx);
            acted = true;
        }

        // Convergence test: pivot columns clean outside their pivot row,
        // middle column congruent to v0 modulo pattern columns.
        let mut clean = true;
        for col in 0..n {
            for row in 0..big {
                if row == pivots[col] {
                    continue;
                }
                if !resid(z.at(row, col)).is_zero() {
                    clean = false;
                }
            }
        }
        for row in 0..big {
            if row == mid || is_pivot_row(row) {
                continue;
            }
            if !resid(z.at(row, mid)).is_zero() {
                clean = false;
            }
        }
        if resid(z.at(mid, mid)) != QuadExt::one() {
            clean = false;
        }
        if clean {
            return Ok((lacc, racc, sigma, s));
        }
        if !acted {
            break;
        }
    }
    Err(Error::InvalidArgument("residue elimination did not converge".into()))
}

/// Exact norm-one lift of a residue-field norm-one element.
fn lift_norm_one(r: &QuadExt, ctx: &PadicCtx) -> Result<QuadExt> {
    let one = QuadExt::one();
    if *r == one {
        return Ok(one);
    }
    if *r == one.neg() {
        return Ok(one.neg());
    }
    // Cayley: r = (1 + u delta) / (1 - u delta) with u = (r - 1)/(delta (r + 1)).
    let num = r.sub(&one);
    let den = QuadExt::delta().mul(&r.add(&one), ctx);
    if den.val(ctx) != Some(0) {
        // r === -1 mod p: shift by -1 and recurse on -r.
        let m = lift_norm_one(&r.neg(), ctx)?;
        return Ok(m.neg());
    }
    let u = num.div(&den, ctx)?.reduce(ctx, 1);
    if !u.is_in_f() {
        return Err(Error::InvalidArgument("residue is not norm-one".into()));
    }
    cayley_norm_one(&u.a, ctx)
}

fn iwasawa_level1(g: &UMat, ctx: &PadicCtx, prec: i64) -> Result<(GroupElement, GroupElement)> {
    let n = (g.size - 1) / 2;
    let (b0, k0) = iwasawa_level0(g, ctx, prec)?;
    let (lacc, racc, sigma, s) = kappa_bruhat(&k0.mat, n, ctx)?;
    let w_unit = build_weyl_rep(&sigma, &s, &QuadExt::one(), n, ctx)?;
    let z = lacc.mul(&k0.mat, ctx).mul(&racc, ctx);
    let q0 = w_unit.inverse(ctx)?.mul(&z, ctx);
    // q0 must land in K_{n,0} cap K_{n,1} (mod-p conditions on an exact
    // unitary integral matrix are exact statements).
    for mm in [0i64, 1] {
        if !group_membership(&q0, &Subgroup::K { n, m: mm }, ctx, CertMode::Exact)? {
            return Err(Error::InvalidArgument(format!(
                "residue elimination left K_(n,{mm})"
            )));
        }
    }
    // w_S(1) = t_S' w_S(p): convert to the level-one Weyl representative.
    let sigma_id: Vec<usize> = (1..=n).collect();
    let w_hat_sigma = build_weyl_rep(&sigma, &[], &QuadExt::one(), n, ctx)?;
    let w_s_p = weyl_w_s(&s, &QuadExt::from_rat(ctx.p_pow(1)), n, ctx)?;
    let _ = sigma_id;
    let ts: Vec<QuadExt> = (1..=n)
        .map(|i| {
            if s.contains(&i) {
                QuadExt::from_rat(ctx.p_pow(1))
            } else {
                QuadExt::one()
            }
        })
        .collect();
    let t_s = UMat::torus_g(&ts, &QuadExt::one(), ctx)?;
    // b extra = L^{-1} (hat(sigma) t_S' hat(sigma)^{-1});
    // k1 = hat(sigma) w_S(p) q0 R^{-1}.
    let conj_t = w_hat_sigma.mul(&t_s, ctx).mul(&w_hat_sigma.inverse(ctx)?, ctx);
    let b_extra = lacc.inverse(ctx)?.mul(&conj_t, ctx);
    let k1 = w_hat_sigma.mul(&w_s_p, ctx).mul(&q0, ctx).mul(&racc.inverse(ctx)?, ctx);
    if !group_membership(&k1, &Subgroup::K { n, m: 1 }, ctx, CertMode::Exact)? {
        return Err(Error::InvalidArgument("level-one factor failed membership".into()));
    }
    let b = b0.mat.mul(&b_extra, ctx);
    Ok((GroupElement { mat: b, mode: b0.mode }, GroupElement { mat: k1, mode: k0.mode }))
}

/// Iwasawa decomposition g = b k with b upper triangular in G_n and
/// k in K_{n,e}. Factors are exact unless a Hensel norm lift was needed,
/// in which case they are certified mod p^prec.
pub fn iwasawa_decompose(
    g: &UMat,
    e: i64,
    ctx: &PadicCtx,
    prec: i64,
) -> Result<(GroupElement, GroupElement)> {
    match e {
        0 => iwasawa_level0(g, ctx, prec),
        1 => iwasawa_level1(g, ctx, prec),
        _ => Err(Error::InvalidArgument("e must be 0 or 1".into())),
    }
}

/// Opposite decomposition g = pbar k with pbar lower triangular
/// (in the opposite Borel, hence in every opposite parabolic) and
/// k in K_{n,e}, via conjugation by w_{I_n}(p^e).
pub fn opposite_iwasawa(
    g: &UMat,
    e: i64,
    ctx: &PadicCtx,
    prec: i64,
) -> Result<(GroupElement, GroupElement)> {
    let n = (g.size - 1) / 2;
    let all: Vec<usize> = (1..=n).collect();
    let y = QuadExt::from_rat(ctx.p_pow(e));
    let w = weyl_w_s(&all, &y, n, ctx)?;
    let winv = w.inverse(ctx)?;
    let gp = winv.mul(g, ctx).mul(&w, ctx);
    let (b, k) = iwasawa_decompose(&gp, e, ctx, prec)?;
    let pbar = w.mul(&b.mat, ctx).mul(&winv, ctx);
    let kk = w.mul(&k.mat, ctx).mul(&winv, ctx);
    Ok((GroupElement { mat: pbar, mode: b.mode }, GroupElement { mat: kk, mode: k.mode }))
}
