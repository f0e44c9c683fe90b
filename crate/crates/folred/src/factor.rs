//! Exact polynomial algebra: univariate and bivariate GCDs, square-free
//! decomposition, and factor extraction. Works on fully represented
//! polynomials; callers convert from exact `Jet2` values.

use crate::error::{Error, Result};
use crate::jet2::Jet2;
use crate::scalar::ExactScalar;

/// Dense univariate polynomial, coefficient of x^k at index k.
pub type Px = Vec<ExactScalar>;
/// Dense bivariate polynomial in y over K[x]: coefficient of y^k at index k.
pub type Pxy = Vec<Px>;

pub fn px_trim(mut p: Px) -> Px {
    while p.len() > 1 && p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn px_is_zero(p: &Px) -> bool {
    p.iter().all(|c| c.is_zero())
}

pub fn px_deg(p: &Px) -> usize {
    p.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

pub fn px_mul(a: &Px, b: &Px) -> Px {
    let mut out = vec![ExactScalar::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if cb.is_zero() {
                continue;
            }
            out[i + j] = &out[i + j] + &(ca * cb);
        }
    }
    px_trim(out)
}

pub fn px_add(a: &Px, b: &Px) -> Px {
    let n = a.len().max(b.len());
    let z = ExactScalar::zero();
    let out = (0..n)
        .map(|k| a.get(k).unwrap_or(&z) + b.get(k).unwrap_or(&z))
        .collect();
    px_trim(out)
}

pub fn px_sub(a: &Px, b: &Px) -> Px {
    px_add(a, &b.iter().map(|c| -c).collect::<Px>())
}

pub fn px_scale(a: &Px, c: &ExactScalar) -> Px {
    px_trim(a.iter().map(|x| x * c).collect())
}

/// Euclidean division in K[x]; the divisor must be nonzero.
pub fn px_divrem(a: &Px, b: &Px) -> (Px, Px) {
    assert!(!px_is_zero(b));
    let db = px_deg(b);
    let lb = b[db].inv();
    let mut rem = px_trim(a.clone());
    let mut quo = vec![ExactScalar::zero(); a.len().max(1)];
    while !px_is_zero(&rem) && px_deg(&rem) >= db {
        let dr = px_deg(&rem);
        let c = &rem[dr] * &lb;
        quo[dr - db] = c.clone();
        for k in 0..=db {
            rem[dr - db + k] = &rem[dr - db + k] - &(&b[k] * &c);
        }
        rem = px_trim(rem);
        if px_deg(&rem) == 0 && rem[0].is_zero() {
            break;
        }
        if dr == db {
            break;
        }
    }
    (px_trim(quo), rem)
}

/// Monic GCD in K[x].
pub fn px_gcd(a: &Px, b: &Px) -> Px {
    let mut f = px_trim(a.clone());
    let mut g = px_trim(b.clone());
    while !px_is_zero(&g) {
        let (_, r) = px_divrem(&f, &g);
        f = g;
        g = r;
    }
    if px_is_zero(&f) {
        return vec![ExactScalar::zero()];
    }
    let lead = f[px_deg(&f)].inv();
    px_scale(&f, &lead)
}

pub fn px_derivative(p: &Px) -> Px {
    if p.len() <= 1 {
        return vec![ExactScalar::zero()];
    }
    px_trim(
        (1..p.len())
            .map(|k| &p[k] * &ExactScalar::from_int(k as i64))
            .collect(),
    )
}

fn pxy_trim(mut p: Pxy) -> Pxy {
    for row in &mut p {
        let t = px_trim(std::mem::take(row));
        *row = t;
    }
    while p.len() > 1 && p.last().map_or(false, px_is_zero) {
        p.pop();
    }
    p
}

pub fn pxy_is_zero(p: &Pxy) -> bool {
    p.iter().all(px_is_zero)
}

pub fn pxy_deg_y(p: &Pxy) -> usize {
    p.iter().rposition(|c| !px_is_zero(c)).unwrap_or(0)
}

pub fn pxy_mul(a: &Pxy, b: &Pxy) -> Pxy {
    let mut out = vec![vec![ExactScalar::zero()]; a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if px_is_zero(ca) {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if px_is_zero(cb) {
                continue;
            }
            out[i + j] = px_add(&out[i + j], &px_mul(ca, cb));
        }
    }
    pxy_trim(out)
}

pub fn pxy_sub(a: &Pxy, b: &Pxy) -> Pxy {
    let n = a.len().max(b.len());
    let zero: Px = vec![ExactScalar::zero()];
    let out = (0..n)
        .map(|k| px_sub(a.get(k).unwrap_or(&zero), b.get(k).unwrap_or(&zero)))
        .collect();
    pxy_trim(out)
}

fn pxy_scale_px(p: &Pxy, c: &Px) -> Pxy {
    pxy_trim(p.iter().map(|row| px_mul(row, c)).collect())
}

/// Content in K[x]: monic gcd of the y-coefficients.
pub fn pxy_content(p: &Pxy) -> Px {
    let mut acc: Px = vec![ExactScalar::zero()];
    for row in p {
        if !px_is_zero(row) {
            acc = px_gcd(&acc, row);
            if px_deg(&acc) == 0 && !acc[0].is_zero() {
                break;
            }
        }
    }
    acc
}

/// Exact division of every y-coefficient by a K[x] divisor.
fn pxy_div_px(p: &Pxy, d: &Px) -> Pxy {
    pxy_trim(
        p.iter()
            .map(|row| {
                let (q, r) = px_divrem(row, d);
                debug_assert!(px_is_zero(&r));
                q
            })
            .collect(),
    )
}

/// Pseudo-remainder of a by b in K[x][y] (with respect to y).
fn pxy_prem(a: &Pxy, b: &Pxy) -> Pxy {
    let db = pxy_deg_y(b);
    let lb = &b[db];
    let mut rem = pxy_trim(a.clone());
    loop {
        if pxy_is_zero(&rem) {
            return rem;
        }
        let dr = pxy_deg_y(&rem);
        if dr < db {
            return rem;
        }
        // rem <- lb * rem - lead(rem) * y^(dr-db) * b
        let lead = rem[dr].clone();
        let mut shifted: Pxy = vec![vec![ExactScalar::zero()]; dr - db];
        shifted.extend(b.iter().cloned());
        rem = pxy_sub(&pxy_scale_px(&rem, lb), &pxy_scale_px(&shifted, &lead));
    }
}

/// GCD in K[x][y] via primitive pseudo-remainder sequence. The result is
/// primitive in y with a monic leading K[x] coefficient.
pub fn pxy_gcd(a: &Pxy, b: &Pxy) -> Pxy {
    let a = pxy_trim(a.clone());
    let b = pxy_trim(b.clone());
    if pxy_is_zero(&a) {
        return b;
    }
    if pxy_is_zero(&b) {
        return a;
    }
    let ca = pxy_content(&a);
    let cb = pxy_content(&b);
    let cont = px_gcd(&ca, &cb);
    let mut f = pxy_div_px(&a, &ca);
    let mut g = pxy_div_px(&b, &cb);
    if pxy_deg_y(&f) < pxy_deg_y(&g) {
        std::mem::swap(&mut f, &mut g);
    }
    while !pxy_is_zero(&g) && pxy_deg_y(&g) > 0 {
        let r = pxy_prem(&f, &g);
        f = g;
        if pxy_is_zero(&r) {
            g = vec![vec![ExactScalar::zero()]];
        } else {
            let cr = pxy_content(&r);
            g = pxy_div_px(&r, &cr);
        }
    }
    let prim = if pxy_is_zero(&g) {
        f
    } else {
        // nonzero remainder of y-degree 0: the primitive parts are coprime
        vec![vec![ExactScalar::one()]]
    };
    let mut out = pxy_scale_px(&prim, &cont);
    // normalize: monic leading coefficient in x of the top y-coefficient
    let dy = pxy_deg_y(&out);
    let dx = px_deg(&out[dy]);
    let lead = out[dy][dx].inv();
    out = pxy_trim(out.iter().map(|row| px_scale(row, &lead)).collect());
    out
}

pub fn pxy_derivative_y(p: &Pxy) -> Pxy {
    if p.len() <= 1 {
        return vec![vec![ExactScalar::zero()]];
    }
    pxy_trim(
        (1..p.len())
            .map(|k| px_scale(&p[k], &ExactScalar::from_int(k as i64)))
            .collect(),
    )
}

pub fn pxy_derivative_x(p: &Pxy) -> Pxy {
    pxy_trim(p.iter().map(|row| px_derivative(row)).collect())
}

/// Exact division in K[x][y]; panics in debug builds if not exact.
pub fn pxy_divexact(a: &Pxy, b: &Pxy) -> Pxy {
    let mut rem = pxy_trim(a.clone());
    if pxy_is_zero(&rem) {
        return rem;
    }
    let db = pxy_deg_y(b);
    let mut quo: Pxy = vec![vec![ExactScalar::zero()]; pxy_deg_y(&rem).saturating_sub(db) + 1];
    while !pxy_is_zero(&rem) {
        let dr = pxy_deg_y(&rem);
        assert!(dr >= db, "inexact bivariate division");
        let (q, r) = px_divrem(&rem[dr], &b[db]);
        assert!(px_is_zero(&r), "inexact bivariate division");
        let mut shifted: Pxy = vec![vec![ExactScalar::zero()]; dr - db];
        shifted.push(q.clone());
        quo[dr - db] = q;
        rem = pxy_sub(&rem, &pxy_mul(&shifted, b));
        debug_assert!(pxy_is_zero(&rem) || pxy_deg_y(&rem) < dr || dr == 0);
        if dr == 0 {
            break;
        }
    }
    assert!(pxy_is_zero(&rem), "inexact bivariate division");
    pxy_trim(quo)
}

/// Square-free decomposition: f = prod f_i^i with the f_i square-free and
/// pairwise coprime, by recursing on gcd(f, f_x, f_y). Returns the
/// nontrivial (f_i, i) pairs.
pub fn pxy_squarefree(f: &Pxy) -> Vec<(Pxy, usize)> {
    let f = pxy_trim(f.clone());
    if pxy_is_zero(&f) || (pxy_deg_y(&f) == 0 && px_deg(&f[0]) == 0) {
        return Vec::new();
    }
    let fx = pxy_derivative_x(&f);
    let fy = pxy_derivative_y(&f);
    // total derivative gcd: a repeated factor divides f, f_x and f_y
    let a0 = pxy_gcd(&pxy_gcd(&f, &fx), &fy);
    let mut out = Vec::new();
    if pxy_deg_y(&a0) == 0 && px_deg(&a0[0]) == 0 {
        out.push((f, 1));
        return out;
    }
    let reduced = pxy_divexact(&f, &a0);
    let inner = pxy_squarefree(&a0);
    // merge: factors of `reduced` appear once more than in `a0`
    let mut merged: Vec<(Pxy, usize)> = Vec::new();
    let mut rest = reduced;
    for (g, m) in inner {
        let common = pxy_gcd(&rest, &g);
        let nontrivial = !(pxy_deg_y(&common) == 0 && px_deg(&common[0]) == 0);
        if nontrivial {
            merged.push((common.clone(), m + 1));
            rest = pxy_divexact(&rest, &common);
            let leftover = pxy_divexact(&g, &common);
            if !(pxy_deg_y(&leftover) == 0 && px_deg(&leftover[0]) == 0) {
                merged.push((leftover, m));
            }
        } else {
            merged.push((g, m));
        }
    }
    if !(pxy_deg_y(&rest) == 0 && px_deg(&rest[0]) == 0) {
        merged.push((rest, 1));
    }
    merged
}

/// The square-free part: product of distinct irreducible factors.
pub fn pxy_squarefree_part(f: &Pxy) -> Pxy {
    let mut acc: Pxy = vec![vec![ExactScalar::one()]];
    for (g, _) in pxy_squarefree(f) {
        acc = pxy_mul(&acc, &g);
    }
    acc
}

pub fn jet2_to_pxy(s: &Jet2) -> Result<Pxy> {
    if !s.is_exact() {
        return Err(Error::NonPolynomial(
            "factorization requires a fully represented polynomial".into(),
        ));
    }
    let deg = s.degree().unwrap_or(0);
    let mut out: Pxy = vec![vec![ExactScalar::zero(); deg + 1]; deg + 1];
    for (i, j, c) in s.terms() {
        out[j][i] = c.clone();
    }
    Ok(pxy_trim(out))
}

pub fn pxy_to_jet2(p: &Pxy, trunc: usize) -> Jet2 {
    let mut acc = Jet2::zero(trunc);
    for (j, row) in p.iter().enumerate() {
        for (i, c) in row.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&Jet2::monomial(c.clone(), i, j, trunc));
            }
        }
    }
    acc
}

/// GCD of two exact polynomial jets, as an exact jet.
pub fn jet2_gcd(a: &Jet2, b: &Jet2) -> Result<Jet2> {
    let pa = jet2_to_pxy(a)?;
    let pb = jet2_to_pxy(b)?;
    let g = pxy_gcd(&pa, &pb);
    Ok(pxy_to_jet2(&g, a.trunc().min(b.trunc())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }
    fn xv() -> Jet2 {
        Jet2::var_x(12)
    }
    fn yv() -> Jet2 {
        Jet2::var_y(12)
    }

    #[test]
    fn univariate_gcd() {
        // gcd(x^2-1, x^2-2x+1) = x-1
        let a = vec![s(-1), s(0), s(1)];
        let b = vec![s(1), s(-2), s(1)];
        assert_eq!(px_gcd(&a, &b), vec![s(-1), s(1)]);
    }

    #[test]
    fn bivariate_gcd_of_shared_factor() {
        // (x+y)(x-y) and (x+y)(x+2y) share x+y
        let p = xv().add(&yv()).mul(&xv().sub(&yv()));
        let q = xv().add(&yv()).mul(&xv().add(&yv().scale(&s(2))));
        let g = jet2_gcd(&p, &q).unwrap();
        assert_eq!(g, xv().add(&yv()));
    }

    #[test]
    fn coprime_gcd_is_unit() {
        let p = xv().pow(2).add(&yv().pow(3));
        let q = xv().add(&yv());
        let g = jet2_gcd(&p, &q).unwrap();
        assert_eq!(g.degree(), Some(0));
    }

    #[test]
    fn gcd_with_pure_x_polynomials() {
        // gcd(x^2 y, x y^2) = x y
        let p = xv().pow(2).mul(&yv());
        let q = xv().mul(&yv().pow(2));
        let g = jet2_gcd(&p, &q).unwrap();
        assert_eq!(g, xv().mul(&yv()));
    }

    #[test]
    fn squarefree_decomposition() {
        // f = (x+y)^2 (x - y)^3 x
        let a = jet2_to_pxy(&xv().add(&yv())).unwrap();
        let b = jet2_to_pxy(&xv().sub(&yv())).unwrap();
        let c = jet2_to_pxy(&xv()).unwrap();
        let f = pxy_mul(
            &pxy_mul(&pxy_mul(&a, &a), &pxy_mul(&b, &pxy_mul(&b, &b))),
            &c,
        );
        let mut dec = pxy_squarefree(&f);
        dec.sort_by_key(|(_, m)| *m);
        assert_eq!(dec.len(), 3);
        assert_eq!(dec[0].1, 1);
        assert_eq!(dec[1].1, 2);
        assert_eq!(dec[2].1, 3);
        // multiply back
        let mut prod: Pxy = vec![vec![ExactScalar::one()]];
        for (g, m) in &dec {
            for _ in 0..*m {
                prod = pxy_mul(&prod, g);
            }
        }
        // equal up to a scalar
        let g = pxy_gcd(&prod, &f);
        let q1 = pxy_divexact(&prod, &g);
        let q2 = pxy_divexact(&f, &g);
        assert_eq!(pxy_deg_y(&q1), 0);
        assert_eq!(px_deg(&q1[0]), 0);
        assert_eq!(pxy_deg_y(&q2), 0);
        assert_eq!(px_deg(&q2[0]), 0);
    }

    #[test]
    fn exact_bivariate_division() {
        let p = xv().pow(2).sub(&yv().pow(2));
        let d = xv().add(&yv());
        let pp = jet2_to_pxy(&p).unwrap();
        let dd = jet2_to_pxy(&d).unwrap();
        let q = pxy_divexact(&pp, &dd);
        assert_eq!(pxy_to_jet2(&q, 12), xv().sub(&yv()));
    }
}
