//! Root finding for univariate polynomials over Q(i)(sqrt D).
//!
//! Degrees 1 and 2 are solved in closed form, promoting the coefficient
//! field by one real square root when needed. Higher degrees fall back on
//! the rational root theorem; anything beyond that is reported as an
//! unresolved factor rather than approximated.

use num::{BigInt, One, Signed, Zero};

use crate::factor::{px_deg, px_derivative, px_divrem, px_gcd, px_is_zero, px_trim, Px};
use crate::scalar::{ExactScalar, Q};

#[derive(Clone, Debug)]
pub struct RootReport {
    /// Roots with multiplicities, in deterministic order.
    pub roots: Vec<(ExactScalar, usize)>,
    /// Factor whose roots could not be expressed in the field, if any.
    pub unresolved: Option<Px>,
}

impl RootReport {
    pub fn fully_resolved(&self) -> bool {
        self.unresolved.is_none()
    }
}

/// Finds all roots of `p` in Q(i) extended by the context discriminant
/// `disc`, or by one fresh real square root when `disc` is None and a
/// quadratic factor demands it.
pub fn find_roots(p: &Px, disc: Option<&Q>) -> RootReport {
    let p = px_trim(p.clone());
    if px_is_zero(&p) || px_deg(&p) == 0 {
        return RootReport { roots: Vec::new(), unresolved: None };
    }
    // multiplicity structure via gcd with the derivative
    let sqfree = {
        let g = px_gcd(&p, &px_derivative(&p));
        if px_deg(&g) == 0 {
            p.clone()
        } else {
            px_divrem(&p, &g).0
        }
    };
    let ctx: Option<Q> = disc.cloned();
    let mut simple_roots = Vec::new();
    let mut unresolved: Option<Px> = None;
    let mut rem = sqfree;
    // peel off the root at 0
    if rem[0].is_zero() {
        simple_roots.push(ExactScalar::zero());
        let k = rem.iter().position(|c| !c.is_zero()).unwrap();
        rem = px_trim(rem[k..].to_vec());
    }
    loop {
        let d = px_deg(&rem);
        if d == 0 {
            break;
        }
        if d == 1 {
            simple_roots.push(-(&rem[0] / &rem[1]));
            break;
        }
        if d == 2 {
            match solve_quadratic(&rem, ctx.as_ref()) {
                Some((r1, r2, _promoted)) => {
                    simple_roots.push(r1);
                    simple_roots.push(r2);
                }
                None => unresolved = Some(rem.clone()),
            }
            break;
        }
        // degree >= 3: try rational roots
        match rational_root(&rem) {
            Some(r) => {
                simple_roots.push(r.clone());
                rem = deflate(&rem, &r);
            }
            None => {
                unresolved = Some(rem.clone());
                break;
            }
        }
    }
    let mut roots: Vec<(ExactScalar, usize)> = simple_roots
        .into_iter()
        .map(|r| {
            let m = multiplicity(&p, &r);
            (r, m)
        })
        .collect();
    roots.sort_by(|a, b| a.0.cmp_key(&b.0));
    RootReport { roots, unresolved }
}

fn multiplicity(p: &Px, r: &ExactScalar) -> usize {
    let mut q = p.clone();
    let mut m = 0;
    loop {
        if eval(&q, r).is_zero() && px_deg(&q) >= 1 {
            q = deflate(&q, r);
            m += 1;
        } else {
            return m;
        }
    }
}

pub fn eval(p: &Px, x: &ExactScalar) -> ExactScalar {
    let mut acc = ExactScalar::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Synthetic division by (t - r); the root must be exact.
fn deflate(p: &Px, r: &ExactScalar) -> Px {
    let d = px_deg(p);
    let mut out = vec![ExactScalar::zero(); d];
    let mut carry = ExactScalar::zero();
    for k in (1..=d).rev() {
        carry = &p[k] + &(carry * r);
        out[k - 1] = carry.clone();
    }
    debug_assert!((&p[0] + &(carry * r)).is_zero());
    px_trim(out)
}

/// Roots of a degree-2 polynomial, with promotion of the context
/// discriminant when the square root of the discriminant is not already in
/// Q(i). Returns None when the root would need a second extension.
fn solve_quadratic(
    p: &Px,
    ctx: Option<&Q>,
) -> Option<(ExactScalar, ExactScalar, Option<Q>)> {
    let a = &p[2];
    let b = &p[1];
    let c = &p[0];
    let four_ac = ExactScalar::from_int(4) * a * c;
    let disc = b * b - four_ac;
    let s = match disc.sqrt(ctx) {
        Ok(s) => s,
        Err(_) => {
            // maybe the discriminant needs a fresh extension
            if ctx.is_none() {
                return None;
            }
            disc.sqrt(None).ok()?
        }
    };
    let promoted = s.disc().cloned();
    if let (Some(have), Some(want)) = (ctx, &promoted) {
        if have != want {
            return None;
        }
    }
    let two_a = (ExactScalar::from_int(2) * a).inv();
    let r1 = (s.neg_ref() - b) * &two_a;
    let r2 = (&s - b) * &two_a;
    Some((r1, r2, promoted))
}

/// One rational root of a polynomial with rational coefficients, by the
/// rational root theorem with bounded divisor enumeration.
fn rational_root(p: &Px) -> Option<ExactScalar> {
    let mut rats: Vec<Q> = Vec::with_capacity(p.len());
    for c in p {
        rats.push(c.as_rational()?.clone());
    }
    // clear denominators
    let mut den = BigInt::one();
    for r in &rats {
        den = lcm(&den, r.denom());
    }
    let ints: Vec<BigInt> = rats
        .iter()
        .map(|r| (r * Q::from_integer(den.clone())).to_integer())
        .collect();
    let d = px_deg(p);
    let a0 = &ints[0];
    let ad = &ints[d];
    if a0.is_zero() {
        return Some(ExactScalar::zero());
    }
    let ps = small_divisors(a0);
    let qs = small_divisors(ad);
    for pn in &ps {
        for qn in &qs {
            for sign in [1i64, -1] {
                let cand = Q::new(pn * BigInt::from(sign), qn.clone());
                let cs = ExactScalar::from_rational(cand);
                if eval(p, &cs).is_zero() {
                    return Some(cs);
                }
            }
        }
    }
    None
}

fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    use num::Integer;
    a.lcm(b)
}

/// Positive divisors; enumeration capped so pathological coefficients fail
/// gracefully (the caller reports an unresolved factor).
fn small_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut k = BigInt::one();
    let limit = BigInt::from(100_000u64);
    while &k * &k <= n && k <= limit {
        if (&n % &k).is_zero() {
            out.push(k.clone());
            out.push(&n / &k);
        }
        k += 1;
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    #[test]
    fn linear_and_repeated_roots() {
        // (t-2)^2 (t+1)
        let p = vec![s(4), s(0), s(-3), s(1)];
        let rep = find_roots(&p, None);
        assert!(rep.fully_resolved());
        assert_eq!(rep.roots, vec![(s(-1), 1), (s(2), 2)]);
    }

    #[test]
    fn gaussian_quadratic() {
        // t^2 + 1 = (t-i)(t+i)
        let p = vec![s(1), s(0), s(1)];
        let rep = find_roots(&p, None);
        assert!(rep.fully_resolved());
        let roots: Vec<_> = rep.roots.iter().map(|(r, _)| r.clone()).collect();
        assert!(roots.contains(&ExactScalar::i()));
        assert!(roots.contains(&(-ExactScalar::i())));
    }

    #[test]
    fn quadratic_promotes_extension() {
        // t^2 - 5
        let p = vec![s(-5), s(0), s(1)];
        let rep = find_roots(&p, None);
        assert!(rep.fully_resolved());
        assert_eq!(rep.roots.len(), 2);
        for (r, m) in &rep.roots {
            assert_eq!(*m, 1);
            assert_eq!(r.disc().unwrap(), &Q::from_integer(BigInt::from(5)));
        }
    }

    #[test]
    fn second_extension_is_refused() {
        // t^2 - 3 under an existing sqrt(5) context
        let p = vec![s(-3), s(0), s(1)];
        let five = Q::from_integer(BigInt::from(5));
        let rep = find_roots(&p, Some(&five));
        assert!(!rep.fully_resolved());
        assert!(rep.roots.is_empty());
    }

    #[test]
    fn cubic_with_rational_roots() {
        // (t - 1/2)(t + 3)(t - 4) = t^3 - 3/2 t^2 - 23/2 t + 6
        let p = vec![
            ExactScalar::from_int(6),
            ExactScalar::from_ratio(-23, 2),
            ExactScalar::from_ratio(-3, 2),
            ExactScalar::from_int(1),
        ];
        let rep = find_roots(&p, None);
        assert!(rep.fully_resolved());
        let mut roots: Vec<_> = rep.roots.iter().map(|(r, _)| r.clone()).collect();
        roots.sort_by(|a, b| a.cmp_key(b));
        assert_eq!(roots, vec![s(-3), ExactScalar::from_ratio(1, 2), s(4)]);
    }

    #[test]
    fn irreducible_cubic_reports_unresolved() {
        // t^3 - 2
        let p = vec![s(-2), s(0), s(0), s(1)];
        let rep = find_roots(&p, None);
        assert!(!rep.fully_resolved());
    }

    #[test]
    fn zero_root_multiplicity() {
        // t^2 (t - 1)
        let p = vec![s(0), s(0), s(-1), s(1)];
        let rep = find_roots(&p, None);
        assert_eq!(rep.roots, vec![(s(0), 2), (s(1), 1)]);
    }
}
