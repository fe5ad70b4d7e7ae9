//! Polynomial gcd over ℚ by primitive remainder sequences, recursing on
//! contents.

use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::One;

use super::{MPoly, Monomial, PolyError};

/// `gcd(p, q)`, normalized to a primitive integer polynomial with positive
/// leading coefficient; `gcd(0, 0) = 0`.
pub fn gcd(p: &MPoly, q: &MPoly) -> Result<MPoly, PolyError> {
    p.check_same_vars(q)?;
    Ok(gcd_inner(p, q))
}

fn one_like(p: &MPoly) -> MPoly {
    MPoly::constant(&p.vars(), BigRational::one()).expect("vars already valid")
}

fn gcd_inner(p: &MPoly, q: &MPoly) -> MPoly {
    if p.is_zero() {
        return q.primitive_integer();
    }
    if q.is_zero() {
        return p.primitive_integer();
    }
    let mut support = p.support_vars();
    for v in q.support_vars() {
        if !support.contains(&v) {
            support.push(v);
        }
    }
    let Some(&main) = support.iter().max() else {
        return one_like(p);
    };
    let (cp, pp) = content_and_primitive(p, main);
    let (cq, pq) = content_and_primitive(q, main);
    let c = gcd_inner(&cp, &cq);
    let (mut a, mut b) = if pp.degree_in(main) >= pq.degree_in(main) {
        (pp, pq)
    } else {
        (pq, pp)
    };
    loop {
        if b.degree_in(main) == Some(0) {
            // b is a primitive polynomial free of `main`, hence a unit.
            return c.primitive_integer();
        }
        let r = pseudo_remainder(&a, &b, main);
        if r.is_zero() {
            return c.mul(&b).expect("same vars").primitive_integer();
        }
        a = b;
        b = content_and_primitive(&r, main).1;
    }
}

/// Content with respect to `main` (a polynomial free of `main`) and the
/// primitive part.
fn content_and_primitive(p: &MPoly, main: usize) -> (MPoly, MPoly) {
    let coeffs: Vec<MPoly> = p.coefficients_in(main).into_iter().filter(|c| !c.is_zero()).collect();
    let mut content = coeffs[0].clone();
    for c in &coeffs[1..] {
        if content.is_constant() {
            break;
        }
        content = gcd_inner(&content, c);
    }
    let content = if content.is_constant() {
        one_like(p)
    } else {
        content.primitive_integer()
    };
    let prim = p.exact_div(&content).expect("content divides").primitive_integer();
    (content, prim)
}

/// `lc(b)^k · a mod b` in the variable `main`.
fn pseudo_remainder(a: &MPoly, b: &MPoly, main: usize) -> MPoly {
    let db = b.degree_in(main).expect("nonzero");
    let bc = b.coefficients_in(main);
    let lb = &bc[db as usize];
    let mut r = a.clone();
    while let Some(dr) = r.degree_in(main) {
        if r.is_zero() || dr < db {
            break;
        }
        let lr = r.coefficients_in(main).swap_remove(dr as usize);
        let mut shift = Monomial::ONE;
        shift.0[main] = dr - db;
        let lhs = r.mul(lb).expect("same vars");
        let rhs = b.mul(&lr).expect("same vars").mul_monomial(&shift, &BigRational::one());
        r = lhs.sub(&rhs).expect("same vars");
    }
    r
}
