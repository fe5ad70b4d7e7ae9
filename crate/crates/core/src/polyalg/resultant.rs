use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::{MPoly, PolyError};

/// Sylvester resultant of `p` and `q` with respect to `var`.
///
/// Rows hold coefficients from the highest power of `var` down, `deg q`
/// rows of `p` followed by `deg p` rows of `q`. If exactly one input is free
/// of `var`, say `p` with `deg q = n`, the result is `pⁿ`.
pub fn resultant(p: &MPoly, q: &MPoly, var: &str) -> Result<MPoly, PolyError> {
    let v = p.var_index(var)?;
    p.check_same_vars(q)?;
    let dp = p.degree_in(v).unwrap_or(0);
    let dq = q.degree_in(v).unwrap_or(0);
    match (dp, dq) {
        (0, 0) => return Err(PolyError::BothFree(var.into())),
        (0, n) => return Ok(p.pow(n)),
        (m, 0) => return Ok(q.pow(m)),
        _ => {}
    }
    let (m, n) = (dp as usize, dq as usize);
    let size = m + n;
    let zero = MPoly::zero(&p.vars())?;
    let pc = p.coefficients_in(v);
    let qc = q.coefficients_in(v);
    let mut rows: Vec<Vec<MPoly>> = Vec::with_capacity(size);
    for shift in 0..n {
        rows.push(
            (0..size)
                .map(|j| {
                    // Column j holds var^(size − 1 − j); row `shift` starts at p's top.
                    match j.checked_sub(shift) {
                        Some(k) if k <= m => pc[m - k].clone(),
                        _ => zero.clone(),
                    }
                })
                .collect(),
        );
    }
    for shift in 0..m {
        rows.push(
            (0..size)
                .map(|j| match j.checked_sub(shift) {
                    Some(k) if k <= n => qc[n - k].clone(),
                    _ => zero.clone(),
                })
                .collect(),
        );
    }
    bareiss_determinant(rows)
}

/// Fraction-free determinant; every division is exact.
pub fn bareiss_determinant(mut a: Vec<Vec<MPoly>>) -> Result<MPoly, PolyError> {
    let n = a.len();
    let Some(first) = a.first().and_then(|r| r.first()) else {
        return Err(PolyError::EmptyDeterminant);
    };
    let zero = first.scale(&BigRational::zero());
    let mut prev = MPoly::constant_like(first, BigRational::one());
    let mut negate = false;
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(zero);
            };
            a.swap(k, swap);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k])?.sub(&a[i][k].mul(&a[k][j])?)?;
                a[i][j] = num.exact_div(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { det.neg() } else { det })
}

/// Local intersection multiplicity at the origin of two plane curves, from
/// the order at 0 of a resultant after a random shear.
///
/// The shear `x ↦ x + c·y` makes the `y`-leading coefficients constant, so
/// `ord_x Res_y` counts the intersections on the line through the origin
/// with slope `1/c`. Other intersections on that line only add, so the
/// answer is the minimum over shears once it has been seen twice.
pub fn intersection_by_resultant<R: Rng + ?Sized>(
    g: &MPoly,
    h: &MPoly,
    x: &str,
    y: &str,
    rng: &mut R,
) -> Result<u32, PolyError> {
    const MAX_SHEARS: usize = 8;
    if !g.at_origin().is_zero() || !h.at_origin().is_zero() {
        return Ok(0);
    }
    let vars = g.vars();
    let xv = MPoly::var(&vars, x)?;
    let yv = MPoly::var(&vars, y)?;
    let yi = g.var_index(y)?;
    let mut seen: Vec<u32> = Vec::new();
    for _ in 0..MAX_SHEARS * 4 {
        let c = BigRational::new(
            BigInt::from(rng.random_range(1..=97i64)),
            BigInt::from(rng.random_range(1..=7i64)),
        );
        let shear = xv.add(&yv.scale(&c))?;
        let gs = g.substitute(&[(x, shear.clone())])?;
        let hs = h.substitute(&[(x, shear)])?;
        // y-regularity: y-degree equals total degree.
        if gs.degree_in(yi) != gs.total_degree() || hs.degree_in(yi) != hs.total_degree() {
            continue;
        }
        let res = resultant(&gs, &hs, y)?;
        if res.is_zero() {
            return Err(PolyError::CommonComponent);
        }
        let order = res.vanishing_order()?;
        seen.push(order);
        let min = *seen.iter().min().expect("nonempty");
        if seen.iter().filter(|&&o| o == min).count() >= 2 {
            return Ok(min);
        }
        if seen.len() >= MAX_SHEARS {
            break;
        }
    }
    Err(PolyError::GenericityFailure(
        "no two shears agreed on the resultant order",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::poly::tests::r;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn xy() -> [&'static str; 2] {
        ["x", "y"]
    }

    fn v(name: &str) -> MPoly {
        MPoly::var(&xy(), name).unwrap()
    }

    fn c(n: i64) -> MPoly {
        MPoly::constant(&xy(), r(n, 1)).unwrap()
    }

    #[test]
    fn resultant_examples() {
        let p = v("y").pow(2).sub(&v("x")).unwrap();
        assert_eq!(resultant(&p, &v("y"), "y").unwrap(), v("x").neg());
        // Res_y(y − a, y − b) with a = x, b = 2: ±(x − 2).
        let a = v("y").sub(&v("x")).unwrap();
        let b = v("y").sub(&c(2)).unwrap();
        let res = resultant(&a, &b, "y").unwrap();
        let diff = v("x").sub(&c(2)).unwrap();
        assert!(res == diff || res == diff.neg());
        assert!(resultant(&p, &p, "y").unwrap().is_zero());
        assert!(matches!(resultant(&c(2), &v("x"), "y"), Err(PolyError::BothFree(_))));
        assert_eq!(resultant(&c(2), &p, "y").unwrap(), c(4));
    }

    #[test]
    fn sheared_resultant_counts_local_intersection() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        // Jacobian of y² − x³: (−3x², 2y).
        let g = v("x").pow(2).scale(&r(-3, 1));
        let h = v("y").scale(&r(2, 1));
        assert_eq!(intersection_by_resultant(&g, &h, "x", "y", &mut rng).unwrap(), 2);
        // x² + y² is tangent to y = 0; y = 1 misses the origin.
        let circle = v("x").pow(2).add(&v("y").pow(2)).unwrap();
        assert_eq!(
            intersection_by_resultant(&circle, &v("y"), "x", "y", &mut rng).unwrap(),
            2
        );
        let unit = v("y").sub(&c(1)).unwrap();
        assert_eq!(
            intersection_by_resultant(&circle, &unit, "x", "y", &mut rng).unwrap(),
            0
        );
        assert!(matches!(
            intersection_by_resultant(&v("x"), &v("x").mul(&v("y")).unwrap(), "x", "y", &mut rng),
            Err(PolyError::CommonComponent)
        ));
    }
}
