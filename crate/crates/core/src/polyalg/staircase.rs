//! Local multiplicities by linear algebra on truncated ideals.
//!
//! For an ideal `I` and `k ≥ 1`, `d_k = dim K[x]/(I + m^k)` is the number of
//! monomials of degree `< k` minus the rank of `{m·g mod m^k}`. The sequence
//! is nondecreasing, and `d_k = d_{k+1}` gives `m^k ⊆ I + m^{k+1}`, hence
//! `m^k ⊆ I·O` by Nakayama, so `d_k` is then the local length at the origin.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::Zero;

use super::{gcd, MPoly, Monomial, PolyError};

pub const DEFAULT_TRUNCATION: usize = 16;
/// Truncations tried by [`local_quotient_dim_auto`].
pub const TRUNCATION_SCHEDULE: [usize; 3] = [16, 32, 64];
/// Largest number of monomials below the truncation degree we are willing
/// to eliminate over.
pub const MONOMIAL_BUDGET: usize = 12_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalDim {
    pub dim: usize,
    /// Smallest `k` with `d_k = d_{k+1}` (0 when the origin is not a zero).
    pub stabilized_at: usize,
    /// `d_1, d_2, …` up to the stabilizing step.
    pub dims: Vec<usize>,
}

/// `dim O/(gens)` at the origin, trying truncation degrees up to `max_degree`.
///
/// The ambient ring is the polynomials' full variable list, so unused
/// variables make the quotient infinite. In two variables a common factor
/// through the origin is reported as [`PolyError::NonIsolated`] before any
/// elimination.
pub fn local_quotient_dim(gens: &[MPoly], max_degree: usize) -> Result<LocalDim, PolyError> {
    let Some(first) = gens.first() else {
        return Err(PolyError::NoGenerators);
    };
    let vars = first.vars();
    for g in gens {
        if g.vars() != vars {
            return Err(PolyError::VariableMismatch {
                left: vars.iter().map(|s| (*s).into()).collect(),
                right: g.vars().iter().map(|s| (*s).into()).collect(),
            });
        }
    }
    if gens.iter().any(|g| !g.at_origin().is_zero()) {
        return Ok(LocalDim {
            dim: 0,
            stabilized_at: 0,
            dims: Vec::new(),
        });
    }
    let nvars = vars.len();
    if nvars == 2 && gens.len() == 2 {
        let common = gcd(&gens[0], &gens[1])?;
        if !common.is_constant() && common.at_origin().is_zero() {
            return Err(PolyError::NonIsolated { common_factor: common });
        }
    }
    let nonzero: Vec<&MPoly> = gens.iter().filter(|g| !g.is_zero()).collect();
    let mut dims = Vec::new();
    for k in 1..=max_degree + 1 {
        if monomials_below(nvars, k) > MONOMIAL_BUDGET {
            return Err(PolyError::NotStabilized {
                truncation: k - 1,
                dims,
            });
        }
        let d = truncated_colength(&nonzero, nvars, k);
        if let Some(&last) = dims.last() {
            if last == d {
                dims.push(d);
                return Ok(LocalDim {
                    dim: d,
                    stabilized_at: k - 1,
                    dims,
                });
            }
        }
        dims.push(d);
    }
    Err(PolyError::NotStabilized {
        truncation: max_degree,
        dims,
    })
}

/// [`local_quotient_dim`] with the truncation schedule 16, 32, 64.
pub fn local_quotient_dim_auto(gens: &[MPoly]) -> Result<LocalDim, PolyError> {
    let mut last = None;
    for d in TRUNCATION_SCHEDULE {
        match local_quotient_dim(gens, d) {
            Err(e @ PolyError::NotStabilized { .. }) => last = Some(e),
            other => return other,
        }
    }
    Err(last.expect("schedule is nonempty"))
}

fn monomials_below(nvars: usize, k: usize) -> usize {
    // C(k − 1 + nvars, nvars)
    let mut num: u128 = 1;
    for i in 0..nvars {
        num = num * (k - 1 + nvars - i) as u128 / (i + 1) as u128;
    }
    num as usize
}

fn truncated_colength(gens: &[&MPoly], nvars: usize, k: usize) -> usize {
    let mut columns: BTreeMap<Monomial, usize> = BTreeMap::new();
    for d in 0..k as u32 {
        for m in Monomial::of_degree(nvars, d) {
            let idx = columns.len();
            columns.insert(m, idx);
        }
    }
    let mut echelon = Echelon::default();
    for g in gens {
        let ord = g.order().expect("nonzero") as usize;
        if ord >= k {
            continue;
        }
        for d in 0..(k - ord) as u32 {
            for m in Monomial::of_degree(nvars, d) {
                let mut row: Vec<(usize, BigRational)> = g
                    .terms()
                    .filter_map(|(t, c)| {
                        let prod = t.mul(&m);
                        columns.get(&prod).map(|&i| (i, c.clone()))
                    })
                    .collect();
                row.sort_by_key(|(i, _)| *i);
                echelon.insert(row);
            }
        }
    }
    columns.len() - echelon.rank()
}

/// Sparse row echelon form with rows normalized to leading coefficient 1.
#[derive(Default)]
struct Echelon {
    pivots: BTreeMap<usize, Vec<(usize, BigRational)>>,
}

impl Echelon {
    fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn insert(&mut self, mut row: Vec<(usize, BigRational)>) {
        while let Some((lead, coeff)) = row.first().cloned() {
            match self.pivots.get(&lead) {
                Some(p) => row = axpy(&row, &-coeff, p),
                None => {
                    let inv = BigRational::from_integer(1.into()) / coeff;
                    let normalized = row.into_iter().map(|(i, c)| (i, c * &inv)).collect();
                    self.pivots.insert(lead, normalized);
                    return;
                }
            }
        }
    }
}

/// `x + a·y` for sorted sparse rows.
fn axpy(x: &[(usize, BigRational)], a: &BigRational, y: &[(usize, BigRational)]) -> Vec<(usize, BigRational)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i].clone());
            i += 1;
        } else if take_y {
            out.push((y[j].0, a * &y[j].1));
            j += 1;
        } else {
            let v = &x[i].1 + a * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::poly::tests::r;

    fn v(vars: &[&str], name: &str) -> MPoly {
        MPoly::var(vars, name).unwrap()
    }

    #[test]
    fn monomial_staircases() {
        let xy = ["x", "y"];
        let d = local_quotient_dim(&[v(&xy, "x").pow(2), v(&xy, "y").pow(3)], 16).unwrap();
        assert_eq!(d.dim, 6);
        assert_eq!(local_quotient_dim(&[v(&xy, "x"), v(&xy, "y")], 16).unwrap().dim, 1);
    }

    #[test]
    fn cusp_jacobian() {
        let xy = ["x", "y"];
        let g = v(&xy, "x").pow(2).scale(&r(-3, 1));
        let h = v(&xy, "y").scale(&r(2, 1));
        assert_eq!(local_quotient_dim(&[g, h], 16).unwrap().dim, 2);
    }

    #[test]
    fn unit_and_non_isolated() {
        let xy = ["x", "y"];
        let one = MPoly::constant(&xy, r(1, 1)).unwrap();
        let x = v(&xy, "x");
        let y1 = v(&xy, "y").add(&one).unwrap();
        assert_eq!(local_quotient_dim(&[x.clone(), y1], 16).unwrap().dim, 0);
        let xy_ = x.mul(&v(&xy, "y")).unwrap();
        assert!(matches!(
            local_quotient_dim(&[x.clone(), xy_], 16),
            Err(PolyError::NonIsolated { .. })
        ));
    }

    #[test]
    fn three_variable_polar_intersection() {
        // (3x + 2t², y, −2t·x²) has length 5 at the origin.
        let txy = ["t", "x", "y"];
        let t = v(&txy, "t");
        let x = v(&txy, "x");
        let h1 = x.scale(&r(3, 1)).add(&t.pow(2).scale(&r(2, 1))).unwrap();
        let ft = t.mul(&x.pow(2)).unwrap().scale(&r(-2, 1));
        let d = local_quotient_dim(&[h1, v(&txy, "y"), ft], 16).unwrap();
        assert_eq!(d.dim, 5);
    }

    #[test]
    fn missing_variable_does_not_stabilize() {
        let txy = ["t", "x", "y"];
        let e = local_quotient_dim(&[v(&txy, "x"), v(&txy, "y")], 8);
        assert!(matches!(e, Err(PolyError::NotStabilized { truncation: 8, .. })));
    }
}
