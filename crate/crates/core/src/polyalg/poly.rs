use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::PolyError;

pub const MAX_VARS: usize = 3;

/// Exponent vector; unused trailing slots are zero.
///
/// Ordered graded-lexicographically: total degree first, then exponents
/// compared from the first variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; MAX_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_VARS]);

    pub fn var(i: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a = a.checked_sub(b)?;
        }
        Some(Monomial(e))
    }

    /// All monomials in `nvars` variables of total degree exactly `d`, in
    /// increasing order.
    pub fn of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut e = [0u32; MAX_VARS];
        fn rec(nvars: usize, i: usize, left: u32, e: &mut [u32; MAX_VARS], out: &mut Vec<Monomial>) {
            if i + 1 == nvars {
                e[i] = left;
                out.push(Monomial(*e));
                return;
            }
            for k in 0..=left {
                e[i] = k;
                rec(nvars, i + 1, left - k, e, out);
            }
            e[i] = 0;
        }
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial::ONE);
            }
            return out;
        }
        rec(nvars, 0, d, &mut e, &mut out);
        out.sort();
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over ℚ in up to three named variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, BigRational>,
}

pub(crate) fn check_vars(vars: &[&str]) -> Result<(), PolyError> {
    if vars.len() > MAX_VARS {
        return Err(PolyError::TooManyVariables(vars.len()));
    }
    for (i, v) in vars.iter().enumerate() {
        let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(PolyError::BadVariableName(v.to_string()));
        }
        if vars[..i].contains(v) {
            return Err(PolyError::DuplicateVariable(v.to_string()));
        }
    }
    Ok(())
}

impl MPoly {
    pub fn zero(vars: &[&str]) -> Result<Self, PolyError> {
        check_vars(vars)?;
        Ok(MPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        })
    }

    pub fn constant(vars: &[&str], c: BigRational) -> Result<Self, PolyError> {
        let mut p = MPoly::zero(vars)?;
        p.add_term(Monomial::ONE, c);
        Ok(p)
    }

    pub fn var(vars: &[&str], name: &str) -> Result<Self, PolyError> {
        let mut p = MPoly::zero(vars)?;
        let i = p.var_index(name)?;
        p.add_term(Monomial::var(i), BigRational::one());
        Ok(p)
    }

    /// Builds from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms(
        vars: &[&str],
        terms: impl IntoIterator<Item = (Monomial, BigRational)>,
    ) -> Result<Self, PolyError> {
        let mut p = MPoly::zero(vars)?;
        for (m, c) in terms {
            if m.0[vars.len()..].iter().any(|&e| e != 0) {
                return Err(PolyError::TooManyVariables(vars.len() + 1));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn same_vars_zero(&self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn vars(&self) -> Vec<&str> {
        self.vars.iter().map(String::as_str).collect()
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Result<usize, PolyError> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coefficient(&Monomial::ONE)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Lowest total degree of a term (the order at the origin); `None` for
    /// zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// Degree in variable `i`; `None` for zero.
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(i)).max()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Variables that occur with positive exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&i| self.terms.keys().any(|m| m.exp(i) > 0))
            .collect()
    }

    pub(crate) fn check_same_vars(&self, other: &MPoly) -> Result<(), PolyError> {
        if self.vars != other.vars {
            return Err(PolyError::VariableMismatch {
                left: self.vars.clone(),
                right: other.vars.clone(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        self.check_same_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> MPoly {
        if c.is_zero() {
            return self.same_vars_zero();
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRational) -> MPoly {
        if c.is_zero() {
            return self.same_vars_zero();
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        self.check_same_vars(other)?;
        let mut out = self.same_vars_zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut out = MPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        out.add_term(Monomial::ONE, BigRational::one());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = out.mul(&base).expect("same vars");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same vars");
            }
        }
        out
    }

    pub fn partial_derivative(&self, var: &str) -> Result<MPoly, PolyError> {
        let i = self.var_index(var)?;
        let mut out = self.same_vars_zero();
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            let mut d = *m;
            d.0[i] -= 1;
            out.add_term(d, c * BigRational::from_integer(BigInt::from(e)));
        }
        Ok(out)
    }

    /// Simultaneous substitution `var ↦ value`; values are over the same
    /// variables as `self`.
    pub fn substitute(&self, assignments: &[(&str, MPoly)]) -> Result<MPoly, PolyError> {
        let mut table: [Option<&MPoly>; MAX_VARS] = [None; MAX_VARS];
        for (name, value) in assignments {
            self.check_same_vars(value)?;
            table[self.var_index(name)?] = Some(value);
        }
        let mut out = self.same_vars_zero();
        // Powers of each substituted value, filled lazily.
        let mut powers: [Vec<MPoly>; MAX_VARS] = Default::default();
        for (m, c) in &self.terms {
            let mut kept = Monomial::ONE;
            let mut term = MPoly::constant_like(self, c.clone());
            for i in 0..self.nvars() {
                let e = m.exp(i) as usize;
                match table[i] {
                    None => kept.0[i] = e as u32,
                    Some(v) if e > 0 => {
                        while powers[i].len() <= e {
                            let next = match powers[i].last() {
                                None => MPoly::constant_like(self, BigRational::one()),
                                Some(last) => last.mul(v).expect("same vars"),
                            };
                            powers[i].push(next);
                        }
                        term = term.mul(&powers[i][e]).expect("same vars");
                    }
                    Some(_) => {}
                }
            }
            let term = term.mul_monomial(&kept, &BigRational::one());
            out = out.add(&term).expect("same vars");
        }
        Ok(out)
    }

    pub(crate) fn constant_like(like: &MPoly, c: BigRational) -> MPoly {
        let mut p = like.same_vars_zero();
        p.add_term(Monomial::ONE, c);
        p
    }

    /// Re-expresses `self` over `vars`, which must contain every variable
    /// that occurs in `self`.
    pub fn with_vars(&self, vars: &[&str]) -> Result<MPoly, PolyError> {
        check_vars(vars)?;
        let mut map = [usize::MAX; MAX_VARS];
        for (i, slot) in map.iter_mut().enumerate().take(self.nvars()) {
            match vars.iter().position(|v| *v == self.vars[i]) {
                Some(j) => *slot = j,
                None if self.degree_in(i).unwrap_or(0) == 0 => {}
                None => return Err(PolyError::UnknownVariable(self.vars[i].clone())),
            }
        }
        let mut out = MPoly::zero(vars)?;
        for (m, c) in &self.terms {
            let mut e = [0; MAX_VARS];
            for i in 0..self.nvars() {
                if m.exp(i) > 0 {
                    e[map[i]] = m.exp(i);
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Coefficients of `var^k` for `k = 0..=deg`, each over the same
    /// variables (and free of `var`).
    pub fn coefficients_in(&self, var: usize) -> Vec<MPoly> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out: Vec<MPoly> = (0..=deg).map(|_| self.same_vars_zero()).collect();
        if self.is_zero() {
            return Vec::new();
        }
        for (m, c) in &self.terms {
            let mut rest = *m;
            let k = rest.0[var] as usize;
            rest.0[var] = 0;
            out[k].add_term(rest, c.clone());
        }
        out
    }

    /// Value at the origin.
    pub fn at_origin(&self) -> BigRational {
        self.constant_term()
    }

    /// Exact quotient `self / divisor`, or an error if there is a remainder.
    pub fn exact_div(&self, divisor: &MPoly) -> Result<MPoly, PolyError> {
        self.check_same_vars(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or(PolyError::DivisionByZero)?;
        let (lm, lc) = (*lm, lc.clone());
        let mut rem = self.clone();
        let mut quot = self.same_vars_zero();
        while let Some((m, c)) = rem.leading_term() {
            let Some(qm) = m.div(&lm) else {
                return Err(PolyError::NotDivisible);
            };
            let qc = c / &lc;
            rem = rem.sub(&divisor.mul_monomial(&qm, &qc)).expect("same vars");
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Order of vanishing at 0 of a polynomial in at most one variable.
    pub fn vanishing_order(&self) -> Result<u32, PolyError> {
        if self.is_zero() {
            return Err(PolyError::InfiniteOrder);
        }
        if self.support_vars().len() > 1 {
            return Err(PolyError::NotUnivariate(self.to_string()));
        }
        Ok(self.order().expect("nonzero"))
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut e = [u32::MAX; MAX_VARS];
        if self.is_zero() {
            return Monomial::ONE;
        }
        for m in self.terms.keys() {
            for (a, b) in e.iter_mut().zip(m.0) {
                *a = (*a).min(b);
            }
        }
        Monomial(e)
    }

    /// Divides out `m`, which must divide every term.
    pub fn div_monomial(&self, m: &Monomial) -> Option<MPoly> {
        let mut out = self.same_vars_zero();
        for (k, c) in &self.terms {
            out.terms.insert(k.div(m)?, c.clone());
        }
        Some(out)
    }

    /// Multiplies through so that coefficients are coprime integers with a
    /// positive leading coefficient.
    pub fn primitive_integer(&self) -> MPoly {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            num = num.gcd(&(c * BigRational::from_integer(den.clone())).to_integer());
        }
        let mut scale = BigRational::new(den, num);
        if self.leading_term().expect("nonzero").1.is_negative() {
            scale = -scale;
        }
        self.scale(&scale)
    }
}

impl fmt::Display for MPoly {
    /// Terms in decreasing graded-lex order, e.g. `-t^2*x^2 - x^3 + y^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || *m == Monomial::ONE {
                factors.push(abs.to_string());
            }
            for i in 0..self.nvars() {
                match m.exp(i) {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    e => factors.push(alloc::format!("{}^{}", self.vars[i], e)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use alloc::vec;

    pub(crate) fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    pub(crate) fn mono(e: &[u32]) -> Monomial {
        let mut m = [0; MAX_VARS];
        m[..e.len()].copy_from_slice(e);
        Monomial(m)
    }

    /// `y² − x³ − t²x²` over `(t, x, y)`.
    pub(crate) fn example() -> MPoly {
        MPoly::from_terms(
            &["t", "x", "y"],
            vec![
                (mono(&[0, 0, 2]), r(1, 1)),
                (mono(&[0, 3, 0]), r(-1, 1)),
                (mono(&[2, 2, 0]), r(-1, 1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn derivatives_of_example() {
        let f = example();
        assert_eq!(f.partial_derivative("t").unwrap().to_string(), "-2*t*x^2");
        assert_eq!(f.partial_derivative("x").unwrap().to_string(), "-2*t^2*x - 3*x^2");
        assert_eq!(f.partial_derivative("y").unwrap().to_string(), "2*y");
        assert!(matches!(f.partial_derivative("z"), Err(PolyError::UnknownVariable(_))));
    }

    #[test]
    fn substitution_examples() {
        let f = example();
        let vars = f.vars();
        let zero = MPoly::zero(&vars).unwrap();
        assert_eq!(f.substitute(&[("t", zero.clone())]).unwrap().to_string(), "-x^3 + y^2");
        let ident: Vec<(&str, MPoly)> = vars.iter().map(|v| (*v, MPoly::var(&vars, v).unwrap())).collect();
        assert_eq!(f.substitute(&ident).unwrap(), f);
        let x_of_t = MPoly::var(&vars, "t").unwrap().pow(2).scale(&r(-2, 3));
        let ft = f.partial_derivative("t").unwrap();
        let along = ft.substitute(&[("x", x_of_t), ("y", zero)]).unwrap();
        assert_eq!(along.to_string(), "-8/9*t^5");
        assert_eq!(along.vanishing_order().unwrap(), 5);
    }

    #[test]
    fn vanishing_orders() {
        let v = ["t"];
        assert_eq!(MPoly::constant(&v, r(3, 1)).unwrap().vanishing_order().unwrap(), 0);
        let t = MPoly::var(&v, "t").unwrap();
        let one = MPoly::constant(&v, r(1, 1)).unwrap();
        assert_eq!(t.mul(&one.add(&t).unwrap()).unwrap().vanishing_order().unwrap(), 1);
        assert!(matches!(
            MPoly::zero(&v).unwrap().vanishing_order(),
            Err(PolyError::InfiniteOrder)
        ));
        assert!(matches!(example().vanishing_order(), Err(PolyError::NotUnivariate(_))));
    }

    #[test]
    fn exact_division() {
        let f = example();
        let fx = f.partial_derivative("x").unwrap();
        let x = MPoly::var(&f.vars(), "x").unwrap();
        let q = fx.exact_div(&x).unwrap();
        assert_eq!(q.to_string(), "-2*t^2 - 3*x");
        assert!(matches!(f.exact_div(&x), Err(PolyError::NotDivisible)));
    }

    #[test]
    fn with_vars_reorders_and_drops() {
        let p = example()
            .substitute(&[("t", MPoly::zero(&["t", "x", "y"]).unwrap())])
            .unwrap();
        let q = p.with_vars(&["y", "x"]).unwrap();
        assert_eq!(q.to_string(), "-x^3 + y^2");
        assert!(example().with_vars(&["x", "y"]).is_err());
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(Monomial::of_degree(2, 3).len(), 4);
        assert_eq!(Monomial::of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::of_degree(0, 0), vec![Monomial::ONE]);
    }
}
