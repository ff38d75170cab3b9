//! Sparse multivariate polynomials over the rationals.
//!
//! Monomials are exponent vectors with trailing zeros trimmed, so a polynomial
//! written in fewer variables compares equal to the same polynomial padded
//! with unused ones. `nvars` is the declared variable count and only grows
//! under arithmetic.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::format_rational;
use super::ring::Ring;
use super::unipoly::UniPoly;
use super::Rational;

type Monomial = Vec<u32>;

#[derive(Clone, Default)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

fn trim(mut m: Monomial) -> Monomial {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

fn mono_mul(a: &[u32], b: &[u32]) -> Monomial {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
        .collect()
}

fn mono_div(a: &[u32], b: &[u32]) -> Option<Monomial> {
    if b.len() > a.len() {
        return None;
    }
    let mut out = Vec::with_capacity(a.len());
    for (i, &e) in a.iter().enumerate() {
        let f = b.get(i).copied().unwrap_or(0);
        out.push(e.checked_sub(f)?);
    }
    Some(trim(out))
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    /// The coordinate function `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut m = vec![0; i + 1];
        m[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(m, Rational::one());
        p
    }

    /// Linear form `Σ cᵢ xᵢ`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut m = vec![0; i + 1];
                m[i] = 1;
                p.terms.insert(m, c.clone());
            }
        }
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, merging duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert!(
                m.len() <= nvars,
                "exponent vector longer than variable count"
            );
            p.add_term(trim(m), c);
        }
        p
    }

    /// Univariate polynomial in variable `var`.
    pub fn from_unipoly(nvars: usize, var: usize, u: &UniPoly) -> Self {
        let mut p = Self::zero(nvars);
        for (k, c) in u.coeffs().iter().enumerate() {
            let mut m = vec![0; var + 1];
            m[var] = k as u32;
            p.add_term(trim(m), c.clone());
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn with_nvars(mut self, nvars: usize) -> Self {
        assert!(nvars >= self.max_var_used().map_or(0, |v| v + 1));
        self.nvars = nvars;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_empty())
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(
                self.terms
                    .get(&Vec::new())
                    .cloned()
                    .unwrap_or_else(Rational::zero),
            )
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms as full-length exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<u32>, &Rational)> + '_ {
        let n = self.nvars;
        self.terms.iter().map(move |(m, c)| {
            let mut e = m.clone();
            e.resize(n.max(m.len()), 0);
            (e, c)
        })
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&e| e as usize).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> usize {
        self.terms
            .keys()
            .map(|m| m.get(var).copied().unwrap_or(0) as usize)
            .max()
            .unwrap_or(0)
    }

    fn max_var_used(&self) -> Option<usize> {
        self.terms
            .keys()
            .map(|m| m.len())
            .max()
            .and_then(|l| l.checked_sub(1))
    }

    /// Leading term in lexicographic order (x₀ most significant).
    fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    fn mul_term(&self, m: &[u32], c: &Rational) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (mono_mul(k, m), v * c))
                .collect(),
        }
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.get(var).copied().unwrap_or(0);
            if e == 0 {
                continue;
            }
            let mut k = m.clone();
            k[var] -= 1;
            out.add_term(trim(k), c * Rational::from_integer(e.into()));
        }
        out
    }

    pub fn gradient(&self, nvars: usize) -> Vec<MultiPoly> {
        (0..nvars).map(|i| self.derivative(i)).collect()
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    let x = point.get(i).expect("evaluation point too short");
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes `xᵢ = baseᵢ + t·dirᵢ` and returns the result in `t`.
    pub fn restrict_to_line(&self, base: &[Rational], dir: &[Rational]) -> UniPoly {
        let lines: Vec<UniPoly> = base
            .iter()
            .zip(dir)
            .map(|(b, d)| UniPoly::affine(b.clone(), d.clone()))
            .collect();
        self.eval_in(&lines)
    }

    /// Evaluates with coordinates taken from any ring.
    pub fn eval_in<R: Ring>(&self, point: &[R]) -> R {
        let mut acc = R::ring_zero();
        for (m, c) in &self.terms {
            let mut t = R::from_rational(c);
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t = t.times(&point[i]);
                }
            }
            acc = acc.plus(&t);
        }
        acc
    }

    /// Partial substitution: fixes `var = value`.
    pub fn substitute(&self, var: usize, value: &Rational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.get(var).copied().unwrap_or(0);
            let mut k = m.clone();
            if e > 0 {
                k[var] = 0;
            }
            out.add_term(trim(k), c * num_traits::pow(value.clone(), e as usize));
        }
        out
    }

    /// Exact quotient in Q[x], or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (lm, lc) = d.leading_term()?;
        let nvars = self.nvars.max(d.nvars);
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()).with_nvars(nvars));
        }
        let inv = lc.recip();
        let mut rem = self.clone();
        let mut quot = Self::zero(nvars);
        while let Some((m, c)) = rem.leading_term() {
            let qm = mono_div(m, lm)?;
            let qc = c * &inv;
            rem = &rem - &d.mul_term(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Coefficients with respect to `var`, lowest power first; each is free of `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<MultiPoly> {
        if self.is_zero() {
            return vec![self.clone()];
        }
        self.split_by(var)
    }

    fn split_by(&self, var: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(var);
        let mut out = vec![Self::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let e = m.get(var).copied().unwrap_or(0) as usize;
            let mut k = m.clone();
            if e > 0 {
                k[var] = 0;
            }
            out[e].add_term(trim(k), c.clone());
        }
        out
    }

    fn join_by(nvars: usize, var: usize, parts: &[MultiPoly]) -> Self {
        let mut out = Self::zero(nvars);
        for (e, p) in parts.iter().enumerate() {
            let mut mv = vec![0; var + 1];
            mv[var] = e as u32;
            out = &out + &p.mul_term(&trim(mv), &Rational::one());
        }
        out
    }

    /// Scales to integer coefficients with gcd 1 and a positive leading
    /// coefficient in lexicographic order.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let den = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let num_gcd = self
            .terms
            .values()
            .fold(BigInt::zero(), |acc, q| acc.gcd(q.numer()));
        let lead_neg = self.leading_coefficient().is_negative();
        let mut f = Rational::new(den, num_gcd);
        if lead_neg {
            f = -f;
        }
        self.scale(&f)
    }

    /// Greatest common divisor in Q[x], normalised as in [`Self::normalized`].
    ///
    /// Recursive: content and primitive part with respect to the highest
    /// variable present, primitive remainder sequence on the primitive parts.
    pub fn gcd(&self, other: &Self) -> Self {
        let nvars = self.nvars.max(other.nvars);
        gcd_rec(self, other).normalized().with_nvars(nvars)
    }

    /// Gcd of many polynomials; zeros are ignored.
    pub fn gcd_all<'a>(items: impl IntoIterator<Item = &'a MultiPoly>) -> MultiPoly {
        let mut g: Option<MultiPoly> = None;
        for p in items {
            if p.is_zero() {
                continue;
            }
            g = Some(match g {
                None => p.normalized(),
                Some(acc) => {
                    if acc.is_constant() {
                        return acc;
                    }
                    acc.gcd(p)
                }
            });
        }
        g.unwrap_or_else(|| MultiPoly::zero(0))
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            for (i, &e) in m.iter().enumerate() {
                let name = names
                    .get(i)
                    .cloned()
                    .unwrap_or_else(|| format!("x{}", i + 1));
                match e {
                    0 => {}
                    1 => factors.push(name),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() || !mag.is_one() {
                factors.insert(0, format_rational(&mag));
            }
            s.push_str(&factors.join("*"));
        }
        s
    }
}

fn gcd_rec(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let var = match (a.max_var_used(), b.max_var_used()) {
        (None, None) => return MultiPoly::one(0),
        (x, y) => x.max(y).expect("some variable"),
    };
    let ca = a.split_by(var);
    let cb = b.split_by(var);
    if ca.len() == 1 || cb.len() == 1 {
        // one side is free of `var`: gcd divides every coefficient of the other
        let mut g = if ca.len() == 1 { a.clone() } else { b.clone() };
        let others = if ca.len() == 1 { &cb } else { &ca };
        for c in others {
            g = gcd_rec(&g, c);
            if g.is_constant() {
                return MultiPoly::one(0);
            }
        }
        return g;
    }
    let (cont_a, pa) = primitive(&ca);
    let (cont_b, pb) = primitive(&cb);
    let cont = gcd_rec(&cont_a, &cont_b);
    let (mut r0, mut r1) = if pa.len() >= pb.len() {
        (pa, pb)
    } else {
        (pb, pa)
    };
    loop {
        let r = pseudo_rem(&r0, &r1);
        if r.iter().all(MultiPoly::is_zero) {
            break;
        }
        if r.len() == 1 {
            // nonzero constant in `var`: primitive parts are coprime
            r1 = vec![MultiPoly::one(0)];
            break;
        }
        let (_, pr) = primitive(&r);
        r0 = r1;
        r1 = pr;
    }
    let (_, g) = primitive(&r1);
    &MultiPoly::join_by(0, var, &g) * &cont
}

/// `(content, primitive part)` of a polynomial given by its coefficients.
fn primitive(coeffs: &[MultiPoly]) -> (MultiPoly, Vec<MultiPoly>) {
    let mut cont = MultiPoly::zero(0);
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        cont = gcd_rec(&cont, c);
        if cont.is_constant() {
            break;
        }
    }
    let cont = if cont.is_constant() {
        MultiPoly::one(0)
    } else {
        cont.normalized()
    };
    let pp = coeffs
        .iter()
        .map(|c| c.div_exact(&cont).expect("content divides coefficients"))
        .collect();
    (cont, pp)
}

fn trim_coeffs(mut v: Vec<MultiPoly>) -> Vec<MultiPoly> {
    while v.len() > 1 && v.last().is_some_and(MultiPoly::is_zero) {
        v.pop();
    }
    v
}

/// Pseudo-remainder of coefficient vectors in R[var].
fn pseudo_rem(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = trim_coeffs(a.to_vec());
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let top = r.len() - 1;
        let c = r[top].clone();
        let shift = top - db;
        for v in r.iter_mut() {
            *v = &*v * lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] = &r[shift + j] - &(&c * bc);
        }
        r.pop();
        r = trim_coeffs(r);
        if r.is_empty() {
            r.push(MultiPoly::zero(0));
        }
    }
    r
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.nvars, self.to_string_with(&[]))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&[]))
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        out.nvars = self.nvars.max(rhs.nvars);
        for (m, c) in &small.terms {
            match out.terms.get_mut(m) {
                Some(v) => {
                    *v += c;
                    if v.is_zero() {
                        out.terms.remove(m);
                    }
                }
                None => {
                    out.terms.insert(m.clone(), c.clone());
                }
            }
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars.max(rhs.nvars));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = mono_mul(ma, mb);
                let c = ca * cb;
                match out.terms.get_mut(&m) {
                    Some(v) => {
                        *v += c;
                        if v.is_zero() {
                            out.terms.remove(&m);
                        }
                    }
                    None => {
                        out.terms.insert(m, c);
                    }
                }
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Ring for MultiPoly {
    fn ring_zero() -> Self {
        MultiPoly::zero(0)
    }
    fn from_rational(c: &Rational) -> Self {
        MultiPoly::constant(0, c.clone())
    }
    fn ring_one() -> Self {
        MultiPoly::one(0)
    }
    fn ring_is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        MultiPoly::div_exact(self, other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::rat;
    use proptest::prelude::*;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(4, i)
    }

    fn c(v: i64) -> MultiPoly {
        MultiPoly::constant(4, rat(v))
    }

    #[test]
    fn arithmetic_and_equality() {
        let p = &(&x(0) + &x(1)) * &(&x(0) - &x(1));
        let q = &(&x(0) * &x(0)) - &(&x(1) * &x(1));
        assert_eq!(p, q);
        assert!((&p - &q).is_zero());
        assert_eq!(p.total_degree(), 2);
        assert_eq!(p.eval(&[rat(3), rat(2), rat(0), rat(0)]), rat(5));
    }

    #[test]
    fn derivative_and_line() {
        // x0^2 x2 − 3 x1
        let p = &(&(&x(0) * &x(0)) * &x(2)) - &(&c(3) * &x(1));
        assert_eq!(p.derivative(0), &(&c(2) * &x(0)) * &x(2));
        assert_eq!(p.derivative(1), c(-3));
        assert!(p.derivative(3).is_zero());
        // along (1,1,1,0) + t(0,0,1,0): 1·(1+t) − 3 = t − 2
        let u = p.restrict_to_line(
            &[rat(1), rat(1), rat(1), rat(0)],
            &[rat(0), rat(0), rat(1), rat(0)],
        );
        assert_eq!(u, UniPoly::from_i64(&[-2, 1]));
    }

    #[test]
    fn exact_division() {
        let a = &(&x(0) + &x(1)) * &(&x(2) - &c(1));
        assert_eq!(a.div_exact(&(&x(2) - &c(1))).unwrap(), &x(0) + &x(1));
        assert!(a.div_exact(&(&x(2) + &c(1))).is_none());
        assert!(a.div_exact(&MultiPoly::zero(4)).is_none());
    }

    #[test]
    fn gcd_examples() {
        // Pfaffians x3, −x2, x1 of so(3) are coprime
        let g = MultiPoly::gcd_all([&x(2), &(-&x(1)), &x(0)]);
        assert_eq!(g, c(1));
        // heisenberg Pfaffians x3, 0, 0
        let g = MultiPoly::gcd_all([&x(2), &MultiPoly::zero(4), &MultiPoly::zero(4)]);
        assert_eq!(g, x(2));
        let f = &(&x(0) - &x(1)) * &(&x(2) + &c(2));
        let h = &(&x(0) - &x(1)) * &(&x(3) * &x(0));
        assert_eq!(f.gcd(&h), &x(0) - &x(1));
        let sq = &(&x(0) + &x(3)) * &(&x(0) + &x(3));
        assert_eq!(sq.gcd(&(&sq * &x(1))), sq);
        assert_eq!((&c(-2) * &x(1)).normalized(), x(1));
    }

    fn small_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec((prop::collection::vec(0u32..3, 3), -3i64..=3), 1..4)
            .prop_map(|ts| MultiPoly::from_terms(3, ts.into_iter().map(|(m, c)| (m, rat(c)))))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn gcd_contains_common_factor(f in small_poly(), a in small_poly(), b in small_poly()) {
            prop_assume!(!f.is_zero() && !a.is_zero() && !b.is_zero());
            let pa = &f * &a;
            let pb = &f * &b;
            let g = pa.gcd(&pb);
            prop_assert!(pa.div_exact(&g).is_some());
            prop_assert!(pb.div_exact(&g).is_some());
            prop_assert!(g.div_exact(&f.normalized()).is_some());
        }
    }
}
