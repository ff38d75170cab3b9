//! Dense univariate polynomials over the rationals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, to_primitive_integers};
use super::ring::Ring;
use super::Rational;
use crate::error::{Error, Result};

/// Polynomial with rational coefficients, lowest degree first.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector and `degree() == len - 1` otherwise.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `λ`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `λ - root`.
    pub fn linear(root: &Rational) -> Self {
        Self::new(vec![-root.clone(), Rational::one()])
    }

    /// `a + bλ`.
    pub fn affine(a: Rational, b: Rational) -> Self {
        Self::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `self(λ) ↦ self(-λ)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Unique polynomial of degree `< xs.len()` through the points (Newton form).
    /// The abscissae must be distinct.
    pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> Self {
        assert_eq!(xs.len(), ys.len());
        let n = xs.len();
        let mut dd = ys.to_vec();
        for k in 1..n {
            for i in (k..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - k]);
            }
        }
        let mut out = Self::zero();
        for k in (0..n).rev() {
            out = &(&out * &Self::linear(&xs[k])) + &Self::constant(dd[k].clone());
        }
        out
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let inv = d.leading().recip();
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    ///
    /// Runs a subresultant remainder sequence on the primitive integer
    /// associates of the inputs.
    pub fn gcd(&self, other: &Self) -> Self {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Self::zero(),
            (true, false) => return other.monic(),
            (false, true) => return self.monic(),
            _ => {}
        }
        let a = to_primitive_integers(&self.coeffs);
        let b = to_primitive_integers(&other.coeffs);
        let g = if a.len() >= b.len() {
            subresultant_gcd(a, b)
        } else {
            subresultant_gcd(b, a)
        };
        Self::new(g.into_iter().map(Rational::from_integer).collect()).monic()
    }

    /// Returns `(g, s, t)` with `g = s·self + t·other` and `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.leading().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Inverse of `self` modulo `m`; `None` when they are not coprime.
    pub fn inverse_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = self.rem(m).ext_gcd(m);
        if g.is_zero() || g.deg() > 0 {
            return None;
        }
        Some(s.rem(m))
    }

    /// Multiplicity of `factor` in `self` (`self` nonzero, `factor` non-constant).
    pub fn multiplicity_of(&self, factor: &Self) -> usize {
        debug_assert!(!self.is_zero() && !factor.is_constant());
        let mut rest = self.clone();
        let mut m = 0;
        loop {
            let (q, r) = rest.div_rem(factor);
            if !r.is_zero() {
                return m;
            }
            rest = q;
            m += 1;
        }
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_constant()
    }

    /// Monic squarefree part.
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Yun's algorithm: `monic(self) = Π partᵢ^mᵢ` with pairwise coprime,
    /// squarefree, monic, non-constant parts, sorted by multiplicity.
    pub fn squarefree_decompose(&self) -> Result<Vec<(UniPoly, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let f = self.monic();
        let mut out = Vec::new();
        if f.is_constant() {
            return Ok(out);
        }
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while !b.is_constant() {
            let a = b.gcd(&d);
            if !a.is_constant() {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = &c - &b.derivative();
            i += 1;
        }
        Ok(out)
    }

    /// Distinct rational roots, ascending.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.is_constant() {
            return Vec::new();
        }
        let f = self.squarefree_part();
        let ints = to_primitive_integers(&f.coeffs);
        let lead = Rational::from_integer(ints.last().expect("nonzero").abs());
        let f = UniPoly::new(ints.into_iter().map(Rational::from_integer).collect());
        let chain = sturm_chain(&f);
        let bound = cauchy_bound(&f);
        let mut stack = vec![(-bound.clone(), bound)];
        let mut roots = Vec::new();
        while let Some((lo, hi)) = stack.pop() {
            let count = sign_variations(&chain, &lo) - sign_variations(&chain, &hi);
            if count == 0 {
                continue;
            }
            if count > 1 {
                let mid = (&lo + &hi) / Rational::from_integer(2.into());
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
                continue;
            }
            // A single root in (lo, hi]; if rational it is c/lead for an integer c.
            let (mut lo, mut hi) = (lo, hi);
            while (&hi - &lo) * &lead >= Rational::one() {
                let mid = (&lo + &hi) / Rational::from_integer(2.into());
                if sign_variations(&chain, &lo) - sign_variations(&chain, &mid) == 1 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            let c = (&hi * &lead).floor();
            if c > &lo * &lead {
                let cand = c / &lead;
                if f.eval(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
        roots.sort();
        roots
    }

    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 || !mag.is_one() {
                s.push_str(&format_rational(&mag));
                if i > 0 && !mag.is_integer() {
                    s.push('·');
                }
            }
            s.push_str(&mono);
        }
        s
    }
}

fn prem_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    // lc(b)^(deg a - deg b + 1) * a mod b, in Z[λ]
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut r = a.to_vec();
    let mut steps = a.len() - b.len() + 1;
    while r.len() > db && !r.is_empty() {
        let top = r.len() - 1;
        let c = r[top].clone();
        let shift = top - db;
        for v in r.iter_mut() {
            *v *= &lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &c * bc;
        }
        r.pop();
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
        steps -= 1;
    }
    if steps > 0 {
        let f = num_traits::pow(lb, steps);
        for v in r.iter_mut() {
            *v *= &f;
        }
    }
    r
}

fn int_content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn int_primitive(a: Vec<BigInt>) -> Vec<BigInt> {
    let c = int_content(&a);
    if c.is_one() || c.is_zero() {
        a
    } else {
        a.into_iter().map(|v| v / &c).collect()
    }
}

/// Subresultant PRS over Z; `a` has degree at least that of `b`, both nonzero.
fn subresultant_gcd(a: Vec<BigInt>, b: Vec<BigInt>) -> Vec<BigInt> {
    let mut a = int_primitive(a);
    let mut b = int_primitive(b);
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = a.len() - b.len();
        let r = prem_int(&a, &b);
        if r.is_empty() {
            return int_primitive(b);
        }
        if r.len() == 1 {
            return vec![BigInt::one()];
        }
        let denom = &g * num_traits::pow(h.clone(), delta);
        a = b;
        b = r.into_iter().map(|c| c / &denom).collect();
        g = a.last().expect("nonzero").clone();
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g.clone(), delta) / num_traits::pow(h, delta - 1)
        };
    }
}

fn sturm_chain(f: &UniPoly) -> Vec<UniPoly> {
    let mut chain = vec![f.clone(), f.derivative()];
    loop {
        let n = chain.len();
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            return chain;
        }
        chain.push(-r);
    }
}

fn sign_variations(chain: &[UniPoly], x: &Rational) -> usize {
    let mut last = 0i8;
    let mut v = 0;
    for p in chain {
        let s = p.eval(x);
        let sg = if s.is_positive() {
            1
        } else if s.is_negative() {
            -1
        } else {
            0
        };
        if sg != 0 {
            if last != 0 && sg != last {
                v += 1;
            }
            last = sg;
        }
    }
    v
}

fn cauchy_bound(f: &UniPoly) -> Rational {
    let lc = f.leading().abs();
    let m = f.coeffs[..f.coeffs.len() - 1]
        .iter()
        .map(|c| c.abs() / &lc)
        .max()
        .unwrap_or_else(Rational::zero);
    m + Rational::one()
}

impl Ord for UniPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for UniPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({})", self.to_string_in("λ"))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("λ"))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

impl Ring for UniPoly {
    fn ring_zero() -> Self {
        UniPoly::zero()
    }
    fn from_rational(c: &Rational) -> Self {
        UniPoly::constant(c.clone())
    }
    fn ring_one() -> Self {
        UniPoly::one()
    }
    fn ring_is_zero(&self) -> bool {
        self.coeffs.is_empty()
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
        if other.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(other);
        r.is_zero().then_some(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{rat, ratio};
    use proptest::prelude::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_i64(c)
    }

    fn from_roots(roots: &[Rational]) -> UniPoly {
        roots
            .iter()
            .fold(UniPoly::one(), |acc, r| &acc * &UniPoly::linear(r))
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let f = UniPoly::from_i64(&[5, -1, 0, 2]);
        let xs: Vec<Rational> = (0..4).map(|v| Rational::from_integer(v.into())).collect();
        let ys: Vec<Rational> = xs.iter().map(|x| f.eval(x)).collect();
        assert_eq!(UniPoly::interpolate(&xs, &ys), f);
        assert!(UniPoly::interpolate(&xs, &vec![Rational::zero(); 4]).is_zero());
    }

    #[test]
    fn gcd_examples() {
        // (λ²−1, λ−1) → λ−1
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])), p(&[-1, 1]));
        // gcd with zero is the monic normalisation
        assert_eq!(
            p(&[2, 4]).gcd(&UniPoly::zero()),
            UniPoly::new(vec![ratio(1, 2), rat(1)])
        );
        assert!(UniPoly::zero().gcd(&UniPoly::zero()).is_zero());
        // (λ³−λ, λ²−2λ+1): λ(λ−1)(λ+1) and (λ−1)² share λ−1
        assert_eq!(p(&[0, -1, 0, 1]).gcd(&p(&[1, -2, 1])), p(&[-1, 1]));
        // coprime
        assert_eq!(p(&[1, 0, 1]).gcd(&p(&[-2, 1])), UniPoly::one());
    }

    #[test]
    fn squarefree_examples() {
        // (λ−2)²(λ+1)
        let f = &p(&[-2, 1]).pow(2) * &p(&[1, 1]);
        let parts = f.squarefree_decompose().unwrap();
        assert_eq!(parts, vec![(p(&[1, 1]), 1), (p(&[-2, 1]), 2)]);
        assert_eq!(
            p(&[1, 0, 1]).squarefree_decompose().unwrap(),
            vec![(p(&[1, 0, 1]), 1)]
        );
        assert!(UniPoly::zero().squarefree_decompose().is_err());
        assert!(UniPoly::constant(rat(3))
            .squarefree_decompose()
            .unwrap()
            .is_empty());
    }

    #[test]
    fn rational_roots_found() {
        let f = &from_roots(&[ratio(-3, 2), rat(0), rat(5), rat(5)]) * &p(&[2, 0, 1]);
        assert_eq!(f.rational_roots(), vec![ratio(-3, 2), rat(0), rat(5)]);
        assert!(p(&[-2, 0, 1]).rational_roots().is_empty());
        assert_eq!(p(&[-1, 3]).rational_roots(), vec![ratio(1, 3)]);
        let close = from_roots(&[ratio(1, 7), ratio(1, 6), ratio(-22, 7)]);
        assert_eq!(
            close.rational_roots(),
            vec![ratio(-22, 7), ratio(1, 7), ratio(1, 6)]
        );
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = p(&[1, 2, 3, 1]);
        let b = p(&[-1, 0, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
        let inv = p(&[0, 1]).inverse_mod(&p(&[1, 0, 1])).unwrap();
        assert_eq!((&inv * &p(&[0, 1])).rem(&p(&[1, 0, 1])), UniPoly::one());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[3, -1, 1]).to_string(), "λ^2 - λ + 3");
        assert_eq!(
            UniPoly::new(vec![ratio(-1, 2), rat(-2)]).to_string_in("t"),
            "-2t - 1/2"
        );
    }

    fn small_roots() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-6i64..=6, 0..5)
    }

    proptest! {
        #[test]
        fn gcd_divides_and_is_greatest(common in small_roots(), ra in small_roots(), rb in small_roots()) {
            let to = |v: &[i64]| from_roots(&v.iter().map(|&r| rat(r)).collect::<Vec<_>>());
            let c = to(&common);
            let a = &c * &to(&ra);
            let b = &c * &to(&rb);
            let g = a.gcd(&b);
            prop_assert!(g.divides(&a));
            prop_assert!(g.divides(&b));
            prop_assert!(c.divides(&g));
            prop_assert!(g.is_monic());
        }

        #[test]
        fn squarefree_reassembles(roots in prop::collection::vec((-5i64..=5, 1usize..=3), 1..4)) {
            let f = roots.iter().fold(UniPoly::from_i64(&[3]), |acc, &(r, m)| &acc * &UniPoly::linear(&rat(r)).pow(m));
            let parts = f.squarefree_decompose().unwrap();
            let prod = parts.iter().fold(UniPoly::one(), |acc, (q, m)| &acc * &q.pow(*m));
            prop_assert_eq!(prod, f.monic());
            for (i, (a, _)) in parts.iter().enumerate() {
                prop_assert!(a.is_squarefree());
                for (b, _) in &parts[i + 1..] {
                    prop_assert!(a.gcd(b).is_constant());
                }
            }
        }

        #[test]
        fn distinct_linear_products_are_squarefree(roots in prop::collection::btree_set(-9i64..=9, 1..6)) {
            let f = roots.iter().fold(UniPoly::one(), |acc, &r| &acc * &UniPoly::linear(&rat(r)));
            let parts = f.squarefree_decompose().unwrap();
            prop_assert_eq!(parts.len(), 1);
            prop_assert_eq!(parts[0].1, 1);
            let found: Vec<Rational> = f.rational_roots();
            prop_assert_eq!(found, roots.iter().map(|&r| rat(r)).collect::<Vec<_>>());
        }
    }
}
