//! Sparse univariate and bivariate polynomials with coefficients in any ring
//! supported by `num-traits`.

use num_traits::Num;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Univariate polynomial in `t`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly<T> {
    coeffs: BTreeMap<u32, T>,
}

impl<T: Num + Clone> Poly<T> {
    pub fn zero() -> Self {
        Poly { coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, T::one())
    }

    pub fn monomial(deg: u32, c: T) -> Self {
        let mut p = Self::zero();
        p.add_term(deg, c);
        p
    }

    /// From dense coefficients, lowest degree first.
    pub fn from_coeffs(cs: impl IntoIterator<Item = T>) -> Self {
        let mut p = Self::zero();
        for (i, c) in cs.into_iter().enumerate() {
            p.add_term(i as u32, c);
        }
        p
    }

    pub fn add_term(&mut self, deg: u32, c: T) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(deg).or_insert_with(T::zero);
        *e = e.clone() + c;
        if e.is_zero() {
            self.coeffs.remove(&deg);
        }
    }

    pub fn coeff(&self, deg: u32) -> T {
        self.coeffs.get(&deg).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &T)> {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: u32) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|(d, c)| (d + k, c.clone())).collect() }
    }

    /// `t^n · p(1/t)`; requires `n ≥ deg p`.
    pub fn reverse(&self, n: u32) -> Self {
        let mut p = Self::zero();
        for (d, c) in &self.coeffs {
            assert!(*d <= n, "reversal degree {n} below polynomial degree {d}");
            p.add_term(n - d, c.clone());
        }
        p
    }

    /// Keeps only the terms of degree strictly below `bound`.
    pub fn truncate_below(&self, bound: u32) -> Self {
        Poly { coeffs: self.coeffs.range(..bound).map(|(d, c)| (*d, c.clone())).collect() }
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs.iter().fold(T::zero(), |acc, (d, c)| acc + c.clone() * pow(x, *d))
    }

    pub fn map<U: Num + Clone>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        let mut p = Poly::zero();
        for (d, c) in &self.coeffs {
            p.add_term(*d, f(c));
        }
        p
    }
}

fn pow<T: Num + Clone>(x: &T, e: u32) -> T {
    (0..e).fold(T::one(), |acc, _| acc * x.clone())
}

impl<T: Num + Clone> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let mut p = self.clone();
        for (d, c) in &rhs.coeffs {
            p.add_term(*d, c.clone());
        }
        p
    }
}

impl<T: Num + Clone + Neg<Output = T>> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let mut p = self.clone();
        for (d, c) in &rhs.coeffs {
            p.add_term(*d, -c.clone());
        }
        p
    }
}

impl<T: Num + Clone> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        let mut p = Poly::zero();
        for (a, x) in &self.coeffs {
            for (b, y) in &rhs.coeffs {
                p.add_term(a + b, x.clone() * y.clone());
            }
        }
        p
    }
}

impl<T: Num + Clone> Add for Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: Poly<T>) -> Poly<T> {
        &self + &rhs
    }
}

impl<T: Num + Clone + Neg<Output = T>> Sub for Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Poly<T>) -> Poly<T> {
        &self - &rhs
    }
}

impl<T: Num + Clone> Mul for Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Poly<T>) -> Poly<T> {
        &self * &rhs
    }
}

impl<T: Num + Clone + fmt::Display + PartialOrd> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(d, c)| match d {
                0 => format!("{c}"),
                1 if c.is_one() => "t".to_string(),
                1 => format!("{c}t"),
                _ if c.is_one() => format!("t^{d}"),
                _ => format!("{c}t^{d}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<T: Num + Clone + fmt::Display + PartialOrd> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Bivariate polynomial in `t` and `u`, keyed by `(deg_t, deg_u)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly<T> {
    coeffs: BTreeMap<(u32, u32), T>,
}

impl<T: Num + Clone> BiPoly<T> {
    pub fn zero() -> Self {
        BiPoly { coeffs: BTreeMap::new() }
    }

    pub fn add_term(&mut self, deg: (u32, u32), c: T) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(deg).or_insert_with(T::zero);
        *e = e.clone() + c;
        if e.is_zero() {
            self.coeffs.remove(&deg);
        }
    }

    pub fn coeff(&self, deg: (u32, u32)) -> T {
        self.coeffs.get(&deg).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &T)> {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Specializes `u` to a value, giving a polynomial in `t`.
    pub fn at_u(&self, u: &T) -> Poly<T> {
        let mut p = Poly::zero();
        for ((i, j), c) in &self.coeffs {
            p.add_term(*i, c.clone() * pow(u, *j));
        }
        p
    }
}

impl<T: Num + Clone + fmt::Display> fmt::Debug for BiPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|((i, j), c)| format!("{c}·t^{i}u^{j}")).collect();
        write!(f, "BiPoly({})", if parts.is_empty() { "0".into() } else { parts.join(" + ") })
    }
}

/// Integer polynomial, the shape of every Poincaré-type invariant here.
pub type IntPoly = Poly<i64>;
/// Integer bivariate polynomial.
pub type IntBipoly = BiPoly<i64>;
