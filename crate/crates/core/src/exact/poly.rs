//! Sparse multivariate polynomials over the rationals.
//!
//! `Poly<N>` stores a map from exponent vectors to nonzero coefficients.
//! The first three variables are always the homogeneous coordinates
//! `x, y, z`; extra variables carry symbolic parameters (for instance the
//! coefficients `a, b, c` of a first integral, or a pencil parameter) so that
//! identities can be checked once for all parameter values.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{int, Rational};
use crate::error::{Error, Result};

pub type Exponent<const N: usize> = [u32; N];

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<const N: usize> {
    terms: BTreeMap<Exponent<N>, Rational>,
}

/// Polynomial in the homogeneous coordinates `x, y, z`.
pub type TriPoly = Poly<3>;
/// Polynomial in two affine coordinates.
pub type BiPoly = Poly<2>;

fn total(e: &[u32]) -> u32 {
    e.iter().sum()
}

/// Graded lexicographic comparison, first variable largest.
fn grlex_cmp(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    total(a).cmp(&total(b)).then_with(|| a.cmp(b))
}

impl<const N: usize> Default for Poly<N> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<const N: usize> Poly<N> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, [0; N])
    }

    pub fn monomial(c: Rational, e: Exponent<N>) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// The variable with index `i`.
    pub fn var(i: usize) -> Self {
        let mut e = [0; N];
        e[i] = 1;
        Self::monomial(Rational::one(), e)
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent<N>, Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Exponent<N>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| total(e) == 0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent<N>, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exponent<N>) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&[0; N])
    }

    /// Maximum total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| total(e)).max()
    }

    /// Maximum total degree in the first `k` variables.
    pub fn degree_in(&self, k: usize) -> Option<u32> {
        self.terms.keys().map(|e| total(&e[..k])).max()
    }

    /// Minimum total degree (order at the origin); `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| total(e)).min()
    }

    pub fn degree_of_var(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    /// Whether every term has the same total degree in the first `k` variables.
    pub fn is_homogeneous_in(&self, k: usize) -> bool {
        let mut degs = self.terms.keys().map(|e| total(&e[..k]));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_homogeneous_in(N)
    }

    /// Homogeneous part of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| total(*e) == d)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Leading term in graded lexicographic order.
    pub fn leading_term(&self) -> Option<(Exponent<N>, Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| grlex_cmp(a.0, b.0))
            .map(|(e, c)| (*e, c.clone()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, c: &Rational, m: &Exponent<N>) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, k)| {
                    let mut f = *e;
                    for i in 0..N {
                        f[i] += m[i];
                    }
                    (f, k * c)
                })
                .collect(),
        }
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return Err(Error::NegativeExponent(n));
        }
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut n = n as u64;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// `self^n` for a non-negative exponent.
    pub fn powu(&self, n: u32) -> Self {
        self.pow(n as i64).expect("non-negative exponent")
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = *e;
                f[i] -= 1;
                out.add_term(f, c * int(e[i] as i64));
            }
        }
        out
    }

    /// Replaces variable `i` by `value`.
    pub fn subst(&self, i: usize, value: &Self) -> Self {
        let mut powers: Vec<Self> = vec![Self::one()];
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let k = e[i] as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut rest = *e;
            rest[i] = 0;
            out = out + powers[k].mul_monomial(c, &rest);
        }
        out
    }

    /// Simultaneous substitution of every variable by a polynomial in `M`
    /// variables.
    pub fn compose<const M: usize>(&self, values: &[Poly<M>; N]) -> Poly<M> {
        let mut cache: Vec<Vec<Poly<M>>> = vec![vec![Poly::one()]; N];
        let mut out = Poly::<M>::zero();
        for (e, c) in &self.terms {
            let mut t = Poly::<M>::constant(c.clone());
            for i in 0..N {
                let k = e[i] as usize;
                while cache[i].len() <= k {
                    let next = cache[i].last().unwrap() * &values[i];
                    cache[i].push(next);
                }
                if k > 0 {
                    t = &t * &cache[i][k];
                }
            }
            out = out + t;
        }
        out
    }

    /// Evaluates variable `i` at `value`.
    pub fn eval_var(&self, i: usize, value: &Rational) -> Self {
        self.subst(i, &Self::constant(value.clone()))
    }

    /// Evaluates every variable.
    pub fn eval(&self, point: &[Rational; N]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..N {
                if e[i] > 0 {
                    t *= num_traits::pow(point[i].clone(), e[i] as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Reinterprets the polynomial with variables permuted/embedded:
    /// variable `i` of `self` becomes variable `map[i]` of the result.
    pub fn remap<const M: usize>(&self, map: [usize; N]) -> Poly<M> {
        let mut out = Poly::<M>::zero();
        for (e, c) in &self.terms {
            let mut f = [0u32; M];
            for i in 0..N {
                f[map[i]] += e[i];
            }
            out.add_term(f, c.clone());
        }
        out
    }

    /// Applies `f` to each exponent vector (monomial substitution).
    pub fn map_exponents<const M: usize>(&self, f: impl Fn(&Exponent<N>) -> Exponent<M>) -> Poly<M> {
        let mut out = Poly::<M>::zero();
        for (e, c) in &self.terms {
            out.add_term(f(e), c.clone());
        }
        out
    }

    /// Largest `k` with `var_i^k` dividing `self` (0 for the zero polynomial).
    pub fn var_valuation(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).min().unwrap_or(0)
    }

    /// Exact division by `var_i^k`; `None` if not divisible.
    pub fn div_var_pow(&self, i: usize, k: u32) -> Option<Self> {
        let mut out = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] < k {
                return None;
            }
            let mut f = *e;
            f[i] -= k;
            out.insert(f, c.clone());
        }
        Some(Self { terms: out })
    }

    /// Exact division. Returns the quotient when `divisor` divides `self`.
    ///
    /// Repeatedly cancels the graded-lex leading term of the remainder. If
    /// `divisor | self` the leading term of every remainder is divisible by
    /// the leading term of `divisor`, so a non-divisible leading term proves
    /// non-divisibility.
    pub fn divides_into(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let (le, lc) = divisor.leading_term().unwrap();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((e, c)) = rem.leading_term() {
            let mut m = [0u32; N];
            for i in 0..N {
                if e[i] < le[i] {
                    return None;
                }
                m[i] = e[i] - le[i];
            }
            let k = c / &lc;
            rem = rem - divisor.mul_monomial(&k, &m);
            quot.add_term(m, k);
        }
        Some(quot)
    }

    /// Content-free representative with positive leading coefficient
    /// and leading coefficient one.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            None => Self::zero(),
            Some((_, c)) => self.scale(&(Rational::one() / c)),
        }
    }

    /// Whether `self = λ·other` for a nonzero rational `λ`.
    pub fn is_proportional(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.monic() == other.monic()
    }

    pub fn is_negative_leading(&self) -> bool {
        self.leading_term().map(|(_, c)| c.is_negative()).unwrap_or(false)
    }

    /// Writes the polynomial in the textual `coef x^i y^j z^k` syntax.
    pub fn to_text(&self, names: &[&str; N]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by(|a, b| grlex_cmp(b.0, a.0));
        for (k, (e, c)) in ordered.into_iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let mut parts = Vec::new();
            if !a.is_one() || total(e) == 0 {
                parts.push(a.to_string());
            }
            for i in 0..N {
                match e[i] {
                    0 => {}
                    1 => parts.push(names[i].to_string()),
                    d => parts.push(format!("{}^{}", names[i], d)),
                }
            }
            out.push_str(&parts.join(" "));
        }
        out
    }
}

impl TriPoly {
    pub fn x() -> Self {
        Self::var(0)
    }
    pub fn y() -> Self {
        Self::var(1)
    }
    pub fn z() -> Self {
        Self::var(2)
    }

    /// Dehomogenizes by setting `z = 1`.
    pub fn dehomogenize(&self) -> BiPoly {
        self.map_exponents(|e| [e[0], e[1]])
    }

    /// Parses the textual `coef x^i y^j z^k` syntax.
    pub fn parse(s: &str) -> Result<Self> {
        parse_poly(s, &["x", "y", "z"])
    }
}

impl BiPoly {
    pub fn u() -> Self {
        Self::var(0)
    }
    pub fn v() -> Self {
        Self::var(1)
    }

    /// Parses with variable names `u, v`; `x, y` are accepted as aliases.
    pub fn parse_uv(s: &str) -> Result<Self> {
        parse_poly(s, &["u", "v"]).or_else(|_| parse_poly(s, &["x", "y"]))
    }

    /// Homogenizes to total degree `d` (at least the degree of `self`).
    pub fn homogenize(&self, d: u32) -> TriPoly {
        self.map_exponents(|e| [e[0], e[1], d - e[0] - e[1]])
    }
}

/// Parses a polynomial written as `±coef x^i y^j ...` terms.
pub fn parse_poly<const N: usize>(s: &str, names: &[&str; N]) -> Result<Poly<N>> {
    let err = |m: &str| Error::Parse(format!("{m} in {s:?}"));
    let mut p = Poly::zero();
    let mut sign = 1i64;
    let mut current: Vec<String> = Vec::new();
    let mut tokens: Vec<String> = Vec::new();
    // Tokenize: split on whitespace but keep + and - as separate tokens.
    for raw in s.split_whitespace() {
        let mut buf = String::new();
        for ch in raw.chars() {
            if (ch == '+' || ch == '-') && !buf.ends_with('^') {
                if !buf.is_empty() {
                    tokens.push(std::mem::take(&mut buf));
                }
                tokens.push(ch.to_string());
            } else {
                buf.push(ch);
            }
        }
        if !buf.is_empty() {
            tokens.push(buf);
        }
    }
    let flush = |sign: i64, current: &mut Vec<String>, p: &mut Poly<N>| -> Result<()> {
        if current.is_empty() {
            return Ok(());
        }
        let mut c = int(sign);
        let mut e = [0u32; N];
        for tok in current.drain(..) {
            if tok.chars().next().is_some_and(|ch| ch.is_ascii_digit()) {
                c *= super::rational::parse_rational(&tok)?;
                continue;
            }
            let (name, pow) = match tok.split_once('^') {
                Some((n, k)) => (n.to_string(), k.parse::<u32>().map_err(|_| err("bad exponent"))?),
                None => (tok.clone(), 1),
            };
            let idx = names
                .iter()
                .position(|n| *n == name)
                .ok_or_else(|| err(&format!("unknown variable {name:?}")))?;
            e[idx] += pow;
        }
        p.add_term(e, c);
        Ok(())
    };
    let mut expect_term = true;
    for tok in tokens {
        match tok.as_str() {
            "+" | "-" => {
                if !current.is_empty() {
                    flush(sign, &mut current, &mut p)?;
                    sign = 1;
                } else if !expect_term {
                    return Err(err("dangling operator"));
                }
                if tok == "-" {
                    sign = -sign;
                }
                expect_term = true;
            }
            _ => {
                current.push(tok);
                expect_term = false;
            }
        }
    }
    if expect_term && current.is_empty() && !p.is_zero() {
        return Err(err("trailing operator"));
    }
    flush(sign, &mut current, &mut p)?;
    Ok(p)
}

impl<const N: usize> fmt::Debug for Poly<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..N)
            .map(|i| match (N, i) {
                (2, 0) => "u".to_string(),
                (2, 1) => "v".to_string(),
                (_, 0) => "x".to_string(),
                (_, 1) => "y".to_string(),
                (_, 2) => "z".to_string(),
                (_, i) => format!("t{}", i - 3),
            })
            .collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let arr: [&str; N] = refs.try_into().unwrap();
        write!(f, "{}", self.to_text(&arr))
    }
}

impl<const N: usize> fmt::Display for Poly<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl<const N: usize> Add for Poly<N> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl<const N: usize> Add for &Poly<N> {
    type Output = Poly<N>;
    fn add(self, rhs: Self) -> Poly<N> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<const N: usize> Neg for Poly<N> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<const N: usize> Neg for &Poly<N> {
    type Output = Poly<N>;
    fn neg(self) -> Poly<N> {
        -self.clone()
    }
}

impl<const N: usize> Sub for Poly<N> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.terms {
            self.add_term(e, -c);
        }
        self
    }
}

impl<const N: usize> Sub for &Poly<N> {
    type Output = Poly<N>;
    fn sub(self, rhs: Self) -> Poly<N> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<const N: usize> Mul for &Poly<N> {
    type Output = Poly<N>;
    fn mul(self, rhs: Self) -> Poly<N> {
        let mut out = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let mut e = *e1;
                for i in 0..N {
                    e[i] += e2[i];
                }
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl<const N: usize> Mul for Poly<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}
