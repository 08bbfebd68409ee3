//! Dense univariate polynomials over the rationals: gcd, square-free parts
//! and rational roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Poly;
use super::rational::{int, Rational};

/// Coefficients from the constant term upwards, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly(Vec<Rational>);

impl UPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Self(c)
    }

    pub fn zero() -> Self {
        Self(Vec::new())
    }

    /// Collects a polynomial whose only live variable is `i`.
    pub fn from_poly<const N: usize>(p: &Poly<N>, i: usize) -> Self {
        let mut c = vec![Rational::zero(); p.degree_of_var(i).unwrap_or(0) as usize + 1];
        for (e, k) in p.terms() {
            debug_assert!((0..N).all(|j| j == i || e[j] == 0));
            c[e[i] as usize] += k;
        }
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        Self::new(self.0.iter().map(|c| c / &l).collect())
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero());
        let mut r = self.0.clone();
        let dd = d.0.len() - 1;
        let ld = d.lead();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &ld;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self` divided by `gcd(self, self')`.
    pub fn squarefree(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Multiplicity of `r` as a root.
    pub fn root_multiplicity(&self, r: &Rational) -> usize {
        let lin = Self::new(vec![-r.clone(), Rational::one()]);
        let mut p = self.clone();
        let mut m = 0;
        while !p.is_zero() {
            let (q, rem) = p.div_rem(&lin);
            if !rem.is_zero() {
                break;
            }
            p = q;
            m += 1;
        }
        m
    }

    /// All rational roots with multiplicities, sorted ascending.
    pub fn rational_roots(&self) -> Vec<(Rational, usize)> {
        if self.is_zero() {
            return Vec::new();
        }
        let sf = self.squarefree();
        // Integer coefficients for the square-free part.
        let l = sf
            .0
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = sf.0.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
        let mut roots = Vec::new();
        let shift = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
        if shift > 0 {
            roots.push(Rational::zero());
        }
        let ints = &ints[shift..];
        if ints.len() > 1 {
            let c0 = ints[0].abs();
            let cn = ints.last().unwrap().abs();
            let nums = divisors(&c0);
            let dens = divisors(&cn);
            for a in &nums {
                for b in &dens {
                    if a.gcd(b) != BigInt::one() {
                        continue;
                    }
                    for s in [1i64, -1] {
                        let r = Rational::new(a * BigInt::from(s), b.clone());
                        if sf.eval(&r).is_zero() && !roots.contains(&r) {
                            roots.push(r);
                        }
                    }
                }
            }
        }
        roots.sort();
        roots
            .into_iter()
            .map(|r| {
                let m = self.root_multiplicity(&r);
                (r, m)
            })
            .collect()
    }
}

/// Positive divisors by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.clone();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            primes.push((p.clone(), e));
        }
        p += 1;
        if p.to_u64().is_none_or(|v| v > 50_000_000) {
            panic!("integer too large for rational root search");
        }
    }
    if n > BigInt::one() {
        primes.push((n, 1));
    }
    let mut out = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for d in &out {
            let mut pw = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pw);
                pw *= &p;
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn u(v: &[i64]) -> UPoly {
        UPoly::new(v.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn roots_with_multiplicity() {
        // (2x - 1)^2 (x + 3) x = 4x^4 + 8x^3 - 11x^2 + 3x
        let p = u(&[0, 3, -11, 8, 4]);
        assert_eq!(
            p.rational_roots(),
            vec![(int(-3), 1), (int(0), 1), (rat(1, 2), 2)]
        );
    }

    #[test]
    fn irrational_roots_are_skipped() {
        assert!(u(&[-2, 0, 1]).rational_roots().is_empty());
        assert_eq!(u(&[1, 0, 1]).gcd(&u(&[-1, 0, 1])), u(&[1]));
    }

    #[test]
    fn squarefree_part() {
        let p = u(&[1, 2, 1]);
        assert_eq!(p.squarefree(), u(&[1, 1]));
    }
}
