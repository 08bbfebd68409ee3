//! Polynomial 1-forms `A dx + B dy + C dz` on the projective plane.
//!
//! The first three variables of `Poly<N>` are `x, y, z`; any further
//! variables are treated as symbolic constants.

use super::poly::{BiPoly, Poly, TriPoly};
use crate::error::{Error, Result};
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm<const N: usize = 3> {
    pub a_dx: Poly<N>,
    pub a_dy: Poly<N>,
    pub a_dz: Poly<N>,
}

impl<const N: usize> OneForm<N> {
    pub fn new(a_dx: Poly<N>, a_dy: Poly<N>, a_dz: Poly<N>) -> Self {
        Self { a_dx, a_dy, a_dz }
    }

    pub fn zero() -> Self {
        Self::new(Poly::zero(), Poly::zero(), Poly::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.a_dx.is_zero() && self.a_dy.is_zero() && self.a_dz.is_zero()
    }

    pub fn coeffs(&self) -> [&Poly<N>; 3] {
        [&self.a_dx, &self.a_dy, &self.a_dz]
    }

    /// Total degree in `x, y, z` of the coefficients (maximum over the three).
    pub fn coeff_degree(&self) -> Option<u32> {
        self.coeffs().iter().filter_map(|c| c.degree_in(3)).max()
    }

    /// Whether all coefficients are homogeneous in `x, y, z` of one degree.
    pub fn is_homogeneous(&self) -> bool {
        let d = self.coeff_degree();
        self.coeffs().iter().all(|c| {
            c.is_zero() || (c.is_homogeneous_in(3) && c.degree_in(3) == d)
        })
    }

    /// `x·A + y·B + z·C`.
    pub fn radial_contraction(&self) -> Poly<N> {
        &(&(&Poly::var(0) * &self.a_dx) + &(&Poly::var(1) * &self.a_dy)) + &(&Poly::var(2) * &self.a_dz)
    }

    pub fn scale(&self, c: &super::Rational) -> Self {
        Self::new(self.a_dx.scale(c), self.a_dy.scale(c), self.a_dz.scale(c))
    }

    pub fn mul_poly(&self, f: &Poly<N>) -> Self {
        Self::new(f * &self.a_dx, f * &self.a_dy, f * &self.a_dz)
    }

    /// Exact division of every coefficient; `None` if `f` fails to divide one.
    pub fn div_poly(&self, f: &Poly<N>) -> Option<Self> {
        Some(Self::new(
            self.a_dx.divides_into(f)?,
            self.a_dy.divides_into(f)?,
            self.a_dz.divides_into(f)?,
        ))
    }

    /// The differential `df = f_x dx + f_y dy + f_z dz`.
    pub fn differential(f: &Poly<N>) -> Self {
        Self::new(f.derivative(0), f.derivative(1), f.derivative(2))
    }

    /// `ℓ·df − k·f·dℓ` for a linear `ℓ` and `k = deg f`; its radial
    /// contraction vanishes by the Euler relation.
    pub fn projective_differential(f: &Poly<N>, l: &Poly<N>) -> Self {
        let k = f.degree_in(3).unwrap_or(0) as i64;
        let df = Self::differential(f);
        let dl = Self::differential(l);
        let kf = f.scale(&super::int(k));
        &df.mul_poly(l) - &dl.mul_poly(&kf)
    }

    /// The three components of `ω∧η` on `dx∧dy`, `dx∧dz`, `dy∧dz`.
    pub fn wedge_components(&self, other: &Self) -> [Poly<N>; 3] {
        let (a, b, c) = (&self.a_dx, &self.a_dy, &self.a_dz);
        let (a2, b2, c2) = (&other.a_dx, &other.a_dy, &other.a_dz);
        [
            &(a * b2) - &(b * a2),
            &(a * c2) - &(c * a2),
            &(b * c2) - &(c * b2),
        ]
    }

    /// The tangency polynomial `T` with
    /// `ω∧η = T·(z dx∧dy − y dx∧dz + x dy∧dz)`.
    pub fn wedge(&self, other: &Self) -> Result<Poly<N>> {
        let [xy, xz, yz] = self.wedge_components(other);
        let t = xy.div_var_pow(2, 1).ok_or(Error::RadialContraction)?;
        if &Poly::var(1) * &t != -xz || &Poly::var(0) * &t != yz {
            return Err(Error::RadialContraction);
        }
        Ok(t)
    }

    /// Whether `ω∧η` vanishes identically.
    pub fn wedge_vanishes(&self, other: &Self) -> bool {
        self.wedge_components(other).iter().all(|c| c.is_zero())
    }

    /// Whether `f` is invariant: `f` divides every component of `ω∧df`.
    pub fn leaves_invariant(&self, f: &Poly<N>) -> bool {
        let df = Self::differential(f);
        self.wedge_components(&df)
            .iter()
            .all(|c| c.divides_into(f).is_some())
    }

    /// Evaluates the coefficients at a point of the plane.
    pub fn eval(&self, point: &[super::Rational; N]) -> [super::Rational; 3] {
        [self.a_dx.eval(point), self.a_dy.eval(point), self.a_dz.eval(point)]
    }

    pub fn vanishes_at(&self, point: &[super::Rational; N]) -> bool {
        self.eval(point).iter().all(|v| v.is_zero())
    }

    /// Applies `compose` to each coefficient (no pull-back of differentials).
    pub fn map_coeffs<const M: usize>(&self, f: impl Fn(&Poly<N>) -> Poly<M>) -> OneForm<M> {
        OneForm::new(f(&self.a_dx), f(&self.a_dy), f(&self.a_dz))
    }

    /// Divides out the highest power of the variable `i` common to all coefficients.
    pub fn saturate_var(&self, i: usize) -> (Self, u32) {
        let k = self
            .coeffs()
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| c.var_valuation(i))
            .min()
            .unwrap_or(0);
        if k == 0 {
            return (self.clone(), 0);
        }
        let f = |c: &Poly<N>| c.div_var_pow(i, k).unwrap();
        (Self::new(f(&self.a_dx), f(&self.a_dy), f(&self.a_dz)), k)
    }
}

impl OneForm<3> {
    /// Projectivizes an affine form `P dx + Q dy` in the chart `z = 1`.
    ///
    /// With `d'` the larger degree of `P, Q`, returns
    /// `zP̃ dx + zQ̃ dy − (xP̃ + yQ̃) dz` where tildes homogenize to degree `d'`.
    /// Powers of `z` common to all three coefficients are removed.
    pub fn projectivize(p: &BiPoly, q: &BiPoly) -> Self {
        let d = p.degree().into_iter().chain(q.degree()).max().unwrap_or(0);
        let ph = p.homogenize(d);
        let qh = q.homogenize(d);
        let z = TriPoly::z();
        let form = Self::new(
            &z * &ph,
            &z * &qh,
            -(&(&TriPoly::x() * &ph) + &(&TriPoly::y() * &qh)),
        );
        form.saturate_var(2).0
    }

    /// Restriction to the chart `z = 1`: `(A(x,y,1), B(x,y,1))`.
    pub fn affine_chart_z(&self) -> (BiPoly, BiPoly) {
        (self.a_dx.dehomogenize(), self.a_dy.dehomogenize())
    }

    /// Parses three blocks `dx: ...`, `dy: ...`, `dz: ...`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut blocks: [Option<String>; 3] = [None, None, None];
        let mut current: Option<usize> = None;
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut rest = line;
            for (idx, tag) in ["dx:", "dy:", "dz:"].iter().enumerate() {
                if let Some(r) = line.strip_prefix(tag) {
                    if blocks[idx].is_some() {
                        return Err(Error::Parse(format!("duplicate block {tag}")));
                    }
                    blocks[idx] = Some(String::new());
                    current = Some(idx);
                    rest = r;
                    break;
                }
            }
            let idx = current.ok_or_else(|| Error::Parse("text before the first dx:/dy:/dz: block".into()))?;
            let b = blocks[idx].as_mut().unwrap();
            b.push(' ');
            b.push_str(rest);
        }
        let get = |i: usize, tag: &str| -> Result<TriPoly> {
            let s = blocks[i]
                .as_ref()
                .ok_or_else(|| Error::Parse(format!("missing {tag} block")))?;
            TriPoly::parse(s)
        };
        Ok(Self::new(get(0, "dx:")?, get(1, "dy:")?, get(2, "dz:")?))
    }

    pub fn to_text(&self) -> String {
        let n = ["x", "y", "z"];
        format!(
            "dx: {}\ndy: {}\ndz: {}\n",
            self.a_dx.to_text(&n),
            self.a_dy.to_text(&n),
            self.a_dz.to_text(&n)
        )
    }
}

impl<const N: usize> std::ops::Add for &OneForm<N> {
    type Output = OneForm<N>;
    fn add(self, rhs: Self) -> OneForm<N> {
        OneForm::new(&self.a_dx + &rhs.a_dx, &self.a_dy + &rhs.a_dy, &self.a_dz + &rhs.a_dz)
    }
}

impl<const N: usize> std::ops::Sub for &OneForm<N> {
    type Output = OneForm<N>;
    fn sub(self, rhs: Self) -> OneForm<N> {
        OneForm::new(&self.a_dx - &rhs.a_dx, &self.a_dy - &rhs.a_dy, &self.a_dz - &rhs.a_dz)
    }
}

/// `D dN − N dD`, the numerator of `d(N/D)` up to `D²`.
pub fn quotient_differential<const N: usize>(num: &Poly<N>, den: &Poly<N>) -> OneForm<N> {
    let dn = OneForm::differential(num);
    let dd = OneForm::differential(den);
    &dn.mul_poly(den) - &dd.mul_poly(num)
}

/// Checks that `num/den` is a first integral of `form`.
pub fn is_first_integral<const N: usize>(form: &OneForm<N>, num: &Poly<N>, den: &Poly<N>) -> bool {
    quotient_differential(num, den).wedge_vanishes(form)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> TriPoly {
        TriPoly::parse(s).unwrap()
    }

    fn sample() -> OneForm {
        // d(xy/z^2) with the denominator cleared
        OneForm::new(p("y z"), p("x z"), p("-2 x y"))
    }

    #[test]
    fn sample_is_projective() {
        assert!(sample().radial_contraction().is_zero());
    }

    #[test]
    fn self_wedge_vanishes() {
        let w = sample();
        assert!(w.wedge(&w).unwrap().is_zero());
    }

    #[test]
    fn wedge_is_antisymmetric() {
        let w = sample();
        let e = OneForm::new(p("z^2 x"), TriPoly::zero(), p("-x^2 z"));
        assert_eq!(w.wedge(&e).unwrap(), -e.wedge(&w).unwrap());
    }

    #[test]
    fn non_projective_pair_is_rejected() {
        let a = OneForm::new(p("x"), TriPoly::zero(), TriPoly::zero());
        let b = OneForm::new(TriPoly::zero(), p("x"), TriPoly::zero());
        assert!(matches!(a.wedge(&b), Err(Error::RadialContraction)));
    }

    #[test]
    fn projective_differential_is_radial_free() {
        let f = p("x^3 + y^2 z - 5 x y z");
        let form = OneForm::projective_differential(&f, &TriPoly::z());
        assert!(form.radial_contraction().is_zero());
    }

    #[test]
    fn projectivize_round_trip() {
        let pp = BiPoly::parse_uv("-6 v + 12 u v").unwrap();
        let qq = BiPoly::parse_uv("4 u - 9 u^2 + v^2").unwrap();
        let f = OneForm::projectivize(&pp, &qq);
        assert!(f.radial_contraction().is_zero());
        let (a, b) = f.affine_chart_z();
        assert_eq!(a, pp);
        assert_eq!(b, qq);
    }

    #[test]
    fn form_text_round_trip() {
        let w = sample();
        assert_eq!(OneForm::parse(&w.to_text()).unwrap(), w);
        assert!(OneForm::parse("dx: x\ndy: y").is_err());
        assert!(OneForm::parse("x\ndx: x").is_err());
    }
}
