//! Foliations induced by the Reversible and Lotka-Volterra first integrals.
//!
//! Reversible: `f = x^p (y² + ax² + bxz + cz²)^q / z^(p+2q)`.
//! Lotka-Volterra: `f = x^p y^q (ax + by + cz)^r / z^(p+q+r)`.
//!
//! The builders are generic over the number of polynomial variables so the
//! same code produces rational instances (`Poly<3>`) and symbolic ones where
//! `a, b, c` are the extra variables of a `Poly<6>`.

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::form::{is_first_integral, quotient_differential};
use crate::exact::{int, OneForm, Poly, ProjPoint, Rational, TriPoly};
use crate::exact::rational::sqrt_exact;

/// Symbolic polynomials in `x, y, z, a, b, c`.
pub type SymPoly = Poly<6>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReversibleParams {
    pub p: i64,
    pub q: i64,
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LotkaVolterraParams {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl ReversibleParams {
    pub fn new(p: i64, q: i64, a: Rational, b: Rational, c: Rational) -> Result<Self> {
        let s = Self { p, q, a, b, c };
        s.validate()?;
        Ok(s)
    }

    /// The instance used throughout: `a = c = −1`, `b = 1` with zeros forced
    /// where requested.
    pub fn instance(p: i64, q: i64, a_zero: bool, c_zero: bool) -> Result<Self> {
        let a = if a_zero { int(0) } else { int(-1) };
        let c = if c_zero { int(0) } else { int(-1) };
        Self::new(p, q, a, int(1), c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.p == 0 {
            return Err(Error::Parameter("p must be nonzero".into()));
        }
        if self.q <= 0 {
            return Err(Error::Parameter("q must be positive".into()));
        }
        if self.p.gcd(&self.q) != 1 {
            return Err(Error::Parameter(format!("gcd(p,q) = {} ≠ 1", self.p.gcd(&self.q))));
        }
        if (&self.b * &self.b - int(4) * &self.a * &self.c).is_zero() {
            return Err(Error::Parameter("b² − 4ac must be nonzero".into()));
        }
        Ok(())
    }

    pub fn form(&self) -> OneForm {
        reversible_form(self.p, self.q, &cst(&self.a), &cst(&self.b), &cst(&self.c))
    }

    /// The conic `y² + ax² + bxz + cz²`.
    pub fn conic(&self) -> TriPoly {
        conic(&cst(&self.a), &cst(&self.b), &cst(&self.c))
    }

    /// Cleared numerator and denominator of the first integral.
    pub fn first_integral(&self) -> (TriPoly, TriPoly) {
        reversible_integral(self.p, self.q, &cst(&self.a), &cst(&self.b), &cst(&self.c))
    }
}

impl LotkaVolterraParams {
    pub fn new(p: i64, q: i64, r: i64, a: Rational, b: Rational, c: Rational) -> Result<Self> {
        let s = Self { p, q, r, a, b, c };
        s.validate()?;
        Ok(s)
    }

    /// `a = b = c = 1`, with one coefficient set to zero on request.
    pub fn instance(p: i64, q: i64, r: i64, zero: Option<char>) -> Result<Self> {
        let pick = |ch: char| if zero == Some(ch) { int(0) } else { int(1) };
        Self::new(p, q, r, pick('a'), pick('b'), pick('c'))
    }

    pub fn validate(&self) -> Result<()> {
        if self.p == 0 || self.q == 0 {
            return Err(Error::Parameter("p and q must be nonzero".into()));
        }
        if self.r <= 0 {
            return Err(Error::Parameter("r must be positive".into()));
        }
        let g = self.p.gcd(&self.q).gcd(&self.r);
        if g != 1 {
            return Err(Error::Parameter(format!("gcd(p,q,r) = {g} ≠ 1")));
        }
        if self.p + self.q + self.r == 0 {
            return Err(Error::Parameter("p + q + r must be nonzero".into()));
        }
        let zeros = [&self.a, &self.b, &self.c].iter().filter(|v| v.is_zero()).count();
        if zeros > 1 {
            return Err(Error::Parameter("at most one of a, b, c may vanish".into()));
        }
        Ok(())
    }

    pub fn form(&self) -> OneForm {
        lv_form(self.p, self.q, self.r, &cst(&self.a), &cst(&self.b), &cst(&self.c))
    }

    pub fn line(&self) -> TriPoly {
        line(&cst(&self.a), &cst(&self.b), &cst(&self.c))
    }

    pub fn first_integral(&self) -> (TriPoly, TriPoly) {
        lv_integral(self.p, self.q, self.r, &cst(&self.a), &cst(&self.b), &cst(&self.c))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Reversible(ReversibleParams),
    LotkaVolterra(LotkaVolterraParams),
    Custom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoliationSpec {
    pub form: OneForm,
    pub family: Family,
    /// Coefficient degree minus one.
    pub degree: u32,
}

impl FoliationSpec {
    pub fn custom(form: OneForm) -> Result<Self> {
        if !form.is_homogeneous() || form.is_zero() {
            return Err(Error::Parse("form coefficients must be homogeneous of one degree".into()));
        }
        if !form.radial_contraction().is_zero() {
            return Err(Error::RadialContraction);
        }
        let degree = form.coeff_degree().unwrap().saturating_sub(1);
        Ok(Self { form, family: Family::Custom, degree })
    }

    /// The form with every common factor among `x, y, z` and the family's
    /// conic or line removed, together with its degree.
    pub fn saturated(&self) -> (OneForm, u32) {
        let mut form = self.form.clone();
        for i in 0..3 {
            form = form.saturate_var(i).0;
        }
        let extra = match &self.family {
            Family::Reversible(r) => Some(r.conic()),
            Family::LotkaVolterra(l) => Some(l.line()),
            Family::Custom => None,
        };
        if let Some(f) = extra {
            if f.degree().unwrap_or(0) > 0 {
                while let Some(g) = form.div_poly(&f) {
                    form = g;
                }
            }
        }
        let d = form.coeff_degree().unwrap_or(1).saturating_sub(1);
        (form, d)
    }
}

pub fn build_reversible_form(params: &ReversibleParams) -> Result<FoliationSpec> {
    params.validate()?;
    let form = params.form();
    debug_assert!(form.radial_contraction().is_zero());
    let degree = form.coeff_degree().unwrap() - 1;
    Ok(FoliationSpec { form, family: Family::Reversible(params.clone()), degree })
}

pub fn build_lv_form(params: &LotkaVolterraParams) -> Result<FoliationSpec> {
    params.validate()?;
    let form = params.form();
    debug_assert!(form.radial_contraction().is_zero());
    let degree = form.coeff_degree().unwrap() - 1;
    Ok(FoliationSpec { form, family: Family::LotkaVolterra(params.clone()), degree })
}

fn cst(r: &Rational) -> TriPoly {
    TriPoly::constant(r.clone())
}

fn k<const N: usize>(n: i64) -> Poly<N> {
    Poly::constant(int(n))
}

fn xyz<const N: usize>() -> (Poly<N>, Poly<N>, Poly<N>) {
    (Poly::var(0), Poly::var(1), Poly::var(2))
}

/// Symbolic coefficients `a, b, c` as variables 3, 4, 5 of a `SymPoly`.
pub fn symbolic_abc() -> (SymPoly, SymPoly, SymPoly) {
    (SymPoly::var(3), SymPoly::var(4), SymPoly::var(5))
}

pub fn conic<const N: usize>(a: &Poly<N>, b: &Poly<N>, c: &Poly<N>) -> Poly<N> {
    let (x, y, z) = xyz::<N>();
    &(&(&(&y * &y) + &(&(a * &x) * &x)) + &(&(b * &x) * &z)) + &(&(c * &z) * &z)
}

pub fn line<const N: usize>(a: &Poly<N>, b: &Poly<N>, c: &Poly<N>) -> Poly<N> {
    let (x, y, z) = xyz::<N>();
    &(&(a * &x) + &(b * &y)) + &(c * &z)
}

/// The reversible 1-form.
pub fn reversible_form<const N: usize>(p: i64, q: i64, a: &Poly<N>, b: &Poly<N>, c: &Poly<N>) -> OneForm<N> {
    let (x, y, z) = xyz::<N>();
    let ax2 = &(&(a * &k(p + 2 * q)) * &x) * &x;
    let bxz = &(&(b * &k(p + q)) * &x) * &z;
    let cz2 = &(&(c * &k(p)) * &z) * &z;
    let common = &(&ax2 + &bxz) + &cz2;
    let dx = &z * &(&common + &(&(&y * &y) * &k(p)));
    let dy = &(&(&x * &y) * &z) * &k(2 * q);
    let dz = -(&x * &(&common + &(&(&y * &y) * &k(p + 2 * q))));
    OneForm::new(dx, dy, dz)
}

/// The Lotka-Volterra 1-form.
pub fn lv_form<const N: usize>(p: i64, q: i64, r: i64, a: &Poly<N>, b: &Poly<N>, c: &Poly<N>) -> OneForm<N> {
    let (x, y, z) = xyz::<N>();
    let xyz_ = &(&x * &y) * &z;
    let dx = &(&(a * &xyz_) * &k(p + r)) + &(&(&(&y * &z) * &k(p)) * &(&(b * &y) + &(c * &z)));
    let dy = &(&(b * &xyz_) * &k(q + r)) + &(&(&(&x * &z) * &k(q)) * &(&(a * &x) + &(c * &z)));
    let dz = -(&(&(&(&x * &y) * &k(p + q + r)) * &(&(a * &x) + &(b * &y))) + &(&(c * &xyz_) * &k(p + q)));
    OneForm::new(dx, dy, dz)
}

/// Splits `Π fᵢ^eᵢ` into cleared numerator and denominator.
pub fn split_product<const N: usize>(factors: &[(Poly<N>, i64)]) -> (Poly<N>, Poly<N>) {
    let mut num = Poly::one();
    let mut den = Poly::one();
    for (f, e) in factors {
        if *e > 0 {
            num = &num * &f.powu(*e as u32);
        } else if *e < 0 {
            den = &den * &f.powu((-*e) as u32);
        }
    }
    (num, den)
}

pub fn reversible_integral<const N: usize>(p: i64, q: i64, a: &Poly<N>, b: &Poly<N>, c: &Poly<N>) -> (Poly<N>, Poly<N>) {
    let (x, _, z) = xyz::<N>();
    split_product(&[(x, p), (conic(a, b, c), q), (z, -(p + 2 * q))])
}

pub fn lv_integral<const N: usize>(p: i64, q: i64, r: i64, a: &Poly<N>, b: &Poly<N>, c: &Poly<N>) -> (Poly<N>, Poly<N>) {
    let (x, y, z) = xyz::<N>();
    split_product(&[(x, p), (y, q), (line(a, b, c), r), (z, -(p + q + r))])
}

/// `df ∧ ω ≡ 0` with `a, b, c` as indeterminates.
pub fn reversible_identity_symbolic(p: i64, q: i64) -> bool {
    let (a, b, c) = symbolic_abc();
    let form = reversible_form(p, q, &a, &b, &c);
    let (n, d) = reversible_integral(p, q, &a, &b, &c);
    form.radial_contraction().is_zero() && is_first_integral(&form, &n, &d)
}

pub fn lv_identity_symbolic(p: i64, q: i64, r: i64) -> bool {
    let (a, b, c) = symbolic_abc();
    let form = lv_form(p, q, r, &a, &b, &c);
    let (n, d) = lv_integral(p, q, r, &a, &b, &c);
    form.radial_contraction().is_zero() && is_first_integral(&form, &n, &d)
}

/// Invariance of `f = 0`.
///
/// The test used is `f | ω∧df` componentwise (the 2-form `ω∧df` lies in the
/// ideal generated by `f`). [`is_invariant_curve_projective`] gives the
/// equivalent test through the tangency polynomial of `ω` with the radial-free
/// form `ℓ df − k f dℓ`.
pub fn is_invariant_curve(spec: &FoliationSpec, f: &TriPoly) -> bool {
    spec.form.leaves_invariant(f)
}

/// `f | wedge(ω, ℓ df − k f dℓ)` for a coordinate `ℓ` not dividing `f`.
pub fn is_invariant_curve_projective(spec: &FoliationSpec, f: &TriPoly) -> bool {
    let candidates = [
        TriPoly::x(),
        TriPoly::y(),
        TriPoly::z(),
        &(&TriPoly::x() + &TriPoly::y()) + &TriPoly::z(),
    ];
    let Some(l) = candidates.into_iter().find(|l| f.divides_into(l).is_none()) else {
        return false;
    };
    let eta = OneForm::projective_differential(f, &l);
    match spec.form.wedge(&eta) {
        Ok(t) => t.divides_into(f).is_some(),
        Err(_) => false,
    }
}

/// The closed-form singular points of a family member, each verified to
/// annihilate the form.
pub fn singular_points(spec: &FoliationSpec) -> Result<Vec<ProjPoint>> {
    let pts = match &spec.family {
        Family::Reversible(r) => reversible_points(r)?,
        Family::LotkaVolterra(l) => lv_points(l)?,
        Family::Custom => return Err(Error::CustomFamily),
    };
    let mut out: Vec<ProjPoint> = Vec::new();
    for (name, pt) in pts {
        if !spec.form.vanishes_at(pt.coords()) {
            return Err(Error::SingularPointCheck(format!("{name} = {pt}")));
        }
        if !out.contains(&pt) {
            out.push(pt);
        }
    }
    Ok(out)
}

/// `i√s` is rational exactly when `−s` is a rational square.
fn i_sqrt(s: &Rational, what: &str) -> Result<Vec<Rational>> {
    if s.is_zero() {
        return Ok(vec![int(0)]);
    }
    // (i√s)² = −s, so the two values are ±√(−s).
    let r = sqrt_exact(&-s.clone())
        .ok_or_else(|| Error::NonRationalPoint(format!("i√{what} with {what} = {s}")))?;
    Ok(vec![-r.clone(), r])
}

fn reversible_points(r: &ReversibleParams) -> Result<Vec<(String, ProjPoint)>> {
    let (p, q) = (r.p, r.q);
    let mut out = vec![("P1".to_string(), ProjPoint::from_ints(0, 1, 0))];
    for (k, y) in i_sqrt(&r.c, "c")?.into_iter().enumerate() {
        out.push((format!("P{}", 2 + k), ProjPoint::new(int(0), y, int(1))?));
    }
    if r.a.is_zero() {
        // Degenerate limit: P4 solves b(p+q)x + cpz = 0 on y = 0, P5 moves to [1:0:0].
        let bp = &r.b * int(p + q);
        let cp = &r.c * int(p);
        if !(bp.is_zero() && cp.is_zero()) {
            out.push(("P4".into(), ProjPoint::new(-cp, int(0), bp)?));
        }
        out.push(("P5".into(), ProjPoint::from_ints(1, 0, 0)));
    } else {
        let delta = &r.b * &r.b * int((p + q) * (p + q)) - int(4) * &r.a * &r.c * int(p * (p + 2 * q));
        let sd = sqrt_exact(&delta).ok_or_else(|| Error::NonRationalPoint(format!("√Δ with Δ = {delta}")))?;
        let den = -int(2) * &r.a * int(p + 2 * q);
        let bpq = &r.b * int(p + q);
        out.push(("P4".into(), ProjPoint::new(&bpq + &sd, int(0), den.clone())?));
        out.push(("P5".into(), ProjPoint::new(&bpq - &sd, int(0), den)?));
    }
    for (k, y) in i_sqrt(&r.a, "a")?.into_iter().enumerate() {
        out.push((format!("P{}", 6 + k), ProjPoint::new(int(1), y, int(0))?));
    }
    Ok(out)
}

fn lv_points(l: &LotkaVolterraParams) -> Result<Vec<(String, ProjPoint)>> {
    let (a, b, c) = (&l.a, &l.b, &l.c);
    let z = int(0);
    let pts = [
        ("P1", [z.clone(), z.clone(), int(1)]),
        ("P2", [z.clone(), int(1), z.clone()]),
        ("P3", [int(1), z.clone(), z.clone()]),
        ("P4", [z.clone(), c.clone(), -b.clone()]),
        ("P5", [-c.clone(), z.clone(), a.clone()]),
        ("P6", [-b.clone(), a.clone(), z.clone()]),
        (
            "P7",
            [
                -(b * c * int(l.p)),
                -(a * c * int(l.q)),
                a * b * int(l.p + l.q + l.r),
            ],
        ),
    ];
    pts.into_iter()
        .map(|(n, [x, y, w])| Ok((n.to_string(), ProjPoint::new(x, y, w)?)))
        .collect()
}

/// Numerator/denominator differential of the family's first integral.
pub fn integral_differential(spec: &FoliationSpec) -> Option<OneForm> {
    let (n, d) = match &spec.family {
        Family::Reversible(r) => r.first_integral(),
        Family::LotkaVolterra(l) => l.first_integral(),
        Family::Custom => return None,
    };
    Some(quotient_differential(&n, &d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> TriPoly {
        TriPoly::parse(s).unwrap()
    }

    #[test]
    fn reversible_dy_coefficient() {
        let r = ReversibleParams::new(-1, 2, int(-1), int(1), int(-1)).unwrap();
        assert_eq!(r.form().a_dy, p("4 x y z"));
        assert!(r.form().radial_contraction().is_zero());
    }

    #[test]
    fn lv_dz_coefficient() {
        let l = LotkaVolterraParams::instance(1, 1, 1, None).unwrap();
        assert_eq!(l.form().a_dz, p("-3 x^2 y - 3 x y^2 - 2 x y z"));
    }

    #[test]
    fn lv_a_zero_display() {
        let l = LotkaVolterraParams::new(2, 1, 1, int(0), int(3), int(5)).unwrap();
        let f = l.form();
        // p y z (b y + c z) dx
        assert_eq!(f.a_dx, p("6 y^2 z + 10 y z^2"));
        assert_eq!(f.a_dy, p("6 x y z + 5 x z^2"));
    }

    #[test]
    fn first_integral_identities() {
        for (pp, qq) in [(-1, 2), (-3, 2), (-5, 2)] {
            assert!(reversible_identity_symbolic(pp, qq));
        }
        assert!(lv_identity_symbolic(1, 2, 3));
        let l = LotkaVolterraParams::instance(1, 2, 3, None).unwrap();
        let (n, d) = l.first_integral();
        assert!(is_first_integral(&l.form(), &n, &d));
    }

    #[test]
    fn lv_p7() {
        let spec = build_lv_form(&LotkaVolterraParams::instance(1, 1, 1, None).unwrap()).unwrap();
        let pts = singular_points(&spec).unwrap();
        assert!(pts.contains(&ProjPoint::from_ints(-1, -1, 3)));
        assert_eq!(pts.len(), 7);
    }

    #[test]
    fn reversible_c_zero_merges_points() {
        let r = ReversibleParams::instance(-2, 3, false, true).unwrap();
        let spec = build_reversible_form(&r);
        // Δ = b²(p+q)² = 1 is a square
        let pts = singular_points(&spec.unwrap()).unwrap();
        assert_eq!(pts.iter().filter(|q| **q == ProjPoint::from_ints(0, 0, 1)).count(), 1);
    }

    #[test]
    fn reversible_irrational_points_are_reported() {
        let r = ReversibleParams::new(-1, 2, int(1), int(1), int(-1)).unwrap();
        let spec = build_reversible_form(&r).unwrap();
        assert!(matches!(singular_points(&spec), Err(Error::NonRationalPoint(_))));
    }

    #[test]
    fn invariant_curves() {
        let r = build_reversible_form(&ReversibleParams::instance(-1, 2, false, false).unwrap()).unwrap();
        assert!(is_invariant_curve(&r, &p("z")));
        assert!(is_invariant_curve_projective(&r, &p("z")));
        let l = build_lv_form(&LotkaVolterraParams::instance(1, 1, 1, None).unwrap()).unwrap();
        let line = p("x + y + z");
        assert!(is_invariant_curve(&l, &line));
        assert!(is_invariant_curve_projective(&l, &line));
        let generic = p("x + 2 y + 3 z");
        assert!(!is_invariant_curve(&l, &generic));
        assert!(!is_invariant_curve_projective(&l, &generic));
    }

    #[test]
    fn parameter_errors() {
        assert!(ReversibleParams::instance(-2, 4, false, false).is_err());
        assert!(LotkaVolterraParams::instance(2, 2, 2, None).is_err());
        assert!(LotkaVolterraParams::new(1, 1, 1, int(0), int(0), int(1)).is_err());
        assert!(ReversibleParams::new(-1, 2, int(0), int(0), int(1)).is_err());
    }
}
