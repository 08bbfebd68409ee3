//! Local analysis at a point: germs of 1-forms and curves, eigenvalues of the
//! linear part, blow-ups, branch counting and the multiplicity `i_p(F,B)`.

mod engine;
mod puiseux;
mod series_mult;

pub use engine::{branch_data, BranchData, MAX_DEPTH};
pub use puiseux::{puiseux_branches, Branch};
pub use series_mult::{
    blowup_chain, multiplicity_blowup_relation, multiplicity_series, multiplicity_series_auto,
    multiplicity_series_from, ChainLink,
};

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::sqrt_exact;
use crate::exact::{int, BiPoly, OneForm, ProjPoint, Rational, TriPoly};

/// `ω = P du + Q dv` and a curve `C(u,v) = 0`, in coordinates centred at the
/// point of interest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineGerm {
    pub p: BiPoly,
    pub q: BiPoly,
    pub curve: BiPoly,
}

impl AffineGerm {
    pub fn new(p: BiPoly, q: BiPoly, curve: BiPoly) -> Self {
        Self { p, q, curve }
    }

    /// The germ of a projective form and curve at `pt`, in the affine chart
    /// where the last nonzero coordinate of `pt` is one.
    pub fn at_point(form: &OneForm, curve: &TriPoly, pt: &ProjPoint) -> Self {
        let k = pt.chart();
        let rep = pt.affine_rep();
        let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
        let mut vals: [BiPoly; 3] = [BiPoly::zero(), BiPoly::zero(), BiPoly::zero()];
        vals[k] = BiPoly::one();
        for (slot, &i) in others.iter().enumerate() {
            vals[i] = &BiPoly::var(slot) + &BiPoly::constant(rep[i].clone());
        }
        let c = form.coeffs();
        Self {
            p: c[others[0]].compose(&vals),
            q: c[others[1]].compose(&vals),
            curve: curve.compose(&vals),
        }
    }

    /// Recentres at `(a, b)`.
    pub fn translate(&self, a: &Rational, b: &Rational) -> Self {
        let vals = [
            &BiPoly::u() + &BiPoly::constant(a.clone()),
            &BiPoly::v() + &BiPoly::constant(b.clone()),
        ];
        Self::new(self.p.compose(&vals), self.q.compose(&vals), self.curve.compose(&vals))
    }

    /// The dual vector field `X = (−Q, P)`.
    pub fn field(&self) -> (BiPoly, BiPoly) {
        (-&self.q, self.p.clone())
    }

    pub fn is_singular(&self) -> bool {
        self.p.constant_term().is_zero() && self.q.constant_term().is_zero()
    }

    /// Algebraic multiplicity `ν`: the lower order of `P` and `Q`.
    pub fn nu(&self) -> u32 {
        self.p.order().into_iter().chain(self.q.order()).min().unwrap_or(0)
    }

    /// Jacobian of `X` at the origin, rows `(∂u, ∂v)` of each component.
    pub fn linear_part(&self) -> [[Rational; 2]; 2] {
        let (xu, xv) = self.field();
        let c = |f: &BiPoly, i: usize| {
            let mut e = [0u32; 2];
            e[i] = 1;
            f.coeff(&e)
        };
        [[c(&xu, 0), c(&xu, 1)], [c(&xv, 0), c(&xv, 1)]]
    }
}

/// Eigenvalues of the linear part of the dual vector field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Eigen {
    /// Both eigenvalues rational.
    Pair(Rational, Rational),
    /// Irrational eigenvalues with a rational ratio `λ₁/λ₂`.
    Ratio(Rational),
}

impl Eigen {
    /// The ratio `λ₁:λ₂` as coprime integers.
    pub fn ratio(&self) -> Option<(i64, i64)> {
        let r = match self {
            Eigen::Pair(_, b) if b.is_zero() => return None,
            Eigen::Pair(a, b) => a / b,
            Eigen::Ratio(r) => r.clone(),
        };
        let n = i64::try_from(r.numer()).ok()?;
        let d = i64::try_from(r.denom()).ok()?;
        Some((n, d))
    }

    /// Whether the eigenvalues are proportional to `n : d` (order-insensitive).
    pub fn has_ratio(&self, n: i64, d: i64) -> bool {
        let target = Rational::new(n.into(), d.into());
        match self {
            Eigen::Pair(a, b) => {
                (!b.is_zero() && a / b == target) || (!a.is_zero() && b / a == target)
            }
            Eigen::Ratio(r) => *r == target || (!r.is_zero() && Rational::one() / r == target),
        }
    }
}

pub fn eigenvalues(germ: &AffineGerm) -> Result<Eigen> {
    let j = germ.linear_part();
    let t = &j[0][0] + &j[1][1];
    let d = &j[0][0] * &j[1][1] - &j[0][1] * &j[1][0];
    if j.iter().flatten().all(|v| v.is_zero()) {
        return Err(Error::Nilpotent);
    }
    let disc = &t * &t - int(4) * &d;
    if let Some(s) = sqrt_exact(&disc) {
        let l1 = (&t + &s) / int(2);
        let l2 = (&t - &s) / int(2);
        if l1.is_zero() && l2.is_zero() {
            return Err(Error::Nilpotent);
        }
        return Ok(Eigen::Pair(l1, l2));
    }
    if t.is_zero() {
        return Ok(Eigen::Ratio(int(-1)));
    }
    // ρ = λ₁/λ₂ solves ρ² + (2 − T²/D)ρ + 1 = 0.
    let b = int(2) - &t * &t / &d;
    let disc = &b * &b - int(4);
    let s = sqrt_exact(&disc).ok_or(Error::IrrationalEigenvalues)?;
    Ok(Eigen::Ratio((-&b + s) / int(2)))
}

/// Number of branches of `v^A − u^B = 0` at the origin.
pub fn branch_count(a: u32, b: u32) -> u32 {
    assert!(a >= 1 && b >= 1);
    a.gcd(&b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    /// `(u, v) = (u, t·u)`, new coordinates `(u, t)`.
    X,
    /// `(u, v) = (s·v, v)`, new coordinates `(s, v)`.
    Y,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupResult {
    pub germ: AffineGerm,
    pub nu: u32,
    pub dicritical: bool,
    /// Multiplicity of the curve at the blown-up point.
    pub m: u32,
}

/// Blows up the origin in one chart. The transformed germ is left centred at
/// the chart origin; callers translate to the point of interest.
pub fn blowup(germ: &AffineGerm, chart: Chart) -> Result<BlowupResult> {
    if !germ.is_singular() {
        return Err(Error::Parameter("blow-up centre is not singular".into()));
    }
    let nu = germ.nu();
    let (u, v) = (BiPoly::u(), BiPoly::v());
    let (p, q, exc, sub) = match chart {
        Chart::X => {
            let sub = [u.clone(), &v * &u];
            let ps = germ.p.compose(&sub);
            let qs = germ.q.compose(&sub);
            (&ps + &(&v * &qs), &u * &qs, 0usize, sub)
        }
        Chart::Y => {
            let sub = [&u * &v, v.clone()];
            let ps = germ.p.compose(&sub);
            let qs = germ.q.compose(&sub);
            (&v * &ps, &(&u * &ps) + &qs, 1usize, sub)
        }
    };
    let e = p.var_valuation(exc).min(q.var_valuation(exc));
    let e = if p.is_zero() {
        q.var_valuation(exc)
    } else if q.is_zero() {
        p.var_valuation(exc)
    } else {
        e
    };
    let dicritical = e == nu + 1;
    if e != nu && !dicritical {
        return Err(Error::BlowupInconsistency(format!("form divisible by E^{e} with ν = {nu}")));
    }
    let c = germ.curve.compose(&sub);
    let m = germ.curve.order().unwrap_or(0);
    let curve = c.div_var_pow(exc, m).expect("curve divisible by E^m");
    Ok(BlowupResult {
        germ: AffineGerm::new(p.div_var_pow(exc, e).unwrap(), q.div_var_pow(exc, e).unwrap(), curve),
        nu,
        dicritical,
        m,
    })
}

/// Whether `uP_ν + vQ_ν ≡ 0`, i.e. the blow-up is dicritical.
pub fn is_dicritical(germ: &AffineGerm) -> bool {
    let nu = germ.nu();
    let pn = germ.p.homogeneous_part(nu);
    let qn = germ.q.homogeneous_part(nu);
    (&(&BiPoly::u() * &pn) + &(&BiPoly::v() * &qn)).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> BiPoly {
        BiPoly::parse_uv(s).unwrap()
    }

    #[test]
    fn radial_eigenvalues_and_dicritical_blowup() {
        // x dy − y dx
        let g = AffineGerm::new(b("-v"), b("u"), b("u"));
        assert_eq!(eigenvalues(&g).unwrap(), Eigen::Pair(int(-1), int(-1)));
        assert!(eigenvalues(&g).unwrap().has_ratio(1, 1));
        let r = blowup(&g, Chart::X).unwrap();
        assert!(r.dicritical);
        assert_eq!(r.nu, 1);
        assert!(is_dicritical(&g));
    }

    #[test]
    fn saddle_eigen_ratio() {
        // p v du + q u dv with (p,q) = (−1, 2)
        let g = AffineGerm::new(b("-v"), b("2 u"), b("v^2 - u"));
        let e = eigenvalues(&g).unwrap();
        assert!(e.has_ratio(2, 1) || e.has_ratio(-2, 1) || e.has_ratio(1, -2));
    }

    #[test]
    fn nilpotent_is_signalled() {
        let g = AffineGerm::new(b("v"), b("0"), b("u"));
        // X = (0, v): eigenvalues 0 and 1, not nilpotent
        assert!(eigenvalues(&g).is_ok());
        let n = AffineGerm::new(b("0"), b("-v"), b("u"));
        // X = (v, 0)
        assert!(matches!(eigenvalues(&n), Err(Error::Nilpotent)));
        let z = AffineGerm::new(b("u^2"), b("v^2"), b("u"));
        assert!(matches!(eigenvalues(&z), Err(Error::Nilpotent)));
    }

    #[test]
    fn irrational_ratio() {
        // X = (v, −c u)-type centre with c = 2: eigenvalues ±i√2, ratio −1
        let g = AffineGerm::new(b("2 u"), b("-v"), b("u"));
        assert_eq!(eigenvalues(&g).unwrap(), Eigen::Ratio(int(-1)));
    }

    #[test]
    fn branch_counts() {
        assert_eq!(branch_count(2, 3), 1);
        assert_eq!(branch_count(4, 6), 2);
        assert_eq!(branch_count(6, 2), 2);
    }

    #[test]
    fn y_chart_pullback() {
        let g = AffineGerm::new(b("v"), b("u"), b("u v"));
        let r = blowup(&g, Chart::Y).unwrap();
        // v du + u dv pulled back by u = s v: v² ds + 2 s v dv, divided by v
        assert_eq!(r.germ.p, b("v"));
        assert_eq!(r.germ.q, b("2 u"));
        assert_eq!(r.m, 2);
        assert!(!r.dicritical);
    }

    #[test]
    fn translate_recentres() {
        let g = AffineGerm::new(b("u - 1"), b("v"), b("u^2 + v^2 - 1"));
        let t = g.translate(&int(1), &int(0));
        assert!(t.is_singular());
        assert_eq!(t.curve, b("u^2 + 2 u + v^2"));
    }
}
