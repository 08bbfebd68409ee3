//! Newton–Puiseux parametrizations of curve branches with rational
//! coefficients.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::series::eval_poly;
use crate::exact::univariate::UPoly;
use crate::exact::{BiPoly, Rational, TruncSeries};

const MAX_PUISEUX_DEPTH: usize = 64;

/// A branch `t ↦ (u(t), v(t))` through the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub u: TruncSeries,
    pub v: TruncSeries,
}

impl Branch {
    pub fn new(u: TruncSeries, v: TruncSeries) -> Self {
        Self { u, v }
    }

    /// The quasi-binomial branch `(t^A, c·t^B)`.
    pub fn monomial(a: usize, b: usize, c: Rational, order: usize) -> Self {
        Self::new(
            TruncSeries::monomial(Rational::one(), a, order),
            TruncSeries::monomial(c, b, order),
        )
    }

    /// Orders of vanishing of `u` and `v` (`None` for a coordinate axis).
    pub fn exponents(&self) -> (Option<usize>, Option<usize>) {
        (self.u.valuation(), self.v.valuation())
    }

    /// Multiplicity `m_p(B) = min(ord u, ord v)`.
    pub fn multiplicity(&self) -> usize {
        let (a, b) = self.exponents();
        a.into_iter().chain(b).min().expect("branch is not constant")
    }

    /// Unit part `w(t)` of `v = t^B·w(t)`.
    pub fn unit(&self) -> Option<TruncSeries> {
        let b = self.v.valuation()?;
        self.v.unshift(b).ok()
    }

    /// Substitutes `t ↦ c·t`.
    pub fn rescale(&self, c: &Rational) -> Self {
        Self::new(self.u.rescale(c), self.v.rescale(c))
    }
}

/// All branches of `curve` at the origin, each with rational coefficients.
pub fn puiseux_branches(curve: &BiPoly, order: usize) -> Result<Vec<Branch>> {
    if curve.is_zero() {
        return Err(Error::NonReducedGerm);
    }
    if !curve.constant_term().is_zero() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut f = curve.clone();
    let ku = f.var_valuation(0);
    if ku > 1 {
        return Err(Error::NonReducedGerm);
    }
    if ku == 1 {
        out.push(Branch::new(TruncSeries::zero(order), TruncSeries::t(order)));
        f = f.div_var_pow(0, 1).unwrap();
    }
    if f.constant_term().is_zero() {
        for (k, lam, v) in branches_rec(&f, order, 0)? {
            let u = TruncSeries::monomial(lam, k, order);
            out.push(Branch::new(u, v));
        }
    }
    Ok(out)
}

/// Branches of `f` with `u ∤ f`, `f(0,0) = 0`, as `u = λ t^k`, `v = v(t)`.
fn branches_rec(f: &BiPoly, order: usize, depth: usize) -> Result<Vec<(usize, Rational, TruncSeries)>> {
    if depth > MAX_PUISEUX_DEPTH {
        return Err(Error::RecursionLimit(MAX_PUISEUX_DEPTH));
    }
    let mut out = Vec::new();
    let mut f = f.clone();
    let kv = f.var_valuation(1);
    if kv > 1 {
        return Err(Error::NonReducedGerm);
    }
    if kv == 1 {
        out.push((1, Rational::one(), TruncSeries::zero(order)));
        f = f.div_var_pow(1, 1).unwrap();
        if !f.constant_term().is_zero() {
            return Ok(out);
        }
    }
    for edge in newton_edges(&f) {
        let Edge { k, beta, weight, poly } = edge;
        let roots = poly.rational_roots();
        let found: usize = roots.iter().filter(|(r, _)| !r.is_zero()).map(|(_, m)| *m).sum();
        let nonzero_degree = poly.degree().unwrap() - poly.coeffs().iter().position(|c| !c.is_zero()).unwrap();
        if found != nonzero_degree {
            return Err(Error::NonRationalPoint("irrational Puiseux coefficient".into()));
        }
        for (s0, mult) in roots.into_iter().filter(|(r, _)| !r.is_zero()) {
            // u = λ τ^k, v = τ^β (μ + w) with μ^k / λ^β = s0.
            let (lam, mu) = rational_scaling(&s0, k, beta);
            let g = transform(&f, k, beta, weight, &lam, &mu);
            if mult == 1 {
                let w = hensel(&g, order)?;
                let v = w.add(&TruncSeries::constant(mu.clone(), order)).shift(beta);
                out.push((k, lam, v.with_order(order)));
            } else {
                for (k2, lam2, w) in branches_rec(&g, order, depth + 1)? {
                    // τ = λ₂ σ^{k₂}
                    let tau = TruncSeries::monomial(lam2.clone(), k2, order);
                    let tau_beta = tau.powu(beta as u32).with_order(order);
                    let v = tau_beta.mul(&w.add(&TruncSeries::constant(mu.clone(), order)));
                    let lam_total = &lam * num_traits::pow(lam2.clone(), k);
                    out.push((k * k2, lam_total, v.with_order(order)));
                }
            }
        }
    }
    Ok(out)
}

struct Edge {
    k: usize,
    beta: usize,
    weight: usize,
    /// Edge polynomial in `s = v^k / u^β`.
    poly: UPoly,
}

/// Lower edges of the Newton polygon between the `v`-axis and `u`-axis points.
fn newton_edges(f: &BiPoly) -> Vec<Edge> {
    let pts: Vec<(usize, usize, Rational)> = f
        .terms()
        .map(|(e, c)| (e[0] as usize, e[1] as usize, c.clone()))
        .collect();
    let j0 = pts.iter().filter(|p| p.0 == 0).map(|p| p.1).min().expect("u does not divide f");
    let i0 = pts.iter().filter(|p| p.1 == 0).map(|p| p.0).min().expect("v does not divide f");
    let mut edges = Vec::new();
    let (mut ci, mut cj) = (0usize, j0);
    while cj > 0 {
        // Next hull vertex: minimise slope (i - ci)/(cj - j) over points with j < cj.
        let mut best: Option<(usize, usize)> = None;
        for &(i, j, _) in &pts {
            if j >= cj || i <= ci {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some((bi, bj)) => {
                    // slope compare: (i-ci)/(cj-j) < (bi-ci)/(cj-bj)
                    let lhs = (i - ci) * (cj - bj);
                    let rhs = (bi - ci) * (cj - j);
                    if lhs < rhs || (lhs == rhs && j < bj) {
                        best = Some((i, j));
                    }
                }
            }
        }
        let (ni, nj) = best.unwrap_or((i0, 0));
        let di = ni - ci;
        let dj = cj - nj;
        let g = di.gcd(&dj);
        let (beta, k) = (di / g, dj / g);
        let weight = ci * k + cj * beta;
        let mut coeffs = vec![Rational::zero(); g + 1];
        for (i, j, c) in &pts {
            if i * k + j * beta == weight {
                let idx = (j - nj) / k;
                coeffs[idx] = c.clone();
            }
        }
        edges.push(Edge { k, beta, weight, poly: UPoly::new(coeffs) });
        ci = ni;
        cj = nj;
    }
    edges
}

/// `λ = s0^a`, `μ = s0^b` with `bk − aβ = 1`.
fn rational_scaling(s0: &Rational, k: usize, beta: usize) -> (Rational, Rational) {
    let (k, beta) = (k as i64, beta as i64);
    let e = k.extended_gcd(&beta);
    // e.x·k + e.y·β = 1, so b = e.x, a = −e.y
    let (b, a) = (e.x, -e.y);
    let pw = |e: i64| -> Rational {
        if e >= 0 {
            num_traits::pow(s0.clone(), e as usize)
        } else {
            Rational::one() / num_traits::pow(s0.clone(), (-e) as usize)
        }
    };
    (pw(a), pw(b))
}

/// `τ^{−W} f(λ τ^k, τ^β (μ + w))` as a polynomial in `(τ, w)`.
fn transform(f: &BiPoly, k: usize, beta: usize, weight: usize, lam: &Rational, mu: &Rational) -> BiPoly {
    let tau = BiPoly::u();
    let w = BiPoly::v();
    let u_val = tau.powu(k as u32).scale(lam);
    let v_val = &tau.powu(beta as u32) * &(&w + &BiPoly::constant(mu.clone()));
    f.compose(&[u_val, v_val])
        .div_var_pow(0, weight as u32)
        .expect("weight divides the transform")
}

/// Solves `g(τ, w(τ)) = 0`, `w(0) = 0`, for a simple root by Newton iteration.
fn hensel(g: &BiPoly, order: usize) -> Result<TruncSeries> {
    let gw = g.derivative(1);
    if gw.constant_term().is_zero() || !g.constant_term().is_zero() {
        return Err(Error::BlowupInconsistency("Hensel lifting at a non-simple root".into()));
    }
    let tau = TruncSeries::t(order);
    let mut w = TruncSeries::zero(order);
    let mut steps = 0;
    let mut prec = 1usize;
    while prec < order * 2 {
        let val = eval_poly(g, &[tau.clone(), w.clone()], order);
        let der = eval_poly(&gw, &[tau.clone(), w.clone()], order);
        let corr = val.mul(&der.inverse().expect("unit derivative"));
        w = w.sub(&corr).with_order(order);
        prec *= 2;
        steps += 1;
        if steps > 64 {
            break;
        }
    }
    let res = eval_poly(g, &[tau, w.clone()], order);
    if !res.is_zero() {
        return Err(Error::InsufficientTruncation(order));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> BiPoly {
        BiPoly::parse_uv(s).unwrap()
    }

    fn on_curve(f: &BiPoly, br: &Branch) -> bool {
        eval_poly(f, &[br.u.clone(), br.v.clone()], br.u.order().min(br.v.order())).is_zero()
    }

    #[test]
    fn cusp() {
        let f = b("v^2 - u^3");
        let br = puiseux_branches(&f, 32).unwrap();
        assert_eq!(br.len(), 1);
        assert_eq!(br[0].exponents(), (Some(2), Some(3)));
        assert!(on_curve(&f, &br[0]));
    }

    #[test]
    fn two_branches_of_v4_minus_u6() {
        // (v² − u³)(v² + u³) has v² + u³ with λ = −1
        let f = b("v^4 - u^6");
        let br = puiseux_branches(&f, 32).unwrap();
        assert_eq!(br.len(), 2);
        for x in &br {
            assert!(on_curve(&f, x));
            assert_eq!(x.multiplicity(), 2);
        }
    }

    #[test]
    fn axis_and_smooth_branches() {
        let f = b("u v - u^3 + v^3");
        let br = puiseux_branches(&f, 24).unwrap();
        assert_eq!(br.len(), 2);
        for x in &br {
            assert!(on_curve(&f, x));
        }
        let g = b("u v");
        let br = puiseux_branches(&g, 8).unwrap();
        assert_eq!(br.len(), 2);
    }

    #[test]
    fn non_trivial_scaling() {
        // v² = 2 u³: no rational square root of 2 needed thanks to λ
        let f = b("v^2 - 2 u^3");
        let br = puiseux_branches(&f, 16).unwrap();
        assert_eq!(br.len(), 1);
        assert!(on_curve(&f, &br[0]));
    }

    #[test]
    fn multiple_root_recursion() {
        // (v − u²)² − u⁵: one branch of multiplicity 2 via a second edge
        let f = &(b("v - u^2").powu(2)) - &b("u^5");
        let br = puiseux_branches(&f, 32).unwrap();
        assert_eq!(br.len(), 1);
        assert!(on_curve(&f, &br[0]));
        assert_eq!(br[0].exponents(), (Some(2), Some(4)));
    }

    #[test]
    fn irrational_coefficients_error() {
        // v² − 2u²: tangent directions ±√2
        assert!(puiseux_branches(&b("v^2 - 2 u^2"), 8).is_err());
    }

    #[test]
    fn non_reduced_error() {
        assert!(matches!(puiseux_branches(&b("v^2"), 8), Err(Error::NonReducedGerm)));
    }
}
