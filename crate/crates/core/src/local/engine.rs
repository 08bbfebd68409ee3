//! Branch data of an invariant curve at a point: for every local branch, the
//! multiplicity `i_p(F,B)` and the orders of the two coordinates along it.
//!
//! Non-degenerate points with rational eigenvalues are handled by a Newton
//! polygon check in eigen coordinates; everything else is blown up and the
//! data lifted back with the blow-up relation.

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use super::{blowup, eigenvalues, multiplicity_series_from, AffineGerm, Chart, Eigen};
use crate::error::{Error, Result};
use crate::exact::univariate::UPoly;
use crate::exact::{int, BiPoly, Rational};

pub const MAX_DEPTH: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchData {
    /// `i_p(F, B)`.
    pub i: u32,
    /// Order of `u` along the branch; `None` when the branch is `{u = 0}`.
    pub ord_u: Option<u32>,
    pub ord_v: Option<u32>,
}

impl BranchData {
    pub fn multiplicity(&self) -> u32 {
        self.ord_u.into_iter().chain(self.ord_v).min().expect("branch is not a point")
    }
}

pub fn branch_data(germ: &AffineGerm) -> Result<Vec<BranchData>> {
    rec(germ, 0)
}

fn ord_on_axis(curve: &BiPoly, axis_var: usize) -> Option<u32> {
    // order of C restricted to {axis_var = 0}
    curve.eval_var(axis_var, &int(0)).order()
}

fn rec(germ: &AffineGerm, depth: usize) -> Result<Vec<BranchData>> {
    if depth > MAX_DEPTH {
        return Err(Error::RecursionLimit(MAX_DEPTH));
    }
    let mc = germ.curve.order().ok_or(Error::NonReducedGerm)?;
    if mc == 0 {
        return Ok(Vec::new());
    }
    if !germ.is_singular() {
        if mc != 1 {
            return Err(Error::BranchNotInvariant);
        }
        return Ok(vec![BranchData {
            i: 0,
            ord_u: ord_on_axis(&germ.curve, 0),
            ord_v: ord_on_axis(&germ.curve, 1),
        }]);
    }
    if mc == 1 {
        return smooth_branch(germ).map(|b| vec![b]);
    }
    if let Ok(Eigen::Pair(l1, l2)) = eigenvalues(germ) {
        if !l1.is_zero() && !l2.is_zero() {
            if let Some(found) = newton_shortcut(germ, &l1, &l2)? {
                return Ok(found);
            }
        }
    }
    blowup_path(germ, depth)
}

fn smooth_branch(germ: &AffineGerm) -> Result<BranchData> {
    let ords = (ord_on_axis(&germ.curve, 0), ord_on_axis(&germ.curve, 1));
    // The tangent of an invariant smooth branch is an eigenvector; a nonzero
    // eigenvalue there means i = 1.
    let grad = |i: usize| {
        let mut e = [0u32; 2];
        e[i] = 1;
        germ.curve.coeff(&e)
    };
    let tau = [-grad(1), grad(0)];
    let j = germ.linear_part();
    let image = [&j[0][0] * &tau[0] + &j[0][1] * &tau[1], &j[1][0] * &tau[0] + &j[1][1] * &tau[1]];
    if !image[0].is_zero() || !image[1].is_zero() {
        return Ok(BranchData { i: 1, ord_u: ords.0, ord_v: ords.1 });
    }
    let found = multiplicity_series_from(germ, 16)?;
    let [(_, i)] = found.as_slice() else {
        return Err(Error::BlowupInconsistency("smooth curve with several branches".into()));
    };
    Ok(BranchData { i: *i, ord_u: ords.0, ord_v: ords.1 })
}

fn left_eigenvector(j: &[[Rational; 2]; 2], l: &Rational) -> [Rational; 2] {
    let k = [
        [&j[0][0] - l, j[0][1].clone()],
        [j[1][0].clone(), &j[1][1] - l],
    ];
    if !(k[0][0].is_zero() && k[1][0].is_zero()) {
        [k[1][0].clone(), -k[0][0].clone()]
    } else {
        [k[1][1].clone(), -k[0][1].clone()]
    }
}

/// Quasi-binomial check: pure powers `V^A`, `U^B`, all terms on or above the
/// segment between them and a square-free edge polynomial.
pub(crate) fn quasi_binomial(c: &BiPoly) -> Option<(u32, u32)> {
    let a = c.terms().filter(|(e, _)| e[0] == 0).map(|(e, _)| e[1]).min()?;
    let b = c.terms().filter(|(e, _)| e[1] == 0).map(|(e, _)| e[0]).min()?;
    if a == 0 || b == 0 {
        return None;
    }
    let (a64, b64) = (a as u64, b as u64);
    if c.terms().any(|(e, _)| (e[0] as u64) * a64 + (e[1] as u64) * b64 < a64 * b64) {
        return None;
    }
    let g = a.gcd(&b);
    let step = a / g;
    let mut coeffs = vec![Rational::zero(); g as usize + 1];
    for (e, k) in c.terms() {
        if (e[0] as u64) * a64 + (e[1] as u64) * b64 == a64 * b64 {
            coeffs[(e[1] / step) as usize] = k.clone();
        }
    }
    let edge = UPoly::new(coeffs);
    if edge.gcd(&edge.derivative()).degree() != Some(0) {
        return None;
    }
    Some((a, b))
}

fn newton_shortcut(germ: &AffineGerm, l1: &Rational, l2: &Rational) -> Result<Option<Vec<BranchData>>> {
    let j = germ.linear_part();
    let one = int(1);
    let zero = int(0);
    let l = if l1 == l2 {
        if !(j[0][1].is_zero() && j[1][0].is_zero() && j[0][0] == j[1][1]) {
            return Err(Error::ResonantNode);
        }
        [[one.clone(), zero.clone()], [zero.clone(), one.clone()]]
    } else {
        [left_eigenvector(&j, l1), left_eigenvector(&j, l2)]
    };
    let det = &l[0][0] * &l[1][1] - &l[0][1] * &l[1][0];
    let inv = [
        [&l[1][1] / &det, -&l[0][1] / &det],
        [-&l[1][0] / &det, &l[0][0] / &det],
    ];
    let (uu, vv) = (BiPoly::u(), BiPoly::v());
    let lin = |row: &[Rational; 2]| &uu.scale(&row[0]) + &vv.scale(&row[1]);
    let c = germ.curve.compose(&[lin(&inv[0]), lin(&inv[1])]);
    let Some((a, b)) = quasi_binomial(&c) else {
        return Ok(None);
    };
    let g = a.gcd(&b);
    let (ord_cap_u, ord_cap_v) = (a / g, b / g);
    let mut out = Vec::new();
    if ord_cap_u == ord_cap_v {
        // g smooth branches with distinct tangents.
        let cone = germ.curve.homogeneous_part(g);
        let tangent_to_u_axis = cone.coeff(&[0, g]).is_zero();
        let tangent_to_v_axis = cone.coeff(&[g, 0]).is_zero();
        let iu = ord_on_axis(&germ.curve, 0);
        let iv = ord_on_axis(&germ.curve, 1);
        let special = |i: Option<u32>| i.map(|x| x - (g - 1));
        for k in 0..g {
            let ord_u = if tangent_to_u_axis && k == 0 { special(iu) } else { Some(1) };
            let ord_v = if tangent_to_v_axis && k == g - 1 { special(iv) } else { Some(1) };
            out.push(BranchData { i: 1, ord_u, ord_v });
        }
    } else {
        let ord = |row: &[Rational; 2]| {
            let mut best: Option<u32> = None;
            if !row[0].is_zero() {
                best = Some(ord_cap_u);
            }
            if !row[1].is_zero() {
                best = Some(best.map_or(ord_cap_v, |x| x.min(ord_cap_v)));
            }
            best
        };
        for _ in 0..g {
            out.push(BranchData { i: 1, ord_u: ord(&inv[0]), ord_v: ord(&inv[1]) });
        }
    }
    Ok(Some(out))
}

fn blowup_path(germ: &AffineGerm, depth: usize) -> Result<Vec<BranchData>> {
    let mc = germ.curve.order().unwrap();
    let cone = germ.curve.homogeneous_part(mc);
    let mut out = Vec::new();

    let rx = blowup(germ, Chart::X)?;
    let k = if rx.dicritical { rx.nu } else { rx.nu - 1 };
    let on_e = UPoly::from_poly(&rx.germ.curve.eval_var(0, &int(0)), 1);
    let roots = on_e.rational_roots();
    let found: usize = roots.iter().map(|(_, m)| m).sum();
    if Some(found) != on_e.degree() {
        return Err(Error::IrrationalTangent);
    }
    for (t0, _) in roots {
        let sub = rx.germ.translate(&int(0), &t0);
        for bd in rec(&sub, depth + 1)? {
            let m = bd.ord_u.ok_or_else(|| Error::BlowupInconsistency("branch inside E".into()))?;
            let ord_v = if t0.is_zero() { bd.ord_v.map(|o| o + m) } else { Some(m) };
            out.push(BranchData { i: bd.i + m * k, ord_u: Some(m), ord_v });
        }
    }

    if cone.coeff(&[0, mc]).is_zero() {
        let ry = blowup(germ, Chart::Y)?;
        for bd in rec(&ry.germ, depth + 1)? {
            let m = bd.ord_v.ok_or_else(|| Error::BlowupInconsistency("branch inside E".into()))?;
            out.push(BranchData { i: bd.i + m * k, ord_u: bd.ord_u.map(|o| o + m), ord_v: Some(m) });
        }
    }

    let total: u32 = out.iter().map(|b| b.multiplicity()).sum();
    if total != mc {
        return Err(Error::BlowupInconsistency(format!(
            "branch multiplicities sum to {total}, curve has multiplicity {mc}"
        )));
    }
    Ok(out)
}
