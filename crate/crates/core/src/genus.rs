//! Genus of the generic fiber: the index equation of Cerveau and Lins-Neto
//! assembled from local branch data, and the closed forms for each case of
//! the two families.

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::univariate::UPoly;
use crate::exact::{int, ProjPoint, Rational, TriPoly};
use crate::foliation::{singular_points, Family, FoliationSpec, LotkaVolterraParams, ReversibleParams};
use crate::local::{branch_data, AffineGerm, BranchData};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointReport {
    pub point: ProjPoint,
    pub branches: Vec<BranchData>,
}

impl PointReport {
    pub fn index_sum(&self) -> u32 {
        self.branches.iter().map(|b| b.i).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusReport {
    pub curve_degree: u32,
    pub foliation_degree: u32,
    /// Fiber value `t` of `N − tD` used for the computation, if any.
    pub fiber: Option<String>,
    pub points: Vec<PointReport>,
    pub chi: i64,
    pub genus: u32,
}

fn genus_from_chi(chi: i64) -> Result<u32> {
    if chi.is_odd() {
        return Err(Error::GenusInconsistency(format!("odd Euler characteristic {chi}")));
    }
    let g = (2 - chi) / 2;
    if g < 0 {
        return Err(Error::GenusInconsistency(format!("negative genus from χ = {chi}")));
    }
    Ok(g as u32)
}

/// Solves `χ + m(d − 1) = Σ i_p(F, B)` for χ and the genus.
pub fn assemble(m: u32, d: u32, points: Vec<PointReport>) -> Result<GenusReport> {
    let sum: i64 = points.iter().map(|p| p.index_sum() as i64).sum();
    let chi = sum - m as i64 * (d as i64 - 1);
    let genus = genus_from_chi(chi)?;
    Ok(GenusReport { curve_degree: m, foliation_degree: d, fiber: None, points, chi, genus })
}

/// `Π fᵢ^eᵢ` of the family's first integral.
pub fn integral_factors(spec: &FoliationSpec) -> Result<Vec<(TriPoly, i64)>> {
    let (x, y, z) = (TriPoly::x(), TriPoly::y(), TriPoly::z());
    Ok(match &spec.family {
        Family::Reversible(r) => vec![(x, r.p), (r.conic(), r.q), (z, -(r.p + 2 * r.q))],
        Family::LotkaVolterra(l) => vec![(x, l.p), (y, l.q), (l.line(), l.r), (z, -(l.p + l.q + l.r))],
        Family::Custom => return Err(Error::CustomFamily),
    })
}

fn coordinate_index(f: &TriPoly) -> Option<usize> {
    (0..3).find(|&i| *f == TriPoly::var(i))
}

/// Rational points of `{x_i = 0} ∩ {g = 0}`.
fn points_on_axis(i: usize, g: &TriPoly) -> Result<Vec<ProjPoint>> {
    let h = g.eval_var(i, &int(0));
    if h.is_zero() {
        return Err(Error::Parameter("factor contains a coordinate line".into()));
    }
    let others: Vec<usize> = (0..3).filter(|&k| k != i).collect();
    let (j, k) = (others[0], others[1]);
    let deg = h.degree().unwrap_or(0) as usize;
    let dehom = UPoly::from_poly(&h.eval_var(k, &int(1)), j);
    let roots = dehom.rational_roots();
    let found: usize = roots.iter().map(|(_, m)| m).sum();
    if Some(found) != dehom.degree() {
        return Err(Error::NonRationalPoint(format!("on x{i} = 0 with {g}")));
    }
    let mut out = Vec::new();
    let mk = |vj: Rational, vk: Rational| {
        let mut c = [int(0), int(0), int(0)];
        c[j] = vj;
        c[k] = vk;
        ProjPoint::new(c[0].clone(), c[1].clone(), c[2].clone())
    };
    for (r, _) in roots {
        out.push(mk(r, int(1))?);
    }
    if dehom.degree().unwrap_or(0) < deg {
        out.push(mk(int(1), int(0))?);
    }
    Ok(out)
}

/// Points where numerator and denominator of the first integral both vanish.
pub fn base_points(spec: &FoliationSpec) -> Result<Vec<ProjPoint>> {
    let factors = integral_factors(spec)?;
    let mut out: Vec<ProjPoint> = Vec::new();
    for (f, e) in &factors {
        for (g, h) in &factors {
            if *e <= 0 || *h >= 0 || f.degree() == Some(0) || g.degree() == Some(0) {
                continue;
            }
            let pts = if let Some(i) = coordinate_index(f) {
                points_on_axis(i, g)?
            } else if let Some(i) = coordinate_index(g) {
                points_on_axis(i, f)?
            } else {
                return Err(Error::Parameter("two non-coordinate factors".into()));
            };
            for p in pts {
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
    }
    Ok(out)
}

/// Whether `N − tD` passes through a singular point of the foliation that is
/// not a base point.
pub fn is_critical_value(spec: &FoliationSpec, t: &Rational) -> Result<bool> {
    let (n, d) = integral(spec)?;
    critical_with(spec, &n, &d, t)
}

fn critical_with(spec: &FoliationSpec, n: &TriPoly, d: &TriPoly, t: &Rational) -> Result<bool> {
    match &spec.family {
        Family::Reversible(_) => {
            // Off the coordinate lines x = 0 and z = 0 the remaining singular
            // points lie on y = 0: critical points of f restricted there.
            let g = UPoly::from_poly(&n.eval_var(1, &int(0)).eval_var(2, &int(1)), 0);
            let h = UPoly::from_poly(&d.eval_var(1, &int(0)).eval_var(2, &int(1)), 0);
            let w = sub(&mul(&g.derivative(), &h), &mul(&g, &h.derivative()));
            let ft = sub(&g, &scale(&h, t));
            if w.is_zero() {
                return Ok(false);
            }
            let mut common = w.gcd(&ft);
            loop {
                let c = common.gcd(&h);
                if c.degree().unwrap_or(0) == 0 {
                    break;
                }
                common = common.div_rem(&c).0;
            }
            Ok(common.degree().unwrap_or(0) > 0)
        }
        _ => {
            for p in singular_points(spec)? {
                let dv = d.eval(p.coords());
                let nv = n.eval(p.coords());
                if !dv.is_zero() && &nv / &dv == *t {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}

fn mul(a: &UPoly, b: &UPoly) -> UPoly {
    let (ac, bc) = (a.coeffs(), b.coeffs());
    if ac.is_empty() || bc.is_empty() {
        return UPoly::zero();
    }
    let mut out = vec![Rational::zero(); ac.len() + bc.len() - 1];
    for (i, x) in ac.iter().enumerate() {
        for (j, y) in bc.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    UPoly::new(out)
}

fn scale(a: &UPoly, c: &Rational) -> UPoly {
    UPoly::new(a.coeffs().iter().map(|x| x * c).collect())
}

fn sub(a: &UPoly, b: &UPoly) -> UPoly {
    let n = a.coeffs().len().max(b.coeffs().len());
    let get = |p: &UPoly, i: usize| p.coeffs().get(i).cloned().unwrap_or_else(Rational::zero);
    UPoly::new((0..n).map(|i| get(a, i) - get(b, i)).collect())
}

const FIBER_VALUES: [i64; 10] = [1, 2, 3, 5, 7, 11, 13, 17, 19, 23];

/// The first `k` non-critical fiber values `t` of `N − tD`.
fn fiber_values(spec: &FoliationSpec, n: &TriPoly, d: &TriPoly, k: usize) -> Result<Vec<Rational>> {
    let mut out = Vec::new();
    for t in FIBER_VALUES {
        let t = int(t);
        if !critical_with(spec, n, d, &t)? {
            out.push(t);
            if out.len() == k {
                break;
            }
        }
    }
    Ok(out)
}

fn integral(spec: &FoliationSpec) -> Result<(TriPoly, TriPoly)> {
    match &spec.family {
        Family::Reversible(r) => Ok(r.first_integral()),
        Family::LotkaVolterra(l) => Ok(l.first_integral()),
        Family::Custom => Err(Error::CustomFamily),
    }
}

/// The fiber `N − tD` for the first non-critical `t` among small primes.
pub fn generic_fiber(spec: &FoliationSpec) -> Result<(TriPoly, Rational)> {
    let (n, d) = integral(spec)?;
    let t = fiber_values(spec, &n, &d, 1)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::GenusInconsistency("no regular fiber value found".into()))?;
    Ok((&n - &d.scale(&t), t))
}

/// The fiber `N − tD` at a chosen value.
pub fn fiber_at(spec: &FoliationSpec, t: &Rational) -> Result<TriPoly> {
    let (n, d) = integral(spec)?;
    Ok(&n - &d.scale(t))
}

/// Branch data at every base point of the generic fiber.
pub fn branch_reports(spec: &FoliationSpec, curve: &TriPoly) -> Result<Vec<PointReport>> {
    let (form, _) = spec.saturated();
    base_points(spec)?
        .into_iter()
        .map(|pt| {
            let germ = AffineGerm::at_point(&form, curve, &pt);
            Ok(PointReport { branches: branch_data(&germ)?, point: pt })
        })
        .collect()
}

const FIBER_ATTEMPTS: usize = 3;

/// Genus by the index equation, with branch data from the local engine.
///
/// A fiber that is special at a base point (reducible, or with a degenerate
/// branch) shows up as an engine error or an impossible χ; the next fiber
/// value is tried then.
pub fn genus_cl(spec: &FoliationSpec) -> Result<GenusReport> {
    let (n, dpoly) = integral(spec)?;
    let (_, d) = spec.saturated();
    let mut last = Error::GenusInconsistency("no regular fiber value found".into());
    for t in fiber_values(spec, &n, &dpoly, FIBER_ATTEMPTS)? {
        let curve = &n - &dpoly.scale(&t);
        let m = curve.degree().unwrap_or(0);
        let attempt = branch_reports(spec, &curve).and_then(|pts| assemble(m, d, pts));
        match attempt {
            Ok(mut report) => {
                report.fiber = Some(t.to_string());
                return Ok(report);
            }
            Err(e @ (Error::NonRationalPoint(_) | Error::CustomFamily | Error::Parameter(_))) => return Err(e),
            Err(e) => last = e,
        }
    }
    Err(last)
}

/// Cases of the reversible family, after normalizing to `p < 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RevCase {
    /// `p + 2q > 0`, `a ≠ 0`, `c ≠ 0`.
    AC,
    /// `p + 2q > 0`, `a ≠ 0`, `c = 0`.
    A,
    /// `p + 2q > 0`, `a = c = 0`.
    Zero,
    /// `p + 2q < 0`, `c ≠ 0`.
    NegC,
    /// `p + 2q < 0`, `c = 0`.
    Neg0,
}

impl RevCase {
    pub const ALL: [RevCase; 5] = [RevCase::AC, RevCase::A, RevCase::Zero, RevCase::NegC, RevCase::Neg0];

    pub fn name(self) -> &'static str {
        match self {
            RevCase::AC => "ac",
            RevCase::A => "a",
            RevCase::Zero => "00",
            RevCase::NegC => "neg-c",
            RevCase::Neg0 => "neg-0",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown reversible case {s}")))
    }

    /// `(a = 0, c = 0)` of a representative instance.
    pub fn zeros(self) -> (bool, bool) {
        match self {
            RevCase::AC | RevCase::NegC => (false, false),
            RevCase::A | RevCase::Neg0 => (false, true),
            RevCase::Zero => (true, true),
        }
    }

    /// Whether `(p, q)` lies in the case's sign domain.
    pub fn admits(self, p: i64, q: i64) -> bool {
        let pos = p + 2 * q > 0;
        p < 0 && q > 0 && p.gcd(&q) == 1 && matches!(self, RevCase::AC | RevCase::A | RevCase::Zero) == pos
    }
}

/// Applies `[x:y:z] ↦ [z:y:x]` when needed so that `p < 0`, and when
/// `p + 2q > 0` also so that `a = 0` implies `c = 0`. Returns the new
/// `(p, a = 0, c = 0)` and the case.
pub fn reversible_case(p: i64, q: i64, a_zero: bool, c_zero: bool) -> Result<(i64, RevCase)> {
    if p == 0 || q <= 0 || p + 2 * q == 0 {
        return Err(Error::Parameter(format!("degenerate reversible exponents ({p},{q})")));
    }
    let (mut p, mut a0, mut c0) = (p, a_zero, c_zero);
    if p > 0 {
        p = -p - 2 * q;
        std::mem::swap(&mut a0, &mut c0);
    }
    if p + 2 * q > 0 && a0 && !c0 {
        p = -p - 2 * q;
        std::mem::swap(&mut a0, &mut c0);
    }
    let case = match (p + 2 * q > 0, a0, c0) {
        (true, false, false) => RevCase::AC,
        (true, false, true) => RevCase::A,
        (true, true, true) => RevCase::Zero,
        (true, true, false) => unreachable!(),
        (false, _, false) => RevCase::NegC,
        (false, _, true) => RevCase::Neg0,
    };
    Ok((p, case))
}

fn g(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Closed-form genus in the reversible family, `p < 0`.
pub fn genus_reversible(p: i64, q: i64, case: RevCase) -> Result<u32> {
    if !case.admits(p, q) {
        return Err(Error::Parameter(format!("(p,q) = ({p},{q}) outside case {}", case.name())));
    }
    // 2 − 2g for each case.
    let two_minus = match case {
        RevCase::AC => 2 - 2 * (q - 1),
        RevCase::A if p + q >= 0 => 2 + g(2 * q, -p) - p - 2 * q,
        RevCase::A => 2 + g(q, -2 * p) + q - 2 * q,
        RevCase::Zero => g(2 * q, -p) + g(q, -2 * p) - (p + q).abs(),
        RevCase::NegC => p + 2 + g(-p, 2 * q),
        RevCase::Neg0 => p + q + g(-p, 2 * q) + g(q, -2 * p),
    };
    genus_from_chi(two_minus)
}

/// Cases of the Lotka-Volterra family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LvCase {
    /// `ab ≠ 0`, `p, q > 0`.
    I,
    /// `abc ≠ 0`, `p < 0 < q`, `p + q + r > 0`.
    II,
    /// `a = 0`, `bc ≠ 0`, `p, q > 0`.
    III,
}

impl LvCase {
    pub const ALL: [LvCase; 3] = [LvCase::I, LvCase::II, LvCase::III];

    pub fn name(self) -> &'static str {
        match self {
            LvCase::I => "I",
            LvCase::II => "II",
            LvCase::III => "III",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown Lotka-Volterra case {s}")))
    }

    pub fn admits(self, p: i64, q: i64, r: i64) -> bool {
        let base = r > 0 && q > 0 && p.gcd(&q).gcd(&r) == 1;
        base && match self {
            LvCase::I | LvCase::III => p > 0,
            LvCase::II => p < 0 && p + q + r > 0,
        }
    }

    /// Which coefficient is zero in a representative instance.
    pub fn zero(self) -> Option<char> {
        match self {
            LvCase::III => Some('a'),
            _ => None,
        }
    }
}

/// Closed-form genus in the Lotka-Volterra family.
pub fn genus_lv(p: i64, q: i64, r: i64, case: LvCase) -> Result<u32> {
    if !case.admits(p, q, r) {
        return Err(Error::Parameter(format!("(p,q,r) = ({p},{q},{r}) outside case {}", case.name())));
    }
    let n = p + q + r;
    let two_minus = match case {
        LvCase::I => g(q, p + r) + g(p, q + r) + g(r, p + q) - n,
        LvCase::II => g(-p, q) + g(-p, r) + g(q, n) + g(r, n) - (q + r),
        LvCase::III => g(p, q) + g(p, r) + g(p, q + r) - p,
    };
    genus_from_chi(two_minus)
}

/// The case an LV parameter set falls in, without applying any automorphism.
pub fn lv_case(l: &LotkaVolterraParams) -> Result<LvCase> {
    let (a0, b0, c0) = (l.a.is_zero(), l.b.is_zero(), l.c.is_zero());
    let case = if a0 && !b0 && !c0 {
        LvCase::III
    } else if !a0 && !b0 && l.p > 0 && l.q > 0 {
        LvCase::I
    } else if !a0 && !b0 && !c0 {
        LvCase::II
    } else {
        return Err(Error::Parameter("outside the normalized Lotka-Volterra cases".into()));
    };
    if !case.admits(l.p, l.q, l.r) {
        return Err(Error::Parameter(format!(
            "(p,q,r) = ({},{},{}) outside case {}",
            l.p,
            l.q,
            l.r,
            case.name()
        )));
    }
    Ok(case)
}

pub fn closed_form_reversible(r: &ReversibleParams) -> Result<u32> {
    let (p, case) = reversible_case(r.p, r.q, r.a.is_zero(), r.c.is_zero())?;
    genus_reversible(p, r.q, case)
}

/// Closed-form genus of a family member.
pub fn closed_form_genus(spec: &FoliationSpec) -> Result<u32> {
    match &spec.family {
        Family::Reversible(r) => closed_form_reversible(r),
        Family::LotkaVolterra(l) => genus_lv(l.p, l.q, l.r, lv_case(l)?),
        Family::Custom => Err(Error::CustomFamily),
    }
}

/// Genus one.
pub fn elliptic_predicate(spec: &FoliationSpec) -> Result<bool> {
    Ok(closed_form_genus(spec)? == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foliation::{build_lv_form, build_reversible_form};

    fn rev(p: i64, q: i64, case: RevCase) -> FoliationSpec {
        let (a0, c0) = case.zeros();
        build_reversible_form(&ReversibleParams::instance(p, q, a0, c0).unwrap()).unwrap()
    }

    fn lv(p: i64, q: i64, r: i64, case: LvCase) -> FoliationSpec {
        build_lv_form(&LotkaVolterraParams::instance(p, q, r, case.zero()).unwrap()).unwrap()
    }

    #[test]
    fn reversible_closed_forms() {
        assert_eq!(genus_reversible(-1, 2, RevCase::AC).unwrap(), 1);
        assert_eq!(genus_reversible(-3, 2, RevCase::AC).unwrap(), 1);
        assert_eq!(genus_reversible(-1, 3, RevCase::AC).unwrap(), 2);
        assert_eq!(genus_reversible(-7, 4, RevCase::A).unwrap(), 1);
        assert_eq!(genus_reversible(-2, 3, RevCase::A).unwrap(), 1);
        assert_eq!(genus_reversible(-5, 2, RevCase::Neg0).unwrap(), 1);
        assert_eq!(genus_reversible(-4, 1, RevCase::NegC).unwrap(), 1);
        assert_eq!(genus_reversible(-8, 5, RevCase::Zero).unwrap(), 1);
        assert_eq!(genus_reversible(-1, 1, RevCase::AC).unwrap(), 0);
        assert!(genus_reversible(1, 2, RevCase::AC).is_err());
    }

    #[test]
    fn lv_closed_forms() {
        assert_eq!(genus_lv(1, 2, 3, LvCase::I).unwrap(), 1);
        assert_eq!(genus_lv(1, 1, 4, LvCase::I).unwrap(), 2);
        assert_eq!(genus_lv(1, 1, 3, LvCase::I).unwrap(), 2);
        assert_eq!(genus_lv(-2, 1, 3, LvCase::II).unwrap(), 1);
        assert_eq!(genus_lv(6, 9, 10, LvCase::III).unwrap(), 1);
        assert!(genus_lv(-1, 1, 1, LvCase::I).is_err());
    }

    #[test]
    fn case_normalization() {
        assert_eq!(reversible_case(1, 2, false, false).unwrap(), (-5, RevCase::NegC));
        assert_eq!(reversible_case(-1, 2, true, false).unwrap(), (-3, RevCase::A));
        assert_eq!(reversible_case(-3, 2, true, true).unwrap(), (-3, RevCase::Zero));
    }

    #[test]
    fn base_points_of_reversible_instance() {
        let s = rev(-1, 2, RevCase::AC);
        let pts = base_points(&s).unwrap();
        // x = 0 and z = 0 against the conic y² − x² + xz − z²
        assert_eq!(pts.len(), 4);
        for p in [[0, -1, 1], [0, 1, 1], [1, -1, 0], [1, 1, 0]] {
            assert!(pts.contains(&ProjPoint::from_ints(p[0], p[1], p[2])));
        }
    }

    #[test]
    fn cl_matches_closed_form_on_known_members() {
        let cases = [
            rev(-1, 2, RevCase::AC),
            rev(-1, 3, RevCase::AC),
            rev(-2, 3, RevCase::A),
            rev(-7, 4, RevCase::A),
            rev(-3, 2, RevCase::Zero),
            rev(-4, 1, RevCase::NegC),
            rev(-5, 2, RevCase::Neg0),
            rev(-1, 1, RevCase::A),
            lv(1, 1, 1, LvCase::I),
            lv(1, 1, 4, LvCase::I),
            lv(-2, 1, 3, LvCase::II),
            lv(3, 1, 1, LvCase::III),
        ];
        for s in cases {
            let cl = genus_cl(&s).unwrap();
            assert_eq!(cl.genus, closed_form_genus(&s).unwrap(), "{:?}", s.family);
        }
    }

    #[test]
    fn report_bookkeeping() {
        let r = genus_cl(&rev(-1, 2, RevCase::AC)).unwrap();
        assert_eq!((r.curve_degree, r.foliation_degree), (4, 2));
        assert_eq!(r.points.len(), 4);
        assert!(r.points.iter().all(|p| p.branches.len() == 1 && p.index_sum() == 1));
        assert_eq!(r.chi, 0);
    }
}
