//! Pencils `ω₀ + α·ω_∞` of foliations on the projective plane: members,
//! tangency polynomial, its decomposition and the invariance of each
//! component.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{int, BiPoly, OneForm, Poly, Rational, TriPoly};
use crate::foliation::{conic, reversible_form, SymPoly};

const XYZ: [&str; 3] = ["x", "y", "z"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pencil {
    pub id: String,
    pub omega0: OneForm,
    pub omega_inf: OneForm,
    /// Irreducible factors expected in the tangency polynomial, besides the
    /// coordinate lines.
    pub candidates: Vec<TriPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Alpha {
    Finite(Rational),
    Infinity,
}

impl Pencil {
    pub fn new(id: &str, omega0: OneForm, omega_inf: OneForm) -> Result<Self> {
        for w in [&omega0, &omega_inf] {
            if !w.radial_contraction().is_zero() {
                return Err(Error::RadialContraction);
            }
        }
        let (d0, d1) = (omega0.coeff_degree().unwrap_or(0), omega_inf.coeff_degree().unwrap_or(0));
        if d0 != d1 {
            return Err(Error::DegreeMismatch(d0, d1));
        }
        if omega0.wedge_vanishes(&omega_inf) {
            return Err(Error::ProportionalForms);
        }
        Ok(Self { id: id.into(), omega0, omega_inf, candidates: Vec::new() })
    }

    /// Both generators given in the chart `z = 1` as `(P, Q)` for `P dx + Q dy`.
    pub fn from_affine(id: &str, omega0: (&str, &str), omega_inf: (&str, &str)) -> Result<Self> {
        let proj = |(p, q): (&str, &str)| -> Result<OneForm> {
            Ok(OneForm::projectivize(&BiPoly::parse_uv(p)?, &BiPoly::parse_uv(q)?))
        };
        Self::new(id, proj(omega0)?, proj(omega_inf)?)
    }

    pub fn with_candidates(mut self, candidates: &[&str]) -> Result<Self> {
        self.candidates = candidates.iter().map(|s| TriPoly::parse(s)).collect::<Result<_>>()?;
        Ok(self)
    }

    /// Degree of the foliations: coefficient degree minus one.
    pub fn degree(&self) -> u32 {
        self.omega0.coeff_degree().unwrap_or(1) - 1
    }

    pub fn member(&self, alpha: &Alpha) -> OneForm {
        match alpha {
            Alpha::Finite(a) => &self.omega0 + &self.omega_inf.scale(a),
            Alpha::Infinity => self.omega_inf.clone(),
        }
    }

    /// `ω₀ + t·ω_∞` with `t` as a fourth variable.
    pub fn member_symbolic(&self) -> OneForm<4> {
        let lift = |w: &OneForm| w.map_coeffs(|c| c.map_exponents(|e| [e[0], e[1], e[2], 0]));
        let t = Poly::<4>::var(3);
        &lift(&self.omega0) + &lift(&self.omega_inf).mul_poly(&t)
    }

    pub fn tangency(&self) -> Result<TriPoly> {
        let t = self.omega0.wedge(&self.omega_inf)?;
        if t.is_zero() {
            return Err(Error::ProportionalForms);
        }
        Ok(t)
    }

    pub fn invariance(&self, f: &TriPoly) -> Invariance {
        let gens = [("omega0", &self.omega0), ("omega_inf", &self.omega_inf)];
        let holds: Vec<&str> = gens.iter().filter(|(_, w)| w.leaves_invariant(f)).map(|(n, _)| *n).collect();
        match holds.len() {
            2 => Invariance::InvariantAll,
            0 => Invariance::NonInvariant,
            _ => Invariance::InvariantSome(holds.into_iter().map(String::from).collect()),
        }
    }

    pub fn analyze(&self) -> Result<PencilReport> {
        let t = self.tangency()?;
        let divisor = decompose(&t, &self.candidates)?;
        let components = divisor
            .factors
            .iter()
            .map(|(f, m)| ComponentReport {
                factor: f.to_text(&XYZ),
                multiplicity: *m,
                invariance: self.invariance(f),
            })
            .collect();
        Ok(PencilReport {
            id: self.id.clone(),
            degree: self.degree(),
            tangency: t.to_text(&XYZ),
            tangency_degree: t.degree().unwrap_or(0),
            constant: divisor.constant.to_string(),
            components,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "verdict", content = "generators")]
pub enum Invariance {
    InvariantAll,
    InvariantSome(Vec<String>),
    NonInvariant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangencyDivisor {
    pub factors: Vec<(TriPoly, u32)>,
    pub constant: Rational,
}

impl TangencyDivisor {
    pub fn product(&self) -> TriPoly {
        self.factors
            .iter()
            .fold(TriPoly::constant(self.constant.clone()), |acc, (f, m)| &acc * &f.powu(*m))
    }
}

/// Peels off coordinate lines, then each candidate to its full multiplicity;
/// anything non-constant left over is an error carrying the remainder.
pub fn decompose(t: &TriPoly, candidates: &[TriPoly]) -> Result<TangencyDivisor> {
    let mut rest = t.clone();
    let mut factors = Vec::new();
    for i in 0..3 {
        let k = rest.var_valuation(i);
        if k > 0 {
            rest = rest.div_var_pow(i, k).expect("valuation divides");
            factors.push((TriPoly::var(i), k));
        }
    }
    for c in candidates {
        if c.degree().unwrap_or(0) == 0 || (0..3).any(|i| c.is_proportional(&TriPoly::var(i))) {
            continue;
        }
        let mut k = 0;
        while let Some(q) = exact_quotient(&rest, c) {
            rest = q;
            k += 1;
        }
        if k > 0 {
            factors.push((c.clone(), k));
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        return Err(Error::UnfactoredRemainder(rest));
    }
    Ok(TangencyDivisor { factors, constant: rest.constant_term() })
}

fn exact_quotient(f: &TriPoly, g: &TriPoly) -> Option<TriPoly> {
    let q = f.divides_into(g)?;
    (&q * g == *f).then_some(q)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub factor: String,
    pub multiplicity: u32,
    pub invariance: Invariance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PencilReport {
    pub id: String,
    pub degree: u32,
    pub tangency: String,
    pub tangency_degree: u32,
    pub constant: String,
    pub components: Vec<ComponentReport>,
}

/// `η = x z² dx − x² z dz`.
pub fn example_eta<const N: usize>() -> OneForm<N> {
    let (x, z) = (Poly::<N>::var(0), Poly::<N>::var(2));
    OneForm::new(&x * &(&z * &z), Poly::zero(), -(&(&x * &x) * &z))
}

/// The reversible form with `(p,q) = (−1,2)` and `b = 0`.
pub fn example_omega<const N: usize>(a: &Poly<N>, c: &Poly<N>) -> OneForm<N> {
    reversible_form(-1, 2, a, &Poly::zero(), c)
}

/// `H_α = (y² + a x² + α x z + c z²)² / (x z³)` over `(x, y, z, a, α, c)`.
pub fn example_first_integral() -> (SymPoly, SymPoly) {
    let v = SymPoly::var;
    let q = conic(&v(3), &v(4), &v(5));
    (&q * &q, &v(0) * &v(2).powu(3))
}

/// Example pencil over `(x, y, z, a, α, c)`: `(ω + α η, η)`.
pub fn example_symbolic() -> (OneForm<6>, OneForm<6>) {
    let v = SymPoly::var;
    let omega = example_omega(&v(3), &v(5));
    let eta = example_eta::<6>();
    (&omega + &eta.mul_poly(&v(4)), eta)
}

pub fn example_pencil(a: &Rational, c: &Rational) -> Result<Pencil> {
    let k = |r: &Rational| TriPoly::constant(r.clone());
    Pencil::new("reversible-pencil", example_omega(&k(a), &k(c)), example_eta())
}

pub const BUILTIN_IDS: [&str; 5] = ["reversible-pencil", "lins-neto-p2", "lins-neto-p3", "lins-neto-p4", "lins-neto-p3-prime"];

pub fn builtin(id: &str) -> Result<Pencil> {
    match id {
        "reversible-pencil" => example_pencil(&int(-1), &int(-1)),
        "lins-neto-p2" => Pencil::from_affine(
            id,
            ("-6 y + 12 x y", "4 x - 9 x^2 + y^2"),
            ("-3 x^2 + 3 y^2", "2 y - 4 x y"),
        )?
        .with_candidates(&["9 x^4 - 4 x^3 z + 6 x^2 y^2 - 12 x y^2 z + y^4 + 4 y^2 z^2"]),
        "lins-neto-p3" => Pencil::from_affine(
            id,
            ("2 y + 3 x y^2 - x^3 y", "-x + 2 y^2 - 4 x^2 y + x^4"),
            ("-3 x y + x^3 - 2 y^3", "2 y - x^2 + x y^2"),
        )?
        .with_candidates(&["x - y - z", "x^2 - 4 y z", "x^2 - y z", "x^2 + x y + x z + y^2 - y z + z^2"]),
        "lins-neto-p4" => Pencil::from_affine(
            id,
            ("y - y^4", "x^4 - x"),
            ("x^2 - x^2 y^3", "x^3 y^2 - y^2"),
        )?
        .with_candidates(&["y - z", "y^2 + y z + z^2", "x - y", "x - z", "x^2 + x y + y^2", "x^2 + x z + z^2"]),
        "lins-neto-p3-prime" => Pencil::from_affine(
            id,
            ("2 y - 2 y^3", "-4 x + x^3 + 3 x y^2"),
            ("2 x - 2 x y^2", "x^2 y - y^3"),
        )?
        .with_candidates(&["y - z", "y + z", "x^2 - 2 x z + y^2", "x^2 + 2 x z + y^2"]),
        _ => Err(Error::Parse(format!("unknown pencil {id}"))),
    }
}

pub fn builtin_pencils() -> Vec<Pencil> {
    BUILTIN_IDS.iter().map(|id| builtin(id).expect("built-in pencil")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::form::is_first_integral;
    use crate::exact::{rat, ProjPoint};
    use crate::local::{eigenvalues, AffineGerm};

    fn t(s: &str) -> TriPoly {
        TriPoly::parse(s).unwrap()
    }

    #[test]
    fn example_tangency_and_invariance() {
        let p = builtin("reversible-pencil").unwrap();
        let tang = p.tangency().unwrap();
        assert!(tang.is_proportional(&t("x^2 y z^2")));
        let d = decompose(&tang, &[]).unwrap();
        assert_eq!(d.factors, vec![(t("x"), 2), (t("y"), 1), (t("z"), 2)]);
        assert_eq!(d.product(), tang);
        assert_eq!(p.invariance(&t("x")), Invariance::InvariantAll);
        assert_eq!(p.invariance(&t("z")), Invariance::InvariantAll);
        assert_eq!(p.invariance(&t("y")), Invariance::NonInvariant);
        assert_eq!(p.invariance(&t("x + 2 y + 3 z")), Invariance::NonInvariant);
    }

    #[test]
    fn example_first_integrals() {
        let (member, eta) = example_symbolic();
        let (n, d) = example_first_integral();
        assert!(is_first_integral(&member, &n, &d));
        let (x, z) = (SymPoly::var(0), SymPoly::var(2));
        assert!(is_first_integral(&eta, &x, &z));
    }

    #[test]
    fn tangency_is_alpha_independent() {
        for p in builtin_pencils() {
            let base = p.tangency().unwrap();
            for a in [rat(1, 2), int(-3), int(7)] {
                let m = p.member(&Alpha::Finite(a));
                assert_eq!(m.wedge(&p.omega_inf).unwrap(), base, "{}", p.id);
            }
        }
    }

    #[test]
    fn builtin_decompositions() {
        for p in builtin_pencils() {
            let r = p.analyze().unwrap();
            assert_eq!(r.tangency_degree, 2 * p.degree() + 1, "{}", p.id);
            if p.id != "reversible-pencil" {
                for c in &r.components {
                    assert_eq!(c.invariance, Invariance::InvariantAll, "{} {}", p.id, c.factor);
                }
            }
        }
        assert_eq!(builtin_pencils().len(), 5);
    }

    #[test]
    fn missing_candidate_leaves_remainder() {
        let p = builtin("lins-neto-p3").unwrap();
        let tang = p.tangency().unwrap();
        assert!(matches!(decompose(&tang, &p.candidates[1..]), Err(Error::UnfactoredRemainder(_))));
        assert!(decompose(&TriPoly::constant(int(5)), &[]).unwrap().factors.is_empty());
    }

    #[test]
    fn proportional_generators_rejected() {
        let p = builtin("lins-neto-p2").unwrap();
        let w = p.omega0.clone();
        assert!(matches!(Pencil::new("bad", w.clone(), w.scale(&int(3))), Err(Error::ProportionalForms)));
    }

    #[test]
    fn example_fixed_singularities() {
        let p = builtin("reversible-pencil").unwrap();
        let m = p.member_symbolic();
        // A± = [0:±√−c:1], C± = [1:±√−a:0], D₁ with a = c = −1
        for pt in [[0, 1, 1], [0, -1, 1], [1, 1, 0], [1, -1, 0], [0, 1, 0]] {
            let vals: [Poly<4>; 3] = std::array::from_fn(|i| Poly::constant(int(pt[i])));
            let lift = |c: &Poly<4>| c.compose(&[vals[0].clone(), vals[1].clone(), vals[2].clone(), Poly::var(3)]);
            assert!(m.coeffs().iter().all(|c| lift(c).is_zero()), "{pt:?}");
        }
        // B±(α) at α = 2, where α² + 12ac = 16
        let m2 = p.member(&Alpha::Finite(int(2)));
        for x in [rat(-1, 3), int(1)] {
            assert!(m2.vanishes_at(&[x, int(0), int(1)]));
        }
        let ty = |pt: ProjPoint, n: i64, d: i64| {
            let g = AffineGerm::at_point(&m2, &TriPoly::one(), &pt);
            assert!(eigenvalues(&g).unwrap().has_ratio(n, d), "{pt}");
        };
        ty(ProjPoint::from_ints(0, 1, 1), 2, 1);
        ty(ProjPoint::from_ints(1, 1, 0), 2, 3);
        ty(ProjPoint::from_ints(0, 1, 0), 1, -3);
        ty(ProjPoint::new(rat(-1, 3), int(0), int(1)).unwrap(), -1, 1);
    }
}
