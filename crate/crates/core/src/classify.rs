//! The elliptic first-integral lists of both families, with symbolic
//! coefficients `a, b, c` and exponents affine in the family parameters.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::poly::parse_poly;
use crate::exact::Rational;
use crate::foliation::{
    build_lv_form, build_reversible_form, conic, line, symbolic_abc, FoliationSpec, LotkaVolterraParams,
    ReversibleParams, SymPoly,
};
use crate::genus::{closed_form_genus, genus_lv, lv_case, LvCase};

pub const SYM_NAMES: [&str; 6] = ["x", "y", "z", "a", "b", "c"];

/// `c + u·U + v·V`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Lin {
    pub c: i64,
    pub u: i64,
    pub v: i64,
}

impl Lin {
    pub const fn k(c: i64) -> Self {
        Lin { c, u: 0, v: 0 }
    }

    pub const fn new(c: i64, u: i64, v: i64) -> Self {
        Lin { c, u, v }
    }

    pub fn at(self, u: i64, v: i64) -> i64 {
        self.c + self.u * u + self.v * v
    }

    pub fn is_zero(self) -> bool {
        self == Lin::k(0)
    }

    pub fn is_constant(self) -> bool {
        self.u == 0 && self.v == 0
    }

    fn scale(self, k: i64) -> Lin {
        Lin::new(self.c * k, self.u * k, self.v * k)
    }

    fn content(self) -> i64 {
        self.c.gcd(&self.u).gcd(&self.v)
    }

    /// Whether the exponent sits in a denominator when displayed.
    fn displays_negative(self) -> bool {
        if self.is_constant() {
            self.c < 0
        } else {
            self.u < 0 || self.v < 0
        }
    }

    pub fn parse(s: &str) -> Result<Lin> {
        let err = || Error::Parse(format!("bad exponent {s:?}"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().replace('−', "-");
        if t.is_empty() {
            return Err(err());
        }
        let mut out = Lin::k(0);
        let mut start = 0;
        let bytes: Vec<char> = t.chars().collect();
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i] == '+' || bytes[i] == '-' {
                let term: String = bytes[start..i].iter().collect();
                let (num, var) = match term.chars().last() {
                    Some(ch @ ('u' | 'v')) => (&term[..term.len() - 1], Some(ch)),
                    _ => (term.as_str(), None),
                };
                let k: i64 = match num {
                    "" | "+" => 1,
                    "-" => -1,
                    n => n.parse().map_err(|_| err())?,
                };
                match var {
                    Some('u') => out.u += k,
                    Some('v') => out.v += k,
                    _ => out.c += k,
                }
                start = i;
            }
        }
        Ok(out)
    }
}

impl std::ops::Add for Lin {
    type Output = Lin;
    fn add(self, o: Lin) -> Lin {
        Lin::new(self.c + o.c, self.u + o.u, self.v + o.v)
    }
}

impl std::ops::Neg for Lin {
    type Output = Lin;
    fn neg(self) -> Lin {
        self.scale(-1)
    }
}

impl std::ops::Sub for Lin {
    type Output = Lin;
    fn sub(self, o: Lin) -> Lin {
        self + (-o)
    }
}

impl fmt::Display for Lin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        if self.c != 0 || self.is_constant() {
            out.push_str(&self.c.to_string());
        }
        for (k, name) in [(self.u, 'u'), (self.v, 'v')] {
            if k == 0 {
                continue;
            }
            if k > 0 && !out.is_empty() {
                out.push('+');
            }
            match k {
                1 => {}
                -1 => out.push('-'),
                _ => out.push_str(&k.to_string()),
            }
            out.push(name);
        }
        f.write_str(&out)
    }
}

impl TryFrom<String> for Lin {
    type Error = Error;
    fn try_from(s: String) -> Result<Lin> {
        Lin::parse(&s)
    }
}

impl From<Lin> for String {
    fn from(l: Lin) -> String {
        l.to_string()
    }
}

/// The family parameters an integral came from, when it is a family member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Origin {
    Reversible { p: Lin, q: Lin, a_zero: bool, c_zero: bool, positive: bool },
    LotkaVolterra { p: Lin, q: Lin, r: Lin, a_zero: bool },
    /// The extra integral attached to a case-III row `(p, q, r)`.
    LvDerived { p: Lin, q: Lin, r: Lin },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FirstIntegral {
    /// Factor polynomials in `x, y, z, a, b, c`, ordered `x, y, L/Q, z`.
    pub factors: Vec<String>,
    pub exponents: Vec<Lin>,
    pub markers: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<Origin>,
    pub display: String,
}

fn sym(text: &str) -> Result<SymPoly> {
    parse_poly(text, &SYM_NAMES)
}

/// Text with coefficient symbols written first in each term and terms free
/// of symbols leading, so a conic prints as `y^2 + a x^2 + b x z + c z^2`.
pub fn sym_text(f: &SymPoly) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<_> = f.terms().collect();
    terms.sort_by_key(|(e, _)| {
        let symbolic = e[3] + e[4] + e[5] > 0;
        let d = e[0] + e[1] + e[2];
        (symbolic, std::cmp::Reverse(d), std::cmp::Reverse((e[0], e[1], e[2])), (e[3], e[4], e[5]))
    });
    let mut out = String::new();
    for (k, (e, c)) in terms.into_iter().enumerate() {
        let neg = *c < Rational::from_integer(0.into());
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let a = if neg { -c.clone() } else { c.clone() };
        let mut parts = Vec::new();
        if a != Rational::from_integer(1.into()) || e.iter().all(|&d| d == 0) {
            parts.push(a.to_string());
        }
        for i in [3, 4, 5, 0, 1, 2] {
            match e[i] {
                0 => {}
                1 => parts.push(SYM_NAMES[i].to_string()),
                d => parts.push(format!("{}^{}", SYM_NAMES[i], d)),
            }
        }
        out.push_str(&parts.join(" "));
    }
    out
}

fn factor_rank(f: &SymPoly) -> (u8, String) {
    let text = sym_text(f);
    let rank = match text.as_str() {
        "x" => 0,
        "y" => 1,
        "z" => 3,
        _ => 2,
    };
    (rank, text)
}

fn sym_degree(f: &SymPoly) -> i64 {
    f.terms().map(|(e, _)| (e[0] + e[1] + e[2]) as i64).max().unwrap_or(0)
}

impl FirstIntegral {
    /// Canonical form: merged factors, constants dropped, fixed order,
    /// exponents reduced by their common content.
    pub fn from_factors(parts: Vec<(SymPoly, Lin)>, markers: Vec<String>, origin: Option<Origin>) -> Self {
        let mut merged: Vec<(SymPoly, Lin)> = Vec::new();
        for (f, e) in parts {
            if sym_degree(&f) == 0 || e.is_zero() {
                continue;
            }
            let f = f.monic();
            match merged.iter_mut().find(|(g, _)| *g == f) {
                Some((_, acc)) => *acc = *acc + e,
                None => merged.push((f, e)),
            }
        }
        merged.retain(|(_, e)| !e.is_zero());
        let content = merged.iter().fold(0, |g, (_, e)| g.gcd(&e.content()));
        if content > 1 {
            for (_, e) in merged.iter_mut() {
                *e = Lin::new(e.c / content, e.u / content, e.v / content);
            }
        }
        merged.sort_by_key(|(f, _)| factor_rank(f));
        let display = render(&merged);
        FirstIntegral {
            factors: merged.iter().map(|(f, _)| sym_text(f)).collect(),
            exponents: merged.iter().map(|(_, e)| *e).collect(),
            markers,
            origin,
            display,
        }
    }

    pub fn factor_polys(&self) -> Result<Vec<(SymPoly, Lin)>> {
        self.factors.iter().zip(&self.exponents).map(|(f, e)| Ok((sym(f)?, *e))).collect()
    }

    pub fn has_marker(&self, m: &str) -> bool {
        self.markers.iter().any(|k| k == m || k.starts_with(&format!("{m}:")))
    }

    /// Weighted exponent sum; zero for a degree-0 rational function.
    pub fn weighted_degree(&self) -> Result<Lin> {
        Ok(self.factor_polys()?.iter().fold(Lin::k(0), |acc, (f, e)| acc + e.scale(sym_degree(f))))
    }

    /// Family tuple at `(u, v)`, or `None` outside the family's domain.
    pub fn tuple_at(&self, u: i64, v: i64) -> Option<Vec<i64>> {
        let t = match self.origin.as_ref()? {
            Origin::Reversible { p, q, positive, .. } => {
                let (p, q) = (p.at(u, v), q.at(u, v));
                let ok = q > 0 && p != 0 && p.gcd(&q) == 1 && ((p + 2 * q > 0) == *positive) && p + 2 * q != 0;
                ok.then(|| vec![p, q])?
            }
            Origin::LotkaVolterra { p, q, r, .. } => vec![p.at(u, v), q.at(u, v), r.at(u, v)],
            Origin::LvDerived { p, q, r } => {
                let (p, q, r) = (p.at(u, v), q.at(u, v), r.at(u, v));
                (p < q + r).then(|| vec![p, q, r])?
            }
        };
        Some(t)
    }

    /// Instance with `a = c = −1, b = 1` (reversible) or `a = b = c = 1`
    /// (Lotka-Volterra), forced zeros kept. Derived integrals are rebuilt
    /// after `[x:y:z] ↦ [z:y:x]`, which turns them into `a = 0` members with
    /// `p < 0`.
    pub fn spec_at(&self, u: i64, v: i64) -> Result<Option<FoliationSpec>> {
        let Some(t) = self.tuple_at(u, v) else { return Ok(None) };
        match self.origin.as_ref().expect("tuple implies origin") {
            Origin::Reversible { a_zero, c_zero, .. } => {
                let params = ReversibleParams::instance(t[0], t[1], *a_zero, *c_zero)?;
                Ok(Some(build_reversible_form(&params)?))
            }
            Origin::LotkaVolterra { a_zero, .. } => {
                let params = LotkaVolterraParams::instance(t[0], t[1], t[2], a_zero.then_some('a'))?;
                if lv_case(&params).is_err() {
                    return Ok(None);
                }
                Ok(Some(build_lv_form(&params)?))
            }
            Origin::LvDerived { .. } => {
                let params = LotkaVolterraParams::instance(-t[0], t[1], t[2], Some('a'))?;
                Ok(Some(build_lv_form(&params)?))
            }
        }
    }

    /// Closed-form genus at `(u, v)`; a derived integral takes the genus of
    /// its case-III row.
    pub fn closed_form_at(&self, u: i64, v: i64) -> Result<Option<u32>> {
        if let Some(Origin::LvDerived { .. }) = self.origin {
            return match self.tuple_at(u, v) {
                Some(t) => genus_lv(t[0], t[1], t[2], LvCase::III).map(Some),
                None => Ok(None),
            };
        }
        match self.spec_at(u, v)? {
            Some(spec) => closed_form_genus(&spec).map(Some),
            None => Ok(None),
        }
    }

    /// Numerator and denominator with the coefficient symbols kept.
    pub fn symbolic_at(&self, u: i64, v: i64) -> Result<(SymPoly, SymPoly)> {
        let mut num = SymPoly::one();
        let mut den = SymPoly::one();
        for (f, e) in self.factor_polys()? {
            let k = e.at(u, v);
            if k > 0 {
                num = &num * &f.powu(k as u32);
            } else if k < 0 {
                den = &den * &f.powu((-k) as u32);
            }
        }
        Ok((num, den))
    }
}

fn render(parts: &[(SymPoly, Lin)]) -> String {
    let piece = |f: &SymPoly, e: Lin| {
        let text = sym_text(f);
        let base = if f.len() > 1 { format!("({text})") } else { text };
        if e == Lin::k(1) {
            base
        } else if e.is_constant() {
            format!("{base}^{}", e.c)
        } else {
            format!("{base}^({e})")
        }
    };
    let mut num = Vec::new();
    let mut den = Vec::new();
    for (f, e) in parts {
        if e.displays_negative() {
            den.push(piece(f, -*e));
        } else {
            num.push(piece(f, *e));
        }
    }
    let num = if num.is_empty() { "1".to_string() } else { num.join(" ") };
    match den.len() {
        0 => num,
        1 => format!("{num} / {}", den[0]),
        _ => format!("{num} / ({})", den.join(" ")),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassFamily {
    Reversible,
    LotkaVolterra,
}

impl ClassFamily {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "reversible" | "rev" => Ok(ClassFamily::Reversible),
            "lotka-volterra" | "lv" => Ok(ClassFamily::LotkaVolterra),
            _ => Err(Error::Parse(format!("unknown family {s}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ClassFamily::Reversible => "reversible",
            ClassFamily::LotkaVolterra => "lotka-volterra",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case {
    pub id: String,
    pub conditions: String,
    /// Free integer parameters, each ranging over `0, 1, 2, …`.
    pub parameters: Vec<String>,
    pub integrals: Vec<FirstIntegral>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub family: ClassFamily,
    pub cases: Vec<Case>,
}

impl Classification {
    pub fn case(&self, id: &str) -> Option<&Case> {
        self.cases.iter().find(|c| c.id == id)
    }

    pub fn integrals(&self) -> impl Iterator<Item = &FirstIntegral> {
        self.cases.iter().flat_map(|c| c.integrals.iter())
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ClassifyOptions {
    /// Also emit the second case-5 integral exactly as printed, with `c z²`
    /// kept in the conic.
    pub literal_case5: bool,
}

fn lin_u(c: i64, u: i64) -> Lin {
    Lin::new(c, u, 0)
}

fn reversible_integral_sym(p: Lin, q: Lin, a_zero: bool, c_zero: bool, positive: bool, markers: &[&str]) -> FirstIntegral {
    let (a, b, c) = symbolic_abc();
    let zero = SymPoly::zero();
    let qpoly = conic(if a_zero { &zero } else { &a }, &b, if c_zero { &zero } else { &c });
    let parts = vec![(SymPoly::var(0), p), (qpoly, q), (SymPoly::var(2), -(p + q.scale(2)))];
    FirstIntegral::from_factors(
        parts,
        markers.iter().map(|s| s.to_string()).collect(),
        Some(Origin::Reversible { p, q, a_zero, c_zero, positive }),
    )
}

fn lv_integral_sym(p: Lin, q: Lin, r: Lin, a_zero: bool, markers: &[&str]) -> FirstIntegral {
    let (a, b, c) = symbolic_abc();
    let zero = SymPoly::zero();
    let l = line(if a_zero { &zero } else { &a }, &b, &c);
    let parts = vec![(SymPoly::var(0), p), (SymPoly::var(1), q), (l, r), (SymPoly::var(2), -(p + q + r))];
    FirstIntegral::from_factors(
        parts,
        markers.iter().map(|s| s.to_string()).collect(),
        Some(Origin::LotkaVolterra { p, q, r, a_zero }),
    )
}

/// `y^q (ax+by)^r / (x^{q+r−p} z^p)` for a case-III row, emitted when `p < q+r`.
pub fn derived_integral(p: Lin, q: Lin, r: Lin) -> FirstIntegral {
    let (a, b, _) = symbolic_abc();
    let l = &(&a * &SymPoly::var(0)) + &(&b * &SymPoly::var(1));
    let parts = vec![(SymPoly::var(0), p - q - r), (SymPoly::var(1), q), (l, r), (SymPoly::var(2), -p)];
    FirstIntegral::from_factors(
        parts,
        vec!["derived".into(), "gate: p<q+r".into()],
        Some(Origin::LvDerived { p, q, r }),
    )
}

pub const REVERSIBLE_PRINTED_FAMILY: &str = "(p,q)=(-3-6u,-1+6u)";

pub fn classify_reversible(opts: ClassifyOptions) -> Classification {
    let k = Lin::k;
    let case = |id: &str, cond: &str, params: &[&str], integrals: Vec<FirstIntegral>| Case {
        id: id.into(),
        conditions: cond.into(),
        parameters: params.iter().map(|s| s.to_string()).collect(),
        integrals,
    };
    let fixed = |rows: &[(i64, i64)], a_zero: bool, c_zero: bool, positive: bool| -> Vec<FirstIntegral> {
        rows.iter().map(|&(p, q)| reversible_integral_sym(k(p), k(q), a_zero, c_zero, positive, &[])).collect()
    };
    let corrected = format!("corrected: printed as {REVERSIBLE_PRINTED_FAMILY}");
    let families: Vec<(Lin, Lin, Vec<&str>)> = vec![
        (lin_u(2, -6), lin_u(1, 6), vec![]),
        (lin_u(4, -6), lin_u(-1, 6), vec![]),
        (lin_u(1, -6), lin_u(2, 6), vec![]),
        (lin_u(5, -6), lin_u(-2, 6), vec![]),
        (lin_u(-4, -6), lin_u(1, 6), vec![]),
        (lin_u(-2, -6), lin_u(-1, 6), vec![corrected.as_str()]),
        (lin_u(-5, -6), lin_u(2, 6), vec![]),
        (lin_u(-1, -6), lin_u(-2, 6), vec![]),
        (lin_u(1, -2), lin_u(1, 2), vec![]),
        (lin_u(-3, -2), lin_u(1, 2), vec![]),
    ];
    let case3 = families
        .into_iter()
        .map(|(p, q, m)| reversible_integral_sym(p, q, true, true, true, &m))
        .collect();
    let mut case5 = vec![
        reversible_integral_sym(k(-4), k(1), false, true, false, &[]),
        reversible_integral_sym(k(-3), k(1), false, true, false, &["typo: printed with c z^2 kept in the conic"]),
        reversible_integral_sym(k(-5), k(2), false, true, false, &[]),
    ];
    if opts.literal_case5 {
        case5.push(reversible_integral_sym(k(-3), k(1), false, false, false, &["literal reading"]));
    }
    Classification {
        family: ClassFamily::Reversible,
        cases: vec![
            case("1", "p+2q>0, a≠0, c≠0", &[], fixed(&[(-1, 2), (-3, 2)], false, false, true)),
            case(
                "2",
                "p+2q>0, ab≠0, c=0",
                &[],
                fixed(&[(-1, 2), (-2, 3), (-4, 3), (-5, 3), (-5, 4), (-7, 4)], false, true, true),
            ),
            case("3", "p+2q>0, a=c=0", &["u"], case3),
            case("4", "p+2q<0, c≠0", &[], fixed(&[(-4, 1), (-3, 1)], false, false, false)),
            case("5", "p+2q<0, c=0", &[], case5),
        ],
    }
}

/// Case-III rows `(p, q₀ + p·u, r₀ + p·v)`.
pub const LV_III_ROWS: [(i64, i64, i64); 12] = [
    (3, 1, 1),
    (3, 2, 2),
    (4, 1, 1),
    (4, 3, 3),
    (4, 1, 2),
    (4, 2, 3),
    (6, 1, 2),
    (6, 4, 5),
    (6, 1, 3),
    (6, 3, 5),
    (6, 2, 3),
    (6, 3, 4),
];

pub fn classify_lv() -> Classification {
    let k = Lin::k;
    let case1 = [(1, 1, 1), (1, 1, 2), (1, 2, 3)]
        .iter()
        .map(|&(p, q, r)| lv_integral_sym(k(p), k(q), k(r), false, &[]))
        .collect();
    let case2 = [(-2, 1, 3, true), (-1, 2, 2, false), (-2, 1, 4, true), (-1, 2, 3, true), (-3, 1, 6, true), (-1, 3, 4, true)]
        .iter()
        .map(|&(p, q, r, dagger)| lv_integral_sym(k(p), k(q), k(r), false, if dagger { &["dagger"] } else { &[] }))
        .collect();
    let rows: Vec<(Lin, Lin, Lin)> = LV_III_ROWS
        .iter()
        .map(|&(p, q, r)| (k(p), Lin::new(q, p, 0), Lin::new(r, 0, p)))
        .collect();
    let case3 = rows.iter().map(|&(p, q, r)| lv_integral_sym(p, q, r, true, &[])).collect();
    let extras = rows.iter().map(|&(p, q, r)| derived_integral(p, q, r)).collect();
    let uv = vec!["u".to_string(), "v".to_string()];
    Classification {
        family: ClassFamily::LotkaVolterra,
        cases: vec![
            Case { id: "I".into(), conditions: "ab≠0, p>0, q>0".into(), parameters: vec![], integrals: case1 },
            Case { id: "II".into(), conditions: "abc≠0, p<0, q>0, p+q+r>0".into(), parameters: vec![], integrals: case2 },
            Case { id: "III".into(), conditions: "a=0, bc≠0, p>0, q>0".into(), parameters: uv.clone(), integrals: case3 },
            Case {
                id: "III-derived".into(),
                conditions: "from a case-III row with p<q+r".into(),
                parameters: uv,
                integrals: extras,
            },
        ],
    }
}

pub fn classify(family: ClassFamily, opts: ClassifyOptions) -> Classification {
    match family {
        ClassFamily::Reversible => classify_reversible(opts),
        ClassFamily::LotkaVolterra => classify_lv(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Automorphism {
    /// `xᵢ ↦ Σⱼ mᵢⱼ xⱼ`.
    Linear(Box<[[Rational; 3]; 3]>),
    /// `[x:y:z] ↦ [z:y:x]` together with the relabelling `a ↔ c`.
    SwapXZ,
    /// `[x:y:z] ↦ [xz:yx:z²]`.
    Birational,
}

impl Automorphism {
    pub fn identity() -> Self {
        let m = |i: usize, j: usize| Rational::from_integer(((i == j) as i64).into());
        Automorphism::Linear(Box::new(std::array::from_fn(|i| std::array::from_fn(|j| m(i, j)))))
    }

    fn images(&self) -> Result<[SymPoly; 6]> {
        let v = |i: usize| SymPoly::var(i);
        Ok(match self {
            Automorphism::Linear(m) => {
                let det = &(&m[0][0] * &(&(&m[1][1] * &m[2][2]) - &(&m[1][2] * &m[2][1])))
                    - &(&(&m[0][1] * &(&(&m[1][0] * &m[2][2]) - &(&m[1][2] * &m[2][0])))
                        - &(&m[0][2] * &(&(&m[1][0] * &m[2][1]) - &(&m[1][1] * &m[2][0]))));
                if det == Rational::from_integer(0.into()) {
                    return Err(Error::InapplicableMap("singular matrix".into()));
                }
                let row = |i: usize| {
                    (0..3).fold(SymPoly::zero(), |acc, j| &acc + &v(j).scale(&m[i][j]))
                };
                [row(0), row(1), row(2), v(3), v(4), v(5)]
            }
            Automorphism::SwapXZ => [v(2), v(1), v(0), v(5), v(4), v(3)],
            Automorphism::Birational => [&v(0) * &v(2), &v(1) * &v(0), &v(2) * &v(2), v(3), v(4), v(5)],
        })
    }
}

/// Pulls `f` back along `m` and returns the canonical form.
pub fn apply_map(f: &FirstIntegral, m: &Automorphism) -> Result<FirstIntegral> {
    let parts = f.factor_polys()?;
    if *m == Automorphism::Birational {
        let ok = parts.iter().all(|(g, _)| factor_rank(g).0 != 2 || g.degree_of_var(2).unwrap_or(0) == 0);
        if !ok {
            return Err(Error::InapplicableMap("the birational map needs every non-coordinate factor free of z".into()));
        }
    }
    let images = m.images()?;
    let mut out = Vec::new();
    for (g, e) in parts {
        let mut h = g.compose(&images);
        for i in 0..3 {
            let k = h.var_valuation(i);
            if k > 0 {
                h = h.div_var_pow(i, k).expect("valuation divides");
                out.push((SymPoly::var(i), e.scale(k as i64)));
            }
        }
        out.push((h, e));
    }
    let markers = f.markers.iter().filter(|m| m.as_str() == "dagger").cloned().collect();
    Ok(FirstIntegral::from_factors(out, markers, None))
}

/// Whether two integrals agree as factor multisets.
pub fn same_integral(f: &FirstIntegral, g: &FirstIntegral) -> bool {
    f.factors == g.factors && f.exponents == g.exponents
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lin_text_round_trip() {
        for l in [Lin::new(1, 6, 0), Lin::new(-2, 6, 0), Lin::new(5, 3, 3), Lin::k(-4), Lin::new(0, -1, 0)] {
            assert_eq!(Lin::parse(&l.to_string()).unwrap(), l, "{l}");
        }
        assert_eq!(Lin::new(-2, 6, 0).to_string(), "-2+6u");
    }

    #[test]
    fn cardinalities() {
        let r = classify_reversible(ClassifyOptions::default());
        let sizes: Vec<usize> = r.cases.iter().map(|c| c.integrals.len()).collect();
        assert_eq!(sizes, vec![2, 6, 10, 2, 3]);
        let l = classify_lv();
        let sizes: Vec<usize> = l.cases.iter().map(|c| c.integrals.len()).collect();
        assert_eq!(sizes, vec![3, 6, 12, 12]);
        let lit = classify_reversible(ClassifyOptions { literal_case5: true });
        assert_eq!(lit.case("5").unwrap().integrals.len(), 4);
    }

    #[test]
    fn displayed_forms() {
        let r = classify_reversible(ClassifyOptions::default());
        let c1: Vec<&str> = r.case("1").unwrap().integrals.iter().map(|f| f.display.as_str()).collect();
        assert!(c1.contains(&"(y^2 + a x^2 + b x z + c z^2)^2 / (x^3 z)"), "{c1:?}");
        let c3 = &r.case("3").unwrap().integrals[0];
        assert_eq!(c3.display, "(y^2 + b x z)^(1+6u) / (x^(-2+6u) z^(4+6u))");
        let l = classify_lv();
        assert_eq!(l.case("I").unwrap().integrals[0].display, "x y (a x + b y + c z) / z^3");
        assert_eq!(l.case("II").unwrap().integrals[0].display, "y (a x + b y + c z)^3 / (x^2 z^2)");
    }

    #[test]
    fn degree_zero() {
        for doc in [classify_reversible(ClassifyOptions { literal_case5: true }), classify_lv()] {
            for f in doc.integrals() {
                assert!(f.weighted_degree().unwrap().is_zero(), "{}", f.display);
            }
        }
    }

    #[test]
    fn swap_xz_on_reversible() {
        let f = reversible_integral_sym(Lin::k(-1), Lin::k(2), false, false, true, &[]);
        let g = apply_map(&f, &Automorphism::SwapXZ).unwrap();
        let h = reversible_integral_sym(Lin::k(-3), Lin::k(2), false, false, true, &[]);
        assert!(same_integral(&g, &h), "{} vs {}", g.display, h.display);
    }

    #[test]
    fn identity_and_singular_matrix() {
        let f = &classify_lv().cases[0].integrals[2];
        assert!(same_integral(&apply_map(f, &Automorphism::identity()).unwrap(), f));
        let zero = Rational::from_integer(0.into());
        let m = Automorphism::Linear(Box::new(std::array::from_fn(|_| std::array::from_fn(|_| zero.clone()))));
        assert!(matches!(apply_map(f, &m), Err(Error::InapplicableMap(_))));
    }

    #[test]
    fn birational_maps_derived_back_to_case_iii() {
        let (p, q, r) = (Lin::k(3), Lin::new(1, 3, 0), Lin::new(1, 0, 3));
        let derived = derived_integral(p, q, r);
        let back = apply_map(&derived, &Automorphism::Birational).unwrap();
        // image carries (b y + a z): a case-III row with c renamed a
        assert_eq!(back.exponents, vec![p, q, r, -(p + q + r)]);
        assert_eq!(back.factors[2], "b y + a z");
        let lv = classify_lv();
        let case3 = &lv.case("III").unwrap().integrals[0];
        assert!(matches!(apply_map(case3, &Automorphism::Birational), Err(Error::InapplicableMap(_))));
    }

    #[test]
    fn derived_gate() {
        let d = derived_integral(Lin::k(3), Lin::new(1, 3, 0), Lin::new(1, 0, 3));
        assert!(d.tuple_at(0, 0).is_none());
        assert_eq!(d.tuple_at(1, 0), Some(vec![3, 4, 1]));
    }

    #[test]
    fn json_round_trip() {
        let doc = classify_lv();
        let text = serde_json::to_string(&doc).unwrap();
        let back: Classification = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
    }
}
