//! The gcd equations deciding genus one, solved by exhaustive search over a
//! box with the periodic cases compressed into residue families.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Equation {
    /// `p+q+r = gcd(q,p+r) + gcd(p,q+r) + gcd(r,p+q)`, `p,q,r > 0`.
    LvI,
    /// `q+r = gcd(P,q) + gcd(P,r) + gcd(q,N) + gcd(r,N)` with `P = −p > 0`,
    /// `N = q + r − P > 0`; tuples are `(P, q, r)`.
    LvII,
    /// `p = gcd(p,r) + gcd(p,q) + gcd(p,q+r)`, `p,q,r > 0`.
    LvIII,
    /// Reversible, `p+2q > 0`, `ac ≠ 0`: `q − 1 = 1`.
    RevAC,
    /// Reversible, `p+2q > 0`, `a ≠ 0 = c`.
    RevA,
    /// Reversible, `p+2q > 0`, `a = c = 0`, `p + q ≥ 0`.
    Rev00Pos,
    /// Reversible, `p+2q > 0`, `a = c = 0`, `p + q < 0`.
    Rev00Neg,
    /// Reversible, `p+2q < 0`, `c ≠ 0`: `p + 2 + gcd(−p,2q) = 0`.
    RevNegC,
    /// Reversible, `p+2q < 0`, `c = 0`: `p + q + gcd(−p,2q) + gcd(q,−2p) = 0`.
    RevNeg0,
}

impl Equation {
    pub const ALL: [Equation; 9] = [
        Equation::LvI,
        Equation::LvII,
        Equation::LvIII,
        Equation::RevAC,
        Equation::RevA,
        Equation::Rev00Pos,
        Equation::Rev00Neg,
        Equation::RevNegC,
        Equation::RevNeg0,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Equation::LvI => "lv-i",
            Equation::LvII => "lv-ii",
            Equation::LvIII => "lv-iii",
            Equation::RevAC => "rev-ac",
            Equation::RevA => "rev-a",
            Equation::Rev00Pos => "rev-00-pos",
            Equation::Rev00Neg => "rev-00-neg",
            Equation::RevNegC => "rev-neg-c",
            Equation::RevNeg0 => "rev-neg-0",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.to_ascii_lowercase();
        Self::ALL
            .into_iter()
            .find(|e| e.id() == s)
            .ok_or_else(|| Error::Parse(format!("unknown equation {s}")))
    }

    pub fn arity(self) -> usize {
        match self {
            Equation::LvI | Equation::LvII | Equation::LvIII => 3,
            _ => 2,
        }
    }

    /// Variable names of a tuple.
    pub fn names(self) -> &'static [&'static str] {
        match self {
            Equation::LvI | Equation::LvIII => &["p", "q", "r"],
            Equation::LvII => &["-p", "q", "r"],
            _ => &["p", "q"],
        }
    }

    fn is_periodic(self) -> bool {
        matches!(self, Equation::LvIII | Equation::Rev00Pos | Equation::Rev00Neg)
    }
}

fn g(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Sign and coprimality conditions of the equation's domain.
fn check_domain(eq: Equation, t: &[i64]) -> Result<()> {
    if t.len() != eq.arity() {
        return Err(Error::Parameter(format!("{} takes {} values", eq.id(), eq.arity())));
    }
    let fail = |why: &str| Err(Error::Parameter(format!("{} {:?}: {why}", eq.id(), t)));
    match eq {
        Equation::LvI | Equation::LvII | Equation::LvIII => {
            if t.iter().any(|&v| v <= 0) {
                return fail("entries must be positive");
            }
            if g(g(t[0], t[1]), t[2]) != 1 {
                return fail("gcd of the tuple is not 1");
            }
            if eq == Equation::LvII && t[1] + t[2] - t[0] <= 0 {
                return fail("needs p + q + r > 0");
            }
        }
        _ => {
            let (p, q) = (t[0], t[1]);
            if p == 0 || q <= 0 {
                return fail("needs p ≠ 0 and q > 0");
            }
            if g(p, q) != 1 {
                return fail("gcd(p, q) is not 1");
            }
            let pos = p + 2 * q > 0;
            let ok = match eq {
                Equation::RevAC | Equation::RevA => pos && p < 0,
                Equation::Rev00Pos => pos && p + q >= 0,
                Equation::Rev00Neg => pos && p + q < 0,
                Equation::RevNegC | Equation::RevNeg0 => p + 2 * q < 0,
                _ => unreachable!(),
            };
            if !ok {
                return fail("sign conditions of the case do not hold");
            }
        }
    }
    Ok(())
}

fn holds(eq: Equation, t: &[i64]) -> bool {
    match eq {
        Equation::LvI => {
            let (p, q, r) = (t[0], t[1], t[2]);
            p + q + r == g(q, p + r) + g(p, q + r) + g(r, p + q)
        }
        Equation::LvII => {
            let (pp, q, r) = (t[0], t[1], t[2]);
            let n = q + r - pp;
            q + r == g(pp, q) + g(pp, r) + g(q, n) + g(r, n)
        }
        Equation::LvIII => {
            let (p, q, r) = (t[0], t[1], t[2]);
            p == g(p, r) + g(p, q) + g(p, q + r)
        }
        Equation::RevAC => t[1] == 2,
        Equation::RevA => {
            let (p, q) = (t[0], t[1]);
            if p + q >= 0 {
                g(2 * q, -p) + 2 == p + 2 * q
            } else {
                g(q, -2 * p) + 2 == q
            }
        }
        Equation::Rev00Pos => {
            let (p, q) = (t[0], t[1]);
            p + q == g(2 * q, -p) + g(q, -2 * p)
        }
        Equation::Rev00Neg => {
            let (p, q) = (t[0], t[1]);
            p + q + g(2 * q, -p) + g(q, -2 * p) == 0
        }
        Equation::RevNegC => {
            let (p, q) = (t[0], t[1]);
            p + 2 + g(-p, 2 * q) == 0
        }
        Equation::RevNeg0 => {
            let (p, q) = (t[0], t[1]);
            p + q + g(-p, 2 * q) + g(q, -2 * p) == 0
        }
    }
}

/// Evaluates the equation on one tuple; domain violations are errors.
pub fn verify_tuple(eq: Equation, t: &[i64]) -> Result<bool> {
    check_domain(eq, t)?;
    Ok(holds(eq, t))
}

fn in_domain(eq: Equation, t: &[i64]) -> bool {
    check_domain(eq, t).is_ok()
}

/// Every tuple of the box satisfying the domain conditions and the equation.
/// The box is `1..=B` for positive entries and `−B..=B` for `p` in the
/// reversible equations.
pub fn brute_force(eq: Equation, bound: i64) -> Result<Vec<Vec<i64>>> {
    if bound < 1 {
        return Err(Error::Parameter("bound must be at least 1".into()));
    }
    let mut out = Vec::new();
    if eq.arity() == 3 {
        for a in 1..=bound {
            for b in 1..=bound {
                for c in 1..=bound {
                    let t = [a, b, c];
                    if in_domain(eq, &t) && holds(eq, &t) {
                        out.push(t.to_vec());
                    }
                }
            }
        }
    } else {
        for p in -bound..=bound {
            for q in 1..=bound {
                let t = [p, q];
                if in_domain(eq, &t) && holds(eq, &t) {
                    out.push(t.to_vec());
                }
            }
        }
    }
    Ok(out)
}

/// `base + Σ uᵢ·stepᵢ` for non-negative integers `uᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SolutionFamily {
    pub base: Vec<i64>,
    pub steps: Vec<Vec<i64>>,
    pub modulus: i64,
}

impl SolutionFamily {
    pub fn free_parameters(&self) -> usize {
        self.steps.len()
    }

    pub fn instantiate(&self, params: &[u64]) -> Vec<i64> {
        assert_eq!(params.len(), self.steps.len());
        let mut t = self.base.clone();
        for (u, step) in params.iter().zip(&self.steps) {
            for (x, s) in t.iter_mut().zip(step) {
                *x += *u as i64 * s;
            }
        }
        t
    }

    /// Whether some non-negative parameters reach `t`.
    pub fn contains(&self, t: &[i64]) -> bool {
        if t.len() != self.base.len() {
            return false;
        }
        let diff: Vec<i64> = t.iter().zip(&self.base).map(|(a, b)| a - b).collect();
        // Steps act on disjoint coordinates, except along a line for the
        // reversible families where both coordinates move together.
        match self.steps.len() {
            0 => diff.iter().all(|&d| d == 0),
            1 => {
                let s = &self.steps[0];
                let k = s.iter().position(|&x| x != 0).expect("nonzero step");
                if diff[k] % s[k] != 0 {
                    return false;
                }
                let u = diff[k] / s[k];
                u >= 0 && diff.iter().zip(s).all(|(d, x)| *d == u * x)
            }
            _ => {
                let mut used = vec![false; diff.len()];
                for s in &self.steps {
                    let k = s.iter().position(|&x| x != 0).expect("nonzero step");
                    if diff[k] % s[k] != 0 || diff[k] / s[k] < 0 {
                        return false;
                    }
                    let u = diff[k] / s[k];
                    for (i, x) in s.iter().enumerate() {
                        if *x != 0 {
                            if diff[i] != u * x {
                                return false;
                            }
                            used[i] = true;
                        }
                    }
                }
                diff.iter().zip(used).all(|(d, u)| u || *d == 0)
            }
        }
    }

    /// Residue key identifying the family independently of its base point.
    pub fn residue_key(&self) -> (i64, i64, Vec<i64>) {
        match self.base.len() {
            3 => (self.base[0], self.modulus, self.base[1..].iter().map(|x| x.rem_euclid(self.modulus)).collect()),
            _ => (self.base[0] + self.base[1], self.modulus, vec![self.base[0].rem_euclid(self.modulus)]),
        }
    }
}

pub fn family_membership(families: &[SolutionFamily], t: &[i64]) -> bool {
    families.iter().any(|f| f.contains(t))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Solution {
    pub equation: Equation,
    pub bound: i64,
    /// Isolated solutions, sorted; for LV-I the orbit representatives
    /// `p ≤ q ≤ r` of the symmetric equation.
    pub tuples: Vec<Vec<i64>>,
    pub families: Vec<SolutionFamily>,
    /// Brute-force solutions in the box, all accounted for by the output.
    pub box_count: usize,
}

/// Solves within the box of side `bound`.
pub fn solve(eq: Equation, bound: i64) -> Result<Solution> {
    let all = brute_force(eq, bound)?;
    let (tuples, families) = if eq.is_periodic() {
        (Vec::new(), compress(eq, &all, bound)?)
    } else if eq == Equation::LvI {
        let reps: BTreeSet<Vec<i64>> = all
            .iter()
            .map(|t| {
                let mut s = t.clone();
                s.sort();
                s
            })
            .collect();
        (reps.into_iter().collect(), Vec::new())
    } else {
        (all.clone(), Vec::new())
    };
    Ok(Solution { equation: eq, bound, tuples, families, box_count: all.len() })
}

/// Groups periodic solutions into residue families and checks the grouping
/// against the box both ways.
fn compress(eq: Equation, all: &[Vec<i64>], bound: i64) -> Result<Vec<SolutionFamily>> {
    let mut families = Vec::new();
    if eq == Equation::LvIII {
        // gcd(p, q + p·u) = gcd(p, q): solutions depend on q, r mod p only.
        let mut by_p: BTreeMap<i64, BTreeSet<(i64, i64)>> = BTreeMap::new();
        for t in all {
            by_p.entry(t[0]).or_default().insert((t[1] % t[0], t[2] % t[0]));
        }
        for (p, classes) in by_p {
            for (q0, r0) in classes {
                let rep = |x: i64| if x == 0 { p } else { x };
                families.push(SolutionFamily {
                    base: vec![p, rep(q0), rep(r0)],
                    steps: vec![vec![0, p, 0], vec![0, 0, p]],
                    modulus: p,
                });
            }
        }
    } else {
        // On the line p + q = s, gcd(2q,p) = gcd(2s,p) and gcd(q,2p) = gcd(2s,q):
        // solutions depend on p mod 2|s|.
        let mut by_s: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
        for t in all {
            by_s.entry(t[0] + t[1]).or_default().push(t[0]);
        }
        for (s, ps) in by_s {
            let period = minimal_period(eq, s);
            let mut classes: BTreeMap<i64, i64> = BTreeMap::new();
            for p in ps {
                let q = s - p;
                let e = classes.entry(p.rem_euclid(period)).or_insert(q);
                *e = (*e).min(q);
            }
            for (_, q) in classes {
                families.push(SolutionFamily { base: vec![s - q, q], steps: vec![vec![-period, period]], modulus: period });
            }
        }
    }
    families.sort();
    for t in all {
        if !family_membership(&families, t) {
            return Err(Error::Parameter(format!("{} solution {:?} not covered by a family", eq.id(), t)));
        }
    }
    for f in &families {
        for t in members_in_box(f, bound) {
            if in_domain(eq, &t) && !holds(eq, &t) {
                return Err(Error::Parameter(format!("{} family member {:?} fails", eq.id(), t)));
            }
        }
    }
    Ok(families)
}

/// Smallest divisor `P` of `2|s|` such that, along the line, solutions are a
/// union of classes mod `P` on which both gcd terms stay constant. The class
/// value depends on `p` alone, so three full periods of the ray decide it
/// whatever the box.
fn minimal_period(eq: Equation, s: i64) -> i64 {
    let full = 2 * s.abs();
    // q = s − p ≥ 1; coprimality is part of the class.
    let line: Vec<i64> = (0..3 * full)
        .map(|k| s - 1 - k)
        .filter(|&p| {
            let q = s - p;
            p != 0 && in_domain(eq, &[p / g(p, q), q / g(p, q)])
        })
        .collect();
    for period in (1..=full).filter(|d| full % d == 0) {
        let mut class: BTreeMap<i64, Option<(i64, i64)>> = BTreeMap::new();
        let consistent = line.iter().all(|&p| {
            let q = s - p;
            let t = [p, q];
            let h = (in_domain(eq, &t) && holds(eq, &t)).then(|| (g(2 * q, p), g(q, 2 * p)));
            *class.entry(p.rem_euclid(period)).or_insert(h) == h
        });
        if consistent {
            return period;
        }
    }
    full
}

fn members_in_box(f: &SolutionFamily, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    match f.steps.len() {
        1 => {
            for u in 0.. {
                let t = f.instantiate(&[u]);
                if t.iter().any(|x| x.abs() > bound) {
                    break;
                }
                out.push(t);
            }
        }
        _ => {
            for u in 0.. {
                let t = f.instantiate(&[u, 0]);
                if t.iter().any(|x| x.abs() > bound) {
                    break;
                }
                for v in 0.. {
                    let t = f.instantiate(&[u, v]);
                    if t.iter().any(|x| x.abs() > bound) {
                        break;
                    }
                    out.push(t);
                }
            }
        }
    }
    out
}

/// `(α, β, γ)` with `p+r = αq`, `q+r = βp`, `p+q = γr` when all divide.
pub fn auxiliary_abg(p: i64, q: i64, r: i64) -> Option<(i64, i64, i64)> {
    if (p + r) % q != 0 || (q + r) % p != 0 || (p + q) % r != 0 {
        return None;
    }
    Some(((p + r) / q, (q + r) / p, (p + q) / r))
}

/// LV-II representatives under `q ↔ r` and `P ↔ p+q+r`: least `P`, then
/// `q < r`.
pub fn lv_ii_representative(t: &[i64]) -> Vec<i64> {
    let (pp, q, r) = (t[0], t[1], t[2]);
    let n = q + r - pp;
    let mut orbit = vec![vec![pp, q, r], vec![pp, r, q], vec![n, q, r], vec![n, r, q]];
    orbit.sort();
    orbit.swap_remove(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rev_00_period_does_not_depend_on_box() {
        for eq in [Equation::Rev00Pos, Equation::Rev00Neg] {
            for bound in 3..=20 {
                for f in solve(eq, bound).unwrap().families {
                    let want = if f.base[0] + f.base[1] == 2 || f.base[0] + f.base[1] == -2 { 2 } else { 6 };
                    assert_eq!(f.modulus, want, "{} bound {bound}: {:?}", eq.id(), f);
                }
            }
        }
    }

    #[test]
    fn lv_i_small_box() {
        let s = solve(Equation::LvI, 10).unwrap();
        assert_eq!(s.tuples, vec![vec![1, 1, 1], vec![1, 1, 2], vec![1, 2, 3]]);
        assert_eq!(s.box_count, 1 + 3 + 6);
    }

    #[test]
    fn verify_examples() {
        assert!(verify_tuple(Equation::LvIII, &[3, 1, 1]).unwrap());
        assert!(verify_tuple(Equation::LvIII, &[3, 4, 7]).unwrap());
        assert!(!verify_tuple(Equation::LvIII, &[6, 1, 1]).unwrap());
        assert!(verify_tuple(Equation::LvI, &[2, 2, 2]).is_err());
        assert!(verify_tuple(Equation::RevA, &[-7, 4]).unwrap());
    }

    #[test]
    fn lv_iii_families_by_residue() {
        let s = solve(Equation::LvIII, 20).unwrap();
        assert_eq!(s.families.len(), 20);
        assert!(family_membership(&s.families, &[6, 9, 10]));
        assert!(!family_membership(&s.families, &[6, 1, 1]));
    }

    #[test]
    fn reversible_zero_families() {
        let pos = solve(Equation::Rev00Pos, 40).unwrap();
        let neg = solve(Equation::Rev00Neg, 40).unwrap();
        assert_eq!(pos.families.len(), 5);
        assert_eq!(neg.families.len(), 5);
        assert!(family_membership(&pos.families, &[-4, 7]));
        for f in pos.families.iter().chain(&neg.families) {
            for u in 0..5 {
                let t = f.instantiate(&[u]);
                let eq = if t[0] + t[1] >= 0 { Equation::Rev00Pos } else { Equation::Rev00Neg };
                assert!(verify_tuple(eq, &t).unwrap(), "{t:?}");
            }
        }
    }

    #[test]
    fn lv_ii_orbit_representatives() {
        assert_eq!(lv_ii_representative(&[2, 3, 1]), vec![2, 1, 3]);
        assert_eq!(lv_ii_representative(&[6, 4, 3]), vec![1, 3, 4]);
        assert_eq!(lv_ii_representative(&[3, 2, 2]), vec![1, 2, 2]);
    }

    #[test]
    fn bad_bound() {
        assert!(solve(Equation::LvI, 0).is_err());
    }
}
