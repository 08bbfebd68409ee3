use num_integer::Integer;
use proptest::prelude::*;

use foliation_genus::diophantine::{auxiliary_abg, brute_force, solve, verify_tuple, Equation};
use foliation_genus::exact::rational::parse_rational;
use foliation_genus::exact::{int, rat, BiPoly, OneForm, TriPoly, TruncSeries};
use foliation_genus::foliation::{
    build_lv_form, build_reversible_form, is_invariant_curve, LotkaVolterraParams, ReversibleParams,
};
use foliation_genus::genus::{closed_form_genus, genus_cl, genus_lv, genus_reversible, LvCase, RevCase};
use foliation_genus::local::{branch_count, multiplicity_series, AffineGerm, Branch};
use foliation_genus::pencil::{builtin, Alpha, Invariance, BUILTIN_IDS};

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

/// Homogeneous-ish polynomial from coefficients on the ten monomials of
/// degree ≤ 3 in x, y, z.
fn poly_from(c: &[i64]) -> TriPoly {
    const MONO: [&str; 10] = ["1", "x", "y", "z", "x^2", "x y", "y z", "z^2", "x^2 z", "y^3"];
    let mut s = String::new();
    for (k, m) in c.iter().zip(MONO) {
        if *k == 0 {
            continue;
        }
        let sign = if *k < 0 { "-" } else { "+" };
        let body = if m == "1" { String::new() } else { m.to_string() };
        s.push_str(&format!(" {sign} {} {body}", k.abs()));
    }
    if s.is_empty() {
        TriPoly::zero()
    } else {
        TriPoly::parse(&s).unwrap()
    }
}

fn poly() -> impl Strategy<Value = TriPoly> {
    proptest::collection::vec(-4i64..=4, 10).prop_map(|c| poly_from(&c))
}

fn form() -> impl Strategy<Value = OneForm> {
    (poly(), poly(), poly()).prop_map(|(a, b, c)| OneForm::new(a, b, c))
}

fn nonzero() -> impl Strategy<Value = i64> {
    prop_oneof![-6i64..=-1, 1i64..=6]
}

/// Orbit count of `k ↦ k + B (mod A)`: branches of `v^A = u^B` under monodromy.
fn orbit_count(a: u32, b: u32) -> u32 {
    let mut seen = vec![false; a as usize];
    let mut orbits = 0;
    for s in 0..a as usize {
        if seen[s] {
            continue;
        }
        orbits += 1;
        let mut k = s;
        while !seen[k] {
            seen[k] = true;
            k = (k + b as usize) % a as usize;
        }
    }
    orbits
}

proptest! {
    #![proptest_config(cfg(64))]

    #[test]
    fn rationals_are_canonical(n in -1000i64..1000, d in 1i64..1000) {
        let r = rat(n, d);
        prop_assert!(r.denom() > &0.into());
        prop_assert_eq!(r.numer().gcd(r.denom()), 1.into());
        prop_assert_eq!(parse_rational(&r.to_string()).unwrap(), r);
    }

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn homogenize_dehomogenize(c in proptest::collection::vec(-3i64..=3, 10)) {
        const CUBICS: [&str; 10] = ["x^3", "x^2 y", "x^2 z", "x y^2", "x y z", "x z^2", "y^3", "y^2 z", "y z^2", "z^3"];
        let mut p = TriPoly::zero();
        for (k, m) in c.iter().zip(CUBICS) {
            p = &p + &TriPoly::parse(m).unwrap().scale(&int(*k));
        }
        // z ∤ p, so the dehomogenized polynomial still has degree 3
        prop_assume!(!p.eval_var(2, &int(0)).is_zero());
        prop_assert_eq!(p.dehomogenize().homogenize(3), p);
    }

    #[test]
    fn wedge_is_antisymmetric(w in form(), e in form()) {
        let a = w.wedge_components(&e);
        let b = e.wedge_components(&w);
        for k in 0..3 {
            prop_assert_eq!(a[k].clone(), -b[k].clone());
        }
    }

    #[test]
    fn reversible_forms_are_projective(p in -9i64..=9, q in 1i64..=9, a in nonzero(), b in nonzero(), c in -3i64..=3) {
        prop_assume!(p != 0 && p.gcd(&q) == 1 && p + 2 * q != 0 && b * b != 4 * a * c);
        let spec = build_reversible_form(&ReversibleParams::new(p, q, int(a), int(b), int(c)).unwrap()).unwrap();
        prop_assert!(spec.form.radial_contraction().is_zero());
        prop_assert_eq!(spec.degree, 2);
        // x = 0 and z = 0 carry nonzero exponents p and −(p+2q)
        prop_assert!(is_invariant_curve(&spec, &TriPoly::x()));
        prop_assert!(is_invariant_curve(&spec, &TriPoly::z()));
        prop_assert!(!is_invariant_curve(&spec, &TriPoly::y()));
    }

    #[test]
    fn lv_forms_are_projective(p in nonzero(), q in 1i64..=6, r in 1i64..=6, a in nonzero(), b in nonzero(), c in nonzero()) {
        prop_assume!(p.gcd(&q).gcd(&r) == 1 && p + q + r != 0);
        let spec = build_lv_form(&LotkaVolterraParams::new(p, q, r, int(a), int(b), int(c)).unwrap()).unwrap();
        prop_assert!(spec.form.radial_contraction().is_zero());
        prop_assert_eq!(spec.degree, 2);
        for v in [TriPoly::x(), TriPoly::y(), TriPoly::z()] {
            prop_assert!(is_invariant_curve(&spec, &v));
        }
    }

    #[test]
    fn branch_count_is_monodromy_orbits(a in 1u32..=12, b in 1u32..=12) {
        prop_assert_eq!(branch_count(a, b), orbit_count(a, b));
    }

    #[test]
    fn node_branch_multiplicity_is_one(p in -7i64..=-1, q in 1i64..=7, n in -5i64..=5, d in 1i64..=5) {
        prop_assume!(p.gcd(&q) == 1 && n != 0);
        // p v du + q u dv, branch (t^q, t^{−p}) of v^q − u^{−p}
        let germ = AffineGerm::new(
            BiPoly::parse_uv(&format!("{} v", p)).unwrap(),
            BiPoly::parse_uv(&format!("{} u", q)).unwrap(),
            BiPoly::parse_uv(&format!("v^{q} - u^{}", -p)).unwrap(),
        );
        let br = Branch::monomial(q as usize, (-p) as usize, int(1), 48);
        prop_assert_eq!(multiplicity_series(&germ, &br, 48).unwrap(), 1);
        prop_assert_eq!(multiplicity_series(&germ, &br.rescale(&rat(n, d)), 48).unwrap(), 1);
    }

    #[test]
    fn proper_divisor_at_most_half(a in 1i64..=200, b in 1i64..=200) {
        let d = a.gcd(&b);
        if d != a {
            prop_assert!(2 * d <= a);
        }
    }

    #[test]
    fn solve_matches_brute_force(eq in 0usize..9, bound in 1i64..=40) {
        let eq = Equation::ALL[eq];
        let sol = solve(eq, bound).unwrap();
        let brute = brute_force(eq, bound).unwrap();
        prop_assert_eq!(sol.box_count, brute.len());
        for t in &brute {
            let covered = sol.tuples.contains(t)
                || sol.families.iter().any(|f| f.contains(t))
                || (eq == Equation::LvI && { let mut s = t.clone(); s.sort(); sol.tuples.contains(&s) })
                || (eq == Equation::LvII && sol.tuples.contains(&foliation_genus::diophantine::lv_ii_representative(t)));
            prop_assert!(covered, "{:?} {:?}", eq, t);
        }
        for f in &sol.families {
            for u in 0..4 {
                let params = vec![u; f.free_parameters()];
                let t = f.instantiate(&params);
                prop_assert!(verify_tuple(eq, &t).unwrap_or(false), "{:?} {:?}", eq, t);
            }
        }
    }

    #[test]
    fn lv_iii_rows_close(row in 0usize..12, u in 0i64..=10, v in 0i64..=10) {
        let rows = [
            (3, 1, 1), (3, 2, 2), (4, 1, 1), (4, 3, 3), (4, 1, 2), (4, 2, 3),
            (6, 1, 2), (6, 4, 5), (6, 1, 3), (6, 3, 5), (6, 2, 3), (6, 3, 4),
        ];
        let (p, q, r) = rows[row];
        prop_assert!(verify_tuple(Equation::LvIII, &[p, q + p * u, r + p * v]).unwrap());
    }
}

proptest! {
    #![proptest_config(cfg(12))]

    #[test]
    fn closed_form_matches_cl_reversible(case in 0usize..5, p in -15i64..=15, q in 1i64..=15) {
        let case = RevCase::ALL[case];
        prop_assume!(case.admits(p, q));
        let (a0, c0) = case.zeros();
        let spec = build_reversible_form(&ReversibleParams::instance(p, q, a0, c0).unwrap()).unwrap();
        let g = genus_reversible(p, q, case).unwrap();
        prop_assert_eq!(closed_form_genus(&spec).unwrap(), g);
        prop_assert_eq!(genus_cl(&spec).unwrap().genus, g);
    }

    #[test]
    fn closed_form_matches_cl_lv(case in 0usize..3, p in -15i64..=15, q in 1i64..=15, r in 1i64..=15) {
        let case = LvCase::ALL[case];
        prop_assume!(case.admits(p, q, r));
        let spec = build_lv_form(&LotkaVolterraParams::instance(p, q, r, case.zero()).unwrap()).unwrap();
        let g = genus_lv(p, q, r, case).unwrap();
        prop_assert_eq!(genus_cl(&spec).unwrap().genus, g);
    }

    #[test]
    fn reversible_swap_preserves_genus(p in -15i64..=15, q in 1i64..=15) {
        prop_assume!(p != 0 && p.gcd(&q) == 1 && p + 2 * q != 0);
        let g = |p: i64| {
            let spec = build_reversible_form(&ReversibleParams::instance(p, q, false, false).unwrap()).unwrap();
            closed_form_genus(&spec).unwrap()
        };
        prop_assert_eq!(g(p), g(-p - 2 * q));
    }

    #[test]
    fn lv_case_one_is_symmetric(p in 1i64..=12, q in 1i64..=12, r in 1i64..=12) {
        prop_assume!(p.gcd(&q).gcd(&r) == 1);
        let g = genus_lv(p, q, r, LvCase::I).unwrap();
        for (a, b, c) in [(q, p, r), (r, q, p), (p, r, q)] {
            prop_assert_eq!(genus_lv(a, b, c, LvCase::I).unwrap(), g);
        }
    }

    #[test]
    fn pencil_tangency_is_alpha_independent(id in 0usize..5, n in -20i64..=20, d in 1i64..=7) {
        let p = builtin(BUILTIN_IDS[id]).unwrap();
        let t = p.tangency().unwrap();
        let member = p.member(&Alpha::Finite(rat(n, d)));
        prop_assert_eq!(member.wedge(&p.omega_inf).unwrap(), t);
        for c in p.analyze().unwrap().components {
            if c.invariance != Invariance::InvariantAll {
                continue;
            }
            let f = TriPoly::parse(&c.factor).unwrap();
            let dfw = OneForm::differential(&f).wedge_components(&member);
            // invariant for both generators ⇒ invariant for every member: f | df ∧ ω_α
            prop_assert!(dfw.iter().all(|w| w.divides_into(&f).is_some()), "{} {}", p.id, c.factor);
        }
    }
}

#[test]
fn lv_i_auxiliary_identity() {
    for t in solve(Equation::LvI, 50).unwrap().tuples {
        let (a, b, g) = auxiliary_abg(t[0], t[1], t[2]).expect("all divisibilities hold");
        assert_eq!(a * g * b, 2 + a + b + g, "{t:?}");
    }
}

#[test]
fn truncated_series_leading_index() {
    let s = TruncSeries::new(vec![int(0), int(0), int(3), int(1)], 8);
    assert_eq!(s.valuation(), Some(2));
}
