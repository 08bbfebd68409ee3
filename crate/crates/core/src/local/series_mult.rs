//! Multiplicity of a foliation along a branch through truncated series, and
//! its behaviour under blow-up.

use super::puiseux::{puiseux_branches, Branch};
use super::{blowup, AffineGerm, Chart};
use crate::error::{Error, Result};
use crate::exact::series::{eval_poly, DEFAULT_ORDER, MAX_ORDER};
use crate::exact::{int, TruncSeries};

/// `i_p(X, B)`: the order of `X₁` in `dα·X₁ = X∘α`.
pub fn multiplicity_series(germ: &AffineGerm, branch: &Branch, order: usize) -> Result<u32> {
    let (xu, xv) = germ.field();
    let n = order.min(branch.u.order()).min(branch.v.order());
    let at = [branch.u.with_order(n), branch.v.with_order(n)];
    let a = eval_poly(&xu, &at, n);
    let b = eval_poly(&xv, &at, n);
    let du = at[0].derivative();
    let dv = at[1].derivative();
    let cross = a.mul(&dv).sub(&b.mul(&du));
    if !cross.is_zero() {
        return Err(Error::BranchNotInvariant);
    }
    let (num, den) = if !du.is_zero() { (a, du) } else { (b, dv) };
    let vden = den.valuation().ok_or(Error::InsufficientTruncation(n))?;
    let vnum = num.valuation().ok_or(Error::InsufficientTruncation(n))?;
    if vnum < vden {
        return Err(Error::BranchNotInvariant);
    }
    Ok((vnum - vden) as u32)
}

/// Branches of the germ's curve with their series multiplicities, doubling
/// the truncation order from 64 up to 512 when needed.
pub fn multiplicity_series_auto(germ: &AffineGerm) -> Result<Vec<(Branch, u32)>> {
    multiplicity_series_from(germ, DEFAULT_ORDER)
}

/// As [`multiplicity_series_auto`], starting at `order`.
pub fn multiplicity_series_from(germ: &AffineGerm, order: usize) -> Result<Vec<(Branch, u32)>> {
    let mut order = order.max(2);
    loop {
        let attempt = puiseux_branches(&germ.curve, order).and_then(|bs| {
            bs.into_iter()
                .map(|b| multiplicity_series(germ, &b, order).map(|m| (b, m)))
                .collect::<Result<Vec<_>>>()
        });
        match attempt {
            Err(Error::InsufficientTruncation(_)) if order < MAX_ORDER => order *= 2,
            other => return other,
        }
    }
}

/// One blow-up step along a branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainLink {
    pub i_before: u32,
    pub i_after: u32,
    pub nu: u32,
    pub m: u32,
    pub dicritical: bool,
}

impl ChainLink {
    /// `i_{p'} + m(ν − 1)`, or `i_{p'} + mν` when dicritical.
    pub fn reconstructed(&self) -> u32 {
        let k = if self.dicritical { self.nu } else { self.nu - 1 };
        self.i_after + self.m * k
    }
}

/// Blows up once along `branch`, recomputes the multiplicity on the strict
/// transform and checks the blow-up relation. Returns the link together with
/// the transformed germ and branch.
pub fn multiplicity_blowup_relation(
    germ: &AffineGerm,
    branch: &Branch,
    order: usize,
) -> Result<(ChainLink, AffineGerm, Branch)> {
    let i_before = multiplicity_series(germ, branch, order)?;
    let (ou, ov) = branch.exponents();
    let x_chart = match (ou, ov) {
        (Some(a), Some(b)) => b >= a,
        (Some(_), None) => true,
        (None, _) => false,
    };
    let (chart, e, other) = if x_chart {
        (Chart::X, &branch.u, &branch.v)
    } else {
        (Chart::Y, &branch.v, &branch.u)
    };
    let slope = other.div(e)?;
    let c0 = slope.coeff(0);
    let lifted = slope.sub(&TruncSeries::constant(c0.clone(), slope.order()));
    let r = blowup(germ, chart)?;
    let (new_germ, new_branch) = if x_chart {
        (r.germ.translate(&int(0), &c0), Branch::new(branch.u.clone(), lifted))
    } else {
        (r.germ.translate(&c0, &int(0)), Branch::new(lifted, branch.v.clone()))
    };
    let i_after = multiplicity_series(&new_germ, &new_branch, order)?;
    let link = ChainLink {
        i_before,
        i_after,
        nu: r.nu,
        m: branch.multiplicity() as u32,
        dicritical: r.dicritical,
    };
    if link.reconstructed() != i_before {
        return Err(Error::BlowupInconsistency(format!(
            "i_p = {i_before} but i_p' + m(ν−1{}) = {}",
            if link.dicritical { "+1" } else { "" },
            link.reconstructed()
        )));
    }
    Ok((link, new_germ, new_branch))
}

/// Repeats [`multiplicity_blowup_relation`] while the point stays singular,
/// at most `max_steps` times.
pub fn blowup_chain(germ: &AffineGerm, branch: &Branch, order: usize, max_steps: usize) -> Result<Vec<ChainLink>> {
    let mut links = Vec::new();
    let (mut g, mut b) = (germ.clone(), branch.clone());
    for _ in 0..max_steps {
        if !g.is_singular() {
            break;
        }
        let (link, g2, b2) = multiplicity_blowup_relation(&g, &b, order)?;
        let done = link.i_after == 0;
        links.push(link);
        g = g2;
        b = b2;
        if done {
            break;
        }
    }
    Ok(links)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, BiPoly, Rational};

    fn b(s: &str) -> BiPoly {
        BiPoly::parse_uv(s).unwrap()
    }

    #[test]
    fn node_along_axis() {
        // y dx + x dy along (t, 0)
        let g = AffineGerm::new(b("v"), b("u"), b("v"));
        let br = Branch::new(TruncSeries::t(16), TruncSeries::zero(16));
        assert_eq!(multiplicity_series(&g, &br, 16).unwrap(), 1);
    }

    #[test]
    fn linear_saddle_branch() {
        // p v du + q u dv with (p,q) = (−3, 2): branch of v² − u³... (t², t³)
        let g = AffineGerm::new(b("-3 v"), b("2 u"), b("v^2 - u^3"));
        let br = Branch::monomial(2, 3, Rational::from_integer(1.into()), 32);
        assert_eq!(multiplicity_series(&g, &br, 32).unwrap(), 1);
        let all = multiplicity_series_auto(&g).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].1, 1);
    }

    #[test]
    fn rescaling_invariance() {
        let g = AffineGerm::new(b("-3 v"), b("2 u"), b("v^2 - u^3"));
        let br = Branch::monomial(2, 3, Rational::from_integer(1.into()), 32);
        let r = br.rescale(&rat(-5, 3));
        assert_eq!(multiplicity_series(&g, &r, 32).unwrap(), 1);
    }

    #[test]
    fn non_invariant_branch() {
        let g = AffineGerm::new(b("-3 v"), b("2 u"), b("v"));
        let br = Branch::new(TruncSeries::t(8), TruncSeries::t(8));
        assert!(matches!(multiplicity_series(&g, &br, 8), Err(Error::BranchNotInvariant)));
    }

    #[test]
    fn dicritical_radial_relation() {
        // x dy − y dx along (t, t): i = 1 = 0 + 1·1
        let g = AffineGerm::new(b("-v"), b("u"), b("v - u"));
        let br = Branch::new(TruncSeries::t(16), TruncSeries::t(16));
        let (link, _, _) = multiplicity_blowup_relation(&g, &br, 16).unwrap();
        assert!(link.dicritical);
        assert_eq!(link.i_before, 1);
        assert_eq!(link.i_after, 0);
    }

    #[test]
    fn cusp_with_smooth_point_after() {
        // ratios −3:2 → −1:2 → 1:1, the last blow-up is dicritical
        let g = AffineGerm::new(b("-3 v"), b("2 u"), b("v^2 - u^3"));
        let br = Branch::monomial(2, 3, int(1), 32);
        let links = blowup_chain(&g, &br, 32, 3).unwrap();
        assert_eq!(links.len(), 3);
        assert_eq!((links[0].m, links[1].m), (2, 1));
        assert!(links[2].dicritical);
        for l in &links {
            assert_eq!(l.nu, 1);
            assert_eq!(l.reconstructed(), l.i_before);
        }
    }
}
