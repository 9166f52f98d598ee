//! Yang-Baxter operators from (co)algebras, braid/QYBE checks, Yang-Baxter
//! commutators and WXZ-systems.

use thiserror::Error;

use crate::report::{Check, Report};
use crate::scalar::ScalarExpr;
use crate::structures::{Algebra, Coalgebra};
use crate::tensor::{LinMap, ProductSpace, Space, TensorError};

#[derive(Debug, Clone, Error)]
pub enum YbError {
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("parameter `{0}` must be a nonzero rational function")]
    ZeroParameter(&'static str),
    #[error("expected an endomorphism of V⊗V, found {0}")]
    NotTwoLegged(String),
}

fn pair(a: &Space, b: &Space) -> ProductSpace {
    ProductSpace::new(vec![a.clone(), b.clone()])
}

/// Coordinates of `u⊗v` from coordinates of `u` and `v`.
fn outer(u: &[ScalarExpr], v: &[ScalarExpr]) -> Vec<ScalarExpr> {
    let mut out = Vec::with_capacity(u.len() * v.len());
    for a in u {
        for b in v {
            out.push(if a.is_zero() || b.is_zero() { ScalarExpr::zero() } else { a * b });
        }
    }
    out
}

fn axpy(acc: &mut [ScalarExpr], c: &ScalarExpr, v: &[ScalarExpr]) {
    if c.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a = &*a + &(c * b);
        }
    }
}

fn basis_vector(n: usize, i: usize) -> Vec<ScalarExpr> {
    let mut v = vec![ScalarExpr::zero(); n];
    v[i] = ScalarExpr::one();
    v
}

/// Builds an endomorphism of `V⊗V` row by row from `image(i, j)`, the coordinates of the image of `e_i⊗e_j`.
fn two_leg_map(space: &Space, image: impl Fn(usize, usize) -> Vec<ScalarExpr>) -> LinMap {
    let n = space.dim();
    let vv = pair(space, space);
    let rows = (0..n * n).map(|k| image(k / n, k % n)).collect();
    LinMap::from_rows(vv.clone(), vv, rows).expect("rows have the product dimension")
}

/// `R^A_{r,s}(a⊗b) = s·ab⊗1 + r·1⊗ab − s·a⊗b`.
pub fn build_ra(alg: &Algebra, r: &ScalarExpr, s: &ScalarExpr) -> LinMap {
    let n = alg.dim();
    let unit = alg.unit_coords();
    two_leg_map(alg.space(), |i, j| {
        let ab = alg.product_of(i, j);
        let mut row = vec![ScalarExpr::zero(); n * n];
        axpy(&mut row, s, &outer(ab, unit));
        axpy(&mut row, r, &outer(unit, ab));
        axpy(&mut row, &-s, &outer(&basis_vector(n, i), &basis_vector(n, j)));
        row
    })
}

/// Closed-form inverse `a⊗b ↦ r⁻¹·ab⊗1 + s⁻¹·1⊗ab − s⁻¹·a⊗b`.
pub fn invert_ra(alg: &Algebra, r: &ScalarExpr, s: &ScalarExpr) -> Result<LinMap, YbError> {
    let ri = r.recip().map_err(|_| YbError::ZeroParameter("r"))?;
    let si = s.recip().map_err(|_| YbError::ZeroParameter("s"))?;
    let n = alg.dim();
    let unit = alg.unit_coords();
    Ok(two_leg_map(alg.space(), |i, j| {
        let ab = alg.product_of(i, j);
        let mut row = vec![ScalarExpr::zero(); n * n];
        axpy(&mut row, &ri, &outer(ab, unit));
        axpy(&mut row, &si, &outer(unit, ab));
        axpy(&mut row, &-&si, &outer(&basis_vector(n, i), &basis_vector(n, j)));
        row
    }))
}

/// `R_C^{p,t}(c⊗d) = p·ε(c)Δ(d) + t·ε(d)Δ(c) − p·c⊗d`.
pub fn build_rc(coalg: &Coalgebra, p: &ScalarExpr, t: &ScalarExpr) -> LinMap {
    let n = coalg.dim();
    let delta = coalg.comult();
    two_leg_map(coalg.space(), |i, j| {
        let mut row = vec![ScalarExpr::zero(); n * n];
        axpy(&mut row, &(p * coalg.counit_of(i)), delta.row(j));
        axpy(&mut row, &(t * coalg.counit_of(j)), delta.row(i));
        axpy(&mut row, &-p, &outer(&basis_vector(n, i), &basis_vector(n, j)));
        row
    })
}

/// The `W` of a Yang-Baxter system: `a⊗b ↦ s·ba⊗1 + r·1⊗ba − s·b⊗a`.
pub fn build_w(alg: &Algebra, r: &ScalarExpr, s: &ScalarExpr) -> LinMap {
    let n = alg.dim();
    let unit = alg.unit_coords();
    two_leg_map(alg.space(), |i, j| {
        let ba = alg.product_of(j, i);
        let mut row = vec![ScalarExpr::zero(); n * n];
        axpy(&mut row, s, &outer(ba, unit));
        axpy(&mut row, r, &outer(unit, ba));
        axpy(&mut row, &-s, &outer(&basis_vector(n, j), &basis_vector(n, i)));
        row
    })
}

/// The `Z` of a Yang-Baxter system: `c⊗d ↦ t·ε(c)Δ(d) + p·ε(d)Δ(c) − p·d⊗c`.
pub fn build_z(coalg: &Coalgebra, p: &ScalarExpr, t: &ScalarExpr) -> LinMap {
    let n = coalg.dim();
    let delta = coalg.comult();
    two_leg_map(coalg.space(), |i, j| {
        let mut row = vec![ScalarExpr::zero(); n * n];
        axpy(&mut row, &(t * coalg.counit_of(i)), delta.row(j));
        axpy(&mut row, &(p * coalg.counit_of(j)), delta.row(i));
        axpy(&mut row, &-p, &outer(&basis_vector(n, j), &basis_vector(n, i)));
        row
    })
}

/// The single leg space of an endomorphism of `V⊗V`.
pub fn leg_space(r: &LinMap) -> Result<&Space, YbError> {
    let f = r.domain().factors();
    if !r.is_endomorphism() || f.len() != 2 || f[0] != f[1] {
        return Err(YbError::NotTwoLegged(format!("{} -> {}", r.domain(), r.codomain())));
    }
    Ok(&f[0])
}

/// Braid equation `R₁₂∘R₂₃∘R₁₂ = R₂₃∘R₁₂∘R₂₃`.
pub fn check_braid(r: &LinMap) -> Result<Report, YbError> {
    let v = leg_space(r)?;
    let r12 = r.lift12(v)?;
    let r23 = r.lift23(v)?;
    let lhs = r12.then(&r23)?.then(&r12)?;
    let rhs = r23.then(&r12)?.then(&r23)?;
    let mut report = Report::new(format!("braid equation on {}", r.domain()));
    report.equation("braid", &lhs, &rhs)?;
    Ok(report)
}

/// Quantum Yang-Baxter equation `R₁₂∘R₁₃∘R₂₃ = R₂₃∘R₁₃∘R₁₂`.
pub fn check_qybe(r: &LinMap) -> Result<Report, YbError> {
    leg_space(r)?;
    let mut report = Report::new(format!("quantum Yang-Baxter equation on {}", r.domain()));
    report.push(Check::vanishing("qybe", yb_commutator(r, r, r)?));
    Ok(report)
}

fn legs(m: &LinMap, what: &str) -> Result<(Space, Space), YbError> {
    let f = m.domain().factors();
    if !m.is_endomorphism() || f.len() != 2 {
        return Err(YbError::NotTwoLegged(format!("{what}: {} -> {}", m.domain(), m.codomain())));
    }
    Ok((f[0].clone(), f[1].clone()))
}

/// `[R, S, T] = R₁₂∘S₁₃∘T₂₃ − T₂₃∘S₁₃∘R₁₂` on `V⊗V′⊗V″`, for `R` on `V⊗V′`,
/// `S` on `V⊗V″` and `T` on `V′⊗V″`.
pub fn yb_commutator(r: &LinMap, s: &LinMap, t: &LinMap) -> Result<LinMap, YbError> {
    let (v, vp) = legs(r, "R")?;
    let (v2, vpp) = legs(s, "S")?;
    let (vp2, vpp2) = legs(t, "T")?;
    for (a, b) in [(&v, &v2), (&vp, &vp2), (&vpp, &vpp2)] {
        if a != b {
            return Err(TensorError::Mismatch {
                expected: a.label().to_string(),
                found: b.label().to_string(),
            }
            .into());
        }
    }
    let r12 = r.lift12(&vpp)?;
    let s13 = s.lift13(&vp)?;
    let t23 = t.lift23(&v)?;
    let lhs = t23.then(&s13)?.then(&r12)?;
    let rhs = r12.then(&s13)?.then(&t23)?;
    Ok(lhs.sub(&rhs)?)
}

/// Maps `W` on `V⊗V`, `X` on `V⊗V′`, `Z` on `V′⊗V′`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WxzSystem {
    v: Space,
    vp: Space,
    w: LinMap,
    x: LinMap,
    z: LinMap,
}

impl WxzSystem {
    pub fn new(w: LinMap, x: LinMap, z: LinMap) -> Result<WxzSystem, YbError> {
        let v = leg_space(&w)?.clone();
        let vp = leg_space(&z)?.clone();
        let (xv, xvp) = legs(&x, "X")?;
        if xv != v || xvp != vp {
            return Err(TensorError::Mismatch {
                expected: format!("{v}⊗{vp}"),
                found: x.domain().to_string(),
            }
            .into());
        }
        Ok(WxzSystem { v, vp, w, x, z })
    }

    pub fn v(&self) -> &Space {
        &self.v
    }

    pub fn vp(&self) -> &Space {
        &self.vp
    }

    pub fn w(&self) -> &LinMap {
        &self.w
    }

    pub fn x(&self) -> &LinMap {
        &self.x
    }

    pub fn z(&self) -> &LinMap {
        &self.z
    }

    pub fn with_x(&self, x: LinMap) -> Result<WxzSystem, YbError> {
        WxzSystem::new(self.w.clone(), x, self.z.clone())
    }
}

/// Evaluates `[W,W,W]`, `[Z,Z,Z]`, `[W,X,X]` and `[X,X,Z]`.
pub fn check_wxz(sys: &WxzSystem) -> Report {
    let (w, x, z) = (&sys.w, &sys.x, &sys.z);
    let c = |a, b, c| yb_commutator(a, b, c).expect("legs consistent by construction");
    let ((www, zzz), (wxx, xxz)) = rayon::join(
        || rayon::join(|| c(w, w, w), || c(z, z, z)),
        || rayon::join(|| c(w, x, x), || c(x, x, z)),
    );
    let mut report = Report::new(format!("WXZ-system on {} and {}", sys.v, sys.vp));
    report.push(Check::vanishing("[W,W,W]", www));
    report.push(Check::vanishing("[Z,Z,Z]", zzz));
    report.push(Check::vanishing("[W,X,X]", wxx));
    report.push(Check::vanishing("[X,X,Z]", xxz));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{quadratic_algebra, quadratic_coalgebra};
    use crate::scalar::sx;

    fn symbolic(name: &str) -> ScalarExpr {
        sx(name)
    }

    // W of the two-dimensional example at r = 1, as printed
    fn printed_w(space: &Space) -> LinMap {
        let rows = [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "1-s", "s", "0"], ["1", "0", "0", "-s"]];
        LinMap::from_rows(
            pair(space, space),
            pair(space, space),
            rows.iter().map(|r| r.iter().map(|e| sx(e)).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn one_dimensional_algebra_gives_r_times_identity() {
        let k = Algebra::ground_field();
        let r = build_ra(&k, &symbolic("r"), &symbolic("s"));
        assert_eq!(r.get(0, 0), &sx("r"));
        assert_eq!(r, LinMap::identity(r.domain().clone()).scale(&sx("r")));
    }

    #[test]
    fn ra_composed_with_flip_is_printed_w() {
        let a = quadratic_algebra(&sx("s")).unwrap();
        let r = build_ra(&a, &sx("1"), &sx("s"));
        let w = LinMap::flip(a.space(), a.space()).then(&r).unwrap();
        assert_eq!(w, printed_w(a.space()));
    }

    #[test]
    fn ra_on_z2_by_direct_expansion() {
        // oracle: expand s·(ab)⊗1 + r·1⊗(ab) − s·a⊗b using the group law g^i g^j = g^{i+j mod 2}
        let a = Algebra::cyclic_group(2);
        let (r, s) = (sx("r"), sx("s"));
        let m = build_ra(&a, &r, &s);
        for i in 0..2 {
            for j in 0..2 {
                let prod = (i + j) % 2;
                let mut expected = vec![ScalarExpr::zero(); 4];
                expected[prod * 2] = &expected[prod * 2] + &s;
                expected[prod] = &expected[prod] + &r;
                expected[i * 2 + j] = &expected[i * 2 + j] - &s;
                assert_eq!(m.row(i * 2 + j), &expected[..]);
            }
        }
        // g⊗g ↦ (r+s)·1⊗1 − s·g⊗g
        assert_eq!(m.row(3), &[sx("r+s"), sx("0"), sx("0"), sx("-s")]);
        assert!(check_braid(&m).unwrap().is_pass());
    }

    #[test]
    fn braid_holds_symbolically() {
        let (r, s, p, t) = (sx("r"), sx("s"), sx("p"), sx("t"));
        for alg in [
            Algebra::ground_field(),
            Algebra::cyclic_group(2),
            Algebra::cyclic_group(3),
            quadratic_algebra(&sx("s")).unwrap(),
        ] {
            assert!(check_braid(&build_ra(&alg, &r, &s)).unwrap().is_pass());
        }
        for c in [
            Coalgebra::single_group_like(),
            Coalgebra::group_like(3),
            quadratic_coalgebra(&sx("s")).unwrap(),
        ] {
            assert!(check_braid(&build_rc(&c, &p, &t)).unwrap().is_pass());
        }
    }

    #[test]
    fn identity_and_flip_are_braided() {
        let v = Space::new("V", vec!["a", "b"]).unwrap();
        let id = LinMap::identity(pair(&v, &v));
        assert!(check_braid(&id).unwrap().is_pass());
        assert!(check_qybe(&id).unwrap().is_pass());
        assert!(check_braid(&LinMap::flip(&v, &v)).unwrap().is_pass());
        assert!(yb_commutator(&id, &id, &id).unwrap().is_zero());
    }

    #[test]
    fn closed_form_inverse() {
        let (r, s) = (sx("r"), sx("s"));
        for alg in [Algebra::cyclic_group(2), quadratic_algebra(&sx("s")).unwrap()] {
            let m = build_ra(&alg, &r, &s);
            let inv = invert_ra(&alg, &r, &s).unwrap();
            assert_eq!(m.then(&inv).unwrap(), LinMap::identity(m.domain().clone()));
            assert_eq!(inv.then(&m).unwrap(), LinMap::identity(m.domain().clone()));
        }
        let z2 = Algebra::cyclic_group(2);
        let one = sx("1");
        assert_eq!(
            invert_ra(&z2, &one, &one).unwrap(),
            build_ra(&z2, &one, &one).invert().unwrap()
        );
        assert!(matches!(invert_ra(&z2, &sx("0"), &one), Err(YbError::ZeroParameter("r"))));
    }

    #[test]
    fn rc_on_group_like_and_quadratic() {
        let g = Coalgebra::single_group_like();
        let m = build_rc(&g, &sx("p"), &sx("t"));
        assert_eq!(m.get(0, 0), &sx("t"));

        let c = quadratic_coalgebra(&sx("s")).unwrap();
        let a = quadratic_algebra(&sx("s")).unwrap();
        let z = LinMap::flip(c.space(), c.space())
            .then(&build_rc(&c, &sx("s"), &sx("1")))
            .unwrap();
        assert_eq!(z.entries(), printed_w(a.space()).transpose().entries());
    }

    #[test]
    fn w_and_z_agree_with_flipped_operators() {
        let (r, s, p, t) = (sx("r"), sx("s"), sx("p"), sx("t"));
        let a = quadratic_algebra(&sx("s")).unwrap();
        let c = quadratic_coalgebra(&sx("s")).unwrap();
        let tau_a = LinMap::flip(a.space(), a.space());
        let tau_c = LinMap::flip(c.space(), c.space());
        assert_eq!(build_w(&a, &r, &s), tau_a.then(&build_ra(&a, &r, &s)).unwrap());
        assert_eq!(build_z(&c, &p, &t), tau_c.then(&build_rc(&c, &p, &t)).unwrap());
        let z3 = Algebra::cyclic_group(3);
        assert_eq!(
            build_w(&z3, &r, &s),
            LinMap::flip(z3.space(), z3.space()).then(&build_ra(&z3, &r, &s)).unwrap()
        );
        // W(1⊗1) = r·1⊗1
        let w = build_w(&z3, &r, &s);
        assert_eq!(w.row(0)[0], r);
        assert!(w.row(0)[1..].iter().all(ScalarExpr::is_zero));
    }

    #[test]
    fn rc_is_dual_to_ra_on_the_diagonal() {
        // oracle: transpose of R_C^{p,t} on A* is a⊗b ↦ t·ab⊗1 + p·1⊗ab − p·a⊗b,
        // which coincides with R^A_{p,p} when t = p
        let p = sx("p");
        for alg in [Algebra::cyclic_group(3), quadratic_algebra(&sx("s")).unwrap()] {
            let rc = build_rc(&alg.dual(), &p, &p);
            assert_eq!(rc.dual(), build_ra(&alg, &p, &p));
            let general = build_rc(&alg.dual(), &p, &sx("t")).dual();
            let expected = build_ra(&alg, &p, &p).add(
                &two_leg_map(alg.space(), |i, j| {
                    outer(alg.product_of(i, j), alg.unit_coords())
                })
                .scale(&sx("t-p")),
            );
            assert_eq!(general, expected.unwrap());
        }
    }

    #[test]
    fn braid_iff_qybe_of_r_tau() {
        let v = Space::new("V", vec!["a", "b"]).unwrap();
        let a = quadratic_algebra(&sx("s")).unwrap();
        let mut ops = vec![build_ra(&a, &sx("r"), &sx("s")), LinMap::flip(&v, &v)];
        // a non-braided operator
        let mut bad = build_ra(&Algebra::cyclic_group(2), &sx("r"), &sx("s"));
        bad.set(1, 2, sx("r"));
        ops.push(bad);
        for r in ops {
            let tau = LinMap::flip(leg_space(&r).unwrap(), leg_space(&r).unwrap());
            let braid = check_braid(&r).unwrap().is_pass();
            let qybe = check_qybe(&tau.then(&r).unwrap()).unwrap().is_pass();
            assert_eq!(braid, qybe);
        }
    }

    #[test]
    fn commutator_rejects_inconsistent_legs() {
        let v = Space::new("V", vec!["a", "b"]).unwrap();
        let w = Space::new("W", vec!["c"]).unwrap();
        let vv = LinMap::identity(pair(&v, &v));
        let vw = LinMap::identity(pair(&v, &w));
        let ww = LinMap::identity(pair(&w, &w));
        assert!(yb_commutator(&vv, &vw, &ww).is_err());
        assert!(yb_commutator(&vv, &vw, &vw).unwrap().is_zero());
        assert!(check_braid(&vw).is_err());
    }
}
