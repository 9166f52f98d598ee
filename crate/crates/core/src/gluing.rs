//! Gluing a WXZ-system into one Yang-Baxter operator on `V⊕V′`, the q-Hecke
//! variant built from an entwining map, and the quadratic relations.

use thiserror::Error;

use crate::entwining::{invert_entwining, EntwiningError, EntwiningStructure};
use crate::report::{Check, Report};
use crate::scalar::ScalarExpr;
use crate::structures::{Algebra, Coalgebra};
use crate::tensor::{LinMap, ProductSpace, Space, TensorError};
use crate::yang_baxter::{build_ra, build_rc, check_braid, check_wxz, leg_space, WxzSystem, YbError};

#[derive(Debug, Clone, Error)]
pub enum GlueError {
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    YangBaxter(#[from] YbError),
    #[error(transparent)]
    Entwining(#[from] EntwiningError),
    #[error("WXZ equations fail\n{0}")]
    WxzFailed(Box<Report>),
    #[error("X is not invertible")]
    Singular,
    #[error("q must be a nonzero rational function")]
    ZeroParameter,
}

/// An operator on `(V⊕V′)⊗(V⊕V′)`; the sum basis lists `V` first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluedOperator {
    sum_space: Space,
    v: Space,
    vp: Space,
    map: LinMap,
}

/// The four blocks of a glued operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blocks {
    /// `V⊗V → V⊗V`.
    pub vv: LinMap,
    /// `V′⊗V′ → V′⊗V′`.
    pub vpvp: LinMap,
    /// `V′⊗V → V⊗V′`.
    pub vpv: LinMap,
    /// `V⊗V′ → V′⊗V`.
    pub vvp: LinMap,
}

fn pair(a: &Space, b: &Space) -> ProductSpace {
    ProductSpace::new(vec![a.clone(), b.clone()])
}

/// `V⊕V′` with `V′` labels prefixed by its space label on collision.
pub fn direct_sum(v: &Space, vp: &Space) -> Space {
    let clash = vp.basis().iter().any(|b| v.position(b).is_some());
    let mut basis: Vec<String> = v.basis().to_vec();
    basis.extend(vp.basis().iter().map(|b| if clash { format!("{}.{b}", vp.label()) } else { b.clone() }));
    Space::new(format!("{}⊕{}", v.label(), vp.label()), basis).expect("labels made distinct")
}

impl GluedOperator {
    /// Assembles the operator from its four blocks.
    pub fn assemble(v: &Space, vp: &Space, blocks: &Blocks) -> Result<GluedOperator, TensorError> {
        let (n, m) = (v.dim(), vp.dim());
        let sum = direct_sum(v, vp);
        let expect = |map: &LinMap, d: ProductSpace, c: ProductSpace| {
            if map.domain() != &d || map.codomain() != &c {
                return Err(TensorError::Mismatch {
                    expected: format!("{d} -> {c}"),
                    found: format!("{} -> {}", map.domain(), map.codomain()),
                });
            }
            Ok(())
        };
        expect(&blocks.vv, pair(v, v), pair(v, v))?;
        expect(&blocks.vpvp, pair(vp, vp), pair(vp, vp))?;
        expect(&blocks.vpv, pair(vp, v), pair(v, vp))?;
        expect(&blocks.vvp, pair(v, vp), pair(vp, v))?;

        let big = pair(&sum, &sum);
        let mut map = LinMap::zero(big.clone(), big);
        let nn = n + m;
        // (block, offset of first leg, offset of second leg) for source and target
        let place = |map: &mut LinMap, block: &LinMap, src: (usize, usize), dst: (usize, usize)| {
            let (d2, c2) = (block.domain().factors()[1].dim(), block.codomain().factors()[1].dim());
            for i in 0..block.rows() {
                let row = (src.0 + i / d2) * nn + src.1 + i % d2;
                for j in 0..block.cols() {
                    let col = (dst.0 + j / c2) * nn + dst.1 + j % c2;
                    map.set(row, col, block.get(i, j).clone());
                }
            }
        };
        place(&mut map, &blocks.vv, (0, 0), (0, 0));
        place(&mut map, &blocks.vpvp, (n, n), (n, n));
        place(&mut map, &blocks.vpv, (n, 0), (0, n));
        place(&mut map, &blocks.vvp, (0, n), (n, 0));
        Ok(GluedOperator {
            sum_space: sum,
            v: v.clone(),
            vp: vp.clone(),
            map,
        })
    }

    pub fn sum_space(&self) -> &Space {
        &self.sum_space
    }

    pub fn map(&self) -> &LinMap {
        &self.map
    }

    /// Reads the four blocks back out of the full matrix.
    pub fn blocks(&self) -> Blocks {
        let (v, vp) = (&self.v, &self.vp);
        let n = v.dim();
        let nn = self.sum_space.dim();
        let take = |d: ProductSpace, c: ProductSpace, src: (usize, usize), dst: (usize, usize)| {
            let (d2, c2) = (d.factors()[1].dim(), c.factors()[1].dim());
            LinMap::from_fn(d, c, |i, j| {
                let row = (src.0 + i / d2) * nn + src.1 + i % d2;
                let col = (dst.0 + j / c2) * nn + dst.1 + j % c2;
                self.map.get(row, col).clone()
            })
        };
        Blocks {
            vv: take(pair(v, v), pair(v, v), (0, 0), (0, 0)),
            vpvp: take(pair(vp, vp), pair(vp, vp), (n, n), (n, n)),
            vpv: take(pair(vp, v), pair(v, vp), (n, 0), (0, n)),
            vvp: take(pair(v, vp), pair(vp, v), (0, n), (n, 0)),
        }
    }
}

fn system_blocks(sys: &WxzSystem) -> Result<Blocks, GlueError> {
    let (v, vp) = (sys.v(), sys.vp());
    let u = LinMap::flip(vp, v).then(sys.x())?;
    let u_inv = u.invert().map_err(|e| match e {
        TensorError::Singular => GlueError::Singular,
        other => other.into(),
    })?;
    Ok(Blocks {
        vv: LinMap::flip(v, v).then(sys.w())?,
        vpvp: LinMap::flip(vp, vp).then(sys.z())?,
        vpv: u,
        vvp: u_inv,
    })
}

/// `R ⊕_U R′` with `R = W∘τ`, `R′ = Z∘τ`, `U = X∘τ_{V′,V}` on `V′⊗V` and `U⁻¹` on `V⊗V′`.
pub fn glue(sys: &WxzSystem) -> Result<GluedOperator, GlueError> {
    let report = check_wxz(sys);
    if !report.is_pass() {
        return Err(GlueError::WxzFailed(Box::new(report)));
    }
    glue_unchecked(sys)
}

/// [`glue`] without the WXZ precondition; used for negative controls.
pub fn glue_unchecked(sys: &WxzSystem) -> Result<GluedOperator, GlueError> {
    Ok(GluedOperator::assemble(sys.v(), sys.vp(), &system_blocks(sys)?)?)
}

/// The q-Hecke glue: parameters `r = t = q`, `s = p = q⁻¹`, `a⊗c ↦ ψ⁻¹(a⊗c)`,
/// `c⊗a ↦ ψ(c⊗a) + (q − q⁻¹)·c⊗a`.
pub fn hecke_glue(e: &EntwiningStructure, q: &ScalarExpr) -> Result<GluedOperator, GlueError> {
    let qi = q.recip().map_err(|_| GlueError::ZeroParameter)?;
    let report = e.check();
    if !report.is_pass() {
        return Err(EntwiningError::NotEntwining(Box::new(report)).into());
    }
    let psi_inv = invert_entwining(e).map_err(|err| match err {
        EntwiningError::Singular => GlueError::Singular,
        other => other.into(),
    })?;
    let (a, c) = (e.algebra(), e.coalgebra());
    let blocks = Blocks {
        vv: build_ra(a, q, &qi),
        vpvp: build_rc(c, &qi, q),
        vpv: e.psi().clone(),
        vvp: psi_inv,
    };
    let mut glued = GluedOperator::assemble(a.space(), c.space(), &blocks)?;
    let (n, nn) = (a.dim(), glued.sum_space.dim());
    let coeff = q - &qi;
    for ci in n..nn {
        for ai in 0..n {
            let idx = ci * nn + ai;
            let cur = glued.map.get(idx, idx).clone();
            glued.map.set(idx, idx, &cur + &coeff);
        }
    }
    Ok(glued)
}

/// `(R + q⁻¹I)∘(R − qI) = 0` together with the braid equation.
pub fn check_hecke(r: &LinMap, q: &ScalarExpr) -> Result<Report, GlueError> {
    let qi = q.recip().map_err(|_| GlueError::ZeroParameter)?;
    leg_space(r)?;
    let id = LinMap::identity(r.domain().clone());
    let quad = r.sub(&id.scale(q))?.then(&r.add(&id.scale(&qi))?)?;
    let mut report = Report::new(format!("q-Hecke relation on {}", r.domain()));
    report.push(Check::vanishing("(R + q⁻¹I)∘(R − qI) = 0", quad));
    report.absorb("braid", check_braid(r)?);
    Ok(report)
}

fn quadratic(r: &LinMap, plus: &ScalarExpr, minus: &ScalarExpr, name: &str) -> Result<Report, TensorError> {
    let id = LinMap::identity(r.domain().clone());
    let quad = r.sub(&id.scale(minus))?.then(&r.add(&id.scale(plus))?)?;
    let mut report = Report::new(format!("annihilating polynomial on {}", r.domain()));
    report.push(Check::vanishing(name, quad));
    Ok(report)
}

/// `(R + sI)∘(R − rI) = 0` for `R = R^A_{r,s}`.
pub fn annihilating_poly_check(alg: &Algebra, r: &ScalarExpr, s: &ScalarExpr) -> Report {
    quadratic(&build_ra(alg, r, s), s, r, "(R + sI)∘(R − rI) = 0").expect("endomorphism")
}

/// `(R + pI)∘(R − tI) = 0` for `R = R_C^{p,t}`.
pub fn annihilating_poly_check_coalgebra(coalg: &Coalgebra, p: &ScalarExpr, t: &ScalarExpr) -> Report {
    quadratic(&build_rc(coalg, p, t), p, t, "(R + pI)∘(R − tI) = 0").expect("endomorphism")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entwining::{flip_entwining, wxz_from_entwining};
    use crate::examples::{entwining_zoo, quadratic_entwining, quadratic_x, structure_zoo};
    use crate::scalar::sx;

    fn quadratic_system() -> WxzSystem {
        let e = quadratic_entwining(&sx("q"), &sx("s")).unwrap();
        wxz_from_entwining(&e, &sx("1"), &sx("s"), &sx("s"), &sx("1")).unwrap()
    }

    #[test]
    fn direct_sum_disambiguates() {
        let a = Space::new("A", vec!["1", "g"]).unwrap();
        let b = Space::new("B", vec!["1", "h"]).unwrap();
        assert_eq!(direct_sum(&a, &b).basis(), ["1", "g", "B.1", "B.h"]);
        let c = Space::new("C", vec!["e"]).unwrap();
        assert_eq!(direct_sum(&a, &c).basis(), ["1", "g", "e"]);
    }

    #[test]
    fn glue_with_one_group_like() {
        let e = flip_entwining(Algebra::cyclic_group(2), Coalgebra::single_group_like());
        let sys = wxz_from_entwining(&e, &sx("r"), &sx("s"), &sx("p"), &sx("t")).unwrap();
        let g = glue(&sys).unwrap();
        assert_eq!(g.map().rows(), 9);
        assert!(check_braid(g.map()).unwrap().is_pass());
    }

    #[test]
    fn glued_quadratic_system_is_braided() {
        let sys = quadratic_system();
        let g = glue(&sys).unwrap();
        assert_eq!(g.map().rows(), 16);
        assert!(check_braid(g.map()).unwrap().is_pass());
        let b = g.blocks();
        assert_eq!(b.vv, LinMap::flip(sys.v(), sys.v()).then(sys.w()).unwrap());
        assert_eq!(b.vpvp, LinMap::flip(sys.vp(), sys.vp()).then(sys.z()).unwrap());
        assert_eq!(b.vpv, LinMap::flip(sys.vp(), sys.v()).then(sys.x()).unwrap());
        assert_eq!(b.vpv.then(&b.vvp).unwrap(), LinMap::identity(b.vpv.domain().clone()));
        assert_eq!(GluedOperator::assemble(sys.v(), sys.vp(), &b).unwrap(), g);
    }

    #[test]
    fn broken_x_breaks_the_glue() {
        let sys = quadratic_system();
        assert_eq!(sys.x(), &quadratic_x(&sx("q")));
        let mut x = sys.x().clone();
        x.set(3, 0, sx("1"));
        let bad = sys.with_x(x).unwrap();
        assert!(!check_wxz(&bad).get("[W,X,X]").unwrap().passed());
        assert!(matches!(glue(&bad), Err(GlueError::WxzFailed(_))));
        assert!(!check_braid(glue_unchecked(&bad).unwrap().map()).unwrap().is_pass());
    }

    #[test]
    fn singular_x_is_rejected() {
        let sys = quadratic_system();
        let zero = LinMap::zero(sys.x().domain().clone(), sys.x().codomain().clone());
        assert!(matches!(glue_unchecked(&sys.with_x(zero).unwrap()), Err(GlueError::Singular)));
    }

    #[test]
    fn hecke_glue_of_flip() {
        let q = sx("q");
        let e = flip_entwining(Algebra::cyclic_group(2), Coalgebra::single_group_like());
        let g = hecke_glue(&e, &q).unwrap();
        assert!(check_hecke(g.map(), &q).unwrap().is_pass());
        assert!(matches!(hecke_glue(&e, &sx("0")), Err(GlueError::ZeroParameter)));
    }

    #[test]
    fn hecke_glue_of_quadratic_entwining() {
        let q = sx("q");
        let e = quadratic_entwining(&q, &sx("s")).unwrap();
        let g = hecke_glue(&e, &q).unwrap();
        assert!(check_hecke(g.map(), &q).unwrap().is_pass());
    }

    #[test]
    fn hecke_glue_differs_from_glue_by_the_correction() {
        let q = sx("q");
        let qi = sx("1/q");
        for e in [
            quadratic_entwining(&q, &sx("s")).unwrap(),
            flip_entwining(Algebra::cyclic_group(2), Coalgebra::single_group_like()),
        ] {
            let sys = wxz_from_entwining(&e, &q, &qi, &qi, &q).unwrap();
            let plain = glue(&sys).unwrap();
            let hecke = hecke_glue(&e, &q).unwrap();
            assert_eq!(plain.blocks(), hecke.blocks());
            let diff = hecke.map().sub(plain.map()).unwrap();
            let n = e.algebra().dim();
            let nn = plain.sum_space().dim();
            let coeff = sx("q - 1/q");
            for i in 0..diff.rows() {
                for j in 0..diff.cols() {
                    let on_ca = i == j && i / nn >= n && i % nn < n;
                    let expected = if on_ca { coeff.clone() } else { ScalarExpr::zero() };
                    assert_eq!(diff.get(i, j), &expected);
                }
            }
        }
        // at q = 1 the correction vanishes
        let one = sx("1");
        let e = quadratic_entwining(&one, &sx("s")).unwrap();
        let sys = wxz_from_entwining(&e, &one, &one, &one, &one).unwrap();
        assert_eq!(hecke_glue(&e, &one).unwrap(), glue(&sys).unwrap());
    }

    #[test]
    fn hecke_relation_examples() {
        let q = sx("q");
        let v = Space::new("V", vec!["a", "b"]).unwrap();
        let scalar = LinMap::identity(ProductSpace::new(vec![v.clone(), v])).scale(&q);
        assert!(check_hecke(&scalar, &q).unwrap().is_pass());
        let (algs, _) = structure_zoo();
        for a in &algs {
            assert!(check_hecke(&build_ra(a, &q, &sx("1/q")), &q).unwrap().is_pass());
        }
        let generic = check_hecke(&build_ra(&Algebra::cyclic_group(2), &sx("r"), &sx("s")), &q).unwrap();
        assert!(!generic.is_pass());
        assert!(generic.failures().next().unwrap().witness().is_some());
        assert!(matches!(check_hecke(&scalar, &sx("0")), Err(GlueError::ZeroParameter)));
    }

    #[test]
    fn annihilating_polynomials() {
        let (r, s, p, t) = (sx("r"), sx("s"), sx("p"), sx("t"));
        let (algs, coalgs) = structure_zoo();
        for a in &algs {
            assert!(annihilating_poly_check(a, &r, &s).is_pass());
        }
        for c in &coalgs {
            assert!(annihilating_poly_check_coalgebra(c, &p, &t).is_pass());
        }
        // dimension one: R − rI already vanishes
        let k = Algebra::ground_field();
        let rk = build_ra(&k, &r, &s);
        assert!(rk.sub(&LinMap::identity(rk.domain().clone()).scale(&r)).unwrap().is_zero());
    }

    #[test]
    fn every_zoo_system_glues() {
        let (r, s, p, t) = (sx("r"), sx("s"), sx("p"), sx("t"));
        for (name, e) in entwining_zoo().into_iter().filter(|(_, e)| e.algebra().dim() + e.coalgebra().dim() <= 4) {
            let sys = wxz_from_entwining(&e, &r, &s, &p, &t).unwrap();
            let g = glue(&sys).unwrap();
            assert!(check_braid(g.map()).unwrap().is_pass(), "{name}");
        }
    }
}
