//! Algebras, coalgebras and their Doi-Koppinen relatives as structure constants.
//!
//! The structure maps are stored directly as [`LinMap`]s, so the constants are
//! the matrix entries: row `(i, j)`, column `k` of the multiplication is the
//! coefficient of `e_k` in `e_i·e_j`; row `i`, column `(j, k)` of the
//! comultiplication is the coefficient of `e_j⊗e_k` in `Δ(e_i)`.

use thiserror::Error;

use crate::report::Report;
use crate::scalar::ScalarExpr;
use crate::tensor::{LinMap, ProductSpace, Space, TensorError};

#[derive(Debug, Clone, Error)]
pub enum StructureError {
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("{what} has the wrong type: expected {expected}, found {found}")]
    WrongType {
        what: &'static str,
        expected: String,
        found: String,
    },
    #[error("{0} is built over a different bialgebra")]
    BialgebraMismatch(&'static str),
}

fn expect_type(what: &'static str, map: &LinMap, domain: ProductSpace, codomain: ProductSpace) -> Result<(), StructureError> {
    if map.domain() != &domain || map.codomain() != &codomain {
        return Err(StructureError::WrongType {
            what,
            expected: format!("{domain} -> {codomain}"),
            found: format!("{} -> {}", map.domain(), map.codomain()),
        });
    }
    Ok(())
}

fn pair(a: &Space, b: &Space) -> ProductSpace {
    ProductSpace::new(vec![a.clone(), b.clone()])
}

fn id(s: &Space) -> LinMap {
    LinMap::identity(s.into())
}

fn ground() -> ProductSpace {
    Space::ground().into()
}

/// A unital associative algebra (unchecked until [`Algebra::check`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    space: Space,
    mult: LinMap,
    unit: LinMap,
}

impl Algebra {
    pub fn new(space: Space, mult: LinMap, unit: LinMap) -> Result<Algebra, StructureError> {
        expect_type("multiplication", &mult, pair(&space, &space), (&space).into())?;
        expect_type("unit", &unit, ground(), (&space).into())?;
        Ok(Algebra { space, mult, unit })
    }

    /// Builds from a product table: `table(i, j)` lists `(k, coeff)` with `e_i·e_j = Σ coeff·e_k`.
    pub fn from_table(
        space: Space,
        unit: &[(usize, ScalarExpr)],
        table: impl Fn(usize, usize) -> Vec<(usize, ScalarExpr)>,
    ) -> Algebra {
        let n = space.dim();
        let mut mult = LinMap::zero(pair(&space, &space), (&space).into());
        for i in 0..n {
            for j in 0..n {
                for (k, c) in table(i, j) {
                    let cur = mult.get(i * n + j, k).clone();
                    mult.set(i * n + j, k, &cur + &c);
                }
            }
        }
        let mut u = LinMap::zero(ground(), (&space).into());
        for (k, c) in unit {
            u.set(0, *k, c.clone());
        }
        Algebra { space, mult, unit: u }
    }

    /// The ground field `k` as a one-dimensional algebra.
    pub fn ground_field() -> Algebra {
        let k = Space::ground();
        Algebra::from_table(k, &[(0, ScalarExpr::one())], |_, _| vec![(0, ScalarExpr::one())])
    }

    /// Group algebra `k[ℤ_n]` with basis `1, g, g^2, …`.
    pub fn cyclic_group(n: usize) -> Algebra {
        let space = Space::new(format!("k[Z{n}]"), group_labels(n)).expect("distinct labels");
        Algebra::from_table(space, &[(0, ScalarExpr::one())], |i, j| vec![((i + j) % n, ScalarExpr::one())])
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// `μ: A⊗A → A`.
    pub fn mult(&self) -> &LinMap {
        &self.mult
    }

    /// `ι: k → A`.
    pub fn unit(&self) -> &LinMap {
        &self.unit
    }

    pub fn unit_coords(&self) -> &[ScalarExpr] {
        self.unit.row(0)
    }

    /// Coordinates of `e_i·e_j`.
    pub fn product_of(&self, i: usize, j: usize) -> &[ScalarExpr] {
        self.mult.row(i * self.dim() + j)
    }

    /// Replaces one structure constant `μ[i][j][k]`.
    pub fn with_mult_constant(&self, i: usize, j: usize, k: usize, value: ScalarExpr) -> Algebra {
        let mut a = self.clone();
        a.mult.set(i * self.dim() + j, k, value);
        a
    }

    pub fn with_space(&self, space: Space) -> Result<Algebra, StructureError> {
        Ok(Algebra {
            mult: self.mult.with_spaces(pair(&space, &space), (&space).into())?,
            unit: self.unit.with_spaces(ground(), (&space).into())?,
            space,
        })
    }

    /// Associativity and both unit laws.
    pub fn check(&self) -> Report {
        let mut r = Report::new(format!("algebra {}", self.space));
        let a = &self.space;
        let mu = &self.mult;
        let mut inner = || -> Result<(), TensorError> {
            r.equation(
                "associativity",
                &mu.tensor(&id(a)).then(mu)?,
                &id(a).tensor(mu).then(mu)?,
            )?;
            r.equation("left unit", &self.unit.tensor(&id(a)).then(mu)?, &id(a))?;
            r.equation("right unit", &id(a).tensor(&self.unit).then(mu)?, &id(a))?;
            Ok(())
        };
        inner().expect("algebra maps are well-typed by construction");
        r
    }

    /// The coalgebra on `A*` with transposed structure constants.
    pub fn dual(&self) -> Coalgebra {
        Coalgebra {
            space: self.space.dual(),
            comult: self.mult.dual(),
            counit: self.unit.dual(),
        }
    }
}

pub(crate) fn group_labels(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{i}"),
        })
        .collect()
}

/// A counital coassociative coalgebra (unchecked until [`Coalgebra::check`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coalgebra {
    space: Space,
    comult: LinMap,
    counit: LinMap,
}

impl Coalgebra {
    pub fn new(space: Space, comult: LinMap, counit: LinMap) -> Result<Coalgebra, StructureError> {
        expect_type("comultiplication", &comult, (&space).into(), pair(&space, &space))?;
        expect_type("counit", &counit, (&space).into(), ground())?;
        Ok(Coalgebra { space, comult, counit })
    }

    /// `table(i)` lists `(j, k, coeff)` with `Δ(e_i) = Σ coeff·e_j⊗e_k`.
    pub fn from_table(
        space: Space,
        counit: &[ScalarExpr],
        table: impl Fn(usize) -> Vec<(usize, usize, ScalarExpr)>,
    ) -> Coalgebra {
        let n = space.dim();
        let mut comult = LinMap::zero((&space).into(), pair(&space, &space));
        for i in 0..n {
            for (j, k, c) in table(i) {
                let cur = comult.get(i, j * n + k).clone();
                comult.set(i, j * n + k, &cur + &c);
            }
        }
        let mut e = LinMap::zero((&space).into(), ground());
        for (i, c) in counit.iter().enumerate() {
            e.set(i, 0, c.clone());
        }
        Coalgebra { space, comult, counit: e }
    }

    /// Coalgebra spanned by `n` group-like elements `1, g, …` (`k[ℤ_n]` as a coalgebra).
    pub fn group_like(n: usize) -> Coalgebra {
        let space = Space::new(format!("k[Z{n}]"), group_labels(n)).expect("distinct labels");
        Coalgebra::from_table(space, &vec![ScalarExpr::one(); n], |i| vec![(i, i, ScalarExpr::one())])
    }

    /// One group-like basis element `e`.
    pub fn single_group_like() -> Coalgebra {
        let space = Space::new("G", vec!["e"]).expect("valid");
        Coalgebra::from_table(space, &[ScalarExpr::one()], |_| vec![(0, 0, ScalarExpr::one())])
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// `Δ: C → C⊗C`.
    pub fn comult(&self) -> &LinMap {
        &self.comult
    }

    /// `ε: C → k`.
    pub fn counit(&self) -> &LinMap {
        &self.counit
    }

    pub fn counit_of(&self, i: usize) -> &ScalarExpr {
        self.counit.get(i, 0)
    }

    pub fn with_comult_constant(&self, i: usize, j: usize, k: usize, value: ScalarExpr) -> Coalgebra {
        let mut c = self.clone();
        c.comult.set(i, j * self.dim() + k, value);
        c
    }

    pub fn with_space(&self, space: Space) -> Result<Coalgebra, StructureError> {
        Ok(Coalgebra {
            comult: self.comult.with_spaces((&space).into(), pair(&space, &space))?,
            counit: self.counit.with_spaces((&space).into(), ground())?,
            space,
        })
    }

    /// Coassociativity and both counit laws.
    pub fn check(&self) -> Report {
        let mut r = Report::new(format!("coalgebra {}", self.space));
        let c = &self.space;
        let delta = &self.comult;
        let mut inner = || -> Result<(), TensorError> {
            r.equation(
                "coassociativity",
                &delta.then(&delta.tensor(&id(c)))?,
                &delta.then(&id(c).tensor(delta))?,
            )?;
            r.equation("left counit", &delta.then(&self.counit.tensor(&id(c)))?, &id(c))?;
            r.equation("right counit", &delta.then(&id(c).tensor(&self.counit))?, &id(c))?;
            Ok(())
        };
        inner().expect("coalgebra maps are well-typed by construction");
        r
    }

    /// The algebra on `C*` with transposed structure constants.
    pub fn dual(&self) -> Algebra {
        Algebra {
            space: self.space.dual(),
            mult: self.comult.dual(),
            unit: self.counit.dual(),
        }
    }
}

/// Leg shuffle `x⊗y⊗z⊗w ↦ x⊗z⊗y⊗w`.
fn middle_flip(a: &Space, b: &Space, c: &Space, d: &Space) -> LinMap {
    LinMap::permutation(&[a.clone(), b.clone(), c.clone(), d.clone()], &[0, 2, 1, 3]).expect("valid permutation")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bialgebra {
    alg: Algebra,
    coalg: Coalgebra,
}

impl Bialgebra {
    pub fn new(alg: Algebra, coalg: Coalgebra) -> Result<Bialgebra, StructureError> {
        if alg.space() != coalg.space() {
            return Err(StructureError::WrongType {
                what: "coalgebra of a bialgebra",
                expected: alg.space().to_string(),
                found: coalg.space().to_string(),
            });
        }
        Ok(Bialgebra { alg, coalg })
    }

    pub fn cyclic_group(n: usize) -> Bialgebra {
        Bialgebra {
            alg: Algebra::cyclic_group(n),
            coalg: Coalgebra::group_like(n),
        }
    }

    pub fn ground_field() -> Bialgebra {
        let alg = Algebra::ground_field();
        let coalg = Coalgebra::from_table(Space::ground(), &[ScalarExpr::one()], |_| {
            vec![(0, 0, ScalarExpr::one())]
        });
        Bialgebra { alg, coalg }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn coalgebra(&self) -> &Coalgebra {
        &self.coalg
    }

    pub fn space(&self) -> &Space {
        self.alg.space()
    }

    /// Algebra and coalgebra axioms, plus `Δ` and `ε` being algebra maps.
    pub fn check(&self) -> Report {
        let mut r = Report::new(format!("bialgebra {}", self.space()));
        r.absorb("algebra", self.alg.check());
        r.absorb("coalgebra", self.coalg.check());
        let b = self.space();
        let (mu, unit) = (self.alg.mult(), self.alg.unit());
        let (delta, eps) = (self.coalg.comult(), self.coalg.counit());
        let mut inner = || -> Result<(), TensorError> {
            r.equation(
                "comultiplicative",
                &mu.then(delta)?,
                &delta
                    .tensor(delta)
                    .then(&middle_flip(b, b, b, b))?
                    .then(&mu.tensor(mu))?,
            )?;
            r.equation("comultiplication unital", &unit.then(delta)?, &unit.tensor(unit))?;
            r.equation("counit multiplicative", &mu.then(eps)?, &eps.tensor(eps))?;
            r.equation("counit unital", &unit.then(eps)?, &LinMap::identity(ground()))?;
            Ok(())
        };
        inner().expect("bialgebra maps are well-typed by construction");
        r
    }
}

/// A right `B`-comodule algebra with coaction `ρ: A → A⊗B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComoduleAlgebra {
    alg: Algebra,
    over: Bialgebra,
    coaction: LinMap,
}

impl ComoduleAlgebra {
    pub fn new(alg: Algebra, over: Bialgebra, coaction: LinMap) -> Result<Self, StructureError> {
        expect_type("coaction", &coaction, alg.space().into(), pair(alg.space(), over.space()))?;
        Ok(ComoduleAlgebra { alg, over, coaction })
    }

    /// `B` coacting on itself by `Δ`.
    pub fn regular(b: &Bialgebra) -> ComoduleAlgebra {
        ComoduleAlgebra {
            alg: b.algebra().clone(),
            over: b.clone(),
            coaction: b.coalgebra().comult().clone(),
        }
    }

    /// `ρ(a) = a⊗1_B`.
    pub fn trivial(alg: Algebra, over: Bialgebra) -> ComoduleAlgebra {
        let coaction = id(alg.space()).tensor(over.algebra().unit()).strip_ground();
        let coaction = coaction
            .with_spaces(alg.space().into(), pair(alg.space(), over.space()))
            .expect("dimensions agree");
        ComoduleAlgebra { alg, over, coaction }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn bialgebra(&self) -> &Bialgebra {
        &self.over
    }

    pub fn coaction(&self) -> &LinMap {
        &self.coaction
    }

    pub fn with_coaction(&self, coaction: LinMap) -> Result<Self, StructureError> {
        ComoduleAlgebra::new(self.alg.clone(), self.over.clone(), coaction)
    }

    pub fn check(&self) -> Report {
        let mut r = Report::new(format!("comodule algebra {} over {}", self.alg.space(), self.over.space()));
        r.absorb("algebra", self.alg.check());
        r.absorb("bialgebra", self.over.check());
        let (a, b) = (self.alg.space(), self.over.space());
        let rho = &self.coaction;
        let mut inner = || -> Result<(), TensorError> {
            r.equation(
                "coassociativity",
                &rho.then(&rho.tensor(&id(b)))?,
                &rho.then(&id(a).tensor(self.over.coalgebra().comult()))?,
            )?;
            r.equation("counit", &rho.then(&id(a).tensor(self.over.coalgebra().counit()))?, &id(a))?;
            r.equation(
                "multiplicative",
                &self.alg.mult().then(rho)?,
                &rho.tensor(rho)
                    .then(&middle_flip(a, b, a, b))?
                    .then(&self.alg.mult().tensor(self.over.algebra().mult()))?,
            )?;
            r.equation(
                "unital",
                &self.alg.unit().then(rho)?,
                &self.alg.unit().tensor(self.over.algebra().unit()),
            )?;
            Ok(())
        };
        inner().expect("maps are well-typed by construction");
        r
    }
}

/// A right `B`-module coalgebra with action `C⊗B → C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleCoalgebra {
    coalg: Coalgebra,
    over: Bialgebra,
    action: LinMap,
}

impl ModuleCoalgebra {
    pub fn new(coalg: Coalgebra, over: Bialgebra, action: LinMap) -> Result<Self, StructureError> {
        expect_type("action", &action, pair(coalg.space(), over.space()), coalg.space().into())?;
        Ok(ModuleCoalgebra { coalg, over, action })
    }

    /// `B` acting on itself by `μ`.
    pub fn regular(b: &Bialgebra) -> ModuleCoalgebra {
        ModuleCoalgebra {
            coalg: b.coalgebra().clone(),
            over: b.clone(),
            action: b.algebra().mult().clone(),
        }
    }

    /// `c·b = ε(b)c`.
    pub fn trivial(coalg: Coalgebra, over: Bialgebra) -> ModuleCoalgebra {
        let action = id(coalg.space())
            .tensor(over.coalgebra().counit())
            .with_spaces(pair(coalg.space(), over.space()), coalg.space().into())
            .expect("dimensions agree");
        ModuleCoalgebra { coalg, over, action }
    }

    pub fn coalgebra(&self) -> &Coalgebra {
        &self.coalg
    }

    pub fn bialgebra(&self) -> &Bialgebra {
        &self.over
    }

    pub fn action(&self) -> &LinMap {
        &self.action
    }

    pub fn with_action(&self, action: LinMap) -> Result<Self, StructureError> {
        ModuleCoalgebra::new(self.coalg.clone(), self.over.clone(), action)
    }

    pub fn check(&self) -> Report {
        let mut r = Report::new(format!("module coalgebra {} over {}", self.coalg.space(), self.over.space()));
        r.absorb("coalgebra", self.coalg.check());
        r.absorb("bialgebra", self.over.check());
        let (c, b) = (self.coalg.space(), self.over.space());
        let act = &self.action;
        let mut inner = || -> Result<(), TensorError> {
            r.equation(
                "associativity",
                &act.tensor(&id(b)).then(act)?,
                &id(c).tensor(self.over.algebra().mult()).then(act)?,
            )?;
            r.equation("unital", &id(c).tensor(self.over.algebra().unit()).then(act)?, &id(c))?;
            r.equation(
                "comultiplicative",
                &act.then(self.coalg.comult())?,
                &self
                    .coalg
                    .comult()
                    .tensor(self.over.coalgebra().comult())
                    .then(&middle_flip(c, c, b, b))?
                    .then(&act.tensor(act))?,
            )?;
            r.equation(
                "counit",
                &act.then(self.coalg.counit())?,
                &self.coalg.counit().tensor(self.over.coalgebra().counit()),
            )?;
            Ok(())
        };
        inner().expect("maps are well-typed by construction");
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::sx;

    fn ex28_algebra() -> Algebra {
        let space = Space::new("A", vec!["1", "x"]).unwrap();
        Algebra::from_table(space, &[(0, sx("1"))], |i, j| match (i, j) {
            (0, k) | (k, 0) => vec![(k, sx("1"))],
            _ => vec![(0, sx("1/(s+1)"))],
        })
    }

    fn ex28_coalgebra() -> Coalgebra {
        let space = Space::new("C", vec!["e", "f"]).unwrap();
        Coalgebra::from_table(space, &[sx("1"), sx("0")], |i| match i {
            0 => vec![(0, 0, sx("1")), (1, 1, sx("1/(s+1)"))],
            _ => vec![(0, 1, sx("1")), (1, 0, sx("1"))],
        })
    }

    #[test]
    fn group_algebra_and_ex28_pass() {
        assert!(Algebra::cyclic_group(2).check().is_pass());
        assert!(Algebra::cyclic_group(5).check().is_pass());
        assert!(ex28_algebra().check().is_pass());
        assert!(ex28_coalgebra().check().is_pass());
        assert!(Coalgebra::single_group_like().check().is_pass());
        assert!(Algebra::ground_field().check().is_pass());
    }

    #[test]
    fn perturbed_group_algebra_reports_associativity() {
        // g·g^2 = 1 + g in k[Z3]: (g·g)·g^2 = g but g·(g·g^2) = 1 + g + g^2
        let bad = Algebra::cyclic_group(3).with_mult_constant(1, 2, 1, sx("1"));
        let report = bad.check();
        let fails: Vec<_> = report.failures().map(|c| c.name.as_str()).collect();
        assert_eq!(fails, ["associativity"]);
        let w = report.get("associativity").unwrap().witness().unwrap();
        assert_eq!(w.input.split('⊗').count(), 3);
    }

    #[test]
    fn two_dimensional_unital_perturbation_stays_associative() {
        // g·g = 1 + g still defines the associative algebra k[g]/(g^2 - g - 1)
        let a = Algebra::cyclic_group(2).with_mult_constant(1, 1, 1, sx("1"));
        assert!(a.check().is_pass());
        // breaking the unit row is caught, though
        let b = Algebra::cyclic_group(2).with_mult_constant(0, 1, 0, sx("1"));
        assert!(!b.check().get("left unit").unwrap().passed());
    }

    #[test]
    fn bialgebra_and_regular_modules() {
        let b = Bialgebra::cyclic_group(2);
        assert!(b.check().is_pass());
        assert!(Bialgebra::cyclic_group(3).check().is_pass());
        assert!(Bialgebra::ground_field().check().is_pass());
        assert!(ComoduleAlgebra::regular(&b).check().is_pass());
        assert!(ModuleCoalgebra::regular(&b).check().is_pass());
        assert!(ComoduleAlgebra::trivial(ex28_algebra(), b.clone()).check().is_pass());
        assert!(ModuleCoalgebra::trivial(ex28_coalgebra(), b).check().is_pass());
    }

    #[test]
    fn zero_coaction_fails_counit() {
        let b = Bialgebra::cyclic_group(2);
        let ca = ComoduleAlgebra::regular(&b);
        let zero = LinMap::zero(ca.coaction().domain().clone(), ca.coaction().codomain().clone());
        let report = ca.with_coaction(zero).unwrap().check();
        assert!(!report.get("counit").unwrap().passed());
        assert!(!report.get("unital").unwrap().passed());
    }

    #[test]
    fn dualization_round_trips_and_preserves_checks() {
        let a = Algebra::cyclic_group(2);
        let d = a.dual();
        assert!(d.check().is_pass());
        assert_eq!(d.dual(), a);
        // the dual of k[Z2] is spanned by two orthogonal idempotent duals: Δ(1*) = 1*⊗1* + g*⊗g*
        assert_eq!(d.comult().row(0), &[sx("1"), sx("0"), sx("0"), sx("1")]);

        let c = ex28_coalgebra();
        let dc = c.dual();
        assert!(dc.check().is_pass());
        assert_eq!(dc.unit_coords(), &[sx("1"), sx("0")]);
        assert_eq!(dc.dual(), c);
    }

    #[test]
    fn dual_of_perturbation_fails_the_same_way() {
        let bad = Algebra::cyclic_group(3).with_mult_constant(1, 2, 1, sx("q"));
        let ra = bad.check();
        let rc = bad.dual().check();
        assert!(!ra.is_pass());
        assert_eq!(ra.is_pass(), rc.is_pass());
        assert_eq!(
            ra.get("associativity").unwrap().difference.dual(),
            rc.get("coassociativity").unwrap().difference
        );
    }

    #[test]
    fn wrong_types_rejected() {
        let a = Algebra::cyclic_group(2);
        let err = Algebra::new(a.space().clone(), a.unit().clone(), a.unit().clone());
        assert!(matches!(err, Err(StructureError::WrongType { .. })));
    }
}
