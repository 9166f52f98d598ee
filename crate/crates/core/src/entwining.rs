//! Entwining structures, their passage to and from WXZ-systems, Doi-Koppinen
//! data, dualisation and algebra factorisations.

use thiserror::Error;

use crate::report::Report;
use crate::scalar::ScalarExpr;
use crate::structures::{Algebra, Coalgebra, ComoduleAlgebra, ModuleCoalgebra, StructureError};
use crate::tensor::{LinMap, ProductSpace, Space, TensorError};
use crate::yang_baxter::{build_w, build_z, check_wxz, WxzSystem, YbError};

#[derive(Debug, Clone, Error)]
pub enum EntwiningError {
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    YangBaxter(#[from] YbError),
    #[error("entwining axioms fail\n{0}")]
    NotEntwining(Box<Report>),
    #[error("WXZ equations fail\n{0}")]
    WxzFailed(Box<Report>),
    #[error("side conditions on X fail\n{0}")]
    SideCondition(Box<Report>),
    #[error("prerequisite structure checks fail\n{0}")]
    Prerequisite(Box<Report>),
    #[error("factorisation axioms fail\n{0}")]
    NotFactorisation(Box<Report>),
    #[error("comodule algebra and module coalgebra are over different bialgebras")]
    BialgebraMismatch,
    #[error("the entwining map is singular")]
    Singular,
}

fn pair(a: &Space, b: &Space) -> ProductSpace {
    ProductSpace::new(vec![a.clone(), b.clone()])
}

fn id(s: &Space) -> LinMap {
    LinMap::identity(s.into())
}

fn expect_map(what: &'static str, map: &LinMap, domain: ProductSpace, codomain: ProductSpace) -> Result<(), EntwiningError> {
    if map.domain() != &domain || map.codomain() != &codomain {
        return Err(StructureError::WrongType {
            what,
            expected: format!("{domain} -> {codomain}"),
            found: format!("{} -> {}", map.domain(), map.codomain()),
        }
        .into());
    }
    Ok(())
}

/// An algebra `A`, a coalgebra `C` and `ψ: C⊗A → A⊗C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntwiningStructure {
    alg: Algebra,
    coalg: Coalgebra,
    psi: LinMap,
}

impl EntwiningStructure {
    pub fn new(alg: Algebra, coalg: Coalgebra, psi: LinMap) -> Result<Self, EntwiningError> {
        expect_map("entwining map", &psi, pair(coalg.space(), alg.space()), pair(alg.space(), coalg.space()))?;
        Ok(EntwiningStructure { alg, coalg, psi })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn coalgebra(&self) -> &Coalgebra {
        &self.coalg
    }

    pub fn psi(&self) -> &LinMap {
        &self.psi
    }

    pub fn with_psi(&self, psi: LinMap) -> Result<Self, EntwiningError> {
        EntwiningStructure::new(self.alg.clone(), self.coalg.clone(), psi)
    }

    /// The four entwining axioms, as tensor identities named `(1)`–`(4)`.
    pub fn check(&self) -> Report {
        let mut report = Report::new(format!(
            "entwining of {} with {}",
            self.alg.space(),
            self.coalg.space()
        ));
        let mut inner = || -> Result<(), TensorError> {
            let (a, c) = (self.alg.space(), self.coalg.space());
            let (mu, unit) = (self.alg.mult(), self.alg.unit());
            let (delta, counit) = (self.coalg.comult(), self.coalg.counit());
            let psi = &self.psi;

            let lhs = id(c).tensor(mu).then(psi)?;
            let rhs = psi
                .tensor(&id(a))
                .then(&id(a).tensor(psi))?
                .then(&mu.tensor(&id(c)))?;
            report.equation("(1) ψ∘(I⊗μ) = (μ⊗I)∘(I⊗ψ)∘(ψ⊗I)", &lhs, &rhs)?;

            let lhs = psi.then(&id(a).tensor(delta))?;
            let rhs = delta
                .tensor(&id(a))
                .then(&id(c).tensor(psi))?
                .then(&psi.tensor(&id(c)))?;
            report.equation("(2) (I⊗Δ)∘ψ = (ψ⊗I)∘(I⊗ψ)∘(Δ⊗I)", &lhs, &rhs)?;

            let lhs = id(c).tensor(unit).then(psi)?;
            report.equation("(3) ψ∘(I⊗ι) = ι⊗I", &lhs, &unit.tensor(&id(c)))?;

            let lhs = psi.then(&id(a).tensor(counit))?;
            report.equation("(4) (I⊗ε)∘ψ = ε⊗I", &lhs, &counit.tensor(&id(a)))?;
            Ok(())
        };
        inner().expect("structure maps have consistent types");
        report
    }

    /// Axioms together with the algebra and coalgebra checks.
    pub fn check_all(&self) -> Report {
        let mut report = self.check();
        report.absorb("algebra", self.alg.check());
        report.absorb("coalgebra", self.coalg.check());
        report
    }
}

/// `ψ = τ_{C,A}`.
pub fn flip_entwining(alg: Algebra, coalg: Coalgebra) -> EntwiningStructure {
    let psi = LinMap::flip(coalg.space(), alg.space());
    EntwiningStructure { alg, coalg, psi }
}

/// `W = W(A; r, s)`, `X = ψ∘τ_{A,C}`, `Z = Z(C; p, t)`.
pub fn wxz_from_entwining(
    e: &EntwiningStructure,
    r: &ScalarExpr,
    s: &ScalarExpr,
    p: &ScalarExpr,
    t: &ScalarExpr,
) -> Result<WxzSystem, EntwiningError> {
    let report = e.check();
    if !report.is_pass() {
        return Err(EntwiningError::NotEntwining(Box::new(report)));
    }
    let x = LinMap::flip(e.alg.space(), e.coalg.space()).then(&e.psi)?;
    Ok(WxzSystem::new(build_w(&e.alg, r, s), x, build_z(&e.coalg, p, t))?)
}

/// `X∘(ι⊗I_C) = ι⊗I_C` and `(I_A⊗ε)∘X = I_A⊗ε`.
pub fn side_conditions(x: &LinMap, alg: &Algebra, coalg: &Coalgebra) -> Result<Report, EntwiningError> {
    expect_map("X", x, pair(alg.space(), coalg.space()), pair(alg.space(), coalg.space()))?;
    let (unit, counit) = (alg.unit(), coalg.counit());
    let mut report = Report::new("side conditions on X");
    let iota_c = unit.tensor(&id(coalg.space()));
    report.equation("X∘(ι⊗I) = ι⊗I", &iota_c.then(x)?, &iota_c)?;
    let a_eps = id(alg.space()).tensor(counit);
    report.equation("(I⊗ε)∘X = I⊗ε", &x.then(&a_eps)?, &a_eps)?;
    Ok(report)
}

/// Recovers `ψ = X∘τ_{C,A}` from a WXZ-system whose `X` meets the side conditions.
pub fn entwining_from_wxz(sys: &WxzSystem, alg: &Algebra, coalg: &Coalgebra) -> Result<EntwiningStructure, EntwiningError> {
    let report = check_wxz(sys);
    if !report.is_pass() {
        return Err(EntwiningError::WxzFailed(Box::new(report)));
    }
    let side = side_conditions(sys.x(), alg, coalg)?;
    if !side.is_pass() {
        return Err(EntwiningError::SideCondition(Box::new(side)));
    }
    let psi = LinMap::flip(coalg.space(), alg.space()).then(sys.x())?;
    let e = EntwiningStructure::new(alg.clone(), coalg.clone(), psi)?;
    let report = e.check();
    if !report.is_pass() {
        return Err(EntwiningError::NotEntwining(Box::new(report)));
    }
    Ok(e)
}

/// `ψ(c⊗a) = Σ a₍₀₎ ⊗ c·a₍₁₎`.
pub fn doi_koppinen_entwining(a: &ComoduleAlgebra, c: &ModuleCoalgebra) -> Result<EntwiningStructure, EntwiningError> {
    if a.bialgebra() != c.bialgebra() {
        return Err(EntwiningError::BialgebraMismatch);
    }
    let mut pre = Report::new("Doi-Koppinen datum");
    pre.absorb("comodule algebra", a.check());
    pre.absorb("module coalgebra", c.check());
    if !pre.is_pass() {
        return Err(EntwiningError::Prerequisite(Box::new(pre)));
    }
    let (sa, sc, sb) = (a.algebra().space(), c.coalgebra().space(), a.bialgebra().space());
    let psi = id(sc)
        .tensor(a.coaction())
        .then(&LinMap::flip(sc, sa).tensor(&id(sb)))?
        .then(&id(sa).tensor(c.action()))?;
    EntwiningStructure::new(a.algebra().clone(), c.coalgebra().clone(), psi)
}

/// `ψ⁻¹: A⊗C → C⊗A`.
pub fn invert_entwining(e: &EntwiningStructure) -> Result<LinMap, EntwiningError> {
    e.psi.invert().map_err(|err| match err {
        TensorError::Singular => EntwiningError::Singular,
        other => other.into(),
    })
}

/// `(C*, A*)` entwined by `ψ` transposed on dual bases.
pub fn dualize_entwining(e: &EntwiningStructure) -> EntwiningStructure {
    EntwiningStructure {
        alg: e.coalg.dual(),
        coalg: e.alg.dual(),
        psi: e.psi.dual(),
    }
}

/// Algebras `A`, `B` and `Ψ: B⊗A → A⊗B` making `A⊗B` an algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraFactorisation {
    a: Algebra,
    b: Algebra,
    psi: LinMap,
}

impl AlgebraFactorisation {
    pub fn new(a: Algebra, b: Algebra, psi: LinMap) -> Result<Self, EntwiningError> {
        expect_map("factorisation map", &psi, pair(b.space(), a.space()), pair(a.space(), b.space()))?;
        Ok(AlgebraFactorisation { a, b, psi })
    }

    /// `Ψ = τ_{B,A}`: the tensor product algebra.
    pub fn tensor_product(a: Algebra, b: Algebra) -> AlgebraFactorisation {
        let psi = LinMap::flip(b.space(), a.space());
        AlgebraFactorisation { a, b, psi }
    }

    pub fn a(&self) -> &Algebra {
        &self.a
    }

    pub fn b(&self) -> &Algebra {
        &self.b
    }

    pub fn psi(&self) -> &LinMap {
        &self.psi
    }

    pub fn with_psi(&self, psi: LinMap) -> Result<Self, EntwiningError> {
        AlgebraFactorisation::new(self.a.clone(), self.b.clone(), psi)
    }

    pub fn check(&self) -> Report {
        let mut report = Report::new(format!("factorisation of {} and {}", self.a.space(), self.b.space()));
        let mut inner = || -> Result<(), TensorError> {
            let (sa, sb) = (self.a.space(), self.b.space());
            let (mu_a, mu_b) = (self.a.mult(), self.b.mult());
            let psi = &self.psi;

            let lhs = id(sb).tensor(mu_a).then(psi)?;
            let rhs = psi
                .tensor(&id(sa))
                .then(&id(sa).tensor(psi))?
                .then(&mu_a.tensor(&id(sb)))?;
            report.equation("Ψ∘(I⊗μ_A) = (μ_A⊗I)∘(I⊗Ψ)∘(Ψ⊗I)", &lhs, &rhs)?;

            let lhs = mu_b.tensor(&id(sa)).then(psi)?;
            let rhs = id(sb)
                .tensor(psi)
                .then(&psi.tensor(&id(sb)))?
                .then(&id(sa).tensor(mu_b))?;
            report.equation("Ψ∘(μ_B⊗I) = (I⊗μ_B)∘(Ψ⊗I)∘(I⊗Ψ)", &lhs, &rhs)?;

            let lhs = self.b.unit().tensor(&id(sa)).then(psi)?;
            report.equation("Ψ(1⊗a) = a⊗1", &lhs, &id(sa).tensor(self.b.unit()))?;

            let lhs = id(sb).tensor(self.a.unit()).then(psi)?;
            report.equation("Ψ(b⊗1) = 1⊗b", &lhs, &self.a.unit().tensor(&id(sb)))?;
            Ok(())
        };
        inner().expect("structure maps have consistent types");
        report
    }
}

/// `W = W(A; r, s)`, `X = Ψ∘τ_{A,B}`, `Z = W(B; r′, s′)`.
pub fn wxz_from_factorisation(
    f: &AlgebraFactorisation,
    r: &ScalarExpr,
    s: &ScalarExpr,
    r2: &ScalarExpr,
    s2: &ScalarExpr,
) -> Result<WxzSystem, EntwiningError> {
    let report = f.check();
    if !report.is_pass() {
        return Err(EntwiningError::NotFactorisation(Box::new(report)));
    }
    let x = LinMap::flip(f.a.space(), f.b.space()).then(&f.psi)?;
    Ok(WxzSystem::new(build_w(&f.a, r, s), x, build_w(&f.b, r2, s2))?)
}
