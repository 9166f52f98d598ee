//! Named, parameterised instances used by the tests and the command line.
//!
//! Every payload is validated when it is built; parameters default to the
//! symbolic variables of the same name.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::entwining::{doi_koppinen_entwining, flip_entwining, wxz_from_entwining, EntwiningStructure};
use crate::report::Report;
use crate::scalar::{sx, ScalarExpr};
use crate::structures::{Algebra, Bialgebra, Coalgebra, ComoduleAlgebra, ModuleCoalgebra};
use crate::tensor::{LinMap, ProductSpace, Space};
use crate::yang_baxter::{build_w, build_z, check_wxz, WxzSystem};

#[derive(Debug, Clone, Error)]
pub enum ExampleError {
    #[error("unknown example `{0}`")]
    Unknown(String),
    #[error("example `{example}` has no parameter `{param}`")]
    UnknownParam { example: String, param: String },
    #[error("invalid parameter `{param}`: {reason}")]
    InvalidParam { param: String, reason: String },
    #[error("example `{name}` fails its checks\n{report}")]
    Invalid { name: String, report: Box<Report> },
}

#[derive(Clone, Debug)]
pub enum Payload {
    Algebra(Algebra),
    Coalgebra(Coalgebra),
    Bialgebra(Bialgebra),
    Entwining(EntwiningStructure),
    Wxz(WxzSystem),
    Map(LinMap),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Algebra(_) => "algebra",
            Payload::Coalgebra(_) => "coalgebra",
            Payload::Bialgebra(_) => "bialgebra",
            Payload::Entwining(_) => "entwining structure",
            Payload::Wxz(_) => "WXZ-system",
            Payload::Map(_) => "linear map",
        }
    }

    /// The structural check for the payload; plain maps carry none.
    pub fn check(&self) -> Report {
        match self {
            Payload::Algebra(a) => a.check(),
            Payload::Coalgebra(c) => c.check(),
            Payload::Bialgebra(b) => b.check(),
            Payload::Entwining(e) => e.check_all(),
            Payload::Wxz(sys) => check_wxz(sys),
            Payload::Map(m) => Report::new(format!("linear map {} -> {}", m.domain(), m.codomain())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamKind {
    Scalar,
    /// A positive integer no smaller than the bound.
    Count(usize),
}

#[derive(Clone, Copy, Debug)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: ParamKind,
    pub default: &'static str,
}

#[derive(Clone, Copy, Debug)]
pub struct ExampleInfo {
    pub name: &'static str,
    pub summary: &'static str,
    pub params: &'static [ParamSpec],
}

impl fmt::Display for ExampleInfo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig: Vec<String> = self.params.iter().map(|p| format!("{}={}", p.name, p.default)).collect();
        write!(f, "{}({})  {}", self.name, sig.join(","), self.summary)
    }
}

#[derive(Clone, Debug)]
pub struct ExampleEntry {
    pub name: String,
    pub params: BTreeMap<String, ScalarExpr>,
    pub payload: Payload,
}

const fn scalar(name: &'static str) -> ParamSpec {
    ParamSpec { name, kind: ParamKind::Scalar, default: name }
}

const fn count(name: &'static str, min: usize, default: &'static str) -> ParamSpec {
    ParamSpec { name, kind: ParamKind::Count(min), default }
}

const QUADRATIC: &[ParamSpec] = &[scalar("q"), scalar("r"), scalar("s"), scalar("p"), scalar("t")];
const GROUP: &[ParamSpec] = &[count("n", 1, "2")];

const REGISTRY: &[ExampleInfo] = &[
    ExampleInfo { name: "dk.group", summary: "Doi-Koppinen entwining of k[Z_n] with itself", params: GROUP },
    ExampleInfo {
        name: "ex27.truncated",
        summary: "shift entwining with indices taken mod N",
        params: &[count("N", 1, "3")],
    },
    ExampleInfo { name: "ex28.W", summary: "W on A⊗A with parameters r, s", params: QUADRATIC },
    ExampleInfo { name: "ex28.X56", summary: "the invertible X with free q", params: QUADRATIC },
    ExampleInfo { name: "ex28.X59", summary: "the X deformed by s", params: QUADRATIC },
    ExampleInfo { name: "ex28.Z", summary: "Z on C⊗C with parameters p, t", params: QUADRATIC },
    ExampleInfo { name: "ex28.algebra", summary: "A = span{1, x}, x² = 1/(s+1)", params: QUADRATIC },
    ExampleInfo {
        name: "ex28.coalgebra",
        summary: "C = span{e, f}, Δe = e⊗e + 1/(s+1) f⊗f, Δf = e⊗f + f⊗e",
        params: QUADRATIC,
    },
    ExampleInfo { name: "ex28.entwining", summary: "A entwined with C by ψ(e⊗x) = q 1⊗f + x⊗e, ψ(f⊗x) = -x⊗f", params: QUADRATIC },
    ExampleInfo { name: "ex28.flip", summary: "A entwined with C by the flip", params: QUADRATIC },
    ExampleInfo { name: "ex28.wxz", summary: "WXZ-system of the entwining", params: QUADRATIC },
    ExampleInfo {
        name: "flip",
        summary: "k[Z_n] entwined with n group-likes by the flip",
        params: GROUP,
    },
    ExampleInfo { name: "ground_field", summary: "k as an algebra", params: &[] },
    ExampleInfo { name: "group_algebra", summary: "group algebra k[Z_n]", params: GROUP },
    ExampleInfo { name: "group_bialgebra", summary: "group bialgebra k[Z_n]", params: GROUP },
    ExampleInfo { name: "group_like", summary: "coalgebra of n group-likes", params: GROUP },
    ExampleInfo { name: "single_group_like", summary: "coalgebra spanned by one group-like e", params: &[] },
];

/// Registered examples, sorted by name.
pub fn list_examples() -> &'static [ExampleInfo] {
    REGISTRY
}

fn invalid(param: &str, reason: impl Into<String>) -> ExampleError {
    ExampleError::InvalidParam {
        param: param.to_string(),
        reason: reason.into(),
    }
}

fn inv_s_plus_one(s: &ScalarExpr) -> Result<ScalarExpr, ExampleError> {
    (s + &ScalarExpr::one()).recip().map_err(|_| invalid("s", "s = -1 is excluded"))
}

/// `A = span{1, x}` with `x² = 1/(s+1)`.
pub fn quadratic_algebra(s: &ScalarExpr) -> Result<Algebra, ExampleError> {
    let c = inv_s_plus_one(s)?;
    let space = Space::new("A", vec!["1", "x"]).expect("valid");
    Ok(Algebra::from_table(space, &[(0, ScalarExpr::one())], |i, j| match (i, j) {
        (1, 1) => vec![(0, c.clone())],
        _ => vec![(i + j, ScalarExpr::one())],
    }))
}

/// `C = span{e, f}`, `Δe = e⊗e + 1/(s+1)·f⊗f`, `Δf = e⊗f + f⊗e`, `ε = (1, 0)`.
pub fn quadratic_coalgebra(s: &ScalarExpr) -> Result<Coalgebra, ExampleError> {
    let c = inv_s_plus_one(s)?;
    let space = Space::new("C", vec!["e", "f"]).expect("valid");
    Ok(Coalgebra::from_table(space, &[ScalarExpr::one(), ScalarExpr::zero()], |i| {
        if i == 0 {
            vec![(0, 0, ScalarExpr::one()), (1, 1, c.clone())]
        } else {
            vec![(0, 1, ScalarExpr::one()), (1, 0, ScalarExpr::one())]
        }
    }))
}

/// `ψ(c⊗1) = 1⊗c`, `ψ(e⊗x) = q·1⊗f + x⊗e`, `ψ(f⊗x) = −x⊗f`.
pub fn quadratic_entwining(q: &ScalarExpr, s: &ScalarExpr) -> Result<EntwiningStructure, ExampleError> {
    let a = quadratic_algebra(s)?;
    let c = quadratic_coalgebra(s)?;
    let psi = LinMap::from_rows(
        ProductSpace::new(vec![c.space().clone(), a.space().clone()]),
        ProductSpace::new(vec![a.space().clone(), c.space().clone()]),
        vec![
            vec![sx("1"), sx("0"), sx("0"), sx("0")],
            vec![sx("0"), q.clone(), sx("1"), sx("0")],
            vec![sx("0"), sx("1"), sx("0"), sx("0")],
            vec![sx("0"), sx("0"), sx("0"), sx("-1")],
        ],
    )
    .expect("4x4");
    Ok(EntwiningStructure::new(a, c, psi).expect("types match"))
}

fn quadratic_pair() -> ProductSpace {
    let a = Space::new("A", vec!["1", "x"]).expect("valid");
    let c = Space::new("C", vec!["e", "f"]).expect("valid");
    ProductSpace::new(vec![a, c])
}

/// The invertible `X` on `A⊗C` with free entry `q`.
pub fn quadratic_x(q: &ScalarExpr) -> LinMap {
    let ac = quadratic_pair();
    LinMap::from_rows(
        ac.clone(),
        ac,
        vec![
            vec![sx("1"), sx("0"), sx("0"), sx("0")],
            vec![sx("0"), sx("1"), sx("0"), sx("0")],
            vec![sx("0"), q.clone(), sx("1"), sx("0")],
            vec![sx("0"), sx("0"), sx("0"), sx("-1")],
        ],
    )
    .expect("4x4")
}

/// `X` deformed by `s`; equals [`quadratic_x`] at `s = 1`.
pub fn quadratic_x_scaled(q: &ScalarExpr, s: &ScalarExpr) -> Result<LinMap, ExampleError> {
    let si = s.recip().map_err(|_| invalid("s", "s = 0 is excluded"))?;
    let ac = quadratic_pair();
    let corner = q * &(&ScalarExpr::one() - s);
    Ok(LinMap::from_rows(
        ac.clone(),
        ac,
        vec![
            vec![si.clone(), sx("0"), sx("0"), corner],
            vec![sx("0"), sx("1"), sx("0"), sx("0")],
            vec![sx("0"), q.clone(), si, sx("0")],
            vec![sx("0"), sx("0"), sx("0"), sx("-1")],
        ],
    )
    .expect("4x4"))
}

/// Shift entwining on `A = span{1, x_i}` (`x_i x_j = 0`) and `C = span{e, y_j}`
/// (`e` group-like, `y_j` primitive), indices mod `n`: `ψ(y_j⊗x_i) = x_{i+1}⊗y_{j+1}`.
pub fn shift_entwining(n: usize) -> Result<EntwiningStructure, ExampleError> {
    if n == 0 {
        return Err(invalid("N", "must be at least 1"));
    }
    let mut a_basis = vec!["1".to_string()];
    a_basis.extend((0..n).map(|i| format!("x{i}")));
    let mut c_basis = vec!["e".to_string()];
    c_basis.extend((0..n).map(|j| format!("y{j}")));
    let a_space = Space::new("A", a_basis).expect("distinct");
    let c_space = Space::new("C", c_basis).expect("distinct");
    let alg = Algebra::from_table(a_space, &[(0, ScalarExpr::one())], |i, j| match (i, j) {
        (0, k) | (k, 0) => vec![(k, ScalarExpr::one())],
        _ => vec![],
    });
    let mut counit = vec![ScalarExpr::zero(); n + 1];
    counit[0] = ScalarExpr::one();
    let coalg = Coalgebra::from_table(c_space, &counit, |i| match i {
        0 => vec![(0, 0, ScalarExpr::one())],
        j => vec![(0, j, ScalarExpr::one()), (j, 0, ScalarExpr::one())],
    });
    let m = n + 1;
    let psi = LinMap::from_fn(
        ProductSpace::new(vec![coalg.space().clone(), alg.space().clone()]),
        ProductSpace::new(vec![alg.space().clone(), coalg.space().clone()]),
        |row, col| {
            let (c, a) = (row / m, row % m);
            let target = if c == 0 || a == 0 {
                (a, c)
            } else {
                (a % n + 1, c % n + 1)
            };
            if (col / m, col % m) == target {
                ScalarExpr::one()
            } else {
                ScalarExpr::zero()
            }
        },
    );
    Ok(EntwiningStructure::new(alg, coalg, psi).expect("types match"))
}

/// `B = k[ℤ_n]` coacting on itself by `Δ` and acting on itself by `μ`.
pub fn group_doi_koppinen(n: usize) -> EntwiningStructure {
    let b = Bialgebra::cyclic_group(n);
    doi_koppinen_entwining(&ComoduleAlgebra::regular(&b), &ModuleCoalgebra::regular(&b)).expect("group data is valid")
}

fn group_flip(n: usize) -> EntwiningStructure {
    let coalg = if n == 1 { Coalgebra::single_group_like() } else { Coalgebra::group_like(n) };
    flip_entwining(Algebra::cyclic_group(n), coalg)
}

fn resolve(info: &ExampleInfo, overrides: &BTreeMap<String, ScalarExpr>) -> Result<BTreeMap<String, ScalarExpr>, ExampleError> {
    for key in overrides.keys() {
        if !info.params.iter().any(|p| p.name == key) {
            return Err(ExampleError::UnknownParam {
                example: info.name.to_string(),
                param: key.clone(),
            });
        }
    }
    let mut out = BTreeMap::new();
    for spec in info.params {
        let value = overrides.get(spec.name).cloned().unwrap_or_else(|| sx(spec.default));
        if let ParamKind::Count(min) = spec.kind {
            match value.as_i64() {
                Some(v) if v >= min as i64 => {}
                _ => return Err(invalid(spec.name, format!("expected an integer ≥ {min}, found {value}"))),
            }
        }
        out.insert(spec.name.to_string(), value);
    }
    Ok(out)
}

/// Builds and validates a registered example.
pub fn get_example(name: &str, overrides: &BTreeMap<String, ScalarExpr>) -> Result<ExampleEntry, ExampleError> {
    let info = REGISTRY
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| ExampleError::Unknown(name.to_string()))?;
    let params = resolve(info, overrides)?;
    let p = |k: &str| params[k].clone();
    let count = |k: &str| params[k].as_i64().expect("validated") as usize;
    let payload = match name {
        "ex28.algebra" => Payload::Algebra(quadratic_algebra(&p("s"))?),
        "ex28.coalgebra" => Payload::Coalgebra(quadratic_coalgebra(&p("s"))?),
        "ex28.entwining" => Payload::Entwining(quadratic_entwining(&p("q"), &p("s"))?),
        "ex28.flip" => Payload::Entwining(flip_entwining(quadratic_algebra(&p("s"))?, quadratic_coalgebra(&p("s"))?)),
        "ex28.W" => Payload::Map(build_w(&quadratic_algebra(&p("s"))?, &p("r"), &p("s"))),
        "ex28.Z" => Payload::Map(build_z(&quadratic_coalgebra(&p("s"))?, &p("p"), &p("t"))),
        "ex28.X56" => Payload::Map(quadratic_x(&p("q"))),
        "ex28.X59" => Payload::Map(quadratic_x_scaled(&p("q"), &p("s"))?),
        "ex28.wxz" => {
            let e = quadratic_entwining(&p("q"), &p("s"))?;
            Payload::Wxz(wxz_from_entwining(&e, &p("r"), &p("s"), &p("p"), &p("t")).expect("entwining is valid"))
        }
        "ex27.truncated" => Payload::Entwining(shift_entwining(count("N"))?),
        "flip" => Payload::Entwining(group_flip(count("n"))),
        "dk.group" => Payload::Entwining(group_doi_koppinen(count("n"))),
        "group_algebra" => Payload::Algebra(Algebra::cyclic_group(count("n"))),
        "group_bialgebra" => Payload::Bialgebra(Bialgebra::cyclic_group(count("n"))),
        "group_like" => Payload::Coalgebra(Coalgebra::group_like(count("n"))),
        "single_group_like" => Payload::Coalgebra(Coalgebra::single_group_like()),
        "ground_field" => Payload::Algebra(Algebra::ground_field()),
        _ => unreachable!("registry and builder agree"),
    };
    let report = payload.check();
    if !report.is_pass() {
        return Err(ExampleError::Invalid {
            name: name.to_string(),
            report: Box::new(report),
        });
    }
    Ok(ExampleEntry {
        name: name.to_string(),
        params,
        payload,
    })
}

/// Every entwining structure in the registry at its default parameters.
pub fn entwining_zoo() -> Vec<(String, EntwiningStructure)> {
    let mut out = vec![
        ("flip".to_string(), group_flip(2)),
        ("ex28.flip".to_string(), flip_entwining(quadratic_algebra(&sx("s")).unwrap(), quadratic_coalgebra(&sx("s")).unwrap())),
        ("ex28.entwining".to_string(), quadratic_entwining(&sx("q"), &sx("s")).unwrap()),
    ];
    for n in 1..=3 {
        out.push((format!("ex27.truncated(N={n})"), shift_entwining(n).unwrap()));
    }
    for n in 2..=3 {
        out.push((format!("dk.group(n={n})"), group_doi_koppinen(n)));
    }
    out
}

/// Every algebra and coalgebra in the registry at its default parameters.
pub fn structure_zoo() -> (Vec<Algebra>, Vec<Coalgebra>) {
    let mut algebras = vec![
        Algebra::ground_field(),
        Algebra::cyclic_group(2),
        Algebra::cyclic_group(3),
        quadratic_algebra(&sx("s")).unwrap(),
        shift_entwining(2).unwrap().algebra().clone(),
    ];
    let mut coalgebras = vec![
        Coalgebra::single_group_like(),
        Coalgebra::group_like(2),
        Coalgebra::group_like(3),
        quadratic_coalgebra(&sx("s")).unwrap(),
        shift_entwining(2).unwrap().coalgebra().clone(),
    ];
    let duals_a: Vec<_> = coalgebras.iter().map(Coalgebra::dual).collect();
    let duals_c: Vec<_> = algebras.iter().map(Algebra::dual).collect();
    algebras.extend(duals_a);
    coalgebras.extend(duals_c);
    (algebras, coalgebras)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(m: &LinMap) -> Vec<Vec<String>> {
        (0..m.rows()).map(|i| m.row(i).iter().map(ToString::to_string).collect()).collect()
    }

    fn no_params() -> BTreeMap<String, ScalarExpr> {
        BTreeMap::new()
    }

    fn with(pairs: &[(&str, &str)]) -> BTreeMap<String, ScalarExpr> {
        pairs.iter().map(|(k, v)| (k.to_string(), sx(v))).collect()
    }

    #[test]
    fn listing_is_sorted_and_complete() {
        let names: Vec<_> = list_examples().iter().map(|e| e.name).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
        for n in ["ex28.W", "ex28.X56", "ex28.X59", "ex27.truncated", "flip", "group_bialgebra"] {
            assert!(names.contains(&n));
        }
        for info in list_examples() {
            get_example(info.name, &no_params()).unwrap_or_else(|e| panic!("{}: {e}", info.name));
        }
    }

    #[test]
    fn printed_x_matrices() {
        let Payload::Map(x56) = get_example("ex28.X56", &no_params()).unwrap().payload else { panic!() };
        assert_eq!(
            rows(&x56),
            [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "q", "1", "0"], ["0", "0", "0", "-1"]]
        );
        let Payload::Map(x59) = get_example("ex28.X59", &no_params()).unwrap().payload else { panic!() };
        assert_eq!(
            rows(&x59),
            [
                ["(1)/(s)", "0", "0", "q-s*q"],
                ["0", "1", "0", "0"],
                ["0", "q", "(1)/(s)", "0"],
                ["0", "0", "0", "-1"]
            ]
        );
        let Payload::Map(at_one) = get_example("ex28.X59", &with(&[("s", "1")])).unwrap().payload else { panic!() };
        assert_eq!(at_one, x56);
    }

    #[test]
    fn printed_w_matrix() {
        let Payload::Map(w) = get_example("ex28.W", &with(&[("r", "1"), ("t", "1"), ("p", "s")])).unwrap().payload
        else {
            panic!()
        };
        assert_eq!(
            rows(&w),
            [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "1-s", "s", "0"], ["1", "0", "0", "-s"]]
        );
    }

    #[test]
    fn excluded_parameters() {
        assert!(matches!(
            get_example("ex28.algebra", &with(&[("s", "-1")])),
            Err(ExampleError::InvalidParam { .. })
        ));
        assert!(matches!(
            get_example("ex27.truncated", &with(&[("N", "0")])),
            Err(ExampleError::InvalidParam { .. })
        ));
        assert!(matches!(
            get_example("ex27.truncated", &with(&[("N", "1/2")])),
            Err(ExampleError::InvalidParam { .. })
        ));
        assert!(matches!(get_example("ex28.W", &with(&[("z", "1")])), Err(ExampleError::UnknownParam { .. })));
        assert!(matches!(get_example("nope", &no_params()), Err(ExampleError::Unknown(_))));
    }

    #[test]
    fn shift_entwining_shape() {
        let e = shift_entwining(3).unwrap();
        assert_eq!(e.algebra().space().basis(), ["1", "x0", "x1", "x2"]);
        assert_eq!(e.coalgebra().space().basis(), ["e", "y0", "y1", "y2"]);
        // ψ(y2⊗x0) = x1⊗y0
        let row = e.psi().row(3 * 4 + 1);
        let col = e.psi().codomain().index(&[2, 1]);
        assert!(row[col].is_one());
        assert_eq!(row.iter().filter(|v| !v.is_zero()).count(), 1);
    }

    #[test]
    fn zoo_passes() {
        for (name, e) in entwining_zoo() {
            assert!(e.check_all().is_pass(), "{name}");
        }
        let (algs, coalgs) = structure_zoo();
        assert!(algs.iter().all(|a| a.check().is_pass()));
        assert!(coalgs.iter().all(|c| c.check().is_pass()));
    }

    #[test]
    fn scaled_x_fails_xxz_off_s_one() {
        use crate::yang_baxter::{build_w, build_z, check_wxz, WxzSystem};
        let s = sx("s");
        let w = build_w(&quadratic_algebra(&s).unwrap(), &sx("1"), &s);
        let z = build_z(&quadratic_coalgebra(&s).unwrap(), &s, &sx("1"));
        let sys = WxzSystem::new(w, quadratic_x_scaled(&sx("q"), &s).unwrap(), z).unwrap();
        let report = check_wxz(&sys);
        for name in ["[W,W,W]", "[Z,Z,Z]", "[W,X,X]"] {
            assert!(report.get(name).unwrap().passed(), "{name}");
        }
        // e⊗e picks up ι(1)⊗f⊗f through the corner entry q(1 − s)
        let xxz = report.get("[X,X,Z]").unwrap();
        let expected = sx("(s^2 - 1)*(1 - s^2*q^2)/s^2");
        let wit: Vec<_> = xxz.witnesses().into_iter().map(|w| (w.input, w.output, w.value)).collect();
        assert_eq!(
            wit,
            [
                ("1⊗e⊗e".to_string(), "1⊗f⊗f".to_string(), expected.clone()),
                ("x⊗e⊗e".to_string(), "x⊗f⊗f".to_string(), expected),
            ]
        );
    }
}
