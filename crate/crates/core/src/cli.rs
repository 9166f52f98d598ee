//! Command-line front end. Exit codes: 0 pass, 1 a check failed, 2 bad input.

use std::collections::BTreeMap;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::entwining::{wxz_from_entwining, EntwiningStructure};
use crate::examples::{get_example, list_examples, ExampleEntry, Payload};
use crate::format::StructureFile;
use crate::gluing::{check_hecke, glue, hecke_glue, GluedOperator};
use crate::report::Report;
use crate::scalar::{parse, sx, ScalarExpr};
use crate::structures::{Algebra, Coalgebra};
use crate::tensor::LinMap;
use crate::yang_baxter::{check_wxz, WxzSystem};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "entwine", version, about = "Exact checks for Yang-Baxter systems and entwining structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Input {
    /// JSON structure file; `-` or omitted reads standard input
    #[arg(long, short)]
    file: Option<PathBuf>,
    /// Registered example instead of a file
    #[arg(long, short, conflicts_with = "file")]
    example: Option<String>,
    /// Parameters as `name=value,...` with scalar-grammar values
    #[arg(long, short, default_value = "")]
    params: String,
    /// Emit a JSON report
    #[arg(long)]
    json: bool,
    /// Write structures or matrices to this path
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the algebra axioms
    CheckAlgebra(Input),
    /// Check the coalgebra axioms
    CheckCoalgebra(Input),
    /// Check the four entwining axioms
    CheckEntwining(Input),
    /// Check the WXZ equations; an entwining input is first turned into a system
    CheckWxz(Input),
    /// Build the WXZ-system of an entwining structure (parameters r, s, p, t)
    BuildWxz(Input),
    /// Glue a WXZ-system into one operator and check the braid equation
    Glue(Input),
    /// Build the q-Hecke glue of an entwining structure (parameter q)
    HeckeGlue(Input),
    /// Check the q-Hecke relation and braid equation for the map `R`
    CheckHecke(Input),
    /// Write the matrices of an input as JSON
    ExportMatrix(Input),
    /// Browse the example registry
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
}

#[derive(Subcommand, Debug)]
enum ExamplesAction {
    /// List registered names with their parameters
    List,
    /// Print a registered example
    Show {
        name: String,
        #[arg(long, short, default_value = "")]
        params: String,
    },
}

/// Failure to obtain usable input.
#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Res<T> = Result<T, InputError>;

const BUILD_PARAMS: [&str; 5] = ["r", "s", "p", "t", "q"];

pub fn parse_params(text: &str) -> Result<BTreeMap<String, ScalarExpr>, String> {
    let mut out = BTreeMap::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| format!("parameter `{part}` is not of the form name=value"))?;
        let value = parse(value.trim()).map_err(|e| format!("parameter `{}`: {e}", name.trim()))?;
        if out.insert(name.trim().to_string(), value).is_some() {
            return Err(format!("parameter `{}` given twice", name.trim()));
        }
    }
    Ok(out)
}

/// What an input resolved to.
enum Loaded {
    File(StructureFile),
    Example(ExampleEntry),
}

struct Ctx<'a> {
    input: &'a Input,
    stdin: &'a mut dyn Read,
    params: BTreeMap<String, ScalarExpr>,
}

impl Ctx<'_> {
    fn param(&self, name: &str) -> ScalarExpr {
        self.params.get(name).cloned().unwrap_or_else(|| sx(name))
    }

    fn load(&mut self) -> Res<Loaded> {
        if let Some(name) = &self.input.example {
            let info = list_examples()
                .iter()
                .find(|e| e.name == name)
                .ok_or_else(|| InputError(format!("unknown example `{name}`")))?;
            let own: BTreeMap<_, _> = self
                .params
                .iter()
                .filter(|(k, _)| info.params.iter().any(|p| p.name == k.as_str()))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect();
            return Ok(Loaded::Example(get_example(name, &own)?));
        }
        let text = match &self.input.file {
            Some(p) if p.as_os_str() != "-" => {
                fs::read_to_string(p).map_err(|e| InputError(format!("{}: {e}", p.display())))?
            }
            _ => {
                let mut s = String::new();
                self.stdin.read_to_string(&mut s)?;
                s
            }
        };
        Ok(Loaded::File(StructureFile::from_json(&text)?))
    }

    fn check_params(&self) -> Res<()> {
        let declared: Vec<&str> = match &self.input.example {
            Some(name) => list_examples()
                .iter()
                .find(|e| e.name == name)
                .map(|e| e.params.iter().map(|p| p.name).collect())
                .unwrap_or_default(),
            None => vec![],
        };
        for k in self.params.keys() {
            if !BUILD_PARAMS.contains(&k.as_str()) && !declared.contains(&k.as_str()) {
                return Err(InputError(format!("unknown parameter `{k}`")));
            }
        }
        Ok(())
    }

    fn algebra(&mut self) -> Res<Algebra> {
        match self.load()? {
            Loaded::File(f) => Ok(f.algebra()?),
            Loaded::Example(e) => match e.payload {
                Payload::Algebra(a) => Ok(a),
                Payload::Bialgebra(b) => Ok(b.algebra().clone()),
                Payload::Entwining(en) => Ok(en.algebra().clone()),
                other => Err(InputError(format!("example `{}` is a {}, not an algebra", e.name, other.kind()))),
            },
        }
    }

    fn coalgebra(&mut self) -> Res<Coalgebra> {
        match self.load()? {
            Loaded::File(f) => Ok(f.coalgebra()?),
            Loaded::Example(e) => match e.payload {
                Payload::Coalgebra(c) => Ok(c),
                Payload::Bialgebra(b) => Ok(b.coalgebra().clone()),
                Payload::Entwining(en) => Ok(en.coalgebra().clone()),
                other => Err(InputError(format!("example `{}` is a {}, not a coalgebra", e.name, other.kind()))),
            },
        }
    }

    fn entwining_of(&self, loaded: Loaded) -> Res<Result<EntwiningStructure, Loaded>> {
        Ok(match loaded {
            Loaded::File(f) if f.has_map("psi") => Ok(f.entwining()?),
            Loaded::Example(ExampleEntry {
                payload: Payload::Entwining(e),
                ..
            }) => Ok(e),
            other => Err(other),
        })
    }

    fn entwining(&mut self) -> Res<EntwiningStructure> {
        let loaded = self.load()?;
        self.entwining_of(loaded)?
            .map_err(|_| InputError("input is not an entwining structure (needs algebra, coalgebra and map `psi`)".into()))
    }

    /// A WXZ-system, built from an entwining input when necessary.
    fn system(&mut self) -> Res<Result<WxzSystem, Report>> {
        let loaded = self.load()?;
        match self.entwining_of(loaded)? {
            Ok(e) => {
                let report = e.check();
                if !report.is_pass() {
                    return Ok(Err(report));
                }
                let (r, s, p, t) = (self.param("r"), self.param("s"), self.param("p"), self.param("t"));
                Ok(Ok(wxz_from_entwining(&e, &r, &s, &p, &t)?))
            }
            Err(Loaded::File(f)) => Ok(Ok(f.wxz()?)),
            Err(Loaded::Example(ExampleEntry {
                payload: Payload::Wxz(sys),
                ..
            })) => Ok(Ok(sys)),
            Err(Loaded::Example(e)) => Err(InputError(format!("example `{}` is a {}, not a WXZ-system", e.name, e.payload.kind()))),
        }
    }

    fn map_r(&mut self) -> Res<LinMap> {
        match self.load()? {
            Loaded::File(f) => Ok(f.map("R")?),
            Loaded::Example(ExampleEntry {
                payload: Payload::Map(m),
                ..
            }) => Ok(m),
            Loaded::Example(e) => Err(InputError(format!("example `{}` is a {}, not a linear map", e.name, e.payload.kind()))),
        }
    }
}

fn emit_report(report: &Report, json: bool, out: &mut dyn Write) -> Res<i32> {
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report.to_json())?)?;
    } else {
        write!(out, "{report}")?;
        writeln!(out, "{}", if report.is_pass() { "PASS" } else { "FAIL" })?;
    }
    Ok(if report.is_pass() { EXIT_PASS } else { EXIT_FAIL })
}

fn write_file(input: &Input, file: &StructureFile, out: &mut dyn Write) -> Res<()> {
    match &input.output {
        Some(p) => fs::write(p, file.to_json()).map_err(|e| InputError(format!("{}: {e}", p.display()))),
        None => Ok(out.write_all(file.to_json().as_bytes())?),
    }
}

fn glued_file(g: &GluedOperator) -> Res<StructureFile> {
    let mut f = StructureFile::default();
    f.add_map("R", g.map())?;
    Ok(f)
}

fn export(loaded: Loaded) -> Res<StructureFile> {
    Ok(match loaded {
        Loaded::File(f) => {
            // re-encode through the typed structures so the output is canonical
            let mut out = StructureFile::default();
            if f.algebra.is_some() {
                out.set_algebra(&f.algebra()?)?;
            }
            if f.coalgebra.is_some() {
                out.set_coalgebra(&f.coalgebra()?)?;
            }
            for name in f.maps.keys() {
                out.add_map(name, &f.map(name)?)?;
            }
            out
        }
        Loaded::Example(e) => {
            let mut out = StructureFile::default();
            match &e.payload {
                Payload::Algebra(a) => out.set_algebra(a)?,
                Payload::Coalgebra(c) => out.set_coalgebra(c)?,
                Payload::Bialgebra(b) => {
                    out.set_algebra(b.algebra())?;
                    out.set_coalgebra(b.coalgebra())?;
                }
                Payload::Entwining(en) => out = StructureFile::from_entwining(en)?,
                Payload::Wxz(sys) => out = StructureFile::from_wxz(sys)?,
                Payload::Map(m) => out.add_map(&e.name, m)?,
            }
            out
        }
    })
}

fn show(entry: &ExampleEntry, out: &mut dyn Write) -> Res<()> {
    let print = |out: &mut dyn Write, title: &str, m: &LinMap| -> Res<()> {
        writeln!(out, "{title}:")?;
        write!(out, "{m}")?;
        Ok(())
    };
    match &entry.payload {
        Payload::Map(m) => write!(out, "{m}")?,
        Payload::Algebra(a) => {
            print(out, "multiplication", a.mult())?;
            print(out, "unit", a.unit())?;
        }
        Payload::Coalgebra(c) => {
            print(out, "comultiplication", c.comult())?;
            print(out, "counit", c.counit())?;
        }
        Payload::Bialgebra(b) => {
            print(out, "multiplication", b.algebra().mult())?;
            print(out, "unit", b.algebra().unit())?;
            print(out, "comultiplication", b.coalgebra().comult())?;
            print(out, "counit", b.coalgebra().counit())?;
        }
        Payload::Entwining(e) => {
            print(out, "multiplication", e.algebra().mult())?;
            print(out, "unit", e.algebra().unit())?;
            print(out, "comultiplication", e.coalgebra().comult())?;
            print(out, "counit", e.coalgebra().counit())?;
            print(out, "psi", e.psi())?;
        }
        Payload::Wxz(sys) => {
            print(out, "W", sys.w())?;
            print(out, "X", sys.x())?;
            print(out, "Z", sys.z())?;
        }
    }
    Ok(())
}

fn execute(cmd: Command, stdin: &mut dyn Read, out: &mut dyn Write) -> Res<i32> {
    let input = match &cmd {
        Command::Examples { action } => {
            match action {
                ExamplesAction::List => {
                    for info in list_examples() {
                        writeln!(out, "{info}")?;
                    }
                }
                ExamplesAction::Show { name, params } => {
                    let entry = get_example(name, &parse_params(params)?)?;
                    show(&entry, out)?;
                }
            }
            return Ok(EXIT_PASS);
        }
        Command::CheckAlgebra(i)
        | Command::CheckCoalgebra(i)
        | Command::CheckEntwining(i)
        | Command::CheckWxz(i)
        | Command::BuildWxz(i)
        | Command::Glue(i)
        | Command::HeckeGlue(i)
        | Command::CheckHecke(i)
        | Command::ExportMatrix(i) => i.clone(),
    };
    let mut ctx = Ctx {
        params: parse_params(&input.params)?,
        input: &input,
        stdin,
    };
    ctx.check_params()?;
    let json = input.json;
    match cmd {
        Command::CheckAlgebra(_) => emit_report(&ctx.algebra()?.check(), json, out),
        Command::CheckCoalgebra(_) => emit_report(&ctx.coalgebra()?.check(), json, out),
        Command::CheckEntwining(_) => emit_report(&ctx.entwining()?.check_all(), json, out),
        Command::CheckWxz(_) => match ctx.system()? {
            Ok(sys) => emit_report(&check_wxz(&sys), json, out),
            Err(report) => emit_report(&report, json, out),
        },
        Command::BuildWxz(_) => {
            let e = ctx.entwining()?;
            let report = e.check();
            if !report.is_pass() {
                return emit_report(&report, json, out);
            }
            let (r, s, p, t) = (ctx.param("r"), ctx.param("s"), ctx.param("p"), ctx.param("t"));
            let sys = wxz_from_entwining(&e, &r, &s, &p, &t)?;
            write_file(&input, &StructureFile::from_wxz(&sys)?, out)?;
            Ok(EXIT_PASS)
        }
        Command::Glue(_) => {
            let sys = match ctx.system()? {
                Ok(sys) => sys,
                Err(report) => return emit_report(&report, json, out),
            };
            let wxz = check_wxz(&sys);
            if !wxz.is_pass() {
                return emit_report(&wxz, json, out);
            }
            let g = glue(&sys)?;
            if input.output.is_some() {
                write_file(&input, &glued_file(&g)?, out)?;
            }
            let mut report = crate::yang_baxter::check_braid(g.map())?;
            report.subject = format!("glued operator on {}", g.sum_space());
            emit_report(&report, json, out)
        }
        Command::HeckeGlue(_) => {
            let e = ctx.entwining()?;
            let q = ctx.param("q");
            let g = hecke_glue(&e, &q)?;
            if input.output.is_some() {
                write_file(&input, &glued_file(&g)?, out)?;
            }
            emit_report(&check_hecke(g.map(), &q)?, json, out)
        }
        Command::CheckHecke(_) => {
            let r = ctx.map_r()?;
            let q = ctx.param("q");
            emit_report(&check_hecke(&r, &q)?, json, out)
        }
        Command::ExportMatrix(_) => {
            let loaded = ctx.load()?;
            write_file(&input, &export(loaded)?, out)?;
            Ok(EXIT_PASS)
        }
        Command::Examples { .. } => unreachable!("handled above"),
    }
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, stdin, out) {
        Ok(code) => code,
        Err(InputError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}
