//! Report documents produced by `run`.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Group,
    Chartable,
    Gensym,
    Classify,
    Oracle,
    Verify,
    Explore,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::Group,
        Command::Chartable,
        Command::Gensym,
        Command::Classify,
        Command::Oracle,
        Command::Verify,
        Command::Explore,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Group => "group",
            Command::Chartable => "chartable",
            Command::Gensym => "gensym",
            Command::Classify => "classify",
            Command::Oracle => "oracle",
            Command::Verify => "verify",
            Command::Explore => "explore",
        }
    }
}

impl std::str::FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Command::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| format!("unknown command {s:?}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    /// The computation ran but a mathematical check failed or a budget ran out.
    Failure,
    /// Bad input.
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Failure => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: Command,
    pub status: Status,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<Output>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub kind: String,
    pub message: String,
    /// JSON pointer into the offending input document.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pointer: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Output {
    Catalog(CatalogOutput),
    Group(GroupOutput),
    Chartable(ChartableOutput),
    Gensym(GensymOutput),
    Classify(ClassifyOutput),
    Oracle(OracleOutput),
    Verify(VerifyOutput),
    Explore(ExploreOutput),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub group: String,
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogOutput {
    pub groups: Vec<CatalogEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupOutput {
    pub group: String,
    pub order: usize,
    pub abelian: bool,
    pub exponent: usize,
    pub generators: Vec<usize>,
    pub element_orders: Vec<usize>,
    pub class_count: usize,
    pub generalized_dicyclic: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChartableOutput {
    /// A character-table document, decodable on its own.
    pub table: Value,
    pub real_schur_indices: Vec<u64>,
    pub rational_ideal_characters: Vec<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GensymOutput {
    pub group: String,
    pub character: Value,
    pub ideal_part: Value,
    /// The subgroup N whose cosets Sym(G, chi) must respect.
    pub coset_subgroup: Vec<usize>,
    pub order: String,
    pub order_expr: String,
    pub generically_closed: bool,
    pub generators: Vec<Vec<usize>>,
    /// chi-hat on each generator.
    pub hat_values: Vec<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseOutput {
    pub case: String,
    pub tag: String,
    pub evidence: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessOutput>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessOutput {
    pub n: Vec<usize>,
    pub z: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyOutput {
    pub group: String,
    pub mode: String,
    pub realizable: bool,
    pub matches: Vec<CaseOutput>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureOutput {
    pub chain: Vec<String>,
    pub stabilized: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleOutput {
    pub group: String,
    pub dim: usize,
    pub point: Vec<String>,
    pub orbit_size: usize,
    pub stabilizer: Vec<usize>,
    pub linear_symmetry_order: String,
    /// Generators of GL(Gv) as permutations of the orbit, listed in the
    /// order of first appearance under g -> g v.
    pub generators: Vec<Vec<usize>>,
    /// Closure chain, or the reason it could not be computed.
    pub closure: Result<ClosureOutput, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialOutput {
    pub point: Vec<String>,
    pub attempts: usize,
    pub orbit_size: usize,
    pub stabilizer_order: usize,
    pub oracle_order: String,
    pub groups_equal: bool,
    pub order_formula: bool,
    pub traces_agree: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub group: String,
    pub character: Value,
    pub theory_order: String,
    pub theory_generators: usize,
    pub trials: Vec<TrialOutput>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExploreOutput {
    pub group: String,
    pub tested: u64,
    /// Bitmask over the irreducibles and the character of the first
    /// generically closed candidate.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub found: Option<(u64, Value)>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("values serialize")
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(e) = &self.error {
            write!(f, "{} {}: {}: {}", self.command.name(), status_word(self.status), e.kind, e.message)?;
            if let Some(p) = &e.pointer {
                write!(f, " (at {p:?})")?;
            }
            return Ok(());
        }
        match &self.result {
            None => write!(f, "{} {}", self.command.name(), status_word(self.status)),
            Some(o) => write!(f, "{o}"),
        }
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Ok => "ok",
        Status::Failure => "failed",
        Status::Error => "error",
    }
}

impl fmt::Display for Output {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Output::Catalog(c) => {
                for e in &c.groups {
                    writeln!(f, "{:>3}  {}", e.order, e.group)?;
                }
                write!(f, "{} groups", c.groups.len())
            }
            Output::Group(g) => write!(
                f,
                "{}: order {}, exponent {}, {} classes, abelian {}, generalized dicyclic {}, generators {:?}",
                g.group, g.order, g.exponent, g.class_count, g.abelian, g.generalized_dicyclic, g.generators
            ),
            Output::Chartable(c) => {
                let rows = c.table.get("irreducibles").and_then(Value::as_array).cloned().unwrap_or_default();
                let fs = c.table.get("fs").and_then(Value::as_array).cloned().unwrap_or_default();
                for (i, r) in rows.iter().enumerate() {
                    let fsi = fs.get(i).map(compact).unwrap_or_default();
                    writeln!(f, "psi{i} [FS {fsi}, m_R {}]: {}", c.real_schur_indices.get(i).unwrap_or(&1), compact(r))?;
                }
                write!(f, "{} rational ideal characters", c.rational_ideal_characters.len())
            }
            Output::Gensym(g) => {
                write!(f, "|Sym({}, chi)| = ", g.group)?;
                if g.order_expr != g.order {
                    write!(f, "{} = ", g.order_expr)?;
                }
                write!(
                    f,
                    "{}; generically closed {}; {} generators; N has order {}",
                    g.order,
                    g.generically_closed,
                    g.generators.len(),
                    g.coset_subgroup.len()
                )
            }
            Output::Classify(c) => {
                match c.matches.first() {
                    None => write!(f, "{} ({}): realizable", c.group, c.mode)?,
                    Some(m) => write!(f, "{} ({}): not realizable, case ({}) {}", c.group, c.mode, m.case, m.tag)?,
                }
                for m in c.matches.iter().skip(1) {
                    write!(f, "; also case ({}) {}", m.case, m.tag)?;
                }
                for n in &c.notes {
                    write!(f, "; note: {n}")?;
                }
                Ok(())
            }
            Output::Oracle(o) => {
                write!(
                    f,
                    "{} in dimension {}: v = ({}), |Gv| = {}, |H| = {}, |GL(Gv)| = {}",
                    o.group,
                    o.dim,
                    o.point.join(", "),
                    o.orbit_size,
                    o.stabilizer.len(),
                    o.linear_symmetry_order
                )?;
                match &o.closure {
                    Ok(c) => write!(f, "; closure chain [{}]{}", c.chain.join(", "), if c.stabilized { "" } else { " (not stabilized)" }),
                    Err(e) => write!(f, "; closure not computed: {e}"),
                }
            }
            Output::Verify(v) => {
                writeln!(f, "{}: theory |Sym(G,chi)| = {} ({} generators)", v.group, v.theory_order, v.theory_generators)?;
                for (i, t) in v.trials.iter().enumerate() {
                    writeln!(
                        f,
                        "trial {i}: v = ({}) after {} sample(s); |Gv| = {}, |H| = {}, |GL(Gv)| = {}; groups {}, order formula {}, traces {}",
                        t.point.join(", "),
                        t.attempts,
                        t.orbit_size,
                        t.stabilizer_order,
                        t.oracle_order,
                        t.groups_equal,
                        t.order_formula,
                        t.traces_agree
                    )?;
                }
                write!(f, "{}", if v.passed { "PASS" } else { "FAIL" })
            }
            Output::Explore(e) => match &e.found {
                Some((mask, chi)) => write!(f, "{}: closed character after {} candidates, mask {mask:#b}: {}", e.group, e.tested, compact(chi)),
                None => write!(f, "{}: no generically closed character among {} candidates", e.group, e.tested),
            },
        }
    }
}
