//! Deterministic jobs behind the command-line interface.

use num_bigint::BigUint;
use serde_json::Value;

use super::charexpr::CharEvaluator;
use super::json::{decode_character, decode_representation, encode_character, encode_cyclotomic, encode_table, SchemaError, SCHEMA};
use super::report::*;
use crate::algebra::rational_to_string;
use crate::chartable::{Character, CharacterTable};
use crate::classify::{classify, ClassificationVerdict, ClassifyError, Problem};
use crate::gensym::{explore_abelian_closure, sym_group_of_character, GensymError, SearchOptions, DEFAULT_NODE_BUDGET};
use crate::group::{catalog, catalog_products, is_generalized_dicyclic, parse_group_spec, FiniteGroup, GroupSpec};
use crate::oracle::{
    closure_iterate, ideal_component_rep, linear_symmetry_group, regular_representation, sample_generic_point,
    verify_theory_vs_oracle, OracleError, RationalRepresentation, VerifyOptions,
};

/// Candidates examined by `explore` before giving up.
pub const EXPLORE_CANDIDATES: u64 = 1 << 16;

/// Where the representation of an `oracle` or `verify` job comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum RepSource {
    Regular,
    /// Ideal component cut out by a two-sided ideal character, given as a
    /// character input.
    Ideal(String),
    /// A representation document.
    Document(Value),
}

#[derive(Clone, Debug, PartialEq)]
pub struct JobSpec {
    pub command: Command,
    /// A group constructor; for `group`, also `catalog` or `catalog:<max order>`.
    pub group: Option<String>,
    /// Character input, see `parse_character_input`.
    pub character: Option<String>,
    pub rep: Option<RepSource>,
    pub mode: Problem,
    pub trials: usize,
    pub seed: u64,
    pub bound: i64,
    pub node_budget: u64,
    pub retries: usize,
    pub point_budget: usize,
}

impl JobSpec {
    pub fn new(command: Command) -> Self {
        let v = VerifyOptions::default();
        JobSpec {
            command,
            group: None,
            character: None,
            rep: None,
            mode: Problem::Affine,
            trials: v.trials,
            seed: v.seed,
            bound: v.bound,
            node_budget: DEFAULT_NODE_BUDGET,
            retries: v.retries,
            point_budget: v.point_budget,
        }
    }

    fn verify_options(&self) -> VerifyOptions {
        VerifyOptions {
            trials: self.trials,
            seed: self.seed,
            bound: self.bound,
            retries: self.retries,
            node_budget: self.node_budget,
            point_budget: self.point_budget,
        }
    }
}

#[derive(Debug)]
enum JobError {
    Input { kind: &'static str, message: String, pointer: Option<String> },
    Failure { kind: &'static str, message: String },
}

fn input(kind: &'static str, message: impl ToString) -> JobError {
    JobError::Input { kind, message: message.to_string(), pointer: None }
}

impl From<SchemaError> for JobError {
    fn from(e: SchemaError) -> Self {
        JobError::Input { kind: "schema", message: e.message, pointer: Some(e.pointer) }
    }
}

impl From<GensymError> for JobError {
    fn from(e: GensymError) -> Self {
        match e {
            GensymError::SearchBudgetExceeded { .. } | GensymError::ExplorationBudgetExceeded { .. } => {
                JobError::Failure { kind: "budget", message: e.to_string() }
            }
            _ => input("gensym", e),
        }
    }
}

impl From<OracleError> for JobError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Gensym(g) => g.into(),
            OracleError::SearchBudgetExceeded { .. } => JobError::Failure { kind: "budget", message: e.to_string() },
            OracleError::PersistentMismatch(_) => JobError::Failure { kind: "mismatch", message: e.to_string() },
            _ => input("oracle", e),
        }
    }
}

impl From<ClassifyError> for JobError {
    fn from(e: ClassifyError) -> Self {
        input("classify", e)
    }
}

/// Run a job. The report's status gives the exit code: 0 success,
/// 1 mathematical failure or exhausted budget, 2 bad input.
pub fn run(job: &JobSpec) -> Report {
    let (status, result, error) = match dispatch(job) {
        Ok((ok, out)) => (if ok { Status::Ok } else { Status::Failure }, Some(out), None),
        Err(JobError::Input { kind, message, pointer }) => {
            (Status::Error, None, Some(ErrorInfo { kind: kind.into(), message, pointer }))
        }
        Err(JobError::Failure { kind, message }) => {
            (Status::Failure, None, Some(ErrorInfo { kind: kind.into(), message, pointer: None }))
        }
    };
    Report { schema: SCHEMA.into(), command: job.command, status, seed: job.seed, result, error }
}

fn dispatch(job: &JobSpec) -> Result<(bool, Output), JobError> {
    if job.command == Command::Group {
        if let Some(list) = catalog_listing(job.group.as_deref())? {
            return Ok((true, list));
        }
    }
    let (spec, g) = group_of(job)?;
    match job.command {
        Command::Group => Ok((true, Output::Group(group_output(&g)))),
        Command::Chartable => {
            let t = table(&g)?;
            Ok((
                true,
                Output::Chartable(ChartableOutput {
                    table: encode_table(&t),
                    real_schur_indices: (0..t.irreducibles().len()).map(|i| t.real_schur_index(i)).collect(),
                    rational_ideal_characters: t.rational_ideal_characters().iter().map(encode_character).collect(),
                }),
            ))
        }
        Command::Gensym => {
            let t = table(&g)?;
            let chi = character_of(job, &t, &spec)?;
            let r = sym_group_of_character(&t, &chi, SearchOptions { node_budget: job.node_budget })?;
            Ok((
                true,
                Output::Gensym(GensymOutput {
                    group: g.label().into(),
                    character: encode_character(&chi),
                    ideal_part: encode_character(&r.decomposition.chi_i),
                    coset_subgroup: r.decomposition.n.elements().to_vec(),
                    order: r.order().to_string(),
                    order_expr: r.order_expr_string(),
                    generically_closed: r.generically_closed,
                    generators: r.group.generators().iter().map(|p| p.images().to_vec()).collect(),
                    hat_values: r.hat_values.iter().map(|(_, h)| encode_cyclotomic(h)).collect(),
                }),
            ))
        }
        Command::Classify => Ok((true, Output::Classify(classify_output(&g, &classify(&g, job.mode)?)))),
        Command::Oracle => {
            let t = table(&g)?;
            let rep = representation(job, &t, &spec)?;
            let o = sample_generic_point(&rep, job.seed, job.bound)?;
            let gl = linear_symmetry_group(&o, job.node_budget)?;
            let closure = match closure_iterate(&rep, &o, job.verify_options()) {
                Ok(c) => Ok(ClosureOutput { chain: c.chain.iter().map(BigUint::to_string).collect(), stabilized: c.stabilized }),
                Err(e) => Err(e.to_string()),
            };
            Ok((
                true,
                Output::Oracle(OracleOutput {
                    group: g.label().into(),
                    dim: rep.dim(),
                    point: o.base_point.iter().map(rational_to_string).collect(),
                    orbit_size: o.points.len(),
                    stabilizer: o.stabilizer.elements().to_vec(),
                    linear_symmetry_order: gl.order.to_string(),
                    generators: gl.orbit_permutations.iter().map(|p| p.images().to_vec()).collect(),
                    closure,
                }),
            ))
        }
        Command::Verify => {
            let t = table(&g)?;
            let rep = representation(job, &t, &spec)?;
            let afforded = rep.character(&t).embed(t.conductor());
            let chi = match &job.character {
                None => afforded,
                Some(_) => {
                    let chi = character_of(job, &t, &spec)?;
                    if chi != afforded {
                        return Err(input("character", "the character differs from the trace of the representation"));
                    }
                    chi
                }
            };
            let r = verify_theory_vs_oracle(&t, &rep, &chi, job.verify_options())?;
            let passed = r.passed();
            Ok((
                passed,
                Output::Verify(VerifyOutput {
                    group: g.label().into(),
                    character: encode_character(&chi),
                    theory_order: r.theory_order.to_string(),
                    theory_generators: r.theory_generators,
                    trials: r
                        .trials
                        .iter()
                        .map(|x| TrialOutput {
                            point: x.point.iter().map(rational_to_string).collect(),
                            attempts: x.attempts,
                            orbit_size: x.orbit_size,
                            stabilizer_order: x.stabilizer_order,
                            oracle_order: x.oracle_order.to_string(),
                            groups_equal: x.groups_equal,
                            order_formula: x.order_formula,
                            traces_agree: x.traces_agree,
                        })
                        .collect(),
                    passed,
                }),
            ))
        }
        Command::Explore => {
            let t = table(&g)?;
            let r = explore_abelian_closure(&t, EXPLORE_CANDIDATES, SearchOptions { node_budget: job.node_budget })?;
            Ok((
                true,
                Output::Explore(ExploreOutput {
                    group: g.label().into(),
                    tested: r.tested,
                    found: r.found.map(|(m, chi)| (m, encode_character(&chi))),
                }),
            ))
        }
    }
}

fn catalog_listing(group: Option<&str>) -> Result<Option<Output>, JobError> {
    let specs = match group {
        None | Some("catalog") => catalog(),
        Some(s) => match s.strip_prefix("catalog:") {
            Some(n) => {
                let max: usize = n.trim().parse().map_err(|_| input("group", format!("bad catalog bound {n:?}")))?;
                catalog_products(max)
            }
            None => return Ok(None),
        },
    };
    let groups = specs.iter().map(|s| CatalogEntry { group: s.to_string(), order: s.order() }).collect();
    Ok(Some(Output::Catalog(CatalogOutput { groups })))
}

fn group_of(job: &JobSpec) -> Result<(GroupSpec, FiniteGroup), JobError> {
    let text = job.group.as_deref().ok_or_else(|| input("group", "--group is required"))?;
    let spec = parse_group_spec(text).map_err(|e| input("group", e))?;
    let g = spec.build().map_err(|e| input("group", e))?;
    Ok((spec, g))
}

fn table(g: &FiniteGroup) -> Result<CharacterTable, JobError> {
    CharacterTable::compute(g).map_err(|e| input("chartable", e))
}

fn group_output(g: &FiniteGroup) -> GroupOutput {
    GroupOutput {
        group: g.label().into(),
        order: g.order(),
        abelian: g.is_abelian(),
        exponent: g.exponent(),
        generators: g.generators(),
        element_orders: g.elements().map(|x| g.element_order(x)).collect(),
        class_count: crate::chartable::conjugacy_classes(g).len(),
        generalized_dicyclic: is_generalized_dicyclic(g).is_some(),
    }
}

fn classify_output(g: &FiniteGroup, v: &ClassificationVerdict) -> ClassifyOutput {
    ClassifyOutput {
        group: g.label().into(),
        mode: v.problem.name().into(),
        realizable: v.realizable,
        matches: v
            .all_matches
            .iter()
            .map(|m| CaseOutput {
                case: m.case.into(),
                tag: m.tag.clone(),
                evidence: m.evidence.clone(),
                witness: m.witness.as_ref().map(|w| WitnessOutput { n: w.n.elements().to_vec(), z: w.z }),
            })
            .collect(),
        notes: v.notes.clone(),
    }
}

fn character_of(job: &JobSpec, t: &CharacterTable, spec: &GroupSpec) -> Result<Character, JobError> {
    let text = job.character.as_deref().ok_or_else(|| input("character", "--char is required"))?;
    parse_character_input(t, spec, text)
}

/// Three input forms:
/// a JSON array of integers is a multiplicity vector over the table's
/// irreducibles; a JSON array containing strings or objects is a list of
/// per-class values in the cyclotomic encoding; anything else is a
/// character expression.
fn parse_character_input(t: &CharacterTable, spec: &GroupSpec, text: &str) -> Result<Character, JobError> {
    let trimmed = text.trim();
    if trimmed.starts_with('[') {
        let v: Value = serde_json::from_str(trimmed).map_err(|e| input("character", e))?;
        let items = v.as_array().expect("starts with a bracket");
        let chi = if items.iter().all(Value::is_u64) {
            let mult: Vec<u64> = items.iter().map(|x| x.as_u64().unwrap()).collect();
            if mult.len() != t.irreducibles().len() {
                return Err(input(
                    "character",
                    format!("{} multiplicities for {} irreducibles", mult.len(), t.irreducibles().len()),
                ));
            }
            t.combine(&mult).map_err(|e| input("character", e))?
        } else {
            let chi = decode_character(&v, "")?;
            if chi.values().len() != t.classes().len() {
                return Err(input("character", format!("{} values for {} classes", chi.values().len(), t.classes().len())));
            }
            chi
        };
        return t.adopt(&chi).map_err(|e| input("character", e));
    }
    CharEvaluator::new(t, Some(spec.clone())).parse(trimmed).map_err(|e| input("character", e))
}

fn representation(job: &JobSpec, t: &CharacterTable, spec: &GroupSpec) -> Result<RationalRepresentation, JobError> {
    let g = t.group();
    match job.rep.as_ref().unwrap_or(&RepSource::Regular) {
        RepSource::Regular => Ok(regular_representation(g)),
        RepSource::Ideal(text) => {
            let gamma = parse_character_input(t, spec, text)?;
            Ok(ideal_component_rep(t, &gamma)?)
        }
        RepSource::Document(v) => {
            let rep = decode_representation(v)?;
            if rep.group() != g {
                return Err(JobError::Input {
                    kind: "schema",
                    message: format!("representation of {} given for {}", rep.group().label(), g.label()),
                    pointer: Some("/group".into()),
                });
            }
            Ok(rep)
        }
    }
}
