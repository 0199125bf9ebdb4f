//! Backward search for certificates of the symmetric Auslander condition.
//!
//! Each rule reduces a goal ring to premises (checked by computation or taken
//! from user assertions) and sub-goals. Verdicts are `Certified` or `Unknown`;
//! nothing is ever refuted.

mod citation;
mod descriptor;
mod premise;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::MonomialAlgebra;
use crate::field::PrimeField;
use crate::ideal::{enumerate_ulrich_ideals, SemigroupIdeal};
use crate::semigroup::NumericalSemigroup;

pub use citation::{cite, is_known as is_known_citation, Citation, Source, TABLE as CITATION_TABLE};
pub use descriptor::RingDescriptor;
pub use premise::{verify_premise, Premise, PremiseCheck, PremiseStatus};

pub const SCHEMA_VERSION: &str = "cert-v1";

/// Apéry sets larger than this are not searched for Ulrich ideals.
const MAX_ULRICH_SEARCH: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertifyError {
    #[error("malformed descriptor: {0}")]
    MalformedDescriptor(String),
    #[error("unknown premise kind {0:?}")]
    UnknownPremiseKind(String),
    #[error("malformed premise: {0}")]
    MalformedPremise(String),
    #[error("malformed assumption: {0}")]
    MalformedAssumption(String),
    #[error("unknown rule {0:?}")]
    UnknownRule(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rule {
    #[serde(rename = "R-CI")]
    Ci,
    #[serde(rename = "R-MODX")]
    ModX,
    #[serde(rename = "R-POW")]
    Pow,
    #[serde(rename = "R-ULCI")]
    UlCi,
    #[serde(rename = "R-MIN")]
    Min,
    #[serde(rename = "R-RAD3")]
    Rad3,
    #[serde(rename = "R-GLUE")]
    Glue,
    #[serde(rename = "R-QPOW")]
    QPow,
    #[serde(rename = "R-UPOW")]
    UPow,
    #[serde(rename = "R-FFD")]
    Ffd,
    #[serde(rename = "ASSUMED")]
    Assumed,
}

impl Rule {
    pub const ALL: [Rule; 11] = [
        Rule::Ci,
        Rule::ModX,
        Rule::Pow,
        Rule::UlCi,
        Rule::Min,
        Rule::Rad3,
        Rule::Glue,
        Rule::QPow,
        Rule::UPow,
        Rule::Ffd,
        Rule::Assumed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Ci => "R-CI",
            Rule::ModX => "R-MODX",
            Rule::Pow => "R-POW",
            Rule::UlCi => "R-ULCI",
            Rule::Min => "R-MIN",
            Rule::Rad3 => "R-RAD3",
            Rule::Glue => "R-GLUE",
            Rule::QPow => "R-QPOW",
            Rule::UPow => "R-UPOW",
            Rule::Ffd => "R-FFD",
            Rule::Assumed => "ASSUMED",
        }
    }

    fn source(self) -> Source {
        match self {
            Rule::Ci => Source::CompleteIntersection,
            Rule::ModX => Source::NonZeroDivisor,
            Rule::Pow => Source::PowerSeries,
            Rule::UlCi => Source::UlrichQuotientCI,
            Rule::Min => Source::MinimalMultiplicityExample,
            Rule::Rad3 => Source::RadicalCubeZeroExample,
            Rule::Glue => Source::Gluing,
            Rule::QPow => Source::ParameterPowers,
            Rule::UPow => Source::UlrichPowersUp,
            Rule::Ffd => Source::FiniteFlatCover,
            Rule::Assumed => Source::ConditionMeaning,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = CertifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_uppercase();
        let t = t.strip_prefix("R-").unwrap_or(&t);
        Rule::ALL
            .into_iter()
            .find(|r| r.name().trim_start_matches("R-") == t)
            .ok_or_else(|| CertifyError::UnknownRule(s.to_string()))
    }
}

/// A fact supplied by the user instead of computed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Assumption {
    Sac(RingDescriptor),
    Gorenstein(RingDescriptor),
    Dim(RingDescriptor, u64),
}

impl fmt::Display for Assumption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Assumption::Sac(r) => write!(f, "sac({r})"),
            Assumption::Gorenstein(r) => write!(f, "gorenstein({r})"),
            Assumption::Dim(r, d) => write!(f, "dim({r},{d})"),
        }
    }
}

impl FromStr for Assumption {
    type Err = CertifyError;

    /// `sac(X)`, `gorenstein(X)` or `dim(X,d)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CertifyError::MalformedAssumption(s.to_string());
        let s = s.trim();
        let open = s.find('(').ok_or_else(bad)?;
        let body = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        match &s[..open] {
            "sac" => Ok(Assumption::Sac(body.parse()?)),
            "gorenstein" => Ok(Assumption::Gorenstein(body.parse()?)),
            "dim" => {
                let (ring, d) = body.rsplit_once(',').ok_or_else(bad)?;
                Ok(Assumption::Dim(ring.parse()?, d.trim().parse().map_err(|_| bad())?))
            }
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifyOptions {
    pub depth_bound: usize,
    pub assumptions: BTreeSet<Assumption>,
    /// Restrict the root goal to a single rule.
    pub root_rule: Option<Rule>,
    pub disabled: BTreeSet<Rule>,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            depth_bound: 8,
            assumptions: BTreeSet::new(),
            root_rule: None,
            disabled: BTreeSet::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Certified,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PremiseRecord {
    pub statement: String,
    pub status: PremiseStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evidence: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub citation: Option<Citation>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub rule: String,
    pub outcome: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: String,
    pub goal: String,
    pub verdict: Verdict,
    pub rule: Option<String>,
    pub citation: Option<Citation>,
    pub premises: Vec<PremiseRecord>,
    pub children: Vec<Certificate>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<TraceEntry>,
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }

    /// Rules used anywhere in the tree, in pre-order.
    pub fn rules(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.walk(&mut |c| out.extend(c.rule.clone()));
        out
    }

    /// Locators cited anywhere in the tree, including premise citations.
    pub fn cited_locators(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.walk(&mut |c| {
            out.extend(c.citation.iter().map(|x| x.locator.clone()));
            out.extend(c.premises.iter().filter_map(|p| p.citation.as_ref()).map(|x| x.locator.clone()));
        });
        out
    }

    fn walk(&self, f: &mut impl FnMut(&Certificate)) {
        f(self);
        for c in &self.children {
            c.walk(f);
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

/// Structural validation of a certificate in JSON form against `cert-v1`.
/// Returns the list of violations.
pub fn validate_certificate_json(v: &Value) -> Vec<String> {
    let mut errors = Vec::new();
    validate_node(v, "$", &mut errors);
    errors
}

fn validate_node(v: &Value, path: &str, errors: &mut Vec<String>) {
    let Some(obj) = v.as_object() else {
        errors.push(format!("{path}: not an object"));
        return;
    };
    let allowed = ["schema", "goal", "verdict", "rule", "citation", "premises", "children", "trace"];
    for k in obj.keys() {
        if !allowed.contains(&k.as_str()) {
            errors.push(format!("{path}: unexpected field {k:?}"));
        }
    }
    if obj.get("schema").and_then(Value::as_str) != Some(SCHEMA_VERSION) {
        errors.push(format!("{path}.schema: expected {SCHEMA_VERSION:?}"));
    }
    match obj.get("goal").and_then(Value::as_str) {
        Some(g) if g.parse::<RingDescriptor>().is_ok() => {}
        _ => errors.push(format!("{path}.goal: not a ring descriptor")),
    }
    let verdict = obj.get("verdict").and_then(Value::as_str);
    let certified = match verdict {
        Some("Certified") => true,
        Some("Unknown") => false,
        _ => {
            errors.push(format!("{path}.verdict: expected Certified or Unknown"));
            false
        }
    };
    match obj.get("rule") {
        Some(Value::String(r)) if r.parse::<Rule>().is_ok() => {}
        Some(Value::Null) if !certified => {}
        _ => errors.push(format!("{path}.rule: missing or unknown")),
    }
    match obj.get("citation") {
        Some(Value::Null) if !certified => {}
        Some(c) => validate_citation(c, &format!("{path}.citation"), errors),
        None => errors.push(format!("{path}.citation: missing")),
    }
    match obj.get("premises").and_then(Value::as_array) {
        Some(ps) => {
            for (i, p) in ps.iter().enumerate() {
                validate_premise(p, &format!("{path}.premises[{i}]"), errors);
            }
        }
        None => errors.push(format!("{path}.premises: expected an array")),
    }
    match obj.get("children").and_then(Value::as_array) {
        Some(cs) => {
            for (i, c) in cs.iter().enumerate() {
                let p = format!("{path}.children[{i}]");
                if certified && c.get("verdict").and_then(Value::as_str) != Some("Certified") {
                    errors.push(format!("{p}: child of a certified node is not certified"));
                }
                validate_node(c, &p, errors);
            }
        }
        None => errors.push(format!("{path}.children: expected an array")),
    }
    if let Some(t) = obj.get("trace") {
        let ok = t.as_array().is_some_and(|a| {
            a.iter()
                .all(|e| e.get("rule").is_some_and(Value::is_string) && e.get("outcome").is_some_and(Value::is_string))
        });
        if !ok {
            errors.push(format!("{path}.trace: malformed"));
        }
    }
}

fn validate_citation(c: &Value, path: &str, errors: &mut Vec<String>) {
    match serde_json::from_value::<Citation>(c.clone()) {
        Ok(cit) if citation::is_known(&cit) => {}
        Ok(_) => errors.push(format!("{path}: not in the citation table")),
        Err(_) => errors.push(format!("{path}: expected {{where, quote}}")),
    }
}

fn validate_premise(p: &Value, path: &str, errors: &mut Vec<String>) {
    let Some(obj) = p.as_object() else {
        errors.push(format!("{path}: not an object"));
        return;
    };
    for k in obj.keys() {
        if !["statement", "status", "evidence", "citation"].contains(&k.as_str()) {
            errors.push(format!("{path}: unexpected field {k:?}"));
        }
    }
    if !obj.get("statement").is_some_and(Value::is_string) {
        errors.push(format!("{path}.statement: expected a string"));
    }
    if serde_json::from_value::<PremiseStatus>(obj.get("status").cloned().unwrap_or(Value::Null)).is_err() {
        errors.push(format!("{path}.status: unknown"));
    }
    if let Some(c) = obj.get("citation") {
        validate_citation(c, &format!("{path}.citation"), errors);
    }
}

/// Searches for a certificate that `goal` satisfies the symmetric Auslander
/// condition.
pub fn certify(goal: &RingDescriptor, options: &CertifyOptions) -> Certificate {
    let mut engine = Engine {
        options,
        memo: HashMap::new(),
        in_progress: HashSet::new(),
    };
    engine.solve(goal, 0)
}

struct Engine<'a> {
    options: &'a CertifyOptions,
    memo: HashMap<RingDescriptor, Certificate>,
    in_progress: HashSet<RingDescriptor>,
}

/// Outcome of trying one rule.
type Attempt = Result<Certificate, String>;

struct Builder {
    rule: Rule,
    goal: String,
    premises: Vec<PremiseRecord>,
    children: Vec<Certificate>,
}

impl Builder {
    fn new(rule: Rule, goal: &RingDescriptor) -> Self {
        Builder {
            rule,
            goal: goal.to_string(),
            premises: Vec::new(),
            children: Vec::new(),
        }
    }

    /// Runs a premise check and records it; fails the rule if it does not hold.
    fn check(&mut self, p: Premise) -> Result<Value, String> {
        self.check_cited(p, None)
    }

    fn check_cited(&mut self, p: Premise, citation: Option<Source>) -> Result<Value, String> {
        let c = verify_premise(&p);
        if !c.holds {
            return Err(format!("premise failed: {p} {}", c.evidence));
        }
        self.premises.push(PremiseRecord {
            statement: p.to_string(),
            status: c.status,
            evidence: Some(c.evidence.clone()),
            citation: citation.map(cite),
        });
        Ok(c.evidence)
    }

    fn record(&mut self, statement: String, status: PremiseStatus, evidence: Option<Value>, citation: Option<Source>) {
        self.premises.push(PremiseRecord {
            statement,
            status,
            evidence,
            citation: citation.map(cite),
        });
    }

    fn child(&mut self, c: Certificate) -> Result<(), String> {
        if c.is_certified() {
            self.children.push(c);
            Ok(())
        } else {
            Err(format!("sub-goal not certified: {}", c.goal))
        }
    }

    fn finish(self) -> Certificate {
        Certificate {
            schema: SCHEMA_VERSION.to_string(),
            goal: self.goal,
            verdict: Verdict::Certified,
            rule: Some(self.rule.name().to_string()),
            citation: Some(cite(self.rule.source())),
            premises: self.premises,
            children: self.children,
            trace: Vec::new(),
        }
    }
}

fn quotient_algebra(h: &NumericalSemigroup, ideal: &SemigroupIdeal) -> Option<MonomialAlgebra<PrimeField>> {
    MonomialAlgebra::quotient(PrimeField::default(), ideal)
        .ok()
        .filter(|_| ideal.ambient() == h)
}

impl Engine<'_> {
    fn solve(&mut self, goal: &RingDescriptor, depth: usize) -> Certificate {
        if let Some(c) = self.memo.get(goal) {
            return c.clone();
        }
        let unknown = |trace: Vec<TraceEntry>| Certificate {
            schema: SCHEMA_VERSION.to_string(),
            goal: goal.to_string(),
            verdict: Verdict::Unknown,
            rule: None,
            citation: None,
            premises: Vec::new(),
            children: Vec::new(),
            trace,
        };
        if depth > self.options.depth_bound {
            return unknown(vec![TraceEntry {
                rule: "-".into(),
                outcome: format!("depth bound {} reached", self.options.depth_bound),
            }]);
        }
        if !self.in_progress.insert(goal.clone()) {
            return unknown(vec![TraceEntry {
                rule: "-".into(),
                outcome: "goal already under consideration".into(),
            }]);
        }
        let mut rules = self.rules_for(goal);
        if depth == 0 {
            if let Some(r) = self.options.root_rule {
                rules.retain(|x| *x == r);
            }
        }
        let mut trace = Vec::new();
        let mut result = None;
        for rule in rules {
            if self.options.disabled.contains(&rule) {
                trace.push(TraceEntry {
                    rule: rule.name().into(),
                    outcome: "disabled".into(),
                });
                continue;
            }
            match self.apply(rule, goal, depth) {
                Ok(c) => {
                    result = Some(c);
                    break;
                }
                Err(why) => trace.push(TraceEntry {
                    rule: rule.name().into(),
                    outcome: why,
                }),
            }
        }
        self.in_progress.remove(goal);
        match result {
            Some(c) => {
                self.memo.insert(goal.clone(), c.clone());
                c
            }
            None => unknown(trace),
        }
    }

    fn rules_for(&self, goal: &RingDescriptor) -> Vec<Rule> {
        use RingDescriptor as D;
        let mut rules = match goal {
            D::SemigroupRing(_) => vec![Rule::Min, Rule::ModX, Rule::UlCi, Rule::Glue, Rule::UPow],
            D::Truncation(..) => vec![Rule::Ci, Rule::Rad3, Rule::ModX],
            D::Glued { .. } => vec![Rule::Glue],
            D::PowerSeriesExt(_) => vec![Rule::Pow],
            D::ParameterPowerQuotient { .. } => vec![Rule::QPow],
            D::UlrichPowerQuotient { .. } => vec![Rule::Ci, Rule::UPow],
            D::AbstractCI(_) => vec![Rule::Ci],
            D::AbstractWithFiniteFlatCover { .. } => vec![Rule::Ffd],
            D::Opaque(_) => vec![],
        };
        rules.push(Rule::Assumed);
        rules
    }

    fn assumed_dim(&self, r: &RingDescriptor) -> Option<u64> {
        self.options.assumptions.iter().find_map(|a| match a {
            Assumption::Dim(x, d) if x == r => Some(*d),
            _ => None,
        })
    }

    fn assumed(&self, a: &Assumption) -> bool {
        self.options.assumptions.contains(a)
    }

    fn apply(&mut self, rule: Rule, goal: &RingDescriptor, depth: usize) -> Attempt {
        use RingDescriptor as D;
        let mut b = Builder::new(rule, goal);
        match (rule, goal) {
            (Rule::Assumed, _) => {
                let a = Assumption::Sac(goal.clone());
                if !self.assumed(&a) {
                    return Err("no assumption".into());
                }
                b.record(a.to_string(), PremiseStatus::Asserted, None, None);
            }
            (Rule::Ci, D::AbstractCI(label)) => {
                b.record(
                    format!("{label} is a complete intersection"),
                    PremiseStatus::Asserted,
                    None,
                    None,
                );
            }
            (Rule::Ci, D::Truncation(h, q)) => {
                let ideal = SemigroupIdeal::principal(h, *q).map_err(|e| e.to_string())?;
                b.check(Premise::EmbDimAtMost1 {
                    h: h.clone(),
                    ideal: ideal.generators().to_vec(),
                })?;
            }
            (Rule::Ci, D::UlrichPowerQuotient { inner, ideal, power }) => {
                let h = inner.as_semigroup().ok_or("inner ring is not a semigroup ring")?;
                let i = SemigroupIdeal::new(&h, ideal).map_err(|e| e.to_string())?;
                let p = i.power(*power as u32).map_err(|e| e.to_string())?;
                b.check(Premise::EmbDimAtMost1 {
                    h,
                    ideal: p.generators().to_vec(),
                })?;
            }
            (Rule::Min, D::SemigroupRing(h)) => {
                b.check_cited(Premise::MinMult(h.clone()), Some(Source::MaximalIdealUlrich))?;
                let m = SemigroupIdeal::maximal(h);
                let c = self.ulci_with(goal, h, &m, h.multiplicity())?;
                b.child(c)?;
            }
            (Rule::ModX, D::SemigroupRing(h)) => {
                let mut why = Vec::new();
                for &q in h.generators() {
                    let child = D::Truncation(h.clone(), q);
                    let c = self.solve(&child, depth + 1);
                    if c.is_certified() {
                        b.check(Premise::NonZeroDivisor { h: h.clone(), q })?;
                        b.child(c)?;
                        return Ok(b.finish());
                    }
                    why.push(format!("q={q}: sub-goal {child} not certified"));
                }
                return Err(if why.is_empty() { "no candidate".into() } else { why.join("; ") });
            }
            (Rule::ModX, D::Truncation(h, q)) => {
                b.check(Premise::NonZeroDivisor { h: h.clone(), q: *q })?;
                let c = self.solve(&D::SemigroupRing(h.clone()), depth + 1);
                b.child(c)?;
            }
            (Rule::Rad3, D::Truncation(h, q)) => {
                b.check(Premise::RadicalIndexAtMost3 { h: h.clone(), q: *q })?;
                b.record(
                    "Artinian local rings with radical cube zero satisfy (SAC)".into(),
                    PremiseStatus::AssertedExternal,
                    None,
                    Some(Source::RadicalCubeZeroExternal),
                );
            }
            (Rule::UlCi, D::SemigroupRing(h)) => {
                let mut why = Vec::new();
                for (i, q) in self.ulrich_candidates(h) {
                    match self.ulci_with(goal, h, &i, q) {
                        Ok(c) => return Ok(c),
                        Err(e) => why.push(e),
                    }
                }
                return Err(if why.is_empty() {
                    "no Ulrich ideal found".into()
                } else {
                    format!("no Ulrich ideal with complete intersection quotient ({} tried)", why.len())
                });
            }
            (Rule::Glue, D::Glued { inner, n, m }) => {
                b.check(Premise::GluePreconditions {
                    h: inner.clone(),
                    n: *n,
                    m: *m,
                    target: None,
                })?;
                let c = self.solve(&D::SemigroupRing(inner.clone()), depth + 1);
                b.child(c)?;
            }
            (Rule::Glue, D::SemigroupRing(h)) => {
                let mut why = Vec::new();
                for (a, n, m) in h.gluing_decompositions() {
                    let child = D::SemigroupRing(a.clone());
                    let c = self.solve(&child, depth + 1);
                    if c.is_certified() {
                        b.check(Premise::GluePreconditions {
                            h: a,
                            n,
                            m,
                            target: Some(h.clone()),
                        })?;
                        b.child(c)?;
                        return Ok(b.finish());
                    }
                    why.push(format!("{child} with n={n}, m={m} not certified"));
                }
                return Err(if why.is_empty() { "no gluing decomposition".into() } else { why.join("; ") });
            }
            (Rule::UPow, D::SemigroupRing(h)) => {
                let mut why = Vec::new();
                for (i, q) in self.ulrich_candidates(h) {
                    let ideal = i.generators().to_vec();
                    let premises = [
                        Premise::Ulrich { h: h.clone(), ideal: ideal.clone(), q },
                        Premise::QuotientGorenstein { h: h.clone(), ideal: ideal.clone() },
                        Premise::MuExceedsDimByTwo { h: h.clone(), ideal: ideal.clone() },
                    ];
                    if premises.iter().any(|p| !verify_premise(p).holds) {
                        continue;
                    }
                    let child = D::UlrichPowerQuotient {
                        inner: Box::new(goal.clone()),
                        ideal,
                        power: 1,
                    };
                    let c = self.solve(&child, depth + 1);
                    if c.is_certified() {
                        for p in premises {
                            b.check(p)?;
                        }
                        b.child(c)?;
                        return Ok(b.finish());
                    }
                    why.push(format!("sub-goal {child} not certified"));
                }
                return Err(if why.is_empty() { "no suitable Ulrich ideal".into() } else { why.join("; ") });
            }
            (Rule::UPow, D::UlrichPowerQuotient { inner, ideal, power }) => {
                let dim = match inner.as_semigroup() {
                    Some(_) => 1,
                    None => self.assumed_dim(inner).ok_or("dimension of inner ring unknown")?,
                };
                if dim < 2 || *power < 2 || *power > dim {
                    return Err(format!("needs dim >= 2 and 2 <= l <= dim (dim = {dim}, l = {power})"));
                }
                b.record(
                    Assumption::Dim((**inner).clone(), dim).to_string(),
                    PremiseStatus::Asserted,
                    None,
                    None,
                );
                let base = D::UlrichPowerQuotient {
                    inner: inner.clone(),
                    ideal: ideal.clone(),
                    power: 1,
                };
                let gor = Assumption::Gorenstein(base.clone());
                if !self.assumed(&gor) {
                    return Err(format!("needs assumption {gor}"));
                }
                b.record(gor.to_string(), PremiseStatus::Asserted, None, None);
                b.record(
                    format!("ideal({}) is an Ulrich ideal of {inner}", crate::semigroup::join(ideal)),
                    PremiseStatus::Asserted,
                    None,
                    Some(Source::UlrichPowersDown),
                );
                let c = self.solve(&base, depth + 1);
                b.child(c)?;
            }
            (Rule::Pow, D::PowerSeriesExt(inner)) => {
                let c = self.solve(inner, depth + 1);
                b.child(c)?;
            }
            (Rule::QPow, D::ParameterPowerQuotient { inner, power, regseq }) => {
                match inner.as_semigroup() {
                    Some(h) => {
                        b.check(Premise::GapSymmetric(h))?;
                    }
                    None => {
                        let gor = Assumption::Gorenstein((**inner).clone());
                        if !self.assumed(&gor) {
                            return Err(format!("needs assumption {gor}"));
                        }
                        b.record(gor.to_string(), PremiseStatus::Asserted, None, None);
                    }
                }
                if *power < 1 || power > regseq {
                    return Err(format!("needs 1 <= l <= n (l = {power}, n = {regseq})"));
                }
                let dim = match inner.as_semigroup() {
                    Some(_) => Some(1),
                    None => self.assumed_dim(inner),
                };
                match dim {
                    Some(d) if *regseq <= d => {
                        let status = if inner.as_semigroup().is_some() {
                            PremiseStatus::Verified
                        } else {
                            PremiseStatus::Asserted
                        };
                        b.record(
                            format!("a regular sequence of length {regseq} exists in {inner}"),
                            status,
                            Some(json!({ "dim": d, "length": regseq, "power": power })),
                            None,
                        );
                    }
                    Some(d) => return Err(format!("regular sequence of length {regseq} exceeds dim {d}")),
                    None => return Err("dimension of inner ring unknown".into()),
                }
                let c = self.solve(inner, depth + 1);
                b.child(c)?;
            }
            (Rule::Ffd, D::AbstractWithFiniteFlatCover { inner, cover }) => {
                b.record(
                    format!("{inner} -> {cover} is a local homomorphism of finite flat dimension"),
                    PremiseStatus::Asserted,
                    None,
                    None,
                );
                let c = self.solve(cover, depth + 1);
                b.child(c)?;
            }
            _ => return Err("not applicable".into()),
        }
        Ok(b.finish())
    }

    /// Ulrich ideals `I` with `min I = q` for the minimal generators `q`,
    /// ordered by colength and then by generators.
    fn ulrich_candidates(&self, h: &NumericalSemigroup) -> Vec<(SemigroupIdeal, u64)> {
        let mut out = Vec::new();
        for &q in h.generators() {
            if q as usize > MAX_ULRICH_SEARCH {
                break;
            }
            if let Ok(found) = enumerate_ulrich_ideals(h, q) {
                out.extend(found.into_iter().map(|(i, r)| (r.colength, i, q)));
            }
        }
        out.sort_by(|a, b| (a.0, a.1.generators(), a.2).cmp(&(b.0, b.1.generators(), b.2)));
        out.into_iter().map(|(_, i, q)| (i, q)).collect()
    }

    /// R-ULCI for a specific ideal.
    fn ulci_with(&self, goal: &RingDescriptor, h: &NumericalSemigroup, i: &SemigroupIdeal, q: u64) -> Attempt {
        let mut b = Builder::new(Rule::UlCi, goal);
        let ideal = i.generators().to_vec();
        b.check(Premise::Ulrich {
            h: h.clone(),
            ideal: ideal.clone(),
            q,
        })?;
        let colength = Premise::ColengthAtMost2 {
            h: h.clone(),
            ideal: ideal.clone(),
        };
        if verify_premise(&colength).holds {
            b.check(colength)?;
        } else {
            let alg = quotient_algebra(h, i).ok_or("quotient is not finite-dimensional")?;
            if alg.embedding_dim() > 1 {
                return Err(format!(
                    "R/I for I=({}) has embedding dimension {}",
                    crate::semigroup::join(&ideal),
                    alg.embedding_dim()
                ));
            }
            b.check(Premise::EmbDimAtMost1 { h: h.clone(), ideal })?;
        }
        Ok(b.finish())
    }
}
