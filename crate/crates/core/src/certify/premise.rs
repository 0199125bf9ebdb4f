//! The closed vocabulary of machine-checkable premises.
//!
//! Statements print as `Kind(key=value; ...)` and parse back from that form.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::MonomialAlgebra;
use crate::field::PrimeField;
use crate::ideal::SemigroupIdeal;
use crate::semigroup::{join, parse_list, NumericalSemigroup};

use super::CertifyError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Premise {
    /// `I` is Ulrich with reduction `(t^q)`.
    Ulrich {
        h: NumericalSemigroup,
        ideal: Vec<u64>,
        q: u64,
    },
    MinMult(NumericalSemigroup),
    /// `k[H]/(t^q)` has radical index at most 3.
    RadicalIndexAtMost3 { h: NumericalSemigroup, q: u64 },
    /// `m` is a non-minimal member, `gcd(n, m) = 1`, and the result equals
    /// `target`.
    GluePreconditions {
        h: NumericalSemigroup,
        n: u64,
        m: u64,
        target: Option<NumericalSemigroup>,
    },
    GapSymmetric(NumericalSemigroup),
    /// `l(R/I) <= 2`.
    ColengthAtMost2 { h: NumericalSemigroup, ideal: Vec<u64> },
    /// `k[H]/E` has embedding dimension at most 1.
    EmbDimAtMost1 { h: NumericalSemigroup, ideal: Vec<u64> },
    /// `t^q` is a non-zerodivisor, i.e. `q` is a positive member.
    NonZeroDivisor { h: NumericalSemigroup, q: u64 },
    /// `k[H]/E` has a one-dimensional socle.
    QuotientGorenstein { h: NumericalSemigroup, ideal: Vec<u64> },
    /// `mu(I) - 1 > 1`.
    MuExceedsDimByTwo { h: NumericalSemigroup, ideal: Vec<u64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PremiseStatus {
    Verified,
    /// Computed, but by a criterion from outside the cited source.
    VerifiedExternal,
    Asserted,
    /// A theorem from outside the cited source, taken on trust.
    AssertedExternal,
}

/// Result of running a premise check.
#[derive(Debug, Clone, PartialEq)]
pub struct PremiseCheck {
    pub holds: bool,
    pub status: PremiseStatus,
    pub evidence: Value,
}

impl Premise {
    pub fn kind(&self) -> &'static str {
        match self {
            Premise::Ulrich { .. } => "Ulrich",
            Premise::MinMult(_) => "MinMult",
            Premise::RadicalIndexAtMost3 { .. } => "RadicalIndexAtMost3",
            Premise::GluePreconditions { .. } => "GluePreconditions",
            Premise::GapSymmetric(_) => "GapSymmetric",
            Premise::ColengthAtMost2 { .. } => "ColengthAtMost2",
            Premise::EmbDimAtMost1 { .. } => "EmbDimAtMost1",
            Premise::NonZeroDivisor { .. } => "NonZeroDivisor",
            Premise::QuotientGorenstein { .. } => "QuotientGorenstein",
            Premise::MuExceedsDimByTwo { .. } => "MuExceedsDimByTwo",
        }
    }

    fn fields(&self) -> Vec<(&'static str, String)> {
        let hs = |h: &NumericalSemigroup| h.to_string();
        match self {
            Premise::Ulrich { h, ideal, q } => {
                vec![("H", hs(h)), ("I", join(ideal)), ("q", q.to_string())]
            }
            Premise::MinMult(h) | Premise::GapSymmetric(h) => vec![("H", hs(h))],
            Premise::RadicalIndexAtMost3 { h, q } | Premise::NonZeroDivisor { h, q } => {
                vec![("H", hs(h)), ("q", q.to_string())]
            }
            Premise::GluePreconditions { h, n, m, target } => {
                let mut v = vec![("H", hs(h)), ("n", n.to_string()), ("m", m.to_string())];
                if let Some(t) = target {
                    v.push(("target", hs(t)));
                }
                v
            }
            Premise::ColengthAtMost2 { h, ideal }
            | Premise::EmbDimAtMost1 { h, ideal }
            | Premise::QuotientGorenstein { h, ideal }
            | Premise::MuExceedsDimByTwo { h, ideal } => vec![("H", hs(h)), ("I", join(ideal))],
        }
    }
}

impl fmt::Display for Premise {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self
            .fields()
            .into_iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        write!(f, "{}({})", self.kind(), body.join("; "))
    }
}

impl FromStr for Premise {
    type Err = CertifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CertifyError::MalformedPremise(s.to_string());
        let open = s.find('(').ok_or_else(bad)?;
        let kind = s[..open].trim();
        let body = s[open + 1..].trim_end().strip_suffix(')').ok_or_else(bad)?;
        let mut fields = BTreeMap::new();
        for part in body.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(bad)?;
            fields.insert(k.trim(), v.trim());
        }
        let get = |k: &str| fields.get(k).copied().ok_or_else(bad);
        let sgp = |k: &str| -> Result<NumericalSemigroup, CertifyError> {
            get(k)?.parse().map_err(|_| bad())
        };
        let num = |k: &str| -> Result<u64, CertifyError> { get(k)?.parse().map_err(|_| bad()) };
        let list = |k: &str| -> Result<Vec<u64>, CertifyError> { parse_list(get(k)?).map_err(|_| bad()) };
        Ok(match kind {
            "Ulrich" => Premise::Ulrich {
                h: sgp("H")?,
                ideal: list("I")?,
                q: num("q")?,
            },
            "MinMult" => Premise::MinMult(sgp("H")?),
            "GapSymmetric" => Premise::GapSymmetric(sgp("H")?),
            "RadicalIndexAtMost3" => Premise::RadicalIndexAtMost3 {
                h: sgp("H")?,
                q: num("q")?,
            },
            "NonZeroDivisor" => Premise::NonZeroDivisor {
                h: sgp("H")?,
                q: num("q")?,
            },
            "GluePreconditions" => Premise::GluePreconditions {
                h: sgp("H")?,
                n: num("n")?,
                m: num("m")?,
                target: if fields.contains_key("target") {
                    Some(sgp("target")?)
                } else {
                    None
                },
            },
            "ColengthAtMost2" => Premise::ColengthAtMost2 {
                h: sgp("H")?,
                ideal: list("I")?,
            },
            "EmbDimAtMost1" => Premise::EmbDimAtMost1 {
                h: sgp("H")?,
                ideal: list("I")?,
            },
            "QuotientGorenstein" => Premise::QuotientGorenstein {
                h: sgp("H")?,
                ideal: list("I")?,
            },
            "MuExceedsDimByTwo" => Premise::MuExceedsDimByTwo {
                h: sgp("H")?,
                ideal: list("I")?,
            },
            other => return Err(CertifyError::UnknownPremiseKind(other.to_string())),
        })
    }
}

fn ideal_of(h: &NumericalSemigroup, degs: &[u64]) -> Result<SemigroupIdeal, Value> {
    SemigroupIdeal::new(h, degs).map_err(|e| json!({ "error": e.to_string() }))
}

fn quotient(h: &NumericalSemigroup, degs: &[u64]) -> Result<MonomialAlgebra<PrimeField>, Value> {
    let i = ideal_of(h, degs)?;
    MonomialAlgebra::quotient(PrimeField::default(), &i).map_err(|e| json!({ "error": e.to_string() }))
}

/// Runs the computation behind a premise. The evidence records the raw
/// numbers that decided it.
pub fn verify_premise(p: &Premise) -> PremiseCheck {
    let mut status = PremiseStatus::Verified;
    let outcome: Result<(bool, Value), Value> = (|| match p {
        Premise::Ulrich { h, ideal, q } => {
            let i = ideal_of(h, ideal)?;
            let r = i.is_ulrich(*q).map_err(|e| json!({ "error": e.to_string() }))?;
            Ok((
                r.is_ulrich,
                json!({
                    "colength": r.colength,
                    "mu": r.mu,
                    "layer": r.layer_length,
                    "reduction": r.reduction_q.is_some(),
                    "free_rank": r.free_rank,
                }),
            ))
        }
        Premise::MinMult(h) => Ok((
            h.has_minimal_multiplicity(),
            json!({ "multiplicity": h.multiplicity(), "embedding_dim": h.embedding_dim() }),
        )),
        Premise::RadicalIndexAtMost3 { h, q } => {
            let a = MonomialAlgebra::truncation_default(h, *q)
                .map_err(|e| json!({ "error": e.to_string() }))?;
            let index = a.radical_index();
            Ok((index <= 3, json!({ "index": index })))
        }
        Premise::GluePreconditions { h, n, m, target } => match h.glue(*n, *m) {
            Ok(g) => {
                let matches = target.as_ref().is_none_or(|t| *t == g);
                Ok((
                    matches,
                    json!({
                        "gcd": num_integer::gcd(*n, *m),
                        "m_in_H": true,
                        "m_minimal_generator": false,
                        "glued": g.generators(),
                    }),
                ))
            }
            Err(e) => Ok((false, json!({ "error": e.to_string() }))),
        },
        Premise::GapSymmetric(h) => {
            status = PremiseStatus::VerifiedExternal;
            Ok((
                h.is_symmetric(),
                json!({ "frobenius": h.frobenius(), "genus": h.gaps().len() }),
            ))
        }
        Premise::ColengthAtMost2 { h, ideal } => {
            let c = ideal_of(h, ideal)?
                .colength()
                .map_err(|e| json!({ "error": e.to_string() }))?;
            Ok((c <= 2, json!({ "colength": c })))
        }
        Premise::EmbDimAtMost1 { h, ideal } => {
            let v = quotient(h, ideal)?.embedding_dim();
            Ok((v <= 1, json!({ "embedding_dim": v })))
        }
        Premise::NonZeroDivisor { h, q } => {
            let ok = *q > 0 && h.contains(*q as i64);
            Ok((ok, json!({ "q": q, "member": h.contains(*q as i64) })))
        }
        Premise::QuotientGorenstein { h, ideal } => {
            let s = quotient(h, ideal)?.socle().len();
            Ok((s == 1, json!({ "socle_dim": s })))
        }
        Premise::MuExceedsDimByTwo { h, ideal } => {
            let mu = ideal_of(h, ideal)?.mu();
            Ok((mu > 2, json!({ "mu": mu, "dim": 1 })))
        }
    })();
    let (holds, evidence) = match outcome {
        Ok(v) => v,
        Err(e) => (false, e),
    };
    PremiseCheck {
        holds,
        status,
        evidence,
    }
}
