//! Ring descriptors and their textual grammar.
//!
//! ```text
//! ring  := sgp(a,b,...) | trunc(sgp(...),q) | glued(sgp(...),n,m)
//!        | powser(ring) | qpow(ring,l,n) | upow(ring,ideal(g,...),l)
//!        | ci(label) | abstract(label) | ffcover(ring,ring)
//! label := [A-Za-z0-9_.-]+
//! ```
//! Whitespace between tokens is ignored. Every descriptor prints back in this
//! form.

use std::fmt;
use std::str::FromStr;

use crate::semigroup::{join, NumericalSemigroup};

use super::CertifyError;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingDescriptor {
    /// `k[[H]]`.
    SemigroupRing(NumericalSemigroup),
    /// `k[H]/(t^q)`.
    Truncation(NumericalSemigroup, u64),
    /// `k[[nH + <m>]]`.
    Glued {
        inner: NumericalSemigroup,
        n: u64,
        m: u64,
    },
    /// `R[[T]]`.
    PowerSeriesExt(Box<RingDescriptor>),
    /// `R/Q^l` with `Q` generated by a regular sequence of length `n`.
    ParameterPowerQuotient {
        inner: Box<RingDescriptor>,
        power: u64,
        regseq: u64,
    },
    /// `R/I^l` for an ideal `I` given by monomial degrees.
    UlrichPowerQuotient {
        inner: Box<RingDescriptor>,
        ideal: Vec<u64>,
        power: u64,
    },
    /// A ring declared to be a complete intersection.
    AbstractCI(String),
    /// `R` together with a local homomorphism `R -> S` of finite flat dimension.
    AbstractWithFiniteFlatCover {
        inner: Box<RingDescriptor>,
        cover: Box<RingDescriptor>,
    },
    /// A ring about which nothing is known.
    Opaque(String),
}

impl RingDescriptor {
    pub fn sgp(gens: &[u64]) -> Result<Self, CertifyError> {
        NumericalSemigroup::from_generators(gens)
            .map(RingDescriptor::SemigroupRing)
            .map_err(|e| CertifyError::MalformedDescriptor(e.to_string()))
    }

    /// The semigroup when this is `SemigroupRing` or an equivalent `Glued`.
    pub fn as_semigroup(&self) -> Option<NumericalSemigroup> {
        match self {
            RingDescriptor::SemigroupRing(h) => Some(h.clone()),
            RingDescriptor::Glued { inner, n, m } => inner.glue(*n, *m).ok(),
            _ => None,
        }
    }

    /// Number of nodes in the descriptor tree.
    pub fn size(&self) -> usize {
        match self {
            RingDescriptor::PowerSeriesExt(x) => 1 + x.size(),
            RingDescriptor::ParameterPowerQuotient { inner, .. }
            | RingDescriptor::UlrichPowerQuotient { inner, .. } => 1 + inner.size(),
            RingDescriptor::AbstractWithFiniteFlatCover { inner, cover } => {
                1 + inner.size() + cover.size()
            }
            _ => 1,
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::SemigroupRing(h) => write!(f, "sgp({h})"),
            RingDescriptor::Truncation(h, q) => write!(f, "trunc(sgp({h}),{q})"),
            RingDescriptor::Glued { inner, n, m } => write!(f, "glued(sgp({inner}),{n},{m})"),
            RingDescriptor::PowerSeriesExt(x) => write!(f, "powser({x})"),
            RingDescriptor::ParameterPowerQuotient { inner, power, regseq } => {
                write!(f, "qpow({inner},{power},{regseq})")
            }
            RingDescriptor::UlrichPowerQuotient { inner, ideal, power } => {
                write!(f, "upow({inner},ideal({}),{power})", join(ideal))
            }
            RingDescriptor::AbstractCI(l) => write!(f, "ci({l})"),
            RingDescriptor::AbstractWithFiniteFlatCover { inner, cover } => {
                write!(f, "ffcover({inner},{cover})")
            }
            RingDescriptor::Opaque(l) => write!(f, "abstract({l})"),
        }
    }
}

impl FromStr for RingDescriptor {
    type Err = CertifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser::new(s);
        let d = p.ring()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(d)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn error(&self, what: &str) -> CertifyError {
        CertifyError::MalformedDescriptor(format!("{what} at offset {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<(), CertifyError> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn word(&mut self) -> Result<&'a str, CertifyError> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || "_.-".contains(c)))
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.error("expected a name"));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn number(&mut self) -> Result<u64, CertifyError> {
        let w = self.word()?;
        w.parse().map_err(|_| self.error(&format!("expected a number, found {w:?}")))
    }

    fn numbers(&mut self) -> Result<Vec<u64>, CertifyError> {
        let mut out = vec![self.number()?];
        while self.peek() == Some(',') {
            self.pos += 1;
            out.push(self.number()?);
        }
        Ok(out)
    }

    fn semigroup(&mut self) -> Result<NumericalSemigroup, CertifyError> {
        if self.word()? != "sgp" {
            return Err(self.error("expected sgp(...)"));
        }
        self.expect('(')?;
        let gens = self.numbers()?;
        self.expect(')')?;
        NumericalSemigroup::from_generators(&gens)
            .map_err(|e| CertifyError::MalformedDescriptor(e.to_string()))
    }

    fn ring(&mut self) -> Result<RingDescriptor, CertifyError> {
        let start = self.pos;
        let head = self.word()?;
        if head == "sgp" {
            self.pos = start;
            return Ok(RingDescriptor::SemigroupRing(self.semigroup()?));
        }
        self.expect('(')?;
        let d = match head {
            "trunc" => {
                let h = self.semigroup()?;
                self.expect(',')?;
                let q = self.number()?;
                if q == 0 || !h.contains(q as i64) {
                    return Err(CertifyError::MalformedDescriptor(format!(
                        "truncation degree {q} is not a positive member of <{h}>"
                    )));
                }
                RingDescriptor::Truncation(h, q)
            }
            "glued" => {
                let h = self.semigroup()?;
                self.expect(',')?;
                let n = self.number()?;
                self.expect(',')?;
                let m = self.number()?;
                h.glue(n, m)
                    .map_err(|e| CertifyError::MalformedDescriptor(e.to_string()))?;
                RingDescriptor::Glued { inner: h, n, m }
            }
            "powser" => RingDescriptor::PowerSeriesExt(Box::new(self.ring()?)),
            "qpow" => {
                let inner = Box::new(self.ring()?);
                self.expect(',')?;
                let power = self.number()?;
                self.expect(',')?;
                let regseq = self.number()?;
                if power == 0 || regseq == 0 {
                    return Err(self.error("power and sequence length must be positive"));
                }
                RingDescriptor::ParameterPowerQuotient { inner, power, regseq }
            }
            "upow" => {
                let inner = Box::new(self.ring()?);
                self.expect(',')?;
                if self.word()? != "ideal" {
                    return Err(self.error("expected ideal(...)"));
                }
                self.expect('(')?;
                let mut ideal = self.numbers()?;
                self.expect(')')?;
                self.expect(',')?;
                let power = self.number()?;
                if power == 0 {
                    return Err(self.error("power must be positive"));
                }
                ideal.sort_unstable();
                ideal.dedup();
                if let Some(h) = inner.as_semigroup() {
                    let member = |g: &u64| *g > 0 && h.contains(*g as i64);
                    if !ideal.iter().all(member) {
                        return Err(CertifyError::MalformedDescriptor(format!(
                            "ideal degrees must be positive members of <{h}>"
                        )));
                    }
                }
                RingDescriptor::UlrichPowerQuotient { inner, ideal, power }
            }
            "ci" => RingDescriptor::AbstractCI(self.word()?.to_string()),
            "abstract" => RingDescriptor::Opaque(self.word()?.to_string()),
            "ffcover" => {
                let inner = Box::new(self.ring()?);
                self.expect(',')?;
                let cover = Box::new(self.ring()?);
                RingDescriptor::AbstractWithFiniteFlatCover { inner, cover }
            }
            other => return Err(self.error(&format!("unknown constructor {other:?}"))),
        };
        self.expect(')')?;
        Ok(d)
    }
}
