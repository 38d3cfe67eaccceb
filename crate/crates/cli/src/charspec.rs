//! Textual character specifications and u-file parsing.
//!
//! Grammar: `theta | identity | vartheta:R | ashuffle:A | eval:R1,R2,... |
//! ufile:PATH` with rationals written `p/q` or as integers.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use qsw_core::composition::Composition;
use qsw_core::endo::Character;
use qsw_core::rational::Rational;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CharacterSpec {
    Theta,
    Identity,
    Vartheta(Rational),
    AShuffle(usize),
    Eval(Vec<Rational>),
    UFile(PathBuf),
}

/// Parse failure carrying the offending token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecError {
    pub token: String,
    pub expected: &'static str,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "bad character spec at {:?}: expected {} \
             (grammar: theta | identity | vartheta:R | ashuffle:A | eval:R1,R2,... | ufile:PATH)",
            self.token, self.expected
        )
    }
}

impl std::error::Error for SpecError {}

impl FromStr for CharacterSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, SpecError> {
        let (head, rest) = match s.split_once(':') {
            Some((h, r)) => (h, Some(r)),
            None => (s, None),
        };
        let no_arg = |spec: CharacterSpec| match rest {
            None => Ok(spec),
            Some(r) => Err(SpecError { token: r.to_string(), expected: "no argument" }),
        };
        match head {
            "theta" => no_arg(CharacterSpec::Theta),
            "identity" => no_arg(CharacterSpec::Identity),
            "vartheta" => {
                let r = rest.ok_or(SpecError { token: s.into(), expected: "vartheta:R" })?;
                let r = r
                    .parse()
                    .map_err(|_| SpecError { token: r.into(), expected: "a rational p/q" })?;
                Ok(CharacterSpec::Vartheta(r))
            }
            "ashuffle" => {
                let a = rest.ok_or(SpecError { token: s.into(), expected: "ashuffle:A" })?;
                let a: usize = a
                    .parse()
                    .map_err(|_| SpecError { token: a.into(), expected: "a positive integer" })?;
                if a == 0 {
                    return Err(SpecError { token: "0".into(), expected: "a positive integer" });
                }
                Ok(CharacterSpec::AShuffle(a))
            }
            "eval" => {
                let list = rest.ok_or(SpecError { token: s.into(), expected: "eval:R1,R2,..." })?;
                let mut rs = Vec::new();
                for tok in list.split(',') {
                    rs.push(tok.parse().map_err(|_| SpecError {
                        token: tok.into(),
                        expected: "a rational p/q",
                    })?);
                }
                Ok(CharacterSpec::Eval(rs))
            }
            "ufile" => {
                let path = rest.ok_or(SpecError { token: s.into(), expected: "ufile:PATH" })?;
                if path.is_empty() {
                    return Err(SpecError { token: s.into(), expected: "ufile:PATH" });
                }
                Ok(CharacterSpec::UFile(PathBuf::from(path)))
            }
            other => Err(SpecError { token: other.to_string(), expected: "a character kind" }),
        }
    }
}

impl CharacterSpec {
    /// Builds the character, reading the u-file from disk when needed.
    pub fn resolve(&self) -> anyhow::Result<Character> {
        Ok(match self {
            CharacterSpec::Theta => Character::theta(),
            CharacterSpec::Identity => Character::universal(),
            CharacterSpec::Vartheta(r) => Character::vartheta(r.clone()),
            CharacterSpec::AShuffle(a) => Character::convolution_power(*a)?,
            CharacterSpec::Eval(rs) => Character::evaluation(rs.clone()),
            CharacterSpec::UFile(path) => {
                let json = std::fs::read_to_string(path)?;
                let values = parse_ufile(&json)?;
                Character::u_assignment(values)?
            }
        })
    }
}

/// Parses a u-file: a JSON object mapping underscore-joined Lyndon
/// compositions to rationals, e.g. `{"1": "2", "1_2": "-1"}`. Unassigned
/// Lyndon variables default to zero.
pub fn parse_ufile(json: &str) -> anyhow::Result<BTreeMap<Composition, Rational>> {
    let raw: BTreeMap<String, String> = serde_json::from_str(json)?;
    let mut out = BTreeMap::new();
    for (key, value) in raw {
        let alpha = parse_ufile_key(&key)
            .ok_or_else(|| anyhow::anyhow!("bad u-file key {key:?}: expected parts like \"1_2\""))?;
        let rational: Rational = value
            .parse()
            .map_err(|e| anyhow::anyhow!("bad value for {key:?}: {e}"))?;
        out.insert(alpha, rational);
    }
    Ok(out)
}

/// Key format: positive integer parts joined by underscores.
pub fn parse_ufile_key(key: &str) -> Option<Composition> {
    let mut parts = Vec::new();
    for tok in key.split('_') {
        if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let p: usize = tok.parse().ok()?;
        if p == 0 {
            return None;
        }
        parts.push(p);
    }
    Composition::new(parts).ok()
}
