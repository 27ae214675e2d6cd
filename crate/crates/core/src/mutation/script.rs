use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

/// One mutation or Hurwitz move.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Move {
    C,
    R,
    CInv,
    RInv,
    /// Object i becomes X_i[σ_i].
    Shift(Vec<i64>),
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::C => f.write_str("c"),
            Move::R => f.write_str("r"),
            Move::CInv => f.write_str("c!"),
            Move::RInv => f.write_str("r!"),
            Move::Shift(s) => {
                write!(f, "shift ")?;
                let parts: Vec<String> = s.iter().map(i64::to_string).collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

impl Move {
    pub fn inverse(&self) -> Move {
        match self {
            Move::C => Move::CInv,
            Move::R => Move::RInv,
            Move::CInv => Move::C,
            Move::RInv => Move::R,
            Move::Shift(s) => Move::Shift(s.iter().map(|x| -x).collect()),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Script(pub Vec<Move>);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScriptError {
    #[error("unknown move `{0}`")]
    UnknownMove(String),
    #[error("`shift` needs a comma-separated integer vector")]
    BadShift,
}

impl Script {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn moves(&self) -> &[Move] {
        &self.0
    }

    pub fn inverse(&self) -> Script {
        Script(self.0.iter().rev().map(Move::inverse).collect())
    }
}

impl FromStr for Script {
    type Err = ScriptError;

    /// Moves separated by whitespace or `;`: `c r! shift 0,1,0`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = Vec::new();
        let mut toks = s.split(|c: char| c.is_whitespace() || c == ';').filter(|t| !t.is_empty());
        while let Some(t) = toks.next() {
            out.push(match t {
                "c" => Move::C,
                "r" => Move::R,
                "c!" => Move::CInv,
                "r!" => Move::RInv,
                "shift" => {
                    let v = toks.next().ok_or(ScriptError::BadShift)?;
                    let parsed: Result<Vec<i64>, _> = v.split(',').map(|x| x.trim().parse::<i64>()).collect();
                    Move::Shift(parsed.map_err(|_| ScriptError::BadShift)?)
                }
                other => return Err(ScriptError::UnknownMove(other.to_string())),
            });
        }
        Ok(Script(out))
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Move::to_string).collect();
        f.write_str(&parts.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let s: Script = "c r! shift 0,-1,2; c!".parse().unwrap();
        assert_eq!(s.0, vec![Move::C, Move::RInv, Move::Shift(vec![0, -1, 2]), Move::CInv]);
        assert_eq!(s.to_string().parse::<Script>().unwrap(), s);
        assert_eq!(s.inverse().inverse(), s);
        assert!("x".parse::<Script>().is_err());
        assert!("shift".parse::<Script>().is_err());
        assert!("".parse::<Script>().unwrap().is_empty());
    }
}
