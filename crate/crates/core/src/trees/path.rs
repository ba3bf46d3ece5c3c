use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    /// East step carrying its decoration.
    H(u32),
    /// North step.
    V,
}

/// A path of `H` and `V` steps staying in `0 <= y <= x`, where an `H` step
/// at height `k` carries a decoration in `1..=k+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecoratedPath {
    steps: Vec<Step>,
}

impl DecoratedPath {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        let (mut x, mut y) = (0u32, 0u32);
        for (i, s) in steps.iter().enumerate() {
            match *s {
                Step::H(d) => {
                    if d == 0 || d > y + 1 {
                        return Err(Error::Validation(format!(
                            "step {i}: decoration {d} outside 1..={} at height {y}",
                            y + 1
                        )));
                    }
                    x += 1;
                }
                Step::V => {
                    if y == x {
                        return Err(Error::Validation(format!(
                            "step {i}: V would cross the diagonal at ({x}, {y})"
                        )));
                    }
                    y += 1;
                }
            }
        }
        Ok(DecoratedPath { steps })
    }

    pub(crate) fn from_valid_steps(steps: Vec<Step>) -> Self {
        debug_assert!(DecoratedPath::new(steps.clone()).is_ok());
        DecoratedPath { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// End point `(x, y)`.
    pub fn end(&self) -> (usize, usize) {
        let v = self.steps.iter().filter(|s| **s == Step::V).count();
        (self.steps.len() - v, v)
    }

    /// Number of `V` steps.
    pub fn size(&self) -> usize {
        self.end().1
    }

    /// Ends on the diagonal.
    pub fn is_complete(&self) -> bool {
        let (x, y) = self.end();
        x == y
    }
}

impl fmt::Display for DecoratedPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match s {
                Step::H(d) => write!(f, "H:{d}")?,
                Step::V => f.write_str("V")?,
            }
        }
        Ok(())
    }
}

impl FromStr for DecoratedPath {
    type Err = Error;

    /// Parses the token format `H:d` / `V`, separated by whitespace.
    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .split_whitespace()
            .map(|tok| match tok {
                "V" => Ok(Step::V),
                _ => tok
                    .strip_prefix("H:")
                    .and_then(|d| d.parse().ok())
                    .map(Step::H)
                    .ok_or_else(|| Error::Validation(format!("bad path token `{tok}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        DecoratedPath::new(steps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn token_roundtrip() {
        let p: DecoratedPath = "H:1 H:1 V H:2 V".parse().unwrap();
        assert_eq!(p.to_string(), "H:1 H:1 V H:2 V");
        assert_eq!(p.end(), (3, 2));
        assert!(!p.is_complete());
    }

    #[test]
    fn invalid_paths() {
        assert!("V".parse::<DecoratedPath>().is_err());
        assert!("H:2 V".parse::<DecoratedPath>().is_err());
        assert!("H:0 V".parse::<DecoratedPath>().is_err());
        assert!("H:1 V H:3 V".parse::<DecoratedPath>().is_err());
        assert!("H:x".parse::<DecoratedPath>().is_err());
        assert!("".parse::<DecoratedPath>().unwrap().is_complete());
    }
}
