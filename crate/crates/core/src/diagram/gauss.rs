use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Whether a visit passes over or under at a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pass {
    Over,
    Under,
}

/// One crossing visit in a signed Gauss code, e.g. `O3-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GaussToken {
    pub pass: Pass,
    pub label: usize,
    /// Crossing handedness, `+1` or `-1`; equal at both visits of a label.
    pub sign: i8,
}

impl GaussToken {
    fn order_key(&self) -> (u8, usize, i8) {
        (if self.pass == Pass::Over { 0 } else { 1 }, self.label, -self.sign)
    }
}

impl fmt::Display for GaussToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}{}",
            if self.pass == Pass::Over { 'O' } else { 'U' },
            self.label,
            if self.sign >= 0 { '+' } else { '-' }
        )
    }
}

/// Signed (extended) Gauss code: the cyclic sequence of crossing visits with
/// over/under and handedness markers. Each label appears exactly twice, once
/// over and once under, with the same sign at both visits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedGaussCode {
    tokens: Vec<GaussToken>,
}

impl SignedGaussCode {
    pub fn empty() -> Self {
        Self { tokens: Vec::new() }
    }

    pub fn new(tokens: Vec<GaussToken>) -> Result<Self> {
        let code = Self { tokens };
        code.validate()?;
        Ok(code)
    }

    pub fn tokens(&self) -> &[GaussToken] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn crossing_count(&self) -> usize {
        self.tokens.len() / 2
    }

    /// Sum of crossing signs (each crossing counted once).
    pub fn writhe(&self) -> i64 {
        let mut seen = std::collections::HashSet::new();
        let mut w = 0i64;
        for t in &self.tokens {
            if seen.insert(t.label) {
                w += t.sign as i64;
            }
        }
        w
    }

    pub fn validate(&self) -> Result<()> {
        use std::collections::HashMap;
        if self.tokens.len() % 2 != 0 {
            return Err(Error::InvalidCode("odd number of tokens".into()));
        }
        let mut seen: HashMap<usize, Vec<&GaussToken>> = HashMap::new();
        for t in &self.tokens {
            if t.label == 0 {
                return Err(Error::InvalidCode("labels must be positive".into()));
            }
            if t.sign != 1 && t.sign != -1 {
                return Err(Error::InvalidCode(format!("bad sign at label {}", t.label)));
            }
            seen.entry(t.label).or_default().push(t);
        }
        for (label, visits) in &seen {
            if visits.len() != 2 {
                return Err(Error::InvalidCode(format!(
                    "label {label} appears {} times",
                    visits.len()
                )));
            }
            if visits[0].pass == visits[1].pass {
                return Err(Error::InvalidCode(format!(
                    "label {label} is not once over, once under"
                )));
            }
            if visits[0].sign != visits[1].sign {
                return Err(Error::InvalidCode(format!(
                    "label {label} has mismatched signs"
                )));
            }
        }
        Ok(())
    }

    /// Cyclic rotation moving `tokens[k]` to the front.
    pub fn rotated(&self, k: usize) -> Self {
        if self.tokens.is_empty() {
            return self.clone();
        }
        let n = self.tokens.len();
        let tokens = (0..n).map(|i| self.tokens[(i + k) % n]).collect();
        Self { tokens }
    }

    /// Renumber labels 1.. in order of first appearance.
    pub fn relabeled(&self) -> Self {
        let mut map = std::collections::HashMap::new();
        let mut next = 1usize;
        let tokens = self
            .tokens
            .iter()
            .map(|t| {
                let label = *map.entry(t.label).or_insert_with(|| {
                    let l = next;
                    next += 1;
                    l
                });
                GaussToken { label, ..*t }
            })
            .collect();
        Self { tokens }
    }

    /// Canonical form: lexicographically smallest relabeled rotation.
    /// Orientation is meaningful and is not quotiented out.
    pub fn canonical(&self) -> Self {
        let n = self.tokens.len();
        if n == 0 {
            return self.clone();
        }
        (0..n)
            .map(|k| self.rotated(k).relabeled())
            .min_by(|a, b| {
                let ka: Vec<_> = a.tokens.iter().map(|t| t.order_key()).collect();
                let kb: Vec<_> = b.tokens.iter().map(|t| t.order_key()).collect();
                ka.cmp(&kb)
            })
            .unwrap()
    }

    /// Mirror image: over and under swap, every handedness flips.
    pub fn mirror(&self) -> Self {
        let tokens = self
            .tokens
            .iter()
            .map(|t| GaussToken {
                pass: if t.pass == Pass::Over { Pass::Under } else { Pass::Over },
                label: t.label,
                sign: -t.sign,
            })
            .collect();
        Self { tokens }
    }
}

impl fmt::Display for SignedGaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.tokens.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for SignedGaussCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut tokens = Vec::new();
        for word in s.split_whitespace() {
            let mut chars = word.chars();
            let pass = match chars.next() {
                Some('O') | Some('o') => Pass::Over,
                Some('U') | Some('u') => Pass::Under,
                _ => return Err(Error::InvalidCode(format!("bad token `{word}`"))),
            };
            let body: String = chars.collect();
            let (digits, sign_ch) = body.split_at(body.len().saturating_sub(1));
            let sign = match sign_ch {
                "+" => 1i8,
                "-" => -1i8,
                _ => return Err(Error::InvalidCode(format!("bad sign in `{word}`"))),
            };
            let label: usize = digits
                .parse()
                .map_err(|_| Error::InvalidCode(format!("bad label in `{word}`")))?;
            tokens.push(GaussToken { pass, label, sign });
        }
        Self::new(tokens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        let text = "O1+ U2+ O3+ U1+ O2+ U3+";
        let code: SignedGaussCode = text.parse().unwrap();
        assert_eq!(code.to_string(), text);
        assert_eq!(code.crossing_count(), 3);
        assert_eq!(code.writhe(), 3);
    }

    #[test]
    fn validation_rejects_malformed_codes() {
        assert!("O1+ O1+".parse::<SignedGaussCode>().is_err()); // twice over
        assert!("O1+ U1-".parse::<SignedGaussCode>().is_err()); // sign mismatch
        assert!("O1+ U1+ O2+".parse::<SignedGaussCode>().is_err()); // dangling label
    }

    #[test]
    fn canonical_form_is_rotation_and_relabel_invariant() {
        let code: SignedGaussCode = "O1+ U2+ O3+ U1+ O2+ U3+".parse().unwrap();
        for k in 0..code.len() {
            let relabeled = code.rotated(k).relabeled();
            assert_eq!(relabeled.canonical(), code.canonical());
        }
    }

    #[test]
    fn mirror_is_an_involution_and_changes_chiral_codes() {
        let code = crate::fixtures::trefoil_code();
        assert_eq!(code.mirror().mirror(), code);
        assert_ne!(code.mirror().canonical(), code.canonical());
    }
}
