//! Group specifications such as `Z4xZ8`, `Z2^2 x Z3^2` or `Z12`.

use diamond_core::abelian::GroupType;
use diamond_core::primes::factorize;

/// Upper bound on a single `^k`, to keep typos like `Z2^99999999` from
/// allocating a huge type.
pub const MAX_REPEAT: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("empty group specification")]
    Empty,
    #[error("expected `Z` at position {0}")]
    ExpectedZ(usize),
    #[error("expected a number at position {0}")]
    ExpectedNumber(usize),
    #[error("expected `x` or `*` at position {0}")]
    ExpectedOperator(usize),
    #[error("number at position {0} does not fit in 64 bits")]
    Overflow(usize),
    #[error("Z0 is not a finite group")]
    ZeroModulus,
    #[error("exponent {0} exceeds the limit of {MAX_REPEAT}")]
    RepeatTooLarge(u64),
}

/// A parsed specification together with its source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub source: String,
    pub group: GroupType,
}

impl std::str::FromStr for GroupSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, SpecError> {
        Ok(GroupSpec {
            source: s.to_string(),
            group: parse_group_spec(s)?,
        })
    }
}

/// Parses a direct product of cyclic groups into its canonical type.
pub fn parse_group_spec(text: &str) -> Result<GroupType, SpecError> {
    let chars: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    if chars.is_empty() {
        return Err(SpecError::Empty);
    }
    let mut pos = 0;
    let mut factors = Vec::new();
    loop {
        let at = |pos: usize| chars.get(pos).map_or(text.len(), |&(i, _)| i);
        match chars.get(pos) {
            Some((_, 'z' | 'Z')) => pos += 1,
            _ => return Err(SpecError::ExpectedZ(at(pos))),
        }
        let m = number(&chars, &mut pos, text.len())?;
        let mut repeat = 1;
        if let Some((_, '^')) = chars.get(pos) {
            pos += 1;
            repeat = number(&chars, &mut pos, text.len())?;
            if repeat > MAX_REPEAT {
                return Err(SpecError::RepeatTooLarge(repeat));
            }
        }
        if m == 0 {
            return Err(SpecError::ZeroModulus);
        }
        let cyclic = factorize(m);
        for _ in 0..repeat {
            factors.extend_from_slice(&cyclic);
        }
        match chars.get(pos) {
            None => break,
            Some((_, 'x' | 'X' | '*')) => pos += 1,
            Some(_) => return Err(SpecError::ExpectedOperator(at(pos))),
        }
    }
    Ok(GroupType::canonicalize(&factors).expect("factorize yields prime powers"))
}

fn number(chars: &[(usize, char)], pos: &mut usize, end: usize) -> Result<u64, SpecError> {
    let start = chars.get(*pos).map_or(end, |&(i, _)| i);
    let mut value: u64 = 0;
    let mut digits = 0;
    while let Some(&(_, c)) = chars.get(*pos) {
        let Some(d) = c.to_digit(10) else { break };
        value = value
            .checked_mul(10)
            .and_then(|v| v.checked_add(d as u64))
            .ok_or(SpecError::Overflow(start))?;
        *pos += 1;
        digits += 1;
    }
    if digits == 0 {
        return Err(SpecError::ExpectedNumber(start));
    }
    Ok(value)
}

/// Canonical spelling, e.g. `Z2 x Z4^3 x Z3`; parses back to the same type.
pub fn format_group_spec(t: &GroupType) -> String {
    t.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parts(t: &GroupType) -> Vec<(u64, Vec<u32>)> {
        t.components()
            .map(|c| (c.prime(), c.exponents().to_vec()))
            .collect()
    }

    #[test]
    fn examples() {
        assert_eq!(
            parts(&parse_group_spec("Z4xZ8").unwrap()),
            vec![(2, vec![2, 3])]
        );
        assert_eq!(
            parts(&parse_group_spec("Z2^2 x Z3^2").unwrap()),
            vec![(2, vec![1, 1]), (3, vec![1, 1])]
        );
        assert_eq!(
            parts(&parse_group_spec("Z12").unwrap()),
            vec![(2, vec![2]), (3, vec![1])]
        );
        assert!(parse_group_spec("Z1").unwrap().is_trivial());
        assert_eq!(
            parse_group_spec("z2 * Z2").unwrap(),
            parse_group_spec("Z2^2").unwrap()
        );
    }

    #[test]
    fn errors() {
        assert_eq!(parse_group_spec(""), Err(SpecError::Empty));
        assert_eq!(parse_group_spec("Z0"), Err(SpecError::ZeroModulus));
        assert_eq!(parse_group_spec("Z"), Err(SpecError::ExpectedNumber(1)));
        assert_eq!(
            parse_group_spec("Z2 Y"),
            Err(SpecError::ExpectedOperator(3))
        );
        assert_eq!(parse_group_spec("Z2x"), Err(SpecError::ExpectedZ(3)));
        assert_eq!(parse_group_spec("Z2^"), Err(SpecError::ExpectedNumber(3)));
        assert_eq!(
            parse_group_spec("Z99999999999999999999"),
            Err(SpecError::Overflow(1))
        );
        assert_eq!(
            parse_group_spec("Z2^5000"),
            Err(SpecError::RepeatTooLarge(5000))
        );
    }

    #[test]
    fn format_round_trips() {
        for s in ["Z2xZ4^3", "Z1", "Z360 x Z12", "Z18446744073709551557"] {
            let t = parse_group_spec(s).unwrap();
            assert_eq!(parse_group_spec(&format_group_spec(&t)).unwrap(), t);
        }
    }
}
