//! Parsing of the small textual input formats the CLI accepts. Kept in the
//! library so the fuzz targets can drive the parsers directly.

use crate::error::{Error, Result};
use crate::stats::{Composition, Word};

/// A word given either as a run of digits ("132") or as comma/space
/// separated letters ("1,3,2" or "1 3 2", letters may exceed 9).
pub fn parse_word(input: &str) -> Result<Word> {
    let input = input.trim();
    if input.is_empty() {
        return Err(Error::Parse("empty word".into()));
    }
    let letters: Vec<u32> = if input.contains(',') || input.contains(char::is_whitespace) {
        input
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad letter {s:?}")))
            })
            .collect::<Result<_>>()?
    } else {
        input
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .ok_or_else(|| Error::Parse(format!("bad letter {c:?}")))
            })
            .collect::<Result<_>>()?
    };
    if letters.iter().any(|&l| l == 0) {
        return Err(Error::Parse("letters are 1-based".into()));
    }
    Word::new(letters)
}

/// Letter multiplicities, e.g. "2,2,2".
pub fn parse_counts(input: &str) -> Result<Composition> {
    let counts: Vec<u64> = input
        .trim()
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad count {s:?}")))
        })
        .collect::<Result<_>>()?;
    if counts.is_empty() {
        return Err(Error::Parse("empty composition".into()));
    }
    Ok(Composition(counts))
}

/// Inclusive size range "A..B" with 1 <= A <= B.
pub fn parse_range(input: &str) -> Result<(u64, u64)> {
    let (lo, hi) = input
        .trim()
        .split_once("..")
        .ok_or_else(|| Error::Parse(format!("range {input:?} is not of the form A..B")))?;
    let lo: u64 = lo
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad range start {lo:?}")))?;
    let hi: u64 = hi
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad range end {hi:?}")))?;
    if lo == 0 || lo > hi {
        return Err(Error::Parse(format!("range {lo}..{hi} is empty or 0-based")));
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words() {
        assert_eq!(parse_word("132").unwrap().0, vec![1, 3, 2]);
        assert_eq!(parse_word("1,3,2").unwrap().0, vec![1, 3, 2]);
        assert_eq!(parse_word("10 2 10").unwrap().0, vec![10, 2, 10]);
        assert!(parse_word("3x2").is_err());
        assert!(parse_word("").is_err());
        assert!(parse_word("102").is_err());
    }

    #[test]
    fn counts() {
        assert_eq!(parse_counts("2,2,2").unwrap(), Composition(vec![2, 2, 2]));
        assert_eq!(parse_counts("0,4,1").unwrap(), Composition(vec![0, 4, 1]));
        assert!(parse_counts("2,,2").is_err());
        assert!(parse_counts("a").is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..27").unwrap(), (1, 27));
        assert_eq!(parse_range("5..5").unwrap(), (5, 5));
        assert!(parse_range("3..1").is_err());
        assert!(parse_range("0..4").is_err());
        assert!(parse_range("1-4").is_err());
    }
}
