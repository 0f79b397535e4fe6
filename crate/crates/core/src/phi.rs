//! The `PHI v1` text format for persisting pair colorings.
//!
//! ```text
//! PHI v1
//! N=7
//! b45a1c
//! ```
//!
//! Line 3 is the lowercase hex encoding of the upper-triangular bit array in
//! row-major pair order (0,1),(0,2),..,(0,N-1),(1,2),..; 1 = red, 0 = blue.
//! Pair bits fill each byte from the most significant bit down, so reading
//! the hex left to right presents the pairs in order, four per digit.
//! Trailing pad bits in the final byte are zero.
//!
//! Parsing is strict-canonical: a file is accepted only if re-serializing
//! the parsed coloring reproduces it byte for byte. That makes
//! `write(parse(s)) == s` hold on every accepted input, which is the
//! round-trip property the fuzz target hammers on.

use std::path::Path;

use thiserror::Error;

use crate::base::BaseColoring;

pub const PHI_HEADER: &str = "PHI v1";

/// Upper bound on N accepted by the parser; keeps the payload length sane.
pub const MAX_POINTS: usize = 65_535;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PhiParseError {
    #[error("missing or corrupt header (expected `{PHI_HEADER}`)")]
    BadHeader,
    #[error("malformed point-count line (expected `N=<decimal>`)")]
    BadPointCount,
    #[error("point count must be between 1 and {MAX_POINTS}")]
    PointCountOutOfRange,
    #[error("payload must be {expected} lowercase hex digits, found {found}")]
    BadPayloadLength { expected: usize, found: usize },
    #[error("payload contains a non-hex or uppercase character")]
    BadPayloadDigit,
    #[error("trailing pad bits must be zero")]
    NonZeroPadBits,
    #[error("file must end with a single trailing newline and no extra data")]
    TrailingData,
}

#[derive(Debug, Error)]
pub enum PhiError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error: {0}")]
    Parse(#[from] PhiParseError),
}

/// Serializes a coloring in canonical `PHI v1` form.
pub fn write_string(phi: &BaseColoring) -> String {
    let n = phi.n_points();
    let bits = n * (n - 1) / 2;
    let mut bytes = vec![0u8; bits.div_ceil(8)];
    for (i, byte) in bytes.iter_mut().enumerate() {
        let word = phi.tri_bits()[i * 8 / 64];
        for j in 0..8 {
            let bit = i * 8 + j;
            if bit >= bits {
                break;
            }
            if (word >> (bit % 64)) & 1 == 1 {
                *byte |= 1 << (7 - j);
            }
        }
    }
    let mut payload = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        payload.push(char::from_digit((b >> 4) as u32, 16).unwrap());
        payload.push(char::from_digit((b & 0xf) as u32, 16).unwrap());
    }
    format!("{PHI_HEADER}\nN={n}\n{payload}\n")
}

/// Parses canonical `PHI v1` text. Every accepted input re-serializes to
/// itself.
pub fn parse_str(s: &str) -> Result<BaseColoring, PhiParseError> {
    let rest = s.strip_prefix(PHI_HEADER).ok_or(PhiParseError::BadHeader)?;
    let rest = rest.strip_prefix('\n').ok_or(PhiParseError::BadHeader)?;
    let (count_line, rest) = rest.split_once('\n').ok_or(PhiParseError::BadPointCount)?;
    let digits = count_line.strip_prefix("N=").ok_or(PhiParseError::BadPointCount)?;
    if digits.is_empty()
        || !digits.bytes().all(|b| b.is_ascii_digit())
        || (digits.len() > 1 && digits.starts_with('0'))
    {
        return Err(PhiParseError::BadPointCount);
    }
    let n: usize = digits.parse().map_err(|_| PhiParseError::PointCountOutOfRange)?;
    if n == 0 || n > MAX_POINTS {
        return Err(PhiParseError::PointCountOutOfRange);
    }
    let (payload, rest) = rest.split_once('\n').ok_or(PhiParseError::BadPayloadLength {
        expected: expected_hex_len(n),
        found: rest.len(),
    })?;
    if !rest.is_empty() {
        return Err(PhiParseError::TrailingData);
    }
    let expected = expected_hex_len(n);
    if payload.len() != expected {
        return Err(PhiParseError::BadPayloadLength { expected, found: payload.len() });
    }

    let bits = n * (n - 1) / 2;
    let mut tri = vec![0u64; bits.div_ceil(64)];
    for (i, ch) in payload.bytes().enumerate() {
        let nibble = match ch {
            b'0'..=b'9' => ch - b'0',
            b'a'..=b'f' => ch - b'a' + 10,
            _ => return Err(PhiParseError::BadPayloadDigit),
        };
        for j in 0..4 {
            if (nibble >> (3 - j)) & 1 == 1 {
                let bit = i * 4 + j;
                if bit >= bits {
                    return Err(PhiParseError::NonZeroPadBits);
                }
                tri[bit / 64] |= 1u64 << (bit % 64);
            }
        }
    }
    Ok(BaseColoring::from_tri_bits(n, tri))
}

fn expected_hex_len(n: usize) -> usize {
    (n * (n - 1) / 2).div_ceil(8) * 2
}

pub fn read_file(path: impl AsRef<Path>) -> Result<BaseColoring, PhiError> {
    let text = std::fs::read_to_string(path)?;
    Ok(parse_str(&text)?)
}

pub fn write_file(path: impl AsRef<Path>, phi: &BaseColoring) -> Result<(), PhiError> {
    std::fs::write(path, write_string(phi))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::Rational;
    use crate::rng::stream_rng;
    use crate::Color;

    #[test]
    fn round_trip_uniform_colorings() {
        for n in [1usize, 2, 3, 7, 8, 17, 64] {
            for color in [Color::Red, Color::Blue] {
                let phi = BaseColoring::new_uniform(n, color);
                let text = write_string(&phi);
                let back = parse_str(&text).unwrap();
                assert_eq!(back, phi, "n={n} {color}");
                assert_eq!(write_string(&back), text);
            }
        }
    }

    #[test]
    fn round_trip_random_colorings() {
        for seed in 0..8u64 {
            let mut rng = stream_rng(b"PHI-TEST", seed, 0);
            let phi = BaseColoring::random(19, Rational::ONE_HALF, &mut rng);
            let text = write_string(&phi);
            assert_eq!(parse_str(&text).unwrap(), phi);
        }
    }

    #[test]
    fn canonical_layout_is_pinned() {
        // Pairs of 3 points in order (0,1),(0,2),(1,2); red on (0,2) is the
        // second bit from the top of the single payload byte.
        let mut phi = BaseColoring::new_uniform(3, Color::Blue);
        phi.set_pair(0, 2, Color::Red).unwrap();
        assert_eq!(write_string(&phi), "PHI v1\nN=3\n40\n");
        let all_red = BaseColoring::new_uniform(3, Color::Red);
        assert_eq!(write_string(&all_red), "PHI v1\nN=3\ne0\n");
        let lone = BaseColoring::new_uniform(1, Color::Blue);
        assert_eq!(write_string(&lone), "PHI v1\nN=1\n\n");
    }

    #[test]
    fn rejects_malformed_inputs() {
        use PhiParseError::*;
        let cases: &[(&str, PhiParseError)] = &[
            ("", BadHeader),
            ("PHI v2\nN=3\ne0\n", BadHeader),
            ("PHI v1\r\nN=3\ne0\n", BadHeader),
            ("PHI v1\nN=3", BadPointCount),
            ("PHI v1\nn=3\ne0\n", BadPointCount),
            ("PHI v1\nN=03\ne0\n", BadPointCount),
            ("PHI v1\nN=+3\ne0\n", BadPointCount),
            ("PHI v1\nN=0\n\n", PointCountOutOfRange),
            ("PHI v1\nN=99999999999999999999\n\n", PointCountOutOfRange),
            ("PHI v1\nN=3\ne\n", BadPayloadLength { expected: 2, found: 1 }),
            ("PHI v1\nN=3\nE0\n", BadPayloadDigit),
            ("PHI v1\nN=3\ng0\n", BadPayloadDigit),
            ("PHI v1\nN=3\ne1\n", NonZeroPadBits),
            ("PHI v1\nN=3\ne0\nx", TrailingData),
            ("PHI v1\nN=3\ne0\n\n", TrailingData),
        ];
        for (input, want) in cases {
            assert_eq!(parse_str(input).unwrap_err(), *want, "input {input:?}");
        }
    }
}
