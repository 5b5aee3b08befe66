//! Major-system mapping between Arpabet phonemes and decimal digits.
//!
//! Each digit owns a class of consonant sounds:
//!
//! | digit | phonemes        |
//! |-------|-----------------|
//! | 0     | S Z             |
//! | 1     | T D TH DH       |
//! | 2     | N               |
//! | 3     | M               |
//! | 4     | R               |
//! | 5     | L               |
//! | 6     | CH JH SH ZH     |
//! | 7     | K G             |
//! | 8     | F V             |
//! | 9     | P B             |
//!
//! Vowels (including ER), NG, and the glides W, Y, HH encode nothing.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::PhoneticsError;

macro_rules! phonemes {
    ($($variant:ident => $sym:literal),* $(,)?) => {
        /// A CMU-dict Arpabet phone with stress removed.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum Phoneme {
            $($variant,)*
        }

        impl Phoneme {
            /// Every symbol of the CMU phone set, in alphabetical order.
            pub const ALL: &'static [Phoneme] = &[$(Phoneme::$variant,)*];

            pub fn symbol(self) -> &'static str {
                match self {
                    $(Phoneme::$variant => $sym,)*
                }
            }

            fn from_symbol(sym: &str) -> Option<Phoneme> {
                match sym {
                    $($sym => Some(Phoneme::$variant),)*
                    _ => None,
                }
            }
        }
    };
}

phonemes! {
    Aa => "AA", Ae => "AE", Ah => "AH", Ao => "AO", Aw => "AW", Ay => "AY",
    B => "B", Ch => "CH", D => "D", Dh => "DH", Eh => "EH", Er => "ER",
    Ey => "EY", F => "F", G => "G", Hh => "HH", Ih => "IH", Iy => "IY",
    Jh => "JH", K => "K", L => "L", M => "M", N => "N", Ng => "NG",
    Ow => "OW", Oy => "OY", P => "P", R => "R", S => "S", Sh => "SH",
    T => "T", Th => "TH", Uh => "UH", Uw => "UW", V => "V", W => "W",
    Y => "Y", Z => "Z", Zh => "ZH",
}

/// Whether a phoneme carries a digit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhonemeKind {
    EncodingConsonant,
    NonEncoding,
}

impl Phoneme {
    /// Parses a raw CMU-dict phone token such as `AE1` or `t`.
    pub fn parse(raw: &str) -> Result<Phoneme, PhoneticsError> {
        let sym = strip_stress(raw);
        Phoneme::from_symbol(&sym).ok_or(PhoneticsError::UnknownSymbol(raw.to_string()))
    }

    pub fn kind(self) -> PhonemeKind {
        if MajorMap::STANDARD.digit(self).is_some() {
            PhonemeKind::EncodingConsonant
        } else {
            PhonemeKind::NonEncoding
        }
    }
}

impl fmt::Display for Phoneme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Phoneme {
    type Err = PhoneticsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Phoneme::parse(s)
    }
}

/// Removes a trailing stress digit (0, 1 or 2) and uppercases the token.
pub fn strip_stress(raw: &str) -> String {
    let trimmed = raw.strip_suffix(['0', '1', '2']).unwrap_or(raw);
    trimmed.to_ascii_uppercase()
}

/// An ordered sequence of decimal digits. May be empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct DigitString(Vec<u8>);

impl DigitString {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds from digit values; every value must be below ten.
    pub fn from_digits(digits: Vec<u8>) -> Result<Self, PhoneticsError> {
        if let Some(&bad) = digits.iter().find(|&&d| d > 9) {
            return Err(PhoneticsError::InvalidDigit(char::from(b'0'.wrapping_add(bad))));
        }
        Ok(Self(digits))
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, digit: u8) {
        assert!(digit <= 9, "digit out of range: {digit}");
        self.0.push(digit);
    }

    pub fn extend_from(&mut self, other: &DigitString) {
        self.0.extend_from_slice(&other.0);
    }

    /// Copies a sub-range into a new digit string.
    pub fn slice(&self, range: std::ops::Range<usize>) -> DigitString {
        DigitString(self.0[range].to_vec())
    }
}

impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for DigitString {
    type Err = PhoneticsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or(PhoneticsError::InvalidDigit(c))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(DigitString)
    }
}

impl TryFrom<String> for DigitString {
    type Error = PhoneticsError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<DigitString> for String {
    fn from(d: DigitString) -> String {
        d.to_string()
    }
}

impl FromIterator<u8> for DigitString {
    fn from_iter<I: IntoIterator<Item = u8>>(iter: I) -> Self {
        let mut out = DigitString::new();
        for d in iter {
            out.push(d);
        }
        out
    }
}

/// Phoneme to digit table.
#[derive(Debug, Clone)]
pub struct MajorMap {
    table: [Option<u8>; Phoneme::ALL.len()],
}

impl MajorMap {
    pub const STANDARD: MajorMap = MajorMap::standard();

    pub const fn standard() -> MajorMap {
        let mut table = [None; Phoneme::ALL.len()];
        let mut i = 0;
        while i < Phoneme::ALL.len() {
            table[i] = match Phoneme::ALL[i] {
                Phoneme::S | Phoneme::Z => Some(0),
                Phoneme::T | Phoneme::D | Phoneme::Th | Phoneme::Dh => Some(1),
                Phoneme::N => Some(2),
                Phoneme::M => Some(3),
                Phoneme::R => Some(4),
                Phoneme::L => Some(5),
                Phoneme::Ch | Phoneme::Jh | Phoneme::Sh | Phoneme::Zh => Some(6),
                Phoneme::K | Phoneme::G => Some(7),
                Phoneme::F | Phoneme::V => Some(8),
                Phoneme::P | Phoneme::B => Some(9),
                _ => None,
            };
            i += 1;
        }
        MajorMap { table }
    }

    pub fn digit(&self, p: Phoneme) -> Option<u8> {
        self.table[p as usize]
    }

    /// Like [`MajorMap::digit`] but starting from a raw symbol.
    pub fn digit_for_symbol(&self, raw: &str) -> Result<Option<u8>, PhoneticsError> {
        Phoneme::parse(raw).map(|p| self.digit(p))
    }

    pub fn pronunciation_digits(&self, phonemes: &[Phoneme]) -> DigitString {
        DigitString(phonemes.iter().filter_map(|&p| self.digit(p)).collect())
    }
}

impl Default for MajorMap {
    fn default() -> Self {
        MajorMap::standard()
    }
}

pub fn phoneme_to_digit(p: Phoneme) -> Option<u8> {
    MajorMap::STANDARD.digit(p)
}

pub fn pronunciation_to_digits(phonemes: &[Phoneme]) -> DigitString {
    MajorMap::STANDARD.pronunciation_digits(phonemes)
}
