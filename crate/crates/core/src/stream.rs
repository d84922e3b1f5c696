//! Finite symbol streams with source metadata and a line-based text format.
//!
//! A stream is usually binary; beam splitters with more than two ports emit
//! symbols `0..n-1` instead. Files hold one ASCII digit per symbol, wrapped
//! at 64 characters per line, preceded by an optional header comment
//! `# model=<...> seed=<...> length=<...>`. Newlines are ignored on read.

use crate::error::{Error, Result};

/// Provenance of a sampled stream.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StreamMeta {
    pub model: String,
    pub seed: u64,
    pub length: usize,
}

/// Finite sequence of symbols below a fixed alphabet size (bits when the
/// alphabet is 2).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitStream {
    alphabet: u32,
    symbols: Vec<u8>,
    meta: Option<StreamMeta>,
}

/// Write wrap width for the text format.
const LINE_WIDTH: usize = 64;

/// Largest alphabet representable with single ASCII digits.
const MAX_DIGIT_ALPHABET: u32 = 10;

impl BitStream {
    pub fn from_bits(bits: Vec<u8>) -> Result<BitStream> {
        BitStream::from_symbols(2, bits)
    }

    pub fn from_symbols(alphabet: u32, symbols: Vec<u8>) -> Result<BitStream> {
        if alphabet < 2 {
            return Err(Error::InvalidParameter(
                "alphabet must be at least 2".into(),
            ));
        }
        if let Some(&bad) = symbols.iter().find(|&&s| (s as u32) >= alphabet) {
            return Err(Error::InvalidParameter(format!(
                "symbol {bad} is outside alphabet {alphabet}"
            )));
        }
        Ok(BitStream {
            alphabet,
            symbols,
            meta: None,
        })
    }

    /// Convenience for tests and fixtures: parse a bare digit string.
    pub fn from_digit_str(s: &str) -> Result<BitStream> {
        let symbols: Vec<u8> = s
            .bytes()
            .map(|b| {
                if b.is_ascii_digit() {
                    Ok(b - b'0')
                } else {
                    Err(Error::InvalidParameter(format!(
                        "invalid symbol character {:?}",
                        b as char
                    )))
                }
            })
            .collect::<Result<_>>()?;
        let alphabet = symbols
            .iter()
            .map(|&s| s as u32 + 1)
            .max()
            .unwrap_or(2)
            .max(2);
        BitStream::from_symbols(alphabet, symbols)
    }

    pub fn with_meta(mut self, meta: StreamMeta) -> BitStream {
        self.meta = Some(meta);
        self
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn meta(&self) -> Option<&StreamMeta> {
        self.meta.as_ref()
    }

    /// Bit view of a binary stream; errors on larger alphabets.
    pub fn bits(&self) -> Result<&[u8]> {
        if self.alphabet != 2 {
            return Err(Error::NotBinary {
                alphabet: self.alphabet,
            });
        }
        Ok(&self.symbols)
    }

    /// Number of `1` symbols in a binary stream.
    pub fn ones(&self) -> Result<usize> {
        Ok(self.bits()?.iter().filter(|&&b| b == 1).count())
    }

    /// Fixed-width big-endian binary expansion of a power-of-two alphabet:
    /// each symbol becomes `log2(alphabet)` bits, most significant first.
    /// Undefined (an error) for other alphabets, where any fixed-width coding
    /// would bias the bits.
    pub fn binary_expanded(&self) -> Result<BitStream> {
        if !self.alphabet.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "alphabet {} is not a power of two",
                self.alphabet
            )));
        }
        let width = self.alphabet.trailing_zeros() as usize;
        let mut bits = Vec::with_capacity(self.symbols.len() * width);
        for &s in &self.symbols {
            for b in (0..width).rev() {
                bits.push((s >> b) & 1);
            }
        }
        let meta = self.meta.as_ref().map(|m| StreamMeta {
            model: format!("binexp({})", m.model),
            seed: m.seed,
            length: bits.len(),
        });
        let mut out = BitStream::from_bits(bits)?;
        out.meta = meta;
        Ok(out)
    }

    /// Text form: optional header comment, then digits in 64-character lines.
    pub fn to_text(&self) -> Result<String> {
        if self.alphabet > MAX_DIGIT_ALPHABET {
            return Err(Error::AlphabetTooLarge {
                alphabet: self.alphabet,
            });
        }
        let mut out = String::new();
        if let Some(m) = &self.meta {
            out.push_str(&format!(
                "# model={} seed={} length={}\n",
                m.model, m.seed, m.length
            ));
        }
        for chunk in self.symbols.chunks(LINE_WIDTH) {
            for &s in chunk {
                out.push((b'0' + s) as char);
            }
            out.push('\n');
        }
        Ok(out)
    }

    /// Reads the text form. Lines starting with `#` are comments; the first
    /// one matching the header layout is kept as metadata. Newlines carry no
    /// meaning; every other character must be an ASCII digit.
    pub fn parse_text(text: &str) -> Result<BitStream> {
        let mut symbols = Vec::new();
        let mut meta = None;
        let mut max_digit = 0u8;
        for (idx, line) in text.lines().enumerate() {
            if let Some(rest) = line.strip_prefix('#') {
                if meta.is_none() {
                    meta = parse_meta(rest.trim_start());
                }
                continue;
            }
            for c in line.bytes() {
                if !c.is_ascii_digit() {
                    return Err(Error::format(
                        idx + 1,
                        format!("invalid symbol character {:?}", c as char),
                    ));
                }
                let s = c - b'0';
                max_digit = max_digit.max(s);
                symbols.push(s);
            }
        }
        let alphabet = (max_digit as u32 + 1).max(2);
        let mut stream = BitStream::from_symbols(alphabet, symbols)?;
        stream.meta = meta;
        Ok(stream)
    }
}

fn parse_meta(rest: &str) -> Option<StreamMeta> {
    let mut fields = rest.split(' ');
    let model = fields.next()?.strip_prefix("model=")?.to_string();
    let seed = fields.next()?.strip_prefix("seed=")?.parse().ok()?;
    let length = fields.next()?.strip_prefix("length=")?.parse().ok()?;
    if fields.next().is_some() {
        return None;
    }
    Some(StreamMeta {
        model,
        seed,
        length,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip_with_header() {
        let s = BitStream::from_bits(vec![0, 1, 1, 0])
            .unwrap()
            .with_meta(StreamMeta {
                model: "symmetry(p=0.5)".into(),
                seed: 9,
                length: 4,
            });
        let text = s.to_text().unwrap();
        assert_eq!(text, "# model=symmetry(p=0.5) seed=9 length=4\n0110\n");
        let back = BitStream::parse_text(&text).unwrap();
        assert_eq!(back.symbols(), s.symbols());
        assert_eq!(back.meta(), s.meta());
    }

    #[test]
    fn long_streams_wrap_at_64_characters() {
        let s = BitStream::from_bits(vec![1; 130]).unwrap();
        let text = s.to_text().unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0].len(), 64);
        assert_eq!(lines[2].len(), 2);
        assert_eq!(BitStream::parse_text(&text).unwrap().len(), 130);
    }

    #[test]
    fn comments_and_newlines_are_ignored_on_read() {
        let s = BitStream::parse_text("# free-form comment\n01\n10\n").unwrap();
        assert_eq!(s.symbols(), &[0, 1, 1, 0]);
        assert!(s.meta().is_none());
    }

    #[test]
    fn non_digit_characters_are_rejected() {
        assert!(BitStream::parse_text("01x0\n").is_err());
        assert!(BitStream::from_digit_str("01 1").is_err());
    }

    #[test]
    fn symbol_stream_infers_alphabet() {
        let s = BitStream::parse_text("0123\n").unwrap();
        assert_eq!(s.alphabet(), 4);
        assert!(s.bits().is_err());
    }

    #[test]
    fn binary_expansion_is_big_endian_fixed_width() {
        let s = BitStream::from_symbols(4, vec![0, 1, 2, 3]).unwrap();
        let b = s.binary_expanded().unwrap();
        assert_eq!(b.symbols(), &[0, 0, 0, 1, 1, 0, 1, 1]);
        let odd = BitStream::from_symbols(3, vec![0, 1, 2]).unwrap();
        assert!(odd.binary_expanded().is_err());
    }
}
