use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Num(BigRational),
    X,
    Pw,
    Otherwise,
    Undef,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Semi,
    Colon,
    Lt,
    Le,
    Eq,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number `{n}`"),
            Tok::X => "`x`".into(),
            Tok::Pw => "`pw`".into(),
            Tok::Otherwise => "`otherwise`".into(),
            Tok::Undef => "`undef`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Lt => "`<`".into(),
            Tok::Le => "`<=`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

/// Splits `text` into tokens tagged with byte offsets. `12/5` with no
/// surrounding space is a single rational literal.
pub(crate) fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        if b.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if b.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let numer: BigInt = text[start..i].parse().expect("digits");
            let mut denom = BigInt::one();
            if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                let dstart = i + 1;
                i = dstart;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                denom = text[dstart..i].parse().expect("digits");
                if denom.is_zero() {
                    return Err(ParseError::syntax(start, "zero denominator in rational literal"));
                }
            }
            out.push((Tok::Num(BigRational::new(numer, denom)), start));
            continue;
        }
        if b.is_ascii_alphabetic() || b == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let tok = match &text[start..i] {
                "x" => Tok::X,
                "pw" => Tok::Pw,
                "otherwise" => Tok::Otherwise,
                "undef" => Tok::Undef,
                word => {
                    return Err(ParseError::syntax(start, format!("unknown identifier `{word}`")))
                }
            };
            out.push((tok, start));
            continue;
        }
        let tok = match b {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'{' => Tok::LBrace,
            b'}' => Tok::RBrace,
            b';' => Tok::Semi,
            b':' => Tok::Colon,
            b'=' => Tok::Eq,
            b'<' if bytes.get(i + 1) == Some(&b'=') => {
                i += 1;
                Tok::Le
            }
            b'<' => Tok::Lt,
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError::syntax(start, format!("unexpected character `{ch}`")));
            }
        };
        i += 1;
        out.push((tok, start));
    }
    out.push((Tok::Eof, text.len()));
    Ok(out)
}
