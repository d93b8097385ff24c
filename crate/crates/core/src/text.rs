//! Line-oriented tokenizing shared by the input file formats.

use crate::error::{Error, Result};

pub(crate) struct Token<'a> {
    pub text: &'a str,
    pub column: usize,
}

/// Splits into non-blank, comment-stripped lines of tokens, keeping 1-based
/// line and column numbers.
pub(crate) fn tokenize(text: &str) -> Vec<(usize, Vec<Token<'_>>)> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    tokens.push(Token {
                        text: &content[s..pos],
                        column: content[..s].chars().count() + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if !tokens.is_empty() {
            lines.push((i + 1, tokens));
        }
    }
    lines
}

pub(crate) fn parse_number<T: std::str::FromStr>(line: usize, tok: &Token<'_>) -> Result<T> {
    tok.text.parse().map_err(|_| {
        Error::syntax(
            line,
            tok.column,
            format!("expected a non-negative integer, found `{}`", tok.text),
        )
    })
}

pub(crate) fn keyword_line<'a, 'b>(
    line: usize,
    tokens: &'b [Token<'a>],
    keyword: &str,
) -> Result<&'b [Token<'a>]> {
    if tokens[0].text != keyword {
        return Err(Error::syntax(
            line,
            tokens[0].column,
            format!("expected `{keyword}`, found `{}`", tokens[0].text),
        ));
    }
    Ok(&tokens[1..])
}

pub(crate) fn single_value<T: std::str::FromStr>(line: usize, tokens: &[Token<'_>], keyword: &str) -> Result<T> {
    let rest = keyword_line(line, tokens, keyword)?;
    match rest {
        [tok] => parse_number(line, tok),
        [] => Err(Error::syntax(
            line,
            tokens[0].column + keyword.len(),
            format!("`{keyword}` needs a value"),
        )),
        [_, extra, ..] => Err(Error::syntax(line, extra.column, "unexpected token")),
    }
}

