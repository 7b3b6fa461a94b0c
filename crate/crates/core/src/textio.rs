//! Plain-text input formats.
//!
//! Group files: a header line `q m`, then one wreath element per line as
//! `base=[p0;...;p(m-1)] top=p`. Code files: the same header, then one word
//! per line as comma-separated symbols. Blank lines and lines starting with
//! `#` are skipped. Errors carry 1-based line numbers.

use crate::codes::Code;
use crate::error::{Error, Result};
use crate::wreath::{PiPoint, WreathContext, WreathElement};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn at(line: usize) -> impl Fn(Error) -> Error {
    move |e| Error::Parse {
        line,
        message: e.to_string(),
    }
}

fn parse_header(lines: &mut dyn Iterator<Item = (usize, &str)>) -> Result<WreathContext> {
    let (line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing `q m` header".into(),
    })?;
    let nums: Vec<&str> = header.split_whitespace().collect();
    let parsed = match nums.as_slice() {
        [q, m] => q.parse::<usize>().ok().zip(m.parse::<usize>().ok()),
        _ => None,
    };
    let (q, m) = parsed.ok_or_else(|| Error::Parse {
        line,
        message: format!("expected header `q m`, got {header:?}"),
    })?;
    WreathContext::new(q, m).map_err(at(line))
}

pub fn parse_group(text: &str) -> Result<(WreathContext, Vec<WreathElement>)> {
    let mut lines = content_lines(text);
    let ctx = parse_header(&mut lines)?;
    let mut gens = Vec::new();
    for (line, body) in lines {
        let w: WreathElement = body.parse().map_err(at(line))?;
        ctx.ensure_same(&w.context()).map_err(at(line))?;
        gens.push(w);
    }
    Ok((ctx, gens))
}

pub fn parse_code(text: &str) -> Result<Code> {
    let mut lines = content_lines(text);
    let ctx = parse_header(&mut lines)?;
    let mut words = Vec::new();
    let mut first_line = None;
    for (line, body) in lines {
        first_line.get_or_insert(line);
        let w: PiPoint = body.parse().map_err(at(line))?;
        ctx.check_point(&w).map_err(at(line))?;
        words.push(w);
    }
    Code::new(ctx, words).map_err(at(first_line.unwrap_or(1)))
}

/// Serializes a generator list in the group file format.
pub fn format_group(ctx: &WreathContext, gens: &[WreathElement]) -> String {
    let mut out = format!("{ctx}\n");
    for g in gens {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn group_file() {
        let text = "# diagonal plus swap\n2 2\nbase=[[1,0];[1,0]] top=[0,1]\n\nbase=[[0,1];[0,1]] top=[1,0]\n";
        let (ctx, gens) = parse_group(text).unwrap();
        assert_eq!((ctx.q(), ctx.m()), (2, 2));
        assert_eq!(gens.len(), 2);
        assert_eq!(parse_group(&format_group(&ctx, &gens)).unwrap().1, gens);
    }

    #[test]
    fn group_errors_carry_line_numbers() {
        let err = parse_group("2 2\nbase=[[1,0];[1,0]] top=[0,1]\nbase=[[1,1];[0,1]] top=[1,0]\n")
            .unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse_group("2 2\nbase=[[1,0,2];[0,1,2]] top=[0,1]\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = parse_group("2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        assert!(parse_group("").is_err());
    }

    #[test]
    fn code_file() {
        let c = parse_code("2 3\n0,0,0\n1,1,1\n").unwrap();
        assert_eq!(c.len(), 2);
        let err = parse_code("2 3\n0,0,0\n1,2,1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = parse_code("2 3\n0,0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(parse_code("2 3\n").is_err());
    }

    proptest! {
        #[test]
        fn code_round_trip(words in prop::collection::btree_set(prop::collection::vec(0usize..3, 4), 1..20)) {
            let ctx = WreathContext::new(3, 4).unwrap();
            let code = Code::new(ctx, words.into_iter().map(PiPoint::from_values)).unwrap();
            prop_assert_eq!(parse_code(&code.to_string()).unwrap(), code);
        }
    }
}
