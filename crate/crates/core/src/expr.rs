//! Parser for the functor-expression mini-language.
//!
//! Grammar: union binds loosest (`a+b`), composition next (`a.b`, outer
//! first), parentheses group. Leaves are the builtin names, `power:m`,
//! `semirec:t`, and `motif:REF` / `pmotif:REF` where `REF` names a motif
//! family (usually a file path). An unquoted `REF` runs to the next `+`,
//! `(`, `)` or whitespace; double quotes protect anything else. Whitespace
//! is otherwise insignificant.

use crate::error::{Error, ParseError};
use crate::functor::FunctorExpr;
use crate::motif::MotifFamily;

/// Supplies motif families for `motif:`/`pmotif:` leaves; usually backed by
/// the file system, or by a map in tests.
pub trait FamilySource {
    fn load(&mut self, reference: &str) -> Result<MotifFamily, String>;
}

impl<F> FamilySource for F
where
    F: FnMut(&str) -> Result<MotifFamily, String>,
{
    fn load(&mut self, reference: &str) -> Result<MotifFamily, String> {
        self(reference)
    }
}

/// A source that refuses every reference; for contexts without files.
pub struct NoFamilies;

impl FamilySource for NoFamilies {
    fn load(&mut self, _reference: &str) -> Result<MotifFamily, String> {
        Err("motif families are not available in this context".to_string())
    }
}

const LEAF_NAMES: &[&str] = &[
    "disc", "conn", "comp", "rev", "ls", "id", "us", "tc", "rec", "nrec", "uni", "power",
    "semirec", "motif", "pmotif",
];

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text.as_bytes()[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.as_bytes().get(self.pos).copied()
    }

    fn found_here(&self) -> String {
        match self.text[self.pos..].chars().next() {
            Some(c) => format!("`{}`", c),
            None => "end of input".to_string(),
        }
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError {
            position: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.found_here(),
        }
    }
}

/// Parses an expression, resolving `motif:`/`pmotif:` references through
/// `source`.
pub fn parse(text: &str, source: &mut dyn FamilySource) -> Result<FunctorExpr, Error> {
    let mut cursor = Cursor { text, pos: 0 };
    let expr = parse_union(&mut cursor, source)?;
    cursor.skip_ws();
    if cursor.pos != text.len() {
        return Err(cursor.error(&["`+`", "`.`", "end of input"]).into());
    }
    Ok(expr)
}

/// Parses an expression that may not mention motif files.
pub fn parse_closed(text: &str) -> Result<FunctorExpr, Error> {
    parse(text, &mut NoFamilies)
}

fn parse_union(cursor: &mut Cursor, source: &mut dyn FamilySource) -> Result<FunctorExpr, Error> {
    let mut left = parse_composition(cursor, source)?;
    loop {
        cursor.skip_ws();
        if cursor.peek() == Some(b'+') {
            cursor.pos += 1;
            let right = parse_composition(cursor, source)?;
            left = FunctorExpr::union(left, right);
        } else {
            return Ok(left);
        }
    }
}

fn parse_composition(
    cursor: &mut Cursor,
    source: &mut dyn FamilySource,
) -> Result<FunctorExpr, Error> {
    let mut stages = vec![parse_factor(cursor, source)?];
    loop {
        cursor.skip_ws();
        if cursor.peek() == Some(b'.') {
            cursor.pos += 1;
            stages.push(parse_factor(cursor, source)?);
        } else {
            break;
        }
    }
    // `a.b.c` applies c first: fold from the right.
    let mut expr = stages.pop().expect("at least one factor");
    while let Some(outer) = stages.pop() {
        expr = FunctorExpr::compose(outer, expr);
    }
    Ok(expr)
}

fn parse_factor(cursor: &mut Cursor, source: &mut dyn FamilySource) -> Result<FunctorExpr, Error> {
    cursor.skip_ws();
    match cursor.peek() {
        Some(b'(') => {
            cursor.pos += 1;
            let inner = parse_union(cursor, source)?;
            cursor.skip_ws();
            if cursor.peek() != Some(b')') {
                return Err(cursor.error(&["`)`", "`+`", "`.`"]).into());
            }
            cursor.pos += 1;
            Ok(inner)
        }
        Some(c) if c.is_ascii_alphabetic() => parse_leaf(cursor, source),
        _ => Err(cursor.error(&["functor name", "`(`"]).into()),
    }
}

fn parse_leaf(cursor: &mut Cursor, source: &mut dyn FamilySource) -> Result<FunctorExpr, Error> {
    let start = cursor.pos;
    while cursor
        .peek()
        .map(|c| c.is_ascii_alphanumeric() || c == b'_')
        .unwrap_or(false)
    {
        cursor.pos += 1;
    }
    let name = &cursor.text[start..cursor.pos];
    match name {
        "disc" => Ok(FunctorExpr::Disc),
        "conn" => Ok(FunctorExpr::Conn),
        "comp" => Ok(FunctorExpr::Comp),
        "rev" => Ok(FunctorExpr::Rev),
        "ls" => Ok(FunctorExpr::LowerSym),
        "id" => Ok(FunctorExpr::Id),
        "us" => Ok(FunctorExpr::UpperSym),
        "tc" => Ok(FunctorExpr::TransClosure),
        "rec" => Ok(FunctorExpr::Reciprocal),
        "nrec" => Ok(FunctorExpr::NonReciprocal),
        "uni" => Ok(FunctorExpr::Unilateral),
        "power" => Ok(FunctorExpr::Power(parse_count(cursor, "power")?)),
        "semirec" => Ok(FunctorExpr::SemiReciprocal(parse_count(cursor, "semirec")?)),
        "motif" => {
            let (reference, family) = parse_family(cursor, source)?;
            match family {
                MotifFamily::Unpointed(f) => Ok(FunctorExpr::Motif(f)),
                MotifFamily::Pointed(_) => Err(Error::FamilyLoad {
                    reference,
                    message: "family is pointed; use pmotif:".to_string(),
                }),
            }
        }
        "pmotif" => {
            let (reference, family) = parse_family(cursor, source)?;
            match family {
                MotifFamily::Pointed(f) => Ok(FunctorExpr::PointedMotif(f)),
                MotifFamily::Unpointed(_) => Err(Error::FamilyLoad {
                    reference,
                    message: "family is unpointed; use motif:".to_string(),
                }),
            }
        }
        _ => {
            cursor.pos = start;
            Err(cursor
                .error(&[&format!("one of {}", LEAF_NAMES.join("|"))])
                .into())
        }
    }
}

fn expect_colon(cursor: &mut Cursor, what: &str) -> Result<(), Error> {
    if cursor.peek() != Some(b':') {
        return Err(cursor.error(&[&format!("`:` after {}", what)]).into());
    }
    cursor.pos += 1;
    Ok(())
}

fn parse_count(cursor: &mut Cursor, what: &str) -> Result<u32, Error> {
    expect_colon(cursor, what)?;
    let start = cursor.pos;
    while cursor.peek().map(|c| c.is_ascii_digit()).unwrap_or(false) {
        cursor.pos += 1;
    }
    if start == cursor.pos {
        return Err(cursor.error(&["positive integer"]).into());
    }
    let value: u32 = cursor.text[start..cursor.pos].parse().map_err(|_| {
        Error::from(ParseError {
            position: start,
            expected: vec!["positive integer".to_string()],
            found: format!("`{}`", &cursor.text[start..cursor.pos]),
        })
    })?;
    if value == 0 {
        return Err(Error::from(ParseError {
            position: start,
            expected: vec!["positive integer".to_string()],
            found: "`0`".to_string(),
        }));
    }
    Ok(value)
}

fn parse_family(
    cursor: &mut Cursor,
    source: &mut dyn FamilySource,
) -> Result<(String, MotifFamily), Error> {
    expect_colon(cursor, "motif")?;
    let reference = if cursor.peek() == Some(b'"') {
        cursor.pos += 1;
        let start = cursor.pos;
        while cursor.peek().map(|c| c != b'"').unwrap_or(false) {
            cursor.pos += 1;
        }
        if cursor.peek() != Some(b'"') {
            return Err(cursor.error(&["closing `\"`"]).into());
        }
        let r = cursor.text[start..cursor.pos].to_string();
        cursor.pos += 1;
        r
    } else {
        let start = cursor.pos;
        while cursor
            .peek()
            .map(|c| !c.is_ascii_whitespace() && c != b'+' && c != b'(' && c != b')')
            .unwrap_or(false)
        {
            cursor.pos += 1;
        }
        if start == cursor.pos {
            return Err(cursor.error(&["family reference"]).into());
        }
        cursor.text[start..cursor.pos].to_string()
    };
    let family = source
        .load(&reference)
        .map_err(|message| Error::FamilyLoad {
            reference: reference.clone(),
            message,
        })?;
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    Ok((reference, family))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::motif::UnpointedFamily;

    #[test]
    fn precedence_and_associativity() {
        let expr = parse_closed("tc.ls+us").unwrap();
        assert_eq!(
            expr,
            FunctorExpr::union(
                FunctorExpr::compose(FunctorExpr::TransClosure, FunctorExpr::LowerSym),
                FunctorExpr::UpperSym
            )
        );
        // Composition applies the rightmost factor first.
        let chain = parse_closed("tc.ls.power:2").unwrap();
        assert_eq!(
            chain,
            FunctorExpr::compose(
                FunctorExpr::TransClosure,
                FunctorExpr::compose(FunctorExpr::LowerSym, FunctorExpr::Power(2))
            )
        );
        let grouped = parse_closed("(us+tc).rev").unwrap();
        assert_eq!(
            grouped,
            FunctorExpr::compose(
                FunctorExpr::union(FunctorExpr::UpperSym, FunctorExpr::TransClosure),
                FunctorExpr::Rev
            )
        );
    }

    #[test]
    fn whitespace_is_insignificant() {
        assert_eq!(
            parse_closed(" tc . ls ").unwrap(),
            parse_closed("tc.ls").unwrap()
        );
    }

    #[test]
    fn errors_carry_position_and_expectations() {
        let err = parse_closed("tc.").unwrap_err();
        match err {
            Error::Parse(p) => {
                assert_eq!(p.position, 3);
                assert!(p.found.contains("end of input"));
            }
            other => panic!("expected parse error, got {:?}", other),
        }
        let err = parse_closed("frob").unwrap_err();
        match err {
            Error::Parse(p) => assert_eq!(p.position, 0),
            other => panic!("expected parse error, got {:?}", other),
        }
        let err = parse_closed("power:0").unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
        let err = parse_closed("tc tc").unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
    }

    #[test]
    fn motif_leaves_resolve_through_the_source() {
        let mut source = |reference: &str| {
            if reference == "pairs.json" {
                Ok(MotifFamily::Unpointed(UnpointedFamily::new([
                    Graph::complete(2),
                ])))
            } else {
                Err("no such family".to_string())
            }
        };
        let expr = parse("tc.motif:pairs.json", &mut source).unwrap();
        match expr {
            FunctorExpr::Compose(outer, inner) => {
                assert_eq!(*outer, FunctorExpr::TransClosure);
                assert!(matches!(*inner, FunctorExpr::Motif(_)));
            }
            other => panic!("unexpected parse {:?}", other),
        }
        let quoted = parse("motif:\"pairs.json\"", &mut source).unwrap();
        assert!(matches!(quoted, FunctorExpr::Motif(_)));
        assert!(matches!(
            parse("motif:missing.json", &mut source),
            Err(Error::FamilyLoad { .. })
        ));
        // Pointedness mismatch is an error, not a silent coercion.
        let mut pointed_source = |_: &str| {
            Ok(MotifFamily::Pointed(crate::motif::PointedFamily::new([
                crate::graph::PointedGraph::new(Graph::line(2), "a1", "a2").unwrap(),
            ])))
        };
        assert!(matches!(
            parse("motif:x", &mut pointed_source),
            Err(Error::FamilyLoad { .. })
        ));
        assert!(parse("pmotif:x", &mut pointed_source).is_ok());
    }

    #[test]
    fn motif_reference_stops_at_delimiters() {
        let mut source = |reference: &str| {
            assert_eq!(reference, "fam.json");
            Ok(MotifFamily::Unpointed(UnpointedFamily::new([
                Graph::discrete(2),
            ])))
        };
        let expr = parse("(motif:fam.json)+disc", &mut source).unwrap();
        assert!(matches!(expr, FunctorExpr::Union(..)));
    }

    #[test]
    fn empty_families_are_rejected() {
        let mut source = |_: &str| {
            Ok(MotifFamily::Unpointed(UnpointedFamily::new(
                Vec::<Graph>::new(),
            )))
        };
        assert!(matches!(
            parse("motif:x", &mut source),
            Err(Error::EmptyFamily)
        ));
    }
}
