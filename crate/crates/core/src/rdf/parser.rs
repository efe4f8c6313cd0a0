//! Recursive-descent parser for Turtle, TriG, N-Triples and N-Quads.
//!
//! Blank node labels are rewritten to fresh `b<n>` labels scoped to the
//! returned dataset, so two parses never share blank nodes by accident.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use super::dataset::RdfDataset;
use super::format::RdfFormat;
use super::iri::{resolve, IriError};
use super::term::{is_forbidden_iri_char, BlankNode, GraphName, Iri, Literal, Quad, Subject, Term};
use super::vocab::{rdf, xsd};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("invalid UTF-8 at byte offset {offset}")]
    Encoding { offset: usize },
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("relative IRI <{iri}> at line {line}, column {column} and no base IRI")]
    RelativeIri { iri: String, line: usize, column: usize },
}

impl ParseError {
    /// `(line, column)` of the failure, both 1-based, when known.
    pub fn position(&self) -> Option<(usize, usize)> {
        match self {
            ParseError::Encoding { .. } => None,
            ParseError::Syntax { line, column, .. } | ParseError::RelativeIri { line, column, .. } => {
                Some((*line, *column))
            }
        }
    }
}

/// Parses `bytes` in `format`. Relative IRIs resolve against `base`.
pub fn parse_document(
    bytes: &[u8],
    format: RdfFormat,
    base: Option<&Iri>,
) -> Result<RdfDataset, ParseError> {
    let text = std::str::from_utf8(bytes)
        .map_err(|e| ParseError::Encoding { offset: e.valid_up_to() })?;
    parse_str(text, format, base)
}

pub fn parse_str(text: &str, format: RdfFormat, base: Option<&Iri>) -> Result<RdfDataset, ParseError> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut parser = Parser {
        src: text,
        pos: 0,
        format,
        base: base.cloned(),
        prefixes: BTreeMap::new(),
        bnodes: HashMap::new(),
        counter: 0,
        graph: GraphName::Default,
        out: RdfDataset::new(),
    };
    match format {
        RdfFormat::Turtle | RdfFormat::TriG => parser.turtle_doc()?,
        RdfFormat::NTriples | RdfFormat::NQuads => parser.line_doc()?,
    }
    let mut out = parser.out;
    for (p, ns) in parser.prefixes {
        out.set_prefix(p, ns);
    }
    Ok(out)
}

type PResult<T> = Result<T, ParseError>;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    format: RdfFormat,
    base: Option<Iri>,
    prefixes: BTreeMap<String, Iri>,
    bnodes: HashMap<String, BlankNode>,
    counter: usize,
    graph: GraphName,
    out: RdfDataset,
}

fn is_pn_chars_base(c: char) -> bool {
    matches!(c,
        'A'..='Z' | 'a'..='z'
        | '\u{C0}'..='\u{D6}' | '\u{D8}'..='\u{F6}' | '\u{F8}'..='\u{2FF}'
        | '\u{370}'..='\u{37D}' | '\u{37F}'..='\u{1FFF}' | '\u{200C}'..='\u{200D}'
        | '\u{2070}'..='\u{218F}' | '\u{2C00}'..='\u{2FEF}' | '\u{3001}'..='\u{D7FF}'
        | '\u{F900}'..='\u{FDCF}' | '\u{FDF0}'..='\u{FFFD}' | '\u{10000}'..='\u{EFFFF}')
}

fn is_pn_chars_u(c: char) -> bool {
    is_pn_chars_base(c) || c == '_'
}

fn is_pn_chars(c: char) -> bool {
    is_pn_chars_u(c)
        || c == '-'
        || c.is_ascii_digit()
        || c == '\u{B7}'
        || ('\u{300}'..='\u{36F}').contains(&c)
        || ('\u{203F}'..='\u{2040}').contains(&c)
}

fn is_local_escape(c: char) -> bool {
    matches!(
        c,
        '_' | '~' | '.' | '-' | '!' | '$' | '&' | '\'' | '(' | ')' | '*' | '+' | ',' | ';' | '='
            | '/' | '?' | '#' | '@' | '%'
    )
}

impl<'a> Parser<'a> {
    // ---- cursor ----

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn peek_nth(&self, n: usize) -> Option<char> {
        self.rest().chars().nth(n)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn starts_with(&self, s: &str) -> bool {
        self.rest().starts_with(s)
    }

    fn location(&self, pos: usize) -> (usize, usize) {
        let before = &self.src[..pos];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map(|i| i + 1).unwrap_or(0);
        let column = self.src[line_start..pos].chars().count() + 1;
        (line, column)
    }

    fn err_at<T>(&self, pos: usize, message: impl Into<String>) -> PResult<T> {
        let (line, column) = self.location(pos);
        Err(ParseError::Syntax { line, column, message: message.into() })
    }

    fn err<T>(&self, message: impl Into<String>) -> PResult<T> {
        self.err_at(self.pos, message)
    }

    fn unexpected<T>(&self, expected: &str) -> PResult<T> {
        match self.peek() {
            Some(c) => self.err(format!("expected {expected}, found {c:?}")),
            None => self.err(format!("expected {expected}, found end of input")),
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            self.unexpected(&format!("{c:?}"))
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            match c {
                ' ' | '\t' | '\r' | '\n' => {
                    self.bump();
                }
                '#' => self.skip_comment(),
                _ => break,
            }
        }
    }

    fn skip_comment(&mut self) {
        while let Some(c) = self.peek() {
            if c == '\n' {
                break;
            }
            self.bump();
        }
    }

    fn skip_hspace(&mut self) {
        while matches!(self.peek(), Some(' ' | '\t')) {
            self.bump();
        }
    }

    /// Case-insensitive keyword followed by something that cannot continue a name.
    fn at_keyword(&self, keyword: &str) -> bool {
        let rest = self.rest();
        if rest.len() < keyword.len() || !rest.is_char_boundary(keyword.len()) {
            return false;
        }
        if !rest[..keyword.len()].eq_ignore_ascii_case(keyword) {
            return false;
        }
        let mut after = rest[keyword.len()..].chars();
        match after.next() {
            None => true,
            Some('.') => !after.next().is_some_and(|c| is_pn_chars(c) || c == ':' || c == '.'),
            Some(c) => !(is_pn_chars(c) || c == ':'),
        }
    }

    // ---- shared terms ----

    fn fresh(&mut self) -> BlankNode {
        let b = BlankNode::new(format!("b{}", self.counter));
        self.counter += 1;
        b
    }

    fn labelled(&mut self, label: &str) -> BlankNode {
        if let Some(b) = self.bnodes.get(label) {
            return b.clone();
        }
        let b = self.fresh();
        self.bnodes.insert(label.to_owned(), b.clone());
        b
    }

    fn emit(&mut self, subject: Subject, predicate: Iri, object: Term) {
        self.out.insert(Quad { subject, predicate, object, graph: self.graph.clone() });
    }

    fn read_hex(&mut self, digits: usize) -> PResult<char> {
        let start = self.pos;
        let mut value = 0u32;
        for _ in 0..digits {
            match self.bump().and_then(|c| c.to_digit(16)) {
                Some(d) => value = value * 16 + d,
                None => return self.err_at(start, "invalid hexadecimal escape"),
            }
        }
        char::from_u32(value).map_or_else(|| self.err_at(start, "escape is not a Unicode scalar value"), Ok)
    }

    fn iriref(&mut self) -> PResult<Iri> {
        let start = self.pos;
        self.expect('<')?;
        let mut value = String::new();
        loop {
            match self.bump() {
                None => return self.err_at(start, "unterminated IRI"),
                Some('>') => break,
                Some('\\') => {
                    let c = match self.bump() {
                        Some('u') => self.read_hex(4)?,
                        Some('U') => self.read_hex(8)?,
                        _ => return self.err("only \\u and \\U escapes are allowed in IRIs"),
                    };
                    if is_forbidden_iri_char(c) {
                        return self.err(format!("escaped character {c:?} is not allowed in an IRI"));
                    }
                    value.push(c);
                }
                Some(c) if is_forbidden_iri_char(c) => {
                    return self.err_at(self.pos - c.len_utf8(), format!("character {c:?} is not allowed in an IRI"));
                }
                Some(c) => value.push(c),
            }
        }
        self.resolve_at(start, &value)
    }

    fn resolve_at(&self, pos: usize, value: &str) -> PResult<Iri> {
        match resolve(self.base.as_ref(), value) {
            Ok(iri) => Ok(iri),
            Err(IriError::Relative(iri)) => {
                let (line, column) = self.location(pos);
                Err(ParseError::RelativeIri { iri, line, column })
            }
            Err(e) => self.err_at(pos, e.to_string()),
        }
    }

    fn blank_node_label(&mut self) -> PResult<BlankNode> {
        let start = self.pos;
        if !self.starts_with("_:") {
            return self.unexpected("blank node label");
        }
        self.pos += 2;
        let mut label = String::new();
        match self.peek() {
            Some(c) if is_pn_chars_u(c) || c.is_ascii_digit() => {
                label.push(c);
                self.bump();
            }
            _ => return self.err_at(start, "empty blank node label"),
        }
        loop {
            match self.peek() {
                Some(c) if is_pn_chars(c) => {
                    label.push(c);
                    self.bump();
                }
                Some('.') => {
                    let dots = self.rest().chars().take_while(|c| *c == '.').count();
                    match self.peek_nth(dots) {
                        Some(c) if is_pn_chars(c) => {
                            for _ in 0..dots {
                                label.push('.');
                                self.bump();
                            }
                        }
                        _ => break,
                    }
                }
                _ => break,
            }
        }
        Ok(self.labelled(&label))
    }

    fn langtag(&mut self) -> PResult<String> {
        let start = self.pos;
        self.expect('@')?;
        let mut tag = String::new();
        while let Some(c) = self.peek().filter(|c| c.is_ascii_alphabetic()) {
            tag.push(c);
            self.bump();
        }
        if tag.is_empty() {
            return self.err_at(start, "empty language tag");
        }
        while self.peek() == Some('-') {
            let save = self.pos;
            self.bump();
            let mut part = String::new();
            while let Some(c) = self.peek().filter(|c| c.is_ascii_alphanumeric()) {
                part.push(c);
                self.bump();
            }
            if part.is_empty() {
                return self.err_at(save, "empty language subtag");
            }
            tag.push('-');
            tag.push_str(&part);
        }
        Ok(tag)
    }

    fn echar_or_uchar(&mut self) -> PResult<char> {
        let start = self.pos;
        Ok(match self.bump() {
            Some('t') => '\t',
            Some('b') => '\u{8}',
            Some('n') => '\n',
            Some('r') => '\r',
            Some('f') => '\u{c}',
            Some('"') => '"',
            Some('\'') => '\'',
            Some('\\') => '\\',
            Some('u') => self.read_hex(4)?,
            Some('U') => self.read_hex(8)?,
            _ => return self.err_at(start, "invalid escape sequence"),
        })
    }

    fn string(&mut self, allow_single_and_long: bool) -> PResult<String> {
        let start = self.pos;
        let quote = match self.peek() {
            Some('"') => '"',
            Some('\'') if allow_single_and_long => '\'',
            _ => return self.unexpected("string literal"),
        };
        self.bump();
        let long = allow_single_and_long && self.peek() == Some(quote) && self.peek_nth(1) == Some(quote);
        let mut value = String::new();
        if long {
            self.bump();
            self.bump();
            let closing: String = [quote; 3].iter().collect();
            loop {
                if self.starts_with(&closing) {
                    self.pos += 3;
                    return Ok(value);
                }
                match self.bump() {
                    None => return self.err_at(start, "unterminated long string"),
                    Some('\\') => value.push(self.echar_or_uchar()?),
                    Some(c) => value.push(c),
                }
            }
        }
        loop {
            match self.bump() {
                None => return self.err_at(start, "unterminated string"),
                Some(c) if c == quote => return Ok(value),
                Some('\\') => value.push(self.echar_or_uchar()?),
                Some('\n' | '\r') => return self.err("line break in short string"),
                Some(c) => value.push(c),
            }
        }
    }

    fn literal_suffix(&mut self, lexical: String, pos: usize) -> PResult<Literal> {
        if self.peek() == Some('@') {
            let tag = self.langtag()?;
            return Ok(Literal::lang_string(lexical, &tag));
        }
        if self.starts_with("^^") {
            self.pos += 2;
            let datatype = if self.is_line_format() { self.iriref()? } else { self.iri()? };
            if datatype.as_str() == rdf::LANG_STRING {
                return self.err_at(pos, "rdf:langString literal without a language tag");
            }
            return Ok(Literal::typed(lexical, datatype));
        }
        Ok(Literal::string(lexical))
    }

    fn is_line_format(&self) -> bool {
        matches!(self.format, RdfFormat::NTriples | RdfFormat::NQuads)
    }

    // ---- N-Triples / N-Quads ----

    fn line_doc(&mut self) -> PResult<()> {
        let quads = self.format == RdfFormat::NQuads;
        loop {
            self.skip_ws();
            if self.peek().is_none() {
                return Ok(());
            }
            let subject = match self.peek() {
                Some('<') => Subject::Iri(self.iriref()?),
                Some('_') => Subject::Blank(self.blank_node_label()?),
                _ => return self.unexpected("subject IRI or blank node"),
            };
            self.skip_hspace();
            if self.peek() != Some('<') {
                return self.unexpected("predicate IRI");
            }
            let predicate = self.iriref()?;
            self.skip_hspace();
            let object = match self.peek() {
                Some('<') => Term::Iri(self.iriref()?),
                Some('_') => Term::Blank(self.blank_node_label()?),
                Some('"') => {
                    let pos = self.pos;
                    let lexical = self.string(false)?;
                    Term::Literal(self.literal_suffix(lexical, pos)?)
                }
                _ => return self.unexpected("object"),
            };
            self.skip_hspace();
            let graph = match self.peek() {
                Some('<') if quads => GraphName::Iri(self.iriref()?),
                Some('_') if quads => GraphName::Blank(self.blank_node_label()?),
                _ => GraphName::Default,
            };
            self.skip_hspace();
            self.expect('.')?;
            self.skip_hspace();
            if self.peek() == Some('#') {
                self.skip_comment();
            }
            match self.peek() {
                None | Some('\n' | '\r') => {}
                _ => return self.unexpected("end of line"),
            }
            self.out.insert(Quad { subject, predicate, object, graph });
        }
    }

    // ---- Turtle / TriG ----

    fn turtle_doc(&mut self) -> PResult<()> {
        loop {
            self.skip_ws();
            if self.peek().is_none() {
                return Ok(());
            }
            if self.directive()? {
                continue;
            }
            if self.format == RdfFormat::TriG {
                self.trig_block()?;
            } else {
                self.triples()?;
                self.skip_ws();
                self.expect('.')?;
            }
        }
    }

    fn directive(&mut self) -> PResult<bool> {
        if self.starts_with("@prefix") && self.at_keyword("@prefix") {
            self.pos += "@prefix".len();
            self.prefix_body()?;
            self.skip_ws();
            self.expect('.')?;
            Ok(true)
        } else if self.starts_with("@base") && self.at_keyword("@base") {
            self.pos += "@base".len();
            self.base_body()?;
            self.skip_ws();
            self.expect('.')?;
            Ok(true)
        } else if self.at_keyword("PREFIX") {
            self.pos += "PREFIX".len();
            self.prefix_body()?;
            Ok(true)
        } else if self.at_keyword("BASE") {
            self.pos += "BASE".len();
            self.base_body()?;
            Ok(true)
        } else {
            Ok(false)
        }
    }

    fn prefix_body(&mut self) -> PResult<()> {
        self.skip_ws();
        let prefix = self.pn_prefix()?;
        self.expect(':')?;
        self.skip_ws();
        let namespace = self.iriref()?;
        self.prefixes.insert(prefix, namespace);
        Ok(())
    }

    fn base_body(&mut self) -> PResult<()> {
        self.skip_ws();
        let base = self.iriref()?;
        self.base = Some(base);
        Ok(())
    }

    fn pn_prefix(&mut self) -> PResult<String> {
        let mut prefix = String::new();
        match self.peek() {
            Some(c) if is_pn_chars_base(c) => {
                prefix.push(c);
                self.bump();
            }
            _ => return Ok(prefix),
        }
        loop {
            match self.peek() {
                Some(c) if is_pn_chars(c) => {
                    prefix.push(c);
                    self.bump();
                }
                Some('.') => {
                    let dots = self.rest().chars().take_while(|c| *c == '.').count();
                    match self.peek_nth(dots) {
                        Some(c) if is_pn_chars(c) => {
                            for _ in 0..dots {
                                prefix.push('.');
                                self.bump();
                            }
                        }
                        _ => break,
                    }
                }
                _ => break,
            }
        }
        Ok(prefix)
    }

    fn local_char(&mut self, out: &mut String, first: bool) -> PResult<bool> {
        match self.peek() {
            Some(c) if is_pn_chars_u(c) || c == ':' || c.is_ascii_digit() => {
                out.push(c);
                self.bump();
                Ok(true)
            }
            Some(c) if !first && is_pn_chars(c) => {
                out.push(c);
                self.bump();
                Ok(true)
            }
            Some('%') => {
                let start = self.pos;
                self.bump();
                let (a, b) = (self.bump(), self.bump());
                match (a, b) {
                    (Some(a), Some(b)) if a.is_ascii_hexdigit() && b.is_ascii_hexdigit() => {
                        out.push('%');
                        out.push(a);
                        out.push(b);
                        Ok(true)
                    }
                    _ => self.err_at(start, "invalid percent encoding in local name"),
                }
            }
            Some('\\') => {
                let start = self.pos;
                self.bump();
                match self.bump() {
                    Some(c) if is_local_escape(c) => {
                        out.push(c);
                        Ok(true)
                    }
                    _ => self.err_at(start, "invalid escape in local name"),
                }
            }
            _ => Ok(false),
        }
    }

    fn continues_local(&self, c: char) -> bool {
        is_pn_chars(c) || c == ':' || c == '%' || c == '\\'
    }

    fn prefixed_name(&mut self) -> PResult<Iri> {
        let start = self.pos;
        let prefix = self.pn_prefix()?;
        if self.peek() != Some(':') {
            return self.err_at(start, "expected IRI, prefixed name, or keyword");
        }
        self.bump();
        let mut local = String::new();
        if self.local_char(&mut local, true)? {
            loop {
                if self.peek() == Some('.') {
                    let dots = self.rest().chars().take_while(|c| *c == '.').count();
                    match self.peek_nth(dots) {
                        Some(c) if self.continues_local(c) => {
                            for _ in 0..dots {
                                local.push('.');
                                self.bump();
                            }
                        }
                        _ => break,
                    }
                }
                if !self.local_char(&mut local, false)? {
                    break;
                }
            }
        }
        let Some(namespace) = self.prefixes.get(&prefix) else {
            return self.err_at(start, format!("undefined prefix {prefix:?}"));
        };
        let value = format!("{}{}", namespace.as_str(), local);
        Iri::new(value).or_else(|e| self.err_at(start, e.to_string()))
    }

    fn iri(&mut self) -> PResult<Iri> {
        if self.peek() == Some('<') {
            self.iriref()
        } else {
            self.prefixed_name()
        }
    }

    fn triples(&mut self) -> PResult<()> {
        match self.peek() {
            Some('[') => {
                let start = self.pos;
                self.bump();
                self.skip_ws();
                if self.peek() == Some(']') {
                    self.bump();
                    let node = Subject::Blank(self.fresh());
                    self.skip_ws();
                    return self.predicate_object_list(&node);
                }
                self.pos = start;
                let node = self.blank_node_property_list()?;
                self.skip_ws();
                if !matches!(self.peek(), Some('.' | '}') | None) {
                    self.predicate_object_list(&node)?;
                }
                Ok(())
            }
            Some('(') => {
                let head = self.collection()?;
                let Some(subject) = head.to_subject() else { unreachable!("collections are nodes") };
                self.skip_ws();
                self.predicate_object_list(&subject)
            }
            _ => {
                let subject = self.subject()?;
                self.skip_ws();
                self.predicate_object_list(&subject)
            }
        }
    }

    fn subject(&mut self) -> PResult<Subject> {
        match self.peek() {
            Some('_') if self.peek_nth(1) == Some(':') => Ok(Subject::Blank(self.blank_node_label()?)),
            Some('"' | '\'') => self.err("literals are not allowed as subjects"),
            Some(_) => Ok(Subject::Iri(self.iri()?)),
            None => self.unexpected("subject"),
        }
    }

    fn predicate_object_list(&mut self, subject: &Subject) -> PResult<()> {
        loop {
            let predicate = self.verb()?;
            self.skip_ws();
            self.object_list(subject, &predicate)?;
            self.skip_ws();
            if self.peek() != Some(';') {
                return Ok(());
            }
            while self.peek() == Some(';') {
                self.bump();
                self.skip_ws();
            }
            if matches!(self.peek(), Some('.' | ']' | '}') | None) {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> PResult<Iri> {
        if self.peek() == Some('a') && self.at_keyword("a") {
            self.bump();
            return Ok(rdf::type_());
        }
        match self.peek() {
            Some('_' | '[' | '(' | '"' | '\'') => self.err("predicate must be an IRI"),
            _ => self.iri(),
        }
    }

    fn object_list(&mut self, subject: &Subject, predicate: &Iri) -> PResult<()> {
        loop {
            let object = self.object()?;
            self.emit(subject.clone(), predicate.clone(), object);
            self.skip_ws();
            if self.peek() == Some(',') {
                self.bump();
                self.skip_ws();
            } else {
                return Ok(());
            }
        }
    }

    fn object(&mut self) -> PResult<Term> {
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.iriref()?)),
            Some('_') if self.peek_nth(1) == Some(':') => Ok(Term::Blank(self.blank_node_label()?)),
            Some('[') => Ok(self.blank_node_property_list()?.to_term()),
            Some('(') => self.collection(),
            Some('"' | '\'') => {
                let pos = self.pos;
                let lexical = self.string(true)?;
                Ok(Term::Literal(self.literal_suffix(lexical, pos)?))
            }
            Some(c) if c.is_ascii_digit() || c == '+' || c == '-' => self.numeric(),
            Some('.') if self.peek_nth(1).is_some_and(|c| c.is_ascii_digit()) => self.numeric(),
            Some(_) if self.at_keyword("true") && self.starts_with("true") => {
                self.pos += 4;
                Ok(Term::Literal(Literal::boolean(true)))
            }
            Some(_) if self.at_keyword("false") && self.starts_with("false") => {
                self.pos += 5;
                Ok(Term::Literal(Literal::boolean(false)))
            }
            Some(_) => Ok(Term::Iri(self.prefixed_name()?)),
            None => self.unexpected("object"),
        }
    }

    fn numeric(&mut self) -> PResult<Term> {
        let start = self.pos;
        if matches!(self.peek(), Some('+' | '-')) {
            self.bump();
        }
        let mut int_digits = 0;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
            int_digits += 1;
        }
        let mut frac_digits = 0;
        let mut dot = false;
        if self.peek() == Some('.') {
            let after = self.peek_nth(1);
            let exp_follows = matches!(after, Some('e' | 'E')) && int_digits > 0 && {
                let n2 = self.peek_nth(2);
                n2.is_some_and(|c| c.is_ascii_digit())
                    || (matches!(n2, Some('+' | '-')) && self.peek_nth(3).is_some_and(|c| c.is_ascii_digit()))
            };
            if after.is_some_and(|c| c.is_ascii_digit()) || exp_follows {
                dot = true;
                self.bump();
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.bump();
                    frac_digits += 1;
                }
            }
        }
        if int_digits + frac_digits == 0 {
            return self.err_at(start, "invalid numeric literal");
        }
        let mut exponent = false;
        if matches!(self.peek(), Some('e' | 'E')) {
            let save = self.pos;
            self.bump();
            if matches!(self.peek(), Some('+' | '-')) {
                self.bump();
            }
            let mut exp_digits = 0;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.bump();
                exp_digits += 1;
            }
            if exp_digits == 0 {
                return self.err_at(save, "exponent without digits");
            }
            exponent = true;
        }
        let lexical = &self.src[start..self.pos];
        let datatype = if exponent {
            xsd::double()
        } else if dot {
            xsd::decimal()
        } else {
            xsd::integer()
        };
        Ok(Term::Literal(Literal::typed(lexical, datatype)))
    }

    fn blank_node_property_list(&mut self) -> PResult<Subject> {
        self.expect('[')?;
        self.skip_ws();
        let node = Subject::Blank(self.fresh());
        if self.peek() != Some(']') {
            self.predicate_object_list(&node)?;
            self.skip_ws();
        }
        self.expect(']')?;
        Ok(node)
    }

    fn collection(&mut self) -> PResult<Term> {
        self.expect('(')?;
        let mut items = Vec::new();
        loop {
            self.skip_ws();
            if self.peek() == Some(')') {
                self.bump();
                break;
            }
            if self.peek().is_none() {
                return self.unexpected("')'");
            }
            items.push(self.object()?);
        }
        let mut head = Term::Iri(rdf::nil());
        for item in items.into_iter().rev() {
            let node = self.fresh();
            self.emit(Subject::Blank(node.clone()), rdf::first(), item);
            self.emit(Subject::Blank(node.clone()), rdf::rest(), head);
            head = Term::Blank(node);
        }
        Ok(head)
    }

    fn trig_block(&mut self) -> PResult<()> {
        if self.peek() == Some('{') {
            return self.wrapped_graph(GraphName::Default);
        }
        if self.at_keyword("GRAPH") {
            self.pos += "GRAPH".len();
            self.skip_ws();
            let label = self.graph_label()?;
            self.skip_ws();
            return self.wrapped_graph(label);
        }
        match self.peek() {
            Some('[') => {
                let start = self.pos;
                self.bump();
                self.skip_ws();
                if self.peek() == Some(']') {
                    self.bump();
                    let node = self.fresh();
                    self.skip_ws();
                    if self.peek() == Some('{') {
                        return self.wrapped_graph(GraphName::Blank(node));
                    }
                    self.predicate_object_list(&Subject::Blank(node))?;
                } else {
                    self.pos = start;
                    self.triples()?;
                }
            }
            Some('(') => self.triples()?,
            _ => {
                let subject = self.subject()?;
                self.skip_ws();
                if self.peek() == Some('{') {
                    let graph = match subject {
                        Subject::Iri(i) => GraphName::Iri(i),
                        Subject::Blank(b) => GraphName::Blank(b),
                    };
                    return self.wrapped_graph(graph);
                }
                self.predicate_object_list(&subject)?;
            }
        }
        self.skip_ws();
        self.expect('.')
    }

    fn graph_label(&mut self) -> PResult<GraphName> {
        match self.peek() {
            Some('_') => Ok(GraphName::Blank(self.blank_node_label()?)),
            Some('[') => {
                self.bump();
                self.skip_ws();
                self.expect(']')?;
                Ok(GraphName::Blank(self.fresh()))
            }
            _ => Ok(GraphName::Iri(self.iri()?)),
        }
    }

    fn wrapped_graph(&mut self, graph: GraphName) -> PResult<()> {
        self.expect('{')?;
        self.graph = graph;
        loop {
            self.skip_ws();
            if self.peek() == Some('}') {
                self.bump();
                break;
            }
            self.triples()?;
            self.skip_ws();
            if self.peek() == Some('.') {
                self.bump();
                continue;
            }
            self.skip_ws();
            self.expect('}')?;
            break;
        }
        self.graph = GraphName::Default;
        Ok(())
    }
}
