//! Text grammar for forms and tuples.
//!
//! Terms look like `3*x0^2*x1 - x2^3`: variables are `x0..xn`, coefficients
//! are integers or rationals `p/q`, terms are separated by `+`/`-`, and
//! whitespace is insignificant. Semicolons separate the entries of a tuple.
//! Printing emits the canonical rendering (descending lexicographic term
//! order, unit coefficients and exponents elided), and parsing a canonical
//! rendering returns the identical form.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Form, FormTuple, Monomial};

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(input: &'a str) -> Self {
        Cursor {
            bytes: input.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected digits"));
        }
        Ok(core::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits"))
    }

    fn error(&self, message: &str) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.to_string(),
        }
    }
}

struct RawTerm<F: Field> {
    coeff: F::Elem,
    exps: Vec<(usize, u32)>,
}

fn parse_term<F: Field>(field: &F, cur: &mut Cursor<'_>, negate: bool) -> Result<RawTerm<F>> {
    let mut coeff = field.one();
    let mut exps: Vec<(usize, u32)> = Vec::new();
    loop {
        match cur.peek() {
            Some(b) if b.is_ascii_digit() => {
                let num = cur.digits()?;
                let mut c = field
                    .from_decimal_str(num)
                    .ok_or_else(|| cur.error("bad integer"))?;
                if cur.eat(b'/') {
                    let den = cur.digits()?;
                    let d = field
                        .from_decimal_str(den)
                        .ok_or_else(|| cur.error("bad denominator"))?;
                    c = field
                        .div(&c, &d)
                        .ok_or_else(|| cur.error("zero denominator"))?;
                }
                coeff = field.mul(&coeff, &c);
            }
            Some(b'x') => {
                cur.bump();
                let idx: usize = cur
                    .digits()?
                    .parse()
                    .map_err(|_| cur.error("variable index too large"))?;
                let e: u32 = if cur.eat(b'^') {
                    cur.digits()?
                        .parse()
                        .map_err(|_| cur.error("exponent too large"))?
                } else {
                    1
                };
                exps.push((idx, e));
            }
            _ => return Err(cur.error("expected a coefficient or a variable")),
        }
        if !cur.eat(b'*') {
            break;
        }
    }
    if negate {
        coeff = field.neg(&coeff);
    }
    Ok(RawTerm { coeff, exps })
}

fn parse_raw_form<F: Field>(field: &F, cur: &mut Cursor<'_>) -> Result<Vec<RawTerm<F>>> {
    let mut terms = Vec::new();
    let mut negate = cur.eat(b'-');
    if !negate {
        cur.eat(b'+');
    }
    loop {
        terms.push(parse_term(field, cur, negate)?);
        match cur.peek() {
            Some(b'+') => {
                cur.bump();
                negate = false;
            }
            Some(b'-') => {
                cur.bump();
                negate = true;
            }
            _ => break,
        }
    }
    Ok(terms)
}

fn max_var_index<F: Field>(terms: &[RawTerm<F>]) -> Option<usize> {
    terms
        .iter()
        .flat_map(|t| t.exps.iter().map(|&(i, _)| i))
        .max()
}

fn build_form<F: Field>(field: &F, terms: Vec<RawTerm<F>>, nvars: usize) -> Result<Form<F>> {
    let mut degree: Option<u32> = None;
    let mut built: Vec<(Monomial, F::Elem)> = Vec::with_capacity(terms.len());
    for t in terms {
        let mut exps = alloc::vec![0u32; nvars];
        for (idx, e) in t.exps {
            if idx >= nvars {
                return Err(Error::Parse {
                    offset: 0,
                    message: alloc::format!("variable x{idx} exceeds ambient x0..x{}", nvars - 1),
                });
            }
            exps[idx] += e;
        }
        let m = Monomial::new(exps);
        let d = m.total_degree();
        // A bare "0" term carries no degree information and is dropped.
        if field.is_zero(&t.coeff) {
            continue;
        }
        match degree {
            None => degree = Some(d),
            Some(prev) if prev != d => {
                return Err(Error::Parse {
                    offset: 0,
                    message: alloc::format!("form is not homogeneous: degrees {prev} and {d}"),
                });
            }
            _ => {}
        }
        built.push((m, t.coeff));
    }
    Form::from_terms(field, nvars, degree.unwrap_or(0), built)
}

/// Parse a single form. With `nvars = None` the variable count is inferred
/// as one past the largest index that appears.
pub fn parse_form<F: Field>(field: &F, input: &str, nvars: Option<usize>) -> Result<Form<F>> {
    let mut cur = Cursor::new(input);
    let terms = parse_raw_form(field, &mut cur)?;
    if cur.peek().is_some() {
        return Err(cur.error("trailing input"));
    }
    let nvars = nvars.unwrap_or_else(|| max_var_index(&terms).map_or(1, |m| m + 1));
    build_form(field, terms, nvars)
}

/// Parse a semicolon-separated tuple of forms over a shared variable set.
pub fn parse_tuple<F: Field>(field: &F, input: &str, nvars: Option<usize>) -> Result<FormTuple<F>> {
    let mut cur = Cursor::new(input);
    let mut raw = Vec::new();
    loop {
        raw.push(parse_raw_form(field, &mut cur)?);
        if !cur.eat(b';') {
            break;
        }
    }
    if cur.peek().is_some() {
        return Err(cur.error("trailing input"));
    }
    let inferred = raw
        .iter()
        .filter_map(|t| max_var_index(t))
        .max()
        .map_or(1, |m| m + 1);
    let nvars = nvars.unwrap_or(inferred);
    let forms = raw
        .into_iter()
        .map(|t| build_form(field, t, nvars))
        .collect::<Result<Vec<_>>>()?;
    FormTuple::new(forms)
}

fn push_monomial(out: &mut String, m: &Monomial, coeff_elided: bool) {
    let mut first = true;
    for (j, &e) in m.exps().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first || !coeff_elided {
            out.push('*');
        }
        first = false;
        out.push('x');
        out.push_str(&j.to_string());
        if e > 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

/// Canonical rendering: descending lexicographic term order.
pub fn print_form<F: Field>(field: &F, form: &Form<F>) -> String {
    if form.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let terms: Vec<_> = form.terms().collect();
    for (i, (m, c)) in terms.into_iter().rev().enumerate() {
        let (neg, mag) = field.display_parts(c);
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let elide = mag == "1" && m.total_degree() > 0;
        if !elide {
            out.push_str(&mag);
        }
        push_monomial(&mut out, m, elide);
    }
    out
}

pub fn print_tuple<F: Field>(field: &F, tuple: &FormTuple<F>) -> String {
    let mut out = String::new();
    for (i, f) in tuple.forms().iter().enumerate() {
        if i > 0 {
            out.push_str("; ");
        }
        out.push_str(&print_form(field, f));
    }
    out
}
