//! Recursive-descent parser for the formula grammar.
//!
//! Precedence from loosest to tightest: `->` (right associative), `|`, `&`
//! (both left associative), `!`. A quantifier body extends as far right as
//! possible. Identifiers in term position are variables when bound by an
//! enclosing quantifier and constants otherwise.

use super::{Formula, Term};
use crate::syntax::{SyntaxError, Tok, TokenStream};

pub fn parse_formula(text: &str) -> Result<Formula, SyntaxError> {
    let mut ts = TokenStream::new(text)?;
    let f = formula(&mut ts, &mut Vec::new())?;
    if !ts.at_eof() {
        return Err(ts.unexpected("end of input"));
    }
    Ok(f)
}

pub(crate) fn formula(
    ts: &mut TokenStream,
    bound: &mut Vec<String>,
) -> Result<Formula, SyntaxError> {
    let lhs = disjunction(ts, bound)?;
    if ts.eat(&Tok::Arrow) {
        let rhs = formula(ts, bound)?;
        return Ok(Formula::implies(lhs, rhs));
    }
    Ok(lhs)
}

fn disjunction(ts: &mut TokenStream, bound: &mut Vec<String>) -> Result<Formula, SyntaxError> {
    let mut lhs = conjunction(ts, bound)?;
    while ts.eat(&Tok::Pipe) {
        lhs = Formula::or(lhs, conjunction(ts, bound)?);
    }
    Ok(lhs)
}

fn conjunction(ts: &mut TokenStream, bound: &mut Vec<String>) -> Result<Formula, SyntaxError> {
    let mut lhs = unary(ts, bound)?;
    while ts.eat(&Tok::Amp) {
        lhs = Formula::and(lhs, unary(ts, bound)?);
    }
    Ok(lhs)
}

fn unary(ts: &mut TokenStream, bound: &mut Vec<String>) -> Result<Formula, SyntaxError> {
    if ts.eat(&Tok::Bang) {
        return Ok(Formula::not(unary(ts, bound)?));
    }
    if ts.is_keyword("forall") || ts.is_keyword("exists") {
        let (Tok::Ident(kw), _) = ts.advance() else {
            unreachable!()
        };
        let var = ts.ident()?.node;
        ts.expect(&Tok::Dot)?;
        bound.push(var.clone());
        let body = formula(ts, bound);
        bound.pop();
        let body = body?;
        return Ok(if kw == "forall" {
            Formula::forall(var, body)
        } else {
            Formula::exists(var, body)
        });
    }
    if ts.eat(&Tok::LParen) {
        let f = formula(ts, bound)?;
        ts.expect(&Tok::RParen)?;
        return Ok(f);
    }
    let pred = ts.ident().map_err(|_| ts.unexpected("a formula"))?.node;
    Ok(Formula::Atom(pred, arguments(ts, bound)?))
}

fn arguments(ts: &mut TokenStream, bound: &[String]) -> Result<Vec<Term>, SyntaxError> {
    let mut args = Vec::new();
    if !ts.eat(&Tok::LParen) {
        return Ok(args);
    }
    loop {
        args.push(term(ts, bound)?);
        if ts.eat(&Tok::RParen) {
            return Ok(args);
        }
        if !ts.eat(&Tok::Comma) {
            return Err(ts.unexpected("`,` or `)`"));
        }
    }
}

fn term(ts: &mut TokenStream, bound: &[String]) -> Result<Term, SyntaxError> {
    let name = ts.ident()?.node;
    if *ts.peek() == Tok::LParen {
        return Ok(Term::App(name, arguments(ts, bound)?));
    }
    Ok(if bound.contains(&name) {
        Term::Var(name)
    } else {
        Term::Const(name)
    })
}
