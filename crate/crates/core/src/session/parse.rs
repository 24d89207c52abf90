//! Recursive-descent parser for session files.

use super::{
    AnalogyBody, AnalogyDecl, DomainDecl, DomainEntry, Item, MapEntry, Name, PieceDecl,
    PreferenceDecl, SessionAst, WorkingEntry,
};
use crate::formula::parse_formula_tokens;
use crate::syntax::{Spanned, SyntaxError, Tok, TokenStream};
use crate::truth::TruthValue;

pub fn parse_ast(text: &str) -> Result<SessionAst, SyntaxError> {
    let mut ts = TokenStream::new(text)?;
    let mut items = Vec::new();
    while !ts.at_eof() {
        items.push(item(&mut ts)?);
    }
    Ok(SessionAst { items })
}

fn item(ts: &mut TokenStream) -> Result<Item, SyntaxError> {
    let pos = ts.pos();
    if ts.eat_keyword("domain") {
        return domain(ts).map(Item::Domain);
    }
    if ts.eat_keyword("analogy") {
        return analogy(ts).map(Item::Analogy);
    }
    if ts.eat_keyword("workingset") {
        return working_set(ts).map(Item::WorkingSet);
    }
    if ts.eat_keyword("preference") {
        let p = preference(ts)?;
        return Ok(Item::Preference(Spanned::new(p, pos)));
    }
    if ts.eat_keyword("closure") {
        let on = if ts.eat_keyword("on") {
            true
        } else if ts.eat_keyword("off") {
            false
        } else {
            return Err(ts.unexpected("`on` or `off`"));
        };
        ts.expect(&Tok::Semi)?;
        return Ok(Item::Closure(Spanned::new(on, pos)));
    }
    if ts.eat_keyword("query") {
        let f = formula(ts)?;
        ts.expect(&Tok::Semi)?;
        return Ok(Item::Query(f));
    }
    Err(ts.unexpected("`domain`, `analogy`, `workingset`, `preference`, `closure` or `query`"))
}

fn formula(ts: &mut TokenStream) -> Result<Spanned<crate::formula::Formula>, SyntaxError> {
    let pos = ts.pos();
    let f = parse_formula_tokens(ts, &mut Vec::new())?;
    Ok(Spanned::new(f, pos))
}

/// `ident (, ident)*`
fn ident_list(ts: &mut TokenStream) -> Result<Vec<Name>, SyntaxError> {
    let mut out = vec![ts.ident()?];
    while ts.eat(&Tok::Comma) {
        out.push(ts.ident()?);
    }
    Ok(out)
}

/// `( ident (, ident)* )`
fn arg_list(ts: &mut TokenStream) -> Result<Vec<Name>, SyntaxError> {
    ts.expect(&Tok::LParen)?;
    let args = ident_list(ts)?;
    ts.expect(&Tok::RParen)?;
    Ok(args)
}

fn arity(ts: &mut TokenStream) -> Result<usize, SyntaxError> {
    ts.expect(&Tok::Slash)?;
    let n = ts.number()?;
    n.parse().map_err(|_| {
        SyntaxError::new(
            n.pos,
            format!("arity must be a whole number, found `{}`", n.node),
        )
    })
}

fn domain(ts: &mut TokenStream) -> Result<DomainDecl, SyntaxError> {
    let name = ts.ident()?;
    ts.expect(&Tok::LBrace)?;
    let mut entries = Vec::new();
    while !ts.eat(&Tok::RBrace) {
        let entry = if ts.eat_keyword("objects") {
            ts.expect(&Tok::Colon)?;
            DomainEntry::Objects(ident_list(ts)?)
        } else if ts.eat_keyword("pred") {
            let p = ts.ident()?;
            DomainEntry::Pred(p, arity(ts)?)
        } else if ts.eat_keyword("func") {
            let f = ts.ident()?;
            DomainEntry::Func(f, arity(ts)?)
        } else if ts.eat_keyword("fact") {
            let predicate = ts.ident()?;
            let args = arg_list(ts)?;
            ts.expect(&Tok::Eq)?;
            let v = ts.ident()?;
            let value: TruthValue = v
                .parse()
                .map_err(|e| SyntaxError::new(v.pos, format!("{e}")))?;
            DomainEntry::Fact {
                predicate,
                args,
                value,
            }
        } else if ts.eat_keyword("interp") {
            let function = ts.ident()?;
            let args = arg_list(ts)?;
            ts.expect(&Tok::Eq)?;
            DomainEntry::Interp {
                function,
                args,
                value: ts.ident()?,
            }
        } else {
            return Err(ts.unexpected("`objects`, `pred`, `func`, `fact`, `interp` or `}`"));
        };
        ts.expect(&Tok::Semi)?;
        entries.push(entry);
    }
    Ok(DomainDecl { name, entries })
}

fn maps(ts: &mut TokenStream) -> Result<Vec<MapEntry>, SyntaxError> {
    let mut out = Vec::new();
    while !ts.eat(&Tok::RBrace) {
        ts.expect_keyword("map")?;
        let from = ts.ident()?;
        ts.expect(&Tok::Arrow)?;
        let to = ts.ident()?;
        ts.expect(&Tok::Semi)?;
        out.push(MapEntry { from, to });
    }
    Ok(out)
}

fn analogy(ts: &mut TokenStream) -> Result<AnalogyDecl, SyntaxError> {
    let name = ts.ident()?;
    ts.expect_keyword("from")?;
    let from = ts.ident()?;
    ts.expect_keyword("to")?;
    let to = ts.ident()?;
    ts.expect(&Tok::LBrace)?;
    let body = if ts.is_keyword("piece") {
        let mut pieces = Vec::new();
        while !ts.eat(&Tok::RBrace) {
            ts.expect_keyword("piece")?;
            ts.expect_keyword("when")?;
            ts.expect_keyword("mentions")?;
            ts.expect(&Tok::LBrace)?;
            let mentions = ident_list(ts)?;
            ts.expect(&Tok::RBrace)?;
            ts.expect(&Tok::LBrace)?;
            pieces.push(PieceDecl {
                mentions,
                maps: maps(ts)?,
            });
        }
        AnalogyBody::Pieces(pieces)
    } else {
        AnalogyBody::Single(maps(ts)?)
    };
    Ok(AnalogyDecl {
        name,
        from,
        to,
        body,
    })
}

fn working_set(ts: &mut TokenStream) -> Result<Vec<WorkingEntry>, SyntaxError> {
    ts.expect(&Tok::LBrace)?;
    let mut out = Vec::new();
    while !ts.eat(&Tok::RBrace) {
        // `atoms;` expands to every source ground atom; predicates always
        // take arguments, so a bare `atoms` is never a formula.
        if ts.is_keyword("atoms") && *ts.peek_at(1) == Tok::Semi {
            let pos = ts.advance().1;
            out.push(WorkingEntry::AllAtoms(Spanned::new((), pos)));
        } else {
            out.push(WorkingEntry::Formula(formula(ts)?));
        }
        ts.expect(&Tok::Semi)?;
    }
    Ok(out)
}

fn preference(ts: &mut TokenStream) -> Result<PreferenceDecl, SyntaxError> {
    if ts.eat_keyword("dominance") {
        ts.expect(&Tok::Semi)?;
        return Ok(PreferenceDecl::Dominance);
    }
    if ts.eat_keyword("counts") {
        ts.expect(&Tok::LParen)?;
        let wp = ts.number()?;
        ts.expect(&Tok::Comma)?;
        let wn = ts.number()?;
        ts.expect(&Tok::RParen)?;
        ts.expect(&Tok::Semi)?;
        return Ok(PreferenceDecl::Counts(wp, wn));
    }
    if ts.eat_keyword("explicit") {
        ts.expect(&Tok::LBrace)?;
        let mut edges = Vec::new();
        while !ts.eat(&Tok::RBrace) {
            ts.expect_keyword("prefer")?;
            let better = ts.ident()?;
            ts.expect_keyword("over")?;
            let worse = ts.ident()?;
            ts.expect(&Tok::Semi)?;
            edges.push((better, worse));
        }
        return Ok(PreferenceDecl::Explicit(edges));
    }
    Err(ts.unexpected("`dominance`, `counts` or `explicit`"))
}
