//! Canonical printing with the fewest parentheses the parser needs.

use std::fmt::{self, Display, Write};

use super::{Formula, Term};

const IMPLIES: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const NOT: u8 = 4;

impl Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) | Term::Const(v) => f.write_str(v),
            Term::App(g, args) => {
                f.write_str(g)?;
                write_args(f, args)
            }
        }
    }
}

fn write_args(out: &mut impl Write, args: &[Term]) -> fmt::Result {
    out.write_char('(')?;
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            out.write_str(", ")?;
        }
        write!(out, "{a}")?;
    }
    out.write_char(')')
}

/// `tail` is true when nothing follows the formula inside its enclosing
/// parentheses, which is the only place a quantifier may appear unbracketed.
fn write_formula(out: &mut impl Write, f: &Formula, min_prec: u8, tail: bool) -> fmt::Result {
    match f {
        Formula::Atom(p, args) => {
            out.write_str(p)?;
            if !args.is_empty() {
                write_args(out, args)?;
            }
            Ok(())
        }
        Formula::Not(g) => {
            out.write_char('!')?;
            write_formula(out, g, NOT, tail)
        }
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            let kw = if matches!(f, Formula::Forall(..)) {
                "forall"
            } else {
                "exists"
            };
            if !tail {
                out.write_char('(')?;
            }
            write!(out, "{kw} {v}. ")?;
            write_formula(out, body, 0, true)?;
            if !tail {
                out.write_char(')')?;
            }
            Ok(())
        }
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            let (prec, op, left_min, right_min) = match f {
                Formula::And(..) => (AND, " & ", AND, AND + 1),
                Formula::Or(..) => (OR, " | ", OR, OR + 1),
                _ => (IMPLIES, " -> ", IMPLIES + 1, IMPLIES),
            };
            let parens = prec < min_prec;
            if parens {
                out.write_char('(')?;
            }
            write_formula(out, a, left_min, false)?;
            out.write_str(op)?;
            write_formula(out, b, right_min, parens || tail)?;
            if parens {
                out.write_char(')')?;
            }
            Ok(())
        }
    }
}

impl Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self, 0, true)
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse_formula;

    #[test]
    fn canonical_forms() {
        let cases = [
            ("P(a) & !Q(b)", "P(a) & !Q(b)"),
            ("((P(a)))", "P(a)"),
            ("(A & B) & C", "A & B & C"),
            ("A & (B & C)", "A & (B & C)"),
            ("(A -> B) -> C", "(A -> B) -> C"),
            ("A -> (B -> C)", "A -> B -> C"),
            ("(A | B) & C", "(A | B) & C"),
            ("!(A & B)", "!(A & B)"),
            ("(forall x. P(x)) & Q(a)", "(forall x. P(x)) & Q(a)"),
            ("Q(a) & (forall x. P(x))", "Q(a) & forall x. P(x)"),
            ("(Q(a) & forall x. P(x)) | R", "Q(a) & (forall x. P(x)) | R"),
            ("!(exists x. P(x))", "!exists x. P(x)"),
            ("(!(exists x. P(x))) & A", "!(exists x. P(x)) & A"),
            (
                "forall x. exists y. R(x,f(y))",
                "forall x. exists y. R(x, f(y))",
            ),
        ];
        for (src, expected) in cases {
            let f = parse_formula(src).unwrap();
            let printed = f.to_string();
            assert_eq!(printed, expected, "printing {src}");
            assert_eq!(parse_formula(&printed).unwrap(), f, "re-parsing {printed}");
        }
    }
}
