//! Canonical text for a session AST.

use std::fmt::Write;

use super::{
    AnalogyBody, DomainEntry, Item, MapEntry, Name, PreferenceDecl, SessionAst, WorkingEntry,
};

fn join(names: &[Name]) -> String {
    names
        .iter()
        .map(|n| n.node.as_str())
        .collect::<Vec<_>>()
        .join(", ")
}

fn write_maps(out: &mut String, maps: &[MapEntry], indent: &str) {
    for m in maps {
        let _ = writeln!(out, "{indent}map {} -> {};", m.from.node, m.to.node);
    }
}

/// Prints `ast` so that parsing the result gives back an equal AST.
pub fn print_ast(ast: &SessionAst) -> String {
    let mut out = String::new();
    let mut prev_query = false;
    for (i, item) in ast.items.iter().enumerate() {
        let is_query = matches!(item, Item::Query(_));
        if i > 0 && !(is_query && prev_query) {
            out.push('\n');
        }
        prev_query = is_query;
        match item {
            Item::Domain(d) => {
                let _ = writeln!(out, "domain {} {{", d.name.node);
                for e in &d.entries {
                    let _ = match e {
                        DomainEntry::Objects(os) => writeln!(out, "  objects: {};", join(os)),
                        DomainEntry::Pred(p, k) => writeln!(out, "  pred {}/{k};", p.node),
                        DomainEntry::Func(f, k) => writeln!(out, "  func {}/{k};", f.node),
                        DomainEntry::Fact {
                            predicate,
                            args,
                            value,
                        } => writeln!(out, "  fact {}({}) = {value};", predicate.node, join(args)),
                        DomainEntry::Interp {
                            function,
                            args,
                            value,
                        } => writeln!(
                            out,
                            "  interp {}({}) = {};",
                            function.node,
                            join(args),
                            value.node
                        ),
                    };
                }
                out.push_str("}\n");
            }
            Item::Analogy(a) => {
                let _ = writeln!(
                    out,
                    "analogy {} from {} to {} {{",
                    a.name.node, a.from.node, a.to.node
                );
                match &a.body {
                    AnalogyBody::Single(maps) => write_maps(&mut out, maps, "  "),
                    AnalogyBody::Pieces(pieces) => {
                        for p in pieces {
                            let _ =
                                writeln!(out, "  piece when mentions {{{}}} {{", join(&p.mentions));
                            write_maps(&mut out, &p.maps, "    ");
                            out.push_str("  }\n");
                        }
                    }
                }
                out.push_str("}\n");
            }
            Item::WorkingSet(entries) => {
                out.push_str("workingset {\n");
                for e in entries {
                    let _ = match e {
                        WorkingEntry::Formula(f) => writeln!(out, "  {};", f.node),
                        WorkingEntry::AllAtoms(_) => writeln!(out, "  atoms;"),
                    };
                }
                out.push_str("}\n");
            }
            Item::Preference(p) => {
                let _ = match &p.node {
                    PreferenceDecl::Dominance => writeln!(out, "preference dominance;"),
                    PreferenceDecl::Counts(wp, wn) => {
                        writeln!(out, "preference counts({}, {});", wp.node, wn.node)
                    }
                    PreferenceDecl::Explicit(edges) => {
                        out.push_str("preference explicit {\n");
                        for (a, b) in edges {
                            let _ = writeln!(out, "  prefer {} over {};", a.node, b.node);
                        }
                        writeln!(out, "}}")
                    }
                };
            }
            Item::Closure(c) => {
                let _ = writeln!(out, "closure {};", if c.node { "on" } else { "off" });
            }
            Item::Query(q) => {
                let _ = writeln!(out, "query {};", q.node);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::parse_ast;
    use super::*;

    #[test]
    fn round_trip() {
        let text =
            "domain S{objects:a,b;pred P/1;func f/1;fact P(a)=true;interp f(a)=b;interp f(b)=a;}
            analogy x from S to S{piece when mentions{a}{map a->a;map P->P;}}
            workingset{P(a)&(P(b)|P(f(a)));atoms;}
            preference explicit{prefer x over x;}
            closure off;
            query P(b);query !P(a);";
        let ast = parse_ast(text).unwrap();
        let printed = print_ast(&ast);
        let again = parse_ast(&printed).unwrap();
        assert_eq!(ast, again);
        assert_eq!(print_ast(&again), printed);
        assert!(printed.contains("query P(b);\nquery !P(a);\n"));
        assert!(printed.contains("  piece when mentions {a} {\n    map a -> a;\n"));
    }
}
