//! Pretty-printers emitting the same surface grammar the parsers read.

use alloc::string::String;

use crate::source::{SourceTerm, SourceType};
use crate::target::{ProjIndex, TargetTerm, TargetType};

pub fn pretty_source_type(t: &SourceType) -> String {
    let mut s = String::new();
    src_ty(t, 0, &mut s);
    s
}

fn src_ty(t: &SourceType, min: u8, out: &mut String) {
    match t {
        SourceType::Ground(g) => out.push_str(g),
        SourceType::Arrow(d, c) => {
            let open = min > 0;
            if open {
                out.push('(');
            }
            src_ty(d, 1, out);
            out.push_str(" -> ");
            src_ty(c, 0, out);
            if open {
                out.push(')');
            }
        }
    }
}

pub fn pretty_target_type(t: &TargetType) -> String {
    let mut s = String::new();
    tgt_ty(t, 0, &mut s);
    s
}

fn tgt_ty(t: &TargetType, min: u8, out: &mut String) {
    match t {
        TargetType::Ground(g) => out.push_str(g),
        TargetType::Monad(inner) => {
            out.push_str("M[");
            tgt_ty(inner, 0, out);
            out.push(']');
        }
        TargetType::Prod(l, r) => {
            let open = min > 1;
            if open {
                out.push('(');
            }
            tgt_ty(l, 2, out);
            out.push_str(" * ");
            tgt_ty(r, 1, out);
            if open {
                out.push(')');
            }
        }
        TargetType::Arrow(d, c) => {
            let open = min > 0;
            if open {
                out.push('(');
            }
            tgt_ty(d, 1, out);
            out.push_str(" -> ");
            tgt_ty(c, 0, out);
            if open {
                out.push(')');
            }
        }
    }
}

pub fn pretty_source(t: &SourceTerm) -> String {
    let mut s = String::new();
    src_tm(t, 0, &mut s);
    s
}

fn src_tm(t: &SourceTerm, min: u8, out: &mut String) {
    match t {
        SourceTerm::Var(x) => out.push_str(x),
        SourceTerm::Prim { symbol, .. } => out.push_str(symbol),
        SourceTerm::Lam {
            binder,
            annot,
            body,
        } => {
            let open = min > 0;
            if open {
                out.push('(');
            }
            out.push('\\');
            match annot {
                Some(ty) => {
                    out.push('(');
                    out.push_str(binder);
                    out.push(':');
                    src_ty(ty, 0, out);
                    out.push(')');
                }
                None => out.push_str(binder),
            }
            out.push_str(". ");
            src_tm(body, 0, out);
            if open {
                out.push(')');
            }
        }
        SourceTerm::App(f, a) => {
            let open = min > 1;
            if open {
                out.push('(');
            }
            src_tm(f, 1, out);
            out.push(' ');
            src_tm(a, 2, out);
            if open {
                out.push(')');
            }
        }
    }
}

pub fn pretty_target(t: &TargetTerm) -> String {
    let mut s = String::new();
    tgt_tm(t, 0, &mut s);
    s
}

// Precedence ladder: lambda 0, sum 1, bind 2, application 3, postfix 4, atom 5.
fn tgt_tm(t: &TargetTerm, min: u8, out: &mut String) {
    match t {
        TargetTerm::Var(x) => out.push_str(x),
        TargetTerm::Prim { symbol, .. } => out.push_str(symbol),
        TargetTerm::Zero => out.push('0'),
        TargetTerm::Ret(inner) => {
            out.push('[');
            tgt_tm(inner, 0, out);
            out.push(']');
        }
        TargetTerm::Pair(a, b) => {
            out.push('<');
            tgt_tm(a, 0, out);
            out.push_str(", ");
            tgt_tm(b, 0, out);
            out.push('>');
        }
        TargetTerm::Ann(inner, ty) => {
            out.push('(');
            tgt_tm(inner, 0, out);
            out.push_str(" : ");
            tgt_ty(ty, 0, out);
            out.push(')');
        }
        TargetTerm::Lam {
            binder,
            annot,
            body,
        } => {
            let open = min > 0;
            if open {
                out.push('(');
            }
            out.push('\\');
            match annot {
                Some(ty) => {
                    out.push('(');
                    out.push_str(binder);
                    out.push(':');
                    tgt_ty(ty, 0, out);
                    out.push(')');
                }
                None => out.push_str(binder),
            }
            out.push_str(". ");
            tgt_tm(body, 0, out);
            if open {
                out.push(')');
            }
        }
        TargetTerm::Plus(l, r) => {
            let open = min > 1;
            if open {
                out.push('(');
            }
            tgt_tm(l, 2, out);
            out.push_str(" + ");
            tgt_tm(r, 1, out);
            if open {
                out.push(')');
            }
        }
        TargetTerm::Bind(m, k) => {
            let open = min > 2;
            if open {
                out.push('(');
            }
            tgt_tm(m, 2, out);
            out.push_str(" >>= ");
            tgt_tm(k, 3, out);
            if open {
                out.push(')');
            }
        }
        TargetTerm::App(f, a) => {
            let open = min > 3;
            if open {
                out.push('(');
            }
            tgt_tm(f, 3, out);
            out.push(' ');
            tgt_tm(a, 4, out);
            if open {
                out.push(')');
            }
        }
        TargetTerm::Proj(i, subject) => {
            let open = min > 4;
            if open {
                out.push('(');
            }
            tgt_tm(subject, 4, out);
            out.push_str(match i {
                ProjIndex::Fst => "^1",
                ProjIndex::Snd => "^2",
            });
            if open {
                out.push(')');
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_source, parse_target, parse_target_type};
    use crate::target::alpha_eq;

    #[test]
    fn roundtrips_spec_sample_terms() {
        for text in [
            "\\x. x",
            "\\x. sq (sq x)",
            "\\x. \\y. x",
            "\\(x:real). mul x x",
        ] {
            let t = parse_source(text).unwrap();
            let printed = pretty_source(&t);
            let back = parse_source(&printed).unwrap();
            assert_eq!(t, back, "source roundtrip failed on `{text}` -> `{printed}`");
        }
    }

    #[test]
    fn roundtrips_target_terms_with_operators() {
        for text in [
            "\\p. [p]",
            "\\p. 0",
            "<\\x.x, \\p.[p^2]>",
            "(m >>= k) + (n >>= \\z. [z])",
            "f x^1 y^2",
            "(f x)^1",
            "[<a, b>] >>= \\z. [z^1] + [z^2]",
        ] {
            let t = parse_target(text).unwrap();
            let printed = pretty_target(&t);
            let back = parse_target(&printed).unwrap();
            assert!(
                alpha_eq(&t, &back),
                "target roundtrip failed on `{text}` -> `{printed}`"
            );
        }
    }

    #[test]
    fn prints_types_in_surface_grammar() {
        let t = parse_target_type("(real -> real) * (real * real -> M[real])").unwrap();
        let printed = pretty_target_type(&t);
        assert_eq!(printed, "(real -> real) * (real * real -> M[real])");
        assert_eq!(parse_target_type(&printed).unwrap(), t);
    }
}
