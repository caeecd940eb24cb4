//! Syntax of the target calculus: λ-calculus with binary products, a monad
//! (return `[t]`, bind `>>=`) and a commutative monoid (`0`, `+`) at
//! monadic types.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::source::fresh_name;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum TargetType {
    Ground(String),
    Arrow(Box<TargetType>, Box<TargetType>),
    Prod(Box<TargetType>, Box<TargetType>),
    Monad(Box<TargetType>),
}

impl TargetType {
    pub fn ground(name: &str) -> Self {
        TargetType::Ground(String::from(name))
    }

    pub fn real() -> Self {
        Self::ground(crate::source::REAL)
    }

    pub fn arrow(dom: TargetType, cod: TargetType) -> Self {
        TargetType::Arrow(Box::new(dom), Box::new(cod))
    }

    pub fn prod(left: TargetType, right: TargetType) -> Self {
        TargetType::Prod(Box::new(left), Box::new(right))
    }

    pub fn monad(inner: TargetType) -> Self {
        TargetType::Monad(Box::new(inner))
    }
}

/// Projection index: products are binary, so only first and second exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ProjIndex {
    Fst,
    Snd,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TargetTerm {
    Var(String),
    Lam {
        binder: String,
        annot: Option<TargetType>,
        body: Box<TargetTerm>,
    },
    App(Box<TargetTerm>, Box<TargetTerm>),
    Pair(Box<TargetTerm>, Box<TargetTerm>),
    Proj(ProjIndex, Box<TargetTerm>),
    Ret(Box<TargetTerm>),
    Bind(Box<TargetTerm>, Box<TargetTerm>),
    Zero,
    Plus(Box<TargetTerm>, Box<TargetTerm>),
    Prim { symbol: String, ty: TargetType },
    /// Type ascription `(t : T)`. Only produced by the annotating
    /// translation so that checking-mode-only forms (`0` in particular)
    /// become inferable; erased by `erase_annotations` and by
    /// normalization.
    Ann(Box<TargetTerm>, TargetType),
}

impl TargetTerm {
    pub fn var(name: &str) -> Self {
        TargetTerm::Var(String::from(name))
    }

    pub fn lam(binder: &str, body: TargetTerm) -> Self {
        TargetTerm::Lam {
            binder: String::from(binder),
            annot: None,
            body: Box::new(body),
        }
    }

    pub fn lam_ann(binder: &str, annot: TargetType, body: TargetTerm) -> Self {
        TargetTerm::Lam {
            binder: String::from(binder),
            annot: Some(annot),
            body: Box::new(body),
        }
    }

    pub fn app(fun: TargetTerm, arg: TargetTerm) -> Self {
        TargetTerm::App(Box::new(fun), Box::new(arg))
    }

    pub fn apps(fun: TargetTerm, args: &[TargetTerm]) -> Self {
        args.iter().fold(fun, |f, a| Self::app(f, a.clone()))
    }

    pub fn pair(fst: TargetTerm, snd: TargetTerm) -> Self {
        TargetTerm::Pair(Box::new(fst), Box::new(snd))
    }

    pub fn proj1(of: TargetTerm) -> Self {
        TargetTerm::Proj(ProjIndex::Fst, Box::new(of))
    }

    pub fn proj2(of: TargetTerm) -> Self {
        TargetTerm::Proj(ProjIndex::Snd, Box::new(of))
    }

    pub fn ret(inner: TargetTerm) -> Self {
        TargetTerm::Ret(Box::new(inner))
    }

    pub fn bind(action: TargetTerm, continuation: TargetTerm) -> Self {
        TargetTerm::Bind(Box::new(action), Box::new(continuation))
    }

    pub fn plus(left: TargetTerm, right: TargetTerm) -> Self {
        TargetTerm::Plus(Box::new(left), Box::new(right))
    }

    pub fn prim(symbol: &str, ty: TargetType) -> Self {
        TargetTerm::Prim {
            symbol: String::from(symbol),
            ty,
        }
    }

    /// Numeric literal as a primitive constant of type `real`.
    pub fn lit(lexeme: &str) -> Self {
        Self::prim(lexeme, TargetType::real())
    }

    pub fn ann(term: TargetTerm, ty: TargetType) -> Self {
        TargetTerm::Ann(Box::new(term), ty)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            TargetTerm::Var(x) => {
                if !bound.iter().any(|b| b == x) {
                    out.insert(x.clone());
                }
            }
            TargetTerm::Lam { binder, body, .. } => {
                bound.push(binder.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
            TargetTerm::App(a, b) | TargetTerm::Pair(a, b) | TargetTerm::Bind(a, b)
            | TargetTerm::Plus(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            TargetTerm::Proj(_, t) | TargetTerm::Ret(t) | TargetTerm::Ann(t, _) => {
                t.collect_free(bound, out)
            }
            TargetTerm::Zero | TargetTerm::Prim { .. } => {}
        }
    }

    pub fn all_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut BTreeSet<String>) {
        match self {
            TargetTerm::Var(x) => {
                out.insert(x.clone());
            }
            TargetTerm::Lam { binder, body, .. } => {
                out.insert(binder.clone());
                body.collect_names(out);
            }
            TargetTerm::App(a, b) | TargetTerm::Pair(a, b) | TargetTerm::Bind(a, b)
            | TargetTerm::Plus(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
            TargetTerm::Proj(_, t) | TargetTerm::Ret(t) | TargetTerm::Ann(t, _) => {
                t.collect_names(out)
            }
            TargetTerm::Zero | TargetTerm::Prim { .. } => {}
        }
    }

    /// Strips all binder annotations and ascription nodes.
    pub fn erase_annotations(&self) -> TargetTerm {
        match self {
            TargetTerm::Var(_) | TargetTerm::Zero | TargetTerm::Prim { .. } => self.clone(),
            TargetTerm::Ann(t, _) => t.erase_annotations(),
            TargetTerm::Lam { binder, body, .. } => TargetTerm::Lam {
                binder: binder.clone(),
                annot: None,
                body: Box::new(body.erase_annotations()),
            },
            TargetTerm::App(a, b) => TargetTerm::app(a.erase_annotations(), b.erase_annotations()),
            TargetTerm::Pair(a, b) => {
                TargetTerm::pair(a.erase_annotations(), b.erase_annotations())
            }
            TargetTerm::Proj(i, t) => TargetTerm::Proj(*i, Box::new(t.erase_annotations())),
            TargetTerm::Ret(t) => TargetTerm::ret(t.erase_annotations()),
            TargetTerm::Bind(a, b) => {
                TargetTerm::bind(a.erase_annotations(), b.erase_annotations())
            }
            TargetTerm::Plus(a, b) => {
                TargetTerm::plus(a.erase_annotations(), b.erase_annotations())
            }
        }
    }
}

/// Capture-avoiding substitution `term{replacement/var}`.
pub fn subst(term: &TargetTerm, var: &str, replacement: &TargetTerm) -> TargetTerm {
    match term {
        TargetTerm::Var(x) => {
            if x == var {
                replacement.clone()
            } else {
                term.clone()
            }
        }
        TargetTerm::Zero | TargetTerm::Prim { .. } => term.clone(),
        TargetTerm::App(a, b) => {
            TargetTerm::app(subst(a, var, replacement), subst(b, var, replacement))
        }
        TargetTerm::Pair(a, b) => {
            TargetTerm::pair(subst(a, var, replacement), subst(b, var, replacement))
        }
        TargetTerm::Proj(i, t) => TargetTerm::Proj(*i, Box::new(subst(t, var, replacement))),
        TargetTerm::Ann(t, ty) => TargetTerm::ann(subst(t, var, replacement), ty.clone()),
        TargetTerm::Ret(t) => TargetTerm::ret(subst(t, var, replacement)),
        TargetTerm::Bind(a, b) => {
            TargetTerm::bind(subst(a, var, replacement), subst(b, var, replacement))
        }
        TargetTerm::Plus(a, b) => {
            TargetTerm::plus(subst(a, var, replacement), subst(b, var, replacement))
        }
        TargetTerm::Lam {
            binder,
            annot,
            body,
        } => {
            if binder == var {
                return term.clone();
            }
            if !body.free_vars().contains(var) {
                return term.clone();
            }
            let replacement_fv = replacement.free_vars();
            if replacement_fv.contains(binder) {
                let mut avoid = replacement_fv;
                avoid.extend(body.all_names());
                avoid.insert(String::from(var));
                let fresh = fresh_name(binder, &avoid);
                let renamed = subst(body, binder, &TargetTerm::Var(fresh.clone()));
                TargetTerm::Lam {
                    binder: fresh,
                    annot: annot.clone(),
                    body: Box::new(subst(&renamed, var, replacement)),
                }
            } else {
                TargetTerm::Lam {
                    binder: binder.clone(),
                    annot: annot.clone(),
                    body: Box::new(subst(body, var, replacement)),
                }
            }
        }
    }
}

pub fn alpha_eq(a: &TargetTerm, b: &TargetTerm) -> bool {
    fn go(a: &TargetTerm, b: &TargetTerm, la: &mut Vec<String>, lb: &mut Vec<String>) -> bool {
        match (a, b) {
            (TargetTerm::Var(x), TargetTerm::Var(y)) => {
                let ia = la.iter().rposition(|n| n == x);
                let ib = lb.iter().rposition(|n| n == y);
                match (ia, ib) {
                    (Some(i), Some(j)) => i == j,
                    (None, None) => x == y,
                    _ => false,
                }
            }
            (
                TargetTerm::Lam {
                    binder: xa,
                    annot: ta,
                    body: ba,
                },
                TargetTerm::Lam {
                    binder: xb,
                    annot: tb,
                    body: bb,
                },
            ) => {
                if ta != tb {
                    return false;
                }
                la.push(xa.clone());
                lb.push(xb.clone());
                let r = go(ba, bb, la, lb);
                la.pop();
                lb.pop();
                r
            }
            (TargetTerm::App(fa, aa), TargetTerm::App(fb, ab))
            | (TargetTerm::Pair(fa, aa), TargetTerm::Pair(fb, ab))
            | (TargetTerm::Bind(fa, aa), TargetTerm::Bind(fb, ab))
            | (TargetTerm::Plus(fa, aa), TargetTerm::Plus(fb, ab)) => {
                go(fa, fb, la, lb) && go(aa, ab, la, lb)
            }
            (TargetTerm::Proj(ia, ta), TargetTerm::Proj(ib, tb)) => {
                ia == ib && go(ta, tb, la, lb)
            }
            (TargetTerm::Ret(ta), TargetTerm::Ret(tb)) => go(ta, tb, la, lb),
            (TargetTerm::Ann(ta, ya), TargetTerm::Ann(tb, yb)) => {
                ya == yb && go(ta, tb, la, lb)
            }
            (TargetTerm::Zero, TargetTerm::Zero) => true,
            (TargetTerm::Prim { symbol: sa, ty: ta }, TargetTerm::Prim { symbol: sb, ty: tb }) => {
                sa == sb && ta == tb
            }
            _ => false,
        }
    }
    go(a, b, &mut Vec::new(), &mut Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_eq_renames_counter_binders() {
        // λπ.[π] and λρ.[ρ] are the same counter.
        let a = TargetTerm::lam("π", TargetTerm::ret(TargetTerm::var("π")));
        let b = TargetTerm::lam("ρ", TargetTerm::ret(TargetTerm::var("ρ")));
        assert!(alpha_eq(&a, &b));
    }

    #[test]
    fn alpha_eq_zero_vs_return() {
        let a = TargetTerm::lam("π", TargetTerm::Zero);
        let b = TargetTerm::lam("π", TargetTerm::ret(TargetTerm::var("π")));
        assert!(!alpha_eq(&a, &b));
    }

    #[test]
    fn subst_into_bind_respects_binders() {
        // (x >>= λx. [x]){y/x} replaces only the action occurrence.
        let t = TargetTerm::bind(
            TargetTerm::var("x"),
            TargetTerm::lam("x", TargetTerm::ret(TargetTerm::var("x"))),
        );
        let r = subst(&t, "x", &TargetTerm::var("y"));
        let expect = TargetTerm::bind(
            TargetTerm::var("y"),
            TargetTerm::lam("x", TargetTerm::ret(TargetTerm::var("x"))),
        );
        assert_eq!(r, expect);
    }

    #[test]
    fn erase_annotations_is_idempotent() {
        let t = TargetTerm::lam_ann(
            "x",
            TargetType::real(),
            TargetTerm::pair(TargetTerm::var("x"), TargetTerm::Zero),
        );
        let e = t.erase_annotations();
        assert_eq!(e, e.erase_annotations());
        assert!(matches!(&e, TargetTerm::Lam { annot: None, .. }));
    }
}
