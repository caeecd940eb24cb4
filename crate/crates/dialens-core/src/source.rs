//! Syntax of the source calculus: simply typed λ-calculus over a signature
//! of ground types, extended with typed primitive constants.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

/// A simple type: a named ground type or an arrow between simple types.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum SourceType {
    Ground(String),
    Arrow(Box<SourceType>, Box<SourceType>),
}

impl SourceType {
    pub fn ground(name: &str) -> Self {
        SourceType::Ground(String::from(name))
    }

    /// The distinguished numeric ground type.
    pub fn real() -> Self {
        Self::ground(REAL)
    }

    pub fn arrow(dom: SourceType, cod: SourceType) -> Self {
        SourceType::Arrow(Box::new(dom), Box::new(cod))
    }

    /// Curried arrow `a1 -> a2 -> ... -> cod`.
    pub fn arrows(doms: &[SourceType], cod: SourceType) -> Self {
        doms.iter()
            .rev()
            .fold(cod, |acc, d| Self::arrow(d.clone(), acc))
    }

    pub fn is_real(&self) -> bool {
        matches!(self, SourceType::Ground(g) if g == REAL)
    }

    /// Splits `real -> ... -> real -> real` into its arity, or `None` if the
    /// type has any non-real component.
    pub fn real_arity(&self) -> Option<usize> {
        let mut n = 0;
        let mut t = self;
        loop {
            match t {
                SourceType::Ground(g) if g == REAL => return Some(n),
                SourceType::Arrow(d, c) if d.is_real() => {
                    n += 1;
                    t = c;
                }
                _ => return None,
            }
        }
    }
}

/// Name of the numeric ground type.
pub const REAL: &str = "real";

/// Terms of the source calculus. Binder annotations are optional in the
/// data; the typechecker requires them, the transformation does not.
#[derive(Debug, Clone, PartialEq)]
pub enum SourceTerm {
    Var(String),
    Lam {
        binder: String,
        annot: Option<SourceType>,
        body: Box<SourceTerm>,
    },
    App(Box<SourceTerm>, Box<SourceTerm>),
    Prim { symbol: String, ty: SourceType },
}

impl SourceTerm {
    pub fn var(name: &str) -> Self {
        SourceTerm::Var(String::from(name))
    }

    pub fn lam(binder: &str, body: SourceTerm) -> Self {
        SourceTerm::Lam {
            binder: String::from(binder),
            annot: None,
            body: Box::new(body),
        }
    }

    pub fn lam_ann(binder: &str, annot: SourceType, body: SourceTerm) -> Self {
        SourceTerm::Lam {
            binder: String::from(binder),
            annot: Some(annot),
            body: Box::new(body),
        }
    }

    pub fn app(fun: SourceTerm, arg: SourceTerm) -> Self {
        SourceTerm::App(Box::new(fun), Box::new(arg))
    }

    pub fn apps(fun: SourceTerm, args: &[SourceTerm]) -> Self {
        args.iter().fold(fun, |f, a| Self::app(f, a.clone()))
    }

    pub fn prim(symbol: &str, ty: SourceType) -> Self {
        SourceTerm::Prim {
            symbol: String::from(symbol),
            ty,
        }
    }

    /// Numeric literal, carried as a primitive constant of type `real`.
    pub fn lit(lexeme: &str) -> Self {
        Self::prim(lexeme, SourceType::real())
    }

    /// Free variables, in name order.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            SourceTerm::Var(x) => {
                if !bound.iter().any(|b| b == x) {
                    out.insert(x.clone());
                }
            }
            SourceTerm::Lam { binder, body, .. } => {
                bound.push(binder.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
            SourceTerm::App(f, a) => {
                f.collect_free(bound, out);
                a.collect_free(bound, out);
            }
            SourceTerm::Prim { .. } => {}
        }
    }

    /// Every variable name occurring in the term, bound or free.
    pub fn all_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut BTreeSet<String>) {
        match self {
            SourceTerm::Var(x) => {
                out.insert(x.clone());
            }
            SourceTerm::Lam { binder, body, .. } => {
                out.insert(binder.clone());
                body.collect_names(out);
            }
            SourceTerm::App(f, a) => {
                f.collect_names(out);
                a.collect_names(out);
            }
            SourceTerm::Prim { .. } => {}
        }
    }
}

/// Picks a name based on `base` that does not occur in `avoid`.
pub fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    if !avoid.contains(base) {
        return String::from(base);
    }
    let mut n: u64 = 1;
    loop {
        let candidate = format!("{base}{n}");
        if !avoid.contains(&candidate) {
            return candidate;
        }
        n += 1;
    }
}

/// Capture-avoiding substitution `term{replacement/var}`.
pub fn subst(term: &SourceTerm, var: &str, replacement: &SourceTerm) -> SourceTerm {
    match term {
        SourceTerm::Var(x) => {
            if x == var {
                replacement.clone()
            } else {
                term.clone()
            }
        }
        SourceTerm::Prim { .. } => term.clone(),
        SourceTerm::App(f, a) => {
            SourceTerm::app(subst(f, var, replacement), subst(a, var, replacement))
        }
        SourceTerm::Lam {
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
                // Rename the binder away from the replacement's free variables.
                let mut avoid = replacement_fv;
                avoid.extend(body.all_names());
                avoid.insert(String::from(var));
                let fresh = fresh_name(binder, &avoid);
                let renamed = subst(body, binder, &SourceTerm::Var(fresh.clone()));
                SourceTerm::Lam {
                    binder: fresh,
                    annot: annot.clone(),
                    body: Box::new(subst(&renamed, var, replacement)),
                }
            } else {
                SourceTerm::Lam {
                    binder: binder.clone(),
                    annot: annot.clone(),
                    body: Box::new(subst(body, var, replacement)),
                }
            }
        }
    }
}

/// α-equivalence by locally consistent renaming. Binder annotations must
/// agree where both are present; a missing annotation matches only a
/// missing one.
pub fn alpha_eq(a: &SourceTerm, b: &SourceTerm) -> bool {
    fn go(a: &SourceTerm, b: &SourceTerm, la: &mut Vec<String>, lb: &mut Vec<String>) -> bool {
        match (a, b) {
            (SourceTerm::Var(x), SourceTerm::Var(y)) => {
                let ia = la.iter().rposition(|n| n == x);
                let ib = lb.iter().rposition(|n| n == y);
                match (ia, ib) {
                    (Some(i), Some(j)) => i == j,
                    (None, None) => x == y,
                    _ => false,
                }
            }
            (
                SourceTerm::Lam {
                    binder: xa,
                    annot: ta,
                    body: ba,
                },
                SourceTerm::Lam {
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
            (SourceTerm::App(fa, aa), SourceTerm::App(fb, ab)) => {
                go(fa, fb, la, lb) && go(aa, ab, la, lb)
            }
            (SourceTerm::Prim { symbol: sa, ty: ta }, SourceTerm::Prim { symbol: sb, ty: tb }) => {
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

    fn v(n: &str) -> SourceTerm {
        SourceTerm::var(n)
    }

    #[test]
    fn subst_base_case() {
        let n = SourceTerm::app(v("a"), v("b"));
        assert_eq!(subst(&v("x"), "x", &n), n);
        assert_eq!(subst(&v("y"), "x", &n), v("y"));
    }

    #[test]
    fn subst_shadowing() {
        let t = SourceTerm::lam("x", v("x"));
        let n = v("n");
        assert_eq!(subst(&t, "x", &n), t);
    }

    #[test]
    fn subst_capture_avoidance() {
        // (λy. x){y/x} must rename the binder, giving λy'. y.
        let t = SourceTerm::lam("y", v("x"));
        let r = subst(&t, "x", &v("y"));
        match &r {
            SourceTerm::Lam { binder, body, .. } => {
                assert_ne!(binder, "y");
                assert_eq!(**body, v("y"));
            }
            other => panic!("expected lambda, got {other:?}"),
        }
        assert!(alpha_eq(&r, &SourceTerm::lam("z", v("y"))));
    }

    #[test]
    fn alpha_eq_identity_lambdas() {
        assert!(alpha_eq(
            &SourceTerm::lam("x", v("x")),
            &SourceTerm::lam("y", v("y"))
        ));
    }

    #[test]
    fn alpha_eq_distinguishes_k_from_flip_k() {
        let k = SourceTerm::lam("x", SourceTerm::lam("y", v("x")));
        let other = SourceTerm::lam("a", SourceTerm::lam("b", v("b")));
        assert!(!alpha_eq(&k, &other));
    }

    #[test]
    fn free_vars_of_open_term() {
        let t = SourceTerm::app(SourceTerm::lam("x", SourceTerm::app(v("x"), v("y"))), v("z"));
        let fv = t.free_vars();
        assert!(fv.contains("y") && fv.contains("z") && !fv.contains("x"));
    }

    #[test]
    fn real_arity_unfolds_curried_arrows() {
        let r = SourceType::real();
        let t = SourceType::arrows(&[r.clone(), r.clone()], r.clone());
        assert_eq!(t.real_arity(), Some(2));
        assert_eq!(r.real_arity(), Some(0));
        let g = SourceType::arrow(SourceType::ground("g"), r);
        assert_eq!(g.real_arity(), None);
    }
}
