//! Type checking for both calculi, and the executable soundness check for
//! the transformation: witnesses land in `W(B)`, counters in
//! `C(B) -> M[C(A)]`.
//!
//! The target checker is bidirectional: variables, applications,
//! projections and annotated λs infer; λ, `[t]`, `0` and `+` check against
//! an expected type. `check_soundness` closes the gap for arbitrary
//! transformed terms by checking the annotating translation, whose output
//! is α-equal (after erasure) to the untyped one.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::dialectica::{self, DialError};
use crate::prims::PrimRegistry;
use crate::pretty::{pretty_source_type, pretty_target_type};
use crate::source::{SourceTerm, SourceType};
use crate::target::{ProjIndex, TargetTerm, TargetType};

/// Ordered typing context with shadowing lookup.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Ctx<T> {
    entries: Vec<(String, T)>,
}

impl<T: Clone> Ctx<T> {
    pub fn new() -> Self {
        Ctx {
            entries: Vec::new(),
        }
    }

    pub fn from_pairs(pairs: &[(&str, T)]) -> Self {
        Ctx {
            entries: pairs
                .iter()
                .map(|(n, t)| (String::from(*n), t.clone()))
                .collect(),
        }
    }

    pub fn lookup(&self, name: &str) -> Option<&T> {
        self.entries
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|(_, t)| t)
    }

    pub fn push(&mut self, name: &str, ty: T) {
        self.entries.push((String::from(name), ty));
    }

    pub fn pop(&mut self) {
        self.entries.pop();
    }

    pub fn extended(&self, name: &str, ty: T) -> Self {
        let mut c = self.clone();
        c.push(name, ty);
        c
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &T)> {
        self.entries.iter().map(|(n, t)| (n, t))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub type SourceCtx = Ctx<SourceType>;
pub type TargetCtx = Ctx<TargetType>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeError {
    Unbound(String),
    UnannotatedBinder(String),
    AppMismatch { expected: String, found: String },
    NotAnArrow(String),
    NotAProduct(String),
    NotAMonad(String),
    ZeroNeedsMonad,
    Mismatch { expected: String, found: String },
    AnnotationMismatch { binder: String, expected: String, found: String },
}

impl core::fmt::Display for TypeError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            TypeError::Unbound(x) => write!(f, "unbound variable `{x}`"),
            TypeError::UnannotatedBinder(x) => {
                write!(f, "binder `{x}` needs a type annotation")
            }
            TypeError::AppMismatch { expected, found } => {
                write!(f, "application mismatch: expected argument of type {expected}, found {found}")
            }
            TypeError::NotAnArrow(t) => write!(f, "expected a function, found {t}"),
            TypeError::NotAProduct(t) => write!(f, "expected a pair, found {t}"),
            TypeError::NotAMonad(t) => write!(f, "expected a monadic computation, found {t}"),
            TypeError::ZeroNeedsMonad => write!(f, "0 requires expected monadic type"),
            TypeError::Mismatch { expected, found } => {
                write!(f, "type mismatch: expected {expected}, found {found}")
            }
            TypeError::AnnotationMismatch { binder, expected, found } => {
                write!(f, "binder `{binder}` annotated {found} but used at {expected}")
            }
        }
    }
}

impl core::error::Error for TypeError {}

/// Infers the unique simple type of a source term. λ binders must be
/// annotated.
pub fn infer_source(ctx: &SourceCtx, t: &SourceTerm) -> Result<SourceType, TypeError> {
    match t {
        SourceTerm::Var(x) => ctx
            .lookup(x)
            .cloned()
            .ok_or_else(|| TypeError::Unbound(x.clone())),
        SourceTerm::Prim { ty, .. } => Ok(ty.clone()),
        SourceTerm::Lam {
            binder,
            annot,
            body,
        } => {
            let a = annot
                .clone()
                .ok_or_else(|| TypeError::UnannotatedBinder(binder.clone()))?;
            let b = infer_source(&ctx.extended(binder, a.clone()), body)?;
            Ok(SourceType::arrow(a, b))
        }
        SourceTerm::App(fun, arg) => {
            let tf = infer_source(ctx, fun)?;
            match tf {
                SourceType::Arrow(dom, cod) => {
                    let ta = infer_source(ctx, arg)?;
                    if ta == *dom {
                        Ok(*cod)
                    } else {
                        Err(TypeError::AppMismatch {
                            expected: pretty_source_type(&dom),
                            found: pretty_source_type(&ta),
                        })
                    }
                }
                other => Err(TypeError::NotAnArrow(pretty_source_type(&other))),
            }
        }
    }
}

/// Infers the type of a target term where possible. `0` and unannotated λs
/// cannot be inferred; use `check_target` with an expected type for those.
pub fn infer_target(ctx: &TargetCtx, t: &TargetTerm) -> Result<TargetType, TypeError> {
    match t {
        TargetTerm::Var(x) => ctx
            .lookup(x)
            .cloned()
            .ok_or_else(|| TypeError::Unbound(x.clone())),
        TargetTerm::Prim { ty, .. } => Ok(ty.clone()),
        TargetTerm::Ann(inner, ty) => {
            check_target(ctx, inner, ty)?;
            Ok(ty.clone())
        }
        TargetTerm::Lam {
            binder,
            annot,
            body,
        } => {
            let a = annot
                .clone()
                .ok_or_else(|| TypeError::UnannotatedBinder(binder.clone()))?;
            let b = infer_target(&ctx.extended(binder, a.clone()), body)?;
            Ok(TargetType::arrow(a, b))
        }
        TargetTerm::App(fun, arg) => {
            let tf = infer_target(ctx, fun)?;
            match tf {
                TargetType::Arrow(dom, cod) => {
                    check_target(ctx, arg, &dom)?;
                    Ok(*cod)
                }
                other => Err(TypeError::NotAnArrow(pretty_target_type(&other))),
            }
        }
        TargetTerm::Pair(a, b) => Ok(TargetType::prod(
            infer_target(ctx, a)?,
            infer_target(ctx, b)?,
        )),
        TargetTerm::Proj(i, subject) => match infer_target(ctx, subject)? {
            TargetType::Prod(l, r) => Ok(match i {
                ProjIndex::Fst => *l,
                ProjIndex::Snd => *r,
            }),
            other => Err(TypeError::NotAProduct(pretty_target_type(&other))),
        },
        TargetTerm::Ret(m) => Ok(TargetType::monad(infer_target(ctx, m)?)),
        TargetTerm::Bind(m, k) => {
            let tm = infer_target(ctx, m)?;
            let elem = match tm {
                TargetType::Monad(t) => *t,
                other => return Err(TypeError::NotAMonad(pretty_target_type(&other))),
            };
            // A λ continuation is typed by pushing the element type in,
            // which keeps transformed terms inferable without annotations
            // on every binder.
            if let TargetTerm::Lam {
                binder,
                annot,
                body,
            } = k.as_ref()
            {
                if let Some(a) = annot {
                    if *a != elem {
                        return Err(TypeError::AnnotationMismatch {
                            binder: binder.clone(),
                            expected: pretty_target_type(&elem),
                            found: pretty_target_type(a),
                        });
                    }
                }
                let out = infer_target(&ctx.extended(binder, elem), body)?;
                match out {
                    TargetType::Monad(_) => Ok(out),
                    other => Err(TypeError::NotAMonad(pretty_target_type(&other))),
                }
            } else {
                match infer_target(ctx, k)? {
                    TargetType::Arrow(dom, cod) => {
                        if *dom != elem {
                            return Err(TypeError::Mismatch {
                                expected: pretty_target_type(&elem),
                                found: pretty_target_type(&dom),
                            });
                        }
                        match *cod {
                            TargetType::Monad(_) => Ok(*cod),
                            other => Err(TypeError::NotAMonad(pretty_target_type(&other))),
                        }
                    }
                    other => Err(TypeError::NotAnArrow(pretty_target_type(&other))),
                }
            }
        }
        TargetTerm::Zero => Err(TypeError::ZeroNeedsMonad),
        TargetTerm::Plus(a, b) => {
            // Try either side; whichever infers constrains the other.
            match infer_target(ctx, a) {
                Ok(ta) => {
                    if !matches!(ta, TargetType::Monad(_)) {
                        return Err(TypeError::NotAMonad(pretty_target_type(&ta)));
                    }
                    check_target(ctx, b, &ta)?;
                    Ok(ta)
                }
                Err(_) => {
                    let tb = infer_target(ctx, b)?;
                    if !matches!(tb, TargetType::Monad(_)) {
                        return Err(TypeError::NotAMonad(pretty_target_type(&tb)));
                    }
                    check_target(ctx, a, &tb)?;
                    Ok(tb)
                }
            }
        }
    }
}

/// Checks a target term against an expected type.
pub fn check_target(
    ctx: &TargetCtx,
    t: &TargetTerm,
    expected: &TargetType,
) -> Result<(), TypeError> {
    match (t, expected) {
        (
            TargetTerm::Lam {
                binder,
                annot,
                body,
            },
            TargetType::Arrow(dom, cod),
        ) => {
            if let Some(a) = annot {
                if a != dom.as_ref() {
                    return Err(TypeError::AnnotationMismatch {
                        binder: binder.clone(),
                        expected: pretty_target_type(dom),
                        found: pretty_target_type(a),
                    });
                }
            }
            check_target(&ctx.extended(binder, (**dom).clone()), body, cod)
        }
        (TargetTerm::Lam { .. }, other) => Err(TypeError::NotAnArrow(pretty_target_type(other))),
        (TargetTerm::Pair(a, b), TargetType::Prod(l, r)) => {
            check_target(ctx, a, l)?;
            check_target(ctx, b, r)
        }
        (TargetTerm::Pair(..), other) => Err(TypeError::NotAProduct(pretty_target_type(other))),
        (TargetTerm::Ret(m), TargetType::Monad(inner)) => check_target(ctx, m, inner),
        (TargetTerm::Ret(..), other) => Err(TypeError::NotAMonad(pretty_target_type(other))),
        (TargetTerm::Zero, TargetType::Monad(_)) => Ok(()),
        (TargetTerm::Zero, _) => Err(TypeError::ZeroNeedsMonad),
        (TargetTerm::Plus(a, b), TargetType::Monad(_)) => {
            check_target(ctx, a, expected)?;
            check_target(ctx, b, expected)
        }
        (TargetTerm::Plus(..), other) => Err(TypeError::NotAMonad(pretty_target_type(other))),
        (TargetTerm::Bind(m, k), TargetType::Monad(_)) => {
            let tm = infer_target(ctx, m)?;
            let elem = match tm {
                TargetType::Monad(t) => *t,
                other => return Err(TypeError::NotAMonad(pretty_target_type(&other))),
            };
            check_target(ctx, k, &TargetType::arrow(elem, expected.clone()))
        }
        _ => {
            let found = infer_target(ctx, t)?;
            if found == *expected {
                Ok(())
            } else {
                Err(TypeError::Mismatch {
                    expected: pretty_target_type(expected),
                    found: pretty_target_type(&found),
                })
            }
        }
    }
}

/// One verified judgment in a soundness report.
#[derive(Debug, Clone)]
pub struct Judgment {
    pub label: String,
    pub passed: bool,
    pub detail: Option<String>,
}

/// Outcome of running the soundness theorem on one term.
#[derive(Debug, Clone)]
pub struct SoundnessReport {
    pub judgments: Vec<Judgment>,
}

impl SoundnessReport {
    pub fn passed(&self) -> bool {
        self.judgments.iter().all(|j| j.passed)
    }

    fn push(&mut self, label: String, result: Result<(), String>) {
        match result {
            Ok(()) => self.judgments.push(Judgment {
                label,
                passed: true,
                detail: None,
            }),
            Err(e) => self.judgments.push(Judgment {
                label,
                passed: false,
                detail: Some(e),
            }),
        }
    }
}

/// Runs the executable soundness theorem for `ctx ⊢ t : b`: the witness
/// must check at `W(b)` and each counter at `C(b) -> M[C(A_j)]` under the
/// witness-translated context, and the annotated translation must erase to
/// the untyped one.
pub fn check_soundness(
    ctx: &SourceCtx,
    t: &SourceTerm,
    b: &SourceType,
    reg: &PrimRegistry,
) -> SoundnessReport {
    let mut report = SoundnessReport {
        judgments: Vec::new(),
    };

    let inferred = infer_source(ctx, t);
    report.push(
        String::from("source typing"),
        match &inferred {
            Ok(ty) if ty == b => Ok(()),
            Ok(ty) => Err(format!(
                "inferred {} instead of {}",
                pretty_source_type(ty),
                pretty_source_type(b)
            )),
            Err(e) => Err(format!("{e}")),
        },
    );
    if !report.passed() {
        return report;
    }

    let translated = match dialectica::translate_typed(ctx, t, reg) {
        Ok(tr) => tr,
        Err(e) => {
            report.push(String::from("translation"), Err(format!("{e}")));
            return report;
        }
    };

    let mut wctx = TargetCtx::new();
    for (x, a) in ctx.iter() {
        wctx.push(x, dialectica::witness_type(a));
    }

    let wb = dialectica::witness_type(b);
    report.push(
        String::from("witness typing: t. : W(B)"),
        check_target(&wctx, &translated.witness, &wb).map_err(|e| format!("{e}")),
    );

    let cb = dialectica::counter_type(b);
    for (x, a) in ctx.iter() {
        let counter = translated
            .counters
            .iter()
            .find(|(name, _)| name == x)
            .map(|(_, term)| term);
        let expected = TargetType::arrow(
            cb.clone(),
            TargetType::monad(dialectica::counter_type(a)),
        );
        match counter {
            Some(term) => report.push(
                format!("counter typing: t_{x} : C(B) -> M[C(A)]"),
                check_target(&wctx, term, &expected).map_err(|e| format!("{e}")),
            ),
            None => report.push(
                format!("counter typing: t_{x}"),
                Err(String::from("missing counter in translation")),
            ),
        }
    }

    // The annotated translation must be the untyped one up to erasure.
    let untyped = untyped_translation(ctx, t, reg);
    match untyped {
        Ok((wit, counters)) => {
            report.push(
                String::from("witness erasure agrees with untyped transformation"),
                if crate::target::alpha_eq(&translated.witness.erase_annotations(), &wit) {
                    Ok(())
                } else {
                    Err(String::from("erased annotated witness differs"))
                },
            );
            for (x, counter) in &counters {
                let annotated = translated
                    .counters
                    .iter()
                    .find(|(name, _)| name == x)
                    .map(|(_, term)| term);
                let agree = annotated.is_some_and(|a| {
                    crate::target::alpha_eq(&a.erase_annotations(), counter)
                });
                report.push(
                    format!("counter erasure agrees with untyped transformation ({x})"),
                    if agree {
                        Ok(())
                    } else {
                        Err(String::from("erased annotated counter differs"))
                    },
                );
            }
        }
        Err(e) => report.push(String::from("untyped translation"), Err(format!("{e}"))),
    }

    report
}

fn untyped_translation(
    ctx: &SourceCtx,
    t: &SourceTerm,
    reg: &PrimRegistry,
) -> Result<(TargetTerm, Vec<(String, TargetTerm)>), DialError> {
    let wit = dialectica::witness(t, reg)?;
    let mut counters = Vec::new();
    for (x, _) in ctx.iter() {
        counters.push((x.clone(), dialectica::counter(t, x, reg)?));
    }
    Ok((wit, counters))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_source, parse_target, parse_target_type};

    fn ground(n: &str) -> SourceType {
        SourceType::ground(n)
    }

    #[test]
    fn infers_annotated_identity() {
        let t = parse_source("\\(x:a). x").unwrap();
        let ty = infer_source(&SourceCtx::new(), &t).unwrap();
        assert_eq!(ty, SourceType::arrow(ground("a"), ground("a")));
    }

    #[test]
    fn infers_nested_primitive_applications() {
        let t = parse_source("\\(x:real). sq (sq x)").unwrap();
        let ty = infer_source(&SourceCtx::new(), &t).unwrap();
        assert_eq!(ty, SourceType::arrow(SourceType::real(), SourceType::real()));
    }

    #[test]
    fn rejects_self_application() {
        let ctx = SourceCtx::from_pairs(&[("x", ground("a"))]);
        let t = parse_source("x x").unwrap();
        assert!(matches!(
            infer_source(&ctx, &t),
            Err(TypeError::NotAnArrow(_))
        ));
    }

    #[test]
    fn rejects_unannotated_source_binder() {
        let t = parse_source("\\x. x").unwrap();
        assert!(matches!(
            infer_source(&SourceCtx::new(), &t),
            Err(TypeError::UnannotatedBinder(_))
        ));
    }

    #[test]
    fn checks_variable_counter_at_expected_type() {
        // λπ.[π] : C(a) -> M[C(a)] with C(a) = a_c.
        let t = parse_target("\\p. [p]").unwrap();
        let ty = parse_target_type("a_c -> M[a_c]").unwrap();
        assert!(check_target(&TargetCtx::new(), &t, &ty).is_ok());
    }

    #[test]
    fn infers_bind_with_lambda_continuation() {
        let ctx = TargetCtx::from_pairs(&[
            ("x", TargetType::ground("T")),
            (
                "f",
                TargetType::arrow(
                    TargetType::ground("T"),
                    TargetType::monad(TargetType::ground("U")),
                ),
            ),
        ]);
        let t = parse_target("[x] >>= f").unwrap();
        assert_eq!(
            infer_target(&ctx, &t).unwrap(),
            TargetType::monad(TargetType::ground("U"))
        );
    }

    #[test]
    fn checks_monoid_at_monad_type() {
        let ctx = TargetCtx::from_pairs(&[("x", TargetType::ground("T"))]);
        let t = parse_target("0 + [x]").unwrap();
        let ty = TargetType::monad(TargetType::ground("T"));
        assert!(check_target(&ctx, &t, &ty).is_ok());
        assert_eq!(infer_target(&ctx, &t).unwrap(), ty);
    }

    #[test]
    fn zero_alone_is_not_inferable() {
        assert!(matches!(
            infer_target(&TargetCtx::new(), &TargetTerm::Zero),
            Err(TypeError::ZeroNeedsMonad)
        ));
        let bad = check_target(
            &TargetCtx::new(),
            &TargetTerm::Zero,
            &TargetType::ground("T"),
        );
        assert!(matches!(bad, Err(TypeError::ZeroNeedsMonad)));
    }

    #[test]
    fn ascription_makes_zero_inferable() {
        let ty = TargetType::monad(TargetType::real());
        let t = TargetTerm::ann(TargetTerm::Zero, ty.clone());
        assert_eq!(infer_target(&TargetCtx::new(), &t).unwrap(), ty);
    }
}
