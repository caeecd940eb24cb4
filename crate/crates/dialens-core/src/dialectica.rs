//! The Dialectica transformation: `W`/`C` on simple types, witness and
//! counter translations on terms, and the induced functor from source-term
//! arrows to lenses over the target term category.
//!
//! The arrow counter type is the uncurried one, `C(E -> F) = W(E) * C(F)`,
//! so a counter packages the point together with an output covector and the
//! witness of an arrow pairs a forward map with a reverse-derivative map.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::cat::termcat::{TermArrow, TermCat};
use crate::cat::{ELensArrow, ELensObj};
use crate::prims::PrimRegistry;
use crate::source::{self, fresh_name, SourceTerm, SourceType, REAL};
use crate::target::{subst as tsubst, TargetTerm, TargetType};
use crate::typecheck::{infer_source, SourceCtx};

pub use crate::prims::PrimitiveLens;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DialError {
    UnknownPrim(String),
    UnannotatedBinder(String),
    Typing(String),
}

impl core::fmt::Display for DialError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            DialError::UnknownPrim(s) => write!(f, "unknown primitive symbol `{s}`"),
            DialError::UnannotatedBinder(x) => {
                write!(f, "binder `{x}` needs a type annotation for the typed translation")
            }
            DialError::Typing(msg) => write!(f, "{msg}"),
        }
    }
}

impl core::error::Error for DialError {}

fn ground_w(name: &str) -> TargetType {
    if name == REAL {
        TargetType::real()
    } else {
        TargetType::Ground(format!("{name}_w"))
    }
}

fn ground_c(name: &str) -> TargetType {
    if name == REAL {
        TargetType::real()
    } else {
        TargetType::Ground(format!("{name}_c"))
    }
}

/// `W(α) = α_w` and `W(E -> F) = (W(E) -> W(F)) * (W(E) * C(F) -> M[C(E)])`.
pub fn witness_type(a: &SourceType) -> TargetType {
    match a {
        SourceType::Ground(g) => ground_w(g),
        SourceType::Arrow(e, f) => TargetType::prod(
            TargetType::arrow(witness_type(e), witness_type(f)),
            TargetType::arrow(
                TargetType::prod(witness_type(e), counter_type(f)),
                TargetType::monad(counter_type(e)),
            ),
        ),
    }
}

/// `C(α) = α_c` and `C(E -> F) = W(E) * C(F)`.
pub fn counter_type(a: &SourceType) -> TargetType {
    match a {
        SourceType::Ground(g) => ground_c(g),
        SourceType::Arrow(e, f) => TargetType::prod(witness_type(e), counter_type(f)),
    }
}

const PI: &str = "π";

fn fresh_pi(avoid: &BTreeSet<String>) -> String {
    fresh_name(PI, avoid)
}

/// The witness translation `t.` (untyped):
/// `x. = x`, `(λx.M). = <λx.M., λπ.(λx.M_x) π^1 π^2>`, `(P Q). = P.^1 Q.`.
/// Primitive constants translate through their registered lens witnesses.
pub fn witness(t: &SourceTerm, reg: &PrimRegistry) -> Result<TargetTerm, DialError> {
    match t {
        SourceTerm::Var(x) => Ok(TargetTerm::var(x)),
        SourceTerm::Prim { symbol, .. } => reg
            .witness_of(symbol)
            .map(|w| w.erase_annotations())
            .ok_or_else(|| DialError::UnknownPrim(symbol.clone())),
        SourceTerm::Lam { binder, body, .. } => {
            let mw = witness(body, reg)?;
            let mc = counter(body, binder, reg)?;
            Ok(TargetTerm::pair(
                TargetTerm::lam(binder, mw),
                counter_lambda_wrap(binder, None, mc),
            ))
        }
        SourceTerm::App(p, q) => Ok(TargetTerm::app(
            TargetTerm::proj1(witness(p, reg)?),
            witness(q, reg)?,
        )),
    }
}

/// Builds `λπ. (λx. body) π^1 π^2`, the λ-rule shape shared by the witness
/// second component and the λ counter.
fn counter_lambda_wrap(
    binder: &str,
    pi_annot: Option<(TargetType, TargetType)>,
    body: TargetTerm,
) -> TargetTerm {
    let mut avoid = body.free_vars();
    avoid.insert(String::from(binder));
    let pi = fresh_pi(&avoid);
    let pi_var = TargetTerm::var(&pi);
    let (lam_annot, pair_annot) = match pi_annot {
        Some((binder_ty, pi_ty)) => (Some(binder_ty), Some(pi_ty)),
        None => (None, None),
    };
    let inner = TargetTerm::Lam {
        binder: String::from(binder),
        annot: lam_annot,
        body: alloc::boxed::Box::new(body),
    };
    let applied = TargetTerm::apps(
        inner,
        &[TargetTerm::proj1(pi_var.clone()), TargetTerm::proj2(pi_var)],
    );
    TargetTerm::Lam {
        binder: pi,
        annot: pair_annot,
        body: alloc::boxed::Box::new(applied),
    }
}

/// The counter translation `t_y` (untyped):
/// `x_y = λπ.[π]` if `x = y` else `λπ.0`;
/// `(λx.M)_y = λπ.(λx.M_y) π^1 π^2`;
/// `(P Q)_y = λπ.(P_y <Q., π> + P.^2 <Q., π> >>= Q_y)`;
/// primitives contribute nothing: `c_y = λπ.0`.
pub fn counter(t: &SourceTerm, y: &str, reg: &PrimRegistry) -> Result<TargetTerm, DialError> {
    match t {
        SourceTerm::Var(x) => {
            if x == y {
                Ok(TargetTerm::lam(PI, TargetTerm::ret(TargetTerm::var(PI))))
            } else {
                Ok(TargetTerm::lam(PI, TargetTerm::Zero))
            }
        }
        SourceTerm::Prim { symbol, .. } => {
            if reg.witness_of(symbol).is_none() {
                return Err(DialError::UnknownPrim(symbol.clone()));
            }
            Ok(TargetTerm::lam(PI, TargetTerm::Zero))
        }
        SourceTerm::Lam {
            binder,
            annot,
            body,
        } => {
            if binder == y {
                // Rename the bound variable so the rule reads occurrences
                // of `y` as the outer variable, which cannot occur under a
                // shadowing binder.
                let mut avoid = body.all_names();
                avoid.insert(String::from(y));
                let fresh = fresh_name(binder, &avoid);
                let renamed = SourceTerm::Lam {
                    binder: fresh.clone(),
                    annot: annot.clone(),
                    body: alloc::boxed::Box::new(source::subst(
                        body,
                        binder,
                        &SourceTerm::Var(fresh),
                    )),
                };
                return counter(&renamed, y, reg);
            }
            let mc = counter(body, y, reg)?;
            Ok(counter_lambda_wrap(binder, None, mc))
        }
        SourceTerm::App(p, q) => {
            let pc = counter(p, y, reg)?;
            let qc = counter(q, y, reg)?;
            let pw = witness(p, reg)?;
            let qw = witness(q, reg)?;
            Ok(app_counter(pc, qc, pw, qw, None))
        }
    }
}

/// Builds `λπ.( P_y <Q., π> + P.^2 <Q., π> >>= Q_y )`.
fn app_counter(
    pc: TargetTerm,
    qc: TargetTerm,
    pw: TargetTerm,
    qw: TargetTerm,
    pi_annot: Option<TargetType>,
) -> TargetTerm {
    let mut avoid = pc.free_vars();
    avoid.extend(qc.free_vars());
    avoid.extend(pw.free_vars());
    avoid.extend(qw.free_vars());
    let pi = fresh_pi(&avoid);
    let pi_var = TargetTerm::var(&pi);
    let left = TargetTerm::app(pc, TargetTerm::pair(qw.clone(), pi_var.clone()));
    let right = TargetTerm::bind(
        TargetTerm::app(TargetTerm::proj2(pw), TargetTerm::pair(qw, pi_var)),
        qc,
    );
    TargetTerm::Lam {
        binder: pi,
        annot: pi_annot,
        body: alloc::boxed::Box::new(TargetTerm::plus(left, right)),
    }
}

/// A typed translation of `ctx ⊢ t`: the same terms as `witness`/`counter`
/// with every binder annotated and every `0` ascribed, so the bidirectional
/// checker can verify them without guessing.
#[derive(Debug, Clone)]
pub struct TypedTranslation {
    pub ty: SourceType,
    pub witness: TargetTerm,
    /// One annotated counter per context variable, in context order.
    pub counters: Vec<(String, TargetTerm)>,
}

pub fn translate_typed(
    ctx: &SourceCtx,
    t: &SourceTerm,
    reg: &PrimRegistry,
) -> Result<TypedTranslation, DialError> {
    let (wit, ty) = witness_typed(ctx, t, reg)?;
    let mut counters = Vec::new();
    for (x, _) in ctx.iter() {
        counters.push((x.clone(), counter_typed(ctx, t, x, reg)?));
    }
    Ok(TypedTranslation {
        ty,
        witness: wit,
        counters,
    })
}

fn typing_err(e: crate::typecheck::TypeError) -> DialError {
    match e {
        crate::typecheck::TypeError::UnannotatedBinder(x) => DialError::UnannotatedBinder(x),
        other => DialError::Typing(format!("{other}")),
    }
}

fn witness_typed(
    ctx: &SourceCtx,
    t: &SourceTerm,
    reg: &PrimRegistry,
) -> Result<(TargetTerm, SourceType), DialError> {
    match t {
        SourceTerm::Var(x) => {
            let ty = ctx
                .lookup(x)
                .cloned()
                .ok_or_else(|| DialError::Typing(format!("unbound variable `{x}`")))?;
            Ok((TargetTerm::var(x), ty))
        }
        SourceTerm::Prim { symbol, ty } => {
            let w = reg
                .witness_of(symbol)
                .ok_or_else(|| DialError::UnknownPrim(symbol.clone()))?;
            Ok((w, ty.clone()))
        }
        SourceTerm::Lam {
            binder,
            annot,
            body,
        } => {
            let a = annot
                .clone()
                .ok_or_else(|| DialError::UnannotatedBinder(binder.clone()))?;
            let inner = ctx.extended(binder, a.clone());
            let (mw, b) = witness_typed(&inner, body, reg)?;
            let mc = counter_typed(&inner, body, binder, reg)?;
            let wa = witness_type(&a);
            let pi_ty = TargetType::prod(wa.clone(), counter_type(&b));
            let fwd = TargetTerm::lam_ann(binder, wa.clone(), mw);
            let bwd = counter_lambda_wrap(binder, Some((wa, pi_ty)), mc);
            Ok((
                TargetTerm::pair(fwd, bwd),
                SourceType::arrow(a, b),
            ))
        }
        SourceTerm::App(p, q) => {
            let (pw, pt) = witness_typed(ctx, p, reg)?;
            let (qw, qt) = witness_typed(ctx, q, reg)?;
            match pt {
                SourceType::Arrow(dom, cod) => {
                    if *dom != qt {
                        return Err(DialError::Typing(format!(
                            "application mismatch: expected {}, found {}",
                            crate::pretty::pretty_source_type(&dom),
                            crate::pretty::pretty_source_type(&qt)
                        )));
                    }
                    Ok((TargetTerm::app(TargetTerm::proj1(pw), qw), *cod))
                }
                other => Err(DialError::Typing(format!(
                    "expected a function, found {}",
                    crate::pretty::pretty_source_type(&other)
                ))),
            }
        }
    }
}

fn counter_typed(
    ctx: &SourceCtx,
    t: &SourceTerm,
    y: &str,
    reg: &PrimRegistry,
) -> Result<TargetTerm, DialError> {
    let a_y = ctx
        .lookup(y)
        .cloned()
        .ok_or_else(|| DialError::Typing(format!("counter variable `{y}` not in context")))?;
    let zero_ty = TargetType::monad(counter_type(&a_y));
    match t {
        SourceTerm::Var(x) => {
            let b = ctx
                .lookup(x)
                .cloned()
                .ok_or_else(|| DialError::Typing(format!("unbound variable `{x}`")))?;
            let cb = counter_type(&b);
            if x == y {
                Ok(TargetTerm::lam_ann(
                    PI,
                    cb,
                    TargetTerm::ret(TargetTerm::var(PI)),
                ))
            } else {
                Ok(TargetTerm::lam_ann(
                    PI,
                    cb,
                    TargetTerm::ann(TargetTerm::Zero, zero_ty),
                ))
            }
        }
        SourceTerm::Prim { symbol, ty } => {
            if reg.witness_of(symbol).is_none() {
                return Err(DialError::UnknownPrim(symbol.clone()));
            }
            Ok(TargetTerm::lam_ann(
                PI,
                counter_type(ty),
                TargetTerm::ann(TargetTerm::Zero, zero_ty),
            ))
        }
        SourceTerm::Lam {
            binder,
            annot,
            body,
        } => {
            if binder == y {
                let mut avoid = body.all_names();
                avoid.insert(String::from(y));
                let fresh = fresh_name(binder, &avoid);
                let renamed = SourceTerm::Lam {
                    binder: fresh.clone(),
                    annot: annot.clone(),
                    body: alloc::boxed::Box::new(source::subst(
                        body,
                        binder,
                        &SourceTerm::Var(fresh),
                    )),
                };
                return counter_typed(ctx, &renamed, y, reg);
            }
            let a = annot
                .clone()
                .ok_or_else(|| DialError::UnannotatedBinder(binder.clone()))?;
            let inner = ctx.extended(binder, a.clone());
            let b = infer_source(&inner, body).map_err(typing_err)?;
            let mc = counter_typed(&inner, body, y, reg)?;
            let wa = witness_type(&a);
            let pi_ty = TargetType::prod(wa.clone(), counter_type(&b));
            Ok(counter_lambda_wrap(binder, Some((wa, pi_ty)), mc))
        }
        SourceTerm::App(p, q) => {
            let b = infer_source(ctx, t).map_err(typing_err)?;
            let pc = counter_typed(ctx, p, y, reg)?;
            let qc = counter_typed(ctx, q, y, reg)?;
            let (pw, _) = witness_typed(ctx, p, reg)?;
            let (qw, _) = witness_typed(ctx, q, reg)?;
            Ok(app_counter(pc, qc, pw, qw, Some(counter_type(&b))))
        }
    }
}

/// A source-category arrow `z:A ⊢ M : B`.
#[derive(Debug, Clone)]
pub struct SourceArrow {
    pub var: String,
    pub dom: SourceType,
    pub term: SourceTerm,
}

impl SourceArrow {
    pub fn new(var: &str, dom: SourceType, term: SourceTerm) -> Self {
        SourceArrow {
            var: String::from(var),
            dom,
            term,
        }
    }
}

/// Image of a source arrow under the functor into lenses over the target
/// term category: objects become trivial bundles `W(A) * M[C(A)]` over
/// `W(A)`; arrows pair the witness with the backward leg
/// `<z^1, z^2 >>= M_(z^1)>`.
pub fn functor_image(
    arrow: &SourceArrow,
    reg: &PrimRegistry,
) -> Result<ELensArrow<TermCat>, DialError> {
    let z = &arrow.var;
    let ctx = SourceCtx::from_pairs(&[(z.as_str(), arrow.dom.clone())]);
    for v in arrow.term.free_vars() {
        if &v != z {
            return Err(DialError::Typing(format!(
                "arrow term has a free variable `{v}` other than `{z}`"
            )));
        }
    }
    let b = infer_source(&ctx, &arrow.term).map_err(typing_err)?;

    let wa = witness_type(&arrow.dom);
    let wb = witness_type(&b);
    let mca = TargetType::monad(counter_type(&arrow.dom));
    let mcb = TargetType::monad(counter_type(&b));

    let src = ELensObj {
        base: wa.clone(),
        fiber: mca.clone(),
    };
    let tgt = ELensObj {
        base: wb.clone(),
        fiber: mcb.clone(),
    };

    let fwd = TermArrow::new(z, wa.clone(), wb, witness(&arrow.term, reg)?);

    let zv = TargetTerm::var(z);
    let counter_at_z1 = tsubst(
        &counter(&arrow.term, z, reg)?,
        z,
        &TargetTerm::proj1(zv.clone()),
    );
    let bwd_body = TargetTerm::pair(
        TargetTerm::proj1(zv.clone()),
        TargetTerm::bind(TargetTerm::proj2(zv), counter_at_z1),
    );
    let bwd = TermArrow::new(
        z,
        TargetType::prod(wa.clone(), mcb),
        TargetType::prod(wa, mca),
        bwd_body,
    );

    Ok(ELensArrow {
        src,
        tgt,
        fwd,
        bwd,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_source, parse_target, parse_target_type};
    use crate::target::alpha_eq;

    fn reg() -> PrimRegistry {
        PrimRegistry::default()
    }

    #[test]
    fn witness_type_of_ground_and_arrow() {
        let a = SourceType::ground("a");
        assert_eq!(witness_type(&a), TargetType::ground("a_w"));
        assert_eq!(counter_type(&a), TargetType::ground("a_c"));

        // W(a -> a) = (a_w -> a_w) * (a_w * a_c -> M[a_c])
        let arrow = SourceType::arrow(a.clone(), a.clone());
        let expect = parse_target_type("(a_w -> a_w) * (a_w * a_c -> M[a_c])").unwrap();
        assert_eq!(witness_type(&arrow), expect);
        // C(a -> a) = a_w * a_c
        assert_eq!(
            counter_type(&arrow),
            parse_target_type("a_w * a_c").unwrap()
        );
    }

    #[test]
    fn witness_type_of_second_order_arrow() {
        // W((a -> a) -> a) unfolds with C(a -> a) = a_w * a_c.
        let a = SourceType::ground("a");
        let aa = SourceType::arrow(a.clone(), a.clone());
        let t = SourceType::arrow(aa, a);
        let expect = parse_target_type(
            "(((a_w -> a_w) * (a_w * a_c -> M[a_c])) -> a_w) * ((((a_w -> a_w) * (a_w * a_c -> M[a_c])) * a_c) -> M[a_w * a_c])",
        )
        .unwrap();
        assert_eq!(witness_type(&t), expect);
    }

    #[test]
    fn counter_type_unfolds_twice() {
        // C(a -> (a -> a)) = a_w * (a_w * a_c)
        let a = SourceType::ground("a");
        let t = SourceType::arrow(a.clone(), SourceType::arrow(a.clone(), a.clone()));
        assert_eq!(
            counter_type(&t),
            parse_target_type("a_w * (a_w * a_c)").unwrap()
        );
    }

    #[test]
    fn variable_witness_and_counters() {
        let x = SourceTerm::var("x");
        assert_eq!(witness(&x, &reg()).unwrap(), TargetTerm::var("x"));
        assert!(alpha_eq(
            &counter(&x, "x", &reg()).unwrap(),
            &parse_target("\\p. [p]").unwrap()
        ));
        assert!(alpha_eq(
            &counter(&x, "y", &reg()).unwrap(),
            &parse_target("\\p. 0").unwrap()
        ));
    }

    #[test]
    fn application_witness_shape() {
        let t = parse_source("p q").unwrap();
        let w = witness(&t, &reg()).unwrap();
        let expect = TargetTerm::app(
            TargetTerm::proj1(TargetTerm::var("p")),
            TargetTerm::var("q"),
        );
        assert_eq!(w, expect);
    }

    #[test]
    fn application_counter_shape() {
        let t = parse_source("p q").unwrap();
        let c = counter(&t, "y", &reg()).unwrap();
        // λπ.( P_y <Q., π> + P.^2 <Q., π> >>= Q_y )
        let expect =
            parse_target("\\π. (\\π. 0) <q, π> + p^2 <q, π> >>= (\\π. 0)").unwrap();
        assert!(alpha_eq(&c, &expect), "got {:?}", c);
    }

    #[test]
    fn lambda_witness_pairs_forward_with_its_own_counter() {
        // (λx.M). = <λx.M., (λx.M)_x> up to α.
        let t = parse_source("\\x. sq x").unwrap();
        let w = witness(&t, &reg()).unwrap();
        let c = counter(&t, "x", &reg()).unwrap();
        match w {
            TargetTerm::Pair(fst, snd) => {
                let body = witness(&parse_source("sq x").unwrap(), &reg()).unwrap();
                assert!(alpha_eq(&fst, &TargetTerm::lam("x", body)));
                // The second component is (λx.M)_x only because x is bound:
                // the rule renames the binder, leaving a non-matching
                // variable underneath.
                assert!(alpha_eq(&snd, &c));
            }
            other => panic!("expected pair, got {other:?}"),
        }
    }

    #[test]
    fn shadowed_counter_is_zero() {
        // (λx.x)_x must treat the bound x as non-matching.
        let t = parse_source("\\x. x").unwrap();
        let c = counter(&t, "x", &reg()).unwrap();
        let expect = parse_target("\\π. (\\x. \\ρ. 0) π^1 π^2").unwrap();
        assert!(alpha_eq(&c, &expect), "got {c:?}");
    }

    #[test]
    fn unknown_primitive_is_reported() {
        let t = SourceTerm::prim("sin", SourceType::arrow(SourceType::real(), SourceType::real()));
        assert_eq!(
            witness(&t, &reg()).unwrap_err(),
            DialError::UnknownPrim(String::from("sin"))
        );
    }

    #[test]
    fn typed_translation_erases_to_untyped() {
        let ctx = SourceCtx::from_pairs(&[("u", SourceType::real())]);
        let t = parse_source("\\(x:real). add x (mul u x)").unwrap();
        let typed = translate_typed(&ctx, &t, &reg()).unwrap();
        let untyped = witness(&t, &reg()).unwrap();
        assert!(alpha_eq(&typed.witness.erase_annotations(), &untyped));
        let c_typed = &typed.counters[0];
        assert_eq!(c_typed.0, "u");
        let c_untyped = counter(&t, "u", &reg()).unwrap();
        assert!(alpha_eq(&c_typed.1.erase_annotations(), &c_untyped));
    }
}
