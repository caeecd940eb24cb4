//! Numeric model of the target calculus and gradient extraction.
//!
//! `M[T]` denotes finite multisets of `T`-denotations; the additive
//! collapse happens only at extraction time so evaluation stays faithful to
//! the free commutative-monoid reading. Reverse-mode gradients come out of
//! evaluating Dialectica counters; dual-number forward evaluation and
//! central finite differences over the plain source interpreter serve as
//! independent oracles.

use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::dialectica::{witness, DialError};
use crate::prims::PrimRegistry;
use crate::source::SourceTerm;
use crate::target::{ProjIndex, TargetTerm, TargetType};

pub use crate::prims::PrimitiveImpl;

#[derive(Debug, Clone, PartialEq)]
pub enum EvalError {
    Unbound(String),
    UnknownPrim(String),
    /// A value had the wrong shape for the operation; with well-typed
    /// input this signals a typechecker bug.
    Shape(String),
    Translation(String),
}

impl core::fmt::Display for EvalError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            EvalError::Unbound(x) => write!(f, "unbound variable `{x}` at evaluation"),
            EvalError::UnknownPrim(s) => write!(f, "unknown primitive `{s}` at evaluation"),
            EvalError::Shape(m) => write!(f, "value shape mismatch: {m}"),
            EvalError::Translation(m) => write!(f, "{m}"),
        }
    }
}

impl core::error::Error for EvalError {}

impl From<DialError> for EvalError {
    fn from(e: DialError) -> Self {
        EvalError::Translation(format!("{e}"))
    }
}

/// Persistent environment; extension is O(1) and sharing is cheap.
#[derive(Debug)]
pub struct Env<V> {
    head: Option<Rc<EnvNode<V>>>,
}

#[derive(Debug)]
struct EnvNode<V> {
    name: String,
    value: V,
    rest: Env<V>,
}

impl<V> Clone for Env<V> {
    fn clone(&self) -> Self {
        Env {
            head: self.head.clone(),
        }
    }
}

impl<V> Env<V> {
    pub fn empty() -> Self {
        Env { head: None }
    }

    pub fn extend(&self, name: &str, value: V) -> Self {
        Env {
            head: Some(Rc::new(EnvNode {
                name: String::from(name),
                value,
                rest: self.clone(),
            })),
        }
    }

    pub fn lookup(&self, name: &str) -> Option<&V> {
        let mut cur = self;
        while let Some(node) = &cur.head {
            if node.name == name {
                return Some(&node.value);
            }
            cur = &node.rest;
        }
        None
    }
}

/// Denotations of target terms.
#[derive(Debug, Clone)]
pub enum Value {
    Real(f64),
    PairV(Rc<Value>, Rc<Value>),
    Closure {
        env: Env<Value>,
        binder: String,
        body: Rc<TargetTerm>,
    },
    /// Finite multiset, the denotation of `M[T]`.
    SumV(Vec<Value>),
    /// Partially applied primitive; all primitive arguments are reals.
    PrimApp {
        symbol: String,
        arity: usize,
        args: Vec<f64>,
    },
}

impl Value {
    pub fn real(x: f64) -> Self {
        Value::Real(x)
    }

    pub fn pair(a: Value, b: Value) -> Self {
        Value::PairV(Rc::new(a), Rc::new(b))
    }

    pub fn as_real(&self) -> Result<f64, EvalError> {
        match self {
            Value::Real(x) => Ok(*x),
            other => Err(EvalError::Shape(format!("expected a real, got {other:?}"))),
        }
    }
}

/// Environment semantics of the target calculus. Return builds a singleton
/// multiset, bind maps and unions, `0` is the empty multiset and `+` is
/// multiset union.
pub fn eval_closed(
    t: &TargetTerm,
    env: &Env<Value>,
    reg: &PrimRegistry,
) -> Result<Value, EvalError> {
    match t {
        TargetTerm::Var(x) => env
            .lookup(x)
            .cloned()
            .ok_or_else(|| EvalError::Unbound(x.clone())),
        TargetTerm::Prim { symbol, .. } => {
            if let Some(imp) = reg.impl_of(symbol) {
                Ok(Value::PrimApp {
                    symbol: symbol.clone(),
                    arity: imp.arity,
                    args: Vec::new(),
                })
            } else if let Some(k) = reg.literal(symbol) {
                Ok(Value::Real(k))
            } else {
                Err(EvalError::UnknownPrim(symbol.clone()))
            }
        }
        TargetTerm::Lam { binder, body, .. } => Ok(Value::Closure {
            env: env.clone(),
            binder: binder.clone(),
            body: Rc::new((**body).clone()),
        }),
        TargetTerm::App(f, a) => {
            let vf = eval_closed(f, env, reg)?;
            let va = eval_closed(a, env, reg)?;
            apply_value(&vf, va, reg)
        }
        TargetTerm::Pair(a, b) => Ok(Value::pair(
            eval_closed(a, env, reg)?,
            eval_closed(b, env, reg)?,
        )),
        TargetTerm::Proj(i, subject) => match eval_closed(subject, env, reg)? {
            Value::PairV(a, b) => Ok(match i {
                ProjIndex::Fst => (*a).clone(),
                ProjIndex::Snd => (*b).clone(),
            }),
            other => Err(EvalError::Shape(format!(
                "projection from non-pair {other:?}"
            ))),
        },
        TargetTerm::Ret(m) => Ok(Value::SumV(vec![eval_closed(m, env, reg)?])),
        TargetTerm::Bind(m, k) => {
            let vm = eval_closed(m, env, reg)?;
            let elems = match vm {
                Value::SumV(xs) => xs,
                other => {
                    return Err(EvalError::Shape(format!(
                        "bind of non-multiset {other:?}"
                    )))
                }
            };
            let vk = eval_closed(k, env, reg)?;
            let mut out = Vec::new();
            for x in elems {
                match apply_value(&vk, x, reg)? {
                    Value::SumV(ys) => out.extend(ys),
                    other => {
                        return Err(EvalError::Shape(format!(
                            "bind continuation returned non-multiset {other:?}"
                        )))
                    }
                }
            }
            Ok(Value::SumV(out))
        }
        TargetTerm::Zero => Ok(Value::SumV(Vec::new())),
        TargetTerm::Plus(a, b) => {
            let va = eval_closed(a, env, reg)?;
            let vb = eval_closed(b, env, reg)?;
            match (va, vb) {
                (Value::SumV(mut xs), Value::SumV(ys)) => {
                    xs.extend(ys);
                    Ok(Value::SumV(xs))
                }
                other => Err(EvalError::Shape(format!("sum of non-multisets {other:?}"))),
            }
        }
        TargetTerm::Ann(inner, _) => eval_closed(inner, env, reg),
    }
}

pub fn apply_value(f: &Value, arg: Value, reg: &PrimRegistry) -> Result<Value, EvalError> {
    match f {
        Value::Closure { env, binder, body } => {
            let env = env.extend(binder, arg);
            eval_closed(body, &env, reg)
        }
        Value::PrimApp {
            symbol,
            arity,
            args,
        } => {
            let x = arg.as_real()?;
            let mut args = args.clone();
            args.push(x);
            if args.len() == *arity {
                let imp = reg
                    .impl_of(symbol)
                    .ok_or_else(|| EvalError::UnknownPrim(symbol.clone()))?;
                Ok(Value::Real((imp.value)(&args)))
            } else {
                Ok(Value::PrimApp {
                    symbol: symbol.clone(),
                    arity: *arity,
                    args,
                })
            }
        }
        other => Err(EvalError::Shape(format!(
            "application of non-function {other:?}"
        ))),
    }
}

fn flatten_reals(v: &Value, out: &mut Vec<f64>) -> Result<(), EvalError> {
    match v {
        Value::Real(x) => {
            out.push(*x);
            Ok(())
        }
        Value::PairV(a, b) => {
            flatten_reals(a, out)?;
            flatten_reals(b, out)
        }
        other => Err(EvalError::Shape(format!(
            "multiset element is not a real tuple: {other:?}"
        ))),
    }
}

fn rebuild_shape(template: &Value, flat: &[f64], pos: &mut usize) -> Result<Value, EvalError> {
    match template {
        Value::Real(_) => {
            let x = flat[*pos];
            *pos += 1;
            Ok(Value::Real(x))
        }
        Value::PairV(a, b) => {
            let left = rebuild_shape(a, flat, pos)?;
            let right = rebuild_shape(b, flat, pos)?;
            Ok(Value::pair(left, right))
        }
        other => Err(EvalError::Shape(format!("non-tuple template {other:?}"))),
    }
}

/// Componentwise sum of a multiset of reals or congruent real tuples. The
/// summands are sorted before adding so that any multiset reordering
/// collapses to bit-identical totals; the empty multiset collapses to `0`.
pub fn collapse(v: &Value) -> Result<Value, EvalError> {
    let elems = match v {
        Value::SumV(xs) => xs,
        other => {
            return Err(EvalError::Shape(format!(
                "collapse of non-multiset {other:?}"
            )))
        }
    };
    if elems.is_empty() {
        return Ok(Value::Real(0.0));
    }
    let mut flats: Vec<Vec<f64>> = Vec::with_capacity(elems.len());
    for e in elems {
        let mut f = Vec::new();
        flatten_reals(e, &mut f)?;
        flats.push(f);
    }
    let width = flats[0].len();
    if flats.iter().any(|f| f.len() != width) {
        return Err(EvalError::Shape(String::from(
            "incongruent shapes in multiset",
        )));
    }
    flats.sort_by(|a, b| {
        for (x, y) in a.iter().zip(b.iter()) {
            match x.total_cmp(y) {
                core::cmp::Ordering::Equal => continue,
                other => return other,
            }
        }
        core::cmp::Ordering::Equal
    });
    let mut total = vec![0.0f64; width];
    for f in &flats {
        for (t, x) in total.iter_mut().zip(f.iter()) {
            *t += x;
        }
    }
    let mut pos = 0;
    rebuild_shape(&elems[0], &total, &mut pos)
}

/// Collapse straight to a scalar; the common case for gradient stages.
pub fn collapse_scalar(v: &Value) -> Result<f64, EvalError> {
    collapse(v)?.as_real()
}

// ---------------------------------------------------------------------------
// Plain source interpreter (value oracle, used by finite differences)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
enum SValue {
    Real(f64),
    Closure {
        env: Env<SValue>,
        binder: String,
        body: Rc<SourceTerm>,
    },
    PrimApp {
        symbol: String,
        arity: usize,
        args: Vec<f64>,
    },
}

fn eval_source(t: &SourceTerm, env: &Env<SValue>, reg: &PrimRegistry) -> Result<SValue, EvalError> {
    match t {
        SourceTerm::Var(x) => env
            .lookup(x)
            .cloned()
            .ok_or_else(|| EvalError::Unbound(x.clone())),
        SourceTerm::Prim { symbol, .. } => {
            if let Some(imp) = reg.impl_of(symbol) {
                Ok(SValue::PrimApp {
                    symbol: symbol.clone(),
                    arity: imp.arity,
                    args: Vec::new(),
                })
            } else if let Some(k) = reg.literal(symbol) {
                Ok(SValue::Real(k))
            } else {
                Err(EvalError::UnknownPrim(symbol.clone()))
            }
        }
        SourceTerm::Lam { binder, body, .. } => Ok(SValue::Closure {
            env: env.clone(),
            binder: binder.clone(),
            body: Rc::new((**body).clone()),
        }),
        SourceTerm::App(f, a) => {
            let vf = eval_source(f, env, reg)?;
            let va = eval_source(a, env, reg)?;
            apply_source(&vf, va, reg)
        }
    }
}

fn apply_source(f: &SValue, arg: SValue, reg: &PrimRegistry) -> Result<SValue, EvalError> {
    match f {
        SValue::Closure { env, binder, body } => {
            eval_source(body, &env.extend(binder, arg), reg)
        }
        SValue::PrimApp {
            symbol,
            arity,
            args,
        } => {
            let x = match arg {
                SValue::Real(x) => x,
                other => {
                    return Err(EvalError::Shape(format!(
                        "primitive applied to non-real {other:?}"
                    )))
                }
            };
            let mut args = args.clone();
            args.push(x);
            if args.len() == *arity {
                let imp = reg
                    .impl_of(symbol)
                    .ok_or_else(|| EvalError::UnknownPrim(symbol.clone()))?;
                Ok(SValue::Real((imp.value)(&args)))
            } else {
                Ok(SValue::PrimApp {
                    symbol: symbol.clone(),
                    arity: *arity,
                    args,
                })
            }
        }
        other => Err(EvalError::Shape(format!(
            "application of non-function {other:?}"
        ))),
    }
}

/// Evaluates a closed `real^n -> real` source term at a point.
pub fn call_source(f: &SourceTerm, point: &[f64], reg: &PrimRegistry) -> Result<f64, EvalError> {
    let mut v = eval_source(f, &Env::empty(), reg)?;
    for x in point {
        v = apply_source(&v, SValue::Real(*x), reg)?;
    }
    match v {
        SValue::Real(x) => Ok(x),
        other => Err(EvalError::Shape(format!(
            "function did not return a real: {other:?}"
        ))),
    }
}

// ---------------------------------------------------------------------------
// Dual-number forward evaluator (independent gradient oracle)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
enum DValue {
    Dual(f64, f64),
    Closure {
        env: Env<DValue>,
        binder: String,
        body: Rc<SourceTerm>,
    },
    PrimApp {
        symbol: String,
        arity: usize,
        args: Vec<(f64, f64)>,
    },
}

fn eval_dual(t: &SourceTerm, env: &Env<DValue>, reg: &PrimRegistry) -> Result<DValue, EvalError> {
    match t {
        SourceTerm::Var(x) => env
            .lookup(x)
            .cloned()
            .ok_or_else(|| EvalError::Unbound(x.clone())),
        SourceTerm::Prim { symbol, .. } => {
            if let Some(imp) = reg.impl_of(symbol) {
                Ok(DValue::PrimApp {
                    symbol: symbol.clone(),
                    arity: imp.arity,
                    args: Vec::new(),
                })
            } else if let Some(k) = reg.literal(symbol) {
                Ok(DValue::Dual(k, 0.0))
            } else {
                Err(EvalError::UnknownPrim(symbol.clone()))
            }
        }
        SourceTerm::Lam { binder, body, .. } => Ok(DValue::Closure {
            env: env.clone(),
            binder: binder.clone(),
            body: Rc::new((**body).clone()),
        }),
        SourceTerm::App(f, a) => {
            let vf = eval_dual(f, env, reg)?;
            let va = eval_dual(a, env, reg)?;
            apply_dual(&vf, va, reg)
        }
    }
}

fn apply_dual(f: &DValue, arg: DValue, reg: &PrimRegistry) -> Result<DValue, EvalError> {
    match f {
        DValue::Closure { env, binder, body } => {
            eval_dual(body, &env.extend(binder, arg), reg)
        }
        DValue::PrimApp {
            symbol,
            arity,
            args,
        } => {
            let d = match arg {
                DValue::Dual(v, t) => (v, t),
                other => {
                    return Err(EvalError::Shape(format!(
                        "primitive applied to non-dual {other:?}"
                    )))
                }
            };
            let mut args = args.clone();
            args.push(d);
            if args.len() == *arity {
                let imp = reg
                    .impl_of(symbol)
                    .ok_or_else(|| EvalError::UnknownPrim(symbol.clone()))?;
                let vals: Vec<f64> = args.iter().map(|(v, _)| *v).collect();
                let value = (imp.value)(&vals);
                let partials = (imp.partials)(&vals);
                let mut tangent = 0.0;
                for (p, (_, t)) in partials.iter().zip(args.iter()) {
                    tangent += p * t;
                }
                Ok(DValue::Dual(value, tangent))
            } else {
                Ok(DValue::PrimApp {
                    symbol: symbol.clone(),
                    arity: *arity,
                    args,
                })
            }
        }
        other => Err(EvalError::Shape(format!(
            "application of non-function {other:?}"
        ))),
    }
}

/// Forward-mode gradient oracle: one dual-number pass per coordinate.
pub fn gradient_forward(
    f: &SourceTerm,
    point: &[f64],
    reg: &PrimRegistry,
) -> Result<Vec<f64>, EvalError> {
    let mut grad = Vec::with_capacity(point.len());
    for j in 0..point.len() {
        let mut v = eval_dual(f, &Env::empty(), reg)?;
        for (i, x) in point.iter().enumerate() {
            let seed = if i == j { 1.0 } else { 0.0 };
            v = apply_dual(&v, DValue::Dual(*x, seed), reg)?;
        }
        match v {
            DValue::Dual(_, t) => grad.push(t),
            other => {
                return Err(EvalError::Shape(format!(
                    "function did not return a real: {other:?}"
                )))
            }
        }
    }
    Ok(grad)
}

/// Central finite differences with step `h` (default 1e-5).
pub fn gradient_fd(
    f: &SourceTerm,
    point: &[f64],
    h: f64,
    reg: &PrimRegistry,
) -> Result<Vec<f64>, EvalError> {
    let mut grad = Vec::with_capacity(point.len());
    for i in 0..point.len() {
        let mut hi = point.to_vec();
        let mut lo = point.to_vec();
        hi[i] += h;
        lo[i] -= h;
        grad.push((call_source(f, &hi, reg)? - call_source(f, &lo, reg)?) / (2.0 * h));
    }
    Ok(grad)
}

// ---------------------------------------------------------------------------
// Reverse mode through the Dialectica transformation
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct GradResult {
    pub value: f64,
    pub gradient: Vec<f64>,
}

/// Translates a closed curried `real^n -> real` term, evaluates the
/// witness at the point, then feeds the output cotangent `seed` backwards
/// through each stage's counter and collapses the resulting multisets.
pub fn counter_pullback(
    f: &SourceTerm,
    point: &[f64],
    seed: f64,
    reg: &PrimRegistry,
) -> Result<GradResult, EvalError> {
    let wit = witness(f, reg)?;
    let env = Env::empty();
    let mut stage = eval_closed(&wit, &env, reg)?;
    let n = point.len();
    let mut backwards = Vec::with_capacity(n);
    for (j, a) in point.iter().enumerate() {
        match stage {
            Value::PairV(fwd, bwd) => {
                backwards.push((*bwd).clone());
                stage = apply_value(&fwd, Value::Real(*a), reg)?;
            }
            other => {
                return Err(EvalError::Shape(format!(
                    "witness stage {j} is not a pair: {other:?}"
                )))
            }
        }
    }
    let value = stage.as_real()?;

    let mut gradient = Vec::with_capacity(n);
    for j in 0..n {
        // Cotangent at stage j: the remaining arguments paired in front of
        // the output covector, matching C(real -> ... -> real).
        let mut cot = Value::Real(seed);
        for k in (j + 1..n).rev() {
            cot = Value::pair(Value::Real(point[k]), cot);
        }
        let out = apply_value(&backwards[j], Value::pair(Value::Real(point[j]), cot), reg)?;
        gradient.push(collapse_scalar(&out)?);
    }
    Ok(GradResult { value, gradient })
}

/// Reverse-mode gradient via Dialectica: the counter evaluated at output
/// cotangent 1 is the transposed pushforward applied to 1.
pub fn gradient_dialectica(
    f: &SourceTerm,
    point: &[f64],
    reg: &PrimRegistry,
) -> Result<GradResult, EvalError> {
    counter_pullback(f, point, 1.0, reg)
}

// ---------------------------------------------------------------------------
// Comparison helpers
// ---------------------------------------------------------------------------

/// Relative error with a guard for the both-zero case.
pub fn rel_err(a: f64, b: f64) -> f64 {
    let d = (a - b).abs();
    if d == 0.0 {
        return 0.0;
    }
    let scale = a.abs().max(b.abs());
    if scale <= 1e-300 {
        return 0.0;
    }
    d / scale
}

pub fn max_rel_err(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| rel_err(*x, *y))
        .fold(0.0, f64::max)
}

/// Zero value of a real-tuple-shaped type.
fn zero_of_type(ty: &TargetType) -> Result<Value, EvalError> {
    match ty {
        TargetType::Ground(g) if g == crate::source::REAL => Ok(Value::Real(0.0)),
        TargetType::Prod(a, b) => Ok(Value::pair(zero_of_type(a)?, zero_of_type(b)?)),
        other => Err(EvalError::Shape(format!(
            "no zero value at type {other:?}"
        ))),
    }
}

/// Random value of a target type: uniform reals in [-2, 2], structural
/// products and small multisets; arrow types get constant functions.
pub fn random_value_of(
    ty: &TargetType,
    rng: &mut impl Rng,
    reg: &PrimRegistry,
) -> Result<Value, EvalError> {
    match ty {
        TargetType::Ground(g) if g == crate::source::REAL => {
            Ok(Value::Real(rng.gen_range(-2.0..2.0)))
        }
        TargetType::Ground(g) => Err(EvalError::Shape(format!(
            "cannot sample abstract ground type `{g}`"
        ))),
        TargetType::Prod(a, b) => Ok(Value::pair(
            random_value_of(a, rng, reg)?,
            random_value_of(b, rng, reg)?,
        )),
        TargetType::Monad(inner) => {
            let n = rng.gen_range(0..3usize);
            let mut elems = Vec::with_capacity(n);
            for _ in 0..n {
                elems.push(random_value_of(inner, rng, reg)?);
            }
            Ok(Value::SumV(elems))
        }
        TargetType::Arrow(_, cod) => {
            // Constant function: good enough to distinguish pointwise
            // unequal maps when composed with the surrounding samples.
            let out = random_value_of(cod, rng, reg)?;
            Ok(Value::Closure {
                env: Env::empty().extend("#const", out),
                binder: String::from("#x"),
                body: Rc::new(TargetTerm::var("#const")),
            })
        }
    }
}

/// Type-directed approximate equality: reals by relative error, products
/// componentwise, multisets by additive collapse (the cotangent reading),
/// functions by sampling arguments.
pub fn value_approx_eq(
    a: &Value,
    b: &Value,
    ty: &TargetType,
    rng: &mut impl Rng,
    reg: &PrimRegistry,
    tol: f64,
    samples: usize,
) -> Result<bool, EvalError> {
    match ty {
        TargetType::Ground(g) if g == crate::source::REAL => {
            Ok(rel_err(a.as_real()?, b.as_real()?) <= tol)
        }
        TargetType::Ground(g) => Err(EvalError::Shape(format!(
            "cannot compare values at abstract ground type `{g}`"
        ))),
        TargetType::Prod(l, r) => match (a, b) {
            (Value::PairV(a1, a2), Value::PairV(b1, b2)) => {
                Ok(value_approx_eq(a1, b1, l, rng, reg, tol, samples)?
                    && value_approx_eq(a2, b2, r, rng, reg, tol, samples)?)
            }
            other => Err(EvalError::Shape(format!("expected pairs, got {other:?}"))),
        },
        TargetType::Monad(inner) => {
            let ca = collapse_typed(a, inner)?;
            let cb = collapse_typed(b, inner)?;
            let mut fa = Vec::new();
            let mut fb = Vec::new();
            flatten_reals(&ca, &mut fa)?;
            flatten_reals(&cb, &mut fb)?;
            Ok(fa
                .iter()
                .zip(fb.iter())
                .all(|(x, y)| rel_err(*x, *y) <= tol))
        }
        TargetType::Arrow(dom, cod) => {
            for _ in 0..samples {
                let arg = random_value_of(dom, rng, reg)?;
                let ra = apply_value(a, arg.clone(), reg)?;
                let rb = apply_value(b, arg, reg)?;
                if !value_approx_eq(&ra, &rb, cod, rng, reg, tol, samples)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// Collapse with a type-directed zero for the empty multiset.
fn collapse_typed(v: &Value, elem_ty: &TargetType) -> Result<Value, EvalError> {
    match v {
        Value::SumV(xs) if xs.is_empty() => zero_of_type(elem_ty),
        _ => collapse(v),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_source, parse_target};

    fn reg() -> PrimRegistry {
        PrimRegistry::default()
    }

    fn eval_str(s: &str) -> Value {
        eval_closed(&parse_target(s).unwrap(), &Env::empty(), &reg()).unwrap()
    }

    #[test]
    fn bind_maps_singleton() {
        match eval_str("[3.0] >>= (\\z. [z])") {
            Value::SumV(xs) => {
                assert_eq!(xs.len(), 1);
                assert_eq!(xs[0].as_real().unwrap(), 3.0);
            }
            other => panic!("expected multiset, got {other:?}"),
        }
    }

    #[test]
    fn monoid_unit_evaluates() {
        match eval_str("0 + [2.0]") {
            Value::SumV(xs) => {
                assert_eq!(xs.len(), 1);
                assert_eq!(xs[0].as_real().unwrap(), 2.0);
            }
            other => panic!("expected multiset, got {other:?}"),
        }
    }

    #[test]
    fn projection_of_literal_pair() {
        assert_eq!(eval_str("<1.0, 2.0>^2").as_real().unwrap(), 2.0);
    }

    #[test]
    fn collapse_empty_and_scalars_and_tuples() {
        assert_eq!(collapse(&Value::SumV(vec![])).unwrap().as_real().unwrap(), 0.0);
        let s = Value::SumV(vec![Value::Real(1.5), Value::Real(2.5)]);
        assert_eq!(collapse(&s).unwrap().as_real().unwrap(), 4.0);
        let pairs = Value::SumV(vec![
            Value::pair(Value::Real(1.0), Value::Real(0.0)),
            Value::pair(Value::Real(0.0), Value::Real(2.0)),
        ]);
        match collapse(&pairs).unwrap() {
            Value::PairV(a, b) => {
                assert_eq!(a.as_real().unwrap(), 1.0);
                assert_eq!(b.as_real().unwrap(), 2.0);
            }
            other => panic!("expected pair, got {other:?}"),
        }
    }

    #[test]
    fn collapse_rejects_incongruent_shapes() {
        let bad = Value::SumV(vec![
            Value::Real(1.0),
            Value::pair(Value::Real(1.0), Value::Real(2.0)),
        ]);
        assert!(matches!(collapse(&bad), Err(EvalError::Shape(_))));
    }

    #[test]
    fn gradient_of_identity() {
        let f = parse_source("\\(x:real). x").unwrap();
        let g = gradient_dialectica(&f, &[7.0], &reg()).unwrap();
        assert_eq!(g.value, 7.0);
        assert_eq!(g.gradient, vec![1.0]);
        assert_eq!(gradient_forward(&f, &[7.0], &reg()).unwrap(), vec![1.0]);
        assert_eq!(gradient_fd(&f, &[7.0], 1e-5, &reg()).unwrap(), vec![1.0]);
    }

    #[test]
    fn gradient_of_fourth_power() {
        // d/dx (x^2)^2 = 4x^3 = 108 at x = 3.
        let f = parse_source("\\(x:real). sq (sq x)").unwrap();
        let g = gradient_dialectica(&f, &[3.0], &reg()).unwrap();
        assert_eq!(g.value, 81.0);
        assert_eq!(g.gradient, vec![108.0]);
        assert_eq!(gradient_forward(&f, &[3.0], &reg()).unwrap(), vec![108.0]);
        let fd = gradient_fd(&f, &[3.0], 1e-5, &reg()).unwrap();
        assert!(rel_err(fd[0], 108.0) < 1e-7, "fd gave {}", fd[0]);
    }

    #[test]
    fn gradient_of_product_swaps_coordinates() {
        let f = parse_source("\\(x:real). \\(y:real). mul x y").unwrap();
        let g = gradient_dialectica(&f, &[2.0, 5.0], &reg()).unwrap();
        assert_eq!(g.value, 10.0);
        assert_eq!(g.gradient, vec![5.0, 2.0]);
        assert_eq!(
            gradient_forward(&f, &[2.0, 5.0], &reg()).unwrap(),
            vec![5.0, 2.0]
        );
    }

    #[test]
    fn forward_gradient_of_sum_is_ones() {
        let f = parse_source("\\(x:real). \\(y:real). add x y").unwrap();
        assert_eq!(
            gradient_forward(&f, &[0.3, -1.2], &reg()).unwrap(),
            vec![1.0, 1.0]
        );
    }

    #[test]
    fn fd_of_constant_is_zero() {
        let f = parse_source("\\(x:real). 4.5").unwrap();
        assert_eq!(gradient_fd(&f, &[1.0], 1e-5, &reg()).unwrap(), vec![0.0]);
    }

    #[test]
    fn counter_of_missing_variable_is_empty() {
        // Evaluating any counter over a variable the term does not use
        // yields the empty multiset.
        let t = parse_source("sq y").unwrap();
        let c = crate::dialectica::counter(&t, "z", &reg()).unwrap();
        let env = Env::empty().extend("y", Value::Real(1.5));
        let vc = eval_closed(&c, &env, &reg()).unwrap();
        let out = apply_value(&vc, Value::Real(1.0), &reg()).unwrap();
        match out {
            Value::SumV(xs) => assert!(xs.is_empty()),
            other => panic!("expected empty multiset, got {other:?}"),
        }
    }

    #[test]
    fn higher_order_source_terms_differentiate() {
        // (λf. λx. f (f x)) sq — iteration through a function argument.
        let f = parse_source("(\\(f:real -> real). \\(x:real). f (f x)) sq").unwrap();
        let g = gradient_dialectica(&f, &[3.0], &reg()).unwrap();
        assert_eq!(g.value, 81.0);
        assert_eq!(g.gradient, vec![108.0]);
    }
}
