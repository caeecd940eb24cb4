//! The equational semantics of the target calculus as an oriented rewrite
//! system: β, projections on pairs, the monad laws, and the commutative
//! monoid laws compatible with bind. Sums are flattened, Zero-pruned and
//! sorted under a fixed total order, giving a canonical normal form and a
//! sound (not complete) equality check; callers fall back to pointwise
//! numeric comparison when the verdict is `Unknown`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::source::fresh_name;
use crate::target::{alpha_eq, subst, ProjIndex, TargetTerm};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquationError {
    /// The rewrite fuel ran out; on well-typed terms this indicates either
    /// a pathological input or a term far beyond the default budget.
    FuelExhausted,
}

impl core::fmt::Display for EquationError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            EquationError::FuelExhausted => write!(f, "normalization fuel exhausted"),
        }
    }
}

impl core::error::Error for EquationError {}

/// A term in canonical shape: β-normal, no projection of a pair, monadic
/// layers flattened, sums as a Zero-free, right-nested, sorted list of
/// summands. Annotations are erased.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalForm(TargetTerm);

impl NormalForm {
    pub fn term(&self) -> &TargetTerm {
        &self.0
    }

    pub fn into_term(self) -> TargetTerm {
        self.0
    }
}

pub const DEFAULT_FUEL: u64 = 1_000_000;

pub fn normalize(t: &TargetTerm) -> Result<NormalForm, EquationError> {
    normalize_with_fuel(t, DEFAULT_FUEL)
}

pub fn normalize_with_fuel(t: &TargetTerm, fuel: u64) -> Result<NormalForm, EquationError> {
    let mut fuel = fuel;
    nf(t, &mut fuel).map(NormalForm)
}

fn spend(fuel: &mut u64) -> Result<(), EquationError> {
    if *fuel == 0 {
        return Err(EquationError::FuelExhausted);
    }
    *fuel -= 1;
    Ok(())
}

fn nf(t: &TargetTerm, fuel: &mut u64) -> Result<TargetTerm, EquationError> {
    match t {
        TargetTerm::Var(_) | TargetTerm::Prim { .. } => Ok(t.clone()),
        TargetTerm::Zero => Ok(TargetTerm::Zero),
        TargetTerm::Ann(inner, _) => nf(inner, fuel),
        TargetTerm::Lam { binder, body, .. } => Ok(TargetTerm::lam(binder, nf(body, fuel)?)),
        TargetTerm::Pair(a, b) => Ok(TargetTerm::pair(nf(a, fuel)?, nf(b, fuel)?)),
        TargetTerm::Ret(m) => Ok(TargetTerm::ret(nf(m, fuel)?)),
        TargetTerm::App(f, a) => {
            let f = nf(f, fuel)?;
            let a = nf(a, fuel)?;
            if let TargetTerm::Lam { binder, body, .. } = &f {
                spend(fuel)?;
                return nf(&subst(body, binder, &a), fuel);
            }
            Ok(TargetTerm::app(f, a))
        }
        TargetTerm::Proj(i, subject) => {
            let s = nf(subject, fuel)?;
            if let TargetTerm::Pair(a, b) = &s {
                spend(fuel)?;
                return Ok(match i {
                    ProjIndex::Fst => (**a).clone(),
                    ProjIndex::Snd => (**b).clone(),
                });
            }
            Ok(TargetTerm::Proj(*i, alloc::boxed::Box::new(s)))
        }
        TargetTerm::Plus(a, b) => {
            let a = nf(a, fuel)?;
            let b = nf(b, fuel)?;
            Ok(canonical_sum(alloc::vec![a, b]))
        }
        TargetTerm::Bind(m, k) => {
            let m = nf(m, fuel)?;
            let k = nf(k, fuel)?;
            bind_nf(m, k, fuel)
        }
    }
}

fn bind_nf(m: TargetTerm, k: TargetTerm, fuel: &mut u64) -> Result<TargetTerm, EquationError> {
    // [v] >>= k  ->  k v
    if let TargetTerm::Ret(v) = &m {
        spend(fuel)?;
        return nf(&TargetTerm::app(k, (**v).clone()), fuel);
    }
    // 0 >>= k  ->  0
    if matches!(m, TargetTerm::Zero) {
        spend(fuel)?;
        return Ok(TargetTerm::Zero);
    }
    // (a + b) >>= k  ->  a >>= k + b >>= k
    if let TargetTerm::Plus(a, b) = &m {
        spend(fuel)?;
        let left = bind_nf((**a).clone(), k.clone(), fuel)?;
        let right = bind_nf((**b).clone(), k, fuel)?;
        return Ok(canonical_sum(alloc::vec![left, right]));
    }
    // (n >>= l) >>= k  ->  n >>= (λz. l z >>= k)
    if let TargetTerm::Bind(n, l) = &m {
        spend(fuel)?;
        let mut avoid = l.free_vars();
        avoid.extend(k.free_vars());
        let z = fresh_name("z", &avoid);
        let body = TargetTerm::bind(
            TargetTerm::app((**l).clone(), TargetTerm::var(&z)),
            k,
        );
        let assoc = TargetTerm::bind((**n).clone(), TargetTerm::lam(&z, body));
        return nf(&assoc, fuel);
    }
    if let TargetTerm::Lam { binder, body, .. } = &k {
        // m >>= (λz. 0)  ->  0
        if matches!(**body, TargetTerm::Zero) {
            spend(fuel)?;
            return Ok(TargetTerm::Zero);
        }
        // m >>= (λz. [z])  ->  m
        if let TargetTerm::Ret(v) = &**body {
            if matches!(&**v, TargetTerm::Var(x) if x == binder) {
                spend(fuel)?;
                return Ok(m);
            }
        }
        // m >>= (λz. p + q)  ->  m >>= (λz.p) + m >>= (λz.q)
        if let TargetTerm::Plus(p, q) = &**body {
            spend(fuel)?;
            let left = bind_nf(m.clone(), TargetTerm::lam(binder, (**p).clone()), fuel)?;
            let right = bind_nf(m, TargetTerm::lam(binder, (**q).clone()), fuel)?;
            return Ok(canonical_sum(alloc::vec![left, right]));
        }
    }
    Ok(TargetTerm::bind(m, k))
}

/// Flattens the given already-normal summands, drops Zeros, sorts under
/// the canonical syntactic order and rebuilds a right-nested sum.
fn canonical_sum(parts: Vec<TargetTerm>) -> TargetTerm {
    let mut summands = Vec::new();
    for p in parts {
        flatten_into(p, &mut summands);
    }
    summands.sort_by(|a, b| canonical_key(a).cmp(&canonical_key(b)));
    let mut iter = summands.into_iter().rev();
    match iter.next() {
        None => TargetTerm::Zero,
        Some(last) => iter.fold(last, |acc, s| TargetTerm::plus(s, acc)),
    }
}

fn flatten_into(t: TargetTerm, out: &mut Vec<TargetTerm>) {
    match t {
        TargetTerm::Zero => {}
        TargetTerm::Plus(a, b) => {
            flatten_into(*a, out);
            flatten_into(*b, out);
        }
        other => out.push(other),
    }
}

/// Total syntactic order on α-classes: print with binders replaced by
/// de Bruijn levels and compare strings.
fn canonical_key(t: &TargetTerm) -> String {
    let mut out = String::new();
    let mut stack: Vec<String> = Vec::new();
    key(t, &mut stack, &mut out);
    out
}

fn key(t: &TargetTerm, stack: &mut Vec<String>, out: &mut String) {
    match t {
        TargetTerm::Var(x) => match stack.iter().rposition(|n| n == x) {
            Some(i) => {
                out.push('#');
                out.push_str(&format!("{i}"));
            }
            None => {
                out.push('v');
                out.push_str(x);
            }
        },
        TargetTerm::Prim { symbol, .. } => {
            out.push('p');
            out.push_str(symbol);
        }
        TargetTerm::Lam { binder, body, .. } => {
            out.push('L');
            stack.push(binder.clone());
            key(body, stack, out);
            stack.pop();
        }
        TargetTerm::App(f, a) => {
            out.push('A');
            key(f, stack, out);
            out.push(' ');
            key(a, stack, out);
            out.push(')');
        }
        TargetTerm::Pair(a, b) => {
            out.push('P');
            key(a, stack, out);
            out.push(' ');
            key(b, stack, out);
            out.push(')');
        }
        TargetTerm::Proj(i, s) => {
            out.push(match i {
                ProjIndex::Fst => '1',
                ProjIndex::Snd => '2',
            });
            key(s, stack, out);
        }
        TargetTerm::Ret(m) => {
            out.push('R');
            key(m, stack, out);
        }
        TargetTerm::Bind(m, k) => {
            out.push('B');
            key(m, stack, out);
            out.push(' ');
            key(k, stack, out);
            out.push(')');
        }
        TargetTerm::Zero => out.push('0'),
        TargetTerm::Plus(a, b) => {
            out.push('+');
            key(a, stack, out);
            out.push(' ');
            key(b, stack, out);
            out.push(')');
        }
        TargetTerm::Ann(inner, _) => key(inner, stack, out),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Equivalence {
    Equal,
    UnequalByNormalForms,
    Unknown,
}

/// Sound equality check: `Equal` means the terms are equal in the theory;
/// differing normal forms that still contain stuck binds are reported
/// `Unknown` since the theory is richer than the rewrite system, and rigid
/// differing normal forms give an advisory `UnequalByNormalForms`.
pub fn equal(a: &TargetTerm, b: &TargetTerm) -> Result<Equivalence, EquationError> {
    let na = normalize(a)?;
    let nb = normalize(b)?;
    if alpha_eq(na.term(), nb.term()) {
        return Ok(Equivalence::Equal);
    }
    if has_stuck_bind(na.term()) || has_stuck_bind(nb.term()) {
        Ok(Equivalence::Unknown)
    } else {
        Ok(Equivalence::UnequalByNormalForms)
    }
}

fn has_stuck_bind(t: &TargetTerm) -> bool {
    match t {
        TargetTerm::Bind(..) => true,
        TargetTerm::Var(_) | TargetTerm::Zero | TargetTerm::Prim { .. } => false,
        TargetTerm::Lam { body, .. } => has_stuck_bind(body),
        TargetTerm::App(a, b) | TargetTerm::Pair(a, b) | TargetTerm::Plus(a, b) => {
            has_stuck_bind(a) || has_stuck_bind(b)
        }
        TargetTerm::Proj(_, s) => has_stuck_bind(s),
        TargetTerm::Ret(m) => has_stuck_bind(m),
        TargetTerm::Ann(inner, _) => has_stuck_bind(inner),
    }
}

/// Free variables that keep a normal form from being compared numerically
/// do not matter here; this is a purely syntactic helper used by suites.
pub fn normalize_alpha_eq(a: &TargetTerm, b: &TargetTerm) -> Result<bool, EquationError> {
    Ok(alpha_eq(normalize(a)?.term(), normalize(b)?.term()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_target;

    fn norm(s: &str) -> TargetTerm {
        normalize(&parse_target(s).unwrap()).unwrap().into_term()
    }

    fn eq(a: &str, b: &str) -> Equivalence {
        equal(&parse_target(a).unwrap(), &parse_target(b).unwrap()).unwrap()
    }

    #[test]
    fn beta_reduces() {
        assert!(alpha_eq(&norm("(\\x. x) y"), &parse_target("y").unwrap()));
    }

    #[test]
    fn monad_left_unit() {
        // [p] >>= f -> f p
        assert!(alpha_eq(&norm("[p] >>= f"), &parse_target("f p").unwrap()));
    }

    #[test]
    fn monad_right_unit() {
        assert!(alpha_eq(&norm("m >>= \\z. [z]"), &parse_target("m").unwrap()));
    }

    #[test]
    fn monoid_unit() {
        assert!(alpha_eq(&norm("m + 0"), &parse_target("m").unwrap()));
        assert!(alpha_eq(&norm("0 + m"), &parse_target("m").unwrap()));
    }

    #[test]
    fn bind_assoc_flattens() {
        // ((m >>= k) >>= l) and (m >>= λz. k z >>= l) normalize alike.
        let a = norm("(m >>= k) >>= l");
        let b = norm("m >>= \\z. k z >>= l");
        assert!(alpha_eq(&a, &b), "{a:?} vs {b:?}");
    }

    #[test]
    fn sum_commutes_under_normalization() {
        let a = norm("m + n");
        let b = norm("n + m");
        assert!(alpha_eq(&a, &b));
    }

    #[test]
    fn counter_redex_is_projection_return() {
        // λπ.(λx.λρ.[ρ]) π^1 π^2 = λπ.[π^2]
        assert_eq!(
            eq("\\π. [π^2]", "\\π. (\\x. \\ρ. [ρ]) π^1 π^2"),
            Equivalence::Equal
        );
    }

    #[test]
    fn rigid_normal_forms_differ() {
        assert_eq!(eq("\\π. 0", "\\π. [π]"), Equivalence::UnequalByNormalForms);
    }

    #[test]
    fn stuck_binds_are_unknown() {
        assert_eq!(eq("x >>= k", "x >>= k'"), Equivalence::Unknown);
    }

    #[test]
    fn zero_continuation_collapses() {
        assert!(alpha_eq(&norm("m >>= \\z. 0"), &TargetTerm::Zero));
    }

    #[test]
    fn distributes_sums_through_bind() {
        let a = norm("(m + n) >>= k");
        let b = norm("(m >>= k) + (n >>= k)");
        assert!(alpha_eq(&a, &b));
        let c = norm("m >>= (\\z. k z + l z)");
        let d = norm("(m >>= \\z. k z) + (m >>= \\z. l z)");
        assert!(alpha_eq(&c, &d));
    }

    #[test]
    fn normalize_is_idempotent_on_samples() {
        for s in [
            "(\\x. <x, x^1>) <a, b>",
            "([u] + v) >>= (\\z. [z] + 0)",
            "(\\π. (\\x. \\ρ. [ρ]) π^1 π^2) <p, q>",
        ] {
            let once = norm(s);
            let twice = normalize(&once).unwrap().into_term();
            assert!(alpha_eq(&once, &twice), "not idempotent on {s}");
        }
    }

    #[test]
    fn fuel_exhaustion_is_reported() {
        // Ω is untypable; the fuel bound must catch it.
        let omega = parse_target("(\\x. x x) (\\x. x x)").unwrap();
        assert_eq!(
            normalize_with_fuel(&omega, 1000).unwrap_err(),
            EquationError::FuelExhausted
        );
    }
}
