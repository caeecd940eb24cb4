//! The primitive signature: each primitive carries its numeric
//! implementation (value and partial derivatives) and a witness term in the
//! target calculus pairing the value function with its reverse derivative.
//!
//! Default signature: `add`, `mul`, `neg`, `sq` (u²), `cub` (u³+u, the
//! smooth nonlinear unary kept polynomial so oracles stay exact), plus
//! numeric literals. All primitives are `real`-typed and curried.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::source::SourceType;
use crate::target::{TargetTerm, TargetType};

/// Numeric reading of a primitive: value function and per-argument partial
/// derivatives on reals.
#[derive(Clone)]
pub struct PrimitiveImpl {
    pub symbol: String,
    pub arity: usize,
    pub value: fn(&[f64]) -> f64,
    /// All partial derivatives at the given arguments, one per argument.
    pub partials: fn(&[f64]) -> Vec<f64>,
}

/// Dialectica reading of a primitive: a witness term of type `W(A)` for the
/// primitive's source type `A`, i.e. a nested pair of the value function
/// and a counter computing the transposed pushforward.
#[derive(Clone)]
pub struct PrimitiveLens {
    pub symbol: String,
    pub source_type: SourceType,
    pub witness: TargetTerm,
}

pub struct PrimRegistry {
    impls: BTreeMap<String, PrimitiveImpl>,
    lenses: BTreeMap<String, PrimitiveLens>,
}

fn real() -> TargetType {
    TargetType::real()
}

fn curried_source(arity: usize) -> SourceType {
    let r = SourceType::real();
    SourceType::arrows(&vec![r.clone(); arity], r)
}

fn curried_target(arity: usize) -> TargetType {
    let mut t = real();
    for _ in 0..arity {
        t = TargetType::arrow(real(), t);
    }
    t
}

fn tprim(symbol: &str, arity: usize) -> TargetTerm {
    TargetTerm::prim(symbol, curried_target(arity))
}

fn tlit(lexeme: &str) -> TargetTerm {
    TargetTerm::lit(lexeme)
}

/// Witness for a unary real primitive with a given backward numerator:
/// `<\(a:real). f a, \(p:real*real). [deriv(p^1) * p^2]>` where the second
/// factor is supplied as a function of the point term.
fn unary_witness(symbol: &str, deriv_times_cot: impl Fn(TargetTerm, TargetTerm) -> TargetTerm) -> TargetTerm {
    let a = TargetTerm::var("a");
    let p = TargetTerm::var("p");
    let fwd = TargetTerm::lam_ann("a", real(), TargetTerm::app(tprim(symbol, 1), a));
    let bwd = TargetTerm::lam_ann(
        "p",
        TargetType::prod(real(), real()),
        TargetTerm::ret(deriv_times_cot(
            TargetTerm::proj1(p.clone()),
            TargetTerm::proj2(p),
        )),
    );
    TargetTerm::pair(fwd, bwd)
}

/// Witness for a curried binary real primitive. The two counters give the
/// reverse derivative in the second and first argument respectively:
/// `<\(a:real). <\(b:real). f a b, \(q:real*real). [d2 * q^2]>,
///   \(p:real*(real*real)). [d1 * p^2^2]>`.
fn binary_witness(
    symbol: &str,
    // cotangent-weighted partial in the second argument, given (a, b, cot)
    d2: impl Fn(TargetTerm, TargetTerm, TargetTerm) -> TargetTerm,
    // cotangent-weighted partial in the first argument, given (a, b, cot)
    d1: impl Fn(TargetTerm, TargetTerm, TargetTerm) -> TargetTerm,
) -> TargetTerm {
    let a = || TargetTerm::var("a");
    let b = || TargetTerm::var("b");
    let q = || TargetTerm::var("q");
    let p = || TargetTerm::var("p");
    let inner_fwd = TargetTerm::lam_ann(
        "b",
        real(),
        TargetTerm::apps(tprim(symbol, 2), &[a(), b()]),
    );
    let inner_bwd = TargetTerm::lam_ann(
        "q",
        TargetType::prod(real(), real()),
        TargetTerm::ret(d2(a(), TargetTerm::proj1(q()), TargetTerm::proj2(q()))),
    );
    let outer_fwd = TargetTerm::lam_ann("a", real(), TargetTerm::pair(inner_fwd, inner_bwd));
    let outer_bwd = TargetTerm::lam_ann(
        "p",
        TargetType::prod(real(), TargetType::prod(real(), real())),
        TargetTerm::ret(d1(
            TargetTerm::proj1(p()),
            TargetTerm::proj1(TargetTerm::proj2(p())),
            TargetTerm::proj2(TargetTerm::proj2(p())),
        )),
    );
    TargetTerm::pair(outer_fwd, outer_bwd)
}

fn mul_t(x: TargetTerm, y: TargetTerm) -> TargetTerm {
    TargetTerm::apps(tprim("mul", 2), &[x, y])
}

fn add_t(x: TargetTerm, y: TargetTerm) -> TargetTerm {
    TargetTerm::apps(tprim("add", 2), &[x, y])
}

fn neg_t(x: TargetTerm) -> TargetTerm {
    TargetTerm::app(tprim("neg", 1), x)
}

impl PrimRegistry {
    pub fn new() -> Self {
        PrimRegistry {
            impls: BTreeMap::new(),
            lenses: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, imp: PrimitiveImpl, lens: PrimitiveLens) {
        self.lenses.insert(lens.symbol.clone(), lens);
        self.impls.insert(imp.symbol.clone(), imp);
    }

    pub fn impl_of(&self, symbol: &str) -> Option<&PrimitiveImpl> {
        self.impls.get(symbol)
    }

    pub fn lens_of(&self, symbol: &str) -> Option<&PrimitiveLens> {
        self.lenses.get(symbol)
    }

    /// Literal reading of a symbol that is not a registered primitive.
    pub fn literal(&self, symbol: &str) -> Option<f64> {
        if self.impls.contains_key(symbol) {
            return None;
        }
        symbol.parse::<f64>().ok()
    }

    pub fn source_type_of(&self, symbol: &str) -> Option<SourceType> {
        self.lenses.get(symbol).map(|l| l.source_type.clone())
    }

    pub fn target_type_of(&self, symbol: &str) -> Option<TargetType> {
        self.impls
            .get(symbol)
            .map(|imp| curried_target(imp.arity))
    }

    /// The witness term `W(A)` for a primitive or literal symbol.
    pub fn witness_of(&self, symbol: &str) -> Option<TargetTerm> {
        if let Some(lens) = self.lenses.get(symbol) {
            return Some(lens.witness.clone());
        }
        self.literal(symbol).map(|_| tlit(symbol))
    }

    pub fn symbols(&self) -> impl Iterator<Item = &String> {
        self.impls.keys()
    }
}

impl Default for PrimRegistry {
    fn default() -> Self {
        let mut reg = PrimRegistry::new();

        reg.register(
            PrimitiveImpl {
                symbol: String::from("add"),
                arity: 2,
                value: |a| a[0] + a[1],
                partials: |_| vec![1.0, 1.0],
            },
            PrimitiveLens {
                symbol: String::from("add"),
                source_type: curried_source(2),
                witness: binary_witness("add", |_a, _b, cot| cot, |_a, _b, cot| cot),
            },
        );

        reg.register(
            PrimitiveImpl {
                symbol: String::from("mul"),
                arity: 2,
                value: |a| a[0] * a[1],
                partials: |a| vec![a[1], a[0]],
            },
            PrimitiveLens {
                symbol: String::from("mul"),
                source_type: curried_source(2),
                witness: binary_witness(
                    "mul",
                    |a, _b, cot| mul_t(a, cot),
                    |_a, b, cot| mul_t(b, cot),
                ),
            },
        );

        reg.register(
            PrimitiveImpl {
                symbol: String::from("neg"),
                arity: 1,
                value: |a| -a[0],
                partials: |_| vec![-1.0],
            },
            PrimitiveLens {
                symbol: String::from("neg"),
                source_type: curried_source(1),
                witness: unary_witness("neg", |_pt, cot| neg_t(cot)),
            },
        );

        reg.register(
            PrimitiveImpl {
                symbol: String::from("sq"),
                arity: 1,
                value: |a| a[0] * a[0],
                partials: |a| vec![2.0 * a[0]],
            },
            PrimitiveLens {
                symbol: String::from("sq"),
                source_type: curried_source(1),
                witness: unary_witness("sq", |pt, cot| mul_t(mul_t(tlit("2.0"), pt), cot)),
            },
        );

        reg.register(
            PrimitiveImpl {
                symbol: String::from("cub"),
                arity: 1,
                value: |a| a[0] * a[0] * a[0] + a[0],
                partials: |a| vec![3.0 * a[0] * a[0] + 1.0],
            },
            PrimitiveLens {
                symbol: String::from("cub"),
                source_type: curried_source(1),
                witness: unary_witness("cub", |pt, cot| {
                    mul_t(
                        add_t(mul_t(tlit("3.0"), mul_t(pt.clone(), pt)), tlit("1.0")),
                        cot,
                    )
                }),
            },
        );

        reg
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn literals_resolve_and_prims_do_not() {
        let reg = PrimRegistry::default();
        assert_eq!(reg.literal("2.5"), Some(2.5));
        assert_eq!(reg.literal("add"), None);
        assert!(reg.witness_of("3.0").is_some());
        assert!(reg.witness_of("nonsense").is_none());
    }

    #[test]
    fn partials_match_central_differences() {
        let reg = PrimRegistry::default();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let h = 1e-6;
        for symbol in ["add", "mul", "neg", "sq", "cub"] {
            let imp = reg.impl_of(symbol).unwrap();
            for _ in 0..100 {
                let args: Vec<f64> = (0..imp.arity).map(|_| rng.gen_range(-2.0..2.0)).collect();
                let grads = (imp.partials)(&args);
                for i in 0..imp.arity {
                    let mut hi = args.clone();
                    let mut lo = args.clone();
                    hi[i] += h;
                    lo[i] -= h;
                    let fd = ((imp.value)(&hi) - (imp.value)(&lo)) / (2.0 * h);
                    let denom = grads[i].abs().max(fd.abs()).max(1.0);
                    assert!(
                        (grads[i] - fd).abs() / denom < 1e-6,
                        "{symbol} partial {i} at {args:?}: {} vs fd {}",
                        grads[i],
                        fd
                    );
                }
            }
        }
    }
}
