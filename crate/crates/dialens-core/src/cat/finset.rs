//! The category of finite sets, with genuine subobjects and the full
//! Dialectica category over it. Carriers are `0..size`; elements of a
//! product `A × B` are encoded as `i * |B| + j`, and all conditions are
//! decided by exhaustive enumeration.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{mismatch, CartesianCategory, CatError, Category, EDialArrow, EDialObj};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinSetObj {
    pub size: usize,
}

impl FinSetObj {
    pub fn new(size: usize) -> Self {
        FinSetObj { size }
    }

    /// Label of an element; carriers are anonymous so labels are indices.
    pub fn label(&self, i: usize) -> String {
        format!("{i}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinSetMap {
    pub dom: FinSetObj,
    pub cod: FinSetObj,
    pub table: Vec<usize>,
}

impl FinSetMap {
    pub fn new(dom: FinSetObj, cod: FinSetObj, table: Vec<usize>) -> Result<Self, CatError> {
        if table.len() != dom.size {
            return Err(CatError(format!(
                "table length {} does not match domain size {}",
                table.len(),
                dom.size
            )));
        }
        if table.iter().any(|&v| v >= cod.size) {
            return Err(CatError(String::from("table value outside codomain")));
        }
        Ok(FinSetMap { dom, cod, table })
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }
}

/// Pair encoding for products.
pub fn pair_index(i: usize, j: usize, right_size: usize) -> usize {
    i * right_size + j
}

pub fn unpair_index(p: usize, right_size: usize) -> (usize, usize) {
    (p / right_size, p % right_size)
}

pub struct FinSet;

impl Category for FinSet {
    type Obj = FinSetObj;
    type Map = FinSetMap;

    fn dom(&self, m: &FinSetMap) -> FinSetObj {
        m.dom.clone()
    }

    fn cod(&self, m: &FinSetMap) -> FinSetObj {
        m.cod.clone()
    }

    fn identity(&self, o: &FinSetObj) -> FinSetMap {
        FinSetMap {
            dom: o.clone(),
            cod: o.clone(),
            table: (0..o.size).collect(),
        }
    }

    fn compose(&self, f: &FinSetMap, g: &FinSetMap) -> Result<FinSetMap, CatError> {
        if f.cod != g.dom {
            return mismatch("finite-set composition");
        }
        Ok(FinSetMap {
            dom: f.dom.clone(),
            cod: g.cod.clone(),
            table: f.table.iter().map(|&i| g.table[i]).collect(),
        })
    }
}

impl CartesianCategory for FinSet {
    fn product(&self, a: &FinSetObj, b: &FinSetObj) -> FinSetObj {
        FinSetObj::new(a.size * b.size)
    }

    fn proj1(&self, a: &FinSetObj, b: &FinSetObj) -> FinSetMap {
        FinSetMap {
            dom: self.product(a, b),
            cod: a.clone(),
            table: (0..a.size * b.size).map(|p| p / b.size).collect(),
        }
    }

    fn proj2(&self, a: &FinSetObj, b: &FinSetObj) -> FinSetMap {
        FinSetMap {
            dom: self.product(a, b),
            cod: b.clone(),
            table: (0..a.size * b.size).map(|p| p % b.size).collect(),
        }
    }

    fn tuple(&self, f: &FinSetMap, g: &FinSetMap) -> Result<FinSetMap, CatError> {
        if f.dom != g.dom {
            return mismatch("finite-set pairing");
        }
        Ok(FinSetMap {
            dom: f.dom.clone(),
            cod: self.product(&f.cod, &g.cod),
            table: (0..f.dom.size)
                .map(|i| pair_index(f.table[i], g.table[i], g.cod.size))
                .collect(),
        })
    }
}

/// A subobject of `A × X` as a predicate table over the product carrier,
/// representing the mono class by its image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subobject {
    pub base: FinSetObj,
    pub pred: Vec<bool>,
}

impl Subobject {
    pub fn new(base: FinSetObj, pred: Vec<bool>) -> Result<Self, CatError> {
        if pred.len() != base.size {
            return Err(CatError(String::from(
                "predicate table does not match carrier size",
            )));
        }
        Ok(Subobject { base, pred })
    }

    pub fn full(base: FinSetObj) -> Self {
        let pred = alloc::vec![true; base.size];
        Subobject { base, pred }
    }

    pub fn holds(&self, i: usize) -> bool {
        self.pred[i]
    }

    pub fn is_full(&self) -> bool {
        self.pred.iter().all(|&b| b)
    }
}

/// Object of `Dial(FinSet)`: `(A, X, a ↣ A × X)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DialObj {
    pub left: FinSetObj,
    pub right: FinSetObj,
    pub sub: Subobject,
}

impl DialObj {
    pub fn new(left: FinSetObj, right: FinSetObj, sub: Subobject) -> Result<Self, CatError> {
        if sub.base.size != left.size * right.size {
            return Err(CatError(String::from(
                "subobject is not over the product carrier",
            )));
        }
        Ok(DialObj { left, right, sub })
    }

    pub fn full(left: FinSetObj, right: FinSetObj) -> Self {
        let base = FinSetObj::new(left.size * right.size);
        DialObj {
            left,
            right,
            sub: Subobject::full(base),
        }
    }
}

/// Arrow candidate `(f : A -> B, F : A × Y -> X)` between Dialectica
/// objects; validity is the condition checked by `dial_check`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DialArrow {
    pub src: DialObj,
    pub tgt: DialObj,
    pub fwd: FinSetMap,
    pub bwd: FinSetMap,
}

impl DialArrow {
    pub fn new(
        src: DialObj,
        tgt: DialObj,
        fwd: FinSetMap,
        bwd: FinSetMap,
    ) -> Result<Self, CatError> {
        if fwd.dom != src.left || fwd.cod != tgt.left {
            return mismatch("dialectica forward map");
        }
        if bwd.dom.size != src.left.size * tgt.right.size || bwd.cod != src.right {
            return mismatch("dialectica backward map");
        }
        Ok(DialArrow {
            src,
            tgt,
            fwd,
            bwd,
        })
    }
}

/// The Set reading of the arrow condition: `(f(a), y) ∈ b` for all
/// `(a, y)` such that `(a, F(a, y)) ∈ a`, decided exhaustively. In Set the
/// unique fill-in arrow of the pullback diagram exists exactly when this
/// inclusion holds, since monos are injections.
pub fn dial_check(arrow: &DialArrow) -> bool {
    let a_size = arrow.src.left.size;
    let y_size = arrow.tgt.right.size;
    let x_size = arrow.src.right.size;
    for a in 0..a_size {
        for y in 0..y_size {
            let x = arrow.bwd.apply(pair_index(a, y, y_size));
            if arrow.src.sub.holds(pair_index(a, x, x_size)) {
                let fa = arrow.fwd.apply(a);
                if !arrow.tgt.sub.holds(pair_index(fa, y, y_size)) {
                    return false;
                }
            }
        }
    }
    true
}

/// Identity `(1_A, π2)` on `(A, X, a)`.
pub fn dial_identity(obj: &DialObj) -> DialArrow {
    let cat = FinSet;
    DialArrow {
        src: obj.clone(),
        tgt: obj.clone(),
        fwd: cat.identity(&obj.left),
        bwd: cat.proj2(&obj.left, &obj.right),
    }
}

/// Composition `(f;g, <π1, (f×1);G>;F)`. Well-definedness (the composite
/// passing `dial_check`) is a theorem; suites verify it on random valid
/// arrows.
pub fn dial_compose(a1: &DialArrow, a2: &DialArrow) -> Result<DialArrow, CatError> {
    if a1.tgt != a2.src {
        return mismatch("dialectica composition");
    }
    let cat = FinSet;
    let fwd = cat.compose(&a1.fwd, &a2.fwd)?;
    let a = &a1.src.left;
    let z = &a2.tgt.right;
    let p1 = cat.proj1(a, z);
    let f_times_1 = cat.prod_map(&a1.fwd, &cat.identity(z))?;
    let through_g = cat.compose(&f_times_1, &a2.bwd)?;
    let bwd = cat.compose(&cat.tuple(&p1, &through_g)?, &a1.bwd)?;
    Ok(DialArrow {
        src: a1.src.clone(),
        tgt: a2.tgt.clone(),
        fwd,
        bwd,
    })
}

/// Embeds a full-subobject arrow into `Dial(FinSet)`.
pub fn edial_to_dial(d: &EDialArrow<FinSet>) -> DialArrow {
    DialArrow {
        src: DialObj::full(d.src.left.clone(), d.src.right.clone()),
        tgt: DialObj::full(d.tgt.left.clone(), d.tgt.right.clone()),
        fwd: d.fwd.clone(),
        bwd: d.bwd.clone(),
    }
}

/// Forgets the (full) subobject of a Dialectica arrow.
pub fn dial_to_edial(d: &DialArrow) -> Result<EDialArrow<FinSet>, CatError> {
    if !d.src.sub.is_full() || !d.tgt.sub.is_full() {
        return Err(CatError(String::from(
            "arrow endpoints carry non-full subobjects",
        )));
    }
    Ok(EDialArrow {
        src: EDialObj {
            left: d.src.left.clone(),
            right: d.src.right.clone(),
        },
        tgt: EDialObj {
            left: d.tgt.left.clone(),
            right: d.tgt.right.clone(),
        },
        fwd: d.fwd.clone(),
        bwd: d.bwd.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn identity_candidate_passes_dial_check() {
        let a = FinSetObj::new(3);
        let x = FinSetObj::new(2);
        let sub = Subobject::new(FinSetObj::new(6), vec![true, false, true, true, false, false])
            .unwrap();
        let obj = DialObj::new(a, x, sub).unwrap();
        let id = dial_identity(&obj);
        assert!(dial_check(&id));
    }

    #[test]
    fn full_subobjects_accept_any_candidate() {
        let src = DialObj::full(FinSetObj::new(2), FinSetObj::new(3));
        let tgt = DialObj::full(FinSetObj::new(3), FinSetObj::new(2));
        let fwd = FinSetMap::new(FinSetObj::new(2), FinSetObj::new(3), vec![2, 0]).unwrap();
        let bwd = FinSetMap::new(FinSetObj::new(4), FinSetObj::new(3), vec![1, 2, 0, 0]).unwrap();
        let arrow = DialArrow::new(src, tgt, fwd, bwd).unwrap();
        assert!(dial_check(&arrow));
    }

    #[test]
    fn crafted_violation_fails_dial_check() {
        // a = {(0,0)}, b = ∅, f = id, F = const 0: (0, F(0,0)) ∈ a but
        // (f(0), 0) ∉ b.
        let two = FinSetObj::new(2);
        let sub_a = Subobject::new(FinSetObj::new(4), vec![true, false, false, false]).unwrap();
        let sub_b = Subobject::new(FinSetObj::new(4), vec![false, false, false, false]).unwrap();
        let src = DialObj::new(two.clone(), two.clone(), sub_a).unwrap();
        let tgt = DialObj::new(two.clone(), two.clone(), sub_b).unwrap();
        let fwd = FinSet.identity(&two);
        let bwd = FinSetMap::new(FinSetObj::new(4), two, vec![0, 0, 0, 0]).unwrap();
        let arrow = DialArrow::new(src, tgt, fwd, bwd).unwrap();
        assert!(!dial_check(&arrow));
    }

    #[test]
    fn composition_matches_pointwise_formula() {
        // F-component of the composite at (a, z) is F(a, G(f(a), z)).
        let a = FinSetObj::new(2);
        let x = FinSetObj::new(2);
        let b = FinSetObj::new(3);
        let y = FinSetObj::new(2);
        let c = FinSetObj::new(2);
        let z = FinSetObj::new(3);
        let src = DialObj::full(a.clone(), x.clone());
        let mid = DialObj::full(b.clone(), y.clone());
        let tgt = DialObj::full(c.clone(), z.clone());
        let f = FinSetMap::new(a.clone(), b.clone(), vec![1, 2]).unwrap();
        let cap_f = FinSetMap::new(FinSetObj::new(4), x, vec![0, 1, 1, 0]).unwrap();
        let g = FinSetMap::new(b.clone(), c, vec![0, 1, 1]).unwrap();
        let cap_g = FinSetMap::new(FinSetObj::new(9), y.clone(), vec![0, 1, 0, 1, 0, 1, 1, 1, 0])
            .unwrap();
        let a1 = DialArrow::new(src, mid.clone(), f.clone(), cap_f.clone()).unwrap();
        let a2 = DialArrow::new(mid, tgt, g, cap_g.clone()).unwrap();
        let composite = dial_compose(&a1, &a2).unwrap();
        for av in 0..2 {
            for zv in 0..3 {
                let gv = cap_g.apply(pair_index(f.apply(av), zv, 3));
                let expect = cap_f.apply(pair_index(av, gv, 2));
                assert_eq!(composite.bwd.apply(pair_index(av, zv, 3)), expect);
            }
        }
        assert!(dial_check(&composite));
    }

    #[test]
    fn identity_laws_are_exact() {
        let src = DialObj::full(FinSetObj::new(2), FinSetObj::new(2));
        let tgt = DialObj::full(FinSetObj::new(2), FinSetObj::new(2));
        let fwd = FinSetMap::new(FinSetObj::new(2), FinSetObj::new(2), vec![1, 0]).unwrap();
        let bwd = FinSetMap::new(FinSetObj::new(4), FinSetObj::new(2), vec![1, 1, 0, 1]).unwrap();
        let arrow = DialArrow::new(src.clone(), tgt.clone(), fwd, bwd).unwrap();
        let left = dial_compose(&dial_identity(&src), &arrow).unwrap();
        let right = dial_compose(&arrow, &dial_identity(&tgt)).unwrap();
        assert_eq!(left, arrow);
        assert_eq!(right, arrow);
    }
}
