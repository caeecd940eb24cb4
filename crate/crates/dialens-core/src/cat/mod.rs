//! Concrete categorical constructions: Euclidean lenses and full-subobject
//! Dialectica arrows over a pluggable Cartesian category, with the functor
//! `G` between them. Instances live in the submodules: finite sets (with
//! genuine subobjects), polynomial maps over exact rationals, and the
//! target term category.

use alloc::format;
use alloc::string::String;

pub mod finset;
pub mod poly;
pub mod termcat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatError(pub String);

impl core::fmt::Display for CatError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl core::error::Error for CatError {}

pub fn mismatch<T>(what: &str) -> Result<T, CatError> {
    Err(CatError(format!("object mismatch in {what}")))
}

/// A category with chosen identities and composition. Composition is in
/// diagram order: `compose(f, g)` is `f;g`.
pub trait Category {
    type Obj: Clone + PartialEq + core::fmt::Debug;
    type Map: Clone + core::fmt::Debug;

    fn dom(&self, m: &Self::Map) -> Self::Obj;
    fn cod(&self, m: &Self::Map) -> Self::Obj;
    fn identity(&self, o: &Self::Obj) -> Self::Map;
    fn compose(&self, f: &Self::Map, g: &Self::Map) -> Result<Self::Map, CatError>;
}

/// Chosen binary products with projections and pairing.
pub trait CartesianCategory: Category {
    fn product(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Obj;
    fn proj1(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Map;
    fn proj2(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Map;
    /// `<f, g>` for `f, g` out of a common domain.
    fn tuple(&self, f: &Self::Map, g: &Self::Map) -> Result<Self::Map, CatError>;

    /// `f × g = <π1;f, π2;g>`.
    fn prod_map(&self, f: &Self::Map, g: &Self::Map) -> Result<Self::Map, CatError> {
        let a = self.dom(f);
        let b = self.dom(g);
        let p1 = self.proj1(&a, &b);
        let p2 = self.proj2(&a, &b);
        self.tuple(&self.compose(&p1, f)?, &self.compose(&p2, g)?)
    }
}

/// Object of the Euclidean-lens category: the trivial bundle
/// `π1 : base × fiber -> base`.
#[derive(Debug)]
pub struct ELensObj<C: Category> {
    pub base: C::Obj,
    pub fiber: C::Obj,
}

impl<C: Category> Clone for ELensObj<C> {
    fn clone(&self) -> Self {
        ELensObj {
            base: self.base.clone(),
            fiber: self.fiber.clone(),
        }
    }
}

impl<C: Category> PartialEq for ELensObj<C> {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.fiber == other.fiber
    }
}

impl<C: Category> ELensObj<C> {
    pub fn new(base: C::Obj, fiber: C::Obj) -> Self {
        ELensObj { base, fiber }
    }

    pub fn total(&self, cat: &C) -> C::Obj
    where
        C: CartesianCategory,
    {
        cat.product(&self.base, &self.fiber)
    }
}

/// An arrow of Euclidean lenses: a forward base map `A -> B` and a
/// backward map `A × Y -> A × X` satisfying `F;π1 = π1`.
#[derive(Debug)]
pub struct ELensArrow<C: Category> {
    pub src: ELensObj<C>,
    pub tgt: ELensObj<C>,
    pub fwd: C::Map,
    pub bwd: C::Map,
}

impl<C: Category> Clone for ELensArrow<C> {
    fn clone(&self) -> Self {
        ELensArrow {
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            fwd: self.fwd.clone(),
            bwd: self.bwd.clone(),
        }
    }
}

/// Identity lens `(1, <π1, π2>)`.
pub fn elens_identity<C: CartesianCategory>(cat: &C, obj: &ELensObj<C>) -> ELensArrow<C> {
    let p1 = cat.proj1(&obj.base, &obj.fiber);
    let p2 = cat.proj2(&obj.base, &obj.fiber);
    let bwd = cat
        .tuple(&p1, &p2)
        .expect("projections share their domain");
    ELensArrow {
        src: obj.clone(),
        tgt: obj.clone(),
        fwd: cat.identity(&obj.base),
        bwd,
    }
}

/// Lens composition `(f;g, <π1, (f×1);G;π2>;F)`.
pub fn elens_compose<C: CartesianCategory>(
    cat: &C,
    a1: &ELensArrow<C>,
    a2: &ELensArrow<C>,
) -> Result<ELensArrow<C>, CatError> {
    if a1.tgt != a2.src {
        return mismatch("lens composition");
    }
    let fwd = cat.compose(&a1.fwd, &a2.fwd)?;
    let a = &a1.src.base;
    let z = &a2.tgt.fiber;
    let p1 = cat.proj1(a, z);
    let f_times_1 = cat.prod_map(&a1.fwd, &cat.identity(z))?;
    let through_g = cat.compose(&f_times_1, &a2.bwd)?;
    let y_part = cat.compose(
        &through_g,
        &cat.proj2(&a2.src.base, &a2.src.fiber),
    )?;
    let bwd = cat.compose(&cat.tuple(&p1, &y_part)?, &a1.bwd)?;
    Ok(ELensArrow {
        src: a1.src.clone(),
        tgt: a2.tgt.clone(),
        fwd,
        bwd,
    })
}

/// The defining lens condition `F;π1 = π1`, checkable wherever maps have
/// decidable equality.
pub fn elens_lens_law<C: CartesianCategory>(cat: &C, arrow: &ELensArrow<C>) -> Result<bool, CatError>
where
    C::Map: PartialEq,
{
    let left = cat.compose(
        &arrow.bwd,
        &cat.proj1(&arrow.src.base, &arrow.src.fiber),
    )?;
    let right = cat.proj1(&arrow.src.base, &arrow.tgt.fiber);
    Ok(left == right)
}

/// Object of the full-subobject Dialectica category: `(A, X, 1_{A×X})`.
#[derive(Debug)]
pub struct EDialObj<C: Category> {
    pub left: C::Obj,
    pub right: C::Obj,
}

impl<C: Category> Clone for EDialObj<C> {
    fn clone(&self) -> Self {
        EDialObj {
            left: self.left.clone(),
            right: self.right.clone(),
        }
    }
}

impl<C: Category> PartialEq for EDialObj<C> {
    fn eq(&self, other: &Self) -> bool {
        self.left == other.left && self.right == other.right
    }
}

/// Arrow `(f : A -> B, F : A × Y -> X)`; over full subobjects no side
/// condition is required.
#[derive(Debug)]
pub struct EDialArrow<C: Category> {
    pub src: EDialObj<C>,
    pub tgt: EDialObj<C>,
    pub fwd: C::Map,
    pub bwd: C::Map,
}

impl<C: Category> Clone for EDialArrow<C> {
    fn clone(&self) -> Self {
        EDialArrow {
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            fwd: self.fwd.clone(),
            bwd: self.bwd.clone(),
        }
    }
}

/// Identity `(1_A, π2)`.
pub fn edial_identity<C: CartesianCategory>(cat: &C, obj: &EDialObj<C>) -> EDialArrow<C> {
    EDialArrow {
        src: obj.clone(),
        tgt: obj.clone(),
        fwd: cat.identity(&obj.left),
        bwd: cat.proj2(&obj.left, &obj.right),
    }
}

/// Dialectica composition `(f;g, <π1, (f×1);G>;F)`.
pub fn edial_compose<C: CartesianCategory>(
    cat: &C,
    a1: &EDialArrow<C>,
    a2: &EDialArrow<C>,
) -> Result<EDialArrow<C>, CatError> {
    if a1.tgt != a2.src {
        return mismatch("dialectica composition");
    }
    let fwd = cat.compose(&a1.fwd, &a2.fwd)?;
    let a = &a1.src.left;
    let z = &a2.tgt.right;
    let p1 = cat.proj1(a, z);
    let f_times_1 = cat.prod_map(&a1.fwd, &cat.identity(z))?;
    let through_g = cat.compose(&f_times_1, &a2.bwd)?;
    let bwd = cat.compose(&cat.tuple(&p1, &through_g)?, &a1.bwd)?;
    Ok(EDialArrow {
        src: a1.src.clone(),
        tgt: a2.tgt.clone(),
        fwd,
        bwd,
    })
}

/// `G : ELens -> EDial`, postcomposing the backward leg with `π2`.
pub fn g_functor<C: CartesianCategory>(
    cat: &C,
    e: &ELensArrow<C>,
) -> Result<EDialArrow<C>, CatError> {
    let p2 = cat.proj2(&e.src.base, &e.src.fiber);
    Ok(EDialArrow {
        src: EDialObj {
            left: e.src.base.clone(),
            right: e.src.fiber.clone(),
        },
        tgt: EDialObj {
            left: e.tgt.base.clone(),
            right: e.tgt.fiber.clone(),
        },
        fwd: e.fwd.clone(),
        bwd: cat.compose(&e.bwd, &p2)?,
    })
}

/// `G⁻¹ : EDial -> ELens`, tupling the backward leg with `π1`.
pub fn g_inverse<C: CartesianCategory>(
    cat: &C,
    d: &EDialArrow<C>,
) -> Result<ELensArrow<C>, CatError> {
    let p1 = cat.proj1(&d.src.left, &d.tgt.right);
    Ok(ELensArrow {
        src: ELensObj {
            base: d.src.left.clone(),
            fiber: d.src.right.clone(),
        },
        tgt: ELensObj {
            base: d.tgt.left.clone(),
            fiber: d.tgt.right.clone(),
        },
        fwd: d.fwd.clone(),
        bwd: cat.tuple(&p1, &d.bwd)?,
    })
}

#[cfg(test)]
mod tests {
    use super::finset::{FinSet, FinSetMap, FinSetObj};
    use super::*;

    #[test]
    fn identity_lens_satisfies_lens_law() {
        let cat = FinSet;
        let obj = ELensObj::<FinSet>::new(FinSetObj::new(3), FinSetObj::new(2));
        let id = elens_identity(&cat, &obj);
        assert!(elens_lens_law(&cat, &id).unwrap());
    }

    #[test]
    fn g_roundtrip_on_identity() {
        let cat = FinSet;
        let obj = ELensObj::<FinSet>::new(FinSetObj::new(2), FinSetObj::new(3));
        let id = elens_identity(&cat, &obj);
        let d = g_functor(&cat, &id).unwrap();
        // G sends the identity lens to the Dialectica identity (1, π2).
        let did = edial_identity(&cat, &d.src);
        assert_eq!(d.fwd, did.fwd);
        assert_eq!(d.bwd, did.bwd);
        let back = g_inverse(&cat, &d).unwrap();
        assert_eq!(back.fwd, id.fwd);
        assert_eq!(back.bwd, id.bwd);
    }

    #[test]
    fn g_inverse_backward_leg_is_pairing() {
        let cat = FinSet;
        let a = FinSetObj::new(2);
        let x = FinSetObj::new(2);
        let b = FinSetObj::new(2);
        let y = FinSetObj::new(2);
        let fwd = FinSetMap::new(a.clone(), b.clone(), alloc::vec![1, 0]).unwrap();
        // F : A × Y -> X arbitrary
        let bwd = FinSetMap::new(cat.product(&a, &y), x.clone(), alloc::vec![0, 1, 1, 0]).unwrap();
        let d = EDialArrow::<FinSet> {
            src: EDialObj { left: a.clone(), right: x },
            tgt: EDialObj { left: b, right: y.clone() },
            fwd,
            bwd: bwd.clone(),
        };
        let e = g_inverse(&cat, &d).unwrap();
        let expect = cat.tuple(&cat.proj1(&a, &y), &bwd).unwrap();
        assert_eq!(e.bwd, expect);
        assert!(elens_lens_law(&cat, &e).unwrap());
    }
}
