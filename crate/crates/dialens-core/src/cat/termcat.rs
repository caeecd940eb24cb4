//! The target calculus as a category: objects are types, an arrow from `A`
//! to `B` is the equational class of a term `z:A ⊢ M : B`, identities are
//! variables and composition is substitution. Arrow equality is only
//! semidecidable, so it lives with the equational module and the numeric
//! fallback rather than in `PartialEq`.

use alloc::string::String;

use super::{mismatch, CartesianCategory, CatError, Category};
use crate::target::{subst, TargetTerm, TargetType};

#[derive(Debug, Clone, PartialEq)]
pub struct TermArrow {
    pub var: String,
    pub dom: TargetType,
    pub cod: TargetType,
    pub body: TargetTerm,
}

impl TermArrow {
    pub fn new(var: &str, dom: TargetType, cod: TargetType, body: TargetTerm) -> Self {
        TermArrow {
            var: String::from(var),
            dom,
            cod,
            body,
        }
    }

    /// Renames the arrow's distinguished variable.
    pub fn with_var(&self, var: &str) -> TermArrow {
        if self.var == var {
            return self.clone();
        }
        TermArrow {
            var: String::from(var),
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            body: subst(&self.body, &self.var, &TargetTerm::var(var)),
        }
    }
}

pub struct TermCat;

impl Category for TermCat {
    type Obj = TargetType;
    type Map = TermArrow;

    fn dom(&self, m: &TermArrow) -> TargetType {
        m.dom.clone()
    }

    fn cod(&self, m: &TermArrow) -> TargetType {
        m.cod.clone()
    }

    fn identity(&self, o: &TargetType) -> TermArrow {
        TermArrow::new("z", o.clone(), o.clone(), TargetTerm::var("z"))
    }

    fn compose(&self, f: &TermArrow, g: &TermArrow) -> Result<TermArrow, CatError> {
        if f.cod != g.dom {
            return mismatch("term composition");
        }
        Ok(TermArrow {
            var: f.var.clone(),
            dom: f.dom.clone(),
            cod: g.cod.clone(),
            body: subst(&g.body, &g.var, &f.body),
        })
    }
}

impl CartesianCategory for TermCat {
    fn product(&self, a: &TargetType, b: &TargetType) -> TargetType {
        TargetType::prod(a.clone(), b.clone())
    }

    fn proj1(&self, a: &TargetType, b: &TargetType) -> TermArrow {
        TermArrow::new(
            "z",
            self.product(a, b),
            a.clone(),
            TargetTerm::proj1(TargetTerm::var("z")),
        )
    }

    fn proj2(&self, a: &TargetType, b: &TargetType) -> TermArrow {
        TermArrow::new(
            "z",
            self.product(a, b),
            b.clone(),
            TargetTerm::proj2(TargetTerm::var("z")),
        )
    }

    fn tuple(&self, f: &TermArrow, g: &TermArrow) -> Result<TermArrow, CatError> {
        if f.dom != g.dom {
            return mismatch("term pairing");
        }
        let g_aligned = g.with_var(&f.var);
        Ok(TermArrow {
            var: f.var.clone(),
            dom: f.dom.clone(),
            cod: self.product(&f.cod, &g.cod),
            body: TargetTerm::pair(f.body.clone(), g_aligned.body),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equations::{equal, Equivalence};
    use crate::parse::{parse_target, parse_target_type};

    fn ty(s: &str) -> TargetType {
        parse_target_type(s).unwrap()
    }

    #[test]
    fn composition_is_substitution() {
        let cat = TermCat;
        let f = TermArrow::new("z", ty("real"), ty("real * real"), parse_target("<z, z>").unwrap());
        let g = TermArrow::new("w", ty("real * real"), ty("real"), parse_target("w^2").unwrap());
        let fg = cat.compose(&f, &g).unwrap();
        assert_eq!(
            equal(&fg.body, &parse_target("<z, z>^2").unwrap()).unwrap(),
            Equivalence::Equal
        );
    }

    #[test]
    fn identity_laws_up_to_equations() {
        let cat = TermCat;
        let f = TermArrow::new("z", ty("real"), ty("real"), parse_target("mul z z").unwrap());
        let l = cat.compose(&cat.identity(&ty("real")), &f).unwrap();
        let r = cat.compose(&f, &cat.identity(&ty("real"))).unwrap();
        assert_eq!(equal(&l.body, &f.body).unwrap(), Equivalence::Equal);
        assert_eq!(equal(&r.body, &f.body).unwrap(), Equivalence::Equal);
    }

    #[test]
    fn pairing_aligns_variables() {
        let cat = TermCat;
        let f = TermArrow::new("a", ty("real"), ty("real"), parse_target("a").unwrap());
        let g = TermArrow::new("b", ty("real"), ty("real"), parse_target("mul b b").unwrap());
        let t = cat.tuple(&f, &g).unwrap();
        assert_eq!(
            equal(&t.body, &parse_target("<a, mul a a>").unwrap()).unwrap(),
            Equivalence::Equal
        );
    }
}
