//! Sparse multivariate polynomials over exact rationals, tuples of which
//! form a Cartesian reverse differential category: the reverse differential
//! `Rf(a, w) = Jᵀf(a)·w` is computed by symbolic partial differentiation
//! and all functor laws hold as exact polynomial identities.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{mismatch, CartesianCategory, CatError, Category, ELensArrow, ELensObj};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Polynomial in `nvars` variables: monomial exponent vector -> nonzero
/// rational coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(alloc::vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut exps = alloc::vec![0; nvars];
        exps[i] = 1;
        let mut p = Poly::zero(nvars);
        p.terms.insert(exps, Rat::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, exps: Vec<u32>, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, coeff);
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let exps: Vec<u32> = ma.iter().zip(mb.iter()).map(|(x, y)| x + y).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        let mut out = Poly::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (m, k) in &self.terms {
            out.terms.insert(m.clone(), k * c);
        }
        out
    }

    /// Symbolic partial derivative in variable `i`.
    pub fn partial(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m[i] == 0 {
                continue;
            }
            let mut exps = m.clone();
            exps[i] -= 1;
            out.add_term(exps, c * rat(m[i] as i64));
        }
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Result<Rat, CatError> {
        if point.len() != self.nvars {
            return Err(CatError(format!(
                "point dimension {} does not match {} variables",
                point.len(),
                self.nvars
            )));
        }
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(m.iter()) {
                for _ in 0..e {
                    term *= x;
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Substitutes `args[i]` for variable `i`; all `args` must share a
    /// variable count, which becomes the result's.
    pub fn substitute(&self, args: &[Poly]) -> Result<Poly, CatError> {
        if args.len() != self.nvars {
            return Err(CatError(String::from(
                "substitution arity does not match variable count",
            )));
        }
        let out_vars = args.first().map(|p| p.nvars).unwrap_or(0);
        if args.iter().any(|p| p.nvars != out_vars) {
            return Err(CatError(String::from(
                "substitution arguments disagree on variable count",
            )));
        }
        let mut total = Poly::zero(out_vars);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(out_vars, c.clone());
            for (arg, &e) in args.iter().zip(m.iter()) {
                for _ in 0..e {
                    term = term.mul(arg);
                }
            }
            total = total.add(&term);
        }
        Ok(total)
    }

    /// Reindexes into a wider variable space, keeping variable positions.
    pub fn pad(&self, nvars: usize) -> Poly {
        assert!(nvars >= self.nvars);
        let mut out = Poly::zero(nvars);
        for (m, c) in &self.terms {
            let mut exps = alloc::vec![0; nvars];
            exps[..m.len()].copy_from_slice(m);
            out.terms.insert(exps, c.clone());
        }
        out
    }
}

/// A tuple of polynomials `Q^dom -> Q^cod`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMap {
    pub dom: usize,
    pub cod: usize,
    pub outs: Vec<Poly>,
}

impl PolyMap {
    pub fn new(dom: usize, outs: Vec<Poly>) -> Result<Self, CatError> {
        if outs.iter().any(|p| p.nvars != dom) {
            return Err(CatError(String::from(
                "output polynomial has wrong variable count",
            )));
        }
        Ok(PolyMap {
            dom,
            cod: outs.len(),
            outs,
        })
    }

    pub fn identity(n: usize) -> Self {
        PolyMap {
            dom: n,
            cod: n,
            outs: (0..n).map(|i| Poly::var(n, i)).collect(),
        }
    }

    /// Exact evaluation at a rational point.
    pub fn apply(&self, point: &[Rat]) -> Result<Vec<Rat>, CatError> {
        if point.len() != self.dom {
            return Err(CatError(format!(
                "point dimension {} does not match domain {}",
                point.len(),
                self.dom
            )));
        }
        self.outs.iter().map(|p| p.eval(point)).collect()
    }

    /// `self;g`: substitutes this map's outputs into `g`.
    pub fn then(&self, g: &PolyMap) -> Result<PolyMap, CatError> {
        if self.cod != g.dom {
            return mismatch("polynomial composition");
        }
        let outs = g
            .outs
            .iter()
            .map(|p| p.substitute(&self.outs))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PolyMap {
            dom: self.dom,
            cod: g.cod,
            outs,
        })
    }
}

/// The reverse differential `Rf : A × B -> A`,
/// `Rf(a, w) = Jᵀf(a) · w`, linear in `w` by construction.
pub fn poly_reverse_diff(f: &PolyMap) -> PolyMap {
    let n = f.dom;
    let m = f.cod;
    let total = n + m;
    let mut outs = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = Poly::zero(total);
        for (j, out) in f.outs.iter().enumerate() {
            let dji = out.partial(i).pad(total);
            let w_j = Poly::var(total, n + j);
            acc = acc.add(&dji.mul(&w_j));
        }
        outs.push(acc);
    }
    PolyMap {
        dom: total,
        cod: n,
        outs,
    }
}

pub struct PolyCat;

impl Category for PolyCat {
    type Obj = usize;
    type Map = PolyMap;

    fn dom(&self, m: &PolyMap) -> usize {
        m.dom
    }

    fn cod(&self, m: &PolyMap) -> usize {
        m.cod
    }

    fn identity(&self, o: &usize) -> PolyMap {
        PolyMap::identity(*o)
    }

    fn compose(&self, f: &PolyMap, g: &PolyMap) -> Result<PolyMap, CatError> {
        f.then(g)
    }
}

impl CartesianCategory for PolyCat {
    fn product(&self, a: &usize, b: &usize) -> usize {
        a + b
    }

    fn proj1(&self, a: &usize, b: &usize) -> PolyMap {
        let total = a + b;
        PolyMap {
            dom: total,
            cod: *a,
            outs: (0..*a).map(|i| Poly::var(total, i)).collect(),
        }
    }

    fn proj2(&self, a: &usize, b: &usize) -> PolyMap {
        let total = a + b;
        PolyMap {
            dom: total,
            cod: *b,
            outs: (0..*b).map(|i| Poly::var(total, a + i)).collect(),
        }
    }

    fn tuple(&self, f: &PolyMap, g: &PolyMap) -> Result<PolyMap, CatError> {
        if f.dom != g.dom {
            return mismatch("polynomial pairing");
        }
        let mut outs = f.outs.clone();
        outs.extend(g.outs.iter().cloned());
        Ok(PolyMap {
            dom: f.dom,
            cod: f.cod + g.cod,
            outs,
        })
    }
}

/// The functor `T* : PolyCat -> ELens(PolyCat)`: objects to trivial
/// bundles `π1 : n × n -> n`, arrows to `(f, <π1, Rf>)`.
pub fn t_star(f: &PolyMap) -> ELensArrow<PolyCat> {
    let cat = PolyCat;
    let src = ELensObj::new(f.dom, f.dom);
    let tgt = ELensObj::new(f.cod, f.cod);
    let p1 = cat.proj1(&f.dom, &f.cod);
    let bwd = cat
        .tuple(&p1, &poly_reverse_diff(f))
        .expect("projection and reverse differential share their domain");
    ELensArrow {
        src,
        tgt,
        fwd: f.clone(),
        bwd,
    }
}

/// The functor `D` on the numeric-model arrows. In the Euclidean reading
/// duals collapse to the spaces themselves, so `D` carries the same data
/// as `T*`; it is provided under its own name so both functors are
/// separately traceable.
pub fn d_functor(f: &PolyMap) -> ELensArrow<PolyCat> {
    t_star(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::{elens_compose, elens_identity};

    fn sq_map() -> PolyMap {
        // p(x) = x²
        let x = Poly::var(1, 0);
        PolyMap::new(1, alloc::vec![x.mul(&x)]).unwrap()
    }

    #[test]
    fn applies_identity_and_simple_maps() {
        let id = PolyMap::identity(2);
        assert_eq!(
            id.apply(&[rat(3), rat(5)]).unwrap(),
            alloc::vec![rat(3), rat(5)]
        );
        assert_eq!(sq_map().apply(&[rat(3)]).unwrap(), alloc::vec![rat(9)]);
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let m = PolyMap::new(2, alloc::vec![x.mul(&y), x.add(&y)]).unwrap();
        assert_eq!(
            m.apply(&[rat(2), rat(3)]).unwrap(),
            alloc::vec![rat(6), rat(5)]
        );
    }

    #[test]
    fn reverse_diff_of_identity_returns_the_covector() {
        let r = poly_reverse_diff(&PolyMap::identity(2));
        // R(id)(a, w) = w
        let expect: Vec<Poly> = (0..2).map(|i| Poly::var(4, 2 + i)).collect();
        assert_eq!(r.outs, expect);
    }

    #[test]
    fn reverse_diff_of_constant_is_zero() {
        let c = PolyMap::new(1, alloc::vec![Poly::constant(1, rat(7))]).unwrap();
        let r = poly_reverse_diff(&c);
        assert!(r.outs.iter().all(|p| p.is_zero()));
    }

    #[test]
    fn reverse_diff_of_square_is_2aw() {
        let r = poly_reverse_diff(&sq_map());
        assert_eq!(r.apply(&[rat(3), rat(1)]).unwrap(), alloc::vec![rat(6)]);
        // 2aw as a polynomial
        let a = Poly::var(2, 0);
        let w = Poly::var(2, 1);
        let expect = a.mul(&w).scale(&rat(2));
        assert_eq!(r.outs[0], expect);
    }

    #[test]
    fn partials_agree_with_shift_extraction() {
        // Independent oracle: the coefficient of t in p(a + t·e_i).
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        // p = x³y + 2xy² + 5
        let p = x
            .mul(&x)
            .mul(&x)
            .mul(&y)
            .add(&x.mul(&y).mul(&y).scale(&rat(2)))
            .add(&Poly::constant(2, rat(5)));
        let point = [rat_frac(3, 2), rat(-2)];
        for i in 0..2 {
            let args: Vec<Poly> = (0..2)
                .map(|j| {
                    let c = Poly::constant(1, point[j].clone());
                    if j == i {
                        c.add(&Poly::var(1, 0))
                    } else {
                        c
                    }
                })
                .collect();
            let shifted = p.substitute(&args).unwrap();
            let coeff_t = shifted
                .terms
                .get(&alloc::vec![1u32])
                .cloned()
                .unwrap_or_else(Rat::zero);
            assert_eq!(p.partial(i).eval(&point).unwrap(), coeff_t);
        }
    }

    #[test]
    fn t_star_preserves_identity() {
        let cat = PolyCat;
        let id_lens = elens_identity(&cat, &ELensObj::new(2usize, 2usize));
        let image = t_star(&PolyMap::identity(2));
        assert_eq!(image.fwd, id_lens.fwd);
        assert_eq!(image.bwd, id_lens.bwd);
    }

    #[test]
    fn t_star_backward_legs_compose_to_2aw() {
        // f(x) = x², g(y) = y + 1: both routes give (a, w) -> (a, 2aw).
        let cat = PolyCat;
        let f = sq_map();
        let g = PolyMap::new(
            1,
            alloc::vec![Poly::var(1, 0).add(&Poly::constant(1, rat(1)))],
        )
        .unwrap();
        let composite_image = t_star(&f.then(&g).unwrap());
        let image_composite = elens_compose(&cat, &t_star(&f), &t_star(&g)).unwrap();
        assert_eq!(composite_image.fwd, image_composite.fwd);
        assert_eq!(composite_image.bwd, image_composite.bwd);
        let a = Poly::var(2, 0);
        let w = Poly::var(2, 1);
        let expect = a.mul(&w).scale(&rat(2));
        // backward leg = <π1, Rf-of-composite>; its second output is 2aw.
        assert_eq!(composite_image.bwd.outs[1], expect);
    }
}
