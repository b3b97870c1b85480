//! Closed forms for inverse, square root, commutator, `∘`, `∘`-division and
//! `L_{x,y}` in a split metabelian group `H ⋊ F`.
//!
//! Exponents on `H` are rational combinations of `F`-elements. Since `H` is
//! abelian and `F` acts by commuting automorphisms, each combination is an
//! endomorphism of `H`; we evaluate it extensionally as a map on `H`.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{Group, SemidirectSpec};
use crate::props::InnerGenerator;
use crate::table::Loop;

/// An exponent expression acting on `H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Exponent {
    /// `h ↦ h^k`
    Int(i64),
    /// `h ↦ f(h)` for the `F`-element with this index.
    Act(usize),
    /// `h ↦ (h^m)^(1/n)`; needs `gcd(n, ord h) = 1`.
    Ratio(i64, i64),
    /// Pointwise product of the summands' images.
    Sum(Vec<Exponent>),
    /// Composition.
    Product(Vec<Exponent>),
    /// The inverse map, which must exist.
    Inverse(Box<Exponent>),
}

use Exponent::*;

impl Exponent {
    fn neg(e: Exponent) -> Exponent {
        Product(vec![Int(-1), e])
    }

    fn one_plus(f: usize) -> Exponent {
        Sum(vec![Int(1), Act(f)])
    }

    fn inverse(e: Exponent) -> Exponent {
        Inverse(Box::new(e))
    }

    fn half() -> Exponent {
        Ratio(1, 2)
    }
}

/// An endomorphism of `H`, stored as its image list.
type HMap = Vec<usize>;

fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m))
}

/// Evaluates the closed forms for one semidirect decomposition.
///
/// Evaluated exponent maps are memoized; the cache makes this type `!Sync`,
/// so parallel callers build one instance per worker.
pub struct SdClosedForm<'a> {
    spec: &'a SemidirectSpec,
    h_orders: Vec<usize>,
    cache: RefCell<HashMap<Exponent, Rc<HMap>>>,
}

impl<'a> SdClosedForm<'a> {
    pub fn new(spec: &'a SemidirectSpec) -> Result<Self> {
        if !spec.is_odd() {
            return Err(Error::Precondition(format!(
                "closed forms need |H| and |F| odd (got {} and {})",
                spec.h().order(),
                spec.f().order()
            )));
        }
        let h_orders = (0..spec.h().order()).map(|x| spec.h().element_order(x)).collect();
        Ok(Self {
            spec,
            h_orders,
            cache: RefCell::new(HashMap::new()),
        })
    }

    fn h(&self) -> &Group {
        self.spec.h()
    }

    fn f(&self) -> &Group {
        self.spec.f()
    }

    fn h_pow(&self, x: usize, k: i64) -> usize {
        let ord = self.h_orders[x] as i64;
        self.h().pow(x, k.rem_euclid(ord))
    }

    pub fn evaluate(&self, e: &Exponent) -> Result<HMap> {
        let n = self.h().order();
        Ok(match e {
            Int(k) => (0..n).map(|x| self.h_pow(x, *k)).collect(),
            Act(f) => (0..n).map(|x| self.spec.act(*f, x)).collect(),
            Ratio(m, d) => (0..n)
                .map(|x| {
                    let ord = self.h_orders[x] as i64;
                    let inv = mod_inverse(*d, ord).ok_or_else(|| {
                        Error::NonInvertibleExponent(format!(
                            "1/{d} undefined on {} of order {ord}",
                            self.h().label(x)
                        ))
                    })?;
                    Ok(self.h_pow(x, m.rem_euclid(ord) * inv))
                })
                .collect::<Result<_>>()?,
            Sum(terms) => {
                let maps = terms.iter().map(|t| self.evaluate(t)).collect::<Result<Vec<_>>>()?;
                (0..n)
                    .map(|x| maps.iter().fold(0, |acc, m| self.h().mul(acc, m[x])))
                    .collect()
            }
            Product(factors) => {
                let maps = factors
                    .iter()
                    .map(|t| self.evaluate(t))
                    .collect::<Result<Vec<_>>>()?;
                (0..n)
                    .map(|x| maps.iter().fold(x, |acc, m| m[acc]))
                    .collect()
            }
            Inverse(inner) => {
                let map = self.evaluate(inner)?;
                let mut inv = vec![usize::MAX; n];
                for (x, &y) in map.iter().enumerate() {
                    if inv[y] != usize::MAX {
                        return Err(Error::NonInvertibleExponent(format!(
                            "{inner:?} identifies {} and {}",
                            self.h().label(inv[y]),
                            self.h().label(x)
                        )));
                    }
                    inv[y] = x;
                }
                inv
            }
        })
    }

    fn apply(&self, e: &Exponent, h: usize) -> Result<usize> {
        if let Some(map) = self.cache.borrow().get(e) {
            return Ok(map[h]);
        }
        let map = Rc::new(self.evaluate(e)?);
        let image = map[h];
        self.cache.borrow_mut().insert(e.clone(), map);
        Ok(image)
    }

    fn split(&self, x: usize) -> (usize, usize) {
        self.spec.decode(x)
    }

    fn join(&self, h: usize, f: usize) -> usize {
        self.spec.encode(h, f)
    }

    /// `u⁻¹ = h^(−f⁻¹) f⁻¹`
    pub fn inverse(&self, u: usize) -> Result<usize> {
        let (h, f) = self.split(u);
        let f_inv = self.f().inv(f);
        let e = Exponent::neg(Act(f_inv));
        Ok(self.join(self.apply(&e, h)?, f_inv))
    }

    /// `u^½ = h^((1+f^½)⁻¹) f^½`
    pub fn sqrt(&self, u: usize) -> Result<usize> {
        let (h, f) = self.split(u);
        let f_half = self.f().sqrt_element(f)?;
        let e = Exponent::inverse(Exponent::one_plus(f_half));
        Ok(self.join(self.apply(&e, h)?, f_half))
    }

    /// `[x,y] = h₁^(f₁⁻¹(−1+f₂⁻¹)) h₂^(f₂⁻¹(−f₁⁻¹+1))`, an element of `H`.
    pub fn commutator(&self, x: usize, y: usize) -> Result<usize> {
        let (h1, f1) = self.split(x);
        let (h2, f2) = self.split(y);
        let (f1i, f2i) = (self.f().inv(f1), self.f().inv(f2));
        let e1 = Product(vec![Act(f1i), Sum(vec![Int(-1), Act(f2i)])]);
        let e2 = Product(vec![Act(f2i), Sum(vec![Exponent::neg(Act(f1i)), Int(1)])]);
        let h = self.h().mul(self.apply(&e1, h1)?, self.apply(&e2, h2)?);
        Ok(self.join(h, 0))
    }

    /// `x∘y = h₁^((1+f₂)/2) h₂^((1+f₁)/2) f₁f₂`
    pub fn circ(&self, x: usize, y: usize) -> Result<usize> {
        let (h1, f1) = self.split(x);
        let (h2, f2) = self.split(y);
        let e1 = Product(vec![Exponent::one_plus(f2), Exponent::half()]);
        let e2 = Product(vec![Exponent::one_plus(f1), Exponent::half()]);
        let h = self.h().mul(self.apply(&e1, h1)?, self.apply(&e2, h2)?);
        Ok(self.join(h, self.f().mul(f1, f2)))
    }

    /// `x\y = (h₁^(−1−f₁⁻¹f₂) h₂²)^((1+f₁)⁻¹) f₁⁻¹f₂`, division in `(G,∘)`.
    pub fn ldiv(&self, x: usize, y: usize) -> Result<usize> {
        let (h1, f1) = self.split(x);
        let (h2, f2) = self.split(y);
        let q = self.f().mul(self.f().inv(f1), f2);
        let e1 = Sum(vec![Int(-1), Exponent::neg(Act(q))]);
        let inner = self.h().mul(self.apply(&e1, h1)?, self.h_pow(h2, 2));
        let outer = Exponent::inverse(Exponent::one_plus(f1));
        Ok(self.join(self.apply(&outer, inner)?, q))
    }

    /// `uL_{x,y} = (h^((1+f₁)(1+f₂)) h₂^(1+ff₁−f−f₁))^((1+f₁f₂)⁻¹/2) f`
    pub fn lxy(&self, u: usize, x: usize, y: usize) -> Result<usize> {
        let (h, f) = self.split(u);
        let (_, f1) = self.split(x);
        let (h2, f2) = self.split(y);
        let e_h = Product(vec![Exponent::one_plus(f1), Exponent::one_plus(f2)]);
        let e_h2 = Sum(vec![
            Int(1),
            Act(self.f().mul(f, f1)),
            Exponent::neg(Act(f)),
            Exponent::neg(Act(f1)),
        ]);
        let inner = self.h().mul(self.apply(&e_h, h)?, self.apply(&e_h2, h2)?);
        let outer = Product(vec![
            Exponent::inverse(Exponent::one_plus(self.f().mul(f1, f2))),
            Exponent::half(),
        ]);
        Ok(self.join(self.apply(&outer, inner)?, f))
    }
}

/// Compares every closed form with the generic engine on `g` and `circ = (g, ∘)`:
/// inverse, square root, `∘` and `∘`-division over all elements and pairs,
/// the commutator over all pairs and `L_{x,y}` over all triples.
///
/// Returns the first disagreement, if any.
pub fn compare_with_engine(g: &Group, circ: &Loop) -> Result<Option<String>> {
    let spec = g
        .semidirect()
        .ok_or_else(|| Error::Precondition(format!("{} has no semidirect decomposition", g.name())))?;
    SdClosedForm::new(spec)?;
    let n = g.order();
    let label = |x: usize| g.label(x).to_string();
    (0..n)
        .into_par_iter()
        .map_init(
            || SdClosedForm::new(spec).expect("checked above"),
            |cf, x| -> Result<Option<String>> {
                let inv = cf.inverse(x)?;
                if inv != g.inv(x) {
                    return Ok(Some(format!("inverse of {}: {} vs {}", label(x), label(inv), label(g.inv(x)))));
                }
                let root = cf.sqrt(x)?;
                if root != g.sqrt_element(x)? {
                    return Ok(Some(format!("square root of {}: {}", label(x), label(root))));
                }
                for y in 0..n {
                    let checks = [
                        ("commutator", cf.commutator(x, y)?, g.commutator(x, y)),
                        ("circ", cf.circ(x, y)?, circ.mul(x, y)),
                        ("division", cf.ldiv(x, y)?, circ.ldiv(x, y)),
                    ];
                    for (what, closed, engine) in checks {
                        if closed != engine {
                            return Ok(Some(format!(
                                "{what} at ({}, {}): closed form {} vs engine {}",
                                label(x),
                                label(y),
                                label(closed),
                                label(engine)
                            )));
                        }
                    }
                    for u in 0..n {
                        let closed = cf.lxy(u, x, y)?;
                        let engine = InnerGenerator::L(x, y).apply(circ, u);
                        if closed != engine {
                            return Ok(Some(format!(
                                "L[{}, {}] at {}: closed form {} vs engine {}",
                                label(x),
                                label(y),
                                label(u),
                                label(closed),
                                label(engine)
                            )));
                        }
                    }
                }
                Ok(None)
            },
        )
        .collect::<Result<Vec<_>>>()
        .map(|found| found.into_iter().flatten().next())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_inverse() {
        assert_eq!(mod_inverse(2, 7), Some(4));
        assert_eq!(mod_inverse(3, 9), None);
        assert_eq!(mod_inverse(-1, 5), Some(4));
    }
}
