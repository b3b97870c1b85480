use crate::error::{Error, Result};

/// `UT(k, p)` held functionally: products are computed from matrix entries.
///
/// Used for orders beyond the table cap, where only streaming predicates apply.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitriangularGroup {
    k: usize,
    p: usize,
    /// Strictly upper-triangular positions, row-major.
    positions: Vec<(usize, usize)>,
}

/// A `k × k` matrix, row-major, entries in `0..p`.
pub type Matrix = Vec<u32>;

impl UnitriangularGroup {
    pub fn new(k: usize, p: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Precondition("matrix size must be positive".into()));
        }
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        let positions = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .collect();
        Ok(Self { k, p, positions })
    }

    pub fn size(&self) -> usize {
        self.k
    }

    pub fn prime(&self) -> usize {
        self.p
    }

    /// `p^(k(k-1)/2)`, or `None` on overflow.
    pub fn order_checked(&self) -> Option<usize> {
        self.p.checked_pow(self.positions.len() as u32)
    }

    pub fn identity(&self) -> Matrix {
        let k = self.k;
        (0..k * k).map(|i| u32::from(i / k == i % k)).collect()
    }

    /// Elementary matrix with a single `1` at `(i, j)` above the diagonal.
    pub fn elementary(&self, i: usize, j: usize) -> Matrix {
        let mut m = self.identity();
        m[i * self.k + j] = 1;
        m
    }

    /// The superdiagonal elementary matrices, which generate `UT(k, p)`.
    pub fn generators(&self) -> Vec<Matrix> {
        (0..self.k.saturating_sub(1))
            .map(|i| self.elementary(i, i + 1))
            .collect()
    }

    pub fn mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        let (k, p) = (self.k, self.p as u64);
        let mut out = vec![0u32; k * k];
        for i in 0..k {
            for j in i..k {
                let s: u64 = (i..=j)
                    .map(|t| u64::from(a[i * k + t]) * u64::from(b[t * k + j]))
                    .sum();
                out[i * k + j] = (s % p) as u32;
            }
        }
        out
    }

    /// `(I + N)⁻¹ = I − N + N² − …`, finite since `N` is nilpotent.
    pub fn inv(&self, a: &Matrix) -> Matrix {
        let (k, p) = (self.k, self.p as u32);
        let id = self.identity();
        let nil: Matrix = a.iter().zip(&id).map(|(&x, &e)| (x + p - e) % p).collect();
        let mut result = id.clone();
        let mut term = id;
        for step in 1..k {
            term = self.raw_mul(&term, &nil);
            for (r, &t) in result.iter_mut().zip(&term) {
                *r = if step % 2 == 1 { (*r + p - t) % p } else { (*r + t) % p };
            }
        }
        result
    }

    fn raw_mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        let (k, p) = (self.k, self.p as u64);
        let mut out = vec![0u32; k * k];
        for i in 0..k {
            for j in 0..k {
                let s: u64 = (0..k)
                    .map(|t| u64::from(a[i * k + t]) * u64::from(b[t * k + j]))
                    .sum();
                out[i * k + j] = (s % p) as u32;
            }
        }
        out
    }

    pub fn commutator(&self, a: &Matrix, b: &Matrix) -> Matrix {
        self.mul(&self.mul(&self.inv(a), &self.inv(b)), &self.mul(a, b))
    }

    pub fn commute(&self, a: &Matrix, b: &Matrix) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn encode(&self, m: &Matrix) -> usize {
        self.positions
            .iter()
            .rev()
            .fold(0, |acc, &(i, j)| acc * self.p + m[i * self.k + j] as usize)
    }

    pub fn decode(&self, mut x: usize) -> Matrix {
        let mut m = self.identity();
        for &(i, j) in &self.positions {
            m[i * self.k + j] = (x % self.p) as u32;
            x /= self.p;
        }
        m
    }

    pub fn label(&self, m: &Matrix) -> String {
        let entries: Vec<String> = self
            .positions
            .iter()
            .map(|&(i, j)| m[i * self.k + j].to_string())
            .collect();
        format!("[{}]", entries.join(" "))
    }

    /// Two non-commuting commutators, searched among commutators of
    /// generators and of generator/commutator pairs.
    ///
    /// `Some` refutes metabelian; `None` is inconclusive.
    pub fn metabelian_refutation(&self) -> Option<(Matrix, Matrix)> {
        let gens = self.generators();
        let mut pool = gens.clone();
        for a in &gens {
            for b in &gens {
                let c = self.commutator(a, b);
                if !pool.contains(&c) {
                    pool.push(c);
                }
            }
        }
        let mut comms: Vec<Matrix> = Vec::new();
        for a in &pool {
            for b in &pool {
                let c = self.commutator(a, b);
                if c != self.identity() && !comms.contains(&c) {
                    comms.push(c);
                }
            }
        }
        for (i, a) in comms.iter().enumerate() {
            for b in &comms[i + 1..] {
                if !self.commute(a, b) {
                    return Some((a.clone(), b.clone()));
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_encoding() {
        let g = UnitriangularGroup::new(4, 3).unwrap();
        assert_eq!(g.order_checked(), Some(729));
        for x in [0, 1, 17, 400, 728] {
            let m = g.decode(x);
            assert_eq!(g.encode(&m), x);
            assert_eq!(g.mul(&m, &g.inv(&m)), g.identity());
        }
    }

    #[test]
    fn ut53_is_not_metabelian() {
        let g = UnitriangularGroup::new(5, 3).unwrap();
        assert_eq!(g.order_checked(), Some(59049));
        let (a, b) = g.metabelian_refutation().expect("UT(5,3) has G'' ≠ 1");
        assert!(!g.commute(&a, &b));
    }

    #[test]
    fn ut43_has_no_refutation() {
        let g = UnitriangularGroup::new(4, 3).unwrap();
        assert!(g.metabelian_refutation().is_none());
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(UnitriangularGroup::new(3, 9).is_err());
    }
}
