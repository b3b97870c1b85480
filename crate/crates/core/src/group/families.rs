use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::table::build_table;

use super::{Group, SemidirectSpec};

pub fn cyclic(m: usize) -> Result<Group> {
    let table = build_table(m, format!("cyclic:{m}"), |x, y| (x + y) % m)?;
    Ok(Group::from_table(table)?.with_labels((0..m).map(|i| i.to_string()).collect()))
}

/// Direct product; the first factor varies fastest in the element index.
pub fn direct_product(factors: &[Group]) -> Result<Group> {
    if factors.is_empty() {
        return cyclic(1);
    }
    let n: usize = factors.iter().map(Group::order).product();
    let split = |mut x: usize| -> Vec<usize> {
        factors
            .iter()
            .map(|g| {
                let c = x % g.order();
                x /= g.order();
                c
            })
            .collect()
    };
    let join = |coords: &[usize]| -> usize {
        coords
            .iter()
            .zip(factors)
            .rev()
            .fold(0, |acc, (&c, g)| acc * g.order() + c)
    };
    let name = format!(
        "dp:{}",
        factors.iter().map(Group::name).collect::<Vec<_>>().join(",")
    );
    let table = build_table(n, name, |x, y| {
        let (a, b) = (split(x), split(y));
        let prod: Vec<usize> = factors
            .iter()
            .enumerate()
            .map(|(i, g)| g.mul(a[i], b[i]))
            .collect();
        join(&prod)
    })?;
    let labels = (0..n)
        .map(|x| {
            let parts: Vec<&str> = split(x)
                .iter()
                .zip(factors)
                .map(|(&c, g)| g.label(c))
                .collect();
            format!("({})", parts.join(","))
        })
        .collect();
    Ok(Group::from_table(table)?.with_labels(labels))
}

fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut result = 1 % modulus;
    let mut b = base % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % modulus;
        }
        b = b * b % modulus;
        exp >>= 1;
    }
    result
}

/// `Z_q ⋊ Z_p` with the generator of `Z_p` acting by `h ↦ a·h`.
pub fn semidirect_cyclic(q: usize, p: usize, a: usize) -> Result<Group> {
    if q == 0 || p == 0 {
        return Err(Error::InvalidAction("orders must be positive".into()));
    }
    if pow_mod(a as u64, p as u64, q as u64) != 1 % q as u64 {
        return Err(Error::InvalidAction(format!(
            "{a}^{p} ≢ 1 (mod {q}); h ↦ {a}h does not define an action of Z_{p}"
        )));
    }
    let h = cyclic(q)?;
    let f = cyclic(p)?;
    let action = (0..p)
        .map(|k| {
            let scale = pow_mod(a as u64, k as u64, q as u64) as usize;
            Permutation::from_images((0..q).map(|x| x * scale % q).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    SemidirectSpec::new(h, f, action)?.build(format!("sd:{q}:{p}:{a}"))
}

/// Order `p³` Heisenberg group: `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')`.
pub fn heisenberg(p: usize) -> Result<Group> {
    let n = p * p * p;
    let split = |x: usize| (x % p, (x / p) % p, x / (p * p));
    let table = build_table(n, format!("heis:{p}"), |x, y| {
        let (a, b, c) = split(x);
        let (a2, b2, c2) = split(y);
        let (ra, rb, rc) = ((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p);
        ra + p * rb + p * p * rc
    })?;
    let labels = (0..n)
        .map(|x| {
            let (a, b, c) = split(x);
            format!("({a},{b},{c})")
        })
        .collect();
    Ok(Group::from_table(table)?.with_labels(labels))
}

/// `Z_p wr Z_p = Z_p^p ⋊ Z_p`, the top group cyclically shifting coordinates.
pub fn wreath_cyclic(p: usize) -> Result<Group> {
    let base = direct_product(&vec![cyclic(p)?; p])?;
    let top = cyclic(p)?;
    let coords = |mut x: usize| -> Vec<usize> {
        (0..p)
            .map(|_| {
                let c = x % p;
                x /= p;
                c
            })
            .collect()
    };
    let action = (0..p)
        .map(|k| {
            Permutation::from_images(
                (0..base.order())
                    .map(|x| {
                        let c = coords(x);
                        // coordinate i moves to position i + k
                        (0..p).rev().fold(0, |acc, i| acc * p + c[(i + p - k) % p])
                    })
                    .collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    SemidirectSpec::new(base, top, action)?.build(format!("wr:{p}"))
}

/// Upper unitriangular `k × k` matrices over `F_p`, materialized when within `cap`.
pub fn unitriangular(k: usize, p: usize, cap: usize) -> Result<Group> {
    let g = super::UnitriangularGroup::new(k, p)?;
    let n = g.order_checked().filter(|&n| n <= cap).ok_or(Error::TableCap {
        order: g.order_checked().unwrap_or(usize::MAX),
        cap,
    })?;
    let table = build_table(n, format!("ut:{k}:{p}"), |x, y| {
        g.encode(&g.mul(&g.decode(x), &g.decode(y)))
    })?;
    let labels = (0..n).map(|x| g.label(&g.decode(x))).collect();
    Ok(Group::from_table(table)?.with_labels(labels))
}
