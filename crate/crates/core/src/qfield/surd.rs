//! Exact arithmetic on sums of integer multiples of square roots.
//!
//! Ladder-operator matrices have entries `sqrt(n)`; products and
//! commutators of such matrices have entries in the ring generated by square
//! roots of integers. [`Surd`] represents those values exactly, so identities
//! like `[a, a^dagger] = diag(1, ..., 1, 1 - D)` can be checked without
//! floating-point error.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// `sum_r c_r sqrt(r)` over square-free radicands `r`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Surd {
    terms: BTreeMap<u64, i64>,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Split `n = s^2 r` with `r` square-free.
fn square_free(n: u64) -> (u64, u64) {
    let mut s = 1;
    let mut r = n;
    let mut p = 2;
    while p * p <= r {
        while r.is_multiple_of(p * p) {
            r /= p * p;
            s *= p;
        }
        p += 1;
    }
    (s, r)
}

impl Surd {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn integer(c: i64) -> Self {
        let mut s = Self::zero();
        s.push(1, c);
        s
    }

    /// `sqrt(n)` in reduced form.
    pub fn sqrt(n: u64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        let (s, r) = square_free(n);
        let mut out = Self::zero();
        out.push(r, i64::try_from(s).expect("surd coefficient overflow"));
        out
    }

    fn push(&mut self, radicand: u64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let e = self.terms.entry(radicand).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.terms.remove(&radicand);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The integer value when there is no irrational part.
    pub fn as_integer(&self) -> Option<i64> {
        match self.terms.len() {
            0 => Some(0),
            1 => self.terms.get(&1).copied(),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(&r, &c)| c as f64 * (r as f64).sqrt())
            .sum()
    }
}

impl Add for &Surd {
    type Output = Surd;
    fn add(self, rhs: &Surd) -> Surd {
        let mut out = self.clone();
        for (&r, &c) in &rhs.terms {
            out.push(r, c);
        }
        out
    }
}

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd {
            terms: self.terms.iter().map(|(&r, &c)| (r, -c)).collect(),
        }
    }
}

impl Sub for &Surd {
    type Output = Surd;
    fn sub(self, rhs: &Surd) -> Surd {
        self + &(-rhs)
    }
}

impl Mul for &Surd {
    type Output = Surd;
    fn mul(self, rhs: &Surd) -> Surd {
        let mut out = Surd::zero();
        for (&r1, &c1) in &self.terms {
            for (&r2, &c2) in &rhs.terms {
                // r1, r2 square-free: r1 r2 = g^2 (r1/g)(r2/g) with the last factor square-free
                let g = gcd(r1, r2);
                let coeff = c1 * c2 * i64::try_from(g).expect("surd coefficient overflow");
                out.push((r1 / g) * (r2 / g), coeff);
            }
        }
        out
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&r, &c)| {
                if r == 1 {
                    format!("{c}")
                } else {
                    format!("{c}*sqrt({r})")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Dense square matrix of [`Surd`] entries. All entries are real, so the
/// adjoint is the transpose.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurdMatrix {
    pub dim: usize,
    entries: Vec<Surd>,
}

impl SurdMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Surd::zero(); dim * dim],
        }
    }

    /// Annihilation operator `a[n-1, n] = sqrt(n)`.
    pub fn annihilation(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for n in 1..dim {
            m.set(n - 1, n, Surd::sqrt(n as u64));
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Surd {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Surd) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &SurdMatrix) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for k in 0..self.dim {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..self.dim {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * self.dim + j;
                        out.entries[idx] = &out.entries[idx] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, rhs: &SurdMatrix) -> Self {
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// `self * rhs - rhs * self`.
    pub fn commutator(&self, rhs: &SurdMatrix) -> Self {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    /// The diagonal as integers if the matrix is diagonal with integer entries.
    pub fn integer_diagonal(&self) -> Option<Vec<i64>> {
        let mut diag = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i != j && !self.get(i, j).is_zero() {
                    return None;
                }
            }
            diag.push(self.get(i, i).as_integer()?);
        }
        Some(diag)
    }
}
