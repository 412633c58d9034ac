//! Univariate polynomials, minimal polynomials of matrices and in-field roots.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{FieldSpec, Scalar};
use super::matrix::Matrix;

/// Coefficients lowest degree first; never carries trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn new(field: FieldSpec, mut coeffs: Vec<Scalar>) -> Polynomial {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Polynomial { field, coeffs }
    }

    pub fn zero(field: FieldSpec) -> Polynomial {
        Polynomial::new(field, Vec::new())
    }

    /// The monic polynomial `Π (x - r)`.
    pub fn from_roots(field: FieldSpec, roots: &[Scalar]) -> Polynomial {
        let mut p = Polynomial::new(field, vec![field.one()]);
        for r in roots {
            p = p.mul(&Polynomial::new(field, vec![-r, field.one()]));
        }
        p
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coefficients(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(Scalar::is_one)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Polynomial::new(self.field, out)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        assert!(m.is_square());
        let n = m.rows();
        let mut acc = Matrix::zeros(self.field, n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m);
            acc = acc.add(&Matrix::identity(self.field, n).scale(c));
        }
        acc
    }

    /// True when the polynomial is a product of distinct linear factors over the field,
    /// i.e. its in-field roots, counted once each, account for the full degree.
    pub fn splits_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(d) => self.roots_in_field().len() == d,
        }
    }

    /// All distinct roots lying in the field, in increasing order.
    pub fn roots_in_field(&self) -> Vec<Scalar> {
        assert!(!self.is_zero(), "roots of the zero polynomial");
        match self.field {
            FieldSpec::Prime(_) => self
                .field
                .residues()
                .expect("prime field")
                .filter(|r| self.eval(r).is_zero())
                .collect(),
            FieldSpec::Rational => self.rational_roots(),
        }
    }

    fn rational_roots(&self) -> Vec<Scalar> {
        // Clear denominators to get integer coefficients.
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            let (_, d) = c.rational_parts().expect("rational coefficient");
            lcm = lcm.lcm(&d);
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| {
                let (n, d) = c.rational_parts().expect("rational coefficient");
                n * (&lcm / d)
            })
            .collect();

        let mut roots = BTreeSet::new();
        let low = ints.iter().position(|c| !c.is_zero()).expect("nonzero polynomial");
        if low > 0 {
            roots.insert(self.field.zero());
        }
        let trailing = ints[low].abs();
        let leading = ints.last().expect("nonzero polynomial").abs();
        let nums = divisors(&trailing);
        let dens = divisors(&leading);
        for p in &nums {
            for q in &dens {
                for sign in [1, -1] {
                    let r = Scalar::Rational(BigRational::new(p * sign, q.clone()));
                    if self.eval(&r).is_zero() {
                        roots.insert(r);
                    }
                }
            }
        }
        roots.into_iter().collect()
    }
}

/// Positive divisors of a positive integer by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut rest = n.clone();
    let mut d = BigInt::from(2);
    while &d * &d <= rest {
        let mut e = 0;
        while (&rest % &d).is_zero() {
            rest /= &d;
            e += 1;
        }
        if e > 0 {
            factors.push((d.clone(), e));
        }
        d += 1;
    }
    if rest > BigInt::one() {
        factors.push((rest, 1));
    }
    let mut out = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for x in &out {
            let mut pw = x.clone();
            next.push(pw.clone());
            for _ in 0..e {
                pw *= &p;
                next.push(pw.clone());
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// The monic polynomial of least degree annihilating `m`, read off the first
/// linear dependence among `I, m, m², …` in flattened coordinates.
pub fn minimal_polynomial(m: &Matrix) -> Polynomial {
    assert!(m.is_square(), "minimal polynomial of a non-square matrix");
    let field = m.field();
    let n = m.rows();
    // Each stored row: reduced vector (pivot entry 1), pivot index, and the
    // combination of powers it represents.
    let mut basis: Vec<(Vec<Scalar>, usize, Vec<Scalar>)> = Vec::new();
    let mut power = Matrix::identity(field, n);
    for k in 0..=n {
        let mut v = power.entries().to_vec();
        let mut combo = vec![field.zero(); n + 1];
        combo[k] = field.one();
        for (bv, piv, bc) in &basis {
            let f = v[*piv].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(bv) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
            for (x, y) in combo.iter_mut().zip(bc) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => {
                combo.truncate(k + 1);
                return Polynomial::new(field, combo);
            }
            Some(piv) => {
                let inv = v[piv].inverse().expect("nonzero pivot");
                for x in v.iter_mut() {
                    *x *= &inv;
                }
                for x in combo.iter_mut() {
                    *x *= &inv;
                }
                basis.push((v, piv, combo));
            }
        }
        power = power.mul(m);
    }
    unreachable!("Cayley-Hamilton bounds the degree by the dimension")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_negative() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            match (mag.is_one(), mono.is_empty()) {
                (true, false) => write!(f, "{mono}")?,
                (_, true) => write!(f, "{mag}")?,
                (false, false) => write!(f, "{mag}*{mono}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rational;

    fn q(n: i64, d: i64) -> Scalar {
        Q.ratio(n, d)
    }

    #[test]
    fn minimal_polynomial_of_identity_and_nilpotent() {
        let p = minimal_polynomial(&Matrix::identity(Q, 3));
        assert_eq!(p, Polynomial::from_roots(Q, &[q(1, 1)]));
        let n = Matrix::from_i64_rows(Q, &[&[0, 1], &[0, 0]]);
        let p = minimal_polynomial(&n);
        assert_eq!(p.to_string(), "x^2");
        assert!(!p.splits_squarefree());
    }

    #[test]
    fn minimal_polynomial_of_diagonal_with_repeats() {
        let f = FieldSpec::Rational;
        let mut m = Matrix::zeros(f, 4, 4);
        for (i, v) in [q(2, 1), q(1, 2), q(2, 1), q(0, 1)].into_iter().enumerate() {
            m.set(i, i, v);
        }
        let p = minimal_polynomial(&m);
        assert_eq!(p.degree(), Some(3));
        assert!(p.eval_matrix(&m).is_zero());
        assert_eq!(p.roots_in_field(), vec![q(0, 1), q(1, 2), q(2, 1)]);
    }

    #[test]
    fn rational_roots() {
        let x2m1 = Polynomial::new(Q, vec![q(-1, 1), q(0, 1), q(1, 1)]);
        assert_eq!(x2m1.roots_in_field(), vec![q(-1, 1), q(1, 1)]);
        let x2m2 = Polynomial::new(Q, vec![q(-2, 1), q(0, 1), q(1, 1)]);
        assert!(x2m2.roots_in_field().is_empty());
        let quartic = Polynomial::from_roots(Q, &[q(0, 1), q(1, 1), q(1, 2), q(2, 1)]);
        assert_eq!(quartic.roots_in_field(), vec![q(0, 1), q(1, 2), q(1, 1), q(2, 1)]);
    }

    #[test]
    fn prime_field_roots_are_exhaustive() {
        let f = FieldSpec::Prime(7);
        // x^2 + 1 has no roots mod 7 (7 ≡ 3 mod 4); x^2 - 2 has roots 3 and 4.
        let p = Polynomial::new(f, vec![f.one(), f.zero(), f.one()]);
        assert!(p.roots_in_field().is_empty());
        let p = Polynomial::new(f, vec![f.from_i64(-2), f.zero(), f.one()]);
        assert_eq!(p.roots_in_field(), vec![f.from_i64(3), f.from_i64(4)]);
    }

    #[test]
    fn display_is_readable() {
        let p = Polynomial::from_roots(Q, &[q(1, 1), q(1, 2)]);
        assert_eq!(p.to_string(), "x^2 - 3/2*x + 1/2");
    }

    #[test]
    fn divisors_of_small_numbers() {
        let ds: Vec<i64> = divisors(&BigInt::from(12))
            .iter()
            .map(|d| d.try_into().unwrap())
            .collect();
        assert_eq!(ds, vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(&BigInt::one()), vec![BigInt::one()]);
    }
}
