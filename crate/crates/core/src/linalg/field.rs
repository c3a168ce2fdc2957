//! Scalar fields: the rationals with arbitrary-precision fractions, and prime fields `F_p`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::LinalgError;

/// Default characteristic for prime-field runs.
pub const DEFAULT_PRIME: u64 = 32003;

/// Generic draws over `Q` use integers in `[-RATIONAL_SAMPLE_BOUND, RATIONAL_SAMPLE_BOUND]`.
pub const RATIONAL_SAMPLE_BOUND: i64 = 10;

/// Largest characteristic accepted; products of two residues must fit in a `u64`.
const MAX_PRIME: u64 = (1 << 31) - 1;

/// Runtime description of a coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum FieldSpec {
    #[default]
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    pub fn validate(&self) -> Result<(), LinalgError> {
        match *self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::PrimeField(p) if p <= MAX_PRIME && is_prime(p) => Ok(()),
            FieldSpec::PrimeField(p) => Err(LinalgError::NotPrime(p)),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

/// Accepts `Q`, `Fp` (default prime), `Fp:<p>`, `F<p>` and `GF(<p>)`.
impl FromStr for FieldSpec {
    type Err = LinalgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let spec = match t {
            "Q" | "q" | "QQ" => FieldSpec::Rationals,
            "Fp" | "fp" => FieldSpec::PrimeField(DEFAULT_PRIME),
            _ => {
                let digits = t
                    .strip_prefix("Fp:")
                    .or_else(|| t.strip_prefix("fp:"))
                    .or_else(|| t.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')))
                    .or_else(|| t.strip_prefix('F'))
                    .ok_or_else(|| LinalgError::BadFieldSpec(s.to_string()))?;
                let p: u64 = digits
                    .parse()
                    .map_err(|_| LinalgError::BadFieldSpec(s.to_string()))?;
                FieldSpec::PrimeField(p)
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= p {
        if p.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

/// Arithmetic in a concrete field. Elements are plain values; the field object carries any
/// runtime parameters (the characteristic).
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// Rough storage cost of an element, used to prefer cheap pivots.
    fn size(&self, a: &Self::Elem) -> u64;
    /// Whether `sample` is uniform over the whole field.
    fn uniform_sampling(&self) -> bool;
    /// One draw for genericity sampling: uniform over `F_p`, bounded integers over `Q`.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    fn render(&self, a: &Self::Elem) -> String;
    /// Image under the reduction map to `F_p`, when the element is `p`-integral.
    fn reduce_mod(&self, a: &Self::Elem, p: u64) -> Option<u64>;

    /// `y - a * x`
    fn sub_mul(&self, y: &Self::Elem, a: &Self::Elem, x: &Self::Elem) -> Self::Elem {
        self.sub(y, &self.mul(a, x))
    }
}

/// `F_p` with residues stored as `u64` in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, LinalgError> {
        FieldSpec::PrimeField(p).validate()?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        b %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero in F_{}", self.p);
        self.pow(*a, self.p - 2)
    }
    fn size(&self, _a: &u64) -> u64 {
        1
    }
    fn uniform_sampling(&self) -> bool {
        true
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn reduce_mod(&self, a: &u64, p: u64) -> Option<u64> {
        (p == self.p).then_some(*a)
    }
    fn sub_mul(&self, y: &u64, a: &u64, x: &u64) -> u64 {
        self.sub(y, &(a * x % self.p))
    }
}

/// The rational numbers as reduced fractions of big integers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero in Q");
        a.recip()
    }
    fn size(&self, a: &BigRational) -> u64 {
        a.numer().bits() + a.denom().bits()
    }
    fn uniform_sampling(&self) -> bool {
        false
    }
    fn reduce_mod(&self, a: &BigRational, p: u64) -> Option<u64> {
        let m = BigInt::from(p);
        let residue = |x: &BigInt| -> u64 {
            let r = x % &m;
            let r = if r.is_negative() { r + &m } else { r };
            u64::try_from(r).expect("residue below p")
        };
        let den = residue(a.denom());
        if den == 0 {
            return None;
        }
        let fp = PrimeField { p };
        Some(fp.mul(&residue(a.numer()), &fp.inv(&den)))
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-RATIONAL_SAMPLE_BOUND..=RATIONAL_SAMPLE_BOUND))
    }
    fn render(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else if a.is_negative() {
            format!("-{}/{}", a.numer().abs(), a.denom())
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

/// Uniform random vector over a prime field. Over `Q` there is no uniform distribution, so this
/// refuses; use [`generic_vector`] for bounded-integer draws instead.
pub fn random_vector<F: Field, R: Rng + ?Sized>(
    field: &F,
    dim: usize,
    rng: &mut R,
) -> Result<Vec<F::Elem>, LinalgError> {
    if !field.uniform_sampling() {
        return Err(LinalgError::NoUniformSampling(field.spec()));
    }
    Ok((0..dim).map(|_| field.sample(rng)).collect())
}

/// Random linear combination of `rows` with uniform coefficients (prime fields only).
pub fn random_linear_combo<F: Field, R: Rng + ?Sized>(
    field: &F,
    rows: &[Vec<F::Elem>],
    dim: usize,
    rng: &mut R,
) -> Result<Vec<F::Elem>, LinalgError> {
    let coeffs = random_vector(field, rows.len(), rng)?;
    let mut out = vec![field.zero(); dim];
    for (c, row) in coeffs.iter().zip(rows) {
        assert_eq!(row.len(), dim, "row length mismatch");
        for (o, x) in out.iter_mut().zip(row) {
            *o = field.add(o, &field.mul(c, x));
        }
    }
    Ok(out)
}

/// Genericity draw valid over every field.
pub fn generic_vector<F: Field, R: Rng + ?Sized>(
    field: &F,
    dim: usize,
    rng: &mut R,
) -> Vec<F::Elem> {
    (0..dim).map(|_| field.sample(rng)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rational_reduction_mod_p() {
        let q = Rationals;
        let third = q.inv(&q.from_i64(3));
        assert_eq!(q.reduce_mod(&third, 7), Some(5));
        assert_eq!(q.reduce_mod(&q.from_i64(-1), 7), Some(6));
        assert_eq!(q.reduce_mod(&third, 3), None);
        assert_eq!(PrimeField::new(7).unwrap().reduce_mod(&3, 7), Some(3));
        assert_eq!(PrimeField::new(7).unwrap().reduce_mod(&3, 11), None);
    }

    #[test]
    fn parses_field_names() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!(
            "Fp".parse::<FieldSpec>().unwrap(),
            FieldSpec::PrimeField(32003)
        );
        assert_eq!(
            "Fp:7".parse::<FieldSpec>().unwrap(),
            FieldSpec::PrimeField(7)
        );
        assert_eq!("F2".parse::<FieldSpec>().unwrap(), FieldSpec::PrimeField(2));
        assert_eq!(
            "GF(5)".parse::<FieldSpec>().unwrap(),
            FieldSpec::PrimeField(5)
        );
        assert!(matches!(
            "Fp:9".parse::<FieldSpec>(),
            Err(LinalgError::NotPrime(9))
        ));
        assert!("R".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::PrimeField(2).to_string(), "F2");
    }

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(32003).unwrap();
        for a in [1u64, 2, 17, 32002] {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
        assert_eq!(f.from_i64(-1), 32002);
    }

    #[test]
    fn random_vector_refuses_rationals() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(random_vector(&Rationals, 3, &mut rng).is_err());
        let f = PrimeField::new(32003).unwrap();
        assert!(random_vector(&f, 0, &mut rng).unwrap().is_empty());
    }

    #[test]
    fn random_vector_is_reproducible() {
        let f = PrimeField::new(32003).unwrap();
        let a = random_vector(&f, 3, &mut ChaCha8Rng::seed_from_u64(42)).unwrap();
        let b = random_vector(&f, 3, &mut ChaCha8Rng::seed_from_u64(42)).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|&x| x < 32003));
    }

    #[test]
    fn distinct_seeds_rarely_collide() {
        // Two independent uniform draws in F_p^3 agree with probability p^-3, far below 3/p.
        let f = PrimeField::new(32003).unwrap();
        let mut collisions = 0;
        for s in 0..500u64 {
            let a = random_vector(&f, 3, &mut ChaCha8Rng::seed_from_u64(2 * s)).unwrap();
            let b = random_vector(&f, 3, &mut ChaCha8Rng::seed_from_u64(2 * s + 1)).unwrap();
            if a == b {
                collisions += 1;
            }
        }
        assert_eq!(collisions, 0);
    }

    #[test]
    fn random_linear_combo_lies_in_span() {
        let f = PrimeField::new(101).unwrap();
        let rows = vec![vec![1, 0, 1], vec![0, 1, 1]];
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let v = random_linear_combo(&f, &rows, 3, &mut rng).unwrap();
        assert_eq!(f.add(&v[0], &v[1]), v[2]);
    }

    mod axioms {
        use super::*;
        use proptest::prelude::*;

        fn q(n: i64, d: i64) -> BigRational {
            BigRational::new(BigInt::from(n), BigInt::from(d))
        }

        proptest! {
            #[test]
            fn prime_field_axioms(a in 0u64..32003, b in 0u64..32003, c in 0u64..32003) {
                let f = PrimeField::new(32003).unwrap();
                prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
                prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
                prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
                prop_assert_eq!(f.add(&a, &f.neg(&a)), 0);
                prop_assert_eq!(f.sub_mul(&c, &a, &b), f.sub(&c, &f.mul(&a, &b)));
            }

            #[test]
            fn rational_axioms(a in -50i64..50, b in 1i64..20, c in -50i64..50, e in 1i64..20) {
                let f = Rationals;
                let (x, y, z) = (q(a, b), q(c, e), q(b, e));
                prop_assert_eq!(f.mul(&x, &f.add(&y, &z)), f.add(&f.mul(&x, &y), &f.mul(&x, &z)));
                prop_assert_eq!(f.mul(&f.mul(&x, &y), &z), f.mul(&x, &f.mul(&y, &z)));
                if !f.is_zero(&x) {
                    prop_assert_eq!(f.mul(&x, &f.inv(&x)), f.one());
                }
            }
        }
    }
}
