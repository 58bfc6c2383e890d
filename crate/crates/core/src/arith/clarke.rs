use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{
    bernoulli_over_index, int_valuation, is_integer, mod_inverse, pow_int, rat_int,
    staudt_primes, Int, Rational,
};
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClarkePart {
    pub p: u64,
    /// `1 + nu_p(n)`
    pub exponent: u64,
    #[serde(with = "crate::json::int")]
    pub residue: Int,
}

impl ClarkePart {
    pub fn modulus(&self) -> Int {
        pow_int(&Int::from(self.p), self.exponent)
    }

    pub fn fraction(&self) -> Rational {
        Rational::new(self.residue.clone(), self.modulus())
    }
}

/// `B_n / n = z1 + sum_p z_p / p^(1 + nu_p(n))` over primes with `(p-1) | n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClarkeDecomposition {
    pub n: u64,
    #[serde(with = "crate::json::int")]
    pub z1: Int,
    pub parts: Vec<ClarkePart>,
}

impl ClarkeDecomposition {
    pub fn reconstruct(&self) -> Rational {
        self.parts
            .iter()
            .fold(rat_int(self.z1.clone()), |acc, part| acc + part.fraction())
    }

    pub fn denominator(&self) -> Int {
        self.parts.iter().map(ClarkePart::modulus).product()
    }
}

/// Splits `B_n / n` into its integer part and prime-power fractional parts.
///
/// Each residue is fixed by the congruence
/// `z_p = 2[p = 2][n = 2] + (n / ((p-1) p^nu_p(n)))^{-1} mod p^(1+nu_p(n))`,
/// normalized into `[1, p^e)`. The integer part is whatever remains; if it is
/// not an integer the congruence was wrong and an error is returned.
pub fn clarke_decompose(n: u64) -> Result<ClarkeDecomposition> {
    if n == 0 || n % 2 == 1 {
        return invalid(format!("Clarke decomposition needs even n >= 2, got {n}"));
    }
    let nn = Int::from(n);
    let mut parts = Vec::new();
    for p in staudt_primes(n) {
        let nu = int_valuation(&nn, p)?;
        let modulus = pow_int(&Int::from(p), nu + 1);
        let cofactor = &nn / (Int::from(p - 1) * pow_int(&Int::from(p), nu));
        let inv = mod_inverse(&cofactor, &modulus).ok_or_else(|| {
            Error::Inconsistent(format!("{cofactor} not invertible mod {modulus}"))
        })?;
        let mut residue = inv;
        if p == 2 && n == 2 {
            residue += 2;
        }
        residue = residue.mod_floor(&modulus);
        if residue.is_zero() {
            return Err(Error::Inconsistent(format!(
                "residue for p = {p}, n = {n} vanished"
            )));
        }
        parts.push(ClarkePart {
            p,
            exponent: nu + 1,
            residue,
        });
    }
    let fractional: Rational = parts.iter().map(ClarkePart::fraction).sum();
    let rest = bernoulli_over_index(n as usize) - fractional;
    if !is_integer(&rest) {
        return Err(Error::Inconsistent(format!(
            "B_{n}/{n} minus the prime-power parts is {rest}, not an integer"
        )));
    }
    Ok(ClarkeDecomposition {
        n,
        z1: rest.to_integer(),
        parts,
    })
}

impl ClarkeDecomposition {
    /// Checks every structural invariant: bounds and coprimality of the
    /// residues, exact reconstruction, and the von Staudt denominator.
    pub fn check(&self) -> Result<()> {
        for part in &self.parts {
            let m = part.modulus();
            let p = Int::from(part.p);
            if part.residue < Int::one() || part.residue >= m {
                return Err(Error::Inconsistent(format!(
                    "z_{} = {} outside [1, {m})",
                    part.p, part.residue
                )));
            }
            if !part.residue.gcd(&p).is_one() {
                return Err(Error::Inconsistent(format!(
                    "z_{} = {} shares a factor with {}",
                    part.p, part.residue, part.p
                )));
            }
        }
        let target = bernoulli_over_index(self.n as usize);
        if self.reconstruct() != target {
            return Err(Error::Inconsistent(format!(
                "reconstruction of B_{}/{} failed",
                self.n, self.n
            )));
        }
        if target.denom() != &self.denominator() {
            return Err(Error::Inconsistent(format!(
                "denominator of B_{}/{} is not the prime-power product",
                self.n, self.n
            )));
        }
        Ok(())
    }
}
