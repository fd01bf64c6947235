//! Bialgebra obstruction certificates.
//!
//! A coproduct that is an algebra map forces all the binomial coefficients
//! binom(a_i, m) with 0 < m < a_i to vanish in the coefficient field. Over
//! characteristic zero that is immediately absurd; over characteristic p it
//! fails whenever a_i is not a power of p, with the witness exponent
//! m = p^{v_p(a_i)} whose binomial survives by the carry-counting valuation
//! formula. The verdict never overclaims: when every bound is a power of
//! the characteristic the procedure stays silent.

use num_traits::Zero;
use serde::Serialize;

use crate::error::QciError;
use crate::scalar::binomial;

/// Largest s with p^s dividing x. Undefined on 0.
pub fn padic_valuation(x: u64, p: u64) -> Result<u32, QciError> {
    debug_assert!(p >= 2);
    if x == 0 {
        return Err(QciError::UndefinedValuation);
    }
    let mut x = x;
    let mut s = 0;
    while x.is_multiple_of(p) {
        x /= p;
        s += 1;
    }
    Ok(s)
}

/// v_p(binom(n, m)) as the number of carries when adding m and n - m in
/// base p.
pub fn binom_valuation_kummer(n: u64, m: u64, p: u64) -> Result<u32, QciError> {
    if m > n {
        return Err(QciError::BinomialArguments { n, m });
    }
    let mut a = m;
    let mut b = n - m;
    let mut carry = 0u64;
    let mut carries = 0u32;
    while a > 0 || b > 0 || carry > 0 {
        let digit = a % p + b % p + carry;
        carry = digit / p;
        if carry > 0 {
            carries += 1;
        }
        a /= p;
        b /= p;
    }
    Ok(carries)
}

/// For p | n with r = v_p(n), the binomial binom(n, p^r) is prime to p:
/// adding p^r and n - p^r in base p produces no carries. Returns that
/// carry-free statement as a boolean.
pub fn kummer_fact_check(n: u64, p: u64) -> Result<bool, QciError> {
    let r = padic_valuation(n, p)?;
    Ok(binom_valuation_kummer(n, p.pow(r), p)? == 0)
}

/// The decision outcome for bialgebra structures on an algebra with
/// exponent bounds `a` over a field of the given characteristic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "verdict")]
pub enum ObstructionVerdict {
    /// No bialgebra structure exists; the witness binomial survives in the
    /// field.
    NoBialgebra { witness: ObstructionWitness },
    /// The quantum exterior algebra in characteristic 2 carries a Hopf
    /// algebra structure.
    HopfExists,
    /// Every bound is a power of the characteristic; the criterion is
    /// silent and the tool makes no existence claim either way.
    NotObstructed,
}

/// Index, binomial argument, and the reason the binomial is nonzero in the
/// field, re-verified by exact big-integer computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionWitness {
    /// Zero-based index of the offending exponent bound.
    pub index: usize,
    pub bound: u32,
    /// The binomial argument m with binom(bound, m) nonzero in the field.
    pub m: u64,
    pub reason: String,
}

/// Decide the obstruction: characteristic 0 always obstructs; a bound that
/// is not a power of char k obstructs with witness m = 1 (when p does not
/// divide it) or m = p^{v_p(bound)}; the all-2 bounds in characteristic 2
/// carry a Hopf structure; otherwise the result is open.
pub fn bialgebra_obstruction(
    a: &[u32],
    characteristic: u64,
) -> Result<ObstructionVerdict, QciError> {
    if characteristic == 0 {
        let bound = a[0];
        let witness = ObstructionWitness {
            index: 0,
            bound,
            m: 1,
            reason: format!(
                "binom({bound},1) = {bound} is nonzero in characteristic 0"
            ),
        };
        verify_witness(&witness, 0)?;
        return Ok(ObstructionVerdict::NoBialgebra { witness });
    }
    let p = characteristic;
    for (index, &bound) in a.iter().enumerate() {
        if is_power_of(bound as u64, p) {
            continue;
        }
        let witness = if !(bound as u64).is_multiple_of(p) {
            ObstructionWitness {
                index,
                bound,
                m: 1,
                reason: format!("binom({bound},1) = {bound} is prime to {p}"),
            }
        } else {
            let r = padic_valuation(bound as u64, p)?;
            let m = p.pow(r);
            let b = binomial(bound as u64, m);
            ObstructionWitness {
                index,
                bound,
                m,
                reason: format!(
                    "v_{p}({bound}) = {r} and binom({bound},{m}) = {b} is prime to {p}"
                ),
            }
        };
        verify_witness(&witness, p)?;
        return Ok(ObstructionVerdict::NoBialgebra { witness });
    }
    if p == 2 && a.iter().all(|&ai| ai == 2) {
        Ok(ObstructionVerdict::HopfExists)
    } else {
        Ok(ObstructionVerdict::NotObstructed)
    }
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// Re-verify a witness by direct big-integer binomial computation.
fn verify_witness(w: &ObstructionWitness, characteristic: u64) -> Result<(), QciError> {
    let b = binomial(w.bound as u64, w.m);
    let nonzero_in_field = if characteristic == 0 {
        !b.is_zero()
    } else {
        !(b % characteristic).is_zero()
    };
    if !nonzero_in_field {
        return Err(QciError::InternalInconsistency(format!(
            "witness binomial binom({},{}) vanishes in characteristic {}",
            w.bound, w.m, characteristic
        )));
    }
    Ok(())
}
