//! Rigorous rational enclosures of π.
//!
//! A 50-digit enclosure is built in. Finer enclosures come from Machin's
//! formula `π = 16·atan(1/5) − 4·atan(1/239)` evaluated in fixed point with an
//! explicit truncation bound, and are cached process-wide.

use std::sync::RwLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

const PI_50: &str = "314159265358979323846264338327950288419716939937510";
const BUILTIN_BITS: u32 = 160;

#[derive(Clone)]
struct Enclosure {
    bits: u32,
    lo: BigRational,
    hi: BigRational,
}

static CACHE: RwLock<Option<Enclosure>> = RwLock::new(None);

fn builtin() -> Enclosure {
    let scale = BigInt::from(10u32).pow(50);
    let lo = BigRational::new(PI_50.parse::<BigInt>().unwrap(), scale.clone());
    let hi = &lo + BigRational::new(BigInt::one(), scale);
    Enclosure {
        bits: BUILTIN_BITS,
        lo,
        hi,
    }
}

/// Fixed-point `one·atan(1/x)` with floor divisions, plus the number of
/// series terms used. The absolute error is below `3·terms + 3` units.
fn atan_inv(x: u32, one: &BigInt) -> (BigInt, u64) {
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut p = one / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !p.is_zero() {
        let term = &p / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        p = &p / &x2;
        k += 1;
    }
    (sum, k)
}

/// Machin enclosure with about `bits` bits of accuracy.
pub(crate) fn machin(bits: u32) -> (BigRational, BigRational) {
    let one = BigInt::one() << (bits as usize + 16);
    let (a5, k5) = atan_inv(5, &one);
    let (a239, k239) = atan_inv(239, &one);
    let p = BigInt::from(16) * a5 - BigInt::from(4) * a239;
    let err = BigInt::from(16 * (3 * k5 + 3) + 4 * (3 * k239 + 3));
    let lo = BigRational::new(&p - &err, one.clone());
    let hi = BigRational::new(&p + &err, one);
    (lo, hi)
}

/// Returns `(lo, hi)` with `lo < π < hi` and `hi − lo` roughly `2^-bits`.
pub(crate) fn enclosure(bits: u32) -> (BigRational, BigRational) {
    if bits <= BUILTIN_BITS {
        let b = builtin();
        return (b.lo, b.hi);
    }
    if let Some(e) = CACHE.read().unwrap_or_else(|p| p.into_inner()).as_ref() {
        if e.bits >= bits {
            return (e.lo.clone(), e.hi.clone());
        }
    }
    let (mut lo, mut hi) = machin(bits);
    let b = builtin();
    if b.lo > lo {
        lo = b.lo;
    }
    if b.hi < hi {
        hi = b.hi;
    }
    let mut guard = CACHE.write().unwrap_or_else(|p| p.into_inner());
    match guard.as_ref() {
        Some(e) if e.bits >= bits => (e.lo.clone(), e.hi.clone()),
        _ => {
            *guard = Some(Enclosure {
                bits,
                lo: lo.clone(),
                hi: hi.clone(),
            });
            (lo, hi)
        }
    }
}
