//! Binary extension fields `GF(2^m)` with log/antilog tables.

use super::CodeError;

/// Field element; the low `m` bits are used.
pub type Gf = u16;

/// Primitive polynomials (with the `x^m` term) for `m = 2..=16`.
const PRIMITIVE: [u32; 17] = [
    0, 0, 0x7, 0xB, 0x13, 0x25, 0x43, 0x89, 0x11D, 0x211, 0x409, 0x805, 0x1053, 0x201B, 0x4443,
    0x8003, 0x1100B,
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisField {
    bits: u32,
    exp: Vec<Gf>,
    log: Vec<u32>,
}

impl GaloisField {
    pub fn new(bits: u32) -> Result<Self, CodeError> {
        if !(2..=16).contains(&bits) {
            return Err(CodeError::InvalidParameters(format!(
                "field bits must be in 2..=16, got {bits}"
            )));
        }
        let order = 1usize << bits;
        let poly = PRIMITIVE[bits as usize];
        let mut exp = vec![0 as Gf; 2 * (order - 1)];
        let mut log = vec![0u32; order];
        let mut x: u32 = 1;
        for (i, slot) in exp.iter_mut().take(order - 1).enumerate() {
            *slot = x as Gf;
            log[x as usize] = i as u32;
            x <<= 1;
            if x & (order as u32) != 0 {
                x ^= poly;
            }
        }
        for i in order - 1..2 * (order - 1) {
            exp[i] = exp[i - (order - 1)];
        }
        Ok(Self { bits, exp, log })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Number of field elements, `2^m`.
    pub fn order(&self) -> usize {
        1 << self.bits
    }

    pub fn contains(&self, x: Gf) -> bool {
        (x as usize) < self.order()
    }

    #[inline]
    pub fn mul(&self, a: Gf, b: Gf) -> Gf {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    #[inline]
    pub fn inv(&self, a: Gf) -> Gf {
        assert!(a != 0, "zero has no inverse");
        let n = self.order() as u32 - 1;
        self.exp[((n - self.log[a as usize]) % n) as usize]
    }

    #[inline]
    pub fn div(&self, a: Gf, b: Gf) -> Gf {
        self.mul(a, self.inv(b))
    }

    /// Multiplicative order of `a` (brute force; for tests).
    pub fn element_order(&self, a: Gf) -> usize {
        assert!(a != 0);
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
}
