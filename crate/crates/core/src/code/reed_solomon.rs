//! Systematic Reed–Solomon codes over `GF(2^m)` with an errors-and-erasures
//! decoder (Gao's algorithm on the non-erased positions).

use super::gf::{GaloisField, Gf};
use super::CodeError;

/// Polynomials are coefficient vectors, lowest degree first, with no
/// trailing zeros (the zero polynomial is empty).
type Poly = Vec<Gf>;

fn trim(p: &mut Poly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn degree(p: &Poly) -> isize {
    p.len() as isize - 1
}

fn eval(f: &GaloisField, p: &[Gf], x: Gf) -> Gf {
    p.iter().rev().fold(0, |acc, &c| f.mul(acc, x) ^ c)
}

fn poly_mul(f: &GaloisField, a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] ^= f.mul(x, y);
        }
    }
    trim(&mut out);
    out
}

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, &x) in a.iter().enumerate() {
        out[i] ^= x;
    }
    for (i, &x) in b.iter().enumerate() {
        out[i] ^= x;
    }
    trim(&mut out);
    out
}

fn poly_divrem(f: &GaloisField, a: &Poly, b: &Poly) -> (Poly, Poly) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut rem = a.clone();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = f.inv(*b.last().unwrap());
    let mut quot = vec![0; rem.len() - b.len() + 1];
    for shift in (0..quot.len()).rev() {
        let c = rem[shift + b.len() - 1];
        if c == 0 {
            continue;
        }
        let q = f.mul(c, lead_inv);
        quot[shift] = q;
        for (i, &y) in b.iter().enumerate() {
            rem[shift + i] ^= f.mul(q, y);
        }
    }
    trim(&mut quot);
    trim(&mut rem);
    (quot, rem)
}

/// `∏ (x − p)` over `points`.
fn vanishing(f: &GaloisField, points: &[Gf]) -> Poly {
    let mut g: Poly = vec![1];
    for &p in points {
        g = poly_mul(f, &g, &vec![p, 1]);
    }
    g
}

/// The polynomial of degree `< points.len()` through `(points[i], values[i])`.
fn interpolate(f: &GaloisField, points: &[Gf], values: &[Gf]) -> Poly {
    let g = vanishing(f, points);
    let mut out = vec![0; points.len()];
    for (&p, &v) in points.iter().zip(values) {
        if v == 0 {
            continue;
        }
        // g / (x − p) by synthetic division
        let mut q = vec![0; g.len() - 1];
        let mut carry = 0;
        for k in (0..q.len()).rev() {
            carry = g[k + 1] ^ f.mul(carry, p);
            q[k] = carry;
        }
        let scale = f.div(v, eval(f, &q, p));
        for (o, &c) in out.iter_mut().zip(&q) {
            *o ^= f.mul(scale, c);
        }
    }
    trim(&mut out);
    out
}

/// A systematic `[n, k]` Reed–Solomon code evaluated at the field elements
/// `0, 1, …, n−1`; the message is the codeword's first `k` symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReedSolomon {
    field: GaloisField,
    n: usize,
    k: usize,
    points: Vec<Gf>,
}

impl ReedSolomon {
    pub fn new(bits: u32, n: usize, k: usize) -> Result<Self, CodeError> {
        let field = GaloisField::new(bits)?;
        if k == 0 || k > n || n > field.order() {
            return Err(CodeError::InvalidParameters(format!(
                "need 1 <= k <= n <= 2^{bits}, got n={n}, k={k}"
            )));
        }
        let points = (0..n as u32).map(|i| i as Gf).collect();
        Ok(Self { field, n, k, points })
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    /// `n − k`: the largest half-error weight `2·errors + erasures` the
    /// decoder is guaranteed to handle.
    pub fn redundancy(&self) -> usize {
        self.n - self.k
    }

    pub fn encode(&self, msg: &[Gf]) -> Result<Vec<Gf>, CodeError> {
        if msg.len() != self.k {
            return Err(CodeError::LengthMismatch {
                expected: self.k,
                got: msg.len(),
            });
        }
        if let Some(&bad) = msg.iter().find(|&&x| !self.field.contains(x)) {
            return Err(CodeError::SymbolOutOfField(bad));
        }
        let poly = interpolate(&self.field, &self.points[..self.k], msg);
        let mut word = msg.to_vec();
        word.extend(self.points[self.k..].iter().map(|&x| eval(&self.field, &poly, x)));
        Ok(word)
    }

    /// Recovers the message from a word with erasures (`None`) and symbol
    /// errors, provided `2·errors + erasures ≤ n − k`. Outside that radius
    /// the result is either a failure or, when the word happens to sit
    /// within the radius of another codeword, that codeword's message.
    pub fn decode(&self, word: &[Option<Gf>]) -> Result<Vec<Gf>, CodeError> {
        if word.len() != self.n {
            return Err(CodeError::LengthMismatch {
                expected: self.n,
                got: word.len(),
            });
        }
        let f = &self.field;
        let (points, values): (Vec<Gf>, Vec<Gf>) = self
            .points
            .iter()
            .zip(word)
            .filter_map(|(&x, y)| y.map(|y| (x, y)))
            .unzip();
        if let Some(&bad) = values.iter().find(|&&x| !f.contains(x)) {
            return Err(CodeError::SymbolOutOfField(bad));
        }
        let erasures = self.n - points.len();
        let failure = |reason: &'static str| CodeError::DecodeFailure { erasures, reason };
        if points.len() < self.k {
            return Err(failure("fewer surviving symbols than the dimension"));
        }
        let len = points.len();
        let g0 = vanishing(f, &points);
        let g1 = interpolate(f, &points, &values);
        // Partial extended Euclid on (g0, g1), tracking only the g1 coefficient.
        let stop = (len + self.k).div_ceil(2) as isize;
        let (mut r_prev, mut r) = (g0, g1);
        let (mut v_prev, mut v): (Poly, Poly) = (Vec::new(), vec![1]);
        while degree(&r) >= stop {
            let (q, rem) = poly_divrem(f, &r_prev, &r);
            let v_next = poly_add(&v_prev, &poly_mul(f, &q, &v));
            r_prev = std::mem::replace(&mut r, rem);
            v_prev = std::mem::replace(&mut v, v_next);
        }
        if v.is_empty() {
            return Err(failure("degenerate error locator"));
        }
        let (msg_poly, rem) = poly_divrem(f, &r, &v);
        if !rem.is_empty() || msg_poly.len() > self.k {
            return Err(failure("too many errors"));
        }
        let errors = points
            .iter()
            .zip(&values)
            .filter(|(&x, &y)| eval(f, &msg_poly, x) != y)
            .count();
        if 2 * errors + erasures > self.redundancy() {
            return Err(failure("too many errors"));
        }
        Ok(self.points[..self.k].iter().map(|&x| eval(f, &msg_poly, x)).collect())
    }
}
