//! Exact arithmetic in the finite field `F_q` for a prime power `q <= 2^16`.
//!
//! Elements are encoded as indices in `[0, q)`: the base-`p` digits of the
//! index are the coordinates in the polynomial basis `1, x, ..., x^(e-1)` of
//! `F_q = F_p[x]/(m)`, where `m` is the first monic irreducible of degree `e`
//! over `F_p` in coefficient-lexicographic order. Index 0 is the additive
//! identity and index 1 the multiplicative identity, for every `q`.
//!
//! Multiplication, inversion and the quadratic character go through discrete
//! log tables built once at construction, so all element operations are O(1)
//! apart from addition in large extension fields.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

/// Field orders up to this bound get a full q-by-q addition table.
const ADD_TABLE_LIMIT: u64 = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime power")]
    NotAPrimePower(u64),
    #[error("field order {0} exceeds the supported maximum 2^16")]
    OutOfRange(u64),
    #[error("division by zero in a finite field")]
    DivisionByZero,
    #[error("the quadratic character is undefined at zero")]
    ZeroArgument,
}

/// An element of a fixed `F_q`, stored as its canonical index in `[0, q)`.
///
/// The element only has meaning relative to the [`Field`] it was produced
/// from; mixing elements of different fields is a logic error.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct FieldElement(pub u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Shared handle to a field; cheap to clone and safe to use concurrently.
pub type FieldRef = Arc<Field>;

/// The finite field `F_q`, `q = p^e`, with its arithmetic tables.
pub struct Field {
    q: u64,
    p: u64,
    e: u32,
    /// Coefficients `c_0, ..., c_e` (ascending, monic) of the modulus
    /// polynomial; empty for prime fields.
    modulus: Vec<u16>,
    /// `exp[i] = g^i` for a fixed generator g of the unit group; length q-1.
    exp: Vec<u16>,
    /// `log[a]` for `a != 0`; `log[0]` is a sentinel.
    log: Vec<u32>,
    /// Negation table, length q.
    neg: Vec<u16>,
    /// Full addition table (q*q entries) for small fields, row-major.
    add_table: Option<Vec<u16>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("q", &self.q)
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
    }
}

impl Eq for Field {}

impl Field {
    /// Constructs `F_q`. Fails unless `2 <= q <= 2^16` is a prime power.
    pub fn new(q: u64) -> Result<FieldRef, FieldError> {
        if q > MAX_ORDER {
            return Err(FieldError::OutOfRange(q));
        }
        let (p, e) = prime_power(q).ok_or(FieldError::NotAPrimePower(q))?;
        let modulus = if e == 1 {
            Vec::new()
        } else {
            least_irreducible(p, e)
        };

        let mut field = Field {
            q,
            p,
            e,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            neg: Vec::new(),
            add_table: None,
        };
        field.build_neg_table();
        field.build_log_tables();
        if q <= ADD_TABLE_LIMIT {
            field.build_add_table();
        }
        Ok(Arc::new(field))
    }

    #[inline]
    pub fn order(&self) -> u64 {
        self.q
    }

    #[inline]
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn extension_degree(&self) -> u32 {
        self.e
    }

    /// Ascending coefficients of the modulus polynomial (empty when `e = 1`).
    pub fn modulus(&self) -> &[u16] {
        &self.modulus
    }

    /// The element with the given canonical index.
    #[inline]
    pub fn el(&self, idx: u64) -> FieldElement {
        assert!(
            idx < self.q,
            "element index {} out of range for F_{}",
            idx,
            self.q
        );
        FieldElement(idx as u16)
    }

    #[inline]
    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    #[inline]
    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// All field elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q as u16).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!((a.0 as u64) < self.q && (b.0 as u64) < self.q);
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if let Some(t) = &self.add_table {
            return FieldElement(t[a.0 as usize * self.q as usize + b.0 as usize]);
        }
        self.add_digits(a, b)
    }

    fn add_digits(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.p;
        let (mut x, mut y) = (a.0 as u64, b.0 as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.e {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        FieldElement(out as u16)
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        debug_assert!((a.0 as u64) < self.q);
        FieldElement(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!((a.0 as u64) < self.q && (b.0 as u64) < self.q);
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let m = (self.q - 1) as u32;
        let mut s = self.log[a.0 as usize] + self.log[b.0 as usize];
        if s >= m {
            s -= m;
        }
        FieldElement(self.exp[s as usize])
    }

    /// Multiplicative inverse; `inv(0)` is an error.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let m = (self.q - 1) as u32;
        let l = self.log[a.0 as usize];
        let s = if l == 0 { 0 } else { m - l };
        Ok(FieldElement(self.exp[s as usize]))
    }

    pub fn pow(&self, a: FieldElement, n: u64) -> FieldElement {
        if a.0 == 0 {
            return if n == 0 {
                FieldElement::ONE
            } else {
                FieldElement::ZERO
            };
        }
        let m = (self.q - 1) as u128;
        let s = (self.log[a.0 as usize] as u128 * n as u128) % m;
        FieldElement(self.exp[s as usize])
    }

    /// Whether `a` is a nonzero square. For even `q` every nonzero element is
    /// a square; for odd `q` exactly half of the unit group is.
    pub fn is_square(&self, a: FieldElement) -> Result<bool, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::ZeroArgument);
        }
        if self.q % 2 == 0 {
            return Ok(true);
        }
        Ok(self.log[a.0 as usize] % 2 == 0)
    }

    fn build_neg_table(&mut self) {
        let q = self.q;
        let p = self.p;
        let mut neg = vec![0u16; q as usize];
        for idx in 0..q {
            let mut x = idx;
            let mut out = 0u64;
            let mut place = 1u64;
            for _ in 0..self.e {
                let d = x % p;
                out += ((p - d) % p) * place;
                x /= p;
                place *= p;
            }
            neg[idx as usize] = out as u16;
        }
        self.neg = neg;
    }

    fn build_add_table(&mut self) {
        let q = self.q as usize;
        let mut t = vec![0u16; q * q];
        for a in 0..q {
            for b in a..q {
                let s = self
                    .add_digits(FieldElement(a as u16), FieldElement(b as u16))
                    .0;
                t[a * q + b] = s;
                t[b * q + a] = s;
            }
        }
        self.add_table = Some(t);
    }

    /// Multiplication by polynomial arithmetic, used only while the log
    /// tables are being built.
    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        let p = self.p;
        if self.e == 1 {
            return (a * b) % p;
        }
        let e = self.e as usize;
        let da = digits(a, p, e);
        let db = digits(b, p, e);
        // Schoolbook product, degree <= 2e-2.
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &ca) in da.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (j, &cb) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ca * cb) % p;
            }
        }
        // Reduce modulo the monic modulus.
        for d in (e..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (j, &mc) in self.modulus.iter().enumerate().take(e) {
                let pos = d - e + j;
                prod[pos] = (prod[pos] + c * (p - mc as u64)) % p;
            }
        }
        undigits(&prod[..e], p)
    }

    fn build_log_tables(&mut self) {
        let q = self.q;
        let mut exp = vec![0u16; (q - 1) as usize];
        let mut log = vec![u32::MAX; q as usize];
        // Find a generator of the unit group by direct order computation.
        'candidates: for g in 2..q {
            let mut cur = 1u64;
            for (i, slot) in exp.iter_mut().enumerate() {
                *slot = cur as u16;
                log[cur as usize] = i as u32;
                cur = self.mul_slow(cur, g);
                if cur == 1 {
                    if i + 1 == (q - 1) as usize {
                        self.exp = exp;
                        self.log = log;
                        return;
                    }
                    continue 'candidates;
                }
            }
            unreachable!("unit group order exceeded q-1");
        }
        // q = 2 has the empty candidate range: its unit group is trivial.
        assert_eq!(q, 2);
        exp[0] = 1;
        log[1] = 0;
        self.exp = exp;
        self.log = log;
    }
}

fn digits(mut x: u64, p: u64, e: usize) -> Vec<u64> {
    let mut out = vec![0u64; e];
    for d in out.iter_mut() {
        *d = x % p;
        x /= p;
    }
    out
}

fn undigits(ds: &[u64], p: u64) -> u64 {
    let mut out = 0u64;
    for &d in ds.iter().rev() {
        out = out * p + d;
    }
    out
}

/// Decomposes `q = p^e` with `p` prime, if possible.
fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 0;
    for cand in 2..=q {
        if cand * cand > q {
            p = q; // q itself is prime
            break;
        }
        if q % cand == 0 {
            p = cand;
            break;
        }
    }
    if !is_prime(p) {
        return None;
    }
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    if rest == 1 {
        Some((p, e))
    } else {
        None
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The monic irreducible of degree `e` over `F_p` whose non-leading
/// coefficient word (read as a base-p integer) is smallest.
fn least_irreducible(p: u64, e: u32) -> Vec<u16> {
    let e = e as usize;
    let count = p.pow(e as u32);
    for low in 0..count {
        let mut coeffs: Vec<u64> = digits(low, p, e);
        coeffs.push(1); // monic
        if poly_is_irreducible(&coeffs, p) {
            return coeffs.iter().map(|&c| c as u16).collect();
        }
    }
    unreachable!("an irreducible of every degree exists over F_p");
}

/// Irreducibility by trial division: a monic polynomial of degree e >= 2 is
/// irreducible iff no monic polynomial of degree 1..=e/2 divides it.
fn poly_is_irreducible(poly: &[u64], p: u64) -> bool {
    let e = poly.len() - 1;
    if poly[0] == 0 {
        return false; // divisible by x
    }
    for d in 1..=(e / 2) {
        let count = p.pow(d as u32);
        for low in 0..count {
            let mut div = digits(low, p, d);
            div.push(1);
            if poly_rem_is_zero(poly, &div, p) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(num: &[u64], den: &[u64], p: u64) -> bool {
    let mut rem: Vec<u64> = num.to_vec();
    let dd = den.len() - 1;
    while rem.len() > dd {
        let lead = *rem.last().unwrap();
        if lead != 0 {
            let shift = rem.len() - 1 - dd;
            for (j, &dc) in den.iter().enumerate() {
                let pos = shift + j;
                rem[pos] = (rem[pos] + lead * (p - dc % p) % p) % p;
            }
        }
        rem.pop();
        // Trim leading zeros to make progress.
        while rem.len() > dd && *rem.last().unwrap() == 0 {
            rem.pop();
        }
    }
    rem.iter().all(|&c| c == 0)
}
