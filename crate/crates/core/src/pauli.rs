//! Symbolic algebra over n-qubit Pauli strings.
//!
//! Qubit 0 is the leftmost tensor factor, i.e. the most significant bit of a
//! computational-basis index. A string is stored as a pair of bit masks
//! `(x, z)` using that same bit layout, so `x` can be XOR-ed directly onto a
//! basis index when a string is applied to a basis state.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use faer::c64;
use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};

/// Coefficients with magnitude at or below this are dropped after every
/// arithmetic operation on a [`PauliSum`].
pub const PRUNE_TOL: f64 = 1e-12;

/// Largest qubit count a symbolic string can carry.
pub const MAX_SYMBOLIC_QUBITS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// A tensor product of single-qubit Paulis, without phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    n: u8,
    x: u64,
    z: u64,
}

fn check_width(n: usize) -> Result<()> {
    if n == 0 || n > MAX_SYMBOLIC_QUBITS {
        return Err(input(format!(
            "qubit count must be in 1..={MAX_SYMBOLIC_QUBITS}, got {n}"
        )));
    }
    Ok(())
}

/// `i^k` for `k` taken mod 4.
fn i_pow(k: u32) -> c64 {
    match k % 4 {
        0 => c64::new(1.0, 0.0),
        1 => c64::new(0.0, 1.0),
        2 => c64::new(-1.0, 0.0),
        _ => c64::new(0.0, -1.0),
    }
}

impl PauliString {
    pub fn identity(n: usize) -> Result<Self> {
        check_width(n)?;
        Ok(Self { n: n as u8, x: 0, z: 0 })
    }

    pub fn from_axes(axes: &[Pauli]) -> Result<Self> {
        let n = axes.len();
        check_width(n)?;
        let mut s = Self { n: n as u8, x: 0, z: 0 };
        for (q, &p) in axes.iter().enumerate() {
            s.set(q, p);
        }
        Ok(s)
    }

    /// `p` on qubit `q`, identity elsewhere.
    pub fn single(n: usize, q: usize, p: Pauli) -> Result<Self> {
        let mut s = Self::identity(n)?;
        if q >= n {
            return Err(input(format!("qubit index {q} out of range for n = {n}")));
        }
        s.set(q, p);
        Ok(s)
    }

    /// `p` on both qubits `a` and `b`.
    pub fn pair(n: usize, a: usize, b: usize, p: Pauli) -> Result<Self> {
        let mut s = Self::single(n, a, p)?;
        if b >= n || b == a {
            return Err(input(format!("invalid qubit pair ({a}, {b}) for n = {n}")));
        }
        s.set(b, p);
        Ok(s)
    }

    fn bit(&self, q: usize) -> u64 {
        1u64 << (self.n as usize - 1 - q)
    }

    fn set(&mut self, q: usize, p: Pauli) {
        let b = self.bit(q);
        let (x, z) = p.bits();
        self.x = if x { self.x | b } else { self.x & !b };
        self.z = if z { self.z | b } else { self.z & !b };
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn axis(&self, q: usize) -> Pauli {
        let b = self.bit(q);
        Pauli::from_bits(self.x & b != 0, self.z & b != 0)
    }

    pub fn axes(&self) -> Vec<Pauli> {
        (0..self.n()).map(|q| self.axis(q)).collect()
    }

    /// Bit mask of flipped basis bits (X or Y positions).
    pub fn x_mask(&self) -> u64 {
        self.x
    }

    /// Bit mask of phase bits (Z or Y positions).
    pub fn z_mask(&self) -> u64 {
        self.z
    }

    /// Qubits acted on non-trivially, as a basis-index bit mask.
    pub fn support(&self) -> u64 {
        self.x | self.z
    }

    pub fn is_identity(&self) -> bool {
        self.support() == 0
    }

    pub fn is_diagonal(&self) -> bool {
        self.x == 0
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        ((self.x & other.z) ^ (self.z & other.x)).count_ones().is_multiple_of(2)
    }

    /// Number of Y factors; the dense matrix of the string carries `i^ny`
    /// relative to `X^x Z^z`.
    fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    /// Matrix element `<col ^ x | P | col>` of the string.
    pub fn phase_on(&self, col: u64) -> c64 {
        let sign = if (col & self.z).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
        i_pow(self.y_count()) * sign
    }
}

/// Product `p * q = phase * r`.
pub fn multiply_strings(p: &PauliString, q: &PauliString) -> Result<(c64, PauliString)> {
    if p.n != q.n {
        return Err(input(format!(
            "Pauli string length mismatch: {} vs {}",
            p.n, q.n
        )));
    }
    let r = PauliString { n: p.n, x: p.x ^ q.x, z: p.z ^ q.z };
    // X^a Z^b X^c Z^d = (-1)^{|b&c|} X^{a^c} Z^{b^d}
    let k = p.y_count() + q.y_count() + 2 * (p.z & q.x).count_ones() + 3 * r.y_count();
    Ok((i_pow(k), r))
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n() {
            write!(f, "{}", self.axis(q).as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_string_at(s, 0)
    }
}

fn parse_string_at(s: &str, offset: usize) -> Result<PauliString> {
    let mut axes = Vec::with_capacity(s.len());
    for (i, c) in s.chars().enumerate() {
        match Pauli::from_char(c) {
            Some(p) => axes.push(p),
            None => {
                return Err(Error::Parse {
                    position: offset + i,
                    message: format!("unexpected character {c:?} in Pauli string"),
                })
            }
        }
    }
    if axes.is_empty() {
        return Err(Error::Parse { position: offset, message: "empty Pauli string".into() });
    }
    PauliString::from_axes(&axes).map_err(|e| Error::Parse { position: offset, message: e.to_string() })
}

/// Parses a coefficient such as `1.5`, `-2e-3`, `0.5i`, `-i`, `1.0+2.0i` or
/// `(1-2i)`.
fn parse_coefficient(s: &str, offset: usize) -> Result<c64> {
    let err = |message: String| Error::Parse { position: offset, message };
    let mut body = s.trim_end_matches('*');
    if body.starts_with('(') && body.ends_with(')') {
        body = &body[1..body.len() - 1];
    }
    if body.is_empty() {
        return Err(err("empty coefficient".into()));
    }
    let real = |t: &str| -> Result<f64> {
        t.parse::<f64>()
            .map_err(|_| err(format!("invalid number {t:?} in coefficient {s:?}")))
    };
    let imag = |t: &str| -> Result<f64> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => real(t),
        }
    };
    let Some(stripped) = body.strip_suffix(['i', 'j']) else {
        return Ok(c64::new(real(body)?, 0.0));
    };
    let bytes = stripped.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Ok(c64::new(real(&stripped[..k])?, imag(&stripped[k..])?)),
        None => Ok(c64::new(0.0, imag(stripped)?)),
    }
}

/// Parses one term: an optional coefficient followed by a Pauli string,
/// e.g. `"XXIZ"`, `"0.5 ZI"`, `"(1-2i) XY"`.
pub fn parse_term(s: &str) -> Result<(c64, PauliString)> {
    let lead = s.len() - s.trim_start().len();
    let trimmed = s.trim();
    if trimmed.is_empty() {
        return Err(Error::Parse { position: 0, message: "empty term".into() });
    }
    match trimmed.rfind(char::is_whitespace) {
        Some(k) => {
            let coef_text = trimmed[..k].trim_end();
            let string_text = &trimmed[k + 1..];
            let coef = parse_coefficient(coef_text, lead)?;
            let string = parse_string_at(string_text, lead + k + 1)?;
            Ok((coef, string))
        }
        None => Ok((c64::new(1.0, 0.0), parse_string_at(trimmed, lead)?)),
    }
}

/// A complex-weighted sum of Pauli strings on a fixed number of qubits.
///
/// Terms are kept in a sorted map so iteration order, and therefore every
/// floating-point reduction over terms, is reproducible.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    n: usize,
    terms: BTreeMap<PauliString, c64>,
}

impl PauliSum {
    pub fn zero(n: usize) -> Result<Self> {
        check_width(n)?;
        Ok(Self { n, terms: BTreeMap::new() })
    }

    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (c64, PauliString)>,
    {
        let mut sum = Self::zero(n)?;
        for (c, p) in terms {
            sum.add_term(c, p)?;
        }
        Ok(sum)
    }

    /// Parses a list of term strings (see [`parse_term`]).
    pub fn parse<S: AsRef<str>>(n: usize, terms: &[S]) -> Result<Self> {
        let mut sum = Self::zero(n)?;
        for t in terms {
            let (c, p) = parse_term(t.as_ref())?;
            if p.n() != n {
                return Err(input(format!(
                    "term {:?} has {} qubits, expected {n}",
                    t.as_ref(),
                    p.n()
                )));
            }
            sum.add_term(c, p)?;
        }
        Ok(sum)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PauliString, &c64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &PauliString) -> c64 {
        self.terms.get(p).copied().unwrap_or(c64::new(0.0, 0.0))
    }

    pub fn add_term(&mut self, coef: c64, p: PauliString) -> Result<()> {
        if p.n() != self.n {
            return Err(input(format!(
                "term {p} has {} qubits, sum has {}",
                p.n(),
                self.n
            )));
        }
        let entry = self.terms.entry(p).or_insert(c64::new(0.0, 0.0));
        *entry += coef;
        if entry.norm() <= PRUNE_TOL {
            self.terms.remove(&p);
        }
        Ok(())
    }

    fn check_same_width(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(input(format!("qubit-count mismatch: {} vs {}", self.n, other.n)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_width(other)?;
        let mut out = self.clone();
        for (p, c) in other.iter() {
            out.add_term(*c, *p)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(c64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: c64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(p, v)| (*p, v * c))
            .filter(|(_, v)| v.norm() > PRUNE_TOL)
            .collect();
        Self { n: self.n, terms }
    }

    /// Operator product `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_width(other)?;
        let mut raw: BTreeMap<PauliString, c64> = BTreeMap::new();
        for (p, a) in self.iter() {
            for (q, b) in other.iter() {
                let (phase, r) = multiply_strings(p, q)?;
                *raw.entry(r).or_insert(c64::new(0.0, 0.0)) += phase * a * b;
            }
        }
        raw.retain(|_, v| v.norm() > PRUNE_TOL);
        Ok(Self { n: self.n, terms: raw })
    }

    /// Every coefficient real (within [`PRUNE_TOL`]).
    pub fn is_hermitian(&self) -> bool {
        self.terms.values().all(|c| c.im.abs() <= PRUNE_TOL)
    }

    /// All strings diagonal in the computational basis.
    pub fn is_diagonal(&self) -> bool {
        self.terms.keys().all(PauliString::is_diagonal)
    }

    /// Sum of |coefficient|, an upper bound on the spectral norm.
    pub fn l1_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }
}

/// `[a, b] = ab - ba`.
///
/// Only anticommuting string pairs contribute, each with twice its product.
pub fn commutator(a: &PauliSum, b: &PauliSum) -> Result<PauliSum> {
    a.check_same_width(b)?;
    let mut raw: BTreeMap<PauliString, c64> = BTreeMap::new();
    for (p, x) in a.iter() {
        for (q, y) in b.iter() {
            if p.commutes_with(q) {
                continue;
            }
            let (phase, r) = multiply_strings(p, q)?;
            *raw.entry(r).or_insert(c64::new(0.0, 0.0)) += phase * x * y * 2.0;
        }
    }
    raw.retain(|_, v| v.norm() > PRUNE_TOL);
    Ok(PauliSum { n: a.n, terms: raw })
}

fn fmt_coefficient(c: &c64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else if c.re == 0.0 {
        format!("{}i", c.im)
    } else {
        format!("({}{:+}i)", c.re, c.im)
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (p, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{} {}", fmt_coefficient(c), p)?;
        }
        Ok(())
    }
}

impl PauliSum {
    /// One term string per entry, in the form accepted by [`PauliSum::parse`].
    pub fn term_strings(&self) -> Vec<String> {
        self.terms
            .iter()
            .map(|(p, c)| format!("{} {}", fmt_coefficient(c), p))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    fn one(s: &str) -> PauliSum {
        PauliSum::parse(s.len(), &[s]).unwrap()
    }

    #[test]
    fn single_qubit_table() {
        let (ph, r) = multiply_strings(&ps("X"), &ps("Z")).unwrap();
        assert_eq!(r, ps("Y"));
        assert_eq!(ph, c64::new(0.0, -1.0));
        let (ph, r) = multiply_strings(&ps("Z"), &ps("X")).unwrap();
        assert_eq!((ph, r), (c64::new(0.0, 1.0), ps("Y")));
        let (ph, r) = multiply_strings(&ps("Y"), &ps("Y")).unwrap();
        assert_eq!((ph, r), (c64::new(1.0, 0.0), ps("I")));
        let (ph, r) = multiply_strings(&ps("X"), &ps("Y")).unwrap();
        assert_eq!((ph, r), (c64::new(0.0, 1.0), ps("Z")));
    }

    #[test]
    fn identity_is_neutral() {
        for q in ["XYZI", "ZZZZ", "IYXI"] {
            let (ph, r) = multiply_strings(&ps("IIII"), &ps(q)).unwrap();
            assert_eq!((ph, r), (c64::new(1.0, 0.0), ps(q)));
        }
    }

    #[test]
    fn two_qubit_product() {
        let (ph, r) = multiply_strings(&ps("XX"), &ps("ZI")).unwrap();
        assert_eq!((ph, r), (c64::new(0.0, -1.0), ps("YX")));
    }

    #[test]
    fn length_mismatch_is_rejected() {
        assert!(matches!(multiply_strings(&ps("X"), &ps("XX")), Err(Error::Input(_))));
        assert!(commutator(&one("X"), &one("XX")).is_err());
    }

    #[test]
    fn commutator_examples() {
        let c = commutator(&one("X"), &one("Z")).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.coefficient(&ps("Y")), c64::new(0.0, -2.0));

        let a = PauliSum::parse(2, &["0.3 XY", "-1.2 ZZ", "0.7 IX"]).unwrap();
        assert!(commutator(&a, &a).unwrap().is_empty());
        assert!(commutator(&one("XI"), &one("IZ")).unwrap().is_empty());
    }

    #[test]
    fn add_and_scale() {
        let mut neg = one("X");
        neg = neg.scale(c64::new(-1.0, 0.0));
        assert!(one("X").add(&neg).unwrap().is_empty());
        let z2 = PauliSum::parse(1, &["2 Z"]).unwrap();
        assert_eq!(z2.scale(c64::new(0.5, 0.0)), one("Z"));
    }

    #[test]
    fn pruning_drops_tiny_coefficients() {
        let a = PauliSum::parse(1, &["1 X"]).unwrap();
        let b = PauliSum::parse(1, &["-1.0000000000001 X"]).unwrap();
        assert!(a.add(&b).unwrap().is_empty());
    }

    #[test]
    fn parse_terms() {
        assert_eq!(parse_term("XXIZ").unwrap(), (c64::new(1.0, 0.0), ps("XXIZ")));
        assert_eq!(parse_term("0.5 ZI").unwrap(), (c64::new(0.5, 0.0), ps("ZI")));
        assert_eq!(parse_term("1.0+2.0i XY").unwrap().0, c64::new(1.0, 2.0));
        assert_eq!(parse_term("(1-2i) XY").unwrap().0, c64::new(1.0, -2.0));
        assert_eq!(parse_term("-i Z").unwrap().0, c64::new(0.0, -1.0));
        assert_eq!(parse_term("2.5e-1 Z").unwrap().0, c64::new(0.25, 0.0));
        assert_eq!(parse_term("1e-3-4e+1i Z").unwrap().0, c64::new(1e-3, -40.0));
    }

    #[test]
    fn parse_errors_carry_position() {
        assert_eq!(
            parse_term("0.5 XQ").unwrap_err(),
            Error::Parse {
                position: 5,
                message: "unexpected character 'Q' in Pauli string".into()
            }
        );
        assert!(matches!(parse_term("abc XX"), Err(Error::Parse { position: 0, .. })));
        assert!(matches!(parse_term("   "), Err(Error::Parse { .. })));
    }

    #[test]
    fn display_round_trips() {
        let a = PauliSum::parse(3, &["0.5 XYZ", "-2 IIZ", "(1+0.25i) XXI"]).unwrap();
        let b = PauliSum::parse(3, &a.term_strings()).unwrap();
        assert_eq!(a, b);
        assert_eq!(format!("{}", ps("IXYZ")), "IXYZ");
    }

    #[test]
    fn hermiticity_flag() {
        assert!(PauliSum::parse(1, &["0.5 X", "2 Z"]).unwrap().is_hermitian());
        assert!(!PauliSum::parse(1, &["0.5i X"]).unwrap().is_hermitian());
        let c = commutator(&one("X"), &one("Z")).unwrap();
        assert!(c.iter().all(|(_, v)| v.re == 0.0));
    }
}
