use super::{cr, ComplexMatrix};
use crate::error::{Error, Result};
use crate::scalar::{Scalar, C};
use nalgebra::DMatrix;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
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

    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    /// `self * other = i^k * result`.
    fn mul(self, other: Pauli) -> (u8, Pauli) {
        use Pauli::*;
        match (self, other) {
            (I, p) | (p, I) => (0, p),
            (a, b) if a == b => (0, I),
            (X, Y) => (1, Z),
            (Y, Z) => (1, X),
            (Z, X) => (1, Y),
            (Y, X) => (3, Z),
            (Z, Y) => (3, X),
            (X, Z) => (3, Y),
            _ => unreachable!(),
        }
    }

    pub fn matrix<T: Scalar>(self) -> ComplexMatrix<T> {
        let o = T::one();
        let z = T::zero();
        let e = |re: T, im: T| C::new(re, im);
        match self {
            Pauli::I => DMatrix::from_row_slice(2, 2, &[e(o, z), e(z, z), e(z, z), e(o, z)]),
            Pauli::X => DMatrix::from_row_slice(2, 2, &[e(z, z), e(o, z), e(o, z), e(z, z)]),
            Pauli::Y => DMatrix::from_row_slice(2, 2, &[e(z, z), e(z, -o), e(z, o), e(z, z)]),
            Pauli::Z => DMatrix::from_row_slice(2, 2, &[e(o, z), e(z, z), e(z, z), e(-o, z)]),
        }
    }
}

/// Tensor product of single-qubit Paulis with a phase `i^phase`. The
/// leftmost character acts on the most significant bit of the basis index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    ops: Vec<Pauli>,
    phase: u8,
}

impl PauliString {
    pub fn new(ops: Vec<Pauli>) -> Self {
        Self { ops, phase: 0 }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(vec![Pauli::I; n])
    }

    /// All `4^n` unsigned strings in lexicographic order over `I < X < Y < Z`.
    pub fn all(n: usize) -> Vec<PauliString> {
        const ORDER: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
        (0..4usize.pow(n as u32))
            .map(|mut idx| {
                let mut ops = vec![Pauli::I; n];
                for slot in ops.iter_mut().rev() {
                    *slot = ORDER[idx % 4];
                    idx /= 4;
                }
                PauliString::new(ops)
            })
            .collect()
    }

    pub fn num_qubits(&self) -> usize {
        self.ops.len()
    }

    pub fn ops(&self) -> &[Pauli] {
        &self.ops
    }

    /// Exponent `k` of the `i^k` prefactor.
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn is_identity(&self) -> bool {
        self.ops.iter().all(|&p| p == Pauli::I)
    }

    /// Real sign for Hermitian strings (`phase` 0 or 2).
    pub fn sign(&self) -> Option<i8> {
        match self.phase {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }

    /// Same operators, phase dropped.
    pub fn unsigned(&self) -> PauliString {
        PauliString::new(self.ops.clone())
    }

    pub fn negated(&self) -> PauliString {
        PauliString {
            ops: self.ops.clone(),
            phase: (self.phase + 2) % 4,
        }
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        let anti = self
            .ops
            .iter()
            .zip(&other.ops)
            .filter(|(a, b)| **a != Pauli::I && **b != Pauli::I && a != b)
            .count();
        anti % 2 == 0
    }

    pub fn multiply(&self, other: &PauliString) -> Result<PauliString> {
        if self.num_qubits() != other.num_qubits() {
            return Err(Error::DimensionMismatch {
                expected: self.num_qubits(),
                found: other.num_qubits(),
            });
        }
        let mut phase = self.phase + other.phase;
        let ops = self
            .ops
            .iter()
            .zip(&other.ops)
            .map(|(&a, &b)| {
                let (k, p) = a.mul(b);
                phase += k;
                p
            })
            .collect();
        Ok(PauliString {
            ops,
            phase: phase % 4,
        })
    }

    /// Symplectic `(x | z)` representation.
    pub fn symplectic(&self) -> (Vec<bool>, Vec<bool>) {
        self.ops.iter().map(|p| p.bits()).unzip()
    }

    pub fn matrix<T: Scalar>(&self) -> ComplexMatrix<T> {
        let mut m: ComplexMatrix<T> = DMatrix::from_element(1, 1, cr(T::one()));
        for p in &self.ops {
            m = m.kronecker(&p.matrix::<T>());
        }
        let factor = match self.phase {
            0 => C::new(T::one(), T::zero()),
            1 => C::new(T::zero(), T::one()),
            2 => C::new(-T::one(), T::zero()),
            _ => C::new(T::zero(), -T::one()),
        };
        m * factor
    }

    /// Operator string without sign, e.g. `"XZ"`.
    pub fn ops_string(&self) -> String {
        self.ops.iter().map(|p| p.as_char()).collect()
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.phase {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        };
        write!(f, "{prefix}{}", self.ops_string())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Accepts an optional `+`/`-` sign followed by `[IXYZ]+`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (phase, body) = if let Some(rest) = t.strip_prefix('-') {
            (2, rest)
        } else if let Some(rest) = t.strip_prefix('+') {
            (0, rest)
        } else {
            (0, t)
        };
        if body.is_empty() {
            return Err(Error::MalformedPauli(s.to_string()));
        }
        let ops = body
            .chars()
            .map(|c| Pauli::from_char(c.to_ascii_uppercase()))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::MalformedPauli(s.to_string()))?;
        Ok(PauliString { ops, phase })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::max_abs_diff;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("-YY").to_string(), "-YY");
        assert_eq!(p("+XZ").to_string(), "XZ");
        assert!("XQ".parse::<PauliString>().is_err());
        assert!("".parse::<PauliString>().is_err());
        assert!("-".parse::<PauliString>().is_err());
    }

    #[test]
    fn xx_times_zz_is_minus_yy() {
        let prod = p("XX").multiply(&p("ZZ")).unwrap();
        assert_eq!(prod, p("-YY"));
        let dense = p("XX").matrix::<f64>() * p("ZZ").matrix::<f64>();
        assert!(max_abs_diff(&dense, &prod.matrix::<f64>()) < 1e-15);
    }

    #[test]
    fn products_match_matrices() {
        let all = PauliString::all(2);
        for a in &all {
            for b in &all {
                let prod = a.multiply(b).unwrap();
                let dense = a.matrix::<f64>() * b.matrix::<f64>();
                assert!(max_abs_diff(&dense, &prod.matrix::<f64>()) < 1e-14, "{a} {b}");
                let commute = max_abs_diff(&dense, &(b.matrix::<f64>() * a.matrix::<f64>())) < 1e-14;
                assert_eq!(commute, a.commutes_with(b));
            }
        }
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let all = PauliString::all(2);
        assert_eq!(all.len(), 16);
        assert_eq!(all[0].to_string(), "II");
        assert_eq!(all[1].to_string(), "IX");
        assert_eq!(all[15].to_string(), "ZZ");
    }
}
