use super::{cr, identity, swap_operator, ComplexMatrix, ComplexVector, DensityMatrix, PureState};
use crate::error::{Error, Result};
use crate::scalar::{Scalar, C};

/// Named constructors for the targets used throughout the examples.
#[derive(Debug, Clone, PartialEq)]
pub enum NamedState<T: Scalar> {
    Ghz(usize),
    W(usize),
    /// Linear cluster state with optional per-qubit 2x2 unitaries applied
    /// after the entangling layer.
    Cluster {
        n: usize,
        rotations: Option<Vec<ComplexMatrix<T>>>,
    },
    /// Two-qubit Werner state.
    Werner(f64),
    Basis { index: usize, dim: usize },
}

/// Result of [`named_state`]: pure targets stay as vectors.
#[derive(Debug, Clone, PartialEq)]
pub enum StateValue<T: Scalar> {
    Pure(PureState<T>),
    Mixed(DensityMatrix<T>),
}

impl<T: Scalar> StateValue<T> {
    pub fn density(&self) -> DensityMatrix<T> {
        match self {
            StateValue::Pure(p) => p.density(),
            StateValue::Mixed(m) => m.clone(),
        }
    }
}

pub fn named_state<T: Scalar>(spec: &NamedState<T>) -> Result<StateValue<T>> {
    match spec {
        NamedState::Ghz(n) => ghz_state(*n).map(StateValue::Pure),
        NamedState::W(n) => w_state(*n).map(StateValue::Pure),
        NamedState::Cluster { n, rotations } => {
            cluster_state(*n, rotations.as_deref()).map(StateValue::Pure)
        }
        NamedState::Werner(p) => werner_state(T::lit(*p)).map(StateValue::Mixed),
        NamedState::Basis { index, dim } => PureState::basis(*index, *dim).map(StateValue::Pure),
    }
}

fn check_qubits(n: usize) -> Result<usize> {
    if n < 1 {
        return Err(Error::InvalidParameter("need at least one qubit".into()));
    }
    if n > 10 {
        return Err(Error::InvalidParameter(format!("{n} qubits exceeds the dense limit of 10")));
    }
    Ok(1 << n)
}

/// `(|0...0> + |1...1>) / sqrt(2)`.
pub fn ghz_state<T: Scalar>(n: usize) -> Result<PureState<T>> {
    let d = check_qubits(n)?;
    let a = cr(T::one() / T::lit(2.0).sqrt());
    let mut v = ComplexVector::zeros(d);
    v[0] = a;
    v[d - 1] = a;
    PureState::normalized(v)
}

/// Uniform superposition of the `n` single-excitation basis states.
pub fn w_state<T: Scalar>(n: usize) -> Result<PureState<T>> {
    let d = check_qubits(n)?;
    let a = cr(T::one() / T::from_usize_lossy(n).sqrt());
    let mut v = ComplexVector::zeros(d);
    for q in 0..n {
        v[1 << q] = a;
    }
    PureState::normalized(v)
}

/// Controlled-Z between neighbours applied to `|+>^n`, then the optional
/// local unitaries (one per qubit, leftmost first).
pub fn cluster_state<T: Scalar>(
    n: usize,
    rotations: Option<&[ComplexMatrix<T>]>,
) -> Result<PureState<T>> {
    let d = check_qubits(n)?;
    let amp = T::one() / T::from_usize_lossy(d).sqrt();
    let mut v = ComplexVector::from_fn(d, |x, _| {
        // bit for qubit q (leftmost = most significant)
        let bit = |q: usize| (x >> (n - 1 - q)) & 1;
        let parity = (0..n.saturating_sub(1)).map(|q| bit(q) & bit(q + 1)).sum::<usize>() % 2;
        if parity == 1 {
            cr(-amp)
        } else {
            cr(amp)
        }
    });
    if let Some(rot) = rotations {
        if rot.len() != n {
            return Err(Error::InvalidParameter(format!(
                "expected {n} local rotations, got {}",
                rot.len()
            )));
        }
        let mut u: ComplexMatrix<T> = ComplexMatrix::from_element(1, 1, cr(T::one()));
        for (q, r) in rot.iter().enumerate() {
            if r.nrows() != 2 || r.ncols() != 2 {
                return Err(Error::InvalidParameter(format!("rotation {q} is not 2x2")));
            }
            let defect = super::max_abs_diff(&(r.adjoint() * r), &identity(2));
            if defect > 1e-9 {
                return Err(Error::InvalidParameter(format!("rotation {q} is not unitary")));
            }
            u = u.kronecker(r);
        }
        v = u * v;
    }
    PureState::normalized(v)
}

/// `p (I + SWAP) / (d (d + 1)) + (1 - p) (I - SWAP) / (d (d - 1))` with `d = 2`.
pub fn werner_state<T: Scalar>(p: T) -> Result<DensityMatrix<T>> {
    let pf = p.as_f64();
    if !(0.0..=1.0).contains(&pf) {
        return Err(Error::InvalidParameter(format!("Werner parameter {pf} outside [0, 1]")));
    }
    let d = T::lit(2.0);
    let id = identity::<T>(4);
    let swap = swap_operator::<T>(2);
    let sym = (&id + &swap) * C::new(p / (d * (d + T::one())), T::zero());
    let anti = (&id - &swap) * C::new((T::one() - p) / (d * (d - T::one())), T::zero());
    DensityMatrix::new(sym + anti)
}

impl<T: Scalar> std::str::FromStr for NamedState<T> {
    type Err = Error;

    /// Parses `ghz(n)`, `w(n)`, `cluster(n)`, `werner(p)`, `basis(index,dim)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        let open = t.find('(').ok_or_else(|| Error::UnknownState(s.into()))?;
        if !t.ends_with(')') {
            return Err(Error::UnknownState(s.into()));
        }
        let name = &t[..open];
        let args: Vec<&str> = t[open + 1..t.len() - 1].split(',').map(str::trim).collect();
        let int = |i: usize| -> Result<usize> {
            args.get(i)
                .and_then(|a| a.parse().ok())
                .ok_or_else(|| Error::UnknownState(s.into()))
        };
        match (name, args.len()) {
            ("ghz", 1) => Ok(NamedState::Ghz(int(0)?)),
            ("w", 1) => Ok(NamedState::W(int(0)?)),
            ("cluster", 1) => Ok(NamedState::Cluster {
                n: int(0)?,
                rotations: None,
            }),
            ("werner", 1) => args[0]
                .parse()
                .map(NamedState::Werner)
                .map_err(|_| Error::UnknownState(s.into())),
            ("basis", 2) => Ok(NamedState::Basis {
                index: int(0)?,
                dim: int(1)?,
            }),
            _ => Err(Error::UnknownState(s.into())),
        }
    }
}
