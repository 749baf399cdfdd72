//! n-qubit Pauli operators in binary symplectic form.
//!
//! An operator is stored as `i^phase * X^x * Z^z` with `phase` in Z_4. Under
//! this convention `Y = i * X * Z`, so the Hermitian operator written `Y` has
//! phase exponent 1 and the string `-YIZXXY` has phase exponent
//! `2 + 2 = 0`.

use std::fmt;
use std::str::FromStr;

use crate::bits::Bits;
use crate::error::{Error, Result};

/// Single-qubit Pauli kind, in enumeration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PauliKind {
    X,
    Y,
    Z,
}

impl PauliKind {
    pub const ALL: [PauliKind; 3] = [PauliKind::X, PauliKind::Y, PauliKind::Z];

    #[inline]
    pub fn bits(self) -> (bool, bool) {
        match self {
            PauliKind::X => (true, false),
            PauliKind::Y => (true, true),
            PauliKind::Z => (false, true),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    x: Bits,
    z: Bits,
    phase: u8,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        PauliOperator {
            x: Bits::zeros(n),
            z: Bits::zeros(n),
            phase: 0,
        }
    }

    /// Builds `i^phase X^x Z^z`.
    pub fn from_parts(x: Bits, z: Bits, phase: u8) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::QubitCountMismatch {
                expected: x.len(),
                found: z.len(),
            });
        }
        Ok(PauliOperator {
            x,
            z,
            phase: phase % 4,
        })
    }

    /// The Hermitian representative with `+1` sign for the given bit pattern.
    pub fn hermitian(x: Bits, z: Bits) -> Self {
        let phase = (x.and_count(&z) % 4) as u8;
        PauliOperator { x, z, phase }
    }

    /// `kind` acting on qubit `q` of `n`.
    pub fn single(n: usize, q: usize, kind: PauliKind) -> Self {
        let mut x = Bits::zeros(n);
        let mut z = Bits::zeros(n);
        let (bx, bz) = kind.bits();
        x.set(q, bx);
        z.set(q, bz);
        PauliOperator::hermitian(x, z)
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    #[inline]
    pub fn x(&self) -> &Bits {
        &self.x
    }

    #[inline]
    pub fn z(&self) -> &Bits {
        &self.z
    }

    /// Exponent `δ` in `i^δ X^x Z^z`.
    #[inline]
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn with_phase(mut self, phase: u8) -> Self {
        self.phase = phase % 4;
        self
    }

    /// `-P`.
    pub fn negated(mut self) -> Self {
        self.phase = (self.phase + 2) % 4;
        self
    }

    /// Number of non-identity tensor factors.
    pub fn weight(&self) -> usize {
        self.x.or_count(&self.z)
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Number of `Y` factors, i.e. `|x AND z|`.
    pub fn y_count(&self) -> usize {
        self.x.and_count(&self.z)
    }

    /// `P` is Hermitian iff `δ ≡ x·z (mod 2)`.
    pub fn is_hermitian(&self) -> bool {
        (self.phase as usize) % 2 == self.y_count() % 2
    }

    /// Sign relative to the Hermitian representative: `P = i^s * herm(P)`.
    pub fn sign_exponent(&self) -> u8 {
        ((self.phase as usize + 4 - self.y_count() % 4) % 4) as u8
    }

    pub fn same_support_pattern(&self, other: &PauliOperator) -> bool {
        self.x == other.x && self.z == other.z
    }

    fn check_len(&self, other: &PauliOperator) -> Result<()> {
        if self.num_qubits() != other.num_qubits() {
            return Err(Error::QubitCountMismatch {
                expected: self.num_qubits(),
                found: other.num_qubits(),
            });
        }
        Ok(())
    }

    /// Operator product `self * other`.
    pub fn multiply(&self, other: &PauliOperator) -> Result<PauliOperator> {
        self.check_len(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// Product without the length check; callers guarantee equal `n`.
    pub(crate) fn mul_unchecked(&self, other: &PauliOperator) -> PauliOperator {
        // Z^{z1} X^{x2} = (-1)^{z1.x2} X^{x2} Z^{z1}
        let swap = if self.z.dot(&other.x) { 2 } else { 0 };
        PauliOperator {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
            phase: (self.phase + other.phase + swap) % 4,
        }
    }

    /// In-place right multiplication.
    pub(crate) fn mul_assign_unchecked(&mut self, other: &PauliOperator) {
        let swap = if self.z.dot(&other.x) { 2 } else { 0 };
        self.x.xor_assign(&other.x);
        self.z.xor_assign(&other.z);
        self.phase = (self.phase + other.phase + swap) % 4;
    }

    /// Symplectic form: `true` when the operators anticommute.
    #[inline]
    pub(crate) fn anticommutes_unchecked(&self, other: &PauliOperator) -> bool {
        self.x.dot(&other.z) ^ self.z.dot(&other.x)
    }

    pub fn commutes(&self, other: &PauliOperator) -> Result<bool> {
        self.check_len(other)?;
        Ok(!self.anticommutes_unchecked(other))
    }

    /// Factor on qubit `q`, `None` for identity.
    pub fn kind_at(&self, q: usize) -> Option<PauliKind> {
        match (self.x.get(q), self.z.get(q)) {
            (false, false) => None,
            (true, false) => Some(PauliKind::X),
            (true, true) => Some(PauliKind::Y),
            (false, true) => Some(PauliKind::Z),
        }
    }

    /// Tensor product `self ⊗ other`.
    pub fn tensor(&self, other: &PauliOperator) -> PauliOperator {
        PauliOperator {
            x: self.x.concat(&other.x),
            z: self.z.concat(&other.z),
            phase: (self.phase + other.phase) % 4,
        }
    }

    /// Places this operator on `positions` of an `n`-qubit register.
    pub fn embed(&self, n: usize, positions: &[usize]) -> PauliOperator {
        debug_assert_eq!(positions.len(), self.num_qubits());
        let mut x = Bits::zeros(n);
        let mut z = Bits::zeros(n);
        for (i, &p) in positions.iter().enumerate() {
            x.set(p, self.x.get(i));
            z.set(p, self.z.get(i));
        }
        PauliOperator {
            x,
            z,
            phase: self.phase,
        }
    }

    /// Body characters without sign, e.g. `XIZY`.
    pub fn body_string(&self) -> String {
        (0..self.num_qubits())
            .map(|q| match self.kind_at(q) {
                None => 'I',
                Some(PauliKind::X) => 'X',
                Some(PauliKind::Y) => 'Y',
                Some(PauliKind::Z) => 'Z',
            })
            .collect()
    }
}

/// Parses `sign? body`; see the module docs for the phase convention.
pub fn pauli_from_string(s: &str) -> Result<PauliOperator> {
    s.parse()
}

impl FromStr for PauliOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (sign, body, offset) = if let Some(rest) = s.strip_prefix("-i") {
            (3u8, rest, 2)
        } else if let Some(rest) = s.strip_prefix("+i") {
            (1, rest, 2)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest, 1)
        } else if let Some(rest) = s.strip_prefix('+') {
            (0, rest, 1)
        } else if let Some(rest) = s.strip_prefix('i') {
            (1, rest, 1)
        } else {
            (0, s, 0)
        };
        if body.is_empty() {
            return Err(Error::EmptyPauli);
        }
        let n = body.chars().count();
        let mut x = Bits::zeros(n);
        let mut z = Bits::zeros(n);
        for (q, ch) in body.chars().enumerate() {
            let (bx, bz) = match ch {
                'I' => (false, false),
                'X' => (true, false),
                'Y' => (true, true),
                'Z' => (false, true),
                _ => {
                    return Err(Error::InvalidPauliChar {
                        ch,
                        pos: q + offset,
                    })
                }
            };
            x.set(q, bx);
            z.set(q, bz);
        }
        let y = x.and_count(&z);
        let phase = ((sign as usize + y) % 4) as u8;
        Ok(PauliOperator { x, z, phase })
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.sign_exponent() {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        };
        write!(f, "{sign}{}", self.body_string())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

/// All phase-zero Pauli operators of weight exactly `w` on `n` qubits.
///
/// Order: qubit positions increase left to right and the enumeration is
/// depth-first, i.e. `(p1, k1)` outermost, then `(p2, k2)` with `p2 > p1`,
/// and so on, kinds in `X, Y, Z` order. Yields `3^w * C(n, w)` operators.
pub fn enumerate_paulis(n: usize, w: usize) -> Result<PauliEnumerator> {
    if w > n {
        return Err(Error::WeightOutOfRange { n, w });
    }
    Ok(PauliEnumerator::new(n, w))
}

pub struct PauliEnumerator {
    n: usize,
    positions: Vec<usize>,
    kinds: Vec<u8>,
    done: bool,
}

impl PauliEnumerator {
    fn new(n: usize, w: usize) -> Self {
        PauliEnumerator {
            n,
            positions: (0..w).collect(),
            kinds: vec![0; w],
            done: false,
        }
    }

    fn current(&self) -> PauliOperator {
        let mut x = Bits::zeros(self.n);
        let mut z = Bits::zeros(self.n);
        for (&p, &k) in self.positions.iter().zip(&self.kinds) {
            let (bx, bz) = PauliKind::ALL[k as usize].bits();
            x.set(p, bx);
            z.set(p, bz);
        }
        PauliOperator { x, z, phase: 0 }
    }

    fn reset_after(&mut self, level: usize) {
        for l in level + 1..self.positions.len() {
            self.positions[l] = self.positions[l - 1] + 1;
            self.kinds[l] = 0;
        }
    }

    fn advance(&mut self) {
        let w = self.positions.len();
        // Digits, slowest first: p0, k0, p1, k1, ..., p_{w-1}, k_{w-1}.
        for level in (0..w).rev() {
            if self.kinds[level] < 2 {
                self.kinds[level] += 1;
                self.reset_after(level);
                return;
            }
            let max_pos = self.n - (w - level);
            if self.positions[level] < max_pos {
                self.positions[level] += 1;
                self.kinds[level] = 0;
                self.reset_after(level);
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for PauliEnumerator {
    type Item = PauliOperator;

    fn next(&mut self) -> Option<PauliOperator> {
        if self.done {
            return None;
        }
        let out = self.current();
        self.advance();
        Some(out)
    }
}

/// `3^w * C(n, w)`, saturating.
pub fn pauli_count(n: usize, w: usize) -> u128 {
    if w > n {
        return 0;
    }
    let mut c: u128 = 1;
    for i in 0..w {
        c = c.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    c.saturating_mul(3u128.saturating_pow(w as u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn parses_weight_one_error() {
        let e = p("IIIIXI");
        assert_eq!(e.x().to_string(), "000010");
        assert_eq!(e.z().to_string(), "000000");
        assert_eq!(e.weight(), 1);
        assert_eq!(e.phase(), 0);
    }

    #[test]
    fn identity_string() {
        let e = p("IIIIII");
        assert!(e.is_identity_up_to_phase());
        assert_eq!(e.weight(), 0);
        assert_eq!(e, PauliOperator::identity(6));
    }

    #[test]
    fn signed_string_with_two_ys() {
        // -1 contributes i^2, each Y contributes i^1: total i^4 = 1.
        let e = p("-YIZXXY");
        assert_eq!(e.x().to_string(), "100111");
        assert_eq!(e.z().to_string(), "101001");
        assert_eq!(e.phase(), 0);
        assert_eq!(e.to_string(), "-YIZXXY");
    }

    #[test]
    fn sign_prefixes_round_trip() {
        for s in ["XYZ", "-XYZ", "iXXZ", "-iZZI", "Y"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p("+XZ").to_string(), "XZ");
    }

    #[test]
    fn parse_errors() {
        assert_eq!("".parse::<PauliOperator>(), Err(Error::EmptyPauli));
        assert_eq!("-".parse::<PauliOperator>(), Err(Error::EmptyPauli));
        assert_eq!(
            "XQZ".parse::<PauliOperator>(),
            Err(Error::InvalidPauliChar { ch: 'Q', pos: 1 })
        );
    }

    #[test]
    fn x_squared_is_identity() {
        let x = p("X");
        assert_eq!(x.multiply(&x).unwrap(), PauliOperator::identity(1));
    }

    #[test]
    fn zx_and_xz_differ_by_sign() {
        let x = p("X");
        let z = p("Z");
        let zx = z.multiply(&x).unwrap();
        let xz = x.multiply(&z).unwrap();
        // ZX = iY, XZ = -iY
        assert_eq!(zx.to_string(), "iY");
        assert_eq!(xz.to_string(), "-iY");
        assert_eq!(zx, xz.clone().negated());
    }

    #[test]
    fn commutation_examples() {
        assert!(!p("X").commutes(&p("Z")).unwrap());
        assert!(p("XXXXX").commutes(&p("ZZZZI")).unwrap());
        assert!(p("XY").commutes(&p("IIZ")).is_err());
    }

    #[test]
    fn weight_examples() {
        assert_eq!(p("ZZIIIIIIXII").weight(), 3);
    }

    #[test]
    fn enumeration_counts() {
        let ops: Vec<_> = enumerate_paulis(1, 1).unwrap().collect();
        assert_eq!(ops, vec![p("X"), p("Y").with_phase(0), p("Z")]);
        assert_eq!(enumerate_paulis(6, 2).unwrap().count(), 135);
        assert_eq!(enumerate_paulis(43, 2).unwrap().count(), 8127);
        assert_eq!(enumerate_paulis(3, 0).unwrap().count(), 1);
        assert!(enumerate_paulis(3, 4).is_err());
    }

    #[test]
    fn enumeration_is_depth_first() {
        let ops: Vec<String> = enumerate_paulis(3, 2)
            .unwrap()
            .map(|o| o.body_string())
            .take(7)
            .collect();
        assert_eq!(
            ops,
            ["XXI", "XYI", "XZI", "XIX", "XIY", "XIZ", "YXI"]
        );
    }

    #[test]
    fn enumeration_counts_small_grid() {
        for n in 0..=10 {
            for w in 0..=n {
                let ops: Vec<_> = enumerate_paulis(n, w).unwrap().collect();
                assert_eq!(ops.len() as u128, pauli_count(n, w), "n={n} w={w}");
                assert!(ops.iter().all(|o| o.weight() == w && o.phase() == 0));
                let distinct: HashSet<_> = ops.iter().collect();
                assert_eq!(distinct.len(), ops.len());
            }
        }
    }

    fn arb_pauli(n: usize) -> impl Strategy<Value = PauliOperator> {
        (
            proptest::collection::vec(any::<bool>(), n),
            proptest::collection::vec(any::<bool>(), n),
            0u8..4,
        )
            .prop_map(|(x, z, ph)| {
                PauliOperator::from_parts(Bits::from_bools(&x), Bits::from_bools(&z), ph).unwrap()
            })
    }

    proptest! {
        #[test]
        fn multiply_is_associative(a in arb_pauli(9), b in arb_pauli(9), c in arb_pauli(9)) {
            let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
            let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn self_product_is_scalar(a in arb_pauli(70)) {
            prop_assert!(a.multiply(&a).unwrap().is_identity_up_to_phase());
        }

        #[test]
        fn string_round_trip(a in arb_pauli(12)) {
            let back: PauliOperator = a.to_string().parse().unwrap();
            prop_assert_eq!(back, a);
        }

        #[test]
        fn commutes_is_symmetric(a in arb_pauli(8), b in arb_pauli(8)) {
            prop_assert_eq!(a.commutes(&b).unwrap(), b.commutes(&a).unwrap());
            prop_assert!(a.commutes(&PauliOperator::identity(8)).unwrap());
        }
    }
}
