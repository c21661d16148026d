use std::fmt;

use serde::{Deserialize, Serialize};

use crate::modular;
use crate::{Error, Result};

/// A generalized Pauli operator `i^phase X^x Z^z` on `n` qudits.
///
/// Within each qudit the X factor stands to the left of the Z factor. The
/// phase is tracked in `Z_4` for qubits; for `q > 2` only the exponents are
/// kept and the phase stays 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOp {
    q: u64,
    x: Vec<u64>,
    z: Vec<u64>,
    phase: u8,
}

impl PauliOp {
    pub fn new(q: u64, x: Vec<u64>, z: Vec<u64>, phase: u8) -> Result<Self> {
        modular::check_modulus(q)?;
        if x.len() != z.len() {
            return Err(Error::DimensionMismatch(format!("x has {} entries, z has {}", x.len(), z.len())));
        }
        let x = x.into_iter().map(|v| v % q).collect();
        let z = z.into_iter().map(|v| v % q).collect();
        let phase = if q == 2 { phase % 4 } else { 0 };
        Ok(Self { q, x, z, phase })
    }

    pub fn identity(n: usize, q: u64) -> Self {
        Self { q, x: vec![0; n], z: vec![0; n], phase: 0 }
    }

    pub fn x_type(q: u64, x: Vec<u64>) -> Result<Self> {
        let n = x.len();
        Self::new(q, x, vec![0; n], 0)
    }

    pub fn z_type(q: u64, z: Vec<u64>) -> Result<Self> {
        let n = z.len();
        Self::new(q, vec![0; n], z, 0)
    }

    /// Single-qudit `X^a Z^b` at `site`.
    pub fn single(n: usize, q: u64, site: usize, a: u64, b: u64) -> Self {
        let mut p = Self::identity(n, q);
        p.x[site] = a % q;
        p.z[site] = b % q;
        p
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn x(&self) -> &[u64] {
        &self.x
    }

    pub fn z(&self) -> &[u64] {
        &self.z
    }

    /// Power of `i` in front of `X^x Z^z`.
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn with_phase(mut self, phase: u8) -> Self {
        if self.q == 2 {
            self.phase = phase % 4;
        }
        self
    }

    pub fn negate(self) -> Self {
        let p = self.phase + 2;
        self.with_phase(p)
    }

    fn check_same_space(&self, other: &PauliOp) -> Result<()> {
        if self.q != other.q || self.n() != other.n() {
            return Err(Error::DimensionMismatch(format!(
                "operators on {} qudits mod {} and {} qudits mod {}",
                self.n(),
                self.q,
                other.n(),
                other.q
            )));
        }
        Ok(())
    }

    /// `self * other`.
    pub fn mul(&self, other: &PauliOp) -> Result<PauliOp> {
        self.check_same_space(other)?;
        let q = self.q;
        let x: Vec<u64> = self.x.iter().zip(&other.x).map(|(a, b)| modular::add(*a, *b, q)).collect();
        let z: Vec<u64> = self.z.iter().zip(&other.z).map(|(a, b)| modular::add(*a, *b, q)).collect();
        let phase = if q == 2 {
            // Z^z1 X^x2 = (-1)^{z1.x2} X^x2 Z^z1
            let swaps: u64 = self.z.iter().zip(&other.x).map(|(a, b)| a & b).sum();
            ((self.phase as u64 + other.phase as u64 + 2 * swaps) % 4) as u8
        } else {
            0
        };
        Ok(PauliOp { q, x, z, phase })
    }

    /// Symplectic form `<x1, z2> - <z1, x2> mod q`; zero iff they commute.
    pub fn symplectic(&self, other: &PauliOp) -> Result<u64> {
        self.check_same_space(other)?;
        let q = self.q;
        let mut s = 0;
        for k in 0..self.n() {
            s = modular::add(s, modular::mul(self.x[k], other.z[k], q), q);
            s = modular::sub(s, modular::mul(self.z[k], other.x[k], q), q);
        }
        Ok(s)
    }

    pub fn commutes(&self, other: &PauliOp) -> Result<bool> {
        Ok(self.symplectic(other)? == 0)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.n()).filter(|&k| self.x[k] != 0 || self.z[k] != 0).collect()
    }

    pub fn weight(&self) -> usize {
        self.support().len()
    }

    pub fn is_identity(&self) -> bool {
        self.phase == 0 && self.x.iter().chain(&self.z).all(|&v| v == 0)
    }

    /// Identity up to an overall phase.
    pub fn is_scalar(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&v| v == 0)
    }

    pub fn is_z_type(&self) -> bool {
        self.x.iter().all(|&v| v == 0)
    }

    /// For qubits: the operator equals its adjoint.
    pub fn is_hermitian(&self) -> bool {
        let xz: u64 = self.x.iter().zip(&self.z).map(|(a, b)| a & b).sum();
        (self.phase as u64 % 2) == xz % 2
    }
}

impl fmt::Debug for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = ["+", "+i", "-", "-i"][self.phase as usize];
        write!(f, "{sign}")?;
        for k in 0..self.n() {
            let c = match (self.x[k], self.z[k]) {
                (0, 0) => "I".to_string(),
                (a, 0) if self.q == 2 && a == 1 => "X".into(),
                (0, b) if self.q == 2 && b == 1 => "Z".into(),
                (1, 1) if self.q == 2 => "(XZ)".into(),
                (a, b) => format!("(X{a}Z{b})"),
            };
            f.write_str(&c)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PauliJson {
    q: u64,
    n: usize,
    x: Vec<(usize, u64)>,
    z: Vec<(usize, u64)>,
    phase: u8,
}

impl Serialize for PauliOp {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let sparse = |v: &[u64]| v.iter().enumerate().filter(|e| *e.1 != 0).map(|(i, &e)| (i, e)).collect();
        PauliJson { q: self.q, n: self.n(), x: sparse(&self.x), z: sparse(&self.z), phase: self.phase }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PauliOp {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PauliJson::deserialize(d)?;
        let dense = |v: &[(usize, u64)]| -> std::result::Result<Vec<u64>, D::Error> {
            let mut out = vec![0; j.n];
            for &(i, e) in v {
                *out.get_mut(i).ok_or_else(|| serde::de::Error::custom("index out of range"))? = e;
            }
            Ok(out)
        };
        PauliOp::new(j.q, dense(&j.x)?, dense(&j.z)?, j.phase).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_qubit_relations() {
        let x = PauliOp::single(1, 2, 0, 1, 0);
        let z = PauliOp::single(1, 2, 0, 0, 1);
        // Z X = -X Z
        let zx = z.mul(&x).unwrap();
        let xz = x.mul(&z).unwrap();
        assert_eq!(zx, xz.clone().negate());
        assert!(!x.commutes(&z).unwrap());
        assert!(!xz.is_hermitian());
        assert!(xz.with_phase(1).is_hermitian());
        assert!(x.mul(&x).unwrap().is_identity());
    }

    #[test]
    fn qutrit_commutation() {
        let a = PauliOp::new(3, vec![1, 2], vec![0, 0], 0).unwrap();
        let b = PauliOp::new(3, vec![0, 0], vec![1, 1], 0).unwrap();
        // 1*1 + 2*1 = 3 = 0 mod 3
        assert!(a.commutes(&b).unwrap());
        let c = PauliOp::new(3, vec![0, 0], vec![1, 0], 0).unwrap();
        assert_eq!(a.symplectic(&c).unwrap(), 1);
        assert_eq!(a.mul(&a).unwrap().x(), &[2, 1]);
    }

    #[test]
    fn json_round_trip() {
        let p = PauliOp::new(2, vec![1, 0, 1], vec![0, 1, 1], 3).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"q":2,"n":3,"x":[[0,1],[2,1]],"z":[[1,1],[2,1]],"phase":3}"#);
        assert_eq!(serde_json::from_str::<PauliOp>(&s).unwrap(), p);
    }

    fn qubit_op(n: usize) -> impl Strategy<Value = PauliOp> {
        (prop::collection::vec(0u64..2, n), prop::collection::vec(0u64..2, n), 0u8..4)
            .prop_map(|(x, z, p)| PauliOp::new(2, x, z, p).unwrap())
    }

    proptest! {
        #[test]
        fn multiplication_is_associative(a in qubit_op(5), b in qubit_op(5), c in qubit_op(5)) {
            let left = a.mul(&b).unwrap().mul(&c).unwrap();
            let right = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn commutation_matches_products(a in qubit_op(6), b in qubit_op(6)) {
            let ab = a.mul(&b).unwrap();
            let ba = b.mul(&a).unwrap();
            if a.commutes(&b).unwrap() {
                prop_assert_eq!(ab, ba);
            } else {
                prop_assert_eq!(ab, ba.negate());
            }
        }
    }
}
