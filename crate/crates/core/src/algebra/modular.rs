use std::fmt;

use super::AlgebraError;

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn check_modulus(modulus: u32) -> Result<(), AlgebraError> {
    if modulus < 2 {
        return Err(AlgebraError::InvalidModulus(modulus));
    }
    Ok(())
}

fn unit_inverse(u: u32, m: u32) -> u32 {
    // moduli are tiny, a scan is fine
    (1..m)
        .find(|&x| (u as u64 * x as u64) % m as u64 == 1)
        .expect("argument is a unit")
}

/// An invertible 2x2 matrix over `Z/m`, row-major.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2 {
    modulus: u32,
    entries: [u32; 4],
}

impl Mat2 {
    pub fn new(modulus: u32, rows: [[i64; 2]; 2]) -> Result<Mat2, AlgebraError> {
        check_modulus(modulus)?;
        let m = modulus as i64;
        let r = |x: i64| x.rem_euclid(m) as u32;
        let mat = Mat2 {
            modulus,
            entries: [r(rows[0][0]), r(rows[0][1]), r(rows[1][0]), r(rows[1][1])],
        };
        let det = mat.determinant();
        if gcd(det, modulus) != 1 {
            return Err(AlgebraError::InvalidMatrix(format!(
                "determinant {det} is not a unit mod {modulus}"
            )));
        }
        Ok(mat)
    }

    pub fn identity(modulus: u32) -> Mat2 {
        Mat2 {
            modulus,
            entries: [1, 0, 0, 1 % modulus],
        }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn rows(&self) -> [[u32; 2]; 2] {
        let e = self.entries;
        [[e[0], e[1]], [e[2], e[3]]]
    }

    pub fn determinant(&self) -> u32 {
        let m = self.modulus as i64;
        let e = self.entries.map(|x| x as i64);
        (e[0] * e[3] - e[1] * e[2]).rem_euclid(m) as u32
    }

    pub fn mul(&self, other: &Mat2) -> Mat2 {
        let m = self.modulus as u64;
        let a = self.entries.map(|x| x as u64);
        let b = other.entries.map(|x| x as u64);
        Mat2 {
            modulus: self.modulus,
            entries: [
                ((a[0] * b[0] + a[1] * b[2]) % m) as u32,
                ((a[0] * b[1] + a[1] * b[3]) % m) as u32,
                ((a[2] * b[0] + a[3] * b[2]) % m) as u32,
                ((a[2] * b[1] + a[3] * b[3]) % m) as u32,
            ],
        }
    }

    pub fn inverse(&self) -> Mat2 {
        let m = self.modulus as u64;
        let d = unit_inverse(self.determinant(), self.modulus) as u64;
        let e = self.entries.map(|x| x as u64);
        let neg = |x: u64| (m - x % m) % m;
        Mat2 {
            modulus: self.modulus,
            entries: [
                (d * e[3]) % m,
                (d * neg(e[1])) % m,
                (d * neg(e[2])) % m,
                (d * e[0]) % m,
            ]
            .map(|x| x as u32),
        }
    }

    pub fn transpose(&self) -> Mat2 {
        let e = self.entries;
        Mat2 {
            modulus: self.modulus,
            entries: [e[0], e[2], e[1], e[3]],
        }
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.entries;
        write!(f, "[[{},{}],[{},{}]]", e[0], e[1], e[2], e[3])
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat2{}mod{}", self, self.modulus)
    }
}

/// An element `(u, v)` of `Z/m^x ⋉ Z/m`.
///
/// Multiplication is `(u, v)(u', v') = (u u', v + u v')`, i.e. the affine map
/// `x ↦ u x + v` composed as `f ∘ g`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemiPair {
    modulus: u32,
    u: u32,
    v: u32,
}

impl SemiPair {
    pub fn new(modulus: u32, u: i64, v: i64) -> Result<SemiPair, AlgebraError> {
        check_modulus(modulus)?;
        let m = modulus as i64;
        let u = u.rem_euclid(m) as u32;
        if gcd(u, modulus) != 1 {
            return Err(AlgebraError::InvalidSemiPair(format!(
                "{u} is not a unit mod {modulus}"
            )));
        }
        Ok(SemiPair {
            modulus,
            u,
            v: v.rem_euclid(m) as u32,
        })
    }

    pub fn identity(modulus: u32) -> SemiPair {
        SemiPair {
            modulus,
            u: 1,
            v: 0,
        }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn unit(&self) -> u32 {
        self.u
    }

    pub fn translation(&self) -> u32 {
        self.v
    }

    pub fn mul(&self, other: &SemiPair) -> SemiPair {
        let m = self.modulus as u64;
        SemiPair {
            modulus: self.modulus,
            u: ((self.u as u64 * other.u as u64) % m) as u32,
            v: ((self.v as u64 + self.u as u64 * other.v as u64) % m) as u32,
        }
    }

    pub fn inverse(&self) -> SemiPair {
        let m = self.modulus as u64;
        let ui = unit_inverse(self.u, self.modulus) as u64;
        SemiPair {
            modulus: self.modulus,
            u: ui as u32,
            v: ((m - (ui * self.v as u64) % m) % m) as u32,
        }
    }
}

impl fmt::Display for SemiPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

impl fmt::Debug for SemiPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SemiPair{}mod{}", self, self.modulus)
    }
}
