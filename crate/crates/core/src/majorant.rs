//! Siegel upper half-space of degree 2 and the majorant `P_Z`.

use num_complex::Complex64;
use thiserror::Error;

use crate::symplectic::SpMatrix;

pub type Mat2 = [[f64; 2]; 2];
pub type Mat4 = [[f64; 4]; 4];
type CMat2 = [[Complex64; 2]; 2];

#[derive(Debug, Error, PartialEq)]
pub enum MajorantError {
    #[error("imaginary part is not positive definite")]
    NotPositive,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("CZ + D is singular")]
    Singular,
    #[error("expected six numbers x11 x12 x22 y11 y12 y22")]
    Parse,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SiegelPoint {
    pub x: Mat2,
    pub y: Mat2,
}

impl SiegelPoint {
    pub fn new(x: Mat2, y: Mat2) -> Result<Self, MajorantError> {
        let sym = |m: &Mat2| (m[0][1] - m[1][0]).abs() <= 1e-12 * (1.0 + m[0][1].abs());
        if !sym(&x) || !sym(&y) {
            return Err(MajorantError::NotSymmetric);
        }
        if !(y[0][0] > 0.0 && det2(&y) > 0.0) {
            return Err(MajorantError::NotPositive);
        }
        Ok(Self { x, y })
    }

    /// `Z = i·I`.
    pub fn i_identity() -> Self {
        Self { x: [[0.0; 2]; 2], y: [[1.0, 0.0], [0.0, 1.0]] }
    }

    /// From `(x11, x12, x22, y11, y12, y22)`.
    pub fn from_six(v: [f64; 6]) -> Result<Self, MajorantError> {
        Self::new([[v[0], v[1]], [v[1], v[2]]], [[v[3], v[4]], [v[4], v[5]]])
    }

    pub fn to_six(&self) -> [f64; 6] {
        [self.x[0][0], self.x[0][1], self.x[1][1], self.y[0][0], self.y[0][1], self.y[1][1]]
    }

    fn z(&self) -> CMat2 {
        std::array::from_fn(|i| std::array::from_fn(|j| Complex64::new(self.x[i][j], self.y[i][j])))
    }

    fn from_z(z: CMat2) -> Result<Self, MajorantError> {
        let x01 = 0.5 * (z[0][1].re + z[1][0].re);
        let y01 = 0.5 * (z[0][1].im + z[1][0].im);
        Self::new([[z[0][0].re, x01], [x01, z[1][1].re]], [[z[0][0].im, y01], [y01, z[1][1].im]])
    }

    pub fn det_y(&self) -> f64 {
        det2(&self.y)
    }
}

impl std::str::FromStr for SiegelPoint {
    type Err = MajorantError;

    fn from_str(s: &str) -> Result<Self, MajorantError> {
        let v: Vec<f64> = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|_| MajorantError::Parse)?;
        let arr: [f64; 6] = v.try_into().map_err(|_| MajorantError::Parse)?;
        Self::from_six(arr)
    }
}

pub fn det2(m: &Mat2) -> f64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

pub fn inv2(m: &Mat2) -> Mat2 {
    let d = det2(m);
    [[m[1][1] / d, -m[0][1] / d], [-m[1][0] / d, m[0][0] / d]]
}

fn mul2(a: &Mat2, b: &Mat2) -> Mat2 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][0] * b[0][j] + a[i][1] * b[1][j]))
}

fn cmul2(a: &CMat2, b: &CMat2) -> CMat2 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][0] * b[0][j] + a[i][1] * b[1][j]))
}

fn cdet2(a: &CMat2) -> Complex64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

fn cinv2(a: &CMat2) -> Option<CMat2> {
    let d = cdet2(a);
    if d.norm() < 1e-300 {
        return None;
    }
    Some([[a[1][1] / d, -a[0][1] / d], [-a[1][0] / d, a[0][0] / d]])
}

fn blocks(m: &Mat4) -> [CMat2; 4] {
    let b = |r: usize, c: usize| -> CMat2 {
        std::array::from_fn(|i| std::array::from_fn(|j| Complex64::new(m[r + i][c + j], 0.0)))
    };
    [b(0, 0), b(0, 2), b(2, 0), b(2, 2)]
}

/// `M⟨Z⟩ = (AZ + B)(CZ + D)^{-1}` for a real 4×4 matrix.
pub fn siegel_action_f64(m: &Mat4, z: &SiegelPoint) -> Result<SiegelPoint, MajorantError> {
    let [a, b, c, d] = blocks(m);
    let zz = z.z();
    let add = |x: CMat2, y: CMat2| -> CMat2 { std::array::from_fn(|i| std::array::from_fn(|j| x[i][j] + y[i][j])) };
    let num = add(cmul2(&a, &zz), b);
    let den = add(cmul2(&c, &zz), d);
    let inv = cinv2(&den).ok_or(MajorantError::Singular)?;
    SiegelPoint::from_z(cmul2(&num, &inv))
}

pub fn siegel_action(m: &SpMatrix, z: &SiegelPoint) -> Result<SiegelPoint, MajorantError> {
    siegel_action_f64(&m.to_f64(), z)
}

/// `|det(CZ + D)|`.
pub fn automorphy_abs(m: &Mat4, z: &SiegelPoint) -> f64 {
    let [_, _, c, d] = blocks(m);
    let zz = z.z();
    let cz = cmul2(&c, &zz);
    let den: CMat2 = std::array::from_fn(|i| std::array::from_fn(|j| cz[i][j] + d[i][j]));
    cdet2(&den).norm()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MajorantForm {
    pub p: Mat4,
}

impl MajorantForm {
    /// `P[λ] = λ^tr P λ`.
    pub fn eval(&self, l: &[f64; 4]) -> f64 {
        quad_form(&self.p, l)
    }
}

pub fn quad_form(p: &Mat4, l: &[f64; 4]) -> f64 {
    let mut acc = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            acc += l[i] * p[i][j] * l[j];
        }
    }
    acc
}

/// `P_Z = [[Y + X Y⁻¹ X, X Y⁻¹], [Y⁻¹ X, Y⁻¹]]`.
pub fn pz_form(z: &SiegelPoint) -> MajorantForm {
    let yi = inv2(&z.y);
    let xyi = mul2(&z.x, &yi);
    let yix = mul2(&yi, &z.x);
    let xyix = mul2(&xyi, &z.x);
    let mut p = [[0.0; 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            p[i][j] = z.y[i][j] + xyix[i][j];
            p[i][j + 2] = xyi[i][j];
            p[i + 2][j] = yix[i][j];
            p[i + 2][j + 2] = yi[i][j];
        }
    }
    MajorantForm { p }
}

/// `W_η⟨Z⟩ = −diag(1, 1/η) Z⁻¹ diag(1, 1/η)`.
pub fn w_eta_action(eta: f64, z: &SiegelPoint) -> SiegelPoint {
    let zi = cinv2(&z.z()).expect("Z is invertible on the upper half-space");
    let s = [1.0, 1.0 / eta];
    let w: CMat2 = std::array::from_fn(|i| std::array::from_fn(|j| -zi[i][j] * s[i] * s[j]));
    SiegelPoint::from_z(w).expect("image lies in the upper half-space")
}

pub fn det4(m: &Mat4) -> f64 {
    let mut a = *m;
    let mut det = 1.0;
    for c in 0..4 {
        let piv = (c..4).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs())).unwrap();
        if a[piv][c] == 0.0 {
            return 0.0;
        }
        if piv != c {
            a.swap(piv, c);
            det = -det;
        }
        det *= a[c][c];
        for r in c + 1..4 {
            let f = a[r][c] / a[c][c];
            for k in c..4 {
                a[r][k] -= f * a[c][k];
            }
        }
    }
    det
}

pub fn inv4(m: &Mat4) -> Mat4 {
    let mut a = *m;
    let mut inv = [[0.0; 4]; 4];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for c in 0..4 {
        let piv = (c..4).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs())).unwrap();
        a.swap(piv, c);
        inv.swap(piv, c);
        let d = a[c][c];
        for k in 0..4 {
            a[c][k] /= d;
            inv[c][k] /= d;
        }
        for r in 0..4 {
            if r != c {
                let f = a[r][c];
                for k in 0..4 {
                    a[r][k] -= f * a[c][k];
                    inv[r][k] -= f * inv[c][k];
                }
            }
        }
    }
    inv
}

pub fn mul4(a: &Mat4, b: &Mat4) -> Mat4 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..4).map(|k| a[i][k] * b[k][j]).sum()))
}

pub fn transpose4(a: &Mat4) -> Mat4 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{make_generator, Generator};

    #[test]
    fn basic_points() {
        let z = SiegelPoint::i_identity();
        let p = pz_form(&z).p;
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(p[i][j], if i == j { 1.0 } else { 0.0 });
            }
        }
        let j = make_generator(&Generator::J).unwrap();
        let jz = siegel_action(&j, &z).unwrap();
        assert!((jz.y[0][0] - 1.0).abs() < 1e-15 && jz.x[0][0].abs() < 1e-15);
        let z2 = SiegelPoint::new([[0.0; 2]; 2], [[2.0, 0.0], [0.0, 3.0]]).unwrap();
        assert!((pz_form(&z2).eval(&[0.0, 0.0, 0.0, 1.0]) - 1.0 / 3.0).abs() < 1e-15);
        let m = make_generator(&Generator::MEta(crate::qfield::rat(1, 2))).unwrap();
        let mz = siegel_action(&m, &z2).unwrap();
        assert!((mz.x[1][1] - 0.5).abs() < 1e-15 && mz.x[0][0].abs() < 1e-15);
    }

    #[test]
    fn parse_six() {
        let z: SiegelPoint = "0.1 0.2 -0.3 1.5 0.25 0.8".parse().unwrap();
        assert_eq!(z.to_six(), [0.1, 0.2, -0.3, 1.5, 0.25, 0.8]);
        assert!("1 2 3".parse::<SiegelPoint>().is_err());
        assert!("0 0 0 1 2 1".parse::<SiegelPoint>().is_err());
    }
}
