//! Fixed 2x2 real algebra shared by the transfer-matrix and chiral code.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2(pub [f64; 2]);

impl Vec2 {
    pub const ZERO: Vec2 = Vec2([0.0, 0.0]);

    pub fn new(a: f64, b: f64) -> Self {
        Vec2([a, b])
    }

    pub fn x(&self) -> f64 {
        self.0[0]
    }

    pub fn y(&self) -> f64 {
        self.0[1]
    }

    pub fn norm(&self) -> f64 {
        self.x().hypot(self.y())
    }

    pub fn dot(&self, other: &Vec2) -> f64 {
        self.x() * other.x() + self.y() * other.y()
    }

    pub fn scale(&self, s: f64) -> Vec2 {
        Vec2([self.x() * s, self.y() * s])
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2([self.x() + o.x(), self.y() + o.y()])
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2([self.x() - o.x(), self.y() - o.y()])
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2([-self.x(), -self.y()])
    }
}

/// Row-major 2x2 matrix.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Mat2(pub [[f64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[1.0, 0.0], [0.0, 1.0]]);

    /// The quarter-turn generator `[[0, 1], [-1, 0]]`.
    pub const R: Mat2 = Mat2([[0.0, 1.0], [-1.0, 0.0]]);

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    /// Counter-clockwise rotation `[[cos, -sin], [sin, cos]]`.
    pub fn rotation(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Mat2([[c, -s], [s, c]])
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn transpose(&self) -> Mat2 {
        let m = &self.0;
        Mat2([[m[0][0], m[1][0]], [m[0][1], m[1][1]]])
    }

    pub fn scale(&self, s: f64) -> Mat2 {
        let m = &self.0;
        Mat2([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    pub fn apply(&self, v: Vec2) -> Vec2 {
        let m = &self.0;
        Vec2([
            m[0][0] * v.x() + m[0][1] * v.y(),
            m[1][0] * v.x() + m[1][1] * v.y(),
        ])
    }

    /// Largest absolute entry difference.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).abs());
            }
        }
        worst
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let a = &self.0;
        let b = &o.0;
        Mat2([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }
}

impl Mul<Vec2> for Mat2 {
    type Output = Vec2;
    fn mul(self, v: Vec2) -> Vec2 {
        self.apply(v)
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &o.0);
        Mat2([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        self + o.scale(-1.0)
    }
}
