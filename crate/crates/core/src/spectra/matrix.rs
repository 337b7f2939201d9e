use std::ops::Mul;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A real 2×2 matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2::new(1.0, 0.0, 0.0, 1.0);

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse_sl2(&self) -> Self {
        Self::new(self.d, -self.b, -self.c, self.a)
    }

    /// Divides by `√det`, pulling the determinant back to one.
    pub fn renormalized(&self) -> Self {
        let s = self.det().sqrt();
        Self::new(self.a / s, self.b / s, self.c / s, self.d / s)
    }

    pub fn frobenius(&self) -> f64 {
        (self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d).sqrt()
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

impl Serialize for Mat2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [[self.a, self.b], [self.c, self.d]].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Mat2 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let [[a, b], [c, d]] = <[[f64; 2]; 2]>::deserialize(deserializer)?;
        Ok(Mat2::new(a, b, c, d))
    }
}
