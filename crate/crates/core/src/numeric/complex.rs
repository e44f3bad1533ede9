use rug::Float;

/// Complex number with MPFR real and imaginary parts of equal precision.
#[derive(Debug, Clone, PartialEq)]
pub struct Complex {
    pub re: Float,
    pub im: Float,
}

impl Complex {
    pub fn new(re: Float, im: Float) -> Self {
        Complex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Complex::new(Float::new(prec), Float::new(prec))
    }

    pub fn real(re: Float) -> Self {
        let prec = re.prec();
        Complex::new(re, Float::new(prec))
    }

    /// `exp(iθ)`
    pub fn from_angle(theta: &Float) -> Self {
        let prec = theta.prec();
        let (s, c) = theta.clone().sin_cos(Float::new(prec));
        Complex::new(c, s)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn add(&self, o: &Self) -> Self {
        Complex::new(Float::with_val(self.prec(), &self.re + &o.re), Float::with_val(self.prec(), &self.im + &o.im))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Complex::new(Float::with_val(self.prec(), &self.re - &o.re), Float::with_val(self.prec(), &self.im - &o.im))
    }

    pub fn neg(&self) -> Self {
        Complex::new(-self.re.clone(), -self.im.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.prec();
        let re = Float::with_val(p, &self.re * &o.re) - Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.re * &o.im) + Float::with_val(p, &self.im * &o.re);
        Complex::new(re, im)
    }

    pub fn scale(&self, s: &Float) -> Self {
        Complex::new(Float::with_val(self.prec(), &self.re * s), Float::with_val(self.prec(), &self.im * s))
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    pub fn abs(&self) -> Float {
        self.norm_sqr().sqrt()
    }

    pub fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }

    pub fn div(&self, o: &Self) -> Self {
        let d = o.norm_sqr();
        let n = self.mul(&o.conj());
        Complex::new(n.re / &d, n.im / &d)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_unity_multiply() {
        let p = 200;
        let pi = Float::with_val(p, rug::float::Constant::Pi);
        let z = Complex::from_angle(&(pi.clone() * 2u32 / 5u32));
        let mut acc = Complex::real(Float::with_val(p, 1));
        for _ in 0..5 {
            acc = acc.mul(&z);
        }
        let err = acc.sub(&Complex::real(Float::with_val(p, 1))).abs();
        assert!(err < 1e-55);
        let q = acc.div(&z).mul(&z);
        assert!(q.sub(&acc).abs() < 1e-55);
    }
}
