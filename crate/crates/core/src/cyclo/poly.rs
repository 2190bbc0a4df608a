use crate::cyclo::CycloNum;

/// Univariate polynomial over `Q(ζ_N)`, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloPoly {
    order: u32,
    coeffs: Vec<CycloNum>,
}

impl CycloPoly {
    pub fn new(order: u32, mut coeffs: Vec<CycloNum>) -> Self {
        while coeffs.last().is_some_and(CycloNum::is_zero) {
            coeffs.pop();
        }
        CycloPoly { order, coeffs }
    }

    pub fn zero(order: u32) -> Self {
        CycloPoly {
            order,
            coeffs: Vec::new(),
        }
    }

    pub fn one(order: u32) -> Self {
        Self::new(order, vec![CycloNum::one(order)])
    }

    /// `x^k`.
    pub fn monomial(order: u32, k: usize) -> Self {
        let mut c = vec![CycloNum::zero(order); k + 1];
        c[k] = CycloNum::one(order);
        Self::new(order, c)
    }

    pub fn coeffs(&self) -> &[CycloNum] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lead) => {
                let inv = lead.inv().expect("nonzero leading coefficient");
                Self::new(self.order, self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &CycloNum::from_integer(self.order, i as i64))
            .collect();
        Self::new(self.order, coeffs)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = CycloNum::zero(self.order);
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&z);
                let b = other.coeffs.get(i).unwrap_or(&z);
                a + b
            })
            .collect();
        Self::new(self.order, coeffs)
    }

    pub fn scale(&self, c: &CycloNum) -> Self {
        Self::new(self.order, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.order);
        }
        let mut out = vec![CycloNum::zero(self.order); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Self::new(self.order, out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        let db = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.coeffs[db].inv().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return (Self::zero(self.order), self.clone());
        }
        let mut quot = vec![CycloNum::zero(self.order); rem.len() - db];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + db] * &lead_inv;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = &rem[i + j] - &(&c * d);
                }
            }
            quot[i] = c;
        }
        rem.truncate(db);
        (Self::new(self.order, quot), Self::new(self.order, rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    /// Monic least common multiple.
    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.order);
        }
        let g = self.gcd(other);
        let (q, _) = self.mul(other).divrem(&g);
        q.monic()
    }

    /// True when the polynomial has no repeated factor over the algebraic closure.
    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }
}
