//! Root and weight arithmetic for sl(n+1).
//!
//! Weights are stored in the fundamental-weight basis, so the Cartan pairing
//! with a coroot is a coordinate read. The epsilon basis (with
//! eps_1 + ... + eps_{n+1} = 0) is available as a view for the tableau side.

use crate::error::{Error, Result};
use num::{BigInt, One, Zero};

/// A root datum of rank n. Only type A_n is constructed here, but the Cartan
/// matrix is kept general so the crystal formulas stay type-generic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    pub n: usize,
    pub cartan: Vec<Vec<i64>>,
}

impl RootDatum {
    /// Type A_n: sl(n+1). Vertices are 1..=n.
    pub fn type_a(n: usize) -> Self {
        let cartan = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            2
                        } else if i.abs_diff(j) == 1 {
                            -1
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        RootDatum { n, cartan }
    }

    pub fn check_vertex(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            return Err(Error::domain(format!(
                "vertex index {} out of range 1..={}",
                i, self.n
            )));
        }
        Ok(())
    }
}

/// Integer weight in the fundamental-weight basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weight {
    pub coords: Vec<i64>,
}

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight {
            coords: vec![0; n],
        }
    }

    pub fn fundamental(d: &RootDatum, i: usize) -> Result<Self> {
        d.check_vertex(i)?;
        let mut w = Weight::zero(d.n);
        w.coords[i - 1] = 1;
        Ok(w)
    }

    /// The simple root alpha_j, expressed in the omega basis (a Cartan
    /// matrix column).
    pub fn simple_root(d: &RootDatum, j: usize) -> Result<Self> {
        d.check_vertex(j)?;
        Ok(Weight {
            coords: (0..d.n).map(|i| d.cartan[i][j - 1]).collect(),
        })
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn is_dominant(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }

    /// Epsilon-basis coordinates of length n+1, normalized so the last entry
    /// is zero. Inverse of [`Weight::from_eps`] up to adding a multiple of
    /// (1,...,1).
    pub fn to_eps(&self) -> Vec<i64> {
        let n = self.coords.len();
        let mut eps = vec![0i64; n + 1];
        for k in (0..n).rev() {
            eps[k] = eps[k + 1] + self.coords[k];
        }
        eps
    }

    pub fn from_eps(eps: &[i64]) -> Weight {
        let n = eps.len() - 1;
        Weight {
            coords: (0..n).map(|k| eps[k] - eps[k + 1]).collect(),
        }
    }
}

/// Cartan pairing <h_i, w>.
pub fn pairing(d: &RootDatum, i: usize, w: &Weight) -> Result<i64> {
    d.check_vertex(i)?;
    Ok(w.coords[i - 1])
}

/// Partition attached to a dominant weight: lambda_k = w_k + ... + w_n.
pub fn partition_of_weight(d: &RootDatum, w: &Weight) -> Result<Vec<usize>> {
    if !w.is_dominant() {
        return Err(Error::domain("weight is not dominant"));
    }
    let mut lambda = vec![0usize; d.n];
    let mut acc = 0i64;
    for k in (0..d.n).rev() {
        acc += w.coords[k];
        lambda[k] = acc as usize;
    }
    Ok(lambda)
}

/// Dimension of the irreducible highest-weight module, as an exact integer:
/// the product over 1 <= i < j <= n+1 of (lambda_i - lambda_j + j - i)/(j - i)
/// with lambda padded by a trailing zero.
pub fn weyl_dim(d: &RootDatum, w: &Weight) -> Result<BigInt> {
    let lambda = partition_of_weight(d, w)?;
    let mut padded: Vec<i64> = lambda.iter().map(|&x| x as i64).collect();
    padded.push(0);
    let m = padded.len();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..m {
        for j in i + 1..m {
            num *= BigInt::from(padded[i] - padded[j] + (j as i64 - i as i64));
            den *= BigInt::from(j as i64 - i as i64);
        }
    }
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

/// weyl_dim as u64, erroring out when the representation is too large to
/// enumerate.
pub fn weyl_dim_u64(d: &RootDatum, w: &Weight) -> Result<u64> {
    use num::ToPrimitive;
    weyl_dim(d, w)?
        .to_u64()
        .ok_or_else(|| Error::domain("representation too large"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cartan_matrix_type_a() {
        let d = RootDatum::type_a(3);
        assert_eq!(d.cartan[0], vec![2, -1, 0]);
        assert_eq!(d.cartan[1], vec![-1, 2, -1]);
        assert_eq!(d.cartan[2], vec![0, -1, 2]);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(d.cartan[i][j], d.cartan[j][i]);
            }
        }
    }

    #[test]
    fn pairing_values() {
        let a2 = RootDatum::type_a(2);
        let alpha1 = Weight::simple_root(&a2, 1).unwrap();
        assert_eq!(pairing(&a2, 1, &alpha1).unwrap(), 2);
        let rho = Weight {
            coords: vec![1, 1],
        };
        assert_eq!(pairing(&a2, 1, &rho).unwrap(), 1);
        let a3 = RootDatum::type_a(3);
        let alpha1 = Weight::simple_root(&a3, 1).unwrap();
        assert_eq!(pairing(&a3, 2, &alpha1).unwrap(), -1);
        assert!(pairing(&a3, 4, &alpha1).is_err());
        assert!(pairing(&a3, 0, &alpha1).is_err());
    }

    #[test]
    fn pairing_is_bilinear() {
        let d = RootDatum::type_a(3);
        let u = Weight {
            coords: vec![2, -1, 3],
        };
        let v = Weight {
            coords: vec![0, 5, -2],
        };
        for i in 1..=3 {
            assert_eq!(
                pairing(&d, i, &u.add(&v)).unwrap(),
                pairing(&d, i, &u).unwrap() + pairing(&d, i, &v).unwrap()
            );
        }
    }

    #[test]
    fn partition_examples() {
        let a2 = RootDatum::type_a(2);
        let w = Weight {
            coords: vec![1, 1],
        };
        assert_eq!(partition_of_weight(&a2, &w).unwrap(), vec![2, 1]);
        assert_eq!(
            partition_of_weight(&a2, &Weight::zero(2)).unwrap(),
            vec![0, 0]
        );
        let a3 = RootDatum::type_a(3);
        let w = Weight {
            coords: vec![2, 0, 0],
        };
        assert_eq!(partition_of_weight(&a3, &w).unwrap(), vec![2, 0, 0]);
        let bad = Weight {
            coords: vec![1, -1],
        };
        assert!(partition_of_weight(&a2, &bad).is_err());
    }

    #[test]
    fn weyl_dim_examples() {
        let a2 = RootDatum::type_a(2);
        let w = Weight {
            coords: vec![1, 1],
        };
        assert_eq!(weyl_dim_u64(&a2, &w).unwrap(), 8);
        assert_eq!(weyl_dim_u64(&a2, &Weight::zero(2)).unwrap(), 1);
        let a1 = RootDatum::type_a(1);
        for k in 0..20 {
            let w = Weight { coords: vec![k] };
            assert_eq!(weyl_dim_u64(&a1, &w).unwrap(), (k + 1) as u64);
        }
        let w1 = Weight {
            coords: vec![1, 0],
        };
        assert_eq!(weyl_dim_u64(&a2, &w1).unwrap(), 3);
    }

    #[test]
    fn eps_round_trip() {
        let w = Weight {
            coords: vec![3, -2, 5],
        };
        assert_eq!(Weight::from_eps(&w.to_eps()), w);
        // Shifting all eps coordinates by a constant leaves the weight fixed.
        let mut eps = w.to_eps();
        for e in &mut eps {
            *e += 7;
        }
        assert_eq!(Weight::from_eps(&eps), w);
    }
}
