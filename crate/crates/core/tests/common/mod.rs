//! Seeded generators for random desk-scale instances.
#![allow(dead_code)]

pub mod oracle;

use qistab::ratfield::{q, qr};
use qistab::{BinMatrix, Poly, RationalFunction, Region, Tfm, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rf(gain: i64, zeros: &[i64], poles: &[i64]) -> RationalFunction {
    RationalFunction::from_roots(gain, zeros, poles)
}

pub struct Gen {
    pub rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn pick<T: Clone>(&mut self, xs: &[T]) -> T {
        xs[self.rng.gen_range(0..xs.len())].clone()
    }

    /// Integer coefficients in [-r, r], degree at most `deg`.
    pub fn poly(&mut self, deg: usize, r: i64) -> Poly {
        Poly::new((0..=deg).map(|_| q(self.int(-r, r))).collect())
    }

    fn stable_root(&mut self, region: Region) -> Q {
        match region {
            Region::Continuous => q(-self.int(1, 6)),
            Region::Discrete => {
                self.pick(&[q(0), qr(1, 2), qr(-1, 2), qr(1, 3), qr(-2, 3), qr(3, 4)])
            }
        }
    }

    fn unstable_root(&mut self, region: Region) -> Q {
        match region {
            Region::Continuous => q(self.int(1, 3)),
            Region::Discrete => self.pick(&[q(2), q(-2), qr(3, 2), q(1)]),
        }
    }

    pub fn stable_poly(&mut self, deg: usize, region: Region) -> Poly {
        let roots: Vec<Q> = (0..deg).map(|_| self.stable_root(region)).collect();
        Poly::from_roots(&roots)
    }

    /// Random element of 𝔸 with denominator degree at most `deg`.
    pub fn stable_rf(&mut self, deg: usize, region: Region) -> RationalFunction {
        let d = self.int(0, deg as i64) as usize;
        let den = self.stable_poly(d, region);
        let num = self.poly(d, 3);
        RationalFunction::new(num, den).unwrap()
    }

    pub fn nonzero_stable_rf(&mut self, deg: usize, region: Region) -> RationalFunction {
        loop {
            let f = self.stable_rf(deg, region);
            if !f.is_zero() {
                return f;
            }
        }
    }

    pub fn stable_tfm(&mut self, rows: usize, cols: usize, deg: usize, region: Region) -> Tfm {
        Tfm::from_fn(rows, cols, |_, _| self.stable_rf(deg, region))
    }

    /// Strictly proper nonzero entry with denominator degree 1..=deg; each
    /// pole is unstable with probability `p_unstable`.
    pub fn plant_entry(&mut self, deg: usize, region: Region, p_unstable: f64) -> RationalFunction {
        loop {
            let d = self.int(1, deg as i64) as usize;
            let roots: Vec<Q> = (0..d)
                .map(|_| {
                    if self.coin(p_unstable) {
                        self.unstable_root(region)
                    } else {
                        self.stable_root(region)
                    }
                })
                .collect();
            let num = self.poly(d - 1, 3);
            if num.is_zero() {
                continue;
            }
            return RationalFunction::new(num, Poly::from_roots(&roots)).unwrap();
        }
    }

    pub fn pattern(&mut self, rows: usize, cols: usize, density: f64) -> BinMatrix {
        BinMatrix::from_fn(rows, cols, |_, _| self.coin(density))
    }

    pub fn plant_with_pattern(
        &mut self,
        pat: &BinMatrix,
        deg: usize,
        region: Region,
        p_unstable: f64,
    ) -> Tfm {
        Tfm::from_fn(pat.rows(), pat.cols(), |i, j| {
            if pat.get(i, j) {
                self.plant_entry(deg, region, p_unstable)
            } else {
                RationalFunction::zero()
            }
        })
    }

    /// Random stable matrix supported on the ones of `kbin`, nonzero there.
    pub fn in_pattern(&mut self, kbin: &BinMatrix, deg: usize, region: Region) -> Tfm {
        Tfm::from_fn(kbin.rows(), kbin.cols(), |i, j| {
            if kbin.get(i, j) {
                self.nonzero_stable_rf(deg, region)
            } else {
                RationalFunction::zero()
            }
        })
    }
}
