//! The divisor class group Z^s / sigma(Z^d), canonical class labels, and
//! divisorial ideals D(u).

use crate::cone::Cone;
use crate::linalg::{smith_normal_form, IntMatrix};
use crate::{Error, Int, Rat, Result};
use num_integer::Integer;
use num_traits::{One, Zero};

/// Monomial divisorial ideal D(u); only the integral ceiling of u matters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorialIdeal {
    pub u: Vec<Int>,
}

impl DivisorialIdeal {
    pub fn new(u: Vec<Int>) -> Self {
        Self { u }
    }

    /// D(u) = D(ceil(u)) for rational u.
    pub fn from_rational(u: &[Rat]) -> Self {
        Self {
            u: u.iter().map(|x| x.ceil().to_integer()).collect(),
        }
    }
}

/// Canonical label of a divisor class: residues modulo the invariant factors
/// followed by free coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassLabel {
    pub torsion: Vec<Int>,
    pub free: Vec<Int>,
}

impl ClassLabel {
    pub fn is_zero(&self) -> bool {
        self.torsion.iter().all(Zero::is_zero) && self.free.iter().all(Zero::is_zero)
    }
}

/// The group Z^s / sigma(Z^d) presented through the Smith normal form of the
/// form matrix.
#[derive(Clone, Debug)]
pub struct ClassGroup {
    s: usize,
    d: usize,
    invariant_factors: Vec<Int>,
    /// positions i < d on the Smith diagonal carrying a factor > 1
    torsion_positions: Vec<usize>,
    diag: Vec<Int>,
    u: IntMatrix,
    u_inv: IntMatrix,
}

impl ClassGroup {
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Invariant factors of the torsion subgroup (each > 1, dividing chain).
    pub fn invariant_factors(&self) -> &[Int] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.s - self.d
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> Int {
        self.invariant_factors.iter().product()
    }

    /// Canonical label of u in Z^s.
    pub fn class_of(&self, u: &[Int]) -> Result<ClassLabel> {
        if u.len() != self.s {
            return Err(Error::DimensionMismatch {
                expected: self.s,
                got: u.len(),
            });
        }
        let w = self.u.mul_vec(u);
        let torsion = self
            .torsion_positions
            .iter()
            .map(|&i| w[i].mod_floor(&self.diag[i]))
            .collect();
        let free = w[self.d..].to_vec();
        Ok(ClassLabel { torsion, free })
    }

    /// Some u in Z^s with class_of(u) equal to the given label.
    pub fn lift(&self, label: &ClassLabel) -> Vec<Int> {
        assert_eq!(label.torsion.len(), self.torsion_positions.len());
        assert_eq!(label.free.len(), self.free_rank());
        let mut w = vec![Int::zero(); self.s];
        for (&i, t) in self.torsion_positions.iter().zip(&label.torsion) {
            w[i] = t.clone();
        }
        for (slot, f) in w[self.d..].iter_mut().zip(&label.free) {
            *slot = f.clone();
        }
        self.u_inv.mul_vec(&w)
    }

    /// Group addition on canonical labels.
    pub fn add(&self, a: &ClassLabel, b: &ClassLabel) -> ClassLabel {
        let torsion = self
            .torsion_positions
            .iter()
            .zip(a.torsion.iter().zip(&b.torsion))
            .map(|(&i, (x, y))| (x + y).mod_floor(&self.diag[i]))
            .collect();
        let free = a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect();
        ClassLabel { torsion, free }
    }

    pub fn neg(&self, a: &ClassLabel) -> ClassLabel {
        let torsion = self
            .torsion_positions
            .iter()
            .zip(&a.torsion)
            .map(|(&i, x)| (-x).mod_floor(&self.diag[i]))
            .collect();
        let free = a.free.iter().map(|x| -x).collect();
        ClassLabel { torsion, free }
    }

    pub fn zero_label(&self) -> ClassLabel {
        ClassLabel {
            torsion: vec![Int::zero(); self.torsion_positions.len()],
            free: vec![Int::zero(); self.free_rank()],
        }
    }

    /// True iff the class has finite order, i.e. all free coordinates vanish.
    pub fn is_torsion(&self, label: &ClassLabel) -> bool {
        label.free.iter().all(Zero::is_zero)
    }

    /// Class of (1, ..., 1): the canonical module of the monoid algebra.
    pub fn canonical_class(&self) -> ClassLabel {
        let ones = vec![Int::one(); self.s];
        self.class_of(&ones).expect("length s by construction")
    }
}

/// Present Cl(R) = Z^s / sigma(Z^d) via the Smith normal form of the form
/// matrix.
pub fn class_group(cone: &Cone) -> Result<ClassGroup> {
    let s = cone.num_forms();
    let d = cone.dim();
    let a = IntMatrix::from_rows(cone.support_forms().to_vec());
    let snf = smith_normal_form(&a);
    let diag = snf.diagonal();
    // sigma is injective for a pointed full-dimensional cone
    if diag.len() < d || diag[..d].iter().any(Zero::is_zero) {
        return Err(Error::NotPointed);
    }
    let torsion_positions: Vec<usize> = (0..d).filter(|&i| diag[i] > Int::one()).collect();
    let invariant_factors = torsion_positions.iter().map(|&i| diag[i].clone()).collect();
    let u_inv = snf.u.unimodular_inverse();
    let mut full_diag = diag;
    full_diag.resize(s, Int::zero());
    Ok(ClassGroup {
        s,
        d,
        invariant_factors,
        torsion_positions,
        diag: full_diag,
        u: snf.u,
        u_inv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use proptest::prelude::*;

    fn iv(xs: &[i64]) -> Vec<Int> {
        xs.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn orthant_class_group_is_trivial() {
        let g = class_group(&presets::orthant(2)).unwrap();
        assert!(g.invariant_factors().is_empty());
        assert_eq!(g.free_rank(), 0);
        assert_eq!(g.torsion_order(), Int::one());
    }

    #[test]
    fn figure1_class_group_is_z3() {
        let g = class_group(&presets::figure1()).unwrap();
        assert_eq!(g.invariant_factors(), &[Int::from(3)]);
        assert_eq!(g.free_rank(), 0);
    }

    #[test]
    fn triple_segre_class_group_is_z2() {
        let g = class_group(&presets::segre(&[3, 3, 3]).unwrap()).unwrap();
        assert!(g.invariant_factors().is_empty());
        assert_eq!(g.free_rank(), 2);
    }

    #[test]
    fn figure1_labels() {
        let g = class_group(&presets::figure1()).unwrap();
        assert!(g.class_of(&iv(&[0, 0])).unwrap().is_zero());
        // sigma(Z^2) = {(a, b) : 3 | a + b}
        let gen = g.class_of(&iv(&[1, 0])).unwrap();
        assert!(!gen.is_zero());
        assert_eq!(gen, g.class_of(&iv(&[0, 1])).unwrap());
        assert!(g.class_of(&iv(&[1, 2])).unwrap().is_zero());
        assert!(g.is_torsion(&gen));
    }

    #[test]
    fn figure1_canonical_class() {
        let g = class_group(&presets::figure1()).unwrap();
        let gen = g.class_of(&iv(&[1, 0])).unwrap();
        assert_eq!(g.canonical_class(), g.add(&gen, &gen));
    }

    #[test]
    fn orthant_canonical_class_is_principal() {
        let g = class_group(&presets::orthant(2)).unwrap();
        assert!(g.canonical_class().is_zero());
    }

    #[test]
    fn triple_segre_canonical_class_is_principal() {
        let g = class_group(&presets::segre(&[3, 3, 3]).unwrap()).unwrap();
        assert!(g.canonical_class().is_zero());
        let nonfree = g
            .class_of(&presets::segre_shift_class(&[3, 3, 3], &[0, 1, 0]).unwrap())
            .unwrap();
        assert!(!g.is_torsion(&nonfree));
    }

    #[test]
    fn class_length_mismatch_rejected() {
        let g = class_group(&presets::figure1()).unwrap();
        assert!(matches!(
            g.class_of(&iv(&[1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn lift_inverts_class_of() {
        let g = class_group(&presets::segre(&[2, 2]).unwrap()).unwrap();
        for u in [iv(&[0, 0, 0, 0]), iv(&[1, 0, 0, 0]), iv(&[2, -1, 3, 5])] {
            let label = g.class_of(&u).unwrap();
            assert_eq!(g.class_of(&g.lift(&label)).unwrap(), label);
        }
    }

    proptest! {
        // class_of is a homomorphism and kills sigma(Z^d)
        #[test]
        fn class_of_homomorphism(u in proptest::collection::vec(-6i64..7, 2),
                                 v in proptest::collection::vec(-6i64..7, 2),
                                 z in proptest::collection::vec(-4i64..5, 2)) {
            let cone = presets::figure1();
            let g = class_group(&cone).unwrap();
            let ui = iv(&u);
            let vi = iv(&v);
            let sum: Vec<Int> = ui.iter().zip(&vi).map(|(a, b)| a + b).collect();
            let lhs = g.class_of(&sum).unwrap();
            let rhs = g.add(&g.class_of(&ui).unwrap(), &g.class_of(&vi).unwrap());
            prop_assert_eq!(lhs, rhs);

            let zi = iv(&z);
            let principal = g.class_of(&cone.sigma_int(&zi)).unwrap();
            prop_assert!(principal.is_zero());
        }
    }
}
