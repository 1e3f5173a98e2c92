//! The positive normal affine monoid: generators, support forms, the sigma
//! map with its ceiling, and Hilbert basis enumeration.

use crate::linalg::{int_rank, kernel_basis_int, primitive_part};
use crate::polyhedra::{CellPiece, Halfspace};
use crate::{Error, Int, Rat, Result};
use itertools::Itertools;
use num_traits::{Signed, Zero};

/// Pointed full-dimensional rational cone with its monoid of lattice points.
///
/// `forms` is the irredundant list of primitive support forms, sorted
/// lexicographically; every generator evaluates nonnegatively under every
/// form.
#[derive(Clone, Debug)]
pub struct Cone {
    dim: usize,
    generators: Vec<Vec<Int>>,
    forms: Vec<Vec<Int>>,
}

/// Exact value of sigma at a point together with its componentwise ceiling.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaValue {
    pub value: Vec<Rat>,
    pub ceiling: Vec<Int>,
}

impl Cone {
    /// Build the cone spanned by the given lattice generators.
    pub fn from_generators(generators: Vec<Vec<Int>>, dim: usize) -> Result<Cone> {
        for g in &generators {
            if g.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: g.len(),
                });
            }
        }
        if int_rank(&generators) != dim {
            return Err(Error::NotFullDimensional);
        }
        let forms = facet_forms(&generators, dim)?;
        if int_rank(&forms) != dim {
            return Err(Error::NotPointed);
        }
        Ok(Cone {
            dim,
            generators,
            forms,
        })
    }

    /// Build the cone cut out by the given support forms; generators are the
    /// extreme rays.
    pub fn from_support_forms(forms: Vec<Vec<Int>>, dim: usize) -> Result<Cone> {
        let mut prim = Vec::with_capacity(forms.len());
        for f in &forms {
            if f.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: f.len(),
                });
            }
            prim.push(primitive_part(f)?);
        }
        prim.sort();
        prim.dedup();
        if int_rank(&prim) != dim {
            return Err(Error::NotPointed);
        }
        let rays = extreme_rays(&prim, dim);
        if int_rank(&rays) != dim {
            return Err(Error::NotFullDimensional);
        }
        // every form must be facet-defining on the reconstructed ray set
        for f in &prim {
            let tight: Vec<Vec<Int>> = rays
                .iter()
                .filter(|r| dot(f, r).is_zero())
                .cloned()
                .collect();
            if int_rank(&tight) + 1 != dim {
                return Err(Error::InvalidSupportForm(format!("{f:?}")));
            }
        }
        Ok(Cone {
            dim,
            generators: rays,
            forms: prim,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<Int>] {
        &self.generators
    }

    pub fn support_forms(&self) -> &[Vec<Int>] {
        &self.forms
    }

    /// Number of facets, i.e. the length of sigma values.
    pub fn num_forms(&self) -> usize {
        self.forms.len()
    }

    /// True iff 0 is the only invertible element of the monoid, i.e. the
    /// support forms have full rank.
    pub fn is_positive(&self) -> bool {
        int_rank(&self.forms) == self.dim
    }

    pub fn sigma_int(&self, x: &[Int]) -> Vec<Int> {
        assert_eq!(x.len(), self.dim);
        self.forms.iter().map(|f| dot(f, x)).collect()
    }

    pub fn sigma_rat(&self, x: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.dim);
        self.forms
            .iter()
            .map(|f| {
                f.iter()
                    .zip(x)
                    .map(|(a, b)| Rat::from_integer(a.clone()) * b)
                    .sum()
            })
            .collect()
    }

    /// Exact sigma(x) together with its componentwise integer ceiling.
    pub fn ceil_sigma(&self, x: &[Rat]) -> SigmaValue {
        let value = self.sigma_rat(x);
        let ceiling = value.iter().map(|v| v.ceil().to_integer()).collect();
        SigmaValue { value, ceiling }
    }

    /// Membership of a lattice point in the monoid.
    pub fn contains_lattice_point(&self, z: &[Int]) -> bool {
        self.sigma_int(z).iter().all(|v| !v.is_negative())
    }

    /// All lattice points z with lo <= sigma(z) <= hi componentwise.
    pub fn lattice_points_sigma_box(&self, lo: &[Int], hi: &[Int]) -> Vec<Vec<Int>> {
        assert_eq!(lo.len(), self.num_forms());
        assert_eq!(hi.len(), self.num_forms());
        let mut constraints = Vec::with_capacity(2 * self.num_forms());
        for (f, (l, h)) in self.forms.iter().zip(lo.iter().zip(hi)) {
            let normal: Vec<Rat> = f.iter().map(|a| Rat::from_integer(a.clone())).collect();
            constraints.push(Halfspace {
                normal: normal.clone(),
                bound: Rat::from_integer(h.clone()),
            });
            constraints.push(Halfspace {
                normal: normal.iter().map(|a| -a.clone()).collect(),
                bound: Rat::from_integer(-l.clone()),
            });
        }
        let verts = crate::polyhedra::enumerate_vertices(self.dim, &constraints);
        if verts.is_empty() {
            return Vec::new();
        }
        let mut box_lo = Vec::with_capacity(self.dim);
        let mut box_hi = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let min = verts.iter().map(|v| &v[i]).min().unwrap();
            let max = verts.iter().map(|v| &v[i]).max().unwrap();
            box_lo.push(min.floor().to_integer());
            box_hi.push(max.ceil().to_integer());
        }
        let mut out = Vec::new();
        let mut point = box_lo.clone();
        'odometer: loop {
            let s = self.sigma_int(&point);
            if s.iter().zip(lo.iter().zip(hi)).all(|(v, (l, h))| l <= v && v <= h) {
                out.push(point.clone());
            }
            for i in 0..self.dim {
                if point[i] < box_hi[i] {
                    point[i] += 1;
                    continue 'odometer;
                }
                point[i] = box_lo[i].clone();
            }
            break;
        }
        out
    }

    /// The unique minimal generating set of the monoid, by bounded
    /// enumeration with a doubling stability certificate.
    pub fn hilbert_basis(&self) -> Result<Vec<Vec<Int>>> {
        let s = self.num_forms();
        let zero = vec![Int::zero(); s];
        let mut bound = Int::from(1);
        let limit = Int::from(1u64 << 16);
        let mut prev: Option<Vec<Vec<Int>>> = None;
        while bound <= limit {
            let hi = vec![bound.clone(); s];
            let pts = self.lattice_points_sigma_box(&zero, &hi);
            let irr = irreducibles(self, &pts);
            if let Some(p) = prev {
                if p == irr {
                    return Ok(p);
                }
            }
            prev = Some(irr);
            bound *= 2;
        }
        Err(Error::EnumerationUnstable)
    }
}

fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Elements of `pts` (nonzero monoid points) that are not a sum of two
/// nonzero monoid elements.
fn irreducibles(cone: &Cone, pts: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let sigmas: Vec<Vec<Int>> = pts.iter().map(|z| cone.sigma_int(z)).collect();
    let nonzero: Vec<usize> = (0..pts.len())
        .filter(|&i| sigmas[i].iter().any(|v| !v.is_zero()))
        .collect();
    let mut out = Vec::new();
    for &i in &nonzero {
        let reducible = nonzero.iter().any(|&j| {
            j != i && sigmas[j].iter().zip(&sigmas[i]).all(|(a, b)| a <= b)
        });
        if !reducible {
            out.push(pts[i].clone());
        }
    }
    out.sort();
    out
}

/// Facet forms via kernel vectors of (d-1)-subsets of generators.
fn facet_forms(generators: &[Vec<Int>], dim: usize) -> Result<Vec<Vec<Int>>> {
    if dim == 1 {
        // every generator is a positive multiple of the single form direction
        let g = generators
            .iter()
            .find(|g| !g[0].is_zero())
            .ok_or(Error::NotFullDimensional)?;
        let sign = if g[0].is_positive() { 1 } else { -1 };
        if generators.iter().any(|h| (&h[0] * sign).is_negative()) {
            return Err(Error::NotPointed);
        }
        return Ok(vec![vec![Int::from(sign)]]);
    }
    let mut forms: Vec<Vec<Int>> = Vec::new();
    for combo in (0..generators.len()).combinations(dim - 1) {
        let rows: Vec<Vec<Int>> = combo.iter().map(|&i| generators[i].clone()).collect();
        let kernel = kernel_basis_int(&rows);
        if kernel.len() != 1 {
            continue;
        }
        let mut form = kernel.into_iter().next().unwrap();
        let mut pos = false;
        let mut neg = false;
        for g in generators {
            let v = dot(&form, g);
            if v.is_positive() {
                pos = true;
            } else if v.is_negative() {
                neg = true;
            }
        }
        match (pos, neg) {
            (true, true) => continue,   // not a supporting hyperplane
            (false, false) => continue, // vanishes on the whole cone
            (false, true) => {
                for c in &mut form {
                    *c = -c.clone();
                }
            }
            (true, false) => {}
        }
        if !forms.contains(&form) {
            forms.push(form);
        }
    }
    forms.sort();
    Ok(forms)
}

/// Extreme rays via kernel vectors of (d-1)-subsets of forms.
fn extreme_rays(forms: &[Vec<Int>], dim: usize) -> Vec<Vec<Int>> {
    if dim == 1 {
        return vec![forms[0].clone()];
    }
    let mut rays: Vec<Vec<Int>> = Vec::new();
    for combo in (0..forms.len()).combinations(dim - 1) {
        let rows: Vec<Vec<Int>> = combo.iter().map(|&i| forms[i].clone()).collect();
        let kernel = kernel_basis_int(&rows);
        if kernel.len() != 1 {
            continue;
        }
        let mut ray = kernel.into_iter().next().unwrap();
        let values: Vec<Int> = forms.iter().map(|f| dot(f, &ray)).collect();
        if values.iter().all(|v| !v.is_negative()) {
            // keep as is
        } else if values.iter().all(|v| !v.is_positive()) {
            for c in &mut ray {
                *c = -c.clone();
            }
        } else {
            continue;
        }
        if !rays.contains(&ray) {
            rays.push(ray);
        }
    }
    rays.sort();
    rays
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat_int;

    fn iv(xs: &[i64]) -> Vec<Int> {
        xs.iter().map(|&x| Int::from(x)).collect()
    }

    fn rv(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat_int(x)).collect()
    }

    fn figure1() -> Cone {
        Cone::from_generators(vec![iv(&[1, 0]), iv(&[1, 3])], 2).unwrap()
    }

    #[test]
    fn orthant_forms() {
        let cone = Cone::from_generators(vec![iv(&[1, 0]), iv(&[0, 1])], 2).unwrap();
        assert_eq!(cone.support_forms(), &[iv(&[0, 1]), iv(&[1, 0])]);
        assert!(cone.is_positive());
    }

    #[test]
    fn figure1_forms() {
        let cone = figure1();
        assert_eq!(cone.support_forms(), &[iv(&[0, 1]), iv(&[3, -1])]);
        assert!(cone.is_positive());
    }

    #[test]
    fn halfplane_is_not_pointed() {
        let gens = vec![iv(&[1, 0]), iv(&[-1, 0]), iv(&[0, 1])];
        assert!(matches!(
            Cone::from_generators(gens, 2),
            Err(Error::NotPointed)
        ));
    }

    #[test]
    fn non_full_dimensional_rejected() {
        let gens = vec![iv(&[1, 0]), iv(&[2, 0])];
        assert!(matches!(
            Cone::from_generators(gens, 2),
            Err(Error::NotFullDimensional)
        ));
    }

    #[test]
    fn ceil_sigma_values() {
        let cone = figure1();
        let at_zero = cone.ceil_sigma(&rv(&[0, 0]));
        assert_eq!(at_zero.ceiling, iv(&[0, 0]));

        let half = Rat::new(1.into(), 2.into());
        let sv = cone.ceil_sigma(&[half.clone(), half.clone()]);
        assert_eq!(sv.value, vec![half.clone(), rat_int(1)]);
        assert_eq!(sv.ceiling, iv(&[1, 1]));

        let sv = cone.ceil_sigma(&[half, rat_int(0)]);
        assert_eq!(sv.value, vec![rat_int(0), Rat::new(3.into(), 2.into())]);
        assert_eq!(sv.ceiling, iv(&[0, 2]));

        // invariant: ceiling - 1 < value <= ceiling
        for (v, c) in sv.value.iter().zip(&sv.ceiling) {
            let c = Rat::from_integer(c.clone());
            assert!(&c - rat_int(1) < *v && *v <= c);
        }
    }

    #[test]
    fn orthant_hilbert_basis() {
        let cone = Cone::from_generators(vec![iv(&[1, 0]), iv(&[0, 1])], 2).unwrap();
        assert_eq!(cone.hilbert_basis().unwrap(), vec![iv(&[0, 1]), iv(&[1, 0])]);
    }

    #[test]
    fn figure1_hilbert_basis() {
        let hb = figure1().hilbert_basis().unwrap();
        assert_eq!(
            hb,
            vec![iv(&[1, 0]), iv(&[1, 1]), iv(&[1, 2]), iv(&[1, 3])]
        );
    }

    #[test]
    fn veronese_pattern_hilbert_basis() {
        let cone =
            Cone::from_generators(vec![iv(&[0, 1]), iv(&[1, 1]), iv(&[2, 1])], 2).unwrap();
        let hb = cone.hilbert_basis().unwrap();
        assert_eq!(hb, vec![iv(&[0, 1]), iv(&[1, 1]), iv(&[2, 1])]);
    }

    #[test]
    fn hilbert_basis_elements_are_irreducible() {
        let cone = figure1();
        let hb = cone.hilbert_basis().unwrap();
        for g in &hb {
            assert!(cone.contains_lattice_point(g));
            // bounded search for a decomposition g = a + b with a, b nonzero
            let sg = cone.sigma_int(g);
            let zero = vec![Int::zero(); cone.num_forms()];
            let pts = cone.lattice_points_sigma_box(&zero, &sg);
            for a in &pts {
                let b: Vec<Int> = g.iter().zip(a).map(|(x, y)| x - y).collect();
                if a.iter().any(|v| !v.is_zero())
                    && b.iter().any(|v| !v.is_zero())
                    && cone.contains_lattice_point(&b)
                {
                    panic!("Hilbert basis element {g:?} decomposes as {a:?} + {b:?}");
                }
            }
        }
    }

    #[test]
    fn cone_from_hilbert_basis_reproduces_forms() {
        let cone = figure1();
        let hb = cone.hilbert_basis().unwrap();
        let again = Cone::from_generators(hb, 2).unwrap();
        assert_eq!(again.support_forms(), cone.support_forms());
    }

    #[test]
    fn forms_attain_value_one() {
        // primitive forms map the lattice onto Z, so value 1 is attained in
        // a small box
        let cone = figure1();
        for f in cone.support_forms() {
            let mut hit = false;
            'search: for x in -4i64..=4 {
                for y in -4i64..=4 {
                    if dot(f, &iv(&[x, y])) == Int::from(1) {
                        hit = true;
                        break 'search;
                    }
                }
            }
            assert!(hit, "form {f:?} misses value 1");
        }
    }

    #[test]
    fn roundtrip_forms_to_generators() {
        let cone = Cone::from_support_forms(vec![iv(&[0, 1]), iv(&[3, -1])], 2).unwrap();
        assert_eq!(cone.generators(), &[iv(&[1, 0]), iv(&[1, 3])]);
    }
}
