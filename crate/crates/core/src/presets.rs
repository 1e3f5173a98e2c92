//! Built-in example monoids: orthants, the rank-2 index-3 cone of the cell
//! decomposition figure, Segre products of polynomial rings, and Veronese
//! subalgebras.

use crate::cone::Cone;
use crate::{Error, Int, Result};
use num_traits::{One, Zero};

/// The positive orthant in dimension d (polynomial ring).
pub fn orthant(d: usize) -> Cone {
    let mut gens = Vec::with_capacity(d);
    for i in 0..d {
        let mut g = vec![Int::zero(); d];
        g[i] = Int::one();
        gens.push(g);
    }
    Cone::from_generators(gens, d).expect("orthant is pointed and full-dimensional")
}

/// The cone over (1,0) and (1,3): divisor class group Z/3, three conic
/// classes.
pub fn figure1() -> Cone {
    let gens = vec![
        vec![Int::one(), Int::zero()],
        vec![Int::one(), Int::from(3)],
    ];
    Cone::from_generators(gens, 2).expect("figure1 cone is pointed")
}

fn segre_ambient_dim(dims: &[u32]) -> usize {
    dims.iter().map(|&d| d as usize - 1).sum::<usize>() + 1
}

/// Support forms of the Segre product monoid in their natural (per-factor)
/// order: for each factor the first d_i - 1 coordinate functionals, then the
/// functional recovering the last exponent from the common degree.
fn segre_forms_natural(dims: &[u32]) -> Vec<Vec<Int>> {
    let ambient = segre_ambient_dim(dims);
    let t = ambient - 1;
    let mut forms = Vec::new();
    let mut offset = 0;
    for &di in dims {
        let di = di as usize;
        for j in 0..di - 1 {
            let mut f = vec![Int::zero(); ambient];
            f[offset + j] = Int::one();
            forms.push(f);
        }
        let mut f = vec![Int::zero(); ambient];
        for j in 0..di - 1 {
            f[offset + j] = -Int::one();
        }
        f[t] = Int::one();
        forms.push(f);
        offset += di - 1;
    }
    forms
}

/// Segre product of polynomial rings of the given dimensions, embedded with
/// the equal-total-degree lattice as its group. Rank is sum(d_i) - (k - 1);
/// there is one support form per variable.
pub fn segre(dims: &[u32]) -> Result<Cone> {
    if dims.is_empty() || dims.iter().any(|&d| d == 0) {
        return Err(Error::NoFactors);
    }
    Cone::from_support_forms(segre_forms_natural(dims), segre_ambient_dim(dims))
}

/// A representative u in Z^s (ordered like the cone's sorted support forms)
/// of the divisor class of R_1(-s_1) # ... # R_k(-s_k).
pub fn segre_shift_class(dims: &[u32], shifts: &[i64]) -> Result<Vec<Int>> {
    if dims.len() != shifts.len() {
        return Err(Error::DimensionMismatch {
            expected: dims.len(),
            got: shifts.len(),
        });
    }
    let forms = segre_forms_natural(dims);
    let mut values = vec![Int::zero(); forms.len()];
    // put the whole shift on the first form of each factor block
    let mut idx = 0;
    for (&di, &si) in dims.iter().zip(shifts) {
        values[idx] = Int::from(si);
        idx += di as usize;
    }
    let mut pairs: Vec<(Vec<Int>, Int)> = forms.into_iter().zip(values).collect();
    pairs.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(pairs.into_iter().map(|(_, v)| v).collect())
}

/// The c-th Veronese subalgebra of a polynomial ring in d variables,
/// embedded in rank d with coordinates (a_1, ..., a_{d-1}, degree/c).
pub fn veronese(d: usize, c: u32) -> Result<Cone> {
    if d == 0 || c == 0 {
        return Err(Error::NoFactors);
    }
    let mut forms = Vec::with_capacity(d);
    for j in 0..d - 1 {
        let mut f = vec![Int::zero(); d];
        f[j] = Int::one();
        forms.push(f);
    }
    let mut f = vec![-Int::one(); d];
    f[d - 1] = Int::from(c);
    forms.push(f);
    Cone::from_support_forms(forms, d)
}
