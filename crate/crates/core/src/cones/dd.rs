//! Double-description step: halfspace cone to generator cone.
//!
//! Starts from generators of the full space and inserts halfspaces one at a
//! time. When a halfspace `<a, v> <= 0` splits the current generators into
//! strictly positive and strictly negative sides, each positive/negative
//! pair contributes the boundary combination
//! `<a, g+> * g-  -  <a, g-> * g+`, which lies on `<a, v> = 0` with
//! positive coefficients. Combining all pairs (no adjacency test) is valid
//! for non-pointed cones too; redundant generators are pruned after every
//! insertion by a conic-hull LP, which keeps the set small and the output
//! canonical. Guarded to dimension [`super::DD_DIMENSION_GUARD`]: the
//! operators this crate targets live in d <= 2 and the guard fails loudly
//! rather than blowing up on large instances.

use std::cmp::Ordering;

use crate::error::Error;
use crate::scalar::{dot, vec_scale, vec_sub, Vector};

use super::{prune_conic_generators, HCone, VCone, DD_DIMENSION_GUARD};

pub fn extreme_rays(h: &HCone) -> Result<VCone, Error> {
    let dim = h.dim();
    if dim > DD_DIMENSION_GUARD {
        return Err(Error::DimensionGuard {
            dim,
            max: DD_DIMENSION_GUARD,
        });
    }
    let mode = h.mode();

    // Generators of the full space: both unit directions per axis.
    let mut gens: Vec<Vector> = Vec::with_capacity(2 * dim);
    for k in 0..dim {
        let mut e = vec![mode.zero(); dim];
        e[k] = mode.one();
        gens.push(e.clone());
        e[k] = -mode.one();
        gens.push(e);
    }

    for a in h.normals() {
        let mut keep: Vec<Vector> = Vec::new();
        let mut pos: Vec<Vector> = Vec::new();
        let mut neg: Vec<Vector> = Vec::new();
        for g in gens {
            match mode.sign(&dot(a, &g)) {
                Ordering::Greater => pos.push(g),
                Ordering::Less => neg.push(g),
                Ordering::Equal => keep.push(g),
            }
        }
        for p in &pos {
            let ap = dot(a, p);
            for n in &neg {
                let an = dot(a, n);
                let combo = vec_sub(&vec_scale(&ap, n), &vec_scale(&an, p));
                keep.push(combo);
            }
        }
        keep.extend(neg);
        let canonical = VCone::new(dim, mode, keep)?;
        gens = prune_conic_generators(canonical.generators().to_vec(), dim, &mode)?;
    }

    VCone::new(dim, mode, gens)
}
