//! Simplicial cones equipped with a lattice in their span.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::cones::{PolyCone, SimplicialCone};
use crate::error::{Error, Result};
use crate::exact::{Rational, RationalMatrix, RationalVector};
use crate::germs::form::rank;

/// A simplicial cone C with a lattice Λ_C ⊂ lin(C) given by a basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LatticeCone {
    cone: SimplicialCone,
    basis: Vec<RationalVector>,
}

impl LatticeCone {
    /// The basis must be independent and span the same subspace as the cone.
    pub fn new(cone: SimplicialCone, basis: Vec<RationalVector>) -> Result<Self> {
        let n = cone.dim();
        if basis.len() != n || rank(&basis) != n {
            return Err(Error::InvalidInput(format!("lattice basis must consist of {} independent vectors", n)));
        }
        if let Some(b) = basis.iter().find(|b| b.dim() != cone.ambient_dim()) {
            return Err(Error::DimensionMismatch { expected: cone.ambient_dim(), found: b.dim() });
        }
        let mut all = basis.clone();
        all.extend(cone.generators().iter().cloned());
        if rank(&all) != n {
            return Err(Error::InvalidInput("lattice basis does not span the cone's linear span".into()));
        }
        Ok(LatticeCone { cone, basis })
    }

    /// Full-dimensional cone with the standard lattice ℤ^k.
    pub fn standard(cone: SimplicialCone) -> Result<Self> {
        let k = cone.ambient_dim();
        Self::new(cone, (0..k).map(|i| RationalVector::unit(k, i)).collect())
    }

    /// Conic hull of arbitrary generators; fails with `NotSimplicial` unless
    /// the hull is simplicial.
    pub fn from_generators(gens: &[RationalVector], basis: Vec<RationalVector>) -> Result<Self> {
        let k = gens.first().map_or(0, RationalVector::dim);
        let pc = PolyCone::from_generators(gens, k)?;
        if !pc.is_simplicial() {
            return Err(Error::NotSimplicial);
        }
        Self::new(SimplicialCone::new(pc.rays().to_vec())?, basis)
    }

    pub fn cone(&self) -> &SimplicialCone {
        &self.cone
    }

    pub fn basis(&self) -> &[RationalVector] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.cone.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.cone.ambient_dim()
    }

    /// Coordinates of a vector of lin(C) in the lattice basis.
    pub fn coords(&self, v: &RationalVector) -> Option<RationalVector> {
        RationalMatrix::from_cols(&self.basis, self.ambient_dim()).solve(v)
    }

    fn point_at(&self, c: &RationalVector) -> RationalVector {
        self.basis
            .iter()
            .zip(c.coords())
            .fold(RationalVector::zeros(self.ambient_dim()), |acc, (b, x)| acc.add(&b.scale(x)))
    }

    /// First lattice point on every ray, in lattice coordinates.
    pub fn generator_coords(&self) -> Vec<RationalVector> {
        self.cone.generators().iter().map(|g| self.coords(g).expect("generator in span").ray()).collect()
    }

    /// First lattice point on every ray.
    pub fn lattice_generators(&self) -> Vec<RationalVector> {
        self.generator_coords().iter().map(|c| self.point_at(c)).collect()
    }

    /// |det| of the lattice generators in lattice coordinates: the index of
    /// the sublattice they generate.
    pub fn multiplicity(&self) -> Rational {
        RationalMatrix::from_cols(&self.generator_coords(), self.dim()).det().abs()
    }

    pub fn is_smooth(&self) -> bool {
        self.multiplicity().is_one()
    }

    /// Same cone, lattice generated by the lattice generators of the rays.
    fn with_cone(&self, cone: SimplicialCone) -> Self {
        LatticeCone { cone, basis: self.basis.clone() }
    }

    /// Λ and `other`'s lattice coincide.
    pub fn same_lattice(&self, other: &LatticeCone) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        let cs: Option<Vec<RationalVector>> = other.basis.iter().map(|b| self.coords(b)).collect();
        match cs {
            Some(cs) if cs.iter().all(RationalVector::is_integral) => {
                RationalMatrix::from_cols(&cs, self.dim()).det().abs().is_one()
            }
            _ => false,
        }
    }
}

pub fn is_smooth(lc: &LatticeCone) -> bool {
    lc.is_smooth()
}

fn det2(a: &[BigInt; 2], b: &[BigInt; 2]) -> BigInt {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn int_coords(v: &RationalVector) -> [BigInt; 2] {
    [v.coords()[0].to_integer(), v.coords()[1].to_integer()]
}

/// Subdivides a cone with two-dimensional span into smooth cones by
/// inserting the rays of its Hirzebruch–Jung continued fraction. Smooth
/// cones come back unchanged.
pub fn smooth_subdivide_2d(lc: &LatticeCone) -> Result<Vec<LatticeCone>> {
    if lc.dim() != 2 {
        return Err(Error::NotDimensionTwo);
    }
    if lc.is_smooth() {
        return Ok(vec![lc.clone()]);
    }
    let gc = lc.generator_coords();
    let (mut u, mut v) = (int_coords(&gc[0]), int_coords(&gc[1]));
    if det2(&u, &v).is_negative() {
        std::mem::swap(&mut u, &mut v);
    }
    let mut rays = vec![u.clone()];
    let mut cur = u;
    loop {
        let d = det2(&cur, &v);
        if d <= BigInt::one() {
            break;
        }
        // cur⊥ with det[cur, cur⊥] = 1, then v = a·cur + d·cur⊥.
        let e = cur[0].extended_gcd(&cur[1]);
        debug_assert!(e.gcd.is_one());
        let perp = [-e.y.clone(), e.x.clone()];
        let a = det2(&v, &perp);
        let c = a.div_ceil(&d);
        let w = [&c * &cur[0] + &perp[0], &c * &cur[1] + &perp[1]];
        rays.push(w.clone());
        cur = w;
    }
    rays.push(v);
    let to_vec = |r: &[BigInt; 2]| RationalVector::new(r.iter().map(|x| Rational::from_integer(x.clone())).collect());
    let mut out = Vec::with_capacity(rays.len() - 1);
    for pair in rays.windows(2) {
        let gens = vec![lc.point_at(&to_vec(&pair[0])), lc.point_at(&to_vec(&pair[1]))];
        out.push(lc.with_cone(SimplicialCone::new(gens)?));
    }
    Ok(out)
}

/// Splits a smooth two-dimensional piece ⟨a, b⟩ into ⟨a, a+b⟩ and ⟨a+b, b⟩,
/// which are smooth again.
pub fn stellar_split(lc: &LatticeCone) -> Result<Vec<LatticeCone>> {
    let g = lc.lattice_generators();
    if g.len() != 2 {
        return Err(Error::NotDimensionTwo);
    }
    let mid = g[0].add(&g[1]);
    Ok(vec![
        lc.with_cone(SimplicialCone::new(vec![g[0].clone(), mid.clone()])?),
        lc.with_cone(SimplicialCone::new(vec![mid, g[1].clone()])?),
    ])
}

/// A second smooth subdivision: Hirzebruch–Jung followed by a stellar split
/// of the first piece.
pub fn alternative_smooth_subdivision_2d(lc: &LatticeCone) -> Result<Vec<LatticeCone>> {
    let mut pieces = smooth_subdivide_2d(lc)?;
    let first = pieces.remove(0);
    let mut out = stellar_split(&first)?;
    out.extend(pieces);
    Ok(out)
}

/// Shared rays between consecutive pieces of a 2D subdivision, i.e. the rays
/// that are not generators of the original cone.
pub fn interior_rays(lc: &LatticeCone, pieces: &[LatticeCone]) -> Vec<RationalVector> {
    let outer = lc.cone().generators();
    let mut rays: Vec<RationalVector> =
        pieces.iter().flat_map(|p| p.cone().generators().to_vec()).filter(|r| !outer.contains(r)).collect();
    rays.sort();
    rays.dedup();
    rays
}

/// One-dimensional lattice cone on a ray of `lc`.
pub fn ray_cone(lc: &LatticeCone, ray: &RationalVector) -> Result<LatticeCone> {
    let c = lc.coords(ray).ok_or_else(|| Error::InvalidInput("ray outside the lattice span".into()))?.ray();
    let g = lc.point_at(&c);
    LatticeCone::new(SimplicialCone::new(vec![g.clone()])?, vec![g])
}
