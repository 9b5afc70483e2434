//! Spaces of parity-homogeneous endomorphisms in canonical form: Der(L),
//! TDer(L), ad(L) and the centroid all live here.

use crate::algebra::LieSuperalgebra;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linmap::{GradedDim, LinearMap, Parity};
use crate::matrix::Matrix;
use crate::subspace::Subspace;

/// The matrix positions an endomorphism of a given parity may populate,
/// listed in row-major order, with a reverse lookup.
#[derive(Debug, Clone)]
pub(crate) struct BlockPositions {
    space: GradedDim,
    parity: Parity,
    field: FieldSpec,
    list: Vec<(usize, usize)>,
    lookup: Vec<Option<usize>>,
}

impl BlockPositions {
    pub(crate) fn new(space: GradedDim, parity: Parity, field: FieldSpec) -> BlockPositions {
        let n = space.total();
        let mut list = Vec::new();
        let mut lookup = vec![None; n * n];
        for r in 0..n {
            for c in 0..n {
                if space.parity_of_index(r) == space.parity_of_index(c).compose(parity) {
                    lookup[r * n + c] = Some(list.len());
                    list.push((r, c));
                }
            }
        }
        BlockPositions {
            space,
            parity,
            field,
            list,
            lookup,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.list.len()
    }

    pub(crate) fn index_of(&self, r: usize, c: usize) -> Option<usize> {
        self.lookup[r * self.space.total() + c]
    }

    pub(crate) fn zero_row(&self) -> Vec<Scalar> {
        vec![Scalar::zero(self.field); self.len()]
    }

    /// Rebuilds a full map from the compressed unknown vector.
    pub(crate) fn expand(&self, unknowns: &[Scalar]) -> LinearMap {
        let n = self.space.total();
        let mut m = Matrix::zero(n, n, self.field);
        for (t, &(r, c)) in self.list.iter().enumerate() {
            m.set(r, c, unknowns[t].clone());
        }
        LinearMap::new(self.space, self.space, self.parity, m).expect("blocked by construction")
    }

    /// Solves the homogeneous system given by `rows` over the compressed
    /// unknowns and expands each kernel basis vector into a map.
    pub(crate) fn kernel_maps(&self, rows: Vec<Vec<Scalar>>) -> Vec<LinearMap> {
        let system = Matrix::from_rows(rows, self.len(), self.field).expect("uniform rows");
        system
            .kernel()
            .basis_rows()
            .map(|v| self.expand(v))
            .collect()
    }
}

/// A canonical basis of endomorphisms split by parity. Bases are kept in
/// coordinate-vectorized RREF, so equality of spaces is plain equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedEndSpace {
    space: GradedDim,
    field: FieldSpec,
    even_basis: Vec<LinearMap>,
    odd_basis: Vec<LinearMap>,
}

impl GradedEndSpace {
    /// Canonicalizes arbitrary spanning maps (already split by parity).
    pub fn new_canonical(
        space: GradedDim,
        field: FieldSpec,
        even_maps: Vec<LinearMap>,
        odd_maps: Vec<LinearMap>,
    ) -> GradedEndSpace {
        let canonical = |maps: Vec<LinearMap>, parity: Parity| -> Vec<LinearMap> {
            let n = space.total();
            let rows: Vec<Vec<Scalar>> = maps
                .iter()
                .inspect(|m| {
                    assert_eq!(m.parity(), parity, "map listed under the wrong parity");
                })
                .map(LinearMap::vectorize)
                .collect();
            Subspace::from_rows(rows, n * n, field)
                .basis_rows()
                .map(|v| {
                    LinearMap::from_vectorized(v, space, space, parity, field)
                        .expect("canonicalization preserves parity blocks")
                })
                .collect()
        };
        GradedEndSpace {
            space,
            field,
            even_basis: canonical(even_maps, Parity::Even),
            odd_basis: canonical(odd_maps, Parity::Odd),
        }
    }

    pub fn space(&self) -> GradedDim {
        self.space
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn even_basis(&self) -> &[LinearMap] {
        &self.even_basis
    }

    pub fn odd_basis(&self) -> &[LinearMap] {
        &self.odd_basis
    }

    pub fn even_dim(&self) -> usize {
        self.even_basis.len()
    }

    pub fn odd_dim(&self) -> usize {
        self.odd_basis.len()
    }

    pub fn total_dim(&self) -> usize {
        self.even_dim() + self.odd_dim()
    }

    /// Basis maps, even block first; the coordinate order used by
    /// [`Self::coords_of`] and by subspaces of this space.
    pub fn basis_maps(&self) -> impl Iterator<Item = &LinearMap> {
        self.even_basis.iter().chain(self.odd_basis.iter())
    }

    /// The span of one parity block as a subspace of vectorized matrices.
    pub fn parity_span(&self, parity: Parity) -> Subspace {
        let maps = match parity {
            Parity::Even => &self.even_basis,
            Parity::Odd => &self.odd_basis,
        };
        let n = self.space.total();
        Subspace::from_rows(maps.iter().map(LinearMap::vectorize).collect(), n * n, self.field)
    }

    pub fn contains_map(&self, map: &LinearMap) -> bool {
        self.parity_span(map.parity())
            .contains_vector(&map.vectorize())
            .unwrap_or(false)
    }

    pub fn contains_space(&self, other: &GradedEndSpace) -> bool {
        other.basis_maps().all(|m| self.contains_map(m))
    }

    fn stacked_columns(&self) -> Matrix {
        let n = self.space.total();
        let d = self.total_dim();
        let vecs: Vec<Vec<Scalar>> = self.basis_maps().map(LinearMap::vectorize).collect();
        Matrix::from_fn(n * n, d, self.field, |r, c| vecs[c][r].clone())
    }

    /// Coordinates of a map in the even++odd basis, when it lies in the span.
    pub fn coords_of(&self, map: &LinearMap) -> Option<Vec<Scalar>> {
        self.stacked_columns().solve(&map.vectorize())
    }

    /// Whether the supercommutator of every basis pair stays in the span.
    pub fn is_bracket_closed(&self) -> bool {
        let columns = self.stacked_columns();
        for a in self.basis_maps() {
            for b in self.basis_maps() {
                let s = a.supercommutator(b).expect("endomorphisms of one space");
                if columns.solve(&s.vectorize()).is_none() {
                    return false;
                }
            }
        }
        true
    }

    /// Reads the span as an abstract Lie superalgebra under the
    /// supercommutator; fails with [`Error::NotClosed`] when it is not one.
    pub fn as_superalgebra(&self, name: &str) -> Result<LieSuperalgebra> {
        let d0 = self.even_dim();
        let d = self.total_dim();
        let columns = self.stacked_columns();
        let basis: Vec<&LinearMap> = self.basis_maps().collect();
        let mut table = vec![vec![vec![Scalar::zero(self.field); d]; d]; d];
        for a in 0..d {
            for b in 0..d {
                let s = basis[a].supercommutator(basis[b])?;
                table[a][b] = columns.solve(&s.vectorize()).ok_or(Error::NotClosed)?;
            }
        }
        let even_names = (0..d0).map(|i| format!("D{i}")).collect();
        let odd_names = (d0..d).map(|i| format!("D{i}")).collect();
        LieSuperalgebra::from_table(name, self.field, even_names, odd_names, table)
    }
}

/// The centroid: even maps commuting with all bracket multiplications,
/// φ[x, y] = [φx, y] = [x, φy]. It always contains the identity, and its
/// root-space splittings cut a centerless algebra into ideal summands.
pub fn centroid(l: &LieSuperalgebra) -> GradedEndSpace {
    let n = l.dim();
    let positions = BlockPositions::new(l.dims(), Parity::Even, l.field());
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let w = l.bracket_basis(i, j);
            // φ[e_i,e_j] − [φe_i, e_j] = 0 and φ[e_i,e_j] − [e_i, φe_j] = 0
            for side in 0..2 {
                for r in 0..n {
                    let mut row = positions.zero_row();
                    let mut nonzero = false;
                    for (c, wc) in w.iter().enumerate() {
                        if let Some(t) = positions.index_of(r, c) {
                            if !wc.is_zero() {
                                row[t] = &row[t] + wc;
                                nonzero = true;
                            }
                        }
                    }
                    for a in 0..n {
                        let coeff = if side == 0 {
                            l.structure_constant(a, j, r).clone()
                        } else {
                            l.structure_constant(i, a, r).clone()
                        };
                        if coeff.is_zero() {
                            continue;
                        }
                        let col = if side == 0 { i } else { j };
                        if let Some(t) = positions.index_of(a, col) {
                            row[t] = &row[t] - &coeff;
                            nonzero = true;
                        }
                    }
                    if nonzero {
                        rows.push(row);
                    }
                }
            }
        }
    }
    let even = positions.kernel_maps(rows);
    GradedEndSpace::new_canonical(l.dims(), l.field(), even, Vec::new())
}
