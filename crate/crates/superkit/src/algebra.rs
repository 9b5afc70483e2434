//! Lie superalgebras given by structure constants, together with the
//! structural notions the theorems quantify over: brackets, ad, center,
//! centralizers, derived subalgebra, enveloping subalgebras, ideals and
//! direct sums.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linmap::{GradedDim, LinearMap, Parity};
use crate::matrix::Matrix;
use crate::subspace::Subspace;
use std::collections::BTreeMap;
use std::fmt;

/// A finite-dimensional Lie superalgebra over an exact field.
///
/// The basis is ordered even block then odd block, so the parity of index i
/// is a pure function of i. The bracket table is stored densely as the ad
/// matrices of the basis vectors: column j of `ad_mats[i]` is [e_i, e_j].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieSuperalgebra {
    name: String,
    field: FieldSpec,
    dims: GradedDim,
    basis_names: Vec<String>,
    ad_mats: Vec<Matrix>,
}

/// An element in basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    coords: Vec<Scalar>,
}

impl Element {
    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    ParityCompatibility,
    SkewSymmetry,
    Jacobi,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViolationKind::ParityCompatibility => write!(f, "parity-compatibility"),
            ViolationKind::SkewSymmetry => write!(f, "skew-symmetry"),
            ViolationKind::Jacobi => write!(f, "jacobi"),
        }
    }
}

/// One failed axiom instance, identified by the basis triple that broke it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl LieSuperalgebra {
    /// Builds from a dense table c[i][j][k] with [e_i, e_j] = Σ_k c[i][j][k] e_k,
    /// then validates the superalgebra axioms; an invalid table is rejected
    /// with the full violation report attached.
    pub fn from_table(
        name: impl Into<String>,
        field: FieldSpec,
        even_names: Vec<String>,
        odd_names: Vec<String>,
        table: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<LieSuperalgebra> {
        let alg = Self::from_table_unvalidated(name, field, even_names, odd_names, table)?;
        let report = alg.validate_structure();
        if !report.is_valid() {
            return Err(Error::AxiomViolation {
                report: Box::new(report),
            });
        }
        Ok(alg)
    }

    /// Shape-checks only; used to hold tables whose axioms are the thing
    /// under examination.
    pub fn from_table_unvalidated(
        name: impl Into<String>,
        field: FieldSpec,
        even_names: Vec<String>,
        odd_names: Vec<String>,
        table: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<LieSuperalgebra> {
        let dims = GradedDim::new(even_names.len(), odd_names.len());
        let n = dims.total();
        let mut basis_names = even_names;
        basis_names.extend(odd_names);
        {
            let mut seen = std::collections::BTreeSet::new();
            for name in &basis_names {
                if name.is_empty() || name.contains(',') {
                    return Err(Error::Shape(format!("invalid basis name {name:?}")));
                }
                if !seen.insert(name) {
                    return Err(Error::Shape(format!("duplicate basis name {name:?}")));
                }
            }
        }
        if table.len() != n {
            return Err(Error::Shape(format!(
                "bracket table has {} rows for a {n}-dimensional algebra",
                table.len()
            )));
        }
        let mut ad_mats = Vec::with_capacity(n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Shape(format!("table row {i} has length {}", row.len())));
            }
            for (j, entry) in row.iter().enumerate() {
                if entry.len() != n {
                    return Err(Error::Shape(format!(
                        "bracket [{i},{j}] has {} coordinates",
                        entry.len()
                    )));
                }
                for c in entry {
                    if c.field() != field {
                        return Err(Error::FieldMismatch(c.field().to_string(), field.to_string()));
                    }
                }
            }
            ad_mats.push(Matrix::from_fn(n, n, field, |k, j| table[i][j][k].clone()));
        }
        Ok(LieSuperalgebra {
            name: name.into(),
            field,
            dims,
            basis_names,
            ad_mats,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dims(&self) -> GradedDim {
        self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.total()
    }

    pub fn even_dim(&self) -> usize {
        self.dims.even
    }

    pub fn odd_dim(&self) -> usize {
        self.dims.odd
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn basis_name(&self, i: usize) -> &str {
        &self.basis_names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis_names.iter().position(|n| n == name)
    }

    pub fn basis_parity(&self, i: usize) -> Parity {
        self.dims.parity_of_index(i)
    }

    /// c[i][j][k], the e_k-coefficient of [e_i, e_j].
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        self.ad_mats[i].get(k, j)
    }

    /// Coordinates of [e_i, e_j].
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        self.ad_mats[i].column(j)
    }

    /// Matrix of ad e_i.
    pub fn ad_basis(&self, i: usize) -> &Matrix {
        &self.ad_mats[i]
    }

    pub fn zero_element(&self) -> Element {
        Element {
            coords: vec![Scalar::zero(self.field); self.dim()],
        }
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut coords = vec![Scalar::zero(self.field); self.dim()];
        coords[i] = Scalar::one(self.field);
        Element { coords }
    }

    pub fn element(&self, coords: Vec<Scalar>) -> Result<Element> {
        self.check_coords(&coords)?;
        Ok(Element { coords })
    }

    fn check_coords(&self, coords: &[Scalar]) -> Result<()> {
        if coords.len() != self.dim() {
            return Err(Error::AlgebraMismatch(format!(
                "{} coordinates for a {}-dimensional algebra",
                coords.len(),
                self.dim()
            )));
        }
        for c in coords {
            if c.field() != self.field {
                return Err(Error::AlgebraMismatch(format!(
                    "coordinate over {} in an algebra over {}",
                    c.field(),
                    self.field
                )));
            }
        }
        Ok(())
    }

    /// Parity of an element from its support; `None` means mixed. The zero
    /// element counts as even.
    pub fn parity_of(&self, el: &Element) -> Option<Parity> {
        let mut even = false;
        let mut odd = false;
        for (i, c) in el.coords.iter().enumerate() {
            if !c.is_zero() {
                match self.basis_parity(i) {
                    Parity::Even => even = true,
                    Parity::Odd => odd = true,
                }
            }
        }
        match (even, odd) {
            (_, false) => Some(Parity::Even),
            (false, true) => Some(Parity::Odd),
            (true, true) => None,
        }
    }

    /// Checks graded skew-symmetry, the graded Jacobi identity, and parity
    /// compatibility of the table on all basis triples, exactly as stated;
    /// no extra axioms are imposed in small characteristic.
    pub fn validate_structure(&self) -> ValidationReport {
        let n = self.dim();
        let mut violations = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let pair_parity = self.basis_parity(i).compose(self.basis_parity(j));
                for k in 0..n {
                    if !self.structure_constant(i, j, k).is_zero()
                        && self.basis_parity(k) != pair_parity
                    {
                        violations.push(Violation {
                            kind: ViolationKind::ParityCompatibility,
                            i,
                            j,
                            k,
                        });
                    }
                }
            }
        }
        for i in 0..n {
            for j in i..n {
                let sign = self.basis_parity(i).sign_with(self.basis_parity(j));
                let sign = Scalar::from_integer(sign, self.field);
                for k in 0..n {
                    let lhs = self.structure_constant(i, j, k);
                    let rhs = self.structure_constant(j, i, k);
                    if !(lhs + &(&sign * rhs)).is_zero() {
                        violations.push(Violation {
                            kind: ViolationKind::SkewSymmetry,
                            i,
                            j,
                            k,
                        });
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let sign = self.basis_parity(i).sign_with(self.basis_parity(j));
                let sign = Scalar::from_integer(sign, self.field);
                for k in 0..n {
                    // [e_i,[e_j,e_k]] - [[e_i,e_j],e_k] - (-1)^{|i||j|}[e_j,[e_i,e_k]]
                    let lhs = self.ad_mats[i].apply(&self.bracket_basis(j, k));
                    let t1 = self.bracket_coords_basis_right(&self.bracket_basis(i, j), k);
                    let t2 = self.ad_mats[j].apply(&self.bracket_basis(i, k));
                    let ok = lhs
                        .iter()
                        .zip(t1.iter().zip(t2.iter()))
                        .all(|(l, (a, b))| (l - &(a + &(&sign * b))).is_zero());
                    if !ok {
                        violations.push(Violation {
                            kind: ViolationKind::Jacobi,
                            i,
                            j,
                            k,
                        });
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// [v, e_k] for a coordinate vector v.
    fn bracket_coords_basis_right(&self, v: &[Scalar], k: usize) -> Vec<Scalar> {
        let mut acc = vec![Scalar::zero(self.field); self.dim()];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (a, c) in acc.iter_mut().zip(self.bracket_basis(i, k)) {
                *a = &*a + &(vi * &c);
            }
        }
        acc
    }

    /// Bilinear extension of the structure table to coordinate vectors.
    pub fn bracket_coords(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut acc = vec![Scalar::zero(self.field); self.dim()];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let col = self.ad_mats[i].apply(y);
            for (a, c) in acc.iter_mut().zip(col) {
                *a = &*a + &(xi * &c);
            }
        }
        acc
    }

    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check_coords(&x.coords)?;
        self.check_coords(&y.coords)?;
        Ok(Element {
            coords: self.bracket_coords(&x.coords, &y.coords),
        })
    }

    /// ad x : z ↦ [x, z] as a parity-tagged map; x must be homogeneous.
    pub fn ad(&self, x: &Element) -> Result<LinearMap> {
        self.check_coords(&x.coords)?;
        let parity = self.parity_of(x).ok_or(Error::MixedParity)?;
        let mut m = Matrix::zero(self.dim(), self.dim(), self.field);
        for (i, xi) in x.coords.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            m = m.add(&self.ad_mats[i].scaled(xi))?;
        }
        LinearMap::new(self.dims, self.dims, parity, m)
    }

    /// Span of all brackets of basis pairs: the derived subalgebra [L, L].
    pub fn derived_subalgebra(&self) -> Subspace {
        let n = self.dim();
        let mut rows = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                rows.push(self.bracket_basis(i, j));
            }
        }
        Subspace::from_rows(rows, n, self.field)
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_subalgebra().is_full()
    }

    /// Z(L), as the kernel of the stacked ad matrices.
    pub fn center(&self) -> Subspace {
        let n = self.dim();
        if n == 0 {
            return Subspace::zero(0, self.field);
        }
        let mut stacked = self.ad_mats[0].clone();
        for m in &self.ad_mats[1..] {
            stacked = stacked.vstack(m).expect("uniform ad shapes");
        }
        stacked.kernel()
    }

    pub fn is_centerless(&self) -> bool {
        self.center().is_zero()
    }

    /// C_L(S) = {x : [x, s] = 0 for all s in S}.
    pub fn centralizer(&self, s: &Subspace) -> Result<Subspace> {
        self.check_subspace(s)?;
        let n = self.dim();
        if s.is_zero() || n == 0 {
            return Ok(Subspace::full(n, self.field));
        }
        // rows of the system: for each basis vector s_r of S, the matrix
        // whose column i is [e_i, s_r]
        let mut stacked: Option<Matrix> = None;
        for row in s.basis_rows() {
            let block = Matrix::from_fn(n, n, self.field, |k, i| {
                self.ad_mats[i].apply(row)[k].clone()
            });
            stacked = Some(match stacked {
                None => block,
                Some(prev) => prev.vstack(&block)?,
            });
        }
        Ok(stacked.expect("nonzero subspace").kernel())
    }

    fn check_subspace(&self, s: &Subspace) -> Result<()> {
        if s.ambient_dim() != self.dim() || s.field() != self.field {
            return Err(Error::AmbientMismatch(s.ambient_dim(), self.dim()));
        }
        Ok(())
    }

    /// Span of pairwise brackets of two subspaces.
    pub fn bracket_span(&self, u: &Subspace, v: &Subspace) -> Result<Subspace> {
        self.check_subspace(u)?;
        self.check_subspace(v)?;
        let mut rows = Vec::new();
        for a in u.basis_rows() {
            for b in v.basis_rows() {
                rows.push(self.bracket_coords(a, b));
            }
        }
        Ok(Subspace::from_rows(rows, self.dim(), self.field))
    }

    /// Least bracket-closed subspace containing S, by iterating
    /// W ← W + [W, W] to the fixed point (reached within dim L steps).
    pub fn enveloping_closure(&self, s: &Subspace) -> Result<Subspace> {
        self.check_subspace(s)?;
        let mut w = s.clone();
        loop {
            let grown = w.sum(&self.bracket_span(&w, &w)?)?;
            if grown.dim() == w.dim() {
                return Ok(w);
            }
            w = grown;
        }
    }

    /// Whether [L, U] ⊆ U.
    pub fn is_ideal(&self, u: &Subspace) -> Result<bool> {
        self.check_subspace(u)?;
        for i in 0..self.dim() {
            for row in u.basis_rows() {
                if !u.contains_vector(&self.ad_mats[i].apply(row))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Re-expresses the brackets of a bracket-closed graded subspace in its
    /// canonical basis, yielding a standalone algebra plus the inclusion map
    /// back into this one.
    pub fn induced_subalgebra(&self, u: &Subspace) -> Result<(LieSuperalgebra, LinearMap)> {
        self.check_subspace(u)?;
        if !u.contains(&self.bracket_span(u, u)?)? {
            return Err(Error::NotClosed);
        }
        // canonical RREF rows of a graded subspace are parity-pure
        let mut even_rows = Vec::new();
        let mut odd_rows = Vec::new();
        for row in u.basis_rows() {
            match self.row_parity(row) {
                Some(Parity::Even) => even_rows.push(row.to_vec()),
                Some(Parity::Odd) => odd_rows.push(row.to_vec()),
                None => return Err(Error::NotGraded),
            }
        }
        let (d0, d1) = (even_rows.len(), odd_rows.len());
        let d = d0 + d1;
        let basis: Vec<Vec<Scalar>> = even_rows.into_iter().chain(odd_rows).collect();
        // sub-coordinates read off at pivot columns of the RREF rows
        let pivots: Vec<usize> = basis
            .iter()
            .map(|row| row.iter().position(|s| !s.is_zero()).expect("nonzero row"))
            .collect();
        let coords_in_sub = |v: &[Scalar]| -> Vec<Scalar> { pivots.iter().map(|&p| v[p].clone()).collect() };
        let mut table = vec![vec![vec![Scalar::zero(self.field); d]; d]; d];
        for a in 0..d {
            for b in 0..d {
                let br = self.bracket_coords(&basis[a], &basis[b]);
                if !u.contains_vector(&br)? {
                    return Err(Error::NotClosed);
                }
                table[a][b] = coords_in_sub(&br);
            }
        }
        let even_names = (0..d0).map(|i| format!("m{i}")).collect();
        let odd_names = (d0..d).map(|i| format!("m{i}")).collect();
        let sub = LieSuperalgebra::from_table(
            format!("{}[{}d]", self.name, d),
            self.field,
            even_names,
            odd_names,
            table,
        )?;
        let inclusion_matrix = Matrix::from_fn(self.dim(), d, self.field, |r, c| basis[c][r].clone());
        let inclusion = LinearMap::new(GradedDim::new(d0, d1), self.dims, Parity::Even, inclusion_matrix)?;
        Ok((sub, inclusion))
    }

    fn row_parity(&self, row: &[Scalar]) -> Option<Parity> {
        self.parity_of(&Element { coords: row.to_vec() })
    }
}

/// A direct sum with its component embeddings.
#[derive(Debug, Clone)]
pub struct DirectSum {
    pub algebra: LieSuperalgebra,
    pub embed_left: LinearMap,
    pub embed_right: LinearMap,
}

/// Block-diagonal direct sum; the summands' bases are concatenated and
/// reordered to the even-then-odd convention, basis names get a ".1"/".2"
/// suffix so they stay distinct.
pub fn direct_sum(left: &LieSuperalgebra, right: &LieSuperalgebra) -> Result<DirectSum> {
    if left.field() != right.field() {
        return Err(Error::FieldMismatch(
            left.field().to_string(),
            right.field().to_string(),
        ));
    }
    let field = left.field();
    let dims = GradedDim::new(
        left.even_dim() + right.even_dim(),
        left.odd_dim() + right.odd_dim(),
    );
    let n = dims.total();
    let map_left = |i: usize| -> usize {
        if i < left.even_dim() {
            i
        } else {
            left.even_dim() + right.even_dim() + (i - left.even_dim())
        }
    };
    let map_right = |j: usize| -> usize {
        if j < right.even_dim() {
            left.even_dim() + j
        } else {
            left.even_dim() + right.even_dim() + left.odd_dim() + (j - right.even_dim())
        }
    };
    let mut table = vec![vec![vec![Scalar::zero(field); n]; n]; n];
    for i in 0..left.dim() {
        for j in 0..left.dim() {
            for k in 0..left.dim() {
                table[map_left(i)][map_left(j)][map_left(k)] =
                    left.structure_constant(i, j, k).clone();
            }
        }
    }
    for i in 0..right.dim() {
        for j in 0..right.dim() {
            for k in 0..right.dim() {
                table[map_right(i)][map_right(j)][map_right(k)] =
                    right.structure_constant(i, j, k).clone();
            }
        }
    }
    let mut names = vec![String::new(); n];
    for i in 0..left.dim() {
        names[map_left(i)] = format!("{}.1", left.basis_name(i));
    }
    for j in 0..right.dim() {
        names[map_right(j)] = format!("{}.2", right.basis_name(j));
    }
    let even_names = names[..dims.even].to_vec();
    let odd_names = names[dims.even..].to_vec();
    let algebra = LieSuperalgebra::from_table(
        format!("{}+{}", left.name(), right.name()),
        field,
        even_names,
        odd_names,
        table,
    )?;
    let embed = |source: &LieSuperalgebra, index_map: &dyn Fn(usize) -> usize| -> Result<LinearMap> {
        let m = Matrix::from_fn(n, source.dim(), field, |r, c| {
            if r == index_map(c) {
                Scalar::one(field)
            } else {
                Scalar::zero(field)
            }
        });
        LinearMap::new(source.dims(), dims, Parity::Even, m)
    };
    Ok(DirectSum {
        embed_left: embed(left, &map_left)?,
        embed_right: embed(right, &map_right)?,
        algebra,
    })
}

/// Incremental builder for sparse bracket tables; completes the missing
/// orientation of each pair via graded skew-symmetry and rejects pairs given
/// twice inconsistently.
#[derive(Debug, Clone)]
pub struct AlgebraBuilder {
    name: String,
    field: FieldSpec,
    dims: GradedDim,
    names: Vec<String>,
    given: BTreeMap<(usize, usize), Vec<Scalar>>,
}

impl AlgebraBuilder {
    pub fn new(
        name: impl Into<String>,
        field: FieldSpec,
        even_names: &[&str],
        odd_names: &[&str],
    ) -> AlgebraBuilder {
        let mut names: Vec<String> = even_names.iter().map(|s| s.to_string()).collect();
        names.extend(odd_names.iter().map(|s| s.to_string()));
        AlgebraBuilder {
            name: name.into(),
            field,
            dims: GradedDim::new(even_names.len(), odd_names.len()),
            names,
            given: BTreeMap::new(),
        }
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::Parse(format!("unknown basis name {name:?}")))
    }

    /// Records [a, b] = Σ coeff · target.
    pub fn bracket(mut self, a: &str, b: &str, terms: &[(&str, Scalar)]) -> Result<AlgebraBuilder> {
        let i = self.index_of(a)?;
        let j = self.index_of(b)?;
        let mut coords = vec![Scalar::zero(self.field); self.dims.total()];
        for (target, coeff) in terms {
            let k = self.index_of(target)?;
            if coeff.field() != self.field {
                return Err(Error::FieldMismatch(
                    coeff.field().to_string(),
                    self.field.to_string(),
                ));
            }
            coords[k] = coeff.clone();
        }
        if self.given.insert((i, j), coords).is_some() {
            return Err(Error::SkewConflict(a.to_string(), b.to_string()));
        }
        Ok(self)
    }

    pub fn build(self) -> Result<LieSuperalgebra> {
        let n = self.dims.total();
        let mut table = vec![vec![vec![Scalar::zero(self.field); n]; n]; n];
        for ((i, j), coords) in &self.given {
            table[*i][*j] = coords.clone();
        }
        // complete or cross-check the opposite orientation
        for ((i, j), coords) in &self.given {
            if i == j {
                continue;
            }
            let sign = self.dims.parity_of_index(*i).sign_with(self.dims.parity_of_index(*j));
            let sign = Scalar::from_integer(-sign, self.field);
            let completed: Vec<Scalar> = coords.iter().map(|c| c * &sign).collect();
            if self.given.contains_key(&(*j, *i)) {
                if table[*j][*i] != completed {
                    return Err(Error::SkewConflict(
                        self.names[*i].clone(),
                        self.names[*j].clone(),
                    ));
                }
            } else {
                table[*j][*i] = completed;
            }
        }
        let even_names = self.names[..self.dims.even].to_vec();
        let odd_names = self.names[self.dims.even..].to_vec();
        LieSuperalgebra::from_table(self.name, self.field, even_names, odd_names, table)
    }
}
