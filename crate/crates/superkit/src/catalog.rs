//! Built-in example algebras and the supermatrix realization backend.
//!
//! Matrix-realized algebras never hard-code their structure constants: the
//! constants are extracted from supercommutators of explicit supermatrices
//! and then re-validated, so the table and the realization check each other.

use crate::algebra::{AlgebraBuilder, LieSuperalgebra};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linmap::{GradedDim, Parity};
use crate::matrix::Matrix;

/// A square matrix split into blocks by a grading of its index set; the
/// realization space gl(m|n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperMatrix {
    block: GradedDim,
    entries: Matrix,
}

impl SuperMatrix {
    pub fn zero(block: GradedDim, field: FieldSpec) -> SuperMatrix {
        SuperMatrix {
            block,
            entries: Matrix::zero(block.total(), block.total(), field),
        }
    }

    pub fn from_entries(block: GradedDim, entries: Matrix) -> Result<SuperMatrix> {
        if entries.rows() != block.total() || entries.cols() != block.total() {
            return Err(Error::Shape(format!(
                "supermatrix of block size {} needs a {}x{} matrix",
                block,
                block.total(),
                block.total()
            )));
        }
        Ok(SuperMatrix { block, entries })
    }

    pub fn from_rows(block: GradedDim, field: FieldSpec, rows: &[&[i64]]) -> SuperMatrix {
        let n = block.total();
        assert_eq!(rows.len(), n);
        let entries = Matrix::from_fn(n, n, field, |r, c| field.integer(rows[r][c]));
        SuperMatrix { block, entries }
    }

    /// The elementary matrix E_{rc}.
    pub fn elementary(block: GradedDim, r: usize, c: usize, field: FieldSpec) -> SuperMatrix {
        let mut m = Matrix::zero(block.total(), block.total(), field);
        m.set(r, c, Scalar::one(field));
        SuperMatrix { block, entries: m }
    }

    pub fn block(&self) -> GradedDim {
        self.block
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn field(&self) -> FieldSpec {
        self.entries.field()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_zero()
    }

    /// Parity from block support: diagonal blocks are even, off-diagonal odd;
    /// `None` when both are populated. The zero matrix counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut even = false;
        let mut odd = false;
        for r in 0..self.block.total() {
            for c in 0..self.block.total() {
                if !self.entries.get(r, c).is_zero() {
                    if self.block.parity_of_index(r) == self.block.parity_of_index(c) {
                        even = true;
                    } else {
                        odd = true;
                    }
                }
            }
        }
        match (even, odd) {
            (_, false) => Some(Parity::Even),
            (false, true) => Some(Parity::Odd),
            (true, true) => None,
        }
    }

    /// Supercommutator [A, B] = AB − (−1)^{|A||B|} BA; both sides must be
    /// parity-pure.
    pub fn supercommutator(&self, rhs: &SuperMatrix) -> Result<SuperMatrix> {
        let pa = self.parity().ok_or(Error::MixedParity)?;
        let pb = rhs.parity().ok_or(Error::MixedParity)?;
        let ab = self.entries.mul(&rhs.entries)?;
        let ba = rhs.entries.mul(&self.entries)?;
        let sign = Scalar::from_integer(-pa.sign_with(pb), self.field());
        Ok(SuperMatrix {
            block: self.block,
            entries: ab.add(&ba.scaled(&sign))?,
        })
    }

    fn vectorize(&self) -> Vec<Scalar> {
        self.entries.vectorize()
    }
}

/// Closes the span of parity-pure generators under the supercommutator and
/// extracts structure constants in the closed basis (reordered even-then-odd).
pub fn from_supermatrices(named: Vec<(String, SuperMatrix)>) -> Result<LieSuperalgebra> {
    let Some(first) = named.first() else {
        return Err(Error::BadParams("no generators".into()));
    };
    let block = first.1.block();
    let field = first.1.field();
    let mut basis: Vec<(String, SuperMatrix, Parity)> = Vec::new();
    for (name, m) in &named {
        if m.block() != block || m.field() != field {
            return Err(Error::Shape("generators live in different gl(m|n)".into()));
        }
        let parity = m.parity().ok_or(Error::MixedParity)?;
        basis.push((name.clone(), m.clone(), parity));
    }
    let span_columns = |basis: &[(String, SuperMatrix, Parity)]| -> Matrix {
        Matrix::from_fn(block.total() * block.total(), basis.len(), field, |r, c| {
            basis[c].1.vectorize()[r].clone()
        })
    };
    // generators must be independent before closure starts
    if span_columns(&basis).rref().rank != basis.len() {
        return Err(Error::DependentGenerators);
    }
    let mut fresh = 0usize;
    loop {
        let columns = span_columns(&basis);
        let mut added = false;
        'pairs: for a in 0..basis.len() {
            for b in 0..basis.len() {
                let s = basis[a].1.supercommutator(&basis[b].1)?;
                if s.is_zero() || columns.solve(&s.vectorize()).is_some() {
                    continue;
                }
                let parity = s.parity().ok_or(Error::MixedParity)?;
                let name = loop {
                    let candidate = format!("w{fresh}");
                    fresh += 1;
                    if basis.iter().all(|(n, _, _)| n != &candidate) {
                        break candidate;
                    }
                };
                basis.push((name, s, parity));
                added = true;
                break 'pairs;
            }
        }
        if !added {
            break;
        }
    }
    // even block first, then odd
    basis.sort_by_key(|(_, _, p)| matches!(p, Parity::Odd));
    let d0 = basis.iter().filter(|(_, _, p)| *p == Parity::Even).count();
    let d = basis.len();
    let columns = span_columns(&basis);
    let mut table = vec![vec![vec![Scalar::zero(field); d]; d]; d];
    for a in 0..d {
        for b in 0..d {
            let s = basis[a].1.supercommutator(&basis[b].1)?;
            table[a][b] = columns.solve(&s.vectorize()).ok_or(Error::NotClosed)?;
        }
    }
    let even_names = basis[..d0].iter().map(|(n, _, _)| n.clone()).collect();
    let odd_names = basis[d0..].iter().map(|(n, _, _)| n.clone()).collect();
    LieSuperalgebra::from_table(format!("gl{block}-span"), field, even_names, odd_names, table)
}

/// Abelian algebra of graded dimension (n₀|n₁).
pub fn abelian(even: usize, odd: usize, field: FieldSpec) -> Result<LieSuperalgebra> {
    let even_names: Vec<String> = (0..even).map(|i| format!("x{i}")).collect();
    let odd_names: Vec<String> = (0..odd).map(|i| format!("y{i}")).collect();
    let n = even + odd;
    let table = vec![vec![vec![Scalar::zero(field); n]; n]; n];
    LieSuperalgebra::from_table(
        format!("abelian({even}|{odd})"),
        field,
        even_names,
        odd_names,
        table,
    )
}

/// The 2-dimensional nonabelian Lie algebra [e1, e2] = e2, over any field.
pub fn aff2(field: FieldSpec) -> Result<LieSuperalgebra> {
    AlgebraBuilder::new("aff2", field, &["e1", "e2"], &[])
        .bracket("e1", "e2", &[("e2", Scalar::one(field))])?
        .build()
}

/// sl₂ with [h,e] = 2e, [h,f] = −2f, [e,f] = h; needs ½ in the field.
pub fn sl2(field: FieldSpec) -> Result<LieSuperalgebra> {
    if !field.has_half() {
        return Err(Error::BadParams(
            "sl2 over characteristic 2 degenerates ([h,e] = 2e = 0); pick a field with 1/2".into(),
        ));
    }
    AlgebraBuilder::new("sl2", field, &["h", "e", "f"], &[])
        .bracket("h", "e", &[("e", field.integer(2))])?
        .bracket("h", "f", &[("f", field.integer(-2))])?
        .bracket("e", "f", &[("h", Scalar::one(field))])?
        .build()
}

/// gl(1|1) realized by the four elementary supermatrices of gl(1|1).
pub fn gl11(field: FieldSpec) -> Result<LieSuperalgebra> {
    let block = GradedDim::new(1, 1);
    let named = vec![
        ("e11".to_string(), SuperMatrix::elementary(block, 0, 0, field)),
        ("e22".to_string(), SuperMatrix::elementary(block, 1, 1, field)),
        ("e12".to_string(), SuperMatrix::elementary(block, 0, 1, field)),
        ("e21".to_string(), SuperMatrix::elementary(block, 1, 0, field)),
    ];
    let mut alg = from_supermatrices(named)?;
    alg = rename(alg, "gl(1|1)");
    Ok(alg)
}

/// osp(1|2) inside gl(1|2): matrices preserving the bilinear form that is
/// symmetric on the 1-dimensional even part and symplectic on the odd part.
pub fn osp12(field: FieldSpec) -> Result<LieSuperalgebra> {
    if !field.has_half() {
        return Err(Error::BadParams(
            "osp(1|2) over characteristic 2 degenerates; pick a field with 1/2".into(),
        ));
    }
    let block = GradedDim::new(1, 2);
    let named = vec![
        ("h".to_string(), SuperMatrix::from_rows(block, field, &[&[0, 0, 0], &[0, 1, 0], &[0, 0, -1]])),
        ("e".to_string(), SuperMatrix::from_rows(block, field, &[&[0, 0, 0], &[0, 0, 1], &[0, 0, 0]])),
        ("f".to_string(), SuperMatrix::from_rows(block, field, &[&[0, 0, 0], &[0, 0, 0], &[0, 1, 0]])),
        ("x".to_string(), SuperMatrix::from_rows(block, field, &[&[0, 1, 0], &[0, 0, 0], &[1, 0, 0]])),
        ("y".to_string(), SuperMatrix::from_rows(block, field, &[&[0, 0, 1], &[-1, 0, 0], &[0, 0, 0]])),
    ];
    let mut alg = from_supermatrices(named)?;
    if alg.dim() != 5 {
        return Err(Error::Shape(format!(
            "osp(1|2) realization closed to dimension {}",
            alg.dim()
        )));
    }
    alg = rename(alg, "osp(1|2)");
    Ok(alg)
}

/// Super Heisenberg algebra: [p_i, q_i] = z on the even side and
/// [t_j, t_j] = z on the odd side, z central.
pub fn heisenberg(pairs: usize, odd: usize, field: FieldSpec) -> Result<LieSuperalgebra> {
    let mut even_names: Vec<String> = Vec::new();
    for i in 0..pairs {
        even_names.push(format!("p{i}"));
    }
    for i in 0..pairs {
        even_names.push(format!("q{i}"));
    }
    even_names.push("z".to_string());
    let odd_names: Vec<String> = (0..odd).map(|i| format!("t{i}")).collect();
    let even_refs: Vec<&str> = even_names.iter().map(String::as_str).collect();
    let odd_refs: Vec<&str> = odd_names.iter().map(String::as_str).collect();
    let mut b = AlgebraBuilder::new(
        format!("heisenberg({pairs}|{odd})"),
        field,
        &even_refs,
        &odd_refs,
    );
    for i in 0..pairs {
        b = b.bracket(&format!("p{i}"), &format!("q{i}"), &[("z", Scalar::one(field))])?;
    }
    for j in 0..odd {
        let t = format!("t{j}");
        b = b.bracket(&t, &t, &[("z", Scalar::one(field))])?;
    }
    b.build()
}

/// The Remark-style characteristic-2 example: aff₂ over 𝔽₂, where the
/// identity map is a triple derivation but not a derivation.
pub fn char2_nonabelian() -> Result<LieSuperalgebra> {
    let f2 = FieldSpec::prime_field(2)?;
    let mut alg = aff2(f2)?;
    alg = rename(alg, "char2_nonabelian");
    Ok(alg)
}

fn rename(alg: LieSuperalgebra, name: &str) -> LieSuperalgebra {
    // rebuild with the catalog name; the table is already validated
    let even: Vec<String> = alg.basis_names()[..alg.even_dim()].to_vec();
    let odd: Vec<String> = alg.basis_names()[alg.even_dim()..].to_vec();
    let n = alg.dim();
    let mut table = vec![vec![vec![Scalar::zero(alg.field()); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            table[i][j] = alg.bracket_basis(i, j);
        }
    }
    LieSuperalgebra::from_table(name, alg.field(), even, odd, table).expect("validated table")
}

/// Resolves a catalog spec like `sl2(q)`, `abelian(2|1,f5)`, `osp12`,
/// `heisenberg(1|1)` or `char2_nonabelian`. The field defaults to ℚ.
pub fn builtin(spec: &str) -> Result<LieSuperalgebra> {
    let spec = spec.trim();
    let (name, args) = match spec.split_once('(') {
        None => (spec, Vec::new()),
        Some((name, rest)) => {
            let Some(inner) = rest.strip_suffix(')') else {
                return Err(Error::BadParams(format!("unbalanced parentheses in {spec:?}")));
            };
            (
                name.trim(),
                inner
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .collect(),
            )
        }
    };
    let mut dims: Option<(usize, usize)> = None;
    let mut field: Option<FieldSpec> = None;
    for arg in &args {
        if let Some((a, b)) = arg.split_once('|') {
            let parse = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::BadParams(format!("bad dimension {s:?}")))
            };
            dims = Some((parse(a)?, parse(b)?));
        } else {
            field = Some(parse_field(arg)?);
        }
    }
    let field = field.unwrap_or(FieldSpec::Rationals);
    let need_dims = || dims.ok_or_else(|| Error::BadParams(format!("{name} needs dimensions n0|n1")));
    match name {
        "abelian" => {
            let (n0, n1) = need_dims()?;
            abelian(n0, n1, field)
        }
        "aff2" => aff2(field),
        "sl2" => sl2(field),
        "gl11" => gl11(field),
        "osp12" => osp12(field),
        // the parenthesized spellings gl(1|1) and osp(1|2) parse as a name
        // plus dimensions
        "gl" => match need_dims()? {
            (1, 1) => gl11(field),
            other => Err(Error::BadParams(format!(
                "only gl(1|1) is in the catalog, not gl({}|{})",
                other.0, other.1
            ))),
        },
        "osp" => match need_dims()? {
            (1, 2) => osp12(field),
            other => Err(Error::BadParams(format!(
                "only osp(1|2) is in the catalog, not osp({}|{})",
                other.0, other.1
            ))),
        },
        "heisenberg" => {
            let (n, m) = need_dims()?;
            heisenberg(n, m, field)
        }
        "char2_nonabelian" => {
            if !args.is_empty() {
                return Err(Error::BadParams("char2_nonabelian takes no parameters".into()));
            }
            char2_nonabelian()
        }
        other => Err(Error::UnknownName(other.to_string())),
    }
}

/// All catalog names, for listings and exhaustive tests.
pub fn builtin_names() -> Vec<&'static str> {
    vec![
        "abelian(2|1)",
        "aff2(q)",
        "sl2(q)",
        "gl11(q)",
        "osp12(q)",
        "heisenberg(1|1)",
        "char2_nonabelian",
    ]
}

pub fn parse_field(token: &str) -> Result<FieldSpec> {
    let t = token.trim();
    if t.eq_ignore_ascii_case("q") {
        return Ok(FieldSpec::Rationals);
    }
    if let Some(p) = t.strip_prefix('f').or_else(|| t.strip_prefix('F')) {
        let p: u64 = p
            .parse()
            .map_err(|_| Error::BadParams(format!("bad field token {token:?}")))?;
        return FieldSpec::prime_field(p);
    }
    Err(Error::BadParams(format!("bad field token {token:?}")))
}
