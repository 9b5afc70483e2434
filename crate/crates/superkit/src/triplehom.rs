//! Classification and decomposition of triple homomorphisms: maps f with
//! f[x,[y,z]] = [fx,[fy,fz]]. Out of a perfect algebra, into a centerless
//! enveloping image, every such map splits as a homomorphism plus an
//! anti-homomorphism landing in complementary commuting ideals.

use crate::algebra::LieSuperalgebra;
use crate::decompose::Decomposition;
use crate::derivations::{express_as_brackets_ordered, homogeneous_pairs};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linmap::{LinearMap, Parity};
use crate::matrix::Matrix;
use crate::subspace::Subspace;
use std::fmt;

/// How a map interacts with single brackets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapClass {
    Homomorphism,
    AntiHomomorphism,
    /// Simultaneously both, exactly when all image brackets vanish.
    Both,
    Neither,
}

impl MapClass {
    pub fn is_homomorphism(self) -> bool {
        matches!(self, MapClass::Homomorphism | MapClass::Both)
    }

    pub fn is_anti_homomorphism(self) -> bool {
        matches!(self, MapClass::AntiHomomorphism | MapClass::Both)
    }
}

impl fmt::Display for MapClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapClass::Homomorphism => write!(f, "homomorphism"),
            MapClass::AntiHomomorphism => write!(f, "anti-homomorphism"),
            MapClass::Both => write!(f, "both"),
            MapClass::Neither => write!(f, "neither"),
        }
    }
}

fn check_map(f: &LinearMap, l: &LieSuperalgebra, lp: &LieSuperalgebra) -> Result<()> {
    if f.domain() != l.dims() || f.codomain() != lp.dims() || f.field() != l.field() || l.field() != lp.field() {
        return Err(Error::Shape(format!(
            "map {} -> {} does not go from {} to {}",
            f.domain(),
            f.codomain(),
            l.name(),
            lp.name()
        )));
    }
    if f.parity() != Parity::Even {
        return Err(Error::OddMapUnsupported(
            "bracket-compatibility sign conventions assume a parity-preserving map".into(),
        ));
    }
    Ok(())
}

/// Checks f[x,y] = [fx, fy] and f[x,y] = (−1)^{|x||y|}[fy, fx] on all basis
/// pairs; only even maps are supported.
pub fn classify_linear_map(
    f: &LinearMap,
    l: &LieSuperalgebra,
    lp: &LieSuperalgebra,
) -> Result<MapClass> {
    check_map(f, l, lp)?;
    let n = l.dim();
    let mut hom = true;
    let mut anti = true;
    for i in 0..n {
        for j in 0..n {
            let lhs = f.apply(&l.bracket_basis(i, j));
            let forward = lp.bracket_coords(&f.column(i), &f.column(j));
            let backward = lp.bracket_coords(&f.column(j), &f.column(i));
            let sign = Scalar::from_integer(
                l.basis_parity(i).sign_with(l.basis_parity(j)),
                l.field(),
            );
            if lhs != forward {
                hom = false;
            }
            if lhs
                .iter()
                .zip(&backward)
                .any(|(a, b)| (a - &(&sign * b)) != Scalar::zero(l.field()))
            {
                anti = false;
            }
            if !hom && !anti {
                return Ok(MapClass::Neither);
            }
        }
    }
    Ok(match (hom, anti) {
        (true, true) => MapClass::Both,
        (true, false) => MapClass::Homomorphism,
        (false, true) => MapClass::AntiHomomorphism,
        (false, false) => unreachable!(),
    })
}

/// First basis triple violating f[x,[y,z]] = [fx,[fy,fz]], if any.
pub fn triple_hom_witness(
    f: &LinearMap,
    l: &LieSuperalgebra,
    lp: &LieSuperalgebra,
) -> Result<Option<(usize, usize, usize)>> {
    check_map(f, l, lp)?;
    let n = l.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let inner = l.bracket_basis(j, k);
                let mut x = vec![Scalar::zero(l.field()); n];
                x[i] = Scalar::one(l.field());
                let lhs = f.apply(&l.bracket_coords(&x, &inner));
                let rhs = lp.bracket_coords(
                    &f.column(i),
                    &lp.bracket_coords(&f.column(j), &f.column(k)),
                );
                if lhs != rhs {
                    return Ok(Some((i, j, k)));
                }
            }
        }
    }
    Ok(None)
}

pub fn is_triple_hom(f: &LinearMap, l: &LieSuperalgebra, lp: &LieSuperalgebra) -> Result<bool> {
    Ok(triple_hom_witness(f, l, lp)?.is_none())
}

/// The enveloping algebra of an image: the codomain's least bracket-closed
/// subspace containing f(L), re-expressed as a standalone algebra with its
/// inclusion map.
#[derive(Debug, Clone)]
pub struct Enveloping {
    pub algebra: LieSuperalgebra,
    pub inclusion: LinearMap,
}

pub fn enveloping_of_image(
    f: &LinearMap,
    l: &LieSuperalgebra,
    lp: &LieSuperalgebra,
) -> Result<Enveloping> {
    check_map(f, l, lp)?;
    let image = f.matrix().image();
    let closed = lp.enveloping_closure(&image)?;
    let (algebra, inclusion) = lp.induced_subalgebra(&closed)?;
    Ok(Enveloping { algebra, inclusion })
}

/// f with its codomain cut down to the enveloping algebra of its image.
pub fn restrict_to_enveloping(f: &LinearMap, env: &Enveloping) -> Result<LinearMap> {
    let m = &env.algebra;
    let incl = env.inclusion.matrix();
    let n = f.domain().total();
    let mut columns = Vec::with_capacity(n);
    for k in 0..n {
        let col = incl.solve(&f.column(k)).ok_or_else(|| {
            Error::Shape("image does not lie in the enveloping algebra".into())
        })?;
        columns.push(col);
    }
    let matrix = Matrix::from_fn(m.dim(), n, f.field(), |r, c| columns[c][r].clone());
    LinearMap::new(f.domain(), m.dims(), Parity::Even, matrix)
}

/// The homomorphism attached to a triple homomorphism of a perfect algebra
/// with centerless enveloping image: on x = Σ c·[x₁,x₂] it is
/// δ_f(x) = Σ c·[f(x₁), f(x₂)], independent of the expression; it satisfies
/// f ∘ ad x = ad_{δ_f(x)} ∘ f.
pub fn delta_f(f: &LinearMap, l: &LieSuperalgebra, env: &Enveloping) -> Result<LinearMap> {
    delta_f_ordered(
        f,
        l,
        env,
        &homogeneous_pairs(l, Parity::Even),
        &homogeneous_pairs(l, Parity::Odd),
    )
}

/// Same construction with caller-chosen pair orderings; the output must not
/// depend on them.
pub fn delta_f_ordered(
    f: &LinearMap,
    l: &LieSuperalgebra,
    env: &Enveloping,
    even_pairs: &[(usize, usize)],
    odd_pairs: &[(usize, usize)],
) -> Result<LinearMap> {
    if !l.is_perfect() {
        return Err(Error::HypothesisViolated("the domain is not perfect".into()));
    }
    let m = &env.algebra;
    if !m.is_centerless() {
        return Err(Error::HypothesisViolated(
            "the enveloping algebra of the image has nonzero center".into(),
        ));
    }
    let f_m = restrict_to_enveloping(f, env)?;
    if !is_triple_hom(&f_m, l, m)? {
        return Err(Error::NotTripleHom);
    }
    let n = l.dim();
    let mut columns = Vec::with_capacity(n);
    for k in 0..n {
        let pairs = match l.basis_parity(k) {
            Parity::Even => even_pairs,
            Parity::Odd => odd_pairs,
        };
        let expr = express_as_brackets_ordered(l, &l.basis_element(k), pairs)?;
        let mut acc = vec![Scalar::zero(l.field()); m.dim()];
        for (coeff, i, j) in &expr.terms {
            let w = m.bracket_coords(&f_m.column(*i), &f_m.column(*j));
            for (a, v) in acc.iter_mut().zip(w) {
                *a = &*a + &(coeff * &v);
            }
        }
        columns.push(acc);
    }
    let matrix = Matrix::from_fn(m.dim(), n, l.field(), |r, c| columns[c][r].clone());
    LinearMap::new(l.dims(), m.dims(), Parity::Even, matrix)
}

/// One named verification inside a report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckRecord {
    pub name: &'static str,
    pub passed: bool,
}

fn record(checks: &mut Vec<CheckRecord>, name: &'static str, passed: bool) -> bool {
    checks.push(CheckRecord { name, passed });
    passed
}

/// M⁺ = Im(f + δ_f) and M⁻ = Im(f − δ_f) in the coordinates of M, with their
/// structural facts re-verified: both are ideals, they commute, intersect
/// trivially, and sum to M.
pub fn split_m_plus_minus(
    f: &LinearMap,
    delta: &LinearMap,
    l: &LieSuperalgebra,
    env: &Enveloping,
) -> Result<(Subspace, Subspace)> {
    let (plus, minus, checks) = split_with_checks(f, delta, l, env)?;
    if let Some(failed) = checks.iter().find(|c| !c.passed) {
        return Err(Error::LemmaViolation(failed.name.to_string()));
    }
    Ok((plus, minus))
}

fn split_with_checks(
    f: &LinearMap,
    delta: &LinearMap,
    l: &LieSuperalgebra,
    env: &Enveloping,
) -> Result<(Subspace, Subspace, Vec<CheckRecord>)> {
    let m = &env.algebra;
    let f_m = restrict_to_enveloping(f, env)?;
    let plus = f_m.add(delta)?.matrix().image();
    let minus = f_m.sub(delta)?.matrix().image();
    let mut checks = Vec::new();
    record(&mut checks, "m_plus_is_ideal", m.is_ideal(&plus)?);
    record(&mut checks, "m_minus_is_ideal", m.is_ideal(&minus)?);
    record(
        &mut checks,
        "m_plus_m_minus_commute",
        m.bracket_span(&plus, &minus)?.is_zero(),
    );
    record(
        &mut checks,
        "m_plus_m_minus_intersect_trivially",
        plus.intersect(&minus)?.is_zero(),
    );
    record(
        &mut checks,
        "m_plus_plus_m_minus_is_m",
        plus.sum(&minus)?.is_full(),
    );
    let _ = l;
    Ok((plus, minus, checks))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TripleHomVerdict {
    NotTripleHom,
    Homomorphism,
    AntiHomomorphism,
    DirectSum,
    HypothesisViolated,
}

impl fmt::Display for TripleHomVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TripleHomVerdict::NotTripleHom => write!(f, "not-a-triple-homomorphism"),
            TripleHomVerdict::Homomorphism => write!(f, "homomorphism"),
            TripleHomVerdict::AntiHomomorphism => write!(f, "anti-homomorphism"),
            TripleHomVerdict::DirectSum => write!(f, "direct-sum"),
            TripleHomVerdict::HypothesisViolated => write!(f, "hypothesis-violated"),
        }
    }
}

/// Everything the decomposition pipeline produced for one map.
#[derive(Debug, Clone)]
pub struct TripleHomReport {
    pub verdict: TripleHomVerdict,
    /// Names of the failed or uncertified hypotheses.
    pub diagnostics: Vec<String>,
    pub violating_triple: Option<(usize, usize, usize)>,
    pub enveloping: Option<Enveloping>,
    /// f with codomain M.
    pub f_restricted: Option<LinearMap>,
    /// δ_f as a map L → M.
    pub delta_f: Option<LinearMap>,
    pub m_plus: Option<Subspace>,
    pub m_minus: Option<Subspace>,
    /// The summands ½(f ± δ_f) as maps into the original codomain
    /// (populated only for a DirectSum verdict).
    pub f1: Option<LinearMap>,
    pub f2: Option<LinearMap>,
    pub checks: Vec<CheckRecord>,
}

impl TripleHomReport {
    fn hypothesis_failure(diagnostics: Vec<String>) -> TripleHomReport {
        TripleHomReport {
            verdict: TripleHomVerdict::HypothesisViolated,
            diagnostics,
            violating_triple: None,
            enveloping: None,
            f_restricted: None,
            delta_f: None,
            m_plus: None,
            m_minus: None,
            f1: None,
            f2: None,
            checks: Vec::new(),
        }
    }

    pub fn all_checks_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Full pipeline: triple-homomorphism test, enveloping image, hypothesis
/// checks, δ_f, the M± split with its verifications, the closed-form verdict,
/// and the independent projection-route cross-check. Failures come back as
/// verdicts and diagnostics, never as errors.
pub fn decompose_triple_hom(
    f: &LinearMap,
    l: &LieSuperalgebra,
    lp: &LieSuperalgebra,
) -> TripleHomReport {
    if let Err(e) = check_map(f, l, lp) {
        return TripleHomReport::hypothesis_failure(vec![match e {
            Error::OddMapUnsupported(_) => "even_map".to_string(),
            other => other.to_string(),
        }]);
    }
    if !l.field().has_half() {
        return TripleHomReport::hypothesis_failure(vec!["has_half".to_string()]);
    }
    match triple_hom_witness(f, l, lp) {
        Ok(None) => {}
        Ok(Some(triple)) => {
            let mut report = TripleHomReport::hypothesis_failure(Vec::new());
            report.verdict = TripleHomVerdict::NotTripleHom;
            report.violating_triple = Some(triple);
            return report;
        }
        Err(e) => return TripleHomReport::hypothesis_failure(vec![e.to_string()]),
    }
    let env = match enveloping_of_image(f, l, lp) {
        Ok(env) => env,
        Err(e) => return TripleHomReport::hypothesis_failure(vec![e.to_string()]),
    };
    let mut diagnostics = Vec::new();
    if !l.is_perfect() {
        diagnostics.push("perfect".to_string());
    }
    if !env.algebra.is_centerless() {
        diagnostics.push("centerless".to_string());
    }
    if !diagnostics.is_empty() {
        let mut report = TripleHomReport::hypothesis_failure(diagnostics);
        report.enveloping = Some(env);
        return report;
    }
    let decomposition = env
        .algebra
        .decompose_indecomposable()
        .expect("centerless was just checked");
    if matches!(decomposition, Decomposition::Undecided) {
        diagnostics.push("decomposition_undecided".to_string());
    }

    let mut checks = Vec::new();
    let f_m = restrict_to_enveloping(f, &env).expect("enveloping contains the image");
    let delta = delta_f(f, l, &env).expect("hypotheses verified above");

    // independence of the bracket expressions: recompute under reversed orders
    let mut even_pairs = homogeneous_pairs(l, Parity::Even);
    let mut odd_pairs = homogeneous_pairs(l, Parity::Odd);
    even_pairs.reverse();
    odd_pairs.reverse();
    let delta_permuted =
        delta_f_ordered(f, l, &env, &even_pairs, &odd_pairs).expect("same hypotheses");
    record(
        &mut checks,
        "delta_independent_of_expression",
        delta_permuted == delta,
    );

    // f ∘ ad x = ad(δ_f x) ∘ f for every basis x
    let m = &env.algebra;
    let intertwines = (0..l.dim()).all(|k| {
        let lhs = f_m
            .compose(&l.ad(&l.basis_element(k)).expect("homogeneous basis"))
            .expect("endo of L");
        let delta_xk = m.element(delta.column(k)).expect("column in M");
        let rhs = m.ad(&delta_xk).expect("image of basis vector is homogeneous");
        lhs.matrix() == rhs.compose(&f_m).expect("shapes agree").matrix()
    });
    record(&mut checks, "delta_intertwines_ad", intertwines);

    record(
        &mut checks,
        "delta_is_homomorphism",
        classify_linear_map(&delta, l, m)
            .map(MapClass::is_homomorphism)
            .unwrap_or(false),
    );

    let (plus, minus, split_checks) =
        split_with_checks(f, &delta, l, &env).expect("shapes verified");
    checks.extend(split_checks);

    let half = Scalar::one(l.field())
        .checked_div(&l.field().integer(2))
        .expect("field has one half");
    let f1_m = f_m.add(&delta).expect("same shape").scaled(&half);
    let f2_m = f_m.sub(&delta).expect("same shape").scaled(&half);
    record(
        &mut checks,
        "split_sums_to_f",
        f1_m.add(&f2_m).expect("same shape") == f_m,
    );
    record(
        &mut checks,
        "f1_is_homomorphism",
        classify_linear_map(&f1_m, l, m)
            .map(MapClass::is_homomorphism)
            .unwrap_or(false),
    );
    record(
        &mut checks,
        "f2_is_anti_homomorphism",
        classify_linear_map(&f2_m, l, m)
            .map(MapClass::is_anti_homomorphism)
            .unwrap_or(false),
    );
    record(
        &mut checks,
        "f1_lands_in_m_plus",
        plus.contains(&f1_m.matrix().image()).unwrap_or(false),
    );
    record(
        &mut checks,
        "f2_lands_in_m_minus",
        minus.contains(&f2_m.matrix().image()).unwrap_or(false),
    );

    // the route through indecomposable ideals: each projection of f is a
    // homomorphism or an anti-homomorphism, and the two groups sum to f1, f2
    if let Decomposition::Ideals { projections, .. } = &decomposition {
        let mut all_classified = true;
        let mut hom_sum = LinearMap::zero(l.dims(), m.dims(), Parity::Even, l.field());
        let mut anti_sum = hom_sum.clone();
        for p in projections {
            let g = p.compose(&f_m).expect("projection of f");
            match classify_linear_map(&g, l, m) {
                Ok(class) if class.is_homomorphism() => {
                    hom_sum = hom_sum.add(&g).expect("same shape");
                }
                Ok(MapClass::AntiHomomorphism) => {
                    anti_sum = anti_sum.add(&g).expect("same shape");
                }
                _ => {
                    all_classified = false;
                }
            }
        }
        record(&mut checks, "projections_classify", all_classified);
        record(
            &mut checks,
            "projection_route_agrees",
            all_classified && hom_sum == f1_m && anti_sum == f2_m,
        );
    }

    let verdict = if minus.is_zero() {
        TripleHomVerdict::Homomorphism
    } else if plus.is_zero() {
        TripleHomVerdict::AntiHomomorphism
    } else {
        TripleHomVerdict::DirectSum
    };
    let (f1, f2) = if verdict == TripleHomVerdict::DirectSum {
        let lift = |g: &LinearMap| env.inclusion.compose(g).expect("inclusion after map");
        (Some(lift(&f1_m)), Some(lift(&f2_m)))
    } else {
        (None, None)
    };
    TripleHomReport {
        verdict,
        diagnostics,
        violating_triple: None,
        enveloping: Some(env),
        f_restricted: Some(f_m),
        delta_f: Some(delta),
        m_plus: Some(plus),
        m_minus: Some(minus),
        f1,
        f2,
        checks,
    }
}
