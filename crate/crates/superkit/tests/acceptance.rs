//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! (visible with `cargo test -- --nocapture`). Everything is exact
//! arithmetic; the expected values are frozen from independent oracles that
//! live in this file, not from the solvers they check.

use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use superkit::algebra::direct_sum;
use superkit::catalog;
use superkit::derivations::{
    delta_of_triple_derivation, delta_of_triple_derivation_ordered, derivation_space,
    homogeneous_pairs, inner_derivation_space, is_derivation, tder_centralizer_of_inner,
    triple_derivation_space, verify_theorem_one,
};
use superkit::document::{algebra_from_json, algebra_to_json};
use superkit::endspace::GradedEndSpace;
use superkit::triplehom::{decompose_triple_hom, TripleHomVerdict};
use superkit::{
    Decomposition, FieldSpec, GradedDim, LieSuperalgebra, LinearMap, Matrix, Parity, Scalar,
    Subspace, ViolationKind,
};

const Q: FieldSpec = FieldSpec::Rationals;

fn criterion(number: usize, name: &str, budget: Duration, body: impl FnOnce()) {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    let status = if outcome.is_ok() { "PASS" } else { "FAIL" };
    println!("acceptance {number} ({name}): {status} in {elapsed:.2?}");
    if let Err(panic) = outcome {
        resume_unwind(panic);
    }
    assert!(
        elapsed <= budget,
        "criterion {number} took {elapsed:.2?}, budget {budget:.2?}"
    );
}

fn table_of(l: &LieSuperalgebra) -> Vec<Vec<Vec<Scalar>>> {
    let n = l.dim();
    (0..n)
        .map(|i| (0..n).map(|j| l.bracket_basis(i, j)).collect())
        .collect()
}

#[test]
fn acceptance_1_axiom_validation() {
    criterion(1, "axiom validation", Duration::from_secs(1), || {
        for name in catalog::builtin_names() {
            let l = catalog::builtin(name).unwrap();
            assert!(l.validate_structure().is_valid(), "{name}");
        }
        // every single-entry mutation of osp(1|2) must be caught by the
        // skew or Jacobi check
        let osp = catalog::osp12(Q).unwrap();
        let n = osp.dim();
        let even: Vec<String> = osp.basis_names()[..osp.even_dim()].to_vec();
        let odd: Vec<String> = osp.basis_names()[osp.even_dim()..].to_vec();
        let base = table_of(&osp);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut table = base.clone();
                    table[i][j][k] = &table[i][j][k] + &Q.one();
                    let mutant = LieSuperalgebra::from_table_unvalidated(
                        "osp-mutant",
                        Q,
                        even.clone(),
                        odd.clone(),
                        table,
                    )
                    .unwrap();
                    let report = mutant.validate_structure();
                    assert!(
                        report.violations.iter().any(|v| matches!(
                            v.kind,
                            ViolationKind::Jacobi | ViolationKind::SkewSymmetry
                        )),
                        "mutation at ({i},{j},{k}) produced no jacobi/skew witness"
                    );
                }
            }
        }
    });
}

/// Independent brute-force nullspace oracle: instantiate every elementary
/// matrix allowed by the parity blocks, evaluate the defining identity on
/// all pairs (Leibniz) or triples (triple derivations) through the bilinear
/// bracket, and take the kernel of the stacked residuals.
fn oracle_space(l: &LieSuperalgebra, triple: bool) -> GradedEndSpace {
    let n = l.dim();
    let field = l.field();
    let solve = |parity: Parity| -> Vec<LinearMap> {
        let mut positions = Vec::new();
        for r in 0..n {
            for c in 0..n {
                if l.dims().parity_of_index(r) == l.dims().parity_of_index(c).compose(parity) {
                    positions.push((r, c));
                }
            }
        }
        let residual = |map: &LinearMap| -> Vec<Scalar> {
            let mut out = Vec::new();
            for i in 0..n {
                let ei = l.basis_element(i).into_coords();
                let s1 = Scalar::from_integer(parity.sign_with(l.basis_parity(i)), field);
                for j in 0..n {
                    let ej = l.basis_element(j).into_coords();
                    let w = l.bracket_coords(&ei, &ej);
                    if triple {
                        let s2 = Scalar::from_integer(
                            parity.sign_with(l.basis_parity(i).compose(l.basis_parity(j))),
                            field,
                        );
                        for k in 0..n {
                            let ek = l.basis_element(k).into_coords();
                            let lhs = map.apply(&l.bracket_coords(&w, &ek));
                            let t1 = l.bracket_coords(
                                &l.bracket_coords(&map.apply(&ei), &ej),
                                &ek,
                            );
                            let t2 = l.bracket_coords(
                                &l.bracket_coords(&ei, &map.apply(&ej)),
                                &ek,
                            );
                            let t3 = l.bracket_coords(&w, &map.apply(&ek));
                            for r in 0..n {
                                let rhs = &(&t1[r] + &(&s1 * &t2[r])) + &(&s2 * &t3[r]);
                                out.push(&lhs[r] - &rhs);
                            }
                        }
                    } else {
                        let lhs = map.apply(&w);
                        let t1 = l.bracket_coords(&map.apply(&ei), &ej);
                        let t2 = l.bracket_coords(&ei, &map.apply(&ej));
                        for r in 0..n {
                            let rhs = &t1[r] + &(&s1 * &t2[r]);
                            out.push(&lhs[r] - &rhs);
                        }
                    }
                }
            }
            out
        };
        let columns: Vec<Vec<Scalar>> = positions
            .iter()
            .map(|&(r, c)| {
                let mut m = Matrix::zero(n, n, field);
                m.set(r, c, Scalar::one(field));
                let map = LinearMap::new(l.dims(), l.dims(), parity, m).unwrap();
                residual(&map)
            })
            .collect();
        let rows = if columns.is_empty() { 0 } else { columns[0].len() };
        let system = Matrix::from_fn(rows, positions.len(), field, |r, c| columns[c][r].clone());
        system
            .kernel()
            .basis_rows()
            .map(|coeffs| {
                let mut m = Matrix::zero(n, n, field);
                for (t, &(r, c)) in positions.iter().enumerate() {
                    m.set(r, c, coeffs[t].clone());
                }
                LinearMap::new(l.dims(), l.dims(), parity, m).unwrap()
            })
            .collect()
    };
    GradedEndSpace::new_canonical(l.dims(), field, solve(Parity::Even), solve(Parity::Odd))
}

#[test]
fn acceptance_2_theorem_one_instances() {
    criterion(2, "theorem 1 instances", Duration::from_secs(10), || {
        for (name, expected_dim) in [("sl2(q)", 3usize), ("osp12(q)", 5usize)] {
            let l = catalog::builtin(name).unwrap();
            let report = verify_theorem_one(&l);
            assert!(report.hypotheses_met(), "{name}");
            assert!(report.claim_tder_eq_der.holds, "{name}");
            assert!(report.claim_tder_of_der_eq_ad.holds, "{name}");
            assert!(report.inner_invariant_under_tder_of_der, "{name}");
            // frozen dims: dim TDer = dim Der = dim L = dim ad(L)
            assert_eq!(report.der.total_dim(), expected_dim, "{name}");
            assert_eq!(report.tder.total_dim(), expected_dim, "{name}");
            assert_eq!(report.inner.total_dim(), expected_dim, "{name}");
            // independent oracle: elementary-matrix residual nullspaces
            assert_eq!(oracle_space(&l, false), report.der, "{name} der oracle");
            assert_eq!(oracle_space(&l, true), report.tder, "{name} tder oracle");
        }
    });
}

#[test]
fn acceptance_3_char2_counterexample() {
    criterion(3, "characteristic-2 counterexample", Duration::from_secs(1), || {
        let l = catalog::char2_nonabelian().unwrap();
        let f2 = l.field();
        let id = LinearMap::identity(l.dims(), f2);
        let der = derivation_space(&l);
        let tder = triple_derivation_space(&l);
        assert!(tder.contains_map(&id), "identity is a triple derivation");
        assert!(!der.contains_map(&id), "identity is not a derivation");

        // full enumeration of all 2^4 candidate matrices over F2
        let mut der_maps = Vec::new();
        let mut tder_maps = Vec::new();
        for bits in 0..16u32 {
            let mut m = Matrix::zero(2, 2, f2);
            for (pos, (r, c)) in [(0, 0), (0, 1), (1, 0), (1, 1)].iter().enumerate() {
                if bits >> pos & 1 == 1 {
                    m.set(*r, *c, f2.one());
                }
            }
            let map = LinearMap::new(l.dims(), l.dims(), Parity::Even, m).unwrap();
            if superkit::derivations::is_derivation(&l, &map) {
                der_maps.push(map.clone());
            }
            if superkit::derivations::is_triple_derivation(&l, &map) {
                tder_maps.push(map);
            }
        }
        let der_oracle = GradedEndSpace::new_canonical(l.dims(), f2, der_maps, Vec::new());
        let tder_oracle = GradedEndSpace::new_canonical(l.dims(), f2, tder_maps, Vec::new());
        assert_eq!(der_oracle, der, "brute-force Der agrees with the solver");
        assert_eq!(tder_oracle, tder, "brute-force TDer agrees with the solver");

        // the missing ½ shows up in the centralizer as well
        let centr = tder_centralizer_of_inner(&l);
        let id_coords = tder.coords_of(&id).unwrap();
        assert!(centr.contains_vector(&id_coords).unwrap());
    });
}

/// Random basis change with an invertible parity-preserving matrix; the
/// transported table is a Jacobi-valid algebra by construction, with
/// scrambled constants.
fn random_basis_change(l: &LieSuperalgebra, rng: &mut ChaCha8Rng) -> LieSuperalgebra {
    let n = l.dim();
    let field = l.field();
    let p = field.characteristic() as i64;
    let change = loop {
        let m = Matrix::from_fn(n, n, field, |r, c| {
            let same_block = l.dims().parity_of_index(r) == l.dims().parity_of_index(c);
            if same_block {
                Scalar::from_integer(rng.gen_range(0..p.max(2)), field)
            } else {
                Scalar::zero(field)
            }
        });
        if m.rref().rank == n {
            break m;
        }
    };
    let basis: Vec<Vec<Scalar>> = (0..n).map(|c| change.column(c)).collect();
    let mut table = vec![vec![Vec::new(); n]; n];
    #[allow(clippy::needless_range_loop)]
    for i in 0..n {
        for j in 0..n {
            let w = l.bracket_coords(&basis[i], &basis[j]);
            table[i][j] = change.solve(&w).expect("invertible change of basis");
        }
    }
    let even: Vec<String> = (0..l.even_dim()).map(|i| format!("v{i}")).collect();
    let odd: Vec<String> = (l.even_dim()..n).map(|i| format!("v{i}")).collect();
    LieSuperalgebra::from_table(format!("{}-twisted", l.name()), field, even, odd, table)
        .expect("transported table stays Jacobi-valid")
}

#[test]
fn acceptance_4_lemma_suite() {
    criterion(4, "lemma property suite", Duration::from_secs(60), || {
        let sl2 = catalog::sl2(Q).unwrap();
        let mut algebras = vec![
            sl2.clone(),
            catalog::osp12(Q).unwrap(),
            direct_sum(&sl2, &sl2).unwrap().algebra,
        ];
        let f5 = FieldSpec::prime_field(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(20240811);
        let seeds = [
            catalog::abelian(2, 2, f5).unwrap(),
            catalog::aff2(f5).unwrap(),
            catalog::sl2(f5).unwrap(),
            catalog::gl11(f5).unwrap(),
            catalog::heisenberg(1, 1, f5).unwrap(),
        ];
        for _ in 0..2 {
            for seed in &seeds {
                algebras.push(random_basis_change(seed, &mut rng));
            }
        }
        for l in &algebras {
            let name = l.name().to_string();
            let tder = triple_derivation_space(l);
            let der = derivation_space(l);
            let inner = inner_derivation_space(l);

            // TDer is closed under the supercommutator
            assert!(tder.is_bracket_closed(), "{name}");

            if l.is_perfect() {
                // [D, ad x] is inner for perfect L
                for d in tder.basis_maps() {
                    for i in 0..l.dim() {
                        let ad_i = l.ad(&l.basis_element(i)).unwrap();
                        let s = d.supercommutator(&ad_i).unwrap();
                        assert!(inner.contains_map(&s), "{name}");
                    }
                }
            }

            if l.is_perfect() && l.is_centerless() {
                // δ_D: well-defined under permuted expressions, a derivation,
                // and [D, ad x] = ad(δ_D x)
                let mut even_pairs = homogeneous_pairs(l, Parity::Even);
                let mut odd_pairs = homogeneous_pairs(l, Parity::Odd);
                even_pairs.shuffle(&mut rng);
                odd_pairs.shuffle(&mut rng);
                for d in tder.basis_maps() {
                    let delta = delta_of_triple_derivation(l, d).unwrap();
                    let permuted =
                        delta_of_triple_derivation_ordered(l, d, &even_pairs, &odd_pairs).unwrap();
                    assert_eq!(delta, permuted, "{name}");
                    assert!(is_derivation(l, &delta), "{name}");
                    for k in 0..l.dim() {
                        let ad_k = l.ad(&l.basis_element(k)).unwrap();
                        let lhs = d.supercommutator(&ad_k).unwrap();
                        let rhs = l.ad(&l.element(delta.column(k)).unwrap()).unwrap();
                        assert_eq!(lhs.matrix(), rhs.matrix(), "{name}");
                    }
                }
            }

            if l.is_perfect() && l.field().has_half() {
                // the centralizer of ad(L) in TDer vanishes
                assert!(tder_centralizer_of_inner(l).is_zero(), "{name}");
            }

            // [D, ad x] = ad(Dx) for derivations, on every algebra
            for d in der.basis_maps() {
                for k in 0..l.dim() {
                    let ad_k = l.ad(&l.basis_element(k)).unwrap();
                    let lhs = d.supercommutator(&ad_k).unwrap();
                    let dx = l.element(d.column(k)).unwrap();
                    let rhs = l.ad(&dx);
                    // Dx can be mixed only if d were mixed; basis maps are pure
                    assert_eq!(lhs.matrix(), rhs.unwrap().matrix(), "{name}");
                }
            }
        }
    });
}

#[test]
fn acceptance_5_triple_hom_pipeline() {
    criterion(5, "triple homomorphism pipeline", Duration::from_secs(5), || {
        let osp = catalog::osp12(Q).unwrap();
        let id = LinearMap::identity(osp.dims(), Q);
        let report = decompose_triple_hom(&id, &osp, &osp);
        assert_eq!(report.verdict, TripleHomVerdict::Homomorphism);
        assert!(report.all_checks_passed(), "{:?}", report.checks);

        let neg = id.scaled(&Q.integer(-1));
        let report = decompose_triple_hom(&neg, &osp, &osp);
        assert_eq!(report.verdict, TripleHomVerdict::AntiHomomorphism);
        assert!(report.all_checks_passed(), "{:?}", report.checks);

        // x ↦ (x, −x) into sl2 ⊕ sl2
        let sl2 = catalog::sl2(Q).unwrap();
        let sum = direct_sum(&sl2, &sl2).unwrap();
        let f = sum
            .embed_left
            .add(&sum.embed_right.scaled(&Q.integer(-1)))
            .unwrap();
        let report = decompose_triple_hom(&f, &sl2, &sum.algebra);
        assert_eq!(report.verdict, TripleHomVerdict::DirectSum);
        assert!(
            report.all_checks_passed(),
            "lemma checks inside the report: {:?}",
            report.checks
        );
        // the projection-route cross-check ran and agreed
        assert!(report
            .checks
            .iter()
            .any(|c| c.name == "projection_route_agrees" && c.passed));

        // frozen closed-form outcome: f1(x) = (x, 0), f2(x) = (0, −x),
        // M⁺ = sl2 ⊕ 0, M⁻ = 0 ⊕ sl2
        assert_eq!(report.f1.as_ref().unwrap(), &sum.embed_left);
        assert_eq!(
            report.f2.as_ref().unwrap(),
            &sum.embed_right.scaled(&Q.integer(-1))
        );
        let m_plus = report.m_plus.as_ref().unwrap();
        let m_minus = report.m_minus.as_ref().unwrap();
        // M has the same dimension and ordering as L' here (the enveloping
        // closure of the image is everything)
        let left = Subspace::from_rows(
            (0..3).map(|c| sum.embed_left.column(c)).collect(),
            6,
            Q,
        );
        let right = Subspace::from_rows(
            (0..3).map(|c| sum.embed_right.column(c)).collect(),
            6,
            Q,
        );
        let env = report.enveloping.as_ref().unwrap();
        let in_m = |s: &Subspace| {
            Subspace::from_rows(
                s.basis_rows().map(|v| env.inclusion.apply(v)).collect(),
                6,
                Q,
            )
        };
        assert_eq!(in_m(m_plus), left);
        assert_eq!(in_m(m_minus), right);
        // δ_f(x) = (x, x)
        let delta = report.delta_f.as_ref().unwrap();
        let expected = sum.embed_left.add(&sum.embed_right).unwrap();
        assert_eq!(
            env.inclusion.compose(delta).unwrap().matrix(),
            expected.matrix()
        );
    });
}

#[test]
fn acceptance_6_decomposition() {
    criterion(6, "indecomposable decomposition", Duration::from_secs(5), || {
        let sl2 = catalog::sl2(Q).unwrap();
        let osp = catalog::osp12(Q).unwrap();
        let sum = direct_sum(&sl2, &osp).unwrap().algebra;
        let Decomposition::Ideals { ideals, projections } =
            sum.decompose_indecomposable().unwrap()
        else {
            panic!("sum of simple pieces must decompose");
        };
        let mut dims: Vec<usize> = ideals.iter().map(Subspace::dim).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![3, 5]);
        // orthogonal idempotent projections summing to the identity
        let id = LinearMap::identity(sum.dims(), Q);
        let mut total = LinearMap::zero(sum.dims(), sum.dims(), Parity::Even, Q);
        for p in &projections {
            assert_eq!(p.parity(), Parity::Even);
            assert_eq!(&p.compose(p).unwrap(), p);
            total = total.add(p).unwrap();
        }
        assert_eq!(total, id);
        for (a, p) in projections.iter().enumerate() {
            for (b, q) in projections.iter().enumerate() {
                if a != b {
                    assert!(p.compose(q).unwrap().is_zero());
                }
            }
        }
        // the pieces really are complementary commuting ideals
        for ideal in &ideals {
            assert!(sum.is_ideal(ideal).unwrap());
        }
        assert!(ideals[0].intersect(&ideals[1]).unwrap().is_zero());
        assert!(sum.bracket_span(&ideals[0], &ideals[1]).unwrap().is_zero());
        assert!(ideals[0].sum(&ideals[1]).unwrap().is_full());
    });
}

#[test]
fn acceptance_7_round_trip() {
    criterion(7, "document round-trip", Duration::from_secs(1), || {
        for name in catalog::builtin_names() {
            let l = catalog::builtin(name).unwrap();
            let first = algebra_to_json(&l);
            let reloaded = algebra_from_json(&first).unwrap();
            let second = algebra_to_json(&reloaded);
            assert_eq!(first, second, "{name}: save∘load must be bit-exact");
            assert_eq!(reloaded, l, "{name}: load∘save must be the identity");
        }
        // graded dims survive the trip
        let h = catalog::heisenberg(1, 2, Q).unwrap();
        let reloaded = algebra_from_json(&algebra_to_json(&h)).unwrap();
        assert_eq!(reloaded.dims(), GradedDim::new(3, 2));
    });
}
