//! Property tests for the structural invariants: the graded Jacobi identity
//! under bilinear extension, ad as a homomorphism into endomorphisms,
//! centralizer monotonicity, the enveloping closure operator, and the fact
//! that homomorphisms, anti-homomorphisms, and their sums into complementary
//! commuting ideals are all triple homomorphisms.

use proptest::prelude::*;

use superkit::algebra::direct_sum;
use superkit::catalog;
use superkit::triplehom::{classify_linear_map, is_triple_hom, MapClass};
use superkit::{Element, FieldSpec, LieSuperalgebra, LinearMap, Parity, Scalar, Subspace};

const Q: FieldSpec = FieldSpec::Rationals;

fn catalog_algebras() -> Vec<LieSuperalgebra> {
    catalog::builtin_names()
        .iter()
        .map(|name| catalog::builtin(name).unwrap())
        .collect()
}

/// Homogeneous element of the requested parity from raw integer seeds.
fn homogeneous(l: &LieSuperalgebra, parity: Parity, seeds: &[i64]) -> Element {
    let field = l.field();
    let coords: Vec<Scalar> = (0..l.dim())
        .map(|i| {
            if l.basis_parity(i) == parity {
                field.integer(seeds[i % seeds.len()])
            } else {
                field.zero()
            }
        })
        .collect();
    l.element(coords).unwrap()
}

fn subspace_from_seeds(l: &LieSuperalgebra, seeds: &[Vec<i64>]) -> Subspace {
    let field = l.field();
    let rows: Vec<Vec<Scalar>> = seeds
        .iter()
        .map(|row| (0..l.dim()).map(|i| field.integer(row[i % row.len()])).collect())
        .collect();
    Subspace::from_rows(rows, l.dim(), field)
}

fn seeds() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, 8)
}

fn parity() -> impl Strategy<Value = Parity> {
    prop::bool::ANY.prop_map(|b| if b { Parity::Odd } else { Parity::Even })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graded_jacobi_extends_bilinearly(
        which in 0usize..7,
        px in parity(), py in parity(), pz in parity(),
        sx in seeds(), sy in seeds(), sz in seeds(),
    ) {
        let algebras = catalog_algebras();
        let l = &algebras[which % algebras.len()];
        let x = homogeneous(l, px, &sx);
        let y = homogeneous(l, py, &sy);
        let z = homogeneous(l, pz, &sz);
        let lhs = l.bracket(&x, &l.bracket(&y, &z).unwrap()).unwrap();
        let t1 = l.bracket(&l.bracket(&x, &y).unwrap(), &z).unwrap();
        let t2 = l.bracket(&y, &l.bracket(&x, &z).unwrap()).unwrap();
        let sign = Scalar::from_integer(px.sign_with(py), l.field());
        for (a, (b, c)) in lhs.coords().iter().zip(t1.coords().iter().zip(t2.coords())) {
            prop_assert!((a - &(b + &(&sign * c))).is_zero());
        }
    }

    #[test]
    fn ad_is_a_homomorphism_into_endomorphisms(
        which in 0usize..7,
        px in parity(), py in parity(),
        sx in seeds(), sy in seeds(),
    ) {
        let algebras = catalog_algebras();
        let l = &algebras[which % algebras.len()];
        let x = homogeneous(l, px, &sx);
        let y = homogeneous(l, py, &sy);
        let ad_x = l.ad(&x).unwrap();
        let ad_y = l.ad(&y).unwrap();
        let bracket = l.bracket(&x, &y).unwrap();
        let lhs = l.ad(&bracket).unwrap();
        let rhs = ad_x.supercommutator(&ad_y).unwrap();
        prop_assert_eq!(lhs.matrix(), rhs.matrix());
    }

    #[test]
    fn centralizer_is_antitone(
        which in 0usize..7,
        small in prop::collection::vec(seeds(), 0..2),
        extra in prop::collection::vec(seeds(), 0..2),
    ) {
        let algebras = catalog_algebras();
        let l = &algebras[which % algebras.len()];
        let s = subspace_from_seeds(l, &small);
        let mut all = small.clone();
        all.extend(extra);
        let t = subspace_from_seeds(l, &all);
        // S ⊆ T by construction
        prop_assert!(t.contains(&s).unwrap());
        let c_s = l.centralizer(&s).unwrap();
        let c_t = l.centralizer(&t).unwrap();
        prop_assert!(c_s.contains(&c_t).unwrap());
    }

    #[test]
    fn enveloping_closure_is_a_closure_operator(
        which in 0usize..7,
        base in prop::collection::vec(seeds(), 0..3),
        extra in prop::collection::vec(seeds(), 0..2),
    ) {
        let algebras = catalog_algebras();
        let l = &algebras[which % algebras.len()];
        let s = subspace_from_seeds(l, &base);
        let closure = l.enveloping_closure(&s).unwrap();
        // extensive
        prop_assert!(closure.contains(&s).unwrap());
        // idempotent
        prop_assert_eq!(l.enveloping_closure(&closure).unwrap(), closure.clone());
        // monotone
        let mut bigger = base.clone();
        bigger.extend(extra);
        let t = subspace_from_seeds(l, &bigger);
        prop_assert!(l
            .enveloping_closure(&t)
            .unwrap()
            .contains(&closure)
            .unwrap());
    }
}

#[test]
fn center_is_the_centralizer_of_everything() {
    for l in catalog_algebras() {
        let full = Subspace::full(l.dim(), l.field());
        assert_eq!(l.center(), l.centralizer(&full).unwrap(), "{}", l.name());
    }
}

#[test]
fn homs_antihoms_and_their_sums_are_triple_homs() {
    let sl2 = catalog::sl2(Q).unwrap();
    let osp = catalog::osp12(Q).unwrap();
    for l in [&sl2, &osp] {
        let id = LinearMap::identity(l.dims(), Q);
        let neg = id.scaled(&Q.integer(-1));
        assert_eq!(classify_linear_map(&id, l, l).unwrap(), MapClass::Homomorphism);
        assert!(is_triple_hom(&id, l, l).unwrap());
        assert_eq!(
            classify_linear_map(&neg, l, l).unwrap(),
            MapClass::AntiHomomorphism
        );
        assert!(is_triple_hom(&neg, l, l).unwrap());
    }
    // a homomorphism into one ideal plus an anti-homomorphism into a
    // commuting complementary ideal: each summand classifies on its own and
    // the sum is a triple homomorphism even though it is neither kind
    let two = direct_sum(&sl2, &sl2).unwrap();
    let hom = &two.embed_left;
    let anti = two.embed_right.scaled(&Q.integer(-1));
    assert_eq!(
        classify_linear_map(hom, &sl2, &two.algebra).unwrap(),
        MapClass::Homomorphism
    );
    assert_eq!(
        classify_linear_map(&anti, &sl2, &two.algebra).unwrap(),
        MapClass::AntiHomomorphism
    );
    let f = hom.add(&anti).unwrap();
    assert_eq!(
        classify_linear_map(&f, &sl2, &two.algebra).unwrap(),
        MapClass::Neither
    );
    assert!(is_triple_hom(&f, &sl2, &two.algebra).unwrap());
}
