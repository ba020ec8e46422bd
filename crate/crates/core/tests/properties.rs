use klein4::classify::decompose;
use klein4::conformance::random_conjugated_sum;
use klein4::gf::{factor, is_irreducible, Elem, Field, Poly};
use klein4::kmodule::direct_sum;
use klein4::linalg::{rcf, Matrix, PolyMatrix};
use klein4::quiver::{from_quiver, to_quiver, Speciality};
use klein4::syzygy::omega;
use klein4::KModule;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field(m: u32) -> Field {
    Field::gf2m(m).unwrap()
}

fn elems(m: u32, len: usize) -> impl Strategy<Value = Vec<Elem>> {
    prop::collection::vec((0u16..(1 << m)).prop_map(Elem), len)
}

fn poly_of(m: u32, max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((0u16..(1 << m)).prop_map(Elem), 0..=max_len)
        .prop_map(move |c| Poly::new(&field(m), c))
}

fn matrix_of(m: u32, rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    elems(m, rows * cols).prop_map(move |d| Matrix::new(&field(m), rows, cols, d).unwrap())
}

fn square(max_m: u32, max_n: usize) -> impl Strategy<Value = Matrix> {
    (1..=max_m, 1..=max_n).prop_flat_map(|(m, n)| matrix_of(m, n, n))
}

/// Determinant by cofactor expansion along the first row.
fn cofactor_det(rows: &[Vec<Poly>], field: &Field) -> Poly {
    let n = rows.len();
    if n == 0 {
        return Poly::one(field);
    }
    let mut acc = Poly::zero(field);
    for j in 0..n {
        if rows[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = rows[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, p)| p.clone()).collect())
            .collect();
        // Signs vanish in characteristic 2.
        acc = acc.add(&rows[0][j].mul(&cofactor_det(&minor, field)));
    }
    acc
}

fn char_poly_oracle(m: &Matrix) -> Poly {
    let f = m.field();
    let n = m.rows();
    let rows: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = Poly::constant(f, m.get(i, j));
                    if i == j { c.add(&Poly::x(f)) } else { c }
                })
                .collect()
        })
        .collect();
    cofactor_det(&rows, f)
}

fn normalized(p: &Poly) -> Poly {
    if p.is_zero() { p.clone() } else { p.monic() }
}

fn random_module(seed: u64, m: u32, max_total: usize) -> KModule {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_conjugated_sum(&field(m), max_total, &mut rng).1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(m in 1u32..=8, a in 0u16..256, b in 0u16..256, c in 0u16..256) {
        let f = field(m);
        let mask = (1u16 << m) - 1;
        let (a, b, c) = (Elem(a & mask), Elem(b & mask), Elem(c & mask));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, b + c), f.mul(a, b) + f.mul(a, c));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a)), Elem::ONE);
        }
        prop_assert_eq!(f.mul(f.sqrt(a), f.sqrt(a)), a);
    }

    #[test]
    fn frobenius_is_additive((p, q) in (1u32..=4).prop_flat_map(|m| (poly_of(m, 8), poly_of(m, 8)))) {
        prop_assert_eq!(p.add(&q).square(), p.square().add(&q.square()));
        prop_assert_eq!(p.add(&q).mul(&p.add(&q)), p.add(&q).square());
    }

    #[test]
    fn factorization_multiplies_back(p in (1u32..=4).prop_flat_map(|m| poly_of(m, 10))) {
        prop_assume!(!p.is_zero());
        let fac = factor(&p).unwrap();
        prop_assert_eq!(fac.expand(p.field()), p.clone());
        for (g, e) in &fac.factors {
            prop_assert!(g.is_monic() && is_irreducible(g) && *e >= 1);
        }
        prop_assert!(fac.factors.windows(2).all(|w| w[0].0 < w[1].0));
    }

    #[test]
    fn factorization_is_multiplicative((p, q) in (1u32..=3).prop_flat_map(|m| (poly_of(m, 6), poly_of(m, 6)))) {
        prop_assume!(!p.is_zero() && !q.is_zero());
        let joint = factor(&p.mul(&q)).unwrap();
        let mut merged = std::collections::BTreeMap::new();
        for (g, e) in factor(&p).unwrap().factors.into_iter().chain(factor(&q).unwrap().factors) {
            *merged.entry(g).or_insert(0) += e;
        }
        prop_assert_eq!(joint.factors, merged.into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn rank_nullity_and_solve(
        (a, x) in (1u32..=3, 1usize..=6, 1usize..=6, 1usize..=3)
            .prop_flat_map(|(m, r, c, k)| (matrix_of(m, r, c), matrix_of(m, c, k)))
    ) {
        let (rank, kernel) = a.rank_kernel();
        prop_assert_eq!(rank + kernel.len(), a.cols());
        for v in &kernel {
            prop_assert!(a.mul_vec(v).iter().all(|e| e.is_zero()));
        }
        prop_assert_eq!(a.transpose().rank(), rank);
        let target = a.mul(&x);
        let y = a.solve(&target).expect("consistent by construction");
        prop_assert_eq!(a.mul(&y), target);
        if a.is_square() {
            prop_assert_eq!(a.is_invertible(), rank == a.rows());
            prop_assert_eq!(a.det().is_zero(), rank < a.rows());
            if let Some(inv) = a.inverse() {
                prop_assert_eq!(a.mul(&inv), Matrix::identity(a.field(), a.rows()));
            }
        }
    }

    #[test]
    fn rcf_against_cofactor_characteristic_polynomial(m in square(3, 6)) {
        let f = m.field().clone();
        let r = rcf(&m);
        prop_assert_eq!(r.transform.mul(&r.basis), Matrix::identity(&f, m.rows()));
        prop_assert_eq!(r.transform.mul(&m).mul(&r.basis), r.canonical_matrix(&f));
        let product = r.elementary_divisors.iter().fold(Poly::one(&f), |acc, (g, l)| acc.mul(&g.pow(*l as u64)));
        let oracle = char_poly_oracle(&m);
        prop_assert_eq!(&product, &oracle);
        let pencil = PolyMatrix::pencil(&m, &Matrix::identity(&f, m.rows()));
        prop_assert_eq!(pencil.det(), oracle);
    }

    #[test]
    fn smith_form_is_an_equivalence(
        (c, l) in (1u32..=2, 1usize..=5, 1usize..=5)
            .prop_flat_map(|(m, r, k)| (matrix_of(m, r, k), matrix_of(m, r, k)))
    ) {
        let f = c.field().clone();
        let p = PolyMatrix::pencil(&c, &l);
        let s = p.smith_form();
        let d = s.left.mul(&p).mul(&s.right);
        prop_assert!(d.is_diagonal());
        for (i, di) in s.diagonal.iter().enumerate() {
            prop_assert_eq!(d.get(i, i), di);
        }
        prop_assert_eq!(s.left.mul(&s.left_inv), PolyMatrix::identity(&f, p.rows()));
        prop_assert_eq!(s.right.mul(&s.right_inv), PolyMatrix::identity(&f, p.cols()));
        let nonzero: Vec<&Poly> = s.diagonal.iter().filter(|q| !q.is_zero()).collect();
        prop_assert_eq!(nonzero.len(), p.rank());
        prop_assert!(nonzero.windows(2).all(|w| w[0].divides(w[1])));
        if p.rows() == p.cols() {
            let product = s.diagonal.iter().fold(Poly::one(&f), |acc, q| acc.mul(q));
            prop_assert_eq!(normalized(&product), normalized(&p.det()));
        }
    }

    #[test]
    fn module_constructions(s1 in any::<u64>(), s2 in any::<u64>(), m in 1u32..=2) {
        let f = field(m);
        let x = random_module(s1, m, 9);
        let y = random_module(s2, m, 9);
        let (sum, inc) = direct_sum(&f, &[&x, &y]).unwrap();
        let (dual_sum, _) = direct_sum(&f, &[&x.dual(), &y.dual()]).unwrap();
        prop_assert_eq!(sum.dual(), dual_sum);
        prop_assert_eq!(sum.free_rank(), x.free_rank() + y.free_rank());
        prop_assert!(x.is_hom_to(&sum, &inc[0]) && y.is_hom_to(&sum, &inc[1]));
        for sub in [x.radical(), x.socle()] {
            prop_assert!(klein4::kmodule::Submodule::new(&x, sub.inclusion.clone()).is_ok());
        }
        prop_assert_eq!(x.radical_quotient_dim() + x.radical().dim(), x.dim());
        prop_assert_eq!(x.dual().dual(), x.clone());
    }

    #[test]
    fn quiver_round_trip(seed in any::<u64>(), m in 1u32..=2) {
        let x = omega(&random_module(seed, m, 10), 0).unwrap();
        let (rep, basis) = to_quiver(&x).unwrap();
        prop_assert_eq!(rep.d1() + rep.d2(), x.dim());
        prop_assert_eq!(from_quiver(&rep), x.change_basis(&basis.matrix()).unwrap());
        let special = matches!(rep.is_special(), Speciality::Special);
        let trivial_summand = x.socle().inclusion.columns().iter().any(|v| x.radical().inclusion.solve_vec(v).is_none());
        prop_assert_eq!(special, !trivial_summand);
    }

    #[test]
    fn decompose_recovers_conjugated_sums(seed in any::<u64>(), m in 1u32..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (labels, x) = random_conjugated_sum(&field(m), 12, &mut rng);
        let d = decompose(&x).unwrap();
        prop_assert_eq!(d.labels(), labels);
        prop_assert!(d.verify(&x));
    }
}
