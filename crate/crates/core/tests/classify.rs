use klein4::classify::census::{census, is_indecomposable};
use klein4::classify::{decompose, iso, label_of, lambda0_labels_of, split_off};
use klein4::conformance::{label_grid, random_invertible};
use klein4::gf::{Field, Poly};
use klein4::kmodule::{direct_sum, Submodule};
use klein4::linalg::Matrix;
use klein4::{Error, KModule, Label};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gf2() -> Field {
    Field::gf2()
}

fn poly(s: &str) -> Poly {
    Poly::parse(&gf2(), s).unwrap()
}

fn canon(l: Label) -> KModule {
    l.canonical(&gf2()).unwrap()
}

#[test]
fn iso_of_a_module_with_itself() {
    let m = canon(Label::SyzygyPos(3));
    let x = iso(&m, &m).unwrap().expect("isomorphic");
    assert!(x.is_invertible());
    assert!(m.is_hom_to(&m, &x));
}

#[test]
fn first_syzygy_is_dual_to_first_cosyzygy() {
    let pos = canon(Label::SyzygyPos(1));
    let dual = canon(Label::SyzygyNeg(1)).dual();
    let x = iso(&pos, &dual).unwrap().expect("isomorphic");
    assert!(x.is_invertible());
    assert!(pos.is_hom_to(&dual, &x));
}

#[test]
fn bands_with_distinct_polynomials_differ() {
    let m = canon(Label::band(poly("x"), 1));
    let n = canon(Label::band(poly("x+1"), 1));
    assert_eq!(iso(&m, &n).unwrap(), None);
}

#[test]
fn iso_sees_through_basis_changes() {
    let f = gf2();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for l in label_grid(&f, 7) {
        let m = canon(l.clone());
        let p = random_invertible(&f, m.dim(), &mut rng);
        let n = m.change_basis(&p).unwrap();
        let x = iso(&m, &n).unwrap().unwrap_or_else(|| panic!("{l}"));
        assert!(m.is_hom_to(&n, &x));
    }
}

#[test]
fn split_off_everything_leaves_nothing() {
    let m = canon(Label::ZeroBand(2));
    let s = Submodule::new(&m, Matrix::identity(&gf2(), m.dim())).unwrap();
    assert_eq!(split_off(&s).unwrap().complement.dim(), 0);
}

#[test]
fn split_off_a_block() {
    let f = gf2();
    let (m, inc) = direct_sum(&f, &[&canon(Label::SyzygyPos(1)), &canon(Label::Trivial)]).unwrap();
    let s = Submodule::new(&m, inc[0].clone()).unwrap();
    let split = split_off(&s).unwrap();
    assert_eq!(split.complement.dim(), 1);
    assert!(iso(&split.complement, &canon(Label::Trivial)).unwrap().is_some());
    assert!(m.is_hom_to(&s.restricted(), &split.retraction));
    assert_eq!(split.retraction.mul(&s.inclusion), Matrix::identity(&f, 3));
}

#[test]
fn socle_of_free_is_not_a_summand() {
    let m = canon(Label::Free);
    let socle = m.socle();
    assert_eq!(socle.dim(), 1);
    assert_eq!(split_off(&socle).unwrap_err(), Error::NotASummand);
}

#[test]
fn canonical_modules_decompose_to_themselves() {
    let f = gf2();
    for l in label_grid(&f, 9) {
        let m = canon(l.clone());
        let d = decompose(&m).unwrap();
        assert_eq!(d.labels(), vec![l.clone()]);
        assert!(d.verify(&m), "{l}");
    }
}

#[test]
fn regular_representation_from_group_elements_is_free() {
    // Basis 1, s, t, st; s and t act by left multiplication.
    let f = gf2();
    let sigma = Matrix::from_rows(&f, &[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]);
    let tau = Matrix::from_rows(&f, &[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0]]);
    assert_eq!(sigma.mul(&tau), tau.mul(&sigma));
    let one = Matrix::identity(&f, 4);
    let m = KModule::new(sigma.add(&one), tau.add(&one)).unwrap();
    assert_eq!(decompose(&m).unwrap().labels(), vec![Label::Free]);
}

#[test]
fn conjugated_sum_recovers_its_labels() {
    let f = gf2();
    let labels = vec![Label::SyzygyPos(2), Label::band(poly("x^2+x+1"), 1), Label::Free];
    let mods: Vec<KModule> = labels.iter().map(|l| canon(l.clone())).collect();
    let (sum, _) = direct_sum(&f, &mods.iter().collect::<Vec<_>>()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let p = random_invertible(&f, sum.dim(), &mut rng);
    let m = sum.change_basis(&p).unwrap();
    let d = decompose(&m).unwrap();
    let mut expected = labels;
    expected.sort();
    assert_eq!(d.labels(), expected);
    assert!(d.verify(&m));
}

#[test]
fn summands_are_sorted() {
    let f = gf2();
    let parts = [Label::Trivial, Label::ZeroBand(1), Label::Free, Label::SyzygyNeg(1), Label::band(poly("x"), 2)];
    let mods: Vec<KModule> = parts.iter().map(|l| canon(l.clone())).collect();
    let (sum, _) = direct_sum(&f, &mods.iter().collect::<Vec<_>>()).unwrap();
    let labels = decompose(&sum).unwrap().labels();
    assert!(labels.windows(2).all(|w| w[0] <= w[1]));
    assert_eq!(labels.len(), parts.len());
}

#[test]
fn decompose_over_an_extension_field() {
    let f4 = Field::gf2m(2).unwrap();
    let root = Poly::parse(&f4, "x+2").unwrap();
    let labels = vec![Label::band(root, 2), Label::SyzygyNeg(2)];
    let mods: Vec<KModule> = labels.iter().map(|l| l.canonical(&f4).unwrap()).collect();
    let (sum, _) = direct_sum(&f4, &mods.iter().collect::<Vec<_>>()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let m = sum.change_basis(&random_invertible(&f4, sum.dim(), &mut rng)).unwrap();
    let d = decompose(&m).unwrap();
    let mut expected = labels;
    expected.sort();
    assert_eq!(d.labels(), expected);
    assert!(d.verify(&m));
}

#[test]
fn label_of_examples() {
    let zb = canon(Label::ZeroBand(3));
    assert_eq!(zb.b().kernel_matrix().cols(), 4);
    assert_eq!(label_of(&zb).unwrap(), Label::ZeroBand(3));
    let band = Label::band(poly("x^2+x+1"), 2);
    assert_eq!(label_of(&canon(band.clone())).unwrap(), band);
    let f = gf2();
    let one = KModule::new(Matrix::zeros(&f, 1, 1), Matrix::zeros(&f, 1, 1)).unwrap();
    assert_eq!(label_of(&one).unwrap(), Label::Trivial);
}

#[test]
fn label_of_rejects_sums() {
    let f = gf2();
    let (m, _) = direct_sum(&f, &[&canon(Label::Trivial), &canon(Label::Trivial)]).unwrap();
    assert_eq!(label_of(&m).unwrap_err(), Error::NotIndecomposable(2));
}

#[test]
fn duals_swap_syzygy_labels() {
    let f = gf2();
    for l in label_grid(&f, 9) {
        let d = label_of(&canon(l.clone()).dual()).unwrap();
        assert_eq!(d, l.dual(), "{l}");
    }
}

#[test]
fn zeroband_orientations_agree() {
    // The other reading of the diagram puts the top without a b-edge at the
    // opposite end: b(g_i) = h_{i-1}, b(g_0) = 0. It is the same module with
    // both halves of the basis reversed.
    let f = gf2();
    for n in 1..=4 {
        let m = canon(Label::ZeroBand(n));
        let mut b = Matrix::zeros(&f, 2 * n, 2 * n);
        let mut a = Matrix::zeros(&f, 2 * n, 2 * n);
        // Basis (g_{n-1}, ..., g_0, h_{n-1}, ..., h_0): g_i sits at n-1-i.
        for i in 0..n {
            a.set(2 * n - 1 - i, n - 1 - i, klein4::gf::Elem::ONE);
            if i >= 1 {
                b.set(2 * n - i, n - 1 - i, klein4::gf::Elem::ONE);
            }
        }
        let other = KModule::new(a, b).unwrap();
        assert_eq!(other == m, n == 1);
        assert!(iso(&m, &other).unwrap().is_some(), "n = {n}");
        assert_eq!(label_of(&other).unwrap(), Label::ZeroBand(n));
    }
}

#[test]
fn swapping_a_and_b_exchanges_zeroband_and_band_at_zero() {
    for n in 1..=4 {
        let m = canon(Label::ZeroBand(n));
        let swapped = KModule::new(m.b().clone(), m.a().clone()).unwrap();
        assert_eq!(label_of(&swapped).unwrap(), Label::band(poly("x"), n));
    }
}

#[test]
fn lambda0_route_matches_decompose() {
    let f = gf2();
    let regular = label_grid(&f, 9).into_iter().filter(|l| matches!(l, Label::Band { .. } | Label::ZeroBand(_)));
    for l in regular {
        let m = canon(l.clone());
        if let Some(mut labels) = lambda0_labels_of(&m).unwrap() {
            labels.sort();
            let regular: Vec<Label> = decompose(&m)
                .unwrap()
                .labels()
                .into_iter()
                .filter(|l| matches!(l, Label::Band { .. } | Label::ZeroBand(_)))
                .collect();
            assert_eq!(labels, regular, "{l}");
        }
    }
}

#[test]
fn census_small_dimensions() {
    let f = gf2();
    let expected: [&[Label]; 3] = [
        &[Label::Trivial],
        &[Label::band(poly("x"), 1), Label::band(poly("x+1"), 1), Label::ZeroBand(1)],
        &[Label::SyzygyNeg(1), Label::SyzygyPos(1)],
    ];
    for (dim, want) in (1..=3).zip(expected) {
        let c = census(&f, dim).unwrap();
        let mut got: Vec<Label> = c.classes.iter().map(|cl| cl.label.clone().expect("labelled")).collect();
        got.sort();
        assert_eq!(got, want, "dim {dim}");
    }
}

#[test]
fn census_refuses_huge_searches() {
    assert!(matches!(census(&gf2(), 5), Err(Error::OutOfRange(_))));
}

#[test]
fn indecomposability_oracle() {
    assert!(is_indecomposable(&canon(Label::Free)).unwrap());
    assert!(is_indecomposable(&canon(Label::band(poly("x^2+x+1"), 1))).unwrap());
    let (sum, _) = direct_sum(&gf2(), &[&canon(Label::ZeroBand(1)), &canon(Label::Trivial)]).unwrap();
    assert!(!is_indecomposable(&sum).unwrap());
}
