use klein4::gf::{irreducible_powers, Elem, Field, Poly};
use klein4::kmodule::{direct_sum, KModule, Label};
use klein4::linalg::{Matrix, PolyMatrix};
use klein4::quiver::{syzygy_submodule_from_vector, to_quiver, QuiverRep, Speciality};
use klein4::Error;

fn gf2() -> Field {
    Field::gf2()
}

fn poly(f: &Field, s: &str) -> Poly {
    Poly::parse(f, s).unwrap()
}

fn canon(l: Label) -> KModule {
    l.canonical(&gf2()).unwrap()
}

fn label_grid(f: &Field) -> Vec<Label> {
    let mut out = vec![Label::Free, Label::Trivial];
    out.extend(irreducible_powers(f, 4).into_iter().map(|(p, l)| Label::band(p, l)));
    for n in 1..=6 {
        out.extend([Label::ZeroBand(n), Label::SyzygyPos(n), Label::SyzygyNeg(n)]);
    }
    out
}

#[test]
fn validate_reports_the_violated_relation() {
    let f = gf2();
    let z = Matrix::zeros(&f, 3, 3);
    assert!(KModule::new(z.clone(), z.clone()).is_ok());
    let one = Matrix::identity(&f, 1);
    assert_eq!(KModule::new(one.clone(), Matrix::zeros(&f, 1, 1)), Err(Error::NotSquareZeroA));
    assert_eq!(KModule::new(Matrix::zeros(&f, 1, 1), one), Err(Error::NotSquareZeroB));
    // A = E_21, B = E_32 do not commute.
    let a = Matrix::from_rows(&f, &[&[0, 0, 0], &[1, 0, 0], &[0, 0, 0]]);
    let b = Matrix::from_rows(&f, &[&[0, 0, 0], &[0, 0, 0], &[0, 1, 0]]);
    assert_eq!(KModule::new(a, b), Err(Error::NotCommuting));
}

#[test]
fn canonical_modules_have_the_stated_shape() {
    for f in [gf2(), Field::gf2m(2).unwrap()] {
        for l in label_grid(&gf2()).into_iter().filter(|l| !matches!(l, Label::Band { .. })) {
            let m = l.canonical(&f).unwrap();
            assert_eq!(m.dim(), l.dim(), "{l}");
            assert_eq!(m.free_rank(), usize::from(l == Label::Free), "{l}");
            KModule::new(m.a().clone(), m.b().clone()).unwrap();
        }
    }
    for l in label_grid(&gf2()) {
        assert_eq!(canon(l.clone()).dim(), l.dim());
    }
}

#[test]
fn band_x_has_zero_a() {
    let f = gf2();
    let m = canon(Label::band(poly(&f, "x"), 1));
    assert!(m.a().is_zero());
    assert_eq!(m.b(), &Matrix::from_rows(&f, &[&[0, 0], &[1, 0]]));
}

#[test]
fn band_requires_irreducible_over_its_field() {
    let f4 = Field::gf2m(2).unwrap();
    let l = Label::band(poly(&f4, "x^2+x+1"), 1);
    assert!(matches!(l.canonical(&f4), Err(Error::InvalidLabel(_))));
    assert!(matches!(Label::ZeroBand(0).canonical(&f4), Err(Error::InvalidLabel(_))));
}

#[test]
fn radical_and_socle_dimensions() {
    let free = canon(Label::Free);
    assert_eq!(free.radical().dim(), 3);
    assert_eq!(free.socle().dim(), 1);
    assert_eq!(free.free_rank(), 1);
    for n in 1..=5 {
        assert_eq!(canon(Label::SyzygyPos(n)).socle().dim(), n);
        assert_eq!(canon(Label::SyzygyNeg(n)).socle().dim(), n + 1);
    }
    let f = gf2();
    let (two, _) = direct_sum(&f, &[&free, &free]).unwrap();
    assert_eq!(two.free_rank(), 2);
}

#[test]
fn radical_equals_socle_off_free_and_trivial() {
    for l in label_grid(&gf2()) {
        if matches!(l, Label::Free | Label::Trivial) || l.dim() > 13 {
            continue;
        }
        let m = canon(l.clone());
        assert!(m.radical().same_span(&m.socle()), "{l}");
    }
}

#[test]
fn direct_sum_basics() {
    let f = gf2();
    let (z, inc) = direct_sum(&f, &[]).unwrap();
    assert_eq!(z.dim(), 0);
    assert!(inc.is_empty());
    let t = canon(Label::Trivial);
    let (tt, inc) = direct_sum(&f, &[&t, &t]).unwrap();
    assert_eq!(tt.dim(), 2);
    assert!(tt.a().is_zero() && tt.b().is_zero());
    assert_eq!(inc[1].column(0), vec![Elem(0), Elem(1)]);
}

#[test]
fn dual_is_an_involution() {
    for l in label_grid(&gf2()) {
        let m = canon(l);
        assert_eq!(m.dual().dual(), m);
    }
}

#[test]
fn hom_space_examples() {
    let t = canon(Label::Trivial);
    assert_eq!(t.hom_space(&t).unwrap().len(), 1);
    // Oracle: X = [x0 x1 x2 x3] with X A = 0, X B = 0 (k is killed by a, b).
    // X A = (x1, 0, x3, 0) and X B = (x2, x3, 0, 0), so only x0 survives.
    let hom = canon(Label::Free).hom_space(&t).unwrap();
    assert_eq!(hom.len(), 1);
    assert_eq!(hom[0], Matrix::from_rows(&gf2(), &[&[1, 0, 0, 0]]));
    for l in label_grid(&gf2()).into_iter().take(8) {
        let m = canon(l);
        let basis = m.hom_space(&m).unwrap();
        let id = Matrix::identity(m.field(), m.dim());
        let flat: Vec<_> = basis.iter().map(Matrix::flatten).collect();
        let span = Matrix::from_columns(m.field(), m.dim() * m.dim(), &flat);
        assert!(span.solve_vec(&id.flatten()).is_some());
    }
}

#[test]
fn json_round_trip_is_byte_stable() {
    let f4 = Field::gf2m(2).unwrap();
    for m in [canon(Label::Free), Label::band(poly(&f4, "x^2+x+2"), 2).canonical(&f4).unwrap()] {
        let text = m.to_json();
        let back = KModule::from_json(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.to_json(), text);
    }
    assert_eq!(
        canon(Label::Trivial).to_json(),
        r#"{"field":{"degree":1},"dim":1,"A":[[0]],"B":[[0]]}"#
    );
    let bad = r#"{"field":{"degree":1},"dim":1,"A":[[1]],"B":[[0]]}"#;
    assert_eq!(KModule::from_json(bad), Err(Error::NotSquareZeroA));
}

#[test]
fn band_pencil_smith_form() {
    // Hand reduction of [[1, λ], [λ+1, 1]]: subtract (λ+1) times row 0 from row 1
    // to get [[1, λ], [0, 1 + λ(λ+1)]], so the invariant factors are (1, λ²+λ+1).
    let f = gf2();
    let m = canon(Label::band(poly(&f, "x^2+x+1"), 1));
    let (rep, _) = to_quiver(&m).unwrap();
    let s = rep.pencil().smith_form();
    assert_eq!(s.diagonal, vec![Poly::one(&f), poly(&f, "x^2+x+1")]);
}

#[test]
fn quiver_of_first_syzygy() {
    let f = gf2();
    let (rep, _) = to_quiver(&canon(Label::SyzygyPos(1))).unwrap();
    assert_eq!(rep.psi1, Matrix::from_rows(&f, &[&[0, 1]]));
    assert_eq!(rep.psi2, Matrix::from_rows(&f, &[&[1, 0]]));
    assert_eq!(rep.is_special(), Speciality::Special);
    let v = rep.pencil_kernel_min().unwrap();
    assert_eq!(v.coeffs, vec![vec![Elem(1), Elem(0)], vec![Elem(0), Elem(1)]]);
    assert_eq!(rep.to_module(), canon(Label::SyzygyPos(1)));
    let (t, _) = to_quiver(&canon(Label::Trivial)).unwrap();
    assert_eq!((t.d1(), t.d2()), (1, 0));
    assert_eq!(t.pencil_kernel_min().unwrap().coeffs, vec![vec![Elem(1)]]);
    assert_eq!(to_quiver(&canon(Label::Free)).unwrap_err(), Error::NotProjectiveFree);
}

#[test]
fn speciality_witnesses() {
    let f = gf2();
    let z = QuiverRep::new(Matrix::zeros(&f, 1, 2), Matrix::zeros(&f, 1, 2)).unwrap();
    assert!(matches!(z.is_special(), Speciality::CommonKernel(_)));
    let c = QuiverRep::new(Matrix::from_rows(&f, &[&[1], &[0]]), Matrix::from_rows(&f, &[&[1], &[0]])).unwrap();
    assert_eq!(c.is_special(), Speciality::Cokernel(vec![Elem(0), Elem(1)]));
    let r = QuiverRep::new(Matrix::identity(&f, 3), Matrix::from_rows(&f, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]])).unwrap();
    assert_eq!(r.is_special(), Speciality::Special);
}

#[test]
fn pencil_determinants() {
    let f = gf2();
    let (zb, _) = to_quiver(&canon(Label::ZeroBand(3))).unwrap();
    assert_eq!(zb.pencil_determinant().unwrap(), Poly::one(&f));
    let z = QuiverRep::new(Matrix::zeros(&f, 1, 1), Matrix::zeros(&f, 1, 1)).unwrap();
    assert!(z.pencil_determinant().unwrap().is_zero());
    for (p, l) in irreducible_powers(&f, 4) {
        let (rep, _) = to_quiver(&canon(Label::band(p.clone(), l))).unwrap();
        assert_eq!(rep.pencil_determinant().unwrap(), p.pow(l as u64));
        assert!(rep.pencil_kernel_min().is_none());
    }
    let (band_x, _) = to_quiver(&canon(Label::band(poly(&f, "x"), 1))).unwrap();
    assert_eq!(band_x.pencil_determinant().unwrap(), poly(&f, "x"));
}

#[test]
fn trivial_summand_gives_degree_zero_vector() {
    let f = gf2();
    let (m, _) = direct_sum(&f, &[&canon(Label::SyzygyPos(1)), &canon(Label::Trivial)]).unwrap();
    let (rep, _) = to_quiver(&m).unwrap();
    let v = rep.pencil_kernel_min().unwrap();
    assert_eq!(v.degree(), 0);
    let s = syzygy_submodule_from_vector(&m, &v).unwrap();
    assert_eq!(s.dim(), 1);
    assert_eq!(s.restricted(), canon(Label::Trivial));
}

#[test]
fn syzygy_submodule_is_canonical_on_its_basis() {
    for n in 1..=5 {
        let m = canon(Label::SyzygyPos(n));
        let (rep, _) = to_quiver(&m).unwrap();
        let v = rep.pencil_kernel_min().unwrap();
        assert_eq!(v.degree(), n);
        let s = syzygy_submodule_from_vector(&m, &v).unwrap();
        assert_eq!(s.restricted(), m);
    }
}

#[test]
fn pencil_of_dual_detects_cosyzygies() {
    for n in 1..=4 {
        let m = canon(Label::SyzygyNeg(n));
        let (rep, _) = to_quiver(&m).unwrap();
        assert!(rep.pencil_kernel_min().is_none());
        let (dual_rep, _) = to_quiver(&m.dual()).unwrap();
        assert_eq!(dual_rep.pencil_kernel_min().unwrap().degree(), n);
    }
}

#[test]
fn polymatrix_det_agrees_with_product_of_invariant_factors() {
    let f = gf2();
    let m = canon(Label::band(poly(&f, "x+1"), 3));
    let (rep, _) = to_quiver(&m).unwrap();
    let p: PolyMatrix = rep.pencil();
    let s = p.smith_form();
    let prod = s.diagonal.iter().fold(Poly::one(&f), |acc, d| acc.mul(d));
    assert_eq!(prod, p.det());
}
