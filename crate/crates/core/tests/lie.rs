use reprzeta::exact::{determinant, pfaffian, Rational};
use reprzeta::io::{emit_algebra, parse_algebra_text, InputError};
use reprzeta::lie::{catalog_names, parse_expression, preset, subsets, LieError, NilpotentLieAlgebra};
use reprzeta::polyhedra::lattice::unit;

fn all_presets() -> Vec<NilpotentLieAlgebra> {
    catalog_names().iter().map(|n| preset(n).unwrap()).collect()
}

#[test]
fn catalog_covers_the_indecomposable_algebras_up_to_dimension_six() {
    let names = catalog_names();
    assert_eq!(names.len(), 29);
    for n in ["L_{3,2}", "L_{5,9}", "L_{6,19}(0)", "L_{6,19}(1)", "L_{6,24}(1)", "L_{6,26}"] {
        assert!(names.iter().any(|x| x == n), "{n}");
    }
}

#[test]
fn presets_and_constructors_validate() {
    for l in all_presets() {
        l.validate().unwrap();
        l.dual_number_extension().validate().unwrap();
        l.direct_sum(&preset("L_{3,2}").unwrap()).validate().unwrap();
    }
    parse_expression("(L_{3,2} + abelian:2)[eps][eps]").unwrap().validate().unwrap();
}

#[test]
fn dual_numbers_double_the_derived_algebra() {
    for l in all_presets() {
        assert_eq!(l.dual_number_extension().derived_basis().len(), 2 * l.derived_basis().len(), "{:?}", l.name);
        assert_eq!(l.dual_number_extension().dim(), 2 * l.dim());
    }
}

#[test]
fn commutator_matrix_reproduces_brackets() {
    for l in all_presets().into_iter().chain([parse_expression("L_{5,5}[eps]").unwrap()]) {
        let p = l.adapted_presentation().unwrap();
        let h = l.dim();
        let n = p.derived_dim;
        let derived = &p.base_change[h - n..];
        assert!(p.r.is_antisymmetric());
        for i in 0..h {
            for j in 0..h {
                let entry = p.r.get(i, j);
                let mut rebuilt = vec![Rational::from_integer(0.into()); h];
                for (k, f) in derived.iter().enumerate() {
                    let c = entry.coeff(&unit(n, k));
                    for (x, y) in rebuilt.iter_mut().zip(f) {
                        *x += &c * y;
                    }
                }
                assert_eq!(rebuilt, l.bracket(&p.base_change[i], &p.base_change[j]), "{:?} [{i},{j}]", l.name);
            }
        }
    }
}

#[test]
fn pfaffian_members_square_to_principal_minors() {
    for l in all_presets() {
        let p = l.adapted_presentation().unwrap();
        let sets = p.pfaffian_sets();
        for (i, set) in sets.iter().enumerate().skip(1) {
            for idx in subsets(l.dim(), 2 * i) {
                let sub = p.r.submatrix(&idx, &idx);
                let pf = pfaffian(&sub).unwrap();
                assert_eq!(&pf * &pf, determinant(&sub));
                if !pf.is_zero() {
                    assert!(set.contains(&pf.primitive_integer()), "{:?} {idx:?}", l.name);
                }
            }
            assert!(!set.is_empty());
        }
        assert_eq!(2 * p.u, reprzeta::exact::rank_over_function_field(&p.r));
    }
}

#[test]
fn algebra_files_round_trip() {
    for l in all_presets() {
        let back = parse_algebra_text(&emit_algebra(&l)).unwrap();
        assert_eq!(back.brackets(), l.brackets());
        assert_eq!(back.name, l.name);
    }
}

#[test]
fn algebra_file_errors() {
    let jacobi = r#"{"dim":5,"brackets":{"[1,2]":{"3":"1"},"[3,4]":{"5":"1"}}}"#;
    assert!(matches!(parse_algebra_text(jacobi), Err(InputError::Lie(LieError::Jacobi(..)))));
    let bad_key = r#"{"dim":3,"brackets":{"[2,1]":{"3":"1"}}}"#;
    assert!(matches!(parse_algebra_text(bad_key), Err(InputError::BadKey(_))));
    let bad_rat = r#"{"dim":3,"brackets":{"[1,2]":{"3":"x"}}}"#;
    assert!(matches!(parse_algebra_text(bad_rat), Err(InputError::BadRational(_))));
    let syntax = "{\"dim\":3,\n\"brackets\": [}";
    match parse_algebra_text(syntax) {
        Err(InputError::Json { line, .. }) => assert_eq!(line, 2),
        other => panic!("{other:?}"),
    }
    let line = parse_algebra_text(r#"{"dim":1,"brackets":{}}"#).unwrap();
    assert!(line.is_abelian());
    let rational = parse_algebra_text(r#"{"dim":3,"brackets":{"[1,2]":{"3":"-3/4"}}}"#).unwrap();
    assert_eq!(rational.brackets().len(), 1);
}
