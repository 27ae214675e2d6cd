use plcat::ainfty::check_relations;
use plcat::ainfty::compare::match_bases;
use plcat::fixtures::{a_g, beilinson, cp2, Dynkin};
use plcat::hochschild::hh;
use plcat::mutation::{mutate_model, run_script, track_object, Move, MutationError, Script};
use plcat::twcx::{db_hom, is_isomorphic, TwistedComplex, Verdict, DEFAULT_SEARCH_CAP};
use plcat::Grading;

fn script(s: &str) -> Script {
    s.parse().unwrap()
}

#[test]
fn scripts_parse_and_print() {
    let s = script("c r! shift 0,1,-1 c!");
    assert_eq!(s.len(), 4);
    assert_eq!(s.to_string().parse::<Script>().unwrap(), s);
    assert!("c x".parse::<Script>().is_err());
    assert_eq!(s.inverse().inverse(), s);
}

#[test]
fn moves_and_inverses_cancel() {
    for cat in [cp2(), beilinson(), a_g(1, Grading::Z), Dynkin::D(4).category(3)] {
        for s in ["c c!", "c! c", "r r!", "r! r", "shift 1,0,2 c r c! r!"] {
            let mut s = script(s);
            if let Move::Shift(v) = &mut s.0[0] {
                v.resize(cat.m(), 0);
            }
            let there = run_script(&cat, &s).unwrap();
            let back = run_script(&there, &s.inverse()).unwrap();
            assert!(match_bases(&back, &cat).is_matched(), "{s}");
        }
    }
}

#[test]
fn mutated_models_satisfy_the_relations() {
    for mv in [Move::C, Move::R, Move::CInv, Move::RInv] {
        let step = mutate_model(&beilinson(), &mv).unwrap();
        assert!(check_relations(&step.after).is_none());
        assert_eq!(hh(&step.after), hh(&beilinson()));
    }
}

#[test]
fn too_few_objects() {
    let one = Dynkin::A(1).category(0);
    assert!(matches!(run_script(&one, &script("r")), Err(MutationError::Step { .. })));
    assert!(run_script(&one, &script("c c!")).is_ok());
}

#[test]
fn tracked_objects_keep_their_homs() {
    let cat = cp2();
    let s = script("c r");
    let after = run_script(&cat, &s).unwrap();
    let objs: Vec<_> = (0..cat.m()).map(|i| TwistedComplex::object(&cat, i)).collect();
    let images: Vec<_> = objs.iter().map(|t| track_object(&cat, &s, t).unwrap()).collect();
    for i in 0..objs.len() {
        for k in 0..objs.len() {
            assert_eq!(db_hom(&after, &images[i], &images[k]), db_hom(&cat, &objs[i], &objs[k]), "{i} {k}");
        }
    }
    // The last new object of c is the old first object.
    let first = track_object(&cat, &script("c"), &objs[0]).unwrap();
    let after_c = run_script(&cat, &script("c")).unwrap();
    let last = TwistedComplex::object(&after_c, 2);
    assert_eq!(is_isomorphic(&after_c, &first, &last, DEFAULT_SEARCH_CAP).verdict, Verdict::Yes);
}
