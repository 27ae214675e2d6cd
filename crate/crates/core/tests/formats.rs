use std::path::PathBuf;

use plcat::ainfty::compare::{match_bases, tables_equal};
use plcat::ainfty::{check_relations, DirectedCategory};
use plcat::fixtures::{a_g, a_g_extra_sphere, a_g_sphere, beilinson, cp2, Dynkin};
use plcat::formats::*;
use plcat::morse::{rp2, s2};
use plcat::zerodim::{a_g_configuration, seven_vertex_example};
use plcat::Grading;

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    std::fs::read_to_string(p).unwrap()
}

fn same(a: &DirectedCategory, b: &DirectedCategory) -> bool {
    a.names() == b.names()
        && tables_equal(a, b)
        && (0..a.m()).all(|i| (i + 1..a.m()).all(|k| a.hom(i, k) == b.hom(i, k)))
}

#[test]
fn shipped_quivers_match_builtin_categories() {
    let cases: [(&str, DirectedCategory); 4] = [
        ("cp2.qcat", cp2()),
        ("beilinson.qcat", beilinson()),
        ("ade_e6.qcat", Dynkin::E(6).category(0)),
        ("a_g2.qcat", a_g(2, Grading::Z)),
    ];
    for (name, want) in cases {
        let got = parse_qcat(&fixture(name)).unwrap().category().unwrap();
        assert!(match_bases(&got, &want).is_matched(), "{name}");
    }
}

#[test]
fn qcat_round_trip() {
    for name in ["cp2.qcat", "beilinson.qcat", "ade_e6.qcat", "a_g2.qcat", "tables.qcat"] {
        let q = parse_qcat(&fixture(name)).unwrap();
        let again = parse_qcat(&print_qcat(&q)).unwrap();
        match (&q, &again) {
            (Qcat::Quiver(a), Qcat::Quiver(b)) => assert_eq!(a, b, "{name}"),
            (Qcat::Tables(a), Qcat::Tables(b)) => assert!(same(a, b), "{name}"),
            _ => panic!("{name}: kind changed"),
        }
        // Tables printed from the category parse back to the same category.
        let c = q.category().unwrap();
        let t = parse_qcat(&print_qcat(&Qcat::Tables(c.clone()))).unwrap().category().unwrap();
        assert!(same(&c, &t), "{name}");
    }
}

#[test]
fn explicit_tables_satisfy_relations() {
    let c = parse_qcat(&fixture("tables.qcat")).unwrap().category().unwrap();
    assert!(check_relations(&c).is_none());
    assert_eq!(c.stored_max_order(), 3);
}

#[test]
fn zconf_fixtures() {
    let a = parse_zconf(&fixture("a_g2.zconf")).unwrap();
    assert_eq!(a, a_g_configuration(2));
    assert_eq!(a.fibre(), 2);
    assert_eq!(a.len(), 5);
    assert_eq!(parse_zconf(&fixture("seven_vertex.zconf")).unwrap(), seven_vertex_example());
    for cfg in [a, seven_vertex_example()] {
        assert_eq!(parse_zconf(&print_zconf(&cfg)).unwrap(), cfg);
    }
    let graded = parse_zconf("fibre 3\nsphere {3,1} grading 2 -1\n").unwrap();
    assert_eq!(graded.spheres()[0].points(), [1, 3]);
    assert_eq!(graded.spheres()[0].gradings(), [-1, 2]);
    assert_eq!(parse_zconf(&print_zconf(&graded)).unwrap(), graded);
}

#[test]
fn flow_fixtures() {
    assert_eq!(parse_flow(&fixture("rp2.flow")).unwrap(), rp2());
    assert_eq!(parse_flow(&fixture("s2.flow")).unwrap(), s2());
    for f in [rp2(), s2(), plcat::morse::cellular_a2()] {
        assert_eq!(parse_flow(&print_flow(&f)).unwrap(), f);
    }
}

#[test]
fn tw_fixtures() {
    let cat = a_g(2, Grading::Z);
    let c1 = parse_tw(&cat, &fixture("c1.tw")).unwrap();
    assert_eq!(c1, a_g_sphere(&cat, 1));
    assert_eq!(parse_tw(&cat, &print_tw(&cat, &c1)).unwrap(), c1);
    assert!(parse_tw(&cat, &fixture("c0.tw")).is_err());
    let per = a_g(2, Grading::Z2);
    let c0 = parse_tw(&per, &fixture("c0.tw")).unwrap();
    assert_eq!(c0, a_g_extra_sphere(&per));
    assert_eq!(parse_tw(&per, &print_tw(&per, &c0)).unwrap(), c0);
    let two = parse_tw(&cat, "summand X1 shift 1\nsummand X1\ndelta 1 2 : id\n").unwrap();
    assert_eq!(parse_tw(&cat, &print_tw(&cat, &two)).unwrap(), two);
}

#[test]
fn diagnostics() {
    assert_eq!(parse_qcat("").unwrap_err().message, "no declarations");
    assert_eq!(parse_qcat("# only a comment\n\n").unwrap_err().message, "no declarations");
    assert_eq!(parse_zconf("").unwrap_err().message, "no declarations");
    assert_eq!(parse_flow("").unwrap_err().message, "no declarations");
    let e = parse_qcat("objects A B\narrow f : B -> A\n").unwrap_err();
    assert_eq!((e.line, e.column), (2, 11));
    let e = parse_qcat("objects A B\narrow f : A => B\n").unwrap_err();
    assert_eq!((e.line, e.column), (2, 13));
    assert!(e.message.contains("`->`"));
    let e = parse_qcat("objects A B\nwibble\n").unwrap_err();
    assert_eq!((e.line, e.column), (2, 1));
    let e = parse_zconf("fibre 3\nsphere {1,4}\n").unwrap_err();
    assert_eq!((e.line, e.column), (2, 8));
    let e = parse_zconf("sphere {1,2}\n").unwrap_err();
    assert_eq!(e.line, 1);
    let e = parse_flow("crit min index 0\ncrit max index x\n").unwrap_err();
    assert_eq!((e.line, e.column), (2, 16));
    let bad_gluing = fixture("rp2.flow").replace(",(b2,b1)", "");
    assert!(parse_flow(&bad_gluing).is_err());
    let cat = cp2();
    let e = parse_tw(&cat, "summand X1\nsummand X2 shift 1\ndelta 1 2 : q7\n").unwrap_err();
    assert_eq!((e.line, e.column), (3, 13));
    assert!(parse_tw(&cat, "summand X1\nsummand X2\ndelta 1 2 : a1\n").unwrap_err().message.contains("degree"));
    let e = parse_qcat("objects A B\nhom A B : f@0\nmu A B : f = f\n").unwrap_err();
    assert_eq!(e.line, 3);
}
