use plcat::ainfty::check_relations;
use plcat::ainfty::compare::match_bases;
use plcat::zerodim::*;

fn s(p: usize, q: usize, gp: i64, gq: i64) -> GradedZeroSphere {
    GradedZeroSphere::new(p, q, gp, gq).unwrap()
}

fn configs() -> Vec<ZeroConfig> {
    vec![
        a_g_configuration(1),
        a_g_configuration(3),
        seven_vertex_example(),
        chain_configuration(4, 5),
        ZeroConfig::new(4, vec![s(1, 2, 0, 1), s(2, 3, -1, 2), s(1, 3, 0, 0), s(3, 4, 1, 1)]).unwrap(),
    ]
}

/// Cycles of the ordered product of transpositions, by direct composition.
fn boundary_cycles(cfg: &ZeroConfig) -> usize {
    let n = cfg.fibre();
    let image = |x: usize| {
        cfg.spheres().iter().fold(x, |y, l| {
            let [p, q] = l.points();
            if y == p {
                q
            } else if y == q {
                p
            } else {
                y
            }
        })
    };
    let mut seen = vec![false; n + 1];
    let mut cycles = 0;
    for x in 1..=n {
        if !seen[x] {
            cycles += 1;
            let mut y = x;
            while !seen[y] {
                seen[y] = true;
                y = image(y);
            }
        }
    }
    cycles
}

#[test]
fn moves_invert() {
    for cfg in configs() {
        assert_eq!(hurwitz_c_inv(&hurwitz_c(&cfg).unwrap()).unwrap(), cfg);
        assert_eq!(hurwitz_r_inv(&hurwitz_r(&cfg).unwrap()).unwrap(), cfg);
        let sigma: Vec<i64> = (0..cfg.len() as i64).collect();
        let back: Vec<i64> = sigma.iter().map(|x| -x).collect();
        assert_eq!(hurwitz_shift(&hurwitz_shift(&cfg, &sigma).unwrap(), &back).unwrap(), cfg);
    }
}

#[test]
fn fukaya_categories_are_a_infinity() {
    for cfg in configs() {
        assert!(check_relations(&fukaya(&cfg)).is_none());
    }
}

#[test]
fn topology_obeys_riemann_hurwitz() {
    for cfg in configs() {
        let t = cover_topology(&cfg);
        assert_eq!(t.euler_characteristic, cfg.fibre() as i64 - cfg.len() as i64);
        assert_eq!(t.boundary_circles, boundary_cycles(&cfg));
        if t.connected() {
            assert_eq!(t.euler_characteristic, 2 - 2 * t.genus_per_component[0] - t.boundary_circles as i64);
        }
    }
    let t = cover_topology(&a_g_configuration(3));
    assert_eq!((t.genus_per_component.as_slice(), t.boundary_circles), ([3].as_slice(), 1));
}

#[test]
fn search_recovers_a_known_script() {
    let from = seven_vertex_example();
    let script: plcat::mutation::Script = "c r c! r".parse().unwrap();
    let to = from.run(&script).unwrap();
    let found = hurwitz_search(&from, &to, 4).unwrap();
    assert!(found.len() <= 5);
    assert!(match_bases(&fukaya(&from.run(&found).unwrap()), &fukaya(&to)).is_matched());
}

#[test]
fn search_fails_across_monodromy() {
    // Different boundary monodromy: no script exists.
    let a = ZeroConfig::new(3, vec![s(1, 2, 0, 0), s(1, 2, 0, 0)]).unwrap();
    let b = ZeroConfig::new(3, vec![s(1, 2, 0, 0), s(2, 3, 0, 0)]).unwrap();
    assert!(hurwitz_search(&a, &b, 6).is_none());
}

#[test]
fn cone_triangle_on_disjoint_and_overlapping_spheres() {
    assert!(cone_triangle_check(&s(1, 2, 0, 0), &s(3, 4, 0, 0), &s(1, 3, 0, 1)).passed());
    assert!(cone_triangle_check(&s(1, 2, 0, 1), &s(1, 2, -1, 0), &s(2, 3, 0, 0)).passed());
}
