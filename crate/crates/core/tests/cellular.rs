use dicell::cellular::*;
use dicell::chain::{boundary, parse_chain, IntChain};
use dicell::corpus::resolve_digraph;
use dicell::digraph::*;
use dicell::io::parse_digraph;
use dicell::minimal::{is_smaller, MinimalPathRecord};
use dicell::path_complex::omega_rational;
use dicell::realization::{admissible_set, find_realization, AdmissiblePair};

fn g(text: &str) -> Digraph {
    parse_digraph(text).unwrap().digraph
}

fn pair(d: &Digraph, s: &str) -> AdmissiblePair {
    let r = MinimalPathRecord::new(d, &parse_chain(s, d).unwrap());
    find_realization(d, &r).unwrap().unwrap()
}

#[test]
fn chain_space_dimensions() {
    let s4 = k_square(4).unwrap();
    let c2 = cellular_chain_space(&s4, 2).unwrap();
    assert_eq!((c2.admissible.len(), c2.dim()), (6, 3));
    let c5 = circulant(5, &[1, 2]).unwrap();
    let c3 = cellular_chain_space(&c5, 3).unwrap();
    assert_eq!((c3.dim(), c3.relation_count()), (10, 0));
    let j = johnson(4, 2).unwrap();
    let c2 = cellular_chain_space(&j, 2).unwrap();
    assert!(c2.relation_count() > 0);
    assert_eq!(c2.dim() + c2.relation_count(), 15);
}

#[test]
fn boundary_by_coefficients() {
    let k3 = g("0 -> 1\n1 -> 2\n0 -> 2");
    let lower = admissible_set(&k3, 1).unwrap();
    let b = cellular_boundary_coeff(&pair(&k3, "e012"), &lower);
    assert_eq!(b, parse_chain("e12 - e02 + e01", &k3).unwrap());

    let sq = g("0 -> 1\n0 -> 2\n1 -> 3\n2 -> 3");
    let lower = admissible_set(&sq, 1).unwrap();
    let b = cellular_boundary_coeff(&pair(&sq, "e013 - e023"), &lower);
    assert_eq!(b, parse_chain("e13 + e01 - e23 - e02", &sq).unwrap());

    let i = interval();
    let lower = cellular_chain_space(&i, 0).unwrap();
    let b = cellular_boundary_restricted(&pair(&i, "e01"), &lower).unwrap();
    assert_eq!(b, parse_chain("e1 - e0", &i).unwrap());
}

#[test]
fn exotic_two_faces_sum_to_a_cycle() {
    let ex = exotic_cube();
    let p = parse_chain("e0158-e0258+e0268-e0368+e0378-e0478", &ex).unwrap();
    let lower = admissible_set(&ex, 1).unwrap();
    let faces = admissible_set(&ex, 2).unwrap();
    assert_eq!(faces.len(), 8);
    // the faces of the non-admissible 3-path form a cellular 2-cycle
    let dp = boundary(&p);
    let mut total = IntChain::zero(1);
    for f in &faces {
        let sign = if is_smaller(&f.path.chain, &dp) { 1 } else { -1 };
        total = &total + &cellular_boundary_coeff(f, &lower).scale(&sign);
    }
    assert!(total.is_zero());
}

#[test]
fn cellular_homology_examples() {
    for k in 2..=6 {
        let s = k_square(k).unwrap();
        assert_eq!(cellular_homology(&s, false).unwrap().betti_padded(3), vec![1, 0, 0], "S_{k}");
        assert_eq!(cellular_chain_space(&s, 2).unwrap().dim(), k - 1);
    }
    assert_eq!(cellular_homology(&exotic_cube(), false).unwrap().betti_padded(3), vec![1, 0, 1]);
    let c5 = circulant(5, &[1, 2]).unwrap();
    assert_eq!(cellular_homology(&c5, false).unwrap().betti_padded(5), vec![1, 1, 0, 0, 0]);
}

#[test]
fn cellular_dims_bounded_by_omega() {
    for (d, equal) in [
        (circulant(5, &[1, 2]).unwrap(), true),
        (circulant(7, &[1, 3]).unwrap(), true),
        (johnson(4, 2).unwrap(), false),
        (exotic_cube(), false),
    ] {
        let b = cellular_basis(&d).unwrap();
        for (n, &c) in b.dims().iter().enumerate() {
            let o = omega_rational(&d, n).len();
            assert!(c <= o);
            if equal {
                assert_eq!(c, o, "{} degree {n}", d.name());
            }
        }
    }
}

// [Q:P] recomputed from the definition, as a matrix over the admissible lists
fn incidence(upper: &[AdmissiblePair], lower: &[AdmissiblePair]) -> Vec<Vec<i64>> {
    upper
        .iter()
        .map(|p| {
            let d = boundary(&p.path.chain);
            lower
                .iter()
                .map(|q| {
                    let c = &q.path.chain;
                    if *c == d || is_smaller(c, &d) {
                        1
                    } else if -c == d || is_smaller(&-c, &d) {
                        -1
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect()
}

#[test]
fn well_definedness_on_fixture_digraphs() {
    for src in ["file:ex-2.7", "file:ex-3.13", "file:ex-3.23", "file:j42", "file:ex-3.18"] {
        let d = resolve_digraph(src).unwrap();
        let b = cellular_basis(&d).unwrap();
        assert!(compare_boundary_routes(&d, &b).unwrap().is_empty(), "{src}");
        for n in 2..b.degrees.len() {
            let a = incidence(b.admissible(n), b.admissible(n - 1));
            let c = incidence(b.admissible(n - 1), b.admissible(n - 2));
            // the composite, pushed to chains, vanishes
            for row in &a {
                let mut total = IntChain::zero(n.saturating_sub(2));
                for (j, &x) in row.iter().enumerate() {
                    for (k, &y) in c[j].iter().enumerate() {
                        total = &total + &b.admissible(n - 2)[k].path.chain.scale(&(x * y));
                    }
                }
                assert!(total.is_zero(), "{src} degree {n}");
            }
        }
    }
}

#[test]
fn admissible_supports_have_vanishing_reduced_cellular_homology() {
    for src in ["file:ex-2.7", "file:ex-3.13", "file:j42"] {
        let d = resolve_digraph(src).unwrap();
        for n in 1..=3 {
            for p in admissible_set(&d, n).unwrap() {
                let h = cellular_homology(&p.path.supp.graph, true).unwrap();
                assert!(h.is_acyclic_reduced(), "{src}");
            }
        }
    }
}

#[test]
fn kunneth() {
    let i = interval();
    let k3 = g("0 -> 1\n1 -> 2\n0 -> 2");
    let c3 = circulant(3, &[1]).unwrap();
    let r = kunneth_check(&i, &i, 2).unwrap();
    assert!(r.holds());
    assert_eq!(r.dims_product[1], 4);
    assert_eq!(r.betti_product, vec![1, 0, 0]);
    let r = kunneth_check(&k3, &i, 3).unwrap();
    assert!(r.holds());
    assert_eq!(r.betti_product, vec![1, 0, 0, 0]);
    let r = kunneth_check(&c3, &i, 3).unwrap();
    assert!(r.holds());
    assert_eq!(r.betti_product, vec![1, 1, 0, 0]);
    let s2 = k_square(2).unwrap();
    assert!(kunneth_check(&s2, &s2, 4).unwrap().holds());
}
