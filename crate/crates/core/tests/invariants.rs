use nalgebra::DMatrix;
use num_bigint::BigInt;
use proptest::prelude::*;
use qwalk_core::exact::{char_poly, eval_at_matrix, eval_at_quadratic, roots_degree_le2};
use qwalk_core::graph::{self, adjacency_matrix, biadjacency, line_graph, random_connected};
use qwalk_core::periodicity::{exact_period_oracle, OracleOutcome};
use qwalk_core::spectral::{adjacency_spectrum, integer_matrix_f64, multiset_distance, sym_eig};
use qwalk_core::walk::{
    block_identity_check, build_bipartite_walk, build_grover_walk,
    grover_equals_bipartite_on_subdivision,
};
use qwalk_core::{Graph, IntPolynomial, Rational, RationalMatrix};

fn connected_graph() -> impl Strategy<Value = Graph> {
    (2usize..=8, 0.0f64..0.6, any::<u64>()).prop_map(|(n, p, seed)| random_connected(n, p, seed).unwrap())
}

/// A connected bipartite graph: the input itself when bipartite, else its
/// double cover.
fn bipartite_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2usize..=max_n, 0.0f64..0.5, any::<u64>()).prop_map(|(n, p, seed)| {
        let g = random_connected(n, p, seed).unwrap();
        if g.is_bipartite() {
            g
        } else {
            graph::bipartite_double_cover(&g).unwrap().0
        }
    })
}

fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    Graph::new(g.n(), g.edges().iter().map(|&(u, v)| (perm[u], perm[v]))).unwrap()
}

fn sorted_degrees(g: &Graph) -> Vec<usize> {
    let mut d = g.degrees();
    d.sort_unstable();
    d
}

fn rational_matrix(n: usize) -> impl Strategy<Value = RationalMatrix> {
    proptest::collection::vec((-4i64..=4, 1i64..=4), n * n).prop_map(move |v| {
        RationalMatrix::from_fn(n, n, |r, c| {
            let (p, q) = v[r * n + c];
            Rational::new(BigInt::from(p), BigInt::from(q))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn walk_operator_invariants(g in bipartite_graph(7)) {
        let w = build_bipartite_walk(&g).unwrap();
        let i = RationalMatrix::identity(w.dim());
        prop_assert!(w.p.is_symmetric() && w.q.is_symmetric());
        prop_assert_eq!(w.p.mul(&w.p).unwrap(), w.p.clone());
        prop_assert_eq!(w.q.mul(&w.q).unwrap(), w.q.clone());
        let rp = w.p.reflection().unwrap();
        let rq = w.q.reflection().unwrap();
        prop_assert_eq!(rp.mul(&rp).unwrap(), i.clone());
        prop_assert_eq!(rq.mul(&rq).unwrap(), i.clone());
        prop_assert_eq!(w.u.mul(&w.u.transpose()).unwrap(), i);
        prop_assert_eq!(w.p.trace(), Rational::from_integer(w.bipartition.c0.len().into()));
        prop_assert_eq!(w.q.trace(), Rational::from_integer(w.bipartition.c1.len().into()));
    }

    #[test]
    fn grover_operator_invariants(g in connected_graph()) {
        let w = build_grover_walk(&g).unwrap();
        let r = w.reversal_matrix();
        prop_assert!(r.mul(&r).unwrap().is_identity());
        prop_assert_eq!(w.k.mul(&w.k).unwrap(), w.k.clone());
        prop_assert!(w.u.mul(&w.u.transpose()).unwrap().is_identity());
    }

    #[test]
    fn grover_is_bipartite_walk_on_subdivision(g in connected_graph()) {
        prop_assert!(grover_equals_bipartite_on_subdivision(&g).unwrap().equal);
    }

    #[test]
    fn block_identity_holds(g in bipartite_graph(5), k in 1u64..=3) {
        prop_assert!(block_identity_check(&g, k).unwrap());
    }

    #[test]
    fn subdivision_shape(g in connected_graph()) {
        let (s, b) = graph::subdivision(&g);
        prop_assert!(s.is_bipartite());
        prop_assert_eq!(s.edge_count(), 2 * g.edge_count());
        let prof = graph::degree_profile(&s, &b);
        prop_assert_eq!(prof.d0, Some(2));
        prop_assert_eq!(prof.d1, g.regular_degree());
    }

    #[test]
    fn double_cover_spectrum_is_symmetrized(g in connected_graph()) {
        prop_assume!(!g.is_bipartite());
        let (cover, b) = graph::bipartite_double_cover(&g).unwrap();
        for &(u, v) in cover.edges() {
            prop_assert_ne!(b.side(u), b.side(v));
        }
        let base = adjacency_spectrum(&g).unwrap().eigenvalues;
        let mut expected: Vec<f64> = base.iter().flat_map(|&l| [l, -l]).collect();
        expected.sort_by(|x, y| y.total_cmp(x));
        let direct = adjacency_spectrum(&cover).unwrap().eigenvalues;
        prop_assert!(multiset_distance(&direct, &expected).unwrap() <= 1e-9);
    }

    #[test]
    fn transforms_commute_with_relabeling(g in connected_graph(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let h = relabel(&g, &perm);
        for (x, y) in [(line_graph(&g), line_graph(&h)), (graph::subdivision(&g).0, graph::subdivision(&h).0)] {
            prop_assert_eq!(sorted_degrees(&x), sorted_degrees(&y));
            prop_assert_eq!(char_poly(&adjacency_matrix(&x)).unwrap(), char_poly(&adjacency_matrix(&y)).unwrap());
        }
    }

    #[test]
    fn adjacency_block_form(g in bipartite_graph(8)) {
        let b = graph::bipartition(&g).unwrap();
        let a = graph::adjacency_matrix_ordered(&g, &b);
        let c = biadjacency(&g, &b);
        let (n0, n1) = (b.c0.len(), b.c1.len());
        for i in 0..n0 + n1 {
            prop_assert_eq!(a[i][i], 0);
            for j in 0..n0 + n1 {
                prop_assert_eq!(a[i][j], a[j][i]);
                let expected = match (i < n0, j < n0) {
                    (true, false) => c[j - n0][i],
                    (false, true) => c[i - n0][j],
                    _ => 0,
                };
                prop_assert_eq!(a[i][j], expected);
            }
        }
    }

    #[test]
    fn squared_spectrum_splits_into_gram_blocks(g in bipartite_graph(8)) {
        let b = graph::bipartition(&g).unwrap();
        let c = integer_matrix_f64(&biadjacency(&g, &b));
        let a = integer_matrix_f64(&adjacency_matrix(&g));
        let a2 = sym_eig(&(&a * &a)).unwrap().eigenvalues;
        let mut blocks = sym_eig(&(&c * c.transpose())).unwrap().eigenvalues;
        blocks.extend(sym_eig(&(c.transpose() * &c)).unwrap().eigenvalues);
        blocks.sort_by(|x, y| y.total_cmp(x));
        prop_assert!(multiset_distance(&a2, &blocks).unwrap() <= 1e-8);
    }

    #[test]
    fn cayley_hamilton(v in proptest::collection::vec(-5i64..=5, 25)) {
        let m: Vec<Vec<i64>> = v.chunks(5).map(<[i64]>::to_vec).collect();
        let p = char_poly(&m).unwrap();
        prop_assert!(p.is_monic());
        prop_assert_eq!(p.degree(), Some(5));
        let at = eval_at_matrix(&p, &RationalMatrix::from_integers(&m)).unwrap();
        prop_assert!(at.entries().iter().all(|x| *x == Rational::from_integer(0.into())));
    }

    #[test]
    fn power_is_additive(a in rational_matrix(3), i in 0u64..6, j in 0u64..6) {
        let lhs = a.pow(i + j).unwrap();
        let rhs = a.pow(i).unwrap().mul(&a.pow(j).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn quadratic_roots_verify(
        lin in proptest::collection::vec(-6i64..=6, 0..4),
        quad in proptest::collection::vec((-6i64..=6, -9i64..=9), 0..3),
    ) {
        let mut p = IntPolynomial::one();
        for r in &lin {
            p = p.mul(&IntPolynomial::from_i64(&[-r, 1]));
        }
        for &(beta, gamma) in &quad {
            p = p.mul(&IntPolynomial::from_i64(&[gamma, beta, 1]));
        }
        let f = roots_degree_le2(&p).unwrap();
        prop_assert!(f.is_complete());
        let total: usize = f.roots().iter().map(|r| r.multiplicity).sum();
        prop_assert_eq!(total, p.degree().unwrap());
        for r in f.roots() {
            prop_assert!(eval_at_quadratic(&p, &r.value).is_zero());
        }
    }

    #[test]
    fn oracle_is_sound(g in bipartite_graph(6)) {
        let w = build_bipartite_walk(&g).unwrap();
        if let OracleOutcome::Periodic { period } = exact_period_oracle(&w.u, 200).unwrap() {
            prop_assert!(w.u.pow(period).unwrap().is_identity());
            for j in 1..period {
                prop_assert!(!w.u.pow(j).unwrap().is_identity());
            }
        }
    }
}

#[test]
fn spectral_decomposition_reconstructs() {
    let a = integer_matrix_f64(&adjacency_matrix(&qwalk_core::fixtures::petersen()));
    let d = sym_eig(&a).unwrap();
    let lambda = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&d.eigenvalues));
    let back = &d.eigenvectors * lambda * d.eigenvectors.transpose();
    assert!((back - a).abs().max() <= 1e-9);
}
