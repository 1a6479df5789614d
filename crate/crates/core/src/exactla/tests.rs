use proptest::prelude::*;

use super::*;

fn q(v: i64) -> Q {
    int(v)
}

fn dense(rows: &[&[i64]]) -> SparseMatrix {
    SparseMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect::<Vec<_>>())
}

#[test]
fn rank_examples() {
    assert_eq!(rank(&SparseMatrix::zeros(0, 0)), 0);
    assert_eq!(rank(&SparseMatrix::identity(3)), 3);
    assert_eq!(rank(&dense(&[&[1, 2], &[2, 4]])), 1);
}

#[test]
fn kernel_examples() {
    assert!(kernel_basis(&SparseMatrix::identity(4)).is_empty());
    let k = kernel_basis(&SparseMatrix::zeros(2, 2));
    assert_eq!(k.len(), 2);
    assert_eq!(rank(&SparseMatrix::from_columns(2, k)), 2);
    let k = kernel_basis(&dense(&[&[1, 1]]));
    assert_eq!(k.len(), 1);
    assert_eq!(k[0].get(0), -k[0].get(1));
    assert!(!k[0].is_zero());
}

#[test]
fn quotient_examples() {
    let amb = vec![SparseVec::unit(0), SparseVec::unit(1)];
    assert!(quotient_basis(&amb, &amb).unwrap().is_empty());
    assert_eq!(quotient_basis(&[], &amb).unwrap().len(), 2);
    let err = quotient_basis(&[SparseVec::unit(2)], &amb).unwrap_err();
    assert_eq!(err.code(), "inconsistent");

    // b = [[0,1],[0,0]] on a two-dimensional space: ker b = im b = span(e0)
    let b = dense(&[&[0, 1], &[0, 0]]);
    let h = Subquotient::new(&b, &b).unwrap();
    assert_eq!(h.dim(), 0);
    let cycles = kernel_basis(&b);
    assert!(quotient_basis(b.columns(), &cycles).unwrap().is_empty());
}

#[test]
fn solve_examples() {
    let v = SparseVec::from_pairs([(0, q(3)), (2, q(-1))]);
    assert_eq!(solve(&SparseMatrix::identity(3), &v), Some(v.clone()));
    assert_eq!(solve(&SparseMatrix::zeros(3, 3), &v), None);
    let half = solve(&dense(&[&[2]]), &SparseVec::unit(0)).unwrap();
    assert_eq!(half.get(0), Q::new(1.into(), 2.into()));
}

#[test]
fn subquotient_rejects_non_complex() {
    let id = SparseMatrix::identity(2);
    assert!(Subquotient::new(&id, &id).is_err());
}

#[test]
fn subquotient_coordinates() {
    // C2 -> C1 -> C0 with C1 = Q^3, boundaries span(e0), cycles span(e0, e1)
    let incoming = SparseMatrix::from_columns(3, vec![SparseVec::unit(0)]);
    let outgoing = SparseMatrix::from_columns(1, vec![SparseVec::new(), SparseVec::new(), SparseVec::unit(0)]);
    let h = Subquotient::new(&incoming, &outgoing).unwrap();
    assert_eq!(h.dim(), 1);
    let z = SparseVec::from_pairs([(0, q(5)), (1, q(2))]);
    let c = h.coordinates(&z).unwrap();
    assert_eq!(h.representatives()[0].scaled(&c.get(0)).sub(&z).get(1), q(0));
    assert!(h.is_boundary(&SparseVec::unit(0)));
    assert!(h.coordinates(&SparseVec::unit(2)).is_none());
}

#[test]
fn determinant_small() {
    assert_eq!(determinant(&dense(&[&[1, 2], &[3, 4]])), q(-2));
    assert_eq!(determinant(&dense(&[&[0, 1], &[1, 0]])), q(-1));
    assert_eq!(determinant(&dense(&[&[1, 2], &[2, 4]])), q(0));
    assert_eq!(determinant(&SparseMatrix::zeros(0, 0)), q(1));
}

#[test]
fn rational_text_form() {
    for s in ["0", "7", "-3", "1/2", "-5/3", "123456789012345678901234567890"] {
        assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
    }
    for s in ["2/4", "3/1", "1/-2", "-0", "+1", "01", "1/0", "", " 1", "1.5", "a/b", "0/5"] {
        assert!(parse_rational(s).is_err(), "{s:?} should be rejected");
    }
}

#[test]
fn mod_p_denominator() {
    let m = SparseMatrix::from_dense(&[vec![Q::new(1.into(), 7.into())]]);
    assert_eq!(modp::rank_mod_p(&m, 7), None);
    assert_eq!(modp::rank_mod_p(&m, 5), Some(1));
    assert_eq!(modp::rank_mod_p(&dense(&[&[5, 0], &[0, 1]]), 5), Some(1));
}

fn int_matrix(max_dim: usize) -> impl Strategy<Value = SparseMatrix> {
    (0..=max_dim, 0..=max_dim).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r).prop_map(move |rows| {
            if rows.is_empty() {
                SparseMatrix::zeros(0, c)
            } else {
                SparseMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect::<Vec<_>>())
            }
        })
    })
}

proptest! {
    #[test]
    fn rank_nullity(m in int_matrix(6)) {
        let k = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + k.len(), m.cols());
        for v in &k {
            prop_assert!(m.mul_vec(v).is_zero());
        }
        prop_assert_eq!(rank(&SparseMatrix::from_columns(m.cols(), k.clone())), k.len());
    }

    #[test]
    fn solve_is_exact(m in int_matrix(6), x in proptest::collection::vec(-4i64..=4, 6)) {
        let x = SparseVec::from_dense(&x[..m.cols()].iter().map(|&v| q(v)).collect::<Vec<_>>());
        let t = m.mul_vec(&x);
        let y = solve(&m, &t).expect("target is in the image by construction");
        prop_assert_eq!(m.mul_vec(&y), t);
    }

    #[test]
    fn transpose_preserves_rank(m in int_matrix(6)) {
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn rank_agrees_mod_some_prime(m in int_matrix(7)) {
        let r = rank(&m);
        let agree = [1_000_003u64, 998_244_353, 2_147_483_647]
            .iter()
            .any(|&p| modp::rank_mod_p(&m, p) == Some(r));
        prop_assert!(agree);
    }
}
