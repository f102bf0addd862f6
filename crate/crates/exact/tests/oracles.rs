use wonderland_exact::{int, rat, vars, Bivector, Matrix, Poly, Rational};

fn laplace_det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = int(0);
    for j in 0..n {
        if m[0][j] == int(0) {
            continue;
        }
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = m[0][j].clone() * laplace_det(&minor);
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

fn lcg_matrix(seed: u64, n: usize) -> Vec<Vec<Rational>> {
    let mut s = seed;
    let mut next = || {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((s >> 33) % 7) as i64 - 3
    };
    (0..n)
        .map(|_| (0..n).map(|_| rat(next(), next().abs() + 1)).collect())
        .collect()
}

#[test]
fn rank_agrees_with_cofactor_determinant() {
    for seed in 0..40u64 {
        let mut rows = lcg_matrix(seed, 5);
        if seed % 3 == 0 {
            // force a dependency
            let dep: Vec<Rational> = rows[0]
                .iter()
                .zip(&rows[1])
                .map(|(a, b)| a.clone() * rat(2, 3) - b.clone())
                .collect();
            rows[4] = dep;
        }
        let m = Matrix::from_rows(rows.clone()).unwrap();
        let nonsingular = laplace_det(&rows) != int(0);
        assert_eq!(m.rank() == 5, nonsingular, "seed {seed}");
        assert_eq!(m.determinant(), laplace_det(&rows));
    }
}

#[test]
fn trace_form_spans_kernel_of_conjugation_derivations() {
    // Linear forms (a, b, c, d) on 2x2 matrices; the derivation for x sends a
    // coordinate function to the matching entry of [A, x].
    let commutator_rows = |x: [[i64; 2]; 2]| -> Vec<Vec<Rational>> {
        // row r = coordinate of [A,x], column = coefficient on (a,b,c,d)
        let mut out = vec![vec![int(0); 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    // (A x)_ij = sum_k A_ik x_kj
                    out[2 * i + j][2 * i + k] += int(x[k][j]);
                    // (x A)_ij = sum_k x_ik A_kj
                    out[2 * i + j][2 * k + j] -= int(x[i][k]);
                }
            }
        }
        out
    };
    // A linear form w·A is invariant iff w^T M_x = 0 for each x.
    let mut rows = Vec::new();
    for x in [[[0, 1], [0, 0]], [[1, 0], [0, -1]], [[0, 0], [1, 0]]] {
        let m = Matrix::from_rows(commutator_rows(x)).unwrap().transpose();
        rows.extend(m.to_rows());
    }
    let stacked = Matrix::from_rows(rows).unwrap();
    let k = stacked.kernel_basis();
    assert_eq!(k, vec![vec![int(1), int(0), int(0), int(1)]]);
}

#[test]
fn derivative_matches_difference_quotient() {
    let v = vars(&["z"]);
    let p = Poly::from_terms(
        &v,
        [
            (vec![4], rat(3, 2)),
            (vec![3], rat(-5, 7)),
            (vec![1], int(4)),
            (vec![0], int(9)),
        ],
    )
    .unwrap();
    let w = vars(&["z", "h"]);
    let zz = Poly::var(&w, 0);
    let hh = Poly::var(&w, 1);
    let shifted = p.compose(&[&zz + &hh]).unwrap();
    let diffq = &shifted - &p.embed(&w, &[0]);
    // coefficient of h^1, as a polynomial in z
    let mut linear = Poly::zero(&v);
    for (m, c) in diffq.terms() {
        if m.exponents()[1] == 1 {
            let mono = Poly::from_terms(&v, [(vec![m.exponents()[0]], c.clone())]).unwrap();
            linear = &linear + &mono;
        }
    }
    assert_eq!(p.diff("z").unwrap(), linear);
}

#[test]
fn bracket_matches_literal_double_sum() {
    let mut s = 17u64;
    let mut next = || {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
        rat(((s >> 35) % 11) as i64 - 5, ((s >> 20) % 4) as i64 + 1)
    };
    let n = 5;
    for _ in 0..10 {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let x = next();
                m[(i, j)] = x.clone();
                m[(j, i)] = -x;
            }
        }
        let l = Bivector::new(m.clone()).unwrap();
        let df: Vec<Rational> = (0..n).map(|_| next()).collect();
        let dg: Vec<Rational> = (0..n).map(|_| next()).collect();
        let mut literal = int(0);
        for i in 0..n {
            for j in i + 1..n {
                literal += m[(i, j)].clone()
                    * (df[i].clone() * dg[j].clone() - df[j].clone() * dg[i].clone());
            }
        }
        assert_eq!(l.bracket_eval(&df, &dg).unwrap(), literal);
    }
}
