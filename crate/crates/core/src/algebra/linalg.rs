//! Small dense linear algebra over [`Scalar`].

use super::scalar::Scalar;

/// Row echelon form in place; returns the pivot columns.
pub fn row_reduce(rows: &mut [Vec<Scalar>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().unwrap();
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = &*v - &(&f * pv);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let mut m = rows.to_vec();
    row_reduce(&mut m).len()
}

/// Solves `A x = b` for square invertible `A`.
pub fn solve(a: &[Vec<Scalar>], b: &[Scalar]) -> Option<Vec<Scalar>> {
    let n = a.len();
    let mut aug: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(row, v)| {
            let mut r = row.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// 3×3 matrices acting on column vectors.
pub type Mat3 = [[Scalar; 3]; 3];

pub fn det3(m: &Mat3) -> Scalar {
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
        &(&m[r1][c1] * &m[r2][c2]) - &(&m[r1][c2] * &m[r2][c1])
    };
    let t0 = &m[0][0] * &minor(1, 2, 1, 2);
    let t1 = &m[0][1] * &minor(1, 2, 0, 2);
    let t2 = &m[0][2] * &minor(1, 2, 0, 1);
    &(&t0 - &t1) + &t2
}

pub fn inverse3(m: &Mat3) -> Option<Mat3> {
    let d = det3(m);
    let dinv = d.inv()?;
    let cof = |r: usize, c: usize| {
        let rows: Vec<usize> = (0..3).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..3).filter(|&j| j != c).collect();
        let v = &(&m[rows[0]][cols[0]] * &m[rows[1]][cols[1]])
            - &(&m[rows[0]][cols[1]] * &m[rows[1]][cols[0]]);
        if (r + c) % 2 == 1 {
            -v
        } else {
            v
        }
    };
    // inverse = adjugate / det, adjugate = transpose of cofactors
    Some(std::array::from_fn(|i| {
        std::array::from_fn(|j| &cof(j, i) * &dinv)
    }))
}

pub fn mul_vec3(m: &Mat3, v: &[Scalar; 3]) -> [Scalar; 3] {
    std::array::from_fn(|i| {
        let mut acc = Scalar::zero();
        for (a, b) in m[i].iter().zip(v) {
            acc = &acc + &(a * b);
        }
        acc
    })
}

pub fn mul3(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = Scalar::zero();
            for k in 0..3 {
                acc = &acc + &(&a[i][k] * &b[k][j]);
            }
            acc
        })
    })
}

pub fn transpose3(m: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| m[j][i].clone()))
}

pub fn identity3() -> Mat3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| if i == j { Scalar::one() } else { Scalar::zero() })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: [[i64; 3]; 3]) -> Mat3 {
        rows.map(|r| r.map(Scalar::from_int))
    }

    #[test]
    fn inverse_round_trip() {
        let a = m([[1, 2, 0], [0, 1, 3], [4, 0, 1]]);
        let inv = inverse3(&a).unwrap();
        assert_eq!(mul3(&a, &inv), identity3());
        assert_eq!(det3(&a), Scalar::from_int(25));
    }

    #[test]
    fn singular_has_no_inverse() {
        assert!(inverse3(&m([[1, 2, 3], [2, 4, 6], [0, 0, 1]])).is_none());
    }

    #[test]
    fn solve_and_rank() {
        let a: Vec<Vec<Scalar>> = vec![
            vec![Scalar::from_int(2), Scalar::from_int(1)],
            vec![Scalar::from_int(1), Scalar::from_int(3)],
        ];
        let x = solve(&a, &[Scalar::from_int(5), Scalar::from_int(10)]).unwrap();
        assert_eq!(x, vec![Scalar::from_int(1), Scalar::from_int(3)]);
        let dep = vec![a[0].clone(), a[0].iter().map(|v| v * &Scalar::from_int(2)).collect()];
        assert_eq!(rank(&dep), 1);
    }
}
