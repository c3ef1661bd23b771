//! Exact integer linear algebra: column echelon form with a unimodular
//! transformation, kernel bases, integer solving of `A x = b`, and
//! canonical reduction of a solution modulo a lattice.
//!
//! Everything runs over `BigInt`; feasibility verdicts never touch
//! rational or floating intermediates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Column echelon form: returns `(h, u, pivots)` with `a * u = h`,
/// `u` unimodular, and `pivots` the list of `(row, col)` pivot positions
/// in increasing row and column order.
fn column_echelon(a: &[Vec<BigInt>], cols: usize) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>, Vec<(usize, usize)>) {
    let rows = a.len();
    let mut h: Vec<Vec<BigInt>> = a.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..cols)
        .map(|i| {
            (0..cols)
                .map(|j| if i == j { BigInt::from(1) } else { BigInt::zero() })
                .collect()
        })
        .collect();
    // u is stored column-major: u[c] is the c-th column.
    let mut pivots = Vec::new();
    let mut next_col = 0;
    for r in 0..rows {
        if next_col >= cols {
            break;
        }
        // Eliminate within row r over columns next_col..cols by gcd steps.
        loop {
            let mut best: Option<usize> = None;
            for c in next_col..cols {
                if !h_entry(&h, r, c).is_zero() {
                    best = match best {
                        None => Some(c),
                        Some(b) => {
                            if h_entry(&h, r, c).abs() < h_entry(&h, r, b).abs() {
                                Some(c)
                            } else {
                                Some(b)
                            }
                        }
                    };
                }
            }
            let Some(p) = best else { break };
            let mut others = false;
            for c in next_col..cols {
                if c == p || h_entry(&h, r, c).is_zero() {
                    continue;
                }
                others = true;
                let q = h_entry(&h, r, c).div_floor(h_entry(&h, r, p));
                col_axpy(&mut h, &mut u, c, p, &q);
            }
            if !others {
                // Single nonzero column left in this row: it is the pivot.
                col_swap(&mut h, &mut u, next_col, p);
                if h_entry(&h, r, next_col).is_negative() {
                    col_negate(&mut h, &mut u, next_col);
                }
                // Reduce earlier pivot columns against this one for a
                // deterministic form.
                for &(pr, pc) in &pivots {
                    let _ = pr;
                    let q = h_entry(&h, r, pc).div_floor(h_entry(&h, r, next_col));
                    if !q.is_zero() {
                        col_axpy(&mut h, &mut u, pc, next_col, &q);
                    }
                }
                pivots.push((r, next_col));
                next_col += 1;
                break;
            }
        }
    }
    (h, u, pivots)
}

fn h_entry<'a>(h: &'a [Vec<BigInt>], r: usize, c: usize) -> &'a BigInt {
    &h[r][c]
}

fn col_axpy(h: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in h.iter_mut() {
        let s = row[source].clone();
        row[target] -= q * s;
    }
    let ucol: Vec<BigInt> = u[source].clone();
    for (t, s) in u[target].iter_mut().zip(ucol) {
        *t -= q * s;
    }
}

fn col_swap(h: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in h.iter_mut() {
        row.swap(a, b);
    }
    u.swap(a, b);
}

fn col_negate(h: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], c: usize) {
    for row in h.iter_mut() {
        let v = -row[c].clone();
        row[c] = v;
    }
    for v in u[c].iter_mut() {
        *v = -v.clone();
    }
}

/// Basis of `{x : A x = 0}` over the integers, returned in row Hermite
/// normal form so the basis is canonical for the solution lattice.
pub fn kernel_basis(a: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let (_, u, pivots) = column_echelon(a, cols);
    let rank = pivots.len();
    let raw: Vec<Vec<BigInt>> = (rank..cols).map(|c| u[c].clone()).collect();
    row_hnf(raw)
}

/// One integer solution of `A x = b`, or `None` when the system is
/// infeasible over the integers.
pub fn solve(a: &[Vec<BigInt>], b: &[BigInt], cols: usize) -> Option<Vec<BigInt>> {
    let (h, u, pivots) = column_echelon(a, cols);
    let rows = a.len();
    let mut y = vec![BigInt::zero(); cols];
    let mut piv_iter = pivots.iter().peekable();
    for r in 0..rows {
        let mut residual = b[r].clone();
        for c in 0..cols {
            if !h[r][c].is_zero() && !y[c].is_zero() {
                residual -= &h[r][c] * &y[c];
            }
        }
        if let Some(&&(pr, pc)) = piv_iter.peek() {
            if pr == r {
                piv_iter.next();
                let (q, rem) = residual.div_rem(&h[r][pc]);
                if !rem.is_zero() {
                    return None;
                }
                y[pc] = q;
                continue;
            }
        }
        if !residual.is_zero() {
            return None;
        }
    }
    // x = U y
    let mut x = vec![BigInt::zero(); cols];
    for c in 0..cols {
        if y[c].is_zero() {
            continue;
        }
        for (xi, ui) in x.iter_mut().zip(&u[c]) {
            *xi += ui * &y[c];
        }
    }
    Some(x)
}

/// Row Hermite normal form of a set of lattice generators: positive
/// pivots, entries above each pivot reduced into `[0, pivot)`.
pub fn row_hnf(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return rows;
    }
    let width = rows[0].len();
    let mut done: Vec<Vec<BigInt>> = Vec::new();
    let mut col = 0;
    while col < width && !rows.is_empty() {
        // gcd-reduce the column among remaining rows
        loop {
            let mut best: Option<usize> = None;
            for (i, r) in rows.iter().enumerate() {
                if !r[col].is_zero() {
                    best = match best {
                        None => Some(i),
                        Some(b) => {
                            if r[col].abs() < rows[b][col].abs() {
                                Some(i)
                            } else {
                                Some(b)
                            }
                        }
                    };
                }
            }
            let Some(p) = best else { break };
            let mut others = false;
            for i in 0..rows.len() {
                if i == p || rows[i][col].is_zero() {
                    continue;
                }
                others = true;
                let q = rows[i][col].div_floor(&rows[p][col]);
                for j in 0..width {
                    let s = rows[p][j].clone();
                    rows[i][j] -= &q * s;
                }
            }
            if !others {
                let mut pivot_row = rows.remove(p);
                if pivot_row[col].is_negative() {
                    for v in pivot_row.iter_mut() {
                        *v = -v.clone();
                    }
                }
                // Reduce already-finished rows above this pivot.
                for d in done.iter_mut() {
                    let q = d[col].div_floor(&pivot_row[col]);
                    if !q.is_zero() {
                        for j in 0..width {
                            let s = pivot_row[j].clone();
                            d[j] -= &q * s;
                        }
                    }
                }
                done.push(pivot_row);
                break;
            }
        }
        col += 1;
    }
    done
}

/// Canonical representative of `x + L` where `L` is spanned by `basis`
/// (rows already in HNF): at each pivot position the coordinate is
/// reduced into `[0, pivot)`.
pub fn reduce_mod_lattice(mut x: Vec<BigInt>, basis: &[Vec<BigInt>]) -> Vec<BigInt> {
    for row in basis {
        let Some(p) = row.iter().position(|v| !v.is_zero()) else {
            continue;
        };
        let q = x[p].div_floor(&row[p]);
        if !q.is_zero() {
            for (xi, ri) in x.iter_mut().zip(row) {
                *xi -= &q * ri;
            }
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&v| bi(v)).collect()).collect()
    }

    #[test]
    fn kernel_of_sum_constraint() {
        // x + y = 0 over Z^2 -> kernel spanned by (1, -1)
        let a = mat(&[&[1, 1]]);
        let k = kernel_basis(&a, 2);
        assert_eq!(k.len(), 1);
        assert_eq!(&k[0][0] * bi(1) + &k[0][1] * bi(1), bi(0));
    }

    #[test]
    fn solve_feasible_and_infeasible() {
        // 2x = 4 feasible, 2x = 3 not
        let a = mat(&[&[2]]);
        assert_eq!(solve(&a, &[bi(4)], 1), Some(vec![bi(2)]));
        assert_eq!(solve(&a, &[bi(3)], 1), None);
    }

    #[test]
    fn solve_underdetermined() {
        // x + y = 1 has integer solutions
        let a = mat(&[&[1, 1]]);
        let x = solve(&a, &[bi(1)], 2).unwrap();
        assert_eq!(&x[0] + &x[1], bi(1));
    }

    #[test]
    fn solve_overdetermined_consistent() {
        let a = mat(&[&[1, 0], &[0, 1], &[1, 1]]);
        let x = solve(&a, &[bi(2), bi(3), bi(5)], 2).unwrap();
        assert_eq!(x, vec![bi(2), bi(3)]);
        assert_eq!(solve(&a, &[bi(2), bi(3), bi(6)], 2), None);
    }

    #[test]
    fn reduction_is_canonical() {
        // lattice spanned by (1,-1); representatives have first coord 0
        let basis = row_hnf(mat(&[&[1, -1]]));
        let x = reduce_mod_lattice(vec![bi(5), bi(-4)], &basis);
        assert_eq!(x[0], bi(0));
        assert_eq!(x[1], bi(1));
        let y = reduce_mod_lattice(vec![bi(-3), bi(4)], &basis);
        assert_eq!(y, x);
    }

    #[test]
    fn hnf_basis_is_deterministic() {
        let a = mat(&[&[2, 4, 6]]);
        let k1 = kernel_basis(&a, 3);
        let k2 = kernel_basis(&a, 3);
        assert_eq!(k1, k2);
        assert_eq!(k1.len(), 2);
        for row in &k1 {
            assert_eq!(&row[0] * bi(2) + &row[1] * bi(4) + &row[2] * bi(6), bi(0));
        }
    }
}
