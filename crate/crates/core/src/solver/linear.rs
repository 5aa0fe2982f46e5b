use rug::{Integer, Rational};

/// Sparse rational equation `Σ coeff · x_col = 0`.
pub type SparseRow = Vec<(usize, Rational)>;

/// Exact nullspace of the rows over `ncols` unknowns.
///
/// Each row is scaled to a primitive integer vector and eliminated
/// fraction-free (Gauss-Jordan, first nonzero pivot, content removed after
/// every update), so intermediate entries stay integers of moderate size.
/// Returns one basis vector per free column, with that column set to 1.
pub fn nullspace_basis(rows: &[SparseRow], ncols: usize) -> (usize, Vec<Vec<Rational>>) {
    let mut m: Vec<Vec<Integer>> = rows.iter().map(|r| primitive_row(r, ncols)).collect();
    m.retain(|r| r.iter().any(|x| x.cmp0().is_ne()));

    let mut pivots: Vec<usize> = Vec::new();
    let mut next = 0;
    for col in 0..ncols {
        let Some(found) = (next..m.len()).find(|&i| m[i][col].cmp0().is_ne()) else {
            continue;
        };
        m.swap(next, found);
        let (head, tail) = m.split_at_mut(next + 1);
        let (before, piv) = head.split_at_mut(next);
        let piv = &piv[0];
        for row in before.iter_mut().chain(tail.iter_mut()) {
            if row[col].cmp0().is_ne() {
                eliminate(row, piv, col);
            }
        }
        pivots.push(col);
        next += 1;
        if next == m.len() {
            break;
        }
    }

    let rank = pivots.len();
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let basis = (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|free| {
            let mut v = vec![Rational::new(); ncols];
            v[free] = Rational::from(1);
            for (r, &pc) in pivots.iter().enumerate() {
                let a = &m[r][free];
                if a.cmp0().is_ne() {
                    v[pc] = -Rational::from((a.clone(), m[r][pc].clone()));
                }
            }
            v
        })
        .collect();
    (rank, basis)
}

/// `row <- piv[col] * row - row[col] * piv`, then divided by its content.
fn eliminate(row: &mut [Integer], piv: &[Integer], col: usize) {
    let a = piv[col].clone();
    let b = row[col].clone();
    for (x, p) in row.iter_mut().zip(piv) {
        if p.cmp0().is_eq() {
            if x.cmp0().is_ne() {
                *x *= &a;
            }
        } else {
            *x *= &a;
            *x -= Integer::from(&b * p);
        }
    }
    remove_content(row);
}

fn remove_content(row: &mut [Integer]) {
    let mut g = Integer::new();
    for x in row.iter() {
        if x.cmp0().is_ne() {
            g.gcd_mut(x);
            if g == 1 {
                return;
            }
        }
    }
    if g > 1 {
        for x in row.iter_mut() {
            x.div_exact_mut(&g);
        }
    }
}

fn primitive_row(row: &SparseRow, ncols: usize) -> Vec<Integer> {
    let mut lcm = Integer::from(1);
    for (_, q) in row {
        lcm.lcm_mut(q.denom());
    }
    let mut out = vec![Integer::new(); ncols];
    for (c, q) in row {
        let scaled = Rational::from(q * &lcm);
        out[*c] += scaled.numer();
    }
    remove_content(&mut out);
    out
}

/// Exact `Σ row · v` for every row.
pub fn residuals(rows: &[SparseRow], v: &[Rational]) -> Vec<Rational> {
    rows.iter().map(|r| r.iter().fold(Rational::new(), |acc, (c, q)| acc + Rational::from(q * &v[*c]))).collect()
}
