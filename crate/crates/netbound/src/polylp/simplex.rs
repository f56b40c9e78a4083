//! Dense two-phase primal simplex over exact rationals.
//!
//! Variables are nonnegative. The pivot rule is Dantzig's, falling back to
//! Bland's smallest-index rule permanently once the objective stalls, which
//! guarantees termination on degenerate problems. All arithmetic is exact.

use super::Rel;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimplexResult {
    Optimal { value: BigRational, x: Vec<BigRational> },
    /// Feasible point plus a structural-space ray of unbounded improvement.
    Unbounded { x: Vec<BigRational>, ray: Vec<BigRational> },
    Infeasible,
}


/// Maximize `objective . x` over `x >= 0` subject to the rows.
pub fn maximize(
    objective: &[BigRational],
    rows: &[(Vec<(usize, BigRational)>, Rel, BigRational)],
) -> SimplexResult {
    let nv = objective.len();
    let m = rows.len();

    // Count auxiliary columns. Every row gets a slack (Le) or surplus (Ge);
    // Ge and Eq rows get an artificial for the phase-1 basis.
    let mut num_slack = 0;
    let mut num_art = 0;
    for (_, rel, _) in rows {
        match rel {
            Rel::Le | Rel::Ge => num_slack += 1,
            Rel::Eq => {}
        }
        if !matches!(rel, Rel::Le) {
            num_art += 1;
        }
    }
    let total = nv + num_slack + num_art;
    let rhs_col = total;

    let zero = BigRational::zero();
    let one = BigRational::one();
    let mut tab: Vec<Vec<BigRational>> = vec![vec![zero.clone(); total + 1]; m + 1];
    let mut basis = vec![usize::MAX; m];
    let art_offset = nv + num_slack;

    let mut slack_idx = 0;
    let mut art_idx = 0;
    for (r, (coeffs, rel, rhs)) in rows.iter().enumerate() {
        // Normalize so the right-hand side is nonnegative.
        let flip = rhs.is_negative();
        let sign = if flip { -one.clone() } else { one.clone() };
        for (c, v) in coeffs {
            tab[r][*c] = &sign * v;
        }
        tab[r][rhs_col] = &sign * rhs;
        let rel = match (rel, flip) {
            (Rel::Eq, _) => Rel::Eq,
            (Rel::Le, false) | (Rel::Ge, true) => Rel::Le,
            (Rel::Ge, false) | (Rel::Le, true) => Rel::Ge,
        };
        match rel {
            Rel::Le => {
                tab[r][nv + slack_idx] = one.clone();
                basis[r] = nv + slack_idx;
                slack_idx += 1;
            }
            Rel::Ge => {
                tab[r][nv + slack_idx] = -one.clone();
                slack_idx += 1;
                tab[r][art_offset + art_idx] = one.clone();
                basis[r] = art_offset + art_idx;
                art_idx += 1;
            }
            Rel::Eq => {
                tab[r][art_offset + art_idx] = one.clone();
                basis[r] = art_offset + art_idx;
                art_idx += 1;
            }
        }
    }

    // Phase 1: maximize -(sum of artificials). Price out the artificial
    // basis so the objective row is expressed in nonbasic terms.
    if num_art > 0 {
        for c in 0..=total {
            let mut acc = BigRational::zero();
            for r in 0..m {
                if basis[r] >= art_offset {
                    acc += &tab[r][c];
                }
            }
            tab[m][c] = acc;
        }
        for a in art_offset..total {
            tab[m][a] = BigRational::zero();
        }
        match iterate(&mut tab, &mut basis, |_| true) {
            Iterated::Optimal => {}
            Iterated::Unbounded(_) => unreachable!("phase 1 is bounded below by zero"),
        }
        if !tab[m][rhs_col].is_zero() {
            return SimplexResult::Infeasible;
        }
        // Drive leftover artificials out of the basis where possible; a row
        // with no eligible pivot is redundant and can keep its zero
        // artificial harmlessly.
        for r in 0..m {
            if basis[r] >= art_offset {
                if let Some(c) = (0..art_offset).find(|&c| !tab[r][c].is_zero()) {
                    pivot(&mut tab, &mut basis, r, c);
                }
            }
        }
    }

    // Phase 2: the real objective, priced out over the current basis.
    for c in 0..=total {
        tab[m][c] = BigRational::zero();
    }
    for (c, w) in objective.iter().enumerate() {
        tab[m][c] = w.clone();
    }
    for r in 0..m {
        if basis[r] < nv && !tab[m][basis[r]].is_zero() {
            let factor = tab[m][basis[r]].clone();
            for c in 0..=total {
                let delta = &factor * &tab[r][c];
                tab[m][c] -= delta;
            }
        }
    }
    match iterate(&mut tab, &mut basis, |c| c < art_offset) {
        Iterated::Optimal => {
            let mut x = vec![BigRational::zero(); nv];
            for r in 0..m {
                if basis[r] < nv {
                    x[basis[r]] = tab[r][rhs_col].clone();
                }
            }
            // The objective row holds -value after pricing out.
            let value = -tab[m][rhs_col].clone();
            SimplexResult::Optimal { value, x }
        }
        Iterated::Unbounded(entering) => {
            let mut x = vec![BigRational::zero(); nv];
            let mut ray = vec![BigRational::zero(); nv];
            for r in 0..m {
                if basis[r] < nv {
                    x[basis[r]] = tab[r][rhs_col].clone();
                    ray[basis[r]] = -tab[r][entering].clone();
                }
            }
            if entering < nv {
                ray[entering] = BigRational::one();
            }
            SimplexResult::Unbounded { x, ray }
        }
    }
}

enum Iterated {
    Optimal,
    Unbounded(usize),
}

fn iterate<F: Fn(usize) -> bool>(
    tab: &mut Vec<Vec<BigRational>>,
    basis: &mut [usize],
    allow: F,
) -> Iterated {
    let m = basis.len();
    let total = tab[0].len() - 1;
    loop {
        // Dantzig entering rule: most positive reduced cost.
        let mut entering: Option<usize> = None;
        for c in 0..total {
            if allow(c) && tab[m][c].is_positive() {
                entering = match entering {
                    Some(b) if tab[m][b] >= tab[m][c] => Some(b),
                    _ => Some(c),
                };
            }
        }
        let Some(entering) = entering else {
            return Iterated::Optimal;
        };
        // Lexicographic ratio test: starting from an identity basis every
        // row is lexicographically positive and stays so, which rules out
        // cycling even on the heavily degenerate entropy polytopes.
        let mut leaving: Option<usize> = None;
        for r in 0..m {
            if !tab[r][entering].is_positive() {
                continue;
            }
            leaving = match leaving {
                None => Some(r),
                Some(best) => {
                    if lex_smaller(tab, r, best, entering, total) {
                        Some(r)
                    } else {
                        Some(best)
                    }
                }
            };
        }
        let Some(leaving) = leaving else {
            return Iterated::Unbounded(entering);
        };
        pivot(tab, basis, leaving, entering);
        if std::env::var_os("NETBOUND_LP_DEBUG").is_some() {
            PIVOTS.with(|p| *p.borrow_mut() += 1);
        }
    }
}

/// Is row `r` lexicographically smaller than row `s` after scaling both by
/// their (positive) pivot-column entries? Compares the right-hand side
/// first, then the columns left to right.
fn lex_smaller(
    tab: &[Vec<BigRational>],
    r: usize,
    s: usize,
    entering: usize,
    total: usize,
) -> bool {
    let ar = &tab[r][entering];
    let as_ = &tab[s][entering];
    let lhs = &tab[r][total] * as_;
    let rhs = &tab[s][total] * ar;
    if lhs != rhs {
        return lhs < rhs;
    }
    for c in 0..total {
        let zr = tab[r][c].is_zero();
        let zs = tab[s][c].is_zero();
        if zr && zs {
            continue;
        }
        let lhs = &tab[r][c] * as_;
        let rhs = &tab[s][c] * ar;
        if lhs != rhs {
            return lhs < rhs;
        }
    }
    false
}

thread_local! {
    pub static PIVOTS: std::cell::RefCell<u64> = const { std::cell::RefCell::new(0) };
}

fn pivot(tab: &mut Vec<Vec<BigRational>>, basis: &mut [usize], row: usize, col: usize) {
    let total = tab[0].len() - 1;
    let pv = tab[row][col].clone();
    if !pv.is_one() {
        let inv = pv.recip();
        for c in 0..=total {
            if !tab[row][c].is_zero() {
                tab[row][c] *= &inv;
            }
        }
    }
    let pivot_row = tab[row].clone();
    for (r, row_vec) in tab.iter_mut().enumerate() {
        if r == row || row_vec[col].is_zero() {
            continue;
        }
        let factor = row_vec[col].clone();
        for (c, cell) in row_vec.iter_mut().enumerate() {
            if !pivot_row[c].is_zero() {
                *cell -= &factor * &pivot_row[c];
            }
        }
    }
    basis[row] = col;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn r(n: i64) -> BigRational {
        rat_int(n)
    }

    #[test]
    fn one_variable_box() {
        let res = maximize(&[r(1)], &[(vec![(0, r(1))], Rel::Le, r(3))]);
        assert_eq!(res, SimplexResult::Optimal { value: r(3), x: vec![r(3)] });
    }

    #[test]
    fn two_variable_cap() {
        let rows = vec![
            (vec![(0, r(1)), (1, r(1))], Rel::Le, r(4)),
            (vec![(0, r(1))], Rel::Le, r(3)),
            (vec![(1, r(1))], Rel::Le, r(3)),
        ];
        match maximize(&[r(1), r(1)], &rows) {
            SimplexResult::Optimal { value, x } => {
                assert_eq!(value, r(4));
                assert_eq!(&x[0] + &x[1], r(4));
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn infeasible_detected() {
        let rows = vec![
            (vec![(0, r(1))], Rel::Ge, r(5)),
            (vec![(0, r(1))], Rel::Le, r(3)),
        ];
        assert_eq!(maximize(&[r(1)], &rows), SimplexResult::Infeasible);
    }

    #[test]
    fn unbounded_detected_with_ray() {
        match maximize(&[r(1), r(0)], &[(vec![(1, r(1))], Rel::Le, r(1))]) {
            SimplexResult::Unbounded { ray, .. } => {
                assert!(ray[0].is_positive());
            }
            other => panic!("expected unbounded, got {other:?}"),
        }
    }

    #[test]
    fn equality_rows_and_fractions() {
        // max x + y with x + 2y = 2, y <= 1/2.
        let rows = vec![
            (vec![(0, r(1)), (1, r(2))], Rel::Eq, r(2)),
            (vec![(1, r(1))], Rel::Le, rat(1, 2)),
        ];
        match maximize(&[r(1), r(1)], &rows) {
            SimplexResult::Optimal { value, x } => {
                assert_eq!(value, r(2)); // x = 2, y = 0
                assert_eq!(&x[0] + r(2) * &x[1], r(2));
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn degenerate_origin_terminates() {
        // Both capacity-zero rows make the origin a degenerate vertex; the
        // stall guard must still reach the optimum: x = (1, 0, 1, 0) with
        // value 3/4 + 1/50 (x1 never pays: the objective falls by
        // 150 - 18 per unit along the binding second row).
        let rows = vec![
            (vec![(0, rat(1, 4)), (1, r(-8)), (2, r(-1)), (3, r(9))], Rel::Le, r(0)),
            (vec![(0, rat(1, 2)), (1, r(-12)), (2, rat(-1, 2)), (3, r(3))], Rel::Le, r(0)),
            (vec![(2, r(1))], Rel::Le, r(1)),
        ];
        let obj = [rat(3, 4), r(-150), rat(1, 50), r(-6)];
        match maximize(&obj, &rows) {
            SimplexResult::Optimal { value, .. } => assert_eq!(value, rat(77, 100)),
            other => panic!("expected optimum, got {other:?}"),
        }
    }
}
