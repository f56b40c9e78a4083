//! Floating-point scout for the exact solver.
//!
//! A fast f64 twin of the simplex explores the problem and reports which
//! inequality rows look binding at its (approximate) optimum. The exact
//! rational solver then starts from that active set instead of discovering
//! it one violated batch at a time. Nothing computed here is trusted: the
//! exact layer re-derives the optimum and re-checks every row.

use super::Rel;

const EPS: f64 = 1e-9;
const MAX_PIVOTS: usize = 20_000;

pub struct ScoutRow {
    pub coeffs: Vec<(usize, f64)>,
    pub rel: Rel,
    pub rhs: f64,
}

/// Run a lazily activated float simplex and return the indices of the rows
/// that participate at the end (equalities plus inequalities that are tight
/// or were ever violated). Returns `None` when the scout fails numerically;
/// the caller then falls back to the plain exact path.
pub fn scout(objective: &[f64], rows: &[ScoutRow]) -> Option<Vec<usize>> {
    let mut active: Vec<bool> = rows.iter().map(|r| matches!(r.rel, Rel::Eq)).collect();
    if rows.len() <= 128 {
        active.iter_mut().for_each(|a| *a = true);
    }
    let eval = |coeffs: &[(usize, f64)], x: &[f64]| -> f64 {
        coeffs.iter().map(|(c, v)| v * x[*c]).sum()
    };
    for _round in 0..200 {
        let chosen: Vec<usize> = (0..rows.len()).filter(|&i| active[i]).collect();
        let sub: Vec<&ScoutRow> = chosen.iter().map(|&i| &rows[i]).collect();
        let (x, ray) = match maximize(objective, &sub) {
            FloatResult::Optimal { x } => (x, None),
            FloatResult::Unbounded { x, ray } => (x, Some(ray)),
            FloatResult::Failed => return None,
        };
        let mut changed = false;
        for (i, row) in rows.iter().enumerate() {
            if active[i] {
                continue;
            }
            let lhs = eval(&row.coeffs, &x);
            let violated = match row.rel {
                Rel::Ge => lhs < row.rhs - EPS,
                Rel::Le => lhs > row.rhs + EPS,
                Rel::Eq => (lhs - row.rhs).abs() > EPS,
            };
            let cuts_ray = ray.as_ref().is_some_and(|r| {
                let along = eval(&row.coeffs, r);
                match row.rel {
                    Rel::Ge => along < -EPS,
                    Rel::Le => along > EPS,
                    Rel::Eq => along.abs() > EPS,
                }
            });
            if violated || cuts_ray {
                active[i] = true;
                changed = true;
            }
        }
        if !changed {
            // Report equalities and tight inequalities among the active set.
            let mut keep = Vec::new();
            for (i, row) in rows.iter().enumerate() {
                if !active[i] {
                    continue;
                }
                let tight = matches!(row.rel, Rel::Eq)
                    || (eval(&row.coeffs, &x) - row.rhs).abs() <= 1e-6;
                if tight {
                    keep.push(i);
                }
            }
            return Some(keep);
        }
    }
    None
}

enum FloatResult {
    Optimal { x: Vec<f64> },
    Unbounded { x: Vec<f64>, ray: Vec<f64> },
    Failed,
}

/// Dense two-phase f64 simplex over `x >= 0`, mirroring the exact core.
fn maximize(objective: &[f64], rows: &[&ScoutRow]) -> FloatResult {
    let nv = objective.len();
    let m = rows.len();
    let mut num_slack = 0;
    let mut num_art = 0;
    for r in rows {
        match r.rel {
            Rel::Le | Rel::Ge => num_slack += 1,
            Rel::Eq => {}
        }
        if !matches!(r.rel, Rel::Le) {
            num_art += 1;
        }
    }
    let total = nv + num_slack + num_art;
    let rhs_col = total;
    let art_offset = nv + num_slack;
    let mut tab = vec![vec![0f64; total + 1]; m + 1];
    let mut basis = vec![usize::MAX; m];
    let mut slack_idx = 0;
    let mut art_idx = 0;
    for (r, row) in rows.iter().enumerate() {
        let flip = row.rhs < 0.0;
        let sign = if flip { -1.0 } else { 1.0 };
        for &(c, v) in &row.coeffs {
            tab[r][c] = sign * v;
        }
        tab[r][rhs_col] = sign * row.rhs;
        let rel = match (row.rel, flip) {
            (Rel::Eq, _) => Rel::Eq,
            (Rel::Le, false) | (Rel::Ge, true) => Rel::Le,
            (Rel::Ge, false) | (Rel::Le, true) => Rel::Ge,
        };
        match rel {
            Rel::Le => {
                tab[r][nv + slack_idx] = 1.0;
                basis[r] = nv + slack_idx;
                slack_idx += 1;
            }
            Rel::Ge => {
                tab[r][nv + slack_idx] = -1.0;
                slack_idx += 1;
                tab[r][art_offset + art_idx] = 1.0;
                basis[r] = art_offset + art_idx;
                art_idx += 1;
            }
            Rel::Eq => {
                tab[r][art_offset + art_idx] = 1.0;
                basis[r] = art_offset + art_idx;
                art_idx += 1;
            }
        }
    }
    let mut pivots = 0usize;
    if num_art > 0 {
        for c in 0..=total {
            tab[m][c] = (0..m).filter(|&r| basis[r] >= art_offset).map(|r| tab[r][c]).sum();
        }
        for a in art_offset..total {
            tab[m][a] = 0.0;
        }
        if !iterate(&mut tab, &mut basis, &mut pivots, |_| true) {
            return FloatResult::Failed;
        }
        if tab[m][rhs_col] > 1e-7 {
            // Treat float infeasibility as a scout failure: the exact layer
            // decides feasibility questions.
            return FloatResult::Failed;
        }
        for r in 0..m {
            if basis[r] >= art_offset {
                if let Some(c) = (0..art_offset).find(|&c| tab[r][c].abs() > 1e-7) {
                    pivot(&mut tab, &mut basis, r, c);
                }
            }
        }
    }
    for c in 0..=total {
        tab[m][c] = 0.0;
    }
    for (c, w) in objective.iter().enumerate() {
        tab[m][c] = *w;
    }
    for r in 0..m {
        if basis[r] < nv && tab[m][basis[r]].abs() > 1e-12 {
            let factor = tab[m][basis[r]];
            for c in 0..=total {
                tab[m][c] -= factor * tab[r][c];
            }
        }
    }
    let opt = iterate_tracking(&mut tab, &mut basis, &mut pivots, art_offset);
    let extract = |tab: &Vec<Vec<f64>>, basis: &Vec<usize>| {
        let mut x = vec![0f64; nv];
        for r in 0..m {
            if basis[r] < nv {
                x[basis[r]] = tab[r][rhs_col];
            }
        }
        x
    };
    match opt {
        Some(None) => FloatResult::Optimal { x: extract(&tab, &basis) },
        Some(Some(entering)) => {
            let x = extract(&tab, &basis);
            let mut ray = vec![0f64; nv];
            for r in 0..m {
                if basis[r] < nv {
                    ray[basis[r]] = -tab[r][entering];
                }
            }
            if entering < nv {
                ray[entering] = 1.0;
            }
            FloatResult::Unbounded { x, ray }
        }
        None => FloatResult::Failed,
    }
}

fn iterate(
    tab: &mut Vec<Vec<f64>>,
    basis: &mut [usize],
    pivots: &mut usize,
    allow: impl Fn(usize) -> bool,
) -> bool {
    let m = basis.len();
    let total = tab[0].len() - 1;
    loop {
        if *pivots > MAX_PIVOTS {
            return false;
        }
        let mut entering = None;
        let mut best = 1e-9;
        for c in 0..total {
            if allow(c) && tab[m][c] > best {
                best = tab[m][c];
                entering = Some(c);
            }
        }
        let Some(entering) = entering else { return true };
        let mut leaving = None;
        let mut best_ratio = f64::INFINITY;
        for r in 0..m {
            if tab[r][entering] > 1e-9 {
                let ratio = tab[r][total] / tab[r][entering];
                if ratio < best_ratio - 1e-12 {
                    best_ratio = ratio;
                    leaving = Some(r);
                }
            }
        }
        let Some(leaving) = leaving else { return true };
        pivot(tab, basis, leaving, entering);
        *pivots += 1;
    }
}

/// Phase-2 loop: `Some(None)` = optimal, `Some(Some(col))` = unbounded
/// along `col`, `None` = pivot budget exhausted.
fn iterate_tracking(
    tab: &mut Vec<Vec<f64>>,
    basis: &mut [usize],
    pivots: &mut usize,
    art_offset: usize,
) -> Option<Option<usize>> {
    let m = basis.len();
    let total = tab[0].len() - 1;
    loop {
        if *pivots > MAX_PIVOTS {
            return None;
        }
        let mut entering = None;
        let mut best = 1e-9;
        for c in 0..art_offset {
            if tab[m][c] > best {
                best = tab[m][c];
                entering = Some(c);
            }
        }
        let Some(entering) = entering else { return Some(None) };
        let mut leaving = None;
        let mut best_ratio = f64::INFINITY;
        for r in 0..m {
            if tab[r][entering] > 1e-9 {
                let ratio = tab[r][total] / tab[r][entering];
                if ratio < best_ratio - 1e-12 {
                    best_ratio = ratio;
                    leaving = Some(r);
                }
            }
        }
        let Some(leaving) = leaving else { return Some(Some(entering)) };
        pivot(tab, basis, leaving, entering);
        *pivots += 1;
    }
}

fn pivot(tab: &mut [Vec<f64>], basis: &mut [usize], row: usize, col: usize) {
    let total = tab[0].len() - 1;
    let pv = tab[row][col];
    for c in 0..=total {
        tab[row][c] /= pv;
    }
    let pivot_row = tab[row].clone();
    for (r, row_vec) in tab.iter_mut().enumerate() {
        if r == row {
            continue;
        }
        let factor = row_vec[col];
        if factor.abs() < 1e-13 {
            continue;
        }
        for (c, cell) in row_vec.iter_mut().enumerate() {
            *cell -= factor * pivot_row[c];
        }
    }
    basis[row] = col;
}
