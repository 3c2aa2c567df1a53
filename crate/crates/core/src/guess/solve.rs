use crate::arith::Field;
use crate::error::Result;
use crate::poly::{Key, Poly, PolyKind};
use crate::series::Evaluator;

use super::verify::verify_on;

pub(crate) struct Solved<E> {
    pub basis: Vec<Poly<E>>,
    pub rows_solved: usize,
    pub rows_verified: usize,
}

/// Last usable row count for the given columns: rows `0..avail` are
/// trusted for every column.
pub(crate) fn available_rows<F: Field>(ev: &Evaluator<F>, columns: &[Key]) -> usize {
    columns
        .iter()
        .map(|k| ev.horizon(k.xdeg, &k.mono) + 1)
        .min()
        .unwrap_or(0)
        .max(0) as usize
}

/// Solves the ansatz on `solve_rows` rows; when a solution exists, the
/// kernel is recomputed on all `avail` trusted rows, and each basis element
/// is finally checked on the full range its own terms allow.
pub(crate) fn solve_ansatz<F: Field>(
    ev: &mut Evaluator<F>,
    kind: PolyKind,
    columns: &[Key],
    solve_rows: usize,
    avail: usize,
) -> Result<Option<Solved<F::Elem>>> {
    let field = ev.field().clone();
    let cols: Vec<(u32, _)> = columns.iter().map(|k| (k.xdeg, k.mono.clone())).collect();
    let full = ev.constraint_matrix(&cols, 0..avail)?;
    let kernel = field.nullspace(&full.top_rows(solve_rows));
    if kernel.is_empty() {
        return Ok(None);
    }
    let kernel = if solve_rows < avail {
        field.nullspace(&full)
    } else {
        kernel
    };
    let mut basis = Vec::new();
    for v in &kernel.vectors {
        let p = Poly::from_terms(&field, kind, columns.iter().cloned().zip(v.iter().cloned()));
        if verify_on(ev, &p).holds {
            basis.push(p.normalized(&field));
        }
    }
    if basis.is_empty() {
        return Ok(None);
    }
    Ok(Some(Solved {
        basis,
        rows_solved: solve_rows,
        rows_verified: avail,
    }))
}
