use crate::field::Field;

/// Dense bivariate polynomial: `rows[b]` holds the x1-coefficients of `x2^b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivPoly<E> {
    pub rows: Vec<Vec<E>>,
}

impl<E: Clone> BivPoly<E> {
    pub fn new(rows: Vec<Vec<E>>) -> Self {
        BivPoly { rows }
    }

    /// Exclusive bound on the x1-degree (widest row).
    pub fn x1_bound(&self) -> usize {
        self.rows.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn get(&self, a: usize, b: usize) -> Option<&E> {
        self.rows.get(b).and_then(|r| r.get(a))
    }
}

/// Bivariate product through Kronecker substitution `x2 -> x1^stride` with
/// `stride = bound(a) + bound(b) - 1`, so no two products collide.
pub fn kronecker_mul<F: Field>(f: &F, a: &BivPoly<F::Elem>, b: &BivPoly<F::Elem>) -> BivPoly<F::Elem> {
    let (wa, wb) = (a.x1_bound(), b.x1_bound());
    if wa == 0 || wb == 0 {
        return BivPoly { rows: Vec::new() };
    }
    let stride = wa + wb - 1;
    let pa = pack(f, &a.rows, stride);
    let pb = pack(f, &b.rows, stride);
    let prod = f.poly_mul(&pa, &pb);
    let nrows = a.rows.len() + b.rows.len() - 1;
    let rows = (0..nrows)
        .map(|r| {
            let mut row: Vec<F::Elem> = prod
                .iter()
                .skip(r * stride)
                .take(stride)
                .cloned()
                .collect();
            row.resize(stride, f.zero());
            row
        })
        .collect();
    BivPoly { rows }
}

pub(crate) fn pack<F: Field>(f: &F, rows: &[Vec<F::Elem>], stride: usize) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); rows.len() * stride];
    for (r, row) in rows.iter().enumerate() {
        out[r * stride..r * stride + row.len()].clone_from_slice(row);
    }
    out
}
