use crate::exact::{Mat, Rational, Ring};

/// Homogeneous linear system whose unknowns are the entries of a few
/// matrices ("blocks"), assembled from matrix equations of the form
/// `Σ ± L · U_b · R = 0`.
pub(crate) struct LinSys {
    shapes: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    unknowns: usize,
    rows: Vec<Vec<Rational>>,
}

pub(crate) struct Term<'a> {
    pub block: usize,
    pub left: &'a Mat<Rational>,
    pub right: &'a Mat<Rational>,
    pub negate: bool,
}

impl LinSys {
    pub fn new(shapes: &[(usize, usize)]) -> Self {
        let mut offsets = Vec::with_capacity(shapes.len());
        let mut total = 0;
        for &(r, c) in shapes {
            offsets.push(total);
            total += r * c;
        }
        LinSys { shapes: shapes.to_vec(), offsets, unknowns: total, rows: Vec::new() }
    }

    /// Adds the entrywise equations of `Σ ± L·U·R = 0`, all terms sharing the
    /// output shape.
    pub fn equation(&mut self, terms: &[Term<'_>]) {
        let Some(first) = terms.first() else { return };
        let (out_r, out_c) = (first.left.rows(), first.right.cols());
        for i in 0..out_r {
            for j in 0..out_c {
                let mut row = vec![Rational::zero(); self.unknowns];
                for t in terms {
                    let (br, bc) = self.shapes[t.block];
                    assert_eq!((t.left.rows(), t.right.cols()), (out_r, out_c), "equation terms disagree in shape");
                    assert_eq!((t.left.cols(), t.right.rows()), (br, bc), "block shape mismatch");
                    for k in 0..br {
                        let l = t.left.get(i, k);
                        if l.is_zero() {
                            continue;
                        }
                        for m in 0..bc {
                            let r = t.right.get(m, j);
                            if r.is_zero() {
                                continue;
                            }
                            let v = l * r;
                            let idx = self.offsets[t.block] + k * bc + m;
                            if t.negate {
                                row[idx] -= v;
                            } else {
                                row[idx] += v;
                            }
                        }
                    }
                }
                if row.iter().any(|c| !c.is_zero()) {
                    self.rows.push(row);
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        if self.rows.is_empty() {
            return 0;
        }
        Mat::from_rows(self.rows.clone()).rank()
    }

    pub fn nullity(&self) -> usize {
        self.unknowns - self.rank()
    }
}
