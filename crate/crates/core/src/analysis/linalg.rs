//! Gaussian elimination over interval entries.
//!
//! A pivot is accepted only when its enclosure excludes zero, so every
//! accepted set of rows is certainly independent. Entries eliminated by a
//! pivot are set to an exact zero, which is their exact value.

use num_traits::Signed;

use crate::error::Result;
use crate::interval::Interval;

pub(crate) struct Echelon {
    prec: u32,
    /// Original row index of each accepted row.
    pub rows: Vec<usize>,
    reduced: Vec<Vec<Interval>>,
    pivots: Vec<usize>,
    /// Each reduced row as a combination of the accepted original rows.
    combos: Vec<Vec<Interval>>,
}

pub(crate) enum Reduction {
    /// Coefficients on the accepted rows.
    InSpan(Vec<Interval>),
    /// A residual coordinate that certainly does not vanish.
    Outside { column: usize, residual: Interval },
}

impl Echelon {
    /// Greedily accept rows in order until `target` independent rows are
    /// found. Returns `None` when the precision does not certify enough.
    pub fn build(rows: &[Vec<Interval>], target: usize, prec: u32) -> Result<Option<Self>> {
        let mut e = Echelon { prec, rows: Vec::new(), reduced: Vec::new(), pivots: Vec::new(), combos: Vec::new() };
        for (i, row) in rows.iter().enumerate() {
            if e.rows.len() == target {
                break;
            }
            let k = e.rows.len();
            let mut combo = vec![Interval::zero(prec); k + 1];
            combo[k] = Interval::from_int(1, prec);
            let mut red = row.clone();
            e.eliminate(&mut red, &mut combo)?;
            let pivot = red
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.contains_zero())
                .max_by(|(_, a), (_, b)| a.midpoint().abs().cmp(&b.midpoint().abs()))
                .map(|(j, _)| j);
            if let Some(p) = pivot {
                for c in e.combos.iter_mut() {
                    c.push(Interval::zero(prec));
                }
                e.rows.push(i);
                e.reduced.push(red);
                e.pivots.push(p);
                e.combos.push(combo);
            }
        }
        Ok((e.rows.len() == target).then_some(e))
    }

    /// Subtract multiples of the accepted rows to clear their pivot columns.
    fn eliminate(&self, red: &mut [Interval], combo: &mut [Interval]) -> Result<()> {
        for (k, &p) in self.pivots.iter().enumerate() {
            let f = red[p].div(&self.reduced[k][p])?;
            for (x, y) in red.iter_mut().zip(&self.reduced[k]) {
                *x = x.sub(&f.mul(y));
            }
            red[p] = Interval::zero(self.prec);
            for (x, y) in combo.iter_mut().zip(&self.combos[k]) {
                *x = x.sub(&f.mul(y));
            }
        }
        Ok(())
    }

    /// Express `b` through the accepted rows. Exact when those rows span the
    /// row space: a residual that excludes zero proves `b` lies outside.
    pub fn reduce(&self, b: &[Interval]) -> Result<Reduction> {
        let k = self.rows.len();
        let mut red = b.to_vec();
        // coefficients c with b - sum c_j row_j = residual
        let mut coeffs = vec![Interval::zero(self.prec); k];
        for (j, &p) in self.pivots.iter().enumerate() {
            let f = red[p].div(&self.reduced[j][p])?;
            for (x, y) in red.iter_mut().zip(&self.reduced[j]) {
                *x = x.sub(&f.mul(y));
            }
            red[p] = Interval::zero(self.prec);
            for (c, y) in coeffs.iter_mut().zip(&self.combos[j]) {
                *c = c.add(&f.mul(y));
            }
        }
        if let Some((column, residual)) = red.iter().enumerate().find(|(_, v)| !v.contains_zero()) {
            return Ok(Reduction::Outside { column, residual: residual.clone() });
        }
        Ok(Reduction::InSpan(coeffs))
    }
}
