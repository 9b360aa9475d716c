use std::collections::HashMap;
use std::sync::Arc;

use super::minors::{self, PolyMatrix};
use super::SingularityError;
use crate::poly::{Field, MonomialOrder, PolyRing, Polynomial};

/// Square matrix with `m[j][i] = -m[i][j]` and zero diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct AlternatingMatrix<F: Field> {
    ring: Arc<PolyRing<F>>,
    entries: PolyMatrix<F>,
}

impl<F: Field> AlternatingMatrix<F> {
    pub fn new(ring: &Arc<PolyRing<F>>, entries: PolyMatrix<F>) -> Result<Self, SingularityError> {
        let n = entries.len();
        if n > 64 {
            return Err(SingularityError::Invalid("alternating matrices are limited to size 64".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(SingularityError::Invalid("matrix is not square".into()));
            }
            if !row[i].is_zero() {
                return Err(SingularityError::Invalid(format!("nonzero diagonal entry at {}", i + 1)));
            }
            for j in 0..i {
                if row[j] != entries[j][i].neg() {
                    return Err(SingularityError::Invalid(format!("entries ({},{}) and ({},{}) are not opposite", i + 1, j + 1, j + 1, i + 1)));
                }
            }
        }
        Ok(AlternatingMatrix { ring: ring.clone(), entries })
    }

    /// Builds the matrix from its strictly upper triangular part, given row by row.
    pub fn from_upper(ring: &Arc<PolyRing<F>>, n: usize, upper: &[Polynomial<F>]) -> Result<Self, SingularityError> {
        if upper.len() != n * (n.saturating_sub(1)) / 2 {
            return Err(SingularityError::Invalid("wrong number of upper entries".into()));
        }
        let mut m: PolyMatrix<F> = vec![vec![ring.zero(); n]; n];
        let mut it = upper.iter();
        for i in 0..n {
            for j in i + 1..n {
                let e = it.next().unwrap().clone();
                m[j][i] = e.neg();
                m[i][j] = e;
            }
        }
        Self::new(ring, m)
    }

    /// Generic `n x n` alternating matrix over a fresh ring in the variables
    /// `m{i}{j}`, `1 <= i < j <= n`.
    pub fn generic(n: usize, field: F, order: MonomialOrder) -> Result<Self, SingularityError> {
        if !(1..=9).contains(&n) {
            return Err(SingularityError::Invalid("generic size must be between 1 and 9".into()));
        }
        let names: Vec<String> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| format!("m{i}{j}"))).collect();
        let ring = PolyRing::new(&names, field, order)?;
        let upper = ring.vars();
        Self::from_upper(&ring, n, &upper)
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Entry in 0-based row `i`, column `j`.
    pub fn entry(&self, i: usize, j: usize) -> &Polynomial<F> {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &PolyMatrix<F> {
        &self.entries
    }

    /// Every entry evaluated at `point`, as constants of the same ring.
    pub fn specialize(&self, point: &[F::Elem]) -> Result<Self, SingularityError> {
        let mut m = self.entries.clone();
        for row in m.iter_mut() {
            for e in row.iter_mut() {
                *e = self.ring.constant(e.evaluate(point)?);
            }
        }
        Ok(AlternatingMatrix { ring: self.ring.clone(), entries: m })
    }

    pub fn determinant(&self) -> Polynomial<F> {
        minors::determinant(&self.entries, &self.ring)
    }

    pub fn pfaffian(&self) -> Polynomial<F> {
        let all: Vec<usize> = (0..self.size()).collect();
        self.pfaffian_of(&all)
    }

    /// Pfaffian of the principal submatrix on the 0-based `indices`
    /// (sorted), expanded along its first row.
    pub fn pfaffian_of(&self, indices: &[usize]) -> Polynomial<F> {
        let mut memo = HashMap::new();
        let mask = indices.iter().fold(0u64, |m, &i| m | (1 << i));
        self.pf_rec(mask, &mut memo)
    }

    fn pf_rec(&self, mask: u64, memo: &mut HashMap<u64, Polynomial<F>>) -> Polynomial<F> {
        let k = mask.count_ones();
        if k == 0 {
            return self.ring.one();
        }
        if k % 2 == 1 {
            return self.ring.zero();
        }
        if let Some(p) = memo.get(&mask) {
            return p.clone();
        }
        let first = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << first);
        let mut acc = self.ring.zero();
        let mut pos = 0;
        let mut bits = rest;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            pos += 1;
            let e = &self.entries[first][j];
            if e.is_zero() {
                continue;
            }
            let sub = self.pf_rec(rest & !(1 << j), memo);
            let term = e.try_mul(&sub).unwrap();
            acc = if pos % 2 == 1 { acc.try_add(&term).unwrap() } else { acc.try_sub(&term).unwrap() };
        }
        memo.insert(mask, acc.clone());
        acc
    }

    /// `p_{i_1...i_j}`: pfaffian after deleting the 1-based rows and columns `deleted`.
    pub fn sub_pfaffian(&self, deleted: &[usize]) -> Result<Polynomial<F>, SingularityError> {
        let n = self.size();
        if deleted.iter().any(|&i| i == 0 || i > n) {
            return Err(SingularityError::Invalid("deletion index out of range".into()));
        }
        let keep: Vec<usize> = (0..n).filter(|i| !deleted.contains(&(i + 1))).collect();
        Ok(self.pfaffian_of(&keep))
    }

    /// All `p_{i_1...i_j}` with `i_1 < ... < i_j`, in lexicographic order of
    /// the 1-based deletion sets.
    pub fn sub_pfaffians(&self, j: usize) -> Result<Vec<(Vec<usize>, Polynomial<F>)>, SingularityError> {
        let n = self.size();
        if j > n || !(n - j).is_multiple_of(2) {
            return Err(SingularityError::Invalid(format!("size {n} minus order {j} is not even")));
        }
        let mut memo = HashMap::new();
        let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Ok(minors::subsets(n, j)
            .into_iter()
            .map(|del| {
                let mask = del.iter().fold(full, |m, &i| m & !(1 << i));
                let p = self.pf_rec(mask, &mut memo);
                (del.into_iter().map(|i| i + 1).collect(), p)
            })
            .collect())
    }

    /// `Q` with `q_ij = (-1)^(i+j) p_ij` above the diagonal; the identity
    /// `QM = MQ = p(M) Id` is checked before returning.
    pub fn incidental_matrix(&self) -> Result<Self, SingularityError> {
        let n = self.size();
        if !n.is_multiple_of(2) {
            return Err(SingularityError::Invalid("incidental matrix needs even size".into()));
        }
        let mut upper = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                let p = self.sub_pfaffian(&[i, j])?;
                upper.push(if (i + j) % 2 == 0 { p } else { p.neg() });
            }
        }
        let q = Self::from_upper(&self.ring, n, &upper)?;
        let pf = self.pfaffian();
        for (a, b, label) in [(&q, self, "QM"), (self, &q, "MQ")] {
            let prod = mat_mul(&a.entries, &b.entries, &self.ring);
            for (i, row) in prod.iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    let want = if i == j { pf.clone() } else { self.ring.zero() };
                    if *e != want {
                        return Err(SingularityError::Verification(format!("{label} differs from p(M) Id at ({},{})", i + 1, j + 1)));
                    }
                }
            }
        }
        Ok(q)
    }
}

pub(crate) fn mat_mul<F: Field>(a: &PolyMatrix<F>, b: &PolyMatrix<F>, ring: &Arc<PolyRing<F>>) -> PolyMatrix<F> {
    let k = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = ring.zero();
                    for t in 0..k {
                        if !row[t].is_zero() && !b[t][j].is_zero() {
                            acc = acc.try_add(&row[t].try_mul(&b[t][j]).unwrap()).unwrap();
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{PrimeField, Rationals};

    #[test]
    fn small_pfaffians() {
        let m4 = AlternatingMatrix::generic(4, Rationals, MonomialOrder::GrevLex).unwrap();
        let r = m4.ring().clone();
        assert_eq!(m4.pfaffian(), r.parse("m12*m34 - m13*m24 + m14*m23").unwrap());
        assert_eq!(m4.pfaffian().pow(2), m4.determinant());

        let m2 = AlternatingMatrix::generic(2, Rationals, MonomialOrder::GrevLex).unwrap();
        let q = m2.incidental_matrix().unwrap();
        let r2 = m2.ring().clone();
        assert_eq!(q.entry(0, 1), &r2.from_i64(-1));
        assert_eq!(q.entry(1, 0), &r2.one());

        let z = AlternatingMatrix::from_upper(&r, 4, &vec![r.zero(); 6]).unwrap();
        assert!(z.pfaffian().is_zero());
    }

    #[test]
    fn sub_pfaffians_of_five() {
        let m = AlternatingMatrix::generic(5, Rationals, MonomialOrder::GrevLex).unwrap();
        assert!(m.pfaffian().is_zero());
        let p1 = m.sub_pfaffians(1).unwrap();
        assert_eq!(p1.len(), 5);
        assert_eq!(p1[0].1, m.ring().parse("m23*m45 - m24*m35 + m25*m34").unwrap());
        let p3 = m.sub_pfaffians(3).unwrap();
        assert_eq!(p3.len(), 10);
        // deleting 1,2,3 leaves the 4,5 block
        assert_eq!(p3[0].1, m.ring().parse("m45").unwrap());
        assert!(m.sub_pfaffians(2).is_err());
    }

    #[test]
    fn incidental_identity_generic_four_and_six() {
        for n in [4, 6] {
            let m = AlternatingMatrix::generic(n, PrimeField::new(32003).unwrap(), MonomialOrder::GrevLex).unwrap();
            m.incidental_matrix().unwrap();
        }
    }

    #[test]
    fn rejects_non_alternating() {
        let r = PolyRing::new(&["a"], Rationals, MonomialOrder::GrevLex).unwrap();
        let bad = vec![vec![r.zero(), r.var(0)], vec![r.var(0), r.zero()]];
        assert!(AlternatingMatrix::new(&r, bad).is_err());
    }
}
