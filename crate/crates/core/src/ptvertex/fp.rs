//! Subspaces of `F_p^3` in reduced row echelon form.

/// A vector in the three-leg basis `b_1, b_2, b_3`.
pub type Vec3 = [u64; 3];

/// Row-reduced basis of a subspace of `F_p^3`. Each row has a leading 1 in
/// its pivot column and zeros in the other rows' pivot columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    rows: Vec<Vec3>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero() -> Self {
        Subspace {
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec3] {
        &self.rows
    }

    /// Reduces `v` against the basis; zero iff `v` lies in the subspace.
    pub fn reduce(&self, mut v: Vec3, p: u64) -> Vec3 {
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = v[c];
            if f != 0 {
                for j in 0..3 {
                    v[j] = (v[j] + (p - f) * row[j]) % p;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: Vec3, p: u64) -> bool {
        self.reduce(v, p) == [0; 3]
    }

    /// Span of the given vectors.
    pub fn span(vectors: &[Vec3], p: u64) -> Self {
        let mut s = Subspace::zero();
        for &v in vectors {
            s.insert(v, p);
        }
        s
    }

    fn insert(&mut self, v: Vec3, p: u64) {
        let mut v = self.reduce(v, p);
        let Some(c) = (0..3).find(|&j| v[j] != 0) else {
            return;
        };
        let inv = inverse_mod(v[c], p);
        for x in v.iter_mut() {
            *x = *x * inv % p;
        }
        for row in self.rows.iter_mut() {
            let f = row[c];
            if f != 0 {
                for j in 0..3 {
                    row[j] = (row[j] + (p - f) * v[j]) % p;
                }
            }
        }
        let at = self
            .pivots
            .iter()
            .position(|&q| q > c)
            .unwrap_or(self.pivots.len());
        self.rows.insert(at, v);
        self.pivots.insert(at, c);
    }
}

fn inverse_mod(a: u64, p: u64) -> u64 {
    let mut r = 1;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    r
}

/// Every subspace of `span{b_i : mask bit i set}` over `F_p`, each once.
pub fn all_subspaces(mask: u8, p: u64) -> Vec<Subspace> {
    let cols: Vec<usize> = (0..3).filter(|&i| mask >> i & 1 == 1).collect();
    let mut out = Vec::new();
    for pivot_bits in 0u8..(1 << cols.len()) {
        let pivots: Vec<usize> = (0..cols.len())
            .filter(|&i| pivot_bits >> i & 1 == 1)
            .map(|i| cols[i])
            .collect();
        // Free entries: for each pivot row, non-pivot columns to its right.
        let mut slots = Vec::new();
        for (r, &c) in pivots.iter().enumerate() {
            for &j in &cols {
                if j > c && !pivots.contains(&j) {
                    slots.push((r, j));
                }
            }
        }
        let total = p.pow(slots.len() as u32);
        for code in 0..total {
            let mut rows: Vec<Vec3> = pivots
                .iter()
                .map(|&c| {
                    let mut v = [0; 3];
                    v[c] = 1;
                    v
                })
                .collect();
            let mut x = code;
            for &(r, j) in &slots {
                rows[r][j] = x % p;
                x /= p;
            }
            out.push(Subspace {
                rows,
                pivots: pivots.clone(),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian_binomial_total(n: u32, p: u64) -> usize {
        // number of subspaces of F_p^n for n <= 3
        match n {
            0 => 1,
            1 => 2,
            2 => (p + 3) as usize,
            _ => (2 * (p * p + p + 1) + 2) as usize,
        }
    }

    #[test]
    fn subspace_counts() {
        for p in [2u64, 3, 5, 7] {
            assert_eq!(all_subspaces(0, p).len(), gaussian_binomial_total(0, p));
            assert_eq!(all_subspaces(0b010, p).len(), gaussian_binomial_total(1, p));
            assert_eq!(all_subspaces(0b101, p).len(), gaussian_binomial_total(2, p));
            assert_eq!(all_subspaces(0b111, p).len(), gaussian_binomial_total(3, p));
        }
    }

    #[test]
    fn span_is_canonical() {
        let p = 5;
        let a = Subspace::span(&[[1, 2, 3], [0, 1, 1]], p);
        let b = Subspace::span(&[[1, 3, 4], [2, 4, 1]], p);
        assert_eq!(a.dim(), 2);
        assert!(a.contains([1, 3, 4], p));
        assert_eq!(a, b);
        let all = all_subspaces(0b111, p);
        assert!(all.contains(&a));
    }
}
