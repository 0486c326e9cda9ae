//! The abelianization Zⁿ / ⟨relator exponent sums⟩ in Hermite normal form.

use crate::presentation::Presentation;
use crate::word::{Generator, Letter};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Abelianization {
    generators: Vec<Generator>,
    /// Echelon basis of the relation lattice: each row has a positive pivot
    /// strictly to the right of the previous row's pivot.
    rows: Vec<(usize, Vec<i64>)>,
}

impl Abelianization {
    pub fn new(p: &Presentation) -> Self {
        let generators = p.generators().to_vec();
        let mut m: Vec<Vec<i64>> = p
            .relators()
            .iter()
            .map(|r| exponent_sums(&generators, r))
            .collect();
        let mut rows = Vec::new();
        let mut top = 0;
        for col in 0..generators.len() {
            while let Some(best) = (top..m.len()).filter(|&i| m[i][col] != 0).min_by_key(|&i| m[i][col].abs()) {
                m.swap(top, best);
                for i in top + 1..m.len() {
                    let q = m[i][col].div_euclid(m[top][col]);
                    if q != 0 {
                        let pivot = m[top].clone();
                        m[i].iter_mut().zip(&pivot).for_each(|(x, p)| *x -= q * p);
                    }
                }
                if (top + 1..m.len()).all(|i| m[i][col] == 0) {
                    break;
                }
            }
            if top < m.len() && m[top][col] != 0 {
                if m[top][col] < 0 {
                    m[top].iter_mut().for_each(|x| *x = -*x);
                }
                rows.push((col, m[top].clone()));
                top += 1;
            }
        }
        Abelianization { generators, rows }
    }

    /// Exponent-sum vector of a word.
    pub fn image(&self, w: &[Letter]) -> Vec<i64> {
        exponent_sums(&self.generators, w)
    }

    /// Canonical representative of `v` modulo the relation lattice.
    pub fn reduce(&self, mut v: Vec<i64>) -> Vec<i64> {
        for (col, row) in &self.rows {
            let q = v[*col].div_euclid(row[*col]);
            if q != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= q * r;
                }
            }
        }
        v
    }

    pub fn is_trivial(&self, v: &[i64]) -> bool {
        self.reduce(v.to_vec()).iter().all(|&x| x == 0)
    }

    /// Whether two words have the same abelianized image.
    pub fn same_image(&self, u: &[Letter], w: &[Letter]) -> bool {
        let d: Vec<i64> = self.image(u).iter().zip(self.image(w)).map(|(a, b)| a - b).collect();
        self.is_trivial(&d)
    }

    /// Whether `n·ab(v) = ab(w)`.
    pub fn power_matches(&self, v: &[Letter], n: i64, w: &[Letter]) -> bool {
        let d: Vec<i64> = self.image(v).iter().zip(self.image(w)).map(|(a, b)| n * a - b).collect();
        self.is_trivial(&d)
    }
}

fn exponent_sums(gens: &[Generator], w: &[Letter]) -> Vec<i64> {
    let mut v = vec![0; gens.len()];
    for x in w {
        if let Some(i) = gens.iter().position(|&g| g == x.generator()) {
            v[i] += i64::from(x.sign());
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;
    use crate::word::w;

    fn ab(text: &str) -> Abelianization {
        Abelianization::new(&parse_presentation(text).unwrap())
    }

    #[test]
    fn z2_is_free_abelian() {
        let a = ab("gens: a b\nrel: abAB");
        assert!(a.same_image(&w("ab"), &w("ba")));
        assert!(!a.same_image(&w("a"), &w("b")));
    }

    #[test]
    fn klein_has_torsion() {
        // abaB gives 2a = 0
        let a = ab("gens: a b\nrel: abaB");
        assert!(a.same_image(&w("aa"), &w("")));
        assert!(a.same_image(&w("a"), &w("A")));
        assert!(!a.same_image(&w("a"), &w("")));
        assert!(!a.same_image(&w("b"), &w("")));
    }

    #[test]
    fn hex_is_z2() {
        let a = ab("gens: x y z\nrel: xyz\nrel: xzy");
        assert!(a.same_image(&w("xy"), &w("Z")));
        assert!(!a.same_image(&w("x"), &w("y")));
    }

    #[test]
    fn aab_is_cyclic() {
        let a = ab("gens: a b\nrel: aab");
        assert!(a.same_image(&w("b"), &w("AA")));
        assert!(a.power_matches(&w("a"), -2, &w("b")));
        assert!(!a.same_image(&w("a"), &w("")));
    }

    #[test]
    fn echelon_handles_gcd() {
        let a = ab("gens: a b\nrel: aaaaaabbbb\nrel: aaaabbbbbb");
        // lattice spanned by (6,4) and (4,6); (2,-2) is in it, (1,1) is not
        assert!(a.is_trivial(&[2, -2]));
        assert!(!a.is_trivial(&[1, 1]));
        assert!(a.is_trivial(&[10, 10]));
        assert!(!a.is_trivial(&[5, 5]));
    }
}
