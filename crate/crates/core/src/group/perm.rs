use std::fmt;
use std::str::FromStr;

use crate::error::GroupError;

/// A permutation of the points `0..degree`, stored as its image table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree).collect())
    }

    /// Builds a permutation from an image table, rejecting non-bijective input.
    pub fn from_images(images: Vec<usize>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(GroupError::InvalidPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    /// Builds a permutation of `degree` points from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, GroupError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= degree || touched[a] {
                    return Err(GroupError::InvalidPermutation(format!("{cycles:?}")));
                }
                touched[a] = true;
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, point: usize) -> usize {
        self.0.get(point).copied().unwrap_or(point)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        let degree = self.degree().max(other.degree());
        Perm((0..degree).map(|i| self.apply(other.apply(i))).collect())
    }

    /// Pads with fixed points up to `degree`.
    pub fn extended(&self, degree: usize) -> Perm {
        let mut images = self.0.clone();
        images.extend(self.0.len()..degree);
        Perm(images)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.0[start];
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.0[j];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

/// Parses cycle notation such as `(0,1,2)(3,4)` or `()`. The degree is the
/// largest point mentioned plus one.
impl FromStr for Perm {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GroupError::InvalidPermutation(s.to_string());
        let s = s.trim();
        let mut cycles = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let inner_end = rest.find(')').ok_or_else(bad)?;
            if !rest.starts_with('(') {
                return Err(bad());
            }
            let body = rest[1..inner_end].trim();
            if !body.is_empty() {
                let cycle = body
                    .split(',')
                    .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>, _>>()?;
                cycles.push(cycle);
            }
            rest = rest[inner_end + 1..].trim_start();
        }
        if s.is_empty() {
            return Err(bad());
        }
        let degree = cycles
            .iter()
            .flatten()
            .max()
            .map_or(0, |&m| m + 1);
        Perm::from_cycles(degree, &cycles)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let p: Perm = "(0,1,2,3)(4,5)".parse().unwrap();
        assert_eq!(p.degree(), 6);
        assert_eq!(p.apply(3), 0);
        assert_eq!(p.to_string(), "(0,1,2,3)(4,5)");
        let e: Perm = "()".parse().unwrap();
        assert!(e.is_identity());
        assert_eq!(e.to_string(), "()");
    }

    #[test]
    fn rejects_garbage() {
        assert!("(0,1".parse::<Perm>().is_err());
        assert!("(0,0)".parse::<Perm>().is_err());
        assert!("x".parse::<Perm>().is_err());
        assert!("".parse::<Perm>().is_err());
    }

    #[test]
    fn composition_applies_right_first() {
        let a: Perm = "(0,1)".parse().unwrap();
        let b: Perm = "(1,2)".parse().unwrap();
        // (a∘b)(1) = a(2) = 2
        assert_eq!(a.compose(&b).apply(1), 2);
    }
}
