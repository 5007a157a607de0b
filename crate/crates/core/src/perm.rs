//! Permutations of `{0, .., n-1}` and their cycle notation.
//!
//! Products are read left to right: `a.then(&b)` applies `a` first and then
//! `b`, so `(a.then(b))(i) = b(a(i))`. Conjugation follows the same right
//! action convention, `x^g = g^-1 x g`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image array, rejecting anything that is
    /// not a bijection.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {} out of range for degree {}",
                    i, n
                )));
            }
            if seen[i] {
                return Err(Error::InvalidPermutation(format!("image {} repeated", i)));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of the given degree from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (pos, &p) in cycle.iter().enumerate() {
                let p_us = p as usize;
                if p_us >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} out of range for degree {}",
                        p + 1,
                        degree
                    )));
                }
                if used[p_us] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} occurs twice",
                        p + 1
                    )));
                }
                used[p_us] = true;
                images[p_us] = cycle[(pos + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn pow(&self, mut k: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            k >>= 1;
        }
        acc
    }

    /// `g^-1 self g`
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse().then(self).then(g)
    }

    /// Nontrivial cycles, each starting at its smallest point, ordered by
    /// that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p as u32);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Sorted cycle lengths including fixed points.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        let moved: usize = t.iter().sum();
        t.extend(std::iter::repeat(1).take(self.degree() - moved));
        t.sort_unstable();
        t
    }

    /// Parses 1-based cycle notation such as `(1,2)(3,4,5)` or `()`.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self> {
        let cycles = parse_cycle_list(text, 1, 1)?;
        Self::from_cycles(degree, &cycles).map_err(|e| Error::Parse {
            line: 1,
            column: 1,
            message: e.to_string(),
        })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses cycle notation, taking the degree to be the largest point seen.
    fn from_str(s: &str) -> Result<Self> {
        let cycles = parse_cycle_list(s, 1, 1)?;
        let degree = cycles
            .iter()
            .flatten()
            .map(|&p| p as usize + 1)
            .max()
            .unwrap_or(0);
        Self::from_cycles(degree, &cycles)
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Parses a sequence of 1-based cycles into 0-based point lists. `line` and
/// `col0` locate the text for error messages.
pub(crate) fn parse_cycle_list(text: &str, line: usize, col0: usize) -> Result<Vec<Vec<u32>>> {
    let err = |col: usize, message: String| Error::Parse {
        line,
        column: col0 + col,
        message,
    };
    let bytes: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut cycles = Vec::new();
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_whitespace() {
            *i += 1;
        }
    };
    skip_ws(&mut i);
    if i == bytes.len() {
        return Err(err(i, "expected a permutation".into()));
    }
    while i < bytes.len() {
        skip_ws(&mut i);
        if i == bytes.len() {
            break;
        }
        if bytes[i] != '(' {
            return Err(err(i, format!("expected '(' but found '{}'", bytes[i])));
        }
        i += 1;
        let mut cycle = Vec::new();
        loop {
            skip_ws(&mut i);
            if i < bytes.len() && bytes[i] == ')' {
                i += 1;
                break;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(err(i, "expected a point number".into()));
            }
            let num: String = bytes[start..i].iter().collect();
            let p: u32 = num
                .parse()
                .map_err(|_| err(start, format!("bad point '{}'", num)))?;
            if p == 0 {
                return Err(err(start, "points are numbered from 1".into()));
            }
            cycle.push(p - 1);
            skip_ws(&mut i);
            if i < bytes.len() && bytes[i] == ',' {
                i += 1;
                continue;
            }
            if i < bytes.len() && bytes[i] == ')' {
                i += 1;
                break;
            }
            return Err(err(i, "expected ',' or ')'".into()));
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
    }
    Ok(cycles)
}

/// Parsed contents of a generator file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub degree: usize,
    pub generators: Vec<Permutation>,
}

impl GeneratorSpec {
    /// Parses the generator file format: `degree N` on the first
    /// non-comment line, then one generator per line, `#` starting a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut degree: Option<usize> = None;
        let mut generators = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let trimmed = content.trim();
            if trimmed.is_empty() {
                continue;
            }
            let col = raw.len() - raw.trim_start().len() + 1;
            match degree {
                None => {
                    let rest = trimmed.strip_prefix("degree").ok_or_else(|| Error::Parse {
                        line,
                        column: col,
                        message: "expected 'degree N'".into(),
                    })?;
                    let n: usize = rest.trim().parse().map_err(|_| Error::Parse {
                        line,
                        column: col + 6,
                        message: format!("bad degree '{}'", rest.trim()),
                    })?;
                    degree = Some(n);
                }
                Some(n) => {
                    let cycles = parse_cycle_list(trimmed, line, col)?;
                    let perm = Permutation::from_cycles(n, &cycles).map_err(|e| Error::Parse {
                        line,
                        column: col,
                        message: e.to_string(),
                    })?;
                    generators.push(perm);
                }
            }
        }
        let degree = degree.ok_or_else(|| Error::Parse {
            line: 1,
            column: 1,
            message: "missing 'degree N' line".into(),
        })?;
        Ok(GeneratorSpec { degree, generators })
    }

    pub fn render(&self) -> String {
        let mut s = format!("degree {}\n", self.degree);
        for g in &self.generators {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_invert() {
        let a = Permutation::parse_cycles(3, "(1,2)").unwrap();
        let b = Permutation::parse_cycles(3, "(1,2,3)").unwrap();
        // 0 -> 1 -> 2
        assert_eq!(a.then(&b).image(0), 2);
        assert!(b.then(&b.inverse()).is_identity());
        assert_eq!(b.order(), 3);
        assert_eq!(b.pow(3), Permutation::identity(3));
    }

    #[test]
    fn render_roundtrip() {
        let p = Permutation::parse_cycles(5, "(3,4,5)(1,2)").unwrap();
        assert_eq!(p.to_string(), "(1,2)(3,4,5)");
        assert_eq!(Permutation::identity(4).to_string(), "()");
        let q: Permutation = "(1,2)(3,4,5)".parse().unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
        assert!(Permutation::parse_cycles(3, "(1,2,1)").is_err());
    }

    #[test]
    fn generator_files() {
        let spec = GeneratorSpec::parse("# S3\ndegree 3\n(1,2)\n(1,2,3) # 3-cycle\n").unwrap();
        assert_eq!(spec.degree, 3);
        assert_eq!(spec.generators.len(), 2);
        let again = GeneratorSpec::parse(&spec.render()).unwrap();
        assert_eq!(again, spec);

        let trivial = GeneratorSpec::parse("degree 1\n").unwrap();
        assert!(trivial.generators.is_empty());

        match GeneratorSpec::parse("degree 4\n(1,2,3,4,5)") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {:?}", other),
        }
        match GeneratorSpec::parse("degree 4\n(1,2]") {
            Err(Error::Parse { line, column, .. }) => {
                assert_eq!(line, 2);
                assert_eq!(column, 5);
            }
            other => panic!("expected parse error, got {:?}", other),
        }
    }
}
