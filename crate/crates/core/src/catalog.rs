//! Permutation representations of the groups used by the analyses.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::group::{group_from_generators, Limits, PermGroup};
use crate::modp::is_prime;
use crate::perm::{gcd, GeneratorSpec, Permutation};

const V9C2X2: &str = include_str!("../data/v9c2x2.txt");

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupSpec {
    Symmetric { n: usize },
    Alternating { n: usize },
    Cyclic { n: usize },
    /// Dihedral group of the given order, acting on `order / 2` points.
    Dihedral { order: usize },
    /// `k` disjoint `p`-cycles.
    ElementaryAbelian { p: usize, k: usize },
    DirectProduct { left: Box<GroupSpec>, right: Box<GroupSpec> },
    Agl1 { q: usize },
    /// Translations together with the scalings by `d`-th roots of unity.
    Agl1Subgroup { q: usize, d: usize },
    Sl2 { q: usize },
    Psl2 { q: usize },
    Psl3_2,
    FromGenerators { path: PathBuf },
    Named { label: String },
}

pub const NAMED: &[(&str, &str)] = &[
    ("G351", "AGL1:27:13"),
    ("G80", "AGL1:16:5"),
    ("D12", "D12"),
    ("V9C2x2", "2^2:9 on 13 points"),
    ("S3xC4", "S3xC4"),
];

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Symmetric { n } => write!(f, "S{}", n),
            GroupSpec::Alternating { n } => write!(f, "A{}", n),
            GroupSpec::Cyclic { n } => write!(f, "C{}", n),
            GroupSpec::Dihedral { order } => write!(f, "D{}", order),
            GroupSpec::ElementaryAbelian { p, k } => write!(f, "E:{}:{}", p, k),
            GroupSpec::DirectProduct { left, right } => write!(f, "{}x{}", left, right),
            GroupSpec::Agl1 { q } => write!(f, "AGL1:{}", q),
            GroupSpec::Agl1Subgroup { q, d } => write!(f, "AGL1:{}:{}", q, d),
            GroupSpec::Sl2 { q } => write!(f, "SL2:{}", q),
            GroupSpec::Psl2 { q } => write!(f, "PSL2:{}", q),
            GroupSpec::Psl3_2 => f.write_str("PSL3:2"),
            GroupSpec::FromGenerators { path } => write!(f, "File:{}", path.display()),
            GroupSpec::Named { label } => write!(f, "Named:{}", label),
        }
    }
}

fn number(s: &str, whole: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::InvalidSpec(format!("bad number '{}' in '{}'", s, whole)))
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Parses `S3`, `A5`, `C4`, `D12`, `E:2:3`, `AGL1:8`, `AGL1:9:4`,
    /// `SL2:7`, `PSL2:7`, `PSL3:2`, `File:path`, `Named:G80`, and direct
    /// products joined by `x`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(path) = s.strip_prefix("File:") {
            return Ok(GroupSpec::FromGenerators { path: path.into() });
        }
        if let Some(label) = s.strip_prefix("Named:") {
            if !NAMED.iter().any(|(l, _)| *l == label) {
                return Err(Error::InvalidSpec(format!("unknown named group '{}'", label)));
            }
            return Ok(GroupSpec::Named { label: label.into() });
        }
        if let Some((a, b)) = split_product(s) {
            return Ok(GroupSpec::DirectProduct {
                left: Box::new(a.parse()?),
                right: Box::new(b.parse()?),
            });
        }
        let parts: Vec<&str> = s.split(':').collect();
        let spec = match parts.as_slice() {
            ["PSL3", "2"] => GroupSpec::Psl3_2,
            ["SL2", q] => GroupSpec::Sl2 { q: number(q, s)? },
            ["PSL2", q] => GroupSpec::Psl2 { q: number(q, s)? },
            ["AGL1", q] => GroupSpec::Agl1 { q: number(q, s)? },
            ["AGL1", q, d] => GroupSpec::Agl1Subgroup {
                q: number(q, s)?,
                d: number(d, s)?,
            },
            ["E", p, k] => GroupSpec::ElementaryAbelian {
                p: number(p, s)?,
                k: number(k, s)?,
            },
            [single] => {
                let (head, tail) = single.split_at(single.find(|c: char| c.is_ascii_digit()).unwrap_or(single.len()));
                match head {
                    "S" => GroupSpec::Symmetric { n: number(tail, s)? },
                    "A" => GroupSpec::Alternating { n: number(tail, s)? },
                    "C" => GroupSpec::Cyclic { n: number(tail, s)? },
                    "D" => GroupSpec::Dihedral { order: number(tail, s)? },
                    _ => return Err(Error::InvalidSpec(format!("unrecognized group '{}'", s))),
                }
            }
            _ => return Err(Error::InvalidSpec(format!("unrecognized group '{}'", s))),
        };
        Ok(spec)
    }
}

/// Splits at the first `x` that separates two factors, skipping the `x`
/// inside names such as `V9C2x2`.
fn split_product(s: &str) -> Option<(&str, &str)> {
    let bytes = s.as_bytes();
    (1..s.len().saturating_sub(1))
        .filter(|&i| bytes[i] == b'x')
        .find(|&i| bytes[i + 1].is_ascii_uppercase() && bytes[i - 1].is_ascii_alphanumeric())
        .map(|i| (&s[..i], &s[i + 1..]))
}

fn perm(degree: usize, cycles: &[Vec<u32>]) -> Permutation {
    Permutation::from_cycles(degree, cycles).expect("catalog cycles are valid")
}

fn from_map(degree: usize, f: impl Fn(usize) -> usize) -> Permutation {
    Permutation::from_images((0..degree).map(|i| f(i) as u32).collect()).expect("catalog maps are bijections")
}

/// Builds the group, with the default desk-scale limits.
pub fn construct(spec: &GroupSpec) -> Result<PermGroup> {
    construct_with(spec, Limits::default())
}

pub fn construct_with(spec: &GroupSpec, limits: Limits) -> Result<PermGroup> {
    let (degree, gens) = generators(spec)?;
    group_from_generators(degree, &gens, limits)
}

/// Degree and generators for a spec.
pub fn generators(spec: &GroupSpec) -> Result<(usize, Vec<Permutation>)> {
    let out = match spec {
        GroupSpec::Symmetric { n } => {
            let n = (*n).max(1);
            if n == 1 {
                (1, vec![])
            } else {
                let cycle: Vec<u32> = (0..n as u32).collect();
                (n, vec![perm(n, &[vec![0, 1]]), perm(n, &[cycle])])
            }
        }
        GroupSpec::Alternating { n } => {
            let n = (*n).max(1);
            (n, (2..n as u32).map(|i| perm(n, &[vec![0, 1, i]])).collect())
        }
        GroupSpec::Cyclic { n } => {
            if *n == 0 {
                return Err(Error::InvalidSpec("cyclic group of order 0".into()));
            }
            let cycle: Vec<u32> = (0..*n as u32).collect();
            (*n, vec![perm(*n, &[cycle])])
        }
        GroupSpec::Dihedral { order } => {
            if *order < 6 || order % 2 != 0 {
                return Err(Error::InvalidSpec(format!("dihedral order {} must be even and at least 6", order)));
            }
            let k = order / 2;
            (
                k,
                vec![from_map(k, |i| (i + 1) % k), from_map(k, |i| (k - i) % k)],
            )
        }
        GroupSpec::ElementaryAbelian { p, k } => {
            if !is_prime(*p as u64) || *k == 0 {
                return Err(Error::InvalidSpec(format!("E:{}:{} needs a prime and k >= 1", p, k)));
            }
            let deg = p * k;
            (
                deg,
                (0..*k)
                    .map(|j| perm(deg, &[((j * p) as u32..((j + 1) * p) as u32).collect()]))
                    .collect(),
            )
        }
        GroupSpec::DirectProduct { left, right } => {
            let (da, ga) = generators(left)?;
            let (db, gb) = generators(right)?;
            let deg = da + db;
            let mut gens: Vec<Permutation> = ga
                .iter()
                .map(|g| from_map(deg, |i| if i < da { g.image(i) } else { i }))
                .collect();
            gens.extend(gb.iter().map(|g| from_map(deg, |i| if i < da { i } else { da + g.image(i - da) })));
            (deg, gens)
        }
        GroupSpec::Agl1 { q } => affine(*q, q.saturating_sub(1))?,
        GroupSpec::Agl1Subgroup { q, d } => affine(*q, *d)?,
        GroupSpec::Sl2 { q } => sl2(*q)?,
        GroupSpec::Psl2 { q } => psl2(*q)?,
        GroupSpec::Psl3_2 => psl3_2(),
        GroupSpec::FromGenerators { path } => {
            let text = std::fs::read_to_string(path)?;
            let g = GeneratorSpec::parse(&text)?;
            (g.degree, g.generators)
        }
        GroupSpec::Named { label } => match label.as_str() {
            "G351" => affine(27, 13)?,
            "G80" => affine(16, 5)?,
            "D12" => generators(&GroupSpec::Dihedral { order: 12 })?,
            "S3xC4" => generators(&"S3xC4".parse()?)?,
            "V9C2x2" => {
                let g = GeneratorSpec::parse(V9C2X2)?;
                (g.degree, g.generators)
            }
            other => return Err(Error::InvalidSpec(format!("unknown named group '{}'", other))),
        },
    };
    Ok(out)
}

/// `x -> a x + b` with `a` ranging over the subgroup of order `d` of the
/// multiplicative group.
fn affine(q: usize, d: usize) -> Result<(usize, Vec<Permutation>)> {
    let f = Field::new(q)?;
    if d == 0 || (q - 1) % d != 0 {
        return Err(Error::InvalidSpec(format!("{} does not divide {}", d, q - 1)));
    }
    let mut gens: Vec<Permutation> = f.basis().into_iter().map(|b| from_map(q, |x| f.add(x, b))).collect();
    let a = f.primitive_power((q - 1) / d);
    if a != 1 {
        gens.push(from_map(q, |x| f.mul(a, x)));
    }
    Ok((q, gens))
}

/// Generators of `SL(2, q)` as 2x2 matrices `[[a, b], [c, d]]`: the upper
/// and lower transvections by an additive basis, and `diag(w, w^-1)`.
fn sl2_matrices(f: &Field) -> Vec<[usize; 4]> {
    let mut mats = Vec::new();
    for t in f.basis() {
        mats.push([1, t, 0, 1]);
        mats.push([1, 0, t, 1]);
    }
    let w = f.primitive_power(1);
    if w != 1 {
        mats.push([w, 0, 0, f.inv(w)]);
    }
    mats
}

/// Row vector times matrix.
fn apply(f: &Field, m: &[usize; 4], (x, y): (usize, usize)) -> (usize, usize) {
    (
        f.add(f.mul(x, m[0]), f.mul(y, m[2])),
        f.add(f.mul(x, m[1]), f.mul(y, m[3])),
    )
}

/// Faithful action on the `q^2 - 1` nonzero vectors.
fn sl2(q: usize) -> Result<(usize, Vec<Permutation>)> {
    let f = Field::new(q)?;
    let deg = q * q - 1;
    let gens = sl2_matrices(&f)
        .iter()
        .map(|m| {
            from_map(deg, |i| {
                let v = ((i + 1) / q, (i + 1) % q);
                let (a, b) = apply(&f, m, v);
                a * q + b - 1
            })
        })
        .collect();
    Ok((deg, gens))
}

/// Action on the `q + 1` points of the projective line: point `i < q` is
/// `<(1, i)>` and point `q` is `<(0, 1)>`.
fn psl2(q: usize) -> Result<(usize, Vec<Permutation>)> {
    let f = Field::new(q)?;
    let deg = q + 1;
    let gens = sl2_matrices(&f)
        .iter()
        .map(|m| {
            from_map(deg, |i| {
                let v = if i < q { (1, i) } else { (0, 1) };
                let (a, b) = apply(&f, m, v);
                if a == 0 {
                    q
                } else {
                    f.mul(b, f.inv(a))
                }
            })
        })
        .collect();
    Ok((deg, gens))
}

/// `GL(3, 2)` on the seven nonzero vectors of `F_2^3`, vector `v` being
/// point `v - 1` with bit `i` the `i`-th coordinate.
fn psl3_2() -> (usize, Vec<Permutation>) {
    // columns of each matrix as bit masks; v -> sum_i v_i col_i
    let act = |cols: [usize; 3]| {
        from_map(7, move |i| {
            let v = i + 1;
            (0..3).filter(|b| v >> b & 1 == 1).fold(0, |acc, b| acc ^ cols[b]) - 1
        })
    };
    // multiplication by x on F_2[x]/(x^3 + x + 1), and a transvection
    let singer = act([0b010, 0b100, 0b011]);
    let transvection = act([0b001, 0b011, 0b100]);
    (7, vec![singer, transvection])
}

/// Expected group order, where a closed formula exists.
pub fn expected_order(spec: &GroupSpec) -> Option<usize> {
    fn fact(n: usize) -> usize {
        (1..=n).product()
    }
    Some(match spec {
        GroupSpec::Symmetric { n } => fact(*n),
        GroupSpec::Alternating { n } => (fact(*n) / 2).max(1),
        GroupSpec::Cyclic { n } => *n,
        GroupSpec::Dihedral { order } => *order,
        GroupSpec::ElementaryAbelian { p, k } => p.pow(*k as u32),
        GroupSpec::DirectProduct { left, right } => expected_order(left)? * expected_order(right)?,
        GroupSpec::Agl1 { q } => q * (q - 1),
        GroupSpec::Agl1Subgroup { q, d } => q * d,
        GroupSpec::Sl2 { q } => q * (q * q - 1),
        GroupSpec::Psl2 { q } => q * (q * q - 1) / gcd(2, (*q as u64) - 1) as usize,
        GroupSpec::Psl3_2 => 168,
        GroupSpec::FromGenerators { .. } => return None,
        GroupSpec::Named { label } => match label.as_str() {
            "G351" => 351,
            "G80" => 80,
            "D12" => 12,
            "V9C2x2" => 36,
            "S3xC4" => 24,
            _ => return None,
        },
    })
}

/// `d` is divisible by `(p + 1) (p - 1)_2`, where `(p - 1)_2` is the
/// largest power of 2 dividing `p - 1`.
pub fn affine_diam3_criterion(p: usize, d: usize) -> Result<bool> {
    if !is_prime(p as u64) || d <= 1 || (p * p - 1) % d != 0 {
        return Err(Error::InvalidSpec(format!(
            "need a prime p and a divisor d > 1 of p^2 - 1, got p = {}, d = {}",
            p, d
        )));
    }
    let two_part = 1usize << (p - 1).trailing_zeros();
    Ok(d % ((p + 1) * two_part) == 0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub spec: String,
    pub order: usize,
    pub degree: usize,
    pub note: String,
}

/// Groups used by the scans and test suites.
pub const CATALOG: &[(&str, &str)] = &[
    ("C4", "cyclic"),
    ("C6", "cyclic"),
    ("E:2:3", "elementary abelian 2^3"),
    ("E:3:2", "elementary abelian 3^2"),
    ("S3", "symmetric"),
    ("D8", "dihedral"),
    ("Named:D12", "dihedral of order 12"),
    ("A4", "alternating"),
    ("Named:S3xC4", "supersolvable, 24"),
    ("S4", "symmetric"),
    ("SL2:3", "2.A4"),
    ("AGL1:5", "5:4"),
    ("AGL1:7", "7:6"),
    ("Named:V9C2x2", "2^2:9"),
    ("AGL1:8", "2^3:7"),
    ("AGL1:9:4", "3^2:4"),
    ("AGL1:9", "3^2:8"),
    ("A5", "simple, 60"),
    ("Named:G80", "2^4:5"),
    ("S5", "symmetric"),
    ("SL2:5", "2.A5"),
    ("PSL3:2", "simple, 168"),
    ("AGL1:16", "2^4:15"),
    ("SL2:7", "2.PSL(2,7)"),
    ("Named:G351", "3^3:13"),
    ("A6", "simple, 360"),
    ("PSL2:11", "simple, 660"),
    ("S6", "symmetric"),
];

pub fn catalog_list() -> Result<Vec<CatalogEntry>> {
    CATALOG
        .iter()
        .map(|(s, note)| {
            let g = construct(&s.parse()?)?;
            Ok(CatalogEntry {
                spec: s.to_string(),
                order: g.order(),
                degree: g.degree(),
                note: note.to_string(),
            })
        })
        .collect()
}
