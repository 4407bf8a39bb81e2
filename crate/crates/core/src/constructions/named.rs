//! Named group families and the textual group names used by the corpus.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::arith::is_prime;
use crate::error::{GroupError, Result};
use crate::group::Group;
use crate::perm::Permutation;

use super::product::direct_product;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Cyclic,
    Dihedral,
    Symmetric,
    Alternating,
    Quaternion,
    ElementaryAbelian,
    KleinFour,
    SpecialLinear23,
    Product,
}

impl FromStr for Family {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "cyclic" => Family::Cyclic,
            "dihedral" => Family::Dihedral,
            "symmetric" => Family::Symmetric,
            "alternating" => Family::Alternating,
            "quaternion" => Family::Quaternion,
            "elementary-abelian" => Family::ElementaryAbelian,
            "klein-four" => Family::KleinFour,
            "special-linear-2-3" => Family::SpecialLinear23,
            "product" => Family::Product,
            _ => return Err(GroupError::UnknownFamily(s.to_string())),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Cyclic => "cyclic",
            Family::Dihedral => "dihedral",
            Family::Symmetric => "symmetric",
            Family::Alternating => "alternating",
            Family::Quaternion => "quaternion",
            Family::ElementaryAbelian => "elementary-abelian",
            Family::KleinFour => "klein-four",
            Family::SpecialLinear23 => "special-linear-2-3",
            Family::Product => "product",
        };
        f.write_str(s)
    }
}

fn cycle(points: impl IntoIterator<Item = usize>, degree: usize) -> Permutation {
    let pts: Vec<usize> = points.into_iter().collect();
    let mut images: Vec<usize> = (1..=degree).collect();
    for (i, &a) in pts.iter().enumerate() {
        images[a - 1] = pts[(i + 1) % pts.len()];
    }
    Permutation::from_images(&images).expect("valid cycle")
}

fn invalid(msg: String) -> GroupError {
    GroupError::InvalidParameter(msg)
}

/// Standard generators of a named family.
///
/// | family | parameters | representation |
/// |---|---|---|
/// | cyclic | `n` | `(1,..,n)` |
/// | dihedral | `2n`, `n >= 2` | rotation `(1,..,n)`, reflection fixing 1; `Dih(4)` on 4 points |
/// | symmetric | `n` | `(1,..,n)`, `(1,2)` |
/// | alternating | `n` | 3-cycles `(i,i+1,i+2)` |
/// | quaternion | `8` | regular action on `{±1,±i,±j,±k}` |
/// | elementary-abelian | `p, k` | `k` disjoint `p`-cycles |
/// | klein-four | none | `(1,2)(3,4)`, `(1,3)(2,4)` |
/// | special-linear-2-3 | none | action on the 8 nonzero vectors of `F_3^2` |
pub fn named_generators(family: Family, params: &[u64]) -> Result<(usize, Vec<Permutation>)> {
    let want = |k: usize| -> Result<()> {
        if params.len() != k {
            Err(invalid(format!(
                "{family} takes {k} parameter(s), got {}",
                params.len()
            )))
        } else {
            Ok(())
        }
    };
    match family {
        Family::Cyclic => {
            want(1)?;
            let n = params[0] as usize;
            if n == 0 {
                return Err(invalid("cyclic order must be positive".into()));
            }
            let gens = if n == 1 {
                vec![]
            } else {
                vec![cycle(1..=n, n)]
            };
            Ok((n, gens))
        }
        Family::Dihedral => {
            want(1)?;
            let order = params[0] as usize;
            if order < 4 || order % 2 == 1 {
                return Err(invalid(format!(
                    "dihedral order {order} must be even and >= 4"
                )));
            }
            let n = order / 2;
            if n == 2 {
                return named_generators(Family::KleinFour, &[]);
            }
            let mut refl: Vec<usize> = vec![1];
            refl.extend((2..=n).rev());
            let images: Vec<usize> = refl;
            Ok((n, vec![cycle(1..=n, n), Permutation::from_images(&images)?]))
        }
        Family::Symmetric => {
            want(1)?;
            let n = params[0] as usize;
            if n == 0 {
                return Err(invalid("symmetric degree must be positive".into()));
            }
            let gens = match n {
                1 => vec![],
                2 => vec![cycle([1, 2], 2)],
                _ => vec![cycle(1..=n, n), cycle([1, 2], n)],
            };
            Ok((n, gens))
        }
        Family::Alternating => {
            want(1)?;
            let n = params[0] as usize;
            if n == 0 {
                return Err(invalid("alternating degree must be positive".into()));
            }
            let gens = (1..=n.saturating_sub(2))
                .map(|i| cycle([i, i + 1, i + 2], n))
                .collect();
            Ok((n, gens))
        }
        Family::Quaternion => {
            if !(params.is_empty() || params == [8]) {
                return Err(invalid(
                    "only the quaternion group of order 8 is built in".into(),
                ));
            }
            Ok((8, quaternion_regular()))
        }
        Family::ElementaryAbelian => {
            want(2)?;
            let (p, k) = (params[0], params[1] as usize);
            if !is_prime(p) {
                return Err(invalid(format!("{p} is not prime")));
            }
            if k == 0 {
                return Err(invalid("elementary abelian rank must be positive".into()));
            }
            let p = p as usize;
            let degree = p * k;
            let gens = (0..k)
                .map(|b| cycle(b * p + 1..=b * p + p, degree))
                .collect();
            Ok((degree, gens))
        }
        Family::KleinFour => {
            want(0)?;
            let a = Permutation::from_images(&[2, 1, 4, 3])?;
            let b = Permutation::from_images(&[3, 4, 1, 2])?;
            Ok((4, vec![a, b]))
        }
        Family::SpecialLinear23 => {
            want(0)?;
            Ok((8, sl23_on_vectors()))
        }
        Family::Product => Err(invalid("products are built with direct_product".into())),
    }
}

pub fn named_group(family: Family, params: &[u64]) -> Result<Group> {
    let (degree, gens) = named_generators(family, params)?;
    Group::from_generators(degree, &gens)
}

/// Quaternion units as (sign, unit) with unit 0..4 = 1, i, j, k; indexed 1..8.
fn quaternion_regular() -> Vec<Permutation> {
    // unit products: table[a][b] = (sign, unit) of a*b
    let table: [[(i8, usize); 4]; 4] = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ];
    let index = |sign: i8, unit: usize| if sign > 0 { unit } else { unit + 4 };
    let right_mult = |by: usize| {
        let images: Vec<usize> = (0..8)
            .map(|x| {
                let (s, u) = if x < 4 { (1i8, x) } else { (-1i8, x - 4) };
                let (s2, u2) = table[u][by];
                index(s * s2, u2) + 1
            })
            .collect();
        Permutation::from_images(&images).expect("quaternion action")
    };
    vec![right_mult(1), right_mult(2)]
}

fn sl23_on_vectors() -> Vec<Permutation> {
    let vectors: Vec<(u8, u8)> = (0..3u8)
        .flat_map(|a| (0..3u8).map(move |b| (a, b)))
        .filter(|&v| v != (0, 0))
        .collect();
    let act = |m: [[u8; 2]; 2]| {
        let images: Vec<usize> = vectors
            .iter()
            .map(|&(x, y)| {
                let w = (
                    (x * m[0][0] + y * m[1][0]) % 3,
                    (x * m[0][1] + y * m[1][1]) % 3,
                );
                vectors.iter().position(|&v| v == w).unwrap() + 1
            })
            .collect();
        Permutation::from_images(&images).expect("SL(2,3) action")
    };
    vec![act([[1, 1], [0, 1]]), act([[0, 2], [1, 0]])]
}

/// Builds a group from a name such as `Sym(4)`, `Dih(8)`, `Q8`, `EA(2^3)` or
/// `Alt(5)xCyc(5)`. Returns the degree and generators.
pub fn generators_for_name(name: &str) -> Result<(usize, Vec<Permutation>)> {
    let factors = split_product(name);
    if factors.len() > 1 {
        let mut acc: Option<Group> = None;
        for f in &factors {
            let (d, gens) = generators_for_name(f)?;
            let g = Group::from_generators(d, &gens)?;
            acc = Some(match acc {
                None => g,
                Some(a) => direct_product(&a, &g)?.group,
            });
        }
        let g = acc.expect("at least two factors");
        return Ok((g.degree(), g.generators().to_vec()));
    }
    let s = name.trim();
    let unknown = || GroupError::UnknownFamily(s.to_string());
    let arg = |prefix: &str| -> Option<&str> {
        s.strip_prefix(prefix)
            .and_then(|r| r.strip_prefix('('))
            .and_then(|r| r.strip_suffix(')'))
    };
    let num = |t: &str| -> Result<u64> {
        t.trim()
            .parse()
            .map_err(|_| invalid(format!("bad parameter `{t}` in `{s}`")))
    };
    match s {
        "Q8" => return named_generators(Family::Quaternion, &[]),
        "V4" => return named_generators(Family::KleinFour, &[]),
        "SL(2,3)" => return named_generators(Family::SpecialLinear23, &[]),
        _ => {}
    }
    if let Some(a) = arg("Cyc") {
        return named_generators(Family::Cyclic, &[num(a)?]);
    }
    if let Some(a) = arg("Dih") {
        return named_generators(Family::Dihedral, &[num(a)?]);
    }
    if let Some(a) = arg("Sym") {
        return named_generators(Family::Symmetric, &[num(a)?]);
    }
    if let Some(a) = arg("Alt") {
        return named_generators(Family::Alternating, &[num(a)?]);
    }
    if let Some(a) = arg("EA") {
        let (p, k) = a.split_once('^').ok_or_else(unknown)?;
        return named_generators(Family::ElementaryAbelian, &[num(p)?, num(k)?]);
    }
    Err(unknown())
}

/// Splits `AxBxC` at top-level `x` separators.
fn split_product(name: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in name.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            'x' if depth == 0 => {
                out.push(&name[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&name[start..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order_multiset(g: &Group) -> Vec<u64> {
        let mut v: Vec<u64> = g.elements().unwrap().iter().map(|x| x.order()).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn family_orders() {
        assert_eq!(named_group(Family::Symmetric, &[4]).unwrap().order(), 24);
        assert_eq!(named_group(Family::Alternating, &[5]).unwrap().order(), 60);
        assert_eq!(named_group(Family::Dihedral, &[8]).unwrap().order(), 8);
        assert_eq!(named_group(Family::Dihedral, &[4]).unwrap().order(), 4);
        assert_eq!(named_group(Family::Cyclic, &[1]).unwrap().order(), 1);
        assert_eq!(
            named_group(Family::SpecialLinear23, &[]).unwrap().order(),
            24
        );
        assert_eq!(named_group(Family::KleinFour, &[]).unwrap().order(), 4);
        for n in 1..=5u64 {
            let fact: u64 = (1..=n).product();
            assert_eq!(named_group(Family::Symmetric, &[n]).unwrap().order(), fact);
        }
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q = named_group(Family::Quaternion, &[8]).unwrap();
        assert_eq!(q.order(), 8);
        let orders = order_multiset(&q);
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 1);
        assert_eq!(orders, vec![1, 2, 4, 4, 4, 4, 4, 4]);
    }

    #[test]
    fn elementary_abelian_exponent() {
        let e = named_group(Family::ElementaryAbelian, &[2, 3]).unwrap();
        assert_eq!(e.order(), 8);
        assert!(e
            .elements()
            .unwrap()
            .iter()
            .all(|x| x.is_identity() || x.order() == 2));
    }

    #[test]
    fn bad_parameters() {
        assert!(matches!(
            named_group(Family::ElementaryAbelian, &[4, 2]),
            Err(GroupError::InvalidParameter(_))
        ));
        assert!(named_group(Family::Dihedral, &[7]).is_err());
        assert!(matches!(
            "mystery".parse::<Family>(),
            Err(GroupError::UnknownFamily(_))
        ));
    }

    #[test]
    fn names_parse() {
        let (d, gens) = generators_for_name("Alt(5)xCyc(5)").unwrap();
        assert_eq!(d, 10);
        assert_eq!(Group::from_generators(d, &gens).unwrap().order(), 300);
        let (d, gens) = generators_for_name("EA(3^2)").unwrap();
        assert_eq!(Group::from_generators(d, &gens).unwrap().order(), 9);
        assert!(generators_for_name("Foo(3)").is_err());
    }
}
