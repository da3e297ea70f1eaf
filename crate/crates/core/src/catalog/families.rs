//! Named families of transitive groups, as generator lists.

use crate::error::Result;
use crate::perm::{close_group, Permutation};

/// A named transitive group given by generators (before closure).
#[derive(Clone, Debug)]
pub struct FamilyMember {
    /// Full id, `name@degree`.
    pub id: String,
    pub degree: usize,
    pub generators: Vec<Permutation>,
}

fn member(name: &str, degree: usize, generators: Vec<Permutation>) -> FamilyMember {
    FamilyMember {
        id: format!("{name}@{degree}"),
        degree,
        generators,
    }
}

fn cycle(degree: usize, points: &[usize]) -> Permutation {
    Permutation::from_cycles(degree, &[points.to_vec()]).expect("valid cycle")
}

fn images(v: Vec<usize>) -> Permutation {
    Permutation::from_images(&v).expect("valid images")
}

fn rotation(n: usize) -> Permutation {
    images((0..n).map(|i| (i + 1) % n).collect())
}

fn reflection(n: usize) -> Permutation {
    images((0..n).map(|i| (n - i) % n).collect())
}

pub fn cyclic(n: usize) -> FamilyMember {
    member(&format!("C{n}"), n, vec![rotation(n)])
}

pub fn symmetric(n: usize) -> FamilyMember {
    let mut gens = vec![rotation(n)];
    if n > 1 {
        gens.push(cycle(n, &[0, 1]));
    }
    member(&format!("S{n}"), n, gens)
}

/// Generated by the 3-cycles `(1 2 i)`.
pub fn alternating(n: usize) -> FamilyMember {
    let gens = (2..n).map(|i| cycle(n, &[0, 1, i])).collect();
    member(&format!("A{n}"), n, gens)
}

/// Symmetries of the regular n-gon, order `2n`.
pub fn dihedral(n: usize) -> FamilyMember {
    member(&format!("D{n}"), n, vec![rotation(n), reflection(n)])
}

/// `x -> ax + b` over `Z_p`, order `p(p-1)`.
pub fn affine(p: usize) -> FamilyMember {
    let root = (2..p)
        .find(|&a| (1..p - 1).all(|e| modpow(a, e, p) != 1))
        .expect("prime modulus has a primitive root");
    let mul = images((0..p).map(|x| x * root % p).collect());
    member(&format!("F{}", p * (p - 1)), p, vec![rotation(p), mul])
}

fn modpow(a: usize, e: usize, m: usize) -> usize {
    (0..e).fold(1, |acc, _| acc * a % m)
}

/// `C_a wr C_b` acting on `b` blocks of size `a`; point `i + a*j` is
/// position `i` in block `j`.
pub fn wreath(a: usize, b: usize) -> FamilyMember {
    let n = a * b;
    let inner = images((0..n).map(|x| if x < a { (x + 1) % a } else { x }).collect());
    let outer = images((0..n).map(|x| (x % a) + a * ((x / a + 1) % b)).collect());
    member(&format!("C{a}wrC{b}"), n, vec![inner, outer])
}

/// Abstract groups of order at most 12, each given by a small faithful
/// permutation representation. Their regular representations are built
/// from these.
pub fn small_groups() -> Vec<(String, usize, Vec<Permutation>)> {
    let p = |d: usize, s: &str| Permutation::parse(s, d).expect("valid literal");
    let mut out: Vec<(String, usize, Vec<Permutation>)> = (2..=12).map(|m| (format!("C{m}"), m, vec![rotation(m)])).collect();
    let named: Vec<(&str, usize, Vec<&str>)> = vec![
        ("V4", 4, vec!["(1 2)(3 4)", "(1 3)(2 4)"]),
        ("S3", 3, vec!["(1 2)", "(1 2 3)"]),
        ("C4xC2", 6, vec!["(1 2 3 4)", "(5 6)"]),
        ("C2^3", 6, vec!["(1 2)", "(3 4)", "(5 6)"]),
        ("D4", 4, vec!["(1 2 3 4)", "(2 4)"]),
        ("Q8", 8, vec!["(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"]),
        ("C3xC3", 6, vec!["(1 2 3)", "(4 5 6)"]),
        ("D5", 5, vec!["(1 2 3 4 5)", "(2 5)(3 4)"]),
        ("C6xC2", 8, vec!["(1 2 3 4 5 6)", "(7 8)"]),
        ("A4", 4, vec!["(1 2 3)", "(2 3 4)"]),
        ("D6", 6, vec!["(1 2 3 4 5 6)", "(2 6)(3 5)"]),
        ("Dic3", 12, vec!["(1 2 3 4 5 6)(7 8 9 10 11 12)", "(1 7 4 10)(2 12 5 9)(3 11 6 8)"]),
    ];
    for (name, d, gens) in named {
        out.push((name.to_string(), d, gens.into_iter().map(|s| p(d, s)).collect()));
    }
    out
}

/// Left regular representation: `g` sends the i-th element `x_i` to `g x_i`.
pub fn regular_representation(name: &str, degree: usize, generators: &[Permutation]) -> Result<FamilyMember> {
    let g = close_group(degree, generators, 64)?;
    let elems = g.elements();
    let m = elems.len();
    let gens = generators
        .iter()
        .map(|s| images(elems.iter().map(|x| g.index_of(&(s * x)).expect("closed")).collect()))
        .collect();
    Ok(member(&format!("{name}-regular"), m, gens))
}

/// All named family members of degree `2..=max_degree`, in naming-priority
/// order: cyclic, symmetric, alternating, dihedral, affine, wreath,
/// regular. When two members are conjugate in `S_n`, the first keeps its name.
pub fn named_families(max_degree: usize) -> Result<Vec<FamilyMember>> {
    let mut out = Vec::new();
    let degrees = 2..=max_degree;
    out.extend(degrees.clone().map(cyclic));
    out.extend(degrees.clone().map(symmetric));
    out.extend(degrees.clone().filter(|&n| n >= 3).map(alternating));
    out.extend(degrees.clone().filter(|&n| n >= 3).map(dihedral));
    out.extend([5, 7, 11].into_iter().filter(|&p| p <= max_degree).map(affine));
    for a in 2..=max_degree {
        for b in 2..=max_degree {
            if a * b <= max_degree {
                out.push(wreath(a, b));
            }
        }
    }
    for (name, d, gens) in small_groups() {
        let r = regular_representation(&name, d, &gens)?;
        if r.degree <= max_degree {
            out.push(r);
        }
    }
    Ok(out)
}
