//! Cartan matrices of the finite types, validation, and classification of
//! Dynkin diagrams back into type labels.
//!
//! Convention: `a_ij = ⟨α_j, α_i∨⟩`, Bourbaki numbering. In `B_n` the last
//! simple root is short, in `C_n` it is long, in `G₂` the first one is short.

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::RootError;
use crate::lattice::rational::{rat, Rat};
use crate::lattice::{IntMatrix, RatMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

impl FromStr for Family {
    type Err = RootError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            _ => Err(RootError::UnknownType(s.to_string())),
        }
    }
}

/// A connected finite type such as `B2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootError> {
        let ok = match family {
            Family::A => (1..=8).contains(&rank),
            Family::B | Family::C => (2..=8).contains(&rank),
            Family::D => (4..=8).contains(&rank),
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(RootError::RankOutOfRange { family, rank })
        }
    }

    /// Classical order of the Weyl group.
    pub fn weyl_order(self) -> u64 {
        let n = self.rank as u64;
        let fact = |k: u64| (1..=k).product::<u64>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u64 << n) * fact(n),
            Family::D => (1u64 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }

    pub fn cartan_matrix(self) -> IntMatrix {
        let n = self.rank;
        let mut a = IntMatrix::identity(n).scale(2);
        let link = |a: &mut IntMatrix, i: usize, j: usize| {
            a.set(i, j, -1);
            a.set(j, i, -1);
        };
        match self.family {
            Family::A | Family::B | Family::C => {
                for i in 0..n - 1 {
                    link(&mut a, i, i + 1);
                }
                if self.family == Family::B {
                    a.set(n - 1, n - 2, -2);
                } else if self.family == Family::C {
                    a.set(n - 2, n - 1, -2);
                }
            }
            Family::D => {
                for i in 0..n - 2 {
                    link(&mut a, i, i + 1);
                }
                link(&mut a, n - 3, n - 1);
            }
            Family::E => {
                // 1-3-4-5-...-n with 2 attached to 4
                link(&mut a, 0, 2);
                link(&mut a, 1, 3);
                for i in 2..n - 1 {
                    link(&mut a, i, i + 1);
                }
            }
            Family::F => {
                link(&mut a, 0, 1);
                link(&mut a, 1, 2);
                link(&mut a, 2, 3);
                a.set(2, 1, -2);
            }
            Family::G => {
                a.set(0, 1, -3);
                a.set(1, 0, -1);
            }
        }
        a
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = RootError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (head, tail) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let family: Family = head.parse()?;
        let rank: usize = tail
            .parse()
            .map_err(|_| RootError::UnknownType(s.to_string()))?;
        CartanType::new(family, rank)
    }
}

/// A product of connected finite types; the empty product is a torus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DynkinType {
    pub components: Vec<CartanType>,
}

impl DynkinType {
    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }

    pub fn is_torus(&self) -> bool {
        self.components.is_empty()
    }

    pub fn weyl_order(&self) -> u64 {
        self.components.iter().map(|c| c.weyl_order()).product()
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "T");
        }
        let parts: Vec<String> = self.components.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl Serialize for DynkinType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Connected components of the diagram, each sorted, listed by smallest node.
pub fn components(a: &IntMatrix) -> Vec<Vec<usize>> {
    let n = a.rows();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..n {
                if !seen[j] && a.get(i, j) != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// `ε_i = (α_i, α_i)/2`, normalized so the longest root in each component has `ε = 1`.
/// `ε_i a_ij = ε_j a_ji` for all `i, j`.
pub fn symmetrizer(a: &IntMatrix) -> Option<Vec<Rat>> {
    let n = a.rows();
    let mut eps: Vec<Option<Rat>> = vec![None; n];
    for comp in components(a) {
        eps[comp[0]] = Some(Rat::one());
        let mut stack = vec![comp[0]];
        while let Some(i) = stack.pop() {
            let ei = eps[i]?;
            for j in 0..n {
                if i == j || a.get(i, j) == 0 {
                    continue;
                }
                let ej = ei * rat(a.get(i, j) as i128) / rat(a.get(j, i) as i128);
                match eps[j] {
                    Some(prev) if prev != ej => return None,
                    Some(_) => {}
                    None => {
                        eps[j] = Some(ej);
                        stack.push(j);
                    }
                }
            }
        }
        let max = comp.iter().map(|&i| eps[i].unwrap()).max().unwrap();
        for &i in &comp {
            eps[i] = Some(eps[i].unwrap() / max);
        }
    }
    eps.into_iter().collect()
}

/// The symmetric matrix `(α_i, α_j) = ε_i a_ij`.
pub fn symmetrized(a: &IntMatrix, eps: &[Rat]) -> RatMatrix {
    let n = a.rows();
    let mut s = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            s.set(i, j, eps[i] * rat(a.get(i, j) as i128));
        }
    }
    s
}

/// Checks the Cartan axioms and finite type (positive definite symmetrization).
pub fn validate_finite_cartan(a: &IntMatrix) -> Result<Vec<Rat>, RootError> {
    validate_generalized_cartan(a)?;
    let eps = symmetrizer(a).ok_or(RootError::InvalidCartan("not symmetrizable".into()))?;
    if !symmetrized(a, &eps).is_positive_definite() {
        return Err(RootError::InvalidCartan(
            "symmetrization is not positive definite".into(),
        ));
    }
    Ok(eps)
}

pub(crate) fn validate_generalized_cartan(a: &IntMatrix) -> Result<(), RootError> {
    if !a.is_square() || a.rows() == 0 {
        return Err(RootError::InvalidCartan(
            "must be a nonempty square matrix".into(),
        ));
    }
    let n = a.rows();
    for i in 0..n {
        if a.get(i, i) != 2 {
            return Err(RootError::InvalidCartan(format!(
                "diagonal entry {i} is not 2"
            )));
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            if a.get(i, j) > 0 {
                return Err(RootError::InvalidCartan(format!(
                    "entry ({i},{j}) is positive"
                )));
            }
            if (a.get(i, j) == 0) != (a.get(j, i) == 0) {
                return Err(RootError::InvalidCartan(format!(
                    "entries ({i},{j}) and ({j},{i}) disagree on vanishing"
                )));
            }
        }
    }
    Ok(())
}

/// Identifies the finite type of a valid Cartan matrix.
pub fn classify(a: &IntMatrix) -> Result<DynkinType, RootError> {
    if a.rows() == 0 {
        return Ok(DynkinType::default());
    }
    let eps = validate_finite_cartan(a)?;
    let mut comps: Vec<CartanType> = components(a)
        .iter()
        .map(|c| classify_connected(a, &eps, c))
        .collect::<Result<_, _>>()?;
    comps.sort();
    Ok(DynkinType { components: comps })
}

fn classify_connected(
    a: &IntMatrix,
    eps: &[Rat],
    nodes: &[usize],
) -> Result<CartanType, RootError> {
    let n = nodes.len();
    let mut degree = vec![0usize; n];
    let mut max_bond = 1;
    let mut double_edge = None;
    for x in 0..n {
        for y in x + 1..n {
            let (i, j) = (nodes[x], nodes[y]);
            let m = a.get(i, j) * a.get(j, i);
            if m != 0 {
                degree[x] += 1;
                degree[y] += 1;
                max_bond = max_bond.max(m);
                if m == 2 {
                    double_edge = Some((x, y));
                }
            }
        }
    }
    let fam = |f: Family| CartanType::new(f, n);
    if n == 1 {
        return fam(Family::A);
    }
    match max_bond {
        3 => fam(Family::G),
        2 => {
            let (x, y) = double_edge.expect("double bond present");
            if n == 2 {
                return fam(Family::B);
            }
            if degree[x] == 2 && degree[y] == 2 {
                return fam(Family::F);
            }
            let end = if degree[x] == 1 { x } else { y };
            let other = if end == x { y } else { x };
            if eps[nodes[end]] < eps[nodes[other]] {
                fam(Family::B)
            } else {
                fam(Family::C)
            }
        }
        1 => {
            let Some(branch) = (0..n).find(|&x| degree[x] == 3) else {
                return fam(Family::A);
            };
            let mut arms: Vec<usize> = (0..n)
                .filter(|&y| y != branch && a.get(nodes[branch], nodes[y]) != 0)
                .map(|start| arm_length(a, nodes, branch, start))
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => fam(Family::D),
                [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => fam(Family::E),
                _ => Err(RootError::InvalidCartan("unrecognized diagram".into())),
            }
        }
        _ => Err(RootError::InvalidCartan("bond of multiplicity > 3".into())),
    }
}

fn arm_length(a: &IntMatrix, nodes: &[usize], from: usize, start: usize) -> usize {
    let (mut prev, mut cur, mut len) = (from, start, 1);
    loop {
        let next =
            (0..nodes.len()).find(|&z| z != prev && z != cur && a.get(nodes[cur], nodes[z]) != 0);
        match next {
            Some(z) => {
                prev = cur;
                cur = z;
                len += 1;
            }
            None => return len,
        }
    }
}
