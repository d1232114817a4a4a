use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{Bracket, Branch, Element, Envelope, FanIn, StructureModel, TailSource};
use crate::error::{Error, Result};
use crate::exact::roots::root_bracket;
use crate::exact::{factorial_q, ExtNonNeg, GaussRat, Rational};

use super::{length_factorial_step, length_factorial_tail};

/// The finitely generated groups shipped with the zoo.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Group {
    Z,
    Zd(usize),
    /// Free group on N generators.
    Free(usize),
}

/// Canonical group element: exponent vector for ℤ and ℤ^d, reduced word for F_N.
///
/// Free-group letters are ±1..=±N, a negative letter meaning the inverse generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElem {
    Abelian(Vec<i64>),
    Word(Vec<i32>),
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElem::Abelian(v) if v.len() == 1 => write!(f, "{}", v[0]),
            GroupElem::Abelian(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
            GroupElem::Word(w) if w.is_empty() => write!(f, "e"),
            GroupElem::Word(w) => {
                let parts: Vec<String> =
                    w.iter().map(|&l| if l > 0 { format!("x{l}") } else { format!("x{}^-1", -l) }).collect();
                write!(f, "{}", parts.join(" "))
            }
        }
    }
}

fn reduce_word(letters: impl IntoIterator<Item = i32>) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::new();
    for l in letters {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

impl Group {
    pub fn identity(&self) -> GroupElem {
        match self {
            Group::Z => GroupElem::Abelian(vec![0]),
            Group::Zd(d) => GroupElem::Abelian(vec![0; *d]),
            Group::Free(_) => GroupElem::Word(Vec::new()),
        }
    }

    /// Number of generators together with their inverses.
    pub fn symmetric_generators(&self) -> usize {
        match self {
            Group::Z => 2,
            Group::Zd(d) => 2 * d,
            Group::Free(n) => 2 * n,
        }
    }

    pub fn contains(&self, g: &GroupElem) -> bool {
        match (self, g) {
            (Group::Z, GroupElem::Abelian(v)) => v.len() == 1,
            (Group::Zd(d), GroupElem::Abelian(v)) => v.len() == *d,
            (Group::Free(n), GroupElem::Word(w)) => {
                w.iter().all(|&l| l != 0 && l.unsigned_abs() as usize <= *n) && reduce_word(w.iter().copied()) == *w
            }
            _ => false,
        }
    }

    /// Reduces a free-group word; abelian elements pass through.
    pub fn word(&self, letters: &[i32]) -> Result<GroupElem> {
        match self {
            Group::Free(n) => {
                if let Some(l) = letters.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > *n) {
                    return Err(Error::NotInGroup(format!("letter {l} is not a generator of F_{n}")));
                }
                Ok(GroupElem::Word(reduce_word(letters.iter().copied())))
            }
            _ => Err(Error::InvalidArgument("words are only used for free groups".into())),
        }
    }

    pub fn mul(&self, g: &GroupElem, h: &GroupElem) -> GroupElem {
        match (g, h) {
            (GroupElem::Abelian(a), GroupElem::Abelian(b)) => {
                GroupElem::Abelian(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (GroupElem::Word(a), GroupElem::Word(b)) => GroupElem::Word(reduce_word(a.iter().chain(b).copied())),
            _ => panic!("mixed group element kinds"),
        }
    }

    pub fn inv(&self, g: &GroupElem) -> GroupElem {
        match g {
            GroupElem::Abelian(a) => GroupElem::Abelian(a.iter().map(|x| -x).collect()),
            GroupElem::Word(w) => GroupElem::Word(w.iter().rev().map(|l| -l).collect()),
        }
    }

    /// All elements of word length exactly r, in a fixed order.
    pub fn sphere(&self, r: u64) -> Vec<GroupElem> {
        match self {
            Group::Z => {
                let r = r as i64;
                if r == 0 { vec![GroupElem::Abelian(vec![0])] } else { vec![GroupElem::Abelian(vec![-r]), GroupElem::Abelian(vec![r])] }
            }
            Group::Zd(d) => {
                let mut out = Vec::new();
                let mut cur = vec![0i64; *d];
                fn rec(i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<GroupElem>) {
                    if i + 1 == cur.len() {
                        for s in if left == 0 { vec![0] } else { vec![-left, left] } {
                            cur[i] = s;
                            out.push(GroupElem::Abelian(cur.clone()));
                        }
                        return;
                    }
                    for v in -left..=left {
                        cur[i] = v;
                        rec(i + 1, left - v.abs(), cur, out);
                    }
                }
                if *d == 0 {
                    return if r == 0 { vec![GroupElem::Abelian(vec![])] } else { vec![] };
                }
                rec(0, r as i64, &mut cur, &mut out);
                out
            }
            Group::Free(n) => {
                let n = *n as i32;
                let mut layer: Vec<Vec<i32>> = vec![Vec::new()];
                for _ in 0..r {
                    let mut next = Vec::new();
                    for w in &layer {
                        for l in (-n..=n).filter(|&l| l != 0) {
                            if w.last() != Some(&-l) {
                                let mut v = w.clone();
                                v.push(l);
                                next.push(v);
                            }
                        }
                    }
                    layer = next;
                }
                layer.into_iter().map(GroupElem::Word).collect()
            }
        }
    }
}

/// Minimal number of generators and inverses needed to write g.
pub fn word_length(g: &GroupElem) -> u64 {
    match g {
        GroupElem::Abelian(v) => v.iter().map(|x| x.unsigned_abs()).sum(),
        GroupElem::Word(w) => w.len() as u64,
    }
}

/// Group algebra ℂ[G] in the basis e_g = g / c(g) with c(g) = (length g)!.
#[derive(Clone, Debug)]
pub struct GroupModel {
    pub group: Group,
    pub epsilon: Rational,
}

impl GroupModel {
    /// Only ε = 1 keeps every structure constant rational.
    pub fn new(group: Group, epsilon: Rational) -> Result<Self> {
        if !epsilon.is_one() {
            return Err(Error::Unsupported(format!(
                "group rescaling exponent {epsilon}: only epsilon = 1 has rational structure constants"
            )));
        }
        if let Group::Zd(0) | Group::Free(0) = group {
            return Err(Error::InvalidArgument("a group needs at least one generator".into()));
        }
        Ok(GroupModel { group, epsilon })
    }

    pub fn c(&self, g: &GroupElem) -> Rational {
        factorial_q(word_length(g) as u32)
    }

    fn gens(&self) -> Rational {
        Rational::from_integer(self.group.symmetric_generators().into())
    }
}

/// C^k_{g,·} = c(k) / (c(g)·c(g⁻¹k)); a single term since left multiplication is a bijection.
pub fn group_rowsum(model: &GroupModel, g: &GroupElem, k: &GroupElem) -> Bracket {
    Bracket::exact(model.row_sum(g, k))
}

impl StructureModel for GroupModel {
    type Index = GroupElem;

    fn name(&self) -> String {
        match self.group {
            Group::Z => "group:Z".into(),
            Group::Zd(d) => format!("group:Zd:{d}"),
            Group::Free(n) => format!("group:free:{n}"),
        }
    }

    fn contains(&self, i: &GroupElem) -> bool {
        self.group.contains(i)
    }

    fn product_fan(&self, a: &GroupElem, b: &GroupElem) -> Vec<(GroupElem, Rational)> {
        let k = self.group.mul(a, b);
        let c = self.c(&k) / (self.c(a) * self.c(b));
        vec![(k, c)]
    }

    fn row_sum(&self, a: &GroupElem, g: &GroupElem) -> Rational {
        let rest = self.group.mul(&self.group.inv(a), g);
        self.c(g) / (self.c(a) * self.c(&rest))
    }

    fn col_sum(&self, b: &GroupElem, g: &GroupElem) -> Rational {
        let rest = self.group.mul(g, &self.group.inv(b));
        self.c(g) / (self.c(&rest) * self.c(b))
    }

    fn rank(&self, i: &GroupElem) -> u64 {
        word_length(i)
    }

    fn fan_in(&self, g: &GroupElem, branch: Branch, _radius: u64, depth: u64) -> FanIn<GroupElem> {
        let mut terms = Vec::new();
        for r in 0..=depth {
            for h in self.group.sphere(r) {
                let w = self.branch_sum(branch, &h, g);
                terms.push((h, w));
            }
            if terms.len() > 200_000 {
                break;
            }
        }
        FanIn::Truncated { terms, complete: false }
    }

    fn envelope_seed(&self, _branch: Branch) -> Option<(Rational, Rational)> {
        Some((Rational::one(), Rational::from_integer(2.into())))
    }

    fn envelope_step(&self, env: &Envelope, _branch: Branch) -> Option<Envelope> {
        length_factorial_step(env, &self.gens())
    }

    fn tail_bound(&self, g: &GroupElem, _branch: Branch, depth: u64, env: &Envelope) -> Option<Rational> {
        length_factorial_tail(word_length(g), depth, env, &self.gens())
    }

    fn is_commutative(&self) -> bool {
        !matches!(self.group, Group::Free(n) if n > 1)
    }

    fn unit(&self) -> Option<GroupElem> {
        Some(self.group.identity())
    }

    /// e_g* = e_{g⁻¹}.
    fn involution(&self, i: &GroupElem) -> Option<GroupElem> {
        Some(self.group.inv(i))
    }

    fn rank_count_bound(&self) -> Option<(Rational, u32)> {
        Some((self.gens(), 0))
    }

    fn indices_with_rank(&self, r: u64) -> Option<Vec<GroupElem>> {
        Some(self.group.sphere(r))
    }

    fn parse_index(&self, v: &serde_json::Value) -> Result<GroupElem> {
        let bad = || Error::Parse(format!("invalid element of {}: {v}", self.name()));
        let g = match self.group {
            Group::Z => GroupElem::Abelian(vec![v.as_i64().ok_or_else(bad)?]),
            Group::Zd(_) => {
                let arr = v.as_array().ok_or_else(bad)?;
                GroupElem::Abelian(arr.iter().map(|x| x.as_i64().ok_or_else(bad)).collect::<Result<_>>()?)
            }
            Group::Free(_) => {
                let arr = v.as_array().ok_or_else(bad)?;
                let letters: Vec<i32> =
                    arr.iter().map(|x| x.as_i64().map(|l| l as i32).ok_or_else(bad)).collect::<Result<_>>()?;
                self.group.word(&letters)?
            }
        };
        if !self.group.contains(&g) {
            return Err(Error::NotInGroup(format!("{g} is not an element of {}", self.name())));
        }
        Ok(g)
    }

    fn index_json(&self, i: &GroupElem) -> serde_json::Value {
        match (self.group, i) {
            (Group::Z, GroupElem::Abelian(v)) => serde_json::json!(v[0]),
            (_, GroupElem::Abelian(v)) => serde_json::json!(v),
            (_, GroupElem::Word(w)) => serde_json::json!(w),
        }
    }
}

/// Value of a character on a finite element and the certified bound on its modulus.
#[derive(Clone, Debug)]
pub struct CharacterValue {
    pub value: GaussRat,
    /// Bracket for Σ_g |a_g|·R^{length g}/c(g) ≥ |χ(a)|, R = max |χ| on generators.
    pub bound: Bracket,
}

/// χ(a) = Σ_g (a_g / c(g))·χ(g) for the character with the given values on generators.
pub fn group_character(model: &GroupModel, a: &Element<GroupElem>, chi: &[GaussRat]) -> Result<CharacterValue> {
    let need = match model.group {
        Group::Z => 1,
        Group::Zd(d) => d,
        Group::Free(n) => n,
    };
    if chi.len() != need {
        return Err(Error::InvalidArgument(format!("{} character values given, {need} expected", chi.len())));
    }
    let inv: Vec<GaussRat> = chi
        .iter()
        .map(|c| c.checked_inv().ok_or_else(|| Error::InvalidArgument("a character value cannot vanish".into())))
        .collect::<Result<_>>()?;
    let chi_of = |g: &GroupElem| -> GaussRat {
        let mut acc = GaussRat::one();
        match g {
            GroupElem::Abelian(v) => {
                for (i, &e) in v.iter().enumerate() {
                    let base = if e >= 0 { &chi[i] } else { &inv[i] };
                    acc *= base.pow(e.unsigned_abs() as u32);
                }
            }
            GroupElem::Word(w) => {
                for &l in w {
                    let i = l.unsigned_abs() as usize - 1;
                    acc *= if l > 0 { chi[i].clone() } else { inv[i].clone() };
                }
            }
        }
        acc
    };
    let r2 = chi.iter().chain(inv.iter()).map(|c| c.norm_sqr()).max().unwrap_or_else(Rational::zero);
    let mut value = GaussRat::zero();
    let mut lo = Rational::zero();
    let mut hi = Rational::zero();
    for (g, c) in a.iter() {
        let cg = model.c(g);
        value += (c.clone() * chi_of(g)).scale(&(Rational::one() / &cg));
        let sq = c.norm_sqr() * crate::exact::rational::pow(&r2, word_length(g) as u32) / (&cg * &cg);
        let (l, h) = root_bracket(&sq, 2, 96);
        lo += l;
        hi += h;
    }
    let bound = Bracket::new(lo, ExtNonNeg::Finite(hi), 0, TailSource::GeometricTail);
    Ok(CharacterValue { value, bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    fn z(n: i64) -> GroupElem {
        GroupElem::Abelian(vec![n])
    }

    #[test]
    fn word_lengths() {
        assert_eq!(word_length(&z(-3)), 3);
        let f2 = Group::Free(2);
        assert_eq!(word_length(&f2.word(&[1, 2, -1]).unwrap()), 3);
        assert_eq!(word_length(&f2.identity()), 0);
        assert_eq!(f2.word(&[1, 2, -2, -1]).unwrap(), f2.identity());
    }

    #[test]
    fn rowsums() {
        let zm = GroupModel::new(Group::Z, int(1)).unwrap();
        assert_eq!(group_rowsum(&zm, &z(1), &z(2)).exact_value(), Some(&int(2)));
        assert_eq!(group_rowsum(&zm, &z(0), &z(0)).exact_value(), Some(&int(1)));
        let fm = GroupModel::new(Group::Free(2), int(1)).unwrap();
        let x = fm.group.word(&[1]).unwrap();
        let xy = fm.group.word(&[1, 2]).unwrap();
        assert_eq!(group_rowsum(&fm, &x, &xy).exact_value(), Some(&int(2)));
    }

    #[test]
    fn sphere_sizes_bounded() {
        for n in 1..=3usize {
            let g = Group::Free(n);
            for l in 0..=6u64 {
                let s = g.sphere(l).len() as u64;
                assert!(s <= (2 * n as u64).pow(l as u32));
            }
        }
        assert_eq!(Group::Zd(2).sphere(2).len(), 8);
    }

    #[test]
    fn characters() {
        let zm = GroupModel::new(Group::Z, int(1)).unwrap();
        let one = GaussRat::from_ints(1, 0);
        let e = Element::basis(z(0));
        assert_eq!(group_character(&zm, &e, &[one]).unwrap().value, GaussRat::from_ints(1, 0));
        let p = GaussRat::from_ints(3, 2);
        assert_eq!(group_character(&zm, &Element::basis(z(1)), &[p.clone()]).unwrap().value, p);
        let two = GaussRat::from_ints(2, 0);
        assert_eq!(group_character(&zm, &Element::basis(z(2)), &[two]).unwrap().value, GaussRat::from_ints(2, 0));
    }

    #[test]
    fn other_epsilon_rejected() {
        assert!(GroupModel::new(Group::Z, crate::exact::rational::rat(1, 2)).is_err());
    }
}
