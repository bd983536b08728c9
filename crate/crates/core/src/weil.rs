//! The lattice L(c) = (ℤ, −12c²xy), its discriminant group ℤ/12c²ℤ and the
//! Weil representation of the generators T and S on ℂ[L′(c)/L(c)].
//!
//! Basis vectors 𝔢_h are indexed by the integer h mod 12c². ρ(S) is applied
//! as a kernel sum over the support of the input and never stored.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cyclotomic::{lcm_u64, CycNumber, RootSum, SmallRational};
use crate::error::Result;
use crate::special::check_level;

/// ℤ/12c²ℤ with quadratic form q(h) = −h²/24c² mod 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiscGroup {
    c: u64,
}

impl DiscGroup {
    pub fn new(c: u64) -> Result<Self> {
        check_level(c)?;
        Ok(Self { c })
    }

    pub fn level(&self) -> u64 {
        self.c
    }

    pub fn size(&self) -> u64 {
        12 * self.c * self.c
    }

    pub fn reduce(&self, h: i64) -> u64 {
        h.rem_euclid(self.size() as i64) as u64
    }

    /// e(q(h)) = e(−h²/24c²) as an exponent of ζ_{24c²}.
    pub fn t_phase(&self, h: u64) -> i64 {
        let n = 2 * self.size() as i128;
        (-((h as i128 * h as i128) % n)) as i64
    }
}

/// The scalar 1/(c√(−12i)) in front of the ρ(S) kernel.
pub fn s_scalar(c: u64) -> CycNumber {
    CycNumber::sqrt_neg12i()
        .scale_int(c as i64)
        .inv()
        .expect("nonzero")
}

/// A vector Σ v_h 𝔢_h with sparse exact entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscVector {
    group: DiscGroup,
    entries: BTreeMap<u64, CycNumber>,
}

impl DiscVector {
    pub fn zero(group: DiscGroup) -> Self {
        Self {
            group,
            entries: BTreeMap::new(),
        }
    }

    pub fn basis(group: DiscGroup, h: i64) -> Self {
        let mut v = Self::zero(group);
        v.set(h, CycNumber::one());
        v
    }

    pub fn group(&self) -> DiscGroup {
        self.group
    }

    pub fn get(&self, h: i64) -> CycNumber {
        self.entries
            .get(&self.group.reduce(h))
            .cloned()
            .unwrap_or_else(CycNumber::zero)
    }

    pub fn set(&mut self, h: i64, x: CycNumber) {
        let h = self.group.reduce(h);
        if x.is_zero() {
            self.entries.remove(&h);
        } else {
            self.entries.insert(h, x);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (u64, &CycNumber)> {
        self.entries.iter().map(|(h, x)| (*h, x))
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn scale(&self, x: &CycNumber) -> Self {
        let mut out = Self::zero(self.group);
        for (h, v) in self.entries() {
            out.set(h as i64, v * x);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.group, other.group);
        let mut out = self.clone();
        for (h, v) in other.entries() {
            let s = out.get(h as i64) + v.clone();
            out.set(h as i64, s);
        }
        out
    }

    /// h ↦ −h on indices.
    pub fn negate_index(&self) -> Self {
        let mut out = Self::zero(self.group);
        for (h, v) in self.entries() {
            out.set(-(h as i64), v.clone());
        }
        out
    }

    /// Hermitian pairing ⟨v, w⟩ = Σ v_h conj(w_h).
    pub fn inner(&self, other: &Self) -> CycNumber {
        self.entries()
            .filter_map(|(h, v)| other.entries.get(&h).map(|w| v * &w.conj()))
            .sum()
    }
}

/// ρ(T): multiply 𝔢_h by e(−h²/24c²).
pub fn rho_t_apply(v: &DiscVector) -> DiscVector {
    let g = v.group;
    let mut out = DiscVector::zero(g);
    for (h, x) in v.entries() {
        out.set(h as i64, x.mul_root(g.t_phase(h), 2 * g.size()));
    }
    out
}

/// ρ(S): (Sv)_{h′} = (1/(c√(−12i))) Σ_h e(hh′/12c²) v_h.
pub fn rho_s_apply(v: &DiscVector) -> DiscVector {
    let g = v.group;
    let size = g.size();
    let order = v.entries().fold(size, |m, (_, x)| lcm_u64(m, x.order()));
    let stretch = (order / size) as i128;
    let scalar = s_scalar(g.c);
    let mut out = DiscVector::zero(g);
    for h2 in 0..size {
        let root = |h: u64| ((h as i128 * h2 as i128 % size as i128) * stretch) as i64;
        let small = || {
            let mut acc = RootSum::<SmallRational>::new(order);
            let one = SmallRational::from_integer(1);
            for (h, x) in v.entries() {
                acc.add_cyc(x, root(h), &one)?;
            }
            acc.to_cyc()
        };
        let sum = small().unwrap_or_else(|| {
            let mut acc = RootSum::<num_rational::BigRational>::new(order);
            let one = num_rational::BigRational::from_integer(1.into());
            for (h, x) in v.entries() {
                acc.add_cyc(x, root(h), &one).expect("big arithmetic");
            }
            acc.to_cyc().expect("big arithmetic")
        });
        if !sum.is_zero() {
            out.set(h2 as i64, &sum * &scalar);
        }
    }
    out
}

/// scale · Σ m_h ζ_{24c²}^{e_h} 𝔢_h. Every vector reachable from a basis
/// vector by words in S and T has this shape, which keeps the relation
/// checks at one small integer sum per output index.
#[derive(Clone, Debug)]
struct PhaseVector {
    group: DiscGroup,
    scale: CycNumber,
    phases: BTreeMap<u64, (i64, i64)>,
}

impl PhaseVector {
    fn basis(group: DiscGroup, h: i64) -> Self {
        let mut phases = BTreeMap::new();
        phases.insert(group.reduce(h), (1, 0));
        Self {
            group,
            scale: CycNumber::one(),
            phases,
        }
    }

    fn order(&self) -> u64 {
        2 * self.group.size()
    }

    fn apply_t(&mut self) {
        let g = self.group;
        let n = self.order() as i64;
        for (h, (_, e)) in self.phases.iter_mut() {
            *e = (*e + g.t_phase(*h)).rem_euclid(n);
        }
    }

    /// Returns `None` if the output does not factor as scalar × phases.
    fn apply_s(&mut self) -> Option<()> {
        let g = self.group;
        let size = g.size() as i128;
        let n = self.order();
        let mut outputs: Vec<(u64, Vec<i128>)> = Vec::new();
        for h2 in 0..g.size() {
            let mut acc = RootSum::<i128>::new(n);
            for (&h, &(m, e)) in &self.phases {
                let shift = 2 * (h as i128 * h2 as i128 % size) as i64 + e;
                acc.add_int(shift, m);
            }
            let reduced = acc.reduced()?;
            if reduced.iter().any(|c| *c != 0) {
                outputs.push((h2, reduced));
            }
        }
        let Some((_, first)) = outputs.first().cloned() else {
            self.phases.clear();
            return Some(());
        };
        let float = |v: &[i128]| {
            v.iter().enumerate().fold(num_complex::Complex64::new(0.0, 0.0), |acc, (j, c)| {
                acc + num_complex::Complex64::from_polar(*c as f64, std::f64::consts::TAU * j as f64 / n as f64)
            })
        };
        let f0 = float(&first);
        let mut phases = BTreeMap::new();
        for (h2, v) in &outputs {
            let ratio = float(v) / f0;
            let m = ratio.norm().round() as i64;
            if m == 0 || (ratio.norm() - m as f64).abs() > 1e-6 {
                return None;
            }
            let e = (ratio.arg() / std::f64::consts::TAU * n as f64).round() as i64;
            // exact check: m ζ^e · first == v
            let mut acc = RootSum::<i128>::new(n);
            for (j, c) in first.iter().enumerate() {
                if *c != 0 {
                    acc.add_root(j as i64 + e, &(c * m as i128))?;
                }
            }
            for (j, c) in v.iter().enumerate() {
                acc.add_root(j as i64, &-c)?;
            }
            if !acc.vanishes() {
                return None;
            }
            phases.insert(*h2, (m, e.rem_euclid(n as i64)));
        }
        let lead = CycNumber::from_power_basis(
            n,
            first
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(j, c)| (j as u32, num_rational::BigRational::from_integer((*c).into()))),
        );
        self.scale = &(&self.scale * &s_scalar(g.c)) * &lead;
        self.phases = phases;
        Some(())
    }

    fn to_vector(&self) -> DiscVector {
        let mut out = DiscVector::zero(self.group);
        for (&h, &(m, e)) in &self.phases {
            out.set(h as i64, self.scale.mul_root(e, self.order()).scale_int(m));
        }
        out
    }
}

/// A word in the generators, applied right to left as written (`"ST"` means
/// T first, then S).
fn apply_word(group: DiscGroup, h: i64, word: &str) -> DiscVector {
    let mut pv = PhaseVector::basis(group, h);
    let mut ok = true;
    for g in word.chars().rev() {
        match g {
            'T' => pv.apply_t(),
            'S' => {
                if pv.apply_s().is_none() {
                    ok = false;
                    break;
                }
            }
            _ => panic!("unknown generator {g}"),
        }
    }
    if ok {
        return pv.to_vector();
    }
    let mut v = DiscVector::basis(group, h);
    for g in word.chars().rev() {
        v = if g == 'T' { rho_t_apply(&v) } else { rho_s_apply(&v) };
    }
    v
}

/// Applies ρ of a word in {S, T} to 𝔢_h.
pub fn rho_word_basis(group: DiscGroup, word: &str, h: i64) -> DiscVector {
    apply_word(group, h, word)
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCounterexample {
    pub h: u64,
    pub lhs: Vec<(u64, CycNumber)>,
    pub rhs: Vec<(u64, CycNumber)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub relation: String,
    pub status: String,
    pub instances_checked: u64,
    pub counterexample: Option<RelationCounterexample>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

fn check_relation(
    c: u64,
    relation: &str,
    lhs: impl Fn(DiscGroup, i64) -> DiscVector,
    rhs: impl Fn(DiscGroup, i64) -> DiscVector,
) -> Result<RelationReport> {
    let g = DiscGroup::new(c)?;
    let mut counterexample = None;
    for h in 0..g.size() {
        let (l, r) = (lhs(g, h as i64), rhs(g, h as i64));
        if l != r {
            counterexample = Some(RelationCounterexample {
                h,
                lhs: l.entries().map(|(k, x)| (k, x.clone())).collect(),
                rhs: r.entries().map(|(k, x)| (k, x.clone())).collect(),
            });
            break;
        }
    }
    Ok(RelationReport {
        relation: relation.to_string(),
        status: if counterexample.is_none() { "pass" } else { "fail" }.into(),
        instances_checked: g.size(),
        counterexample,
    })
}

/// ρ(S)² 𝔢_h = i 𝔢_{−h} for every h.
pub fn check_s_squared(c: u64) -> Result<RelationReport> {
    check_relation(
        c,
        "S^2 = i * (h -> -h)",
        |g, h| rho_word_basis(g, "SS", h),
        |g, h| DiscVector::basis(g, -h).scale(&CycNumber::i()),
    )
}

/// ρ(S)⁴ = −1 on every basis vector.
pub fn check_s_fourth(c: u64) -> Result<RelationReport> {
    check_relation(
        c,
        "S^4 = -1",
        |g, h| rho_word_basis(g, "SSSS", h),
        |g, h| DiscVector::basis(g, h).scale(&CycNumber::from_integer(-1)),
    )
}

/// (ρ(S)ρ(T))³ = ρ(S)² on every basis vector.
pub fn check_st_cubed(c: u64) -> Result<RelationReport> {
    check_relation(
        c,
        "(ST)^3 = S^2",
        |g, h| rho_word_basis(g, "STSTST", h),
        |g, h| rho_word_basis(g, "SS", h),
    )
}

pub fn check_all_relations(c: u64) -> Result<Vec<RelationReport>> {
    Ok(vec![check_s_squared(c)?, check_s_fourth(c)?, check_st_cubed(c)?])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(c: u64) -> DiscGroup {
        DiscGroup::new(c).unwrap()
    }

    #[test]
    fn t_on_basis() {
        let v = rho_t_apply(&DiscVector::basis(g(1), 1));
        assert_eq!(v.get(1), CycNumber::root_of_unity(-1, 24));
        let v0 = rho_t_apply(&DiscVector::basis(g(5), 0));
        assert_eq!(v0, DiscVector::basis(g(5), 0));
    }

    #[test]
    fn t_has_order_dividing_24c2() {
        let grp = g(5);
        for h in [1, 7, 299] {
            let mut v = DiscVector::basis(grp, h);
            for _ in 0..2 * grp.size() {
                v = rho_t_apply(&v);
            }
            assert_eq!(v, DiscVector::basis(grp, h));
        }
    }

    #[test]
    fn s_squared_single_example() {
        let grp = g(5);
        let v = rho_s_apply(&rho_s_apply(&DiscVector::basis(grp, 7)));
        assert_eq!(v, DiscVector::basis(grp, -7).scale(&CycNumber::i()));
    }

    #[test]
    fn phase_path_matches_generic_path() {
        let grp = g(1);
        for h in 0..12 {
            let mut generic = DiscVector::basis(grp, h);
            for ch in "STSTS".chars().rev() {
                generic = if ch == 'T' { rho_t_apply(&generic) } else { rho_s_apply(&generic) };
            }
            assert_eq!(rho_word_basis(grp, "STSTS", h), generic, "h = {h}");
        }
    }

    #[test]
    fn relations_level_one() {
        for r in check_all_relations(1).unwrap() {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn relations_level_five() {
        for r in check_all_relations(5).unwrap() {
            assert!(r.passed(), "{}", r.relation);
            assert_eq!(r.instances_checked, 300);
        }
    }

    #[test]
    fn unitarity_level_five() {
        let grp = g(5);
        let mut v = DiscVector::zero(grp);
        v.set(3, CycNumber::from_integer(2));
        v.set(41, CycNumber::root_of_unity(1, 5));
        let mut w = DiscVector::zero(grp);
        w.set(41, CycNumber::from_integer(-1));
        w.set(100, CycNumber::root_of_unity(2, 3));
        let lhs = rho_s_apply(&v).inner(&rho_s_apply(&w));
        assert_eq!(lhs, v.inner(&w));
        let lhs = rho_t_apply(&v).inner(&rho_t_apply(&w));
        assert_eq!(lhs, v.inner(&w));
    }
}
