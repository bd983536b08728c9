//! Numerical recovery of the coefficients at prime level p.
//!
//! The T-relations fix which (h, a, b) can carry a nonzero coefficient and tie
//! the coefficients along each T-orbit to one free value. The S-relations then
//! couple all orbits. The system is assembled over complex doubles, the
//! T-orbits are eliminated by an explicit parametrization, and the nullspace of
//! the remaining S-system is read off a Hermitian eigendecomposition of its
//! Gram matrix.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclotomic::{gcd_u64, CycNumber};
use crate::error::{Error, Result};
use crate::theorem::{
    alpha_scaled, alpha_witness, beta_scaled, beta_witness, build_table, Kind, Level,
};

/// e(num/den) as a complex double, reducing the fraction first.
fn phase(num: i64, den: i64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * num.rem_euclid(den) as f64 / den as f64)
}

fn check_prime(p: u64) -> Result<Level> {
    let prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0);
    if !prime || p < 5 {
        return Err(Error::NotAdmissiblePrime(p));
    }
    Level::new(p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Unknown {
    pub kind: Kind,
    pub h: i64,
    pub a: u64,
    pub b: u64,
}

/// Exponent (over 24p²) of the α T-multiplier at (h, a); independent of b.
fn alpha_t_exp(p: i64, h: i64, a: i64) -> i64 {
    h * h + 60 * a * p - 36 * a * a - p * p
}

/// Exponent (over 24p²) of the β T-multiplier taking (a, b) to ([a−b], b).
fn beta_t_exp(p: i64, h: i64, a: i64, b: i64) -> i64 {
    let mut e = h * h + 36 * b * b - p * p;
    if a < b {
        e += 12 * p * p - 72 * b * p;
    }
    e
}

/// Accumulated β exponents along a → [a−b] starting at a = 0; entry m belongs
/// to a = [−mb]_p, and entry p closes the cycle.
fn beta_cycle(p: i64, h: i64, b: i64) -> Vec<(i64, i64)> {
    let n = 24 * p * p;
    let mut out = Vec::with_capacity(p as usize + 1);
    let (mut a, mut acc) = (0, 0);
    for _ in 0..=p {
        out.push((a, acc));
        acc = (acc + beta_t_exp(p, h, a, b)).rem_euclid(n);
        a = (a - b).rem_euclid(p);
    }
    out
}

/// α at (h, a) survives the T-orbit: p·multiplier ≡ 0, or multiplier ≡ 0 at a = 0.
fn alpha_admissible(p: i64, h: i64, a: i64) -> bool {
    let n = 24 * p * p;
    let e = alpha_t_exp(p, h, a);
    if a == 0 {
        e.rem_euclid(n) == 0
    } else {
        (p * e).rem_euclid(n) == 0
    }
}

fn beta_admissible(p: i64, h: i64, b: i64) -> bool {
    let n = 24 * p * p;
    if b == 0 {
        beta_t_exp(p, h, 0, 0).rem_euclid(n) == 0
    } else {
        beta_cycle(p, h, b)[p as usize].1 == 0
    }
}

/// Every (kind, h, a, b) left possibly nonzero by the T-relations, in sorted
/// order. Entries whose orbit multiplier is a nontrivial root of unity are
/// forced to zero and omitted.
pub fn support_constraints(p: u64) -> Result<Vec<Unknown>> {
    let lv = check_prime(p)?;
    let pi = p as i64;
    let mut out = Vec::new();
    for h in 0..lv.size() {
        for a in 0..p {
            if alpha_admissible(pi, h, a as i64) {
                let bs = if a == 0 { 1 } else { 0 };
                out.extend((bs..p).map(|b| Unknown { kind: Kind::Alpha, h, a, b }));
            }
        }
        for b in 0..p {
            if beta_admissible(pi, h, b as i64) {
                let a0 = if b == 0 { 1 } else { 0 };
                out.extend((a0..p).map(|a| Unknown { kind: Kind::Beta, h, a, b }));
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct SupportReport {
    pub p: u64,
    pub admissible: usize,
    pub table_entries: usize,
    /// table entries missing from the admissible set
    pub missing: Vec<Unknown>,
    /// admissible entries outside the table whose value is not a vanishing sine
    pub unexplained: Vec<Unknown>,
    /// admissible entries outside the table at a = 0 (α) or b = 0 (β) with p | k
    pub vanishing_sine: usize,
    /// a ≠ 0 (α) / b ≠ 0 (β): the sign of ±6a is unique and the entry is h = ±6a + pk
    pub witness_failures: Vec<Unknown>,
}

impl SupportReport {
    pub fn passed(&self) -> bool {
        self.missing.is_empty() && self.unexplained.is_empty() && self.witness_failures.is_empty()
    }
}

/// Compares the admissible set with the nonzero support of the theorem table.
pub fn compare_support(p: u64) -> Result<SupportReport> {
    let adm = support_constraints(p)?;
    let table = build_table(p)?;
    let lv = table.level();
    let pi = p as i64;
    let set: std::collections::HashSet<Unknown> = adm.iter().copied().collect();
    let mut missing = Vec::new();
    let mut table_entries = 0;
    for kind in [Kind::Alpha, Kind::Beta] {
        for e in table.entries(kind) {
            table_entries += 1;
            let u = Unknown { kind, h: e.h, a: e.a, b: e.b };
            if !set.contains(&u) {
                missing.push(u);
            }
        }
    }
    let mut unexplained = Vec::new();
    let mut witness_failures = Vec::new();
    let mut vanishing_sine = 0;
    for u in &adm {
        let (w, key) = match u.kind {
            Kind::Alpha => (alpha_witness(&lv, u.h, u.a), u.a),
            Kind::Beta => (beta_witness(&lv, u.h, u.b), u.b),
        };
        let Some(w) = w else {
            witness_failures.push(*u);
            continue;
        };
        if key == 0 && gcd_u64(w.k.unsigned_abs(), 6) != 1 {
            witness_failures.push(*u);
        }
        if key != 0 {
            // the other sign must fail: h ∓ 6a ≢ 0 mod p
            let other = match u.kind {
                Kind::Alpha => u.h + 6 * w.sign * key as i64,
                Kind::Beta => u.h - 6 * w.sign * key as i64,
            };
            if other.rem_euclid(pi) == 0 {
                witness_failures.push(*u);
            }
        }
        if table.get(u.kind, u.h, u.a, u.b).is_some() {
            continue;
        }
        if key == 0 && w.k % pi == 0 {
            vanishing_sine += 1;
        } else {
            unexplained.push(*u);
        }
    }
    Ok(SupportReport {
        p,
        admissible: adm.len(),
        table_entries,
        missing,
        unexplained,
        vanishing_sine,
        witness_failures,
    })
}

/// #{0 ≤ x < m : [−xb]_p < b}, by direct count.
pub fn nu(m: u64, b: u64, p: u64) -> u64 {
    let (b, p) = (b as i64, p as i64);
    (0..m as i64).filter(|x| (-x * b).rem_euclid(p) < b).count() as u64
}

#[derive(Clone, Debug, Serialize)]
pub struct NuFailure {
    pub m: u64,
    pub b: u64,
    pub counted: u64,
    pub closed_form: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct NuReport {
    pub schema_version: u32,
    pub p: u64,
    pub instances_checked: u64,
    pub failures: Vec<NuFailure>,
    /// b = 0: the counted set is empty, outside the range the closed form covers
    pub excluded_b_zero: u64,
}

impl NuReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// ⌊mb/p⌋ + [p ∤ m], and (mb + [−mb]_p)/p, against the count for
/// 1 ≤ b < p and 0 ≤ m ≤ 3p.
pub fn verify_nu(p: u64) -> Result<NuReport> {
    check_prime(p)?;
    let mut failures = Vec::new();
    let mut n = 0;
    for b in 1..p {
        for m in 0..=3 * p {
            n += 1;
            let counted = nu(m, b, p);
            let closed = m * b / p + u64::from(m % p != 0);
            let a = (-((m * b) as i64)).rem_euclid(p as i64) as u64;
            let via_a = (m * b + a) / p;
            // at m = 0 the set is empty while the residue form gives 0 as well
            if counted != closed || counted != via_a {
                failures.push(NuFailure { m, b, counted, closed_form: closed });
            }
        }
    }
    Ok(NuReport {
        schema_version: crate::cli::SCHEMA_VERSION,
        p,
        instances_checked: n,
        failures,
        excluded_b_zero: 3 * p + 1,
    })
}

/// α_h(a,b) from α_h(a,0) by the phase e(b(5 + εk)/2p), for a ≠ 0.
pub fn propagate_alpha(p: u64, h: i64, a: u64, b: u64) -> Result<CycNumber> {
    let lv = check_prime(p)?;
    if a == 0 || a >= p || b >= p {
        return Err(Error::OutOfRange(format!("alpha propagation needs 0 < a < p and 0 <= b < p, got a = {a}, b = {b}")));
    }
    let start = alpha_scaled(&lv, h, a, 0).value(&lv);
    let Some(w) = alpha_witness(&lv, h, a) else {
        return Ok(start);
    };
    Ok(start.mul_root(b as i64 * (5 + w.sign * w.k), 2 * p))
}

/// β_h(a,b) from β_h(0,b), for b ≠ 0. The first value uses the closed phase
/// e(εak/2p − 3ab/p²); the second walks the T-orbit and uses ν(m, b).
pub fn propagate_beta(p: u64, h: i64, a: u64, b: u64) -> Result<(CycNumber, CycNumber)> {
    let lv = check_prime(p)?;
    if b == 0 || a >= p || b >= p {
        return Err(Error::OutOfRange(format!("beta propagation needs 0 <= a < p and 0 < b < p, got a = {a}, b = {b}")));
    }
    let start = beta_scaled(&lv, h, 0, b).value(&lv);
    let Some(w) = beta_witness(&lv, h, b) else {
        return Ok((start.clone(), start));
    };
    let (pi, ai, bi) = (p as i64, a as i64, b as i64);
    let closed = start.mul_root(w.sign * ai * w.k * pi - 6 * ai * bi, 2 * p * p);
    // [−mb]_p = a
    let m = (0..pi).find(|m| (-m * bi).rem_euclid(pi) == ai).expect("b is invertible mod p");
    let v = nu(m as u64, b, p) as i64;
    let e = m * (6 * bi * bi - w.sign * bi * w.k * pi) + v * (pi * pi - 6 * bi * pi);
    let walked = start.mul_root(e, 2 * p * p);
    Ok((closed, walked))
}

#[derive(Clone, Debug, Serialize)]
pub struct PropagationFailure {
    pub kind: Kind,
    pub h: i64,
    pub a: u64,
    pub b: u64,
    pub route: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PropagationReport {
    pub schema_version: u32,
    pub p: u64,
    pub instances_checked: u64,
    pub failures: Vec<PropagationFailure>,
}

impl PropagationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Every α_h(a,b) with a ≠ 0 and every β_h(a,b) with b ≠ 0 on the support of
/// h, rebuilt from the b = 0 (resp. a = 0) value and compared exactly.
pub fn verify_propagation(p: u64) -> Result<PropagationReport> {
    let lv = check_prime(p)?;
    let mut jobs = Vec::new();
    for h in 0..lv.size() {
        for x in 1..p {
            if alpha_witness(&lv, h, x).is_some() {
                jobs.extend((0..p).map(|y| (Kind::Alpha, h, x, y)));
            }
            if beta_witness(&lv, h, x).is_some() {
                jobs.extend((0..p).map(|y| (Kind::Beta, h, y, x)));
            }
        }
    }
    let results: Vec<Result<Vec<PropagationFailure>>> = jobs
        .par_iter()
        .map(|&(kind, h, a, b)| {
            let fail = |route: &str| PropagationFailure { kind, h, a, b, route: route.into() };
            let mut out = Vec::new();
            match kind {
                Kind::Alpha => {
                    if propagate_alpha(p, h, a, b)? != alpha_scaled(&lv, h, a, b).value(&lv) {
                        out.push(fail("phase"));
                    }
                }
                Kind::Beta => {
                    let want = beta_scaled(&lv, h, a, b).value(&lv);
                    let (closed, walked) = propagate_beta(p, h, a, b)?;
                    if closed != want {
                        out.push(fail("closed"));
                    }
                    if walked != want {
                        out.push(fail("nu"));
                    }
                }
            }
            Ok(out)
        })
        .collect();
    let mut failures = Vec::new();
    for r in results {
        failures.extend(r?);
    }
    Ok(PropagationReport {
        schema_version: crate::cli::SCHEMA_VERSION,
        p,
        instances_checked: jobs.len() as u64,
        failures,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowKind {
    AlphaT,
    BetaT,
    S,
    SConverse,
}

#[derive(Clone, Debug)]
pub struct Row {
    pub kind: RowKind,
    pub h: i64,
    pub a: u64,
    pub b: u64,
    /// (unknown index, coefficient)
    pub entries: Vec<(usize, Complex64)>,
}

impl Row {
    pub fn apply(&self, x: &[Complex64]) -> Complex64 {
        self.entries.iter().map(|&(j, c)| c * x[j]).sum()
    }
}

/// The homogeneous T- and S-relations over the admissible unknowns, plus the
/// orbit parametrization that solves the T-rows.
#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    pub p: u64,
    pub unknowns: Vec<Unknown>,
    pub index: HashMap<Unknown, usize>,
    pub rows: Vec<Row>,
    /// unknown j = factor · parameter param_of[j].0
    pub param_of: Vec<(usize, Complex64)>,
    /// the unknown each parameter equals
    pub params: Vec<Unknown>,
}

impl ConstraintSystem {
    pub fn row_count(&self, kind: RowKind) -> usize {
        self.rows.iter().filter(|r| r.kind == kind).count()
    }

    /// Expands a parameter vector to unknown coordinates.
    pub fn expand(&self, params: &[Complex64]) -> Vec<Complex64> {
        self.param_of.iter().map(|&(j, f)| f * params[j]).collect()
    }

    /// max over rows of |row · x|.
    pub fn max_residual(&self, x: &[Complex64]) -> f64 {
        self.rows.par_iter().map(|r| r.apply(x).norm()).reduce(|| 0.0, f64::max)
    }

    /// The theorem's coefficients in unknown coordinates.
    pub fn theorem_vector(&self) -> Vec<Complex64> {
        let lv = Level::new(self.p).expect("valid prime");
        self.unknowns
            .iter()
            .map(|u| match u.kind {
                Kind::Alpha => alpha_scaled(&lv, u.h, u.a, u.b).eval_float(&lv),
                Kind::Beta => beta_scaled(&lv, u.h, u.a, u.b).eval_float(&lv),
            })
            .collect()
    }

    /// The theorem's coefficients at the parameters.
    pub fn theorem_params(&self) -> Vec<Complex64> {
        let full = self.theorem_vector();
        self.params.iter().map(|u| full[self.index[u]]).collect()
    }
}

/// Assembles the system at prime p. S-rows are generated in parallel and
/// concatenated in a fixed order.
pub fn build_system(p: u64) -> Result<ConstraintSystem> {
    let lv = check_prime(p)?;
    let pi = p as i64;
    let n = lv.order();
    let size = lv.size();
    let unknowns = support_constraints(p)?;
    let index: HashMap<Unknown, usize> = unknowns.iter().enumerate().map(|(i, u)| (*u, i)).collect();
    let idx = |kind, h, a, b| index.get(&Unknown { kind, h, a, b }).copied();

    let mut rows = Vec::new();
    let mut params: Vec<Unknown> = Vec::new();
    let mut param_of = vec![(usize::MAX, Complex64::new(0.0, 0.0)); unknowns.len()];
    for u in &unknowns {
        let j = index[u];
        match u.kind {
            Kind::Alpha if u.a != 0 => {
                let ai = u.a as i64;
                let mu = alpha_t_exp(pi, u.h, ai);
                let next = idx(Kind::Alpha, u.h, u.a, (u.a + u.b) % p).expect("orbit closed");
                rows.push(Row {
                    kind: RowKind::AlphaT,
                    h: u.h,
                    a: u.a,
                    b: u.b,
                    entries: vec![(next, Complex64::new(1.0, 0.0)), (j, -phase(mu, n))],
                });
                // b = [m·a]_p sits m steps along the orbit from b = 0
                if u.b == 0 {
                    let base = params.len();
                    params.push(*u);
                    for m in 0..pi {
                        let b = (m * ai).rem_euclid(pi) as u64;
                        let t = idx(Kind::Alpha, u.h, u.a, b).expect("orbit closed");
                        param_of[t] = (base, phase(m * mu, n));
                    }
                }
            }
            Kind::Beta if u.b != 0 => {
                let (ai, bi) = (u.a as i64, u.b as i64);
                let next = idx(Kind::Beta, u.h, (u.a + p - u.b) % p, u.b).expect("orbit closed");
                rows.push(Row {
                    kind: RowKind::BetaT,
                    h: u.h,
                    a: u.a,
                    b: u.b,
                    entries: vec![(next, Complex64::new(1.0, 0.0)), (j, -phase(beta_t_exp(pi, u.h, ai, bi), n))],
                });
                if u.a == 0 {
                    let base = params.len();
                    params.push(*u);
                    for &(a, acc) in &beta_cycle(pi, u.h, bi)[..p as usize] {
                        let t = idx(Kind::Beta, u.h, a as u64, u.b).expect("orbit closed");
                        param_of[t] = (base, phase(acc, n));
                    }
                }
            }
            _ => {
                // fixed points: the T-multiplier is 1, so the row is trivial
                param_of[j] = (params.len(), Complex64::new(1.0, 0.0));
                params.push(*u);
            }
        }
    }
    debug_assert!(param_of.iter().all(|(j, _)| *j != usize::MAX));

    // (i/(p√12)) Σ_{h′} e(hh′/12p²) x_{h′}(a,b) − y_h(a,b) = 0
    let mut by_pair: BTreeMap<(Kind, u64, u64), Vec<(i64, usize)>> = BTreeMap::new();
    for (j, u) in unknowns.iter().enumerate() {
        by_pair.entry((u.kind, u.a, u.b)).or_default().push((u.h, j));
    }
    let scale = Complex64::new(0.0, 1.0) / (pi as f64 * 12f64.sqrt());
    let empty = Vec::new();
    let pairs: Vec<(u64, u64)> = (0..p).flat_map(|a| (0..p).map(move |b| (a, b))).filter(|&ab| ab != (0, 0)).collect();
    let s_rows: Vec<Vec<Row>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let mut out = Vec::new();
            for (kind, src, dst) in [
                (RowKind::S, Kind::Alpha, Kind::Beta),
                (RowKind::SConverse, Kind::Beta, Kind::Alpha),
            ] {
                let source = by_pair.get(&(src, a, b)).unwrap_or(&empty);
                for h in 0..size {
                    let mut entries: Vec<(usize, Complex64)> =
                        source.iter().map(|&(h2, j)| (j, scale * phase(h * h2 % size, size))).collect();
                    if let Some(t) = idx(dst, h, a, b) {
                        entries.push((t, Complex64::new(-1.0, 0.0)));
                    }
                    if !entries.is_empty() {
                        out.push(Row { kind, h, a, b, entries });
                    }
                }
            }
            out
        })
        .collect();
    rows.extend(s_rows.into_iter().flatten());
    Ok(ConstraintSystem { p, unknowns, index, rows, param_of, params })
}

/// Orthonormal basis of the solution space, in parameter and unknown
/// coordinates.
#[derive(Clone, Debug)]
pub struct Nullspace {
    /// columns: orthonormal basis in parameter coordinates
    pub params: DMatrix<Complex64>,
    /// unit-norm solutions in unknown coordinates
    pub vectors: Vec<Vec<Complex64>>,
    /// relative singular values √(λ/λ_max), ascending
    pub singular_values: Vec<f64>,
    pub tol: f64,
}

impl Nullspace {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// ‖x − QQ*x‖/‖x‖ for a parameter vector x.
    pub fn membership_residual(&self, x: &[Complex64]) -> f64 {
        let x = DVector::from_column_slice(x);
        let norm = x.norm();
        if norm == 0.0 {
            return 0.0;
        }
        let proj = &self.params * (self.params.adjoint() * &x);
        (x - proj).norm() / norm
    }

    /// Largest kept and smallest discarded relative singular value.
    pub fn gap(&self) -> (Option<f64>, Option<f64>) {
        let d = self.dim();
        (
            d.checked_sub(1).map(|i| self.singular_values[i]),
            self.singular_values.get(d).copied(),
        )
    }
}

/// Solves the S-rows after substituting the T-orbit parametrization. The
/// Gram matrix G = M*M of the reduced system is diagonalized; eigenvectors
/// with √(λ/λ_max) ≤ tol span the nullspace. Each returned unknown-space
/// vector is rescaled to unit norm.
pub fn solve_nullspace(sys: &ConstraintSystem, tol: f64) -> Result<Nullspace> {
    if !(tol > 0.0) {
        return Err(Error::OutOfRange(format!("tolerance must be positive, got {tol}")));
    }
    let np = sys.params.len();
    if np == 0 {
        return Err(Error::LinearAlgebra("system has no unknowns".into()));
    }
    let reduced: Vec<Vec<(usize, Complex64)>> = sys
        .rows
        .iter()
        .filter(|r| matches!(r.kind, RowKind::S | RowKind::SConverse))
        .map(|r| {
            let mut m: BTreeMap<usize, Complex64> = BTreeMap::new();
            for &(j, c) in &r.entries {
                let (q, f) = sys.param_of[j];
                *m.entry(q).or_default() += c * f;
            }
            m.into_iter().collect()
        })
        .collect();
    let mut g = DMatrix::<Complex64>::zeros(np, np);
    for row in &reduced {
        for &(i, ci) in row {
            let ci = ci.conj();
            for &(j, cj) in row {
                g[(i, j)] += ci * cj;
            }
        }
    }
    if g.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::LinearAlgebra("non-finite Gram matrix".into()));
    }
    let eig = nalgebra::SymmetricEigen::try_new(g, f64::EPSILON, 0)
        .ok_or_else(|| Error::LinearAlgebra("eigendecomposition did not converge".into()))?;
    let lmax = eig.eigenvalues.iter().cloned().fold(0.0, f64::max);
    let mut order: Vec<usize> = (0..np).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]).then(i.cmp(&j)));
    let rel = |i: usize| {
        if lmax > 0.0 {
            (eig.eigenvalues[i].max(0.0) / lmax).sqrt()
        } else {
            0.0
        }
    };
    let singular_values: Vec<f64> = order.iter().map(|&i| rel(i)).collect();
    let kept: Vec<usize> = order.iter().copied().filter(|&i| rel(i) <= tol).collect();
    let mut basis = DMatrix::<Complex64>::zeros(np, kept.len());
    let mut vectors = Vec::with_capacity(kept.len());
    for (col, &i) in kept.iter().enumerate() {
        let mut v = eig.eigenvectors.column(i).into_owned();
        // fix the phase: largest entry real and positive, so the basis is reproducible
        let (_, pivot) = v.iter().enumerate().fold((0.0, Complex64::new(1.0, 0.0)), |best, (_, z)| {
            if z.norm() > best.0 + 1e-12 { (z.norm(), *z) } else { best }
        });
        v *= pivot.conj() / pivot.norm();
        basis.set_column(col, &v);
        let full = sys.expand(v.as_slice());
        let norm = full.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        vectors.push(full.into_iter().map(|z| z / norm).collect());
    }
    Ok(Nullspace { params: basis, vectors, singular_values, tol })
}

/// Row-residual tolerance for the theorem vector.
pub const ROW_TOL: f64 = 1e-10;
/// Projection-distance tolerance for subspace membership.
pub const MEMBERSHIP_TOL: f64 = 1e-8;
/// Relative singular value below which a direction counts as null.
pub const NULL_TOL: f64 = 1e-8;

#[derive(Clone, Debug, Serialize)]
pub struct DiscoveryReport {
    pub schema_version: u32,
    pub p: u64,
    pub unknowns: usize,
    pub alpha_unknowns: usize,
    pub beta_unknowns: usize,
    pub parameters: usize,
    pub rows: usize,
    pub t_rows: usize,
    pub s_rows: usize,
    pub null_tol: f64,
    pub nullspace_dim: usize,
    /// largest relative singular value kept as null
    pub largest_null_singular_value: Option<f64>,
    /// smallest relative singular value rejected
    pub smallest_nonnull_singular_value: Option<f64>,
    pub theorem_residual: f64,
    pub theorem_residual_tol: f64,
    pub membership_residual: f64,
    pub membership_tol: f64,
    /// max row residual over the returned basis vectors
    pub basis_residual: f64,
    pub support: SupportReport,
    pub nu: NuReport,
    pub propagation: PropagationReport,
    pub failures: Vec<String>,
}

impl DiscoveryReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs every discovery check at p: supports, ν, propagation, the system and
/// its nullspace. `tol` bounds the theorem vector's row residual.
pub fn discover(p: u64, tol: f64) -> Result<DiscoveryReport> {
    let support = compare_support(p)?;
    let nu = verify_nu(p)?;
    let propagation = verify_propagation(p)?;
    let sys = build_system(p)?;
    let null = solve_nullspace(&sys, NULL_TOL)?;

    let x = sys.theorem_vector();
    let theorem_residual = sys.max_residual(&x);
    let xp = sys.theorem_params();
    // the parametrization must reproduce the theorem vector
    let expanded = sys.expand(&xp);
    let param_error = x.iter().zip(&expanded).map(|(u, v)| (u - v).norm()).fold(0.0, f64::max);
    let membership_residual = null.membership_residual(&xp);
    let basis_residual = null.vectors.iter().map(|v| sys.max_residual(v)).fold(0.0, f64::max);
    let (kept, rejected) = null.gap();

    let mut failures = Vec::new();
    if !support.passed() {
        failures.push("support".to_string());
    }
    if !nu.passed() {
        failures.push("nu".to_string());
    }
    if !propagation.passed() {
        failures.push("propagation".to_string());
    }
    if !(theorem_residual < tol) || !(param_error < tol) {
        failures.push("theorem_residual".to_string());
    }
    if !(membership_residual < MEMBERSHIP_TOL) {
        failures.push("membership_residual".to_string());
    }
    let count = |k| sys.unknowns.iter().filter(|u| u.kind == k).count();
    Ok(DiscoveryReport {
        schema_version: crate::cli::SCHEMA_VERSION,
        p,
        unknowns: sys.unknowns.len(),
        alpha_unknowns: count(Kind::Alpha),
        beta_unknowns: count(Kind::Beta),
        parameters: sys.params.len(),
        rows: sys.rows.len(),
        t_rows: sys.row_count(RowKind::AlphaT) + sys.row_count(RowKind::BetaT),
        s_rows: sys.row_count(RowKind::S) + sys.row_count(RowKind::SConverse),
        null_tol: NULL_TOL,
        nullspace_dim: null.dim(),
        largest_null_singular_value: kept,
        smallest_nonnull_singular_value: rejected,
        theorem_residual,
        theorem_residual_tol: tol,
        membership_residual,
        membership_tol: MEMBERSHIP_TOL,
        basis_residual,
        support,
        nu,
        propagation,
        failures,
    })
}
