//! Assembly of the holomorphic components of H_c and the exponent grading
//! check: component h must only carry exponents e with e + h²/24c² ∈ ℤ.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::Serialize;

use crate::cyclotomic::{Coeff, CycNumber, RootSum, SmallRational};
use crate::error::Result;
use crate::qseries::{exp, Exp, QSeries};
use crate::special::{holo_m, holo_n, LevelParams};

use super::{CoeffTable, Kind, Level};

/// Holomorphic parts of 𝓜 and 𝓝 for every (a, b) that appears in a table,
/// computed once and shared across components.
pub struct HcAssembler<'t> {
    table: &'t CoeffTable,
    trunc: Exp,
    m: BTreeMap<(u64, u64), QSeries>,
    n: BTreeMap<(u64, u64), QSeries>,
}

impl<'t> HcAssembler<'t> {
    pub fn new(table: &'t CoeffTable, trunc: Exp) -> Result<Self> {
        let c = table.c();
        let mut m = BTreeMap::new();
        let mut n = BTreeMap::new();
        for e in table.entries(Kind::Alpha) {
            if !m.contains_key(&(e.a, e.b)) {
                m.insert((e.a, e.b), holo_m(&LevelParams::new(c, e.a, e.b)?, trunc)?);
            }
        }
        for e in table.entries(Kind::Beta) {
            if !n.contains_key(&(e.a, e.b)) {
                n.insert((e.a, e.b), holo_n(&LevelParams::new(c, e.a, e.b)?, trunc)?);
            }
        }
        Ok(Self { table, trunc, m, n })
    }

    pub fn trunc(&self) -> Exp {
        self.trunc
    }

    fn accumulate<T: Coeff>(&self, h: i64) -> Option<BTreeMap<Exp, RootSum<T>>> {
        let lv = self.table.level();
        let order = lv.order() as u64;
        let mut out: BTreeMap<Exp, RootSum<T>> = BTreeMap::new();
        let parts = [(Kind::Alpha, &self.m), (Kind::Beta, &self.n)];
        for (kind, series) in parts {
            for e in self.table.at(kind, h) {
                let s = &series[&(e.a, e.b)];
                for (x, coeff) in s.terms() {
                    let acc = out.entry(x).or_insert_with(|| RootSum::new(order));
                    for &(k, shift) in &e.scaled.terms {
                        let k = T::from_big(&BigRational::from_integer(k.into()))?;
                        acc.add_cyc(coeff, shift, &k)?;
                    }
                }
            }
        }
        Some(out)
    }

    /// Component h scaled by 2 sin(π/c): exponent ↦ exact coefficient.
    fn scaled_component(&self, h: i64) -> BTreeMap<Exp, CycNumber> {
        let reduce = |m: BTreeMap<Exp, RootSum<SmallRational>>| -> Option<BTreeMap<Exp, CycNumber>> {
            let mut out = BTreeMap::new();
            for (e, acc) in m {
                let x = acc.to_cyc()?;
                if !x.is_zero() {
                    out.insert(e, x);
                }
            }
            Some(out)
        };
        self.accumulate::<SmallRational>(h)
            .and_then(reduce)
            .unwrap_or_else(|| {
                let big = self.accumulate::<BigRational>(h).expect("big arithmetic");
                big.into_iter()
                    .map(|(e, acc)| (e, acc.to_cyc().expect("big arithmetic")))
                    .filter(|(_, x)| !x.is_zero())
                    .collect()
            })
    }

    /// Exponents of component h whose coefficient survives cancellation.
    pub fn surviving_exponents(&self, h: i64) -> Vec<Exp> {
        self.scaled_component(h).into_keys().collect()
    }

    /// Σ_{a,b} α_h(a,b)·(holomorphic 𝓜) + β_h(a,b)·(holomorphic 𝓝).
    pub fn component(&self, h: i64) -> QSeries {
        let terms = self.scaled_component(h);
        if terms.is_empty() {
            return QSeries::zero(Some(self.trunc));
        }
        let inv = self.table.level().inv_two_sin().expect("nonempty table has c > 1");
        QSeries::from_terms(terms.into_iter().map(|(e, x)| (e, &x * &inv)), Some(self.trunc))
    }
}

/// Component h of the holomorphic part of H_c below q^trunc.
pub fn assemble_hc_component(table: &CoeffTable, h: i64, trunc: Exp) -> Result<QSeries> {
    Ok(HcAssembler::new(table, trunc)?.component(h))
}

#[derive(Clone, Debug, Serialize)]
pub struct GradingComponent {
    pub h: i64,
    /// leading exponent, as "num/den"
    pub leading: Option<String>,
    pub surviving_terms: usize,
    /// exponents e with e + h²/24c² ∉ ℤ
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GradingReport {
    pub schema_version: u32,
    pub identity: String,
    pub c: u64,
    pub window: i64,
    pub components_checked: u64,
    pub terms_checked: u64,
    pub components: Vec<GradingComponent>,
    pub failures: usize,
}

impl GradingReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// For every supported h, the exponents of component h within `window` of its
/// leading exponent all lie in −h²/24c² + ℤ. The pieces 𝓜(a,b), 𝓝(a,b) carry
/// other exponents individually; they cancel only in the sum over (a, b).
pub fn grading_check(table: &CoeffTable, window: i64) -> Result<GradingReport> {
    let lv: Level = table.level();
    let n = lv.order();
    let hs = table.support();
    // the leading exponents sit near −1/24; grow the truncation if needed
    let mut trunc = exp(window + 1, 1);
    let (asm, leads) = loop {
        let asm = HcAssembler::new(table, trunc)?;
        let leads: Vec<Option<Exp>> = hs.iter().map(|&h| asm.surviving_exponents(h).first().copied()).collect();
        let need = leads.iter().flatten().map(|l| *l + window).max();
        match need {
            Some(t) if t > trunc => trunc = exp(t.ceil().to_integer() + 1, 1),
            _ => break (asm, leads),
        }
    };
    let mut components = Vec::new();
    let mut terms_checked = 0;
    let mut failures = 0;
    for (&h, lead) in hs.iter().zip(leads) {
        let grade = exp((h * h) % n, n);
        let exps = asm.surviving_exponents(h);
        let in_window: Vec<Exp> = match lead {
            Some(l) => exps.into_iter().filter(|e| *e < l + window).collect(),
            None => Vec::new(),
        };
        terms_checked += in_window.len() as u64;
        let violations: Vec<String> = in_window
            .iter()
            .filter(|e| !(**e + grade).is_integer())
            .map(|e| e.to_string())
            .collect();
        failures += violations.len();
        components.push(GradingComponent {
            h,
            leading: lead.map(|l| l.to_string()),
            surviving_terms: in_window.len(),
            violations,
        });
    }
    Ok(GradingReport {
        schema_version: crate::cli::SCHEMA_VERSION,
        identity: "grading".into(),
        c: lv.c(),
        window,
        components_checked: hs.len() as u64,
        terms_checked,
        components,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theorem::build_table;

    #[test]
    fn grading_level_five() {
        let t = build_table(5).unwrap();
        let r = grading_check(&t, 5).unwrap();
        assert!(r.passed(), "{:?}", r.components.iter().find(|c| !c.violations.is_empty()));
        assert!(r.terms_checked > 0);
    }

    #[test]
    fn single_pieces_are_not_graded() {
        // one 𝓜 piece alone has exponents outside −h²/600 + ℤ
        let p = LevelParams::new(5, 1, 2).unwrap();
        let s = holo_m(&p, exp(3, 1)).unwrap();
        let t = build_table(5).unwrap();
        let e = t.entries(Kind::Alpha).find(|e| e.a == 1 && e.b == 2).unwrap();
        let grade = exp((e.h * e.h) % 600, 600);
        assert!(s.terms().any(|(x, _)| !(x + grade).is_integer()));
    }

    #[test]
    fn component_zero_vanishes() {
        let t = build_table(5).unwrap();
        assert!(assemble_hc_component(&t, 0, exp(2, 1)).unwrap().is_zero());
    }
}
