use num_bigint::BigUint;
use subgrowth::asymptotic::{
    self, g_sandwich_check, lemma45_bound_check, lemma46_quantity, lemma58_quantity, ratio_to_main_term, MainTerm,
};
use subgrowth::growth::{
    self, census_ratio, free_product_hom_sequence, gelman_series, hall_counts, max_count_coprime, semidirect_count,
    shalev_upper_bound_series, subgroup_count_z_inv_k, z_hom_sequence, BsParams, GroupDescriptor, Method,
    OrderDividingCounts,
};
use subgrowth::permgrp::{monte_carlo_generation, oracle_counts, oracle_free_product, ORACLE_MAX_DEGREE};
use subgrowth::{Error, LogValue, Result};

use crate::output::{Cell, Table};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum GroupArg {
    Bs,
    Freeproduct,
    Z,
    Zinvk,
    Cyclic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum MethodArg {
    Gelman,
    Semidirect,
    Hall,
    Oracle,
    ClosedForm,
    Recurrence,
    Bound,
    Asymptotic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum KindArg {
    Subgroups,
    Maximal,
    Transitive,
    Primitive,
    Homs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum LemmaArg {
    All,
    Lemma45,
    Lemma46,
    DivisorSum,
    Sandwich,
    Lemma58,
    Census,
}

/// Group selection as given on the command line.
#[derive(Clone, Debug, clap::Args)]
pub struct GroupSpec {
    #[arg(long, value_enum)]
    pub group: GroupArg,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<i64>,
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<i64>,
    #[arg(long, value_enum, default_value = "subgroups")]
    pub kind: KindArg,
}

/// Inclusive index set: `a..b`, `a..=b`, a single `n`, or a list `n1,n2,...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSet(pub Vec<u64>);

impl std::str::FromStr for IndexSet {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("bad index {t:?}: {e}"));
        let values: Vec<u64> = if let Some((lo, hi)) = s.split_once("..") {
            let (lo, hi) = (parse(lo)?, parse(hi.trim_start_matches('='))?);
            if hi < lo {
                return Err(format!("empty range {s}"));
            }
            (lo..=hi).collect()
        } else {
            s.split(',').map(parse).collect::<std::result::Result<_, _>>()?
        };
        if values.is_empty() || values.contains(&0) {
            return Err("indices must be >= 1".into());
        }
        if values.windows(2).any(|w| w[1] <= w[0]) {
            return Err("indices must be strictly increasing".into());
        }
        Ok(IndexSet(values))
    }
}

impl IndexSet {
    pub fn max(&self) -> u64 {
        *self.0.last().expect("non-empty")
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

enum Resolved {
    Bs(BsParams),
    FreeProduct(u64),
    Z,
    ZInvK(i64),
    Cyclic(u64),
}

impl Resolved {
    fn from_spec(spec: &GroupSpec) -> Result<Self> {
        let need_m = || spec.m.ok_or_else(|| invalid("--m is required for this group"));
        Ok(match spec.group {
            GroupArg::Bs => match (spec.a, spec.b) {
                (Some(a), Some(b)) => Resolved::Bs(BsParams::new(a, b)?),
                _ => return Err(invalid("--a and --b are required for --group bs")),
            },
            GroupArg::Freeproduct => {
                let m = need_m()?;
                if m < 1 {
                    return Err(invalid("--m must be >= 1"));
                }
                Resolved::FreeProduct(m)
            }
            GroupArg::Z => Resolved::Z,
            GroupArg::Zinvk => Resolved::ZInvK(spec.k.ok_or_else(|| invalid("--k is required for --group zinvk"))?),
            GroupArg::Cyclic => Resolved::Cyclic(need_m()?),
        })
    }

    fn descriptor(&self) -> GroupDescriptor {
        match *self {
            Resolved::Bs(p) => GroupDescriptor::Bs(p),
            Resolved::FreeProduct(m) => GroupDescriptor::FreeProductZmodM(m),
            Resolved::Z => GroupDescriptor::Z,
            Resolved::ZInvK(k) => GroupDescriptor::ZInvK(k),
            Resolved::Cyclic(m) => GroupDescriptor::Cyclic(m),
        }
    }

    /// The order m whose main term describes this group's growth.
    fn main_term(&self, kind: KindArg) -> Result<(u64, MainTerm)> {
        let (m, term) = match (self, kind) {
            (Resolved::Bs(p), KindArg::Subgroups | KindArg::Maximal) if !p.is_coprime() => (p.m(), MainTerm::G),
            (Resolved::FreeProduct(m), KindArg::Subgroups | KindArg::Maximal) => (*m, MainTerm::G),
            (Resolved::Cyclic(m), KindArg::Homs) => (*m, MainTerm::F),
            _ => {
                return Err(invalid(
                    "no asymptotic main term for this group/kind (needs gcd(a,b) > 1, freeproduct, or cyclic homs)",
                ))
            }
        };
        if m < 2 {
            return Err(invalid("asymptotic main term needs m >= 2"));
        }
        Ok((m, term))
    }
}

fn method_label(method: Method) -> String {
    serde_json::to_value(method)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

fn oracle_field(kind: KindArg, c: subgrowth::OracleCounts) -> BigUint {
    match kind {
        KindArg::Subgroups => c.subgroups,
        KindArg::Maximal => c.maximal,
        KindArg::Transitive => c.transitive,
        KindArg::Primitive => c.primitive,
        KindArg::Homs => c.total,
    }
}

fn check_oracle_range(ns: &IndexSet) -> Result<()> {
    if ns.max() > ORACLE_MAX_DEGREE as u64 {
        return Err(invalid(format!("oracle degree is capped at {ORACLE_MAX_DEGREE}")));
    }
    Ok(())
}

fn unsupported(group: &Resolved, method: MethodArg, kind: KindArg) -> Error {
    invalid(format!(
        "method {method:?} with kind {kind:?} is not available for {:?}",
        group.descriptor()
    ))
}

/// Exact values for every requested index, plus the method that produced them.
fn exact_values(group: &Resolved, method: MethodArg, kind: KindArg, ns: &IndexSet) -> Result<(Vec<BigUint>, Method)> {
    let n_max = ns.max();
    let pick = |series: growth::GrowthSeries| -> Vec<BigUint> {
        ns.0.iter()
            .map(|n| series.get(*n).cloned().expect("series covers range"))
            .collect()
    };
    let hall = |hom: Vec<BigUint>| -> Result<Vec<BigUint>> {
        let (t, a) = hall_counts(&hom, group.descriptor())?;
        Ok(match kind {
            KindArg::Subgroups => pick(a),
            KindArg::Transitive => pick(t),
            KindArg::Homs => ns.0.iter().map(|&n| hom[n as usize].clone()).collect(),
            _ => return Err(unsupported(group, method, kind)),
        })
    };
    let per_n = |f: &dyn Fn(u64) -> Result<BigUint>| -> Result<Vec<BigUint>> { ns.0.iter().map(|&n| f(n)).collect() };

    match (group, method, kind) {
        (Resolved::Bs(p), MethodArg::Gelman, KindArg::Subgroups) => {
            Ok((pick(gelman_series(p, n_max)?), Method::Gelman))
        }
        (Resolved::Bs(p), MethodArg::Gelman | MethodArg::ClosedForm, KindArg::Maximal) => {
            Ok((per_n(&|n| max_count_coprime(p, n))?, Method::ClosedForm))
        }
        (Resolved::Bs(p), MethodArg::Semidirect, KindArg::Subgroups) => {
            Ok((per_n(&|n| semidirect_count(p, n))?, Method::Semidirect))
        }
        (Resolved::Bs(p), MethodArg::Bound, KindArg::Subgroups) => {
            Ok((pick(shalev_upper_bound_series(p, n_max)?), Method::UpperBound))
        }
        (Resolved::Bs(p), MethodArg::Oracle, _) => {
            check_oracle_range(ns)?;
            Ok((
                per_n(&|n| Ok(oracle_field(kind, oracle_counts(p, n as usize)?)))?,
                Method::Oracle,
            ))
        }
        (Resolved::FreeProduct(m), MethodArg::Hall, _) => {
            Ok((hall(free_product_hom_sequence(*m, n_max)?)?, Method::Hall))
        }
        (Resolved::FreeProduct(m), MethodArg::Oracle, _) => {
            check_oracle_range(ns)?;
            Ok((
                per_n(&|n| Ok(oracle_field(kind, oracle_free_product(*m, n as usize)?)))?,
                Method::Oracle,
            ))
        }
        (Resolved::Z, MethodArg::Hall, _) => Ok((hall(z_hom_sequence(n_max))?, Method::Hall)),
        (Resolved::Z, MethodArg::ClosedForm, KindArg::Subgroups) => Ok((
            per_n(&|n| Ok(BigUint::from(growth::subgroup_count_z(n))))?,
            Method::ClosedForm,
        )),
        (Resolved::ZInvK(k), MethodArg::ClosedForm, KindArg::Subgroups) => Ok((
            per_n(&|n| Ok(BigUint::from(subgroup_count_z_inv_k(*k, n)?)))?,
            Method::ClosedForm,
        )),
        (Resolved::Cyclic(m), MethodArg::Recurrence | MethodArg::Hall, _) => {
            let hom = OrderDividingCounts::new(*m)?.prefix(n_max).to_vec();
            if method == MethodArg::Hall {
                Ok((hall(hom)?, Method::Hall))
            } else if kind == KindArg::Homs {
                Ok((
                    ns.0.iter().map(|&n| hom[n as usize].clone()).collect(),
                    Method::Recurrence,
                ))
            } else {
                Err(unsupported(group, method, kind))
            }
        }
        _ => Err(unsupported(group, method, kind)),
    }
}

/// Method used when `--method` is omitted.
pub fn default_method(group: GroupArg) -> MethodArg {
    match group {
        GroupArg::Bs => MethodArg::Gelman,
        GroupArg::Freeproduct | GroupArg::Z => MethodArg::Hall,
        GroupArg::Zinvk => MethodArg::ClosedForm,
        GroupArg::Cyclic => MethodArg::Recurrence,
    }
}

pub fn cmd_sequence(spec: &GroupSpec, method: MethodArg, ns: &IndexSet) -> Result<Table> {
    let group = Resolved::from_spec(spec)?;
    let mut table = Table::new(vec!["n", "value", "method"]);
    if method == MethodArg::Asymptotic {
        let (m, term) = group.main_term(spec.kind)?;
        for &n in &ns.0 {
            let value = match term {
                MainTerm::F => asymptotic::log_f(m, n as f64)?,
                MainTerm::G => asymptotic::log_g(m, n as f64)?,
            };
            table.push(vec![Cell::Index(n), Cell::Log(value), Cell::Text("asymptotic".into())]);
        }
        return Ok(table);
    }
    let (values, used) = exact_values(&group, method, spec.kind, ns)?;
    let label = method_label(used);
    for (&n, v) in ns.0.iter().zip(values) {
        table.push(vec![Cell::Index(n), Cell::Exact(v), Cell::Text(label.clone())]);
    }
    Ok(table)
}

/// Comparison table and whether every exact-vs-exact row agreed.
pub fn cmd_compare(
    spec: &GroupSpec,
    method_a: MethodArg,
    method_b: MethodArg,
    ns: &IndexSet,
    tolerance: Option<f64>,
) -> Result<(Table, bool)> {
    let group = Resolved::from_spec(spec)?;
    if method_a == MethodArg::Asymptotic {
        return Err(invalid("--method-a must be exact; put asymptotic in --method-b"));
    }
    let (values, _) = exact_values(&group, method_a, spec.kind, ns)?;
    let mut table = Table::new(vec!["n", "value", "value2", "ratio", "flag"]);
    let mut all_ok = true;
    if method_b == MethodArg::Asymptotic {
        let (m, term) = group.main_term(spec.kind)?;
        for (&n, v) in ns.0.iter().zip(values) {
            let main = match term {
                MainTerm::F => asymptotic::log_f(m, n as f64)?,
                MainTerm::G => asymptotic::log_g(m, n as f64)?,
            };
            let ratio = if v.bits() == 0 {
                None
            } else {
                Some(ratio_to_main_term(&v, m, n, term)?)
            };
            let flag = match (tolerance, ratio) {
                (Some(tol), Some(r)) => Cell::Text(if (r - 1.0).abs() <= tol { "pass" } else { "fail" }.into()),
                _ => Cell::Empty,
            };
            table.push(vec![
                Cell::Index(n),
                Cell::Exact(v),
                Cell::Log(main),
                ratio.map_or(Cell::Empty, Cell::Real),
                flag,
            ]);
        }
        return Ok((table, true));
    }
    let (other, _) = exact_values(&group, method_b, spec.kind, ns)?;
    for ((&n, v), w) in ns.0.iter().zip(values).zip(other) {
        let equal = v == w;
        all_ok &= equal;
        table.push(vec![
            Cell::Index(n),
            Cell::Exact(v),
            Cell::Exact(w),
            Cell::Empty,
            Cell::Text(if equal { "equal" } else { "differ" }.into()),
        ]);
    }
    Ok((table, all_ok))
}

fn flag(ok: bool) -> Cell {
    Cell::Text(if ok { "pass" } else { "fail" }.into())
}

/// Rows `(n, quantity, value, bound, flag)`; `flag` is `value < bound`.
/// For the decaying quantities the bound is the previous grid point's value.
pub fn cmd_diagnostics(m: u64, lemma: LemmaArg, ns: &IndexSet) -> Result<Table> {
    asymptotic::k_m(m)?;
    let mut table = Table::new(vec!["n", "quantity", "value", "bound", "flag"]);
    let wants = |l: LemmaArg| lemma == LemmaArg::All || lemma == l;
    let row = |n: u64, name: &str, value: LogValue, bound: Option<LogValue>| -> Vec<Cell> {
        let ok = bound.is_none_or(|b| value < b);
        vec![
            Cell::Index(n),
            Cell::Text(name.into()),
            Cell::Log(value),
            bound.map_or(Cell::Empty, Cell::Log),
            flag(ok),
        ]
    };

    if wants(LemmaArg::Lemma45) {
        for &n in ns.0.iter().filter(|&&n| n >= 16) {
            let (lhs, rhs) = lemma45_bound_check(n)?;
            table.push(row(n, "lemma45_binomial", lhs, Some(rhs)));
        }
    }
    let decaying = |name: &str, f: &dyn Fn(u64) -> Result<LogValue>, min_n: u64, table: &mut Table| -> Result<()> {
        let mut prev = None;
        for &n in ns.0.iter().filter(|&&n| n >= min_n) {
            let q = f(n)?;
            table.push(row(n, name, q, prev));
            prev = Some(q);
        }
        Ok(())
    };
    if wants(LemmaArg::Lemma46) {
        decaying("lemma46_decay", &|n| lemma46_quantity(m, n), 16, &mut table)?;
    }
    if wants(LemmaArg::DivisorSum) {
        for &n in ns.0.iter().filter(|&&n| n >= m) {
            let sum = LogValue::from_f64(asymptotic::divisor_sum_term(m, n as f64));
            table.push(row(n, "divisor_sum", sum, Some(LogValue::from_f64(n as f64))));
        }
    }
    if wants(LemmaArg::Sandwich) {
        for &n in ns.0.iter().filter(|&&n| n >= m) {
            let (lower, mid, upper) = g_sandwich_check(m, n)?;
            table.push(row(n, "sandwich_lower", lower, Some(mid)));
            table.push(row(n, "sandwich_upper", mid, Some(upper)));
        }
    }
    if wants(LemmaArg::Lemma58) {
        decaying("lemma58_decay", &|n| lemma58_quantity(m, n), 4, &mut table)?;
    }
    if wants(LemmaArg::Census) {
        decaying(
            "census_ratio",
            &|n| Ok(LogValue::from_f64(census_ratio(m, n)?)),
            3,
            &mut table,
        )?;
    }
    Ok(table)
}

/// Summary record in field order.
pub fn cmd_montecarlo(m: u64, n: usize, trials: u64, seed: u64) -> Result<serde_json::Map<String, serde_json::Value>> {
    let summary = monte_carlo_generation(m, n, trials, seed)?;
    match serde_json::to_value(&summary).expect("serialisable") {
        serde_json::Value::Object(map) => Ok(map),
        _ => unreachable!("struct serialises to an object"),
    }
}
