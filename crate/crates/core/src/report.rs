//! Per-polygon analysis reports and the expected summary table.

use serde::Serialize;

use crate::algebra::{fmt_rational, Rational};
use crate::catalog::identify;
use crate::error::{Error, Result};
use crate::fibration::{classify_fibres, elimination_factors, EliminationFactor, FibreConfiguration, KodairaType, Location};
use crate::laurent::build_fP;
use crate::mordell_weil::{mw_group, MWReport};
use crate::period::{find_picard_fuchs, operator_singular_locus, period_coefficients, DiffOperator};
use crate::polygon::{Polygon, Pt};

/// Computational parameters; anything that changes a report lives here.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    /// Number of period coefficients reported is `period_order + 1`.
    pub period_order: usize,
    pub pf_max_order: usize,
    pub pf_max_degree: usize,
    pub pf_guard: usize,
    pub fit_operator: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { period_order: 40, pf_max_order: 4, pf_max_degree: 12, pf_guard: 8, fit_operator: true }
    }
}

impl RunConfig {
    /// Coefficients the operator search needs.
    pub fn pf_coefficients_needed(&self) -> usize {
        (self.pf_max_order + 1) * (self.pf_max_degree + 1) + self.pf_guard
    }

    /// Truncation order actually computed: the operator fit extends the
    /// reported series when it needs more terms.
    pub fn working_order(&self) -> usize {
        if self.fit_operator {
            self.period_order.max(self.pf_coefficients_needed() - 1)
        } else {
            self.period_order
        }
    }
}

/// One row of the summary table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpectedRow {
    pub members: &'static [&'static str],
    pub fibres: &'static str,
    /// Index in the standard list of rational elliptic surfaces; carried as metadata.
    pub number: u32,
    pub group: &'static str,
}

pub const EXPECTED_TABLE: [ExpectedRow; 8] = [
    ExpectedRow { members: &["3"], fibres: "I9, 3×I1", number: 63, group: "Z/3Z" },
    ExpectedRow { members: &["4a", "4c"], fibres: "I8, I2, 2×I1", number: 70, group: "Z/4Z" },
    ExpectedRow { members: &["4b"], fibres: "I8, 4×I1", number: 45, group: "Z" },
    ExpectedRow { members: &["5a", "5b"], fibres: "I7, I2, 3×I1", number: 47, group: "Z" },
    ExpectedRow { members: &["6a", "6b", "6c", "6d"], fibres: "I6, I3, I2, I1", number: 66, group: "Z/6Z" },
    ExpectedRow { members: &["7a", "7b"], fibres: "2×I5, 2×I1", number: 67, group: "Z/5Z" },
    ExpectedRow { members: &["8a", "8b", "8c"], fibres: "I4, I1*, I1", number: 72, group: "Z/4Z" },
    ExpectedRow { members: &["9"], fibres: "I3, IV*, I1", number: 69, group: "Z/3Z" },
];

pub fn expected_row(name: &str) -> Option<&'static ExpectedRow> {
    EXPECTED_TABLE.iter().find(|r| r.members.contains(&name))
}

/// `I9, 3×I1`: the fibre at infinity first, then by decreasing Euler number,
/// equal types merged.
pub fn fibre_summary(config: &FibreConfiguration) -> String {
    let mut inf: Vec<KodairaType> = Vec::new();
    let mut rest: Vec<KodairaType> = Vec::new();
    for e in &config.entries {
        let target = if matches!(e.location, Location::Infinity) { &mut inf } else { &mut rest };
        target.extend(std::iter::repeat_n(e.kind, e.count));
    }
    rest.sort_by(|a, b| b.chi().cmp(&a.chi()).then(a.cmp(b)));
    let mut groups: Vec<(KodairaType, usize)> = Vec::new();
    for k in inf.into_iter().chain(rest) {
        match groups.last_mut() {
            Some((t, n)) if *t == k => *n += 1,
            _ => groups.push((k, 1)),
        }
    }
    groups
        .iter()
        .map(|(t, n)| if *n == 1 { t.to_string() } else { format!("{n}×{t}") })
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisReport {
    pub name: String,
    pub vertices: Vec<Pt>,
    pub volume: i64,
    pub dual: Option<String>,
    pub dual_volume: i64,
    pub mutation_class: Vec<String>,
    pub fibres: FibreConfiguration,
    pub mw: MWReport,
    pub period: Vec<Rational>,
    pub operator: Option<DiffOperator>,
    pub operator_error: Option<String>,
    pub elimination: Vec<EliminationFactor>,
    pub table_number: Option<u32>,
}

/// Full pipeline for one polygon. `classes` are the mutation classes of the
/// catalog the polygon belongs to.
pub fn analyze(name: &str, p: &Polygon, classes: &[Vec<String>], cfg: &RunConfig) -> Result<AnalysisReport> {
    let dual = p.polar_dual()?;
    let fibres = classify_fibres(p)?;
    let mw = mw_group(p, &fibres)?;
    let series = period_coefficients(&build_fP(p), cfg.working_order());
    let (operator, operator_error) = if cfg.fit_operator {
        match find_picard_fuchs(&series, cfg.pf_max_order, cfg.pf_max_degree, cfg.pf_guard) {
            Ok(l) => (Some(l), None),
            Err(e) => (None, Some(e.to_string())),
        }
    } else {
        (None, None)
    };
    let report = AnalysisReport {
        name: name.to_string(),
        vertices: p.vertices().to_vec(),
        volume: p.volume(),
        dual: identify(&dual),
        dual_volume: dual.volume(),
        mutation_class: classes.iter().find(|c| c.iter().any(|n| n == name)).cloned().unwrap_or_default(),
        fibres,
        mw,
        period: series.coeffs[..=cfg.period_order].to_vec(),
        operator,
        operator_error,
        elimination: elimination_factors(p)?,
        table_number: expected_row(name).map(|r| r.number),
    };
    report.check_invariants()?;
    Ok(report)
}

impl AnalysisReport {
    pub fn check_invariants(&self) -> Result<()> {
        let bad = |m: String| Err(Error::ClassificationInconsistent(m));
        if self.fibres.chi_total() != 12 {
            return bad(format!("Euler numbers sum to {}", self.fibres.chi_total()));
        }
        if self.mw.rank + self.fibres.r_total() != 8 {
            return bad("rank and fibre components do not add to 8".into());
        }
        if self.volume + self.dual_volume != 12 {
            return bad("volumes of polygon and dual do not add to 12".into());
        }
        Ok(())
    }

    pub fn fibre_summary(&self) -> String {
        fibre_summary(&self.fibres)
    }

    /// `I9, 3×I1 | Z/3Z`.
    pub fn table_row(&self) -> String {
        format!("{} | {}", self.fibre_summary(), self.mw.group)
    }

    /// Agreement with the summary table; `None` for polygons outside it.
    pub fn matches_table(&self) -> Option<bool> {
        expected_row(&self.name).map(|r| r.fibres == self.fibre_summary() && r.group == self.mw.group.to_string())
    }

    pub fn json(&self) -> serde_json::Value {
        let rats = |v: &[Rational]| v.iter().map(fmt_rational).collect::<Vec<_>>();
        let operator = self.operator.as_ref().map(|l| {
            let loc = operator_singular_locus(l);
            serde_json::json!({
                "order": l.order(),
                "degree": l.degree(),
                "dForm": l.display_d_form(),
                "dualForm": l.display_dual_form(),
                "singularRoots": loc.leading.roots.iter().map(|(r, m)| serde_json::json!([fmt_rational(r), m])).collect::<Vec<_>>(),
                "singularFactors": loc.leading.residual.iter().map(|(q, m)| serde_json::json!([q.display("t"), m])).collect::<Vec<_>>(),
            })
        });
        serde_json::json!({
            "name": self.name,
            "vertices": self.vertices.iter().map(|v| [v.x, v.y]).collect::<Vec<_>>(),
            "volume": self.volume,
            "dual": self.dual,
            "dualVolume": self.dual_volume,
            "mutationClass": self.mutation_class,
            "fibres": self.fibres.json(),
            "fibreSummary": self.fibre_summary(),
            "mw": self.mw.json(),
            "period": rats(&self.period),
            "operator": operator,
            "operatorError": self.operator_error,
            "elimination": self.elimination.iter().map(|f| serde_json::json!({
                "factor": f.factor.display("l"),
                "multiplicity": f.multiplicity,
            })).collect::<Vec<_>>(),
            "tableNumber": self.table_number,
        })
    }
}
