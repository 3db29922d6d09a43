//! The six subcommands, each turning a validated [`RunConfig`] into output.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::One;

use ermm_core::combinatorics::{
    catalan, convolution_identity_check, d_seq, d_seq_direct, d_seq_via_h, free_energy_truncation, h_seq, limit_cumulant,
    psi_closed_form, rooted_tree_counts, walk_census_recurrence, LimitValue, ModelKind, Regime, RegimeTag, WalkRecursion,
};
use ermm_core::diagrams::{
    brute_force_walk_census, cumulant_via_diagrams, enumerate, DiagramFilter, sparse_tree_table, visit_diagrams, EnumerationLimits,
};
use ermm_core::num::{big, fmt_rational, int, rat, to_f64};
use ermm_core::oracle::{
    exact_cumulant, exact_moments_by_graphs, exact_moments_by_tuples, free_partition_closed_form, graph_count,
    graph_records, laplacian_histogram_range, moments_from_histogram, normalized_partition_identity, partition_function,
    ExactWeights, Potential,
};
use ermm_core::series::{psi_from_h, solve_h_series};
use ermm_core::{Poly, Rational};

use crate::config::{CommandKind, RunConfig, Sequence, Suite};
use crate::error::{CliError, CliResult};
use crate::report::{format_float, PlotData, Report, Row};
use crate::sim::{clt_test, gaussian_calibration, normalized_cumulant_run, with_pool};

/// What a command produced: a report, or a raw text dump.
#[derive(Clone, Debug, PartialEq)]
pub enum Output {
    Report(Report),
    Text(String),
}

pub fn run(config: &RunConfig) -> CliResult<Output> {
    let command = config
        .command
        .ok_or_else(|| CliError::Usage("no command given (tables, verify, simulate, free-energy, diagrams-dump, oracle-dump)".into()))?;
    let mut output = match command {
        CommandKind::Tables => Output::Report(tables(config)?),
        CommandKind::Verify => Output::Report(verify(config)?),
        CommandKind::Simulate => Output::Report(simulate(config)?),
        CommandKind::FreeEnergy => Output::Report(free_energy(config)?),
        CommandKind::DiagramsDump => Output::Text(diagrams_dump(config)?),
        CommandKind::OracleDump => Output::Text(oracle_dump(config)?),
    };
    if let Output::Report(report) = &mut output {
        report.metadata.insert("command".into(), format!("{command:?}"));
        report.metadata.insert("config".into(), config.echo());
        report.metadata.insert("version".into(), env!("CARGO_PKG_VERSION").into());
        report.metadata.insert("seed".into(), config.seed().to_string());
    }
    Ok(output)
}

fn exact_row(quantity: String, tag: &str, value: &Rational) -> Row {
    Row::new(quantity, tag, fmt_rational(value))
}

fn check_row(quantity: impl Into<String>, tag: &str, value: String, target: String) -> Row {
    let pass = value == target;
    Row::new(quantity, tag, value).target(target).pass(pass)
}

fn limits() -> EnumerationLimits {
    EnumerationLimits::default()
}

pub fn tables(config: &RunConfig) -> CliResult<Report> {
    let seq = config.seq.ok_or_else(|| CliError::Usage("tables needs --seq".into()))?;
    let kmax = config.kmax(8);
    let mut report = Report::default();
    let mut plot = PlotData { columns: vec!["k".into(), "value".into()], rows: Vec::new() };
    let mut push = |report: &mut Report, k: u32, row: Row, value: &Rational| {
        plot.rows.push(vec![k as f64, to_f64(value)]);
        report.push(row);
    };
    match seq {
        Sequence::H => {
            let q = config.q()?;
            for (k, v) in h_seq(q, kmax as usize)?.iter().enumerate() {
                push(&mut report, k as u32, exact_row(format!("h_{k}^({q})"), "h-series", v), v);
            }
        }
        Sequence::D => {
            let q = config.q()?;
            for (k, v) in d_seq(q, kmax as usize)?.iter().enumerate().skip(1) {
                let v = big(v);
                push(&mut report, k as u32, exact_row(format!("d_{k}^({q})"), "tree-count-recurrence", &v), &v);
            }
        }
        Sequence::Psi => {
            let q = config.q()?;
            let closed = psi_closed_form(q, kmax as usize);
            let series = psi_from_h(&solve_h_series(q, kmax as usize)?, q)?;
            for k in 1..=kmax as usize {
                let v = series.coeff(k).clone();
                let row = check_row(format!("psi_{k}^({q})"), "psi-closed-form", fmt_rational(&v), fmt_rational(&closed[k]));
                push(&mut report, k as u32, row, &v);
            }
        }
        Sequence::T | Sequence::Rooted | Sequence::Unrooted => {
            let counts = rooted_tree_counts(kmax as usize)?;
            for k in 1..=kmax as usize {
                let (name, tag, v) = match seq {
                    Sequence::T => ("t", "rooted-tree-recurrence", counts.scaled[k].clone()),
                    Sequence::Rooted => ("T^", "rooted-tree-recurrence", big(&counts.rooted[k])),
                    _ => ("T", "unrooted-tree-count", big(&counts.unrooted[k])),
                };
                push(&mut report, k as u32, exact_row(format!("{name}_{k}"), tag, &v), &v);
            }
        }
        Sequence::Catalan => {
            for m in 0..=kmax {
                let v = big(&catalan(m as u64));
                push(&mut report, m, exact_row(format!("Cat_{m}"), "catalan", &v), &v);
            }
        }
        Sequence::WalkCensus => {
            let qmax = config.q.unwrap_or(kmax).max(2);
            let census = walk_census_recurrence(qmax, WalkRecursion::FirstPassage)?;
            for q in 2..=qmax {
                for r in 2..=q {
                    let poly = census.root_steps(q, r);
                    if !poly.is_zero() {
                        report.push(Row::new(format!("F_{q}({r})"), "walk-census", poly.display("c")));
                    }
                }
                report.push(Row::new(format!("F_{q}"), "walk-census", census.totals[q as usize].display("c")));
            }
        }
        Sequence::Limit => {
            let model = config.model()?;
            let q = config.q()?;
            let tag = config.regime_tag()?;
            let regime = match tag {
                RegimeTag::Full if config.p.is_some() => Some(config.regime()?),
                RegimeTag::Sparse if config.c.is_some() => Some(config.regime()?),
                RegimeTag::Dilute | RegimeTag::VerySparse => Some(config.regime()?),
                _ => None,
            };
            for k in 1..=kmax {
                let entry = limit_cumulant(model, q, k, tag)?;
                let value = match (&regime, &entry.value) {
                    (Some(r), _) => {
                        let v = entry.value.evaluate(r)?;
                        plot.rows.push(vec![k as f64, to_f64(&v)]);
                        fmt_rational(&v)
                    }
                    (None, LimitValue::Exact(v)) => fmt_rational(v),
                    (None, other) => other.render(),
                };
                report.push(Row::new(format!("F_{k}^({q})[{model},{tag}]"), entry.source, value));
            }
        }
    }
    if !plot.rows.is_empty() {
        report.plots.insert(format!("tables-{seq:?}").to_lowercase(), plot);
    }
    Ok(report)
}

fn verify_series(order: usize, report: &mut Report) -> CliResult<()> {
    for q in 2..=4u32 {
        let series = solve_h_series(q, order)?;
        let table = h_seq(q, order)?;
        let agree = (0..=order).all(|k| *series.coeff(k) == table[k]);
        report.push(check_row(format!("h^({q}) series = recurrence to order {order}"), "h-series", agree.to_string(), "true".into()));
        let psi = psi_from_h(&series, q)?;
        let closed = psi_closed_form(q, order);
        let agree = (0..=order).all(|k| *psi.coeff(k) == closed[k]);
        report.push(check_row(format!("psi^({q}) = z H^(q-1) = closed form"), "psi-closed-form", agree.to_string(), "true".into()));
        let agree = d_seq_via_h(q, order)? == d_seq_direct(q, order)?;
        report.push(check_row(format!("d^({q}) via h = direct recurrence"), "tree-count-recurrence", agree.to_string(), "true".into()));
        let conv = convolution_identity_check(q, order.min(10))?;
        report.push(check_row(format!("convolution identity q = {q}"), "convolution-identity", conv.to_string(), "true".into()));
    }
    let d2 = d_seq(2, order)?;
    for k in 1..=order as u32 {
        let closed = if k == 1 {
            BigUint::one()
        } else {
            BigUint::from(2u32).pow(k) * BigUint::from(k + 1).pow(k - 2)
        };
        report.push(check_row(format!("d_{k}^(2)"), "tree-count-closed-form", d2[k as usize].to_string(), closed.to_string()));
    }
    rooted_tree_counts(order)?;
    report.push(check_row("rooted/unrooted tree counts = closed forms", "rooted-tree-recurrence", "true".into(), "true".into()));
    Ok(())
}

fn verify_oracle(n: u32, report: &mut Report) -> CliResult<()> {
    for m in 1..=n.min(6) {
        for x in [int(1), rat(1, 2), rat(1, 3)] {
            let w = ExactWeights::new(x.clone(), int(1))?;
            let z = partition_function(m, &w, Potential::None)?;
            report.push(check_row(
                format!("Z_{m}(x = {})", fmt_rational(&x)),
                "free-partition-closed-form",
                fmt_rational(&z),
                fmt_rational(&free_partition_closed_form(m, &x)),
            ));
        }
    }
    for (x, s) in [(rat(1, 2), int(2)), (rat(1, 3), rat(1, 2))] {
        let (lhs, rhs) = normalized_partition_identity(n, &ExactWeights::new(x.clone(), s.clone())?)?;
        report.push(check_row(
            format!("quartic identity n = {n}, x = {}, s = {}", fmt_rational(&x), fmt_rational(&s)),
            "quartic-partition-identity",
            fmt_rational(&lhs),
            fmt_rational(&rhs),
        ));
    }
    let p = rat(1, 3);
    for (model, q, mmax) in [(ModelKind::Y, 2u32, 2usize), (ModelKind::X, 3, 2), (ModelKind::X, 2, 2)] {
        let a = exact_moments_by_graphs(model, q, mmax, n, &p)?;
        let b = exact_moments_by_tuples(model, q, mmax, n as u64, &p)?;
        let render = |v: &[Rational]| v.iter().map(fmt_rational).collect::<Vec<_>>().join(";");
        report.push(check_row(format!("E[{model}^({q})^m], m <= {mmax}, n = {n}"), "moment-routes", render(&a), render(&b)));
    }
    let total = graph_count(n)?;
    let tr2 = &moments_from_histogram(&laplacian_histogram_range(n, 0..total), n, 1, &p)[0];
    let y2 = &exact_moments_by_graphs(ModelKind::Y, 2, 1, n, &p)?[0];
    let rhs = y2 + int((n * (n - 1)) as i64) * &p;
    report.push(check_row(format!("E Tr Delta^2, n = {n}"), "laplacian-trace-identity", fmt_rational(tr2), fmt_rational(&rhs)));
    Ok(())
}

fn verify_diagrams(q: u32, kmax: u32, report: &mut Report) -> CliResult<()> {
    let d = d_seq(q, kmax as usize)?;
    for k in 1..=kmax {
        let e = enumerate(ModelKind::Y, q, k, DiagramFilter::TreeArcs, &limits())?;
        report.push(check_row(format!("unoriented tree diagrams (Y, q = {q}, k = {k})"), "diagram-count", e.unoriented.to_string(), d[k as usize].to_string()));
        let oriented = &d[k as usize] << (k - 1);
        report.push(check_row(format!("oriented tree diagrams (Y, q = {q}, k = {k})"), "diagram-count", e.oriented.to_string(), oriented.to_string()));
    }
    let p = rat(1, 3);
    for n in [4u32, 5] {
        for k in 1..=2u32 {
            let via = cumulant_via_diagrams(ModelKind::Y, 2, k, n as u64, &p, &limits())?;
            let oracle = exact_cumulant(ModelKind::Y, 2, k as usize, n, &p)?;
            report.push(check_row(format!("Cum_{k}(Y^(2)), n = {n}, p = 1/3"), "diagram-oracle-equality", fmt_rational(&via), fmt_rational(&oracle)));
        }
    }
    Ok(())
}

fn verify_walks(qmax: u32, report: &mut Report) -> CliResult<()> {
    let census = walk_census_recurrence(qmax, WalkRecursion::FirstPassage)?;
    for q in 2..=qmax {
        let brute = brute_force_walk_census(q)?;
        report.push(check_row(format!("F_{q} recursion = brute force"), "walk-census-brute-force", census.totals[q as usize].display("c"), brute.total.display("c")));
        for r in 2..=q {
            report.push(check_row(format!("F_{q}({r}) recursion = brute force"), "walk-census-brute-force", census.root_steps(q, r).display("c"), brute.root_steps(r).display("c")));
        }
    }
    if qmax >= 3 {
        report.push(check_row("f_3(2)", "walk-census", brute_force_walk_census(3)?.count(2).to_string(), "0".into()));
    }
    report.push(check_row("F_2", "walk-census", census.totals[2].display("c"), Poly::from_ints(&[1, 1]).display("c")));
    let table = sparse_tree_table(ModelKind::Y, 2, 1, &limits())?;
    report.push(check_row("N_{1,1}, N_{1,2} (Y, q = 2)", "sparse-tree-census", format!("{},{}", table.count(1, 1), table.count(1, 2)), "1,1".into()));
    Ok(())
}

pub fn verify(config: &RunConfig) -> CliResult<Report> {
    let suite = config.suite.unwrap_or(Suite::All);
    let mut report = Report::default();
    let order = config.order.unwrap_or(12) as usize;
    let n = match &config.n {
        Some(_) => {
            let sizes = config.sizes()?;
            u32::try_from(sizes[0]).map_err(|_| CliError::Usage("oracle size too large".into()))?
        }
        None => 4,
    };
    let q = config.q.unwrap_or(2);
    let kmax = config.kmax(3);
    if matches!(suite, Suite::Series | Suite::All) {
        verify_series(order, &mut report)?;
    }
    if matches!(suite, Suite::Oracle | Suite::All) {
        verify_oracle(n, &mut report)?;
    }
    if matches!(suite, Suite::Diagrams | Suite::All) {
        verify_diagrams(q, kmax, &mut report)?;
    }
    if matches!(suite, Suite::Walks | Suite::All) {
        verify_walks(config.q.unwrap_or(6).max(2), &mut report)?;
    }
    Ok(report)
}

pub fn simulate(config: &RunConfig) -> CliResult<Report> {
    let model = config.model()?;
    let q = config.q()?;
    let schedule = config.schedule()?;
    let samples = config.samples();
    let seed = config.seed();
    let tag = schedule.tag();
    let mut report = Report::default();
    if config.clt.unwrap_or(false) {
        let calibration = gaussian_calibration(samples.max(500) as usize, seed)?;
        report.push(
            Row::new(format!("KS distance, {} N(0,1) draws", calibration.samples), "gaussian-calibration", format_float(calibration.statistic))
                .target(format!("< {}", format_float(calibration.critical)))
                .pass(calibration.accepts()),
        );
        let mut plot = PlotData { columns: ["n", "skewness", "skewness_se", "excess_kurtosis", "excess_kurtosis_se", "ks"].map(String::from).to_vec(), rows: Vec::new() };
        for &point in schedule.points() {
            let clt = with_pool(|| clt_test(model, q, tag, point, samples, seed))??;
            let label = format!("{model}^({q}) n = {}, p = {}", point.n, format_float(point.p));
            report.push(Row::new(format!("skewness {label}"), "clt-shape", format_float(clt.shape.skewness)).target("0").stderr(clt.shape.skewness_stderr));
            report.push(Row::new(format!("excess kurtosis {label}"), "clt-shape", format_float(clt.shape.excess_kurtosis)).target("0").stderr(clt.shape.excess_kurtosis_stderr));
            let verdict = if clt.looks_gaussian() { "gaussian" } else { "non-gaussian" };
            let expected = if clt.gaussian_expected { "gaussian" } else { "non-gaussian" };
            report.push(
                Row::new(format!("KS distance {label}"), "clt-ks", format!("{} ({verdict})", format_float(clt.ks.statistic)))
                    .target(format!("{expected}; critical {}", format_float(clt.ks.critical)))
                    .pass(clt.looks_gaussian() == clt.gaussian_expected),
            );
            if !clt.gaussian_expected {
                for (k, v) in (2..=4).zip(&clt.normalized) {
                    let target = crate::sim::target_value(model, q, k, tag, point)?.map(|t| t.1).unwrap_or_default();
                    report.push(Row::new(format!("normalized Cum_{k} {label}"), "normalized-cumulant", format_float(*v)).target(target));
                }
            }
            plot.rows.push(vec![
                point.n as f64,
                clt.shape.skewness,
                clt.shape.skewness_stderr.unwrap_or(f64::NAN),
                clt.shape.excess_kurtosis,
                clt.shape.excess_kurtosis_stderr.unwrap_or(f64::NAN),
                clt.ks.statistic,
            ]);
        }
        report.plots.insert("clt".into(), plot);
        return Ok(report);
    }
    let k = config.k.unwrap_or(1);
    let rows = with_pool(|| normalized_cumulant_run(model, q, k, &schedule, samples, seed))??;
    let mut plot = PlotData { columns: ["n", "c", "estimate", "stderr", "target"].map(String::from).to_vec(), rows: Vec::new() };
    for r in rows {
        let quantity = format!("normalized Cum_{k}({model}^({q})) n = {}, p = {}", r.point.n, format_float(r.point.p));
        let mut row = Row::new(quantity, r.target.as_ref().map_or("normalized-cumulant", |t| t.2), format_float(r.estimate)).stderr(r.stderr);
        if let Some(t) = &r.target {
            row = row.target(t.1.clone());
        }
        report.push(row);
        plot.rows.push(vec![r.point.n as f64, r.point.c(), r.estimate, r.stderr.unwrap_or(f64::NAN), r.target.map_or(f64::NAN, |t| t.0)]);
    }
    report.plots.insert("convergence".into(), plot);
    Ok(report)
}

pub fn free_energy(config: &RunConfig) -> CliResult<Report> {
    let q = config.q.unwrap_or(2);
    let order = config.order.unwrap_or(4);
    let times = config.times()?;
    let regimes: Vec<Regime> = match &config.regime {
        Some(_) => vec![config.regime()?],
        None => {
            let p = config.p.as_ref().map_or(Ok(rat(1, 2)), |v| v.to_rational())?;
            let c = config.c.as_ref().map_or(Ok(int(2)), |v| v.to_rational())?;
            vec![Regime::full(p)?, Regime::Dilute, Regime::sparse(c)?]
        }
    };
    let mut report = Report::default();
    let mut plot = PlotData { columns: vec!["t".into()], rows: times.iter().map(|t| vec![to_f64(t)]).collect() };
    for regime in &regimes {
        let truncation = free_energy_truncation(regime, q, order, &limits())?;
        let label = match regime {
            Regime::Full(p) => format!("full p={}", fmt_rational(p)),
            Regime::Sparse(c) => format!("sparse c={}", fmt_rational(c)),
            other => other.tag().to_string(),
        };
        plot.columns.push(label.replace(' ', "_"));
        report.push(exact_row(format!("small-t slope [{label}]"), "free-energy-truncation", &truncation.small_t_slope()));
        for (i, t) in times.iter().enumerate() {
            let value = match &truncation.exp_rate {
                None => fmt_rational(&truncation.polynomial_part(t)),
                Some(_) => format_float(truncation.eval(to_f64(t))),
            };
            report.push(Row::new(format!("free energy K={order} [{label}] t={}", fmt_rational(t)), "free-energy-truncation", value));
            plot.rows[i].push(truncation.eval(to_f64(t)));
            let prefactor = match &truncation.exp_rate {
                Some(rate) => format_float(0.5 * (to_f64(rate) * to_f64(t)).exp_m1()),
                None => "0".into(),
            };
            report.push(Row::new(format!("prefactor limit [{label}] t={}", fmt_rational(t)), "free-energy-prefactor", prefactor));
        }
    }
    report.plots.insert("free-energy".into(), plot);
    Ok(report)
}

pub fn diagrams_dump(config: &RunConfig) -> CliResult<String> {
    let model = config.model_or(ModelKind::Y)?;
    let q = config.q()?;
    let k = config.k.unwrap_or(1);
    let filter = config.filter()?;
    let mut text = String::from("model\tq\tk\tlabels\tm\tnu\tarcs\ttree\tcycles\n");
    visit_diagrams(model, q, k, filter, usize::MAX, &limits(), &mut |d| {
        text.push_str(&d.dump_line());
        text.push('\n');
    })?;
    Ok(text)
}

pub fn oracle_dump(config: &RunConfig) -> CliResult<String> {
    let sizes = config.sizes()?;
    let q = config.q.unwrap_or(2);
    let mut text = String::from("n,mask,edges,tr_laplacian,tr_laplacian_sq,x,y\n");
    for n in sizes {
        if n > 5 {
            return Err(CliError::Core(ermm_core::Error::Resource(format!("oracle dumps are limited to n <= 5, got {n}"))));
        }
        for r in graph_records(n as u32, q)? {
            let _ = writeln!(text, "{n},{},{},{},{},{},{}", r.mask, r.edges, r.tr_laplacian, r.tr_laplacian_sq, r.x, r.y);
        }
    }
    Ok(text)
}
