use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Duration;

use rayon::ThreadPool;
use serde_json::{json, Value};
use ybhom::biquandle::{check_property_i, check_property_i_bounded, make_cyclic, Axiom, Element, YBMap};
use ybhom::complex::{boundary_matrix, decode, Variant};
use ybhom::homology::golden::{self, PROVENANCE};
use ybhom::homology::{
    cocycle_basis, verify_betti, verify_conjecture, verify_equivariance, verify_splitting, verify_torsion_bound,
    Cochain, Coefficients, HomologyEngine, HomologyError, HomologyReport, ReportKind,
};
use ybhom::intlinalg::{write_sms, AbelianGroup, Budget, LinalgError};

use crate::config::{check_budget, DegreeRange, Operator};
use crate::fault::FaultyFaces;
use crate::output::{group_csv, group_json, stream_ordered, Row, Sink};
use crate::{Check, Cli, CliError, Command, EXIT_BUDGET, EXIT_MISMATCH, EXIT_OK};

/// Worst outcome seen so far; budget problems outrank mismatches.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
enum Status {
    #[default]
    Ok,
    Mismatch,
    Budget,
}

impl Status {
    fn of_error(e: &HomologyError) -> Status {
        match e {
            HomologyError::Linalg(LinalgError::BudgetExceeded(_)) => Status::Budget,
            _ => Status::Mismatch,
        }
    }

    fn code(self) -> i32 {
        match self {
            Status::Ok => EXIT_OK,
            Status::Mismatch => EXIT_MISMATCH,
            Status::Budget => EXIT_BUDGET,
        }
    }
}

pub(crate) fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let budget = Budget { max_duration: cli.max_seconds.map(Duration::from_secs), ..Budget::default() };
    let ctx = Context { cli, budget };
    match &cli.command {
        Command::Axioms { spec } => ctx.axioms(spec, out),
        Command::Homology { spec, n, variant, coeff, cohomology } => {
            ctx.homology(spec, *n, &variant.variants(), *coeff, *cohomology, out, err)
        }
        Command::Table { subset, inject_fault } => ctx.table(subset.as_deref(), *inject_fault, out, err),
        Command::Verify { check, spec, n } => ctx.verify(*check, spec, *n, out, err),
        Command::Export { spec, n, variant, export } => ctx.export(spec, *n, &variant.variants(), export, out),
        Command::Cocycles { m, n, export } => ctx.cocycles(*m, *n, export.as_deref(), out),
    }
}

struct Context<'a> {
    cli: &'a Cli,
    budget: Budget,
}

impl Context<'_> {
    fn pool(&self) -> Result<ThreadPool, CliError> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.cli.threads)
            .build()
            .map_err(|e| CliError::Input(format!("cannot start worker pool: {e}")))
    }

    fn engine(&self) -> HomologyEngine {
        HomologyEngine::new(self.budget.clone())
    }

    fn axioms(&self, spec: &str, out: &mut dyn Write) -> Result<i32, CliError> {
        let op = Operator::load(spec)?;
        let cert = op.map.certification();
        let mut sink = Sink::new(self.cli.format, out, &["check", "description", "pass", "witness"])?;
        for axiom in Axiom::ALL {
            let witness = match cert.verdict(axiom) {
                ybhom::biquandle::Verdict::Pass => None,
                ybhom::biquandle::Verdict::Fail { witness } => Some(witness.clone()),
            };
            let name = serde_json::to_value(axiom).expect("axiom names serialize");
            let name = name.as_str().expect("axiom names are strings").to_string();
            sink.emit(&AxiomRow { name, description: axiom.to_string(), witness })?;
        }
        let property_i = check_property_i(&op.map);
        sink.emit(&AxiomRow {
            name: "property-i".into(),
            description: "property (I)".into(),
            witness: (!property_i).then(Vec::new),
        })?;
        let biquandle = cert.is_biquandle();
        sink.summary(
            json!({ "spec": op.spec, "m": op.m(), "biquandle": biquandle, "property_i": property_i }),
            &format!("{} (m = {}): {}", op.spec, op.m(), if biquandle { "biquandle" } else { "not a biquandle" }),
        )?;
        Ok(if biquandle { EXIT_OK } else { EXIT_MISMATCH })
    }

    #[allow(clippy::too_many_arguments)]
    fn homology(
        &self,
        spec: &str,
        range: DegreeRange,
        variants: &[Variant],
        coeff: Coefficients,
        cohomology: bool,
        out: &mut dyn Write,
        err: &mut dyn Write,
    ) -> Result<i32, CliError> {
        let op = Operator::load(spec)?;
        op.require_complex(variants)?;
        check_budget(op.m(), range.end + 1, self.cli.budget_entries, "degree range")?;
        let pool = self.pool()?;
        let engine = self.engine();
        let jobs: Vec<(usize, Variant)> = range.degrees().flat_map(|n| variants.iter().map(move |&v| (n, v))).collect();
        let header = ["spec", "kind", "m", "n", "variant", "coeff", "group", "elapsed_ms"];
        let mut sink = Sink::new(self.cli.format, out, &header)?;
        let mut status = Status::Ok;
        stream_ordered(
            &pool,
            &jobs,
            |&(n, v)| {
                if cohomology {
                    engine.compute_cohomology(&op.map, n, v, coeff)
                } else {
                    engine.compute_homology(&op.map, n, v, coeff)
                }
            },
            |result| match result {
                Ok(report) => sink.emit(&HomologyRow { spec: &op.spec, report }),
                Err(e) => {
                    status = status.max(Status::of_error(&e));
                    writeln!(err, "error: {}: {e}", op.spec)
                }
            },
        )?;
        Ok(status.code())
    }

    fn table(
        &self,
        subset: Option<&str>,
        inject_fault: bool,
        out: &mut dyn Write,
        err: &mut dyn Write,
    ) -> Result<i32, CliError> {
        let sizes = parse_subset(subset)?;
        let top = *sizes.iter().max().expect("nonempty subset");
        check_budget(top, golden::DEGREES[golden::DEGREES.len() - 1] + 1, self.cli.budget_entries, "table")?;
        let pool = self.pool()?;
        let engine = self.engine();
        let maps: Vec<(usize, YBMap)> = sizes.iter().map(|&m| (m, make_cyclic(m).into_map())).collect();
        let cells: Vec<golden::TableCell> =
            golden::expected_table().into_iter().filter(|c| sizes.contains(&c.m)).collect();
        let mut sink = Sink::new(self.cli.format, out, &["m", "n", "variant", "computed", "expected", "match"])?;
        let mut rows = Vec::new();
        stream_ordered(
            &pool,
            &cells,
            |cell| {
                let map = &maps.iter().find(|(m, _)| *m == cell.m).expect("map for every size").1;
                let computed = if inject_fault {
                    engine.compute_homology(&FaultyFaces(map), cell.n, cell.variant, Coefficients::Z)
                } else {
                    engine.compute_homology(map, cell.n, cell.variant, Coefficients::Z)
                };
                TableRow { cell: cell.clone(), computed: computed.map(|r| r.group).map_err(|e| e.to_string()) }
            },
            |row| {
                sink.emit(&row)?;
                rows.push(row);
                Ok(())
            },
        )?;
        let diff: Vec<&TableRow> = rows.iter().filter(|r| !r.matches()).collect();
        let matched = rows.len() - diff.len();
        let mut plain = String::new();
        for r in &diff {
            plain.push_str(&format!(
                "diff: C_{} n={} {}: computed {}, expected {}\n",
                r.cell.m,
                r.cell.n,
                r.cell.variant,
                r.computed_text(),
                r.cell.group
            ));
        }
        plain.push_str(&format!("{matched}/{} match ({PROVENANCE})", rows.len()));
        let diff_json: Vec<Value> =
            diff.iter().map(|r| json!({ "m": r.cell.m, "n": r.cell.n, "variant": r.cell.variant })).collect();
        sink.summary(
            json!({ "matched": matched, "total": rows.len(), "diff": diff_json, "provenance": PROVENANCE }),
            &plain,
        )?;
        if !diff.is_empty() {
            writeln!(err, "{} of {} cells differ from the reference table", diff.len(), rows.len())?;
        }
        Ok(if diff.is_empty() { EXIT_OK } else { EXIT_MISMATCH })
    }

    fn verify(
        &self,
        check: Check,
        spec: &str,
        range: DegreeRange,
        out: &mut dyn Write,
        err: &mut dyn Write,
    ) -> Result<i32, CliError> {
        let op = Operator::load(spec)?;
        let header = ["check", "spec", "m", "n", "pass", "detail"];
        if check == Check::PropertyI {
            let max_degree = range.end.min(4);
            check_budget(op.m(), max_degree, self.cli.budget_entries, "bounded property (I) check")?;
            let fixpoint = check_property_i(&op.map);
            let bounded = check_property_i_bounded(&op.map, max_degree);
            let row = VerifyRow {
                check: "property-i",
                spec: &op.spec,
                m: op.m(),
                n: max_degree,
                pass: fixpoint && bounded,
                detail: format!("partition test {fixpoint}, direct test through degree {max_degree} {bounded}"),
                json: json!({ "property_i": fixpoint, "bounded_check": bounded, "max_degree": max_degree }),
            };
            let mut sink = Sink::new(self.cli.format, out, &header)?;
            sink.emit(&row)?;
            if fixpoint != bounded {
                writeln!(err, "warning: partition and direct property (I) tests disagree")?;
            }
            return Ok(if row.pass { EXIT_OK } else { EXIT_MISMATCH });
        }

        let m = if check == Check::Equivariance {
            if !check_property_i(&op.map) {
                return Err(CliError::Input(format!("{}: property (I) fails, so the action is not defined", op.spec)));
            }
            op.m()
        } else {
            op.cyclic_size()
                .ok_or_else(|| CliError::Input(format!("{}: this check applies to cyclic biquandles only", op.spec)))?
        };
        check_budget(m, range.end + 1, self.cli.budget_entries, "degree range")?;
        let pool = self.pool()?;
        let engine = self.engine();
        let name = check_name(check);
        let jobs: Vec<usize> = range.degrees().collect();
        let mut sink = Sink::new(self.cli.format, out, &header)?;
        let mut status = Status::Ok;
        stream_ordered(
            &pool,
            &jobs,
            |&n| {
                let row = |pass: bool, detail: String, json: Value| VerifyRow {
                    check: name,
                    spec: &op.spec,
                    m,
                    n,
                    pass,
                    detail,
                    json,
                };
                let to_json = |r: &dyn erased::Ser| r.value();
                let result: Result<VerifyRow, HomologyError> = match check {
                    Check::Betti => verify_betti(&engine, m, n).map(|r| {
                        let detail = format!(
                            "YB {}, D {}, NYB {} (expected {}, {}, {})",
                            r.computed[0], r.computed[1], r.computed[2], r.expected[0], r.expected[1], r.expected[2]
                        );
                        row(r.pass, detail, to_json(&r))
                    }),
                    Check::Torsion => verify_torsion_bound(&engine, m, n).map(|r| {
                        let groups: Vec<String> = r.groups.iter().map(|(v, g)| format!("{v} {g}")).collect();
                        let detail = format!("bound {}: {}", r.bound, groups.join(", "));
                        row(r.pass, detail, to_json(&r))
                    }),
                    Check::Conjecture => verify_conjecture(&engine, m, n).map(|r| {
                        let detail = format!("computed {}, conjectured {}", r.computed, r.conjectured);
                        row(r.matches, detail, to_json(&r))
                    }),
                    Check::Splitting => verify_splitting(&engine, m, n).map(|r| {
                        let detail = format!("YB {} vs D {} + NYB {}", r.yb, r.d, r.nyb);
                        row(r.pass, detail, to_json(&r))
                    }),
                    Check::Equivariance => verify_equivariance(&op.map, n).map(|r| {
                        let detail = format!("{} pairs, {} failures", r.checked, r.failures.len());
                        row(r.pass, detail, to_json(&r))
                    }),
                    Check::PropertyI => unreachable!("handled above"),
                };
                result.map_err(|e| (n, e))
            },
            |result| match result {
                Ok(row) => {
                    if !row.pass {
                        status = status.max(Status::Mismatch);
                    }
                    sink.emit(&row)
                }
                Err((n, e)) => {
                    status = status.max(Status::of_error(&e));
                    writeln!(err, "error: {name} {} n={n}: {e}", op.spec)?;
                    sink.emit(&VerifyRow {
                        check: name,
                        spec: &op.spec,
                        m,
                        n,
                        pass: false,
                        detail: format!("error: {e}"),
                        json: json!({ "error": e.to_string() }),
                    })
                }
            },
        )?;
        Ok(status.code())
    }

    fn export(
        &self,
        spec: &str,
        range: DegreeRange,
        variants: &[Variant],
        dir: &Path,
        out: &mut dyn Write,
    ) -> Result<i32, CliError> {
        let op = Operator::load(spec)?;
        op.require_complex(variants)?;
        check_budget(op.m(), range.end, self.cli.budget_entries, "export")?;
        fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("cannot create {}: {e}", dir.display())))?;
        let mut sink = Sink::new(self.cli.format, out, &["path", "n", "variant", "rows", "cols", "nnz"])?;
        for n in range.degrees() {
            for &variant in variants {
                let matrix =
                    boundary_matrix(&op.map, n, variant).map_err(|e| CliError::Input(format!("{}: {e}", op.spec)))?;
                let path = dir.join(format!("{}_{}_d{n}.sms", op.label(), variant.to_string().to_lowercase()));
                let file = fs::File::create(&path)
                    .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
                write_sms(&matrix, std::io::BufWriter::new(file))?;
                sink.emit(&ExportRow {
                    path: path.display().to_string(),
                    n,
                    variant: Some(variant),
                    shape: (matrix.rows(), matrix.cols()),
                    nnz: matrix.nnz(),
                })?;
            }
        }
        Ok(EXIT_OK)
    }

    fn cocycles(&self, m: usize, n: usize, dir: Option<&Path>, out: &mut dyn Write) -> Result<i32, CliError> {
        if m == 0 || n == 0 {
            return Err(CliError::Input("--m and --n must be positive".into()));
        }
        check_budget(m, n, self.cli.budget_entries, "cocycle dump")?;
        if let Some(dir) = dir {
            fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("cannot create {}: {e}", dir.display())))?;
        }
        let header = ["index", "representative", "support"];
        let mut sink = Sink::new(self.cli.format, out, &header)?;
        for (index, cochain) in cocycle_basis(m, n).into_iter().enumerate() {
            let mut representative = decode(m, n - 1, index as u64);
            representative.push(0);
            let row = CocycleRow { index, representative, cochain };
            match dir {
                None => sink.emit(&row)?,
                Some(dir) => {
                    let path = dir.join(format!("cocycle_m{m}_n{n}_{index:04}.json"));
                    fs::write(&path, format!("{}\n", row.json()))
                        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
                    sink.emit(&ExportRow {
                        path: path.display().to_string(),
                        n,
                        variant: None,
                        shape: (1, m.pow(n as u32)),
                        nnz: row.cochain.support().count(),
                    })?;
                }
            }
        }
        Ok(EXIT_OK)
    }
}

/// Serializes verifier reports without naming their concrete types.
mod erased {
    pub trait Ser {
        fn value(&self) -> serde_json::Value;
    }

    impl<T: serde::Serialize> Ser for T {
        fn value(&self) -> serde_json::Value {
            serde_json::to_value(self).expect("reports serialize")
        }
    }
}

fn check_name(check: Check) -> &'static str {
    match check {
        Check::Betti => "betti",
        Check::Torsion => "torsion",
        Check::Conjecture => "conjecture",
        Check::Splitting => "splitting",
        Check::Equivariance => "equivariance",
        Check::PropertyI => "property-i",
    }
}

/// `C_3`, `C3`, `3` or comma-separated lists of those.
fn parse_subset(subset: Option<&str>) -> Result<Vec<usize>, CliError> {
    let Some(s) = subset else {
        return Ok(golden::SIZES.to_vec());
    };
    let mut sizes = Vec::new();
    for part in s.split(',') {
        let t = part.trim();
        let digits = t.strip_prefix("C_").or_else(|| t.strip_prefix("C")).unwrap_or(t);
        let m: usize = digits.parse().map_err(|_| CliError::Input(format!("invalid table subset `{t}`")))?;
        if !golden::SIZES.contains(&m) {
            return Err(CliError::Input(format!("the reference table covers C_2..C_5, not C_{m}")));
        }
        if !sizes.contains(&m) {
            sizes.push(m);
        }
    }
    sizes.sort_unstable();
    Ok(sizes)
}

fn field_group(coeff: Coefficients, g: &AbelianGroup) -> String {
    match coeff {
        Coefficients::Z => g.to_string(),
        _ => match g.free_rank {
            0 => "0".into(),
            1 => coeff.to_string(),
            d => format!("{coeff}^{d}"),
        },
    }
}

struct HomologyRow<'a> {
    spec: &'a str,
    report: HomologyReport,
}

impl Row for HomologyRow<'_> {
    fn json(&self) -> Value {
        let mut v = serde_json::to_value(&self.report).expect("reports serialize");
        v.as_object_mut().expect("object").insert("spec".into(), self.spec.into());
        v
    }

    fn plain(&self) -> String {
        let r = &self.report;
        let symbol = match r.kind {
            ReportKind::Homology => format!("H_{}^{}", r.n, r.variant),
            ReportKind::Cohomology => format!("H^{}_{}", r.n, r.variant),
        };
        format!("{symbol}({}; {}) = {}", self.spec, r.coeff, field_group(r.coeff, &r.group))
    }

    fn csv(&self) -> Vec<String> {
        let r = &self.report;
        let kind = match r.kind {
            ReportKind::Homology => "homology",
            ReportKind::Cohomology => "cohomology",
        };
        vec![
            self.spec.to_string(),
            kind.into(),
            r.m.to_string(),
            r.n.to_string(),
            r.variant.to_string(),
            r.coeff.to_string(),
            group_csv(&r.group),
            r.elapsed_ms.to_string(),
        ]
    }
}

struct TableRow {
    cell: golden::TableCell,
    computed: Result<AbelianGroup, String>,
}

impl TableRow {
    fn matches(&self) -> bool {
        self.computed.as_ref().is_ok_and(|g| *g == self.cell.group)
    }

    fn computed_text(&self) -> String {
        match &self.computed {
            Ok(g) => g.to_string(),
            Err(e) => format!("error ({e})"),
        }
    }
}

impl Row for TableRow {
    fn json(&self) -> Value {
        let c = &self.cell;
        let mut v = json!({
            "m": c.m,
            "n": c.n,
            "variant": c.variant,
            "expected": group_json(&c.group),
            "match": self.matches(),
        });
        let obj = v.as_object_mut().expect("object");
        match &self.computed {
            Ok(g) => obj.insert("computed".into(), group_json(g)),
            Err(e) => obj.insert("error".into(), e.as_str().into()),
        };
        v
    }

    fn plain(&self) -> String {
        let c = &self.cell;
        let status = if self.matches() { "ok" } else { "MISMATCH" };
        format!(
            "C_{} n={} {:<3}  {:<16} expected {:<16} {status}",
            c.m,
            c.n,
            c.variant.to_string(),
            self.computed_text(),
            c.group.to_string()
        )
    }

    fn csv(&self) -> Vec<String> {
        let c = &self.cell;
        let computed = match &self.computed {
            Ok(g) => group_csv(g),
            Err(e) => format!("error: {e}"),
        };
        vec![
            c.m.to_string(),
            c.n.to_string(),
            c.variant.to_string(),
            computed,
            group_csv(&c.group),
            self.matches().to_string(),
        ]
    }
}

struct VerifyRow<'a> {
    check: &'static str,
    spec: &'a str,
    m: usize,
    n: usize,
    pass: bool,
    detail: String,
    json: Value,
}

impl Row for VerifyRow<'_> {
    fn json(&self) -> Value {
        let mut v = json!({ "check": self.check, "spec": self.spec, "m": self.m, "n": self.n, "pass": self.pass });
        if let Value::Object(extra) = &self.json {
            let obj = v.as_object_mut().expect("object");
            for (k, val) in extra {
                obj.entry(k.clone()).or_insert_with(|| val.clone());
            }
        }
        v
    }

    fn plain(&self) -> String {
        let verdict = if self.pass { "pass" } else { "FAIL" };
        format!("{} {} n={}: {verdict}  {}", self.check, self.spec, self.n, self.detail)
    }

    fn csv(&self) -> Vec<String> {
        vec![
            self.check.into(),
            self.spec.into(),
            self.m.to_string(),
            self.n.to_string(),
            self.pass.to_string(),
            self.detail.clone(),
        ]
    }
}

struct AxiomRow {
    name: String,
    description: String,
    witness: Option<Vec<Element>>,
}

impl Row for AxiomRow {
    fn json(&self) -> Value {
        json!({
            "check": self.name,
            "description": self.description,
            "pass": self.witness.is_none(),
            "witness": self.witness,
        })
    }

    fn plain(&self) -> String {
        match &self.witness {
            None => format!("{}: pass", self.description),
            Some(w) if w.is_empty() => format!("{}: FAIL", self.description),
            Some(w) => format!("{}: FAIL at {w:?}", self.description),
        }
    }

    fn csv(&self) -> Vec<String> {
        let witness = self
            .witness
            .as_ref()
            .map(|w| w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .unwrap_or_default();
        vec![self.name.clone(), self.description.clone(), self.witness.is_none().to_string(), witness]
    }
}

struct ExportRow {
    path: String,
    n: usize,
    variant: Option<Variant>,
    shape: (usize, usize),
    nnz: usize,
}

impl Row for ExportRow {
    fn json(&self) -> Value {
        json!({
            "path": self.path,
            "n": self.n,
            "variant": self.variant,
            "rows": self.shape.0,
            "cols": self.shape.1,
            "nnz": self.nnz,
        })
    }

    fn plain(&self) -> String {
        format!("wrote {} ({}x{}, {} nonzeros)", self.path, self.shape.0, self.shape.1, self.nnz)
    }

    fn csv(&self) -> Vec<String> {
        vec![
            self.path.clone(),
            self.n.to_string(),
            self.variant.map(|v| v.to_string()).unwrap_or_default(),
            self.shape.0.to_string(),
            self.shape.1.to_string(),
            self.nnz.to_string(),
        ]
    }
}

struct CocycleRow {
    index: usize,
    representative: Vec<Element>,
    cochain: Cochain,
}

impl Row for CocycleRow {
    fn json(&self) -> Value {
        json!({
            "index": self.index,
            "representative": self.representative,
            "cochain": serde_json::to_value(&self.cochain).expect("cochains serialize"),
        })
    }

    fn plain(&self) -> String {
        format!("F_{} orbit of {:?}: {} terms", self.index + 1, self.representative, self.cochain.support().count())
    }

    fn csv(&self) -> Vec<String> {
        let rep: Vec<String> = self.representative.iter().map(|x| x.to_string()).collect();
        vec![self.index.to_string(), rep.join(" "), self.cochain.support().count().to_string()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ybhom::complex::FaceMaps;

    #[test]
    fn subsets() {
        assert_eq!(parse_subset(None).unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(parse_subset(Some("C_3")).unwrap(), vec![3]);
        assert_eq!(parse_subset(Some("4, C2")).unwrap(), vec![2, 4]);
        assert!(parse_subset(Some("C_7")).is_err());
        assert!(parse_subset(Some("x")).is_err());
    }

    #[test]
    fn field_groups() {
        assert_eq!(field_group(Coefficients::Q, &AbelianGroup::free(9)), "Q^9");
        assert_eq!(field_group(Coefficients::Zp(3), &AbelianGroup::free(1)), "Z_3");
        assert_eq!(field_group(Coefficients::Q, &AbelianGroup::trivial()), "0");
        assert_eq!(field_group(Coefficients::Z, &"Z ⊕ Z_2".parse().unwrap()), "Z ⊕ Z_2");
    }

    #[test]
    fn faulty_faces_differ() {
        let c3 = make_cyclic(3);
        let f = FaultyFaces(c3.map());
        assert_ne!(f.fingerprint(), c3.map().fingerprint());
        let good = ybhom::complex::face_right(c3.map(), 1, &[0, 1, 2]).unwrap();
        let bad = ybhom::complex::face_right(&f, 1, &[0, 1, 2]).unwrap();
        assert_ne!(good, bad);
    }
}
