use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use genera::acceptance;
use genera::cells::{cofiber_homotopy, dsu_easy_with, CellComplex, GradedRingTable};
use genera::divis::{d_clas, d_su, d_su_easy_formula, divis_table, euler_verdict, TableRow};
use genera::genus::{genus_compute, genus_euler, ChernData};
use genera::hodge::{hk_divisibility_with, hk_match};
use genera::jacobi::{jf_check_elliptic_law, jf_dclas_via_basis, jf_generator, jf_generator_a, JacobiForm, JacobiRecord};
use serde_json::Value;

use crate::output::{Report, Table};
use crate::{CellsCmd, Command, Config, DivisCmd, GenusCmd, HkCmd, JfCmd};

/// A report and whether everything it checks holds.
pub type Outcome = (Report, bool);

impl Config {
    fn data_dir(&self) -> PathBuf {
        self.data_dir
            .clone()
            .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data"))
    }

    /// `path` itself if it exists or is absolute, otherwise relative to the data directory.
    fn resolve(&self, path: &Path) -> PathBuf {
        if path.is_absolute() || path.exists() {
            path.to_path_buf()
        } else {
            self.data_dir().join(path)
        }
    }

    fn read(&self, path: &Path) -> Result<String> {
        let p = self.resolve(path);
        std::fs::read_to_string(&p).with_context(|| format!("cannot read {}", p.display()))
    }

    /// A file path, or the name of a shipped table.
    fn table(&self, spec: &str) -> Result<GradedRingTable> {
        let p = self.resolve(Path::new(spec));
        if p.is_file() {
            return GradedRingTable::from_json(&self.read(&p)?).with_context(|| format!("in {}", p.display()));
        }
        GradedRingTable::builtin(spec).with_context(|| format!("no table file or shipped table `{spec}`"))
    }

    fn complex(&self, spec: &str) -> Result<CellComplex> {
        let p = self.resolve(Path::new(spec));
        if p.is_file() {
            return CellComplex::from_json(&self.read(&p)?).with_context(|| format!("in {}", p.display()));
        }
        CellComplex::builtin(spec).with_context(|| format!("no complex file or shipped complex `{spec}`"))
    }

    fn chern(&self, path: &Path) -> Result<ChernData> {
        ChernData::from_json(&self.read(path)?).with_context(|| format!("in {}", path.display()))
    }
}

pub fn run(cfg: &Config, cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Jf(c) => jf(cfg, c),
        Command::Genus(c) => genus(cfg, c),
        Command::Divis(c) => divis(c),
        Command::Cells(c) => cells(cfg, c),
        Command::Hk(c) => hk(c),
        Command::Selftest => Ok(selftest()),
    }
}

fn form_report(name: &str, f: &JacobiForm) -> Result<Report> {
    let rec = f.to_record();
    let mut t = Table::new("terms", &["n", "r", "coeff"]);
    for (n, r, c) in &rec.terms {
        let r: Vec<String> = r.iter().map(i32::to_string).collect();
        t.push([n.to_string(), r.join(" "), c.clone()]);
    }
    let rec = serde_json::to_value(&rec)?;
    let mut report = Report::default().field("name", name);
    if let Value::Object(m) = rec {
        for (k, v) in m {
            report = report.value(&k, v);
        }
    }
    Ok(report.with_text_table(t))
}

fn jf(cfg: &Config, cmd: JfCmd) -> Result<Outcome> {
    match cmd {
        JfCmd::Gen { name } => {
            let f = if name == "a" {
                jf_generator_a(cfg.qmax)
            } else {
                jf_generator(name.parse()?, cfg.qmax)?
            };
            Ok((form_report(&name, &f)?, true))
        }
        JfCmd::Check { file, lambda } => {
            let rec: JacobiRecord = serde_json::from_str(&cfg.read(&file)?).context("not a Jacobi form record")?;
            let f = JacobiForm::from_record(&rec)?;
            let lambdas = lambda.map_or(vec![-1, 1], |l| vec![l]);
            let mut t = Table::new("checks", &["lambda", "checked", "violations", "first_violation"]);
            let mut ok = true;
            for l in lambdas {
                let r = jf_check_elliptic_law(&f, l)?;
                ok &= r.passed() && !r.is_vacuous();
                let first = r.violations.first().map_or(String::new(), |v| {
                    format!("c({}, {}) = {} vs c({}, {}) = {}", v.n, v.r2, v.lhs, v.partner_n, v.partner_r2, v.rhs)
                });
                t.push([l.to_string(), r.checked.len().to_string(), r.violations.len().to_string(), first]);
            }
            let report = Report::default()
                .field("weight2", f.weight2)
                .field("index2", f.index2)
                .field("qmax", f.qmax())
                .flag("passed", ok)
                .with_table(t);
            Ok((report, ok))
        }
    }
}

fn genus(cfg: &Config, cmd: GenusCmd) -> Result<Outcome> {
    match cmd {
        GenusCmd::Compute { chern, nvars } => {
            let m = cfg.chern(&chern)?;
            let g = genus_compute(&m, nvars, cfg.qmax)?;
            let label = m.label.clone();
            Ok((form_report(&label, &g)?.field("dimc", m.dimc), true))
        }
        GenusCmd::Euler { chern } => {
            let m = cfg.chern(&chern)?;
            let ev = genus_euler(&m, cfg.qmax)?;
            let report = Report::default()
                .field("label", &m.label)
                .field("dimc", m.dimc)
                .field("euler", ev.coeff(0))
                .field("qmax", cfg.qmax);
            Ok((report, true))
        }
    }
}

fn divis(cmd: DivisCmd) -> Result<Outcome> {
    match cmd {
        DivisCmd::Table { kmax } => {
            let mut t = Table::new("rows", &TableRow::HEADER);
            for row in divis_table(kmax)? {
                t.push(row.cells());
            }
            Ok((Report::default().with_table(t), true))
        }
        DivisCmd::VerifyClas { kmax } => {
            let mut t = Table::new("rows", &["k", "closed_form", "lattice", "agree"]);
            let mut ok = true;
            for k in 1..=kmax {
                let a = d_clas(k)?;
                let b = jf_dclas_via_basis(k);
                ok &= a == b;
                t.push([k.to_string(), a.to_plain(), b.to_plain(), (a == b).to_string()]);
            }
            Ok((Report::default().flag("agree", ok).with_table(t), ok))
        }
        DivisCmd::Verdict { structure, k, euler } => {
            let v = euler_verdict(structure.parse()?, k, euler)?;
            let report = Report::default()
                .field("structure", v.structure)
                .field("k", v.k)
                .field("euler", v.euler)
                .field("constant", v.constant.to_plain())
                .flag("divides", v.divides)
                .field("note", &v.note);
            Ok((report, v.divides))
        }
    }
}

fn cells(cfg: &Config, cmd: CellsCmd) -> Result<Outcome> {
    match cmd {
        CellsCmd::Homotopy { complex, table, deg, cells } => {
            let mut c = cfg.complex(&complex)?;
            if let Some(ij) = cells {
                c = c.subquotient(ij[0], ij[1])?;
            }
            let t = cfg.table(&table)?;
            let g = cofiber_homotopy(&c, &t, deg)?;
            let report = Report::default()
                .field("complex", &c.name)
                .field("table", &t.name)
                .field("degree", deg)
                .field("cokernel", &g.cokernel)
                .field("kernel", &g.kernel)
                .field("order", g.order().to_plain())
                .field("group", g.group.as_ref().map_or("undetermined".to_string(), ToString::to_string))
                .flag("ambiguous", g.is_ambiguous());
            Ok((report, true))
        }
        CellsCmd::Order { table, element } => {
            let t = cfg.table(&table)?;
            let parts = t.parse_elements(&element)?;
            if parts.is_empty() {
                bail!("`{element}` is the zero element of no particular degree");
            }
            let order = t.direct_sum_order(&parts)?;
            let degrees: Vec<String> = parts.iter().map(|e| e.degree.to_string()).collect();
            let shown: Vec<String> = parts.iter().map(|e| t.format_element(e)).collect();
            let report = Report::default()
                .field("table", &t.name)
                .list("element", shown)
                .list("degree", degrees)
                .field("order", order.to_plain());
            Ok((report, true))
        }
        CellsCmd::DsuEasy { kmax } => {
            let t = GradedRingTable::builtin("pi_tmf")?;
            let eta = CellComplex::builtin("tmf_eta")?;
            let mut table = Table::new("rows", &["k", "dsu_easy", "formula", "d_su", "divides"]);
            let mut ok = true;
            for k in 1..=kmax {
                let easy = dsu_easy_with(k, &t, &eta)?;
                let formula = d_su_easy_formula(k)?;
                let exact = d_su(k)?;
                let divides = easy.divides_order(exact);
                ok &= divides && easy == formula;
                table.push([
                    k.to_string(),
                    easy.to_plain(),
                    formula.to_plain(),
                    exact.to_plain(),
                    divides.to_string(),
                ]);
            }
            Ok((Report::default().flag("consistent", ok).with_table(table), ok))
        }
    }
}

fn hk(cmd: HkCmd) -> Result<Outcome> {
    let HkCmd::Solve { k } = cmd;
    let s = hk_match(k, 1)?;
    let mut t = Table::new("equations", &["label", "expression"]);
    for e in &s.equations {
        t.push([e.label.clone(), format!("{} = 0", e.expr)]);
    }
    let parity: Vec<String> = s.parity.iter().map(|(n, e, m)| format!("{n} = {e} = 0 mod {m}")).collect();
    let report = Report::default()
        .field("k", k)
        .list("unknowns", &s.unknowns)
        .list("relations", s.relations())
        .list("parity", parity)
        .list("integral", &s.integrality)
        .field("euler_divisor", hk_divisibility_with(k, true)?)
        .field("euler_divisor_without_parity", hk_divisibility_with(k, false)?)
        .with_table(t);
    Ok((report, true))
}

fn selftest() -> Outcome {
    let results = acceptance::run_all();
    let mut t = Table::new("criteria", &["id", "title", "passed", "detail"]);
    for c in &results {
        t.push([c.id.to_string(), c.title.to_string(), c.passed.to_string(), c.detail.clone()]);
    }
    let passed = results.iter().filter(|c| c.passed).count();
    let ok = passed == results.len();
    let report = Report::default()
        .field("passed", passed)
        .field("total", results.len())
        .flag("all_passed", ok)
        .with_table(t);
    (report, ok)
}
