use std::fmt::Write as _;

use cycleparity_core::phi::{phi_with, MarkedPermutation, PhiRule, PhiStep};
use cycleparity_core::psi::{build_digraph, find_case1_pair, psi_with, LabeledConfiguration, PsiRule, PsiStep};
use cycleparity_core::stirling::{weighted_cycle_sum_closed_form, StirlingTable};
use cycleparity_core::verify::{
    all_passed, check_eq2, check_eq4, check_involution, check_theorem1, render_table, run_suite, to_json,
    Space, SuiteConfig, VerificationReport,
};
use cycleparity_core::Caps;
use serde_json::json;

use crate::{Format, Outcome, TableArgs, TraceArgs, VerifyArgs};

type CmdResult = Result<Outcome, String>;

fn require(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn check_k(n: usize, k: usize) -> Result<(), String> {
    require(n >= 2 && (1..n).contains(&k), || {
        format!("--k must satisfy 1 <= k <= n-1, got k={k} with n={n}")
    })
}

pub fn verify(args: &VerifyArgs) -> CmdResult {
    require(args.output.format != Format::Dot, || "verify supports --format table or json".into())?;
    let none = !(args.theorem1 || args.eq2 || args.eq4 || args.phi || args.psi);
    let every = args.all || none;
    let mut config = SuiteConfig::none(args.max_n);
    config.theorem1 = every || args.theorem1;
    config.eq2 = every || args.eq2;
    config.eq4 = every || args.eq4;
    config.phi = every || args.phi;
    config.psi = every || args.psi;

    let caps = Caps::default();
    let reports = match args.n {
        Some(n) => verify_single(&config, n, args.k, caps)?,
        None => {
            require(args.k.is_none(), || "--k needs --n".into())?;
            require((2..=caps.marked).contains(&args.max_n), || {
                format!("--max-n must be in [2, {}]", caps.marked)
            })?;
            require((2..=caps.labeled).contains(&args.psi_max_n), || {
                format!("--psi-max-n must be in [2, {}]", caps.labeled)
            })?;
            config.psi_cap = args.psi_max_n;
            run_suite(&config, |_| {}).map_err(|e| e.to_string())?
        }
    };

    let text = match args.output.format {
        Format::Json => {
            eprint!("{}", render_table(&reports));
            to_json(&reports) + "\n"
        }
        _ => render_table(&reports),
    };
    Ok(if all_passed(&reports) {
        Outcome::Pass(text)
    } else {
        Outcome::Fail(text)
    })
}

fn verify_single(
    config: &SuiteConfig,
    n: usize,
    k: Option<usize>,
    caps: Caps,
) -> Result<Vec<VerificationReport>, String> {
    require(n >= 1, || "--n must be at least 1".into())?;
    if let Some(k) = k {
        check_k(n, k)?;
    }
    let needs_two = config.theorem1 || config.eq4 || config.phi || config.psi;
    require(!needs_two || n >= 2, || "--n must be at least 2 for the selected checks".into())?;
    if config.theorem1 {
        require(n <= caps.permutations, || format!("theorem1 is capped at n = {}", caps.permutations))?;
    }
    if config.phi {
        require(n <= caps.marked, || format!("phi is capped at n = {}", caps.marked))?;
    }
    if config.psi {
        require(n <= caps.labeled, || format!("psi is capped at n = {}", caps.labeled))?;
    }
    let ks: Vec<usize> = match k {
        Some(k) => vec![k],
        None => (1..n).collect(),
    };

    let mut reports = Vec::new();
    let mut run = |r: cycleparity_core::Result<VerificationReport>| -> Result<(), String> {
        reports.push(r.map_err(|e| e.to_string())?);
        Ok(())
    };
    if config.theorem1 {
        run(check_theorem1(n))?;
    }
    if config.eq2 {
        run(check_eq2(n))?;
    }
    if config.eq4 {
        for &k in &ks {
            run(check_eq4(n, k))?;
        }
    }
    if config.phi {
        run(check_involution(Space::Phi {
            n,
            rule: config.phi_rule,
        }))?;
    }
    if config.psi {
        for &k in &ks {
            run(check_involution(Space::Psi {
                n,
                k,
                rule: config.psi_rule,
            }))?;
        }
    }
    Ok(reports)
}

fn phi_step_text(step: &PhiStep) -> String {
    match step {
        PhiStep::Transpose { i, j } => format!("case 1: multiply by ({i},{j})"),
        PhiStep::Fixed => "fixed point".into(),
        PhiStep::Split { a0 } => format!("case 2: {a0} splits off the n-cycle"),
        PhiStep::Merge { a0 } => format!("case 2: {a0} joins the cycle after 1"),
    }
}

fn psi_step_json(step: &PsiStep) -> serde_json::Value {
    let mut value = json!({ "step": step.to_string() });
    if let Some(chain) = step.chain() {
        value["chain"] = json!(chain.elements());
    }
    if let PsiStep::Surgery { surgery, .. } = step {
        value["pivot"] = json!(surgery.pivot);
        value["pivot_free"] = json!(surgery.pivot_free);
        value["u"] = json!(surgery.u);
        value["v"] = json!(surgery.v);
    }
    value
}

struct Orbit {
    space: &'static str,
    header: String,
    /// `(element, sign, what the map did to it)`
    steps: Vec<(String, i64, String, serde_json::Value)>,
    closed: bool,
}

impl Orbit {
    fn render(&self, format: Format) -> String {
        if format == Format::Json {
            let orbit: Vec<_> = self
                .steps
                .iter()
                .map(|(element, sign, _, detail)| {
                    let mut v = detail.clone();
                    v["element"] = json!(element);
                    v["sign"] = json!(sign);
                    v
                })
                .collect();
            let doc = json!({
                "space": self.space,
                "orbit": orbit,
                "closed": self.closed,
            });
            return serde_json::to_string_pretty(&doc).expect("json") + "\n";
        }
        let mut out = format!("{}\n", self.header);
        for (pos, (element, sign, step, _)) in self.steps.iter().enumerate() {
            let _ = writeln!(out, "x{pos}: {element}  sign {sign:+}");
            let _ = writeln!(out, "    {step}");
        }
        let len = self.steps.len();
        if len == 1 {
            out.push_str("orbit length 1 (fixed point)\n");
        } else if self.closed {
            let _ = writeln!(out, "x{len} = x0; orbit length {len}");
        } else {
            let _ = writeln!(out, "x{len} != x0; not an involution on this element");
        }
        out
    }
}

pub fn trace(args: &TraceArgs) -> CmdResult {
    let is_psi = args.element.matches('|').count() >= 2;
    let orbit = if is_psi {
        let k = args.k.ok_or("tracing a labeled configuration needs --k")?;
        let x0 = LabeledConfiguration::parse(&args.element, k).map_err(|e| e.to_string())?;
        check_declared_n(args.n, x0.n())?;
        if args.output.format == Format::Dot {
            require(find_case1_pair(&x0).is_none(), || {
                "no digraph: the configuration has a same-label pair outside C".into()
            })?;
            let d = build_digraph(&x0).map_err(|e| e.to_string())?;
            return Ok(Outcome::Pass(d.to_dot()));
        }
        trace_psi(&x0)?
    } else {
        require(args.output.format != Format::Dot, || "--format dot applies to labeled configurations only".into())?;
        let x0 = MarkedPermutation::parse(&args.element).map_err(|e| e.to_string())?;
        check_declared_n(args.n, x0.n())?;
        trace_phi(&x0)?
    };
    let text = orbit.render(args.output.format);
    Ok(if orbit.closed {
        Outcome::Pass(text)
    } else {
        Outcome::Fail(text)
    })
}

fn check_declared_n(declared: Option<usize>, actual: usize) -> Result<(), String> {
    match declared {
        Some(n) if n != actual => Err(format!("element is on [{actual}], not [{n}]")),
        _ => Ok(()),
    }
}

fn trace_psi(x0: &LabeledConfiguration) -> Result<Orbit, String> {
    let map = |x: &LabeledConfiguration| psi_with(x, PsiRule::BALANCED).map_err(|e| e.to_string());
    let header = format!("psi trace, n={}, k={}", x0.n(), x0.k());
    let (x1, s0) = map(x0)?;
    let mut steps = vec![(x0.to_string(), x0.sign(), s0.to_string(), psi_step_json(&s0))];
    if x1 == *x0 {
        return Ok(Orbit {
            space: "psi",
            header,
            steps,
            closed: true,
        });
    }
    let (x2, s1) = map(&x1)?;
    steps.push((x1.to_string(), x1.sign(), s1.to_string(), psi_step_json(&s1)));
    Ok(Orbit {
        space: "psi",
        header,
        steps,
        closed: x2 == *x0,
    })
}

fn trace_phi(x0: &MarkedPermutation) -> Result<Orbit, String> {
    let map = |x: &MarkedPermutation| phi_with(x, PhiRule::Standard).map_err(|e| e.to_string());
    let header = format!("phi trace, n={}", x0.n());
    let (x1, s0) = map(x0)?;
    let detail = |s: &PhiStep| json!({ "step": phi_step_text(s) });
    let mut steps = vec![(x0.to_string(), x0.sign(), phi_step_text(&s0), detail(&s0))];
    if x1 == *x0 {
        return Ok(Orbit {
            space: "phi",
            header,
            steps,
            closed: true,
        });
    }
    let (x2, s1) = map(&x1)?;
    steps.push((x1.to_string(), x1.sign(), phi_step_text(&s1), detail(&s1)));
    Ok(Orbit {
        space: "phi",
        header,
        steps,
        closed: x2 == *x0,
    })
}

pub fn table(args: &TableArgs) -> CmdResult {
    require(args.output.format != Format::Dot, || "table supports --format table or json".into())?;
    let stirling = args.stirling || !args.eq4;
    let mut doc = serde_json::Map::new();
    let mut out = String::new();

    if stirling {
        require(args.max_n >= 1, || "--max-n must be at least 1".into())?;
        let t = StirlingTable::new(args.max_n);
        let mut rows = Vec::new();
        out.push_str("c(n,i), i = 1..n\n");
        for n in 1..=args.max_n {
            let row: Vec<String> = t.row(n).unwrap()[1..].iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "n={n}: {}", row.join(" "));
            rows.push(row);
        }
        doc.insert("stirling".into(), json!(rows));
    }
    if args.eq4 {
        let sizes: Vec<usize> = match args.n {
            Some(n) => {
                require(n >= 2, || "--n must be at least 2".into())?;
                vec![n]
            }
            None => {
                require(args.max_n >= 2, || "--max-n must be at least 2".into())?;
                (2..=args.max_n).collect()
            }
        };
        if stirling {
            out.push('\n');
        }
        out.push_str("(-1)^k k! (n-k-1)!\n");
        let mut rows = serde_json::Map::new();
        for n in sizes {
            let values: Vec<String> = (1..n)
                .map(|k| weighted_cycle_sum_closed_form(n, k).unwrap().to_string())
                .collect();
            let cells: Vec<String> = values
                .iter()
                .enumerate()
                .map(|(i, v)| format!("k={}: {v}", i + 1))
                .collect();
            let _ = writeln!(out, "n={n}  {}", cells.join("  "));
            rows.insert(n.to_string(), json!(values));
        }
        doc.insert("eq4".into(), serde_json::Value::Object(rows));
    }
    if args.output.format == Format::Json {
        out = serde_json::to_string_pretty(&doc).expect("json") + "\n";
    }
    Ok(Outcome::Pass(out))
}
