use std::fmt::Write;

use serde_json::{json, Value};

use spectralrec::eo::max_pole_order;
use spectralrec::exact::render;
use spectralrec::expand::Form;
use spectralrec::golden::diff_table7;
use spectralrec::gw::checks::check_closed_forms;
use spectralrec::gw::{closed_for, GWKey};
use spectralrec::verify::{Bounds, Case, Context};
use spectralrec::{Error, Rat};

use crate::format::*;
use crate::{check_budget, Failure, Format, Oracle};

fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json renders");
    s.push('\n');
    s
}

pub fn omega(ctx: &Context, g: u32, n: u32, format: Format, out: &mut String) -> Result<(), Failure> {
    check_budget(g, n)?;
    let w = ctx.engine.omega(g, n)?;
    let terms = w.expanded_terms();
    match format {
        Format::Json => out.push_str(&to_pretty(&w.to_json())),
        Format::Text => {
            writeln!(out, "omega^{g}_{n}: {} terms, max pole order {}", terms.len(), w.max_order()).unwrap();
            for (forms, c) in &terms {
                let f: Vec<String> = forms.iter().enumerate().map(|(i, f)| pole_text(f, i + 1)).collect();
                writeln!(out, "{}  {}", render(c), f.join(" ")).unwrap();
            }
        }
        Format::Csv => {
            let head: Vec<String> = (1..=n).map(|i| format!("slot{i}")).collect();
            writeln!(out, "coeff,{}", head.join(",")).unwrap();
            for (forms, c) in &terms {
                let f: Vec<String> = forms.iter().map(pole_csv).collect();
                writeln!(out, "{},{}", render(c), f.join(",")).unwrap();
            }
        }
        Format::Latex => {
            writeln!(out, "\\omega^{{{g}}}_{{{n}}} = ").unwrap();
            for (i, (forms, c)) in terms.iter().enumerate() {
                let f: Vec<String> = forms.iter().enumerate().map(|(i, f)| pole_latex(f, i + 1)).collect();
                let lead = if i == 0 { "" } else { "+ " };
                writeln!(out, "{lead}\\left({}\\right) {}", rat_latex(c), f.join(" ")).unwrap();
            }
        }
    }
    if w.max_order() > max_pole_order(g, n) {
        return Err(Failure {
            code: 1,
            message: format!("pole order {} exceeds {}", w.max_order(), max_pole_order(g, n)),
        });
    }
    Ok(())
}

pub fn gw(ctx: &Context, g: u32, b: &[u32], oracle: Oracle, format: Format, out: &mut String) -> Result<(), Failure> {
    let key = GWKey::stationary(g, b);
    let closed = || -> Result<Rat, Error> {
        let (c, u) = closed_for(g, b)
            .ok_or_else(|| Error::Unsupported(format!("no closed formula for genus {g} with b = {b:?}")))?;
        c.eval(&u)
    };
    let mut values: Vec<(&str, Rat)> = Vec::new();
    match oracle {
        Oracle::Plancherel => values.push(("plancherel", ctx.plancherel.connected_stationary(g, b))),
        Oracle::Toprec => values.push(("toprec", ctx.toprec.eval(&key)?)),
        Oracle::Closed => values.push(("closed", closed()?)),
        Oracle::All => {
            values.push(("plancherel", ctx.plancherel.connected_stationary(g, b)));
            if g <= 1 {
                values.push(("toprec", ctx.toprec.eval(&key)?));
            }
            if closed_for(g, b).is_some() {
                values.push(("closed", closed()?));
            }
        }
    }
    let agree = values.windows(2).all(|w| w[0].1 == w[1].1);
    let all = oracle == Oracle::All;
    let insertions = key.to_json()["insertions"].clone();
    match format {
        Format::Json => {
            let v = if all {
                let vals: Vec<Value> = values
                    .iter()
                    .map(|(o, v)| json!({"oracle": o, "value": render(v)}))
                    .collect();
                json!({"g": g, "insertions": insertions, "values": vals, "agree": agree})
            } else {
                let (o, v) = &values[0];
                json!({"g": g, "insertions": insertions, "value": render(v), "oracle": o})
            };
            out.push_str(&to_pretty(&v));
        }
        Format::Text => {
            for (o, v) in &values {
                writeln!(out, "{key} = {} [{o}]", render(v)).unwrap();
            }
            if all {
                writeln!(out, "agree={agree}").unwrap();
            }
        }
        Format::Csv => {
            writeln!(out, "g,b,oracle,value").unwrap();
            let bs: Vec<String> = b.iter().map(|x| x.to_string()).collect();
            for (o, v) in &values {
                writeln!(out, "{g},{},{o},{}", csv_field(&bs.join(",")), render(v)).unwrap();
            }
            if all {
                writeln!(out, "{g},{},agree,{agree}", csv_field(&bs.join(","))).unwrap();
            }
        }
        Format::Latex => {
            let ins: Vec<String> = key.insertions.iter().map(insertion_latex).collect();
            let (_, v) = &values[0];
            writeln!(out, "\\left\\langle {} \\right\\rangle^{{{g}}} = {}", ins.join(" "), rat_latex(v)).unwrap();
        }
    }
    if !agree {
        return Err(Failure {
            code: 1,
            message: "oracles disagree".into(),
        });
    }
    Ok(())
}

type Filter = (Option<u32>, Option<u32>, Option<usize>);

pub fn table7(ctx: &Context, filter: Filter, format: Format, out: &mut String) -> Result<(), Failure> {
    let (fg, fn_, fk) = filter;
    let rows: Vec<_> = diff_table7(&ctx.engine)?
        .into_iter()
        .filter(|d| fg.is_none_or(|g| d.g == g) && fn_.is_none_or(|n| d.n == n) && fk.is_none_or(|k| d.k == k))
        .collect();
    let families = if filter == (None, None, None) {
        let b = Bounds::default();
        Some(check_closed_forms(
            &ctx.plancherel,
            &ctx.toprec,
            b.closed_bound,
            b.npoint_bound,
            b.npoint_max_n,
        )?)
    } else {
        None
    };
    let label = |f: Form| if f == Form::N { "N" } else { "m" };
    let names = |n: u32| -> Vec<String> { (1..=n).map(|i| format!("b{i}")).collect() };
    let mut failed = 0;
    for d in rows.iter().filter(|d| !d.matches()) {
        failed += 1;
        let nm = names(d.n);
        eprintln!(
            "mismatch {} (g,n,k)=({},{},{}): expected {} got {}",
            label(d.form),
            d.g,
            d.n,
            d.k,
            d.expected.display_with(&nm),
            d.computed.display_with(&nm)
        );
    }
    match format {
        Format::Json => {
            let rs: Vec<Value> = rows
                .iter()
                .map(|d| {
                    json!({
                        "g": d.g, "n": d.n, "k": d.k, "form": label(d.form),
                        "computed": d.computed.display_with(&names(d.n)),
                        "matches": d.matches(),
                    })
                })
                .collect();
            let mut v = json!({ "rows": rs });
            if let Some(f) = &families {
                v["families"] = json!({"passed": f.passed, "cases": f.cases});
            }
            out.push_str(&to_pretty(&v));
        }
        Format::Text => {
            for d in &rows {
                let status = if d.matches() { "ok" } else { "MISMATCH" };
                writeln!(
                    out,
                    "{} (g,n,k)=({},{},{}) {status}: {}",
                    label(d.form),
                    d.g,
                    d.n,
                    d.k,
                    d.computed.display_with(&names(d.n))
                )
                .unwrap();
            }
            if let Some(f) = &families {
                let status = if f.passed { "ok" } else { "MISMATCH" };
                writeln!(out, "closed-form families {status}: {} cases", f.cases).unwrap();
            }
        }
        Format::Csv => {
            writeln!(out, "g,n,k,form,status,polynomial").unwrap();
            for d in &rows {
                let status = if d.matches() { "ok" } else { "mismatch" };
                let p = d.computed.display_with(&names(d.n));
                writeln!(out, "{},{},{},{},{status},{}", d.g, d.n, d.k, label(d.form), csv_field(&p)).unwrap();
            }
        }
        Format::Latex => {
            writeln!(out, "\\begin{{tabular}}{{ccc|l|l}}").unwrap();
            writeln!(out, "$g$ & $n$ & $k$ & $N^g_{{n,k}}$ & $m^g_{{n,k}}$ \\\\ \\hline").unwrap();
            for d in rows.iter().filter(|d| d.form == Form::N) {
                let m = rows.iter().find(|e| e.form == Form::M && (e.g, e.n, e.k) == (d.g, d.n, d.k));
                let nm: Vec<String> = (1..=d.n).map(|i| format!("b_{i}")).collect();
                let mtex = m.map(|e| e.computed.latex_with(&nm)).unwrap_or_default();
                writeln!(
                    out,
                    "{} & {} & {} & ${}$ & ${}$ \\\\",
                    d.g,
                    d.n,
                    d.k,
                    d.computed.latex_with(&nm),
                    mtex
                )
                .unwrap();
            }
            writeln!(out, "\\end{{tabular}}").unwrap();
        }
    }
    if let Some(f) = families.as_ref().filter(|f| !f.passed) {
        eprintln!("closed-form families: {}", f.failure.clone().unwrap_or_default());
        failed += 1;
    }
    if failed > 0 {
        return Err(Failure {
            code: 1,
            message: format!("{failed} mismatches"),
        });
    }
    Ok(())
}

pub fn report(cases: &[Case], format: Format, out: &mut String) -> Result<(), Failure> {
    let status = |c: &Case| if c.report.passed { "PASS" } else { "FAIL" };
    match format {
        Format::Json => {
            let v: Vec<Value> = cases
                .iter()
                .map(|c| {
                    json!({
                        "suite": c.suite, "case": c.name, "passed": c.report.passed,
                        "checks": c.report.cases, "failure": c.report.failure,
                    })
                })
                .collect();
            out.push_str(&to_pretty(&Value::Array(v)));
        }
        Format::Text => {
            for c in cases {
                writeln!(out, "{} [{}] {} ({} checks)", status(c), c.suite, c.name, c.report.cases).unwrap();
                if let Some(f) = &c.report.failure {
                    writeln!(out, "    {f}").unwrap();
                }
            }
        }
        Format::Csv => {
            writeln!(out, "suite,case,status,checks,failure").unwrap();
            for c in cases {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    c.suite,
                    csv_field(&c.name),
                    status(c),
                    c.report.cases,
                    csv_field(c.report.failure.as_deref().unwrap_or(""))
                )
                .unwrap();
            }
        }
        Format::Latex => {
            writeln!(out, "\\begin{{tabular}}{{llrl}}").unwrap();
            for c in cases {
                writeln!(
                    out,
                    "{} & {} & {} & {} \\\\",
                    c.suite,
                    latex_escape(&c.name),
                    c.report.cases,
                    status(c)
                )
                .unwrap();
            }
            writeln!(out, "\\end{{tabular}}").unwrap();
        }
    }
    let failed = cases.iter().filter(|c| !c.report.passed).count();
    if failed > 0 {
        return Err(Failure {
            code: 1,
            message: format!("{failed} of {} cases failed", cases.len()),
        });
    }
    Ok(())
}
