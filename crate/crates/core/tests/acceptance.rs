//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use spectralrec::verify::{self, Bounds, Case, Context};
use spectralrec::Result;

struct Criterion {
    id: u32,
    title: &'static str,
    budget: Duration,
    run: fn(&Context, &Bounds) -> Result<Vec<Case>>,
}

fn structural(ctx: &Context, b: &Bounds) -> Result<Vec<Case>> {
    let mut out = verify::eo_identities(ctx, b)?;
    out.extend(verify::loop_equations(ctx, b)?);
    out.extend(verify::gw_identities(ctx, b)?.into_iter().filter(|c| c.suite != "spot"));
    Ok(out)
}

const CRITERIA: [Criterion; 6] = [
    Criterion {
        id: 1,
        title: "table reproduction",
        budget: Duration::from_secs(60),
        run: verify::table7,
    },
    Criterion {
        id: 2,
        title: "generating function vs partition sums and recursion",
        budget: Duration::from_secs(300),
        run: verify::theorem1,
    },
    Criterion {
        id: 3,
        title: "exceptional cases",
        budget: Duration::from_secs(60),
        run: verify::exceptional,
    },
    Criterion {
        id: 4,
        title: "top coefficients",
        budget: Duration::from_secs(60),
        run: |ctx, _| verify::theorem2(ctx),
    },
    Criterion {
        id: 5,
        title: "structural identities",
        budget: Duration::from_secs(300),
        run: structural,
    },
    Criterion {
        id: 6,
        title: "oracle spot values",
        budget: Duration::from_secs(60),
        run: verify::spot_values,
    },
];

fn main() -> ExitCode {
    let bounds = Bounds::default();
    let mut all = true;
    for c in &CRITERIA {
        // fresh memo tables so each timing stands alone
        let ctx = Context::new();
        let t = Instant::now();
        let res = (c.run)(&ctx, &bounds);
        let dt = t.elapsed();
        let (ok, detail) = match &res {
            Ok(cases) => {
                let bad: Vec<&Case> = cases.iter().filter(|x| !x.report.passed).collect();
                let checks: usize = cases.iter().map(|x| x.report.cases).sum();
                let detail = match bad.first() {
                    Some(b) => format!("{}: {}", b.name, b.report.failure.clone().unwrap_or_default()),
                    None => format!("{} cases, {checks} exact checks", cases.len()),
                };
                (bad.is_empty() && !cases.is_empty(), detail)
            }
            Err(e) => (false, e.to_string()),
        };
        let in_time = dt <= c.budget;
        let status = if ok && in_time { "PASS" } else { "FAIL" };
        let time = format!("{:.1}s of {}s", dt.as_secs_f64(), c.budget.as_secs());
        println!("{status} criterion {} ({}): {detail}; {time}", c.id, c.title);
        all &= ok && in_time;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
