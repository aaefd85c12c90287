//! Verification batteries, each a fixed-order list of named checks.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::eo::checks::{self, CheckReport};
use crate::eo::{is_stable, Engine};
use crate::error::{Error, Result};
use crate::exact::{big, factorial, int, rat, render, Rat};
use crate::expand::{
    b_vectors, check_m_divisor_string_with, expansion_0_1, expansion_0_2, m_to_p, Expansion,
};
use crate::golden::{diff_table7, TABLE7_ROWS};
use crate::gw::checks::{
    check_closed_forms, check_gw_equations, check_oracle_agreement, check_vacuum, stationary_vectors,
};
use crate::gw::{check_eval_props, closed_form, closed_forms, p_quasi, GWKey, Plancherel, TopRec};
use crate::psi::{check_top_coefficients, Psi};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Theorem1,
    Theorem2,
    Loop,
    EoIdentities,
    GwIdentities,
    Exceptional,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [
        Suite::Theorem1,
        Suite::Theorem2,
        Suite::Loop,
        Suite::EoIdentities,
        Suite::GwIdentities,
        Suite::Exceptional,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Theorem1 => "theorem1",
            Suite::Theorem2 => "theorem2",
            Suite::Loop => "loop",
            Suite::EoIdentities => "eo-identities",
            Suite::GwIdentities => "gw-identities",
            Suite::Exceptional => "exceptional",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .iter()
            .chain(std::iter::once(&Suite::All))
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct Bounds {
    /// `sum b_i` for the generating-function comparison.
    pub theorem1_weight: i64,
    /// Total power for the string, divisor and dilaton equations.
    pub gw_weight: u32,
    /// `2g - 2 + n` for the loop equations.
    pub loop_chi: i64,
    /// `2g - 2 + n` for the other recursion identities.
    pub eo_chi: i64,
    pub divisor_string_bound: i64,
    pub props_bound: i64,
    pub closed_bound: i64,
    pub npoint_bound: i64,
    pub npoint_max_n: usize,
    pub oracle_max_n: usize,
    pub oracle_max_b: u32,
    pub exceptional_bound: i64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            theorem1_weight: 10,
            gw_weight: 12,
            loop_chi: 5,
            eo_chi: 4,
            divisor_string_bound: 6,
            props_bound: 4,
            closed_bound: 4,
            npoint_bound: 3,
            npoint_max_n: 6,
            oracle_max_n: 4,
            oracle_max_b: 6,
            exceptional_bound: 9,
        }
    }
}

/// Shared oracles and memo tables.
#[derive(Default)]
pub struct Context {
    pub engine: Engine,
    pub plancherel: Plancherel,
    pub toprec: TopRec,
    pub psi: Psi,
}

impl Context {
    pub fn new() -> Self {
        Context::default()
    }
}

#[derive(Clone, Debug)]
pub struct Case {
    pub suite: &'static str,
    pub name: String,
    pub report: CheckReport,
}

fn case(suite: &'static str, name: impl Into<String>, report: CheckReport) -> Case {
    Case {
        suite,
        name: name.into(),
        report,
    }
}

fn single(ok: bool, what: impl FnOnce() -> String) -> CheckReport {
    let mut r = CheckReport::new();
    r.record(ok, what);
    r
}

pub fn run(ctx: &Context, suite: Suite, bounds: &Bounds) -> Result<Vec<Case>> {
    match suite {
        Suite::Theorem1 => theorem1(ctx, bounds),
        Suite::Theorem2 => theorem2(ctx),
        Suite::Loop => loop_equations(ctx, bounds),
        Suite::EoIdentities => eo_identities(ctx, bounds),
        Suite::GwIdentities => gw_identities(ctx, bounds),
        Suite::Exceptional => exceptional(ctx, bounds),
        Suite::All => {
            let mut out = Vec::new();
            for s in Suite::EACH {
                out.extend(run(ctx, s, bounds)?);
            }
            Ok(out)
        }
    }
}

/// Stable `(g, n)` with `g <= max_g`, `n >= 1` and `2g - 2 + n <= chi`, by genus then `n`.
pub fn envelope(max_g: u32, chi: i64) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for g in 0..=max_g {
        for n in 1u32.. {
            if 2 * g as i64 - 2 + n as i64 > chi {
                break;
            }
            if is_stable(g, n) {
                out.push((g, n));
            }
        }
    }
    out
}

fn b_factorials(b: &[i64]) -> Rat {
    b.iter().map(|&x| big(factorial(x as u64))).product()
}

/// `M^g_n(b) = prod b_i! <prod tau_{b_i - 1}(omega)>^g` against the partition
/// sums, and for `g <= 1` the recursion, on all `b` with `sum b <= weight`.
/// For `g <= 1` also compares the p-form polynomials directly.
pub fn theorem1(ctx: &Context, bounds: &Bounds) -> Result<Vec<Case>> {
    let mut out = Vec::new();
    for (g, n) in envelope(2, 4) {
        let x = Expansion::compute(&ctx.engine, g, n)?;
        let mut rep = CheckReport::new();
        for b in b_vectors(n as usize, bounds.theorem1_weight, bounds.theorem1_weight) {
            let m = x.m_value(&b)?;
            let powers: Vec<u32> = b.iter().map(|&v| v as u32 - 1).collect();
            let pl = b_factorials(&b) * ctx.plancherel.connected_stationary(g, &powers);
            let tr = if g <= 1 {
                Some(b_factorials(&b) * ctx.toprec.stationary(g, &powers)?)
            } else {
                None
            };
            let ok = m == pl && tr.as_ref().is_none_or(|t| *t == m);
            rep.record(ok, || {
                format!(
                    "M^{g}_{n}{b:?} = {}, partition sums {}, recursion {}",
                    render(&m),
                    render(&pl),
                    tr.as_ref().map(render).unwrap_or_else(|| "-".into())
                )
            });
        }
        out.push(case("theorem1", format!("M^{g}_{n} values, sum b <= {}", bounds.theorem1_weight), rep));
        if g <= 1 {
            let ours = m_to_p(&x.mq);
            let theirs = p_quasi(&ctx.toprec, g, n)?;
            let rep = single(ours == theirs, || format!("p-form of (g,n)=({g},{n}):\n{ours}vs\n{theirs}"));
            out.push(case("theorem1", format!("p^{g}_{n} polynomials"), rep));
        }
    }
    Ok(out)
}

/// Top-degree coefficients against psi intersection numbers on the table rows.
pub fn theorem2(ctx: &Context) -> Result<Vec<Case>> {
    let mut out = Vec::new();
    for (g, n) in TABLE7_ROWS {
        let x = Expansion::compute(&ctx.engine, g, n)?;
        let pq = m_to_p(&x.mq);
        let gwq = if g <= 1 { Some(p_quasi(&ctx.toprec, g, n)?) } else { None };
        for k in 0..=n as usize {
            let mut rep = check_top_coefficients(&ctx.psi, &x.mq, k);
            rep.merge(check_top_coefficients(&ctx.psi, &pq, k));
            if let Some(q) = &gwq {
                rep.merge(check_top_coefficients(&ctx.psi, q, k));
            }
            out.push(case("theorem2", format!("top coefficients (g,n,k)=({g},{n},{k})"), rep));
        }
    }
    let pin = ctx.psi.intersection(2, &[4]);
    out.push(case(
        "theorem2",
        "<tau_4>_2 = 1/1152",
        single(pin == rat(1, 1152), || format!("<tau_4>_2 = {}", render(&pin))),
    ));
    Ok(out)
}

pub fn loop_equations(ctx: &Context, bounds: &Bounds) -> Result<Vec<Case>> {
    let mut out = Vec::new();
    for g in 0..=3u32 {
        for nt in 1u32.. {
            if 2 * g as i64 - 2 + nt as i64 > bounds.loop_chi {
                break;
            }
            let rep = checks::check_loop_equation(&ctx.engine, g, nt)?;
            out.push(case("loop", format!("loop equation g={g} n={nt}"), rep));
        }
    }
    Ok(out)
}

pub fn eo_identities(ctx: &Context, bounds: &Bounds) -> Result<Vec<Case>> {
    let mut out = Vec::new();
    for (g, n) in envelope(3, bounds.eo_chi) {
        let w = ctx.engine.omega(g, n)?;
        let mut rep = CheckReport::new();
        rep.record(checks::check_fiber_sum(&w), || format!("fiber sum of omega^{g}_{n}"));
        rep.record(checks::check_pole_bound(&w), || format!("pole bound of omega^{g}_{n}"));
        rep.record(checks::check_symmetry(&w), || format!("symmetry of omega^{g}_{n}"));
        out.push(case("eo-identities", format!("fiber sum, poles, symmetry ({g},{n})"), rep));
    }
    for (g, n) in envelope(3, bounds.eo_chi - 1) {
        let rep = checks::check_string_dilaton(&ctx.engine, g, n)?;
        out.push(case("eo-identities", format!("string and dilaton ({g},{n})->({g},{})", n + 1), rep));
    }
    for (g, n) in envelope(3, bounds.eo_chi) {
        let big_n = ctx.engine.truncation_for(g, n);
        let ok = checks::check_stabilization(g, n, big_n)?;
        out.push(case(
            "eo-identities",
            format!("stabilization ({g},{n}) at N={big_n}"),
            single(ok, || format!("omega^{g}_{n} changes from N={big_n} to N={}", big_n + 1)),
        ));
    }
    for (g, n) in envelope(2, bounds.eo_chi - 1) {
        if g == 0 && n > 4 {
            continue;
        }
        let lower = Expansion::compute(&ctx.engine, g, n)?;
        let upper = Expansion::compute(&ctx.engine, g, n + 1)?;
        let rep = check_m_divisor_string_with(&lower, &upper, bounds.divisor_string_bound)?;
        out.push(case(
            "eo-identities",
            format!("M divisor and string ({g},{n})->({g},{}), b <= {}", n + 1, bounds.divisor_string_bound),
            rep,
        ));
    }
    Ok(out)
}

pub fn gw_identities(ctx: &Context, bounds: &Bounds) -> Result<Vec<Case>> {
    let (pl, tr) = (&ctx.plancherel, &ctx.toprec);
    let mut out = vec![
        case("gw-identities", "vacuum normalization d <= 10", check_vacuum(pl, 10)),
        case(
            "gw-identities",
            format!("oracle agreement n <= {}, b <= {}", bounds.oracle_max_n, bounds.oracle_max_b),
            check_oracle_agreement(pl, tr, bounds.oracle_max_n, bounds.oracle_max_b)?,
        ),
        case(
            "gw-identities",
            format!("closed forms u <= {}", bounds.closed_bound),
            check_closed_forms(pl, tr, bounds.closed_bound, bounds.npoint_bound, bounds.npoint_max_n)?,
        ),
        case(
            "gw-identities",
            format!("string, divisor, dilaton weight <= {}", bounds.gw_weight),
            check_gw_equations(pl, tr, bounds.gw_weight, 4)?,
        ),
    ];
    for (g, n) in [(0, 3), (0, 4), (1, 1), (1, 2), (1, 3)] {
        out.push(case(
            "gw-identities",
            format!("evaluation propositions ({g},{n}), u <= {}", bounds.props_bound),
            check_eval_props(tr, g, n, bounds.props_bound)?,
        ));
    }
    out.extend(spot_values(ctx, bounds)?);
    Ok(out)
}

/// Each value by at least two independent routes.
pub fn spot_values(ctx: &Context, bounds: &Bounds) -> Result<Vec<Case>> {
    let (pl, tr) = (&ctx.plancherel, &ctx.toprec);
    let mut out = Vec::new();
    let mut spot = |name: &str, want: Rat, routes: Vec<(&str, Rat)>| {
        let mut rep = CheckReport::new();
        for (route, v) in routes {
            rep.record(v == want, || format!("{name} by {route}: {} vs {}", render(&v), render(&want)));
        }
        out.push(case("spot", name.to_string(), rep));
    };
    spot(
        "<tau_0(w)>^1 = -1/24",
        rat(-1, 24),
        vec![
            ("partition sums", pl.connected_stationary(1, &[0])),
            ("recursion", tr.stationary(1, &[0])?),
            ("closed form", closed_forms("genus1-one-point", &[0])?),
        ],
    );
    spot(
        "<tau_2(w)>^1 = 1/24",
        rat(1, 24),
        vec![
            ("partition sums", pl.connected_stationary(1, &[2])),
            ("recursion", tr.stationary(1, &[2])?),
            ("closed form", closed_forms("genus1-one-point", &[1])?),
        ],
    );
    let x03 = Expansion::compute(&ctx.engine, 0, 3)?;
    spot(
        "<tau_0(w)^3>^0_1 = 1",
        int(1),
        vec![
            ("partition sums", pl.connected_stationary(0, &[0, 0, 0])),
            ("recursion", tr.eval(&GWKey::stationary(0, &[0, 0, 0]))?),
            ("expansion M^0_3(1,1,1)", x03.m_value(&[1, 1, 1])?),
        ],
    );
    let x21 = Expansion::compute(&ctx.engine, 2, 1)?;
    spot(
        "<tau_4(w)>^2 = 1/1920",
        rat(1, 1920),
        vec![
            ("partition sums", pl.connected_stationary(2, &[4])),
            ("closed form", closed_forms("genus2-one-point", &[2])?),
            ("expansion M^2_1(5)/5!", x21.m_value(&[5])? / int(120)),
        ],
    );
    let family = closed_form("genus0-even-npoint")?;
    let mut rep = CheckReport::new();
    for n in 1..=bounds.npoint_max_n {
        for u in stationary_vectors(n, bounds.npoint_bound as u32, bounds.npoint_bound as u32 * n as u32) {
            let u: Vec<i64> = u.into_iter().map(|x| x as i64).collect();
            let want = family.eval(&u)?;
            let b = family.powers(&u).expect("even powers");
            let a = pl.connected_stationary(0, &b);
            let t = tr.stationary(0, &b)?;
            rep.record(a == want && t == want, || {
                format!("n-point u={u:?}: {} vs {} / {}", render(&want), render(&a), render(&t))
            });
        }
    }
    out.push(case(
        "spot",
        format!("genus-0 even n-point, n <= {}, u <= {}", bounds.npoint_max_n, bounds.npoint_bound),
        rep,
    ));
    Ok(out)
}

/// The unstable cases against the one- and two-point invariants.
pub fn exceptional(ctx: &Context, bounds: &Bounds) -> Result<Vec<Case>> {
    let bound = bounds.exceptional_bound;
    let pl = &ctx.plancherel;
    let t1 = expansion_0_1(bound)?;
    let mut rep = CheckReport::new();
    for b in 1..=bound {
        let got = t1.get(&[b]).cloned().unwrap_or_default();
        let want = if b % 2 == 1 {
            let u = (b - 1) / 2;
            let f = big(factorial(u as u64 + 1));
            big(factorial(2 * u as u64 + 1)) / (&f * &f)
        } else {
            Rat::zero()
        };
        let via = b_factorials(&[b]) * pl.connected_stationary(0, &[b as u32 - 1]);
        rep.record(got == want && via == want, || {
            format!("M^0_1({b}) = {} vs {} / {}", render(&got), render(&want), render(&via))
        });
    }
    let mut out = vec![case("exceptional", format!("(0,1), b <= {bound}"), rep)];

    let t2 = expansion_0_2(bound)?;
    let mut rep = CheckReport::new();
    for b1 in 1..=bound {
        for b2 in 1..=bound {
            let got = t2.get(&[b1, b2]).cloned().unwrap_or_default();
            let want = match (b1 % 2, b2 % 2) {
                (1, 1) => closed_forms("genus0-two-point-even", &[(b1 - 1) / 2, (b2 - 1) / 2])?,
                (0, 0) => closed_forms("genus0-two-point-odd", &[b1 / 2, b2 / 2])?,
                _ => Rat::zero(),
            } * b_factorials(&[b1, b2]);
            let via = b_factorials(&[b1, b2]) * pl.connected_stationary(0, &[b1 as u32 - 1, b2 as u32 - 1]);
            rep.record(got == want && via == want, || {
                format!("M^0_2({b1},{b2}) = {} vs {} / {}", render(&got), render(&want), render(&via))
            });
        }
    }
    out.push(case("exceptional", format!("(0,2), b <= {bound}"), rep));
    Ok(out)
}

/// Golden table diff plus the closed-form families.
pub fn table7(ctx: &Context, bounds: &Bounds) -> Result<Vec<Case>> {
    let mut out = Vec::new();
    for d in diff_table7(&ctx.engine)? {
        let rep = single(d.matches(), || {
            let names: Vec<String> = (1..=d.n).map(|i| format!("b{i}")).collect();
            format!(
                "expected {} got {}",
                d.expected.display_with(&names),
                d.computed.display_with(&names)
            )
        });
        out.push(case("table7", format!("{:?} (g,n,k)=({},{},{})", d.form, d.g, d.n, d.k), rep));
    }
    out.push(case(
        "table7",
        format!("closed-form families u <= {}", bounds.closed_bound),
        check_closed_forms(
            &ctx.plancherel,
            &ctx.toprec,
            bounds.closed_bound,
            bounds.npoint_bound,
            bounds.npoint_max_n,
        )?,
    ));
    Ok(out)
}
