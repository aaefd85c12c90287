//! Renderers shared by the commands.

use spectralrec::eo::PoleForm;
use spectralrec::exact::render;
use spectralrec::gw::{Class, Insertion};
use spectralrec::Rat;

pub fn pole_text(f: &PoleForm, slot: usize) -> String {
    let sign = if f.branch > 0 { '-' } else { '+' };
    format!("dz{slot}/(z{slot}{sign}1)^{}", f.order)
}

pub fn pole_csv(f: &PoleForm) -> String {
    format!("{:+}:{}", f.branch, f.order)
}

pub fn pole_latex(f: &PoleForm, slot: usize) -> String {
    let sign = if f.branch > 0 { '-' } else { '+' };
    format!("\\frac{{dz_{slot}}}{{(z_{slot}{sign}1)^{{{}}}}}", f.order)
}

pub fn rat_latex(r: &Rat) -> String {
    let s = render(r);
    match s.split_once('/') {
        Some((p, q)) => match p.strip_prefix('-') {
            Some(p) => format!("-\\frac{{{p}}}{{{q}}}"),
            None => format!("\\frac{{{p}}}{{{q}}}"),
        },
        None => s,
    }
}

pub fn insertion_latex(x: &Insertion) -> String {
    let class = match x.class {
        Class::Point => "\\omega",
        Class::Fundamental => "1",
    };
    format!("\\tau_{{{}}}({class})", x.b)
}

pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn latex_escape(s: &str) -> String {
    s.replace('_', "\\_").replace('^', "\\^{}").replace('<', "$<$").replace('>', "$>$")
}
