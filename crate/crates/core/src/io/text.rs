//! Human-readable rendering of reports.

use std::fmt::Write;

use super::report::*;
use crate::exact::rational::decimal_approx;
use crate::exact::{parse_rational, IsolatedRoot, Polynomial, Rational, Var};

const APPROX_DIGITS: usize = 6;

fn approx(x: &Rational) -> String {
    format!("≈ {} (decimal approximation)", decimal_approx(x, APPROX_DIGITS))
}

fn parse(s: &str) -> Option<Rational> {
    parse_rational(s).ok()
}

fn point_text(p: &PointDoc) -> String {
    match p {
        PointDoc::Rational { value } => match parse(value) {
            Some(x) if x.is_integer() => value.clone(),
            Some(x) => format!("{value} {}", approx(&x)),
            None => value.clone(),
        },
        PointDoc::Irrational { poly, interval, discriminant } => {
            let coeffs: Option<Vec<Rational>> = poly.iter().map(|c| parse(c)).collect();
            let (lo, hi) = (parse(&interval[0]), parse(&interval[1]));
            let mut out = String::new();
            if let Some(c) = &coeffs {
                let _ = write!(out, "root of {} in [{}, {}]", Polynomial::new(c.clone(), Var::T), interval[0], interval[1]);
            }
            if let Some(d) = discriminant {
                let _ = write!(out, ", discriminant {d}");
            }
            if let (Some(c), Some(lo), Some(hi)) = (coeffs, lo, hi) {
                let mut root = IsolatedRoot { poly: Polynomial::new(c, Var::T), lo, hi, exact: None, multiplicity_free: true };
                root.refine_to(&Rational::new(1.into(), 10_000_000.into()));
                let _ = write!(out, " {}", approx(&root.representative()));
            }
            out
        }
    }
}

fn verdict_text(v: &VerdictDoc) -> String {
    if v.witnesses.is_empty() {
        v.status.clone()
    } else {
        format!("{} (witnesses: {})", v.status, v.witnesses.join(", "))
    }
}

fn opt_verdict(v: &Option<VerdictDoc>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), verdict_text)
}

fn opt_str(v: &Option<String>) -> &str {
    v.as_deref().unwrap_or("-")
}

fn tuple(v: &[String]) -> String {
    format!("({})", v.join(", "))
}

fn dims(v: &[u64]) -> String {
    format!("({})", v.iter().map(u64::to_string).collect::<Vec<_>>().join(", "))
}

fn wall_lines(out: &mut String, walls: &[WallDoc]) {
    if walls.is_empty() {
        out.push_str("no walls\n");
        return;
    }
    for (k, w) in walls.iter().enumerate() {
        let triggers: Vec<String> = w.triggering.iter().map(|t| format!("{} [c_{}]", t.candidate, t.index)).collect();
        let _ = writeln!(
            out,
            "wall {}: t = {}{}; triggered by {}; at wall: {}",
            k + 1,
            point_text(&w.location),
            if w.endpoint { " (endpoint)" } else { "" },
            triggers.join(", "),
            opt_verdict(&w.verdict)
        );
    }
}

fn quiver_verdict_text(v: &QuiverVerdictDoc) -> String {
    let mut s = v.status.clone();
    if let (Some(w), Some(val)) = (&v.witness, &v.theta_value) {
        let _ = write!(s, ", witness {} with theta {}", dims(w), val);
    }
    if let Some(z) = &v.zero_theta_witness {
        let _ = write!(s, ", theta-zero subrepresentation {}", dims(z));
    }
    if let Some(note) = &v.note {
        let _ = write!(s, " [{note}]");
    }
    s
}

/// Renders `report` for reading; rationals stay exact and every decimal is
/// marked as an approximation.
pub fn report_text(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "command: {}", report.command);
    match &report.result {
        ReportResult::Check(c) => {
            let _ = writeln!(out, "sigma: {}", tuple(&c.sigma));
            let _ = writeln!(out, "verdict: {}", verdict_text(&c.verdict));
            for cmp in &c.comparisons {
                let _ = writeln!(out, "  {}: p_F {} p_E", cmp.candidate, cmp.ordering);
            }
        }
        ReportResult::Walls(w) => wall_lines(&mut out, &w.walls),
        ReportResult::Chambers(c) => {
            wall_lines(&mut out, &c.walls);
            for (k, ch) in c.chambers.iter().enumerate() {
                let lower = ch.lower_wall.map_or("[0".to_string(), |w| format!("(wall {}", w + 1));
                let upper = ch.upper_wall.map_or("1]".to_string(), |w| format!("wall {})", w + 1));
                let _ = writeln!(out, "chamber {}: {lower}, {upper}; sample t = {}: {}", k + 1, ch.sample, verdict_text(&ch.verdict));
            }
            for x in &c.exceptional {
                let _ = writeln!(
                    out,
                    "exceptional point in chamber {}: t = {}: {}",
                    x.chamber + 1,
                    point_text(&x.location),
                    opt_verdict(&x.verdict)
                );
            }
        }
        ReportResult::Flips(f) => {
            if f.flips.is_empty() {
                out.push_str("no walls\n");
            }
            for flip in &f.flips {
                let _ = writeln!(
                    out,
                    "flip at t = {}: {} -> {} -> {}",
                    point_text(&flip.wall.location),
                    opt_verdict(&flip.before),
                    opt_verdict(&flip.at),
                    opt_verdict(&flip.after)
                );
                for c in &flip.flipped {
                    let _ = writeln!(out, "  {}: {} -> {} -> {}", c.candidate, opt_str(&c.before), opt_str(&c.at), opt_str(&c.after));
                }
            }
        }
        ReportResult::Uniform(u) => {
            let _ = writeln!(out, "uniform on {{{}}}: {}", u.family.join(", "), if u.uniform { "yes" } else { "no" });
            for t in &u.tables {
                for (i, c) in t.coefficients.iter().enumerate() {
                    let poly: Option<Vec<Rational>> = c.iter().map(|s| parse(s)).collect();
                    let shown = poly.map_or_else(|| tuple(c), |p| Polynomial::new(p, Var::T).to_string());
                    let _ = writeln!(out, "  {}: a_{i}(t) = {shown}", t.sheaf);
                }
            }
            for o in &u.offending {
                let _ = writeln!(out, "offending: {} at index {} ({})", o.sheaf, o.index, o.kind);
            }
        }
        ReportResult::QuiverTheta(q) => {
            let _ = writeln!(out, "sigma: {}", tuple(&q.sigma));
            let _ = writeln!(out, "dimension vector: {}", dims(&q.dims));
            let _ = writeln!(out, "theta: {}", tuple(&q.theta));
            let _ = writeln!(out, "theta(d) = {}", q.pairing);
        }
        ReportResult::QuiverCheck(q) => {
            let _ = writeln!(out, "field: {}", q.field);
            let _ = writeln!(out, "dimension vector: {}", dims(&q.dims));
            let _ = writeln!(out, "theta: {}", tuple(&q.theta));
            for r in &q.representations {
                let _ = writeln!(out, "  {}: {}", r.name, quiver_verdict_text(&r.verdict));
            }
        }
        ReportResult::QuiverProject(q) => {
            let _ = writeln!(out, "field: {}", q.field);
            let _ = writeln!(out, "j': {}{}", q.j_prime, if q.trailing_zero { "" } else { " (sigma has nonzero trailing weights)" });
            let _ = writeln!(out, "sigma': {}", tuple(&q.sigma_prime));
            let _ = writeln!(out, "truncated dimension vector: {}", dims(&q.dims_prime));
            let _ = writeln!(out, "theta': {}", tuple(&q.theta_prime));
            for r in &q.representations {
                let _ = writeln!(out, "  {}: {}; truncated: {}", r.name, quiver_verdict_text(&r.full), quiver_verdict_text(&r.truncated));
            }
        }
    }
    if let Some(g) = &report.grid_oracle {
        if g.agrees {
            let _ = writeln!(out, "grid oracle (N = {}): agrees at all {} points ({} on walls)", g.n, g.checked, g.on_walls);
        } else {
            let _ = writeln!(out, "grid oracle (N = {}): DISAGREES at t = {}", g.n, g.disagreements.join(", "));
        }
    }
    let p = &report.provenance;
    let _ = writeln!(out, "{} {}, input sha256 {}", p.tool, p.version, p.input_digest);
    out
}
