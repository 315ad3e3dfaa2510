//! Plain-text rendering of reports.

use std::fmt::Write;

use frobdiv::mu::MuParams;
use frobdiv::verify::{
    AxKatzReport, DimSource, DivisibilityReport, DivisibilityRow, ExcisionReport, PolarReport,
    ProbeReport, ProbeStatus, ProjectiveReport, SpecSummary,
};

use crate::{CountOutput, MuTable, ZetaOutput};

fn mark(pass: bool) -> &'static str {
    if pass {
        "ok"
    } else {
        "FAIL"
    }
}

fn mu_label(m: &MuParams) -> String {
    let d: Vec<String> = m.degrees.iter().map(u32::to_string).collect();
    format!("mu_{}({}; {})", m.j, m.n, d.join(","))
}

fn spec_line(out: &mut String, s: &SpecSummary) {
    let space = match s.ambient {
        frobdiv::algebra::Ambient::Affine => "A",
        frobdiv::algebra::Ambient::Projective => "P",
    };
    let _ = writeln!(
        out,
        "variety: V({}) in {space}^{} over F_{}",
        s.polys.join(", "),
        s.n,
        s.q
    );
}

fn row_line(out: &mut String, r: &DivisibilityRow) {
    let source = match &r.mu_args {
        Some(m) => mu_label(m),
        None => "baseline".into(),
    };
    let _ = writeln!(
        out,
        "  {:<5} {:<28} mult {}  weight {}  min v_q {}  required {} [{}]  {}",
        r.side.to_string(),
        frobdiv::IntPoly::to_string(&r.factor),
        r.multiplicity,
        r.weight,
        r.min_vq,
        r.required,
        source,
        mark(r.pass)
    );
}

fn divisibility(out: &mut String, d: &DivisibilityReport) {
    match &d.zeta {
        Some(z) => {
            let _ = writeln!(out, "{} zeta: {z}", d.check);
        }
        None => {
            let _ = writeln!(out, "{} zeta: unavailable", d.check);
        }
    }
    if let Some(e) = &d.error {
        let _ = writeln!(out, "  error: {e}");
    }
    for r in &d.rows {
        row_line(out, r);
    }
    let _ = writeln!(out, "  {}: {}", d.check, d.overall);
}

fn dim_line(out: &mut String, dim: Option<i64>, source: DimSource) {
    let source = match source {
        DimSource::Estimated => "estimated",
        DimSource::User => "user",
    };
    match dim {
        Some(d) => {
            let _ = writeln!(out, "dimension: {d} ({source})");
        }
        None => {
            let _ = writeln!(out, "dimension: unknown");
        }
    }
}

pub fn mu(t: &MuTable) -> String {
    let mut out = String::new();
    let d: Vec<String> = t.degrees.iter().map(u32::to_string).collect();
    let _ = writeln!(out, "n = {}, degrees = {}", t.n, d.join(","));
    let _ = writeln!(out, "{:>4}  {:>4}", "j", "mu");
    for r in &t.rows {
        let _ = writeln!(out, "{:>4}  {:>4}", r.j, r.mu);
    }
    out
}

pub fn count(c: &CountOutput) -> String {
    let mut out = String::new();
    spec_line(&mut out, &c.spec);
    let what = if c.complement {
        "#complement"
    } else {
        "#points"
    };
    let _ = writeln!(out, "{what} over F_{}^{}: {}", c.spec.q, c.k, c.count);
    out
}

pub fn zeta(z: &ZetaOutput) -> String {
    let mut out = String::new();
    spec_line(&mut out, &z.spec);
    let what = if z.complement {
        "Z(complement, T)"
    } else {
        "Z(X, T)"
    };
    let _ = writeln!(out, "{what} = {}", z.zeta);
    let counts: Vec<String> = z.counts.iter().map(|c| c.to_string()).collect();
    let _ = writeln!(
        out,
        "certified by N_1..N_{} = {}",
        counts.len(),
        counts.join(", ")
    );
    out
}

pub fn ax_katz(r: &AxKatzReport) -> String {
    let mut out = String::new();
    spec_line(&mut out, &r.spec);
    let _ = writeln!(out, "{} = {}", mu_label(&r.mu_args), r.mu);
    for row in &r.rows {
        let _ = writeln!(
            out,
            "  k={}  {:<10} {:>20}  divisible by p^{}  {}",
            row.k,
            row.form,
            row.count,
            row.exponent,
            mark(row.pass)
        );
    }
    let _ = writeln!(out, "overall: {}", r.overall);
    out
}

pub fn projective(r: &ProjectiveReport) -> String {
    let mut out = String::new();
    spec_line(&mut out, &r.spec);
    dim_line(&mut out, r.dim_used, r.dim_source);
    divisibility(&mut out, &r.complement);
    divisibility(&mut out, &r.variety);
    let _ = writeln!(out, "overall: {}", r.overall);
    out
}

pub fn polar(r: &PolarReport) -> String {
    let mut out = String::new();
    spec_line(&mut out, &r.spec);
    dim_line(&mut out, r.dim_used, r.dim_source);
    if r.asserted_ci {
        let _ = writeln!(out, "complete intersection: asserted");
    }
    let _ = writeln!(out, "orientation: Z^({})", r.orientation);
    divisibility(&mut out, &r.poles);
    let _ = writeln!(out, "overall: {}", r.overall);
    out
}

pub fn excision(r: &ExcisionReport) -> String {
    let mut out = String::new();
    spec_line(&mut out, &r.spec);
    let _ = writeln!(out, "closure: V({})", r.closure.join(", "));
    let _ = writeln!(out, "at infinity: V({})", r.infinity.join(", "));
    for row in &r.rows {
        let _ = writeln!(
            out,
            "  k={}  {} = {} + {}  {}",
            row.k,
            row.projective_complement,
            row.affine_complement,
            row.infinity_complement,
            mark(row.pass)
        );
    }
    let _ = writeln!(out, "overall: {}", r.overall);
    out
}

pub fn probe(r: &ProbeReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "*** {} ***", r.label.to_uppercase());
    spec_line(&mut out, &r.spec);
    if let Some(d) = r.dim_used {
        let _ = writeln!(out, "dimension: {d}");
    }
    let _ = writeln!(out, "variety factors:");
    for row in &r.variety {
        row_line(&mut out, row);
    }
    let _ = writeln!(out, "complement factors:");
    for row in &r.complement {
        row_line(&mut out, row);
    }
    match r.status {
        ProbeStatus::Satisfied => {
            let _ = writeln!(out, "status: satisfied");
        }
        ProbeStatus::Violated => {
            let _ = writeln!(
                out,
                "!!! status: VIOLATED ({} factor(s)); not a failure, see note",
                r.violations
            );
        }
    }
    let _ = writeln!(out, "note: {}", r.note);
    out
}
