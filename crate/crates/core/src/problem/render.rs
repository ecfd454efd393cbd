use std::fmt::{self, Write as _};

use crate::problem::{Int, Report};

fn verdict(ok: bool) -> &'static str {
    if ok {
        "agree"
    } else {
        "DISAGREE"
    }
}

fn opt(x: &Option<Int>) -> String {
    x.as_ref().map_or_else(|| "-".into(), |v| v.0.to_string())
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let w = &mut out;
        writeln!(w, "kind: {}", self.kind)?;
        if let Some(c) = &self.counts {
            writeln!(w, "\nReidemeister numbers R(phi^n)")?;
            writeln!(w, "  formula: {}", c.formula)?;
            writeln!(w, "  trace:   {}", c.trace_formula)?;
            writeln!(w, "  oracle:  {}", c.oracle)?;
            writeln!(w, "  {:>3}  {:>20}  {:>20}  {:>20}", "n", "formula", "trace", "oracle")?;
            for e in &c.entries {
                writeln!(
                    w,
                    "  {:>3}  {:>20}  {:>20}  {:>20}{}",
                    e.n,
                    e.value.0,
                    opt(&e.trace),
                    opt(&e.oracle),
                    if e.agreement { "" } else { "  <-- mismatch" }
                )?;
            }
            if let Some(n) = c.infinite_at {
                writeln!(w, "  n = {n}: infinitely many classes")?;
            }
            for note in &c.notes {
                writeln!(w, "  note: {note}")?;
            }
        }
        if let Some(z) = &self.zeta {
            writeln!(w, "\nzeta function (p = {}, r = {}, sigma = {})", z.p, z.r, z.sigma)?;
            writeln!(w, "  R(z) = {}", z.display)?;
            writeln!(w, "  series to order {} vs defining series: {}", z.order, verdict(z.agreement))?;
        }
        if let Some(c) = &self.congruences {
            let bad: Vec<String> = c
                .residues
                .iter()
                .filter(|(_, r)| r.0 != 0.into())
                .map(|(n, r)| format!("n={n}: {}", r.0))
                .collect();
            if bad.is_empty() {
                writeln!(w, "\ncongruences: all residues 0 for n <= {}", c.residues.len())?;
            } else {
                writeln!(w, "\ncongruences: nonzero residues {}", bad.join(", "))?;
            }
        }
        if let Some(e) = &self.eventual_image {
            writeln!(
                w,
                "\neventual image: order {} after {} steps, R = {} vs {} on the image: {}",
                e.image_order,
                e.steps,
                e.value,
                e.oracle_value,
                verdict(e.agreement)
            )?;
        }
        if let Some(fe) = &self.functional_equation {
            writeln!(
                w,
                "\nfunctional equation: R(1/({} z)) = {} R(z)^{}  (sample residual {:.1e}, {})",
                fe.determinant.0,
                fe.epsilon,
                fe.exponent,
                fe.sample_residual,
                verdict(fe.agreement)
            )?;
        }
        if let Some(t) = &self.torsion {
            writeln!(w, "\ntorsion at lambda = exp(2 pi i t)")?;
            for e in &t.entries {
                match (&e.error, e.from_zeta, e.from_lefschetz) {
                    (None, Some(a), Some(b)) => writeln!(
                        w,
                        "  t = {:<8} zeta {:.12}  Lefschetz {:.12}  rel {:.1e}",
                        e.angle,
                        a,
                        b,
                        e.relative_error.unwrap_or(f64::NAN)
                    )?,
                    (Some(err), _, _) => writeln!(w, "  t = {:<8} {err}", e.angle)?,
                    _ => {}
                }
            }
        }
        if let Some(x) = &self.fox {
            writeln!(w, "\nFox Jacobian D:")?;
            for row in &x.jacobian {
                writeln!(w, "  [{}]", row.join(", "))?;
            }
            writeln!(w, "  max norm {}  ->  radius >= {}", x.max_norm.0, x.bound_norm)?;
            writeln!(
                w,
                "  spectral radius {:.12} in [{:.12}, {:.12}]  ->  radius >= {:.12}",
                x.spectral_radius, x.spectral_bracket.0, x.spectral_bracket.1, x.bound_spectral
            )?;
            for t in &x.twisted_norms {
                writeln!(w, "  ||(zD)^{}|| = {} (<= {}), root {:.6}", t.n, t.norm.0, t.bound.0, t.root)?;
            }
        }
        for note in &self.notes {
            writeln!(w, "\nnote: {note}")?;
        }
        writeln!(w, "\noverall: {}", verdict(self.agreement))?;
        if let Some(total) = self.timing_ms.get("total") {
            writeln!(w, "time: {total:.1} ms")?;
        }
        f.write_str(&out)
    }
}
