//! Text serializations.
//!
//! Every report is an ordered list of `key=value` fields. The machine form
//! prints them verbatim, one per line; the human form aligns them into a
//! two-column table and may append free-form blocks such as matrices.
//! Numbers are always exact: integers or `p/q`.

use std::fmt::Write as _;

use bohemian_core::search::MaxRecord;
use bohemian_core::transitions::{t_count, TransitionDiagram};
use bohemian_core::{Population, RealPoint, Scalar, UniPoly};

use crate::format::write_matrix;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub fields: Vec<(String, String)>,
    /// Extra text shown only in the human form.
    pub blocks: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn field(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.fields.push((key.into(), value.to_string()));
        self
    }

    pub fn block(&mut self, text: impl Into<String>) -> &mut Self {
        self.blocks.push(text.into());
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn render(&self, machine: bool) -> String {
        let mut out = String::new();
        if machine {
            for (k, v) in &self.fields {
                let _ = writeln!(out, "{k}={v}");
            }
            return out;
        }
        let width = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &self.fields {
            let _ = writeln!(out, "{k:<width$}  {v}");
        }
        for b in &self.blocks {
            out.push('\n');
            out.push_str(b);
            if !b.ends_with('\n') {
                out.push('\n');
            }
        }
        out
    }
}

pub fn population_string(p: &Population) -> String {
    match p {
        Population::Binary { t } => format!("binary(t={t})"),
        Population::Range { d } => format!("range(d={d})"),
    }
}

/// Coefficients in ascending powers, e.g. `[1,0,2]` for `2x^2 + 1`.
pub fn poly_string(p: &UniPoly) -> String {
    let cs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
    format!("[{}]", cs.join(","))
}

/// A rational, or an isolating interval `[lo,hi]` for an irrational root.
pub fn point_string(p: &RealPoint) -> String {
    match p {
        RealPoint::Rational(x) => x.to_string(),
        RealPoint::Algebraic(iv) => format!("[{},{}]", iv.lo, iv.hi),
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Search result fields. `elapsedMs` is only present with `timings`, which
/// keeps the default output byte-identical across runs.
pub fn record_report(r: &MaxRecord, timings: bool) -> Report {
    let mut rep = Report::new();
    rep.field("n", r.n)
        .field("s", &r.s)
        .field("population", population_string(&r.population))
        .field("maxAbs", &r.max_abs)
        .field("count", r.count)
        .field("maximizers", join(&r.maximizers))
        .field("evaluated", r.evaluated);
    if timings {
        rep.field("elapsedMs", r.elapsed.as_millis());
    }
    const SHOWN: usize = 4;
    for (code, p) in r.maximizers.iter().zip(r.patterns()).take(SHOWN) {
        let mut b = format!("code {code}");
        if matches!(r.population, Population::Binary { .. }) {
            let _ = write!(b, " ({} entries equal to t)", t_count(*code));
        }
        b.push('\n');
        b.push_str(&write_matrix(&p.realize(&r.s)));
        rep.block(b);
    }
    if r.maximizers.len() > SHOWN {
        rep.block(format!("... {} more maximizers", r.maximizers.len() - SHOWN));
    }
    rep
}

/// Envelope fields, one group of `segment.K.*` keys per segment.
pub fn diagram_report(n: usize, d: &TransitionDiagram) -> Report {
    let mut rep = Report::new();
    rep.field("n", n)
        .field("xLo", &d.lo)
        .field("xHi", d.hi.as_ref().map_or("inf".to_string(), Scalar::to_string))
        .field("candidates", d.candidates)
        .field("restricted", d.restricted)
        .field("segments", d.segments.len())
        .field("breakpoints", join(d.breakpoints().into_iter().map(point_string)));
    for (k, seg) in d.segments.iter().enumerate() {
        let key = |f: &str| format!("segment.{}.{f}", k + 1);
        rep.field(key("lo"), point_string(&seg.lo));
        if let RealPoint::Algebraic(iv) = &seg.lo {
            rep.field(key("loRootOf"), poly_string(&iv.witness));
        }
        rep.field(key("hi"), seg.hi.as_ref().map_or("inf".to_string(), point_string));
        rep.field(key("sample"), &seg.sample);
        let mut polys: Vec<&UniPoly> = Vec::new();
        for w in &seg.winners {
            if !polys.contains(&&w.poly) {
                polys.push(&w.poly);
            }
        }
        rep.field(key("polys"), polys.iter().map(|p| poly_string(p)).collect::<Vec<_>>().join(";"));
        rep.field(key("codes"), join(seg.winners.iter().map(|w| w.code)));
    }
    let mut table = String::from("segment  from  to  maximizer polynomials\n");
    for (k, seg) in d.segments.iter().enumerate() {
        let polys: Vec<String> = seg.winners.iter().map(|w| w.poly.to_string()).collect();
        let _ = writeln!(
            table,
            "{}  {}  {}  {}",
            k + 1,
            point_string(&seg.lo),
            seg.hi.as_ref().map_or("inf".to_string(), point_string),
            polys.join(" | ")
        );
    }
    rep.block(table);
    rep
}
