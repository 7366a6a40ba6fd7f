//! JSON views of library values. Rationals are strings.

use linper_core::distinction::{Context, SearchVerdict, Shape, UnitaryRep};
use linper_core::enumerate::CrosscheckReport;
use linper_core::orbits::BlockLabel;
use linper_core::structure::{Division, KernelTerm};
use linper_core::{LadderRep, LineSet, Multisegment, Rat, Segment, SpehDatum};
use serde_json::{json, Value};

pub fn rat(x: Rat) -> Value {
    Value::String(x.to_string())
}

pub fn rats(xs: &[Rat]) -> Value {
    xs.iter().copied().map(rat).collect()
}

pub fn segment(s: &Segment, lines: &LineSet) -> Value {
    json!({
        "text": s.display(lines).to_string(),
        "line": lines.name(s.line),
        "a": rat(s.a),
        "b": rat(s.b),
    })
}

pub fn multisegment(m: &Multisegment, lines: &LineSet) -> Value {
    json!({
        "text": m.display(lines).to_string(),
        "segments": m.segments().iter().map(|s| segment(s, lines)).collect::<Vec<_>>(),
    })
}

pub fn ladder(l: &LadderRep, lines: &LineSet) -> Value {
    multisegment(l.multisegment(), lines)
}

pub fn speh(d: &SpehDatum, lines: &LineSet) -> Value {
    json!({ "text": d.display(lines).to_string(), "delta": segment(&d.delta, lines), "k": d.k })
}

pub fn context(c: Context) -> Value {
    json!({ "p": c.p, "q": c.q, "a": rat(c.a) })
}

pub fn division(d: &Division, lines: &LineSet) -> Value {
    json!({ "cuts": rats(&d.cuts), "left": ladder(&d.left, lines), "right": ladder(&d.right, lines) })
}

pub fn kernel_term(i: usize, k: &KernelTerm, lines: &LineSet) -> Value {
    match k {
        KernelTerm::Zero => json!({ "index": i + 1, "zero": true, "factors": [] }),
        KernelTerm::Factors(f) => {
            let text: Vec<String> = f.iter().map(|s| s.display(lines).to_string()).collect();
            json!({
                "index": i + 1,
                "zero": false,
                "text": text.join(" x "),
                "factors": f.iter().map(|s| segment(s, lines)).collect::<Vec<_>>(),
            })
        }
    }
}

pub fn block_label(l: BlockLabel) -> String {
    match l {
        BlockLabel::Plus(i) => format!("A{}+", i + 1),
        BlockLabel::Minus(i) => format!("A{}-", i + 1),
        BlockLabel::Block(i) => format!("A{}", i + 1),
    }
}

pub fn verdict(v: &SearchVerdict) -> Value {
    let steps: Vec<Value> = v
        .trace
        .iter()
        .map(|s| {
            json!({
                "case": s.case.name(),
                "factor": s.factor + 1,
                "cuts": rats(&s.cuts),
                "partners": s.partners.iter().map(|(i, c)| json!({ "factor": i + 1, "cuts": rats(c) })).collect::<Vec<_>>(),
                "next": context(s.next),
            })
        })
        .collect();
    json!({ "possible": v.possible, "trace": steps })
}

pub fn shape(s: Shape) -> Value {
    match s {
        Shape::Form1 { i1, i2, i3, l } => json!({ "form": "form1", "i1": i1, "i2": i2, "i3": i3, "l": l }),
        Shape::Form2 { i1, i2 } => json!({ "form": "form2", "i1": i1, "i2": i2 }),
        Shape::None => json!({ "form": "none" }),
    }
}

pub fn unitary(u: &UnitaryRep, lines: &LineSet) -> Value {
    Value::String(u.display(lines).to_string())
}

pub fn crosscheck(r: &CrosscheckReport, lines: &LineSet) -> Value {
    json!({
        "counts": r.counts.iter().map(|c| json!({
            "degree": c.degree,
            "reps": c.reps,
            "self_dual": c.self_dual,
            "distinguished": c.distinguished,
        })).collect::<Vec<_>>(),
        "total": r.total(),
        "discrepancies": r.discrepancies.iter().map(|d| json!({
            "rep": unitary(&d.rep, lines),
            "criterion": d.criterion,
            "oracle": d.oracle,
        })).collect::<Vec<_>>(),
        "search_failures": r.search_failures.iter().map(|u| unitary(u, lines)).collect::<Vec<_>>(),
        "clean": r.is_clean(),
    })
}
