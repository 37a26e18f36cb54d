use crate::job::{Command, JobSpec};
use crate::report::{
    self, algebraic, element, int, matrix, module, polynomial, rationals, subspace,
};
use morphic_core::eigen::{
    analyze, spectral_data, DeltaCase, RecognizabilityStatus, Stabilization,
};
use morphic_core::returns::{
    coboundary_graph, coboundary_space, derived_sequence, return_substitution,
};
use morphic_core::spectra::{
    b_graph, compute_b, weak_mixing, BGraph, NotApplicableReason, WeakMixVerdict,
};
use morphic_core::{eigen, Alphabet, EigenOptions, Error, Letter, Morphism, Result};
use serde_json::{json, Map, Value};
use std::fmt::Write;

/// Whether the command reached a definite answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Complete,
    /// Hypotheses not met, recognizability unknown, or the general Δ computation did not
    /// stabilize within the depth bound.
    Inconclusive,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Complete => 0,
            Status::Inconclusive => 2,
        }
    }
}

/// The human-readable and the structured rendering of one run.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub text: String,
    pub document: Value,
}

struct Section {
    status: Status,
    text: String,
    result: Map<String, Value>,
}

impl Section {
    fn new() -> Self {
        Section {
            status: Status::Complete,
            text: String::new(),
            result: Map::new(),
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn put(&mut self, key: &str, v: Value) {
        self.result.insert(key.into(), v);
    }
}

fn eigen_options(job: &JobSpec) -> EigenOptions {
    EigenOptions {
        max_window: job.options.max_window,
        fallback_depth: job.options.fallback_depth,
        assume_recognizable: job.options.assume_recognizable,
    }
}

fn recognizability_json(r: &RecognizabilityStatus) -> Value {
    match r {
        RecognizabilityStatus::Verified { window } => {
            json!({ "verdict": "recognizable", "window": window })
        }
        RecognizabilityStatus::Assumed => json!({ "verdict": "assumed" }),
        RecognizabilityStatus::UnimodularShortcut => {
            json!({ "verdict": "recognizable", "reason": "unimodular" })
        }
        RecognizabilityStatus::Unknown { max_window_tried } => {
            json!({ "verdict": "unknown", "max_window_tried": max_window_tried })
        }
    }
}

fn recognizability_text(r: &RecognizabilityStatus) -> String {
    match r {
        RecognizabilityStatus::Verified { window } => format!("recognizable (window {window})"),
        RecognizabilityStatus::Assumed => "assumed".into(),
        RecognizabilityStatus::UnimodularShortcut => "recognizable (σ and τ unimodular)".into(),
        RecognizabilityStatus::Unknown { max_window_tried } => {
            format!("unknown up to window {max_window_tried}")
        }
    }
}

fn case_name(c: &DeltaCase) -> String {
    match c {
        DeltaCase::PseudoUnimodular => "pseudo_unimodular".into(),
        DeltaCase::LeftEigenRow => "left_eigen_row".into(),
        DeltaCase::InvertibleCV => "invertible_cv".into(),
        DeltaCase::InvariantW => "invariant_w".into(),
        DeltaCase::DetNilpotent => "det_nilpotent".into(),
        DeltaCase::GeneralFallback(Stabilization::At(n)) => {
            format!("general_fallback_stable_at_{n}")
        }
        DeltaCase::GeneralFallback(Stabilization::Unstabilized) => {
            "general_fallback_unstabilized".into()
        }
    }
}

fn eigenvalues(job: &JobSpec, tau: &Morphism, out: &mut Section) -> Result<()> {
    let r = analyze(&job.sigma, tau, &eigen_options(job))?;
    let field = &r.basis.field;
    let blocks: Vec<Value> = r
        .basis
        .blocks
        .iter()
        .map(|b| {
            json!({
                "eigenvalue": algebraic(&b.eigenvalue),
                "class": report::modulus_class(b.class),
                "multiplicity": b.multiplicity,
                "columns": b.columns(field).iter().map(|c| c.iter().map(|x| rationals(x.coords())).collect::<Value>()).collect::<Value>(),
            })
        })
        .collect();
    out.put("recognizability", recognizability_json(&r.recognizability));
    out.put("char_poly", polynomial(&r.spectral.char_poly));
    out.put("min_poly", polynomial(&r.spectral.min_poly));
    out.put("c", matrix(&r.constraints.as_matrix()));
    out.put("v_field_minpoly", polynomial(&field.modulus()));
    out.put("v_blocks", Value::from(blocks));
    out.put(
        "cv",
        r.cv.iter()
            .map(|row| row.iter().map(element).collect::<Value>())
            .collect(),
    );
    out.put("w", subspace(&r.w));
    out.put(
        "perron_vector",
        r.perron_vector.iter().map(element).collect(),
    );
    out.put("case", Value::from(case_name(&r.case)));
    out.put("stages", r.stages.iter().map(module).collect());
    out.put("module", module(&r.module));
    out.put(
        "lower_bound",
        r.lower_bound.as_ref().map_or(Value::Null, module),
    );

    out.line(format!(
        "recognizability: {}",
        recognizability_text(&r.recognizability)
    ));
    out.line(format!(
        "characteristic polynomial: {}",
        r.spectral.char_poly
    ));
    out.line(format!("minimal polynomial: {}", r.spectral.min_poly));
    out.line("C:");
    out.line(report::matrix_text(&r.constraints.as_matrix()));
    out.line(format!(
        "V: {} columns over the field of {}",
        r.basis.dimension(),
        field.modulus()
    ));
    for b in &r.basis.blocks {
        out.line(format!(
            "  eigenvalue {} (multiplicity {})",
            b.eigenvalue, b.multiplicity
        ));
    }
    out.line("CV:");
    for row in &r.cv {
        out.line(format!(
            "  ({})",
            row.iter()
                .map(|x| x.render("β"))
                .collect::<Vec<_>>()
                .join(", ")
        ));
    }
    out.line(format!("W: {}", report::subspace_text(&r.w)));
    out.line(format!(
        "v: ({})",
        r.perron_vector
            .iter()
            .map(|x| x.render("β"))
            .collect::<Vec<_>>()
            .join(", ")
    ));
    out.line(format!("case: {}", case_name(&r.case)));
    out.line(format!("eigenvalues: {}", r.module.render()));
    if let Some(lb) = &r.lower_bound {
        out.line(format!("lower bound: {}", lb.render()));
    }
    if matches!(r.recognizability, RecognizabilityStatus::Unknown { .. })
        || r.case == DeltaCase::GeneralFallback(Stabilization::Unstabilized)
    {
        out.status = Status::Inconclusive;
    }
    Ok(())
}

fn coboundaries(job: &JobSpec, out: &mut Section) -> Result<()> {
    let sigma = &job.sigma;
    let g = coboundary_graph(sigma)?;
    let space = coboundary_space(sigma)?;
    let alpha = sigma.domain();
    let edges: Vec<Value> = alpha
        .letters()
        .map(|a| json!({ "letter": alpha.name(a), "from": g.start(a), "to": g.end(a) }))
        .collect();
    out.put("vertices", Value::from(g.vertex_count()));
    out.put("edges", Value::from(edges));
    out.put("space", subspace(&space));
    out.line(format!("graph: {} vertices", g.vertex_count()));
    for a in alpha.letters() {
        out.line(format!(
            "  {}: {} -> {}",
            alpha.name(a),
            g.start(a),
            g.end(a)
        ));
    }
    out.line(format!(
        "coboundary space: {}",
        report::subspace_text(&space)
    ));
    Ok(())
}

fn aperiodic(job: &JobSpec, out: &mut Section) -> Result<()> {
    let trace = derived_sequence(&job.sigma)?;
    let periodic = trace.last().is_some_and(|m| m.domain().len() == 1);
    out.put(
        "trace",
        trace
            .iter()
            .map(|m| m.render().lines().map(Value::from).collect::<Value>())
            .collect(),
    );
    out.put(
        "verdict",
        Value::from(if periodic { "periodic" } else { "aperiodic" }),
    );
    for (n, m) in trace.iter().enumerate().skip(1) {
        out.line(format!("derived {n}: {}", m.render().replace('\n', ", ")));
    }
    out.line(format!(
        "verdict: {}",
        if periodic { "periodic" } else { "aperiodic" }
    ));
    Ok(())
}

fn recognizable(job: &JobSpec, tau: &Morphism, out: &mut Section) -> Result<()> {
    job.sigma.require_primitive()?;
    let r = eigen::recognizability_status(&job.sigma, tau, &eigen_options(job))?;
    out.put("recognizability", recognizability_json(&r));
    out.line(format!("recognizability: {}", recognizability_text(&r)));
    if matches!(r, RecognizabilityStatus::Unknown { .. }) {
        out.status = Status::Inconclusive;
    }
    Ok(())
}

fn graph(g: &BGraph) -> Value {
    let vertices: Vec<Value> = g
        .vertices
        .iter()
        .zip(&g.in_b)
        .map(|(v, &b)| {
            let mut a = algebraic(v);
            a["in_b"] = Value::from(b);
            a
        })
        .collect();
    json!({
        "vertices": vertices,
        "edges": g.edges.iter().map(|&(i, j)| json!([i, j])).collect::<Value>(),
        "components": g.components(),
        "component_count": g.component_count(),
    })
}

fn graph_text(g: &BGraph, out: &mut Section) {
    out.line(format!(
        "graph: {} vertices, {} components",
        g.vertices.len(),
        g.component_count()
    ));
    for (i, (v, b)) in g.vertices.iter().zip(&g.in_b).enumerate() {
        out.line(format!("  [{i}]{} {v}", if *b { " (in B)" } else { "" }));
    }
    for (i, j) in &g.edges {
        out.line(format!("  edge {i} -- {j}"));
    }
}

fn reason_tag(r: &NotApplicableReason) -> &'static str {
    match r {
        NotApplicableReason::NotUnimodular => "not_unimodular",
        NotApplicableReason::NontrivialCoboundary => "nontrivial_coboundary",
        NotApplicableReason::GcdNotOne(_) => "gcd_not_one",
        NotApplicableReason::Periodic => "periodic",
        NotApplicableReason::RecognizabilityUnknown { .. } => "recognizability_unknown",
    }
}

fn weakmix(job: &JobSpec, tau: &Morphism, out: &mut Section) -> Result<()> {
    let verdict = weak_mixing(&job.sigma, tau, &eigen_options(job))?;
    match &verdict {
        WeakMixVerdict::WeaklyMixing => {
            out.put("verdict", json!("weakly_mixing"));
            out.line("verdict: weakly mixing");
        }
        WeakMixVerdict::NotWeaklyMixing => {
            out.put("verdict", json!("not_weakly_mixing"));
            out.line("verdict: not weakly mixing");
        }
        WeakMixVerdict::NotApplicable(reason) => {
            out.put(
                "verdict",
                json!({ "not_applicable": reason_tag(reason), "detail": reason.to_string() }),
            );
            out.line(format!("verdict: not applicable ({reason})"));
            out.status = Status::Inconclusive;
        }
    }
    if !matches!(
        verdict,
        WeakMixVerdict::NotApplicable(NotApplicableReason::Periodic)
    ) {
        let g = b_graph(&compute_b(&job.sigma, tau)?);
        out.put("b_graph", graph(&g));
        graph_text(&g, out);
    }
    Ok(())
}

fn dimension(job: &JobSpec, tau: &Morphism, out: &mut Section) -> Result<()> {
    let b = compute_b(&job.sigma, tau)?;
    let g = b_graph(&b);
    out.put("b", b.iter().map(algebraic).collect());
    out.put("b_graph", graph(&g));
    out.put("dimension", Value::from(g.component_count()));
    out.line(format!(
        "B: {}",
        b.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join("; ")
    ));
    graph_text(&g, out);
    out.line(format!("dimension: {}", g.component_count()));
    Ok(())
}

fn derived_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n)
            .map(|i| char::from(b'A' + i as u8).to_string())
            .collect()
    } else {
        (0..n).map(|i| format!("R{i}")).collect()
    }
}

/// Smallest k with σᵏ(a) starting with a.
fn returning_power(sigma: &Morphism, a: Letter) -> Result<usize> {
    let mut first = a;
    for k in 1..=sigma.domain().len() {
        first = sigma.image(first)[0];
        if first == a {
            return Ok(k);
        }
    }
    Err(Error::Precondition(format!(
        "no power of σ maps `{}` to a word starting with it",
        sigma.domain().name(a)
    )))
}

fn derive(job: &JobSpec, out: &mut Section) -> Result<()> {
    let sigma = &job.sigma;
    let a = match &job.options.letter {
        Some(name) => sigma.domain().letter(name)?,
        None => morphic_core::substitution::growing_seed(sigma)?.1,
    };
    let k = returning_power(sigma, a)?;
    let r = return_substitution(&sigma.pow(k)?, a)?;
    let names = Alphabet::new(derived_names(r.decode.len()))?;
    let derived = Morphism::new(names.clone(), names.clone(), r.derived.images().to_vec())?;
    let alpha = sigma.domain();
    out.put("letter", Value::from(alpha.name(a)));
    out.put("power", Value::from(k));
    out.put(
        "derived",
        derived.render().lines().map(Value::from).collect(),
    );
    out.put(
        "decode",
        r.decode
            .iter()
            .enumerate()
            .map(|(i, w)| json!([names.name(i), alpha.render(w)]))
            .collect(),
    );
    out.line(format!(
        "return substitution of σ^{k} on {}:",
        alpha.name(a)
    ));
    for line in derived.render().lines() {
        out.line(format!("  {line}"));
    }
    out.line("decode:");
    for (i, w) in r.decode.iter().enumerate() {
        out.line(format!("  {} = {}", names.name(i), alpha.render(w)));
    }
    Ok(())
}

fn info(job: &JobSpec, out: &mut Section) -> Result<()> {
    let sigma = &job.sigma;
    let m = sigma.abelianization();
    let primitive = sigma.is_primitive();
    out.put(
        "alphabet",
        sigma
            .domain()
            .names()
            .iter()
            .map(|s| Value::from(s.as_str()))
            .collect(),
    );
    out.put("matrix", matrix(&m));
    out.put("primitive", Value::from(primitive));
    out.put("determinant", int(&m.determinant().to_integer()));
    out.line(format!("alphabet: {}", sigma.domain().names().join(" ")));
    out.line("matrix:");
    out.line(report::matrix_text(&m));
    out.line(format!("primitive: {primitive}"));
    out.line(format!("determinant: {}", m.determinant()));
    if primitive {
        let s = spectral_data(&m)?;
        let spectrum: Vec<Value> = s
            .eigenvalues
            .iter()
            .map(|e| {
                let mut v = algebraic(&e.value);
                v["class"] = Value::from(report::modulus_class(e.class));
                v["multiplicity"] = Value::from(e.multiplicity);
                v["algebraic_multiplicity"] = Value::from(e.algebraic_multiplicity);
                v
            })
            .collect();
        out.put("char_poly", polynomial(&s.char_poly));
        out.put("min_poly", polynomial(&s.min_poly));
        out.put("perron", algebraic(&s.perron));
        out.put("spectrum", Value::from(spectrum));
        out.line(format!("characteristic polynomial: {}", s.char_poly));
        out.line(format!("minimal polynomial: {}", s.min_poly));
        out.line(format!("Perron root: {}", s.perron));
        for e in &s.eigenvalues {
            out.line(format!(
                "  {} [{}, multiplicity {}]",
                e.value,
                report::modulus_class(e.class),
                e.multiplicity
            ));
        }
    }
    Ok(())
}

/// Executes a job. Library errors are returned as `Err`; an answer that is not definite is
/// an `Ok` outcome with [`Status::Inconclusive`].
pub fn run(job: &JobSpec) -> Result<Outcome> {
    let tau = job.tau_or_identity();
    let mut s = Section::new();
    match job.command {
        Command::Eigenvalues => eigenvalues(job, &tau, &mut s)?,
        Command::Coboundaries => coboundaries(job, &mut s)?,
        Command::Aperiodic => aperiodic(job, &mut s)?,
        Command::Recognizable => recognizable(job, &tau, &mut s)?,
        Command::Weakmix => weakmix(job, &tau, &mut s)?,
        Command::Dimension => dimension(job, &tau, &mut s)?,
        Command::Derive => derive(job, &mut s)?,
        Command::Info => info(job, &mut s)?,
    }
    let status = s.status;
    let document = json!({
        "input": job.to_json(),
        "command": job.command.name(),
        "status": match status { Status::Complete => "ok", Status::Inconclusive => "inconclusive" },
        "result": Value::Object(s.result),
    });
    let mut text = String::new();
    let _ = writeln!(text, "{}", job.command);
    text.push_str(&s.text);
    Ok(Outcome {
        status,
        text,
        document,
    })
}

/// Structured document for a failed run.
pub fn error_document(job: Option<&JobSpec>, err: &Error) -> Value {
    json!({
        "input": job.map_or(Value::Null, JobSpec::to_json),
        "status": "error",
        "error": err.to_string(),
    })
}
