//! Report assembly and emitters.
//!
//! The JSON report carries the equivariant module with its q-arrows, the
//! correction terms as exact rationals, connected homology, the local
//! equivalence class, and the projective-type flag. The markdown and csv
//! emitters reproduce the family-table layout
//! (Y, SWFH^G, alpha, beta, gamma, delta).

use crate::grading::pretty;
use crate::pipeline::{
    compute_invariants, compute_swfhg, connected_homology, is_projective_dec, local_class,
    ArrowKind, DecompError, HfDecomposition, LocalClass, ManolescuInvariants, QvModule,
};
use crate::tower::GradedModule;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub input: serde_json::Value,
    pub swfhg: QvModule,
    pub invariants: ManolescuInvariants,
    pub hf_conn: GradedModule,
    pub local_class: LocalClass,
    pub projective_type: bool,
}

/// Full pipeline report. When the input came through the Seifert front
/// end the projective flag from the graded root is passed in; it must
/// agree with the module-level criterion.
pub fn build_report(
    input: serde_json::Value,
    dec: &HfDecomposition,
    projective_from_root: Option<bool>,
) -> Result<Report, DecompError> {
    dec.validate()?;
    let module_flag = is_projective_dec(dec);
    if let Some(root_flag) = projective_from_root {
        assert_eq!(
            root_flag, module_flag,
            "graded-root and module-level projective criteria disagree"
        );
    }
    Ok(Report {
        input,
        swfhg: compute_swfhg(dec)?,
        invariants: compute_invariants(dec)?,
        hf_conn: connected_homology(dec)?,
        local_class: local_class(dec)?,
        projective_type: module_flag,
    })
}

/// Human-readable q-action notes: one line per generator hit.
pub fn q_notes(q: &QvModule) -> Vec<String> {
    let mut notes = Vec::new();
    for a in &q.arrows {
        if let (ArrowKind::GeneratorHit, Some(t)) = (a.kind, a.target) {
            let src = &q.towers[a.source];
            let tgt = &q.towers[t];
            notes.push(format!(
                "q sends V+_{}({}) onto V+_{}",
                pretty(src.bottom),
                src.len.unwrap(),
                pretty(tgt.bottom)
            ));
        }
    }
    notes
}

pub fn report_markdown(r: &Report, name: &str) -> String {
    let mut out = String::new();
    out.push_str("| Y | SWFH^G | alpha | beta | gamma | delta |\n");
    out.push_str("|---|--------|-------|------|-------|-------|\n");
    out.push_str(&row_markdown(r, name));
    let extras = [
        format!("- mu_bar = {}", pretty(r.invariants.mu_bar)),
        format!("- HF_conn = {}", r.hf_conn),
        format!("- local class {}", r.local_class),
        format!("- projective type: {}", r.projective_type),
    ];
    for e in extras {
        out.push_str(&e);
        out.push('\n');
    }
    for note in q_notes(&r.swfhg) {
        out.push_str(&format!("- {note}\n"));
    }
    out
}

pub fn row_markdown(r: &Report, name: &str) -> String {
    format!(
        "| {} | {} | {} | {} | {} | {} |\n",
        name,
        r.swfhg.base(),
        pretty(r.invariants.alpha),
        pretty(r.invariants.beta),
        pretty(r.invariants.gamma),
        pretty(r.invariants.delta),
    )
}

pub fn row_csv(r: &Report, name: &str) -> String {
    format!(
        "{},\"{}\",{},{},{},{},\"{}\"\n",
        name,
        r.swfhg.base(),
        pretty(r.invariants.alpha),
        pretty(r.invariants.beta),
        pretty(r.invariants.gamma),
        pretty(r.invariants.delta),
        q_notes(&r.swfhg).join("; "),
    )
}

pub const CSV_HEADER: &str = "Y,SWFH^G,alpha,beta,gamma,delta,q_notes\n";
