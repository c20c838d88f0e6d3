//! Implementations of the subcommands. Every command returns the text it
//! wants written (JSON, CSV, or SVG); the caller decides where it goes.

use crate::document::{DesignDocument, FORMAT_VERSION};
use crate::error::CliError;
use crate::svg;
use isokin::chains::{
    chain_from_ordering, dedup_orderings, enumerate_chains, forward_kinematics,
    posture_from_placement, KinematicChain, Ordering, Posture,
};
use isokin::conditioning::{characteristic_length, optimal_lambda, SearchParams};
use isokin::isotropy::{check_isotropic_set, reflect_set, regular_polygon, rotate_set, union_sets};
use isokin::jacobian_algebra::{
    build_jacobian, condition_number_spectral, model_matrix_for_ordering, model_matrix_with_tol,
    normalize_jacobian, JacobianMatrix,
};
use isokin::planar_geometry::{PlanarPoint, PointSet};
use serde_json::json;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Global settings shared by the commands.
pub struct Context {
    pub tol: f64,
    pub seed: Option<u64>,
    pub format: Format,
}

impl Context {
    fn meta(&self) -> serde_json::Value {
        json!({ "format_version": FORMAT_VERSION, "tol": self.tol })
    }

    fn csv_preamble(&self, report: &str) -> String {
        format!(
            "# isokin {report} report\n# format_version = {FORMAT_VERSION}\n# tol = {:e}\n",
            self.tol
        )
    }
}

pub fn polygon(
    ctx: &Context,
    n: usize,
    radius: f64,
    phase: f64,
    center: PlanarPoint,
) -> Result<String, CliError> {
    let _ = ctx;
    let set = regular_polygon(n, radius, phase, center)?;
    Ok(DesignDocument::from_point_set(&set).to_json())
}

pub fn union(ctx: &Context, a: &DesignDocument, b: &DesignDocument) -> Result<String, CliError> {
    let merged = union_sets(&a.point_set()?, &b.point_set()?, ctx.tol)?;
    Ok(DesignDocument::from_point_set(&merged).to_json())
}

pub fn rotate(ctx: &Context, doc: &DesignDocument, angle: f64) -> Result<String, CliError> {
    let _ = ctx;
    let rotated = rotate_set(&doc.point_set()?, angle);
    Ok(DesignDocument::from_point_set(&rotated).to_json())
}

pub fn reflect(ctx: &Context, doc: &DesignDocument, axis: f64) -> Result<String, CliError> {
    let _ = ctx;
    let reflected = reflect_set(&doc.point_set()?, axis);
    Ok(DesignDocument::from_point_set(&reflected).to_json())
}

pub fn check_iso(ctx: &Context, doc: &DesignDocument) -> Result<String, CliError> {
    let report = check_isotropic_set(&doc.point_set()?, ctx.tol);
    match ctx.format {
        Format::Json => Ok(pretty(&json!({
            "meta": ctx.meta(),
            "is_isotropic": report.is_isotropic,
            "sigma_squared": report.sigma_squared,
            "deviation": report.deviation,
        }))),
        Format::Csv => {
            let mut out = ctx.csv_preamble("check-iso");
            out.push_str("is_isotropic,sigma_squared,deviation\n");
            out.push_str(&format!(
                "{},{},{}\n",
                report.is_isotropic, report.sigma_squared, report.deviation
            ));
            Ok(out)
        }
    }
}

/// How `analyze`, `charlen`, and `render` pick their orderings.
pub enum OrderingSelection {
    /// Explicit orderings from the command line.
    ExplicitList(Vec<Ordering>),
    /// Every permutation.
    All,
    /// Representatives of the rotation-equivalence classes.
    DedupRepresentatives,
    /// Whatever the document lists, falling back to `fallback`.
    Document { fallback: Box<OrderingSelection> },
}

fn select_orderings(
    ctx: &Context,
    doc: &DesignDocument,
    set: &PointSet,
    selection: &OrderingSelection,
) -> Result<Vec<Ordering>, CliError> {
    match selection {
        OrderingSelection::ExplicitList(list) => Ok(list.clone()),
        OrderingSelection::All => Ok(enumerate_chains(set)?
            .into_iter()
            .map(|(ord, _)| ord)
            .collect()),
        OrderingSelection::DedupRepresentatives => {
            let all: Vec<Ordering> = enumerate_chains(set)?
                .into_iter()
                .map(|(ord, _)| ord)
                .collect();
            Ok(dedup_orderings(set, &all, ctx.tol)?
                .into_iter()
                .map(|class| class.representative)
                .collect())
        }
        OrderingSelection::Document { fallback } => {
            if doc.orderings.is_empty() {
                select_orderings(ctx, doc, set, fallback)
            } else {
                doc.ordering_list()
            }
        }
    }
}

struct AnalyzedOrdering {
    ordering: Ordering,
    class_representative: Ordering,
    chain: KinematicChain,
    lambda: f64,
    conditioning_length: f64,
    residual_distance: f64,
    objective_z: f64,
    kappa_spectral: f64,
    jacobian: JacobianMatrix,
    normalized_jacobian: JacobianMatrix,
}

pub fn analyze(
    ctx: &Context,
    doc: &DesignDocument,
    selection: &OrderingSelection,
    posture_override: Option<&[f64]>,
) -> Result<String, CliError> {
    let set = doc.point_set()?;
    let orderings = select_orderings(ctx, doc, &set, selection)?;
    let classes = dedup_orderings(&set, &orderings, ctx.tol)?;
    let representative_of = |ord: &Ordering| -> Ordering {
        classes
            .iter()
            .find(|class| class.members.contains(ord))
            .map(|class| class.representative.clone())
            .unwrap_or_else(|| ord.clone())
    };

    let mut rows = Vec::with_capacity(orderings.len());
    for ordering in orderings {
        let chain = chain_from_ordering(&set, &ordering)?;
        let posture = match posture_override {
            Some(angles) => Posture::new(angles.to_vec())?,
            None => posture_from_placement(&set, &ordering)?,
        };
        let config = forward_kinematics(&chain, &posture)?;
        let model = model_matrix_for_ordering(&set, &ordering)?;
        let conditioning = optimal_lambda(&config, &model)?;
        let jacobian = build_jacobian(&config);
        let normalized = normalize_jacobian(&jacobian, conditioning.conditioning_length)?;
        let kappa = condition_number_spectral(normalized.matrix())?;
        rows.push(AnalyzedOrdering {
            class_representative: representative_of(&ordering),
            ordering,
            chain,
            lambda: conditioning.lambda,
            conditioning_length: conditioning.conditioning_length,
            residual_distance: conditioning.residual_distance,
            objective_z: conditioning.objective_z,
            kappa_spectral: kappa,
            jacobian,
            normalized_jacobian: normalized,
        });
    }

    match ctx.format {
        Format::Json => {
            let json_rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    json!({
                        "ordering": row.ordering.to_one_based(),
                        "class": row.class_representative.to_one_based(),
                        "link_lengths": row.chain.link_lengths(),
                        "lambda": row.lambda,
                        "conditioning_length": row.conditioning_length,
                        "residual_distance": row.residual_distance,
                        "objective_z": row.objective_z,
                        "kappa_spectral": row.kappa_spectral,
                        "jacobian": matrix_rows(&row.jacobian),
                        "normalized_jacobian": matrix_rows(&row.normalized_jacobian),
                    })
                })
                .collect();
            Ok(pretty(&json!({
                "meta": ctx.meta(),
                "class_count": classes.len(),
                "rows": json_rows,
            })))
        }
        Format::Csv => {
            let mut out = ctx.csv_preamble("analyze");
            out.push_str(&format!("# classes = {}\n", classes.len()));
            out.push_str(
                "ordering,class,link_lengths,lambda,conditioning_length,residual_distance,kappa_spectral\n",
            );
            for row in &rows {
                out.push_str(&format!(
                    "\"{}\",\"{}\",\"{}\",{},{},{},{}\n",
                    join_usize(&row.ordering.to_one_based()),
                    join_usize(&row.class_representative.to_one_based()),
                    join_f64(row.chain.link_lengths()),
                    row.lambda,
                    row.conditioning_length,
                    row.residual_distance,
                    row.kappa_spectral
                ));
            }
            Ok(out)
        }
    }
}

pub fn chains_report(ctx: &Context, doc: &DesignDocument) -> Result<String, CliError> {
    let set = doc.point_set()?;
    let all = enumerate_chains(&set)?;
    let orderings: Vec<Ordering> = all.iter().map(|(ord, _)| ord.clone()).collect();
    let classes = dedup_orderings(&set, &orderings, ctx.tol)?;
    let representative_of = |ord: &Ordering| -> Ordering {
        classes
            .iter()
            .find(|class| class.members.contains(ord))
            .map(|class| class.representative.clone())
            .expect("every ordering belongs to a class")
    };

    match ctx.format {
        Format::Json => {
            let rows: Vec<serde_json::Value> = all
                .iter()
                .map(|(ord, chain)| {
                    json!({
                        "ordering": ord.to_one_based(),
                        "class": representative_of(ord).to_one_based(),
                        "link_lengths": chain.link_lengths(),
                    })
                })
                .collect();
            Ok(pretty(&json!({
                "meta": ctx.meta(),
                "chain_count": all.len(),
                "class_count": classes.len(),
                "rows": rows,
            })))
        }
        Format::Csv => {
            let mut out = ctx.csv_preamble("chains");
            out.push_str(&format!("# classes = {}\n", classes.len()));
            out.push_str("ordering,class,link_lengths\n");
            for (ord, chain) in &all {
                out.push_str(&format!(
                    "\"{}\",\"{}\",\"{}\"\n",
                    join_usize(&ord.to_one_based()),
                    join_usize(&representative_of(ord).to_one_based()),
                    join_f64(chain.link_lengths())
                ));
            }
            Ok(out)
        }
    }
}

pub struct CharlenOptions {
    pub selection: OrderingSelection,
    pub search: SearchParams,
}

pub fn charlen(
    ctx: &Context,
    doc: &DesignDocument,
    options: &CharlenOptions,
) -> Result<String, CliError> {
    let set = doc.point_set()?;
    // explicit chains analyze the document's point set as the model;
    // otherwise each selected ordering induces chain and model
    let mut rows: Vec<(String, serde_json::Value)> = Vec::new();
    if doc.chains.is_empty() {
        let orderings = select_orderings(ctx, doc, &set, &options.selection)?;
        for ordering in orderings {
            let chain = chain_from_ordering(&set, &ordering)?;
            let model = model_matrix_for_ordering(&set, &ordering)?;
            let result = characteristic_length(&chain, &model, &options.search)?;
            rows.push(charlen_row(json!(ordering.to_one_based()), &chain, &result));
        }
    } else {
        let model = model_matrix_with_tol(&set, ctx.tol)?;
        for lengths in &doc.chains {
            let chain = KinematicChain::new(lengths.clone())?;
            let result = characteristic_length(&chain, &model, &options.search)?;
            rows.push(charlen_row(serde_json::Value::Null, &chain, &result));
        }
    }

    match ctx.format {
        Format::Json => {
            let results: Vec<serde_json::Value> = rows.into_iter().map(|(_, v)| v).collect();
            Ok(pretty(&json!({
                "meta": ctx.meta(),
                "results": results,
            })))
        }
        Format::Csv => {
            let mut out = ctx.csv_preamble("charlen");
            out.push_str(
                "source,link_lengths,characteristic_length,best_distance,converged,starts_used,best_posture\n",
            );
            for (source, value) in rows {
                out.push_str(&format!(
                    "\"{}\",\"{}\",{},{},{},{},\"{}\"\n",
                    source,
                    join_f64(
                        value["chain"]
                            .as_array()
                            .map(|a| a
                                .iter()
                                .map(|v| v.as_f64().unwrap_or(f64::NAN))
                                .collect::<Vec<_>>())
                            .unwrap_or_default()
                            .as_slice()
                    ),
                    value["characteristic_length"],
                    value["best_distance"],
                    value["converged"],
                    value["starts_used"],
                    join_f64(
                        value["best_posture"]
                            .as_array()
                            .map(|a| a
                                .iter()
                                .map(|v| v.as_f64().unwrap_or(f64::NAN))
                                .collect::<Vec<_>>())
                            .unwrap_or_default()
                            .as_slice()
                    ),
                ));
            }
            Ok(out)
        }
    }
}

fn charlen_row(
    ordering: serde_json::Value,
    chain: &KinematicChain,
    result: &isokin::CharacteristicLengthResult,
) -> (String, serde_json::Value) {
    let source = if ordering.is_null() {
        "chain".to_string()
    } else {
        ordering
            .as_array()
            .map(|a| {
                a.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .unwrap_or_default()
    };
    let value = json!({
        "kind": "characteristic_length",
        "ordering": ordering,
        "chain": chain.link_lengths(),
        "characteristic_length": result.characteristic_length,
        "best_posture": result.best_posture.joint_angles(),
        "best_distance": result.best_distance,
        "converged": result.converged,
        "starts_used": result.starts_used,
    });
    (source, value)
}

pub fn render(
    ctx: &Context,
    doc: &DesignDocument,
    selection: &OrderingSelection,
) -> Result<String, CliError> {
    let set = doc.point_set()?;
    let orderings = select_orderings(ctx, doc, &set, selection)?;
    svg::render_placements(&set, &orderings)
}

fn matrix_rows(j: &JacobianMatrix) -> Vec<Vec<f64>> {
    (0..3)
        .map(|i| (0..j.ncols()).map(|c| j.matrix()[(i, c)]).collect())
        .collect()
}

fn pretty(value: &serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    text
}

fn join_usize(values: &[usize]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn join_f64(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
