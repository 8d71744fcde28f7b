//! File formats, the built-in algebra catalog, the theorem-verification
//! harness, and the command-line entry point.

use crate::chief::{
    classify_module, multiplicity_report, ordinary_chief_series, ordinary_split_counts,
    p_chief_series, p_split_counts, PChiefSeries,
};
use crate::cohom::{
    end_dim, five_term_bounds, h1_ordinary, h1_restricted, rhs_main_formula, RestrictedModule,
};
use crate::ffla::{FpMatrix, Subspace};
use crate::reslie::{direct_sum, fixtures, RestrictedLieAlgebra};
use crate::uenv::{
    blocks, irreducibles, loewy_layer_multiplicities, principal_block, projective_cover_trivial,
    radical, trivial_index, UEnvelope,
};
use crate::{Error, Result};
use clap::{Parser, Subcommand};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

// ---------------------------------------------------------------------------
// file formats
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraDoc {
    name: Option<String>,
    p: u32,
    basis: Vec<String>,
    #[serde(default)]
    brackets: BTreeMap<String, BTreeMap<String, i64>>,
    #[serde(default)]
    pmap: BTreeMap<String, BTreeMap<String, i64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleDoc {
    #[allow(dead_code)]
    name: Option<String>,
    dim: usize,
    #[serde(default)]
    action: BTreeMap<String, BTreeMap<String, i64>>,
}

/// An algebra together with the name it was given in its source.
pub struct NamedAlgebra {
    pub name: String,
    pub algebra: Arc<RestrictedLieAlgebra>,
}

fn toml_error(text: &str, e: toml::de::Error) -> Error {
    let line = e
        .span()
        .map(|s| text[..s.start.min(text.len())].matches('\n').count() + 1)
        .unwrap_or(0);
    Error::Parse { line, msg: e.message().to_string() }
}

fn label_index(labels: &[String], label: &str) -> Result<usize> {
    labels
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| Error::Parse { line: 0, msg: format!("unknown basis label `{label}`") })
}

fn reduce(c: i64, p: u32) -> u32 {
    (c.rem_euclid(p as i64)) as u32
}

fn coeff_vector(map: &BTreeMap<String, i64>, labels: &[String], p: u32) -> Result<Vec<u32>> {
    let mut v = vec![0u32; labels.len()];
    for (label, &c) in map {
        v[label_index(labels, label)?] = reduce(c, p);
    }
    Ok(v)
}

/// Parse without running the mathematical validation (shape checks only).
pub fn parse_algebra_unvalidated(text: &str) -> Result<NamedAlgebra> {
    let doc: AlgebraDoc = toml::from_str(text).map_err(|e| toml_error(text, e))?;
    let labels = doc.basis.clone();
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(Error::Parse { line: 0, msg: format!("duplicate basis label `{l}`") });
        }
    }
    let mut brackets = Vec::new();
    for (pair, coeffs) in &doc.brackets {
        let (a, b) = pair.split_once(',').ok_or_else(|| Error::Parse {
            line: 0,
            msg: format!("bracket key `{pair}` must be `label,label`"),
        })?;
        let i = label_index(&labels, a.trim())?;
        let j = label_index(&labels, b.trim())?;
        if i >= j {
            return Err(Error::Parse {
                line: 0,
                msg: format!("bracket key `{pair}` must list labels in basis order"),
            });
        }
        brackets.push(((i, j), coeff_vector(coeffs, &labels, doc.p)?));
    }
    let mut pmap = vec![vec![0u32; labels.len()]; labels.len()];
    for (label, coeffs) in &doc.pmap {
        pmap[label_index(&labels, label)?] = coeff_vector(coeffs, &labels, doc.p)?;
    }
    let algebra = RestrictedLieAlgebra::new(doc.p, labels, &brackets, pmap)?;
    Ok(NamedAlgebra {
        name: doc.name.unwrap_or_else(|| "unnamed".into()),
        algebra: Arc::new(algebra),
    })
}

/// Parse and validate an algebra description.
pub fn parse_algebra(text: &str) -> Result<NamedAlgebra> {
    let named = parse_algebra_unvalidated(text)?;
    let report = named.algebra.validate();
    if !report.passed() {
        return Err(Error::Validation(report.to_string()));
    }
    Ok(named)
}

fn toml_key(label: &str) -> String {
    let bare = !label.is_empty()
        && label.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-');
    if bare {
        label.to_string()
    } else {
        format!("\"{label}\"")
    }
}

fn sparse_line(out: &mut String, key: &str, coeffs: &[u32], labels: &[String]) {
    let inner: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| format!("{} = {c}", toml_key(&labels[k])))
        .collect();
    let _ = writeln!(out, "{key} = {{ {} }}", inner.join(", "));
}

/// Canonical serialization: sparse maps in basis order, zero entries
/// omitted. `parse_algebra ∘ serialize_algebra` is the identity, and
/// serialization of a parsed canonical file reproduces it byte for byte.
pub fn serialize_algebra(name: &str, l: &RestrictedLieAlgebra) -> String {
    let labels: Vec<String> = l.basis_names().to_vec();
    let mut out = String::new();
    let _ = writeln!(out, "name = \"{name}\"");
    let _ = writeln!(out, "p = {}", l.p());
    let basis: Vec<String> = labels.iter().map(|l| format!("\"{l}\"")).collect();
    let _ = writeln!(out, "basis = [{}]", basis.join(", "));
    let n = l.dim();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .filter(|&(i, j)| l.bracket_basis(i, j).iter().any(|&c| c != 0))
        .collect();
    if !pairs.is_empty() {
        let _ = writeln!(out, "\n[brackets]");
        for (i, j) in pairs {
            let key = format!("\"{},{}\"", labels[i], labels[j]);
            sparse_line(&mut out, &key, &l.bracket_basis(i, j), &labels);
        }
    }
    let nonzero_pmap: Vec<usize> =
        (0..n).filter(|&i| l.pmap_basis(i).iter().any(|&c| c != 0)).collect();
    if !nonzero_pmap.is_empty() {
        let _ = writeln!(out, "\n[pmap]");
        for i in nonzero_pmap {
            sparse_line(&mut out, &toml_key(&labels[i]), l.pmap_basis(i), &labels);
        }
    }
    out
}

/// Parse a module description over a given algebra and validate it.
pub fn parse_module(text: &str, algebra: &Arc<RestrictedLieAlgebra>) -> Result<RestrictedModule> {
    let doc: ModuleDoc = toml::from_str(text).map_err(|e| toml_error(text, e))?;
    let labels: Vec<String> = algebra.basis_names().to_vec();
    let p = algebra.p();
    let mut action = vec![FpMatrix::zeros(p, doc.dim, doc.dim); algebra.dim()];
    for (label, entries) in &doc.action {
        let i = label_index(&labels, label)?;
        for (pos, &c) in entries {
            let (r, col) = pos.split_once(',').ok_or_else(|| Error::Parse {
                line: 0,
                msg: format!("action key `{pos}` must be `row,col`"),
            })?;
            let parse_idx = |s: &str| -> Result<usize> {
                s.trim().parse().map_err(|_| Error::Parse {
                    line: 0,
                    msg: format!("bad matrix index `{pos}`"),
                })
            };
            let (r, col) = (parse_idx(r)?, parse_idx(col)?);
            if r >= doc.dim || col >= doc.dim {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("matrix index `{pos}` out of range for dim {}", doc.dim),
                });
            }
            action[i].set(r, col, reduce(c, p));
        }
    }
    let module = RestrictedModule::new(algebra.clone(), action)?;
    let report = module.validate();
    if !report.passed() {
        return Err(Error::Validation(report.to_string()));
    }
    Ok(module)
}

/// Canonical module serialization, mirroring [`serialize_algebra`].
pub fn serialize_module(name: &str, module: &RestrictedModule) -> String {
    let labels = module.algebra().basis_names();
    let mut out = String::new();
    let _ = writeln!(out, "name = \"{name}\"");
    let _ = writeln!(out, "dim = {}", module.dim());
    for (i, label) in labels.iter().enumerate() {
        let a = module.action(i);
        if a.is_zero() {
            continue;
        }
        let _ = writeln!(out, "\n[action.{}]", toml_key(label));
        for r in 0..module.dim() {
            for c in 0..module.dim() {
                if a.get(r, c) != 0 {
                    let _ = writeln!(out, "\"{r},{c}\" = {}", a.get(r, c));
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// catalog
// ---------------------------------------------------------------------------

pub struct CatalogEntry {
    pub name: String,
    pub algebra: Arc<RestrictedLieAlgebra>,
}

/// The built-in catalog: the standard small algebras at p = 2 and p = 3
/// (where the structure is valid), two direct sums, and sl2 over F_3.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    let mut push = |name: &str, alg: RestrictedLieAlgebra| {
        debug_assert!(alg.validate().passed(), "catalog entry {name} invalid");
        out.push(CatalogEntry { name: name.to_string(), algebra: Arc::new(alg) });
    };
    for p in [2u32, 3] {
        push(&format!("ab1_null_{p}"), fixtures::ab1_null(p));
        push(&format!("torus1_{p}"), fixtures::torus1(p));
        push(&format!("ab2_{p}"), fixtures::ab2(p));
        push(&format!("aff2_{p}"), fixtures::aff2(p));
        push(&format!("heis3_{p}"), fixtures::heis3(p));
        push(&format!("torus2_{p}"), fixtures::torus2(p));
    }
    push(
        "sum_torus1_heis3_2",
        direct_sum(&fixtures::torus1(2), &fixtures::heis3(2)).expect("same prime"),
    );
    push(
        "sum_aff2_ab1_null_3",
        direct_sum(&fixtures::aff2(3), &fixtures::ab1_null(3)).expect("same prime"),
    );
    push("sl2_3", fixtures::sl2(3));
    out
}

/// Every restricted Lie algebra structure of dimension at most 2 over F_p,
/// by exhaustive coefficient enumeration filtered through validation.
pub fn small_family(p: u32) -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    // dimension 1: x^{[p]} = c·x
    for c in 0..p {
        let alg =
            RestrictedLieAlgebra::new(p, vec!["x".into()], &[], vec![vec![c]]).expect("shape");
        if alg.validate().passed() {
            out.push(CatalogEntry {
                name: format!("p{p}_d1_{c}"),
                algebra: Arc::new(alg),
            });
        }
    }
    // dimension 2: [x,y] = a·x + b·y, x^{[p]} and y^{[p]} arbitrary
    for a in 0..p {
        for b in 0..p {
            for px0 in 0..p {
                for px1 in 0..p {
                    for py0 in 0..p {
                        for py1 in 0..p {
                            let alg = RestrictedLieAlgebra::new(
                                p,
                                vec!["x".into(), "y".into()],
                                &[((0, 1), vec![a, b])],
                                vec![vec![px0, px1], vec![py0, py1]],
                            )
                            .expect("shape");
                            if alg.validate().passed() {
                                out.push(CatalogEntry {
                                    name: format!("p{p}_d2_{a}{b}_{px0}{px1}_{py0}{py1}"),
                                    algebra: Arc::new(alg),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// verification harness
// ---------------------------------------------------------------------------

pub const THEOREMS: &[&str] = &[
    "main", "triv", "split", "block", "charsolv", "loewybd", "llpim", "psplitsolv", "five-term",
];

#[derive(Debug, Clone)]
pub struct ReportRow {
    pub label: String,
    pub lhs: i64,
    pub rhs: i64,
    pub witness: String,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub algebra: String,
    pub theorem: String,
    pub pass: bool,
    pub rows: Vec<ReportRow>,
    pub seed: u64,
    pub millis: u128,
}

impl VerificationReport {
    pub fn machine_line(&self) -> String {
        format!(
            "CHECK theorem={} algebra={} status={} seed={}",
            self.theorem,
            self.algebra,
            if self.pass { "PASS" } else { "FAIL" },
            self.seed
        )
    }
}

/// Everything the per-theorem checks consume, computed once per verify call.
struct Ctx {
    l: Arc<RestrictedLieAlgebra>,
    env: UEnvelope,
    irr: Vec<RestrictedModule>,
    labels: Vec<String>,
    rad: Subspace,
}

impl Ctx {
    fn new(l: &Arc<RestrictedLieAlgebra>, seed: u64) -> Result<Self> {
        let env = UEnvelope::new(l.clone())?;
        let irr = irreducibles(&env, seed)?;
        let rad = radical(&env, &irr)?;
        let triv = trivial_index(&irr);
        let labels = irr
            .iter()
            .enumerate()
            .map(|(i, s)| {
                if Some(i) == triv {
                    "F".to_string()
                } else {
                    format!("S{i}_d{}", s.dim())
                }
            })
            .collect();
        Ok(Self { l: l.clone(), env, irr, labels, rad })
    }

    fn p_split(&self, seed: u64) -> Result<Vec<usize>> {
        Ok(p_split_counts(&p_chief_series(&self.l, seed)?, &self.irr))
    }

    /// Multiplicity of each irreducible in each Loewy layer of P_L(F).
    fn cover_layers(&self) -> Result<Vec<Vec<usize>>> {
        let cover = projective_cover_trivial(&self.env, &self.irr, &self.rad)?;
        loewy_layer_multiplicities(&self.env, &cover.module, &self.rad, &self.irr)
    }

    fn second_layer(&self) -> Result<Vec<usize>> {
        let layers = self.cover_layers()?;
        Ok(layers.get(1).cloned().unwrap_or_else(|| vec![0; self.irr.len()]))
    }
}

const MAIN_SEED_ROUNDS: u64 = 20;

fn check_main(ctx: &Ctx, seed: u64) -> Result<(bool, Vec<ReportRow>)> {
    let rhs: Vec<usize> =
        ctx.irr.iter().map(rhs_main_formula).collect::<Result<_>>()?;
    let mut pass = true;
    let mut rows = Vec::new();
    let base = ctx.p_split(seed)?;
    for (i, label) in ctx.labels.iter().enumerate() {
        rows.push(ReportRow {
            label: label.clone(),
            lhs: base[i] as i64,
            rhs: rhs[i] as i64,
            witness: String::new(),
        });
        if base[i] != rhs[i] {
            pass = false;
        }
    }
    for s in seed..seed + MAIN_SEED_ROUNDS {
        let counts = ctx.p_split(s)?;
        if counts != rhs {
            pass = false;
            rows.push(ReportRow {
                label: "series".into(),
                lhs: -1,
                rhs: -1,
                witness: format!("count mismatch at seed {s}"),
            });
        }
    }
    Ok((pass, rows))
}

fn check_triv(ctx: &Ctx, seed: u64) -> Result<(bool, Vec<ReportRow>)> {
    let triv = trivial_index(&ctx.irr)
        .ok_or_else(|| Error::Certification("trivial module missing from catalog".into()))?;
    let lhs = ctx.p_split(seed)?[triv];
    let full = ctx.l.full_space();
    let derived = ctx.l.bracket_space(&full, &full);
    let sub = derived.sum(&ctx.l.p_power_span()?)?;
    let rhs = ctx.l.dim() - sub.dim();
    Ok((
        lhs == rhs,
        vec![ReportRow {
            label: "F".into(),
            lhs: lhs as i64,
            rhs: rhs as i64,
            witness: String::new(),
        }],
    ))
}

fn check_split(ctx: &Ctx, seed: u64) -> Result<(bool, Vec<ReportRow>)> {
    let p_counts = ctx.p_split(seed)?;
    let o_counts =
        ordinary_split_counts(&ordinary_chief_series(&ctx.l, seed)?, &ctx.irr);
    let triv = trivial_index(&ctx.irr);
    let full = ctx.l.full_space();
    let derived = ctx.l.bracket_space(&full, &full);
    let ppow = ctx.l.p_power_span()?;
    let correction = ppow.dim() - ppow.intersect(&derived)?.dim();
    let mut pass = true;
    let mut rows = Vec::new();
    for (i, label) in ctx.labels.iter().enumerate() {
        let rhs = if Some(i) == triv {
            o_counts[i] as i64 - correction as i64
        } else {
            o_counts[i] as i64
        };
        let equal = p_counts[i] as i64 == rhs;
        let bounded = p_counts[i] <= o_counts[i];
        if !(equal && bounded) {
            pass = false;
        }
        rows.push(ReportRow {
            label: label.clone(),
            lhs: p_counts[i] as i64,
            rhs,
            witness: if bounded {
                String::new()
            } else {
                format!("p-split {} exceeds ordinary split {}", p_counts[i], o_counts[i])
            },
        });
    }
    Ok((pass, rows))
}

fn check_block(ctx: &Ctx, seed: u64) -> Result<(bool, Vec<ReportRow>)> {
    let principal = principal_block(&ctx.irr)
        .ok_or_else(|| Error::Certification("no principal block".into()))?;
    let series = p_chief_series(&ctx.l, seed)?;
    let mut pass = true;
    let mut rows = Vec::new();
    for (k, f) in series.factors.iter().enumerate() {
        if !f.strongly_abelian {
            continue;
        }
        let m = f.module.as_ref().expect("strongly abelian factor has a module");
        let class = classify_module(m, &ctx.irr)
            .ok_or_else(|| Error::Certification("factor not in irreducible catalog".into()))?;
        let inside = principal.contains(&class);
        if !inside {
            pass = false;
        }
        rows.push(ReportRow {
            label: format!("factor{k}:{}", ctx.labels[class]),
            lhs: inside as i64,
            rhs: 1,
            witness: if inside {
                String::new()
            } else {
                "class outside the principal block".into()
            },
        });
    }
    Ok((pass, rows))
}

/// Biconditional check shared by charsolv and llpim: solvability must match
/// per-class equality, both over all classes and over the principal block.
fn biconditional(
    ctx: &Ctx,
    lhs: &[usize],
    rhs: &[usize],
) -> Result<(bool, Vec<ReportRow>)> {
    let solvable = ctx.l.is_solvable();
    let principal = principal_block(&ctx.irr)
        .ok_or_else(|| Error::Certification("no principal block".into()))?;
    let eq_all = lhs == rhs;
    let eq_principal = principal.iter().all(|&i| lhs[i] == rhs[i]);
    let pass = (solvable == eq_all) && (solvable == eq_principal);
    let mut rows = Vec::new();
    for (i, label) in ctx.labels.iter().enumerate() {
        let mut witness = String::new();
        if lhs[i] != rhs[i] {
            witness = format!(
                "inequality witness{}",
                if principal.contains(&i) { " (principal block)" } else { "" }
            );
        }
        rows.push(ReportRow {
            label: label.clone(),
            lhs: lhs[i] as i64,
            rhs: rhs[i] as i64,
            witness,
        });
    }
    rows.push(ReportRow {
        label: "solvable".into(),
        lhs: solvable as i64,
        rhs: eq_all as i64,
        witness: format!("equality over principal block: {eq_principal}"),
    });
    Ok((pass, rows))
}

fn check_charsolv(ctx: &Ctx, seed: u64) -> Result<(bool, Vec<ReportRow>)> {
    let counts = ctx.p_split(seed)?;
    let lhs: Vec<usize> = ctx.irr.iter().map(|s| h1_restricted(s).dim_f).collect();
    let rhs: Vec<usize> = ctx
        .irr
        .iter()
        .zip(&counts)
        .map(|(s, &c)| end_dim(s) * c)
        .collect();
    biconditional(ctx, &lhs, &rhs)
}

fn check_loewybd(ctx: &Ctx, seed: u64) -> Result<(bool, Vec<ReportRow>)> {
    let counts = ctx.p_split(seed)?;
    let layer2 = ctx.second_layer()?;
    let mut pass = true;
    let rows = ctx
        .labels
        .iter()
        .enumerate()
        .map(|(i, label)| {
            if layer2[i] < counts[i] {
                pass = false;
            }
            ReportRow {
                label: label.clone(),
                lhs: layer2[i] as i64,
                rhs: counts[i] as i64,
                witness: if layer2[i] >= counts[i] {
                    String::new()
                } else {
                    "second-layer multiplicity below p-split count".into()
                },
            }
        })
        .collect();
    Ok((pass, rows))
}

fn check_llpim(ctx: &Ctx, seed: u64) -> Result<(bool, Vec<ReportRow>)> {
    let counts = ctx.p_split(seed)?;
    let layer2 = ctx.second_layer()?;
    biconditional(ctx, &layer2, &counts)
}

fn check_psplitsolv(ctx: &Ctx, seed: u64) -> Result<(bool, Vec<ReportRow>)> {
    let counts = ctx.p_split(seed)?;
    let layers = ctx.cover_layers()?;
    let layer2 = layers.get(1).cloned().unwrap_or_else(|| vec![0; ctx.irr.len()]);
    let mut pass = true;
    let mut rows = Vec::new();
    for (i, label) in ctx.labels.iter().enumerate() {
        let summand = counts[i] <= layer2[i];
        let total: usize = layers.iter().map(|l| l[i]).sum();
        let comp = counts[i] == 0 || total > 0;
        if !(summand && comp) {
            pass = false;
        }
        rows.push(ReportRow {
            label: label.clone(),
            lhs: counts[i] as i64,
            rhs: layer2[i] as i64,
            witness: if summand && comp {
                String::new()
            } else {
                "split factor missing from P_L(F)".into()
            },
        });
    }
    Ok((pass, rows))
}

fn check_five_term(ctx: &Ctx, seed: u64) -> Result<(bool, Vec<ReportRow>)> {
    let series = p_chief_series(&ctx.l, seed)?;
    let mut pass = true;
    let mut rows = Vec::new();
    for (k, ideal) in series.chain.iter().enumerate() {
        for (i, s) in ctx.irr.iter().enumerate() {
            if !ctx.l.annihilator(s).contains(ideal) {
                continue; // the sequence needs I to annihilate S
            }
            match five_term_bounds(ideal, s) {
                Ok(report) => rows.push(ReportRow {
                    label: format!("I{k}(dim {}):{}", ideal.dim(), ctx.labels[i]),
                    lhs: report.h1_quotient as i64,
                    rhs: report.h1_total as i64,
                    witness: format!("upper bound {}", report.h1_quotient + report.hom_ibar),
                }),
                Err(Error::Certification(msg)) => {
                    pass = false;
                    rows.push(ReportRow {
                        label: format!("I{k}(dim {}):{}", ideal.dim(), ctx.labels[i]),
                        lhs: -1,
                        rhs: -1,
                        witness: msg,
                    });
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok((pass, rows))
}

/// Run one theorem check against one algebra.
pub fn verify(
    name: &str,
    l: &Arc<RestrictedLieAlgebra>,
    theorem: &str,
    seed: u64,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let ctx = Ctx::new(l, seed)?;
    let (pass, rows) = match theorem {
        "main" => check_main(&ctx, seed)?,
        "triv" => check_triv(&ctx, seed)?,
        "split" => check_split(&ctx, seed)?,
        "block" => check_block(&ctx, seed)?,
        "charsolv" => check_charsolv(&ctx, seed)?,
        "loewybd" => check_loewybd(&ctx, seed)?,
        "llpim" => check_llpim(&ctx, seed)?,
        "psplitsolv" => check_psplitsolv(&ctx, seed)?,
        "five-term" => check_five_term(&ctx, seed)?,
        other => {
            return Err(Error::Validation(format!(
                "unknown theorem id `{other}` (expected one of {})",
                THEOREMS.join(", ")
            )))
        }
    };
    Ok(VerificationReport {
        algebra: name.to_string(),
        theorem: theorem.to_string(),
        pass,
        rows,
        seed,
        millis: start.elapsed().as_millis(),
    })
}

/// Observed answer to the open question: is every strongly abelian p-chief
/// factor of L a composition factor of P_L(F)? Report-only; never part of
/// `verify`.
pub fn explore(name: &str, l: &Arc<RestrictedLieAlgebra>, seed: u64) -> Result<(bool, String)> {
    let ctx = Ctx::new(l, seed)?;
    let series = p_chief_series(l, seed)?;
    let layers = ctx.cover_layers()?;
    let mut observed = true;
    let mut detail = String::new();
    for f in &series.factors {
        if !f.strongly_abelian {
            continue;
        }
        let class = classify_module(f.module.as_ref().unwrap(), &ctx.irr)
            .ok_or_else(|| Error::Certification("factor not in irreducible catalog".into()))?;
        let total: usize = layers.iter().map(|l| l[class]).sum();
        if total == 0 {
            observed = false;
            let _ = write!(detail, " missing={}", ctx.labels[class]);
        }
    }
    let _ = write!(
        detail,
        " (algebra={name} solvable={} seed={seed})",
        l.is_solvable()
    );
    Ok((observed, detail))
}

// ---------------------------------------------------------------------------
// CLI
// ---------------------------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "pchief",
    about = "Exact computation with finite-dimensional restricted Lie algebras over F_p",
    disable_version_flag = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and validate an algebra file.
    Check { file: PathBuf },
    /// Compute seeded p-chief series and classify the factors.
    ChiefSeries {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: u64,
    },
    /// List the irreducible restricted modules with their endomorphism dims.
    Irreducibles {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// First cohomology of a module given by a module file.
    H1 {
        file: PathBuf,
        module_file: PathBuf,
        #[arg(long)]
        ordinary: bool,
    },
    /// The multiplicity table: p-split, ordinary split, main-formula rhs, H¹.
    Multiplicity {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Loewy layers of the projective cover of the trivial module.
    Loewy {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Block partition of the irreducibles.
    Blocks {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Verify one theorem on one algebra.
    Verify {
        file: PathBuf,
        #[arg(long)]
        theorem: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Verify every theorem on the built-in catalog.
    VerifyAll {
        /// Use the shipped catalog (the default; kept as an explicit flag).
        #[arg(long)]
        catalog: bool,
        /// Also run the main formula on the exhaustive dim ≤ 2 families.
        #[arg(long)]
        small: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Report the observed answer to the open composition-factor question.
    Explore {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn read_algebra(path: &PathBuf) -> Result<NamedAlgebra> {
    let text = std::fs::read_to_string(path)?;
    parse_algebra(&text)
}

fn print_report(report: &VerificationReport) {
    println!(
        "theorem {} on {} [seed {}]: {} ({} ms)",
        report.theorem,
        report.algebra,
        report.seed,
        if report.pass { "PASS" } else { "FAIL" },
        report.millis
    );
    for row in &report.rows {
        println!(
            "  {:<18} lhs {:>3}  rhs {:>3}  {}",
            row.label, row.lhs, row.rhs, row.witness
        );
    }
    println!("{}", report.machine_line());
}

fn series_summary(l: &Arc<RestrictedLieAlgebra>, series: &PChiefSeries) -> String {
    let mut out = String::new();
    let dims: Vec<String> = series.chain.iter().map(|s| s.dim().to_string()).collect();
    let _ = writeln!(out, "chain dims: {}", dims.join(" < "));
    for (k, f) in series.factors.iter().enumerate() {
        let _ = writeln!(
            out,
            "  factor {k}: dim {}, strongly abelian: {}, split: {}",
            f.dim(),
            f.strongly_abelian,
            f.split.map(|b| b.to_string()).unwrap_or_else(|| "n/a".into())
        );
    }
    let _ = write!(out, "  (algebra dim {}, p = {})", l.dim(), l.p());
    out
}

fn run(cmd: Cmd) -> Result<bool> {
    match cmd {
        Cmd::Check { file } => {
            let text = std::fs::read_to_string(&file)?;
            let named = parse_algebra_unvalidated(&text)?;
            let report = named.algebra.validate();
            let pass = report.passed();
            if pass {
                println!(
                    "{}: valid restricted Lie algebra, p = {}, dim {}",
                    named.name,
                    named.algebra.p(),
                    named.algebra.dim()
                );
            } else {
                print!("{report}");
            }
            println!(
                "CHECK theorem=validate algebra={} status={} seed=0",
                named.name,
                if pass { "PASS" } else { "FAIL" }
            );
            Ok(pass)
        }
        Cmd::ChiefSeries { file, seed, count } => {
            let named = read_algebra(&file)?;
            for s in seed..seed + count.max(1) {
                let series = p_chief_series(&named.algebra, s)?;
                println!("seed {s}:");
                println!("{}", series_summary(&named.algebra, &series));
            }
            Ok(true)
        }
        Cmd::Irreducibles { file, seed } => {
            let named = read_algebra(&file)?;
            let env = UEnvelope::new(named.algebra.clone())?;
            let irr = irreducibles(&env, seed)?;
            println!("{} irreducible classes of {}:", irr.len(), named.name);
            for (i, s) in irr.iter().enumerate() {
                println!("  S{i}: dim {}, dim End = {}", s.dim(), end_dim(s));
            }
            Ok(true)
        }
        Cmd::H1 { file, module_file, ordinary } => {
            let named = read_algebra(&file)?;
            let text = std::fs::read_to_string(&module_file)?;
            let module = parse_module(&text, &named.algebra)?;
            let h = if ordinary { h1_ordinary(&module) } else { h1_restricted(&module) };
            let kind = if ordinary { "H1" } else { "H1_*" };
            println!(
                "dim_F {kind}({}, module dim {}) = {} (cocycles {}, coboundaries {})",
                named.name,
                module.dim(),
                h.dim_f,
                h.cocycle_basis.dim(),
                h.coboundary_basis.dim()
            );
            Ok(true)
        }
        Cmd::Multiplicity { file, seed } => {
            let named = read_algebra(&file)?;
            let env = UEnvelope::new(named.algebra.clone())?;
            let irr = irreducibles(&env, seed)?;
            let report = multiplicity_report(&named.algebra, &irr, seed)?;
            println!(
                "{:<10} {:>8} {:>8} {:>10} {:>8}",
                "class", "p-split", "split", "rhs(main)", "h1/D"
            );
            for (i, s) in irr.iter().enumerate() {
                println!(
                    "{:<10} {:>8} {:>8} {:>10} {:>8}",
                    format!("S{i}_d{}", s.dim()),
                    report.p_split[i],
                    report.split_ordinary[i],
                    report.rhs_main[i],
                    report.h1_dim_over_d[i]
                );
            }
            Ok(true)
        }
        Cmd::Loewy { file, seed } => {
            let named = read_algebra(&file)?;
            let ctx = Ctx::new(&named.algebra, seed)?;
            let layers = ctx.cover_layers()?;
            println!("Loewy layers of P_{}(F):", named.name);
            for (k, layer) in layers.iter().enumerate() {
                let parts: Vec<String> = layer
                    .iter()
                    .enumerate()
                    .filter(|(_, &m)| m > 0)
                    .map(|(i, &m)| format!("{}^{m}", ctx.labels[i]))
                    .collect();
                println!("  layer {}: {}", k + 1, parts.join(" + "));
            }
            Ok(true)
        }
        Cmd::Blocks { file, seed } => {
            let named = read_algebra(&file)?;
            let ctx = Ctx::new(&named.algebra, seed)?;
            let bl = blocks(&ctx.irr);
            let principal = principal_block(&ctx.irr);
            for (k, b) in bl.iter().enumerate() {
                let names: Vec<String> = b.iter().map(|&i| ctx.labels[i].clone()).collect();
                let tag = if Some(b) == principal.as_ref() { " (principal)" } else { "" };
                println!("block {k}: {{{}}}{tag}", names.join(", "));
            }
            Ok(true)
        }
        Cmd::Verify { file, theorem, seed } => {
            let named = read_algebra(&file)?;
            let report = verify(&named.name, &named.algebra, &theorem, seed)?;
            print_report(&report);
            Ok(report.pass)
        }
        Cmd::VerifyAll { catalog: _, small, seed } => {
            let mut all_pass = true;
            for entry in catalog() {
                for theorem in THEOREMS {
                    let report = verify(&entry.name, &entry.algebra, theorem, seed)?;
                    all_pass &= report.pass;
                    println!("{}", report.machine_line());
                }
            }
            if small {
                for p in [2u32, 3] {
                    for entry in small_family(p) {
                        let report = verify(&entry.name, &entry.algebra, "main", seed)?;
                        all_pass &= report.pass;
                        println!("{}", report.machine_line());
                    }
                }
            }
            Ok(all_pass)
        }
        Cmd::Explore { file, seed } => {
            let named = read_algebra(&file)?;
            let (observed, detail) = explore(&named.name, &named.algebra, seed)?;
            println!(
                "EXPLORE question=strongly-abelian-factors-in-PF algebra={} observed={} seed={}",
                named.name, observed, seed
            );
            println!("  detail:{detail}");
            Ok(true)
        }
    }
}

/// Entry point used by the binary: 0 all checks pass, 1 any FAIL, 2
/// input or infrastructure error.
pub fn cli_main<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            // clap handles --help/usage printing; treat bad usage as input error
            let is_help = e.use_stderr();
            let _ = e.print();
            return if is_help { 2 } else { 0 };
        }
    };
    match run(cli.cmd) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reslie::fixtures::*;

    #[test]
    fn algebra_round_trip() {
        for entry in catalog() {
            let text = serialize_algebra(&entry.name, &entry.algebra);
            let parsed = parse_algebra(&text).unwrap();
            assert_eq!(parsed.name, entry.name);
            assert_eq!(parsed.algebra.as_ref(), entry.algebra.as_ref());
            // canonical files reproduce byte for byte
            assert_eq!(serialize_algebra(&parsed.name, &parsed.algebra), text);
        }
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(matches!(
            parse_algebra("p = 4\nbasis = [\"x\"]"),
            Err(Error::NotPrime(4))
        ));
        assert!(matches!(parse_algebra("not toml ["), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_algebra("p = 3\nbasis = [\"x\", \"x\"]"),
            Err(Error::Parse { .. })
        ));
        // aff2 with y^{[p]} = x violates ad-compatibility
        let bad = r#"
p = 3
basis = ["x", "y"]
[brackets]
"x,y" = { y = 1 }
[pmap]
x = { x = 1 }
y = { x = 1 }
"#;
        assert!(matches!(parse_algebra(bad), Err(Error::Validation(_))));
    }

    #[test]
    fn module_round_trip() {
        let a = Arc::new(sl2(3));
        let m = RestrictedModule::new(
            a.clone(),
            (0..3).map(|i| a.ad_basis(i)).collect(),
        )
        .unwrap();
        let text = serialize_module("adjoint", &m);
        let parsed = parse_module(&text, &a).unwrap();
        assert_eq!(parsed.actions(), m.actions());
        assert_eq!(serialize_module("adjoint", &parsed), text);
    }

    #[test]
    fn catalog_entries_validate() {
        let cat = catalog();
        assert!(cat.iter().any(|e| e.name == "sl2_3"));
        for e in &cat {
            assert!(e.algebra.validate().passed(), "{} invalid", e.name);
        }
        let sl2_entry = cat.iter().find(|e| e.name == "sl2_3").unwrap();
        assert_eq!(sl2_entry.algebra.pmap_basis(1), &[0, 1, 0]); // h^{[3]} = h
    }

    #[test]
    fn small_families_enumerated() {
        let f2 = small_family(2);
        let f3 = small_family(3);
        assert!(f2.iter().all(|e| e.algebra.validate().passed()));
        assert!(f3.iter().all(|e| e.algebra.validate().passed()));
        // dimension-1 structures are always valid: p of them
        assert_eq!(f2.iter().filter(|e| e.algebra.dim() == 1).count(), 2);
        assert_eq!(f3.iter().filter(|e| e.algebra.dim() == 1).count(), 3);
        assert!(f2.len() > 2 && f3.len() > 3);
    }

    #[test]
    fn verify_examples() {
        let heis = Arc::new(heis3(3));
        let report = verify("heis3_3", &heis, "main", 0).unwrap();
        assert!(report.pass);
        let f_row = report.rows.iter().find(|r| r.label == "F").unwrap();
        assert_eq!((f_row.lhs, f_row.rhs), (2, 2));

        let ab = Arc::new(ab2(3));
        let report = verify("ab2_3", &ab, "triv", 0).unwrap();
        assert!(report.pass);
        assert_eq!((report.rows[0].lhs, report.rows[0].rhs), (1, 1));

        let s = Arc::new(sl2(3));
        let report = verify("sl2_3", &s, "charsolv", 0).unwrap();
        assert!(report.pass); // biconditional: not solvable, inequality witnessed
        assert!(report
            .rows
            .iter()
            .any(|r| r.witness.contains("inequality witness") && r.lhs == 2 && r.rhs == 0));
    }

    #[test]
    fn verify_rejects_unknown_theorem() {
        let t = Arc::new(torus1(3));
        assert!(verify("torus1_3", &t, "nonsense", 0).is_err());
    }

    #[test]
    fn cli_check_and_exit_codes() {
        let dir = std::env::temp_dir();
        let good = dir.join("pchief_test_good.toml");
        let bad = dir.join("pchief_test_bad.toml");
        std::fs::write(&good, serialize_algebra("sl2_3", &sl2(3))).unwrap();
        std::fs::write(&bad, "this is [ not toml").unwrap();
        assert_eq!(cli_main(["pchief", "check", good.to_str().unwrap()]), 0);
        assert_eq!(cli_main(["pchief", "check", bad.to_str().unwrap()]), 2);
        assert_eq!(cli_main(["pchief", "check", "/nonexistent/file.toml"]), 2);
        assert_eq!(
            cli_main([
                "pchief",
                "verify",
                good.to_str().unwrap(),
                "--theorem",
                "triv"
            ]),
            0
        );
        let _ = std::fs::remove_file(&good);
        let _ = std::fs::remove_file(&bad);
    }
}
