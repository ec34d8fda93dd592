use std::fs;

use cdlat_core::cdengine::{
    self, append_shape_block, compute_cd_full, verify_predicted, CdLattice, EngineError,
    LatticeMode, VerifyOptions, VerifyOutcome,
};
use cdlat_core::constructions::{self, ConstructionParams, ExpectedLattice};
use cdlat_core::gfplin::Prime;
use cdlat_core::presentation::CentralPresentation;

use crate::{resolve_jobs, BuildArgs, CdArgs, ClassifyArgs, ExportDotArgs, Outcome};

type Built = (CentralPresentation, ExpectedLattice);

fn input_err(msg: impl Into<String>) -> Outcome {
    Outcome::Input(msg.into())
}

fn read_file(path: &str) -> Result<String, Outcome> {
    fs::read_to_string(path).map_err(|e| input_err(format!("cannot read {path}: {e}")))
}

fn write_file(path: &str, text: &str) -> Result<(), Outcome> {
    fs::write(path, text).map_err(|e| input_err(format!("cannot write {path}: {e}")))
}

/// Loads a base presentation plus its lattice certificate: a builtin name,
/// or a CGP file whose lattice is either supplied as a predicted cdl file
/// or computed by a (budgeted) full search.
pub(crate) fn resolve_base(
    p: Prime,
    base: &str,
    base_lattice: Option<&str>,
    jobs: usize,
) -> Result<Built, Outcome> {
    match base {
        "trivial" => Ok(constructions::trivial(p)),
        "heisenberg" => Ok(constructions::heisenberg(p)),
        path => {
            let pres = CentralPresentation::parse(&read_file(path)?)
                .map_err(|e| input_err(format!("{path}: {e}")))?;
            if pres.modulus() != p {
                return Err(input_err(format!(
                    "base modulus {} differs from --p {}",
                    pres.modulus().get(),
                    p.get()
                )));
            }
            let named: Vec<(String, cdlat_core::gfplin::Subspace)> = match base_lattice {
                Some(lat_path) => {
                    let lat = CdLattice::parse(&read_file(lat_path)?)
                        .map_err(|e| input_err(format!("{lat_path}: {e}")))?;
                    lat.members
                        .iter()
                        .zip(&lat.names)
                        .enumerate()
                        .map(|(i, (s, n))| {
                            (n.clone().unwrap_or_else(|| format!("H{i}")), s.clone())
                        })
                        .collect()
                }
                None => {
                    let (lat, _) = compute_cd_full(&pres, 10_000_000, jobs)
                        .map_err(engine_outcome)?;
                    lat.members
                        .iter()
                        .enumerate()
                        .map(|(i, s)| (format!("H{i}"), s.clone()))
                        .collect()
                }
            };
            let exp = ExpectedLattice::from_member_list(&pres, named)
                .map_err(|e| input_err(format!("base lattice rejected: {e}")))?;
            Ok((pres, exp))
        }
    }
}

fn engine_outcome(e: EngineError) -> Outcome {
    match e {
        EngineError::BudgetExceeded { .. } => Outcome::Budget(e.to_string()),
        EngineError::Invariant(_) => Outcome::Counterexample(e.to_string()),
        EngineError::Presentation(_) | EngineError::Gf(_) | EngineError::Empty => {
            Outcome::Input(e.to_string())
        }
    }
}

fn parse_split(s: &str) -> Result<(usize, usize), Outcome> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(input_err("--split expects two comma-separated sizes, e.g. 2,4"));
    }
    let a = parts[0].trim().parse().map_err(|_| input_err("bad split size"))?;
    let b = parts[1].trim().parse().map_err(|_| input_err("bad split size"))?;
    Ok((a, b))
}

fn run_build(args: &BuildArgs) -> Result<(String, Built), Outcome> {
    let p = Prime::new(args.p).map_err(|e| input_err(e.to_string()))?;
    let jobs = resolve_jobs(None);
    let cons_err = |e: constructions::ConstructionError| input_err(e.to_string());
    match args.kind.as_str() {
        "dd" => {
            let m = args.m.ok_or_else(|| input_err("dd requires --m"))?;
            let split = match &args.split {
                Some(s) => Some(parse_split(s)?),
                None => None,
            };
            let params = ConstructionParams { m, split, ..Default::default() };
            let stem = match split {
                None => format!("dd_p{}_m{}", args.p, m),
                Some((a, b)) => format!("dd_p{}_m{}_split{}_{}", args.p, m, a, b),
            };
            Ok((stem, params.double_diamond(p).map_err(cons_err)?))
        }
        "le" => {
            let m = args.m.ok_or_else(|| input_err("le requires --m"))?;
            let n = args.n.ok_or_else(|| input_err("le requires --n"))?;
            let params = ConstructionParams { m, n, l: args.l, split: None };
            let base = resolve_base(p, &args.base, args.base_lattice.as_deref(), jobs)?;
            let built = params.diamond_extension(&base).map_err(cons_err)?;
            let stem = format!("le_p{}_m{}_n{}_l{}_{}", args.p, m, n, args.l, base_stem(&args.base));
            Ok((stem, built))
        }
        "qe" => {
            let n = args.n.ok_or_else(|| input_err("qe requires --n"))?;
            let params = ConstructionParams { n, l: args.l, ..Default::default() };
            let base = resolve_base(p, &args.base, args.base_lattice.as_deref(), jobs)?;
            let built = params.qac_extension(&base).map_err(cons_err)?;
            let stem = format!("qe_p{}_n{}_l{}_{}", args.p, n, args.l, base_stem(&args.base));
            Ok((stem, built))
        }
        "power" => {
            let k = args.k.ok_or_else(|| input_err("power requires --k"))?;
            let base = resolve_base(p, &args.base, args.base_lattice.as_deref(), jobs)?;
            let pres = constructions::direct_power(&base.0, k).map_err(cons_err)?;
            // predicted lattice: fold the product law over the factors
            let mut acc = base.clone();
            for _ in 1..k {
                let prod = acc.0.direct_product(&base.0).map_err(|e| input_err(e.to_string()))?;
                let exp = constructions::product_expected(&prod, &acc, &base).map_err(cons_err)?;
                acc = (prod, exp);
            }
            let exp = ExpectedLattice::from_member_list(
                &pres,
                acc.1
                    .members
                    .iter()
                    .map(|m| (m.name.clone(), m.space.clone()))
                    .collect(),
            )
            .map_err(cons_err)?;
            let stem = format!("power_p{}_k{}_{}", args.p, k, base_stem(&args.base));
            Ok((stem, (pres, exp)))
        }
        "abelian" => {
            let dims = args.dims.ok_or_else(|| input_err("abelian requires --dims"))?;
            let stem = format!("abelian_p{}_d{}", args.p, dims);
            Ok((stem, constructions::abelian(p, dims)))
        }
        other => Err(input_err(format!(
            "unknown construction {other:?}: expected dd, le, qe, power, or abelian"
        ))),
    }
}

fn base_stem(base: &str) -> String {
    let name = base.rsplit('/').next().unwrap_or(base);
    name.trim_end_matches(".cgp").replace('.', "_")
}

pub(crate) fn build(args: BuildArgs) -> Outcome {
    let (stem, (pres, expected)) = match run_build(&args) {
        Ok(v) => v,
        Err(o) => return o,
    };
    let cgp_path = args.out_cgp.clone().unwrap_or(format!("{stem}.cgp"));
    let cdl_path = args.out_lattice.clone().unwrap_or(format!("{stem}.cdl"));
    if let Err(o) = write_file(&cgp_path, &pres.serialize()) {
        return o;
    }
    let lattice = match expected.to_lattice(&pres) {
        Ok(l) => l,
        Err(e) => return engine_outcome(e),
    };
    let text = match lattice.serialize() {
        Ok(t) => t,
        Err(e) => return input_err(e.to_string()),
    };
    if let Err(o) = write_file(&cdl_path, &text) {
        return o;
    }
    println!(
        "v_dim={} w_dim={} |P|={}^{} |Z|={}^{}",
        pres.v_dim(),
        pres.w_dim(),
        args.p,
        pres.v_dim() + pres.w_dim(),
        args.p,
        pres.w_dim()
    );
    println!("wrote {cgp_path} and {cdl_path} ({} predicted members)", expected.members.len());
    Outcome::Ok
}

pub(crate) fn cd(args: CdArgs) -> Outcome {
    let text = match read_file(&args.input) {
        Ok(t) => t,
        Err(o) => return o,
    };
    let pres = match CentralPresentation::parse(&text) {
        Ok(p) => p,
        Err(e) => return input_err(format!("{}: {e}", args.input)),
    };
    let jobs = resolve_jobs(args.jobs);
    let lattice = match args.mode.as_str() {
        "full" => {
            let (lat, stats) = match compute_cd_full(&pres, args.budget, jobs) {
                Ok(v) => v,
                Err(e) => return engine_outcome(e),
            };
            eprintln!(
                "scanned {} subspaces across {} partitions in {:.2?}; {} members at measure exponent {}",
                stats.scanned,
                stats.partitions,
                stats.wall,
                lat.members.len(),
                lat.max_measure.value()
            );
            lat
        }
        "verify" => {
            let Some(pred_path) = &args.predicted else {
                return input_err("verify mode requires --predicted <lattice file>");
            };
            let ptext = match read_file(pred_path) {
                Ok(t) => t,
                Err(o) => return o,
            };
            let predicted = match CdLattice::parse(&ptext) {
                Ok(l) => l,
                Err(e) => return input_err(format!("{pred_path}: {e}")),
            };
            let opts = VerifyOptions {
                random_samples: args.samples,
                seed: args.seed,
                jobs,
            };
            let report = match verify_predicted(&pres, &predicted, &opts) {
                Ok(r) => r,
                Err(e) => return engine_outcome(e),
            };
            match &report.outcome {
                VerifyOutcome::Pass => {
                    eprintln!(
                        "PASS: {} members at measure exponent {}; {} adversarial + {} random samples",
                        predicted.members.len(),
                        report.measure_value,
                        report.stats.adversarial_samples,
                        report.stats.random_samples
                    );
                }
                VerifyOutcome::Counterexample { detail, witness } => {
                    let mut msg = format!("COUNTEREXAMPLE: {detail}");
                    if let Some(w) = witness {
                        msg.push_str(&format!("; witness: {w:?}"));
                    }
                    return Outcome::Counterexample(msg);
                }
            }
            CdLattice {
                mode: LatticeMode::VerifiedPredicted,
                ..predicted
            }
        }
        other => return input_err(format!("unknown mode {other:?}: expected full or verify")),
    };
    // duality / closure / modularity are hard postconditions of both modes
    if let Err(e) = cdengine::check_duality(&pres, &lattice) {
        return Outcome::Counterexample(e.to_string());
    }
    let text = match lattice.serialize() {
        Ok(t) => t,
        Err(e) => return input_err(e.to_string()),
    };
    match &args.out {
        Some(path) => {
            if let Err(o) = write_file(path, &text) {
                return o;
            }
        }
        None => print!("{text}"),
    }
    Outcome::Ok
}

pub(crate) fn classify(args: ClassifyArgs) -> Outcome {
    let text = match read_file(&args.input) {
        Ok(t) => t,
        Err(o) => return o,
    };
    let lat = match CdLattice::parse(&text) {
        Ok(l) => l,
        Err(e) => return input_err(format!("{}: {e}", args.input)),
    };
    let shape = match lat.classify() {
        Ok(s) => s,
        Err(e) => return input_err(e.to_string()),
    };
    let mut block = String::new();
    append_shape_block(&mut block, &shape);
    print!("{block}");
    if let Some(expect) = &args.expect {
        let got = shape.summary();
        if &got != expect {
            return Outcome::Counterexample(format!(
                "shape mismatch: expected {expect:?}, got {got:?}"
            ));
        }
    }
    Outcome::Ok
}

pub(crate) fn export_dot(args: ExportDotArgs) -> Outcome {
    let text = match read_file(&args.input) {
        Ok(t) => t,
        Err(o) => return o,
    };
    let lat = match CdLattice::parse(&text) {
        Ok(l) => l,
        Err(e) => return input_err(format!("{}: {e}", args.input)),
    };
    let dot = render_dot(&lat);
    match &args.out {
        Some(path) => {
            if let Err(o) = write_file(path, &dot) {
                return o;
            }
            Outcome::Ok
        }
        None => {
            print!("{dot}");
            Outcome::Ok
        }
    }
}

/// Deterministic DOT rendering: one node per member labeled by its bound
/// name (falling back to its dimension), one edge per cover drawn upward,
/// and same-rank hints grouping members of equal dimension.
pub(crate) fn render_dot(lat: &CdLattice) -> String {
    let mut out = String::new();
    out.push_str("digraph cd {\n");
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [shape=box];\n");
    for (i, m) in lat.members.iter().enumerate() {
        let label = match &lat.names[i] {
            Some(n) => n.clone(),
            None => format!("dim {}", m.dim()),
        };
        out.push_str(&format!("  m{i} [label=\"{label}\"];\n"));
    }
    let mut dims: Vec<usize> = lat.members.iter().map(|m| m.dim()).collect();
    dims.sort_unstable();
    dims.dedup();
    for d in dims {
        let group: Vec<String> = lat
            .members
            .iter()
            .enumerate()
            .filter(|(_, m)| m.dim() == d)
            .map(|(i, _)| format!("m{i};"))
            .collect();
        if group.len() > 1 {
            out.push_str(&format!("  {{ rank=same; {} }}\n", group.join(" ")));
        }
    }
    let mut edges: Vec<(usize, usize)> = lat.covers.iter().map(|&(hi, lo)| (lo, hi)).collect();
    edges.sort_unstable();
    for (lo, hi) in edges {
        out.push_str(&format!("  m{lo} -> m{hi};\n"));
    }
    out.push_str("}\n");
    out
}
