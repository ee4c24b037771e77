use crate::{Cli, Command, Global, OracleCommand};
use gpi_core::action_compat::{action_compatibility, CompatBudgets, CompatCoset, Pair};
use gpi_core::brute_oracle::{brute_aut, brute_cohomologous, brute_indecomposable, brute_iso};
use gpi_core::cohomology::{cciso, cohomology_dim, extension_data, Cocycle, CohomologySpace};
use gpi_core::gfq_linalg::Matrix;
use gpi_core::group_core::{
    make_group, recognize_tame_2group, solvable_radical, sylow_subgroup, Family, FiniteGroup, Subgroup,
};
use gpi_core::perm_group::PermGroupBSGS;
use gpi_core::pipeline::{PipelineConfig, Registry};
use gpi_core::rep_mod::{decompose_representation, Representation};
use gpi_core::tame_enum::{count_indecomposables, wild_family, DimensionCensus};
use gpi_core::GpiError;
use serde_json::{json, Map, Value};
use std::path::Path;

pub const SCHEMA_VERSION: u32 = 1;

pub struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl From<GpiError> for Failure {
    fn from(e: GpiError) -> Self {
        let kind = match e.exit_code() {
            2 => "budget",
            3 => "verification",
            _ => "input",
        };
        Failure { code: e.exit_code() as u8, kind, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 1, kind: "usage", message: message.into() }
}

type Out = Result<Value, Failure>;

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_group(path: &Path) -> Result<FiniteGroup, Failure> {
    Ok(FiniteGroup::from_json(&read_json(path)?)?)
}

fn read_rep(path: &Path, group: &FiniteGroup) -> Result<Representation, Failure> {
    Ok(Representation::from_json(group, &read_json(path)?)?)
}

fn read_cocycle(path: &Path, group: &FiniteGroup, theta: &Representation) -> Result<Cocycle, Failure> {
    let f = Cocycle::from_json(&read_json(path)?)?;
    f.check(group, theta)?;
    Ok(f)
}

fn config(g: &Global, functor: &str) -> PipelineConfig {
    let mut cfg = PipelineConfig { seed: g.seed, functor: functor.to_string(), ..PipelineConfig::default() };
    if let Some(b) = g.h2_budget {
        cfg.h2_budget = b;
    }
    cfg.compat = budgets(g);
    cfg
}

fn budgets(g: &Global) -> CompatBudgets {
    let mut b = CompatBudgets::default();
    if let Some(c) = g.closure_budget {
        b.closure = c;
    }
    if let Some(t) = g.transporter_budget {
        b.transporter_nodes = t;
    }
    b
}

fn rows(m: &Matrix) -> Vec<Vec<u8>> {
    (0..m.rows).map(|r| m.row(r).to_vec()).collect()
}

fn pair_json(p: &Pair) -> Value {
    json!({ "alpha": rows(&p.alpha), "beta": p.beta })
}

fn subgroup_json(s: &Subgroup) -> Value {
    json!({ "order": s.order(), "elements": s.elements })
}

fn perm_group_json(g: &PermGroupBSGS) -> Value {
    let gens: Vec<Vec<usize>> = g.generators().iter().map(|p| p.images()).collect();
    json!({ "order": g.order().to_string(), "generators": gens })
}

fn parse_num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, Failure> {
    s.parse().map_err(|_| usage(format!("{what}: expected a number, got {s:?}")))
}

fn family(name: &str, params: &[String]) -> Result<Family, Failure> {
    let want = |k: usize| -> Result<(), Failure> {
        if params.len() == k {
            Ok(())
        } else {
            Err(usage(format!("{name} takes {k} parameter(s), got {}", params.len())))
        }
    };
    let f = match name {
        "cyclic" => {
            want(1)?;
            Family::Cyclic(parse_num(&params[0], "n")?)
        }
        "elem-ab" | "elem_ab" => {
            want(2)?;
            Family::ElemAb { p: parse_num(&params[0], "p")?, d: parse_num(&params[1], "d")? }
        }
        "dihedral" => {
            want(1)?;
            Family::Dihedral(parse_num(&params[0], "m")?)
        }
        "semidihedral" => {
            want(1)?;
            Family::Semidihedral(parse_num(&params[0], "m")?)
        }
        "quaternion" => {
            want(1)?;
            Family::Quaternion(parse_num(&params[0], "m")?)
        }
        "dih" => {
            want(1)?;
            Family::Dih(parse_num(&params[0], "n")?)
        }
        "symmetric" => {
            want(1)?;
            Family::Symmetric(parse_num(&params[0], "k")?)
        }
        "alternating" => {
            want(1)?;
            Family::Alternating(parse_num(&params[0], "k")?)
        }
        "product" | "direct-product" | "direct_product" => {
            want(2)?;
            let a = read_group(Path::new(&params[0]))?;
            let b = read_group(Path::new(&params[1]))?;
            Family::Product(Box::new(a), Box::new(b))
        }
        other => return Err(usage(format!("unknown family {other:?}"))),
    };
    Ok(f)
}

/// Run the command; the report always carries the schema, seed and budgets.
pub fn dispatch(cli: &Cli) -> (Value, u8) {
    let g = &cli.global;
    let (name, result) = run(&cli.command, g);
    let mut report = Map::new();
    report.insert("schema".into(), json!(format!("gpi.{name}.v{SCHEMA_VERSION}")));
    report.insert("seed".into(), json!(g.seed));
    let cfg = config(g, "o-p-radical");
    report.insert(
        "budgets".into(),
        json!({
            "h2": cfg.h2_budget,
            "closure": cfg.compat.closure,
            "transporter_nodes": cfg.compat.transporter_nodes,
        }),
    );
    let code = match result {
        Ok(Value::Object(body)) => {
            report.extend(body);
            0
        }
        Ok(other) => {
            report.insert("result".into(), other);
            0
        }
        Err(f) => {
            report.insert("error".into(), json!({ "kind": f.kind, "message": f.message }));
            f.code
        }
    };
    (Value::Object(report), code)
}

fn run(cmd: &Command, g: &Global) -> (&'static str, Out) {
    match cmd {
        Command::Make { family: name, params, output } => ("make", make(name, params, output.as_deref())),
        Command::Iso { g: a, h: b, functor, strategy, brute } => {
            let strategy = if *brute { "brute" } else { strategy.as_str() };
            ("iso", iso(a, b, functor, strategy, g))
        }
        Command::Aut { g: a, functor, brute } => ("aut", aut(a, functor, *brute, g)),
        Command::Recognize { g: a } => ("recognize", recognize(a)),
        Command::Sylow { p, g: a } => ("sylow", sylow(a, *p)),
        Command::Radical { g: a } => ("radical", radical(a)),
        Command::Decompose { rep, group } => ("decompose", decompose(rep, group, g)),
        Command::Actcomp { rep1, rep2, group } => ("actcomp", actcomp(rep1, rep2, group, g)),
        Command::H2 { group, rep, j } => ("h2", h2(group, rep, *j)),
        Command::Cciso { group, rep, f, g: gf } => ("cciso", cciso_cmd(group, rep, f, gf, g)),
        Command::Extdata { g: a, subgroup } => ("extdata", extdata(a, subgroup)),
        Command::EnumSd { ell, max_dim } => ("enum-sd", enum_sd(*ell, *max_dim, g)),
        Command::Wild { p, d } => ("wild", wild(*p, *d, g)),
        Command::Oracle(o) => ("oracle", oracle(o)),
    }
}

fn make(name: &str, params: &[String], output: Option<&Path>) -> Out {
    let f = family(name, params)?;
    let grp = make_group(&f)?;
    let mut body = json!({ "family": name, "params": params, "order": grp.order() });
    match output {
        Some(path) => {
            let text = serde_json::to_string(&grp.to_json()).expect("group serializes");
            std::fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            body["output"] = json!(path.display().to_string());
        }
        None => body["group"] = grp.to_json(),
    }
    Ok(body)
}

fn iso(a: &Path, b: &Path, functor: &str, strategy: &str, g: &Global) -> Out {
    let (ga, gb) = (read_group(a)?, read_group(b)?);
    let reg = Registry::default();
    reg.functor(functor)?;
    let cfg = config(g, functor);
    let (coset, layers) = reg.run(strategy, &ga, &gb, &cfg)?;
    Ok(json!({
        "strategy": strategy,
        "functor": functor,
        "isomorphic": !coset.is_empty(),
        "witness": coset.witness,
        "aut_order": coset.aut_order().to_string(),
        "aut_generators": coset.aut_images(),
        "layers": layers,
    }))
}

fn aut(a: &Path, functor: &str, brute: bool, g: &Global) -> Out {
    let ga = read_group(a)?;
    if brute {
        return Ok(json!({ "strategy": "brute", "aut": perm_group_json(&brute_aut(&ga)?) }));
    }
    let reg = Registry::default();
    reg.functor(functor)?;
    let (coset, layers) = reg.run("tower", &ga, &ga, &config(g, functor))?;
    Ok(json!({
        "strategy": "tower",
        "functor": functor,
        "aut": { "order": coset.aut_order().to_string(), "generators": coset.aut_images() },
        "layers": layers,
    }))
}

fn recognize(a: &Path) -> Out {
    let ga = read_group(a)?;
    let (kind, reason) = recognize_tame_2group(&ga);
    Ok(json!({ "order": ga.order(), "recognized": kind, "reason": reason }))
}

fn sylow(a: &Path, p: usize) -> Out {
    let ga = read_group(a)?;
    Ok(json!({ "p": p, "sylow": subgroup_json(&sylow_subgroup(&ga, p)?) }))
}

fn radical(a: &Path) -> Out {
    let ga = read_group(a)?;
    Ok(json!({ "radical": subgroup_json(&solvable_radical(&ga)) }))
}

fn decompose(rep: &Path, group: &Path, g: &Global) -> Out {
    let q = read_group(group)?;
    let theta = read_rep(rep, &q)?;
    let dec = decompose_representation(&theta, g.seed)?;
    let summands: Vec<Value> = dec
        .summands
        .iter()
        .map(|(m, mult)| json!({ "dim": m.dim, "multiplicity": mult, "generators": m.gens.iter().map(rows).collect::<Vec<_>>() }))
        .collect();
    Ok(json!({
        "dim": theta.d,
        "block_dims": dec.blocks.iter().map(|b| b.dim).collect::<Vec<_>>(),
        "types": dec.types,
        "summands": summands,
        "change_of_basis": rows(&dec.change_of_basis),
    }))
}

fn compat_json(c: &CompatCoset) -> Value {
    json!({
        "nonempty": !c.is_empty(),
        "size": c.size().to_string(),
        "representative": c.representative.as_ref().map(pair_json),
        "stabilizer_generators": c.generators.iter().map(pair_json).collect::<Vec<_>>(),
    })
}

fn aut_generators(q: &FiniteGroup) -> Result<Vec<Vec<usize>>, Failure> {
    Ok(brute_aut(q)?.generators().iter().map(|p| p.images()).collect())
}

fn actcomp(rep1: &Path, rep2: &Path, group: &Path, g: &Global) -> Out {
    let q = read_group(group)?;
    let (theta, eta) = (read_rep(rep1, &q)?, read_rep(rep2, &q)?);
    let c = action_compatibility(&q, &theta, &eta, &aut_generators(&q)?, budgets(g), g.seed)?;
    Ok(compat_json(&c))
}

fn h2(group: &Path, rep: &Path, j: u32) -> Out {
    let q = read_group(group)?;
    let theta = read_rep(rep, &q)?;
    if j > 2 {
        return Err(usage(format!("-j must be 0, 1 or 2, got {j}")));
    }
    Ok(json!({ "j": j, "dim": cohomology_dim(&q, &theta, j)?, "module_dim": theta.d }))
}

fn cciso_cmd(group: &Path, rep: &Path, f: &Path, gpath: &Path, g: &Global) -> Out {
    let q = read_group(group)?;
    let theta = read_rep(rep, &q)?;
    let (cf, cg) = (read_cocycle(f, &q, &theta)?, read_cocycle(gpath, &q, &theta)?);
    let stab = action_compatibility(&q, &theta, &theta, &aut_generators(&q)?, budgets(g), g.seed)?;
    let space = CohomologySpace::new(&q, &theta)?;
    let res = cciso(&q, &theta, &space, &cf, &cg, &stab, config(g, "o-p-radical").h2_budget)?;
    Ok(json!({
        "nonempty": res.representative.is_some(),
        "representative": res.representative.as_ref().map(|(p, u)| json!({ "pair": pair_json(p), "u": u })),
        "class_stabilizer_order": res.class_stabilizer.order().to_string(),
        "orbit_size": res.orbit_size,
        "dim_h2": space.dim_h2(),
    }))
}

fn extdata(a: &Path, elements: &[usize]) -> Out {
    let ga = read_group(a)?;
    let mut els = elements.to_vec();
    els.sort_unstable();
    els.dedup();
    if els.iter().any(|&x| x >= ga.order()) {
        return Err(usage("subgroup element out of range"));
    }
    let data = extension_data(&ga, &Subgroup::from_sorted(els))?;
    Ok(json!({
        "quotient": data.quotient.to_json(),
        "projection": data.projection,
        "section": data.section,
        "theta": data.theta.to_json(),
        "f": data.f.to_json(),
    }))
}

fn census_json(c: &DimensionCensus) -> Value {
    json!({
        "d": c.d,
        "classes": c.classes,
        "total": c.total,
        "total_bound": c.total_bound.to_string(),
        "materialized": c.materialized,
        "collisions": c.collisions.len(),
        "certified_indecomposable": c.certified_indecomposable,
        "not_indecomposable": c.not_indecomposable,
        "pass": c.passes(),
    })
}

fn enum_sd(ell: usize, max_dim: usize, g: &Global) -> Out {
    if ell == 0 || max_dim == 0 {
        return Err(usage("--ell and --max-dim must be positive"));
    }
    let dims: Vec<usize> = (1..=max_dim).collect();
    let threads = g.threads.max(1);
    // dimensions are independent; the report is assembled in dimension order
    let results: Vec<Result<DimensionCensus, GpiError>> = std::thread::scope(|s| {
        let chunks: Vec<_> = (0..threads)
            .map(|t| {
                let mine: Vec<usize> = dims.iter().copied().skip(t).step_by(threads).collect();
                s.spawn(move || mine.into_iter().map(|d| (d, count_indecomposables(ell, d, g.seed))).collect::<Vec<_>>())
            })
            .collect();
        let mut all: Vec<(usize, Result<DimensionCensus, GpiError>)> =
            chunks.into_iter().flat_map(|h| h.join().expect("census worker")).collect();
        all.sort_by_key(|(d, _)| *d);
        all.into_iter().map(|(_, r)| r).collect()
    });
    let mut per_dim = Vec::new();
    for r in results {
        per_dim.push(census_json(&r?));
    }
    let pass = per_dim.iter().all(|c| c["pass"] == json!(true));
    Ok(json!({ "ell": ell, "max_dim": max_dim, "dimensions": per_dim, "pass": pass }))
}

fn wild(p: u8, d: usize, g: &Global) -> Out {
    if d == 0 {
        return Err(usage("--d must be positive"));
    }
    let w = wild_family(p, d, g.seed)?;
    Ok(json!({
        "p": w.p,
        "d": w.d,
        "pairs": w.pairs,
        "classes": w.classes,
        "lower_bound": w.lower_bound,
        "pass": w.classes as u64 >= w.lower_bound,
    }))
}

fn oracle(o: &OracleCommand) -> Out {
    match o {
        OracleCommand::Iso { g, h } => {
            let (ga, gb) = (read_group(g)?, read_group(h)?);
            let phi = brute_iso(&ga, &gb)?;
            Ok(json!({ "check": "iso", "isomorphic": phi.is_some(), "witness": phi }))
        }
        OracleCommand::Aut { g } => {
            let ga = read_group(g)?;
            Ok(json!({ "check": "aut", "aut": perm_group_json(&brute_aut(&ga)?) }))
        }
        OracleCommand::Indecomposable { rep, group } => {
            let q = read_group(group)?;
            let theta = read_rep(rep, &q)?;
            Ok(json!({ "check": "indecomposable", "indecomposable": brute_indecomposable(&theta.module())? }))
        }
        OracleCommand::Cohomologous { group, rep, f, g } => {
            let q = read_group(group)?;
            let theta = read_rep(rep, &q)?;
            let (cf, cg) = (read_cocycle(f, &q, &theta)?, read_cocycle(g, &q, &theta)?);
            let u = brute_cohomologous(&q, &theta, &cf, &cg)?;
            Ok(json!({ "check": "cohomologous", "cohomologous": u.is_some(), "witness": u }))
        }
    }
}
