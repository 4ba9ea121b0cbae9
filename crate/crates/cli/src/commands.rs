use serde::Serialize;
use serde_json::{json, Value};
use wonderfan::fans::{
    alcove_ray_map, birkhoff_strata_index, c_delta, orbit_poset, orbit_stabilizer_descriptor,
    picard_presentation, weyl_chamber_stacky_fan, z_beta, Datum, EmbeddingFlavor,
};
use wonderfan::lattice::rational::Rat;
use wonderfan::lattice::{cokernel, serde_rat, Fan};
use wonderfan::voronoi::{
    delaunay_cell, lt_fan, lt_fan_vs_minimizers_check, minimizer_set, relevant_vectors,
    voronoi_cell, z_q,
};

use crate::config::JobConfig;
use crate::envelope::Provenance;
use crate::error::CliError;
use crate::svg;

pub const DEFAULT_WINDOW: i64 = 3;
pub const DEFAULT_BOUND: usize = 2;

const COORDS: &str =
    "weights in fundamental-weight coordinates of X; coweights in the dual basis of V_T";
const CARTAN: &str = "a_ij = <alpha_j, alpha_i^vee>, Bourbaki node order";
const AFFINE: &str = "affine node 0 carries alpha_0 = delta - theta";
const ACTION: &str =
    "translation action (n, lambda, h) -> (n - lambda(eta) + (h/2)Q(eta,eta), lambda - h Q(eta), h)";
const PLANE: &str = "alcove lines in simple-coroot coordinates (x, y)";
const FORM: &str = "default form: the basic form, coroots of long roots have square length 2";
const HEIGHT: &str = "loop-torus fan in V_T + Z with the height coordinate last";
const EXPONENT: &str =
    "f(eta) = t Q(eta,eta)/2 + Q(beta,eta); minimizers are the lattice points nearest to -beta/t";
const ORBITS: &str =
    "J lists the degenerate coordinates; L_J is the sub-diagram on the nodes outside J";

pub struct Outcome {
    pub result: Value,
    pub provenance: Provenance,
}

fn outcome(result: Value, conventions: &[&str], notes: Vec<String>) -> Outcome {
    Outcome {
        result,
        provenance: Provenance {
            conventions: conventions.iter().map(|s| s.to_string()).collect(),
            notes,
        },
    }
}

fn to_value<T: Serialize>(v: &T) -> Result<Value, CliError> {
    Ok(serde_json::to_value(v)?)
}

fn rats(v: &[Rat]) -> Result<Value, CliError> {
    Ok(serde_rat::vec::serialize(v, serde_json::value::Serializer)?)
}

pub fn run(command: &str, cfg: &JobConfig) -> Result<Outcome, CliError> {
    match command {
        "rootdata" => rootdata(cfg),
        "alcove" => alcove(cfg),
        "parahoric" => parahoric(cfg),
        "stackyfan" => stackyfan(cfg),
        "cdelta" => cdelta(cfg),
        "orbits" => orbits(cfg),
        "voronoi" => voronoi(cfg),
        "ltfan" => ltfan(cfg),
        "limit" => limit(cfg),
        "freudenthal" => freudenthal(cfg),
        "plot" => plot(cfg),
        other => Err(CliError::Config(format!("unknown command {other:?}"))),
    }
}

fn rootdata(cfg: &JobConfig) -> Result<Outcome, CliError> {
    let rd = cfg.root_datum()?;
    let coweights: Vec<Value> = rd
        .fundamental_coweights()
        .iter()
        .map(|w| rats(w))
        .collect::<Result<_, _>>()?;
    let basic = if rd.is_irreducible() {
        Some(rd.basic_form()?)
    } else {
        None
    };
    let result = json!({
        "datum": to_value(&rd)?,
        "dynkin_type": rd.dynkin_type().to_string(),
        "positive_roots": rd.positive_roots(),
        "highest_root": rd.highest_root().ok(),
        "fundamental_coweights": coweights,
        "chamber_rays": rd.chamber_rays(),
        "weyl_order": rd.weyl_order(),
        "center_order": rd.center_order(),
        "basic_form": to_value(&basic)?,
    });
    Ok(outcome(result, &[COORDS, CARTAN, FORM], Vec::new()))
}

fn alcove(cfg: &JobConfig) -> Result<Outcome, CliError> {
    let ard = cfg.affine_datum()?;
    let al = ard.alcove();
    let result = json!({
        "alcove": to_value(&al)?,
        "lines": to_value(&al.lines_in_coroot_basis())?,
        "affine_simple_roots": to_value(&ard.affine_simple_roots())?,
        "affine_cartan": to_value(ard.affine_cartan())?,
    });
    Ok(outcome(
        result,
        &[COORDS, AFFINE, ACTION, PLANE],
        Vec::new(),
    ))
}

fn parahoric_entry(ard: &wonderfan::affine::AffineRootDatum, j: usize) -> Result<Value, CliError> {
    Ok(json!({
        "j": j,
        "levi": ard.parahoric_levi_type(j)?.to_string(),
        "z_j": to_value(&ard.levi_center_quotient(j)?)?,
    }))
}

fn parahoric(cfg: &JobConfig) -> Result<Outcome, CliError> {
    let ard = cfg.affine_datum()?;
    let result = match cfg.j.as_deref() {
        Some([j]) => parahoric_entry(&ard, *j)?,
        Some(_) => return Err(CliError::Config("parahoric takes a single node j".into())),
        None => {
            let nodes: Vec<Value> = (0..=ard.rank())
                .map(|j| parahoric_entry(&ard, j))
                .collect::<Result<_, _>>()?;
            json!({
                "diagram": to_value(&ard.affine_dynkin())?,
                "center": to_value(&ard.center())?,
                "nodes": nodes,
            })
        }
    };
    Ok(outcome(result, &[AFFINE, ORBITS], Vec::new()))
}

fn embedding(cfg: &JobConfig) -> EmbeddingFlavor {
    cfg.embedding.unwrap_or(EmbeddingFlavor::Stacky)
}

fn stackyfan(cfg: &JobConfig) -> Result<Outcome, CliError> {
    let rd = cfg.root_datum()?;
    let result = if cfg.affine == Some(true) {
        let ard = wonderfan::affine::AffineRootDatum::new(rd)?;
        let beta = alcove_ray_map(&ard);
        let coker = cokernel(&beta);
        if coker.free_rank > 0 {
            return Err(CliError::Internal("alcove rays do not span".into()));
        }
        json!({
            "beta": to_value(&beta)?,
            "z_beta": to_value(&coker.torsion)?,
            "picard": to_value(&picard_presentation(Datum::Affine(&ard), embedding(cfg))?)?,
        })
    } else {
        let sf = weyl_chamber_stacky_fan(&rd);
        json!({
            "stacky_fan": to_value(&sf)?,
            "z_beta": to_value(&z_beta(&sf)?)?,
            "picard": to_value(&picard_presentation(Datum::Finite(&rd), embedding(cfg))?)?,
        })
    };
    Ok(outcome(result, &[COORDS, HEIGHT], Vec::new()))
}

fn cdelta(cfg: &JobConfig) -> Result<Outcome, CliError> {
    let rd = cfg.root_datum()?;
    let cert = c_delta(&rd);
    let result = json!({
        "certificate": to_value(&cert)?,
        "holds": cert.holds(),
    });
    Ok(outcome(
        result,
        &[COORDS],
        vec!["ambient V_T + Z^r; C_Delta is pointed and its dual has lineality r".into()],
    ))
}

fn orbits(cfg: &JobConfig) -> Result<Outcome, CliError> {
    let rd = cfg.root_datum()?;
    let affine = cfg.affine == Some(true);
    let ard = if affine {
        Some(wonderfan::affine::AffineRootDatum::new(rd.clone())?)
    } else {
        None
    };
    let datum = match &ard {
        Some(a) => Datum::Affine(a),
        None => Datum::Finite(&rd),
    };
    let mut result = json!({ "poset": to_value(&orbit_poset(datum)?)? });
    let mut notes = Vec::new();
    if let Some(j) = &cfg.j {
        result["stabilizer"] = to_value(&orbit_stabilizer_descriptor(datum, j)?)?;
        if let Some(a) = &ard {
            let bound = cfg.bound.unwrap_or(DEFAULT_BOUND);
            result["birkhoff"] = to_value(&birkhoff_strata_index(a, j, bound)?)?;
            notes.push(format!("Birkhoff index words of length at most {bound}"));
        }
    }
    Ok(outcome(result, &[ORBITS], notes))
}

fn voronoi(cfg: &JobConfig) -> Result<Outcome, CliError> {
    let q = cfg.quadratic_form()?;
    let center = cfg.center.clone().unwrap_or_else(|| vec![0; q.rank()]);
    let mut result = json!({
        "form": to_value(&q)?,
        "z_q": to_value(&z_q(&q).ok())?,
        "relevant_vectors": relevant_vectors(&q),
        "cell": to_value(&voronoi_cell(&q, &center)?)?,
    });
    if let Some(p) = cfg.point_value()? {
        result["delaunay"] = to_value(&delaunay_cell(&q, &p)?)?;
    }
    Ok(outcome(result, &[FORM], Vec::new()))
}

fn ltfan(cfg: &JobConfig) -> Result<Outcome, CliError> {
    let q = cfg.quadratic_form()?;
    let window = cfg.window.unwrap_or(DEFAULT_WINDOW);
    let mut result = json!({ "fan": to_value(&lt_fan(&q, window)?)? });
    let mut notes = vec![format!("cones over the cells with centers |n| <= {window}")];
    if let Some(t) = cfg.t {
        let check = lt_fan_vs_minimizers_check(&q, t, window)?;
        notes.push(check.disclaimer.to_string());
        result["check"] = to_value(&check)?;
    }
    Ok(outcome(result, &[FORM, HEIGHT, EXPONENT], notes))
}

fn limit(cfg: &JobConfig) -> Result<Outcome, CliError> {
    let mut result = json!({});
    let mut conventions = vec![COORDS];
    if let Some(eta) = &cfg.eta {
        let rd = cfg.root_datum()?;
        let j: Vec<usize> = rd.one_param_limit_j(eta)?.into_iter().collect();
        result["eta"] = json!(eta);
        result["j"] = json!(j);
    }
    if let Some(beta) = &cfg.beta {
        let q = cfg.quadratic_form()?;
        let t = cfg.t.unwrap_or(1);
        result["beta"] = json!(beta);
        result["t"] = json!(t);
        result["minimizers"] = json!(minimizer_set(&q, t, beta)?);
        conventions.push(EXPONENT);
    }
    if cfg.eta.is_none() && cfg.beta.is_none() {
        return Err(CliError::Config("limit needs eta or beta".into()));
    }
    Ok(outcome(result, &conventions, Vec::new()))
}

fn freudenthal(cfg: &JobConfig) -> Result<Outcome, CliError> {
    let rd = cfg.root_datum()?;
    let lambda = JobConfig::require(&cfg.lambda, "lambda")?;
    let table = rd.freudenthal_multiplicities(lambda)?;
    let result = json!({
        "table": to_value(&table)?,
        "dimension": table.dimension(),
    });
    Ok(outcome(result, &[COORDS], Vec::new()))
}

fn plot(cfg: &JobConfig) -> Result<Outcome, CliError> {
    let target = JobConfig::require(&cfg.target, "target")?.as_str();
    let canvas = match target {
        "fan" => {
            let q = cfg.quadratic_form()?;
            if q.rank() != 1 {
                return Err(CliError::Unsupported(format!(
                    "fan plots need a rank-1 form (ambient dimension 2), got rank {}",
                    q.rank()
                )));
            }
            match cfg.window.unwrap_or(DEFAULT_WINDOW) {
                w if w < 0 => svg::fan(&Fan::empty(2), &[]),
                w => {
                    let lt = lt_fan(&q, w)?;
                    svg::fan(&lt.fan, &lt.centers)
                }
            }
        }
        "alcove" => {
            let ard = cfg.affine_datum()?;
            if ard.rank() > 2 {
                return Err(CliError::Unsupported(format!(
                    "alcove plots need rank at most 2, got {}",
                    ard.rank()
                )));
            }
            svg::alcove(&ard.alcove())
        }
        "voronoi" => {
            let q = cfg.quadratic_form()?;
            if q.rank() > 2 {
                return Err(CliError::Unsupported(format!(
                    "Voronoi plots need rank at most 2, got {}",
                    q.rank()
                )));
            }
            svg::voronoi(&q, cfg.window.unwrap_or(1).clamp(0, DEFAULT_WINDOW))?
        }
        other => return Err(CliError::Config(format!("unknown plot target {other:?}"))),
    };
    let result = json!({
        "target": target,
        "elements": canvas.element_names(),
        "svg": canvas.render(),
    });
    Ok(outcome(result, &[PLANE, HEIGHT], Vec::new()))
}
