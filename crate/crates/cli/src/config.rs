use std::fmt;
use std::path::Path;

use clap::Args;
use serde::{Deserialize, Serialize};
use wonderfan::affine::AffineRootDatum;
use wonderfan::fans::EmbeddingFlavor;
use wonderfan::lattice::rational::{parse_rat, Rat};
use wonderfan::lattice::IntMatrix;
use wonderfan::root::{Flavor, RootDatum};
use wonderfan::voronoi::QuadraticForm;

use crate::error::CliError;

/// A rational entry, written as an integer or as a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatInput {
    Int(i64),
    Str(String),
}

impl RatInput {
    fn value(&self) -> Result<Rat, CliError> {
        match self {
            RatInput::Int(n) => Ok(Rat::from_integer(*n as i128)),
            RatInput::Str(s) => {
                parse_rat(s).ok_or_else(|| CliError::Config(format!("bad rational {s:?}")))
            }
        }
    }
}

impl fmt::Display for RatInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatInput::Int(n) => write!(f, "{n}"),
            RatInput::Str(s) => write!(f, "{s}"),
        }
    }
}

/// Everything a command may read. Unknown keys are rejected.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    #[serde(rename = "type", skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flavor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cartan: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub form: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub affine: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub embedding: Option<EmbeddingFlavor>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<RatInput>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
}

/// Flags shared by every command; each overrides the config file.
#[derive(Args, Clone, Debug, Default)]
pub struct JobArgs {
    /// Config file, JSON or TOML (by extension).
    #[arg(long)]
    pub config: Option<String>,
    /// Cartan type: a family letter with --rank, or a full label such as B2.
    #[arg(long = "type")]
    pub kind: Option<String>,
    #[arg(long)]
    pub rank: Option<usize>,
    /// sc or ad.
    #[arg(long)]
    pub flavor: Option<String>,
    /// Explicit Cartan matrix as JSON, e.g. [[2,-1],[-1,2]].
    #[arg(long)]
    pub cartan: Option<String>,
    /// Integral Gram matrix as JSON; defaults to the basic form of the group.
    #[arg(long)]
    pub form: Option<String>,
    /// Use the affine (loop) version of the datum.
    #[arg(long)]
    pub affine: bool,
    /// adjoint or stacky.
    #[arg(long)]
    pub embedding: Option<String>,
    /// Node subset, comma separated; an empty string is the empty set.
    #[arg(long, allow_hyphen_values = true)]
    pub j: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub eta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub center: Option<String>,
    /// Rational point, e.g. 1/2,-1/3.
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
    /// Length bound for affine Weyl group enumerations.
    #[arg(long)]
    pub bound: Option<usize>,
    /// Bound on lattice centers (or on |beta|) for windowed computations.
    #[arg(long, allow_hyphen_values = true)]
    pub window: Option<i64>,
    /// Plot target: fan, alcove or voronoi.
    #[arg(long)]
    pub target: Option<String>,
}

fn int_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, CliError> {
    let s = s.trim().trim_start_matches('[').trim_end_matches(']');
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| CliError::Config(format!("bad {what} entry {x:?}")))
        })
        .collect()
}

fn json_matrix(s: &str, what: &str) -> Result<Vec<Vec<i64>>, CliError> {
    serde_json::from_str(s).map_err(|e| CliError::Config(format!("bad {what}: {e}")))
}

pub fn load_file(path: &str) -> Result<JobConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {path}: {e}")))?;
    let is_toml = Path::new(path)
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("toml"));
    if is_toml {
        toml::from_str(&text).map_err(|e| CliError::Config(format!("{path}: {e}")))
    } else {
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{path}: {e}")))
    }
}

impl JobArgs {
    /// The config file (if any) overlaid with the flags.
    pub fn resolve(&self) -> Result<JobConfig, CliError> {
        let mut c = match &self.config {
            Some(p) => load_file(p)?,
            None => JobConfig::default(),
        };
        macro_rules! set {
            ($field:ident) => {
                if let Some(v) = &self.$field {
                    c.$field = Some(v.clone());
                }
            };
        }
        set!(kind);
        set!(rank);
        set!(flavor);
        set!(t);
        set!(bound);
        set!(window);
        set!(target);
        if let Some(s) = &self.cartan {
            c.cartan = Some(json_matrix(s, "Cartan matrix")?);
        }
        if let Some(s) = &self.form {
            c.form = Some(json_matrix(s, "form")?);
        }
        if self.affine {
            c.affine = Some(true);
        }
        if let Some(s) = &self.embedding {
            c.embedding = Some(match s.to_ascii_lowercase().as_str() {
                "adjoint" | "ad" => EmbeddingFlavor::Adjoint,
                "stacky" => EmbeddingFlavor::Stacky,
                other => return Err(CliError::Config(format!("unknown embedding {other:?}"))),
            });
        }
        if let Some(s) = &self.j {
            c.j = Some(int_list(s, "j")?);
        }
        if let Some(s) = &self.beta {
            c.beta = Some(int_list(s, "beta")?);
        }
        if let Some(s) = &self.eta {
            c.eta = Some(int_list(s, "eta")?);
        }
        if let Some(s) = &self.lambda {
            c.lambda = Some(int_list(s, "lambda")?);
        }
        if let Some(s) = &self.center {
            c.center = Some(int_list(s, "center")?);
        }
        if let Some(s) = &self.point {
            let s = s.trim().trim_start_matches('[').trim_end_matches(']');
            c.point = Some(
                s.split(',')
                    .map(|x| RatInput::Str(x.trim().to_string()))
                    .collect(),
            );
        }
        Ok(c)
    }
}

impl JobConfig {
    pub fn has_group(&self) -> bool {
        self.kind.is_some() || self.cartan.is_some()
    }

    pub fn root_datum(&self) -> Result<RootDatum, CliError> {
        let flavor = self.flavor.as_deref().unwrap_or("sc");
        if let Some(rows) = &self.cartan {
            if rows.is_empty() || rows.iter().any(|r| r.len() != rows.len()) {
                return Err(CliError::Config("Cartan matrix must be square".into()));
            }
            let f: Flavor = flavor.parse()?;
            return Ok(RootDatum::from_cartan(&IntMatrix::from_rows(rows), f)?);
        }
        let kind = self.kind.as_deref().ok_or_else(|| {
            CliError::Config("a group is required: set type (and rank) or cartan".into())
        })?;
        let has_digits = kind.chars().any(|c| c.is_ascii_digit());
        let label = match (has_digits, self.rank) {
            (true, None) => kind.to_string(),
            (true, Some(r)) => {
                let explicit: String = kind.chars().filter(|c| c.is_ascii_digit()).collect();
                if explicit.parse::<usize>().ok() != Some(r) {
                    return Err(CliError::Config(format!(
                        "type {kind} conflicts with rank {r}"
                    )));
                }
                kind.to_string()
            }
            (false, Some(r)) => format!("{kind}{r}"),
            (false, None) => {
                return Err(CliError::Config(format!("type {kind} needs a rank")));
            }
        };
        Ok(RootDatum::parse(&label, flavor)?)
    }

    pub fn affine_datum(&self) -> Result<AffineRootDatum, CliError> {
        Ok(AffineRootDatum::new(self.root_datum()?)?)
    }

    /// The explicit form, or the basic form of the group.
    pub fn quadratic_form(&self) -> Result<QuadraticForm, CliError> {
        match &self.form {
            Some(rows) => Ok(QuadraticForm::from_rows(rows)?),
            None if self.has_group() => Ok(self.root_datum()?.basic_form()?),
            None => Err(CliError::Config("a form or a group is required".into())),
        }
    }

    pub fn point_value(&self) -> Result<Option<Vec<Rat>>, CliError> {
        self.point
            .as_ref()
            .map(|p| p.iter().map(RatInput::value).collect())
            .transpose()
    }

    pub fn require<'a, T>(v: &'a Option<T>, name: &str) -> Result<&'a T, CliError> {
        v.as_ref()
            .ok_or_else(|| CliError::Config(format!("missing required parameter {name}")))
    }
}
