//! Session configuration files.
//!
//! Indices of generators `x_i` (in `d`, `sub.w` and term labels) are 1-based;
//! group elements are 0-based positions in the group's element list.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Character, FiniteGroup, GroupSpec, Subgroup};
use crate::hopf::DEFAULT_MAX_DIM;
use crate::nichols::NicholsAlgebra;
use crate::qls::{QlsDatum, ScalarFamily, SubDatum};
use crate::scalar::Cyclotomic;
use crate::tensor::{Algebra, Key, Tensor};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub datum: DatumConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sub: Option<SubConfig>,
    /// Twist for `verify-twist`; `J_D` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<TermSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gauge: Option<GaugeConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub question: Option<QuestionConfig>,
    /// Stages run by `report`; all of them when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_dim: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumConfig {
    pub group: GroupSpec,
    pub g: Vec<usize>,
    /// One value vector per generator, indexed by group element.
    pub chi: Vec<Vec<Cyclotomic>>,
    #[serde(default)]
    pub d: FamilyConfig,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyConfig {
    #[serde(default)]
    pub a: Vec<(usize, usize, Cyclotomic)>,
    #[serde(default)]
    pub xi: Vec<(usize, Cyclotomic)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubConfig {
    pub w: Vec<usize>,
    /// Generators of `F`; `Γ` is added automatically.
    #[serde(default)]
    pub f: Vec<usize>,
    /// `J_F` as an `|F| × |F|` matrix over member positions of `F`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jf: Option<Vec<Vec<Cyclotomic>>>,
}

/// Sparse term list `[[leg labels...], literal]`.
pub type Terms = Vec<(Vec<String>, Cyclotomic)>;

/// An element of `𝔅(V)^{⊗k}` described in a config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum TermSpec {
    Unit,
    /// `J_D` for the given family.
    Family(FamilyConfig),
    /// The ordinary exponential of a nilpotent element.
    Exp(Terms),
    Terms(Terms),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaugeConfig {
    #[serde(default = "unit_spec")]
    pub j: TermSpec,
    pub j2: TermSpec,
    pub c: TermSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuestionConfig {
    /// Candidate gauge elements `c ∈ 𝔅(V)`.
    pub candidates: Vec<TermSpec>,
}

fn unit_spec() -> TermSpec {
    TermSpec::Unit
}

fn config_err(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Config { location: location.into(), message: message.into() }
}

impl SessionConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            config_err(format!("line {}, column {}, field {path}", inner.line(), inner.column()), inner.to_string())
        })
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| config_err(path.display().to_string(), e.to_string()))?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim.unwrap_or(DEFAULT_MAX_DIM)
    }
}

impl FamilyConfig {
    pub fn resolve(&self, theta: usize, at: &str) -> Result<ScalarFamily> {
        let mut fam = ScalarFamily::zero(theta);
        let idx = |i: usize, loc: String| {
            if i == 0 || i > theta {
                Err(config_err(loc, format!("generator index {i} outside 1..={theta}")))
            } else {
                Ok(i - 1)
            }
        };
        for (k, (i, j, v)) in self.a.iter().enumerate() {
            let (i, j) = (idx(*i, format!("{at}.a[{k}]"))?, idx(*j, format!("{at}.a[{k}]"))?);
            if i == j {
                return Err(config_err(format!("{at}.a[{k}]"), "a_ij needs i ≠ j"));
            }
            fam = fam.with_a(i, j, v.clone());
        }
        for (k, (i, v)) in self.xi.iter().enumerate() {
            fam = fam.with_xi(idx(*i, format!("{at}.xi[{k}]"))?, v.clone());
        }
        Ok(fam)
    }
}

/// A validated configuration with its datum, family and Nichols algebra built.
#[derive(Debug, Clone)]
pub struct Session {
    pub config: SessionConfig,
    pub datum: Arc<QlsDatum>,
    pub family: ScalarFamily,
    pub sub: Option<SubDatum>,
    pub nichols: Arc<NicholsAlgebra>,
}

impl Session {
    pub fn new(config: SessionConfig) -> Result<Self> {
        let dc = &config.datum;
        let group = Arc::new(FiniteGroup::from_spec(&dc.group).map_err(|e| config_err("datum.group", e.to_string()))?);
        if dc.g.is_empty() {
            return Err(config_err("datum.g", "at least one generator is required"));
        }
        for (k, &x) in dc.g.iter().enumerate() {
            if x >= group.order() {
                return Err(config_err(format!("datum.g[{k}]"), format!("element {x} outside 0..{}", group.order())));
            }
        }
        if dc.chi.len() != dc.g.len() {
            return Err(config_err(
                "datum.chi",
                format!("expected {} character vectors (one per g_i), found {}", dc.g.len(), dc.chi.len()),
            ));
        }
        let mut chi = Vec::with_capacity(dc.chi.len());
        for (k, values) in dc.chi.iter().enumerate() {
            if values.len() != group.order() {
                return Err(config_err(
                    format!("datum.chi[{k}]"),
                    format!("expected {} values (one per group element), found {}", group.order(), values.len()),
                ));
            }
            let c = Character::from_values(&group, values).map_err(|e| config_err(format!("datum.chi[{k}]"), e.to_string()))?;
            chi.push(c);
        }
        let datum = QlsDatum::new(group.clone(), dc.g.clone(), chi).map_err(|e| config_err("datum", e.to_string()))?;
        let theta = datum.theta();
        let family = dc.d.resolve(theta, "datum.d")?;
        let sub = match &config.sub {
            None => None,
            Some(sc) => {
                let mut w = Vec::new();
                for (k, &i) in sc.w.iter().enumerate() {
                    if i == 0 || i > theta {
                        return Err(config_err(format!("sub.w[{k}]"), format!("generator index {i} outside 1..={theta}")));
                    }
                    w.push(i - 1);
                }
                let mut gens = datum.gs().to_vec();
                for (k, &x) in sc.f.iter().enumerate() {
                    if x >= group.order() {
                        return Err(config_err(format!("sub.f[{k}]"), format!("element {x} outside 0..{}", group.order())));
                    }
                    gens.push(x);
                }
                let f = Subgroup::generated(&group, &gens).map_err(|e| config_err("sub.f", e.to_string()))?;
                let sd = SubDatum::new(&datum, w, f, sc.jf.clone()).map_err(|e| config_err("sub", e.to_string()))?;
                if !sd.supports(&family) {
                    return Err(config_err("datum.d", "family has entries outside W"));
                }
                Some(sd)
            }
        };
        let datum = Arc::new(datum);
        let rep = datum.validate();
        if let Some(c) = rep.failures().next() {
            return Err(config_err("datum", format!("{}: {}", c.name, c.detail.clone().unwrap_or_default())));
        }
        let nichols = Arc::new(NicholsAlgebra::new(datum.clone()).map_err(|e| config_err("datum", e.to_string()))?);
        Ok(Session { config, datum, family, sub, nichols })
    }

    pub fn from_str(text: &str) -> Result<Self> {
        Self::new(SessionConfig::parse(text)?)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::new(SessionConfig::load(path)?)
    }

    pub fn name(&self) -> &str {
        self.config.name.as_deref().unwrap_or("unnamed")
    }
}

/// Maps basis labels back to indices.
pub fn label_index<A: Algebra + ?Sized>(alg: &A) -> HashMap<String, u32> {
    (0..alg.dim() as u32).map(|b| (normalize(&alg.label(b)), b)).collect()
}

fn normalize(label: &str) -> String {
    label.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Parses a sparse term list against the labels of `alg`.
pub fn parse_terms<A: Algebra + ?Sized>(alg: &A, terms: &Terms, at: &str) -> Result<Tensor> {
    let labels = label_index(alg);
    let arity = terms.first().map_or(1, |(legs, _)| legs.len());
    let mut out = Tensor::zero(arity);
    for (k, (legs, c)) in terms.iter().enumerate() {
        if legs.len() != arity {
            return Err(config_err(format!("{at}[{k}]"), format!("expected {arity} legs, found {}", legs.len())));
        }
        let mut key = Key::new();
        for leg in legs {
            match labels.get(&normalize(leg)) {
                Some(&b) => key.push(b),
                None => return Err(config_err(format!("{at}[{k}]"), format!("unknown basis label {leg:?}"))),
            }
        }
        out.add_term(key, c.clone());
    }
    Ok(out)
}

/// The exponential `Σ x^n / n!` of a nilpotent element.
pub fn nilpotent_exp<A: Algebra + ?Sized>(alg: &A, x: &Tensor) -> Result<Tensor> {
    let one = Cyclotomic::one();
    let mut p = x.clone();
    for n in 1..=alg.dim() + 1 {
        if p.is_zero() {
            return crate::twist::exp_q(alg, x, &one, n);
        }
        p = p.mul(x, alg);
    }
    Err(Error::NotNilpotent { order: alg.dim() + 1 })
}

impl TermSpec {
    /// Resolves to an element of `𝔅(V)^{⊗arity}`.
    pub fn resolve(&self, s: &Session, arity: usize, at: &str) -> Result<Tensor> {
        let b = s.nichols.as_ref();
        let t = match self {
            TermSpec::Unit => Tensor::unit(b, arity),
            TermSpec::Family(fc) => {
                if arity != 2 {
                    return Err(config_err(at, "a family describes a twist, not an element"));
                }
                let fam = fc.resolve(s.datum.theta(), &format!("{at}.family"))?;
                crate::twist::make_j_d(b, &fam).map_err(|e| config_err(at, e.to_string()))?.twist.value
            }
            TermSpec::Exp(terms) => {
                let x = parse_terms(b, terms, &format!("{at}.exp"))?;
                nilpotent_exp(b, &x).map_err(|e| config_err(at, e.to_string()))?
            }
            TermSpec::Terms(terms) => parse_terms(b, terms, &format!("{at}.terms"))?,
        };
        if t.arity() != arity && !t.is_zero() {
            return Err(config_err(at, format!("expected {arity} legs, found {}", t.arity())));
        }
        Ok(t)
    }
}
