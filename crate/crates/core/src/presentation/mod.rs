//! Presentations by generators and relations, and the catalogue of
//! built-in categories.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::diagram::dsl::{parse_diagram, parse_lc, render_diagram, render_lc, ParseError, Signature};
use crate::diagram::{Diagram, Generator, LinearCombination, Obj, Payload, Word};
use crate::scalar::{format_rational, ParamSet, Rational, Scalar};

pub mod frobenius;

pub use frobenius::{Frobenius, FrobeniusData, FrobeniusError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("unknown preset `{0}` (expected one of s, ahdeg, braid, hecke, tl, wreath, awreath, ob)")]
    UnknownPreset(String),
    #[error("preset {0} needs a positive cyclic order r")]
    MissingOrder(PresetId),
    #[error("preset {0} carries no token algebra")]
    NoAlgebra(PresetId),
    #[error("token label `{0}` cannot be written as tok[label]")]
    BadLabel(String),
    #[error("relation `{name}` does not type-check: {msg}")]
    BadRelation { name: String, msg: String },
    #[error(transparent)]
    Frobenius(#[from] FrobeniusError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PresetId {
    S,
    Ahdeg,
    Braid,
    Hecke,
    Tl,
    Wreath,
    AWreath,
    Ob,
}

impl PresetId {
    pub const ALL: [PresetId; 8] = [
        PresetId::S,
        PresetId::Ahdeg,
        PresetId::Braid,
        PresetId::Hecke,
        PresetId::Tl,
        PresetId::Wreath,
        PresetId::AWreath,
        PresetId::Ob,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PresetId::S => "s",
            PresetId::Ahdeg => "ahdeg",
            PresetId::Braid => "braid",
            PresetId::Hecke => "hecke",
            PresetId::Tl => "tl",
            PresetId::Wreath => "wreath",
            PresetId::AWreath => "awreath",
            PresetId::Ob => "ob",
        }
    }

    pub fn needs_order(self) -> bool {
        matches!(self, PresetId::Wreath | PresetId::AWreath)
    }
}

impl fmt::Display for PresetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PresetId {
    type Err = PresentationError;
    fn from_str(s: &str) -> Result<PresetId, PresentationError> {
        match s.to_ascii_lowercase().as_str() {
            "s" | "sym" => Ok(PresetId::S),
            "ahdeg" | "daha" => Ok(PresetId::Ahdeg),
            "braid" | "b" => Ok(PresetId::Braid),
            "hecke" | "h" => Ok(PresetId::Hecke),
            "tl" => Ok(PresetId::Tl),
            "wreath" | "w" => Ok(PresetId::Wreath),
            "awreath" | "aw" => Ok(PresetId::AWreath),
            "ob" => Ok(PresetId::Ob),
            _ => Err(PresentationError::UnknownPreset(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    Sym,
    Daha,
    BraidFree,
    Hecke,
    Wreath,
    AWreath,
    Tl,
    Ob,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Sym => "SYM",
            Strategy::Daha => "DAHA",
            Strategy::BraidFree => "BRAID_FREE",
            Strategy::Hecke => "HECKE",
            Strategy::Wreath => "WREATH",
            Strategy::AWreath => "AWREATH",
            Strategy::Tl => "TL",
            Strategy::Ob => "OB",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectSymbol {
    pub name: String,
    pub obj: Obj,
    pub dual: Option<Obj>,
}

/// `lhs = rhs`, read left to right when used as a rewrite rule.
/// Non-operational rules are recorded but never applied by rewriting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationRule {
    pub name: String,
    pub lhs: Diagram,
    pub rhs: LinearCombination,
    pub operational: bool,
}

#[derive(Debug, Clone)]
pub struct Presentation {
    id: PresetId,
    order: Option<usize>,
    params: Arc<ParamSet>,
    objects: Vec<ObjectSymbol>,
    generators: Vec<Arc<Generator>>,
    relations: Vec<RelationRule>,
    strategy: Strategy,
    frobenius: Option<Frobenius>,
}

impl Signature for Presentation {
    fn lookup(&self, name: &str, label: Option<&str>) -> Option<Arc<Generator>> {
        let name = match name {
            "rcup" if self.id == PresetId::Ob || self.id == PresetId::Tl => "cup",
            "rcap" if self.id == PresetId::Ob || self.id == PresetId::Tl => "cap",
            n => n,
        };
        self.generators
            .iter()
            .find(|g| {
                g.name == name
                    && match (&g.payload, label) {
                        (Payload::Token(l), Some(want)) => l == want,
                        (Payload::Token(_), None) => false,
                        (_, None) => true,
                        (_, Some(_)) => false,
                    }
            })
            .cloned()
    }

    fn params(&self) -> &Arc<ParamSet> {
        &self.params
    }
}

fn up() -> Word {
    Word::up(1)
}

fn word(text: &str) -> Word {
    Word::parse(text).expect("literal word")
}

pub fn preset(id: PresetId, order: Option<usize>) -> Result<Presentation, PresentationError> {
    let r = if id.needs_order() {
        match order {
            Some(r) if r >= 1 => Some(r),
            _ => return Err(PresentationError::MissingOrder(id)),
        }
    } else {
        None
    };
    let frobenius = match r {
        Some(r) => Some(FrobeniusData::cyclic_group(r).validate()?),
        None => None,
    };
    build(id, r, frobenius)
}

/// A wreath preset whose tokens are labelled by the basis of a user-supplied
/// Frobenius algebra instead of `Z/r`.
pub fn preset_with_algebra(id: PresetId, data: &FrobeniusData) -> Result<Presentation, PresentationError> {
    if !id.needs_order() {
        return Err(PresentationError::NoAlgebra(id));
    }
    if let Some(l) = data
        .labels
        .iter()
        .find(|l| l.is_empty() || l.chars().any(|c| c == ']' || c == '[' || c.is_whitespace()))
    {
        return Err(PresentationError::BadLabel(l.clone()));
    }
    let f = data.validate()?;
    build(id, Some(f.dim()), Some(f))
}

fn build(id: PresetId, r: Option<usize>, frobenius: Option<Frobenius>) -> Result<Presentation, PresentationError> {
    let params = match id {
        PresetId::Hecke => ParamSet::new(["z"]).unwrap(),
        PresetId::Tl => ParamSet::new(["delta"]).unwrap(),
        _ => ParamSet::empty(),
    };
    let crossing = Generator::new("s", Payload::Crossing, Word::up(2), Word::up(2));
    let dot = Generator::new("x", Payload::Dot, up(), up());
    let tokens: Vec<Arc<Generator>> = frobenius
        .iter()
        .flat_map(|f| f.data().labels.clone())
        .map(|l| Generator::new("tok", Payload::Token(l), up(), up()))
        .collect();
    let up_obj = ObjectSymbol {
        name: "up".into(),
        obj: Obj::Up,
        dual: None,
    };
    let (objects, generators, strategy) = match id {
        PresetId::S => (vec![up_obj], vec![crossing], Strategy::Sym),
        PresetId::Ahdeg => (vec![up_obj], vec![crossing, dot], Strategy::Daha),
        PresetId::Braid | PresetId::Hecke => (
            vec![up_obj],
            vec![
                crossing,
                Generator::new("si", Payload::InverseCrossing, Word::up(2), Word::up(2)),
            ],
            if id == PresetId::Braid {
                Strategy::BraidFree
            } else {
                Strategy::Hecke
            },
        ),
        PresetId::Tl => (
            vec![ObjectSymbol {
                name: "X".into(),
                obj: Obj::Up,
                dual: Some(Obj::Up),
            }],
            vec![
                Generator::new("cup", Payload::Cup, Word::empty(), Word::up(2)),
                Generator::new("cap", Payload::Cap, Word::up(2), Word::empty()),
            ],
            Strategy::Tl,
        ),
        PresetId::Wreath => {
            let mut g = vec![crossing];
            g.extend(tokens);
            (vec![up_obj], g, Strategy::Wreath)
        }
        PresetId::AWreath => {
            let mut g = vec![crossing, dot];
            g.extend(tokens);
            (vec![up_obj], g, Strategy::AWreath)
        }
        PresetId::Ob => (
            vec![
                ObjectSymbol {
                    name: "up".into(),
                    obj: Obj::Up,
                    dual: Some(Obj::Down),
                },
                ObjectSymbol {
                    name: "down".into(),
                    obj: Obj::Down,
                    dual: Some(Obj::Up),
                },
            ],
            vec![
                crossing,
                Generator::new("cup", Payload::Cup, Word::empty(), word("v^")),
                Generator::new("cap", Payload::Cap, word("^v"), Word::empty()),
                Generator::new("lcup", Payload::Cup, Word::empty(), word("^v")),
                Generator::new("lcap", Payload::Cap, word("v^"), Word::empty()),
            ],
            Strategy::Ob,
        ),
    };
    let mut p = Presentation {
        id,
        order: r,
        params,
        objects,
        generators,
        relations: Vec::new(),
        strategy,
        frobenius,
    };
    let rules = p.rule_texts();
    for (name, lhs, rhs, operational) in rules {
        p.add_relation(&name, &lhs, &rhs, operational)?;
    }
    Ok(p)
}

/// Right crossing `^v -> v^` of the oriented Brauer category, built from a
/// right cup, the upward crossing and a right cap.
pub const OB_RIGHT_CROSSING: &str = "cup * id(^v) ; id(v) * s * id(v) ; id(v^) * cap";
/// Left crossing `v^ -> ^v`, the analogous composite with left cups and caps.
pub const OB_LEFT_CROSSING: &str = "id(v^) * lcup ; id(v) * s * id(v) ; lcap * id(^v)";

impl Presentation {
    fn rule_texts(&self) -> Vec<(String, String, String, bool)> {
        let mut out = Vec::new();
        let mut add = |name: &str, lhs: &str, rhs: &str, op: bool| {
            out.push((name.to_string(), lhs.to_string(), rhs.to_string(), op))
        };
        let braid_l = "s * id(^) ; id(^) * s ; s * id(^)";
        let braid_r = "id(^) * s ; s * id(^) ; id(^) * s";
        match self.id {
            PresetId::S | PresetId::Ahdeg | PresetId::Wreath | PresetId::AWreath | PresetId::Ob => {
                add("involution", "s ; s", "id(^^)", true);
                add("braid", braid_l, braid_r, true);
            }
            PresetId::Braid => {
                add("inverse-right", "s ; si", "id(^^)", true);
                add("inverse-left", "si ; s", "id(^^)", true);
                add("braid", braid_l, braid_r, false);
            }
            PresetId::Hecke => {
                add("skein", "si", "s - {z} id(^^)", true);
                add("quadratic", "s ; s", "{z} s + id(^^)", true);
                add("inverse-right", "s ; si", "id(^^)", true);
                add("inverse-left", "si ; s", "id(^^)", true);
                add("braid", braid_l, braid_r, true);
            }
            PresetId::Tl => {
                add("zigzag-left", "id(^) * cup ; cap * id(^)", "id(^)", true);
                add("zigzag-right", "cup * id(^) ; id(^) * cap", "id(^)", true);
                add("circle", "cup ; cap", "{delta} id(1)", true);
            }
        }
        if self.id == PresetId::Ahdeg {
            add("dot-crossing", "s ; x * id(^)", "id(^) * x ; s + id(^^)", true);
            add("dot-crossing-right", "s ; id(^) * x", "x * id(^) ; s - id(^^)", true);
        }
        if self.id == PresetId::Ob {
            add("rzigzag-up", "id(^) * cup ; cap * id(^)", "id(^)", true);
            add("rzigzag-down", "cup * id(v) ; id(v) * cap", "id(v)", true);
            add("lzigzag-up", "lcup * id(^) ; id(^) * lcap", "id(^)", true);
            add("lzigzag-down", "id(v) * lcup ; lcap * id(v)", "id(v)", true);
            add("lcup", &format!("lcup ; {}", OB_RIGHT_CROSSING), "cup", true);
            add("lcap", &format!("{} ; lcap", OB_RIGHT_CROSSING), "cap", true);
        }
        if let Some(f) = &self.frobenius {
            let d = f.data();
            let n = d.dim();
            let tok = |i: usize| format!("tok[{}]", d.labels[i]);
            let expand = |v: &[Rational], render: &dyn Fn(usize) -> String| -> String {
                let terms: Vec<String> = (0..n)
                    .filter(|&k| !v[k].is_zero())
                    .map(|k| {
                        if v[k].is_one() {
                            render(k)
                        } else {
                            format!("{{{}}} {}", format_rational(&v[k]), render(k))
                        }
                    })
                    .collect();
                if terms.is_empty() {
                    String::new()
                } else {
                    terms.join(" + ")
                }
            };
            for a in 0..n {
                for b in 0..n {
                    let ab = &d.mult[a][b];
                    let rhs = expand(ab, &|k| tok(k));
                    if !rhs.is_empty() {
                        add(
                            &format!("merge-{}-{}", d.labels[a], d.labels[b]),
                            &format!("{} ; {}", tok(b), tok(a)),
                            &rhs,
                            true,
                        );
                    }
                }
            }
            if let Some(u) = d.unit_index() {
                add("unit", &tok(u), "id(^)", true);
            }
            for a in 0..n {
                add(
                    &format!("slide-{}", d.labels[a]),
                    &format!("s ; id(^) * {}", tok(a)),
                    &format!("{} * id(^) ; s", tok(a)),
                    true,
                );
                add(
                    &format!("slide-left-{}", d.labels[a]),
                    &format!("s ; {} * id(^)", tok(a)),
                    &format!("id(^) * {} ; s", tok(a)),
                    true,
                );
            }
            if self.id == PresetId::AWreath {
                // Σ_b b ⊗ b̌ and its mirror image Σ_b b̌ ⊗ b
                let mut casimir = Vec::new();
                let mut mirror = Vec::new();
                for b in 0..n {
                    for k in 0..n {
                        let c = &f.dual(b)[k];
                        if c.is_zero() {
                            continue;
                        }
                        let coeff = if c.is_one() {
                            String::new()
                        } else {
                            format!("{{{}}} ", format_rational(c))
                        };
                        casimir.push(format!("{}{} * {}", coeff, tok(b), tok(k)));
                        mirror.push(format!("{}{} * {}", coeff, tok(k), tok(b)));
                    }
                }
                add(
                    "dot-crossing",
                    "s ; x * id(^)",
                    &format!("id(^) * x ; s + {}", casimir.join(" + ")),
                    true,
                );
                add(
                    "dot-crossing-right",
                    "s ; id(^) * x",
                    &format!("x * id(^) ; s - ({})", mirror.join(" + ")),
                    true,
                );
                for a in 0..n {
                    add(
                        &format!("dot-token-{}", d.labels[a]),
                        &format!("x ; {}", tok(a)),
                        &format!("{} ; x", tok(a)),
                        true,
                    );
                }
            }
        }
        out
    }

    fn add_relation(&mut self, name: &str, lhs: &str, rhs: &str, operational: bool) -> Result<(), PresentationError> {
        let bad = |e: ParseError| PresentationError::BadRelation {
            name: name.to_string(),
            msg: e.to_string(),
        };
        let l = parse_diagram(self, lhs).map_err(bad)?;
        let r = parse_lc(self, rhs).map_err(bad)?;
        if r.dom() != l.dom() || r.cod() != l.cod() {
            return Err(PresentationError::BadRelation {
                name: name.to_string(),
                msg: format!(
                    "{} -> {} versus {} -> {}",
                    l.dom(),
                    l.cod(),
                    r.dom(),
                    r.cod()
                ),
            });
        }
        self.relations.push(RelationRule {
            name: name.to_string(),
            lhs: l,
            rhs: r,
            operational,
        });
        Ok(())
    }

    pub fn id(&self) -> PresetId {
        self.id
    }

    pub fn order(&self) -> Option<usize> {
        self.order
    }

    pub fn params(&self) -> &Arc<ParamSet> {
        &self.params
    }

    pub fn objects(&self) -> &[ObjectSymbol] {
        &self.objects
    }

    pub fn generators(&self) -> &[Arc<Generator>] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<Arc<Generator>> {
        self.lookup(name, None)
    }

    pub fn token(&self, label: &str) -> Option<Arc<Generator>> {
        self.lookup("tok", Some(label))
    }

    pub fn relations(&self) -> &[RelationRule] {
        &self.relations
    }

    pub fn relation(&self, name: &str) -> Option<&RelationRule> {
        self.relations.iter().find(|r| r.name == name)
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn frobenius(&self) -> Option<&Frobenius> {
        self.frobenius.as_ref()
    }

    pub fn parse(&self, text: &str) -> Result<LinearCombination, ParseError> {
        parse_lc(self, text)
    }

    pub fn parse_diagram(&self, text: &str) -> Result<Diagram, ParseError> {
        parse_diagram(self, text)
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(&self.params)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "preset": self.id.as_str(),
            "r": self.order,
            "strategy": self.strategy.as_str(),
            "params": self.params.names(),
            "objects": self.objects.iter().map(|o| serde_json::json!({
                "name": o.name,
                "glyph": o.obj.glyph().to_string(),
                "dual": o.dual.map(|d| d.glyph().to_string()),
            })).collect::<Vec<_>>(),
            "generators": self.generators.iter().map(|g| serde_json::json!({
                "name": g.display_name(),
                "dom": g.dom.to_string(),
                "cod": g.cod.to_string(),
                "payload": payload_name(&g.payload),
            })).collect::<Vec<_>>(),
            "relations": self.relations.iter().map(|r| serde_json::json!({
                "name": r.name,
                "lhs": render_diagram(&r.lhs),
                "rhs": render_lc(&r.rhs),
                "operational": r.operational,
            })).collect::<Vec<_>>(),
            "frobenius": self.frobenius.as_ref().map(|f| f.data().to_json()),
        })
    }
}

fn payload_name(p: &Payload) -> &'static str {
    match p {
        Payload::None => "none",
        Payload::Dot => "dot",
        Payload::Token(_) => "token",
        Payload::Cup => "cup",
        Payload::Cap => "cap",
        Payload::Crossing => "crossing",
        Payload::InverseCrossing => "inverse-crossing",
    }
}
