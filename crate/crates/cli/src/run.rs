use std::collections::BTreeMap;
use std::path::Path;

use diagcat::decat::{
    group_element_lc, row_reading_tableau, young_idempotent, Karoubi, Partition, Tableau, YoungReport,
};
use diagcat::diagram::dsl::{render_diagram, render_lc};
use diagcat::diagram::{LinearCombination, Word};
use diagcat::evalmodel::{
    bubble_diagram, eval, left_mate_diagram, model_daha, model_ob, model_sym, right_mate_diagram, ModelAssignment,
};
use diagcat::matrix::Matrix;
use diagcat::normalform::{basis, embed, hom_dim, normalize};
use diagcat::presentation::{preset, preset_with_algebra, FrobeniusData, PresetId, Presentation};
use diagcat::scalar::{format_rational, parse_rational, rat, Rational};
use serde_json::{json, Value};

use crate::error::CliError;

/// Everything a subcommand may need besides its positional arguments.
pub struct Params {
    pub preset: Option<String>,
    pub r: Option<usize>,
    pub algebra: Option<std::path::PathBuf>,
    pub assign: BTreeMap<String, Rational>,
    pub m: Option<usize>,
    pub p: Option<usize>,
    pub degree: Option<u32>,
    pub n: Option<usize>,
    pub shifted: bool,
}

/// Rendered result: plain text and the `result` member of the JSON document.
pub struct Output {
    pub text: String,
    pub json: Value,
}

pub fn parse_assignment(items: &[String]) -> Result<BTreeMap<String, Rational>, CliError> {
    let mut out = BTreeMap::new();
    for item in items {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("--assign expects NAME=VALUE, got `{item}`")))?;
        let v = parse_rational(v).ok_or_else(|| CliError::usage(format!("`{v}` is not a rational number")))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

impl Params {
    pub fn presentation(&self) -> Result<Presentation, CliError> {
        let name = self
            .preset
            .as_deref()
            .ok_or_else(|| CliError::usage("this subcommand needs --preset"))?;
        let id: PresetId = name.parse()?;
        if let Some(path) = &self.algebra {
            return Ok(preset_with_algebra(id, &read_algebra(path)?)?);
        }
        Ok(preset(id, self.r)?)
    }

    fn need_n(&self) -> Result<usize, CliError> {
        self.n.ok_or_else(|| CliError::usage("this subcommand needs -n"))
    }

    fn need_m(&self) -> Result<usize, CliError> {
        match self.m {
            Some(m) if m >= 1 => Ok(m),
            Some(_) => Err(CliError::usage("-m must be positive")),
            None => Err(CliError::usage("this subcommand needs -m")),
        }
    }

    fn model(&self, p: &Presentation) -> Result<ModelAssignment, CliError> {
        let m = self.need_m()?;
        let model = match p.id() {
            PresetId::S => model_sym(m),
            PresetId::Braid => {
                let flip = eval(&model_sym(m), &p.parse("s")?)?;
                model_sym(m).with_generator("si", flip)
            }
            PresetId::Ahdeg => model_daha(m, self.p.unwrap_or(0), self.shifted),
            PresetId::Ob => model_ob(m),
            // the circle evaluates to m, so δ defaults to m
            PresetId::Tl => model_ob(m).with_param("delta", rat(m as i64)),
            other => {
                return Err(CliError::domain(
                    "no-model",
                    format!("preset {other} has no built-in evaluation model"),
                ))
            }
        };
        Ok(model.with_params(&self.assign))
    }
}

fn read_algebra(path: &Path) -> Result<FrobeniusData, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::domain("io", format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| CliError::domain("algebra-format", e))?;
    algebra_from_json(&v).ok_or_else(|| {
        CliError::domain(
            "algebra-format",
            "expected {\"basis\": [labels], \"unit\": [q], \"trace\": [q], \"mult\": [[[q]]]}",
        )
    })
}

fn rational_from_json(v: &Value) -> Option<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => n.as_i64().map(rat),
        _ => None,
    }
}

fn vector_from_json(v: &Value) -> Option<Vec<Rational>> {
    v.as_array()?.iter().map(rational_from_json).collect()
}

pub fn algebra_from_json(v: &Value) -> Option<FrobeniusData> {
    let labels = v["basis"]
        .as_array()?
        .iter()
        .map(|l| l.as_str().map(str::to_string))
        .collect::<Option<Vec<_>>>()?;
    let mult = v["mult"]
        .as_array()?
        .iter()
        .map(|row| row.as_array()?.iter().map(vector_from_json).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()?;
    Some(FrobeniusData {
        labels,
        mult,
        unit: vector_from_json(&v["unit"])?,
        trace: vector_from_json(&v["trace"])?,
    })
}

fn lc_output(lc: &LinearCombination) -> Output {
    let terms: Vec<Value> = lc
        .terms()
        .map(|(d, c)| json!({"coefficient": c.to_string(), "diagram": render_diagram(d)}))
        .collect();
    let text = render_lc(lc);
    Output {
        json: json!({"expression": text, "terms": terms}),
        text,
    }
}

fn matrix_json(m: &Matrix) -> Value {
    let entries: Vec<Vec<String>> = (0..m.rows()).map(|i| m.row(i).iter().map(format_rational).collect()).collect();
    json!({"rows": m.rows(), "cols": m.cols(), "entries": entries})
}

fn normalized(p: &Presentation, params: &Params, f: &LinearCombination) -> Result<LinearCombination, CliError> {
    let nf = normalize(p, f)?;
    if params.assign.is_empty() {
        return Ok(nf);
    }
    // substitution happens after the symbolic normal form is known
    let sub = nf.substitute(&params.assign)?;
    Ok(normalize(p, &sub)?)
}

pub fn normalize_cmd(params: &Params, expr: &str) -> Result<Output, CliError> {
    let p = params.presentation()?;
    let f = p.parse(expr)?;
    Ok(lc_output(&normalized(&p, params, &f)?))
}

pub fn multiply_cmd(params: &Params, upper: &str, lower: &str) -> Result<Output, CliError> {
    let p = params.presentation()?;
    let f = p.parse(upper)?.compose(&p.parse(lower)?)?;
    Ok(lc_output(&normalized(&p, params, &f)?))
}

pub fn basis_cmd(params: &Params) -> Result<Output, CliError> {
    let p = params.presentation()?;
    let n = params.need_n()?;
    let elems = basis(&p, n, params.degree)?;
    let mut lines = Vec::new();
    let mut items = Vec::new();
    for e in &elems {
        let d = render_diagram(&embed(&p, e)?);
        items.push(json!({"key": e.to_string(), "diagram": d}));
        lines.push(d);
    }
    Ok(Output {
        text: lines.join("\n"),
        json: json!({"n": n, "degree": params.degree, "elements": items}),
    })
}

pub fn dim_cmd(params: &Params) -> Result<Output, CliError> {
    let p = params.presentation()?;
    let n = params.need_n()?;
    let d = hom_dim(&p, n, params.degree)?;
    Ok(Output {
        text: d.to_string(),
        json: json!({"n": n, "degree": params.degree, "dim": d}),
    })
}

pub fn eval_cmd(params: &Params, expr: &str) -> Result<Output, CliError> {
    let p = params.presentation()?;
    let model = params.model(&p)?;
    let m = eval(&model, &p.parse(expr)?)?;
    let text = if m.rows() == 1 && m.cols() == 1 {
        format_rational(m.get(0, 0))
    } else {
        m.to_string()
    };
    Ok(Output {
        text,
        json: matrix_json(&m),
    })
}

pub fn mate_cmd(params: &Params, expr: &str, left: bool) -> Result<Output, CliError> {
    let p = params.presentation()?;
    let f = p.parse(expr)?;
    let mut out = LinearCombination::zero(f.cod().dual(), f.dom().dual(), p.params());
    for (d, c) in f.terms() {
        let mate = if left {
            left_mate_diagram(&p, d)?
        } else {
            right_mate_diagram(&p, d)?
        };
        out.add_term(mate, c.clone())?;
    }
    let mut o = lc_output(&out);
    o.json["side"] = json!(if left { "left" } else { "right" });
    if params.m.is_some() {
        let model = params.model(&p)?;
        let m = eval(&model, &out)?;
        o.json["matrix"] = matrix_json(&m);
        o.text = format!("{}\n{}", o.text, m);
    }
    Ok(o)
}

pub fn trace_cmd(params: &Params, expr: &str) -> Result<Output, CliError> {
    let p = params.presentation()?;
    let model = params.model(&p)?;
    let f = p.parse(expr)?;
    if f.dom() != f.cod() {
        return Err(CliError::domain("type", "trace needs an endomorphism"));
    }
    let value = if p.id() == PresetId::Ob {
        // close the diagram with a cup and a cap and evaluate
        let mut closed = LinearCombination::zero(Word::empty(), Word::empty(), p.params());
        for (d, c) in f.terms() {
            closed.add_term(bubble_diagram(&p, d)?, c.clone())?;
        }
        eval(&model, &closed)?.get(0, 0).clone()
    } else {
        eval(&model, &f)?.trace().map_err(|e| CliError::domain("eval", e))?
    };
    Ok(Output {
        text: format_rational(&value),
        json: json!({"value": format_rational(&value)}),
    })
}

fn tableau_for(lambda: &Partition, text: Option<&str>) -> Result<Tableau, CliError> {
    let Some(text) = text else {
        return Ok(row_reading_tableau(lambda));
    };
    let bad = || CliError::usage(format!("cannot read tableau `{text}`; write rows like 1,2/3"));
    let rows = text
        .split('/')
        .map(|row| row.split(',').map(|x| x.trim().parse::<usize>().map_err(|_| bad())).collect())
        .collect::<Result<Vec<Vec<usize>>, _>>()?;
    let t = Tableau::new(rows);
    t.check_standard(lambda)?;
    Ok(t)
}

pub fn young_cmd(partition: &str, tableau: Option<&str>) -> Result<Output, CliError> {
    let lambda = Partition::parse(partition)?;
    let t = tableau_for(&lambda, tableau)?;
    let report = YoungReport::compute(&lambda, &t)?;
    let e = young_idempotent(&lambda, &t)?;
    let s = preset(PresetId::S, None)?;
    let element = render_lc(&group_element_lc(&s, &e)?);
    let rows: Vec<String> = t
        .rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        .collect();
    let mut json = report.to_json();
    json["tableau"] = json!(t.rows());
    json["element"] = json!(element);
    Ok(Output {
        text: format!(
            "lambda {}\ntableau {}\nf {}\nrank {}\nidempotent {}\nelement {}",
            lambda,
            rows.join("/"),
            report.f_hook,
            report.rank,
            report.idempotent_ok,
            element
        ),
        json,
    })
}

pub fn rank_cmd(partition: &str, tableau: Option<&str>) -> Result<Output, CliError> {
    let lambda = Partition::parse(partition)?;
    let t = tableau_for(&lambda, tableau)?;
    let rank = young_idempotent(&lambda, &t)?.ideal_rank();
    Ok(Output {
        text: rank.to_string(),
        json: json!({"lambda": lambda.parts(), "rank": rank}),
    })
}

pub fn karoubi_cmd(params: &Params, expr: &str) -> Result<Output, CliError> {
    let p = params.presentation()?;
    let e = p.parse(expr)?;
    let e = if params.assign.is_empty() { e } else { e.substitute(&params.assign)? };
    let k = Karoubi::new(&p);
    let obj = k.object(e.dom().clone(), e)?;
    let dim = k.end_dim(&obj, params.degree)?;
    Ok(Output {
        text: format!("idempotent\nend-dim {dim}"),
        json: json!({"idempotent": true, "strands": obj.base.len(), "end_dim": dim}),
    })
}

pub fn frobenius_cmd(params: &Params) -> Result<Output, CliError> {
    let data = match (&params.algebra, params.r) {
        (Some(path), _) => read_algebra(path)?,
        (None, Some(r)) if r >= 1 => FrobeniusData::cyclic_group(r),
        _ => return Err(CliError::usage("frobenius-check needs --algebra FILE or a positive --r")),
    };
    let f = data.validate()?;
    let n = f.dim();
    let teleport = (0..n).all(|i| f.teleport_check(&data.basis(i)));
    let render = |v: &[Rational]| {
        let terms: Vec<String> = v
            .iter()
            .zip(&data.labels)
            .filter(|(c, _)| **c != rat(0))
            .map(|(c, l)| format!("{} {}", format_rational(c), l))
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    };
    let mut lines = vec![format!("dim {n}")];
    let mut duals = serde_json::Map::new();
    for (i, l) in data.labels.iter().enumerate() {
        lines.push(format!("dual {l} = {}", render(f.dual(i))));
        duals.insert(l.clone(), f.dual(i).iter().map(format_rational).collect::<Vec<_>>().into());
    }
    lines.push(format!("teleport {}", if teleport { "ok" } else { "fails" }));
    Ok(Output {
        text: lines.join("\n"),
        json: json!({"algebra": data.to_json(), "duals": duals, "teleport": teleport}),
    })
}
