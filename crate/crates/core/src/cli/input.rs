//! JSON input documents for adelic forms and adelic points.

use serde::Deserialize;

use super::eval::{eval_absolute, eval_global_form, eval_kpoly, eval_local_form, eval_rational,
    eval_series, mentions_t};
use super::expr::parse;
use super::CliError;
use crate::bm::{AbsoluteForm, AdelicPoint, AffinePatch, LocalPoint};
use crate::ff::Fq;
use crate::global::{local_expand, local_form, AdelicForm, DefaultForm, Place};
use crate::series::{LaurentSeries, LocalForm};

/// `"inf"` or a monic irreducible polynomial in t.
pub fn parse_place(field: Fq, text: &str) -> Result<Place, CliError> {
    if text.trim() == "inf" {
        return Ok(Place::infinity(field));
    }
    let r = eval_rational(&parse_expr(text)?, field)?;
    if !r.is_polynomial() {
        return Err(CliError::Usage(format!("place {text} is not a polynomial in t")));
    }
    Ok(Place::finite(r.num().clone())?)
}

pub fn parse_expr(text: &str) -> Result<crate::cli::expr::Expr, CliError> {
    parse(text).map_err(|e| CliError::Parse {
        input: text.to_string(),
        error: e,
    })
}

/// A local form at `v`: written in the local variable (`s` at finite
/// places, `u` at infinity) or as a global form in `t` to be expanded.
pub fn local_form_at(v: &Place, text: &str, prec: i64) -> Result<LocalForm, CliError> {
    let e = parse_expr(text)?;
    if mentions_t(&e) {
        let w = eval_global_form(&e, v.base_field())?;
        return Ok(local_form(&w, v, prec)?);
    }
    Ok(eval_local_form(&e, v.residue_field(), v.local_var(), prec)?)
}

/// A coordinate of a local point, in the local variable or in t.
pub fn local_series_at(v: &Place, text: &str, prec: i64) -> Result<LaurentSeries, CliError> {
    let e = parse_expr(text)?;
    if mentions_t(&e) {
        let r = eval_rational(&e, v.base_field())?;
        return Ok(local_expand(&r, v, prec)?);
    }
    Ok(eval_series(&e, v.residue_field(), v.local_var(), prec)?)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum DefaultSpec {
    Int(i64),
    Expr(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AdelicPlace {
    pi: String,
    form: String,
    prec: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AdelicDoc {
    places: Vec<AdelicPlace>,
    default: DefaultSpec,
}

pub fn read_adelic(field: Fq, json: &str) -> Result<AdelicForm, CliError> {
    let doc: AdelicDoc =
        serde_json::from_str(json).map_err(|e| CliError::Usage(format!("adelic file: {e}")))?;
    let default = match doc.default {
        DefaultSpec::Int(0) => DefaultForm::Zero,
        DefaultSpec::Int(n) => {
            return Err(CliError::Usage(format!("default must be 0 or a form, got {n}")))
        }
        DefaultSpec::Expr(s) if s.trim() == "0" => DefaultForm::Zero,
        DefaultSpec::Expr(s) => DefaultForm::Global(eval_global_form(&parse_expr(&s)?, field)?),
    };
    let mut a = AdelicForm::new(field, default)?;
    for p in doc.places {
        let v = parse_place(field, &p.pi)?;
        let w = local_form_at(&v, &p.form, p.prec)?;
        a.set(v, w)?;
    }
    Ok(a)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PatchSpec {
    Named(String),
    Explicit {
        coords: Vec<String>,
        #[serde(default)]
        relations: Vec<String>,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PointDoc {
    place: String,
    coords: Vec<String>,
    prec: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BmDoc {
    patch: PatchSpec,
    form: String,
    #[serde(default)]
    level: Option<usize>,
    points: Vec<PointDoc>,
    default_point: Vec<String>,
}

pub struct BmInput {
    pub patch: AffinePatch,
    pub form: AbsoluteForm,
    pub level: Option<usize>,
    pub point: AdelicPoint,
}

pub fn read_bm(field: Fq, json: &str) -> Result<BmInput, CliError> {
    let doc: BmDoc =
        serde_json::from_str(json).map_err(|e| CliError::Usage(format!("point file: {e}")))?;
    let patch = match doc.patch {
        PatchSpec::Named(n) => match n.to_ascii_lowercase().as_str() {
            "a1" | "affine_line" => AffinePatch::affine_line(field),
            "legendre" => AffinePatch::legendre(field),
            other => return Err(CliError::Usage(format!("unknown patch {other}"))),
        },
        PatchSpec::Explicit { coords, relations } => {
            let rels = relations
                .iter()
                .map(|r| Ok(eval_kpoly(&parse_expr(r)?, field, &coords)?))
                .collect::<Result<Vec<_>, CliError>>()?;
            AffinePatch::new(field, coords, rels)?
        }
    };
    let form = eval_absolute(&parse_expr(&doc.form)?, &patch)?;
    let default = doc
        .default_point
        .iter()
        .map(|s| Ok(eval_rational(&parse_expr(s)?, field)?))
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut point = AdelicPoint::new(default);
    for p in doc.points {
        let v = parse_place(field, &p.place)?;
        let coords = p
            .coords
            .iter()
            .map(|c| local_series_at(&v, c, p.prec))
            .collect::<Result<Vec<_>, CliError>>()?;
        point.set(LocalPoint::new(v, coords)?);
    }
    Ok(BmInput {
        patch,
        form,
        level: doc.level,
        point,
    })
}
