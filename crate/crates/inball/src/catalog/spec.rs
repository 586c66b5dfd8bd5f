//! Surface specifications: inline strings like `sphere:r=1,cx=0.5` and
//! TOML config files with one section per catalog constructor.

use super::{
    make_perturbed_sphere, make_revolution, make_sphere, make_tube_segment, CatalogError,
    SpherePoly, Surface,
};
use crate::vec3::Vec3;
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// Parse an inline surface expression.
///
/// Supported forms:
/// - `sphere:r=1[,cx=..,cy=..,cz=..]`
/// - `torus:R=2,r=1`
/// - `tube:R=2,r=1,extent=3.14`
/// - `perturbed:amp=0.05[,k=3]` (radial graph `1 + amp*cos(k*theta)`)
/// - `mainbody` (the fishbowl's dominant body of revolution)
pub fn parse_inline(spec: &str) -> Result<Surface, CatalogError> {
    let (kind, rest) = match spec.split_once(':') {
        Some((k, r)) => (k.trim(), r),
        None => (spec.trim(), ""),
    };
    let mut args: BTreeMap<String, f64> = BTreeMap::new();
    for part in rest.split(',').filter(|s| !s.trim().is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| CatalogError::Parse(format!("expected key=value, got `{part}`")))?;
        let value: f64 = v
            .trim()
            .parse()
            .map_err(|_| CatalogError::Parse(format!("bad number `{v}` for key `{k}`")))?;
        args.insert(k.trim().to_string(), value);
    }
    build(kind, &args)
}

fn build(kind: &str, args: &BTreeMap<String, f64>) -> Result<Surface, CatalogError> {
    let get = |key: &str, default: f64| args.get(key).copied().unwrap_or(default);
    match kind {
        "sphere" => {
            let r = get("r", 1.0);
            let center = Vec3::new(get("cx", 0.0), get("cy", 0.0), get("cz", 0.0));
            make_sphere(center, r)
        }
        "torus" => make_tube_segment(get("R", 2.0), get("r", 1.0), 2.0 * PI),
        "tube" => make_tube_segment(get("R", 2.0), get("r", 1.0), get("extent", 2.0 * PI)),
        "perturbed" => {
            let amp = get("amp", 0.05);
            let k = get("k", 3.0).round().max(0.0) as u32;
            make_perturbed_sphere(vec![SpherePoly::cos_polar(k)], vec![1.0], amp)
        }
        "mainbody" => make_revolution(&crate::fishbowl::main_body_profile(), "main-body"),
        other => Err(CatalogError::Parse(format!("unknown surface kind `{other}`"))),
    }
}

/// Load a surface from a TOML config file: a single section names the
/// constructor and its keys mirror the inline arguments, e.g.
///
/// ```toml
/// [sphere]
/// r = 1.5
/// cx = 0.4
/// ```
pub fn parse_config(text: &str) -> Result<Surface, CatalogError> {
    let value: toml::Value =
        toml::from_str(text).map_err(|e| CatalogError::Parse(e.to_string()))?;
    let table = value
        .as_table()
        .ok_or_else(|| CatalogError::Parse("config must contain a section".into()))?;
    let (kind, body) = table
        .iter()
        .next()
        .ok_or_else(|| CatalogError::Parse("empty config".into()))?;
    let mut args = BTreeMap::new();
    if let Some(section) = body.as_table() {
        for (k, v) in section {
            let num = v
                .as_float()
                .or_else(|| v.as_integer().map(|i| i as f64))
                .ok_or_else(|| CatalogError::Parse(format!("non-numeric value for `{k}`")))?;
            args.insert(k.clone(), num);
        }
    }
    build(kind, &args)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_sphere() {
        let s = parse_inline("sphere:r=1.5,cx=0.4").unwrap();
        let (max, _, _) = s.max_abs_normal_curvature(32).unwrap();
        assert!((max - 1.0 / 1.5).abs() < 1e-9);
    }

    #[test]
    fn inline_torus_and_mainbody() {
        parse_inline("torus:R=2,r=1").unwrap();
        parse_inline("mainbody").unwrap();
    }

    #[test]
    fn unknown_kind_is_error() {
        assert!(parse_inline("pretzel:r=1").is_err());
    }

    #[test]
    fn toml_config() {
        let s = parse_config("[sphere]\nr = 1.4\ncx = 0.55\n").unwrap();
        let (max, _, _) = s.max_abs_normal_curvature(32).unwrap();
        assert!((max - 1.0 / 1.4).abs() < 1e-9);
    }
}
