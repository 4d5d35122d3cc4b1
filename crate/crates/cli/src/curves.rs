use std::io::Write;

use anyhow::{anyhow, bail, Result};
use pnkit_core::topology::{delta, probabilistic_radius};

use crate::schema::SpecFile;
use crate::Curve;

/// Nine decimals, with `-0` folded into `0`.
pub fn fmt9(v: f64) -> String {
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{v:.9}");
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}

fn grid(spec: &SpecFile, xs: Option<Vec<f64>>) -> Result<Vec<f64>> {
    match xs {
        Some(xs) => {
            if let Some(x) = xs.iter().find(|x| **x < 0.0) {
                bail!("x = {x} must be >= 0");
            }
            Ok(xs)
        }
        None => spec.grid(),
    }
}

fn point(spec: &SpecFile, point: Option<Vec<f64>>, what: &str) -> Result<Vec<f64>> {
    point.or_else(|| spec.point.clone()).ok_or_else(|| anyhow!("{what} needs --point or `point` in the spec"))
}

fn write_rows<W: Write>(out: W, header: &[String], rows: &[Vec<f64>]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(header)?;
    for r in rows {
        w.write_record(r.iter().map(|v| fmt9(*v)))?;
    }
    w.flush()?;
    Ok(())
}

/// `x, ν_p(x)`.
pub fn eval<W: Write>(spec: &SpecFile, p: Option<Vec<f64>>, xs: Option<Vec<f64>>, out: W) -> Result<()> {
    let s = spec.space.build()?;
    let p = point(spec, p, "eval")?;
    let nu = s.nu(&p)?;
    let rows: Vec<Vec<f64>> = grid(spec, xs)?.into_iter().map(|x| vec![x, nu.eval(x)]).collect();
    write_rows(out, &["x".into(), "value".into()], &rows)
}

pub fn write_curve<W: Write>(spec: &SpecFile, what: Curve, p: Option<Vec<f64>>, xs: Option<Vec<f64>>, out: W) -> Result<()> {
    let s = spec.space.build()?;
    let xs = grid(spec, xs)?;
    match what {
        Curve::Nu => eval(spec, p, Some(xs), out),
        Curve::Tau => {
            let [f, g] = spec.pair.as_ref().ok_or_else(|| anyhow!("tau curves need `pair` in the spec"))?;
            let (f, g) = (f.build()?, g.build()?);
            let (t, ts) = (s.tau.apply(&f, &g), s.tau_star.apply(&f, &g));
            let rows: Vec<Vec<f64>> = xs.into_iter().map(|x| vec![x, t.eval(x), ts.eval(x)]).collect();
            write_rows(out, &["x".into(), "tau".into(), "tau_star".into()], &rows)
        }
        Curve::Radius => {
            if spec.sets.is_empty() {
                bail!("radius curves need at least one entry in `sets`");
            }
            let radii = spec.sets.iter().map(|a| probabilistic_radius(&s, a)).collect::<Result<Vec<_>, _>>()?;
            let mut header = vec!["x".to_string()];
            header.extend((0..radii.len()).map(|i| format!("set_{i}")));
            let rows: Vec<Vec<f64>> = xs
                .into_iter()
                .map(|x| core::iter::once(x).chain(radii.iter().map(|r| r.radius.eval(x))).collect())
                .collect();
            write_rows(out, &header, &rows)
        }
        Curve::Delta => {
            let dir = point(spec, p, "delta curves")?;
            s.space.check(&dir)?;
            let zero = s.space.zero();
            let mut rows = Vec::with_capacity(xs.len());
            for t in xs {
                let q: Vec<f64> = dir.iter().map(|d| d * t).collect();
                rows.push(vec![t, delta(&s, &zero, &q)?]);
            }
            write_rows(out, &["t".into(), "delta".into()], &rows)
        }
    }
}
