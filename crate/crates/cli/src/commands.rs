//! Implementations of the four subcommands.

use std::path::PathBuf;

use expsplit_core::algebra::{Axis, CoefficientVector};
use expsplit_core::bch::truncation_error_curve;
use expsplit_core::dynamics::{sweep, RabiParams};
use expsplit_core::factor::{residual, split_three, split_two, FactorSequence, VariantId};
use expsplit_core::representations::Representation;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

use crate::report::{fmt_complex_csv, fmt_float, open_sink, write_all, Format};
use crate::{BchArgs, InnerAxis, Outcome, RabiArgs, SplitArgs, VerifyArgs};

/// Residual gate for the split and verify commands.
const RESIDUAL_GATE: f64 = 1e-8;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Parses a complex scalar: "1", "-2.5", "i", "-i", "0.5i", "1+2i", "1-0.5i".
pub fn parse_complex(input: &str) -> Result<Complex64, String> {
    let s: String = input.chars().filter(|ch| !ch.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty complex literal".to_string());
    }
    let bad = |_| format!("cannot parse complex literal '{input}'");
    if let Some(body) = s.strip_suffix(['i', 'I']) {
        // Split an a+bi body at the sign separating real and imaginary
        // parts; signs directly after 'e'/'E' belong to an exponent.
        let chars: Vec<char> = body.chars().collect();
        let mut split_at = None;
        for k in (1..chars.len()).rev() {
            if (chars[k] == '+' || chars[k] == '-') && chars[k - 1] != 'e' && chars[k - 1] != 'E' {
                split_at = Some(k);
                break;
            }
        }
        let (re_part, im_part) = match split_at {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let re = if re_part.is_empty() {
            0.0
        } else {
            re_part.parse::<f64>().map_err(bad)?
        };
        let im = match im_part {
            "" | "+" => 1.0,
            "-" => -1.0,
            other => other.parse::<f64>().map_err(bad)?,
        };
        Ok(c(re, im))
    } else {
        Ok(c(s.parse::<f64>().map_err(bad)?, 0.0))
    }
}

/// Builds the requested representation, applying a kappa override by
/// rescaling the generators.
fn build_representation(
    so3: bool,
    spin: Option<u32>,
    kappa_override: &Option<String>,
) -> Result<(String, Representation), String> {
    let (label, rep) = match (so3, spin) {
        (true, None) => ("so3".to_string(), Representation::so3()),
        (false, Some(two_j)) => (
            format!("spin:{two_j}"),
            Representation::spin(two_j).map_err(|e| e.to_string())?,
        ),
        (false, None) => return Err("choose a representation: --so3 or --spin TWO_J".to_string()),
        (true, Some(_)) => unreachable!("clap conflicts_with"),
    };
    match kappa_override {
        None => Ok((label, rep)),
        Some(text) => {
            let target = parse_complex(text)?;
            if target.norm() == 0.0 {
                return Err("kappa must be nonzero".to_string());
            }
            let scale = target / rep.kappa();
            let rescaled = rep.rescale_basis(scale).map_err(|e| e.to_string())?;
            Ok((format!("{label} (kappa={text})"), rescaled))
        }
    }
}

#[derive(Serialize)]
struct ComplexJson {
    re: f64,
    im: f64,
}

impl From<Complex64> for ComplexJson {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

#[derive(Serialize)]
struct FactorJson {
    axis: String,
    coefficient: ComplexJson,
}

#[derive(Serialize)]
struct SplitJson {
    representation: String,
    variant: Option<String>,
    factors: Vec<FactorJson>,
    p: ComplexJson,
    q: ComplexJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    r: Option<ComplexJson>,
    residual: f64,
    pass: bool,
}

pub fn split(
    args: &SplitArgs,
    format: Format,
    output: &Option<PathBuf>,
) -> Result<Outcome, String> {
    let (label, rep) = build_representation(args.so3, args.spin, &args.kappa)?;
    let spec = rep.algebra();
    let a = c(args.a, 0.0);
    let b = c(args.b, 0.0);

    let (p, q, r, variant_label, sequence): (
        Complex64,
        Complex64,
        Option<Complex64>,
        Option<String>,
        FactorSequence,
    ) = match args.c {
        None => {
            let inner = match args.inner {
                InnerAxis::X => Axis::X,
                InnerAxis::Y => Axis::Y,
            };
            let s = split_two(&spec, a, b, Axis::Z, inner).map_err(|e| e.to_string())?;
            (s.p, s.q, None, None, s.sequence)
        }
        Some(c_val) => {
            let variant = VariantId::parse(&args.variant).map_err(|e| e.to_string())?;
            let v = CoefficientVector::new(a, b, c(c_val, 0.0));
            let s = split_three(&spec, v, variant).map_err(|e| e.to_string())?;
            (
                s.p,
                s.q,
                Some(s.r),
                Some(variant.label().to_string()),
                s.sequence,
            )
        }
    };

    let v = CoefficientVector::new(a, b, c(args.c.unwrap_or(0.0), 0.0));
    let resid = residual(&rep, v, &sequence).map_err(|e| e.to_string())?;
    let pass = resid <= RESIDUAL_GATE;

    let mut sink = open_sink(output)?;
    match format {
        Format::Csv => {
            let mut text = String::from("record,axis,value_re,value_im\n");
            for factor in &sequence {
                text.push_str(&format!(
                    "factor,{},{}\n",
                    factor.axis,
                    fmt_complex_csv(factor.coefficient)
                ));
            }
            text.push_str(&format!("p,,{}\n", fmt_complex_csv(p)));
            text.push_str(&format!("q,,{}\n", fmt_complex_csv(q)));
            if let Some(r) = r {
                text.push_str(&format!("r,,{}\n", fmt_complex_csv(r)));
            }
            text.push_str(&format!(
                "residual,,{},{}\n",
                fmt_float(resid),
                fmt_float(0.0)
            ));
            write_all(sink.as_mut(), &text)?;
        }
        Format::Json => {
            let doc = SplitJson {
                representation: label,
                variant: variant_label,
                factors: sequence
                    .factors()
                    .iter()
                    .map(|f| FactorJson {
                        axis: f.axis.to_string(),
                        coefficient: f.coefficient.into(),
                    })
                    .collect(),
                p: p.into(),
                q: q.into(),
                r: r.map(Into::into),
                residual: resid,
                pass,
            };
            let text = serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?;
            write_all(sink.as_mut(), &format!("{text}\n"))?;
        }
    }
    Ok(if pass {
        Outcome::Pass
    } else {
        Outcome::VerificationFailure
    })
}

#[derive(Serialize)]
struct VerifyRowJson {
    variant: String,
    representation: String,
    draws: u32,
    max_residual: f64,
}

#[derive(Serialize)]
struct VerifyJson {
    seed: u64,
    range: f64,
    rows: Vec<VerifyRowJson>,
    pass: bool,
}

pub fn verify(
    args: &VerifyArgs,
    format: Format,
    output: &Option<PathBuf>,
) -> Result<Outcome, String> {
    if let Some(label) = &args.corrupt {
        VariantId::parse(label).map_err(|_| format!("unknown variant '{label}'"))?;
    }
    if args.draws == 0 {
        eprintln!("warning: --draws 0 makes the verification vacuous");
    }
    if !(args.range.is_finite() && args.range > 0.0) {
        return Err("--range must be a positive finite number".to_string());
    }

    let reps: Vec<(String, Representation)> = vec![
        ("so3".to_string(), Representation::so3()),
        ("spin:1".to_string(), Representation::spin(1).unwrap()),
        ("spin:2".to_string(), Representation::spin(2).unwrap()),
        ("spin:3".to_string(), Representation::spin(3).unwrap()),
    ];

    let mut rows: Vec<VerifyRowJson> = Vec::new();
    let mut failures: Vec<String> = Vec::new();
    let mut rng = ChaCha12Rng::seed_from_u64(args.seed);
    for (rep_label, rep) in &reps {
        let spec = rep.algebra();
        for variant in VariantId::ALL {
            let corrupted = args.corrupt.as_deref() == Some(variant.label());
            let mut max_residual = 0.0f64;
            for _ in 0..args.draws {
                let v = CoefficientVector::real(
                    rng.gen_range(-args.range..=args.range),
                    rng.gen_range(-args.range..=args.range),
                    rng.gen_range(-args.range..=args.range),
                );
                let s = split_three(&spec, v, variant).map_err(|e| e.to_string())?;
                let sequence = if corrupted && !s.sequence.is_empty() {
                    let mut factors = s.sequence.factors().to_vec();
                    factors[2].coefficient = -factors[2].coefficient;
                    FactorSequence::new(s.sequence.kappa(), factors)
                } else {
                    s.sequence
                };
                let r = residual(rep, v, &sequence).map_err(|e| e.to_string())?;
                if r > RESIDUAL_GATE {
                    failures.push(format!(
                        "variant {} on {} at (a={}, b={}, c={}), seed {}: residual {}",
                        variant.label(),
                        rep_label,
                        fmt_float(v.a.re),
                        fmt_float(v.b.re),
                        fmt_float(v.c.re),
                        args.seed,
                        fmt_float(r)
                    ));
                }
                max_residual = max_residual.max(r);
            }
            rows.push(VerifyRowJson {
                variant: variant.label().to_string(),
                representation: rep_label.clone(),
                draws: args.draws,
                max_residual,
            });
        }
    }
    let pass = failures.is_empty();

    let mut sink = open_sink(output)?;
    match format {
        Format::Csv => {
            let mut text = String::from("variant,representation,draws,max_residual\n");
            for row in &rows {
                text.push_str(&format!(
                    "{},{},{},{}\n",
                    row.variant,
                    row.representation,
                    row.draws,
                    fmt_float(row.max_residual)
                ));
            }
            write_all(sink.as_mut(), &text)?;
        }
        Format::Json => {
            let doc = VerifyJson {
                seed: args.seed,
                range: args.range,
                rows,
                pass,
            };
            let text = serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?;
            write_all(sink.as_mut(), &format!("{text}\n"))?;
        }
    }
    if !pass {
        for failure in &failures {
            eprintln!("verification failure: {failure}");
        }
        return Ok(Outcome::VerificationFailure);
    }
    Ok(Outcome::Pass)
}

#[derive(Serialize)]
struct CurveRowJson {
    degree: u32,
    error: f64,
}

#[derive(Serialize)]
struct BchJson {
    two_j: u32,
    scale: f64,
    commuting: bool,
    rows: Vec<CurveRowJson>,
}

pub fn bch(args: &BchArgs, format: Format, output: &Option<PathBuf>) -> Result<Outcome, String> {
    if args.max_degree == 0 {
        return Err("--max-degree must be at least 1".to_string());
    }
    let rep = Representation::spin(args.two_j).map_err(|e| e.to_string())?;
    let (x, y) = if args.commuting {
        (
            rep.generator(Axis::Z).scale(c(0.0, args.scale)),
            rep.generator(Axis::Z).scale(c(0.0, 0.6 * args.scale)),
        )
    } else {
        (
            rep.generator(Axis::X).scale(c(0.0, args.scale)),
            rep.generator(Axis::Y).scale(c(0.0, args.scale)),
        )
    };
    let degrees: Vec<u32> = (1..=args.max_degree).collect();
    let curve = truncation_error_curve(&x, &y, &degrees).map_err(|e| e.to_string())?;

    let mut sink = open_sink(output)?;
    match format {
        Format::Csv => {
            let mut text = String::from("degree,error\n");
            for (degree, error) in &curve {
                text.push_str(&format!("{},{}\n", degree, fmt_float(*error)));
            }
            write_all(sink.as_mut(), &text)?;
        }
        Format::Json => {
            let doc = BchJson {
                two_j: args.two_j,
                scale: args.scale,
                commuting: args.commuting,
                rows: curve
                    .iter()
                    .map(|&(degree, error)| CurveRowJson { degree, error })
                    .collect(),
            };
            let text = serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?;
            write_all(sink.as_mut(), &format!("{text}\n"))?;
        }
    }
    Ok(Outcome::Pass)
}

#[derive(Serialize)]
struct RabiRowJson {
    t: f64,
    probability: f64,
}

#[derive(Serialize)]
struct RabiJson {
    omega: f64,
    big_omega: f64,
    lambda: f64,
    two_j: u32,
    two_m_from: i32,
    two_m_to: i32,
    rows: Vec<RabiRowJson>,
    max_unitarity_error: f64,
}

pub fn rabi(args: &RabiArgs, format: Format, output: &Option<PathBuf>) -> Result<Outcome, String> {
    let params = RabiParams::new(args.omega, args.big_omega, args.lambda, args.two_j)
        .map_err(|e| e.to_string())?;
    let two_m_from = args.from.unwrap_or(-(args.two_j as i32));
    let two_m_to = args.to.unwrap_or(args.two_j as i32);
    let grid: Vec<f64> = match args.t_count {
        0 => Vec::new(),
        1 => vec![args.t_start],
        n => (0..n)
            .map(|k| args.t_start + (args.t_stop - args.t_start) * k as f64 / (n - 1) as f64)
            .collect(),
    };
    let result = sweep(&params, &grid, two_m_from, two_m_to).map_err(|e| e.to_string())?;

    let mut sink = open_sink(output)?;
    match format {
        Format::Csv => {
            let mut text = String::from("t,probability\n");
            for &(t, p) in &result.rows {
                text.push_str(&format!("{},{}\n", fmt_float(t), fmt_float(p)));
            }
            text.push_str(&format!(
                "# max_unitarity_error = {}\n",
                fmt_float(result.max_unitarity_error)
            ));
            write_all(sink.as_mut(), &text)?;
        }
        Format::Json => {
            let doc = RabiJson {
                omega: args.omega,
                big_omega: args.big_omega,
                lambda: args.lambda,
                two_j: args.two_j,
                two_m_from,
                two_m_to,
                rows: result
                    .rows
                    .iter()
                    .map(|&(t, probability)| RabiRowJson { t, probability })
                    .collect(),
                max_unitarity_error: result.max_unitarity_error,
            };
            let text = serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?;
            write_all(sink.as_mut(), &format!("{text}\n"))?;
        }
    }
    Ok(Outcome::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals_parse() {
        assert_eq!(parse_complex("1").unwrap(), c(1.0, 0.0));
        assert_eq!(parse_complex("-2.5").unwrap(), c(-2.5, 0.0));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("0.5i").unwrap(), c(0.0, 0.5));
        assert_eq!(parse_complex("1+2i").unwrap(), c(1.0, 2.0));
        assert_eq!(parse_complex("1-0.5i").unwrap(), c(1.0, -0.5));
        assert_eq!(parse_complex("-1.5e-3+2e2i").unwrap(), c(-1.5e-3, 2e2));
        assert_eq!(parse_complex(" 1 + 2i ").unwrap(), c(1.0, 2.0));
        assert!(parse_complex("").is_err());
        assert!(parse_complex("one").is_err());
        assert!(parse_complex("1+2j+3i").is_err());
    }

    #[test]
    fn representation_kappa_override_rescales() {
        let (_, rep) = build_representation(false, Some(1), &Some("1".to_string())).unwrap();
        assert!((rep.kappa() - c(1.0, 0.0)).norm() < 1e-15);
        assert!(rep.validate_cyclic() < 1e-14);
        let (_, plain) = build_representation(true, None, &None).unwrap();
        assert_eq!(plain.kappa(), c(1.0, 0.0));
        assert!(build_representation(false, None, &None).is_err());
        assert!(build_representation(true, None, &Some("0".to_string())).is_err());
    }
}
