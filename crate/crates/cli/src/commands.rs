use serde_json::{json, Value};
use slinv_core::exactlin::{int, parse_scalar};
use slinv_core::linv::{
    compare_to_theorem, family_data, generic_l_invariant, hecke_symbol, place_pairs,
    theorem_evaluator, Direction, Family, LogDerivAssignment, Theorem,
};
use slinv_core::phin::{basis_label, build_case, PhiNCase};
use slinv_core::plethysm::{
    b_coefficient, b_row, cg_coefficient, project_endomorphism, project_endomorphism_diagonal,
    CgTable,
};
use slinv_core::sl2rep::EndoElement;
use slinv_core::weylhecke::{
    enumerate_weyl, gsp_slope_sides, hecke_diagonal, recover_characters,
    refinement_obstruction_orders, slope_check_hilbert, twist_search, CharacterData, GspPlace,
    GspWeight, WeylElement,
};
use slinv_core::Error;

use crate::json::{self as j, get};
use crate::{CliError, Command, Format, LinvFamily, PhinCase, SlopeFamily, TheoremArg};

/// A JSON result, optionally with a tabular rendering for `--format csv`.
struct Output {
    json: Value,
    table: Option<(&'static str, Vec<Vec<String>>)>,
}

impl Output {
    fn json(json: Value) -> Self {
        Output { json, table: None }
    }

    fn render(self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => Ok(self.json.to_string()),
            Format::Pretty => {
                Ok(serde_json::to_string_pretty(&self.json).expect("values serialize"))
            }
            Format::Csv => {
                let (header, rows) = self.table.ok_or_else(|| {
                    CliError::usage("this command has no tabular output; use --format json".into())
                })?;
                let mut out = header.to_string();
                for row in rows {
                    out.push('\n');
                    out.push_str(&row.join(","));
                }
                Ok(out)
            }
        }
    }
}

pub fn run(cmd: &Command, format: Format) -> Result<String, CliError> {
    let out = match cmd {
        Command::Cg {
            m,
            n,
            p,
            table,
            u,
            v,
            w,
        } => cg(*m, *n, *p, *table, (*u, *v, *w))?,
        Command::Bcoeff { n, k, i } => bcoeff(*n, *k, *i)?,
        Command::ProjectEndo { n, k, diag } => project_endo(*n, *k, diag)?,
        Command::Phin {
            case,
            n,
            l,
            k,
            all_submodules,
            benois,
            gr1,
        } => phin(
            *case,
            *n,
            l.as_deref(),
            *k,
            (*all_submodules, *benois, *gr1),
        )?,
        Command::Hecke { g, t, weyl, all } => hecke(*g, t, weyl.as_deref(), *all)?,
        Command::RecoverChi {
            g,
            eigs,
            weights,
            weyl,
        } => recover_chi(*g, eigs, weights, weyl.as_deref())?,
        Command::Slope { family, input } => slope(*family, input)?,
        Command::Obstruction { exponents, check_n } => obstruction(exponents, *check_n),
        Command::Linv {
            family,
            input,
            compare_theorem,
        } => linv(*family, input, *compare_theorem)?,
    };
    out.render(format)
}

fn cg(
    m: usize,
    n: usize,
    p: usize,
    table: bool,
    uvw: (Option<usize>, Option<usize>, Option<usize>),
) -> Result<Output, CliError> {
    if table {
        let t = CgTable::new(m, n, p)?;
        let entries = t.entries();
        let rows = entries
            .iter()
            .map(|(u, v, w, x)| vec![u.to_string(), v.to_string(), w.to_string(), x.to_string()])
            .collect();
        let json = json!({
            "m": m, "n": n, "p": p,
            "entries": entries.iter().map(|(u, v, w, x)| json!({"u": u, "v": v, "w": w, "value": j::scalar(x)})).collect::<Vec<_>>(),
        });
        return Ok(Output {
            json,
            table: Some(("u,v,w,value", rows)),
        });
    }
    let (Some(u), Some(v), Some(w)) = uvw else {
        return Err(CliError::usage("give --table or all of --u --v --w".into()));
    };
    let x = cg_coefficient(m, n, p, u, v, w)?;
    Ok(Output {
        json: json!({ "value": j::scalar(&x) }),
        table: Some((
            "u,v,w,value",
            vec![vec![
                u.to_string(),
                v.to_string(),
                w.to_string(),
                x.to_string(),
            ]],
        )),
    })
}

fn bcoeff(n: usize, k: usize, i: Option<usize>) -> Result<Output, CliError> {
    let row = |i: usize, x: &slinv_core::Scalar| {
        vec![n.to_string(), k.to_string(), i.to_string(), x.to_string()]
    };
    Ok(match i {
        Some(i) => {
            let x = b_coefficient(n, k, i)?;
            Output {
                json: json!({ "value": j::scalar(&x) }),
                table: Some(("n,k,i,value", vec![row(i, &x)])),
            }
        }
        None => {
            let values = b_row(n, k)?;
            Output {
                json: json!({ "values": j::scalars(&values) }),
                table: Some((
                    "n,k,i,value",
                    values.iter().enumerate().map(|(i, x)| row(i, x)).collect(),
                )),
            }
        }
    })
}

fn project_endo(n: usize, k: usize, diag: &str) -> Result<Output, CliError> {
    let diag = j::to_scalars(&j::load(diag)?)?;
    let summary = project_endomorphism_diagonal(n, k, &diag)?;
    let full = project_endomorphism(&EndoElement::diagonal(&diag)?, k)?;
    Ok(Output::json(json!({
        "middle": j::scalar(&summary.middle),
        "tail_zero": summary.tail_zero,
        "projection": j::scalars(&full.coeffs),
    })))
}

fn phin(
    case: PhinCase,
    n: usize,
    l: Option<&str>,
    k: Option<i64>,
    view: (bool, bool, bool),
) -> Result<Output, CliError> {
    let case = match case {
        PhinCase::Steinberg => PhiNCase::Steinberg {
            l_invariant: l.map(parse_scalar).transpose()?.unwrap_or_else(|| int(1)),
        },
        PhinCase::CrystallineSplit => PhiNCase::CrystallineSplit { k: k.unwrap_or(2) },
        PhinCase::CrystallineNonsplit => PhiNCase::CrystallineNonsplit,
    };
    let m = build_case(n, case)?;
    let coordinates: Vec<String> = (0..m.dim()).map(|c| basis_label(n, c)).collect();
    let d = m.chosen_submodule();
    let json = match view {
        (true, _, _) => json!({
            "coordinates": coordinates,
            "stable": m.stable_submodules().iter().map(j::subspace).collect::<Vec<_>>(),
            "regular": m.regular_submodules()?.iter().map(j::subspace).collect::<Vec<_>>(),
        }),
        (_, true, _) => {
            let b = m.benois_filtration(&d)?;
            json!({
                "coordinates": coordinates,
                "D": j::subspace(&d),
                "D_minus1": j::subspace(&b.d_minus1),
                "D0": j::subspace(&b.d0),
                "D1": j::subspace(&b.d1),
            })
        }
        (_, _, true) => {
            let g = m.gr1_data(&d)?;
            json!({ "rank": g.rank, "eigenvalues": g.eigenvalues.iter().map(j::monomial).collect::<Vec<_>>() })
        }
        _ => json!({
            "n": n,
            "coordinates": coordinates,
            "phi": m.phi.iter().map(j::monomial).collect::<Vec<_>>(),
            "fil0": j::subspace(&m.fil0),
            "regular": m.regular_submodules()?.iter().map(j::subspace).collect::<Vec<_>>(),
        }),
    };
    Ok(Output::json(json))
}

fn hecke(g: usize, t: &str, weyl: Option<&str>, all: bool) -> Result<Output, CliError> {
    let t = j::parse_torus(t)?;
    let chi = CharacterData::symbolic(g);
    let elements = if all {
        enumerate_weyl(g)
    } else {
        vec![match weyl {
            Some(w) => j::to_weyl(&j::load(w)?)?,
            None => WeylElement::identity(g),
        }]
    };
    let rows = elements
        .iter()
        .map(|w| {
            Ok(json!({ "weyl": j::weyl(w), "value": j::monomial(&hecke_diagonal(&chi, &t, w)?) }))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(Output::json(
        json!({ "t": t.to_string(), "eigenvalues": rows }),
    ))
}

fn recover_chi(
    g: usize,
    eigs: &str,
    weights: &str,
    weyl: Option<&str>,
) -> Result<Output, CliError> {
    let eigs = j::load(eigs)?;
    let eigs = eigs
        .as_array()
        .ok_or_else(|| CliError::parse("--eigs must be a JSON array of monomials".into()))?
        .iter()
        .map(j::to_monomial)
        .collect::<Result<Vec<_>, _>>()?;
    if eigs.len() != g {
        return Err(
            Error::DimensionMismatch(format!("{} eigenvalues for g = {g}", eigs.len())).into(),
        );
    }
    let weights = j::load(weights)?;
    let weight = GspWeight {
        mu: j::to_scalars(get(&weights, "mu")?)?,
        mu0: j::to_scalar(get(&weights, "mu0")?)?,
    };
    let w = match weyl {
        Some(w) => j::to_weyl(&j::load(w)?)?,
        None => WeylElement::identity(g),
    };
    let chi = recover_characters(&eigs, &weight, &w)?;
    Ok(Output::json(json!({
        "chi": chi.chi.iter().map(j::monomial).collect::<Vec<_>>(),
        "sigma": j::monomial(&chi.sigma),
    })))
}

fn slope(family: SlopeFamily, input: &str) -> Result<Output, CliError> {
    let v = j::load(input)?;
    match family {
        SlopeFamily::Hilbert => {
            let k = get(&v, "k")?
                .as_array()
                .ok_or_else(|| CliError::parse("\"k\" must be an array".into()))?
                .iter()
                .map(j::to_i64)
                .collect::<Result<Vec<_>, _>>()?;
            let w = j::to_i64(get(&v, "w")?)?;
            let slopes = j::to_scalars(get(&v, "slopes")?)?;
            Ok(Output::json(
                json!({ "noncritical": slope_check_hilbert(&k, w, &slopes)? }),
            ))
        }
        SlopeFamily::Gsp => {
            let t = match get(&v, "t")? {
                Value::String(s) => j::parse_torus(s)?,
                other => slinv_core::weylhecke::TorusExponent::new(
                    j::to_scalars(get(other, "a")?)?,
                    j::to_scalar(get(other, "a0")?)?,
                ),
            };
            let places = get(&v, "places")?
                .as_array()
                .ok_or_else(|| CliError::parse("\"places\" must be an array".into()))?
                .iter()
                .map(|p| {
                    Ok(GspPlace {
                        weight: GspWeight {
                            mu: j::to_scalars(get(p, "mu")?)?,
                            mu0: j::to_scalar(get(p, "mu0")?)?,
                        },
                        slope: j::to_scalar(get(p, "slope")?)?,
                    })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let (lhs, rhs) = gsp_slope_sides(&places, &t)?;
            let twist = match twist_search(&places, &t) {
                Ok(m) => json!(m),
                Err(Error::NoTwist(_)) => Value::Null,
                Err(e) => return Err(e.into()),
            };
            Ok(Output::json(json!({
                "lhs": j::scalar(&lhs),
                "rhs": j::scalar(&rhs),
                "noncritical": lhs < rhs,
                "twist": twist,
            })))
        }
    }
}

fn obstruction(exponents: &[i64], check_n: Option<u64>) -> Output {
    let o = refinement_obstruction_orders(exponents);
    let mut json = json!({ "orders": o.orders, "unconditional": o.unconditional });
    if let Some(n) = check_n {
        json["check_N"] = json!(n);
        json["sufficient"] = json!(o.sufficient(n));
    }
    Output::json(json)
}

fn param(params: Option<&Value>, key: &str) -> Result<Option<usize>, CliError> {
    match params.and_then(|p| p.get(key)) {
        None => Ok(None),
        Some(x) => {
            let i = j::to_i64(x)?;
            usize::try_from(i)
                .map(Some)
                .map_err(|_| CliError::parse(format!("params.{key} must be nonnegative")))
        }
    }
}

fn linv(family: LinvFamily, input: &str, compare: Option<TheoremArg>) -> Result<Output, CliError> {
    let v = j::load(input)?;
    let params = v.get("params");
    let need_n =
        || param(params, "n")?.ok_or_else(|| CliError::parse("this family needs params.n".into()));
    let family = match family {
        LinvFamily::Hilbert => Family::Hilbert,
        LinvFamily::Gsp4Spin => Family::Gsp4Spin,
        LinvFamily::GspStd => Family::GspStd { n: need_n()? },
        LinvFamily::Unitary => {
            let n = need_n()?;
            let k = param(params, "k")?.unwrap_or((4 * n).saturating_sub(1));
            Family::Unitary { n, k }
        }
    };
    let data = family_data(family)?;
    let dir = get(&v, "direction")?;
    let dir = Direction::new(
        j::to_scalars(get(dir, "u")?)?,
        j::to_scalar(get(dir, "u0")?)?,
    );
    let places = get(&v, "places")?
        .as_array()
        .ok_or_else(|| CliError::parse("\"places\" must be an array".into()))?
        .iter()
        .map(|p| match get(p, "gradients")? {
            Value::Array(_) => j::to_scalars(get(p, "gradients")?),
            Value::Object(map) => (1..=data.hecke_dim)
                .map(|i| {
                    let key = hecke_symbol(i);
                    j::to_scalar(
                        map.get(&key)
                            .ok_or_else(|| CliError::parse(format!("missing gradient {key}")))?,
                    )
                })
                .collect(),
            other => Err(CliError::parse(format!(
                "gradients must be an object or array, got {other}"
            ))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let vals = LogDerivAssignment::new(places);
    let pairs = place_pairs(&data, &dir, &vals)?;
    let value = generic_l_invariant(&data, &dir, &vals)?;
    let mut json = json!({
        "value": j::scalar(&value),
        "per_place": pairs.iter().map(|(a, b)| json!({"a": j::scalar(a), "b": j::scalar(b)})).collect::<Vec<_>>(),
    });
    if let Some(which) = compare {
        let theorem = match (which, family) {
            (TheoremArg::A, Family::Hilbert) => Theorem::A,
            (TheoremArg::B, Family::Gsp4Spin) => Theorem::B,
            (TheoremArg::C, Family::GspStd { n }) => Theorem::C { n },
            (TheoremArg::D1, Family::Unitary { n, k }) if k + 1 == 4 * n => Theorem::D1 { n },
            (TheoremArg::D2, Family::Unitary { n, k }) if k + 3 == 4 * n => Theorem::D2 { n },
            _ => {
                return Err(CliError::usage(format!(
                    "theorem {which:?} does not apply to family {family}"
                )))
            }
        };
        let cmp = compare_to_theorem(theorem)?;
        let theorem_value = match theorem_evaluator(theorem, &dir, &vals) {
            Ok(x) => j::scalar(&x),
            Err(Error::Precondition(_)) => Value::Null,
            Err(e) => return Err(e.into()),
        };
        json["comparison"] = json!({
            "theorem": theorem.to_string(),
            "classification": cmp.classification.name(),
            "factor": cmp.classification.factor().as_ref().map(j::scalar),
            "generic": cmp.generic.to_string(),
            "closed_form": cmp.closed_form.to_string(),
            "theorem_value": theorem_value,
        });
    }
    Ok(Output::json(json))
}
