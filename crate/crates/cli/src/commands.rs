use std::fs;
use std::io::Read;
use std::path::PathBuf;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Map, Value};

use prymlat::bundle::{projective_bundle_h0, pushforward, SplitBundle};
use prymlat::chow::{chern_v2, degeneration_degree, parity_check, AmbientData};
use prymlat::format::{parse_gmodule, parse_rows, rows_value, LatticeFile};
use prymlat::gmodule::{decompose, torsion_prym_check, FreeGModule};
use prymlat::lattice::{
    brauer_report, canonical_instance, discriminant_group, discriminant_of, prym_lattice, verify_brauer_sequences,
    verify_det_formula, verify_prym_correspondence, verify_rank_formula, BilinearLattice, InvolutionLattice, Mode,
    Sign,
};
use prymlat::presets;
use prymlat::IntegerMatrix;

use crate::args::{BundleAction, ChowAction, Command, ModeArgs, PresetName};
use crate::sweep::{sweep, SweepKind};
use crate::{CliError, CliResult, Outcome, Status};

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn read_input(file: &Option<PathBuf>, stdin: &mut dyn Read) -> CliResult<String> {
    match file {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {}", p.display(), e)))
        }
        _ => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| CliError::Io(format!("standard input: {}", e)))?;
            Ok(s)
        }
    }
}

fn lattice_file(file: &Option<PathBuf>, stdin: &mut dyn Read) -> CliResult<LatticeFile> {
    Ok(LatticeFile::parse(&read_input(file, stdin)?)?)
}

fn involution_lattice(f: &LatticeFile) -> CliResult<InvolutionLattice> {
    Ok(InvolutionLattice::new(f.gram.clone(), f.sigma.clone())?)
}

fn sublattice<'a>(f: &'a LatticeFile, name: &str) -> CliResult<&'a IntegerMatrix> {
    f.sublattice(name)
        .ok_or_else(|| CliError::Usage(format!("the input has no sublattice named {:?}", name)))
}

/// A G-module file, or the σ of a lattice file.
fn gmodule(file: &Option<PathBuf>, stdin: &mut dyn Read) -> CliResult<FreeGModule> {
    let text = read_input(file, stdin)?;
    let is_lattice = serde_json::from_str::<Value>(&text)
        .ok()
        .map_or(false, |v| v.get("gram").is_some());
    let sigma = if is_lattice {
        LatticeFile::parse(&text)?.sigma
    } else {
        parse_gmodule(&text)?
    };
    Ok(FreeGModule::new(sigma)?)
}

fn mode(m: &ModeArgs) -> CliResult<Mode> {
    match (m.r, m.free) {
        (_, true) => Ok(Mode::Free),
        (Some(r), false) => Ok(Mode::FixedPoints { r }),
        (None, false) => Err(CliError::Usage("give the fixed-point count with --r, or --free".into())),
    }
}

fn extra_matrix(f: &LatticeFile, key: &str) -> CliResult<IntegerMatrix> {
    let v = f
        .extra
        .get(key)
        .ok_or_else(|| CliError::Usage(format!("the input has no {:?} field", key)))?;
    Ok(parse_rows(v, 0)?)
}

pub(crate) fn dispatch(cmd: &Command, stdin: &mut dyn Read) -> CliResult<Outcome> {
    match cmd {
        Command::Decompose(input) => {
            let d = decompose(&gmodule(&input.file, stdin)?)?;
            let v = json!({
                "type": d.type_string(),
                "r0": d.r0,
                "r_plus": d.r_plus,
                "r_minus": d.r_minus,
                "adapted_basis": to_value(&d.adapted_basis),
            });
            Ok(Outcome::report(v, Status::Ok))
        }
        Command::Cohomology {
            input,
            degrees,
            torsion_level,
        } => {
            let m = gmodule(&input.file, stdin)?;
            let groups: Vec<Value> = degrees
                .iter()
                .map(|&i| json!({"degree": i, "group": to_value(&m.cohomology(i))}))
                .collect();
            let mut text: String = degrees
                .iter()
                .map(|&i| format!("H^{}(G, M) = {}\n", i, m.cohomology(i)))
                .collect();
            let mut v = json!({ "rank": m.rank(), "cohomology": groups });
            let mut status = Status::Ok;
            if let Some(n) = torsion_level {
                let t = torsion_prym_check(&m, *n)?;
                text.push_str(&format!(
                    "level {}: anti-invariant side {}, Prym side {}, {}\n",
                    n,
                    t.anti_invariant_side,
                    t.prym_side,
                    if t.equal { "equal" } else { "DIFFERENT" }
                ));
                if !t.equal {
                    status = Status::Failed;
                }
                v["torsion"] = to_value(&t);
            }
            Ok(Outcome::report(v, status).with_text(text))
        }
        Command::Prym { input, sub } => {
            let f = lattice_file(&input.file, stdin)?;
            let l = involution_lattice(&f)?;
            let p = prym_lattice(&l, sublattice(&f, sub)?)?;
            let mut v = json!({ "rank": p.rank(), "determinant": prymlat::format::big_to_number(&p.determinant()) });
            let body = to_value(&p);
            for (k, x) in body.as_object().expect("struct") {
                v[k] = x.clone();
            }
            Ok(Outcome::report(v, Status::Ok))
        }
        Command::Discriminant { input, sub } => {
            let f = lattice_file(&input.file, stdin)?;
            let q = match sub {
                Some(name) => discriminant_group(&involution_lattice(&f)?, sublattice(&f, name)?)?,
                None => discriminant_of(&f.gram, &f.sigma)?,
            };
            Ok(Outcome::report(to_value(&q), Status::Ok).with_text(q.to_string()))
        }
        Command::Modify {
            input,
            vector,
            sign,
            negate,
        } => {
            let f = lattice_file(&input.file, stdin)?;
            let sign = match sign.as_str() {
                "+" | "plus" => Sign::Plus,
                "-" | "minus" => Sign::Minus,
                other => return Err(CliError::Usage(format!("--sign must be + or -, got {:?}", other))),
            };
            let base = BilinearLattice::new(f.gram.clone())?;
            let s = base.scale(vector)?;
            let mut modified = base.modify(vector, sign)?;
            if *negate {
                modified = modified.negated();
            }
            let g = modified.gram();
            let mut obj = Map::new();
            obj.insert("gram".into(), rows_value(g));
            // σ is kept only when it is still an isometry of the new form.
            if &(&f.sigma.transpose() * g) * &f.sigma == *g {
                obj.insert("sigma".into(), rows_value(&f.sigma));
            }
            obj.insert("scale".into(), json!(prymlat::format::big_to_number(&s)));
            obj.insert("sign".into(), to_value(&sign));
            obj.insert("negated".into(), json!(negate));
            obj.insert(
                "vector".into(),
                Value::Array(
                    vector
                        .iter()
                        .map(|x| json!(prymlat::format::big_to_number(x)))
                        .collect(),
                ),
            );
            Ok(Outcome::file(Value::Object(obj)))
        }
        Command::VerifyRank {
            input,
            sub,
            mode: m,
            sweep: s,
        } => {
            let mode = mode(m)?;
            if let Some(n) = s.sweep {
                return Ok(sweep(SweepKind::Rank(mode), s, n));
            }
            let f = lattice_file(&input.file, stdin)?;
            let r = verify_rank_formula(&involution_lattice(&f)?, sublattice(&f, sub)?, mode)?;
            Ok(Outcome::report(to_value(&r), Status::of(r.verdict)))
        }
        Command::VerifyDet {
            input,
            sub,
            mode: m,
            sweep: s,
        } => {
            let mode = mode(m)?;
            if let Some(n) = s.sweep {
                return Ok(sweep(SweepKind::Det(mode), s, n));
            }
            let f = lattice_file(&input.file, stdin)?;
            let r = verify_det_formula(&involution_lattice(&f)?, sublattice(&f, sub)?, mode)?;
            Ok(Outcome::report(to_value(&r), Status::of(r.verdict)))
        }
        Command::VerifyCorrespondence {
            input,
            sub,
            canonical,
            r,
            sweep: s,
        } => {
            if let Some(n) = s.sweep {
                return Ok(sweep(SweepKind::Correspondence { r: *r }, s, n));
            }
            let f = lattice_file(&input.file, stdin)?;
            let w = involution_lattice(&f)?;
            let report = if *canonical {
                let (lx, phi, psi) = canonical_instance(&w)?;
                verify_prym_correspondence(&lx, &w, &IntegerMatrix::zeros(w.rank(), 0), &phi, &psi)?
            } else {
                let lx = BilinearLattice::new(extra_matrix(&f, "lambda_x")?)?;
                let m = match f.sublattice(sub) {
                    Some(m) => m.clone(),
                    None => IntegerMatrix::zeros(w.rank(), 0),
                };
                verify_prym_correspondence(&lx, &w, &m, &extra_matrix(&f, "phi")?, &extra_matrix(&f, "psi")?)?
            };
            Ok(Outcome::report(to_value(&report), Status::of(report.verdict)))
        }
        Command::Brauer {
            input,
            sub,
            hdg,
            levels,
            sweep: s,
        } => {
            if let Some(n) = s.sweep {
                return Ok(sweep(SweepKind::Brauer { levels: levels.clone() }, s, n));
            }
            let f = lattice_file(&input.file, stdin)?;
            let l = involution_lattice(&f)?;
            let (m, h) = (sublattice(&f, sub)?, sublattice(&f, hdg)?);
            let summary = brauer_report(&l, h)?;
            let mut status = Status::Ok;
            let mut reports = Vec::new();
            for &n in levels {
                let r = verify_brauer_sequences(&l, h, m, n)?;
                status = status.and(Status::of(r.verdict));
                reports.push(to_value(&r));
            }
            Ok(Outcome::report(
                json!({ "summary": to_value(&summary), "levels": reports }),
                status,
            ))
        }
        Command::Surface { h2, mode: m } => {
            let report = match (h2, m.r, m.free) {
                (Some(h2), _, true) => presets::surface_structure_free(*h2)?,
                (Some(h2), Some(r), false) => presets::surface_structure_fixed_points(*h2, r)?,
                (None, Some(r), false) => presets::surface_structure_fixed_points_symbolic(r)?,
                (None, _, true) => return Err(CliError::Usage("the free case needs --h2".into())),
                (_, None, false) => {
                    return Err(CliError::Usage("give the fixed-point count with --r, or --free".into()))
                }
            };
            let status = if report.consistent() {
                Status::Ok
            } else {
                Status::Failed
            };
            Ok(Outcome::report(to_value(&report), status).with_text(report.to_string()))
        }
        Command::Preset {
            name,
            m,
            d,
            x2,
            xsx,
            t,
            report,
        } => preset(*name, *m, *d, *x2, *xsx, t.as_deref(), *report),
        Command::Bundle {
            action,
            file,
            degrees,
            m,
            k,
        } => {
            let degrees = match degrees {
                Some(d) => d.clone(),
                None => {
                    let v: Value = serde_json::from_str(&read_input(file, stdin)?)
                        .map_err(|e| CliError::Lib(prymlat::Error::Parse(e.to_string())))?;
                    let d = v.get("degrees").and_then(Value::as_array).ok_or_else(|| {
                        CliError::Lib(prymlat::Error::Parse("bundle file needs a \"degrees\" list".into()))
                    })?;
                    d.iter()
                        .map(|x| {
                            x.as_i64()
                                .ok_or_else(|| CliError::Lib(prymlat::Error::Parse(format!("bad degree {}", x))))
                        })
                        .collect::<CliResult<Vec<i64>>>()?
                }
            };
            let e = SplitBundle::new(degrees)?;
            Ok(match action {
                BundleAction::H0 => {
                    let h0 = projective_bundle_h0(&e, *m, *k);
                    let split = pushforward(&e, *m, *k);
                    let v = json!({
                        "bundle": e.to_string(), "m": m, "k": k,
                        "pushforward": split.degrees(), "h0": h0,
                    });
                    Outcome::report(v, Status::Ok).with_text(h0.to_string())
                }
                BundleAction::Split => {
                    let split = pushforward(&e, *m, *k);
                    let v = json!({ "bundle": e.to_string(), "m": m, "k": k, "splitting": split.to_string(), "degrees": split.degrees() });
                    Outcome::report(v, Status::Ok)
                }
                BundleAction::Cohomology => {
                    let t = e.twist(*k);
                    let v = json!({ "bundle": t.to_string(), "h0": t.h0(), "h1": t.h1(), "euler_characteristic": t.euler_characteristic() });
                    Outcome::report(v, Status::Ok)
                }
            })
        }
        Command::Chow {
            action,
            file,
            gamma,
            lambda,
        } => {
            let amb = ambient(file, gamma, *lambda, stdin)?;
            Ok(match action {
                ChowAction::Parity => {
                    let r = parity_check(amb);
                    let ok = r.congruence_holds && (!r.degeneration_odd || r.pairing_odd);
                    Outcome::report(to_value(&r), if ok { Status::Ok } else { Status::Failed })
                }
                ChowAction::Chern => {
                    let (c1, c2) = chern_v2(amb);
                    Outcome::report(
                        json!({ "ambient": to_value(&amb), "c1": to_value(&c1), "c2": to_value(&c2) }),
                        Status::Ok,
                    )
                }
                ChowAction::Degree => {
                    let deg = degeneration_degree(amb);
                    Outcome::report(json!({ "ambient": to_value(&amb), "degree": deg }), Status::Ok)
                        .with_text(deg.to_string())
                }
            })
        }
    }
}

fn ambient(
    file: &Option<PathBuf>,
    gamma: &Option<Vec<i64>>,
    lambda: Option<i64>,
    stdin: &mut dyn Read,
) -> CliResult<AmbientData> {
    let parse_err = |s: &str| CliError::Lib(prymlat::Error::Parse(s.to_string()));
    let (gamma, lambda) = match gamma {
        Some(g) => (
            g.clone(),
            lambda.ok_or_else(|| CliError::Usage("--gamma needs --lambda".into()))?,
        ),
        None => {
            let v: Value = serde_json::from_str(&read_input(file, stdin)?).map_err(|e| parse_err(&e.to_string()))?;
            let g = v
                .get("gamma")
                .and_then(Value::as_array)
                .ok_or_else(|| parse_err("ambient file needs a \"gamma\" list"))?
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| parse_err("gamma entries must be integers")))
                .collect::<CliResult<Vec<i64>>>()?;
            let l = match lambda {
                Some(l) => l,
                None => v
                    .get("lambda")
                    .and_then(Value::as_i64)
                    .ok_or_else(|| parse_err("ambient file needs an integer \"lambda\""))?,
            };
            (g, l)
        }
    };
    let gamma: [i64; 3] = gamma
        .try_into()
        .map_err(|g: Vec<i64>| CliError::Usage(format!("gamma needs three entries, got {}", g.len())))?;
    Ok(AmbientData::new(gamma, lambda))
}

fn need(x: Option<i64>, flag: &str, preset: &str) -> CliResult<i64> {
    x.ok_or_else(|| CliError::Usage(format!("preset {} needs {}", preset, flag)))
}

fn preset(
    name: PresetName,
    m: Option<i64>,
    d: Option<i64>,
    x2: Option<i64>,
    xsx: Option<i64>,
    t: Option<&[i64]>,
    report: bool,
) -> CliResult<Outcome> {
    Ok(match name {
        PresetName::CubicM if report => {
            let facts = presets::cubic_fourfold_facts();
            Outcome::report(to_value(&facts), Status::Ok)
        }
        PresetName::CubicM => {
            let l = presets::cubic_fourfold_m();
            Outcome::file(LatticeFile::new(l.gram().clone(), l.sigma().clone()).to_value())
        }
        PresetName::CubicAmbient => {
            let (l, embed) = presets::cubic_fourfold_ambient();
            let f = LatticeFile::new(l.gram().clone(), l.sigma().clone())
                .with_sublattice("M", embed.clone())
                .with_sublattice("Hdg", embed);
            if report {
                let m = f.sublattice("M").expect("just added");
                let v = json!({
                    "unimodular": l.base().is_unimodular(),
                    "decomposition": decompose(&l.module())?.type_string(),
                    "discriminant_of_m": to_value(&discriminant_group(&l, m)?),
                });
                Outcome::report(v, Status::Ok)
            } else {
                Outcome::file(f.to_value())
            }
        }
        PresetName::Picard3 => {
            let (m, d) = (need(m, "--m", "picard3")?, need(d, "--d", "picard3")?);
            if report {
                let r = presets::verify_picard3(m, d)?;
                Outcome::report(to_value(&r), Status::of(r.verdict))
            } else {
                let l = presets::cubic_picard3(m, d)?;
                Outcome::file(LatticeFile::new(l.gram().clone(), l.sigma().clone()).to_value())
            }
        }
        PresetName::Picard3Embedded => {
            let t = t.ok_or_else(|| CliError::Usage("preset picard3-embedded needs --t".into()))?;
            let e = presets::picard3_embedding(t)?;
            if report {
                let k = prymlat::lattice::brauer_report(&e.lattice, &e.pic)?;
                Outcome::report(
                    json!({ "m": e.m_dot_a, "d": e.a_square, "brauer": to_value(&k) }),
                    Status::Ok,
                )
            } else {
                let mut f = LatticeFile::new(e.lattice.gram().clone(), e.lattice.sigma().clone())
                    .with_sublattice("M", e.m.clone())
                    .with_sublattice("Hdg", e.pic.clone());
                f.extra.insert("m".into(), json!(e.m_dot_a));
                f.extra.insert("d".into(), json!(e.a_square));
                Outcome::file(f.to_value())
            }
        }
        PresetName::Bd => {
            let bd = presets::beauville_donagi()?;
            if report {
                Outcome::report(json!({ "checks": to_value(&bd.checks) }), Status::Ok)
            } else {
                let n = bd.b.rows();
                let column = IntegerMatrix::column_vector(&bd.lambda0);
                let mut f =
                    LatticeFile::new(bd.b.clone(), IntegerMatrix::identity(n)).with_sublattice("lambda0", column);
                let vec_value =
                    |x: &[BigInt]| Value::Array(x.iter().map(|e| json!(prymlat::format::big_to_number(e))).collect());
                f.extra.insert("l".into(), vec_value(&bd.l));
                f.extra.insert("delta".into(), vec_value(&bd.delta));
                f.extra.insert("b0".into(), rows_value(&bd.b0));
                Outcome::file(f.to_value())
            }
        }
        PresetName::Conic => {
            let (a, b) = (need(x2, "--x2", "conic")?, need(xsx, "--xsx", "conic")?);
            if report {
                let r = presets::conic_bundle_prym_parity(a, b)?;
                Outcome::report(to_value(&r), Status::of(r.verdict))
            } else {
                let l = InvolutionLattice::new(
                    IntegerMatrix::from_i64(&[[a, b], [b, a]]),
                    IntegerMatrix::from_i64(&[[0, 1], [1, 0]]),
                )?;
                Outcome::file(LatticeFile::new(l.gram().clone(), l.sigma().clone()).to_value())
            }
        }
    })
}
